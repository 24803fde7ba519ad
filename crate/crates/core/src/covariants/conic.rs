//! 3×3 matrices of conic concomitants.
//!
//! A quadratic covariant `C(x)` is stored as its matrix of second partials
//! `B`, which transforms as `Mᵀ B M`; a quadratic contravariant `P(u)` as its
//! u-Hessian `A`, which transforms as `M⁻¹ A M⁻ᵀ`. Traces of alternating
//! products and determinants are therefore invariants, and adjugates swap
//! the two kinds.

use super::forms::TernaryForm;
use crate::exactalg::Field;

pub type Mat3<E> = [[E; 3]; 3];

pub fn from_quadratic<K: Field>(k: &K, q: &TernaryForm<K::Elem>) -> Mat3<K::Elem> {
    assert_eq!(q.degree(), 2, "conic matrix needs a quadratic form");
    let c = q.coeffs();
    let two = |v: &K::Elem| k.add(v, v);
    [
        [two(&c[0]), c[1].clone(), c[2].clone()],
        [c[1].clone(), two(&c[3]), c[4].clone()],
        [c[2].clone(), c[4].clone(), two(&c[5])],
    ]
}

pub fn mul<K: Field>(k: &K, a: &Mat3<K::Elem>, b: &Mat3<K::Elem>) -> Mat3<K::Elem> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(k.zero(), |acc, t| k.add(&acc, &k.mul(&a[i][t], &b[t][j])))
        })
    })
}

pub fn trace<K: Field>(k: &K, a: &Mat3<K::Elem>) -> K::Elem {
    k.add(&k.add(&a[0][0], &a[1][1]), &a[2][2])
}

/// Trace of the product of a chain of matrices.
pub fn trace_of_product<K: Field>(k: &K, chain: &[&Mat3<K::Elem>]) -> K::Elem {
    let mut acc = chain[0].clone();
    for m in &chain[1..] {
        acc = mul(k, &acc, m);
    }
    trace(k, &acc)
}

pub fn adjugate<K: Field>(k: &K, a: &Mat3<K::Elem>) -> Mat3<K::Elem> {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        k.sub(&k.mul(&a[r0][c0], &a[r1][c1]), &k.mul(&a[r0][c1], &a[r1][c0]))
    };
    // adj[i][j] = (-1)^{i+j} minor(j, i)
    [
        [cof(1, 2, 1, 2), k.neg(&cof(0, 2, 1, 2)), cof(0, 1, 1, 2)],
        [k.neg(&cof(1, 2, 0, 2)), cof(0, 2, 0, 2), k.neg(&cof(0, 1, 0, 2))],
        [cof(1, 2, 0, 1), k.neg(&cof(0, 2, 0, 1)), cof(0, 1, 0, 1)],
    ]
}

pub fn det<K: Field>(k: &K, a: &Mat3<K::Elem>) -> K::Elem {
    let adj = adjugate(k, a);
    (0..3).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(&a[0][j], &adj[j][0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::PrimeField;

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let k = PrimeField::new(10007).unwrap();
        let a: Mat3<u64> = [[2, 3, 5], [7, 11, 13], [17, 19, 23]];
        let d = det(&k, &a);
        let prod = mul(&k, &a, &adjugate(&k, &a));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(prod[i][j], if i == j { d } else { 0 });
            }
        }
        // 2(253-247) - 3(161-221) + 5(133-187) = 12 + 180 - 270 = -78
        assert_eq!(d, k.from_i64(-78));
    }

    #[test]
    fn quadratic_to_matrix() {
        let k = PrimeField::new(10007).unwrap();
        let q = TernaryForm::from_terms(&k, 2, &[([2, 0, 0], 1), ([1, 1, 0], 4), ([0, 0, 2], 3)]);
        let m = from_quadratic(&k, &q);
        assert_eq!(m, [[2, 4, 0], [4, 0, 0], [0, 0, 6]]);
    }
}

//! Homogeneous ternary forms with dense coefficient vectors.
//!
//! Monomials of degree `n` are ordered by descending x-exponent, then
//! descending y-exponent: for quartics this is x⁴, x³y, x³z, x²y², x²yz,
//! x²z², xy³, xy²z, xyz², xz³, y⁴, y³z, y²z², yz³, z⁴.

use std::sync::OnceLock;

use crate::exactalg::{AlgebraError, DensePoly, Field};

const MAX_TABLE_DEGREE: usize = 64;

/// Exponent triples of degree `n` in the fixed order.
pub fn monomials(n: usize) -> &'static [[u32; 3]] {
    static TABLES: OnceLock<Vec<Vec<[u32; 3]>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=MAX_TABLE_DEGREE)
            .map(|n| {
                let n = n as u32;
                let mut v = Vec::new();
                for i in (0..=n).rev() {
                    for j in (0..=n - i).rev() {
                        v.push([i, j, n - i - j]);
                    }
                }
                v
            })
            .collect()
    });
    &tables[n]
}

pub fn num_monomials(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Position of `x^i y^j z^k` in the degree `i+j+k` ordering.
#[inline]
pub fn monomial_index(e: [u32; 3]) -> usize {
    let s = (e[1] + e[2]) as usize;
    s * (s + 1) / 2 + e[2] as usize
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// `e! = e0! e1! e2!`, the constant produced by `∂^e` acting on `x^e`.
pub(crate) fn multi_factorial(e: [u32; 3]) -> i64 {
    factorial(e[0]) * factorial(e[1]) * factorial(e[2])
}

#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<E> {
    degree: usize,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> TernaryForm<E> {
    pub fn zero<K: Field<Elem = E>>(k: &K, degree: usize) -> Self {
        TernaryForm { degree, coeffs: vec![k.zero(); num_monomials(degree)] }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<E>) -> Result<Self, AlgebraError> {
        if coeffs.len() != num_monomials(degree) {
            return Err(AlgebraError::Shape(format!(
                "{} coefficients for a degree-{} ternary form (need {})",
                coeffs.len(),
                degree,
                num_monomials(degree)
            )));
        }
        Ok(TernaryForm { degree, coeffs })
    }

    /// Builds a form from `(exponent, coefficient)` pairs; all exponents must share one degree.
    pub fn from_terms<K: Field<Elem = E>>(k: &K, degree: usize, terms: &[([u32; 3], i64)]) -> Self {
        let mut f = Self::zero(k, degree);
        for &(e, c) in terms {
            assert_eq!((e[0] + e[1] + e[2]) as usize, degree, "exponent {e:?} not of degree {degree}");
            let i = monomial_index(e);
            f.coeffs[i] = k.add(&f.coeffs[i], &k.from_i64(c));
        }
        f
    }

    pub fn linear<K: Field<Elem = E>>(k: &K, a: E, b: E, c: E) -> Self {
        let _ = k;
        TernaryForm { degree: 1, coeffs: vec![a, b, c] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff(&self, e: [u32; 3]) -> &E {
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero<K: Field<Elem = E>>(&self, k: &K) -> bool {
        self.coeffs.iter().all(|c| k.is_zero(c))
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "subtracting forms of different degree");
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| k.mul(a, c)).collect() }
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        let mut out = Self::zero(k, self.degree + other.degree);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if k.is_zero(ca) {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&other.coeffs) {
                if k.is_zero(cb) {
                    continue;
                }
                let i = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out.coeffs[i] = k.add(&out.coeffs[i], &k.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow<K: Field<Elem = E>>(&self, k: &K, n: usize) -> Self {
        let mut acc = TernaryForm { degree: 0, coeffs: vec![k.one()] };
        for _ in 0..n {
            acc = acc.mul(k, self);
        }
        acc
    }

    /// Formal partial derivative; the derivative of a constant is the zero constant.
    pub fn partial<K: Field<Elem = E>>(&self, k: &K, var: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(k, 0);
        }
        let mut out = Self::zero(k, self.degree - 1);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if e[var] == 0 || k.is_zero(c) {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.coeffs[monomial_index(e2)] = k.mul(c, &k.from_i64(e[var] as i64));
        }
        out
    }

    pub fn eval<K: Field<Elem = E>>(&self, k: &K, point: &[E; 3]) -> E {
        let mut acc = k.zero();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if k.is_zero(c) {
                continue;
            }
            let t = k.mul(
                c,
                &k.mul(&k.pow(&point[0], e[0] as u64), &k.mul(&k.pow(&point[1], e[1] as u64), &k.pow(&point[2], e[2] as u64))),
            );
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Applies `self` as a constant-coefficient differential operator
    /// `self(∂x, ∂y, ∂z)` to `target`. Zero when `self` has the larger degree.
    pub fn apply_to<K: Field<Elem = E>>(&self, k: &K, target: &Self) -> Self {
        if self.degree > target.degree {
            return Self::zero(k, 0);
        }
        let rd = target.degree - self.degree;
        let mut out = Self::zero(k, rd);
        for (g, opc) in monomials(self.degree).iter().zip(&self.coeffs) {
            if k.is_zero(opc) {
                continue;
            }
            for (b, slot) in monomials(rd).iter().zip(out.coeffs.iter_mut()) {
                let s = [b[0] + g[0], b[1] + g[1], b[2] + g[2]];
                let tc = &target.coeffs[monomial_index(s)];
                if k.is_zero(tc) {
                    continue;
                }
                // ∂^g x^s = s!/b! x^b
                let falling = multi_factorial(s) / multi_factorial(*b);
                let t = k.mul(&k.mul(opc, tc), &k.from_i64(falling));
                *slot = k.add(slot, &t);
            }
        }
        out
    }

    /// Determinant of the matrix of second partial derivatives.
    pub fn hessian<K: Field<Elem = E>>(&self, k: &K) -> Self {
        if self.degree < 2 {
            return Self::zero(k, 0);
        }
        let m = self.second_partials(k);
        det3_forms(k, &m)
    }

    pub fn second_partials<K: Field<Elem = E>>(&self, k: &K) -> [[Self; 3]; 3] {
        let d: Vec<Self> = (0..3).map(|i| self.partial(k, i)).collect();
        let h = |i: usize, j: usize| d[i].partial(k, j);
        [[h(0, 0), h(0, 1), h(0, 2)], [h(1, 0), h(1, 1), h(1, 2)], [h(2, 0), h(2, 1), h(2, 2)]]
    }

    /// `f(M x)`: substitutes the linear forms given by the rows of `m`.
    pub fn substitute_linear<K: Field<Elem = E>>(&self, k: &K, m: &[[E; 3]; 3]) -> Self {
        let lin: Vec<Self> = m.iter().map(|r| TernaryForm { degree: 1, coeffs: r.to_vec() }).collect();
        let pows: Vec<Vec<Self>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![TernaryForm { degree: 0, coeffs: vec![k.one()] }];
                for _ in 0..self.degree {
                    let next = v.last().unwrap().mul(k, l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(k, self.degree);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if k.is_zero(c) {
                continue;
            }
            let t = pows[0][e[0] as usize].mul(k, &pows[1][e[1] as usize]).mul(k, &pows[2][e[2] as usize]);
            out = out.add(k, &t.scale(k, c));
        }
        out
    }

    pub fn to_poly<K: Field<Elem = E>>(&self, k: &K) -> DensePoly<E> {
        DensePoly::from_terms(
            k,
            3,
            monomials(self.degree).iter().zip(&self.coeffs).map(|(e, c)| (e.to_vec(), c.clone())),
        )
        .expect("three variables")
    }

    /// Inverse of [`to_poly`](Self::to_poly); the polynomial must be homogeneous of degree `degree`.
    pub fn from_poly<K: Field<Elem = E>>(k: &K, degree: usize, p: &DensePoly<E>) -> Result<Self, AlgebraError> {
        if p.nvars() != 3 {
            return Err(AlgebraError::VariableMismatch(3, p.nvars()));
        }
        let mut out = Self::zero(k, degree);
        for (e, c) in p.terms() {
            if e.iter().sum::<u32>() as usize != degree {
                return Err(AlgebraError::Shape(format!("term {e:?} is not of degree {degree}")));
            }
            out.coeffs[monomial_index([e[0], e[1], e[2]])] = c.clone();
        }
        Ok(out)
    }
}

/// Determinant of a 3×3 matrix of forms by cofactor expansion.
pub fn det3_forms<K: Field>(k: &K, m: &[[TernaryForm<K::Elem>; 3]; 3]) -> TernaryForm<K::Elem> {
    let minor = |a: &TernaryForm<K::Elem>, b: &TernaryForm<K::Elem>, c: &TernaryForm<K::Elem>, d: &TernaryForm<K::Elem>| {
        a.mul(k, b).sub(k, &c.mul(k, d))
    };
    let c0 = minor(&m[1][1], &m[2][2], &m[1][2], &m[2][1]);
    let c1 = minor(&m[1][0], &m[2][2], &m[1][2], &m[2][0]);
    let c2 = minor(&m[1][0], &m[2][1], &m[1][1], &m[2][0]);
    m[0][0].mul(k, &c0).sub(k, &m[0][1].mul(k, &c1)).add(k, &m[0][2].mul(k, &c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::PrimeField;

    #[test]
    fn quartic_order_matches_documented_list() {
        let expected = [
            [4, 0, 0], [3, 1, 0], [3, 0, 1], [2, 2, 0], [2, 1, 1], [2, 0, 2], [1, 3, 0], [1, 2, 1],
            [1, 1, 2], [1, 0, 3], [0, 4, 0], [0, 3, 1], [0, 2, 2], [0, 1, 3], [0, 0, 4],
        ];
        assert_eq!(monomials(4), &expected);
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(monomial_index(*e), i);
        }
    }

    #[test]
    fn index_is_consistent_for_all_degrees() {
        for n in 0..20 {
            for (i, e) in monomials(n).iter().enumerate() {
                assert_eq!(monomial_index(*e), i);
            }
            assert_eq!(monomials(n).len(), num_monomials(n));
        }
    }

    #[test]
    fn operator_examples() {
        let k = PrimeField::new(2017).unwrap();
        let x2 = TernaryForm::from_terms(&k, 2, &[([2, 0, 0], 1)]);
        let x2y = TernaryForm::from_terms(&k, 3, &[([2, 1, 0], 1)]);
        assert_eq!(x2.apply_to(&k, &x2y), TernaryForm::from_terms(&k, 1, &[([0, 1, 0], 2)]));
        let l = TernaryForm::from_terms(&k, 1, &[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]);
        let x4 = TernaryForm::from_terms(&k, 4, &[([4, 0, 0], 1)]);
        assert_eq!(l.apply_to(&k, &x4), TernaryForm::from_terms(&k, 3, &[([3, 0, 0], 4)]));
        // larger operator degree gives the zero form
        assert!(x2y.apply_to(&k, &x2).is_zero(&k));
    }

    #[test]
    fn fermat_hessian() {
        let k = PrimeField::new(2017).unwrap();
        let f = TernaryForm::from_terms(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        assert_eq!(f.hessian(&k), TernaryForm::from_terms(&k, 6, &[([2, 2, 2], 1728)]));
        let x2 = TernaryForm::from_terms(&k, 2, &[([2, 0, 0], 1)]);
        assert!(x2.hessian(&k).is_zero(&k));
    }

    #[test]
    fn poly_round_trip() {
        let k = PrimeField::new(2017).unwrap();
        let f = TernaryForm::from_terms(&k, 4, &[([3, 1, 0], 5), ([0, 2, 2], -1)]);
        assert_eq!(TernaryForm::from_poly(&k, 4, &f.to_poly(&k)).unwrap(), f);
    }
}

use luroth::covariants::{diff_op, DixmierOhno, TernaryForm};
use luroth::exactalg::{crt_combine, rational_reconstruct, DensePoly, Field, Matrix, PrimeField, Rationals};
use luroth::relfind::weighted_monomials;
use luroth::{GENERATOR_DEGREES, TernaryQuartic};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const P: u64 = 10007;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn residue() -> impl Strategy<Value = u64> {
    0..P
}

fn form(degree: usize) -> impl Strategy<Value = TernaryForm<u64>> {
    let n = (degree + 1) * (degree + 2) / 2;
    prop::collection::vec(residue(), n).prop_map(move |c| TernaryForm::from_coeffs(degree, c).unwrap())
}

fn mat3() -> impl Strategy<Value = [[u64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(residue()))
}

fn det3(k: &PrimeField, m: &[[u64; 3]; 3]) -> u64 {
    Matrix::from_rows(m.iter().map(|r| r.to_vec()).collect(), 3).unwrap().determinant(k).unwrap()
}

/// Rescales the first row so that the determinant becomes 1.
fn to_sl3(k: &PrimeField, mut m: [[u64; 3]; 3]) -> Option<[[u64; 3]; 3]> {
    let d = k.inv(&det3(k, &m))?;
    for x in m[0].iter_mut() {
        *x = k.mul(x, &d);
    }
    Some(m)
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
        // mostly low rank: entries from a tiny range
        (Just(r), Just(c), prop::collection::vec(prop_oneof![Just(0u64), Just(1u64), 0..P], r * c))
    })
}

fn poly3() -> impl Strategy<Value = DensePoly<u64>> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), residue()), 0..8)
        .prop_map(|terms| DensePoly::from_terms(&fp(), 3, terms).unwrap())
}

fn brute_force_count(degree: u32) -> usize {
    fn go(i: usize, left: u32) -> usize {
        if i == GENERATOR_DEGREES.len() {
            return (left == 0) as usize;
        }
        (0..=left / GENERATOR_DEGREES[i]).map(|e| go(i + 1, left - e * GENERATOR_DEGREES[i])).sum()
    }
    go(0, degree)
}

#[test]
fn census_matches_brute_force() {
    for d in [3, 15, 24, 30, 54] {
        assert_eq!(weighted_monomials(d).len(), brute_force_count(d), "degree {d}");
    }
    assert_eq!(weighted_monomials(24).len(), 44);
    assert_eq!(weighted_monomials(30).len(), 99);
    assert_eq!(weighted_monomials(54).len(), 1380);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rank_plus_nullity((r, c, data) in small_matrix()) {
        let k = fp();
        let m = Matrix::from_flat(r, c, data).unwrap();
        let ker = m.right_kernel(&k);
        prop_assert_eq!(m.rank(&k) + ker.len(), c);
        for v in &ker {
            prop_assert!(m.mul_vec(&k, v).unwrap().iter().all(|x| *x == 0));
        }
        prop_assert_eq!(m.transpose().rank(&k), m.rank(&k));
        let once = m.rref(&k);
        prop_assert_eq!(once.rref(&k), once);
    }

    #[test]
    fn crt_reconstruct_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let q = BigRational::new(BigInt::from(n), BigInt::from(d));
        let primes = [1_000_003u64, 1_000_033, 1_000_037];
        let residues: Vec<(BigInt, u64)> = primes
            .iter()
            .map(|&p| {
                let k = PrimeField::new(p).unwrap();
                (BigInt::from(k.div(&k.from_bigint(q.numer()), &k.from_bigint(q.denom())).unwrap()), p)
            })
            .collect();
        let (r, m) = crt_combine(&residues).unwrap();
        let back = rational_reconstruct(&r, &m, &BigInt::from(1_000_000)).unwrap();
        prop_assert_eq!(back, Some(q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn polynomial_ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        let k = fp();
        prop_assert_eq!(a.add(&k, &b).unwrap(), b.add(&k, &a).unwrap());
        prop_assert_eq!(a.mul(&k, &b).unwrap(), b.mul(&k, &a).unwrap());
        let lhs = a.mul(&k, &b.add(&k, &c).unwrap()).unwrap();
        let rhs = a.mul(&k, &b).unwrap().add(&k, &a.mul(&k, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.mul(&k, &b).unwrap().mul(&k, &c).unwrap(), a.mul(&k, &b.mul(&k, &c).unwrap()).unwrap());
        prop_assert!(a.sub(&k, &a).unwrap().is_zero());
    }

    #[test]
    fn invariants_are_sl3_invariant(f in form(4), m in mat3()) {
        let k = fp();
        let d = DixmierOhno::new(k).unwrap();
        if let Some(g) = to_sl3(&k, m) {
            prop_assert_eq!(d.evaluate(&f.substitute_linear(&k, &g)), d.evaluate(&f));
        }
    }

    #[test]
    fn invariants_are_homogeneous(f in form(4), lambda in 1..P) {
        let k = fp();
        let d = DixmierOhno::new(k).unwrap();
        let plain = d.evaluate(&f);
        let scaled = d.evaluate(&f.scale(&k, &lambda));
        for (i, &deg) in GENERATOR_DEGREES.iter().enumerate() {
            prop_assert_eq!(*scaled.get(i), k.mul(plain.get(i), &k.pow(&lambda, deg as u64)));
        }
    }

    #[test]
    fn hessian_is_a_covariant(f in form(4), m in mat3()) {
        let k = fp();
        let det = det3(&k, &m);
        let lhs = f.substitute_linear(&k, &m).hessian(&k);
        let rhs = f.hessian(&k).substitute_linear(&k, &m).scale(&k, &k.mul(&det, &det));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn diff_op_is_bilinear(g in form(2), g2 in form(2), h in form(4), h2 in form(4), a in residue()) {
        let k = fp();
        prop_assert_eq!(diff_op(&k, &g.add(&k, &g2.scale(&k, &a)), &h),
            diff_op(&k, &g, &h).add(&k, &diff_op(&k, &g2, &h).scale(&k, &a)));
        prop_assert_eq!(diff_op(&k, &g, &h.add(&k, &h2.scale(&k, &a))),
            diff_op(&k, &g, &h).add(&k, &diff_op(&k, &g, &h2).scale(&k, &a)));
    }
}

#[test]
fn rational_invariants_reduce_to_modular_ones() {
    let q = Rationals;
    let k = fp();
    let dq = DixmierOhno::new(q).unwrap();
    let dk = DixmierOhno::new(k).unwrap();
    let ints = [1i64, 0, -2, 3, 0, 1, 0, 0, 5, -1, 2, 0, 0, 1, 4];
    let fq: TernaryQuartic<BigRational> = TernaryForm::from_coeffs(4, ints.iter().map(|&n| q.from_i64(n)).collect()).unwrap();
    let fk: TernaryQuartic<u64> = TernaryForm::from_coeffs(4, ints.iter().map(|&n| k.from_i64(n)).collect()).unwrap();
    let vq = dq.evaluate(&fq);
    let vk = dk.evaluate(&fk);
    for i in 0..13 {
        let c = vq.get(i);
        assert_eq!(k.div(&k.from_bigint(c.numer()), &k.from_bigint(c.denom())).unwrap(), *vk.get(i));
    }
}

//! Multimodular combination: Chinese remaindering and bounded rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Combines residues modulo pairwise distinct primes into the unique residue
/// modulo their product. Returns `(residue, modulus)`.
pub fn crt_combine(residues: &[(BigInt, u64)]) -> Result<(BigInt, BigInt), AlgebraError> {
    let mut seen = std::collections::BTreeSet::new();
    for &(_, p) in residues {
        if !seen.insert(p) {
            return Err(AlgebraError::DuplicateModulus(p));
        }
    }
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, p) in residues {
        let p = BigInt::from(*p);
        let r = r.mod_floor(&p);
        // acc + modulus * t ≡ r (mod p)
        let inv = mod_inverse(&modulus.mod_floor(&p), &p).ok_or(AlgebraError::NotCoprime)?;
        let t = ((&r - &acc).mod_floor(&p) * inv).mod_floor(&p);
        acc += &modulus * t;
        modulus *= &p;
    }
    Ok((acc.mod_floor(&modulus), modulus))
}

/// The unique `n/d` with `|n| <= bound`, `0 < d <= bound`, `gcd(d, modulus) = 1`
/// and `n ≡ d * residue (mod modulus)`, or `Ok(None)` when no such fraction
/// exists (the modulus is too small for the true value).
pub fn rational_reconstruct(
    residue: &BigInt,
    modulus: &BigInt,
    bound: &BigInt,
) -> Result<Option<BigRational>, AlgebraError> {
    if BigInt::from(2) * bound * bound >= *modulus {
        return Err(AlgebraError::ReconstructionBound);
    }
    let (mut r0, mut r1) = (modulus.clone(), residue.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > *bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !t1.gcd(modulus).is_one() {
        return Ok(None);
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    Ok(Some(BigRational::new(n, d)))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_crt() {
        assert_eq!(crt_combine(&[(b(3), 5), (b(4), 7)]).unwrap(), (b(18), b(35)));
        assert_eq!(crt_combine(&[(b(0), 2017)]).unwrap(), (b(0), b(2017)));
        assert!(matches!(crt_combine(&[(b(1), 7), (b(2), 7)]), Err(AlgebraError::DuplicateModulus(7))));
    }

    #[test]
    fn small_reconstruction() {
        assert_eq!(
            rational_reconstruct(&b(18), &b(35), &b(4)).unwrap(),
            Some(BigRational::new(b(1), b(2)))
        );
        assert_eq!(rational_reconstruct(&b(0), &b(35), &b(4)).unwrap(), Some(BigRational::zero()));
        assert!(rational_reconstruct(&b(1), &b(35), &b(5)).is_err());
    }

    #[test]
    fn negative_fraction() {
        // -3/7 mod 10007
        let m = b(10007);
        let r = (b(-3) * mod_inverse(&b(7), &m).unwrap()).mod_floor(&m);
        assert_eq!(
            rational_reconstruct(&r, &m, &b(70)).unwrap(),
            Some(BigRational::new(b(-3), b(7)))
        );
    }
}

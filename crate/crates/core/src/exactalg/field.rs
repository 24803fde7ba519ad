//! Coefficient domains.
//!
//! Elements are plain values; all arithmetic goes through the domain object,
//! which carries the modulus for prime fields. This keeps prime-field
//! residues as bare machine words in the hot loops.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// `Some(p)` for a prime field, `None` for the rationals.
    fn modulus(&self) -> Option<u64>;

    /// Rendering used by the text file formats: a decimal residue or `num/den`.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, AlgebraError>;

    /// A square root in the field, if one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst[i] -= factor * src[i]` for all i.
    fn sub_scaled(&self, dst: &mut [Self::Elem], src: &[Self::Elem], factor: &Self::Elem) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = self.sub(d, &self.mul(factor, s));
        }
    }

    fn scale_slice(&self, v: &mut [Self::Elem], factor: &Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(x, factor);
        }
    }
}

/// The field F_p for an odd prime p < 2^31, residues stored as `u64` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (g, x, _) = ext_gcd(*a as i64, self.p as i64);
        debug_assert_eq!(g, 1);
        Some(self.reduce_i64(x))
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        let p = self.p;
        if *a == 0 {
            return Some(0);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|z| self.pow(z, (p - 1) / 2) == p - 1).expect("nonresidue exists");
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
    fn modulus(&self) -> Option<u64> {
        Some(self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, AlgebraError> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| AlgebraError::Parse(s.to_string()))?;
            let d: BigInt = d.parse().map_err(|_| AlgebraError::Parse(s.to_string()))?;
            let d = self.from_bigint(&d);
            let di = self.inv(&d).ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
            return Ok(self.mul(&self.from_bigint(&n), &di));
        }
        let n: BigInt = s.parse().map_err(|_| AlgebraError::Parse(s.to_string()))?;
        Ok(self.from_bigint(&n))
    }

    fn sub_scaled(&self, dst: &mut [u64], src: &[u64], factor: &u64) {
        let p = self.p;
        let f = (p - factor) % p;
        if f == 0 {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            *d = (*d + f * s) % p;
        }
    }
}

/// The rational numbers, backed by `num_rational::BigRational` (always in lowest terms).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
    }
    fn modulus(&self) -> Option<u64> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, AlgebraError> {
        let s = s.trim();
        let err = || AlgebraError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(s.parse().map_err(|_| err())?))
        }
    }
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Deterministic trial division; moduli here are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Lifts an integer-valued rational to `BigInt` (used by tests and the CRT path).
pub fn rational_is_integer(q: &BigRational) -> Option<BigInt> {
    q.denom().is_one().then(|| q.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        for p in [2017u64, 10007, 1000003] {
            let k = PrimeField::new(p).unwrap();
            for a in 1..200u64 {
                match k.sqrt(&a) {
                    Some(r) => assert_eq!(k.mul(&r, &r), a),
                    None => assert_eq!(k.pow(&a, (p - 1) / 2), p - 1),
                }
            }
        }
        let q = Rationals;
        assert_eq!(q.sqrt(&q.parse("9/4").unwrap()), Some(q.parse("3/2").unwrap()));
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
        assert_eq!(q.sqrt(&q.from_i64(-4)), None);
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(2017).unwrap();
        assert_eq!(f.from_i64(-1), 2016);
        assert_eq!(f.mul(&2016, &2016), 1);
        let a = 1234;
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.pow(&3, 2016), 1);
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(1000003).is_ok());
    }

    #[test]
    fn parse_and_format() {
        let f = PrimeField::new(10007).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 10006);
        assert_eq!(f.mul(&f.parse("1/2").unwrap(), &2), 1);
        let q = Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn sub_scaled_matches_generic() {
        let f = PrimeField::new(10007).unwrap();
        let src = vec![1, 5000, 10006, 0];
        let mut fast = vec![3, 4, 5, 6];
        let mut slow = fast.clone();
        f.sub_scaled(&mut fast, &src, &777);
        for (d, s) in slow.iter_mut().zip(&src) {
            *d = f.sub(d, &f.mul(&777, s));
        }
        assert_eq!(fast, slow);
    }
}

//! Weighted monomials in the thirteen generators.

use std::cmp::Ordering;
use std::fmt;

use crate::covariants::{InvariantTuple, GENERATOR_DEGREES, GENERATOR_NAMES, NUM_GENERATORS};
use crate::exactalg::Field;

/// Exponents of a monomial in the generators, in canonical generator order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub [u32; NUM_GENERATORS]);

impl ExponentVector {
    pub fn weighted_degree(&self) -> u32 {
        self.0.iter().zip(GENERATOR_DEGREES).map(|(e, d)| e * d).sum()
    }

    /// A single generator raised to a power.
    pub fn power(generator: usize, exp: u32) -> Self {
        let mut e = [0; NUM_GENERATORS];
        e[generator] = exp;
        ExponentVector(e)
    }

    pub fn product(&self, other: &Self) -> Self {
        ExponentVector(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// Evaluates the monomial at a tuple of generator values.
    pub fn evaluate<K: Field>(&self, k: &K, values: &InvariantTuple<K::Elem>) -> K::Elem {
        self.0
            .iter()
            .zip(values.values())
            .filter(|(e, _)| **e > 0)
            .fold(k.one(), |acc, (&e, v)| k.mul(&acc, &k.pow(v, e as u64)))
    }
}

/// Enumeration order: lexicographically descending exponents, so that
/// `I3^18` comes first and `I27^2` last in degree 54.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    /// `I3^2*I6^8`, or `1` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in GENERATOR_NAMES.iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All exponent vectors of weighted degree exactly `degree`, in enumeration order.
pub fn weighted_monomials(degree: u32) -> Vec<ExponentVector> {
    fn rec(i: usize, rem: u32, cur: &mut [u32; NUM_GENERATORS], out: &mut Vec<ExponentVector>) {
        if i == NUM_GENERATORS {
            if rem == 0 {
                out.push(ExponentVector(*cur));
            }
            return;
        }
        let d = GENERATOR_DEGREES[i];
        for e in (0..=rem / d).rev() {
            cur[i] = e;
            rec(i + 1, rem - e * d, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree, &mut [0; NUM_GENERATORS], &mut out);
    out
}

/// Evaluates every monomial at one tuple, sharing generator powers.
pub fn evaluate_all<K: Field>(k: &K, monomials: &[ExponentVector], values: &InvariantTuple<K::Elem>) -> Vec<K::Elem> {
    let mut max = [0u32; NUM_GENERATORS];
    for m in monomials {
        for (a, &e) in max.iter_mut().zip(&m.0) {
            *a = (*a).max(e);
        }
    }
    let powers: Vec<Vec<K::Elem>> = values
        .values()
        .iter()
        .zip(max)
        .map(|(v, top)| {
            let mut p = vec![k.one()];
            for _ in 0..top {
                let next = k.mul(p.last().unwrap(), v);
                p.push(next);
            }
            p
        })
        .collect();
    monomials
        .iter()
        .map(|m| {
            m.0.iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .fold(k.one(), |acc, (g, &e)| k.mul(&acc, &powers[g][e as usize]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        assert!(weighted_monomials(1).is_empty());
        assert_eq!(weighted_monomials(3), vec![ExponentVector::power(0, 1)]);
        assert_eq!(weighted_monomials(0).len(), 1);
        assert_eq!(weighted_monomials(6).len(), 2);
    }

    #[test]
    fn degree_54_endpoints() {
        let m = weighted_monomials(54);
        assert_eq!(m.len(), 1380);
        assert_eq!(m[0], ExponentVector::power(0, 18));
        assert_eq!(m[1].to_string(), "I3^16*I6");
        assert_eq!(m.last().unwrap(), &ExponentVector::power(12, 2));
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(m.iter().all(|e| e.weighted_degree() == 54));
    }

    #[test]
    fn display() {
        let e = ExponentVector::power(0, 1).product(&ExponentVector::power(12, 1));
        assert_eq!(e.to_string(), "I3*I27");
    }
}

//! Lifting canonical expressions from several primes toward the rationals.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expression::InvariantExpression;
use super::monomials::ExponentVector;
use super::RelfindError;
use crate::exactalg::{crt_combine, rational_reconstruct, Rationals};

/// Per-coefficient outcome of combining residues.
#[derive(Clone, Debug)]
pub struct MultimodularReport {
    pub primes: Vec<u64>,
    pub modulus: BigInt,
    pub terms: usize,
    /// Coefficients with a rational preimage inside the bound for all primes.
    /// Random residues pass this test often, so on its own it proves little.
    pub reconstructed: usize,
    /// Reconstructed coefficients that already agree when the last prime is dropped.
    pub stable: usize,
    /// Partial expression holding the stable coefficients.
    pub partial: InvariantExpression<BigRational>,
}

fn bound_for(modulus: &BigInt) -> BigInt {
    // largest b with 2 b^2 < modulus
    let half: BigUint = ((modulus - BigInt::one()) / BigInt::from(2)).to_biguint().unwrap_or_default();
    let mut b = BigInt::from(half.sqrt());
    while BigInt::from(2) * &b * &b >= *modulus && b > BigInt::zero() {
        b -= 1;
    }
    b
}

fn reconstruct(residues: &[(BigInt, u64)]) -> Result<Option<BigRational>, RelfindError> {
    let (r, m) = crt_combine(residues)?;
    let b = bound_for(&m);
    if b.is_zero() {
        return Ok(None);
    }
    Ok(rational_reconstruct(&r, &m, &b)?)
}

/// Combines expressions of one degree computed at distinct primes. Needs at
/// least two primes for any coefficient to count as stable.
pub fn combine_expressions(expressions: &[InvariantExpression<u64>]) -> Result<MultimodularReport, RelfindError> {
    let first = expressions.first().ok_or_else(|| RelfindError::Degenerate("no expressions to combine".into()))?;
    let degree = first.degree();
    let mut primes = Vec::new();
    for e in expressions {
        if e.degree() != degree {
            return Err(RelfindError::Format("expressions of different degrees".into()));
        }
        primes.push(e.modulus().ok_or_else(|| RelfindError::Format("rational expression in modular combination".into()))?);
    }
    let support: BTreeSet<ExponentVector> = expressions.iter().flat_map(|e| e.terms().iter().map(|(m, _)| *m)).collect();
    let residues_of = |m: &ExponentVector, upto: usize| -> Vec<(BigInt, u64)> {
        expressions[..upto]
            .iter()
            .zip(&primes)
            .map(|(e, &p)| {
                let c = e.terms().binary_search_by(|(x, _)| x.cmp(m)).map(|i| e.terms()[i].1).unwrap_or(0);
                (BigInt::from(c), p)
            })
            .collect()
    };
    let mut reconstructed = 0;
    let mut stable = 0;
    let mut terms = Vec::new();
    for m in &support {
        if let Some(q) = reconstruct(&residues_of(m, expressions.len()))? {
            reconstructed += 1;
            if expressions.len() > 1 && reconstruct(&residues_of(m, expressions.len() - 1))?.as_ref() == Some(&q) {
                stable += 1;
                terms.push((*m, q));
            }
        }
    }
    let modulus = primes.iter().fold(BigInt::one(), |acc, &p| acc * BigInt::from(p));
    Ok(MultimodularReport {
        primes,
        modulus,
        terms: support.len(),
        reconstructed,
        stable,
        partial: InvariantExpression::from_terms(&Rationals, degree, terms)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, PrimeField};

    #[test]
    fn small_fractions_lift() {
        let q = Rationals;
        let m1 = ExponentVector::power(0, 2);
        let m2 = ExponentVector::power(1, 1);
        let exact = [(m1, q.parse("-3/7").unwrap()), (m2, q.parse("5").unwrap())];
        let reduce = |p: u64| {
            let k = PrimeField::new(p).unwrap();
            let terms = exact.iter().map(|(m, c)| (*m, k.div(&k.from_bigint(c.numer()), &k.from_bigint(c.denom())).unwrap()));
            InvariantExpression::from_terms(&k, 6, terms).unwrap()
        };
        let report = combine_expressions(&[reduce(2017), reduce(10007), reduce(100003)]).unwrap();
        assert_eq!(report.reconstructed, 2);
        assert_eq!(report.stable, 2);
        assert_eq!(report.partial.coeff(&q, &m1), exact[0].1);
        assert_eq!(report.partial.coeff(&q, &m2), exact[1].1);
    }

    #[test]
    fn bound_is_maximal() {
        let m = BigInt::from(35);
        let b = bound_for(&m);
        assert_eq!(b, BigInt::from(4));
    }

    #[test]
    fn duplicate_primes_rejected() {
        let k = PrimeField::new(2017).unwrap();
        let e = InvariantExpression::from_terms(&k, 3, [(ExponentVector::power(0, 1), 1)]).unwrap();
        assert!(combine_expressions(&[e.clone(), e]).is_err());
    }
}

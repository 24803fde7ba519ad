//! Sparse polynomials in the generators and their text format.
//!
//! ```text
//! # free-form provenance comments
//! degree 54
//! modulus 10007            (or: rational)
//! generators I3 I6 I9 J9 I12 J12 I15 J15 I18 J18 I21 J21 I27
//! 18 0 0 0 0 0 0 0 0 0 0 0 0 1
//! 2 8 0 0 0 0 0 0 0 0 0 0 0 4093
//! ...
//! ```
//!
//! One term per line: thirteen exponents, then the coefficient as a decimal
//! residue or `num/den`. Terms appear in enumeration order.

use std::fmt::Write as _;

use super::monomials::{evaluate_all, ExponentVector};
use super::RelfindError;
use crate::covariants::{DixmierOhno, InvariantTuple, TernaryQuartic, GENERATOR_NAMES, NUM_GENERATORS};
use crate::exactalg::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantExpression<E> {
    degree: u32,
    modulus: Option<u64>,
    terms: Vec<(ExponentVector, E)>,
}

impl<E: Clone + PartialEq> InvariantExpression<E> {
    pub fn zero<K: Field<Elem = E>>(k: &K, degree: u32) -> Self {
        InvariantExpression { degree, modulus: k.modulus(), terms: Vec::new() }
    }

    /// Builds from arbitrary terms: drops zeros, merges repeats, sorts.
    pub fn from_terms<K: Field<Elem = E>>(
        k: &K,
        degree: u32,
        terms: impl IntoIterator<Item = (ExponentVector, E)>,
    ) -> Result<Self, RelfindError> {
        let mut map: std::collections::BTreeMap<ExponentVector, E> = Default::default();
        for (e, c) in terms {
            if e.weighted_degree() != degree {
                return Err(RelfindError::Format(format!("monomial {e} has weighted degree {} not {degree}", e.weighted_degree())));
            }
            let entry = map.entry(e).or_insert_with(|| k.zero());
            *entry = k.add(entry, &c);
        }
        Ok(InvariantExpression {
            degree,
            modulus: k.modulus(),
            terms: map.into_iter().filter(|(_, c)| !k.is_zero(c)).collect(),
        })
    }

    /// Coefficient vector `coeffs[j]` attached to `monomials[j]`.
    pub fn from_vector<K: Field<Elem = E>>(k: &K, degree: u32, monomials: &[ExponentVector], coeffs: &[E]) -> Self {
        Self::from_terms(k, degree, monomials.iter().copied().zip(coeffs.iter().cloned()))
            .expect("monomials of the stated degree")
    }

    /// Dense coefficient vector against a monomial list.
    pub fn to_vector<K: Field<Elem = E>>(&self, k: &K, monomials: &[ExponentVector]) -> Vec<E> {
        monomials.iter().map(|m| self.coeff(k, m)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn terms(&self) -> &[(ExponentVector, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<K: Field<Elem = E>>(&self, k: &K, m: &ExponentVector) -> E {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| k.zero())
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        InvariantExpression {
            degree: self.degree,
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, k.mul(v, c)))
                .filter(|(_, v)| !k.is_zero(v))
                .collect(),
        }
    }

    /// Scales so that the `I3^d` coefficient (when present) or else the
    /// first coefficient is one.
    pub fn normalized<K: Field<Elem = E>>(&self, k: &K) -> Self {
        let lead = self
            .terms
            .iter()
            .find(|(e, _)| e.0[1..].iter().all(|&x| x == 0))
            .or(self.terms.first());
        match lead {
            Some((_, c)) => self.scale(k, &k.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    fn check_field<K: Field<Elem = E>>(&self, k: &K) -> Result<(), RelfindError> {
        if self.modulus != k.modulus() {
            return Err(RelfindError::ModulusMismatch { expected: self.modulus, found: k.modulus() });
        }
        Ok(())
    }

    pub fn evaluate_at<K: Field<Elem = E>>(&self, k: &K, values: &InvariantTuple<E>) -> Result<E, RelfindError> {
        self.check_field(k)?;
        let monomials: Vec<ExponentVector> = self.terms.iter().map(|(e, _)| *e).collect();
        let vals = evaluate_all(k, &monomials, values);
        Ok(self.terms.iter().zip(vals).fold(k.zero(), |acc, ((_, c), v)| k.add(&acc, &k.mul(c, &v))))
    }

    pub fn to_text<K: Field<Elem = E>>(&self, k: &K, comments: &[String]) -> String {
        let mut s = String::new();
        for c in comments {
            let _ = writeln!(s, "# {c}");
        }
        let _ = writeln!(s, "degree {}", self.degree);
        match self.modulus {
            Some(p) => {
                let _ = writeln!(s, "modulus {p}");
            }
            None => s.push_str("rational\n"),
        }
        let _ = writeln!(s, "generators {}", GENERATOR_NAMES.join(" "));
        for (e, c) in &self.terms {
            for x in e.0 {
                let _ = write!(s, "{x} ");
            }
            let _ = writeln!(s, "{}", k.format(c));
        }
        s
    }

    pub fn from_text<K: Field<Elem = E>>(k: &K, text: &str) -> Result<Self, RelfindError> {
        let mut degree = None;
        let mut modulus: Option<Option<u64>> = None;
        let mut have_generators = false;
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: String| RelfindError::Parse { line: lineno + 1, msg };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let first = words.next().unwrap();
            match first {
                "degree" => {
                    degree = Some(words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad degree".into()))?);
                }
                "modulus" => {
                    let p: u64 = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad modulus".into()))?;
                    modulus = Some(Some(p));
                }
                "rational" => modulus = Some(None),
                "generators" => {
                    let names: Vec<&str> = words.collect();
                    if names != GENERATOR_NAMES {
                        return Err(err(format!("unexpected generator list {names:?}")));
                    }
                    have_generators = true;
                }
                _ => {
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() != NUM_GENERATORS + 1 {
                        return Err(err(format!("expected {} fields, found {}", NUM_GENERATORS + 1, fields.len())));
                    }
                    let mut e = [0u32; NUM_GENERATORS];
                    for (slot, w) in e.iter_mut().zip(&fields) {
                        *slot = w.parse().map_err(|_| err(format!("bad exponent {w:?}")))?;
                    }
                    let c = k.parse(fields[NUM_GENERATORS]).map_err(|e| err(e.to_string()))?;
                    terms.push((ExponentVector(e), c));
                }
            }
        }
        let degree = degree.ok_or_else(|| RelfindError::Format("missing degree header".into()))?;
        let modulus = modulus.ok_or_else(|| RelfindError::Format("missing modulus header".into()))?;
        if !have_generators {
            return Err(RelfindError::Format("missing generators header".into()));
        }
        if modulus != k.modulus() {
            return Err(RelfindError::ModulusMismatch { expected: modulus, found: k.modulus() });
        }
        Self::from_terms(k, degree, terms)
    }
}

/// An expression bound to an evaluator, for membership tests on quartics.
pub struct ExpressionEvaluator<'a, K: Field> {
    pub invariants: &'a DixmierOhno<K>,
    pub expression: &'a InvariantExpression<K::Elem>,
}

impl<K: Field> ExpressionEvaluator<'_, K> {
    pub fn evaluate(&self, f: &TernaryQuartic<K::Elem>) -> Result<K::Elem, RelfindError> {
        let values = self.invariants.evaluate(f);
        self.expression.evaluate_at(self.invariants.field(), &values)
    }

    pub fn vanishes(&self, f: &TernaryQuartic<K::Elem>) -> Result<bool, RelfindError> {
        Ok(self.invariants.field().is_zero(&self.evaluate(f)?))
    }
}

/// `Σ coeff · Π invariant^exp` at `dixmier_ohno(f)`.
pub fn evaluate_expression<K: Field>(
    invariants: &DixmierOhno<K>,
    expression: &InvariantExpression<K::Elem>,
    f: &TernaryQuartic<K::Elem>,
) -> Result<K::Elem, RelfindError> {
    ExpressionEvaluator { invariants, expression }.evaluate(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};
    use crate::relfind::monomials::weighted_monomials;

    #[test]
    fn text_round_trip() {
        let k = PrimeField::new(10007).unwrap();
        let mons = weighted_monomials(12);
        let coeffs: Vec<u64> = (0..mons.len() as u64).map(|i| (i * 37) % 5).collect();
        let e = InvariantExpression::from_vector(&k, 12, &mons, &coeffs);
        let text = e.to_text(&k, &["seed 3".into()]);
        assert!(text.starts_with("# seed 3\ndegree 12\nmodulus 10007\ngenerators I3 I6"));
        assert_eq!(InvariantExpression::from_text(&k, &text).unwrap(), e);
    }

    #[test]
    fn rational_round_trip_and_mismatch() {
        let q = Rationals;
        let e = InvariantExpression::from_terms(&q, 6, [(ExponentVector::power(1, 1), q.parse("-7/3").unwrap())]).unwrap();
        let text = e.to_text(&q, &[]);
        assert!(text.contains("rational\n"));
        assert!(text.contains(" -7/3\n"));
        assert_eq!(InvariantExpression::from_text(&q, &text).unwrap(), e);
        let k = PrimeField::new(2017).unwrap();
        assert!(matches!(InvariantExpression::from_text(&k, &text), Err(RelfindError::ModulusMismatch { .. })));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let k = PrimeField::new(2017).unwrap();
        let bad = "degree 3\nmodulus 2017\ngenerators I3 I6 I9 J9 I12 J12 I15 J15 I18 J18 I21 J21 I27\n1 0 0 1\n";
        match InvariantExpression::from_text(&k, bad) {
            Err(RelfindError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_expression_evaluates_to_zero() {
        let k = PrimeField::new(2017).unwrap();
        let e = InvariantExpression::zero(&k, 54);
        let t = InvariantTuple::new([5u64; 13]);
        assert_eq!(e.evaluate_at(&k, &t).unwrap(), 0);
    }

    #[test]
    fn normalization_prefers_the_pure_i3_power() {
        let k = PrimeField::new(2017).unwrap();
        let e = InvariantExpression::from_terms(&k, 6, [(ExponentVector::power(0, 2), 4), (ExponentVector::power(1, 1), 2)]).unwrap();
        let n = e.normalized(&k);
        assert_eq!(n.coeff(&k, &ExponentVector::power(0, 2)), 1);
        assert_eq!(n.coeff(&k, &ExponentVector::power(1, 1)), k.inv(&2).unwrap());
    }
}

//! Multivariate polynomials keyed by exponent tuples.

use std::collections::BTreeMap;

use super::field::Field;
use super::AlgebraError;

pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly<E> {
    nvars: usize,
    terms: BTreeMap<Exponents, E>,
}

impl<E: Clone + PartialEq> DensePoly<E> {
    pub fn zero(nvars: usize) -> Self {
        DensePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant<K: Field<Elem = E>>(k: &K, nvars: usize, c: E) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(k, vec![0; nvars], c);
        p
    }

    pub fn var<K: Field<Elem = E>>(k: &K, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(k, e, k.one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<K, I>(k: &K, nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        K: Field<Elem = E>,
        I: IntoIterator<Item = (Exponents, E)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(AlgebraError::VariableMismatch(nvars, e.len()));
            }
            p.add_term(k, e, c);
        }
        Ok(p)
    }

    pub fn add_term<K: Field<Elem = E>>(&mut self, k: &K, e: Exponents, c: E) {
        debug_assert_eq!(e.len(), self.nvars);
        if k.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = k.add(v, &c);
                if k.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &E)> {
        self.terms.iter()
    }

    pub fn coeff<K: Field<Elem = E>>(&self, k: &K, e: &[u32]) -> E {
        self.terms.get(e).cloned().unwrap_or_else(|| k.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(k, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(k, e.clone(), k.neg(c));
        }
        Ok(out)
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(k, e, k.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(k, e.clone(), k.mul(v, c));
        }
        out
    }

    pub fn pow<K: Field<Elem = E>>(&self, k: &K, n: u32) -> Self {
        let mut acc = Self::constant(k, self.nvars, k.one());
        for _ in 0..n {
            acc = acc.mul(k, self).expect("same variable count");
        }
        acc
    }

    pub fn eval<K: Field<Elem = E>>(&self, k: &K, point: &[E]) -> Result<E, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::VariableMismatch(self.nvars, point.len()));
        }
        let mut acc = k.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &d) in point.iter().zip(e) {
                if d > 0 {
                    t = k.mul(&t, &k.pow(x, d as u64));
                }
            }
            acc = k.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial<K: Field<Elem = E>>(&self, k: &K, i: usize) -> Result<Self, AlgebraError> {
        if i >= self.nvars {
            return Err(AlgebraError::VariableMismatch(self.nvars, i + 1));
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(k, e2, k.mul(c, &k.from_i64(e[i] as i64)));
        }
        Ok(out)
    }

    /// Substitutes `subs[i]` for variable `i`; all substitutes share one variable count.
    pub fn compose<K: Field<Elem = E>>(&self, k: &K, subs: &[DensePoly<E>]) -> Result<Self, AlgebraError> {
        if subs.len() != self.nvars {
            return Err(AlgebraError::VariableMismatch(self.nvars, subs.len()));
        }
        let target = subs.first().map(|s| s.nvars).unwrap_or(0);
        if subs.iter().any(|s| s.nvars != target) {
            return Err(AlgebraError::VariableMismatch(target, 0));
        }
        // cache powers per variable
        let mut powers: Vec<Vec<DensePoly<E>>> = subs.iter().map(|s| vec![Self::constant(k, target, k.one()), s.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(k, target, c.clone());
            for (i, &d) in e.iter().enumerate() {
                let d = d as usize;
                while powers[i].len() <= d {
                    let next = powers[i].last().unwrap().mul(k, &subs[i])?;
                    powers[i].push(next);
                }
                if d > 0 {
                    t = t.mul(k, &powers[i][d])?;
                }
            }
            out = out.add(k, &t)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{PrimeField, Rationals};

    #[test]
    fn difference_of_squares() {
        let q = Rationals;
        let x = DensePoly::var(&q, 2, 0);
        let y = DensePoly::var(&q, 2, 1);
        let lhs = x.add(&q, &y).unwrap().mul(&q, &x.sub(&q, &y).unwrap()).unwrap();
        let rhs = x.mul(&q, &x).unwrap().sub(&q, &y.mul(&q, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 2);
    }

    #[test]
    fn partial_derivative() {
        let k = PrimeField::new(2017).unwrap();
        let x2y = DensePoly::from_terms(&k, 3, [(vec![2, 1, 0], 1)]).unwrap();
        let d = x2y.partial(&k, 0).unwrap();
        assert_eq!(d, DensePoly::from_terms(&k, 3, [(vec![1, 1, 0], 2)]).unwrap());
    }

    #[test]
    fn fermat_eval() {
        let k = PrimeField::new(2017).unwrap();
        let f = DensePoly::from_terms(&k, 3, [(vec![4, 0, 0], 1), (vec![0, 4, 0], 1), (vec![0, 0, 4], 1)]).unwrap();
        assert_eq!(f.eval(&k, &[1, 1, 1]).unwrap(), 3);
    }

    #[test]
    fn mismatched_variables_rejected() {
        let k = PrimeField::new(2017).unwrap();
        let a = DensePoly::var(&k, 2, 0);
        let b = DensePoly::var(&k, 3, 0);
        assert!(a.mul(&k, &b).is_err());
        assert!(a.add(&k, &b).is_err());
        assert!(a.eval(&k, &[1, 2, 3]).is_err());
    }

    #[test]
    fn compose_linear_substitution() {
        let k = PrimeField::new(10007).unwrap();
        // (x+y)^2 with x -> s, y -> -s gives 0
        let x = DensePoly::var(&k, 2, 0);
        let y = DensePoly::var(&k, 2, 1);
        let f = x.add(&k, &y).unwrap().pow(&k, 2);
        let s = DensePoly::var(&k, 1, 0);
        let g = f.compose(&k, &[s.clone(), s.scale(&k, &k.from_i64(-1))]).unwrap();
        assert!(g.is_zero());
    }
}

//! Bracket (symbolic-method) operators.
//!
//! A bracket monomial such as `(abu)^4` or `(abc)^4` is a product of 3×3
//! determinants in the derivative symbols of several form slots and the dual
//! variable `u`. Expanding it once gives a fixed list of terms
//! `coef · ∂^α(slot a) ∂^β(slot b) ... u^γ`; every slot is differentiated to
//! its full degree, so each term reduces to a product of form coefficients.

use std::collections::HashMap;

use super::forms::{monomial_index, multi_factorial, TernaryForm};
use crate::exactalg::Field;

/// One row of a bracket: a form slot index, or the dual variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Slot(usize),
    U,
}

const MAX_SLOTS: usize = 3;
const NVARS: usize = 3 * MAX_SLOTS + 3;

type Mono = [u8; NVARS];

fn var_base(s: Symbol) -> usize {
    match s {
        Symbol::Slot(i) => {
            assert!(i < MAX_SLOTS);
            3 * i
        }
        Symbol::U => 3 * MAX_SLOTS,
    }
}

fn det_poly(rows: [Symbol; 3]) -> HashMap<Mono, i64> {
    const PERMS: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    let mut out = HashMap::new();
    for (perm, sign) in PERMS {
        let mut m = [0u8; NVARS];
        for (r, &col) in perm.iter().enumerate() {
            m[var_base(rows[r]) + col] += 1;
        }
        *out.entry(m).or_insert(0) += sign;
    }
    out
}

fn poly_mul(a: &HashMap<Mono, i64>, b: &HashMap<Mono, i64>) -> HashMap<Mono, i64> {
    let mut out: HashMap<Mono, i64> = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = *ma;
            for i in 0..NVARS {
                m[i] += mb[i];
            }
            *out.entry(m).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[derive(Clone, Debug)]
struct Term {
    /// Monomial index within each slot's degree.
    slots: [usize; MAX_SLOTS],
    /// Monomial index within the `u` degree.
    u: usize,
    coef: i64,
}

/// An expanded bracket monomial, independent of the coefficient field.
#[derive(Clone, Debug)]
pub struct BracketOperator {
    slot_degrees: Vec<usize>,
    u_degree: usize,
    terms: Vec<Term>,
}

impl BracketOperator {
    /// Expands `Π brackets[i]^powers[i]`.
    pub fn new(factors: &[([Symbol; 3], u32)]) -> Self {
        let mut acc: HashMap<Mono, i64> = HashMap::from([([0u8; NVARS], 1)]);
        for (rows, pow) in factors {
            let d = det_poly(*rows);
            for _ in 0..*pow {
                acc = poly_mul(&acc, &d);
            }
        }
        let mut slot_degrees = Vec::new();
        let mut u_degree = 0;
        if let Some(m) = acc.keys().next() {
            for s in 0..MAX_SLOTS {
                let d: u8 = m[3 * s..3 * s + 3].iter().sum();
                if d > 0 {
                    slot_degrees.resize(s + 1, 0);
                    slot_degrees[s] = d as usize;
                }
            }
            u_degree = m[3 * MAX_SLOTS..].iter().map(|&x| x as usize).sum();
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .map(|(m, c)| {
                let mut slots = [0usize; MAX_SLOTS];
                let mut coef = c;
                for (s, slot) in slots.iter_mut().enumerate().take(slot_degrees.len()) {
                    let e = [m[3 * s] as u32, m[3 * s + 1] as u32, m[3 * s + 2] as u32];
                    *slot = monomial_index(e);
                    coef *= multi_factorial(e);
                }
                let b = 3 * MAX_SLOTS;
                let u = monomial_index([m[b] as u32, m[b + 1] as u32, m[b + 2] as u32]);
                Term { slots, u, coef }
            })
            .collect();
        terms.sort_by_key(|t| (t.slots, t.u));
        BracketOperator { slot_degrees, u_degree, terms }
    }

    pub fn slot_degrees(&self) -> &[usize] {
        &self.slot_degrees
    }

    pub fn u_degree(&self) -> usize {
        self.u_degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn prepare<K: Field>(&self, k: &K) -> PreparedBracket<K::Elem> {
        PreparedBracket {
            slot_degrees: self.slot_degrees.clone(),
            u_degree: self.u_degree,
            terms: self.terms.iter().map(|t| (t.slots, t.u, k.from_i64(t.coef))).collect(),
        }
    }
}

/// A bracket operator with coefficients mapped into one field.
#[derive(Clone, Debug)]
pub struct PreparedBracket<E> {
    slot_degrees: Vec<usize>,
    u_degree: usize,
    terms: Vec<([usize; MAX_SLOTS], usize, E)>,
}

impl<E: Clone + PartialEq> PreparedBracket<E> {
    /// Evaluates on the given forms (one per slot, matching degrees); the
    /// result is a form in the dual variable of degree `u_degree`.
    pub fn apply<K: Field<Elem = E>>(&self, k: &K, forms: &[&TernaryForm<E>]) -> TernaryForm<E> {
        assert_eq!(forms.len(), self.slot_degrees.len(), "slot count");
        for (f, &d) in forms.iter().zip(&self.slot_degrees) {
            assert_eq!(f.degree(), d, "slot degree");
        }
        let mut out = TernaryForm::zero(k, self.u_degree).into_coeffs();
        let coeffs: Vec<&[E]> = forms.iter().map(|f| f.coeffs()).collect();
        for (slots, u, c) in &self.terms {
            let mut t = c.clone();
            for (s, cs) in coeffs.iter().enumerate() {
                let v = &cs[slots[s]];
                if k.is_zero(v) {
                    t = k.zero();
                    break;
                }
                t = k.mul(&t, v);
            }
            if !k.is_zero(&t) {
                out[*u] = k.add(&out[*u], &t);
            }
        }
        TernaryForm::from_coeffs(self.u_degree, out).expect("sized by construction")
    }
}

//! The Luroth invariant restricted to Ciani quartics
//! `a x^4 + b x^2y^2 + c x^2z^2 + d y^4 + e y^2z^2 + f z^4`, where it factors
//! as `G^4 H^2 J` with `G, H, J` of degrees 6, 9, 12 in `(a, ..., f)`.

use super::expression::{evaluate_expression, InvariantExpression};
use super::{margin, RelfindError};
use crate::covariants::DixmierOhno;
use crate::exactalg::{DensePoly, Field, Matrix};
use crate::sampling::{self, CianiCoefficients};

const G_FACTORS: [&str; 4] = ["a", "d", "f", "a d f - 1/4 a e^2 - 1/4 b^2 f - 1/4 b c e - 1/4 c^2 d"];

const H_FACTORS: [&str; 3] = [
    "a d f - 1/4 a e^2 - 1/4 b^2 f + 1/4 b c e + 3/4 c^2 d",
    "a d f - 1/4 a e^2 + 3/4 b^2 f + 1/4 b c e - 1/4 c^2 d",
    "a d f + 3/4 a e^2 - 1/4 b^2 f + 1/4 b c e - 1/4 c^2 d",
];

const J: &str = "a^4 d^4 f^4 - 1/49 a^4 d^3 e^2 f^3 + 51/19208 a^4 d^2 e^4 f^2
 - 1/38416 a^4 d e^6 f + 1/614656 a^4 e^8 - 1/49 a^3 b^2 d^3 f^4
 - 205/9604 a^3 b^2 d^2 e^2 f^3 - 3/38416 a^3 b^2 d e^4 f^2
 + 1/153664 a^3 b^2 e^6 f + 15/343 a^3 b c d^3 e f^3
 + 29/9604 a^3 b c d^2 e^3 f^2 - 5/38416 a^3 b c d e^5 f
 - 1/153664 a^3 b c e^7 - 1/49 a^3 c^2 d^4 f^3
 - 205/9604 a^3 c^2 d^3 e^2 f^2 - 3/38416 a^3 c^2 d^2 e^4 f
 + 1/153664 a^3 c^2 d e^6 + 51/19208 a^2 b^4 d^2 f^4
 - 3/38416 a^2 b^4 d e^2 f^3 + 3/307328 a^2 b^4 e^4 f^2
 + 29/9604 a^2 b^3 c d^2 e f^3 - 5/19208 a^2 b^3 c d e^3 f^2
 - 3/153664 a^2 b^3 c e^5 f - 205/9604 a^2 b^2 c^2 d^3 f^3
 + 2/2401 a^2 b^2 c^2 d^2 e^2 f^2 + 55/153664 a^2 b^2 c^2 d e^4 f
 + 3/307328 a^2 b^2 c^2 e^6 + 29/9604 a^2 b c^3 d^3 e f^2
 - 5/19208 a^2 b c^3 d^2 e^3 f - 3/153664 a^2 b c^3 d e^5
 + 51/19208 a^2 c^4 d^4 f^2 - 3/38416 a^2 c^4 d^3 e^2 f
 + 3/307328 a^2 c^4 d^2 e^4 - 1/38416 a b^6 d f^4 + 1/153664 a b^6 e^2 f^3
 - 5/38416 a b^5 c d e f^3 - 3/153664 a b^5 c e^3 f^2
 - 3/38416 a b^4 c^2 d^2 f^3 + 55/153664 a b^4 c^2 d e^2 f^2
 + 3/153664 a b^4 c^2 e^4 f - 5/19208 a b^3 c^3 d^2 e f^2
 - 17/76832 a b^3 c^3 d e^3 f - 1/153664 a b^3 c^3 e^5
 - 3/38416 a b^2 c^4 d^3 f^2 + 55/153664 a b^2 c^4 d^2 e^2 f
 + 3/153664 a b^2 c^4 d e^4 - 5/38416 a b c^5 d^3 e f
 - 3/153664 a b c^5 d^2 e^3 - 1/38416 a c^6 d^4 f + 1/153664 a c^6 d^3 e^2
 + 1/614656 b^8 f^4 - 1/153664 b^7 c e f^3 + 1/153664 b^6 c^2 d f^3
 + 3/307328 b^6 c^2 e^2 f^2 - 3/153664 b^5 c^3 d e f^2
 - 1/153664 b^5 c^3 e^3 f + 3/307328 b^4 c^4 d^2 f^2
 + 3/153664 b^4 c^4 d e^2 f + 1/614656 b^4 c^4 e^4
 - 3/153664 b^3 c^5 d^2 e f - 1/153664 b^3 c^5 d e^3
 + 1/153664 b^2 c^6 d^3 f + 3/307328 b^2 c^6 d^2 e^2 - 1/153664 b c^7 d^3 e
 + 1/614656 c^8 d^4";

const VARIABLES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Parses a sum of terms `[coeff] v^k v ...` in the six Ciani variables.
fn parse_sum<K: Field>(k: &K, text: &str) -> DensePoly<K::Elem> {
    let mut poly = DensePoly::zero(6);
    let mut sign = k.one();
    let mut coeff: Option<K::Elem> = None;
    let mut exps = vec![0u32; 6];
    let mut pending = false;
    let flush = |poly: &mut DensePoly<K::Elem>, sign: &K::Elem, coeff: &mut Option<K::Elem>, exps: &mut Vec<u32>| {
        let c = coeff.take().unwrap_or_else(|| k.one());
        poly.add_term(k, std::mem::replace(exps, vec![0; 6]), k.mul(sign, &c));
    };
    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" => {
                if pending {
                    flush(&mut poly, &sign, &mut coeff, &mut exps);
                    pending = false;
                }
                sign = if tok == "-" { k.neg(&k.one()) } else { k.one() };
            }
            t if t.starts_with(|c: char| c.is_ascii_digit()) => {
                coeff = Some(k.parse(t).expect("coefficient"));
                pending = true;
            }
            t => {
                let (name, e) = t.split_once('^').map(|(n, e)| (n, e.parse().expect("exponent"))).unwrap_or((t, 1));
                let v = VARIABLES.iter().position(|&x| x == name).expect("variable");
                exps[v] += e;
                pending = true;
            }
        }
    }
    if pending {
        flush(&mut poly, &sign, &mut coeff, &mut exps);
    }
    poly
}

fn product<K: Field>(k: &K, factors: &[&str]) -> DensePoly<K::Elem> {
    factors
        .iter()
        .fold(DensePoly::constant(k, 6, k.one()), |acc, f| acc.mul(k, &parse_sum(k, f)).expect("6 variables"))
}

/// The three factors `(G, H, J)` as polynomials in `(a, b, c, d, e, f)`.
pub struct CianiFactors<E> {
    pub g: DensePoly<E>,
    pub h: DensePoly<E>,
    pub j: DensePoly<E>,
}

impl<E: Clone + PartialEq> CianiFactors<E> {
    /// Over a prime field the denominators (powers of 2 and 7) must be invertible.
    pub fn new<K: Field<Elem = E>>(k: &K) -> Self {
        CianiFactors { g: product(k, &G_FACTORS), h: product(k, &H_FACTORS), j: parse_sum(k, J) }
    }

    /// `G^4 H^2 J` at a point.
    pub fn product_at<K: Field<Elem = E>>(&self, k: &K, point: &[E; 6]) -> E {
        let g = self.g.eval(k, point).expect("6 variables");
        let h = self.h.eval(k, point).expect("6 variables");
        let j = self.j.eval(k, point).expect("6 variables");
        k.mul(&k.mul(&k.pow(&g, 4), &k.mul(&h, &h)), &j)
    }
}

/// Exact expansion of `G^4 H^2 J`.
pub fn expand_ciani_product<K: Field>(k: &K) -> DensePoly<K::Elem> {
    let f = CianiFactors::new(k);
    let g2 = f.g.mul(k, &f.g).expect("6 variables");
    let g4 = g2.mul(k, &g2).expect("6 variables");
    let h2 = f.h.mul(k, &f.h).expect("6 variables");
    g4.mul(k, &h2).and_then(|p| p.mul(k, &f.j)).expect("6 variables")
}

/// Exponents `(α, ..., φ)` of `a^α b^β c^γ d^δ e^ε f^φ` with total degree 54
/// and tri-degree (72, 72, 72) in `(x, y, z)`, in descending lexicographic order.
pub fn ciani_weighted_monomials() -> Vec<[u32; 6]> {
    let mut out = Vec::new();
    for beta in (0..=36u32).rev() {
        for gamma in (0..=36u32).rev() {
            for eps in (0..=36u32).rev() {
                let same_parity = (beta + gamma) % 2 == 0 && (beta + eps) % 2 == 0;
                if !same_parity || beta + gamma > 36 || beta + eps > 36 || gamma + eps > 36 {
                    continue;
                }
                let alpha = 18 - (beta + gamma) / 2;
                let delta = 18 - (beta + eps) / 2;
                let phi = 18 - (gamma + eps) / 2;
                out.push([alpha, beta, gamma, delta, eps, phi]);
            }
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    out
}

/// Successful factorization check: `L(ciani(cc)) = λ · G^4 H^2 J(cc)` on every trial.
#[derive(Clone, Debug, PartialEq)]
pub struct CianiVerification<E> {
    pub lambda: E,
    pub trials: usize,
}

/// Draws `trials` Ciani tuples with `G H J ≠ 0` and checks proportionality
/// with a single constant fixed by the first trial.
pub fn verify_ciani<K: Field>(
    invariants: &DixmierOhno<K>,
    expression: &InvariantExpression<K::Elem>,
    trials: usize,
    seed: u64,
) -> Result<CianiVerification<K::Elem>, RelfindError> {
    let k = invariants.field();
    if expression.is_empty() {
        return Err(RelfindError::Degenerate("zero expression".into()));
    }
    let factors = CianiFactors::new(k);
    let mut lambda: Option<K::Elem> = None;
    let mut done = 0;
    let mut index = 0u64;
    while done < trials {
        let mut rng = sampling::rng_for(seed, index);
        index += 1;
        let cc = sampling::random_ciani_coefficients(k, &mut rng);
        let point = cc.to_array();
        let target = factors.product_at(k, &point);
        if k.is_zero(&target) {
            continue;
        }
        let value = evaluate_expression(invariants, expression, &sampling::ciani(k, &cc))?;
        match &lambda {
            None => {
                if k.is_zero(&value) {
                    return Err(RelfindError::CianiMismatch { witness: point.iter().map(|v| k.format(v)).collect() });
                }
                lambda = k.div(&value, &target);
            }
            Some(l) => {
                if value != k.mul(l, &target) {
                    return Err(RelfindError::CianiMismatch { witness: point.iter().map(|v| k.format(v)).collect() });
                }
            }
        }
        done += 1;
    }
    Ok(CianiVerification { lambda: lambda.unwrap_or_else(|| k.zero()), trials })
}

/// Interpolated restriction of an expression to the Ciani family.
#[derive(Clone, Debug)]
pub struct CianiInterpolation<E> {
    pub samples: usize,
    pub rank: usize,
    pub polynomial: DensePoly<E>,
}

/// Solves for the restriction of `expression` to Ciani quartics in the basis
/// of [`ciani_weighted_monomials`], using `samples` random tuples
/// (default: basis size plus margin).
pub fn interpolate_ciani<K: Field>(
    invariants: &DixmierOhno<K>,
    expression: &InvariantExpression<K::Elem>,
    seed: u64,
    samples: Option<usize>,
) -> Result<CianiInterpolation<K::Elem>, RelfindError> {
    let k = invariants.field();
    let basis = ciani_weighted_monomials();
    let n = basis.len();
    let samples = samples.unwrap_or(n + margin(n));
    if samples < n {
        return Err(RelfindError::SampleStarvation { needed: n, got: samples });
    }
    use rayon::prelude::*;
    let rows: Vec<Result<Vec<K::Elem>, RelfindError>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sampling::rng_for(seed, i);
            let cc: CianiCoefficients<K::Elem> = sampling::random_ciani_coefficients(k, &mut rng);
            let point = cc.to_array();
            let value = evaluate_expression(invariants, expression, &sampling::ciani(k, &cc))?;
            let mut row: Vec<K::Elem> = basis
                .iter()
                .map(|e| (0..6).fold(k.one(), |acc, v| k.mul(&acc, &k.pow(&point[v], e[v] as u64))))
                .collect();
            row.push(value);
            Ok(row)
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let ech = Matrix::from_rows(rows, n + 1)?.echelon(k);
    if ech.pivots.contains(&n) {
        return Err(RelfindError::Inconsistent("expression is not in the span of the weighted basis on the family".into()));
    }
    let rank = ech.rank();
    if rank < n {
        return Err(RelfindError::RankDeficient { rank, needed: n });
    }
    let mut poly = DensePoly::zero(6);
    for (row, &col) in ech.pivots.iter().enumerate() {
        poly.add_term(k, basis[col].to_vec(), ech.matrix.get(row, n).clone());
    }
    Ok(CianiInterpolation { samples, rank, polynomial: poly })
}

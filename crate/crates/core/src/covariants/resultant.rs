//! Resultant of three ternary forms by Macaulay's determinant quotient.
//!
//! Normalized so that `Res(x^a, y^b, z^c) = 1`. When the extraneous minor
//! vanishes for the given input, the forms are perturbed to
//! `f_i + s·x_i^{d_i}`; the resultant is then a polynomial in `s` of degree
//! at most `d0 d1 + d0 d2 + d1 d2`, recovered by interpolation at nonzero
//! `s` and evaluated at `s = 0`.

use std::collections::HashMap;

use super::forms::{monomial_index, monomials, num_monomials, TernaryForm};
use crate::exactalg::{AlgebraError, DensePoly, Field, Matrix};

fn reduced_index(m: [u32; 3], degs: [usize; 3]) -> (usize, usize) {
    let divisible: Vec<usize> = (0..3).filter(|&i| m[i] as usize >= degs[i]).collect();
    (divisible[0], divisible.len())
}

fn macaulay_pair<K: Field>(k: &K, forms: [&TernaryForm<K::Elem>; 3]) -> (K::Elem, K::Elem) {
    let degs = [forms[0].degree(), forms[1].degree(), forms[2].degree()];
    let big = degs.iter().sum::<usize>() - 2;
    let mons = monomials(big);
    let n = num_monomials(big);
    let mut m = Matrix::zero(k, n, n);
    let mut extraneous = Vec::new();
    for (row, mono) in mons.iter().enumerate() {
        let (i, count) = reduced_index(*mono, degs);
        if count > 1 {
            extraneous.push(row);
        }
        let mut shift = *mono;
        shift[i] -= degs[i] as u32;
        for (e, c) in monomials(degs[i]).iter().zip(forms[i].coeffs()) {
            if k.is_zero(c) {
                continue;
            }
            let col = monomial_index([e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]]);
            m.set(row, col, c.clone());
        }
    }
    let mut a = Matrix::zero(k, extraneous.len(), extraneous.len());
    for (r, &i) in extraneous.iter().enumerate() {
        for (c, &j) in extraneous.iter().enumerate() {
            a.set(r, c, m.get(i, j).clone());
        }
    }
    (m.determinant(k).expect("square"), a.determinant(k).expect("square"))
}

/// `Res(f0, f1, f2)` for nonzero-degree ternary forms.
pub fn resultant<K: Field>(k: &K, forms: [&TernaryForm<K::Elem>; 3]) -> K::Elem {
    let (num, den) = macaulay_pair(k, forms);
    if let Some(r) = k.div(&num, &den) {
        return r;
    }
    let degs = [forms[0].degree(), forms[1].degree(), forms[2].degree()];
    let bound = degs[0] * degs[1] + degs[0] * degs[2] + degs[1] * degs[2];
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut s = 1i64;
    while xs.len() <= bound {
        let sv = k.from_i64(s);
        s += 1;
        let perturbed: Vec<TernaryForm<K::Elem>> = (0..3)
            .map(|i| {
                let mut e = [0u32; 3];
                e[i] = degs[i] as u32;
                let mut pure = TernaryForm::zero(k, degs[i]).into_coeffs();
                pure[monomial_index(e)] = sv.clone();
                forms[i].add(k, &TernaryForm::from_coeffs(degs[i], pure).expect("sized"))
            })
            .collect();
        let (num, den) = macaulay_pair(k, [&perturbed[0], &perturbed[1], &perturbed[2]]);
        if let Some(r) = k.div(&num, &den) {
            xs.push(sv);
            ys.push(r);
        }
        assert!(s < 10 * (bound as i64 + 10), "no admissible perturbation found");
    }
    lagrange_at_zero(k, &xs, &ys)
}

fn lagrange_at_zero<K: Field>(k: &K, xs: &[K::Elem], ys: &[K::Elem]) -> K::Elem {
    let mut acc = k.zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut num = k.one();
        let mut den = k.one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            num = k.mul(&num, &k.neg(xj));
            den = k.mul(&den, &k.sub(xi, xj));
        }
        acc = k.add(&acc, &k.mul(yi, &k.div(&num, &den).expect("distinct nodes")));
    }
    acc
}

/// `Res(∂f/∂x, ∂f/∂y, ∂f/∂z)`; vanishes exactly when `f` is singular (characteristic not dividing the degree).
pub fn gradient_resultant<K: Field>(k: &K, f: &TernaryForm<K::Elem>) -> K::Elem {
    let g: Vec<TernaryForm<K::Elem>> = (0..3).map(|i| f.partial(k, i)).collect();
    resultant(k, [&g[0], &g[1], &g[2]])
}

/// Exponent tuples of total degree `d` in `n` variables.
fn exponent_tuples(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[i] = e;
            rec(i + 1, rem - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, d, &mut vec![0; n], &mut out);
    }
    out
}

fn macaulay_pair_general<K: Field>(k: &K, forms: &[DensePoly<K::Elem>], degs: &[u32]) -> (K::Elem, K::Elem) {
    let n = forms.len();
    let big = degs.iter().sum::<u32>() + 1 - n as u32;
    let mons = exponent_tuples(n, big);
    let index: HashMap<&[u32], usize> = mons.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut m = Matrix::zero(k, mons.len(), mons.len());
    let mut extraneous = Vec::new();
    for (row, mono) in mons.iter().enumerate() {
        let divisible: Vec<usize> = (0..n).filter(|&i| mono[i] >= degs[i]).collect();
        let i = divisible[0];
        if divisible.len() > 1 {
            extraneous.push(row);
        }
        let mut shift = mono.clone();
        shift[i] -= degs[i];
        for (e, c) in forms[i].terms() {
            let col: Vec<u32> = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
            m.set(row, index[col.as_slice()], c.clone());
        }
    }
    let mut a = Matrix::zero(k, extraneous.len(), extraneous.len());
    for (r, &i) in extraneous.iter().enumerate() {
        for (c, &j) in extraneous.iter().enumerate() {
            a.set(r, c, m.get(i, j).clone());
        }
    }
    (m.determinant(k).expect("square"), a.determinant(k).expect("square"))
}

/// Resultant of `n` homogeneous forms in `n` variables, normalized so that
/// pure powers of the variables have resultant 1. A zero form gives 0.
pub fn macaulay_resultant<K: Field>(k: &K, forms: &[DensePoly<K::Elem>]) -> Result<K::Elem, AlgebraError> {
    let n = forms.len();
    let mut degs = Vec::with_capacity(n);
    for f in forms {
        if f.nvars() != n {
            return Err(AlgebraError::VariableMismatch(n, f.nvars()));
        }
        if f.is_zero() {
            return Ok(k.zero());
        }
        if !f.is_homogeneous() {
            return Err(AlgebraError::Shape("resultant needs homogeneous forms".into()));
        }
        match f.degree() {
            Some(d) if d > 0 => degs.push(d),
            _ => return Err(AlgebraError::Shape("resultant needs forms of positive degree".into())),
        }
    }
    let (num, den) = macaulay_pair_general(k, forms, &degs);
    if let Some(r) = k.div(&num, &den) {
        return Ok(r);
    }
    // Res is a polynomial of degree Σ_i Π_{j≠i} d_j in the perturbation.
    let bound: u32 = (0..n).map(|i| (0..n).filter(|&j| j != i).map(|j| degs[j]).product::<u32>()).sum();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut s = 1i64;
    while xs.len() <= bound as usize {
        let sv = k.from_i64(s);
        s += 1;
        let perturbed: Vec<DensePoly<K::Elem>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = degs[i];
                let mut f = forms[i].clone();
                f.add_term(k, e, sv.clone());
                f
            })
            .collect();
        let (num, den) = macaulay_pair_general(k, &perturbed, &degs);
        if let Some(r) = k.div(&num, &den) {
            xs.push(sv);
            ys.push(r);
        }
        assert!(s < 10 * (bound as i64 + 10), "no admissible perturbation found");
    }
    Ok(lagrange_at_zero(k, &xs, &ys))
}

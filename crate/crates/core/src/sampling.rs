//! Seeded generators for the quartic families used by the pipeline.
//!
//! Every sampler is a pure function of its seed. Item `i` of a batch is drawn
//! from `ChaCha8Rng::seed_from_u64(seed)` switched to stream `i`, so batches
//! are prefix-stable: the first `n` items do not depend on the batch size.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::covariants::resultant::macaulay_resultant;
use crate::covariants::{TernaryForm, TernaryQuartic};
use crate::exactalg::{DensePoly, Field, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SamplingError {
    #[error("{family}: no acceptable draw after {retries} attempts")]
    RetriesExhausted { family: &'static str, retries: usize },
}

/// Default bound on rerolls for samplers that validate their output.
pub const DEFAULT_RETRIES: usize = 64;

/// Generator for item `index` of the batch with the given seed.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn small<K: Field, R: Rng>(k: &K, rng: &mut R, bound: i64) -> K::Elem {
    k.from_i64(rng.gen_range(-bound..=bound))
}

fn small_nonzero<K: Field, R: Rng>(k: &K, rng: &mut R, bound: i64) -> K::Elem {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return k.from_i64(v);
        }
    }
}

/// Quartics with coefficients drawn uniformly from {-1, 0, 1}; the zero form is rerolled.
pub fn random_generic<K: Field>(k: &K, seed: u64, count: usize) -> Vec<TernaryQuartic<K::Elem>> {
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            loop {
                let coeffs: Vec<K::Elem> = (0..15).map(|_| small(k, &mut rng, 1)).collect();
                if coeffs.iter().any(|c| !k.is_zero(c)) {
                    return TernaryForm::from_coeffs(4, coeffs).expect("15 coefficients");
                }
            }
        })
        .collect()
}

/// Fifth line and coefficients of a pentalateral quartic with
/// `l1 = x, l2 = y, l3 = z, l4 = x + y + z`.
#[derive(Clone, Debug, PartialEq)]
pub struct PentalateralRecipe<E> {
    pub l5: [E; 3],
    pub c: [E; 4],
}

/// Range of the integer coefficients of the fifth line.
pub const LINE_BOUND: i64 = 9;
/// Range of the integer coefficients `c_i`.
pub const C_BOUND: i64 = 4;

fn line_form<K: Field>(k: &K, l: &[K::Elem; 3]) -> TernaryForm<K::Elem> {
    TernaryForm::linear(k, l[0].clone(), l[1].clone(), l[2].clone())
}

/// `Σ_i c'_i Π_{j≠i} l_j` with `c' = (1, c1, c2, c3, c4)` attached to
/// the omitted lines `l5, l1, l2, l3, l4`.
pub fn pentalateral_with_lines<K: Field>(k: &K, lines: &[[K::Elem; 3]; 5], c: &[K::Elem; 4]) -> TernaryQuartic<K::Elem> {
    let forms: Vec<TernaryForm<K::Elem>> = lines.iter().map(|l| line_form(k, l)).collect();
    let product_without = |skip: usize| {
        (0..5)
            .filter(|&j| j != skip)
            .fold(TernaryForm::from_terms(k, 0, &[([0, 0, 0], 1)]), |acc, j| acc.mul(k, &forms[j]))
    };
    let mut f = product_without(4);
    for (i, ci) in c.iter().enumerate() {
        if !k.is_zero(ci) {
            f = f.add(k, &product_without(i).scale(k, ci));
        }
    }
    f
}

fn standard_lines<K: Field>(k: &K, l4: [i64; 3], l5: &[K::Elem; 3]) -> [[K::Elem; 3]; 5] {
    let e = |v: [i64; 3]| v.map(|x| k.from_i64(x));
    [e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1]), e(l4), l5.clone()]
}

/// `l1 l2 l3 l4 + c1 l2 l3 l4 l5 + c2 l1 l3 l4 l5 + c3 l1 l2 l4 l5 + c4 l1 l2 l3 l5`.
pub fn pentalateral<K: Field>(k: &K, recipe: &PentalateralRecipe<K::Elem>) -> TernaryQuartic<K::Elem> {
    pentalateral_with_lines(k, &standard_lines(k, [1, 1, 1], &recipe.l5), &recipe.c)
}

fn proportional<K: Field>(k: &K, a: &[K::Elem; 3], b: &[K::Elem; 3]) -> bool {
    (0..3).all(|i| {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        k.is_zero(&k.sub(&k.mul(&a[j], &b[l]), &k.mul(&a[l], &b[j])))
    })
}

fn draw_line<K: Field, R: Rng>(k: &K, rng: &mut R, avoid: &[[K::Elem; 3]]) -> [K::Elem; 3] {
    loop {
        let l: [K::Elem; 3] = std::array::from_fn(|_| small(k, rng, LINE_BOUND));
        if l.iter().all(|x| k.is_zero(x)) || avoid.iter().any(|a| proportional(k, a, &l)) {
            continue;
        }
        return l;
    }
}

/// Fifth line with integer entries in `[-9, 9]` distinct from the first
/// four lines; `c_i` nonzero integers in `[-4, 4]`.
pub fn random_pentalateral_recipe<K: Field, R: Rng>(k: &K, rng: &mut R) -> PentalateralRecipe<K::Elem> {
    let fixed = standard_lines(k, [1, 1, 1], &[k.zero(), k.zero(), k.zero()]);
    let l5 = draw_line(k, rng, &fixed[..4]);
    let c = std::array::from_fn(|_| small_nonzero(k, rng, C_BOUND));
    PentalateralRecipe { l5, c }
}

/// A batch of random pentalateral (Luroth) quartics.
pub fn random_luroth<K: Field>(k: &K, seed: u64, count: usize) -> Vec<TernaryQuartic<K::Elem>> {
    (0..count)
        .map(|i| pentalateral(k, &random_pentalateral_recipe(k, &mut rng_for(seed, i as u64))))
        .collect()
}

/// A pentalateral quartic with `l4 = x + y`, so `l1, l2, l4` meet at (0:0:1).
/// The fifth line is rerolled if it repeats a line or passes through (0:0:1).
pub fn l2_quartic<K: Field>(k: &K, seed: u64) -> TernaryQuartic<K::Elem> {
    l2_from_rng(k, &mut rng_for(seed, 0))
}

fn l2_from_rng<K: Field, R: Rng>(k: &K, rng: &mut R) -> TernaryQuartic<K::Elem> {
    let zero = [k.zero(), k.zero(), k.zero()];
    let fixed = standard_lines(k, [1, 1, 0], &zero);
    let l5 = loop {
        let l = draw_line(k, rng, &fixed[..4]);
        if !k.is_zero(&l[2]) {
            break l;
        }
    };
    let c: [K::Elem; 4] = std::array::from_fn(|_| small_nonzero(k, rng, C_BOUND));
    pentalateral_with_lines(k, &standard_lines(k, [1, 1, 0], &l5), &c)
}

pub fn l2_batch<K: Field>(k: &K, seed: u64, count: usize) -> Vec<TernaryQuartic<K::Elem>> {
    (0..count).map(|i| l2_from_rng(k, &mut rng_for(seed, i as u64))).collect()
}

/// Coefficients of `a x^4 + b x^2y^2 + c x^2z^2 + d y^4 + e y^2z^2 + f z^4`.
#[derive(Clone, Debug, PartialEq)]
pub struct CianiCoefficients<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub e: E,
    pub f: E,
}

impl<E: Clone> CianiCoefficients<E> {
    pub fn from_array(v: [E; 6]) -> Self {
        let [a, b, c, d, e, f] = v;
        CianiCoefficients { a, b, c, d, e, f }
    }

    pub fn to_array(&self) -> [E; 6] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), self.e.clone(), self.f.clone()]
    }
}

/// Exponents of the six Ciani monomials, in the order a..f.
pub const CIANI_MONOMIALS: [[u32; 3]; 6] = [[4, 0, 0], [2, 2, 0], [2, 0, 2], [0, 4, 0], [0, 2, 2], [0, 0, 4]];

pub fn ciani<K: Field>(k: &K, cc: &CianiCoefficients<K::Elem>) -> TernaryQuartic<K::Elem> {
    let mut coeffs = TernaryForm::zero(k, 4).into_coeffs();
    for (e, v) in CIANI_MONOMIALS.iter().zip(cc.to_array()) {
        coeffs[crate::covariants::forms::monomial_index(*e)] = v;
    }
    TernaryForm::from_coeffs(4, coeffs).expect("15 coefficients")
}

/// Uniform residues over a prime field; integers in `[-50, 50]` over the rationals.
pub fn random_scalar<K: Field, R: Rng>(k: &K, rng: &mut R) -> K::Elem {
    match k.modulus() {
        Some(p) => k.from_i64(rng.gen_range(0..p as i64)),
        None => small(k, rng, 50),
    }
}

pub fn random_ciani_coefficients<K: Field, R: Rng>(k: &K, rng: &mut R) -> CianiCoefficients<K::Elem> {
    CianiCoefficients::from_array(std::array::from_fn(|_| random_scalar(k, rng)))
}

fn quaternary_hessian<K: Field>(k: &K, s: &DensePoly<K::Elem>) -> DensePoly<K::Elem> {
    let second: Vec<Vec<DensePoly<K::Elem>>> = (0..4)
        .map(|i| {
            let di = s.partial(k, i).expect("4 variables");
            (0..4).map(|j| di.partial(k, j).expect("4 variables")).collect()
        })
        .collect();
    let mut det = DensePoly::zero(4);
    for perm in permutations4() {
        let mut term = DensePoly::constant(k, 4, k.one());
        for (row, &col) in perm.0.iter().enumerate() {
            term = term.mul(k, &second[row][col]).expect("4 variables");
        }
        det = if perm.1 { det.sub(k, &term) } else { det.add(k, &term) }.expect("4 variables");
    }
    det
}

/// All permutations of 0..4 with an oddness flag.
fn permutations4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|j| p[i] != p[j])) {
                        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        out.push((p, inversions % 2 == 1));
                    }
                }
            }
        }
    }
    out
}

/// The cubic surface `S = t^2 x + t q(x,y,z) + g(x,y,z)` in variables
/// `(x, y, z, t)` with `q = a x^2 + 2b xy + 2c xz + d y^2 + 2e yz + f z^2`.
pub fn remark_surface<K: Field>(k: &K, q: [K::Elem; 6], g: &TernaryForm<K::Elem>) -> DensePoly<K::Elem> {
    let two = k.from_i64(2);
    let [a, b, c, d, e, f] = q;
    let mut s = DensePoly::zero(4);
    s.add_term(k, vec![1, 0, 0, 2], k.one());
    for (exp, v) in [
        ([2, 0, 0], a),
        ([1, 1, 0], k.mul(&two, &b)),
        ([1, 0, 1], k.mul(&two, &c)),
        ([0, 2, 0], d),
        ([0, 1, 1], k.mul(&two, &e)),
        ([0, 0, 2], f),
    ] {
        s.add_term(k, vec![exp[0], exp[1], exp[2], 1], v);
    }
    for (exp, v) in crate::covariants::forms::monomials(3).iter().zip(g.coeffs()) {
        s.add_term(k, vec![exp[0], exp[1], exp[2], 0], v.clone());
    }
    s
}

/// Plane section of the Hessian surface of `S` by its tangent plane at
/// `(0:0:0:1)`, or `None` if `S` is singular, the point is not on the
/// Hessian, or the point is singular on it.
pub fn remark_section<K: Field>(k: &K, s: &DensePoly<K::Elem>) -> Option<TernaryQuartic<K::Elem>> {
    let grad: Vec<DensePoly<K::Elem>> = (0..4).map(|i| s.partial(k, i).expect("4 variables")).collect();
    if k.is_zero(&macaulay_resultant(k, &grad).ok()?) {
        return None;
    }
    let h = quaternary_hessian(k, s);
    let p = [k.zero(), k.zero(), k.zero(), k.one()];
    if !k.is_zero(&h.eval(k, &p).ok()?) {
        return None;
    }
    let normal: Vec<K::Elem> = (0..4).map(|i| h.partial(k, i).and_then(|d| d.eval(k, &p))).collect::<Result<_, _>>().ok()?;
    if normal.iter().all(|v| k.is_zero(v)) {
        return None;
    }
    let basis = Matrix::from_rows(vec![normal], 4).ok()?.right_kernel(k);
    let vars: Vec<DensePoly<K::Elem>> = (0..3).map(|i| DensePoly::var(k, 3, i)).collect();
    let subs: Vec<DensePoly<K::Elem>> = (0..4)
        .map(|coord| {
            let mut acc = DensePoly::zero(3);
            for (v, x) in basis.iter().zip(&vars) {
                acc = acc.add(k, &x.scale(k, &v[coord])).expect("3 variables");
            }
            acc
        })
        .collect();
    let section = h.compose(k, &subs).ok()?;
    let f = TernaryForm::from_poly(k, 4, &section).ok()?;
    (!f.is_zero(k)).then_some(f)
}

/// A quartic from the Hessian-surface family with `e^2 = d f`.
pub fn remark_quartic<K: Field>(k: &K, seed: u64, retries: usize) -> Result<TernaryQuartic<K::Elem>, SamplingError> {
    remark_from_rng(k, &mut rng_for(seed, 0), retries)
}

fn remark_from_rng<K: Field, R: Rng>(k: &K, rng: &mut R, retries: usize) -> Result<TernaryQuartic<K::Elem>, SamplingError> {
    for _ in 0..retries.max(1) {
        let d = random_scalar(k, rng);
        let Some(d_inv) = k.inv(&d) else { continue };
        let e = random_scalar(k, rng);
        let f = k.mul(&k.mul(&e, &e), &d_inv);
        let q = [random_scalar(k, rng), random_scalar(k, rng), random_scalar(k, rng), d, e, f];
        let g = TernaryForm::from_coeffs(3, (0..10).map(|_| random_scalar(k, rng)).collect()).expect("10 coefficients");
        if let Some(quartic) = remark_section(k, &remark_surface(k, q, &g)) {
            return Ok(quartic);
        }
    }
    Err(SamplingError::RetriesExhausted { family: "remark", retries })
}

pub fn remark_batch<K: Field>(k: &K, seed: u64, count: usize, retries: usize) -> Result<Vec<TernaryQuartic<K::Elem>>, SamplingError> {
    (0..count).map(|i| remark_from_rng(k, &mut rng_for(seed, i as u64), retries)).collect()
}

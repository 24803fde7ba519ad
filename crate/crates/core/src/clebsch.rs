//! Quartics on the component of singular Luroth quartics obtained from cubic
//! surfaces: six plane points give a cubic surface `S` through the Clebsch
//! map; two skew lines `l, m` on `S` give tangent-chord maps `f: l -> m` and
//! `g: m -> l`; a degree-2 map `f'` ramified at the branch divisor of `g`
//! shares a fiber with `f`; the corresponding point `Q` of `m` is the centre
//! of a projection `S -> P^2` whose ramification locus is the output quartic.

use rand::Rng;

use crate::covariants::forms::{monomial_index, monomials};
use crate::covariants::{TernaryForm, TernaryQuartic};
use crate::exactalg::{DensePoly, Field, Matrix};
use crate::sampling::{random_scalar, rng_for};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClebschError {
    #[error("points not sufficiently general: {0}")]
    NotGeneral(&'static str),
    #[error("degenerate degree-2 map: {0}")]
    DegenerateMap(&'static str),
    #[error("branch divisor is a perfect square")]
    PerfectSquare,
    #[error("no common fiber: kernel dimension {0}")]
    CommonFiber(usize),
    #[error("singular center")]
    SingularCenter,
    #[error("retries exhausted after {retries} attempts; last failing stage: {stage}")]
    RetriesExhausted { stage: String, retries: usize },
}

/// `r x^2 + s xy + t y^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryQuadratic<E> {
    pub r: E,
    pub s: E,
    pub t: E,
}

impl<E: Clone + PartialEq> BinaryQuadratic<E> {
    pub fn new(r: E, s: E, t: E) -> Self {
        BinaryQuadratic { r, s, t }
    }

    pub fn is_zero<K: Field<Elem = E>>(&self, k: &K) -> bool {
        k.is_zero(&self.r) && k.is_zero(&self.s) && k.is_zero(&self.t)
    }

    pub fn eval<K: Field<Elem = E>>(&self, k: &K, x: &E, y: &E) -> E {
        let xx = k.mul(&k.mul(&self.r, x), x);
        let xy = k.mul(&k.mul(&self.s, x), y);
        let yy = k.mul(&k.mul(&self.t, y), y);
        k.add(&k.add(&xx, &xy), &yy)
    }

    /// Coefficients from the values at (1,0), (0,1), (1,1).
    fn from_values<K: Field<Elem = E>>(k: &K, at10: E, at01: E, at11: E) -> Self {
        let s = k.sub(&k.sub(&at11, &at10), &at01);
        BinaryQuadratic { r: at10, s, t: at01 }
    }

    /// `s^2 - 4 r t`.
    pub fn discriminant<K: Field<Elem = E>>(&self, k: &K) -> E {
        k.sub(&k.mul(&self.s, &self.s), &k.mul(&k.from_i64(4), &k.mul(&self.r, &self.t)))
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn normalized<K: Field<Elem = E>>(&self, k: &K) -> Self {
        let lead = [&self.r, &self.s, &self.t].into_iter().find(|c| !k.is_zero(c)).cloned();
        match lead.and_then(|c| k.inv(&c)) {
            Some(i) => BinaryQuadratic { r: k.mul(&self.r, &i), s: k.mul(&self.s, &i), t: k.mul(&self.t, &i) },
            None => self.clone(),
        }
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        BinaryQuadratic { r: k.mul(&self.r, c), s: k.mul(&self.s, c), t: k.mul(&self.t, c) }
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, o: &Self) -> Self {
        BinaryQuadratic { r: k.sub(&self.r, &o.r), s: k.sub(&self.s, &o.s), t: k.sub(&self.t, &o.t) }
    }
}

/// `(x:y) -> (f1(x,y) : f2(x,y))`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeTwoMap<E> {
    pub f1: BinaryQuadratic<E>,
    pub f2: BinaryQuadratic<E>,
}

impl<E: Clone + PartialEq> DegreeTwoMap<E> {
    /// Resultant of `f1` and `f2`; zero iff they share a root.
    pub fn resultant<K: Field<Elem = E>>(&self, k: &K) -> E {
        let (a1, b1, c1) = (&self.f1.r, &self.f1.s, &self.f1.t);
        let (a2, b2, c2) = (&self.f2.r, &self.f2.s, &self.f2.t);
        let ac = k.sub(&k.mul(a1, c2), &k.mul(a2, c1));
        let ab = k.sub(&k.mul(a1, b2), &k.mul(a2, b1));
        let bc = k.sub(&k.mul(b1, c2), &k.mul(b2, c1));
        k.sub(&k.mul(&ac, &ac), &k.mul(&ab, &bc))
    }

    pub fn is_degenerate<K: Field<Elem = E>>(&self, k: &K) -> bool {
        k.is_zero(&self.resultant(k))
    }

    /// `f1_x f2_y - f1_y f2_x`, the ramification divisor.
    pub fn jacobian<K: Field<Elem = E>>(&self, k: &K) -> BinaryQuadratic<E> {
        // derivatives of r x^2 + s xy + t y^2: (2r x + s y, s x + 2t y)
        let two = k.from_i64(2);
        let (a1, b1, c1) = (&self.f1.r, &self.f1.s, &self.f1.t);
        let (a2, b2, c2) = (&self.f2.r, &self.f2.s, &self.f2.t);
        // (2a1 x + b1 y)(b2 x + 2c2 y) - (b1 x + 2c1 y)(2a2 x + b2 y)
        let r = k.sub(&k.mul(&k.mul(&two, a1), b2), &k.mul(&k.mul(&two, a2), b1));
        let s = k.mul(&k.from_i64(4), &k.sub(&k.mul(a1, c2), &k.mul(a2, c1)));
        let t = k.sub(&k.mul(&k.mul(&two, b1), c2), &k.mul(&k.mul(&two, b2), c1));
        BinaryQuadratic { r, s, t }
    }
}

/// A line in P^3 with two spanning points and two defining linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct LineInP3<E> {
    pub points: [[E; 4]; 2],
    pub equations: [[E; 4]; 2],
}

/// A cubic form in `(w, x, y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternaryCubic<E> {
    coeffs: Vec<E>,
}

/// Exponents of the 20 cubic monomials in `(w, x, y, z)`, graded lexicographic.
pub fn quaternary_cubic_monomials() -> Vec<[u32; 4]> {
    let mut out = Vec::with_capacity(20);
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            for c in (0..=3 - a - b).rev() {
                out.push([a, b, c, 3 - a - b - c]);
            }
        }
    }
    out
}

impl<E: Clone + PartialEq> QuaternaryCubic<E> {
    pub fn from_coeffs(coeffs: Vec<E>) -> Option<Self> {
        (coeffs.len() == 20).then_some(QuaternaryCubic { coeffs })
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn to_poly<K: Field<Elem = E>>(&self, k: &K) -> DensePoly<E> {
        DensePoly::from_terms(k, 4, quaternary_cubic_monomials().into_iter().map(|e| e.to_vec()).zip(self.coeffs.iter().cloned()))
            .expect("4 variables")
    }

    pub fn eval<K: Field<Elem = E>>(&self, k: &K, p: &[E; 4]) -> E {
        quaternary_cubic_monomials().iter().zip(&self.coeffs).fold(k.zero(), |acc, (e, c)| {
            let m = (0..4).fold(c.clone(), |m, i| k.mul(&m, &k.pow(&p[i], e[i] as u64)));
            k.add(&acc, &m)
        })
    }

    pub fn gradient_at<K: Field<Elem = E>>(&self, k: &K, p: &[E; 4]) -> [E; 4] {
        let mut g: [E; 4] = std::array::from_fn(|_| k.zero());
        for (e, c) in quaternary_cubic_monomials().iter().zip(&self.coeffs) {
            if k.is_zero(c) {
                continue;
            }
            for (i, gi) in g.iter_mut().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let mut m = k.mul(c, &k.from_i64(e[i] as i64));
                for j in 0..4 {
                    let d = if j == i { e[j] - 1 } else { e[j] };
                    m = k.mul(&m, &k.pow(&p[j], d as u64));
                }
                *gi = k.add(gi, &m);
            }
        }
        g
    }
}

fn eval_cubic_at<K: Field>(k: &K, point: &[K::Elem; 3]) -> Vec<K::Elem> {
    monomials(3)
        .iter()
        .map(|e| (0..3).fold(k.one(), |acc, i| k.mul(&acc, &k.pow(&point[i], e[i] as u64))))
        .collect()
}

/// Basis of the plane cubics through six points.
pub fn cubic_system<K: Field>(k: &K, points: &[[K::Elem; 3]; 6]) -> Result<[TernaryForm<K::Elem>; 4], ClebschError> {
    let rows: Vec<Vec<K::Elem>> = points.iter().map(|p| eval_cubic_at(k, p)).collect();
    let kernel = Matrix::from_rows(rows, 10).expect("10 columns").right_kernel(k);
    if kernel.len() != 4 {
        return Err(ClebschError::NotGeneral("cubic system does not have dimension 4"));
    }
    let mut it = kernel.into_iter().map(|v| TernaryForm::from_coeffs(3, v).expect("10 coefficients"));
    Ok(std::array::from_fn(|_| it.next().unwrap()))
}

/// The cubic `F` with `F(c1, c2, c3, c4) = 0`, first nonzero coefficient 1.
pub fn surface_equation<K: Field>(k: &K, cubics: &[TernaryForm<K::Elem>; 4]) -> Result<QuaternaryCubic<K::Elem>, ClebschError> {
    let mons = quaternary_cubic_monomials();
    let columns: Vec<Vec<K::Elem>> = mons
        .iter()
        .map(|e| {
            let mut f = TernaryForm::from_terms(k, 0, &[([0, 0, 0], 1)]);
            for (i, c) in cubics.iter().enumerate() {
                for _ in 0..e[i] {
                    f = f.mul(k, c);
                }
            }
            f.into_coeffs()
        })
        .collect();
    let m = Matrix::from_rows(columns, 55).expect("55 coefficients").transpose();
    let kernel = m.right_kernel(k);
    if kernel.len() != 1 {
        return Err(ClebschError::NotGeneral("image is not a single cubic surface"));
    }
    let mut v = kernel.into_iter().next().unwrap();
    let lead = v.iter().find(|x| !k.is_zero(x)).cloned().expect("nonzero kernel vector");
    k.scale_slice(&mut v, &k.inv(&lead).expect("nonzero"));
    Ok(QuaternaryCubic { coeffs: v })
}

fn clebsch_image<K: Field>(k: &K, cubics: &[TernaryForm<K::Elem>; 4], p: &[K::Elem; 3]) -> [K::Elem; 4] {
    std::array::from_fn(|i| cubics[i].eval(k, p))
}

fn independent<K: Field>(k: &K, rows: Vec<Vec<K::Elem>>) -> bool {
    let n = rows.len();
    Matrix::from_rows(rows, 4).expect("4 columns").rank(k) == n
}

/// The image under the Clebsch map of the plane line through `p` and `q`,
/// spanned by the images of `p + q` and `p + 2q`.
pub fn line_on_surface<K: Field>(
    k: &K,
    cubics: &[TernaryForm<K::Elem>; 4],
    surface: &QuaternaryCubic<K::Elem>,
    p: &[K::Elem; 3],
    q: &[K::Elem; 3],
) -> Result<LineInP3<K::Elem>, ClebschError> {
    let two = k.from_i64(2);
    let a: [K::Elem; 3] = std::array::from_fn(|i| k.add(&p[i], &q[i]));
    let b: [K::Elem; 3] = std::array::from_fn(|i| k.add(&p[i], &k.mul(&two, &q[i])));
    let l1 = clebsch_image(k, cubics, &a);
    let l2 = clebsch_image(k, cubics, &b);
    if !independent(k, vec![l1.to_vec(), l2.to_vec()]) {
        return Err(ClebschError::NotGeneral("line images coincide"));
    }
    // a binary cubic vanishing at four points of P^1 is zero
    for (x, y) in [(1, 0), (0, 1), (1, 1), (1, 2)] {
        let pt: [K::Elem; 4] = std::array::from_fn(|i| k.add(&k.mul(&k.from_i64(x), &l1[i]), &k.mul(&k.from_i64(y), &l2[i])));
        if !k.is_zero(&surface.eval(k, &pt)) {
            return Err(ClebschError::NotGeneral("line image not on the surface"));
        }
    }
    let eqs = Matrix::from_rows(vec![l1.to_vec(), l2.to_vec()], 4).expect("4 columns").right_kernel(k);
    let to4 = |v: &Vec<K::Elem>| -> [K::Elem; 4] { std::array::from_fn(|i| v[i].clone()) };
    Ok(LineInP3 { points: [l1, l2], equations: [to4(&eqs[0]), to4(&eqs[1])] })
}

fn dot4<K: Field>(k: &K, a: &[K::Elem; 4], b: &[K::Elem; 4]) -> K::Elem {
    (0..4).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&a[i], &b[i])))
}

fn combine<K: Field>(k: &K, x: &K::Elem, a: &[K::Elem; 4], y: &K::Elem, b: &[K::Elem; 4]) -> [K::Elem; 4] {
    std::array::from_fn(|i| k.add(&k.mul(x, &a[i]), &k.mul(y, &b[i])))
}

/// Skew lines: their four spanning points are independent.
pub fn are_skew<K: Field>(k: &K, l: &LineInP3<K::Elem>, m: &LineInP3<K::Elem>) -> bool {
    independent(k, [&l.points[0], &l.points[1], &m.points[0], &m.points[1]].iter().map(|p| p.to_vec()).collect())
}

/// `p = x l1 + y l2 -> f1 m1 + f2 m2 ∈ T_p S ∩ m`, with
/// `f1 = -∇F(p)·m2` and `f2 = ∇F(p)·m1`.
pub fn tangent_chord<K: Field>(
    k: &K,
    surface: &QuaternaryCubic<K::Elem>,
    domain: &LineInP3<K::Elem>,
    target: &LineInP3<K::Elem>,
) -> Result<DegreeTwoMap<K::Elem>, ClebschError> {
    let [l1, l2] = &domain.points;
    let [m1, m2] = &target.points;
    let values = |x: i64, y: i64| {
        let p = combine(k, &k.from_i64(x), l1, &k.from_i64(y), l2);
        let g = surface.gradient_at(k, &p);
        (k.neg(&dot4(k, &g, m2)), dot4(k, &g, m1))
    };
    let (a10, b10) = values(1, 0);
    let (a01, b01) = values(0, 1);
    let (a11, b11) = values(1, 1);
    let map = DegreeTwoMap {
        f1: BinaryQuadratic::from_values(k, a10, a01, a11),
        f2: BinaryQuadratic::from_values(k, b10, b01, b11),
    };
    if map.is_degenerate(k) {
        return Err(ClebschError::DegenerateMap("tangent-chord map has a base point"));
    }
    Ok(map)
}

/// Discriminant of `λ2 g1 - λ1 g2` in `(x, y)`, as a binary quadratic in
/// `(λ1, λ2)`, first nonzero coefficient 1.
pub fn branch_divisor<K: Field>(k: &K, g: &DegreeTwoMap<K::Elem>) -> Result<BinaryQuadratic<K::Elem>, ClebschError> {
    let (a1, b1, c1) = (&g.f1.r, &g.f1.s, &g.f1.t);
    let (a2, b2, c2) = (&g.f2.r, &g.f2.s, &g.f2.t);
    let four = k.from_i64(4);
    let r = k.sub(&k.mul(b2, b2), &k.mul(&four, &k.mul(a2, c2)));
    let s = k.add(
        &k.mul(&k.from_i64(-2), &k.mul(b1, b2)),
        &k.mul(&four, &k.add(&k.mul(a1, c2), &k.mul(a2, c1))),
    );
    let t = k.sub(&k.mul(b1, b1), &k.mul(&four, &k.mul(a1, c1)));
    let d = BinaryQuadratic { r, s, t };
    if d.is_zero(k) || g.is_degenerate(k) {
        return Err(ClebschError::DegenerateMap("branch divisor vanishes identically"));
    }
    Ok(d.normalized(k))
}

/// A degree-2 map defined over the ground field and ramified exactly at `D`.
///
/// Split `D` uses `((y1 x - x1 y)^2 : (y2 x - x2 y)^2)`; otherwise for `s = 0`
/// `(r x^2 - 2t xy - t y^2 : r x^2 + 2t xy - t y^2)`, and for `s ≠ 0`
/// `(r^2 s x^2 + 2r(s^2 - 2rt) xy + (s^3 - 3rst) y^2 : r(rs x^2 + 4rt xy + st y^2))`.
pub fn fprime<K: Field>(k: &K, d: &BinaryQuadratic<K::Elem>) -> Result<DegreeTwoMap<K::Elem>, ClebschError> {
    let BinaryQuadratic { r, s, t } = d;
    let disc = d.discriminant(k);
    if k.is_zero(&disc) {
        return Err(ClebschError::PerfectSquare);
    }
    let square = |x: &K::Elem, y: &K::Elem| {
        // (y0 x - x0 y)^2 = y0^2 x^2 - 2 x0 y0 xy + x0^2 y^2
        BinaryQuadratic { r: k.mul(y, y), s: k.mul(&k.from_i64(-2), &k.mul(x, y)), t: k.mul(x, x) }
    };
    if let Some(root) = k.sqrt(&disc) {
        let roots = if k.is_zero(r) {
            [(k.neg(t), s.clone()), (k.one(), k.zero())]
        } else {
            let two_r = k.add(r, r);
            [(k.sub(&root, s), two_r.clone()), (k.sub(&k.neg(s), &root), two_r)]
        };
        return Ok(DegreeTwoMap { f1: square(&roots[0].0, &roots[0].1), f2: square(&roots[1].0, &roots[1].1) });
    }
    let two = k.from_i64(2);
    if k.is_zero(s) {
        let two_t = k.mul(&two, t);
        return Ok(DegreeTwoMap {
            f1: BinaryQuadratic { r: r.clone(), s: k.neg(&two_t), t: k.neg(t) },
            f2: BinaryQuadratic { r: r.clone(), s: two_t, t: k.neg(t) },
        });
    }
    let rs = k.mul(r, s);
    let rt = k.mul(r, t);
    let f1 = BinaryQuadratic {
        r: k.mul(r, &rs),
        s: k.mul(&k.mul(&two, r), &k.sub(&k.mul(s, s), &k.mul(&two, &rt))),
        t: k.sub(&k.pow(s, 3), &k.mul(&k.from_i64(3), &k.mul(&rs, t))),
    };
    let f2 = BinaryQuadratic { r: k.mul(r, &rs), s: k.mul(&k.from_i64(4), &k.mul(r, &rt)), t: k.mul(&rs, t) };
    Ok(DegreeTwoMap { f1, f2 })
}

/// The 3×4 matrix whose kernel vectors `(λ2, λ1, λ'2, λ'1)` satisfy
/// `λ2 f1 - λ1 f2 = λ'2 f'1 - λ'1 f'2`.
pub fn common_fiber_matrix<K: Field>(k: &K, f: &DegreeTwoMap<K::Elem>, fp: &DegreeTwoMap<K::Elem>) -> Matrix<K::Elem> {
    let row = |a1: &K::Elem, a2: &K::Elem, b1: &K::Elem, b2: &K::Elem| vec![a1.clone(), k.neg(a2), k.neg(b1), b2.clone()];
    Matrix::from_rows(
        vec![
            row(&f.f1.r, &f.f2.r, &fp.f1.r, &fp.f2.r),
            row(&f.f1.s, &f.f2.s, &fp.f1.s, &fp.f2.s),
            row(&f.f1.t, &f.f2.t, &fp.f1.t, &fp.f2.t),
        ],
        4,
    )
    .expect("4 columns")
}

/// Points `q = (λ1:λ2)` and `q' = (λ'1:λ'2)` whose fibers under `f` and `fp` agree.
#[allow(clippy::type_complexity)]
pub fn common_fiber<K: Field>(
    k: &K,
    f: &DegreeTwoMap<K::Elem>,
    fp: &DegreeTwoMap<K::Elem>,
) -> Result<([K::Elem; 2], [K::Elem; 2]), ClebschError> {
    if f.is_degenerate(k) || fp.is_degenerate(k) {
        return Err(ClebschError::DegenerateMap("common fiber of a degenerate map"));
    }
    let kernel = common_fiber_matrix(k, f, fp).right_kernel(k);
    if kernel.len() != 1 {
        return Err(ClebschError::CommonFiber(kernel.len()));
    }
    let v = &kernel[0];
    Ok(([v[1].clone(), v[0].clone()], [v[3].clone(), v[2].clone()]))
}

/// Ramification quartic of the projection of `S` from `Q`.
pub fn project_from_point<K: Field>(k: &K, surface: &QuaternaryCubic<K::Elem>, q: &[K::Elem; 4]) -> Result<TernaryQuartic<K::Elem>, ClebschError> {
    if !k.is_zero(&surface.eval(k, q)) {
        return Err(ClebschError::NotGeneral("center not on the surface"));
    }
    if surface.gradient_at(k, q).iter().all(|g| k.is_zero(g)) {
        return Err(ClebschError::SingularCenter);
    }
    // columns: Q, then standard basis vectors keeping the matrix invertible
    let mut columns = vec![q.to_vec()];
    for i in 0..4 {
        let mut e = vec![k.zero(); 4];
        e[i] = k.one();
        let mut trial = columns.clone();
        trial.push(e);
        if independent(k, trial.clone()) {
            columns = trial;
        }
        if columns.len() == 4 {
            break;
        }
    }
    let vars: Vec<DensePoly<K::Elem>> = (0..4).map(|i| DensePoly::var(k, 4, i)).collect();
    let subs: Vec<DensePoly<K::Elem>> = (0..4)
        .map(|row| {
            (0..4).fold(DensePoly::zero(4), |acc, col| acc.add(k, &vars[col].scale(k, &columns[col][row])).expect("4 variables"))
        })
        .collect();
    let moved = surface.to_poly(k).compose(k, &subs).expect("4 variables");
    // moved = w^2 F1 + w F2 + F3 in (x, y, z)
    let mut parts: [TernaryForm<K::Elem>; 3] = std::array::from_fn(|i| TernaryForm::zero(k, i + 1));
    for (e, c) in moved.terms() {
        if e[0] == 3 {
            continue;
        }
        let part = &mut parts[2 - e[0] as usize];
        let mut coeffs = part.coeffs().to_vec();
        coeffs[monomial_index([e[1], e[2], e[3]])] = c.clone();
        *part = TernaryForm::from_coeffs(part.degree(), coeffs).expect("sized");
    }
    let [f1, f2, f3] = parts;
    Ok(f2.mul(k, &f2).sub(k, &f1.mul(k, &f3).scale(k, &k.from_i64(4))))
}

/// One accepted sample with its provenance.
#[derive(Clone, Debug)]
pub struct L1Sample<E> {
    pub quartic: TernaryQuartic<E>,
    pub points: [[E; 3]; 6],
    /// Attempts used, starting at 1.
    pub attempts: usize,
    /// Whether the roles of the two lines were exchanged.
    pub swapped: bool,
}

fn random_points<K: Field, R: Rng>(k: &K, rng: &mut R) -> [[K::Elem; 3]; 6] {
    std::array::from_fn(|_| std::array::from_fn(|_| random_scalar(k, rng)))
}

/// The quartic attached to six points, using lines `l = c(p1 p2)` and
/// `m = c(p1 p3)`, or with the roles of `l` and `m` exchanged.
pub fn l1_from_points<K: Field>(k: &K, points: &[[K::Elem; 3]; 6], swap: bool) -> Result<TernaryQuartic<K::Elem>, ClebschError> {
    let cubics = cubic_system(k, points)?;
    let surface = surface_equation(k, &cubics)?;
    let mut l = line_on_surface(k, &cubics, &surface, &points[0], &points[1])?;
    let mut m = line_on_surface(k, &cubics, &surface, &points[0], &points[2])?;
    if !are_skew(k, &l, &m) {
        return Err(ClebschError::NotGeneral("lines are not skew"));
    }
    if swap {
        std::mem::swap(&mut l, &mut m);
    }
    let f = tangent_chord(k, &surface, &l, &m)?;
    let g = tangent_chord(k, &surface, &m, &l)?;
    let d = branch_divisor(k, &g)?;
    let fp = fprime(k, &d)?;
    let (q, _) = common_fiber(k, &f, &fp)?;
    let center = combine(k, &q[0], &m.points[0], &q[1], &m.points[1]);
    project_from_point(k, &surface, &center)
}

/// Draws six points per attempt from stream `(index << 16) | attempt` and
/// returns the first quartic accepted by `validate`; each attempt also tries
/// the swapped line roles before moving on.
pub fn generate_l1<K: Field>(
    k: &K,
    seed: u64,
    index: u64,
    retries: usize,
    validate: &dyn Fn(&TernaryQuartic<K::Elem>) -> bool,
) -> Result<L1Sample<K::Elem>, ClebschError> {
    assert!(retries < 1 << 16, "at most 65535 retries");
    let mut stage = String::from("none");
    for attempt in 0..retries.max(1) {
        let mut rng = rng_for(seed, (index << 16) | attempt as u64);
        let points = random_points(k, &mut rng);
        for swapped in [false, true] {
            match l1_from_points(k, &points, swapped) {
                Ok(quartic) if validate(&quartic) => {
                    return Ok(L1Sample { quartic, points, attempts: attempt + 1, swapped })
                }
                Ok(_) => stage = "validation".into(),
                Err(e) => stage = e.to_string(),
            }
        }
    }
    Err(ClebschError::RetriesExhausted { stage, retries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    fn fp() -> PrimeField {
        PrimeField::new(2017).unwrap()
    }

    fn bq(k: &PrimeField, r: i64, s: i64, t: i64) -> BinaryQuadratic<u64> {
        BinaryQuadratic::new(k.from_i64(r), k.from_i64(s), k.from_i64(t))
    }

    fn random_six(k: &PrimeField, seed: u64) -> [[u64; 3]; 6] {
        random_points(k, &mut rng_for(seed, 0))
    }

    #[test]
    fn cubic_system_vanishes_at_points() {
        let k = fp();
        let pts = random_six(&k, 1);
        let cubics = cubic_system(&k, &pts).unwrap();
        for c in &cubics {
            for p in &pts {
                assert_eq!(c.eval(&k, p), 0);
            }
        }
        let mut dup = pts;
        dup[1] = dup[0];
        assert_eq!(cubic_system(&k, &dup).unwrap_err(), ClebschError::NotGeneral("cubic system does not have dimension 4"));
    }

    #[test]
    fn surface_contains_clebsch_image() {
        let k = fp();
        let pts = random_six(&k, 2);
        let cubics = cubic_system(&k, &pts).unwrap();
        let s = surface_equation(&k, &cubics).unwrap();
        let comps: Vec<DensePoly<u64>> = cubics.iter().map(|c| c.to_poly(&k)).collect();
        assert!(s.to_poly(&k).compose(&k, &comps).unwrap().is_zero());
        assert_eq!(*s.coeffs().iter().find(|c| **c != 0).unwrap(), 1);
    }

    #[test]
    fn lines_are_skew_and_tangent_chord_identities_hold() {
        let k = fp();
        let pts = random_six(&k, 3);
        let cubics = cubic_system(&k, &pts).unwrap();
        let s = surface_equation(&k, &cubics).unwrap();
        let l = line_on_surface(&k, &cubics, &s, &pts[0], &pts[1]).unwrap();
        let m = line_on_surface(&k, &cubics, &s, &pts[0], &pts[2]).unwrap();
        assert!(are_skew(&k, &l, &m));
        for eq in &l.equations {
            for p in &l.points {
                assert_eq!(dot4(&k, eq, p), 0);
            }
        }
        let f = tangent_chord(&k, &s, &l, &m).unwrap();
        for (x, y) in [(1i64, 0i64), (0, 1), (3, 5), (7, -2)] {
            let (x, y) = (k.from_i64(x), k.from_i64(y));
            let p = combine(&k, &x, &l.points[0], &y, &l.points[1]);
            let img = combine(&k, &f.f1.eval(&k, &x, &y), &m.points[0], &f.f2.eval(&k, &x, &y), &m.points[1]);
            for eq in &m.equations {
                assert_eq!(dot4(&k, eq, &img), 0);
            }
            assert_eq!(dot4(&k, &s.gradient_at(&k, &p), &img), 0);
        }
    }

    #[test]
    fn branch_divisor_of_squaring_map() {
        let k = fp();
        let g = DegreeTwoMap { f1: bq(&k, 1, 0, 0), f2: bq(&k, 0, 0, 1) };
        assert_eq!(branch_divisor(&k, &g).unwrap(), bq(&k, 0, 1, 0));
        let bad = DegreeTwoMap { f1: bq(&k, 1, 0, 0), f2: bq(&k, 1, 1, 0) };
        assert!(branch_divisor(&k, &bad).is_err());
    }

    #[test]
    fn fprime_split_and_invariant_forms() {
        let k = fp();
        // x^2 - y^2: split roots (1:1), (1:-1) in some order
        let f = fprime(&k, &bq(&k, 1, 0, -1)).unwrap();
        let (f1, f2) = (f.f1.normalized(&k), f.f2.normalized(&k));
        let a = bq(&k, 1, -2, 1);
        let b = bq(&k, 1, 2, 1);
        assert!((f1 == a && f2 == b) || (f1 == b && f2 == a));
        // xy -> (x^2 : y^2) up to order
        let f = fprime(&k, &bq(&k, 0, 1, 0)).unwrap();
        assert_eq!(f.f1.normalized(&k), bq(&k, 1, 0, 0));
        assert_eq!(f.f2.normalized(&k), bq(&k, 0, 0, 1));
        assert!(fprime(&k, &bq(&k, 1, 2, 1)).is_err());
    }

    #[test]
    fn fprime_s_zero_formula_over_rationals() {
        // x^2 - y^2 has rational roots; x^2 + y^2 does not and uses the s = 0 form
        let q = Rationals;
        let d = BinaryQuadratic::new(q.one(), q.zero(), q.one());
        let f = fprime(&q, &d).unwrap();
        assert_eq!(f.f1, BinaryQuadratic::new(q.one(), q.from_i64(-2), q.from_i64(-1)));
        assert_eq!(f.f2, BinaryQuadratic::new(q.one(), q.from_i64(2), q.from_i64(-1)));
        assert_eq!(f.jacobian(&q).normalized(&q), d);
    }

    #[test]
    fn fprime_ramifies_at_d() {
        let k = fp();
        let mut checked_nonsplit = 0;
        let cases = (0..40).map(|i| (i % 5, (i * 7) % 11, (i * 3 + 1) % 13)).chain([(1, 1, 0), (0, 1, 3)]);
        for (r, s, t) in cases {
            if bq(&k, r, s, t).discriminant(&k) == 0 {
                continue;
            }
            let d = bq(&k, r, s, t).normalized(&k);
            let f = fprime(&k, &d).unwrap();
            assert_eq!(f.jacobian(&k).normalized(&k), d);
            if k.sqrt(&d.discriminant(&k)).is_none() {
                checked_nonsplit += 1;
            }
        }
        assert!(checked_nonsplit >= 2);
    }

    #[test]
    fn common_fiber_identity_and_substitution() {
        let k = fp();
        let f = DegreeTwoMap { f1: bq(&k, 1, 2, 3), f2: bq(&k, 4, 0, 7) };
        let m = common_fiber_matrix(&k, &f, &f);
        assert!(m.mul_vec(&k, &[1, 1, 1, 1]).unwrap().iter().all(|&x| x == 0));
        assert_eq!(common_fiber(&k, &f, &f).unwrap_err(), ClebschError::CommonFiber(2));
        let g = DegreeTwoMap { f1: bq(&k, 2, 5, 1), f2: bq(&k, 1, 1, 9) };
        let (q, qp) = common_fiber(&k, &f, &g).unwrap();
        let lhs = f.f1.scale(&k, &q[1]).sub(&k, &f.f2.scale(&k, &q[0]));
        let rhs = g.f1.scale(&k, &qp[1]).sub(&k, &g.f2.scale(&k, &qp[0]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_example() {
        let k = fp();
        // F = w^2 x + x z^2
        let mut coeffs = vec![0u64; 20];
        let mons = quaternary_cubic_monomials();
        coeffs[mons.iter().position(|e| *e == [2, 1, 0, 0]).unwrap()] = 1;
        coeffs[mons.iter().position(|e| *e == [0, 1, 0, 2]).unwrap()] = 1;
        let s = QuaternaryCubic::from_coeffs(coeffs).unwrap();
        let quartic = project_from_point(&k, &s, &[1, 0, 0, 0]).unwrap();
        assert_eq!(quartic, TernaryForm::from_terms(&k, 4, &[([2, 0, 2], -4)]));
        assert_eq!(project_from_point(&k, &s, &[0, 0, 1, 0]).unwrap_err(), ClebschError::SingularCenter);
    }

    #[test]
    fn generation_is_deterministic() {
        let k = fp();
        let a = generate_l1(&k, 5, 0, 8, &|_| true).unwrap();
        let b = generate_l1(&k, 5, 0, 8, &|_| true).unwrap();
        assert_eq!(a.quartic, b.quartic);
        assert_eq!(a.points, b.points);
    }
}

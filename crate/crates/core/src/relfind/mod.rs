//! Relations among the generators by evaluation and linear algebra.
//!
//! Monomials of a fixed weighted degree are evaluated at a batch of quartics;
//! the right kernel of the resulting matrix (rows = quartics, columns =
//! monomials) holds every relation that vanishes on the batch. Comparing the
//! kernel of a generic batch with the kernel of a batch drawn from a special
//! family isolates the invariants vanishing on that family.

pub mod ciani;
pub mod expression;
pub mod monomials;
pub mod multimodular;

use rayon::prelude::*;

pub use expression::{evaluate_expression, ExpressionEvaluator, InvariantExpression};
pub use monomials::{evaluate_all, weighted_monomials, ExponentVector};

use crate::covariants::{CovariantError, DixmierOhno, InvariantTuple, TernaryQuartic};
use crate::exactalg::{AlgebraError, Echelon, Field, Matrix};
use crate::sampling::{self, SamplingError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelfindError {
    #[error("{stage}: kernel dimension {found}, expected {expected}; insufficient genericity, reseed or enlarge the batch")]
    KernelDimension { stage: &'static str, expected: usize, found: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("need at least {needed} samples, got {got}")]
    SampleStarvation { needed: usize, got: usize },
    #[error("modulus mismatch: expression over {expected:?}, field {found:?}")]
    ModulusMismatch { expected: Option<u64>, found: Option<u64> },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed expression: {0}")]
    Format(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("Ciani factorization fails at (a,b,c,d,e,f) = {witness:?}")]
    CianiMismatch { witness: Vec<String> },
    #[error("rank deficiency: rank {rank} of {needed}; enlarge the sample")]
    RankDeficient { rank: usize, needed: usize },
    #[error(transparent)]
    Covariant(#[from] CovariantError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Expected kernel dimensions in degree 54.
pub const GENERIC_KERNEL_DIM: usize = 215;
pub const LUROTH_KERNEL_DIM: usize = 216;
pub const LUROTH_DEGREE: u32 = 54;
/// Default batch sizes for the degree-54 computation.
pub const DEFAULT_BATCH: usize = 1500;

/// Extra rows beyond the column count: at least 8% and at least 10.
pub fn margin(columns: usize) -> usize {
    columns.div_ceil(12).max(10)
}

/// Generator values at each quartic, computed in parallel.
pub fn invariant_tuples<K: Field>(
    invariants: &DixmierOhno<K>,
    quartics: &[TernaryQuartic<K::Elem>],
) -> Vec<InvariantTuple<K::Elem>> {
    quartics.par_iter().map(|f| invariants.evaluate(f)).collect()
}

/// Rows indexed by tuples, columns by monomials.
pub fn eval_matrix_from_tuples<K: Field>(
    k: &K,
    tuples: &[InvariantTuple<K::Elem>],
    monomials: &[ExponentVector],
) -> Matrix<K::Elem> {
    let rows: Vec<Vec<K::Elem>> = tuples.par_iter().map(|t| evaluate_all(k, monomials, t)).collect();
    Matrix::from_rows(rows, monomials.len()).expect("rows have one entry per monomial")
}

/// Entry `(i, j)` is monomial `j` evaluated at the generators of quartic `i`.
pub fn eval_matrix<K: Field>(
    invariants: &DixmierOhno<K>,
    quartics: &[TernaryQuartic<K::Elem>],
    monomials: &[ExponentVector],
) -> Matrix<K::Elem> {
    eval_matrix_from_tuples(invariants.field(), &invariant_tuples(invariants, quartics), monomials)
}

/// A kernel basis together with the echelon data needed to reduce vectors
/// modulo it: each basis vector has a 1 at its own free column and 0 at the
/// other free columns.
#[derive(Clone, Debug)]
pub struct Kernel<E> {
    pub rank: usize,
    pub free_columns: Vec<usize>,
    pub basis: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> Kernel<E> {
    pub fn of<K: Field<Elem = E>>(k: &K, m: &Matrix<E>) -> Self {
        let ech: Echelon<E> = m.echelon(k);
        Kernel { rank: ech.rank(), free_columns: ech.free_columns(), basis: ech.kernel(k) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The unique representative of `v + span(basis)` vanishing at every free column.
    pub fn reduce<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Vec<E> {
        let mut r = v.to_vec();
        for (b, &j) in self.basis.iter().zip(&self.free_columns) {
            let c = r[j].clone();
            if !k.is_zero(&c) {
                k.sub_scaled(&mut r, b, &c);
            }
        }
        r
    }
}

/// Outcome of the degree-54 reconstruction.
#[derive(Clone, Debug)]
pub struct LurothResult<E> {
    pub generic_rank: usize,
    pub generic_kernel_dim: usize,
    pub luroth_kernel_dim: usize,
    pub expression: InvariantExpression<E>,
}

/// Seeds of the generic and pentalateral batches derived from one run seed.
pub fn batch_seeds(seed: u64) -> (u64, u64) {
    (seed.wrapping_mul(2), seed.wrapping_mul(2).wrapping_add(1))
}

/// Degree-54 reconstruction from explicit batches.
pub fn find_luroth_from_batches<K: Field>(
    invariants: &DixmierOhno<K>,
    generic: &[TernaryQuartic<K::Elem>],
    luroth: &[TernaryQuartic<K::Elem>],
) -> Result<LurothResult<K::Elem>, RelfindError> {
    let k = invariants.field();
    let monomials = weighted_monomials(LUROTH_DEGREE);
    let m1 = eval_matrix(invariants, generic, &monomials);
    let n1 = Kernel::of(k, &m1);
    drop(m1);
    if n1.dim() != GENERIC_KERNEL_DIM {
        return Err(RelfindError::KernelDimension { stage: "generic kernel N1", expected: GENERIC_KERNEL_DIM, found: n1.dim() });
    }
    let m2 = eval_matrix(invariants, luroth, &monomials);
    for (i, v) in n1.basis.iter().enumerate() {
        if m2.mul_vec(k, v)?.iter().any(|x| !k.is_zero(x)) {
            return Err(RelfindError::Inconsistent(format!("generic relation {i} does not vanish on the pentalateral batch")));
        }
    }
    let n2 = Kernel::of(k, &m2);
    drop(m2);
    if n2.dim() != LUROTH_KERNEL_DIM {
        return Err(RelfindError::KernelDimension { stage: "pentalateral kernel N2", expected: LUROTH_KERNEL_DIM, found: n2.dim() });
    }
    let l = n2
        .basis
        .iter()
        .map(|v| n1.reduce(k, v))
        .find(|r| r.iter().any(|x| !k.is_zero(x)))
        .ok_or_else(|| RelfindError::Inconsistent("pentalateral kernel equals the generic kernel".into()))?;
    let expression = InvariantExpression::from_vector(k, LUROTH_DEGREE, &monomials, &l).normalized(k);
    Ok(LurothResult { generic_rank: n1.rank, generic_kernel_dim: n1.dim(), luroth_kernel_dim: n2.dim(), expression })
}

/// Samples `generic` random and `luroth` pentalateral quartics and
/// reconstructs the canonical Luroth expression.
pub fn find_luroth<K: Field>(
    invariants: &DixmierOhno<K>,
    generic: usize,
    luroth: usize,
    seed: u64,
) -> Result<LurothResult<K::Elem>, RelfindError> {
    let k = invariants.field();
    let (gs, ls) = batch_seeds(seed);
    let generic = sampling::random_generic(k, gs, generic);
    let luroth = sampling::random_luroth(k, ls, luroth);
    find_luroth_from_batches(invariants, &generic, &luroth)
}

/// One relation found by a probe.
#[derive(Clone, Debug)]
pub struct NewRelation<E> {
    pub expression: InvariantExpression<E>,
    /// A single monomial congruent to this relation modulo the generic kernel.
    pub matches_monomial: Option<ExponentVector>,
}

#[derive(Clone, Debug)]
pub struct ProbeReport<E> {
    pub degree: u32,
    pub monomials: usize,
    pub samples: usize,
    pub generic_kernel_dim: usize,
    pub locus_kernel_dim: usize,
    pub new_relations: Vec<NewRelation<E>>,
}

impl<E> ProbeReport<E> {
    /// True when there is exactly one new relation and it is the given monomial.
    pub fn is_single_monomial(&self, m: &ExponentVector) -> bool {
        self.new_relations.len() == 1 && self.new_relations[0].matches_monomial.as_ref() == Some(m)
    }
}

/// Relations of weighted degree `degree` vanishing on `samples` but not on
/// generic quartics, as a reduced basis modulo the generic kernel.
pub fn probe_locus<K: Field>(
    invariants: &DixmierOhno<K>,
    samples: &[TernaryQuartic<K::Elem>],
    degree: u32,
    generic_seed: u64,
) -> Result<ProbeReport<K::Elem>, RelfindError> {
    let k = invariants.field();
    let monomials = weighted_monomials(degree);
    let needed = monomials.len() + margin(monomials.len());
    if samples.len() < needed {
        return Err(RelfindError::SampleStarvation { needed, got: samples.len() });
    }
    let generic = sampling::random_generic(k, generic_seed, needed);
    let generic_kernel = Kernel::of(k, &eval_matrix(invariants, &generic, &monomials));
    let locus_kernel = Kernel::of(k, &eval_matrix(invariants, samples, &monomials));

    let remainders: Vec<Vec<K::Elem>> = locus_kernel
        .basis
        .iter()
        .map(|v| generic_kernel.reduce(k, v))
        .filter(|r| r.iter().any(|x| !k.is_zero(x)))
        .collect();
    let mut new_relations = Vec::new();
    if !remainders.is_empty() {
        let ech = Matrix::from_rows(remainders, monomials.len())?.echelon(k);
        let reduced_monomials: Vec<Vec<K::Elem>> = (0..monomials.len())
            .map(|j| {
                let mut e = vec![k.zero(); monomials.len()];
                e[j] = k.one();
                leading_one(k, generic_kernel.reduce(k, &e))
            })
            .collect();
        for row in ech.matrix.row_vecs().into_iter().take(ech.rank()) {
            let row = leading_one(k, row);
            let matches_monomial = reduced_monomials.iter().position(|m| *m == row).map(|j| monomials[j]);
            new_relations.push(NewRelation {
                expression: InvariantExpression::from_vector(k, degree, &monomials, &row),
                matches_monomial,
            });
        }
    }
    Ok(ProbeReport {
        degree,
        monomials: monomials.len(),
        samples: samples.len(),
        generic_kernel_dim: generic_kernel.dim(),
        locus_kernel_dim: locus_kernel.dim(),
        new_relations,
    })
}

fn leading_one<K: Field>(k: &K, mut v: Vec<K::Elem>) -> Vec<K::Elem> {
    if let Some(lead) = v.iter().find(|x| !k.is_zero(x)).cloned() {
        let inv = k.inv(&lead).expect("nonzero");
        k.scale_slice(&mut v, &inv);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::TernaryForm;
    use crate::exactalg::PrimeField;

    #[test]
    fn margin_rule() {
        assert_eq!(margin(44), 10);
        assert_eq!(margin(1380), 115);
        assert!(margin(1380) * 100 >= 8 * 1380);
    }

    #[test]
    fn single_quartic_single_monomial() {
        let k = PrimeField::new(2017).unwrap();
        let d = DixmierOhno::new(k).unwrap();
        let f = sampling::random_generic(&k, 3, 1);
        let m = eval_matrix(&d, &f, &weighted_monomials(3));
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(*m.get(0, 0), *d.evaluate(&f[0]).get(0));
    }

    #[test]
    fn singular_rows_vanish_on_discriminant_monomials() {
        let k = PrimeField::new(2017).unwrap();
        let d = DixmierOhno::new(k).unwrap();
        let f = TernaryForm::from_terms(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([2, 1, 1], 3)]);
        let mons = weighted_monomials(30);
        let m = eval_matrix(&d, &[f], &mons);
        for (j, e) in mons.iter().enumerate() {
            if e.0[crate::covariants::I27] > 0 {
                assert_eq!(*m.get(0, j), 0);
            }
        }
    }

    #[test]
    fn kernel_reduction_is_canonical() {
        let k = PrimeField::new(2017).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 1, 1, 0], vec![0, 0, 1, 1]], 4).unwrap();
        let ker = Kernel::of(&k, &m);
        assert_eq!(ker.dim(), 2);
        for v in &ker.basis {
            assert!(ker.reduce(&k, v).iter().all(|&x| x == 0));
        }
        let a = ker.reduce(&k, &[5, 0, 0, 0]);
        let shifted: Vec<u64> = [5u64, 0, 0, 0].iter().zip(&ker.basis[0]).map(|(x, y)| k.add(x, &k.mul(&7, y))).collect();
        assert_eq!(ker.reduce(&k, &shifted), a);
    }

    #[test]
    fn probe_rejects_small_batches() {
        let k = PrimeField::new(2017).unwrap();
        let d = DixmierOhno::new(k).unwrap();
        let few = sampling::random_generic(&k, 1, 20);
        assert!(matches!(probe_locus(&d, &few, 24, 0), Err(RelfindError::SampleStarvation { needed: 54, got: 20 })));
    }
}

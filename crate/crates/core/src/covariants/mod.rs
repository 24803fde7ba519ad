//! Ternary quartics and the thirteen Dixmier–Ohno generators of their
//! SL₃-invariant ring.
//!
//! Generators are built from a small set of concomitants of the quartic `f`:
//!
//! | name | kind          | degree, order | construction                    |
//! |------|---------------|---------------|---------------------------------|
//! | H    | covariant     | 3, 6          | Hessian of `f`                  |
//! | σ    | contravariant | 2, 4          | bracket `(abu)⁴` on `f, f`      |
//! | ψ    | contravariant | 3, 6          | `(abu)²(bcu)²(cau)²` on `f,f,f` |
//! | ρ    | contravariant | 4, 2          | `f(∂_u) ψ`                      |
//! | τ    | covariant     | 5, 2          | `ρ(∂_x) f`                      |
//! | ξ    | covariant     | 5, 2          | `σ(∂_x) H`                      |
//! | η    | contravariant | 7, 2          | `ξ(∂_u) σ`                      |
//!
//! The conics ρ, τ, ξ, η are handled as 3×3 matrices (see [`conic`]); the
//! invariants are traces of alternating products and determinants. The
//! degree-27 generator is the discriminant, computed as the resultant of
//! the three partial derivatives.

pub mod bracket;
pub mod conic;
pub mod forms;
pub mod resultant;

use std::fmt;

use bracket::{BracketOperator, PreparedBracket, Symbol};
pub use forms::TernaryForm;

use crate::exactalg::{AlgebraError, Field};

/// A plane quartic: a degree-4 [`TernaryForm`] with 15 coefficients.
pub type TernaryQuartic<E> = TernaryForm<E>;

pub const NUM_GENERATORS: usize = 13;

pub const GENERATOR_NAMES: [&str; NUM_GENERATORS] =
    ["I3", "I6", "I9", "J9", "I12", "J12", "I15", "J15", "I18", "J18", "I21", "J21", "I27"];

pub const GENERATOR_DEGREES: [u32; NUM_GENERATORS] = [3, 6, 9, 9, 12, 12, 15, 15, 18, 18, 21, 21, 27];

/// Index of the discriminant generator.
pub const I27: usize = 12;

/// Smallest prime accepted by the evaluator.
pub const MIN_PRIME: u64 = 2017;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CovariantError {
    #[error("prime {0} is below the supported minimum {MIN_PRIME}")]
    UnsupportedPrime(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Builds a quartic from its 15 coefficients in the documented monomial order.
pub fn quartic<E: Clone + PartialEq>(coeffs: Vec<E>) -> Result<TernaryQuartic<E>, AlgebraError> {
    TernaryForm::from_coeffs(4, coeffs)
}

/// `g(∂x, ∂y, ∂z)` applied to `h`; zero when `deg g > deg h`.
pub fn diff_op<K: Field>(k: &K, g: &TernaryForm<K::Elem>, h: &TernaryForm<K::Elem>) -> TernaryForm<K::Elem> {
    g.apply_to(k, h)
}

/// The 13 generator values of one quartic, in the order of [`GENERATOR_NAMES`].
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTuple<E> {
    values: [E; NUM_GENERATORS],
}

impl<E> InvariantTuple<E> {
    pub fn new(values: [E; NUM_GENERATORS]) -> Self {
        InvariantTuple { values }
    }

    pub fn values(&self) -> &[E; NUM_GENERATORS] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &E {
        &self.values[i]
    }

    pub fn discriminant(&self) -> &E {
        &self.values[I27]
    }
}

impl<E: fmt::Display> fmt::Display for InvariantTuple<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in GENERATOR_NAMES.iter().zip(&self.values) {
            writeln!(f, "{name} {v}")?;
        }
        Ok(())
    }
}

/// Intermediate concomitants of one quartic.
#[derive(Clone, Debug)]
pub struct Concomitants<E> {
    pub hessian: TernaryForm<E>,
    pub sigma: TernaryForm<E>,
    pub psi: TernaryForm<E>,
    pub rho: TernaryForm<E>,
    pub tau: TernaryForm<E>,
    pub xi: TernaryForm<E>,
    pub eta: TernaryForm<E>,
}

/// Evaluator for the generators over one coefficient field. Immutable after
/// construction and safe to share across threads.
#[derive(Clone, Debug)]
pub struct DixmierOhno<K: Field> {
    field: K,
    i3: PreparedBracket<K::Elem>,
    sigma: PreparedBracket<K::Elem>,
    psi: PreparedBracket<K::Elem>,
}

impl<K: Field> DixmierOhno<K> {
    pub fn new(field: K) -> Result<Self, CovariantError> {
        use Symbol::{Slot, U};
        if let Some(p) = field.modulus() {
            if p < MIN_PRIME {
                return Err(CovariantError::UnsupportedPrime(p));
            }
        }
        let i3 = BracketOperator::new(&[([Slot(0), Slot(1), Slot(2)], 4)]).prepare(&field);
        let sigma = BracketOperator::new(&[([Slot(0), Slot(1), U], 4)]).prepare(&field);
        let psi = BracketOperator::new(&[([Slot(0), Slot(1), U], 2), ([Slot(1), Slot(2), U], 2), ([Slot(2), Slot(0), U], 2)])
            .prepare(&field);
        Ok(DixmierOhno { field, i3, sigma, psi })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn concomitants(&self, f: &TernaryQuartic<K::Elem>) -> Concomitants<K::Elem> {
        let k = &self.field;
        let hessian = f.hessian(k);
        let sigma = self.sigma.apply(k, &[f, f]);
        let psi = self.psi.apply(k, &[f, f, f]);
        let rho = f.apply_to(k, &psi);
        let tau = rho.apply_to(k, f);
        let xi = sigma.apply_to(k, &hessian);
        let eta = xi.apply_to(k, &sigma);
        Concomitants { hessian, sigma, psi, rho, tau, xi, eta }
    }

    pub fn evaluate(&self, f: &TernaryQuartic<K::Elem>) -> InvariantTuple<K::Elem> {
        assert_eq!(f.degree(), 4, "Dixmier-Ohno invariants need a quartic");
        let k = &self.field;
        let c = self.concomitants(f);
        let rho = conic::from_quadratic(k, &c.rho);
        let tau = conic::from_quadratic(k, &c.tau);
        let xi = conic::from_quadratic(k, &c.xi);
        let eta = conic::from_quadratic(k, &c.eta);
        let tr = |chain: &[&conic::Mat3<K::Elem>]| conic::trace_of_product(k, chain);
        let scalar = |g: TernaryForm<K::Elem>| g.into_coeffs().swap_remove(0);
        InvariantTuple::new([
            scalar(self.i3.apply(k, &[f, f, f])),
            scalar(c.psi.apply_to(k, &c.hessian)),
            tr(&[&tau, &rho]),
            tr(&[&xi, &rho]),
            conic::det(k, &rho),
            tr(&[&tau, &eta]),
            conic::det(k, &tau),
            conic::det(k, &xi),
            tr(&[&tau, &rho, &tau, &rho]),
            tr(&[&tau, &rho, &xi, &rho]),
            conic::det(k, &eta),
            tr(&[&xi, &eta, &xi, &rho]),
            resultant::gradient_resultant(k, f),
        ])
    }
}

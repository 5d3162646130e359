//! Represented derivators `I -> Fun(I, C)` over finite targets.

mod checks;
mod funcat;
mod kan;
mod projector;
mod target;

use thiserror::Error;

use crate::fincat::FunctorError;
use crate::nerve::NerveError;

pub use checks::{
    coslice_projection, enlargement_E, fder3_fder4_check, fiber_category, left_right_comparison, nerve_map,
    opfib_fiberwise_check, pair_into, projector_oracle_check, projector_pullback_commutation,
    restriction_equivalence_check, slice_projection, table, nerve_table, transport_equivalence_check, Enlargement,
};
pub use funcat::{
    budget_error, enumerate_diagrams, induced_functor, is_fully_faithful, is_pi_cartesian, precomposition,
    BuiltFunctorCategory, CartesianMarking, FunctorCategory,
};
pub use kan::{left_kan, right_kan, KanExtension, KanPlan, KanSide};
pub use projector::{
    cartesian_projector_left, cartesian_projector_right, check_monad_laws, closure_monad, closure_operators,
    idempotent_monad_adjoint, MonadAdjunction, MonadData, MonadHypothesis, MonadViolation, Projected,
    Projector,
};
pub use target::{Cone, TargetCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivatorError {
    #[error("MissingColimit: {shape}")]
    MissingColimit { shape: String },
    #[error("EnumerationBudget: {0}")]
    EnumerationBudget(String),
    #[error("NotOpfibration: {0}")]
    NotOpfibration(String),
    #[error("value outside the expected subcategory: {0}")]
    Outside(String),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
}

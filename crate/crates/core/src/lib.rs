//! Nerves of finite categories and mechanical checks of the nerve axioms,
//! Cartesian projectors and the derivator enlargement, at desk scale.

pub mod fincat;
pub mod nerve;
pub mod axiomcheck;
pub mod derivator;
pub mod cli;

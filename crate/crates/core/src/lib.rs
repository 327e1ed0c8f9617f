//! Galerkin-Koornwinder reduction of scalar delay differential equations.
//!
//! A DDE with a discrete delay and a distributed delay over [t - tau, t] is
//! turned into an N-dimensional ODE system by projecting its history segment
//! onto rescaled Koornwinder polynomials. The crate also ships a
//! method-of-steps solver for the original DDE, used to check the reduction.

pub mod basis;
pub mod derivative;
pub mod error;
pub mod fixtures;
pub mod integrate;
pub mod model_file;
pub mod models;
pub mod nonlinearity;
pub mod quadrature;
pub mod reduction;

pub use nalgebra;

pub use basis::{
    koornwinder_eval, koornwinder_eval_rescaled, koornwinder_norm_sq, legendre_eval,
    PolynomialBasis,
};
pub use derivative::{solve_coeffs, DerivativeTable};
pub use error::{GkError, Result};
pub use integrate::{
    compare, integrate_dde_reference, integrate_reduced, ErrorReport, Trajectory, TrajectoryKind,
};
pub use nonlinearity::{Monomial, Nonlinearity};
pub use quadrature::QuadratureRule;
pub use reduction::{
    assemble_matrix, assemble_nonlinearity, project_history, reconstruct_field, reconstruct_state,
    DDESpec, HistorySegment, ReducedSystem, TransportPart,
};

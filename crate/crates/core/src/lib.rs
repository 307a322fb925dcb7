//! Monotone fronts of the degenerate-diffusion Nagumo equation
//! `u_t = (D(u) u_x)_x + f(u)` and the spectra of their linearisations.
//!
//! The crate builds front profiles, evaluates the closed-form essential
//! spectrum bounds in exponentially weighted spaces, computes point spectra
//! of the truncated conjugated operator, and certifies eigenpairs with an
//! energy identity.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fronts;
pub mod grid;
pub mod io;
pub mod model;
pub mod ode;
pub mod poly;
pub mod roots;
pub mod spectrum;
pub mod eigensolve;
pub mod energy;
pub mod tridiag;

pub use error::{Error, Result};
pub use fronts::{FrontCase, FrontProfile, GridConfig, Side};
pub use model::{Model, ModelSpec};

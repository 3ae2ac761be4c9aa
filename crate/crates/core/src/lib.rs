//! Brouwer degree of the classical eigenvalue problem `Lv = λv` on the unit
//! sphere, and numerical continuation of solution branches of the perturbed
//! problem `Lv + sN(v) = λv`, `‖v‖ = 1`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; IO, file formats and the command line live in the
//! `eigdeg` companion crate.
//!
//! Orientation convention: the cylinder `ℝ × S^{k-1}` carries the product of
//! the standard orientation of `ℝ` and the boundary orientation of the unit
//! sphere, i.e. an ordered basis `(w_1, …, w_{k-1})` of `v^⊥` is positive when
//! `det[v w_1 … w_{k-1}] > 0`. Every degree sign reported by this crate is
//! relative to that convention.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod fmath;

pub mod examples;
pub mod linalg;
pub mod perturbed;
pub mod poly;
pub mod spectral;

pub use error::{Error, Result};
pub use linalg::{Matrix, TangentBasis, Vector};
pub use perturbed::{
    Branch, BranchClass, NonlinearMap, Persistence, Problem, SolutionTriple, StallReason, Term,
    TraceOptions,
};
pub use poly::{Poly, RealRoot};
pub use spectral::{DegreeMethod, DegreeValue, Eigenpoint, Eigenset};

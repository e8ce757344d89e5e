//! Harmonic alpha-Bloch norms on the unit disk and numerical estimators for
//! the essential norm of composition operators `C_phi f = f o phi`.
//!
//! The crate is organised bottom-up:
//!
//! * [`disk`]: points, distances and boundary-refined sampling schemes.
//! * [`analytic`] and [`harmonic`]: maps with closed-form derivatives and
//!   harmonic functions `f = h + conj(g)`.
//! * [`bloch`], [`supremum`] and [`extremal`]: Bloch seminorms and the closed
//!   forms of the radial profile `x^(n-1) (1-x^2)^alpha`.
//! * [`symbol`] and [`grammar`]: validated self-maps and their text syntax.
//! * [`essnorm`] and [`approx`]: the essential-norm estimators and the
//!   dilation approximants used for upper and lower bounds.
//! * [`config`], [`report`] and [`experiment`]: the batch front-end.
#![allow(clippy::neg_cmp_op_on_partial_ord)]


pub mod analytic;
pub mod approx;
pub mod bloch;
pub mod config;
pub mod disk;
pub mod error;
pub mod essnorm;
pub mod experiment;
pub mod extremal;
pub mod grammar;
pub mod harmonic;
pub mod oracle;
pub mod report;
pub mod supremum;
pub mod symbol;

pub use analytic::{AnalyticMap, MapEval};
pub use bloch::{norm, seminorm, AlphaWeight};
pub use disk::{disk_samples, hyperbolic, pseudo_hyperbolic, DiskPoint, SamplingScheme};
pub use error::{Error, Result};
pub use harmonic::{HarmonicFunction, Wirtinger};
pub use supremum::SupremumResult;
pub use symbol::{make_symbol, Symbol, SymbolSpec};

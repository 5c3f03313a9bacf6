//! Cesàro and Riesz summability of Jacobi and Laguerre expansions.
//!
//! The crate evaluates the polynomial families and their asymptotic main terms,
//! computes expansion coefficients by quadrature, forms Cesàro and Riesz means,
//! scans weighted L^q norms for their growth exponents, and builds gliding-hump
//! witnesses whose coefficients outgrow the bounds that convergence of the means
//! would force.

// `!(x >= a)` is used on purpose so NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod orthopoly;
pub mod quadrature;
pub mod specfun;
pub mod summability;
pub mod witness;

pub use error::{Error, Result};
pub use orthopoly::{AsymptoticMainTerm, FamilySpec};
pub use quadrature::{CompositeOptions, MeasureTag, PanelFunction, QuadratureRule};
pub use specfun::CesaroOrder;
pub use summability::{CoefficientSeries, SummationSpec};
pub use witness::{Witness, WitnessFailure, WitnessReport};

//! Amplitude recovery, norm growth scans, regime predictions and exponent fits.

mod asymptotics;
mod cantor;
mod fit;
mod norms;

pub use asymptotics::{jacobi_residual_envelope, laguerre_residual_envelope};
pub use cantor::{cantor_lebesgue_estimate, chi_hat, IntervalSet};
pub use fit::{fit_growth_exponent, geometric_grid, GrowthFit};
pub use norms::{
    critical_indices, jacobi_abs_power, jacobi_delta_bound, jacobi_delta_exponent, jacobi_norm_scan,
    jacobi_restricted_norm, jacobi_weighted_norm, laguerre_abs_power, laguerre_delta_bound, laguerre_delta_exponent,
    laguerre_restricted_norm,
    laguerre_fn_norm, laguerre_norm_scan, predicted_jacobi_regime, predicted_laguerre_regime, JacobiRegime,
    LaguerreRegime, NormScan, RegimePrediction,
};

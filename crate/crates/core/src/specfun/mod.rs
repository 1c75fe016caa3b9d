//! Scalar special functions shared by every kernel, symbol and transform.

mod bessel;
mod gamma;
mod hyp2f1;
mod legendre;
pub(crate) mod series;
mod wright;

pub use bessel::bessel_j;
pub use gamma::{digamma, gamma, gamma_ratio, log_gamma, rgamma, GammaRatio, EULER_GAMMA};
pub use hyp2f1::{hyp2f1, hyp2f1_regularized, Z_SWITCH};
pub use legendre::legendre_p;
pub use wright::{mittag_leffler_multi, wright_j, MittagLefflerParams, WrightParams};

pub(crate) use hyp2f1::{hyp2f1_near_one, hyp2f1_split};
pub(crate) use legendre::legendre_p_scaled;

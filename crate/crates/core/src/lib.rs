//! Explicit fractional powers of the Bessel operator `B_ν = D² + (ν/x) D`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: gamma ratios, Gauss ₂F₁, Legendre functions on `(1, ∞)`,
//!   Bessel `J`, Wright and multi-index Mittag-Leffler series.
//! * [`quad`]: double-exponential quadrature with endpoint exponent hints,
//!   semi-infinite maps and an oscillatory partition integrator.
//! * [`symfun`]: exact power-polynomial algebra used as an oracle.
//! * [`besselfrac`]: the four fractional Bessel integrals, their kernels,
//!   the α = 1 closed forms and positive powers by composition.
//! * [`transforms`]: Mellin and Hankel transforms and the transform identities.
//! * [`resolvent`]: the Mittag-Leffler closed form of `(B^{-α} − λ)^{-1}` and
//!   its Neumann-series oracle.
//! * [`taylor`]: generalized Taylor formulas with Bessel and Clifford-type operators.

pub mod besselfrac;
pub mod error;
pub mod quad;
pub mod resolvent;
pub mod specfun;
pub mod symfun;
pub mod taylor;
pub mod transforms;

pub use besselfrac::{
    alpha_one_apply, frac_derivative, frac_integral, kernel_value, Decay, KernelMethod,
    OperatorParams, SampleFunction, Variant,
};
pub use error::{Error, Result};
pub use quad::{EvalResult, QuadSpec};
pub use symfun::PowerPolynomial;

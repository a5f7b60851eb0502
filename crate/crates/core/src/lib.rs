//! Upper bounds for Bohnenblust–Hille constants, numerical witnesses for the
//! inequalities behind them, and certified Bohr radius bounds on the polydisk.
//!
//! The tensor and witness code is generic over [`Real`] (`f32` or `f64`);
//! constant evaluation and the Bohr pipeline work in `f64` log-space.

pub mod error;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod constants;
pub mod tensor_core;
pub mod witness;
pub mod bohr;

pub use error::{Error, Result};
pub use report::CheckReport;
pub use scalar::{Cplx, Real};

/// Double-precision dense tensor.
pub type Tensor = tensor_core::DenseTensor<f64>;
/// Single-precision dense tensor.
pub type Tensor32 = tensor_core::DenseTensor<f32>;
pub type Exponent = tensor_core::MixedExponent<f64>;
pub type Exponent32 = tensor_core::MixedExponent<f32>;

//! Scalar abstraction shared by the tensor and witness code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; every literal in the crate goes through here.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`] base.
pub type Cplx<T> = Complex<T>;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(xs: I) -> T {
    let mut acc = CompensatedSum::new();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}

/// `(Σ x_i^p)^{1/p}` over nonnegative inputs, compensated.
pub fn lp_sum<T: Real, I: IntoIterator<Item = T>>(xs: I, p: T) -> T {
    let s = compensated_sum(xs.into_iter().map(|x| pow_nonneg(x, p)));
    pow_nonneg(s, T::one() / p)
}

/// `x^p` for `x ≥ 0` with `0^p = 0` and exact shortcuts for `p ∈ {1, 2}`.
pub fn pow_nonneg<T: Real>(x: T, p: T) -> T {
    if x == T::zero() {
        T::zero()
    } else if p == T::one() {
        x
    } else if p == T::lit(2.0) {
        x * x
    } else {
        x.powf(p)
    }
}

/// Unimodular complex number `e^{iθ}`.
pub fn unimodular<T: Real>(theta: T) -> Cplx<T> {
    Complex::new(theta.cos(), theta.sin())
}

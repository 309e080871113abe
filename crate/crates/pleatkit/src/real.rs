//! Scalar math that works both with `std` and with `libm` under `no_std`.

#![allow(dead_code)]

macro_rules! fwd {
    ($($name:ident),* $(,)?) => {
        $(
            #[cfg(feature = "std")]
            #[inline]
            pub fn $name(x: f64) -> f64 {
                f64::$name(x)
            }
            #[cfg(not(feature = "std"))]
            #[inline]
            pub fn $name(x: f64) -> f64 {
                libm::$name(x)
            }
        )*
    };
}

fwd!(sqrt, exp, cosh, sinh, tanh, cos, sin, tan, acos, asin, atan, acosh);

#[cfg(feature = "std")]
#[inline]
pub fn ln(x: f64) -> f64 {
    f64::ln(x)
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    f64::atan2(y, x)
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[cfg(feature = "std")]
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    f64::hypot(x, y)
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[cfg(feature = "std")]
#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    f64::powi(x, k)
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    libm::pow(x, k as f64)
}

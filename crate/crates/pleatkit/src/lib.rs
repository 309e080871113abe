//! Numerical geometry of the pseudo-hyperbolic space H^{2,n} and of maximal
//! surface-group representations into SO_0(2,n+1).
//!
//! The crate is organized around a handful of interlocking pieces:
//!
//! * [`form`] — the signature-(2,n+1) bilinear form on R^{n+3}, points and
//!   isotropic rays of the hyperboloid model, validated isometries,
//!   loxodromic classification, and the unipotent generators used by the
//!   photon-pants construction.
//! * [`poincare`] — the product model D^2 x S^n of the double cover, with the
//!   causality and Lipschitz-graph diagnostics it makes possible.
//! * [`boundary`] — the boundary circle, limit-map providers, the cross
//!   ratio of a representation and its hyperbolic counterpart, periods and
//!   boundedness probes.
//! * [`lamination`] / [`track`] — finite leaved laminations on the circle,
//!   plaque combinatorics, trivalent train tracks with weight systems, the
//!   Thurston symplectic form and divergence-radius functions.
//! * [`shear`] — elementary, finite, and closed-form shears, the shear
//!   cocycle of a finite leaved maximal lamination, exhaustion traces, and
//!   the independent horospherical evaluation route.
//! * [`pleated`] — geometric realizations, the four-points dichotomy,
//!   acausality reports, bending detection, and length-spectrum comparison.
//! * [`photon`] — photons (isotropic 2-planes), membership queries,
//!   pants-of-photons assembly, gluing into closed-surface representations,
//!   and the maximality probe.
//! * [`samples`] — ready-made example configurations (Fuchsian circles,
//!   pants blocks, glued genus-2 representations, annulus windows/tracks)
//!   used by tests and the CLI.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm`
//! feature when building without `std`.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("pleatkit requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod boundary;
pub mod eigen;
pub mod error;
pub mod form;
pub mod lamination;
pub mod mat;
// pub mod photon;
// pub mod pleated;
pub mod poincare;
pub(crate) mod real;
// pub mod samples;
// pub mod shear;
pub mod tol;
pub mod track;
pub mod words;

pub use error::Error;
pub use form::{AmbientIsometry, FormVector, HPoint, IsotropicRay, LoxodromicData};

//! Numerical laboratory for a particle on two intervals `[0, 2π] ⊔ [0, 2π]`
//! whose boundary conditions are parameterized by a 2×2 unitary `u`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure numerics:
//!
//! * [`unitary`], [`wave`]: shared domain types ([`Unitary2`], [`TwoIntervalWave`]).
//! * [`selfadjoint`]: the boundary form of `−d²/dx²` and membership in the
//!   domains `D_u = {ψ : ψ(2π) = uψ(0), ψ'(2π) = uψ'(0)}`.
//! * [`spectrum`]: spectra on `D_u` by a closed eigenphase formula and by a
//!   secular-determinant root finder.
//! * [`topology`]: reconstruction of the glued configuration space from
//!   continuity of probability densities.
//! * [`geometry`]: Weyl dimension, commutator-constrained distances and the
//!   nested-commutator (weak causality) probe on grids.
//! * [`gelfand`]: joint spectra of commuting hermitian families and the
//!   clock/shift fuzzy torus.
//! * [`pw`]: quantized boundary conditions on a truncated Peter–Weyl basis of
//!   `L²(U(2))`, coherent packets and their evolution.
//!
//! IO, file formats and the command line live in the `qtopo` crate.
//!
//! Modules import `num_traits::Float` for `f64` math. When some other crate
//! in the build links `std`, its inherent methods win and the import goes
//! unused, hence the `allow` on each of them.

#![no_std]

extern crate alloc;

pub mod error;
pub mod gelfand;
pub mod geometry;
pub mod linalg;
pub mod pw;
pub mod roots;
pub mod selfadjoint;
pub mod spectrum;
pub mod topology;
pub mod unitary;
pub mod wave;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use spectrum::{SpectrumRow, SpectrumSource, SpectrumTable};
pub use topology::{TopologyClass, TopologyReport};
pub use unitary::{EigenphaseFrame, Unitary2};
pub use wave::TwoIntervalWave;

/// Length of each interval.
pub const INTERVAL_LENGTH: f64 = 2.0 * core::f64::consts::PI;

/// Deterministic generator used for every seeded probe in the crate.
pub type Rng = rand_chacha::ChaCha8Rng;

/// `x mod m` in `[0, m)`.
pub(crate) fn rem_euclid(x: f64, m: f64) -> f64 {
    let r = x - m * libm::floor(x / m);
    if r >= m {
        0.0
    } else {
        r
    }
}

/// Seeded generator.
pub fn rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}

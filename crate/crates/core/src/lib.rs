//! Computational toolkit for sets of integers with small doubling.
//!
//! The crate is organised by subject:
//!
//! * [`sets`]: exact sumsets, difference sets, iterated and signed
//!   combinations, restricted sumsets, doubling constants and energy.
//! * [`progressions`]: one- and two-dimensional arithmetic progressions.
//! * [`covering`]: witness-producing checks that `hX - kX` covers a
//!   progression containing a dense `X`.
//! * [`freiman`]: affine normalisation and Freiman isomorphism verification.
//! * [`bohr`]: Bohr sets, continued fractions, planar successive minima and
//!   certified extraction of proper progressions of dimension at most two.
//! * [`fourier`]: `ℓ²` and `U²` norms on `[N]` and their Fourier form.
//! * [`torus`]: discretised tori, convolutions, Kneser-type deficiency,
//!   Lipschitz sandwiches and equidistribution diagnostics.
//! * [`analyzer`]: brute-force densest-substructure search and the
//!   expansion / AP-dense / GAP-dense classification.

pub mod analyzer;
pub mod bohr;
pub mod covering;
pub mod error;
pub mod fourier;
pub mod freiman;
pub mod progressions;
pub mod sets;
pub mod torus;

pub use error::{Error, Result};
pub use progressions::{Gap2, Progression, Progression1D};
pub use sets::{IntSet, PairRelation};

/// Exact rational used for doubling constants, densities and radii.
pub type Rational = num_rational::Ratio<i128>;

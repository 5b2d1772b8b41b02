//! Verifiable (t, n) threshold multi-secret sharing over the l-torsion of an
//! elliptic curve.
//!
//! Two schemes live here:
//!
//! * [`mvss`]: one Shamir share per participant recovers any number of
//!   secrets. Shares are checked against public verification points built
//!   with the coefficient self-pairing, and secrets are unmasked with a
//!   distortion-modified Weil pairing of the recovered secret point.
//! * [`liu`]: the older point-sharing scheme built on a Vandermonde matrix,
//!   kept as a baseline. It can share at most `t` secrets and has no share
//!   verification.
//!
//! Everything underneath is exact arithmetic: [`algebra`] (prime and
//! extension fields, `Z_l`, small matrices), [`curve`] (group law, point
//! counting, torsion bases), and [`pairing`]. [`bulletin`] is the text
//! codec for the public notice board, dealer state, and share files.

pub mod algebra;
pub mod bulletin;
pub mod curve;
mod error;
pub mod liu;
pub mod mvss;
pub mod pairing;
pub mod presets;
pub mod shamir;

pub use algebra::{
    ExtField, ExtFieldElement, MatZl, ModulusChoice, PolyZl, PrimeField, Scalar, Zl,
};
pub use curve::{CoordPoint, Curve, Point, TorsionBasis};
pub use error::{Error, Result};
pub use pairing::{MaskValue, SelfPairingCtx};
pub use shamir::{ShamirPoly, ShamirShare};


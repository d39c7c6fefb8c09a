//! Exact closed forms and high-precision numerics for fractional moments,
//! the integrals `I_k f = ∫₀¹ xᵏ f({1/x}) dx` where `{·}` is the fractional part.
//!
//! The crate is organised in layers:
//!
//! - [`exactmath`]: arbitrary-precision rationals, combinatorial primitives and
//!   exact polynomial algebra.
//! - [`bernoulli`]: Bernoulli numbers/polynomials, the Bernoulli basis, the
//!   expansion of `xᵐ(1-x)ᵐ` and shifted Legendre polynomials.
//! - [`constants`]: arbitrary-precision evaluation of the transcendental
//!   constants that appear in the closed forms (γ, π, ζ(s), ζ′(s), log Γ,
//!   polygamma, Si(2π), Ci(2π)), each with an explicit error bound.
//! - [`symbolic`]: exact linear combinations of products of those constants,
//!   with a unique normal form, plus the sequences `α_n`, `a_n`, `b_n` and the
//!   `log Γ` integral values they represent.
//! - [`moments`]: the closed-form evaluations themselves — a generic engine
//!   for polynomial integrands and the regime-by-regime formulas for the
//!   sine/cosine, Bernoulli-polynomial, `xᵐ` and `xᵐ(1-x)ᵐ` families — plus
//!   the exact combinatorial identity suites.
//! - [`oracle`]: two independent numerical evaluations of every moment with
//!   honest error bounds, used to ground-truth each closed form.
//! - [`registry`]: the versioned list of known discrepancies in the published
//!   closed-form displays.

pub mod bernoulli;
pub mod constants;
pub mod error;
pub mod exactmath;
pub mod moments;
pub mod oracle;
pub mod registry;
pub mod symbolic;

pub use error::{Error, Result};

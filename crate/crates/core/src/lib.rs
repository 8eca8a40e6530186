//! Exact arithmetic in truncated generalized power series fields over the
//! lexicographically ordered exponent groups Q^d.
//!
//! The kernel provides the value group and its convex-subgroup chain
//! ([`exponent`]), truncated series arithmetic with precision tracking
//! ([`series`]), the canonical valuation with coarsenings and residue maps
//! ([`valuation`]), the compatible ordering with floors, integer-part and
//! complement checkers ([`order`]), Newton lifting of simple residue roots
//! ([`hensel`]), and an expression grammar plus scenario runners for the
//! workbench CLI ([`parse`], [`eval`], [`scenario`]).
//!
//! All values are immutable and all operations are pure: everything is safe
//! to share across threads, and seeded runs reproduce their reports byte for
//! byte.
//!
//! ```
//! use hahnfield::eval::eval_text;
//! use hahnfield::parse::parse_exponent;
//!
//! let horizon = parse_exponent("t^3").unwrap();
//! let v = eval_text("1/(1+t)", None, Some(horizon)).unwrap();
//! assert_eq!(v.to_string(), "1 - t + t^2 mod t^3");
//!
//! let w = eval_text("val(t^[1,-2])", None, None).unwrap();
//! assert_eq!(w.to_string(), "[1,-2]");
//! ```

pub mod error;
pub mod eval;
pub mod exponent;
pub mod hensel;
pub mod order;
pub mod parse;
pub mod rational;
pub mod report;
pub mod sample;
pub mod scenario;
pub mod series;
pub mod valuation;

pub use error::{Error, Result};
pub use exponent::{ConvexLevel, Exponent, ValResult};
pub use rational::Rat;
pub use series::{Precision, Series, SupportProfile};

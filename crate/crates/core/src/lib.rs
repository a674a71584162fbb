//! p-adic hypergeometric functions.
//!
//! Morita's Γ_p and Dwork's γ_p symbol, truncated hypergeometric series and the
//! solution matrices of the Gauss system at 0, 1 and ∞, Frobenius eigenvalues of
//! the hypergeometric F-crystal, and Dwork's unit-root ratio with the
//! Koblitz–Diamond and Young special values.
//!
//! Parameters follow the convention (a, b, c) = (a1, a2, a3).

pub mod error;
pub mod frobenius;
pub mod gamma;
pub mod hypergeo;
pub mod padic;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod unitroot;

pub use error::{Error, Result};
pub use padic::{PadicNumber, PiElement};
pub use rational::Rational;

//! Volterra convolution matrices in orthogonal-polynomial bases.
//!
//! For `f` and `g` expanded in the same basis, the convolution
//! `h(x) = int_{-1}^{x+1} f(x - t) g(t) dt` is again a finite series, and its
//! coefficients are `R b` where `b` holds the coefficients of `g` and `R`
//! depends only on `f`. [`convmat`] builds `R` stably for Chebyshev,
//! Legendre, Gegenbauer and Jacobi bases, [`laguerre`] covers the half line,
//! and [`volterra`] wraps both into interval-aware convolution and a solver
//! for second-kind equations `u = s + f * u`.

pub mod basis;
pub mod cli;
pub mod convmat;
pub mod error;
pub mod io;
pub mod laguerre;
pub mod oracle;
pub mod rng;
pub mod series;
pub mod volterra;

pub use basis::BasisSpec;
pub use convmat::ConvMatrix;
pub use error::{Error, Result};
pub use series::{ChopRule, Domain, PolySeries};

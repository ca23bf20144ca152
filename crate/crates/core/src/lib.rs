//! Exact computations on the family of infinite translation surfaces `S_c`.
//!
//! All arithmetic is over arbitrary-precision rationals. The crate covers the
//! surface itself ([`surface`]), its affine symmetry group ([`group`]),
//! straight-line flow and symbolic coding ([`flow`]), developments of coded
//! geodesics ([`unfolding`]), and the verification checks ([`checks`]) and
//! figures ([`render`]) that sit on top.

pub mod checks;
pub mod error;
pub mod flow;
pub mod group;
pub mod linalg;
pub mod rational;
pub mod render;
pub mod surface;
pub mod unfolding;

pub use error::{Error, Result};
pub use linalg::{apply_affine, wedge, AffineMap, RatMat2, RatVec2};
pub use rational::{sign_of, Rational};

//! Exact computations supporting the splitting of the universal normed
//! motivic spectrum of characteristic 2 into Eilenberg-MacLane pieces.
//!
//! The crate is organised bottom-up:
//!
//! - [`bigraded`]: bidegrees, truncated sums of Tate cells, star gradings
//!   and vanishing lines.
//! - [`extpower`]: the quadratic extended power `D_2` on split Tate
//!   objects and the closure class of "good" cells.
//! - [`nsym`]: 2-Sylow combinatorics, the containers `E_i` for the free
//!   normed object on `S^1`, and series division.
//! - [`hopf`]: graded linear algebra over `F_2`, the Milnor-Moore
//!   cofree splitting and its version over a graded base ring.
//! - [`steenrod`]: commuting coefficients past Steenrod squares, plus
//!   small cohomology fixtures.
//! - [`gw`]: the group-ring calculus of square classes.
//! - [`acceptance`]: the end-to-end checks run by `motsplit verify-all`.

pub mod acceptance;
pub mod bigraded;
pub mod error;
pub mod extpower;
pub mod gw;
pub mod hopf;
pub mod nsym;
pub mod steenrod;

pub use error::{Error, Result};

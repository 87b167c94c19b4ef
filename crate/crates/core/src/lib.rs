//! Exact, symbolic models of graded G-Higgs bundles over a closed Riemann
//! surface of genus `g >= 2`.
//!
//! Everything here is integer or `F_2` arithmetic on formal symbols: line
//! bundles are monomials in `K`, named variable bundles, spin roots,
//! 2-torsion bundles and divisor twists; Higgs fields are quivers whose
//! arrows carry section symbols with vanishing flags. On top of that model
//! the crate provides slope polystability verdicts, graded `C*`-limits,
//! Stiefel-Whitney arithmetic and the component catalog.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod catalog;
pub mod curve;
pub mod deformation;
pub mod error;
pub mod f2cohomology;
pub mod higgs;
pub mod linebundle;
pub mod stability;

pub use curve::{Curve, Exactness, SectionCount};
pub use error::{Error, ErrorCode, Result};
pub use f2cohomology::{F2Class, SwPair};
pub use higgs::{GradedHiggsBundle, GroupTag, SectionSymbol, Side};
pub use linebundle::{DegreeContext, LineBundle};

//! Exact invariants of pretzel links.
//!
//! This crate computes classical invariants of the pretzel link
//! `L(p₁, …, pₙ)` — the closure of `n` side-by-side vertical twist regions
//! of `p_i` signed half-twists each — with exact integer arithmetic
//! throughout:
//!
//! - the **Conway polynomial** `∇(z)`, per orientation class, both by a
//!   memoized computation tree over marked twist vectors and by closed
//!   formulas for the orientation shapes that admit them;
//! - the **Alexander polynomial** `Δ(t)` (from `∇` via
//!   `z ↦ t^{1/2} − t^{−1/2}`) and the **Jones polynomial** `V(t)`;
//! - the **Seifert genus** and **basket number** of pretzel knots and links;
//! - the **torus / hyperbolic classification** of odd 3-pretzel knots.
//!
//! Everything is cross-checked against independent brute-force oracles that
//! work on the actual link diagram: a skein-relation evaluator for `∇`, a
//! Kauffman-bracket state sum for `V`, and Seifert's algorithm for genus
//! bounds. The oracles share no code path with the closed forms they verify.
//!
//! # Quick start
//!
//! ```rust
//! use pretzel::model::Pretzel;
//!
//! let trefoil: Pretzel = "K(1, 1, 1)".parse().unwrap();
//! let class = &trefoil.orientation_classes().unwrap()[0];
//! assert_eq!(trefoil.components(), 1);
//! assert_eq!(class.marks.len(), 3);
//! ```
//!
//! # Modules
//!
//! - [`poly`] — sparse Laurent polynomials with half-integer exponents and
//!   `BigInt` coefficients; canonical text form, parser, exact JSON.
//! - [`model`] — pretzel parameters, component counts, orientation classes.
//! - [`diagram`] — the diagram-level oracle: planar diagrams, PD codes,
//!   skein-relation Conway evaluation, Kauffman bracket, Seifert data.
//! - [`conway`] — the computation-tree engine and closed formulas for `∇`.
//! - [`alexander_jones`] — `Δ(t)` and `V(t)`: substitutions, torus-link
//!   formulas, and the closed Jones forms for `(2l, −q, r)`-shaped pretzels.
//! - [`classify`] — genus, basket numbers, and torus/hyperbolic
//!   classification.
//! - [`report`] — the aggregated invariant report and the CLI entry point.
//!
//! # Examples
//!
//! Each major capability has a runnable example under `examples/`:
//!
//! ```bash
//! cargo run --release --example invariants
//! cargo run --release --example classify_catalogue
//! cargo run --release --example trace_tree
//! cargo run --release --example verify_sweep
//! ```

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod alexander_jones;
pub mod classify;
pub mod report;
pub mod conway;
pub mod diagram;
pub mod model;
pub mod poly;

pub use model::{Mark, Pretzel};
pub use poly::{HalfInt, HalfLaurent, TPoly, ZPoly};

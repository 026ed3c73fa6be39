//! Conway polynomials of oriented pretzel links: torus values, the
//! box-reduction recursion, the general computation tree, and the closed
//! formulas — all in exact integer arithmetic.
//!
//! # Conventions
//!
//! Torus values follow the diagram oracle's fixed orientation convention
//! (see [`crate::diagram`]): `conway_torus2(n)` is the Conway polynomial
//! of the `(2, n)` torus link whose `n` crossings are positive, with both
//! strands oriented the same way; in particular `∇₂ = z` and `∇₄ = z³+2z`.
//! For boxes traversed by its two strands in opposite directions the
//! corresponding factor flips sign: a box of `2l` half-twists closed into
//! such a torus link contributes `−l·z`. All sign choices here were fixed
//! once against the diagram oracle and are exercised continuously by the
//! cross-validation tests.
//!
//! # The computation tree
//!
//! [`computation_tree_conway`] evaluates any realizable oriented pretzel by
//! rewriting its vector of `(twists, mark)` boxes:
//!
//! - a lone box closes into an unknot (value 1);
//! - two or more zero boxes split the link (value 0);
//! - exactly one zero box closes every other box into its own two-strand
//!   torus piece (value: product of torus values);
//! - a vector of `±1` boxes is a closed two-strand braid (torus value of
//!   the sign sum, under the orientation the marks dictate);
//! - otherwise the leftmost antiparallel box with `|p| ≥ 2` is removed by
//!   the opposite-box recursion ([`reduce_opposite_box`] for even boxes,
//!   the odd analogue stepping `p` toward zero), and failing that the
//!   leftmost parallel box with `|p| ≥ 2` is expanded by the twist skein
//!   relation. Every step shrinks `Σ|p_i|` or the box count, so the tree
//!   terminates; results are memoized up to rotation and reflection.

use crate::model::{dihedral_canonical, Mark, MarkedBox};
use crate::poly::ZPoly;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// Errors from the closed-form evaluators and box reductions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    /// [`reduce_opposite_box`] was pointed at a box it cannot reduce.
    #[error(
        "box {index} has {twists} half-twists and is {mark}: \
         the opposite-box reduction needs an antiparallel box with an even twist count"
    )]
    NotAnOppositeBox {
        /// Index of the offending box.
        index: usize,
        /// Its twist count.
        twists: i64,
        /// Its orientation mark.
        mark: Mark,
    },
    /// No closed formula covers the given shape; the computation tree
    /// handles every realizable vector.
    #[error("no closed form covers this shape ({reason}); use computation_tree_conway")]
    ShapeMismatch {
        /// What disqualified the vector.
        reason: String,
    },
}

fn shape_mismatch(reason: impl Into<String>) -> EngineError {
    EngineError::ShapeMismatch {
        reason: reason.into(),
    }
}

// ---------------------------------------------------------------------------
// Torus values
// ---------------------------------------------------------------------------

/// The Conway polynomial `∇_n` of the `(2, n)` torus link, oriented with
/// both strands running the same way.
///
/// Satisfies `∇_0 = 0`, `∇_1 = 1`, `∇_n = z·∇_{n−1} + ∇_{n−2}` and
/// `∇_{−n} = (−1)^{n+1} ∇_n`.
///
/// ```
/// use pretzel::conway::conway_torus2;
/// assert_eq!(conway_torus2(3).to_string(), "z^2 + 1");
/// assert_eq!(conway_torus2(-4).to_string(), "-z^3 - 2z");
/// assert!(conway_torus2(0).is_zero());
/// ```
pub fn conway_torus2(n: i64) -> ZPoly {
    let k = n.unsigned_abs();
    let z = ZPoly::var();
    let mut prev = ZPoly::zero();
    let mut cur = ZPoly::one();
    let value = match k {
        0 => prev,
        _ => {
            for _ in 2..=k {
                let next = &(&z * &cur) + &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    };
    if n >= 0 || k % 2 == 1 {
        value
    } else {
        -value
    }
}

/// The Conway factor contributed by one box when every other strand
/// connection is capped off, closing it into a `(2, p)` torus link:
/// `∇_p` for a parallel box, and `−(p/2)·z` for an antiparallel even box
/// (an annulus with `p/2` full twists). Odd boxes close into knots, where
/// the orientation cannot matter.
pub fn twist_torus_value(p: i64, mark: Mark) -> ZPoly {
    match mark {
        Mark::Antiparallel if p % 2 == 0 => ZPoly::monomial(1, -(p / 2)),
        _ => conway_torus2(p),
    }
}

/// Value of a vector of `±1` parallel boxes with sign sum `m`: such a
/// vector closes into a two-strand braid whose Conway polynomial is
/// `(m/2)·z` when `m` is even and `∇_m` when `m` is odd.
fn parallel_ones_leaf(m: i64) -> ZPoly {
    if m % 2 == 0 {
        ZPoly::monomial(1, m / 2)
    } else {
        conway_torus2(m)
    }
}

// ---------------------------------------------------------------------------
// Opposite-box reduction
// ---------------------------------------------------------------------------

/// One application of the recursion removing an antiparallel even box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OppositeBoxReduction {
    /// The closed summand: the product of the torus values of every other
    /// box (the reduced box capped off to zero).
    pub term: ZPoly,
    /// The remaining vector with the reduced box deleted.
    pub child: Vec<MarkedBox>,
    /// Weight of the child's value in the total: `−l·z` for a box of `2l`
    /// half-twists. Zero (dropping the child) when `l = 0`.
    pub child_weight: ZPoly,
}

/// Remove the antiparallel even box at `index`: the vector's Conway
/// polynomial equals `term + child_weight · ∇(child)`.
///
/// # Errors
///
/// The box must be antiparallel with an even twist count.
///
/// ```
/// use pretzel::conway::reduce_opposite_box;
/// use pretzel::model::Mark::{Antiparallel, Parallel};
///
/// let boxes = [(4, Antiparallel), (3, Parallel), (5, Parallel)];
/// let r = reduce_opposite_box(&boxes, 0).unwrap();
/// assert_eq!(r.term.to_string(), "z^6 + 4z^4 + 4z^2 + 1"); // ∇₃·∇₅
/// assert_eq!(r.child, vec![(3, Parallel), (5, Parallel)]);
/// assert_eq!(r.child_weight.to_string(), "-2z");
/// ```
pub fn reduce_opposite_box(
    boxes: &[MarkedBox],
    index: usize,
) -> Result<OppositeBoxReduction, EngineError> {
    let (p, mark) = boxes[index];
    if mark != Mark::Antiparallel || p % 2 != 0 {
        return Err(EngineError::NotAnOppositeBox {
            index,
            twists: p,
            mark,
        });
    }
    let term = boxes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, &(q, m))| twist_torus_value(q, m))
        .product();
    let mut child = boxes.to_vec();
    child.remove(index);
    Ok(OppositeBoxReduction {
        term,
        child,
        child_weight: ZPoly::monomial(1, -(p / 2)),
    })
}

// ---------------------------------------------------------------------------
// Computation tree
// ---------------------------------------------------------------------------

/// How a vector was evaluated or expanded at one tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// A single box closes into an unknot.
    LoneBox,
    /// Two or more zero boxes: split link.
    Split,
    /// Exactly one zero box: product of torus values.
    ZeroCap,
    /// All boxes `±1`: closed two-strand braid.
    ClosedBraid,
    /// Remove the antiparallel even box at the index.
    OppositeEven(usize),
    /// Step the antiparallel odd box at the index toward zero.
    OppositeOdd(usize),
    /// Skein-expand the parallel box at the index.
    TwistSkein(usize),
}

/// Decide the rule applying to a vector. Returns the step and, for the
/// expansion steps, the two weighted children.
fn classify(boxes: &[MarkedBox]) -> Step {
    if boxes.len() == 1 {
        return Step::LoneBox;
    }
    match boxes.iter().filter(|&&(p, _)| p == 0).count() {
        0 => {}
        1 => return Step::ZeroCap,
        _ => return Step::Split,
    }
    if boxes.iter().all(|&(p, _)| p.abs() == 1) {
        return Step::ClosedBraid;
    }
    if let Some(i) = boxes
        .iter()
        .position(|&(p, m)| m == Mark::Antiparallel && p % 2 == 0)
    {
        return Step::OppositeEven(i);
    }
    if let Some(i) = boxes
        .iter()
        .position(|&(p, m)| m == Mark::Antiparallel && p.abs() >= 2)
    {
        return Step::OppositeOdd(i);
    }
    let i = boxes
        .iter()
        .position(|&(p, m)| m == Mark::Parallel && p.abs() >= 2)
        .expect("some box has |p| >= 2 and every large antiparallel box was handled");
    Step::TwistSkein(i)
}

/// The two weighted children of an expansion step.
fn expand(boxes: &[MarkedBox], step: Step) -> [(ZPoly, Vec<MarkedBox>); 2] {
    let z = ZPoly::var();
    match step {
        Step::OppositeEven(i) => {
            let (p, _) = boxes[i];
            let mut capped = boxes.to_vec();
            capped[i].0 = 0;
            let mut deleted = boxes.to_vec();
            deleted.remove(i);
            [
                (ZPoly::one(), capped),
                (ZPoly::monomial(1, -(p / 2)), deleted),
            ]
        }
        Step::OppositeOdd(i) => {
            let (p, _) = boxes[i];
            let s = p.signum();
            let mut stepped = boxes.to_vec();
            stepped[i].0 = p - 2 * s;
            let mut deleted = boxes.to_vec();
            deleted.remove(i);
            [(ZPoly::one(), stepped), (z.scaled(-s), deleted)]
        }
        Step::TwistSkein(i) => {
            let (p, _) = boxes[i];
            let s = p.signum();
            let mut switched = boxes.to_vec();
            switched[i].0 = p - 2 * s;
            let mut smoothed = boxes.to_vec();
            smoothed[i].0 = p - s;
            [(ZPoly::one(), switched), (z.scaled(s), smoothed)]
        }
        _ => unreachable!("only expansion steps have children"),
    }
}

/// Value of a leaf node.
fn leaf_value(boxes: &[MarkedBox], step: Step) -> ZPoly {
    match step {
        Step::LoneBox => ZPoly::one(),
        Step::Split => ZPoly::zero(),
        Step::ZeroCap => boxes
            .iter()
            .filter(|&&(p, _)| p != 0)
            .map(|&(p, m)| twist_torus_value(p, m))
            .product(),
        Step::ClosedBraid => {
            let m: i64 = boxes.iter().map(|&(p, _)| p.signum()).sum();
            let all_parallel = boxes.iter().all(|&(_, mk)| mk == Mark::Parallel);
            let all_antiparallel = boxes.iter().all(|&(_, mk)| mk == Mark::Antiparallel);
            if all_parallel {
                parallel_ones_leaf(m)
            } else if all_antiparallel {
                conway_torus2(-m)
            } else {
                panic!(
                    "vector of ±1 boxes with mixed orientation marks: \
                     no pretzel orientation induces {boxes:?}"
                )
            }
        }
        _ => unreachable!("only leaf steps have direct values"),
    }
}

/// Shared memoization table for [`computation_tree_conway`], keyed on
/// vectors up to rotation and reflection. Reuse one across many
/// evaluations (for instance over a sweep) to share work.
#[derive(Default)]
pub struct ConwayMemo {
    map: Mutex<HashMap<Vec<MarkedBox>, ZPoly>>,
}

impl ConwayMemo {
    /// An empty table.
    pub fn new() -> Self {
        Self::default()
    }

    /// Evaluate a vector through this table.
    pub fn eval(&self, boxes: &[MarkedBox]) -> ZPoly {
        let step = classify(boxes);
        match step {
            Step::LoneBox | Step::Split | Step::ZeroCap | Step::ClosedBraid => {
                leaf_value(boxes, step)
            }
            _ => {
                let key = dihedral_canonical(boxes);
                if let Some(v) = self.map.lock().expect("memo lock").get(&key) {
                    return v.clone();
                }
                let [(wa, ca), (wb, cb)] = expand(boxes, step);
                let weight: i64 = boxes.iter().map(|&(p, _)| p.abs()).sum();
                let (va, vb) = if weight >= 16 {
                    rayon::join(|| self.eval(&ca), || self.eval(&cb))
                } else {
                    (self.eval(&ca), self.eval(&cb))
                };
                let total = &(&wa * &va) + &(&wb * &vb);
                self.map
                    .lock()
                    .expect("memo lock")
                    .insert(key, total.clone());
                total
            }
        }
    }
}

/// The Conway polynomial of an oriented pretzel link given as a vector of
/// `(twists, mark)` boxes, by the terminating rewriting described in the
/// module notes. Exact for every realizable oriented pretzel.
///
/// # Panics
///
/// Panics when the marked vector cannot arise from any orientation of a
/// pretzel link (such a vector does not describe an oriented link, so no
/// polynomial exists for it).
///
/// ```
/// use pretzel::conway::computation_tree_conway;
/// use pretzel::model::Mark::Antiparallel;
///
/// let trefoil = [(1, Antiparallel); 3];
/// assert_eq!(computation_tree_conway(&trefoil).to_string(), "z^2 + 1");
/// ```
pub fn computation_tree_conway(boxes: &[MarkedBox]) -> ZPoly {
    ConwayMemo::new().eval(boxes)
}

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

/// One box of a traced vector.
#[derive(Clone, Debug, Serialize)]
pub struct TraceBox {
    /// Signed half-twist count.
    pub twists: i64,
    /// Orientation mark, `"par"` or `"anti"`.
    pub mark: &'static str,
}

/// One node of the rendered computation tree.
#[derive(Clone, Debug, Serialize)]
pub struct TraceNode {
    /// The vector at this node.
    pub vector: Vec<TraceBox>,
    /// Name of the rule applied here.
    pub rule: &'static str,
    /// Weight of this node's value in its parent's sum (`"1"` at the root).
    pub weight: String,
    /// The node's Conway polynomial.
    pub value: String,
    /// Weighted children (empty at leaves).
    pub children: Vec<TraceNode>,
}

/// Upper bound on rendered trace nodes; the unfolded tree can grow
/// exponentially even when the memoized evaluation is fast.
const TRACE_NODE_BUDGET: usize = 200_000;

/// Errors from trace rendering.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    /// The unfolded tree exceeds the node budget.
    #[error("computation tree exceeds {budget} nodes; evaluate without --trace")]
    TooLarge {
        /// The fixed node budget.
        budget: usize,
    },
}

fn rule_name(step: Step) -> &'static str {
    match step {
        Step::LoneBox => "lone-box-unknot",
        Step::Split => "split-link",
        Step::ZeroCap => "zero-capped-product",
        Step::ClosedBraid => "closed-two-braid",
        Step::OppositeEven(_) => "opposite-even-reduction",
        Step::OppositeOdd(_) => "opposite-odd-reduction",
        Step::TwistSkein(_) => "twist-skein-expansion",
    }
}

fn trace_node(
    boxes: &[MarkedBox],
    weight: &ZPoly,
    memo: &ConwayMemo,
    budget: &mut usize,
) -> Result<TraceNode, TraceError> {
    if *budget == 0 {
        return Err(TraceError::TooLarge {
            budget: TRACE_NODE_BUDGET,
        });
    }
    *budget -= 1;
    let step = classify(boxes);
    let children = match step {
        Step::LoneBox | Step::Split | Step::ZeroCap | Step::ClosedBraid => Vec::new(),
        _ => {
            let [(wa, ca), (wb, cb)] = expand(boxes, step);
            vec![
                trace_node(&ca, &wa, memo, budget)?,
                trace_node(&cb, &wb, memo, budget)?,
            ]
        }
    };
    Ok(TraceNode {
        vector: boxes
            .iter()
            .map(|&(twists, mark)| TraceBox {
                twists,
                mark: mark.as_str(),
            })
            .collect(),
        rule: rule_name(step),
        weight: weight.to_string(),
        value: memo.eval(boxes).to_string(),
        children,
    })
}

/// Evaluate a vector and render its full computation tree for inspection.
pub fn computation_tree_trace(boxes: &[MarkedBox]) -> Result<(ZPoly, TraceNode), TraceError> {
    let memo = ConwayMemo::new();
    let mut budget = TRACE_NODE_BUDGET;
    let node = trace_node(boxes, &ZPoly::one(), &memo, &mut budget)?;
    Ok((memo.eval(boxes), node))
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// The Conway polynomial of a pretzel whose boxes are all parallel-marked:
///
/// ```text
/// ∇ = leaf(Σᵢ sign pᵢ) · Πᵢ ∇_{pᵢ}  +  Σᵢ ∇_{pᵢ'} · Π_{j≠i} ∇_{pⱼ}
/// ```
///
/// where `p' = sign(p)(|p|−1)` and `leaf` is the closed two-braid value.
/// Every denominator of the textbook replace-one-factor presentation is
/// cleared symbolically; no polynomial division happens.
///
/// An empty vector yields zero. Zero entries are outside this formula's
/// domain (see [`conway_closed_form`], which rejects them).
pub fn conway_parallel(params: &[i64]) -> ZPoly {
    let m: i64 = params.iter().map(|&p| p.signum()).sum();
    let nablas: Vec<ZPoly> = params.iter().map(|&p| conway_torus2(p)).collect();
    let full: ZPoly = nablas.iter().cloned().product();
    let mut total = &parallel_ones_leaf(m) * &full;
    for (i, &p) in params.iter().enumerate() {
        let mut term = conway_torus2(p.signum() * (p.abs() - 1));
        for (j, nb) in nablas.iter().enumerate() {
            if j != i {
                term = &term * nb;
            }
        }
        total += &term;
    }
    total
}

/// The closed formula for a vector whose antiparallel boxes are all even,
/// say `t ≥ 0` of them with half-twist counts `2l₁, …, 2l_t`, the parallel
/// rest being `R`:
///
/// ```text
/// ∇ = z^{t−1} · [Σ_k Π_{i≠k} (−lᵢ)] · Π_{r∈R} ∇_{p_r}
///   + z^t · [Πᵢ (−lᵢ)] · ∇_par(R)
/// ```
///
/// For `t = 0` the first term is an empty sum and the whole expression
/// degenerates to [`conway_parallel`].
fn closed_anti_evens(antis: &[i64], rest: &[i64]) -> ZPoly {
    let t = antis.len();
    if t == 0 {
        return conway_parallel(rest);
    }
    let neg_ls: Vec<BigInt> = antis.iter().map(|&p| BigInt::from(-(p / 2))).collect();
    let product: BigInt = neg_ls.iter().product();
    let mut skip_sum = BigInt::ZERO;
    for k in 0..t {
        let mut term = BigInt::one();
        for (i, l) in neg_ls.iter().enumerate() {
            if i != k {
                term *= l;
            }
        }
        skip_sum += term;
    }
    let rest_product: ZPoly = rest.iter().map(|&p| conway_torus2(p)).product();
    let first = &ZPoly::monomial((t - 1) as i64, skip_sum) * &rest_product;
    let second = &ZPoly::monomial(t as i64, product) * &conway_parallel(rest);
    &first + &second
}

/// Split a vector into (antiparallel even twist counts, parallel twist
/// counts), or report why no closed form applies.
fn closed_form_shape(boxes: &[MarkedBox]) -> Result<(Vec<i64>, Vec<i64>), EngineError> {
    if boxes.len() < 2 {
        return Err(shape_mismatch(
            "single-box pretzels close into unknots outside the formulas' shapes",
        ));
    }
    if boxes.iter().any(|&(p, _)| p == 0) {
        return Err(shape_mismatch("zero boxes split or cap the link"));
    }
    let mut antis = Vec::new();
    let mut rest = Vec::new();
    for &(p, mark) in boxes {
        match mark {
            Mark::Antiparallel if p % 2 == 0 => antis.push(p),
            Mark::Antiparallel => {
                return Err(shape_mismatch(format!(
                    "antiparallel box with odd twist count {p}"
                )))
            }
            Mark::Parallel => rest.push(p),
        }
    }
    Ok((antis, rest))
}

/// Evaluate the applicable closed-form theorem for an oriented pretzel:
/// the all-parallel formula when no box is antiparallel, and the
/// antiparallel-evens formula otherwise.
///
/// # Errors
///
/// [`EngineError::ShapeMismatch`] when some antiparallel box is odd (the
/// all-odd alternating orientations have no closed formula here), when a
/// box is zero, or for single-box vectors. The computation tree covers
/// those cases.
pub fn conway_closed_form(boxes: &[MarkedBox]) -> Result<ZPoly, EngineError> {
    let (antis, rest) = closed_form_shape(boxes)?;
    Ok(closed_anti_evens(&antis, &rest))
}

/// The knot-shaped closed formulas: at most one even box.
///
/// Covers three shapes:
/// - one even box, marked antiparallel, among parallel odd boxes;
/// - one even box, all boxes parallel;
/// - no even box, all boxes parallel (the two-component all-odd pretzel
///   with both strands running the same way).
///
/// # Errors
///
/// [`EngineError::ShapeMismatch`] for any other shape — more than one even
/// box belongs to [`conway_closed_link`], and all-odd vectors with
/// antiparallel marks have no closed formula.
pub fn conway_closed_knot(boxes: &[MarkedBox]) -> Result<ZPoly, EngineError> {
    let evens = boxes.iter().filter(|&&(p, _)| p % 2 == 0).count();
    if evens > 1 {
        return Err(shape_mismatch(format!(
            "{evens} even boxes; use conway_closed_link"
        )));
    }
    conway_closed_form(boxes)
}

/// The link-shaped closed formulas: at least one even box, every
/// antiparallel box even.
///
/// # Errors
///
/// [`EngineError::ShapeMismatch`] when no box is even (those are the
/// knot-theorem shapes) or when an odd box is marked antiparallel.
pub fn conway_closed_link(boxes: &[MarkedBox]) -> Result<ZPoly, EngineError> {
    let evens = boxes.iter().filter(|&&(p, _)| p % 2 == 0).count();
    if evens == 0 {
        return Err(shape_mismatch(
            "no even boxes; use conway_closed_knot".to_string(),
        ));
    }
    conway_closed_form(boxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Mark::{Antiparallel as A, Parallel as P};
    use crate::model::Pretzel;

    fn zp(s: &str) -> ZPoly {
        s.parse().expect("valid polynomial literal")
    }

    #[test]
    fn torus_values_match_the_recurrence_table() {
        assert!(conway_torus2(0).is_zero());
        assert_eq!(conway_torus2(1), ZPoly::one());
        assert_eq!(conway_torus2(2), zp("z"));
        assert_eq!(conway_torus2(3), zp("z^2 + 1"));
        assert_eq!(conway_torus2(4), zp("z^3 + 2z"));
        assert_eq!(conway_torus2(5), zp("z^4 + 3z^2 + 1"));
        assert_eq!(conway_torus2(6), zp("z^5 + 4z^3 + 3z"));
        // Mirrors: odd counts are symmetric, even counts flip sign.
        assert_eq!(conway_torus2(-3), zp("z^2 + 1"));
        assert_eq!(conway_torus2(-4), zp("-z^3 - 2z"));
    }

    #[test]
    fn twist_torus_values_depend_on_the_mark_only_for_even_boxes() {
        assert_eq!(twist_torus_value(3, P), zp("z^2 + 1"));
        assert_eq!(twist_torus_value(3, A), zp("z^2 + 1"));
        assert_eq!(twist_torus_value(4, P), zp("z^3 + 2z"));
        assert_eq!(twist_torus_value(4, A), zp("-2z"));
        assert_eq!(twist_torus_value(-6, A), zp("3z"));
    }

    #[test]
    fn opposite_box_reduction_matches_its_contract() {
        let r = reduce_opposite_box(&[(4, A), (3, P), (5, P)], 0).unwrap();
        assert_eq!(r.term, &conway_torus2(3) * &conway_torus2(5));
        assert_eq!(r.child, vec![(3, P), (5, P)]);
        assert_eq!(r.child_weight, zp("-2z"));

        // A zero box reduces with weight zero: the child is dropped.
        let r = reduce_opposite_box(&[(0, A), (3, P), (5, P)], 0).unwrap();
        assert!(r.child_weight.is_zero());

        // Two opposite boxes chain: L(2,2) = tv(2) + (−z)·∇(L(2)) = −z − z.
        let r = reduce_opposite_box(&[(2, A), (2, A)], 0).unwrap();
        assert_eq!(r.term, zp("-z"));
        assert_eq!(r.child_weight, zp("-z"));
        assert_eq!(computation_tree_conway(&r.child), ZPoly::one());

        assert!(matches!(
            reduce_opposite_box(&[(3, A), (2, A)], 0),
            Err(EngineError::NotAnOppositeBox { index: 0, .. })
        ));
        assert!(matches!(
            reduce_opposite_box(&[(2, P), (2, A)], 0),
            Err(EngineError::NotAnOppositeBox { .. })
        ));
    }

    #[test]
    fn tree_reproduces_the_frozen_oracle_anchors() {
        assert_eq!(computation_tree_conway(&[(1, P), (1, P)]), zp("z"));
        assert_eq!(computation_tree_conway(&[(1, A), (1, A)]), zp("-z"));
        assert_eq!(computation_tree_conway(&[(1, A); 3]), zp("z^2 + 1"));
        assert_eq!(
            computation_tree_conway(&[(2, A), (1, P), (1, P)]),
            zp("-z^2 + 1")
        );
        assert_eq!(
            computation_tree_conway(&[(-2, A), (3, P), (3, P)]),
            zp("z^6 + 5z^4 + 5z^2 + 1")
        );
        assert_eq!(computation_tree_conway(&[(1, P); 4]), zp("2z"));
        assert_eq!(computation_tree_conway(&[(1, A); 4]), zp("-z^3 - 2z"));
        assert_eq!(computation_tree_conway(&[(3, A); 3]), zp("7z^2 + 1"));
        assert_eq!(computation_tree_conway(&[(2, P), (2, P)]), zp("z^3 + 2z"));
        assert_eq!(computation_tree_conway(&[(2, A), (2, A)]), zp("-2z"));
        assert_eq!(computation_tree_conway(&[(2, A), (4, A)]), zp("-3z"));
        assert_eq!(
            computation_tree_conway(&[(3, P), (5, P)]),
            zp("z^7 + 6z^5 + 10z^3 + 4z")
        );
        assert_eq!(computation_tree_conway(&[(3, A), (5, A)]), zp("-4z"));
        assert_eq!(
            computation_tree_conway(&[(2, P), (2, A), (3, P)]),
            zp("-z^5 - 2z^3")
        );
        assert_eq!(
            computation_tree_conway(&[(2, P), (3, P)]),
            zp("z^4 + 3z^2 + 1")
        );
    }

    #[test]
    fn tree_handles_zero_boxes() {
        // One zero: the rest cap into a product of torus pieces.
        assert_eq!(
            computation_tree_conway(&[(0, P), (3, P), (5, P)]),
            &conway_torus2(3) * &conway_torus2(5)
        );
        // Two zeros: split.
        assert!(computation_tree_conway(&[(0, P), (3, P), (0, P)]).is_zero());
        // Single box: unknot.
        assert_eq!(computation_tree_conway(&[(7, P)]), ZPoly::one());
        assert_eq!(computation_tree_conway(&[(4, A)]), ZPoly::one());
    }

    #[test]
    #[should_panic(expected = "mixed orientation marks")]
    fn mixed_unit_vectors_are_rejected() {
        computation_tree_conway(&[(1, P), (1, A)]);
    }

    #[test]
    fn closed_forms_match_the_tree_on_their_shapes() {
        let cases: Vec<Vec<MarkedBox>> = vec![
            vec![(1, P), (1, P)],
            vec![(2, P), (2, P)],
            vec![(2, A), (2, A)],
            vec![(2, A), (4, A)],
            vec![(3, P), (5, P)],
            vec![(2, P), (3, P)],
            vec![(2, A), (3, P), (3, P)],
            vec![(-2, A), (3, P), (3, P)],
            vec![(2, P), (2, A), (3, P)],
            vec![(4, A), (3, P), (5, P)],
            vec![(2, A), (4, A), (3, P), (5, P)],
            vec![(2, A), (1, P), (1, P)],
            vec![(-4, A), (-3, P), (7, P)],
        ];
        for boxes in cases {
            let closed = conway_closed_form(&boxes).expect("shape covered");
            assert_eq!(closed, computation_tree_conway(&boxes), "{boxes:?}");
        }
    }

    #[test]
    fn closed_form_rejects_uncovered_shapes() {
        assert!(matches!(
            conway_closed_form(&[(3, A), (3, A)]),
            Err(EngineError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            conway_closed_form(&[(0, P), (3, P), (5, P)]),
            Err(EngineError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            conway_closed_form(&[(5, P)]),
            Err(EngineError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn knot_and_link_entry_points_split_by_even_count() {
        assert!(conway_closed_knot(&[(2, A), (3, P), (3, P)]).is_ok());
        assert!(conway_closed_knot(&[(3, P), (3, P)]).is_ok());
        assert!(matches!(
            conway_closed_knot(&[(2, A), (4, A), (3, P)]),
            Err(EngineError::ShapeMismatch { .. })
        ));
        assert!(conway_closed_link(&[(2, A), (4, A), (3, P)]).is_ok());
        assert!(matches!(
            conway_closed_link(&[(3, P), (3, P)]),
            Err(EngineError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn all_parallel_formula_expands_the_documented_example() {
        // L(3,3) with both strands running the same way:
        // ∇₂·∇₃² + 2·∇₂·∇₃ = z⁵ + 4z³ + 3z (= ∇₆).
        let lhs = conway_parallel(&[3, 3]);
        let expected = &(&conway_torus2(2) * &conway_torus2(3)) * &conway_torus2(3);
        let expected = &expected + &(&conway_torus2(2) * &conway_torus2(3)).scaled(2);
        assert_eq!(lhs, expected);
        assert_eq!(lhs, conway_torus2(6));
    }

    #[test]
    fn traces_cover_every_rule_and_agree_with_values() {
        let boxes = [(2, A), (3, P), (3, P)];
        let (value, trace) = computation_tree_trace(&boxes).unwrap();
        assert_eq!(value, computation_tree_conway(&boxes));
        assert_eq!(trace.value, value.to_string());
        assert_eq!(trace.rule, "opposite-even-reduction");
        assert_eq!(trace.weight, "1");
        assert_eq!(trace.children.len(), 2);
        let json = serde_json::to_value(&trace).unwrap();
        assert_eq!(json["vector"][0]["twists"], 2);
        assert_eq!(json["vector"][0]["mark"], "anti");
        assert_eq!(json["children"][1]["weight"], "-z");
    }

    #[test]
    fn tree_matches_model_marks_for_every_small_knot() {
        // The engine consumes exactly the vectors the model produces.
        for params in [vec![1, 1, 1], vec![2, 1, 1], vec![-2, 3, 3], vec![3, 3, 3]] {
            let p = Pretzel::new(params).unwrap();
            for class in p.orientation_classes().unwrap() {
                let boxes = p.marked(&class.marks);
                let _ = computation_tree_conway(&boxes);
            }
        }
    }
}

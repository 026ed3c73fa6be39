//! Pretzel links: parameters, component counts, and the strand-orientation
//! classes of each twist region.
//!
//! A pretzel link `L(p₁, …, pₙ)` is built from `n` vertical twist regions
//! ("boxes") placed side by side, the `i`-th holding `p_i` signed
//! half-twists between two strands. The boxes are closed into a link by arcs
//! joining neighbouring tops and neighbouring bottoms, with the outermost
//! arcs wrapping around.
//!
//! Orientation matters for the Conway/Alexander polynomials and for genus:
//! once every component is given a direction, each box sees its two strands
//! either running the same way ([`Mark::Parallel`]) or in opposite vertical
//! directions ([`Mark::Antiparallel`]). This module enumerates all
//! `2^{μ−1}` orientations combinatorially (component 0 fixed, reversing all
//! components simultaneously changes nothing we compute) and groups them by
//! their mark vectors into [`OrientationClass`]es.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Hard limit on link components when enumerating orientations; beyond this
/// the `2^{μ−1}` enumeration is not worth attempting.
pub const MAX_ORIENTATION_COMPONENTS: usize = 16;

/// Errors from constructing or parsing pretzel parameters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    /// A pretzel needs at least one box.
    #[error("a pretzel needs at least one twist region")]
    Empty,
    /// The textual form could not be understood.
    #[error("cannot parse {input:?} as a pretzel: {reason}")]
    Parse {
        /// The offending input.
        input: String,
        /// Why it was rejected.
        reason: String,
    },
    /// `K(…)` was used for parameters that do not give a knot.
    #[error("K(…) denotes a knot, but these parameters give {components} components")]
    NotAKnot {
        /// Actual number of link components.
        components: usize,
    },
    /// Orientation enumeration would be `2^{μ−1}` with μ too large.
    #[error("too many link components to enumerate orientations ({components} > {limit})")]
    TooManyComponents {
        /// Actual number of link components.
        components: usize,
        /// The enforced limit.
        limit: usize,
    },
    /// An operation needed an even twist region but every box is odd.
    #[error("no even twist region to select")]
    NoEvenBox,
    /// The requested box-parity shape does not match the parameters.
    #[error("parameters do not fit the requested orientation shape: {reason}")]
    WrongParityShape {
        /// What was expected of the parameters.
        reason: String,
    },
    /// No component orientation of this pretzel realizes the mark vector.
    #[error("no orientation of the components realizes the marks {marks:?}")]
    UnrealizableMarks {
        /// The mark vector that was requested.
        marks: Vec<Mark>,
    },
    /// The ±1-absorption move needs three boxes and a ±1 entry.
    #[error("cannot absorb a unit box: {reason}")]
    NoUnitMove {
        /// Why the move does not apply.
        reason: String,
    },
}

/// Relative orientation of the two strands through one twist region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    /// Both strands run in the same vertical direction through the box.
    Parallel,
    /// The strands run in opposite vertical directions through the box.
    Antiparallel,
}

impl Mark {
    /// Short symbol used in traces and debug output: `∥` or `×`… kept ASCII:
    /// `par` / `anti`.
    pub fn as_str(self) -> &'static str {
        match self {
            Mark::Parallel => "par",
            Mark::Antiparallel => "anti",
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One twist region together with its strand-orientation mark.
pub type MarkedBox = (i64, Mark);

/// A pretzel link given by its twist parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pretzel {
    params: Vec<i64>,
}

/// One passage of a strand through a box, in the canonical traversal
/// direction of its component.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Passage {
    pub(crate) component: usize,
    pub(crate) downward: bool,
}

/// Both passages through one box: the one on the left side (through the
/// top-left endpoint) and the one on the right.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BoxPassages {
    pub(crate) left: Passage,
    pub(crate) right: Passage,
}

/// Result of tracing the strands of a pretzel combinatorially.
#[derive(Clone, Debug)]
pub(crate) struct StrandTrace {
    pub(crate) component_count: usize,
    pub(crate) boxes: Vec<BoxPassages>,
}

/// All orientations sharing one mark vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationClass {
    /// The mark of each box under these orientations.
    pub marks: Vec<Mark>,
    /// Component-direction assignments in this class; entry `c` is `true`
    /// when component `c` keeps its canonical direction. Component 0 is
    /// always `true`.
    pub orientations: Vec<Vec<bool>>,
}

/// Box-parity summary of a pretzel: which boxes are even/odd, the sign sum
/// over the odd boxes, and the component count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityProfile {
    /// Indices of boxes with an even twist count (zero included).
    pub even_boxes: Vec<usize>,
    /// Indices of boxes with an odd twist count.
    pub odd_boxes: Vec<usize>,
    /// Sum of `sign(p_i)` over the odd boxes.
    pub alpha: i64,
    /// Number of link components μ.
    pub components: usize,
}

/// One dihedral or mirror image of a parameter vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryImage {
    /// The transformed parameters.
    pub params: Vec<i64>,
    /// True when every entry was negated (the mirror image), which flips
    /// chirality-sensitive invariants.
    pub mirrored: bool,
}

impl Pretzel {
    /// A pretzel with the given signed half-twist counts, one per box.
    pub fn new(params: Vec<i64>) -> Result<Self, ModelError> {
        if params.is_empty() {
            return Err(ModelError::Empty);
        }
        Ok(Pretzel { params })
    }

    /// The twist parameters `p₁, …, pₙ`.
    pub fn params(&self) -> &[i64] {
        &self.params
    }

    /// Number of twist regions `n`.
    pub fn boxes(&self) -> usize {
        self.params.len()
    }

    /// Number of boxes with an even twist count (including zero twists).
    pub fn even_boxes(&self) -> usize {
        self.params.iter().filter(|p| *p % 2 == 0).count()
    }

    /// Number of link components μ.
    ///
    /// Computed by tracing the strands: with `e` even boxes this equals `e`
    /// when `e ≥ 1`, and otherwise 1 or 2 according to the parity of `n`.
    pub fn components(&self) -> usize {
        self.strand_trace().component_count
    }

    /// True when the pretzel is a knot (one component).
    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// Zip the parameters with a mark vector into engine input.
    ///
    /// # Panics
    ///
    /// Panics when `marks` has the wrong length.
    pub fn marked(&self, marks: &[Mark]) -> Vec<MarkedBox> {
        assert_eq!(marks.len(), self.boxes(), "one mark per box");
        self.params.iter().copied().zip(marks.iter().copied()).collect()
    }

    /// Trace all strands through the boxes and closure arcs.
    ///
    /// Endpoints of box `i` are numbered `4i+k` with `k` = 0 top-left,
    /// 1 top-right, 2 bottom-left, 3 bottom-right. An even box joins
    /// top-left↔bottom-left and top-right↔bottom-right; an odd box crosses,
    /// joining top-left↔bottom-right and top-right↔bottom-left. Closure arcs
    /// join `TR_i ~ TL_{i+1}` and `BR_i ~ BL_{i+1}` cyclically.
    pub(crate) fn strand_trace(&self) -> StrandTrace {
        let n = self.params.len();
        let size = 4 * n;
        let box_mate = |e: usize| -> usize {
            let (i, k) = (e / 4, e % 4);
            let even = self.params[i] % 2 == 0;
            let k2 = match (even, k) {
                (true, 0) => 2,
                (true, 1) => 3,
                (true, 2) => 0,
                (true, 3) => 1,
                (false, 0) => 3,
                (false, 1) => 2,
                (false, 2) => 1,
                (false, 3) => 0,
                _ => unreachable!(),
            };
            4 * i + k2
        };
        let mut arc_mate = vec![0usize; size];
        for i in 0..n {
            let j = (i + 1) % n;
            arc_mate[4 * i + 1] = 4 * j; // TR_i ~ TL_j
            arc_mate[4 * j] = 4 * i + 1;
            arc_mate[4 * i + 3] = 4 * j + 2; // BR_i ~ BL_j
            arc_mate[4 * j + 2] = 4 * i + 3;
        }

        let mut visited = vec![false; size];
        let mut component_count = 0;
        let mut passages: Vec<Vec<(bool, Passage)>> = vec![Vec::new(); n]; // (is_left, passage)
        for start in 0..size {
            if visited[start] {
                continue;
            }
            let component = component_count;
            component_count += 1;
            let mut e = start;
            loop {
                let f = box_mate(e);
                visited[e] = true;
                visited[f] = true;
                let i = e / 4;
                let is_left = e % 4 == 0 || f % 4 == 0;
                let downward = e % 4 < 2;
                passages[i].push((is_left, Passage { component, downward }));
                e = arc_mate[f];
                if e == start {
                    break;
                }
            }
        }

        let boxes = passages
            .into_iter()
            .map(|ps| {
                assert_eq!(ps.len(), 2, "every box is traversed by exactly two strands");
                let left = ps.iter().find(|(l, _)| *l).expect("one left passage").1;
                let right = ps.iter().find(|(l, _)| !*l).expect("one right passage").1;
                BoxPassages { left, right }
            })
            .collect();

        StrandTrace {
            component_count,
            boxes,
        }
    }

    /// Enumerate all `2^{μ−1}` component orientations and group them into
    /// classes by their mark vectors. Classes come back in a deterministic
    /// order (lexicographic in the mark vector, [`Mark::Parallel`] first).
    pub fn orientation_classes(&self) -> Result<Vec<OrientationClass>, ModelError> {
        let trace = self.strand_trace();
        let mu = trace.component_count;
        if mu > MAX_ORIENTATION_COMPONENTS {
            return Err(ModelError::TooManyComponents {
                components: mu,
                limit: MAX_ORIENTATION_COMPONENTS,
            });
        }
        let mut classes: BTreeMap<Vec<Mark>, Vec<Vec<bool>>> = BTreeMap::new();
        for bits in 0..(1u32 << (mu - 1)) {
            let mut dirs = vec![true; mu];
            for c in 1..mu {
                dirs[c] = bits & (1 << (c - 1)) != 0;
            }
            let marks: Vec<Mark> = trace
                .boxes
                .iter()
                .map(|b| {
                    let left_down = b.left.downward == dirs[b.left.component];
                    let right_down = b.right.downward == dirs[b.right.component];
                    if left_down == right_down {
                        Mark::Parallel
                    } else {
                        Mark::Antiparallel
                    }
                })
                .collect();
            classes.entry(marks).or_default().push(dirs);
        }
        Ok(classes
            .into_iter()
            .map(|(marks, orientations)| OrientationClass { marks, orientations })
            .collect())
    }

    /// Which boxes are even and odd, the odd sign sum α, and μ.
    pub fn parity_profile(&self) -> ParityProfile {
        let mut even_boxes = Vec::new();
        let mut odd_boxes = Vec::new();
        let mut alpha = 0i64;
        for (i, &p) in self.params.iter().enumerate() {
            if p % 2 == 0 {
                even_boxes.push(i);
            } else {
                odd_boxes.push(i);
                alpha += p.signum();
            }
        }
        ParityProfile {
            even_boxes,
            odd_boxes,
            alpha,
            components: self.components(),
        }
    }

    /// The even box whose strands are left running parallel by the
    /// degree-minimizing orientation when the odd boxes cannot absorb it.
    ///
    /// Selection rule: take the even boxes of least `|p|`. If they all share
    /// one sign the first of them wins. If both signs occur, the odd sign
    /// sum α breaks the tie: α = 1 picks a negative box, anything else
    /// (including α = −1) picks a positive one.
    ///
    /// # Errors
    ///
    /// [`ModelError::NoEvenBox`] when every box is odd.
    pub fn distinguished_even_box(&self) -> Result<usize, ModelError> {
        let profile = self.parity_profile();
        let evens = &profile.even_boxes;
        if evens.is_empty() {
            return Err(ModelError::NoEvenBox);
        }
        let min_abs = evens.iter().map(|&i| self.params[i].abs()).min().expect("non-empty");
        let minima: Vec<usize> = evens
            .iter()
            .copied()
            .filter(|&i| self.params[i].abs() == min_abs)
            .collect();
        let has_pos = minima.iter().any(|&i| self.params[i] >= 0);
        let has_neg = minima.iter().any(|&i| self.params[i] < 0);
        if !(has_pos && has_neg) {
            return Ok(minima[0]);
        }
        let want_negative = profile.alpha == 1;
        Ok(minima
            .into_iter()
            .find(|&i| (self.params[i] < 0) == want_negative)
            .expect("both signs present"))
    }

    /// The orientation class whose strands run in opposite directions
    /// through every even box and in the same direction through every odd
    /// box. This is the degree-minimizing orientation when the number of
    /// odd boxes is even.
    ///
    /// # Errors
    ///
    /// [`ModelError::WrongParityShape`] when there is no even box or the
    /// odd-box count is odd (use [`Pretzel::antiparallel_except_orientation`]
    /// instead); [`ModelError::UnrealizableMarks`] if no component
    /// orientation produces the pattern (does not happen for the supported
    /// shapes, but is checked rather than assumed).
    pub fn antiparallel_even_orientation(&self) -> Result<OrientationClass, ModelError> {
        let profile = self.parity_profile();
        if profile.even_boxes.is_empty() {
            return Err(ModelError::WrongParityShape {
                reason: "needs at least one even box".into(),
            });
        }
        if profile.odd_boxes.len() % 2 != 0 {
            return Err(ModelError::WrongParityShape {
                reason: format!(
                    "needs an even number of odd boxes, found {}",
                    profile.odd_boxes.len()
                ),
            });
        }
        let marks: Vec<Mark> = self
            .params
            .iter()
            .map(|p| if p % 2 == 0 { Mark::Antiparallel } else { Mark::Parallel })
            .collect();
        self.class_with_marks(&marks)
    }

    /// The orientation class whose strands run in opposite directions
    /// through every even box except box `t` (and through no odd box). This
    /// is the degree-minimizing orientation when the number of odd boxes is
    /// odd and `t` is the [`Pretzel::distinguished_even_box`].
    ///
    /// # Errors
    ///
    /// [`ModelError::WrongParityShape`] when `p_t` is odd or the odd-box
    /// count is even; [`ModelError::UnrealizableMarks`] if no component
    /// orientation produces the pattern.
    pub fn antiparallel_except_orientation(&self, t: usize) -> Result<OrientationClass, ModelError> {
        if t >= self.boxes() || self.params[t] % 2 != 0 {
            return Err(ModelError::WrongParityShape {
                reason: format!("box {t} is not an even box of {self}"),
            });
        }
        let profile = self.parity_profile();
        if profile.odd_boxes.len() % 2 != 1 {
            return Err(ModelError::WrongParityShape {
                reason: format!(
                    "needs an odd number of odd boxes, found {}",
                    profile.odd_boxes.len()
                ),
            });
        }
        let marks: Vec<Mark> = self
            .params
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i != t && p % 2 == 0 {
                    Mark::Antiparallel
                } else {
                    Mark::Parallel
                }
            })
            .collect();
        self.class_with_marks(&marks)
    }

    /// Find the orientation class carrying exactly these marks.
    fn class_with_marks(&self, marks: &[Mark]) -> Result<OrientationClass, ModelError> {
        self.orientation_classes()?
            .into_iter()
            .find(|class| class.marks == marks)
            .ok_or_else(|| ModelError::UnrealizableMarks { marks: marks.to_vec() })
    }
}

/// Absorb a ±1 box of a three-box pretzel into its neighbours, returning an
/// isotopic parameter vector (positions preserved).
///
/// Three moves are known, tried in this order:
///
/// 1. a `−1` box flips to `+1` while the other two entries drop by 2;
/// 2. `(2l, 1, 1)` (in any arrangement) becomes `(2l+1, −1, −1)`;
/// 3. a `+1` box flips to `−1` while the other two entries grow by 2
///    (the inverse of move 1).
///
/// Every move keeps the closure isotopic, so all link invariants are
/// preserved (for links, up to re-choosing component orientations).
///
/// # Errors
///
/// [`ModelError::NoUnitMove`] unless the vector has exactly three entries,
/// one of them ±1.
///
/// # Examples
///
/// ```
/// use pretzel::model::reduce_unit_box;
///
/// assert_eq!(reduce_unit_box(&[3, -1, 5]).unwrap(), vec![1, 1, 3]);
/// assert_eq!(reduce_unit_box(&[2, -1, 5]).unwrap(), vec![0, 1, 3]);
/// assert_eq!(reduce_unit_box(&[2, 1, 1]).unwrap(), vec![3, -1, -1]);
/// ```
pub fn reduce_unit_box(params: &[i64]) -> Result<Vec<i64>, ModelError> {
    if params.len() != 3 {
        return Err(ModelError::NoUnitMove {
            reason: format!("needs exactly three boxes, found {}", params.len()),
        });
    }
    if let Some(i) = params.iter().position(|&p| p == -1) {
        let mut out = params.to_vec();
        for (j, q) in out.iter_mut().enumerate() {
            *q = if j == i { 1 } else { *q - 2 };
        }
        return Ok(out);
    }
    if let Some(e) = params.iter().position(|&p| p % 2 == 0) {
        if params.iter().enumerate().all(|(j, &p)| j == e || p == 1) {
            let mut out = vec![-1; 3];
            out[e] = params[e] + 1;
            return Ok(out);
        }
    }
    if let Some(i) = params.iter().position(|&p| p == 1) {
        let mut out = params.to_vec();
        for (j, q) in out.iter_mut().enumerate() {
            *q = if j == i { -1 } else { *q + 2 };
        }
        return Ok(out);
    }
    Err(ModelError::NoUnitMove {
        reason: format!("no ±1 box in {params:?}"),
    })
}

/// All parameter vectors reachable by the diagram symmetries: cyclic
/// rotation and order reversal (isotopies of the closure, `mirrored:
/// false`), and the entrywise negations of those (mirror images, `mirrored:
/// true`). Duplicates are removed; the identity image comes first.
pub fn symmetry_images(params: &[i64]) -> Vec<SymmetryImage> {
    let n = params.len();
    let mut out: Vec<SymmetryImage> = Vec::new();
    let mut push = |params: Vec<i64>, mirrored: bool| {
        let image = SymmetryImage { params, mirrored };
        if !out.contains(&image) {
            out.push(image);
        }
    };
    for mirrored in [false, true] {
        for r in 0..n {
            let rotated: Vec<i64> = (0..n)
                .map(|i| params[(i + r) % n])
                .map(|p| if mirrored { -p } else { p })
                .collect();
            let mut reversed = rotated.clone();
            reversed.reverse();
            push(rotated, mirrored);
            push(reversed, mirrored);
        }
    }
    out
}

/// The representative of a marked box vector under the dihedral symmetry of
/// the pretzel: cyclic rotation and order reversal are both isotopies of the
/// closure, so vectors related by them share their invariants. Returns the
/// lexicographically least of all `2n` images.
pub fn dihedral_canonical(boxes: &[MarkedBox]) -> Vec<MarkedBox> {
    let n = boxes.len();
    let mut best: Option<Vec<MarkedBox>> = None;
    let mut consider = |candidate: Vec<MarkedBox>| {
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    };
    for r in 0..n {
        let rotated: Vec<MarkedBox> = (0..n).map(|i| boxes[(i + r) % n]).collect();
        let mut reversed = rotated.clone();
        reversed.reverse();
        consider(rotated);
        consider(reversed);
    }
    best.expect("non-empty box vector")
}

impl fmt::Display for Pretzel {
    /// Knots print as `K(p₁, …, pₙ)`, links as `L(p₁, …, pₙ)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.is_knot() { 'K' } else { 'L' };
        let list = self
            .params
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{letter}({list})")
    }
}

impl FromStr for Pretzel {
    type Err = ModelError;

    /// Accepts `L(1, 2, 3)`, `K(-2,3,7)`, or a bare comma-separated list
    /// `-2,3,7`. The `K(…)` form is validated to actually be a knot.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let input = s.trim();
        let parse_err = |reason: &str| ModelError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (body, expect_knot) = match input.chars().next() {
            Some('L') | Some('K') => {
                let inner = input[1..]
                    .trim()
                    .strip_prefix('(')
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| parse_err("expected parentheses after L or K"))?;
                (inner, input.starts_with('K'))
            }
            Some(_) => (input, false),
            None => return Err(parse_err("empty input")),
        };
        let params = body
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|e| parse_err(&format!("bad twist count {:?}: {e}", part.trim())))
            })
            .collect::<Result<Vec<i64>, ModelError>>()?;
        let pretzel = Pretzel::new(params)?;
        if expect_knot && !pretzel.is_knot() {
            return Err(ModelError::NotAKnot {
                components: pretzel.components(),
            });
        }
        Ok(pretzel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pretzel(params: &[i64]) -> Pretzel {
        Pretzel::new(params.to_vec()).expect("non-empty")
    }

    #[test]
    fn component_counts() {
        // With e ≥ 1 even boxes there are e components; otherwise parity of n decides.
        assert_eq!(pretzel(&[1, 1, 1]).components(), 1); // trefoil
        assert_eq!(pretzel(&[1, 1]).components(), 2); // Hopf link
        assert_eq!(pretzel(&[2, 3]).components(), 1); // T(2,5) torus knot
        assert_eq!(pretzel(&[2, 2]).components(), 2);
        assert_eq!(pretzel(&[2, 3, 4]).components(), 2);
        assert_eq!(pretzel(&[2, 4, 6, 3]).components(), 3);
        assert_eq!(pretzel(&[0]).components(), 1); // unknot
        assert_eq!(pretzel(&[0, 0]).components(), 2); // two-component unlink
        assert_eq!(pretzel(&[3, 5, 7]).components(), 1);
        assert_eq!(pretzel(&[3, 5, 7, 9]).components(), 2);
    }

    #[test]
    fn component_count_matches_even_box_rule() {
        for n in 1..=5usize {
            for bits in 0..(1 << n) {
                let params: Vec<i64> = (0..n)
                    .map(|i| if bits & (1 << i) != 0 { 2 } else { 3 })
                    .collect();
                let p = pretzel(&params);
                let evens = p.even_boxes();
                let expected = if evens >= 1 {
                    evens
                } else if n % 2 == 1 {
                    1
                } else {
                    2
                };
                assert_eq!(p.components(), expected, "params {params:?}");
            }
        }
    }

    #[test]
    fn knot_orientation_is_unique_and_all_odd_knots_are_antiparallel() {
        let classes = pretzel(&[1, 1, 1]).orientation_classes().unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].marks, vec![Mark::Antiparallel; 3]);

        let classes = pretzel(&[3, 5, 7]).orientation_classes().unwrap();
        assert_eq!(classes[0].marks, vec![Mark::Antiparallel; 3]);
    }

    #[test]
    fn single_even_box_knots_are_parallel_everywhere_except_nothing() {
        // One even box, rest odd, n even: all boxes parallel.
        let classes = pretzel(&[2, 3]).orientation_classes().unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].marks, vec![Mark::Parallel; 2]);

        // One even box, rest odd, n odd: the even box antiparallel, odds parallel.
        let classes = pretzel(&[2, 1, 1]).orientation_classes().unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(
            classes[0].marks,
            vec![Mark::Antiparallel, Mark::Parallel, Mark::Parallel]
        );
    }

    #[test]
    fn hopf_link_has_two_classes() {
        let classes = pretzel(&[1, 1]).orientation_classes().unwrap();
        assert_eq!(classes.len(), 2);
        let marks: Vec<_> = classes.iter().map(|c| c.marks.clone()).collect();
        assert!(marks.contains(&vec![Mark::Parallel; 2]));
        assert!(marks.contains(&vec![Mark::Antiparallel; 2]));
        for class in &classes {
            assert_eq!(class.orientations.len(), 1);
            assert!(class.orientations[0][0], "component 0 direction is fixed");
        }
    }

    #[test]
    fn orientation_class_counts_cover_all_assignments() {
        for params in [vec![2, 2], vec![2, 4, 6], vec![2, 3, 4], vec![3, 3, 3, 3]] {
            let p = pretzel(&params);
            let mu = p.components();
            let classes = p.orientation_classes().unwrap();
            let total: usize = classes.iter().map(|c| c.orientations.len()).sum();
            assert_eq!(total, 1 << (mu - 1), "params {params:?}");
        }
    }

    #[test]
    fn dihedral_canonical_identifies_rotations_and_reversals() {
        let a = [(2, Mark::Parallel), (3, Mark::Antiparallel), (5, Mark::Parallel)];
        let rotated = [(3, Mark::Antiparallel), (5, Mark::Parallel), (2, Mark::Parallel)];
        let reversed = [(5, Mark::Parallel), (3, Mark::Antiparallel), (2, Mark::Parallel)];
        assert_eq!(dihedral_canonical(&a), dihedral_canonical(&rotated));
        assert_eq!(dihedral_canonical(&a), dihedral_canonical(&reversed));
        let other = [(2, Mark::Parallel), (5, Mark::Parallel), (3, Mark::Antiparallel)];
        assert_eq!(dihedral_canonical(&a), dihedral_canonical(&other));
    }

    #[test]
    fn parsing_accepts_wrappers_and_bare_lists() {
        assert_eq!("L(1, 2, 3)".parse::<Pretzel>().unwrap().params(), &[1, 2, 3]);
        assert_eq!("K(-2,3,7)".parse::<Pretzel>().unwrap().params(), &[-2, 3, 7]);
        assert_eq!("-2, 3, 7".parse::<Pretzel>().unwrap().params(), &[-2, 3, 7]);
        assert_eq!("0".parse::<Pretzel>().unwrap().params(), &[0]);
    }

    #[test]
    fn parsing_rejects_bad_input() {
        assert!("".parse::<Pretzel>().is_err());
        assert!("L()".parse::<Pretzel>().is_err());
        assert!("L(1,".parse::<Pretzel>().is_err());
        assert!("K(1,1)".parse::<Pretzel>().is_err(), "Hopf link is not a knot");
        assert!("L(1,x)".parse::<Pretzel>().is_err());
    }

    #[test]
    fn display_uses_knot_or_link_letter() {
        assert_eq!(pretzel(&[2, 3]).to_string(), "K(2, 3)");
        assert_eq!(pretzel(&[1, 1]).to_string(), "L(1, 1)");
        assert_eq!(pretzel(&[-2, 3, 7]).to_string(), "K(-2, 3, 7)");
    }

    #[test]
    fn parity_profile_counts_and_signs() {
        let p = pretzel(&[-2, 3, 7]).parity_profile();
        assert_eq!(p.even_boxes, vec![0]);
        assert_eq!(p.odd_boxes, vec![1, 2]);
        assert_eq!(p.alpha, 2);
        assert_eq!(p.components, 1);

        let p = pretzel(&[3, 5, 7, 9]).parity_profile();
        assert_eq!(p.even_boxes, Vec::<usize>::new());
        assert_eq!(p.alpha, 4);
        assert_eq!(p.components, 2);

        let p = pretzel(&[2, 4, 3]).parity_profile();
        assert_eq!(p.even_boxes, vec![0, 1]);
        assert_eq!(p.alpha, 1);
        assert_eq!(p.components, 2);
    }

    #[test]
    fn distinguished_even_box_follows_the_selection_rule() {
        // Unique minimum wins regardless of sign.
        assert_eq!(pretzel(&[-2, 4, 3]).distinguished_even_box().unwrap(), 0);
        // Tie across signs with α = 2: pick the positive box.
        assert_eq!(pretzel(&[2, -2, 3, 5]).distinguished_even_box().unwrap(), 0);
        assert_eq!(pretzel(&[-2, 2, 3, 5]).distinguished_even_box().unwrap(), 1);
        // Tie across signs with α = 1: pick the negative box.
        assert_eq!(pretzel(&[2, -2, 3]).distinguished_even_box().unwrap(), 1);
        // Tie across signs with α = −1: pick the positive box.
        assert_eq!(pretzel(&[-2, 2, -3]).distinguished_even_box().unwrap(), 1);
        // Same-signed minima: first position.
        assert_eq!(pretzel(&[-4, -2, -2, 3]).distinguished_even_box().unwrap(), 1);
        assert_eq!(
            pretzel(&[3, 5, 7]).distinguished_even_box(),
            Err(ModelError::NoEvenBox)
        );
    }

    #[test]
    fn orientation_builders_produce_the_documented_marks() {
        use Mark::{Antiparallel as A, Parallel as P};
        let class = pretzel(&[2, 4, 3, 5]).antiparallel_even_orientation().unwrap();
        assert_eq!(class.marks, vec![A, A, P, P]);
        let class = pretzel(&[2, 4]).antiparallel_even_orientation().unwrap();
        assert_eq!(class.marks, vec![A, A]);
        let class = pretzel(&[2, 3, 5, 4]).antiparallel_even_orientation().unwrap();
        assert_eq!(class.marks, vec![A, P, P, A]);

        let class = pretzel(&[2, 3]).antiparallel_except_orientation(0).unwrap();
        assert_eq!(class.marks, vec![P, P]);
        let class = pretzel(&[2, 4, 3]).antiparallel_except_orientation(1).unwrap();
        assert_eq!(class.marks, vec![A, P, P]);

        // Parity preconditions are enforced.
        assert!(matches!(
            pretzel(&[2, 3, 5]).antiparallel_except_orientation(1),
            Err(ModelError::WrongParityShape { .. })
        ));
        assert!(matches!(
            pretzel(&[2, 4, 3]).antiparallel_even_orientation(),
            Err(ModelError::WrongParityShape { .. })
        ));
        assert!(matches!(
            pretzel(&[3, 5, 7]).antiparallel_even_orientation(),
            Err(ModelError::WrongParityShape { .. })
        ));
    }

    #[test]
    fn orientation_builders_are_realizable_on_a_grid() {
        // Every in-precondition parameter vector must admit its class.
        let values = [-4i64, -3, -2, 2, 3, 4];
        for n in 2..=4usize {
            let mut idx = vec![0usize; n];
            loop {
                let params: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
                let p = pretzel(&params);
                let odd = p.parity_profile().odd_boxes.len();
                let evens = p.even_boxes();
                if evens >= 1 {
                    if odd % 2 == 0 {
                        p.antiparallel_even_orientation().unwrap_or_else(|e| {
                            panic!("opposite-evens orientation failed for {params:?}: {e}")
                        });
                    } else {
                        let t = p.distinguished_even_box().unwrap();
                        p.antiparallel_except_orientation(t).unwrap_or_else(|e| {
                            panic!("except-box orientation failed for {params:?}: {e}")
                        });
                    }
                }
                // Advance the odometer.
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < values.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn unit_box_moves_match_their_documented_images() {
        assert_eq!(reduce_unit_box(&[3, -1, 5]).unwrap(), vec![1, 1, 3]);
        assert_eq!(reduce_unit_box(&[2, -1, 5]).unwrap(), vec![0, 1, 3]);
        assert_eq!(reduce_unit_box(&[2, 1, 1]).unwrap(), vec![3, -1, -1]);
        assert_eq!(reduce_unit_box(&[4, 1, 1]).unwrap(), vec![5, -1, -1]);
        assert_eq!(reduce_unit_box(&[1, 1, 2]).unwrap(), vec![-1, -1, 3]);
        // The inverse move fires when only generic +1 boxes are present.
        assert_eq!(reduce_unit_box(&[3, 1, 5]).unwrap(), vec![5, -1, 7]);
        assert!(matches!(
            reduce_unit_box(&[3, 5, 7]),
            Err(ModelError::NoUnitMove { .. })
        ));
        assert!(matches!(
            reduce_unit_box(&[1, 1]),
            Err(ModelError::NoUnitMove { .. })
        ));
    }

    #[test]
    fn symmetry_images_cover_rotations_reversals_and_mirrors() {
        let images = symmetry_images(&[1, 2, 3]);
        let plain: Vec<&Vec<i64>> = images
            .iter()
            .filter(|im| !im.mirrored)
            .map(|im| &im.params)
            .collect();
        assert!(plain.contains(&&vec![2, 3, 1]));
        assert!(plain.contains(&&vec![3, 2, 1]));
        assert_eq!(plain.len(), 6, "all six dihedral images of a 3-vector");
        assert!(images
            .iter()
            .any(|im| im.mirrored && im.params == vec![-1, -2, -3]));
        assert_eq!(images.len(), 12);

        let singleton = symmetry_images(&[5]);
        assert_eq!(singleton.len(), 2);
        assert_eq!(singleton[0].params, vec![5]);
        assert!(!singleton[0].mirrored);
    }
}

//! The diagram-level oracle: explicit oriented planar diagrams of links,
//! with brute-force evaluation of the Conway polynomial (skein resolution
//! over descending diagrams), the Jones polynomial (Kauffman bracket state
//! sum), canonical Seifert data, and PD-code serialization.
//!
//! Everything here works on the diagram alone — crossings, arcs and strand
//! directions — and shares no code with the closed formulas it is used to
//! verify.
//!
//! # Representation
//!
//! A crossing occupies a small square with four *slots* at its corners,
//! numbered `0 = NW`, `1 = NE`, `2 = SW`, `3 = SE`; slot `s` of crossing `c`
//! is *port* `4c + s`. A strand entering at slot `s` leaves at the opposite
//! corner `3 − s`. One of the two diagonals carries the over-strand
//! ([`Over`]). Arcs between crossings form a perfect matching on ports
//! (`mate`), and crossingless circles are counted separately. Orientations
//! are per-port `inward` flags: `true` where a strand flows into a crossing.
//!
//! # Conventions
//!
//! - Crossing signs are right-handed: a crossing is positive when rotating
//!   the over-strand direction 90° counterclockwise yields the under-strand
//!   direction.
//! - A box with positive twist parameter places its over-strand on the
//!   [`Over::NeSw`] diagonal. This choice is pinned by a fixed Jones value:
//!   the `(−2, 3, 3)` pretzel (the `(3,4)` torus knot) must come out as
//!   `−t^8 + t^5 + t^3`, not its mirror.

use crate::model::{Mark, Pretzel};
use crate::poly::{APoly, TPoly, ZPoly};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

/// Which diagonal of a crossing carries the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    /// The strand through the north-west and south-east slots is on top.
    NwSe,
    /// The strand through the north-east and south-west slots is on top.
    NeSw,
}

impl Over {
    /// The other diagonal.
    pub fn flipped(self) -> Over {
        match self {
            Over::NwSe => Over::NeSw,
            Over::NeSw => Over::NwSe,
        }
    }
}

/// The over-strand diagonal used for every crossing of a positive-parameter
/// twist box (negative boxes use the other diagonal). See the module notes
/// on conventions.
pub(crate) const POSITIVE_TWIST_OVER: Over = Over::NeSw;

/// Errors from diagram construction or evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    /// The diagram has more crossings than the configured budget allows.
    #[error("diagram has {crossings} crossings, exceeding the budget of {budget}")]
    CrossingBudget {
        /// Crossings in the diagram.
        crossings: usize,
        /// Configured maximum.
        budget: usize,
    },
    /// The skein resolution visited more nodes than the configured budget.
    #[error("skein evaluation exceeded its budget of {budget} nodes")]
    SkeinBudget {
        /// Configured maximum node count.
        budget: u64,
    },
    /// A PD code failed validation.
    #[error("invalid PD code: {0}")]
    InvalidPd(String),
}

/// Resource limits for the skein-resolution Conway oracle.
#[derive(Clone, Copy, Debug)]
pub struct SkeinOptions {
    /// Refuse diagrams with more live crossings than this.
    pub max_crossings: usize,
    /// Abort after this many evaluation nodes.
    pub max_nodes: u64,
}

impl Default for SkeinOptions {
    fn default() -> Self {
        SkeinOptions {
            max_crossings: 48,
            max_nodes: 4_000_000,
        }
    }
}

/// Canonical Seifert-surface data of an oriented diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    /// Seifert circles produced by the oriented smoothing of every crossing.
    pub circles: usize,
    /// Crossings in the diagram.
    pub crossings: usize,
    /// Link components.
    pub components: usize,
    /// Genus of the canonical Seifert surface, summed over connected pieces
    /// of the diagram: each piece contributes `(2 − V + E − μ) / 2`.
    pub genus: i64,
}

/// A PD-style serialization of an oriented diagram: one `[a, b, c, d]`
/// quadruple per crossing (edge ids counterclockwise from the incoming
/// under-strand edge) plus the crossing signs that fix the over-strand
/// direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    /// Edge quadruples, counterclockwise from the incoming under edge.
    pub crossings: Vec<[u32; 4]>,
    /// Right-handed crossing signs, aligned with `crossings`.
    pub signs: Vec<i8>,
}

/// An oriented link diagram.
///
/// Crossings are never reindexed during evaluation; removed crossings are
/// tombstoned through `alive` and their ports ignored.
#[derive(Clone, Debug)]
pub struct Diagram {
    over: Vec<Over>,
    alive: Vec<bool>,
    /// Perfect matching on live ports given by the arcs.
    mate: Vec<u32>,
    /// Whether the strand flows into the crossing at this port.
    inward: Vec<bool>,
    /// Closed strand circles that no longer touch any crossing.
    free_circles: u32,
}

/// Slot index (0–3) of a port.
fn slot(port: u32) -> u8 {
    (port % 4) as u8
}

/// Crossing index of a port.
fn crossing(port: u32) -> usize {
    (port / 4) as usize
}

/// The port where a strand entering at `port` leaves its crossing.
fn pass(port: u32) -> u32 {
    4 * (port / 4) + (3 - port % 4)
}

/// The diagonal a slot lies on.
fn diagonal(slot: u8) -> Over {
    match slot {
        0 | 3 => Over::NwSe,
        1 | 2 => Over::NeSw,
        _ => unreachable!("slots are 0..4"),
    }
}

/// Unit direction (x east, y north) of a strand entering at `slot` and
/// leaving at the opposite corner.
fn direction(slot: u8) -> (i8, i8) {
    match slot {
        0 => (1, -1),  // NW → SE
        1 => (-1, -1), // NE → SW
        2 => (1, 1),   // SW → NE
        3 => (-1, 1),  // SE → NW
        _ => unreachable!("slots are 0..4"),
    }
}

impl Diagram {
    // -----------------------------------------------------------------
    // Construction
    // -----------------------------------------------------------------

    /// Build the standard diagram of a pretzel link under one orientation.
    ///
    /// `dirs` assigns each link component a direction (`true` keeps the
    /// canonical traversal direction used by
    /// [`Pretzel::orientation_classes`]); it must have one entry per
    /// component. Also returns the per-box strand marks this orientation
    /// induces, read off the diagram's strand directions.
    ///
    /// The diagram has `Σ|p_i|` crossings: box `i` is a vertical stack of
    /// `|p_i|` crossings whose handedness is the sign of `p_i`, and boxes
    /// are closed by arcs joining neighbouring tops and bottoms cyclically.
    ///
    /// # Panics
    ///
    /// Panics when `dirs.len()` differs from the component count.
    pub fn from_pretzel(pretzel: &Pretzel, dirs: &[bool]) -> (Diagram, Vec<Mark>) {
        let trace = pretzel.strand_trace();
        assert_eq!(
            dirs.len(),
            trace.component_count,
            "one direction per link component"
        );
        let params = pretzel.params();
        let n = params.len();

        // Crossing layout: box i gets |p_i| consecutive crossings.
        let mut base = Vec::with_capacity(n);
        let mut total = 0usize;
        for &p in params {
            base.push(total);
            total += p.unsigned_abs() as usize;
        }
        let mut over = Vec::with_capacity(total);
        for &p in params {
            let o = if p >= 0 {
                POSITIVE_TWIST_OVER
            } else {
                POSITIVE_TWIST_OVER.flipped()
            };
            over.extend((0..p.unsigned_abs()).map(|_| o));
        }

        let port = |b: usize, j: usize, s: u8| -> u32 { (4 * (base[b] + j)) as u32 + u32::from(s) };
        let mut mate = vec![u32::MAX; 4 * total];
        fn link(mate: &mut [u32], a: u32, b: u32) {
            mate[a as usize] = b;
            mate[b as usize] = a;
        }

        // Internal stack arcs: SW_j–NW_{j+1} and SE_j–NE_{j+1} within a box.
        for (i, &p) in params.iter().enumerate() {
            let m = p.unsigned_abs() as usize;
            for j in 0..m.saturating_sub(1) {
                link(&mut mate, port(i, j, 2), port(i, j + 1, 0));
                link(&mut mate, port(i, j, 3), port(i, j + 1, 1));
            }
        }

        // Closure arcs, resolved through the virtual box corners so that
        // zero-twist boxes act as plain wires. Virtual node v(i,k) with
        // k = 0 TL, 1 TR, 2 BL, 3 BR; port nodes come after them.
        let virt = 4 * n;
        let node_of_port = |p: u32| virt + p as usize;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); virt + 4 * total];
        let edge = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for (i, &p) in params.iter().enumerate() {
            let m = p.unsigned_abs() as usize;
            let (tl, tr, bl, br) = (4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
            if m == 0 {
                edge(tl, bl, &mut adj);
                edge(tr, br, &mut adj);
            } else {
                edge(tl, node_of_port(port(i, 0, 0)), &mut adj);
                edge(tr, node_of_port(port(i, 0, 1)), &mut adj);
                edge(bl, node_of_port(port(i, m - 1, 2)), &mut adj);
                edge(br, node_of_port(port(i, m - 1, 3)), &mut adj);
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            edge(4 * i + 1, 4 * j, &mut adj); // TR_i ~ TL_j
            edge(4 * i + 3, 4 * j + 2, &mut adj); // BR_i ~ BL_j
        }

        // Walk from every boundary port through virtual nodes to its mate;
        // count purely virtual cycles as free circles.
        let mut visited_virt = vec![false; virt];
        for start in 0..(4 * total) as u32 {
            if mate[start as usize] != u32::MAX || adj[node_of_port(start)].is_empty() {
                continue;
            }
            let mut prev = node_of_port(start);
            let mut cur = adj[prev][0];
            loop {
                if cur >= virt {
                    link(&mut mate, start, (cur - virt) as u32);
                    break;
                }
                visited_virt[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
        }
        let mut free_circles = 0u32;
        for start in 0..virt {
            if visited_virt[start] || adj[start].is_empty() {
                continue;
            }
            let mut prev = start;
            let mut cur = adj[start][0];
            visited_virt[start] = true;
            while cur != start {
                debug_assert!(cur < virt, "port reached from an unvisited virtual cycle");
                visited_virt[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            free_circles += 1;
        }
        debug_assert!(mate.iter().all(|&m| m != u32::MAX || total == 0));

        // Orientations: each descending strand of box i alternates entry
        // slots NW, NE, NW, … (left strand) or NE, NW, … (right strand).
        // The model's strand trace says which component each strand belongs
        // to and whether its canonical direction is downward.
        let mut inward = vec![false; 4 * total];
        let mut marks = Vec::with_capacity(n);
        for (i, &p) in params.iter().enumerate() {
            let m = p.unsigned_abs() as usize;
            let bp = trace.boxes[i];
            let left_down = bp.left.downward == dirs[bp.left.component];
            let right_down = bp.right.downward == dirs[bp.right.component];
            marks.push(if left_down == right_down {
                Mark::Parallel
            } else {
                Mark::Antiparallel
            });
            for j in 0..m {
                // Left strand (entered at the box top-left) meets crossing j
                // at slot NW for even j, NE for odd j; the right strand at
                // the other top slot. Downward strands enter at top slots.
                let (left_top, right_top) = if j % 2 == 0 { (0u8, 1u8) } else { (1u8, 0u8) };
                let assign = |top: u8, down: bool, inward: &mut Vec<bool>| {
                    let enter = if down { top } else { 3 - top };
                    inward[port(i, j, enter) as usize] = true;
                };
                assign(left_top, left_down, &mut inward);
                assign(right_top, right_down, &mut inward);
            }
        }

        let diagram = Diagram {
            over,
            alive: vec![true; total],
            mate,
            inward,
            free_circles,
        };
        debug_assert!(diagram.orientation_is_consistent());
        (diagram, marks)
    }

    /// The diagram of the mirror image: every crossing switched.
    pub fn mirrored(&self) -> Diagram {
        let mut d = self.clone();
        for o in &mut d.over {
            *o = o.flipped();
        }
        d
    }

    // -----------------------------------------------------------------
    // Basic structure
    // -----------------------------------------------------------------

    /// Number of live crossings.
    pub fn crossing_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Crossingless closed circles in the diagram.
    pub fn free_circles(&self) -> u32 {
        self.free_circles
    }

    fn live_crossings(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.iter().enumerate().filter(|(_, &a)| a).map(|(c, _)| c)
    }

    fn live_ports(&self) -> impl Iterator<Item = u32> + '_ {
        self.live_crossings().flat_map(|c| (4 * c as u32)..(4 * c as u32 + 4))
    }

    fn is_live_port(&self, p: u32) -> bool {
        self.alive[crossing(p)]
    }

    /// Whether the strand through `port` is the over-strand at its crossing.
    fn is_over_port(&self, p: u32) -> bool {
        diagonal(slot(p)) == self.over[crossing(p)]
    }

    /// Every arc must join an outgoing port to an incoming one.
    fn orientation_is_consistent(&self) -> bool {
        self.live_ports()
            .all(|p| self.inward[p as usize] != self.inward[self.mate[p as usize] as usize])
    }

    /// Number of link components (strand cycles plus free circles).
    pub fn components(&self) -> usize {
        let mut seen: HashSet<u32> = HashSet::new();
        let mut count = self.free_circles as usize;
        for start in self.live_ports() {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut p = start;
            loop {
                seen.insert(p);
                let q = pass(p);
                seen.insert(q);
                p = self.mate[q as usize];
                if p == start {
                    break;
                }
            }
        }
        count
    }

    /// Connected pieces of the diagram: crossing clusters joined by arcs,
    /// plus one piece per free circle.
    fn pieces(&self) -> usize {
        let live: Vec<usize> = self.live_crossings().collect();
        if live.is_empty() {
            return self.free_circles as usize;
        }
        let index: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut uf = UnionFind::new(live.len());
        for p in self.live_ports() {
            let q = self.mate[p as usize];
            uf.union(index[&crossing(p)] as u32, index[&crossing(q)] as u32);
        }
        uf.component_count() + self.free_circles as usize
    }

    /// The right-handed sign of a live crossing under the diagram's
    /// orientation.
    pub fn crossing_sign(&self, c: usize) -> i8 {
        debug_assert!(self.alive[c]);
        let base = 4 * c as u32;
        let over_in = (0..4)
            .map(|s| base + s)
            .find(|&p| self.inward[p as usize] && self.is_over_port(p))
            .expect("one inward over port");
        let under_in = (0..4)
            .map(|s| base + s)
            .find(|&p| self.inward[p as usize] && !self.is_over_port(p))
            .expect("one inward under port");
        let (ox, oy) = direction(slot(over_in));
        let (ux, uy) = direction(slot(under_in));
        let cross = i16::from(ox) * i16::from(uy) - i16::from(ux) * i16::from(oy);
        if cross > 0 {
            1
        } else {
            -1
        }
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.live_crossings().map(|c| i64::from(self.crossing_sign(c))).sum()
    }

    // -----------------------------------------------------------------
    // Local moves
    // -----------------------------------------------------------------

    /// Switch a crossing: exchange which strand is on top.
    fn switch(&mut self, c: usize) {
        debug_assert!(self.alive[c]);
        self.over[c] = self.over[c].flipped();
    }

    /// Remove the crossings in `dead`, reconnecting strands through the
    /// port pairing `pairing(c)` inside each. Strand chains that stay
    /// entirely within the dead region become free circles.
    fn eliminate(&mut self, dead: &[usize], pairing: impl Fn(usize) -> [(u8, u8); 2]) {
        for &c in dead {
            debug_assert!(self.alive[c]);
            self.alive[c] = false;
        }
        let ipartner = |p: u32| -> u32 {
            let c = crossing(p);
            let s = slot(p);
            let [(a1, b1), (a2, b2)] = pairing(c);
            let partner = match s {
                _ if s == a1 => b1,
                _ if s == b1 => a1,
                _ if s == a2 => b2,
                _ if s == b2 => a2,
                _ => unreachable!("pairing covers all four slots"),
            };
            4 * c as u32 + u32::from(partner)
        };

        // Reroute strands that enter the dead region from live arcs. Dead
        // ports' mate entries are left untouched, so they can be read while
        // chaining through the region.
        let mut handled: HashSet<u32> = HashSet::new();
        for &c in dead {
            for s in 0..4u32 {
                let x = 4 * c as u32 + s;
                let u = self.mate[x as usize];
                if !self.is_live_port(u) {
                    continue;
                }
                let mut d = x;
                loop {
                    handled.insert(d);
                    let e = ipartner(d);
                    handled.insert(e);
                    let m = self.mate[e as usize];
                    if self.is_live_port(m) {
                        self.mate[u as usize] = m;
                        self.mate[m as usize] = u;
                        break;
                    }
                    d = m;
                }
            }
        }

        // Whatever dead ports remain lie on purely internal cycles.
        for &c in dead {
            for s in 0..4u32 {
                let start = 4 * c as u32 + s;
                if handled.contains(&start) {
                    continue;
                }
                let mut d = start;
                loop {
                    handled.insert(d);
                    let e = ipartner(d);
                    handled.insert(e);
                    let m = self.mate[e as usize];
                    if m == start {
                        break;
                    }
                    d = m;
                }
                self.free_circles += 1;
            }
        }
    }

    /// Pass-through pairing: strands keep crossing the square diagonally.
    /// Used when a crossing is removed by a Reidemeister move.
    fn pass_pairing(_c: usize) -> [(u8, u8); 2] {
        [(0, 3), (1, 2)]
    }

    /// Replace a crossing by its oriented (Seifert) smoothing: each incoming
    /// strand exits where the *other* strand would have, keeping directions
    /// consistent.
    fn smooth_oriented(&mut self, c: usize) {
        debug_assert!(self.alive[c]);
        let base = 4 * c as u32;
        let ins: Vec<u8> = (0..4u8)
            .filter(|&s| self.inward[(base + u32::from(s)) as usize])
            .collect();
        debug_assert_eq!(ins.len(), 2);
        let (a, b) = (ins[0], ins[1]);
        debug_assert_ne!(a, 3 - b, "incoming ports sit on different diagonals");
        self.eliminate(&[c], move |_| [(a, 3 - b), (b, 3 - a)]);
    }

    /// Remove kinks (a crossing with an arc joining two of its own ports on
    /// different diagonals) and cancelling bigons (two crossings joined by
    /// two arcs, the same strand on top at both) until none remain. Both
    /// moves preserve every link invariant computed here.
    fn reduce(&mut self) {
        'outer: loop {
            let live: Vec<usize> = self.live_crossings().collect();
            // Kinks.
            for &c in &live {
                for s in 0..4u32 {
                    let x = 4 * c as u32 + s;
                    let y = self.mate[x as usize];
                    if crossing(y) == c && y != pass(x) {
                        self.eliminate(&[c], Self::pass_pairing);
                        continue 'outer;
                    }
                }
            }
            // Cancelling bigons.
            for &c in &live {
                for s1 in 0..4u8 {
                    let x1 = 4 * c as u32 + u32::from(s1);
                    let y1 = self.mate[x1 as usize];
                    let d = crossing(y1);
                    if d == c || !self.alive[d] {
                        continue;
                    }
                    // The same strand must be on top at both ends of the arc.
                    if self.is_over_port(x1) != self.is_over_port(y1) {
                        continue;
                    }
                    for s2 in 0..4u8 {
                        if s2 == s1 || s2 == 3 - s1 {
                            continue;
                        }
                        let x2 = 4 * c as u32 + u32::from(s2);
                        let y2 = self.mate[x2 as usize];
                        if crossing(y2) != d || slot(y2) == 3 - slot(y1) {
                            continue;
                        }
                        self.eliminate(&[c, d], Self::pass_pairing);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    // -----------------------------------------------------------------
    // Canonical serialization (memo keys, stability tests)
    // -----------------------------------------------------------------

    /// Serialize the diagram by walking every component along its
    /// orientation, labeling crossings in first-visit order. The key
    /// reconstructs the diagram up to crossing relabeling: per passage it
    /// records the visit label, entry slot and over-diagonal, so equal keys
    /// imply isomorphic oriented diagrams.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        let mut labels: HashMap<usize, u32> = HashMap::new();
        let mut seen: HashSet<u32> = HashSet::new();
        for start in self.live_ports() {
            if seen.contains(&start) {
                continue;
            }
            // Walk from this component's least port, starting at an entry
            // (an exit port's arc leads to the next entry).
            let entry = if self.inward[start as usize] {
                start
            } else {
                self.mate[start as usize]
            };
            let mut e = entry;
            loop {
                seen.insert(e);
                seen.insert(pass(e));
                let c = crossing(e);
                let next_label = labels.len() as u32;
                let label = *labels.entry(c).or_insert(next_label);
                key.extend_from_slice(&label.to_le_bytes());
                key.push(slot(e));
                key.push(match self.over[c] {
                    Over::NwSe => 0,
                    Over::NeSw => 1,
                });
                e = self.mate[pass(e) as usize];
                if e == entry {
                    break;
                }
            }
            key.push(0xFF); // component separator
        }
        key.extend_from_slice(&self.free_circles.to_le_bytes());
        key
    }

    // -----------------------------------------------------------------
    // Conway polynomial by skein resolution
    // -----------------------------------------------------------------

    /// The Conway polynomial `∇(z)` of the oriented diagram, by resolving
    /// skein triples toward descending diagrams.
    ///
    /// At each step the first "bad" crossing — the first crossing met at an
    /// under-passage when walking all components from canonical basepoints —
    /// is switched (moving the diagram closer to a descending one, which is
    /// an unlink) and smoothed (removing a crossing), per
    /// `∇₊ − ∇₋ = z·∇₀`. Kink and bigon reductions keep intermediate
    /// diagrams small, and results are memoized on canonical keys.
    ///
    /// Never returns a wrong answer: if the budget is exhausted the error
    /// says so.
    pub fn conway_skein(&self, opts: &SkeinOptions) -> Result<ZPoly, DiagramError> {
        let crossings = self.crossing_count();
        if crossings > opts.max_crossings {
            return Err(DiagramError::CrossingBudget {
                crossings,
                budget: opts.max_crossings,
            });
        }
        let memo: Mutex<HashMap<Vec<u8>, ZPoly>> = Mutex::new(HashMap::new());
        let nodes = AtomicU64::new(0);
        skein_value(self.clone(), &memo, &nodes, opts)
    }

    /// Locate the first crossing whose first passage (walking all components
    /// from their least ports, along the orientation) goes under.
    fn first_bad_crossing(&self) -> Option<usize> {
        let mut first_visit: HashSet<usize> = HashSet::new();
        let mut seen: HashSet<u32> = HashSet::new();
        for start in self.live_ports() {
            if seen.contains(&start) {
                continue;
            }
            let entry = if self.inward[start as usize] {
                start
            } else {
                self.mate[start as usize]
            };
            let mut e = entry;
            loop {
                seen.insert(e);
                seen.insert(pass(e));
                let c = crossing(e);
                if first_visit.insert(c) && !self.is_over_port(e) {
                    return Some(c);
                }
                e = self.mate[pass(e) as usize];
                if e == entry {
                    break;
                }
            }
        }
        None
    }

    // -----------------------------------------------------------------
    // Kauffman bracket and Jones polynomial
    // -----------------------------------------------------------------

    /// The Kauffman bracket `⟨D⟩` in the variable `A`, normalized to 1 on
    /// the unknot, by brute-force enumeration of all `2^E` smoothing states
    /// (split in parallel near the top of the recursion).
    pub fn kauffman_bracket(&self, max_crossings: usize) -> Result<APoly, DiagramError> {
        let live: Vec<usize> = self.live_crossings().collect();
        if live.len() > max_crossings {
            return Err(DiagramError::CrossingBudget {
                crossings: live.len(),
                budget: max_crossings,
            });
        }
        let k = live.len();
        let delta: APoly = APoly::monomial(2, -1) + APoly::monomial(-2, -1);
        if k == 0 {
            // No crossings: δ^{circles−1} directly.
            return Ok(delta.pow(self.free_circles.saturating_sub(1) as u32));
        }
        // Compact the live ports to 0..4k and join them along the arcs.
        let index: HashMap<usize, u32> = live.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let compact = |p: u32| -> u32 { 4 * index[&crossing(p)] + u32::from(slot(p)) };
        let mut uf = UnionFind::new(4 * k);
        for p in self.live_ports() {
            let q = self.mate[p as usize];
            uf.union(compact(p), compact(q));
        }
        // (A, B) smoothing pairings per crossing, as compact ports.
        let lift = |i: usize, pp: [(u8, u8); 2]| -> [(u32, u32); 2] {
            let b = 4 * i as u32;
            [
                (b + u32::from(pp[0].0), b + u32::from(pp[0].1)),
                (b + u32::from(pp[1].0), b + u32::from(pp[1].1)),
            ]
        };
        let pairings: Vec<([(u32, u32); 2], [(u32, u32); 2])> = live
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                (
                    lift(i, a_pairing(self.over[c])),
                    lift(i, b_pairing(self.over[c])),
                )
            })
            .collect();

        // counts[a_minus_b + k][loops] = number of states with that A−B
        // exponent difference and loop count.
        let mut counts = vec![vec![0u64; 4 * k + 2]; 2 * k + 1];
        bracket_states(&mut uf, &pairings, 0, 0, 0, k, &mut counts);

        let mut delta_pows = vec![APoly::one()];
        let mut bracket = APoly::zero();
        for (ai, row) in counts.iter().enumerate() {
            let a_minus_b = ai as i64 - k as i64;
            for (loops, count) in row.iter().enumerate() {
                if *count == 0 {
                    continue;
                }
                let circles = loops as u64 + u64::from(self.free_circles);
                debug_assert!(circles >= 1, "every state of a nonempty diagram has a circle");
                while delta_pows.len() <= (circles - 1) as usize {
                    let next = delta_pows.last().expect("nonempty") * &delta;
                    delta_pows.push(next);
                }
                let term = APoly::monomial(a_minus_b, BigInt::from(*count));
                bracket += &(&term * &delta_pows[(circles - 1) as usize]);
            }
        }
        Ok(bracket)
    }

    /// The Jones polynomial `V(t)` of the oriented diagram, from the
    /// Kauffman bracket with writhe normalization `V = (−A)^{−3w}⟨D⟩` and
    /// the substitution `t = A^{−4}`.
    pub fn kauffman_jones(&self, max_crossings: usize) -> Result<TPoly, DiagramError> {
        let bracket = self.kauffman_bracket(max_crossings)?;
        let w = self.writhe();
        let sign = if w % 2 == 0 { 1 } else { -1 };
        let shifted = bracket.shifted_num(-6 * w).scaled(sign);
        // A-exponent a ↦ t-exponent −a/4; every numerator is divisible by 4.
        let jones = shifted.map_exponents(|num| {
            assert!(num % 4 == 0, "normalized bracket exponents are multiples of 4");
            -num / 4
        });
        Ok(jones.cast::<'t'>())
    }

    // -----------------------------------------------------------------
    // Seifert data
    // -----------------------------------------------------------------

    /// Seifert circles, crossing count and the genus of the canonical
    /// Seifert surface obtained by oriented-smoothing every crossing,
    /// computed per connected piece of the diagram and summed.
    pub fn seifert_data(&self) -> SeifertData {
        let live: Vec<usize> = self.live_crossings().collect();
        let crossings = live.len();
        let components = self.components();

        // Piece decomposition over crossings.
        let index: HashMap<usize, u32> = live.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut uf = UnionFind::new(crossings);
        for p in self.live_ports() {
            let q = self.mate[p as usize];
            uf.union(index[&crossing(p)], index[&crossing(q)]);
        }

        // Seifert circles: cycles of (arc mate) ∘ (oriented smoothing mate).
        let smate = |p: u32| -> u32 {
            let c = crossing(p);
            let base = 4 * c as u32;
            let ins: Vec<u8> = (0..4u8)
                .filter(|&s| self.inward[(base + u32::from(s)) as usize])
                .collect();
            let (a, b) = (ins[0], ins[1]);
            let s = slot(p);
            let partner = match s {
                _ if s == a => 3 - b,
                _ if s == 3 - b => a,
                _ if s == b => 3 - a,
                _ => b,
            };
            base + u32::from(partner)
        };
        let mut seen: HashSet<u32> = HashSet::new();
        let mut circles_per_piece: HashMap<u32, i64> = HashMap::new();
        let mut total_circles = self.free_circles as usize;
        for start in self.live_ports() {
            if seen.contains(&start) {
                continue;
            }
            total_circles += 1;
            let piece = uf.find(index[&crossing(start)]);
            *circles_per_piece.entry(piece).or_insert(0) += 1;
            let mut p = start;
            loop {
                seen.insert(p);
                let q = smate(p);
                seen.insert(q);
                p = self.mate[q as usize];
                if p == start {
                    break;
                }
            }
        }

        // Link components per piece.
        let mut comp_per_piece: HashMap<u32, i64> = HashMap::new();
        let mut seen_comp: HashSet<u32> = HashSet::new();
        for start in self.live_ports() {
            if seen_comp.contains(&start) {
                continue;
            }
            let piece = uf.find(index[&crossing(start)]);
            *comp_per_piece.entry(piece).or_insert(0) += 1;
            let mut p = start;
            loop {
                seen_comp.insert(p);
                let q = pass(p);
                seen_comp.insert(q);
                p = self.mate[q as usize];
                if p == start {
                    break;
                }
            }
        }

        // Crossings per piece.
        let mut crossings_per_piece: HashMap<u32, i64> = HashMap::new();
        for (i, _) in live.iter().enumerate() {
            *crossings_per_piece.entry(uf.find(i as u32)).or_insert(0) += 1;
        }

        // Free circles are their own pieces with V=1, E=0, μ=1, genus 0.
        let mut genus = 0i64;
        for (piece, v) in &circles_per_piece {
            let e = crossings_per_piece[piece];
            let f = comp_per_piece[piece];
            let two_g = 2 - v + e - f;
            debug_assert!(two_g >= 0 && two_g % 2 == 0, "piece Euler characteristic");
            genus += two_g / 2;
        }

        SeifertData {
            circles: total_circles,
            crossings,
            components,
            genus,
        }
    }

    // -----------------------------------------------------------------
    // PD codes
    // -----------------------------------------------------------------

    /// Export as a PD code. Arcs are numbered from 1 in traversal order
    /// along each component; each crossing lists its edges counterclockwise
    /// starting from the incoming under edge, with the crossing sign
    /// alongside.
    ///
    /// Free circles have no crossings and cannot be encoded; they are
    /// rejected.
    pub fn to_pd(&self) -> Result<PdCode, DiagramError> {
        if self.free_circles > 0 {
            return Err(DiagramError::InvalidPd(
                "crossingless circles cannot be expressed in a PD code".into(),
            ));
        }
        // Number arcs: edge id per port pair (p, mate[p]).
        let mut edge_of_port: HashMap<u32, u32> = HashMap::new();
        let mut next_edge = 1u32;
        let mut seen: HashSet<u32> = HashSet::new();
        for start in self.live_ports() {
            if seen.contains(&start) {
                continue;
            }
            let entry = if self.inward[start as usize] {
                start
            } else {
                self.mate[start as usize]
            };
            let mut e = entry;
            loop {
                seen.insert(e);
                seen.insert(pass(e));
                // The arc leaving this crossing: from pass(e) to its mate.
                let out = pass(e);
                let next = self.mate[out as usize];
                edge_of_port.insert(out, next_edge);
                edge_of_port.insert(next, next_edge);
                next_edge += 1;
                e = next;
                if e == entry {
                    break;
                }
            }
        }
        // Counterclockwise slot order starting at a given slot.
        // Geometrically CCW is SW → SE → NE → NW.
        const CCW: [u8; 4] = [2, 3, 1, 0];
        let mut crossings = Vec::new();
        let mut signs = Vec::new();
        for c in self.live_crossings() {
            let base = 4 * c as u32;
            let under_in = (0..4u8)
                .map(|s| base + u32::from(s))
                .find(|&p| self.inward[p as usize] && !self.is_over_port(p))
                .expect("one incoming under port");
            let start_pos = CCW
                .iter()
                .position(|&s| s == slot(under_in))
                .expect("slot in CCW table");
            let quad: [u32; 4] = std::array::from_fn(|k| {
                let s = CCW[(start_pos + k) % 4];
                edge_of_port[&(base + u32::from(s))]
            });
            crossings.push(quad);
            signs.push(self.crossing_sign(c));
        }
        Ok(PdCode { crossings, signs })
    }

    /// Import a PD code. Validates that every edge id occurs exactly twice
    /// and that the implied strand orientations are globally consistent.
    pub fn from_pd(pd: &PdCode) -> Result<Diagram, DiagramError> {
        let k = pd.crossings.len();
        if pd.signs.len() != k {
            return Err(DiagramError::InvalidPd(format!(
                "{} crossings but {} signs",
                k,
                pd.signs.len()
            )));
        }
        if k == 0 {
            return Err(DiagramError::InvalidPd("empty PD code".into()));
        }
        // Place each crossing with its incoming under edge at SW; the rest
        // counterclockwise. The sign then fixes the over-strand direction:
        // positive ⇒ over-strand enters at NW, negative ⇒ at SE.
        const CCW_FROM_SW: [u8; 4] = [2, 3, 1, 0];
        let mut over = Vec::with_capacity(k);
        let mut inward = vec![false; 4 * k];
        let mut port_of_edge: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut in_count: HashMap<u32, u32> = HashMap::new();
        for (c, quad) in pd.crossings.iter().enumerate() {
            let base = 4 * c as u32;
            over.push(Over::NwSe); // under strand runs SW↔NE
            for (pos, &edge) in quad.iter().enumerate() {
                let p = base + u32::from(CCW_FROM_SW[pos]);
                port_of_edge.entry(edge).or_default().push(p);
            }
            // Under strand: in at SW, out at NE.
            inward[(base + 2) as usize] = true;
            let over_in_slot = match pd.signs[c] {
                1 => 0,  // NW
                -1 => 3, // SE
                s => {
                    return Err(DiagramError::InvalidPd(format!(
                        "crossing {c} has sign {s}, expected ±1"
                    )))
                }
            };
            inward[(base + over_in_slot) as usize] = true;
        }
        let mut mate = vec![u32::MAX; 4 * k];
        for (edge, ports) in &port_of_edge {
            if ports.len() != 2 {
                return Err(DiagramError::InvalidPd(format!(
                    "edge {edge} appears {} times, expected exactly 2",
                    ports.len()
                )));
            }
            let (p, q) = (ports[0], ports[1]);
            mate[p as usize] = q;
            mate[q as usize] = p;
            let ins = u32::from(inward[p as usize]) + u32::from(inward[q as usize]);
            in_count.insert(*edge, ins);
        }
        if let Some((edge, _)) = in_count.iter().find(|(_, &ins)| ins != 1) {
            return Err(DiagramError::InvalidPd(format!(
                "edge {edge} is not oriented consistently (needs one head and one tail)"
            )));
        }
        Ok(Diagram {
            over,
            alive: vec![true; k],
            mate,
            inward,
            free_circles: 0,
        })
    }
}

/// The two arcs of the Kauffman A-smoothing for a crossing with the given
/// over diagonal. Rotating the over-strand counterclockwise sweeps the
/// A-regions; opening that channel pairs the slots as below (B is the other
/// planar pairing, used implicitly as the complement).
fn a_pairing(over: Over) -> [(u8, u8); 2] {
    match over {
        // Over strand NE–SW ("/"): A-smoothing is the vertical pairing.
        Over::NeSw => [(0, 2), (1, 3)],
        // Over strand NW–SE ("\"): A-smoothing is the horizontal pairing.
        Over::NwSe => [(0, 1), (2, 3)],
    }
}

/// The B-smoothing: the other planar pairing.
fn b_pairing(over: Over) -> [(u8, u8); 2] {
    a_pairing(over.flipped())
}

/// Union-find with rollback (union by size, no path compression) used by
/// the bracket state sum and piece decompositions.
#[derive(Clone)]
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    undo: Vec<u32>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            undo: Vec::new(),
            components: n,
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Returns `false` when the two elements were already connected (the
    /// new edge closes a cycle).
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.undo.push(small);
        self.components -= 1;
        true
    }

    fn snapshot(&self) -> usize {
        self.undo.len()
    }

    fn rollback(&mut self, snapshot: usize) {
        while self.undo.len() > snapshot {
            let small = self.undo.pop().expect("undo stack entry");
            let big = self.parent[small as usize];
            self.size[big as usize] -= self.size[small as usize];
            self.parent[small as usize] = small;
            self.components += 1;
        }
    }

    fn component_count(&self) -> usize {
        self.components
    }
}

/// Depth to which the bracket recursion forks rayon tasks.
const BRACKET_PARALLEL_DEPTH: usize = 4;

/// Minimum crossings left for forking to be worthwhile.
const BRACKET_PARALLEL_MIN: usize = 12;

/// Enumerate all smoothing states of the remaining crossings, accumulating
/// into `counts[a_minus_b + k][loops]`.
fn bracket_states(
    uf: &mut UnionFind,
    pairings: &[([(u32, u32); 2], [(u32, u32); 2])],
    depth: usize,
    a_minus_b: i64,
    loops: u32,
    k: usize,
    counts: &mut [Vec<u64>],
) {
    if depth == pairings.len() {
        counts[(a_minus_b + k as i64) as usize][loops as usize] += 1;
        return;
    }
    let (pa, pb) = pairings[depth];
    if depth < BRACKET_PARALLEL_DEPTH && pairings.len() - depth > BRACKET_PARALLEL_MIN {
        let mut uf_b = uf.clone();
        let mut counts_b: Vec<Vec<u64>> = counts.iter().map(|row| vec![0; row.len()]).collect();
        rayon::join(
            || bracket_branch(uf, pairings, depth, a_minus_b, loops, k, counts, pa, 1),
            || bracket_branch(&mut uf_b, pairings, depth, a_minus_b, loops, k, &mut counts_b, pb, -1),
        );
        for (row_into, row_from) in counts.iter_mut().zip(counts_b.iter()) {
            for (a, b) in row_into.iter_mut().zip(row_from.iter()) {
                *a += *b;
            }
        }
    } else {
        bracket_branch(uf, pairings, depth, a_minus_b, loops, k, counts, pa, 1);
        bracket_branch(uf, pairings, depth, a_minus_b, loops, k, counts, pb, -1);
    }
}

/// Apply one crossing's smoothing pairing, recurse, and roll back.
#[allow(clippy::too_many_arguments)]
fn bracket_branch(
    uf: &mut UnionFind,
    pairings: &[([(u32, u32); 2], [(u32, u32); 2])],
    depth: usize,
    a_minus_b: i64,
    loops: u32,
    k: usize,
    counts: &mut [Vec<u64>],
    pairing: [(u32, u32); 2],
    delta: i64,
) {
    let snap = uf.snapshot();
    let mut closed = 0u32;
    for (p, q) in pairing {
        if !uf.union(p, q) {
            closed += 1;
        }
    }
    bracket_states(uf, pairings, depth + 1, a_minus_b + delta, loops + closed, k, counts);
    uf.rollback(snap);
}

/// Memoized skein evaluation of one diagram state.
fn skein_value(
    mut d: Diagram,
    memo: &Mutex<HashMap<Vec<u8>, ZPoly>>,
    nodes: &AtomicU64,
    opts: &SkeinOptions,
) -> Result<ZPoly, DiagramError> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= opts.max_nodes {
        return Err(DiagramError::SkeinBudget {
            budget: opts.max_nodes,
        });
    }
    d.reduce();
    let live = d.crossing_count();
    if live == 0 {
        return Ok(if d.free_circles == 1 {
            ZPoly::one()
        } else {
            ZPoly::zero()
        });
    }
    // A diagram that falls into separate pieces is a split link: ∇ = 0.
    if d.free_circles > 0 || d.pieces() >= 2 {
        return Ok(ZPoly::zero());
    }
    let key = d.canonical_key();
    if let Some(v) = memo.lock().expect("memo lock").get(&key) {
        return Ok(v.clone());
    }

    // Walk toward a descending diagram with fixed basepoints: switching the
    // first bad crossing strictly advances the walk, smoothing it spawns a
    // child with one crossing fewer.
    let mut children: Vec<(i8, Diagram)> = Vec::new();
    let mut cur = d;
    while let Some(c) = cur.first_bad_crossing() {
        let sign = cur.crossing_sign(c);
        let mut smoothed = cur.clone();
        smoothed.smooth_oriented(c);
        children.push((sign, smoothed));
        cur.switch(c);
    }
    let mut total = if cur.components() == 1 {
        ZPoly::one()
    } else {
        ZPoly::zero()
    };
    let z = ZPoly::var();

    let child_values: Result<Vec<(i8, ZPoly)>, DiagramError> = if children.len() > 1 && live > 10 {
        use rayon::prelude::*;
        children
            .into_par_iter()
            .map(|(s, child)| Ok((s, skein_value(child, memo, nodes, opts)?)))
            .collect()
    } else {
        children
            .into_iter()
            .map(|(s, child)| Ok((s, skein_value(child, memo, nodes, opts)?)))
            .collect()
    };
    for (s, value) in child_values? {
        let weighted = (&z * &value).scaled(s as i64);
        total += &weighted;
    }
    memo.lock().expect("memo lock").insert(key, total.clone());
    Ok(total)
}

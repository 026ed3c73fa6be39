//! Classify three-box pretzel knots: the complete catalogue of torus
//! pretzels is finite, and everything else is hyperbolic (or a connected
//! sum, for a zero box between large odd tails).
//!
//! Run with: `cargo run --release --example classify_catalogue`

use pretzel::classify::{classify_classical, LinkKind};

fn main() {
    let specs = [
        (1i64, 1i64, 1i64),  // trefoil
        (-1, -1, -1),        // mirror trefoil
        (3, -1, 5),          // reducible by a unit move, then hyperbolic
        (-2, 3, 3),          // (3, 4) torus knot
        (-2, 3, 5),          // (3, 5) torus knot
        (2, -3, -5),         // mirror of the above
        (-2, 3, 7),          // hyperbolic
        (5, -1, -1),         // unit cancellation to a two-braid
        (-2, -1, 3),         // two-braid after absorbing the even box
        (0, 3, 5),           // connected sum of two two-braids
        (7, 9, 11),          // large odd boxes: hyperbolic
    ];

    for (p, q, r) in specs {
        match classify_classical(p, q, r) {
            Ok(c) => {
                let verdict = match c.kind {
                    LinkKind::Unknot => "unknot".to_string(),
                    LinkKind::Torus { m, n } => format!("torus ({m}, {n})"),
                    LinkKind::Hyperbolic => "hyperbolic".to_string(),
                    LinkKind::NotAKnot => "not a knot".to_string(),
                };
                println!("K({p}, {q}, {r}): {verdict} — {}", c.reason);
            }
            Err(e) => println!("K({p}, {q}, {r}): {e}"),
        }
    }
}

//! Alexander polynomials two ways: the closed form for pretzels
//! P(-2l, q, r) with odd tails, and the substitution
//! z = t^{1/2} - t^{-1/2} into the Conway polynomial. The two agree up to
//! the usual unit ambiguity, and the closed form's span reads off the
//! genus directly.
//!
//! Run with: `cargo run --release --example alexander_forms`

use pretzel::alexander_jones::{alexander_classical, alexander_from_conway};
use pretzel::model::Pretzel;

fn main() {
    for (l, q, r) in [(1i64, 3i64, 3i64), (1, 7, 3), (2, 5, 3), (1, 5, -3), (2, 5, -5)] {
        let closed = alexander_classical(l, q, r);
        let pretzel = Pretzel::new(vec![-2 * l, q, r]).expect("nonempty spec");
        let classes = pretzel.orientation_classes().expect("knot");
        let substituted = alexander_from_conway(&pretzel.marked(&classes[0].marks));

        let span = closed.span().expect("nonzero").0 / 2;
        let expected_span = if r > 0 { q + r } else { q - r - 2 };
        println!("P({}, {q}, {r}):", -2 * l);
        println!("  closed form:  {closed}");
        println!("  substitution: {substituted}");
        println!("  span {span} (expected {expected_span}, genus {})", span / 2);
        assert!(closed.equal_up_to_unit(&substituted));
        assert_eq!(span, expected_span);
    }
}

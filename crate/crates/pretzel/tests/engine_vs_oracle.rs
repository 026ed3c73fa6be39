//! Cross-validation of the Conway engine against the brute-force diagram
//! oracle on a dense grid of small pretzels: every vector, every
//! realizable orientation class, three independent computation paths.

use pretzel::conway::{conway_closed_form, ConwayMemo};
use pretzel::diagram::{Diagram, SkeinOptions};
use pretzel::model::Pretzel;

/// All parameter vectors with `n` boxes and entries in `-pmax..=pmax`.
fn grid(n: usize, pmax: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-pmax..=pmax).map(move |p| {
                    let mut w = v.clone();
                    w.push(p);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn tree_oracle_and_closed_forms_agree_on_small_pretzels() {
    let memo = ConwayMemo::new();
    let opts = SkeinOptions::default();
    let mut checked = 0u32;
    let mut closed_checked = 0u32;

    for n in 1..=4 {
        for params in grid(n, 3) {
            let pretzel = Pretzel::new(params.clone()).unwrap();
            for class in pretzel.orientation_classes().unwrap() {
                let boxes = pretzel.marked(&class.marks);
                let tree = memo.eval(&boxes);

                // The diagram path: build every orientation in the class and
                // skein it; all must agree with each other and the tree.
                for dirs in &class.orientations {
                    let (diagram, marks) = Diagram::from_pretzel(&pretzel, dirs);
                    assert_eq!(
                        marks, class.marks,
                        "diagram marks disagree with the model for {params:?} {dirs:?}"
                    );
                    let oracle = diagram.conway_skein(&opts).unwrap();
                    assert_eq!(
                        tree, oracle,
                        "tree vs oracle mismatch on {params:?} with marks {:?}",
                        class.marks
                    );
                    checked += 1;
                }

                // The closed formulas, where their shapes apply.
                if let Ok(closed) = conway_closed_form(&boxes) {
                    assert_eq!(
                        closed, tree,
                        "closed form vs tree mismatch on {params:?} with marks {:?}",
                        class.marks
                    );
                    closed_checked += 1;
                }
            }
        }
    }

    // The grid is dense: make sure nothing silently skipped.
    assert!(checked > 3_000, "only {checked} orientation checks ran");
    assert!(closed_checked > 800, "only {closed_checked} closed-form checks ran");
}

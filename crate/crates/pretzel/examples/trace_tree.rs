//! Render the computation tree behind a Conway polynomial: each node
//! shows the marked twist vector, the reduction rule applied, the node's
//! own Conway value, and the weight it contributes to its parent.
//!
//! Run with: `cargo run --release --example trace_tree`

use pretzel::conway::{computation_tree_trace, TraceNode};
use pretzel::model::Pretzel;

fn print_node(node: &TraceNode, depth: usize) {
    let vector: Vec<String> = node
        .vector
        .iter()
        .map(|b| format!("{}{}", b.twists, &b.mark[..1]))
        .collect();
    println!(
        "{}[{}] {}: value {} (weight {})",
        "  ".repeat(depth),
        vector.join(","),
        node.rule,
        node.value,
        node.weight
    );
    for child in &node.children {
        print_node(child, depth + 1);
    }
}

fn main() {
    // A five-box knot exercises the twist expansion, the opposite-box
    // reductions, and the closed two-braid leaves in one tree.
    let pretzel = Pretzel::new(vec![2, 3, -3, 5, -1]).expect("nonempty spec");
    let classes = pretzel.orientation_classes().expect("few components");

    for class in &classes {
        let boxes = pretzel.marked(&class.marks);
        let (value, root) = computation_tree_trace(&boxes).expect("small tree");
        println!(
            "orientation {:?} gives conway {value}",
            class.marks.iter().map(|m| m.as_str()).collect::<Vec<_>>()
        );
        print_node(&root, 1);
        println!();
    }
}

//! Cross-check the three Conway computation paths — the memoized twist
//! expansion, the closed-form theorems, and the diagram-level skein
//! oracle — over an exhaustive grid of small pretzel specs, plus the
//! Jones determinant identity on every orientation class.
//!
//! Run with: `cargo run --release --example verify_sweep`

use pretzel::report::{cmd_sweep, render_sweep_text, SweepOptions};

fn main() {
    let opts = SweepOptions {
        nmax: 4,
        pmax: 3,
        jones: true,
        jones_budget: 20,
    };
    let summary = cmd_sweep(&opts).expect("bounds are within limits");
    print!("{}", render_sweep_text(&summary));

    assert_eq!(
        summary.mismatched, 0,
        "independent computation paths must agree: {:?}",
        summary.mismatch_examples
    );
    println!("every check agreed across {} comparisons", summary.checked);
}

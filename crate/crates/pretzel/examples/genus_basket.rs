//! Genus and basket numbers from the Conway degree: the genus of a
//! pretzel link is read off the z-degree of its Conway polynomial under
//! the degree-minimizing orientation, and the basket number follows as
//! 2g + components - 1. The report also names the closed-form case that
//! applies and warns when a tabulated value disagrees with the degree.
//!
//! Run with: `cargo run --release --example genus_basket`

use pretzel::classify::{basket_number, genus_npretzel, GenusError};
use pretzel::model::Pretzel;

fn main() {
    let specs: [&[i64]; 6] = [
        &[-2, 3, 7],      // hyperbolic genus-5 knot
        &[2, 3, -3, 5],   // four-box knot
        &[2, 2, 3, 3],    // two-component link
        &[-4, -4, 3, 3],  // link where the orientation scan beats the theorem
        &[3, 5, 7],       // all-odd: outside the closed-form regime
        &[0, 0, 3],       // split link: no genus from the degree method
    ];

    for params in specs {
        let pretzel = Pretzel::new(params.to_vec()).expect("nonempty spec");
        match genus_npretzel(&pretzel) {
            Ok(report) => {
                let basket = basket_number(&pretzel).expect("genus exists");
                println!(
                    "L{params:?}: genus {} (case {}, conway degree {}, {} components)",
                    report.genus, report.case_label, report.conway_degree, report.components
                );
                println!("  basket number {}", basket.basket_number);
                for warning in &report.warnings {
                    println!("  warning: {warning}");
                }
            }
            Err(GenusError::SplitLink { .. }) => {
                println!("L{params:?}: split link, conway vanishes for every orientation");
            }
            Err(e) => println!("L{params:?}: {e}"),
        }
        println!();
    }
}

//! Compute a full invariant report for one pretzel link through the
//! library API — the same entry point the `pretzel invariants` command
//! uses — and show both renderings.
//!
//! Run with: `cargo run --release --example invariants`

use pretzel::report::{build_report, render_text, ReportOptions};

fn main() {
    // The (-2, 3, 7) pretzel knot: a genus-5 hyperbolic knot whose Jones
    // polynomial also has a tabulated closed form.
    let params = [-2i64, 3, 7];
    let opts = ReportOptions {
        verify: true,
        ..ReportOptions::default()
    };
    let report = build_report(&params, &opts).expect("valid spec");

    println!("== text rendering ==");
    print!("{}", render_text(&report));

    println!("\n== selected fields ==");
    println!("components: {}", report.components);
    if let Some(genus) = &report.genus {
        println!("genus {} via case {}", genus.genus, genus.case_label);
    }
    if let Some(basket) = &report.basket {
        println!("basket number {}", basket.basket_number);
    }
    if let Some(agreement) = &report.oracle_agreement {
        println!(
            "verification: conway={:?} jones={:?} alexander={:?} all={}",
            agreement.conway, agreement.jones, agreement.alexander, agreement.all
        );
    }

    println!("\n== JSON rendering ==");
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("reports serialize")
    );
}

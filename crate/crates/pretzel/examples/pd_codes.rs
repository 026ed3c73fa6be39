//! Planar-diagram codes: export the oriented diagram of a pretzel as a
//! PD code, round-trip it through JSON, re-import it, and recompute
//! invariants from the imported copy — they must not change.
//!
//! Run with: `cargo run --release --example pd_codes`

use pretzel::diagram::{Diagram, PdCode, SkeinOptions};
use pretzel::model::Pretzel;

fn main() {
    let pretzel = Pretzel::new(vec![-2, 3, 3]).expect("nonempty spec");
    let classes = pretzel.orientation_classes().expect("knot");
    let (diagram, marks) = Diagram::from_pretzel(&pretzel, &classes[0].orientations[0]);
    println!(
        "diagram of P(-2, 3, 3): {} crossings, writhe {}, marks {:?}",
        diagram.crossing_count(),
        diagram.writhe(),
        marks.iter().map(|m| m.as_str()).collect::<Vec<_>>()
    );

    let pd = diagram.to_pd().expect("diagram is connected");
    let json = serde_json::to_string(&pd).expect("pd codes serialize");
    println!("PD code: {json}");

    let parsed: PdCode = serde_json::from_str(&json).expect("round-trips");
    let imported = Diagram::from_pd(&parsed).expect("valid code");

    let opts = SkeinOptions::default();
    let before = diagram.conway_skein(&opts).expect("within budget");
    let after = imported.conway_skein(&opts).expect("within budget");
    println!("conway from the original: {before}");
    println!("conway from the import:   {after}");
    assert_eq!(before, after);

    let seifert = imported.seifert_data();
    println!(
        "seifert surface: {} circles over {} crossings, genus {}",
        seifert.circles, seifert.crossings, seifert.genus
    );

    let jones_before = diagram.kauffman_jones(24).expect("within budget");
    let jones_after = imported.kauffman_jones(24).expect("within budget");
    assert_eq!(jones_before, jones_after);
    println!("jones survives the round trip: {jones_after}");
}

//! Compute Jones polynomials two independent ways: the Kauffman bracket
//! state sum over the actual diagram, and the closed forms for torus
//! links and the tabulated pretzel rows — then watch them coincide.
//!
//! Run with: `cargo run --release --example jones_bracket`

use pretzel::alexander_jones::{jones_pretzel_family, jones_torus};
use pretzel::diagram::Diagram;
use pretzel::model::Pretzel;

fn bracket_jones(params: &[i64]) -> pretzel::poly::TPoly {
    let pretzel = Pretzel::new(params.to_vec()).expect("nonempty spec");
    let classes = pretzel.orientation_classes().expect("few components");
    let (diagram, _) = Diagram::from_pretzel(&pretzel, &classes[0].orientations[0]);
    diagram.kauffman_jones(24).expect("within budget")
}

fn main() {
    // Two pretzel knots that are secretly torus knots: their brackets,
    // their tabulated family rows, and the torus closed forms all match.
    for (params, torus) in [([-2i64, 3, 3], (3i64, 4i64)), ([-2, 3, 5], (3, 5))] {
        let from_bracket = bracket_jones(&params);
        let from_family = jones_pretzel_family(params).expect("tabulated row");
        let from_torus = jones_torus(torus.0, torus.1);
        println!("pretzel {params:?} = torus {torus:?}");
        println!("  bracket: {from_bracket}");
        println!("  family row: {from_family}");
        println!("  torus form: {from_torus}");
        assert_eq!(from_bracket, from_family);
        assert_eq!(from_bracket, from_torus);
    }

    // Two-strand torus links have half-integer exponents; the bracket
    // reproduces those too. P(1, 1) with both strands running the same
    // way is the positive Hopf link.
    let hopf = bracket_jones(&[1, 1]);
    println!("pretzel [1, 1] (Hopf link): bracket {hopf}");
    println!("  torus form t(2,2): {}", jones_torus(2, 2));
    assert_eq!(hopf, jones_torus(2, 2));

    // Mirroring a diagram inverts the variable.
    let trefoil = bracket_jones(&[1, 1, 1]);
    let mirror = bracket_jones(&[-1, -1, -1]);
    println!("trefoil bracket: {trefoil}");
    println!("mirror trefoil:  {mirror}");
    assert_eq!(mirror, trefoil.inverted());
    println!("mirror equals the t -> 1/t image");
}

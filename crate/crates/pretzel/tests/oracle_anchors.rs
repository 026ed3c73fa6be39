//! Anchor values for the diagram oracle: Conway and Jones polynomials of
//! small pretzel links whose values are classically known, asserted exactly.
//! These pin the sign, handedness and normalization conventions of every
//! diagram-level computation.

use pretzel::diagram::{Diagram, SkeinOptions};
use pretzel::model::{Mark, Pretzel};
use pretzel::{TPoly, ZPoly};

fn z(s: &str) -> ZPoly {
    s.parse().expect("valid z-polynomial literal")
}

fn t(s: &str) -> TPoly {
    s.parse().expect("valid t-polynomial literal")
}

/// Conway polynomial of the orientation class with the given marks.
fn nabla_of_class(params: &[i64], marks: &[Mark]) -> ZPoly {
    let p = Pretzel::new(params.to_vec()).unwrap();
    let class = p
        .orientation_classes()
        .unwrap()
        .into_iter()
        .find(|c| c.marks == marks)
        .expect("orientation class with these marks exists");
    let (d, diagram_marks) = Diagram::from_pretzel(&p, &class.orientations[0]);
    assert_eq!(diagram_marks, class.marks);
    d.conway_skein(&SkeinOptions::default()).unwrap()
}

/// Conway polynomial of a knot (single orientation class).
fn nabla_knot(params: &[i64]) -> ZPoly {
    let p = Pretzel::new(params.to_vec()).unwrap();
    assert_eq!(p.components(), 1, "expected a knot");
    let classes = p.orientation_classes().unwrap();
    assert_eq!(classes.len(), 1, "knots have a single orientation class");
    let (d, _) = Diagram::from_pretzel(&p, &classes[0].orientations[0]);
    d.conway_skein(&SkeinOptions::default()).unwrap()
}

fn jones(params: &[i64]) -> TPoly {
    let p = Pretzel::new(params.to_vec()).unwrap();
    let class = &p.orientation_classes().unwrap()[0];
    let (d, _) = Diagram::from_pretzel(&p, &class.orientations[0]);
    d.kauffman_jones(24).unwrap()
}

const PAR: Mark = Mark::Parallel;
const ANTI: Mark = Mark::Antiparallel;

#[test]
fn conway_of_hopf_link_orientations() {
    assert_eq!(nabla_of_class(&[1, 1], &[PAR, PAR]), z("z"));
    assert_eq!(nabla_of_class(&[1, 1], &[ANTI, ANTI]), z("-z"));
}

#[test]
fn conway_of_trefoil_and_figure_eight() {
    assert_eq!(nabla_knot(&[1, 1, 1]), z("z^2 + 1"));
    assert_eq!(nabla_knot(&[2, 1, 1]), z("-z^2 + 1"));
}

#[test]
fn conway_of_torus_knots_in_pretzel_form() {
    // The (-2, 3, 3) pretzel is the (3,4) torus knot, and a 2-box pretzel
    // (q, r) is the (2, q + r) torus link.
    assert_eq!(nabla_knot(&[-2, 3, 3]), z("z^6 + 5z^4 + 5z^2 + 1"));
    assert_eq!(nabla_knot(&[2, 3]), z("z^4 + 3z^2 + 1"));
}

#[test]
fn conway_of_two_bridge_style_links() {
    assert_eq!(nabla_of_class(&[2, 2], &[PAR, PAR]), z("z^3 + 2z"));
    assert_eq!(nabla_of_class(&[2, 2], &[ANTI, ANTI]), z("-2z"));
    assert_eq!(nabla_of_class(&[2, 4], &[PAR, PAR]), z("z^5 + 4z^3 + 3z"));
    assert_eq!(nabla_of_class(&[2, 4], &[ANTI, ANTI]), z("-3z"));
    assert_eq!(
        nabla_of_class(&[3, 5], &[PAR, PAR]),
        z("z^7 + 6z^5 + 10z^3 + 4z")
    );
    assert_eq!(nabla_of_class(&[3, 5], &[ANTI, ANTI]), z("-4z"));
}

#[test]
fn conway_of_four_box_chain_orientations() {
    assert_eq!(nabla_of_class(&[1, 1, 1, 1], &[PAR; 4]), z("2z"));
    assert_eq!(nabla_of_class(&[1, 1, 1, 1], &[ANTI; 4]), z("-z^3 - 2z"));
}

#[test]
fn conway_of_nine_crossing_pretzel_knot() {
    assert_eq!(nabla_knot(&[3, 3, 3]), z("7z^2 + 1"));
}

#[test]
fn conway_of_mixed_parity_link() {
    // Both orientation classes of the (2, 2, 3) pretzel link share ∇.
    assert_eq!(
        nabla_of_class(&[2, 2, 3], &[PAR, ANTI, PAR]),
        z("-z^5 - 2z^3")
    );
    assert_eq!(
        nabla_of_class(&[2, 2, 3], &[ANTI, PAR, PAR]),
        z("-z^5 - 2z^3")
    );
}

#[test]
fn jones_of_hopf_links_and_trefoil() {
    assert_eq!(jones(&[1, 1]), t("-t^{5/2} - t^{1/2}"));
    assert_eq!(jones(&[-1, -1]), t("-t^{-1/2} - t^{-5/2}"));
    assert_eq!(jones(&[1, 1, 1]), t("-t^{-4} + t^{-3} + t^{-1}"));
}

#[test]
fn jones_of_small_torus_pretzels() {
    // These two values pin the handedness convention: the (-2, 3, 3) and
    // (-2, 3, 5) pretzels are the positive (3,4) and (3,5) torus knots.
    assert_eq!(jones(&[-2, 3, 3]), t("-t^8 + t^5 + t^3"));
    assert_eq!(jones(&[-2, 3, 5]), t("-t^10 + t^6 + t^4"));
}

#[test]
fn seifert_data_examples() {
    let p = Pretzel::new(vec![1, 1, 1]).unwrap();
    let (d, _) = Diagram::from_pretzel(&p, &[true]);
    let s = d.seifert_data();
    assert_eq!(
        (s.circles, s.crossings, s.components, s.genus),
        (2, 3, 1, 1)
    );

    let p = Pretzel::new(vec![-2, 3, 3]).unwrap();
    let (d, _) = Diagram::from_pretzel(&p, &[true]);
    let s = d.seifert_data();
    assert_eq!(
        (s.circles, s.crossings, s.components, s.genus),
        (3, 8, 1, 3)
    );
}

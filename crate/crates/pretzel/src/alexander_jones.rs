//! Closed-form Alexander and Jones polynomials: the two-strand torus
//! links, the Hecke-algebra torus formulas, and the three-box pretzel
//! families whose coefficient patterns are pinned by the bracket oracle.
//!
//! # Conventions
//!
//! `jones_torus(m, n)` returns the Jones polynomial of the right-handed
//! `(m, n)` torus link; negative `n` mirrors via `t ↦ t^{−1}`. Two of the
//! three classical displays need a note:
//!
//! - The two-strand case is often quoted only for one parity of `n`; the
//!   unified form used here (alternating run from `t^n` to `t²` plus a
//!   constant `(−1)^n`) reproduces the bracket oracle for **both**
//!   parities (knots and links), as the tests pin down.
//! - [`jones_pretzel_family`] only implements family rows whose elided
//!   middles could be completed to an explicit summation rule **and**
//!   validated against the bracket oracle. Rows whose published sketches
//!   are inconsistent with the bracket (their interior coefficients are
//!   not a simple run — see the frozen counterexamples in the tests) are
//!   rejected with an error pointing at
//!   [`kauffman_jones`](crate::diagram::Diagram::kauffman_jones).
//!
//! Alexander polynomials are only defined up to units `±t^{k/2}`; compare
//! them with [`HalfLaurent::equal_up_to_unit`](crate::poly::HalfLaurent::equal_up_to_unit),
//! never with `==`.

use crate::conway::computation_tree_conway;
use crate::model::MarkedBox;
use crate::poly::TPoly;

/// The image of the Conway variable under the classical substitution
/// turning `∇(z)` into an Alexander polynomial: `z ↦ t^{1/2} − t^{−1/2}`.
fn z_image() -> TPoly {
    &TPoly::monomial_num(1, 1) + &TPoly::monomial_num(-1, -1)
}

/// The correction factor of the twist recurrences, `t^{−1/2} − t^{1/2}`.
fn twist_correction() -> TPoly {
    &TPoly::monomial_num(-1, 1) + &TPoly::monomial_num(1, -1)
}

// ---------------------------------------------------------------------------
// Alexander polynomials
// ---------------------------------------------------------------------------

/// The Alexander polynomial of the `(2, p)` torus link,
///
/// ```text
/// Δ_{T(2,p)} = t^{(1−|p|)/2} (t^{|p|−1} − t^{|p|−2} + ⋯ ∓ t ± 1),
/// ```
///
/// the alternating sum ending in `+1`. Mirror images share their Alexander
/// polynomial, so only `|p|` matters; `p = 0` is the split two-component
/// unlink with `Δ = 0`.
///
/// ```
/// use pretzel::alexander_jones::alexander_torus2;
/// assert_eq!(alexander_torus2(3).to_string(), "t - 1 + t^{-1}");
/// assert_eq!(alexander_torus2(1).to_string(), "1");
/// assert_eq!(alexander_torus2(2).to_string(), "-t^{1/2} + t^{-1/2}");
/// ```
pub fn alexander_torus2(p: i64) -> TPoly {
    let p = p.abs();
    let mut sum = TPoly::zero();
    for e in 0..p {
        sum += &TPoly::monomial(e, if e % 2 == 0 { 1 } else { -1 });
    }
    sum.shifted_num(1 - p)
}

/// The Alexander polynomial of the three-box pretzel knot with one box of
/// `−2l` half-twists and two odd boxes, built from the twist recurrences
///
/// ```text
/// Δ_{K(−2,q,r)}  = Δ_{T(2,q)} · Δ_{T(2,r)} + (t^{−1/2} − t^{1/2}) · Δ_{T(2,q+r)}
/// Δ_{K(−2l,q,r)} = Δ_{K(−2(l−1),q,r)}     + (t^{−1/2} − t^{1/2}) · Δ_{T(2,q+r)}
/// ```
///
/// where the torus step uses `|q + r|` (its two-strand Alexander
/// polynomials are mirror-blind). `r` may be negative; the recurrences
/// are symmetric in `q` and `|r|`, so for mixed signs the value belongs
/// to the **canonical** knot with the larger odd parameter positive,
/// `P(−2l, max(q,|r|), −min(q,|r|))` — the skein resolution pinning this
/// correspondence is cross-checked against the diagram oracle in the
/// tests. The result spans `q + |r|` when `r > 0` and `q + |r| − 2` when
/// `r < 0`.
///
/// # Panics
///
/// Panics unless `l ≥ 1`, `q ≥ 1` odd, and `r` odd (any sign).
pub fn alexander_classical(l: i64, q: i64, r: i64) -> TPoly {
    assert!(l >= 1, "need l >= 1 twist pairs, got {l}");
    assert!(q >= 1 && q % 2 == 1, "need odd q >= 1, got {q}");
    assert!(r % 2 != 0, "need odd r, got {r}");
    let step = &twist_correction() * &alexander_torus2(q + r);
    let mut delta = &alexander_torus2(q) * &alexander_torus2(r);
    for _ in 0..l {
        delta += &step;
    }
    delta
}

/// The Alexander polynomial of an oriented pretzel, as the Conway
/// polynomial of its marked vector under `z ↦ t^{1/2} − t^{−1/2}`.
///
/// ```
/// use pretzel::alexander_jones::alexander_from_conway;
/// use pretzel::model::Mark::Antiparallel;
///
/// let trefoil = [(1, Antiparallel); 3];
/// assert_eq!(alexander_from_conway(&trefoil).to_string(), "t - 1 + t^{-1}");
/// ```
pub fn alexander_from_conway(boxes: &[MarkedBox]) -> TPoly {
    computation_tree_conway(boxes).substitute_half(&z_image())
}

// ---------------------------------------------------------------------------
// Jones polynomials of torus links
// ---------------------------------------------------------------------------

/// The Jones polynomial of the right-handed `(m, n)` torus link, `2 ≤ m ≤
/// |n|`; a negative `n` gives the mirror via `t ↦ t^{−1}`.
///
/// The three classical cases share the prefactor `−t^{(m−1)(n−1)/2}`:
///
/// ```text
/// m = 2:        t^n − t^{n−1} + ⋯ ± t²  + (−1)^n
/// m odd ≥ 3:    t^{m+n−2} + t^{m+n−4} + ⋯ + t^{n+1} − t^{m−1} − t^{m−3} − ⋯ − 1
/// m even ≥ 4:   t^{m+n−2} + t^{m+n−4} + ⋯ + t^{n}   − t^{n−1} − t^{n−3} − ⋯
/// ```
///
/// (the last negative run stepping by two down to exponent 0 or 1).
///
/// ```
/// use pretzel::alexander_jones::jones_torus;
/// assert_eq!(jones_torus(2, 3).to_string(), "-t^4 + t^3 + t");
/// assert_eq!(jones_torus(3, 4).to_string(), "-t^8 + t^5 + t^3");
/// assert_eq!(jones_torus(2, -3), jones_torus(2, 3).inverted());
/// ```
///
/// # Panics
///
/// Panics unless `2 ≤ m ≤ |n|`.
pub fn jones_torus(m: i64, n: i64) -> TPoly {
    assert!(m >= 2, "need m >= 2 strands, got {m}");
    if n < 0 {
        return jones_torus(m, -n).inverted();
    }
    assert!(m <= n, "need m <= n, got ({m}, {n})");
    let mut bracket = TPoly::zero();
    if m == 2 {
        for k in 2..=n {
            bracket += &TPoly::monomial(k, if (n - k) % 2 == 0 { 1 } else { -1 });
        }
        bracket += &TPoly::monomial(0, if n % 2 == 0 { 1 } else { -1 });
    } else if m % 2 == 1 {
        for e in ((n + 1)..=(m + n - 2)).step_by(2) {
            bracket += &TPoly::monomial(e, 1);
        }
        for e in (0..=(m - 1)).step_by(2) {
            bracket += &TPoly::monomial(e, -1);
        }
    } else {
        for e in (n..=(m + n - 2)).step_by(2) {
            bracket += &TPoly::monomial(e, 1);
        }
        for e in (((n - 1) % 2)..=(n - 1)).step_by(2) {
            bracket += &TPoly::monomial(e, -1);
        }
    }
    -bracket.shifted_num((m - 1) * (n - 1))
}

// ---------------------------------------------------------------------------
// Jones polynomials of three-box pretzel families
// ---------------------------------------------------------------------------

/// No pinned family row covers the requested pretzel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "K({}, {}, {}): {reason}; compute it with the Kauffman bracket (kauffman_jones)",
    .params[0], .params[1], .params[2]
)]
pub struct NoFamilyRow {
    /// The rejected parameters.
    pub params: [i64; 3],
    /// Why no row applies.
    pub reason: String,
}

/// The closed-form Jones polynomial of a three-box pretzel knot, where a
/// family row with a fully determined coefficient pattern exists:
///
/// - `K(−2, 1, r)` for odd `r ≥ 1`:
///   `−t^{(r+1)/2} (t^{r+2} − t^{r+1} + ⋯ + t³ − t² − 1)`;
/// - `K(−2, 3, 3)`: `−t³ (t⁵ − t² − 1)`;
/// - `K(−2, 3, r)` for odd `r ≥ 5`:
///   `−t^{(3+r)/2} (t^{r+1} − t^r + ⋯ + t⁶ − t² − 1)`, the alternating run
///   stopping at `t⁶` (bracket-validated; at `r = 5` it is the single term
///   `t⁶`, reproducing the classical `−t⁴(t⁶ − t² − 1)`);
/// - mirrors of all of the above (every parameter negated), via
///   `t ↦ t^{−1}`.
///
/// Boxes may be given in any order (pretzels are symmetric under rotation
/// and reversal).
///
/// # Errors
///
/// [`NoFamilyRow`] for everything else. In particular the families
/// `K(2l, ±q, r)` and `K(−2, q, r)` with `q, r ≥ 5` have published
/// sketches whose middles are **not** a simple run — the bracket oracle
/// contradicts their natural completions (see the frozen counterexamples
/// in this module's tests) — and `K(−2l, …)` with `l ≥ 2` has no usable
/// sketch at all. Those are rejected rather than guessed.
pub fn jones_pretzel_family(params: [i64; 3]) -> Result<TPoly, NoFamilyRow> {
    let reject = |reason: &str| NoFamilyRow {
        params,
        reason: reason.to_string(),
    };
    let evens: Vec<i64> = params.iter().copied().filter(|p| p % 2 == 0).collect();
    let mut odds: Vec<i64> = params.iter().copied().filter(|p| p % 2 != 0).collect();
    let [even] = evens[..] else {
        return Err(reject(
            "the pinned rows need exactly one even box (a three-box knot)",
        ));
    };
    odds.sort_unstable();
    let (q, r) = (odds[0], odds[1]);

    if even == -2 && q >= 1 {
        if q == 1 {
            // −t^{(r+1)/2} [ Σ_{e=3}^{r+2} (−1)^{e−1} t^e − t² − 1 ]
            let mut bracket = &TPoly::monomial(2, -1) + &TPoly::monomial(0, -1);
            for e in 3..=(r + 2) {
                bracket += &TPoly::monomial(e, if e % 2 == 1 { 1 } else { -1 });
            }
            return Ok(-bracket.shifted_num(r + 1));
        }
        if q == 3 && r == 3 {
            // −t³ (t⁵ − t² − 1)
            let bracket: TPoly = "t^5 - t^2 - 1".parse().expect("literal");
            return Ok(-bracket.shifted_num(6));
        }
        if q == 3 {
            // −t^{(3+r)/2} [ Σ_{e=6}^{r+1} (−1)^{r+1−e} t^e − t² − 1 ]
            let mut bracket = &TPoly::monomial(2, -1) + &TPoly::monomial(0, -1);
            for e in 6..=(r + 1) {
                bracket += &TPoly::monomial(e, if (r + 1 - e) % 2 == 0 { 1 } else { -1 });
            }
            return Ok(-bracket.shifted_num(3 + r));
        }
        return Err(reject(
            "the K(-2, q, r) sketch with q, r >= 5 is not a simple run and fails \
             bracket validation",
        ));
    }
    // Mirror: all parameters negated lands in a supported row.
    if even == 2 && r <= -1 {
        let mirrored = params.map(|p| -p);
        if jones_pretzel_family(mirrored).is_ok() {
            return Ok(jones_pretzel_family(mirrored)?.inverted());
        }
    }
    if even > 0 {
        return Err(reject(
            "the K(2l, ±q, r) sketches disagree with the bracket oracle \
             (their displayed tails are not the true coefficients)",
        ));
    }
    Err(reject(
        "no row with a determined coefficient pattern matches",
    ))
}

//! Sparse Laurent polynomials with half-integer exponents and exact `BigInt`
//! coefficients.
//!
//! Knot polynomials live in ℤ[t^{1/2}, t^{-1/2}] (Alexander, Jones) or ℤ[z]
//! (Conway), so a single representation covers all of them: every exponent is
//! a half-integer stored as its *doubled numerator* (the stored key `k` means
//! exponent `k/2`). Integer exponents are simply even numerators. There is no
//! floating point anywhere; coefficients are exact [`BigInt`]s.
//!
//! The variable name is part of the type ([`HalfLaurent<'z'>`] vs
//! [`HalfLaurent<'t'>`]), so a Conway polynomial in `z` cannot be confused
//! with an Alexander polynomial in `t` at compile time. [`substitute_half`]
//! is the only bridge between variables.
//!
//! [`substitute_half`]: HalfLaurent::substitute_half

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact half-integer, stored as its doubled numerator (`HalfInt(5)` is 5/2).
///
/// Used for exponents, degrees and spans of [`HalfLaurent`] polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(pub i64);

impl HalfInt {
    /// The half-integer `n/2`.
    pub const fn from_numerator(n: i64) -> Self {
        HalfInt(n)
    }

    /// The half-integer equal to the integer `n`.
    pub const fn from_integer(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Doubled numerator: `self` equals `numerator() / 2`.
    pub const fn numerator(self) -> i64 {
        self.0
    }

    /// True when this half-integer is in fact an integer.
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value as an integer, when it is one.
    pub const fn as_integer(self) -> Option<i64> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

/// The unit `± V^{k/2}` relating two polynomials that agree up to a unit of
/// ℤ[V^{±1/2}]. Returned by [`HalfLaurent::unit_between`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unit {
    /// `+1` or `-1`.
    pub sign: i8,
    /// Exponent of the monomial factor, as a half-integer.
    pub shift: HalfInt,
}

/// A sparse Laurent polynomial in `V^{1/2}` with exact integer coefficients.
///
/// Terms are kept in a [`BTreeMap`] from doubled exponent numerator to
/// nonzero coefficient; the zero polynomial is the empty map, and no zero
/// coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent<const V: char> {
    terms: BTreeMap<i64, BigInt>,
}

/// Conway polynomials: ordinary polynomials in the variable `z`.
pub type ZPoly = HalfLaurent<'z'>;
/// Alexander and Jones polynomials: Laurent polynomials in `t^{1/2}`.
pub type TPoly = HalfLaurent<'t'>;
/// Kauffman bracket values: Laurent polynomials in the variable `A`.
pub type APoly = HalfLaurent<'A'>;

impl<const V: char> HalfLaurent<V> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The constant polynomial `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial_num(0, c)
    }

    /// The variable itself, `V^1`.
    pub fn var() -> Self {
        Self::monomial_num(2, 1)
    }

    /// The monomial `c · V^{num/2}` (the exponent is given as its doubled
    /// numerator, so `monomial_num(1, 1)` is `V^{1/2}`).
    pub fn monomial_num(num: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(num, c);
        }
        HalfLaurent { terms }
    }

    /// The monomial `c · V^e` with integer exponent `e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        Self::monomial_num(2 * e, c)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of
    /// nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over `(exponent numerator, coefficient)` pairs in ascending
    /// exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    /// The coefficient of `V^{num/2}` (zero when absent).
    pub fn coeff_num(&self, num: i64) -> BigInt {
        self.terms.get(&num).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The coefficient of the integer power `V^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeff_num(2 * e)
    }

    /// Lowest exponent, or `None` for the zero polynomial.
    pub fn min_exponent(&self) -> Option<HalfInt> {
        self.terms.keys().next().map(|&n| HalfInt(n))
    }

    /// Highest exponent (the degree), or `None` for the zero polynomial.
    pub fn max_exponent(&self) -> Option<HalfInt> {
        self.terms.keys().next_back().map(|&n| HalfInt(n))
    }

    /// Breadth of the exponent range, `max − min`; `None` for zero.
    pub fn span(&self) -> Option<HalfInt> {
        Some(self.max_exponent()? - self.min_exponent()?)
    }

    /// Add `c · V^{num/2}` in place, dropping the term if it cancels.
    pub fn add_term_num(&mut self, num: i64, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        match self.terms.entry(num) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The polynomial multiplied by `V^{num/2}` (shift every exponent).
    pub fn shifted_num(&self, num: i64) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(&n, c)| (n + num, c.clone())).collect(),
        }
    }

    /// The polynomial multiplied by the integer constant `k`.
    pub fn scaled(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(&n, c)| (n, c * &k)).collect(),
        }
    }

    /// `self` raised to a non-negative integer power, by binary exponentiation.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Mirror image in the exponent: `V^{e} ↦ V^{-e}` for every term.
    pub fn inverted(&self) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(&n, c)| (-n, c.clone())).collect(),
        }
    }

    /// Substitute `V ↦ image`, where `image` may live in a different variable.
    ///
    /// Requires every exponent of `self` to be a non-negative integer (the
    /// image of a genuinely fractional or negative power would not be a
    /// Laurent polynomial in general).
    ///
    /// # Panics
    ///
    /// Panics if `self` has a fractional or negative exponent.
    pub fn substitute_half<const W: char>(&self, image: &HalfLaurent<W>) -> HalfLaurent<W> {
        let mut out = HalfLaurent::<W>::zero();
        // Powers of the image, computed once and reused across terms.
        let mut powers: Vec<HalfLaurent<W>> = vec![HalfLaurent::<W>::one()];
        for (num, c) in self.terms() {
            assert!(
                num >= 0 && num % 2 == 0,
                "substitution requires non-negative integer exponents, got exponent {}",
                HalfInt(num)
            );
            let e = (num / 2) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("powers is never empty") * image;
                powers.push(next);
            }
            out += &powers[e].scaled(c.clone());
        }
        out
    }

    /// The unit `± V^{k/2}` with `self = unit · other`, if one exists.
    ///
    /// Two zero polynomials are related by the trivial unit; a zero and a
    /// nonzero polynomial are not related.
    pub fn unit_between(&self, other: &Self) -> Option<Unit> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => {
                return Some(Unit {
                    sign: 1,
                    shift: HalfInt(0),
                })
            }
            (true, false) | (false, true) => return None,
            (false, false) => {}
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let shift = self.min_exponent()?.numerator() - other.min_exponent()?.numerator();
        let shifted = other.shifted_num(shift);
        if *self == shifted {
            Some(Unit {
                sign: 1,
                shift: HalfInt(shift),
            })
        } else if *self == -&shifted {
            Some(Unit {
                sign: -1,
                shift: HalfInt(shift),
            })
        } else {
            None
        }
    }

    /// True when `self = ± V^{k/2} · other` for some `k`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        self.unit_between(other).is_some()
    }

    /// Rename the variable without touching terms (e.g. reading a bracket
    /// value as a `t`-polynomial after an exponent change done by the caller).
    pub fn cast<const W: char>(&self) -> HalfLaurent<W> {
        HalfLaurent {
            terms: self.terms.clone(),
        }
    }

    /// Apply `f` to every exponent numerator, keeping coefficients.
    ///
    /// # Panics
    ///
    /// Panics if `f` maps two exponents to the same value.
    pub fn map_exponents(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut terms = BTreeMap::new();
        for (&n, c) in &self.terms {
            let old = terms.insert(f(n), c.clone());
            assert!(old.is_none(), "exponent map must be injective");
        }
        HalfLaurent { terms }
    }
}

impl<const V: char> From<i64> for HalfLaurent<V> {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

impl<const V: char> AddAssign<&HalfLaurent<V>> for HalfLaurent<V> {
    fn add_assign(&mut self, rhs: &HalfLaurent<V>) {
        for (&n, c) in &rhs.terms {
            self.add_term_num(n, c.clone());
        }
    }
}

impl<const V: char> SubAssign<&HalfLaurent<V>> for HalfLaurent<V> {
    fn sub_assign(&mut self, rhs: &HalfLaurent<V>) {
        for (&n, c) in &rhs.terms {
            self.add_term_num(n, -c.clone());
        }
    }
}

impl<const V: char> Add for &HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn add(self, rhs: &HalfLaurent<V>) -> HalfLaurent<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<const V: char> Add for HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn add(mut self, rhs: HalfLaurent<V>) -> HalfLaurent<V> {
        self += &rhs;
        self
    }
}

impl<const V: char> Sub for &HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn sub(self, rhs: &HalfLaurent<V>) -> HalfLaurent<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<const V: char> Sub for HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn sub(mut self, rhs: HalfLaurent<V>) -> HalfLaurent<V> {
        self -= &rhs;
        self
    }
}

impl<const V: char> Neg for &HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn neg(self) -> HalfLaurent<V> {
        HalfLaurent {
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
        }
    }
}

impl<const V: char> Neg for HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn neg(self) -> HalfLaurent<V> {
        -&self
    }
}

impl<const V: char> Mul for &HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn mul(self, rhs: &HalfLaurent<V>) -> HalfLaurent<V> {
        let mut out = HalfLaurent::zero();
        for (&n, a) in &self.terms {
            for (&m, b) in &rhs.terms {
                out.add_term_num(n + m, a * b);
            }
        }
        out
    }
}

impl<const V: char> Mul for HalfLaurent<V> {
    type Output = HalfLaurent<V>;
    fn mul(self, rhs: HalfLaurent<V>) -> HalfLaurent<V> {
        &self * &rhs
    }
}

impl<const V: char> MulAssign<&HalfLaurent<V>> for HalfLaurent<V> {
    fn mul_assign(&mut self, rhs: &HalfLaurent<V>) {
        *self = &*self * rhs;
    }
}

impl<const V: char> Sum for HalfLaurent<V> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<const V: char> Product for HalfLaurent<V> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

// ---------------------------------------------------------------------------
// Canonical text rendering and parsing
// ---------------------------------------------------------------------------

/// Render one exponent in canonical form: nothing for `V^0`, bare `V` for the
/// first power, `V^e` for other non-negative integers, and braces for
/// negative or fractional exponents (`V^{-1}`, `V^{5/2}`, `V^{-1/2}`).
fn exponent_str(var: char, num: i64) -> String {
    match num {
        0 => String::new(),
        2 => var.to_string(),
        n if n % 2 == 0 && n > 0 => format!("{var}^{}", n / 2),
        n if n % 2 == 0 => format!("{var}^{{{}}}", n / 2),
        n => format!("{var}^{{{n}/2}}"),
    }
}

impl<const V: char> fmt::Display for HalfLaurent<V> {
    /// Canonical form: terms in descending exponent order, `" + "` / `" - "`
    /// separators, coefficients `±1` suppressed except on the constant term.
    /// The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&num, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            let vpart = exponent_str(V, num);
            if vpart.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{vpart}")?;
            } else {
                write!(f, "{mag}{vpart}")?;
            }
        }
        Ok(())
    }
}

/// Error produced when parsing a polynomial from text fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid polynomial at byte {position}: {message}")]
pub struct PolyParseError {
    /// Byte offset in the input where parsing failed.
    pub position: usize,
    /// What went wrong.
    pub message: String,
}

struct PolyParser<'a, const V: char> {
    input: &'a [u8],
    pos: usize,
    out: HalfLaurent<V>,
}

impl<'a, const V: char> PolyParser<'a, V> {
    fn err(&self, message: impl Into<String>) -> PolyParseError {
        PolyParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_digits(&mut self) -> Result<BigInt, PolyParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).expect("digits are ASCII");
        s.parse::<BigInt>().map_err(|e| self.err(e.to_string()))
    }

    /// Exponent after `^`: either a bare non-negative integer or a braced
    /// integer / half-integer (possibly negative). Returns the doubled
    /// numerator.
    fn parse_exponent(&mut self) -> Result<i64, PolyParseError> {
        if self.eat(b'{') {
            let negative = self.eat(b'-');
            let digits = self.parse_digits()?;
            let halved = self.eat(b'/');
            if halved && !self.eat(b'2') {
                return Err(self.err("only halves are supported in exponents"));
            }
            if !self.eat(b'}') {
                return Err(self.err("expected '}'"));
            }
            let n: i64 = i64::try_from(digits).map_err(|_| self.err("exponent out of range"))?;
            let num = if halved { n } else { 2 * n };
            Ok(if negative { -num } else { num })
        } else {
            let digits = self.parse_digits()?;
            let n: i64 = i64::try_from(digits).map_err(|_| self.err("exponent out of range"))?;
            Ok(2 * n)
        }
    }

    /// One term: `coeff`, `coeff V[^exp]`, or `V[^exp]`.
    fn parse_term(&mut self, negative: bool) -> Result<(), PolyParseError> {
        let coeff = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            Some(self.parse_digits()?)
        } else {
            None
        };
        let mut var_buf = [0u8; 4];
        let var_bytes = V.encode_utf8(&mut var_buf).as_bytes();
        let has_var = self.input[self.pos..].starts_with(var_bytes);
        if has_var {
            self.pos += var_bytes.len();
        }
        let num = if has_var && self.eat(b'^') {
            self.parse_exponent()?
        } else if has_var {
            2
        } else {
            0
        };
        let mut c = match coeff {
            Some(c) => c,
            None if has_var => BigInt::one(),
            None => return Err(self.err(format!("expected a coefficient or '{V}'"))),
        };
        if negative {
            c = -c;
        }
        self.out.add_term_num(num, c);
        Ok(())
    }

    fn parse(mut self) -> Result<HalfLaurent<V>, PolyParseError> {
        self.skip_ws();
        if self.input.is_empty() || self.pos == self.input.len() {
            return Err(self.err("empty input"));
        }
        let mut negative = self.eat(b'-');
        if self.eat(b'+') && negative {
            return Err(self.err("conflicting signs"));
        }
        self.skip_ws();
        loop {
            self.parse_term(negative)?;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
            self.pos += 1;
            self.skip_ws();
        }
        Ok(self.out)
    }
}

impl<const V: char> FromStr for HalfLaurent<V> {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser::<V> {
            input: s.as_bytes(),
            pos: 0,
            out: HalfLaurent::zero(),
        }
        .parse()
    }
}

// ---------------------------------------------------------------------------
// Exact JSON form: a list of [exponent_numerator, "coefficient"] pairs
// ---------------------------------------------------------------------------

impl<const V: char> Serialize for HalfLaurent<V> {
    /// Serializes as `[[numerator, "coeff"], …]` in descending exponent order,
    /// with coefficients as decimal strings so arbitrarily large values
    /// round-trip exactly through JSON.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&n, c) in self.terms.iter().rev() {
            seq.serialize_element(&(n, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de, const V: char> Deserialize<'de> for HalfLaurent<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TermsVisitor<const V: char>;

        impl<'de, const V: char> Visitor<'de> for TermsVisitor<V> {
            type Value = HalfLaurent<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of [exponent numerator, coefficient string] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut out = HalfLaurent::<V>::zero();
                while let Some((num, coeff)) = seq.next_element::<(i64, String)>()? {
                    let c: BigInt = coeff
                        .parse()
                        .map_err(|e| de::Error::custom(format!("bad coefficient {coeff:?}: {e}")))?;
                    if out.terms.contains_key(&num) {
                        return Err(de::Error::custom(format!(
                            "duplicate exponent numerator {num}"
                        )));
                    }
                    out.add_term_num(num, c);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_seq(TermsVisitor::<V>)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZPoly {
        s.parse().expect("test polynomial parses")
    }

    fn t(s: &str) -> TPoly {
        s.parse().expect("test polynomial parses")
    }

    #[test]
    fn arithmetic_basics() {
        let a = z("z^2 + 1");
        let b = z("z");
        assert_eq!(&a + &b, z("z^2 + z + 1"));
        assert_eq!(&a - &a, ZPoly::zero());
        assert_eq!(&a * &b, z("z^3 + z"));
        assert_eq!((-&b).to_string(), "-z");
        assert_eq!(b.pow(4), z("z^4"));
        assert!((&a - &z("1") - z("z^2")).is_zero());
    }

    #[test]
    fn display_canonical_forms() {
        assert_eq!(ZPoly::zero().to_string(), "0");
        assert_eq!(ZPoly::one().to_string(), "1");
        assert_eq!(ZPoly::constant(-3).to_string(), "-3");
        assert_eq!(z("z^3+2z").to_string(), "z^3 + 2z");
        assert_eq!(t("-t^3 + t^{5/2} + 1").to_string(), "-t^3 + t^{5/2} + 1");
        let m = TPoly::monomial_num(-1, -1);
        assert_eq!(m.to_string(), "-t^{-1/2}");
        assert_eq!(TPoly::monomial(-2, 5).to_string(), "5t^{-2}");
    }

    #[test]
    fn parse_round_trips() {
        for s in [
            "0",
            "1",
            "-1",
            "z",
            "-z",
            "z^4 + 3z^2 + 1",
            "z^5 + 4z^3 + 3z",
            "-z^5 - 2z^3",
        ] {
            assert_eq!(z(s).to_string(), s, "z round trip of {s}");
        }
        for s in [
            "t^{-1/2}",
            "-t^{5/2} - t^{1/2}",
            "t - 1 + t^{-1}",
            "-t^8 + t^5 + t^3",
            "2t^{3/2} - 7t^{-9/2}",
        ] {
            assert_eq!(t(s).to_string(), s, "t round trip of {s}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<ZPoly>().is_err());
        assert!("z^".parse::<ZPoly>().is_err());
        assert!("z + + 1".parse::<ZPoly>().is_err());
        assert!("t^{1/3}".parse::<TPoly>().is_err());
        assert!("q^2".parse::<ZPoly>().is_err());
        assert!("z^{2".parse::<ZPoly>().is_err());
    }

    #[test]
    fn parse_accepts_cancellation() {
        assert_eq!(z("z - z"), ZPoly::zero());
        assert_eq!(z("  z^2   +   1  "), z("z^2+1"));
    }

    #[test]
    fn spans_and_degrees() {
        let p = t("t^{5/2} + t^{-1}");
        assert_eq!(p.max_exponent(), Some(HalfInt(5)));
        assert_eq!(p.min_exponent(), Some(HalfInt(-2)));
        assert_eq!(p.span(), Some(HalfInt(7)));
        assert_eq!(p.span().unwrap().to_string(), "7/2");
        assert_eq!(ZPoly::zero().span(), None);
        assert_eq!(z("z^3").max_exponent().unwrap().as_integer(), Some(3));
    }

    #[test]
    fn substitution_z_to_t() {
        // z ↦ t^{1/2} − t^{-1/2}
        let image: TPoly = t("t^{1/2} - t^{-1/2}");
        assert_eq!(ZPoly::var().substitute_half(&image), image);
        // z² + 1 ↦ t − 1 + t^{-1}
        assert_eq!(z("z^2 + 1").substitute_half(&image), t("t - 1 + t^{-1}"));
        // Constants pass through.
        assert_eq!(ZPoly::one().substitute_half(&image), TPoly::one());
        assert_eq!(ZPoly::zero().substitute_half(&image), TPoly::zero());
    }

    #[test]
    #[should_panic(expected = "non-negative integer exponents")]
    fn substitution_rejects_negative_exponents() {
        let p = ZPoly::monomial(-1, 1);
        let _ = p.substitute_half(&TPoly::var());
    }

    #[test]
    fn units_between_polynomials() {
        let a = t("t - 1 + t^{-1}");
        let b = t("t^2 - t + 1");
        let u = a.unit_between(&b).expect("related by a unit");
        assert_eq!(u.sign, 1);
        assert_eq!(u.shift, HalfInt(-2));
        assert!(a.equal_up_to_unit(&(-&b)));
        assert!(!a.equal_up_to_unit(&t("t + 1")));
        assert!(TPoly::zero().equal_up_to_unit(&TPoly::zero()));
        assert!(!TPoly::zero().equal_up_to_unit(&a));
        // Fractional shifts are found too.
        let c = a.shifted_num(1);
        assert_eq!(
            a.unit_between(&c),
            Some(Unit {
                sign: 1,
                shift: HalfInt(-1)
            })
        );
    }

    #[test]
    fn json_round_trip_is_exact() {
        let p = t("-t^8 + 12345678901234567890t^{5/2} + t^{-1/2}");
        let json = serde_json::to_string(&p).expect("serializes");
        assert_eq!(
            json,
            r#"[[16,"-1"],[5,"12345678901234567890"],[-1,"1"]]"#
        );
        let back: TPoly = serde_json::from_str(&json).expect("deserializes");
        assert_eq!(back, p);
    }

    #[test]
    fn json_rejects_duplicates() {
        let bad = r#"[[2,"1"],[2,"3"]]"#;
        assert!(serde_json::from_str::<TPoly>(bad).is_err());
    }

    #[test]
    fn inverted_mirrors_exponents() {
        let p = t("t^2 + 3t^{1/2} - 1");
        assert_eq!(p.inverted(), t("t^{-2} + 3t^{-1/2} - 1"));
    }
}

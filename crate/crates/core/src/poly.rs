//! Sparse polynomials in two variables `w` and `r` with integer coefficients.
//!
//! Every weight and every invariant component is a [`BivarPoly`]. Terms are
//! kept in a `BTreeMap` keyed by [`Monomial`], and zero coefficients are never
//! stored, so structural equality is polynomial equality.
//!
//! Text form follows the usual knot-table notation, e.g. `2r^2w + w^3`.
//! Rendering orders terms by descending total degree and, within a degree,
//! by descending power of `r`. Inside a term the `r` factor is written first.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Range, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial at {}..{}: {message}", span.start, span.end)]
    Parse { span: Range<usize>, message: String },
    #[error("integer coefficient overflow")]
    Overflow,
}

/// One of the two variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    W,
    R,
}

/// `w^w * r^r` with unit coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub w: u32,
    pub r: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { w: 0, r: 0 };
    pub const W: Monomial = Monomial { w: 1, r: 0 };
    pub const R: Monomial = Monomial { w: 0, r: 1 };

    pub fn new(w: u32, r: u32) -> Self {
        Monomial { w, r }
    }

    pub fn degree(&self) -> u32 {
        self.w + self.r
    }

    pub fn exponent(&self, var: Var) -> u32 {
        match var {
            Var::W => self.w,
            Var::R => self.r,
        }
    }

    /// True when at most one variable occurs.
    pub fn is_pure(&self) -> bool {
        self.w == 0 || self.r == 0
    }

    pub fn swap_vars(self) -> Self {
        Monomial {
            w: self.r,
            r: self.w,
        }
    }

    pub fn pow(self, e: u32) -> Self {
        Monomial {
            w: self.w * e,
            r: self.r * e,
        }
    }

    fn display_key(&self) -> (Reverse<u32>, Reverse<u32>) {
        (Reverse(self.degree()), Reverse(self.r))
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial {
            w: self.w + rhs.w,
            r: self.r + rhs.r,
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, var: char, e: u32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return f.write_str("1");
        }
        write_factor(f, 'r', self.r)?;
        write_factor(f, 'w', self.w)
    }
}

/// Sparse polynomial in `w` and `r` over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, i64>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::monomial(Monomial::ONE, 1)
    }

    pub fn constant(c: i64) -> Self {
        BivarPoly::monomial(Monomial::ONE, c)
    }

    pub fn w() -> Self {
        BivarPoly::monomial(Monomial::W, 1)
    }

    pub fn r() -> Self {
        BivarPoly::monomial(Monomial::R, 1)
    }

    pub fn monomial(m: Monomial, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(m, coeff);
        }
        BivarPoly { terms }
    }

    /// Builds a polynomial from `(w-exponent, r-exponent, coefficient)` triples,
    /// summing repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, i64)>,
    {
        terms
            .into_iter()
            .map(|(w, r, c)| BivarPoly::monomial(Monomial::new(w, r), c))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in monomial order (not display order).
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    /// Terms in canonical display order.
    pub fn display_terms(&self) -> Vec<(Monomial, i64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(m, _)| m.display_key());
        v
    }

    /// Largest total degree of any term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn insert_term(&mut self, m: Monomial, c: i64) -> Result<(), PolyError> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = entry.checked_add(c).ok_or(PolyError::Overflow)?;
        if *entry == 0 {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BivarPoly) -> Result<BivarPoly, PolyError> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_term(m, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &BivarPoly) -> Result<BivarPoly, PolyError> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_term(m, c.checked_neg().ok_or(PolyError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &BivarPoly) -> Result<BivarPoly, PolyError> {
        let mut out = BivarPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.insert_term(m1 * m2, c1.checked_mul(c2).ok_or(PolyError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: i64) -> Result<BivarPoly, PolyError> {
        let mut out = BivarPoly::zero();
        for (m, c) in self.terms() {
            out.insert_term(m, c.checked_mul(k).ok_or(PolyError::Overflow)?)?;
        }
        Ok(out)
    }

    /// Multiplies every term by the monomial `m`.
    pub fn mul_monomial(&self, m: Monomial) -> BivarPoly {
        BivarPoly {
            terms: self.terms().map(|(t, c)| (t * m, c)).collect(),
        }
    }

    /// Divides every coefficient by `d`, or returns `None` when some
    /// coefficient is not a multiple of `d`.
    pub fn exact_div(&self, d: i64) -> Option<BivarPoly> {
        if d == 0 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            if c % d != 0 {
                return None;
            }
            terms.insert(m, c / d);
        }
        Some(BivarPoly { terms })
    }

    /// Exchanges `w` and `r`.
    pub fn swap_vars(&self) -> BivarPoly {
        BivarPoly {
            terms: self.terms().map(|(m, c)| (m.swap_vars(), c)).collect(),
        }
    }

    /// `p(w, r) -> p(w^2, r^2)`.
    pub fn substitute_squares(&self) -> BivarPoly {
        BivarPoly {
            terms: self.terms().map(|(m, c)| (m.pow(2), c)).collect(),
        }
    }

    /// Formal partial derivative in `var`, evaluated at `w = r = 1`.
    pub fn partial_eval_deriv(&self, var: Var) -> i64 {
        self.terms()
            .map(|(m, c)| c * i64::from(m.exponent(var)))
            .sum()
    }

    /// Evaluates at an integer point; `None` on overflow.
    pub fn eval(&self, w: i64, r: i64) -> Option<i128> {
        let mut acc: i128 = 0;
        for (m, c) in self.terms() {
            let tw = i128::from(w).checked_pow(m.w)?;
            let tr = i128::from(r).checked_pow(m.r)?;
            let t = i128::from(c).checked_mul(tw)?.checked_mul(tr)?;
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    /// True when every term involves at most one variable.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(Monomial::is_pure)
    }
}

impl From<Monomial> for BivarPoly {
    fn from(m: Monomial) -> Self {
        BivarPoly::monomial(m, 1)
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&BivarPoly> for &BivarPoly {
            type Output = BivarPoly;

            fn $method(self, rhs: &BivarPoly) -> BivarPoly {
                self.$checked(rhs).expect("polynomial coefficient overflow")
            }
        }

        impl $tr<BivarPoly> for BivarPoly {
            type Output = BivarPoly;

            fn $method(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&BivarPoly> for BivarPoly {
            type Output = BivarPoly;

            fn $method(self, rhs: &BivarPoly) -> BivarPoly {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly::zero() - self
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl Sum for BivarPoly {
    fn sum<I: Iterator<Item = BivarPoly>>(iter: I) -> Self {
        iter.fold(BivarPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a BivarPoly> for BivarPoly {
    fn sum<I: Iterator<Item = &'a BivarPoly>>(iter: I) -> Self {
        iter.fold(BivarPoly::zero(), |acc, p| acc + p)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            let abs = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else {
                if abs != 1 {
                    write!(f, "{abs}")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses the textual notation `poly := ["-"] term (("+" | "-") term)*`,
/// `term := [int] factor*`, `factor := ("w" | "r") ["^" int]`.
/// Whitespace is ignored between tokens and factors may come in any order.
pub fn parse_poly(text: &str) -> Result<BivarPoly, PolyError> {
    Parser::new(text).parse()
}

/// Canonical text form; the zero polynomial renders as `0`.
pub fn render_poly(p: &BivarPoly) -> String {
    p.to_string()
}

impl FromStr for BivarPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, span: Range<usize>, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            span,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<Option<u64>, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        self.src[start..self.pos]
            .parse::<u64>()
            .map(Some)
            .map_err(|_| self.error(start..self.pos, "integer out of range"))
    }

    fn parse(mut self) -> Result<BivarPoly, PolyError> {
        if self.peek().is_none() {
            return Err(self.error(0..0, "empty input"));
        }
        let mut out = BivarPoly::zero();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            let c = if negative {
                c.checked_neg().ok_or(PolyError::Overflow)?
            } else {
                c
            };
            out.insert_term(m, c)?;
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => {
                    let end = self.src[self.pos..]
                        .char_indices()
                        .nth(1)
                        .map_or(self.src.len(), |(i, _)| self.pos + i);
                    return Err(self.error(self.pos..end, "expected '+' or '-'"));
                }
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, i64), PolyError> {
        self.skip_ws();
        let start = self.pos;
        let coeff = self.integer()?;
        let mut m = Monomial::ONE;
        let mut factors = 0;
        while let Some(b) = self.peek() {
            let var = match b {
                b'w' => Var::W,
                b'r' => Var::R,
                _ => break,
            };
            self.pos += 1;
            let e = if self.peek() == Some(b'^') {
                self.pos += 1;
                let at = self.pos;
                let e = self
                    .integer()?
                    .ok_or_else(|| self.error(at..at + 1, "expected exponent after '^'"))?;
                u32::try_from(e).map_err(|_| self.error(at..self.pos, "exponent too large"))?
            } else {
                1
            };
            match var {
                Var::W => m.w += e,
                Var::R => m.r += e,
            }
            factors += 1;
        }
        if coeff.is_none() && factors == 0 {
            let end = (self.pos + 1).min(self.src.len());
            return Err(self.error(start..end.max(start), "expected a term"));
        }
        let c = i64::try_from(coeff.unwrap_or(1))
            .map_err(|_| self.error(start..self.pos, "coefficient out of range"))?;
        Ok((m, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> BivarPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!((p("3w") + p("w^3")).to_string(), "w^3 + 3w");
        assert_eq!(BivarPoly::zero() + p("r^2 + 2w"), p("r^2 + 2w"));
        assert_eq!(p("2r^2w + w^3") + p("-w^3"), p("2r^2w"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(BivarPoly::r() * BivarPoly::r() * p("w^2"), p("r^2w^2"));
        assert_eq!(p("w^2") * p("2r"), p("2rw^2"));
        assert_eq!(BivarPoly::one() * p("4r + 3w"), p("4r + 3w"));
    }

    #[test]
    fn swap_and_squares() {
        assert_eq!(p("w^3").swap_vars(), p("r^3"));
        assert_eq!(p("r^2w^2").swap_vars(), p("r^2w^2"));
        assert_eq!(p("4r + 3w").swap_vars(), p("4w + 3r"));
        assert_eq!(p("3w").substitute_squares(), p("3w^2"));
        assert_eq!(p("w^3 + 2w").substitute_squares(), p("w^6 + 2w^2"));
        assert!(BivarPoly::zero().substitute_squares().is_zero());
    }

    #[test]
    fn derivative_at_one() {
        assert_eq!(p("3w").partial_eval_deriv(Var::W), 3);
        assert_eq!(p("w^2 + 2r").partial_eval_deriv(Var::R), 2);
        assert_eq!(p("w^2 + 2r").partial_eval_deriv(Var::W), 2);
        assert_eq!(BivarPoly::zero().partial_eval_deriv(Var::W), 0);
    }

    #[test]
    fn parse_examples() {
        let q = p("2r^2 + 3w");
        assert_eq!(q.coeff(Monomial::new(0, 2)), 2);
        assert_eq!(q.coeff(Monomial::new(1, 0)), 3);
        assert_eq!(q.num_terms(), 2);
        assert!(p("0").is_zero());
        let q = p("r^4w^3 + r^2w^5");
        assert_eq!(q, BivarPoly::from_terms([(3, 4, 1), (5, 2, 1)]));
        assert_eq!(p("w r^2"), p("r^2w"));
        assert_eq!(p(" 2 r ^ 2 w "), p("2r^2w"));
    }

    #[test]
    fn parse_errors_carry_span() {
        match parse_poly("3w + 2x") {
            Err(PolyError::Parse { span, .. }) => assert_eq!(span, 6..7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("").is_err());
        assert!(parse_poly("w^").is_err());
        assert!(parse_poly("w +").is_err());
        assert!(parse_poly("+ w").is_err());
    }

    #[test]
    fn render_examples() {
        assert_eq!(BivarPoly::from_terms([(1, 0, 3)]).to_string(), "3w");
        assert_eq!(BivarPoly::zero().to_string(), "0");
        assert_eq!(
            BivarPoly::from_terms([(1, 2, 2), (3, 0, 1)]).to_string(),
            "2r^2w + w^3"
        );
        assert_eq!(p("3w + 4r").to_string(), "4r + 3w");
        assert_eq!(p("1 - w").to_string(), "-w + 1");
        assert_eq!(p("-2r^2 + 5").to_string(), "-2r^2 + 5");
    }

    #[test]
    fn overflow_is_an_error() {
        let big = BivarPoly::constant(i64::MAX);
        assert_eq!(big.checked_add(&BivarPoly::one()), Err(PolyError::Overflow));
        assert_eq!(
            big.checked_mul(&BivarPoly::constant(2)),
            Err(PolyError::Overflow)
        );
        assert!(parse_poly("99999999999999999999w").is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("6w + 12r").exact_div(6), Some(p("w + 2r")));
        assert_eq!(p("6w + 13r").exact_div(6), None);
    }

    fn arb_poly() -> impl Strategy<Value = BivarPoly> {
        prop::collection::vec((0u32..5, 0u32..5, -20i64..20), 0..6).prop_map(BivarPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn swap_is_involution(a in arb_poly()) {
            prop_assert_eq!(a.swap_vars().swap_vars(), a);
        }

        #[test]
        fn render_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(parse_poly(&render_poly(&a)).unwrap(), a);
        }

        #[test]
        fn squares_match_evaluation(a in arb_poly(), w in -4i64..4, r in -4i64..4) {
            prop_assert_eq!(a.substitute_squares().eval(w, r), a.eval(w * w, r * r));
        }

        #[test]
        fn no_zero_coefficients(a in arb_poly(), b in arb_poly()) {
            prop_assert!((&a * &b - &a).terms().all(|(_, c)| c != 0));
        }
    }
}

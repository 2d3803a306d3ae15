//! Exact arithmetic in the field Q(i,√2).
//!
//! Every matrix entry in this crate is a [`Scalar`]: a number
//! `a + b·i + c·√2 + d·i·√2` with rational components. The field is the
//! smallest one containing all constants used by the toolkit (the basis
//! changes need `1/√2`, complexification needs `i`), so no general
//! computer-algebra dependency is required. Equality is component-wise and
//! exact; there is no floating point anywhere.
//!
//! ```
//! use hkinv::scalar::Scalar;
//!
//! let r2 = Scalar::sqrt2();
//! assert_eq!(&r2 * &r2, Scalar::from_int(2));
//! assert_eq!(Scalar::i().inv().unwrap(), -Scalar::i());
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number; numerator and denominator are arbitrary-precision.
pub type Rational = BigRational;

/// Element of Q(i,√2): `a + b·i + c·√2 + d·i·√2`.
///
/// The representation is unique, so component-wise equality is field equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    /// Rational part.
    pub a: Rational,
    /// Coefficient of `i`.
    pub b: Rational,
    /// Coefficient of `√2`.
    pub c: Rational,
    /// Coefficient of `i·√2`.
    pub d: Rational,
}

/// Builds a rational from an integer numerator and positive denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar {
    /// Builds a scalar from its four components.
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    /// The zero element.
    pub fn zero() -> Self {
        Scalar::default()
    }

    /// The unit element.
    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// The square root of two.
    pub fn sqrt2() -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
    }

    /// Embeds an integer.
    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from(BigInt::from(n)))
    }

    /// Embeds a rational.
    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// Builds the rational scalar `num/den`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(ratio(num, den))
    }

    /// True iff all four components are zero.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True iff the scalar is 1.
    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True iff the scalar lies in Q.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True iff the scalar lies in the real subfield Q(√2).
    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.d.is_zero()
    }

    /// The rational part, or an error if the scalar is irrational.
    pub fn as_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.a.clone())
        } else {
            Err(Error::UnsupportedField(format!("{self} is not rational")))
        }
    }

    /// Complex conjugation `i → −i`; fixes `a`, `c` and negates `b`, `d`.
    pub fn conj(&self) -> Self {
        Scalar::new(self.a.clone(), -&self.b, self.c.clone(), -&self.d)
    }

    /// Galois conjugation `√2 → −√2`; fixes `a`, `b` and negates `c`, `d`.
    pub fn conj_sqrt2(&self) -> Self {
        Scalar::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }

    /// Multiplicative inverse.
    ///
    /// Multiplying by the two conjugates pushes the norm down the tower
    /// Q(i,√2) → Q(√2) → Q, where it can be inverted as a rational.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c1 = self.conj();
        let z = self * &c1;
        debug_assert!(z.is_real());
        let c2 = z.conj_sqrt2();
        let n = (&z * &c2).a;
        debug_assert!(!n.is_zero());
        let inv_n = Scalar::from_rational(n.recip());
        Ok(&(&c1 * &c2) * &inv_n)
    }

    /// Scales by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        Scalar::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    fn term_strings(&self) -> Vec<String> {
        fn rat(r: &Rational) -> String {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        let mut out = Vec::new();
        for (coeff, marker) in [
            (&self.a, ""),
            (&self.b, "i"),
            (&self.c, "r2"),
            (&self.d, "i*r2"),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let text = rat(coeff);
            out.push(match (text.as_str(), marker) {
                (_, "") => text,
                ("1", _) => marker.to_string(),
                ("-1", _) => format!("-{marker}"),
                _ => format!("{text}*{marker}"),
            });
        }
        out
    }
}

impl fmt::Display for Scalar {
    /// Renders as e.g. `-1/2+3*i+1/2*r2-2*i*r2`, omitting zero components;
    /// zero renders as `0`. The format round-trips through [`Scalar::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.term_strings();
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join("+").replace("+-", "-"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses the [`fmt::Display`] format. Bare markers are accepted
    /// (`i`, `-r2`, `i*r2`), as is the marker order `r2*i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::ParseError(format!("{msg}: {s:?}"));
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty scalar"));
        }
        // Split into sign-prefixed terms at top-level + and -.
        let mut terms: Vec<String> = Vec::new();
        for (k, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && k != 0 && !matches!(compact.as_bytes()[k - 1], b'+' | b'-' | b'/' | b'*') {
                terms.push(String::new());
            }
            if let Some(last) = terms.last_mut() {
                last.push(ch);
            } else {
                terms.push(ch.to_string());
            }
        }
        let mut out = Scalar::zero();
        for term in &terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1i64, rest),
                None => (1i64, term.strip_prefix('+').unwrap_or(term)),
            };
            if body.contains(['+', '-']) {
                return Err(bad("sign inside term"));
            }
            let mut has_i = false;
            let mut has_r2 = false;
            let mut coeff: Option<&str> = None;
            for factor in body.split('*') {
                match factor {
                    "i" if !has_i => has_i = true,
                    "r2" if !has_r2 => has_r2 = true,
                    _ if coeff.is_none() && !factor.is_empty() => coeff = Some(factor),
                    _ => return Err(bad("malformed term")),
                }
            }
            let mut value = match coeff {
                None => Rational::one(),
                Some(text) => {
                    let (numer, denom) = match text.split_once('/') {
                        Some((n, d)) => (n, d),
                        None => (text, "1"),
                    };
                    let n = BigInt::from_str(numer).map_err(|_| bad("bad numerator"))?;
                    let d = BigInt::from_str(denom).map_err(|_| bad("bad denominator"))?;
                    if d.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    Rational::new(n, d)
                }
            };
            if sign < 0 {
                value = -value;
            }
            let slot = match (has_i, has_r2) {
                (false, false) => &mut out.a,
                (true, false) => &mut out.b,
                (false, true) => &mut out.c,
                (true, true) => &mut out.d,
            };
            *slot += value;
        }
        Ok(out)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    /// Expands the product using `i² = −1` and `(√2)² = 2`.
    fn mul(self, r: &Scalar) -> Scalar {
        let two = BigInt::from(2);
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&r.a, &r.b, &r.c, &r.d);
        Scalar::new(
            a1 * a2 - b1 * b2 + (c1 * c2 - d1 * d2) * &two,
            a1 * b2 + b1 * a2 + (c1 * d2 + d1 * c2) * &two,
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn mul_conjugate_pair() {
        let x = s("1/2+1/2*i");
        let y = s("1/2-1/2*i");
        assert_eq!(&x * &y, Scalar::from_ratio(1, 2));
    }

    #[test]
    fn mul_sqrt2_squares_to_two() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn inv_one_plus_i() {
        let x = s("1+i");
        let inv = x.inv().unwrap();
        assert_eq!(inv, s("1/2-1/2*i"));
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn inv_zero_rejected() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conj_fixes_real_components() {
        let x = s("1+2*i+3*r2+4*i*r2");
        assert_eq!(x.conj(), s("1-2*i+3*r2-4*i*r2"));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn display_round_trip() {
        for text in ["0", "-1", "2/3", "1-i", "-1/2+3*i+1/2*r2-2*i*r2", "i*r2"] {
            let x = s(text);
            assert_eq!(s(&x.to_string()), x);
        }
        assert_eq!(s("r2*i"), s("i*r2"));
        assert_eq!(s(" 1 + i "), s("1+i"));
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "1**i", "i*i", "1/0", "x", "1+", "--1"] {
            assert!(text.parse::<Scalar>().is_err(), "accepted {text:?}");
        }
    }

    prop_compose! {
        fn arb_rational()(n in -9i64..=9, d in 1i64..=4) -> Rational {
            ratio(n, d)
        }
    }

    prop_compose! {
        fn arb_scalar()(a in arb_rational(), b in arb_rational(),
                        c in arb_rational(), d in arb_rational()) -> Scalar {
            Scalar::new(a, b, c, d)
        }
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &(-&x), Scalar::zero());
        }

        #[test]
        fn inverse_property(x in arb_scalar()) {
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn conj_is_multiplicative(x in arb_scalar(), y in arb_scalar()) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }

        #[test]
        fn string_round_trip(x in arb_scalar()) {
            let back: Scalar = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}

//! Revolving base-(1+i) representations of Gaussian integers.
//!
//! A representation is a digit string δ₀…δₙ over {0, ±1, ±i}, most
//! significant first, with value Σₖ δₙ₋ₖ(1+i)ᵏ, whose non-zero digits read
//! left to right follow 1 → −i → −1 → i → 1. Each non-zero Gaussian integer
//! has exactly one such representation for each choice of right-most
//! non-zero digit (the anchor).
//!
//! Every unit is ≡ 1 and 0 is ≡ 0 modulo (1+i), so the least significant
//! digit is forced by the parity of x + y; the digits are extracted from the
//! right with no search. All arithmetic is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::automaton::DigitString;
use crate::error::{Error, Result};
use crate::numerics::{Digit, RationalAngle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub x: i64,
    pub y: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { x: 0, y: 0 };
    pub const ONE: GaussianInt = GaussianInt { x: 1, y: 0 };
    pub const I: GaussianInt = GaussianInt { x: 0, y: 1 };
    pub const BASE: GaussianInt = GaussianInt { x: 1, y: 1 };

    pub const fn new(x: i64, y: i64) -> Self {
        GaussianInt { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn conj(&self) -> Self {
        GaussianInt::new(self.x, -self.y)
    }

    pub fn norm(&self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    /// (1+i) | (x+iy) ⇔ x ≡ y (mod 2)
    pub fn divisible_by_base(&self) -> bool {
        (self.x - self.y).rem_euclid(2) == 0
    }

    /// Exact quotient a/b, or `None` when b does not divide a.
    pub fn checked_div(&self, b: GaussianInt) -> Option<GaussianInt> {
        let n = b.norm();
        if n == 0 {
            return None;
        }
        let p = *self * b.conj();
        (p.x % n == 0 && p.y % n == 0).then(|| GaussianInt::new(p.x / n, p.y / n))
    }

    /// z/(1+i) = ((x+y) + i(y−x))/2; caller guarantees divisibility.
    fn div_base(&self) -> GaussianInt {
        debug_assert!(self.divisible_by_base());
        GaussianInt::new((self.x + self.y) / 2, (self.y - self.x) / 2)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.x * o.x - self.y * o.y, self.x * o.y + self.y * o.x)
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.x, -self.y)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, y) => write!(f, "{y}i"),
            (x, y) if y < 0 => write!(f, "{x}{y}i"),
            (x, y) => write!(f, "{x}+{y}i"),
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Accepts forms like `-5+33i`, `3`, `2i`, `-i`, `1-i`, `i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("bad Gaussian integer {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let coef = |c: &str| -> Result<i64> {
            match c {
                "" | "+" => Ok(1),
                "-" => Ok(-1),
                c => c.parse().map_err(|_| bad()),
            }
        };
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianInt::new(t.parse().map_err(|_| bad())?, 0));
        };
        if body.is_empty() {
            return Ok(GaussianInt::I);
        }
        // split at the last sign that is not the leading one
        match body[1..].rfind(['+', '-']).map(|p| p + 1) {
            Some(p) => {
                let x = body[..p].parse().map_err(|_| bad())?;
                Ok(GaussianInt::new(x, coef(&body[p..])?))
            }
            None => Ok(GaussianInt::new(0, coef(body)?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitDigit {
    Zero,
    One,
    MinusOne,
    I,
    MinusI,
}

impl UnitDigit {
    pub const ANCHORS: [UnitDigit; 4] = [
        UnitDigit::One,
        UnitDigit::MinusOne,
        UnitDigit::I,
        UnitDigit::MinusI,
    ];

    pub fn value(&self) -> GaussianInt {
        match self {
            UnitDigit::Zero => GaussianInt::ZERO,
            UnitDigit::One => GaussianInt::ONE,
            UnitDigit::MinusOne => -GaussianInt::ONE,
            UnitDigit::I => GaussianInt::I,
            UnitDigit::MinusI => -GaussianInt::I,
        }
    }

    /// Multiplication by i.
    pub fn times_i(&self) -> UnitDigit {
        match self {
            UnitDigit::Zero => UnitDigit::Zero,
            UnitDigit::One => UnitDigit::I,
            UnitDigit::I => UnitDigit::MinusOne,
            UnitDigit::MinusOne => UnitDigit::MinusI,
            UnitDigit::MinusI => UnitDigit::One,
        }
    }

    /// Multiplication by −i, the left-to-right step of the cycle.
    pub fn times_minus_i(&self) -> UnitDigit {
        self.times_i().times_i().times_i()
    }

    /// Index k with unit = e^{−ikπ/2}, i.e. the rotation digit at θ = −π/2.
    pub fn rot_index(&self) -> Option<u32> {
        match self {
            UnitDigit::Zero => None,
            UnitDigit::One => Some(0),
            UnitDigit::MinusI => Some(1),
            UnitDigit::MinusOne => Some(2),
            UnitDigit::I => Some(3),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            UnitDigit::Zero => "0",
            UnitDigit::One => "1",
            UnitDigit::MinusOne => "-1",
            UnitDigit::I => "i",
            UnitDigit::MinusI => "-i",
        }
    }
}

impl fmt::Display for UnitDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for UnitDigit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches('(').trim_end_matches(')') {
            "0" => Ok(UnitDigit::Zero),
            "1" => Ok(UnitDigit::One),
            "-1" => Ok(UnitDigit::MinusOne),
            "i" => Ok(UnitDigit::I),
            "-i" => Ok(UnitDigit::MinusI),
            other => Err(Error::parse(format!("bad base-(1+i) digit {other:?}"))),
        }
    }
}

/// Most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    digits: Vec<UnitDigit>,
}

impl Representation {
    /// Checks the cycle and leading-digit invariants.
    pub fn new(digits: Vec<UnitDigit>) -> Result<Self> {
        if digits.first() == Some(&UnitDigit::Zero) {
            return Err(Error::invalid("representation has a leading zero"));
        }
        let mut prev: Option<UnitDigit> = None;
        for &d in digits.iter().filter(|d| **d != UnitDigit::Zero) {
            if let Some(p) = prev {
                if p.times_minus_i() != d {
                    return Err(Error::invalid(format!(
                        "digit {d} does not follow {p} in the cycle 1 → -i → -1 → i"
                    )));
                }
            }
            prev = Some(d);
        }
        Ok(Representation { digits })
    }

    pub fn digits(&self) -> &[UnitDigit] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The right-most non-zero digit.
    pub fn anchor(&self) -> Option<UnitDigit> {
        self.digits
            .iter()
            .rev()
            .copied()
            .find(|d| *d != UnitDigit::Zero)
    }

    /// The same digits as a series string at θ = −π/2, δ₀ in first position.
    pub fn to_digit_string(&self) -> DigitString {
        let angle = RationalAngle::new(-1, 4).expect("valid angle");
        let digits = self
            .digits
            .iter()
            .map(|d| d.rot_index().map_or(Digit::Zero, Digit::Rot))
            .collect();
        DigitString::new(angle, digits).expect("indices below 4")
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Representation::new(digits)
    }
}

pub const DEFAULT_STEP_CAP: usize = 256;

pub fn represent(z: GaussianInt, anchor: UnitDigit) -> Result<Representation> {
    represent_capped(z, anchor, DEFAULT_STEP_CAP)
}

pub fn represent_capped(z: GaussianInt, anchor: UnitDigit, cap: usize) -> Result<Representation> {
    if z.is_zero() {
        return Err(Error::invalid("0 has no anchored representation"));
    }
    if anchor == UnitDigit::Zero {
        return Err(Error::invalid("anchor must be a unit"));
    }
    let mut rest = z;
    let mut expect = anchor;
    let mut lsd_first = Vec::new();
    while !rest.is_zero() {
        if lsd_first.len() >= cap {
            return Err(Error::NonTermination {
                z: z.to_string(),
                steps: cap,
            });
        }
        if rest.divisible_by_base() {
            lsd_first.push(UnitDigit::Zero);
        } else {
            lsd_first.push(expect);
            rest = rest - expect.value();
            expect = expect.times_i();
        }
        rest = rest.div_base();
    }
    lsd_first.reverse();
    Representation::new(lsd_first)
}

/// Exact Horner evaluation in base (1+i).
pub fn value(r: &Representation) -> GaussianInt {
    r.digits.iter().fold(GaussianInt::ZERO, |acc, d| {
        acc * GaussianInt::BASE + d.value()
    })
}

/// The representations anchored at 1, −1, i, −i, in that order.
pub fn all_four(z: GaussianInt) -> Result<[Representation; 4]> {
    let [a, b, c, d] = UnitDigit::ANCHORS;
    Ok([
        represent(z, a)?,
        represent(z, b)?,
        represent(z, c)?,
        represent(z, d)?,
    ])
}

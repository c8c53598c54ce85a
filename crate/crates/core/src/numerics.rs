//! Exact angle arithmetic and the symbolic digit alphabet.
//!
//! An angle θ is held as a reduced signed fraction of a full turn, so that
//! θ = 2π·num/den with −den/2 < num ≤ den/2. Digits are rotation indices
//! modulo `den`; the floating value e^{ikθ} is only produced on demand.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const I: Complex = Complex::new(0.0, 1.0);

/// θ = 2π·num/den, reduced, with −π < θ ≤ π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

impl RationalAngle {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("angle denominator must be non-zero"));
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        num /= g;
        den /= g;
        // shift by whole turns into (-den/2, den/2]
        let mut r = num.rem_euclid(den);
        if 2 * r > den {
            r -= den;
        }
        num = r;
        let g = num.gcd(&den);
        Ok(RationalAngle {
            num: num / g,
            den: den / g,
        })
    }

    /// Signed numerator q′.
    pub fn num(&self) -> i64 {
        self.num
    }

    /// Denominator p: the number of distinct non-zero digits.
    pub fn den(&self) -> u32 {
        self.den as u32
    }

    /// The unsigned q in |θ| = 2πq/p.
    pub fn q(&self) -> u32 {
        self.num.unsigned_abs() as u32
    }

    pub fn radians(&self) -> f64 {
        TAU * self.num as f64 / self.den as f64
    }

    pub fn negated(&self) -> Self {
        // -den/2 < num <= den/2 is not symmetric at num = den/2 (θ = π)
        RationalAngle::new(-self.num, self.den).expect("den is non-zero")
    }

    /// e^{ikθ}, computed from the reduced residue k·num mod den.
    pub fn unit(&self, k: i64) -> Complex {
        let r = (k as i128 * self.num as i128).rem_euclid(self.den as i128) as i64;
        // fold to (-den/2, den/2] so the argument of sin/cos stays small
        let r = if 2 * r > self.den { r - self.den } else { r };
        if r == 0 {
            return Complex::new(1.0, 0.0);
        }
        if 2 * r == self.den {
            return Complex::new(-1.0, 0.0);
        }
        if 4 * r == self.den {
            return Complex::new(0.0, 1.0);
        }
        if 4 * r == -self.den {
            return Complex::new(0.0, -1.0);
        }
        let phi = TAU * r as f64 / self.den as f64;
        Complex::new(phi.cos(), phi.sin())
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    /// Parses "Q/P" (fraction of a full turn) or a bare integer "Q".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i64 = n
            .parse()
            .map_err(|_| Error::parse(format!("bad angle numerator in {s:?}")))?;
        let den: i64 = d
            .parse()
            .map_err(|_| Error::parse(format!("bad angle denominator in {s:?}")))?;
        RationalAngle::new(num, den)
    }
}

/// A symbol of Δ_θ: zero, or the rotation e^{ikθ} with 0 ≤ k < p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Digit {
    Zero,
    Rot(u32),
}

impl Digit {
    pub fn is_zero(&self) -> bool {
        matches!(self, Digit::Zero)
    }

    pub fn rot_index(&self) -> Option<u32> {
        match *self {
            Digit::Zero => None,
            Digit::Rot(k) => Some(k),
        }
    }

    /// Complex conjugate of the digit: e^{ikθ} ↦ e^{-ikθ}.
    pub fn conj(&self, a: RationalAngle) -> Digit {
        match *self {
            Digit::Zero => Digit::Zero,
            Digit::Rot(k) => Digit::Rot((a.den() - k) % a.den()),
        }
    }

    /// Multiplies a non-zero digit by e^{ilθ}.
    pub fn rotate(&self, l: u32, a: RationalAngle) -> Digit {
        match *self {
            Digit::Zero => Digit::Zero,
            Digit::Rot(k) => Digit::Rot(((k as u64 + l as u64) % a.den() as u64) as u32),
        }
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Digit::Zero => f.write_str("0"),
            Digit::Rot(k) => write!(f, "w^{k}"),
        }
    }
}

impl FromStr for Digit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Digit::Zero);
        }
        s.strip_prefix("w^")
            .and_then(|k| k.parse().ok())
            .map(Digit::Rot)
            .ok_or_else(|| Error::parse(format!("bad digit token {s:?}")))
    }
}

pub fn digit_value(d: Digit, a: RationalAngle) -> Complex {
    match d {
        Digit::Zero => Complex::new(0.0, 0.0),
        Digit::Rot(k) => a.unit(k as i64),
    }
}

/// Direction of one step around the circle of digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// multiply by e^{+iθ}
    Forward,
    /// multiply by e^{-iθ}
    Backward,
}

pub fn rot_step(k: u32, dir: Step, a: RationalAngle) -> u32 {
    let p = a.den();
    match dir {
        Step::Forward => (k + 1) % p,
        Step::Backward => (k + p - 1) % p,
    }
}

/// Formats a float pair as "re,im" using the shortest round-trip representation.
pub fn format_complex(z: Complex) -> String {
    format!("{},{}", z.re, z.im)
}

/// Parses "re,im" (or a bare real "re").
pub fn parse_complex(s: &str) -> Result<Complex> {
    let s = s.trim();
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re.trim(), im.trim()),
        None => (s, "0"),
    };
    let re: f64 = re
        .parse()
        .map_err(|_| Error::parse(format!("bad real part in {s:?}")))?;
    let im: f64 = im
        .parse()
        .map_err(|_| Error::parse(format!("bad imaginary part in {s:?}")))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::parse(format!("non-finite complex value {s:?}")));
    }
    Ok(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn angle_reduction() {
        let a = RationalAngle::new(1, 4).unwrap();
        assert_eq!((a.num(), a.den()), (1, 4));
        let a = RationalAngle::new(2, 8).unwrap();
        assert_eq!((a.num(), a.den()), (1, 4));
        let a = RationalAngle::new(-1, 6).unwrap();
        assert_eq!((a.num(), a.den()), (-1, 6));
        assert!((a.radians() + std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn angle_canonical_range() {
        // θ = π stays at +π
        let a = RationalAngle::new(1, 2).unwrap();
        assert_eq!((a.num(), a.den()), (1, 2));
        let a = RationalAngle::new(-1, 2).unwrap();
        assert_eq!((a.num(), a.den()), (1, 2));
        let a = RationalAngle::new(3, 4).unwrap();
        assert_eq!((a.num(), a.den()), (-1, 4));
        let a = RationalAngle::new(1, -4).unwrap();
        assert_eq!((a.num(), a.den()), (-1, 4));
        let a = RationalAngle::new(0, 7).unwrap();
        assert_eq!((a.num(), a.den()), (0, 1));
        let a = RationalAngle::new(5, 1).unwrap();
        assert_eq!((a.num(), a.den()), (0, 1));
        // reduction after shifting: 6/8 -> -2/8 -> -1/4
        let a = RationalAngle::new(6, 8).unwrap();
        assert_eq!((a.num(), a.den()), (-1, 4));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalAngle::new(1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!("1/0".parse::<RationalAngle>().is_err());
    }

    #[test]
    fn angle_parse() {
        let a: RationalAngle = "-1/6".parse().unwrap();
        assert_eq!(a, RationalAngle::new(-1, 6).unwrap());
        let a: RationalAngle = " 1/20 ".parse().unwrap();
        assert_eq!(a.to_string(), "1/20");
        assert!("0.25".parse::<RationalAngle>().is_err());
        assert!("a/b".parse::<RationalAngle>().is_err());
    }

    #[test]
    fn digit_values() {
        let quarter = RationalAngle::new(1, 4).unwrap();
        let minus_quarter = RationalAngle::new(-1, 4).unwrap();
        assert_eq!(digit_value(Digit::Zero, quarter), Complex::new(0.0, 0.0));
        assert_eq!(digit_value(Digit::Rot(0), quarter), Complex::new(1.0, 0.0));
        assert!(close(
            digit_value(Digit::Rot(1), minus_quarter),
            Complex::new(0.0, -1.0),
            1e-15
        ));
    }

    #[test]
    fn rot_steps() {
        let p4 = RationalAngle::new(1, 4).unwrap();
        let p6 = RationalAngle::new(1, 6).unwrap();
        assert_eq!(rot_step(0, Step::Forward, p4), 1);
        assert_eq!(rot_step(3, Step::Forward, p4), 0);
        assert_eq!(rot_step(0, Step::Backward, p6), 5);
    }

    #[test]
    fn digit_tokens() {
        assert_eq!("w^3".parse::<Digit>().unwrap(), Digit::Rot(3));
        assert_eq!("0".parse::<Digit>().unwrap(), Digit::Zero);
        assert!("w3".parse::<Digit>().is_err());
        assert_eq!(Digit::Rot(7).to_string(), "w^7");
    }

    #[test]
    fn complex_parse() {
        assert_eq!(parse_complex("0.5,-0.5").unwrap(), Complex::new(0.5, -0.5));
        assert_eq!(parse_complex("0.25").unwrap(), Complex::new(0.25, 0.0));
        assert!(parse_complex("x,1").is_err());
        assert!(parse_complex("inf,0").is_err());
    }
}

//! Weighted digit series and the point clouds they generate.
//!
//! Each case pairs a digit condition with a rule for the weight multiplying
//! the n-th digit:
//!
//! | case | condition | weight Wₙ = ∏ⱼ≤ₙ rⱼ                                       |
//! |------|-----------|-----------------------------------------------------------|
//! | 1    | GRC       | rⱼ = α                                                    |
//! | 2    | SRC       | r₁ = α, rⱼ₊₁ = conj(rⱼ)                                   |
//! | 3    | AC        | r₁ = α, rⱼ₊₁ = rⱼ if δⱼ = 0, conj(rⱼ) otherwise           |
//!
//! Every |rⱼ| = |α|, so a depth-n truncation is within |α|ⁿ⁺¹/(1−|α|) of any
//! infinite continuation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::automaton::{enumerate, Condition, DigitString, Enumeration};
use crate::cloud::{CloudSource, PointCloud};
use crate::error::{Error, Result};
use crate::numerics::{digit_value, Complex, Digit, RationalAngle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
}

impl CaseId {
    pub const ALL: [CaseId; 3] = [CaseId::Case1, CaseId::Case2, CaseId::Case3];

    pub fn condition(&self) -> Condition {
        match self {
            CaseId::Case1 => Condition::Grc,
            CaseId::Case2 => Condition::Src,
            CaseId::Case3 => Condition::Ac,
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            CaseId::Case1 => 1,
            CaseId::Case2 => 2,
            CaseId::Case3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(CaseId::Case1),
            2 => Ok(CaseId::Case2),
            3 => Ok(CaseId::Case3),
            _ => Err(Error::invalid(format!("case must be 1, 2 or 3, got {n}"))),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case{}", self.number())
    }
}

/// Which strings feed the cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subset {
    Full,
    /// first non-zero digit equal to 1
    FirstDigitOne,
}

impl Subset {
    pub fn token(&self) -> &'static str {
        match self {
            Subset::Full => "full",
            Subset::FirstDigitOne => "one",
        }
    }

    fn first_nonzero(&self) -> Option<u32> {
        match self {
            Subset::Full => None,
            Subset::FirstDigitOne => Some(0),
        }
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Subset::Full),
            "one" => Ok(Subset::FirstDigitOne),
            _ => Err(Error::parse(format!(
                "subset must be full or one, got {s:?}"
            ))),
        }
    }
}

pub(crate) fn check_alpha(alpha: Complex) -> Result<()> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) || alpha.norm() >= 1.0 {
        return Err(Error::invalid(format!(
            "|alpha| must be < 1, got |{alpha}| = {}",
            alpha.norm()
        )));
    }
    Ok(())
}

/// |α|^{depth+1} / (1 − |α|)
pub fn tail_bound(alpha: Complex, depth: usize) -> f64 {
    let r = alpha.norm();
    r.powi(depth as i32 + 1) / (1.0 - r)
}

/// Per-position weight ratios r₁..rₙ into `out`.
fn ratios(case: CaseId, alpha: Complex, digits: &[Digit], out: &mut Vec<Complex>) {
    out.clear();
    let mut r = alpha;
    for d in digits {
        out.push(r);
        match case {
            CaseId::Case1 => {}
            CaseId::Case2 => r = r.conj(),
            CaseId::Case3 => {
                if !d.is_zero() {
                    r = r.conj()
                }
            }
        }
    }
}

pub fn weight_products(case: CaseId, alpha: Complex, w: &DigitString) -> Result<Vec<Complex>> {
    check_alpha(alpha)?;
    let mut rs = Vec::with_capacity(w.len());
    ratios(case, alpha, w.digits(), &mut rs);
    let mut acc = Complex::new(1.0, 0.0);
    Ok(rs
        .into_iter()
        .map(|r| {
            acc *= r;
            acc
        })
        .collect())
}

/// Horner evaluation r₁(δ₁ + r₂(δ₂ + … + rₙδₙ)).
fn horner(
    case: CaseId,
    alpha: Complex,
    angle: RationalAngle,
    digits: &[Digit],
    scratch: &mut Vec<Complex>,
) -> Complex {
    let Some(last) = digits.iter().rposition(|d| !d.is_zero()) else {
        return Complex::new(0.0, 0.0);
    };
    let digits = &digits[..=last];
    ratios(case, alpha, digits, scratch);
    let mut acc = Complex::new(0.0, 0.0);
    for (d, r) in digits.iter().zip(scratch.iter()).rev() {
        acc = *r * (digit_value(*d, angle) + acc);
    }
    acc
}

pub fn evaluate(case: CaseId, alpha: Complex, w: &DigitString) -> Result<Complex> {
    check_alpha(alpha)?;
    if !crate::automaton::is_valid(case.condition(), w) {
        return Err(Error::invalid(format!(
            "digit string {w} does not satisfy {}",
            case.condition()
        )));
    }
    let mut scratch = Vec::with_capacity(w.len());
    Ok(horner(case, alpha, w.angle(), w.digits(), &mut scratch))
}

/// Prefix length used to split enumeration into parallel subtrees.
const SPLIT_DEPTH: usize = 6;

pub fn build_cloud(
    case: CaseId,
    alpha: Complex,
    angle: RationalAngle,
    depth: usize,
    subset: Subset,
) -> Result<PointCloud> {
    check_alpha(alpha)?;
    let cond = case.condition();
    let fnz = subset.first_nonzero();
    let prefixes: Vec<DigitString> = enumerate(cond, angle, depth.min(SPLIT_DEPTH), fnz).collect();
    let chunks: Vec<Vec<Complex>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut scratch = Vec::with_capacity(depth);
            Enumeration::from_prefix(cond, angle, prefix.digits(), depth, fnz)
                .expect("prefix came from the same enumeration")
                .map(|w| horner(case, alpha, angle, w.digits(), &mut scratch))
                .collect()
        })
        .collect();
    let points = chunks.concat();
    Ok(PointCloud::new(
        points,
        depth,
        tail_bound(alpha, depth),
        CloudSource::Series {
            case,
            alpha,
            angle,
            subset,
            rotation: 0,
        },
    ))
}

/// Multiplies every point of a series cloud by e^{ilθ}.
pub fn rotate_cloud(c: &PointCloud, l: u32) -> Result<PointCloud> {
    let CloudSource::Series {
        case,
        alpha,
        angle,
        subset,
        rotation,
    } = *c.source()
    else {
        return Err(Error::invalid(
            "rotate_cloud needs a series cloud carrying its angle",
        ));
    };
    if l >= angle.den() {
        return Err(Error::invalid(format!(
            "rotation {l} out of range for angle {angle}"
        )));
    }
    let u = angle.unit(l as i64);
    Ok(c.map(
        |z| u * z,
        1.0,
        CloudSource::Series {
            case,
            alpha,
            angle,
            subset,
            rotation: (rotation + l) % angle.den(),
        },
    ))
}

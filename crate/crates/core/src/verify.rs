//! Named numerical checks of the set identities linking digit series and
//! function systems.
//!
//! Two kinds of tolerance are used. Checks whose two sides are in exact
//! bijection at the digit level (set equations, rotation symmetry, prefix
//! sums against word images) only see floating rounding and use
//! [`EXACT_TOL`]. Checks comparing two independently truncated
//! approximations of the same attractor use twice the series tail bound.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloud::{CloudSource, PointCloud};
use crate::error::{Error, Result};
use crate::hausdorff::hausdorff;
use crate::ifs::{hutchinson_step, ifs_for_case, preset, word_points, Preset};
use crate::kiko::{eval_kiko, kiko_image_cloud, KikoParams};
use crate::numerics::{format_complex, Complex, RationalAngle, I};
use crate::pointset::{build_cloud, rotate_cloud, tail_bound, CaseId, Subset};
use crate::presets::{koch_alpha, theorem_parameters};
use crate::radix::{represent, GaussianInt, UnitDigit};
use crate::raster::{hit_mask, Rect};

/// Tolerance for identities that are exact up to rounding.
pub const EXACT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub distance: f64,
    pub tolerance: f64,
}

impl Measurement {
    pub fn new(label: impl Into<String>, distance: f64, tolerance: f64) -> Self {
        Measurement {
            label: label.into(),
            distance,
            tolerance,
        }
    }

    pub fn pass(&self) -> bool {
        self.distance <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub name: String,
    pub params: String,
    pub measurements: Vec<Measurement>,
    pub runtime: Duration,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.measurements.iter().all(Measurement::pass)
    }

    pub fn max_distance(&self) -> f64 {
        self.measurements
            .iter()
            .map(|m| m.distance)
            .fold(0.0, f64::max)
    }

    /// One `CHECK <name> dist=<d> tol=<t> PASS|FAIL` line per measurement.
    pub fn lines(&self) -> Vec<String> {
        self.measurements
            .iter()
            .map(|m| {
                let mut name = self.name.clone();
                if !m.label.is_empty() {
                    name.push('.');
                    name.push_str(&m.label);
                }
                if !self.params.is_empty() {
                    name.push(':');
                    name.push_str(&self.params);
                }
                format!(
                    "CHECK {name} dist={:e} tol={:e} {}",
                    m.distance,
                    m.tolerance,
                    if m.pass() { "PASS" } else { "FAIL" }
                )
            })
            .collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lines().join("\n"))
    }
}

fn timed(
    name: &str,
    params: String,
    body: impl FnOnce() -> Result<Vec<Measurement>>,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let measurements = body()?;
    Ok(VerifyReport {
        name: name.to_string(),
        params,
        measurements,
        runtime: start.elapsed(),
    })
}

fn series_params(case: CaseId, alpha: Complex, a: RationalAngle, depth: usize) -> String {
    format!("{case}:alpha={}:theta={a}:n={depth}", format_complex(alpha))
}

/// Hausdorff(C_{n+1}, ψ₁(C_n) ∪ ψ₂(C_n)) for the first-digit-one clouds.
pub fn check_set_equation(
    case: CaseId,
    alpha: Complex,
    a: RationalAngle,
    depth: usize,
) -> Result<VerifyReport> {
    timed("set_equation", series_params(case, alpha, a, depth), || {
        let ifs = ifs_for_case(case, alpha, a)?;
        let next = build_cloud(case, alpha, a, depth + 1, Subset::FirstDigitOne)?;
        let here = build_cloud(case, alpha, a, depth, Subset::FirstDigitOne)?;
        let image = hutchinson_step(&ifs, &here);
        Ok(vec![Measurement::new(
            "",
            hausdorff(&next, &image)?,
            EXACT_TOL,
        )])
    })
}

/// Union of the p rotated first-digit-one clouds, as one cloud.
pub fn rotation_union(one: &PointCloud, a: RationalAngle) -> Result<PointCloud> {
    let parts = (0..a.den())
        .map(|l| rotate_cloud(one, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCloud::union(
        &parts,
        CloudSource::Other(format!("rotations({})", one.label())),
    ))
}

/// (i) full cloud against the rotated first-digit-one clouds;
/// (ii) first-digit-one cloud against the word images of 0.
pub fn check_union_theorem(
    case: CaseId,
    alpha: Complex,
    a: RationalAngle,
    depth: usize,
) -> Result<VerifyReport> {
    timed(
        "union_theorem",
        series_params(case, alpha, a, depth),
        || {
            let full = build_cloud(case, alpha, a, depth, Subset::Full)?;
            let one = build_cloud(case, alpha, a, depth, Subset::FirstDigitOne)?;
            let union = rotation_union(&one, a)?;
            let words = word_points(
                &ifs_for_case(case, alpha, a)?,
                depth,
                Complex::new(0.0, 0.0),
            )?;
            Ok(vec![
                Measurement::new("rotation", hausdorff(&full, &union)?, EXACT_TOL),
                Measurement::new("ifs", hausdorff(&one, &words)?, EXACT_TOL),
            ])
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classical {
    /// the revolving set is tiled by four Dragons
    MizutaniIto,
    /// the conjugate revolving set is four Lévy curves
    KawamuraLevy,
    /// conj(L) is the attractor of the θ = π/2 case-1 system
    LevyConjugate,
}

impl Classical {
    pub const ALL: [Classical; 3] = [
        Classical::MizutaniIto,
        Classical::KawamuraLevy,
        Classical::LevyConjugate,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Classical::MizutaniIto => "mizutani_ito",
            Classical::KawamuraLevy => "kawamura_levy",
            Classical::LevyConjugate => "levy_conjugate",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Classical::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown classical check {s:?}")))
    }
}

fn quarter_turns(c: &PointCloud, label: &str) -> PointCloud {
    let parts: Vec<PointCloud> = (0..4)
        .map(|k| {
            let u = I.powi(k);
            c.map(|z| u * z, 1.0, CloudSource::Other(label.to_string()))
        })
        .collect();
    PointCloud::union(
        &parts,
        CloudSource::Other(format!("quarter_turns({label})")),
    )
}

pub fn check_classical(which: Classical, depth: usize) -> Result<VerifyReport> {
    let alpha = Complex::new(0.5, -0.5);
    let zero = Complex::new(0.0, 0.0);
    let tol = 2.0 * tail_bound(alpha, depth);
    let minus_quarter = RationalAngle::new(-1, 4)?;
    let quarter = RationalAngle::new(1, 4)?;
    timed(which.name(), format!("n={depth}"), || {
        let d = match which {
            Classical::MizutaniIto => {
                let x = build_cloud(CaseId::Case1, alpha, minus_quarter, depth, Subset::Full)?;
                let dragon = word_points(&preset(Preset::DragonTile)?, depth, zero)?;
                hausdorff(&x, &quarter_turns(&dragon, "dragon"))?
            }
            Classical::KawamuraLevy => {
                let x = build_cloud(CaseId::Case1, alpha, quarter, depth, Subset::Full)?;
                let levy = word_points(&preset(Preset::Levy)?, depth, zero)?.conj();
                hausdorff(&x, &quarter_turns(&levy, "conj(levy)"))?
            }
            Classical::LevyConjugate => {
                let levy = word_points(&preset(Preset::Levy)?, depth, zero)?.conj();
                let p = word_points(&ifs_for_case(CaseId::Case1, alpha, quarter)?, depth, zero)?;
                hausdorff(&levy, &p)?
            }
        };
        Ok(vec![Measurement::new("", d, tol)])
    })
}

/// `n` dyadic points k/2³⁰ in [0, 1], drawn from a seeded generator.
///
/// Every binary digit of these is consumed within 30 unfoldings, so the
/// recursion evaluates them without truncation.
pub fn residual_samples(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (1u64 << 30) as f64;
    (0..n)
        .map(|_| rng.gen_range(0..=(1u64 << 30)) as f64 / scale)
        .collect()
}

/// Largest residual of the two-branch equation over `samples`.
pub fn functional_residual(p: &KikoParams, samples: &[f64], depth: usize) -> Result<f64> {
    let one = Complex::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for &x in samples {
        let f = eval_kiko(p, x, depth)?;
        let r = if x < 0.5 {
            f - p.alpha() * eval_kiko(p, 2.0 * x, depth)?
        } else {
            f - p.gamma() * eval_kiko(p, 2.0 * x - 1.0, depth)? - (one - p.gamma())
        };
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Residuals, endpoint values, and the dyadic image against the word cloud.
pub fn check_functional_equation(p: &KikoParams, depth: usize) -> Result<VerifyReport> {
    let params = format!(
        "alpha={}:gamma={}:n={depth}",
        format_complex(p.alpha()),
        format_complex(p.gamma())
    );
    timed("functional_equation", params, || {
        let one = Complex::new(1.0, 0.0);
        let samples = residual_samples(1024, 0x6b69_6b6f);
        let residual = functional_residual(p, &samples, depth)?;
        let ends = [
            eval_kiko(p, 0.0, depth)?.norm(),
            (eval_kiko(p, 1.0, depth)? - one).norm(),
            (eval_kiko(p, 0.5, depth)? - (one - p.gamma())).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        let bound_excess = samples
            .iter()
            .map(|&x| eval_kiko(p, x, depth).map(|f| f.norm() - p.bound()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let d = 12.min(depth);
        Ok(vec![
            Measurement::new("residual", residual, EXACT_TOL),
            Measurement::new("endpoints", ends, 1e-12),
            Measurement::new("bounded", bound_excess, 1e-12),
            Measurement::new("dyadic_image", dyadic_image_distance(p, d)?, EXACT_TOL),
        ])
    })
}

/// Hausdorff between {f(k/2^d)} and the depth-d kiko-pair word images of 0
/// together with f(1) = 1.
pub fn dyadic_image_distance(p: &KikoParams, d: usize) -> Result<f64> {
    let image = kiko_image_cloud(p, d)?;
    let ifs = preset(Preset::KikoPair {
        alpha: p.alpha(),
        gamma: p.gamma(),
    })?;
    let words = word_points(&ifs, d, Complex::new(0.0, 0.0))?;
    let end = PointCloud::new(
        vec![Complex::new(1.0, 0.0)],
        d,
        0.0,
        CloudSource::Other("f(1)".into()),
    );
    let words = PointCloud::union([&words, &end], CloudSource::Other("kiko_words".into()));
    hausdorff(&image, &words)
}

/// −5+33i anchored at −i, against its known expansion.
pub fn check_radix_example() -> Result<VerifyReport> {
    timed("radix_example", "z=-5+33i:anchor=-i".into(), || {
        let r = represent(GaussianInt::new(-5, 33), UnitDigit::MinusI)?;
        let mismatch = if r.to_string() == "1 0 0 0 -i -1 i 1 0 -i 0" {
            0.0
        } else {
            1.0
        };
        Ok(vec![Measurement::new("", mismatch, 0.0)])
    })
}

/// Fraction of A's pixels also hit by B on a shared `resolution`² grid.
///
/// A rough indicator of how much two clouds overlap; it says nothing about
/// the measure of the intersection of the limit sets.
pub fn estimate_overlap(a: &PointCloud, b: &PointCloud, resolution: usize) -> Result<f64> {
    if resolution < 16 {
        return Err(Error::invalid("overlap resolution must be at least 16"));
    }
    let both: Vec<Complex> = a.points().iter().chain(b.points()).copied().collect();
    let rect = Rect::fit(&both, resolution, resolution)
        .ok_or_else(|| Error::invalid("overlap of empty clouds"))?;
    let ma = hit_mask(a.points(), &rect, resolution, resolution);
    let mb = hit_mask(b.points(), &rect, resolution, resolution);
    let in_a = ma.iter().filter(|&&h| h).count();
    if in_a == 0 {
        return Err(Error::invalid("overlap of empty clouds"));
    }
    let shared = ma.iter().zip(&mb).filter(|(x, y)| **x && **y).count();
    Ok(shared as f64 / in_a as f64)
}

/// Parameter sets used by the functional-equation checks.
pub fn kiko_parameters() -> Vec<KikoParams> {
    [
        (Complex::new(0.5, 0.5), Complex::new(0.5, -0.5)),
        (Complex::new(0.5, 0.0), Complex::new(0.5, 0.0)),
        (Complex::new(0.4, 0.3), Complex::new(0.5, -0.2)),
    ]
    .into_iter()
    .map(|(a, g)| KikoParams::new(a, g).expect("contractive"))
    .collect()
}

/// Every named check at the given depth.
pub fn standard_suite(depth: usize) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    out.push(check_radix_example()?);
    let named = [
        (
            CaseId::Case1,
            Complex::new(0.5, -0.5),
            RationalAngle::new(-1, 4)?,
        ),
        (CaseId::Case2, koch_alpha(), RationalAngle::new(-1, 6)?),
        (
            CaseId::Case3,
            Complex::new(0.5, 0.5),
            RationalAngle::new(1, 4)?,
        ),
    ];
    for (case, alpha, a) in named {
        out.push(check_set_equation(case, alpha, a, depth)?);
    }
    for case in CaseId::ALL {
        for (alpha, a) in theorem_parameters() {
            out.push(check_union_theorem(case, alpha, a, depth)?);
        }
    }
    for c in Classical::ALL {
        out.push(check_classical(c, depth)?);
    }
    for p in kiko_parameters() {
        out.push(check_functional_equation(&p, 40)?);
    }
    Ok(out)
}

//! Two-map iterated function systems built from (anti-)similarities
//! z ↦ s·z + t and z ↦ s·z̄ + t.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cloud::{CloudSource, PointCloud};
use crate::error::{Error, Result};
use crate::numerics::{format_complex, Complex, RationalAngle};
use crate::pointset::{check_alpha, CaseId};

/// z ↦ s·z + t, or z ↦ s·conj(z) + t when `conj` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjSimilarityMap {
    scale: Complex,
    translate: Complex,
    conj: bool,
}

impl ConjSimilarityMap {
    pub fn new(scale: Complex, translate: Complex, conj: bool) -> Result<Self> {
        if !scale.norm().is_finite()
            || scale.norm() >= 1.0
            || !translate.re.is_finite()
            || !translate.im.is_finite()
        {
            return Err(Error::invalid(format!(
                "map must be a finite contraction, got scale {scale} translate {translate}"
            )));
        }
        Ok(ConjSimilarityMap {
            scale,
            translate,
            conj,
        })
    }

    pub fn scale(&self) -> Complex {
        self.scale
    }

    pub fn translate(&self) -> Complex {
        self.translate
    }

    pub fn is_conj(&self) -> bool {
        self.conj
    }

    pub fn ratio(&self) -> f64 {
        self.scale.norm()
    }

    #[inline]
    pub fn apply(&self, z: Complex) -> Complex {
        let z = if self.conj { z.conj() } else { z };
        self.scale * z + self.translate
    }

    pub fn fixed_point(&self) -> Complex {
        let s = self.scale;
        let t = self.translate;
        if !self.conj {
            return t / (Complex::new(1.0, 0.0) - s);
        }
        // x = a·x + b·y + u, y = b·x − a·y + v
        let (a, b, u, v) = (s.re, s.im, t.re, t.im);
        let det = 1.0 - s.norm_sqr();
        Complex::new((u * (1.0 + a) + b * v) / det, (v * (1.0 - a) + b * u) / det)
    }
}

pub fn apply(m: &ConjSimilarityMap, z: Complex) -> Complex {
    m.apply(z)
}

pub fn fixed_point(m: &ConjSimilarityMap) -> Complex {
    m.fixed_point()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfsPair {
    pub m1: ConjSimilarityMap,
    pub m2: ConjSimilarityMap,
    label: String,
}

impl IfsPair {
    pub fn new(m1: ConjSimilarityMap, m2: ConjSimilarityMap, label: impl Into<String>) -> Self {
        IfsPair {
            m1,
            m2,
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn maps(&self) -> [ConjSimilarityMap; 2] {
        [self.m1, self.m2]
    }

    pub fn max_ratio(&self) -> f64 {
        self.m1.ratio().max(self.m2.ratio())
    }

    /// Radius of a disk about 0 containing the attractor: max|t|/(1 − r).
    pub fn radius_bound(&self) -> f64 {
        self.m1.translate.norm().max(self.m2.translate.norm()) / (1.0 - self.max_ratio())
    }

    /// Bound on the distance from depth-n word images of `seed` to the attractor.
    pub fn tail_bound(&self, depth: usize, seed: Complex) -> f64 {
        self.max_ratio().powi(depth as i32) * (seed.norm() + self.radius_bound())
    }
}

/// The function system associated with each series case.
pub fn ifs_for_case(case: CaseId, alpha: Complex, a: RationalAngle) -> Result<IfsPair> {
    check_alpha(alpha)?;
    let rot = alpha * a.unit(1);
    let zero = Complex::new(0.0, 0.0);
    let (c1, c2) = match case {
        CaseId::Case1 => (false, false),
        CaseId::Case2 => (true, true),
        CaseId::Case3 => (false, true),
    };
    Ok(IfsPair::new(
        ConjSimilarityMap::new(alpha, zero, c1)?,
        ConjSimilarityMap::new(rot, alpha, c2)?,
        format!("{case} alpha={} theta={a}", format_complex(alpha)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// ((1+i)/2)z and ((1−i)/2)z + (1+i)/2
    Levy,
    /// ((1−i)/2)z and ((−1−i)/2)z + (1−i)/2
    DragonTile,
    /// αz and γz + (1−γ)
    KikoPair { alpha: Complex, gamma: Complex },
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "levy" => Ok(Preset::Levy),
            "dragon-tile" | "dragon_tile" => Ok(Preset::DragonTile),
            _ => Err(Error::parse(format!(
                "unknown preset {s:?} (expected levy or dragon-tile)"
            ))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Levy => f.write_str("levy"),
            Preset::DragonTile => f.write_str("dragon-tile"),
            Preset::KikoPair { alpha, gamma } => write!(
                f,
                "kiko-pair alpha={} gamma={}",
                format_complex(*alpha),
                format_complex(*gamma)
            ),
        }
    }
}

pub fn preset(p: Preset) -> Result<IfsPair> {
    let label = p.to_string();
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let (m1, m2) = match p {
        Preset::Levy => (
            ConjSimilarityMap::new(Complex::new(0.5, 0.5), zero, false)?,
            ConjSimilarityMap::new(Complex::new(0.5, -0.5), Complex::new(0.5, 0.5), false)?,
        ),
        Preset::DragonTile => (
            ConjSimilarityMap::new(Complex::new(0.5, -0.5), zero, false)?,
            ConjSimilarityMap::new(Complex::new(-0.5, -0.5), Complex::new(0.5, -0.5), false)?,
        ),
        Preset::KikoPair { alpha, gamma } => (
            ConjSimilarityMap::new(alpha, zero, false)?,
            ConjSimilarityMap::new(gamma, one - gamma, false)?,
        ),
    };
    Ok(IfsPair::new(m1, m2, label))
}

const MAX_WORD_DEPTH: usize = 40;
const SPLIT_BITS: usize = 8;

/// Images ψ_{i₁}∘…∘ψ_{iₙ}(seed) over all 2ⁿ words.
pub fn word_points(ifs: &IfsPair, depth: usize, seed: Complex) -> Result<PointCloud> {
    if depth > MAX_WORD_DEPTH {
        return Err(Error::invalid(format!(
            "word depth {depth} exceeds {MAX_WORD_DEPTH}"
        )));
    }
    let maps = ifs.maps();
    let split = depth.min(SPLIT_BITS);
    let tail_len = depth - split;
    // word bit (depth-1-k) selects the map at position k, k = 0 outermost
    let eval = move |w: u64| {
        let mut z = seed;
        for k in (0..depth).rev() {
            z = maps[((w >> (depth - 1 - k)) & 1) as usize].apply(z);
        }
        z
    };
    let chunks: Vec<Vec<Complex>> = (0..1u64 << split)
        .into_par_iter()
        .map(|hi| {
            (0..1u64 << tail_len)
                .map(|lo| eval((hi << tail_len) | lo))
                .collect()
        })
        .collect();
    Ok(PointCloud::new(
        chunks.concat(),
        depth,
        ifs.tail_bound(depth, seed),
        CloudSource::Words {
            ifs: ifs.label.clone(),
            seed,
        },
    ))
}

/// ψ₁(c) ∪ ψ₂(c).
pub fn hutchinson_step(ifs: &IfsPair, c: &PointCloud) -> PointCloud {
    let mut points = Vec::with_capacity(2 * c.len());
    for m in ifs.maps() {
        points.extend(c.points().iter().map(|&z| m.apply(z)));
    }
    let source = match c.source() {
        CloudSource::Words { seed, .. } => CloudSource::Words {
            ifs: ifs.label.clone(),
            seed: *seed,
        },
        _ => CloudSource::Other(format!("hutchinson({})", c.label())),
    };
    PointCloud::new(
        points,
        c.depth() + 1,
        c.tail_bound() * ifs.max_ratio(),
        source,
    )
}

/// {seed} pushed through `depth` Hutchinson steps.
pub fn hutchinson_iterate(ifs: &IfsPair, depth: usize, seed: Complex) -> PointCloud {
    let mut c = PointCloud::new(
        vec![seed],
        0,
        ifs.tail_bound(0, seed),
        CloudSource::Words {
            ifs: ifs.label.clone(),
            seed,
        },
    );
    for _ in 0..depth {
        c = hutchinson_step(ifs, &c);
    }
    c
}

/// Random-iteration preview of the attractor; not used by any verification.
pub fn chaos_game(ifs: &IfsPair, n_points: usize, rng_seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let maps = ifs.maps();
    let mut z = ifs.m1.fixed_point();
    let mut points = Vec::with_capacity(n_points);
    for i in 0..n_points + 32 {
        z = maps[rng.gen_range(0..2)].apply(z);
        if i >= 32 {
            points.push(z);
        }
    }
    PointCloud::new(
        points,
        0,
        f64::INFINITY,
        CloudSource::Other(format!(
            "chaos ifs={} rng={rng_seed} n={n_points}",
            ifs.label
        )),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close(a: Complex, b: Complex) -> bool {
        (a - b).norm() < 1e-14
    }

    fn dragon() -> IfsPair {
        preset(Preset::DragonTile).unwrap()
    }

    #[test]
    fn case_maps() {
        let alpha = c(0.5, -0.5);
        let d = ifs_for_case(CaseId::Case1, alpha, RationalAngle::new(-1, 4).unwrap()).unwrap();
        assert!(close(d.m1.scale(), alpha) && !d.m1.is_conj());
        assert!(close(d.m2.scale(), c(-0.5, -0.5)));
        assert!(close(d.m2.translate(), alpha));
        let ifs_dragon = dragon();
        assert!(close(ifs_dragon.m2.scale(), d.m2.scale()));

        let l = ifs_for_case(CaseId::Case1, alpha, RationalAngle::new(1, 4).unwrap()).unwrap();
        assert!(close(l.m2.scale(), c(0.5, 0.5)));
        assert!(close(l.m2.translate(), c(0.5, -0.5)));

        let koch = c(0.5, 3f64.sqrt() / 6.0);
        let k = ifs_for_case(CaseId::Case2, koch, RationalAngle::new(-1, 6).unwrap()).unwrap();
        assert!(k.m1.is_conj() && k.m2.is_conj());
        // α·e^{-iπ/3} = 1/2 − (√3/6)i
        assert!(close(k.m2.scale(), koch.conj()));

        let t = ifs_for_case(
            CaseId::Case3,
            c(0.5, 0.5),
            RationalAngle::new(1, 4).unwrap(),
        )
        .unwrap();
        assert!(!t.m1.is_conj() && t.m2.is_conj());
        assert!(ifs_for_case(
            CaseId::Case3,
            c(1.0, 0.0),
            RationalAngle::new(1, 4).unwrap()
        )
        .is_err());
    }

    #[test]
    fn presets() {
        let levy = preset(Preset::Levy).unwrap();
        assert_eq!(levy.m2.translate(), c(0.5, 0.5));
        let kiko = preset(Preset::KikoPair {
            alpha: c(0.5, 0.5),
            gamma: c(0.5, -0.5),
        })
        .unwrap();
        assert_eq!(kiko.maps(), levy.maps());
        let half = preset(Preset::KikoPair {
            alpha: c(0.5, 0.0),
            gamma: c(0.5, 0.0),
        })
        .unwrap();
        assert!(close(half.m1.apply(c(1.0, 0.0)), c(0.5, 0.0)));
        assert!(close(half.m2.apply(c(1.0, 0.0)), c(1.0, 0.0)));
        assert!(preset(Preset::KikoPair {
            alpha: c(1.0, 0.0),
            gamma: c(0.5, 0.0)
        })
        .is_err());
    }

    #[test]
    fn map_application() {
        let m = ConjSimilarityMap::new(c(0.5, 0.0), c(0.0, 0.0), false).unwrap();
        assert_eq!(m.apply(c(1.0, 0.0)), c(0.5, 0.0));
        let d = dragon();
        assert_eq!(apply(&d.m2, c(0.0, 0.0)), c(0.5, -0.5));
        assert!(close(d.m2.apply(c(0.5, -0.5)), c(0.0, -0.5)));
        assert!(ConjSimilarityMap::new(c(1.0, 0.0), c(0.0, 0.0), false).is_err());
    }

    #[test]
    fn fixed_points() {
        let alpha = c(0.3, -0.2);
        for conj in [false, true] {
            let m = ConjSimilarityMap::new(alpha, c(0.0, 0.0), conj).unwrap();
            assert_eq!(fixed_point(&m), c(0.0, 0.0));
        }
        let fp = dragon().m2.fixed_point();
        assert!(close(fp, c(0.2, -0.4)));
        let m = ConjSimilarityMap::new(c(0.5, 0.0), c(0.5, 0.0), false).unwrap();
        assert!(close(m.fixed_point(), c(1.0, 0.0)));
        let m = ConjSimilarityMap::new(c(0.3, 0.6), c(-0.4, 0.9), true).unwrap();
        let fp = m.fixed_point();
        assert!(close(m.apply(fp), fp));
    }

    #[test]
    fn word_clouds() {
        let d = dragon();
        let zero = c(0.0, 0.0);
        assert_eq!(
            word_points(&d, 0, c(0.3, 0.1)).unwrap().points(),
            &[c(0.3, 0.1)]
        );
        assert_eq!(
            word_points(&d, 1, zero).unwrap().points(),
            &[zero, c(0.5, -0.5)]
        );
        // four words, but ψ₁ψ₂(0) = ψ₂ψ₂(0) = −i/2
        let w2 = word_points(&d, 2, zero).unwrap();
        assert_eq!(w2.len(), 3);
        assert!(w2.points().iter().any(|&z| close(z, c(0.0, -0.5))));
        assert!(word_points(&d, 41, zero).is_err());
    }

    #[test]
    fn hutchinson() {
        let d = dragon();
        let zero = c(0.0, 0.0);
        let start = PointCloud::new(vec![zero], 0, 0.0, CloudSource::Other("seed".into()));
        let one = hutchinson_step(&d, &start);
        assert_eq!(one.points(), &[zero, c(0.5, -0.5)]);
        let two = hutchinson_step(&d, &one);
        assert_eq!(two.keys(), word_points(&d, 2, zero).unwrap().keys());
        let empty = PointCloud::new(vec![], 0, 0.0, CloudSource::Other("empty".into()));
        assert!(hutchinson_step(&d, &empty).is_empty());
    }

    #[test]
    fn chaos_game_is_seeded() {
        let d = dragon();
        let a = chaos_game(&d, 500, 7);
        let b = chaos_game(&d, 500, 7);
        assert_eq!(a, b);
        let r = d.radius_bound();
        assert!(a.points().iter().all(|z| z.norm() <= r + 1e-12));
    }
}

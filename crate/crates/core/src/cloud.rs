//! Finite point clouds and their text file format.
//!
//! A cloud is kept deduplicated and sorted: points are snapped to a grid of
//! [`SNAP`] and ordered lexicographically by the snapped (re, im) key, so two
//! routes that produce the same set up to rounding yield the same list.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::numerics::{format_complex, Complex, RationalAngle};
use crate::pointset::{CaseId, Subset};

/// Snapping grid used for deduplication.
pub const SNAP: f64 = 1e-12;

pub fn snap_key(z: Complex) -> (i64, i64) {
    ((z.re / SNAP).round() as i64, (z.im / SNAP).round() as i64)
}

/// Sorts by snapped key and drops points sharing a key with an earlier one.
///
/// Ties inside a key are broken by the exact coordinates, so the kept
/// representative does not depend on the input order.
pub fn canonicalize(mut points: Vec<Complex>) -> Vec<Complex> {
    points.sort_unstable_by(|a, b| {
        snap_key(*a)
            .cmp(&snap_key(*b))
            .then(a.re.total_cmp(&b.re))
            .then(a.im.total_cmp(&b.im))
    });
    points.dedup_by(|b, a| snap_key(*a) == snap_key(*b));
    points
}

/// Where a cloud's points came from; rendered into the file header.
#[derive(Debug, Clone, PartialEq)]
pub enum CloudSource {
    Series {
        case: CaseId,
        alpha: Complex,
        angle: RationalAngle,
        subset: Subset,
        /// the cloud was multiplied by e^{i·rotation·θ}
        rotation: u32,
    },
    Words {
        /// description of the function system, e.g. `levy` or
        /// `case1 alpha=0.5,-0.5 theta=-1/4`
        ifs: String,
        seed: Complex,
    },
    Kiko {
        alpha: Complex,
        gamma: Complex,
    },
    Other(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Complex>,
    depth: usize,
    tail_bound: f64,
    source: CloudSource,
}

impl PointCloud {
    pub fn new(points: Vec<Complex>, depth: usize, tail_bound: f64, source: CloudSource) -> Self {
        PointCloud {
            points: canonicalize(points),
            depth,
            tail_bound,
            source,
        }
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Complex> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn source(&self) -> &CloudSource {
        &self.source
    }

    pub fn keys(&self) -> Vec<(i64, i64)> {
        self.points.iter().map(|&z| snap_key(z)).collect()
    }

    /// Applies `f` pointwise; the tail bound is scaled by `lipschitz`.
    pub fn map(&self, f: impl Fn(Complex) -> Complex, lipschitz: f64, source: CloudSource) -> Self {
        PointCloud::new(
            self.points.iter().map(|&z| f(z)).collect(),
            self.depth,
            self.tail_bound * lipschitz,
            source,
        )
    }

    pub fn conj(&self) -> Self {
        let source = CloudSource::Other(format!("conj({})", self.label()));
        self.map(|z| z.conj(), 1.0, source)
    }

    /// Set union; depth and tail bound are the worst of the parts.
    pub fn union<'a>(
        clouds: impl IntoIterator<Item = &'a PointCloud>,
        source: CloudSource,
    ) -> Self {
        let mut points = Vec::new();
        let mut depth = 0;
        let mut tail: f64 = 0.0;
        for c in clouds {
            points.extend_from_slice(&c.points);
            depth = depth.max(c.depth);
            tail = tail.max(c.tail_bound);
        }
        PointCloud::new(points, depth, tail, source)
    }

    /// Short description, used when deriving new clouds.
    pub fn label(&self) -> String {
        match &self.source {
            CloudSource::Series { case, .. } => format!("case{}", case.number()),
            CloudSource::Words { ifs, .. } => {
                ifs.split_whitespace().next().unwrap_or("ifs").to_string()
            }
            CloudSource::Kiko { .. } => "kiko".to_string(),
            CloudSource::Other(s) => s.clone(),
        }
    }

    pub fn header(&self) -> String {
        let tail = self.tail_bound;
        let depth = self.depth;
        let mut h = String::from("# ");
        match &self.source {
            CloudSource::Series {
                case,
                alpha,
                angle,
                subset,
                rotation,
            } => {
                let _ = write!(
                    h,
                    "case={} alpha={} theta={} depth={depth} subset={} tail={tail:e}",
                    case.number(),
                    format_complex(*alpha),
                    angle,
                    subset.token(),
                );
                if *rotation != 0 {
                    let _ = write!(h, " rot={rotation}");
                }
            }
            CloudSource::Words { ifs, seed } => {
                let _ = write!(
                    h,
                    "ifs={ifs} depth={depth} seed={} tail={tail:e}",
                    format_complex(*seed)
                );
            }
            CloudSource::Kiko { alpha, gamma } => {
                let _ = write!(
                    h,
                    "kiko alpha={} gamma={} depth={depth} tail={tail:e}",
                    format_complex(*alpha),
                    format_complex(*gamma)
                );
            }
            CloudSource::Other(label) => {
                let _ = write!(h, "cloud={label} depth={depth} tail={tail:e}");
            }
        }
        h
    }

    /// Header line, then one "re im" line per point with 17 significant digits.
    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.header())?;
        for z in &self.points {
            writeln!(w, "{:.16e} {:.16e}", z.re, z.im)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// A cloud file as read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CloudFile {
    /// header tokens in order; bare words (like `kiko`) have an empty value
    pub header: Vec<(String, String)>,
    pub points: Vec<Complex>,
}

impl CloudFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.header
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn read(r: impl BufRead) -> Result<Self> {
        let mut header = Vec::new();
        let mut points = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for tok in rest.split_whitespace() {
                    let (k, v) = tok.split_once('=').unwrap_or((tok, ""));
                    header.push((k.to_string(), v.to_string()));
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |t: Option<&str>| -> Result<f64> {
                t.and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(format!("line {}: bad point {line:?}", lineno + 1)))
            };
            let re = parse(it.next())?;
            let im = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::parse(format!(
                    "line {}: trailing data in {line:?}",
                    lineno + 1
                )));
            }
            points.push(Complex::new(re, im));
        }
        Ok(CloudFile { header, points })
    }

    pub fn parse(text: &str) -> Result<Self> {
        CloudFile::read(text.as_bytes())
    }
}

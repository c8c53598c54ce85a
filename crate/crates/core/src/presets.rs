//! Named parameter sets: the bundled figures and the verification grid.

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::ifs::{preset, word_points, Preset};
use crate::numerics::{Complex, RationalAngle};
use crate::pointset::{build_cloud, CaseId, Subset};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FigureKind {
    /// the full series set for the given case and parameters
    Series {
        case: CaseId,
        alpha: Complex,
        angle: RationalAngle,
    },
    /// word images of 0 under a preset function system
    Attractor(Preset),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure {
    pub name: &'static str,
    pub kind: FigureKind,
}

impl Figure {
    pub fn cloud(&self, depth: usize) -> Result<PointCloud> {
        match self.kind {
            FigureKind::Series { case, alpha, angle } => {
                build_cloud(case, alpha, angle, depth, Subset::Full)
            }
            FigureKind::Attractor(p) => word_points(&preset(p)?, depth, Complex::new(0.0, 0.0)),
        }
    }
}

pub fn koch_alpha() -> Complex {
    Complex::new(0.5, 3f64.sqrt() / 6.0)
}

fn angle(num: i64, den: i64) -> RationalAngle {
    RationalAngle::new(num, den).expect("non-zero denominator")
}

fn series(name: &'static str, case: CaseId, alpha: Complex, num: i64, den: i64) -> Figure {
    Figure {
        name,
        kind: FigureKind::Series {
            case,
            alpha,
            angle: angle(num, den),
        },
    }
}

pub fn figures() -> Vec<Figure> {
    use CaseId::*;
    let dragon = Complex::new(0.5, -0.5);
    let half = Complex::new(0.5, 0.5);
    let quarter = Complex::new(0.5, 0.25);
    let koch = koch_alpha();
    vec![
        series("fig1-left", Case1, dragon, -1, 4),
        series("fig1-right", Case1, dragon, 1, 4),
        Figure {
            name: "levy",
            kind: FigureKind::Attractor(Preset::Levy),
        },
        series("fig2-left", Case1, half, 1, 20),
        series("fig2-right", Case1, dragon, 1, 6),
        series("fig3-top-left", Case2, koch, -1, 6),
        series("fig3-top-right", Case2, koch, 1, 6),
        series("fig3-bottom-left", Case2, koch, 1, 12),
        series("fig3-bottom-right", Case2, koch, -1, 12),
        series("fig4-top-left", Case3, half, 1, 4),
        series("fig4-top-right", Case3, half, -1, 4),
        series("fig4-bottom-left", Case3, quarter, 1, 8),
        series("fig4-bottom-right", Case3, quarter, -1, 8),
    ]
}

pub fn figure(name: &str) -> Result<Figure> {
    figures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::invalid(format!("unknown figure {name:?}")))
}

/// (α, θ) pairs of the `fig2`..`fig4` presets, plus the Dragon and Lévy
/// parameters α = (1−i)/2, θ = ±π/2.
pub fn theorem_parameters() -> Vec<(Complex, RationalAngle)> {
    let mut params: Vec<_> = figures()
        .into_iter()
        .filter(|f| {
            f.name.starts_with("fig2") || f.name.starts_with("fig3") || f.name.starts_with("fig4")
        })
        .filter_map(|f| match f.kind {
            FigureKind::Series { alpha, angle, .. } => Some((alpha, angle)),
            FigureKind::Attractor(_) => None,
        })
        .collect();
    let dragon = Complex::new(0.5, -0.5);
    params.push((dragon, angle(-1, 4)));
    params.push((dragon, angle(1, 4)));
    params
}

/// α ∈ {(1−i)/2, (1+i)/2, (2+i)/4} × θ ∈ {±π/2, ±π/3, ±π/4}.
pub fn set_equation_grid() -> Vec<(Complex, RationalAngle)> {
    let alphas = [
        Complex::new(0.5, -0.5),
        Complex::new(0.5, 0.5),
        Complex::new(0.5, 0.25),
    ];
    let angles = [(1, 4), (-1, 4), (1, 6), (-1, 6), (1, 8), (-1, 8)];
    alphas
        .iter()
        .flat_map(|&a| angles.iter().map(move |&(n, d)| (a, angle(n, d))))
        .collect()
}

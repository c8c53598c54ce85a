//! Revolving digit sequences and the fractal sets they generate.
//!
//! A digit string over {0} ∪ {e^{ikθ}} is *revolving* when consecutive
//! non-zero digits step around the circle of p-th roots of unity in a
//! prescribed pattern. Weighted sums of such strings fill out Dragon-like
//! sets which are also attractors of two-map function systems; this crate
//! builds both sides as finite point clouds and measures how close they are.
//!
//! ```
//! use revolving::{represent, GaussianInt, UnitDigit};
//!
//! let r = represent(GaussianInt::new(-5, 33), UnitDigit::MinusI).unwrap();
//! assert_eq!(r.to_string(), "1 0 0 0 -i -1 i 1 0 -i 0");
//! ```

mod error;

pub mod automaton;
pub mod cli;
pub mod cloud;
pub mod hausdorff;
pub mod ifs;
pub mod kiko;
pub mod numerics;
pub mod pointset;
pub mod presets;
pub mod radix;
pub mod raster;
pub mod verify;

pub use automaton::{enumerate, is_valid, AutomatonState, Condition, DigitString};
pub use cloud::{CloudFile, CloudSource, PointCloud};
pub use error::{Error, Result};
pub use hausdorff::{hausdorff, hausdorff_brute, hausdorff_points, hausdorff_points_brute};
pub use ifs::{ifs_for_case, preset, word_points, ConjSimilarityMap, IfsPair, Preset};
pub use kiko::{eval_kiko, kiko_image_cloud, KikoParams};
pub use numerics::{Complex, Digit, RationalAngle};
pub use pointset::{build_cloud, evaluate, rotate_cloud, tail_bound, CaseId, Subset};
pub use radix::{all_four, represent, GaussianInt, Representation, UnitDigit};
pub use raster::{rasterize, write_pgm, Bounds, GrayImage, RasterConfig, Rect};

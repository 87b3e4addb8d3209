//! Band flows: planar flows assembled from vertical strips.
//!
//! The plane is cut by vertical boundary lines `x = x_i`, each itself a
//! flowline moving vertically with direction `dir_i`. Between consecutive
//! lines lies a band. An *invariant* band translates vertically with the
//! common direction of its boundary lines. A *transition* band carries
//! leaves across from one boundary line to the other: with
//! `w = (x - a) / (b - a)` its field is
//!
//! ```text
//! ( sign · (x - a)(b - x),  d_a · (1 - w) + d_b · w )
//! ```
//!
//! which is continuous across the lines and never vanishes. The horizontal
//! equation is logistic, so every flow map has a closed form.
//!
//! A plain translation is also a [`FlowSpec`], since its leaves are not
//! vertical.

mod build;
pub mod fixtures;
pub mod generate;
mod integrate;
mod leaf;
mod probe;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point;

pub use build::{build_leaf_space, build_leaf_space_detailed, LeafSpaceBuild};
pub use integrate::IntegratedFlow;
pub use leaf::{sample_leaf, LeafSample, LeafWindow};
pub use probe::{
    codivergence_classes, codivergence_numeric, nonseparable_numeric, orbit_separation, segment,
    trivialization_coord, Chart, CodivergenceParams, CodivergenceVerdict, RegionClasses,
    TrivializationCoord, DEFAULT_SCHEDULE,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Line {
    pub x: f64,
    pub dir: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Band {
    Invariant,
    Transition { sign: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpecCode {
    NoLines,
    NonFinite,
    Ascending,
    BadDir,
    BadSign,
    BandCount,
    OuterTransition,
    DirMismatch,
    ZeroTranslation,
}

impl SpecCode {
    pub fn as_str(self) -> &'static str {
        match self {
            SpecCode::NoLines => "NO_LINES",
            SpecCode::NonFinite => "NON_FINITE",
            SpecCode::Ascending => "ASCENDING",
            SpecCode::BadDir => "BAD_DIR",
            SpecCode::BadSign => "BAD_SIGN",
            SpecCode::BandCount => "BAND_COUNT",
            SpecCode::OuterTransition => "OUTER_TRANSITION",
            SpecCode::DirMismatch => "DIR_MISMATCH",
            SpecCode::ZeroTranslation => "ZERO_TRANSLATION",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecViolation {
    pub code: SpecCode,
    pub message: String,
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("invalid flow spec: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSpec(Vec<SpecViolation>),
    #[error("integrator step underflow at ({}, {}) after time {t}", .point.x, .point.y)]
    StepUnderflow { point: Point, t: f64 },
    #[error("non-finite input or result at ({}, {})", .point.x, .point.y)]
    NonFinite { point: Point },
    #[error("x = {0} is not a vertical leaf of this flow")]
    NotAVerticalLeaf(f64),
    #[error("{0}")]
    BadArgument(String),
}

/// Validated description of a band flow.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandFlowSpec {
    lines: Vec<Line>,
    bands: Vec<Band>,
}

/// Where a point sits relative to the band decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Band(usize),
}

/// A transition band with its boundary data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Transition {
    pub a: f64,
    pub b: f64,
    pub dir_a: f64,
    pub dir_b: f64,
    pub sign: f64,
}

impl BandFlowSpec {
    pub fn new(lines: Vec<Line>, bands: Vec<Band>) -> Result<Self, FlowError> {
        let v = Self::check(&lines, &bands);
        if v.is_empty() {
            Ok(Self { lines, bands })
        } else {
            Err(FlowError::InvalidSpec(v))
        }
    }

    /// Every violation of the band-flow axioms.
    pub fn check(lines: &[Line], bands: &[Band]) -> Vec<SpecViolation> {
        let mut out = Vec::new();
        let mut push = |code, message: String| out.push(SpecViolation { code, message });
        if lines.is_empty() {
            push(
                SpecCode::NoLines,
                "a band flow needs at least one line".into(),
            );
        }
        for (i, l) in lines.iter().enumerate() {
            if !l.x.is_finite() {
                push(SpecCode::NonFinite, format!("line {i} has non-finite x"));
            }
            if l.dir != 1 && l.dir != -1 {
                push(
                    SpecCode::BadDir,
                    format!("line {i} has dir {}; expected 1 or -1", l.dir),
                );
            }
        }
        for (i, w) in lines.windows(2).enumerate() {
            if w[0].x.partial_cmp(&w[1].x) != Some(std::cmp::Ordering::Less) {
                push(
                    SpecCode::Ascending,
                    format!(
                        "line {} (x = {}) does not lie right of line {i} (x = {})",
                        i + 1,
                        w[1].x,
                        w[0].x
                    ),
                );
            }
        }
        if bands.len() != lines.len() + 1 {
            push(
                SpecCode::BandCount,
                format!(
                    "{} lines need {} bands, found {}",
                    lines.len(),
                    lines.len() + 1,
                    bands.len()
                ),
            );
            return out;
        }
        for (j, band) in bands.iter().enumerate() {
            let outer = j == 0 || j == lines.len();
            match band {
                Band::Transition { sign } => {
                    if outer {
                        push(
                            SpecCode::OuterTransition,
                            format!("band {j} is outermost but a transition"),
                        );
                    }
                    if *sign != 1 && *sign != -1 {
                        push(
                            SpecCode::BadSign,
                            format!("band {j} has sign {sign}; expected 1 or -1"),
                        );
                    }
                }
                Band::Invariant => {
                    if j > 0 && j < lines.len() && lines[j - 1].dir != lines[j].dir {
                        push(
                            SpecCode::DirMismatch,
                            format!("invariant band {j} lies between lines of opposite direction"),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn locate(&self, x: f64) -> Location {
        match self
            .lines
            .binary_search_by(|l| l.x.partial_cmp(&x).expect("finite coordinates"))
        {
            Ok(i) => Location::Line(i),
            Err(i) => Location::Band(i),
        }
    }

    /// Vertical direction of an invariant band (from any adjacent line).
    pub(crate) fn invariant_dir(&self, band: usize) -> f64 {
        let line = if band < self.lines.len() {
            band
        } else {
            band - 1
        };
        f64::from(self.lines[line].dir)
    }

    pub(crate) fn transition(&self, band: usize) -> Option<Transition> {
        match self.bands[band] {
            Band::Transition { sign } => Some(Transition {
                a: self.lines[band - 1].x,
                b: self.lines[band].x,
                dir_a: f64::from(self.lines[band - 1].dir),
                dir_b: f64::from(self.lines[band].dir),
                sign: f64::from(sign),
            }),
            Band::Invariant => None,
        }
    }

    /// Whether band `j` is a transition between lines of opposite direction,
    /// the only kind whose leaves limit onto two lines at once.
    pub fn is_branching(&self, band: usize) -> bool {
        self.transition(band).is_some_and(|t| t.dir_a != t.dir_b)
    }

    /// The flow spec of the inverse flow: every direction and sign negated.
    pub fn reversed(&self) -> BandFlowSpec {
        BandFlowSpec {
            lines: self
                .lines
                .iter()
                .map(|l| Line {
                    x: l.x,
                    dir: -l.dir,
                })
                .collect(),
            bands: self
                .bands
                .iter()
                .map(|b| match b {
                    Band::Invariant => Band::Invariant,
                    Band::Transition { sign } => Band::Transition { sign: -sign },
                })
                .collect(),
        }
    }

    fn field_at(&self, p: Point) -> Point {
        match self.locate(p.x) {
            Location::Line(i) => Point::new(0.0, f64::from(self.lines[i].dir)),
            Location::Band(j) => match self.transition(j) {
                None => Point::new(0.0, self.invariant_dir(j)),
                Some(t) => t.field(p.x),
            },
        }
    }

    fn flow_exact(&self, t: f64, p: Point) -> Point {
        match self.locate(p.x) {
            Location::Line(i) => Point::new(p.x, p.y + f64::from(self.lines[i].dir) * t),
            Location::Band(j) => match self.transition(j) {
                None => Point::new(p.x, p.y + self.invariant_dir(j) * t),
                Some(tr) => tr.flow(t, p),
            },
        }
    }
}

fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl Transition {
    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Logistic rate of `u = (x - a) / (b - a)`.
    pub fn rate(&self) -> f64 {
        self.sign * self.width()
    }

    pub fn field(&self, x: f64) -> Point {
        let w = (x - self.a) / self.width();
        Point::new(
            self.sign * (x - self.a) * (self.b - x),
            self.dir_a * (1.0 - w) + self.dir_b * w,
        )
    }

    /// `ln u` and `ln (1 - u)` for a point strictly inside the band.
    pub fn log_coords(&self, x: f64) -> (f64, f64) {
        let w = self.width();
        (((x - self.a) / w).ln(), ((self.b - x) / w).ln())
    }

    /// Closed-form flow: `u` is logistic and `y` integrates `u` exactly.
    pub fn flow(&self, t: f64, p: Point) -> Point {
        let k = self.rate();
        let (lu, lv) = self.log_coords(p.x);
        let logit = lu - lv + k * t;
        let u = sigmoid(logit);
        let x = if u <= 0.5 {
            self.a + self.width() * u
        } else {
            self.b - self.width() * sigmoid(-logit)
        };
        let mut y = p.y + self.dir_a * t;
        if self.dir_b != self.dir_a {
            // ∫₀ᵗ u = (ln(1 - u₀) + softplus(logit)) / k
            y += (self.dir_b - self.dir_a) * (lv + softplus(logit)) / k;
        }
        Point::new(x, y)
    }

    /// Time for the leaf through `x` to reach the band midline (negative if
    /// it already crossed).
    pub fn time_to_mid(&self, x: f64) -> f64 {
        let (lu, lv) = self.log_coords(x);
        (lv - lu) / self.rate()
    }
}

/// Any plane flow with a group-law flow map.
pub trait Flow {
    fn flow_map(&self, t: f64, p: Point) -> Result<Point, FlowError>;

    fn time_one_map(&self, p: Point) -> Result<Point, FlowError> {
        self.flow_map(1.0, p)
    }
}

/// A validated flow: a band flow or a translation of the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum FlowSpec {
    Bands(BandFlowSpec),
    /// The flow `p + t·v`.
    Translation(Point),
}

impl FlowSpec {
    pub fn bands(lines: Vec<Line>, bands: Vec<Band>) -> Result<Self, FlowError> {
        BandFlowSpec::new(lines, bands).map(FlowSpec::Bands)
    }

    pub fn translation(a: f64, b: f64) -> Result<Self, FlowError> {
        if !(a.is_finite() && b.is_finite()) || (a == 0.0 && b == 0.0) {
            return Err(FlowError::InvalidSpec(vec![SpecViolation {
                code: SpecCode::ZeroTranslation,
                message: format!("translation ({a}, {b}) must be finite and non-zero"),
            }]));
        }
        Ok(FlowSpec::Translation(Point::new(a, b)))
    }

    pub fn as_bands(&self) -> Option<&BandFlowSpec> {
        match self {
            FlowSpec::Bands(b) => Some(b),
            FlowSpec::Translation(_) => None,
        }
    }

    /// Velocity of the flow at `p`.
    pub fn field_at(&self, p: Point) -> Point {
        match self {
            FlowSpec::Bands(b) => b.field_at(p),
            FlowSpec::Translation(v) => *v,
        }
    }

    /// The flow spec of the inverse flow.
    pub fn reversed(&self) -> FlowSpec {
        match self {
            FlowSpec::Bands(b) => FlowSpec::Bands(b.reversed()),
            FlowSpec::Translation(v) => FlowSpec::Translation(*v * -1.0),
        }
    }
}

impl Flow for FlowSpec {
    fn flow_map(&self, t: f64, p: Point) -> Result<Point, FlowError> {
        if !t.is_finite() || !p.is_finite() {
            return Err(FlowError::NonFinite { point: p });
        }
        if t == 0.0 {
            return Ok(p);
        }
        let q = match self {
            FlowSpec::Bands(b) => b.flow_exact(t, p),
            FlowSpec::Translation(v) => p + *v * t,
        };
        if q.is_finite() {
            Ok(q)
        } else {
            Err(FlowError::NonFinite { point: p })
        }
    }
}

impl<F: Flow + ?Sized> Flow for &F {
    fn flow_map(&self, t: f64, p: Point) -> Result<Point, FlowError> {
        (**self).flow_map(t, p)
    }
}

//! Explicit plane homeomorphisms and flows conjugated by them.
//!
//! Every primitive is affine, so compositions and inverses stay affine and
//! orientation parity is the sign of the determinant.

mod checks;
mod conjugate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::FlowError;
use crate::geom::Point;

pub use checks::{
    leaf_transport_check, region_equivariance_check, verify_affine_identities, AffineReport,
    EquivarianceEntry, EquivarianceReport, TransportEntry, TransportReport,
};
pub use conjugate::{transport_band_spec, ConjugateFlow};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("map is not invertible: {0}")]
    Singular(String),
    #[error("non-finite coefficient in {0}")]
    NonFinite(String),
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// Expression tree of plane maps. JSON uses the external tag, e.g.
/// `{"compose":[{"antipodal":{}},{"translate":[1.0,2.0]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneMap {
    Identity {},
    /// `(x, y) ↦ (x + a, y + b)`
    #[serde(rename = "translate")]
    Translation(f64, f64),
    /// `(x, y) ↦ (u·x, v·y)`
    #[serde(rename = "diag")]
    LinearDiag(f64, f64),
    /// `(x, y) ↦ (-x, -y)`
    Antipodal {},
    /// `(x, y) ↦ (-x, y)`
    #[serde(rename = "reflect_y")]
    ReflectionY {},
    /// Row-major matrix acting on column vectors.
    #[serde(rename = "matrix")]
    General2x2([[f64; 2]; 2]),
    /// `[m1, ..., mk]` is `m1 ∘ ... ∘ mk`: the last map is applied first.
    Compose(Vec<PlaneMap>),
    Inverse(Box<PlaneMap>),
}

impl PlaneMap {
    pub fn translation(a: f64, b: f64) -> Self {
        PlaneMap::Translation(a, b)
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        PlaneMap::General2x2([[c, -s], [s, c]])
    }

    /// Rotation by a quarter turn, with exact coefficients.
    pub fn quarter_turn() -> Self {
        PlaneMap::General2x2([[0.0, -1.0], [1.0, 0.0]])
    }

    /// Checks every node is finite and invertible.
    pub fn validate(&self) -> Result<(), MapError> {
        let finite = |name: &str, vals: &[f64]| {
            if vals.iter().all(|v| v.is_finite()) {
                Ok(())
            } else {
                Err(MapError::NonFinite(name.into()))
            }
        };
        match self {
            PlaneMap::Identity {} | PlaneMap::Antipodal {} | PlaneMap::ReflectionY {} => Ok(()),
            PlaneMap::Translation(a, b) => finite("translate", &[*a, *b]),
            PlaneMap::LinearDiag(u, v) => {
                finite("diag", &[*u, *v])?;
                if *u == 0.0 || *v == 0.0 {
                    return Err(MapError::Singular(format!(
                        "diag({u}, {v}) has a zero entry"
                    )));
                }
                Ok(())
            }
            PlaneMap::General2x2(m) => {
                finite("matrix", &[m[0][0], m[0][1], m[1][0], m[1][1]])?;
                let det = det2(m);
                if det == 0.0 || !det.is_finite() {
                    return Err(MapError::Singular(format!(
                        "matrix {m:?} has determinant {det}"
                    )));
                }
                Ok(())
            }
            PlaneMap::Compose(ms) => ms.iter().try_for_each(PlaneMap::validate),
            PlaneMap::Inverse(m) => m.validate(),
        }
    }

    pub fn eval(&self, p: Point) -> Point {
        match self {
            PlaneMap::Identity {} => p,
            PlaneMap::Translation(a, b) => Point::new(p.x + a, p.y + b),
            PlaneMap::LinearDiag(u, v) => Point::new(u * p.x, v * p.y),
            PlaneMap::Antipodal {} => Point::new(-p.x, -p.y),
            PlaneMap::ReflectionY {} => Point::new(-p.x, p.y),
            PlaneMap::General2x2(m) => {
                Point::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
            }
            PlaneMap::Compose(ms) => ms.iter().rev().fold(p, |q, m| m.eval(q)),
            PlaneMap::Inverse(m) => m.inverse().eval(p),
        }
    }

    /// Closed-form inverse expression (no `Inverse` nodes at the top).
    pub fn inverse(&self) -> PlaneMap {
        match self {
            PlaneMap::Identity {} => PlaneMap::Identity {},
            PlaneMap::Translation(a, b) => PlaneMap::Translation(-a, -b),
            PlaneMap::LinearDiag(u, v) => PlaneMap::LinearDiag(1.0 / u, 1.0 / v),
            PlaneMap::Antipodal {} => PlaneMap::Antipodal {},
            PlaneMap::ReflectionY {} => PlaneMap::ReflectionY {},
            PlaneMap::General2x2(m) => {
                let d = det2(m);
                PlaneMap::General2x2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
            }
            PlaneMap::Compose(ms) => {
                PlaneMap::Compose(ms.iter().rev().map(PlaneMap::inverse).collect())
            }
            PlaneMap::Inverse(m) => (**m).clone(),
        }
    }

    pub fn determinant(&self) -> f64 {
        match self {
            PlaneMap::Identity {} | PlaneMap::Translation(..) | PlaneMap::Antipodal {} => 1.0,
            PlaneMap::LinearDiag(u, v) => u * v,
            PlaneMap::ReflectionY {} => -1.0,
            PlaneMap::General2x2(m) => det2(m),
            PlaneMap::Compose(ms) => ms.iter().map(PlaneMap::determinant).product(),
            PlaneMap::Inverse(m) => 1.0 / m.determinant(),
        }
    }

    /// `+1` for orientation-preserving maps, `-1` for reversing ones.
    pub fn parity(&self) -> i8 {
        if self.determinant() > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Linear part and offset: `eval(p) = L·p + t`.
    pub fn affine_parts(&self) -> ([[f64; 2]; 2], Point) {
        let t = self.eval(Point::new(0.0, 0.0));
        let c1 = self.eval(Point::new(1.0, 0.0)) - t;
        let c2 = self.eval(Point::new(0.0, 1.0)) - t;
        ([[c1.x, c2.x], [c1.y, c2.y]], t)
    }
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

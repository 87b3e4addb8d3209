//! Flows conjugated by plane maps.

use crate::flow::{Band, Flow, FlowError, FlowSpec, Line};
use crate::geom::Point;

use super::{MapError, PlaneMap};

/// The flow `g^t = h ∘ φ^t ∘ h⁻¹`, held implicitly.
#[derive(Clone, Debug)]
pub struct ConjugateFlow<F> {
    h: PlaneMap,
    h_inv: PlaneMap,
    base: F,
}

impl<F: Flow> ConjugateFlow<F> {
    pub fn new(h: PlaneMap, base: F) -> Result<Self, MapError> {
        h.validate()?;
        Ok(Self {
            h_inv: h.inverse(),
            h,
            base,
        })
    }

    pub fn conjugator(&self) -> &PlaneMap {
        &self.h
    }

    pub fn base(&self) -> &F {
        &self.base
    }
}

impl<F: Flow> Flow for ConjugateFlow<F> {
    fn flow_map(&self, t: f64, p: Point) -> Result<Point, FlowError> {
        if t == 0.0 && p.is_finite() {
            return Ok(p);
        }
        let q = self.base.flow_map(t, self.h_inv.eval(p))?;
        Ok(self.h.eval(q))
    }
}

/// Rewrites `h ∘ φ ∘ h⁻¹` as a spec when that is exact: any affine `h` for
/// a translation flow, and `h(x, y) = (±x + β, ±y + δ)` for band flows.
pub fn transport_band_spec(h: &PlaneMap, spec: &FlowSpec) -> Option<FlowSpec> {
    h.validate().ok()?;
    let ([[alpha, bxy], [byx, gamma]], t) = h.affine_parts();
    match spec {
        FlowSpec::Translation(v) => {
            let w = Point::new(alpha * v.x + bxy * v.y, byx * v.x + gamma * v.y);
            FlowSpec::translation(w.x, w.y).ok()
        }
        FlowSpec::Bands(b) => {
            if bxy != 0.0 || byx != 0.0 || alpha.abs() != 1.0 || gamma.abs() != 1.0 {
                return None;
            }
            let (sa, sg) = (alpha as i8, gamma as i8);
            let mut lines: Vec<Line> = b
                .lines()
                .iter()
                .map(|l| Line {
                    x: alpha * l.x + t.x,
                    dir: l.dir * sg,
                })
                .collect();
            let mut bands: Vec<Band> = b
                .bands()
                .iter()
                .map(|band| match band {
                    Band::Invariant => Band::Invariant,
                    Band::Transition { sign } => Band::Transition { sign: sign * sa },
                })
                .collect();
            if sa < 0 {
                lines.reverse();
                bands.reverse();
            }
            FlowSpec::bands(lines, bands).ok()
        }
    }
}

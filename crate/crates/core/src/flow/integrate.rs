//! Adaptive RK4 integration of band flows, independent of the closed form.

use crate::geom::Point;

use super::{Flow, FlowError, FlowSpec, Location, Transition};

/// Integrates the field numerically with step doubling. Invariant bands and
/// lines are still moved exactly; only transition bands are integrated.
#[derive(Clone, Debug)]
pub struct IntegratedFlow {
    pub spec: FlowSpec,
    /// Local error allowed per unit time.
    pub tol: f64,
    pub min_step: f64,
    pub max_step: f64,
}

impl IntegratedFlow {
    pub fn new(spec: FlowSpec) -> Self {
        Self {
            spec,
            tol: 1e-9,
            min_step: 1e-13,
            max_step: 0.25,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

fn rk4(tr: &Transition, p: Point, h: f64) -> Point {
    let f = |q: Point| tr.field(q.x);
    let k1 = f(p);
    let k2 = f(p + k1 * (0.5 * h));
    let k3 = f(p + k2 * (0.5 * h));
    let k4 = f(p + k3 * h);
    p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

impl IntegratedFlow {
    fn integrate(&self, tr: &Transition, t: f64, p: Point) -> Result<Point, FlowError> {
        let dir = t.signum();
        let total = t.abs();
        let mut done = 0.0;
        let mut q = p;
        let mut h = self.max_step.min(total);
        while done < total {
            h = h.min(total - done);
            let full = rk4(tr, q, dir * h);
            let half = rk4(tr, rk4(tr, q, dir * h * 0.5), dir * h * 0.5);
            let err = full.dist(half) / 15.0;
            if !half.is_finite() {
                return Err(FlowError::NonFinite { point: q });
            }
            if err <= self.tol * h {
                // Richardson extrapolation of the two estimates
                q = half + (half - full) * (1.0 / 15.0);
                done += h;
                let grow = if err == 0.0 {
                    2.0
                } else {
                    (0.9 * (self.tol * h / err).powf(0.2)).min(2.0)
                };
                h = (h * grow).min(self.max_step);
            } else {
                h *= (0.9 * (self.tol * h / err).powf(0.25)).clamp(0.1, 0.5);
                if h < self.min_step {
                    return Err(FlowError::StepUnderflow {
                        point: q,
                        t: dir * done,
                    });
                }
            }
        }
        Ok(q)
    }
}

impl Flow for IntegratedFlow {
    fn flow_map(&self, t: f64, p: Point) -> Result<Point, FlowError> {
        if !t.is_finite() || !p.is_finite() {
            return Err(FlowError::NonFinite { point: p });
        }
        if t == 0.0 {
            return Ok(p);
        }
        let bands = match &self.spec {
            FlowSpec::Bands(b) => b,
            FlowSpec::Translation(_) => return self.spec.flow_map(t, p),
        };
        match bands.locate(p.x) {
            Location::Band(j) => match bands.transition(j) {
                Some(tr) => self.integrate(&tr, t, p),
                None => self.spec.flow_map(t, p),
            },
            Location::Line(_) => self.spec.flow_map(t, p),
        }
    }
}

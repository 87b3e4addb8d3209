//! Sampled flowlines.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geom::Point;

use super::{Flow, FlowError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LeafWindow {
    pub t_min: f64,
    pub t_max: f64,
    /// Largest allowed chord between consecutive samples.
    pub max_step: f64,
}

impl LeafWindow {
    pub fn new(t_min: f64, t_max: f64, max_step: f64) -> Self {
        Self {
            t_min,
            t_max,
            max_step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LeafSample {
    pub base_point: Point,
    pub times: Vec<f64>,
    pub points: Vec<Point>,
    pub window: LeafWindow,
}

const MAX_DEPTH: u32 = 48;

/// Samples the flowline through `p` on `[t_min, t_max]`, refining until
/// consecutive points are at most `max_step` apart.
pub fn sample_leaf<F: Flow>(
    flow: &F,
    p: Point,
    window: LeafWindow,
) -> Result<LeafSample, FlowError> {
    let LeafWindow {
        t_min,
        t_max,
        max_step,
    } = window;
    let ordered = matches!(
        t_min.partial_cmp(&t_max),
        Some(Ordering::Less | Ordering::Equal)
    );
    if !ordered || max_step.is_nan() || max_step <= 0.0 {
        return Err(FlowError::BadArgument(format!(
            "leaf window needs t_min <= t_max and max_step > 0, got [{t_min}, {t_max}] step {max_step}"
        )));
    }
    let mut times = vec![t_min];
    let mut points = vec![flow.flow_map(t_min, p)?];
    if t_max > t_min {
        let q = flow.flow_map(t_max, p)?;
        refine(
            flow,
            p,
            (t_min, points[0]),
            (t_max, q),
            max_step,
            0,
            &mut times,
            &mut points,
        )?;
    }
    Ok(LeafSample {
        base_point: p,
        times,
        points,
        window,
    })
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Flow>(
    flow: &F,
    p: Point,
    lo: (f64, Point),
    hi: (f64, Point),
    max_step: f64,
    depth: u32,
    times: &mut Vec<f64>,
    points: &mut Vec<Point>,
) -> Result<(), FlowError> {
    // always split a few times so a leaf returning near its start is not
    // mistaken for a short chord
    if depth >= 4 && (lo.1.dist(hi.1) <= max_step || depth >= MAX_DEPTH) {
        times.push(hi.0);
        points.push(hi.1);
        return Ok(());
    }
    let tm = 0.5 * (lo.0 + hi.0);
    let mid = (tm, flow.flow_map(tm, p)?);
    refine(flow, p, lo, mid, max_step, depth + 1, times, points)?;
    refine(flow, p, mid, hi, max_step, depth + 1, times, points)
}

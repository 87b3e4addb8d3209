//! Numerical probes of leaf topology: the circle-bundle trivialization,
//! codivergence, non-separability of vertical leaves and orbit separation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::{ConvexRegion, Point, Rect};

use super::{Flow, FlowError, FlowSpec, Location};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Chart {
    Band(usize),
    Line(usize),
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrivializationCoord {
    pub chart: Chart,
    /// Identifies the leaf within its chart.
    pub leaf_param: f64,
    /// Flow time from the leaf's reference point, mod 1.
    pub phase: f64,
}

fn unit_mod(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Leaf and phase coordinates of `p`. Vertical leaves are referenced at
/// `y = 0`; transition leaves at their crossing of the band midline, and
/// are labelled by the crossing height.
pub fn trivialization_coord(spec: &FlowSpec, p: Point) -> Result<TrivializationCoord, FlowError> {
    if !p.is_finite() {
        return Err(FlowError::NonFinite { point: p });
    }
    let bands = match spec {
        FlowSpec::Translation(v) => {
            let n2 = v.x * v.x + v.y * v.y;
            return Ok(TrivializationCoord {
                chart: Chart::Plane,
                leaf_param: (-v.y * p.x + v.x * p.y) / n2.sqrt(),
                phase: unit_mod((v.x * p.x + v.y * p.y) / n2),
            });
        }
        FlowSpec::Bands(b) => b,
    };
    let vertical = |chart, dir: f64| TrivializationCoord {
        chart,
        leaf_param: p.x,
        phase: unit_mod(p.y * dir),
    };
    Ok(match bands.locate(p.x) {
        Location::Line(i) => vertical(Chart::Line(i), f64::from(bands.lines()[i].dir)),
        Location::Band(j) => match bands.transition(j) {
            None => vertical(Chart::Band(j), bands.invariant_dir(j)),
            Some(tr) => {
                let tau = tr.time_to_mid(p.x);
                let (_, lv) = tr.log_coords(p.x);
                let k = tr.rate();
                let c = p.y
                    + tr.dir_a * tau
                    + (tr.dir_b - tr.dir_a) * (lv + std::f64::consts::LN_2) / k;
                TrivializationCoord {
                    chart: Chart::Band(j),
                    leaf_param: c,
                    phase: unit_mod(-tau),
                }
            }
        },
    })
}

/// `n + 1` evenly spaced points from `a` to `b`.
pub fn segment(a: Point, b: Point, n: usize) -> Vec<Point> {
    let n = n.max(1);
    (0..=n).map(|i| a.lerp(b, i as f64 / n as f64)).collect()
}

#[derive(Clone, Debug)]
pub struct CodivergenceParams {
    /// Iterates `1..=n` are examined in both time directions.
    pub n: u32,
    pub k: ConvexRegion,
    /// Leading iterates ignored when deciding that images keep meeting `k`.
    pub burn_in: u32,
    /// Image chords longer than this are subdivided; defaults to a quarter
    /// of the smaller side of `k`'s bounding box.
    pub max_chord: Option<f64>,
    pub max_depth: u32,
}

impl CodivergenceParams {
    pub fn new(n: u32, k: impl Into<ConvexRegion>) -> Self {
        Self {
            n,
            k: k.into(),
            burn_in: 3,
            max_chord: None,
            max_depth: 24,
        }
    }

    fn chord(&self) -> f64 {
        self.max_chord.unwrap_or_else(|| {
            let vs = self.k.vertices();
            let span = |f: fn(&Point) -> f64| {
                let it = vs.iter().map(f);
                it.clone().fold(f64::NEG_INFINITY, f64::max) - it.fold(f64::INFINITY, f64::min)
            };
            0.25 * span(|p| p.x).min(span(|p| p.y))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum CodivergenceVerdict {
    /// Images of the curve left `K` for good within the examined range.
    CoDivergentEvidence,
    /// The `n`-th image and every later one up to the horizon meet `K`;
    /// `witness` is a point of the `n`-th image inside or on `K`.
    NotCoDivergent { n: i64, witness: Point },
}

impl CodivergenceVerdict {
    pub fn is_codivergent(&self) -> bool {
        matches!(self, CodivergenceVerdict::CoDivergentEvidence)
    }
}

/// Tests whether the images of `curve` under the time-`n` maps escape every
/// compact set together, at the resolution fixed by `params`. A semidecision:
/// `CoDivergentEvidence` is evidence, not proof.
pub fn codivergence_numeric<F: Flow>(
    flow: &F,
    curve: &[Point],
    params: &CodivergenceParams,
) -> Result<CodivergenceVerdict, FlowError> {
    if curve.is_empty() || params.n == 0 {
        return Err(FlowError::BadArgument(
            "need a non-empty curve and N >= 1".into(),
        ));
    }
    let dense = densify(curve, 32);
    let chord = params.chord();
    for sign in [1i64, -1] {
        let mut first_witness = None;
        let mut always = params.n > params.burn_in;
        for m in (params.burn_in + 1)..=params.n {
            let n = sign * i64::from(m);
            match image_meets(flow, &dense, n as f64, params, chord)? {
                Some(w) => {
                    first_witness.get_or_insert((n, w));
                }
                None => {
                    always = false;
                    break;
                }
            }
        }
        if always {
            let (n, witness) = first_witness.expect("at least one iterate examined");
            return Ok(CodivergenceVerdict::NotCoDivergent { n, witness });
        }
    }
    Ok(CodivergenceVerdict::CoDivergentEvidence)
}

fn densify(curve: &[Point], per_segment: usize) -> Vec<Point> {
    let mut out = vec![curve[0]];
    for w in curve.windows(2) {
        for i in 1..=per_segment {
            out.push(w[0].lerp(w[1], i as f64 / per_segment as f64));
        }
    }
    out
}

fn image_meets<F: Flow>(
    flow: &F,
    curve: &[Point],
    t: f64,
    params: &CodivergenceParams,
    chord: f64,
) -> Result<Option<Point>, FlowError> {
    let images = curve
        .iter()
        .map(|&p| flow.flow_map(t, p))
        .collect::<Result<Vec<_>, _>>()?;
    if curve.len() == 1 {
        return Ok(params.k.contains(images[0]).then_some(images[0]));
    }
    for i in 0..curve.len() - 1 {
        let hit = meets_piece(
            flow,
            t,
            (curve[i], images[i]),
            (curve[i + 1], images[i + 1]),
            params,
            chord,
            0,
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn meets_piece<F: Flow>(
    flow: &F,
    t: f64,
    a: (Point, Point),
    b: (Point, Point),
    params: &CodivergenceParams,
    chord: f64,
    depth: u32,
) -> Result<Option<Point>, FlowError> {
    if params.k.contains(a.1) {
        return Ok(Some(a.1));
    }
    if params.k.contains(b.1) {
        return Ok(Some(b.1));
    }
    let mid_src = a.0.lerp(b.0, 0.5);
    let stuck = mid_src == a.0 || mid_src == b.0;
    if a.1.dist(b.1) <= chord || depth >= params.max_depth || stuck {
        return Ok(params.k.meets_segment(a.1, b.1).then(|| a.1.lerp(b.1, 0.5)));
    }
    let mid = (mid_src, flow.flow_map(t, mid_src)?);
    if let Some(w) = meets_piece(flow, t, a, mid, params, chord, depth + 1)? {
        return Ok(Some(w));
    }
    meets_piece(flow, t, mid, b, params, chord, depth + 1)
}

/// Codivergence classes of one representative per band and per line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RegionClasses {
    pub representatives: Vec<Point>,
    pub class_of: Vec<usize>,
    pub count: usize,
}

/// Groups representatives (band midpoints, points on lines) into
/// codivergence classes, with `K` spanning all lines with margin 1.
pub fn codivergence_classes(spec: &FlowSpec, n: u32) -> Result<RegionClasses, FlowError> {
    let bands = match spec {
        FlowSpec::Translation(_) => {
            return Ok(RegionClasses {
                representatives: vec![Point::new(0.0, 0.0)],
                class_of: vec![0],
                count: 1,
            })
        }
        FlowSpec::Bands(b) => b,
    };
    let xs: Vec<f64> = bands.lines().iter().map(|l| l.x).collect();
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let mut reps = vec![Point::new(lo - 1.0, 0.0)];
    for (i, &x) in xs.iter().enumerate() {
        reps.push(Point::new(x, 0.0));
        let next = xs.get(i + 1).map_or(hi + 1.0, |&r| 0.5 * (x + r));
        reps.push(Point::new(next, 0.0));
    }
    let params = CodivergenceParams::new(n, Rect::new(lo - 1.0, hi + 1.0, -1.0, 1.0));
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                continue;
            }
            let v = codivergence_numeric(spec, &segment(reps[i], reps[j], 1), &params)?;
            if v.is_codivergent() {
                parent[rj] = ri;
            }
        }
    }
    let mut labels = BTreeMap::new();
    let class_of: Vec<usize> = (0..reps.len())
        .map(|i| {
            let r = find(&mut parent, i);
            let next = labels.len();
            *labels.entry(r).or_insert(next)
        })
        .collect();
    Ok(RegionClasses {
        representatives: reps,
        count: labels.len(),
        class_of,
    })
}

pub const DEFAULT_SCHEDULE: &[f64] = &[0.5, 0.25, 0.1, 0.01, 0.001];

const SIDE_SAMPLES: usize = 64;

/// Finite-resolution test that the vertical leaves `x = xa` and `x = xb`
/// are non-separable: for every `δ` in `schedule`, the leaves crossing
/// horizontal transversals of length `δ` on either side of each leaf must
/// share a leaf parameter range in some chart.
pub fn nonseparable_numeric(
    spec: &FlowSpec,
    xa: f64,
    xb: f64,
    schedule: &[f64],
) -> Result<bool, FlowError> {
    check_vertical(spec, xa)?;
    check_vertical(spec, xb)?;
    if schedule.is_empty() || schedule.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
        return Err(FlowError::BadArgument(
            "schedule needs positive finite offsets".into(),
        ));
    }
    if xa == xb {
        return Ok(true);
    }
    for &delta in schedule {
        let ra = transversal_ranges(spec, xa, delta)?;
        let rb = transversal_ranges(spec, xb, delta)?;
        let meet = ra
            .iter()
            .any(|(chart, a)| rb.get(chart).is_some_and(|b| a.0 <= b.1 && b.0 <= a.1));
        if !meet {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_vertical(spec: &FlowSpec, x: f64) -> Result<(), FlowError> {
    let ok = x.is_finite()
        && spec.as_bands().is_some_and(|b| match b.locate(x) {
            Location::Line(_) => true,
            Location::Band(j) => b.transition(j).is_none(),
        });
    if ok {
        Ok(())
    } else {
        Err(FlowError::NotAVerticalLeaf(x))
    }
}

fn transversal_ranges(
    spec: &FlowSpec,
    x: f64,
    delta: f64,
) -> Result<BTreeMap<Chart, (f64, f64)>, FlowError> {
    let mut ranges: BTreeMap<Chart, (f64, f64)> = BTreeMap::new();
    let mut add = |c: TrivializationCoord| {
        let r = ranges
            .entry(c.chart)
            .or_insert((c.leaf_param, c.leaf_param));
        r.0 = r.0.min(c.leaf_param);
        r.1 = r.1.max(c.leaf_param);
    };
    add(trivialization_coord(spec, Point::new(x, 0.0))?);
    let s_min = delta * 1e-9;
    let ratio = (delta / s_min).powf(1.0 / (SIDE_SAMPLES - 1) as f64);
    for side in [-1.0, 1.0] {
        let mut s = s_min;
        for _ in 0..SIDE_SAMPLES {
            let q = x + side * s.min(delta);
            if q != x {
                add(trivialization_coord(spec, Point::new(q, 0.0))?);
            }
            s *= ratio;
        }
    }
    Ok(ranges)
}

/// Smallest displacement of `p` under the iterates `f^n`, `1 <= |n| <= n_max`.
pub fn orbit_separation<F: Flow>(flow: &F, p: Point, n_max: u32) -> Result<f64, FlowError> {
    if n_max == 0 {
        return Err(FlowError::BadArgument("N must be at least 1".into()));
    }
    let mut best = f64::INFINITY;
    for step in [1.0, -1.0] {
        let mut q = p;
        for _ in 0..n_max {
            q = flow.flow_map(step, q)?;
            best = best.min(q.dist(p));
        }
    }
    Ok(best)
}

//! Numerical checks of conjugacy identities, leaf transport and the
//! equivariance of codivergence.

use serde::{Deserialize, Serialize};

use crate::flow::{
    codivergence_numeric, sample_leaf, CodivergenceParams, CodivergenceVerdict, Flow, LeafWindow,
};
use crate::geom::{one_sided_hausdorff, ConvexRegion, Point};

use super::{ConjugateFlow, MapError, PlaneMap};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AffineReport {
    /// `h⁻¹ ∘ T_{a,b} ∘ h = T_{c,d}` with `h(x, y) = (ax/c, by/d)`; absent
    /// when `a` or `b` is zero, since `h` is then singular.
    pub conjugacy: Option<f64>,
    /// `f_A ∘ T_{a,b} ∘ f_A⁻¹ = T_{a,b}⁻¹`
    pub antipodal_reversal: f64,
    /// `f_A ∘ f_A = Id`
    pub antipodal_involution: f64,
}

impl AffineReport {
    pub fn max_error(&self) -> f64 {
        self.conjugacy
            .unwrap_or(0.0)
            .max(self.antipodal_reversal)
            .max(self.antipodal_involution)
    }
}

fn max_gap(grid: &[Point], f: impl Fn(Point) -> Point, g: impl Fn(Point) -> Point) -> f64 {
    grid.iter().map(|&p| f(p).dist(g(p))).fold(0.0, f64::max)
}

pub fn verify_affine_identities(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    grid: &[Point],
) -> Result<AffineReport, MapError> {
    if c == 0.0 || d == 0.0 {
        return Err(MapError::BadArgument(format!(
            "c and d must be non-zero, got c = {c}, d = {d}"
        )));
    }
    if ![a, b, c, d].iter().all(|v| v.is_finite()) {
        return Err(MapError::NonFinite("affine identity parameters".into()));
    }
    let t_ab = PlaneMap::translation(a, b);
    let t_cd = PlaneMap::translation(c, d);
    let conjugacy = (a != 0.0 && b != 0.0).then(|| {
        let h = PlaneMap::LinearDiag(a / c, b / d);
        let lhs = PlaneMap::Compose(vec![
            PlaneMap::Inverse(Box::new(h.clone())),
            t_ab.clone(),
            h,
        ]);
        max_gap(grid, |p| lhs.eval(p), |p| t_cd.eval(p))
    });
    let fa = PlaneMap::Antipodal {};
    let rev = PlaneMap::Compose(vec![
        fa.clone(),
        t_ab.clone(),
        PlaneMap::Inverse(Box::new(fa.clone())),
    ]);
    let t_inv = PlaneMap::Inverse(Box::new(t_ab));
    let square = PlaneMap::Compose(vec![fa.clone(), fa]);
    Ok(AffineReport {
        conjugacy,
        antipodal_reversal: max_gap(grid, |p| rev.eval(p), |p| t_inv.eval(p)),
        antipodal_involution: max_gap(grid, |p| square.eval(p), |p| p),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransportEntry {
    pub base_point: Point,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransportReport {
    pub entries: Vec<TransportEntry>,
    pub max_distance: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Compares `h` applied to sampled leaves of `flow` with the sampled
/// leaves of the conjugated flow through the image points.
pub fn leaf_transport_check<F: Flow + Clone>(
    h: &PlaneMap,
    flow: &F,
    base_points: &[Point],
    window: LeafWindow,
    tol: f64,
) -> Result<TransportReport, MapError> {
    let g = ConjugateFlow::new(h.clone(), flow.clone())?;
    let mut entries = Vec::with_capacity(base_points.len());
    for &x in base_points {
        let leaf = sample_leaf(flow, x, window)?;
        let moved: Vec<Point> = leaf.points.iter().map(|&p| h.eval(p)).collect();
        let image = sample_leaf(&g, h.eval(x), window)?;
        entries.push(TransportEntry {
            base_point: x,
            distance: one_sided_hausdorff(&moved, &image.points),
        });
    }
    let max_distance = entries.iter().map(|e| e.distance).fold(0.0, f64::max);
    Ok(TransportReport {
        entries,
        max_distance,
        tol,
        passed: max_distance < tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivarianceEntry {
    pub x: Point,
    pub y: Point,
    pub base: CodivergenceVerdict,
    pub conjugated: CodivergenceVerdict,
}

impl EquivarianceEntry {
    pub fn agrees(&self) -> bool {
        self.base.is_codivergent() == self.conjugated.is_codivergent()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivarianceReport {
    pub entries: Vec<EquivarianceEntry>,
    pub mismatches: usize,
}

/// Codivergence verdicts for each `(curve, K)` under `flow`, against the
/// verdicts for `(h(curve), h(K))` under the conjugated flow.
pub fn region_equivariance_check<F: Flow + Clone>(
    h: &PlaneMap,
    flow: &F,
    curves: &[Vec<Point>],
    n: u32,
    k: &ConvexRegion,
) -> Result<EquivarianceReport, MapError> {
    let g = ConjugateFlow::new(h.clone(), flow.clone())?;
    let base_params = CodivergenceParams::new(n, k.clone());
    let moved_params = CodivergenceParams::new(n, k.map(|p| h.eval(p)));
    let mut entries = Vec::with_capacity(curves.len());
    for curve in curves {
        let (Some(&x), Some(&y)) = (curve.first(), curve.last()) else {
            return Err(MapError::BadArgument("empty curve".into()));
        };
        let moved: Vec<Point> = curve.iter().map(|&p| h.eval(p)).collect();
        entries.push(EquivarianceEntry {
            x,
            y,
            base: codivergence_numeric(flow, curve, &base_params)?,
            conjugated: codivergence_numeric(&g, &moved, &moved_params)?,
        });
    }
    let mismatches = entries.iter().filter(|e| !e.agrees()).count();
    Ok(EquivarianceReport {
        entries,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::fixtures::*;
    use crate::flow::segment;
    use crate::geom::Rect;

    fn grid10() -> Vec<Point> {
        (0..10)
            .flat_map(|i| {
                (0..10).map(move |j| {
                    Point::new(-5.0 + i as f64 * 10.0 / 9.0, -5.0 + j as f64 * 10.0 / 9.0)
                })
            })
            .collect()
    }

    #[test]
    fn affine_examples() {
        let r = verify_affine_identities(1.0, 2.0, 3.0, 4.0, &grid10()).unwrap();
        assert!(r.max_error() < 1e-12);
        let r = verify_affine_identities(2.5, -1.5, 2.5, -1.5, &grid10()).unwrap();
        assert_eq!(r.conjugacy, Some(0.0));
        let r = verify_affine_identities(1.0, 0.0, 1.0, 1.0, &grid10()).unwrap();
        assert_eq!(r.conjugacy, None);
        assert_eq!(r.antipodal_reversal, 0.0);
        assert!(verify_affine_identities(1.0, 1.0, 0.0, 1.0, &grid10()).is_err());
    }

    #[test]
    fn transport_examples() {
        let w = LeafWindow::new(-3.0, 3.0, 0.01);
        let r = leaf_transport_check(
            &PlaneMap::Identity {},
            &reeb_flow(),
            &[Point::new(0.0, 0.0)],
            w,
            1e-3,
        )
        .unwrap();
        assert_eq!(r.max_distance, 0.0);
        let r = leaf_transport_check(
            &PlaneMap::translation(5.0, 0.0),
            &reeb_flow(),
            &[Point::new(-3.0, 0.0)],
            w,
            1e-3,
        )
        .unwrap();
        assert!(r.max_distance < 1e-9);
        let r = leaf_transport_check(
            &PlaneMap::quarter_turn(),
            &translation_flow(1.0, 0.0),
            &[Point::new(0.0, 0.0)],
            w,
            1e-3,
        )
        .unwrap();
        assert!(r.max_distance < 1e-6);
    }

    #[test]
    fn equivariance_examples() {
        let f = reeb_flow();
        let k: ConvexRegion = Rect::new(-2.0, 1.0, -1.0, 1.0).into();
        let cross = vec![segment(Point::new(-2.0, 0.0), Point::new(0.0, 0.0), 1)];
        let r = region_equivariance_check(&PlaneMap::translation(5.0, 0.0), &f, &cross, 50, &k)
            .unwrap();
        assert_eq!(r.mismatches, 0);
        assert!(!r.entries[0].base.is_codivergent());

        let k: ConvexRegion = Rect::new(-4.0, -1.0, -1.0, 1.0).into();
        let same = vec![segment(Point::new(-2.0, 0.0), Point::new(-3.0, 5.0), 1)];
        let r = region_equivariance_check(&PlaneMap::ReflectionY {}, &f, &same, 50, &k).unwrap();
        assert_eq!(r.mismatches, 0);
        assert!(r.entries[0].conjugated.is_codivergent());
    }
}

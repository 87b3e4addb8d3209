//! Plane points, rectangles and convex regions.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point, s: f64) -> Point {
        Point::new(
            self.x + s * (other.x - self.x),
            self.y + s * (other.y - self.y),
        )
    }

    fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Distance from `p` to the closed segment `a`-`b`.
pub fn dist_to_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = (((p - a).x * ab.x + (p - a).y * ab.y) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, s))
}

/// Distance from `p` to a polyline; infinite for an empty polyline.
pub fn dist_to_polyline(p: Point, line: &[Point]) -> f64 {
    match line {
        [] => f64::INFINITY,
        [only] => p.dist(*only),
        _ => line
            .windows(2)
            .map(|w| dist_to_segment(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// One-sided Hausdorff distance: how far `from` strays from `to`.
pub fn one_sided_hausdorff(from: &[Point], to: &[Point]) -> f64 {
    from.iter()
        .map(|&p| dist_to_polyline(p, to))
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x_min, self.y_min),
            Point::new(self.x_max, self.y_min),
            Point::new(self.x_max, self.y_max),
            Point::new(self.x_min, self.y_max),
        ]
    }

    pub fn is_proper(&self) -> bool {
        [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite())
            && self.x_min < self.x_max
            && self.y_min < self.y_max
    }
}

/// Compact convex polygon with counter-clockwise vertices. Images of
/// rectangles under affine plane maps stay in this class.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexRegion {
    vertices: Vec<Point>,
}

impl ConvexRegion {
    /// Builds a region from the vertices of a convex polygon in either
    /// winding order.
    pub fn from_polygon(mut vertices: Vec<Point>) -> Self {
        let area2: f64 = (0..vertices.len())
            .map(|i| vertices[i].cross(vertices[(i + 1) % vertices.len()]))
            .sum();
        if area2 < 0.0 {
            vertices.reverse();
        }
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Self {
        Self::from_polygon(self.vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            (b - a).cross(p - a) >= 0.0
        })
    }

    /// Whether the closed segment `a`-`b` meets the region (Cyrus-Beck clip).
    pub fn meets_segment(&self, a: Point, b: Point) -> bool {
        let n = self.vertices.len();
        let d = b - a;
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for i in 0..n {
            let e0 = self.vertices[i];
            let e1 = self.vertices[(i + 1) % n];
            let edge = e1 - e0;
            // inside ⇔ edge × (p - e0) ≥ 0; along the segment this is num + s·den
            let num = edge.cross(a - e0);
            let den = edge.cross(d);
            if den == 0.0 {
                if num < 0.0 {
                    return false;
                }
            } else {
                let s = -num / den;
                if den > 0.0 {
                    lo = lo.max(s);
                } else {
                    hi = hi.min(s);
                }
                if lo > hi {
                    return false;
                }
            }
        }
        true
    }
}

impl From<Rect> for ConvexRegion {
    fn from(r: Rect) -> Self {
        Self::from_polygon(r.corners().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_clipping() {
        let k = ConvexRegion::from(Rect::new(-1.0, 1.0, -1.0, 1.0));
        assert!(k.meets_segment(Point::new(-5.0, 0.0), Point::new(5.0, 0.0)));
        assert!(k.meets_segment(Point::new(0.0, 0.0), Point::new(0.1, 0.1)));
        assert!(!k.meets_segment(Point::new(-5.0, 2.0), Point::new(5.0, 2.0)));
        assert!(!k.meets_segment(Point::new(2.0, -5.0), Point::new(5.0, 5.0)));
        // diagonal that passes the corner region outside
        assert!(!k.meets_segment(Point::new(0.0, 3.5), Point::new(3.5, 0.0)));
        assert!(k.meets_segment(Point::new(0.0, 1.5), Point::new(1.5, 0.0)));
    }

    #[test]
    fn winding_is_normalized() {
        let mut corners = Rect::new(0.0, 1.0, 0.0, 1.0).corners().to_vec();
        corners.reverse();
        let k = ConvexRegion::from_polygon(corners);
        assert!(k.contains(Point::new(0.5, 0.5)));
        assert!(!k.contains(Point::new(1.5, 0.5)));
    }

    #[test]
    fn hausdorff_of_shifted_polyline() {
        let a = [Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
        let b = [Point::new(0.0, 0.5), Point::new(1.0, 0.5)];
        assert!((one_sided_hausdorff(&a, &b) - 0.5).abs() < 1e-15);
        assert_eq!(dist_to_polyline(Point::new(0.0, 0.0), &[]), f64::INFINITY);
    }
}

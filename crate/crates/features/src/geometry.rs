//! Point-set movement metrics: radius of gyration, convex-hull area and
//! perimeter, and diameter.
//!
//! All four metrics are translation-invariant. To keep them numerically
//! so, every computation runs in the frame of the first point, which makes
//! integer-coordinate translations bit-exact and avoids cancellation for
//! coordinates far from the origin.

use mobiprev_core::Point;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpatialMetrics {
    /// sqrt(mean squared distance of points to their centroid), km.
    pub gyration: f64,
    /// Convex hull area, km²; 0 for fewer than 3 non-collinear points.
    pub hull_area: f64,
    /// Convex hull boundary length, km. A degenerate (collinear) hull is
    /// the segment traversed both ways: twice its length.
    pub hull_perimeter: f64,
    /// Maximum pairwise distance, km.
    pub diameter: f64,
}

impl SpatialMetrics {
    pub const ZERO: SpatialMetrics = SpatialMetrics {
        gyration: 0.0,
        hull_area: 0.0,
        hull_perimeter: 0.0,
        diameter: 0.0,
    };

    pub fn as_array(&self) -> [f64; 4] {
        [
            self.gyration,
            self.hull_area,
            self.hull_perimeter,
            self.diameter,
        ]
    }
}

/// Metric names in `as_array` order.
pub const METRIC_NAMES: [&str; 4] = ["gyration", "hull area", "hull perimeter", "diameter"];

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn half_chain<'a, I: Iterator<Item = &'a Point>>(points: I) -> Vec<Point> {
    let mut chain: Vec<Point> = Vec::new();
    for &p in points {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain
}

/// Convex hull by monotone chain, counter-clockwise, strict turns only:
/// collinear boundary points are dropped, so a fully collinear input
/// yields just the two extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower = half_chain(pts.iter());
    let mut upper = half_chain(pts.iter().rev());
    // Each chain ends where the other begins; drop the duplicates.
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// All four metrics of a point multiset. Gyration counts repeated visits;
/// the hull and diameter see the distinct locations. Fewer than two
/// points: all metrics 0.
pub fn spatial_metrics(points: &[Point]) -> SpatialMetrics {
    if points.len() < 2 {
        return SpatialMetrics::ZERO;
    }
    // Anchor at the first point: see the module docs.
    let origin = points[0];
    let anchored: Vec<Point> = points
        .iter()
        .map(|p| Point::new(p.x - origin.x, p.y - origin.y))
        .collect();

    let n = anchored.len() as f64;
    let cx = anchored.iter().map(|p| p.x).sum::<f64>() / n;
    let cy = anchored.iter().map(|p| p.y).sum::<f64>() / n;
    let centroid = Point::new(cx, cy);
    let gyration = (anchored.iter().map(|p| p.dist2(centroid)).sum::<f64>() / n).sqrt();

    let mut diameter = 0.0f64;
    for i in 0..anchored.len() {
        for j in (i + 1)..anchored.len() {
            diameter = diameter.max(anchored[i].dist(anchored[j]));
        }
    }

    let hull = convex_hull(&anchored);
    let (hull_area, hull_perimeter) = match hull.len() {
        0 | 1 => (0.0, 0.0),
        2 => (0.0, 2.0 * hull[0].dist(hull[1])),
        _ => {
            let mut twice_area = 0.0;
            let mut perimeter = 0.0;
            for (i, &a) in hull.iter().enumerate() {
                let b = hull[(i + 1) % hull.len()];
                twice_area += a.x * b.y - a.y * b.x;
                perimeter += a.dist(b);
            }
            (twice_area.abs() / 2.0, perimeter)
        }
    };

    SpatialMetrics {
        gyration,
        hull_area,
        hull_perimeter,
        diameter,
    }
}

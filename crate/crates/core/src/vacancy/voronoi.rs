//! Voronoi diagram of the circle centers, derived from the dual Delaunay
//! triangulation.

use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiVertex {
    pub position: [f64; 2],
    /// Sites on the empty circle centered at this vertex.
    pub sites: [usize; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeGeometry {
    Segment { from: [f64; 2], to: [f64; 2] },
    Ray { origin: [f64; 2], direction: [f64; 2] },
    /// Infinite in both directions (only when every site is collinear).
    Line { point: [f64; 2], direction: [f64; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiEdge {
    /// The two sites this edge separates.
    pub sites: [usize; 2],
    pub geometry: EdgeGeometry,
}

impl VoronoiEdge {
    /// The part of the edge that can matter inside a container of radius
    /// `container_radius`: unbounded pieces are cut `4R` past their anchor.
    pub fn clipped(&self, container_radius: f64) -> ([f64; 2], [f64; 2]) {
        let reach = 4.0 * container_radius;
        match self.geometry {
            EdgeGeometry::Segment { from, to } => (from, to),
            EdgeGeometry::Ray { origin, direction } => {
                let len = origin[0].hypot(origin[1]) + reach;
                (origin, [origin[0] + len * direction[0], origin[1] + len * direction[1]])
            }
            EdgeGeometry::Line { point, direction } => {
                let len = point[0].hypot(point[1]) + reach;
                (
                    [point[0] - len * direction[0], point[1] - len * direction[1]],
                    [point[0] + len * direction[0], point[1] + len * direction[1]],
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VoronoiDiagram {
    pub vertices: Vec<VoronoiVertex>,
    pub edges: Vec<VoronoiEdge>,
}

struct Site {
    position: Point2<f64>,
    index: usize,
}

impl HasPosition for Site {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        self.position
    }
}

fn circumcenter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> [f64; 2] {
    // Relative to `a` for accuracy.
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    [a[0] + (cy * b2 - by * c2) / d, a[1] + (bx * c2 - cx * b2) / d]
}

fn unit(v: [f64; 2]) -> [f64; 2] {
    let len = v[0].hypot(v[1]);
    [v[0] / len, v[1] / len]
}

/// Voronoi diagram of the centers `[x1, y1, x2, y2, ...]`.
///
/// Coincident sites are collapsed onto the first one. Fewer than three
/// sites, or all sites on one line, give edges but no vertices.
pub fn build_voronoi(coords: &[f64]) -> VoronoiDiagram {
    let mut tri: DelaunayTriangulation<Site> = DelaunayTriangulation::new();
    for (index, c) in coords.chunks_exact(2).enumerate() {
        // Duplicates resolve to the existing vertex; non-finite input is skipped.
        let _ = tri.insert(Site { position: Point2::new(c[0], c[1]), index });
    }

    let pos = |p: Point2<f64>| [p.x, p.y];
    let mut vertices = Vec::with_capacity(tri.num_inner_faces());
    for face in tri.inner_faces() {
        let [a, b, c] = face.vertices();
        vertices.push(VoronoiVertex {
            position: circumcenter(pos(a.position()), pos(b.position()), pos(c.position())),
            sites: [a.data().index, b.data().index, c.data().index],
        });
    }

    let mut edges = Vec::with_capacity(tri.num_undirected_edges());
    for edge in tri.undirected_edges() {
        let directed = edge.as_directed();
        let (from, to) = (directed.from(), directed.to());
        let (p, q) = (pos(from.position()), pos(to.position()));
        let sites = [from.data().index, to.data().index];
        let center_of = |f: spade::handles::FaceHandle<'_, spade::handles::InnerTag, Site, (), (), ()>| {
            let [a, b, c] = f.vertices();
            circumcenter(pos(a.position()), pos(b.position()), pos(c.position()))
        };
        // Faces lie to the left of a directed edge.
        let left = directed.face().as_inner().map(center_of);
        let right = directed.rev().face().as_inner().map(center_of);
        // Perpendicular pointing to the right of p -> q.
        let right_normal = unit([q[1] - p[1], p[0] - q[0]]);
        let geometry = match (left, right) {
            (Some(a), Some(b)) => EdgeGeometry::Segment { from: a, to: b },
            (Some(a), None) => EdgeGeometry::Ray { origin: a, direction: right_normal },
            (None, Some(b)) => {
                EdgeGeometry::Ray { origin: b, direction: [-right_normal[0], -right_normal[1]] }
            }
            (None, None) => EdgeGeometry::Line {
                point: [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])],
                direction: right_normal,
            },
        };
        edges.push(VoronoiEdge { sites, geometry });
    }
    VoronoiDiagram { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let d = build_voronoi(&[0.0, 0.0, 1.0, 0.0, 0.5, h]);
        assert_eq!(d.vertices.len(), 1);
        let v = d.vertices[0].position;
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] - h / 3.0).abs() < 1e-12);
        assert_eq!(d.edges.len(), 3);
        assert!(d.edges.iter().all(|e| matches!(e.geometry, EdgeGeometry::Ray { .. })));
        // Rays point away from the triangle.
        for e in &d.edges {
            let EdgeGeometry::Ray { origin, direction } = e.geometry else { unreachable!() };
            let far = [origin[0] + direction[0], origin[1] + direction[1]];
            let centroid = [0.5, h / 3.0];
            let dist = |p: [f64; 2]| (p[0] - centroid[0]).hypot(p[1] - centroid[1]);
            assert!(dist(far) > 0.9);
        }
    }

    #[test]
    fn two_sites_give_one_bisector() {
        let d = build_voronoi(&[-1.0, 0.0, 1.0, 0.0]);
        assert!(d.vertices.is_empty());
        assert_eq!(d.edges.len(), 1);
        match d.edges[0].geometry {
            EdgeGeometry::Line { point, direction } => {
                assert_eq!(point, [0.0, 0.0]);
                assert!(direction[0].abs() < 1e-15 && (direction[1].abs() - 1.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_square_center() {
        let d = build_voronoi(&[0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        assert!(!d.vertices.is_empty() && d.vertices.len() <= 2);
        for v in &d.vertices {
            assert!((v.position[0] - 0.5).abs() < 1e-9 && (v.position[1] - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn collinear_sites() {
        let d = build_voronoi(&[0.0, 0.0, 1.0, 0.0, 3.0, 0.0]);
        assert!(d.vertices.is_empty());
        assert_eq!(d.edges.len(), 2);
        assert!(d.edges.iter().all(|e| matches!(e.geometry, EdgeGeometry::Line { .. })));
    }

    #[test]
    fn single_site_has_nothing() {
        let d = build_voronoi(&[0.5, 0.5]);
        assert!(d.vertices.is_empty() && d.edges.is_empty());
    }
}

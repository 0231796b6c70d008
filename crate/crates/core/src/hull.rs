//! Convex hull of pixel coordinate sets (Andrew's monotone chain).

use crate::{Error, Result};

/// Convex polygon over pixel coordinates.
///
/// Vertices are listed counter-clockwise (treating coordinates as standard
/// Cartesian), starting from the lexicographically smallest point. Collinear
/// interior points are excluded. Degenerate inputs follow fixed conventions:
/// a single point is a 1-vertex polygon with perimeter 0, and a collinear set
/// is a 2-vertex polygon whose perimeter is twice the end-to-end distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<(u32, u32)>,
}

impl Polygon {
    /// Sum of consecutive edge lengths around the closed loop.
    pub fn perimeter(&self) -> f64 {
        if self.vertices.len() < 2 {
            return 0.0;
        }
        let mut total = 0.0;
        for i in 0..self.vertices.len() {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % self.vertices.len()];
            let dx = a.0 as f64 - b.0 as f64;
            let dy = a.1 as f64 - b.1 as f64;
            total += (dx * dx + dy * dy).sqrt();
        }
        total
    }
}

fn cross(o: (u32, u32), a: (u32, u32), b: (u32, u32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Convex hull of a non-empty point set.
pub fn convex_hull(points: &[(u32, u32)]) -> Result<Polygon> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let mut pts: Vec<(u32, u32)> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();

    if pts.len() == 1 {
        return Ok(Polygon { vertices: pts });
    }

    // lower hull then upper hull; strict turns drop collinear interiors
    let mut lower: Vec<(u32, u32)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(u32, u32)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(Polygon { vertices: lower })
}

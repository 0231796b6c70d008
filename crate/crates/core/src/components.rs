//! Connected-component labeling and size filtering.

use crate::raster::BinaryMask;

/// Neighborhood used when deciding whether two foreground pixels touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Connectivity {
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "8")]
    Eight,
}

/// One maximal connected set of foreground pixels.
///
/// Components are labeled 1..n ordered by decreasing area, ties broken by the
/// row-major order of their top-left bounding-box corner. `top_left` is the
/// bounding-box minimum; its vertical part is the coordinate the key matcher
/// consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub label: u32,
    pub area: usize,
    /// (min_x, min_y, max_x, max_y), all attained by some pixel.
    pub bbox: (u32, u32, u32, u32),
    /// Pixel coordinates in row-major order.
    pub pixels: Vec<(u32, u32)>,
}

impl Component {
    pub fn top_left(&self) -> (u32, u32) {
        (self.bbox.0, self.bbox.1)
    }

    /// Vertical coordinate of the component top (bounding-box minimum row).
    pub fn top(&self) -> u32 {
        self.bbox.1
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let p = self.parent[i as usize];
            self.parent[i as usize] = self.parent[p as usize];
            i = self.parent[i as usize];
        }
        i
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Partitions the mask foreground into maximal connected sets.
///
/// Two-pass union-find labeling; the returned list is sorted by decreasing
/// area (ties by top-left corner in row-major order) and relabeled 1..n in
/// that order. An empty mask yields an empty list.
pub fn connected_components(mask: &BinaryMask, conn: Connectivity) -> Vec<Component> {
    let w = mask.width() as usize;
    let h = mask.height() as usize;
    let mut labels = vec![0u32; w * h];
    let mut uf = UnionFind::new(1);
    let mut next = 1u32;

    for y in 0..h {
        for x in 0..w {
            if !mask.get(x as u32, y as u32) {
                continue;
            }
            let mut adj = [0u32; 4];
            let mut n_adj = 0;
            let mut push = |lx: usize, ly: usize, n_adj: &mut usize| {
                let l = labels[ly * w + lx];
                if l != 0 {
                    adj[*n_adj] = l;
                    *n_adj += 1;
                }
            };
            if x > 0 && mask.get(x as u32 - 1, y as u32) {
                push(x - 1, y, &mut n_adj);
            }
            if y > 0 {
                if mask.get(x as u32, y as u32 - 1) {
                    push(x, y - 1, &mut n_adj);
                }
                if conn == Connectivity::Eight {
                    if x > 0 && mask.get(x as u32 - 1, y as u32 - 1) {
                        push(x - 1, y - 1, &mut n_adj);
                    }
                    if x + 1 < w && mask.get(x as u32 + 1, y as u32 - 1) {
                        push(x + 1, y - 1, &mut n_adj);
                    }
                }
            }
            if n_adj == 0 {
                labels[y * w + x] = next;
                uf.parent.push(next);
                next += 1;
            } else {
                let min = *adj[..n_adj].iter().min().expect("n_adj > 0");
                labels[y * w + x] = min;
                for &a in &adj[..n_adj] {
                    uf.union(min, a);
                }
            }
        }
    }

    // Gather pixels per root in row-major order.
    let mut by_root: std::collections::HashMap<u32, Vec<(u32, u32)>> =
        std::collections::HashMap::new();
    for y in 0..h {
        for x in 0..w {
            let l = labels[y * w + x];
            if l != 0 {
                let root = uf.find(l);
                by_root.entry(root).or_default().push((x as u32, y as u32));
            }
        }
    }

    let mut comps: Vec<Component> = by_root
        .into_values()
        .map(|pixels| {
            let mut bbox = (u32::MAX, u32::MAX, 0u32, 0u32);
            for &(x, y) in &pixels {
                bbox.0 = bbox.0.min(x);
                bbox.1 = bbox.1.min(y);
                bbox.2 = bbox.2.max(x);
                bbox.3 = bbox.3.max(y);
            }
            Component {
                label: 0,
                area: pixels.len(),
                bbox,
                pixels,
            }
        })
        .collect();
    comps.sort_by(|a, b| {
        b.area
            .cmp(&a.area)
            .then_with(|| (a.bbox.1, a.bbox.0).cmp(&(b.bbox.1, b.bbox.0)))
    });
    for (i, c) in comps.iter_mut().enumerate() {
        c.label = i as u32 + 1;
    }
    comps
}

/// Clears every component whose area is below `min_area`; all other bits are
/// preserved exactly. Idempotent.
pub fn remove_small(mask: &BinaryMask, min_area: usize, conn: Connectivity) -> BinaryMask {
    let mut out = mask.clone();
    for comp in connected_components(mask, conn) {
        if comp.area < min_area {
            for (x, y) in comp.pixels {
                out.set(x, y, false);
            }
        }
    }
    out
}

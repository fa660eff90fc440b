//! Marching-squares extraction of 2-D level lines of the signature function.
//!
//! The field is sampled on a regular node grid over the cloud's bounding box
//! (expanded by a relative margin), cell-edge crossings are located by linear
//! interpolation, and the resulting segments are chained into open or closed
//! polylines. Ambiguous saddle cells are resolved by the field value at the
//! cell center.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::signature::SignatureModel;
use crate::Vector;

/// Iso-value selector: an explicit value, or the default policy
/// (1.0 for interpolating models, the data mean of u for ridge models).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsoLevel {
    Auto,
    Value(f64),
}

/// Grid resolution (node counts) and relative bounding-box margin.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    /// Box expansion on each side as a fraction of the cloud diameter.
    pub margin: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nx: 200, ny: 200, margin: 0.2 }
    }
}

/// A chained level-line: consecutive vertices, with first = last when closed.
#[derive(Debug, Clone)]
pub struct Polyline {
    pub vertices: Vec<[f64; 2]>,
    pub closed: bool,
}

/// Extraction result: the iso value, the polylines, the grid actually used,
/// and the largest |u − iso| over all emitted vertices.
#[derive(Debug, Clone)]
pub struct IsolineSet {
    pub iso_value: f64,
    pub polylines: Vec<Polyline>,
    pub nx: usize,
    pub ny: usize,
    /// (x_min, y_min, x_max, y_max) of the expanded sampling box.
    pub bbox: [f64; 4],
    pub max_edge_residual: f64,
}

/// Average of u over the data points. Equals `1 − α·mean(λ)` identically for
/// ridge models, and 1 up to the solve residual for interpolating ones.
pub fn auto_iso_value(model: &SignatureModel) -> f64 {
    let m = model.cloud().len() as f64;
    model.cloud().points().iter().map(|p| model.value(p)).sum::<f64>() / m
}

/// Resolve an [`IsoLevel`] to a number: `Auto` is 1.0 when α = 0 and the
/// data mean of u otherwise.
pub fn resolve_iso(model: &SignatureModel, level: IsoLevel) -> f64 {
    match level {
        IsoLevel::Value(v) => v,
        IsoLevel::Auto => {
            if model.density().alpha == 0.0 {
                1.0
            } else {
                auto_iso_value(model)
            }
        }
    }
}

/// Extract the level lines `{u = iso}` on a regular grid.
///
/// Requires a 2-D model and at least 8 nodes per axis. An iso value outside
/// the sampled range yields an empty polyline list, not an error.
pub fn extract_isolines(
    model: &SignatureModel,
    level: IsoLevel,
    grid: &GridSpec,
) -> Result<IsolineSet> {
    if model.dim() != 2 {
        return Err(Error::DimensionUnsupported { required: 2, got: model.dim() });
    }
    if grid.nx < 8 || grid.ny < 8 {
        return Err(Error::InvalidCount(format!(
            "grid must be at least 8x8, got {}x{}",
            grid.nx, grid.ny
        )));
    }
    let iso = resolve_iso(model, level);

    let (lo, hi) = model.cloud().bounding_box();
    let mut pad = grid.margin * model.cloud().diameter();
    if pad == 0.0 {
        // Degenerate box (single point): fall back to the kernel length scale.
        pad = 3.0 / model.kernel().delta;
    }
    let (x0, y0) = (lo[0] - pad, lo[1] - pad);
    let (x1, y1) = (hi[0] + pad, hi[1] + pad);
    let (nx, ny) = (grid.nx, grid.ny);
    let dx = (x1 - x0) / (nx - 1) as f64;
    let dy = (y1 - y0) / (ny - 1) as f64;

    let mut values = vec![0.0f64; nx * ny];
    let mut query = Vector::zeros(2);
    for j in 0..ny {
        for i in 0..nx {
            query[0] = x0 + i as f64 * dx;
            query[1] = y0 + j as f64 * dy;
            values[j * nx + i] = model.value(&query) - iso;
        }
    }

    let mut mesh = Mesh {
        x0,
        y0,
        dx,
        dy,
        nx,
        values,
        vertices: Vec::new(),
        edge_vertex: HashMap::new(),
        segments: Vec::new(),
    };

    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            mesh.march_cell(model, iso, i, j);
        }
    }

    let polylines = chain_segments(&mesh.vertices, &mesh.segments);

    let mut max_edge_residual = 0.0f64;
    for v in &mesh.vertices {
        query[0] = v[0];
        query[1] = v[1];
        max_edge_residual = max_edge_residual.max((model.value(&query) - iso).abs());
    }

    Ok(IsolineSet {
        iso_value: iso,
        polylines,
        nx,
        ny,
        bbox: [x0, y0, x1, y1],
        max_edge_residual,
    })
}

/// Edge identifier: lattice coordinates of the edge origin plus orientation
/// (0 = horizontal toward +x, 1 = vertical toward +y).
type EdgeKey = (usize, usize, u8);

struct Mesh {
    x0: f64,
    y0: f64,
    dx: f64,
    dy: f64,
    nx: usize,
    values: Vec<f64>,
    vertices: Vec<[f64; 2]>,
    edge_vertex: HashMap<EdgeKey, usize>,
    segments: Vec<(usize, usize)>,
}

impl Mesh {
    fn val(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Crossing vertex on an edge, interpolated once and shared by both cells.
    fn vertex_on(&mut self, key: EdgeKey) -> usize {
        if let Some(&idx) = self.edge_vertex.get(&key) {
            return idx;
        }
        let (i, j, orient) = key;
        let a = self.val(i, j);
        let position = if orient == 0 {
            let b = self.val(i + 1, j);
            let t = a / (a - b);
            [self.x0 + (i as f64 + t) * self.dx, self.y0 + j as f64 * self.dy]
        } else {
            let b = self.val(i, j + 1);
            let t = a / (a - b);
            [self.x0 + i as f64 * self.dx, self.y0 + (j as f64 + t) * self.dy]
        };
        let idx = self.vertices.len();
        self.vertices.push(position);
        self.edge_vertex.insert(key, idx);
        idx
    }

    fn march_cell(&mut self, model: &SignatureModel, iso: f64, i: usize, j: usize) {
        let inside = |v: f64| v >= 0.0;
        let c00 = inside(self.val(i, j));
        let c10 = inside(self.val(i + 1, j));
        let c11 = inside(self.val(i + 1, j + 1));
        let c01 = inside(self.val(i, j + 1));
        let case =
            (c00 as u8) | ((c10 as u8) << 1) | ((c11 as u8) << 2) | ((c01 as u8) << 3);
        if case == 0 || case == 15 {
            return;
        }

        let bottom: EdgeKey = (i, j, 0);
        let right: EdgeKey = (i + 1, j, 1);
        let top: EdgeKey = (i, j + 1, 0);
        let left: EdgeKey = (i, j, 1);

        let pairs: &[(EdgeKey, EdgeKey)] = match case {
            1 => &[(left, bottom)],
            2 => &[(bottom, right)],
            3 => &[(left, right)],
            4 => &[(right, top)],
            6 => &[(bottom, top)],
            7 => &[(left, top)],
            8 => &[(left, top)],
            9 => &[(bottom, top)],
            11 => &[(right, top)],
            12 => &[(left, right)],
            13 => &[(bottom, right)],
            14 => &[(left, bottom)],
            5 | 10 => {
                // Saddle: connect according to the field value at the center.
                let center = Vector::from_vec(vec![
                    self.x0 + (i as f64 + 0.5) * self.dx,
                    self.y0 + (j as f64 + 0.5) * self.dy,
                ]);
                let center_inside = model.value(&center) - iso >= 0.0;
                match (case, center_inside) {
                    (5, true) | (10, false) => &[(bottom, right), (left, top)],
                    _ => &[(left, bottom), (right, top)],
                }
            }
            _ => unreachable!("cases 0 and 15 returned early"),
        };

        for &(ea, eb) in pairs {
            let va = self.vertex_on(ea);
            let vb = self.vertex_on(eb);
            if va != vb {
                self.segments.push((va, vb));
            }
        }
    }
}

/// Chain crossing segments into polylines: open chains first (from
/// degree-one vertices), remaining cycles closed with first = last.
fn chain_segments(vertices: &[[f64; 2]], segments: &[(usize, usize)]) -> Vec<Polyline> {
    let mut adjacency: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (sid, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push((sid, b));
        adjacency.entry(b).or_default().push((sid, a));
    }
    let mut seg_used = vec![false; segments.len()];
    let mut polylines = Vec::new();

    let walk = |start: usize, seg_used: &mut Vec<bool>| -> Vec<usize> {
        let mut path = vec![start];
        let mut current = start;
        loop {
            let next = adjacency
                .get(&current)
                .and_then(|nbrs| nbrs.iter().find(|(sid, _)| !seg_used[*sid]).copied());
            match next {
                Some((sid, other)) => {
                    seg_used[sid] = true;
                    path.push(other);
                    current = other;
                }
                None => break,
            }
        }
        path
    };

    // Open chains start at degree-1 vertices (contours leaving the box).
    let mut endpoints: Vec<usize> =
        adjacency.iter().filter(|(_, n)| n.len() == 1).map(|(&v, _)| v).collect();
    endpoints.sort_unstable();
    for v in endpoints {
        if adjacency[&v].iter().all(|(sid, _)| seg_used[*sid]) {
            continue;
        }
        let path = walk(v, &mut seg_used);
        if path.len() >= 2 {
            polylines.push(Polyline {
                vertices: path.iter().map(|&i| vertices[i]).collect(),
                closed: false,
            });
        }
    }

    // Everything left is a cycle.
    for sid in 0..segments.len() {
        if seg_used[sid] {
            continue;
        }
        let start = segments[sid].0;
        let path = walk(start, &mut seg_used);
        if path.len() >= 2 {
            let mut verts: Vec<[f64; 2]> = path.iter().map(|&i| vertices[i]).collect();
            if verts.first() != verts.last() {
                verts.push(verts[0]);
            }
            polylines.push(Polyline { vertices: verts, closed: true });
        }
    }

    polylines
}

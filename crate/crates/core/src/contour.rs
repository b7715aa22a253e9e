//! Zero-contour extraction for sampled gap fields.
//!
//! Cells are scanned marching-squares style. Every grid edge whose endpoints
//! straddle zero yields one crossing point, refined by bisection on the exact
//! gap function until `|ΔE| ≤ 1e-9`. Segments sharing an edge are chained
//! into polylines.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{AxisName, Grid2D, Quantity};
use crate::spectrum::energy_gap;

/// Residual target for refined crossing points.
pub const LOCUS_TOL: f64 = 1e-9;

const MAX_BISECTIONS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    /// `[x, y]` points in the locus' plane.
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

/// The ΔE = 0 manifold in a two-parameter plane, as polylines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingLocus {
    pub x_axis: AxisName,
    pub y_axis: AxisName,
    pub polylines: Vec<Polyline>,
}

impl CrossingLocus {
    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.polylines.iter().flat_map(|l| l.points.iter().copied())
    }

    pub fn point_count(&self) -> usize {
        self.polylines.iter().map(|l| l.points.len()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Edge {
    /// Between nodes (i, j) and (i+1, j).
    Along1(usize, usize),
    /// Between nodes (i, j) and (i, j+1).
    Along2(usize, usize),
}

/// Find a root of `f` between `a` and `b` (`f(a)`, `f(b)` of opposite sign).
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let mut mid = 0.5 * (a + b);
    for _ in 0..MAX_BISECTIONS {
        mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm.abs() <= tol || mid == a || mid == b {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    mid
}

/// Extract the zero contour of a gap grid.
///
/// The grid's fixed parameters are used to re-evaluate ΔE exactly during
/// refinement, so `field.quantity` must be [`Quantity::Gap`]. A field of
/// constant sign gives an empty locus.
pub fn crossing_locus_grid(field: &Grid2D) -> Result<CrossingLocus> {
    if field.quantity != Quantity::Gap {
        return Err(Error::InvalidInput(format!(
            "zero-contour extraction needs a gap grid, got {}",
            field.quantity
        )));
    }
    field.validate()?;
    let (n1, n2) = (field.axis1.count, field.axis2.count);
    let mut vals = Vec::with_capacity(n1 * n2);
    for k in 0..n1 * n2 {
        vals.push(
            field.values[k]
                .ok_or_else(|| Error::InvalidInput("gap grid contains undefined nodes".into()))?,
        );
    }
    // the probe closure rebuilds Params from the grid's fixed values
    field.point_at(field.axis1.min, field.axis2.min)?;
    let gap_at = |x: f64, y: f64| -> f64 {
        let p = field.point_at(x, y).expect("fixed parameters checked above").params();
        energy_gap(&p)
    };
    let xs = field.axis1.values();
    let ys = field.axis2.values();
    let v = |i: usize, j: usize| vals[i * n2 + j];
    // zero counts as non-negative so every sign change is strict
    let neg = |x: f64| x < 0.0;

    let mut crossing_points: HashMap<Edge, [f64; 2]> = HashMap::new();
    let mut point_of = |e: Edge| -> [f64; 2] {
        *crossing_points.entry(e).or_insert_with(|| match e {
            Edge::Along1(i, j) => {
                let y = ys[j];
                [bisect(|x| gap_at(x, y), xs[i], xs[i + 1], LOCUS_TOL), y]
            }
            Edge::Along2(i, j) => {
                let x = xs[i];
                [x, bisect(|y| gap_at(x, y), ys[j], ys[j + 1], LOCUS_TOL)]
            }
        })
    };

    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for i in 0..n1 - 1 {
        for j in 0..n2 - 1 {
            // corners counter-clockwise from (i, j)
            let c = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            let s = c.map(neg);
            let edges = [
                Edge::Along1(i, j),
                Edge::Along2(i + 1, j),
                Edge::Along1(i, j + 1),
                Edge::Along2(i, j),
            ];
            let cut: Vec<usize> = (0..4).filter(|&k| s[k] != s[(k + 1) % 4]).collect();
            match cut.len() {
                0 => {}
                2 => segments.push((edges[cut[0]], edges[cut[1]])),
                4 => {
                    // saddle: decide connectivity from the exact centre value
                    let centre = gap_at(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
                    if neg(centre) == s[0] {
                        // corners 0 and 2 are joined through the centre
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => unreachable!("a cell has an even number of sign changes"),
            }
        }
    }

    let polylines = chain_segments(&segments)
        .into_iter()
        .map(|(edges, closed)| Polyline { points: edges.into_iter().map(&mut point_of).collect(), closed })
        .collect();
    Ok(CrossingLocus { x_axis: field.axis1.name, y_axis: field.axis2.name, polylines })
}

/// Chain segments into edge sequences. Each edge is shared by at most two
/// segments, so the adjacency graph is a union of paths and cycles.
fn chain_segments(segments: &[(Edge, Edge)]) -> Vec<(Vec<Edge>, bool)> {
    let mut incident: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(k);
        incident.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start_seg: usize, start_edge: Edge, used: &mut Vec<bool>| -> Vec<Edge> {
        let mut chain = vec![start_edge];
        let mut seg = start_seg;
        let mut at = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            chain.push(next);
            match incident[&next].iter().find(|&&s| !used[s]) {
                Some(&s) => {
                    seg = s;
                    at = next;
                }
                None => break,
            }
        }
        chain
    };

    // open chains start at edges with a single incident segment (grid border)
    for (k, (a, b)) in segments.iter().enumerate() {
        if used[k] {
            continue;
        }
        for e in [a, b] {
            if incident[e].len() == 1 && !used[k] {
                out.push((walk(k, *e, &mut used), false));
            }
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            let mut chain = walk(k, segments[k].0, &mut used);
            // closed: drop the repeated start edge
            if chain.len() > 1 && chain.first() == chain.last() {
                chain.pop();
            }
            out.push((chain, true));
        }
    }
    out
}

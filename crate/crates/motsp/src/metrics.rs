//! Pareto-front quality indicators: non-dominated filtering, 2-D
//! hypervolume, Schott spacing, and per-objective extent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nsga2::dominates;
use crate::problem::FitnessVector;

/// Summary statistics of one front.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrontSummary {
    pub size: usize,
    /// Present only for bi-objective fronts; other dimensions have no
    /// hypervolume implementation here.
    pub hypervolume: Option<f64>,
    /// Schott spacing: 0 means perfectly even nearest-neighbor distances.
    /// Fronts of fewer than 2 points report 0 by convention.
    pub spacing: f64,
    /// Per-objective (min, max) over the front.
    pub extent: Vec<(f64, f64)>,
}

/// Keeps exactly the points dominated by no other point. Duplicates never
/// dominate each other, so every occurrence of a non-dominated value
/// survives. Order is preserved.
///
/// Panics if the points' lengths differ.
pub fn nondominated_filter(points: &[FitnessVector]) -> Vec<FitnessVector> {
    points
        .iter()
        .filter(|a| !points.iter().any(|b| dominates(b, a)))
        .cloned()
        .collect()
}

/// Area dominated by a bi-objective front and bounded by `reference`,
/// computed as rectangle slabs after sorting on the first objective. Points
/// not strictly below the reference in both objectives contribute nothing.
///
/// The sweep tracks the minimum second-objective value seen so far, so
/// dominated or duplicate points in the input simply contribute no area.
pub fn hypervolume_2d(front: &[FitnessVector], reference: &[f64]) -> Result<f64> {
    if reference.len() != 2 {
        return Err(Error::NotBiObjective(reference.len()));
    }
    if let Some(p) = front.iter().find(|p| p.len() != 2) {
        return Err(Error::NotBiObjective(p.len()));
    }
    let (rx, ry) = (reference[0], reference[1]);
    let mut pts: Vec<(f64, f64)> = front
        .iter()
        .filter(|p| p[0] < rx && p[1] < ry)
        .map(|p| (p[0], p[1]))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut area = 0.0;
    let mut y_min = ry;
    for (idx, &(x, y)) in pts.iter().enumerate() {
        let x_next = pts.get(idx + 1).map_or(rx, |p| p.0);
        y_min = y_min.min(y);
        area += (x_next - x) * (ry - y_min);
    }
    Ok(area)
}

/// Schott spacing: with d_i the L1 distance from point i to its nearest
/// neighbor, returns sqrt( sum (mean - d_i)^2 / (n - 1) ).
///
/// Errors on fronts smaller than 2, where no neighbor distance exists.
pub fn schott_spacing(front: &[FitnessVector]) -> Result<f64> {
    let n = front.len();
    if n < 2 {
        return Err(Error::FrontTooSmall {
            required: 2,
            got: n,
        });
    }
    let l1 = |a: &FitnessVector, b: &FitnessVector| -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
    };
    let d: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| l1(&front[i], &front[j]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|di| (mean - di).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(var.sqrt())
}

/// Filters to the non-dominated subset and summarizes it.
///
/// Errors on empty input; the hypervolume field is populated only for
/// bi-objective fronts.
pub fn front_summary(points: &[FitnessVector], reference: &[f64]) -> Result<FrontSummary> {
    if points.is_empty() {
        return Err(Error::FrontTooSmall {
            required: 1,
            got: 0,
        });
    }
    let front = nondominated_filter(points);
    let m = front[0].len();
    let hypervolume = if m == 2 {
        Some(hypervolume_2d(&front, reference)?)
    } else {
        None
    };
    let spacing = if front.len() < 2 {
        0.0
    } else {
        schott_spacing(&front)?
    };
    let extent = (0..m)
        .map(|k| {
            let lo = front.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
            let hi = front.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        })
        .collect();
    Ok(FrontSummary {
        size: front.len(),
        hypervolume,
        spacing,
        extent,
    })
}

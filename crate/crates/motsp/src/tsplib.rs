//! TSPLIB instance parsing and distance-matrix construction.
//!
//! Supports the EUC_2D subset of the format: a header of `KEY: VALUE` entries
//! (NAME, TYPE, DIMENSION, EDGE_WEIGHT_TYPE, ...) followed by a
//! NODE_COORD_SECTION with one `id x y` line per city, optionally terminated
//! by EOF. Node ids 1..=n are remapped to dense 0-based indices; all
//! downstream code works with indices only.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How raw Euclidean lengths become matrix entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Rounding {
    /// Exact Euclidean distance.
    Raw,
    /// TSPLIB nearest-integer convention (round half up). The canonical tour
    /// lengths for kroA100 and kroB100 are defined under this rule.
    Nint,
}

/// A parsed EUC_2D city file: coordinates indexed 0..dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct CityFile {
    pub name: String,
    pub dimension: usize,
    pub coords: Vec<(f64, f64)>,
}

/// Symmetric cost matrix with zero diagonal, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds an n x n matrix from a cost function, mirroring each pair so
    /// the result is symmetric with a zero diagonal regardless of `f`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        DistanceMatrix { n, entries }
    }

    /// Entrywise sum of one or more matrices of equal size.
    ///
    /// Panics if `mats` is empty or sizes differ.
    pub fn entrywise_sum(mats: &[&DistanceMatrix]) -> DistanceMatrix {
        let n = mats.first().expect("at least one matrix").n;
        assert!(mats.iter().all(|m| m.n == n), "matrix sizes differ");
        let mut entries = vec![0.0; n * n];
        for m in mats {
            for (acc, v) in entries.iter_mut().zip(&m.entries) {
                *acc += v;
            }
        }
        DistanceMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }
}

/// Euclidean distance between two points under the given rounding mode.
pub fn euclidean_distance(a: (f64, f64), b: (f64, f64), rounding: Rounding) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    let d = (dx * dx + dy * dy).sqrt();
    match rounding {
        Rounding::Raw => d,
        Rounding::Nint => (d + 0.5).floor(),
    }
}

/// Builds the full distance matrix of a city file.
pub fn build_matrix(cf: &CityFile, rounding: Rounding) -> DistanceMatrix {
    DistanceMatrix::from_fn(cf.dimension, |i, j| {
        euclidean_distance(cf.coords[i], cf.coords[j], rounding)
    })
}

/// Parses TSPLIB text into a [`CityFile`].
///
/// Every malformed construct is reported as a distinct error carrying the
/// 1-based line number and the offending line.
pub fn parse_tsplib(text: &str) -> Result<CityFile> {
    let mut name = String::new();
    let mut dimension: Option<usize> = None;
    let mut saw_edge_weight_type = false;
    let mut saw_coord_section = false;
    let mut nodes: Vec<(usize, f64, f64, usize, String)> = Vec::new();

    let mut in_coords = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if !in_coords {
            if line == "NODE_COORD_SECTION" {
                in_coords = true;
                saw_coord_section = true;
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::MalformedHeader {
                    line_no,
                    line: line.to_string(),
                });
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "NAME" => name = value.to_string(),
                "DIMENSION" => {
                    let d: usize = value.parse().map_err(|_| Error::MalformedHeader {
                        line_no,
                        line: line.to_string(),
                    })?;
                    if d < 3 {
                        return Err(Error::DimensionTooSmall { dimension: d });
                    }
                    dimension = Some(d);
                }
                "EDGE_WEIGHT_TYPE" => {
                    if value != "EUC_2D" {
                        return Err(Error::UnsupportedEdgeWeightType {
                            line_no,
                            line: line.to_string(),
                        });
                    }
                    saw_edge_weight_type = true;
                }
                // TYPE, COMMENT and any other header entries carry no data
                // needed here.
                _ => {}
            }
        } else {
            let mut parts = line.split_whitespace();
            let parsed = (|| {
                let id: usize = parts.next()?.parse().ok()?;
                let x: f64 = parts.next()?.parse().ok()?;
                let y: f64 = parts.next()?.parse().ok()?;
                if parts.next().is_some() {
                    return None;
                }
                Some((id, x, y))
            })();
            let Some((id, x, y)) = parsed else {
                return Err(Error::MalformedNode {
                    line_no,
                    line: line.to_string(),
                });
            };
            nodes.push((id, x, y, line_no, line.to_string()));
        }
    }

    let dimension = dimension.ok_or(Error::MissingHeader { key: "DIMENSION" })?;
    if !saw_edge_weight_type {
        return Err(Error::MissingHeader {
            key: "EDGE_WEIGHT_TYPE",
        });
    }
    if !saw_coord_section {
        return Err(Error::MissingHeader {
            key: "NODE_COORD_SECTION",
        });
    }
    if nodes.len() != dimension {
        return Err(Error::CoordCountMismatch {
            expected: dimension,
            found: nodes.len(),
        });
    }

    // Node id k maps to index k-1; duplicate or out-of-range ids are errors.
    let mut coords = vec![None; dimension];
    for (id, x, y, line_no, line) in nodes {
        if id == 0 || id > dimension {
            return Err(Error::NodeIdOutOfRange { line_no, line });
        }
        if coords[id - 1].is_some() {
            return Err(Error::DuplicateNodeId { line_no, line });
        }
        coords[id - 1] = Some((x, y));
    }
    let coords = coords.into_iter().map(|c| c.unwrap()).collect();

    Ok(CityFile {
        name,
        dimension,
        coords,
    })
}

//! Variation operators: order crossover, jumping-gene segment mutation,
//! 2-opt moves, and the scalarized multi-objective 2-opt local search.
//!
//! Every operator maps valid tours to valid tours. All randomness comes from
//! an explicit generator handle, so callers control determinism.

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::problem::{MotspInstance, Tour};
use crate::tsplib::DistanceMatrix;

/// Improvement threshold for the local search. Strictly negative deltas below
/// this magnitude are treated as noise; on integer matrices any improving
/// move has delta <= -1, so the threshold only matters in raw mode.
pub const IMPROVE_EPS: f64 = 1e-9;

/// An inclusive position range `p..=q` within a tour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegmentBounds {
    p: usize,
    q: usize,
}

impl SegmentBounds {
    /// Panics if `p > q`; the range is validated against the tour length by
    /// the operator that applies it.
    pub fn new(p: usize, q: usize) -> Self {
        assert!(p <= q, "segment bounds must satisfy p <= q, got {p} > {q}");
        SegmentBounds { p, q }
    }

    /// Two positions drawn uniformly (with replacement) and ordered.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        SegmentBounds {
            p: a.min(b),
            q: a.max(b),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

/// Reversal of tour positions `i..=j`.
///
/// With t1, t2, t3, t4 denoting the cities at positions i-1, i, j, j+1
/// (cyclic), the move deletes edges (t1,t2) and (t3,t4) and adds (t1,t3) and
/// (t2,t4). The pair (0, n-1) reverses the whole tour: it names the same
/// tour edge twice, so it has no defined delta and the local search never
/// enumerates it, but applying it is allowed (a cost-preserving involution).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoOptMove {
    i: usize,
    j: usize,
}

impl TwoOptMove {
    /// Panics unless `i < j`; `j` is validated against the tour length by
    /// the functions that consume the move.
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "a 2-opt move needs i < j, got {i} >= {j}");
        TwoOptMove { i, j }
    }

    /// Uniform move with a defined delta (the whole-tour reversal excluded).
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        assert!(n >= 4, "2-opt moves need at least 4 cities, got {n}");
        loop {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            if !(i == 0 && j == n - 1) {
                return TwoOptMove { i, j };
            }
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_full_reversal(&self, n: usize) -> bool {
        self.i == 0 && self.j == n - 1
    }
}

/// Which scalar cost the local search minimizes in one application.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarizationChoice {
    /// Entrywise sum of all objective matrices.
    Summed,
    /// A single objective's own matrix.
    SingleObjective(usize),
}

/// How far one local-search invocation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TwoOptMode {
    /// One first-improvement sweep over all (i, j) pairs in canonical order,
    /// applying each improving move immediately.
    OnePass,
    /// Repeat sweeps until a full sweep applies no move; the result admits
    /// no improving 2-opt move.
    LocalOpt,
}

/// Order crossover: each child keeps one parent's segment `p..=q` in place
/// and fills the remaining positions with the missing cities in the cyclic
/// order they appear in the other parent, reading and writing from `q+1`.
///
/// Panics on parent length mismatch or bounds outside the tour.
pub fn order_crossover(p1: &Tour, p2: &Tour, bounds: SegmentBounds) -> (Tour, Tour) {
    assert_eq!(p1.len(), p2.len(), "parents must have equal length");
    assert!(bounds.q < p1.len(), "segment bounds exceed tour length");
    (ox_child(p1, p2, bounds), ox_child(p2, p1, bounds))
}

fn ox_child(keep: &Tour, donor: &Tour, bounds: SegmentBounds) -> Tour {
    let n = keep.len();
    let mut order = vec![usize::MAX; n];
    let mut in_segment = vec![false; n];
    let segment = bounds.p..=bounds.q;
    for (slot, &city) in order[segment.clone()]
        .iter_mut()
        .zip(&keep.order()[segment])
    {
        *slot = city;
        in_segment[city] = true;
    }
    let mut write = (bounds.q + 1) % n;
    for offset in 0..n {
        let city = donor.order()[(bounds.q + 1 + offset) % n];
        if in_segment[city] {
            continue;
        }
        order[write] = city;
        write = (write + 1) % n;
    }
    debug_assert!(Tour::is_permutation(&order));
    Tour::new(order).expect("order crossover preserves the permutation")
}

/// Jumping-gene mutation: re-permutes the cities inside `p..=q` uniformly at
/// random and leaves every position outside the segment untouched.
///
/// Panics if the bounds exceed the tour.
pub fn jumping_gene(mut tour: Tour, bounds: SegmentBounds, rng: &mut impl Rng) -> Tour {
    assert!(bounds.q < tour.len(), "segment bounds exceed tour length");
    tour.order_mut()[bounds.p..=bounds.q].shuffle(rng);
    tour
}

/// Applies a 2-opt move by reversing the positions `i..=j`.
///
/// Panics if the move indices exceed the tour.
pub fn apply_two_opt_move(mut tour: Tour, mv: TwoOptMove) -> Tour {
    assert!(mv.j < tour.len(), "move indices exceed tour length");
    tour.order_mut()[mv.i..=mv.j].reverse();
    tour
}

#[inline(always)]
fn delta_at(order: &[usize], i: usize, j: usize, d: &DistanceMatrix) -> f64 {
    let n = order.len();
    let t1 = order[if i == 0 { n - 1 } else { i - 1 }];
    let t2 = order[i];
    let t3 = order[j];
    let t4 = order[if j == n - 1 { 0 } else { j + 1 }];
    d.at(t1, t3) + d.at(t2, t4) - d.at(t1, t2) - d.at(t3, t4)
}

/// Exact cost change of a move under one matrix:
/// d(t1,t3) + d(t2,t4) - d(t1,t2) - d(t3,t4).
///
/// Equals `tour_cost_under(after) - tour_cost_under(before)`; negative iff
/// the move shortens the scalarized tour. Panics on a size mismatch or on
/// the whole-tour reversal, whose two deleted edges coincide.
pub fn move_delta(tour: &Tour, mv: TwoOptMove, d: &DistanceMatrix) -> f64 {
    assert_eq!(tour.len(), d.n(), "tour length and matrix size must match");
    assert!(mv.j < tour.len(), "move indices exceed tour length");
    assert!(
        !mv.is_full_reversal(tour.len()),
        "the whole-tour reversal deletes one edge twice and has no delta"
    );
    delta_at(tour.order(), mv.i, mv.j, d)
}

/// First-improvement 2-opt under a single matrix.
///
/// A sweep visits every pair i < j in canonical order (i ascending, then j),
/// skipping the whole-tour reversal, and immediately applies any move whose
/// delta is negative. [`TwoOptMode::OnePass`] stops after one sweep;
/// [`TwoOptMode::LocalOpt`] sweeps until no move is applied.
pub fn two_opt_local_search(mut tour: Tour, d: &DistanceMatrix, mode: TwoOptMode) -> Tour {
    let n = tour.len();
    assert_eq!(n, d.n(), "tour length and matrix size must match");
    loop {
        let mut improved = false;
        let order = tour.order_mut();
        for i in 0..n - 1 {
            for j in i + 1..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if delta_at(order, i, j, d) < -IMPROVE_EPS {
                    order[i..=j].reverse();
                    improved = true;
                }
            }
        }
        if matches!(mode, TwoOptMode::OnePass) || !improved {
            return tour;
        }
    }
}

/// Draws the scalarization for one local-search application: the summed
/// matrix with probability 1/2, otherwise one objective chosen uniformly.
/// For m = 2 that is 50% summed, 25% each objective; for m = 1 both branches
/// name the same matrix.
pub fn choose_scalarization(m: usize, rng: &mut impl Rng) -> ScalarizationChoice {
    assert!(m >= 1, "need at least one objective");
    if rng.gen_bool(0.5) {
        ScalarizationChoice::Summed
    } else {
        ScalarizationChoice::SingleObjective(rng.gen_range(0..m))
    }
}

/// The matrix a scalarization choice refers to.
///
/// Panics if a single-objective choice is out of range.
pub fn scalar_matrix(inst: &MotspInstance, choice: ScalarizationChoice) -> &DistanceMatrix {
    match choice {
        ScalarizationChoice::Summed => inst.summed_matrix(),
        ScalarizationChoice::SingleObjective(k) => inst.matrix(k),
    }
}

/// 2-opt under a forced scalarization choice.
pub fn two_opt_scalarized(
    tour: Tour,
    inst: &MotspInstance,
    choice: ScalarizationChoice,
    mode: TwoOptMode,
) -> Tour {
    two_opt_local_search(tour, scalar_matrix(inst, choice), mode)
}

/// The modified multi-objective 2-opt: draws one scalarization choice via
/// [`choose_scalarization`] and runs the local search under that matrix.
pub fn modified_two_opt(
    tour: Tour,
    inst: &MotspInstance,
    mode: TwoOptMode,
    rng: &mut impl Rng,
) -> Tour {
    let choice = choose_scalarization(inst.m(), rng);
    two_opt_scalarized(tour, inst, choice, mode)
}

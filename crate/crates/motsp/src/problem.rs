//! Instances, tours, and fitness evaluation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tsplib::DistanceMatrix;

/// Fitness of one tour: the closed-tour cost under each objective's matrix.
pub type FitnessVector = Vec<f64>;

/// A multi-objective TSP instance: m cost matrices over the same n cities.
///
/// The entrywise sum of all matrices is precomputed once because the summed
/// scalarization is consulted inside local-search inner loops.
#[derive(Clone, Debug)]
pub struct MotspInstance {
    n: usize,
    matrices: Vec<DistanceMatrix>,
    summed: DistanceMatrix,
}

impl MotspInstance {
    pub fn new(matrices: Vec<DistanceMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::InvalidConfig(
                "an instance needs at least one objective matrix".to_string(),
            ));
        }
        let n = matrices[0].n();
        if matrices.iter().any(|m| m.n() != n) {
            return Err(Error::ObjectiveDimensionMismatch(
                matrices.iter().map(|m| m.n()).collect(),
            ));
        }
        let refs: Vec<&DistanceMatrix> = matrices.iter().collect();
        let summed = DistanceMatrix::entrywise_sum(&refs);
        Ok(MotspInstance {
            n,
            matrices,
            summed,
        })
    }

    /// City count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Objective count.
    pub fn m(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, k: usize) -> &DistanceMatrix {
        &self.matrices[k]
    }

    /// Entrywise sum of all objective matrices.
    pub fn summed_matrix(&self) -> &DistanceMatrix {
        &self.summed
    }
}

/// A Hamiltonian cycle encoded as a permutation of city indices; the cycle
/// closes from the last city back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// Validates that `order` is a permutation of 0..n.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        if !Self::is_permutation(&order) {
            return Err(Error::NotAPermutation { n: order.len() });
        }
        Ok(Tour { order })
    }

    /// Uniformly random tour over n cities (Fisher-Yates shuffle).
    ///
    /// Panics if n < 3; shorter sequences cannot form a tour.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        assert!(n >= 3, "a tour needs at least 3 cities, got {n}");
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Tour { order }
    }

    /// True when `order` contains every index 0..len exactly once.
    pub fn is_permutation(order: &[usize]) -> bool {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in order {
            if c >= n || seen[c] {
                return false;
            }
            seen[c] = true;
        }
        true
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    // Operators mutate the order in place; they all preserve the permutation
    // invariant by construction (reversals and in-segment shuffles).
    pub(crate) fn order_mut(&mut self) -> &mut [usize] {
        &mut self.order
    }
}

/// Closed-tour cost under a single matrix.
///
/// Panics if the tour length and matrix size differ.
pub fn tour_cost_under(tour: &Tour, d: &DistanceMatrix) -> f64 {
    let order = tour.order();
    assert_eq!(order.len(), d.n(), "tour length and matrix size must match");
    let mut cost = 0.0;
    for w in order.windows(2) {
        cost += d.at(w[0], w[1]);
    }
    cost + d.at(order[order.len() - 1], order[0])
}

/// Evaluates a tour under every objective of the instance.
///
/// Panics if the tour length and instance size differ.
pub fn evaluate(tour: &Tour, inst: &MotspInstance) -> FitnessVector {
    assert_eq!(
        tour.len(),
        inst.n(),
        "tour length and instance size must match"
    );
    (0..inst.m())
        .map(|k| tour_cost_under(tour, inst.matrix(k)))
        .collect()
}

/// A tour with its cached fitness and the NSGA-II bookkeeping fields.
///
/// Construction always evaluates, so the cached fitness cannot go stale:
/// operators produce new tours, and new tours become new individuals.
#[derive(Clone, Debug)]
pub struct Individual {
    tour: Tour,
    fitness: FitnessVector,
    rank: Option<usize>,
    crowding: Option<f64>,
}

impl Individual {
    pub fn new(tour: Tour, inst: &MotspInstance) -> Self {
        let fitness = evaluate(&tour, inst);
        Individual {
            tour,
            fitness,
            rank: None,
            crowding: None,
        }
    }

    pub fn tour(&self) -> &Tour {
        &self.tour
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    /// 1-based non-domination rank, set by the sorting pass.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn crowding(&self) -> Option<f64> {
        self.crowding
    }

    /// Test-only constructor for exercising sorting, crowding, and selection
    /// with arbitrary fitness values; the placeholder tour is empty.
    #[cfg(test)]
    pub(crate) fn synthetic(fitness: FitnessVector) -> Self {
        Individual {
            tour: Tour { order: Vec::new() },
            fitness,
            rank: None,
            crowding: None,
        }
    }

    pub(crate) fn set_rank(&mut self, rank: usize) {
        self.rank = Some(rank);
    }

    pub(crate) fn set_crowding(&mut self, crowding: f64) {
        self.crowding = Some(crowding);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsplib::{build_matrix, CityFile, Rounding};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_square() -> MotspInstance {
        let cf = CityFile {
            name: String::new(),
            dimension: 4,
            coords: vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)],
        };
        MotspInstance::new(vec![build_matrix(&cf, Rounding::Raw)]).unwrap()
    }

    #[test]
    fn perimeter_tour_costs_4() {
        let inst = unit_square();
        let tour = Tour::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(evaluate(&tour, &inst), vec![4.0]);
    }

    #[test]
    fn crossing_tour_costs_2_plus_2_sqrt2() {
        let inst = unit_square();
        let tour = Tour::new(vec![0, 2, 1, 3]).unwrap();
        let got = evaluate(&tour, &inst)[0];
        assert!((got - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn scaled_second_matrix_doubles_fitness() {
        let cf = CityFile {
            name: String::new(),
            dimension: 5,
            coords: vec![(0.0, 0.0), (2.0, 1.0), (5.0, 4.0), (1.0, 7.0), (3.0, 3.0)],
        };
        let m1 = build_matrix(&cf, Rounding::Raw);
        let m2 = DistanceMatrix::from_fn(5, |i, j| 2.0 * m1.at(i, j));
        let inst = MotspInstance::new(vec![m1, m2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let tour = Tour::random(5, &mut rng);
            let f = evaluate(&tour, &inst);
            assert!((f[1] - 2.0 * f[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn summed_matrix_cost_adds_objectives() {
        let cf = CityFile {
            name: String::new(),
            dimension: 6,
            coords: vec![
                (0.0, 0.0),
                (4.0, 1.0),
                (2.0, 5.0),
                (7.0, 3.0),
                (1.0, 8.0),
                (6.0, 6.0),
            ],
        };
        let m1 = build_matrix(&cf, Rounding::Nint);
        let m2 = DistanceMatrix::from_fn(6, |i, j| ((i * 7 + j * 3) % 10) as f64);
        let inst = MotspInstance::new(vec![m1, m2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let tour = Tour::random(6, &mut rng);
            let f = evaluate(&tour, &inst);
            let summed = tour_cost_under(&tour, inst.summed_matrix());
            assert!((summed - (f[0] + f[1])).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_matrix_gives_zero_cost() {
        let zero = DistanceMatrix::from_fn(5, |_, _| 0.0);
        let tour = Tour::new(vec![4, 2, 0, 1, 3]).unwrap();
        assert_eq!(tour_cost_under(&tour, &zero), 0.0);
    }

    #[test]
    fn random_tour_is_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tour = Tour::random(100, &mut rng);
        let mut sorted = tour.order().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn random_tour_n3_is_one_of_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let tour = Tour::random(3, &mut rng);
            assert!(Tour::is_permutation(tour.order()));
        }
    }

    #[test]
    fn random_tour_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        assert_eq!(Tour::random(50, &mut a), Tour::random(50, &mut b));
    }

    #[test]
    fn non_permutation_is_rejected() {
        assert!(Tour::new(vec![0, 1, 1, 3]).is_err());
        assert!(Tour::new(vec![0, 1, 2, 4]).is_err());
        assert!(Tour::new(vec![0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn instance_rejects_mismatched_matrix_sizes() {
        let m1 = DistanceMatrix::from_fn(4, |_, _| 1.0);
        let m2 = DistanceMatrix::from_fn(5, |_, _| 1.0);
        assert!(MotspInstance::new(vec![m1, m2]).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_instance(
            rounding: Rounding,
        ) -> impl Strategy<Value = (MotspInstance, Vec<(f64, f64)>)> {
            proptest::collection::vec((0.0..500.0f64, 0.0..500.0f64), 4..30).prop_map(
                move |coords| {
                    let cf = CityFile {
                        name: String::new(),
                        dimension: coords.len(),
                        coords: coords.clone(),
                    };
                    let m = build_matrix(&cf, rounding);
                    (MotspInstance::new(vec![m]).unwrap(), coords)
                },
            )
        }

        proptest! {
            #[test]
            fn evaluate_matches_naive_recomputation(
                (inst, coords) in arb_instance(Rounding::Raw),
                seed in any::<u64>(),
            ) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let tour = Tour::random(inst.n(), &mut rng);
                let got = evaluate(&tour, &inst)[0];
                let o = tour.order();
                let mut naive = 0.0;
                for i in 0..o.len() {
                    let a = coords[o[i]];
                    let b = coords[o[(i + 1) % o.len()]];
                    naive += ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
                }
                prop_assert!((got - naive).abs() < 1e-6);
            }

            // Rotation and reversal tests use integer (nint) matrices so the
            // closed-cycle identity is exact, not merely within addition
            // reordering error.
            #[test]
            fn evaluate_is_rotation_invariant(
                (inst, _) in arb_instance(Rounding::Nint),
                seed in any::<u64>(),
                shift in 1usize..20,
            ) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let tour = Tour::random(inst.n(), &mut rng);
                let mut rotated = tour.order().to_vec();
                let len = rotated.len();
                rotated.rotate_left(shift % len);
                let rotated = Tour::new(rotated).unwrap();
                prop_assert_eq!(evaluate(&tour, &inst), evaluate(&rotated, &inst));
            }

            #[test]
            fn evaluate_is_reversal_invariant(
                (inst, _) in arb_instance(Rounding::Nint),
                seed in any::<u64>(),
            ) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let tour = Tour::random(inst.n(), &mut rng);
                let mut reversed = tour.order().to_vec();
                reversed.reverse();
                let reversed = Tour::new(reversed).unwrap();
                prop_assert_eq!(evaluate(&tour, &inst), evaluate(&reversed, &inst));
            }
        }
    }
}

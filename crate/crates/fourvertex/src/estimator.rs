//! Randomized approximation of the partition function and approximate Gibbs
//! sampling of configurations, assembled from worm-chain draws.
//!
//! `Z_0(t)` denotes the even-subgraph sum with every `x_e` scaled by `t`.
//! The estimator telescopes from `Z_0(0) = 1` through a schedule
//! `t_1 = 2^-|E| < ... < t_L = 1` with per-step growth at most `1 + 1/|E|`:
//! the first factor `Z_0(t_1)` is the reciprocal empty-state frequency
//! (pinned to [1, 2] by the schedule), and each subsequent ratio
//! `Z_0(t_i)/Z_0(t_{i+1}) = E[(t_i/t_{i+1})^{|S|}]` under level `t_{i+1}`
//! lies in `[1/e, 1]` sample by sample. Per-level means are amplified by
//! median-of-means; disconnected instances estimate per connected component
//! and add logs.

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::circuits::{classify, decompose, CircuitDecomposition, CircuitGraph};
use crate::even_subgraph::{reduce, spins_from_even, FerroIsingInstance, ReduceError};
use crate::graph::{DartConfig, FourVertexInstance, TooLarge};
use crate::parity::{build_system, solve, OddCycleWitness, SolveOutcome};
use crate::worm::WormKernel;

#[derive(Clone, PartialEq, Error, Debug)]
pub enum EstimateError {
    #[error("parity system is infeasible; no ferromagnetic reduction exists")]
    NoFerroReduction(OddCycleWitness),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Annealing schedule over the scale applied to every `x_e`.
#[derive(Clone, PartialEq, Debug)]
pub struct Schedule {
    /// `t_0 = 0 < t_1 = 2^-|E| < ... < t_L = 1`.
    pub levels: Vec<f64>,
}

impl Schedule {
    pub fn for_edge_count(num_edges: usize) -> Schedule {
        assert!(num_edges > 0);
        let mut levels = vec![0.0];
        let mut t = 0.5f64.powi(num_edges as i32);
        let growth = 1.0 + 1.0 / num_edges as f64;
        levels.push(t);
        while t < 1.0 {
            t = (t * growth).min(1.0);
            levels.push(t);
        }
        Schedule { levels }
    }

    /// Number of sampling levels (positive scales).
    pub fn num_positive(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Knobs for the estimator. `eps`/`delta` set the accuracy contract;
/// defaults for batch counts and chain lengths are derived from them and are
/// deliberately conservative, so desk-scale callers usually cap or override.
#[derive(Clone, Debug)]
pub struct EstimatorConfig {
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    /// Cap on worm steps per sample; `None` uses the mixing-time bound at
    /// each level.
    pub max_steps_per_level: Option<u64>,
    /// Override for the median-of-means batch count.
    pub batches: Option<usize>,
    /// Override for the per-batch sample count.
    pub batch_size: Option<usize>,
}

impl EstimatorConfig {
    pub fn new(eps: f64, delta: f64, seed: u64) -> Self {
        assert!(eps > 0.0 && eps < 1.0, "eps must be in (0,1)");
        assert!(delta > 0.0 && delta < 1.0, "delta must be in (0,1)");
        EstimatorConfig {
            eps,
            delta,
            seed,
            max_steps_per_level: None,
            batches: None,
            batch_size: None,
        }
    }

    pub fn with_chain_cap(mut self, steps: u64) -> Self {
        self.max_steps_per_level = Some(steps);
        self
    }

    pub fn with_sampling(mut self, batches: usize, batch_size: usize) -> Self {
        self.batches = Some(batches);
        self.batch_size = Some(batch_size);
        self
    }

    fn plan(&self, num_levels: usize) -> (usize, usize) {
        let levels = num_levels.max(1) as f64;
        let batches = self.batches.unwrap_or_else(|| {
            (8.0 * ((levels + 1.0) / self.delta).ln()).ceil().max(4.0) as usize
        });
        let batch_size = self.batch_size.unwrap_or_else(|| {
            // Chebyshev sizing for means in [1/e, 1] at per-level relative
            // tolerance eps / (2 L).
            let rho = self.eps / (2.0 * levels);
            let additive = rho / std::f64::consts::E;
            let var = {
                let range = 1.0 - 1.0 / std::f64::consts::E;
                range * range / 4.0
            };
            (4.0 * var / (additive * additive)).ceil().max(8.0) as usize
        });
        (batches, batch_size)
    }
}

/// The result of a randomized estimate, in log space.
#[derive(Clone, PartialEq, Debug)]
pub struct Estimate {
    pub log_value: f64,
    pub target_rel_error: f64,
    pub failure_prob: f64,
    pub samples_used: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Everything the worm stage needs, computed once per instance: the circuit
/// decomposition, the classified circuit graph, the canonical flip solution,
/// the flipped graph, and the ferromagnetic reduction.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub decomposition: CircuitDecomposition,
    pub circuit_graph: CircuitGraph,
    pub flips: Vec<bool>,
    pub fixed_graph: CircuitGraph,
    pub ferro: FerroIsingInstance,
}

/// Runs decompose -> classify -> build/solve parity -> apply flips -> reduce.
pub fn prepare(instance: &FourVertexInstance) -> Result<Pipeline, EstimateError> {
    let decomposition = decompose(instance);
    let circuit_graph =
        classify(instance, &decomposition).expect("decomposition from this instance");
    let system = build_system(&circuit_graph, &instance.beta());
    let flips = match solve(&system) {
        SolveOutcome::Satisfiable(a) => a.values,
        SolveOutcome::Infeasible(w) => return Err(EstimateError::NoFerroReduction(w)),
    };
    let fixed_graph = circuit_graph.apply_flips(&flips);
    let ferro = reduce(instance, &fixed_graph)?;
    Ok(Pipeline {
        decomposition,
        circuit_graph,
        flips,
        fixed_graph,
        ferro,
    })
}

fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    // splitmix64 over the tag stream.
    let mut state = master;
    for &t in tags {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(t);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        state = z ^ (z >> 31);
    }
    state
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn level_steps(
    kernel: &WormKernel,
    config: &EstimatorConfig,
    num_levels: usize,
) -> u64 {
    let eps_mix = (config.eps / (4.0 * num_levels.max(1) as f64)).clamp(1e-9, 0.25);
    let bound = kernel
        .mixing_bound(eps_mix)
        .map(|b| b.ceil() as u64)
        .unwrap_or(1);
    let bound = bound.max(16);
    match config.max_steps_per_level {
        Some(cap) => bound.min(cap.max(1)),
        None => bound,
    }
}

/// Estimates `ln Z_0` of one connected component.
fn estimate_component_log_z0(
    kernel: &WormKernel,
    config: &EstimatorConfig,
    component_tag: u64,
    samples_used: &mut u64,
) -> f64 {
    let num_edges = kernel.num_edges();
    if num_edges == 0 {
        return 0.0;
    }
    let schedule = Schedule::for_edge_count(num_edges);
    let num_levels = schedule.num_positive();
    let (batches, batch_size) = config.plan(num_levels);
    let mut log_z0 = 0.0;

    // Level t_1: Z_0(t_1) is the reciprocal empty-state frequency, which the
    // schedule confines to [1, 2].
    let t1 = schedule.levels[1];
    let kernel_t1 = kernel.rescaled(t1);
    let steps = level_steps(&kernel_t1, config, num_levels);
    let mut batch_freqs = Vec::with_capacity(batches);
    for b in 0..batches {
        let mut rng = SmallRng::seed_from_u64(derive_seed(
            config.seed,
            &[component_tag, 1, b as u64],
        ));
        let mut empties = 0u64;
        for _ in 0..batch_size {
            if kernel_t1.sample_even_with(steps, &mut rng).is_empty() {
                empties += 1;
            }
            *samples_used += 1;
        }
        batch_freqs.push(empties as f64 / batch_size as f64);
    }
    let freq = median(batch_freqs).max(1.0 / (2.0 * batch_size as f64));
    log_z0 += (1.0 / freq).clamp(1.0, 2.0).ln();

    // Ratios Z_0(t_i) / Z_0(t_{i+1}) sampled at level t_{i+1}.
    for i in 1..num_levels {
        let t_lo = schedule.levels[i];
        let t_hi = schedule.levels[i + 1];
        let rho = t_lo / t_hi;
        let kernel_t = kernel.rescaled(t_hi);
        let steps = level_steps(&kernel_t, config, num_levels);
        let mut batch_means = Vec::with_capacity(batches);
        for b in 0..batches {
            let mut rng = SmallRng::seed_from_u64(derive_seed(
                config.seed,
                &[component_tag, 1 + i as u64, b as u64],
            ));
            let mut total = 0.0;
            for _ in 0..batch_size {
                let s = kernel_t.sample_even_with(steps, &mut rng);
                total += rho.powi(s.len() as i32);
                *samples_used += 1;
            }
            batch_means.push(total / batch_size as f64);
        }
        let ratio = median(batch_means);
        debug_assert!(
            (1.0 / std::f64::consts::E - 1e-12..=1.0 + 1e-12).contains(&ratio),
            "telescoping ratio {} outside [1/e, 1]",
            ratio
        );
        log_z0 -= ratio.ln();
    }
    log_z0
}

/// Estimates `ln Z_0` for a ferromagnetic instance, per connected component.
pub fn estimate_z0(
    ferro: &FerroIsingInstance,
    config: &EstimatorConfig,
) -> Result<Estimate, EstimateError> {
    let mut samples_used = 0u64;
    let mut log_z0 = 0.0;
    for (idx, comp) in ferro.components().iter().enumerate() {
        let kernel = WormKernel::new(comp)?;
        log_z0 += estimate_component_log_z0(&kernel, config, idx as u64, &mut samples_used);
    }
    Ok(Estimate {
        log_value: log_z0,
        target_rel_error: config.eps,
        failure_prob: config.delta,
        samples_used,
        seed: config.seed,
    })
}

/// Full randomized partition-function estimate: pipeline, then
/// `ln Z = ln prefactor + ln(2^m prod (beta_e+1)/2) + ln Z_0-estimate`.
/// At `beta = 1` the system is closed-form (`m ln 2 + n ln c`) and no
/// samples are drawn.
pub fn estimate_partition(
    instance: &FourVertexInstance,
    config: &EstimatorConfig,
) -> Result<Estimate, EstimateError> {
    let pipeline = prepare(instance)?;
    let mut estimate = estimate_z0(&pipeline.ferro, config)?;
    estimate.log_value +=
        pipeline.ferro.log_prefactor() + pipeline.ferro.log_even_normalizer();
    Ok(estimate)
}

/// Draws an approximate Gibbs configuration: an even subgraph from the worm
/// chain, spins through the random-cluster coupling, then circuit bits
/// (spin XOR flip) expanded through dart parities.
pub fn sample_configuration(
    instance: &FourVertexInstance,
    steps: u64,
    seed: u64,
) -> Result<DartConfig, EstimateError> {
    let pipeline = prepare(instance)?;
    let mut rng = SmallRng::seed_from_u64(seed);
    sample_configuration_with(instance, &pipeline, steps, &mut rng)
}

/// Sampling core reusable across batches; the pipeline is computed once.
pub fn sample_configuration_with(
    instance: &FourVertexInstance,
    pipeline: &Pipeline,
    steps: u64,
    rng: &mut impl Rng,
) -> Result<DartConfig, EstimateError> {
    let kernel = WormKernel::new(&pipeline.ferro)?;
    let even = kernel.sample_even_with(steps, rng);
    let spins = spins_from_even(&pipeline.ferro, &even, rng);
    let sigma: Vec<bool> = spins
        .spins
        .iter()
        .zip(&pipeline.flips)
        .map(|(&s, &f)| s ^ f)
        .collect();
    let config = pipeline.decomposition.expand_assignment(&sigma);
    if !instance.is_valid_config(&config) {
        return Err(EstimateError::InvariantViolation(
            "sampled configuration has zero weight".to_string(),
        ));
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::even_subgraph::{exact_even_sum, exact_partition_from_even};
    use crate::generate::{theta4, theta4_slot_swapped};
    use crate::graph::Params;
    use crate::rational::ln_rational;
    use num_rational::BigRational;
    use num_traits::FromPrimitive;
    use std::collections::HashMap;

    fn triangle_half() -> FerroIsingInstance {
        FerroIsingInstance::from_weighted_edges(
            3,
            vec![
                (0, 1, BigRational::from_u64(3).unwrap()),
                (1, 2, BigRational::from_u64(3).unwrap()),
                (0, 2, BigRational::from_u64(3).unwrap()),
            ],
            BigRational::from_u64(1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn schedule_shape() {
        let s = Schedule::for_edge_count(6);
        assert_eq!(s.levels[0], 0.0);
        assert_eq!(s.levels[1], 0.5f64.powi(6));
        assert_eq!(*s.levels.last().unwrap(), 1.0);
        for w in s.levels[1..].windows(2) {
            assert!(w[1] / w[0] <= 1.0 + 1.0 / 6.0 + 1e-12);
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn single_edge_estimate_is_exactly_zero() {
        // Z_0 = 1 at every level: the only even state is empty.
        let ferro = FerroIsingInstance::from_weighted_edges(
            2,
            vec![(0, 1, BigRational::from_u64(4).unwrap())],
            BigRational::from_u64(1).unwrap(),
        )
        .unwrap();
        let config = EstimatorConfig::new(0.1, 0.25, 7)
            .with_chain_cap(200)
            .with_sampling(4, 16);
        let est = estimate_z0(&ferro, &config).unwrap();
        assert_eq!(est.log_value, 0.0);
        assert!(est.samples_used > 0);
    }

    #[test]
    fn edgeless_estimate_uses_no_samples() {
        let ferro = FerroIsingInstance::from_weighted_edges(
            3,
            vec![],
            BigRational::from_u64(1).unwrap(),
        )
        .unwrap();
        let est = estimate_z0(&ferro, &EstimatorConfig::new(0.1, 0.25, 7)).unwrap();
        assert_eq!(est.log_value, 0.0);
        assert_eq!(est.samples_used, 0);
    }

    #[test]
    fn triangle_estimate_hits_the_exact_value() {
        let ferro = triangle_half();
        let exact = ln_rational(&exact_even_sum(&ferro).unwrap());
        let mut hits = 0;
        let trials = 100;
        for seed in 0..trials {
            let config = EstimatorConfig::new(0.1, 0.25, seed)
                .with_chain_cap(400)
                .with_sampling(6, 48);
            let est = estimate_z0(&ferro, &config).unwrap();
            if (est.log_value - exact).abs() <= 0.1f64.ln_1p() {
                hits += 1;
            }
        }
        assert!(hits >= 75, "only {}/{} trials within tolerance", hits, trials);
    }

    #[test]
    fn default_plan_meets_contract_on_theta4() {
        // No overrides: batch counts and chain lengths come from the
        // (eps, delta) derivation. Theta4's reduced instance has one edge,
        // so this stays cheap while exercising the default sizing.
        let inst = theta4(Params::beta(2));
        let est = estimate_partition(&inst, &EstimatorConfig::new(0.2, 0.25, 11)).unwrap();
        let exact = ln_rational(&BigRational::from_u64(10).unwrap());
        assert!(
            ((est.log_value - exact).exp() - 1.0).abs() <= 0.2,
            "default-sized estimate {} vs exact {}",
            est.log_value,
            exact
        );
        assert!(est.samples_used > 0);
    }

    #[test]
    fn beta_one_partition_is_closed_form() {
        let inst = theta4(Params::beta(1));
        let config = EstimatorConfig::new(0.05, 0.25, 3);
        let est = estimate_partition(&inst, &config).unwrap();
        assert_eq!(est.log_value, 4.0f64.ln());
        assert_eq!(est.samples_used, 0);
    }

    #[test]
    fn theta4_partition_estimate() {
        let inst = theta4(Params::beta(2));
        let exact = ln_rational(&BigRational::from_u64(10).unwrap());
        for seed in [1u64, 2, 3] {
            let config = EstimatorConfig::new(0.1, 0.25, seed)
                .with_chain_cap(600)
                .with_sampling(6, 64);
            let est = estimate_partition(&inst, &config).unwrap();
            assert!(
                (est.log_value - exact).abs() < 0.1,
                "seed {}: {} vs {}",
                seed,
                est.log_value,
                exact
            );
        }
    }

    #[test]
    fn mixed_pair_instance_estimates_through_dropped_edges() {
        // theta4_slot_swapped reduces to an edgeless ferro instance with a
        // beta^1 prefactor: Z = 4 beta = 8.
        let inst = theta4_slot_swapped(Params::beta(2));
        let pipeline = prepare(&inst).unwrap();
        assert!(pipeline.ferro.edges().is_empty());
        assert_eq!(pipeline.ferro.dropped_edges(), 1);
        let est = estimate_partition(&inst, &EstimatorConfig::new(0.05, 0.25, 1)).unwrap();
        let exact = ln_rational(&exact_partition_from_even(&pipeline.ferro).unwrap());
        assert!((est.log_value - exact).abs() < 1e-12);
        assert_eq!(
            exact_partition_from_even(&pipeline.ferro).unwrap(),
            BigRational::from_u64(8).unwrap()
        );
    }

    #[test]
    fn estimates_are_deterministic_in_the_seed() {
        let inst = theta4(Params::beta(2));
        let config = EstimatorConfig::new(0.1, 0.25, 42)
            .with_chain_cap(300)
            .with_sampling(4, 32);
        let a = estimate_partition(&inst, &config).unwrap();
        let b = estimate_partition(&inst, &config).unwrap();
        assert_eq!(a, b);
        let other = EstimatorConfig::new(0.1, 0.25, 43)
            .with_chain_cap(300)
            .with_sampling(4, 32);
        let c = estimate_partition(&inst, &other).unwrap();
        assert_ne!(a.seed, c.seed);
    }

    #[test]
    fn theta4_sampler_matches_oracle_distribution() {
        let inst = theta4(Params::beta(2));
        let pipeline = prepare(&inst).unwrap();
        let mut rng = SmallRng::seed_from_u64(10_001);
        let samples = 6000;
        let mut heavy = 0usize;
        for _ in 0..samples {
            let config =
                sample_configuration_with(&inst, &pipeline, 2000, &mut rng).unwrap();
            let w = inst.config_weight(&config);
            if w == BigRational::from_u64(4).unwrap() {
                heavy += 1;
            } else {
                assert_eq!(w, BigRational::from_u64(1).unwrap());
            }
        }
        // Oracle: weight-4 configurations carry probability 8/10.
        let p = heavy as f64 / samples as f64;
        let sigma = (0.8 * 0.2 / samples as f64).sqrt();
        assert!((p - 0.8).abs() < 4.0 * sigma, "p = {}", p);
    }

    #[test]
    fn beta_one_sampler_is_uniform() {
        let inst = theta4(Params::beta(1));
        let pipeline = prepare(&inst).unwrap();
        let mut rng = SmallRng::seed_from_u64(5005);
        let samples = 8000;
        let mut counts: HashMap<String, usize> = HashMap::new();
        for _ in 0..samples {
            let config = sample_configuration_with(&inst, &pipeline, 50, &mut rng).unwrap();
            *counts.entry(config.bits_string()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 4);
        for (_, c) in counts {
            let p = c as f64 / samples as f64;
            assert!((p - 0.25).abs() < 0.03);
        }
    }

    #[test]
    fn infeasible_system_reports_no_ferro_reduction() {
        let inst = crate::generate::odd_disagree_cycle(Params::beta(2));
        match prepare(&inst) {
            Err(EstimateError::NoFerroReduction(w)) => {
                assert!(w.constraints.len() >= 3);
            }
            other => panic!("expected NoFerroReduction, got {:?}", other.map(|_| ())),
        }
    }
}

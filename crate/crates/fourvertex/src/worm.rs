//! The worm process: a lazy Metropolis chain on edge subsets with zero or
//! two odd-degree vertices, stationary for `w_worm(S) = xi(S) prod_{e in S}
//! x_e` with `xi = m` on even states and `2` on near-even states.
//!
//! The transition kernel, for `A' = A xor (u,v)`:
//!
//! ```text
//! x^{I(e not in A)} * 1/(2m) * (1/d(u) + 1/d(v))        A even
//! x^{I(e not in A)} * 1/4    * (1/d(u) + 1/d(v))        A' even
//! min(1, d(u)/d(v) * x^{I(not in) - I(in)}) / (4 d(u))  A, A' near-even, u odd
//! ```
//!
//! with all other off-diagonal entries zero and the diagonal filling each row
//! to 1. `m` counts non-isolated vertices; vertices isolated after tie-edge
//! dropping never enter the chain.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::even_subgraph::{EvenSubgraph, FerroIsingInstance};
use crate::graph::TooLarge;
use crate::rational::pow_rational;

/// Default cap on enumerable worm state spaces.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Error, Debug)]
pub enum WormError {
    #[error("state is not in the worm state space")]
    InvalidState,
    #[error("kernel has no edges")]
    NoEdges,
}

/// A chain state: an edge subset (bitmask over the kernel's edges) plus its
/// odd-degree vertices, of which there are zero or two.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WormState {
    mask: u64,
    odd: Option<(u32, u32)>,
}

impl WormState {
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn odd_vertices(&self) -> Option<(u32, u32)> {
        self.odd
    }

    pub fn is_even(&self) -> bool {
        self.odd.is_none()
    }

    pub fn edge_count(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn as_even_subgraph(&self) -> Option<EvenSubgraph> {
        self.is_even().then_some(EvenSubgraph { mask: self.mask })
    }
}

/// The worm kernel compiled from a ferromagnetic Ising instance.
#[derive(Clone, Debug)]
pub struct WormKernel {
    /// Non-isolated vertex count; the `m` in `xi` and in `1/(2m)`.
    m: usize,
    active: Vec<u32>,
    adj: Vec<Vec<(u32, u32)>>,
    deg: Vec<u32>,
    edges: Vec<(u32, u32)>,
    x: Vec<f64>,
    x_exact: Vec<BigRational>,
}

impl WormKernel {
    pub fn new(ferro: &FerroIsingInstance) -> Result<Self, TooLarge> {
        if ferro.edges().len() > 64 {
            return Err(TooLarge {
                what: "ising edges",
                size: ferro.edges().len(),
                cap: 64,
            });
        }
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); ferro.m()];
        let mut edges = Vec::new();
        let mut x = Vec::new();
        let mut x_exact = Vec::new();
        for (idx, e) in ferro.edges().iter().enumerate() {
            adj[e.u].push((e.v as u32, idx as u32));
            adj[e.v].push((e.u as u32, idx as u32));
            edges.push((e.u as u32, e.v as u32));
            x.push(e.x_e.to_f64().expect("x_e fits in f64"));
            x_exact.push(e.x_e.clone());
        }
        let deg: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
        let active: Vec<u32> = (0..ferro.m() as u32)
            .filter(|&v| deg[v as usize] > 0)
            .collect();
        Ok(WormKernel {
            m: active.len(),
            active,
            adj,
            deg,
            edges,
            x,
            x_exact,
        })
    }

    /// Same kernel with every `x_e` scaled by `t in (0, 1]`; used by the
    /// annealing schedule. The exact weights are scaled by the dyadic
    /// rational of `t` so exact checks stay meaningful on scaled kernels.
    pub fn rescaled(&self, t: f64) -> WormKernel {
        assert!(t > 0.0 && t <= 1.0);
        let t_exact = BigRational::from_float(t).expect("finite scale");
        WormKernel {
            m: self.m,
            active: self.active.clone(),
            adj: self.adj.clone(),
            deg: self.deg.clone(),
            edges: self.edges.clone(),
            x: self.x.iter().map(|v| v * t).collect(),
            x_exact: self.x_exact.iter().map(|v| v * &t_exact).collect(),
        }
    }

    /// The `m` used by `xi` and the even-state proposal.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.deg[v]
    }

    pub fn x_min(&self) -> Option<&BigRational> {
        self.x_exact.iter().min()
    }

    pub fn empty_state(&self) -> WormState {
        WormState {
            mask: 0,
            odd: None,
        }
    }

    /// Validates a mask into a worm state (0 or 2 odd-degree vertices).
    pub fn state_from_mask(&self, mask: u64) -> Result<WormState, WormError> {
        if self.edges.len() < 64 && mask >> self.edges.len() != 0 {
            return Err(WormError::InvalidState);
        }
        let mut parity = vec![false; self.deg.len()];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                parity[u as usize] ^= true;
                parity[v as usize] ^= true;
            }
        }
        let odd: Vec<u32> = (0..parity.len() as u32)
            .filter(|&v| parity[v as usize])
            .collect();
        match odd.len() {
            0 => Ok(WormState { mask, odd: None }),
            2 => Ok(WormState {
                mask,
                odd: Some((odd[0], odd[1])),
            }),
            _ => Err(WormError::InvalidState),
        }
    }

    /// `w_worm(S) = xi(S) prod_{e in S} x_e`, exactly.
    pub fn stationary_weight(&self, state: &WormState) -> BigRational {
        let xi = if state.is_even() { self.m as i64 } else { 2 };
        let mut w = BigRational::from(BigInt::from(xi));
        for (idx, x) in self.x_exact.iter().enumerate() {
            if state.mask >> idx & 1 == 1 {
                w *= x;
            }
        }
        w
    }

    fn exact_x(&self, edge: usize, present: bool) -> BigRational {
        if present {
            BigRational::one()
        } else {
            self.x_exact[edge].clone()
        }
    }

    /// Exact transition probability between two states differing in at most
    /// one edge; zero for non-adjacent pairs, diagonal = 1 - row sum.
    pub fn transition_probability(
        &self,
        a: &WormState,
        b: &WormState,
    ) -> Result<BigRational, WormError> {
        self.state_from_mask(a.mask)
            .and_then(|s| if s == *a { Ok(()) } else { Err(WormError::InvalidState) })?;
        self.state_from_mask(b.mask)
            .and_then(|s| if s == *b { Ok(()) } else { Err(WormError::InvalidState) })?;
        if a.mask == b.mask {
            let mut diag = BigRational::one();
            for e in 0..self.edges.len() {
                let neighbor = a.mask ^ (1 << e);
                if let Ok(next) = self.state_from_mask(neighbor) {
                    diag -= self.off_diagonal(a, &next, e);
                }
            }
            return Ok(diag);
        }
        let diff = a.mask ^ b.mask;
        if diff.count_ones() != 1 {
            return Ok(BigRational::zero());
        }
        let e = diff.trailing_zeros() as usize;
        Ok(self.off_diagonal(a, b, e))
    }

    /// The three off-diagonal kernel cases for toggling edge `e`.
    fn off_diagonal(&self, a: &WormState, b: &WormState, e: usize) -> BigRational {
        let (u, v) = self.edges[e];
        let present = a.mask >> e & 1 == 1;
        let du = self.deg[u as usize] as i64;
        let dv = self.deg[v as usize] as i64;
        let inv = |d: i64| BigRational::new(BigInt::one(), BigInt::from(d));
        match (a.odd, b.odd) {
            (None, Some(_)) => {
                self.exact_x(e, present)
                    * BigRational::new(BigInt::one(), BigInt::from(2 * self.m as i64))
                    * (inv(du) + inv(dv))
            }
            (Some(_), None) => {
                self.exact_x(e, present)
                    * BigRational::new(BigInt::one(), BigInt::from(4))
                    * (inv(du) + inv(dv))
            }
            (Some((p, q)), Some(_)) => {
                // Exactly one endpoint of e is odd in A; call it w.
                debug_assert!((u == p || u == q) != (v == p || v == q));
                let w = if u == p || u == q { u } else { v };
                let z = if w == u { v } else { u };
                let dw = self.deg[w as usize] as i64;
                let dz = self.deg[z as usize] as i64;
                let ratio = BigRational::new(BigInt::from(dw), BigInt::from(dz))
                    * if present {
                        self.x_exact[e].clone().recip()
                    } else {
                        self.x_exact[e].clone()
                    };
                ratio.min(BigRational::one())
                    * BigRational::new(BigInt::one(), BigInt::from(4 * dw))
            }
            (None, None) => unreachable!("single toggle cannot keep all degrees even"),
        }
    }

    /// One lazy Metropolis step. Draw order is fixed (lazy coin, vertex,
    /// neighbor, acceptance) so traces are reproducible from seeds.
    pub fn step(&self, state: &mut WormState, rng: &mut impl Rng) {
        if self.edges.is_empty() {
            return;
        }
        if rng.gen_bool(0.5) {
            return;
        }
        match state.odd {
            None => {
                let v = self.active[rng.gen_range(0..self.active.len())];
                let nbrs = &self.adj[v as usize];
                let (u, e) = nbrs[rng.gen_range(0..nbrs.len())];
                let adding = state.mask >> e & 1 == 0;
                if !adding || rng.gen::<f64>() < self.x[e as usize] {
                    state.mask ^= 1 << e;
                    state.odd = Some(if v < u { (v, u) } else { (u, v) });
                }
            }
            Some((p, q)) => {
                let w = if rng.gen_bool(0.5) { p } else { q };
                let nbrs = &self.adj[w as usize];
                let (z, e) = nbrs[rng.gen_range(0..nbrs.len())];
                let other = if w == p { q } else { p };
                let adding = state.mask >> e & 1 == 0;
                if z == other {
                    // Both endpoints odd: the toggle closes the worm.
                    if !adding || rng.gen::<f64>() < self.x[e as usize] {
                        state.mask ^= 1 << e;
                        state.odd = None;
                    }
                } else {
                    // The head moves from w to z.
                    let dw = self.deg[w as usize] as f64;
                    let dz = self.deg[z as usize] as f64;
                    let x = self.x[e as usize];
                    let ratio = dw / dz * if adding { x } else { 1.0 / x };
                    if ratio >= 1.0 || rng.gen::<f64>() < ratio {
                        state.mask ^= 1 << e;
                        state.odd = Some(if z < other { (z, other) } else { (other, z) });
                    }
                }
            }
        }
    }

    /// Runs the chain from the empty state; a run ending in a near-even
    /// state is retried with fresh randomness from the same stream, so the
    /// returned subgraph is distributed as the worm measure restricted to
    /// even states (for long enough runs).
    pub fn sample_even(&self, steps: u64, seed: u64) -> EvenSubgraph {
        let mut rng = SmallRng::seed_from_u64(seed);
        self.sample_even_with(steps, &mut rng)
    }

    pub fn sample_even_with(&self, steps: u64, rng: &mut impl Rng) -> EvenSubgraph {
        loop {
            let mut state = self.empty_state();
            for _ in 0..steps {
                self.step(&mut state, rng);
            }
            if let Some(even) = state.as_even_subgraph() {
                return even;
            }
        }
    }

    /// Enumerates the full worm state space.
    pub fn enumerate_states(&self, cap: usize) -> Result<Vec<WormState>, TooLarge> {
        let ne = self.edges.len();
        if ne >= 63 || (1usize << ne) > cap {
            return Err(TooLarge {
                what: "worm states",
                size: 1usize
                    .checked_shl(ne as u32)
                    .unwrap_or(usize::MAX),
                cap,
            });
        }
        Ok((0u64..(1 << ne))
            .filter_map(|mask| self.state_from_mask(mask).ok())
            .collect())
    }

    /// Exact reversibility check: every row sums to 1 with nonnegative
    /// entries, the chain is lazy (`P(A,A) >= 1/2`), and detailed balance
    /// `w(A) P(A,B) = w(B) P(B,A)` holds for every adjacent pair.
    pub fn check_reversibility(&self, cap: usize) -> Result<bool, TooLarge> {
        let states = self.enumerate_states(cap)?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for a in &states {
            let mut row = BigRational::zero();
            let mut diag = BigRational::one();
            for e in 0..self.edges.len() {
                if let Ok(b) = self.state_from_mask(a.mask ^ (1 << e)) {
                    let p_ab = self.off_diagonal(a, &b, e);
                    if p_ab < BigRational::zero() {
                        return Ok(false);
                    }
                    let p_ba = self.off_diagonal(&b, a, e);
                    if self.stationary_weight(a) * &p_ab
                        != self.stationary_weight(&b) * &p_ba
                    {
                        return Ok(false);
                    }
                    row += &p_ab;
                    diag -= p_ab;
                }
            }
            if diag < half || &row + &diag != BigRational::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks the stationary lower bound `pi(S) >= (1/2) (x_min/2)^{|E|}`
    /// over the full state space.
    pub fn check_measure_lower_bound(&self, cap: usize) -> Result<bool, TooLarge> {
        let states = self.enumerate_states(cap)?;
        let x_min = match self.x_min() {
            Some(x) => x.clone(),
            None => return Ok(true),
        };
        let z_worm: BigRational = states.iter().map(|s| self.stationary_weight(s)).sum();
        let bound = BigRational::new(BigInt::one(), BigInt::from(2))
            * pow_rational(
                &(x_min / BigRational::from(BigInt::from(2))),
                self.edges.len() as i64,
            );
        Ok(states
            .iter()
            .all(|s| self.stationary_weight(s) / &z_worm >= bound))
    }

    /// The companion check on the unnormalized weights,
    /// `w_worm(S) >= (1/2) (x_min/2)^{|E|}`; reported alongside the
    /// stationary-measure form.
    pub fn check_weight_lower_bound(&self, cap: usize) -> Result<bool, TooLarge> {
        let states = self.enumerate_states(cap)?;
        let x_min = match self.x_min() {
            Some(x) => x.clone(),
            None => return Ok(true),
        };
        let bound = BigRational::new(BigInt::one(), BigInt::from(2))
            * pow_rational(
                &(x_min / BigRational::from(BigInt::from(2))),
                self.edges.len() as i64,
            );
        Ok(states.iter().all(|s| self.stationary_weight(s) >= bound))
    }

    /// The mixing-time bound `4 m^5 |E|^2 (ln(2/eps)/|E| + ln(2/x_min))`,
    /// evaluated with the circuit count `m` in the polynomial factor.
    pub fn mixing_bound(&self, eps: f64) -> Result<f64, WormError> {
        assert!(eps > 0.0 && eps < 1.0, "eps must be in (0,1)");
        if self.edges.is_empty() {
            return Err(WormError::NoEdges);
        }
        let m = self.m as f64;
        let ne = self.edges.len() as f64;
        let x_min = self
            .x_min()
            .and_then(|x| x.to_f64())
            .expect("x_min fits in f64");
        Ok(4.0 * m.powi(5) * ne * ne * ((2.0 / eps).ln() / ne + (2.0 / x_min).ln()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{classify, decompose};
    use crate::even_subgraph::reduce;
    use crate::generate::random_four_regular;
    use crate::graph::Params;
    use crate::parity::{build_system, solve};
    use num_traits::FromPrimitive;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn single_edge_kernel() -> WormKernel {
        let ferro = FerroIsingInstance::from_weighted_edges(
            2,
            vec![(0, 1, BigRational::from_u64(4).unwrap())],
            BigRational::one(),
        )
        .unwrap();
        WormKernel::new(&ferro).unwrap()
    }

    fn triangle_kernel() -> WormKernel {
        let ferro = FerroIsingInstance::from_weighted_edges(
            3,
            vec![
                (0, 1, BigRational::from_u64(3).unwrap()),
                (1, 2, BigRational::from_u64(3).unwrap()),
                (0, 2, BigRational::from_u64(3).unwrap()),
            ],
            BigRational::one(),
        )
        .unwrap();
        WormKernel::new(&ferro).unwrap()
    }

    #[test]
    fn stationary_weights() {
        let k = single_edge_kernel();
        let empty = k.empty_state();
        assert_eq!(k.stationary_weight(&empty), BigRational::from_u64(2).unwrap());
        let full = k.state_from_mask(1).unwrap();
        assert_eq!(k.stationary_weight(&full), rational(6, 5));
    }

    #[test]
    fn single_edge_kernel_entries() {
        let k = single_edge_kernel();
        let empty = k.empty_state();
        let full = k.state_from_mask(1).unwrap();
        assert_eq!(
            k.transition_probability(&empty, &full).unwrap(),
            rational(3, 10)
        );
        assert_eq!(
            k.transition_probability(&full, &empty).unwrap(),
            rational(1, 2)
        );
        assert_eq!(
            k.transition_probability(&empty, &empty).unwrap(),
            rational(7, 10)
        );
    }

    #[test]
    fn reversibility_and_laziness() {
        assert!(single_edge_kernel().check_reversibility(1 << 20).unwrap());
        assert!(triangle_kernel().check_reversibility(1 << 20).unwrap());
    }

    #[test]
    fn corrupted_kernel_fails_detailed_balance() {
        // Negative control: perturb one off-diagonal entry and re-run the
        // same detailed-balance computation.
        let k = triangle_kernel();
        let states = k.enumerate_states(1 << 20).unwrap();
        let corrupt = |a: &WormState, b: &WormState, e: usize| {
            let p = k.off_diagonal(a, b, e);
            if a.mask == 0 && b.mask == 1 {
                p * rational(9, 10)
            } else {
                p
            }
        };
        let mut balanced = true;
        for a in &states {
            for e in 0..k.num_edges() {
                if let Ok(b) = k.state_from_mask(a.mask ^ (1 << e)) {
                    if k.stationary_weight(a) * corrupt(a, &b, e)
                        != k.stationary_weight(&b) * corrupt(&b, a, e)
                    {
                        balanced = false;
                    }
                }
            }
        }
        assert!(!balanced);
    }

    #[test]
    fn measure_lower_bound_holds() {
        // Single edge: min pi = (6/5)/(16/5) = 3/8 >= (1/2)(3/10) = 3/20.
        assert!(single_edge_kernel().check_measure_lower_bound(1 << 20).unwrap());
        assert!(triangle_kernel().check_measure_lower_bound(1 << 20).unwrap());
        assert!(single_edge_kernel().check_weight_lower_bound(1 << 20).unwrap());
    }

    #[test]
    fn random_reduced_instances_pass_kernel_checks() {
        use rand::rngs::SmallRng;
        let mut rng = SmallRng::seed_from_u64(23);
        let mut checked = 0;
        for _ in 0..60 {
            let n = rng.gen_range(2..=6);
            let params = if rng.gen_bool(0.5) {
                Params::beta(2)
            } else {
                Params::beta_ratio(1, 3)
            };
            let inst = random_four_regular(n, params, &mut rng);
            let graph = classify(&inst, &decompose(&inst)).unwrap();
            let sys = build_system(&graph, &inst.beta());
            let Some(assignment) = solve(&sys).assignment().cloned() else {
                continue;
            };
            let ferro = reduce(&inst, &graph.apply_flips(&assignment.values)).unwrap();
            if ferro.edges().is_empty() {
                continue;
            }
            let kernel = WormKernel::new(&ferro).unwrap();
            assert!(kernel.check_reversibility(1 << 20).unwrap());
            assert!(kernel.check_measure_lower_bound(1 << 20).unwrap());
            checked += 1;
        }
        assert!(checked > 10, "too few nontrivial instances: {}", checked);
    }

    #[test]
    fn empirical_kernel_matches_exact_probabilities() {
        let k = triangle_kernel();
        let states = k.enumerate_states(1 << 20).unwrap();
        let mut rng = SmallRng::seed_from_u64(99);
        let trials = 40_000u32;
        for a in states.iter().take(4) {
            let mut counts = std::collections::HashMap::new();
            for _ in 0..trials {
                let mut s = *a;
                k.step(&mut s, &mut rng);
                *counts.entry(s.mask).or_insert(0u32) += 1;
            }
            for b in &states {
                let exact = k
                    .transition_probability(a, b)
                    .unwrap()
                    .to_f64()
                    .unwrap();
                let observed =
                    *counts.get(&b.mask).unwrap_or(&0) as f64 / trials as f64;
                let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
                assert!(
                    (observed - exact).abs() <= 5.0 * sigma + 0.003,
                    "state {:b} -> {:b}: exact {} observed {}",
                    a.mask,
                    b.mask,
                    exact,
                    observed
                );
            }
        }
    }

    #[test]
    fn chain_stays_in_worm_space() {
        let k = triangle_kernel();
        let mut rng = SmallRng::seed_from_u64(7);
        let mut state = k.empty_state();
        for _ in 0..20_000 {
            k.step(&mut state, &mut rng);
            let validated = k.state_from_mask(state.mask).unwrap();
            assert_eq!(validated, state);
        }
    }

    #[test]
    fn sample_even_trivial_cases() {
        let k = single_edge_kernel();
        for seed in 0..5 {
            assert!(k.sample_even(200, seed).is_empty());
        }
    }

    #[test]
    fn triangle_even_distribution() {
        // Conditional on even, P(full triangle) = (1/8) / (9/8) = 1/9.
        let k = triangle_kernel();
        let mut rng = SmallRng::seed_from_u64(4242);
        let samples = 20_000;
        let mut full = 0;
        for _ in 0..samples {
            let s = k.sample_even_with(300, &mut rng);
            if s.mask == 0b111 {
                full += 1;
            }
        }
        let p = full as f64 / samples as f64;
        let expect = 1.0 / 9.0;
        let sigma = (expect * (1.0 - expect) / samples as f64).sqrt();
        assert!((p - expect).abs() < 4.0 * sigma, "p = {}", p);
    }

    #[test]
    fn empirical_stationary_distribution() {
        // Long-run state frequencies match pi_worm within a few standard
        // errors on the single-edge kernel.
        let k = single_edge_kernel();
        let states = k.enumerate_states(1 << 20).unwrap();
        let z: BigRational = states.iter().map(|s| k.stationary_weight(s)).sum();
        let mut rng = SmallRng::seed_from_u64(31);
        let mut state = k.empty_state();
        let steps = 200_000u32;
        let mut visits = std::collections::HashMap::new();
        for _ in 0..steps {
            k.step(&mut state, &mut rng);
            *visits.entry(state.mask).or_insert(0u64) += 1;
        }
        for s in &states {
            let pi = (k.stationary_weight(s) / &z).to_f64().unwrap();
            let freq = *visits.get(&s.mask).unwrap_or(&0) as f64 / steps as f64;
            assert!((freq - pi).abs() < 0.01, "pi {} freq {}", pi, freq);
        }
    }

    #[test]
    fn mixing_bound_value_and_monotonicity() {
        let k = single_edge_kernel();
        // 4 * 2^5 * 1 * (ln 20 + ln (10/3)) = 537.5622...
        let bound = k.mixing_bound(0.1).unwrap();
        let hand = 128.0 * (20.0f64.ln() + (10.0f64 / 3.0).ln());
        assert!((bound - hand).abs() < 1e-9 * hand);
        assert!((bound - 537.562_249_968_630_7).abs() < 1e-6 * bound);
        assert!(k.mixing_bound(0.2).unwrap() < bound);
        let sharper = k.rescaled(1.0);
        assert_eq!(sharper.mixing_bound(0.1).unwrap(), bound);
        // Larger x_min decreases the bound: compare against a scaled-down x.
        let ferro = FerroIsingInstance::from_weighted_edges(
            2,
            vec![(0, 1, BigRational::from_u64(9).unwrap())],
            BigRational::one(),
        )
        .unwrap();
        let k_hi = WormKernel::new(&ferro).unwrap();
        assert!(k_hi.mixing_bound(0.1).unwrap() < bound);
    }

    #[test]
    fn edgeless_kernel() {
        let ferro =
            FerroIsingInstance::from_weighted_edges(3, vec![], BigRational::one()).unwrap();
        let k = WormKernel::new(&ferro).unwrap();
        assert_eq!(k.mixing_bound(0.1), Err(WormError::NoEdges));
        assert!(k.sample_even(10, 1).is_empty());
        let mut rng = SmallRng::seed_from_u64(1);
        let mut st = k.empty_state();
        k.step(&mut st, &mut rng);
        assert_eq!(st, k.empty_state());
    }
}

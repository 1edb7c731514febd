//! Reduction of a flip-fixed circuit graph to a ferromagnetic Ising instance
//! and its even-subgraph (high-temperature) expansion.
//!
//! With `beta_e = beta^(A'-D') >= 1` per pair and `x_e = (beta_e-1)/(beta_e+1)`,
//! the partition function factors as
//! `prefactor * 2^m * prod (beta_e+1)/2 * sum_{S even} prod_{e in S} x_e`,
//! where the prefactor collects `c^n`, `beta^(sum D')`, and the constant
//! single-circuit vertices. Edges with `beta_e = 1` carry `x_e = 0` and are
//! dropped before any chain runs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::circuits::CircuitGraph;
use crate::graph::{FourVertexInstance, TooLarge};
use crate::rational::{ln_rational, pow_rational};

/// Default cap on edge count for exact even-subgraph enumeration.
pub const DEFAULT_EVEN_CAP: usize = 24;

/// One weighted Ising edge with `beta_e >= 1` and `x_e = (beta_e-1)/(beta_e+1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct IsingEdge {
    pub u: usize,
    pub v: usize,
    pub beta_e: BigRational,
    pub x_e: BigRational,
}

/// A ferromagnetic Ising instance over the circuit-graph vertices.
#[derive(Clone, PartialEq, Debug)]
pub struct FerroIsingInstance {
    m: usize,
    edges: Vec<IsingEdge>,
    prefactor: BigRational,
    dropped_edges: usize,
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum ReduceError {
    #[error("pair ({0}, {1}) is antiferromagnetic after flips")]
    NotFerromagnetic(usize, usize),
}

/// Builds the ferromagnetic instance from a circuit graph that already
/// satisfies the flip precondition (`A' >= D'` for `beta > 1`, `A' <= D'` for
/// `beta < 1`). Edges with `beta_e = 1` are dropped but counted.
pub fn reduce(
    instance: &FourVertexInstance,
    fixed: &CircuitGraph,
) -> Result<FerroIsingInstance, ReduceError> {
    let beta = instance.beta();
    let one = BigRational::one();
    let mut edges = Vec::new();
    let mut dropped = 0usize;
    let mut disagree_total: i64 = 0;
    for (&(i, j), counts) in fixed.edges() {
        let exp = counts.agree as i64 - counts.disagree as i64;
        disagree_total += counts.disagree as i64;
        if exp == 0 {
            dropped += 1;
            continue;
        }
        if beta.is_zero() {
            // beta = 0 cannot produce a weight >= 1 on a non-tied pair.
            return Err(ReduceError::NotFerromagnetic(i, j));
        }
        let beta_e = pow_rational(&beta, exp);
        if beta_e < one {
            return Err(ReduceError::NotFerromagnetic(i, j));
        }
        if beta_e == one {
            dropped += 1;
            continue;
        }
        let x_e = (&beta_e - &one) / (&beta_e + &one);
        edges.push(IsingEdge { u: i, v: j, beta_e, x_e });
    }
    let prefactor = instance.constant_factor()
        * pow_rational(&beta, disagree_total + fixed.const_beta_exponent() as i64);
    Ok(FerroIsingInstance {
        m: fixed.m(),
        edges,
        prefactor,
        dropped_edges: dropped,
    })
}

impl FerroIsingInstance {
    /// Builds an Ising instance directly from weighted edges; used by the
    /// planar path where the black-face graph already is the Ising graph.
    pub fn from_weighted_edges(
        m: usize,
        weighted: Vec<(usize, usize, BigRational)>,
        prefactor: BigRational,
    ) -> Result<Self, ReduceError> {
        let one = BigRational::one();
        let mut edges = Vec::new();
        let mut dropped = 0;
        for (u, v, beta_e) in weighted {
            if beta_e < one {
                return Err(ReduceError::NotFerromagnetic(u, v));
            }
            if beta_e == one {
                dropped += 1;
                continue;
            }
            let x_e = (&beta_e - &one) / (&beta_e + &one);
            edges.push(IsingEdge { u, v, beta_e, x_e });
        }
        Ok(FerroIsingInstance {
            m,
            edges,
            prefactor,
            dropped_edges: dropped,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[IsingEdge] {
        &self.edges
    }

    pub fn dropped_edges(&self) -> usize {
        self.dropped_edges
    }

    /// Exact prefactor `c^n * beta^(sum D' + const_beta_exponent)`.
    pub fn prefactor(&self) -> &BigRational {
        &self.prefactor
    }

    pub fn log_prefactor(&self) -> f64 {
        ln_rational(&self.prefactor)
    }

    /// The even-subgraph normalizer `2^m * prod (beta_e+1)/2`, kept separate
    /// from the prefactor so both the Ising and even-subgraph forms are
    /// recoverable.
    pub fn even_normalizer(&self) -> BigRational {
        let mut z = pow_rational(&BigRational::from(BigInt::from(2)), self.m as i64);
        let two = BigRational::from(BigInt::from(2));
        for e in &self.edges {
            z *= (&e.beta_e + BigRational::one()) / &two;
        }
        z
    }

    pub fn log_even_normalizer(&self) -> f64 {
        ln_rational(&self.even_normalizer())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.m];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Splits into connected components of the kept-edge graph, dropping
    /// isolated vertices (each contributes an exact factor 2 through the
    /// normalizer, never through chain dynamics). Component instances carry
    /// prefactor 1.
    pub fn components(&self) -> Vec<FerroIsingInstance> {
        let mut comp = vec![usize::MAX; self.m];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.m];
        for (idx, e) in self.edges.iter().enumerate() {
            adj[e.u].push(idx);
            adj[e.v].push(idx);
        }
        let mut out = Vec::new();
        for start in 0..self.m {
            if comp[start] != usize::MAX || adj[start].is_empty() {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut vertices = vec![start];
            let mut edge_ids = Vec::new();
            let mut edge_seen = vec![false; self.edges.len()];
            while let Some(v) = stack.pop() {
                for &eidx in &adj[v] {
                    if !edge_seen[eidx] {
                        edge_seen[eidx] = true;
                        edge_ids.push(eidx);
                    }
                    let e = &self.edges[eidx];
                    let w = if e.u == v { e.v } else { e.u };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        vertices.push(w);
                        stack.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            edge_ids.sort_unstable();
            let relabel: std::collections::BTreeMap<usize, usize> = vertices
                .iter()
                .enumerate()
                .map(|(new, &old)| (old, new))
                .collect();
            let edges = edge_ids
                .iter()
                .map(|&eidx| {
                    let e = &self.edges[eidx];
                    IsingEdge {
                        u: relabel[&e.u],
                        v: relabel[&e.v],
                        beta_e: e.beta_e.clone(),
                        x_e: e.x_e.clone(),
                    }
                })
                .collect();
            out.push(FerroIsingInstance {
                m: vertices.len(),
                edges,
                prefactor: BigRational::one(),
                dropped_edges: 0,
            });
        }
        out
    }
}

/// An even edge subset, as indices into the instance's kept edges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EvenSubgraph {
    pub mask: u64,
}

impl EvenSubgraph {
    pub fn empty() -> Self {
        EvenSubgraph { mask: 0 }
    }

    pub fn edge_indices(&self) -> Vec<usize> {
        (0..64).filter(|i| self.mask >> i & 1 == 1).collect()
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

/// One spin per circuit-graph vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpinAssignment {
    pub spins: Vec<bool>,
}

/// Exact `Z_0 = sum over even subgraphs of prod x_e` (the empty set
/// contributes 1).
pub fn exact_even_sum(ferro: &FerroIsingInstance) -> Result<BigRational, TooLarge> {
    exact_even_sum_capped(ferro, DEFAULT_EVEN_CAP)
}

pub fn exact_even_sum_capped(
    ferro: &FerroIsingInstance,
    cap: usize,
) -> Result<BigRational, TooLarge> {
    let ne = ferro.edges().len();
    if ne > cap {
        return Err(TooLarge {
            what: "ising edges",
            size: ne,
            cap,
        });
    }
    let mut total = BigRational::zero();
    let mut degree_parity = vec![false; ferro.m()];
    let mut product = BigRational::one();
    fn rec(
        ferro: &FerroIsingInstance,
        idx: usize,
        odd_count: usize,
        degree_parity: &mut [bool],
        product: &mut BigRational,
        total: &mut BigRational,
    ) {
        if idx == ferro.edges().len() {
            if odd_count == 0 {
                *total += product.clone();
            }
            return;
        }
        // Exclude edge idx.
        rec(ferro, idx + 1, odd_count, degree_parity, product, total);
        // Include edge idx.
        let e = &ferro.edges()[idx];
        let mut odd = odd_count;
        for v in [e.u, e.v] {
            degree_parity[v] = !degree_parity[v];
            if degree_parity[v] {
                odd += 1;
            } else {
                odd -= 1;
            }
        }
        let saved = product.clone();
        *product *= &e.x_e;
        rec(ferro, idx + 1, odd, degree_parity, product, total);
        *product = saved;
        for v in [e.u, e.v] {
            degree_parity[v] = !degree_parity[v];
        }
    }
    rec(ferro, 0, 0, &mut degree_parity, &mut product, &mut total);
    Ok(total)
}

/// Exact partition function through the even-subgraph identity:
/// `prefactor * 2^m * prod (beta_e+1)/2 * Z_0`.
pub fn exact_partition_from_even(
    ferro: &FerroIsingInstance,
) -> Result<BigRational, TooLarge> {
    exact_partition_from_even_capped(ferro, DEFAULT_EVEN_CAP)
}

pub fn exact_partition_from_even_capped(
    ferro: &FerroIsingInstance,
    cap: usize,
) -> Result<BigRational, TooLarge> {
    let z0 = exact_even_sum_capped(ferro, cap)?;
    Ok(ferro.prefactor() * ferro.even_normalizer() * z0)
}

/// Exact Ising partition function `sum_sigma prod beta_e^{I(equal)}` by spin
/// enumeration, without the prefactor. Test oracle for the identity above.
pub fn exact_ising_sum(ferro: &FerroIsingInstance, cap: usize) -> Result<BigRational, TooLarge> {
    if ferro.m() > cap {
        return Err(TooLarge {
            what: "ising vertices",
            size: ferro.m(),
            cap,
        });
    }
    let mut z = BigRational::zero();
    for sigma in 0u64..(1 << ferro.m()) {
        let mut w = BigRational::one();
        for e in ferro.edges() {
            if (sigma >> e.u) & 1 == (sigma >> e.v) & 1 {
                w *= &e.beta_e;
            }
        }
        z += w;
    }
    Ok(z)
}

/// Converts an even-subgraph sample into a spin sample: every absent edge is
/// added independently with probability `x_e`, then each connected component
/// of the resulting edge set receives one uniform spin. Applied to an exact
/// even-subgraph draw this yields an exact Gibbs spin sample; see
/// `coupling_matches_gibbs` for the enumeration that pins this down.
pub fn spins_from_even(
    ferro: &FerroIsingInstance,
    sample: &EvenSubgraph,
    rng: &mut impl Rng,
) -> SpinAssignment {
    let mut mask = sample.mask;
    for (idx, e) in ferro.edges().iter().enumerate() {
        if mask >> idx & 1 == 0 {
            let x = e.x_e.to_f64().unwrap_or(0.0);
            if rng.gen::<f64>() < x {
                mask |= 1 << idx;
            }
        }
    }
    // Union-find over the augmented edge set.
    let mut parent: Vec<usize> = (0..ferro.m()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut cur = x;
        while parent[cur] != r {
            let next = parent[cur];
            parent[cur] = r;
            cur = next;
        }
        r
    }
    for (idx, e) in ferro.edges().iter().enumerate() {
        if mask >> idx & 1 == 1 {
            let ru = find(&mut parent, e.u);
            let rv = find(&mut parent, e.v);
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
    }
    // One uniform spin per component, drawn in order of component root.
    let mut root_spin: Vec<Option<bool>> = vec![None; ferro.m()];
    let mut spins = vec![false; ferro.m()];
    for v in 0..ferro.m() {
        let r = find(&mut parent, v);
        let spin = *root_spin[r].get_or_insert_with(|| rng.gen::<bool>());
        spins[v] = spin;
    }
    SpinAssignment { spins }
}

/// Exact Gibbs distribution over the `2^m` spin assignments (probabilities,
/// summing to 1). Enumeration oracle for sampler tests.
pub fn exact_gibbs_distribution(
    ferro: &FerroIsingInstance,
    cap: usize,
) -> Result<Vec<BigRational>, TooLarge> {
    if ferro.m() > cap {
        return Err(TooLarge {
            what: "ising vertices",
            size: ferro.m(),
            cap,
        });
    }
    let mut weights = Vec::with_capacity(1 << ferro.m());
    let mut total = BigRational::zero();
    for sigma in 0u64..(1 << ferro.m()) {
        let mut w = BigRational::one();
        for e in ferro.edges() {
            if (sigma >> e.u) & 1 == (sigma >> e.v) & 1 {
                w *= &e.beta_e;
            }
        }
        total += &w;
        weights.push(w);
    }
    Ok(weights.into_iter().map(|w| w / &total).collect())
}

/// Exact spin distribution of the `spins_from_even` coupling applied to the
/// exact even-subgraph distribution, by marginalizing over the augmented edge
/// set `omega`: `P(omega) = prod_{e in omega} x_e * prod_{e not in omega}
/// (1 - x_e) * #(even subsets of omega) / Z_0`, and spins are uniform per
/// component of `omega`.
pub fn exact_coupling_distribution(
    ferro: &FerroIsingInstance,
    cap: usize,
) -> Result<Vec<BigRational>, TooLarge> {
    let ne = ferro.edges().len();
    if ne > cap || ferro.m() > 2 * cap {
        return Err(TooLarge {
            what: "ising edges",
            size: ne,
            cap,
        });
    }
    let z0 = exact_even_sum_capped(ferro, cap)?;
    let m = ferro.m();
    let mut dist = vec![BigRational::zero(); 1 << m];
    for omega in 0u64..(1 << ne) {
        // Weight of omega under the coupling's marginal.
        let mut w = BigRational::one();
        for (idx, e) in ferro.edges().iter().enumerate() {
            if omega >> idx & 1 == 1 {
                w *= &e.x_e;
            } else {
                w *= BigRational::one() - &e.x_e;
            }
        }
        // Number of even subsets of omega = 2^(cycle rank of omega).
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            r
        }
        let mut merges = 0usize;
        let mut edge_count = 0usize;
        for (idx, e) in ferro.edges().iter().enumerate() {
            if omega >> idx & 1 == 1 {
                edge_count += 1;
                let ru = find(&mut parent, e.u);
                let rv = find(&mut parent, e.v);
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                    merges += 1;
                }
            }
        }
        let cycle_rank = edge_count - merges;
        w *= pow_rational(
            &BigRational::from(BigInt::from(2)),
            cycle_rank as i64,
        );
        // Components of omega over all m vertices (isolated ones count).
        let components = m - merges;
        let per_spin = w / &z0
            / pow_rational(&BigRational::from(BigInt::from(2)), components as i64);
        // Spread over consistent spin assignments: sigma constant on each
        // component of omega.
        for sigma in 0u64..(1 << m) {
            let mut consistent = true;
            for (idx, e) in ferro.edges().iter().enumerate() {
                if omega >> idx & 1 == 1
                    && (sigma >> e.u) & 1 != (sigma >> e.v) & 1
                {
                    consistent = false;
                    break;
                }
            }
            if consistent {
                dist[sigma as usize] += &per_spin;
            }
        }
    }
    Ok(dist)
}

/// True when the exact coupling distribution equals the exact Gibbs
/// distribution (total-variation distance zero in rational arithmetic).
pub fn coupling_matches_gibbs(
    ferro: &FerroIsingInstance,
    cap: usize,
) -> Result<bool, TooLarge> {
    // Both sides factor over connected components, so check per component;
    // isolated vertices are uniform on both sides.
    for comp in ferro.components() {
        let coupling = exact_coupling_distribution(&comp, cap)?;
        let gibbs = exact_gibbs_distribution(&comp, 2 * cap)?;
        if coupling != gibbs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{classify, decompose};
    use crate::generate::theta4;
    use crate::graph::Params;
    use crate::parity::{build_system, solve};
    use num_traits::FromPrimitive;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn reduce_theta4(params: Params) -> FerroIsingInstance {
        let inst = theta4(params);
        let graph = classify(&inst, &decompose(&inst)).unwrap();
        let sys = build_system(&graph, &inst.beta());
        let flips = solve(&sys).assignment().unwrap().values.clone();
        reduce(&inst, &graph.apply_flips(&flips)).unwrap()
    }

    /// Hand-built instance: triangle with all x_e = 1/2 (beta_e = 3).
    fn triangle_half() -> FerroIsingInstance {
        FerroIsingInstance::from_weighted_edges(
            3,
            vec![
                (0, 1, BigRational::from_u64(3).unwrap()),
                (1, 2, BigRational::from_u64(3).unwrap()),
                (0, 2, BigRational::from_u64(3).unwrap()),
            ],
            BigRational::one(),
        )
        .unwrap()
    }

    #[test]
    fn theta4_reduction_beta2() {
        let ferro = reduce_theta4(Params::beta(2));
        assert_eq!(ferro.m(), 2);
        assert_eq!(ferro.edges().len(), 1);
        assert_eq!(ferro.edges()[0].beta_e, BigRational::from_u64(4).unwrap());
        assert_eq!(ferro.edges()[0].x_e, rational(3, 5));
        assert_eq!(ferro.prefactor(), &BigRational::one());
        assert_eq!(ferro.dropped_edges(), 0);
    }

    #[test]
    fn theta4_reduction_beta_one_is_edgeless() {
        let ferro = reduce_theta4(Params::beta(1));
        assert!(ferro.edges().is_empty());
        assert_eq!(
            exact_partition_from_even(&ferro).unwrap(),
            BigRational::from_u64(4).unwrap()
        );
    }

    #[test]
    fn theta4_reduction_beta_half() {
        // Eq-3 flips (0, 1) turn (A, D) = (2, 0) into (0, 2), so
        // beta_e = (1/2)^(-2) = 4 and the prefactor carries beta^2 = 1/4.
        let ferro = reduce_theta4(Params::beta_ratio(1, 2));
        assert_eq!(ferro.edges()[0].beta_e, BigRational::from_u64(4).unwrap());
        assert_eq!(ferro.prefactor(), &rational(1, 4));
        assert_eq!(
            exact_partition_from_even(&ferro).unwrap(),
            rational(5, 2)
        );
    }

    #[test]
    fn antiferromagnetic_pair_is_rejected() {
        let inst = theta4(Params::beta(2));
        let graph = classify(&inst, &decompose(&inst)).unwrap();
        // Wrong flips make (A', D') = (0, 2) with beta = 2.
        let err = reduce(&inst, &graph.apply_flips(&[true, false])).unwrap_err();
        assert_eq!(err, ReduceError::NotFerromagnetic(0, 1));
    }

    #[test]
    fn even_sums() {
        let single = FerroIsingInstance::from_weighted_edges(
            2,
            vec![(0, 1, BigRational::from_u64(4).unwrap())],
            BigRational::one(),
        )
        .unwrap();
        assert_eq!(exact_even_sum(&single).unwrap(), BigRational::one());
        assert_eq!(exact_even_sum(&triangle_half()).unwrap(), rational(9, 8));
        let edgeless = FerroIsingInstance::from_weighted_edges(
            3,
            vec![],
            BigRational::one(),
        )
        .unwrap();
        assert_eq!(exact_even_sum(&edgeless).unwrap(), BigRational::one());
    }

    #[test]
    fn theta4_partition_values_via_even_route() {
        for (params, expected) in [
            (Params::beta(2), BigRational::from_u64(10).unwrap()),
            (Params::beta(1), BigRational::from_u64(4).unwrap()),
            (Params::beta_ratio(1, 2), rational(5, 2)),
        ] {
            let ferro = reduce_theta4(params);
            assert_eq!(exact_partition_from_even(&ferro).unwrap(), expected);
        }
    }

    #[test]
    fn even_identity_matches_ising_enumeration() {
        let ferro = triangle_half();
        let even = ferro.even_normalizer() * exact_even_sum(&ferro).unwrap();
        assert_eq!(even, exact_ising_sum(&ferro, 20).unwrap());
    }

    #[test]
    fn coupling_is_exact_on_small_instances() {
        assert!(coupling_matches_gibbs(&triangle_half(), 10).unwrap());
        let single = FerroIsingInstance::from_weighted_edges(
            2,
            vec![(0, 1, BigRational::from_u64(4).unwrap())],
            BigRational::one(),
        )
        .unwrap();
        assert!(coupling_matches_gibbs(&single, 10).unwrap());
        let theta = reduce_theta4(Params::beta(2));
        assert!(coupling_matches_gibbs(&theta, 10).unwrap());
    }

    #[test]
    fn single_edge_equal_spin_marginal() {
        // P(spins equal) = x + (1-x)/2 = beta_e/(beta_e+1) = 4/5.
        let single = FerroIsingInstance::from_weighted_edges(
            2,
            vec![(0, 1, BigRational::from_u64(4).unwrap())],
            BigRational::one(),
        )
        .unwrap();
        let dist = exact_coupling_distribution(&single, 10).unwrap();
        let equal = &dist[0b00] + &dist[0b11];
        assert_eq!(equal, rational(4, 5));
    }

    #[test]
    fn all_x_zero_gives_independent_uniform_spins() {
        let edgeless = FerroIsingInstance::from_weighted_edges(
            3,
            vec![],
            BigRational::one(),
        )
        .unwrap();
        let mut rng = SmallRng::seed_from_u64(5);
        let mut counts = [0usize; 8];
        for _ in 0..8000 {
            let s = spins_from_even(&edgeless, &EvenSubgraph::empty(), &mut rng);
            let idx = s
                .spins
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i));
            counts[idx] += 1;
        }
        for c in counts {
            assert!((c as f64 - 1000.0).abs() < 150.0, "counts {:?}", counts);
        }
    }

    #[test]
    fn monotone_in_edge_weights() {
        // Increasing a single beta_e cannot decrease Z.
        let base = triangle_half();
        let z_base = exact_partition_from_even(&base).unwrap();
        let mut bigger = vec![
            (0usize, 1usize, BigRational::from_u64(3).unwrap()),
            (1, 2, BigRational::from_u64(3).unwrap()),
            (0, 2, BigRational::from_u64(3).unwrap()),
        ];
        bigger[1].2 = BigRational::from_u64(5).unwrap();
        let bigger =
            FerroIsingInstance::from_weighted_edges(3, bigger, BigRational::one()).unwrap();
        assert!(exact_partition_from_even(&bigger).unwrap() >= z_base);
    }

    #[test]
    fn components_split_and_cover() {
        let ferro = FerroIsingInstance::from_weighted_edges(
            6,
            vec![
                (0, 1, BigRational::from_u64(2).unwrap()),
                (3, 4, BigRational::from_u64(3).unwrap()),
                (4, 5, BigRational::from_u64(3).unwrap()),
            ],
            BigRational::one(),
        )
        .unwrap();
        let comps = ferro.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].m(), 2);
        assert_eq!(comps[1].m(), 3);
        // Z_0 factorizes over components (vertex 2 is isolated).
        let z: BigRational = comps
            .iter()
            .map(|c| exact_even_sum(c).unwrap())
            .product();
        assert_eq!(z, exact_even_sum(&ferro).unwrap());
    }
}

//! Circuit decomposition of a four-vertex instance and the derived circuit
//! graph: every trail pairs slots {1,4} and {2,3} inside a vertex and crosses
//! edges between partner darts, so dart values alternate along each circuit
//! and a configuration is determined by one bit per circuit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{Dart, DartConfig, FourVertexInstance, TooLarge};
use crate::rational::pow_rational;

/// A closed trail of darts. The dart at position 0 is the initial dart, and
/// the parity of a dart is its position modulo 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circuit {
    pub id: usize,
    pub darts: Vec<Dart>,
}

impl Circuit {
    pub fn initial_dart(&self) -> Dart {
        self.darts[0]
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// A partition of all darts into circuits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircuitDecomposition {
    circuits: Vec<Circuit>,
    /// Dart index -> (circuit id, position within the circuit).
    owner: Vec<(u32, u32)>,
}

impl CircuitDecomposition {
    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Number of circuits, `m`.
    pub fn num_circuits(&self) -> usize {
        self.circuits.len()
    }

    pub fn num_darts(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, d: Dart) -> usize {
        self.owner[d.index()].0 as usize
    }

    pub fn position(&self, d: Dart) -> usize {
        self.owner[d.index()].1 as usize
    }

    /// Position parity of a dart within its circuit; the initial dart has
    /// parity 0 and consecutive trail darts alternate.
    pub fn parity(&self, d: Dart) -> u8 {
        (self.owner[d.index()].1 & 1) as u8
    }

    /// Expands one bit per circuit into a full dart configuration: the dart
    /// value is the circuit bit XOR the dart parity.
    pub fn expand_assignment(&self, sigma: &[bool]) -> DartConfig {
        assert_eq!(sigma.len(), self.num_circuits());
        let mut values = vec![false; self.owner.len()];
        for (idx, &(cid, pos)) in self.owner.iter().enumerate() {
            values[idx] = sigma[cid as usize] ^ (pos & 1 == 1);
        }
        DartConfig::new(values)
    }
}

/// Per-pair interaction counts in the circuit graph.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct PairCounts {
    pub agree: usize,
    pub disagree: usize,
}

/// The circuit graph: one vertex per circuit, one weighted edge per pair of
/// circuits sharing at least one vertex of the instance, plus the constant
/// contributions of vertices visited twice by a single circuit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircuitGraph {
    m: usize,
    edges: BTreeMap<(usize, usize), PairCounts>,
    const_beta_exponent: usize,
    const_one_count: usize,
}

impl CircuitGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), PairCounts> {
        &self.edges
    }

    pub fn counts(&self, i: usize, j: usize) -> Option<PairCounts> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.get(&key).copied()
    }

    /// Number of single-circuit vertices whose constant weight is `beta`.
    pub fn const_beta_exponent(&self) -> usize {
        self.const_beta_exponent
    }

    /// Number of single-circuit vertices whose constant weight is 1.
    pub fn const_one_count(&self) -> usize {
        self.const_one_count
    }

    /// Applies initial-dart flips: for a pair whose circuits flip
    /// differently, agree- and disagree-counts swap. Constant fields are
    /// untouched.
    pub fn apply_flips(&self, flips: &[bool]) -> CircuitGraph {
        assert_eq!(flips.len(), self.m, "flips must cover all circuits");
        let edges = self
            .edges
            .iter()
            .map(|(&(i, j), &c)| {
                let swapped = flips[i] != flips[j];
                let counts = if swapped {
                    PairCounts {
                        agree: c.disagree,
                        disagree: c.agree,
                    }
                } else {
                    c
                };
                ((i, j), counts)
            })
            .collect();
        CircuitGraph {
            m: self.m,
            edges,
            const_beta_exponent: self.const_beta_exponent,
            const_one_count: self.const_one_count,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Error, Debug)]
#[error("decomposition does not belong to this instance")]
pub struct MismatchedDecomposition;

/// Deterministic circuit decomposition: tracing always starts from the
/// smallest unused dart, steps to the in-vertex paired slot, then crosses the
/// edge to the partner dart, and closes when it returns to the start.
pub fn decompose(instance: &FourVertexInstance) -> CircuitDecomposition {
    let nd = instance.num_darts();
    let mut owner = vec![(u32::MAX, u32::MAX); nd];
    let mut circuits = Vec::new();
    for start in 0..nd {
        if owner[start].0 != u32::MAX {
            continue;
        }
        let id = circuits.len();
        let mut darts = Vec::new();
        let mut cur = start;
        loop {
            owner[cur] = (id as u32, darts.len() as u32);
            darts.push(Dart::from_index(cur));
            let paired = Dart::from_index(cur).paired().index();
            owner[paired] = (id as u32, darts.len() as u32);
            darts.push(Dart::from_index(paired));
            cur = instance.partner_index(paired);
            if cur == start {
                break;
            }
        }
        circuits.push(Circuit { id, darts });
    }
    CircuitDecomposition { circuits, owner }
}

/// Classifies every instance vertex as an agree- or disagree-vertex between
/// the two circuits through it (or as a constant when a single circuit visits
/// it twice) and assembles the circuit graph.
///
/// A vertex whose slot-{1,4} pair lies in circuit `i` and slot-{2,3} pair in
/// circuit `j` is an agree-vertex exactly when the parities of its slot-1 and
/// slot-2 darts coincide: dart values are `sigma XOR parity`, and the vertex
/// weight is `beta` precisely when the slot-1 and slot-2 values agree.
pub fn classify(
    instance: &FourVertexInstance,
    decomposition: &CircuitDecomposition,
) -> Result<CircuitGraph, MismatchedDecomposition> {
    if decomposition.num_darts() != instance.num_darts() {
        return Err(MismatchedDecomposition);
    }
    let mut edges: BTreeMap<(usize, usize), PairCounts> = BTreeMap::new();
    let mut const_beta_exponent = 0;
    let mut const_one_count = 0;
    for v in 0..instance.n() {
        let x1 = Dart::new(v, 1);
        let x2 = Dart::new(v, 2);
        let i = decomposition.owner(x1);
        let j = decomposition.owner(x2);
        if decomposition.owner(Dart::new(v, 4)) != i
            || decomposition.owner(Dart::new(v, 3)) != j
        {
            return Err(MismatchedDecomposition);
        }
        let agree = decomposition.parity(x1) == decomposition.parity(x2);
        if i == j {
            if agree {
                const_beta_exponent += 1;
            } else {
                const_one_count += 1;
            }
        } else {
            let key = if i < j { (i, j) } else { (j, i) };
            let counts = edges.entry(key).or_default();
            if agree {
                counts.agree += 1;
            } else {
                counts.disagree += 1;
            }
        }
    }
    Ok(CircuitGraph {
        m: decomposition.num_circuits(),
        edges,
        const_beta_exponent,
        const_one_count,
    })
}

/// Exact partition function summed over the `2^m` circuit assignments;
/// cross-validates the decomposition against the brute-force oracle.
pub fn circuit_sum_partition(
    instance: &FourVertexInstance,
    decomposition: &CircuitDecomposition,
    cap_circuits: usize,
) -> Result<BigRational, TooLarge> {
    let m = decomposition.num_circuits();
    if m > cap_circuits {
        return Err(TooLarge {
            what: "circuits",
            size: m,
            cap: cap_circuits,
        });
    }
    // Per vertex, the weight is beta iff sigma_i == sigma_j matches the
    // parity agreement at the vertex; accumulate exponent histograms so the
    // rational arithmetic happens once per exponent, not per assignment.
    let mut vertex_terms = Vec::with_capacity(instance.n());
    for v in 0..instance.n() {
        let x1 = Dart::new(v, 1);
        let x2 = Dart::new(v, 2);
        vertex_terms.push((
            decomposition.owner(x1),
            decomposition.owner(x2),
            decomposition.parity(x1) == decomposition.parity(x2),
        ));
    }
    let mut hist = vec![0u64; instance.n() + 1];
    for sigma in 0u64..(1u64 << m) {
        let mut k = 0usize;
        for &(i, j, agree) in &vertex_terms {
            let same = (sigma >> i) & 1 == (sigma >> j) & 1;
            if same == agree {
                k += 1;
            }
        }
        hist[k] += 1;
    }
    let beta = instance.beta();
    let mut z = BigRational::zero();
    for (k, count) in hist.iter().enumerate() {
        if *count > 0 {
            z += pow_rational(&beta, k as i64) * BigRational::from(BigInt::from(*count));
        }
    }
    Ok(z * instance.constant_factor())
}

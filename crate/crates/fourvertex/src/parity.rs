//! GF(2) systems over circuit flips: one equation `X_i XOR X_j = b` per
//! circuit-graph edge, with `b` chosen so that applying a solution leaves
//! every pair ferromagnetic. Solved by union-find with parity; infeasibility
//! comes with an odd-cycle witness.

use num_rational::BigRational;
use num_traits::One;

use crate::circuits::CircuitGraph;

/// A single equation `X_i XOR X_j = rhs`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityConstraint {
    pub i: usize,
    pub j: usize,
    pub rhs: bool,
}

/// The full system over `num_vars` circuit variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParitySystem {
    pub num_vars: usize,
    pub constraints: Vec<ParityConstraint>,
}

/// A satisfying assignment, one bit per circuit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityAssignment {
    pub values: Vec<bool>,
}

/// A cycle of constraints whose right-hand sides XOR to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OddCycleWitness {
    pub constraints: Vec<ParityConstraint>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Satisfiable(ParityAssignment),
    Infeasible(OddCycleWitness),
}

impl SolveOutcome {
    pub fn assignment(&self) -> Option<&ParityAssignment> {
        match self {
            SolveOutcome::Satisfiable(a) => Some(a),
            SolveOutcome::Infeasible(_) => None,
        }
    }

    pub fn is_satisfiable(&self) -> bool {
        matches!(self, SolveOutcome::Satisfiable(_))
    }
}

/// Builds the flip system for the given weight: for `beta > 1` the right-hand
/// side is `A < D`, for `beta < 1` it is `A > D`, and `beta = 1` yields the
/// empty system. Ties contribute rhs 0 in both regimes.
pub fn build_system(graph: &CircuitGraph, beta: &BigRational) -> ParitySystem {
    let one = BigRational::one();
    let mut constraints = Vec::new();
    if beta != &one {
        let high = beta > &one;
        for (&(i, j), counts) in graph.edges() {
            let rhs = if high {
                counts.agree < counts.disagree
            } else {
                counts.agree > counts.disagree
            };
            constraints.push(ParityConstraint { i, j, rhs });
        }
    }
    ParitySystem {
        num_vars: graph.m(),
        constraints,
    }
}

/// Union-find with parity relative to the root.
struct ParityForest {
    parent: Vec<usize>,
    rank: Vec<u32>,
    /// Parity of the path from the node to its current parent.
    to_parent: Vec<bool>,
}

impl ParityForest {
    fn new(n: usize) -> Self {
        ParityForest {
            parent: (0..n).collect(),
            rank: vec![0; n],
            to_parent: vec![false; n],
        }
    }

    /// Returns (root, parity of path to root), with path compression.
    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, parity_up) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.to_parent[x] ^= parity_up;
        (root, self.to_parent[x])
    }

    /// Merges so that parity(i) XOR parity(j) == rhs. Returns false when the
    /// constraint contradicts the existing relation.
    fn union(&mut self, i: usize, j: usize, rhs: bool) -> Result<bool, ()> {
        let (ri, pi) = self.find(i);
        let (rj, pj) = self.find(j);
        if ri == rj {
            return if pi ^ pj == rhs { Ok(false) } else { Err(()) };
        }
        let (child, parent, parity) = if self.rank[ri] < self.rank[rj] {
            (ri, rj, pi ^ pj ^ rhs)
        } else {
            if self.rank[ri] == self.rank[rj] {
                self.rank[ri] += 1;
            }
            (rj, ri, pi ^ pj ^ rhs)
        };
        self.parent[child] = parent;
        self.to_parent[child] = parity;
        Ok(true)
    }
}

/// Solves the system. The canonical solution roots every connected component
/// of the constraint graph at its smallest variable and assigns that variable
/// 0; infeasibility returns the tree path between the offending endpoints
/// plus the closing constraint, which forms a cycle with odd rhs-sum.
pub fn solve(system: &ParitySystem) -> SolveOutcome {
    let n = system.num_vars;
    let mut forest = ParityForest::new(n);
    // Spanning-forest adjacency for witness extraction.
    let mut tree_adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for c in &system.constraints {
        match forest.union(c.i, c.j, c.rhs) {
            Ok(true) => {
                tree_adj[c.i].push((c.j, c.rhs));
                tree_adj[c.j].push((c.i, c.rhs));
            }
            Ok(false) => {}
            Err(()) => {
                let path = tree_path(&tree_adj, c.i, c.j);
                let mut constraints: Vec<ParityConstraint> = path
                    .windows(2)
                    .map(|w| {
                        let rhs = tree_adj[w[0]]
                            .iter()
                            .find(|(to, _)| *to == w[1])
                            .expect("tree edge")
                            .1;
                        ParityConstraint {
                            i: w[0],
                            j: w[1],
                            rhs,
                        }
                    })
                    .collect();
                constraints.push(*c);
                debug_assert!(
                    constraints.iter().fold(false, |acc, c| acc ^ c.rhs),
                    "witness cycle must have odd rhs-sum"
                );
                return SolveOutcome::Infeasible(OddCycleWitness { constraints });
            }
        }
    }
    // Canonical values: parity relative to the smallest variable of the
    // component.
    let mut min_parity: Vec<Option<bool>> = vec![None; n];
    let mut values = vec![false; n];
    for x in 0..n {
        let (root, parity) = forest.find(x);
        // Iterating in increasing x, the first visit to a root is by the
        // smallest component member.
        let base = *min_parity[root].get_or_insert(parity);
        values[x] = parity ^ base;
    }
    SolveOutcome::Satisfiable(ParityAssignment { values })
}

fn tree_path(adj: &[Vec<(usize, bool)>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, _) in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Checks an assignment against every constraint.
pub fn satisfies(system: &ParitySystem, assignment: &[bool]) -> bool {
    system
        .constraints
        .iter()
        .all(|c| assignment[c.i] ^ assignment[c.j] == c.rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{classify, decompose};
    use crate::generate::theta4;
    use crate::graph::Params;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn system(num_vars: usize, cons: &[(usize, usize, bool)]) -> ParitySystem {
        ParitySystem {
            num_vars,
            constraints: cons
                .iter()
                .map(|&(i, j, rhs)| ParityConstraint { i, j, rhs })
                .collect(),
        }
    }

    #[test]
    fn theta4_systems() {
        let inst = theta4(Params::beta(2));
        let graph = classify(&inst, &decompose(&inst)).unwrap();
        let sys = build_system(&graph, &BigRational::from(BigInt::from(2)));
        assert_eq!(
            sys.constraints,
            vec![ParityConstraint {
                i: 0,
                j: 1,
                rhs: false
            }]
        );
        let sys_low = build_system(&graph, &BigRational::new(1.into(), 2.into()));
        assert_eq!(
            sys_low.constraints,
            vec![ParityConstraint {
                i: 0,
                j: 1,
                rhs: true
            }]
        );
        let sys_one = build_system(&graph, &BigRational::one());
        assert!(sys_one.constraints.is_empty());
    }

    #[test]
    fn canonical_solutions() {
        let outcome = solve(&system(2, &[(0, 1, false)]));
        assert_eq!(
            outcome.assignment().unwrap().values,
            vec![false, false]
        );
        let outcome = solve(&system(3, &[(0, 1, true), (1, 2, false)]));
        assert_eq!(
            outcome.assignment().unwrap().values,
            vec![false, true, true]
        );
    }

    #[test]
    fn odd_triangle_is_infeasible_with_witness() {
        let sys = system(3, &[(0, 1, true), (1, 2, true), (0, 2, true)]);
        match solve(&sys) {
            SolveOutcome::Infeasible(w) => {
                assert_eq!(w.constraints.len(), 3);
                let parity = w.constraints.iter().fold(false, |acc, c| acc ^ c.rhs);
                assert!(parity);
            }
            SolveOutcome::Satisfiable(_) => panic!("triangle with odd sum must be infeasible"),
        }
    }

    #[test]
    fn complement_is_also_a_solution() {
        let sys = system(3, &[(0, 1, true), (1, 2, false)]);
        let a = match solve(&sys) {
            SolveOutcome::Satisfiable(a) => a.values,
            _ => panic!(),
        };
        assert!(satisfies(&sys, &a));
        let complement: Vec<bool> = a.iter().map(|b| !b).collect();
        assert!(satisfies(&sys, &complement));
        // Canonical solution has value 0 at each component's smallest var.
        assert!(!a[0]);
    }

    fn exhaustive_feasible(sys: &ParitySystem) -> bool {
        assert!(sys.num_vars <= 20);
        (0u64..(1 << sys.num_vars)).any(|mask| {
            sys.constraints
                .iter()
                .all(|c| ((mask >> c.i) ^ (mask >> c.j)) & 1 == c.rhs as u64)
        })
    }

    proptest! {
        #[test]
        fn solver_agrees_with_exhaustive_search(
            num_vars in 1usize..10,
            raw in proptest::collection::vec((0usize..10, 0usize..10, any::<bool>()), 0..20)
        ) {
            let cons: Vec<(usize, usize, bool)> = raw
                .into_iter()
                .filter(|(i, j, _)| *i != *j)
                .map(|(i, j, rhs)| (i % num_vars.max(2), j % num_vars.max(2), rhs))
                .filter(|(i, j, _)| i != j)
                .collect();
            let max_var = cons.iter().map(|&(i, j, _)| i.max(j) + 1).max().unwrap_or(0);
            let sys = system(num_vars.max(max_var), &cons);
            match solve(&sys) {
                SolveOutcome::Satisfiable(a) => {
                    prop_assert!(satisfies(&sys, &a.values));
                    prop_assert!(exhaustive_feasible(&sys));
                }
                SolveOutcome::Infeasible(w) => {
                    prop_assert!(!exhaustive_feasible(&sys));
                    let parity = w.constraints.iter().fold(false, |acc, c| acc ^ c.rhs);
                    prop_assert!(parity, "witness cycle must be odd");
                    // The witness must be a closed walk in the constraint graph.
                    for c in &w.constraints {
                        prop_assert!(sys.constraints.iter().any(|s|
                            (s.i == c.i && s.j == c.j || s.i == c.j && s.j == c.i) && s.rhs == c.rhs));
                    }
                }
            }
        }
    }
}

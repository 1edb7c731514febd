//! The planar path: trace faces from the rotation system, 2-color them with
//! a white outer face, rewrite slot labels canonically so circuits follow
//! black-face boundaries, and reduce to an Ising model on the black-face
//! graph (one vertex per black face, one edge per instance vertex).
//!
//! Face traversal convention: the next dart on a face is the rotation
//! successor of the current dart's edge partner. The corner between
//! consecutive rotation positions `p` and `p+1` at a vertex belongs to the
//! face containing the position-`p+1` dart.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::even_subgraph::{FerroIsingInstance, ReduceError};
use crate::estimator::{estimate_partition, Estimate, EstimateError, EstimatorConfig};
use crate::graph::{Dart, EdgeSpec, FourVertexInstance, TooLarge};
use crate::rational::pow_rational;

/// Default cap on the number of black faces for the exact spin sum.
pub const DEFAULT_SPIN_CAP: usize = 20;

#[derive(Clone, PartialEq, Error, Debug)]
pub enum PlanarError {
    #[error("instance has no rotation system")]
    MissingRotation,
    #[error("instance has no outer-face hint")]
    MissingOuterFace,
    #[error("rotation system is not a plane embedding (V - E + F = {euler}, expected 2)")]
    NotPlanarEmbedding { euler: i64 },
    #[error("face-adjacency graph is not bipartite; this indicates an internal bug")]
    NonBipartiteDual,
    #[error("planar mixing bound requires beta_min > 1")]
    BetaAtMostOne,
    #[error("black-face graph has no collapsed edges")]
    NoInteriorEdges,
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("estimation failed: {0}")]
    Estimate(String),
}

/// Faces as dart cycles with the outer face singled out.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceSet {
    faces: Vec<Vec<Dart>>,
    outer: usize,
    dart_face: Vec<usize>,
}

impl FaceSet {
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FaceColor {
    Black,
    White,
}

/// A proper 2-coloring of the faces with the outer face white.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceColoring {
    pub colors: Vec<FaceColor>,
}

impl FaceColoring {
    pub fn is_black(&self, face: usize) -> bool {
        self.colors[face] == FaceColor::Black
    }

    /// The same coloring with classes exchanged (the outer face turns
    /// black); useful for invariance tests.
    pub fn swapped(&self) -> FaceColoring {
        FaceColoring {
            colors: self
                .colors
                .iter()
                .map(|c| match c {
                    FaceColor::Black => FaceColor::White,
                    FaceColor::White => FaceColor::Black,
                })
                .collect(),
        }
    }
}

/// The black-face graph H: one vertex per black face, one edge per instance
/// vertex joining its two incident black faces, with parallel edges
/// collapsed into a single edge of weight `beta^multiplicity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlackFaceGraph {
    k: usize,
    /// Per instance vertex, its two incident black faces (black indices).
    vertex_faces: Vec<(usize, usize)>,
    /// Collapsed edge multiplicities, keyed by black-index pairs u < v.
    edges: BTreeMap<(usize, usize), usize>,
    self_loops: usize,
}

impl BlackFaceGraph {
    /// Number of black faces.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_faces(&self) -> &[(usize, usize)] {
        &self.vertex_faces
    }

    pub fn multiplicities(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.edges
    }

    pub fn self_loops(&self) -> usize {
        self.self_loops
    }

    /// Total edge count with multiplicity, excluding self-loops.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// Collapsed edges with weights `beta_e = beta^multiplicity`.
    pub fn collapsed_edges(&self, beta: &BigRational) -> Vec<(usize, usize, BigRational)> {
        self.edges
            .iter()
            .map(|(&(u, v), &mult)| (u, v, pow_rational(beta, mult as i64)))
            .collect()
    }
}

fn rotation_successor(rotation: &[[u8; 4]], d: Dart) -> Dart {
    let order = &rotation[d.vertex];
    let pos = order.iter().position(|&s| s == d.slot).expect("slot in rotation");
    Dart::new(d.vertex, order[(pos + 1) % 4])
}

/// Face orbits of the embedding without the outer-face bookkeeping.
pub fn face_orbits(
    instance: &FourVertexInstance,
) -> Result<(Vec<Vec<Dart>>, Vec<usize>), PlanarError> {
    let rotation = instance.rotation().ok_or(PlanarError::MissingRotation)?;
    let nd = instance.num_darts();
    let mut dart_face = vec![usize::MAX; nd];
    let mut faces = Vec::new();
    for start in 0..nd {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut cycle = Vec::new();
        let mut cur = Dart::from_index(start);
        loop {
            dart_face[cur.index()] = id;
            cycle.push(cur);
            cur = rotation_successor(rotation, instance.partner(cur));
            if cur.index() == start {
                break;
            }
        }
        faces.push(cycle);
    }
    Ok((faces, dart_face))
}

/// Traces all faces, checks the Euler characteristic, and locates the outer
/// face from the instance's hint.
pub fn trace_faces(instance: &FourVertexInstance) -> Result<FaceSet, PlanarError> {
    let (faces, dart_face) = face_orbits(instance)?;
    let euler = instance.n() as i64 - 2 * instance.n() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(PlanarError::NotPlanarEmbedding { euler });
    }
    let hint = instance
        .outer_face_hint()
        .ok_or(PlanarError::MissingOuterFace)?;
    let outer = dart_face[hint.index()];
    Ok(FaceSet {
        faces,
        outer,
        dart_face,
    })
}

/// Proper 2-coloring of the face-adjacency graph by breadth-first search
/// from the outer face, which is colored white.
pub fn two_color_faces(
    instance: &FourVertexInstance,
    faces: &FaceSet,
) -> Result<FaceColoring, PlanarError> {
    let mut colors: Vec<Option<FaceColor>> = vec![None; faces.num_faces()];
    colors[faces.outer()] = Some(FaceColor::White);
    let mut queue = std::collections::VecDeque::from([faces.outer()]);
    while let Some(f) = queue.pop_front() {
        let my_color = colors[f].unwrap();
        let next = match my_color {
            FaceColor::Black => FaceColor::White,
            FaceColor::White => FaceColor::Black,
        };
        for &d in &faces.faces()[f] {
            let g = faces.face_of(instance.partner(d));
            match colors[g] {
                None => {
                    colors[g] = Some(next);
                    queue.push_back(g);
                }
                Some(c) if c == my_color => return Err(PlanarError::NonBipartiteDual),
                Some(_) => {}
            }
        }
    }
    // Connected instances reach every face; a disconnected embedding already
    // failed the Euler check.
    let colors: Vec<FaceColor> = colors
        .into_iter()
        .map(|c| c.ok_or(PlanarError::NonBipartiteDual))
        .collect::<Result<_, _>>()?;
    // Final properness check over every edge.
    for v in 0..instance.n() {
        for s in 1..=4 {
            let d = Dart::new(v, s);
            if colors[faces.face_of(d)] == colors[faces.face_of(instance.partner(d))] {
                return Err(PlanarError::NonBipartiteDual);
            }
        }
    }
    Ok(FaceColoring { colors })
}

/// The face occupying the corner between rotation positions `p` and `p+1`
/// at vertex `v`.
fn corner_face(
    instance: &FourVertexInstance,
    faces: &FaceSet,
    v: usize,
    p: usize,
) -> usize {
    let rotation = instance.rotation().expect("rotation present");
    let next = rotation[v][(p + 1) % 4];
    faces.face_of(Dart::new(v, next))
}

/// Positions of the two black corners at a vertex: `p*` (the smallest
/// rotation position whose corner is black) and `p* + 2`.
fn black_corner_position(
    instance: &FourVertexInstance,
    faces: &FaceSet,
    coloring: &FaceColoring,
    v: usize,
) -> usize {
    for p in 0..2 {
        if coloring.is_black(corner_face(instance, faces, v, p)) {
            return p;
        }
    }
    // Corners alternate black/white around a vertex, so one of positions
    // 0 and 1 is black.
    unreachable!("no black corner at vertex {}", v)
}

/// Rewrites every vertex's slot labels so that, reading the rotation from
/// the first black corner as `d1, d2, d3, d4`, the slots become
/// `d1 -> 1, d2 -> 4, d3 -> 2, d4 -> 3`. The output's circuits follow
/// black-face boundaries, and its high-weight flip system is feasible.
pub fn canonical_label(
    instance: &FourVertexInstance,
    faces: &FaceSet,
    coloring: &FaceColoring,
) -> FourVertexInstance {
    let rotation = instance.rotation().expect("rotation present");
    let n = instance.n();
    // Per vertex: old slot -> new slot.
    let mut rename = vec![[0u8; 5]; n];
    for v in 0..n {
        let p_star = black_corner_position(instance, faces, coloring, v);
        let new_slots = [1u8, 4, 2, 3];
        for (offset, &new_slot) in new_slots.iter().enumerate() {
            let old = rotation[v][(p_star + offset) % 4];
            rename[v][old as usize] = new_slot;
        }
    }
    let edges = instance
        .edges()
        .iter()
        .map(|e| {
            EdgeSpec::new(
                Dart::new(e.first.vertex, rename[e.first.vertex][e.first.slot as usize]),
                Dart::new(
                    e.second.vertex,
                    rename[e.second.vertex][e.second.slot as usize],
                ),
            )
        })
        .collect();
    let new_rotation = rotation
        .iter()
        .enumerate()
        .map(|(v, order)| {
            let mut out = [0u8; 4];
            for (p, &s) in order.iter().enumerate() {
                out[p] = rename[v][s as usize];
            }
            out
        })
        .collect();
    let outer = instance
        .outer_face_hint()
        .map(|d| Dart::new(d.vertex, rename[d.vertex][d.slot as usize]));
    FourVertexInstance::new(
        n,
        edges,
        instance.params().clone(),
        Some(new_rotation),
        outer,
    )
    .expect("relabeling preserves validity")
}

/// Builds the black-face graph: per instance vertex, an edge joining its two
/// incident black faces (a self-loop when they coincide).
pub fn build_black_face_graph(
    instance: &FourVertexInstance,
    faces: &FaceSet,
    coloring: &FaceColoring,
) -> BlackFaceGraph {
    let mut black_index = vec![usize::MAX; faces.num_faces()];
    let mut k = 0;
    for f in 0..faces.num_faces() {
        if coloring.is_black(f) {
            black_index[f] = k;
            k += 1;
        }
    }
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut self_loops = 0;
    let mut vertex_faces = Vec::with_capacity(instance.n());
    for v in 0..instance.n() {
        let p_star = black_corner_position(instance, faces, coloring, v);
        let f1 = black_index[corner_face(instance, faces, v, p_star)];
        let f2 = black_index[corner_face(instance, faces, v, p_star + 2)];
        debug_assert!(f1 != usize::MAX && f2 != usize::MAX);
        if f1 == f2 {
            self_loops += 1;
        } else {
            *edges.entry((f1.min(f2), f1.max(f2))).or_insert(0) += 1;
        }
        vertex_faces.push((f1.min(f2), f1.max(f2)));
    }
    BlackFaceGraph {
        k,
        vertex_faces,
        edges,
        self_loops,
    }
}

/// Exact spin-sum over black faces:
/// `c^n * beta^self_loops * sum_sigma prod beta_e^{I(sigma_u = sigma_v)}`.
///
/// This is the partition function of the canonically labeled instance; it
/// agrees with the input's partition function exactly when the input already
/// carries canonical labels.
pub fn black_face_spin_sum(
    instance: &FourVertexInstance,
    bfg: &BlackFaceGraph,
    cap: usize,
) -> Result<BigRational, TooLarge> {
    if bfg.k() > cap.min(62) {
        return Err(TooLarge {
            what: "black faces",
            size: bfg.k(),
            cap,
        });
    }
    let beta = instance.beta();
    let collapsed: Vec<(usize, usize, usize)> = bfg
        .edges
        .iter()
        .map(|(&(u, v), &mult)| (u, v, mult))
        .collect();
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    for sigma in 0u64..(1 << bfg.k()) {
        let mut exponent = 0usize;
        for &(u, v, mult) in &collapsed {
            if (sigma >> u) & 1 == (sigma >> v) & 1 {
                exponent += mult;
            }
        }
        *hist.entry(exponent).or_insert(0) += 1;
    }
    let mut z = BigRational::zero();
    for (exponent, count) in hist {
        z += pow_rational(&beta, exponent as i64) * BigRational::from(BigInt::from(count));
    }
    Ok(z * pow_rational(&beta, bfg.self_loops() as i64) * instance.constant_factor())
}

/// The black-face Ising instance for the estimated path (`beta > 1` only,
/// since collapsed weights are `beta^multiplicity`).
pub fn black_face_ferro(
    instance: &FourVertexInstance,
    bfg: &BlackFaceGraph,
) -> Result<FerroIsingInstance, ReduceError> {
    let beta = instance.beta();
    let prefactor =
        instance.constant_factor() * pow_rational(&beta, bfg.self_loops() as i64);
    FerroIsingInstance::from_weighted_edges(bfg.k(), bfg.collapsed_edges(&beta), prefactor)
}

pub enum PlanarZ {
    Exact(BigRational),
    Estimated(Estimate),
}

#[derive(Clone, Debug)]
pub struct PlanarOptions {
    /// Maximum black-face count for the exact spin sum.
    pub exact_cap: usize,
    /// Estimator settings for instances beyond the cap.
    pub estimator: Option<EstimatorConfig>,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        PlanarOptions {
            exact_cap: DEFAULT_SPIN_CAP,
            estimator: None,
        }
    }
}

/// Partition function through the planar reduction. Exact (spin sum over
/// black faces) when `k` is within the cap; otherwise the canonically
/// relabeled instance is handed to the general estimator pipeline, which
/// reduces to the same Ising model on the black-face graph.
pub fn planar_partition(
    instance: &FourVertexInstance,
    options: &PlanarOptions,
) -> Result<PlanarZ, PlanarError> {
    let faces = trace_faces(instance)?;
    let coloring = two_color_faces(instance, &faces)?;
    let bfg = build_black_face_graph(instance, &faces, &coloring);
    if bfg.k() <= options.exact_cap {
        let z = black_face_spin_sum(instance, &bfg, options.exact_cap)?;
        return Ok(PlanarZ::Exact(z));
    }
    let config = options
        .estimator
        .clone()
        .ok_or(PlanarError::TooLarge(TooLarge {
            what: "black faces",
            size: bfg.k(),
            cap: options.exact_cap,
        }))?;
    let canonical = canonical_label(instance, &faces, &coloring);
    match estimate_partition(&canonical, &config) {
        Ok(est) => Ok(PlanarZ::Estimated(est)),
        Err(EstimateError::TooLarge(t)) => Err(PlanarError::TooLarge(t)),
        Err(e) => Err(PlanarError::Estimate(e.to_string())),
    }
}

/// The planar mixing-time bound
/// `4 n^7 (ln(2/eps)/n + ln((beta_min+1) / (2 (beta_min - 1))))` with `n` the
/// instance vertex count and `beta_min` the minimum collapsed edge weight.
pub fn planar_mixing_bound(
    instance: &FourVertexInstance,
    eps: f64,
) -> Result<f64, PlanarError> {
    assert!(eps > 0.0 && eps < 1.0, "eps must be in (0,1)");
    let faces = trace_faces(instance)?;
    let coloring = two_color_faces(instance, &faces)?;
    let bfg = build_black_face_graph(instance, &faces, &coloring);
    let beta = instance.beta();
    let beta_min = bfg
        .collapsed_edges(&beta)
        .into_iter()
        .map(|(_, _, b)| b)
        .min()
        .ok_or(PlanarError::NoInteriorEdges)?;
    if beta_min <= BigRational::one() {
        return Err(PlanarError::BetaAtMostOne);
    }
    let bm = beta_min.to_f64().expect("beta_min fits in f64");
    let n = instance.n() as f64;
    Ok(4.0 * n.powi(7) * ((2.0 / eps).ln() / n + ((bm + 1.0) / (2.0 * (bm - 1.0))).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{circuit_sum_partition, classify, decompose};
    use crate::generate::{double_loop_nested, double_loop_side_by_side, theta4};
    use crate::graph::Params;
    use crate::parity::{build_system, solve};
    use num_traits::FromPrimitive;

    #[test]
    fn theta4_faces_are_bigons() {
        let inst = theta4(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        assert_eq!(faces.num_faces(), 4);
        for f in faces.faces() {
            assert_eq!(f.len(), 2);
        }
        // Outer face holds dart 0.1.
        assert_eq!(faces.face_of(Dart::new(0, 1)), faces.outer());
    }

    #[test]
    fn toroidal_rotation_is_rejected() {
        let inst = theta4(Params::beta(2));
        let mut rot = inst.rotation().unwrap().to_vec();
        rot[1] = [1, 2, 3, 4];
        let twisted = FourVertexInstance::new(
            inst.n(),
            inst.edges().to_vec(),
            inst.params().clone(),
            Some(rot),
            inst.outer_face_hint(),
        )
        .unwrap();
        match trace_faces(&twisted) {
            Err(PlanarError::NotPlanarEmbedding { euler }) => assert_eq!(euler, 0),
            other => panic!("expected embedding failure, got {:?}", other.map(|f| f.num_faces())),
        }
    }

    #[test]
    fn theta4_coloring_alternates() {
        let inst = theta4(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        let coloring = two_color_faces(&inst, &faces).unwrap();
        assert_eq!(coloring.colors[faces.outer()], FaceColor::White);
        let blacks = coloring
            .colors
            .iter()
            .filter(|c| **c == FaceColor::Black)
            .count();
        assert_eq!(blacks, 2);
    }

    #[test]
    fn theta4_black_face_graph_collapses() {
        let inst = theta4(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        let coloring = two_color_faces(&inst, &faces).unwrap();
        let bfg = build_black_face_graph(&inst, &faces, &coloring);
        assert_eq!(bfg.k(), 2);
        assert_eq!(bfg.self_loops(), 0);
        assert_eq!(bfg.edge_count(), 2);
        assert_eq!(bfg.multiplicities().len(), 1);
        let beta = BigRational::from_u64(2).unwrap();
        let collapsed = bfg.collapsed_edges(&beta);
        assert_eq!(collapsed[0].2, BigRational::from_u64(4).unwrap());
        // |E(H)| + self-loops = n and k <= n.
        assert_eq!(bfg.edge_count() + bfg.self_loops(), inst.n());
    }

    #[test]
    fn theta4_spin_sum_matches_oracle() {
        let inst = theta4(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        let coloring = two_color_faces(&inst, &faces).unwrap();
        let bfg = build_black_face_graph(&inst, &faces, &coloring);
        let z = black_face_spin_sum(&inst, &bfg, 20).unwrap();
        assert_eq!(z, BigRational::from_u64(10).unwrap());
        assert_eq!(z, inst.brute_force_partition().unwrap());
    }

    #[test]
    fn canonical_label_makes_black_circuits() {
        let inst = theta4(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        let coloring = two_color_faces(&inst, &faces).unwrap();
        let canon = canonical_label(&inst, &faces, &coloring);
        // Two circuits, each the edge set of one black bigon.
        let dec = decompose(&canon);
        assert_eq!(dec.num_circuits(), 2);
        let canon_faces = trace_faces(&canon).unwrap();
        let canon_coloring = two_color_faces(&canon, &canon_faces).unwrap();
        let mut black_edge_sets: Vec<std::collections::BTreeSet<usize>> = Vec::new();
        for (f, cycle) in canon_faces.faces().iter().enumerate() {
            if canon_coloring.is_black(f) {
                let edges: std::collections::BTreeSet<usize> = cycle
                    .iter()
                    .map(|&d| {
                        canon
                            .edges()
                            .iter()
                            .position(|e| e.first == d || e.second == d)
                            .unwrap()
                    })
                    .collect();
                black_edge_sets.push(edges);
            }
        }
        for c in dec.circuits() {
            let edges: std::collections::BTreeSet<usize> = c
                .darts
                .iter()
                .map(|&d| {
                    canon
                        .edges()
                        .iter()
                        .position(|e| e.first == d || e.second == d)
                        .unwrap()
                })
                .collect();
            assert!(black_edge_sets.contains(&edges));
        }
        // The canonical instance is agreement-pure with a feasible
        // high-weight flip system.
        let graph = classify(&canon, &dec).unwrap();
        for counts in graph.edges().values() {
            assert_eq!(counts.agree.min(counts.disagree), 0);
        }
        let sys = build_system(&graph, &canon.beta());
        assert!(solve(&sys).is_satisfiable());
    }

    #[test]
    fn canonical_label_is_idempotent() {
        for inst in [
            theta4(Params::beta(2)),
            double_loop_side_by_side(Params::beta(2)),
            double_loop_nested(Params::beta(2)),
        ] {
            let faces = trace_faces(&inst).unwrap();
            let coloring = two_color_faces(&inst, &faces).unwrap();
            let once = canonical_label(&inst, &faces, &coloring);
            let faces2 = trace_faces(&once).unwrap();
            let coloring2 = two_color_faces(&once, &faces2).unwrap();
            let twice = canonical_label(&once, &faces2, &coloring2);
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn octahedron_black_face_graph_is_k4() {
        let oct = crate::generate::octahedron(Params::beta(2));
        let faces = trace_faces(&oct).unwrap();
        let coloring = two_color_faces(&oct, &faces).unwrap();
        let bfg = build_black_face_graph(&oct, &faces, &coloring);
        assert_eq!(bfg.k(), 4);
        assert_eq!(bfg.self_loops(), 0);
        assert_eq!(bfg.multiplicities().len(), 6);
        assert!(bfg.multiplicities().values().all(|&m| m == 1));
        // 2 beta^6 + 8 beta^3 + 6 beta^2 = 216 at beta = 2.
        let z = black_face_spin_sum(&oct, &bfg, 20).unwrap();
        assert_eq!(z, BigRational::from_u64(216).unwrap());
        assert_eq!(z, oct.brute_force_partition().unwrap());
    }

    #[test]
    fn nested_loops_give_a_self_loop() {
        let inst = double_loop_nested(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        let coloring = two_color_faces(&inst, &faces).unwrap();
        let bfg = build_black_face_graph(&inst, &faces, &coloring);
        assert_eq!(bfg.k(), 1);
        assert_eq!(bfg.self_loops(), 1);
        assert_eq!(bfg.edge_count(), 0);
        // Z of the canonical labeling: 2 * beta.
        let z = black_face_spin_sum(&inst, &bfg, 20).unwrap();
        assert_eq!(z, BigRational::from_u64(4).unwrap());
        let canon = canonical_label(&inst, &faces, &coloring);
        assert_eq!(z, canon.brute_force_partition().unwrap());
    }

    #[test]
    fn side_by_side_loops_have_two_black_faces() {
        let inst = double_loop_side_by_side(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        assert_eq!(faces.num_faces(), 3);
        let coloring = two_color_faces(&inst, &faces).unwrap();
        let bfg = build_black_face_graph(&inst, &faces, &coloring);
        assert_eq!((bfg.k(), bfg.self_loops(), bfg.edge_count()), (2, 0, 1));
        // Z of the canonical labeling: 2 beta + 2 = 6.
        let z = black_face_spin_sum(&inst, &bfg, 20).unwrap();
        assert_eq!(z, BigRational::from_u64(6).unwrap());
        let canon = canonical_label(&inst, &faces, &coloring);
        assert_eq!(z, canon.brute_force_partition().unwrap());
    }

    #[test]
    fn planar_partition_agrees_with_general_pipeline() {
        for params in [Params::beta(2), Params::beta_ratio(1, 2), Params::beta(1)] {
            let inst = theta4(params);
            let faces = trace_faces(&inst).unwrap();
            let coloring = two_color_faces(&inst, &faces).unwrap();
            let canon = canonical_label(&inst, &faces, &coloring);
            let z_planar = match planar_partition(&inst, &PlanarOptions::default()).unwrap() {
                PlanarZ::Exact(z) => z,
                PlanarZ::Estimated(_) => panic!("expected exact"),
            };
            let oracle = canon.brute_force_partition().unwrap();
            assert_eq!(z_planar, oracle);
            let dec = decompose(&canon);
            assert_eq!(
                circuit_sum_partition(&canon, &dec, 24).unwrap(),
                oracle
            );
        }
    }

    #[test]
    fn swapped_coloring_changes_nothing_end_to_end() {
        let inst = theta4(Params::beta(2));
        let faces = trace_faces(&inst).unwrap();
        let coloring = two_color_faces(&inst, &faces).unwrap();
        let swapped = coloring.swapped();
        let canon_a = canonical_label(&inst, &faces, &coloring);
        let canon_b = canonical_label(&inst, &faces, &swapped);
        assert_eq!(
            canon_a.brute_force_partition().unwrap(),
            canon_b.brute_force_partition().unwrap()
        );
    }

    #[test]
    fn planar_bound_value_and_monotonicity() {
        let inst = theta4(Params::beta(2));
        // beta_min = 4, n = 2: 512 * (ln(20)/2 + ln(5/6)) = 673.5588...
        let bound = planar_mixing_bound(&inst, 0.1).unwrap();
        let hand = 512.0 * (20.0f64.ln() / 2.0 + (5.0f64 / 6.0).ln());
        assert!((bound - hand).abs() < 1e-9 * hand);
        assert!((bound - 673.558_825_142_306_5).abs() < 1e-6 * bound);
        assert!(planar_mixing_bound(&inst, 0.2).unwrap() < bound);
        let hotter = theta4(Params::beta(3));
        // Larger beta_min shrinks the log term.
        let b3 = planar_mixing_bound(&hotter, 0.1).unwrap();
        assert!(b3 < bound);
        let cold = theta4(Params::beta_ratio(1, 2));
        assert_eq!(
            planar_mixing_bound(&cold, 0.1),
            Err(PlanarError::BetaAtMostOne)
        );
    }
}

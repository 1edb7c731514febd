//! Fixtures and random instance generators used by tests, examples, and the
//! verification tooling: the theta-4 multigraph, self-loop gadgets, random
//! connected 4-regular multigraphs, and planar 4-regular instances produced
//! as medial graphs of randomly grown plane multigraphs.

use rand::Rng;

use crate::graph::{Dart, EdgeSpec, FourVertexInstance, Params};
use crate::planar::{canonical_label, face_orbits, trace_faces, two_color_faces};

/// Two vertices joined by four parallel edges, slot `i` to slot `i`, with the
/// standard planar rotation (`u` counterclockwise 1,2,3,4; `v` mirrored) and
/// the outer face at dart `0.1`.
pub fn theta4(params: Params) -> FourVertexInstance {
    let edges = (1..=4)
        .map(|s| EdgeSpec::new(Dart::new(0, s), Dart::new(1, s)))
        .collect();
    FourVertexInstance::new(
        2,
        edges,
        params,
        Some(vec![[1, 2, 3, 4], [1, 4, 3, 2]]),
        Some(Dart::new(0, 1)),
    )
    .expect("theta4 fixture is valid")
}

/// Theta-4 with slots 2<->3 swapped at vertex 1 only, which mixes the slot
/// pairs: its two circuits share one agree-vertex and one disagree-vertex.
/// (Swapping 1<->2 and 3<->4 instead would exchange the pair groups wholesale
/// and leave the classification at A=2, D=0.)
pub fn theta4_slot_swapped(params: Params) -> FourVertexInstance {
    let swap = |s: u8| match s {
        2 => 3,
        3 => 2,
        s => s,
    };
    let edges = (1..=4)
        .map(|s| EdgeSpec::new(Dart::new(0, s), Dart::new(1, swap(s))))
        .collect();
    FourVertexInstance::new(2, edges, params, None, None).expect("valid fixture")
}

/// One vertex carrying two self-loops, loop A on slots (1,2) and loop B on
/// slots (3,4), embedded side by side.
pub fn double_loop_side_by_side(params: Params) -> FourVertexInstance {
    let edges = vec![
        EdgeSpec::new(Dart::new(0, 1), Dart::new(0, 2)),
        EdgeSpec::new(Dart::new(0, 3), Dart::new(0, 4)),
    ];
    FourVertexInstance::new(
        1,
        edges,
        params,
        Some(vec![[1, 2, 3, 4]]),
        Some(Dart::new(0, 1)),
    )
    .expect("valid fixture")
}

/// One vertex carrying two nested self-loops, loop A on slots (1,4) and loop
/// B on slots (2,3). Its black-face graph is a single vertex with one
/// self-loop.
pub fn double_loop_nested(params: Params) -> FourVertexInstance {
    let edges = vec![
        EdgeSpec::new(Dart::new(0, 1), Dart::new(0, 4)),
        EdgeSpec::new(Dart::new(0, 2), Dart::new(0, 3)),
    ];
    FourVertexInstance::new(
        1,
        edges,
        params,
        Some(vec![[1, 2, 3, 4]]),
        Some(Dart::new(0, 1)),
    )
    .expect("valid fixture")
}

/// Four vertices in a cycle with doubled edges: at each vertex, slots {1,4}
/// attach to the left neighbor and {2,3} to the right.
pub fn doubled_four_cycle(params: Params) -> FourVertexInstance {
    let n = 4;
    let mut edges = Vec::new();
    for v in 0..n {
        let right = (v + 1) % n;
        // v's slots 2,3 meet right's slots 1,4.
        edges.push(EdgeSpec::new(Dart::new(v, 2), Dart::new(right, 1)));
        edges.push(EdgeSpec::new(Dart::new(v, 3), Dart::new(right, 4)));
    }
    FourVertexInstance::new(n, edges, params, None, None).expect("valid fixture")
}

/// A doubled triangle wired so that its three circuits form an odd cycle for
/// the high-weight flip system: at each vertex slots {1,4} face one neighbor
/// and {2,3} the other, every doubled edge is one circuit, and the traced
/// parities give agreement counts (A, D) of (1,0), (0,1), (1,0) around the
/// triangle, so `X_u XOR X_v = I(A < D)` has odd cycle sum. The system with
/// `beta > 1` is infeasible for this instance.
pub fn odd_disagree_cycle(params: Params) -> FourVertexInstance {
    let mut edges = Vec::new();
    for v in 0..3 {
        let w = (v + 1) % 3;
        edges.push(EdgeSpec::new(Dart::new(v, 2), Dart::new(w, 1)));
        edges.push(EdgeSpec::new(Dart::new(v, 3), Dart::new(w, 4)));
    }
    FourVertexInstance::new(3, edges, params, None, None).expect("valid fixture")
}

/// A random connected 4-regular multigraph on `n` vertices via a uniform
/// random pairing of the `4n` darts, retried until connected.
pub fn random_four_regular(
    n: usize,
    params: Params,
    rng: &mut impl Rng,
) -> FourVertexInstance {
    assert!(n >= 1);
    loop {
        let mut darts: Vec<usize> = (0..4 * n).collect();
        // Fisher-Yates based pairing.
        for i in (1..darts.len()).rev() {
            let j = rng.gen_range(0..=i);
            darts.swap(i, j);
        }
        let edges: Vec<EdgeSpec> = darts
            .chunks(2)
            .map(|pair| {
                EdgeSpec::new(Dart::from_index(pair[0]), Dart::from_index(pair[1]))
            })
            .collect();
        let instance = FourVertexInstance::new(n, edges, params.clone(), None, None)
            .expect("pairing covers all darts");
        if is_connected(&instance) {
            return instance;
        }
    }
}

fn is_connected(instance: &FourVertexInstance) -> bool {
    let n = instance.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for s in 1..=4 {
            let w = instance.partner(Dart::new(v, s)).vertex;
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// A connected plane multigraph of arbitrary degrees, kept embedded through
/// every growth operation. Used as the scaffold `H` from which planar
/// 4-regular instances are produced as medial graphs.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    /// Counterclockwise dart order per vertex.
    rotation: Vec<Vec<usize>>,
    partner: Vec<usize>,
    dart_vertex: Vec<usize>,
}

impl PlaneGraph {
    /// Two vertices joined by one edge.
    pub fn single_edge() -> PlaneGraph {
        PlaneGraph {
            rotation: vec![vec![0], vec![1]],
            partner: vec![1, 0],
            dart_vertex: vec![0, 1],
        }
    }

    /// One vertex with one self-loop.
    pub fn loop_vertex() -> PlaneGraph {
        PlaneGraph {
            rotation: vec![vec![0, 1]],
            partner: vec![1, 0],
            dart_vertex: vec![0, 0],
        }
    }

    /// A plane tetrahedron: outer triangle 0, 1, 2 with vertex 3 inside.
    /// Dart layout: edge 0-1 carries darts 0, 1; 1-2 darts 2, 3; 2-0 darts
    /// 4, 5; 0-3 darts 6, 7; 1-3 darts 8, 9; 2-3 darts 10, 11. The rotations
    /// below give the four triangular faces (0,2,4), (6,9,1), (8,11,3),
    /// (10,7,5).
    pub fn tetrahedron() -> PlaneGraph {
        let g = PlaneGraph {
            rotation: vec![
                vec![0, 6, 5],
                vec![2, 8, 1],
                vec![4, 10, 3],
                vec![11, 7, 9],
            ],
            partner: vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10],
            dart_vertex: vec![0, 1, 1, 2, 2, 0, 0, 3, 1, 3, 2, 3],
        };
        g.assert_planar();
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    fn position(&self, d: usize) -> usize {
        self.rotation[self.dart_vertex[d]]
            .iter()
            .position(|&x| x == d)
            .expect("dart in rotation")
    }

    fn rot_succ(&self, d: usize) -> usize {
        let v = self.dart_vertex[d];
        let order = &self.rotation[v];
        order[(self.position(d) + 1) % order.len()]
    }

    /// Face orbits under `next = rotation successor of the partner`.
    pub fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let nd = self.partner.len();
        let mut dart_face = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                dart_face[cur] = id;
                cycle.push(cur);
                cur = self.rot_succ(self.partner[cur]);
                if cur == start {
                    break;
                }
            }
            faces.push(cycle);
        }
        (faces, dart_face)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (faces, _) = self.faces();
        self.num_vertices() as i64 - self.num_edges() as i64 + faces.len() as i64
    }

    fn assert_planar(&self) {
        debug_assert_eq!(self.euler_characteristic(), 2, "embedding corrupted");
    }

    fn face_walk(&self, face: usize) -> Vec<usize> {
        self.faces().0[face].clone()
    }

    fn new_dart(&mut self, vertex: usize) -> usize {
        self.dart_vertex.push(vertex);
        self.partner.push(usize::MAX);
        self.dart_vertex.len() - 1
    }

    /// Adds an edge parallel to the edge of `d`, hugging it on one side.
    pub fn add_parallel(&mut self, d: usize) -> usize {
        let u = self.dart_vertex[d];
        let pd = self.partner[d];
        let v = self.dart_vertex[pd];
        let a = self.new_dart(u);
        let b = self.new_dart(v);
        self.partner[a] = b;
        self.partner[b] = a;
        let pos_d = self.position(d);
        self.rotation[u].insert(pos_d + 1, a);
        let pos_pd = self.position(pd);
        self.rotation[v].insert(pos_pd, b);
        self.assert_planar();
        a
    }

    /// Adds a pendant vertex attached in the corner after rotation position
    /// `p` at `v`; returns the dart at `v`.
    pub fn add_leaf(&mut self, v: usize, p: usize) -> usize {
        let w = self.rotation.len();
        self.rotation.push(Vec::new());
        let a = self.new_dart(v);
        let b = self.new_dart(w);
        self.partner[a] = b;
        self.partner[b] = a;
        let deg = self.rotation[v].len();
        self.rotation[v].insert((p + 1) % deg.max(1), a);
        self.rotation[w].push(b);
        self.assert_planar();
        a
    }

    /// Adds a chord between the corners at walk positions `i` and `j` of one
    /// face, splitting it in two. Returns the dart at the `i` end.
    pub fn add_chord(&mut self, face: usize, i: usize, j: usize) -> usize {
        let walk = self.face_walk(face);
        let di = walk[i % walk.len()];
        let dj = walk[j % walk.len()];
        let u = self.dart_vertex[di];
        let v = self.dart_vertex[dj];
        let a = self.new_dart(u);
        let b = self.new_dart(v);
        self.partner[a] = b;
        self.partner[b] = a;
        // Insert at the positions of the walk darts; when both corners sit
        // at the same vertex, insert the later position first so the earlier
        // index stays valid.
        let pos_i = self.position(di);
        let pos_j = self.position(dj);
        if u == v {
            if pos_i >= pos_j {
                self.rotation[u].insert(pos_i, a);
                self.rotation[v].insert(pos_j, b);
            } else {
                self.rotation[v].insert(pos_j, b);
                self.rotation[u].insert(pos_i, a);
            }
        } else {
            self.rotation[u].insert(pos_i, a);
            self.rotation[v].insert(pos_j, b);
        }
        self.assert_planar();
        a
    }

    /// Attaches a new degree-2 vertex by a doubled edge in the corner after
    /// rotation position `p` at `v`; adds two edges.
    pub fn attach_digon(&mut self, v: usize, p: usize) {
        let d = self.add_leaf(v, p);
        self.add_parallel(d);
    }

    /// Grows a random connected plane multigraph with `target_edges` edges
    /// and minimum degree 2 (no leaves). Leafless scaffolds keep the medial
    /// graph free of self-loops, and their medials have at least two white
    /// faces, so the black-face count never exceeds the medial vertex count.
    pub fn random(target_edges: usize, rng: &mut impl Rng) -> PlaneGraph {
        assert!(target_edges >= 1);
        let mut g = PlaneGraph::loop_vertex();
        while g.num_edges() < target_edges {
            let remaining = target_edges - g.num_edges();
            match rng.gen_range(0..10) {
                0..=3 => {
                    let d = rng.gen_range(0..g.partner.len());
                    g.add_parallel(d);
                }
                4..=6 if remaining >= 2 => {
                    let v = rng.gen_range(0..g.num_vertices());
                    let p = rng.gen_range(0..g.degree(v));
                    g.attach_digon(v, p);
                }
                _ => {
                    let (faces, _) = g.faces();
                    let f = rng.gen_range(0..faces.len());
                    let len = faces[f].len();
                    let i = rng.gen_range(0..len);
                    let j = rng.gen_range(0..len);
                    g.add_chord(f, i, j);
                }
            }
        }
        debug_assert!((0..g.num_vertices()).all(|v| g.degree(v) >= 2));
        g
    }
}

/// Applies a per-vertex slot permutation during medial construction.
pub type SlotShuffler<'a> = &'a mut dyn FnMut(&mut [u8; 4]);

/// Builds the medial four-vertex instance of a plane multigraph: one vertex
/// per `H`-edge, one edge per `H`-corner, 4-regular and planar by
/// construction, with the outer face matching `H`'s face containing dart 0.
/// Slots are assigned by per-vertex permutations: identity when `shuffle` is
/// `None`, else seeded random ones (so canonical relabeling is exercised).
pub fn medial_instance(
    h: &PlaneGraph,
    params: Params,
    shuffle: Option<SlotShuffler<'_>>,
) -> FourVertexInstance {
    let nd = h.partner.len();
    // Edge ids over H darts.
    let mut dart_edge = vec![usize::MAX; nd];
    let mut edge_min_dart = Vec::new();
    for d in 0..nd {
        if dart_edge[d] == usize::MAX {
            let id = edge_min_dart.len();
            dart_edge[d] = id;
            dart_edge[h.partner[d]] = id;
            edge_min_dart.push(d.min(h.partner[d]));
        }
    }
    let n = edge_min_dart.len();
    // Medial rotation positions at m(e), e = (h, hbar) with h the smaller
    // dart: 0 = previous corner of hbar, 1 = next corner of h, 2 = previous
    // corner of h, 3 = next corner of hbar. A corner (w, p) sits between
    // rotation positions p and p+1 at w.
    let mut slot_of = vec![[1u8, 2, 3, 4]; n];
    if let Some(shuffler) = shuffle {
        for slots in slot_of.iter_mut() {
            shuffler(slots);
        }
    }
    let corner_id = |w: usize, p: usize| -> (usize, usize) { (w, p % h.degree(w)) };
    // For each corner, its two medial endpoints (G vertex, rotation position).
    let mut corner_ends: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for d in 0..nd {
        let w = h.dart_vertex[d];
        let p = h.position(d);
        let deg = h.degree(w);
        let e = dart_edge[d];
        let is_min = edge_min_dart[e] == d;
        // Next corner of d: (w, p); previous corner: (w, p - 1).
        let next_corner = corner_id(w, p);
        let prev_corner = corner_id(w, (p + deg - 1) % deg);
        let next_pos = if is_min { 1 } else { 3 };
        let prev_pos = if is_min { 2 } else { 0 };
        corner_ends.entry(next_corner).or_default().push((e, next_pos));
        corner_ends.entry(prev_corner).or_default().push((e, prev_pos));
    }
    let mut edges = Vec::with_capacity(2 * n);
    let mut corner_of_dart: std::collections::BTreeMap<(usize, u8), (usize, usize)> =
        std::collections::BTreeMap::new();
    for (corner, ends) in &corner_ends {
        assert_eq!(ends.len(), 2, "corner must have exactly two medial ends");
        let (e1, p1) = ends[0];
        let (e2, p2) = ends[1];
        let first = Dart::new(e1, slot_of[e1][p1]);
        let second = Dart::new(e2, slot_of[e2][p2]);
        corner_of_dart.insert((e1, slot_of[e1][p1]), *corner);
        corner_of_dart.insert((e2, slot_of[e2][p2]), *corner);
        edges.push(EdgeSpec::new(first, second));
    }
    let rotation: Vec<[u8; 4]> = slot_of.clone();
    let instance = FourVertexInstance::new(n, edges, params.clone(), Some(rotation), None)
        .expect("medial construction yields a valid instance");
    // Locate the outer face: H's face containing dart 0, matched to the
    // medial face whose corner multiset equals that face's corner walk.
    let (h_faces, h_dart_face) = h.faces();
    let outer_walk = &h_faces[h_dart_face[0]];
    let mut outer_corners: Vec<(usize, usize)> = outer_walk
        .iter()
        .map(|&d| {
            let w = h.dart_vertex[d];
            let deg = h.degree(w);
            corner_id(w, (h.position(d) + deg - 1) % deg)
        })
        .collect();
    outer_corners.sort_unstable();
    let (g_faces, _) = face_orbits(&instance).expect("rotation present");
    let mut hint = None;
    for face in &g_faces {
        let mut corners: Vec<(usize, usize)> = face
            .iter()
            .map(|d| corner_of_dart[&(d.vertex, d.slot)])
            .collect();
        corners.sort_unstable();
        if corners == outer_corners {
            assert!(hint.is_none(), "outer face match must be unique");
            hint = Some(face[0]);
        }
    }
    let hint = hint.expect("medial face matching H's outer face");
    let instance = FourVertexInstance::new(
        instance.n(),
        instance.edges().to_vec(),
        params,
        instance.rotation().map(|r| r.to_vec()),
        Some(hint),
    )
    .expect("valid instance");
    debug_assert!(trace_faces(&instance).is_ok());
    instance
}

/// The octahedron with canonical labeling: the medial graph of the plane
/// tetrahedron, relabeled so circuits follow the four black triangles.
pub fn octahedron(params: Params) -> FourVertexInstance {
    let tetra = PlaneGraph::tetrahedron();
    let raw = medial_instance(&tetra, params, None);
    let faces = trace_faces(&raw).expect("octahedron is planar");
    let coloring = two_color_faces(&raw, &faces).expect("faces 2-colorable");
    canonical_label(&raw, &faces, &coloring)
}

/// A random planar 4-regular instance with an embedding and randomized slot
/// labels: the medial graph of a randomly grown plane multigraph with
/// `target_n` edges.
pub fn random_planar_four_regular(
    target_n: usize,
    params: Params,
    rng: &mut impl Rng,
) -> FourVertexInstance {
    let h = PlaneGraph::random(target_n, rng);
    let mut shuffler = |slots: &mut [u8; 4]| {
        for i in (1..4usize).rev() {
            let j = rng.gen_range(0..=i);
            slots.swap(i, j);
        }
    };
    medial_instance(&h, params, Some(&mut shuffler))
}

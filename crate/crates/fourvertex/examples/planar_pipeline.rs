//! The planar path end to end on a random embedded instance: face tracing,
//! 2-coloring, canonical relabeling, the black-face graph, and the spin-sum
//! partition function checked against the oracle.
//!
//! ```bash
//! cargo run --release --example planar_pipeline
//! ```

use rand::rngs::SmallRng;
use rand::SeedableRng;

use fourvertex::circuits::{classify, decompose};
use fourvertex::generate::random_planar_four_regular;
use fourvertex::graph::Params;
use fourvertex::parity::{build_system, solve};
use fourvertex::planar::{
    black_face_spin_sum, build_black_face_graph, canonical_label, planar_mixing_bound,
    trace_faces, two_color_faces,
};
use fourvertex::rational::rational_to_string;

fn main() {
    let mut rng = SmallRng::seed_from_u64(31337);
    let instance = random_planar_four_regular(7, Params::beta(2), &mut rng);
    println!("random planar 4-regular instance with n = {}", instance.n());

    let faces = trace_faces(&instance).unwrap();
    println!(
        "{} faces (V - E + F = {} - {} + {} = 2)",
        faces.num_faces(),
        instance.n(),
        2 * instance.n(),
        faces.num_faces()
    );
    let coloring = two_color_faces(&instance, &faces).unwrap();
    let bfg = build_black_face_graph(&instance, &faces, &coloring);
    println!(
        "black-face graph: k = {}, {} collapsed edges, {} self-loops (edges + loops = n = {})",
        bfg.k(),
        bfg.multiplicities().len(),
        bfg.self_loops(),
        bfg.edge_count() + bfg.self_loops()
    );

    let canonical = canonical_label(&instance, &faces, &coloring);
    let dec = decompose(&canonical);
    println!(
        "canonical labeling: {} circuits = {} black faces",
        dec.num_circuits(),
        bfg.k()
    );
    let graph = classify(&canonical, &dec).unwrap();
    let system = build_system(&graph, &canonical.beta());
    assert!(solve(&system).is_satisfiable(), "canonical labels admit flips");

    let z = black_face_spin_sum(&instance, &bfg, 20).unwrap();
    let oracle = canonical.brute_force_partition_capped(40).unwrap();
    assert_eq!(z, oracle);
    println!("spin sum over black faces: Z = {} (oracle agrees)", rational_to_string(&z));

    match planar_mixing_bound(&instance, 0.1) {
        Ok(bound) => println!("planar mixing bound at eps = 0.1: {:.1}", bound),
        Err(e) => println!("planar mixing bound unavailable: {}", e),
    }
}

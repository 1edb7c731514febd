//! Circuit decomposition and vertex classification: trace the circuits of a
//! few fixtures, show agree/disagree counts, and check the circuit-sum
//! identity against the brute-force oracle.
//!
//! ```bash
//! cargo run --release --example circuit_decomposition
//! ```

use fourvertex::circuits::{circuit_sum_partition, classify, decompose};
use fourvertex::generate::{double_loop_side_by_side, theta4, theta4_slot_swapped};
use fourvertex::graph::{FourVertexInstance, Params};
use fourvertex::rational::rational_to_string;

fn show(name: &str, instance: &FourVertexInstance) {
    let dec = decompose(instance);
    println!("{}: {} circuits", name, dec.num_circuits());
    for circuit in dec.circuits() {
        let darts: Vec<String> = circuit.darts.iter().map(|d| d.to_string()).collect();
        println!("  C{} = [{}]", circuit.id, darts.join(", "));
    }
    let graph = classify(instance, &dec).unwrap();
    for (&(i, j), counts) in graph.edges() {
        println!(
            "  pair (C{}, C{}): {} agree, {} disagree",
            i, j, counts.agree, counts.disagree
        );
    }
    if graph.const_beta_exponent() + graph.const_one_count() > 0 {
        println!(
            "  constants: beta^{} * 1^{}",
            graph.const_beta_exponent(),
            graph.const_one_count()
        );
    }
    let z = circuit_sum_partition(instance, &dec, 24).unwrap();
    let oracle = instance.brute_force_partition().unwrap();
    assert_eq!(z, oracle);
    println!(
        "  sum over 2^{} circuit assignments = {} (oracle agrees)",
        dec.num_circuits(),
        rational_to_string(&z)
    );
    // Flipping one circuit's initial dart swaps agree and disagree counts.
    if dec.num_circuits() >= 2 {
        let mut flips = vec![false; dec.num_circuits()];
        flips[0] = true;
        let flipped = graph.apply_flips(&flips);
        for (&(i, j), counts) in flipped.edges() {
            println!(
                "  after flipping C0: (C{}, C{}) -> {} agree, {} disagree",
                i, j, counts.agree, counts.disagree
            );
        }
    }
}

fn main() {
    show("theta4", &theta4(Params::beta(2)));
    show("theta4 slots 2<->3 swapped at v1", &theta4_slot_swapped(Params::beta(2)));
    show("two side-by-side loops", &double_loop_side_by_side(Params::beta(2)));
}

//! The GF(2) flip systems: one equation per interacting circuit pair, with
//! right-hand sides chosen by the weight regime. Shows a feasible case for
//! both regimes and an infeasible odd cycle with its witness.
//!
//! ```bash
//! cargo run --release --example parity_fix
//! ```

use fourvertex::circuits::{classify, decompose};
use fourvertex::generate::{odd_disagree_cycle, theta4};
use fourvertex::graph::Params;
use fourvertex::parity::{build_system, solve, SolveOutcome};

fn main() {
    for params in [Params::beta(2), Params::beta_ratio(1, 2)] {
        let instance = theta4(params);
        let graph = classify(&instance, &decompose(&instance)).unwrap();
        let system = build_system(&graph, &instance.beta());
        println!("theta4, beta = {}:", instance.beta());
        for c in &system.constraints {
            println!("  X{} + X{} = {}", c.i, c.j, c.rhs as u8);
        }
        match solve(&system) {
            SolveOutcome::Satisfiable(a) => println!("  flips = {:?}", a.values),
            SolveOutcome::Infeasible(_) => unreachable!("theta4 is always feasible"),
        }
    }

    let instance = odd_disagree_cycle(Params::beta(2));
    let graph = classify(&instance, &decompose(&instance)).unwrap();
    let system = build_system(&graph, &instance.beta());
    println!("doubled triangle with an odd disagree cycle:");
    for c in &system.constraints {
        println!("  X{} + X{} = {}", c.i, c.j, c.rhs as u8);
    }
    match solve(&system) {
        SolveOutcome::Satisfiable(_) => unreachable!("fixture is infeasible"),
        SolveOutcome::Infeasible(witness) => {
            println!("  infeasible; odd cycle:");
            for c in &witness.constraints {
                println!("    X{} + X{} = {}", c.i, c.j, c.rhs as u8);
            }
            let parity = witness.constraints.iter().fold(false, |p, c| p ^ c.rhs);
            assert!(parity, "witness sums to 1 over GF(2)");
        }
    }
}

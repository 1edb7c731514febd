//! The worm process: exact kernel checks on the reduced octahedron, then a
//! long run comparing empirical state frequencies with the stationary
//! measure.
//!
//! ```bash
//! cargo run --release --example worm_chain
//! ```

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::rngs::SmallRng;
use rand::SeedableRng;

use fourvertex::estimator::prepare;
use fourvertex::generate::octahedron;
use fourvertex::graph::Params;
use fourvertex::worm::WormKernel;

fn main() {
    let instance = octahedron(Params::beta(2));
    let pipeline = prepare(&instance).unwrap();
    let kernel = WormKernel::new(&pipeline.ferro).unwrap();
    println!(
        "octahedron reduced kernel: m = {}, |E| = {}, x_min = {}",
        kernel.m(),
        kernel.num_edges(),
        kernel.x_min().unwrap()
    );
    println!(
        "reversible w.r.t. the worm measure: {}",
        kernel.check_reversibility(1 << 20).unwrap()
    );
    println!(
        "stationary lower bound (pi form): {}",
        kernel.check_measure_lower_bound(1 << 20).unwrap()
    );
    println!(
        "mixing-time bound at eps = 0.1: {:.1}",
        kernel.mixing_bound(0.1).unwrap()
    );

    // Empirical vs exact stationary distribution over the full state space.
    let states = kernel.enumerate_states(1 << 20).unwrap();
    let z: BigRational = states.iter().map(|s| kernel.stationary_weight(s)).sum();
    let steps = 2_000_000u64;
    let mut rng = SmallRng::seed_from_u64(12345);
    let mut state = kernel.empty_state();
    let mut visits: HashMap<u64, u64> = HashMap::new();
    for _ in 0..steps {
        kernel.step(&mut state, &mut rng);
        *visits.entry(state.mask()).or_insert(0) += 1;
    }
    println!("{} states; worst deviation over {} steps:", states.len(), steps);
    let mut worst = 0.0f64;
    for s in &states {
        let pi = (kernel.stationary_weight(s) / &z).to_f64().unwrap();
        let freq = *visits.get(&s.mask()).unwrap_or(&0) as f64 / steps as f64;
        worst = worst.max((pi - freq).abs());
    }
    println!("  max |pi - freq| = {:.5}", worst);
    assert!(worst < 0.01);
}

//! Exact brute-force evaluation: build the theta-4 multigraph at several
//! weights, enumerate the positive-weight configurations, and print the
//! partition function.
//!
//! ```bash
//! cargo run --release --example exact_oracle
//! ```

use fourvertex::generate::theta4;
use fourvertex::graph::Params;
use fourvertex::rational::rational_to_string;

fn main() {
    for params in [Params::beta(2), Params::beta(1), Params::beta_ratio(1, 2)] {
        let instance = theta4(params);
        let z = instance.brute_force_partition().unwrap();
        println!(
            "theta4 with beta = {}: Z = {}",
            rational_to_string(&instance.beta()),
            rational_to_string(&z)
        );
        let configs = instance.enumerate_configurations().unwrap();
        for (config, weight) in &configs {
            println!(
                "  {}  weight {}",
                config.bits_string(),
                rational_to_string(weight)
            );
        }
        // Global arrow reversal pairs configurations of equal weight.
        for (config, weight) in &configs {
            let mirror = config.complement();
            let (_, w2) = configs.iter().find(|(c, _)| *c == mirror).unwrap();
            assert_eq!(weight, w2);
        }
    }
}

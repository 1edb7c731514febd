//! Approximate Gibbs sampling of configurations, with the empirical
//! distribution checked against the enumeration oracle in total variation.
//!
//! ```bash
//! cargo run --release --example sample_configurations
//! ```

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::rngs::SmallRng;
use rand::SeedableRng;

use fourvertex::estimator::{prepare, sample_configuration_with};
use fourvertex::generate::octahedron;
use fourvertex::graph::Params;

fn main() {
    let instance = octahedron(Params::beta(2));
    let pipeline = prepare(&instance).unwrap();
    let z = instance.brute_force_partition().unwrap();
    let exact: BTreeMap<String, f64> = instance
        .enumerate_configurations()
        .unwrap()
        .into_iter()
        .map(|(c, w)| (c.bits_string(), (w / &z).to_f64().unwrap()))
        .collect();
    println!(
        "octahedron at beta = 2: {} valid configurations, Z = 216",
        exact.len()
    );

    let samples = 4000;
    let steps = 20_000;
    let mut rng = SmallRng::seed_from_u64(777);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..samples {
        let config = sample_configuration_with(&instance, &pipeline, steps, &mut rng).unwrap();
        assert!(instance.is_valid_config(&config));
        *counts.entry(config.bits_string()).or_insert(0) += 1;
    }
    let mut tv = 0.0;
    for (key, p) in &exact {
        let freq = *counts.get(key).unwrap_or(&0) as f64 / samples as f64;
        tv += (p - freq).abs();
    }
    tv /= 2.0;
    println!("{} samples of {} worm steps each: TV distance {:.4}", samples, steps, tv);
    assert!(tv < 0.08);

    // Weight classes: 2 configurations of weight 64, 8 of weight 8, 6 of 4.
    let mut by_weight: BTreeMap<String, u64> = BTreeMap::new();
    for (key, count) in &counts {
        let p = exact[key];
        *by_weight.entry(format!("{:.5}", p)).or_insert(0) += count;
    }
    for (p, total) in by_weight {
        println!("  configurations with probability {}: {} hits", p, total);
    }
}

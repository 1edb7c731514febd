//! The randomized partition-function estimator on desk-scale instances,
//! compared with the exact values.
//!
//! ```bash
//! cargo run --release --example estimate_partition
//! ```

use fourvertex::estimator::{estimate_partition, EstimatorConfig};
use fourvertex::generate::{octahedron, theta4};
use fourvertex::graph::{FourVertexInstance, Params};

fn show(name: &str, instance: &FourVertexInstance, exact: f64) {
    let config = EstimatorConfig::new(0.1, 0.25, 2024)
        .with_chain_cap(1500)
        .with_sampling(6, 64);
    let estimate = estimate_partition(instance, &config).unwrap();
    println!(
        "{}: ln Z = {:.5} (exact {:.5}), rel err {:+.3}%, {} samples",
        name,
        estimate.log_value,
        exact,
        ((estimate.log_value - exact).exp() - 1.0) * 100.0,
        estimate.samples_used
    );
    assert!((estimate.log_value - exact).abs() < 0.15);
}

fn main() {
    show("theta4 (beta = 2)", &theta4(Params::beta(2)), 10f64.ln());
    show("theta4 (beta = 1)", &theta4(Params::beta(1)), 4f64.ln());
    show(
        "octahedron (beta = 2)",
        &octahedron(Params::beta(2)),
        216f64.ln(),
    );
}

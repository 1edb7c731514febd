//! Windability of the four-vertex constraint function across a grid of
//! weight ratios: windable exactly at a = c, with an independently verified
//! certificate there.
//!
//! ```bash
//! cargo run --release --example windability_check
//! ```

use num_rational::BigRational;
use num_traits::One;

use fourvertex::rational::rational_to_string;
use fourvertex::windability::{
    check_windable, matchings, verify_certificate, ConstraintFunction, Verdict,
};

fn main() {
    for (num, den) in [(1i64, 2i64), (2, 3), (1, 1), (3, 2), (2, 1), (5, 1)] {
        let a = BigRational::new(num.into(), den.into());
        let f = ConstraintFunction::f_star(a.clone(), BigRational::one());
        let result = check_windable(&f).unwrap();
        match result.verdict {
            Verdict::Windable => {
                let cert = result.certificate.unwrap();
                assert!(verify_certificate(&f, &cert));
                let nonzero = cert.values().filter(|v| !num_traits::Zero::is_zero(*v)).count();
                println!(
                    "a/c = {}: windable ({} nonzero certificate entries, verified)",
                    rational_to_string(&a),
                    nonzero
                );
            }
            Verdict::Unwindable => {
                println!(
                    "a/c = {}: unwindable (block {:04b} infeasible)",
                    rational_to_string(&a),
                    result.failing_block.unwrap()
                );
            }
        }
    }

    // The support partitions behind the certificate indices.
    println!("matchings of 1111: ");
    for m in matchings(0b1111) {
        println!("  pairs {:?}", m.pairs);
    }
}

// Scratch calibration probe (not part of the deliverable surface).
use std::time::Instant;

use num_complex::Complex64 as C64;
use stellar::{
    build_table, optimize_expectation_threshold, optimize_variance_threshold, OptimizerConfig,
    ParitySign, WitnessFamily,
};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(String::as_str).unwrap_or("all");

    let cell = |family: &WitnessFamily, m: usize| {
        let cfg = OptimizerConfig::default_for(family);
        let t0 = Instant::now();
        let (v, meta) = if family.is_variance() {
            optimize_variance_threshold(family, m, &cfg).unwrap()
        } else {
            optimize_expectation_threshold(family, m, &cfg).unwrap()
        };
        println!(
            "{:10} m={m:2} -> {v:.6}  ({:.2?}; dim {}; params t={:.4}, z={:.4}{:+.4}i, r={:+.4}, lambda={:?})",
            family.tag(),
            t0.elapsed(),
            meta.dim_used,
            meta.params.vartheta,
            meta.params.z.re,
            meta.params.z.im,
            meta.params.r,
            meta.lambda,
        );
        v
    };

    match which {
        "cubic" => {
            cell(&WitnessFamily::cubic(), 0);
            cell(&WitnessFamily::cubic(), 1);
            cell(&WitnessFamily::cubic(), 10);
        }
        "gkp" => {
            cell(&WitnessFamily::gkp(), 0);
            cell(&WitnessFamily::gkp(), 2);
            cell(&WitnessFamily::gkp(), 10);
        }
        "cat" => {
            let even = WitnessFamily::cat(C64::new(2.0, 0.0), ParitySign::Even);
            cell(&even, 0);
            cell(&even, 3);
            cell(&even, 4);
            let odd = WitnessFamily::cat(C64::new(2.0, 0.0), ParitySign::Odd);
            cell(&odd, 3);
            cell(&odd, 5);
        }
        "fock" => {
            cell(&WitnessFamily::fock(1), 0);
            cell(&WitnessFamily::fock(4), 3);
            cell(&WitnessFamily::fock(10), 0);
            cell(&WitnessFamily::fock(10), 9);
        }
        "table" => {
            let family = WitnessFamily::fock(3);
            let cfg = OptimizerConfig::default_for(&family);
            let t0 = Instant::now();
            let table = build_table(&family, 3, &cfg).unwrap();
            println!("fock k=3 table in {:.2?}: {:?}", t0.elapsed(), table.raw);
        }
        other => {
            println!("unknown probe {other}; use cubic|gkp|cat|fock|table");
        }
    }
}

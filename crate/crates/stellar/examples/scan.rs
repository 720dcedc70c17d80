// Scratch landscape scan (not part of the deliverable surface).
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use stellar::{min_eig_projected, GaussianParams, ParitySign, WitnessFamily};

fn main() {
    // args: m t0 t1 re0 re1 im0 im1 r0 r1 [n]
    let a: Vec<f64> =
        std::env::args().skip(1).map(|s| s.parse().unwrap()).collect();
    let family = WitnessFamily::cat(C64::new(2.0, 0.0), ParitySign::Even);
    let m = a[0] as usize;
    let n = *a.get(9).unwrap_or(&25.0) as usize;
    let mut pts = Vec::new();
    for it in 0..n {
        for ire in 0..n {
            for iim in 0..n {
                for ir in 0..n {
                    let f = |k: usize, lo: f64, hi: f64| lo + (hi - lo) * k as f64 / (n - 1) as f64;
                    let t = f(it, a[1], a[2]);
                    let re = f(ire, a[3], a[4]);
                    let im = f(iim, a[5], a[6]);
                    let r = f(ir, a[7], a[8]);
                    pts.push((t, re, im, r));
                }
            }
        }
    }
    let mut vals: Vec<(f64, (f64, f64, f64, f64))> = pts
        .par_iter()
        .map(|&(t, re, im, r)| {
            let p = GaussianParams::new(t, C64::new(re, im), r);
            let mat = family.conjugated_matrix(&p, m + 1).unwrap();
            (min_eig_projected(&mat, m).unwrap(), (t, re, im, r))
        })
        .collect();
    if std::env::var("PROFILE").is_ok() {
        for (v, (t, re, im, r)) in vals.iter() {
            println!("{v:.5} at theta={t:.4} z={re:+.3}{im:+.3}i r={r:+.3}");
        }
        return;
    }
    vals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for (v, (t, re, im, r)) in vals.iter().take(25) {
        println!("{v:.5} at theta={t:.4} z={re:+.3}{im:+.3}i r={r:+.3}");
    }
}

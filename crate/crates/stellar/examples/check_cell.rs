// Scratch cross-check of one threshold cell via the expm oracle route.
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use stellar::fock::{build_ladder, gaussian_unitary_oracle, parity_matrix};
use stellar::{min_eig_projected, GaussianParams, ParitySign, WitnessFamily};

fn main() {
    let m = 3usize;
    let params = GaussianParams::new(1.5708, C64::new(0.2125, 0.0), 0.436);
    let alpha = C64::new(2.0, 0.0);

    let family = WitnessFamily::cat(alpha, ParitySign::Even);
    let analytic = family.conjugated_matrix(&params, m + 1).unwrap();
    let v_analytic = min_eig_projected(&analytic, m).unwrap();

    let dim = 240;
    let (a, ad) = build_ladder(dim).unwrap();
    let eye = DMatrix::<C64>::identity(dim, dim);
    let quad =
        (&ad * &ad - &eye * alpha.conj() * alpha.conj()) * (&a * &a - &eye * alpha * alpha);
    let bare = quad + (&eye - parity_matrix(dim).unwrap());
    let g = gaussian_unitary_oracle(&params, 0.0, dim).unwrap();
    let brute = g.adjoint() * bare * g;
    let v_brute = min_eig_projected(&brute, m).unwrap();

    println!("analytic: {v_analytic:.8}");
    println!("brute   : {v_brute:.8}");
    println!("diff    : {:.3e}", (v_analytic - v_brute).abs());
}

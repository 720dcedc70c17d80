//! Witness operator families and their Gaussian-conjugated realizations.
//!
//! Each family is a nullifier of an idealized non-Gaussian target state:
//!
//! - cubic: `Q = x + kappa p^2` (variance witness),
//! - GKP: `W = 2 - (cos-combination of two displacements)`,
//! - cat: `W = (a^dag^2 - conj(alpha)^2)(a^2 - alpha^2) + (1 -/+ parity)`,
//! - Fock: `W = (n - k)^2`.
//!
//! Conjugation by `G = F(vartheta) D(z) S(r)` is carried out analytically:
//! quadratic parts map to new coefficient sets, squared parts go through
//! [`square_quadratic`], displacements pick up transformed amplitudes and a
//! scalar phase, and the parity operator turns into a displaced parity.
//! Every matrix entry produced here is an exact infinite-dimensional matrix
//! element, so projections onto leading Fock blocks carry no truncation
//! error. The brute-force exponential oracle cross-checks all of it in
//! tests.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{displacement_matrix, parity_matrix};
use crate::gaussian::{realize_quadratic, realize_quartic, square_quadratic, GaussianParams, QuadraticForm};
use crate::C64;

/// Parity label of the cat-state witness: `Even` (tau_+) nullifies even
/// cats through `1 - Pi`, `Odd` (tau_-) nullifies odd cats through `1 + Pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParitySign {
    Even,
    Odd,
}

/// One of the four witness operator families with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessFamily {
    /// Cubic nonlinear quadrature `x + kappa p^2`; only the canonical
    /// `kappa = 1` operator is implemented, other values being reachable by
    /// Gaussian reparametrization.
    Cubic { kappa: f64 },
    /// GKP nullifier with the asymmetric canonical parameters
    /// `fp = sqrt(pi) = 2 fx`.
    Gkp { fx: f64, fp: f64 },
    /// Coherent cat nullifier with complex amplitude `alpha` and parity.
    Cat { alpha: C64, parity: ParitySign },
    /// Fock-state nullifier targeting |k>.
    Fock { k: u32 },
}

impl WitnessFamily {
    pub fn cubic() -> Self {
        WitnessFamily::Cubic { kappa: 1.0 }
    }

    pub fn gkp() -> Self {
        WitnessFamily::Gkp { fx: PI.sqrt() / 2.0, fp: PI.sqrt() }
    }

    pub fn cat(alpha: C64, parity: ParitySign) -> Self {
        WitnessFamily::Cat { alpha, parity }
    }

    pub fn fock(k: u32) -> Self {
        WitnessFamily::Fock { k }
    }

    /// Variance witnesses optimize `(Q - lambda)^2`; expectation witnesses
    /// optimize the operator itself.
    pub fn is_variance(&self) -> bool {
        matches!(self, WitnessFamily::Cubic { .. })
    }

    /// The number operator is phase invariant, so the Fock family optimizes
    /// only over (Re z, Im z, r).
    pub fn uses_phase_axis(&self) -> bool {
        !matches!(self, WitnessFamily::Fock { .. })
    }

    /// Short tag used in file names and reports.
    pub fn tag(&self) -> String {
        match self {
            WitnessFamily::Cubic { .. } => "cubic".into(),
            WitnessFamily::Gkp { .. } => "gkp".into(),
            WitnessFamily::Cat { parity: ParitySign::Even, .. } => "cat_even".into(),
            WitnessFamily::Cat { parity: ParitySign::Odd, .. } => "cat_odd".into(),
            WitnessFamily::Fock { k } => format!("fock_k{k}"),
        }
    }

    /// Conjugated witness matrix for the expectation-value families.
    pub fn conjugated_matrix(&self, params: &GaussianParams, dim: usize) -> Result<DMatrix<C64>> {
        match self {
            WitnessFamily::Gkp { .. } => gkp_conjugated_matrix(params, self, dim),
            WitnessFamily::Cat { .. } => cat_conjugated_matrix(params, self, dim),
            WitnessFamily::Fock { .. } => fock_conjugated_matrix(params, self, dim),
            WitnessFamily::Cubic { .. } => Err(Error::ContractViolation(
                "cubic family is a variance witness; use cubic_conjugated_form".into(),
            )),
        }
    }
}

/// Conjugation factors of the number operator, `G^dag n G`, independent of
/// the phase-shift angle.
pub(crate) fn number_conjugated_form(params: &GaussianParams) -> QuadraticForm {
    let mu = params.mu();
    let nu = params.nu();
    let z = params.z;
    QuadraticForm::hermitian(
        mu * mu + nu * nu,
        C64::new(-mu * nu, 0.0),
        mu * z.conj() - nu * z,
        nu * nu + z.norm_sqr(),
    )
}

/// Conjugation factors of the cubic nonlinear quadrature `x + p^2`.
///
/// With `g = exp(i vartheta)` and `g2 = g^2`, the coefficients are
///
/// ```text
/// A = 2 Re(g2) mu nu + mu^2 + nu^2
/// B = -(g2 mu^2 + conj(g2) nu^2)/2 - mu nu
/// D = conj(g2) nu conj(z) - g2 mu z + mu conj(z) - nu z + (g mu - conj(g) nu)/sqrt(2)
/// F = [2 Re(g2) mu nu + mu^2 + nu^2 - 2 Re(g2 z^2)]/2 + sqrt(2) Re(g z) + |z|^2
/// ```
///
/// with `C = conj(B)` and `E = conj(D)`.
pub fn cubic_conjugated_form(params: &GaussianParams) -> QuadraticForm {
    let mu = params.mu();
    let nu = params.nu();
    let z = params.z;
    let g = params.g();
    let g2 = g * g;
    let sqrt2 = std::f64::consts::SQRT_2;
    let a = 2.0 * g2.re * mu * nu + mu * mu + nu * nu;
    let b = -(g2 * (mu * mu) + g2.conj() * (nu * nu)) * 0.5 - C64::new(mu * nu, 0.0);
    let d = g2.conj() * (nu * z.conj()) - g2 * (mu * z) + mu * z.conj() - nu * z
        + (g * mu - g.conj() * nu) / sqrt2;
    let f = 0.5 * (2.0 * g2.re * mu * nu + mu * mu + nu * nu - 2.0 * (g2 * z * z).re)
        + sqrt2 * (g * z).re
        + z.norm_sqr();
    QuadraticForm::hermitian(a, b, d, f)
}

/// Conjugation factors of the quadratic cat part
/// `n + conj(alpha)^2 a^2 + alpha^2 a^dag^2`.
fn cat_quadratic_form(params: &GaussianParams, alpha: C64) -> QuadraticForm {
    let mu = params.mu();
    let nu = params.nu();
    let z = params.z;
    let g = params.g();
    let w = g * g * alpha.conj() * alpha.conj();
    let a = mu * mu + nu * nu - 4.0 * mu * nu * w.re;
    let b = C64::new(-mu * nu, 0.0) + w * (mu * mu) + w.conj() * (nu * nu);
    let d = mu * z.conj() - nu * z + 2.0 * w * (mu * z) - 2.0 * w.conj() * (nu * z.conj());
    let f = nu * nu + z.norm_sqr() - 2.0 * mu * nu * w.re + 2.0 * (z * z * w).re;
    QuadraticForm::hermitian(a, b, d, f)
}

/// Displacement amplitude of the conjugated parity operator,
/// `G^dag Pi G = D(y) Pi` with `y = -2 (mu z + nu conj(z))`.
pub(crate) fn cat_parity_displacement(params: &GaussianParams) -> C64 {
    -2.0 * (params.mu() * params.z + params.nu() * params.z.conj())
}

/// Transformed amplitude and scalar phase of a conjugated displacement,
/// `G^dag D(lambda) G = phase * D(conj(g) mu lambda + g nu conj(lambda))`.
pub(crate) fn conjugated_displacement(params: &GaussianParams, lambda: C64) -> (C64, C64) {
    let g = params.g();
    let moved = g.conj() * (params.mu() * lambda) + g * (params.nu() * lambda.conj());
    // The exponent conj(g) conj(z) lambda - g z conj(lambda) is purely
    // imaginary, so the scalar is an exact unit phase.
    let w = g.conj() * params.z.conj() * lambda;
    let phase = C64::from_polar(1.0, 2.0 * w.im);
    (moved, phase)
}

fn hermitize(mut m: DMatrix<C64>) -> Result<DMatrix<C64>> {
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let defect = (&m - m.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if defect > 1e-10 * scale {
        return Err(Error::ContractViolation(format!(
            "assembled witness matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    let adj = m.adjoint();
    m += adj;
    m *= C64::new(0.5, 0.0);
    Ok(m)
}

/// Conjugated GKP witness
/// `G^dag W G = 2 - 1/2 sum_j [phase_j D(lambda_j') + h.c.]`
/// with lambda_1 = sqrt(2 pi) and lambda_2 = i sqrt(pi / 2).
pub fn gkp_conjugated_matrix(
    params: &GaussianParams,
    family: &WitnessFamily,
    dim: usize,
) -> Result<DMatrix<C64>> {
    let WitnessFamily::Gkp { fx, fp } = family else {
        return Err(Error::ContractViolation("expected a GKP family".into()));
    };
    let canonical = WitnessFamily::gkp();
    if let WitnessFamily::Gkp { fx: cfx, fp: cfp } = canonical {
        if (fx - cfx).abs() > 1e-12 || (fp - cfp).abs() > 1e-12 {
            return Err(Error::ContractViolation(
                "only the canonical GKP parameters fp = sqrt(pi) = 2 fx are supported".into(),
            ));
        }
    }
    let amplitudes = [C64::new((2.0 * PI).sqrt(), 0.0), C64::new(0.0, (PI / 2.0).sqrt())];
    let mut m = DMatrix::<C64>::identity(dim, dim) * C64::new(2.0, 0.0);
    for lambda in amplitudes {
        let (moved, phase) = conjugated_displacement(params, lambda);
        let term = displacement_matrix(moved, dim)? * (phase * 0.5);
        let adj = term.adjoint();
        m -= term;
        m -= adj;
    }
    hermitize(m)
}

/// Conjugated cat witness. The quartic part comes from squaring the
/// conjugated number form, the quadratic part from the cat factor table,
/// and the parity part from the displaced parity `D(y) Pi`.
pub fn cat_conjugated_matrix(
    params: &GaussianParams,
    family: &WitnessFamily,
    dim: usize,
) -> Result<DMatrix<C64>> {
    let WitnessFamily::Cat { alpha, parity } = family else {
        return Err(Error::ContractViolation("expected a cat family".into()));
    };
    let n_form = number_conjugated_form(params);
    let mut m = realize_quartic(&square_quadratic(&n_form), dim)?;
    m -= realize_quadratic(&cat_quadratic_form(params, *alpha), dim)?;
    let alpha4 = alpha.norm_sqr() * alpha.norm_sqr();
    m += DMatrix::<C64>::identity(dim, dim) * C64::new(alpha4 + 1.0, 0.0);
    let displaced_parity =
        displacement_matrix(cat_parity_displacement(params), dim)? * parity_matrix(dim)?;
    match parity {
        ParitySign::Even => m -= &displaced_parity,
        ParitySign::Odd => m += &displaced_parity,
    }
    hermitize(m)
}

/// Conjugated Fock witness `G^dag (n - k)^2 G`, built by shifting the
/// conjugated number form by `-k` and squaring. Phase invariance of the
/// number operator removes the vartheta dependence.
pub fn fock_conjugated_matrix(
    params: &GaussianParams,
    family: &WitnessFamily,
    dim: usize,
) -> Result<DMatrix<C64>> {
    let WitnessFamily::Fock { k } = family else {
        return Err(Error::ContractViolation("expected a Fock family".into()));
    };
    let form = number_conjugated_form(params).shifted(*k as f64);
    realize_quartic(&square_quadratic(&form), dim)
}

/// Surrogate operator `(Q - lambda)^2` for a conjugated quadratic form,
/// realized by shifting the constant coefficient and squaring.
pub fn surrogate_matrix(base: &QuadraticForm, lambda: f64, dim: usize) -> Result<DMatrix<C64>> {
    if !base.is_hermitian() {
        return Err(Error::ContractViolation(format!(
            "surrogate base form is not Hermitian (defect {:.3e})",
            base.hermiticity_defect()
        )));
    }
    realize_quartic(&square_quadratic(&base.shifted(lambda)), dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_ladder, coherent_state, gaussian_unitary_oracle};
    use approx::assert_abs_diff_eq;
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn leading_block_deviation(a: &DMatrix<C64>, b: &DMatrix<C64>, block: usize) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..block {
            for j in 0..block {
                worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
            }
        }
        worst
    }

    #[test]
    fn cubic_form_at_identity() {
        let form = cubic_conjugated_form(&GaussianParams::identity());
        assert_abs_diff_eq!(form.a.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(form.b.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(form.d.re, 1.0 / 2.0_f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(form.f.re, 0.5, epsilon = 1e-15);
        assert_eq!(form.b.im, 0.0);
        assert_eq!(form.d.im, 0.0);
    }

    #[test]
    fn cubic_number_coefficient_grows_with_squeezing() {
        // A = (mu + nu)^2 = e^{2r} at vartheta = 0, z = 0.
        let form = cubic_conjugated_form(&GaussianParams::new(0.0, C64::default(), 0.5));
        assert_abs_diff_eq!(form.a.re, 1.0_f64.exp(), epsilon = 1e-12);
    }

    #[test]
    fn cubic_form_matches_brute_force_conjugation() {
        let dim = 160;
        let block = 40;
        let params = GaussianParams::new(1.1, c(0.4, -0.3), 0.25);
        let analytic = realize_quadratic(&cubic_conjugated_form(&params), dim).unwrap();
        let (a, ad) = build_ladder(dim).unwrap();
        let x = (&a + &ad) / c(2.0_f64.sqrt(), 0.0);
        let p = (&a - &ad) * c(0.0, -1.0) / c(2.0_f64.sqrt(), 0.0);
        let bare = &x + &p * &p;
        let g = gaussian_unitary_oracle(&params, 0.0, dim).unwrap();
        let brute = g.adjoint() * bare * g;
        let worst = leading_block_deviation(&analytic, &brute, block);
        assert!(worst < 1e-8, "cubic conjugation deviation {worst:.3e}");
    }

    #[test]
    fn gkp_vacuum_expectation_at_identity() {
        let family = WitnessFamily::gkp();
        let m = gkp_conjugated_matrix(&GaussianParams::identity(), &family, 4).unwrap();
        let want = 2.0 - (-PI).exp() - (-PI / 4.0).exp();
        assert_abs_diff_eq!(m[(0, 0)].re, want, epsilon = 1e-12);
        assert_abs_diff_eq!(want, 1.500_847_95, epsilon = 1e-8);
    }

    #[test]
    fn gkp_spectrum_is_bounded() {
        let family = WitnessFamily::gkp();
        let params = GaussianParams::new(0.7, c(0.5, 0.2), 0.4);
        let m = gkp_conjugated_matrix(&params, &family, 120).unwrap();
        let eigs = m.symmetric_eigenvalues();
        let lo = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(lo >= -1e-9, "spectrum dipped to {lo}");
        assert!(hi <= 4.0 + 1e-9, "spectrum rose to {hi}");
    }

    #[test]
    fn cat_parity_displacement_amplitude() {
        let params = GaussianParams::new(0.0, c(0.4, 0.1), 0.0);
        let y = cat_parity_displacement(&params);
        assert_abs_diff_eq!(y.re, -0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(y.im, -0.2, epsilon = 1e-15);
    }

    #[test]
    fn cat_nullifies_its_target_state() {
        let dim = 40;
        let alpha = c(2.0, 0.0);
        for (parity, sign) in [(ParitySign::Even, 1.0), (ParitySign::Odd, -1.0)] {
            let family = WitnessFamily::cat(alpha, parity);
            let m = cat_conjugated_matrix(&GaussianParams::identity(), &family, dim).unwrap();
            let mut cat: DVector<C64> =
                coherent_state(alpha, dim) + coherent_state(-alpha, dim) * c(sign, 0.0);
            cat /= c(cat.norm(), 0.0);
            let value = (cat.adjoint() * &m * cat)[(0, 0)].re;
            assert!(value.abs() < 1e-8, "{parity:?} cat expectation {value:.3e}");
        }
    }

    #[test]
    fn cat_matches_brute_force_conjugation() {
        let dim = 200;
        let block = 36;
        let alpha = c(2.0, 0.0);
        let params = GaussianParams::new(0.9, c(0.3, 0.2), -0.2);
        let family = WitnessFamily::cat(alpha, ParitySign::Even);
        let analytic = cat_conjugated_matrix(&params, &family, dim).unwrap();
        let (a, ad) = build_ladder(dim).unwrap();
        let eye = DMatrix::<C64>::identity(dim, dim);
        let quad = (&ad * &ad - &eye * alpha.conj() * alpha.conj())
            * (&a * &a - &eye * alpha * alpha);
        let bare = quad + (&eye - parity_matrix(dim).unwrap());
        let g = gaussian_unitary_oracle(&params, 0.0, dim).unwrap();
        let brute = g.adjoint() * bare * g;
        let worst = leading_block_deviation(&analytic, &brute, block);
        assert!(worst < 1e-7, "cat conjugation deviation {worst:.3e}");
    }

    #[test]
    fn fock_identity_matrix() {
        let family = WitnessFamily::fock(2);
        let m = fock_conjugated_matrix(&GaussianParams::identity(), &family, 4).unwrap();
        for (i, want) in [4.0, 1.0, 0.0, 1.0].into_iter().enumerate() {
            assert_abs_diff_eq!(m[(i, i)].re, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn squeezed_vacuum_photon_number() {
        // F coefficient of the conjugated number form is sinh^2 r at z = 0.
        let params = GaussianParams::new(0.0, C64::default(), 0.6);
        let form = number_conjugated_form(&params);
        assert_abs_diff_eq!(form.f.re, 0.6_f64.sinh().powi(2), epsilon = 1e-13);
        let m = realize_quadratic(&form, 3).unwrap();
        assert_abs_diff_eq!(m[(0, 0)].re, 0.6_f64.sinh().powi(2), epsilon = 1e-13);
    }

    #[test]
    fn fock_matches_brute_force_conjugation() {
        let dim = 160;
        let block = 40;
        let params = GaussianParams::new(0.0, c(-0.5, 0.35), 0.3);
        let family = WitnessFamily::fock(3);
        let analytic = fock_conjugated_matrix(&params, &family, dim).unwrap();
        let (a, ad) = build_ladder(dim).unwrap();
        let shifted = &ad * &a - DMatrix::<C64>::identity(dim, dim) * c(3.0, 0.0);
        let bare = &shifted * &shifted;
        let g = gaussian_unitary_oracle(&params, 0.0, dim).unwrap();
        let brute = g.adjoint() * bare * g;
        let worst = leading_block_deviation(&analytic, &brute, block);
        assert!(worst < 1e-7, "fock conjugation deviation {worst:.3e}");
    }

    #[test]
    fn fock_conjugation_ignores_phase() {
        let family = WitnessFamily::fock(2);
        let z = c(0.4, -0.7);
        let m0 = fock_conjugated_matrix(&GaussianParams::new(0.0, z, 0.5), &family, 24).unwrap();
        let m1 = fock_conjugated_matrix(&GaussianParams::new(1.3, z, 0.5), &family, 24).unwrap();
        assert_abs_diff_eq!((m0 - m1).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn surrogate_with_zero_shift_is_plain_square() {
        let form = cubic_conjugated_form(&GaussianParams::identity());
        let a = surrogate_matrix(&form, 0.0, 16).unwrap();
        let b = realize_quartic(&square_quadratic(&form), 16).unwrap();
        assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 0.0);
    }

    #[test]
    fn surrogate_of_number_operator() {
        let form = QuadraticForm::hermitian(1.0, C64::default(), C64::default(), 0.0);
        let m = surrogate_matrix(&form, 1.0, 3).unwrap();
        for (i, want) in [1.0, 0.0, 1.0].into_iter().enumerate() {
            assert_abs_diff_eq!(m[(i, i)].re, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn conjugation_preserves_low_spectrum() {
        // Unitary conjugation preserves the spectrum; exact-entry
        // realizations reproduce the bottom eigenvalue at large truncation
        // for bounded-below witnesses.
        let family = WitnessFamily::fock(1);
        let dim = 220;
        let at_identity = fock_conjugated_matrix(&GaussianParams::identity(), &family, dim)
            .unwrap()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let params = GaussianParams::new(0.0, c(0.5, -0.2), 0.3);
        let moved = fock_conjugated_matrix(&params, &family, dim)
            .unwrap()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert!((at_identity - moved).abs() < 1e-4, "{at_identity} vs {moved}");
    }
}

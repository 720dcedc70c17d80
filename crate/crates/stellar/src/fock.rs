//! Exact operator matrices on a truncated Fock space.
//!
//! Ladder monomials are banded, so every stored entry of a truncated product
//! of ladder matrices equals the infinite-dimensional matrix element: the
//! intermediate Fock levels of a normal-ordered monomial never exceed the
//! entry's row or column index. Displacement matrix elements are computed
//! per entry from the associated-Laguerre closed form, which carries no
//! truncation error at all; matrix exponentials of the generators serve as
//! an independent brute-force oracle in tests.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian::GaussianParams;
use crate::C64;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidDimension { dim, reason: "dimension must be positive" });
    }
    Ok(())
}

/// Annihilation and creation matrices at truncation `dim`.
///
/// The annihilation matrix has entries sqrt(n) at position (n-1, n); the
/// creation matrix is its conjugate transpose.
pub fn build_ladder(dim: usize) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    check_dim(dim)?;
    let mut lower = DMatrix::<C64>::zeros(dim, dim);
    for n in 1..dim {
        lower[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    let raise = lower.adjoint();
    Ok((lower, raise))
}

/// The fifteen ladder monomials spanning squared quadratic forms.
///
/// Mixed monomials are ordered as printed: `NA` is the product n * a,
/// `AdN` is a^dag * n, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonomialTag {
    One,
    N,
    N2,
    A,
    A2,
    A3,
    A4,
    Ad,
    Ad2,
    Ad3,
    Ad4,
    NA,
    NA2,
    AdN,
    Ad2N,
}

impl MonomialTag {
    pub const ALL: [MonomialTag; 15] = [
        MonomialTag::One,
        MonomialTag::N,
        MonomialTag::N2,
        MonomialTag::A,
        MonomialTag::A2,
        MonomialTag::A3,
        MonomialTag::A4,
        MonomialTag::Ad,
        MonomialTag::Ad2,
        MonomialTag::Ad3,
        MonomialTag::Ad4,
        MonomialTag::NA,
        MonomialTag::NA2,
        MonomialTag::AdN,
        MonomialTag::Ad2N,
    ];
}

/// Matrix realization of each monomial as the literal product of ladder
/// matrices at truncation `dim`.
pub fn build_monomials(dim: usize) -> Result<BTreeMap<MonomialTag, DMatrix<C64>>> {
    check_dim(dim)?;
    let (a, ad) = build_ladder(dim)?;
    let n = &ad * &a;
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let a4 = &a3 * &a;
    let ad2 = &ad * &ad;
    let ad3 = &ad2 * &ad;
    let ad4 = &ad3 * &ad;
    let mut map = BTreeMap::new();
    map.insert(MonomialTag::One, DMatrix::<C64>::identity(dim, dim));
    map.insert(MonomialTag::N2, &n * &n);
    map.insert(MonomialTag::NA, &n * &a);
    map.insert(MonomialTag::NA2, &n * &a2);
    map.insert(MonomialTag::AdN, &ad * &n);
    map.insert(MonomialTag::Ad2N, &ad2 * &n);
    map.insert(MonomialTag::N, n);
    map.insert(MonomialTag::A, a);
    map.insert(MonomialTag::A2, a2);
    map.insert(MonomialTag::A3, a3);
    map.insert(MonomialTag::A4, a4);
    map.insert(MonomialTag::Ad, ad);
    map.insert(MonomialTag::Ad2, ad2);
    map.insert(MonomialTag::Ad3, ad3);
    map.insert(MonomialTag::Ad4, ad4);
    Ok(map)
}

/// ln(|L|) and sign of the associated Laguerre polynomial L_k^{(a)}(x),
/// computed by the three-term recurrence with periodic rescaling so that
/// intermediate values never overflow.
fn laguerre_ln(k: usize, a: f64, x: f64) -> (f64, f64) {
    const LN_RESCALE: f64 = 280.0 * std::f64::consts::LN_10;
    const RESCALE_HI: f64 = 1e280;
    const RESCALE_LO: f64 = 1e-280;
    let mut prev = 1.0_f64;
    let mut scale_ln = 0.0_f64;
    if k == 0 {
        return (1.0, 0.0);
    }
    let mut curr = 1.0 + a - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * curr - (jf + a) * prev) / (jf + 1.0);
        prev = curr;
        curr = next;
        let mag = curr.abs().max(prev.abs());
        if mag > RESCALE_HI {
            prev *= RESCALE_LO;
            curr *= RESCALE_LO;
            scale_ln += LN_RESCALE;
        } else if mag > 0.0 && mag < RESCALE_LO {
            prev *= RESCALE_HI;
            curr *= RESCALE_HI;
            scale_ln -= LN_RESCALE;
        }
    }
    if curr == 0.0 {
        (0.0, f64::NEG_INFINITY)
    } else {
        (curr.signum(), curr.abs().ln() + scale_ln)
    }
}

/// Matrix elements of the displacement operator D(alpha) at truncation
/// `dim`, via the associated-Laguerre closed form with the Gaussian
/// prefactor exp(-|alpha|^2 / 2).
///
/// Every entry is an exact infinite-dimensional matrix element; the matrix
/// is unitary up to the truncation tail of its columns. Magnitudes are
/// assembled in log space, so large |alpha| underflows to zero gracefully
/// instead of overflowing through the factorial ratios.
pub fn displacement_matrix(alpha: C64, dim: usize) -> Result<DMatrix<C64>> {
    check_dim(dim)?;
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::NumericOverflow(format!("displacement amplitude {alpha} is not finite")));
    }
    if alpha == C64::default() {
        return Ok(DMatrix::identity(dim, dim));
    }
    let x = alpha.norm_sqr();
    let ln_abs = alpha.norm().ln();
    let arg = alpha.arg();
    let mut lnfact = vec![0.0_f64; dim];
    for n in 1..dim {
        lnfact[n] = lnfact[n - 1] + (n as f64).ln();
    }
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for row in 0..dim {
        for col in 0..dim {
            let lo = row.min(col);
            let hi = row.max(col);
            let d = (hi - lo) as f64;
            let (sign, ln_lag) = laguerre_ln(lo, d, x);
            let ln_mag = ln_lag + d * ln_abs - 0.5 * (lnfact[hi] - lnfact[lo]) - 0.5 * x;
            if ln_mag > 1.0 {
                // |<m|D|n>| <= 1 exactly; anything larger is a numeric fault.
                return Err(Error::NumericOverflow(format!(
                    "displacement element ({row},{col}) overflowed for |alpha|^2 = {x:.3e}; \
                     reduce |alpha| or raise precision"
                )));
            }
            let mag = sign * ln_mag.exp();
            let phase_arg = if row >= col { d * arg } else { d * (std::f64::consts::PI - arg) };
            m[(row, col)] = C64::from_polar(1.0, phase_arg) * mag;
        }
    }
    Ok(m)
}

/// Parity operator: diagonal with entries (-1)^n, i.e. the phase shift F(pi).
pub fn parity_matrix(dim: usize) -> Result<DMatrix<C64>> {
    check_dim(dim)?;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for n in 0..dim {
        m[(n, n)] = C64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Ok(m)
}

/// Phase-shift operator F(theta) = exp(i theta n), the exact exponential of
/// its diagonal generator.
pub fn phase_shift_matrix(theta: f64, dim: usize) -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for n in 0..dim {
        m[(n, n)] = C64::from_polar(1.0, theta * n as f64);
    }
    m
}

/// Dense matrix exponential of an anti-Hermitian generator, through the
/// eigendecomposition of the Hermitian matrix i * generator.
pub fn unitary_exp(generator: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let n = generator.nrows();
    if n != generator.ncols() {
        return Err(Error::ContractViolation("generator must be square".into()));
    }
    let scale = generator.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let defect = (generator + generator.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if defect > 1e-10 * scale {
        return Err(Error::ContractViolation(format!(
            "generator is not anti-Hermitian (defect {defect:.3e})"
        )));
    }
    let h = generator.map(|c| c * C64::i());
    let eig = nalgebra::SymmetricEigen::new(h);
    let phases =
        DVector::from_iterator(n, eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, -l)));
    let vecs = eig.eigenvectors;
    let mut scaled = vecs.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    Ok(scaled * vecs.adjoint())
}

/// Brute-force realization of the Gaussian unitary
/// `G = F(vartheta) D(z) S(r) F(theta)` as the ordered product of the four
/// elementary matrix exponentials at truncation `dim`.
///
/// Truncating the generators corrupts the upper Fock levels, so comparisons
/// against this matrix must restrict to a leading block well below `dim`.
pub fn gaussian_unitary_oracle(
    params: &GaussianParams,
    theta: f64,
    dim: usize,
) -> Result<DMatrix<C64>> {
    check_dim(dim)?;
    let (a, ad) = build_ladder(dim)?;
    let disp_gen = &ad * params.z - &a * params.z.conj();
    let disp = unitary_exp(&disp_gen)?;
    let sq_gen = (&a * &a - &ad * &ad) * C64::new(params.r / 2.0, 0.0);
    let squeeze = unitary_exp(&sq_gen)?;
    let outer = phase_shift_matrix(params.vartheta, dim);
    let inner = phase_shift_matrix(theta, dim);
    Ok(outer * disp * squeeze * inner)
}

/// Fock-basis coefficients of the coherent state |alpha>, truncated at `dim`.
pub fn coherent_state(alpha: C64, dim: usize) -> DVector<C64> {
    let mut v = DVector::<C64>::zeros(dim);
    let mut amp = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..dim {
        v[n] = amp;
        amp *= alpha / C64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    v
}

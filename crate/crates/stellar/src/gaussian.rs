//! Normal-ordered quadratic polynomials in the ladder operators, their
//! symbolic squares, and dense matrix realizations.
//!
//! A transformed quadratic operator is written as
//!
//! ```text
//! Q' = A n + B a^2 + C a^dag^2 + D a + E a^dag + F
//! ```
//!
//! and its square expands over a fixed basis of fifteen monomials (see
//! [`QuarticCoefficients`]). Both expansions are realized on a truncated
//! Fock space by filling the corresponding bands directly; the band values
//! agree with literal products of truncated ladder matrices because every
//! monomial in the basis only visits intermediate Fock levels between its
//! row and column index.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Parameters (vartheta, z, r) of a Gaussian unitary
/// `G = F(vartheta) D(z) S(r)` after absorbing the rightmost phase shift
/// into the eigen-decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    /// Phase-shift angle in radians.
    pub vartheta: f64,
    /// Complex displacement amplitude.
    pub z: C64,
    /// Signed squeezing rate; mu = cosh r, nu = sinh r.
    pub r: f64,
}

impl GaussianParams {
    pub fn new(vartheta: f64, z: C64, r: f64) -> Self {
        Self { vartheta, z, r }
    }

    /// Identity operation: all generators zero.
    pub fn identity() -> Self {
        Self::new(0.0, C64::new(0.0, 0.0), 0.0)
    }

    /// cosh of the squeezing rate.
    pub fn mu(&self) -> f64 {
        self.r.cosh()
    }

    /// sinh of the squeezing rate.
    pub fn nu(&self) -> f64 {
        self.r.sinh()
    }

    /// Phase factor g = exp(i vartheta).
    pub fn g(&self) -> C64 {
        C64::from_polar(1.0, self.vartheta)
    }

    pub fn is_finite(&self) -> bool {
        self.vartheta.is_finite() && self.z.re.is_finite() && self.z.im.is_finite() && self.r.is_finite()
    }
}

/// Coefficients of a normal-ordered quadratic polynomial
/// `A n + B a^2 + C a^dag^2 + D a + E a^dag + F`.
///
/// The represented operator is Hermitian iff `A`, `F` are real, `C = conj(B)`
/// and `E = conj(D)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub e: C64,
    pub f: C64,
}

impl QuadraticForm {
    pub fn new(a: C64, b: C64, c: C64, d: C64, e: C64, f: C64) -> Self {
        Self { a, b, c, d, e, f }
    }

    /// Build a Hermitian form from its independent coefficients; the
    /// conjugate pairs are filled in exactly.
    pub fn hermitian(a: f64, b: C64, d: C64, f: f64) -> Self {
        Self {
            a: C64::new(a, 0.0),
            b,
            c: b.conj(),
            d,
            e: d.conj(),
            f: C64::new(f, 0.0),
        }
    }

    /// Largest deviation from the Hermiticity conditions.
    pub fn hermiticity_defect(&self) -> f64 {
        let pair = |x: C64, y: C64| (x - y.conj()).norm();
        self.a.im.abs().max(self.f.im.abs()).max(pair(self.c, self.b)).max(pair(self.e, self.d))
    }

    fn coeff_scale(&self) -> f64 {
        [self.a, self.b, self.c, self.d, self.e, self.f]
            .iter()
            .map(|c| c.norm())
            .fold(1.0, f64::max)
    }

    /// Hermiticity check at 1e-12 relative to the coefficient scale.
    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= 1e-12 * self.coeff_scale()
    }

    /// Shift the constant coefficient by `-lambda`, as in the surrogate
    /// operator `(Q - lambda)^2`.
    pub fn shifted(&self, lambda: f64) -> Self {
        let mut out = *self;
        out.f -= C64::new(lambda, 0.0);
        out
    }

    /// Scale every coefficient by a real factor.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
            e: self.e * s,
            f: self.f * s,
        }
    }
}

/// Coefficients of a quartic polynomial over the monomial basis
/// `1, n, n^2, a, a^2, a^3, a^4, a^dag, a^dag^2, a^dag^3, a^dag^4,
/// n a, n a^2, a^dag n, a^dag^2 n`,
/// with every monomial realized as the product of ladder matrices in
/// printed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoefficients {
    pub one: C64,
    pub n: C64,
    pub n2: C64,
    pub a: C64,
    pub a2: C64,
    pub a3: C64,
    pub a4: C64,
    pub ad: C64,
    pub ad2: C64,
    pub ad3: C64,
    pub ad4: C64,
    pub na: C64,
    pub na2: C64,
    pub adn: C64,
    pub ad2n: C64,
}

impl QuarticCoefficients {
    /// Largest deviation from the conjugate-pair conditions that hold for
    /// squares of Hermitian forms.
    pub fn pairing_defect(&self) -> f64 {
        let pair = |x: C64, y: C64| (x - y.conj()).norm();
        [
            self.one.im.abs(),
            self.n.im.abs(),
            self.n2.im.abs(),
            pair(self.ad, self.a),
            pair(self.ad2, self.a2),
            pair(self.ad3, self.a3),
            pair(self.ad4, self.a4),
            pair(self.adn, self.na),
            pair(self.ad2n, self.na2),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn coeff_scale(&self) -> f64 {
        [
            self.one, self.n, self.n2, self.a, self.a2, self.a3, self.a4, self.ad, self.ad2,
            self.ad3, self.ad4, self.na, self.na2, self.adn, self.ad2n,
        ]
        .iter()
        .map(|c| c.norm())
        .fold(1.0, f64::max)
    }

    pub fn is_conjugate_paired(&self) -> bool {
        self.pairing_defect() <= 1e-11 * self.coeff_scale()
    }
}

/// Expand the square of a quadratic form over the quartic monomial basis.
///
/// The coefficient of each monomial is a fixed polynomial in the quadratic
/// coefficients `A..F`; the full set is
///
/// ```text
/// 1:        F^2 + DE + 2BC          a^dag:     AE + 2(CD + EF)
/// n:        2(AF + DE + BC)         a^dag^2:   E^2 + 2C(A + F)
/// n^2:      A^2 + 2BC               a^dag^3:   2CE
/// a:        AD + 2(BE + DF)         a^dag^4:   C^2
/// a^2:      D^2 + 2B(A + F)         n a:       2(AD + BE)
/// a^3:      2BD                     n a^2:     2AB
/// a^4:      B^2                     a^dag n:   2(AE + CD)
///                                   a^dag^2 n: 2AC
/// ```
pub fn square_quadratic(form: &QuadraticForm) -> QuarticCoefficients {
    let QuadraticForm { a, b, c, d, e, f } = *form;
    QuarticCoefficients {
        one: f * f + d * e + 2.0 * b * c,
        n: 2.0 * (a * f + d * e + b * c),
        n2: a * a + 2.0 * b * c,
        a: a * d + 2.0 * (b * e + d * f),
        a2: d * d + 2.0 * b * (a + f),
        a3: 2.0 * b * d,
        a4: b * b,
        ad: a * e + 2.0 * (c * d + e * f),
        ad2: e * e + 2.0 * c * (a + f),
        ad3: 2.0 * c * e,
        ad4: c * c,
        na: 2.0 * (a * d + b * e),
        na2: 2.0 * a * b,
        adn: 2.0 * (a * e + c * d),
        ad2n: 2.0 * a * c,
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidDimension { dim, reason: "dimension must be positive" });
    }
    Ok(())
}

/// Realize a Hermitian quadratic form as a dense matrix at truncation `dim`.
pub fn realize_quadratic(form: &QuadraticForm, dim: usize) -> Result<DMatrix<C64>> {
    check_dim(dim)?;
    if !form.is_hermitian() {
        return Err(Error::ContractViolation(format!(
            "quadratic form is not Hermitian (defect {:.3e})",
            form.hermiticity_defect()
        )));
    }
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for row in 0..dim {
        m[(row, row)] = form.f + form.a * (row as f64);
    }
    for row in 0..dim.saturating_sub(1) {
        let s1 = ((row + 1) as f64).sqrt();
        m[(row, row + 1)] = form.d * s1;
        m[(row + 1, row)] = form.e * s1;
    }
    for row in 0..dim.saturating_sub(2) {
        let s12 = ((row + 1) as f64).sqrt() * ((row + 2) as f64).sqrt();
        m[(row, row + 2)] = form.b * s12;
        m[(row + 2, row)] = form.c * s12;
    }
    Ok(m)
}

/// Realize a conjugate-paired quartic coefficient set as a dense matrix at
/// truncation `dim`.
pub fn realize_quartic(coeffs: &QuarticCoefficients, dim: usize) -> Result<DMatrix<C64>> {
    check_dim(dim)?;
    if !coeffs.is_conjugate_paired() {
        return Err(Error::ContractViolation(format!(
            "quartic coefficients violate conjugate pairing (defect {:.3e})",
            coeffs.pairing_defect()
        )));
    }
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for row in 0..dim {
        let rn = row as f64;
        m[(row, row)] = coeffs.one + coeffs.n * rn + coeffs.n2 * (rn * rn);
    }
    for row in 0..dim.saturating_sub(1) {
        let rn = row as f64;
        let s1 = ((row + 1) as f64).sqrt();
        m[(row, row + 1)] = coeffs.a * s1 + coeffs.na * (rn * s1);
        m[(row + 1, row)] = coeffs.ad * s1 + coeffs.adn * (rn * s1);
    }
    for row in 0..dim.saturating_sub(2) {
        let rn = row as f64;
        let s12 = ((row + 1) as f64).sqrt() * ((row + 2) as f64).sqrt();
        m[(row, row + 2)] = coeffs.a2 * s12 + coeffs.na2 * (rn * s12);
        m[(row + 2, row)] = coeffs.ad2 * s12 + coeffs.ad2n * (rn * s12);
    }
    for row in 0..dim.saturating_sub(3) {
        let s123 =
            ((row + 1) as f64).sqrt() * ((row + 2) as f64).sqrt() * ((row + 3) as f64).sqrt();
        m[(row, row + 3)] = coeffs.a3 * s123;
        m[(row + 3, row)] = coeffs.ad3 * s123;
    }
    for row in 0..dim.saturating_sub(4) {
        let s1234 = ((row + 1) as f64).sqrt()
            * ((row + 2) as f64).sqrt()
            * ((row + 3) as f64).sqrt()
            * ((row + 4) as f64).sqrt();
        m[(row, row + 4)] = coeffs.a4 * s1234;
        m[(row + 4, row)] = coeffs.ad4 * s1234;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_ladder, build_monomials, MonomialTag};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn zero_form() -> QuadraticForm {
        QuadraticForm::new(
            C64::default(),
            C64::default(),
            C64::default(),
            C64::default(),
            C64::default(),
            C64::default(),
        )
    }

    #[test]
    fn square_of_pure_number_operator() {
        let mut form = zero_form();
        form.a = c(1.0, 0.0);
        let q = square_quadratic(&form);
        assert_eq!(q.n2, c(1.0, 0.0));
        for coeff in [
            q.one, q.n, q.a, q.a2, q.a3, q.a4, q.ad, q.ad2, q.ad3, q.ad4, q.na, q.na2, q.adn,
            q.ad2n,
        ] {
            assert_eq!(coeff, C64::default());
        }
    }

    #[test]
    fn square_of_constant() {
        let mut form = zero_form();
        form.f = c(1.5, 0.0);
        let q = square_quadratic(&form);
        assert_eq!(q.one, c(2.25, 0.0));
        assert_eq!(q.n, C64::default());
        assert_eq!(q.n2, C64::default());
    }

    #[test]
    fn square_mixed_example() {
        // A=2, B=C=1: n^2 -> A^2 + 2BC = 6, a^2 -> 2B(A+F) = 4, a^4 -> B^2 = 1.
        let form = QuadraticForm::new(
            c(2.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            C64::default(),
            C64::default(),
            C64::default(),
        );
        let q = square_quadratic(&form);
        assert_eq!(q.n2, c(6.0, 0.0));
        assert_eq!(q.a2, c(4.0, 0.0));
        assert_eq!(q.a4, c(1.0, 0.0));
        assert_eq!(q.ad2, c(4.0, 0.0));
        assert_eq!(q.ad4, c(1.0, 0.0));
    }

    #[test]
    fn realize_number_operator() {
        let form = QuadraticForm::hermitian(1.0, C64::default(), C64::default(), 0.0);
        let m = realize_quadratic(&form, 3).unwrap();
        for i in 0..3 {
            assert_eq!(m[(i, i)], c(i as f64, 0.0));
        }
    }

    #[test]
    fn realize_quadrature() {
        // D = E = 1 gives a + a^dag = sqrt(2) x.
        let form = QuadraticForm::hermitian(0.0, C64::default(), c(1.0, 0.0), 0.0);
        let m = realize_quadratic(&form, 2).unwrap();
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(1.0, 0.0));
        assert_eq!(m[(0, 0)], C64::default());
    }

    #[test]
    fn realize_rejects_non_hermitian() {
        let mut form = zero_form();
        form.d = c(1.0, 0.0);
        // e left at zero: E != conj(D).
        assert!(matches!(realize_quadratic(&form, 4), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn quartic_of_number_squared() {
        let form = QuadraticForm::hermitian(1.0, C64::default(), C64::default(), 0.0);
        let m = realize_quartic(&square_quadratic(&form), 4).unwrap();
        for (i, want) in [0.0, 1.0, 4.0, 9.0].into_iter().enumerate() {
            assert_eq!(m[(i, i)], c(want, 0.0));
        }
    }

    #[test]
    fn quartic_matches_matrix_square_of_quadrature() {
        // (a + a^dag)^2 = 2 x^2 on the leading block.
        let form = QuadraticForm::hermitian(0.0, C64::default(), c(1.0, 0.0), 0.0);
        let dim = 24;
        let quad = realize_quadratic(&form, dim).unwrap();
        let sq = realize_quartic(&square_quadratic(&form), dim).unwrap();
        let prod = &quad * &quad;
        for i in 0..dim / 2 {
            for j in 0..dim / 2 {
                assert_abs_diff_eq!(sq[(i, j)].re, prod[(i, j)].re, epsilon = 1e-10);
                assert_abs_diff_eq!(sq[(i, j)].im, prod[(i, j)].im, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn realizations_match_monomial_products() {
        // Band-filled realizations agree with explicit sums over the
        // monomial matrices built from ladder products.
        let form = QuadraticForm::hermitian(0.7, c(0.4, -0.2), c(-0.3, 0.9), 1.1);
        let dim = 12;
        let q = square_quadratic(&form);
        let mono = build_monomials(dim).unwrap();
        let mut want = DMatrix::<C64>::zeros(dim, dim);
        for (tag, coeff) in [
            (MonomialTag::One, q.one),
            (MonomialTag::N, q.n),
            (MonomialTag::N2, q.n2),
            (MonomialTag::A, q.a),
            (MonomialTag::A2, q.a2),
            (MonomialTag::A3, q.a3),
            (MonomialTag::A4, q.a4),
            (MonomialTag::Ad, q.ad),
            (MonomialTag::Ad2, q.ad2),
            (MonomialTag::Ad3, q.ad3),
            (MonomialTag::Ad4, q.ad4),
            (MonomialTag::NA, q.na),
            (MonomialTag::NA2, q.na2),
            (MonomialTag::AdN, q.adn),
            (MonomialTag::Ad2N, q.ad2n),
        ] {
            want += &mono[&tag] * coeff;
        }
        let got = realize_quartic(&q, dim).unwrap();
        assert_abs_diff_eq!((got - want).norm(), 0.0, epsilon = 1e-12);

        let (lower, raise) = build_ladder(dim).unwrap();
        let n_mat = &raise * &lower;
        let want_quad = &n_mat * form.a
            + &lower * &lower * form.b
            + &raise * &raise * form.c
            + &lower * form.d
            + &raise * form.e
            + DMatrix::<C64>::identity(dim, dim) * form.f;
        let got_quad = realize_quadratic(&form, dim).unwrap();
        assert_abs_diff_eq!((got_quad - want_quad).norm(), 0.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn scaling_is_quadratic(
            s in -3.0f64..3.0,
            are in -2.0f64..2.0,
            bre in -2.0f64..2.0,
            bim in -2.0f64..2.0,
            dre in -2.0f64..2.0,
            dim_ in -2.0f64..2.0,
            fre in -2.0f64..2.0,
        ) {
            let form = QuadraticForm::hermitian(are, c(bre, bim), c(dre, dim_), fre);
            let q1 = square_quadratic(&form.scaled(s));
            let q0 = square_quadratic(&form);
            prop_assert!((q1.n2 - q0.n2 * s * s).norm() < 1e-9);
            prop_assert!((q1.a - q0.a * s * s).norm() < 1e-9);
            prop_assert!((q1.one - q0.one * s * s).norm() < 1e-9);
            prop_assert!((q1.ad2n - q0.ad2n * s * s).norm() < 1e-9);
        }

        #[test]
        fn hermitian_forms_square_to_paired_coefficients(
            are in -2.0f64..2.0,
            bre in -2.0f64..2.0,
            bim in -2.0f64..2.0,
            dre in -2.0f64..2.0,
            dim_ in -2.0f64..2.0,
            fre in -2.0f64..2.0,
        ) {
            let form = QuadraticForm::hermitian(are, c(bre, bim), c(dre, dim_), fre);
            let q = square_quadratic(&form);
            prop_assert!(q.is_conjugate_paired());
        }
    }
}

//! Hermitian matrix functional calculus.
//!
//! `f(A) = U diag(f(λ_i)) U†` through a spectral decomposition, together with
//! Loewner-order comparison, commuting-pair construction and the PSD-safe
//! inverse and square root that the operator inequalities are built from.
//! Every matrix returned by the calculus is re-hermitized.

mod exchange;
mod jacobi;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FunctionSpec;

pub use exchange::{read_matrix, write_matrix, ExchangeMatrix};
pub use jacobi::MAX_SWEEPS;

pub type CMatrix = DMatrix<Complex64>;

/// Hermiticity slack accepted by [`HermitianMatrix::new`], relative to the max-norm.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Relative eigenvalue floor below which [`psd_inverse`] reports singularity by default.
pub const INVERSE_FLOOR_FACTOR: f64 = 1e-10;
/// Negative eigenvalues down to `-PSD_CLAMP * ‖A‖` are clamped to zero by [`psd_sqrt`].
pub const PSD_CLAMP: f64 = 1e-12;
/// `‖AB - BA‖ <= COMMUTATION_TOLERANCE ‖A‖ ‖B‖` (max-norms) counts as commuting.
pub const COMMUTATION_TOLERANCE: f64 = 1e-9;
pub const UNITARY_TOLERANCE: f64 = 1e-10;

pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn check_square_finite(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Err(Error::Dimension("matrix is empty".into()));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Domain("matrix entries must be finite".into()));
    }
    Ok(())
}

fn check_same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!("{}x{0} vs {}x{1}", a.dim(), b.dim())));
    }
    Ok(())
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    m: CMatrix,
}

impl HermitianMatrix {
    /// Accepts a matrix that is already Hermitian up to [`HERMITIAN_TOLERANCE`]
    /// and removes the residual anti-Hermitian part.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square_finite(&m)?;
        let deviation = max_norm(&(&m - m.adjoint()));
        let bound = HERMITIAN_TOLERANCE * max_norm(&m);
        if deviation > bound {
            return Err(Error::NotHermitian { deviation, bound });
        }
        hermitize(&m)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: CMatrix::identity(n, n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self { m: CMatrix::zeros(n, n) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self {
            m: CMatrix::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&v| c64(v)))),
        }
    }

    /// Real symmetric matrix from row-major entries.
    pub fn from_real(n: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::Dimension(format!("expected {} entries, got {}", n * n, rows.len())));
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| c64(rows[i * n + j])))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn max_norm(&self) -> f64 {
        max_norm(&self.m)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.m[(i, i)].re).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { m: &self.m * c64(factor) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self { m: &self.m + &other.m })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self { m: &self.m - &other.m })
    }

    /// `X† H X`.
    pub fn congruence(&self, x: &CMatrix) -> Result<Self> {
        if x.nrows() != self.dim() {
            return Err(Error::Dimension(format!(
                "congruence factor has {} rows, matrix is {}x{1}",
                x.nrows(),
                self.dim()
            )));
        }
        hermitize(&(x.adjoint() * &self.m * x))
    }

    /// `S H S` for Hermitian `S`.
    pub fn sandwich(&self, s: &HermitianMatrix) -> Result<Self> {
        check_same_dim(self, s)?;
        hermitize(&(&s.m * &self.m * &s.m))
    }

    /// Sum of a non-empty slice of same-dimension matrices.
    pub fn sum(items: &[HermitianMatrix]) -> Result<Self> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::Dimension("cannot sum an empty family".into()))?;
        rest.iter().try_fold(first.clone(), |acc, x| acc.add(x))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(spectral_decompose(self)?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> Result<f64> {
        let ev = self.eigenvalues()?;
        Ok(ev[0].abs().max(ev[ev.len() - 1].abs()))
    }
}

/// `(M + M†) / 2`.
pub fn hermitize(m: &CMatrix) -> Result<HermitianMatrix> {
    check_square_finite(m)?;
    let mut h = (m + m.adjoint()) * c64(0.5);
    for i in 0..h.nrows() {
        h[(i, i)].im = 0.0;
    }
    Ok(HermitianMatrix { m: h })
}

/// `A = U diag(λ) U†` with `λ` nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub unitary: CMatrix,
    pub eigenvalues: Vec<f64>,
}

impl SpectralDecomposition {
    /// `U diag(values) U†`, hermitized.
    pub fn compose(&self, values: &[f64]) -> HermitianMatrix {
        let n = self.unitary.nrows();
        let mut scaled = self.unitary.clone();
        for (j, &v) in values.iter().enumerate() {
            for i in 0..n {
                scaled[(i, j)] *= v;
            }
        }
        let m = scaled * self.unitary.adjoint();
        hermitize(&m).expect("composition of finite factors is finite")
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.compose(&self.eigenvalues)
    }

    pub fn map(&self, f: impl Fn(f64) -> Result<f64>) -> Result<HermitianMatrix> {
        let values = self.eigenvalues.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("function image is not finite".into()));
        }
        Ok(self.compose(&values))
    }
}

pub fn spectral_decompose(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let (eigenvalues, unitary) = jacobi::eigh(a.matrix())?;
    Ok(SpectralDecomposition { unitary, eigenvalues })
}

/// Minimum eigenvalue from nalgebra's Hermitian eigensolver; an independent
/// second pass used to confirm borderline findings.
pub fn second_opinion_min_eigenvalue(a: &HermitianMatrix) -> f64 {
    let eig = nalgebra::linalg::SymmetricEigen::new(a.matrix().clone());
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Applies an arbitrary scalar map to the spectrum.
pub fn map_spectrum(a: &HermitianMatrix, f: impl Fn(f64) -> Result<f64>) -> Result<HermitianMatrix> {
    spectral_decompose(a)?.map(f)
}

/// `f(A) = U diag(f(λ_i)) U†`.
pub fn apply_function(f: &FunctionSpec, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    f.validate()?;
    map_spectrum(a, |x| f.eval(x))
}

/// Outcome of a Loewner-order claim, judged on its residual `RHS - LHS`.
///
/// `holds` iff `residual_min_eigenvalue >= -tolerance * scale` with
/// `scale = max(1, residual_norm, operand_scale)`; the operand scale keeps
/// near-equality cases of large matrices from tripping on round-off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub residual_min_eigenvalue: f64,
    pub residual_norm: f64,
    pub scale: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl LoewnerVerdict {
    pub fn from_residual(residual: &HermitianMatrix, operand_scale: f64, tolerance: f64) -> Result<Self> {
        let residual_min_eigenvalue = residual.min_eigenvalue()?;
        let residual_norm = residual.max_norm();
        let scale = 1f64.max(residual_norm).max(operand_scale);
        Ok(Self {
            residual_min_eigenvalue,
            residual_norm,
            scale,
            tolerance,
            holds: residual_min_eigenvalue >= -tolerance * scale,
        })
    }

    /// Verdict on `lhs <= rhs`.
    pub fn compare(lhs: &HermitianMatrix, rhs: &HermitianMatrix, tolerance: f64) -> Result<Self> {
        let residual = rhs.sub(lhs)?;
        Self::from_residual(&residual, lhs.max_norm().max(rhs.max_norm()), tolerance)
    }

    /// Minimum residual eigenvalue divided by the scale.
    pub fn margin(&self) -> f64 {
        self.residual_min_eigenvalue / self.scale
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Self {
            tolerance,
            holds: self.residual_min_eigenvalue >= -tolerance * self.scale,
            ..self
        }
    }
}

/// Verdict on `A <= B`, i.e. `B - A` positive semidefinite.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<LoewnerVerdict> {
    LoewnerVerdict::compare(a, b, tol)
}

pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_norm(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

/// `(U diag(λa) U†, U diag(λb) U†)`.
pub fn make_commuting_pair(
    u: &CMatrix,
    lambda_a: &[f64],
    lambda_b: &[f64],
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    check_square_finite(u)?;
    let n = u.nrows();
    if lambda_a.len() != n || lambda_b.len() != n {
        return Err(Error::Dimension(format!(
            "eigenvalue lists of length {} and {} for a {n}x{n} unitary",
            lambda_a.len(),
            lambda_b.len()
        )));
    }
    let deviation = unitarity_defect(u);
    if deviation > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary { deviation });
    }
    let sd = SpectralDecomposition {
        unitary: u.clone(),
        eigenvalues: Vec::new(),
    };
    Ok((sd.compose(lambda_a), sd.compose(lambda_b)))
}

/// Default singularity floor for [`psd_inverse`]: `1e-10 ‖A‖`.
pub fn default_inverse_floor(a: &HermitianMatrix) -> f64 {
    (INVERSE_FLOOR_FACTOR * a.max_norm()).max(f64::MIN_POSITIVE)
}

/// `A⁻¹` for positive definite `A` with every eigenvalue at least `floor`.
pub fn psd_inverse(a: &HermitianMatrix, floor: f64) -> Result<HermitianMatrix> {
    let sd = spectral_decompose(a)?;
    let min = sd.eigenvalues[0];
    if min < floor {
        return Err(Error::Singular {
            min_eigenvalue: min,
            floor,
        });
    }
    sd.map(|x| Ok(1.0 / x))
}

fn clamped_spectrum(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let mut sd = spectral_decompose(a)?;
    let radius = sd.eigenvalues[0].abs().max(sd.eigenvalues[sd.eigenvalues.len() - 1].abs());
    let min = sd.eigenvalues[0];
    if min < -PSD_CLAMP * radius {
        return Err(Error::NegativeSpectrum { min_eigenvalue: min });
    }
    for v in &mut sd.eigenvalues {
        *v = v.max(0.0);
    }
    Ok(sd)
}

/// Unique PSD square root; tiny negative eigenvalues are clamped to zero.
pub fn psd_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    clamped_spectrum(a)?.map(|x| Ok(x.sqrt()))
}

/// `A^{-1/2}` for positive definite `A`.
pub fn psd_inverse_sqrt(a: &HermitianMatrix, floor: f64) -> Result<HermitianMatrix> {
    let sd = spectral_decompose(a)?;
    let min = sd.eigenvalues[0];
    if min < floor {
        return Err(Error::Singular {
            min_eigenvalue: min,
            floor,
        });
    }
    sd.map(|x| Ok(1.0 / x.sqrt()))
}

/// Requires `A` positive definite (min eigenvalue at least the default floor).
pub fn require_positive_definite(a: &HermitianMatrix, what: &str) -> Result<()> {
    let min = a.min_eigenvalue()?;
    let floor = default_inverse_floor(a);
    if min < floor {
        return Err(Error::Precondition(format!(
            "{what} is not positive definite (min eigenvalue {min:e})"
        )));
    }
    Ok(())
}

/// `‖AB - BA‖` in max-norm.
pub fn commutator_norm(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    check_same_dim(a, b)?;
    Ok(max_norm(&(a.matrix() * b.matrix() - b.matrix() * a.matrix())))
}

pub fn check_commuting(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    let commutator = commutator_norm(a, b)?;
    let bound = COMMUTATION_TOLERANCE * a.max_norm() * b.max_norm();
    if commutator > bound {
        return Err(Error::NonCommuting { commutator, bound });
    }
    Ok(())
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> Result<f64> {
    check_square_finite(m)?;
    let gram = hermitize(&(m.adjoint() * m))?;
    let ev = gram.eigenvalues()?;
    Ok(ev[ev.len() - 1].max(0.0).sqrt())
}

/// Simultaneous eigenbasis of a commuting Hermitian pair with the paired
/// eigenvalues `A = W diag(a) W†`, `B = W diag(b) W†`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrum {
    pub unitary: CMatrix,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Eigenvalues of `A` closer than this (relative to `‖A‖`) share an eigenspace.
const CLUSTER_TOLERANCE: f64 = 1e-9;
/// Off-diagonal leakage of `W† B W` tolerated after block diagonalization.
const JOINT_LEAKAGE_TOLERANCE: f64 = 1e-7;

/// Decomposes `A`, then diagonalizes `B` inside each eigenspace of `A`.
pub fn joint_eigenbasis(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<JointSpectrum> {
    check_commuting(a, b)?;
    let n = a.dim();
    let sd = spectral_decompose(a)?;
    let cluster_gap = CLUSTER_TOLERANCE * a.max_norm().max(f64::MIN_POSITIVE);
    let mut w = CMatrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sd.eigenvalues[end] - sd.eigenvalues[end - 1] <= cluster_gap {
            end += 1;
        }
        let block_basis = sd.unitary.columns(start, end - start).into_owned();
        let block = hermitize(&(block_basis.adjoint() * b.matrix() * &block_basis))?;
        let inner = spectral_decompose(&block)?;
        let rotated = &block_basis * &inner.unitary;
        w.columns_mut(start, end - start).copy_from(&rotated);
        start = end;
    }
    let ad = w.adjoint() * a.matrix() * &w;
    let bd = w.adjoint() * b.matrix() * &w;
    let leak = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .fold(0.0f64, |acc, (i, j)| acc.max(bd[(i, j)].norm()));
    let bound = JOINT_LEAKAGE_TOLERANCE * b.max_norm().max(f64::MIN_POSITIVE);
    if leak > bound {
        return Err(Error::NonCommuting {
            commutator: leak,
            bound,
        });
    }
    Ok(JointSpectrum {
        a: (0..n).map(|i| ad[(i, i)].re).collect(),
        b: (0..n).map(|i| bd[(i, i)].re).collect(),
        unitary: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rot45() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        )
    }

    fn close(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> bool {
        max_norm(&(a.matrix() - b.matrix())) <= tol * 1f64.max(a.max_norm())
    }

    #[test]
    fn hermitize_examples() {
        let id = CMatrix::identity(3, 3);
        assert_eq!(hermitize(&id).unwrap().matrix(), &id);
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let h = hermitize(&m).unwrap();
        let expected = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(0.0, 0.0)]);
        assert_eq!(h.matrix(), &expected);
        // fixed point
        assert_eq!(hermitize(h.matrix()).unwrap(), h);
        assert!(matches!(hermitize(&CMatrix::zeros(2, 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn new_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn decomposition_examples() {
        let sd = spectral_decompose(&HermitianMatrix::diagonal(&[3.0, 1.0])).unwrap();
        assert_eq!(sd.eigenvalues, vec![1.0, 3.0]);
        assert_relative_eq!(sd.unitary[(1, 0)].norm(), 1.0);
        assert_relative_eq!(sd.unitary[(0, 1)].norm(), 1.0);

        let sd = spectral_decompose(&HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap()).unwrap();
        assert_relative_eq!(sd.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(sd.eigenvalues[1], 3.0, epsilon = 1e-14);

        let sd = spectral_decompose(&HermitianMatrix::from_real(2, &[1.0, 2.0, 2.0, 1.0]).unwrap()).unwrap();
        assert_relative_eq!(sd.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(sd.eigenvalues[1], 3.0, epsilon = 1e-14);
        assert!(unitarity_defect(&sd.unitary) < 1e-14);
    }

    #[test]
    fn apply_function_examples() {
        let a = HermitianMatrix::diagonal(&[0.0, 2f64.ln()]);
        let e = apply_function(&FunctionSpec::exp(), &a).unwrap();
        assert!(close(&e, &HermitianMatrix::diagonal(&[1.0, 2.0]), 1e-15));

        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(close(&apply_function(&FunctionSpec::identity(), &a).unwrap(), &a, 1e-14));

        // eigenvectors (1, -1)/√2 for 1 and (1, 1)/√2 for 3: log A = (ln 3 / 2) [[1, 1], [1, 1]]
        let l = apply_function(&FunctionSpec::log(), &a).unwrap();
        let h = 3f64.ln() / 2.0;
        assert!(close(&l, &HermitianMatrix::from_real(2, &[h, h, h, h]).unwrap(), 1e-14));

        let indefinite = HermitianMatrix::from_real(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(matches!(
            apply_function(&FunctionSpec::log(), &indefinite),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn loewner_examples() {
        let v = loewner_leq(&HermitianMatrix::zeros(2), &HermitianMatrix::identity(2), 1e-12).unwrap();
        assert!(v.holds);

        let b = HermitianMatrix::from_real(2, &[2.0, 2.0, 2.0, 2.0]).unwrap();
        let v = loewner_leq(&HermitianMatrix::identity(2), &b, 1e-12).unwrap();
        assert!(!v.holds);
        assert_relative_eq!(v.residual_min_eigenvalue, -1.0, epsilon = 1e-14);

        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 5.0]).unwrap();
        let v = loewner_leq(&a, &a, 1e-12).unwrap();
        assert!(v.holds);
        assert_eq!(v.residual_min_eigenvalue, 0.0);

        assert!(matches!(
            loewner_leq(&a, &HermitianMatrix::identity(3), 1e-12),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn commuting_pair_examples() {
        let (a, b) = make_commuting_pair(&CMatrix::identity(2, 2), &[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(a, HermitianMatrix::diagonal(&[1.0, 2.0]));
        assert_eq!(b, HermitianMatrix::diagonal(&[3.0, 4.0]));

        let (a, b) = make_commuting_pair(&rot45(), &[1.0, 2.0], &[3.0, 4.0]).unwrap();
        // U diag(1,2) U† = [[1.5, -0.5], [-0.5, 1.5]], U diag(3,4) U† = [[3.5, -0.5], [-0.5, 3.5]]
        assert!(close(&a, &HermitianMatrix::from_real(2, &[1.5, -0.5, -0.5, 1.5]).unwrap(), 1e-15));
        assert!(close(&b, &HermitianMatrix::from_real(2, &[3.5, -0.5, -0.5, 3.5]).unwrap(), 1e-15));
        let comm = commutator_norm(&a, &b).unwrap();
        assert!(comm <= 1e-10 * a.max_norm() * b.max_norm());

        let bad = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            make_commuting_pair(&bad, &[1.0, 2.0], &[3.0, 4.0]),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        let floor = 1e-10;
        assert_eq!(psd_inverse(&HermitianMatrix::identity(3), floor).unwrap(), HermitianMatrix::identity(3));
        let inv = psd_inverse(&HermitianMatrix::diagonal(&[2.0, 4.0]), floor).unwrap();
        assert!(close(&inv, &HermitianMatrix::diagonal(&[0.5, 0.25]), 1e-15));

        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let inv = psd_inverse(&a, default_inverse_floor(&a)).unwrap();
        // hand inverse: (1/3) [[2, -1], [-1, 2]]
        let third = 1.0 / 3.0;
        assert!(close(&inv, &HermitianMatrix::from_real(2, &[2.0 * third, -third, -third, 2.0 * third]).unwrap(), 1e-14));
        let prod = a.matrix() * inv.matrix();
        assert!(max_norm(&(prod - CMatrix::identity(2, 2))) < 1e-14);

        assert!(matches!(
            psd_inverse(&HermitianMatrix::diagonal(&[1.0, 0.0]), floor),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        let s = psd_sqrt(&HermitianMatrix::diagonal(&[4.0, 9.0])).unwrap();
        assert!(close(&s, &HermitianMatrix::diagonal(&[2.0, 3.0]), 1e-15));
        assert_eq!(psd_sqrt(&HermitianMatrix::identity(2)).unwrap(), HermitianMatrix::identity(2));

        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let s = psd_sqrt(&a).unwrap();
        let ev = s.eigenvalues().unwrap();
        assert_relative_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 3f64.sqrt(), epsilon = 1e-14);
        assert!(close(&s.sandwich(&HermitianMatrix::identity(2)).unwrap(), &s, 1e-15));
        let sq = hermitize(&(s.matrix() * s.matrix())).unwrap();
        assert!(close(&sq, &a, 1e-14));

        assert!(matches!(
            psd_sqrt(&HermitianMatrix::diagonal(&[1.0, -1e-3])),
            Err(Error::NegativeSpectrum { .. })
        ));
        // within the clamp
        assert!(psd_sqrt(&HermitianMatrix::diagonal(&[1.0, -1e-14])).is_ok());
    }

    #[test]
    fn joint_basis_handles_degenerate_first_matrix() {
        let (a, b) = make_commuting_pair(&rot45(), &[1.0, 1.0], &[2.0, 5.0]).unwrap();
        let js = joint_eigenbasis(&a, &b).unwrap();
        assert_relative_eq!(js.a[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(js.a[1], 1.0, epsilon = 1e-14);
        let mut bs = js.b.clone();
        bs.sort_by(f64::total_cmp);
        assert_relative_eq!(bs[0], 2.0, epsilon = 1e-14);
        assert_relative_eq!(bs[1], 5.0, epsilon = 1e-14);

        let x = HermitianMatrix::from_real(2, &[1.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            joint_eigenbasis(&HermitianMatrix::diagonal(&[1.0, 2.0]), &x),
            Err(Error::NonCommuting { .. })
        ));
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let m = CMatrix::from_diagonal(&DVector::from_vec(vec![c(0.5, 0.0), c(0.0, -2.0)]));
        assert_relative_eq!(operator_norm(&m).unwrap(), 2.0, epsilon = 1e-14);
    }
}

//! Random instances that satisfy each check's hypotheses by construction.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use super::config::GeneratorSpec;
use super::rng::{rng_from_seed, trial_seed, TrialRng};
use crate::error::Result;
use crate::loewner_ineq::MatrixFamily;
use crate::matfun::{
    c64, hermitize, make_commuting_pair, psd_inverse_sqrt, psd_sqrt, default_inverse_floor, CMatrix,
    HermitianMatrix, SpectralDecomposition,
};
use crate::scalar_ineq::SequencePair;
use crate::trace_ineq::DensityMatrix;

/// `n x n` matrix of independent complex normals with `E|z|^2 = std^2`.
pub fn complex_gaussian(rng: &mut TrialRng, n: usize, std: f64) -> CMatrix {
    let s = std / 2f64.sqrt();
    CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(s * re, s * im)
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn random_unitary(rng: &mut TrialRng, n: usize) -> CMatrix {
    let qr = complex_gaussian(rng, n, 1.0).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn uniform_values(rng: &mut TrialRng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

/// `V diag(λ) V†` with Haar `V` and `λ_i` uniform on `[lo, hi]`.
pub fn random_with_spectrum(rng: &mut TrialRng, n: usize, lo: f64, hi: f64) -> HermitianMatrix {
    let values = uniform_values(rng, n, lo, hi);
    let v = random_unitary(rng, n);
    SpectralDecomposition {
        unitary: v,
        eigenvalues: Vec::new(),
    }
    .compose(&values)
}

pub fn random_pd(rng: &mut TrialRng, n: usize, spec: &GeneratorSpec) -> HermitianMatrix {
    random_with_spectrum(rng, n, spec.spectrum_min, spec.spectrum_max)
}

/// `I + Q Q†` with `Q` complex Gaussian of entry scale `1/sqrt(n)`.
pub fn random_expansive(rng: &mut TrialRng, n: usize) -> HermitianMatrix {
    let q = complex_gaussian(rng, n, 1.0 / (n as f64).sqrt());
    hermitize(&(CMatrix::identity(n, n) + &q * q.adjoint())).expect("finite")
}

/// Spectrum uniform on `[spectrum_min, 1]`.
pub fn random_contractive(rng: &mut TrialRng, n: usize, spec: &GeneratorSpec) -> HermitianMatrix {
    random_with_spectrum(rng, n, spec.spectrum_min.min(1.0), 1.0)
}

/// `U diag(s) V` with singular values `s_i` uniform on `[0, 1]`.
pub fn random_contraction(rng: &mut TrialRng, n: usize) -> CMatrix {
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let s = DVector::from_iterator(n, (0..n).map(|_| c64(rng.random_range(0.0..=1.0))));
    u * CMatrix::from_diagonal(&s) * v
}

pub fn random_positive_sequence(rng: &mut TrialRng, n: usize, hi: f64) -> Vec<f64> {
    // (0, hi]
    (0..n).map(|_| hi * (1.0 - rng.random::<f64>())).collect()
}

pub fn random_sequence_pair(rng: &mut TrialRng, n: usize, hi: f64) -> SequencePair {
    let a = random_positive_sequence(rng, n, hi);
    let b = random_positive_sequence(rng, n, hi);
    SequencePair::new(a, b).expect("finite positive entries")
}

pub fn random_commuting_pair(
    rng: &mut TrialRng,
    n: usize,
    spec: &GeneratorSpec,
) -> (HermitianMatrix, HermitianMatrix) {
    let a = uniform_values(rng, n, spec.spectrum_min, spec.spectrum_max);
    let b = uniform_values(rng, n, spec.spectrum_min, spec.spectrum_max);
    let u = random_unitary(rng, n);
    make_commuting_pair(&u, &a, &b).expect("Haar factor is unitary")
}

/// Probability vector from normalized exponentials; with `allow_zeros`
/// some entries are zeroed (at least one stays positive).
pub fn random_probabilities(rng: &mut TrialRng, n: usize, allow_zeros: bool) -> Vec<f64> {
    let mut p: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    if allow_zeros && n > 1 {
        let keep = rng.random_range(0..n);
        for (i, v) in p.iter_mut().enumerate() {
            if i != keep && rng.random_bool(0.2) {
                *v = 0.0;
            }
        }
    }
    let total: f64 = p.iter().sum();
    p.iter().map(|v| v / total).collect()
}

fn density_from(u: &CMatrix, p: &[f64]) -> Result<DensityMatrix> {
    let sd = SpectralDecomposition {
        unitary: u.clone(),
        eigenvalues: Vec::new(),
    };
    DensityMatrix::new(sd.compose(p))
}

pub fn random_density(rng: &mut TrialRng, n: usize) -> Result<DensityMatrix> {
    let p = random_probabilities(rng, n, true);
    let u = random_unitary(rng, n);
    density_from(&u, &p)
}

/// Commuting `(ρ, σ)` where `σ` has full support and `ρ` may not.
pub fn random_density_pair(rng: &mut TrialRng, n: usize) -> Result<(DensityMatrix, DensityMatrix)> {
    let p = random_probabilities(rng, n, true);
    let q = random_probabilities(rng, n, false);
    let u = random_unitary(rng, n);
    Ok((density_from(&u, &p)?, density_from(&u, &q)?))
}

pub fn family_of(
    rng: &mut TrialRng,
    m: usize,
    mut make: impl FnMut(&mut TrialRng) -> HermitianMatrix,
) -> MatrixFamily {
    MatrixFamily::new((0..m).map(|_| make(rng)).collect()).expect("uniform dimension")
}

/// Expansive `A_i` and `B_i = A^{1/2} W_i A^{1/2}` with `Σ W_i = I`, so
/// `Σ B_i = Σ A_i`.
pub fn random_shannon_families(
    rng: &mut TrialRng,
    n: usize,
    m: usize,
    spec: &GeneratorSpec,
) -> Result<(MatrixFamily, MatrixFamily)> {
    let a = family_of(rng, m, |r| random_expansive(r, n));
    let p: Vec<HermitianMatrix> = (0..m).map(|_| random_pd(rng, n, spec)).collect();
    let s = HermitianMatrix::sum(&p)?;
    let s_inv_root = psd_inverse_sqrt(&s, default_inverse_floor(&s))?;
    let a_root = psd_sqrt(&a.sum())?;
    let b = p
        .iter()
        .map(|pi| pi.sandwich(&s_inv_root)?.sandwich(&a_root))
        .collect::<Result<Vec<_>>>()?;
    Ok((a, MatrixFamily::new(b)?))
}

/// Contractive `A_i` and positive definite `B_i`; with a shared eigenbasis
/// when `commuting` is set.
pub fn random_contractive_families(
    rng: &mut TrialRng,
    n: usize,
    m: usize,
    spec: &GeneratorSpec,
    commuting: bool,
) -> (MatrixFamily, MatrixFamily) {
    if commuting {
        let u = random_unitary(rng, n);
        let sd = SpectralDecomposition {
            unitary: u,
            eigenvalues: Vec::new(),
        };
        let lo = spec.spectrum_min.min(1.0);
        let a = (0..m).map(|_| sd.compose(&uniform_values(rng, n, lo, 1.0))).collect();
        let b = (0..m)
            .map(|_| sd.compose(&uniform_values(rng, n, spec.spectrum_min, spec.spectrum_max)))
            .collect();
        (MatrixFamily::new(a).unwrap(), MatrixFamily::new(b).unwrap())
    } else {
        let a = family_of(rng, m, |r| random_contractive(r, n, spec));
        let b = family_of(rng, m, |r| random_pd(r, n, spec));
        (a, b)
    }
}

/// What [`random_instance`] should build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceKind {
    Sequences { n: usize },
    CommutingPair { n: usize },
    Density { n: usize },
    DensityPair { n: usize },
    ExpansiveFamilies { n: usize, m: usize },
    PositiveFamilies { n: usize, m: usize },
    ContractiveFamilies { n: usize, m: usize, commuting: bool },
    ShannonFamilies { n: usize, m: usize },
    Contraction { n: usize },
}

#[derive(Debug, Clone)]
pub enum Instance {
    Sequences(SequencePair),
    CommutingPair(HermitianMatrix, HermitianMatrix),
    Density(DensityMatrix),
    DensityPair(DensityMatrix, DensityMatrix),
    Families(MatrixFamily, MatrixFamily),
    Contraction(CMatrix, HermitianMatrix),
}

/// Instance fully determined by `(seed, index)`.
pub fn random_instance(kind: InstanceKind, spec: &GeneratorSpec, seed: u64, index: u64) -> Result<Instance> {
    let mut rng = rng_from_seed(trial_seed(seed, index, 0));
    let rng = &mut rng;
    Ok(match kind {
        InstanceKind::Sequences { n } => Instance::Sequences(random_sequence_pair(rng, n, 10.0)),
        InstanceKind::CommutingPair { n } => {
            let (a, b) = random_commuting_pair(rng, n, spec);
            Instance::CommutingPair(a, b)
        }
        InstanceKind::Density { n } => Instance::Density(random_density(rng, n)?),
        InstanceKind::DensityPair { n } => {
            let (r, s) = random_density_pair(rng, n)?;
            Instance::DensityPair(r, s)
        }
        InstanceKind::ExpansiveFamilies { n, m } => {
            let a = family_of(rng, m, |r| random_expansive(r, n));
            let b = family_of(rng, m, |r| random_pd(r, n, spec));
            Instance::Families(a, b)
        }
        InstanceKind::PositiveFamilies { n, m } => {
            let a = family_of(rng, m, |r| random_pd(r, n, spec));
            let b = family_of(rng, m, |r| random_pd(r, n, spec));
            Instance::Families(a, b)
        }
        InstanceKind::ContractiveFamilies { n, m, commuting } => {
            let (a, b) = random_contractive_families(rng, n, m, spec, commuting);
            Instance::Families(a, b)
        }
        InstanceKind::ShannonFamilies { n, m } => {
            let (a, b) = random_shannon_families(rng, n, m, spec)?;
            Instance::Families(a, b)
        }
        InstanceKind::Contraction { n } => {
            let c = random_contraction(rng, n);
            Instance::Contraction(c, random_pd(rng, n, spec))
        }
    })
}

//! Validated bipartite density operators and the scalar quantities derived
//! from them.
//!
//! All entropies are in bits.

mod catalog;
mod two_qubit;

pub use catalog::{catalog_members, catalog_state, CatalogName, CATALOG_HELP};
pub use two_qubit::{
    bloch_vector, entanglement_report, local_bloch_form, pauli, EntanglementReport,
    LocalBlochForm,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eigensystem, hermitian_eigenvalues, partial_trace, tensor_product, ComplexMatrix,
    Subsystem, C64, HERMITIAN_TOL,
};

pub const TRACE_TOL: f64 = 1e-9;
/// Eigenvalues in `[-CLIP_TOL, 0)` are rounding and are clipped to zero;
/// anything below is a genuine positivity violation.
pub const CLIP_TOL: f64 = 1e-10;

/// A Hermitian, unit-trace, positive semidefinite operator on `C^dA ⊗ C^dB`.
///
/// Single-system states use `dims = (d, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityOperator {
    /// Validates `matrix` as a state on `dims`.
    ///
    /// Eigenvalues in `[-1e-10, 0)` are clipped to zero and the trace is
    /// renormalized; the error names the first failed check otherwise.
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let side = dims
            .0
            .checked_mul(dims.1)
            .ok_or_else(|| Error::Size(format!("dims {dims:?} overflow")))?;
        if dims.0 == 0 || dims.1 == 0 || !matrix.is_square() || matrix.rows() != side {
            return Err(Error::Shape(format!(
                "state on dims {dims:?} needs a {side}x{side} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::validation("hermiticity", defect));
        }
        let tr = matrix.trace();
        let trace_gap = (tr - C64::new(1.0, 0.0)).norm();
        if trace_gap > TRACE_TOL {
            return Err(Error::validation("trace", trace_gap));
        }
        let herm = matrix.hermitian_part();
        let spectrum = hermitian_eigensystem(&herm)?;
        let min = spectrum.eigenvalues[0];
        if min < -CLIP_TOL {
            return Err(Error::validation("positivity", -min));
        }
        let matrix = if min < 0.0 {
            let total: f64 = spectrum.eigenvalues.iter().map(|&l| l.max(0.0)).sum();
            spectrum.map(|l| l.max(0.0) / total)
        } else {
            herm
        };
        Ok(DensityOperator { matrix, dims })
    }

    /// `|ψ><ψ|` after normalizing `amplitudes`.
    pub fn from_ket(amplitudes: &[C64], dims: (usize, usize)) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::validation("nonzero vector", norm));
        }
        let ket: Vec<C64> = amplitudes.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&ket), dims)
    }

    /// Projects a matrix that is a state up to rounding (e.g. a normalized
    /// conditional state with small probability) onto the nearest state by
    /// clipping negative eigenvalues.
    pub(crate) fn from_rounded(matrix: &ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let spectrum = hermitian_eigensystem(&matrix.hermitian_part())?;
        let total: f64 = spectrum.eigenvalues.iter().map(|&l| l.max(0.0)).sum();
        if total <= 0.0 {
            return Err(Error::validation("positivity", total.abs()));
        }
        Ok(DensityOperator {
            matrix: spectrum.map(|l| l.max(0.0) / total),
            dims,
        })
    }

    /// Wraps the output of a trace-preserving positive map without
    /// re-validating.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix, dims: (usize, usize)) -> Self {
        DensityOperator {
            matrix: matrix.hermitian_part(),
            dims,
        }
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let n = dims.0 * dims.1;
        DensityOperator {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// Total Hilbert-space dimension `dA·dB`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("validated state is Hermitian")
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Reduced state of `keep`, as a single-system state `(d, 1)`.
    pub fn marginal(&self, keep: Subsystem) -> DensityOperator {
        let m = partial_trace(&self.matrix, self.dims, keep).expect("dims checked");
        let d = m.rows();
        DensityOperator::from_channel_output(m, (d, 1))
    }

    /// `U ρ U†` for a unitary `U` on the full space.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::Shape(format!(
                "unitary {}x{} on a state of dimension {}",
                u.rows(),
                u.cols(),
                self.dim()
            )));
        }
        let defect = (&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(self.dim()));
        if defect > 1e-9 {
            return Err(Error::validation("unitarity", defect));
        }
        Ok(Self::from_channel_output(
            self.matrix.conjugate_by(u)?,
            self.dims,
        ))
    }

    /// `self ⊗ other` viewed as a bipartite state on `(dim self, dim other)`.
    pub fn tensor(&self, other: &DensityOperator) -> Result<Self> {
        let m = tensor_product(&self.matrix, &other.matrix)?;
        Ok(Self::from_channel_output(m, (self.dim(), other.dim())))
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, w: f64, other: &DensityOperator) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!(
                "mixing states on {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Domain(format!("mixing weight {w} outside [0, 1]")));
        }
        let m = &self.matrix.scale_real(w) + &other.matrix.scale_real(1.0 - w);
        Ok(Self::from_channel_output(m, self.dims))
    }
}

/// `-Σ λ log2 λ` with `0 log 0 = 0`; values in the clipping window count as 0.
pub fn spectral_entropy(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    spectral_entropy(&rho.eigenvalues())
}

/// Entropy of a Hermitian, unit-trace matrix known to be a state up to rounding.
pub(crate) fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(m)?;
    if ev[0] < -CLIP_TOL {
        return Err(Error::validation("positivity", -ev[0]));
    }
    Ok(spectral_entropy(&ev))
}

/// `h(p) = -p log2 p - (1-p) log2 (1-p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) || p.is_nan() {
        return Err(Error::Domain(format!("binary entropy of {p}")));
    }
    let p = p.clamp(0.0, 1.0);
    Ok(spectral_entropy(&[p, 1.0 - p]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mixedness {
    /// `S(ρ)` in bits.
    VonNeumann,
    /// `1 - Tr ρ²`.
    Linear,
}

impl FromStr for Mixedness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "von-neumann" | "vonNeumann" | "vn" => Ok(Mixedness::VonNeumann),
            "linear" => Ok(Mixedness::Linear),
            other => Err(Error::Usage(format!(
                "unknown mixedness kind `{other}` (expected von-neumann or linear)"
            ))),
        }
    }
}

impl fmt::Display for Mixedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mixedness::VonNeumann => "von-neumann",
            Mixedness::Linear => "linear",
        })
    }
}

pub fn mixedness(rho: &DensityOperator, kind: Mixedness) -> f64 {
    match kind {
        Mixedness::VonNeumann => von_neumann_entropy(rho),
        Mixedness::Linear => 1.0 - rho.purity(),
    }
}

/// `½ ‖ρ - σ‖₁`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dims() != sigma.dims() {
        return Err(Error::Shape(format!(
            "trace distance between states on {:?} and {:?}",
            rho.dims(),
            sigma.dims()
        )));
    }
    let diff = rho.matrix().try_sub(sigma.matrix())?;
    let ev = hermitian_eigenvalues(&diff)?;
    Ok(0.5 * ev.iter().map(|l| l.abs()).sum::<f64>())
}

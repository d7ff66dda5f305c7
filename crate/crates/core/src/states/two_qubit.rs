use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eigensystem, hermitian_eigenvalues, partial_transpose, tensor_product,
    ComplexMatrix, Subsystem, C64,
};

use super::{binary_entropy, DensityOperator};

/// Pauli matrices `σx, σy, σz` for `k = 0, 1, 2`.
pub fn pauli(k: usize) -> ComplexMatrix {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let entries = match k {
        0 => vec![z, one, one, z],
        1 => vec![z, -i, i, z],
        2 => vec![one, z, z, -one],
        _ => panic!("Pauli index {k} out of range"),
    };
    ComplexMatrix::from_row_major(2, 2, entries).expect("2x2")
}

fn require_two_qubits(rho: &DensityOperator) -> Result<()> {
    if rho.dims() != (2, 2) {
        return Err(Error::Shape(format!(
            "two-qubit state required, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// `(Tr ρσx, Tr ρσy, Tr ρσz)` of a single-qubit state.
pub fn bloch_vector(rho: &DensityOperator) -> Result<[f64; 3]> {
    if rho.dim() != 2 {
        return Err(Error::Shape(format!(
            "Bloch vector needs a qubit, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    Ok([0, 1, 2].map(|k| (m * &pauli(k)).trace().re))
}

/// `ρ = ¼(I⊗I + rA·σ⊗I + I⊗rB·σ + Σ T_ij σi⊗σj)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBlochForm {
    pub r_a: [f64; 3],
    pub r_b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl LocalBlochForm {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        let mut m = ComplexMatrix::identity(4);
        for i in 0..3 {
            let si = pauli(i);
            m = &m + &tensor_product(&si, &id).unwrap().scale_real(self.r_a[i]);
            m = &m + &tensor_product(&id, &si).unwrap().scale_real(self.r_b[i]);
            for j in 0..3 {
                let sij = tensor_product(&si, &pauli(j)).unwrap();
                m = &m + &sij.scale_real(self.t[i][j]);
            }
        }
        m.scale_real(0.25)
    }

    /// Singular values of `T`, descending.
    pub fn correlation_singular_values(&self) -> [f64; 3] {
        let t = &self.t;
        let tt = ComplexMatrix::from_fn(3, 3, |i, j| {
            C64::new((0..3).map(|k| t[k][i] * t[k][j]).sum(), 0.0)
        });
        let ev = hermitian_eigenvalues(&tt).expect("TᵀT is symmetric");
        [ev[2], ev[1], ev[0]].map(|l| l.max(0.0).sqrt())
    }

    pub fn local_vectors_vanish(&self, tol: f64) -> bool {
        norm3(&self.r_a) <= tol && norm3(&self.r_b) <= tol
    }
}

pub(crate) fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn local_bloch_form(rho: &DensityOperator) -> Result<LocalBlochForm> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    let id = ComplexMatrix::identity(2);
    let expect = |op: &ComplexMatrix| (m * op).trace().re;
    let mut form = LocalBlochForm {
        r_a: [0.0; 3],
        r_b: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        form.r_a[i] = expect(&tensor_product(&pauli(i), &id)?);
        form.r_b[i] = expect(&tensor_product(&id, &pauli(i))?);
        for j in 0..3 {
            form.t[i][j] = expect(&tensor_product(&pauli(i), &pauli(j))?);
        }
    }
    Ok(form)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    /// Entanglement of formation in bits.
    pub eof: f64,
    pub ppt_min_eigenvalue: f64,
    pub separable_2x2: bool,
}

/// Concurrence, entanglement of formation and the partial-transpose test.
///
/// The concurrence uses the Hermitian route: the square roots of the
/// eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)` are the eigenvalues of
/// `sqrt(√ρ ρ̃ √ρ)`, which only needs the Hermitian eigensolver.
pub fn entanglement_report(rho: &DensityOperator) -> Result<EntanglementReport> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    let yy = tensor_product(&pauli(1), &pauli(1))?;
    let flipped = &(&yy * &m.conj()) * &yy;
    let sqrt_rho = hermitian_eigensystem(m)?.map(|l| l.max(0.0).sqrt());
    let inner = (&(&sqrt_rho * &flipped) * &sqrt_rho).hermitian_part();
    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&inner)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let concurrence = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0);
    let eof = binary_entropy((1.0 + (1.0 - concurrence * concurrence).sqrt()) / 2.0)?;

    let pt = partial_transpose(m, (2, 2), Subsystem::B)?;
    let ppt_min_eigenvalue = hermitian_eigenvalues(&pt)?[0];
    Ok(EntanglementReport {
        concurrence,
        eof,
        ppt_min_eigenvalue,
        separable_2x2: ppt_min_eigenvalue >= -1e-10,
    })
}

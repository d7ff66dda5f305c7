//! Seeded samplers for states and unitaries.
//!
//! Every sampler takes the generator explicitly; [`seeded`] builds the
//! ChaCha8 stream used throughout so that runs are reproducible from a
//! single `u64`.
//!
//! Haar-random SU(2) elements come from a normalized complex Gaussian pair
//! `(a, b)` mapped to `[[a, -b*], [b, a*]]`; larger unitaries come from
//! Gram-Schmidt on a complex Gaussian matrix, i.e. QR with positive diagonal.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::matcore::{tensor_product, tensor_vec, ComplexMatrix, C64};
use crate::states::DensityOperator;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn normalize(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
}

/// Uniformly distributed unit vector in `C^dim`.
pub fn random_ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
    normalize(&mut v);
    v
}

/// Haar-random element of SU(2).
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let v = random_ket(rng, 2);
    let (a, b) = (v[0], v[1]);
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => a,
        (0, 1) => -b.conj(),
        (1, 0) => b,
        _ => a.conj(),
    })
}

/// Haar-random unitary of side `n`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian_complex(rng)).collect();
        for u in &cols {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            normalize(&mut v);
            cols.push(v);
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Uniform point on the probability simplex with `k` vertices.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize)) -> DensityOperator {
    let ket = random_ket(rng, dims.0 * dims.1);
    DensityOperator::from_ket(&ket, dims).expect("unit vector")
}

/// Full-rank state from the Ginibre ensemble, `G G† / Tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize)) -> DensityOperator {
    let n = dims.0 * dims.1;
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityOperator::new(w.scale_real(1.0 / tr), dims).expect("Ginibre state is valid")
}

/// Random mixture of the four Bell projectors.
pub fn random_bell_diagonal<R: Rng + ?Sized>(rng: &mut R) -> DensityOperator {
    let p = random_simplex(rng, 4);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let r = C64::new(h, 0.0);
    let bells = [[r, z, z, r], [r, z, z, -r], [z, r, r, z], [z, r, -r, z]];
    let mut m = ComplexMatrix::zeros(4, 4);
    for (w, ket) in p.iter().zip(bells.iter()) {
        m = &m + &ComplexMatrix::outer(ket).scale_real(*w);
    }
    DensityOperator::new(m, (2, 2)).expect("Bell mixture is valid")
}

/// State diagonal in a random product basis `{|u_i>⊗|v_j>}` with random weights.
pub fn random_classical_product<R: Rng + ?Sized>(
    rng: &mut R,
    dims: (usize, usize),
) -> DensityOperator {
    let ua = haar_unitary(rng, dims.0);
    let ub = haar_unitary(rng, dims.1);
    let p = random_simplex(rng, dims.0 * dims.1);
    let mut m = ComplexMatrix::zeros(dims.0 * dims.1, dims.0 * dims.1);
    for i in 0..dims.0 {
        for j in 0..dims.1 {
            let ket = tensor_vec(&ua.column(i), &ub.column(j));
            m = &m + &ComplexMatrix::outer(&ket).scale_real(p[i * dims.1 + j]);
        }
    }
    DensityOperator::new(m, dims).expect("classical state is valid")
}

/// `UA ⊗ UB` with both factors Haar-random.
pub fn random_local_unitary<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize)) -> ComplexMatrix {
    let (ua, ub) = if dims == (2, 2) {
        (haar_su2(rng), haar_su2(rng))
    } else {
        (haar_unitary(rng, dims.0), haar_unitary(rng, dims.1))
    };
    tensor_product(&ua, &ub).expect("small dims")
}

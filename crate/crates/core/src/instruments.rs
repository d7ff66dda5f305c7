//! Measurements on Alice's side and the states they leave behind.
//!
//! A measurement is a rank-1 POVM `{c_i |v_i><v_i|}`; after outcome `i`
//! Alice holds the pointer `|v_i>` and Bob holds the normalized conditional
//! state. The post-measurement joint state is
//! `Σ (√M_i ⊗ I) ρ (√M_i ⊗ I) = Σ p_i P[v_i] ⊗ ξ_i`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::error::{Error, Result};
use crate::matcore::{partial_trace, tensor_product, ComplexMatrix, Subsystem, C64};
use crate::states::DensityOperator;

pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Outcomes below this probability carry no conditional state.
pub const NULL_OUTCOME_PROB: f64 = 1e-12;

/// Qubit basis `{|e0>, |e1>}` with `|e0> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveQubitBasis {
    theta: f64,
    phi: f64,
}

impl ProjectiveQubitBasis {
    /// Requires `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::Domain(format!(
                "basis angles (θ={theta}, φ={phi}) outside [0,π]×[0,2π)"
            )));
        }
        Ok(ProjectiveQubitBasis { theta, phi })
    }

    /// Maps arbitrary real angles onto the same measurement with
    /// `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn from_any_angles(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        ProjectiveQubitBasis {
            theta,
            phi: wrap_phi(phi),
        }
    }

    /// Same measurement with the pointer labels chosen so that `θ ≤ π/2`.
    pub fn canonical(self) -> Self {
        if self.theta > PI / 2.0 {
            ProjectiveQubitBasis {
                theta: PI - self.theta,
                phi: wrap_phi(self.phi + PI),
            }
        } else {
            self
        }
    }

    pub fn z() -> Self {
        ProjectiveQubitBasis { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn kets(&self) -> [[C64; 2]; 2] {
        basis_kets(self.theta, self.phi)
    }

    /// Bloch direction of `|e0>`.
    pub fn bloch_direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

fn wrap_phi(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Pointer kets for arbitrary real angles; valid for the whole plane.
pub(crate) fn basis_kets(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = C64::from_polar(1.0, phi);
    [
        [C64::new(c, 0.0), e * s],
        [-e.conj() * s, C64::new(c, 0.0)],
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement {
    pub weight: f64,
    /// Unit pointer ket on Alice's space.
    pub pointer: Vec<C64>,
}

impl PovmElement {
    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.pointer).scale_real(self.weight)
    }

    /// Hermitian Kraus operator `√M = √c P[v]`.
    pub fn sqrt_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.pointer).scale_real(self.weight.sqrt())
    }
}

/// Rank-1 POVM on Alice's space of dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOnePovm {
    dim: usize,
    elements: Vec<PovmElement>,
    label: String,
}

impl RankOnePovm {
    /// Normalizes the pointers and checks weights in `(0, 1]` and
    /// completeness `Σ M_i = I` within 1e-9.
    pub fn new(label: impl Into<String>, elements: Vec<(f64, Vec<C64>)>) -> Result<Self> {
        let dim = elements
            .first()
            .map(|(_, v)| v.len())
            .ok_or_else(|| Error::validation("nonempty POVM", 0.0))?;
        if dim == 0 {
            return Err(Error::Shape("POVM pointer of length 0".into()));
        }
        let mut normalized = Vec::with_capacity(elements.len());
        for (weight, pointer) in elements {
            if pointer.len() != dim {
                return Err(Error::Shape(format!(
                    "POVM pointers of lengths {dim} and {}",
                    pointer.len()
                )));
            }
            if !(weight > 0.0 && weight <= 1.0 + 1e-12) {
                return Err(Error::validation("POVM weight in (0,1]", weight));
            }
            let norm = pointer.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                return Err(Error::validation("nonzero pointer", norm));
            }
            normalized.push(PovmElement {
                weight: weight.min(1.0),
                pointer: pointer.iter().map(|z| z / norm).collect(),
            });
        }
        let povm = RankOnePovm {
            dim,
            elements: normalized,
            label: label.into(),
        };
        let gap = povm
            .element_sum()
            .max_abs_diff(&ComplexMatrix::identity(dim));
        if gap > COMPLETENESS_TOL {
            return Err(Error::validation("completeness", gap));
        }
        Ok(povm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn element_sum(&self) -> ComplexMatrix {
        self.elements
            .iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, e| {
                &acc + &e.matrix()
            })
    }
}

/// Two unit-weight elements on the basis pointers.
pub fn basis_to_povm(basis: &ProjectiveQubitBasis) -> RankOnePovm {
    let [e0, e1] = basis.kets();
    RankOnePovm {
        dim: 2,
        elements: vec![
            PovmElement { weight: 1.0, pointer: e0.to_vec() },
            PovmElement { weight: 1.0, pointer: e1.to_vec() },
        ],
        label: format!("projective(theta={}, phi={})", basis.theta(), basis.phi()),
    }
}

/// Weight-½ elements on `|0>, |1>, |+>, |->`.
pub fn four_state_povm() -> RankOnePovm {
    let h = FRAC_1_SQRT_2;
    let k = |a: f64, b: f64| vec![C64::new(a, 0.0), C64::new(b, 0.0)];
    RankOnePovm::new(
        "four-state {|0>,|1>,|+>,|->}",
        vec![
            (0.5, k(1.0, 0.0)),
            (0.5, k(0.0, 1.0)),
            (0.5, k(h, h)),
            (0.5, k(h, -h)),
        ],
    )
    .expect("complete by construction")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalOutcome {
    pub probability: f64,
    pub pointer: Vec<C64>,
    /// `None` for outcomes with probability below 1e-12.
    pub bob_state: Option<DensityOperator>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalEnsemble {
    pub outcomes: Vec<ConditionalOutcome>,
}

impl ConditionalEnsemble {
    /// `Σ p_i P[v_i] ⊗ ξ_i` over the non-null outcomes.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut acc: Option<ComplexMatrix> = None;
        for o in &self.outcomes {
            if let Some(xi) = &o.bob_state {
                let term = tensor_product(&ComplexMatrix::outer(&o.pointer), xi.matrix())
                    .expect("small dims")
                    .scale_real(o.probability);
                acc = Some(match acc {
                    Some(a) => &a + &term,
                    None => term,
                });
            }
        }
        acc.unwrap_or_else(|| ComplexMatrix::zeros(0, 0))
    }
}

fn check_instrument(rho: &DensityOperator, m: &RankOnePovm) -> Result<()> {
    if m.dim() != rho.dims().0 {
        return Err(Error::Shape(format!(
            "instrument on dimension {} applied to Alice's dimension {}",
            m.dim(),
            rho.dims().0
        )));
    }
    Ok(())
}

fn kraus_term(rho: &ComplexMatrix, element: &PovmElement, db: usize) -> ComplexMatrix {
    let k = tensor_product(&element.sqrt_matrix(), &ComplexMatrix::identity(db)).expect("small dims");
    &(&k * rho) * &k
}

/// Outcome probabilities and Bob's normalized conditional states.
pub fn conditional_ensemble(rho: &DensityOperator, m: &RankOnePovm) -> Result<ConditionalEnsemble> {
    check_instrument(rho, m)?;
    let (_, db) = rho.dims();
    let outcomes = m
        .elements()
        .iter()
        .map(|e| {
            let term = kraus_term(rho.matrix(), e, db);
            let probability = term.trace().re;
            let bob_state = if probability >= NULL_OUTCOME_PROB {
                let bob = partial_trace(&term, rho.dims(), Subsystem::B)?;
                Some(DensityOperator::from_rounded(&bob.scale_real(1.0 / probability), (db, 1))?)
            } else {
                None
            };
            Ok(ConditionalOutcome {
                probability,
                pointer: e.pointer.clone(),
                bob_state,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionalEnsemble { outcomes })
}

/// `Σ (√M_i ⊗ I) ρ (√M_i ⊗ I)` as a raw matrix.
pub(crate) fn lueders_matrix(rho: &ComplexMatrix, m: &RankOnePovm, db: usize) -> ComplexMatrix {
    let n = rho.rows();
    m.elements()
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, e| &acc + &kraus_term(rho, e, db))
}

/// Two-qubit projective dephasing at arbitrary real angles; the inner loop
/// of the deficit optimizer.
pub(crate) fn dephase_qubit_basis(rho: &ComplexMatrix, theta: f64, phi: f64) -> ComplexMatrix {
    let kets = basis_kets(theta, phi);
    let n = rho.rows();
    let db = n / 2;
    let mut out = ComplexMatrix::zeros(n, n);
    for ket in &kets {
        // (P ⊗ I) ρ (P ⊗ I) = P ⊗ <v|ρ|v>_B
        let block = ComplexMatrix::from_fn(db, db, |b, b2| {
            let mut s = C64::new(0.0, 0.0);
            for a in 0..2 {
                for a2 in 0..2 {
                    s += ket[a].conj() * rho[(a * db + b, a2 * db + b2)] * ket[a2];
                }
            }
            s
        });
        for a in 0..2 {
            for a2 in 0..2 {
                let p = ket[a] * ket[a2].conj();
                for b in 0..db {
                    for b2 in 0..db {
                        out[(a * db + b, a2 * db + b2)] += p * block[(b, b2)];
                    }
                }
            }
        }
    }
    out
}

/// Post-measurement joint state with Alice's outcome stored in her pointer.
pub fn lueders_dephase(rho: &DensityOperator, m: &RankOnePovm) -> Result<DensityOperator> {
    check_instrument(rho, m)?;
    let out = lueders_matrix(rho.matrix(), m, rho.dims().1);
    Ok(DensityOperator::from_channel_output(out, rho.dims()))
}

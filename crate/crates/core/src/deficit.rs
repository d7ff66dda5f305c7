//! Work quantities and the one-way work deficit.
//!
//! With `n = log2(dA·dB)`, the globally extractable work is `W_t = n - S(ρ)`
//! and the one-way local work after Alice's measurement `m` is
//! `W_l = n - S(ρ')`, `ρ'` being the post-measurement state with Alice's
//! outcome kept in her pointer. The deficit is `Δ = W_t - W_l`, minimized
//! over Alice's projective qubit bases for the optimizer entry point.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instruments::{
    dephase_qubit_basis, lueders_dephase, ProjectiveQubitBasis, RankOnePovm,
};
use crate::random::{random_local_unitary, seeded};
use crate::simplex::{self, SimplexSettings};
use crate::states::{
    binary_entropy, entanglement_report, local_bloch_form, matrix_entropy, mixedness,
    von_neumann_entropy, DensityOperator, Mixedness,
};

/// Grid values within this of the running minimum count as ties; the
/// earlier (lexicographically smaller) grid point wins.
const GRID_TIE_TOL: f64 = 1e-12;
/// Simplex diameter (radians) required alongside the entropy tolerance.
const REFINE_XTOL: f64 = 1e-7;
/// Strict-inequality tolerance for ordering comparisons.
pub const ORDER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    pub n_theta: usize,
    pub n_phi: usize,
    /// Refinement stops once the simplex entropy spread is below this (bits).
    pub tolerance: f64,
    pub max_evaluations: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            n_theta: 64,
            n_phi: 128,
            tolerance: 1e-10,
            max_evaluations: 10_000,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 16 || self.n_phi < 32 {
            return Err(Error::Usage(format!(
                "grid {}x{} too coarse (need at least 16x32)",
                self.n_theta, self.n_phi
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Usage(format!(
                "refinement tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// The measurement attaining a reported deficit.
#[derive(Debug, Clone, PartialEq)]
pub enum Measurement {
    Projective(ProjectiveQubitBasis),
    Povm { label: String, outcomes: usize },
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measurement::Projective(b) => {
                write!(f, "projective(theta={:.9}, phi={:.9})", b.theta(), b.phi())
            }
            Measurement::Povm { label, outcomes } => write!(f, "{label} [{outcomes} outcomes]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerTrace {
    pub evaluations: usize,
    pub final_step: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeficitResult {
    pub delta_bits: f64,
    pub local_work_bits: f64,
    pub total_work_bits: f64,
    pub argmin: Measurement,
    /// `S(ρ')` at the reported measurement.
    pub entropy_after: f64,
    /// `S(ρ)`.
    pub entropy_before: f64,
    pub trace: OptimizerTrace,
}

impl DeficitResult {
    fn new(rho: &DensityOperator, entropy_after: f64, argmin: Measurement, trace: OptimizerTrace) -> Self {
        let n = (rho.dim() as f64).log2();
        let entropy_before = von_neumann_entropy(rho);
        DeficitResult {
            delta_bits: entropy_after - entropy_before,
            local_work_bits: n - entropy_after,
            total_work_bits: n - entropy_before,
            argmin,
            entropy_after,
            entropy_before,
            trace,
        }
    }
}

/// `W_t = log2(dA·dB) - S(ρ)`.
pub fn total_work(rho: &DensityOperator) -> f64 {
    (rho.dim() as f64).log2() - von_neumann_entropy(rho)
}

/// `W_l = log2(dA·dB) - S(ρ')` for a single instrument on Alice's side.
pub fn local_work_one_way(rho: &DensityOperator, m: &RankOnePovm) -> Result<f64> {
    let after = lueders_dephase(rho, m)?;
    Ok((rho.dim() as f64).log2() - von_neumann_entropy(&after))
}

fn require_qubit_alice(rho: &DensityOperator) -> Result<()> {
    if rho.dims().0 != 2 {
        return Err(Error::Shape(format!(
            "projective optimization needs a qubit on Alice's side, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// `S(ρ')` for the basis at arbitrary real angles.
fn entropy_after_basis(rho: &DensityOperator, theta: f64, phi: f64) -> Result<f64> {
    matrix_entropy(&dephase_qubit_basis(rho.matrix(), theta, phi))
}

/// One-way deficit minimized over Alice's projective qubit bases.
///
/// Evaluates `S(ρ')` on a `n_theta × n_phi` grid over `[0,π]×[0,2π)`, then
/// polishes the best grid point with Nelder-Mead. The returned basis is the
/// representative with `θ ≤ π/2`.
pub fn one_way_deficit_projective(
    rho: &DensityOperator,
    settings: &OptimizerSettings,
) -> Result<DeficitResult> {
    require_qubit_alice(rho)?;
    settings.validate()?;
    let (nt, np) = (settings.n_theta, settings.n_phi);
    let dtheta = PI / (nt - 1) as f64;
    let dphi = TAU / np as f64;

    let values = (0..nt * np)
        .into_par_iter()
        .map(|k| entropy_after_basis(rho, (k / np) as f64 * dtheta, (k % np) as f64 * dphi))
        .collect::<Result<Vec<f64>>>()?;
    let mut best_k = 0;
    for (k, &v) in values.iter().enumerate() {
        if v < values[best_k] - GRID_TIE_TOL {
            best_k = k;
        }
    }
    let start = [(best_k / np) as f64 * dtheta, (best_k % np) as f64 * dphi];

    let refine = SimplexSettings {
        ftol: settings.tolerance,
        xtol: REFINE_XTOL,
        max_evaluations: settings.max_evaluations,
    };
    let out = simplex::minimize(
        |x| entropy_after_basis(rho, x[0], x[1]),
        start,
        values[best_k],
        [dtheta, dphi],
        refine,
    )?;
    if !out.converged {
        return Err(Error::NonConvergence {
            evaluations: out.evaluations,
            best_value: out.value,
            best_theta: out.point[0],
            best_phi: out.point[1],
        });
    }
    let basis = ProjectiveQubitBasis::from_any_angles(out.point[0], out.point[1]).canonical();
    Ok(DeficitResult::new(
        rho,
        out.value,
        Measurement::Projective(basis),
        OptimizerTrace {
            evaluations: values.len() + out.evaluations,
            final_step: out.final_step,
            converged: true,
        },
    ))
}

/// Deficit of one fixed instrument, no optimization.
pub fn povm_deficit(rho: &DensityOperator, m: &RankOnePovm) -> Result<DeficitResult> {
    let after = lueders_dephase(rho, m)?;
    Ok(DeficitResult::new(
        rho,
        von_neumann_entropy(&after),
        Measurement::Povm {
            label: m.label().to_string(),
            outcomes: m.elements().len(),
        },
        OptimizerTrace {
            evaluations: 1,
            final_step: 0.0,
            converged: true,
        },
    ))
}

/// Closed form `1 + h((1+t)/2) - S(ρ)` for two-qubit states with vanishing
/// local Bloch vectors, `t` the largest singular value of the correlation
/// matrix.
pub fn bell_diagonal_deficit(rho: &DensityOperator) -> Result<f64> {
    let form = local_bloch_form(rho)?;
    if !form.local_vectors_vanish(1e-9) {
        return Err(Error::Precondition(format!(
            "local Bloch vectors do not vanish (|rA|={:.3e}, |rB|={:.3e})",
            form.r_a.iter().map(|x| x * x).sum::<f64>().sqrt(),
            form.r_b.iter().map(|x| x * x).sum::<f64>().sqrt()
        )));
    }
    let t = form.correlation_singular_values()[0].min(1.0);
    Ok(1.0 + binary_entropy((1.0 + t) / 2.0)? - von_neumann_entropy(rho))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub theta: f64,
    pub phi: f64,
    pub entropy_after: f64,
    pub local_work: f64,
    pub delta: f64,
}

/// Uniform sweep of `θ ∈ [0, π]` (`steps` points, endpoints included) at fixed `φ`.
pub fn deficit_curve(rho: &DensityOperator, phi: f64, steps: usize) -> Result<Vec<CurvePoint>> {
    require_qubit_alice(rho)?;
    if steps < 2 {
        return Err(Error::Usage(format!("curve needs at least 2 steps, got {steps}")));
    }
    let n = (rho.dim() as f64).log2();
    let before = von_neumann_entropy(rho);
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let theta = k as f64 * PI / (steps - 1) as f64;
            let s = entropy_after_basis(rho, theta, phi)?;
            Ok(CurvePoint {
                theta,
                phi,
                entropy_after: s,
                local_work: n - s,
                delta: s - before,
            })
        })
        .collect()
}

/// Angles where `S(ρ')` along the curve's `φ` equals `level`.
///
/// Every sample interval whose endpoints straddle `level` is bisected on the
/// exact objective down to `1e-14` rad.
pub fn level_crossings(rho: &DensityOperator, curve: &[CurvePoint], level: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, w) in curve.windows(2).enumerate() {
        let (ga, gb) = (w[0].entropy_after - level, w[1].entropy_after - level);
        if ga == 0.0 {
            out.push(w[0].theta);
            continue;
        }
        if ga * gb >= 0.0 {
            if gb == 0.0 && i + 2 == curve.len() {
                out.push(w[1].theta);
            }
            continue;
        }
        let (mut lo, mut hi) = (w[0].theta, w[1].theta);
        let mut g_lo = ga;
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            let g = entropy_after_basis(rho, mid, w[0].phi)? - level;
            if g == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (g < 0.0) == (g_lo < 0.0) {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Largest `|Δ(UA⊗UB ρ UA†⊗UB†) - Δ(ρ)|` over `trials` seeded Haar-random
/// local unitaries, re-optimizing each transformed state.
pub fn local_unitary_invariance_check(
    rho: &DensityOperator,
    trials: usize,
    seed: u64,
    settings: &OptimizerSettings,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Usage("invariance check needs at least one trial".into()));
    }
    let base = one_way_deficit_projective(rho, settings)?.delta_bits;
    let mut rng = seeded(seed);
    let unitaries: Vec<_> = (0..trials)
        .map(|_| random_local_unitary(&mut rng, rho.dims()))
        .collect();
    let deviations = unitaries
        .par_iter()
        .map(|u| {
            let moved = rho.conjugate_by(u)?;
            Ok((one_way_deficit_projective(&moved, settings)?.delta_bits - base).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(deviations.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnomalyFlag {
    /// Entanglement and deficit order the pair oppositely.
    EntanglementVsDeficitReversed,
    /// The more mixed state also carries the larger deficit, so mixedness
    /// cannot account for the deficit order.
    DeficitVsMixednessReversed,
    /// Equal entanglement, different deficit.
    EqualEntanglementDeficitDiffers,
}

impl AnomalyFlag {
    pub fn label(&self) -> &'static str {
        match self {
            AnomalyFlag::EntanglementVsDeficitReversed => "E-order-vs-delta-order-reversed",
            AnomalyFlag::DeficitVsMixednessReversed => "delta-order-vs-S-order-reversed",
            AnomalyFlag::EqualEntanglementDeficitDiffers => "E-equal-delta-differs",
        }
    }
}

impl fmt::Display for AnomalyFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn order(x: f64, y: f64) -> Ordering {
    if x - y > ORDER_TOL {
        Ordering::Greater
    } else if y - x > ORDER_TOL {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Flags implied by entanglement `e`, deficit `d` and mixedness `s` of a pair.
pub fn anomaly_flags(e: (f64, f64), d: (f64, f64), s: (f64, f64)) -> Vec<AnomalyFlag> {
    let (oe, od, os) = (order(e.0, e.1), order(d.0, d.1), order(s.0, s.1));
    let mut flags = Vec::new();
    if oe != Ordering::Equal && od != Ordering::Equal && oe != od {
        flags.push(AnomalyFlag::EntanglementVsDeficitReversed);
    }
    if od != Ordering::Equal && os != Ordering::Equal && od == os {
        flags.push(AnomalyFlag::DeficitVsMixednessReversed);
    }
    if oe == Ordering::Equal && od != Ordering::Equal {
        flags.push(AnomalyFlag::EqualEntanglementDeficitDiffers);
    }
    flags
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderingRecord {
    pub state_a: String,
    pub state_b: String,
    /// Entanglement of formation (bits).
    pub e_a: f64,
    pub e_b: f64,
    /// Optimized one-way deficit (bits).
    pub d_a: f64,
    pub d_b: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub mixedness: Mixedness,
    pub flags: Vec<AnomalyFlag>,
}

impl OrderingRecord {
    pub fn recompute_flags(&self) -> Vec<AnomalyFlag> {
        anomaly_flags((self.e_a, self.e_b), (self.d_a, self.d_b), (self.s_a, self.s_b))
    }
}

struct Profile {
    e: f64,
    d: f64,
    s: f64,
}

fn profile(rho: &DensityOperator, kind: Mixedness, settings: &OptimizerSettings) -> Result<Profile> {
    Ok(Profile {
        e: entanglement_report(rho)?.eof,
        d: one_way_deficit_projective(rho, settings)?.delta_bits,
        s: mixedness(rho, kind),
    })
}

/// Compares every state of `family_a` with every state of `family_b`.
pub fn ordering_scan(
    family_a: &[(String, DensityOperator)],
    family_b: &[(String, DensityOperator)],
    kind: Mixedness,
    settings: &OptimizerSettings,
) -> Result<Vec<OrderingRecord>> {
    let profiles = |family: &[(String, DensityOperator)]| {
        family
            .iter()
            .map(|(_, rho)| profile(rho, kind, settings))
            .collect::<Result<Vec<_>>>()
    };
    let pa = profiles(family_a)?;
    let pb = profiles(family_b)?;
    let mut records = Vec::with_capacity(pa.len() * pb.len());
    for ((name_a, _), a) in family_a.iter().zip(&pa) {
        for ((name_b, _), b) in family_b.iter().zip(&pb) {
            records.push(OrderingRecord {
                state_a: name_a.clone(),
                state_b: name_b.clone(),
                e_a: a.e,
                e_b: b.e,
                d_a: a.d,
                d_b: b.d,
                s_a: a.s,
                s_b: b.s,
                mixedness: kind,
                flags: anomaly_flags((a.e, b.e), (a.d, b.d), (a.s, b.s)),
            });
        }
    }
    Ok(records)
}

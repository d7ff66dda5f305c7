//! Reproduction run for the equal mixture `rho` and the Werner witness, with
//! each published number compared against what is computed here.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;

use deficitlab_core::matcore::tensor_vec;
use deficitlab_core::states::{binary_entropy, entanglement_report, von_neumann_entropy};
use deficitlab_core::{
    basis_to_povm, bell_diagonal_deficit, catalog_state, deficit_curve, four_state_povm,
    level_crossings, local_unitary_invariance_check, local_work_one_way, lueders_dephase,
    one_way_deficit_projective, povm_deficit, total_work, CatalogName, ComplexMatrix, Error,
    Measurement, OptimizerSettings, ProjectiveQubitBasis,
};
use serde::Serialize;
use thiserror::Error;

use crate::format::sig12;

pub const DEFAULT_SEED: u64 = 20_020_401;

const PUBLISHED_ENTROPY: f64 = 1.81128;
const PUBLISHED_TOTAL_WORK: f64 = 0.18872;
const PUBLISHED_LOCAL_WORK: f64 = 0.12148;
const PUBLISHED_LOCAL_ENTROPY: f64 = 1.87852;
const PUBLISHED_DEFICIT: f64 = 0.06724;
const PUBLISHED_POVM_WORK: f64 = 0.09215;
/// Five published decimals.
const PUBLISHED_TOL: f64 = 1e-5;
const POVM_ASPIRATION: f64 = 1e-3;
const WERNER_TOL: f64 = 1e-4;
const INVARIANCE_TOL: f64 = 1e-4;
const PURE_LAW_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Reproduced,
    RefutedWithDerivation,
    SoftTarget,
}

impl ClaimStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ClaimStatus::Reproduced => "reproduced",
            ClaimStatus::RefutedWithDerivation => "refuted-with-derivation",
            ClaimStatus::SoftTarget => "soft-target",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimRecord {
    pub claim_id: String,
    pub paper_value: Option<f64>,
    pub computed_value: f64,
    /// Gap to `paper_value`, or to `reference_value` when there is no
    /// published number.
    pub absolute_gap: f64,
    pub reference_value: Option<f64>,
    pub tolerance: f64,
    pub status: ClaimStatus,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportEnvironment {
    pub version: String,
    pub seed: u64,
    pub grid: [usize; 2],
    pub tolerance: f64,
    pub invariance_trials: usize,
    pub curve_steps: usize,
    pub units: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AdjudicationReport {
    pub environment: ReportEnvironment,
    pub claims: Vec<ClaimRecord>,
}

impl AdjudicationReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_table(&self) -> String {
        let env = &self.environment;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "deficitlab {} | seed {} | grid {}x{} | tol {:e} | trials {} | all values in bits",
            env.version, env.seed, env.grid[0], env.grid[1], env.tolerance, env.invariance_trials
        );
        let _ = writeln!(
            out,
            "{:<24} {:>16} {:>16} {:>12}  status",
            "claim", "published (bits)", "computed (bits)", "gap"
        );
        for c in &self.claims {
            let published = c.paper_value.map_or_else(|| "-".to_string(), sig12);
            let _ = writeln!(
                out,
                "{:<24} {:>16} {:>16} {:>12.3e}  {}",
                c.claim_id,
                published,
                sig12(c.computed_value),
                c.absolute_gap,
                c.status.label()
            );
            let _ = writeln!(out, "    {}", c.note);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproduceSettings {
    pub optimizer: OptimizerSettings,
    pub seed: u64,
    pub invariance_trials: usize,
    pub curve_steps: usize,
}

impl Default for ReproduceSettings {
    fn default() -> Self {
        ReproduceSettings {
            optimizer: OptimizerSettings::default(),
            seed: DEFAULT_SEED,
            invariance_trials: 20,
            curve_steps: 129,
        }
    }
}

/// A numeric failure part-way through, with the claims computed so far.
#[derive(Debug, Error)]
#[error("reproduction stopped after {} claims: {source}", partial.claims.len())]
pub struct ReproduceError {
    pub source: Error,
    pub partial: Box<AdjudicationReport>,
}

fn against_published(id: &str, published: f64, computed: f64, tol: f64, note: String) -> ClaimRecord {
    let gap = (computed - published).abs();
    ClaimRecord {
        claim_id: id.into(),
        paper_value: Some(published),
        computed_value: computed,
        absolute_gap: gap,
        reference_value: None,
        tolerance: tol,
        status: if gap <= tol {
            ClaimStatus::Reproduced
        } else {
            ClaimStatus::RefutedWithDerivation
        },
        note,
    }
}

/// Largest entrywise error of `3/8 P(w+w+) + 1/8 P(w+w-) + 1/8 P(w-w+) + 3/8 P(w-w-)`
/// against `rho`, with `|w±>` the pointers of the `θ = π/4, φ = 0` basis.
fn classical_decomposition_error(rho: &ComplexMatrix) -> f64 {
    let [wp, wm] = ProjectiveQubitBasis::new(FRAC_PI_4, 0.0).expect("valid").kets();
    let terms = [(0.375, wp, wp), (0.125, wp, wm), (0.125, wm, wp), (0.375, wm, wm)];
    let mix = terms.iter().fold(ComplexMatrix::zeros(4, 4), |acc, (p, a, b)| {
        &acc + &ComplexMatrix::outer(&tensor_vec(a, b)).scale_real(*p)
    });
    mix.max_abs_diff(rho)
}

pub fn run_reproduce(settings: &ReproduceSettings) -> Result<AdjudicationReport, ReproduceError> {
    let mut report = AdjudicationReport {
        environment: ReportEnvironment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: settings.seed,
            grid: [settings.optimizer.n_theta, settings.optimizer.n_phi],
            tolerance: settings.optimizer.tolerance,
            invariance_trials: settings.invariance_trials,
            curve_steps: settings.curve_steps,
            units: "bits".into(),
        },
        claims: Vec::new(),
    };
    match fill_claims(settings, &mut report.claims) {
        Ok(()) => Ok(report),
        Err(source) => Err(ReproduceError {
            source,
            partial: Box::new(report),
        }),
    }
}

fn fill_claims(settings: &ReproduceSettings, claims: &mut Vec<ClaimRecord>) -> Result<(), Error> {
    let opt = &settings.optimizer;
    let rho = catalog_state(&CatalogName::RhoMix(0.5))?;
    let s_rho = von_neumann_entropy(&rho);
    claims.push(against_published(
        "S(rho)",
        PUBLISHED_ENTROPY,
        s_rho,
        PUBLISHED_TOL,
        "spectrum {1/8, 1/8, 3/8, 3/8}; exact value 1 + h(3/4)".into(),
    ));
    claims.push(against_published(
        "W_t",
        PUBLISHED_TOTAL_WORK,
        total_work(&rho),
        PUBLISHED_TOL,
        "W_t = 2 - S(rho)".into(),
    ));

    let best = one_way_deficit_projective(&rho, opt)?;
    let (theta, phi) = match &best.argmin {
        Measurement::Projective(b) => (b.theta(), b.phi()),
        Measurement::Povm { .. } => unreachable!("projective optimizer"),
    };
    let curve = deficit_curve(&rho, 0.0, settings.curve_steps)?;
    let crossing = level_crossings(&rho, &curve, PUBLISHED_LOCAL_ENTROPY)?
        .into_iter()
        .find(|&t| t < FRAC_PI_4);
    let crossing_text = crossing.map_or_else(
        || "no crossing of S(rho')=1.87852 found on the phi=0 curve".to_string(),
        |t| format!("S(rho')=1.87852 is reached on the phi=0 curve at theta*={} (not a minimum)", sig12(t)),
    );
    claims.push(against_published(
        "W_l-projective",
        PUBLISHED_LOCAL_WORK,
        best.local_work_bits,
        PUBLISHED_TOL,
        format!(
            "optimal basis theta={}, phi={} gives S(rho')={}; {crossing_text}",
            sig12(theta),
            sig12(phi),
            sig12(best.entropy_after)
        ),
    ));

    let w = basis_to_povm(&ProjectiveQubitBasis::new(FRAC_PI_4, 0.0)?);
    let fixed_point_err = lueders_dephase(&rho, &w)?.matrix().max_abs_diff(rho.matrix());
    let decomposition_err = classical_decomposition_error(rho.matrix());
    let closed_form = bell_diagonal_deficit(&rho)?;
    claims.push(against_published(
        "projective-optimum",
        PUBLISHED_DEFICIT,
        best.delta_bits,
        PUBLISHED_TOL,
        format!(
            "rho = 3/8 P(w+w+) + 1/8 P(w+w-) + 1/8 P(w-w+) + 3/8 P(w-w-) with |w±> the ±(x+z)/√2 \
             eigenstates (max entry error {:.1e}); dephasing at theta=pi/4, phi=0 leaves rho \
             fixed (max entry error {:.1e}); closed form 1 + h((1+t)/2) - S(rho) = {}",
            decomposition_err,
            fixed_point_err,
            sig12(closed_form)
        ),
    ));

    let four = povm_deficit(&rho, &four_state_povm())?;
    let z_work = local_work_one_way(&rho, &basis_to_povm(&ProjectiveQubitBasis::z()))?;
    let gap = (four.local_work_bits - PUBLISHED_POVM_WORK).abs();
    claims.push(ClaimRecord {
        claim_id: "four-state-povm".into(),
        paper_value: Some(PUBLISHED_POVM_WORK),
        computed_value: four.local_work_bits,
        absolute_gap: gap,
        reference_value: None,
        tolerance: POVM_ASPIRATION,
        status: ClaimStatus::SoftTarget,
        note: format!(
            "W_l under pointer accounting (Alice keeps her collapsed pointer); {}; \
             for comparison the projective z-basis W_l is {}",
            if gap > POVM_ASPIRATION {
                "FLAG: gap exceeds the 1e-3 aspiration"
            } else {
                "within the 1e-3 aspiration"
            },
            sig12(z_work)
        ),
    });

    let pure = catalog_state(&CatalogName::SchmidtPure(0.5))?;
    let pure_delta = one_way_deficit_projective(&pure, opt)?.delta_bits;
    let h = binary_entropy(0.25)?;
    let gap = (pure_delta - h).abs();
    claims.push(ClaimRecord {
        claim_id: "pure-state-law".into(),
        paper_value: None,
        computed_value: pure_delta,
        absolute_gap: gap,
        reference_value: Some(h),
        tolerance: PURE_LAW_TOL,
        status: if gap <= PURE_LAW_TOL {
            ClaimStatus::Reproduced
        } else {
            ClaimStatus::RefutedWithDerivation
        },
        note: "schmidtPure(0.5): optimized deficit vs entropy of entanglement h(1/4)".into(),
    });

    let werner = catalog_state(&CatalogName::Werner(1.0 / 3.0))?;
    let ent = entanglement_report(&werner)?;
    let werner_opt = one_way_deficit_projective(&werner, opt)?.delta_bits;
    let werner_closed = bell_diagonal_deficit(&werner)?;
    let gap = (werner_opt - werner_closed).abs();
    let holds = gap <= WERNER_TOL && ent.separable_2x2 && ent.concurrence.abs() < 1e-9 && werner_opt > WERNER_TOL;
    claims.push(ClaimRecord {
        claim_id: "werner-conjecture".into(),
        paper_value: None,
        computed_value: werner_opt,
        absolute_gap: gap,
        reference_value: Some(werner_closed),
        tolerance: WERNER_TOL,
        status: if holds {
            ClaimStatus::Reproduced
        } else {
            ClaimStatus::RefutedWithDerivation
        },
        note: format!(
            "werner(1/3) is separable (PPT min eigenvalue {:.1e}, concurrence {:.1e}) with \
             deficit {} > 0; reference is the closed form",
            ent.ppt_min_eigenvalue,
            ent.concurrence,
            sig12(werner_opt)
        ),
    });

    let deviation =
        local_unitary_invariance_check(&rho, settings.invariance_trials, settings.seed, opt)?;
    claims.push(ClaimRecord {
        claim_id: "local-unitary-invariance".into(),
        paper_value: Some(0.0),
        computed_value: deviation,
        absolute_gap: deviation,
        reference_value: None,
        tolerance: INVARIANCE_TOL,
        status: if deviation <= INVARIANCE_TOL {
            ClaimStatus::Reproduced
        } else {
            ClaimStatus::RefutedWithDerivation
        },
        note: format!(
            "max |delta(U rho U†) - delta(rho)| over {} Haar-random local unitaries",
            settings.invariance_trials
        ),
    });
    Ok(())
}

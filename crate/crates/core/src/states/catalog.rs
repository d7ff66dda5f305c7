//! Named states: the two locally indistinguishable separable mixtures and
//! their blends, Bell and Werner states, the Schmidt family `a|00> + b|11>`,
//! and three maximally entangled 3⊗3 states.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::{tensor_vec, ComplexMatrix, C64};

use super::DensityOperator;

pub const CATALOG_HELP: &[(&str, &str)] = &[
    ("rhoZero", "½P[|0>|+>] + ½P[|+>|0>]"),
    ("rhoOne", "½P[|1>|1>] + ½P[|->|->]"),
    ("rhoMix(l)", "l·rhoZero + (1-l)·rhoOne, l in [0,1]"),
    ("rho", "alias for rhoMix(0.5), the equal mixture"),
    ("bell(k)", "Bell projector, k = 0..3 for Φ+, Φ-, Ψ+, Ψ-"),
    ("werner(p)", "p·P[Φ+] + (1-p)·I/4, p in [0,1]"),
    ("schmidtPure(a)", "P[a|00> + sqrt(1-a²)|11>], a in (0,1)"),
    ("mes3x3(k)", "maximally entangled 3⊗3 state ψk, k = 1..3"),
    ("mes3x3SwappedSet", "{ψ1, ψ2, P[|01>]} on 3⊗3"),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogName {
    RhoZero,
    RhoOne,
    RhoMix(f64),
    Bell(usize),
    Werner(f64),
    SchmidtPure(f64),
    Mes3x3(usize),
    Mes3x3SwappedSet,
}

impl CatalogName {
    fn validate(self) -> Result<Self> {
        let bad = |what: &str| Err(Error::Usage(format!("{what} out of range in `{self}`")));
        match self {
            CatalogName::RhoMix(x) | CatalogName::Werner(x) if !(0.0..=1.0).contains(&x) => {
                bad("weight")
            }
            CatalogName::SchmidtPure(a) if !(a > 0.0 && a < 1.0) => bad("amplitude"),
            CatalogName::Bell(k) if k > 3 => bad("index"),
            CatalogName::Mes3x3(k) if !(1..=3).contains(&k) => bad("index"),
            other => Ok(other),
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::RhoZero => write!(f, "rhoZero"),
            CatalogName::RhoOne => write!(f, "rhoOne"),
            CatalogName::RhoMix(l) => write!(f, "rhoMix({l})"),
            CatalogName::Bell(k) => write!(f, "bell({k})"),
            CatalogName::Werner(p) => write!(f, "werner({p})"),
            CatalogName::SchmidtPure(a) => write!(f, "schmidtPure({a})"),
            CatalogName::Mes3x3(k) => write!(f, "mes3x3({k})"),
            CatalogName::Mes3x3SwappedSet => write!(f, "mes3x3SwappedSet"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    /// Accepts `name` or `name(param)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Usage(format!("unbalanced parentheses in `{s}`")))?;
                (&s[..open], Some(inner.trim()))
            }
            None => (s, None),
        };
        let real = || -> Result<f64> {
            let text = arg.ok_or_else(|| Error::Usage(format!("`{head}` needs a parameter")))?;
            text.parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad parameter `{text}` for `{head}`")))
        };
        let index = || -> Result<usize> {
            let text = arg.ok_or_else(|| Error::Usage(format!("`{head}` needs an index")))?;
            text.parse::<usize>()
                .map_err(|_| Error::Usage(format!("bad index `{text}` for `{head}`")))
        };
        let no_arg = |name: CatalogName| match arg {
            None => Ok(name),
            Some(_) => Err(Error::Usage(format!("`{head}` takes no parameter"))),
        };
        let name = match head {
            "rhoZero" => no_arg(CatalogName::RhoZero)?,
            "rhoOne" => no_arg(CatalogName::RhoOne)?,
            "rho" => no_arg(CatalogName::RhoMix(0.5))?,
            "rhoMix" => CatalogName::RhoMix(real()?),
            "bell" => CatalogName::Bell(index()?),
            "werner" => CatalogName::Werner(real()?),
            "schmidtPure" => CatalogName::SchmidtPure(real()?),
            "mes3x3" => CatalogName::Mes3x3(index()?),
            "mes3x3SwappedSet" => no_arg(CatalogName::Mes3x3SwappedSet)?,
            other => return Err(Error::Usage(format!("unknown catalog state `{other}`"))),
        };
        name.validate()
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn ket0() -> [C64; 2] {
    [c(1.0), c(0.0)]
}
fn ket1() -> [C64; 2] {
    [c(0.0), c(1.0)]
}
fn ket_plus() -> [C64; 2] {
    [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]
}
fn ket_minus() -> [C64; 2] {
    [c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)]
}

fn product_projector(a: [C64; 2], b: [C64; 2]) -> ComplexMatrix {
    ComplexMatrix::outer(&tensor_vec(&a, &b))
}

fn equal_mixture(p: ComplexMatrix, q: ComplexMatrix) -> Result<DensityOperator> {
    DensityOperator::new((&p + &q).scale_real(0.5), (2, 2))
}

fn rho_zero() -> Result<DensityOperator> {
    equal_mixture(
        product_projector(ket0(), ket_plus()),
        product_projector(ket_plus(), ket0()),
    )
}

fn rho_one() -> Result<DensityOperator> {
    equal_mixture(
        product_projector(ket1(), ket1()),
        product_projector(ket_minus(), ket_minus()),
    )
}

fn bell_ket(k: usize) -> [C64; 4] {
    let h = c(FRAC_1_SQRT_2);
    let z = c(0.0);
    match k {
        0 => [h, z, z, h],
        1 => [h, z, z, -h],
        2 => [z, h, h, z],
        _ => [z, h, -h, z],
    }
}

fn mes3x3_ket(k: usize) -> [C64; 9] {
    let omega = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let s = 1.0 / 3f64.sqrt();
    let mut v = [c(0.0); 9];
    match k {
        1 => {
            v[0] = c(s);
            v[4] = omega * s;
            v[8] = omega * omega * s;
        }
        2 => {
            v[0] = c(s);
            v[4] = omega * omega * s;
            v[8] = omega * s;
        }
        _ => {
            // |01> + |12> + |20>
            v[1] = c(s);
            v[5] = c(s);
            v[6] = c(s);
        }
    }
    v
}

/// Builds a single named state. The swapped 3⊗3 set is not a single state;
/// use [`catalog_members`] for it.
pub fn catalog_state(name: &CatalogName) -> Result<DensityOperator> {
    match name.validate()? {
        CatalogName::RhoZero => rho_zero(),
        CatalogName::RhoOne => rho_one(),
        CatalogName::RhoMix(l) => rho_zero()?.mix(l, &rho_one()?),
        CatalogName::Bell(k) => DensityOperator::from_ket(&bell_ket(k), (2, 2)),
        CatalogName::Werner(p) => {
            let bell = DensityOperator::from_ket(&bell_ket(0), (2, 2))?;
            bell.mix(p, &DensityOperator::maximally_mixed((2, 2)))
        }
        CatalogName::SchmidtPure(a) => {
            let b = (1.0 - a * a).sqrt();
            DensityOperator::from_ket(&[c(a), c(0.0), c(0.0), c(b)], (2, 2))
        }
        CatalogName::Mes3x3(k) => DensityOperator::from_ket(&mes3x3_ket(k), (3, 3)),
        CatalogName::Mes3x3SwappedSet => Err(Error::Usage(
            "mes3x3SwappedSet is a set of states; use catalog_members".into(),
        )),
    }
}

/// Every state a name denotes: one for ordinary names, three for the
/// swapped 3⊗3 set.
pub fn catalog_members(name: &CatalogName) -> Result<Vec<DensityOperator>> {
    match name.validate()? {
        CatalogName::Mes3x3SwappedSet => {
            let mut ket01 = [c(0.0); 9];
            ket01[1] = c(1.0);
            Ok(vec![
                catalog_state(&CatalogName::Mes3x3(1))?,
                catalog_state(&CatalogName::Mes3x3(2))?,
                DensityOperator::from_ket(&ket01, (3, 3))?,
            ])
        }
        other => Ok(vec![catalog_state(&other)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::Subsystem;
    use crate::states::{entanglement_report, local_bloch_form, trace_distance};

    fn sixteenths() -> ComplexMatrix {
        let rows: [[f64; 4]; 4] = [
            [5.0, 1.0, 1.0, 1.0],
            [1.0, 3.0, 1.0, -1.0],
            [1.0, 1.0, 3.0, -1.0],
            [1.0, -1.0, -1.0, 5.0],
        ];
        ComplexMatrix::from_fn(4, 4, |i, j| c(rows[i][j] / 16.0))
    }

    fn overlap(a: &DensityOperator, b: &DensityOperator) -> f64 {
        (a.matrix() * b.matrix()).trace().re
    }

    #[test]
    fn equal_mixture_matches_sixteenths() {
        let rho = catalog_state(&CatalogName::RhoMix(0.5)).unwrap();
        assert!(rho.matrix().max_abs_diff(&sixteenths()) < 1e-15);
        let alias = catalog_state(&"rho".parse().unwrap()).unwrap();
        assert_eq!(alias, rho);
    }

    #[test]
    fn mes_states_are_orthogonal_and_maximally_entangled() {
        let psi: Vec<_> = (1..=3)
            .map(|k| catalog_state(&CatalogName::Mes3x3(k)).unwrap())
            .collect();
        assert!(overlap(&psi[0], &psi[1]).abs() < 1e-15);
        assert!(overlap(&psi[0], &psi[2]).abs() < 1e-15);
        assert!(overlap(&psi[1], &psi[2]).abs() < 1e-15);
        let third = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        for p in &psi {
            for side in [Subsystem::A, Subsystem::B] {
                assert!(p.marginal(side).matrix().max_abs_diff(&third) < 1e-10);
            }
        }
    }

    #[test]
    fn swapped_set_members() {
        let set = catalog_members(&CatalogName::Mes3x3SwappedSet).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set[2].matrix()[(1, 1)], c(1.0));
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(overlap(&set[i], &set[j]).abs() < 1e-15);
            }
        }
        assert!(catalog_state(&CatalogName::Mes3x3SwappedSet).is_err());
    }

    #[test]
    fn werner_endpoint_is_bell() {
        let w = catalog_state(&CatalogName::Werner(1.0)).unwrap();
        let b = catalog_state(&CatalogName::Bell(0)).unwrap();
        assert!(w.matrix().max_abs_diff(b.matrix()) < 1e-15);
    }

    #[test]
    fn separable_parts_are_orthogonal_and_ppt() {
        let r0 = catalog_state(&CatalogName::RhoZero).unwrap();
        let r1 = catalog_state(&CatalogName::RhoOne).unwrap();
        assert!((trace_distance(&r0, &r1).unwrap() - 1.0).abs() < 1e-12);
        for s in [&r0, &r1] {
            assert!(entanglement_report(s).unwrap().ppt_min_eigenvalue >= -1e-10);
        }
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let rho = catalog_state(&CatalogName::RhoMix(0.5)).unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            assert!(rho.marginal(side).matrix().max_abs_diff(&half) < 1e-10);
        }
    }

    #[test]
    fn every_two_qubit_entry_reconstructs_from_bloch_form() {
        let names = [
            CatalogName::RhoZero,
            CatalogName::RhoOne,
            CatalogName::RhoMix(0.5),
            CatalogName::RhoMix(0.2),
            CatalogName::Bell(0),
            CatalogName::Bell(1),
            CatalogName::Bell(2),
            CatalogName::Bell(3),
            CatalogName::Werner(1.0 / 3.0),
            CatalogName::SchmidtPure(0.3),
        ];
        for n in names {
            let s = catalog_state(&n).unwrap();
            let form = local_bloch_form(&s).unwrap();
            assert!(form.reconstruct().max_abs_diff(s.matrix()) <= 1e-9, "{n}");
        }
    }

    #[test]
    fn parse_and_display() {
        for text in ["rhoMix(0.25)", "bell(2)", "werner(0.5)", "schmidtPure(0.1)", "mes3x3(3)", "rhoZero"] {
            let n: CatalogName = text.parse().unwrap();
            assert_eq!(n.to_string(), text);
        }
        for bad in ["bell(4)", "werner(1.5)", "schmidtPure(1)", "mes3x3(0)", "nope", "rhoMix", "rhoZero(1)", "bell(1"] {
            assert!(matches!(bad.parse::<CatalogName>(), Err(Error::Usage(_))), "{bad}");
        }
    }
}

//! Fine-structure level energies of the coupled rotor, with and without a
//! `c ħ² R` term, and weighted least-squares fits of measured multiplets.

mod fit;

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::coupling::{f_expectation_6j, interval_factor, CoupledLevel, CouplingError};
use crate::exact::{HalfInt, Rational};
use crate::geometry::{ExpansionFit, InertiaTriple};

pub use fit::{fit_multiplet, fit_multiplet_with, lande_report, FitResult, LandeReport, DEFAULT_LANDE_THRESHOLD};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Coupling(#[from] CouplingError),
    #[error("curvature fit was made for {fit:?}, model uses {model:?}")]
    KappaMismatch { fit: InertiaTriple, model: InertiaTriple },
    #[error("invalid multiplet: {0}")]
    InvalidMultiplet(String),
    #[error("multiplet has {have} levels, need at least {need}")]
    InsufficientLevels { have: usize, need: usize },
    #[error("design matrix is singular (condition number {condition:e}): {detail}")]
    SingularDesign { condition: f64, detail: String },
}

/// `L²/2I_L + S²/2I_S + (L·S)/I_LS` in the level `(L S) J`.
pub fn ls_energy(level: CoupledLevel, inertia: &InertiaTriple, hbar_sq: f64) -> f64 {
    let (l, s, j) = (level.l().casimir(), level.s().casimir(), level.j().casimir());
    hbar_sq / 2.0 * (l / inertia.i_l + s / inertia.i_s) + hbar_sq / 2.0 * inertia.inv_i_ls * (j - l - s)
}

/// Where the curvature expansion `R ≈ R0 + κ (f - 1)` comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KappaSource {
    /// `R0 = 2(1/I_L + 1/I_S)`, `κ = (16/3)(I_L + I_S)/I_LS` taken verbatim.
    PaperR2,
    /// Coefficients measured by [`crate::geometry::fit_profile`].
    NumericFit(ExpansionFit),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelModel {
    pub inertia: InertiaTriple,
    pub c: f64,
    pub kappa_source: KappaSource,
    pub hbar_sq: f64,
}

impl LevelModel {
    pub fn new(inertia: InertiaTriple, c: f64, kappa_source: KappaSource, hbar_sq: f64) -> Result<Self, SpectraError> {
        if let KappaSource::NumericFit(fit) = &kappa_source {
            if fit.inertia != inertia {
                return Err(SpectraError::KappaMismatch { fit: fit.inertia, model: inertia });
            }
        }
        Ok(LevelModel { inertia, c, kappa_source, hbar_sq })
    }

    /// `(R0, κ)`.
    pub fn curvature_coefficients(&self) -> (f64, f64) {
        match &self.kappa_source {
            KappaSource::PaperR2 => {
                let i = &self.inertia;
                (i.decoupled_curvature(), 16.0 / 3.0 * (i.i_l + i.i_s) * i.inv_i_ls)
            }
            KappaSource::NumericFit(fit) => (fit.r0, fit.kappa),
        }
    }

    /// `C = c ħ² κ`, the coefficient of `⟨f⟩_J` in the level energies.
    pub fn f_coefficient(&self) -> f64 {
        self.c * self.hbar_sq * self.curvature_coefficients().1
    }
}

pub(crate) fn f_value(level: CoupledLevel) -> Result<(Rational, f64), SpectraError> {
    let f = f_expectation_6j(level)?;
    let x = f.to_f64().expect("⟨f⟩ is bounded");
    Ok((f, x))
}

/// `E_LS + c ħ² (R0 + κ (⟨f⟩_J - 1))`.
pub fn perturbed_energy(level: CoupledLevel, model: &LevelModel) -> Result<f64, SpectraError> {
    let base = ls_energy(level, &model.inertia, model.hbar_sq);
    if model.c == 0.0 {
        return Ok(base);
    }
    let (r0, kappa) = model.curvature_coefficients();
    let (_, f) = f_value(level)?;
    Ok(base + model.c * model.hbar_sq * (r0 + kappa * (f - 1.0)))
}

/// One level of a predicted multiplet.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalRow {
    pub level: CoupledLevel,
    pub energy: f64,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub f_expect: Rational,
    /// `(E_J - E_{J-1}) / J`; absent for the lowest level.
    pub interval: Option<f64>,
    /// `c ħ² κ · factor`, the departure of `interval` from `ħ²/I_LS`.
    pub deviation: Option<f64>,
    /// `(⟨f⟩_J - ⟨f⟩_{J-1}) / J`.
    #[serde(serialize_with = "crate::io::ser_opt_rational")]
    pub factor: Option<Rational>,
}

/// Energies and adjacent intervals of the `(L, S)` multiplet under `model`.
pub fn interval_table(l: HalfInt, s: HalfInt, model: &LevelModel) -> Result<Vec<IntervalRow>, SpectraError> {
    let scale = model.f_coefficient();
    let mut rows: Vec<IntervalRow> = Vec::new();
    for level in CoupledLevel::multiplet(l, s) {
        let energy = perturbed_energy(level, model)?;
        let (f_expect, _) = f_value(level)?;
        let (interval, deviation, factor) = match rows.last() {
            Some(prev) => {
                let factor = interval_factor(&f_expect, &prev.f_expect, level.j());
                let dev = scale * factor.to_f64().expect("bounded");
                (Some((energy - prev.energy) / level.j().as_f64()), Some(dev), Some(factor))
            }
            None => (None, None, None),
        };
        rows.push(IntervalRow { level, energy, f_expect, interval, deviation, factor });
    }
    Ok(rows)
}

/// Measured levels of one `(L, S)` term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Multiplet {
    pub label: String,
    #[serde(rename = "L")]
    pub l: HalfInt,
    #[serde(rename = "S")]
    pub s: HalfInt,
    /// `J -> (energy, uncertainty)`.
    pub levels: BTreeMap<HalfInt, (f64, f64)>,
}

impl Multiplet {
    pub fn new(label: impl Into<String>, l: HalfInt, s: HalfInt, levels: BTreeMap<HalfInt, (f64, f64)>) -> Result<Self, SpectraError> {
        let label = label.into();
        if l.twice() < 0 || s.twice() < 0 {
            return Err(SpectraError::InvalidMultiplet(format!("{label}: L = {l}, S = {s} must be nonnegative")));
        }
        for (&j, &(e, u)) in &levels {
            if CoupledLevel::new(l, s, j).is_err() {
                return Err(SpectraError::InvalidMultiplet(format!("{label}: J = {j} is not in |L - S|..L + S for L = {l}, S = {s}")));
            }
            if !e.is_finite() {
                return Err(SpectraError::InvalidMultiplet(format!("{label}: energy of J = {j} is not finite")));
            }
            if !(u >= 0.0 && u.is_finite()) {
                return Err(SpectraError::InvalidMultiplet(format!("{label}: uncertainty of J = {j} must be finite and nonnegative")));
            }
        }
        if levels.len() < 2 {
            return Err(SpectraError::InsufficientLevels { have: levels.len(), need: 2 });
        }
        Ok(Multiplet { label, l, s, levels })
    }

    /// Every level of the `(L, S)` term generated by `model`, with a common
    /// uncertainty.
    pub fn synthesize(label: impl Into<String>, l: HalfInt, s: HalfInt, model: &LevelModel, uncertainty: f64) -> Result<Self, SpectraError> {
        let levels = CoupledLevel::multiplet(l, s)
            .into_iter()
            .map(|level| Ok((level.j(), (perturbed_energy(level, model)?, uncertainty))))
            .collect::<Result<_, SpectraError>>()?;
        Multiplet::new(label, l, s, levels)
    }

    pub fn level(&self, j: HalfInt) -> CoupledLevel {
        CoupledLevel::new(self.l, self.s, j).expect("validated on construction")
    }
}

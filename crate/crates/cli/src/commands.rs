use std::fmt::Write as _;

use lande::coupling::{
    f_expectation_6j, f_expectation_msum, table1, table1_discrepancies, verify_cg_normalization_claim, CoupledLevel,
    CouplingError,
};
use lande::exact::{clebsch_gordan, gaunt, wigner_3j, wigner_6j, HalfInt, Rational, SqrtRational};
use lande::geometry::{
    beta_grid, curvature_at, fit_expansion, fit_profile, ConfigPoint, CurvatureReport, ExpansionFit, Flat, GeometryError,
    InertiaTriple, Numerics, PowerLawCheck, ProductSpheres,
};
use lande::io::{LevelsFile, MultipletGroupError, RunConfig};
use lande::spectra::{
    fit_multiplet_with, interval_table, lande_report, KappaSource, LevelModel, Multiplet, SpectraError,
};
use serde_json::{json, Value};

use crate::render::{csv_line, num, opt, opt_num, text_table};
use crate::{exit, CliError, Command, CurvatureArgs, ExpandArgs, FitArgs, FmatArgs, KappaChoice, PredictArgs, Report, WignerSymbol};

/// Grid used whenever a curvature fit is needed and none is given.
const DEFAULT_BETA_POINTS: usize = 9;
const DEFAULT_BETA_MARGIN: f64 = 0.2;

pub fn dispatch(command: &Command, config: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Table1 => cmd_table1(),
        Command::Curvature(a) => cmd_curvature(a, config),
        Command::Expand(a) => cmd_expand(a, config),
        Command::Predict(a) => cmd_predict(a, config),
        Command::Fit(a) => cmd_fit(a, config),
        Command::Fmat(a) => cmd_fmat(a),
        Command::Wigner(a) => cmd_wigner(&a.symbol),
    }
}

fn geometry_error(e: GeometryError) -> CliError {
    let code = match e {
        GeometryError::DegenerateMetric { .. } => exit::DEGENERATE_METRIC,
        GeometryError::StepTooLarge { .. } | GeometryError::OutOfChart(_) => exit::CHART,
        GeometryError::DegenerateGrid(_) => exit::DEGENERATE_GRID,
        GeometryError::InvalidInertia(_) => exit::USAGE,
    };
    CliError::new(code, e.to_string())
}

fn coupling_error(e: CouplingError) -> CliError {
    let code = match e {
        CouplingError::IrrationalResult(..) => exit::ROUTE_DISAGREEMENT,
        CouplingError::DegenerateGrid(_) => exit::DEGENERATE_GRID,
        CouplingError::InvalidCoupling { .. } | CouplingError::NotOrbital { .. } => exit::USAGE,
    };
    CliError::new(code, e.to_string())
}

fn spectra_error(e: SpectraError) -> CliError {
    let code = match &e {
        SpectraError::Coupling(c) => return coupling_error(c.clone()),
        SpectraError::InsufficientLevels { .. } => exit::INSUFFICIENT_LEVELS,
        SpectraError::SingularDesign { .. } => exit::SINGULAR_DESIGN,
        SpectraError::InvalidMultiplet(_) => exit::PARSE,
        SpectraError::KappaMismatch { .. } => exit::USAGE,
    };
    CliError::new(code, e.to_string())
}

fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn halfint(h: HalfInt) -> Value {
    serde_json::to_value(h).expect("HalfInt serializes")
}

fn ok(json: Value, csv: String, text: String) -> Report {
    Report { json, csv, text, code: exit::OK, warning: None }
}

fn numerics(step: Option<f64>, config: &RunConfig) -> Result<Numerics, CliError> {
    let step = step.unwrap_or(config.step_h);
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::new(exit::USAGE, format!("step must be positive, got {step}")));
    }
    Ok(Numerics { step, det_tol: config.det_tol })
}

fn cmd_table1() -> Result<Report, CliError> {
    let rows = table1();
    let mut json_rows = Vec::new();
    let mut csv = csv_line(&["S", "L", "J", "f", "interval"]);
    let mut text_rows = Vec::new();
    let mut disagreements = Vec::new();
    for row in &rows {
        let level = row.level;
        let msum = f_expectation_msum(level).map_err(coupling_error)?;
        if msum != row.f_expect {
            disagreements.push(format!("{level}: 6j route {} vs m-sum {msum}", row.f_expect));
        }
        let interval = row.interval_coeff.as_ref().map(|q| q.to_string());
        json_rows.push(json!({
            "S": halfint(level.s()),
            "L": halfint(level.l()),
            "J": halfint(level.j()),
            "f": rational(&row.f_expect),
            "f_msum": rational(&msum),
            "interval": interval,
        }));
        let cells = [level.s().to_string(), level.l().to_string(), level.j().to_string(), row.f_expect.to_string(), opt(interval)];
        csv.push_str(&csv_line(&cells));
        text_rows.push(cells.to_vec());
    }
    let discrepancies = table1_discrepancies().map_err(coupling_error)?;
    let json_disc: Vec<Value> = discrepancies
        .iter()
        .map(|d| {
            json!({
                "S": halfint(d.level.s()),
                "L": halfint(d.level.l()),
                "J": halfint(d.level.j()),
                "column": d.column,
                "published": d.published,
                "computed": rational(&d.computed),
                "verdict": d.verdict,
            })
        })
        .collect();
    let claim = verify_cg_normalization_claim(16).map_err(coupling_error)?;
    let mut text = text_table(&["S", "L", "J", "<f>", "(f_J - f_J-1)/J"], &text_rows);
    for d in &discrepancies {
        let _ = writeln!(text, "\npublished {} entry for {} is {}, computed {}: {}", d.column, d.level, d.published, d.computed, d.verdict);
    }
    let json = json!({
        "rows": json_rows,
        "routes_agree": disagreements.is_empty(),
        "discrepancies": json_disc,
        "cg_normalization": claim,
    });
    let mut report = ok(json, csv, text);
    if !disagreements.is_empty() {
        report.code = exit::ROUTE_DISAGREEMENT;
        report.warning = Some(format!("6j and m-sum routes disagree: {}", disagreements.join("; ")));
    }
    Ok(report)
}

fn inertia(i_l: f64, i_s: f64, inv: f64) -> Result<InertiaTriple, CliError> {
    InertiaTriple::new(i_l, i_s, inv).map_err(geometry_error)
}

fn curvature_json(r: &CurvatureReport, full: bool) -> Value {
    let mut v = json!({ "scalar_R": r.scalar_r, "est_error": r.est_error, "step_h": r.step_h });
    if full {
        let rows: Vec<Vec<f64>> = (0..r.ricci.nrows()).map(|i| r.ricci.row(i).iter().copied().collect()).collect();
        v["christoffel"] = json!(r.christoffel.to_nested());
        v["ricci"] = json!(rows);
    }
    v
}

fn cmd_curvature(a: &CurvatureArgs, config: &RunConfig) -> Result<Report, CliError> {
    let numerics = numerics(a.step, config)?;
    if a.point.0.len() != 4 {
        return Err(CliError::new(exit::USAGE, format!("--point needs θ,φ,θ',φ', got {} values", a.point.0.len())));
    }
    let q = ConfigPoint::new(a.point.0[0], a.point.0[1], a.point.0[2], a.point.0[3]).map_err(geometry_error)?;
    let triple = inertia(a.inertia.i_l, a.inertia.i_s, a.inv_i_ls)?;
    let report = if a.flat {
        curvature_at(&Flat { dim: 4 }, &q.coords(), &numerics)
    } else {
        curvature_at(&ProductSpheres { inertia: triple }, &q.coords(), &numerics)
    }
    .map_err(geometry_error)?;
    let mut json = curvature_json(&report, a.full);
    json["point"] = json!(q.coords());
    json["relative_angle"] = json!(q.relative_angle());
    json["metric"] = if a.flat { json!("flat") } else { json!(triple) };
    let csv = csv_line(&["scalar_R", "est_error", "step_h"]) + &csv_line(&[num(report.scalar_r), num(report.est_error), num(report.step_h)]);
    let text = format!("R = {} ± {:.1e} (h = {})\n", num(report.scalar_r), report.est_error, num(report.step_h));
    Ok(ok(json, csv, text))
}

fn power_json(p: &Option<PowerLawCheck>) -> Value {
    match p {
        Some(p) => json!({
            "power": p.power,
            "coefficient": p.coefficient,
            "relative_spread": p.relative_spread,
            "constant_within_1pct": p.relative_spread <= 0.01,
        }),
        None => Value::Null,
    }
}

fn f_range(fit: &ExpansionFit) -> f64 {
    let fs = fit.beta_samples.iter().map(|(b, _)| lande::coupling::f_classical(*b));
    let (lo, hi) = fs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| (lo.min(f), hi.max(f)));
    hi - lo
}

fn cmd_expand(a: &ExpandArgs, config: &RunConfig) -> Result<Report, CliError> {
    let numerics = numerics(a.step, config)?;
    let betas = a.beta_grid.clone().map(|b| b.0).unwrap_or_else(|| beta_grid(DEFAULT_BETA_POINTS, DEFAULT_BETA_MARGIN));
    if a.inv_list.0.is_empty() {
        return Err(CliError::new(exit::USAGE, "--ils-inv-list is empty"));
    }
    let summary = fit_expansion(a.inertia.i_l, a.inertia.i_s, &a.inv_list.0, &betas, &numerics).map_err(geometry_error)?;
    let r0_expected = 2.0 * (1.0 / a.inertia.i_l + 1.0 / a.inertia.i_s);
    let mut csv = csv_line(&["inv_I_LS", "R0", "kappa", "kappa_over_inv", "kappa_over_inv_sq", "residual_rms", "relative_residual"]);
    let mut text_rows = Vec::new();
    let fits: Vec<Value> = summary
        .fits
        .iter()
        .map(|fit| {
            let k = fit.inertia.inv_i_ls;
            let (lin, quad) = if k != 0.0 { (Some(fit.kappa / k), Some(fit.kappa / (k * k))) } else { (None, None) };
            let relative = fit.residual_rms / (fit.kappa.abs() * f_range(fit));
            let cells = [num(k), num(fit.r0), num(fit.kappa), opt_num(lin), opt_num(quad), num(fit.residual_rms), num(relative)];
            csv.push_str(&csv_line(&cells));
            text_rows.push(cells.to_vec());
            let mut v = json!({
                "inv_I_LS": k,
                "R0": fit.r0,
                "kappa": fit.kappa,
                "kappa_over_inv": lin,
                "kappa_over_inv_sq": quad,
                "residual_rms": fit.residual_rms,
                "relative_residual": relative,
            });
            if a.full {
                v["beta_samples"] = json!(fit.beta_samples);
            }
            v
        })
        .collect();
    let json = json!({
        "I_L": a.inertia.i_l,
        "I_S": a.inertia.i_s,
        "step_h": numerics.step,
        "beta_grid": betas,
        "R0_expected": r0_expected,
        "fits": fits,
        "linear": power_json(&summary.linear),
        "quadratic": power_json(&summary.quadratic),
        "exponent": summary.exponent,
        "paper_linear_coefficient": summary.quoted_linear_coefficient,
    });
    let mut text = text_table(&["1/I_LS", "R0", "kappa", "kappa*I_LS", "kappa*I_LS^2", "rms", "rms/(|kappa| range f)"], &text_rows);
    let _ = writeln!(text, "\nR0 expected {r0_expected}; printed first-order coefficient (16/3)(I_L+I_S) = {}", summary.quoted_linear_coefficient);
    if let Some(p) = summary.exponent {
        let _ = writeln!(text, "log-log slope of kappa against 1/I_LS: {p}");
    }
    let mut report = ok(json, csv, text);
    if let (Some(lin), Some(p)) = (summary.linear, summary.exponent) {
        if lin.relative_spread > 0.01 {
            report.warning = Some(format!(
                "kappa/(1/I_LS) varies by {:.1}% across the list; kappa scales as (1/I_LS)^{p:.3}",
                100.0 * lin.relative_spread
            ));
        }
    }
    Ok(report)
}

fn level_model(i_l: f64, i_s: f64, inv: f64, c: f64, kappa: KappaChoice, hbar_sq: f64, numerics: &Numerics) -> Result<LevelModel, CliError> {
    if !(hbar_sq > 0.0 && hbar_sq.is_finite()) {
        return Err(CliError::new(exit::USAGE, format!("--hbar-sq must be positive, got {hbar_sq}")));
    }
    let triple = inertia(i_l, i_s, inv)?;
    let source = match kappa {
        KappaChoice::Paper => KappaSource::PaperR2,
        KappaChoice::Fit => KappaSource::NumericFit(
            fit_profile(&triple, &beta_grid(DEFAULT_BETA_POINTS, DEFAULT_BETA_MARGIN), numerics).map_err(geometry_error)?,
        ),
    };
    LevelModel::new(triple, c, source, hbar_sq).map_err(spectra_error)
}

fn cmd_predict(a: &PredictArgs, config: &RunConfig) -> Result<Report, CliError> {
    let numerics = numerics(a.step, config)?;
    let model = level_model(a.inertia.i_l, a.inertia.i_s, a.inv_i_ls, a.c, a.kappa, a.hbar_sq, &numerics)?;
    if a.l.twice() < 0 || a.s.twice() < 0 {
        return Err(CliError::new(exit::USAGE, "L and S must be nonnegative"));
    }
    if !(a.uncertainty >= 0.0 && a.uncertainty.is_finite()) {
        return Err(CliError::new(exit::USAGE, "--uncertainty must be nonnegative"));
    }
    let rows = interval_table(a.l, a.s, &model).map_err(spectra_error)?;
    let (r0, kappa) = model.curvature_coefficients();
    let mut text_rows = Vec::new();
    let levels: Vec<Value> = rows
        .iter()
        .map(|r| {
            text_rows.push(vec![
                r.level.j().to_string(),
                num(r.energy),
                r.f_expect.to_string(),
                opt_num(r.interval),
                opt_num(r.deviation),
                opt(r.factor.as_ref()),
            ]);
            json!({
                "J": halfint(r.level.j()),
                "energy": r.energy,
                "f": rational(&r.f_expect),
                "interval": r.interval,
                "deviation": r.deviation,
                "factor": r.factor.as_ref().map(rational),
            })
        })
        .collect();
    let json = json!({
        "label": a.label,
        "L": halfint(a.l),
        "S": halfint(a.s),
        "model": {
            "I_L": model.inertia.i_l,
            "I_S": model.inertia.i_s,
            "inv_I_LS": model.inertia.inv_i_ls,
            "c": model.c,
            "hbar_sq": model.hbar_sq,
            "kappa_source": match a.kappa { KappaChoice::Fit => "fit", KappaChoice::Paper => "paper" },
            "R0": r0,
            "kappa": kappa,
            "C": model.f_coefficient(),
            "lande_slope": model.hbar_sq * model.inertia.inv_i_ls,
        },
        "levels": levels,
    });
    let multiplet = Multiplet::new(
        a.label.clone(),
        a.l,
        a.s,
        rows.iter().map(|r| (r.level.j(), (r.energy, a.uncertainty))).collect(),
    );
    let csv = match multiplet {
        Ok(m) => LevelsFile::from_multiplet(&m, None).to_csv(),
        // single-level terms still get a file
        Err(_) => {
            let mut file = LevelsFile::default();
            file.rows = rows
                .iter()
                .map(|r| lande::io::LevelRow { label: a.label.clone(), l: a.l, s: a.s, j: r.level.j(), energy: r.energy, uncertainty: a.uncertainty })
                .collect();
            file.to_csv()
        }
    };
    let text = text_table(&["J", "energy", "<f>", "interval", "deviation", "factor"], &text_rows);
    Ok(ok(json, csv, text))
}

fn cmd_fit(a: &FitArgs, config: &RunConfig) -> Result<Report, CliError> {
    let confidence = a.confidence.unwrap_or(config.confidence);
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(CliError::new(exit::USAGE, format!("confidence must lie strictly between 0 and 1, got {confidence}")));
    }
    let text_in = std::fs::read_to_string(&a.input).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", a.input.display())))?;
    let mut file = LevelsFile::parse(&text_in).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", a.input.display())))?;
    if let Some(label) = &a.select {
        file.rows.retain(|r| &r.label == label);
        if file.rows.is_empty() {
            return Err(CliError::new(exit::USAGE, format!("no rows labelled {label:?} in {}", a.input.display())));
        }
    }
    let multiplets = file.multiplets().map_err(|e| match e {
        MultipletGroupError::Invalid(s) => spectra_error(s),
        dup => CliError::new(exit::PARSE, dup.to_string()),
    })?;
    let model = match (a.i_l, a.i_s, a.inv_i_ls) {
        (Some(i_l), Some(i_s), Some(inv)) => Some(level_model(i_l, i_s, inv, 1.0, a.kappa, a.hbar_sq, &numerics(None, config)?)?),
        _ => None,
    };
    let mut results = Vec::new();
    let mut csv = csv_line(&["label", "L", "S", "E0", "A", "C", "dof", "C_low", "C_high", "lande_spread", "lande_flagged"]);
    let mut text = String::new();
    for m in &multiplets {
        let fit = fit_multiplet_with(m, confidence).map_err(spectra_error)?;
        let lande = lande_report(m, config.lande_threshold).ok();
        let residuals: serde_json::Map<String, Value> = fit.residuals.iter().map(|(j, r)| (j.to_string(), json!(r))).collect();
        let mut v = json!({
            "label": fit.label,
            "L": halfint(m.l),
            "S": halfint(m.s),
            "levels": m.levels.len(),
            "E0": fit.e0,
            "A": fit.a,
            "C": fit.c,
            "covariance": (0..3).map(|i| (0..3).map(|k| fit.covariance[(i, k)]).collect::<Vec<f64>>()).collect::<Vec<_>>(),
            "dof": fit.dof,
            "confidence": fit.confidence,
            "C_interval": fit.c_kappa_bound.map(|(lo, hi)| [lo, hi]),
            "residuals": residuals,
            "condition": fit.condition,
            "lande": lande.as_ref().map(|l| json!({
                "ratios": l.ratios.iter().map(|(j, r)| json!({"J": halfint(*j), "ratio": r})).collect::<Vec<_>>(),
                "spread": l.spread,
                "threshold": l.threshold,
                "flagged": l.flagged,
            })),
        });
        if let Some(model) = &model {
            let (_, kappa) = model.curvature_coefficients();
            let (c, bound) = fit.implied_c(kappa, model.hbar_sq);
            v["assumed"] = json!({
                "I_L": model.inertia.i_l,
                "I_S": model.inertia.i_s,
                "inv_I_LS": model.inertia.inv_i_ls,
                "kappa": kappa,
                "c": c,
                "c_interval": bound.map(|(lo, hi)| [lo, hi]),
            });
        }
        let (lo, hi) = fit.c_kappa_bound.map_or((String::new(), String::new()), |(lo, hi)| (num(lo), num(hi)));
        csv.push_str(&csv_line(&[
            fit.label.clone(),
            m.l.to_string(),
            m.s.to_string(),
            num(fit.e0),
            num(fit.a),
            num(fit.c),
            fit.dof.to_string(),
            lo.clone(),
            hi.clone(),
            opt_num(lande.as_ref().map(|l| l.spread)),
            opt(lande.as_ref().map(|l| l.flagged)),
        ]));
        let _ = writeln!(
            text,
            "{} (L = {}, S = {}): E0 = {}, A = {}, C = {}, {}% interval for C: [{lo}, {hi}] (dof {})",
            fit.label, m.l, m.s, fit.e0, fit.a, fit.c, 100.0 * fit.confidence, fit.dof
        );
        results.push(v);
    }
    let json = json!({ "input": a.input.display().to_string(), "unit": file.unit, "results": results });
    Ok(ok(json, csv, text))
}

fn cmd_fmat(a: &FmatArgs) -> Result<Report, CliError> {
    let level = CoupledLevel::new(a.l, a.s, a.j).map_err(coupling_error)?;
    let six_j = f_expectation_6j(level).map_err(coupling_error)?;
    let msum = match f_expectation_msum(level) {
        Ok(v) => Some(v),
        Err(CouplingError::NotOrbital { .. }) => None,
        Err(e) => return Err(coupling_error(e)),
    };
    let agree = msum.as_ref().map(|m| *m == six_j);
    let float = num_traits_to_f64(&six_j);
    let json = json!({
        "L": halfint(a.l),
        "S": halfint(a.s),
        "J": halfint(a.j),
        "f": rational(&six_j),
        "f_msum": msum.as_ref().map(rational),
        "agree": agree,
        "f_float": float,
    });
    let csv = csv_line(&["L", "S", "J", "f", "f_msum"]) + &csv_line(&[a.l.to_string(), a.s.to_string(), a.j.to_string(), six_j.to_string(), opt(msum.as_ref())]);
    let text = format!("<{level}| f |{level}> = {six_j}{}\n", if msum.is_some() { " (both routes)" } else { " (6j route)" });
    let mut report = ok(json, csv, text);
    if agree == Some(false) {
        report.code = exit::ROUTE_DISAGREEMENT;
        report.warning = Some(format!("6j route gives {six_j}, m-sum gives {}", opt(msum.as_ref())));
    }
    Ok(report)
}

fn num_traits_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn sqrt_json(symbol: &str, args: Vec<String>, v: &SqrtRational) -> Report {
    let json = json!({
        "symbol": symbol,
        "args": args,
        "value": v.to_string(),
        "sign": v.sign(),
        "square": rational(&v.square()),
        "float": v.to_f64(),
    });
    let csv = csv_line(&["symbol", "args", "value", "float"]) + &csv_line(&[symbol.to_string(), args.join(" "), v.to_string(), num(v.to_f64())]);
    let text = format!("{symbol}({}) = {} ≈ {}\n", args.join(", "), v, v.to_f64());
    ok(json, csv, text)
}

fn cmd_wigner(symbol: &WignerSymbol) -> Result<Report, CliError> {
    let strs = |v: &[HalfInt]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>();
    Ok(match *symbol {
        WignerSymbol::Cg { j1, m1, j2, m2, j, m } => sqrt_json("cg", strs(&[j1, m1, j2, m2, j, m]), &clebsch_gordan(j1, m1, j2, m2, j, m)),
        WignerSymbol::ThreeJ { j1, j2, j3, m1, m2, m3 } => sqrt_json("3j", strs(&[j1, j2, j3, m1, m2, m3]), &wigner_3j(j1, j2, j3, m1, m2, m3)),
        WignerSymbol::SixJ { j1, j2, j3, j4, j5, j6 } => sqrt_json("6j", strs(&[j1, j2, j3, j4, j5, j6]), &wigner_6j(j1, j2, j3, j4, j5, j6)),
        WignerSymbol::Gaunt { l1, m1, l2, m2, l3, m3 } => {
            if [l1, l2, l3].iter().any(|l| *l < 0) {
                return Err(CliError::new(exit::USAGE, "degrees must be nonnegative"));
            }
            let g = gaunt(l1, m1, l2, m2, l3, m3);
            let args: Vec<String> = [l1, m1, l2, m2, l3, m3].iter().map(|x| x.to_string()).collect();
            let json = json!({ "symbol": "gaunt", "args": args, "value": g.to_string(), "float": g.to_f64() });
            let csv = csv_line(&["symbol", "args", "value", "float"]) + &csv_line(&["gaunt".to_string(), args.join(" "), g.to_string(), num(g.to_f64())]);
            let text = format!("gaunt({}) = {} ≈ {}\n", args.join(", "), g, g.to_f64());
            ok(json, csv, text)
        }
    })
}

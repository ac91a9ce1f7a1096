//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary so every line is printed whether it passes or not.
//! The process exits nonzero if any criterion fails; a failing criterion is
//! a finding and its tolerance is never loosened here.

use std::collections::HashMap;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use lande::coupling::{f_expectation_msum, multiplet_trace, CoupledLevel};
use lande::exact::{clebsch_gordan, coupled_values, int, wigner_3j, wigner_6j, HalfInt, RadicalSum, Rational, SqrtRational};
use lande::geometry::{curvature_at, laplace_beltrami_at, InertiaTriple, Numerics, ProductSpheres, Sphere};
use lande::harmonics::real_spherical_harmonic;
use lande::spectra::{interval_table, KappaSource, LevelModel};
use lande_cli::run;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde_json::Value;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn cli_json(args: &[&str]) -> Value {
    let mut full = vec!["lande"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("JSON report")
}

fn q(s: &str) -> Rational {
    Rational::from_str(s).expect("fraction literal")
}

/// Rows as printed: (S, L, J, ⟨f⟩, interval).
const PRINTED: [(i64, i64, i64, &str, Option<&str>); 14] = [
    (1, 1, 0, "8/5", None),
    (1, 1, 1, "-4/5", Some("-60/25")),
    (1, 1, 2, "4/25", Some("12/25")),
    (1, 2, 1, "4/5", None),
    (1, 2, 2, "-4/5", Some("-28/35")),
    (1, 2, 3, "8/35", Some("12/35")),
    (1, 3, 2, "16/25", None),
    (1, 3, 3, "-4/5", Some("-72/150")),
    (1, 3, 4, "4/15", Some("-20/150")),
    (2, 2, 0, "8/7", None),
    (2, 2, 1, "4/7", Some("-84/147")),
    (2, 2, 2, "-12/49", Some("-60/147")),
    (2, 2, 3, "-32/49", Some("-20/147")),
    (2, 2, 4, "16/49", Some("36/147")),
];

fn row_key(v: &Value) -> (i64, i64, i64) {
    (v["S"].as_i64().unwrap(), v["L"].as_i64().unwrap(), v["J"].as_i64().unwrap())
}

fn criterion_1() -> Verdict {
    let report = cli_json(&["table1"]);
    let rows = report["rows"].as_array().unwrap();
    if rows.len() != 14 {
        return verdict(false, format!("{} rows", rows.len()));
    }
    let mut bad = Vec::new();
    for (row, printed) in rows.iter().zip(PRINTED) {
        let expect = q(printed.3).to_string();
        let key = row_key(row);
        if key != (printed.0, printed.1, printed.2) || row["f"] != expect.as_str() || row["f_msum"] != expect.as_str() {
            bad.push(format!("{key:?}: 6j {} m-sum {} printed {}", row["f"], row["f_msum"], printed.3));
        }
    }
    let ok = bad.is_empty();
    verdict(ok, if ok { "14/14 values equal on both routes, e.g. (1,1,0) = 8/5, (2,2,4) = 16/49".into() } else { bad.join("; ") })
}

fn criterion_2() -> Verdict {
    let report = cli_json(&["table1"]);
    let rows = report["rows"].as_array().unwrap();
    let printed = PRINTED.iter().filter(|p| p.4.is_some()).count();
    let mut matched = 0;
    let mut mismatched = Vec::new();
    for (row, printed) in rows.iter().zip(PRINTED) {
        let Some(text) = printed.4 else { continue };
        let computed = q(row["interval"].as_str().unwrap());
        if computed == q(text) {
            matched += 1;
        } else {
            mismatched.push((row_key(row), text, computed));
        }
    }
    let disc = report["discrepancies"].as_array().unwrap();
    let flagged = disc.len() == 1
        && row_key(&disc[0]) == (1, 3, 4)
        && disc[0]["column"] == "interval"
        && disc[0]["verdict"].as_str().unwrap().contains("confirms");
    let only_134 = mismatched.iter().all(|m| m.0 == (1, 3, 4));
    let pass = matched >= printed - 1 && only_134 && flagged;
    let detail = format!(
        "{matched}/{printed} printed intervals reproduced; mismatches {:?}; report flags {} with verdict: {}",
        mismatched.iter().map(|m| format!("{:?} printed {} computed {}", m.0, m.1, m.2)).collect::<Vec<_>>(),
        disc.iter().map(|d| format!("{:?}", row_key(d))).collect::<Vec<_>>().join(","),
        disc.first().and_then(|d| d["verdict"].as_str()).unwrap_or("none"),
    );
    verdict(pass, detail)
}

fn random_point(rng: &mut ChaCha8Rng) -> [f64; 4] {
    [rng.random_range(0.3..2.8), rng.random_range(-3.0..3.0), rng.random_range(0.3..2.8), rng.random_range(-3.0..3.0)]
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for inertia in [0.5, 1.0, 3.0] {
        for _ in 0..5 {
            let p = random_point(&mut rng);
            let r = curvature_at(&Sphere { inertia }, &p[..2], &Numerics::default()).unwrap().scalar_r;
            worst = worst.max((r - 2.0 / inertia).abs() / (2.0 / inertia));
        }
    }
    verdict(worst < 1e-6, format!("max relative error {worst:.2e} over I ∈ {{0.5, 1, 3}} × 5 points"))
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for (il, is) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.7)] {
        let field = ProductSpheres { inertia: InertiaTriple::new(il, is, 0.0).unwrap() };
        let expect = 2.0 * (1.0 / il + 1.0 / is);
        for _ in 0..5 {
            let r = curvature_at(&field, &random_point(&mut rng), &Numerics::default()).unwrap().scalar_r;
            worst = worst.max((r - expect).abs() / expect);
        }
    }
    verdict(worst < 1e-6, format!("max relative error {worst:.2e} over 3 inertia pairs × 5 points"))
}

fn criterion_5() -> Verdict {
    let report = cli_json(&["expand", "--il", "1", "--is", "1", "--ils-inv-list", "1e-3,3e-4,1e-4", "--step", "1e-2"]);
    let betas = report["beta_grid"].as_array().unwrap().len();
    let fits = report["fits"].as_array().unwrap();
    let first = &fits[0];
    let relative = first["relative_residual"].as_f64().unwrap();
    let residual_ok = betas >= 8 && relative < 1e-2;
    let ratios: Vec<f64> = fits.iter().map(|f| f["kappa_over_inv"].as_f64().unwrap()).collect();
    let quad: Vec<f64> = fits.iter().map(|f| f["kappa_over_inv_sq"].as_f64().unwrap()).collect();
    let spread = report["linear"]["relative_spread"].as_f64().unwrap();
    let linear_ok = spread <= 0.01;
    verdict(
        residual_ok && linear_ok,
        format!(
            "{betas} β values; residual/(|κ| range f) = {relative:.2e} at 1/I_LS = 1e-3 [{}]; κ/(1/I_LS) = {:.4e}, {:.4e}, {:.4e}, spread {:.1}% [{}]; κ/(1/I_LS)² = {:.4}, {:.4}, {:.4} (quadratic spread {:.2}%), log-log slope {:.4}; printed coefficient (16/3)(I_L+I_S) = {:.4}",
            if residual_ok { "ok" } else { "fails" },
            ratios[0],
            ratios[1],
            ratios[2],
            100.0 * spread,
            if linear_ok { "ok" } else { "fails: κ is quadratic in 1/I_LS" },
            quad[0],
            quad[1],
            quad[2],
            100.0 * report["quadratic"]["relative_spread"].as_f64().unwrap(),
            report["exponent"].as_f64().unwrap(),
            report["paper_linear_coefficient"].as_f64().unwrap(),
        ),
    )
}

fn criterion_6() -> Verdict {
    let inertia = 1.7;
    let field = Sphere { inertia };
    let points = [[1.1, 0.3], [0.7, 2.1], [2.2, -1.4], [1.6, 0.9]];
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for l in 0..=3u32 {
        for m in -(l as i32)..=(l as i32) {
            let y = move |p: &[f64]| real_spherical_harmonic(l, m, p[0], p[1]);
            let eigen = -f64::from(l * (l + 1)) / inertia;
            let mut used = 0;
            for p in &points {
                let value = y(p);
                let lap = laplace_beltrami_at(&field, &y, p, &Numerics::default()).unwrap();
                if l == 0 {
                    worst = worst.max(lap.abs());
                    used += 1;
                } else if value.abs() > 1e-2 {
                    worst = worst.max((lap - eigen * value).abs() / (eigen * value).abs());
                    used += 1;
                }
            }
            checked += usize::from(used >= 2);
        }
    }
    verdict(worst < 1e-6 && checked == 16, format!("16 harmonics (l ≤ 3, all m), {checked} checked at ≥ 2 points; max relative error {worst:.2e}"))
}

fn criterion_7() -> Verdict {
    // Dyadic inputs keep every intermediate exactly representable.
    let models = [(0.5, 2.0, 0.25, 1.0), (4.0, 0.25, -0.125, 2.0)];
    let mut multiplets = 0;
    let mut failures = Vec::new();
    for (il, is, inv, hbar_sq) in models {
        let model = LevelModel::new(InertiaTriple::new(il, is, inv).unwrap(), 0.0, KappaSource::PaperR2, hbar_sq).unwrap();
        for tl in 0..=8 {
            for ts in 0..=8 {
                let rows = interval_table(HalfInt::from_twice(tl), HalfInt::from_twice(ts), &model).unwrap();
                if rows.len() < 2 {
                    continue;
                }
                multiplets += 1;
                let slopes: Vec<f64> = rows.iter().filter_map(|r| r.interval).collect();
                if slopes.iter().any(|s| *s != hbar_sq * inv) {
                    failures.push(format!("L={} S={}: {slopes:?}", HalfInt::from_twice(tl), HalfInt::from_twice(ts)));
                }
            }
        }
    }
    verdict(failures.is_empty(), if failures.is_empty() { format!("{multiplets} multiplets, every (E_J - E_J-1)/J equals ħ²/I_LS exactly") } else { failures.join("; ") })
}

fn criterion_8() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let args = ["--il", "1", "--is", "1", "--ils-inv", "0.2", "--c", "0.5", "--L", "2", "--S", "2"];
    let model = cli_json(&[&["predict"][..], &args].concat());
    let m = &model["model"];
    let (r0, kappa, c_true, a_true) = (m["R0"].as_f64().unwrap(), m["kappa"].as_f64().unwrap(), m["C"].as_f64().unwrap(), m["lande_slope"].as_f64().unwrap());
    // E0 collects every J-independent term: (1/2)(6/I_L + 6/I_S) - (1/2)(1/I_LS)(12) + c(R0 - κ)
    let e0_true = 0.5 * (6.0 + 6.0) - 0.5 * 0.2 * 12.0 + 0.5 * (r0 - kappa);
    let mut full = vec!["lande", "predict"];
    full.extend_from_slice(&args);
    full.extend_from_slice(&["--format", "csv"]);
    let csv = run(full).stdout;
    std::fs::write(&path, &csv).unwrap();
    let fit = cli_json(&["fit", "--input", path.to_str().unwrap()]);
    let r = &fit["results"][0];
    let rel = |got: &Value, want: f64| (got.as_f64().unwrap() - want).abs() / want.abs();
    let errors = [rel(&r["E0"], e0_true), rel(&r["A"], a_true), rel(&r["C"], c_true)];
    let noiseless = errors.iter().all(|e| *e < 1e-9);

    let energies: Vec<(String, f64)> = csv
        .lines()
        .skip(1)
        .map(|line| {
            let (head, rest) = line.rsplit_once(',').unwrap().0.rsplit_once(',').unwrap();
            (head.to_string(), rest.parse().unwrap())
        })
        .collect();
    let sigma = 0.01;
    let noise = Normal::new(0.0, sigma).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trials = 1000;
    let mut covered = 0;
    for _ in 0..trials {
        let mut text = String::from("label,L,S,J,energy,uncertainty\n");
        for (head, e) in &energies {
            text.push_str(&format!("{head},{:.16e},{sigma}\n", e + noise.sample(&mut rng)));
        }
        std::fs::write(&path, &text).unwrap();
        let out = cli_json(&["fit", "--input", path.to_str().unwrap()]);
        let bound = out["results"][0]["C_interval"].as_array().unwrap();
        let (lo, hi) = (bound[0].as_f64().unwrap(), bound[1].as_f64().unwrap());
        covered += usize::from(lo <= c_true && c_true <= hi);
    }
    let coverage = covered as f64 / trials as f64;
    verdict(
        noiseless && coverage >= 0.93,
        format!("noiseless relative errors E0 {:.1e}, A {:.1e}, C {:.1e}; 95% interval covered C in {covered}/{trials} noisy trials", errors[0], errors[1], errors[2]),
    )
}

fn radical(v: &SqrtRational) -> RadicalSum {
    RadicalSum::from(v)
}

fn halves(max_twice: i32) -> impl Iterator<Item = HalfInt> + Clone {
    (0..=max_twice).map(HalfInt::from_twice)
}

fn cg_checks(failures: &mut Vec<String>) -> usize {
    let mut checks = 0;
    for j1 in halves(8) {
        for j2 in halves(8) {
            let totals: Vec<HalfInt> = coupled_values(j1, j2).collect();
            let mut table: HashMap<(HalfInt, HalfInt, HalfInt), SqrtRational> = HashMap::new();
            for m1 in j1.projections() {
                for m2 in j2.projections() {
                    for &j in &totals {
                        if j.admits_projection(m1 + m2) {
                            table.insert((m1, j, m1 + m2), clebsch_gordan(j1, m1, j2, m2, j, m1 + m2));
                        }
                    }
                }
            }
            // orthogonality: Σ_{m1} ⟨m1 m2|J M⟩⟨m1 m2|J' M⟩ = δ_{JJ'}
            for m in (j1 + j2).projections() {
                for &ja in &totals {
                    for &jb in &totals {
                        if !ja.admits_projection(m) || !jb.admits_projection(m) {
                            continue;
                        }
                        let mut sum = RadicalSum::zero();
                        for m1 in j1.projections() {
                            if let (Some(a), Some(b)) = (table.get(&(m1, ja, m)), table.get(&(m1, jb, m))) {
                                sum += &radical(&(a * b));
                            }
                        }
                        let expect = if ja == jb { int(1) } else { int(0) };
                        checks += 1;
                        if sum.as_rational() != Some(expect) {
                            failures.push(format!("CG orthogonality j1={j1} j2={j2} J={ja} J'={jb} M={m}"));
                        }
                    }
                }
            }
            // completeness: Σ_J ⟨m1 m2|J M⟩⟨m1' m2'|J M⟩ = δ_{m1 m1'}
            for m in (j1 + j2).projections() {
                for m1 in j1.projections() {
                    for m1p in j1.projections() {
                        if !j2.admits_projection(m - m1) || !j2.admits_projection(m - m1p) {
                            continue;
                        }
                        let mut sum = RadicalSum::zero();
                        for &j in &totals {
                            if let (Some(a), Some(b)) = (table.get(&(m1, j, m)), table.get(&(m1p, j, m))) {
                                sum += &radical(&(a * b));
                            }
                        }
                        let expect = if m1 == m1p { int(1) } else { int(0) };
                        checks += 1;
                        if sum.as_rational() != Some(expect) {
                            failures.push(format!("CG completeness j1={j1} j2={j2} M={m} m1={m1} m1'={m1p}"));
                        }
                    }
                }
            }
        }
    }
    checks
}

fn threej_checks(failures: &mut Vec<String>) -> usize {
    let mut checks = 0;
    for j1 in halves(8) {
        for j2 in halves(8) {
            for j3 in coupled_values(j1, j2) {
                let total = (j1 + j2 + j3).as_integer().expect("triangle gives an integer sum");
                let odd = if total % 2 == 0 { 1 } else { -1 };
                for m1 in j1.projections() {
                    for m2 in j2.projections() {
                        let m3 = -(m1 + m2);
                        if !j3.admits_projection(m3) {
                            continue;
                        }
                        let w = wigner_3j(j1, j2, j3, m1, m2, m3);
                        let cyclic = wigner_3j(j2, j3, j1, m2, m3, m1);
                        let swapped = wigner_3j(j2, j1, j3, m2, m1, m3);
                        let flipped = wigner_3j(j1, j2, j3, -m1, -m2, -m3);
                        // (j1 j2 j3; m1 m2 m3) = (-1)^{j1-j2-M} ⟨j1 m1 j2 m2|j3 -m3⟩ / √(2j3+1)
                        let phase_twice = (j1 - j2 - m3).twice();
                        let phase = if (phase_twice / 2) % 2 == 0 { 1 } else { -1 };
                        let via_cg = &clebsch_gordan(j1, m1, j2, m2, j3, -m3).scale(i64::from(phase))
                            * &SqrtRational::sqrt(Rational::new(1.into(), (j3.multiplicity() as i64).into()));
                        checks += 4;
                        for (name, holds) in [("cyclic", cyclic == w), ("swap", swapped == w.scale(odd)), ("m flip", flipped == w.scale(odd)), ("CG relation", via_cg == w)] {
                            if !holds {
                                failures.push(format!("3j {name} ({j1} {j2} {j3}; {m1} {m2} {m3})"));
                            }
                        }
                    }
                }
            }
        }
    }
    checks
}

fn sixj_checks(failures: &mut Vec<String>) -> usize {
    let mut cache: HashMap<[HalfInt; 6], SqrtRational> = HashMap::new();
    let mut six = |a: [HalfInt; 6]| cache.entry(a).or_insert_with(|| wigner_6j(a[0], a[1], a[2], a[3], a[4], a[5])).clone();
    let mut checks = 0;
    // Σ_x (2x+1)(2f+1) {a b x; c d f}{a b x; c d f'} = δ_{ff'}
    for a in halves(8) {
        for b in halves(8) {
            for c in halves(8) {
                for d in halves(8) {
                    let xs: Vec<HalfInt> = coupled_values(a, b).filter(|x| lande::exact::triangle(c, d, *x)).collect();
                    if xs.is_empty() {
                        continue;
                    }
                    let fs: Vec<HalfInt> = coupled_values(a, d).filter(|f| lande::exact::triangle(c, b, *f)).collect();
                    for &f in &fs {
                        for &fp in &fs {
                            if fp < f {
                                continue;
                            }
                            let mut sum = RadicalSum::zero();
                            for &x in &xs {
                                let prod = &six([a, b, x, c, d, f]) * &six([a, b, x, c, d, fp]);
                                sum += &radical(&prod.scale(i64::from(x.multiplicity() * f.multiplicity())));
                            }
                            let expect = if f == fp { int(1) } else { int(0) };
                            checks += 1;
                            if sum.as_rational() != Some(expect) {
                                failures.push(format!("6j orthogonality a={a} b={b} c={c} d={d} f={f} f'={fp}"));
                            }
                        }
                    }
                }
            }
        }
    }
    checks
}

fn selection_rule_checks(failures: &mut Vec<String>) -> usize {
    let h = HalfInt::from_twice;
    let cases: Vec<(&str, SqrtRational)> = vec![
        ("CG m1 + m2 ≠ M", clebsch_gordan(h(2), h(2), h(2), h(0), h(2), h(0))),
        ("CG triangle", clebsch_gordan(h(2), h(0), h(2), h(0), h(6), h(0))),
        ("CG |m| > j", clebsch_gordan(h(2), h(4), h(2), h(-4), h(2), h(0))),
        ("CG mixed integer/half-integer", clebsch_gordan(h(1), h(1), h(2), h(0), h(2), h(1))),
        ("CG ⟨1 0 1 0|1 0⟩", clebsch_gordan(h(2), h(0), h(2), h(0), h(2), h(0))),
        ("3j m sum ≠ 0", wigner_3j(h(2), h(2), h(2), h(2), h(0), h(0))),
        ("3j odd J with m = 0", wigner_3j(h(2), h(2), h(2), h(0), h(0), h(0))),
        ("3j triangle", wigner_3j(h(2), h(2), h(8), h(0), h(0), h(0))),
        ("6j triangle (j1 j2 j3)", wigner_6j(h(2), h(2), h(8), h(2), h(2), h(2))),
        ("6j triangle (j1 j5 j6)", wigner_6j(h(2), h(2), h(2), h(8), h(2), h(2))),
        ("6j half-integer triad", wigner_6j(h(1), h(2), h(2), h(2), h(2), h(2))),
    ];
    let mut checks = 0;
    for (name, v) in cases {
        checks += 1;
        if !v.is_zero() {
            failures.push(format!("{name}: {v}"));
        }
    }
    // every 3j with odd j1+j2+j3 and all m = 0 vanishes
    for j1 in 0..=4 {
        for j2 in 0..=4 {
            for j3 in 0..=4 {
                if (j1 + j2 + j3) % 2 == 1 {
                    checks += 1;
                    if !wigner_3j(HalfInt::int(j1), HalfInt::int(j2), HalfInt::int(j3), HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO).is_zero() {
                        failures.push(format!("3j ({j1} {j2} {j3}; 0 0 0)"));
                    }
                }
            }
        }
    }
    checks
}

fn criterion_9() -> Verdict {
    let mut failures = Vec::new();
    let cg = cg_checks(&mut failures);
    let tj = threej_checks(&mut failures);
    let sj = sixj_checks(&mut failures);
    let zeros = selection_rule_checks(&mut failures);
    let detail = format!(
        "j ≤ 4 in half steps: {cg} CG orthogonality/completeness sums, {tj} 3j symmetry relations, {sj} 6j orthogonality sums, {zeros} selection-rule zeros; {} failures{}",
        failures.len(),
        failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
    );
    verdict(failures.is_empty(), detail)
}

fn criterion_10() -> Verdict {
    let mut failures = Vec::new();
    let mut count = 0;
    for tl in 2..=8 {
        for ts in 2..=8 {
            let (l, s) = (HalfInt::from_twice(tl), HalfInt::from_twice(ts));
            count += 1;
            let trace = multiplet_trace(l, s).unwrap();
            if !trace.is_zero() {
                failures.push(format!("L={l} S={s}: {trace}"));
            }
            if let (Some(_), Some(_)) = (l.as_integer(), s.as_integer()) {
                let oracle = CoupledLevel::multiplet(l, s).into_iter().fold(Rational::zero(), |acc, lv| {
                    acc + f_expectation_msum(lv).unwrap() * int(i64::from(lv.j().multiplicity()))
                });
                if !oracle.is_zero() {
                    failures.push(format!("m-sum L={l} S={s}: {oracle}"));
                }
            }
        }
    }
    verdict(failures.is_empty(), if failures.is_empty() { format!("Σ (2J+1)⟨f⟩_J = 0 for all {count} multiplets with 1 ≤ L, S ≤ 4 (half steps), m-sum oracle agrees on the integer ones") } else { failures.join("; ") })
}

type Criterion = (u32, &'static str, fn() -> Verdict, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "published ⟨f⟩ column by both routes", criterion_1, Some(Duration::from_secs(1))),
        (2, "published interval column", criterion_2, None),
        (3, "sphere curvature regression", criterion_3, Some(Duration::from_secs(1))),
        (4, "decoupled product curvature", criterion_4, Some(Duration::from_secs(10))),
        (5, "angular structure of the curvature correction", criterion_5, Some(Duration::from_secs(60))),
        (6, "Laplace-Beltrami eigenfunctions", criterion_6, Some(Duration::from_secs(5))),
        (7, "exact Landé baseline", criterion_7, None),
        (8, "predict → CSV → fit round trip and coverage", criterion_8, Some(Duration::from_secs(30))),
        (9, "Wigner-algebra property suite", criterion_9, Some(Duration::from_secs(10))),
        (10, "multiplet trace rule", criterion_10, None),
    ];
    let mut failed = 0;
    let mut stdout = std::io::stdout();
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = v.pass && in_time;
        failed += usize::from(!pass);
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {}s{}", elapsed.as_secs_f64(), l.as_secs(), if in_time { "" } else { ", TOO SLOW" }),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        let _ = writeln!(stdout, "{} criterion {n:>2} ({name}): {} [{timing}]", if pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let _ = writeln!(stdout, "acceptance: {}/10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

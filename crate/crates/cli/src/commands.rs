use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use moonshine_core::cusps::{enumerate_cusps, zg_cusp_condition, CuspRep};
use moonshine_core::expsums::{
    dedekind_reciprocity_defect, dedekind_s, dedekind_s_fast, gauss_brute, gauss_closed,
    kloosterman_classical, kloosterman_jacobi, kloosterman_principal_fast, classical_index,
    GaussSumParams, KloostermanParams,
};
use moonshine_core::jacseries::{assemble_z, phi_g_holo, z_g, JacobiSeries};
use moonshine_core::mockforms::{class, classes, h_g, mock_h, t_g, table_canonical_text, ConjugacyClassData};
use moonshine_core::poincare::{
    exact_coefficient, poincare_c, poincare_c_from_b, ConvergenceTrace, KloostermanPath,
    PoincareRequest, ROUNDING_GATE, STABILIZATION_GATE,
};
use moonshine_core::qseries::{exponent, exponent_string};
use moonshine_core::ring::rational_string;
use moonshine_core::{ComplexValue, FormalQSeries};

use crate::config::{RunConfig, Verb, DEFAULT_CMAX};
use crate::error::{CliError, CliResult, Context};
use crate::report::{float, pair, Record, Report};
use crate::suites::{self, SuiteOptions};

/// Runs one command and collects its report; writing it out is the caller's job.
pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let mut report = Report::new(cfg.verb.name());
    match cfg.verb {
        Verb::Classes => classes_cmd(cfg, &mut report),
        Verb::H => {
            let order = cfg.order.unwrap_or(exponent(10, 1));
            let h = mock_h(order).context(|| "expanding H".into())?;
            series_output(&mut report, "h", json!({"order": exponent_string(&order)}), &h.series);
            Ok(())
        }
        Verb::Hg => {
            let c = lookup(cfg)?;
            let order = cfg.order.unwrap_or(exponent(10, 1));
            let h = h_g(c, order).context(|| format!("expanding H_g for {}", c.label))?;
            let params = json!({"class": c.label, "order": exponent_string(&order)});
            series_output(&mut report, "hg", params, &h.series);
            Ok(())
        }
        Verb::Tg => {
            let c = lookup(cfg)?;
            let order = cfg.order.unwrap_or(exponent(10, 1));
            let t = t_g(c, order).context(|| format!("expanding T_g for {}", c.label))?;
            let params = json!({"class": c.label, "order": exponent_string(&order)});
            series_output(&mut report, "tg", params, &t);
            Ok(())
        }
        Verb::Z => {
            let order = cfg.order.unwrap_or(exponent(4, 1));
            let z = assemble_z(order).context(|| "assembling Z".into())?;
            jacobi_output(&mut report, "z", json!({"order": exponent_string(&order)}), &z);
            Ok(())
        }
        Verb::Zg => {
            let c = lookup(cfg)?;
            let order = cfg.order.unwrap_or(exponent(4, 1));
            let z = z_g(c, order).context(|| format!("assembling Z_g for {}", c.label))?;
            let params = json!({"class": c.label, "order": exponent_string(&order)});
            jacobi_output(&mut report, "zg", params, &z);
            Ok(())
        }
        Verb::Phig => {
            let c = lookup(cfg)?;
            let order = cfg.order.unwrap_or(exponent(4, 1));
            let p = phi_g_holo(c, order).context(|| format!("holomorphic part for {}", c.label))?;
            let params = json!({"class": c.label, "order": exponent_string(&order)});
            jacobi_output(&mut report, "phig", params, &p);
            Ok(())
        }
        Verb::Table2 => cusp_table_cmd(cfg, &mut report),
        Verb::ZgCuspCheck => zg_cusp_cmd(cfg, &mut report),
        Verb::Gauss => gauss_cmd(cfg, &mut report),
        Verb::Dedekind => dedekind_cmd(cfg, &mut report),
        Verb::Kloosterman => kloosterman_cmd(cfg, &mut report),
        Verb::VerifyGauss => suite_records(&mut report, suites::gauss_sums(&options(cfg))?),
        Verb::VerifyF => suite_records(&mut report, suites::f_identity(&options(cfg))?),
        Verb::VerifyReduction => {
            suite_records(&mut report, suites::reduction_identity(&options(cfg))?)
        }
        Verb::Poincare => poincare_cmd(cfg, &mut report),
        Verb::VerifyAll => {
            for outcome in suites::all(&options(cfg))? {
                report.push(outcome.record());
            }
            Ok(())
        }
    }?;
    Ok(report)
}

fn options(cfg: &RunConfig) -> SuiteOptions {
    SuiteOptions {
        fast: cfg.fast,
        seed: cfg.seed,
        tol: cfg.tol,
        cmax: cfg.cmax,
    }
}

fn suite_records(report: &mut Report, outcome: suites::SuiteOutcome) -> CliResult<()> {
    report.records.extend(outcome.records);
    Ok(())
}

fn lookup(cfg: &RunConfig) -> CliResult<&'static ConjugacyClassData> {
    let label = cfg.single_class()?;
    class(label).context(|| "looking up the class".into())
}

fn lookup_or_identity(cfg: &RunConfig) -> CliResult<&'static ConjugacyClassData> {
    if cfg.classes.is_empty() {
        class("1A").context(|| "looking up the class".into())
    } else {
        lookup(cfg)
    }
}

/// Lowercase hex SHA-256 of the canonical class table.
pub fn table_checksum() -> String {
    Sha256::digest(table_canonical_text().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn classes_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    if cfg.checksum {
        let sum = table_checksum();
        report.text = Some(format!("{sum}\n"));
        report.push(Record::computed(
            "classes/checksum",
            json!({"algorithm": "sha256"}),
            "canonical text of the class table",
            json!(sum),
        ));
        return Ok(());
    }
    let mut csv = String::from("label,chi,n,h\n");
    for c in classes() {
        csv.push_str(&format!("{},{},{},{}\n", c.label, c.chi, c.n, c.h));
        report.push(Record::computed("classes", json!({"class": c.label}), "class table", c.to_json()));
    }
    report.text = Some(csv.replace(',', "\t"));
    report.csv = Some(csv);
    Ok(())
}

fn series_csv(s: &FormalQSeries) -> String {
    let mut out = String::from("exponent,re,im\n");
    for (e, c) in s.terms() {
        out.push_str(&format!(
            "{},{},{}\n",
            exponent_string(&e),
            rational_string(&c.re),
            rational_string(&c.im)
        ));
    }
    out
}

fn series_output(report: &mut Report, op: &str, params: Value, s: &FormalQSeries) {
    report.csv = Some(series_csv(s));
    report.text = Some(format!("{s}\n"));
    report.push(Record::computed(op, params, "exact series arithmetic", s.to_json()));
}

fn jacobi_output(report: &mut Report, op: &str, params: Value, s: &JacobiSeries) {
    report.csv = Some(s.to_csv());
    report.text = Some(s.to_csv());
    report.push(Record::computed(op, params, "exact series arithmetic", s.to_json()));
}

fn selected_classes(cfg: &RunConfig) -> CliResult<Vec<&'static ConjugacyClassData>> {
    if cfg.classes.is_empty() {
        return Ok(classes().iter().collect());
    }
    cfg.classes
        .iter()
        .map(|l| class(l).context(|| "looking up the class".into()))
        .collect()
}

fn condition_record(c: &ConjugacyClassData, cusp: &CuspRep) -> CliResult<Record> {
    let cond = zg_cusp_condition(c, cusp)
        .context(|| format!("O(q^(1/4)) condition for {} at {cusp}", c.label))?;
    Ok(Record::computed(
        "zg-cusp-check",
        json!({"class": c.label, "cusp": cusp.to_string()}),
        "T_g slashed to the cusp is -chi/12 + O(q^(1/4))",
        cond.to_json(),
    ))
}

fn cusp_table_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    let chosen = selected_classes(cfg)?;
    let labels: Vec<&str> = chosen.iter().map(|c| c.label).collect();
    let outcome = suites::cusp_table(Some(&labels))?;
    report.records.extend(outcome.records);
    for c in chosen {
        for cusp in enumerate_cusps(c.n as u64).iter().filter(|p| !p.is_infinity()) {
            report.push(condition_record(c, cusp)?);
        }
    }
    Ok(())
}

fn zg_cusp_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    let c = lookup(cfg)?;
    let cusps = match &cfg.cusp {
        Some(s) => vec![CuspRep::parse(s, c.n as u64).context(|| "parsing --cusp".into())?],
        None => enumerate_cusps(c.n as u64).into_iter().filter(|p| !p.is_infinity()).collect(),
    };
    for cusp in &cusps {
        if cusp.is_infinity() {
            return Err(CliError::usage("zg-cusp-check concerns finite cusps"));
        }
        report.push(condition_record(c, cusp)?);
    }
    Ok(())
}

fn complex(v: ComplexValue) -> Value {
    let (re, im) = v.to_pair();
    pair(re, im)
}

fn gauss_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    let p = GaussSumParams::new(cfg.require(cfg.a, "a")?, cfg.require(cfg.b, "b")?, cfg.require(cfg.c, "c")?);
    let brute = gauss_brute(p).context(|| format!("direct sum G({},{},{})", p.a, p.b, p.c))?;
    let closed = gauss_closed(p).context(|| format!("closed form of G({},{},{})", p.a, p.b, p.c))?;
    let defect = (closed - brute).abs_f64();
    report.push(Record::check(
        "gauss",
        json!({"a": p.a, "b": p.b, "c": p.c}),
        "direct summation over n mod c",
        json!({"closed": complex(closed), "brute": complex(brute), "defect": float(defect)}),
        defect < cfg.tolerance(),
    ));
    Ok(())
}

fn dedekind_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    let (a, c) = (cfg.require(cfg.a, "a")?, cfg.require(cfg.c, "c")?);
    let direct = dedekind_s(a, c).context(|| format!("s({a},{c}) by its defining sum"))?;
    let fast = dedekind_s_fast(a, c).context(|| format!("s({a},{c}) by reciprocity"))?;
    let mut value = json!({"direct": direct.to_string(), "reciprocity": fast.to_string()});
    let mut pass = direct == fast;
    if a > 0 {
        let defect = dedekind_reciprocity_defect(a, c).context(|| "reciprocity defect".into())?;
        value["reciprocity_defect"] = json!(defect.to_string());
        pass &= defect == 0.into();
    }
    report.push(Record::check("dedekind", json!({"a": a, "c": c}), "defining sum over k mod c", value, pass));
    Ok(())
}

fn kloosterman_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    let cl = lookup_or_identity(cfg)?;
    let (n, h) = (cl.n as i64, cl.h as i64);
    let c = cfg.require(cfg.c, "c")?;
    let np = cfg.nprime.unwrap_or(1);
    let rp = cfg.rprime.unwrap_or(1);
    let ctx = || format!("Kloosterman sum at c={c}, N={n}, h={h}");
    let brute = kloosterman_jacobi(&KloostermanParams::principal(c, np, rp, n, h)).context(ctx)?;
    let fast = kloosterman_principal_fast(c, np, rp, n, h).context(ctx)?;
    let mut value = json!({"brute": complex(brute), "fast": complex(fast)});
    if let Ok(k) = classical_index(np, rp) {
        let s = kloosterman_classical(k, c, n, h).context(ctx)?;
        value["classical"] = json!({"k": k, "value": complex(s)});
    }
    let defect = (brute - fast).abs_f64();
    value["defect"] = float(defect);
    report.push(Record::check(
        "kloosterman",
        json!({"class": cl.label, "N": n, "h": h, "c": c, "n": np, "r": rp}),
        "double sum over d and lambda",
        value,
        defect < cfg.tolerance().min(1e-8),
    ));
    Ok(())
}

fn trace_csv(trace: &ConvergenceTrace) -> String {
    let mut out = String::from("c,re,im\n");
    for (c, v) in &trace.partials {
        let (re, im) = v.to_pair();
        out.push_str(&format!("{c},{re:.12e},{im:.12e}\n"));
    }
    out
}

fn poincare_cmd(cfg: &RunConfig, report: &mut Report) -> CliResult<()> {
    let cl = lookup_or_identity(cfg)?;
    let np = cfg.nprime.unwrap_or(1);
    let rp = cfg.rprime.unwrap_or(1);
    let cmax = cfg.cmax.unwrap_or(DEFAULT_CMAX);
    let req = PoincareRequest::for_class(cl, np, rp, cmax).with_precision(cfg.precision);
    let ctx = || format!("Rademacher sum for {} at ({np}, {rp})", cl.label);
    let trace = poincare_c(&req).context(ctx)?;
    let numeric = trace.final_value.re.to_f64();
    let exact = exact_coefficient(cl, np, rp).context(ctx)?;
    let difference = (numeric - exact as f64).abs();
    let gate = cfg.tol.unwrap_or(ROUNDING_GATE);
    let params = json!({
        "class": cl.label, "N": req.level, "h": req.h, "n": np, "r": rp,
        "cmax": cmax, "precision_bits": req.precision.bits(),
    });
    let mut value = json!({
        "trace": trace.to_json(40),
        "exact": exact,
        "difference": float(difference),
    });
    let mut pass = difference < gate && trace.stabilization < STABILIZATION_GATE;
    if cfg.audit {
        let audit = poincare_c_from_b(&req.with_path(KloostermanPath::Brute)).context(ctx)?;
        let gap = (audit.final_value - trace.final_value).abs_f64();
        value["audit"] = json!({"final": complex(audit.final_value), "gap": float(gap)});
        pass &= gap < 1e-8;
    }
    report.csv = Some(trace_csv(&trace));
    report.push(Record::check(
        "poincare",
        params,
        "coefficient of the holomorphic index two form",
        value,
        pass,
    ));
    Ok(())
}

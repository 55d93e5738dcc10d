use crate::report::{predicted_gk, Check, Exit, RunReport};
use rayon::prelude::*;
use serde_json::{json, Value};
use sextic_core::curves::geom;
use sextic_core::cycles::{build_cycle, conjugate_cycle, cycle_classes, cycle_report, verify_divisor_sum, CycleError, CycleReport, Which};
use sextic_core::degen::{build_degeneration_with, path_report, DegenError, PathOptions};
use sextic_core::families::{check_genericity, expected_invariants, generate_with, verify_membership, Branch, FamilyError, FamilySpec, GenConfig, MarkedSextic};
use sextic_core::lattice::{analyze, build_resolution, LatticeReport};
use std::path::{Path, PathBuf};

/// Options shared by every subcommand.
pub struct Common {
    pub json: bool,
    pub out: Option<PathBuf>,
    pub height: Option<i64>,
}

impl Common {
    fn gen_config(&self) -> GenConfig {
        let mut c = GenConfig::default();
        if let Some(h) = self.height {
            c.height = h;
        }
        c
    }
}

/// Where an instance comes from: a file, or a fresh (r, seed) generation.
pub enum Source {
    File(PathBuf),
    Fresh { r: u32, seed: u64 },
}

fn family_exit(e: &FamilyError) -> (Exit, &'static str) {
    match e {
        FamilyError::BadLabel(_) => (Exit::Usage, "bad_label"),
        FamilyError::RetryExhausted { .. } => (Exit::Retry, "retry_exhausted"),
        FamilyError::Malformed(_) => (Exit::Io, "malformed_instance"),
        _ => (Exit::Mismatch, "degenerate"),
    }
}

fn load(src: &Source, c: &Common, rep: &mut RunReport) -> Option<MarkedSextic> {
    match src {
        Source::File(p) => {
            let text = match std::fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) => {
                    rep.fail(Exit::Io, "read_instance", "io", format!("{}: {e}", p.display()));
                    return None;
                }
            };
            let v: Value = match serde_json::from_str(&text) {
                Ok(v) => v,
                Err(e) => {
                    rep.fail(Exit::Io, "read_instance", "malformed_instance", e.to_string());
                    return None;
                }
            };
            match MarkedSextic::from_json(&v) {
                Ok(ms) => Some(ms),
                Err(e) => {
                    rep.fail(Exit::Io, "read_instance", "malformed_instance", e.to_string());
                    None
                }
            }
        }
        Source::Fresh { r, seed } => match generate_with(*r, *seed, &c.gen_config()) {
            Ok(ms) => Some(ms),
            Err(e) => {
                let (code, reason) = family_exit(&e);
                rep.fail(code, "generate", reason, e.to_string());
                None
            }
        },
    }
}

fn source_json(src: &Source) -> Value {
    match src {
        Source::File(p) => json!({"instance": p.display().to_string()}),
        Source::Fresh { r, seed } => json!({"r": r, "seed": seed}),
    }
}

/// Write the artifact to --out, or embed it in the report.
fn emit(rep: &mut RunReport, c: &Common, artifact: Value) {
    match &c.out {
        Some(p) => match write_json(p, &artifact) {
            Ok(()) => rep.artifacts.push(p.display().to_string()),
            Err(e) => rep.fail(Exit::Io, "write_artifact", "io", format!("{}: {e}", p.display())),
        },
        None => rep.result = Some(artifact),
    }
}

fn write_json(p: &Path, v: &Value) -> std::io::Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    std::fs::write(p, s)
}

/// Membership clauses and genericity as report checks; returns the exit code they imply.
fn membership_checks(ms: &MarkedSextic, rep: &mut RunReport) -> Exit {
    let m = verify_membership(ms);
    for cl in &m.clauses {
        rep.check(Check::new(&format!("membership.{}", cl.name), cl.pass, &format!("membership_{}", cl.name), cl.detail.clone()));
    }
    let g = check_genericity(ms);
    rep.check(Check::new("genericity", g.pass, "genericity", g.detail.clone()));
    if !m.pass() {
        Exit::Mismatch
    } else if !g.pass {
        Exit::Genericity
    } else {
        Exit::Ok
    }
}

pub fn generate(r: u32, seed: u64, c: &Common) -> RunReport {
    let mut rep = RunReport::new("generate", json!({"r": r, "seed": seed, "height": c.gen_config().height}));
    let Some(ms) = load(&Source::Fresh { r, seed }, c, &mut rep) else { return rep };
    rep.exit = membership_checks(&ms, &mut rep);
    if let Ok(loc) = ms.locus() {
        let spec = FamilySpec::get(r).expect("label checked");
        rep.check(Check::new(
            "census",
            true,
            "census",
            format!("{} nodes, {} triple points ({})", loc.count(sextic_core::curves::SingKind::Node), loc.count(sextic_core::curves::SingKind::OrdinaryTriple), spec.description),
        ));
    }
    emit(&mut rep, c, ms.to_json());
    rep
}

pub fn verify(src: &Source, c: &Common) -> RunReport {
    let mut rep = RunReport::new("verify", source_json(src));
    let Some(ms) = load(src, c, &mut rep) else { return rep };
    rep.exit = membership_checks(&ms, &mut rep);
    let m = verify_membership(&ms);
    emit(&mut rep, c, json!({"membership": m.to_json(), "genericity": check_genericity(&ms).to_json()}));
    rep
}

/// Compare a lattice report with the expected row of family r.
fn invariant_checks(r: u32, lr: &LatticeReport, ms: &MarkedSextic, rep: &mut RunReport) -> bool {
    let got = lr.invariants.triple();
    let want = expected_invariants(r);
    let mut ok = got == want;
    rep.check(Check::new("invariants", got == want, "invariants_mismatch", format!("computed {got:?}, expected {want:?}")));
    match &lr.predicted {
        Ok(p) => {
            let same = (p.g, p.k) == (lr.fixed_locus.g, lr.fixed_locus.k);
            ok &= same;
            rep.check(Check::new("fixed_locus", same, "fixed_locus_mismatch", format!("geometric (g, k) = ({}, {}), predicted ({}, {})", lr.fixed_locus.g, lr.fixed_locus.k, p.g, p.k)));
        }
        Err(e) => {
            ok = false;
            rep.check(Check::new("fixed_locus", false, "fixed_locus_prediction", e.to_string()));
        }
    }
    if let Ok(loc) = ms.locus() {
        use sextic_core::curves::SingKind;
        let (n, t) = (loc.count(SingKind::Node), loc.count(SingKind::OrdinaryTriple));
        let rule = 1 + n as u32 + 4 * t as u32;
        ok &= rule == got.0;
        rep.check(Check::new("rank_rule", rule == got.0, "rank_rule", format!("1 + {n} + 4·{t} = {rule}, rank {}", got.0)));
    }
    let comps = lr.model.branch.len() as u32;
    let index = lr.lattice.overlattice_index.to_string();
    let want_index = (1u64 << comps.saturating_sub(1)).to_string();
    ok &= index == want_index;
    rep.check(Check::new("overlattice_index", index == want_index, "overlattice_index", format!("index {index}, 2^(c−1) = {want_index} for c = {comps}")));
    ok
}

pub fn invariants(src: &Source, c: &Common) -> RunReport {
    let mut rep = RunReport::new("invariants", source_json(src));
    let Some(ms) = load(src, c, &mut rep) else { return rep };
    match analyze(&ms) {
        Ok(lr) => {
            if !invariant_checks(ms.r, &lr, &ms, &mut rep) {
                rep.exit = Exit::Mismatch;
            }
            emit(&mut rep, c, lr.to_json());
        }
        Err(e) => rep.fail(Exit::Mismatch, "lattice", "lattice_error", e.to_string()),
    }
    rep
}

/// Marking for the cycle command: `0`, `inf` or `conjugate`.
pub fn cycle(src: &Source, which: &str, marking: Option<&str>, c: &Common) -> RunReport {
    let mut rep = RunReport::new("cycle", {
        let mut v = source_json(src);
        v["which"] = json!(which);
        v["marking"] = json!(marking);
        v
    });
    let which = match Which::from_token(which) {
        Ok(w) => w,
        Err(e) => {
            rep.fail(Exit::Usage, "which", "usage", e.to_string());
            return rep;
        }
    };
    let Some(ms) = load(src, c, &mut rep) else { return rep };
    let base = ms.strong.unwrap_or(Branch::Zero);
    let (ms, conjugate) = match marking {
        None => (ms.with_strong(Some(base)), false),
        Some("conjugate") => (ms.with_strong(Some(base)), true),
        Some(t) => match Branch::from_token(t) {
            Some(b) => (ms.with_strong(Some(b)), false),
            None => {
                rep.fail(Exit::Usage, "marking", "usage", format!("unknown marking {t:?}; expected 0, inf or conjugate"));
                return rep;
            }
        },
    };
    let res = if conjugate { conjugate_report(&ms, which) } else { cycle_report(&ms, which) };
    match res {
        Ok(cr) => {
            let cl = &cr.classes;
            rep.check(Check::new("divisor_sum", cr.divisor.pass, "divisor_sum", cr.divisor.detail.clone()));
            rep.check(Check::new("squares", cl.squares == (-2, -2), "class_squares", format!("{:?}", cl.squares)));
            rep.check(Check::new("product", cl.product == 2, "class_product", cl.product.to_string()));
            rep.check(Check::new("isotropic", cl.sum_square == 0, "class_sum_square", cl.sum_square.to_string()));
            rep.check(Check::new("primitive", cl.primitive, "class_primitive", String::new()));
            rep.check(Check::new("in_h_plus", cl.in_h_plus(), "class_h_plus", String::new()));
            if !cr.pass() {
                rep.exit = Exit::Mismatch;
            }
            let mut v = cr.to_json();
            v["r"] = json!(ms.r);
            v["conjugated"] = json!(conjugate);
            emit(&mut rep, c, v);
        }
        Err(CycleError::Genericity(d)) => rep.fail(Exit::Genericity, "genericity", "genericity", d),
        Err(e) => rep.fail(Exit::Mismatch, "cycle", "cycle_error", e.to_string()),
    }
    rep
}

fn conjugate_report(ms: &MarkedSextic, which: Which) -> Result<CycleReport, CycleError> {
    let cert = conjugate_cycle(&build_cycle(ms, which)?);
    let model = build_resolution(ms)?;
    let classes = cycle_classes(&cert, &model)?;
    let divisor = verify_divisor_sum(&cert);
    Ok(CycleReport { cert, divisor, classes })
}

pub fn degenerate(r: u32, seed: u64, c: &Common) -> RunReport {
    let mut opts = PathOptions::default();
    if let Some(h) = c.height {
        opts.height = h;
    }
    let mut rep = RunReport::new("degenerate", json!({"r": r, "seed": seed, "height": opts.height}));
    let path = match build_degeneration_with(r, seed, &opts) {
        Ok(p) => p,
        Err(DegenError::BadLabel(_)) => {
            rep.fail(Exit::Usage, "label", "usage", format!("no degeneration from r = {r}; r must be in 3..=17"));
            return rep;
        }
        Err(e @ DegenError::RetryExhausted { .. }) => {
            rep.fail(Exit::Retry, "build", "retry_exhausted", e.to_string());
            return rep;
        }
        Err(e) => {
            rep.fail(Exit::Mismatch, "build", "degenerate", e.to_string());
            return rep;
        }
    };
    let pr = path_report(&path);
    let eq = &pr.equisingular;
    rep.check(Check::new("equisingular", eq.samples_pass() && !eq.samples.is_empty(), "equisingularity", format!("{} samples", eq.samples.len())));
    rep.check(Check::new("boundary_membership", eq.boundary_membership, "boundary_membership", format!("boundary in family {}", r + 1)));
    rep.check(Check::new("boundary_fiber", pr.boundary_fiber, "boundary_fiber", "t = 0 fiber equals the boundary curve".to_string()));
    match &pr.marking {
        Ok(b) => rep.check(Check::new("marking_limit", *b, "marking_limit", "lim q_i(t) = boundary q_i".to_string())),
        Err(e) => rep.check(Check::new("marking_limit", false, "marking_pole", e.to_string())),
    }
    match &pr.lattice {
        Ok(l) => {
            rep.check(Check::new(
                "lattice_specialization",
                l.pass(r),
                "lattice_specialization",
                format!("{:?} -> {:?}, rank jump {}, new block {}", l.generic_invariants, l.boundary_invariants, l.rank_jump(), l.new_block),
            ));
        }
        Err(e) => rep.check(Check::new("lattice_specialization", false, "lattice_specialization", e.to_string())),
    }
    if let Some(u) = &path.unresolved {
        rep.check(Check::new("unresolved_point", true, "unresolved_point", geom::pt_to_json(u).to_string()));
    }
    if !pr.pass(r) {
        rep.exit = if eq.samples.iter().any(|s| s.membership && !s.genericity) { Exit::Genericity } else { Exit::Mismatch };
    }
    emit(&mut rep, c, path.to_json(pr.to_json(r)));
    rep
}

pub fn table(seed: u64, c: &Common) -> RunReport {
    let mut rep = RunReport::new("table", json!({"seed": seed, "height": c.gen_config().height}));
    let cfg = c.gen_config();
    let rows: Vec<(u32, Result<(MarkedSextic, LatticeReport), (Exit, &'static str, String)>)> = (3..=18u32)
        .into_par_iter()
        .map(|r| {
            let res = generate_with(r, seed, &cfg)
                .map_err(|e| {
                    let (code, reason) = family_exit(&e);
                    (code, reason, e.to_string())
                })
                .and_then(|ms| analyze(&ms).map(|lr| (ms, lr)).map_err(|e| (Exit::Mismatch, "lattice_error", e.to_string())));
            (r, res)
        })
        .collect();
    let mut out = vec![];
    let mut worst = Exit::Ok;
    for (r, res) in rows {
        let spec = FamilySpec::get(r).expect("label in range");
        match res {
            Ok((ms, lr)) => {
                let mut sub = RunReport::new("table", json!({}));
                let ok = invariant_checks(r, &lr, &ms, &mut sub);
                let (er, ea, ed) = expected_invariants(r);
                let pred = predicted_gk(er, ea, ed).ok();
                for ch in sub.checks {
                    rep.check(Check { name: format!("r{r}.{}", ch.name), ..ch });
                }
                if !ok && worst == Exit::Ok {
                    worst = Exit::Mismatch;
                }
                out.push(json!({
                    "r": r,
                    "family": spec.description,
                    "computed": [lr.invariants.r, lr.invariants.a, lr.invariants.delta],
                    "expected": [er, ea, ed],
                    "gk_predicted": pred.map(|p| [p.g, p.k]),
                    "gk_geometric": [lr.fixed_locus.g, lr.fixed_locus.k],
                    "overlattice_index": lr.lattice.overlattice_index.to_string(),
                    "pass": ok,
                }));
            }
            Err((code, reason, detail)) => {
                rep.check(Check::new(&format!("r{r}.generate"), false, reason, detail));
                // retry exhaustion outranks a row mismatch
                if worst != Exit::Retry {
                    worst = if code == Exit::Retry { Exit::Retry } else { Exit::Mismatch };
                }
                out.push(json!({"r": r, "family": spec.description, "pass": false, "error": reason}));
            }
        }
    }
    rep.exit = worst;
    let v = json!({"seed": seed, "rows": out});
    rep.summary = Some(table_text(&v));
    emit(&mut rep, c, v);
    rep
}

/// Plain-text table rows for the human-readable output.
fn table_text(v: &Value) -> String {
    let mut s = format!("{:>3}  {:<44} {:>12} {:>8} {:>8} {:>6}  {}\n", "r", "family", "(r,a,δ)", "(g,k)p", "(g,k)g", "index", "");
    for row in v["rows"].as_array().into_iter().flatten() {
        let trip = |k: &str| row[k].as_array().map(|a| format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).unwrap_or_else(|| "-".into());
        s += &format!(
            "{:>3}  {:<44} {:>12} {:>8} {:>8} {:>6}  {}\n",
            row["r"].as_u64().unwrap_or(0),
            row["family"].as_str().unwrap_or(""),
            trip("computed"),
            trip("gk_predicted"),
            trip("gk_geometric"),
            row["overlattice_index"].as_str().unwrap_or("-"),
            if row["pass"].as_bool() == Some(true) { "ok" } else { "FAIL" }
        );
    }
    s
}

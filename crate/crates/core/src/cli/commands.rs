use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use super::report::read_payload;
use super::{
    AmplitudeArgs, BcjArgs, CliError, CobarArgs, HInput, HomologyArgs, Outcome, SolveHArgs, ThetaArgs, VanishingArgs,
    VerifyArgs,
};
use crate::amplitudes::bcj::chain_and_exactness;
use crate::amplitudes::{homology_vanishing, partial_amplitude, s_identities, ExternalLeg, Machine};
use crate::bv_infinity::{build, theta3_primal, verify_all, ThetaCertificate};
use crate::cobar::{run_checks, Cobar, Cofree};
use crate::exact_arith::{FindInstanceOptions, Rat, GR};
use crate::vanishing::{check_vanishing, w_injectivity, Case};
use crate::ym_complex::homotopy::alternate_candidates;
use crate::ym_complex::{check_kih_and_iso, homology_at, solve_h as solve, verify_h, HSolution, Momentum4, StructureTables};

fn tables() -> &'static StructureTables {
    StructureTables::get()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn solve_default(alternate: bool) -> Result<HSolution, CliError> {
    let opts = if alternate {
        FindInstanceOptions { candidates: alternate_candidates(), ..Default::default() }
    } else {
        FindInstanceOptions::default()
    };
    Ok(solve(tables(), &opts)?)
}

fn load_h(input: &HInput) -> Result<HSolution, CliError> {
    match &input.h {
        None => solve_default(false),
        Some(path) => {
            let text = read_payload(path, "h/1", "h")?;
            let h = HSolution::from_json(&text)?;
            let check = verify_h(tables(), &h.matrix);
            if !check.all_pass() {
                return Err(CliError::Usage(format!("{} is not a valid homotopy: {check:?}", path.display())));
            }
            Ok(h)
        }
    }
}

fn h_value(h: &HSolution) -> Value {
    serde_json::from_str(&h.to_json(tables())).expect("h/1 is JSON")
}

pub fn solve_h(a: &SolveHArgs) -> Result<Outcome, CliError> {
    let h = solve_default(a.alternate)?;
    let check = verify_h(tables(), &h.matrix);
    let summary = vec![
        format!("h sha256 {}", h.digest()),
        format!("free parameters fixed: {}", h.assignment.len()),
        format!("h² = 0: {}, dh + hd = □: {}, ansatz pattern: {}", check.square_zero, check.homotopy, check.pattern),
    ];
    Ok(Outcome { pass: check.all_pass(), summary, results: json!({ "h": h_value(&h), "verify": check }) })
}

pub fn build_theta(a: &ThetaArgs) -> Result<Outcome, CliError> {
    let t = tables();
    let h = load_h(&a.h)?;
    let data = build(t, &h, a.max_arity as usize)?;
    let verdicts = verify_all(&data);
    let unique = data.solves.iter().all(|s| s.free.is_empty());
    let cert = ThetaCertificate::new(t, &h, &data, verdicts);
    let mut summary: Vec<String> = data
        .solves
        .iter()
        .map(|s| format!("θ_{}: {} unknowns, {} equations, {} free", s.arity, s.unknowns, s.equations, s.free.len()))
        .collect();
    summary.push(format!("axiom components: {} checked, {} failing", cert.verdicts.verdicts.len(), cert.verdicts.failures().count()));
    summary.push(format!("θ sha256 {}", cert.theta_sha256));
    let pass = unique && cert.verdicts.all_pass();
    Ok(Outcome { pass, summary, results: json!({ "unique": unique, "theta": to_value(&cert) }) })
}

pub fn verify_axioms(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let t = tables();
    let h = load_h(&a.h)?;
    let (report, unique, replayed) = match &a.recheck {
        Some(path) => {
            let cert = ThetaCertificate::from_json(&read_payload(path, "theta/1", "theta")?)?;
            let unique = cert.arities.iter().all(|x| x.free == 0);
            (cert.recheck(t, &h)?, unique, true)
        }
        None => {
            let data = build(t, &h, a.max_arity as usize)?;
            let unique = data.solves.iter().all(|s| s.free.is_empty());
            (verify_all(&data), unique, false)
        }
    };
    let failures: Vec<Value> = report.failures().map(to_value).collect();
    let summary = vec![
        format!("arity ≤ {}{}", report.nmax, if replayed { " (replayed from certificate)" } else { "" }),
        format!("axiom components: {} checked, {} failing", report.verdicts.len(), failures.len()),
        format!("θ solves unique: {unique}"),
    ];
    let pass = unique && report.all_pass();
    let results = json!({ "replayed": replayed, "unique": unique, "failures": failures, "axioms": report });
    Ok(Outcome { pass, summary, results })
}

pub fn homology(a: &HomologyArgs) -> Result<Outcome, CliError> {
    let t = tables();
    let k = &a.momentum;
    let hom = homology_at(t, k)?;
    let null = k.is_null();
    let expected = if null { [0, 2, 2, 0] } else { [0, 0, 0, 0] };
    let mut summary = vec![format!("k² = {}, dims H⁰..H³ = {:?}", k.square(), hom.dims)];
    let kih = if null {
        let (h1, h2) = (solve_default(false)?, solve_default(true)?);
        let r = check_kih_and_iso(t, k, &h1.matrix, Some(&h2.matrix))?;
        summary.push(format!(
            "ker d ⊆ ker h: {}, im h ⊆ im d: {}, iso rank {}, independent of h: {:?}",
            r.ker_d1_in_ker_h1, r.im_h3_in_im_d1, r.iso_rank, r.independent_of_h
        ));
        Some(r)
    } else {
        None
    };
    let pass = hom.dims == expected && kih.as_ref().map_or(true, |r| r.all_pass());
    let results = json!({
        "momentum_square": k.square(),
        "null": null,
        "dims": hom.dims,
        "expected_dims": expected,
        "kih": kih,
    });
    Ok(Outcome { pass, summary, results })
}

pub fn bcj(a: &BcjArgs) -> Result<Outcome, CliError> {
    let t = tables();
    let h = load_h(&a.h)?;
    let data = build(t, &h, 3)?;
    let th = theta3_primal(t, &data.theta[3]);
    let m = Machine::new(t, &h).with_theta3(&th);
    let n = a.n as usize;
    let verdicts = homology_vanishing(&m, n, a.configs as usize, a.seed)?;
    let mut pass = verdicts.iter().all(|v| v.pass());
    let mut summary: Vec<String> = verdicts
        .iter()
        .enumerate()
        .map(|(i, v)| {
            format!("config {i}: {} class combinations, {} nonzero", v.combinations, v.nonzero.len())
        })
        .collect();
    let mut results = json!({ "n": n, "vanishing": verdicts });
    if a.lemma {
        let ids = s_identities(&m);
        let (chain, exact) = chain_and_exactness(&m, n, 3, a.seed)?;
        summary.push(format!(
            "S identities: degree {}, symmetry {}, chain {}, four-point {} / {}",
            ids.degree.pass(),
            ids.symmetry.pass(),
            ids.chain.pass(),
            ids.four_first.pass(),
            ids.four_second.pass()
        ));
        summary.push(format!("S_{n} chain-map failures {chain}, exactness failures {exact}"));
        pass &= ids.all_pass() && chain == 0 && exact == 0;
        results["identities"] = to_value(&ids);
        results["chain_failures"] = json!(chain);
        results["exactness_failures"] = json!(exact);
    }
    Ok(Outcome { pass, summary, results })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Text(String),
    Gaussian(GR),
}

impl Number {
    fn value(&self) -> Result<GR, CliError> {
        match self {
            Number::Gaussian(g) => Ok(g.clone()),
            Number::Text(s) => s.trim().parse::<Rat>().map(GR::real).map_err(|e| CliError::Usage(format!("`{s}`: {e}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClassSpec {
    Basis(String),
    Coords(Vec<Number>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LegSpec {
    momentum: [Number; 4],
    class: ClassSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KinFile {
    legs: Vec<LegSpec>,
}

fn read_kinematics(path: &Path) -> Result<Vec<ExternalLeg>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let kin: KinFile = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    kin.legs
        .iter()
        .map(|l| {
            let [a, b, c, d] = &l.momentum;
            let momentum = Momentum4([a.value()?, b.value()?, c.value()?, d.value()?]);
            match &l.class {
                ClassSpec::Basis(s) => {
                    let j = s
                        .strip_prefix("basis-")
                        .and_then(|j| j.parse::<usize>().ok())
                        .filter(|j| *j < 2)
                        .ok_or_else(|| CliError::Usage(format!("class `{s}`: expected basis-0 or basis-1")))?;
                    Ok(ExternalLeg::basis(momentum, j))
                }
                ClassSpec::Coords(v) => {
                    Ok(ExternalLeg { momentum, class: v.iter().map(Number::value).collect::<Result<_, _>>()? })
                }
            }
        })
        .collect()
}

pub fn amplitude(a: &AmplitudeArgs) -> Result<Outcome, CliError> {
    let t = tables();
    let legs = read_kinematics(&a.kin)?;
    let h = load_h(&a.h)?;
    let amp = partial_amplitude(&Machine::new(t, &h), &legs)?;
    let value: Vec<String> = amp.value.iter().map(ToString::to_string).collect();
    let mut summary = vec![
        format!("n = {}, total momentum {:?}", amp.n, amp.total_momentum.0),
        format!("tree sum closed: {}", amp.closed),
        format!("M = ({})", value.join(", ")),
    ];
    let mut pass = amp.closed;
    let mut results = json!({ "amplitude": amp });
    if a.gauge_check {
        // the second h is whichever of the two solved homotopies differs from h
        let default = solve_default(false)?;
        let h2 = if h.digest() == default.digest() { solve_default(true)? } else { default };
        let amp2 = partial_amplitude(&Machine::new(t, &h2), &legs)?;
        let same = amp2.value == amp.value;
        summary.push(format!("same value with second h ({}): {same}", &h2.digest()[..12]));
        pass &= same;
        results["gauge_independent"] = json!(same);
        results["second_h_sha256"] = json!(h2.digest());
    }
    Ok(Outcome { pass, summary, results })
}

pub fn cobar_check(a: &CobarArgs) -> Result<Outcome, CliError> {
    let h = load_h(&a.h)?;
    let data = build(tables(), &h, a.max_letters as usize)?;
    let cb = Cobar::new(Arc::new(Cofree::new(&data)));
    let report = run_checks(&cb, a.max_letters as usize, a.samples, a.seed)?;
    let summary = report
        .counts()
        .iter()
        .map(|(name, c)| format!("{name}: {} checked, {} failed", c.checked, c.failed))
        .collect();
    Ok(Outcome { pass: report.all_pass(), summary, results: json!({ "cobar": report }) })
}

pub fn vanishing(a: &VanishingArgs) -> Result<Outcome, CliError> {
    let case = Case::from_number(a.case).ok_or_else(|| CliError::Usage(format!("case {}", a.case)))?;
    let rows: Vec<_> = (a.ell_range.0..=a.ell_range.1).map(|ell| check_vanishing(case, a.n as usize, ell)).collect();
    let w = w_injectivity();
    let mut summary: Vec<String> = rows
        .iter()
        .map(|r| {
            format!("ℓ = {:>3}: dims {:?}, H⁰ = {}, H¹ = {}, d² = 0: {}", r.ell, r.dims, r.dim_h0, r.dim_h1, r.dd_zero)
        })
        .collect();
    summary.push(format!("W ranks {} and {} (injective: {})", w.case1.0, w.case2.0, w.injective()));
    let pass = rows.iter().all(|r| r.pass()) && w.injective();
    Ok(Outcome { pass, summary, results: json!({ "complexes": rows, "w": w }) })
}

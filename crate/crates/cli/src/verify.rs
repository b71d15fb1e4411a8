//! `verify`: re-check a JSON report using only the report and its input set.

use std::collections::HashSet;

use addstruct::analyzer::StructureReport;
use addstruct::bohr::{torus_norm, Alpha};
use addstruct::covering::{cover_41_40, cover_5_4, cover_9_8, Enforcement};
use addstruct::progressions::smallest_containing_ap;
use addstruct::sets::{additive_energy, DoublingMode};
use addstruct::{IntSet, Progression, Rational};
use serde::de::DeserializeOwned;

use crate::args::VerifyArgs;
use crate::commands::{doubling_counts, lev_entries};
use crate::input::{load_set, read_text};
use crate::report::*;
use crate::Failure;

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, Failure> {
    Ok(serde_json::from_str(text)?)
}

fn need_set(a: &VerifyArgs, kind: &str) -> Result<IntSet, Failure> {
    let p = a
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("verifying a '{kind}' report needs --in")))?;
    Ok(load_set(p)?)
}

fn elements(p: &Progression) -> Vec<i128> {
    match p {
        Progression::OneDim(q) => q.iter().collect(),
        Progression::TwoDim(q) => q.iter().collect(),
    }
}

pub fn run(a: &VerifyArgs) -> Result<bool, Failure> {
    let text = read_text(&a.report)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    let version = v.get("schema_version").and_then(|s| s.as_u64());
    if version != Some(SCHEMA_VERSION as u64) {
        return Err(Failure::Usage(format!("unsupported schema_version {version:?}")));
    }
    let kind = v
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Failure::Usage("report has no 'kind'".into()))?
        .to_string();
    let problems = match kind.as_str() {
        "analyze" => check_analyze(parse(&text)?, &need_set(a, &kind)?)?,
        "bohr_extract" => check_bohr(parse(&text)?)?,
        "cover" => check_cover(parse(&text)?, &need_set(a, &kind)?)?,
        "doubling" => check_doubling(parse(&text)?, &need_set(a, &kind)?)?,
        "energy" => {
            let r: EnergyReport = parse(&text)?;
            let x = need_set(a, &kind)?;
            let mut p = Vec::new();
            if r.set_size != x.len() || r.energy != additive_energy(&x)? {
                p.push("energy does not match the input set".to_string());
            }
            p
        }
        other => return Err(Failure::Usage(format!("reports of kind '{other}' cannot be verified"))),
    };
    if problems.is_empty() {
        println!("verified");
        Ok(true)
    } else {
        for p in &problems {
            println!("mismatch: {p}");
        }
        Ok(false)
    }
}

fn check_analyze(r: AnalyzeJson, a: &IntSet) -> Result<Vec<String>, Failure> {
    let mut p = Vec::new();
    if r.set_size != a.len() {
        p.push(format!("set_size {} but the input has {} elements", r.set_size, a.len()));
    }
    let branch = parse_branch(&r.branch).ok_or_else(|| Failure::Usage(format!("unknown branch '{}'", r.branch)))?;
    let witness = r.witness.map(|w| w.to_progression()).transpose()?;
    let density = r.density.map(|d| d.value()).transpose()?;
    let params = addstruct::analyzer::DichotomyParams {
        delta: r.params.delta.value()?,
        eps: r.params.eps.value()?,
        min_frac: r.params.min_frac.value()?,
        max_l: r.params.max_l,
    };
    let rebuilt = StructureReport {
        branch,
        sigma: r.sigma.value()?,
        witness,
        density,
        params,
        min_size: r.min_size,
        best_ap: None,
        best_gap: None,
    };
    if !rebuilt.verify(a)? {
        p.push(format!("branch '{}' is not supported by the report's own numbers", r.branch));
    }
    Ok(p)
}

fn check_bohr(r: BohrExtractJson) -> Result<Vec<String>, Failure> {
    let mut p = Vec::new();
    let alpha = r.alpha.value()?;
    let sigma = r.sigma.value()?;
    if let Some(cf) = &r.cf {
        if Alpha::ContinuedFraction(cf.clone()).value()? != alpha {
            p.push("alpha does not equal the continued fraction".into());
        }
    }
    let prog = r.progression.to_progression()?;
    let els = elements(&prog);
    let n = r.n as i128;
    if let Some(x) = els
        .iter()
        .find(|&&x| x.abs() > n || torus_norm(alpha * Rational::from(x)) >= sigma)
    {
        p.push(format!("{x} is not in the Bohr set"));
    }
    let distinct: HashSet<i128> = els.iter().copied().collect();
    if distinct.len() != els.len() {
        p.push("progression is not proper".into());
    }
    let bound = sigma * Rational::from(n) / Rational::from(400);
    if r.certificate.size != distinct.len() || r.certificate.size_bound.value()? != bound {
        p.push("certificate size fields are inconsistent".into());
    }
    if Rational::from(distinct.len() as i128) < bound && sigma * Rational::from(n) >= Rational::from(400) {
        p.push(format!("size {} is below sigma N / 400 = {bound}", distinct.len()));
    }
    if let Some(m) = &r.minima {
        let (u, v) = (*alpha.numer(), *alpha.denom());
        let h = sigma * Rational::from(v);
        let gauge = |z: (i128, i128)| Rational::new(z.0.abs(), n).max(Rational::from(z.1.abs()) / h);
        let on_lattice = |z: (i128, i128)| (z.1 - u * z.0).rem_euclid(v) == 0;
        let (l1, l2) = (m.lambda1.value()?, m.lambda2.value()?);
        if !on_lattice(m.v1) || !on_lattice(m.v2) || m.v1.0 * m.v2.1 == m.v1.1 * m.v2.0 {
            p.push("minima vectors are not independent lattice vectors".into());
        }
        if gauge(m.v1) != l1 || gauge(m.v2) != l2 || l1 > l2 {
            p.push("minima do not match their vectors".into());
        }
        if l1 * l2 > Rational::from(1) / (sigma * Rational::from(n)) {
            p.push("minima break Minkowski's bound".into());
        }
    }
    Ok(p)
}

fn check_cover(r: CoverJson, x: &IntSet) -> Result<Vec<String>, Failure> {
    let mut p = Vec::new();
    if r.lemma == "lev" {
        let fresh = lev_entries(x)?;
        let same = fresh.len() == r.lev.len()
            && fresh.iter().zip(&r.lev).all(|(f, e)| {
                (f.k, f.r, f.contains_even, f.contains_odd, f.missing_even, f.missing_odd)
                    == (e.k, e.r, e.contains_even, e.contains_odd, e.missing_even, e.missing_odd)
            });
        if !same {
            p.push("Lev entries differ from a fresh computation".into());
        }
        let holds = fresh.iter().all(|e| e.contains_even && e.contains_odd);
        if holds != r.holds {
            p.push("verdict differs from a fresh computation".into());
        }
        return Ok(p);
    }
    let target = r
        .target
        .ok_or_else(|| Failure::Usage("cover report has no target".into()))?
        .to_progression()?;
    let fresh = match (r.lemma.as_str(), target) {
        ("5x4", Progression::OneDim(t)) => cover_5_4(x, &t, Enforcement::Advisory)?,
        ("9x8", Progression::OneDim(t)) => {
            if smallest_containing_ap(x)? != t {
                p.push("target is not the smallest progression containing X".into());
            }
            cover_9_8(x, Enforcement::Advisory)?
        }
        ("41x40", Progression::TwoDim(q)) => cover_41_40(x, &q, Enforcement::Advisory)?,
        (l, _) => return Err(Failure::Usage(format!("cover report for lemma '{l}' has the wrong target shape"))),
    };
    if fresh.holds != r.holds || fresh.missing.as_ref().map(|m| m.to_string()) != r.missing {
        p.push("verdict or witness differs from a fresh computation".into());
    }
    if fresh.precondition_failures != r.precondition_failures {
        p.push("recorded precondition failures differ".into());
    }
    Ok(p)
}

fn check_doubling(r: DoublingReport, x: &IntSet) -> Result<Vec<String>, Failure> {
    let mode = match r.mode.as_str() {
        "plus" => DoublingMode::Plus,
        "minus" => DoublingMode::Minus,
        m => return Err(Failure::Usage(format!("unknown doubling mode '{m}'"))),
    };
    let s = doubling_counts(x, mode)?;
    let mut p = Vec::new();
    if r.set_size != x.len() || r.sumset_size != s || r.sigma != RationalJson::raw(s as i128, x.len() as i128) {
        p.push(format!("expected {s}/{}", x.len()));
    }
    Ok(p)
}

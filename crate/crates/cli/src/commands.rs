//! One function per subcommand. Each returns the verdict: `true` for success,
//! `false` for a verdict that failed (a witness has been printed).

use std::path::Path;

use addstruct::analyzer::{dichotomy_check, DichotomyParams};
use addstruct::bohr::{bohr_set, extract_gap, extract_gap_unchecked, Alpha, BohrSpec};
use addstruct::covering::{cover_41_40, cover_5_4, cover_9_8, lev_admissible_ks, lev_verify_with_k, CoverReport, Enforcement};
use addstruct::fourier::{l2_norm, u2_norm_direct, u2_norm_fourier, GridFunction};
use addstruct::freiman::verify_freiman_isomorphism;
use addstruct::progressions::smallest_containing_ap;
use addstruct::sets::{additive_energy, difference_set, iterated_sumset, signed_combination, sumset, DoublingMode};
use addstruct::torus::{kneser_suite, lipschitz_sandwich, KneserLambda};
use addstruct::{IntSet, Progression, Progression1D};
use serde::Serialize;

use crate::args::*;
use crate::input::{load_map, load_set, load_values, parse_i128_list, parse_rational, read_text};
use crate::report::*;
use crate::Failure;

pub fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn print_set(s: &IntSet) {
    let mut out = String::new();
    for x in s.iter() {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    print!("{out}");
}

pub fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Sumset(a) => sumset_cmd(a),
        Command::Doubling(a) => doubling_cmd(a),
        Command::Energy(a) => energy_cmd(a),
        Command::Cover(a) => cover_cmd(a),
        Command::Freiman {
            command: FreimanCommand::Verify { a, b, map, k, budget, json },
        } => freiman_cmd(&a, &b, &map, k, budget, json),
        Command::Bohr { command } => match command {
            BohrCommand::Set(b) => bohr_set_cmd(b),
            BohrCommand::Extract { bohr, unchecked } => bohr_extract_cmd(bohr, unchecked),
        },
        Command::Norms(a) => norms_cmd(a),
        Command::Torus { command } => match command {
            TorusCommand::Kneser { m, d, trials, lambda, seed, json } => kneser_cmd(m, d, trials, &lambda, seed, json),
            TorusCommand::Sandwich { center, halfwidth, tau, m, json } => sandwich_cmd(center, halfwidth, tau, m, json),
        },
        Command::Analyze(a) => analyze_cmd(a),
        Command::Verify(a) => crate::verify::run(&a),
    }
}

fn sumset_cmd(a: SumsetArgs) -> Result<bool, Failure> {
    let x = load_set(&a.input)?;
    let (result, operation) = if let Some(h) = a.iterate {
        (iterated_sumset(&x, h)?, format!("{h}A"))
    } else if let Some(s) = &a.signed {
        let lm = parse_i128_list(s)?;
        let [l, m] = lm[..] else {
            return Err(Failure::Usage(format!("--signed expects 'l,m', got '{s}'")));
        };
        let (l, m) = (u32::try_from(l), u32::try_from(m));
        let (Ok(l), Ok(m)) = (l, m) else {
            return Err(Failure::Usage("--signed coefficients must be non-negative".into()));
        };
        (signed_combination(&x, l, m)?, format!("{l}A-{m}A"))
    } else {
        let y = match &a.b {
            Some(p) => load_set(p)?,
            None => x.clone(),
        };
        let name = if a.b.is_some() { "B" } else { "A" };
        if a.minus {
            (difference_set(&x, &y)?, format!("A-{name}"))
        } else {
            (sumset(&x, &y)?, format!("A+{name}"))
        }
    };
    if a.json {
        emit(&SetReport {
            schema_version: SCHEMA_VERSION,
            kind: "sumset".into(),
            operation,
            size: result.len(),
            elements: elements_json(&result),
        })?;
    } else {
        print_set(&result);
    }
    Ok(true)
}

pub fn doubling_counts(x: &IntSet, mode: DoublingMode) -> Result<usize, Failure> {
    Ok(match mode {
        DoublingMode::Plus => sumset(x, x)?.len(),
        DoublingMode::Minus => difference_set(x, x)?.len(),
    })
}

fn doubling_cmd(a: DoublingArgs) -> Result<bool, Failure> {
    let x = load_set(&a.input)?;
    let mode = if a.minus { DoublingMode::Minus } else { DoublingMode::Plus };
    let s = doubling_counts(&x, mode)?;
    if a.json {
        emit(&DoublingReport {
            schema_version: SCHEMA_VERSION,
            kind: "doubling".into(),
            mode: if a.minus { "minus" } else { "plus" }.into(),
            set_size: x.len(),
            sumset_size: s,
            sigma: RationalJson::raw(s as i128, x.len() as i128),
        })?;
    } else {
        println!("{s}/{}", x.len());
    }
    Ok(true)
}

fn energy_cmd(a: EnergyArgs) -> Result<bool, Failure> {
    let x = load_set(&a.input)?;
    let e = additive_energy(&x)?;
    if a.json {
        emit(&EnergyReport {
            schema_version: SCHEMA_VERSION,
            kind: "energy".into(),
            set_size: x.len(),
            energy: e,
        })?;
    } else {
        println!("{e}");
    }
    Ok(true)
}

pub fn default_five_four_target(x: &IntSet) -> Result<Progression1D, Failure> {
    let xs = x
        .to_i128s()
        .ok_or_else(|| Failure::Usage("5x4 needs elements that fit in 128 bits".into()))?;
    let (&lo, &hi) = (
        xs.first().ok_or_else(|| Failure::Usage("empty set".into()))?,
        xs.last().unwrap(),
    );
    Ok(Progression1D::interval(lo.min(1), hi)?)
}

pub fn load_gap(path: &Path) -> Result<addstruct::Gap2, Failure> {
    let j: ProgressionJson = serde_json::from_str(&read_text(path)?)?;
    match j.to_progression()? {
        Progression::TwoDim(g) => Ok(g),
        Progression::OneDim(_) => Err(Failure::Usage(format!(
            "{}: expected a 2-dimensional progression {{a0, a1, a2, L1, L2}}",
            path.display()
        ))),
    }
}

fn cover_json(lemma: &str, rep: &CoverReport, target: Option<Progression>) -> CoverJson {
    CoverJson {
        schema_version: SCHEMA_VERSION,
        kind: "cover".into(),
        lemma: lemma.into(),
        holds: rep.holds,
        combination: Some(rep.combination),
        target: target.as_ref().map(Into::into),
        target_size: Some(rep.target_size),
        missing: rep.missing.as_ref().map(|m| m.to_string()),
        precondition_failures: rep.precondition_failures.clone(),
        lev: Vec::new(),
    }
}

pub fn lev_entries(x: &IntSet) -> Result<Vec<LevEntry>, Failure> {
    lev_admissible_ks(x)?
        .into_iter()
        .map(|k| {
            let r = lev_verify_with_k(x, k)?;
            Ok(LevEntry {
                l: r.params.l,
                card_x: r.params.card_x,
                k: r.params.k,
                r: r.params.r,
                even_interval: r.params.even_interval(),
                odd_interval: r.params.odd_interval(),
                contains_even: r.contains_even,
                contains_odd: r.contains_odd,
                missing_even: r.missing_even,
                missing_odd: r.missing_odd,
            })
        })
        .collect()
}

fn cover_cmd(a: CoverArgs) -> Result<bool, Failure> {
    let x = load_set(&a.input)?;
    let mode = if a.no_precheck { Enforcement::Advisory } else { Enforcement::Strict };
    let report = match a.lemma {
        Lemma::Lev => {
            let lev = lev_entries(&x)?;
            let holds = lev.iter().all(|e| e.contains_even && e.contains_odd);
            CoverJson {
                schema_version: SCHEMA_VERSION,
                kind: "cover".into(),
                lemma: "lev".into(),
                holds,
                combination: None,
                target: None,
                target_size: None,
                missing: None,
                precondition_failures: Vec::new(),
                lev,
            }
        }
        Lemma::FiveFour => {
            let p = match &a.p {
                Some(s) => match parse_i128_list(s)?[..] {
                    [first, step, len] if len >= 1 => Progression1D::starting_at(first, step, len as u64)?,
                    _ => return Err(Failure::Usage(format!("--p expects 'first,step,len', got '{s}'"))),
                },
                None => default_five_four_target(&x)?,
            };
            cover_json("5x4", &cover_5_4(&x, &p, mode)?, Some(p.into()))
        }
        Lemma::NineEight => {
            let rep = cover_9_8(&x, mode)?;
            cover_json("9x8", &rep, Some(smallest_containing_ap(&x)?.into()))
        }
        Lemma::FortyOneForty => {
            let path = a
                .q
                .as_ref()
                .ok_or_else(|| Failure::Usage("--lemma 41x40 needs --q Q.json".into()))?;
            let q = load_gap(path)?;
            cover_json("41x40", &cover_41_40(&x, &q, mode)?, Some(q.into()))
        }
    };
    for f in &report.precondition_failures {
        eprintln!("warning: precondition not met: {f}");
    }
    if a.json {
        emit(&report)?;
    } else if report.lemma == "lev" {
        for e in &report.lev {
            println!(
                "k={} r={}: 2kX ⊇ [{}, {}]: {}; (2k+1)X ⊇ [{}, {}]: {}",
                e.k,
                e.r,
                e.even_interval.0,
                e.even_interval.1,
                verdict_word(e.contains_even, e.missing_even),
                e.odd_interval.0,
                e.odd_interval.1,
                verdict_word(e.contains_odd, e.missing_odd),
            );
        }
    } else {
        match &report.missing {
            None => println!("holds"),
            Some(w) => println!("fails: missing {w}"),
        }
    }
    Ok(report.holds)
}

fn verdict_word(ok: bool, missing: Option<i128>) -> String {
    match (ok, missing) {
        (true, _) => "yes".into(),
        (false, Some(m)) => format!("no (missing {m})"),
        (false, None) => "no".into(),
    }
}

fn freiman_cmd(a: &Path, b: &Path, map: &Path, k: u32, budget: u128, json: bool) -> Result<bool, Failure> {
    let (sa, sb) = (load_set(a)?, load_set(b)?);
    let pairs = load_map(map)?;
    let mut phi = vec![usize::MAX; sa.len()];
    for (x, y) in &pairs {
        let i = sa
            .as_slice()
            .binary_search(x)
            .map_err(|_| Failure::Usage(format!("map source {x} is not in A")))?;
        let j = sb
            .as_slice()
            .binary_search(y)
            .map_err(|_| Failure::Usage(format!("map target {y} is not in B")))?;
        if phi[i] != usize::MAX && phi[i] != j {
            return Err(Failure::Usage(format!("{x} is mapped twice")));
        }
        phi[i] = j;
    }
    if let Some(i) = phi.iter().position(|&j| j == usize::MAX) {
        return Err(Failure::Usage(format!("no image given for {}", sa.as_slice()[i])));
    }
    let rep = verify_freiman_isomorphism(&sa, &sb, &phi, k, budget)?;
    if json {
        emit(&FreimanJson {
            schema_version: SCHEMA_VERSION,
            kind: "freiman".into(),
            k,
            tuples_checked: rep.tuples_checked,
            isomorphism: rep.is_isomorphism(),
            violation: rep.violation.as_ref().map(|v| FreimanViolationJson {
                indices: v.indices.clone(),
                equal_in_a: v.equal_in_a,
                equal_in_b: v.equal_in_b,
            }),
        })?;
    } else {
        match &rep.violation {
            None => println!("Freiman {k}-isomorphism ({} tuples checked)", rep.tuples_checked),
            Some(v) => {
                let elems: Vec<String> = v.indices.iter().map(|&i| sa.as_slice()[i].to_string()).collect();
                println!(
                    "not a Freiman {k}-isomorphism: tuple ({}) has equal sums in {} only",
                    elems.join(", "),
                    if v.equal_in_a { "A" } else { "B" }
                );
            }
        }
    }
    Ok(rep.is_isomorphism())
}

fn bohr_spec(b: &BohrArgs) -> Result<(BohrSpec, Option<Vec<i128>>), Failure> {
    let sigma = parse_rational(&b.sigma)?;
    let (alpha, cf) = match (&b.alpha, &b.cf) {
        (Some(a), None) => (Alpha::Rational(parse_rational(a)?), None),
        (None, Some(c)) => {
            let terms = parse_i128_list(c)?;
            (Alpha::ContinuedFraction(terms.clone()), Some(terms))
        }
        _ => return Err(Failure::Usage("give exactly one of --alpha and --cf".into())),
    };
    Ok((BohrSpec::new(alpha, sigma, b.n)?, cf))
}

fn bohr_set_cmd(b: BohrArgs) -> Result<bool, Failure> {
    let (spec, _) = bohr_spec(&b)?;
    let s = bohr_set(&spec)?;
    if b.json {
        emit(&BohrSetJson {
            schema_version: SCHEMA_VERSION,
            kind: "bohr_set".into(),
            alpha: spec.alpha.value()?.into(),
            sigma: spec.sigma.into(),
            n: spec.n,
            size: s.len(),
            elements: elements_json(&s),
        })?;
    } else {
        print_set(&s);
    }
    Ok(true)
}

fn bohr_extract_cmd(b: BohrArgs, unchecked: bool) -> Result<bool, Failure> {
    let (spec, cf) = bohr_spec(&b)?;
    let ex = if unchecked { extract_gap_unchecked(&spec)? } else { extract_gap(&spec)? };
    let report = BohrExtractJson::new(&ex, spec.alpha.value()?, cf, spec.sigma, spec.n);
    if b.json {
        emit(&report)?;
    } else {
        let shape = match ex.progression {
            Progression::OneDim(p) => format!("1-dim: first {}, step {}, length {}", p.first(), p.step, p.len),
            Progression::TwoDim(g) => format!(
                "2-dim: a0 {}, steps ({}, {}), lengths {} x {}",
                g.a0, g.a1, g.a2, g.l1, g.l2
            ),
        };
        println!("route: {}", report.route);
        println!("progression {shape}");
        println!(
            "certificate: {} elements checked, members {}, proper {}, size {} (bound {})",
            ex.certificate.elements_checked,
            ex.certificate.all_members,
            ex.certificate.proper,
            ex.certificate.size,
            ex.certificate.size_bound
        );
    }
    Ok(true)
}

fn norms_cmd(a: NormsArgs) -> Result<bool, Failure> {
    let f = GridFunction::new(load_values(&a.input)?)?;
    let (which, value) = match a.which {
        Norm::L2 => ("l2", l2_norm(&f)),
        Norm::U2 => ("u2", u2_norm_direct(&f)?),
        Norm::U2fft => ("u2fft", u2_norm_fourier(&f)),
    };
    if a.json {
        emit(&NormsJson {
            schema_version: SCHEMA_VERSION,
            kind: "norms".into(),
            which: which.into(),
            n: f.n(),
            value,
        })?;
    } else {
        println!("{value}");
    }
    Ok(true)
}

fn kneser_cmd(m: usize, d: usize, trials: usize, lambda: &str, seed: u64, json: bool) -> Result<bool, Failure> {
    let lam = if lambda == "random" {
        KneserLambda::Random
    } else {
        let v: f64 = lambda
            .parse()
            .map_err(|_| Failure::Usage(format!("--lambda expects a number or 'random', got '{lambda}'")))?;
        KneserLambda::Fixed(v)
    };
    let rep = kneser_suite(m, d, trials, lam, seed)?;
    if json {
        emit(&KneserJson::from(&rep))?;
    } else {
        println!(
            "d={d} m={m} seed={seed}: {} trials, {} skipped, {} below -(C sqrt(lambda) + 2d/m) with C = {}",
            rep.trials.len(),
            rep.skipped,
            rep.violations,
            rep.constant
        );
        if rep.worst_margin.is_finite() {
            println!("worst margin {}", rep.worst_margin);
        }
    }
    Ok(rep.violations == 0)
}

fn sandwich_cmd(center: f64, halfwidth: f64, tau: f64, m: usize, json: bool) -> Result<bool, Failure> {
    let s = lipschitz_sandwich(center, halfwidth, tau, m)?;
    let r = &s.report;
    if json {
        emit(&SandwichJson::new(r, center, halfwidth, tau, m))?;
    } else {
        println!("pointwise sandwich: {}", r.sandwich_ok);
        println!("gap {} (bound {}): {}", r.gap, r.gap_bound, r.gap_ok);
        println!("Lipschitz {} (bound {}): {}", r.lipschitz, r.lipschitz_bound, r.lipschitz_ok);
    }
    Ok(r.holds())
}

fn analyze_cmd(a: AnalyzeArgs) -> Result<bool, Failure> {
    let x = load_set(&a.input)?;
    let mut params = DichotomyParams::new(
        parse_rational(&a.delta)?,
        parse_rational(&a.eps)?,
        parse_rational(&a.min_frac)?,
    );
    params.max_l = a.max_l;
    let rep = dichotomy_check(&x, params)?;
    let j = AnalyzeJson::new(&rep, x.len());
    if a.json {
        emit(&j)?;
    } else {
        println!("branch: {}", j.branch);
        println!("sigma: {}", rep.sigma);
        if let (Some(w), Some(d)) = (&rep.witness, rep.density) {
            match w {
                Progression::OneDim(p) => println!(
                    "witness: first {}, step {}, length {}; density {d}",
                    p.first(),
                    p.step,
                    p.len
                ),
                Progression::TwoDim(g) => println!(
                    "witness: a0 {}, steps ({}, {}), lengths {} x {}; density {d}",
                    g.a0, g.a1, g.a2, g.l1, g.l2
                ),
            }
        }
    }
    Ok(true)
}

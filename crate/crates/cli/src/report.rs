//! JSON mirrors of the library reports. Rationals are `{num, den}` pairs,
//! big integers are decimal strings.

use addstruct::analyzer::{ApCandidate, Branch, Gap2Candidate, StructureReport};
use addstruct::bohr::{Certificate, Extraction, MinimaResult, Route};
use addstruct::torus::{KneserSuiteReport, SandwichReport, SetFamily};
use addstruct::{Gap2, IntSet, Progression, Progression1D, Rational};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
}

impl RationalJson {
    /// A fraction as given, without reduction.
    pub fn raw(num: i128, den: i128) -> Self {
        RationalJson { num, den }
    }

    pub fn value(&self) -> Result<Rational, String> {
        if self.den == 0 {
            return Err("rational with zero denominator".into());
        }
        Ok(Rational::new(self.num, self.den))
    }
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        RationalJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, try_from = "RawProgression")]
pub enum ProgressionJson {
    TwoDim { a0: i128, a1: i128, a2: i128, L1: u64, L2: u64 },
    OneDim { a0: i128, a1: i128, L1: u64 },
}

#[allow(non_snake_case)]
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProgression {
    a0: i128,
    a1: i128,
    a2: Option<i128>,
    L1: u64,
    L2: Option<u64>,
}

impl TryFrom<RawProgression> for ProgressionJson {
    type Error = String;

    fn try_from(r: RawProgression) -> Result<Self, String> {
        match (r.a2, r.L2) {
            (Some(a2), Some(l2)) => Ok(ProgressionJson::TwoDim {
                a0: r.a0,
                a1: r.a1,
                a2,
                L1: r.L1,
                L2: l2,
            }),
            (None, None) => Ok(ProgressionJson::OneDim {
                a0: r.a0,
                a1: r.a1,
                L1: r.L1,
            }),
            _ => Err("a2 and L2 must be given together".into()),
        }
    }
}

impl From<&Progression> for ProgressionJson {
    fn from(p: &Progression) -> Self {
        match p {
            Progression::OneDim(q) => ProgressionJson::OneDim {
                a0: q.a0,
                a1: q.step,
                L1: q.len,
            },
            Progression::TwoDim(q) => ProgressionJson::TwoDim {
                a0: q.a0,
                a1: q.a1,
                a2: q.a2,
                L1: q.l1,
                L2: q.l2,
            },
        }
    }
}

impl ProgressionJson {
    pub fn to_progression(self) -> addstruct::Result<Progression> {
        Ok(match self {
            ProgressionJson::OneDim { a0, a1, L1 } => Progression1D::new(a0, a1, L1)?.into(),
            ProgressionJson::TwoDim { a0, a1, a2, L1, L2 } => Gap2::new(a0, a1, a2, L1, L2)?.into(),
        })
    }
}

pub fn elements_json(s: &IntSet) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SetReport {
    pub schema_version: u32,
    pub kind: String,
    pub operation: String,
    pub size: usize,
    pub elements: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DoublingReport {
    pub schema_version: u32,
    pub kind: String,
    pub mode: String,
    pub set_size: usize,
    pub sumset_size: usize,
    pub sigma: RationalJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnergyReport {
    pub schema_version: u32,
    pub kind: String,
    pub set_size: usize,
    pub energy: u128,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LevEntry {
    pub l: u64,
    pub card_x: u64,
    pub k: u64,
    pub r: i64,
    pub even_interval: (i128, i128),
    pub odd_interval: (i128, i128),
    pub contains_even: bool,
    pub contains_odd: bool,
    pub missing_even: Option<i128>,
    pub missing_odd: Option<i128>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoverJson {
    pub schema_version: u32,
    pub kind: String,
    pub lemma: String,
    pub holds: bool,
    /// `(l, m)` of `lX - mX`; absent for the Lev check.
    pub combination: Option<(u32, u32)>,
    pub target: Option<ProgressionJson>,
    pub target_size: Option<usize>,
    pub missing: Option<String>,
    pub precondition_failures: Vec<String>,
    pub lev: Vec<LevEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FreimanJson {
    pub schema_version: u32,
    pub kind: String,
    pub k: u32,
    pub tuples_checked: u128,
    pub isomorphism: bool,
    pub violation: Option<FreimanViolationJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FreimanViolationJson {
    pub indices: Vec<usize>,
    pub equal_in_a: bool,
    pub equal_in_b: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BohrSetJson {
    pub schema_version: u32,
    pub kind: String,
    pub alpha: RationalJson,
    pub sigma: RationalJson,
    pub n: u64,
    pub size: usize,
    pub elements: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MinimaJson {
    pub lambda1: RationalJson,
    pub lambda2: RationalJson,
    pub v1: (i128, i128),
    pub v2: (i128, i128),
    pub lines_scanned: u64,
}

impl From<&MinimaResult> for MinimaJson {
    fn from(m: &MinimaResult) -> Self {
        MinimaJson {
            lambda1: m.lambda1.into(),
            lambda2: m.lambda2.into(),
            v1: m.v1,
            v2: m.v2,
            lines_scanned: m.lines_scanned,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub elements_checked: u64,
    pub all_members: bool,
    pub proper: bool,
    pub size: usize,
    pub size_bound: RationalJson,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            elements_checked: c.elements_checked,
            all_members: c.all_members,
            proper: c.proper,
            size: c.size,
            size_bound: c.size_bound.into(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BohrExtractJson {
    pub schema_version: u32,
    pub kind: String,
    pub alpha: RationalJson,
    pub cf: Option<Vec<i128>>,
    pub sigma: RationalJson,
    pub n: u64,
    pub route: String,
    pub progression: ProgressionJson,
    pub minima: Option<MinimaJson>,
    pub certificate: CertificateJson,
}

pub fn route_name(r: Route) -> &'static str {
    match r {
        Route::Lattice => "lattice",
        Route::ContinuedFraction => "continued_fraction",
        Route::LatticeFallback => "lattice_fallback",
    }
}

impl BohrExtractJson {
    pub fn new(ex: &Extraction, alpha: Rational, cf: Option<Vec<i128>>, sigma: Rational, n: u64) -> Self {
        BohrExtractJson {
            schema_version: SCHEMA_VERSION,
            kind: "bohr_extract".into(),
            alpha: alpha.into(),
            cf,
            sigma: sigma.into(),
            n,
            route: route_name(ex.route).into(),
            progression: (&ex.progression).into(),
            minima: ex.minima.as_ref().map(Into::into),
            certificate: (&ex.certificate).into(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NormsJson {
    pub schema_version: u32,
    pub kind: String,
    pub which: String,
    pub n: usize,
    pub value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KneserTrialJson {
    pub family1: String,
    pub family2: String,
    pub lambda: f64,
    pub mu1: RationalJson,
    pub mu2: RationalJson,
    pub measure: RationalJson,
    pub bound: RationalJson,
    pub deficiency: f64,
    pub allowed: f64,
    pub within: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KneserJson {
    pub schema_version: u32,
    pub kind: String,
    pub m: usize,
    pub d: usize,
    pub seed: u64,
    pub constant: f64,
    pub skipped: usize,
    pub violations: usize,
    pub worst_margin: Option<f64>,
    pub trials: Vec<KneserTrialJson>,
}

fn family_name(f: &SetFamily) -> String {
    match f {
        SetFamily::Arcs { pieces } => format!("arcs({pieces})"),
        SetFamily::Pullback { a1, a2, pieces } => format!("pullback({a1},{a2};{pieces})"),
        SetFamily::Box => "box".into(),
    }
}

impl From<&KneserSuiteReport> for KneserJson {
    fn from(r: &KneserSuiteReport) -> Self {
        KneserJson {
            schema_version: SCHEMA_VERSION,
            kind: "kneser".into(),
            m: r.m,
            d: r.d,
            seed: r.seed,
            constant: r.constant,
            skipped: r.skipped,
            violations: r.violations,
            worst_margin: r.worst_margin.is_finite().then_some(r.worst_margin),
            trials: r
                .trials
                .iter()
                .map(|t| KneserTrialJson {
                    family1: family_name(&t.family1),
                    family2: family_name(&t.family2),
                    lambda: t.lambda,
                    mu1: t.report.mu1.into(),
                    mu2: t.report.mu2.into(),
                    measure: t.report.measure.into(),
                    bound: t.report.bound.into(),
                    deficiency: t.report.deficiency,
                    allowed: t.report.allowed,
                    within: t.report.within,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SandwichJson {
    pub schema_version: u32,
    pub kind: String,
    pub center: f64,
    pub halfwidth: f64,
    pub tau: f64,
    pub m: usize,
    pub holds: bool,
    pub sandwich_ok: bool,
    pub gap: f64,
    pub gap_bound: f64,
    pub lipschitz: f64,
    pub lipschitz_bound: f64,
    pub measure_gap: f64,
}

impl SandwichJson {
    pub fn new(r: &SandwichReport, center: f64, halfwidth: f64, tau: f64, m: usize) -> Self {
        SandwichJson {
            schema_version: SCHEMA_VERSION,
            kind: "sandwich".into(),
            center,
            halfwidth,
            tau,
            m,
            holds: r.holds(),
            sandwich_ok: r.sandwich_ok,
            gap: r.gap,
            gap_bound: r.gap_bound,
            lipschitz: r.lipschitz,
            lipschitz_bound: r.lipschitz_bound,
            measure_gap: r.measure_gap,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CandidateJson {
    pub progression: ProgressionJson,
    pub hits: u64,
    pub density: RationalJson,
}

impl From<&ApCandidate> for CandidateJson {
    fn from(c: &ApCandidate) -> Self {
        CandidateJson {
            progression: (&Progression::from(c.progression)).into(),
            hits: c.hits,
            density: c.density.into(),
        }
    }
}

impl From<&Gap2Candidate> for CandidateJson {
    fn from(c: &Gap2Candidate) -> Self {
        CandidateJson {
            progression: (&Progression::from(c.gap)).into(),
            hits: c.hits,
            density: c.density.into(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ParamsJson {
    pub delta: RationalJson,
    pub eps: RationalJson,
    pub min_frac: RationalJson,
    pub max_l: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeJson {
    pub schema_version: u32,
    pub kind: String,
    pub branch: String,
    pub set_size: usize,
    pub sigma: RationalJson,
    pub params: ParamsJson,
    pub min_size: u64,
    pub witness: Option<ProgressionJson>,
    pub density: Option<RationalJson>,
    pub best_ap: Option<CandidateJson>,
    pub best_gap: Option<CandidateJson>,
}

pub fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Expansion => "expansion",
        Branch::ApDense => "ap_dense",
        Branch::GapDense => "gap_dense",
        Branch::Inconclusive => "inconclusive",
    }
}

pub fn parse_branch(s: &str) -> Option<Branch> {
    Some(match s {
        "expansion" => Branch::Expansion,
        "ap_dense" => Branch::ApDense,
        "gap_dense" => Branch::GapDense,
        "inconclusive" => Branch::Inconclusive,
        _ => return None,
    })
}

impl AnalyzeJson {
    pub fn new(r: &StructureReport, set_size: usize) -> Self {
        AnalyzeJson {
            schema_version: SCHEMA_VERSION,
            kind: "analyze".into(),
            branch: branch_name(r.branch).into(),
            set_size,
            sigma: r.sigma.into(),
            params: ParamsJson {
                delta: r.params.delta.into(),
                eps: r.params.eps.into(),
                min_frac: r.params.min_frac.into(),
                max_l: r.params.max_l,
            },
            min_size: r.min_size,
            witness: r.witness.as_ref().map(Into::into),
            density: r.density.map(Into::into),
            best_ap: r.best_ap.as_ref().map(Into::into),
            best_gap: r.best_gap.as_ref().map(Into::into),
        }
    }
}

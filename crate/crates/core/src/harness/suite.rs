use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{
    check_cycle, check_rainbow_cycle, text::write_digraph, text::write_rainbow, BoundKind,
    CycleCertificate, Digraph, Edge, RainbowInstance, Rational,
};
use crate::oracles::{
    deg2_short_cycle, girth_exact, shortest_rainbow_cycle_exact, shortest_rainbow_path,
    two_cycles_min_intersection, OracleError,
};
use crate::peeling::{peel, phi, psi, removable_vertices, removal_side_sums, PeelError};
use crate::rainbow::{
    check_diameter_claim, distance_table, find_rainbow_cycle_traced, rainbow_bound, HStructure,
    LevelOutcome, RainbowError,
};

use super::enumerate::{labeled_count, labeled_digraph, DigraphFilter, OutmapSpace, LABELED_CAP};
use super::random::{disjoint_pairings, mixed_rainbow_instance, RAINBOW_CAP};
use super::HarnessError;

/// Violations and findings kept in full per report; the rest are counted.
pub const MAX_STORED: usize = 50;
const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    TwoPhi,
    TwoPsiStrict,
    Chc,
    TwoCycles,
    Deg2Girth,
    RainbowBound,
    RdClaim,
    SideSums,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::TwoPhi,
        Check::TwoPsiStrict,
        Check::Chc,
        Check::TwoCycles,
        Check::Deg2Girth,
        Check::RainbowBound,
        Check::RdClaim,
        Check::SideSums,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::TwoPhi => "two-phi",
            Check::TwoPsiStrict => "two-psi-strict",
            Check::Chc => "chc",
            Check::TwoCycles => "two-cycles",
            Check::Deg2Girth => "deg2-girth",
            Check::RainbowBound => "rainbow-bound",
            Check::RdClaim => "rd-claim",
            Check::SideSums => "side-sums",
        }
    }

    /// Open conjectures report findings; they never fail a run.
    pub fn is_conjecture(self) -> bool {
        self == Check::Chc
    }

    pub fn on_rainbow(self) -> bool {
        matches!(self, Check::RainbowBound | Check::RdClaim)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::BadConfig(format!("unknown check '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Labeled(DigraphFilter),
    Outmaps { dmin: usize, dmax: usize },
    /// `count` seeded instances per `n`, mixed `p`.
    Rainbow { count: u64 },
    /// Every split of the edges of `K_n` into disjoint pairs.
    Pairings,
}

impl Generator {
    pub fn is_rainbow(self) -> bool {
        matches!(self, Generator::Rainbow { .. } | Generator::Pairings)
    }
}

pub const DEFAULT_RAINBOW_COUNT: u64 = 1000;

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Labeled(DigraphFilter::None) => write!(f, "labeled"),
            Generator::Labeled(DigraphFilter::Sinkless) => write!(f, "labeled:sinkless"),
            Generator::Labeled(DigraphFilter::StronglyConnected) => write!(f, "labeled:strong"),
            Generator::Outmaps { dmin, dmax } => write!(f, "outmaps:{dmin}:{dmax}"),
            Generator::Rainbow { count } => write!(f, "rainbow:{count}"),
            Generator::Pairings => write!(f, "pairings"),
        }
    }
}

impl FromStr for Generator {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::BadConfig(format!("unknown generator '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse().map_err(|_| bad());
        Ok(match parts.as_slice() {
            ["labeled"] => Generator::Labeled(DigraphFilter::None),
            ["labeled", "sinkless"] => Generator::Labeled(DigraphFilter::Sinkless),
            ["labeled", "strong"] => Generator::Labeled(DigraphFilter::StronglyConnected),
            ["outmaps", a, b] => Generator::Outmaps {
                dmin: num(a)? as usize,
                dmax: num(b)? as usize,
            },
            ["rainbow"] => Generator::Rainbow {
                count: DEFAULT_RAINBOW_COUNT,
            },
            ["rainbow", c] => Generator::Rainbow { count: num(c)? },
            ["pairings"] => Generator::Pairings,
            _ => return Err(bad()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub generator: Generator,
    pub checks: Vec<Check>,
    /// 0 picks the thread pool's default.
    pub workers: usize,
    pub seed: u64,
    /// One line per `n` on standard error.
    pub progress: bool,
}

impl SuiteConfig {
    pub fn new(n_min: usize, n_max: usize, generator: Generator, checks: &[Check]) -> Self {
        SuiteConfig {
            n_min,
            n_max,
            generator,
            checks: checks.to_vec(),
            workers: 0,
            seed: 0,
            progress: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n_min > self.n_max {
            return Err(HarnessError::BadConfig(format!(
                "empty n-range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.checks.is_empty() {
            return Err(HarnessError::BadConfig("no checks selected".into()));
        }
        if let Some(c) = self
            .checks
            .iter()
            .find(|c| c.on_rainbow() != self.generator.is_rainbow())
        {
            return Err(HarnessError::BadConfig(format!(
                "check {c} does not apply to generator {}",
                self.generator
            )));
        }
        let (name, cap) = match self.generator {
            Generator::Labeled(_) => ("labeled", LABELED_CAP),
            Generator::Outmaps { .. } => ("outmaps", super::enumerate::OUTMAP_CAP),
            Generator::Rainbow { .. } => ("rainbow", RAINBOW_CAP),
            Generator::Pairings => ("pairings", super::random::PAIRINGS_CAP),
        };
        if self.n_max > cap {
            return Err(HarnessError::CapExceeded {
                generator: name,
                n: self.n_max,
                cap,
            });
        }
        if let Generator::Outmaps { dmin, dmax } = self.generator {
            OutmapSpace::new(self.n_max, dmin, dmax)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    /// Instances the check applied to.
    pub checked: u64,
    pub passed: u64,
    /// Instances outside the check's hypothesis.
    pub skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub n: usize,
    /// Position in the generator's stream for this `n`.
    pub index: u64,
    pub detail: String,
    /// The instance in text format.
    pub instance: String,
}

impl Violation {
    fn key(&self) -> (usize, u64, Check) {
        (self.n, self.index, self.check)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRecord {
    pub girth: usize,
    pub psi: Rational,
    /// `girth / psi`, rounded for display.
    pub ratio: f64,
    pub n: usize,
    pub index: u64,
    pub instance: String,
}

impl RatioRecord {
    /// Larger ratio first, then the earlier instance.
    fn better_than(&self, other: &RatioRecord) -> bool {
        let lhs = Rational::from(self.girth) * &other.psi;
        let rhs = Rational::from(other.girth) * &self.psi;
        match lhs.cmp(&rhs) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => (self.n, self.index) < (other.n, other.index),
        }
    }
}

/// Instances where the peeling bound is attained, `g = 2φ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TightRecord {
    pub count: u64,
    pub single_cycles: u64,
    pub unions_of_cycles: u64,
    pub unions_of_cycles_tight: u64,
    /// The first tight instance that is not a single cycle, if any.
    pub other_witness: Option<String>,
    #[serde(skip)]
    other_key: Option<(usize, u64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Tally {
    pub instances: u64,
    pub per_n: BTreeMap<usize, u64>,
    pub checks: BTreeMap<Check, CheckTally>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub finding_count: u64,
    pub findings: Vec<Violation>,
    pub max_ratio: Option<RatioRecord>,
    pub tight: TightRecord,
    /// Largest gap between the constructive rainbow length and the optimum.
    pub max_rainbow_gap: Option<usize>,
    /// How the top level of each rainbow construction was resolved.
    pub rainbow_routes: BTreeMap<&'static str, u64>,
    #[serde(skip)]
    cap: Option<(usize, u64, String)>,
}

fn merge_capped(a: &mut Vec<Violation>, b: Vec<Violation>) {
    a.extend(b);
    a.sort_by_key(Violation::key);
    a.truncate(MAX_STORED);
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        for (n, c) in other.per_n {
            *self.per_n.entry(n).or_default() += c;
        }
        for (k, t) in other.checks {
            let e = self.checks.entry(k).or_default();
            e.checked += t.checked;
            e.passed += t.passed;
            e.skipped += t.skipped;
        }
        self.violation_count += other.violation_count;
        merge_capped(&mut self.violations, other.violations);
        self.finding_count += other.finding_count;
        merge_capped(&mut self.findings, other.findings);
        self.max_ratio = match (self.max_ratio, other.max_ratio) {
            (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
            (a, b) => a.or(b),
        };
        let (t, o) = (&mut self.tight, other.tight);
        t.count += o.count;
        t.single_cycles += o.single_cycles;
        t.unions_of_cycles += o.unions_of_cycles;
        t.unions_of_cycles_tight += o.unions_of_cycles_tight;
        if o.other_key.is_some() && (t.other_key.is_none() || o.other_key < t.other_key) {
            t.other_key = o.other_key;
            t.other_witness = o.other_witness;
        }
        self.max_rainbow_gap = self.max_rainbow_gap.max(other.max_rainbow_gap);
        for (k, c) in other.rainbow_routes {
            *self.rainbow_routes.entry(k).or_default() += c;
        }
        self.cap = match (self.cap, other.cap) {
            (Some(a), Some(b)) => Some(if (b.0, b.1) < (a.0, a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    fn tally(&mut self, check: Check) -> &mut CheckTally {
        self.checks.entry(check).or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub generator: String,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub requested: Vec<Check>,
    #[serde(flatten)]
    pub tally: Tally,
}

impl Report {
    /// Violations of proved statements; a non-zero count is either a bug or
    /// a counterexample.
    pub fn violation_count(&self) -> u64 {
        self.tally.violation_count
    }

    pub fn passed(&self) -> bool {
        self.tally.violation_count == 0
    }

    pub fn check(&self, c: Check) -> CheckTally {
        self.tally.checks.get(&c).copied().unwrap_or_default()
    }
}

/// Where one instance sits, plus a lazy text dump for reports.
struct Ctx<'a, F: Fn() -> String> {
    n: usize,
    index: u64,
    dump: F,
    tally: &'a mut Tally,
}

impl<F: Fn() -> String> Ctx<'_, F> {
    fn pass(&mut self, check: Check) {
        let t = self.tally.tally(check);
        t.checked += 1;
        t.passed += 1;
    }

    fn skip(&mut self, check: Check) {
        self.tally.tally(check).skipped += 1;
    }

    fn fail(&mut self, check: Check, detail: String) {
        self.tally.tally(check).checked += 1;
        let v = Violation {
            check,
            n: self.n,
            index: self.index,
            detail,
            instance: (self.dump)(),
        };
        let (count, list) = if check.is_conjecture() {
            (&mut self.tally.finding_count, &mut self.tally.findings)
        } else {
            (&mut self.tally.violation_count, &mut self.tally.violations)
        };
        *count += 1;
        if list.len() < MAX_STORED {
            list.push(v);
        }
    }

    fn outcome(&mut self, check: Check, r: Result<(), String>) {
        match r {
            Ok(()) => self.pass(check),
            Err(e) => self.fail(check, e),
        }
    }

    fn cap(&mut self, e: impl fmt::Display) {
        let here = (self.n, self.index, e.to_string());
        if self.tally.cap.as_ref().map_or(true, |c| (here.0, here.1) < (c.0, c.1)) {
            self.tally.cap = Some(here);
        }
    }
}

fn lcm_upto(n: usize) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n.max(1) as u64).fold(1, |l, k| l / gcd(l, k) * k)
}

/// Removal condition and its summation identity, with the rational sums
/// cross-checked against an integer route scaled by `lcm(1..=n)`.
fn side_sums_agree(d: &Digraph) -> Result<(), String> {
    let n = d.n();
    let phi = phi(d);
    let (l, r) = removal_side_sums(d);
    if l != phi || r != phi {
        return Err(format!("side sums {l} and {r} differ from φ = {phi}"));
    }
    // k(k+1) divides lcm(1..=n) for every out-degree k <= n−1.
    let scale = lcm_upto(n);
    let lhs: Vec<u64> = (0..n).map(|v| scale / (d.out_degree(v) as u64 + 1)).collect();
    let rhs: Vec<u64> = (0..n)
        .map(|v| {
            d.in_neighbors(v)
                .iter()
                .map(|&u| {
                    let k = d.out_degree(u) as u64;
                    scale / (k * (k + 1))
                })
                .sum()
        })
        .collect();
    let (sl, sr): (u64, u64) = (lhs.iter().sum(), rhs.iter().sum());
    if sl != sr || phi * Rational::from(scale) != Rational::from(sl) {
        return Err(format!("integer side sums {sl}, {sr} disagree with φ·{scale}"));
    }
    let by_integers: Vec<usize> = (0..n).filter(|&v| lhs[v] >= rhs[v]).collect();
    let by_rationals = removable_vertices(d);
    if by_integers != by_rationals {
        return Err(format!(
            "removable sets disagree: {by_rationals:?} (rational) vs {by_integers:?} (integer)"
        ));
    }
    Ok(())
}

fn check_digraph<F: Fn() -> String>(d: &Digraph, checks: &[Check], ctx: &mut Ctx<'_, F>) {
    let sinkless = d.n() > 0 && d.is_sinkless();
    let deg12 = d.n() > 0 && (0..d.n()).all(|v| matches!(d.out_degree(v), 1 | 2));
    let girth = if checks.iter().any(|c| *c != Check::SideSums && *c != Check::TwoCycles) {
        girth_exact(d)
    } else {
        None
    };
    let g = girth.as_ref().map(|c| c.len());

    for &check in checks {
        match check {
            Check::SideSums if sinkless => {
                let r = side_sums_agree(d);
                ctx.outcome(check, r);
            }
            Check::TwoPhi if sinkless => {
                let r = two_phi(d, g, ctx);
                ctx.outcome(check, r);
            }
            Check::TwoPsiStrict if sinkless => {
                let psi = psi(d).expect("sink-less");
                let g = g.expect("sink-less digraphs have cycles");
                if psi.clone() * Rational::from(2u64) > Rational::from(g) {
                    ctx.pass(check);
                } else {
                    ctx.fail(check, format!("g = {g} >= 2ψ = 2·{psi}"));
                }
                let rec = RatioRecord {
                    girth: g,
                    ratio: g as f64 / psi.to_f64(),
                    psi,
                    n: ctx.n,
                    index: ctx.index,
                    instance: String::new(),
                };
                if ctx.tally.max_ratio.as_ref().map_or(true, |b| rec.better_than(b)) {
                    ctx.tally.max_ratio = Some(RatioRecord {
                        instance: (ctx.dump)(),
                        ..rec
                    });
                }
            }
            Check::Chc if sinkless => {
                let g = g.expect("sink-less digraphs have cycles");
                let delta = d.min_out_degree().expect("non-empty");
                let bound = d.n().div_ceil(delta);
                if g <= bound {
                    ctx.pass(check);
                } else {
                    ctx.fail(check, format!("g = {g} > ⌈n/δ⁺⌉ = {bound}"));
                }
            }
            Check::TwoCycles => match two_cycles_min_intersection(d) {
                Ok(pair) => {
                    let r = [&pair.c1, &pair.c2].into_iter().try_for_each(|c| {
                        let cert = CycleCertificate {
                            kind: BoundKind::ExactGirth,
                            vertices: c.clone(),
                            bound: Rational::from(c.len()),
                        };
                        check_cycle(d, &cert).map_err(|e| format!("cycle {c:?}: {e}"))
                    });
                    if pair.in_hypothesis {
                        ctx.outcome(check, r);
                    } else {
                        ctx.skip(check);
                    }
                }
                Err(OracleError::Acyclic) => ctx.skip(check),
                Err(OracleError::TheoremViolation(e)) => ctx.fail(check, e),
                Err(e @ OracleError::ResourceCap { .. }) => ctx.cap(e),
                Err(e) => ctx.fail(check, e.to_string()),
            },
            Check::Deg2Girth if deg12 => {
                let g = g.expect("sink-less digraphs have cycles");
                let bound = (d.n() + d.count_out_degree_one()).div_ceil(2);
                let r = if g > bound {
                    Err(format!("g = {g} > ⌈(n+p)/2⌉ = {bound}"))
                } else {
                    match deg2_short_cycle(d) {
                        Ok(c) if c.len() >= g => Ok(()),
                        Ok(c) => Err(format!("certificate {:?} shorter than the girth {g}", c.vertices)),
                        Err(e @ OracleError::ResourceCap { .. }) => {
                            ctx.cap(e);
                            continue;
                        }
                        Err(e) => Err(e.to_string()),
                    }
                };
                ctx.outcome(check, r);
            }
            _ => ctx.skip(check),
        }
    }
}

fn two_phi<F: Fn() -> String>(
    d: &Digraph,
    g: Option<usize>,
    ctx: &mut Ctx<'_, F>,
) -> Result<(), String> {
    let g = g.ok_or("sink-less digraph reported acyclic")?;
    let trace = peel(d).map_err(|e| match e {
        PeelError::LemmaViolation(m) => format!("lemma violation: {m}"),
        e => e.to_string(),
    })?;
    trace.check(d)?;
    let cert = trace.certificate();
    check_cycle(d, &cert).map_err(|e| format!("peeling certificate: {e}"))?;
    if cert.len() < g {
        return Err(format!("peeling cycle of length {} beats the girth {g}", cert.len()));
    }
    let two_phi = trace.phi_initial.clone() * Rational::from(2u64);
    match two_phi.cmp_int(g as u64) {
        Ordering::Less => Err(format!("g = {g} > 2φ = {two_phi}")),
        Ordering::Equal => {
            let single = d.is_union_of_cycles() && g == d.n();
            let t = &mut ctx.tally.tight;
            t.count += 1;
            if single {
                t.single_cycles += 1;
            } else if t.other_key.map_or(true, |k| (ctx.n, ctx.index) < k) {
                t.other_key = Some((ctx.n, ctx.index));
                t.other_witness = Some((ctx.dump)());
            }
            if d.is_union_of_cycles() {
                t.unions_of_cycles += 1;
                t.unions_of_cycles_tight += 1;
            }
            Ok(())
        }
        Ordering::Greater => {
            if d.is_union_of_cycles() {
                ctx.tally.tight.unions_of_cycles += 1;
            }
            Ok(())
        }
    }
}

fn h_brute_distances(h: &HStructure) -> Vec<((usize, usize), Option<usize>)> {
    let edges: Vec<(Edge, usize)> = h.edges().into_iter().map(|(r, e)| (e, r.family)).collect();
    let mut vs = h.vertices.clone();
    vs.sort_unstable();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            out.push(((u, v), shortest_rainbow_path(&edges, u, v)));
        }
    }
    out
}

fn check_rainbow<F: Fn() -> String>(inst: &RainbowInstance, checks: &[Check], ctx: &mut Ctx<'_, F>) {
    let want = |c| checks.contains(&c);
    let result = find_rainbow_cycle_traced(inst);
    let (cert, trace) = match result {
        Ok(x) => x,
        Err(RainbowError::Oracle(e @ OracleError::ResourceCap { .. })) => return ctx.cap(e),
        Err(RainbowError::ClaimViolation(e)) => {
            if want(Check::RdClaim) {
                ctx.fail(Check::RdClaim, e.clone());
            }
            if want(Check::RainbowBound) {
                ctx.fail(Check::RainbowBound, format!("construction aborted: {e}"));
            }
            return;
        }
        Err(e) => {
            let check = if want(Check::RainbowBound) {
                Check::RainbowBound
            } else {
                Check::RdClaim
            };
            return ctx.fail(check, e.to_string());
        }
    };
    let route = match trace.levels[0].outcome {
        LevelOutcome::Loop => "loop",
        LevelOutcome::SharedEdge => "shared-edge",
        LevelOutcome::Oracle { .. } => "all-pairs-oracle",
        LevelOutcome::Contracted { through_h: true, .. } => "contracted-through-h",
        LevelOutcome::Contracted { through_h: false, .. } => "contracted-avoiding-h",
    };
    *ctx.tally.rainbow_routes.entry(route).or_default() += 1;

    if want(Check::RainbowBound) {
        let bound = rainbow_bound(inst.n(), inst.p());
        let r = match shortest_rainbow_cycle_exact(inst) {
            Err(e) => return ctx.cap(e),
            Ok(None) => Err("oracle finds no rainbow cycle".to_string()),
            Ok(Some(opt)) => check_rainbow_cycle(inst, &cert)
                .and_then(|_| check_rainbow_cycle(inst, &opt))
                .map_err(|e| format!("certificate: {e}"))
                .and_then(|_| {
                    if cert.len() > bound {
                        Err(format!("length {} > ⌈(n+p)/2⌉ = {bound}", cert.len()))
                    } else if opt.len() > cert.len() {
                        Err(format!("oracle {} > constructive {}", opt.len(), cert.len()))
                    } else if inst.p() == 0 && opt.len() > inst.n().div_ceil(2) {
                        Err(format!("all-pairs rg = {} > ⌈n/2⌉", opt.len()))
                    } else {
                        let gap = cert.len() - opt.len();
                        ctx.tally.max_rainbow_gap = ctx.tally.max_rainbow_gap.max(Some(gap));
                        Ok(())
                    }
                }),
        };
        ctx.outcome(Check::RainbowBound, r);
    }

    if want(Check::RdClaim) {
        let mut any = false;
        let mut r = Ok(());
        for h in trace.structures() {
            any = true;
            r = check_diameter_claim(h).map(|_| ()).and_then(|_| {
                let fast = distance_table(h);
                let slow = h_brute_distances(h);
                if fast == slow {
                    Ok(())
                } else {
                    Err(format!("rainbow distances in H disagree: {fast:?} vs {slow:?}"))
                }
            });
            if r.is_err() {
                break;
            }
        }
        if any {
            ctx.outcome(Check::RdClaim, r);
        } else {
            ctx.skip(Check::RdClaim);
        }
    }
}

fn run_range(
    cfg: &SuiteConfig,
    n: usize,
    range: std::ops::Range<u64>,
    space: Option<&OutmapSpace>,
    pairings: &[RainbowInstance],
) -> Tally {
    let mut tally = Tally::default();
    for index in range {
        match cfg.generator {
            Generator::Labeled(filter) => {
                let d = labeled_digraph(n, index);
                if !filter.accepts(&d) {
                    continue;
                }
                digraph_instance(cfg, n, index, &d, &mut tally);
            }
            Generator::Outmaps { .. } => {
                let d = space.expect("outmap space").get(index);
                digraph_instance(cfg, n, index, &d, &mut tally);
            }
            Generator::Rainbow { .. } => match mixed_rainbow_instance(n, cfg.seed, index) {
                Ok(inst) => rainbow_instance(cfg, n, index, &inst, &mut tally),
                Err(e) => {
                    let mut ctx = Ctx {
                        n,
                        index,
                        dump: String::new,
                        tally: &mut tally,
                    };
                    ctx.cap(e);
                }
            },
            Generator::Pairings => {
                rainbow_instance(cfg, n, index, &pairings[index as usize], &mut tally)
            }
        }
    }
    tally
}

fn digraph_instance(cfg: &SuiteConfig, n: usize, index: u64, d: &Digraph, tally: &mut Tally) {
    tally.instances += 1;
    *tally.per_n.entry(n).or_default() += 1;
    let mut ctx = Ctx {
        n,
        index,
        dump: || write_digraph(d),
        tally,
    };
    check_digraph(d, &cfg.checks, &mut ctx);
}

fn rainbow_instance(cfg: &SuiteConfig, n: usize, index: u64, inst: &RainbowInstance, tally: &mut Tally) {
    tally.instances += 1;
    *tally.per_n.entry(n).or_default() += 1;
    let mut ctx = Ctx {
        n,
        index,
        dump: || write_rainbow(inst),
        tally,
    };
    check_rainbow(inst, &cfg.checks, &mut ctx);
}

/// Streams every instance of the configured space through the selected
/// checks. Counts and stored witnesses do not depend on the worker count.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| HarnessError::BadConfig(e.to_string()))?;

    let mut tally = Tally::default();
    for n in cfg.n_min..=cfg.n_max {
        let space = match cfg.generator {
            Generator::Outmaps { dmin, dmax } => Some(OutmapSpace::new(n, dmin, dmax)?),
            _ => None,
        };
        let pairings = match cfg.generator {
            Generator::Pairings => disjoint_pairings(n)?,
            _ => Vec::new(),
        };
        let total = match cfg.generator {
            Generator::Labeled(_) => labeled_count(n),
            Generator::Outmaps { .. } => space.as_ref().map_or(0, |s| s.len()),
            Generator::Rainbow { count } => count,
            Generator::Pairings => pairings.len() as u64,
        };
        let chunks = total.div_ceil(CHUNK);
        let part = pool.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let range = c * CHUNK..((c + 1) * CHUNK).min(total);
                    run_range(cfg, n, range, space.as_ref(), &pairings)
                })
                .reduce(Tally::default, Tally::merge)
        });
        if cfg.progress {
            eprintln!(
                "{} n={n}: {} instances, {} violations",
                cfg.generator,
                part.instances,
                part.violation_count
            );
        }
        tally = tally.merge(part);
        if let Some((n, index, e)) = tally.cap.take() {
            return Err(HarnessError::ResourceCap(format!("n = {n}, instance {index}: {e}")));
        }
    }

    Ok(Report {
        generator: cfg.generator.to_string(),
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        seed: cfg.seed,
        requested: cfg.checks.clone(),
        tally,
    })
}

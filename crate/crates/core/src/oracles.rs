//! Exact small-scale computations behind the process properties.
//!
//! - [`flight_dp`]: the distribution of a capped flight after `t` jumps.
//! - [`check_monotonicity`]: `P(u) ≥ P(v)` whenever `‖v‖∞ ≥ ‖u‖₁`.
//! - [`phase_visit_prob`]: probability that one walk phase visits a node.
//! - [`projection_pmf`]: law of the x-displacement of a single flight jump.
//! - [`walk_hit_dp`]: probability that a capped walk visits a node within a
//!   small budget.
//! - [`check_intermediate_bounds`]: floor/ceil bounds on direct-path layer
//!   probabilities, in exact rationals.
//!
//! [`run_suite`] bundles them into the report behind `levy verify`.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::engine::{flight_kernel, LevyFlight, LevyWalk};
use crate::error::{domain, Error, Result};
use crate::experiments::fit_power_law;
use crate::lattice::{
    intermediate_bounds, intermediate_distribution, intermediate_probability, minimizers_by_scan, ring, LatticePoint,
};
use crate::powerlaw::{power_tail, Bracket, CompensatedSum, JumpLaw};

/// Largest `t · cap` accepted by [`flight_dp`] (grid side `2·t·cap + 1`).
pub const DP_RADIUS_LIMIT: u64 = 128;
/// Tolerance separating a monotonicity violation from rounding.
pub const MONOTONICITY_TOL: f64 = 1e-12;

/// Exact law of a capped flight after `t` jumps from the origin, on the
/// square `Q_{t·cap}`.
#[derive(Debug, Clone)]
pub struct ExactDistribution {
    t: u64,
    radius: u64,
    probs: Vec<f64>,
    alpha: f64,
    cap: u64,
}

impl ExactDistribution {
    fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    fn index(&self, p: LatticePoint) -> Option<usize> {
        let r = self.radius as i64;
        if p.x.abs() > r || p.y.abs() > r {
            return None;
        }
        Some((p.y + r) as usize * self.side() + (p.x + r) as usize)
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn prob(&self, p: LatticePoint) -> f64 {
        self.index(p).map_or(0.0, |i| self.probs[i])
    }

    /// Every grid node with its probability (zeros included).
    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, f64)> + '_ {
        let r = self.radius as i64;
        let side = self.side();
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (LatticePoint::new((i % side) as i64 - r, (i / side) as i64 - r), p))
    }

    pub fn total(&self) -> f64 {
        let mut s = CompensatedSum::default();
        self.probs.iter().for_each(|&p| s.add(p));
        s.value()
    }

    fn point_mass(alpha: f64, cap: u64) -> Self {
        ExactDistribution { t: 0, radius: 0, probs: vec![1.0], alpha, cap }
    }

    /// Distribution of the sum of independent displacements drawn from
    /// `self` and `other` (same law).
    pub fn convolve(&self, other: &ExactDistribution) -> ExactDistribution {
        let radius = self.radius + other.radius;
        let mut out = ExactDistribution {
            t: self.t + other.t,
            radius,
            probs: Vec::new(),
            alpha: self.alpha,
            cap: self.cap,
        };
        let n = out.side() * out.side();
        let mut acc = vec![CompensatedSum::default(); n];
        let b: Vec<(LatticePoint, f64)> = other.iter().filter(|e| e.1 != 0.0).collect();
        for (p, pa) in self.iter().filter(|e| e.1 != 0.0) {
            for &(q, pb) in &b {
                acc[out.index(p + q).unwrap()].add(pa * pb);
            }
        }
        out.probs = acc.iter().map(CompensatedSum::value).collect();
        out
    }
}

/// Distribution after `t` jumps of a flight whose jump lengths follow the
/// capped law `law`.
pub fn flight_dp(law: &JumpLaw, t: u64) -> Result<ExactDistribution> {
    let cap = law
        .cap()
        .ok_or_else(|| Error::Oracle("flight_dp needs a capped law".into()))?;
    if t.saturating_mul(cap) > DP_RADIUS_LIMIT {
        return Err(Error::Oracle(format!(
            "state space too large: t·cap = {} exceeds {DP_RADIUS_LIMIT}",
            t.saturating_mul(cap)
        )));
    }
    let mut kernel = ExactDistribution::point_mass(law.alpha(), cap);
    kernel.t = 1;
    kernel.radius = cap;
    let side = (2 * cap + 1) as usize;
    kernel.probs = vec![0.0; side * side];
    for d in 0..=cap {
        for p in ring(LatticePoint::ORIGIN, d) {
            let i = kernel.index(p).unwrap();
            kernel.probs[i] = flight_kernel(law, p);
        }
    }
    let mut dist = ExactDistribution::point_mass(law.alpha(), cap);
    for _ in 0..t {
        dist = dist.convolve(&kernel);
    }
    Ok(dist)
}

/// Largest budget accepted by [`walk_hit_dp`].
pub const WALK_DP_BUDGET_LIMIT: u64 = 64;

/// Exact probability that a capped walk started at the origin visits
/// `target` within `budget` steps.
///
/// The state is the position plus the active phase (start, destination,
/// layers done). Layer nodes come from the exhaustive minimizer scan, and a
/// tied layer picks either node with probability 1/2, which is what a
/// uniformly random direct-path does.
pub fn walk_hit_dp(law: &JumpLaw, target: LatticePoint, budget: u64) -> Result<f64> {
    let cap = law
        .cap()
        .ok_or_else(|| Error::Oracle("walk_hit_dp needs a capped law".into()))?;
    if cap > 8 || budget > WALK_DP_BUDGET_LIMIT {
        return Err(Error::Oracle(format!(
            "state space too large: need cap <= 8 and budget <= {WALK_DP_BUDGET_LIMIT}"
        )));
    }
    if target == LatticePoint::ORIGIN {
        return Ok(1.0);
    }
    type Phase = Option<(LatticePoint, LatticePoint, u64)>;
    // Layer nodes relative to the phase start, keyed by (displacement, layer).
    let mut layers: HashMap<(LatticePoint, u64), Vec<LatticePoint>> = HashMap::new();
    let mut layer = |delta: LatticePoint, i: u64| -> Vec<LatticePoint> {
        layers
            .entry((delta, i))
            .or_insert_with(|| minimizers_by_scan(LatticePoint::ORIGIN, delta, i))
            .clone()
    };
    let mut dist: HashMap<(LatticePoint, Phase), f64> = HashMap::from([((LatticePoint::ORIGIN, None), 1.0)]);
    let mut hit = CompensatedSum::default();
    for _ in 0..budget {
        let mut next: HashMap<(LatticePoint, Phase), f64> = HashMap::new();
        let mut moves: Vec<(LatticePoint, LatticePoint, u64, f64)> = Vec::new();
        for (&(pos, phase), &p) in &dist {
            match phase {
                Some((start, dest, i)) => moves.push((start, dest, i, p)),
                None => {
                    *next.entry((pos, None)).or_default() += p * law.pmf(0);
                    for d in 1..=cap {
                        let share = p * law.pmf(d) / (4 * d) as f64;
                        for q in ring(pos, d) {
                            moves.push((pos, q, 0, share));
                        }
                    }
                }
            }
        }
        for (start, dest, i, p) in moves {
            let d = start.l1_to(dest);
            let nodes = layer(dest - start, i + 1);
            let share = p / nodes.len() as f64;
            for w in nodes {
                let pos = start + w;
                if pos == target {
                    hit.add(share);
                } else {
                    let phase = (i + 1 < d).then_some((start, dest, i + 1));
                    *next.entry((pos, phase)).or_default() += share;
                }
            }
        }
        dist = next;
    }
    Ok(hit.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub u: LatticePoint,
    pub v: LatticePoint,
    pub p_u: f64,
    pub p_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub t: u64,
    pub nodes: usize,
    /// For each violating `u`, the worst `v`.
    pub violations: Vec<Violation>,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `P(u) ≥ P(v) - 1e-12` for all `u, v` with `‖v‖∞ ≥ ‖u‖₁`.
///
/// Nodes outside the grid have probability zero, and any `u` with
/// `‖u‖₁ > radius` can only be compared against such nodes, so scanning the
/// grid against suffix maxima over `‖·‖∞` covers all pairs.
pub fn check_monotonicity(dist: &ExactDistribution) -> MonotonicityReport {
    let r = dist.radius() as usize;
    // best[s] = node with the largest probability among ‖v‖∞ ≥ s.
    let mut best: Vec<(f64, LatticePoint)> = vec![(0.0, LatticePoint::ORIGIN); r + 2];
    for (p, pr) in dist.iter() {
        let s = p.linf() as usize;
        if pr > best[s].0 {
            best[s] = (pr, p);
        }
    }
    for s in (0..=r).rev() {
        if best[s + 1].0 > best[s].0 {
            best[s] = best[s + 1];
        }
    }
    let violations = dist
        .iter()
        .filter_map(|(u, pu)| {
            let s = u.l1() as usize;
            let (pv, v) = *best.get(s)?;
            (pu < pv - MONOTONICITY_TOL).then_some(Violation { u, v, p_u: pu, p_v: pv })
        })
        .collect();
    MonotonicityReport { t: dist.t(), nodes: dist.probs.len(), violations }
}

/// Probability that one walk phase started at the origin visits `target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseVisit {
    pub target: LatticePoint,
    /// Jump lengths up to this horizon are summed exactly.
    pub horizon: u64,
    pub bracket: Bracket,
}

impl PhaseVisit {
    pub fn value(&self) -> f64 {
        self.bracket.mid()
    }
}

/// Largest `‖target‖₁` accepted by [`phase_visit_prob`].
pub const PHASE_VISIT_LIMIT: u64 = 32;

/// `Σ_{d ≥ D} P(d) · P(u_D = target | length d)`, with `D = ‖target‖₁`.
///
/// Terms with `d ≤ horizon` use exact layer counts. The remainder is bounded
/// with `(D/d)⌊d/D⌋/(4D) ≤ P(u_D = w) ≤ (D/d)⌈d/D⌉/(4D)`, which lies within
/// `(1 ± D/d)/(4D)`. The horizon doubles from `min_horizon` until the bracket
/// is narrower than `rel_width` of its midpoint (or reaches 8192).
pub fn phase_visit_prob(target: LatticePoint, law: &JumpLaw, min_horizon: u64, rel_width: f64) -> Result<PhaseVisit> {
    let dd = target.l1();
    if dd == 0 || dd > PHASE_VISIT_LIMIT {
        return domain(format!("need 1 <= ‖target‖₁ <= {PHASE_VISIT_LIMIT}, got {dd}"));
    }
    let cap = law.cap().unwrap_or(u64::MAX);
    let mut exact = CompensatedSum::default();
    let mut summed_to = dd - 1;
    let mut horizon = min_horizon.max(dd);
    loop {
        for d in summed_to + 1..=horizon.min(cap) {
            let q = if d == dd {
                1.0 / (4 * dd) as f64
            } else {
                let (n, den) = intermediate_probability(d, dd, target);
                n as f64 / den as f64
            };
            exact.add(law.pmf(d) * q);
        }
        summed_to = horizon;
        let bracket = phase_tail_bracket(law, dd, horizon).shift(exact.value());
        if bracket.width() <= rel_width * bracket.mid() || horizon >= 8192 || horizon >= cap {
            return Ok(PhaseVisit { target, horizon, bracket });
        }
        horizon *= 2;
    }
}

/// Bracket on `Σ_{d > h} P(d) · P(u_D = w | d)`.
fn phase_tail_bracket(law: &JumpLaw, dd: u64, h: u64) -> Bracket {
    if law.cap().is_some_and(|c| c <= h) {
        return Bracket::new(0.0, 0.0);
    }
    let t = law.tail_bracket(h + 1);
    // Σ_{d>h} P(d)/d, capped sums through differences of tails.
    let per = law.c_alpha() / law.cap_mass();
    let s = power_tail(law.alpha() + 1.0, h + 1);
    let s = match law.cap() {
        Some(c) => {
            let beyond = power_tail(law.alpha() + 1.0, c + 1);
            Bracket::new((s.lo - beyond.hi).max(0.0), s.hi - beyond.lo)
        }
        None => s,
    }
    .scale(per);
    let w = 4.0 * dd as f64;
    Bracket::new(((t.lo - dd as f64 * s.hi) / w).max(0.0), (t.hi + dd as f64 * s.hi) / w)
}

/// Law of the signed x-displacement of one flight jump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionPmf {
    pub alpha: f64,
    pub d_max: u64,
    /// Rings enumerated node by node.
    pub enumerated_rings: u64,
    /// `P(S = d)` for `|d| ≤ d_max`.
    pub pmf: BTreeMap<i64, Bracket>,
    /// `P(|S| > d_max)`.
    pub outside: Bracket,
}

impl ProjectionPmf {
    pub fn get(&self, d: i64) -> f64 {
        self.pmf.get(&d).map_or(0.0, Bracket::mid)
    }

    pub fn total(&self) -> Bracket {
        let mut lo = CompensatedSum::default();
        let mut hi = CompensatedSum::default();
        for b in self.pmf.values().chain([&self.outside]) {
            lo.add(b.lo);
            hi.add(b.hi);
        }
        Bracket::new(lo.value(), hi.value())
    }
}

/// Exact projection law by enumerating rings up to `d_max + 256`; every
/// farther ring puts exactly two nodes on each column `|x| ≤ d_max`, and
/// its contribution is bracketed analytically.
pub fn projection_pmf(law: &JumpLaw, d_max: u64) -> Result<ProjectionPmf> {
    if d_max > 10_000 {
        return domain("projection_pmf supports d_max <= 10^4");
    }
    let k_enum = match law.cap() {
        Some(c) => c.min(d_max + 256),
        None => d_max + 256,
    };
    let m = d_max as i64;
    let mut acc = vec![CompensatedSum::default(); (2 * m + 1) as usize];
    acc[m as usize].add(law.pmf(0));
    let mut outside = CompensatedSum::default();
    for k in 1..=k_enum {
        let share = law.pmf(k) / (4 * k) as f64;
        for p in ring(LatticePoint::ORIGIN, k) {
            if p.x.abs() <= m {
                acc[(p.x + m) as usize].add(share);
            } else {
                outside.add(share);
            }
        }
    }
    // Rings beyond k_enum: 2 nodes per column, 4k - 4·d_max - 2 outside.
    let per = law.c_alpha() / law.cap_mass();
    let upper_cut = law.cap().map(|c| c + 1);
    let sum_between = |s: f64| -> Bracket {
        let a = power_tail(s, k_enum + 1);
        match upper_cut {
            Some(c) if c <= k_enum + 1 => Bracket::new(0.0, 0.0),
            Some(c) => {
                let b = power_tail(s, c);
                Bracket::new((a.lo - b.hi).max(0.0), a.hi - b.lo)
            }
            None => a,
        }
    };
    let column = sum_between(law.alpha() + 1.0).scale(per * 0.5);
    // Σ P(k)·(4k - 4m - 2)/(4k) = Σ P(k) - (4m+2)/4 · Σ P(k)/k.
    let far_mass = sum_between(law.alpha()).scale(per);
    let far_outside = Bracket::new(
        (far_mass.lo - (4 * m + 2) as f64 / 4.0 * column.hi * 2.0).max(0.0),
        far_mass.hi - (4 * m + 2) as f64 / 4.0 * column.lo * 2.0,
    );
    let pmf = acc
        .iter()
        .enumerate()
        .map(|(i, s)| (i as i64 - m, column.shift(s.value())))
        .collect();
    Ok(ProjectionPmf {
        alpha: law.alpha(),
        d_max,
        enumerated_rings: k_enum,
        pmf,
        outside: far_outside.shift(outside.value()),
    })
}

/// Fitted decay exponent of the projection law over `d ∈ [lo, hi]`, with
/// the two candidate exponents `-α` and `-(α+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub alpha: f64,
    pub range: (u64, u64),
    pub measured_slope: f64,
    pub r2: f64,
    /// `-α`.
    pub statement_exponent: f64,
    /// `-(α+1)`.
    pub proof_exponent: f64,
    /// True when the measured slope is closer to `-α` than to `-(α+1)`.
    pub statement_holds: bool,
}

pub fn projection_report(alpha: f64, lo: u64, hi: u64) -> Result<ProjectionReport> {
    let law = JumpLaw::uncapped(alpha)?;
    let pmf = projection_pmf(&law, hi)?;
    let points: Vec<(f64, f64)> = (lo..=hi).map(|d| (d as f64, pmf.get(d as i64))).collect();
    let fit = fit_power_law(&points)?;
    let statement = -alpha;
    let proof = -(alpha + 1.0);
    Ok(ProjectionReport {
        alpha,
        range: (lo, hi),
        measured_slope: fit.slope,
        r2: fit.r2,
        statement_exponent: statement,
        proof_exponent: proof,
        statement_holds: (fit.slope - statement).abs() < (fit.slope - proof).abs(),
    })
}

/// One failed layer-probability bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub d: u64,
    pub i: u64,
    pub w: LatticePoint,
    pub p: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntermediateReport {
    pub d_max: u64,
    pub pairs: usize,
    pub nodes: usize,
    pub violations: Vec<BoundViolation>,
    /// `(d, i)` pairs whose probabilities do not sum to exactly 1.
    pub mass_errors: Vec<(u64, u64)>,
}

impl IntermediateReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.mass_errors.is_empty()
    }
}

/// Checks the floor/ceil bounds on `P(u_i = w)` for all `1 ≤ i < d ≤ d_max`
/// and `w ∈ R_i`, by exact enumeration.
pub fn check_intermediate_bounds(d_max: u64) -> Result<IntermediateReport> {
    let mut report = IntermediateReport { d_max, pairs: 0, nodes: 0, violations: vec![], mass_errors: vec![] };
    for d in 2..=d_max {
        for i in 1..d {
            let dist = intermediate_distribution(LatticePoint::ORIGIN, d, i)?;
            let (lo, hi) = intermediate_bounds(d, i);
            let mut total = BigRational::new(0.into(), 1.into());
            for (w, p) in &dist {
                if p < &lo || p > &hi {
                    report.violations.push(BoundViolation { d, i, w: *w, p: p.to_string() });
                }
                total += p;
            }
            if total != BigRational::new(1.into(), 1.into()) {
                report.mass_errors.push((d, i));
            }
            report.pairs += 1;
            report.nodes += dist.len();
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingReport {
    pub runs: u64,
    pub jumps: u64,
    pub mismatches: u64,
}

/// Walk phase endpoints against flight positions under shared jump streams.
pub fn check_coupling(alpha: f64, runs: u64, jumps: u64, seed: u64) -> Result<CouplingReport> {
    let law = JumpLaw::uncapped(alpha)?;
    let mut mismatches = 0;
    for r in 0..runs {
        let run_seed = crate::rng::derive_key(seed, &[r]);
        let mut flight = LevyFlight::from_seed(&law, run_seed);
        let mut walk = LevyWalk::from_seed(&law, run_seed);
        for _ in 0..jumps {
            flight.step();
            walk.step();
            walk.finish_phase();
            if crate::engine::JumpProcess::position(&walk) != crate::engine::JumpProcess::position(&flight) {
                mismatches += 1;
                break;
            }
        }
    }
    Ok(CouplingReport { runs, jumps, mismatches })
}

/// Which checks `levy verify` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Normalization,
    /// Layer probability bounds for direct paths (CLI name `lemma1`).
    #[value(name = "lemma1")]
    #[serde(rename = "lemma1")]
    LayerBounds,
    Monotonicity,
    PhaseVisit,
    Projection,
    Coupling,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Largest distance for the layer-probability check.
    pub d_max: u64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { d_max: 12, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

fn result(name: &str, passed: bool, details: impl Serialize) -> Result<SuiteResult> {
    Ok(SuiteResult { name: name.into(), passed, details: serde_json::to_value(details)? })
}

pub fn normalization_suite() -> Result<SuiteResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [2.1, 2.5, 3.0, 4.0] {
        let law = JumpLaw::uncapped(alpha)?;
        let b = law.mass_bracket();
        let pass = b.lo <= 1.0 + 1e-15 && b.hi >= 1.0 - 1e-15 && b.width() < 1e-9;
        ok &= pass;
        rows.push(serde_json::json!({
            "alpha": alpha, "c_alpha": law.c_alpha(), "mass_lo": b.lo, "mass_hi": b.hi,
            "width": b.width(), "passed": pass,
        }));
    }
    result("normalization", ok, rows)
}

pub fn layer_bounds_suite(d_max: u64) -> Result<SuiteResult> {
    let r = check_intermediate_bounds(d_max)?;
    result("lemma1", r.holds(), &r)
}

pub fn monotonicity_suite() -> Result<SuiteResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [2.2, 2.5, 2.9] {
        let law = JumpLaw::new(alpha, Some(6))?;
        for t in 1..=4 {
            let r = check_monotonicity(&flight_dp(&law, t)?);
            ok &= r.holds();
            rows.push(serde_json::json!({
                "alpha": alpha, "cap": 6, "t": t, "nodes": r.nodes, "violations": r.violations,
            }));
        }
    }
    result("monotonicity", ok, rows)
}

pub fn phase_visit_suite() -> Result<SuiteResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [2.2, 2.5, 3.5] {
        let law = JumpLaw::uncapped(alpha)?;
        let mut scaled = Vec::new();
        let mut probs = Vec::new();
        for d in [2u64, 4, 8, 16] {
            let v = phase_visit_prob(LatticePoint::new(d as i64, 0), &law, 256, 0.005)?;
            probs.push(v.value());
            scaled.push(v.value() * (d as f64).powf(alpha));
        }
        let max = scaled.iter().cloned().fold(f64::MIN, f64::max);
        let min = scaled.iter().cloned().fold(f64::MAX, f64::min);
        let decreasing = probs.windows(2).all(|w| w[1] < w[0]);
        let pass = max / min <= 3.0 && decreasing;
        ok &= pass;
        rows.push(serde_json::json!({
            "alpha": alpha, "p": probs, "p_times_d_alpha": scaled, "ratio": max / min, "passed": pass,
        }));
    }
    result("phase_visit", ok, rows)
}

pub fn projection_suite() -> Result<SuiteResult> {
    let r = projection_report(2.5, 8, 128)?;
    let pass = (-2.8..=-2.2).contains(&r.measured_slope) && r.statement_holds;
    result("projection", pass, &r)
}

pub fn coupling_suite(seed: u64) -> Result<SuiteResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [1.5, 2.5, 3.5] {
        let r = check_coupling(alpha, 1000, 50, seed)?;
        ok &= r.mismatches == 0;
        rows.push(serde_json::json!({ "alpha": alpha, "report": r }));
    }
    result("coupling", ok, rows)
}

/// Runs one suite (or all of them).
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    let selected: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Normalization,
            Suite::LayerBounds,
            Suite::Monotonicity,
            Suite::PhaseVisit,
            Suite::Projection,
            Suite::Coupling,
        ],
        s => vec![s],
    };
    let mut suites = Vec::new();
    for s in selected {
        let started = Instant::now();
        let mut r = match s {
            Suite::Normalization => normalization_suite()?,
            Suite::LayerBounds => layer_bounds_suite(opts.d_max)?,
            Suite::Monotonicity => monotonicity_suite()?,
            Suite::PhaseVisit => phase_visit_suite()?,
            Suite::Projection => projection_suite()?,
            Suite::Coupling => coupling_suite(opts.seed)?,
            Suite::All => unreachable!(),
        };
        log_elapsed(&r.name, started);
        r.details = serde_json::json!({ "result": r.details });
        suites.push(r);
    }
    Ok(VerificationReport { passed: suites.iter().all(|s| s.passed), suites })
}

fn log_elapsed(name: &str, started: Instant) {
    if std::env::var_os("LEVY_VERBOSE").is_some() {
        eprintln!("{name}: {:.2?}", started.elapsed());
    }
}

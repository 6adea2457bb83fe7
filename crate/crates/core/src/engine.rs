//! Lévy flights and Lévy walks as resumable step processes.
//!
//! Both processes draw a jump length `d` from a [`JumpLaw`] and a uniform
//! destination on `R_d(pos)` from the same *jump stream*, through
//! [`draw_jump`]. A flight moves to the destination in one step. A walk
//! spends `d` steps following a direct-path to it (or one step in place when
//! `d = 0`). Tie choices along the path come from a separate, counter-based
//! source keyed by `(path_key, phase_id, layer)`, so a walk and a flight fed
//! the same jump stream visit the same phase endpoints, and a walk can skip
//! across a phase without changing which path it would have taken.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{ring_node, LatticePoint, Segment};
use crate::powerlaw::JumpLaw;
use crate::rng::{self, StreamRng};

/// Result of a bounded hitting-time run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HitOutcome {
    /// Step index of the first visit.
    Hit(u64),
    /// No visit up to and including this step.
    Exhausted(u64),
}

impl HitOutcome {
    pub fn hit_step(&self) -> Option<u64> {
        match *self {
            HitOutcome::Hit(t) => Some(t),
            HitOutcome::Exhausted(_) => None,
        }
    }

    pub fn is_hit(&self) -> bool {
        matches!(self, HitOutcome::Hit(_))
    }
}

/// How a walk picks among tied direct-path nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PathMode {
    /// Uniform over all direct-paths.
    #[default]
    Random,
    /// Always the first tied node in ring order (one fixed direct-path).
    Lowest,
}

/// Visit counts for a set of watched nodes (or every node).
#[derive(Debug, Clone, Default)]
pub struct VisitCounter {
    watched: Option<HashSet<LatticePoint>>,
    counts: HashMap<LatticePoint, u64>,
    last_step: Option<u64>,
}

impl VisitCounter {
    /// Counts visits to every node.
    pub fn all() -> Self {
        Self::default()
    }

    pub fn watching(nodes: impl IntoIterator<Item = LatticePoint>) -> Self {
        VisitCounter {
            watched: Some(nodes.into_iter().collect()),
            ..Self::default()
        }
    }

    /// Records the position at `step`; repeated observations of a step
    /// already seen are ignored.
    pub fn observe(&mut self, step: u64, pos: LatticePoint) {
        if self.last_step.is_some_and(|s| step <= s) {
            return;
        }
        self.last_step = Some(step);
        if self.watched.as_ref().is_none_or(|w| w.contains(&pos)) {
            *self.counts.entry(pos).or_default() += 1;
        }
    }

    pub fn count(&self, pos: LatticePoint) -> u64 {
        self.counts.get(&pos).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn last_step(&self) -> Option<u64> {
        self.last_step
    }

    pub fn counts(&self) -> &HashMap<LatticePoint, u64> {
        &self.counts
    }
}

/// One jump draw: length, then a uniform node of `R_d(from)`.
pub fn draw_jump<R: Rng + ?Sized>(law: &JumpLaw, from: LatticePoint, rng: &mut R) -> (u64, LatticePoint) {
    let d = law.sample(rng);
    if d == 0 {
        (0, from)
    } else {
        (d, ring_node(from, d, rng.random_range(0..4 * d)))
    }
}

/// One-step transition probability of a flight onto a node at offset `delta`.
pub fn flight_kernel(law: &JumpLaw, delta: LatticePoint) -> f64 {
    match delta.l1() {
        0 => law.pmf(0),
        d => law.pmf(d) / (4 * d) as f64,
    }
}

/// A discrete-time process on Z² that can be stepped and run to a target.
pub trait JumpProcess {
    fn position(&self) -> LatticePoint;

    /// Steps taken so far (the time index of [`JumpProcess::position`]).
    fn step_index(&self) -> u64;

    /// Advances exactly one time step.
    fn advance(&mut self);

    /// First step `t ≥ step_index()` with `position == target`, looking at no
    /// step beyond `budget`.
    fn run_until_hit(
        &mut self,
        target: LatticePoint,
        budget: u64,
        mut counter: Option<&mut VisitCounter>,
    ) -> HitOutcome {
        loop {
            if let Some(c) = counter.as_deref_mut() {
                c.observe(self.step_index(), self.position());
            }
            if self.position() == target {
                return HitOutcome::Hit(self.step_index());
            }
            if self.step_index() >= budget {
                return HitOutcome::Exhausted(budget);
            }
            self.advance();
        }
    }
}

/// Lévy flight: one jump per step.
#[derive(Debug, Clone)]
pub struct LevyFlight<'a> {
    law: &'a JumpLaw,
    pos: LatticePoint,
    steps_taken: u64,
    rng: StreamRng,
}

impl<'a> LevyFlight<'a> {
    pub fn new(law: &'a JumpLaw, start: LatticePoint, jump_rng: StreamRng) -> Self {
        LevyFlight { law, pos: start, steps_taken: 0, rng: jump_rng }
    }

    /// Flight from the origin with its jump stream derived from `seed`.
    pub fn from_seed(law: &'a JumpLaw, seed: u64) -> Self {
        Self::new(law, LatticePoint::ORIGIN, rng::stream(seed, &[rng::JUMPS]))
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }

    /// Performs one jump and returns its length.
    pub fn step(&mut self) -> u64 {
        let (d, dest) = draw_jump(self.law, self.pos, &mut self.rng);
        self.pos = dest;
        self.steps_taken += 1;
        d
    }
}

impl JumpProcess for LevyFlight<'_> {
    fn position(&self) -> LatticePoint {
        self.pos
    }

    fn step_index(&self) -> u64 {
        self.steps_taken
    }

    fn advance(&mut self) {
        self.step();
    }
}

#[derive(Debug, Clone, Copy)]
struct Phase {
    seg: Segment,
    id: u64,
    /// Layers already traversed.
    offset: u64,
}

impl Phase {
    fn remaining(&self) -> u64 {
        self.seg.len() - self.offset
    }
}

/// Lévy walk: jump-phases traversed one lattice step at a time.
#[derive(Debug, Clone)]
pub struct LevyWalk<'a> {
    law: &'a JumpLaw,
    pos: LatticePoint,
    step: u64,
    rng: StreamRng,
    path_key: u64,
    mode: PathMode,
    phase: Option<Phase>,
    phases_started: u64,
}

impl<'a> LevyWalk<'a> {
    pub fn new(law: &'a JumpLaw, start: LatticePoint, jump_rng: StreamRng, path_key: u64) -> Self {
        LevyWalk {
            law,
            pos: start,
            step: 0,
            rng: jump_rng,
            path_key,
            mode: PathMode::Random,
            phase: None,
            phases_started: 0,
        }
    }

    /// Walk from the origin whose jump stream equals that of
    /// [`LevyFlight::from_seed`] with the same seed.
    pub fn from_seed(law: &'a JumpLaw, seed: u64) -> Self {
        Self::new(
            law,
            LatticePoint::ORIGIN,
            rng::stream(seed, &[rng::JUMPS]),
            rng::derive_key(seed, &[rng::PATHS]),
        )
    }

    pub fn with_path_mode(mut self, mode: PathMode) -> Self {
        self.mode = mode;
        self
    }

    /// 1-based id of the jump-phase that produced the current position
    /// (0 before the first step).
    pub fn phase_id(&self) -> u64 {
        self.phases_started
    }

    /// True when the next step starts a new jump-phase.
    pub fn at_phase_boundary(&self) -> bool {
        self.phase.is_none_or(|p| p.remaining() == 0)
    }

    /// Length of the active phase and layers already traversed.
    pub fn active_phase(&self) -> Option<(u64, u64)> {
        self.phase.map(|p| (p.seg.len(), p.offset))
    }

    fn node(&self, phase: &Phase, i: u64) -> LatticePoint {
        let layer = phase.seg.layer(i);
        match (layer.second, self.mode) {
            (Some(second), PathMode::Random) if rng::coin(self.path_key, phase.id, i) => second,
            _ => layer.first,
        }
    }

    /// Samples the next phase. Returns `false` for a `d = 0` stay, which the
    /// caller must account as one step in place.
    fn begin_phase(&mut self) -> bool {
        self.phases_started += 1;
        let (d, dest) = draw_jump(self.law, self.pos, &mut self.rng);
        if d == 0 {
            self.phase = None;
            return false;
        }
        self.phase = Some(Phase {
            seg: Segment::new(self.pos, dest),
            id: self.phases_started,
            offset: 0,
        });
        true
    }

    /// Advances one lattice step.
    pub fn step(&mut self) {
        if self.at_phase_boundary() && !self.begin_phase() {
            self.step += 1;
            return;
        }
        let mut phase = self.phase.expect("active phase");
        phase.offset += 1;
        let next = self.node(&phase, phase.offset);
        debug_assert!(next.is_adjacent(self.pos), "{} -> {}", self.pos, next);
        self.pos = next;
        self.phase = Some(phase);
        self.step += 1;
    }

    /// Completes the active phase in one move, landing on its destination.
    /// Does nothing at a phase boundary.
    pub fn finish_phase(&mut self) {
        if let Some(mut phase) = self.phase.filter(|p| p.remaining() > 0) {
            self.step += phase.remaining();
            phase.offset = phase.seg.len();
            self.pos = phase.seg.end();
            self.phase = Some(phase);
        }
    }

    /// Hitting run that jumps across whole phases: a phase contains the
    /// target iff the target's layer node is the one the path takes.
    fn run_fast(&mut self, target: LatticePoint, budget: u64) -> HitOutcome {
        if self.pos == target {
            return HitOutcome::Hit(self.step);
        }
        loop {
            if self.step >= budget {
                return HitOutcome::Exhausted(budget);
            }
            let Some(mut phase) = self.phase.filter(|p| p.remaining() > 0) else {
                if !self.begin_phase() {
                    self.step += 1;
                }
                continue;
            };
            if let Some((i, tie)) = phase.seg.locate(target) {
                if i > phase.offset && (!tie || self.node(&phase, i) == target) {
                    let t = self.step + (i - phase.offset);
                    if t <= budget {
                        phase.offset = i;
                        self.phase = Some(phase);
                        self.step = t;
                        self.pos = target;
                        return HitOutcome::Hit(t);
                    }
                }
            }
            let advance = phase.remaining().min(budget - self.step);
            phase.offset += advance;
            self.pos = self.node(&phase, phase.offset);
            self.phase = Some(phase);
            self.step += advance;
        }
    }
}

impl JumpProcess for LevyWalk<'_> {
    fn position(&self) -> LatticePoint {
        self.pos
    }

    fn step_index(&self) -> u64 {
        self.step
    }

    fn advance(&mut self) {
        self.step();
    }

    fn run_until_hit(
        &mut self,
        target: LatticePoint,
        budget: u64,
        mut counter: Option<&mut VisitCounter>,
    ) -> HitOutcome {
        if counter.is_none() {
            return self.run_fast(target, budget);
        }
        loop {
            if let Some(c) = counter.as_deref_mut() {
                c.observe(self.step, self.pos);
            }
            if self.pos == target {
                return HitOutcome::Hit(self.step);
            }
            if self.step >= budget {
                return HitOutcome::Exhausted(budget);
            }
            self.step();
        }
    }
}

/// One trajectory sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub step: u64,
    pub x: i64,
    pub y: i64,
    pub phase_id: u64,
}

/// Positions of a walk at steps `0..=steps`.
pub fn walk_trajectory(walk: &mut LevyWalk<'_>, steps: u64) -> Vec<TrajectoryRow> {
    let mut rows = Vec::with_capacity(steps as usize + 1);
    let push = |w: &LevyWalk<'_>, rows: &mut Vec<TrajectoryRow>| {
        let p = w.position();
        rows.push(TrajectoryRow { step: w.step_index(), x: p.x, y: p.y, phase_id: w.phase_id() });
    };
    push(walk, &mut rows);
    for _ in 0..steps {
        walk.step();
        push(walk, &mut rows);
    }
    rows
}

/// Positions of a flight at steps `0..=steps`; the phase id is the jump index.
pub fn flight_trajectory(flight: &mut LevyFlight<'_>, steps: u64) -> Vec<TrajectoryRow> {
    let mut rows = Vec::with_capacity(steps as usize + 1);
    let p = flight.position();
    rows.push(TrajectoryRow { step: 0, x: p.x, y: p.y, phase_id: 0 });
    for _ in 0..steps {
        flight.step();
        let p = flight.position();
        let t = flight.steps_taken();
        rows.push(TrajectoryRow { step: t, x: p.x, y: p.y, phase_id: t });
    }
    rows
}

/// Writes `step,x,y,phase_id` rows.
pub fn write_trajectory_csv<W: Write>(mut out: W, rows: &[TrajectoryRow]) -> Result<()> {
    writeln!(out, "step,x,y,phase_id")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.step, r.x, r.y, r.phase_id)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ring;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn capped_at_one_flight_moves_to_neighbours_uniformly() {
        let law = JumpLaw::new(2.5, Some(1)).unwrap();
        let mut counts: HashMap<LatticePoint, u32> = HashMap::new();
        for seed in 0..200_000u64 {
            let mut f = LevyFlight::from_seed(&law, seed);
            let d = f.step();
            assert_eq!(f.position().l1(), d);
            *counts.entry(f.position()).or_default() += 1;
        }
        let stay = counts[&LatticePoint::ORIGIN] as f64 / 2e5;
        assert!((stay - law.pmf(0)).abs() < 0.005);
        for q in ring(p(0, 0), 1) {
            let f = counts[&q] as f64 / 2e5;
            assert!((f - law.pmf(1) / 4.0).abs() < 0.004, "{q}: {f}");
        }
    }

    #[test]
    fn single_jump_histogram_matches_radial_kernel() {
        let law = JumpLaw::new(2.2, Some(6)).unwrap();
        let n = 400_000u64;
        let mut by_dist = [0u64; 7];
        let mut f = LevyFlight::from_seed(&law, 99);
        for _ in 0..n {
            let before = f.position();
            f.step();
            by_dist[f.position().l1_to(before) as usize] += 1;
        }
        for (d, &c) in by_dist.iter().enumerate() {
            let expected = law.pmf(d as u64);
            let sd = (expected * (1.0 - expected) / n as f64).sqrt();
            assert!((c as f64 / n as f64 - expected).abs() < 5.0 * sd);
        }
        // Kernel is non-increasing in distance.
        let k: Vec<f64> = (0..8).map(|d| flight_kernel(&law, p(d, 0))).collect();
        assert!(k.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn walk_steps_are_unit_or_stay() {
        let law = JumpLaw::uncapped(1.8).unwrap();
        let mut w = LevyWalk::from_seed(&law, 5);
        let mut prev = w.position();
        for _ in 0..50_000 {
            w.step();
            assert!(prev.l1_to(w.position()) <= 1);
            prev = w.position();
        }
    }

    #[test]
    fn walk_phase_of_length_d_takes_d_steps() {
        let law = JumpLaw::uncapped(2.0).unwrap();
        for seed in 0..300 {
            let mut w = LevyWalk::from_seed(&law, seed);
            w.step();
            if let Some((d, 1)) = w.active_phase() {
                for _ in 1..d {
                    w.step();
                    assert!(!w.at_phase_boundary() || w.active_phase().unwrap().1 == d);
                }
                assert!(w.at_phase_boundary());
                assert_eq!(w.phase_id(), 1);
                assert_eq!(w.step_index(), d);
            } else {
                assert!(w.at_phase_boundary());
                assert_eq!(w.position(), LatticePoint::ORIGIN);
            }
        }
    }

    #[test]
    fn walk_endpoints_equal_flight_positions() {
        let law = JumpLaw::uncapped(2.3).unwrap();
        for seed in 0..50 {
            let mut f = LevyFlight::from_seed(&law, seed);
            let mut w = LevyWalk::from_seed(&law, seed);
            for _ in 0..200 {
                f.step();
                w.step();
                while !w.at_phase_boundary() {
                    w.step();
                }
                assert_eq!(w.position(), f.position());
            }
        }
    }

    #[test]
    fn finish_phase_equals_stepping() {
        let law = JumpLaw::uncapped(2.1).unwrap();
        for seed in 0..50 {
            let mut a = LevyWalk::from_seed(&law, seed);
            let mut b = LevyWalk::from_seed(&law, seed);
            for _ in 0..100 {
                a.step();
                while !a.at_phase_boundary() {
                    a.step();
                }
                b.step();
                b.finish_phase();
                assert_eq!((a.position(), a.step_index()), (b.position(), b.step_index()));
            }
        }
    }

    #[test]
    fn hit_at_origin_is_step_zero() {
        let law = JumpLaw::uncapped(2.5).unwrap();
        let mut w = LevyWalk::from_seed(&law, 1);
        assert_eq!(w.run_until_hit(LatticePoint::ORIGIN, 10, None), HitOutcome::Hit(0));
        let mut f = LevyFlight::from_seed(&law, 1);
        assert_eq!(f.run_until_hit(LatticePoint::ORIGIN, 10, None), HitOutcome::Hit(0));
    }

    #[test]
    fn short_budget_never_hits() {
        let law = JumpLaw::uncapped(1.5).unwrap();
        let target = p(7, -3);
        for seed in 0..2000 {
            let mut w = LevyWalk::from_seed(&law, seed);
            assert_eq!(w.run_until_hit(target, 9, None), HitOutcome::Exhausted(9));
        }
    }

    #[test]
    fn mid_phase_hits_are_detected() {
        // Every jump has length 1 or 0 except under cap 1000 with small alpha;
        // find a seed whose first phase is long and target its interior.
        let law = JumpLaw::new(1.1, Some(1000)).unwrap();
        let mut found = 0;
        for seed in 0..500 {
            let mut probe = LevyWalk::from_seed(&law, seed);
            probe.step();
            let Some((d, _)) = probe.active_phase() else { continue };
            if d < 10 {
                continue;
            }
            for _ in 0..d / 2 - 1 {
                probe.step();
            }
            let mid = probe.position();
            let t = probe.step_index();
            let mut w = LevyWalk::from_seed(&law, seed);
            assert_eq!(w.run_until_hit(mid, t + 5, None), HitOutcome::Hit(t));
            found += 1;
        }
        assert!(found > 5);
    }

    #[test]
    fn fast_and_stepwise_runs_agree() {
        let law = JumpLaw::uncapped(2.1).unwrap();
        for seed in 0..400 {
            let target = p(3, 2);
            let mut fast = LevyWalk::from_seed(&law, seed);
            let mut slow = LevyWalk::from_seed(&law, seed);
            let mut counter = VisitCounter::watching([target]);
            let a = fast.run_until_hit(target, 3000, None);
            let b = slow.run_until_hit(target, 3000, Some(&mut counter));
            assert_eq!(a, b, "seed {seed}");
            assert_eq!(fast.position(), slow.position());
            assert_eq!(counter.count(target), a.is_hit() as u64);
        }
    }

    #[test]
    fn visit_counts_sum_to_steps_plus_one() {
        let law = JumpLaw::uncapped(2.5).unwrap();
        let mut w = LevyWalk::from_seed(&law, 8);
        let mut counter = VisitCounter::all();
        let out = w.run_until_hit(p(1_000_000, 0), 5000, Some(&mut counter));
        assert_eq!(out, HitOutcome::Exhausted(5000));
        assert_eq!(counter.total(), 5001);
    }

    #[test]
    fn lowest_mode_is_deterministic_path() {
        let law = JumpLaw::uncapped(2.0).unwrap();
        let a = walk_trajectory(&mut LevyWalk::from_seed(&law, 3).with_path_mode(PathMode::Lowest), 500);
        let mut w = LevyWalk::new(
            &law,
            LatticePoint::ORIGIN,
            rng::stream(3, &[rng::JUMPS]),
            12345,
        )
        .with_path_mode(PathMode::Lowest);
        assert_eq!(a, walk_trajectory(&mut w, 500));
    }

    #[test]
    fn trajectory_csv_header() {
        let law = JumpLaw::uncapped(2.5).unwrap();
        let rows = walk_trajectory(&mut LevyWalk::from_seed(&law, 7), 3);
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &rows).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("step,x,y,phase_id\n0,0,0,0\n"));
        assert_eq!(s.lines().count(), 5);
    }
}

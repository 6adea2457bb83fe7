//! Geometry of the grid graph on Z².
//!
//! Distances are shortest-path (L1) distances. `R_d(u)` is the ring of nodes
//! at distance exactly `d`, `B_d(u)` the L1 ball and `Q_d(u)` the L∞ square.
//!
//! A direct-path from `u` to `v` (with `d = ‖v - u‖₁`) is a shortest path
//! `u = u_0, u_1, …, u_d = v` whose `i`-th node lies on `R_i(u)` and is a
//! Euclidean-closest node of that ring to the point `w_i` of the real segment
//! `uv` with `‖w_i - u‖₁ = i`. Ties happen, so a pair `(u, v)` may have
//! several direct-paths.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest distance accepted by the enumeration oracles.
pub const ENUMERATION_LIMIT: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// `‖self‖₁`.
    pub fn l1(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }

    /// `‖self‖∞`.
    pub fn linf(self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }

    pub fn l1_to(self, other: LatticePoint) -> u64 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn linf_to(self, other: LatticePoint) -> u64 {
        self.x.abs_diff(other.x).max(self.y.abs_diff(other.y))
    }

    pub fn is_adjacent(self, other: LatticePoint) -> bool {
        self.l1_to(other) == 1
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x.saturating_add(o.x), self.y.saturating_add(o.y))
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x.saturating_sub(o.x), self.y.saturating_sub(o.y))
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

pub fn ring_len(d: u64) -> u64 {
    if d == 0 {
        1
    } else {
        4 * d
    }
}

/// The `j`-th node of `R_d(u)`, `j < 4d`, in ring order: start at
/// `(u.x + d, u.y)` and go counter-clockwise.
pub fn ring_node(u: LatticePoint, d: u64, j: u64) -> LatticePoint {
    if d == 0 {
        return u;
    }
    debug_assert!(j < 4 * d);
    let (q, r) = ((j / d) as i64, (j % d) as i64);
    let d = d as i64;
    let off = match q {
        0 => (d - r, r),
        1 => (-r, d - r),
        2 => (-d + r, -r),
        _ => (r, -d + r),
    };
    u + LatticePoint::from(off)
}

/// All nodes of `R_d(u)` in ring order.
pub fn ring(u: LatticePoint, d: u64) -> Vec<LatticePoint> {
    (0..ring_len(d)).map(|j| ring_node(u, d, j)).collect()
}

/// `B_d(u)`, ordered by ring then ring order.
pub fn ball(u: LatticePoint, d: u64) -> Vec<LatticePoint> {
    (0..=d).flat_map(|k| ring(u, k)).collect()
}

/// `Q_d(u)`, row-major from the bottom-left corner.
pub fn square(u: LatticePoint, d: u64) -> Vec<LatticePoint> {
    let d = d as i64;
    (-d..=d)
        .flat_map(|y| (-d..=d).map(move |x| u + LatticePoint::new(x, y)))
        .collect()
}

/// Uniform node of `R_d(u)` without materialising the ring.
pub fn sample_on_ring<R: Rng + ?Sized>(u: LatticePoint, d: u64, rng: &mut R) -> Result<LatticePoint> {
    if d == 0 {
        return domain("sample_on_ring needs d >= 1");
    }
    Ok(ring_node(u, d, rng.random_range(0..4 * d)))
}

/// Closest ring nodes at one layer of a segment: one node, or two on a tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layer {
    pub first: LatticePoint,
    pub second: Option<LatticePoint>,
}

impl Layer {
    pub fn is_tie(&self) -> bool {
        self.second.is_some()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.first == p || self.second == Some(p)
    }

    pub fn to_vec(&self) -> Vec<LatticePoint> {
        std::iter::once(self.first).chain(self.second).collect()
    }
}

/// The real segment from `start` to `end` seen through its L1 layers.
///
/// Layer nodes come from a closed form: inside the quadrant of `end - start`
/// the ring `R_i` is the lattice segment `(i - r, r)`, `r = 0..=i`, and `w_i`
/// sits on the same line at `r* = i·|Δy|/d`, so the closest nodes are the
/// rounding(s) of `r*`. Nodes on other faces of the rhombus are never closer
/// because the rhombus has right angles at the shared corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    start: LatticePoint,
    sx: i64,
    sy: i64,
    dy: u64,
    len: u64,
}

impl Segment {
    pub fn new(start: LatticePoint, end: LatticePoint) -> Self {
        let delta = end - start;
        Segment {
            start,
            sx: delta.x.signum(),
            sy: delta.y.signum(),
            dy: delta.y.unsigned_abs(),
            len: start.l1_to(end),
        }
    }

    pub fn start(&self) -> LatticePoint {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn end(&self) -> LatticePoint {
        self.node(self.len, self.dy)
    }

    fn node(&self, i: u64, r: u64) -> LatticePoint {
        self.start + LatticePoint::new(self.sx * (i - r) as i64, self.sy * r as i64)
    }

    /// Closest node(s) of `R_i(start)` to `w_i`, for `0 ≤ i ≤ len`.
    pub fn layer(&self, i: u64) -> Layer {
        debug_assert!(i <= self.len);
        if self.len == 0 {
            return Layer { first: self.start, second: None };
        }
        let num = i as u128 * self.dy as u128;
        let d = self.len as u128;
        let (q, rem) = ((num / d) as u64, num % d);
        match (2 * rem).cmp(&d) {
            std::cmp::Ordering::Less => Layer { first: self.node(i, q), second: None },
            std::cmp::Ordering::Greater => Layer { first: self.node(i, q + 1), second: None },
            std::cmp::Ordering::Equal => Layer {
                first: self.node(i, q),
                second: Some(self.node(i, q + 1)),
            },
        }
    }

    /// If `p` lies on some direct-path of this segment, its layer index and
    /// whether that layer is a tie.
    pub fn locate(&self, p: LatticePoint) -> Option<(u64, bool)> {
        let i = self.start.l1_to(p);
        if i > self.len {
            return None;
        }
        let layer = self.layer(i);
        layer.contains(p).then_some((i, layer.is_tie()))
    }
}

/// `d² · ‖c - w_i‖₂²` for the segment point `w_i`, in exact integers.
fn scaled_sq_distance(u: LatticePoint, v: LatticePoint, i: u64, c: LatticePoint) -> i128 {
    let d = u.l1_to(v) as i128;
    let (dx, dy) = ((v.x - u.x) as i128, (v.y - u.y) as i128);
    let (cx, cy) = ((c.x - u.x) as i128, (c.y - u.y) as i128);
    let ex = d * cx - i as i128 * dx;
    let ey = d * cy - i as i128 * dy;
    ex * ex + ey * ey
}

/// Closest node(s) of `R_i(u)` to `w_i` (closed form, O(1)).
pub fn minimizer_set(u: LatticePoint, v: LatticePoint, i: u64) -> Layer {
    Segment::new(u, v).layer(i)
}

/// Same set as [`minimizer_set`] by scanning all of `R_i(u)` with exact
/// integer distances. Ring order.
pub fn minimizers_by_scan(u: LatticePoint, v: LatticePoint, i: u64) -> Vec<LatticePoint> {
    let nodes = ring(u, i);
    let dists: Vec<i128> = nodes.iter().map(|&c| scaled_sq_distance(u, v, i, c)).collect();
    let best = *dists.iter().min().expect("non-empty ring");
    nodes
        .into_iter()
        .zip(dists)
        .filter_map(|(c, dist)| (dist == best).then_some(c))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectPath {
    nodes: Vec<LatticePoint>,
}

impl DirectPath {
    pub fn from_nodes(nodes: Vec<LatticePoint>) -> Self {
        assert!(!nodes.is_empty(), "a path has at least one node");
        DirectPath { nodes }
    }

    pub fn nodes(&self) -> &[LatticePoint] {
        &self.nodes
    }

    pub fn start(&self) -> LatticePoint {
        self.nodes[0]
    }

    pub fn end(&self) -> LatticePoint {
        *self.nodes.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    /// Checks every direct-path condition by exhaustive scan.
    pub fn is_direct(&self) -> bool {
        let (u, v) = (self.start(), self.end());
        let d = u.l1_to(v) as usize;
        if self.nodes.len() != d + 1 {
            return false;
        }
        self.nodes.windows(2).all(|w| w[0].is_adjacent(w[1]))
            && self.nodes.iter().enumerate().all(|(i, &p)| {
                u.l1_to(p) == i as u64 && (i == 0 || i == d || minimizers_by_scan(u, v, i as u64).contains(&p))
            })
    }
}

/// Every direct-path from `u` to `v`, built from exhaustive minimizer scans.
/// Oracle use only (`‖v - u‖₁ ≤ 24`).
pub fn enumerate_direct_paths(u: LatticePoint, v: LatticePoint) -> Result<Vec<DirectPath>> {
    let d = u.l1_to(v);
    if d > ENUMERATION_LIMIT {
        return Err(Error::Oracle(format!(
            "enumeration refused: distance {d} exceeds {ENUMERATION_LIMIT}"
        )));
    }
    let layers: Vec<Vec<LatticePoint>> = (0..=d)
        .map(|i| match i {
            0 => vec![u],
            i if i == d => vec![v],
            i => minimizers_by_scan(u, v, i),
        })
        .collect();

    let mut out = Vec::new();
    let mut stack = vec![u];
    fn extend(layers: &[Vec<LatticePoint>], stack: &mut Vec<LatticePoint>, out: &mut Vec<DirectPath>) {
        let i = stack.len();
        if i == layers.len() {
            out.push(DirectPath::from_nodes(stack.clone()));
            return;
        }
        let prev = *stack.last().unwrap();
        for &p in &layers[i] {
            if prev.is_adjacent(p) {
                stack.push(p);
                extend(layers, stack, out);
                stack.pop();
            }
        }
    }
    extend(&layers, &mut stack, &mut out);
    if out.is_empty() {
        return Err(Error::Oracle(format!("no direct-path from {u} to {v}")));
    }
    Ok(out)
}

/// Uniform direct-path from `u` to `v`.
///
/// Counts completions backwards over the DAG of layer nodes (edges are lattice
/// adjacencies), then walks forwards choosing each successor with probability
/// proportional to its completion count. Counts are kept as per-layer ratios
/// so long segments cannot overflow.
pub fn sample_direct_path<R: Rng + ?Sized>(u: LatticePoint, v: LatticePoint, rng: &mut R) -> DirectPath {
    let seg = Segment::new(u, v);
    let d = seg.len() as usize;
    let layers: Vec<Layer> = (0..=d as u64).map(|i| seg.layer(i)).collect();

    // weights[i][k]: completions from the k-th node of layer i, normalised.
    let mut weights = vec![[0.0f64; 2]; d + 1];
    weights[d] = [1.0, 0.0];
    for i in (0..d).rev() {
        let next = layers[i + 1].to_vec();
        for (k, &p) in layers[i].to_vec().iter().enumerate() {
            weights[i][k] = next
                .iter()
                .enumerate()
                .filter(|(_, q)| p.is_adjacent(**q))
                .map(|(m, _)| weights[i + 1][m])
                .sum();
        }
        let total = weights[i][0] + weights[i][1];
        weights[i][0] /= total;
        weights[i][1] /= total;
    }

    let mut nodes = Vec::with_capacity(d + 1);
    nodes.push(u);
    for i in 1..=d {
        let prev = *nodes.last().unwrap();
        let cand: Vec<(LatticePoint, f64)> = layers[i]
            .to_vec()
            .into_iter()
            .enumerate()
            .filter(|(_, q)| prev.is_adjacent(*q))
            .map(|(m, q)| (q, weights[i][m]))
            .collect();
        let next = match cand.as_slice() {
            [(only, _)] => *only,
            [(a, wa), (b, wb)] => {
                if rng.random::<f64>() * (wa + wb) < *wa {
                    *a
                } else {
                    *b
                }
            }
            _ => unreachable!("direct-path layer {i} of {u}->{v} has no successor"),
        };
        nodes.push(next);
    }
    DirectPath::from_nodes(nodes)
}

/// `P(u_i = w)` for `w ∈ R_i(u)` when `v` is uniform on `R_d(u)` and the
/// path is a uniform direct-path, computed by full path enumeration in exact
/// rational arithmetic. Keys are offsets `w - u`.
pub fn intermediate_distribution(u: LatticePoint, d: u64, i: u64) -> Result<BTreeMap<LatticePoint, BigRational>> {
    if !(1 <= i && i < d) {
        return domain(format!("need 1 <= i < d, got i = {i}, d = {d}"));
    }
    if d > ENUMERATION_LIMIT {
        return domain(format!("d = {d} exceeds the enumeration limit {ENUMERATION_LIMIT}"));
    }
    let mut dist: BTreeMap<LatticePoint, BigRational> =
        ring(LatticePoint::ORIGIN, i).into_iter().map(|w| (w, BigRational::zero())).collect();
    let ring_weight = BigRational::new(BigInt::one(), BigInt::from(4 * d));
    for v in ring(u, d) {
        let paths = enumerate_direct_paths(u, v)?;
        let share = &ring_weight / BigInt::from(paths.len());
        for p in &paths {
            let w = p.nodes()[i as usize] - u;
            *dist.get_mut(&w).expect("layer node lies on R_i") += &share;
        }
    }
    Ok(dist)
}

/// Same probability as [`intermediate_distribution`] for a single offset `w`
/// (with `‖w‖₁ = i`), from the closed-form layers: each destination puts
/// weight 1 on its unique layer node, or 1/2 on each member of a tie.
/// Returns the exact fraction `(numerator, denominator)`.
pub fn intermediate_probability(d: u64, i: u64, w: LatticePoint) -> (u64, u64) {
    debug_assert!(1 <= i && i <= d && w.l1() == i);
    let halves: u64 = (0..4 * d)
        .map(|j| {
            let layer = Segment::new(LatticePoint::ORIGIN, ring_node(LatticePoint::ORIGIN, d, j)).layer(i);
            match (layer.first == w, layer.second == Some(w), layer.is_tie()) {
                (true, _, false) => 2,
                (true, _, true) | (_, true, _) => 1,
                _ => 0,
            }
        })
        .sum();
    (halves, 8 * d)
}

/// Exact bounds `(i/d)·⌊d/i⌋/(4i)` and `(i/d)·⌈d/i⌉/(4i)` on `P(u_i = w)`.
pub fn intermediate_bounds(d: u64, i: u64) -> (BigRational, BigRational) {
    let den = BigInt::from(4 * i * d);
    let lo = BigRational::new(BigInt::from(i * (d / i)), den.clone());
    let hi = BigRational::new(BigInt::from(i * d.div_ceil(i)), den);
    (lo, hi)
}

/// Writes `d,i,w_x,w_y,p_num,p_den` rows (fractions reduced).
pub fn write_intermediate_csv<W: Write>(
    mut out: W,
    rows: &[(u64, u64, BTreeMap<LatticePoint, BigRational>)],
) -> Result<()> {
    writeln!(out, "d,i,w_x,w_y,p_num,p_den")?;
    for (d, i, dist) in rows {
        for (w, p) in dist {
            writeln!(out, "{d},{i},{},{},{},{}", w.x, w.y, p.numer(), p.denom())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use std::collections::HashMap;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(ring(p(0, 0), 1), vec![p(1, 0), p(0, 1), p(-1, 0), p(0, -1)]);
        assert_eq!(ring(p(3, -2), 4).len(), 16);
        assert_eq!(ring(p(3, -2), 0), vec![p(3, -2)]);
    }

    #[test]
    fn set_sizes_by_enumeration() {
        let u = p(5, -7);
        for d in 0..=50u64 {
            let r = ring(u, d);
            assert_eq!(r.len() as u64, ring_len(d));
            let distinct: std::collections::HashSet<_> = r.iter().collect();
            assert_eq!(distinct.len(), r.len());
            assert!(r.iter().all(|&q| q.l1_to(u) == d));
            let b = ball(u, d);
            assert_eq!(b.len() as u64, 2 * d * d + 2 * d + 1);
            let q = square(u, d);
            assert_eq!(q.len() as u64, (2 * d + 1).pow(2));
            assert!(q.iter().all(|&z| z.linf_to(u) <= d));
        }
    }

    #[test]
    fn norm_relations() {
        for (x, y) in [(0, 0), (3, -4), (-7, 7), (10, 0)] {
            let q = p(x, y);
            assert!(q.linf() <= q.l1() && q.l1() <= 2 * q.linf());
        }
    }

    #[test]
    fn ring_sampling_is_uniform() {
        let mut rng = stream(11, &[]);
        let mut counts = [0u32; 4];
        for _ in 0..1_000_000 {
            let q = sample_on_ring(p(0, 0), 1, &mut rng).unwrap();
            counts[ring(p(0, 0), 1).iter().position(|&r| r == q).unwrap()] += 1;
        }
        for c in counts {
            assert!((c as f64 / 1e6 - 0.25).abs() < 0.005);
        }
        let mut seen: HashMap<LatticePoint, u32> = HashMap::new();
        for _ in 0..1_000_000 {
            let q = sample_on_ring(p(2, 2), 3, &mut rng).unwrap();
            assert_eq!(q.l1_to(p(2, 2)), 3);
            *seen.entry(q).or_default() += 1;
        }
        assert_eq!(seen.len(), 12);
        assert!(seen.values().all(|&c| (c as f64 / 1e6 - 1.0 / 12.0).abs() < 0.003));
        assert!(sample_on_ring(p(0, 0), 0, &mut rng).is_err());
    }

    #[test]
    fn minimizer_examples() {
        assert_eq!(minimizer_set(p(0, 0), p(2, 1), 1).to_vec(), vec![p(1, 0)]);
        let tie = minimizer_set(p(0, 0), p(1, 1), 1);
        assert!(tie.is_tie());
        assert!(tie.contains(p(1, 0)) && tie.contains(p(0, 1)));
        assert_eq!(minimizer_set(p(0, 0), p(3, 0), 2).to_vec(), vec![p(2, 0)]);
    }

    #[test]
    fn closed_form_layers_match_exhaustive_scan() {
        let u = p(1, -2);
        for d in 1..=14u64 {
            for v in ring(u, d) {
                for i in 1..d {
                    let mut fast = minimizer_set(u, v, i).to_vec();
                    let mut slow = minimizers_by_scan(u, v, i);
                    fast.sort();
                    slow.sort();
                    assert_eq!(fast, slow, "u={u} v={v} i={i}");
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let paths = enumerate_direct_paths(p(0, 0), p(2, 1)).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].nodes(), &[p(0, 0), p(1, 0), p(1, 1), p(2, 1)]);
        assert_eq!(enumerate_direct_paths(p(0, 0), p(1, 1)).unwrap().len(), 2);
        let trivial = enumerate_direct_paths(p(4, 4), p(4, 4)).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_empty());
        assert!(enumerate_direct_paths(p(0, 0), p(20, 5)).is_err());
    }

    #[test]
    fn every_enumerated_path_is_a_shortest_direct_path() {
        for d in 1..=10u64 {
            for v in ring(p(0, 0), d) {
                for path in enumerate_direct_paths(p(0, 0), v).unwrap() {
                    assert!(path.is_direct());
                    let dists: Vec<u64> = path.nodes().iter().map(|q| q.l1()).collect();
                    assert!(dists.windows(2).all(|w| w[1] == w[0] + 1));
                }
            }
        }
    }

    #[test]
    fn sampled_paths_follow_enumeration_law() {
        let mut rng = stream(12, &[]);
        let mut counts: HashMap<DirectPath, u32> = HashMap::new();
        for _ in 0..100_000 {
            *counts.entry(sample_direct_path(p(0, 0), p(1, 1), &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 2);
        assert!(counts.values().all(|&c| (c as f64 / 1e5 - 0.5).abs() < 0.01));

        let only = enumerate_direct_paths(p(0, 0), p(2, 1)).unwrap().remove(0);
        for _ in 0..100 {
            assert_eq!(sample_direct_path(p(0, 0), p(2, 1), &mut rng), only);
        }
    }

    #[test]
    fn sampled_path_nodes_sit_on_rings() {
        let mut rng = stream(13, &[]);
        for _ in 0..200 {
            let v = sample_on_ring(p(0, 0), rng.random_range(1..40), &mut rng).unwrap();
            let path = sample_direct_path(p(0, 0), v, &mut rng);
            for (i, q) in path.nodes().iter().enumerate() {
                assert_eq!(q.l1(), i as u64);
            }
            assert_eq!(path.end(), v);
        }
    }

    #[test]
    fn intermediate_examples() {
        let quarter = BigRational::new(1.into(), 4.into());
        let d21 = intermediate_distribution(p(0, 0), 2, 1).unwrap();
        assert!(d21.values().all(|v| *v == quarter));
        let eighth = BigRational::new(1.into(), 8.into());
        let d42 = intermediate_distribution(p(0, 0), 4, 2).unwrap();
        assert!(d42.values().all(|v| *v == eighth));
        let (lo, hi) = intermediate_bounds(5, 3);
        for v in intermediate_distribution(p(0, 0), 5, 3).unwrap().values() {
            assert!(&lo <= v && v <= &hi);
        }
        assert!(intermediate_distribution(p(0, 0), 3, 3).is_err());
        assert!(intermediate_distribution(p(0, 0), 30, 3).is_err());
    }

    #[test]
    fn closed_form_intermediate_matches_enumeration() {
        for d in 2..=12u64 {
            for i in 1..d {
                let exact = intermediate_distribution(p(0, 0), d, i).unwrap();
                let mut total = BigRational::zero();
                for (w, prob) in &exact {
                    let (n, den) = intermediate_probability(d, i, *w);
                    assert_eq!(*prob, BigRational::new(n.into(), den.into()), "d={d} i={i} w={w}");
                    total += prob;
                }
                assert!(total.is_one());
            }
        }
    }

    #[test]
    fn csv_dump_layout() {
        let rows = vec![(2, 1, intermediate_distribution(p(0, 0), 2, 1).unwrap())];
        let mut buf = Vec::new();
        write_intermediate_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("d,i,w_x,w_y,p_num,p_den"));
        assert_eq!(lines.count(), 4);
        assert!(text.contains("2,1,1,0,1,4"));
    }
}

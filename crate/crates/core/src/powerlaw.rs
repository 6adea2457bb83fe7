//! Integer power-law jump lengths.
//!
//! The law puts mass `1/2` on `d = 0` and `c_α / i^α` on every `i ≥ 1`, so
//! `c_α = 1 / (2 ζ(α))`. ζ(α) is never taken from a special-function library:
//! it is a compensated partial sum plus a rigorous bracket on the remainder
//! obtained from the integral test. All tail probabilities carry such a
//! bracket; the reported value is its midpoint.

use rand::Rng;

use crate::error::{domain, Result};

/// Smallest accepted exponent (`1 + ε` with `ε = 0.01`).
pub const ALPHA_FLOOR: f64 = 1.01;
/// Number of tabulated tail entries used for inversion sampling.
pub const TABLE_HORIZON: usize = 1 << 16;
/// Partial-sum horizon used when the short horizon is not tight enough.
pub const ZETA_HORIZON: usize = 1_000_000;
/// Sampled jump lengths never exceed this value.
pub const MAX_JUMP: u64 = 1 << 53;

const BRACKET_TARGET: f64 = 1e-13;

/// A closed interval `[lo, hi]` known to contain an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted bracket [{lo}, {hi}]");
        Bracket { lo, hi }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Bracket) -> Bracket {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        // Both are rigorous; rounding may cross them by an ulp.
        if lo <= hi {
            Bracket::new(lo, hi)
        } else {
            Bracket::new(hi, lo)
        }
    }

    pub fn scale(&self, c: f64) -> Bracket {
        Bracket::new(self.lo * c, self.hi * c)
    }

    pub fn shift(&self, c: f64) -> Bracket {
        Bracket::new(self.lo + c, self.hi + c)
    }
}

/// Integral-test bracket of `Σ_{k ≥ n} k^{-s}` for `s > 1`, `n ≥ 1`:
/// `n^{1-s}/(s-1) ≤ Σ ≤ n^{1-s}/(s-1) + n^{-s}`.
pub fn integral_test_tail(s: f64, n: u64) -> Bracket {
    let n = n as f64;
    let lo = n.powf(1.0 - s) / (s - 1.0);
    Bracket::new(lo, lo + n.powf(-s))
}

/// Tighter bracket of the same remainder from convexity of `x^{-s}`: the
/// trapezoid rule overestimates each unit integral and the midpoint rule
/// underestimates it, giving
/// `∫_n^∞ + n^{-s}/2 ≤ Σ_{k≥n} k^{-s} ≤ ∫_{n-1/2}^∞`.
pub fn convex_tail(s: f64, n: u64) -> Bracket {
    let nf = n as f64;
    let lo = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    let hi = (nf - 0.5).powf(1.0 - s) / (s - 1.0);
    Bracket::new(lo.min(hi), hi.max(lo))
}

/// Best available bracket of `Σ_{k ≥ n} k^{-s}`.
pub fn power_tail(s: f64, n: u64) -> Bracket {
    integral_test_tail(s, n).intersect(&convex_tail(s, n))
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Exact jump-length law with exponent `alpha` and an optional inclusive cap.
///
/// With a cap `L` the law is the unconditional one restricted to `{0..L}` and
/// renormalised, i.e. the law of `d` conditioned on `d ≤ L`.
#[derive(Debug, Clone)]
pub struct JumpLaw {
    alpha: f64,
    cap: Option<u64>,
    c_alpha: f64,
    zeta: Bracket,
    partial_horizon: usize,
    partial_sum: f64,
    /// `tail_table[i]` is the unconditional `P(d ≥ i)` for `i ∈ 0..=H+1`.
    tail_table: Vec<f64>,
    /// Bracket width (in probability) of every entry of `tail_table`.
    table_width: f64,
    /// Unconditional `P(d > cap)`; zero without a cap.
    excluded: f64,
}

impl JumpLaw {
    pub fn new(alpha: f64, cap: Option<u64>) -> Result<Self> {
        Self::with_floor(alpha, cap, ALPHA_FLOOR)
    }

    pub fn uncapped(alpha: f64) -> Result<Self> {
        Self::new(alpha, None)
    }

    /// As [`JumpLaw::new`] with a caller-chosen `1 + ε` floor (never below 1).
    pub fn with_floor(alpha: f64, cap: Option<u64>, floor: f64) -> Result<Self> {
        if !alpha.is_finite() || !(alpha >= floor) || floor <= 1.0 {
            return domain(format!("alpha = {alpha} is below the floor {floor}"));
        }
        if cap == Some(0) {
            return domain("cap must be at least 1");
        }

        let table_len = TABLE_HORIZON.min(cap.map_or(usize::MAX, |c| c as usize));
        let short = power_tail(alpha, (TABLE_HORIZON + 1) as u64);
        let partial_horizon = if short.width() <= BRACKET_TARGET {
            TABLE_HORIZON + 1
        } else {
            ZETA_HORIZON
        };
        let remainder = power_tail(alpha, partial_horizon as u64);

        // Backward summation: every suffix sum is accurate in relative terms.
        let mut suffix = vec![0.0; table_len + 2];
        let mut acc = CompensatedSum::default();
        for k in (1..partial_horizon).rev() {
            acc.add((k as f64).powf(-alpha));
            if k <= table_len + 1 {
                suffix[k] = acc.value();
            }
        }
        let partial_sum = acc.value();
        let zeta = remainder.shift(partial_sum);
        let c_alpha = 0.5 / zeta.mid();

        let rem_mid = remainder.mid();
        let mut tail_table = Vec::with_capacity(table_len + 2);
        tail_table.push(1.0);
        tail_table.push(0.5);
        for &s in &suffix[2..] {
            tail_table.push(c_alpha * (s + rem_mid));
        }
        let table_width = c_alpha * remainder.width() + 2.0 * zeta.width() * c_alpha * c_alpha;

        let mut law = JumpLaw {
            alpha,
            cap,
            c_alpha,
            zeta,
            partial_horizon,
            partial_sum,
            tail_table,
            table_width,
            excluded: 0.0,
        };
        if let Some(c) = cap {
            law.excluded = law.unconditional_tail(c + 1);
        }
        Ok(law)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cap(&self) -> Option<u64> {
        self.cap
    }

    /// The unconditional normalising constant `c_α = 1/(2ζ(α))`.
    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }

    /// Bracket of `ζ(α)`.
    pub fn zeta_bracket(&self) -> Bracket {
        self.zeta
    }

    /// Bracket of `c_α`.
    pub fn c_alpha_bracket(&self) -> Bracket {
        Bracket::new(0.5 / self.zeta.hi, 0.5 / self.zeta.lo)
    }

    /// Total mass `1/2 + c_α Σ_{i≥1} i^{-α}` bracketed with the plain
    /// integral test at the partial-sum horizon.
    pub fn mass_bracket(&self) -> Bracket {
        integral_test_tail(self.alpha, self.partial_horizon as u64)
            .shift(self.partial_sum)
            .scale(self.c_alpha)
            .shift(0.5)
    }

    /// Number of tabulated tail entries beyond `d = 0`.
    pub fn table_horizon(&self) -> usize {
        self.tail_table.len() - 2
    }

    /// `P(d ≤ cap)` under the unconditional law (1 without a cap).
    pub fn cap_mass(&self) -> f64 {
        1.0 - self.excluded
    }

    pub fn pmf(&self, i: u64) -> f64 {
        if self.cap.is_some_and(|c| i > c) {
            return 0.0;
        }
        let raw = if i == 0 {
            0.5
        } else {
            self.c_alpha * (i as f64).powf(-self.alpha)
        };
        raw / self.cap_mass()
    }

    /// `P(d ≥ i)`.
    pub fn tail(&self, i: u64) -> f64 {
        self.tail_bracket(i).mid()
    }

    /// Bracket of `P(d ≥ i)`.
    pub fn tail_bracket(&self, i: u64) -> Bracket {
        if let Some(c) = self.cap {
            if i > c {
                return Bracket::new(0.0, 0.0);
            }
        }
        let t = self.unconditional_tail_bracket(i);
        if self.cap.is_none() {
            return t;
        }
        let mass = self.cap_mass();
        Bracket::new(
            ((t.lo - self.excluded) / mass).max(0.0),
            ((t.hi - self.excluded) / mass).min(1.0),
        )
    }

    fn unconditional_tail(&self, i: u64) -> f64 {
        self.unconditional_tail_bracket(i).mid()
    }

    fn unconditional_tail_bracket(&self, i: u64) -> Bracket {
        if i <= 1 {
            let v = if i == 0 { 1.0 } else { 0.5 };
            return Bracket::new(v, v);
        }
        if let Some(&v) = self.tail_table.get(i as usize) {
            return Bracket::new(v - 0.5 * self.table_width, v + 0.5 * self.table_width);
        }
        let mut b = power_tail(self.alpha, i);
        if b.width() > BRACKET_TARGET && (i as usize) < self.partial_horizon {
            let mut acc = CompensatedSum::default();
            for k in (i as usize..self.partial_horizon).rev() {
                acc.add((k as f64).powf(-self.alpha));
            }
            b = power_tail(self.alpha, self.partial_horizon as u64).shift(acc.value());
        }
        b.scale(self.c_alpha)
    }

    /// Draws one jump length.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        // Target value of the unconditional tail in (excluded, 1].
        let x = 1.0 - rng.random::<f64>();
        let v = self.excluded + x * (1.0 - self.excluded);
        if v > 0.5 {
            return 0;
        }
        let table = &self.tail_table;
        let last = table.len() - 1;
        if table[last] >= v {
            // The table ends at the cap.
            if self.cap.is_some_and(|c| c as usize <= last) {
                return self.cap.unwrap();
            }
            return self.sample_beyond(last as u64, rng);
        }
        // Largest i with table[i] ≥ v; table[1] = 0.5 ≥ v here.
        let mut i = 1;
        while i < 8 {
            if table[i + 1] < v {
                return i as u64;
            }
            i += 1;
        }
        let (mut lo, mut hi) = (i, last);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if table[mid] >= v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo as u64
    }

    /// Samples `d` conditioned on `first ≤ d ≤ upper` by rejection against a
    /// continuous envelope on `[first - 1/2, upper + 1/2)`.
    fn sample_beyond<R: Rng + ?Sized>(&self, first: u64, rng: &mut R) -> u64 {
        let upper = self.cap.unwrap_or(MAX_JUMP).min(MAX_JUMP);
        let a1 = 1.0 - self.alpha;
        let lo_pow = (first as f64 - 0.5).powf(a1);
        let hi_pow = (upper as f64 + 0.5).powf(a1);
        loop {
            let u: f64 = rng.random();
            let x = (lo_pow - u * (lo_pow - hi_pow)).powf(1.0 / a1);
            let d = (x + 0.5).floor().clamp(first as f64, upper as f64) as u64;
            let df = d as f64;
            // f(d) / ∫_{d-1/2}^{d+1/2} f, which is ≤ 1 by convexity.
            let cell = -(df - 0.5).powf(a1) * (a1 * (1.0 / (df - 0.5)).ln_1p()).exp_m1() / (self.alpha - 1.0);
            let accept = df.powf(-self.alpha) / cell;
            if rng.random::<f64>() < accept {
                return d;
            }
        }
    }
}

//! Certified bounds on the topological entropy of piecewise-linear maps.
//!
//! Three surrogates are combined:
//!
//! * lap growth: `(1/n) log ℓ(f^n)` is an upper bound for every `n`, since lap
//!   numbers are submultiplicative;
//! * Markov partitions: when breakpoints and their images close up under
//!   `f`, the entropy is the log of the Perron root of the covering matrix;
//! * horseshoes: an `n`-horseshoe forces entropy at least `log n`.
//!
//! All logarithms are natural.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::plmap::{PlMap, DEFAULT_BREAKPOINT_CAP};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lap,
    Markov,
    Horseshoe,
}

/// Knobs shared by the entropy routines.
#[derive(Clone, Debug)]
pub struct EntropyConfig {
    /// Largest iterate (in breakpoints) the lap trace may build.
    pub breakpoint_cap: usize,
    /// Closure rounds allowed when looking for a Markov partition.
    pub markov_rounds: usize,
    /// Largest Markov partition (in cut points) accepted.
    pub markov_max_cuts: usize,
    /// Horseshoes are searched on `f, f^2, ..., f^k`.
    pub horseshoe_iterates: usize,
    /// Power-iteration budget per strongly connected component.
    pub max_power_iterations: usize,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        EntropyConfig {
            breakpoint_cap: DEFAULT_BREAKPOINT_CAP,
            markov_rounds: 3,
            markov_max_cuts: 10_000,
            horseshoe_iterates: 2,
            max_power_iterations: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

/// A maximal interval of monotonicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lap {
    pub lo: Rational,
    pub hi: Rational,
    pub image_lo: Rational,
    pub image_hi: Rational,
    pub direction: Direction,
}

/// Splits the domain into the fewest monotone pieces. Constant segments are
/// absorbed into the lap they follow; a map that is constant everywhere has
/// a single constant lap.
pub fn laps(f: &PlMap) -> Vec<Lap> {
    let mut out: Vec<Lap> = Vec::new();
    for (a, b) in f.segments() {
        let dir = match a.y.cmp(&b.y) {
            std::cmp::Ordering::Less => Direction::Increasing,
            std::cmp::Ordering::Greater => Direction::Decreasing,
            std::cmp::Ordering::Equal => Direction::Constant,
        };
        let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
        match out.last_mut() {
            Some(lap) if lap.direction == dir || dir == Direction::Constant || lap.direction == Direction::Constant => {
                if lap.direction == Direction::Constant {
                    lap.direction = dir;
                }
                lap.hi = b.x.clone();
                if *ylo < lap.image_lo {
                    lap.image_lo = ylo.clone();
                }
                if *yhi > lap.image_hi {
                    lap.image_hi = yhi.clone();
                }
            }
            _ => out.push(Lap {
                lo: a.x.clone(),
                hi: b.x.clone(),
                image_lo: ylo.clone(),
                image_hi: yhi.clone(),
                direction: dir,
            }),
        }
    }
    out
}

/// Number of maximal monotone pieces.
pub fn lap_number(f: &PlMap) -> usize {
    let mut count = 1;
    let mut current = None;
    for (a, b) in f.segments() {
        let up = match a.y.cmp(&b.y) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => continue,
        };
        match current {
            Some(c) if c != up => {
                count += 1;
                current = Some(up);
            }
            None => current = Some(up),
            _ => {}
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub n: usize,
    pub laps: u64,
    /// `(1/n) log ℓ(f^n)`
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HorseshoeBound {
    /// The horseshoe was found on `f^iterate`.
    pub iterate: usize,
    pub size: usize,
    /// `log(size) / iterate`
    pub value: f64,
}

/// Entropy bracket in nats with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub lower: f64,
    pub upper: f64,
    pub methods: Vec<Method>,
    pub trace: Vec<TracePoint>,
    /// Iterate at which the breakpoint cap stopped the lap trace.
    pub truncated_at: Option<usize>,
    pub markov: Option<f64>,
    pub horseshoe: Option<HorseshoeBound>,
}

impl EntropyEstimate {
    pub fn is_truncated(&self) -> bool {
        self.truncated_at.is_some()
    }
}

fn require_unit(f: &PlMap) -> Result<()> {
    if f.is_unit_map() {
        Ok(())
    } else {
        Err(Error::Domain("expected a self-map of [0, 1]".into()))
    }
}

/// Lap trace for `n = 1..=n_max`, stopping early at the breakpoint cap.
pub fn entropy_upper_lap(f: &PlMap, n_max: usize) -> Result<EntropyEstimate> {
    entropy_upper_lap_with(f, n_max, &EntropyConfig::default())
}

pub fn entropy_upper_lap_with(f: &PlMap, n_max: usize, cfg: &EntropyConfig) -> Result<EntropyEstimate> {
    require_unit(f)?;
    if n_max == 0 {
        return Err(Error::Parameter("n_max must be at least 1".into()));
    }
    let mut trace = Vec::with_capacity(n_max);
    let mut truncated_at = None;
    let mut power = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            match f.compose_with_cap(&power, cfg.breakpoint_cap) {
                Ok(next) => power = next,
                Err(Error::ResourceLimit { .. }) => {
                    truncated_at = Some(n);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let laps = lap_number(&power) as u64;
        trace.push(TracePoint {
            n,
            laps,
            value: (laps as f64).ln() / n as f64,
        });
    }
    let upper = trace.iter().map(|t| t.value).fold(f64::INFINITY, f64::min);
    Ok(EntropyEstimate {
        lower: 0.0,
        upper,
        methods: vec![Method::Lap],
        trace,
        truncated_at,
        markov: None,
        horseshoe: None,
    })
}

/// A Markov partition of a map and its covering matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovData {
    pub cuts: Vec<Rational>,
    /// `covers[i] = (a, b)`: cell `i` maps onto cells `a..b` (empty when `f`
    /// is constant on cell `i`). `f` is linear on each cell, so each row of
    /// the 0/1 matrix is one contiguous run.
    pub covers: Vec<(usize, usize)>,
}

impl MarkovData {
    pub fn cells(&self) -> usize {
        self.covers.len()
    }

    /// The dense transition matrix `A[i][j]`.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let n = self.cells();
        self.covers
            .iter()
            .map(|&(a, b)| (0..n).map(|j| u64::from(j >= a && j < b)).collect())
            .collect()
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, u64)>> {
        self.covers
            .iter()
            .map(|&(a, b)| (a..b).map(|j| (j, 1)).collect())
            .collect()
    }
}

pub fn markov_data(f: &PlMap) -> Option<MarkovData> {
    markov_data_with(f, &EntropyConfig::default())
}

pub fn markov_data_with(f: &PlMap, cfg: &EntropyConfig) -> Option<MarkovData> {
    if !f.is_unit_map() {
        return None;
    }
    let mut cuts: BTreeSet<Rational> = f.points().iter().flat_map(|p| [p.x.clone(), p.y.clone()]).collect();
    let mut closed = false;
    for _ in 0..=cfg.markov_rounds {
        let images: Vec<Rational> = cuts
            .iter()
            .map(|c| f.eval_unchecked(c))
            .filter(|y| !cuts.contains(y))
            .collect();
        if images.is_empty() {
            closed = true;
            break;
        }
        cuts.extend(images);
        if cuts.len() > cfg.markov_max_cuts {
            return None;
        }
    }
    if !closed {
        return None;
    }
    let cuts: Vec<Rational> = cuts.into_iter().collect();
    let index = |y: &Rational| cuts.binary_search(y).expect("closed under f");
    let covers = cuts
        .windows(2)
        .map(|w| {
            let (ya, yb) = (index(&f.eval_unchecked(&w[0])), index(&f.eval_unchecked(&w[1])));
            (ya.min(yb), ya.max(yb))
        })
        .collect();
    Some(MarkovData { cuts, covers })
}

/// Collatz–Wielandt bracket `[lower, upper]` on the Perron root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerronRoot {
    pub lower: f64,
    pub upper: f64,
}

impl PerronRoot {
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Perron root of a square nonnegative integer matrix.
pub fn spectral_radius(matrix: &[Vec<u64>], tol: f64) -> Result<PerronRoot> {
    let n = matrix.len();
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(Error::Shape(format!("row of length {} in a {n}-row matrix", row.len())));
    }
    let rows: Vec<Vec<(usize, u64)>> = matrix
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &w)| w > 0).map(|(j, &w)| (j, w)).collect())
        .collect();
    perron_root_sparse(&rows, tol, EntropyConfig::default().max_power_iterations)
}

/// Works component by component: the spectral radius of a nonnegative matrix
/// is the largest over its strongly connected components, and each component
/// is irreducible, so shifted power iteration converges there.
fn perron_root_sparse(rows: &[Vec<(usize, u64)>], tol: f64, max_iter: usize) -> Result<PerronRoot> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let n = rows.len();
    if n == 0 {
        return Ok(PerronRoot { lower: 0.0, upper: 0.0 });
    }
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            graph.add_edge(nodes[i], nodes[j], ());
        }
    }
    let mut best = PerronRoot { lower: 0.0, upper: 0.0 };
    let mut local = vec![usize::MAX; n];
    for component in tarjan_scc(&graph) {
        let members: Vec<usize> = component.iter().map(|v| v.index()).collect();
        for (k, &i) in members.iter().enumerate() {
            local[i] = k;
        }
        let sub: Vec<Vec<(usize, f64)>> = members
            .iter()
            .map(|&i| {
                rows[i]
                    .iter()
                    .filter(|(j, _)| local[*j] != usize::MAX)
                    .map(|&(j, w)| (local[j], w as f64))
                    .collect()
            })
            .collect();
        let root = irreducible_root(&sub, tol, max_iter);
        best.lower = best.lower.max(root.lower);
        best.upper = best.upper.max(root.upper);
        for &i in &members {
            local[i] = usize::MAX;
        }
    }
    Ok(best)
}

fn irreducible_root(rows: &[Vec<(usize, f64)>], tol: f64, max_iter: usize) -> PerronRoot {
    let n = rows.len();
    if n == 1 {
        let w = rows[0].iter().map(|&(_, w)| w).sum::<f64>();
        return PerronRoot { lower: w, upper: w };
    }
    // Iterate with A + I, which is primitive whenever A is irreducible.
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut bracket = PerronRoot {
        lower: 0.0,
        upper: f64::INFINITY,
    };
    for _ in 0..max_iter {
        for (i, row) in rows.iter().enumerate() {
            y[i] = x[i] + row.iter().map(|&(j, w)| w * x[j]).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        bracket.lower = bracket.lower.max(lo - 1.0);
        bracket.upper = bracket.upper.min(hi - 1.0);
        if bracket.width() <= tol {
            break;
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
    }
    bracket
}

pub fn entropy_markov(f: &PlMap, tol: f64) -> Option<f64> {
    entropy_markov_with(f, tol, &EntropyConfig::default())
}

pub fn entropy_markov_with(f: &PlMap, tol: f64, cfg: &EntropyConfig) -> Option<f64> {
    let data = markov_data_with(f, cfg)?;
    let root = perron_root_sparse(&data.sparse_rows(), tol, cfg.max_power_iterations).ok()?;
    Some(root.value().max(1.0).ln())
}

/// A family of intervals with disjoint interiors each of which lies inside
/// `target`, and each of which is mapped onto a superset of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horseshoe {
    pub target: (Rational, Rational),
    pub intervals: Vec<(Rational, Rational)>,
}

impl Horseshoe {
    pub fn size(&self) -> usize {
        self.intervals.len()
    }

    /// Re-checks `J_i ⊆ f(J_j)` for every pair and disjointness of interiors
    /// from scratch, using exact interval images.
    pub fn verify(&self, f: &PlMap) -> bool {
        let mut sorted = self.intervals.clone();
        sorted.sort();
        if sorted.iter().any(|(a, b)| a >= b) || sorted.windows(2).any(|w| w[0].1 > w[1].0) {
            return false;
        }
        let images: Option<Vec<(Rational, Rational)>> = self
            .intervals
            .iter()
            .map(|(a, b)| f.extremum_data(a, b).ok().map(|e| (e.min, e.max)))
            .collect();
        let Some(images) = images else { return false };
        images
            .iter()
            .all(|(lo, hi)| self.intervals.iter().all(|(a, b)| lo <= a && b <= hi))
    }
}

/// Work budget (target pairs times laps) above which the horseshoe search
/// only tries lap image endpoints as target ends.
const HORSESHOE_BUDGET: usize = 10_000_000;

/// A lap together with the vertex indices it spans.
struct MonotoneBranch {
    lap: Lap,
    first: usize,
    last: usize,
}

/// Candidate horseshoes: for each target `[u, v]`, every lap whose image
/// covers `[u, v]` contributes the smallest subinterval it maps onto
/// `[u, v]`, provided that subinterval lies inside `[u, v]`. Target ends are
/// drawn from vertex ordinates and abscissas.
struct HorseshoeSearch<'a> {
    f: &'a PlMap,
    branches: Vec<MonotoneBranch>,
    lows: Vec<Rational>,
    highs: Vec<Rational>,
}

impl<'a> HorseshoeSearch<'a> {
    fn new(f: &'a PlMap) -> Self {
        let mut branches = Vec::new();
        let mut first = 0;
        for lap in laps(f) {
            let last = first + f.points()[first..].iter().position(|p| p.x == lap.hi).expect("lap end is a vertex");
            if lap.direction != Direction::Constant {
                branches.push(MonotoneBranch { lap, first, last });
            }
            first = last;
        }
        let mut lows: BTreeSet<Rational> = branches.iter().map(|b| b.lap.image_lo.clone()).collect();
        let mut highs: BTreeSet<Rational> = branches.iter().map(|b| b.lap.image_hi.clone()).collect();
        let xs = f.xs();
        if (lows.len() + xs.len()) * (highs.len() + xs.len()) * branches.len() <= HORSESHOE_BUDGET {
            lows.extend(xs.iter().cloned());
            highs.extend(xs);
        }
        HorseshoeSearch {
            f,
            branches,
            lows: lows.into_iter().collect(),
            highs: highs.into_iter().collect(),
        }
    }

    /// Smallest subinterval of the branch mapped onto `[u, v]`, if it lies
    /// inside `[u, v]`.
    fn piece(&self, b: &MonotoneBranch, u: &Rational, v: &Rational) -> Option<(Rational, Rational)> {
        let lap = &b.lap;
        if lap.image_lo > *u || lap.image_hi < *v || lap.hi <= *u || lap.lo >= *v {
            return None;
        }
        if lap.lo >= *u && lap.hi <= *v {
            return Some(self.preimage(b, u, v));
        }
        let (lo, hi) = self.preimage(b, u, v);
        (lo >= *u && hi <= *v).then_some((lo, hi))
    }

    fn preimage(&self, b: &MonotoneBranch, u: &Rational, v: &Rational) -> (Rational, Rational) {
        let pts = &self.f.points()[b.first..=b.last];
        let level_x = |i: usize, level: &Rational| -> Rational {
            let (p, q) = (&pts[i], &pts[i + 1]);
            if p.y == *level {
                return p.x.clone();
            }
            if q.y == *level {
                return q.x.clone();
            }
            &p.x + (level - &p.y) * (&q.x - &p.x) / (&q.y - &p.y)
        };
        // Walking left to right, the branch leaves one end level for the
        // last time and then reaches the other end level for the first time.
        let (leave, reach) = match b.lap.direction {
            Direction::Increasing => (u, v),
            _ => (v, u),
        };
        let passed = |y: &Rational, level: &Rational| match b.lap.direction {
            Direction::Increasing => y <= level,
            _ => y >= level,
        };
        let reached = |y: &Rational, level: &Rational| match b.lap.direction {
            Direction::Increasing => y >= level,
            _ => y <= level,
        };
        let k = pts.iter().rposition(|p| passed(&p.y, leave)).expect("image covers the target");
        let left = if k + 1 < pts.len() { level_x(k, leave) } else { pts[k].x.clone() };
        let j = k + pts[k..].iter().position(|p| reached(&p.y, reach)).expect("image covers the target");
        let right = if j == k { pts[j].x.clone() } else { level_x(j - 1, reach) };
        (left, right)
    }

    fn members(&self, u: &Rational, v: &Rational) -> Vec<(Rational, Rational)> {
        self.branches.iter().filter_map(|b| self.piece(b, u, v)).collect()
    }

    fn count(&self, candidates: &[&MonotoneBranch], u: &Rational, v: &Rational) -> usize {
        candidates
            .iter()
            .filter(|b| {
                let lap = &b.lap;
                lap.image_hi >= *v
                    && lap.lo < *v
                    && ((lap.lo >= *u && lap.hi <= *v) || self.piece(b, u, v).is_some())
            })
            .count()
    }

    /// First target in `(u, v)` order admitting at least `n` pieces, or the
    /// target with the most pieces when `n` is `None`.
    fn search(&self, n: Option<usize>) -> Option<Horseshoe> {
        let mut best: Option<(usize, &Rational, &Rational)> = None;
        // A target needs more pieces than this to be worth counting.
        let floor = |best: &Option<(usize, &Rational, &Rational)>| match n {
            Some(n) => n.saturating_sub(1).max(1),
            None => best.map_or(1, |(c, _, _)| c),
        };
        for u in &self.lows {
            let mut candidates: Vec<&MonotoneBranch> = self
                .branches
                .iter()
                .filter(|b| b.lap.image_lo <= *u && b.lap.hi > *u)
                .collect();
            if candidates.len() <= floor(&best) {
                continue;
            }
            // Sorted by image top, so the branches able to reach `v` form a
            // shrinking suffix as `v` grows.
            candidates.sort_by(|a, b| a.lap.image_hi.cmp(&b.lap.image_hi));
            let mut start = 0;
            for v in self.highs.iter().filter(|v| *v > u) {
                while start < candidates.len() && candidates[start].lap.image_hi < *v {
                    start += 1;
                }
                if candidates.len() - start <= floor(&best) {
                    break;
                }
                let count = self.count(&candidates[start..], u, v);
                if count < 2 {
                    continue;
                }
                match n {
                    Some(n) if count >= n => return Some(self.build(u, v, n)),
                    None if best.is_none_or(|(c, _, _)| count > c) => best = Some((count, u, v)),
                    _ => {}
                }
            }
        }
        match n {
            Some(_) => None,
            None => best.map(|(count, u, v)| self.build(u, v, count)),
        }
    }

    fn build(&self, u: &Rational, v: &Rational, n: usize) -> Horseshoe {
        let mut intervals = self.members(u, v);
        intervals.truncate(n);
        Horseshoe {
            target: (u.clone(), v.clone()),
            intervals,
        }
    }
}

/// An `n`-horseshoe found by the common-target strategy. `None` does not
/// prove that no `n`-horseshoe exists.
pub fn find_horseshoe(f: &PlMap, n: usize) -> Option<Horseshoe> {
    if n < 2 {
        return None;
    }
    HorseshoeSearch::new(f).search(Some(n))
}

/// The largest horseshoe the common-target strategy finds.
pub fn largest_horseshoe(f: &PlMap) -> Option<Horseshoe> {
    HorseshoeSearch::new(f).search(None)
}

/// `log n*` for the largest `n* <= n_cap` with a horseshoe, else 0.
pub fn entropy_lower_horseshoe(f: &PlMap, n_cap: usize) -> f64 {
    horseshoe_size(f, n_cap).map_or(0.0, |n| (n as f64).ln())
}

fn horseshoe_size(f: &PlMap, n_cap: usize) -> Option<usize> {
    if n_cap < 2 {
        return None;
    }
    largest_horseshoe(f).map(|h| h.size().min(n_cap))
}

/// Best horseshoe bound over `f, f^2, ..., f^k`: an `n`-horseshoe of `f^j`
/// gives `h(f) >= log(n) / j`.
pub fn horseshoe_bound_iterated(f: &PlMap, n_cap: usize, cfg: &EntropyConfig) -> Result<Option<HorseshoeBound>> {
    require_unit(f)?;
    let mut best: Option<HorseshoeBound> = None;
    let mut power = f.clone();
    for j in 1..=cfg.horseshoe_iterates.max(1) {
        if j > 1 {
            match f.compose_with_cap(&power, cfg.breakpoint_cap) {
                Ok(next) => power = next,
                Err(Error::ResourceLimit { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        if let Some(size) = horseshoe_size(&power, n_cap) {
            let value = (size as f64).ln() / j as f64;
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(HorseshoeBound { iterate: j, size, value });
            }
        }
    }
    Ok(best)
}

/// Slack allowed between independently computed bounds before they count as
/// contradictory (floating-point logs of exact integers).
const CONSISTENCY_SLACK: f64 = 1e-9;

pub fn entropy_estimate(f: &PlMap, n_max: usize, n_cap: usize, tol: f64) -> Result<EntropyEstimate> {
    entropy_estimate_with(f, n_max, n_cap, tol, &EntropyConfig::default())
}

pub fn entropy_estimate_with(
    f: &PlMap,
    n_max: usize,
    n_cap: usize,
    tol: f64,
    cfg: &EntropyConfig,
) -> Result<EntropyEstimate> {
    let mut est = entropy_upper_lap_with(f, n_max, cfg)?;
    est.markov = entropy_markov_with(f, tol, cfg);
    est.horseshoe = horseshoe_bound_iterated(f, n_cap, cfg)?;
    let mut lower = 0.0f64;
    if let Some(h) = &est.horseshoe {
        lower = lower.max(h.value);
        est.methods.push(Method::Horseshoe);
    }
    if let Some(m) = est.markov {
        lower = lower.max(m - tol);
        est.upper = est.upper.min(m + tol);
        est.methods.push(Method::Markov);
    }
    est.methods.sort();
    if lower > est.upper + CONSISTENCY_SLACK {
        return Err(Error::InternalConsistency(format!(
            "certified lower bound {lower} exceeds certified upper bound {}",
            est.upper
        )));
    }
    est.lower = lower.max(0.0).min(est.upper);
    Ok(est)
}

//! Reproductions of the worked examples and a seeded property suite over a
//! random corpus of maps, collected into a [`VerificationReport`].

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entropy::{
    entropy_estimate, entropy_markov_with, entropy_upper_lap_with, horseshoe_bound_iterated, largest_horseshoe,
    markov_data, EntropyConfig,
};
use crate::error::{Error, Result};
use crate::homotopy::{
    box_map, homotopy_h, homotopy_h1, homotopy_h2, homotopy_h_alpha, is_pmcp, monotone_envelope, BoxParams,
};
use crate::plmap::{affine_combine, make_broken_line, reflect_values, PlMap};
use crate::rational::{half, int, one, rat, zero, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Wall-clock time; kept out of serialized reports so they stay
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub corpus_size: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn fragment() -> Self {
        VerificationReport::default()
    }

    fn run(&mut self, name: &str, body: impl FnOnce() -> Result<(Status, String)>) {
        let start = Instant::now();
        let (status, detail) = body().unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail,
            elapsed: start.elapsed(),
        });
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} corpus {}", self.seed, self.corpus_size)?;
        for c in &self.checks {
            writeln!(f, "{} {}: {}", c.status, c.name, c.detail)?;
        }
        write!(
            f,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        )
    }
}

fn verdict(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

/// Largest iterate considered when bounding entropy from above by laps.
pub const LAP_HORIZON: usize = 12;
/// Slack granted to a lap or Markov bound of a derived map over the exact
/// entropy of its source.
pub const MONOTONICITY_SLACK: f64 = 0.05;
/// Pairs drawn for the envelope and contraction checks.
pub const ENVELOPE_PAIRS: usize = 500;
const MARKOV_TOL: f64 = 1e-9;

/// Breakpoint cap used by the suite; small enough to keep sweeps quick.
pub fn suite_config() -> EntropyConfig {
    EntropyConfig {
        breakpoint_cap: 20_000,
        ..EntropyConfig::default()
    }
}

fn line(pts: &[(i64, i64, i64, i64)]) -> PlMap {
    make_broken_line(pts.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d))).collect()).expect("valid literal map")
}

pub fn tent() -> PlMap {
    line(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)])
}

/// The pair `f, g` whose periods are only 1 and 2 but whose midpoint
/// combination has a 3-cycle.
pub fn convexity_pair() -> (PlMap, PlMap) {
    (
        line(&[(0, 1, 1, 1), (1, 4, 0, 1), (1, 1, 0, 1)]),
        line(&[(0, 1, 1, 2), (1, 4, 0, 1), (1, 2, 0, 1), (3, 4, 1, 2), (1, 1, 1, 2)]),
    )
}

/// The broken line through `(0, 1/n)`, `(x0, x0)` and `(1, 1 - 1/n)`.
pub fn fixed_point_line(x0: &Rational, n: u64) -> Result<PlMap> {
    let eps = Rational::new(1.into(), n.into());
    make_broken_line(vec![(zero(), eps.clone()), (x0.clone(), x0.clone()), (one(), one() - eps)])
}

fn random_rational(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let d = rng.random_range(1..=max_den);
    rat(rng.random_range(0..=d), d)
}

/// Interior abscissas: `count` distinct rationals in `(0, 1)`.
fn random_abscissas(rng: &mut ChaCha8Rng, count: usize, max_den: i64) -> Vec<Rational> {
    let mut xs = std::collections::BTreeSet::new();
    while xs.len() < count {
        let x = random_rational(rng, max_den);
        if x.is_positive() && x < one() {
            xs.insert(x);
        }
    }
    xs.into_iter().collect()
}

/// A random map with 3 to 12 breakpoints and denominators at most 64.
pub fn random_map(rng: &mut ChaCha8Rng) -> PlMap {
    let k = rng.random_range(3..=12usize);
    let mut xs = vec![zero()];
    xs.extend(random_abscissas(rng, k - 2, 64));
    xs.push(one());
    let pts = xs.into_iter().map(|x| (x, random_rational(rng, 64))).collect();
    make_broken_line(pts).expect("random map is valid")
}

/// A random map with a vertex at every grid abscissa `i/q` and values on
/// the grid. Such maps send grid points to grid points, so they always admit
/// a Markov partition.
pub fn random_grid_map(rng: &mut ChaCha8Rng) -> PlMap {
    let q = rng.random_range(2..=11i64);
    let pts = (0..=q).map(|i| (rat(i, q), rat(rng.random_range(0..=q), q))).collect();
    make_broken_line(pts).expect("grid map is valid")
}

/// Maps symmetric about `1/2`, so that `f` and `1 - f` are conjugate.
pub fn random_symmetric_map(rng: &mut ChaCha8Rng) -> PlMap {
    let k = rng.random_range(1..=3usize);
    let mut xs = vec![zero()];
    xs.extend(random_abscissas(rng, k, 16).into_iter().map(|x| x / int(2)));
    xs.push(half());
    let left: Vec<(Rational, Rational)> = xs.into_iter().map(|x| (x, random_rational(rng, 16))).collect();
    let mut pts = left.clone();
    pts.extend(left.into_iter().rev().skip(1).map(|(x, y)| (one() - x, y)));
    make_broken_line(pts).expect("symmetric map is valid")
}

/// Seeded symmetric maps, led by the tent map.
pub fn symmetric_corpus(seed: u64, size: usize) -> Vec<PlMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = vec![tent()];
    maps.extend((1..size).map(|_| random_symmetric_map(&mut rng)));
    maps.truncate(size);
    maps
}

/// Seeded pairs of generic random maps.
pub fn random_pairs(seed: u64, count: usize) -> Vec<(PlMap, PlMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (random_map(&mut rng), random_map(&mut rng))).collect()
}

/// Seeded corpus alternating grid maps and generic random maps.
pub fn corpus(seed: u64, size: usize) -> Vec<PlMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|i| if i % 2 == 0 { random_grid_map(&mut rng) } else { random_map(&mut rng) })
        .collect()
}

fn join(values: &[Rational]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn lap_trace(f: &PlMap, n_max: usize, cfg: &EntropyConfig) -> Result<Vec<u64>> {
    Ok(entropy_upper_lap_with(f, n_max, cfg)?.trace.into_iter().map(|t| t.laps).collect())
}

/// How an entropy comparison `h(g) <= E` fared.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// A lap or Markov bound of `g` is at most `E + MONOTONICITY_SLACK`.
    Certified(f64),
    /// Neither surrogate is sharp enough to decide.
    Unverifiable(f64),
    /// The Markov entropy of `g` exceeds `E + MONOTONICITY_SLACK`.
    Violated(f64),
}

/// Tries to certify `h(g) <= source + MONOTONICITY_SLACK` from a Markov
/// partition of `g` and, failing that, from lap growth up to
/// [`LAP_HORIZON`].
pub fn certify_not_above(g: &PlMap, source: f64, cfg: &EntropyConfig) -> Result<Certificate> {
    let budget = source + MONOTONICITY_SLACK;
    let markov = entropy_markov_with(g, MARKOV_TOL, cfg);
    match markov {
        Some(m) if m <= budget => return Ok(Certificate::Certified(m)),
        Some(m) if m - MARKOV_TOL > budget => return Ok(Certificate::Violated(m)),
        _ => {}
    }
    let lap = entropy_upper_lap_with(g, LAP_HORIZON, cfg)?.upper;
    if lap <= budget {
        Ok(Certificate::Certified(lap))
    } else {
        Ok(Certificate::Unverifiable(lap))
    }
}

/// Tally of certification attempts rolled into one check.
#[derive(Default)]
struct Tally {
    certified: usize,
    skipped: usize,
    violations: Vec<String>,
}

impl Tally {
    fn record(&mut self, label: String, cert: Certificate, source: f64) {
        match cert {
            Certificate::Certified(_) => self.certified += 1,
            Certificate::Unverifiable(_) => self.skipped += 1,
            Certificate::Violated(v) => self.violations.push(format!("{label}: {v:.6} > {source:.6}")),
        }
    }

    fn outcome(self) -> (Status, String) {
        let detail = format!(
            "{} certified, {} unverifiable, {} violated{}",
            self.certified,
            self.skipped,
            self.violations.len(),
            self.violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        );
        let status = if !self.violations.is_empty() {
            Status::Fail
        } else if self.certified == 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
        (status, detail)
    }
}

/// `f` and `1 - f` are conjugate for symmetric `f`, while `f/2 + (1-f)/2`
/// is the constant `1/2`.
pub fn run_example_convexity_gt() -> VerificationReport {
    let cfg = suite_config();
    let maps = symmetric_corpus(0x5eed, 9);
    let mut report = VerificationReport::fragment();
    report.run("convexity_gt.conjugate_lap_traces", || {
        let mut compared = 0;
        for (i, f) in maps.iter().enumerate() {
            let a = lap_trace(f, 10, &cfg)?;
            let b = lap_trace(&reflect_values(f), 10, &cfg)?;
            if a != b {
                return Ok((Status::Fail, format!("map {i}: {a:?} vs {b:?}")));
            }
            compared += a.len();
        }
        Ok((Status::Pass, format!("{} maps, {compared} lap counts agree", maps.len())))
    });
    report.run("convexity_gt.midpoint_constant", || {
        let f = tent();
        let mid = affine_combine(&half(), &f, &half(), &reflect_values(&f), &zero())?;
        Ok(verdict(mid == PlMap::unit_constant(half()), format!("f/2 + (1-f)/2 = {mid}")))
    });
    report.run("convexity_gt.midpoint_entropy", || {
        let est = entropy_estimate(&PlMap::unit_constant(half()), 10, 8, MARKOV_TOL)?;
        Ok(verdict(
            est.lower == 0.0 && est.upper == 0.0,
            format!("bounds [{}, {}]", est.lower, est.upper),
        ))
    });
    report
}

/// Two maps with periods 1 and 2 only whose midpoint has a 3-cycle and so
/// positive entropy.
pub fn run_example_convexity_le0() -> VerificationReport {
    let cfg = suite_config();
    let (f, g) = convexity_pair();
    let mut report = VerificationReport::fragment();
    report.run("convexity_le0.no_long_periods", || {
        for (name, h) in [("f", &f), ("g", &g)] {
            for p in 3..=8 {
                if let Some(orbit) = h.find_periodic_orbit_with_cap(p, 8, cfg.breakpoint_cap)? {
                    return Ok((Status::Fail, format!("{name} has a {p}-cycle from {}", orbit[0])));
                }
            }
        }
        Ok((Status::Pass, "no orbit of least period 3..=8 for f or g".into()))
    });
    report.run("convexity_le0.lap_bounds", || {
        let mut values = Vec::new();
        for h in [&f, &g] {
            let est = entropy_upper_lap_with(h, 10, &cfg)?;
            let at_ten = est.trace.iter().find(|t| t.n == 10).map(|t| t.value);
            values.push(at_ten);
        }
        let ok = values.iter().all(|v| v.is_some_and(|v| v <= 0.12));
        Ok(verdict(ok, format!("(1/10) log laps at n = 10: f {:?}, g {:?}", values[0], values[1])))
    });
    let phi = affine_combine(&half(), &f, &half(), &g, &zero());
    report.run("convexity_le0.phi_orbit", || {
        let orbit = phi.clone()?.find_periodic_orbit_with_cap(3, 8, cfg.breakpoint_cap)?;
        let expected = vec![zero(), rat(3, 4), rat(1, 4)];
        let shown = orbit.as_ref().map_or_else(|| "none".to_string(), |o| join(o));
        Ok(verdict(orbit.as_ref() == Some(&expected), format!("orbit ({shown})")))
    });
    report.run("convexity_le0.phi_entropy_positive", || {
        let bound = horseshoe_bound_iterated(&phi.clone()?, 4, &cfg)?;
        Ok(match bound {
            Some(b) => verdict(
                b.value > 0.0,
                format!("{}-horseshoe on iterate {}: lower bound {:.6}", b.size, b.iterate, b.value),
            ),
            None => (Status::Fail, "no horseshoe on phi or phi^2".into()),
        })
    });
    report
}

/// Maps `l_n` with the single fixed point `x0` converge to the identity,
/// so no continuous selection of fixed points exists.
pub fn run_fixed_point_counterexample(x0: &Rational, ns: &[u64]) -> Result<VerificationReport> {
    if !x0.is_positive() || *x0 >= one() {
        return Err(Error::Parameter(format!("x0 must lie in (0, 1), got {x0}")));
    }
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::Parameter("need at least one positive n".into()));
    }
    let mut report = VerificationReport::fragment();
    for &n in ns {
        report.run(&format!("fixed_point.l_{n}"), || {
            let l = fixed_point_line(x0, n)?;
            let fixed = l.fixed_points()?;
            let unique = fixed.isolated_points() == Some(vec![x0.clone()]) && fixed.components.len() == 1;
            let dist = l.sup_distance(&PlMap::identity())?;
            let expected = Rational::new(1.into(), n.into());
            // Selecting the smallest fixed point is continuous nowhere near
            // the identity: it jumps from x0 to 0.
            let gap = x0.clone();
            Ok(verdict(
                unique && dist == expected,
                format!(
                    "fixed set {}, d(l_n, id) = {dist}, selection gap {gap}",
                    fixed
                        .components
                        .iter()
                        .map(|(a, b)| if a == b { format!("{{{a}}}") } else { format!("[{a}, {b}]") })
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            ))
        });
    }
    Ok(report)
}

fn jitter(f: &PlMap, delta: &Rational, rng: &mut ChaCha8Rng) -> Result<PlMap> {
    // Offsets in (-delta, delta), multiples of delta/64, clipped to [0, 1].
    let pts = f
        .points()
        .iter()
        .map(|p| {
            let k = rng.random_range(-63..=63i64);
            let y = (&p.y + delta * rat(k, 64)).max(zero()).min(one());
            (p.x.clone(), y)
        })
        .collect();
    make_broken_line(pts)
}

/// Samples perturbations `g` of `f` with `d(f, g) < delta` and records how
/// far the horseshoe lower bound of `g` falls below the Markov entropy of
/// `f`. Drops are observations only.
pub fn run_lsc_probe(f: &PlMap, delta: &Rational, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !delta.is_positive() {
        return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
    }
    let cfg = EntropyConfig {
        horseshoe_iterates: 4,
        ..suite_config()
    };
    let mut report = VerificationReport::fragment();
    report.run("lsc.probe", || {
        let source = match entropy_markov_with(f, MARKOV_TOL, &cfg) {
            Some(e) if e > 0.0 => e,
            Some(_) => return Ok((Status::Skipped, "source entropy is 0; the probe is vacuous".into())),
            None => return Ok((Status::Skipped, "source map has no Markov partition".into())),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = f64::INFINITY;
        let mut drops = 0;
        for _ in 0..trials {
            let g = jitter(f, delta, &mut rng)?;
            if g.sup_distance(f)? >= *delta {
                return Ok((Status::Fail, "perturbation escaped the delta ball".into()));
            }
            let lower = horseshoe_bound_iterated(&g, usize::MAX, &cfg)?.map_or(0.0, |b| b.value);
            worst = worst.min(lower);
            if lower < source - 0.1 {
                drops += 1;
            }
        }
        Ok((
            Status::Pass,
            format!(
                "entropy {source:.6}, worst lower bound {worst:.6}, epsilon {:.6}, {drops}/{trials} trials below entropy - 0.1",
                (source - worst).max(0.0)
            ),
        ))
    });
    Ok(report)
}

fn box_checks(report: &mut VerificationReport, cfg: &EntropyConfig) {
    report.run("box_map.reference_splice", || {
        let p = BoxParams::new(int(3), int(2), zero(), int(4), int(20))?;
        let xi = box_map(&zero(), &int(20), &p)?;
        let slopes_ok = xi.segments().all(|(a, b)| ((&b.y - &a.y) / (&b.x - &a.x)).abs() == int(4));
        let ends_ok = xi.evaluate(&zero())? == int(3) && xi.evaluate(&int(20))? == int(2);
        let range = xi.range();
        Ok(verdict(
            slopes_ok && ends_ok && range == (zero(), int(4)),
            format!("slope 4: {slopes_ok}, ends (3, 2): {ends_ok}, range [{}, {}]", range.0, range.1),
        ))
    });
    let saw = BoxParams::new(zero(), zero(), zero(), one(), int(20)).and_then(|p| box_map(&zero(), &one(), &p));
    report.run("box_map.sawtooth_markov", || {
        let saw = saw.clone()?;
        let cells = markov_data(&saw).map(|m| m.cells());
        let e = entropy_markov_with(&saw, MARKOV_TOL, cfg);
        let ok = cells == Some(20) && e.is_some_and(|e| (e - 20f64.ln()).abs() <= 1e-6);
        Ok(verdict(ok, format!("cells {cells:?}, entropy {e:?}")))
    });
    report.run("box_map.horseshoe_floor", || {
        let size = largest_horseshoe(&saw.clone()?).map_or(0, |h| h.size());
        Ok(verdict(size >= 16, format!("largest horseshoe {size}")))
    });
}

/// Every H^α image carries a horseshoe of size at least `⌊α - 4⌋`.
fn h_alpha_floor(report: &mut VerificationReport) {
    report.run("h_alpha.entropy_floor", || {
        let (f2, _) = convexity_pair();
        let maps = [("tent", tent()), ("identity", PlMap::identity()), ("convexity f", f2)];
        let times = [rat(1, 10), rat(1, 4), half(), rat(3, 4), one()];
        let mut weakest: Option<(usize, String)> = None;
        for alpha in [20i64, 28] {
            let floor = (alpha - 4) as usize;
            for (name, f) in &maps {
                for t in &times {
                    let h = homotopy_h_alpha(f, t, &int(alpha))?;
                    let size = largest_horseshoe(&h).map_or(0, |s| s.size());
                    if size < floor {
                        return Ok((
                            Status::Fail,
                            format!("{name}, alpha {alpha}, t {t}: horseshoe {size} < {floor}"),
                        ));
                    }
                    let margin = size - floor;
                    if weakest.as_ref().is_none_or(|w| margin < w.0) {
                        weakest = Some((margin, format!("{name}, alpha {alpha}, t {t}: {size}")));
                    }
                }
            }
        }
        Ok((
            Status::Pass,
            format!("30 images meet the floor; tightest {}", weakest.map(|w| w.1).unwrap_or_default()),
        ))
    });
}

fn envelope_checks(report: &mut VerificationReport, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe9e1_09e5);
    let pairs: Vec<(PlMap, PlMap, Rational, Rational)> = (0..ENVELOPE_PAIRS)
        .map(|_| {
            let f = random_map(&mut rng);
            let g = random_map(&mut rng);
            let c = loop {
                let c = random_rational(&mut rng, 64);
                if c.is_positive() && c < one() {
                    break c;
                }
            };
            let t = rat(rng.random_range(1..=64), 64);
            (f, g, c, t)
        })
        .collect();
    report.run("envelope.boundary_range", || {
        for (i, (f, ..)) in pairs.iter().enumerate() {
            let e = monotone_envelope(f);
            let (lo, hi) = f.range();
            let (elo, ehi) = e.range();
            let ok = e.evaluate(&zero())? == f.evaluate(&zero())?
                && e.evaluate(&one())? == f.evaluate(&one())?
                && elo >= lo
                && ehi <= hi;
            if !ok {
                return Ok((Status::Fail, format!("pair {i}: {f} -> {e}")));
            }
        }
        Ok((Status::Pass, format!("{} maps", pairs.len())))
    });
    report.run("envelope.contraction", || {
        for (i, (f, g, ..)) in pairs.iter().enumerate() {
            let d = f.sup_distance(g)?;
            let de = monotone_envelope(f).sup_distance(&monotone_envelope(g))?;
            if de > d {
                return Ok((Status::Fail, format!("pair {i}: {de} > {d}")));
            }
        }
        Ok((Status::Pass, format!("{} pairs", pairs.len())))
    });
    report.run("envelope.split", || {
        let mut tight = 0;
        for (i, (f, _, c, _)) in pairs.iter().enumerate() {
            let left = f.restrict(&zero(), c)?;
            let right = f.restrict(c, &one())?;
            let amplitude = left.extremum().amplitude().min(right.extremum().amplitude());
            let split = PlMap::glue(&[monotone_envelope(&left), monotone_envelope(&right)])?;
            let d = monotone_envelope(f).sup_distance(&split)?;
            // Every epsilon above the smaller amplitude satisfies the
            // precondition, so the distance may not exceed it.
            if d > amplitude {
                return Ok((Status::Fail, format!("pair {i}, c = {c}: {d} > {amplitude}")));
            }
            if d == amplitude && !d.is_zero() {
                tight += 1;
            }
        }
        Ok((Status::Pass, format!("{} splits, {tight} attain the amplitude", pairs.len())))
    });
    report.run("h1.contraction", || {
        for (i, (f, g, _, t)) in pairs.iter().enumerate() {
            let d = f.sup_distance(g)?;
            let dh = homotopy_h1(f, t)?.sup_distance(&homotopy_h1(g, t)?)?;
            if dh > d {
                return Ok((Status::Fail, format!("pair {i}, t = {t}: {dh} > {d}")));
            }
        }
        Ok((Status::Pass, format!("{} pairs", pairs.len())))
    });
}

struct CorpusEntry {
    map: PlMap,
    entropy: Option<f64>,
}

fn corpus_checks(report: &mut VerificationReport, maps: &[CorpusEntry], cfg: &EntropyConfig) {
    let pmcp_times = [rat(1, 4), half(), rat(3, 4)];
    report.run("pmcp.h2", || {
        for (i, e) in maps.iter().enumerate() {
            for t in &pmcp_times {
                let d = is_pmcp(&e.map, &homotopy_h2(&e.map, t)?)?;
                if !d.holds {
                    return Ok((Status::Fail, format!("map {i}, t = {t}: witness {:?}", d.witness)));
                }
            }
        }
        Ok((Status::Pass, format!("{} maps x 3 times", maps.len())))
    });
    report.run("pmcp.envelope", || {
        for (i, e) in maps.iter().enumerate() {
            let d = is_pmcp(&e.map, &monotone_envelope(&e.map))?;
            if !d.holds {
                return Ok((Status::Fail, format!("map {i}: witness {:?}", d.witness)));
            }
        }
        Ok((Status::Pass, format!("{} maps", maps.len())))
    });
    report.run("pmcp.entropy_certified", || {
        let mut tally = Tally::default();
        for (i, e) in maps.iter().enumerate() {
            let Some(source) = e.entropy else { continue };
            let mut images = vec![("envelope".to_string(), monotone_envelope(&e.map))];
            for t in &pmcp_times {
                images.push((format!("h2 t = {t}"), homotopy_h2(&e.map, t)?));
            }
            for (label, g) in images {
                tally.record(format!("map {i} {label}"), certify_not_above(&g, source, cfg)?, source);
            }
        }
        Ok(tally.outcome())
    });
    report.run("joined.endpoints", || {
        let zero_map = PlMap::unit_constant(zero());
        for (i, e) in maps.iter().enumerate() {
            if homotopy_h(&e.map, &zero())? != e.map || homotopy_h(&e.map, &one())? != zero_map {
                return Ok((Status::Fail, format!("map {i}")));
            }
        }
        Ok((Status::Pass, format!("{} maps", maps.len())))
    });
    report.run("joined.junctions", || {
        for (i, e) in maps.iter().enumerate() {
            let env = monotone_envelope(&e.map);
            let top = PlMap::unit_constant(env.extremum().max);
            let ok = homotopy_h1(&e.map, &one())? == env
                && homotopy_h(&e.map, &rat(1, 3))? == env
                && homotopy_h2(&env, &one())? == top
                && homotopy_h(&e.map, &rat(2, 3))? == top;
            if !ok {
                return Ok((Status::Fail, format!("map {i}")));
            }
        }
        Ok((Status::Pass, format!("{} maps", maps.len())))
    });
    report.run("joined.monotonicity", || {
        let mut tally = Tally::default();
        let times = [rat(1, 6), rat(1, 3), half(), rat(2, 3), rat(5, 6)];
        for (i, e) in maps.iter().enumerate() {
            let Some(source) = e.entropy else { continue };
            for t in &times {
                let g = homotopy_h(&e.map, t)?;
                tally.record(format!("map {i} t = {t}"), certify_not_above(&g, source, cfg)?, source);
            }
        }
        Ok(tally.outcome())
    });
}

/// Names of the checks in a full suite report, in order.
pub fn suite_check_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "box_map.reference_splice",
        "box_map.sawtooth_markov",
        "box_map.horseshoe_floor",
        "h_alpha.entropy_floor",
        "envelope.boundary_range",
        "envelope.contraction",
        "envelope.split",
        "h1.contraction",
        "pmcp.h2",
        "pmcp.envelope",
        "pmcp.entropy_certified",
        "joined.endpoints",
        "joined.junctions",
        "joined.monotonicity",
        "convexity_gt.conjugate_lap_traces",
        "convexity_gt.midpoint_constant",
        "convexity_gt.midpoint_entropy",
        "convexity_le0.no_long_periods",
        "convexity_le0.lap_bounds",
        "convexity_le0.phi_orbit",
        "convexity_le0.phi_entropy_positive",
    ]
    .map(String::from)
    .to_vec();
    names.extend(SUITE_FIXED_POINT_NS.iter().map(|n| format!("fixed_point.l_{n}")));
    names
}

const SUITE_FIXED_POINT_NS: [u64; 3] = [10, 100, 1000];

/// Runs every check over a corpus drawn from `seed`.
pub fn run_full_suite(seed: u64, corpus_size: usize) -> Result<VerificationReport> {
    run_full_suite_with(seed, corpus_size, &suite_config())
}

pub fn run_full_suite_with(seed: u64, corpus_size: usize, cfg: &EntropyConfig) -> Result<VerificationReport> {
    if corpus_size == 0 {
        return Err(Error::Parameter("corpus size must be at least 1".into()));
    }
    let maps: Vec<CorpusEntry> = corpus(seed, corpus_size)
        .into_iter()
        .map(|map| {
            let entropy = entropy_markov_with(&map, MARKOV_TOL, cfg);
            CorpusEntry { map, entropy }
        })
        .collect();
    let mut report = VerificationReport {
        seed,
        corpus_size,
        checks: Vec::new(),
    };
    box_checks(&mut report, cfg);
    h_alpha_floor(&mut report);
    envelope_checks(&mut report, seed);
    corpus_checks(&mut report, &maps, cfg);
    report.absorb(run_example_convexity_gt());
    report.absorb(run_example_convexity_le0());
    report.absorb(run_fixed_point_counterexample(&rat(1, 3), &SUITE_FIXED_POINT_NS)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(report: &VerificationReport) {
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn examples_pass() {
        all_pass(&run_example_convexity_gt());
        all_pass(&run_example_convexity_le0());
    }

    #[test]
    fn fixed_point_examples() {
        let r = run_fixed_point_counterexample(&rat(1, 3), &[10, 100]).unwrap();
        all_pass(&r);
        assert!(r.checks[0].detail.contains("1/10"));
        assert!(matches!(run_fixed_point_counterexample(&zero(), &[10]), Err(Error::Parameter(_))));
        assert!(matches!(run_fixed_point_counterexample(&one(), &[10]), Err(Error::Parameter(_))));
    }

    #[test]
    fn lsc_probe_examples() {
        let r = run_lsc_probe(&tent(), &rat(1, 100), 10, 7).unwrap();
        all_pass(&r);
        let r = run_lsc_probe(&PlMap::identity(), &rat(1, 100), 10, 7).unwrap();
        assert_eq!(r.checks[0].status, Status::Skipped);
        assert!(run_lsc_probe(&tent(), &zero(), 10, 7).is_err());
    }

    #[test]
    fn corpora_are_seeded() {
        assert_eq!(corpus(3, 12), corpus(3, 12));
        assert_ne!(corpus(3, 12), corpus(4, 12));
        let cfg = suite_config();
        for (i, f) in corpus(5, 20).iter().enumerate() {
            assert!(f.is_unit_map());
            assert!((3..=12).contains(&f.len()) || f.len() == 2);
            if i % 2 == 0 {
                assert!(entropy_markov_with(f, MARKOV_TOL, &cfg).is_some(), "{f}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let s = random_symmetric_map(&mut rng);
            for k in 0..=16 {
                let x = rat(k, 32);
                assert_eq!(s.evaluate(&x).unwrap(), s.evaluate(&(one() - &x)).unwrap());
            }
        }
    }

    #[test]
    fn small_suite_is_deterministic() {
        let a = run_full_suite(7, 6).unwrap();
        let b = run_full_suite(7, 6).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        let names: Vec<String> = a.checks.iter().map(|c| c.name.clone()).collect();
        assert_eq!(names, suite_check_names());
        assert!(a.passed(), "{a}");
        assert!(matches!(run_full_suite(7, 0), Err(Error::Parameter(_))));
    }
}

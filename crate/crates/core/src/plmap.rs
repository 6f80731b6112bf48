//! Continuous piecewise-linear maps on a closed rational interval.
//!
//! A [`PlMap`] is stored as its list of vertices in canonical form: abscissas
//! strictly increasing and no three consecutive vertices collinear. Two maps
//! are equal as functions iff their vertex lists are equal, so `==` is
//! functional equality.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{in_unit, one, zero, Rational};

/// Breakpoint cap applied by [`PlMap::iterate`] and friends unless a caller
/// passes an explicit one.
pub const DEFAULT_BREAKPOINT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl From<(Rational, Rational)> for Point {
    fn from((x, y): (Rational, Rational)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlMap {
    points: Vec<Point>,
}

/// Maximum, minimum and the outermost arguments of the maximum of a map on
/// a subinterval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremumData {
    pub max: Rational,
    pub min: Rational,
    /// Leftmost argmax.
    pub c1: Rational,
    /// Rightmost argmax.
    pub c2: Rational,
}

impl ExtremumData {
    pub fn amplitude(&self) -> Rational {
        &self.max - &self.min
    }
}

/// Maximal connected components of the solution set of `f(x) = x`, left to
/// right. A degenerate component `[p, p]` is an isolated fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSet {
    pub components: Vec<(Rational, Rational)>,
}

impl FixedPointSet {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// The isolated fixed points, if every component is degenerate.
    pub fn isolated_points(&self) -> Option<Vec<Rational>> {
        self.components
            .iter()
            .map(|(p, q)| (p == q).then(|| p.clone()))
            .collect()
    }
}

fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    (&b.y - &a.y) * (&c.x - &b.x) == (&c.y - &b.y) * (&b.x - &a.x)
}

/// Drops vertices that lie on the segment joining their neighbours.
fn canonicalize(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if let Some(last) = out.last() {
            if last.x == p.x {
                continue;
            }
        }
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

fn lerp(a: &Point, b: &Point, x: &Rational) -> Rational {
    if *x == a.x {
        return a.y.clone();
    }
    if *x == b.x {
        return b.y.clone();
    }
    &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x)
}

/// Abscissa where the segment `a`–`b` takes the value `level`; the caller
/// guarantees `level` lies between `a.y` and `b.y` and `a.y != b.y`.
pub(crate) fn crossing(a: &Point, b: &Point, level: &Rational) -> Rational {
    &a.x + (level - &a.y) * (&b.x - &a.x) / (&b.y - &a.y)
}

fn merge_sorted(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(p), Some(q)) if p < q => {
                i += 1;
                p
            }
            (Some(p), Some(q)) if p > q => {
                j += 1;
                q
            }
            (Some(p), Some(_)) => {
                i += 1;
                j += 1;
                p
            }
            (Some(p), None) => {
                i += 1;
                p
            }
            (None, Some(q)) => {
                j += 1;
                q
            }
            (None, None) => unreachable!(),
        };
        out.push(next.clone());
    }
    out
}

impl PlMap {
    /// Builds the canonical map through `points`, with no restriction on the
    /// range. Use [`make_broken_line`] for self-maps of the unit square.
    pub fn from_points<P: Into<Point>>(points: impl IntoIterator<Item = P>) -> Result<Self> {
        let points: Vec<Point> = points.into_iter().map(Into::into).collect();
        if points.len() < 2 {
            return Err(Error::Validation(format!(
                "a broken line needs at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].x >= w[1].x) {
            return Err(Error::Validation(format!(
                "abscissas must be strictly increasing ({} then {})",
                w[0].x, w[1].x
            )));
        }
        Ok(PlMap {
            points: canonicalize(points),
        })
    }

    fn from_sorted_unchecked(points: Vec<Point>) -> Self {
        debug_assert!(points.len() >= 2);
        PlMap {
            points: canonicalize(points),
        }
    }

    pub fn constant(lo: Rational, hi: Rational, c: Rational) -> Result<Self> {
        PlMap::from_points([(lo, c.clone()), (hi, c)])
    }

    /// The constant map `c` on `[0, 1]`.
    pub fn unit_constant(c: Rational) -> Self {
        PlMap::from_sorted_unchecked(vec![Point::new(zero(), c.clone()), Point::new(one(), c)])
    }

    pub fn identity() -> Self {
        PlMap::from_sorted_unchecked(vec![Point::new(zero(), zero()), Point::new(one(), one())])
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn lo(&self) -> &Rational {
        &self.points[0].x
    }

    pub fn hi(&self) -> &Rational {
        &self.points[self.points.len() - 1].x
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (self.lo(), self.hi())
    }

    pub fn xs(&self) -> Vec<Rational> {
        self.points.iter().map(|p| p.x.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// `(min, max)` of the map over its whole domain.
    pub fn range(&self) -> (Rational, Rational) {
        crate::rational::min_max(self.points.iter().map(|p| &p.y)).expect("non-empty")
    }

    pub fn is_constant(&self) -> bool {
        self.points.len() == 2 && self.points[0].y == self.points[1].y
    }

    pub fn same_domain(&self, other: &PlMap) -> bool {
        self.domain() == other.domain()
    }

    /// Domain is `[0, 1]` and every value lies in `[0, 1]`.
    pub fn is_unit_map(&self) -> bool {
        self.lo().is_zero() && *self.hi() == one() && self.points.iter().all(|p| in_unit(&p.y))
    }

    /// The range is contained in the domain, so the map can be iterated.
    pub fn is_self_map(&self) -> bool {
        let (m, big_m) = self.range();
        m >= *self.lo() && big_m <= *self.hi()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        x >= self.lo() && x <= self.hi()
    }

    fn require_in_domain(&self, x: &Rational) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{x} is outside the domain [{}, {}]",
                self.lo(),
                self.hi()
            )))
        }
    }

    /// Index `i` of the segment `points[i]..points[i+1]` containing `x`.
    fn segment_index(&self, x: &Rational) -> usize {
        let k = self.points.partition_point(|p| p.x <= *x);
        k.saturating_sub(1).min(self.points.len() - 2)
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        self.require_in_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &Rational) -> Rational {
        let i = self.segment_index(x);
        lerp(&self.points[i], &self.points[i + 1], x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlMap) -> Result<PlMap> {
        self.compose_with_cap(inner, DEFAULT_BREAKPOINT_CAP)
    }

    pub fn compose_with_cap(&self, inner: &PlMap, cap: usize) -> Result<PlMap> {
        let (m, big_m) = inner.range();
        if m < *self.lo() || big_m > *self.hi() {
            return Err(Error::Composition(format!(
                "range [{m}, {big_m}] of the inner map is not inside the domain [{}, {}]",
                self.lo(),
                self.hi()
            )));
        }
        let outer_xs: Vec<&Rational> = self.points.iter().map(|p| &p.x).collect();
        // Indices of outer breakpoints strictly inside each inner segment's range.
        let inner_range = |a: &Rational, b: &Rational| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let start = outer_xs.partition_point(|x| *x <= lo);
            let end = outer_xs.partition_point(|x| *x < hi);
            (start, end.max(start))
        };
        let mut needed = 1usize;
        for (a, b) in inner.segments() {
            let (s, e) = inner_range(&a.y, &b.y);
            needed = needed.saturating_add(e - s + 1);
        }
        if needed > cap {
            return Err(Error::ResourceLimit { cap, needed });
        }
        let mut out = Vec::with_capacity(needed);
        for (a, b) in inner.segments() {
            out.push(Point::new(a.x.clone(), self.eval_unchecked(&a.y)));
            let (s, e) = inner_range(&a.y, &b.y);
            let interior = &self.points[s..e];
            let mut push = |c: &Point| {
                out.push(Point::new(crossing(a, b, &c.x), c.y.clone()));
            };
            if a.y < b.y {
                interior.iter().for_each(&mut push);
            } else {
                interior.iter().rev().for_each(&mut push);
            }
        }
        let last = inner.points.last().expect("non-empty");
        out.push(Point::new(last.x.clone(), self.eval_unchecked(&last.y)));
        Ok(PlMap::from_sorted_unchecked(out))
    }

    /// `self^n`; `n = 0` gives the identity on the domain.
    pub fn iterate(&self, n: usize) -> Result<PlMap> {
        self.iterate_with_cap(n, DEFAULT_BREAKPOINT_CAP)
    }

    pub fn iterate_with_cap(&self, n: usize, cap: usize) -> Result<PlMap> {
        if !self.is_self_map() {
            return Err(Error::Composition(
                "only self-maps of the domain can be iterated".into(),
            ));
        }
        let mut acc = PlMap::from_sorted_unchecked(vec![
            Point::new(self.lo().clone(), self.lo().clone()),
            Point::new(self.hi().clone(), self.hi().clone()),
        ]);
        for _ in 0..n {
            acc = self.compose_with_cap(&acc, cap)?;
        }
        Ok(acc)
    }

    fn require_same_domain(&self, other: &PlMap) -> Result<()> {
        if self.same_domain(other) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "domains differ: [{}, {}] vs [{}, {}]",
                self.lo(),
                self.hi(),
                other.lo(),
                other.hi()
            )))
        }
    }

    /// Union of both vertex abscissa sets, sorted.
    pub fn merged_xs(&self, other: &PlMap) -> Vec<Rational> {
        merge_sorted(&self.xs(), &other.xs())
    }

    /// `max |self - other|`, attained at a merged breakpoint.
    pub fn sup_distance(&self, other: &PlMap) -> Result<Rational> {
        self.require_same_domain(other)?;
        Ok(self
            .merged_xs(other)
            .iter()
            .map(|x| (self.eval_unchecked(x) - other.eval_unchecked(x)).abs())
            .max()
            .expect("non-empty"))
    }

    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Result<PlMap> {
        if lo >= hi {
            return Err(Error::DegenerateInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        self.require_in_domain(lo)?;
        self.require_in_domain(hi)?;
        let mut out = vec![Point::new(lo.clone(), self.eval_unchecked(lo))];
        out.extend(self.points.iter().filter(|p| p.x > *lo && p.x < *hi).cloned());
        out.push(Point::new(hi.clone(), self.eval_unchecked(hi)));
        Ok(PlMap::from_sorted_unchecked(out))
    }

    /// Max, min and outermost argmax over `[lo, hi]`.
    pub fn extremum_data(&self, lo: &Rational, hi: &Rational) -> Result<ExtremumData> {
        let piece = self.restrict(lo, hi)?;
        let (min, max) = piece.range();
        let mut at_max = piece.points.iter().filter(|p| p.y == max).map(|p| &p.x);
        let c1 = at_max.next().expect("max is attained").clone();
        let c2 = at_max.next_back().cloned().unwrap_or_else(|| c1.clone());
        Ok(ExtremumData { max, min, c1, c2 })
    }

    pub fn extremum(&self) -> ExtremumData {
        self.extremum_data(&self.lo().clone(), &self.hi().clone())
            .expect("domain is non-degenerate")
    }

    /// Pointwise `max(self, c)`, with the crossings of level `c` inserted as
    /// vertices.
    pub fn pointwise_max_const(&self, c: &Rational) -> PlMap {
        let mut out = Vec::with_capacity(self.points.len() * 2);
        for (a, b) in self.segments() {
            out.push(Point::new(a.x.clone(), a.y.clone().max(c.clone())));
            if (&a.y < c && &b.y > c) || (&a.y > c && &b.y < c) {
                out.push(Point::new(crossing(a, b, c), c.clone()));
            }
        }
        let last = self.points.last().expect("non-empty");
        out.push(Point::new(last.x.clone(), last.y.clone().max(c.clone())));
        PlMap::from_sorted_unchecked(out)
    }

    pub fn fixed_points(&self) -> Result<FixedPointSet> {
        let mut components: Vec<(Rational, Rational)> = Vec::new();
        let mut add = |p: Rational, q: Rational| match components.last_mut() {
            Some(last) if last.1 >= p => {
                if q > last.1 {
                    last.1 = q;
                }
            }
            _ => components.push((p, q)),
        };
        for (a, b) in self.segments() {
            let h0 = &a.y - &a.x;
            let h1 = &b.y - &b.x;
            match (h0.is_zero(), h1.is_zero()) {
                (true, true) => add(a.x.clone(), b.x.clone()),
                (true, false) => add(a.x.clone(), a.x.clone()),
                (false, true) => add(b.x.clone(), b.x.clone()),
                (false, false) if h0.is_positive() != h1.is_positive() => {
                    let x = &a.x + &h0 * (&b.x - &a.x) / (&h0 - &h1);
                    add(x.clone(), x);
                }
                _ => {}
            }
        }
        if components.is_empty() && self.is_self_map() {
            return Err(Error::InternalConsistency(
                "a self-map of a closed interval must have a fixed point".into(),
            ));
        }
        Ok(FixedPointSet { components })
    }

    /// Least period of `x`, searching up to `max_period`.
    fn least_period(&self, x: &Rational, max_period: usize) -> Option<usize> {
        let mut y = x.clone();
        for k in 1..=max_period {
            y = self.eval_unchecked(&y);
            if y == *x {
                return Some(k);
            }
        }
        None
    }

    /// A periodic orbit of least period `period`, starting from the smallest
    /// such point found among the fixed-point components of `self^period`.
    /// `cap` bounds the admissible period.
    pub fn find_periodic_orbit(&self, period: usize, cap: usize) -> Result<Option<Vec<Rational>>> {
        self.find_periodic_orbit_with_cap(period, cap, DEFAULT_BREAKPOINT_CAP)
    }

    pub fn find_periodic_orbit_with_cap(
        &self,
        period: usize,
        cap: usize,
        breakpoint_cap: usize,
    ) -> Result<Option<Vec<Rational>>> {
        if period == 0 || period > cap {
            return Err(Error::Parameter(format!(
                "period must lie in [1, {cap}], got {period}"
            )));
        }
        let power = self.iterate_with_cap(period, breakpoint_cap)?;
        for (p, q) in power.fixed_points()?.components {
            let mid = (&p + &q) / Rational::from_integer(2.into());
            for x in [p, mid, q] {
                if self.least_period(&x, period) == Some(period) {
                    let mut orbit = Vec::with_capacity(period);
                    let mut y = x;
                    for _ in 0..period {
                        let next = self.eval_unchecked(&y);
                        orbit.push(y);
                        y = next;
                    }
                    return Ok(Some(orbit));
                }
            }
        }
        Ok(None)
    }

    /// Concatenates maps on abutting intervals into one continuous map.
    pub fn glue(pieces: &[PlMap]) -> Result<PlMap> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::Validation("nothing to glue".into()))?;
        let mut out = first.points.clone();
        for (prev, next) in pieces.iter().zip(&pieces[1..]) {
            if prev.hi() != next.lo() {
                return Err(Error::Domain(format!(
                    "pieces do not abut: {} vs {}",
                    prev.hi(),
                    next.lo()
                )));
            }
            let (left, right) = (&prev.points[prev.len() - 1].y, &next.points[0].y);
            if left != right {
                return Err(Error::Continuity(format!(
                    "values {left} and {right} disagree at x = {}",
                    next.lo()
                )));
            }
            out.extend(next.points[1..].iter().cloned());
        }
        Ok(PlMap::from_sorted_unchecked(out))
    }
}

/// The canonical broken line through `points`, a map from a subinterval of
/// `[0, 1]` into `[0, 1]`.
pub fn make_broken_line(points: Vec<(Rational, Rational)>) -> Result<PlMap> {
    if let Some((x, y)) = points.iter().find(|(x, y)| !in_unit(x) || !in_unit(y)) {
        return Err(Error::Range(format!("point ({x}, {y}) is outside the unit square")));
    }
    PlMap::from_points(points)
}

pub fn compose(f: &PlMap, g: &PlMap) -> Result<PlMap> {
    f.compose(g)
}

/// `w1 f + w2 g + offset` on the common domain; every vertex value must land
/// in `[0, 1]`.
pub fn affine_combine(
    w1: &Rational,
    f: &PlMap,
    w2: &Rational,
    g: &PlMap,
    offset: &Rational,
) -> Result<PlMap> {
    f.require_same_domain(g)?;
    let points = f
        .merged_xs(g)
        .into_iter()
        .map(|x| {
            let y = w1 * f.eval_unchecked(&x) + w2 * g.eval_unchecked(&x) + offset;
            if in_unit(&y) {
                Ok(Point::new(x, y))
            } else {
                Err(Error::Range(format!("value {y} at x = {x} is outside [0, 1]")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlMap::from_sorted_unchecked(points))
}

/// `1 - f`.
pub fn reflect_values(f: &PlMap) -> PlMap {
    let points = f
        .points
        .iter()
        .map(|p| Point::new(p.x.clone(), one() - &p.y))
        .collect();
    PlMap::from_sorted_unchecked(points)
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", p.x, p.y)?;
        }
        write!(f, "]")
    }
}

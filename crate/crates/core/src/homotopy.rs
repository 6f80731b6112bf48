//! Box maps, the monotone envelope, and the homotopies assembled from them.
//!
//! * [`homotopy_h_alpha`] deforms every map into maps carrying a large
//!   horseshoe (entropy at least `log ⌊α - 4⌋` for `t > 0`).
//! * [`homotopy_h`] joins [`homotopy_h1`], [`homotopy_h2`] and a linear
//!   squash to contract every map onto the constant 0 without raising
//!   entropy along the way.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::plmap::{crossing, PlMap, Point};
use crate::rational::{int, one, rat, zero, Rational};

/// Parameters `(a_l, a_r, a_b, a_t, a_s)` of a box map: endpoint values,
/// bottom and top of the box, and the steepness factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxParams {
    pub left: Rational,
    pub right: Rational,
    pub bottom: Rational,
    pub top: Rational,
    pub steepness: Rational,
}

/// Smallest admissible steepness.
pub fn min_steepness() -> Rational {
    int(20)
}

impl BoxParams {
    pub fn new(left: Rational, right: Rational, bottom: Rational, top: Rational, steepness: Rational) -> Result<Self> {
        if bottom >= top {
            return Err(Error::Parameter(format!("box bottom {bottom} must be below top {top}")));
        }
        for (name, v) in [("left", &left), ("right", &right)] {
            if *v < bottom || *v > top {
                return Err(Error::Parameter(format!(
                    "{name} value {v} is outside the box [{bottom}, {top}]"
                )));
            }
        }
        if steepness < min_steepness() {
            return Err(Error::Parameter(format!("steepness {steepness} is below 20")));
        }
        Ok(BoxParams {
            left,
            right,
            bottom,
            top,
            steepness,
        })
    }
}

/// `[0, 1]` cut into `s` cells of width `t` followed by the remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub t: Rational,
    /// Largest `s >= 0` with `s t < 1`.
    pub s: usize,
    pub intervals: Vec<(Rational, Rational)>,
}

pub fn unit_partition(t: &Rational) -> Result<Partition> {
    if !t.is_positive() || *t > one() {
        return Err(Error::Parameter(format!("partition width must lie in (0, 1], got {t}")));
    }
    let s_big: num_bigint::BigInt = (one() / t).ceil().to_integer() - 1;
    let s: usize = s_big
        .try_into()
        .map_err(|_| Error::Parameter(format!("partition width {t} is too small")))?;
    let mut intervals: Vec<(Rational, Rational)> = (1..=s)
        .map(|i| (t * int(i as i64 - 1), t * int(i as i64)))
        .collect();
    intervals.push((t * int(s as i64), one()));
    Ok(Partition {
        t: t.clone(),
        s,
        intervals,
    })
}

/// Triangle wave on `[lo, hi]` starting at `start`, bouncing between
/// `bottom` and `top` with slope `±slope`; rising first unless `start` is
/// the top.
fn sawtooth(lo: &Rational, hi: &Rational, start: &Rational, bottom: &Rational, top: &Rational, slope: &Rational) -> Vec<Point> {
    let mut pts = vec![Point::new(lo.clone(), start.clone())];
    let mut up = start != top;
    loop {
        let last = pts.last().expect("non-empty");
        let rise = if up { top - &last.y } else { &last.y - bottom };
        let next_x = &last.x + rise / slope;
        if next_x >= *hi {
            let dy = slope * (hi - &last.x);
            let y = if up { &last.y + dy } else { &last.y - dy };
            pts.push(Point::new(hi.clone(), y));
            return pts;
        }
        pts.push(Point::new(next_x, if up { top.clone() } else { bottom.clone() }));
        up = !up;
    }
}

fn value_on(a: &Point, b: &Point, x: &Rational) -> Rational {
    &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x)
}

/// The box map on `[lo, hi]`: a continuous surjection onto `[bottom, top]`
/// with constant absolute slope `steepness (top - bottom) / (hi - lo)`.
///
/// A sawtooth is laid out forward from `(lo, left)` and another backward
/// from `(hi, right)`. They are spliced at the leftmost point where the
/// fifth decreasing lap of the forward sawtooth meets the backward one; when
/// the two coincide no splice is needed.
pub fn box_map(lo: &Rational, hi: &Rational, params: &BoxParams) -> Result<PlMap> {
    let BoxParams {
        left,
        right,
        bottom,
        top,
        steepness,
    } = BoxParams::new(
        params.left.clone(),
        params.right.clone(),
        params.bottom.clone(),
        params.top.clone(),
        params.steepness.clone(),
    )?;
    if lo >= hi {
        return Err(Error::DegenerateInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let slope = &steepness * (&top - &bottom) / (hi - lo);
    let forward = sawtooth(lo, hi, &left, &bottom, &top, &slope);
    // The backward sawtooth is the forward construction in mirrored abscissas.
    let mirror = |x: &Rational| lo + hi - x;
    let mut backward: Vec<Point> = sawtooth(lo, hi, &right, &bottom, &top, &slope)
        .into_iter()
        .map(|p| Point::new(mirror(&p.x), p.y))
        .collect();
    backward.reverse();

    let forward_map = PlMap::from_points(forward.clone())?;
    let backward_map = PlMap::from_points(backward.clone())?;
    if forward_map == backward_map {
        return Ok(forward_map);
    }

    let (p, q) = forward
        .windows(2)
        .filter(|w| w[0].y == top && w[1].y == bottom)
        .nth(4)
        .map(|w| (w[0].clone(), w[1].clone()))
        .ok_or_else(|| Error::Construction("forward sawtooth has fewer than five full decreasing laps".into()))?;

    let mut meeting = None;
    for w in backward.windows(2) {
        let (c, d) = (&w[0], &w[1]);
        let a = (&p.x).max(&c.x).clone();
        let b = (&q.x).min(&d.x).clone();
        if a > b {
            continue;
        }
        let d0 = value_on(&p, &q, &a) - value_on(c, d, &a);
        let d1 = value_on(&p, &q, &b) - value_on(c, d, &b);
        if d0.is_zero() {
            meeting = Some(a);
        } else if d1.is_zero() {
            meeting = Some(b);
        } else if d0.is_positive() != d1.is_positive() {
            meeting = Some(&a + &d0 * (&b - &a) / (&d0 - &d1));
        }
        if meeting.is_some() {
            break;
        }
    }
    let m = meeting.ok_or_else(|| {
        Error::InternalConsistency("the fifth decreasing lap never meets the backward sawtooth".into())
    })?;
    let ym = value_on(&p, &q, &m);
    let mut spliced: Vec<Point> = forward.into_iter().filter(|pt| pt.x < m).collect();
    spliced.push(Point::new(m.clone(), ym));
    spliced.extend(backward.into_iter().filter(|pt| pt.x > m));
    PlMap::from_points(spliced)
}

/// `max(|I|, |f(I)|)` for `I = [lo, hi]`.
pub fn cell_scale(f: &PlMap, lo: &Rational, hi: &Rational) -> Result<Rational> {
    let e = f.extremum_data(lo, hi)?;
    Ok((hi - lo).max(e.amplitude()))
}

/// Box parameters for the cell `[lo, hi]`: the box extends the image of the
/// cell by four times its scale on each side (clipped to `[0, 1]`), and the
/// endpoint values follow `f`. Whenever the cell meets its image, the cell
/// lies inside the box.
pub fn box_params_for_interval(f: &PlMap, lo: &Rational, hi: &Rational, alpha: &Rational) -> Result<BoxParams> {
    if *alpha < min_steepness() {
        return Err(Error::Parameter(format!("alpha must be at least 20, got {alpha}")));
    }
    let e = f.extremum_data(lo, hi)?;
    let scale = (hi - lo).max(e.amplitude());
    let reach = int(4) * scale;
    let bottom = (&e.min - &reach).max(zero());
    let top = (&e.max + &reach).min(one());
    BoxParams::new(f.evaluate(lo)?, f.evaluate(hi)?, bottom, top, alpha.clone())
}

fn require_unit(f: &PlMap) -> Result<()> {
    if f.is_unit_map() {
        Ok(())
    } else {
        Err(Error::Domain("expected a self-map of [0, 1]".into()))
    }
}

fn require_time(t: &Rational) -> Result<()> {
    if t.is_negative() || *t > one() {
        Err(Error::Parameter(format!("homotopy time must lie in [0, 1], got {t}")))
    } else {
        Ok(())
    }
}

/// The box-map homotopy. On `[0, 1/2]` each cell of `unit_partition(2t)`
/// carries the box map built from `f` on that cell; on `(1/2, 1]` the
/// endpoint values of the single box map on `[0, 1]` slide linearly to 0.
pub fn homotopy_h_alpha(f: &PlMap, t: &Rational, alpha: &Rational) -> Result<PlMap> {
    require_unit(f)?;
    require_time(t)?;
    if *alpha < min_steepness() {
        return Err(Error::Parameter(format!("alpha must be at least 20, got {alpha}")));
    }
    if t.is_zero() {
        return Ok(f.clone());
    }
    if *t <= rat(1, 2) {
        let partition = unit_partition(&(int(2) * t))?;
        let cells = partition
            .intervals
            .iter()
            .map(|(a, b)| box_map(a, b, &box_params_for_interval(f, a, b, alpha)?))
            .collect::<Result<Vec<_>>>()?;
        return PlMap::glue(&cells);
    }
    let keep = one() - (int(2) * t - one());
    let params = BoxParams::new(
        &keep * f.evaluate(&zero())?,
        &keep * f.evaluate(&one())?,
        zero(),
        one(),
        alpha.clone(),
    )?;
    box_map(&zero(), &one(), &params)
}

/// Running maximum from the left over a polyline, as vertices.
fn running_max(points: &[Point]) -> Vec<Point> {
    let mut out = vec![points[0].clone()];
    let mut level = points[0].y.clone();
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.y <= level {
            continue;
        }
        let start = if a.y < level { crossing(a, b, &level) } else { a.x.clone() };
        if out.last().is_some_and(|p| p.x != start) {
            out.push(Point::new(start, level.clone()));
        }
        out.push(b.clone());
        level = b.y.clone();
    }
    let end = points.last().expect("non-empty");
    if out.last().is_some_and(|p| p.x != end.x) {
        out.push(Point::new(end.x.clone(), level));
    }
    out
}

/// The monotone envelope `f̃`: running maximum from the left up to the
/// leftmost argmax, the maximum on `[c1, c2]`, and the running maximum from
/// the right after the rightmost argmax. It agrees with `f` at both ends and
/// differs from `f` only on intervals where it is constant.
pub fn monotone_envelope(f: &PlMap) -> PlMap {
    let e = f.extremum();
    let pts = f.points();
    let mut out: Vec<Point> = Vec::with_capacity(pts.len() + 4);
    let left: Vec<Point> = pts.iter().filter(|p| p.x <= e.c1).cloned().collect();
    out.extend(running_max(&left));
    let mut right: Vec<Point> = pts
        .iter()
        .rev()
        .filter(|p| p.x >= e.c2)
        .map(|p| Point::new(-&p.x, p.y.clone()))
        .collect();
    right = running_max(&right);
    for p in right.into_iter().rev() {
        let p = Point::new(-p.x, p.y);
        if out.last().is_some_and(|q| q.x == p.x) {
            continue;
        }
        out.push(p);
    }
    PlMap::from_points(out).expect("envelope vertices are increasing")
}

/// Envelope homotopy: `f` at `t = 0`, otherwise the monotone envelope of `f`
/// taken separately on every cell of `unit_partition(t)`.
pub fn homotopy_h1(f: &PlMap, t: &Rational) -> Result<PlMap> {
    require_unit(f)?;
    require_time(t)?;
    if t.is_zero() {
        return Ok(f.clone());
    }
    let cells = unit_partition(t)?
        .intervals
        .iter()
        .map(|(a, b)| f.restrict(a, b).map(|piece| monotone_envelope(&piece)))
        .collect::<Result<Vec<_>>>()?;
    PlMap::glue(&cells)
}

/// Raises the floor: `max(f, (M - m) t + m)` with `M, m` the extrema of `f`.
pub fn homotopy_h2(f: &PlMap, t: &Rational) -> Result<PlMap> {
    require_unit(f)?;
    require_time(t)?;
    let e = f.extremum();
    let level = (&e.max - &e.min) * t + &e.min;
    Ok(f.pointwise_max_const(&level))
}

/// The joined contraction: envelope homotopy on `[0, 1/3)`, floor raising
/// of the full envelope on `[1/3, 2/3)`, and linear decay of the resulting
/// constant to 0 on `[2/3, 1]`.
pub fn homotopy_h(f: &PlMap, t: &Rational) -> Result<PlMap> {
    require_unit(f)?;
    require_time(t)?;
    let three_t = int(3) * t;
    if three_t < one() {
        return homotopy_h1(f, &three_t);
    }
    let envelope = monotone_envelope(f);
    if three_t < int(2) {
        return homotopy_h2(&envelope, &(three_t - one()));
    }
    let top = envelope.extremum().max;
    Ok(PlMap::unit_constant((int(3) - three_t) * top))
}

/// Outcome of a constant-pieces check: whether `fbar` arises from `f` by
/// making pieces constant, and the maximal open intervals where they differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmcpDecision {
    pub holds: bool,
    pub witness: Vec<(Rational, Rational)>,
}

/// Decides whether `fbar` is constant on every maximal open interval where
/// it differs from `f`.
pub fn is_pmcp(f: &PlMap, fbar: &PlMap) -> Result<PmcpDecision> {
    if !f.same_domain(fbar) {
        return Err(Error::Domain("maps must share a domain".into()));
    }
    let xs = f.merged_xs(fbar);
    let diff: Vec<Rational> = xs.iter().map(|x| f.eval_unchecked(x) - fbar.eval_unchecked(x)).collect();
    let mut witness = Vec::new();
    let mut open: Option<Rational> = (!diff[0].is_zero()).then(|| xs[0].clone());
    for k in 0..xs.len() - 1 {
        let (d0, d1) = (&diff[k], &diff[k + 1]);
        if open.is_none() && d0.is_zero() && !d1.is_zero() {
            open = Some(xs[k].clone());
        }
        if !d0.is_zero() && !d1.is_zero() && d0.is_positive() != d1.is_positive() {
            let xc = &xs[k] + d0 * (&xs[k + 1] - &xs[k]) / (d0 - d1);
            if let Some(s) = open.take() {
                witness.push((s, xc.clone()));
            }
            open = Some(xc);
        }
        if d1.is_zero() {
            if let Some(s) = open.take() {
                witness.push((s, xs[k + 1].clone()));
            }
        }
    }
    if let Some(s) = open {
        witness.push((s, f.hi().clone()));
    }
    let holds = witness.iter().all(|(a, b)| {
        let level = fbar.eval_unchecked(a);
        fbar.eval_unchecked(b) == level
            && fbar.points().iter().filter(|p| p.x > *a && p.x < *b).all(|p| p.y == level)
    });
    Ok(PmcpDecision { holds, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{find_horseshoe, laps, markov_data};
    use crate::plmap::{make_broken_line, reflect_values};
    use crate::rational::half;

    fn line(pts: &[(i64, i64, i64, i64)]) -> PlMap {
        make_broken_line(pts.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d))).collect()).unwrap()
    }

    fn tent() -> PlMap {
        line(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)])
    }

    fn sawtooth20() -> PlMap {
        make_broken_line((0..=20).map(|i| (rat(i, 20), rat(i % 2, 1))).collect()).unwrap()
    }

    fn params(v: [i64; 5]) -> BoxParams {
        BoxParams::new(int(v[0]), int(v[1]), int(v[2]), int(v[3]), int(v[4])).unwrap()
    }

    #[test]
    fn partition_examples() {
        let p = unit_partition(&rat(3, 10)).unwrap();
        assert_eq!(p.s, 3);
        assert_eq!(
            p.intervals,
            vec![
                (zero(), rat(3, 10)),
                (rat(3, 10), rat(3, 5)),
                (rat(3, 5), rat(9, 10)),
                (rat(9, 10), one())
            ]
        );
        let p = unit_partition(&one()).unwrap();
        assert_eq!((p.s, p.intervals), (0, vec![(zero(), one())]));
        // exact divisor: 4 * (1/5) < 1 = 5 * (1/5)
        assert_eq!(unit_partition(&rat(1, 5)).unwrap().s, 4);
        assert!(matches!(unit_partition(&zero()), Err(Error::Parameter(_))));
        assert!(matches!(unit_partition(&rat(3, 2)), Err(Error::Parameter(_))));
    }

    #[test]
    fn box_map_reference_splice() {
        let xi = box_map(&zero(), &int(20), &params([3, 2, 0, 4, 20])).unwrap();
        assert!(xi.segments().all(|(a, b)| ((&b.y - &a.y) / (&b.x - &a.x)).abs() == int(4)));
        assert_eq!(xi.evaluate(&zero()).unwrap(), int(3));
        assert_eq!(xi.evaluate(&int(20)).unwrap(), int(2));
        assert_eq!(xi.range(), (zero(), int(4)));
        // The fifth decreasing lap of the forward sawtooth is [33/4, 37/4];
        // the backward one falls to 0 at 17/2 and climbs again, and the two
        // lines 4 - 4(x - 33/4) and 4(x - 17/2) meet at x = 71/8.
        assert!(xi.points().contains(&Point::new(rat(71, 8), rat(3, 2))));
        assert_eq!(laps(&xi).len(), 22);
    }

    #[test]
    fn box_map_full_sawtooth() {
        let xi = box_map(&zero(), &one(), &params([0, 0, 0, 1, 20])).unwrap();
        assert_eq!(xi, sawtooth20());
        assert!(matches!(
            BoxParams::new(zero(), zero(), zero(), one(), int(10)),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            BoxParams::new(int(2), zero(), zero(), one(), int(20)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn box_map_boundary_laps() {
        // a_l = a_t starts decreasing; a_r = a_t ends increasing
        let xi = box_map(&zero(), &one(), &params([1, 1, 0, 1, 21])).unwrap();
        let l = laps(&xi);
        assert_eq!(l.first().unwrap().direction, crate::entropy::Direction::Decreasing);
        assert_eq!(l.last().unwrap().direction, crate::entropy::Direction::Increasing);
        let p = BoxParams::new(rat(1, 3), rat(2, 7), zero(), one(), rat(45, 2)).unwrap();
        let xi = box_map(&zero(), &one(), &p).unwrap();
        let l = laps(&xi);
        assert_eq!(l.first().unwrap().direction, crate::entropy::Direction::Increasing);
        assert_eq!(l.last().unwrap().direction, crate::entropy::Direction::Decreasing);
        assert_eq!(xi.evaluate(&one()).unwrap(), rat(2, 7));
        let slope = rat(45, 2);
        assert!(xi.segments().all(|(a, b)| ((&b.y - &a.y) / (&b.x - &a.x)).abs() == slope));
        assert!(find_horseshoe(&xi, 18).is_some());
    }

    #[test]
    fn box_params_examples() {
        let p = box_params_for_interval(&PlMap::identity(), &zero(), &rat(3, 10), &int(20)).unwrap();
        assert_eq!(cell_scale(&PlMap::identity(), &zero(), &rat(3, 10)).unwrap(), rat(3, 10));
        assert_eq!((p.bottom, p.top, p.left, p.right), (zero(), one(), zero(), rat(3, 10)));
        let c = PlMap::unit_constant(half());
        let p = box_params_for_interval(&c, &zero(), &one(), &int(20)).unwrap();
        assert_eq!((p.bottom, p.top, p.left, p.right), (zero(), one(), half(), half()));
        assert!(matches!(
            box_params_for_interval(&c, &zero(), &one(), &int(19)),
            Err(Error::Parameter(_))
        ));
        // a narrow cell away from its image has a box that misses it
        let high = PlMap::unit_constant(one());
        let p = box_params_for_interval(&high, &zero(), &rat(1, 100), &int(20)).unwrap();
        assert_eq!(p.bottom, rat(24, 25));
    }

    #[test]
    fn h_alpha_endpoints() {
        let alpha = int(20);
        let t = tent();
        assert_eq!(homotopy_h_alpha(&t, &zero(), &alpha).unwrap(), t);
        let mid = homotopy_h_alpha(&t, &half(), &alpha).unwrap();
        assert_eq!(mid, box_map(&zero(), &one(), &params([0, 0, 0, 1, 20])).unwrap());
        let f = line(&[(0, 1, 1, 3), (1, 2, 1, 1), (1, 1, 1, 5)]);
        let mid = homotopy_h_alpha(&f, &half(), &alpha).unwrap();
        let expect = BoxParams::new(rat(1, 3), rat(1, 5), zero(), one(), int(20)).unwrap();
        assert_eq!(mid, box_map(&zero(), &one(), &expect).unwrap());
        let end = homotopy_h_alpha(&f, &one(), &alpha).unwrap();
        assert_eq!(end, sawtooth20());
        assert!(matches!(homotopy_h_alpha(&f, &half(), &int(10)), Err(Error::Parameter(_))));
    }

    /// Running max on a fine grid, the oracle for the envelope.
    fn grid_envelope(f: &PlMap, x: &Rational) -> Rational {
        let e = f.extremum();
        let (a, b) = (f.lo().clone(), f.hi().clone());
        let range = if *x <= e.c1 {
            f.extremum_data(&a, x).map(|d| d.max)
        } else if *x >= e.c2 {
            f.extremum_data(x, &b).map(|d| d.max)
        } else {
            Ok(e.max.clone())
        };
        range.unwrap_or_else(|_| f.eval_unchecked(x))
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(monotone_envelope(&tent()), tent());
        let f = line(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 2, 1, 4), (3, 4, 3, 4), (1, 1, 0, 1)]);
        let env = monotone_envelope(&f);
        assert_eq!(env, line(&[(0, 1, 0, 1), (1, 4, 1, 2), (5, 8, 1, 2), (3, 4, 3, 4), (1, 1, 0, 1)]));
        for k in 0..=64 {
            let x = rat(k, 64);
            assert_eq!(env.evaluate(&x).unwrap(), grid_envelope(&f, &x), "x = {x}");
        }
        let up = line(&[(0, 1, 1, 5), (1, 3, 1, 5), (1, 2, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(monotone_envelope(&up), up);
        // plateau between two equal peaks
        let twin = line(&[(0, 1, 0, 1), (1, 4, 1, 1), (1, 2, 0, 1), (3, 4, 1, 1), (1, 1, 1, 3)]);
        assert_eq!(
            monotone_envelope(&twin),
            line(&[(0, 1, 0, 1), (1, 4, 1, 1), (3, 4, 1, 1), (1, 1, 1, 3)])
        );
    }

    #[test]
    fn h1_examples() {
        let t = tent();
        assert_eq!(homotopy_h1(&t, &zero()).unwrap(), t);
        assert_eq!(homotopy_h1(&t, &half()).unwrap(), t);
        assert_eq!(homotopy_h1(&t, &one()).unwrap(), t);
        let w = line(&[(0, 1, 0, 1), (1, 4, 1, 1), (1, 2, 0, 1), (3, 4, 1, 1), (1, 1, 0, 1)]);
        let h = homotopy_h1(&w, &one()).unwrap();
        assert_eq!(h, line(&[(0, 1, 0, 1), (1, 4, 1, 1), (3, 4, 1, 1), (1, 1, 0, 1)]));
        assert!(laps(&homotopy_h1(&w, &rat(1, 3)).unwrap()).len() <= 3 * 3);
    }

    #[test]
    fn h2_examples() {
        let t = tent();
        assert_eq!(homotopy_h2(&t, &zero()).unwrap(), t);
        assert_eq!(homotopy_h2(&t, &one()).unwrap(), PlMap::unit_constant(one()));
        assert_eq!(
            homotopy_h2(&t, &half()).unwrap(),
            line(&[(0, 1, 1, 2), (1, 4, 1, 2), (1, 2, 1, 1), (3, 4, 1, 2), (1, 1, 1, 2)])
        );
    }

    #[test]
    fn h_examples() {
        let t = tent();
        assert_eq!(homotopy_h(&t, &zero()).unwrap(), t);
        assert_eq!(homotopy_h(&t, &one()).unwrap(), PlMap::unit_constant(zero()));
        assert_eq!(homotopy_h(&t, &rat(2, 3)).unwrap(), PlMap::unit_constant(one()));
        assert_eq!(homotopy_h(&t, &rat(5, 6)).unwrap(), PlMap::unit_constant(half()));
        assert!(matches!(homotopy_h(&t, &rat(4, 3)), Err(Error::Parameter(_))));
    }

    #[test]
    fn pmcp_examples() {
        let t = tent();
        for k in 0..=4 {
            let h2 = homotopy_h2(&t, &rat(k, 4)).unwrap();
            assert!(is_pmcp(&t, &h2).unwrap().holds);
        }
        let f = line(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 2, 1, 4), (3, 4, 3, 4), (1, 1, 0, 1)]);
        let d = is_pmcp(&f, &monotone_envelope(&f)).unwrap();
        assert!(d.holds);
        assert_eq!(d.witness, vec![(rat(1, 4), rat(5, 8))]);
        let d = is_pmcp(&t, &reflect_values(&t)).unwrap();
        assert!(!d.holds);
        assert_eq!(
            d.witness,
            vec![(zero(), rat(1, 4)), (rat(1, 4), rat(3, 4)), (rat(3, 4), one())]
        );
        assert!(is_pmcp(&t, &t).unwrap().witness.is_empty());
        let short = t.restrict(&zero(), &half()).unwrap();
        assert!(matches!(is_pmcp(&t, &short), Err(Error::Domain(_))));
    }

    #[test]
    fn sawtooth_stage_is_markov() {
        let h = homotopy_h_alpha(&tent(), &one(), &int(20)).unwrap();
        assert_eq!(markov_data(&h).unwrap().cells(), 20);
    }
}

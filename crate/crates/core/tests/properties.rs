use entroscope::entropy::{
    entropy_estimate_with, entropy_markov_with, entropy_upper_lap_with, find_horseshoe, lap_number, largest_horseshoe,
    spectral_radius, EntropyConfig,
};
use entroscope::homotopy::{
    box_map, homotopy_h, homotopy_h1, homotopy_h2, is_pmcp, monotone_envelope, unit_partition, BoxParams,
};
use entroscope::rational::{half, one, zero};
use entroscope::{affine_combine, make_broken_line, rat, reflect_values, PlMap, Rational};
use proptest::prelude::*;

fn small_rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |n| rat(n, d)))
}

/// Unit maps with 2 to 8 vertices at abscissas `i/64`.
fn unit_map() -> impl Strategy<Value = PlMap> {
    (prop::collection::btree_set(1..64i64, 0..7), prop::collection::vec(small_rational(16), 8)).prop_map(
        |(interior, ys)| {
            let mut xs = vec![0];
            xs.extend(interior);
            xs.push(64);
            let pts = xs.iter().zip(ys.iter().cycle()).map(|(&x, y)| (rat(x, 64), y.clone())).collect();
            make_broken_line(pts).unwrap()
        },
    )
}

/// Maps with a vertex at every grid point `i/q` and grid values: always
/// Markov.
fn grid_map() -> impl Strategy<Value = PlMap> {
    (2..=7i64).prop_flat_map(|q| {
        prop::collection::vec(0..=q, (q + 1) as usize).prop_map(move |ys| {
            make_broken_line(ys.iter().enumerate().map(|(i, &y)| (rat(i as i64, q), rat(y, q))).collect()).unwrap()
        })
    })
}

fn sample_points(f: &PlMap, g: &PlMap) -> Vec<Rational> {
    let mut xs = f.merged_xs(g);
    xs.extend((0..=16).map(|k| rat(k, 16)));
    xs.extend((0..=10).map(|k| rat(2 * k + 1, 21)));
    xs
}

fn cfg() -> EntropyConfig {
    EntropyConfig {
        breakpoint_cap: 20_000,
        ..EntropyConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_agrees_with_evaluation(f in unit_map(), g in unit_map()) {
        let fg = f.compose(&g).unwrap();
        for x in sample_points(&f, &g) {
            prop_assert_eq!(fg.evaluate(&x).unwrap(), f.evaluate(&g.evaluate(&x).unwrap()).unwrap());
        }
        prop_assert!(fg.is_unit_map());
    }

    #[test]
    fn sup_distance_is_a_metric(f in unit_map(), g in unit_map(), h in unit_map()) {
        let d = |a: &PlMap, b: &PlMap| a.sup_distance(b).unwrap();
        prop_assert_eq!(d(&f, &f), zero());
        prop_assert_eq!(d(&f, &g), d(&g, &f));
        prop_assert!(d(&f, &h) <= d(&f, &g) + d(&g, &h));
        prop_assert_eq!(d(&f, &g).is_zero_rational(), f == g);
        for x in sample_points(&f, &g) {
            let gap = (f.evaluate(&x).unwrap() - g.evaluate(&x).unwrap()).abs_rational();
            prop_assert!(gap <= d(&f, &g));
        }
    }

    #[test]
    fn canonical_form_is_idempotent(f in unit_map(), k in 0usize..8, t in small_rational(8)) {
        prop_assert_eq!(PlMap::from_points(f.points().to_vec()).unwrap(), f.clone());
        // Inserting a point on a segment does not change the map.
        let segs: Vec<_> = f.segments().collect();
        let (a, b) = segs[k % segs.len()];
        let x = &a.x + (&b.x - &a.x) * &t;
        let mut pts: Vec<(Rational, Rational)> = f.points().iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        if !pts.iter().any(|(px, _)| *px == x) {
            pts.push((x.clone(), f.evaluate(&x).unwrap()));
            pts.sort();
        }
        prop_assert_eq!(make_broken_line(pts).unwrap(), f);
    }

    #[test]
    fn self_maps_have_fixed_points(f in unit_map()) {
        let fixed = f.fixed_points().unwrap();
        prop_assert!(!fixed.components.is_empty());
        for (a, b) in &fixed.components {
            prop_assert!(a <= b);
            prop_assert_eq!(&f.evaluate(a).unwrap(), a);
            prop_assert_eq!(&f.evaluate(b).unwrap(), b);
        }
    }

    #[test]
    fn restrict_then_glue_is_identity(f in unit_map(), c in 1..64i64) {
        let c = rat(c, 64);
        let left = f.restrict(&zero(), &c).unwrap();
        let right = f.restrict(&c, &one()).unwrap();
        prop_assert_eq!(PlMap::glue(&[left, right]).unwrap(), f);
    }

    #[test]
    fn midpoint_with_reflection_is_constant(f in unit_map()) {
        let mid = affine_combine(&half(), &f, &half(), &reflect_values(&f), &zero()).unwrap();
        prop_assert_eq!(mid, PlMap::unit_constant(half()));
    }

    #[test]
    fn lap_numbers_are_submultiplicative(f in unit_map(), n in 1usize..4, m in 1usize..4) {
        let l = |k: usize| lap_number(&f.iterate_with_cap(k, 20_000).unwrap()) as u64;
        prop_assert!(l(n + m) <= l(n) * l(m));
    }

    #[test]
    fn conjugate_maps_share_lap_traces(f in unit_map()) {
        let flip = make_broken_line(vec![(zero(), one()), (one(), zero())]).unwrap();
        let conj = flip.compose(&f.compose(&flip).unwrap()).unwrap();
        let trace = |g: &PlMap| -> Vec<u64> {
            entropy_upper_lap_with(g, 5, &cfg()).unwrap().trace.iter().map(|t| t.laps).collect()
        };
        prop_assert_eq!(trace(&f), trace(&conj));
    }

    #[test]
    fn lap_trace_running_minimum_decreases(f in unit_map()) {
        let est = entropy_upper_lap_with(&f, 6, &cfg()).unwrap();
        let mut running = f64::INFINITY;
        for t in &est.trace {
            let next = running.min(t.value);
            prop_assert!(next <= running);
            running = next;
        }
        prop_assert_eq!(running, est.upper);
    }

    #[test]
    fn envelope_lemma(f in unit_map(), g in unit_map(), c in 1..64i64) {
        let ef = monotone_envelope(&f);
        prop_assert_eq!(ef.evaluate(&zero()).unwrap(), f.evaluate(&zero()).unwrap());
        prop_assert_eq!(ef.evaluate(&one()).unwrap(), f.evaluate(&one()).unwrap());
        let (lo, hi) = f.range();
        let (elo, ehi) = ef.range();
        prop_assert!(lo <= elo && ehi == hi);
        prop_assert!(ef.sup_distance(&monotone_envelope(&g)).unwrap() <= f.sup_distance(&g).unwrap());
        prop_assert!(lap_number(&ef) <= 2);
        prop_assert_eq!(monotone_envelope(&ef), ef.clone());
        prop_assert!(is_pmcp(&f, &ef).unwrap().holds);
        // Oracle: on the rising side the envelope is the running maximum.
        let e = f.extremum();
        for k in 1..=32 {
            let x = rat(k, 32);
            if x <= e.c1 {
                prop_assert_eq!(ef.evaluate(&x).unwrap(), f.extremum_data(&zero(), &x).unwrap().max);
            }
        }
        let c = rat(c, 64);
        let left = f.restrict(&zero(), &c).unwrap();
        let right = f.restrict(&c, &one()).unwrap();
        let amplitude = left.extremum().amplitude().min(right.extremum().amplitude());
        let split = PlMap::glue(&[monotone_envelope(&left), monotone_envelope(&right)]).unwrap();
        prop_assert!(ef.sup_distance(&split).unwrap() <= amplitude);
    }

    #[test]
    fn h1_contracts_and_stays_piecewise_monotone(f in unit_map(), g in unit_map(), t in 1..=32i64) {
        let t = rat(t, 32);
        let hf = homotopy_h1(&f, &t).unwrap();
        let hg = homotopy_h1(&g, &t).unwrap();
        prop_assert!(hf.sup_distance(&hg).unwrap() <= f.sup_distance(&g).unwrap());
        let cells = unit_partition(&t).unwrap().intervals.len();
        prop_assert!(lap_number(&hf) <= 3 * cells);
        prop_assert!(is_pmcp(&f, &hf).unwrap().holds);
    }

    #[test]
    fn h2_makes_constant_pieces(f in unit_map(), t in 0..=8i64) {
        let t = rat(t, 8);
        let h = homotopy_h2(&f, &t).unwrap();
        prop_assert!(is_pmcp(&f, &h).unwrap().holds);
        prop_assert!(h.sup_distance(&f).unwrap() <= f.extremum().amplitude() * &t);
    }

    #[test]
    fn joined_homotopy_endpoints(f in unit_map()) {
        prop_assert_eq!(homotopy_h(&f, &zero()).unwrap(), f.clone());
        prop_assert_eq!(homotopy_h(&f, &one()).unwrap(), PlMap::unit_constant(zero()));
        prop_assert_eq!(homotopy_h(&f, &rat(1, 3)).unwrap(), monotone_envelope(&f));
    }

    #[test]
    fn box_maps_are_steep_surjections(
        bottom in 0..8i64, height in 1..8i64, l in 0..=16i64, r in 0..=16i64, steep in 20..=40i64, width in 1..4i64
    ) {
        let (bottom, top) = (rat(bottom, 8), rat(bottom + height, 8).min(one()));
        prop_assume!(bottom < top);
        let at = |k: i64| &bottom + (&top - &bottom) * rat(k, 16);
        let p = BoxParams::new(at(l), at(r), bottom.clone(), top.clone(), rat(steep, 1)).unwrap();
        let hi = rat(width, 4);
        let xi = box_map(&zero(), &hi, &p).unwrap();
        let slope = rat(steep, 1) * (&top - &bottom) / &hi;
        for (a, b) in xi.segments() {
            prop_assert_eq!(((&b.y - &a.y) / (&b.x - &a.x)).abs_rational(), slope.clone());
        }
        prop_assert_eq!(xi.evaluate(&zero()).unwrap(), at(l));
        prop_assert_eq!(xi.evaluate(&hi).unwrap(), at(r));
        prop_assert_eq!(xi.range(), (bottom, top));
        prop_assert!(lap_number(&xi) as i64 >= steep - 2);
    }

    #[test]
    fn unit_box_maps_carry_big_horseshoes(l in 0..=16i64, r in 0..=16i64, steep in 20..=40i64) {
        let p = BoxParams::new(rat(l, 16), rat(r, 16), zero(), one(), rat(steep, 1)).unwrap();
        let xi = box_map(&zero(), &one(), &p).unwrap();
        let h = find_horseshoe(&xi, (steep - 4) as usize);
        prop_assert!(h.as_ref().is_some_and(|h| h.verify(&xi)));
    }

    #[test]
    fn found_horseshoes_verify(f in unit_map()) {
        if let Some(h) = largest_horseshoe(&f) {
            prop_assert!(h.size() >= 2);
            prop_assert!(h.verify(&f));
        }
    }

    #[test]
    fn markov_entropy_sits_between_bounds(f in grid_map()) {
        let c = cfg();
        let m = entropy_markov_with(&f, 1e-9, &c);
        prop_assert!(m.is_some());
        let m = m.unwrap();
        let lap = entropy_upper_lap_with(&f, 6, &c).unwrap().upper;
        prop_assert!(m <= lap + 1e-9);
        let est = entropy_estimate_with(&f, 6, 16, 1e-9, &c).unwrap();
        prop_assert!(est.lower <= m + 1e-9 && m - 1e-9 <= est.upper);
        if let Some(h) = est.horseshoe {
            prop_assert!(h.value <= m + 1e-9);
        }
    }

    #[test]
    fn perron_root_matches_growth_of_powers(
        n in 1usize..6, bits in prop::collection::vec(any::<bool>(), 36)
    ) {
        let a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| bits[i * 6 + j] as u64).collect()).collect();
        let root = spectral_radius(&a, 1e-9).unwrap();
        // Oracle: log of the entry sum of A^k grows like k log(rho) up to
        // O(n log k), tracked in log scale.
        let k = 2000;
        let mut v: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let mut log_scale = 0.0f64;
        let mut total = 0.0;
        for _ in 1..k {
            let next: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|l| v[i][l] * a[l][j] as f64).sum()).collect())
                .collect();
            total = next.iter().flatten().sum::<f64>();
            if total == 0.0 {
                break;
            }
            log_scale += total.ln();
            v = next.iter().map(|r| r.iter().map(|x| x / total).collect()).collect();
        }
        if total == 0.0 {
            prop_assert!(root.value() < 1e-6);
        } else {
            let growth = log_scale / (k - 1) as f64;
            let slack = ((n * n) as f64).ln() / k as f64 + n as f64 * (k as f64).ln() / k as f64;
            prop_assert!((root.value().max(1e-300).ln() - growth).abs() <= slack + 1e-6,
                "rho {} vs growth {}", root.value(), growth.exp());
        }
    }
}

trait ExactExt {
    fn is_zero_rational(&self) -> bool;
    fn abs_rational(&self) -> Rational;
}

impl ExactExt for Rational {
    fn is_zero_rational(&self) -> bool {
        *self == zero()
    }
    fn abs_rational(&self) -> Rational {
        if *self < zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

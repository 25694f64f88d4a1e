mod common;

use colorful_selection::constructions::{figure_one, generate, GeneratorSpec};
use colorful_selection::depth::*;
use colorful_selection::rational::{int, ratio};
use colorful_selection::{ColoredPointSet, Error, Point};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn p(x: i64, y: i64) -> Point {
    Point::from_ints(&[x, y])
}

fn tri_set(a: Point, b: Point, c: Point) -> ColoredPointSet {
    ColoredPointSet::new(2, vec![vec![a], vec![b], vec![c]]).unwrap()
}

#[test]
fn figure_one_golden_count() {
    let (cps, q) = figure_one();
    let brute = colorful_depth_bruteforce(&cps, &q).unwrap();
    let sweep = colorful_depth_sweep2d(&cps, &q).unwrap();
    // The figure shades six triangles; exhaustive enumeration finds ten.
    assert_eq!((brute.count, brute.total), (10, 27));
    assert_eq!((sweep.count, sweep.total), (10, 27));
    assert_eq!(brute.fraction, ratio(10, 27));
    assert_eq!(oracle_depth(&cps, &q), 10);
    assert!(brute.count >= 6);
    assert_eq!(brute.method, DepthMethod::BruteForce);
    assert_eq!(sweep.method, DepthMethod::Sweep2D);
}

#[test]
fn small_examples() {
    let cps = tri_set(p(0, 0), p(3, 0), p(0, 3));
    assert_eq!(colorful_depth_bruteforce(&cps, &p(1, 1)).unwrap().count, 1);
    assert_eq!(colorful_depth_bruteforce(&cps, &p(1, 1)).unwrap().total, 1);

    let cps = tri_set(p(1, 0), p(0, 1), p(1, 1));
    assert_eq!(colorful_depth_bruteforce(&cps, &p(0, 0)).unwrap().count, 0);
    assert_eq!(colorful_depth_sweep2d(&cps, &p(0, 0)).unwrap().count, 0);

    let cps = tri_set(p(1, 0), p(-1, 1), p(-1, -1));
    assert_eq!(colorful_depth_sweep2d(&cps, &p(0, 0)).unwrap().count, 1);
}

#[test]
fn depth_errors() {
    let cps = tri_set(p(0, 0), p(1, 1), p(2, 2));
    assert!(matches!(
        colorful_depth_bruteforce(&cps, &p(5, 0)),
        Err(Error::GeneralPositionViolation { .. })
    ));
    let cps = tri_set(p(0, 0), p(4, 0), p(0, 4));
    // query on the line through the first two points
    assert_eq!(
        colorful_depth_sweep2d(&cps, &p(2, 0)),
        Err(Error::GeneralPositionViolation { witness: vec![0, 1, 3] })
    );
    assert!(matches!(colorful_depth_sweep2d(&cps, &p(0, 0)), Err(Error::GeneralPositionViolation { .. })));
    let cube = ColoredPointSet::new(
        3,
        vec![
            vec![Point::from_ints(&[0, 0, 0])],
            vec![Point::from_ints(&[1, 0, 0])],
            vec![Point::from_ints(&[0, 1, 0])],
            vec![Point::from_ints(&[0, 0, 1])],
        ],
    )
    .unwrap();
    let q = Point::new(vec![ratio(1, 8), ratio(1, 8), ratio(1, 8)]).unwrap();
    assert_eq!(colorful_depth_sweep2d(&cube, &q), Err(Error::DimensionNotTwo(3)));
    assert_eq!(colorful_depth_bruteforce(&cube, &q).unwrap().count, 1);
    assert!(matches!(max_depth_exact2d(&cube), Err(Error::DimensionNotTwo(3))));
    let empty = ColoredPointSet::new(2, vec![vec![p(0, 0)], vec![], vec![p(0, 1)]]).unwrap();
    assert_eq!(colorful_depth_bruteforce(&empty, &p(5, 5)), Err(Error::EmptyClass(1)));
    assert!(matches!(colorful_depth_bruteforce(&cps, &Point::from_ints(&[1])), Err(Error::DimensionMismatch(_))));
}

#[test]
fn monochromatic_examples() {
    let tri = [p(0, 0), p(3, 0), p(0, 3)];
    let r = monochromatic_depth_bruteforce(&tri, &p(1, 1)).unwrap();
    assert_eq!((r.count, r.total), (1, 1));
    // square plus a point off both diagonals: two of the four triangles
    let square = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
    let q = Point::new(vec![int(1), ratio(6, 7)]).unwrap();
    let r = monochromatic_depth_bruteforce(&square, &q).unwrap();
    assert_eq!((r.count, r.total), (2, 4));
    assert_eq!(monochromatic_depth_bruteforce(&square, &p(5, 3)).unwrap().count, 0);
    assert!(matches!(
        monochromatic_depth_bruteforce(&square, &p(1, 1)),
        Err(Error::GeneralPositionViolation { .. })
    ));
}

#[test]
fn bruteforce_matches_barycentric_oracle_in_three_dimensions() {
    let mut rng = rng(3);
    for _ in 0..20 {
        let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
        let cps = random_instance(&mut rng, 3, &sizes);
        let q = random_query(&mut rng, &cps, 8);
        assert_eq!(colorful_depth_bruteforce(&cps, &q).unwrap().count, oracle_depth(&cps, &q));
    }
}

#[test]
fn sweep_matches_bruteforce_on_random_instances() {
    let mut rng = rng(11);
    for _ in 0..200 {
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=15)).collect();
        let cps = random_instance(&mut rng, 2, &sizes);
        let q = random_query(&mut rng, &cps, 15);
        let brute = colorful_depth_bruteforce(&cps, &q).unwrap();
        let sweep = colorful_depth_sweep2d(&cps, &q).unwrap();
        assert_eq!(brute.count, sweep.count);
        assert_eq!(brute.total, sweep.total);
    }
}

#[test]
fn exact_maximum_on_figure_one_is_frozen() {
    let (cps, _) = figure_one();
    let m = max_depth_exact2d(&cps).unwrap();
    assert_eq!(m.depth.count, 10);
    assert_eq!(m.method, SearchMethod::Arrangement2D);
    assert_eq!(m.depth.query, m.point);
    assert_eq!(oracle_depth(&cps, &m.point), 10);
    assert_eq!(m, max_depth_exact2d(&cps).unwrap());
}

#[test]
fn exact_maximum_single_tuple() {
    let cps = tri_set(p(0, 0), p(5, 1), p(2, 7));
    let m = max_depth_exact2d(&cps).unwrap();
    assert_eq!(m.depth.count, 1);
    assert!(colorful_selection::contains(
        &colorful_selection::Simplex::new(cps.points().cloned().collect()).unwrap(),
        &m.point
    )
    .unwrap());
}

#[test]
fn exact_maximum_dominates_dense_grid() {
    let mut rng = rng(5);
    for _ in 0..8 {
        let cps = random_instance(&mut rng, 2, &[3, 3, 3]);
        let exact = max_depth_exact2d(&cps).unwrap();
        assert_eq!(oracle_depth(&cps, &exact.point), exact.depth.count);
        let mut grid_best = 0;
        for i in -40..=40 {
            for j in -40..=40 {
                // offset keeps probes off the integer/eighths lattice
                let q = Point::new(vec![ratio(2 * i + 1, 4) + ratio(1, 997), ratio(2 * j + 1, 4) + ratio(1, 991)]).unwrap();
                if let Ok(d) = colorful_depth_sweep2d(&cps, &q) {
                    grid_best = grid_best.max(d.count);
                }
            }
        }
        assert!(grid_best <= exact.depth.count, "grid {grid_best} > exact {}", exact.depth.count);
    }
}

#[test]
fn exact_maximum_meets_selection_bound() {
    for n in 3..=6 {
        for seed in 0..5 {
            let cps = generate(&GeneratorSpec::uniform(2, n, seed)).unwrap();
            let m = max_depth_exact2d(&cps).unwrap();
            assert!(9 * m.depth.count >= 2 * (n as u64).pow(3));
        }
    }
}

#[test]
fn heuristics() {
    let mut rng = rng(8);
    let cps = random_instance(&mut rng, 2, &[4, 4, 4]);
    let exact = max_depth_exact2d(&cps).unwrap();
    for strategy in [HeuristicStrategy::CentroidHeuristic, HeuristicStrategy::LocalSearch] {
        let h = max_depth_heuristic(&cps, strategy, 60, 9).unwrap();
        assert!(h.depth.count <= exact.depth.count);
        assert!(h.candidates_evaluated <= 60);
        assert_eq!(h, max_depth_heuristic(&cps, strategy, 60, 9).unwrap());
        assert_eq!(oracle_depth(&cps, &h.point), h.depth.count);
    }

    let single = tri_set(p(0, 0), p(6, 0), p(0, 6));
    let h = max_depth_heuristic(&single, HeuristicStrategy::CentroidHeuristic, 1, 0).unwrap();
    assert_eq!(h.point, p(2, 2));
    assert_eq!(h.depth.count, 1);
    assert_eq!(h.method, SearchMethod::CentroidHeuristic);
    assert_eq!(max_depth_heuristic(&single, HeuristicStrategy::LocalSearch, 0, 0), Err(Error::NonpositiveBudget));
}

#[test]
fn local_search_improves_in_three_dimensions() {
    let mut rng = rng(21);
    let cps = random_instance(&mut rng, 3, &[3, 3, 3, 3]);
    let c = max_depth_heuristic(&cps, HeuristicStrategy::CentroidHeuristic, 20, 4).unwrap();
    let l = max_depth_heuristic(&cps, HeuristicStrategy::LocalSearch, 40, 4).unwrap();
    assert!(l.depth.count >= c.depth.count);
    assert_eq!(l.method, SearchMethod::LocalSearch);
    assert_eq!(colorful_depth_bruteforce(&cps, &l.point).unwrap().count, l.depth.count);
}

#[test]
fn selection_bound_reports() {
    let (cps, _) = figure_one();
    let r = verify_selection_bound(&cps, VerifyMode::Exact2D).unwrap();
    assert_eq!(r.bound_value, int(6));
    assert_eq!(r.max_found, 10);
    assert!(r.satisfied && r.balanced);

    let single = tri_set(p(0, 0), p(6, 0), p(0, 6));
    let r = verify_selection_bound(&single, VerifyMode::Exact2D).unwrap();
    assert_eq!(r.bound_value, ratio(2, 9));
    assert!(r.satisfied);

    let mode = VerifyMode::Heuristic { strategy: HeuristicStrategy::LocalSearch, budget: 30, seed: 1 };
    let r = verify_selection_bound(&cps, mode).unwrap();
    assert_eq!(r.bound_value, int(6));
    assert!(r.max_found <= 10);

    let unbalanced = ColoredPointSet::new(2, vec![vec![p(0, 0), p(1, 4)], vec![p(6, 0)], vec![p(0, 6)]]).unwrap();
    let r = verify_selection_bound(&unbalanced, VerifyMode::Exact2D).unwrap();
    assert!(!r.balanced);
    assert_eq!(r.bound_value, ratio(4, 9));
}

fn shuffled(cps: &ColoredPointSet, rng: &mut rand_chacha::ChaCha8Rng) -> ColoredPointSet {
    let mut classes = cps.classes().to_vec();
    for c in classes.iter_mut() {
        c.shuffle(rng);
    }
    ColoredPointSet::new(cps.dim(), classes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn invariances(seed in any::<u64>(), n0 in 1usize..6, n1 in 1usize..6, n2 in 1usize..6) {
        let mut rng = rng(seed);
        let cps = random_instance(&mut rng, 2, &[n0, n1, n2]);
        let q = random_query(&mut rng, &cps, 12);
        let base = colorful_depth_sweep2d(&cps, &q).unwrap().count;
        prop_assert_eq!(base, colorful_depth_bruteforce(&cps, &q).unwrap().count);

        // class relabeling
        let mut classes = cps.classes().to_vec();
        classes.rotate_left(1);
        classes.swap(0, 1);
        let relabeled = ColoredPointSet::new(2, classes).unwrap();
        prop_assert_eq!(colorful_depth_sweep2d(&relabeled, &q).unwrap().count, base);

        // within-class order
        prop_assert_eq!(colorful_depth_sweep2d(&shuffled(&cps, &mut rng), &q).unwrap().count, base);

        // affine maps
        let map = Affine::random(&mut rng, 2);
        let moved = cps.map_points(|p| map.apply(p));
        prop_assert_eq!(colorful_depth_bruteforce(&moved, &map.apply(&q)).unwrap().count, base);

        // growth never decreases depth
        let class = rng.gen_range(0..3);
        let mut grown = cps.classes().to_vec();
        let extra = random_point(&mut rng, 2, 20);
        grown[class].push(extra);
        let grown = ColoredPointSet::new(2, grown).unwrap();
        if colorful_selection::general_position_check(&grown, Some(&q)).ok {
            prop_assert!(colorful_depth_sweep2d(&grown, &q).unwrap().count >= base);
        }
    }

    #[test]
    fn outside_the_hull_depth_is_zero(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cps = random_instance(&mut rng, 2, &[3, 4, 2]);
        // all coordinates are within [-20, 20]
        let q = Point::new(vec![ratio(41, 1), random_rational(&mut rng, 30)]).unwrap();
        prop_assume!(colorful_selection::general_position_check(&cps, Some(&q)).ok);
        prop_assert_eq!(colorful_depth_sweep2d(&cps, &q).unwrap().count, 0);
        prop_assert_eq!(colorful_depth_bruteforce(&cps, &q).unwrap().count, 0);
    }

    #[test]
    fn exact_maximum_dominates_random_probes(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
        let cps = random_instance(&mut rng, 2, &sizes);
        let best = max_depth_exact2d(&cps).unwrap().depth.count;
        for _ in 0..100 {
            let q = random_point(&mut rng, 2, 20);
            if let Ok(d) = colorful_depth_sweep2d(&cps, &q) {
                prop_assert!(d.count <= best);
            }
        }
    }
}

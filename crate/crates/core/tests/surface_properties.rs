use gentle_topo::algebra::{make_an, AnForm};
use gentle_topo::presentation::read_algebra;
use gentle_topo::random::{random_gentle, RandomConfig};
use gentle_topo::surface::{arc_of, build_surface, forbidden_threads, SurfaceModel};
use gentle_topo::{Error, GentleAlgebra};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw(seed: u64) -> GentleAlgebra {
    random_gentle(&mut ChaCha8Rng::seed_from_u64(seed), &RandomConfig::default())
}

fn sorted_boundaries(m: &SurfaceModel) -> Vec<(usize, i64)> {
    let mut v: Vec<_> = m.boundaries().iter().map(|b| (b.marked_count(), b.winding)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn counts_and_euler_characteristic(seed in any::<u64>()) {
        let a = draw(seed);
        let m = build_surface(&a).unwrap();
        let (q0, q1) = (a.vertex_count() as i64, a.arrow_count() as i64);
        let (g, b) = (m.genus() as i64, m.boundaries().len() as i64);
        let marked = m.marked_points().len() as i64;
        prop_assert_eq!(marked, 2 * q0 - q1);
        prop_assert_eq!(q0, marked + b + 2 * g - 2);
        prop_assert_eq!(m.euler(), 2 - 2 * g - b);
        let per_boundary: usize = m.boundaries().iter().map(|c| c.marked_count()).sum();
        prop_assert_eq!(per_boundary as i64, marked);
    }

    #[test]
    fn every_side_and_arrow_used_once(seed in any::<u64>()) {
        let a = draw(seed);
        let m = build_surface(&a).unwrap();
        let mut sides: Vec<usize> = m.polygons().iter().flat_map(|p| p.sides.iter().copied()).collect();
        sides.sort();
        prop_assert_eq!(sides, (0..2 * a.vertex_count()).collect::<Vec<_>>());
        let mut in_polygons: Vec<usize> = m.polygons().iter().flat_map(|p| p.angles.iter().copied()).collect();
        let mut in_fans: Vec<usize> = m.marked_points().iter().flat_map(|p| p.angles.iter().copied()).collect();
        in_polygons.sort();
        in_fans.sort();
        let all: Vec<usize> = (0..a.arrow_count()).collect();
        prop_assert_eq!(&in_polygons, &all);
        prop_assert_eq!(&in_fans, &all);
        for (i, p) in m.marked_points().iter().enumerate() {
            prop_assert_eq!(p.angles.len() + 1, p.fan.len());
            for &h in &p.fan {
                prop_assert_eq!(m.point_of(h), i);
            }
        }
    }

    #[test]
    fn polygons_are_forbidden_threads(seed in any::<u64>()) {
        let a = draw(seed);
        let m = build_surface(&a).unwrap();
        let threads = forbidden_threads(&a).unwrap();
        prop_assert_eq!(threads.len(), m.polygons().len());
        let mut from_polygons: Vec<Vec<usize>> = m.polygons().iter().map(|p| p.angles.clone()).collect();
        let mut from_threads: Vec<Vec<usize>> = threads.iter().map(|t| t.arrows.clone()).collect();
        from_polygons.sort();
        from_threads.sort();
        prop_assert_eq!(from_polygons, from_threads);
        for p in m.polygons() {
            // consecutive angles of a polygon compose to zero
            for w in p.angles.windows(2) {
                prop_assert!(a.is_relation(w[0], w[1]));
            }
            for (t, &x) in p.angles.iter().enumerate() {
                prop_assert_eq!(arc_of(p.sides[t]), a.arrow(x).source);
                prop_assert_eq!(arc_of(p.sides[t + 1]), a.arrow(x).target);
            }
        }
    }

    #[test]
    fn regrading_keeps_topology_and_total_winding(seed in any::<u64>()) {
        let a = draw(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let degrees: Vec<i64> = (0..a.arrow_count()).map(|_| rng.gen_range(-7..=7)).collect();
        let b = a.with_degrees(&degrees);
        let (ma, mb) = (build_surface(&a).unwrap(), build_surface(&b).unwrap());
        prop_assert_eq!(ma.topology_summary(), mb.topology_summary());
        let total = |m: &SurfaceModel| m.boundaries().iter().map(|c| c.winding).sum::<i64>();
        prop_assert_eq!(total(&ma), 2 * ma.euler());
        prop_assert_eq!(total(&mb), 2 * mb.euler());
    }

    #[test]
    fn relabeling_keeps_the_model(seed in any::<u64>()) {
        let a = draw(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(3));
        let mut vp: Vec<usize> = (0..a.vertex_count()).collect();
        let mut ap: Vec<usize> = (0..a.arrow_count()).collect();
        vp.shuffle(&mut rng);
        ap.shuffle(&mut rng);
        let b = a.relabeled(&vp, &ap);
        let (ma, mb) = (build_surface(&a).unwrap(), build_surface(&b).unwrap());
        prop_assert_eq!(ma.genus(), mb.genus());
        prop_assert_eq!(sorted_boundaries(&ma), sorted_boundaries(&mb));
        let sizes = |m: &SurfaceModel| {
            let mut s: Vec<usize> = m.polygons().iter().map(|p| p.sides.len()).collect();
            s.sort();
            s
        };
        prop_assert_eq!(sizes(&ma), sizes(&mb));
    }
}

#[test]
fn single_vertex_is_a_disk_with_two_points() {
    let m = build_surface(&read_algebra("vertex 1\n").unwrap()).unwrap();
    assert_eq!(m.topology_summary(), (0, 1, vec![2]));
    assert_eq!(m.boundary_winding(0).unwrap(), 2);
    assert_eq!(m.polygons().len(), 2);
}

#[test]
fn linear_quivers_are_disks() {
    for n in 2..7 {
        let mut text = String::new();
        for v in 1..=n {
            text += &format!("vertex {v}\n");
        }
        for v in 1..n {
            text += &format!("arrow x{v} {v} {} 0\n", v + 1);
        }
        let m = build_surface(&read_algebra(&text).unwrap()).unwrap();
        assert_eq!(m.topology_summary(), (0, 1, vec![n + 1]));
        assert_eq!(m.boundary_winding(0).unwrap(), 2);
    }
}

#[test]
fn kronecker_is_an_annulus() {
    let m = build_surface(&read_algebra("vertex 1\nvertex 2\narrow x 1 2 0\narrow y 1 2 0\n").unwrap()).unwrap();
    assert_eq!(m.genus(), 0);
    let (_, b, mut marked) = m.topology_summary();
    marked.sort();
    assert_eq!((b, marked), (2, vec![1, 1]));
}

#[test]
fn canonical_family_boundary() {
    for n in 1..=5 {
        let m = build_surface(&make_an(&AnForm { pairs: vec![(0, 0); n] })).unwrap();
        assert_eq!(m.topology_summary(), (n, 1, vec![1]));
        assert_eq!(m.boundary_winding(0).unwrap(), 2 - 4 * n as i64);
    }
}

#[test]
fn rejected_inputs() {
    let looped = read_algebra("vertex 1\narrow x 1 1 0\nrel x x\n").unwrap();
    assert!(matches!(build_surface(&looped), Err(Error::UnsupportedLoop(_))));
    let split = read_algebra("vertex 1\nvertex 2\n").unwrap();
    assert!(matches!(build_surface(&split), Err(Error::Disconnected(2))));
    let cyclic = read_algebra("vertex 1\nvertex 2\narrow x 1 2 0\narrow y 2 1 0\n").unwrap();
    assert!(matches!(build_surface(&cyclic), Err(Error::NotProper(_))));
    let thread = read_algebra("vertex 1\nvertex 2\narrow x 1 2 0\narrow y 2 1 0\nrel x y\nrel y x\n").unwrap();
    assert!(matches!(build_surface(&thread), Err(Error::NotSmooth(_))));
}

#[test]
fn dot_output_lists_every_arc() {
    let a = make_an(&"1,2;3,4".parse().unwrap());
    let dot = build_surface(&a).unwrap().to_dot();
    assert!(dot.contains("graph marked_points {") && dot.contains("graph polygons {"));
    for v in 1..=4 {
        // once as an edge of each graph
        assert_eq!(dot.matches(&format!("[label=\"{v}\"]")).count(), 2, "{dot}");
    }
}

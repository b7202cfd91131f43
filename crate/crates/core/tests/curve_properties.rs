use gentle_topo::algebra::make_an;
use gentle_topo::curves::{
    boundary_push_in, curve_pool, cycle_winding, dual_loop_across, enumerate_embedded_cycles, find_symplectic_basis,
    homology, intersection_number, push_off, SearchOptions,
};
use gentle_topo::intmat::{smith_normal_form, IntMatrix};
use gentle_topo::random::{random_gentle, RandomConfig};
use gentle_topo::surface::build_surface;
use gentle_topo::{Error, GentleAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn draw(seed: u64) -> GentleAlgebra {
    random_gentle(&mut ChaCha8Rng::seed_from_u64(seed), &RandomConfig::default())
}

fn mod2(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| x.rem_euclid(2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn reversal_negates_windings(seed in any::<u64>()) {
        let a = draw(seed);
        let m = build_surface(&a).unwrap();
        for i in 0..m.boundaries().len() {
            let w = boundary_push_in(&m, i).unwrap();
            prop_assert_eq!(w.winding(&m), m.boundaries()[i].winding);
            prop_assert_eq!(w.reversed().winding(&m), -w.winding(&m));
        }
        for j in 0..m.arc_count() {
            if let Ok(w) = dual_loop_across(&m, j) {
                prop_assert_eq!(w.reversed().winding(&m), -w.winding(&m));
            }
        }
        for c in enumerate_embedded_cycles(&m, 5).into_iter().take(30) {
            prop_assert!(c.is_embedded(&m));
            let w = cycle_winding(&m, &c).unwrap();
            prop_assert_eq!(cycle_winding(&m, &c.reversed()).unwrap(), -w);
            prop_assert_eq!(push_off(&m, &c).unwrap().winding(&m), w);
        }
    }

    #[test]
    fn boundaries_are_null_homologous(seed in any::<u64>()) {
        let m = build_surface(&draw(seed)).unwrap();
        let h = homology(&m).unwrap();
        prop_assert_eq!(h.rank(), 2 * m.genus());
        for i in 0..m.boundaries().len() {
            prop_assert!(h.boundary_class(&m, i).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn intersection_form_is_symplectic(seed in any::<u64>()) {
        let m = build_surface(&draw(seed)).unwrap();
        prop_assume!(m.genus() > 0);
        let h = homology(&m).unwrap();
        let pool = curve_pool(&m, &h, m.arc_count()).unwrap();
        let k = pool.cycles.len().min(40);
        for i in 0..k {
            prop_assert_eq!(pool.gram[i][i], 0);
            for j in 0..k {
                prop_assert_eq!(pool.gram[i][j], -pool.gram[j][i]);
                if i < 4 && j < 4 {
                    let direct = intersection_number(&m, &pool.cycles[i], &pool.cycles[j]).unwrap();
                    prop_assert_eq!(direct, pool.gram[i][j]);
                }
                // the pairing depends only on homology classes
                if pool.classes[i] == pool.classes[j] {
                    prop_assert_eq!(&pool.gram[i], &pool.gram[j]);
                }
            }
        }
        // embedded cycles span H1 and the pairing on H1 is unimodular
        let g = IntMatrix::from_rows(&pool.gram);
        let s = smith_normal_form(&g);
        prop_assert_eq!(s.rank, 2 * m.genus());
        prop_assert!(s.diagonal().iter().take(s.rank).all(|&d| d.abs() == 1));
    }
}

/// Expresses every mod-2 class as a sum of pool members; `None` for classes
/// outside the span. Returns the chosen basis and, per pool member, the
/// indices of the basis members summing to it.
fn mod2_expansions(classes: &[Vec<i64>]) -> (Vec<usize>, Vec<Option<Vec<usize>>>) {
    // reduced rows: (pivot, vector, combination of basis positions)
    let mut rows: Vec<(usize, Vec<i64>, Vec<bool>)> = Vec::new();
    let mut basis = Vec::new();
    let reduce = |rows: &[(usize, Vec<i64>, Vec<bool>)], v: &[i64], width: usize| {
        let mut v = mod2(v);
        let mut comb = vec![false; width];
        for (p, r, c) in rows {
            if v[*p] == 1 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + y) % 2;
                }
                for (x, y) in comb.iter_mut().zip(c) {
                    *x ^= y;
                }
            }
        }
        (v, comb)
    };
    let width = classes.first().map_or(0, |c| c.len());
    for (i, c) in classes.iter().enumerate() {
        let (v, mut comb) = reduce(&rows, c, width);
        if let Some(p) = v.iter().position(|&x| x == 1) {
            comb[basis.len()] = true;
            basis.push(i);
            rows.push((p, v, comb));
        }
    }
    let expansions = classes
        .iter()
        .map(|c| {
            let (v, comb) = reduce(&rows, c, width);
            v.iter().all(|&x| x == 0).then(|| (0..basis.len()).filter(|&k| comb[k]).map(|k| basis[k]).collect())
        })
        .collect();
    (basis, expansions)
}

/// Odd-graded canonical algebras, where every curve has even winding, and
/// random algebras of positive genus.
fn models_with_handles() -> Vec<gentle_topo::SurfaceModel> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for k in 0..150 {
        let n = 2 + k % 3;
        let mut form = gentle_topo::random::random_an_form(&mut rng, n, -5, 5);
        for p in &mut form.pairs {
            p.0 |= 1;
            p.1 |= 1;
        }
        let bs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let ds: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-3..=3)).collect();
        out.push(build_surface(&gentle_topo::algebra::make_an_graded(&form, &bs, &ds)).unwrap());
    }
    for seed in 0..1500 {
        let m = build_surface(&draw(seed)).unwrap();
        if m.genus() > 0 {
            out.push(m);
        }
    }
    out
}

#[test]
fn windings_are_a_quadratic_refinement_of_the_pairing() {
    let (mut linear, mut quadratic) = (0, 0);
    for m in models_with_handles() {
        let h = homology(&m).unwrap();
        let pool = curve_pool(&m, &h, m.arc_count()).unwrap();
        let (basis, expansions) = mod2_expansions(&pool.classes);
        assert_eq!(basis.len(), 2 * m.genus());
        let even_boundary = m.boundaries().iter().all(|b| b.winding.rem_euclid(2) == 0);
        let spin = m.boundaries().iter().all(|b| b.winding.rem_euclid(4) == 2)
            && pool.windings.iter().all(|w| w.rem_euclid(2) == 0);
        let q = |i: usize| (pool.windings[i] / 2 + 1).rem_euclid(2);
        for (l, e) in expansions.iter().enumerate() {
            let e = e.as_ref().expect("pool classes lie in the span of the pool");
            if e.len() < 2 {
                continue;
            }
            if even_boundary {
                // windings mod 2 are linear on homology
                let sum: i64 = e.iter().map(|&b| pool.windings[b]).sum();
                assert_eq!(pool.windings[l].rem_euclid(2), sum.rem_euclid(2));
                linear += 1;
            }
            if spin {
                // q(x + y) = q(x) + q(y) + <x, y>
                let mut predicted: i64 = e.iter().map(|&b| q(b)).sum();
                for (i, &x) in e.iter().enumerate() {
                    for &y in &e[i + 1..] {
                        predicted += pool.gram[x][y];
                    }
                }
                assert_eq!(q(l), predicted.rem_euclid(2), "{}", pool.cycles[l].describe(&m));
                quadratic += 1;
            }
        }
    }
    assert!(linear > 200 && quadratic > 20, "only {linear} linear and {quadratic} quadratic checks");
}

#[test]
fn canonical_handles_pair_to_one() {
    for form in ["1,1", "2,-3", "0,0;5,1", "1,1;1,1;2,2"] {
        let m = build_surface(&make_an(&form.parse().unwrap())).unwrap();
        let basis = find_symplectic_basis(&m, SearchOptions::default()).unwrap();
        assert_eq!(basis.pairs.len(), m.genus());
        for (i, (s1, t1)) in basis.pairs.iter().enumerate() {
            assert_eq!(intersection_number(&m, s1, t1).unwrap(), 1, "{form}");
            for (s2, t2) in &basis.pairs[i + 1..] {
                for (x, y) in [(s1, s2), (s1, t2), (t1, s2), (t1, t2)] {
                    assert_eq!(intersection_number(&m, x, y).unwrap(), 0, "{form}");
                }
            }
        }
    }
}

#[test]
fn dual_loops_of_the_canonical_family() {
    let form: gentle_topo::AnForm = "3,-2;0,5;7,7".parse().unwrap();
    let m = build_surface(&make_an(&form)).unwrap();
    let w: Vec<i64> = (0..6).map(|j| dual_loop_across(&m, j).unwrap().winding(&m)).collect();
    assert_eq!(w, vec![2, -3, -1, 4, 6, 6]);
}

#[test]
fn disks_have_no_basis() {
    let m = build_surface(&gentle_topo::presentation::read_algebra("vertex 1\n").unwrap()).unwrap();
    assert!(matches!(
        find_symplectic_basis(&m, SearchOptions::default()),
        Err(Error::GenusOutOfRange { genus: 0, .. })
    ));
    assert!(enumerate_embedded_cycles(&m, 4).is_empty());
}

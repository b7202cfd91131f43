use gentle_topo::algebra::{an_rewrite_move, make_an, make_an_graded, AnForm, VertexSet};
use gentle_topo::curves::SearchOptions;
use gentle_topo::invariants::{
    compare_records, compute_invariants, derived_equivalent, has_silting, invariants_of_model, invariants_via_homology,
    partial_silting_analysis, record_has_silting, BasisSource, InvariantRecord, Verdict,
};
use gentle_topo::presentation::read_algebra;
use gentle_topo::random::{random_an_form, random_gentle, RandomConfig};
use gentle_topo::surface::build_surface;
use gentle_topo::{Error, GentleAlgebra};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw(seed: u64) -> GentleAlgebra {
    random_gentle(&mut ChaCha8Rng::seed_from_u64(seed), &RandomConfig::default())
}

/// Genus, sorted boundary data, sigma, atilde, Arf.
type Key = (usize, Vec<(usize, i64)>, Option<u8>, Option<i64>, Option<u8>);

fn key(r: &InvariantRecord) -> Key {
    let mut b: Vec<_> = r.boundaries.iter().map(|x| (x.marked, x.winding)).collect();
    b.sort();
    (r.genus, b, r.sigma, r.atilde, r.arf)
}

/// Closed form for the canonical family: genus n, one boundary component
/// with one marked point and winding 2 - 4n.
fn expected_an(form: &AnForm) -> Key {
    let n = form.n();
    let boundary = vec![(1, 2 - 4 * n as i64)];
    if n == 1 {
        let (a, b) = form.pairs[0];
        let (mut x, mut y) = ((a - 1).abs(), (b - 1).abs());
        while y != 0 {
            (x, y) = (y, x % y);
        }
        return (1, boundary, None, Some(x), None);
    }
    let odd = form.pairs.iter().all(|&(a, b)| a.rem_euclid(2) == 1 && b.rem_euclid(2) == 1);
    let arf = odd.then(|| form.pairs.iter().map(|&(a, b)| (a + 1) * (b + 1) / 4).sum::<i64>().rem_euclid(2) as u8);
    (n, boundary, Some(if odd { 0 } else { 1 }), None, arf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn relabeling_is_invisible(seed in any::<u64>()) {
        let a = draw(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut vp: Vec<usize> = (0..a.vertex_count()).collect();
        let mut ap: Vec<usize> = (0..a.arrow_count()).collect();
        vp.shuffle(&mut rng);
        ap.shuffle(&mut rng);
        let b = a.relabeled(&vp, &ap);
        prop_assert_eq!(key(&compute_invariants(&a).unwrap()), key(&compute_invariants(&b).unwrap()));
        prop_assert!(derived_equivalent(&a, &b).unwrap().equivalent);
    }

    /// Shifting the projective at each vertex by `f(v)` changes `|x|` by
    /// `f(t(x)) - f(s(x))` and gives a derived equivalent algebra.
    #[test]
    fn vertex_shifts_are_invisible(seed in any::<u64>()) {
        let a = draw(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let shift: Vec<i64> = (0..a.vertex_count()).map(|_| rng.gen_range(-4..=4)).collect();
        let degrees: Vec<i64> = a.arrows().iter().map(|x| x.degree + shift[x.target] - shift[x.source]).collect();
        let b = a.with_degrees(&degrees);
        prop_assert_eq!(key(&compute_invariants(&a).unwrap()), key(&compute_invariants(&b).unwrap()));
    }

    #[test]
    fn decision_is_symmetric_and_reflexive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (draw(s1), draw(s2));
        let (ra, rb) = (compute_invariants(&a).unwrap(), compute_invariants(&b).unwrap());
        prop_assert!(compare_records(&ra, &ra).equivalent);
        prop_assert_eq!(compare_records(&ra, &rb).equivalent, compare_records(&rb, &ra).equivalent);
        if compare_records(&ra, &rb).equivalent {
            prop_assert_eq!(ra.genus, rb.genus);
        }
    }

    #[test]
    fn both_routes_agree(seed in any::<u64>()) {
        let m = build_surface(&draw(seed)).unwrap();
        let options = SearchOptions::default();
        let r1 = invariants_of_model(&m, &options).unwrap();
        let r2 = invariants_via_homology(&m, &options).unwrap();
        prop_assert_eq!(key(&r1), key(&r2));
        prop_assert_eq!(r1.w.len(), m.boundaries().len() + 2 * m.genus());
        if m.genus() == 0 {
            prop_assert_eq!(r1.basis_source, BasisSource::None);
        }
    }

    #[test]
    fn silting_only_fails_on_the_exceptional_class(seed in any::<u64>()) {
        let a = draw(seed);
        let r = compute_invariants(&a).unwrap();
        let exceptional = r.genus == 1 && r.boundaries.len() == 1 && r.boundaries[0].marked == 1 && r.atilde == Some(0);
        prop_assert_eq!(record_has_silting(&r), !exceptional);
        prop_assert_eq!(has_silting(&a).unwrap(), !exceptional);
    }
}

#[test]
fn canonical_family_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 0..200 {
        let n = 1 + k % 4;
        let form = random_an_form(&mut rng, n, -5, 5);
        let bs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let ds: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-3..=3)).collect();
        let r = compute_invariants(&make_an_graded(&form, &bs, &ds)).unwrap();
        assert_eq!(key(&r), expected_an(&form), "{form}");
    }
}

#[test]
fn canonical_family_decisions_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for k in 0..150 {
        let n = 1 + k % 3;
        let (f1, f2) = (random_an_form(&mut rng, n, -3, 3), random_an_form(&mut rng, n, -3, 3));
        let (e1, e2) = (expected_an(&f1), expected_an(&f2));
        let zero_mod4 = e1.1[0].1.rem_euclid(4) == 0;
        let expected = e1.2 == e2.2 && e1.3 == e2.3 && (zero_mod4 || e1.4 == e2.4);
        let got = derived_equivalent(&make_an(&f1), &make_an(&f2)).unwrap();
        assert_eq!(got.equivalent, expected, "{f1} vs {f2}: {:?}", got.certificate);
        assert_eq!(got.equivalent, got.certificate.iter().all(|c| c.agrees));
    }
}

#[test]
fn moves_preserve_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for k in 0..60 {
        let form = random_an_form(&mut rng, 2 + k % 3, -4, 4);
        let moved = an_rewrite_move(&form).unwrap();
        assert_eq!(key(&compute_invariants(&make_an(&moved)).unwrap()), expected_an(&form), "{form}");
    }
    assert!(matches!(an_rewrite_move(&"1,1".parse().unwrap()), Err(Error::NotAnForm(_))));
}

#[test]
fn record_accessors() {
    let r = compute_invariants(&make_an(&"3,3;1,1".parse().unwrap())).unwrap();
    assert_eq!((r.sigma().unwrap(), r.arf().unwrap()), (0, 1));
    assert!(matches!(r.atilde(), Err(Error::GenusOutOfRange { genus: 2, .. })));
    let r = compute_invariants(&make_an(&"0,1;1,1".parse().unwrap())).unwrap();
    assert!(matches!(r.arf(), Err(Error::ArfUndefined(_))));
    let v = r.to_json();
    for k in ["genus", "boundaries", "sigma", "atilde", "arf", "W"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["W"].as_array().unwrap().len(), 5);
}

#[test]
fn partial_silting_verdicts() {
    let a = make_an(&"1,1;0,0".parse().unwrap());
    let kept = VertexSet::from_names(&a, &["1"]).unwrap();
    // the loop a1 b1 at vertex 1 has degree 1
    let r = partial_silting_analysis(&a, &kept).unwrap();
    assert_eq!(r.verdict, Verdict::NotPreSilting);
    assert!(!r.presilting);
    assert!(matches!(partial_silting_analysis(&a, &VertexSet::new(&a, []).unwrap()), Err(Error::InvalidIdempotent(_))));
    let all = VertexSet::new(&a, 0..4).unwrap();
    let z = make_an(&"0,0;0,0".parse().unwrap());
    assert_eq!(partial_silting_analysis(&z, &all).unwrap().verdict, Verdict::PartialSilting);
    let cyclic = read_algebra("vertex 1\nvertex 2\narrow x 1 2 0\narrow y 2 1 0\n").unwrap();
    let one = VertexSet::new(&cyclic, [0]).unwrap();
    assert!(matches!(partial_silting_analysis(&cyclic, &one), Err(Error::NotProper(_))));
}

#[test]
fn partial_silting_reduces_to_components() {
    // keeping {3,4} of (1,1;0,0) leaves the exceptional one-handle algebra
    let a = make_an(&"1,1;0,0".parse().unwrap());
    let kept = VertexSet::from_names(&a, &["3", "4"]).unwrap();
    let r = partial_silting_analysis(&a, &kept).unwrap();
    assert_eq!(r.verdict, Verdict::NotPartialSilting);
    assert_eq!(r.components.len(), 1);
    assert_eq!(r.components[0].an_form, Some("1,1".parse().unwrap()));
    assert_eq!(r.components[0].has_silting, Some(false));
    // with (0,0) in front the reduction is (0,0), which has silting objects
    let b = make_an(&"0,0;0,0".parse().unwrap());
    let r = partial_silting_analysis(&b, &VertexSet::from_names(&b, &["3", "4"]).unwrap()).unwrap();
    assert!(r.presilting);
    assert_eq!(r.verdict, Verdict::PartialSilting, "{}", r.reason);
}

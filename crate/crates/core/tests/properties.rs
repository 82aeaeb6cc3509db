//! Randomized invariants of perfect sets, complexes and ideals.

use fideal::construct::construct_f_ideal;
use fideal::monomial::{binomial, complement_set, enumerate_degree, restrict};
use fideal::perfect::{check_duality, check_gluing, is_perfect, is_perfect_relative};
use fideal::{Ideal, Monomial, MonomialSet, Restriction, SimplicialComplex, UnmixedMethod};
use proptest::prelude::*;

/// Picks layer members by the bits of `mask`, thinned or thickened by
/// `density` so both sparse and nearly full sets show up.
fn pick(n: usize, d: usize, mask: u64, extra: u64, density: u8) -> MonomialSet {
    let mask = match density {
        0 => mask & extra,
        1 => mask,
        _ => mask | extra,
    };
    enumerate_degree(n, d)
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
        .map(|(_, m)| m)
        .collect()
}

prop_compose! {
    fn layer_subset()(n in 2usize..=7)(
        n in Just(n),
        d in 1..n,
        mask in any::<u64>(),
        extra in any::<u64>(),
        density in 0u8..3,
    ) -> (usize, usize, MonomialSet) {
        (n, d, pick(n, d, mask, extra, density))
    }
}

prop_compose! {
    fn with_index()((n, d, a) in layer_subset())(
        k in 1..=n,
        n in Just(n),
        d in Just(d),
        a in Just(a),
    ) -> (usize, usize, MonomialSet, usize) {
        (n, d, a, k)
    }
}

/// `(n, d)` with `2 <= d <= n - 2`, `n <= 7` and `C(n, d)` even.
fn valid_pairs() -> impl Strategy<Value = (usize, usize)> {
    let pairs: Vec<(usize, usize)> = (4..=7usize)
        .flat_map(|n| (2..=n - 2).map(move |d| (n, d)))
        .filter(|&(n, d)| binomial(n, d).is_multiple_of(2))
        .collect();
    proptest::sample::select(pairs)
}

/// A uniformly shuffled half of an even layer. Every layer on seven
/// variables is odd, so the eight-variable layers stand in for them.
fn half_layer() -> impl Strategy<Value = (usize, usize, MonomialSet)> {
    proptest::sample::select(vec![(6usize, 3usize), (8, 2), (8, 6)]).prop_flat_map(|(n, d)| {
        Just(enumerate_degree(n, d).into_vec())
            .prop_shuffle()
            .prop_map(move |v| (n, d, v[..v.len() / 2].iter().copied().collect()))
    })
}

fn index_set(n: usize, bits: u64) -> Monomial {
    Monomial::from_bits(bits & ((1 << n) - 1)).unwrap()
}

fn perfect(a: &MonomialSet, n: usize, d: usize) -> bool {
    is_perfect(a, n, d).unwrap().is_perfect()
}

fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn complement_duality((n, d, a) in layer_subset()) {
        prop_assert!(check_duality(&a, n, d).unwrap());
    }

    #[test]
    fn gluing((n, d, a, k) in with_index()) {
        prop_assert!(check_gluing(&a, n, d, k).unwrap());
    }

    #[test]
    fn restrictions_compose((n, _, a) in layer_subset(), x in any::<u64>()) {
        let x = index_set(n, x);
        for mode in [Restriction::Without, Restriction::Containing] {
            let at_once = restrict(&a, x, mode);
            let mut stepwise = a.clone();
            for i in x.indices() {
                stepwise = restrict(&stepwise, Monomial::variable(i).unwrap(), mode);
            }
            prop_assert_eq!(at_once, stepwise);
        }
    }

    #[test]
    fn restriction_keeps_one_sided_perfection((n, d, a) in layer_subset(), x in any::<u64>()) {
        let x = index_set(n, x);
        let v = is_perfect(&a, n, d).unwrap();
        if v.upper {
            let part = restrict(&a, x, Restriction::Without);
            prop_assert!(is_perfect_relative(&part, n, d, x, Restriction::Without).unwrap().upper);
        }
        if v.lower {
            let part = restrict(&a, x, Restriction::Containing);
            prop_assert!(is_perfect_relative(&part, n, d, x, Restriction::Containing).unwrap().lower);
        }
    }

    #[test]
    fn relative_complement_duality((n, d, a) in layer_subset(), x in any::<u64>()) {
        let x = index_set(n, x);
        let without = restrict(&a, x, Restriction::Without);
        let here = is_perfect_relative(&without, n, d, x, Restriction::Without).unwrap();
        let flipped = complement_set(&without, n).unwrap();
        let there = is_perfect_relative(&flipped, n, n - d, x, Restriction::Containing).unwrap();
        prop_assert_eq!(here.upper, there.lower);
        prop_assert_eq!(here.lower, there.upper);
    }

    #[test]
    fn supersets_stay_perfect((n, d, a) in layer_subset(), more in any::<u64>()) {
        if perfect(&a, n, d) {
            let bigger = a.union(&pick(n, d, more, 0, 1));
            prop_assert!(perfect(&bigger, n, d));
        }
    }

    #[test]
    fn dual_of_dual(n in 1usize..=7, gens in proptest::collection::vec(any::<u64>(), 1..6)) {
        let faces = gens.iter().map(|&g| index_set(n, g));
        let c = SimplicialComplex::from_generators(n, faces).unwrap();
        prop_assume!(!c.is_full_simplex());
        let dual = c.alexander_dual().unwrap();
        for g in 0..1u64 << n {
            let g = Monomial::from_bits(g).unwrap();
            let co = Monomial::full(n).without(g);
            prop_assert_eq!(dual.is_face(g), !c.is_face(co));
        }
        prop_assert_eq!(dual.alexander_dual().unwrap(), c);
    }

    #[test]
    fn homogeneous_test_matches_f_vectors((n, d, a) in layer_subset()) {
        prop_assume!(d >= 2 && !a.is_empty());
        let ideal = Ideal::new(n, a.iter()).unwrap();
        prop_assert_eq!(ideal.is_f_ideal_homogeneous(d).unwrap(), ideal.is_f_ideal());
    }

    #[test]
    fn homogeneous_test_on_half_layers((n, d, a) in half_layer()) {
        let ideal = Ideal::new(n, a.iter()).unwrap();
        prop_assert_eq!(ideal.is_f_ideal_homogeneous(d).unwrap(), ideal.is_f_ideal());
    }

    #[test]
    fn complement_criterion((n, d, a) in layer_subset()) {
        prop_assume!(d >= 2 && !a.is_empty());
        let ideal = Ideal::new(n, a.iter()).unwrap();
        let by_complement = 2 * a.len() as u64 == binomial(n, d)
            && perfect(&complement_set(&a, n).unwrap(), n, n - d);
        prop_assert_eq!(ideal.is_f_ideal_homogeneous(d).unwrap(), by_complement);
    }

    #[test]
    fn dual_dimension_detects_lower_perfection((n, d, a) in layer_subset()) {
        prop_assume!(d >= 2 && !a.is_empty() && a.len() as u64 != binomial(n, d));
        let ideal = Ideal::new(n, a.iter()).unwrap();
        let dual = ideal.facet_complex().alexander_dual().unwrap();
        let lower = is_perfect(&a, n, d).unwrap().lower;
        prop_assert_eq!(dual.dimension() == (n - d) as isize - 1, lower);
    }

    #[test]
    fn flag_complement_detects_both_sides((n, d, a) in layer_subset()) {
        prop_assume!(d >= 2 && !a.is_empty() && a.len() as u64 != binomial(n, d));
        let ideal = Ideal::new(n, a.iter()).unwrap();
        let rest = ideal.complement_layer(d);
        let flag = ideal.complement_layer_complex(d).unwrap().is_d_flag(d);
        let expected = is_perfect(&a, n, d).unwrap().upper && is_perfect(&rest, n, d).unwrap().lower;
        prop_assert_eq!(flag, expected);
    }

    #[test]
    fn unmixed_methods_agree_on_constructed_ideals((n, d) in valid_pairs(), seed in any::<u64>()) {
        let ideal = construct_f_ideal(n, d, Some(seed)).unwrap();
        prop_assert!(ideal.is_f_ideal());
        let direct = ideal.is_unmixed_f_ideal(d, UnmixedMethod::Direct).unwrap();
        let dual = ideal.is_unmixed_f_ideal(d, UnmixedMethod::Dual).unwrap();
        prop_assert_eq!(direct, dual);
    }
}

/// Every nonempty subset of every layer on at most five variables.
fn exhaustive_ideals(mut visit: impl FnMut(usize, usize, &Ideal)) {
    for n in 2..=5 {
        for d in 2..=n {
            let layer = enumerate_degree(n, d).into_vec();
            for mask in 1u64..1 << layer.len() {
                let gens = (0..layer.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| layer[i]);
                visit(n, d, &Ideal::new(n, gens).unwrap());
            }
        }
    }
}

#[test]
fn homogeneous_test_exhaustive_small() {
    let mut f_ideals = 0;
    exhaustive_ideals(|n, d, ideal| {
        let fast = ideal.is_f_ideal_homogeneous(d).unwrap();
        assert_eq!(
            fast,
            ideal.is_f_ideal(),
            "n={n} d={d} {:?}",
            ideal.generators()
        );
        f_ideals += fast as usize;
    });
    assert!(f_ideals > 0);
}

#[test]
fn unmixed_methods_agree_exhaustive_small() {
    exhaustive_ideals(|n, d, ideal| {
        let dual = ideal.is_unmixed_f_ideal(d, UnmixedMethod::Dual).unwrap();
        match ideal.is_unmixed_f_ideal(d, UnmixedMethod::Direct) {
            Ok(direct) => assert_eq!(direct, dual, "n={n} d={d} {:?}", ideal.generators()),
            Err(fideal::Error::NotFIdeal) => assert!(!dual),
            Err(e) => panic!("{e}"),
        }
    });
}

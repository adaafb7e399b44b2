mod common;

use std::sync::Arc;

use common::*;
use num_bigint::BigInt;
use partial_seeds::classify::is_subalgebra_type;
use partial_seeds::io::{parse_seed, seed_to_json};
use partial_seeds::semigroup::DEFAULT_ELEMENT_CAP;
use partial_seeds::symbolic::{LabeledSeedState, SymbolicCaps};
use partial_seeds::{
    automorphism_group, check_partial_hom, compose, enumerate_endpar, find_seed_iso, Seed, SubSeedSpec, VarSet,
};
use proptest::prelude::*;

fn labels(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// Skew-symmetrizable seeds: `b_ij = s k d_j`, `b_ji = -s k d_i` with
/// `d_i` in 1..=3, `k` in 0..=1, `s = ±1`; frozen entries in -3..=3.
fn symmetrizable_seed(max_n: usize, max_m: usize) -> impl Strategy<Value = (Seed, Vec<i64>)> {
    (1..=max_n, 0..=max_m)
        .prop_flat_map(|(n, m)| {
            (
                Just((n, m)),
                prop::collection::vec(1i64..=3, n),
                prop::collection::vec((0i64..=1, prop::bool::ANY), n * n),
                prop::collection::vec(-3i64..=3, n * m),
            )
        })
        .prop_map(|((n, m), d, pairs, frozen)| {
            let mut rows = vec![vec![0i64; n + m]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let (k, s) = pairs[i * n + j];
                    let s = if s { 1 } else { -1 };
                    // Keep every entry within 3 in absolute value.
                    let k = if d[i] * k > 3 || d[j] * k > 3 { 0 } else { k };
                    rows[i][j] = s * k * d[j];
                    rows[j][i] = -s * k * d[i];
                }
                for c in 0..m {
                    rows[i][n + c] = frozen[i * m + c];
                }
            }
            let ex = labels("x", n);
            let fr = labels("y", m);
            let big = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            (Seed::new(ex, fr, big).unwrap(), d)
        })
}

/// Small skew-symmetric seeds with entries in -2..=2.
fn small_seed(max_n: usize, max_m: usize) -> impl Strategy<Value = Seed> {
    (0..=max_n, 0..=max_m)
        .prop_flat_map(|(n, m)| (Just((n, m)), prop::collection::vec(-2i64..=2, n * n + n * m)))
        .prop_map(|((n, m), vals)| {
            let mut rows = vec![vec![0i64; n + m]; n];
            for i in 0..n {
                for j in i + 1..n {
                    rows[i][j] = vals[i * n + j];
                    rows[j][i] = -vals[i * n + j];
                }
                for c in 0..m {
                    rows[i][n + c] = vals[n * n + i * m + c];
                }
            }
            let big = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            Seed::new(labels("x", n), labels("y", m), big).unwrap()
        })
}

/// The seed with exchangeable and frozen variables reordered by `pe`, `pf`
/// and renamed.
fn permuted(seed: &Seed, pe: &[usize], pf: &[usize]) -> Seed {
    let (n, m) = (seed.n(), seed.m());
    let old = |v: usize| if v < n { pe[v] } else { n + pf[v - n] };
    let rows = (0..n).map(|x| (0..n + m).map(|y| seed.b(old(x), old(y)).clone()).collect()).collect();
    Seed::new(labels("u", n), labels("v", m), rows).unwrap()
}

fn shuffled(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_is_an_involution((seed, d) in symmetrizable_seed(6, 3), k in 0usize..6) {
        let k = k % seed.n();
        let once = seed.mutate_at(k).unwrap();
        prop_assert_eq!(once.mutate_at(k).unwrap(), seed.clone());
        let d: Vec<BigInt> = d.into_iter().map(BigInt::from).collect();
        prop_assert!(seed.matrix().is_symmetrized_by(&d));
        prop_assert!(once.matrix().is_symmetrized_by(&d));
    }

    #[test]
    fn mutation_matches_entry_formula((seed, _) in symmetrizable_seed(5, 2), k in 0usize..5) {
        let k = k % seed.n();
        let plain = PlainSeed::of(&seed);
        prop_assert_eq!(PlainSeed::of(&seed.mutate_at(k).unwrap()).b, mutate_matrix(&plain.b, k));
    }

    #[test]
    fn seed_file_round_trip((seed, _) in symmetrizable_seed(6, 3)) {
        prop_assert_eq!(parse_seed(&seed_to_json(&seed)).unwrap(), seed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn symbolic_clusters_match_numeric_exchange(
        (seed, _) in symmetrizable_seed(3, 1),
        path in prop::collection::vec(0usize..3, 0..5),
        point in prop::collection::vec((1i64..=5, 1i64..=3), 4),
    ) {
        let n = seed.n();
        let path: Vec<usize> = path.into_iter().map(|k| k % n).collect();
        let point: Vec<_> = point[..seed.len()].iter().map(|&(p, q)| rational(p, q)).collect();
        let caps = SymbolicCaps::default();
        let mut state = LabeledSeedState::initial(seed.clone());
        for &k in &path {
            state = state.mutate(k, caps).unwrap();
        }
        let expected = numeric_cluster(&PlainSeed::of(&seed).b, &point, &path);
        for (f, value) in state.assignment().iter().zip(&expected) {
            prop_assert_eq!(f.eval(&point), Some(value.clone()));
        }
    }

    #[test]
    fn hom_check_matches_literal_definition(
        seed in small_seed(3, 1),
        kinds in prop::collection::vec(0u8..3, 4),
        images in prop::collection::vec(0usize..4, 4),
    ) {
        let len = seed.len();
        let (mut i0, mut i1) = (VarSet::EMPTY, VarSet::EMPTY);
        let mut map = vec![None; len];
        for v in 0..len {
            match kinds[v] {
                0 => i1.insert(v),
                1 if v < seed.n() => i0.insert(v),
                _ => {}
            }
            if !i1.contains(v) {
                map[v] = Some(images[v] % len);
            }
        }
        let spec = SubSeedSpec::new(&seed, i0, i1).unwrap();
        let plain = PlainHom {
            i0: i0.iter().collect(),
            i1: i1.iter().collect(),
            map: map.clone(),
        };
        let p = PlainSeed::of(&seed);
        prop_assert_eq!(check_partial_hom(&seed, &seed, &spec, &map).is_ok(), is_partial_hom(&p, &p, &plain));
    }

    #[test]
    fn iso_search_matches_permutations(a in small_seed(3, 1), b in small_seed(3, 1)) {
        let (sa, sb) = (Arc::new(a.clone()), Arc::new(b.clone()));
        let found = find_seed_iso(&sa, &sb).unwrap();
        prop_assert_eq!(found.is_some(), is_isomorphic(&PlainSeed::of(&a), &PlainSeed::of(&b)));
        prop_assert_eq!(find_seed_iso(&sb, &sa).unwrap().is_some(), found.is_some());
    }

    #[test]
    fn relabeled_seeds_are_isomorphic(
        seed in small_seed(4, 2),
        pe in shuffled(4),
        pf in shuffled(2),
    ) {
        let pe: Vec<usize> = pe.into_iter().filter(|&i| i < seed.n()).collect();
        let pf: Vec<usize> = pf.into_iter().filter(|&i| i < seed.m()).collect();
        let other = Arc::new(permuted(&seed, &pe, &pf));
        let seed = Arc::new(seed);
        let there = find_seed_iso(&seed, &other).unwrap().expect("relabeling is an isomorphism");
        let back = find_seed_iso(&other, &seed).unwrap().expect("isomorphism is symmetric");
        prop_assert!(there.inverse().after(&there).unwrap().is_identity());
        prop_assert_eq!(back.hom().source(), &other);
    }

    #[test]
    fn subalgebra_flags_are_invariant_under_automorphisms(seed in small_seed(3, 1)) {
        let seed = Arc::new(seed);
        for phi in automorphism_group(&seed).unwrap() {
            let image = phi.label_map();
            for spec in SubSeedSpec::all(&seed).unwrap() {
                let (i0, i1) = spec.labels(&seed);
                let move_all = |ls: Vec<String>| ls.into_iter().map(|l| image[&l].clone()).collect::<Vec<_>>();
                let moved = SubSeedSpec::from_labels(&seed, &move_all(i0), &move_all(i1)).unwrap();
                prop_assert_eq!(is_subalgebra_type(&seed, &spec), is_subalgebra_type(&seed, &moved));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composition_is_closed_and_associative(
        seed in small_seed(2, 1),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        let seed = Arc::new(seed);
        let table = enumerate_endpar(&seed, DEFAULT_ELEMENT_CAP).unwrap();
        let [f, g, h] = [0, 1, 2].map(|i| table.element(picks[i].index(table.len())).clone());
        let gf = compose(&g, &f).unwrap();
        let hg = compose(&h, &g).unwrap();
        prop_assert!(table.index_of(&gf).is_some());
        prop_assert_eq!(compose(&h, &gf).unwrap(), compose(&hg, &f).unwrap());
    }
}

use cycleshuffle::algebra::AlgebraElement;
use cycleshuffle::basis::{rmul_standard_matrix, BasisFamily, BasisKind, BasisOrder};
use cycleshuffle::linalg::Polynomial;
use cycleshuffle::lacunar::{non_shadow, LacunarCatalog};
use cycleshuffle::markov::DeckState;
use cycleshuffle::perm::{all_permutations, Permutation};
use cycleshuffle::scalar::{format_rational, parse_rational, Limits, Rational};
use cycleshuffle::shuffles::{
    build_osc, build_t, one_sided_cycle_shuffle, transition_matrix, PositionDistribution, WeightVector,
};
use cycleshuffle::spectrum::{delta_vector, eigenvalue_for_set, full_spectrum, minimal_polynomial};
use cycleshuffle::subset::IndexSubset;
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|w| Permutation::from_word(&w).unwrap())
    })
}

fn arb_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let word = Just((1..=n).collect::<Vec<usize>>());
        (word.clone().prop_shuffle(), word.clone().prop_shuffle(), word.prop_shuffle()).prop_map(|(a, b, c)| {
            (Permutation::from_word(&a).unwrap(), Permutation::from_word(&b).unwrap(), Permutation::from_word(&c).unwrap())
        })
    })
}

fn arb_element(n: usize) -> impl Strategy<Value = AlgebraElement<i64>> {
    let perms = all_permutations(n).unwrap();
    prop::collection::vec((0..perms.len(), -5i64..=5), 0..8).prop_map(move |terms| {
        AlgebraElement::from_terms(n, terms.into_iter().map(|(k, c)| (perms[k].clone(), c))).unwrap()
    })
}

fn arb_weights(n: usize) -> impl Strategy<Value = WeightVector<Rational>> {
    prop::collection::vec((0i64..6, 1i64..5), n)
        .prop_map(|v| WeightVector::new(v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect()).unwrap())
}

fn fib_oracle(m: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..m {
        (a, b) = (b, a + b);
    }
    a
}

proptest! {
    #[test]
    fn group_laws((p, q, r) in arb_pair(7)) {
        let id = Permutation::identity(p.degree()).unwrap();
        prop_assert_eq!(p.compose(&id).unwrap(), p.clone());
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // (pq)(i) = p(q(i))
        let pq = p.compose(&q).unwrap();
        for i in 1..=p.degree() {
            prop_assert_eq!(pq.apply(i), p.apply(q.apply(i)));
        }
    }

    #[test]
    fn lex_rank_round_trip(p in arb_perm(8)) {
        let n = p.degree();
        prop_assert_eq!(Permutation::from_lex_rank(n, p.lex_rank()).unwrap(), p.clone());
        if let Some(next) = p.lex_successor() {
            prop_assert_eq!(next.lex_rank(), p.lex_rank() + 1);
        }
    }

    #[test]
    fn multiplication_is_associative(x in arb_element(4), y in arb_element(4), z in arb_element(4)) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antipode_reverses_products(x in arb_element(4), y in arb_element(4)) {
        let lhs = x.multiply(&y).unwrap().antipode();
        let rhs = y.antipode().multiply(&x.antipode()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.antipode().antipode(), x);
    }

    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn minimal_polynomial_divides_annihilator(w in arb_weights(4)) {
        let x = one_sided_cycle_shuffle(&w).unwrap();
        let minpoly = minimal_polynomial(&x, &Limits::default()).unwrap();
        let report = full_spectrum(&w).unwrap();
        // one linear factor per lacunar set, repeats kept: colliding
        // eigenvalues can give Jordan blocks
        let annihilator = Polynomial::from_roots(report.rows.iter().map(|r| (&r.eigenvalue, 1)));
        prop_assert!(minpoly.divides(&annihilator).unwrap());
        prop_assert!(report.squarefree_annihilator().divides(&minpoly).unwrap());
    }

    #[test]
    fn lacunar_sets_have_no_neighbours(set in subsequence((1..=12usize).collect::<Vec<_>>(), 0..=6)) {
        let s = IndexSubset::from_elements(12, set.clone()).unwrap();
        let scan = set.windows(2).all(|w| w[1] != w[0] + 1);
        prop_assert_eq!(s.is_lacunar(), scan);
    }
}

#[test]
fn lacunar_counts_follow_fibonacci() {
    for n in 1..=30 {
        let cat = LacunarCatalog::new(n).unwrap();
        assert_eq!(cat.len() as u128, fib_oracle(n + 1), "n = {n}");
    }
    // brute force over all bitmasks
    for n in 1..=16usize {
        let universe = n - 1;
        let count = (0u64..1 << universe).filter(|b| b & (b >> 1) == 0).count();
        assert_eq!(LacunarCatalog::new(n).unwrap().len(), count);
    }
}

#[test]
fn deltas_sum_to_factorial_and_divide_it() {
    for n in 1..=20usize {
        let cat = LacunarCatalog::new(n).unwrap();
        let fact: BigUint = (1..=n).map(BigUint::from).product();
        let deltas = delta_vector(&cat);
        let total: BigUint = deltas.iter().sum();
        assert_eq!(total, fact, "n = {n}");
        for d in &deltas {
            assert!(d > &BigUint::from(0u8));
            assert_eq!(&fact % d, BigUint::from(0u8));
        }
    }
}

// δ_i is the number of w whose smallest catalog index with Q_i' ⊆ Des w is i.
#[test]
fn deltas_count_descent_classes() {
    for n in 1..=7 {
        let cat = LacunarCatalog::new(n).unwrap();
        let shadows: Vec<u64> = cat.sets().iter().map(|s| non_shadow(s, n).bits()).collect();
        let mut counts = vec![0u64; cat.len()];
        for w in all_permutations(n).unwrap() {
            let word = w.word();
            let des: u64 = (1..n).filter(|&i| word[i - 1] > word[i]).map(|i| 1u64 << (i - 1)).sum();
            let i = shadows.iter().position(|&s| s & !des == 0).expect("Q_1' fits every descent set eventually");
            counts[i] += 1;
        }
        let expected: Vec<BigUint> = counts.into_iter().map(BigUint::from).collect();
        assert_eq!(delta_vector(&cat), expected, "n = {n}");
    }
}

#[test]
fn a_basis_diagonal_matches_eigenvalues() {
    let limits = Limits::default();
    for n in 1..=5 {
        let family = BasisFamily::<Rational>::new(n, &limits).unwrap();
        for l in 1..=n {
            let t: AlgebraElement<Rational> = build_t(n, l).unwrap();
            let m = family.rmul_matrix(&t, BasisKind::A, BasisOrder::Lex, None).unwrap();
            let mut unit = vec![Rational::from_integer(0.into()); n];
            unit[l - 1] = Rational::from_integer(1.into());
            let w = WeightVector::new(unit).unwrap();
            let mut diag: Vec<Rational> = m.diagonal();
            let mut expected: Vec<Rational> = family
                .permutations()
                .iter()
                .map(|p| eigenvalue_for_set(&w, family.catalog().set(family.q_index(p))).unwrap())
                .collect();
            diag.sort();
            expected.sort();
            assert_eq!(diag, expected, "n = {n}, l = {l}");
        }
    }
}

#[test]
fn standard_matrix_rows_follow_right_multiplication() {
    let limits = Limits::default();
    let x: AlgebraElement<i64> = build_t(4, 2).unwrap();
    let m = rmul_standard_matrix(&x, &limits).unwrap();
    let perms = all_permutations(4).unwrap();
    for (col, w) in perms.iter().enumerate() {
        let wx = AlgebraElement::from_perm(w.clone()).multiply(&x).unwrap();
        for (row, u) in perms.iter().enumerate() {
            assert_eq!(*m.get(row, col), wx.coefficient(u).unwrap());
        }
    }
}

#[test]
fn bookmark_only_moves_down_the_deck() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sizes = [2usize, 3, 5, 8, 13];
    for _ in 0..10_000 {
        let n = *sizes.choose(&mut rng).unwrap();
        let mut deck = DeckState::new(n).unwrap();
        let mut below = deck.bookmark_below_count();
        for _ in 0..4 * n {
            let i = rng.random_range(1..=n);
            let j = rng.random_range(i..=n);
            deck.step_with_choice(i, j).unwrap();
            let now = deck.bookmark_below_count();
            assert!(now == below || now == below + 1, "count went from {below} to {now}");
            assert!(now <= n);
            below = now;
            let mut sorted = deck.order().word();
            sorted.sort();
            assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        }
    }
}

#[test]
fn random_to_below_on_three_cards_is_not_symmetric() {
    let x = build_osc(&PositionDistribution::uniform(3).unwrap()).unwrap();
    let m = transition_matrix(&x, &Limits::default()).unwrap();
    let m = m.matrix();
    assert_ne!(m, &m.transpose());
    // 123 -> 231 is possible in one step, 231 -> 123 is not
    assert_eq!(m.get(0, 3), &Rational::new(1.into(), 9.into()));
    assert_eq!(m.get(3, 0), &Rational::from_integer(0.into()));
}

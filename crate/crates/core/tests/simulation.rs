use cycleshuffle::markov::{
    bounds, climb_probability, exact_expected_tau, fast_bookmark_sim, simulate_sst, trial_rng, DeckState,
    PositionSampler, Tolerances,
};
use cycleshuffle::scalar::{rational_to_f64, Limits, Rational};
use cycleshuffle::shuffles::PositionDistribution;

fn uniform(n: usize) -> PositionDistribution {
    PositionDistribution::uniform(n).unwrap()
}

#[test]
fn two_cards_take_two_steps_on_average() {
    let tol = Tolerances::default();
    let sim = simulate_sst(&uniform(2), 100_000, 21, false, &Limits::default()).unwrap();
    assert_eq!(sim.exact, Some(Rational::from_integer(2.into())));
    assert_eq!(tol.mean_agrees(&sim), Some(true), "mean {} stderr {}", sim.mean, sim.stderr);
    let fast = fast_bookmark_sim(2, 100_000, 22).unwrap();
    assert_eq!(tol.mean_agrees(&fast), Some(true));
    let fast3 = fast_bookmark_sim(3, 100_000, 23).unwrap();
    assert_eq!(fast3.exact, Some(Rational::new(24.into(), 5.into())));
    assert_eq!(tol.mean_agrees(&fast3), Some(true));
}

// Empirical climb rate at each level against (i/n)(H_n - H_{i-1}).
#[test]
fn climb_rate_matches_closed_form() {
    let n = 6;
    let sampler = PositionSampler::new(&uniform(n)).unwrap();
    let mut rng = trial_rng(99, 0);
    let mut tries = vec![0u64; n + 1];
    let mut climbs = vec![0u64; n + 1];
    for _ in 0..20_000 {
        let mut deck = DeckState::new(n).unwrap();
        while !deck.is_done() {
            let level = deck.bookmark_below_count() + 1;
            deck.step(&sampler, &mut rng);
            tries[level] += 1;
            if deck.bookmark_below_count() + 1 > level {
                climbs[level] += 1;
            }
        }
    }
    for i in 2..=n {
        let p = rational_to_f64(&climb_probability(n, i));
        let observed = climbs[i] as f64 / tries[i] as f64;
        let se = (p * (1.0 - p) / tries[i] as f64).sqrt();
        assert!((observed - p).abs() < 4.0 * se, "level {i}: {observed} vs {p}");
    }
}

#[test]
fn non_uniform_runs_have_no_exact_value() {
    let p = PositionDistribution::new(vec![
        Rational::new(1.into(), 2.into()),
        Rational::new(1.into(), 4.into()),
        Rational::new(1.into(), 4.into()),
    ])
    .unwrap();
    let sim = simulate_sst(&p, 1_000, 1, false, &Limits::default()).unwrap();
    assert!(sim.exact.is_none() && sim.upper_bound.is_none());
    assert!(sim.mean > 0.0);
}

#[test]
fn bounds_bracket_small_cases() {
    for n in 3..=40 {
        let e = rational_to_f64(&exact_expected_tau(n).unwrap());
        let b = bounds(n).unwrap();
        assert!(e <= b.upper_f64(), "n = {n}");
    }
    assert!((bounds(3).unwrap().upper_f64() - 6.657421890534262).abs() < 1e-12);
}

//! Cross-module invariants on the worked examples and the seeded corpus.

mod common;

use num_traits::Zero;
use proptest::prelude::*;

use dualred::ce;
use dualred::dual::{self, epsilon_blend, DeviationProfile};
use dualred::format;
use dualred::game::{Block, Game, MixedProfile, MixedStrategy, PlayerPermutation, Rescaling};
use dualred::gen::{gen_game, SplitMix64};
use dualred::lp::{self, Direction, LinearProgram, Relation};
use dualred::nash;
use dualred::rational::{rat, ratio, Rational};
use dualred::reduction::{self, Classification, Policy};

use common::*;

// ---------------------------------------------------------------------------
// Game model
// ---------------------------------------------------------------------------

#[test]
fn expected_utility_is_affine_per_player() {
    let mut rng = SplitMix64::new(11);
    for g in small_corpus().iter().take(20) {
        let sigma = random_profile(&mut rng, g);
        for i in 0..g.num_players() {
            let a = random_mixed(&mut rng, g.num_actions(i));
            let b = random_mixed(&mut rng, g.num_actions(i));
            let t = ratio(1, 3);
            let mixed_weights: Vec<Rational> = a
                .weights()
                .iter()
                .zip(b.weights())
                .map(|(x, y)| (rat(1) - &t) * x + &t * y)
                .collect();
            let mid = MixedStrategy::new(mixed_weights).unwrap();
            let at = |s: MixedStrategy| {
                g.expected_utility(&sigma.with_player(i, s), i).unwrap()
            };
            let lhs = at(mid);
            let rhs = (rat(1) - &t) * at(a) + &t * at(b);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn restrict_composes_by_intersection() {
    let mut rng = SplitMix64::new(23);
    for g in small_corpus().iter().take(15) {
        // Random block, then a random sub-block of it.
        let sets: Vec<Vec<usize>> = (0..g.num_players())
            .map(|i| {
                let m = g.num_actions(i);
                let keep: Vec<usize> =
                    (0..m).filter(|_| rng.next_in_range(0, 1) == 1).collect();
                if keep.is_empty() {
                    vec![0]
                } else {
                    keep
                }
            })
            .collect();
        let outer = Block::new(g, sets.clone()).unwrap();
        let first = g.restrict(&outer).unwrap();
        let inner_sets: Vec<Vec<usize>> = (0..first.num_players())
            .map(|i| {
                let m = first.num_actions(i);
                let keep: Vec<usize> =
                    (0..m).filter(|_| rng.next_in_range(0, 1) == 1).collect();
                if keep.is_empty() {
                    vec![0]
                } else {
                    keep
                }
            })
            .collect();
        let inner = Block::new(&first, inner_sets.clone()).unwrap();
        let twice = first.restrict(&inner).unwrap();
        let composed_sets: Vec<Vec<usize>> = inner_sets
            .iter()
            .enumerate()
            .map(|(i, keep)| keep.iter().map(|&k| sets[i][k]).collect())
            .collect();
        let direct = g
            .restrict(&Block::new(g, composed_sets).unwrap())
            .unwrap();
        assert_eq!(twice, direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rescale_composes(
        rows in proptest::collection::vec(proptest::collection::vec(-9i64..10, 2), 4),
        scales1 in proptest::collection::vec(1i64..5, 2),
        scales2 in proptest::collection::vec(1i64..5, 2),
        offs1 in proptest::collection::vec(-4i64..5, 4),
        offs2 in proptest::collection::vec(-4i64..5, 4),
    ) {
        let g = Game::from_integer_rows(&[2, 2], &rows).unwrap();
        let build = |scales: &[i64], offs: &[i64]| Rescaling {
            scales: scales.iter().map(|&a| rat(a)).collect(),
            offsets: vec![
                vec![rat(offs[0]), rat(offs[1])],
                vec![rat(offs[2]), rat(offs[3])],
            ],
        };
        let r1 = build(&scales1, &offs1);
        let r2 = build(&scales2, &offs2);
        let chained = g.rescale(&r1).unwrap().rescale(&r2).unwrap();
        let combined = Rescaling {
            scales: r1
                .scales
                .iter()
                .zip(&r2.scales)
                .map(|(a, b)| a * b)
                .collect(),
            offsets: (0..2)
                .map(|i| {
                    r1.offsets[i]
                        .iter()
                        .zip(&r2.offsets[i])
                        .map(|(f1, f2)| &r2.scales[i] * f1 + f2)
                        .collect()
                })
                .collect(),
        };
        let direct = g.rescale(&combined).unwrap();
        prop_assert_eq!(chained, direct);
    }

    #[test]
    fn game_file_round_trip(
        counts in proptest::collection::vec(1usize..4, 1..4),
        seed in 0u64..1000,
    ) {
        let g = gen_game(seed, &counts, -9, 9).unwrap();
        let text = format::write_game(&g);
        let parsed = format::parse_game(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(format::write_game(&parsed), text);
    }
}

#[test]
fn symmetric_flag_rechecks_pointwise() {
    let swap = PlayerPermutation::swap(2, 0, 1);
    for seed in 0..6 {
        let g = symmetric_two_player(600 + seed, 3, -4, 4);
        assert!(g.is_p_symmetric(&swap).unwrap());
        for c in g.profiles() {
            let cp = swap.apply_profile(&c);
            for i in 0..2 {
                assert_eq!(g.payoff(&cp, swap.apply(i)), g.payoff(&c, i));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// LP engine
// ---------------------------------------------------------------------------

fn random_lp(rng: &mut SplitMix64) -> LinearProgram {
    let nvars = 2 + (rng.next_u64() % 3) as usize;
    let nrows = 2 + (rng.next_u64() % 4) as usize;
    let direction = if rng.next_in_range(0, 1) == 0 {
        Direction::Maximize
    } else {
        Direction::Minimize
    };
    let objective = (0..nvars).map(|_| rat(rng.next_in_range(-4, 4))).collect();
    let mut lp = LinearProgram::new(nvars, objective, direction);
    for v in 0..nvars {
        if rng.next_in_range(0, 3) > 0 {
            lp.set_lower_bound(v, rat(rng.next_in_range(-2, 0)));
        }
    }
    for _ in 0..nrows {
        let coeffs = (0..nvars).map(|_| rat(rng.next_in_range(-3, 3))).collect();
        let relation = match rng.next_in_range(0, 2) {
            0 => Relation::Le,
            1 => Relation::Ge,
            _ => Relation::Eq,
        };
        lp.push(coeffs, relation, rat(rng.next_in_range(-4, 6)));
    }
    lp
}

#[test]
fn lp_optimal_solves_carry_valid_certificates() {
    let mut rng = SplitMix64::new(31);
    let mut optimal = 0;
    for _ in 0..400 {
        let lp = random_lp(&mut rng);
        let out = lp::solve(&lp).unwrap();
        if out.status == lp::LpStatus::Optimal {
            optimal += 1;
            assert!(lp::verify_optimal(&lp, &out));
        }
        let again = lp::solve(&lp).unwrap();
        assert_eq!(out.status, again.status);
        assert_eq!(out.point, again.point);
        assert_eq!(out.value, again.value);
    }
    assert!(optimal >= 100, "sampler should hit plenty of optimal LPs");
}

#[test]
fn implicit_equalities_preserve_dimension_when_made_explicit() {
    let mut rng = SplitMix64::new(37);
    let mut checked = 0;
    for _ in 0..200 {
        let lp = random_lp(&mut rng);
        let Ok(implicit) = lp::implicit_equalities(&lp) else {
            continue; // infeasible region
        };
        checked += 1;
        let before = lp::affine_dimension(&lp).unwrap();
        let mut tightened = lp.clone();
        for &row in &implicit {
            let c = lp.constraints[row].clone();
            tightened.push(c.coeffs, Relation::Eq, c.rhs);
        }
        let after = lp::affine_dimension(&tightened).unwrap();
        assert_eq!(before, after);
    }
    assert!(checked >= 50);
}

// ---------------------------------------------------------------------------
// CE polytope
// ---------------------------------------------------------------------------

#[test]
fn ce_region_is_never_empty() {
    for g in corpus() {
        let system = ce::ce_system(&g);
        let out = lp::solve(&system.lp).unwrap();
        assert_eq!(out.status, lp::LpStatus::Optimal);
        // The dual-vector polytope is nonempty too: the trivial profile.
        assert!(dual::is_dual_vector(&g, &DeviationProfile::trivial(&g)).unwrap());
    }
}

#[test]
fn elementary_games_have_free_polytopes() {
    let mut seen = 0;
    for g in small_corpus() {
        let report = ce::analyze(&g).unwrap();
        assert!(report.coherent.iter().all(|set| !set.is_empty()));
        if report.is_elementary {
            seen += 1;
            assert!(report.jeopardy.iter().all(Vec::is_empty));
            assert!(report.zero_profiles.is_empty());
            assert_eq!(report.dimension, g.num_profiles() as i64 - 1);
        }
        if report.is_tight {
            assert!(report.is_pretight);
        }
        // Pretight means mutual jeopardization inside the coherent sets.
        if report.is_pretight {
            for i in 0..g.num_players() {
                for &a in &report.coherent[i] {
                    for &b in &report.coherent[i] {
                        if a != b {
                            assert!(report.jeopardy[i].contains(&(a, b)));
                        }
                    }
                }
            }
        }
    }
    assert!(seen >= 5, "corpus should contain elementary games");
}

// ---------------------------------------------------------------------------
// Dual vectors
// ---------------------------------------------------------------------------

#[test]
fn stationary_specialization_of_gain_identity() {
    // When every other player's strategy is alpha-stationary the aggregate
    // identity collapses to player i's deviation gain.
    let mut rng = SplitMix64::new(41);
    for g in small_corpus().iter().take(25) {
        let alpha = random_deviation_profile(&mut rng, g);
        for i in 0..g.num_players() {
            let mut strategies = Vec::with_capacity(g.num_players());
            for j in 0..g.num_players() {
                if j == i {
                    strategies.push(random_mixed(&mut rng, g.num_actions(j)));
                } else {
                    let classes = reduction::markov_decompose(alpha.plan(j))
                        .unwrap()
                        .classes;
                    let pick = (rng.next_u64() % classes.len() as u64) as usize;
                    strategies.push(classes[pick].stationary.clone());
                }
            }
            let sigma = MixedProfile::new(strategies);
            let table = dual::gains(g, &alpha).unwrap();
            let mut lhs = rat(0);
            for (flat, c) in g.profiles().enumerate() {
                let w = sigma.profile_weight(&c);
                if !w.is_zero() {
                    lhs += w * &table.total[flat];
                }
            }
            let deviated = alpha.plan(i).apply(sigma.strategy(i)).unwrap();
            let rhs = g
                .expected_utility(&sigma.with_player(i, deviated), i)
                .unwrap()
                - g.expected_utility(&sigma, i).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn canonical_duals_pass_their_own_refinement_checks() {
    for g in small_corpus().iter().take(30) {
        let full = dual::full_dual_vector(g).unwrap();
        assert_eq!(full.support(), dual::component_support(g).unwrap());
        let strong_full = dual::strong_full_dual_vector(g).unwrap();
        assert!(dual::is_strong(g, &strong_full).unwrap());
        assert!(dual::is_full(g, &strong_full).unwrap());
    }
}

#[test]
fn strong_dual_vector_lemma_strict_improvement() {
    // For a strong dual vector and stationary opponents, an incoherent
    // strategy earns strictly less than its deviation image.
    let mut rng = SplitMix64::new(43);
    let mut exercised = 0;
    for g in small_corpus() {
        let coherent = ce::coherent_strategies(&g).unwrap();
        if (0..g.num_players())
            .all(|i| coherent[i].len() == g.num_actions(i))
        {
            continue;
        }
        let alpha = dual::strong_dual_vector(&g).unwrap();
        let decompositions: Vec<_> = (0..g.num_players())
            .map(|j| reduction::markov_decompose(alpha.plan(j)).unwrap())
            .collect();
        for i in 0..g.num_players() {
            for s in 0..g.num_actions(i) {
                if coherent[i].contains(&s) {
                    continue;
                }
                exercised += 1;
                let mut strategies = Vec::with_capacity(g.num_players());
                for (j, decomposition) in decompositions.iter().enumerate() {
                    if j == i {
                        strategies.push(MixedStrategy::degenerate(s, g.num_actions(i)));
                    } else {
                        let classes = &decomposition.classes;
                        let pick = (rng.next_u64() % classes.len() as u64) as usize;
                        strategies.push(classes[pick].stationary.clone());
                    }
                }
                let sigma = MixedProfile::new(strategies);
                let stayed = g.expected_utility(&sigma, i).unwrap();
                let image = alpha.plan(i).image(s).clone();
                let moved = g
                    .expected_utility(&sigma.with_player(i, image), i)
                    .unwrap();
                assert!(stayed < moved);
            }
        }
    }
    assert!(exercised >= 20);
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

#[test]
fn full_reductions_classify_identically_regardless_of_weighting() {
    for (k, g) in small_corpus().iter().take(30).enumerate() {
        let canonical = reduction::reduce(g, &dual::full_dual_vector(g).unwrap()).unwrap();
        let seeded =
            reduction::reduce(g, &dual::full_dual_vector_seeded(g, 5_000 + k as u64).unwrap())
                .unwrap();
        assert_eq!(canonical.classification, seeded.classification);
        // Same absorbing structure: supports of the reduced actions match.
        for i in 0..g.num_players() {
            let supports = |r: &reduction::ReducedGame| -> Vec<Vec<usize>> {
                r.reduced_actions[i].iter().map(|a| a.support()).collect()
            };
            assert_eq!(supports(&canonical), supports(&seeded));
        }
    }
}

#[test]
fn epsilon_blend_preserves_the_reduction() {
    let mut rng = SplitMix64::new(47);
    for g in small_corpus().iter().take(25) {
        let alpha = dual::full_dual_vector(g).unwrap();
        let eps = Rational::new(
            (1 + rng.next_in_range(0, 8)).into(),
            10.into(),
        );
        let blended = DeviationProfile::new(
            alpha
                .plans()
                .iter()
                .map(|p| epsilon_blend(p, &eps).unwrap())
                .collect(),
        );
        assert!(dual::is_dual_vector(g, &blended).unwrap());
        let a = reduction::reduce(g, &alpha).unwrap();
        let b = reduction::reduce(g, &blended).unwrap();
        assert_eq!(a.reduced_actions, b.reduced_actions);
        assert_eq!(a.classification, b.classification);
    }
}

#[test]
fn rescaling_preserves_reduced_strategy_sets() {
    let mut rng = SplitMix64::new(53);
    for g in small_corpus().iter().take(20) {
        let alpha = dual::full_dual_vector(g).unwrap();
        let scales: Vec<Rational> = (0..g.num_players())
            .map(|_| rat(rng.next_in_range(1, 4)))
            .collect();
        let offsets: Vec<Vec<Rational>> = (0..g.num_players())
            .map(|i| {
                (0..g.num_opponent_profiles(i))
                    .map(|_| rat(rng.next_in_range(-3, 3)))
                    .collect()
            })
            .collect();
        let r = Rescaling { scales, offsets };
        let scaled = g.rescale(&r).unwrap();
        let blended = dual::rescaled_dual_vector(g, &alpha, &r).unwrap();

        // The rescaled blend's gains are the original gains scaled by the
        // smallest factor, profile by profile.
        let a_min = r.scales.iter().min().unwrap().clone();
        let before = dual::gains(g, &alpha).unwrap();
        let after = dual::gains(&scaled, &blended).unwrap();
        for flat in 0..g.num_profiles() {
            assert_eq!(after.total[flat], &a_min * &before.total[flat]);
        }

        let original = reduction::reduce(g, &alpha).unwrap();
        let transported = reduction::reduce(&scaled, &blended).unwrap();
        assert_eq!(original.reduced_actions, transported.reduced_actions);
        assert_eq!(original.classification, transported.classification);
    }
}

#[test]
fn zero_sum_full_reduction_collapses_to_value() {
    for seed in 0..25u64 {
        let m1 = 2 + (seed % 2) as usize;
        let m2 = 2 + (seed % 3 == 0) as usize;
        let base = gen_game(61_000 + seed, &[m1, m2], -3, 3).unwrap();
        let payoffs: Vec<Vec<Rational>> = (0..base.num_profiles())
            .map(|flat| {
                let u = base.payoff_at(flat, 0).clone();
                vec![u.clone(), -u]
            })
            .collect();
        let labels: Vec<Vec<String>> = (0..2).map(|i| base.labels(i).to_vec()).collect();
        let g = Game::new(None, labels, payoffs).unwrap();
        assert!(g.is_zero_sum());

        let coherent = ce::coherent_strategies(&g).unwrap();
        let reduced = reduction::reduce(&g, &dual::full_dual_vector(&g).unwrap()).unwrap();
        assert!(reduced.is_singleton());
        for i in 0..2 {
            assert_eq!(reduced.reduced_actions[i][0].support(), coherent[i]);
            for s in 0..g.num_actions(i) {
                let fate = reduced.classification[i][s];
                if coherent[i].contains(&s) {
                    assert_ne!(fate, Classification::Eliminated);
                } else {
                    assert_eq!(fate, Classification::Eliminated);
                }
            }
        }
        let (value, _, _) = dual::zero_sum_value(&g).unwrap();
        assert_eq!(reduced.game.payoff_row(0), &[value.clone(), -value]);
    }
}

#[test]
fn unique_ce_games_collapse_to_the_equilibrium() {
    let mut seen = 0;
    for g in small_corpus() {
        let report = ce::analyze(&g).unwrap();
        if report.dimension != 0 {
            continue;
        }
        seen += 1;
        let trace = reduction::iterate_to_elementary(&g, Policy::Full).unwrap();
        assert_eq!(trace.stages.len(), 1);
        assert!(trace.stages[0].reduced.is_singleton());
        // The unique CE is the witness; the singleton's lift reproduces it.
        let product = report.witness_ce.product_decomposition(&g).unwrap();
        let singleton = MixedProfile::new(
            (0..trace.terminal.num_players())
                .map(|_| MixedStrategy::degenerate(0, 1))
                .collect(),
        );
        let lifted = trace.lift_mixed_to_base(&singleton).unwrap();
        assert_eq!(lifted, product);

        if report.is_tight {
            // Tight games: the singleton is completely mixed and Nash.
            for i in 0..g.num_players() {
                assert_eq!(lifted.strategy(i).support().len(), g.num_actions(i));
            }
        }
        assert!(nash::is_nash(&g, &lifted).unwrap());
    }
    assert!(seen >= 5, "corpus should contain unique-CE games");
}

#[test]
fn strong_full_terminal_makes_incoherent_strategies_inferior() {
    for g in small_corpus().iter().take(30) {
        let coherent = ce::coherent_strategies(g).unwrap();
        if (0..g.num_players()).all(|i| coherent[i].len() == g.num_actions(i)) {
            continue;
        }
        let trace = reduction::iterate_to_elementary(g, Policy::StrongFull).unwrap();
        // Any Nash equilibrium of the terminal game lifts; use the uniform
        // completely mixed profile when the terminal is a singleton, else
        // skip non-singleton terminals without a cheap equilibrium.
        let terminal_eq = if trace.terminal.num_profiles() == 1 {
            Some(MixedProfile::new(
                (0..trace.terminal.num_players())
                    .map(|_| MixedStrategy::degenerate(0, 1))
                    .collect(),
            ))
        } else if trace.terminal.num_players() == 2 {
            nash::bimatrix_nash(&trace.terminal)
                .unwrap()
                .equilibria
                .into_iter()
                .next()
        } else {
            nash::pure_nash(&trace.terminal)
                .unwrap()
                .equilibria
                .into_iter()
                .next()
        };
        let Some(terminal_eq) = terminal_eq else {
            continue;
        };
        let sigma = trace.lift_mixed_to_base(&terminal_eq).unwrap();
        assert!(nash::is_nash(g, &sigma).unwrap());
        for i in 0..g.num_players() {
            let best = nash::best_responses(
                g,
                i,
                &sigma
                    .strategies()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, s)| s.clone())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            for s in 0..g.num_actions(i) {
                if !coherent[i].contains(&s) {
                    assert!(
                        !best.contains(&s),
                        "incoherent strategies are never best responses here"
                    );
                }
            }
        }
    }
}

#[test]
fn lone_elimination_implies_weak_dominance() {
    let mut exercised = 0;
    for g in small_corpus() {
        let trace = reduction::iterate_to_elementary(&g, Policy::Full).unwrap();
        for stage in &trace.stages {
            let eliminated: Vec<(usize, usize)> = stage
                .reduced
                .classification
                .iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    row.iter().enumerate().filter_map(move |(s, c)| {
                        (*c == Classification::Eliminated).then_some((i, s))
                    })
                })
                .collect();
            let all_others_kept = stage
                .reduced
                .classification
                .iter()
                .flatten()
                .all(|c| !matches!(c, Classification::Grouped(_)));
            if eliminated.len() == 1 && all_others_kept {
                let (i, s) = eliminated[0];
                exercised += 1;
                assert!(
                    nash::weakly_dominated(&stage.reduced.base, i, s)
                        .unwrap()
                        .is_some(),
                    "a lone eliminated strategy admits a weakly dominating mixture"
                );
            }
        }
    }
    assert!(exercised >= 3);
}

// ---------------------------------------------------------------------------
// Nash machinery
// ---------------------------------------------------------------------------

#[test]
fn enumerated_equilibria_are_exactly_nash() {
    for g in small_corpus().iter().filter(|g| g.num_players() == 2) {
        let report = nash::bimatrix_nash(g).unwrap();
        for e in &report.equilibria {
            assert!(nash::is_nash(g, e).unwrap());
        }
        // Condition (a) agrees with a manual scan of the same report.
        let manual = report.equilibria.iter().all(|e| {
            e.strategy(0).support().len() == e.strategy(1).support().len()
        });
        let abc = nash::check_conditions_abc(g).unwrap();
        assert_eq!(abc.a, manual);
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[test]
fn json_reports_use_exact_rational_strings() {
    use serde_json::Value;

    fn no_floats(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float in report: {n}"),
            Value::Array(items) => items.iter().for_each(no_floats),
            Value::Object(map) => map.values().for_each(no_floats),
            _ => {}
        }
    }

    let g = weak_dominance_game();
    let report = ce::analyze(&g).unwrap();
    let doc = dualred::report::ce_report_doc(&g, &report);
    let json = dualred::report::to_json(&doc);
    let value: Value = serde_json::from_str(&json).unwrap();
    no_floats(&value);

    // Witness weights re-parse to the exact internal rationals.
    let witness = value["witness_ce"]["weights"].as_array().unwrap();
    for (flat, w) in witness.iter().enumerate() {
        let parsed = dualred::rational::parse_rational(w.as_str().unwrap()).unwrap();
        assert_eq!(&parsed, report.witness_ce.weight_at(flat));
    }

    let trace = reduction::iterate_to_elementary(&g, Policy::Full).unwrap();
    let doc = dualred::report::trace_doc("full", &trace);
    let value: Value = serde_json::from_str(&dualred::report::to_json(&doc)).unwrap();
    no_floats(&value);
}

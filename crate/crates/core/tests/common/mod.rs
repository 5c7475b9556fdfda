//! Shared fixtures for the integration suites: the worked example games and
//! the seeded random corpus.

#![allow(dead_code)]

use dualred::game::{Game, MixedProfile, MixedStrategy};
use dualred::gen::{gen_game, SplitMix64};
use dualred::rational::{rat, Rational};

/// Matching Pennies with labels x/y per player.
pub fn matching_pennies() -> Game {
    Game::new(
        Some("matching-pennies".into()),
        vec![
            vec!["x1".into(), "y1".into()],
            vec!["x2".into(), "y2".into()],
        ],
        vec![
            vec![rat(1), rat(-1)],
            vec![rat(-1), rat(1)],
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(-1)],
        ],
    )
    .unwrap()
}

/// The 2x2 game where x2 weakly dominates y2 and x1, y1 jeopardize each
/// other: rows (1,1) (1,0) / (1,0) (0,0).
pub fn weak_dominance_game() -> Game {
    Game::new(
        Some("weak-dominance".into()),
        vec![
            vec!["x1".into(), "y1".into()],
            vec!["x2".into(), "y2".into()],
        ],
        vec![
            vec![rat(1), rat(1)],
            vec![rat(1), rat(0)],
            vec![rat(1), rat(0)],
            vec![rat(0), rat(0)],
        ],
    )
    .unwrap()
}

/// The 2x3 game whose first column is payoff-equivalent (for player 2) to
/// the even mix of the other two.
pub fn three_column_game() -> Game {
    Game::new(
        Some("three-column".into()),
        vec![
            vec!["y1".into(), "z1".into()],
            vec!["x2".into(), "y2".into(), "z2".into()],
        ],
        vec![
            vec![rat(2), rat(0)],
            vec![rat(1), rat(1)],
            vec![rat(-1), rat(-1)],
            vec![rat(2), rat(0)],
            vec![rat(-1), rat(-1)],
            vec![rat(1), rat(1)],
        ],
    )
    .unwrap()
}

/// The right-hand 2x2 coordination game that the three-column game reduces
/// to.
pub fn three_column_reduced() -> Game {
    Game::new(
        None,
        vec![
            vec!["y1".into(), "z1".into()],
            vec!["y2".into(), "z2".into()],
        ],
        vec![
            vec![rat(1), rat(1)],
            vec![rat(-1), rat(-1)],
            vec![rat(-1), rat(-1)],
            vec![rat(1), rat(1)],
        ],
    )
    .unwrap()
}

/// The 1x2 game with payoffs (1,1), (0,1): player 2 indifferent everywhere.
pub fn epsilon_game() -> Game {
    Game::new(
        Some("epsilon".into()),
        vec![vec!["x1".into()], vec!["x2".into(), "y2".into()]],
        vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]],
    )
    .unwrap()
}

pub fn coordination() -> Game {
    Game::from_integer_rows(&[2, 2], &[vec![1, 1], vec![0, 0], vec![0, 0], vec![1, 1]]).unwrap()
}

pub fn trivial_game() -> Game {
    Game::from_integer_rows(&[1, 1], &[vec![0, 0]]).unwrap()
}

pub fn all_zero_2x2() -> Game {
    Game::from_integer_rows(&[2, 2], &vec![vec![0, 0]; 4]).unwrap()
}

/// The seeded random corpus: 210 games up to 3x3 (two players) and 2x2x2
/// (three players). Deterministic.
pub fn corpus() -> Vec<Game> {
    let mut games = Vec::new();
    for seed in 0..120 {
        games.push(gen_game(1000 + seed, &[2, 2], -3, 3).unwrap());
    }
    for seed in 0..30 {
        games.push(gen_game(2000 + seed, &[2, 3], -3, 3).unwrap());
    }
    for seed in 0..10 {
        games.push(gen_game(2500 + seed, &[3, 2], -3, 3).unwrap());
    }
    for seed in 0..30 {
        games.push(gen_game(3000 + seed, &[3, 3], -3, 3).unwrap());
    }
    for seed in 0..20 {
        games.push(gen_game(4000 + seed, &[2, 2, 2], -3, 3).unwrap());
    }
    games
}

/// A smaller deterministic slice for the more expensive end-to-end
/// properties.
pub fn small_corpus() -> Vec<Game> {
    let mut games = Vec::new();
    for seed in 0..40 {
        games.push(gen_game(1000 + seed, &[2, 2], -3, 3).unwrap());
    }
    for seed in 0..10 {
        games.push(gen_game(2000 + seed, &[2, 3], -3, 3).unwrap());
    }
    for seed in 0..10 {
        games.push(gen_game(3000 + seed, &[3, 3], -3, 3).unwrap());
    }
    for seed in 0..8 {
        games.push(gen_game(4000 + seed, &[2, 2, 2], -3, 3).unwrap());
    }
    games
}

/// Random distribution over `n` points: small integer weights, normalized,
/// never the zero vector.
pub fn random_mixed(rng: &mut SplitMix64, n: usize) -> MixedStrategy {
    loop {
        let draws: Vec<i64> = (0..n).map(|_| rng.next_in_range(0, 4)).collect();
        let total: i64 = draws.iter().sum();
        if total == 0 {
            continue;
        }
        let weights: Vec<Rational> = draws
            .iter()
            .map(|&d| Rational::new(d.into(), total.into()))
            .collect();
        return MixedStrategy::new(weights).unwrap();
    }
}

pub fn random_profile(rng: &mut SplitMix64, game: &Game) -> MixedProfile {
    MixedProfile::new(
        (0..game.num_players())
            .map(|i| random_mixed(rng, game.num_actions(i)))
            .collect(),
    )
}

pub fn random_deviation_profile(
    rng: &mut SplitMix64,
    game: &Game,
) -> dualred::dual::DeviationProfile {
    dualred::dual::DeviationProfile::new(
        (0..game.num_players())
            .map(|i| {
                let m = game.num_actions(i);
                dualred::dual::DeviationPlan::new(
                    (0..m).map(|_| random_mixed(rng, m)).collect(),
                )
                .unwrap()
            })
            .collect(),
    )
}

/// Two-player symmetric game: `U_2(k, l) = U_1(l, k)`.
pub fn symmetric_two_player(seed: u64, m: usize, lo: i64, hi: i64) -> Game {
    let mut rng = SplitMix64::new(seed);
    let mut a = vec![vec![rat(0); m]; m];
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v = rat(rng.next_in_range(lo, hi));
        }
    }
    let mut payoffs = Vec::with_capacity(m * m);
    for k in 0..m {
        for l in 0..m {
            payoffs.push(vec![a[k][l].clone(), a[l][k].clone()]);
        }
    }
    let labels: Vec<Vec<String>> = (0..2)
        .map(|_| (1..=m).map(|s| format!("s{s}")).collect())
        .collect();
    Game::new(None, labels, payoffs).unwrap()
}

/// Three-player game symmetric under the cycle p = (1 -> 2 -> 3 -> 1), with
/// `m` strategies per player: `U_{p(i)}(c^p) = U_i(c)` by construction.
pub fn cyclic_three_player(seed: u64, m: usize, lo: i64, hi: i64) -> Game {
    use dualred::game::{PlayerPermutation, Profile};
    let mut rng = SplitMix64::new(seed);
    let counts = vec![m; 3];
    let total = m * m * m;
    let base: Vec<Rational> = (0..total).map(|_| rat(rng.next_in_range(lo, hi))).collect();
    let template = gen_game(0, &counts, 0, 0).unwrap(); // index helper only
    let cycle = PlayerPermutation::new(vec![1, 2, 0]).unwrap();
    let inverse = PlayerPermutation::new(vec![2, 0, 1]).unwrap();
    let mut payoffs = vec![vec![rat(0); 3]; total];
    for flat in 0..total {
        let profile = template.profile_at(flat);
        // U_0 = base; U_1(c) = U_0(c^{p^-1}); U_2(c) = U_0(c^{p^-2}).
        payoffs[flat][0] = base[flat].clone();
        let pre1: Profile = inverse.apply_profile(&profile);
        payoffs[flat][1] = base[template.profile_index(&pre1)].clone();
        let pre2: Profile = inverse.apply_profile(&pre1);
        payoffs[flat][2] = base[template.profile_index(&pre2)].clone();
    }
    let labels: Vec<Vec<String>> = (0..3)
        .map(|_| (1..=m).map(|s| format!("s{s}")).collect())
        .collect();
    let game = Game::new(None, labels, payoffs).unwrap();
    debug_assert!(game.is_p_symmetric(&cycle).unwrap());
    game
}

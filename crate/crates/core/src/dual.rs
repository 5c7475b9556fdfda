//! Deviation plans, dual vectors, and their refinements.
//!
//! A deviation plan for player i maps every recommended pure strategy to the
//! mixed strategy the player would deviate to. A profile of plans α is a
//! dual vector when the total deviation gain `D(c,α) = Σ_i [U_i(c_{-i},
//! α_i ∗ c_i) − U_i(c)]` is nonnegative at every pure profile.
//!
//! The refinements implemented here:
//!
//! - *full*: positive in every component that is positive in at least one
//!   dual vector; its support is exactly the jeopardization relation.
//! - *strong*: `D(c,α) > 0` on every profile with probability zero in all
//!   correlated equilibria.
//! - *strong and full*: any strict convex combination of the two; the
//!   canonical witness uses weight 1/2.
//!
//! Special-purpose constructors cover zero-sum games (plans built from
//! optimal strategies), payoff rescalings (ε-blends), redundant strategies
//! (the reduced-normal-form step), and symmetrization by player
//! permutations.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ce::{self, CeError};
use crate::game::{
    permutation_closure, Game, GameError, MixedStrategy, PlayerPermutation, Rescaling,
};
use crate::gen::SplitMix64;
use crate::lp::{self, LinearProgram, LpError, Relation};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Error)]
pub enum DualError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error("deviation profile shape does not match the game")]
    Shape,
    #[error("the given profile is not a dual vector")]
    NotADualVector,
    #[error("the game is not two-player zero-sum")]
    NotZeroSum,
    #[error("the given strategy for player {0} is not optimal")]
    NotOptimal(usize),
    #[error("epsilon must lie in (0, 1]")]
    EpsilonRange,
    #[error("game is not symmetric under the permutation closure")]
    NotSymmetric,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A deviation plan `α_i`: one mixed strategy per recommended strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationPlan {
    rows: Vec<MixedStrategy>,
}

impl DeviationPlan {
    pub fn new(rows: Vec<MixedStrategy>) -> Result<DeviationPlan, DualError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(DualError::Shape);
        }
        Ok(DeviationPlan { rows })
    }

    /// The identity plan: every recommendation mapped to itself.
    pub fn identity(n: usize) -> DeviationPlan {
        DeviationPlan {
            rows: (0..n).map(|s| MixedStrategy::degenerate(s, n)).collect(),
        }
    }

    pub fn num_strategies(&self) -> usize {
        self.rows.len()
    }

    /// `α_i ∗ c_i`.
    pub fn image(&self, from: usize) -> &MixedStrategy {
        &self.rows[from]
    }

    /// `α_i(d_i | c_i)`.
    pub fn weight(&self, from: usize, to: usize) -> &Rational {
        self.rows[from].weight(to)
    }

    /// `α_i ∗ σ_i = Σ_{c_i} σ_i(c_i) (α_i ∗ c_i)`.
    pub fn apply(&self, sigma: &MixedStrategy) -> Result<MixedStrategy, DualError> {
        let n = self.num_strategies();
        if sigma.len() != n {
            return Err(DualError::Shape);
        }
        let mut weights = vec![Rational::zero(); n];
        for from in 0..n {
            let w = sigma.weight(from);
            if w.is_zero() {
                continue;
            }
            for to in 0..n {
                let step = self.weight(from, to);
                if !step.is_zero() {
                    weights[to] += w * step;
                }
            }
        }
        MixedStrategy::new(weights).map_err(|_| DualError::Internal("row sums".into()))
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(s, row)| row.as_pure() == Some(s))
    }
}

/// A profile of deviation plans `α = (α_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationProfile {
    plans: Vec<DeviationPlan>,
}

impl DeviationProfile {
    pub fn new(plans: Vec<DeviationPlan>) -> DeviationProfile {
        DeviationProfile { plans }
    }

    /// The trivial dual vector: identity plans everywhere; all gains zero.
    pub fn trivial(game: &Game) -> DeviationProfile {
        DeviationProfile {
            plans: (0..game.num_players())
                .map(|i| DeviationPlan::identity(game.num_actions(i)))
                .collect(),
        }
    }

    pub fn plans(&self) -> &[DeviationPlan] {
        &self.plans
    }

    pub fn plan(&self, player: usize) -> &DeviationPlan {
        &self.plans[player]
    }

    pub fn matches(&self, game: &Game) -> Result<(), DualError> {
        if self.plans.len() != game.num_players() {
            return Err(DualError::Shape);
        }
        for (i, plan) in self.plans.iter().enumerate() {
            if plan.num_strategies() != game.num_actions(i) {
                return Err(DualError::Shape);
            }
        }
        Ok(())
    }

    /// Support as `(player, from, to)` triples with positive weight.
    pub fn support(&self) -> BTreeSet<PlanComponent> {
        let mut support = BTreeSet::new();
        for (i, plan) in self.plans.iter().enumerate() {
            for from in 0..plan.num_strategies() {
                for to in 0..plan.num_strategies() {
                    if plan.weight(from, to).is_positive() {
                        support.insert((i, from, to));
                    }
                }
            }
        }
        support
    }
}

/// Exact table of per-player and total deviation gains at every profile.
#[derive(Debug, Clone)]
pub struct DualGainTable {
    /// `gains[flat profile][player] = D_i(c, α_i)`.
    pub per_player: Vec<Vec<Rational>>,
    /// `total[flat profile] = D(c, α)`.
    pub total: Vec<Rational>,
}

/// Compute `D_i(c, α_i) = U_i(c_{-i}, α_i ∗ c_i) − U_i(c)` for all c, i.
pub fn gains(game: &Game, alpha: &DeviationProfile) -> Result<DualGainTable, DualError> {
    alpha.matches(game)?;
    let mut per_player = Vec::with_capacity(game.num_profiles());
    let mut total = Vec::with_capacity(game.num_profiles());
    for c in game.profiles() {
        let mut row = Vec::with_capacity(game.num_players());
        let mut sum = Rational::zero();
        for i in 0..game.num_players() {
            let image = alpha.plan(i).image(c.0[i]);
            let mut deviated = Rational::zero();
            for (d, w) in image.weights().iter().enumerate() {
                if !w.is_zero() {
                    deviated += w * game.payoff(&c.with_player(i, d), i);
                }
            }
            let gain = deviated - game.payoff(&c, i);
            sum += &gain;
            row.push(gain);
        }
        per_player.push(row);
        total.push(sum);
    }
    Ok(DualGainTable { per_player, total })
}

/// Dual-vector test; returns the flat profiles where `D(c,α) < 0` when the
/// test fails.
pub fn dual_vector_violations(
    game: &Game,
    alpha: &DeviationProfile,
) -> Result<Vec<usize>, DualError> {
    let table = gains(game, alpha)?;
    Ok((0..table.total.len())
        .filter(|&flat| table.total[flat].is_negative())
        .collect())
}

pub fn is_dual_vector(game: &Game, alpha: &DeviationProfile) -> Result<bool, DualError> {
    Ok(dual_vector_violations(game, alpha)?.is_empty())
}

// ---------------------------------------------------------------------------
// The dual-vector polytope
// ---------------------------------------------------------------------------

/// The polytope of dual vectors over plan-entry variables `α_i(d_i|c_i)`.
///
/// Variables in lexicographic `(player, from, to)` order; rows: one simplex
/// equality per `(player, from)`, one gain inequality `D(c,α) ≥ 0` per
/// profile, one nonnegativity row per variable.
#[derive(Debug, Clone)]
pub struct DualSystem {
    pub lp: LinearProgram,
    counts: Vec<usize>,
    num_entries: usize,
    num_rows_simplex: usize,
}

impl DualSystem {
    pub fn var_index(&self, player: usize, from: usize, to: usize) -> usize {
        let mut idx = 0;
        for i in 0..player {
            idx += self.counts[i] * self.counts[i];
        }
        idx + from * self.counts[player] + to
    }

    pub fn gain_row(&self, flat_profile: usize) -> usize {
        self.num_rows_simplex + flat_profile
    }

    pub fn num_entries(&self) -> usize {
        self.num_entries
    }

    /// Read a deviation profile off a solution point.
    pub fn profile_from_point(&self, point: &[Rational]) -> Result<DeviationProfile, DualError> {
        let mut plans = Vec::with_capacity(self.counts.len());
        for (i, &m) in self.counts.iter().enumerate() {
            let mut rows = Vec::with_capacity(m);
            for from in 0..m {
                let weights = (0..m)
                    .map(|to| point[self.var_index(i, from, to)].clone())
                    .collect();
                rows.push(
                    MixedStrategy::new(weights)
                        .map_err(|e| DualError::Internal(format!("plan row: {e}")))?,
                );
            }
            plans.push(DeviationPlan::new(rows)?);
        }
        Ok(DeviationProfile::new(plans))
    }
}

/// Assemble the dual-vector polytope of a game.
pub fn dual_system(game: &Game) -> DualSystem {
    let counts = game.action_counts();
    let num_entries: usize = counts.iter().map(|&m| m * m).sum();
    let mut lp = LinearProgram::feasibility(num_entries);

    let var_index = |player: usize, from: usize, to: usize| {
        let mut idx = 0;
        for i in 0..player {
            idx += counts[i] * counts[i];
        }
        idx + from * counts[player] + to
    };

    // Simplex rows per (player, from).
    let mut num_rows_simplex = 0;
    for (i, &m) in counts.iter().enumerate() {
        for from in 0..m {
            let mut coeffs = vec![Rational::zero(); num_entries];
            for to in 0..m {
                coeffs[var_index(i, from, to)] = Rational::one();
            }
            lp.push(coeffs, Relation::Eq, Rational::one());
            num_rows_simplex += 1;
        }
    }

    // Gain rows: D(c, α) ≥ 0, linear in the plan entries.
    for c in game.profiles() {
        let mut coeffs = vec![Rational::zero(); num_entries];
        for i in 0..game.num_players() {
            let from = c.0[i];
            for to in 0..counts[i] {
                let delta = game.payoff(&c.with_player(i, to), i) - game.payoff(&c, i);
                if !delta.is_zero() {
                    coeffs[var_index(i, from, to)] += delta;
                }
            }
        }
        lp.push(coeffs, Relation::Ge, Rational::zero());
    }

    // Nonnegativity rows (indexable) + bounds (solver hint).
    for v in 0..num_entries {
        let mut coeffs = vec![Rational::zero(); num_entries];
        coeffs[v] = Rational::one();
        lp.push(coeffs, Relation::Ge, Rational::zero());
        lp.set_lower_bound(v, Rational::zero());
    }

    DualSystem {
        lp,
        counts,
        num_entries,
        num_rows_simplex,
    }
}

/// A `(player, from, to)` plan entry.
pub type PlanComponent = (usize, usize, usize);

/// Per-triple maximizers over the dual polytope. Returns the triples with a
/// positive maximum together with each solve's witness profile.
fn component_maximizers(
    game: &Game,
) -> Result<Vec<(PlanComponent, DeviationProfile)>, DualError> {
    let system = dual_system(game);
    let mut out = Vec::new();
    for i in 0..game.num_players() {
        for from in 0..game.num_actions(i) {
            for to in 0..game.num_actions(i) {
                let mut probe = system.lp.clone();
                probe.objective[system.var_index(i, from, to)] = Rational::one();
                probe.direction = lp::Direction::Maximize;
                let solved = lp::solve(&probe)?;
                if solved.status != lp::LpStatus::Optimal {
                    return Err(DualError::Internal(
                        "dual polytope is nonempty and bounded".into(),
                    ));
                }
                if solved.value.unwrap().is_positive() {
                    let witness = system.profile_from_point(&solved.point.unwrap())?;
                    out.push(((i, from, to), witness));
                }
            }
        }
    }
    Ok(out)
}

/// Triples `(player, from, to)` whose plan entry is positive in at least one
/// dual vector. By strong complementary slackness this is exactly the
/// jeopardization relation (plus the diagonal).
pub fn component_support(game: &Game) -> Result<BTreeSet<PlanComponent>, DualError> {
    Ok(component_maximizers(game)?
        .into_iter()
        .map(|(t, _)| t)
        .collect())
}

fn average_profiles(
    game: &Game,
    profiles: &[DeviationProfile],
    weights: &[Rational],
) -> Result<DeviationProfile, DualError> {
    debug_assert_eq!(profiles.len(), weights.len());
    let total: Rational = weights.iter().sum();
    let mut plans = Vec::with_capacity(game.num_players());
    for i in 0..game.num_players() {
        let m = game.num_actions(i);
        let mut rows = Vec::with_capacity(m);
        for from in 0..m {
            let mut acc = vec![Rational::zero(); m];
            for (alpha, w) in profiles.iter().zip(weights) {
                for to in 0..m {
                    let entry = alpha.plan(i).weight(from, to);
                    if !entry.is_zero() {
                        acc[to] += w * entry;
                    }
                }
            }
            for a in acc.iter_mut() {
                *a = &*a / &total;
            }
            rows.push(MixedStrategy::new(acc).map_err(|e| DualError::Internal(e.to_string()))?);
        }
        plans.push(DeviationPlan::new(rows)?);
    }
    Ok(DeviationProfile::new(plans))
}

fn full_dual_vector_with_weights(
    game: &Game,
    weight_of: impl FnMut(usize) -> Rational,
) -> Result<DeviationProfile, DualError> {
    let maximizers = component_maximizers(game)?;
    let profiles: Vec<DeviationProfile> = maximizers.into_iter().map(|(_, w)| w).collect();
    if profiles.is_empty() {
        return Err(DualError::Internal("empty component support".into()));
    }
    let weights: Vec<Rational> = (0..profiles.len()).map(weight_of).collect();
    let alpha = average_profiles(game, &profiles, &weights)?;
    if !is_dual_vector(game, &alpha)? {
        return Err(DualError::Internal("average left the polytope".into()));
    }
    Ok(alpha)
}

/// The canonical full dual vector: the uniform average of the per-triple
/// maximizers. Positive exactly on the component support, deterministic.
pub fn full_dual_vector(game: &Game) -> Result<DeviationProfile, DualError> {
    full_dual_vector_with_weights(game, |_| Rational::one())
}

/// A full dual vector built with seeded strictly-positive averaging weights.
/// Any strict convex combination of the maximizers is full, so every seed
/// yields a valid full dual vector; different seeds generally yield
/// different ones. Used to probe reduction invariance.
pub fn full_dual_vector_seeded(game: &Game, seed: u64) -> Result<DeviationProfile, DualError> {
    let mut rng = SplitMix64::new(seed);
    full_dual_vector_with_weights(game, move |_| rat(1) + rat(rng.next_in_range(0, 97)))
}

/// Is `alpha` full: support equal to the component support of the game?
pub fn is_full(game: &Game, alpha: &DeviationProfile) -> Result<bool, DualError> {
    if !is_dual_vector(game, alpha)? {
        return Ok(false);
    }
    Ok(alpha.support() == component_support(game)?)
}

/// Is `alpha` strong: `D(c,α) > 0` on every profile with probability zero in
/// all correlated equilibria?
pub fn is_strong(game: &Game, alpha: &DeviationProfile) -> Result<bool, DualError> {
    if !is_dual_vector(game, alpha)? {
        return Ok(false);
    }
    let zero = ce::zero_probability_profiles(game)?;
    let table = gains(game, alpha)?;
    Ok(zero.iter().all(|&flat| table.total[flat].is_positive()))
}

/// Canonical strong dual vector. With `Z = ∅` every dual vector is strong
/// and the trivial one is returned; otherwise the gain slack on `Z` is
/// maximized (capped at 1) and the optimum must be positive.
pub fn strong_dual_vector(game: &Game) -> Result<DeviationProfile, DualError> {
    let zero = ce::zero_probability_profiles(game)?;
    if zero.is_empty() {
        return Ok(DeviationProfile::trivial(game));
    }
    let system = dual_system(game);
    let rows: Vec<usize> = zero.iter().map(|&flat| system.gain_row(flat)).collect();
    let (slack, point) = lp::max_min_slack(&system.lp, &rows)?;
    if !slack.is_positive() {
        return Err(DualError::Internal(
            "strong dual vectors exist for every game".into(),
        ));
    }
    system.profile_from_point(&point)
}

/// Canonical strong and full dual vector: the midpoint of the canonical full
/// and strong witnesses, verified to be both before returning.
pub fn strong_full_dual_vector(game: &Game) -> Result<DeviationProfile, DualError> {
    let full = full_dual_vector(game)?;
    let strong = strong_dual_vector(game)?;
    let alpha = average_profiles(
        game,
        &[full, strong],
        &[Rational::one(), Rational::one()],
    )?;
    if !is_full(game, &alpha)? {
        return Err(DualError::Internal("combination lost fullness".into()));
    }
    if !is_strong(game, &alpha)? {
        return Err(DualError::Internal("combination lost strength".into()));
    }
    Ok(alpha)
}

// ---------------------------------------------------------------------------
// Zero-sum constructions
// ---------------------------------------------------------------------------

/// Value and canonical optimal strategies of a two-player zero-sum game,
/// from the standard maximin LP for each side.
pub fn zero_sum_value(game: &Game) -> Result<(Rational, MixedStrategy, MixedStrategy), DualError> {
    if !game.is_zero_sum() {
        return Err(DualError::NotZeroSum);
    }
    let value = maximin(game, 0)?;
    let opt1 = value.1;
    let guaranteed = maximin(game, 1)?;
    let opt2 = guaranteed.1;
    // Player 2 guarantees −v of player 1's payoff.
    if guaranteed.0 != -value.0.clone() {
        return Err(DualError::Internal("minimax mismatch".into()));
    }
    Ok((value.0, opt1, opt2))
}

/// Maximin for `player`: maximize v s.t. the player's mixed strategy earns
/// at least v against every opposing pure strategy.
fn maximin(game: &Game, player: usize) -> Result<(Rational, MixedStrategy), DualError> {
    let m = game.num_actions(player);
    let other = 1 - player;
    let n = m + 1; // weights + v
    let mut lp = LinearProgram::new(
        n,
        {
            let mut obj = vec![Rational::zero(); n];
            obj[m] = Rational::one();
            obj
        },
        lp::Direction::Maximize,
    );
    for s in 0..m {
        lp.set_lower_bound(s, Rational::zero());
    }
    let mut simplex = vec![Rational::one(); n];
    simplex[m] = Rational::zero();
    lp.push(simplex, Relation::Eq, Rational::one());
    for opp in 0..game.num_actions(other) {
        let mut coeffs = vec![Rational::zero(); n];
        for s in 0..m {
            let mut profile = vec![0; 2];
            profile[player] = s;
            profile[other] = opp;
            coeffs[s] = game
                .payoff(&crate::game::Profile(profile), player)
                .clone();
        }
        coeffs[m] = -Rational::one();
        lp.push(coeffs, Relation::Ge, Rational::zero());
    }
    let out = lp::solve(&lp)?;
    if out.status != lp::LpStatus::Optimal {
        return Err(DualError::Internal("maximin LP must be solvable".into()));
    }
    let mut point = out.point.unwrap();
    let v = point.pop().unwrap();
    let sigma = MixedStrategy::new(point).map_err(|e| DualError::Internal(e.to_string()))?;
    Ok((v, sigma))
}

/// Check `sigma` is optimal for `player` in a zero-sum game: it guarantees
/// the game's value against every opposing pure strategy.
fn is_optimal_strategy(
    game: &Game,
    player: usize,
    sigma: &MixedStrategy,
    value: &Rational,
) -> Result<bool, DualError> {
    if sigma.len() != game.num_actions(player) {
        return Err(DualError::Shape);
    }
    let other = 1 - player;
    let target = if player == 0 {
        value.clone()
    } else {
        -value.clone()
    };
    for opp in 0..game.num_actions(other) {
        let mut earned = Rational::zero();
        for s in 0..game.num_actions(player) {
            let w = sigma.weight(s);
            if w.is_zero() {
                continue;
            }
            let mut profile = vec![0; 2];
            profile[player] = s;
            profile[other] = opp;
            earned += w * game.payoff(&crate::game::Profile(profile), player);
        }
        if earned < target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Build the dual vector sending every recommendation of player i to the
/// optimal strategy `opt_i`. The induced reduction is the singleton
/// `{(opt_1, opt_2)}`. Optimality is checked exactly against the value LP.
pub fn zero_sum_dual_vector(
    game: &Game,
    opt1: &MixedStrategy,
    opt2: &MixedStrategy,
) -> Result<DeviationProfile, DualError> {
    if !game.is_zero_sum() {
        return Err(DualError::NotZeroSum);
    }
    let (value, _, _) = zero_sum_value(game)?;
    if !is_optimal_strategy(game, 0, opt1, &value)? {
        return Err(DualError::NotOptimal(0));
    }
    if !is_optimal_strategy(game, 1, opt2, &value)? {
        return Err(DualError::NotOptimal(1));
    }
    let plans = vec![
        DeviationPlan::new(vec![opt1.clone(); game.num_actions(0)])?,
        DeviationPlan::new(vec![opt2.clone(); game.num_actions(1)])?,
    ];
    let alpha = DeviationProfile::new(plans);
    if !is_dual_vector(game, &alpha)? {
        return Err(DualError::Internal(
            "optimal-strategy plans are always dual vectors".into(),
        ));
    }
    Ok(alpha)
}

/// Zero-sum dual vector from the canonical value-LP optima.
pub fn zero_sum_dual_vector_canonical(game: &Game) -> Result<DeviationProfile, DualError> {
    let (_, opt1, opt2) = zero_sum_value(game)?;
    zero_sum_dual_vector(game, &opt1, &opt2)
}

// ---------------------------------------------------------------------------
// Blends, rescalings, redundancy, symmetrization
// ---------------------------------------------------------------------------

/// `α_i^ε ∗ c_i = ε (α_i ∗ c_i) + (1−ε) c_i`. Stationary strategies are
/// unchanged: `α^ε ∗ σ − σ = ε (α ∗ σ − σ)`.
pub fn epsilon_blend(plan: &DeviationPlan, eps: &Rational) -> Result<DeviationPlan, DualError> {
    if !eps.is_positive() || eps > &Rational::one() {
        return Err(DualError::EpsilonRange);
    }
    let n = plan.num_strategies();
    let keep = Rational::one() - eps;
    let mut rows = Vec::with_capacity(n);
    for from in 0..n {
        let mut weights: Vec<Rational> = plan
            .image(from)
            .weights()
            .iter()
            .map(|w| eps * w)
            .collect();
        weights[from] += &keep;
        rows.push(MixedStrategy::new(weights).map_err(|e| DualError::Internal(e.to_string()))?);
    }
    DeviationPlan::new(rows)
}

/// Rescale a dual vector of `game` into one of `game.rescale(r)` via the
/// per-player ε-blend with `ε_i = (min_j a_j) / a_i`. The blended profile
/// induces the same reduced strategy sets and satisfies
/// `D'(c,α') = (min_j a_j) · D(c,α)` entrywise.
pub fn rescaled_dual_vector(
    game: &Game,
    alpha: &DeviationProfile,
    r: &Rescaling,
) -> Result<DeviationProfile, DualError> {
    alpha.matches(game)?;
    if !is_dual_vector(game, alpha)? {
        return Err(DualError::NotADualVector);
    }
    let scaled = game.rescale(r)?;
    let a_min = r
        .scales
        .iter()
        .min()
        .ok_or_else(|| DualError::Internal("no players".into()))?
        .clone();
    let mut plans = Vec::with_capacity(game.num_players());
    for (i, plan) in alpha.plans().iter().enumerate() {
        let eps = &a_min / &r.scales[i];
        plans.push(epsilon_blend(plan, &eps)?);
    }
    let blended = DeviationProfile::new(plans);
    if !is_dual_vector(&scaled, &blended)? {
        return Err(DualError::Internal(
            "rescaled blend must be a dual vector of the rescaled game".into(),
        ));
    }
    Ok(blended)
}

/// Detect strategies payoff-equivalent (for their own player, against every
/// opponent profile) to a mixture of the player's other remaining
/// strategies, and build the dual vector mapping each removed strategy to
/// its equivalent mixture. Strategies are scanned in index order; removed
/// ones are excluded from later mixtures so duplicates lose exactly one
/// copy. All gains are identically zero, so the result is always a dual
/// vector and the induced reduction is the reduced-normal-form step.
pub fn redundancy_dual_vector(
    game: &Game,
) -> Result<(DeviationProfile, Vec<(usize, usize)>), DualError> {
    let mut removed: Vec<(usize, usize)> = Vec::new();
    let mut plans = Vec::with_capacity(game.num_players());
    for i in 0..game.num_players() {
        let m = game.num_actions(i);
        let mut removed_here: Vec<usize> = Vec::new();
        let mut rows: Vec<MixedStrategy> =
            (0..m).map(|s| MixedStrategy::degenerate(s, m)).collect();
        for s in 0..m {
            let others: Vec<usize> = (0..m)
                .filter(|&t| t != s && !removed_here.contains(&t))
                .collect();
            if others.is_empty() {
                continue;
            }
            if let Some(sigma) = equivalent_mixture(game, i, s, &others)? {
                rows[s] = sigma;
                removed_here.push(s);
                removed.push((i, s));
            }
        }
        plans.push(DeviationPlan::new(rows)?);
    }
    Ok((DeviationProfile::new(plans), removed))
}

/// Feasibility LP: σ_i over `support` with `U_i(c_{-i}, σ_i) = U_i(c_{-i},
/// s)` for every opponent profile.
fn equivalent_mixture(
    game: &Game,
    player: usize,
    s: usize,
    support: &[usize],
) -> Result<Option<MixedStrategy>, DualError> {
    let k = support.len();
    let mut lp = LinearProgram::feasibility(k);
    for v in 0..k {
        lp.set_lower_bound(v, Rational::zero());
    }
    lp.push(vec![Rational::one(); k], Relation::Eq, Rational::one());
    for c in game.profiles() {
        if c.0[player] != s {
            continue;
        }
        let coeffs: Vec<Rational> = support
            .iter()
            .map(|&t| game.payoff(&c.with_player(player, t), player).clone())
            .collect();
        lp.push(coeffs, Relation::Eq, game.payoff(&c, player).clone());
    }
    let out = lp::solve(&lp)?;
    match out.status {
        lp::LpStatus::Optimal => {
            let point = out.point.unwrap();
            let mut weights = vec![Rational::zero(); game.num_actions(player)];
            for (v, &t) in support.iter().enumerate() {
                weights[t] = point[v].clone();
            }
            Ok(Some(
                MixedStrategy::new(weights).map_err(|e| DualError::Internal(e.to_string()))?,
            ))
        }
        lp::LpStatus::Infeasible => Ok(None),
        lp::LpStatus::Unbounded => Err(DualError::Internal("feasibility LP unbounded".into())),
    }
}

/// Average a dual vector over the composition closure of `perms`:
/// `ᾱ = (Σ_{p ∈ P} α^p)/|P|` where `α^p_{p(i)} = α_i`. The result is a dual
/// vector with `ᾱ_{p(i)} = ᾱ_i`; strength and fullness are preserved.
pub fn symmetrize(
    game: &Game,
    perms: &[PlayerPermutation],
    alpha: &DeviationProfile,
) -> Result<DeviationProfile, DualError> {
    alpha.matches(game)?;
    if !is_dual_vector(game, alpha)? {
        return Err(DualError::NotADualVector);
    }
    let closure = if perms.is_empty() {
        vec![PlayerPermutation::identity(game.num_players())]
    } else {
        permutation_closure(perms)
    };
    for p in &closure {
        if !game.is_p_symmetric(p)? {
            return Err(DualError::NotSymmetric);
        }
    }
    let permuted: Vec<DeviationProfile> = closure
        .iter()
        .map(|p| {
            let mut plans = vec![None; game.num_players()];
            for i in 0..game.num_players() {
                plans[p.apply(i)] = Some(alpha.plan(i).clone());
            }
            DeviationProfile::new(plans.into_iter().map(Option::unwrap).collect())
        })
        .collect();
    let weights = vec![Rational::one(); permuted.len()];
    let averaged = average_profiles(game, &permuted, &weights)?;
    if !is_dual_vector(game, &averaged)? {
        return Err(DualError::Internal("average left the polytope".into()));
    }
    Ok(averaged)
}

//! Exact small-scale Nash machinery: membership, best responses,
//! quasi-strictness, pure-profile enumeration for any number of players,
//! support enumeration for two players, completely mixed equilibria on
//! blocks, weak-dominance detection, and the genericity conditions used to
//! decide when the iterative full reduction of a two-player game is unique.
//!
//! Mixed enumeration is restricted to two players; the solvable systems are
//! linear there. Size guards keep the exponential support scans at desk
//! scale and are configurable from the CLI.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::game::{Block, Game, GameError, MixedProfile, MixedStrategy, Profile};
use crate::linalg::{solve_system, SolveOutcome};
use crate::lp::{self, LinearProgram, LpError, Relation};
use crate::rational::Rational;

/// Default cap for support enumeration (strategies per player).
pub const DEFAULT_ENUMERATION_CAP: usize = 5;
/// Default cap for the conditions (a)-(c) scan.
pub const DEFAULT_CONDITIONS_CAP: usize = 4;

#[derive(Debug, Clone, Error)]
pub enum NashError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("operation requires exactly two players")]
    NotTwoPlayer,
    #[error("game exceeds the size guard ({found} > {limit} strategies for a player)")]
    SizeGuard { limit: usize, found: usize },
    #[error("the given profile is not a Nash equilibrium")]
    NotNash,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NashMethod {
    PureEnumeration,
    SupportEnumeration,
    BlockMixed,
}

/// A batch of exactly-verified equilibria.
#[derive(Debug, Clone)]
pub struct NashReport {
    pub equilibria: Vec<MixedProfile>,
    pub method: NashMethod,
    /// Always true: every arithmetic step is exact.
    pub exact: bool,
    /// Some support pair admitted a continuum of solutions; the listed
    /// profiles are representatives.
    pub degenerate: bool,
}

/// Payoff to `player` when they play pure strategy `s` and everyone else
/// follows `sigma`.
fn payoff_vs(game: &Game, sigma: &MixedProfile, player: usize, s: usize) -> Rational {
    let probe = sigma.with_player(player, MixedStrategy::degenerate(s, game.num_actions(player)));
    game.expected_utility(&probe, player)
        .expect("shape checked by caller")
}

/// Exact Nash test: no player gains by any pure deviation.
pub fn is_nash(game: &Game, sigma: &MixedProfile) -> Result<bool, NashError> {
    sigma.matches(game)?;
    for i in 0..game.num_players() {
        let base = game.expected_utility(sigma, i)?;
        for s in 0..game.num_actions(i) {
            if payoff_vs(game, sigma, i, s) > base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pure best responses of `player` against the opponents' strategies
/// (players in increasing order, `player` omitted). Exact ties included.
pub fn best_responses(
    game: &Game,
    player: usize,
    opponents: &[MixedStrategy],
) -> Result<Vec<usize>, NashError> {
    if opponents.len() + 1 != game.num_players() {
        return Err(NashError::Game(GameError::Dimension(
            "opponent list length".into(),
        )));
    }
    let mut strategies = Vec::with_capacity(game.num_players());
    let mut it = opponents.iter();
    for j in 0..game.num_players() {
        if j == player {
            strategies.push(MixedStrategy::degenerate(0, game.num_actions(player)));
        } else {
            strategies.push(it.next().unwrap().clone());
        }
    }
    let sigma = MixedProfile::new(strategies);
    sigma.matches(game)?;
    let payoffs: Vec<Rational> = (0..game.num_actions(player))
        .map(|s| payoff_vs(game, &sigma, player, s))
        .collect();
    let best = payoffs
        .iter()
        .max()
        .cloned()
        .ok_or_else(|| NashError::Internal("empty strategy set".into()))?;
    Ok((0..game.num_actions(player))
        .filter(|&s| payoffs[s] == best)
        .collect())
}

fn opponents_of(sigma: &MixedProfile, player: usize) -> Vec<MixedStrategy> {
    sigma
        .strategies()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != player)
        .map(|(_, s)| s.clone())
        .collect()
}

/// Quasi-strict: for every player the set of pure best responses equals the
/// support exactly. Errors when the profile is not Nash.
pub fn is_quasi_strict(game: &Game, sigma: &MixedProfile) -> Result<bool, NashError> {
    if !is_nash(game, sigma)? {
        return Err(NashError::NotNash);
    }
    for i in 0..game.num_players() {
        let best = best_responses(game, i, &opponents_of(sigma, i))?;
        if best != sigma.strategy(i).support() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All pure Nash profiles, by exhaustive check.
pub fn pure_nash(game: &Game) -> Result<NashReport, NashError> {
    let mut equilibria = Vec::new();
    for c in game.profiles() {
        let mut good = true;
        'players: for i in 0..game.num_players() {
            let here = game.payoff(&c, i);
            for d in 0..game.num_actions(i) {
                if game.payoff(&c.with_player(i, d), i) > here {
                    good = false;
                    break 'players;
                }
            }
        }
        if good {
            equilibria.push(MixedProfile::from_pure(game, &c));
        }
    }
    Ok(NashReport {
        equilibria,
        method: NashMethod::PureEnumeration,
        exact: true,
        degenerate: false,
    })
}

// ---------------------------------------------------------------------------
// Support enumeration (two players)
// ---------------------------------------------------------------------------

/// Outcome of one side of a support pair: the mixture of `mixer` making
/// every strategy in the other player's support an exact best response.
#[derive(Debug, Clone)]
enum SideOutcome {
    None,
    /// The unique valid mixture.
    Unique(MixedStrategy),
    /// A continuum; the canonical max-min-slack witness.
    Continuum(MixedStrategy),
}

/// Solve for a full-support mixture of `mixer` over `mix_support` under
/// which every strategy of `other` in `own_support` earns a common payoff
/// `v` and every strategy outside earns at most `v`.
fn side_solution(
    game: &Game,
    other: usize,
    own_support: &[usize],
    mixer: usize,
    mix_support: &[usize],
) -> Result<SideOutcome, NashError> {
    let k = mix_support.len();
    debug_assert!(!own_support.is_empty() && k > 0);

    let payoff = |s: usize, t: usize| -> Rational {
        let mut profile = vec![0usize; 2];
        profile[other] = s;
        profile[mixer] = t;
        game.payoff(&Profile(profile), other).clone()
    };

    // Square fast path: k indifference equations + normalization in k + 1
    // unknowns (weights and v).
    if own_support.len() == k {
        let mut rows = Vec::with_capacity(k + 1);
        let mut rhs = Vec::with_capacity(k + 1);
        for &s in own_support {
            let mut row: Vec<Rational> =
                mix_support.iter().map(|&t| payoff(s, t)).collect();
            row.push(-Rational::one());
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let mut norm = vec![Rational::one(); k + 1];
        norm[k] = Rational::zero();
        rows.push(norm);
        rhs.push(Rational::one());
        match solve_system(&rows, &rhs) {
            SolveOutcome::Unique(sol) => {
                let v = sol[k].clone();
                if sol[..k].iter().any(|w| !w.is_positive()) {
                    return Ok(SideOutcome::None);
                }
                for s in 0..game.num_actions(other) {
                    if own_support.contains(&s) {
                        continue;
                    }
                    let earned: Rational = mix_support
                        .iter()
                        .enumerate()
                        .map(|(ti, &t)| payoff(s, t) * &sol[ti])
                        .sum();
                    if earned > v {
                        return Ok(SideOutcome::None);
                    }
                }
                let mut weights = vec![Rational::zero(); game.num_actions(mixer)];
                for (ti, &t) in mix_support.iter().enumerate() {
                    weights[t] = sol[ti].clone();
                }
                return Ok(SideOutcome::Unique(
                    MixedStrategy::new(weights)
                        .map_err(|e| NashError::Internal(e.to_string()))?,
                ));
            }
            SolveOutcome::Inconsistent => return Ok(SideOutcome::None),
            SolveOutcome::Underdetermined => {} // fall through to the LP route
        }
    }

    // General route: feasibility region over (weights, v) with the
    // positivity of every support weight pushed as far as possible.
    let nvars = k + 1;
    let v_var = k;
    let mut region = LinearProgram::feasibility(nvars);
    for w in 0..k {
        region.set_lower_bound(w, Rational::zero());
    }
    let mut norm = vec![Rational::zero(); nvars];
    for w in norm.iter_mut().take(k) {
        *w = Rational::one();
    }
    region.push(norm, Relation::Eq, Rational::one());
    for &s in own_support {
        let mut row: Vec<Rational> = mix_support.iter().map(|&t| payoff(s, t)).collect();
        row.push(-Rational::one());
        region.push(row, Relation::Eq, Rational::zero());
    }
    for s in 0..game.num_actions(other) {
        if own_support.contains(&s) {
            continue;
        }
        let mut row: Vec<Rational> = mix_support.iter().map(|&t| payoff(s, t)).collect();
        row.push(-Rational::one());
        region.push(row, Relation::Le, Rational::zero());
    }
    let mut positivity_rows = Vec::with_capacity(k);
    for w in 0..k {
        let mut row = vec![Rational::zero(); nvars];
        row[w] = Rational::one();
        positivity_rows.push(region.push(row, Relation::Ge, Rational::zero()));
    }
    let _ = v_var;

    let slack = match lp::max_min_slack(&region, &positivity_rows) {
        Ok(result) => result,
        Err(LpError::InfeasibleRegion) => return Ok(SideOutcome::None),
        Err(e) => return Err(NashError::Lp(e)),
    };
    if !slack.0.is_positive() {
        return Ok(SideOutcome::None);
    }
    let point = slack.1;
    let mut weights = vec![Rational::zero(); game.num_actions(mixer)];
    for (ti, &t) in mix_support.iter().enumerate() {
        weights[t] = point[ti].clone();
    }
    let witness =
        MixedStrategy::new(weights).map_err(|e| NashError::Internal(e.to_string()))?;
    let dimension = lp::affine_dimension(&region)?;
    if dimension > 0 {
        Ok(SideOutcome::Continuum(witness))
    } else {
        Ok(SideOutcome::Unique(witness))
    }
}

fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut subsets = Vec::with_capacity((1 << n) - 1);
    for mask in 1u32..(1u32 << n) {
        subsets.push((0..n).filter(|&s| mask & (1 << s) != 0).collect());
    }
    subsets.sort();
    subsets
}

fn guard(game: &Game, cap: usize) -> Result<(), NashError> {
    if game.num_players() != 2 {
        return Err(NashError::NotTwoPlayer);
    }
    let found = game.action_counts().into_iter().max().unwrap();
    if found > cap {
        return Err(NashError::SizeGuard { limit: cap, found });
    }
    Ok(())
}

/// Support enumeration over all support pairs with the default cap.
pub fn bimatrix_nash(game: &Game) -> Result<NashReport, NashError> {
    bimatrix_nash_capped(game, DEFAULT_ENUMERATION_CAP)
}

/// Support enumeration for a two-player game: for every pair of supports,
/// solve both indifference-plus-best-response systems exactly. Emits one
/// equilibrium per solvable pair (the canonical witness when a side has a
/// continuum of solutions, with the report flagged degenerate), deduplicated.
pub fn bimatrix_nash_capped(game: &Game, cap: usize) -> Result<NashReport, NashError> {
    guard(game, cap)?;
    let mut equilibria: Vec<MixedProfile> = Vec::new();
    let mut degenerate = false;
    for s1 in nonempty_subsets(game.num_actions(0)) {
        for s2 in nonempty_subsets(game.num_actions(1)) {
            let (sigma2, continuum2) = match side_solution(game, 0, &s1, 1, &s2)? {
                SideOutcome::None => continue,
                SideOutcome::Unique(m) => (m, false),
                SideOutcome::Continuum(m) => (m, true),
            };
            let (sigma1, continuum1) = match side_solution(game, 1, &s2, 0, &s1)? {
                SideOutcome::None => continue,
                SideOutcome::Unique(m) => (m, false),
                SideOutcome::Continuum(m) => (m, true),
            };
            degenerate |= continuum1 || continuum2;
            let profile = MixedProfile::new(vec![sigma1, sigma2]);
            debug_assert!(is_nash(game, &profile)?);
            if !equilibria.contains(&profile) {
                equilibria.push(profile);
            }
        }
    }
    Ok(NashReport {
        equilibria,
        method: NashMethod::SupportEnumeration,
        exact: true,
        degenerate,
    })
}

/// Completely mixed Nash equilibria of the block game `restrict(game,
/// block)`, over the restricted strategy indices. Exactly the solutions of
/// the two full-support indifference systems; empty when none exists, a
/// canonical representative per side when a side is a continuum.
pub fn completely_mixed_block_nash(
    game: &Game,
    block: &Block,
) -> Result<Vec<MixedProfile>, NashError> {
    if game.num_players() != 2 {
        return Err(NashError::NotTwoPlayer);
    }
    let restricted = game.restrict(block)?;
    let full1: Vec<usize> = (0..restricted.num_actions(0)).collect();
    let full2: Vec<usize> = (0..restricted.num_actions(1)).collect();
    let sigma2 = match side_solution(&restricted, 0, &full1, 1, &full2)? {
        SideOutcome::None => return Ok(Vec::new()),
        SideOutcome::Unique(m) | SideOutcome::Continuum(m) => m,
    };
    let sigma1 = match side_solution(&restricted, 1, &full2, 0, &full1)? {
        SideOutcome::None => return Ok(Vec::new()),
        SideOutcome::Unique(m) | SideOutcome::Continuum(m) => m,
    };
    let profile = MixedProfile::new(vec![sigma1, sigma2]);
    debug_assert!(is_nash(&restricted, &profile)?);
    Ok(vec![profile])
}

/// Find a mixture weakly dominating-or-tying `strategy` for `player`: some
/// `σ_i ≠ c_i` with `U_i(c_{-i}, σ_i) ≥ U_i(c_{-i}, c_i)` for every opponent
/// profile. The witness minimizes the weight left on `c_i`.
pub fn weakly_dominated(
    game: &Game,
    player: usize,
    strategy: usize,
) -> Result<Option<MixedStrategy>, NashError> {
    let m = game.num_actions(player);
    let mut lp = LinearProgram::new(
        m,
        {
            let mut objective = vec![Rational::zero(); m];
            objective[strategy] = Rational::one();
            objective
        },
        lp::Direction::Minimize,
    );
    for s in 0..m {
        lp.set_lower_bound(s, Rational::zero());
    }
    lp.push(vec![Rational::one(); m], Relation::Eq, Rational::one());
    for c in game.profiles() {
        if c.0[player] != strategy {
            continue;
        }
        let coeffs: Vec<Rational> = (0..m)
            .map(|t| game.payoff(&c.with_player(player, t), player).clone())
            .collect();
        lp.push(coeffs, Relation::Ge, game.payoff(&c, player).clone());
    }
    let out = lp::solve(&lp)?;
    match out.status {
        lp::LpStatus::Optimal => {
            if out.value.unwrap().is_one() {
                // Only c_i itself satisfies the system.
                Ok(None)
            } else {
                Ok(Some(
                    MixedStrategy::new(out.point.unwrap())
                        .map_err(|e| NashError::Internal(e.to_string()))?,
                ))
            }
        }
        lp::LpStatus::Infeasible => Err(NashError::Internal(
            "the strategy itself is always feasible".into(),
        )),
        lp::LpStatus::Unbounded => Err(NashError::Internal("bounded by the simplex".into())),
    }
}

/// A violation of condition (c): one mixture of player `player` that is the
/// `player`-component of completely mixed equilibria on two disjoint
/// opponent blocks.
#[derive(Debug, Clone)]
pub struct SharedComponent {
    pub player: usize,
    pub own_block: Vec<usize>,
    pub opponent_block: Vec<usize>,
    pub opponent_block_alt: Vec<usize>,
    pub witness: MixedStrategy,
}

/// Report on the genericity conditions governing uniqueness of iterative
/// full dual reductions of two-player games.
#[derive(Debug, Clone)]
pub struct AbcReport {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    /// Equilibrium with mismatched support sizes, when (a) fails.
    pub counterexample_a: Option<MixedProfile>,
    /// Sub-block whose game violates (a), when (b) fails.
    pub counterexample_b: Option<(Vec<usize>, Vec<usize>, MixedProfile)>,
    /// Shared completely-mixed component, when (c) fails.
    pub counterexample_c: Option<SharedComponent>,
    /// Any support pair anywhere in the scan was degenerate.
    pub degenerate: bool,
}

fn condition_a(game: &Game, cap: usize) -> Result<(bool, Option<MixedProfile>, bool), NashError> {
    let report = bimatrix_nash_capped(game, cap)?;
    for e in &report.equilibria {
        if e.strategy(0).support().len() != e.strategy(1).support().len() {
            return Ok((false, Some(e.clone()), report.degenerate));
        }
    }
    Ok((true, None, report.degenerate))
}

/// Does a full-support mixture of `player` over `own` exist that makes the
/// opponent exactly indifferent across `opp` (used with one or two opponent
/// blocks)?
fn shared_component_witness(
    game: &Game,
    player: usize,
    own: &[usize],
    opp_blocks: &[&[usize]],
) -> Result<Option<MixedStrategy>, NashError> {
    let other = 1 - player;
    let k = own.len();
    let nvars = k + opp_blocks.len(); // weights + one level per block
    let mut region = LinearProgram::feasibility(nvars);
    for w in 0..k {
        region.set_lower_bound(w, Rational::zero());
    }
    let mut norm = vec![Rational::zero(); nvars];
    for w in norm.iter_mut().take(k) {
        *w = Rational::one();
    }
    region.push(norm, Relation::Eq, Rational::one());
    for (b, block) in opp_blocks.iter().enumerate() {
        for &t in block.iter() {
            let mut row: Vec<Rational> = own
                .iter()
                .map(|&s| {
                    let mut profile = vec![0usize; 2];
                    profile[player] = s;
                    profile[other] = t;
                    game.payoff(&Profile(profile), other).clone()
                })
                .collect();
            row.extend(vec![Rational::zero(); opp_blocks.len()]);
            row[k + b] = -Rational::one();
            region.push(row, Relation::Eq, Rational::zero());
        }
    }
    let mut positivity = Vec::with_capacity(k);
    for w in 0..k {
        let mut row = vec![Rational::zero(); nvars];
        row[w] = Rational::one();
        positivity.push(region.push(row, Relation::Ge, Rational::zero()));
    }
    match lp::max_min_slack(&region, &positivity) {
        Ok((slack, point)) if slack.is_positive() => {
            let mut weights = vec![Rational::zero(); game.num_actions(player)];
            for (wi, &s) in own.iter().enumerate() {
                weights[s] = point[wi].clone();
            }
            Ok(Some(
                MixedStrategy::new(weights).map_err(|e| NashError::Internal(e.to_string()))?,
            ))
        }
        Ok(_) => Ok(None),
        Err(LpError::InfeasibleRegion) => Ok(None),
        Err(e) => Err(NashError::Lp(e)),
    }
}

/// Evaluate conditions (a), (b), (c) with the default cap.
pub fn check_conditions_abc(game: &Game) -> Result<AbcReport, NashError> {
    check_conditions_abc_capped(game, DEFAULT_CONDITIONS_CAP)
}

/// (a) equal support sizes across all enumerated equilibria; (b) condition
/// (a) for every sub-block game; (c) no mixture of either player is the
/// component of completely mixed equilibria on two disjoint equal-size
/// opponent blocks. Condition (c) is decided by a joint feasibility solve,
/// so continua of block equilibria are handled exactly.
pub fn check_conditions_abc_capped(game: &Game, cap: usize) -> Result<AbcReport, NashError> {
    guard(game, cap)?;
    let (a, counterexample_a, mut degenerate) = condition_a(game, cap)?;

    let mut b = true;
    let mut counterexample_b = None;
    'blocks: for b1 in nonempty_subsets(game.num_actions(0)) {
        for b2 in nonempty_subsets(game.num_actions(1)) {
            let block = Block::new(game, vec![b1.clone(), b2.clone()])?;
            let sub = game.restrict(&block)?;
            let (ok, witness, was_degenerate) = condition_a(&sub, cap)?;
            degenerate |= was_degenerate;
            if !ok {
                b = false;
                counterexample_b = Some((b1.clone(), b2.clone(), witness.unwrap()));
                break 'blocks;
            }
        }
    }

    let mut c = true;
    let mut counterexample_c = None;
    'outer: for player in 0..2 {
        let other = 1 - player;
        for own in nonempty_subsets(game.num_actions(player)) {
            if own.len() < 2 {
                continue;
            }
            let opp_subsets: Vec<Vec<usize>> = nonempty_subsets(game.num_actions(other))
                .into_iter()
                .filter(|s| s.len() == own.len())
                .collect();
            for (idx, opp) in opp_subsets.iter().enumerate() {
                for opp_alt in opp_subsets.iter().skip(idx + 1) {
                    if opp.iter().any(|t| opp_alt.contains(t)) {
                        continue;
                    }
                    // Both block games must admit the opposing component.
                    if shared_component_witness(game, other, opp, &[&own])?.is_none()
                        || shared_component_witness(game, other, opp_alt, &[&own])?.is_none()
                    {
                        continue;
                    }
                    if let Some(witness) =
                        shared_component_witness(game, player, &own, &[opp, opp_alt])?
                    {
                        c = false;
                        counterexample_c = Some(SharedComponent {
                            player,
                            own_block: own.clone(),
                            opponent_block: opp.clone(),
                            opponent_block_alt: opp_alt.clone(),
                            witness,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(AbcReport {
        a,
        b,
        c,
        counterexample_a,
        counterexample_b,
        counterexample_c,
        degenerate,
    })
}

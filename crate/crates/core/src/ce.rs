//! The correlated-equilibrium polytope and everything decided on it:
//! membership, jeopardization, coherent strategies, zero-probability
//! profiles, the elementary/tight/pretight classification, strictness of a
//! given equilibrium, and the polytope's affine dimension.
//!
//! A correlated strategy μ is a correlated equilibrium when every incentive
//! row `Σ_{c_{-i}} μ(c)[U_i(c_{-i},d_i) − U_i(c)]` is ≤ 0. The rows with
//! `c_i = d_i` are identically zero; they are kept in the system for index
//! regularity but never counted as nontrivial constraints in reports.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::game::{CorrelatedStrategy, Game, GameError};
use crate::lp::{self, LinearProgram, LpError, Relation};
use crate::rational::Rational;

#[derive(Debug, Clone, Error)]
pub enum CeError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("strategy index out of range")]
    StrategyRange,
    #[error("the given correlated strategy is not a correlated equilibrium")]
    NotACorrelatedEquilibrium,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Label of one row of the CE constraint system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CeRow {
    /// Deviation-gain row for `(player, from, to)`; `from == to` is the zero
    /// row.
    Incentive {
        player: usize,
        from: usize,
        to: usize,
    },
    /// `Σ_c μ(c) = 1`.
    TotalMass,
    /// `μ(c) ≥ 0` for the flat profile index.
    NonNegativity { profile: usize },
}

/// The CE polytope as a labeled linear-program region over μ ∈ R^{|C|}.
///
/// Row order: incentive rows lexicographic in `(player, from, to)`, the
/// total-mass equality, then one nonnegativity row per profile in profile
/// order.
#[derive(Debug, Clone)]
pub struct CeSystem {
    pub lp: LinearProgram,
    pub rows: Vec<CeRow>,
    num_profiles: usize,
    incentive_count: usize,
    counts: Vec<usize>,
}

impl CeSystem {
    pub fn incentive_row(&self, player: usize, from: usize, to: usize) -> usize {
        let mut idx = 0;
        for i in 0..player {
            idx += self.counts[i] * self.counts[i];
        }
        idx + from * self.counts[player] + to
    }

    pub fn total_mass_row(&self) -> usize {
        self.incentive_count
    }

    pub fn nonneg_row(&self, flat_profile: usize) -> usize {
        self.incentive_count + 1 + flat_profile
    }

    /// Incentive rows with `from != to`, in system order.
    pub fn nontrivial_incentive_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(idx, row)| match row {
                CeRow::Incentive { from, to, .. } if from != to => Some(idx),
                _ => None,
            })
            .collect()
    }

    pub fn nonneg_rows(&self) -> Vec<usize> {
        (0..self.num_profiles).map(|c| self.nonneg_row(c)).collect()
    }
}

/// Coefficient vector of the incentive row `(player, from, to)` over Δ(C).
pub fn incentive_row_coeffs(game: &Game, player: usize, from: usize, to: usize) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); game.num_profiles()];
    if from == to {
        return coeffs;
    }
    for (flat, c) in game.profiles().enumerate() {
        if c.0[player] == from {
            let deviated = c.with_player(player, to);
            coeffs[flat] = game.payoff(&deviated, player) - game.payoff(&c, player);
        }
    }
    coeffs
}

/// Assemble the CE constraint system of a game.
pub fn ce_system(game: &Game) -> CeSystem {
    let n = game.num_profiles();
    let mut lp = LinearProgram::feasibility(n);
    let mut rows = Vec::new();
    for i in 0..game.num_players() {
        let m = game.num_actions(i);
        for from in 0..m {
            for to in 0..m {
                lp.push(
                    incentive_row_coeffs(game, i, from, to),
                    Relation::Le,
                    Rational::zero(),
                );
                rows.push(CeRow::Incentive {
                    player: i,
                    from,
                    to,
                });
            }
        }
    }
    let incentive_count = rows.len();
    lp.push(
        vec![Rational::from_integer(1.into()); n],
        Relation::Eq,
        Rational::from_integer(1.into()),
    );
    rows.push(CeRow::TotalMass);
    for c in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[c] = Rational::from_integer(1.into());
        lp.push(coeffs, Relation::Ge, Rational::zero());
        rows.push(CeRow::NonNegativity { profile: c });
        // Redundant with the explicit row, but keeps the simplex from
        // splitting the variable.
        lp.set_lower_bound(c, Rational::zero());
    }
    CeSystem {
        lp,
        rows,
        num_profiles: n,
        incentive_count,
        counts: game.action_counts(),
    }
}

/// A violated incentive constraint, with its exact deviation gain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncentiveViolation {
    pub player: usize,
    pub from: usize,
    pub to: usize,
    pub gain: Rational,
}

/// All violated incentive rows of μ; empty iff μ is a correlated equilibrium.
pub fn correlated_equilibrium_violations(
    game: &Game,
    mu: &CorrelatedStrategy,
) -> Result<Vec<IncentiveViolation>, CeError> {
    mu.matches(game)?;
    let mut violations = Vec::new();
    for i in 0..game.num_players() {
        for from in 0..game.num_actions(i) {
            for to in 0..game.num_actions(i) {
                if from == to {
                    continue;
                }
                let row = incentive_row_coeffs(game, i, from, to);
                let gain = lp::dot(&row, mu.weights());
                if gain.is_positive() {
                    violations.push(IncentiveViolation {
                        player: i,
                        from,
                        to,
                        gain,
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// Exact membership test.
pub fn is_correlated_equilibrium(game: &Game, mu: &CorrelatedStrategy) -> Result<bool, CeError> {
    Ok(correlated_equilibrium_violations(game, mu)?.is_empty())
}

fn minimize_row_over_system(system: &CeSystem, row: usize) -> Result<Rational, CeError> {
    let mut probe = system.lp.clone();
    probe.objective = probe.constraints[row].coeffs.clone();
    probe.direction = lp::Direction::Minimize;
    let out = lp::solve(&probe)?;
    match out.status {
        lp::LpStatus::Optimal => Ok(out.value.unwrap()),
        _ => Err(CeError::Internal(
            "CE region should be nonempty and bounded".into(),
        )),
    }
}

fn maximize_objective_over_system(
    system: &CeSystem,
    objective: Vec<Rational>,
) -> Result<Rational, CeError> {
    let mut probe = system.lp.clone();
    probe.objective = objective;
    probe.direction = lp::Direction::Maximize;
    let out = lp::solve(&probe)?;
    match out.status {
        lp::LpStatus::Optimal => Ok(out.value.unwrap()),
        _ => Err(CeError::Internal(
            "CE region should be nonempty and bounded".into(),
        )),
    }
}

fn jeopardizes_in(
    system: &CeSystem,
    player: usize,
    from: usize,
    to: usize,
) -> Result<bool, CeError> {
    if from == to {
        return Ok(true);
    }
    let row = system.incentive_row(player, from, to);
    // The row is ≤ 0 on the region, so min = 0 means it vanishes there.
    Ok(minimize_row_over_system(system, row)?.is_zero())
}

/// Does `to` jeopardize `from` for `player`: is the incentive row from
/// `from` to `to` tight in every correlated equilibrium?
pub fn jeopardizes(game: &Game, player: usize, from: usize, to: usize) -> Result<bool, CeError> {
    if from >= game.num_actions(player) || to >= game.num_actions(player) {
        return Err(CeError::StrategyRange);
    }
    jeopardizes_in(&ce_system(game), player, from, to)
}

fn coherent_strategies_in(game: &Game, system: &CeSystem) -> Result<Vec<Vec<usize>>, CeError> {
    let mut coherent = Vec::with_capacity(game.num_players());
    for i in 0..game.num_players() {
        let mut set = Vec::new();
        for s in 0..game.num_actions(i) {
            let mut objective = vec![Rational::zero(); game.num_profiles()];
            for (flat, c) in game.profiles().enumerate() {
                if c.0[i] == s {
                    objective[flat] = Rational::from_integer(1.into());
                }
            }
            if maximize_objective_over_system(system, objective)?.is_positive() {
                set.push(s);
            }
        }
        coherent.push(set);
    }
    Ok(coherent)
}

/// `C_i^c`: strategies with positive marginal probability in at least one
/// correlated equilibrium, per player.
pub fn coherent_strategies(game: &Game) -> Result<Vec<Vec<usize>>, CeError> {
    coherent_strategies_in(game, &ce_system(game))
}

fn zero_probability_profiles_in(game: &Game, system: &CeSystem) -> Result<Vec<usize>, CeError> {
    let mut zero = Vec::new();
    for flat in 0..game.num_profiles() {
        let mut objective = vec![Rational::zero(); game.num_profiles()];
        objective[flat] = Rational::from_integer(1.into());
        if maximize_objective_over_system(system, objective)?.is_zero() {
            zero.push(flat);
        }
    }
    Ok(zero)
}

/// Flat indices of profiles with probability zero in every correlated
/// equilibrium.
pub fn zero_probability_profiles(game: &Game) -> Result<Vec<usize>, CeError> {
    zero_probability_profiles_in(game, &ce_system(game))
}

/// Result of the elementary test: the max-min-slack value over the strict
/// system and, when positive, a strict full-support CE witness.
#[derive(Debug, Clone)]
pub struct ElementaryCheck {
    pub is_elementary: bool,
    pub slack: Rational,
    pub witness: Option<CorrelatedStrategy>,
}

fn elementary_check_in(system: &CeSystem) -> Result<ElementaryCheck, CeError> {
    let mut rows = system.nontrivial_incentive_rows();
    rows.extend(system.nonneg_rows());
    let (slack, point) = lp::max_min_slack(&system.lp, &rows)?;
    let is_elementary = slack.is_positive();
    let witness = if is_elementary {
        Some(CorrelatedStrategy::new(point).map_err(|e| CeError::Internal(e.to_string()))?)
    } else {
        None
    };
    Ok(ElementaryCheck {
        is_elementary,
        slack,
        witness,
    })
}

/// A game is elementary when it has a strict correlated equilibrium with
/// full support: every nontrivial incentive row strictly negative and every
/// profile strictly positive, simultaneously.
pub fn elementary_check(game: &Game) -> Result<ElementaryCheck, CeError> {
    elementary_check_in(&ce_system(game))
}

pub fn is_elementary(game: &Game) -> Result<bool, CeError> {
    Ok(elementary_check(game)?.is_elementary)
}

/// Tight: every incentive constraint (all pairs) holds with equality in
/// every correlated equilibrium.
pub fn is_tight(game: &Game) -> Result<bool, CeError> {
    let system = ce_system(game);
    for i in 0..game.num_players() {
        for from in 0..game.num_actions(i) {
            for to in 0..game.num_actions(i) {
                if !jeopardizes_in(&system, i, from, to)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Pretight: every incentive constraint between coherent strategies holds
/// with equality in every correlated equilibrium.
pub fn is_pretight(game: &Game) -> Result<bool, CeError> {
    let system = ce_system(game);
    let coherent = coherent_strategies_in(game, &system)?;
    for i in 0..game.num_players() {
        for &from in &coherent[i] {
            for &to in &coherent[i] {
                if !jeopardizes_in(&system, i, from, to)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Strict CE test: every player, every recommended strategy with positive
/// marginal, every other strategy — the deviation gain is strictly negative.
/// Errors when μ is not a correlated equilibrium at all.
pub fn is_strict_ce(game: &Game, mu: &CorrelatedStrategy) -> Result<bool, CeError> {
    if !is_correlated_equilibrium(game, mu)? {
        return Err(CeError::NotACorrelatedEquilibrium);
    }
    for i in 0..game.num_players() {
        for from in 0..game.num_actions(i) {
            if !mu.marginal(game, i, from).is_positive() {
                continue;
            }
            for to in 0..game.num_actions(i) {
                if from == to {
                    continue;
                }
                let row = incentive_row_coeffs(game, i, from, to);
                if !lp::dot(&row, mu.weights()).is_negative() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Affine dimension of the CE polytope.
pub fn ce_dimension(game: &Game) -> Result<i64, CeError> {
    Ok(lp::affine_dimension(&ce_system(game).lp)?)
}

/// Full classification report for a game's CE polytope.
#[derive(Debug, Clone)]
pub struct CeReport {
    pub is_elementary: bool,
    pub is_tight: bool,
    pub is_pretight: bool,
    pub dimension: i64,
    pub coherent: Vec<Vec<usize>>,
    pub zero_profiles: Vec<usize>,
    /// Per player: jeopardization edges `(from, to)` with `from != to`,
    /// meaning `to` jeopardizes `from`.
    pub jeopardy: Vec<Vec<(usize, usize)>>,
    /// A relative-interior point of the polytope: positive slack on every
    /// row that is not an implicit equality, hence full support outside the
    /// zero-probability profiles.
    pub witness_ce: CorrelatedStrategy,
}

/// Compute everything in one pass over a shared constraint system.
pub fn analyze(game: &Game) -> Result<CeReport, CeError> {
    let system = ce_system(game);

    let mut jeopardy = Vec::with_capacity(game.num_players());
    let mut tight = true;
    for i in 0..game.num_players() {
        let mut edges = Vec::new();
        for from in 0..game.num_actions(i) {
            for to in 0..game.num_actions(i) {
                if from == to {
                    continue;
                }
                if jeopardizes_in(&system, i, from, to)? {
                    edges.push((from, to));
                } else {
                    tight = false;
                }
            }
        }
        jeopardy.push(edges);
    }

    let coherent = coherent_strategies_in(game, &system)?;
    let mut pretight = true;
    'outer: for i in 0..game.num_players() {
        for &from in &coherent[i] {
            for &to in &coherent[i] {
                if from != to && !jeopardy[i].contains(&(from, to)) {
                    pretight = false;
                    break 'outer;
                }
            }
        }
    }

    let zero_profiles = zero_probability_profiles_in(game, &system)?;
    let elementary = elementary_check_in(&system)?;
    let dimension = lp::affine_dimension(&system.lp)?;

    // Relative-interior witness: maximize the joint slack of every
    // non-implicit inequality row.
    let implicit = lp::implicit_equalities(&system.lp)?;
    let loose: Vec<usize> = (0..system.lp.constraints.len())
        .filter(|idx| {
            system.lp.constraints[*idx].relation != Relation::Eq && !implicit.contains(idx)
        })
        .collect();
    let (slack, point) = lp::max_min_slack(&system.lp, &loose)?;
    if !loose.is_empty() && !slack.is_positive() {
        return Err(CeError::Internal(
            "non-implicit rows must admit joint positive slack".into(),
        ));
    }
    let witness_ce =
        CorrelatedStrategy::new(point).map_err(|e| CeError::Internal(e.to_string()))?;

    Ok(CeReport {
        is_elementary: elementary.is_elementary,
        is_tight: tight,
        is_pretight: pretight,
        dimension,
        coherent,
        zero_profiles,
        jeopardy,
        witness_ce,
    })
}

/// Implicit equalities of the CE system, reported as labeled rows
/// (diagonal incentive rows are skipped as trivially implicit).
pub fn implicit_equality_rows(game: &Game) -> Result<BTreeSet<CeRow>, CeError> {
    let system = ce_system(game);
    let implicit = lp::implicit_equalities(&system.lp)?;
    Ok(implicit
        .into_iter()
        .map(|idx| system.rows[idx])
        .filter(|row| !matches!(row, CeRow::Incentive { from, to, .. } if from == to))
        .collect())
}

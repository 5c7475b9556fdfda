//! Dual reduction: the Markov-chain machinery.
//!
//! Each deviation plan induces a Markov chain on the player's strategies.
//! The chain splits the strategy set into transient states and disjoint
//! minimal absorbing sets; each absorbing set carries a unique stationary
//! mixed strategy, and those stationary strategies become the player's pure
//! strategies in the reduced game. Equilibria of the reduced game lift to
//! equilibria of the original game, which is what makes the whole pipeline
//! useful.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ce::{self, CeError};
use crate::dual::{self, DeviationPlan, DeviationProfile, DualError};
use crate::game::{Block, CorrelatedStrategy, Game, GameError, MixedProfile, MixedStrategy};
use crate::linalg::{solve_system, SolveOutcome};
use crate::nash;
use crate::rational::Rational;

#[derive(Debug, Clone, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Nash(#[from] crate::nash::NashError),
    #[error("the supplied profile is not a dual vector; refusing to reduce")]
    NotADualVector,
    #[error("shape mismatch between reduced game and argument")]
    Shape,
    #[error("block set of player {0} is not a minimal absorbing set")]
    BlockNotAbsorbing(usize),
    #[error("a reduction stage failed to shrink a non-elementary game")]
    StuckIteration,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// One minimal absorbing set and its stationary strategy (support equals the
/// set, weights over the full strategy space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorbingClass {
    pub members: Vec<usize>,
    pub stationary: MixedStrategy,
}

/// Transient states and minimal absorbing sets of a deviation plan's chain.
#[derive(Debug, Clone)]
pub struct MarkovDecomposition {
    pub transient: Vec<usize>,
    /// Ordered by smallest member.
    pub classes: Vec<AbsorbingClass>,
}

/// Tarjan SCC over the positive-transition graph `from -> to` when
/// `α_i(to|from) > 0`.
fn strongly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        graph: &'a [Vec<usize>],
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        components: Vec<Vec<usize>>,
    }

    fn connect(v: usize, st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for k in 0..st.graph[v].len() {
            let w = st.graph[v][k];
            if st.idx[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut component = Vec::new();
            loop {
                let w = st.stack.pop().expect("tarjan stack");
                st.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            component.sort_unstable();
            st.components.push(component);
        }
    }

    let n = adjacency.len();
    let mut st = State {
        graph: adjacency,
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        components: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.components
}

/// Decompose a deviation plan's Markov chain: minimal absorbing sets are the
/// strongly connected components with no outgoing edge; every other state is
/// transient. The stationary strategy of each class solves `α_i ∗ σ = σ`,
/// `Σ σ = 1` exactly on the class.
pub fn markov_decompose(plan: &DeviationPlan) -> Result<MarkovDecomposition, ReduceError> {
    let n = plan.num_strategies();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|from| {
            (0..n)
                .filter(|&to| plan.weight(from, to).is_positive())
                .collect()
        })
        .collect();
    let components = strongly_connected_components(&adjacency);
    let mut component_of = vec![usize::MAX; n];
    for (cid, component) in components.iter().enumerate() {
        for &v in component {
            component_of[v] = cid;
        }
    }
    let mut absorbing: Vec<Vec<usize>> = Vec::new();
    let mut transient: Vec<usize> = Vec::new();
    for (cid, component) in components.iter().enumerate() {
        let escapes = component
            .iter()
            .any(|&v| adjacency[v].iter().any(|&w| component_of[w] != cid));
        if escapes {
            transient.extend(component.iter().copied());
        } else {
            absorbing.push(component.clone());
        }
    }
    transient.sort_unstable();
    absorbing.sort();

    let mut classes = Vec::with_capacity(absorbing.len());
    for members in absorbing {
        let stationary = stationary_strategy(plan, &members)?;
        classes.push(AbsorbingClass {
            members,
            stationary,
        });
    }
    Ok(MarkovDecomposition { transient, classes })
}

fn stationary_strategy(
    plan: &DeviationPlan,
    members: &[usize],
) -> Result<MixedStrategy, ReduceError> {
    let k = members.len();
    // Rows: for each d in class, sum_c sigma(c) * alpha(d|c) = sigma(d);
    // plus normalization.
    let mut rows = Vec::with_capacity(k + 1);
    let mut rhs = Vec::with_capacity(k + 1);
    for (di, &d) in members.iter().enumerate() {
        let mut row: Vec<Rational> = members
            .iter()
            .map(|&c| plan.weight(c, d).clone())
            .collect();
        row[di] -= Rational::one();
        rows.push(row);
        rhs.push(Rational::zero());
    }
    rows.push(vec![Rational::one(); k]);
    rhs.push(Rational::one());
    match solve_system(&rows, &rhs) {
        SolveOutcome::Unique(sol) => {
            let mut weights = vec![Rational::zero(); plan.num_strategies()];
            for (si, &s) in members.iter().enumerate() {
                if sol[si].is_negative() || sol[si].is_zero() {
                    return Err(ReduceError::Internal(
                        "stationary weights must be positive on a minimal class".into(),
                    ));
                }
                weights[s] = sol[si].clone();
            }
            MixedStrategy::new(weights)
                .map_err(|e| ReduceError::Internal(format!("stationary: {e}")))
        }
        _ => Err(ReduceError::Internal(
            "stationary system of a minimal absorbing class is uniquely solvable".into(),
        )),
    }
}

/// Fate of one original pure strategy under a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Transient in the chain; no reduced action uses it.
    Eliminated,
    /// A singleton absorbing class: survives as a pure strategy.
    Kept,
    /// Member of the absorbing class with this index in the player's reduced
    /// action list.
    Grouped(usize),
}

/// The α-reduced game `Γ/α` with its bookkeeping.
#[derive(Debug, Clone)]
pub struct ReducedGame {
    /// The game that was reduced.
    pub base: Game,
    /// The reduced game itself; action `a` of player `i` is the stationary
    /// strategy `reduced_actions[i][a]` of the base game.
    pub game: Game,
    pub reduced_actions: Vec<Vec<MixedStrategy>>,
    /// `classification[i][s]` for every base strategy.
    pub classification: Vec<Vec<Classification>>,
}

/// Reduce a game by a dual vector. Refuses anything that is not a dual
/// vector, since equilibrium lifting depends on it.
pub fn reduce(game: &Game, alpha: &DeviationProfile) -> Result<ReducedGame, ReduceError> {
    alpha.matches(game)?;
    if !dual::is_dual_vector(game, alpha)? {
        return Err(ReduceError::NotADualVector);
    }

    let mut reduced_actions: Vec<Vec<MixedStrategy>> = Vec::with_capacity(game.num_players());
    let mut classification: Vec<Vec<Classification>> = Vec::with_capacity(game.num_players());
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(game.num_players());
    for i in 0..game.num_players() {
        let decomposition = markov_decompose(alpha.plan(i))?;
        let mut class_of = vec![None; game.num_actions(i)];
        for (cid, class) in decomposition.classes.iter().enumerate() {
            for &s in &class.members {
                class_of[s] = Some(cid);
            }
        }
        classification.push(
            (0..game.num_actions(i))
                .map(|s| match class_of[s] {
                    None => Classification::Eliminated,
                    Some(cid) if decomposition.classes[cid].members.len() == 1 => {
                        Classification::Kept
                    }
                    Some(cid) => Classification::Grouped(cid),
                })
                .collect(),
        );
        let mut player_labels: Vec<String> = decomposition
            .classes
            .iter()
            .map(|class| {
                class
                    .members
                    .iter()
                    .map(|&s| game.label(i, s).to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        // Joined member labels can collide when originals contain '+'.
        for a in 0..player_labels.len() {
            if !player_labels[..a].contains(&player_labels[a]) {
                continue;
            }
            let base = player_labels[a].clone();
            let mut copy = 2;
            while player_labels[..a].contains(&player_labels[a]) {
                player_labels[a] = format!("{base}#{copy}");
                copy += 1;
            }
        }
        labels.push(player_labels);
        reduced_actions.push(
            decomposition
                .classes
                .into_iter()
                .map(|class| class.stationary)
                .collect(),
        );
    }

    // Payoffs of the reduced game: exact expected utilities at the product
    // of stationary strategies.
    let counts: Vec<usize> = reduced_actions.iter().map(Vec::len).collect();
    let total: usize = counts.iter().product();
    let mut payoffs = Vec::with_capacity(total);
    let mut cursor = vec![0usize; counts.len()];
    for _ in 0..total {
        let profile = MixedProfile::new(
            cursor
                .iter()
                .enumerate()
                .map(|(i, &a)| reduced_actions[i][a].clone())
                .collect(),
        );
        let row: Result<Vec<Rational>, GameError> = (0..game.num_players())
            .map(|i| game.expected_utility(&profile, i))
            .collect();
        payoffs.push(row?);
        for i in (0..counts.len()).rev() {
            cursor[i] += 1;
            if cursor[i] < counts[i] {
                break;
            }
            cursor[i] = 0;
        }
    }
    let reduced = Game::new(game.name().map(String::from), labels, payoffs)?;
    Ok(ReducedGame {
        base: game.clone(),
        game: reduced,
        reduced_actions,
        classification,
    })
}

impl ReducedGame {
    /// `μ̄(c) = Σ_σ μ(σ) σ(c)`: map a reduced correlated strategy to the
    /// Γ-equivalent one. Injective: distinct μ give distinct μ̄.
    pub fn lift(&self, mu: &CorrelatedStrategy) -> Result<CorrelatedStrategy, ReduceError> {
        if mu.len() != self.game.num_profiles() {
            return Err(ReduceError::Shape);
        }
        let mut weights = vec![Rational::zero(); self.base.num_profiles()];
        for (flat, sigma) in self.game.profiles().enumerate() {
            let w = mu.weight_at(flat);
            if w.is_zero() {
                continue;
            }
            let product = MixedProfile::new(
                sigma
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| self.reduced_actions[i][a].clone())
                    .collect(),
            );
            for (base_flat, c) in self.base.profiles().enumerate() {
                let p = product.profile_weight(&c);
                if !p.is_zero() {
                    weights[base_flat] += w * p;
                }
            }
        }
        CorrelatedStrategy::new(weights).map_err(|e| ReduceError::Internal(e.to_string()))
    }

    /// Lift a mixed profile of the reduced game: each player's mixture over
    /// reduced actions becomes the corresponding mixture of stationary
    /// strategies.
    pub fn lift_mixed(&self, sigma: &MixedProfile) -> Result<MixedProfile, ReduceError> {
        if sigma.len() != self.game.num_players() {
            return Err(ReduceError::Shape);
        }
        let mut strategies = Vec::with_capacity(self.base.num_players());
        for i in 0..self.base.num_players() {
            if sigma.strategy(i).len() != self.game.num_actions(i) {
                return Err(ReduceError::Shape);
            }
            let mut weights = vec![Rational::zero(); self.base.num_actions(i)];
            for (a, w) in sigma.strategy(i).weights().iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for (s, sw) in self.reduced_actions[i][a].weights().iter().enumerate() {
                    if !sw.is_zero() {
                        weights[s] += w * sw;
                    }
                }
            }
            strategies.push(
                MixedStrategy::new(weights)
                    .map_err(|e| ReduceError::Internal(e.to_string()))?,
            );
        }
        Ok(MixedProfile::new(strategies))
    }

    /// Total reduced strategy count `Σ_i |C_i/α_i|`.
    pub fn total_actions(&self) -> usize {
        self.reduced_actions.iter().map(Vec::len).sum()
    }

    pub fn is_singleton(&self) -> bool {
        self.reduced_actions.iter().all(|a| a.len() == 1)
    }

    /// Any strategy grouped (absorbed into a class of two or more)?
    pub fn any_grouped(&self) -> bool {
        self.classification
            .iter()
            .flatten()
            .any(|c| matches!(c, Classification::Grouped(_)))
    }

    /// Any strategy eliminated?
    pub fn any_eliminated(&self) -> bool {
        self.classification
            .iter()
            .flatten()
            .any(|c| matches!(c, Classification::Eliminated))
    }
}

/// Which canonical dual vector drives each iteration stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    Full,
    StrongFull,
}

/// One stage of an iterative reduction.
#[derive(Debug, Clone)]
pub struct Stage {
    pub alpha: DeviationProfile,
    pub reduced: ReducedGame,
}

/// A complete iterative dual reduction down to an elementary game.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub stages: Vec<Stage>,
    pub terminal: Game,
    pub terminal_elementary: bool,
}

impl ReductionTrace {
    /// Compose the stage lifts: terminal-game correlated strategy to a
    /// base-game one.
    pub fn lift_to_base(&self, mu: &CorrelatedStrategy) -> Result<CorrelatedStrategy, ReduceError> {
        let mut current = mu.clone();
        for stage in self.stages.iter().rev() {
            current = stage.reduced.lift(&current)?;
        }
        Ok(current)
    }

    /// Compose the stage lifts for mixed profiles.
    pub fn lift_mixed_to_base(&self, sigma: &MixedProfile) -> Result<MixedProfile, ReduceError> {
        let mut current = sigma.clone();
        for stage in self.stages.iter().rev() {
            current = stage.reduced.lift_mixed(&current)?;
        }
        Ok(current)
    }

    pub fn base(&self) -> &Game {
        self.stages
            .first()
            .map(|s| &s.reduced.base)
            .unwrap_or(&self.terminal)
    }
}

/// Iterate canonical reductions until the game is elementary. A full
/// reduction strictly shrinks any non-elementary game, so the loop
/// terminates; a stage that fails to shrink signals a bug and aborts.
pub fn iterate_to_elementary(game: &Game, policy: Policy) -> Result<ReductionTrace, ReduceError> {
    let mut current = game.clone();
    let mut stages = Vec::new();
    loop {
        if ce::is_elementary(&current)? {
            return Ok(ReductionTrace {
                stages,
                terminal: current,
                terminal_elementary: true,
            });
        }
        let alpha = match policy {
            Policy::Full => dual::full_dual_vector(&current)?,
            Policy::StrongFull => dual::strong_full_dual_vector(&current)?,
        };
        let reduced = reduce(&current, &alpha)?;
        if reduced.total_actions() >= current.total_actions() {
            return Err(ReduceError::StuckIteration);
        }
        let next = reduced.game.clone();
        stages.push(Stage { alpha, reduced });
        current = next;
    }
}

/// Check that the stationary strategies of a block of minimal absorbing sets
/// form a completely mixed Nash equilibrium of the restricted game. Always
/// true for a dual vector; exposed as a self-test.
pub fn block_equilibrium_check(
    game: &Game,
    alpha: &DeviationProfile,
    block: &Block,
) -> Result<bool, ReduceError> {
    alpha.matches(game)?;
    if !dual::is_dual_vector(game, alpha)? {
        return Err(ReduceError::NotADualVector);
    }
    let mut block_strategies = Vec::with_capacity(game.num_players());
    for i in 0..game.num_players() {
        let decomposition = markov_decompose(alpha.plan(i))?;
        let class = decomposition
            .classes
            .iter()
            .find(|class| class.members == block.set(i))
            .ok_or(ReduceError::BlockNotAbsorbing(i))?;
        // Stationary weights reindexed to the restricted game.
        let weights: Vec<Rational> = block
            .set(i)
            .iter()
            .map(|&s| class.stationary.weight(s).clone())
            .collect();
        block_strategies.push(
            MixedStrategy::new(weights).map_err(|e| ReduceError::Internal(e.to_string()))?,
        );
    }
    let restricted = game.restrict(block)?;
    let sigma = MixedProfile::new(block_strategies);
    let completely_mixed = (0..restricted.num_players())
        .all(|i| sigma.strategy(i).support().len() == restricted.num_actions(i));
    Ok(completely_mixed && nash::is_nash(&restricted, &sigma)?)
}

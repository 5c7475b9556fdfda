//! Finite games in strategic form and the objects living on them: pure
//! profiles, mixed and correlated strategies, blocks, rescalings and player
//! permutations.
//!
//! Strategies are referenced by `(player index, strategy index)`; labels are
//! carried only for I/O. All iteration orders are lexicographic with the
//! last player's index varying fastest, which fixes the flat profile
//! numbering used across the crate.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("game must have at least one player")]
    NoPlayers,
    #[error("player {0} has no strategies")]
    EmptyStrategySet(usize),
    #[error("player {player} has duplicate label `{label}`")]
    DuplicateLabel { player: usize, label: String },
    #[error("payoff tensor has {found} rows, expected {expected}")]
    PayoffCount { expected: usize, found: usize },
    #[error("payoff row {0} has wrong arity")]
    PayoffArity(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("weights of a distribution must be nonnegative")]
    NegativeWeight,
    #[error("weights of a distribution must sum to 1")]
    WeightSum,
    #[error("empty block for player {0}")]
    EmptyBlock(usize),
    #[error("block strategy out of range for player {0}")]
    BlockRange(usize),
    #[error("rescaling factor for player {0} must be positive")]
    NonPositiveScale(usize),
    #[error("player permutation is not a bijection")]
    NotABijection,
    #[error("players {0} and {1} have different strategy sets")]
    IncompatibleStrategySets(usize, usize),
}

/// A pure strategy profile: one strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    /// The profile `(c_{-i}, d_i)`: this profile with player `i`'s component
    /// replaced by `d`.
    pub fn with_player(&self, i: usize, d: usize) -> Profile {
        let mut c = self.0.clone();
        c[i] = d;
        Profile(c)
    }
}

/// A finite normal-form game with exact rational payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    name: Option<String>,
    /// Per-player strategy labels; the index is the strategy.
    actions: Vec<Vec<String>>,
    /// Profile-major payoffs: `payoffs[flat profile][player]`.
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    pub fn new(
        name: Option<String>,
        actions: Vec<Vec<String>>,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Game, GameError> {
        if actions.is_empty() {
            return Err(GameError::NoPlayers);
        }
        for (i, labels) in actions.iter().enumerate() {
            if labels.is_empty() {
                return Err(GameError::EmptyStrategySet(i));
            }
            for (a, label) in labels.iter().enumerate() {
                if labels[..a].contains(label) {
                    return Err(GameError::DuplicateLabel {
                        player: i,
                        label: label.clone(),
                    });
                }
            }
        }
        let expected: usize = actions.iter().map(Vec::len).product();
        if payoffs.len() != expected {
            return Err(GameError::PayoffCount {
                expected,
                found: payoffs.len(),
            });
        }
        for (r, row) in payoffs.iter().enumerate() {
            if row.len() != actions.len() {
                return Err(GameError::PayoffArity(r));
            }
        }
        Ok(Game {
            name,
            actions,
            payoffs,
        })
    }

    /// Build from integer payoff rows with default labels `s1, s2, ...`.
    pub fn from_integer_rows(counts: &[usize], rows: &[Vec<i64>]) -> Result<Game, GameError> {
        let actions = counts
            .iter()
            .map(|&m| (1..=m).map(|k| format!("s{k}")).collect())
            .collect();
        let payoffs = rows
            .iter()
            .map(|row| row.iter().map(|&v| crate::rational::rat(v)).collect())
            .collect();
        Game::new(None, actions, payoffs)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn num_players(&self) -> usize {
        self.actions.len()
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn action_counts(&self) -> Vec<usize> {
        self.actions.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn label(&self, player: usize, strategy: usize) -> &str {
        &self.actions[player][strategy]
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs.len()
    }

    pub fn total_actions(&self) -> usize {
        self.actions.iter().map(Vec::len).sum()
    }

    /// Flat index of a profile: lexicographic, last player fastest.
    pub fn profile_index(&self, profile: &Profile) -> usize {
        debug_assert_eq!(profile.0.len(), self.num_players());
        let mut idx = 0;
        for (i, &c) in profile.0.iter().enumerate() {
            debug_assert!(c < self.num_actions(i));
            idx = idx * self.num_actions(i) + c;
        }
        idx
    }

    pub fn profile_at(&self, mut idx: usize) -> Profile {
        let mut rev = Vec::with_capacity(self.num_players());
        for i in (0..self.num_players()).rev() {
            let m = self.num_actions(i);
            rev.push(idx % m);
            idx /= m;
        }
        rev.reverse();
        Profile(rev)
    }

    pub fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.num_profiles()).map(|idx| self.profile_at(idx))
    }

    pub fn payoff(&self, profile: &Profile, player: usize) -> &Rational {
        &self.payoffs[self.profile_index(profile)][player]
    }

    pub fn payoff_at(&self, flat: usize, player: usize) -> &Rational {
        &self.payoffs[flat][player]
    }

    pub fn payoff_row(&self, flat: usize) -> &[Rational] {
        &self.payoffs[flat]
    }

    /// Two players and `U_1 + U_2 = 0` at every profile.
    pub fn is_zero_sum(&self) -> bool {
        self.num_players() == 2
            && self
                .payoffs
                .iter()
                .all(|row| (&row[0] + &row[1]).is_zero())
    }

    /// Number of opponent profiles `|C_{-i}|`.
    pub fn num_opponent_profiles(&self, player: usize) -> usize {
        self.num_profiles() / self.num_actions(player)
    }

    /// Flat index of `c_{-i}` among opponent profiles, lexicographic over the
    /// remaining players in order, last fastest.
    pub fn opponent_index(&self, player: usize, profile: &Profile) -> usize {
        let mut idx = 0;
        for (j, &c) in profile.0.iter().enumerate() {
            if j == player {
                continue;
            }
            idx = idx * self.num_actions(j) + c;
        }
        idx
    }
}

/// A mixed strategy of one player: exact probability weights.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedStrategy {
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<MixedStrategy, GameError> {
        if weights.iter().any(Rational::is_negative) {
            return Err(GameError::NegativeWeight);
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(GameError::WeightSum);
        }
        Ok(MixedStrategy { weights })
    }

    /// Point mass on `strategy` among `n` strategies.
    pub fn degenerate(strategy: usize, n: usize) -> MixedStrategy {
        let mut weights = vec![Rational::zero(); n];
        weights[strategy] = Rational::one();
        MixedStrategy { weights }
    }

    pub fn uniform(n: usize) -> MixedStrategy {
        let w = Rational::new(1.into(), (n as i64).into());
        MixedStrategy {
            weights: vec![w; n],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, strategy: usize) -> &Rational {
        &self.weights[strategy]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&s| self.weights[s].is_positive())
            .collect()
    }

    pub fn as_pure(&self) -> Option<usize> {
        let support = self.support();
        match support.as_slice() {
            [s] if self.weights[*s].is_one() => Some(*s),
            _ => None,
        }
    }
}

/// A profile of mixed strategies, one per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedProfile {
    strategies: Vec<MixedStrategy>,
}

impl MixedProfile {
    pub fn new(strategies: Vec<MixedStrategy>) -> MixedProfile {
        MixedProfile { strategies }
    }

    pub fn from_pure(game: &Game, profile: &Profile) -> MixedProfile {
        MixedProfile {
            strategies: profile
                .0
                .iter()
                .enumerate()
                .map(|(i, &c)| MixedStrategy::degenerate(c, game.num_actions(i)))
                .collect(),
        }
    }

    pub fn strategies(&self) -> &[MixedStrategy] {
        &self.strategies
    }

    pub fn strategy(&self, player: usize) -> &MixedStrategy {
        &self.strategies[player]
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    pub fn with_player(&self, player: usize, s: MixedStrategy) -> MixedProfile {
        let mut strategies = self.strategies.clone();
        strategies[player] = s;
        MixedProfile { strategies }
    }

    pub(crate) fn matches(&self, game: &Game) -> Result<(), GameError> {
        if self.strategies.len() != game.num_players() {
            return Err(GameError::Dimension("player count".into()));
        }
        for (i, s) in self.strategies.iter().enumerate() {
            if s.len() != game.num_actions(i) {
                return Err(GameError::Dimension(format!("player {i} strategy count")));
            }
        }
        Ok(())
    }

    /// Product probability of a pure profile.
    pub fn profile_weight(&self, profile: &Profile) -> Rational {
        let mut w = Rational::one();
        for (i, &c) in profile.0.iter().enumerate() {
            if self.strategies[i].weight(c).is_zero() {
                return Rational::zero();
            }
            w *= self.strategies[i].weight(c);
        }
        w
    }

    /// The induced correlated strategy (product distribution).
    pub fn to_correlated(&self, game: &Game) -> Result<CorrelatedStrategy, GameError> {
        self.matches(game)?;
        let weights = game.profiles().map(|c| self.profile_weight(&c)).collect();
        CorrelatedStrategy::new(weights)
    }
}

/// A distribution over pure strategy profiles, stored flat in the crate-wide
/// profile order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelatedStrategy {
    weights: Vec<Rational>,
}

impl CorrelatedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<CorrelatedStrategy, GameError> {
        if weights.iter().any(Rational::is_negative) {
            return Err(GameError::NegativeWeight);
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(GameError::WeightSum);
        }
        Ok(CorrelatedStrategy { weights })
    }

    pub fn degenerate(game: &Game, profile: &Profile) -> CorrelatedStrategy {
        let mut weights = vec![Rational::zero(); game.num_profiles()];
        weights[game.profile_index(profile)] = Rational::one();
        CorrelatedStrategy { weights }
    }

    pub fn uniform(game: &Game) -> CorrelatedStrategy {
        let n = game.num_profiles();
        let w = Rational::new(1.into(), (n as i64).into());
        CorrelatedStrategy {
            weights: vec![w; n],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_at(&self, flat: usize) -> &Rational {
        &self.weights[flat]
    }

    pub fn weight(&self, game: &Game, profile: &Profile) -> &Rational {
        &self.weights[game.profile_index(profile)]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&c| self.weights[c].is_positive())
            .collect()
    }

    /// Marginal probability of player `i` playing `strategy`.
    pub fn marginal(&self, game: &Game, player: usize, strategy: usize) -> Rational {
        let mut total = Rational::zero();
        for (flat, c) in game.profiles().enumerate() {
            if c.0[player] == strategy && !self.weights[flat].is_zero() {
                total += &self.weights[flat];
            }
        }
        total
    }

    /// Exact product test: is this the product of its own marginals? Returns
    /// the factorization when it is.
    pub fn product_decomposition(&self, game: &Game) -> Option<MixedProfile> {
        let strategies: Vec<MixedStrategy> = (0..game.num_players())
            .map(|i| {
                let weights = (0..game.num_actions(i))
                    .map(|s| self.marginal(game, i, s))
                    .collect();
                MixedStrategy::new(weights).expect("marginals form a distribution")
            })
            .collect();
        let profile = MixedProfile::new(strategies);
        for (flat, c) in game.profiles().enumerate() {
            if profile.profile_weight(&c) != self.weights[flat] {
                return None;
            }
        }
        Some(profile)
    }

    pub(crate) fn matches(&self, game: &Game) -> Result<(), GameError> {
        if self.weights.len() != game.num_profiles() {
            return Err(GameError::Dimension("profile count".into()));
        }
        Ok(())
    }
}

/// Per-player positive scaling plus opponent-profile-dependent offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rescaling {
    /// `a_i > 0` per player.
    pub scales: Vec<Rational>,
    /// `f_i(c_{-i})` per player, indexed by [`Game::opponent_index`].
    pub offsets: Vec<Vec<Rational>>,
}

impl Rescaling {
    /// Pure scaling, no offsets.
    pub fn scaling(game: &Game, scales: Vec<Rational>) -> Rescaling {
        let offsets = (0..game.num_players())
            .map(|i| vec![Rational::zero(); game.num_opponent_profiles(i)])
            .collect();
        Rescaling { scales, offsets }
    }

    pub(crate) fn check(&self, game: &Game) -> Result<(), GameError> {
        if self.scales.len() != game.num_players() || self.offsets.len() != game.num_players() {
            return Err(GameError::Dimension("rescaling player count".into()));
        }
        for (i, a) in self.scales.iter().enumerate() {
            if !a.is_positive() {
                return Err(GameError::NonPositiveScale(i));
            }
            if self.offsets[i].len() != game.num_opponent_profiles(i) {
                return Err(GameError::Dimension(format!("player {i} offset table")));
            }
        }
        Ok(())
    }
}

/// A bijection on players, acting on profiles by `c^p_{p(i)} = c_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlayerPermutation {
    map: Vec<usize>,
}

impl PlayerPermutation {
    pub fn new(map: Vec<usize>) -> Result<PlayerPermutation, GameError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(GameError::NotABijection);
            }
            seen[t] = true;
        }
        Ok(PlayerPermutation { map })
    }

    pub fn identity(n: usize) -> PlayerPermutation {
        PlayerPermutation {
            map: (0..n).collect(),
        }
    }

    /// The transposition of players `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> PlayerPermutation {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        PlayerPermutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, player: usize) -> usize {
        self.map[player]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `(other ∘ self)(i) = other(self(i))`.
    pub fn compose(&self, other: &PlayerPermutation) -> PlayerPermutation {
        PlayerPermutation {
            map: self.map.iter().map(|&t| other.map[t]).collect(),
        }
    }

    /// The profile `c^p` with `c^p_{p(i)} = c_i`.
    pub fn apply_profile(&self, profile: &Profile) -> Profile {
        let mut out = vec![0; profile.0.len()];
        for (i, &c) in profile.0.iter().enumerate() {
            out[self.map[i]] = c;
        }
        Profile(out)
    }

    /// Valid only when each player and their image carry identical labeled
    /// strategy lists.
    pub fn compatible_with(&self, game: &Game) -> Result<(), GameError> {
        if self.map.len() != game.num_players() {
            return Err(GameError::Dimension("permutation player count".into()));
        }
        for (i, &t) in self.map.iter().enumerate() {
            if game.labels(i) != game.labels(t) {
                return Err(GameError::IncompatibleStrategySets(i, t));
            }
        }
        Ok(())
    }
}

/// A product block `B = ×_i B_i` of nonempty strategy subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted, deduplicated strategy indices per player.
    sets: Vec<Vec<usize>>,
}

impl Block {
    pub fn new(game: &Game, mut sets: Vec<Vec<usize>>) -> Result<Block, GameError> {
        if sets.len() != game.num_players() {
            return Err(GameError::Dimension("block player count".into()));
        }
        for (i, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(GameError::EmptyBlock(i));
            }
            if set.iter().any(|&s| s >= game.num_actions(i)) {
                return Err(GameError::BlockRange(i));
            }
        }
        Ok(Block { sets })
    }

    pub fn full(game: &Game) -> Block {
        Block {
            sets: game
                .action_counts()
                .iter()
                .map(|&m| (0..m).collect())
                .collect(),
        }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, player: usize) -> &[usize] {
        &self.sets[player]
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

impl Game {
    /// Exact multilinear expected utility `U_i(σ)`.
    pub fn expected_utility(
        &self,
        sigma: &MixedProfile,
        player: usize,
    ) -> Result<Rational, GameError> {
        sigma.matches(self)?;
        let mut total = Rational::zero();
        for (flat, c) in self.profiles().enumerate() {
            let w = sigma.profile_weight(&c);
            if !w.is_zero() {
                total += w * &self.payoffs[flat][player];
            }
        }
        Ok(total)
    }

    /// Linear expected utility `Σ_c μ(c) U_i(c)`.
    pub fn correlated_expected_utility(
        &self,
        mu: &CorrelatedStrategy,
        player: usize,
    ) -> Result<Rational, GameError> {
        mu.matches(self)?;
        let mut total = Rational::zero();
        for flat in 0..self.num_profiles() {
            let w = mu.weight_at(flat);
            if !w.is_zero() {
                total += w * &self.payoffs[flat][player];
            }
        }
        Ok(total)
    }

    /// The sub-game on `block`, payoffs copied, labels preserved.
    pub fn restrict(&self, block: &Block) -> Result<Game, GameError> {
        if block.sets.len() != self.num_players() {
            return Err(GameError::Dimension("block player count".into()));
        }
        let actions: Vec<Vec<String>> = block
            .sets
            .iter()
            .enumerate()
            .map(|(i, set)| set.iter().map(|&s| self.actions[i][s].clone()).collect())
            .collect();
        let counts: Vec<usize> = actions.iter().map(Vec::len).collect();
        let total: usize = counts.iter().product();
        let mut payoffs = Vec::with_capacity(total);
        let mut cursor = vec![0usize; counts.len()];
        for _ in 0..total {
            let original = Profile(
                cursor
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| block.sets[i][k])
                    .collect(),
            );
            payoffs.push(self.payoffs[self.profile_index(&original)].clone());
            for i in (0..counts.len()).rev() {
                cursor[i] += 1;
                if cursor[i] < counts[i] {
                    break;
                }
                cursor[i] = 0;
            }
        }
        Game::new(self.name.clone(), actions, payoffs)
    }

    /// `U'_i(c) = a_i · U_i(c) + f_i(c_{-i})`, payoff by payoff.
    pub fn rescale(&self, r: &Rescaling) -> Result<Game, GameError> {
        r.check(self)?;
        let mut payoffs = Vec::with_capacity(self.num_profiles());
        for (flat, c) in self.profiles().enumerate() {
            let row = (0..self.num_players())
                .map(|i| {
                    let off = &r.offsets[i][self.opponent_index(i, &c)];
                    &r.scales[i] * &self.payoffs[flat][i] + off
                })
                .collect();
            payoffs.push(row);
        }
        Game::new(self.name.clone(), self.actions.clone(), payoffs)
    }

    /// `U_{p(i)}(c^p) = U_i(c)` for all players and profiles.
    pub fn is_p_symmetric(&self, p: &PlayerPermutation) -> Result<bool, GameError> {
        p.compatible_with(self)?;
        for c in self.profiles() {
            let cp = p.apply_profile(&c);
            for i in 0..self.num_players() {
                if self.payoff(&cp, p.apply(i)) != self.payoff(&c, i) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Smallest composition-closed set of permutations containing the input and
/// the identity. Closure of bijections on a finite set is a group, so the
/// averaging argument used by `dual::symmetrize` applies to the result.
pub fn permutation_closure(perms: &[PlayerPermutation]) -> Vec<PlayerPermutation> {
    let n = perms.first().map_or(0, PlayerPermutation::len);
    let mut closed: Vec<PlayerPermutation> = vec![PlayerPermutation::identity(n)];
    let mut frontier: Vec<PlayerPermutation> = perms.to_vec();
    while let Some(p) = frontier.pop() {
        if closed.contains(&p) {
            continue;
        }
        closed.push(p.clone());
        for q in &closed {
            frontier.push(p.compose(q));
            frontier.push(q.compose(&p));
        }
    }
    closed.sort();
    closed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn matching_pennies() -> Game {
        Game::from_integer_rows(
            &[2, 2],
            &[vec![1, -1], vec![-1, 1], vec![-1, 1], vec![1, -1]],
        )
        .unwrap()
    }

    fn coordination() -> Game {
        Game::from_integer_rows(&[2, 2], &[vec![1, 1], vec![0, 0], vec![0, 0], vec![1, 1]])
            .unwrap()
    }

    fn weak_dominance_game() -> Game {
        // x1: (1,1) (1,0) / y1: (1,0) (0,0)
        Game::from_integer_rows(&[2, 2], &[vec![1, 1], vec![1, 0], vec![1, 0], vec![0, 0]])
            .unwrap()
    }

    #[test]
    fn profile_order_last_player_fastest() {
        let g = matching_pennies();
        let order: Vec<Profile> = g.profiles().collect();
        assert_eq!(
            order,
            vec![
                Profile(vec![0, 0]),
                Profile(vec![0, 1]),
                Profile(vec![1, 0]),
                Profile(vec![1, 1])
            ]
        );
        for (flat, c) in g.profiles().enumerate() {
            assert_eq!(g.profile_index(&c), flat);
            assert_eq!(g.profile_at(flat), c);
        }
    }

    #[test]
    fn expected_utility_pure_corner() {
        let g = matching_pennies();
        let sigma = MixedProfile::new(vec![
            MixedStrategy::degenerate(0, 2),
            MixedStrategy::degenerate(0, 2),
        ]);
        assert_eq!(g.expected_utility(&sigma, 0).unwrap(), rat(1));
    }

    #[test]
    fn expected_utility_degenerate_equals_payoff() {
        let g = weak_dominance_game();
        for c in g.profiles() {
            let sigma = MixedProfile::from_pure(&g, &c);
            for i in 0..2 {
                assert_eq!(g.expected_utility(&sigma, i).unwrap(), *g.payoff(&c, i));
            }
        }
    }

    #[test]
    fn expected_utility_uniform_matching_pennies() {
        let g = matching_pennies();
        let sigma = MixedProfile::new(vec![MixedStrategy::uniform(2), MixedStrategy::uniform(2)]);
        assert_eq!(g.expected_utility(&sigma, 0).unwrap(), rat(0));
        assert_eq!(g.expected_utility(&sigma, 1).unwrap(), rat(0));
    }

    #[test]
    fn expected_utility_dimension_mismatch() {
        let g = matching_pennies();
        let sigma = MixedProfile::new(vec![MixedStrategy::uniform(2)]);
        assert!(g.expected_utility(&sigma, 0).is_err());
        let sigma = MixedProfile::new(vec![MixedStrategy::uniform(3), MixedStrategy::uniform(2)]);
        assert!(g.expected_utility(&sigma, 0).is_err());
    }

    #[test]
    fn correlated_expected_utility_cases() {
        let g = matching_pennies();
        let mu = CorrelatedStrategy::degenerate(&g, &Profile(vec![1, 0]));
        assert_eq!(g.correlated_expected_utility(&mu, 0).unwrap(), rat(-1));
        let mu = CorrelatedStrategy::uniform(&g);
        assert_eq!(g.correlated_expected_utility(&mu, 0).unwrap(), rat(0));

        // Half (x1,x2), half (y1,x2) in the weak-dominance game: player 2
        // expects 1/2.
        let g = weak_dominance_game();
        let mu = CorrelatedStrategy::new(vec![ratio(1, 2), rat(0), ratio(1, 2), rat(0)]).unwrap();
        assert_eq!(g.correlated_expected_utility(&mu, 1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn restrict_full_block_is_identity() {
        let g = weak_dominance_game();
        let restricted = g.restrict(&Block::full(&g)).unwrap();
        assert_eq!(restricted, g);
    }

    #[test]
    fn restrict_column() {
        let g = weak_dominance_game();
        let block = Block::new(&g, vec![vec![0, 1], vec![0]]).unwrap();
        let restricted = g.restrict(&block).unwrap();
        assert_eq!(restricted.action_counts(), vec![2, 1]);
        assert_eq!(restricted.payoff_row(0), &[rat(1), rat(1)]);
        assert_eq!(restricted.payoff_row(1), &[rat(1), rat(0)]);
    }

    #[test]
    fn restrict_then_restrict_composes() {
        let g = Game::from_integer_rows(&[3, 3], &(0..9).map(|k| vec![k, -k]).collect::<Vec<_>>())
            .unwrap();
        let b1 = Block::new(&g, vec![vec![0, 1, 2], vec![0, 2]]).unwrap();
        let first = g.restrict(&b1).unwrap();
        // In the restricted game player 2's strategies 0,1 are originals 0,2.
        let b2 = Block::new(&first, vec![vec![1, 2], vec![1]]).unwrap();
        let twice = first.restrict(&b2).unwrap();
        let direct = g
            .restrict(&Block::new(&g, vec![vec![1, 2], vec![2]]).unwrap())
            .unwrap();
        assert_eq!(twice, direct);
    }

    #[test]
    fn rescale_identity_and_doubling() {
        let g = matching_pennies();
        let id = Rescaling::scaling(&g, vec![rat(1), rat(1)]);
        assert_eq!(g.rescale(&id).unwrap(), g);

        let r = Rescaling::scaling(&g, vec![rat(2), rat(1)]);
        let scaled = g.rescale(&r).unwrap();
        assert_eq!(scaled.payoff_row(0), &[rat(2), rat(-1)]);
        assert_eq!(scaled.payoff_row(1), &[rat(-2), rat(1)]);
        assert_eq!(scaled.payoff_row(2), &[rat(-2), rat(1)]);
        assert_eq!(scaled.payoff_row(3), &[rat(2), rat(-1)]);
    }

    #[test]
    fn rescale_offsets_shift_columns() {
        let g = matching_pennies();
        let mut r = Rescaling::scaling(&g, vec![rat(1), rat(1)]);
        // f_1(x_2) = 5: player 1's payoffs in column x2 become (6, 4).
        r.offsets[0][0] = rat(5);
        let shifted = g.rescale(&r).unwrap();
        assert_eq!(*shifted.payoff(&Profile(vec![0, 0]), 0), rat(6));
        assert_eq!(*shifted.payoff(&Profile(vec![1, 0]), 0), rat(4));
        assert_eq!(*shifted.payoff(&Profile(vec![0, 1]), 0), rat(-1));
    }

    #[test]
    fn rescale_rejects_nonpositive_scale() {
        let g = matching_pennies();
        let r = Rescaling::scaling(&g, vec![rat(0), rat(1)]);
        assert!(matches!(g.rescale(&r), Err(GameError::NonPositiveScale(0))));
    }

    #[test]
    fn p_symmetry() {
        let g = matching_pennies();
        let id = PlayerPermutation::identity(2);
        assert!(g.is_p_symmetric(&id).unwrap());
        let swap = PlayerPermutation::swap(2, 0, 1);
        assert!(!g.is_p_symmetric(&swap).unwrap());
        assert!(coordination().is_p_symmetric(&swap).unwrap());
    }

    #[test]
    fn p_symmetry_requires_compatible_sets() {
        let g = Game::from_integer_rows(&[2, 3], &vec![vec![0, 0]; 6]).unwrap();
        let swap = PlayerPermutation::swap(2, 0, 1);
        assert!(g.is_p_symmetric(&swap).is_err());
    }

    #[test]
    fn closure_examples() {
        let id = PlayerPermutation::identity(2);
        assert_eq!(permutation_closure(std::slice::from_ref(&id)), vec![id.clone()]);

        let swap = PlayerPermutation::swap(2, 0, 1);
        let closed = permutation_closure(std::slice::from_ref(&swap));
        assert_eq!(closed.len(), 2);
        assert!(closed.contains(&id) && closed.contains(&swap));

        let cycle = PlayerPermutation::new(vec![1, 2, 0]).unwrap();
        let closed = permutation_closure(std::slice::from_ref(&cycle));
        assert_eq!(closed.len(), 3);
        assert!(closed.contains(&cycle.compose(&cycle)));
    }

    #[test]
    fn correlated_product_decomposition() {
        let g = matching_pennies();
        let mu = CorrelatedStrategy::uniform(&g);
        let sigma = mu.product_decomposition(&g).unwrap();
        assert_eq!(sigma.strategy(0), &MixedStrategy::uniform(2));

        let mu = CorrelatedStrategy::new(vec![ratio(1, 2), rat(0), rat(0), ratio(1, 2)]).unwrap();
        assert!(mu.product_decomposition(&g).is_none());
    }

    #[test]
    fn distribution_validation() {
        assert!(MixedStrategy::new(vec![ratio(1, 2), ratio(1, 2)]).is_ok());
        assert!(MixedStrategy::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(MixedStrategy::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
    }

    #[test]
    fn game_validation() {
        assert!(Game::from_integer_rows(&[2, 2], &[vec![0, 0]]).is_err());
        assert!(Game::new(
            None,
            vec![vec!["a".into(), "a".into()]],
            vec![vec![rat(0)], vec![rat(0)]],
        )
        .is_err());
    }
}

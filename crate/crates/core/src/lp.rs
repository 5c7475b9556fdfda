//! Exact rational linear programming.
//!
//! A dense two-phase simplex with Bland's least-index pivot rule: guaranteed
//! termination under exact arithmetic and fully deterministic, at the cost of
//! speed — which is fine at desk scale (a few hundred variables).
//!
//! Besides [`solve`], the module exposes the polyhedral helpers the game
//! analyses are built on: [`implicit_equalities`] (inequality rows that hold
//! with equality over the whole feasible region), [`affine_dimension`], and
//! [`max_min_slack`] (push selected rows as far from tightness as possible).
//!
//! Every optimal solve carries a dual certificate; [`verify_optimal`] checks
//! feasibility, dual feasibility and complementary slackness by direct
//! arithmetic, independent of the pivot path that produced the answer.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{solve_system, SolveOutcome};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A linear program over named-by-index variables.
///
/// Variables are free unless given a lower bound. Regions (feasible sets
/// without a meaningful objective) are represented by the same type; the
/// region operations below ignore the objective.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Rational>,
    pub direction: Direction,
    pub lower_bounds: Vec<Option<Rational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of a solve. `row_duals` are the constraint multipliers certifying
/// optimality for the maximization form of the program (see
/// [`verify_optimal`] for the exact conditions they satisfy).
#[derive(Debug, Clone)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub point: Option<Vec<Rational>>,
    pub row_duals: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, Error)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Malformed(String),
    #[error("infeasible region")]
    InfeasibleRegion,
    #[error("row {0} is not an inequality")]
    NotAnInequality(usize),
    #[error("row index {0} out of range")]
    RowOutOfRange(usize),
    #[error("internal solver invariant violated: {0}")]
    Internal(String),
}

impl LinearProgram {
    /// Program with a zero objective; useful as a bare region.
    pub fn feasibility(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            constraints: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
            direction: Direction::Maximize,
            lower_bounds: vec![None; num_vars],
        }
    }

    pub fn new(num_vars: usize, objective: Vec<Rational>, direction: Direction) -> Self {
        LinearProgram {
            num_vars,
            constraints: Vec::new(),
            objective,
            direction,
            lower_bounds: vec![None; num_vars],
        }
    }

    /// Append a constraint, returning its row index.
    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> usize {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: Rational) {
        self.lower_bounds[var] = Some(bound);
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.num_vars {
            return Err(LpError::Malformed(format!(
                "objective has {} coefficients for {} variables",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.lower_bounds.len() != self.num_vars {
            return Err(LpError::Malformed("lower bound vector length".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(LpError::Malformed(format!(
                    "row {} has {} coefficients for {} variables",
                    i,
                    c.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    /// Exact feasibility test of a point against rows and bounds.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        if point.len() != self.num_vars {
            return false;
        }
        for (x, lb) in point.iter().zip(&self.lower_bounds) {
            if let Some(lb) = lb {
                if x < lb {
                    return false;
                }
            }
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, point);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Standard-form translation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum VarMap {
    /// x = lb + z[col]
    Shift { col: usize, lb: Rational },
    /// x = z[pos] - z[neg]
    Split { pos: usize, neg: usize },
}

/// `min costs·z  s.t.  rows·z = rhs, z >= 0, rhs >= 0`.
struct StandardForm {
    ncols: usize,
    costs: Vec<Rational>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    var_map: Vec<VarMap>,
    /// +1 or -1 per row: factor applied to the user row to make rhs >= 0.
    row_sign: Vec<Rational>,
    /// Column of a +1 slack usable as the initial basic variable, per row.
    basis_seed: Vec<Option<usize>>,
    /// Constant added to the min-space objective by bound shifts.
    value_offset: Rational,
}

fn standardize(lp: &LinearProgram) -> StandardForm {
    let n = lp.num_vars;
    // Min-space objective on the original variables.
    let user_costs: Vec<Rational> = match lp.direction {
        Direction::Minimize => lp.objective.clone(),
        Direction::Maximize => lp.objective.iter().map(|c| -c).collect(),
    };

    let mut var_map = Vec::with_capacity(n);
    let mut ncols = 0;
    for lb in &lp.lower_bounds {
        match lb {
            Some(lb) => {
                var_map.push(VarMap::Shift {
                    col: ncols,
                    lb: lb.clone(),
                });
                ncols += 1;
            }
            None => {
                var_map.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }

    let m = lp.constraints.len();
    let mut rows = vec![Vec::new(); m];
    let mut rhs = vec![Rational::zero(); m];
    let mut row_sign = vec![Rational::one(); m];
    let mut basis_seed = vec![None; m];

    // Count slack columns first so every row vector is allocated once.
    let num_slacks = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let total = ncols + num_slacks;

    let mut costs = vec![Rational::zero(); total];
    let mut value_offset = Rational::zero();
    for (j, map) in var_map.iter().enumerate() {
        match map {
            VarMap::Shift { col, lb } => {
                costs[*col] = user_costs[j].clone();
                value_offset += &user_costs[j] * lb;
            }
            VarMap::Split { pos, neg } => {
                costs[*pos] = user_costs[j].clone();
                costs[*neg] = -user_costs[j].clone();
            }
        }
    }

    let mut next_slack = ncols;
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); total];
        let mut b = c.rhs.clone();
        for (j, coeff) in c.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            match &var_map[j] {
                VarMap::Shift { col, lb } => {
                    row[*col] = coeff.clone();
                    b -= coeff * lb;
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] = coeff.clone();
                    row[*neg] = -coeff.clone();
                }
            }
        }
        let slack_col = match c.relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                next_slack += 1;
                Some(next_slack - 1)
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                Some(next_slack - 1)
            }
            Relation::Eq => None,
        };
        if b.is_negative() {
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -v.clone();
                }
            }
            b = -b;
            row_sign[i] = -Rational::one();
        }
        if let Some(col) = slack_col {
            if row[col].is_one() {
                basis_seed[i] = Some(col);
            }
        }
        rows[i] = row;
        rhs[i] = b;
    }

    StandardForm {
        ncols: total,
        costs,
        rows,
        rhs,
        var_map,
        row_sign,
        basis_seed,
        value_offset,
    }
}

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

struct Tableau {
    /// Current rows, `m x ncols_total`.
    t: Vec<Vec<Rational>>,
    beta: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced-cost row and (negated) objective value.
    bottom: Vec<Rational>,
    bottom_rhs: Rational,
    /// Columns that may never enter the basis (artificials in phase 2).
    banned: Vec<bool>,
    ncols: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn objective_value(&self) -> Rational {
        -self.bottom_rhs.clone()
    }

    fn install_costs(&mut self, costs: &[Rational]) {
        debug_assert_eq!(costs.len(), self.ncols);
        self.bottom = costs.to_vec();
        self.bottom_rhs = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero() {
                continue;
            }
            let factor = costs[b].clone();
            for j in 0..self.ncols {
                if !self.t[i][j].is_zero() {
                    let delta = &factor * &self.t[i][j];
                    self.bottom[j] = &self.bottom[j] - delta;
                }
            }
            self.bottom_rhs -= &factor * &self.beta[i];
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = self.t[pr][pc].clone();
        if !inv.is_one() {
            for v in self.t[pr].iter_mut() {
                if !v.is_zero() {
                    *v = &*v / &inv;
                }
            }
            self.beta[pr] = &self.beta[pr] / &inv;
        }
        let pivot_row = self.t[pr].clone();
        let pivot_beta = self.beta[pr].clone();
        for r in 0..self.t.len() {
            if r == pr || self.t[r][pc].is_zero() {
                continue;
            }
            let factor = self.t[r][pc].clone();
            for j in 0..self.ncols {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    self.t[r][j] = &self.t[r][j] - delta;
                }
            }
            let delta = &factor * &pivot_beta;
            self.beta[r] = &self.beta[r] - delta;
        }
        if !self.bottom[pc].is_zero() {
            let factor = self.bottom[pc].clone();
            for j in 0..self.ncols {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    self.bottom[j] = &self.bottom[j] - delta;
                }
            }
            self.bottom_rhs -= &factor * &pivot_beta;
        }
        self.basis[pr] = pc;
    }

    /// Bland's rule: entering column is the least-index column with a
    /// negative reduced cost; the leaving row is the ratio-test minimizer
    /// with the least basic-variable index.
    fn run(&mut self) -> PhaseEnd {
        loop {
            let entering = (0..self.ncols)
                .find(|&j| !self.banned[j] && self.bottom[j].is_negative());
            let Some(pc) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut best: Option<(Rational, usize, usize)> = None; // (ratio, basis var, row)
            for r in 0..self.t.len() {
                if self.t[r][pc].is_positive() {
                    let ratio = &self.beta[r] / &self.t[r][pc];
                    let candidate = (ratio, self.basis[r], r);
                    best = match best {
                        None => Some(candidate),
                        Some(cur) => {
                            if candidate.0 < cur.0
                                || (candidate.0 == cur.0 && candidate.1 < cur.1)
                            {
                                Some(candidate)
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
            }
            match best {
                None => return PhaseEnd::Unbounded,
                Some((_, _, pr)) => self.pivot(pr, pc),
            }
        }
    }
}

/// Solve an LP exactly. Deterministic: identical inputs produce identical
/// outcomes including the witness point. The returned duals are checked by
/// [`verify_optimal`] before returning; a violation is a solver bug and
/// reported as [`LpError::Internal`].
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    lp.validate()?;
    let sf = standardize(lp);
    let m = sf.rows.len();

    // Phase-1 columns: artificials for rows without a usable slack seed.
    let num_artificial = sf.basis_seed.iter().filter(|s| s.is_none()).count();
    let ncols = sf.ncols + num_artificial;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = sf.ncols;
    for (i, row) in sf.rows.iter().enumerate() {
        let mut full = row.clone();
        full.resize(ncols, Rational::zero());
        match sf.basis_seed[i] {
            Some(col) => basis.push(col),
            None => {
                full[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        t.push(full);
    }
    let is_artificial = |col: usize| col >= sf.ncols;

    let mut tab = Tableau {
        t,
        beta: sf.rhs.clone(),
        basis,
        bottom: Vec::new(),
        bottom_rhs: Rational::zero(),
        banned: vec![false; ncols],
        ncols,
    };

    // Phase 1: minimize the sum of artificials.
    if num_artificial > 0 {
        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(sf.ncols) {
            *c = Rational::one();
        }
        tab.install_costs(&phase1);
        match tab.run() {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded => {
                return Err(LpError::Internal("phase 1 unbounded".into()));
            }
        }
        if tab.objective_value().is_positive() {
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                value: None,
                point: None,
                row_duals: None,
            });
        }
        // Drive artificials out of the basis where possible; rows where no
        // structural column has a nonzero entry are redundant and keep their
        // artificial basic at zero.
        for r in 0..m {
            if is_artificial(tab.basis[r]) {
                debug_assert!(tab.beta[r].is_zero());
                let pc = (0..sf.ncols).find(|&j| !tab.t[r][j].is_zero());
                if let Some(pc) = pc {
                    tab.pivot(r, pc);
                }
            }
        }
        for (j, banned) in tab.banned.iter_mut().enumerate() {
            if is_artificial(j) {
                *banned = true;
            }
        }
    }

    // Phase 2.
    let mut phase2 = sf.costs.clone();
    phase2.resize(ncols, Rational::zero());
    tab.install_costs(&phase2);
    match tab.run() {
        PhaseEnd::Unbounded => {
            return Ok(LpOutcome {
                status: LpStatus::Unbounded,
                value: None,
                point: None,
                row_duals: None,
            })
        }
        PhaseEnd::Optimal => {}
    }

    // Reconstruct the user-space point.
    let mut z = vec![Rational::zero(); ncols];
    for (r, &b) in tab.basis.iter().enumerate() {
        z[b] = tab.beta[r].clone();
    }
    let mut point = Vec::with_capacity(lp.num_vars);
    for map in &sf.var_map {
        match map {
            VarMap::Shift { col, lb } => point.push(lb + &z[*col]),
            VarMap::Split { pos, neg } => point.push(&z[*pos] - &z[*neg]),
        }
    }
    let min_value = tab.objective_value() + &sf.value_offset;
    let value = match lp.direction {
        Direction::Minimize => min_value,
        Direction::Maximize => -min_value,
    };

    // Dual prices from the final basis: solve Bᵀ y = c_B on the original
    // standard-form columns, then map back to user rows. Artificial columns
    // (identity columns of the rows that introduced them) can remain basic
    // only at zero, on redundant rows.
    let mut art_row = vec![0usize; num_artificial];
    {
        let mut next = 0;
        for (i, seed) in sf.basis_seed.iter().enumerate() {
            if seed.is_none() {
                art_row[next] = i;
                next += 1;
            }
        }
    }
    let mut bt: Vec<Vec<Rational>> = vec![vec![Rational::zero(); m]; m];
    let mut cb = vec![Rational::zero(); m];
    for (k, &col) in tab.basis.iter().enumerate() {
        if is_artificial(col) {
            bt[k][art_row[col - sf.ncols]] = Rational::one();
        } else {
            for i in 0..m {
                bt[k][i] = sf.rows[i][col].clone();
            }
            cb[k] = phase2[col].clone();
        }
    }
    let y_std = match solve_system(&bt, &cb) {
        SolveOutcome::Unique(y) => y,
        _ => return Err(LpError::Internal("singular basis".into())),
    };
    // Max-form user duals: flip for row negation and for the min-space sign.
    let row_duals: Vec<Rational> = (0..m)
        .map(|i| -(&y_std[i] * &sf.row_sign[i]))
        .collect();

    let outcome = LpOutcome {
        status: LpStatus::Optimal,
        value: Some(value),
        point: Some(point),
        row_duals: Some(row_duals),
    };
    if !verify_optimal(lp, &outcome) {
        return Err(LpError::Internal("optimality certificate failed".into()));
    }
    Ok(outcome)
}

/// Check an optimal outcome by direct arithmetic: primal feasibility, dual
/// sign conditions, dual feasibility of every variable, complementary
/// slackness in both directions, and the strong-duality value identity. All
/// comparisons are exact.
pub fn verify_optimal(lp: &LinearProgram, out: &LpOutcome) -> bool {
    if out.status != LpStatus::Optimal {
        return false;
    }
    let (Some(value), Some(point), Some(duals)) = (&out.value, &out.point, &out.row_duals) else {
        return false;
    };
    if point.len() != lp.num_vars || duals.len() != lp.constraints.len() {
        return false;
    }
    if !lp.is_feasible(point) {
        return false;
    }
    // Normalize to maximization.
    let obj: Vec<Rational> = match lp.direction {
        Direction::Maximize => lp.objective.clone(),
        Direction::Minimize => lp.objective.iter().map(|c| -c).collect(),
    };
    let value = match lp.direction {
        Direction::Maximize => value.clone(),
        Direction::Minimize => -value.clone(),
    };
    if dot(&obj, point) != value {
        return false;
    }
    for (c, y) in lp.constraints.iter().zip(duals) {
        match c.relation {
            Relation::Le => {
                if y.is_negative() {
                    return false;
                }
            }
            Relation::Ge => {
                if y.is_positive() {
                    return false;
                }
            }
            Relation::Eq => {}
        }
        // Complementary slackness on rows.
        if !y.is_zero() && dot(&c.coeffs, point) != c.rhs {
            return false;
        }
    }
    // Reduced costs: r_j = sum_i y_i a_ij - obj_j.
    let mut dual_value = Rational::zero();
    for (c, y) in lp.constraints.iter().zip(duals) {
        if !y.is_zero() {
            dual_value += y * &c.rhs;
        }
    }
    for j in 0..lp.num_vars {
        let mut r = -obj[j].clone();
        for (c, y) in lp.constraints.iter().zip(duals) {
            if !y.is_zero() && !c.coeffs[j].is_zero() {
                r += y * &c.coeffs[j];
            }
        }
        match &lp.lower_bounds[j] {
            None => {
                if !r.is_zero() {
                    return false;
                }
            }
            Some(lb) => {
                if r.is_negative() {
                    return false;
                }
                // Complementary slackness on bounds.
                if point[j] != *lb && !r.is_zero() {
                    return false;
                }
                dual_value -= &r * lb;
            }
        }
    }
    dual_value == value
}

/// Indices of inequality rows whose slack is zero over the entire feasible
/// region (one max-slack solve per row). Errors if the region is empty.
pub fn implicit_equalities(lp: &LinearProgram) -> Result<BTreeSet<usize>, LpError> {
    lp.validate()?;
    let feas = solve(&with_zero_objective(lp))?;
    if feas.status == LpStatus::Infeasible {
        return Err(LpError::InfeasibleRegion);
    }
    let mut implicit = BTreeSet::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        let direction = match c.relation {
            Relation::Le => Direction::Minimize,
            Relation::Ge => Direction::Maximize,
            Relation::Eq => continue,
        };
        let mut probe = lp.clone();
        probe.objective = c.coeffs.clone();
        probe.direction = direction;
        let out = solve(&probe)?;
        match out.status {
            LpStatus::Optimal => {
                // Max slack is |rhs - extreme value|; zero iff extreme == rhs.
                if out.value.as_ref() == Some(&c.rhs) {
                    implicit.insert(i);
                }
            }
            LpStatus::Unbounded => {}
            LpStatus::Infeasible => {
                return Err(LpError::Internal("region became infeasible".into()))
            }
        }
    }
    Ok(implicit)
}

fn with_zero_objective(lp: &LinearProgram) -> LinearProgram {
    let mut r = lp.clone();
    r.objective = vec![Rational::zero(); lp.num_vars];
    r.direction = Direction::Maximize;
    r
}

/// Affine dimension of the feasible region: -1 when empty, otherwise
/// `num_vars - rank(explicit equalities ∪ implicit equalities)`, with
/// implicitly-tight variable bounds included in the rank.
pub fn affine_dimension(lp: &LinearProgram) -> Result<i64, LpError> {
    lp.validate()?;
    let feas = solve(&with_zero_objective(lp))?;
    if feas.status == LpStatus::Infeasible {
        return Ok(-1);
    }
    let implicit = implicit_equalities(lp)?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.relation == Relation::Eq || implicit.contains(&i) {
            rows.push(c.coeffs.clone());
        }
    }
    // A lower bound can be implicitly tight as well.
    for (j, lb) in lp.lower_bounds.iter().enumerate() {
        let Some(lb) = lb else { continue };
        let mut probe = lp.clone();
        probe.objective = unit_vector(lp.num_vars, j);
        probe.direction = Direction::Maximize;
        let out = solve(&probe)?;
        if out.status == LpStatus::Optimal && out.value.as_ref() == Some(lb) {
            rows.push(unit_vector(lp.num_vars, j));
        }
    }
    let rank = crate::linalg::rank(&rows);
    Ok(lp.num_vars as i64 - rank as i64)
}

fn unit_vector(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::one();
    v
}

/// Maximize the smallest slack among the selected inequality rows, capped at
/// 1 so the problem stays bounded. Returns the optimal cap-respecting slack
/// and a witness point of the region attaining it.
pub fn max_min_slack(
    lp: &LinearProgram,
    rows: &[usize],
) -> Result<(Rational, Vec<Rational>), LpError> {
    lp.validate()?;
    for &r in rows {
        let c = lp
            .constraints
            .get(r)
            .ok_or(LpError::RowOutOfRange(r))?;
        if c.relation == Relation::Eq {
            return Err(LpError::NotAnInequality(r));
        }
    }
    let n = lp.num_vars;
    let t_var = n;
    let mut aug = LinearProgram::new(n + 1, unit_vector(n + 1, t_var), Direction::Maximize);
    aug.lower_bounds = lp.lower_bounds.clone();
    aug.lower_bounds.push(None);
    let selected: BTreeSet<usize> = rows.iter().copied().collect();
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut coeffs = c.coeffs.clone();
        let t_coeff = if selected.contains(&i) {
            match c.relation {
                Relation::Le => Rational::one(),
                Relation::Ge => -Rational::one(),
                Relation::Eq => unreachable!(),
            }
        } else {
            Rational::zero()
        };
        coeffs.push(t_coeff);
        aug.push(coeffs, c.relation, c.rhs.clone());
    }
    // The cap row: t <= 1.
    aug.push(unit_vector(n + 1, t_var), Relation::Le, Rational::one());
    let out = solve(&aug)?;
    match out.status {
        LpStatus::Infeasible => Err(LpError::InfeasibleRegion),
        LpStatus::Unbounded => Err(LpError::Internal("capped slack LP unbounded".into())),
        LpStatus::Optimal => {
            let mut point = out.point.unwrap();
            let t = point.pop().unwrap();
            Ok((t, point))
        }
    }
}

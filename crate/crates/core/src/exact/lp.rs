//! Exact two-phase primal simplex.
//!
//! Problems are stated over free variables with `a·x ≤ b` and `a·x = b`
//! rows. Internally each variable is split as `x = x⁺ − x⁻`, every inequality
//! gets a slack, and rows with a negative right-hand side are negated. Rows
//! whose slack cannot start basic receive an artificial variable. The
//! entering column has the most negative reduced cost; after a long run of
//! degenerate pivots the phase falls back to Bland's rule (lowest eligible
//! column enters, ratio ties go to the lowest basic index), so the solver
//! terminates. Every choice is deterministic.
//!
//! Rows are scaled to integers and pivoted fraction-free: the tableau keeps
//! a single integer denominator and every update is an exact division.
//!
//! When phase one ends with positive infeasibility, the phase-one duals are
//! read off the columns of the starting basis and turned into a Farkas
//! certificate for the original rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{int, ExactScalar};
use super::vector::ExactVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: ExactVector,
    #[serde(with = "super::scalar::serde_scalar")]
    pub rhs: ExactScalar,
}

impl Constraint {
    pub fn new(coeffs: ExactVector, rhs: ExactScalar) -> Self {
        Self { coeffs, rhs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    num_vars: usize,
    objective: Option<(Sense, ExactVector)>,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: None,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn maximize(mut self, c: ExactVector) -> Self {
        self.set_objective(Sense::Maximize, c);
        self
    }

    pub fn minimize(mut self, c: ExactVector) -> Self {
        self.set_objective(Sense::Minimize, c);
        self
    }

    pub fn set_objective(&mut self, sense: Sense, c: ExactVector) {
        assert_eq!(c.dim(), self.num_vars, "objective length mismatch");
        self.objective = Some((sense, c));
    }

    pub fn objective(&self) -> Option<(Sense, &ExactVector)> {
        self.objective.as_ref().map(|(s, c)| (*s, c))
    }

    /// Adds `a·x ≤ b`.
    pub fn add_le(&mut self, coeffs: ExactVector, rhs: ExactScalar) {
        assert_eq!(coeffs.dim(), self.num_vars, "constraint length mismatch");
        self.inequalities.push(Constraint::new(coeffs, rhs));
    }

    /// Adds `a·x ≥ b` as `−a·x ≤ −b`.
    pub fn add_ge(&mut self, coeffs: ExactVector, rhs: ExactScalar) {
        self.add_le(coeffs.neg(), -rhs);
    }

    /// Adds `a·x = b`.
    pub fn add_eq(&mut self, coeffs: ExactVector, rhs: ExactScalar) {
        assert_eq!(coeffs.dim(), self.num_vars, "constraint length mismatch");
        self.equalities.push(Constraint::new(coeffs, rhs));
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    /// Exact check of every constraint at `x`.
    pub fn is_satisfied_by(&self, x: &ExactVector) -> bool {
        x.dim() == self.num_vars
            && self.inequalities.iter().all(|c| c.coeffs.dot(x) <= c.rhs)
            && self.equalities.iter().all(|c| c.coeffs.dot(x) == c.rhs)
    }

    pub fn objective_value(&self, x: &ExactVector) -> Option<ExactScalar> {
        self.objective.as_ref().map(|(_, c)| c.dot(x))
    }
}

/// Nonnegative multipliers on the inequality rows and free multipliers on the
/// equality rows whose combination reads `0·x ≤ c` with `c < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub inequality_multipliers: ExactVector,
    pub equality_multipliers: ExactVector,
}

impl FarkasCertificate {
    /// Validates the certificate against `problem` with one combination pass.
    pub fn verify(&self, problem: &LpProblem) -> bool {
        if self.inequality_multipliers.dim() != problem.inequalities.len()
            || self.equality_multipliers.dim() != problem.equalities.len()
        {
            return false;
        }
        if self.inequality_multipliers.iter().any(Signed::is_negative) {
            return false;
        }
        let mut combo = ExactVector::zeros(problem.num_vars);
        let mut rhs = ExactScalar::zero();
        let rows = problem
            .inequalities
            .iter()
            .zip(self.inequality_multipliers.iter())
            .chain(problem.equalities.iter().zip(self.equality_multipliers.iter()));
        for (row, mult) in rows {
            if mult.is_zero() {
                continue;
            }
            combo = combo.add(&row.coeffs.scale(mult));
            rhs += &row.rhs * mult;
        }
        combo.is_zero() && rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: ExactVector,
        value: ExactScalar,
    },
    Feasible {
        point: ExactVector,
    },
    Infeasible {
        farkas: FarkasCertificate,
    },
    /// `point + t·ray` stays feasible for all `t ≥ 0` and improves the objective without bound.
    Unbounded {
        point: ExactVector,
        ray: ExactVector,
    },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&ExactVector> {
        match self {
            LpOutcome::Optimal { point, .. }
            | LpOutcome::Feasible { point }
            | LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

/// Fraction-free tableau: `rows`/`rhs` hold `D·B⁻¹[A | b]` for the current
/// basis `B` and the common integer denominator `D > 0`, so every pivot is an
/// exact integer division (integer-preserving Gauss–Jordan).
struct Tableau {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    basis: Vec<usize>,
    /// `D` times the reduced costs of the current (minimisation) objective.
    cost: Vec<BigInt>,
    denom: BigInt,
    /// Columns allowed to enter the basis.
    enterable: usize,
}

/// Consecutive degenerate pivots tolerated before switching from the
/// most-negative rule to Bland's rule, which cannot cycle.
const DEGENERATE_LIMIT: usize = 50;

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

/// `row · p / d` when the pivot column entry is zero, otherwise
/// `(row · p − f · prow) / d`; every division is exact.
fn eliminate(row: &mut [BigInt], rhs: &mut BigInt, e: usize, p: &BigInt, d: &BigInt, prow: &[BigInt], prhs: &BigInt) {
    let f = row[e].clone();
    if f.is_zero() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * p / d;
            }
        }
        *rhs = &*rhs * p / d;
    } else {
        for (x, pr) in row.iter_mut().zip(prow) {
            if pr.is_zero() {
                if !x.is_zero() {
                    *x = &*x * p / d;
                }
            } else {
                *x = (&*x * p - &f * pr) / d;
            }
        }
        *rhs = (&*rhs * p - &f * prhs) / d;
    }
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e].clone();
        let d = std::mem::replace(&mut self.denom, p.clone());
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i != r {
                let (row, rhs) = (&mut self.rows[i], &mut self.rhs[i]);
                eliminate(row, rhs, e, &p, &d, &prow, &prhs);
            }
        }
        let mut unused = BigInt::zero();
        eliminate(&mut self.cost, &mut unused, e, &p, &d, &prow, &prhs);
        self.rows[r] = prow;
        self.basis[r] = e;
        if self.denom.is_negative() {
            // The tableau is homogeneous in D, so negate everything.
            self.denom = -std::mem::take(&mut self.denom);
            for row in self.rows.iter_mut() {
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            for x in self.rhs.iter_mut().chain(self.cost.iter_mut()) {
                *x = -std::mem::take(x);
            }
        }
    }

    /// Installs `costs` (rationals, rescaled to integers) as the objective.
    fn set_costs(&mut self, costs: &[ExactScalar]) {
        let scale = costs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let c: Vec<BigInt> = costs.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
        let mut cost: Vec<BigInt> = c.iter().map(|x| x * &self.denom).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    cost[j] -= cb * a;
                }
            }
        }
        self.cost = cost;
    }

    fn run(&mut self) -> PhaseEnd {
        let mut degenerate_streak = 0usize;
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..self.enterable).find(|&j| self.cost[j].is_negative())
            } else {
                (0..self.enterable)
                    .filter(|&j| self.cost[j].is_negative())
                    .min_by(|&a, &b| self.cost[a].cmp(&self.cost[b]).then(a.cmp(&b)))
            };
            let Some(e) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(k) => {
                        // rhs_i / a_ie against rhs_k / a_ke, both denominators positive.
                        let lhs = &self.rhs[i] * &self.rows[k][e];
                        let rhs = &self.rhs[k] * a;
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[k])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                Some(r) => {
                    if self.rhs[r].is_zero() {
                        degenerate_streak += 1;
                        bland |= degenerate_streak > DEGENERATE_LIMIT;
                    } else {
                        degenerate_streak = 0;
                    }
                    self.pivot(r, e)
                }
                None => return PhaseEnd::Unbounded(e),
            }
        }
    }

    fn ratio(&self, x: &BigInt) -> ExactScalar {
        ExactScalar::new(x.clone(), self.denom.clone())
    }

    fn column_values(&self, ncols: usize) -> Vec<ExactScalar> {
        let mut z = vec![ExactScalar::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                z[b] = self.ratio(&self.rhs[i]);
            }
        }
        z
    }
}

fn split_back(z: &[ExactScalar], n: usize) -> ExactVector {
    (0..n).map(|k| &z[k] - &z[n + k]).collect()
}

/// Smallest positive integer clearing every denominator of a row.
fn row_scale(con: &Constraint) -> BigInt {
    con.coeffs
        .iter()
        .chain(std::iter::once(&con.rhs))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(x: &ExactScalar, scale: &BigInt) -> BigInt {
    x.numer() * (scale / x.denom())
}

/// Solves `problem` exactly. See the module docs for the method.
pub fn lp_solve(problem: &LpProblem) -> LpOutcome {
    let n = problem.num_vars;
    let p = problem.inequalities.len();
    let q = problem.equalities.len();
    let m = p + q;
    let structural = 2 * n + p;

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    // Original row r equals (row r of the tableau) / row_factor[r].
    let mut row_factor: Vec<BigInt> = Vec::with_capacity(m);
    let mut needs_artificial = Vec::with_capacity(m);
    for (r, con) in problem
        .inequalities
        .iter()
        .chain(problem.equalities.iter())
        .enumerate()
    {
        let flip = con.rhs.is_negative();
        let mut factor = row_scale(con);
        if flip {
            factor = -factor;
        }
        let mut row = vec![BigInt::zero(); structural];
        for (k, a) in con.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let v = scaled(a, &factor);
                row[n + k] = -v.clone();
                row[k] = v;
            }
        }
        if r < p {
            // The slack is rescaled with the row, so its coefficient is ±1.
            row[2 * n + r] = if flip { BigInt::from(-1) } else { BigInt::one() };
        }
        rows.push(row);
        rhs.push(scaled(&con.rhs, &factor));
        row_factor.push(factor);
        needs_artificial.push(r >= p || flip);
    }

    let num_art = needs_artificial.iter().filter(|&&x| x).count();
    let ncols = structural + num_art;
    let mut basis = Vec::with_capacity(m);
    let mut start_col = Vec::with_capacity(m);
    let mut next_art = structural;
    for (r, row) in rows.iter_mut().enumerate() {
        row.resize(ncols, BigInt::zero());
        if needs_artificial[r] {
            row[next_art] = BigInt::one();
            basis.push(next_art);
            start_col.push(next_art);
            next_art += 1;
        } else {
            basis.push(2 * n + r);
            start_col.push(2 * n + r);
        }
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        cost: Vec::new(),
        denom: BigInt::one(),
        enterable: ncols,
    };

    // Phase one: minimise the sum of artificials.
    let mut phase1_costs = vec![ExactScalar::zero(); ncols];
    for c in phase1_costs.iter_mut().skip(structural) {
        *c = int(1);
    }
    tab.set_costs(&phase1_costs);
    if num_art > 0 {
        // The phase-one objective is bounded below by zero.
        let _ = tab.run();
    }

    let infeasibility: BigInt = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&b, _)| b >= structural)
        .map(|(_, x)| x.clone())
        .sum();
    if infeasibility.is_positive() {
        // Phase-one duals: the artificial-cost row of B⁻¹, read off the
        // starting-basis columns, then mapped back through the row scaling.
        let mut y = vec![BigInt::zero(); m];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < structural {
                continue;
            }
            for r in 0..m {
                y[r] += &tab.rows[i][start_col[r]];
            }
        }
        let lambda: Vec<ExactScalar> = (0..m)
            .map(|r| -ExactScalar::new(&y[r] * &row_factor[r], tab.denom.clone()))
            .collect();
        let farkas = FarkasCertificate {
            inequality_multipliers: lambda[..p].iter().cloned().collect(),
            equality_multipliers: lambda[p..].iter().cloned().collect(),
        };
        debug_assert!(farkas.verify(problem), "Farkas certificate failed validation");
        return LpOutcome::Infeasible { farkas };
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= structural {
            match (0..structural).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.rhs.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for row in tab.rows.iter_mut() {
        row.truncate(structural);
    }
    tab.enterable = structural;

    let Some((sense, c)) = problem.objective.as_ref() else {
        let z = tab.column_values(structural);
        let point = split_back(&z, n);
        debug_assert!(problem.is_satisfied_by(&point));
        return LpOutcome::Feasible { point };
    };

    // Phase two: minimise −c·x for maximisation, c·x for minimisation.
    let mut costs = vec![ExactScalar::zero(); structural];
    for (k, ck) in c.iter().enumerate() {
        let v = match sense {
            Sense::Maximize => -ck.clone(),
            Sense::Minimize => ck.clone(),
        };
        costs[n + k] = -v.clone();
        costs[k] = v;
    }
    tab.set_costs(&costs);
    let end = tab.run();
    let z = tab.column_values(structural);
    let point = split_back(&z, n);
    debug_assert!(problem.is_satisfied_by(&point));
    match end {
        PhaseEnd::Optimal => {
            let value = c.dot(&point);
            LpOutcome::Optimal { point, value }
        }
        PhaseEnd::Unbounded(e) => {
            let mut dz = vec![ExactScalar::zero(); structural];
            dz[e] = int(1);
            for (i, &b) in tab.basis.iter().enumerate() {
                dz[b] = -tab.ratio(&tab.rows[i][e]);
            }
            let ray = split_back(&dz, n);
            LpOutcome::Unbounded { point, ray }
        }
    }
}

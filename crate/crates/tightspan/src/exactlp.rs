//! Exact rational linear programming.
//!
//! Solves `maximize c·y` subject to `Ay = b`, `y >= 0` with a dense
//! two-phase simplex over [`Rational`] entries. Bland's rule (smallest
//! index enters, smallest basic index breaks ratio ties) guarantees
//! termination, and the fixed column order makes every solve
//! deterministic, so the supports extracted downstream are reproducible.
//!
//! There is no presolve and no scaling: the LPs in this crate have at most
//! a few dozen variables and exactness is the whole point.

use crate::rational::{int, Rational};
use num_traits::{Signed, Zero};

/// An equality-constrained LP in standard form: variables are nonnegative,
/// every constraint is an equality, the objective is maximized.
#[derive(Clone)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
    objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), num_vars);
        LinearProgram { num_vars, rows: Vec::new(), objective }
    }

    /// Appends the equality `coeffs · y = rhs`.
    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, rhs));
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`solve`]. When `status` is `Optimal` the point is a basic
/// feasible solution (a vertex) satisfying every constraint exactly.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub point: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
    /// True iff the optimal point is the unique optimum. Decided exactly:
    /// strictly negative reduced costs on every nonbasic column settle it
    /// immediately; otherwise each coordinate is maximized over the
    /// optimal face, which resolves degenerate bases both ways.
    pub unique_optimum: bool,
}

enum CoreOutcome {
    Optimal { point: Vec<Rational>, objective: Rational, strict_reduced_costs: bool },
    Infeasible,
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

/// Solves the LP, including the multiple-optimum analysis.
pub fn solve(lp: &LinearProgram) -> LpSolution {
    match solve_core(lp) {
        CoreOutcome::Infeasible => LpSolution {
            status: LpStatus::Infeasible,
            point: None,
            objective_value: None,
            unique_optimum: false,
        },
        CoreOutcome::Unbounded { .. } => LpSolution {
            status: LpStatus::Unbounded,
            point: None,
            objective_value: None,
            unique_optimum: false,
        },
        CoreOutcome::Optimal { point, objective, strict_reduced_costs } => {
            let unique = find_alternate(lp, &point, &objective, strict_reduced_costs).is_none();
            LpSolution {
                status: LpStatus::Optimal,
                point: Some(point),
                objective_value: Some(objective),
                unique_optimum: unique,
            }
        }
    }
}

/// Feasibility only: some basic feasible point if one exists. Skips the
/// multiple-optimum analysis entirely.
pub(crate) fn find_feasible(lp: &LinearProgram) -> Option<Vec<Rational>> {
    match solve_core(lp) {
        CoreOutcome::Optimal { point, .. } => Some(point),
        CoreOutcome::Unbounded { point, .. } => Some(point),
        CoreOutcome::Infeasible => None,
    }
}

/// Returns a second optimal point distinct from the solver's, if the
/// optimum is not unique. Used to build non-genericity certificates.
pub fn alternate_optimum(lp: &LinearProgram) -> Option<Vec<Rational>> {
    match solve_core(lp) {
        CoreOutcome::Optimal { point, objective, strict_reduced_costs } => {
            find_alternate(lp, &point, &objective, strict_reduced_costs)
        }
        _ => None,
    }
}

/// Decides whether an LP has a feasible point `x` (free-signed, internally
/// split into differences of nonnegative variables) satisfying every
/// equality exactly and every strict row with some uniform slack `t > 0`.
///
/// The margin variable is maximized subject to `t <= cap`; only the sign
/// of the optimum matters. Returns the witness `x` when one exists.
pub fn feasible_with_margin(
    num_vars: usize,
    equalities: &[(Vec<Rational>, Rational)],
    strict_rows: &[(Vec<Rational>, Rational)],
    cap: &Rational,
) -> Option<Vec<Rational>> {
    assert!(cap.is_positive(), "margin cap must be positive");
    // columns: x+ (num_vars), x- (num_vars), t, one surplus per strict
    // row, and the slack of the cap row
    let t_col = 2 * num_vars;
    let total = 2 * num_vars + 1 + strict_rows.len() + 1;
    let mut objective = vec![int(0); total];
    objective[t_col] = int(1);
    let mut lp = LinearProgram::new(total, objective);

    let split = |coeffs: &[Rational]| -> Vec<Rational> {
        assert_eq!(coeffs.len(), num_vars);
        let mut row = vec![int(0); total];
        for (i, a) in coeffs.iter().enumerate() {
            row[i] = a.clone();
            row[num_vars + i] = -a.clone();
        }
        row
    };

    for (coeffs, rhs) in equalities {
        lp.add_equality(split(coeffs), rhs.clone());
    }
    for (k, (coeffs, rhs)) in strict_rows.iter().enumerate() {
        // a·x - t - s_k = rhs  encodes  a·x >= rhs + t
        let mut row = split(coeffs);
        row[t_col] = int(-1);
        row[t_col + 1 + k] = int(-1);
        lp.add_equality(row, rhs.clone());
    }
    let mut cap_row = vec![int(0); total];
    cap_row[t_col] = int(1);
    cap_row[total - 1] = int(1);
    lp.add_equality(cap_row, cap.clone());

    match solve_core(&lp) {
        CoreOutcome::Optimal { point, objective, .. } => {
            if objective.is_positive() {
                let x = (0..num_vars)
                    .map(|i| &point[i] - &point[num_vars + i])
                    .collect();
                Some(x)
            } else {
                None
            }
        }
        CoreOutcome::Infeasible => None,
        // the objective t is capped, so the simplex cannot diverge
        CoreOutcome::Unbounded { .. } => unreachable!("margin LP objective is bounded"),
    }
}

// ---------------------------------------------------------------------
// simplex internals
// ---------------------------------------------------------------------

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    obj: Rational,
    width: usize,
}

enum StepOutcome {
    Optimal,
    Unbounded { col: usize },
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for x in &mut self.a[row] {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        self.b[row] /= &p;
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let factor = self.a[r][col].clone();
            for c in 0..self.width {
                if !self.a[row][c].is_zero() {
                    let delta = &factor * &self.a[row][c];
                    self.a[r][c] -= delta;
                }
            }
            if !self.b[row].is_zero() {
                let delta = &factor * &self.b[row];
                self.b[r] -= delta;
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for c in 0..self.width {
                if !self.a[row][c].is_zero() {
                    let delta = &factor * &self.a[row][c];
                    self.cost[c] -= delta;
                }
            }
            let delta = &factor * &self.b[row];
            self.obj += delta;
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule to optimality or unboundedness.
    fn run(&mut self) -> StepOutcome {
        loop {
            let entering = (0..self.width).find(|&j| self.cost[j].is_positive());
            let Some(col) = entering else {
                return StepOutcome::Optimal;
            };
            let mut leave: Option<(Rational, usize, usize)> = None; // ratio, basis var, row
            for r in 0..self.a.len() {
                if !self.a[r][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.a[r][col];
                let replace = match &leave {
                    None => true,
                    Some((best, var, _)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < *var)
                    }
                };
                if replace {
                    leave = Some((ratio, self.basis[r], r));
                }
            }
            match leave {
                Some((_, _, row)) => self.pivot(row, col),
                None => return StepOutcome::Unbounded { col },
            }
        }
    }

    fn basic_point(&self, num_vars: usize) -> Vec<Rational> {
        let mut y = vec![int(0); num_vars];
        for (r, &var) in self.basis.iter().enumerate() {
            if var < num_vars {
                y[var] = self.b[r].clone();
            }
        }
        y
    }
}

fn solve_core(lp: &LinearProgram) -> CoreOutcome {
    let n = lp.num_vars;
    let m = lp.rows.len();

    // phase 1: artificial basis
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut b: Vec<Rational> = Vec::with_capacity(m);
    for (r, (coeffs, rhs)) in lp.rows.iter().enumerate() {
        let flip = rhs.is_negative();
        let mut row: Vec<Rational> = coeffs
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == r { int(1) } else { int(0) }));
        a.push(row);
        b.push(if flip { -rhs.clone() } else { rhs.clone() });
    }
    let mut cost: Vec<Rational> = (0..n + m)
        .map(|j| if j < n { (0..m).map(|r| a[r][j].clone()).sum() } else { int(0) })
        .collect();
    let obj = -b.iter().cloned().sum::<Rational>();
    let mut t = Tableau { a, b, basis: (n..n + m).collect(), cost, obj, width: n + m };

    match t.run() {
        StepOutcome::Optimal => {}
        // phase-1 objective is bounded above by zero
        StepOutcome::Unbounded { .. } => unreachable!("phase 1 cannot be unbounded"),
    }
    if t.obj.is_negative() {
        return CoreOutcome::Infeasible;
    }

    // drive artificials out of the basis, dropping redundant rows
    let mut keep: Vec<bool> = vec![true; t.a.len()];
    for r in 0..t.a.len() {
        if t.basis[r] < n {
            continue;
        }
        match (0..n).find(|&j| !t.a[r][j].is_zero()) {
            Some(col) => t.pivot(r, col),
            None => keep[r] = false,
        }
    }
    fn filter_keep<T>(v: Vec<T>, keep: &[bool]) -> Vec<T> {
        v.into_iter().zip(keep).filter(|(_, &k)| k).map(|(x, _)| x).collect()
    }
    t.a = filter_keep(t.a, &keep);
    t.b = filter_keep(t.b, &keep);
    t.basis = filter_keep(t.basis, &keep);

    // phase 2: real objective over the real columns
    t.width = n;
    for row in &mut t.a {
        row.truncate(n);
    }
    cost = (0..n)
        .map(|j| {
            let mut c = lp.objective[j].clone();
            for (r, &var) in t.basis.iter().enumerate() {
                if !lp.objective[var].is_zero() && !t.a[r][j].is_zero() {
                    c -= &lp.objective[var] * &t.a[r][j];
                }
            }
            c
        })
        .collect();
    t.cost = cost;
    t.obj = t
        .basis
        .iter()
        .enumerate()
        .map(|(r, &var)| &lp.objective[var] * &t.b[r])
        .sum();

    match t.run() {
        StepOutcome::Optimal => {
            let point = t.basic_point(n);
            let objective: Rational =
                point.iter().zip(&lp.objective).map(|(y, c)| y * c).sum();
            debug_assert_eq!(objective, t.obj);
            let in_basis = {
                let mut mark = vec![false; n];
                for &var in &t.basis {
                    mark[var] = true;
                }
                mark
            };
            let strict = (0..n).all(|j| in_basis[j] || t.cost[j].is_negative());
            CoreOutcome::Optimal { point, objective, strict_reduced_costs: strict }
        }
        StepOutcome::Unbounded { col } => {
            let point = t.basic_point(n);
            let mut ray = vec![int(0); n];
            ray[col] = int(1);
            for (r, &var) in t.basis.iter().enumerate() {
                if var < n {
                    ray[var] = -t.a[r][col].clone();
                }
            }
            CoreOutcome::Unbounded { point, ray }
        }
    }
}

/// Searches the optimal face for a point distinct from `point` by
/// maximizing each coordinate subject to `c·y = objective`. Returns such a
/// point, or `None` when the optimum is unique. The `strict_reduced_costs`
/// fast path is sound: strictly negative reduced costs on all nonbasic
/// columns certify uniqueness outright.
fn find_alternate(
    lp: &LinearProgram,
    point: &[Rational],
    objective: &Rational,
    strict_reduced_costs: bool,
) -> Option<Vec<Rational>> {
    if strict_reduced_costs {
        return None;
    }
    for j in 0..lp.num_vars {
        let mut unit = vec![int(0); lp.num_vars];
        unit[j] = int(1);
        let mut face = LinearProgram::new(lp.num_vars, unit);
        for (coeffs, rhs) in &lp.rows {
            face.add_equality(coeffs.clone(), rhs.clone());
        }
        face.add_equality(lp.objective.clone(), objective.clone());
        match solve_core(&face) {
            CoreOutcome::Optimal { point: alt, objective: best_j, .. } => {
                debug_assert!(best_j >= point[j]);
                if best_j > point[j] {
                    return Some(alt);
                }
            }
            CoreOutcome::Unbounded { point: base, ray } => {
                // ray[j] > 0; step far enough that coordinate j provably
                // differs from the original point
                debug_assert!(ray[j].is_positive());
                let needed = (&point[j] - &base[j]) / &ray[j];
                let step = if needed.is_positive() { needed + int(1) } else { int(1) };
                let alt: Vec<Rational> =
                    base.iter().zip(&ray).map(|(p, r)| p + r * &step).collect();
                return Some(alt);
            }
            CoreOutcome::Infeasible => unreachable!("optimal face contains the optimum"),
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn lp(
        num_vars: usize,
        objective: &[Rational],
        rows: &[(&[Rational], Rational)],
    ) -> LinearProgram {
        let mut p = LinearProgram::new(num_vars, objective.to_vec());
        for (coeffs, rhs) in rows {
            p.add_equality(coeffs.to_vec(), rhs.clone());
        }
        p
    }

    #[test]
    fn single_constraint_vertex() {
        let p = lp(2, &[int(1), int(0)], &[(&[int(1), int(1)], int(1))]);
        let s = solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.point.unwrap(), vec![int(1), int(0)]);
        assert_eq!(s.objective_value.unwrap(), int(1));
        assert!(s.unique_optimum);
    }

    #[test]
    fn whole_edge_optimal_is_not_unique() {
        let p = lp(2, &[int(1), int(1)], &[(&[int(1), int(1)], int(1))]);
        let s = solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value.unwrap(), int(1));
        assert!(!s.unique_optimum);
        let alt = alternate_optimum(&p).expect("a second optimum exists");
        assert_ne!(alt, s.point.unwrap());
        assert_eq!(&alt[0] + &alt[1], int(1));
    }

    /// Independent oracle for the K_3 matching system: straightforward
    /// elimination of the three equations.
    fn k3_forced_solution(w: [Rational; 3]) -> [Rational; 3] {
        // y12 + y13 = w1, y12 + y23 = w2, y13 + y23 = w3
        let half = rat(1, 2);
        let y12 = (&w[0] + &w[1] - &w[2]) * &half;
        let y13 = (&w[0] + &w[2] - &w[1]) * &half;
        let y23 = (&w[1] + &w[2] - &w[0]) * &half;
        [y12, y13, y23]
    }

    #[test]
    fn k3_matching_system_is_forced() {
        let rows: Vec<(Vec<Rational>, Rational)> = vec![
            (vec![int(1), int(1), int(0)], int(1)),
            (vec![int(1), int(0), int(1)], int(1)),
            (vec![int(0), int(1), int(1)], int(1)),
        ];
        for objective in [
            vec![int(1), int(1), int(1)],
            vec![int(3), rat(1, 7), int(2)],
        ] {
            let mut p = LinearProgram::new(3, objective);
            for (c, r) in &rows {
                p.add_equality(c.clone(), r.clone());
            }
            let s = solve(&p);
            assert_eq!(s.status, LpStatus::Optimal);
            let expect = k3_forced_solution([int(1), int(1), int(1)]);
            assert_eq!(s.point.unwrap(), expect.to_vec());
            assert!(s.unique_optimum);
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let p = lp(
            1,
            &[int(0)],
            &[(&[int(1)], int(1)), (&[int(1)], int(2))],
        );
        assert_eq!(solve(&p).status, LpStatus::Infeasible);

        let p = lp(2, &[int(1), int(0)], &[(&[int(1), int(-1)], int(0))]);
        assert_eq!(solve(&p).status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let p = lp(
            2,
            &[int(1), int(2)],
            &[
                (&[int(1), int(1)], int(1)),
                (&[int(2), int(2)], int(2)),
            ],
        );
        let s = solve(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value.unwrap(), int(2));
        assert!(s.unique_optimum);
    }

    #[test]
    fn margin_equalities_only() {
        // x1+x2 = 1, x1+x3 = 1, x2+x3 = 1 over free x: forced (1/2,1/2,1/2)
        let eqs = vec![
            (vec![int(1), int(1), int(0)], int(1)),
            (vec![int(1), int(0), int(1)], int(1)),
            (vec![int(0), int(1), int(1)], int(1)),
        ];
        let x = feasible_with_margin(3, &eqs, &[], &int(1)).expect("feasible");
        assert_eq!(x, vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn margin_with_strict_rows() {
        // x1+x2 = 1 with x1+x3 > 1 and x2+x3 > 1: satisfiable with large x3
        let eqs = vec![(vec![int(1), int(1), int(0)], int(1))];
        let strict = vec![
            (vec![int(1), int(0), int(1)], int(1)),
            (vec![int(0), int(1), int(1)], int(1)),
        ];
        let x = feasible_with_margin(3, &eqs, &strict, &int(1)).expect("feasible");
        assert_eq!(&x[0] + &x[1], int(1));
        assert!((&x[0] + &x[2]) > int(1));
        assert!((&x[1] + &x[2]) > int(1));
    }

    #[test]
    fn margin_detects_inconsistent_equalities() {
        // all six pair sums on four unknowns, generically inconsistent
        let d = [
            rat(17, 16), // 12
            int(2),      // 13
            rat(33, 32), // 14
            rat(65, 64), // 23
            int(2),      // 24
            rat(129, 128), // 34
        ];
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let eqs: Vec<(Vec<Rational>, Rational)> = pairs
            .iter()
            .zip(&d)
            .map(|(&(i, j), rhs)| {
                let mut row = vec![int(0); 4];
                row[i] = int(1);
                row[j] = int(1);
                (row, rhs.clone())
            })
            .collect();
        assert!(feasible_with_margin(4, &eqs, &[], &int(1)).is_none());
    }

    #[test]
    fn margin_zero_slack_is_rejected() {
        // x1 = 0 with x1 > 0 impossible
        let eqs = vec![(vec![int(1)], int(0))];
        let strict = vec![(vec![int(1)], int(0))];
        assert!(feasible_with_margin(1, &eqs, &strict, &int(1)).is_none());
    }
}

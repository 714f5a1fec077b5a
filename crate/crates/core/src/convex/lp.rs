//! Dense two-phase simplex method with Bland's rule. Meant for the handful of
//! constraints that arise from intersecting a few translates of a polytope.

const EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c];
            if factor != 0.0 {
                row.iter_mut().zip(&pivot_row).for_each(|(v, w)| *v -= factor * w);
            }
        }
        self.basis[r] = c;
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rows[i][self.rhs]).sum()
    }

    /// Maximize `cost · x` over the columns `0..allowed`. Returns `false` if
    /// the objective is unbounded.
    fn run(&mut self, cost: &[f64], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let reduced = cost[j]
                    - self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rows[i][j]).sum::<f64>();
                if reduced > EPS {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leaving: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] > EPS {
                    let ratio = row[self.rhs] / row[c];
                    leaving = match leaving {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            if ratio < best - EPS || (ratio <= best + EPS && self.basis[i] < self.basis[k]) {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximize `c · x` subject to `A x ≤ b` and `x ≥ 0`.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let m = a.len();
    let nv = c.len();
    let negative: Vec<usize> = (0..m).filter(|&i| b[i] < 0.0).collect();
    let ncol = nv + m + negative.len();
    let rhs = ncol;
    let mut rows = vec![vec![0.0; ncol + 1]; m];
    let mut basis = vec![0; m];
    let mut art = 0;
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..nv {
            rows[i][j] = sign * a[i][j];
        }
        rows[i][nv + i] = sign;
        rows[i][rhs] = sign * b[i];
        if b[i] < 0.0 {
            rows[i][nv + m + art] = 1.0;
            basis[i] = nv + m + art;
            art += 1;
        } else {
            basis[i] = nv + i;
        }
    }
    let mut t = Tableau { rows, basis, rhs };

    if art > 0 {
        let mut cost = vec![0.0; ncol];
        cost[nv + m..].iter_mut().for_each(|v| *v = -1.0);
        t.run(&cost, ncol);
        if t.objective(&cost) < -1e-9 {
            return LpOutcome::Infeasible;
        }
        for r in 0..m {
            if t.basis[r] >= nv + m {
                if let Some(c) = (0..nv + m).find(|&j| t.rows[r][j].abs() > 1e-9 && !t.basis.contains(&j)) {
                    t.pivot(r, c);
                }
            }
        }
    }

    let mut cost = vec![0.0; ncol];
    cost[..nv].copy_from_slice(c);
    if !t.run(&cost, nv + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; nv];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < nv {
            x[bcol] = t.rows[i][rhs];
        }
    }
    let value = c.iter().zip(&x).map(|(p, q)| p * q).sum();
    LpOutcome::Optimal { x, value }
}

/// Maximize `c · y` over free variables `y ∈ R^n` subject to `A y ≤ b`, by
/// splitting `y = y⁺ − y⁻`.
pub fn maximize_free(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let n = c.len();
    let split = |row: &[f64]| -> Vec<f64> { row.iter().copied().chain(row.iter().map(|v| -v)).collect() };
    let a2: Vec<Vec<f64>> = a.iter().map(|r| split(r)).collect();
    match maximize(&split(c), &a2, b) {
        LpOutcome::Optimal { x, value } => {
            LpOutcome::Optimal { x: (0..n).map(|i| x[i] - x[n + i]).collect(), value }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let r = maximize(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        );
        match r {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 36.0).abs() < 1e-9);
                assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&[1.0], &[vec![1.0], vec![-1.0]], &[1.0, -2.0]), LpOutcome::Infeasible);
        assert_eq!(maximize(&[1.0], &[vec![-1.0]], &[0.0]), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables() {
        // min y subject to y ≥ -3  →  max -y = 3
        match maximize_free(&[-1.0], &[vec![-1.0]], &[3.0]) {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 3.0).abs() < 1e-12);
                assert!((x[0] + 3.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Several constraints active at the optimum.
        let a = vec![vec![1.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![2.0, 2.0], vec![1.0, 2.0]];
        let b = vec![1.0, 1.0, 1.0, 2.0, 2.0];
        match maximize(&[1.0, 1.0], &a, &b) {
            LpOutcome::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }
}

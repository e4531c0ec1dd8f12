//! Dense two-phase simplex for `min cᵀx` subject to `Ax = b`, `x ≥ 0`.
//!
//! Bland's rule throughout, so the pivot sequence is deterministic and
//! cannot cycle. Dual values are read off the artificial columns.

const EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub x: Vec<f64>,
    /// Dual vector `y` with `Aᵀy ≤ c` and `bᵀy` equal to the objective.
    pub duals: Vec<f64>,
    pub pivots: usize,
}

struct Tableau {
    /// `m` constraint rows and one cost row, each of width `n + m + 1`.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    m: usize,
    n: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.t[r][self.n + self.m]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.n + self.m + 1;
        let p = self.t[r][c];
        for k in 0..w {
            self.t[r][k] /= p;
        }
        for i in 0..=self.m {
            if i == r {
                continue;
            }
            let f = self.t[i][c];
            if f.abs() > 0.0 {
                for k in 0..w {
                    self.t[i][k] -= f * self.t[r][k];
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Load `costs` into the last row as reduced costs for the current basis.
    fn set_costs(&mut self, costs: &[f64]) {
        let w = self.n + self.m + 1;
        let mut row = vec![0.0; w];
        row[..costs.len()].copy_from_slice(costs);
        for r in 0..self.m {
            let cb = costs.get(self.basis[r]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for k in 0..w {
                    row[k] -= cb * self.t[r][k];
                }
            }
        }
        self.t[self.m] = row;
    }

    /// Run to optimality over columns `0..allowed`; `false` if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&c| self.t[self.m][c] < -EPS);
            let Some(c) = entering else { return true };
            let mut best: Option<(f64, usize, usize)> = None;
            for r in 0..self.m {
                let a = self.t[r][c];
                if a > EPS {
                    let ratio = self.rhs(r) / a;
                    let better = match best {
                        None => true,
                        Some((q, _, bv)) => {
                            ratio < q - EPS || (ratio <= q + EPS && self.basis[r] < bv)
                        }
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solve `min cᵀx, Ax = b, x ≥ 0` with `a` given row-major (`m × n`).
pub fn solve(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpSolution {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    let w = n + m + 1;
    let mut flipped = vec![false; m];
    let mut t = vec![vec![0.0; w]; m + 1];
    for r in 0..m {
        assert_eq!(a[r].len(), n);
        let s = if b[r] < 0.0 { -1.0 } else { 1.0 };
        flipped[r] = s < 0.0;
        for k in 0..n {
            t[r][k] = s * a[r][k];
        }
        t[r][n + r] = 1.0;
        t[r][w - 1] = s * b[r];
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        m,
        n,
        pivots: 0,
    };

    let mut phase1 = vec![0.0; n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = 1.0;
    }
    tab.set_costs(&phase1);
    tab.optimize(n + m);
    let infeasibility = -tab.t[m][w - 1];
    if infeasibility > 1e-7 {
        return LpSolution {
            status: LpStatus::Infeasible,
            objective: f64::NAN,
            x: vec![],
            duals: vec![],
            pivots: tab.pivots,
        };
    }
    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(col) = (0..n).find(|&k| tab.t[r][k].abs() > EPS) {
                tab.pivot(r, col);
            }
        }
    }

    tab.set_costs(c);
    if !tab.optimize(n) {
        return LpSolution {
            status: LpStatus::Unbounded,
            objective: f64::NEG_INFINITY,
            x: vec![],
            duals: vec![],
            pivots: tab.pivots,
        };
    }
    let mut x = vec![0.0; n];
    for r in 0..m {
        if tab.basis[r] < n {
            x[tab.basis[r]] = tab.rhs(r);
        }
    }
    let objective: f64 = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    let duals = (0..m)
        .map(|r| {
            let y = -tab.t[m][n + r];
            if flipped[r] {
                -y
            } else {
                y
            }
        })
        .collect();
    LpSolution {
        status: LpStatus::Optimal,
        objective,
        x,
        duals,
        pivots: tab.pivots,
    }
}

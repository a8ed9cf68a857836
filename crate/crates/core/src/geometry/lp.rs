//! Exact two-phase simplex with Bland's rule.
//!
//! Variables are free; each is split into a nonnegative pair internally.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rat, x: Vec<Rat> },
    Unbounded,
    Infeasible,
}

impl LpResult {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Feasible region `{x : le rows, eq rows}` in `n` free variables.
#[derive(Debug, Clone, Default)]
pub struct Lp {
    pub n: usize,
    pub le: Vec<(Vec<Rat>, Rat)>,
    pub eq: Vec<(Vec<Rat>, Rat)>,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    obj: Vec<Rat>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !prow[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rat>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let d = &f * &prow[j];
                row[j] -= d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Sets the reduced-cost row for maximizing `c·z` under the current basis.
    fn set_objective(&mut self, c: &[Rat]) {
        let mut obj: Vec<Rat> = c.iter().map(|x| -x).collect();
        obj.push(Rat::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if !cb.is_zero() {
                for (j, o) in obj.iter_mut().enumerate() {
                    let d = cb * &self.rows[i][j];
                    *o += d;
                }
            }
        }
        self.obj = obj;
    }

    /// Primal simplex on columns below `limit`. Returns false if unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

impl Lp {
    pub fn new(n: usize) -> Self {
        Lp {
            n,
            le: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn maximize(&self, c: &[Rat]) -> LpResult {
        assert_eq!(c.len(), self.n);
        let n = self.n;
        let m_le = self.le.len();
        let rows_in: Vec<(&Vec<Rat>, &Rat, bool)> = self
            .le
            .iter()
            .map(|(a, b)| (a, b, true))
            .chain(self.eq.iter().map(|(a, b)| (a, b, false)))
            .collect();
        let m = rows_in.len();

        // Columns: x+ (n), x- (n), slacks (m_le), artificials (as needed).
        let base = 2 * n + m_le;
        let needs_art: Vec<bool> = rows_in
            .iter()
            .map(|(_, b, is_le)| !*is_le || b.is_negative())
            .collect();
        let n_art = needs_art.iter().filter(|&&x| x).count();
        let width = base + n_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut art = base;
        for (i, (a, b, is_le)) in rows_in.iter().enumerate() {
            let mut row = vec![Rat::zero(); width + 1];
            let flip = b.is_negative();
            let s = if flip { -Rat::one() } else { Rat::one() };
            for j in 0..n {
                if !a[j].is_zero() {
                    row[j] = &s * &a[j];
                    row[n + j] = -&row[j];
                }
            }
            if *is_le {
                row[2 * n + i] = s.clone();
            }
            row[width] = &s * *b;
            if needs_art[i] {
                row[art] = Rat::one();
                basis.push(art);
                art += 1;
            } else {
                basis.push(2 * n + i);
            }
            rows.push(row);
        }

        let mut t = Tableau {
            rows,
            obj: Vec::new(),
            basis,
            width,
        };

        if n_art > 0 {
            let mut c1 = vec![Rat::zero(); width];
            for x in c1[base..].iter_mut() {
                *x = -Rat::one();
            }
            t.set_objective(&c1);
            t.optimize(width);
            if !t.obj[width].is_zero() {
                return LpResult::Infeasible;
            }
            // Drive zero-valued artificials out of the basis.
            let mut i = 0;
            while i < t.rows.len() {
                if t.basis[i] >= base {
                    match (0..base).find(|&j| !t.rows[i][j].is_zero()) {
                        Some(j) => t.pivot(i, j),
                        None => {
                            t.rows.remove(i);
                            t.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
            for row in t.rows.iter_mut() {
                let rhs = row[width].clone();
                row.truncate(base);
                row.push(rhs);
            }
            t.width = base;
        }

        let mut c2 = vec![Rat::zero(); t.width];
        for j in 0..n {
            c2[j] = c[j].clone();
            c2[n + j] = -c[j].clone();
        }
        t.set_objective(&c2);
        if !t.optimize(t.width) {
            return LpResult::Unbounded;
        }
        let mut z = vec![Rat::zero(); t.width];
        for (i, &b) in t.basis.iter().enumerate() {
            z[b] = t.rhs(i).clone();
        }
        let x: Vec<Rat> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
        LpResult::Optimal {
            value: t.obj[t.width].clone(),
            x,
        }
    }

    pub fn minimize(&self, c: &[Rat]) -> LpResult {
        let neg: Vec<Rat> = c.iter().map(|x| -x).collect();
        match self.maximize(&neg) {
            LpResult::Optimal { value, x } => LpResult::Optimal { value: -value, x },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match self.maximize(&vec![Rat::zero(); self.n]) {
            LpResult::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }
}

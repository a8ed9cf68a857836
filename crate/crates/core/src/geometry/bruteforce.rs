//! Vertex enumeration by intersecting every `d`-subset of constraints.
//! Slow, simple and independent of the double description code.

use num_traits::{One, Zero};

use super::hrep::{HRep, VRep};
use super::linalg::solve_square;
use super::lp::{Lp, LpResult};
use super::GeometryError;
use crate::rational::Rat;

pub const MAX_DIM: usize = 8;

/// Whether the recession cone `{y : A y ≤ 0}` is trivial.
pub fn is_bounded(h: &HRep) -> bool {
    let d = h.dim();
    let mut lp = Lp::new(d);
    for (a, _) in h.le_rows() {
        lp.le.push((a, Rat::zero()));
    }
    for i in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[i] = Rat::one();
        lp.le.push((e.clone(), Rat::one()));
        e[i] = -Rat::one();
        lp.le.push((e, Rat::one()));
    }
    (0..d).all(|i| {
        let mut c = vec![Rat::zero(); d];
        c[i] = Rat::one();
        let up = lp.maximize(&c);
        c[i] = -Rat::one();
        let down = lp.maximize(&c);
        matches!(up, LpResult::Optimal { ref value, .. } if value.is_zero())
            && matches!(down, LpResult::Optimal { ref value, .. } if value.is_zero())
    })
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=n - need {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), f);
    }
}

pub fn vertices_bruteforce(h: &HRep) -> Result<VRep, GeometryError> {
    h.check_shape()?;
    let d = h.dim();
    if d > MAX_DIM {
        return Err(GeometryError::TooLarge(format!(
            "dimension {d} exceeds {MAX_DIM}"
        )));
    }
    if !is_bounded(h) {
        return Err(GeometryError::Unbounded);
    }
    let rows = h.le_rows();
    let mut found: Vec<Vec<Rat>> = Vec::new();
    if d == 0 {
        if h.contains(&[]) {
            found.push(Vec::new());
        }
    } else {
        subsets(rows.len(), d, &mut |idx| {
            let a: Vec<Vec<Rat>> = idx.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Rat> = idx.iter().map(|&i| rows[i].1.clone()).collect();
            if let Some(x) = solve_square(&a, &b) {
                if h.contains(&x) {
                    found.push(x);
                }
            }
        });
    }
    found.sort();
    found.dedup();
    if found.is_empty() {
        return Err(GeometryError::EmptyPolyhedron);
    }
    Ok(VRep {
        vertices: found,
        rays: Vec::new(),
    })
}

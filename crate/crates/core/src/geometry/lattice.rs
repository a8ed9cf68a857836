//! Lattice points, Ehrhart polynomials and integral closure.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::dd::vertices;
use super::hrep::HRep;
use super::linalg::{affine_dimension, solve_square};
use super::GeometryError;
use crate::rational::{ceil, floor, is_integral, primitive_integer_row, serde_rat_vec, Rat};

/// Largest bounding box scanned for lattice points.
pub const MAX_BOX_POINTS: u128 = 10_000_000;

type Point = Vec<i128>;

struct IntRow {
    a: Vec<i128>,
    b: i128,
    eq: bool,
}

fn to_i128(x: &BigInt) -> Result<i128, GeometryError> {
    x.to_i128().ok_or(GeometryError::Overflow)
}

fn integer_rows(h: &HRep) -> Result<Vec<IntRow>, GeometryError> {
    h.constraints
        .iter()
        .map(|c| {
            let mut r = c.coeffs.clone();
            r.push(c.rhs.clone());
            let p = primitive_integer_row(&r);
            let (b, a) = p.split_last().unwrap();
            Ok(IntRow {
                a: a.iter().map(to_i128).collect::<Result<_, _>>()?,
                b: to_i128(b)?,
                eq: c.is_eq(),
            })
        })
        .collect()
}

fn bounding_box(h: &HRep) -> Result<Option<Vec<(i128, i128)>>, GeometryError> {
    let v = match vertices(h) {
        Ok(v) => v,
        Err(GeometryError::EmptyPolyhedron) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !v.is_bounded() {
        return Err(GeometryError::UnsupportedUnbounded);
    }
    let mut bounds = Vec::with_capacity(h.dim());
    for i in 0..h.dim() {
        let lo = v.vertices.iter().map(|p| &p[i]).min().unwrap();
        let hi = v.vertices.iter().map(|p| &p[i]).max().unwrap();
        bounds.push((to_i128(&ceil(lo))?, to_i128(&floor(hi))?));
    }
    Ok(Some(bounds))
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

fn scan(h: &HRep) -> Result<Vec<Point>, GeometryError> {
    let d = h.dim();
    let Some(bounds) = bounding_box(h)? else {
        return Ok(Vec::new());
    };
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Ok(Vec::new());
    }
    let volume = bounds[..d.saturating_sub(1)]
        .iter()
        .try_fold(1u128, |acc, (lo, hi)| {
            acc.checked_mul((hi - lo + 1) as u128)
        })
        .unwrap_or(u128::MAX);
    if volume > MAX_BOX_POINTS {
        return Err(GeometryError::TooManyPoints(volume));
    }
    let rows = integer_rows(h)?;
    let mut out = Vec::new();
    if d == 0 {
        if rows.iter().all(|r| if r.eq { r.b == 0 } else { r.b >= 0 }) {
            out.push(Vec::new());
        }
        return Ok(out);
    }

    // Odometer over the first d−1 coordinates; the last is solved directly.
    let mut x: Point = bounds.iter().map(|b| b.0).collect();
    loop {
        let (mut lo, mut hi) = bounds[d - 1];
        for r in &rows {
            let partial: i128 = (0..d - 1).map(|i| r.a[i] * x[i]).sum();
            let rest = r.b - partial;
            let c = r.a[d - 1];
            if c == 0 {
                let ok = if r.eq { rest == 0 } else { rest >= 0 };
                if !ok {
                    lo = 1;
                    hi = 0;
                    break;
                }
                continue;
            }
            if r.eq {
                if rest % c != 0 {
                    lo = 1;
                    hi = 0;
                    break;
                }
                let v = rest / c;
                lo = lo.max(v);
                hi = hi.min(v);
            } else if c > 0 {
                hi = hi.min(floor_div(rest, c));
            } else {
                lo = lo.max(ceil_div(rest, c));
            }
        }
        for last in lo..=hi {
            let mut p = x.clone();
            p[d - 1] = last;
            out.push(p);
        }
        // Advance the odometer.
        let mut i = d - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < bounds[i].1 {
                x[i] += 1;
                break;
            }
            x[i] = bounds[i].0;
        }
    }
}

pub fn lattice_points(h: &HRep) -> Result<Vec<Vec<Rat>>, GeometryError> {
    Ok(scan(h)?
        .into_iter()
        .map(|p| {
            p.into_iter()
                .map(|x| Rat::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect())
}

pub fn count_lattice_points(h: &HRep) -> Result<u64, GeometryError> {
    Ok(scan(h)?.len() as u64)
}

pub fn count_dilate(h: &HRep, k: u32) -> Result<u64, GeometryError> {
    count_lattice_points(&h.dilate(&Rat::from_integer(BigInt::from(k))))
}

fn require_lattice_polytope(h: &HRep) -> Result<i64, GeometryError> {
    let v = vertices(h)?;
    if !v.is_bounded() {
        return Err(GeometryError::UnsupportedUnbounded);
    }
    if v.vertices.iter().flatten().any(|x| !is_integral(x)) {
        return Err(GeometryError::NonLatticeVertices);
    }
    let pts: Vec<&[Rat]> = v.vertices.iter().map(Vec::as_slice).collect();
    Ok(affine_dimension(&pts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EhrhartData {
    pub dim: i64,
    /// `(k, #(kQ ∩ Z^d))` for `k = 0, …, max_dilation`.
    pub counts: Vec<(u32, u64)>,
    /// Coefficients of the Ehrhart polynomial, constant term first.
    #[serde(with = "serde_rat_vec")]
    pub coefficients: Vec<Rat>,
}

impl EhrhartData {
    pub fn evaluate(&self, k: u32) -> Rat {
        let k = Rat::from_integer(BigInt::from(k));
        self.coefficients
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * &k + c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    /// Leading coefficient times `dim!`.
    pub fn normalized_volume(&self) -> Rat {
        let d = self.dim.max(0) as usize;
        let fact: BigInt = (1..=d).map(BigInt::from).product();
        self.coefficients.get(d).cloned().unwrap_or_else(Rat::zero) * Rat::from_integer(fact)
    }
}

pub fn ehrhart(h: &HRep, max_dilation: u32) -> Result<EhrhartData, GeometryError> {
    let dim = require_lattice_polytope(h)?;
    if (max_dilation as i64) < dim {
        return Err(GeometryError::InsufficientDilations { dim, max_dilation });
    }
    let counts: Vec<(u32, u64)> = (0..=max_dilation)
        .map(|k| count_dilate(h, k).map(|c| (k, c)))
        .collect::<Result<_, _>>()?;

    let n = counts.len();
    let vander: Vec<Vec<Rat>> = counts
        .iter()
        .map(|&(k, _)| {
            let k = Rat::from_integer(BigInt::from(k));
            let mut row = Vec::with_capacity(n);
            let mut p = Rat::one();
            for _ in 0..n {
                row.push(p.clone());
                p *= &k;
            }
            row
        })
        .collect();
    let rhs: Vec<Rat> = counts
        .iter()
        .map(|&(_, c)| Rat::from_integer(BigInt::from(c)))
        .collect();
    let mut coefficients = solve_square(&vander, &rhs).expect("Vandermonde system is nonsingular");
    let data = {
        let keep = (dim.max(0) as usize + 1).min(coefficients.len());
        if coefficients[keep..].iter().any(|c| !c.is_zero()) {
            return Err(GeometryError::Inconsistent(format!(
                "interpolated Ehrhart polynomial has degree above {dim}"
            )));
        }
        coefficients.truncate(keep);
        EhrhartData {
            dim,
            counts,
            coefficients,
        }
    };
    for &(k, c) in &data.counts {
        assert_eq!(data.evaluate(k), Rat::from_integer(BigInt::from(c)));
    }
    Ok(data)
}

/// Every lattice point of `kQ` is a sum of `k` lattice points of `Q`, for `k = 2, 3`.
pub fn is_integrally_closed(h: &HRep) -> Result<bool, GeometryError> {
    require_lattice_polytope(h)?;
    let q = scan(h)?;
    let add = |a: &Point, b: &Point| -> Point { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let sub = |a: &Point, b: &Point| -> Point { a.iter().zip(b).map(|(x, y)| x - y).collect() };

    let mut two = HashSet::new();
    for a in &q {
        for b in &q {
            two.insert(add(a, b));
        }
    }
    for z in scan(&h.dilate(&Rat::from_integer(BigInt::from(2))))? {
        if !two.contains(&z) {
            return Ok(false);
        }
    }
    for z in scan(&h.dilate(&Rat::from_integer(BigInt::from(3))))? {
        if !q.iter().any(|p| two.contains(&sub(&z, p))) {
            return Ok(false);
        }
    }
    Ok(true)
}

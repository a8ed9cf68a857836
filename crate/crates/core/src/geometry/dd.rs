//! Double description method over the integers.
//!
//! The polyhedron `{x : A x ≤ b}` is homogenized to the cone
//! `{(y0, y) : A y − b y0 ≤ 0, y0 ≥ 0}`. Extreme rays with `y0 > 0` are the
//! vertices, those with `y0 = 0` the recession rays. Rows are processed one
//! at a time; adjacency uses the combinatorial zero-set test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::bitset::BitSet;
use super::hrep::{HRep, VRep};
use super::GeometryError;
use crate::rational::{normalize_primitive, primitive_integer_row, Rat};

struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(s: &BigInt, u: &[BigInt], t: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    normalize_primitive(u.iter().zip(w).map(|(x, y)| s * x + t * y).collect())
}

/// Homogenized rows `r` with `r·(y0, y) ≤ 0`.
fn homogeneous_rows(h: &HRep) -> Vec<Vec<BigInt>> {
    let d = h.dim();
    let mut rows = Vec::new();
    let mut push = |coeffs: &[Rat], rhs: &Rat, sign: i32| {
        let mut r: Vec<Rat> = Vec::with_capacity(d + 1);
        r.push(if sign > 0 { -rhs.clone() } else { rhs.clone() });
        r.extend(
            coeffs
                .iter()
                .map(|c| if sign > 0 { c.clone() } else { -c.clone() }),
        );
        rows.push(primitive_integer_row(&r));
    };
    for c in h.equations() {
        push(&c.coeffs, &c.rhs, 1);
        push(&c.coeffs, &c.rhs, -1);
    }
    for c in h.inequalities() {
        push(&c.coeffs, &c.rhs, 1);
    }
    let mut y0 = vec![BigInt::zero(); d + 1];
    y0[0] = BigInt::from(-1);
    rows.push(y0);
    rows
}

/// Extreme rays and lineality basis of `{y : R y ≤ 0}`.
fn cone_generators(rows: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lineality: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !idot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = idot(a, &l);
            if al.is_positive() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = idot(a, other);
                if !ao.is_zero() {
                    *other = combine(&al, other, &-ao, &l);
                }
            }
            let neg_al = -&al;
            for r in rays.iter_mut() {
                let ar = idot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&neg_al, &r.v, &ar, &l);
                }
                r.zeros.insert(k);
            }
            // Lineality vectors vanish on every earlier row.
            rays.push(Ray {
                v: normalize_primitive(l),
                zeros: BitSet::from_indices(rows.len(), 0..k),
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                let adjacent =
                    (0..rays.len()).all(|i| i == p || i == q || !common.is_subset(&rays[i].zeros));
                if adjacent {
                    let mut zeros = common;
                    zeros.insert(k);
                    let v = combine(&vals[p], &rays[q].v, &-&vals[q], &rays[p].v);
                    fresh.push(Ray { v, zeros });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() - pos.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_zero() {
                r.zeros.insert(k);
                kept.push(r);
            } else if v.is_negative() {
                kept.push(r);
            }
        }
        kept.extend(fresh);
        rays = kept;
    }

    (rays.into_iter().map(|r| r.v).collect(), lineality)
}

/// Exact V-representation of a pointed polyhedron.
pub fn vertices(h: &HRep) -> Result<VRep, GeometryError> {
    h.check_shape()?;
    let rows = homogeneous_rows(h);
    let (rays, lineality) = cone_generators(&rows, h.dim() + 1);

    if !rays.iter().any(|r| r[0].is_positive()) {
        return Err(GeometryError::EmptyPolyhedron);
    }
    if !lineality.is_empty() {
        return Err(GeometryError::NotPointed);
    }

    let mut vertices = Vec::new();
    let mut recession = Vec::new();
    for r in rays {
        if r[0].is_zero() {
            let g = normalize_primitive(r[1..].to_vec());
            recession.push(g.into_iter().map(Rat::from_integer).collect());
        } else {
            let y0 = Rat::from_integer(r[0].clone());
            vertices.push(
                r[1..]
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()) / &y0)
                    .collect(),
            );
        }
    }
    vertices.sort();
    vertices.dedup();
    recession.sort();
    recession.dedup();
    Ok(VRep {
        vertices,
        rays: recession,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hrep::Constraint;
    use crate::rational::{int, rat};

    fn box_hrep(d: usize, lo: i64, hi: i64) -> HRep {
        let coords = (0..d).map(|i| format!("x{i}")).collect();
        let mut h = HRep::new(coords);
        for i in 0..d {
            let mut e = vec![int(0); d];
            e[i] = int(1);
            h.push(Constraint::le(e.clone(), int(hi), "hi"));
            h.push(Constraint::le(
                e.iter().map(|x| -x).collect(),
                int(-lo),
                "lo",
            ));
        }
        h
    }

    #[test]
    fn interval_and_cube() {
        let v = vertices(&box_hrep(1, 0, 1)).unwrap();
        assert_eq!(v.vertices, vec![vec![int(0)], vec![int(1)]]);
        assert!(v.rays.is_empty());
        assert_eq!(vertices(&box_hrep(3, -1, 2)).unwrap().vertices.len(), 8);
    }

    #[test]
    fn unbounded_quadrant() {
        let mut h = HRep::new(vec!["x".into(), "y".into()]);
        h.push(Constraint::le(vec![int(-1), int(0)], int(-1), "x>=1"));
        h.push(Constraint::le(vec![int(0), int(-1)], int(0), "y>=0"));
        let v = vertices(&h).unwrap();
        assert_eq!(v.vertices, vec![vec![int(1), int(0)]]);
        assert_eq!(v.rays, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn equations_and_fractions() {
        let mut h = HRep::new(vec!["x".into(), "y".into()]);
        h.push(Constraint::eq(vec![int(1), int(1)], int(1), "sum"));
        h.push(Constraint::le(vec![int(-3), int(0)], int(0), "x>=0"));
        h.push(Constraint::le(vec![int(2), int(0)], int(1), "x<=1/2"));
        let v = vertices(&h).unwrap();
        assert_eq!(
            v.vertices,
            vec![vec![int(0), int(1)], vec![rat(1, 2), rat(1, 2)]]
        );
    }

    #[test]
    fn empty_and_not_pointed() {
        let mut h = HRep::new(vec!["x".into()]);
        h.push(Constraint::le(vec![int(1)], int(0), "x<=0"));
        h.push(Constraint::le(vec![int(-1)], int(-1), "x>=1"));
        assert_eq!(vertices(&h), Err(GeometryError::EmptyPolyhedron));

        let mut line = HRep::new(vec!["x".into(), "y".into()]);
        line.push(Constraint::le(vec![int(1), int(0)], int(0), "x<=0"));
        assert_eq!(vertices(&line), Err(GeometryError::NotPointed));
    }

    #[test]
    fn zero_dimensional() {
        let v = vertices(&HRep::new(vec![])).unwrap();
        assert_eq!(v.vertices, vec![Vec::<Rat>::new()]);
    }
}

use num_traits::{One, Signed};

use super::hrep::{Constraint, HRep};
use super::linalg::{determinant, dot, inverse, mat_vec};
use super::GeometryError;
use crate::rational::{is_integral, Rat};

/// `x ↦ M x + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Vec<Vec<Rat>>,
    pub offset: Vec<Rat>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rat::one()
                        } else {
                            Rat::from_integer(0.into())
                        }
                    })
                    .collect()
            })
            .collect();
        AffineMap {
            matrix,
            offset: vec![Rat::from_integer(0.into()); n],
        }
    }

    pub fn translation(offset: Vec<Rat>) -> Self {
        let mut m = Self::identity(offset.len());
        m.offset = offset;
        m
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        mat_vec(&self.matrix, x)
            .into_iter()
            .zip(&self.offset)
            .map(|(y, c)| y + c)
            .collect()
    }

    /// Integer matrix with determinant ±1 and integer offset.
    pub fn is_unimodular(&self) -> bool {
        self.matrix.iter().flatten().all(is_integral)
            && self.offset.iter().all(is_integral)
            && determinant(&self.matrix).abs().is_one()
    }
}

/// Image of the polyhedron under an invertible affine map.
pub fn apply_affine(map: &AffineMap, h: &HRep) -> Result<HRep, GeometryError> {
    let n = h.dim();
    if map.matrix.len() != n || map.offset.len() != n || map.matrix.iter().any(|r| r.len() != n) {
        return Err(GeometryError::Malformed(format!(
            "affine map does not act on dimension {n}"
        )));
    }
    let inv = inverse(&map.matrix).ok_or(GeometryError::SingularMap)?;
    let shift = mat_vec(&inv, &map.offset);
    let mut out = HRep::new(h.coords.clone());
    for c in &h.constraints {
        // a·x ≤ b with x = M⁻¹(y − c) becomes (a M⁻¹)·y ≤ b + a M⁻¹ c.
        let coeffs: Vec<Rat> = (0..n)
            .map(|j| (0..n).map(|i| &c.coeffs[i] * &inv[i][j]).sum())
            .collect();
        let rhs = &c.rhs + dot(&c.coeffs, &shift);
        out.push(Constraint {
            kind: c.kind,
            coeffs,
            rhs,
            origin: c.origin.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lattice::count_lattice_points;
    use crate::rational::int;

    fn triangle() -> HRep {
        let mut h = HRep::new(vec!["x".into(), "y".into()]);
        h.push(Constraint::le(vec![int(-1), int(0)], int(0), "a"));
        h.push(Constraint::le(vec![int(1), int(-1)], int(0), "b"));
        h.push(Constraint::le(vec![int(0), int(1)], int(2), "c"));
        h
    }

    #[test]
    fn identity_is_noop() {
        let h = triangle();
        assert_eq!(apply_affine(&AffineMap::identity(2), &h).unwrap(), h);
        assert!(AffineMap::identity(2).is_unimodular());
    }

    #[test]
    fn translation_and_shear() {
        let h = triangle();
        let t = AffineMap::translation(vec![int(3), int(-1)]);
        let img = apply_affine(&t, &h).unwrap();
        assert_eq!(
            count_lattice_points(&img).unwrap(),
            count_lattice_points(&h).unwrap()
        );
        assert!(img.contains(&t.apply(&[int(1), int(2)])));

        let shear = AffineMap {
            matrix: vec![vec![int(1), int(1)], vec![int(0), int(1)]],
            offset: vec![int(0), int(0)],
        };
        assert!(shear.is_unimodular());
        let img = apply_affine(&shear, &h).unwrap();
        assert_eq!(count_lattice_points(&img).unwrap(), 6);
    }

    #[test]
    fn singular_rejected() {
        let m = AffineMap {
            matrix: vec![vec![int(1), int(2)], vec![int(2), int(4)]],
            offset: vec![int(0), int(0)],
        };
        assert_eq!(
            apply_affine(&m, &triangle()),
            Err(GeometryError::SingularMap)
        );
        let scale = AffineMap {
            matrix: vec![vec![int(2), int(0)], vec![int(0), int(1)]],
            offset: vec![int(0), int(0)],
        };
        assert!(!scale.is_unimodular());
    }
}

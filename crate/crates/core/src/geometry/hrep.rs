use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::dot;
use super::GeometryError;
use crate::rational::{serde_rat, serde_rat_vec, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    /// `a·x = c`
    Eq,
    /// `a·x ≤ c`
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraint {
    pub kind: ConstraintKind,
    #[serde(with = "serde_rat_vec")]
    pub coeffs: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub rhs: Rat,
    /// Which chain, marked element or other source produced the row.
    pub origin: String,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat, origin: impl Into<String>) -> Self {
        Constraint {
            kind: ConstraintKind::Le,
            coeffs,
            rhs,
            origin: origin.into(),
        }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat, origin: impl Into<String>) -> Self {
        Constraint {
            kind: ConstraintKind::Eq,
            coeffs,
            rhs,
            origin: origin.into(),
        }
    }

    pub fn is_eq(&self) -> bool {
        self.kind == ConstraintKind::Eq
    }

    pub fn slack(&self, x: &[Rat]) -> Rat {
        &self.rhs - dot(&self.coeffs, x)
    }

    pub fn is_tight(&self, x: &[Rat]) -> bool {
        self.slack(x).is_zero()
    }

    pub fn is_satisfied(&self, x: &[Rat]) -> bool {
        let s = self.slack(x);
        match self.kind {
            ConstraintKind::Eq => s.is_zero(),
            ConstraintKind::Le => !s.is_negative(),
        }
    }

    pub fn is_zero_row(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Halfspace description. Equations come before inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HRep {
    pub coords: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl HRep {
    pub fn new(coords: Vec<String>) -> Self {
        HRep {
            coords,
            constraints: Vec::new(),
        }
    }

    pub fn with_constraints(coords: Vec<String>, constraints: Vec<Constraint>) -> Self {
        let mut h = HRep::new(coords);
        for c in constraints {
            h.push(c);
        }
        h
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Adds a constraint, keeping equations ahead of inequalities.
    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.coeffs.len(), self.dim(), "constraint width mismatch");
        if c.is_eq() {
            let at = self
                .constraints
                .iter()
                .position(|x| !x.is_eq())
                .unwrap_or(self.constraints.len());
            self.constraints.insert(at, c);
        } else {
            self.constraints.push(c);
        }
    }

    pub fn equations(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| c.is_eq())
    }

    pub fn inequalities(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| !c.is_eq())
    }

    pub fn inequality_count(&self) -> usize {
        self.inequalities().count()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// Rows `a·x ≤ c` with each equation split into two opposite rows.
    pub fn le_rows(&self) -> Vec<(Vec<Rat>, Rat)> {
        let mut rows = Vec::new();
        for c in &self.constraints {
            rows.push((c.coeffs.clone(), c.rhs.clone()));
            if c.is_eq() {
                rows.push((c.coeffs.iter().map(|x| -x).collect(), -c.rhs.clone()));
            }
        }
        rows
    }

    /// The `k`-th dilate: every right-hand side multiplied by `k`.
    pub fn dilate(&self, k: &Rat) -> HRep {
        let mut h = self.clone();
        for c in &mut h.constraints {
            c.rhs = &c.rhs * k;
        }
        h
    }

    /// Fixes the given coordinates and drops them from the ambient space.
    /// Rows that lose all their support are checked and discarded.
    pub fn substitute(&self, fixed: &BTreeMap<usize, Rat>) -> Result<HRep, GeometryError> {
        let keep: Vec<usize> = (0..self.dim()).filter(|i| !fixed.contains_key(i)).collect();
        let mut out = HRep::new(keep.iter().map(|&i| self.coords[i].clone()).collect());
        for c in &self.constraints {
            let mut rhs = c.rhs.clone();
            for (&i, v) in fixed {
                rhs -= &c.coeffs[i] * v;
            }
            let coeffs: Vec<Rat> = keep.iter().map(|&i| c.coeffs[i].clone()).collect();
            let row = Constraint {
                kind: c.kind,
                coeffs,
                rhs,
                origin: c.origin.clone(),
            };
            if row.is_zero_row() {
                if !row.is_satisfied(&vec![Rat::zero(); out.dim()]) {
                    return Err(GeometryError::EmptyPolyhedron);
                }
            } else {
                out.push(row);
            }
        }
        Ok(out)
    }

    pub fn check_shape(&self) -> Result<(), GeometryError> {
        for c in &self.constraints {
            if c.coeffs.len() != self.dim() {
                return Err(GeometryError::Malformed(format!(
                    "constraint {:?} has {} coefficients, expected {}",
                    c.origin,
                    c.coeffs.len(),
                    self.dim()
                )));
            }
        }
        Ok(())
    }
}

/// Vertex/ray description: `conv(vertices) + cone(rays)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VRep {
    #[serde(with = "serde_points")]
    pub vertices: Vec<Vec<Rat>>,
    #[serde(with = "serde_points")]
    pub rays: Vec<Vec<Rat>>,
}

impl VRep {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn sorted(mut self) -> Self {
        self.vertices.sort();
        self.rays.sort();
        self
    }
}

pub mod serde_points {
    use crate::rational::{format_rat, parse_rat, Rat};
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v
            .iter()
            .map(|p| p.iter().map(format_rat).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|p| {
                p.iter()
                    .map(|s| parse_rat(s).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

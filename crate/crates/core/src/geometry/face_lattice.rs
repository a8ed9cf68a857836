use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::bitset::BitSet;
use super::hrep::{HRep, VRep};
use super::linalg::affine_dimension;
use super::GeometryError;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: BitSet,
    /// Inequalities (indices into the H-rep constraint list) tight on the face.
    pub tight: BitSet,
    pub dim: i64,
}

/// Faces of a polytope ordered by dimension, then by vertex set.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub vertices: Vec<Vec<Rat>>,
    pub faces: Vec<Face>,
    /// Vertex sets on which each constraint is tight.
    constraint_sets: Vec<BitSet>,
    rows: Vec<(Vec<Rat>, Rat)>,
    index: HashMap<BitSet, usize>,
    dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSummary {
    pub dim: i64,
    pub vertices: Vec<usize>,
}

impl FaceLattice {
    pub fn build(h: &HRep, v: &VRep) -> Result<FaceLattice, GeometryError> {
        if !v.is_bounded() {
            return Err(GeometryError::UnsupportedUnbounded);
        }
        let nv = v.vertices.len();
        let rows: Vec<(Vec<Rat>, Rat)> = h
            .constraints
            .iter()
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .collect();
        let constraint_sets: Vec<BitSet> = h
            .constraints
            .iter()
            .map(|c| BitSet::from_indices(nv, (0..nv).filter(|&i| c.is_tight(&v.vertices[i]))))
            .collect();

        let full = BitSet::full(nv);
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(full.clone());
        queue.push_back(full);
        while let Some(f) = queue.pop_front() {
            for s in &constraint_sets {
                let g = f.intersection(s);
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        seen.insert(BitSet::new(nv));

        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|vs| {
                let pts: Vec<&[Rat]> = vs.iter().map(|i| v.vertices[i].as_slice()).collect();
                let dim = affine_dimension(&pts);
                let tight = BitSet::from_indices(
                    rows.len(),
                    (0..rows.len()).filter(|&c| vs.is_subset(&constraint_sets[c])),
                );
                Face {
                    vertices: vs,
                    tight,
                    dim,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let dim = faces.last().map_or(-1, |f| f.dim);
        Ok(FaceLattice {
            vertices: v.vertices.clone(),
            faces,
            constraint_sets,
            rows,
            index,
            dim,
        })
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn empty_face(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn face_index(&self, vertices: &BitSet) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// `f_0, …, f_{d−1}`; a single point has f-vector `(1)`.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.dim <= 0 {
            return vec![1];
        }
        let mut f = vec![0; self.dim as usize];
        for face in &self.faces {
            if face.dim >= 0 && face.dim < self.dim {
                f[face.dim as usize] += 1;
            }
        }
        f
    }

    /// Euler relation for the boundary of a polytope.
    pub fn satisfies_euler(&self) -> bool {
        if self.dim <= 0 {
            return true;
        }
        let alt: i64 = self
            .f_vector()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        alt == 1 - if self.dim % 2 == 0 { 1 } else { -1 }
    }

    pub fn is_subface(&self, a: usize, b: usize) -> bool {
        self.faces[a].vertices.is_subset(&self.faces[b].vertices)
    }

    /// Smallest face containing `x`, which must lie in the polytope.
    pub fn minimal_face_containing(&self, x: &[Rat]) -> Option<usize> {
        let mut vs = BitSet::full(self.vertices.len());
        for (c, (a, b)) in self.rows.iter().enumerate() {
            if super::linalg::dot(a, x) == *b {
                vs = vs.intersection(&self.constraint_sets[c]);
            }
        }
        self.face_index(&vs)
    }

    /// Facets as vertex sets, for incidence comparisons.
    pub fn facets(&self) -> Vec<&BitSet> {
        self.faces
            .iter()
            .filter(|f| f.dim == self.dim - 1)
            .map(|f| &f.vertices)
            .collect()
    }

    pub fn summaries(&self) -> Vec<FaceSummary> {
        self.faces
            .iter()
            .map(|f| FaceSummary {
                dim: f.dim,
                vertices: f.vertices.iter().collect(),
            })
            .collect()
    }
}

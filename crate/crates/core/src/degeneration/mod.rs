//! Degenerations between members of the family and the induced maps of
//! face lattices.

mod iso;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::family::{
    facet_count_delta, is_tame, projected_chain_order, projected_general, projected_theta,
    CoordKind, FacetDelta, FamilyError, Parameter, Partition,
};
use crate::geometry::{FaceLattice, GeometryError, Polytope};
use crate::poset::MarkedPoset;
use crate::rational::{int, Rat};
use crate::tropical::barycenter;

pub use iso::incidence_isomorphic;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DegenerationError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("target parameter is not a degeneration of the source")]
    NotADegeneration,
    #[error("image of face {0} lies outside the target polytope")]
    OutsideTarget(usize),
    #[error("{0}")]
    Precondition(String),
}

/// Source `u` and target `u′`, where `u′` agrees with `u` wherever `u` is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationPair {
    pub source: Parameter,
    pub target: Parameter,
}

impl DegenerationPair {
    pub fn new(
        poset: &MarkedPoset,
        source: Parameter,
        target: Parameter,
    ) -> Result<Self, DegenerationError> {
        source.validate(poset).map_err(DegenerationError::Family)?;
        target.validate(poset).map_err(DegenerationError::Family)?;
        if !source.admits_degeneration_to(&target) {
            return Err(DegenerationError::NotADegeneration);
        }
        Ok(DegenerationPair { source, target })
    }
}

/// A map from the faces of one polytope to the faces of another, indexed
/// by position in the respective face lattices.
#[derive(Debug, Clone)]
pub struct FaceMap {
    pub source: FaceLattice,
    pub target: FaceLattice,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceMapCheck {
    pub surjective: bool,
    pub order_preserving: bool,
    pub dimension_nondecreasing: bool,
    pub same_dimension_preimages: bool,
}

impl FaceMapCheck {
    pub fn passed(&self) -> bool {
        self.surjective
            && self.order_preserving
            && self.dimension_nondecreasing
            && self.same_dimension_preimages
    }
}

impl FaceMap {
    /// Sends each face to the minimal target face containing the image of
    /// its vertex barycenter. The empty face goes to the empty face.
    pub fn from_point_map(
        source: FaceLattice,
        target: FaceLattice,
        f: impl Fn(&[Rat]) -> Vec<Rat> + Sync,
    ) -> Result<FaceMap, DegenerationError> {
        let map: Result<Vec<usize>, DegenerationError> = (0..source.len())
            .into_par_iter()
            .map(|i| {
                let face = &source.faces[i];
                if face.vertices.is_empty() {
                    return Ok(target.empty_face());
                }
                let pts: Vec<Vec<Rat>> = face
                    .vertices
                    .iter()
                    .map(|v| source.vertices[v].clone())
                    .collect();
                target
                    .minimal_face_containing(&f(&barycenter(&pts)))
                    .ok_or(DegenerationError::OutsideTarget(i))
            })
            .collect();
        Ok(FaceMap {
            map: map?,
            source,
            target,
        })
    }

    pub fn image(&self, face: usize) -> usize {
        self.map[face]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &j in &self.map {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_order_preserving(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                !self.source.is_subface(a, b) || self.target.is_subface(self.map[a], self.map[b])
            })
        })
    }

    pub fn is_dimension_nondecreasing(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(i, &j)| self.target.faces[j].dim >= self.source.faces[i].dim)
    }

    /// Every target face has a preimage of the same dimension.
    pub fn has_same_dimension_preimages(&self) -> bool {
        (0..self.target.len()).all(|j| {
            self.map
                .iter()
                .enumerate()
                .any(|(i, &k)| k == j && self.source.faces[i].dim == self.target.faces[j].dim)
        })
    }

    pub fn check(&self) -> FaceMapCheck {
        FaceMapCheck {
            surjective: self.is_surjective(),
            order_preserving: self.is_order_preserving(),
            dimension_nondecreasing: self.is_dimension_nondecreasing(),
            same_dimension_preimages: self.has_same_dimension_preimages(),
        }
    }

    /// `(source index, target index)` pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.map.iter().copied().enumerate().collect()
    }
}

fn polytope(poset: &MarkedPoset, t: &Parameter) -> Result<Polytope, DegenerationError> {
    let h = projected_general(poset, t)?;
    Polytope::new(h).map_err(|e| match e {
        GeometryError::Unbounded => GeometryError::UnsupportedUnbounded.into(),
        e => e.into(),
    })
}

/// The face map induced by `θ_{u,u′}`.
pub fn degeneration_map(
    poset: &MarkedPoset,
    pair: &DegenerationPair,
) -> Result<FaceMap, DegenerationError> {
    let src = polytope(poset, &pair.source)?;
    let dst = polytope(poset, &pair.target)?;
    let (u, u2) = (&pair.source, &pair.target);
    FaceMap::from_point_map(src.lattice, dst.lattice, |y| {
        projected_theta(poset, u, u2, y)
    })
}

/// The face map of the pentagon deformation from `Q_0` to `Q_t`.
pub fn pentagon_face_map(t: &Rat) -> Result<FaceMap, DegenerationError> {
    use crate::fixtures::{pentagon_hrep, pentagon_rho};
    let src = Polytope::new(pentagon_hrep(&Rat::zero()))?;
    let dst = Polytope::new(pentagon_hrep(t))?;
    FaceMap::from_point_map(src.lattice, dst.lattice, |x| pentagon_rho(t, x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub dominated: bool,
}

/// Whether `f_i(target) ≤ f_i(source)` for every `i`; absent entries count as 0.
pub fn fvector_dominated(target: &[usize], source: &[usize]) -> bool {
    (0..target.len().max(source.len()))
        .all(|i| target.get(i).copied().unwrap_or(0) <= source.get(i).copied().unwrap_or(0))
}

pub fn check_fvector_domination(
    poset: &MarkedPoset,
    pair: &DegenerationPair,
) -> Result<DominationReport, DegenerationError> {
    let source = polytope(poset, &pair.source)?.f_vector();
    let target = polytope(poset, &pair.target)?.f_vector();
    let dominated = fvector_dominated(&target, &source);
    Ok(DominationReport {
        source,
        target,
        dominated,
    })
}

/// `dg_{u,u″} = dg_{u′,u″} ∘ dg_{u,u′}` on every face of `O_u`.
pub fn composition_law(
    poset: &MarkedPoset,
    u: &Parameter,
    u1: &Parameter,
    u2: &Parameter,
) -> Result<bool, DegenerationError> {
    let first = degeneration_map(poset, &DegenerationPair::new(poset, u.clone(), u1.clone())?)?;
    let second = degeneration_map(
        poset,
        &DegenerationPair::new(poset, u1.clone(), u2.clone())?,
    )?;
    let direct = degeneration_map(poset, &DegenerationPair::new(poset, u.clone(), u2.clone())?)?;
    Ok((0..direct.map.len()).all(|f| direct.map[f] == second.map[first.map[f]]))
}

/// A face of the parameter cube: the listed coordinates are fixed to 0 or
/// 1, the others range over the open interval.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CubeFace {
    #[serde(with = "crate::rational::serde_rat_map")]
    pub fixed: BTreeMap<String, Rat>,
}

impl CubeFace {
    pub fn interior() -> Self {
        CubeFace::default()
    }

    pub fn vertex(t: &Parameter) -> Self {
        CubeFace { fixed: t.t.clone() }
    }

    pub fn validate(&self, poset: &MarkedPoset) -> Result<(), DegenerationError> {
        for (k, v) in &self.fixed {
            let ok = poset.index_of(k).is_some_and(|i| !poset.is_marked(i));
            if !ok {
                return Err(DegenerationError::Precondition(format!(
                    "{k} is not an unmarked element"
                )));
            }
            if !v.is_zero() && !v.is_one() {
                return Err(DegenerationError::Precondition(format!(
                    "fixed coordinate {k} must be 0 or 1"
                )));
            }
        }
        Ok(())
    }

    /// Deterministic parameters in the relative interior of the face.
    pub fn samples(&self, poset: &MarkedPoset, count: usize) -> Vec<Parameter> {
        let free: Vec<String> = poset
            .names(&poset.unmarked())
            .into_iter()
            .filter(|n| !self.fixed.contains_key(n))
            .collect();
        let count = if free.is_empty() { 1 } else { count };
        (0..count)
            .map(|s| {
                let mut t = self.fixed.clone();
                for (j, name) in free.iter().enumerate() {
                    let k = ((j + 1) * (s + 2) + s) % 12 + 1;
                    t.insert(name.clone(), int(k as i64) / int(13));
                }
                Parameter { t }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSample {
    pub parameter: Parameter,
    pub f_vector: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub face: CubeFace,
    pub samples: Vec<SweepSample>,
    pub constant: bool,
}

/// Samples the relative interior of a cube face and checks that all
/// sampled polytopes are combinatorially isomorphic.
pub fn combinatorial_type_sweep(
    poset: &MarkedPoset,
    face: &CubeFace,
    count: usize,
) -> Result<SweepReport, DegenerationError> {
    face.validate(poset)?;
    if count < 3 {
        return Err(DegenerationError::Precondition(
            "at least 3 samples are required".into(),
        ));
    }
    let params = face.samples(poset, count);
    let polys: Result<Vec<Polytope>, DegenerationError> =
        params.par_iter().map(|t| polytope(poset, t)).collect();
    let polys = polys?;
    let constant = polys
        .windows(2)
        .all(|w| incidence_isomorphic(&w[0].lattice, &w[1].lattice));
    let samples = params
        .into_iter()
        .zip(&polys)
        .map(|(parameter, p)| SweepSample {
            parameter,
            f_vector: p.f_vector(),
        })
        .collect();
    Ok(SweepReport {
        face: face.clone(),
        samples,
        constant,
    })
}

/// The cube face whose relative interior contains `t`.
pub fn cube_face_of(t: &Parameter) -> CubeFace {
    CubeFace {
        fixed: t
            .t
            .iter()
            .filter(|(k, _)| t.kind(k) != CoordKind::Interior)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HibiLiReport {
    pub smaller: Partition,
    pub larger: Partition,
    pub f_smaller: Vec<usize>,
    pub f_larger: Vec<usize>,
    /// `f_i(O_{C,O}) ≤ f_i(O_{C′,O′})` for all `i`.
    pub dominated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_delta: Option<FacetDelta>,
}

/// Compares the f-vectors of two chain-order polytopes with `C ⊆ C′`.
pub fn hibi_li_check(
    poset: &MarkedPoset,
    a: &Partition,
    b: &Partition,
) -> Result<HibiLiReport, DegenerationError> {
    a.validate(poset)?;
    b.validate(poset)?;
    if !a.c.is_subset(&b.c) {
        return Err(DegenerationError::Precondition(
            "first chain set must be contained in the second".into(),
        ));
    }
    let fa = Polytope::new(projected_chain_order(poset, a)?)?.f_vector();
    let fb = Polytope::new(projected_chain_order(poset, b)?)?.f_vector();
    let added: Vec<&String> = b.c.difference(&a.c).collect();
    let facet_delta = match added.as_slice() {
        [q] if is_tame(poset).unwrap_or(false) => Some(facet_count_delta(poset, a, q)?),
        _ => None,
    };
    Ok(HibiLiReport {
        smaller: a.clone(),
        larger: b.clone(),
        dominated: fvector_dominated(&fa, &fb),
        f_smaller: fa,
        f_larger: fb,
        facet_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain_poset, example_poset};
    use crate::rational::rat;

    fn half_r(p: &MarkedPoset) -> Parameter {
        let mut t = Parameter::generic(p);
        t.t.insert("r".into(), rat(1, 2));
        t
    }

    #[test]
    fn identity_map() {
        let p = example_poset();
        let t = half_r(&p);
        let m = degeneration_map(&p, &DegenerationPair::new(&p, t.clone(), t).unwrap()).unwrap();
        assert!(m.map.iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn rejects_non_degeneration() {
        let p = example_poset();
        assert_eq!(
            DegenerationPair::new(&p, Parameter::zero(&p), Parameter::one(&p)),
            Err(DegenerationError::NotADegeneration)
        );
    }

    #[test]
    fn example_to_every_vertex() {
        let p = example_poset();
        let t = half_r(&p);
        for u in Parameter::hypercube_vertices(&p) {
            let pair = DegenerationPair::new(&p, t.clone(), u).unwrap();
            let m = degeneration_map(&p, &pair).unwrap();
            assert!(m.check().passed(), "{:?}", m.check());
            assert_eq!(m.source.f_vector()[0], 14);
            assert_eq!(m.target.f_vector()[0], 11);
            assert!(check_fvector_domination(&p, &pair).unwrap().dominated);
        }
    }

    #[test]
    fn witness_choice_does_not_matter() {
        let p = example_poset();
        let t = half_r(&p);
        let u = Parameter::one(&p);
        let m = degeneration_map(
            &p,
            &DegenerationPair::new(&p, t.clone(), u.clone()).unwrap(),
        )
        .unwrap();
        for (i, face) in m.source.faces.iter().enumerate().skip(1) {
            let pts: Vec<&Vec<Rat>> = face
                .vertices
                .iter()
                .map(|v| &m.source.vertices[v])
                .collect();
            // A positive combination with unequal weights.
            let total: i64 = (1..=pts.len() as i64).sum();
            let x: Vec<Rat> = (0..pts[0].len())
                .map(|c| {
                    pts.iter()
                        .enumerate()
                        .map(|(k, v)| &v[c] * int(k as i64 + 1))
                        .sum::<Rat>()
                        / int(total)
                })
                .collect();
            let img = projected_theta(&p, &t, &u, &x);
            assert_eq!(m.target.minimal_face_containing(&img), Some(m.map[i]));
        }
    }

    #[test]
    fn composition_on_example() {
        let p = example_poset();
        let t = half_r(&p);
        let mut mid = t.clone();
        mid.t.insert("p".into(), Rat::one());
        let mut end = mid.clone();
        end.t.insert("q".into(), Rat::zero());
        end.t.insert("r".into(), Rat::one());
        assert!(composition_law(&p, &t, &mid, &end).unwrap());
        assert!(composition_law(&p, &t, &t, &t).unwrap());
    }

    #[test]
    fn pentagon_collapses_top_edges() {
        let m = pentagon_face_map(&Rat::one()).unwrap();
        assert_eq!(m.source.f_vector(), vec![5, 5]);
        assert_eq!(m.target.f_vector(), vec![4, 4]);
        assert!(m.check().passed());
        let apex = m
            .source
            .vertices
            .iter()
            .position(|v| *v == vec![int(1), int(2)])
            .unwrap();
        let top: Vec<usize> = (0..m.source.len())
            .filter(|&i| m.source.faces[i].dim == 1 && m.source.faces[i].vertices.contains(apex))
            .collect();
        assert_eq!(top.len(), 2);
        let image = m.map[top[0]];
        assert_eq!(m.map[top[1]], image);
        let collapsed: Vec<usize> = (0..m.source.len())
            .filter(|&i| m.source.faces[i].dim == 1 && m.map[i] == image)
            .collect();
        assert_eq!(collapsed, top);
        // The apex itself moves into the relative interior of that edge.
        let apex_face = m
            .source
            .face_index(&crate::geometry::bitset::BitSet::from_indices(5, [apex]))
            .unwrap();
        assert_eq!(m.map[apex_face], image);
        let half = pentagon_face_map(&rat(1, 2)).unwrap();
        assert!(half
            .map
            .iter()
            .enumerate()
            .all(|(i, &j)| half.source.faces[i].dim == half.target.faces[j].dim));
    }

    #[test]
    fn sweep_example_interior() {
        let p = example_poset();
        let r = combinatorial_type_sweep(&p, &CubeFace::interior(), 3).unwrap();
        assert!(r.constant);
        assert!(r.samples.iter().all(|s| s.f_vector[0] == 14));
        let v = combinatorial_type_sweep(&p, &CubeFace::vertex(&Parameter::one(&p)), 3).unwrap();
        assert_eq!(v.samples.len(), 1);
        assert!(v.constant);
    }

    #[test]
    fn irrelevant_coordinate_does_not_change_type() {
        // In a chain every unmarked element is irrelevant.
        let p = chain_poset(0, 3);
        let lattices: Vec<FaceLattice> = [Rat::zero(), rat(1, 2), Rat::one()]
            .into_iter()
            .map(|v| polytope(&p, &Parameter::constant(&p, v)).unwrap().lattice)
            .collect();
        assert!(incidence_isomorphic(&lattices[0], &lattices[1]));
        assert!(incidence_isomorphic(&lattices[1], &lattices[2]));
    }

    #[test]
    fn hibi_li_on_example() {
        let p = example_poset();
        let all = Partition::new(&p, &["p", "q", "r"]).unwrap();
        let none = Partition::new(&p, &[] as &[&str]).unwrap();
        let r = hibi_li_check(&p, &none, &all).unwrap();
        assert_eq!(r.f_smaller[0], 11);
        assert!(r.facet_delta.is_none());
        let a = Partition::new(&p, &["p", "q"]).unwrap();
        let d = hibi_li_check(&p, &a, &all).unwrap();
        assert!(d.facet_delta.unwrap().agrees());
        assert!(hibi_li_check(&p, &all, &none).is_err());
    }
}

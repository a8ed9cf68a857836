//! Members `O_t(P, λ)` of the universal family and maps between them.

mod redundancy;
mod transfer;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{Constraint, GeometryError, HRep};
use crate::poset::{MarkedPoset, PosetError};
use crate::rational::{format_rat, serde_rat_map, Rat};

pub use redundancy::{
    eliminate_redundancy, facet_count, facet_count_delta, is_tame, FacetDelta, MAX_TAME_UNMARKED,
};
pub use transfer::{
    lift, maximizing_relation, project_point, projected_phi, projected_psi, projected_theta,
    tightness, tightness_by_substitution, transfer_phi, transfer_psi, transfer_psi_closed,
    transfer_theta, MaximizingRelation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parameter is not in the open cube")]
    NonInteriorParameter,
    #[error("too many unmarked elements: {0} (limit {1})")]
    TooLarge(usize, usize),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordKind {
    Zero,
    One,
    Interior,
}

/// A point `t ∈ [0,1]^P̃`, keyed by unmarked element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameter {
    #[serde(with = "serde_rat_map")]
    pub t: BTreeMap<String, Rat>,
}

impl Parameter {
    pub fn new(poset: &MarkedPoset, t: BTreeMap<String, Rat>) -> Result<Parameter, FamilyError> {
        let p = Parameter { t };
        p.validate(poset)?;
        Ok(p)
    }

    pub fn validate(&self, poset: &MarkedPoset) -> Result<(), FamilyError> {
        let expected: BTreeSet<&str> = poset
            .unmarked()
            .into_iter()
            .map(|i| poset.name(i))
            .collect();
        let got: BTreeSet<&str> = self.t.keys().map(String::as_str).collect();
        if expected != got {
            let missing: Vec<_> = expected.difference(&got).collect();
            let extra: Vec<_> = got.difference(&expected).collect();
            return Err(FamilyError::InvalidParameter(format!(
                "keys must be the unmarked elements (missing {missing:?}, unexpected {extra:?})"
            )));
        }
        for (k, v) in &self.t {
            if v.is_negative() || *v > Rat::one() {
                return Err(FamilyError::InvalidParameter(format!(
                    "t_{k} = {} outside [0,1]",
                    format_rat(v)
                )));
            }
        }
        Ok(())
    }

    pub fn constant(poset: &MarkedPoset, value: Rat) -> Parameter {
        Parameter {
            t: poset
                .unmarked()
                .into_iter()
                .map(|i| (poset.name(i).to_string(), value.clone()))
                .collect(),
        }
    }

    pub fn zero(poset: &MarkedPoset) -> Parameter {
        Self::constant(poset, Rat::zero())
    }

    pub fn one(poset: &MarkedPoset) -> Parameter {
        Self::constant(poset, Rat::one())
    }

    /// The interior point with coordinates `i/(n+1)`, `i = 1, …, n`, assigned
    /// to the unmarked elements in element order.
    pub fn generic(poset: &MarkedPoset) -> Parameter {
        let un = poset.unmarked();
        let n = un.len() as i64;
        Parameter {
            t: un
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    (
                        poset.name(p).to_string(),
                        Rat::new((i as i64 + 1).into(), (n + 1).into()),
                    )
                })
                .collect(),
        }
    }

    /// Vector indexed by element, with `t_a = 0` for marked `a`.
    pub fn values(&self, poset: &MarkedPoset) -> Vec<Rat> {
        (0..poset.len())
            .map(|p| self.t.get(poset.name(p)).cloned().unwrap_or_else(Rat::zero))
            .collect()
    }

    pub fn get(&self, name: &str) -> Rat {
        self.t.get(name).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn kind(&self, name: &str) -> CoordKind {
        let v = self.get(name);
        if v.is_zero() {
            CoordKind::Zero
        } else if v.is_one() {
            CoordKind::One
        } else {
            CoordKind::Interior
        }
    }

    pub fn is_interior(&self) -> bool {
        self.t.keys().all(|k| self.kind(k) == CoordKind::Interior)
    }

    pub fn is_vertex(&self) -> bool {
        self.t.keys().all(|k| self.kind(k) != CoordKind::Interior)
    }

    /// `u'` is a degeneration of `self` if it agrees on every coordinate
    /// where `self` is 0 or 1.
    pub fn admits_degeneration_to(&self, other: &Parameter) -> bool {
        self.t
            .keys()
            .all(|k| self.kind(k) == CoordKind::Interior || self.get(k) == other.get(k))
    }

    /// The partition `C = {t_p = 1}`, `O = {t_p = 0}` of a hypercube vertex.
    pub fn partition(&self) -> Option<Partition> {
        if !self.is_vertex() {
            return None;
        }
        let mut part = Partition::default();
        for k in self.t.keys() {
            if self.kind(k) == CoordKind::One {
                part.c.insert(k.clone());
            } else {
                part.o.insert(k.clone());
            }
        }
        Some(part)
    }

    /// Every hypercube vertex, ordered by the bit mask over the unmarked
    /// elements in element order.
    pub fn hypercube_vertices(poset: &MarkedPoset) -> Vec<Parameter> {
        Partition::all(poset)
            .iter()
            .map(Partition::parameter)
            .collect()
    }
}

/// A partition `P̃ = C ⊔ O` of the unmarked elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Partition {
    #[serde(rename = "C")]
    pub c: BTreeSet<String>,
    #[serde(rename = "O")]
    pub o: BTreeSet<String>,
}

impl Partition {
    pub fn new<S: AsRef<str>>(poset: &MarkedPoset, chain: &[S]) -> Result<Partition, FamilyError> {
        let c: BTreeSet<String> = chain.iter().map(|s| s.as_ref().to_string()).collect();
        let o = poset
            .unmarked()
            .into_iter()
            .map(|i| poset.name(i).to_string())
            .filter(|n| !c.contains(n))
            .collect();
        let part = Partition { c, o };
        part.validate(poset)?;
        Ok(part)
    }

    pub fn validate(&self, poset: &MarkedPoset) -> Result<(), FamilyError> {
        if let Some(x) = self.c.intersection(&self.o).next() {
            return Err(FamilyError::InvalidPartition(format!(
                "{x} is in both C and O"
            )));
        }
        let all: BTreeSet<String> = self.c.union(&self.o).cloned().collect();
        let expected: BTreeSet<String> = poset
            .unmarked()
            .into_iter()
            .map(|i| poset.name(i).to_string())
            .collect();
        if all != expected {
            return Err(FamilyError::InvalidPartition(
                "C and O must together be exactly the unmarked elements".into(),
            ));
        }
        Ok(())
    }

    pub fn all(poset: &MarkedPoset) -> Vec<Partition> {
        let un = poset.unmarked();
        (0u64..1 << un.len())
            .map(|mask| {
                let mut part = Partition::default();
                for (i, &p) in un.iter().enumerate() {
                    let name = poset.name(p).to_string();
                    if mask >> i & 1 == 1 {
                        part.c.insert(name);
                    } else {
                        part.o.insert(name);
                    }
                }
                part
            })
            .collect()
    }

    pub fn parameter(&self) -> Parameter {
        let mut t = BTreeMap::new();
        for k in &self.c {
            t.insert(k.clone(), Rat::one());
        }
        for k in &self.o {
            t.insert(k.clone(), Rat::zero());
        }
        Parameter { t }
    }

    pub fn chain_indices(&self, poset: &MarkedPoset) -> BTreeSet<usize> {
        self.c.iter().map(|n| poset.expect_index(n)).collect()
    }

    pub fn order_indices(&self, poset: &MarkedPoset) -> BTreeSet<usize> {
        self.o.iter().map(|n| poset.expect_index(n)).collect()
    }

    /// `C ⊔ {q}`, `O ∖ {q}`.
    pub fn move_to_chain(&self, q: &str) -> Partition {
        let mut p = self.clone();
        p.o.remove(q);
        p.c.insert(q.to_string());
        p
    }
}

fn full_coords(poset: &MarkedPoset) -> Vec<String> {
    poset.elements().to_vec()
}

fn marking_equations(poset: &MarkedPoset, h: &mut HRep) {
    for a in poset.marked() {
        let mut e = vec![Rat::zero(); poset.len()];
        e[a] = Rat::one();
        h.push(Constraint::eq(
            e,
            poset.marking(a).unwrap().clone(),
            format!("marked:{}", poset.name(a)),
        ));
    }
}

/// `x_a = λ(a)` for marked `a`, and for every saturated chain
/// `p_0 ≺ ⋯ ≺ p_r ≺ p` the inequality
/// `(1 − t_p)(t_{p_1}⋯t_{p_r} x_{p_0} + ⋯ + x_{p_r}) ≤ x_p`.
pub fn hrep_general(poset: &MarkedPoset, t: &Parameter) -> HRep {
    let tv = t.values(poset);
    let mut h = HRep::new(full_coords(poset));
    marking_equations(poset, &mut h);
    for p in 0..poset.len() {
        let scale = Rat::one() - &tv[p];
        for chain in poset.saturated_chains_to(p) {
            if poset.is_marked(p) && chain.interior_len() == 0 {
                continue;
            }
            let mut coeffs = vec![Rat::zero(); poset.len()];
            let mut weight = scale.clone();
            for (i, &q) in chain.elements.iter().enumerate().rev() {
                coeffs[q] = weight.clone();
                if i > 0 {
                    weight *= &tv[q];
                }
            }
            coeffs[p] = -Rat::one();
            h.push(Constraint::le(
                coeffs,
                Rat::zero(),
                format!("chain:{}", chain.describe(poset)),
            ));
        }
    }
    h
}

/// Saturated chains `a ≺ p_1 ≺ ⋯ ≺ p_r ≺ b` with `a, b ∈ P* ⊔ O` and every
/// `p_i ∈ C`, as element sequences from `a` to `b`.
pub fn chain_order_chains(poset: &MarkedPoset, chain: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    fn down(
        poset: &MarkedPoset,
        x: usize,
        chain: &BTreeSet<usize>,
        suffix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &y in poset.lower_covers(x) {
            suffix.push(y);
            if chain.contains(&y) {
                down(poset, y, chain, suffix, out);
            } else {
                out.push(suffix.iter().rev().copied().collect());
            }
            suffix.pop();
        }
    }
    let mut out = Vec::new();
    for b in 0..poset.len() {
        if chain.contains(&b) {
            continue;
        }
        down(poset, b, chain, &mut vec![b], &mut out);
    }
    out.retain(|c| !(c.len() == 2 && poset.is_marked(c[0]) && poset.is_marked(c[1])));
    out.sort_by(|a, b| {
        let ka: Vec<&str> = a.iter().map(|&i| poset.name(i)).collect();
        let kb: Vec<&str> = b.iter().map(|&i| poset.name(i)).collect();
        ka.cmp(&kb)
    });
    out
}

/// Description of the marked chain-order polyhedron `O_{C,O}(P, λ)`.
pub fn hrep_chain_order(poset: &MarkedPoset, part: &Partition) -> Result<HRep, FamilyError> {
    part.validate(poset)?;
    let chain = part.chain_indices(poset);
    let mut h = HRep::new(full_coords(poset));
    marking_equations(poset, &mut h);
    for &p in &chain {
        let mut e = vec![Rat::zero(); poset.len()];
        e[p] = -Rat::one();
        h.push(Constraint::le(
            e,
            Rat::zero(),
            format!("nonneg:{}", poset.name(p)),
        ));
    }
    for c in chain_order_chains(poset, &chain) {
        let mut coeffs = vec![Rat::zero(); poset.len()];
        let (a, b) = (c[0], c[c.len() - 1]);
        for &p in &c[1..c.len() - 1] {
            coeffs[p] = Rat::one();
        }
        coeffs[a] += Rat::one();
        coeffs[b] -= Rat::one();
        let tag = c
            .iter()
            .map(|&i| poset.name(i))
            .collect::<Vec<_>>()
            .join("<");
        h.push(Constraint::le(coeffs, Rat::zero(), format!("chain:{tag}")));
    }
    Ok(h)
}

/// Substitutes the marking and keeps only the unmarked coordinates.
pub fn project(poset: &MarkedPoset, h: &HRep) -> Result<HRep, FamilyError> {
    let fixed: BTreeMap<usize, Rat> = poset
        .marked()
        .into_iter()
        .map(|a| (a, poset.marking(a).unwrap().clone()))
        .collect();
    Ok(h.substitute(&fixed)?)
}

pub fn projected_general(poset: &MarkedPoset, t: &Parameter) -> Result<HRep, FamilyError> {
    project(poset, &hrep_general(poset, t))
}

pub fn projected_chain_order(poset: &MarkedPoset, part: &Partition) -> Result<HRep, FamilyError> {
    project(poset, &hrep_chain_order(poset, part)?)
}

/// Unmarked `p` whose parameter does not affect the combinatorial type:
/// walking down from `p` is forced along single unmarked covers until an
/// element covering only marked elements.
pub fn is_irrelevant(poset: &MarkedPoset, p: usize) -> bool {
    if poset.is_marked(p) {
        return false;
    }
    let mut cur = p;
    loop {
        let lower = poset.lower_covers(cur);
        if lower.iter().all(|&q| poset.is_marked(q)) {
            return true;
        }
        match lower {
            [q] if !poset.is_marked(*q) => cur = *q,
            _ => return false,
        }
    }
}

pub fn irrelevant_elements(poset: &MarkedPoset) -> Vec<usize> {
    let mut out: Vec<usize> = poset
        .unmarked()
        .into_iter()
        .filter(|&p| is_irrelevant(poset, p))
        .collect();
    poset.sort_by_name(&mut out);
    out
}

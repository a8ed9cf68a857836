//! Irredundant descriptions, tameness and facet counts via exact LP.

use rayon::prelude::*;
use serde::Serialize;

use super::{projected_chain_order, FamilyError, Partition};
use crate::geometry::linalg::rank;
use crate::geometry::{Constraint, ConstraintKind, GeometryError, HRep, Lp, LpResult};
use crate::poset::MarkedPoset;
use crate::rational::Rat;

pub const MAX_TAME_UNMARKED: usize = 12;

fn lp_from(h: &HRep, skip: Option<usize>) -> Lp {
    let mut lp = Lp::new(h.dim());
    for (i, c) in h.constraints.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let row = (c.coeffs.clone(), c.rhs.clone());
        match c.kind {
            ConstraintKind::Eq => lp.eq.push(row),
            ConstraintKind::Le => lp.le.push(row),
        }
    }
    lp
}

/// Whether `a·x = b` holds on the whole polyhedron.
fn is_implicit_equality(lp: &Lp, c: &Constraint) -> bool {
    matches!(lp.minimize(&c.coeffs), LpResult::Optimal { value, .. } if value == c.rhs)
}

/// Whether the system `lp` already implies `c`.
fn is_implied(lp: &Lp, c: &Constraint) -> bool {
    match lp.maximize(&c.coeffs) {
        LpResult::Optimal { value, .. } => value <= c.rhs,
        LpResult::Infeasible => true,
        LpResult::Unbounded => false,
    }
}

/// Equivalent irredundant description: implicit equalities become
/// equations, dependent equations are dropped, and each inequality implied
/// by the remaining ones is removed.
pub fn eliminate_redundancy(h: &HRep) -> Result<HRep, GeometryError> {
    h.check_shape()?;
    let full = lp_from(h, None);
    if !full.is_feasible() {
        return Err(GeometryError::EmptyPolyhedron);
    }

    let mut eqs: Vec<Constraint> = h.equations().cloned().collect();
    let mut ineqs: Vec<Constraint> = Vec::new();
    for c in h.inequalities() {
        if is_implicit_equality(&full, c) {
            eqs.push(Constraint {
                kind: ConstraintKind::Eq,
                ..c.clone()
            });
        } else {
            ineqs.push(c.clone());
        }
    }

    let mut kept_eqs: Vec<Constraint> = Vec::new();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for e in eqs {
        let mut row = e.coeffs.clone();
        row.push(e.rhs.clone());
        basis.push(row);
        if rank(&basis) == basis.len() {
            kept_eqs.push(e);
        } else {
            basis.pop();
        }
    }

    let mut out = HRep::with_constraints(
        h.coords.clone(),
        kept_eqs.into_iter().chain(ineqs).collect(),
    );
    let mut i = out
        .constraints
        .iter()
        .position(|c| !c.is_eq())
        .unwrap_or(out.constraints.len());
    while i < out.constraints.len() {
        let lp = lp_from(&out, Some(i));
        if is_implied(&lp, &out.constraints[i]) {
            out.constraints.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(out)
}

/// Number of facets of the polyhedron.
pub fn facet_count(h: &HRep) -> Result<usize, GeometryError> {
    Ok(eliminate_redundancy(h)?.inequality_count())
}

/// Every listed inequality defines a distinct facet: it is not an implicit
/// equality and not implied by all the other constraints together.
fn every_inequality_is_facet(h: &HRep) -> Result<bool, GeometryError> {
    let full = lp_from(h, None);
    if !full.is_feasible() {
        return Err(GeometryError::EmptyPolyhedron);
    }
    for (i, c) in h.constraints.iter().enumerate() {
        if c.is_eq() {
            continue;
        }
        if is_implicit_equality(&full, c) || is_implied(&lp_from(h, Some(i)), c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the chain-order description is facet-defining for every
/// partition of the unmarked elements.
pub fn is_tame(poset: &MarkedPoset) -> Result<bool, FamilyError> {
    let n = poset.unmarked().len();
    if n > MAX_TAME_UNMARKED {
        return Err(FamilyError::TooLarge(n, MAX_TAME_UNMARKED));
    }
    poset.ensure_valid()?;
    let parts = Partition::all(poset);
    let results: Result<Vec<bool>, FamilyError> = parts
        .par_iter()
        .map(|part| {
            Ok(every_inequality_is_facet(&projected_chain_order(
                poset, part,
            )?)?)
        })
        .collect();
    Ok(results?.into_iter().all(|b| b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetDelta {
    pub element: String,
    /// Saturated chains into `q` through `C` from `P* ⊔ O`.
    pub k: u64,
    /// Saturated chains out of `q` through `C` into `P* ⊔ O`.
    pub l: u64,
    pub facets_before: usize,
    pub facets_after: usize,
    /// `(k − 1)(l − 1)`.
    pub formula: i64,
    pub measured: i64,
}

impl FacetDelta {
    pub fn agrees(&self) -> bool {
        self.formula == self.measured
    }
}

/// Change in facet count when `q ∈ O` moves to `C`, by formula and by
/// counting irredundant inequalities of both descriptions.
pub fn facet_count_delta(
    poset: &MarkedPoset,
    part: &Partition,
    q: &str,
) -> Result<FacetDelta, FamilyError> {
    part.validate(poset)?;
    if !part.o.contains(q) {
        return Err(FamilyError::Precondition(format!(
            "{q} is not an order element"
        )));
    }
    let qi = poset.expect_index(q);
    let (k, l) = poset.chain_order_counts(qi, &part.chain_indices(poset));
    let after_part = part.move_to_chain(q);
    let before = facet_count(&projected_chain_order(poset, part)?)?;
    let after = facet_count(&projected_chain_order(poset, &after_part)?)?;
    Ok(FacetDelta {
        element: q.to_string(),
        k,
        l,
        facets_before: before,
        facets_after: after,
        formula: (k as i64 - 1) * (l as i64 - 1),
        measured: after as i64 - before as i64,
    })
}

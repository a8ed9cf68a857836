//! Subdivision of `O(P, λ)` by chains of order ideals compatible with the
//! marking.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{arrangement, bounded_order_polytope, cell_from_points, SubdivisionCell};
use crate::family::{hrep_general, project, FamilyError, Parameter};
use crate::geometry::{vertices, Constraint, GeometryError, HRep};
use crate::poset::MarkedPoset;
use crate::rational::{int, Rat};

const MAX_IDEAL_ELEMENTS: usize = 16;

/// `∅ = I_0 ⊊ I_1 ⊊ ⋯ ⊊ I_r = P`, stored as the blocks `B_k = I_k ∖ I_{k−1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IdealChain {
    pub blocks: Vec<Vec<usize>>,
}

impl IdealChain {
    /// Position `i(I, p)` of the block containing `p`, starting at 1.
    pub fn index_of(&self, p: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&p))
            .map_or(0, |k| k + 1)
    }

    pub fn names(&self, poset: &MarkedPoset) -> Vec<Vec<String>> {
        self.blocks.iter().map(|b| poset.names(b)).collect()
    }
}

/// All chains of order ideals compatible with the marking: marked `a, b`
/// lie in blocks with `i(I, a) < i(I, b)` exactly when `λ(a) < λ(b)`.
pub fn ideal_chains(poset: &MarkedPoset) -> Result<Vec<IdealChain>, FamilyError> {
    let n = poset.len();
    if n > MAX_IDEAL_ELEMENTS {
        return Err(FamilyError::TooLarge(n, MAX_IDEAL_ELEMENTS));
    }
    let values: Vec<Rat> = poset
        .marked()
        .into_iter()
        .filter_map(|a| poset.marking(a).cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let level_masks: Vec<u64> = values
        .iter()
        .map(|v| {
            poset
                .marked()
                .into_iter()
                .filter(|&a| poset.marking(a) == Some(v))
                .fold(0, |m, a| m | 1 << a)
        })
        .collect();
    let marked_mask: u64 = level_masks.iter().fold(0, |m, x| m | x);
    let below: Vec<u64> = (0..n)
        .map(|p| poset.lower_covers(p).iter().fold(0, |m, &q| m | 1 << q))
        .collect();

    let mut out = Vec::new();
    let mut blocks = Vec::new();
    extend(
        n,
        &below,
        marked_mask,
        &level_masks,
        0,
        0,
        &mut blocks,
        &mut out,
    );
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    n: usize,
    below: &[u64],
    marked: u64,
    levels: &[u64],
    ideal: u64,
    level: usize,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<IdealChain>,
) {
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    if ideal == full {
        out.push(IdealChain {
            blocks: blocks.clone(),
        });
        return;
    }
    let rest = full & !ideal;
    // Enumerate nonempty submasks of `rest`.
    let mut b = rest;
    while b != 0 {
        let union = ideal | b;
        let closed = (0..n)
            .filter(|&p| b >> p & 1 == 1)
            .all(|p| below[p] & !union == 0);
        let bm = b & marked;
        let next_level = if bm == 0 {
            Some(level)
        } else if level < levels.len() && bm == levels[level] {
            Some(level + 1)
        } else {
            None
        };
        if let (true, Some(next)) = (closed, next_level) {
            blocks.push((0..n).filter(|&p| b >> p & 1 == 1).collect());
            extend(n, below, marked, levels, union, next, blocks, out);
            blocks.pop();
        }
        b = (b - 1) & rest;
    }
}

fn unit_diff(n: usize, i: usize, j: usize) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); n];
    row[i] = int(1);
    row[j] = int(-1);
    row
}

/// Projected description of `F_I`.
pub fn ideal_cell_hrep(poset: &MarkedPoset, chain: &IdealChain) -> Result<HRep, FamilyError> {
    let n = poset.len();
    let mut h = hrep_general(poset, &Parameter::zero(poset));
    for b in &chain.blocks {
        for w in b.windows(2) {
            h.push(Constraint::eq(
                unit_diff(n, w[0], w[1]),
                Rat::zero(),
                "block",
            ));
        }
    }
    for w in chain.blocks.windows(2) {
        h.push(Constraint::le(
            unit_diff(n, w[0][0], w[1][0]),
            Rat::zero(),
            "increasing",
        ));
    }
    project(poset, &h)
}

/// The cells `F_I`: points of `O(P, λ)` constant on each block and weakly
/// increasing from block to block, one per compatible ideal chain.
pub fn ideal_chain_cells(poset: &MarkedPoset) -> Result<Vec<SubdivisionCell>, FamilyError> {
    let o = bounded_order_polytope(poset)?;
    let arr = arrangement(poset);
    let chains = ideal_chains(poset)?;
    let cells: Result<Vec<Option<SubdivisionCell>>, FamilyError> = chains
        .par_iter()
        .map(|chain| {
            let pts = match ideal_cell_hrep(poset, chain).and_then(|h| Ok(vertices(&h)?)) {
                Ok(v) => v.vertices,
                Err(FamilyError::Geometry(GeometryError::EmptyPolyhedron)) => return Ok(None),
                Err(e) => return Err(e),
            };
            Ok(Some(cell_from_points(
                poset,
                &arr,
                &o,
                pts,
                Some(chain.names(poset)),
            )))
        })
        .collect();
    Ok(cells?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::projected_general;
    use crate::fixtures::{chain_poset, example_poset};
    use crate::geometry::ehrhart;
    use crate::rational::is_integral;
    use crate::tropical::regions;

    #[test]
    fn chain_poset_cells() {
        let p = chain_poset(0, 2);
        let cells = ideal_chain_cells(&p).unwrap();
        // Orderings of x_p ≤ x_q against the marked levels 0 and 2.
        assert_eq!(ideal_chains(&p).unwrap().len(), cells.len());
        assert!(cells
            .iter()
            .all(|c| c.vertices.iter().flatten().all(is_integral)));
        let full: Vec<&SubdivisionCell> = cells.iter().filter(|c| c.dim == 2).collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].vertices.len(), 3);
    }

    #[test]
    fn example_cells_refine_tropical_regions() {
        let p = example_poset();
        let cells = ideal_chain_cells(&p).unwrap();
        let regs = regions(&p).unwrap();
        for c in &cells {
            assert!(c.vertices.iter().flatten().all(is_integral));
            assert!(
                regs.iter()
                    .any(|r| c.vertices.iter().all(|v| r.hrep.contains(v))),
                "{c:?}"
            );
        }
        // The full-dimensional cells have disjoint interiors and cover O.
        let o = projected_general(&p, &Parameter::zero(&p)).unwrap();
        let total: Rat = ideal_chains(&p)
            .unwrap()
            .iter()
            .map(|c| ehrhart(&ideal_cell_hrep(&p, c).unwrap(), 3).unwrap())
            .filter(|e| e.dim == 3)
            .map(|e| e.coefficients[3].clone())
            .sum();
        assert_eq!(total, ehrhart(&o, 3).unwrap().coefficients[3]);
    }

    #[test]
    fn all_marked_poset_is_single_point() {
        let marks = [("a".to_string(), int(0)), ("b".to_string(), int(1))].into();
        let p = MarkedPoset::new(&["a", "b"], &[("a", "b")], &marks).unwrap();
        let cells = ideal_chain_cells(&p).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].dim, 0);
    }
}

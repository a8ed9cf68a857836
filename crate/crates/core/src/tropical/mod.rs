//! Tropical hyperplane arrangements of marked posets, the induced
//! subdivision of the marked order polytope, and the vertices of generic
//! members of the family.

mod arrangement;
mod ideal;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::family::{
    hrep_general, lift, project, projected_general, projected_phi, projected_theta, FamilyError,
    Parameter, Partition,
};
use crate::geometry::hrep::serde_points;
use crate::geometry::linalg::{rank, sub};
use crate::geometry::{vertices, Constraint, FaceLattice, GeometryError, HRep, Lp};
use crate::poset::MarkedPoset;
use crate::rational::{int, Rat};

pub use arrangement::{
    arrangement, covector, TropCovector, TropicalArrangement, TropicalHyperplane,
};
pub use ideal::{ideal_cell_hrep, ideal_chain_cells, ideal_chains, IdealChain};

/// Largest `|P̃|` accepted by the conjecture checker.
pub const MAX_CONJECTURE_UNMARKED: usize = 10;

/// A cell of a subdivision of `O(P, λ)`, in projected coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionCell {
    pub dim: i64,
    #[serde(with = "serde_points")]
    pub vertices: Vec<Vec<Rat>>,
    /// Covector at the barycenter, keyed by hyperplane label.
    pub covector: BTreeMap<String, Vec<String>>,
    /// Constraints of `O(P, λ)` tight on the whole cell.
    pub tight: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<String>>>,
}

/// A maximal region `O(P, λ) ∩ G_τ`, one chosen maximizer per hyperplane.
#[derive(Debug, Clone)]
pub struct Region {
    pub choice: Vec<usize>,
    pub hrep: HRep,
    pub vertices: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TropicalSubdivision {
    pub coords: Vec<String>,
    #[serde(skip)]
    pub arrangement: TropicalArrangement,
    #[serde(with = "serde_points")]
    pub vertices: Vec<Vec<Rat>>,
    pub cells: Vec<SubdivisionCell>,
}

impl TropicalSubdivision {
    pub fn maximal_cells(&self) -> impl Iterator<Item = &SubdivisionCell> {
        let top = self.cells.iter().map(|c| c.dim).max().unwrap_or(-1);
        self.cells.iter().filter(move |c| c.dim == top)
    }
}

fn coord_names(poset: &MarkedPoset) -> Vec<String> {
    poset.names(&poset.unmarked())
}

fn bounded_order_polytope(poset: &MarkedPoset) -> Result<HRep, FamilyError> {
    poset.ensure_valid()?;
    let o = projected_general(poset, &Parameter::zero(poset))?;
    if !vertices(&o)?.is_bounded() {
        return Err(GeometryError::UnsupportedUnbounded.into());
    }
    Ok(o)
}

pub(crate) fn barycenter(points: &[Vec<Rat>]) -> Vec<Rat> {
    let n = int(points.len() as i64);
    let d = points.first().map_or(0, |p| p.len());
    (0..d)
        .map(|i| points.iter().map(|p| &p[i]).sum::<Rat>() / &n)
        .collect()
}

pub(crate) fn cell_from_points(
    poset: &MarkedPoset,
    arr: &TropicalArrangement,
    o: &HRep,
    mut pts: Vec<Vec<Rat>>,
    blocks: Option<Vec<Vec<String>>>,
) -> SubdivisionCell {
    pts.sort();
    let refs: Vec<&[Rat]> = pts.iter().map(|p| p.as_slice()).collect();
    let dim = crate::geometry::linalg::affine_dimension(&refs);
    let center = lift(poset, &barycenter(&pts));
    let tight = o
        .constraints
        .iter()
        .filter(|c| !c.is_eq() && pts.iter().all(|v| c.is_tight(v)))
        .map(|c| c.origin.clone())
        .collect();
    SubdivisionCell {
        dim,
        vertices: pts,
        covector: arr.covector(&center).named(arr),
        tight,
        blocks,
    }
}

fn is_feasible(h: &HRep) -> bool {
    let mut lp = Lp::new(h.dim());
    for c in &h.constraints {
        let row = (c.coeffs.clone(), c.rhs.clone());
        if c.is_eq() {
            lp.eq.push(row);
        } else {
            lp.le.push(row);
        }
    }
    lp.is_feasible()
}

/// Maximal regions by recursion over hyperplanes, pruning infeasible
/// partial choices with an exact LP.
pub fn regions(poset: &MarkedPoset) -> Result<Vec<Region>, FamilyError> {
    bounded_order_polytope(poset)?;
    let arr = arrangement(poset);
    let base = hrep_general(poset, &Parameter::zero(poset));
    let mut out = Vec::new();
    let mut choice = Vec::new();
    extend_regions(poset, &arr, &base, &mut choice, &mut out)?;
    Ok(out)
}

fn extend_regions(
    poset: &MarkedPoset,
    arr: &TropicalArrangement,
    full: &HRep,
    choice: &mut Vec<usize>,
    out: &mut Vec<Region>,
) -> Result<(), FamilyError> {
    let projected = match project(poset, full) {
        Ok(h) => h,
        Err(FamilyError::Geometry(GeometryError::EmptyPolyhedron)) => return Ok(()),
        Err(e) => return Err(e),
    };
    if !is_feasible(&projected) {
        return Ok(());
    }
    let Some(h) = arr.hyperplanes.get(choice.len()) else {
        let vrep = vertices(&projected)?;
        out.push(Region {
            choice: choice.clone(),
            hrep: projected,
            vertices: vrep.vertices,
        });
        return Ok(());
    };
    for &l in &h.support {
        let mut next = full.clone();
        for &j in h.support.iter().filter(|&&j| j != l) {
            let mut row = vec![Rat::zero(); poset.len()];
            row[j] = int(1);
            row[l] = int(-1);
            let origin = format!("trop:{}:{}>={}", h.label, poset.name(l), poset.name(j));
            next.push(Constraint::le(row, Rat::zero(), origin));
        }
        choice.push(l);
        extend_regions(poset, arr, &next, choice, out)?;
        choice.pop();
    }
    Ok(())
}

/// Vertices of the tropical subdivision `T(P, λ)` in projected coordinates.
pub fn subdivision_vertices(poset: &MarkedPoset) -> Result<Vec<Vec<Rat>>, FamilyError> {
    let set: BTreeSet<Vec<Rat>> = regions(poset)?
        .into_iter()
        .flat_map(|r| r.vertices)
        .collect();
    Ok(set.into_iter().collect())
}

/// All cells `F ∩ G` of `T(P, λ)`: the faces of the maximal regions.
pub fn tropical_subdivision(poset: &MarkedPoset) -> Result<TropicalSubdivision, FamilyError> {
    let o = bounded_order_polytope(poset)?;
    let arr = arrangement(poset);
    let regs = regions(poset)?;
    let faces: Result<Vec<Vec<Vec<Vec<Rat>>>>, GeometryError> = regs
        .par_iter()
        .map(|r| {
            let v = crate::geometry::VRep {
                vertices: r.vertices.clone(),
                rays: Vec::new(),
            };
            let fl = FaceLattice::build(&r.hrep, &v)?;
            Ok(fl
                .faces
                .iter()
                .filter(|f| f.dim >= 0)
                .map(|f| f.vertices.iter().map(|i| fl.vertices[i].clone()).collect())
                .collect())
        })
        .collect();
    let mut seen: BTreeSet<Vec<Vec<Rat>>> = BTreeSet::new();
    for mut pts in faces?.into_iter().flatten() {
        pts.sort();
        seen.insert(pts);
    }
    let mut cells: Vec<SubdivisionCell> = seen
        .into_iter()
        .map(|pts| cell_from_points(poset, &arr, &o, pts, None))
        .collect();
    cells.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    let verts: BTreeSet<Vec<Rat>> = cells
        .iter()
        .filter(|c| c.dim == 0)
        .map(|c| c.vertices[0].clone())
        .collect();
    Ok(TropicalSubdivision {
        coords: coord_names(poset),
        arrangement: arr,
        vertices: verts.into_iter().collect(),
        cells,
    })
}

/// Whether `v` is the only point satisfying the constraints of `O(P, λ)`
/// tight at `v` as equations together with `x_q = x_{q'}` for all pairs in
/// each covector entry of `v`.
pub fn is_pinned_by_covector(poset: &MarkedPoset, v: &[Rat]) -> Result<bool, FamilyError> {
    let full = hrep_general(poset, &Parameter::zero(poset));
    let x = lift(poset, v);
    let arr = arrangement(poset);
    let mut sys = HRep::new(full.coords.clone());
    for c in full.constraints.iter().filter(|c| c.is_tight(&x)) {
        sys.push(Constraint::eq(
            c.coeffs.clone(),
            c.rhs.clone(),
            c.origin.clone(),
        ));
    }
    for entry in arr.covector(&x).entries {
        for w in entry.windows(2) {
            let mut row = vec![Rat::zero(); poset.len()];
            row[w[0]] = int(1);
            row[w[1]] = int(-1);
            sys.push(Constraint::eq(row, Rat::zero(), "covector"));
        }
    }
    let projected = project(poset, &sys)?;
    let rows: Vec<Vec<Rat>> = projected
        .constraints
        .iter()
        .map(|c| c.coeffs.clone())
        .collect();
    Ok(projected.contains(v) && rank(&rows) == v.len())
}

fn sorted_unique(points: impl IntoIterator<Item = Vec<Rat>>) -> Vec<Vec<Rat>> {
    points
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `φ_t` applied to the subdivision vertices. For every `t` this contains
/// the vertices of `O_t(P, λ)`; for interior `t` it is exactly that set.
pub fn transferred_vertices(
    poset: &MarkedPoset,
    t: &Parameter,
) -> Result<Vec<Vec<Rat>>, FamilyError> {
    t.validate(poset)?;
    let sv = subdivision_vertices(poset)?;
    Ok(sorted_unique(sv.iter().map(|v| projected_phi(poset, t, v))))
}

/// Vertices of `O_t(P, λ)` for `t` in the open cube, via the subdivision.
pub fn generic_vertices(poset: &MarkedPoset, t: &Parameter) -> Result<Vec<Vec<Rat>>, FamilyError> {
    t.validate(poset)?;
    if !t.is_interior() {
        return Err(FamilyError::NonInteriorParameter);
    }
    transferred_vertices(poset, t)
}

/// Vertices of `O_t(P, λ)` from the double description kernel, sorted.
pub fn kernel_vertices(poset: &MarkedPoset, t: &Parameter) -> Result<Vec<Vec<Rat>>, FamilyError> {
    let v = vertices(&projected_general(poset, t)?)?;
    if !v.is_bounded() {
        return Err(GeometryError::UnsupportedUnbounded.into());
    }
    Ok(v.sorted().vertices)
}

/// Compares the subdivision route with the kernel for interior `t`.
pub fn verify_generic_vertices(poset: &MarkedPoset, t: &Parameter) -> Result<bool, FamilyError> {
    Ok(generic_vertices(poset, t)? == kernel_vertices(poset, t)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureEntry {
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub vertex: Vec<Rat>,
    /// Chain sets `C` of the hypercube vertices where the image is a vertex.
    pub witnesses: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub parameter: Parameter,
    pub coords: Vec<String>,
    pub entries: Vec<ConjectureEntry>,
    pub unwitnessed: usize,
}

impl ConjectureReport {
    pub fn all_witnessed(&self) -> bool {
        self.unwitnessed == 0
    }
}

/// For each vertex of the generic polytope `O_t`, the hypercube vertices `u`
/// for which the degeneration `θ_{t,u}` sends it to a vertex of `O_u`.
pub fn check_vertex_degeneration_conjecture(
    poset: &MarkedPoset,
    t: &Parameter,
) -> Result<ConjectureReport, FamilyError> {
    let n = poset.unmarked().len();
    if n > MAX_CONJECTURE_UNMARKED {
        return Err(FamilyError::TooLarge(n, MAX_CONJECTURE_UNMARKED));
    }
    let verts = generic_vertices(poset, t)?;
    let parts = Partition::all(poset);
    type Target = (Partition, Parameter, BTreeSet<Vec<Rat>>);
    let targets: Result<Vec<Target>, FamilyError> = parts
        .into_par_iter()
        .map(|part| {
            let u = part.parameter();
            let vs = kernel_vertices(poset, &u)?.into_iter().collect();
            Ok((part, u, vs))
        })
        .collect();
    let targets = targets?;
    let entries: Vec<ConjectureEntry> = verts
        .into_iter()
        .map(|v| {
            let witnesses = targets
                .iter()
                .filter(|(_, u, vs)| vs.contains(&projected_theta(poset, t, u, &v)))
                .map(|(part, _, _)| part.c.iter().cloned().collect())
                .collect();
            ConjectureEntry {
                vertex: v,
                witnesses,
            }
        })
        .collect();
    let unwitnessed = entries.iter().filter(|e| e.witnesses.is_empty()).count();
    Ok(ConjectureReport {
        parameter: t.clone(),
        coords: coord_names(poset),
        entries,
        unwitnessed,
    })
}

/// Whether `φ_t` agrees with the affine interpolation on the segment
/// between two points of a common cell.
pub fn phi_is_affine_between(
    poset: &MarkedPoset,
    t: &Parameter,
    a: &[Rat],
    b: &[Rat],
    s: &Rat,
) -> bool {
    let mid: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect();
    let (fa, fb, fm) = (
        projected_phi(poset, t, a),
        projected_phi(poset, t, b),
        projected_phi(poset, t, &mid),
    );
    let d = sub(&fb, &fa);
    fm.iter()
        .zip(fa.iter().zip(&d))
        .all(|(m, (x, dx))| *m == x + s * dx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain_poset, example_poset};
    use crate::geometry::{count_lattice_points, lattice_points};
    use crate::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn half_r(p: &MarkedPoset) -> Parameter {
        let mut t = Parameter::generic(p);
        t.t.insert("r".into(), rat(1, 2));
        t
    }

    #[test]
    fn example_subdivision_vertices() {
        let p = example_poset();
        let sv = subdivision_vertices(&p).unwrap();
        assert_eq!(sv.len(), 14);
        let o = kernel_vertices(&p, &Parameter::zero(&p)).unwrap();
        assert_eq!(o.len(), 11);
        assert!(o.iter().all(|x| sv.contains(x)));
        let extra: Vec<Vec<Rat>> = sv.iter().filter(|x| !o.contains(x)).cloned().collect();
        assert_eq!(extra, vec![v(&[0, 2, 4]), v(&[2, 0, 4]), v(&[2, 2, 4])]);
        for x in &sv {
            assert!(is_pinned_by_covector(&p, x).unwrap(), "{x:?}");
        }
    }

    #[test]
    fn example_generic_vertices() {
        let p = example_poset();
        let t = half_r(&p);
        let gv = generic_vertices(&p, &t).unwrap();
        assert_eq!(gv.len(), 14);
        assert!(verify_generic_vertices(&p, &t).unwrap());
        assert_eq!(
            generic_vertices(&p, &Parameter::zero(&p)),
            Err(FamilyError::NonInteriorParameter)
        );
        for u in Parameter::hypercube_vertices(&p) {
            let tv = transferred_vertices(&p, &u).unwrap();
            assert!(kernel_vertices(&p, &u)
                .unwrap()
                .iter()
                .all(|x| tv.contains(x)));
        }
    }

    #[test]
    fn chain_has_trivial_subdivision() {
        let p = chain_poset(0, 2);
        let sub = tropical_subdivision(&p).unwrap();
        assert_eq!(sub.maximal_cells().count(), 1);
        assert_eq!(
            sub.vertices,
            kernel_vertices(&p, &Parameter::zero(&p)).unwrap()
        );
        assert_eq!(
            generic_vertices(&p, &Parameter::generic(&p)).unwrap().len(),
            3
        );
    }

    #[test]
    fn example_cells_partition_lattice_points() {
        let p = example_poset();
        let sub = tropical_subdivision(&p).unwrap();
        assert_eq!(sub.vertices.len(), 14);
        let maximal: Vec<&SubdivisionCell> = sub.maximal_cells().collect();
        assert!(maximal.iter().all(|c| c.dim == 3));
        assert!(maximal
            .iter()
            .all(|c| c.covector.values().all(|e| e.len() == 1)));
        // Every lattice point of 2·O lies in the relative interior of exactly one cell.
        let o = projected_general(&p, &Parameter::zero(&p))
            .unwrap()
            .dilate(&int(2));
        let pts = lattice_points(&o).unwrap();
        assert_eq!(pts.len() as u64, count_lattice_points(&o).unwrap());
        let arr = &sub.arrangement;
        for x in pts {
            let y: Vec<Rat> = x.iter().map(|a| a / int(2)).collect();
            let tc = arr.covector(&lift(&p, &y)).named(arr);
            let o1 = projected_general(&p, &Parameter::zero(&p)).unwrap();
            let tight: Vec<String> = o1
                .constraints
                .iter()
                .filter(|c| !c.is_eq() && c.is_tight(&y))
                .map(|c| c.origin.clone())
                .collect();
            let hits = sub
                .cells
                .iter()
                .filter(|c| c.covector == tc && c.tight == tight)
                .count();
            assert_eq!(hits, 1, "{y:?}");
        }
    }

    #[test]
    fn phi_affine_on_cells() {
        let p = example_poset();
        let t = half_r(&p);
        let sub = tropical_subdivision(&p).unwrap();
        for c in sub.maximal_cells() {
            for a in &c.vertices {
                for b in &c.vertices {
                    assert!(phi_is_affine_between(&p, &t, a, b, &rat(1, 3)));
                }
            }
        }
    }

    #[test]
    fn conjecture_on_example() {
        let p = example_poset();
        let report = check_vertex_degeneration_conjecture(&p, &half_r(&p)).unwrap();
        assert_eq!(report.entries.len(), 14);
        assert!(report.all_witnessed());
        let chain = chain_poset(0, 2);
        let r = check_vertex_degeneration_conjecture(&chain, &Parameter::generic(&chain)).unwrap();
        assert!(r.entries.iter().all(|e| e.witnesses.len() == 4));
    }
}

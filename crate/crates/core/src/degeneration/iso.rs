//! Combinatorial isomorphism of polytopes through vertex-facet incidences.

use std::collections::HashSet;

use crate::geometry::bitset::BitSet;
use crate::geometry::FaceLattice;

struct Incidence {
    facets: Vec<BitSet>,
    /// `common[v][w]`: number of facets containing both `v` and `w`.
    common: Vec<Vec<usize>>,
    /// Sorted sizes of the facets containing each vertex.
    signature: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(l: &FaceLattice) -> Self {
        let n = l.vertices.len();
        let facets: Vec<BitSet> = l.facets().into_iter().cloned().collect();
        let mut common = vec![vec![0; n]; n];
        let mut signature = vec![Vec::new(); n];
        for f in &facets {
            let vs: Vec<usize> = f.iter().collect();
            for &a in &vs {
                signature[a].push(vs.len());
                for &b in &vs {
                    common[a][b] += 1;
                }
            }
        }
        for s in &mut signature {
            s.sort_unstable();
        }
        Incidence {
            facets,
            common,
            signature,
        }
    }
}

/// Whether the two face lattices are isomorphic, decided by searching for a
/// vertex bijection that carries facets onto facets.
pub fn incidence_isomorphic(a: &FaceLattice, b: &FaceLattice) -> bool {
    if a.dim() != b.dim() || a.f_vector() != b.f_vector() || a.vertices.len() != b.vertices.len() {
        return false;
    }
    let (ia, ib) = (Incidence::new(a), Incidence::new(b));
    let mut sa: Vec<&Vec<usize>> = ia.signature.iter().collect();
    let mut sb: Vec<&Vec<usize>> = ib.signature.iter().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    let n = a.vertices.len();
    // Most constrained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(ia.signature[v].len()));
    let targets: HashSet<BitSet> = ib.facets.iter().cloned().collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(&ia, &ib, &order, 0, &mut image, &mut used, &targets)
}

fn search(
    a: &Incidence,
    b: &Incidence,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
    targets: &HashSet<BitSet>,
) -> bool {
    if depth == order.len() {
        let n = image.len();
        return a
            .facets
            .iter()
            .all(|f| targets.contains(&BitSet::from_indices(n, f.iter().map(|v| image[v]))));
    }
    let v = order[depth];
    for w in 0..image.len() {
        if used[w] || a.signature[v] != b.signature[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| a.common[v][u] == b.common[w][image[u]]);
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if search(a, b, order, depth + 1, image, used, targets) {
            return true;
        }
        used[w] = false;
        image[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{pentagon_hrep, unit_cube};
    use crate::geometry::{vertices, Constraint, HRep};
    use crate::rational::{int, rat};

    fn lattice(h: &HRep) -> FaceLattice {
        FaceLattice::build(h, &vertices(h).unwrap()).unwrap()
    }

    #[test]
    fn pentagons_are_isomorphic() {
        assert!(incidence_isomorphic(
            &lattice(&pentagon_hrep(&int(0))),
            &lattice(&pentagon_hrep(&rat(1, 2)))
        ));
        assert!(!incidence_isomorphic(
            &lattice(&pentagon_hrep(&rat(1, 2))),
            &lattice(&pentagon_hrep(&int(1)))
        ));
    }

    #[test]
    fn tilted_and_truncated_cubes() {
        let cube = unit_cube(3);
        let mut skew = cube.clone();
        // Tilt the top face: still combinatorially a cube.
        skew.constraints.retain(|c| c.origin != "x2<=1");
        skew.push(Constraint::le(vec![int(1), int(0), int(4)], int(5), "tilt"));
        assert!(incidence_isomorphic(&lattice(&cube), &lattice(&skew)));
        // Cutting a corner changes the type.
        let mut cut = cube.clone();
        cut.push(Constraint::le(vec![int(2), int(2), int(2)], int(5), "cut"));
        assert!(!incidence_isomorphic(&lattice(&cube), &lattice(&cut)));
    }
}

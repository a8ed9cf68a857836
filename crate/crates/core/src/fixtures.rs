//! Small hand-made instances used by tests, examples and the CLI.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::geometry::{Constraint, HRep};
use crate::poset::MarkedPoset;
use crate::rational::{int, Rat};

fn marks(pairs: &[(&str, i64)]) -> BTreeMap<String, Rat> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), int(*v)))
        .collect()
}

/// Seven elements: marked `0, 2, 3, 4` and unmarked `p, q, r`, with
/// `r` covering `2, p, q`.
pub fn example_poset() -> MarkedPoset {
    MarkedPoset::new(
        &["0", "p", "q", "r", "2", "3", "4"],
        &[
            ("0", "p"),
            ("0", "q"),
            ("p", "r"),
            ("q", "r"),
            ("2", "r"),
            ("r", "4"),
            ("p", "3"),
            ("q", "3"),
        ],
        &marks(&[("0", 0), ("2", 2), ("3", 3), ("4", 4)]),
    )
    .expect("fixture is well formed")
}

/// `a ≺ p ≺ q ≺ b` with `λ(a) = lo`, `λ(b) = hi`.
pub fn chain_poset(lo: i64, hi: i64) -> MarkedPoset {
    MarkedPoset::new(
        &["a", "p", "q", "b"],
        &[("a", "p"), ("p", "q"), ("q", "b")],
        &marks(&[("a", lo), ("b", hi)]),
    )
    .expect("fixture is well formed")
}

/// `a ≺ p ≺ b` with `λ(a) = lo`, `λ(b) = hi`.
pub fn short_chain(lo: i64, hi: i64) -> MarkedPoset {
    MarkedPoset::new(
        &["a", "p", "b"],
        &[("a", "p"), ("p", "b")],
        &marks(&[("a", lo), ("b", hi)]),
    )
    .expect("fixture is well formed")
}

/// `0 ≤ x1 ≤ 2`, `0 ≤ x2`, `x2 ≤ (1−t)x1 + 1`, `x2 ≤ (1−t)(2−x1) + 1`.
pub fn pentagon_hrep(t: &Rat) -> HRep {
    let s = Rat::one() - t;
    let z = Rat::zero();
    HRep::with_constraints(
        vec!["x1".into(), "x2".into()],
        vec![
            Constraint::le(vec![-Rat::one(), z.clone()], z.clone(), "x1>=0"),
            Constraint::le(vec![Rat::one(), z.clone()], int(2), "x1<=2"),
            Constraint::le(vec![z.clone(), -Rat::one()], z.clone(), "x2>=0"),
            Constraint::le(vec![-s.clone(), Rat::one()], Rat::one(), "left-roof"),
            Constraint::le(
                vec![s.clone(), Rat::one()],
                &s * int(2) + Rat::one(),
                "right-roof",
            ),
        ],
    )
}

/// The deformation map of the pentagon family: scales `x2` so the roof
/// lines of `Q_0` land on those of `Q_t`.
pub fn pentagon_rho(t: &Rat, x: &[Rat]) -> Vec<Rat> {
    let s = Rat::one() - t;
    let u = if x[0] <= Rat::one() {
        x[0].clone()
    } else {
        int(2) - &x[0]
    };
    let factor = (&s * &u + Rat::one()) / (u + Rat::one());
    vec![x[0].clone(), &x[1] * factor]
}

/// `conv{0, e1, e2, e1 + e2 + 3e3}`: a lattice simplex that is not
/// integrally closed.
pub fn non_idp_simplex() -> HRep {
    let row = |a: [i64; 3], b: i64, tag: &str| {
        Constraint::le(a.iter().map(|&x| int(x)).collect(), int(b), tag)
    };
    HRep::with_constraints(
        vec!["x".into(), "y".into(), "z".into()],
        vec![
            row([0, 0, -1], 0, "z>=0"),
            row([0, -3, 1], 0, "z<=3y"),
            row([-3, 0, 1], 0, "z<=3x"),
            row([3, 3, -1], 3, "top"),
        ],
    )
}

pub fn unit_cube(d: usize) -> HRep {
    let mut h = HRep::new((0..d).map(|i| format!("x{i}")).collect());
    for i in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[i] = Rat::one();
        h.push(Constraint::le(e.clone(), Rat::one(), format!("x{i}<=1")));
        e[i] = -Rat::one();
        h.push(Constraint::le(e, Rat::zero(), format!("x{i}>=0")));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{vertices, FaceLattice};

    #[test]
    fn fixtures_are_valid() {
        assert!(example_poset().validate().is_valid());
        assert!(chain_poset(0, 2).validate().is_valid());
        assert!(short_chain(0, 1).validate().is_valid());
    }

    #[test]
    fn pentagon_shapes() {
        for (t, f) in [
            (Rat::zero(), vec![5, 5]),
            (int(1) / int(2), vec![5, 5]),
            (Rat::one(), vec![4, 4]),
        ] {
            let h = pentagon_hrep(&t);
            let v = vertices(&h).unwrap();
            assert_eq!(FaceLattice::build(&h, &v).unwrap().f_vector(), f);
        }
        let apex = pentagon_rho(&Rat::one(), &[int(1), int(2)]);
        assert_eq!(apex, vec![int(1), int(1)]);
        assert!(pentagon_hrep(&Rat::one()).contains(&apex));
    }

    #[test]
    fn simplex_vertices() {
        let v = vertices(&non_idp_simplex()).unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert!(v.vertices.contains(&vec![int(1), int(1), int(3)]));
    }
}

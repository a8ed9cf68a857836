//! Transfer maps `φ_t`, `ψ_t`, `θ_{t,t'}` and the equality pullback.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::Parameter;
use crate::poset::{MarkedPoset, SaturatedChain};
use crate::rational::Rat;

fn max_below(poset: &MarkedPoset, x: &[Rat], p: usize) -> Option<Rat> {
    poset.lower_covers(p).iter().map(|&q| &x[q]).max().cloned()
}

/// `φ_t(x)_p = x_p − t_p · max_{q≺p} x_q`.
pub fn transfer_phi(poset: &MarkedPoset, t: &Parameter, x: &[Rat]) -> Vec<Rat> {
    let tv = t.values(poset);
    (0..poset.len())
        .map(|p| match max_below(poset, x, p) {
            Some(m) if !tv[p].is_zero() => &x[p] - &tv[p] * m,
            _ => x[p].clone(),
        })
        .collect()
}

/// `ψ_t(y)_p = y_p + t_p · max_{q≺p} ψ_t(y)_q`, evaluated along a linear
/// extension.
pub fn transfer_psi(poset: &MarkedPoset, t: &Parameter, y: &[Rat]) -> Vec<Rat> {
    let tv = t.values(poset);
    let mut x: Vec<Rat> = y.to_vec();
    for &p in poset.topological_order() {
        if tv[p].is_zero() {
            continue;
        }
        if let Some(m) = max_below(poset, &x, p) {
            x[p] = &y[p] + &tv[p] * m;
        }
    }
    x
}

/// `ψ_t` as a maximum over saturated chains `p_0 ≺ ⋯ ≺ p_r = p` from a
/// marked element, of `t_{p_1}⋯t_{p_r} y_{p_0} + ⋯ + y_{p_r}`.
pub fn transfer_psi_closed(poset: &MarkedPoset, t: &Parameter, y: &[Rat]) -> Vec<Rat> {
    let tv = t.values(poset);
    (0..poset.len())
        .map(|p| {
            if poset.is_marked(p) {
                return y[p].clone();
            }
            poset
                .saturated_chains_to(p)
                .iter()
                .map(|c| {
                    let mut sum = y[p].clone();
                    let mut weight = tv[p].clone();
                    for &q in c.elements.iter().rev() {
                        sum += &weight * &y[q];
                        weight *= &tv[q];
                    }
                    sum
                })
                .max()
                .unwrap_or_else(|| y[p].clone())
        })
        .collect()
}

/// `θ_{t,t'} = φ_{t'} ∘ ψ_t`.
pub fn transfer_theta(poset: &MarkedPoset, t: &Parameter, t2: &Parameter, y: &[Rat]) -> Vec<Rat> {
    transfer_phi(poset, t2, &transfer_psi(poset, t, y))
}

/// `ι_λ`: fills marked coordinates with the marking.
pub fn lift(poset: &MarkedPoset, y: &[Rat]) -> Vec<Rat> {
    let un = poset.unmarked();
    assert_eq!(y.len(), un.len(), "projected vector has wrong length");
    let mut x: Vec<Rat> = (0..poset.len())
        .map(|p| poset.marking(p).cloned().unwrap_or_else(Rat::zero))
        .collect();
    for (v, p) in y.iter().zip(un) {
        x[p] = v.clone();
    }
    x
}

/// `π_P̃`: keeps the unmarked coordinates.
pub fn project_point(poset: &MarkedPoset, x: &[Rat]) -> Vec<Rat> {
    poset.unmarked().into_iter().map(|p| x[p].clone()).collect()
}

pub fn projected_phi(poset: &MarkedPoset, t: &Parameter, y: &[Rat]) -> Vec<Rat> {
    project_point(poset, &transfer_phi(poset, t, &lift(poset, y)))
}

pub fn projected_psi(poset: &MarkedPoset, t: &Parameter, y: &[Rat]) -> Vec<Rat> {
    project_point(poset, &transfer_psi(poset, t, &lift(poset, y)))
}

pub fn projected_theta(poset: &MarkedPoset, t: &Parameter, t2: &Parameter, y: &[Rat]) -> Vec<Rat> {
    project_point(poset, &transfer_theta(poset, t, t2, &lift(poset, y)))
}

/// For each element, the lower covers attaining the maximum (`q ⊣_x p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximizingRelation {
    pub argmax: Vec<Vec<usize>>,
}

impl MaximizingRelation {
    pub fn holds(&self, q: usize, p: usize) -> bool {
        self.argmax[p].contains(&q)
    }

    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        self.argmax
            .iter()
            .enumerate()
            .flat_map(|(p, qs)| qs.iter().map(move |&q| (q, p)))
            .collect()
    }
}

pub fn maximizing_relation(poset: &MarkedPoset, x: &[Rat]) -> MaximizingRelation {
    let argmax = (0..poset.len())
        .map(|p| {
            let Some(m) = max_below(poset, x, p) else {
                return Vec::new();
            };
            let mut qs: Vec<usize> = poset
                .lower_covers(p)
                .iter()
                .copied()
                .filter(|&q| x[q] == m)
                .collect();
            poset.sort_by_name(&mut qs);
            qs
        })
        .collect();
    MaximizingRelation { argmax }
}

/// Whether `φ_t(x)` attains equality in the chain's inequality, decided from
/// `x ∈ O(P, λ)` alone through the maximizing relation.
pub fn tightness(poset: &MarkedPoset, t: &Parameter, x: &[Rat], chain: &SaturatedChain) -> bool {
    let tv = t.values(poset);
    let p = chain.target;
    let rel = maximizing_relation(poset, x);
    if tv[p].is_one() {
        return max_below(poset, x, p).is_some_and(|m| x[p] == m);
    }
    let els = &chain.elements;
    let r = els.len() - 1;
    if x[p] != x[els[r]] {
        return false;
    }
    // Smallest k ≥ 1 with t_{p_i} > 0 for all i ≥ k.
    let mut k = r + 1;
    while k > 1 && !tv[els[k - 1]].is_zero() {
        k -= 1;
    }
    (k..=r).all(|i| rel.holds(els[i - 1], els[i]))
}

/// The same question answered by substituting `φ_t(x)` into the inequality.
pub fn tightness_by_substitution(
    poset: &MarkedPoset,
    t: &Parameter,
    x: &[Rat],
    chain: &SaturatedChain,
) -> bool {
    let tv = t.values(poset);
    let y = transfer_phi(poset, t, x);
    let p = chain.target;
    let mut lhs = Rat::zero();
    let mut weight = Rat::one() - &tv[p];
    for (i, &q) in chain.elements.iter().enumerate().rev() {
        lhs += &weight * &y[q];
        if i > 0 {
            weight *= &tv[q];
        }
    }
    lhs == y[p]
}

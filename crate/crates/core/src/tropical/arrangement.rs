use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::poset::MarkedPoset;
use crate::rational::Rat;

/// `α(x) = max_{i ∈ support} (x_i + c_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalHyperplane {
    pub label: String,
    pub support: Vec<usize>,
    #[serde(skip)]
    pub coeffs: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalArrangement {
    pub coords: Vec<String>,
    pub hyperplanes: Vec<TropicalHyperplane>,
}

/// Signature of a point: the maximizing support indices per hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropCovector {
    pub entries: Vec<Vec<usize>>,
}

impl TropCovector {
    pub fn is_maximal(&self) -> bool {
        self.entries.iter().all(|e| e.len() == 1)
    }

    pub fn named(&self, arr: &TropicalArrangement) -> BTreeMap<String, Vec<String>> {
        arr.hyperplanes
            .iter()
            .zip(&self.entries)
            .map(|(h, e)| {
                (
                    h.label.clone(),
                    e.iter().map(|&i| arr.coords[i].clone()).collect(),
                )
            })
            .collect()
    }
}

impl TropicalArrangement {
    /// One hyperplane per unmarked element covering at least two elements,
    /// with the lower covers as support and zero coefficients.
    pub fn from_poset(poset: &MarkedPoset) -> Self {
        let mut hyperplanes: Vec<TropicalHyperplane> = poset
            .unmarked()
            .into_iter()
            .filter(|&p| poset.lower_covers(p).len() >= 2)
            .map(|p| {
                let mut support = poset.lower_covers(p).to_vec();
                poset.sort_by_name(&mut support);
                let coeffs = vec![Rat::zero(); support.len()];
                TropicalHyperplane {
                    label: poset.name(p).to_string(),
                    support,
                    coeffs,
                }
            })
            .collect();
        hyperplanes.sort_by(|a, b| a.label.cmp(&b.label));
        TropicalArrangement {
            coords: poset.elements().to_vec(),
            hyperplanes,
        }
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn covector(&self, x: &[Rat]) -> TropCovector {
        let entries = self
            .hyperplanes
            .iter()
            .map(|h| {
                let vals: Vec<Rat> = h
                    .support
                    .iter()
                    .zip(&h.coeffs)
                    .map(|(&i, c)| &x[i] + c)
                    .collect();
                let m = vals.iter().max().expect("support is nonempty");
                h.support
                    .iter()
                    .zip(&vals)
                    .filter(|(_, v)| *v == m)
                    .map(|(&i, _)| i)
                    .collect()
            })
            .collect();
        TropCovector { entries }
    }
}

pub fn arrangement(poset: &MarkedPoset) -> TropicalArrangement {
    TropicalArrangement::from_poset(poset)
}

pub fn covector(arr: &TropicalArrangement, x: &[Rat]) -> TropCovector {
    arr.covector(x)
}

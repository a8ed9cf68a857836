//! Seeded random marked posets and helpers shared by integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mpp_core::family::Parameter;
use mpp_core::rational::{int, rat};
use mpp_core::{MarkedPoset, Rat};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct GenOptions {
    pub max_unmarked: usize,
    pub max_elements: usize,
    /// Every unmarked element lies below some marked element.
    pub bounded: bool,
    /// Marked elements are strictly increasing along the order.
    pub strict: bool,
    /// Relations only between consecutive levels, markings increasing with level.
    pub ranked: bool,
}

impl GenOptions {
    pub fn bounded(max_unmarked: usize) -> Self {
        GenOptions {
            max_unmarked,
            max_elements: max_unmarked + 4,
            bounded: true,
            strict: false,
            ranked: false,
        }
    }
}

/// A random valid marked poset with all minimal elements marked and an
/// order-preserving integral marking.
pub fn random_poset(rng: &mut ChaCha8Rng, opts: GenOptions) -> MarkedPoset {
    let n_unmarked = rng.gen_range(1..=opts.max_unmarked);
    let levels = rng.gen_range(1..=n_unmarked.min(3));
    let room = opts.max_elements.saturating_sub(n_unmarked).max(2);

    // (name, level, marked)
    let mut elems: Vec<(String, usize, bool)> = Vec::new();
    let mut marked_count = 0;
    let mut add_marked = |elems: &mut Vec<(String, usize, bool)>, level: usize| {
        elems.push((format!("a{marked_count}"), level, true));
        marked_count += 1;
    };
    add_marked(&mut elems, 0);
    if room >= 4 && rng.gen_bool(0.4) {
        add_marked(&mut elems, 0);
    }
    let has_top = opts.bounded || rng.gen_bool(0.5);
    if has_top {
        add_marked(&mut elems, levels + 1);
        if elems.len() < room && rng.gen_bool(0.3) {
            add_marked(&mut elems, levels + 1);
        }
    }
    while elems.len() < room && rng.gen_bool(0.25) {
        let l = rng.gen_range(1..=levels);
        add_marked(&mut elems, l);
    }
    for i in 0..n_unmarked {
        let l = if i < levels {
            i + 1
        } else {
            rng.gen_range(1..=levels)
        };
        elems.push((format!("p{i}"), l, false));
    }
    let top_level = elems.iter().map(|e| e.1).max().unwrap();

    let n = elems.len();
    let mut rel = vec![vec![false; n]; n];
    let candidates = |level: usize, pick_lower: bool, ranked: bool| -> Vec<usize> {
        (0..n)
            .filter(|&j| {
                let lj = elems[j].1;
                match (pick_lower, ranked) {
                    (true, true) => lj + 1 == level,
                    (true, false) => lj < level,
                    (false, true) => lj == level + 1,
                    (false, false) => lj > level,
                }
            })
            .collect()
    };
    for i in 0..n {
        let l = elems[i].1;
        if l == 0 {
            continue;
        }
        let mut lower = candidates(l, true, opts.ranked);
        if lower.is_empty() {
            lower = candidates(l, true, false);
        }
        lower.shuffle(rng);
        let k = rng.gen_range(1..=lower.len().min(3));
        for &j in &lower[..k] {
            rel[j][i] = true;
        }
    }
    for i in 0..n {
        let l = elems[i].1;
        if l == top_level || (0..n).any(|j| rel[i][j]) {
            continue;
        }
        let unmarked = !elems[i].2;
        if !opts.bounded && unmarked && rng.gen_bool(0.5) {
            continue;
        }
        let mut upper = candidates(l, false, opts.ranked);
        if upper.is_empty() {
            upper = candidates(l, false, false);
        }
        if let Some(&j) = upper.choose(rng) {
            rel[i][j] = true;
        }
    }

    // Transitive closure, then reduction to covering pairs.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| elems[i].1);
    let mut leq = rel.clone();
    for &k in &order {
        let through = leq[k].clone();
        for row in leq.iter_mut().filter(|row| row[k]) {
            for (x, &y) in row.iter_mut().zip(&through) {
                *x |= y;
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] && !(0..n).any(|m| m != i && m != j && leq[i][m] && leq[m][j]) {
                covers.push((elems[i].0.clone(), elems[j].0.clone()));
            }
        }
    }

    // Marking: nondecreasing in the level, strictly increasing when asked.
    let mut value = vec![0i64; top_level + 2];
    for l in 1..value.len() {
        let step = if opts.strict || opts.ranked {
            rng.gen_range(1..=2)
        } else {
            rng.gen_range(0..=2)
        };
        value[l] = value[l - 1] + step;
    }
    let marking: BTreeMap<String, Rat> = elems
        .iter()
        .filter(|e| e.2)
        .map(|e| (e.0.clone(), int(value[e.1])))
        .collect();
    let names: Vec<String> = elems.iter().map(|e| e.0.clone()).collect();
    let p = MarkedPoset::new(&names, &covers, &marking).expect("generated poset is well formed");
    p.ensure_valid().expect("generated poset is valid");
    p
}

/// A random rational in `[lo, hi]` with denominator at most `den`.
pub fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rat {
    let d = rng.gen_range(1..=den);
    rat(rng.gen_range(lo * d..=hi * d), d)
}

/// A random parameter with each coordinate in the open interval.
pub fn random_interior(rng: &mut ChaCha8Rng, poset: &MarkedPoset) -> Parameter {
    let t = poset
        .names(&poset.unmarked())
        .into_iter()
        .map(|n| {
            let d = rng.gen_range(2..=7);
            (n, rat(rng.gen_range(1..d), d))
        })
        .collect();
    Parameter { t }
}

/// A random parameter in the closed cube, hitting 0 and 1 often.
pub fn random_closed(rng: &mut ChaCha8Rng, poset: &MarkedPoset) -> Parameter {
    let t = poset
        .names(&poset.unmarked())
        .into_iter()
        .map(|n| {
            let v = match rng.gen_range(0..4) {
                0 => int(0),
                1 => int(1),
                _ => {
                    let d = rng.gen_range(2..=7);
                    rat(rng.gen_range(1..d), d)
                }
            };
            (n, v)
        })
        .collect();
    Parameter { t }
}

/// Random bounded posets from consecutive seeds, skipping any that fail `keep`.
pub fn bounded_posets(
    seed: u64,
    count: usize,
    opts: GenOptions,
    keep: impl Fn(&MarkedPoset) -> bool,
) -> Vec<MarkedPoset> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(
            tries < 100 * count + 1000,
            "generator cannot satisfy the filter"
        );
        let p = random_poset(&mut r, opts);
        if keep(&p) {
            out.push(p);
        }
    }
    out
}

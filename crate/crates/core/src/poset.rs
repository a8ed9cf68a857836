//! Finite marked posets, their saturated chains, and the transformations
//! that make a marking strict and its covering relations non-redundant.
//!
//! Elements are addressed by their position in the element list. Every
//! set-valued answer is returned sorted by element identifier.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use log::warn;

use crate::rational::{format_rat, is_integral, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("marking is not strict: {0}")]
    NotStrictlyMarked(String),
    #[error("invalid marked poset: {0}")]
    Invalid(String),
}

/// One violated marked-poset invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Cycle(Vec<String>),
    NotCovering {
        lower: String,
        upper: String,
        between: String,
    },
    MarkingNotOrderPreserving {
        lower: String,
        upper: String,
    },
    UnmarkedMinimal(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle(elems) => write!(f, "cycle through {}", elems.join(", ")),
            Violation::NotCovering {
                lower,
                upper,
                between,
            } => write!(
                f,
                "({lower}, {upper}) is not a covering relation: {between} lies strictly between"
            ),
            Violation::MarkingNotOrderPreserving { lower, upper } => write!(
                f,
                "marking not order-preserving: {lower} <= {upper} but its marking is larger"
            ),
            Violation::UnmarkedMinimal(p) => write!(f, "minimal element {p} is unmarked"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

/// A chain `p_0 ≺ p_1 ≺ ⋯ ≺ p_r ≺ target` with `p_0` marked and the
/// interior unmarked. `elements` holds `p_0, …, p_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaturatedChain {
    pub elements: Vec<usize>,
    pub target: usize,
}

impl SaturatedChain {
    pub fn start(&self) -> usize {
        self.elements[0]
    }

    pub fn last(&self) -> usize {
        *self
            .elements
            .last()
            .expect("saturated chain is never empty")
    }

    /// Number of unmarked interior elements.
    pub fn interior_len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn describe(&self, poset: &MarkedPoset) -> String {
        let mut parts: Vec<&str> = self.elements.iter().map(|&i| poset.name(i)).collect();
        parts.push(poset.name(self.target));
        parts.join("<")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    pub ranks: Vec<i64>,
}

impl RankFunction {
    pub fn rank(&self, p: usize) -> i64 {
        self.ranks[p]
    }
}

/// Maps each element identifier of a poset to an identifier of its image.
pub type ElementMap = BTreeMap<String, String>;

#[derive(Debug, Clone)]
pub struct MarkedPoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    covers: BTreeSet<(usize, usize)>,
    marking: Vec<Option<Rat>>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    topo: Option<Vec<usize>>,
}

impl PartialEq for MarkedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
            && self.covers == other.covers
            && self.marking == other.marking
    }
}

impl Eq for MarkedPoset {}

impl MarkedPoset {
    pub fn new<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
        marking: &BTreeMap<String, Rat>,
    ) -> Result<Self, PosetError> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.to_string()))
        };
        let mut cover_set = BTreeSet::new();
        for (p, q) in covers {
            cover_set.insert((lookup(p.as_ref())?, lookup(q.as_ref())?));
        }
        let mut mark = vec![None; elements.len()];
        for (name, value) in marking {
            mark[lookup(name)?] = Some(value.clone());
        }
        Ok(Self::from_parts(elements, cover_set, mark))
    }

    pub(crate) fn from_parts(
        elements: Vec<String>,
        covers: BTreeSet<(usize, usize)>,
        marking: Vec<Option<Rat>>,
    ) -> Self {
        let n = elements.len();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(p, q) in &covers {
            upper[p].push(q);
            lower[q].push(p);
        }
        let by_name = |v: &mut Vec<usize>| v.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
        lower.iter_mut().for_each(by_name);
        upper.iter_mut().for_each(by_name);

        let mut leq = vec![vec![false; n]; n];
        for (s, row) in leq.iter_mut().enumerate() {
            let mut stack = vec![s];
            row[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &upper[x] {
                    if !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }

        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<(String, usize)> = (0..n)
            .filter(|&i| indeg[i] == 0)
            .map(|i| (elements[i].clone(), i))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(first) = ready.iter().next().cloned() {
            ready.remove(&first);
            let x = first.1;
            order.push(x);
            for &y in &upper[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert((elements[y].clone(), y));
                }
            }
        }
        let topo = (order.len() == n).then_some(order);

        MarkedPoset {
            elements,
            index,
            covers,
            marking,
            lower,
            upper,
            leq,
            topo,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, p: usize) -> &str {
        &self.elements[p]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn expect_index(&self, name: &str) -> usize {
        self.index_of(name)
            .unwrap_or_else(|| panic!("no element named {name:?}"))
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.covers.iter().copied()
    }

    pub fn cover_count(&self) -> usize {
        self.covers.len()
    }

    pub fn is_cover(&self, p: usize, q: usize) -> bool {
        self.covers.contains(&(p, q))
    }

    /// Elements covered by `p`, sorted by name.
    pub fn lower_covers(&self, p: usize) -> &[usize] {
        &self.lower[p]
    }

    /// Elements covering `p`, sorted by name.
    pub fn upper_covers(&self, p: usize) -> &[usize] {
        &self.upper[p]
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq[p][q]
    }

    pub fn is_marked(&self, p: usize) -> bool {
        self.marking[p].is_some()
    }

    pub fn marking(&self, p: usize) -> Option<&Rat> {
        self.marking[p].as_ref()
    }

    pub fn marking_map(&self) -> BTreeMap<String, Rat> {
        self.marking
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.as_ref().map(|v| (self.elements[i].clone(), v.clone())))
            .collect()
    }

    /// Marked elements, in element order.
    pub fn marked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.is_marked(p)).collect()
    }

    /// Unmarked elements, in element order. This is the coordinate order
    /// of every projected vector.
    pub fn unmarked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| !self.is_marked(p)).collect()
    }

    pub fn topological_order(&self) -> &[usize] {
        self.topo
            .as_deref()
            .expect("covering relations contain a cycle")
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo.is_some()
    }

    pub fn sort_by_name(&self, v: &mut [usize]) {
        v.sort_by(|&a, &b| self.elements[a].cmp(&self.elements[b]));
    }

    pub fn names(&self, v: &[usize]) -> Vec<String> {
        v.iter().map(|&i| self.elements[i].clone()).collect()
    }

    pub fn is_minimal(&self, p: usize) -> bool {
        self.lower[p].is_empty()
    }

    pub fn is_maximal(&self, p: usize) -> bool {
        self.upper[p].is_empty()
    }

    /// True when every minimal and every maximal element is marked, which
    /// makes every member of the family bounded.
    pub fn all_extremal_marked(&self) -> bool {
        (0..self.len()).all(|p| self.is_marked(p) || (!self.is_minimal(p) && !self.is_maximal(p)))
    }

    pub fn is_integrally_marked(&self) -> bool {
        self.marking.iter().flatten().all(is_integral)
    }

    /// `a < b` marked implies `λ(a) < λ(b)`.
    pub fn is_strictly_marked(&self) -> bool {
        self.strictness_witness().is_none()
    }

    fn strictness_witness(&self) -> Option<(usize, usize)> {
        let marked = self.marked();
        for &a in &marked {
            for &b in &marked {
                if self.lt(a, b) && self.marking(a) >= self.marking(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.len();
        if self.topo.is_none() {
            let mut on_cycle: Vec<usize> = (0..n)
                .filter(|&p| self.upper[p].iter().any(|&q| self.leq[q][p]))
                .collect();
            self.sort_by_name(&mut on_cycle);
            violations.push(Violation::Cycle(self.names(&on_cycle)));
        } else {
            for &(p, q) in &self.covers {
                let mut between: Vec<usize> = (0..n)
                    .filter(|&r| r != p && r != q && self.leq[p][r] && self.leq[r][q])
                    .collect();
                if !between.is_empty() {
                    self.sort_by_name(&mut between);
                    violations.push(Violation::NotCovering {
                        lower: self.elements[p].clone(),
                        upper: self.elements[q].clone(),
                        between: self.elements[between[0]].clone(),
                    });
                }
            }
        }
        let marked = self.marked();
        for &a in &marked {
            for &b in &marked {
                if a != b && self.leq[a][b] && self.marking(a) > self.marking(b) {
                    violations.push(Violation::MarkingNotOrderPreserving {
                        lower: self.elements[a].clone(),
                        upper: self.elements[b].clone(),
                    });
                }
            }
        }
        let mut unmarked_minimal: Vec<usize> = (0..n)
            .filter(|&p| self.lower[p].is_empty() && !self.is_marked(p))
            .collect();
        self.sort_by_name(&mut unmarked_minimal);
        for p in unmarked_minimal {
            violations.push(Violation::UnmarkedMinimal(self.elements[p].clone()));
        }
        ValidationReport { violations }
    }

    /// Error-returning form of [`MarkedPoset::validate`].
    pub fn ensure_valid(&self) -> Result<(), PosetError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(PosetError::Invalid(report.messages().join("; ")))
        }
    }

    /// All saturated chains `p_0 ≺ ⋯ ≺ p_r ≺ p` with `p_0` marked and
    /// `p_1, …, p_r` unmarked, in lexicographic order of element names.
    pub fn saturated_chains_to(&self, p: usize) -> Vec<SaturatedChain> {
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        let mut out: Vec<SaturatedChain> = self
            .prefixes_into(p, &mut memo)
            .into_iter()
            .map(|elements| SaturatedChain {
                elements,
                target: p,
            })
            .collect();
        out.sort_by(|a, b| {
            self.chain_key(&a.elements)
                .cmp(&self.chain_key(&b.elements))
        });
        out
    }

    /// Every saturated chain of the poset, grouped by target in element order.
    pub fn all_saturated_chains(&self) -> Vec<SaturatedChain> {
        (0..self.len())
            .flat_map(|p| self.saturated_chains_to(p))
            .collect()
    }

    fn chain_key<'a>(&'a self, chain: &[usize]) -> Vec<&'a str> {
        chain.iter().map(|&i| self.elements[i].as_str()).collect()
    }

    // Sequences p_0 … p_r such that p_r ≺ p, p_0 marked, rest unmarked.
    fn prefixes_into(
        &self,
        p: usize,
        memo: &mut HashMap<usize, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for &q in &self.lower[p] {
            if self.is_marked(q) {
                out.push(vec![q]);
            } else {
                if !memo.contains_key(&q) {
                    let sub = self.prefixes_into(q, memo);
                    memo.insert(q, sub);
                }
                for prefix in &memo[&q] {
                    let mut chain = prefix.clone();
                    chain.push(q);
                    out.push(chain);
                }
            }
        }
        out
    }

    /// Blocks of the equivalence relation generated by `a ~ p ~ b` for
    /// `a ≤ p ≤ b` with `a ≠ b` marked and `λ(a) = λ(b)`. Only blocks with at
    /// least two elements are returned.
    pub fn constant_intervals(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let marked = self.marked();
        for &a in &marked {
            for &b in &marked {
                if a != b && self.leq[a][b] && self.marking(a) == self.marking(b) {
                    for p in 0..n {
                        if self.leq[a][p] && self.leq[p][b] {
                            let (ra, rp) = (find(&mut parent, a), find(&mut parent, p));
                            parent[rp] = ra;
                        }
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for p in 0..n {
            let r = find(&mut parent, p);
            classes.entry(r).or_default().push(p);
        }
        let mut blocks: Vec<Vec<usize>> = classes
            .into_values()
            .filter(|c| c.len() >= 2)
            .map(|mut c| {
                self.sort_by_name(&mut c);
                c
            })
            .collect();
        blocks.sort_by(|a, b| self.chain_key(a).cmp(&self.chain_key(b)));
        blocks
    }

    /// Quotient by the constant-interval blocks. Blocks are named by their
    /// members joined with `~` in name order and carry the common marking.
    pub fn contract_constant_intervals(&self) -> (MarkedPoset, ElementMap) {
        let blocks = self.constant_intervals();
        let n = self.len();
        let mut block_of: Vec<Option<usize>> = vec![None; n];
        for (i, b) in blocks.iter().enumerate() {
            for &p in b {
                block_of[p] = Some(i);
            }
        }
        // quotient element for each original element, in first-seen order
        let mut new_names = Vec::new();
        let mut new_marking = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut block_image: Vec<Option<usize>> = vec![None; blocks.len()];
        for p in 0..n {
            match block_of[p] {
                None => {
                    image[p] = new_names.len();
                    new_names.push(self.elements[p].clone());
                    new_marking.push(self.marking[p].clone());
                }
                Some(b) => {
                    if let Some(idx) = block_image[b] {
                        image[p] = idx;
                    } else {
                        let idx = new_names.len();
                        block_image[b] = Some(idx);
                        image[p] = idx;
                        let name = blocks[b]
                            .iter()
                            .map(|&x| self.elements[x].as_str())
                            .collect::<Vec<_>>()
                            .join("~");
                        new_names.push(name);
                        let value = blocks[b]
                            .iter()
                            .find_map(|&x| self.marking[x].clone())
                            .expect("constant-interval block contains a marked element");
                        new_marking.push(Some(value));
                    }
                }
            }
        }
        let m = new_names.len();
        let mut rel = vec![vec![false; m]; m];
        for p in 0..n {
            for q in 0..n {
                if self.leq[p][q] {
                    rel[image[p]][image[q]] = true;
                }
            }
        }
        for k in 0..m {
            let through = rel[k].clone();
            for row in rel.iter_mut().filter(|row| row[k]) {
                for (x, &y) in row.iter_mut().zip(&through) {
                    *x |= y;
                }
            }
        }
        let covers = transitive_reduction(&rel);
        let map = (0..n)
            .map(|p| (self.elements[p].clone(), new_names[image[p]].clone()))
            .collect();
        (MarkedPoset::from_parts(new_names, covers, new_marking), map)
    }

    /// `p ≺ q` is redundant when marked `a ≤ q`, `p ≤ b` exist with `a ≠ b`
    /// and `λ(a) ≥ λ(b)`.
    pub fn is_redundant_cover(&self, p: usize, q: usize) -> bool {
        let marked = self.marked();
        marked.iter().any(|&a| {
            self.leq[a][q]
                && marked
                    .iter()
                    .any(|&b| a != b && self.leq[p][b] && self.marking(a) >= self.marking(b))
        })
    }

    pub fn redundant_covers(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .copied()
            .filter(|&(p, q)| self.is_redundant_cover(p, q))
            .collect()
    }

    /// Strictly marked with no redundant covering relation.
    pub fn is_regular(&self) -> bool {
        self.is_strictly_marked() && self.redundant_covers().is_empty()
    }

    /// Contracts constant intervals, then removes redundant covers. The map
    /// sends each original element to its element in the result.
    pub fn regularize(&self) -> Result<(MarkedPoset, ElementMap), PosetError> {
        let (contracted, map) = self.contract_constant_intervals();
        Ok((contracted.remove_redundant_covers()?, map))
    }

    /// Removes redundant covering relations one at a time, re-evaluating
    /// redundancy after each removal, until the poset is regular.
    pub fn remove_redundant_covers(&self) -> Result<MarkedPoset, PosetError> {
        if let Some((a, b)) = self.strictness_witness() {
            return Err(PosetError::NotStrictlyMarked(format!(
                "{} < {} with markings {} >= {}",
                self.elements[a],
                self.elements[b],
                format_rat(self.marking(a).unwrap()),
                format_rat(self.marking(b).unwrap()),
            )));
        }
        let one_pass: BTreeSet<(usize, usize)> = self
            .covers
            .iter()
            .copied()
            .filter(|&(p, q)| !self.is_redundant_cover(p, q))
            .collect();
        let mut current = self.clone();
        loop {
            let redundant = current.redundant_covers();
            let Some(&first) = redundant
                .iter()
                .min_by(|x, y| current.cover_key(**x).cmp(&current.cover_key(**y)))
            else {
                break;
            };
            let mut covers = current.covers.clone();
            covers.remove(&first);
            current =
                MarkedPoset::from_parts(current.elements.clone(), covers, current.marking.clone());
        }
        if current.covers != one_pass {
            warn!(
                "iterated redundant-cover removal kept {} covers, one-pass test keeps {}",
                current.covers.len(),
                one_pass.len()
            );
        }
        Ok(current)
    }

    /// Covers surviving a single non-redundancy test on `self`.
    pub fn non_redundant_covers(&self) -> BTreeSet<(usize, usize)> {
        self.covers
            .iter()
            .copied()
            .filter(|&(p, q)| !self.is_redundant_cover(p, q))
            .collect()
    }

    fn cover_key(&self, (p, q): (usize, usize)) -> (&str, &str) {
        (&self.elements[p], &self.elements[q])
    }

    /// Number of saturated chains `s ≺ q_1 ≺ ⋯ ≺ q_k ≺ q` with `s ∉ chain`
    /// and every `q_i ∈ chain` (downward), and the number of chains
    /// `q ≺ q_1 ≺ ⋯ ≺ q_k ≺ s` of the same kind (upward).
    pub fn chain_order_counts(&self, q: usize, chain: &BTreeSet<usize>) -> (u64, u64) {
        fn count(
            poset: &MarkedPoset,
            x: usize,
            chain: &BTreeSet<usize>,
            down: bool,
            memo: &mut HashMap<usize, u64>,
        ) -> u64 {
            let next = if down {
                poset.lower_covers(x)
            } else {
                poset.upper_covers(x)
            };
            let mut total = 0;
            for &y in next {
                if chain.contains(&y) {
                    if let Some(&c) = memo.get(&y) {
                        total += c;
                    } else {
                        let c = count(poset, y, chain, down, memo);
                        memo.insert(y, c);
                        total += c;
                    }
                } else {
                    total += 1;
                }
            }
            total
        }
        let down = count(self, q, chain, true, &mut HashMap::new());
        let up = count(self, q, chain, false, &mut HashMap::new());
        (down, up)
    }

    /// Chain-order star elements of the partition `C ⊔ O` of the unmarked
    /// elements.
    pub fn star_elements(&self, chain: &BTreeSet<usize>, order: &BTreeSet<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&q| {
                let (k, l) = self.chain_order_counts(q, chain);
                k >= 2 && l >= 2
            })
            .collect();
        self.sort_by_name(&mut out);
        out
    }

    /// Unmarked `p` covered by at least two elements and reached by at least
    /// two saturated chains from marked elements.
    pub fn is_star_element(&self, p: usize) -> bool {
        !self.is_marked(p) && self.upper[p].len() >= 2 && self.saturated_chains_to(p).len() >= 2
    }

    /// A rank function with minimum rank 0, if one exists.
    ///
    /// Ranks inside a connected component are forced by the covering
    /// relations. The offsets between components are solved as a system of
    /// difference constraints so that marked elements of lower rank always
    /// carry smaller markings.
    pub fn rank_function(&self) -> Option<RankFunction> {
        let n = self.len();
        let mut rank: Vec<Option<i64>> = vec![None; n];
        let mut component = vec![usize::MAX; n];
        let mut components = 0;
        for s in 0..n {
            if rank[s].is_some() {
                continue;
            }
            rank[s] = Some(0);
            component[s] = components;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let rx = rank[x].unwrap();
                let neighbours = self.upper[x]
                    .iter()
                    .map(|&y| (y, rx + 1))
                    .chain(self.lower[x].iter().map(|&y| (y, rx - 1)));
                for (y, ry) in neighbours {
                    match rank[y] {
                        None => {
                            rank[y] = Some(ry);
                            component[y] = components;
                            stack.push(y);
                        }
                        Some(r) if r != ry => return None,
                        Some(_) => {}
                    }
                }
            }
            components += 1;
        }
        let rank: Vec<i64> = rank.into_iter().map(Option::unwrap).collect();

        // shift[d] - shift[c] <= rank[a] - rank[b] whenever λ(a) >= λ(b),
        // a in component c, b in component d.
        let marked = self.marked();
        let mut edges = Vec::new();
        for &a in &marked {
            for &b in &marked {
                if a == b || self.marking(a) < self.marking(b) {
                    continue;
                }
                let (c, d) = (component[a], component[b]);
                if c == d {
                    if rank[a] < rank[b] {
                        return None;
                    }
                } else {
                    edges.push((c, d, rank[a] - rank[b]));
                }
            }
        }
        let mut shift = vec![0i64; components];
        for round in 0..=components {
            let mut changed = false;
            for &(c, d, w) in &edges {
                if shift[c] + w < shift[d] {
                    shift[d] = shift[c] + w;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            if round == components {
                return None;
            }
        }
        let mut ranks: Vec<i64> = (0..n).map(|p| rank[p] + shift[component[p]]).collect();
        let min = ranks.iter().copied().min().unwrap_or(0);
        ranks.iter_mut().for_each(|r| *r -= min);
        Some(RankFunction { ranks })
    }

    pub fn is_ranked(&self) -> bool {
        self.rank_function().is_some()
    }
}

fn transitive_reduction(rel: &[Vec<bool>]) -> BTreeSet<(usize, usize)> {
    let m = rel.len();
    let mut covers = BTreeSet::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || !rel[i][j] {
                continue;
            }
            let between = (0..m).any(|k| k != i && k != j && rel[i][k] && rel[k][j]);
            if !between {
                covers.insert((i, j));
            }
        }
    }
    covers
}

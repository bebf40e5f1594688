//! Finite partial orders with dense bit-matrix storage.
//!
//! The order is kept as one up-set row and one down-set row per element, so
//! `leq`, closures, and bound computations are block operations. Carriers in
//! the hundreds of elements stay comfortably fast; the representation is
//! quadratic in memory, which is the right trade for the sizes this crate
//! targets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElemSet;

/// Default cap on antichain table rows before enumeration gives up.
pub const DEFAULT_ANTICHAIN_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("order contains a cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error(
        "order relation is not transitive: {0:?} <= {1:?} <= {2:?} but {0:?} <= {2:?} is missing"
    )]
    NotTransitive(String, String, String),
    #[error("operation undefined on the empty poset")]
    EmptyPoset,
    #[error("operation undefined for the empty subset")]
    EmptySubset,
    #[error("antichain enumeration exceeded the cap of {cap} rows")]
    AntichainExplosion { cap: usize },
}

/// How the `pairs` of a [`PosetDoc`] are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// Pairs are covering relations; the order is their reflexive-transitive
    /// closure.
    Covers,
    /// Pairs are the full strict order; reflexivity is added and the input is
    /// validated for transitivity and antisymmetry.
    Order,
}

/// The JSON interchange form of a poset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDoc {
    pub labels: Vec<String>,
    pub pairs: Vec<(String, String)>,
    pub kind: PairKind,
}

/// A finite poset over labeled elements, indexed `0..size()`.
#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

impl Poset {
    /// Builds a poset from labels and related pairs. Self-pairs and duplicate
    /// pairs are ignored. With [`PairKind::Covers`] the transitive closure is
    /// computed; with [`PairKind::Order`] the pairs must already be a strict
    /// order and are validated as such.
    pub fn build(
        labels: Vec<String>,
        pairs: &[(String, String)],
        kind: PairKind,
    ) -> Result<Poset, PosetError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }

        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = *index
                .get(a)
                .ok_or_else(|| PosetError::UnknownLabel(a.clone()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| PosetError::UnknownLabel(b.clone()))?;
            if ia != ib {
                edges.push((ia, ib));
            }
        }

        let mut up: Vec<ElemSet> = (0..n).map(|i| ElemSet::from_indices(n, [i])).collect();
        for &(a, b) in &edges {
            up[a].insert(b);
        }

        if kind == PairKind::Covers {
            // Reflexive-transitive closure by fixpoint iteration.
            let mut changed = true;
            while changed {
                changed = false;
                for i in 0..n {
                    for j in up[i].indices() {
                        if j != i {
                            let row = up[j].clone();
                            changed |= up[i].union_with(&row);
                        }
                    }
                }
            }
        }

        // Antisymmetry: mutual reachability is a cycle.
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::CycleDetected(cycle_witness(
                        &labels, &edges, i, j,
                    )));
                }
            }
        }

        if kind == PairKind::Order {
            for i in 0..n {
                for j in up[i].indices() {
                    if j != i && !up[j].is_subset_of(&up[i]) {
                        let k = up[j].minus(&up[i]).first().unwrap();
                        return Err(PosetError::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }

        let mut down: Vec<ElemSet> = (0..n).map(|_| ElemSet::new(n)).collect();
        for (i, ui) in up.iter().enumerate() {
            for j in ui.iter() {
                down[j].insert(i);
            }
        }

        Ok(Poset {
            labels,
            index,
            up,
            down,
        })
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Poset, PosetError> {
        Poset::build(doc.labels.clone(), &doc.pairs, doc.kind)
    }

    /// Serializes as covering pairs; rebuilding yields the same order.
    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            labels: self.labels.clone(),
            pairs: self
                .covers()
                .into_iter()
                .map(|(x, y)| (self.labels[x].clone(), self.labels[y].clone()))
                .collect(),
            kind: PairKind::Covers,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Is `x <= y`? Indices must be in range (panics otherwise, like slicing).
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{y : x <= y}`, including `x`.
    pub fn up_mask(&self, x: usize) -> &ElemSet {
        &self.up[x]
    }

    pub fn down_mask(&self, x: usize) -> &ElemSet {
        &self.down[x]
    }

    /// `{y : exists x in s, x <= y}`.
    pub fn upset(&self, s: &ElemSet) -> ElemSet {
        let mut r = ElemSet::new(self.size());
        for x in s.iter() {
            r.union_with(&self.up[x]);
        }
        r
    }

    pub fn downset(&self, s: &ElemSet) -> ElemSet {
        let mut r = ElemSet::new(self.size());
        for x in s.iter() {
            r.union_with(&self.down[x]);
        }
        r
    }

    /// `(minimal, maximal)` elements; both are empty only for the empty poset.
    pub fn extremal_elements(&self) -> (ElemSet, ElemSet) {
        let n = self.size();
        let mut min = ElemSet::new(n);
        let mut max = ElemSet::new(n);
        for i in 0..n {
            if self.down[i].len() == 1 {
                min.insert(i);
            }
            if self.up[i].len() == 1 {
                max.insert(i);
            }
        }
        (min, max)
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> Result<usize, PosetError> {
        let n = self.size();
        if n == 0 {
            return Err(PosetError::EmptyPoset);
        }
        // |down| is a topological key: x < y implies |down(x)| < |down(y)|.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.down[i].len());
        let mut h = vec![1usize; n];
        for &i in &order {
            for j in self.down[i].iter() {
                if j != i {
                    h[i] = h[i].max(h[j] + 1);
                }
            }
        }
        Ok(h.into_iter().max().unwrap())
    }

    /// Members of `s` with no other member strictly below them.
    pub fn minimal_of(&self, s: &ElemSet) -> ElemSet {
        let mut r = ElemSet::new(self.size());
        for x in s.iter() {
            if self.down[x].and(s).len() == 1 {
                r.insert(x);
            }
        }
        r
    }

    pub fn maximal_of(&self, s: &ElemSet) -> ElemSet {
        let mut r = ElemSet::new(self.size());
        for x in s.iter() {
            if self.up[x].and(s).len() == 1 {
                r.insert(x);
            }
        }
        r
    }

    /// Greatest lower bound of a nonempty set, if it exists.
    pub(crate) fn glb(&self, s: &ElemSet) -> Option<usize> {
        let mut common: Option<ElemSet> = None;
        for x in s.iter() {
            match common {
                None => common = Some(self.down[x].clone()),
                Some(ref mut c) => c.intersect_with(&self.down[x]),
            }
        }
        self.greatest_of(&common?)
    }

    pub(crate) fn lub(&self, s: &ElemSet) -> Option<usize> {
        let mut common: Option<ElemSet> = None;
        for x in s.iter() {
            match common {
                None => common = Some(self.up[x].clone()),
                Some(ref mut c) => c.intersect_with(&self.up[x]),
            }
        }
        self.least_of(&common?)
    }

    /// The unique member of `s` above all of `s`, if any.
    pub(crate) fn greatest_of(&self, s: &ElemSet) -> Option<usize> {
        s.iter().find(|&z| s.is_subset_of(&self.down[z]))
    }

    pub(crate) fn least_of(&self, s: &ElemSet) -> Option<usize> {
        s.iter().find(|&z| s.is_subset_of(&self.up[z]))
    }

    /// Meet of a nonempty subset. Since the meet of any set equals the meet
    /// of its minimal members, callers may min-reduce first; this computes the
    /// bound directly either way.
    pub fn meet_of(&self, s: &ElemSet) -> Result<Option<usize>, PosetError> {
        if s.is_empty() {
            return Err(PosetError::EmptySubset);
        }
        Ok(self.glb(s))
    }

    pub fn join_of(&self, s: &ElemSet) -> Result<Option<usize>, PosetError> {
        if s.is_empty() {
            return Err(PosetError::EmptySubset);
        }
        Ok(self.lub(s))
    }

    /// Is `x` join-prime: whenever `x <= join(T)` for a nonempty `T` with an
    /// existing join, some `t in T` has `x <= t`?
    ///
    /// Checked without subset enumeration: `x` fails exactly when some
    /// `z >= x` satisfies `join(downset({z}) \ upset({x})) = z`.
    pub fn is_join_prime(&self, x: usize) -> bool {
        for z in self.up[x].iter() {
            let d = self.down[z].minus(&self.up[x]);
            if !d.is_empty() && self.lub(&d) == Some(z) {
                return false;
            }
        }
        true
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size() {
            for y in self.up[x].iter() {
                if y != x && self.up[x].and(&self.down[y]).len() == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// All pairs `(x, y)` with `x < y`, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size() {
            for y in self.up[x].iter() {
                if y != x {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Visits antichains of `within` (ascending index order, sizes 2..=max)
    /// that have an existing meet, pruning branches whose common lower bounds
    /// vanish. The visitor returns false to abort; so does this function.
    pub(crate) fn for_each_meet_antichain(
        &self,
        within: &ElemSet,
        max_size: Option<usize>,
        visit: &mut dyn FnMut(&[usize], usize) -> bool,
    ) -> bool {
        if max_size == Some(0) || max_size == Some(1) {
            return true;
        }
        let mut chosen = Vec::new();
        self.meet_antichain_rec(
            max_size,
            visit,
            &mut chosen,
            within.clone(),
            ElemSet::full(self.size()),
        )
    }

    fn meet_antichain_rec(
        &self,
        max_size: Option<usize>,
        visit: &mut dyn FnMut(&[usize], usize) -> bool,
        chosen: &mut Vec<usize>,
        cands: ElemSet,
        lb: ElemSet,
    ) -> bool {
        for x in cands.iter() {
            let nlb = lb.and(&self.down[x]);
            if nlb.is_empty() {
                continue;
            }
            chosen.push(x);
            let mut keep = true;
            if chosen.len() >= 2 {
                if let Some(z) = self.greatest_of(&nlb) {
                    keep = visit(chosen, z);
                }
            }
            if keep && max_size.is_none_or(|m| chosen.len() < m) {
                // Restrict to indices above x that are incomparable to it.
                let mut ncands = cands.minus(&self.up[x]);
                ncands.subtract(&self.down[x]);
                for lo in ncands.clone().iter() {
                    if lo < x {
                        ncands.remove(lo);
                    } else {
                        break;
                    }
                }
                keep = self.meet_antichain_rec(max_size, visit, chosen, ncands, nlb);
            }
            chosen.pop();
            if !keep {
                return false;
            }
        }
        true
    }

    /// Dual of [`Poset::for_each_meet_antichain`]: antichains with an
    /// existing join, pruned on empty common upper bounds.
    pub(crate) fn for_each_join_antichain(
        &self,
        within: &ElemSet,
        max_size: Option<usize>,
        visit: &mut dyn FnMut(&[usize], usize) -> bool,
    ) -> bool {
        if max_size == Some(0) || max_size == Some(1) {
            return true;
        }
        let mut chosen = Vec::new();
        self.join_antichain_rec(
            max_size,
            visit,
            &mut chosen,
            within.clone(),
            ElemSet::full(self.size()),
        )
    }

    fn join_antichain_rec(
        &self,
        max_size: Option<usize>,
        visit: &mut dyn FnMut(&[usize], usize) -> bool,
        chosen: &mut Vec<usize>,
        cands: ElemSet,
        ub: ElemSet,
    ) -> bool {
        for x in cands.iter() {
            let nub = ub.and(&self.up[x]);
            if nub.is_empty() {
                continue;
            }
            chosen.push(x);
            let mut keep = true;
            if chosen.len() >= 2 {
                if let Some(z) = self.least_of(&nub) {
                    keep = visit(chosen, z);
                }
            }
            if keep && max_size.is_none_or(|m| chosen.len() < m) {
                let mut ncands = cands.minus(&self.up[x]);
                ncands.subtract(&self.down[x]);
                for lo in ncands.clone().iter() {
                    if lo < x {
                        ncands.remove(lo);
                    } else {
                        break;
                    }
                }
                keep = self.join_antichain_rec(max_size, visit, chosen, ncands, nub);
            }
            chosen.pop();
            if !keep {
                return false;
            }
        }
        true
    }

    /// All antichains (sizes 2..=max, min-reduced by construction) with an
    /// existing meet, as `(subset, meet)` rows in canonical DFS order.
    pub fn meet_table(
        &self,
        max_size: Option<usize>,
        cap: usize,
    ) -> Result<Vec<(Vec<usize>, usize)>, PosetError> {
        let mut rows = Vec::new();
        let mut overflow = false;
        let within = ElemSet::full(self.size());
        self.for_each_meet_antichain(&within, max_size, &mut |s, z| {
            if rows.len() >= cap {
                overflow = true;
                return false;
            }
            rows.push((s.to_vec(), z));
            true
        });
        if overflow {
            Err(PosetError::AntichainExplosion { cap })
        } else {
            Ok(rows)
        }
    }

    pub fn join_table(
        &self,
        max_size: Option<usize>,
        cap: usize,
    ) -> Result<Vec<(Vec<usize>, usize)>, PosetError> {
        let mut rows = Vec::new();
        let mut overflow = false;
        let within = ElemSet::full(self.size());
        self.for_each_join_antichain(&within, max_size, &mut |s, z| {
            if rows.len() >= cap {
                overflow = true;
                return false;
            }
            rows.push((s.to_vec(), z));
            true
        });
        if overflow {
            Err(PosetError::AntichainExplosion { cap })
        } else {
            Ok(rows)
        }
    }
}

/// Reconstructs a witness cycle through `i` and `j` from the input pairs.
fn cycle_witness(labels: &[String], edges: &[(usize, usize)], i: usize, j: usize) -> Vec<String> {
    let n = labels.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    let forward = bfs_path(&adj, i, j).unwrap_or_else(|| vec![i, j]);
    let back = bfs_path(&adj, j, i).unwrap_or_else(|| vec![j, i]);
    let mut cycle: Vec<usize> = forward;
    cycle.extend_from_slice(&back[1..]);
    cycle.into_iter().map(|x| labels[x].clone()).collect()
}

fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    parent[from] = from;
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

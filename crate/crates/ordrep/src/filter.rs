//! (m,n)-filters: recognition, closure, separation search, and brute-force
//! enumeration.
//!
//! A subset `G` of a poset is an (m,n)-filter when it is up-closed, contains
//! the meet of each of its nonempty subsets of fewer than `m` elements that
//! has one, and intersects every nonempty subset of fewer than `n` elements
//! whose join it contains. Because the meet of a set equals the meet of its
//! minimal members (dually for joins), all subset quantification here runs
//! over antichains only; for `omega` bounds the quantifier collapses further
//! to one test per element:
//!
//! * completeness fails iff some `z` outside `G` has `meet(upset({z}) ∩ G) = z`,
//! * primality fails iff some `z` in `G` has `join(downset({z}) \ G) = z`.
//!
//! The separation search maintains committed members (`In`) and excluded
//! elements (`Out`), propagates up-closure, meet-closure and unit primality
//! steps to a fixpoint, and branches on the unresolved primality constraint
//! with the fewest free choices. All iteration is in canonical index order,
//! so results are deterministic.

use thiserror::Error;

use crate::bound::{Bound, BoundPair};
use crate::poset::{Poset, PosetError, DEFAULT_ANTICHAIN_CAP};
use crate::set::ElemSet;

/// Default cap on the carrier size accepted by [`enumerate_filters`].
pub const DEFAULT_ENUM_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("cannot separate {p:?} from {q:?}: the pair is comparable")]
    NotSeparablePair { p: String, q: String },
    #[error("poset has {size} elements, above the brute-force cap {cap}")]
    PosetTooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Why a candidate set fails to be an (m,n)-filter. Witness subsets are the
/// first violation in canonical enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterViolation {
    /// `lower` is in the set, `upper >= lower` is not.
    NotUpClosed { lower: usize, upper: usize },
    /// `subset` lies in the set, its meet does not.
    MeetEscapes { subset: Vec<usize>, meet: usize },
    /// The set contains `join` but misses all of `subset`.
    PrimeFails { subset: Vec<usize>, join: usize },
}

/// A verified (m,n)-filter: carrier subset tagged with the bounds it was
/// checked or constructed at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    elements: ElemSet,
    bounds: BoundPair,
}

impl Filter {
    pub fn new(elements: ElemSet, bounds: BoundPair) -> Self {
        Filter { elements, bounds }
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn bounds(&self) -> BoundPair {
        self.bounds
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }
}

/// Checks the filter conditions, reporting the first violation found.
pub fn check_filter(p: &Poset, g: &ElemSet, bounds: BoundPair) -> Result<(), FilterViolation> {
    // Up-closure.
    for x in g.iter() {
        for y in p.up_mask(x).iter() {
            if !g.contains(y) {
                return Err(FilterViolation::NotUpClosed { lower: x, upper: y });
            }
        }
    }

    // Completeness: meets of small subsets of G stay inside.
    match bounds.meets {
        Bound::Finite(_) => {
            let mut viol = None;
            p.for_each_meet_antichain(g, bounds.meets.max_subset_size(), &mut |s, z| {
                if g.contains(z) {
                    true
                } else {
                    viol = Some(FilterViolation::MeetEscapes {
                        subset: s.to_vec(),
                        meet: z,
                    });
                    false
                }
            });
            if let Some(v) = viol {
                return Err(v);
            }
        }
        Bound::Omega => {
            for z in 0..p.size() {
                if !g.contains(z) {
                    let u = p.up_mask(z).and(g);
                    if !u.is_empty() && p.glb(&u) == Some(z) {
                        return Err(FilterViolation::MeetEscapes {
                            subset: p.minimal_of(&u).indices(),
                            meet: z,
                        });
                    }
                }
            }
        }
    }

    // Primality: small subsets joining into G intersect it. A violating
    // subset max-reduces to an antichain disjoint from G.
    match bounds.joins {
        Bound::Finite(_) => {
            let comp = g.complement();
            let mut viol = None;
            p.for_each_join_antichain(&comp, bounds.joins.max_subset_size(), &mut |t, z| {
                if g.contains(z) {
                    viol = Some(FilterViolation::PrimeFails {
                        subset: t.to_vec(),
                        join: z,
                    });
                    false
                } else {
                    true
                }
            });
            if let Some(v) = viol {
                return Err(v);
            }
        }
        Bound::Omega => {
            for z in g.iter() {
                let d = p.down_mask(z).minus(g);
                if !d.is_empty() && p.lub(&d) == Some(z) {
                    return Err(FilterViolation::PrimeFails {
                        subset: p.maximal_of(&d).indices(),
                        join: z,
                    });
                }
            }
        }
    }

    Ok(())
}

pub fn is_filter(p: &Poset, g: &ElemSet, bounds: BoundPair) -> bool {
    check_filter(p, g, bounds).is_ok()
}

/// Least up-closed, m-complete superset of `seed`: alternately closes upward
/// and under existing meets of fewer than `m` members until stable. The
/// result need not be n-prime for any n.
pub fn closure_meet_up(p: &Poset, seed: &ElemSet, m: Bound) -> ElemSet {
    let mut cur = seed.clone();
    loop {
        let next = p.upset(&cur);
        let mut additions: Vec<usize> = Vec::new();
        match m {
            Bound::Finite(_) => {
                p.for_each_meet_antichain(&next, m.max_subset_size(), &mut |_, z| {
                    if !next.contains(z) {
                        additions.push(z);
                    }
                    true
                });
            }
            Bound::Omega => {
                for z in 0..p.size() {
                    if !next.contains(z) {
                        let u = p.up_mask(z).and(&next);
                        if !u.is_empty() && p.glb(&u) == Some(z) {
                            additions.push(z);
                        }
                    }
                }
            }
        }
        let mut grown = next;
        for z in additions {
            grown.insert(z);
        }
        if grown == cur {
            return cur;
        }
        cur = grown;
    }
}

#[derive(Clone)]
struct SearchState {
    in_set: ElemSet,
    out_set: ElemSet,
}

/// Reusable separation engine: constraint tables are extracted once per
/// (poset, bounds) and shared across pair queries. Queries are read-only and
/// thread-safe.
pub struct Separator<'p> {
    poset: &'p Poset,
    bounds: BoundPair,
    /// Finite-m completeness rows: subset mask -> required meet.
    meet_rows: Vec<(ElemSet, usize)>,
    /// Finite-n primality rows: subset mask, subset, join.
    join_rows: Vec<(ElemSet, Vec<usize>, usize)>,
}

impl<'p> Separator<'p> {
    pub fn new(poset: &'p Poset, bounds: BoundPair) -> Result<Self, FilterError> {
        let n = poset.size();
        let meet_rows = match bounds.meets {
            Bound::Finite(_) => poset
                .meet_table(bounds.meets.max_subset_size(), DEFAULT_ANTICHAIN_CAP)?
                .into_iter()
                .map(|(s, z)| (ElemSet::from_indices(n, s), z))
                .collect(),
            Bound::Omega => Vec::new(),
        };
        let join_rows = match bounds.joins {
            Bound::Finite(_) => poset
                .join_table(bounds.joins.max_subset_size(), DEFAULT_ANTICHAIN_CAP)?
                .into_iter()
                .map(|(t, z)| (ElemSet::from_indices(n, t.clone()), t, z))
                .collect(),
            Bound::Omega => Vec::new(),
        };
        Ok(Separator {
            poset,
            bounds,
            meet_rows,
            join_rows,
        })
    }

    pub fn bounds(&self) -> BoundPair {
        self.bounds
    }

    /// Finds an (m,n)-filter containing `x` and avoiding `y`, or proves none
    /// exists. Requires `x != y` and not `x <= y`.
    pub fn separate(&self, x: usize, y: usize) -> Result<Option<Filter>, FilterError> {
        if self.poset.leq(x, y) {
            return Err(FilterError::NotSeparablePair {
                p: self.poset.label(x).to_string(),
                q: self.poset.label(y).to_string(),
            });
        }
        let n = self.poset.size();
        let state = SearchState {
            in_set: ElemSet::from_indices(n, [x]),
            out_set: ElemSet::from_indices(n, [y]),
        };
        let solution = self.solve(state);
        debug_assert!(solution
            .as_ref()
            .is_none_or(|g| check_filter(self.poset, g, self.bounds).is_ok()));
        Ok(solution.map(|g| Filter::new(g, self.bounds)))
    }

    fn solve(&self, mut st: SearchState) -> Option<ElemSet> {
        loop {
            if self.propagate(&mut st).is_err() {
                return None;
            }
            let frees = match self.pick_branch(&st) {
                None => return Some(st.in_set),
                Some(f) => f,
            };
            // Branch on the lowest free candidate of the tightest constraint.
            // If no filter extends (In + t, Out), exclude t and re-derive the
            // constraints from scratch: the exclusion may unit-propagate new
            // members into In and resolve this constraint some other way, so
            // the remaining candidates of the stale list must not be trusted.
            let t = frees[0];
            let mut next = st.clone();
            next.in_set.insert(t);
            if let Some(sol) = self.solve(next) {
                return Some(sol);
            }
            st.out_set.insert(t);
        }
    }

    /// Closes `In` upward and under small meets, down-closes `Out`, and
    /// applies unit primality steps until a fixpoint or a conflict.
    fn propagate(&self, st: &mut SearchState) -> Result<(), ()> {
        let p = self.poset;
        loop {
            if st.in_set.intersects(&st.out_set) {
                return Err(());
            }
            let mut changed = false;

            let up = p.upset(&st.in_set);
            if up != st.in_set {
                st.in_set = up;
                changed = true;
            }
            let down = p.downset(&st.out_set);
            if down != st.out_set {
                st.out_set = down;
                changed = true;
            }

            match self.bounds.meets {
                Bound::Finite(_) => {
                    for (mask, z) in &self.meet_rows {
                        if !st.in_set.contains(*z) && mask.is_subset_of(&st.in_set) {
                            st.in_set.insert(*z);
                            changed = true;
                        }
                    }
                }
                Bound::Omega => {
                    for z in 0..p.size() {
                        if !st.in_set.contains(z) {
                            let u = p.up_mask(z).and(&st.in_set);
                            if !u.is_empty() && p.glb(&u) == Some(z) {
                                st.in_set.insert(z);
                                changed = true;
                            }
                        }
                    }
                }
            }

            match self.bounds.joins {
                Bound::Finite(_) => {
                    for (tmask, tvec, z) in &self.join_rows {
                        if st.in_set.contains(*z) && !tmask.intersects(&st.in_set) {
                            let free: Vec<usize> = tvec
                                .iter()
                                .copied()
                                .filter(|&t| !st.out_set.contains(t))
                                .collect();
                            match free.len() {
                                0 => return Err(()),
                                1 => {
                                    st.in_set.insert(free[0]);
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
                Bound::Omega => {
                    for z in st.in_set.indices() {
                        let d = p.down_mask(z).minus(&st.in_set);
                        if !d.is_empty() && p.lub(&d) == Some(z) {
                            let free = d.minus(&st.out_set);
                            match free.len() {
                                0 => return Err(()),
                                1 => {
                                    st.in_set.insert(free.first().unwrap());
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }

            if !changed {
                if st.in_set.intersects(&st.out_set) {
                    return Err(());
                }
                return Ok(());
            }
        }
    }

    /// The unresolved primality constraint with the fewest free choices, as
    /// its free elements in ascending order. `None` means `In` is a filter.
    fn pick_branch(&self, st: &SearchState) -> Option<Vec<usize>> {
        let p = self.poset;
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        let consider =
            |key: usize, free: Vec<usize>, best: &mut Option<(usize, usize, Vec<usize>)>| {
                if best
                    .as_ref()
                    .is_none_or(|(len, k, _)| free.len() < *len || (free.len() == *len && key < *k))
                {
                    *best = Some((free.len(), key, free));
                }
            };
        match self.bounds.joins {
            Bound::Finite(_) => {
                for (i, (tmask, tvec, z)) in self.join_rows.iter().enumerate() {
                    if st.in_set.contains(*z) && !tmask.intersects(&st.in_set) {
                        let free: Vec<usize> = tvec
                            .iter()
                            .copied()
                            .filter(|&t| !st.out_set.contains(t))
                            .collect();
                        consider(i, free, &mut best);
                    }
                }
            }
            Bound::Omega => {
                for z in st.in_set.iter() {
                    let d = p.down_mask(z).minus(&st.in_set);
                    if !d.is_empty() && p.lub(&d) == Some(z) {
                        let free = d.minus(&st.out_set);
                        consider(z, free.indices(), &mut best);
                    }
                }
            }
        }
        best.map(|(_, _, free)| free)
    }
}

/// One-shot wrapper around [`Separator`] for a single pair.
pub fn find_separating_filter(
    p: &Poset,
    x: usize,
    y: usize,
    bounds: BoundPair,
) -> Result<Option<Filter>, FilterError> {
    Separator::new(p, bounds)?.separate(x, y)
}

/// Every (m,n)-filter of the poset, including the empty set (vacuously a
/// filter) and the full carrier, sorted canonically. Up-sets are enumerated
/// through their antichains of minimal elements.
pub fn enumerate_filters(p: &Poset, bounds: BoundPair) -> Result<Vec<Filter>, FilterError> {
    enumerate_filters_with_cap(p, bounds, DEFAULT_ENUM_CAP)
}

pub fn enumerate_filters_with_cap(
    p: &Poset,
    bounds: BoundPair,
    cap: usize,
) -> Result<Vec<Filter>, FilterError> {
    let n = p.size();
    if n > cap {
        return Err(FilterError::PosetTooLarge { size: n, cap });
    }
    let mut found: Vec<ElemSet> = Vec::new();
    let mut antichain: Vec<usize> = Vec::new();
    enumerate_rec(p, bounds, 0, &ElemSet::new(n), &mut antichain, &mut found);
    found.sort();
    Ok(found.into_iter().map(|g| Filter::new(g, bounds)).collect())
}

fn enumerate_rec(
    p: &Poset,
    bounds: BoundPair,
    from: usize,
    forbidden: &ElemSet,
    antichain: &mut Vec<usize>,
    found: &mut Vec<ElemSet>,
) {
    let upset = p.upset(&ElemSet::from_indices(p.size(), antichain.iter().copied()));
    if check_filter(p, &upset, bounds).is_ok() {
        found.push(upset);
    }
    for x in from..p.size() {
        if forbidden.contains(x) {
            continue;
        }
        let mut nf = forbidden.clone();
        nf.union_with(p.up_mask(x));
        nf.union_with(p.down_mask(x));
        antichain.push(x);
        enumerate_rec(p, bounds, x + 1, &nf, antichain, found);
        antichain.pop();
    }
}

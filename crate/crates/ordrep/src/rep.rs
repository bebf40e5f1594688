//! Explicit set representations and their independent verifier.
//!
//! A representation maps each element to the set of family indices whose
//! filter contains it: `h(x) = { i : x ∈ Γ_i }`. When the `Γ_i` are the
//! separating witnesses of a successful decision, `h` is injective and sends
//! existing meets of fewer than `m` elements to intersections and joins of
//! fewer than `n` elements to unions.
//!
//! [`verify_representation`] checks those clauses from scratch — it never
//! assumes the family members are filters. Comparable pairs `x < y` are
//! meet clauses in disguise (`h(x) = h(x) ∩ h(y)`), and once they hold every
//! other subset clause reduces to its antichain of minimal (dually, maximal)
//! members, so the verifier walks comparable pairs plus bounded antichains.

use serde_json::{json, Value};

use crate::bound::BoundPair;
use crate::decider::{is_representable_with, DeciderOptions};
use crate::filter::FilterError;
use crate::poset::Poset;
use crate::set::ElemSet;

/// A family of element sets together with the induced map `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    bounds: BoundPair,
    family: Vec<ElemSet>,
    h: Vec<ElemSet>,
}

impl Representation {
    /// Assembles `h` from an explicit family over the poset's carrier. The
    /// family is taken as-is; use [`verify_representation`] to judge it.
    pub fn from_family(p: &Poset, family: Vec<ElemSet>, bounds: BoundPair) -> Self {
        let h = (0..p.size())
            .map(|x| {
                ElemSet::from_indices(
                    family.len(),
                    family
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| g.contains(x))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Representation { bounds, family, h }
    }

    pub fn bounds(&self) -> BoundPair {
        self.bounds
    }

    /// The underlying ground set has one point per family member.
    pub fn ground_size(&self) -> usize {
        self.family.len()
    }

    pub fn family(&self) -> &[ElemSet] {
        &self.family
    }

    /// Image of element `x` as a subset of the ground set.
    pub fn image(&self, x: usize) -> &ElemSet {
        &self.h[x]
    }

    pub fn to_json(&self, p: &Poset) -> Value {
        json!({
            "bounds": self.bounds,
            "ground_size": self.ground_size(),
            "family": self
                .family
                .iter()
                .map(|g| g.iter().map(|i| p.label(i)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "h": (0..p.size())
                .map(|x| json!({ "element": p.label(x), "set": self.h[x].indices() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// First broken clause, in canonical scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepViolation {
    /// Two elements share an image.
    NotInjective { x: usize, y: usize },
    /// `h(meet)` differs from the intersection over `subset`. Comparable
    /// pairs `x < y` surface here with `subset = [x, y]`, `meet = x`.
    MeetClauseFails { subset: Vec<usize>, meet: usize },
    /// `h(join)` differs from the union over `subset`.
    JoinClauseFails { subset: Vec<usize>, join: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepReport {
    pub violation: Option<RepViolation>,
    /// Whether `h(x) ⊆ h(y)` implies `x ≤ y`. Representations need not
    /// reflect order; this is informational.
    pub order_reflecting: bool,
}

impl RepReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Decides representability and, on success, assembles the witness filters
/// into a representation. Distinct filters enter the family in the order the
/// pair scan first used them.
pub fn build_representation(
    p: &Poset,
    bounds: BoundPair,
) -> Result<Option<Representation>, FilterError> {
    build_representation_with(p, bounds, &DeciderOptions::default())
}

pub fn build_representation_with(
    p: &Poset,
    bounds: BoundPair,
    opts: &DeciderOptions,
) -> Result<Option<Representation>, FilterError> {
    let opts = DeciderOptions {
        collect_witnesses: true,
        fail_fast: opts.fail_fast,
        jobs: opts.jobs,
    };
    let report = is_representable_with(p, bounds, &opts)?;
    if !report.representable {
        return Ok(None);
    }
    let mut family: Vec<ElemSet> = Vec::new();
    for (_, f) in &report.witnesses {
        if !family.contains(f.elements()) {
            family.push(f.elements().clone());
        }
    }
    if family.is_empty() {
        // Only pair-free posets (at most one element) get here; the full
        // carrier keeps every image nonempty.
        family.push(ElemSet::full(p.size()));
    }
    Ok(Some(Representation::from_family(p, family, bounds)))
}

/// Checks injectivity and every meet/join clause the bounds demand.
pub fn verify_representation(p: &Poset, rep: &Representation) -> RepReport {
    let violation = first_violation(p, rep);
    let mut order_reflecting = true;
    'outer: for x in 0..p.size() {
        for y in 0..p.size() {
            if rep.h[x].is_subset_of(&rep.h[y]) && !p.leq(x, y) {
                order_reflecting = false;
                break 'outer;
            }
        }
    }
    RepReport {
        violation,
        order_reflecting,
    }
}

fn first_violation(p: &Poset, rep: &Representation) -> Option<RepViolation> {
    let n = p.size();
    let bounds = rep.bounds;

    for x in 0..n {
        for y in x + 1..n {
            if rep.h[x] == rep.h[y] {
                return Some(RepViolation::NotInjective { x, y });
            }
        }
    }

    // Comparable pairs: x < y forces h(x) = h(x) ∩ h(y).
    for (x, y) in p.strict_pairs() {
        if !rep.h[x].is_subset_of(&rep.h[y]) {
            return Some(RepViolation::MeetClauseFails {
                subset: vec![x, y],
                meet: x,
            });
        }
    }

    // With monotonicity settled, subset clauses reduce to antichains.
    let full = ElemSet::full(n);
    let mut viol = None;
    p.for_each_meet_antichain(&full, bounds.meets.max_subset_size(), &mut |s, z| {
        let mut inter = rep.h[s[0]].clone();
        for &x in &s[1..] {
            inter.intersect_with(&rep.h[x]);
        }
        if inter == rep.h[z] {
            true
        } else {
            viol = Some(RepViolation::MeetClauseFails {
                subset: s.to_vec(),
                meet: z,
            });
            false
        }
    });
    if viol.is_some() {
        return viol;
    }
    p.for_each_join_antichain(&full, bounds.joins.max_subset_size(), &mut |s, z| {
        let mut uni = rep.h[s[0]].clone();
        for &x in &s[1..] {
            uni.union_with(&rep.h[x]);
        }
        if uni == rep.h[z] {
            true
        } else {
            viol = Some(RepViolation::JoinClauseFails {
                subset: s.to_vec(),
                join: z,
            });
            false
        }
    });
    viol
}

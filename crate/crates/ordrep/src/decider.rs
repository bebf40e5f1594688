//! The representability decider.
//!
//! A poset is (m,n)-representable iff every ordered pair `x ≰ y` is separated
//! by an (m,n)-filter. The decider walks the candidate pairs in canonical
//! order, keeps every filter found so far in a cache, and only runs the
//! search when no cached filter already separates the pair at hand. The
//! report therefore doubles as a representation recipe: its witnesses are
//! exactly the filters a representation needs.
//!
//! With `jobs > 1` upcoming searches run speculatively on worker threads.
//! Search results depend only on the poset, the bounds and the pair — never
//! on the cache — so replaying them in canonical order reproduces the
//! single-threaded report bit for bit.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;
use std::thread;

use serde_json::{json, Value};

use crate::bound::BoundPair;
use crate::filter::{Filter, FilterError, Separator};
use crate::poset::Poset;
use crate::set::ElemSet;

/// How many pairs each worker claims ahead of the replay cursor.
const WAVE_FACTOR: usize = 4;

const INCOMPARABLE: &str = "candidate pairs are incomparable by construction";

#[derive(Debug, Clone)]
pub struct DeciderOptions {
    /// Stop at the first failing pair instead of collecting all of them.
    pub fail_fast: bool,
    /// Record a separating filter for every passing pair.
    pub collect_witnesses: bool,
    /// Worker threads for speculative search; `0` and `1` both mean serial.
    pub jobs: usize,
}

impl Default for DeciderOptions {
    fn default() -> Self {
        DeciderOptions {
            fail_fast: false,
            collect_witnesses: true,
            jobs: 1,
        }
    }
}

/// Outcome of a representability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub bounds: BoundPair,
    pub representable: bool,
    /// Number of ordered pairs `x ≰ y` examined.
    pub pairs_total: usize,
    /// Pairs with no separating filter, in canonical order. Empty iff
    /// representable (or the run was cut short by `fail_fast`).
    pub failing_pairs: Vec<(usize, usize)>,
    /// Separating filters per passing pair, present when witnesses were
    /// collected. Filters repeat across pairs; first occurrences are in
    /// discovery order.
    pub witnesses: Vec<((usize, usize), Filter)>,
}

impl DecisionReport {
    /// Label-based JSON rendering of the report.
    pub fn to_json(&self, p: &Poset) -> Value {
        let pair = |&(x, y): &(usize, usize)| json!([p.label(x), p.label(y)]);
        json!({
            "bounds": self.bounds,
            "representable": self.representable,
            "pairs_total": self.pairs_total,
            "failing_pairs": self.failing_pairs.iter().map(pair).collect::<Vec<_>>(),
            "witnesses": self
                .witnesses
                .iter()
                .map(|(pr, f)| {
                    json!({
                        "pair": pair(pr),
                        "filter": f.elements().iter().map(|i| p.label(i)).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// All ordered pairs `(x, y)` with `x ≰ y`, ascending in `x` then `y`.
pub fn candidate_pairs(p: &Poset) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..p.size() {
        for y in 0..p.size() {
            if !p.leq(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn is_representable(p: &Poset, bounds: BoundPair) -> Result<DecisionReport, FilterError> {
    is_representable_with(p, bounds, &DeciderOptions::default())
}

pub fn is_representable_with(
    p: &Poset,
    bounds: BoundPair,
    opts: &DeciderOptions,
) -> Result<DecisionReport, FilterError> {
    let sep = Separator::new(p, bounds)?;
    let pairs = candidate_pairs(p);
    let jobs = opts.jobs.max(1);

    let mut cache: Vec<ElemSet> = Vec::new();
    let mut memo: HashMap<(usize, usize), Option<ElemSet>> = HashMap::new();
    let mut failing = Vec::new();
    let mut witnesses = Vec::new();

    for (idx, &(x, y)) in pairs.iter().enumerate() {
        if let Some(g) = cache.iter().find(|g| g.contains(x) && !g.contains(y)) {
            if opts.collect_witnesses {
                witnesses.push(((x, y), Filter::new(g.clone(), bounds)));
            }
            continue;
        }
        let result = match memo.remove(&(x, y)) {
            Some(r) => r,
            None if jobs == 1 => sep
                .separate(x, y)
                .expect(INCOMPARABLE)
                .map(|f| f.elements().clone()),
            None => {
                let wave: Vec<(usize, usize)> = pairs[idx..]
                    .iter()
                    .copied()
                    .filter(|&(a, b)| {
                        !memo.contains_key(&(a, b))
                            && !cache.iter().any(|g| g.contains(a) && !g.contains(b))
                    })
                    .take(jobs * WAVE_FACTOR)
                    .collect();
                search_wave(&sep, &wave, jobs, &mut memo);
                memo.remove(&(x, y)).expect("the wave starts at the cursor")
            }
        };
        match result {
            Some(g) => {
                if opts.collect_witnesses {
                    witnesses.push(((x, y), Filter::new(g.clone(), bounds)));
                }
                cache.push(g);
            }
            None => {
                failing.push((x, y));
                if opts.fail_fast {
                    break;
                }
            }
        }
    }

    Ok(DecisionReport {
        bounds,
        representable: failing.is_empty(),
        pairs_total: pairs.len(),
        failing_pairs: failing,
        witnesses,
    })
}

fn search_wave(
    sep: &Separator,
    wave: &[(usize, usize)],
    jobs: usize,
    memo: &mut HashMap<(usize, usize), Option<ElemSet>>,
) {
    let slots: Vec<OnceLock<Option<ElemSet>>> = wave.iter().map(|_| OnceLock::new()).collect();
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..jobs.min(wave.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= wave.len() {
                    break;
                }
                let (x, y) = wave[i];
                let g = sep
                    .separate(x, y)
                    .expect(INCOMPARABLE)
                    .map(|f| f.elements().clone());
                slots[i].set(g).expect("each wave slot is filled once");
            });
        }
    });
    for (slot, &pr) in slots.into_iter().zip(wave) {
        memo.insert(pr, slot.into_inner().expect("workers drained the wave"));
    }
}

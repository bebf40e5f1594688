//! Shared helpers for in-crate unit tests: tiny fixtures, deterministic
//! random posets, and brute-force order oracles that deliberately avoid the
//! library's own bound machinery.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{PairKind, Poset};

pub fn poset(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
    Poset::build(
        labels.iter().map(|s| s.to_string()).collect(),
        &covers
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>(),
        PairKind::Covers,
    )
    .unwrap()
}

/// Deterministic random poset: a random DAG on index order, transitively
/// closed by the builder, then relabeled by a random permutation so the order
/// is not aligned with element indices.
pub fn random_poset(seed: u64, n: usize) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let density = rng.gen_range(0.1..0.5);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                pairs.push((labels[perm[i]].clone(), labels[perm[j]].clone()));
            }
        }
    }
    Poset::build(labels, &pairs, PairKind::Covers).unwrap()
}

/// Greatest lower bound by direct quantification over the carrier.
pub fn glb_enum(p: &Poset, s: &[usize]) -> Option<usize> {
    let lbs: Vec<usize> = (0..p.size())
        .filter(|&z| s.iter().all(|&x| p.leq(z, x)))
        .collect();
    lbs.iter()
        .copied()
        .find(|&g| lbs.iter().all(|&w| p.leq(w, g)))
}

pub fn lub_enum(p: &Poset, s: &[usize]) -> Option<usize> {
    let ubs: Vec<usize> = (0..p.size())
        .filter(|&z| s.iter().all(|&x| p.leq(x, z)))
        .collect();
    ubs.iter()
        .copied()
        .find(|&g| ubs.iter().all(|&w| p.leq(g, w)))
}

/// The five-element modular non-distributive lattice: bottom, three atoms,
/// top.
pub fn m3() -> Poset {
    poset(
        &["0", "x", "y", "z", "1"],
        &[
            ("0", "x"),
            ("0", "y"),
            ("0", "z"),
            ("x", "1"),
            ("y", "1"),
            ("z", "1"),
        ],
    )
}

/// The pentagon: 0 < a < 1 and 0 < b < c < 1.
pub fn n5() -> Poset {
    poset(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "1")],
    )
}

/// Boolean lattice of subsets of an `n`-element set, labeled by bitmask.
pub fn boolean_lattice(n: usize) -> Poset {
    let labels: Vec<String> = (0..1u32 << n).map(|m| format!("s{m}")).collect();
    let mut pairs = Vec::new();
    for m in 0..1u32 << n {
        for b in 0..n {
            if m >> b & 1 == 0 {
                pairs.push((format!("s{m}"), format!("s{}", m | 1 << b)));
            }
        }
    }
    Poset::build(labels, &pairs, PairKind::Covers).unwrap()
}

/// Divisors of 12 under divisibility.
pub fn divisors_of_12() -> Poset {
    let divs = [1u32, 2, 3, 4, 6, 12];
    let labels: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
    let mut pairs = Vec::new();
    for &a in &divs {
        for &b in &divs {
            if a != b && b % a == 0 {
                pairs.push((a.to_string(), b.to_string()));
            }
        }
    }
    Poset::build(labels, &pairs, PairKind::Covers).unwrap()
}

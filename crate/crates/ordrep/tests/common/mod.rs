//! Shared fixtures and independent brute-force oracles for the integration
//! suites.
//!
//! The oracles here deliberately avoid every shortcut the library takes:
//! filter conditions are checked by quantifying over raw subsets (no
//! antichain reduction, no polynomial omega criteria), meets and joins are
//! recomputed from scratch on plain `u32` masks, and separability is decided
//! by scanning all subsets of the carrier.  Agreement between this module and
//! the library is what the acceptance suite certifies.

#![allow(dead_code)]

use ordrep::{Bound, BoundPair, PairKind, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

pub fn n5() -> Poset {
    poset(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "1")],
    )
}

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

/// Deterministic random poset: a random DAG on a shuffled index order,
/// transitively closed by the builder.
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

/// Two hundred random posets with 6 to 8 elements, fixed seeds.
pub fn random_corpus() -> Vec<Poset> {
    (0..200u64)
        .map(|s| random_poset(s, 6 + (s % 3) as usize))
        .collect()
}

/// Every labeled poset on `{v0..v(n-1)}`: each unordered index pair is
/// oriented three ways (incomparable, `<`, `>`) and the transitive relations
/// are kept.  Counts for n = 1..5: 1, 3, 19, 219, 4231.
pub fn all_posets_of_size(n: usize) -> Vec<Poset> {
    assert!(n <= 5, "orientation enumeration is exponential");
    let idx_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut out = Vec::new();
    let mut code = vec![0u8; idx_pairs.len()];
    loop {
        let mut lt = [[false; 5]; 5];
        for (c, &(i, j)) in code.iter().zip(&idx_pairs) {
            match c {
                1 => lt[i][j] = true,
                2 => lt[j][i] = true,
                _ => {}
            }
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !lt[i][j] || (0..n).all(|k| !lt[j][k] || lt[i][k])));
        if transitive {
            let strict: Vec<(String, String)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| lt[i][j])
                .map(|(i, j)| (labels[i].clone(), labels[j].clone()))
                .collect();
            out.push(Poset::build(labels.clone(), &strict, PairKind::Order).unwrap());
        }
        // Increment the base-3 orientation counter.
        let mut pos = 0;
        loop {
            if pos == code.len() {
                return out;
            }
            code[pos] += 1;
            if code[pos] < 3 {
                break;
            }
            code[pos] = 0;
            pos += 1;
        }
    }
}

pub fn f3() -> Bound {
    Bound::finite(3).unwrap()
}

pub fn all_bound_pairs() -> [BoundPair; 4] {
    [
        BoundPair::new(f3(), f3()),
        BoundPair::new(f3(), Bound::Omega),
        BoundPair::new(Bound::Omega, f3()),
        BoundPair::OMEGA,
    ]
}

/// Mask-based mirror of a poset, capped at 25 elements.
pub struct MaskPoset {
    pub n: usize,
    /// `upm[x]` is the mask of `{y : x <= y}`.
    pub upm: Vec<u32>,
    /// `downm[x]` is the mask of `{z : z <= x}`.
    pub downm: Vec<u32>,
}

pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32usize).filter(move |i| mask >> i & 1 == 1)
}

impl MaskPoset {
    pub fn of(p: &Poset) -> MaskPoset {
        let n = p.size();
        assert!(n <= 25, "mask oracle is for small posets");
        let masks = |rel: &dyn Fn(usize, usize) -> bool| {
            (0..n)
                .map(|x| (0..n).filter(|&y| rel(x, y)).fold(0u32, |m, y| m | 1 << y))
                .collect::<Vec<_>>()
        };
        let upm = masks(&|x, y| p.leq(x, y));
        let downm = masks(&|x, y| p.leq(y, x));
        MaskPoset { n, upm, downm }
    }

    pub fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.upm[x] >> y & 1 == 1
    }

    /// Greatest lower bound of a nonempty mask, by direct search.
    pub fn glb(&self, s: u32) -> Option<usize> {
        let mut common = self.full();
        for x in bits(s) {
            common &= self.downm[x];
        }
        bits(common).find(|&z| common & !self.downm[z] == 0)
    }

    pub fn lub(&self, s: u32) -> Option<usize> {
        let mut common = self.full();
        for x in bits(s) {
            common &= self.upm[x];
        }
        bits(common).find(|&z| common & !self.upm[z] == 0)
    }

    /// Definition-level filter check: raw subset quantification.
    pub fn is_filter(&self, g: u32, bounds: BoundPair) -> bool {
        for x in bits(g) {
            if self.upm[x] & !g != 0 {
                return false;
            }
        }
        // m-completeness over every subset of g of admitted size.
        let mut s = g;
        while s != 0 {
            let size = s.count_ones() as usize;
            if size >= 2 && bounds.meets.admits(size) {
                if let Some(z) = self.glb(s) {
                    if g >> z & 1 == 0 {
                        return false;
                    }
                }
            }
            s = (s - 1) & g;
        }
        // n-primality over every subset of the complement of admitted size.
        let c = self.full() & !g;
        let mut t = c;
        while t != 0 {
            let size = t.count_ones() as usize;
            if bounds.joins.admits(size) {
                if let Some(z) = self.lub(t) {
                    if g >> z & 1 == 1 {
                        return false;
                    }
                }
            }
            t = (t - 1) & c;
        }
        true
    }

    /// Every filter mask, ascending.
    pub fn filters(&self, bounds: BoundPair) -> Vec<u32> {
        (0..=self.full())
            .filter(|&g| self.is_filter(g, bounds))
            .collect()
    }

    /// Failing candidate pairs in ascending `(x, y)` order, given the filter
    /// inventory.
    pub fn failing_pairs(&self, filters: &[u32]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y || self.leq(x, y) {
                    continue;
                }
                let separated = filters.iter().any(|&f| f >> x & 1 == 1 && f >> y & 1 == 0);
                if !separated {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

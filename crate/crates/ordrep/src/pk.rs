//! Generator for the `pk` family of layered height-2 posets.
//!
//! `P_k` is built from a four-element base layer `N_0 = {a, b, c, d}` by
//! repeated pairing: `N_{n+1}` has one element `e(x,y)` per unordered pair of
//! distinct `N_n` elements. Every layer element `x` gets two incomparable
//! covers `x'` and `x''`; a pair element `e(x,y)` additionally lies below the
//! four covers of its components. A top-ish element `p` sits above all of
//! `N_0` and a bottom-ish element `q` sits below the covers of the deepest
//! layer `N_k`. The family is the crate's stock of witnesses for posets that
//! are representable at no finite meet/join bounds despite having height 2.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::poset::{PairKind, Poset};
use crate::set::ElemSet;

/// Default cap on the generator depth; `|N_4| = C(105, 2) = 5460` already
/// yields a 16772-element carrier.
pub const DEFAULT_DEPTH_CAP: usize = 4;

pub const BASES: [char; 4] = ['a', 'b', 'c', 'd'];

#[derive(Debug, Error)]
pub enum PkError {
    #[error("depth {k} exceeds the generator cap {cap}")]
    DepthTooLarge { k: usize, cap: usize },
    #[error("cannot embed depth {from} into shallower depth {to}")]
    InvalidDepths { from: usize, to: usize },
    #[error("base support is undefined for the bounding elements p and q")]
    NotApplicable,
}

/// Structured label of a `P_k` element.
///
/// The derived order is lexicographic on structure and is the canonical
/// within-layer order (bases `a < b < c < d`, pairs ordered by components).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PkLabel {
    P,
    Q,
    Base(char),
    Pair(Box<PkLabel>, Box<PkLabel>),
    Prime(Box<PkLabel>),
    DoublePrime(Box<PkLabel>),
}

impl PkLabel {
    /// Canonical pair label: components sorted, must be distinct.
    pub fn pair(u: PkLabel, v: PkLabel) -> PkLabel {
        assert_ne!(u, v, "pair components must be distinct");
        if u < v {
            PkLabel::Pair(Box::new(u), Box::new(v))
        } else {
            PkLabel::Pair(Box::new(v), Box::new(u))
        }
    }

    pub fn prime(base: PkLabel) -> PkLabel {
        PkLabel::Prime(Box::new(base))
    }

    pub fn double_prime(base: PkLabel) -> PkLabel {
        PkLabel::DoublePrime(Box::new(base))
    }
}

impl fmt::Display for PkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PkLabel::P => write!(f, "p"),
            PkLabel::Q => write!(f, "q"),
            PkLabel::Base(c) => write!(f, "{c}"),
            PkLabel::Pair(u, v) => write!(f, "e({u},{v})"),
            PkLabel::Prime(b) => write!(f, "{b}'"),
            PkLabel::DoublePrime(b) => write!(f, "{b}''"),
        }
    }
}

/// Which layer an element belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Layer {
    P,
    Q,
    /// `N_n`: the minimal pairing layers.
    N(usize),
    /// `N̂_n`: the primed covers of `N_n`.
    Hat(usize),
}

/// A generated member of the family, with layer metadata over the carrier.
pub struct PkPoset {
    poset: Poset,
    k: usize,
    labels: Vec<PkLabel>,
    layers: Vec<Layer>,
    by_label: HashMap<PkLabel, usize>,
}

impl PkPoset {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn layer_of(&self, x: usize) -> Layer {
        self.layers[x]
    }

    pub fn pk_label(&self, x: usize) -> &PkLabel {
        &self.labels[x]
    }

    pub fn index_of_label(&self, label: &PkLabel) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Element indices of layer `N_n`.
    pub fn n_layer(&self, n: usize) -> ElemSet {
        ElemSet::from_indices(
            self.poset.size(),
            (0..self.poset.size()).filter(|&i| self.layers[i] == Layer::N(n)),
        )
    }

    /// Element indices of layer `N̂_n`.
    pub fn hat_layer(&self, n: usize) -> ElemSet {
        ElemSet::from_indices(
            self.poset.size(),
            (0..self.poset.size()).filter(|&i| self.layers[i] == Layer::Hat(n)),
        )
    }

    pub fn p_index(&self) -> usize {
        0
    }

    pub fn q_index(&self) -> usize {
        1
    }
}

/// Generates `P_k` with the default depth cap.
pub fn generate_pk(k: usize) -> Result<PkPoset, PkError> {
    generate_pk_with_cap(k, DEFAULT_DEPTH_CAP)
}

pub fn generate_pk_with_cap(k: usize, cap: usize) -> Result<PkPoset, PkError> {
    if k > cap {
        return Err(PkError::DepthTooLarge { k, cap });
    }

    let mut n_layers: Vec<Vec<PkLabel>> = vec![BASES.iter().map(|&c| PkLabel::Base(c)).collect()];
    for _ in 1..=k {
        let prev = n_layers.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() * (prev.len() - 1) / 2);
        for i in 0..prev.len() {
            for j in (i + 1)..prev.len() {
                next.push(PkLabel::pair(prev[i].clone(), prev[j].clone()));
            }
        }
        n_layers.push(next);
    }

    // Canonical index order: p, q, then N_n followed by its hats, layer by layer.
    let mut labels: Vec<PkLabel> = vec![PkLabel::P, PkLabel::Q];
    let mut layers: Vec<Layer> = vec![Layer::P, Layer::Q];
    for (n, layer) in n_layers.iter().enumerate() {
        for x in layer {
            labels.push(x.clone());
            layers.push(Layer::N(n));
        }
        for x in layer {
            labels.push(PkLabel::prime(x.clone()));
            layers.push(Layer::Hat(n));
            labels.push(PkLabel::double_prime(x.clone()));
            layers.push(Layer::Hat(n));
        }
    }

    let mut pairs: Vec<(String, String)> = Vec::new();
    let s = |l: &PkLabel| l.to_string();
    // Base layer sits below p.
    for x in &n_layers[0] {
        pairs.push((s(x), "p".to_string()));
    }
    // Every layer element sits below its own two covers.
    for layer in &n_layers {
        for x in layer {
            pairs.push((s(x), s(&PkLabel::prime(x.clone()))));
            pairs.push((s(x), s(&PkLabel::double_prime(x.clone()))));
        }
    }
    // A pair element sits below the covers of both components.
    for layer in &n_layers[1..] {
        for x in layer {
            if let PkLabel::Pair(u, v) = x {
                for comp in [u.as_ref(), v.as_ref()] {
                    pairs.push((s(x), s(&PkLabel::prime(comp.clone()))));
                    pairs.push((s(x), s(&PkLabel::double_prime(comp.clone()))));
                }
            }
        }
    }
    // q sits below the covers of the deepest layer.
    for x in &n_layers[k] {
        pairs.push(("q".to_string(), s(&PkLabel::prime(x.clone()))));
        pairs.push(("q".to_string(), s(&PkLabel::double_prime(x.clone()))));
    }

    let poset = Poset::build(labels.iter().map(s).collect(), &pairs, PairKind::Covers)
        .expect("generated family is a valid poset");

    let by_label = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();

    Ok(PkPoset {
        poset,
        k,
        labels,
        layers,
        by_label,
    })
}

/// The label-preserving embedding of `P_k` into `P_l` for `k <= l`. Returns
/// the image index for each element of `from`.
///
/// The map preserves and reflects order on all pairs except `(q, y)` with `y`
/// a cover of the deepest layer of `from`: those relations are lost because
/// `q` moves below the deeper layers of `to`.
pub fn iota_embed(from: &PkPoset, to: &PkPoset) -> Result<Vec<usize>, PkError> {
    if from.k > to.k {
        return Err(PkError::InvalidDepths {
            from: from.k,
            to: to.k,
        });
    }
    Ok(from
        .labels
        .iter()
        .map(|l| {
            to.index_of_label(l)
                .expect("every label of a shallower family occurs in a deeper one")
        })
        .collect())
}

/// The set of base characters a label is built from. Undefined for `p`/`q`.
pub fn base_support(label: &PkLabel) -> Result<BTreeSet<char>, PkError> {
    match label {
        PkLabel::P | PkLabel::Q => Err(PkError::NotApplicable),
        PkLabel::Base(c) => Ok(BTreeSet::from([*c])),
        PkLabel::Pair(u, v) => {
            let mut s = base_support(u)?;
            s.extend(base_support(v)?);
            Ok(s)
        }
        PkLabel::Prime(b) | PkLabel::DoublePrime(b) => base_support(b),
    }
}

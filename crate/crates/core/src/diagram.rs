//! Combinatorial model of two transverse closed curves `M` and `M'`: the
//! signed crossings plus the cyclic order in which each curve meets them.
//!
//! A bigon is a pair of crossings with opposite signs that are adjacent in
//! both cyclic orders. Removing one models the isotopy that pushes one arc
//! across the disc it bounds, which deletes exactly those two crossings.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type CrossingId = String;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("the two cyclic orders do not contain the same crossings")]
    MismatchedIds,
    #[error("crossing {0:?} appears more than once in an order")]
    DuplicateId(CrossingId),
    #[error("crossing {0:?} has no sign")]
    MissingSign(CrossingId),
    #[error("sign {1} of crossing {0:?} is not +1 or -1")]
    InvalidSign(CrossingId, i64),
    #[error("({0:?}, {1:?}) is not a bigon of this diagram")]
    NotABigon(CrossingId, CrossingId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawDiagram {
    m_order: Vec<CrossingId>,
    mprime_order: Vec<CrossingId>,
    signs: BTreeMap<CrossingId, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct CrossingDiagram {
    m_order: Vec<CrossingId>,
    mprime_order: Vec<CrossingId>,
    signs: BTreeMap<CrossingId, i8>,
}

impl TryFrom<RawDiagram> for CrossingDiagram {
    type Error = DiagramError;

    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        build_diagram(raw.m_order, raw.mprime_order, raw.signs)
    }
}

impl From<CrossingDiagram> for RawDiagram {
    fn from(d: CrossingDiagram) -> Self {
        RawDiagram {
            m_order: d.m_order,
            mprime_order: d.mprime_order,
            signs: d
                .signs
                .into_iter()
                .map(|(k, v)| (k, i64::from(v)))
                .collect(),
        }
    }
}

/// Two crossings, `p < q`, forming a removable bigon.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bigon {
    pub p: CrossingId,
    pub q: CrossingId,
}

impl Bigon {
    pub fn new(a: impl Into<CrossingId>, b: impl Into<CrossingId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Bigon { p: a, q: b }
        } else {
            Bigon { p: b, q: a }
        }
    }
}

pub fn build_diagram<S>(
    m_order: Vec<CrossingId>,
    mprime_order: Vec<CrossingId>,
    signs: BTreeMap<CrossingId, S>,
) -> Result<CrossingDiagram, DiagramError>
where
    S: Into<i64> + Copy,
{
    let mut seen = HashSet::new();
    for id in &m_order {
        if !seen.insert(id) {
            return Err(DiagramError::DuplicateId(id.clone()));
        }
    }
    let mut seen_prime = HashSet::new();
    for id in &mprime_order {
        if !seen_prime.insert(id) {
            return Err(DiagramError::DuplicateId(id.clone()));
        }
    }
    if seen != seen_prime {
        return Err(DiagramError::MismatchedIds);
    }
    let mut checked = BTreeMap::new();
    for id in &m_order {
        let s = signs
            .get(id)
            .ok_or_else(|| DiagramError::MissingSign(id.clone()))?;
        let s: i64 = (*s).into();
        match s {
            1 | -1 => {
                checked.insert(id.clone(), s as i8);
            }
            other => return Err(DiagramError::InvalidSign(id.clone(), other)),
        }
    }
    if signs.len() != checked.len() {
        return Err(DiagramError::MismatchedIds);
    }
    Ok(CrossingDiagram {
        m_order,
        mprime_order,
        signs: checked,
    })
}

fn cyclic_neighbours(order: &[CrossingId], at: usize) -> (usize, usize) {
    let n = order.len();
    ((at + n - 1) % n, (at + 1) % n)
}

impl CrossingDiagram {
    pub fn empty() -> Self {
        CrossingDiagram {
            m_order: Vec::new(),
            mprime_order: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.m_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m_order.is_empty()
    }

    pub fn m_order(&self) -> &[CrossingId] {
        &self.m_order
    }

    pub fn mprime_order(&self) -> &[CrossingId] {
        &self.mprime_order
    }

    pub fn sign(&self, id: &str) -> Option<i8> {
        self.signs.get(id).copied()
    }

    /// Σ signs, the algebraic intersection number of the two curves.
    pub fn algebraic_sum(&self) -> i64 {
        self.signs.values().map(|&s| i64::from(s)).sum()
    }

    fn adjacent_in(order: &[CrossingId], a: &str, b: &str) -> bool {
        if order.len() < 2 {
            return false;
        }
        let Some(i) = order.iter().position(|x| x == a) else {
            return false;
        };
        let (prev, next) = cyclic_neighbours(order, i);
        order[prev] == b || order[next] == b
    }

    pub fn is_bigon(&self, b: &Bigon) -> bool {
        b.p != b.q
            && matches!((self.sign(&b.p), self.sign(&b.q)), (Some(x), Some(y)) if x == -y)
            && Self::adjacent_in(&self.m_order, &b.p, &b.q)
            && Self::adjacent_in(&self.mprime_order, &b.p, &b.q)
    }

    /// Every bigon, in ascending order.
    pub fn bigons(&self) -> Vec<Bigon> {
        let n = self.m_order.len();
        if n < 2 {
            return Vec::new();
        }
        let pos_prime: HashMap<&str, usize> = self
            .mprime_order
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut out: Vec<Bigon> = (0..n)
            .filter_map(|i| {
                let (a, b) = (&self.m_order[i], &self.m_order[(i + 1) % n]);
                if self.signs[a] == self.signs[b] {
                    return None;
                }
                let (pa, pb) = (pos_prime[a.as_str()], pos_prime[b.as_str()]);
                let d = pa.abs_diff(pb);
                (d == 1 || d == n - 1).then(|| Bigon::new(a.clone(), b.clone()))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// The lexicographically least bigon, if any.
pub fn find_bigon(d: &CrossingDiagram) -> Option<Bigon> {
    d.bigons().into_iter().next()
}

pub fn remove_bigon(d: &CrossingDiagram, b: &Bigon) -> Result<CrossingDiagram, DiagramError> {
    if !d.is_bigon(b) {
        return Err(DiagramError::NotABigon(b.p.clone(), b.q.clone()));
    }
    let keep = |id: &&CrossingId| **id != b.p && **id != b.q;
    Ok(CrossingDiagram {
        m_order: d.m_order.iter().filter(keep).cloned().collect(),
        mprime_order: d.mprime_order.iter().filter(keep).cloned().collect(),
        signs: d
            .signs
            .iter()
            .filter(|(id, _)| keep(id))
            .map(|(id, &s)| (id.clone(), s))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub diagram: CrossingDiagram,
    pub steps: usize,
    /// Removed pairs in order.
    pub trace: Vec<Bigon>,
}

/// Removes least bigons until none remain.
pub fn reduce_to_minimal(d: &CrossingDiagram) -> Reduction {
    let mut current = d.clone();
    let mut trace = Vec::new();
    while let Some(b) = find_bigon(&current) {
        current = remove_bigon(&current, &b).expect("find_bigon returns a bigon");
        trace.push(b);
    }
    Reduction {
        diagram: current,
        steps: trace.len(),
        trace,
    }
}

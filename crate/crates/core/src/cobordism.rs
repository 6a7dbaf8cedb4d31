//! Bookkeeping for chains of elementary cobordisms of a closed 3-manifold.
//!
//! Each record is one critical point with its index. Incidence data is the
//! signed intersection number of a point's ascending sphere with the
//! descending sphere of a point of index one greater, on the level surface
//! between them. Moves are rearrangement of independent records and
//! cancellation of a pair whose incidence is ±1.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type RecordId = String;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("record {id:?} has index {index}, expected 0..=3")]
    InvalidIndex { id: RecordId, index: u8 },
    #[error("duplicate record id {0:?}")]
    DuplicateId(RecordId),
    #[error("record {from:?} references unknown record {to:?}")]
    DanglingIncidence { from: RecordId, to: RecordId },
    #[error("record {from:?} (index {from_index}) may only pair with index {expected}, but {to:?} has index {to_index}")]
    IncidenceIndex {
        from: RecordId,
        from_index: u8,
        to: RecordId,
        to_index: u8,
        expected: u8,
    },
    #[error("closed chain has Euler characteristic {0}, expected 0")]
    EulerCharacteristic(i64),
    #[error("unknown record {0:?}")]
    UnknownId(RecordId),
    #[error("records are not sorted by index")]
    NotSorted,
    #[error("chain is not closed (needs at least one index-0 and one index-3 record)")]
    NotClosed,
    #[error("target order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("cannot commute {first:?} past {second:?}: incidence {pairing}")]
    IllegalCommutation {
        first: RecordId,
        second: RecordId,
        pairing: i64,
    },
    #[error("records {0:?} and {1:?} do not have adjacent indices")]
    NonAdjacentIndices(RecordId, RecordId),
    #[error("records {lower:?} and {upper:?} have incidence {pairing}, not ±1")]
    NotUnitPairing {
        lower: RecordId,
        upper: RecordId,
        pairing: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalRecord {
    pub id: RecordId,
    pub index: u8,
    /// Partner id (of index `index + 1`) to signed incidence.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub incidence: BTreeMap<RecordId, i64>,
}

impl CriticalRecord {
    pub fn new(id: impl Into<RecordId>, index: u8) -> Self {
        CriticalRecord {
            id: id.into(),
            index,
            incidence: BTreeMap::new(),
        }
    }

    pub fn with_incidence(mut self, partner: impl Into<RecordId>, value: i64) -> Self {
        self.incidence.insert(partner.into(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawChain {
    records: Vec<CriticalRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawChain", into = "RawChain")]
pub struct CobordismChain {
    records: Vec<CriticalRecord>,
}

impl TryFrom<RawChain> for CobordismChain {
    type Error = ChainError;

    fn try_from(raw: RawChain) -> Result<Self, Self::Error> {
        build_chain(raw.records)
    }
}

impl From<CobordismChain> for RawChain {
    fn from(c: CobordismChain) -> Self {
        RawChain { records: c.records }
    }
}

pub type MorseType = [usize; 4];

pub fn build_chain(records: Vec<CriticalRecord>) -> Result<CobordismChain, ChainError> {
    let mut index_of: HashMap<&str, u8> = HashMap::new();
    for r in &records {
        if r.index > 3 {
            return Err(ChainError::InvalidIndex {
                id: r.id.clone(),
                index: r.index,
            });
        }
        if index_of.insert(&r.id, r.index).is_some() {
            return Err(ChainError::DuplicateId(r.id.clone()));
        }
    }
    for r in &records {
        for partner in r.incidence.keys() {
            let &to_index =
                index_of
                    .get(partner.as_str())
                    .ok_or_else(|| ChainError::DanglingIncidence {
                        from: r.id.clone(),
                        to: partner.clone(),
                    })?;
            if to_index != r.index + 1 {
                return Err(ChainError::IncidenceIndex {
                    from: r.id.clone(),
                    from_index: r.index,
                    to: partner.clone(),
                    to_index,
                    expected: r.index + 1,
                });
            }
        }
    }
    let chain = CobordismChain { records };
    if chain.is_closed() && chain.euler_characteristic() != 0 {
        return Err(ChainError::EulerCharacteristic(
            chain.euler_characteristic(),
        ));
    }
    Ok(chain)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSurface {
    pub components: u32,
    pub genus: u32,
}

impl CobordismChain {
    pub fn records(&self) -> &[CriticalRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn type_vector(&self) -> MorseType {
        let mut t = [0; 4];
        for r in &self.records {
            t[r.index as usize] += 1;
        }
        t
    }

    pub fn euler_characteristic(&self) -> i64 {
        let t = self.type_vector();
        t[0] as i64 - t[1] as i64 + t[2] as i64 - t[3] as i64
    }

    pub fn is_closed(&self) -> bool {
        let t = self.type_vector();
        t[0] >= 1 && t[3] >= 1
    }

    pub fn is_sorted(&self) -> bool {
        self.records.windows(2).all(|w| w[0].index <= w[1].index)
    }

    fn position(&self, id: &str) -> Result<usize, ChainError> {
        self.records
            .iter()
            .position(|r| r.id == id)
            .ok_or_else(|| ChainError::UnknownId(id.to_string()))
    }

    pub fn record(&self, id: &str) -> Option<&CriticalRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Incidence between two records in either order; 0 when none is recorded.
    pub fn incidence_between(&self, a: &CriticalRecord, b: &CriticalRecord) -> i64 {
        a.incidence
            .get(&b.id)
            .or_else(|| b.incidence.get(&a.id))
            .copied()
            .unwrap_or(0)
    }

    /// The chain of `-f`: reversed order, index `3 - i`, incidences carried
    /// over to the dual pairs.
    pub fn dual(&self) -> CobordismChain {
        let mut records: Vec<CriticalRecord> = self
            .records
            .iter()
            .rev()
            .map(|r| CriticalRecord::new(r.id.clone(), 3 - r.index))
            .collect();
        let pos: HashMap<&str, usize> = records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.as_str(), i))
            .collect();
        let mut moved = Vec::new();
        for r in &self.records {
            for (partner, &v) in &r.incidence {
                moved.push((pos[partner.as_str()], r.id.clone(), v));
            }
        }
        for (at, partner, v) in moved {
            records[at].incidence.insert(partner, v);
        }
        CobordismChain { records }
    }
}

/// Level surfaces between consecutive records of a sorted closed chain.
///
/// An index-1 point joins two components when there are several, and adds a
/// handle otherwise; an index-2 point removes a handle when one exists, and
/// splits off a sphere otherwise.
pub fn boundary_profile(chain: &CobordismChain) -> Result<Vec<LevelSurface>, ChainError> {
    if !chain.is_closed() {
        return Err(ChainError::NotClosed);
    }
    if !chain.is_sorted() {
        return Err(ChainError::NotSorted);
    }
    let mut level = LevelSurface {
        components: 0,
        genus: 0,
    };
    let mut out = Vec::with_capacity(chain.len().saturating_sub(1));
    for r in &chain.records[..chain.len() - 1] {
        match r.index {
            0 => level.components += 1,
            1 if level.components > 1 => level.components -= 1,
            1 => level.genus += 1,
            2 if level.genus > 0 => level.genus -= 1,
            2 => level.components += 1,
            _ => level.components = level.components.saturating_sub(1),
        }
        out.push(level);
    }
    Ok(out)
}

pub fn boundary_genus_profile(chain: &CobordismChain) -> Result<Vec<u32>, ChainError> {
    Ok(boundary_profile(chain)?
        .into_iter()
        .map(|l| l.genus)
        .collect())
}

/// Reorders the chain so that position `i` holds the record previously at
/// `target_order[i]`. Records may only pass each other when they have equal
/// index or zero incidence.
pub fn rearrange(
    chain: &CobordismChain,
    target_order: &[usize],
) -> Result<CobordismChain, ChainError> {
    let n = chain.len();
    let mut new_pos = vec![usize::MAX; n];
    if target_order.len() != n {
        return Err(ChainError::InvalidPermutation(n));
    }
    for (new, &old) in target_order.iter().enumerate() {
        if old >= n || new_pos[old] != usize::MAX {
            return Err(ChainError::InvalidPermutation(n));
        }
        new_pos[old] = new;
    }
    for a in 0..n {
        for b in a + 1..n {
            if new_pos[a] < new_pos[b] {
                continue;
            }
            let (ra, rb) = (&chain.records[a], &chain.records[b]);
            let pairing = chain.incidence_between(ra, rb);
            if ra.index != rb.index && pairing != 0 {
                return Err(ChainError::IllegalCommutation {
                    first: ra.id.clone(),
                    second: rb.id.clone(),
                    pairing,
                });
            }
        }
    }
    Ok(CobordismChain {
        records: target_order
            .iter()
            .map(|&i| chain.records[i].clone())
            .collect(),
    })
}

/// Removes a pair of critical points of adjacent index whose incidence is
/// ±1. Incidence entries pointing at the removed records are dropped; all
/// others are kept as they are.
pub fn cancel_pair(
    chain: &CobordismChain,
    id1: &str,
    id2: &str,
) -> Result<CobordismChain, ChainError> {
    let (p1, p2) = (chain.position(id1)?, chain.position(id2)?);
    let (r1, r2) = (&chain.records[p1], &chain.records[p2]);
    let (lower, upper) = if r1.index < r2.index {
        (r1, r2)
    } else {
        (r2, r1)
    };
    if upper.index != lower.index + 1 {
        return Err(ChainError::NonAdjacentIndices(id1.into(), id2.into()));
    }
    let pairing = chain.incidence_between(lower, upper);
    if pairing.abs() != 1 {
        return Err(ChainError::NotUnitPairing {
            lower: lower.id.clone(),
            upper: upper.id.clone(),
            pairing,
        });
    }
    let gone: HashSet<&str> = [id1, id2].into();
    let records = chain
        .records
        .iter()
        .filter(|r| !gone.contains(r.id.as_str()))
        .map(|r| CriticalRecord {
            id: r.id.clone(),
            index: r.index,
            incidence: r
                .incidence
                .iter()
                .filter(|(k, _)| !gone.contains(k.as_str()))
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        })
        .collect();
    Ok(CobordismChain { records })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancelMove {
    pub lower: RecordId,
    pub upper: RecordId,
    pub indices: [u8; 2],
    pub type_after: MorseType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    #[serde(skip)]
    pub chain: Option<CobordismChain>,
    pub final_type: MorseType,
    pub moves: Vec<CancelMove>,
}

/// Lowest `(lower id, upper id)` pair with unit incidence whose lower index
/// is in `lower_indices`.
fn least_unit_pair(chain: &CobordismChain, lower_indices: &[u8]) -> Option<(RecordId, RecordId)> {
    chain
        .records
        .iter()
        .filter(|r| lower_indices.contains(&r.index))
        .flat_map(|r| {
            r.incidence
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .map(move |(k, _)| (r.id.clone(), k.clone()))
        })
        .min()
}

/// Greedy cancellation: first 0/1 and 2/3 pairs while more than one
/// minimum (maximum) remains, then 1/2 pairs. Returns the fixed point and
/// the move trace.
pub fn normalize(chain: &CobordismChain) -> Normalization {
    let mut current = chain.clone();
    let mut moves = Vec::new();
    let mut apply = |current: &mut CobordismChain, lower: RecordId, upper: RecordId| {
        let index = current.record(&lower).expect("pair from chain").index;
        *current = cancel_pair(current, &lower, &upper).expect("unit pair of adjacent index");
        moves.push(CancelMove {
            lower,
            upper,
            indices: [index, index + 1],
            type_after: current.type_vector(),
        });
    };
    loop {
        let t = current.type_vector();
        let mut allowed = Vec::new();
        if t[0] > 1 {
            allowed.push(0);
        }
        if t[3] > 1 {
            allowed.push(2);
        }
        match least_unit_pair(&current, &allowed) {
            Some((lower, upper)) => apply(&mut current, lower, upper),
            None => break,
        }
    }
    while let Some((lower, upper)) = least_unit_pair(&current, &[1]) {
        apply(&mut current, lower, upper);
    }
    Normalization {
        final_type: current.type_vector(),
        chain: Some(current),
        moves,
    }
}

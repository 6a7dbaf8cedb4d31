//! Fundamental groups of closed orientable 3-manifolds given by genus-k
//! attaching data.
//!
//! The boundary surface of the index-1 handlebody carries the canonical
//! generators, with `a_i` the belt circle of the i-th 1-handle (it bounds a
//! disc in the handlebody) and `b_i` its dual. Each 2-handle is attached
//! along a word `θ_j`. Deleting every `a` letter from `θ_j` gives its image
//! in the free group on `b_1..b_k`, so `π1 = ⟨b_1..b_k | proj(θ_1)..proj(θ_k)⟩`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intersection::pairing;
use crate::linalg;
use crate::words::{
    abelianize, parse_word_with, CurveWord, Kind, Letter, ParseOptions, Syllable, WordError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeegaardError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("expected {expected} attaching words, got {got}")]
    WrongWordCount { expected: usize, got: usize },
    #[error("handle index {index} is outside 1..={genus}")]
    IndexOutOfRange { index: u32, genus: u32 },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardDiagram {
    genus: u32,
    attaching: Vec<CurveWord>,
}

impl HeegaardDiagram {
    pub fn new(genus: u32, attaching: Vec<CurveWord>) -> Result<Self, HeegaardError> {
        if genus == 0 {
            return Err(WordError::ZeroGenus.into());
        }
        if attaching.len() != genus as usize {
            return Err(HeegaardError::WrongWordCount {
                expected: genus as usize,
                got: attaching.len(),
            });
        }
        if let Some(w) = attaching.iter().find(|w| w.genus() != genus) {
            return Err(WordError::GenusMismatch {
                left: genus,
                right: w.genus(),
            }
            .into());
        }
        Ok(HeegaardDiagram { genus, attaching })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn attaching(&self) -> &[CurveWord] {
        &self.attaching
    }

    /// `P[j][i] = θ_j · a_i`.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let alphas: Vec<CurveWord> = (1..=self.genus)
            .map(|i| CurveWord::letter(self.genus, Letter::alpha(i)).expect("index in range"))
            .collect();
        self.attaching
            .iter()
            .map(|theta| {
                alphas
                    .iter()
                    .map(|a| pairing(theta, a).expect("same genus"))
                    .collect()
            })
            .collect()
    }
}

pub fn build_heegaard<S: AsRef<str>>(
    genus: u32,
    words: &[S],
) -> Result<HeegaardDiagram, HeegaardError> {
    build_heegaard_with(genus, words, ParseOptions::default())
}

pub fn build_heegaard_with<S: AsRef<str>>(
    genus: u32,
    words: &[S],
    opts: ParseOptions,
) -> Result<HeegaardDiagram, HeegaardError> {
    if genus == 0 {
        return Err(WordError::ZeroGenus.into());
    }
    if words.len() != genus as usize {
        return Err(HeegaardError::WrongWordCount {
            expected: genus as usize,
            got: words.len(),
        });
    }
    let attaching = words
        .iter()
        .map(|w| parse_word_with(w.as_ref(), genus, opts))
        .collect::<Result<Vec<_>, _>>()?;
    HeegaardDiagram::new(genus, attaching)
}

/// Reads the line-oriented diagram format: `genus k` followed by `k` words.
/// `#` starts a comment; blank lines are ignored.
pub fn parse_diagram_file(
    text: &str,
    opts: ParseOptions,
) -> Result<HeegaardDiagram, HeegaardError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines.next().ok_or(HeegaardError::Format {
        line: 1,
        message: "missing 'genus k' header".into(),
    })?;
    let genus: u32 = header
        .strip_prefix("genus")
        .map(str::trim)
        .and_then(|g| g.parse().ok())
        .ok_or_else(|| HeegaardError::Format {
            line: line_no,
            message: format!("expected 'genus k', found {header:?}"),
        })?;
    let words: Vec<&str> = lines.map(|(_, l)| l).collect();
    build_heegaard_with(genus, &words, opts)
}

/// Image of a surface word in the handlebody group: every `a` letter is
/// deleted, the `b` letters stay in order, and the result is freely reduced.
pub fn project_to_handlebody(w: &CurveWord) -> CurveWord {
    CurveWord::from_syllables(
        w.genus(),
        w.syllables()
            .iter()
            .filter(|s| s.letter.kind == Kind::Beta)
            .copied(),
    )
    .expect("subsequence of a valid word")
}

/// A one-relator-per-handle presentation on generators `b_1..b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub genus: u32,
    pub relators: Vec<CurveWord>,
    /// Row j holds the `b`-exponent sums of relator j.
    pub abelianization: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn generators(&self) -> Vec<String> {
        (1..=self.genus)
            .map(|i| Letter::beta(i).to_string())
            .collect()
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| {
                if r.is_identity() {
                    "1".to_string()
                } else {
                    r.to_string()
                }
            })
            .collect()
    }

    /// |det| of the abelianization matrix, i.e. |H_1| when finite (0 means infinite).
    pub fn abelian_order(&self) -> u128 {
        linalg::determinant(&self.abelianization)
            .map(i128::unsigned_abs)
            .unwrap_or(0)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "< {} | {} >",
            self.generators().join(", "),
            self.relator_strings().join(", ")
        )
    }
}

pub fn presentation(d: &HeegaardDiagram) -> Presentation {
    let relators: Vec<CurveWord> = d.attaching.iter().map(project_to_handlebody).collect();
    let abelianization = relators.iter().map(|r| abelianize(r).n).collect();
    Presentation {
        genus: d.genus,
        relators,
        abelianization,
    }
}

/// Whether `a_j` and `b_j` each occur as often with exponent +1 as with −1
/// in the single-letter product form of `w`.
///
/// Free reduction removes inverse letters in pairs, so the answer is the same
/// for a word and its reduced form; it amounts to both `j`-th exponent sums
/// vanishing.
pub fn homogeneity_check(w: &CurveWord, j: u32) -> Result<bool, HeegaardError> {
    if j == 0 || j > w.genus() {
        return Err(HeegaardError::IndexOutOfRange {
            index: j,
            genus: w.genus(),
        });
    }
    Ok(homogeneous_in(w.syllables(), j))
}

/// Same as [`homogeneity_check`] for an unreduced product expression.
pub fn homogeneous_in(product: &[Syllable], j: u32) -> bool {
    let mut counts = [[0u64; 2]; 2];
    for s in product.iter().filter(|s| s.letter.index == j) {
        let kind = usize::from(s.letter.kind == Kind::Beta);
        let dir = usize::from(s.exp < 0);
        counts[kind][dir] += s.exp.unsigned_abs();
    }
    counts[0][0] == counts[0][1] && counts[1][0] == counts[1][1]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// `sigma[i]` is the (0-based) attaching word paired with handle `i`.
    pub sigma: Vec<usize>,
    /// `r_i = |θ_{σ(i)} · a_i|`; zero stands for an infinite cyclic factor.
    pub orders: Vec<u64>,
}

/// Looks for a permutation under which every attaching word pairs
/// nontrivially with at most its own belt circle `a_i`, i.e. the pairing
/// matrix becomes diagonal.
pub fn block_decompose(d: &HeegaardDiagram) -> Option<BlockDecomposition> {
    let p = d.pairing_matrix();
    let k = d.genus as usize;
    let sigma = linalg::perfect_matching(k, |i, j| (0..k).all(|t| t == i || p[j][t] == 0))?;
    let orders = sigma
        .iter()
        .enumerate()
        .map(|(i, &j)| p[j][i].unsigned_abs())
        .collect();
    Some(BlockDecomposition { sigma, orders })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// 1-based, `sigma[i]` = index of the word paired with handle i+1.
    pub sigma: Vec<usize>,
    pub orders: Vec<u64>,
    pub pi1: String,
    pub simply_connected: bool,
    pub finite: bool,
    pub prime: bool,
}

impl ClassificationReport {
    pub fn undecided() -> Self {
        ClassificationReport {
            sigma: Vec::new(),
            orders: Vec::new(),
            pi1: "undecided".into(),
            simply_connected: false,
            finite: false,
            prime: false,
        }
    }

    pub fn is_decided(&self) -> bool {
        self.pi1 != "undecided"
    }
}

/// Renders a free product of cyclic groups; order 1 factors are dropped,
/// order 0 is `Z`, and the empty product is `1`.
pub fn free_product_name(orders: &[u64]) -> String {
    let factors: Vec<String> = orders
        .iter()
        .filter(|&&r| r != 1)
        .map(|&r| {
            if r == 0 {
                "Z".to_string()
            } else {
                format!("Z/{r}")
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" * ")
    }
}

/// Block-form classification. Order-1 blocks are trivial summands and are
/// discarded; the group is finite and the manifold prime exactly when at
/// most one finite nontrivial factor is left.
pub fn classify(d: &HeegaardDiagram) -> ClassificationReport {
    let Some(blocks) = block_decompose(d) else {
        return ClassificationReport::undecided();
    };
    let nontrivial: Vec<u64> = blocks.orders.iter().copied().filter(|&r| r != 1).collect();
    let finite = nontrivial.iter().all(|&r| r >= 2) && nontrivial.len() <= 1;
    ClassificationReport {
        sigma: blocks.sigma.iter().map(|j| j + 1).collect(),
        pi1: free_product_name(&blocks.orders),
        simply_connected: nontrivial.is_empty(),
        finite,
        prime: nontrivial.len() <= 1,
        orders: blocks.orders,
    }
}

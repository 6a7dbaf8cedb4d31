//! Algebraic intersection pairing on a genus-k surface, the intersection
//! degree lower bound, and change-of-basis matrices between two canonical
//! generator systems.
//!
//! Orientation is fixed so that `a_i · b_i = +1`. In abelianized coordinates
//! `(m, n)` the pairing is the standard symplectic form
//! `ω((m, n), (m', n')) = Σ_i (m_i n'_i − n_i m'_i)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, IntMatrix, MatrixError};
use crate::words::{abelianize, AbelianCoords, CurveWord, Letter, WordError};

/// Signed intersection number `l · g`.
pub type PairingValue = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("candidate must have {genus} theta and {genus} gamma words, got {theta} and {gamma}")]
    CandidateSize {
        genus: u32,
        theta: usize,
        gamma: usize,
    },
}

fn check_genus(l: &CurveWord, g: &CurveWord) -> Result<(), WordError> {
    if l.genus() != g.genus() {
        return Err(WordError::GenusMismatch {
            left: l.genus(),
            right: g.genus(),
        });
    }
    Ok(())
}

pub fn symplectic_form(x: &AbelianCoords, y: &AbelianCoords) -> i64 {
    (0..x.m.len())
        .map(|i| x.m[i] * y.n[i] - x.n[i] * y.m[i])
        .sum()
}

pub fn pairing(l: &CurveWord, g: &CurveWord) -> Result<PairingValue, IntersectionError> {
    check_genus(l, g)?;
    Ok(symplectic_form(&abelianize(l), &abelianize(g)))
}

/// The pairings of a word with each canonical generator; these are the
/// coefficients of its linear expression in the abelianization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuCoords {
    /// `l · a_i`
    pub dot_alpha: Vec<i64>,
    /// `l · b_i`
    pub dot_beta: Vec<i64>,
}

pub fn mu_coords(l: &CurveWord) -> MuCoords {
    let c = abelianize(l);
    MuCoords {
        dot_alpha: c.n.iter().map(|x| -x).collect(),
        dot_beta: c.m,
    }
}

/// Per-handle 2x2 determinants `det [[l·b_i, −l·a_i], [g·b_i, −g·a_i]]`.
pub fn handle_determinants(l: &CurveWord, g: &CurveWord) -> Result<Vec<i64>, IntersectionError> {
    check_genus(l, g)?;
    let (x, y) = (mu_coords(l), mu_coords(g));
    Ok((0..x.dot_alpha.len())
        .map(|i| x.dot_beta[i] * (-y.dot_alpha[i]) - (-x.dot_alpha[i]) * y.dot_beta[i])
        .collect())
}

/// Lower bound on the minimal crossing count of representatives of the two
/// classes: the sum of absolute per-handle determinants. Exact for genus 1,
/// only a bound otherwise.
pub fn degree_lower_bound(l: &CurveWord, g: &CurveWord) -> Result<u64, IntersectionError> {
    Ok(handle_determinants(l, g)?
        .into_iter()
        .map(i64::unsigned_abs)
        .sum())
}

fn subscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

/// Renders `l = Σ (l·b_i) a_i − Σ (l·a_i) b_i` modulo the commutator
/// subgroup, e.g. `2·α₁ + 3·β₁`. The zero class renders as `0`.
pub fn linear_expression(l: &CurveWord) -> String {
    let mu = mu_coords(l);
    let terms = mu
        .dot_beta
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, format!("α{}", subscript(i as u32 + 1))))
        .chain(
            mu.dot_alpha
                .iter()
                .enumerate()
                .map(|(i, &c)| (-c, format!("β{}", subscript(i as u32 + 1)))),
        )
        .filter(|(c, _)| *c != 0);
    let mut out = String::new();
    for (c, sym) in terms {
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&format!("{}·{}", c.unsigned_abs(), sym));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A second system of 2k curves `θ_1..θ_k, γ_1..γ_k` written in the canonical
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCandidate {
    genus: u32,
    theta: Vec<CurveWord>,
    gamma: Vec<CurveWord>,
}

impl BasisCandidate {
    pub fn new(
        genus: u32,
        theta: Vec<CurveWord>,
        gamma: Vec<CurveWord>,
    ) -> Result<Self, IntersectionError> {
        if genus == 0 {
            return Err(WordError::ZeroGenus.into());
        }
        if theta.len() != genus as usize || gamma.len() != genus as usize {
            return Err(IntersectionError::CandidateSize {
                genus,
                theta: theta.len(),
                gamma: gamma.len(),
            });
        }
        for w in theta.iter().chain(&gamma) {
            if w.genus() != genus {
                return Err(WordError::GenusMismatch {
                    left: genus,
                    right: w.genus(),
                }
                .into());
            }
        }
        Ok(BasisCandidate {
            genus,
            theta,
            gamma,
        })
    }

    /// The canonical system itself: `θ_i = a_i`, `γ_i = b_i`.
    pub fn canonical(genus: u32) -> Result<Self, IntersectionError> {
        let theta = (1..=genus)
            .map(|i| CurveWord::letter(genus, Letter::alpha(i)))
            .collect::<Result<_, _>>()?;
        let gamma = (1..=genus)
            .map(|i| CurveWord::letter(genus, Letter::beta(i)))
            .collect::<Result<_, _>>()?;
        Self::new(genus, theta, gamma)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn theta(&self) -> &[CurveWord] {
        &self.theta
    }

    pub fn gamma(&self) -> &[CurveWord] {
        &self.gamma
    }

    fn canonical_letters(&self) -> Result<(Vec<CurveWord>, Vec<CurveWord>), IntersectionError> {
        let k = self.genus;
        let alpha = (1..=k)
            .map(|i| CurveWord::letter(k, Letter::alpha(i)))
            .collect::<Result<_, _>>()?;
        let beta = (1..=k)
            .map(|i| CurveWord::letter(k, Letter::beta(i)))
            .collect::<Result<_, _>>()?;
        Ok((alpha, beta))
    }
}

/// The 2k x 2k matrix `H = [[θᵀ·β, −θᵀ·α], [γᵀ·β, −γᵀ·α]]` expressing the
/// candidate system in the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisMatrix {
    pub genus: u32,
    #[serde(rename = "H")]
    pub h: IntMatrix,
    pub det: i128,
}

pub fn basis_matrix(c: &BasisCandidate) -> Result<BasisMatrix, IntersectionError> {
    let k = c.genus as usize;
    let (alpha, beta) = c.canonical_letters()?;
    let mut h = vec![vec![0i64; 2 * k]; 2 * k];
    for (r, w) in c.theta.iter().chain(&c.gamma).enumerate() {
        for j in 0..k {
            h[r][j] = pairing(w, &beta[j])?;
            h[r][k + j] = -pairing(w, &alpha[j])?;
        }
    }
    let det = linalg::determinant(&h)?;
    Ok(BasisMatrix {
        genus: c.genus,
        h,
        det,
    })
}

/// The matrix `[[αᵀ·γ, −αᵀ·θ], [βᵀ·γ, −βᵀ·θ]]` expressing the canonical
/// system in the candidate one. For a symplectic candidate it is `H⁻¹`.
pub fn inverse_block_matrix(c: &BasisCandidate) -> Result<IntMatrix, IntersectionError> {
    let k = c.genus as usize;
    let (alpha, beta) = c.canonical_letters()?;
    let mut out = vec![vec![0i64; 2 * k]; 2 * k];
    for (r, w) in alpha.iter().chain(&beta).enumerate() {
        for j in 0..k {
            out[r][j] = pairing(w, &c.gamma[j])?;
            out[r][k + j] = -pairing(w, &c.theta[j])?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVerdict {
    pub unimodular: bool,
    /// `sigma[i]` is the (0-based) candidate pair matched to handle `i`.
    pub block_permutation: Option<Vec<usize>>,
    /// Determinant of each matched 2x2 block, in handle order.
    pub block_determinants: Vec<i64>,
    pub diagnostics: String,
}

/// The 2x2 block of candidate pair `j` against handle `i`, or `None` if the
/// pair has a nonzero coordinate on some other handle.
fn exclusive_block(m: &BasisMatrix, i: usize, j: usize) -> Option<i64> {
    let k = m.genus as usize;
    let (theta, gamma) = (&m.h[j], &m.h[k + j]);
    let off_handle_zero = (0..k)
        .filter(|&t| t != i)
        .all(|t| theta[t] == 0 && theta[k + t] == 0 && gamma[t] == 0 && gamma[k + t] == 0);
    off_handle_zero.then(|| theta[i] * gamma[k + i] - theta[k + i] * gamma[i])
}

/// Checks `|det H| = 1` and, if so, looks for a permutation pairing each
/// handle with one candidate pair whose 2x2 block is unimodular and whose
/// coordinates vanish on every other handle.
pub fn verify_basis(m: &BasisMatrix) -> BasisVerdict {
    let k = m.genus as usize;
    if m.det.abs() != 1 {
        return BasisVerdict {
            unimodular: false,
            block_permutation: None,
            block_determinants: Vec::new(),
            diagnostics: format!("det H = {}, not ±1", m.det),
        };
    }
    let sigma = linalg::perfect_matching(
        k,
        |i, j| matches!(exclusive_block(m, i, j), Some(d) if d.abs() == 1),
    );
    match sigma {
        Some(sigma) => {
            let dets = sigma
                .iter()
                .enumerate()
                .map(|(i, &j)| exclusive_block(m, i, j).expect("matched block is exclusive"))
                .collect();
            BasisVerdict {
                unimodular: true,
                block_permutation: Some(sigma),
                block_determinants: dets,
                diagnostics: "unimodular with block permutation".into(),
            }
        }
        None => {
            let culprit = (0..k).find(|&j| {
                !(0..k).any(|i| matches!(exclusive_block(m, i, j), Some(d) if d.abs() == 1))
            });
            let diagnostics = match culprit {
                Some(j) => format!(
                    "unimodular, but candidate pair {} has no exclusive unimodular 2x2 block",
                    j + 1
                ),
                None => "unimodular, but no permutation assigns distinct handles".into(),
            };
            BasisVerdict {
                unimodular: true,
                block_permutation: None,
                block_determinants: Vec::new(),
                diagnostics,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, surface_relator};

    fn w(text: &str, genus: u32) -> CurveWord {
        parse_word(text, genus).unwrap()
    }

    fn candidate(genus: u32, theta: &[&str], gamma: &[&str]) -> BasisCandidate {
        BasisCandidate::new(
            genus,
            theta.iter().map(|t| w(t, genus)).collect(),
            gamma.iter().map(|t| w(t, genus)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&w("a1", 1), &w("b1", 1)).unwrap(), 1);
        assert_eq!(pairing(&w("a1", 2), &w("b2", 2)).unwrap(), 0);
        assert_eq!(pairing(&w("a1^2 b1^3", 1), &w("a1 b1^-1", 1)).unwrap(), -5);
        assert!(matches!(
            pairing(&w("a1", 1), &w("a1", 2)),
            Err(IntersectionError::Word(WordError::GenusMismatch { .. }))
        ));
    }

    #[test]
    fn mu_coords_examples() {
        let id = mu_coords(&CurveWord::identity(2).unwrap());
        assert_eq!((id.dot_alpha, id.dot_beta), (vec![0, 0], vec![0, 0]));
        let b = mu_coords(&w("b1", 1));
        assert_eq!((b.dot_alpha, b.dot_beta), (vec![-1], vec![0]));
        let x = mu_coords(&w("a1^3 b2", 2));
        assert_eq!((x.dot_alpha, x.dot_beta), (vec![0, -1], vec![3, 0]));
    }

    #[test]
    fn degree_bound_examples() {
        assert_eq!(degree_lower_bound(&w("a1", 1), &w("b1", 1)).unwrap(), 1);
        let l = w("a1^2 b2^-1 a1 b1^4", 2);
        assert_eq!(degree_lower_bound(&l, &l).unwrap(), 0);
        assert_eq!(
            degree_lower_bound(&w("a1^2 b1^3", 1), &w("a1 b1^-1", 1)).unwrap(),
            5
        );
        // Contributions on different handles add in absolute value even when
        // the signed pairing cancels.
        let (l, g) = (w("a1 a2", 2), w("b1 b2^-1", 2));
        assert_eq!(pairing(&l, &g).unwrap(), 0);
        assert_eq!(degree_lower_bound(&l, &g).unwrap(), 2);
    }

    #[test]
    fn basis_matrix_examples() {
        let m = basis_matrix(&candidate(1, &["a1"], &["b1"])).unwrap();
        assert_eq!((m.h.clone(), m.det), (vec![vec![1, 0], vec![0, 1]], 1));
        let m = basis_matrix(&candidate(1, &["b1"], &["a1^-1"])).unwrap();
        assert_eq!((m.h.clone(), m.det), (vec![vec![0, 1], vec![-1, 0]], 1));
        let m = basis_matrix(&candidate(1, &["a1^2"], &["b1"])).unwrap();
        assert_eq!((m.h.clone(), m.det), (vec![vec![2, 0], vec![0, 1]], 2));
    }

    #[test]
    fn basis_matrix_json_layout() {
        let m = basis_matrix(&candidate(1, &["b1"], &["a1^-1"])).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"genus":1,"H":[[0,1],[-1,0]],"det":1}"#);
    }

    #[test]
    fn candidate_validation() {
        assert!(matches!(
            BasisCandidate::new(2, vec![w("a1", 2)], vec![w("b1", 2)]),
            Err(IntersectionError::CandidateSize { .. })
        ));
        assert!(matches!(
            BasisCandidate::new(1, vec![w("a1", 2)], vec![w("b1", 1)]),
            Err(IntersectionError::Word(WordError::GenusMismatch { .. }))
        ));
    }

    #[test]
    fn verify_basis_examples() {
        let v = verify_basis(&basis_matrix(&candidate(1, &["a1"], &["b1"])).unwrap());
        assert!(v.unimodular);
        assert_eq!(v.block_permutation, Some(vec![0]));

        let v = verify_basis(&basis_matrix(&candidate(1, &["a1^2"], &["b1"])).unwrap());
        assert!(!v.unimodular);
        assert_eq!(v.block_permutation, None);
        assert!(v.diagnostics.contains("det H = 2"));

        let c = candidate(2, &["b1", "b2"], &["a1^-1", "a2^-1"]);
        let v = verify_basis(&basis_matrix(&c).unwrap());
        assert!(v.unimodular);
        assert_eq!(v.block_permutation, Some(vec![0, 1]));
        assert!(v.block_determinants.iter().all(|d| d.abs() == 1));

        // Swapped handles need a nontrivial permutation.
        let c = candidate(2, &["a2", "a1"], &["b2", "b1"]);
        let v = verify_basis(&basis_matrix(&c).unwrap());
        assert_eq!(v.block_permutation, Some(vec![1, 0]));
    }

    #[test]
    fn verify_basis_unimodular_without_blocks() {
        // θ1 = a1 a2 mixes handles; still symplectic together with the others.
        let c = candidate(2, &["a1 a2", "a2"], &["b1", "b2 b1^-1"]);
        let m = basis_matrix(&c).unwrap();
        assert_eq!(m.det.abs(), 1);
        let v = verify_basis(&m);
        assert!(v.unimodular);
        assert_eq!(v.block_permutation, None);
        assert!(v.diagnostics.contains("candidate pair 1"));
    }

    #[test]
    fn inverse_blocks_identity_product() {
        let c = candidate(2, &["a1 a2", "a2"], &["b1", "b2 b1^-1"]);
        let h = basis_matrix(&c).unwrap().h;
        let k = inverse_block_matrix(&c).unwrap();
        assert_eq!(linalg::mat_mul(&h, &k).unwrap(), linalg::identity(4));
        assert_eq!(linalg::unimodular_inverse(&h).unwrap().unwrap(), k);
    }

    #[test]
    fn linear_expression_examples() {
        assert_eq!(linear_expression(&w("a1", 1)), "1·α₁");
        assert_eq!(linear_expression(&surface_relator(3).unwrap()), "0");
        assert_eq!(linear_expression(&w("a1^2 b1^3", 1)), "2·α₁ + 3·β₁");
        assert_eq!(linear_expression(&w("b2^-1 a1^-4", 2)), "-4·α₁ - 1·β₂");
    }
}

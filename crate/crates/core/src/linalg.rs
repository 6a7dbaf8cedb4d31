//! Exact integer matrix routines: fraction-free determinant, products and
//! inverses of unimodular matrices, and bipartite matching.

use thiserror::Error;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}x{1} times {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("integer overflow during exact elimination")]
    Overflow,
}

fn check_square(a: &[Vec<i64>]) -> Result<usize, MatrixError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(MatrixError::NotSquare);
    }
    Ok(n)
}

/// Determinant by Bareiss fraction-free elimination. Every intermediate value
/// is a minor of the input, so division is always exact.
pub fn determinant(a: &[Vec<i64>]) -> Result<i128, MatrixError> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = m[i][j].checked_mul(m[k][k]).ok_or(MatrixError::Overflow)?;
                let rhs = m[i][k].checked_mul(m[k][j]).ok_or(MatrixError::Overflow)?;
                m[i][j] = lhs.checked_sub(rhs).ok_or(MatrixError::Overflow)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<IntMatrix, MatrixError> {
    let (ar, ac) = (a.len(), a.first().map_or(0, Vec::len));
    let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
    if ac != br {
        return Err(MatrixError::DimensionMismatch(ar, ac, br, bc));
    }
    let mut out = vec![vec![0i64; bc]; ar];
    for i in 0..ar {
        for j in 0..bc {
            let mut acc = 0i64;
            for t in 0..ac {
                acc = a[i][t]
                    .checked_mul(b[t][j])
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(MatrixError::Overflow)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Exact inverse of a unimodular matrix using only integer row operations.
/// Returns `None` when `|det| != 1`.
pub fn unimodular_inverse(a: &[Vec<i64>]) -> Result<Option<IntMatrix>, MatrixError> {
    let n = check_square(a)?;
    let det = determinant(a)?;
    if det.abs() != 1 {
        return Ok(None);
    }
    // Euclid down each column; with det = ±1 every pivot ends at ±1.
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut inv: Vec<Vec<i128>> = identity(n)
        .into_iter()
        .map(|row| row.into_iter().map(i128::from).collect())
        .collect();
    for col in 0..n {
        loop {
            let pivot = (col..n)
                .filter(|&r| m[r][col] != 0)
                .min_by_key(|&r| m[r][col].abs());
            let Some(p) = pivot else {
                // Unreachable for det = ±1.
                return Ok(None);
            };
            m.swap(col, p);
            inv.swap(col, p);
            let mut done = true;
            for r in col + 1..n {
                let q = m[r][col].div_euclid(m[col][col]);
                if q != 0 {
                    row_sub(&mut m, r, col, q)?;
                    row_sub(&mut inv, r, col, q)?;
                }
                if m[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
    }
    // Upper triangular with ±1 on the diagonal now; back-substitute.
    for col in (0..n).rev() {
        if m[col][col] == -1 {
            for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
                *x = -*x;
            }
        }
        for r in 0..col {
            let q = m[r][col];
            if q != 0 {
                row_sub(&mut m, r, col, q)?;
                row_sub(&mut inv, r, col, q)?;
            }
        }
    }
    inv.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| MatrixError::Overflow))
                .collect()
        })
        .collect::<Result<IntMatrix, _>>()
        .map(Some)
}

fn row_sub(m: &mut [Vec<i128>], target: usize, src: usize, q: i128) -> Result<(), MatrixError> {
    for j in 0..m[src].len() {
        let d = m[src][j].checked_mul(q).ok_or(MatrixError::Overflow)?;
        m[target][j] = m[target][j].checked_sub(d).ok_or(MatrixError::Overflow)?;
    }
    Ok(())
}

/// Perfect matching of left vertices `0..n` onto right vertices `0..n`
/// (Kuhn's augmenting paths). `allowed(i, j)` says whether left `i` may take
/// right `j`. Left vertices are processed in order and right candidates in
/// ascending order, so the result is deterministic.
pub fn perfect_matching<F>(n: usize, allowed: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| allowed(i, j)).collect())
        .collect();
    let mut right_owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        right_owner: &mut [Option<usize>],
    ) -> bool {
        // Prefer a free vertex before displacing an earlier assignment.
        if let Some(&j) = adj[i]
            .iter()
            .find(|&&j| !seen[j] && right_owner[j].is_none())
        {
            seen[j] = true;
            right_owner[j] = Some(i);
            return true;
        }
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            let free = match right_owner[j] {
                None => true,
                Some(other) => augment(other, adj, seen, right_owner),
            };
            if free {
                right_owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, &adj, &mut seen, &mut right_owner) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (j, owner) in right_owner.into_iter().enumerate() {
        assignment[owner.expect("perfect matching covers every right vertex")] = j;
    }
    Some(assignment)
}

//! Words in the canonical generators `a1, b1, ..., ak, bk` of the fundamental
//! group of a closed oriented genus-k surface.
//!
//! Words are kept freely reduced at all times. The surface relator
//! `[a1,b1]...[ak,bk]` is never applied at the word level; only the
//! abelianized coordinates are relator-aware.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the magnitude of a single exponent.
pub const DEFAULT_MAX_EXPONENT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("generator index {index} is outside genus {genus}")]
    IndexOutOfGenus { index: u32, genus: u32 },
    #[error("zero exponent at byte {position}")]
    ZeroExponent { position: usize },
    #[error("exponent magnitude exceeds the limit {limit}")]
    ExponentOverflow { limit: i64 },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },
    #[error("genus must be at least 1")]
    ZeroGenus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Alpha,
    Beta,
}

/// One canonical generator, `a_i` or `b_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: Kind,
    pub index: u32,
}

impl Letter {
    pub fn alpha(index: u32) -> Self {
        Letter {
            kind: Kind::Alpha,
            index,
        }
    }

    pub fn beta(index: u32) -> Self {
        Letter {
            kind: Kind::Beta,
            index,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::Alpha => 'a',
            Kind::Beta => 'b',
        };
        write!(f, "{}{}", c, self.index)
    }
}

/// A letter raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: i64,
}

impl Syllable {
    pub fn new(letter: Letter, exp: i64) -> Self {
        Syllable { letter, exp }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.exp)
        }
    }
}

/// Stack-based free reduction of a syllable sequence: merges equal adjacent
/// letters and drops zero exponents.
///
/// Fails only on `i64` overflow while merging.
pub fn free_reduce_syllables<I>(syllables: I) -> Result<Vec<Syllable>, WordError>
where
    I: IntoIterator<Item = Syllable>,
{
    let mut out: Vec<Syllable> = Vec::new();
    for s in syllables {
        if s.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.letter == s.letter => {
                top.exp = top
                    .exp
                    .checked_add(s.exp)
                    .ok_or(WordError::ExponentOverflow { limit: i64::MAX })?;
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(s),
        }
    }
    Ok(out)
}

/// A freely reduced word representing an element (or, when `cyclic`, a
/// conjugacy class) of the surface group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveWord {
    genus: u32,
    syllables: Vec<Syllable>,
    cyclic: bool,
}

impl CurveWord {
    pub fn identity(genus: u32) -> Result<Self, WordError> {
        Self::from_syllables(genus, Vec::new())
    }

    /// Builds a word, validating indices and freely reducing.
    pub fn from_syllables<I>(genus: u32, syllables: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Syllable>,
    {
        if genus == 0 {
            return Err(WordError::ZeroGenus);
        }
        let raw: Vec<Syllable> = syllables.into_iter().collect();
        for s in &raw {
            if s.letter.index == 0 || s.letter.index > genus {
                return Err(WordError::IndexOutOfGenus {
                    index: s.letter.index,
                    genus,
                });
            }
        }
        Ok(CurveWord {
            genus,
            syllables: free_reduce_syllables(raw)?,
            cyclic: false,
        })
    }

    /// A single generator to the first power.
    pub fn letter(genus: u32, letter: Letter) -> Result<Self, WordError> {
        Self::from_syllables(genus, [Syllable::new(letter, 1)])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Length in letters, i.e. the sum of absolute exponents.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.syllables
            .iter()
            .map(|s| s.exp.abs())
            .max()
            .unwrap_or(0)
    }

    /// Forgets the basepoint without changing the letters.
    pub fn into_cyclic(mut self) -> Self {
        self.cyclic = true;
        self
    }

    /// Expands into single-letter steps `(letter, ±1)`, the product form used
    /// for occurrence counting.
    pub fn unit_steps(&self) -> impl Iterator<Item = (Letter, i64)> + '_ {
        self.syllables.iter().flat_map(|s| {
            let sign = s.exp.signum();
            std::iter::repeat_n((s.letter, sign), s.exp.unsigned_abs() as usize)
        })
    }

    pub fn abelianize(&self) -> AbelianCoords {
        abelianize(self)
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// Exponent sums `m_i` (of `a_i`) and `n_i` (of `b_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianCoords {
    pub genus: u32,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
}

impl AbelianCoords {
    pub fn zero(genus: u32) -> Self {
        AbelianCoords {
            genus,
            m: vec![0; genus as usize],
            n: vec![0; genus as usize],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().chain(&self.n).all(|&x| x == 0)
    }

    /// The coordinate vector `(m_1..m_k, n_1..n_k)`.
    pub fn to_vec(&self) -> Vec<i64> {
        self.m.iter().chain(&self.n).copied().collect()
    }

    pub fn add(&self, other: &AbelianCoords) -> AbelianCoords {
        AbelianCoords {
            genus: self.genus,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
            n: self.n.iter().zip(&other.n).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> AbelianCoords {
        AbelianCoords {
            genus: self.genus,
            m: self.m.iter().map(|x| -x).collect(),
            n: self.n.iter().map(|x| -x).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub max_exponent: i64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            max_exponent: DEFAULT_MAX_EXPONENT,
        }
    }
}

/// Parses `a1 b2^-3 a1`-style text with the default exponent limit.
pub fn parse_word(text: &str, genus: u32) -> Result<CurveWord, WordError> {
    parse_word_with(text, genus, ParseOptions::default())
}

pub fn parse_word_with(text: &str, genus: u32, opts: ParseOptions) -> Result<CurveWord, WordError> {
    if genus == 0 {
        return Err(WordError::ZeroGenus);
    }
    let mut syllables = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let end = bytes[pos..]
            .iter()
            .position(|b| b.is_ascii_whitespace())
            .map_or(bytes.len(), |off| pos + off);
        syllables.push(parse_token(&text[start..end], start, genus, opts)?);
        pos = end;
    }
    let word = CurveWord::from_syllables(genus, syllables)?;
    if word.max_abs_exponent() > opts.max_exponent {
        return Err(WordError::ExponentOverflow {
            limit: opts.max_exponent,
        });
    }
    Ok(word)
}

fn parse_token(
    tok: &str,
    offset: usize,
    genus: u32,
    opts: ParseOptions,
) -> Result<Syllable, WordError> {
    let syntax = |at: usize, message: &str| WordError::Syntax {
        position: offset + at,
        message: message.to_string(),
    };
    let kind = match tok.as_bytes()[0] {
        b'a' => Kind::Alpha,
        b'b' => Kind::Beta,
        _ => return Err(syntax(0, "expected generator 'a' or 'b'")),
    };
    let rest = &tok[1..];
    let (index_str, exp_str) = match rest.find('^') {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    if index_str.is_empty() || !index_str.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(1, "expected decimal generator index"));
    }
    let index: u32 = index_str
        .parse()
        .map_err(|_| syntax(1, "generator index too large"))?;
    if index == 0 || index > genus {
        return Err(WordError::IndexOutOfGenus { index, genus });
    }
    let exp = match exp_str {
        None => 1,
        Some(e) => {
            let at = 2 + index_str.len();
            let digits = e.strip_prefix(['-', '+']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(at, "expected signed integer exponent"));
            }
            let value: i64 = e.parse().map_err(|_| WordError::ExponentOverflow {
                limit: opts.max_exponent,
            })?;
            if value == 0 {
                return Err(WordError::ZeroExponent {
                    position: offset + at,
                });
            }
            if value.abs() > opts.max_exponent {
                return Err(WordError::ExponentOverflow {
                    limit: opts.max_exponent,
                });
            }
            value
        }
    };
    Ok(Syllable::new(Letter { kind, index }, exp))
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syl = parse_token(s, 0, u32::MAX, ParseOptions::default())?;
        if syl.exp != 1 {
            return Err(WordError::Syntax {
                position: 0,
                message: "expected a bare generator".into(),
            });
        }
        Ok(syl.letter)
    }
}

/// Returns the freely reduced form. Stored words are already reduced, so
/// this only clears the cyclic flag.
pub fn free_reduce(w: &CurveWord) -> CurveWord {
    CurveWord {
        genus: w.genus,
        syllables: w.syllables.clone(),
        cyclic: false,
    }
}

/// Strips conjugating prefixes/suffixes and merges a matching first and last
/// syllable, giving a cyclically reduced representative of the conjugacy class.
pub fn cyclic_reduce(w: &CurveWord) -> CurveWord {
    let mut s = w.syllables.clone();
    while s.len() >= 2 && s[0].letter == s[s.len() - 1].letter {
        let last = s.pop().expect("len >= 2");
        // Parsed exponents are bounded by the exponent limit, far from i64::MAX.
        s[0].exp += last.exp;
        if s[0].exp == 0 {
            s.remove(0);
        }
    }
    CurveWord {
        genus: w.genus,
        syllables: s,
        cyclic: true,
    }
}

/// The composed path `l ∘ g`: traverse `l` then `g`.
pub fn concat(l: &CurveWord, g: &CurveWord) -> Result<CurveWord, WordError> {
    if l.genus != g.genus {
        return Err(WordError::GenusMismatch {
            left: l.genus,
            right: g.genus,
        });
    }
    Ok(CurveWord {
        genus: l.genus,
        syllables: free_reduce_syllables(l.syllables.iter().chain(&g.syllables).copied())?,
        cyclic: false,
    })
}

/// The reversed path.
pub fn invert(l: &CurveWord) -> CurveWord {
    CurveWord {
        genus: l.genus,
        syllables: l
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable::new(s.letter, -s.exp))
            .collect(),
        cyclic: l.cyclic,
    }
}

/// The commutator `x y x^-1 y^-1`.
pub fn commutator(x: &CurveWord, y: &CurveWord) -> Result<CurveWord, WordError> {
    let xy = concat(x, y)?;
    let xyx = concat(&xy, &invert(x))?;
    concat(&xyx, &invert(y))
}

/// The surface relator `[a1,b1]...[ak,bk]`.
pub fn surface_relator(genus: u32) -> Result<CurveWord, WordError> {
    let mut syllables = Vec::with_capacity(4 * genus as usize);
    for i in 1..=genus {
        syllables.extend([
            Syllable::new(Letter::alpha(i), 1),
            Syllable::new(Letter::beta(i), 1),
            Syllable::new(Letter::alpha(i), -1),
            Syllable::new(Letter::beta(i), -1),
        ]);
    }
    CurveWord::from_syllables(genus, syllables)
}

pub fn abelianize(l: &CurveWord) -> AbelianCoords {
    let mut c = AbelianCoords::zero(l.genus);
    for s in &l.syllables {
        let i = (s.letter.index - 1) as usize;
        match s.letter.kind {
            Kind::Alpha => c.m[i] += s.exp,
            Kind::Beta => c.n[i] += s.exp,
        }
    }
    c
}

//! Two-rowed arrays and nonnegative integer matrices.
//!
//! A matrix `M` is recorded as the multiset of pairs `(i, j)` where the pair
//! occurs `M[i][j]` times: the top entry is the (1-based) row index, the bottom
//! entry the column index. Row sums are therefore the content of the top row
//! and column sums the content of the bottom row.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{join, parse_list, Composition};

/// Ordering convention for the pairs of a [`BiArray`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Top weakly increasing; bottom weakly decreasing inside runs of equal top.
    PaperOrder,
    /// Top weakly increasing; bottom weakly increasing inside runs of equal top.
    Lexicographic,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper_order" | "paper-order" => Ok(Convention::PaperOrder),
            "lex" | "lexicographic" | "classical" => Ok(Convention::Lexicographic),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

/// Two-rowed array of positive integers, ordered per `convention`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiArray {
    top: Vec<u32>,
    bottom: Vec<u32>,
    convention: Convention,
}

impl BiArray {
    /// Builds an array, checking lengths, positivity and the ordering convention.
    pub fn new(top: Vec<u32>, bottom: Vec<u32>, convention: Convention) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::SizeMismatch(format!(
                "top has {} entries, bottom has {}",
                top.len(),
                bottom.len()
            )));
        }
        if top.iter().chain(&bottom).any(|&e| e == 0) {
            return Err(Error::Parse("array entries must be positive".into()));
        }
        if !satisfies(&top, &bottom, convention) {
            return Err(match convention {
                Convention::PaperOrder => Error::NotPaperOrdered,
                Convention::Lexicographic => Error::NotLexicographic,
            });
        }
        Ok(BiArray {
            top,
            bottom,
            convention,
        })
    }

    /// Array with top row `1..=d` and the given word as bottom row.
    pub fn from_word(word: Vec<u32>, convention: Convention) -> Result<Self> {
        let top = (1..=word.len() as u32).collect();
        BiArray::new(top, word, convention)
    }

    pub fn empty(convention: Convention) -> Self {
        BiArray {
            top: Vec::new(),
            bottom: Vec::new(),
            convention,
        }
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.top.iter().copied().zip(self.bottom.iter().copied())
    }

    /// Whether the pair sequence satisfies the given ordering, independently of the tag.
    pub fn satisfies(&self, convention: Convention) -> bool {
        satisfies(&self.top, &self.bottom, convention)
    }

    /// True when the top row is `1..=d` and the bottom row a permutation of `1..=d`.
    pub fn is_permutation(&self) -> bool {
        let d = self.len();
        let top_ok = self
            .top
            .iter()
            .enumerate()
            .all(|(k, &u)| u as usize == k + 1);
        let mut seen = vec![false; d];
        let bottom_ok = self.bottom.iter().all(|&v| {
            let v = v as usize;
            v >= 1 && v <= d && !std::mem::replace(&mut seen[v - 1], true)
        });
        top_ok && bottom_ok
    }

    /// Same pairs, re-tagged, provided the data already satisfies `convention`.
    pub fn with_convention(self, convention: Convention) -> Result<Self> {
        BiArray::new(self.top, self.bottom, convention)
    }
}

/// Re-sorts a multiset of `(top, bottom)` pairs into the requested order.
pub fn sort_to_convention(mut pairs: Vec<(u32, u32)>, convention: Convention) -> Result<BiArray> {
    match convention {
        Convention::PaperOrder => pairs.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1))),
        Convention::Lexicographic => pairs.sort(),
    }
    let (top, bottom) = pairs.into_iter().unzip();
    BiArray::new(top, bottom, convention)
}

fn satisfies(top: &[u32], bottom: &[u32], convention: Convention) -> bool {
    (1..top.len()).all(|k| {
        let (u0, u1, v0, v1) = (top[k - 1], top[k], bottom[k - 1], bottom[k]);
        u0 < u1
            || (u0 == u1
                && match convention {
                    Convention::PaperOrder => v0 >= v1,
                    Convention::Lexicographic => v0 <= v1,
                })
    })
}

impl fmt::Display for BiArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", join(&self.top, ","), join(&self.bottom, ","))
    }
}

impl BiArray {
    /// Parses `1,2,2,3,3 / 1,3,1,2,2` under the given convention.
    pub fn parse(s: &str, convention: Convention) -> Result<Self> {
        let (top, bottom) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected `top / bottom`, got {s:?}")))?;
        BiArray::new(parse_list(top)?, parse_list(bottom)?, convention)
    }
}

/// Matrix of nonnegative integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct RelPosMatrix {
    entries: Vec<Vec<u32>>,
}

impl RelPosMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(first) = entries.first() {
            if first.is_empty() || entries.iter().any(|r| r.len() != first.len()) {
                return Err(Error::MalformedMatrix(
                    "rows must be nonempty and of equal length".into(),
                ));
            }
        }
        Ok(RelPosMatrix { entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            return RelPosMatrix::default();
        }
        RelPosMatrix {
            entries: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = RelPosMatrix::zeros(d, d);
        for i in 0..d {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut u32 {
        &mut self.entries[i][j]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&e| e as usize).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.cols())
            .map(|j| self.entries.iter().map(|r| r[j] as usize).sum())
            .collect()
    }

    pub fn total(&self) -> usize {
        self.row_sums().iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols())
            .map(|j| self.entries.iter().map(|r| r[j]).collect())
            .collect();
        RelPosMatrix { entries }
    }
}

impl TryFrom<Vec<Vec<u32>>> for RelPosMatrix {
    type Error = Error;
    fn try_from(entries: Vec<Vec<u32>>) -> Result<Self> {
        RelPosMatrix::new(entries)
    }
}

impl From<RelPosMatrix> for Vec<Vec<u32>> {
    fn from(m: RelPosMatrix) -> Self {
        m.entries
    }
}

impl fmt::Display for RelPosMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.entries.iter().map(|r| join(r, ",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for RelPosMatrix {
    type Err = Error;
    /// Parses `1,0,2;3,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(RelPosMatrix::default());
        }
        RelPosMatrix::new(s.split(';').map(parse_list).collect::<Result<Vec<_>>>()?)
    }
}

/// Emits each pair `(i, j)` `M[i][j]` times, ordered per `convention`.
pub fn matrix_to_array(m: &RelPosMatrix, convention: Convention) -> BiArray {
    let mut top = Vec::with_capacity(m.total());
    let mut bottom = Vec::with_capacity(m.total());
    for (i, row) in m.entries().iter().enumerate() {
        let cols: Box<dyn Iterator<Item = usize>> = match convention {
            Convention::PaperOrder => Box::new((0..row.len()).rev()),
            Convention::Lexicographic => Box::new(0..row.len()),
        };
        for j in cols {
            for _ in 0..row[j] {
                top.push(i as u32 + 1);
                bottom.push(j as u32 + 1);
            }
        }
    }
    BiArray {
        top,
        bottom,
        convention,
    }
}

/// Counts pairs. The matrix has `max(top)` rows and `max(bottom)` columns.
pub fn array_to_matrix(a: &BiArray) -> RelPosMatrix {
    let rows = a.top.iter().copied().max().unwrap_or(0) as usize;
    let cols = a.bottom.iter().copied().max().unwrap_or(0) as usize;
    array_to_matrix_sized(a, rows, cols).expect("dimensions cover every pair")
}

/// Counts pairs into a `rows x cols` matrix, allowing trailing zero rows or columns.
pub fn array_to_matrix_sized(a: &BiArray, rows: usize, cols: usize) -> Result<RelPosMatrix> {
    let mut m = RelPosMatrix::zeros(rows, cols);
    for (u, v) in a.pairs() {
        if u as usize > rows || v as usize > cols {
            return Err(Error::SizeMismatch(format!(
                "pair ({u},{v}) outside a {rows}x{cols} matrix"
            )));
        }
        *m.get_mut(u as usize - 1, v as usize - 1) += 1;
    }
    Ok(m)
}

/// Every nonnegative integer matrix with row sums `row_sums` and column sums `col_sums`.
pub fn matrices_with_margins(row_sums: &Composition, col_sums: &Composition) -> Vec<RelPosMatrix> {
    fn go(
        i: usize,
        j: usize,
        row_left: &mut [usize],
        col_left: &mut [usize],
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<RelPosMatrix>,
    ) {
        let (m, n) = (row_left.len(), col_left.len());
        if i == m {
            if col_left.iter().all(|&c| c == 0) {
                out.push(RelPosMatrix {
                    entries: cur.clone(),
                });
            }
            return;
        }
        if j == n - 1 {
            // last column takes whatever the row still needs
            let need = row_left[i];
            if need <= col_left[j] {
                cur[i][j] = need as u32;
                col_left[j] -= need;
                row_left[i] = 0;
                go(i + 1, 0, row_left, col_left, cur, out);
                row_left[i] = need;
                col_left[j] += need;
                cur[i][j] = 0;
            }
            return;
        }
        for e in 0..=row_left[i].min(col_left[j]) {
            cur[i][j] = e as u32;
            row_left[i] -= e;
            col_left[j] -= e;
            go(i, j + 1, row_left, col_left, cur, out);
            row_left[i] += e;
            col_left[j] += e;
        }
        cur[i][j] = 0;
    }
    if row_sums.size() != col_sums.size() {
        return Vec::new();
    }
    if row_sums.is_empty() {
        return vec![RelPosMatrix::default()];
    }
    let mut out = Vec::new();
    let mut cur = vec![vec![0; col_sums.len()]; row_sums.len()];
    go(
        0,
        0,
        &mut row_sums.parts().to_vec(),
        &mut col_sums.parts().to_vec(),
        &mut cur,
        &mut out,
    );
    out
}

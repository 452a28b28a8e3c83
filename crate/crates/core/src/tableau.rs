//! Partitions, compositions and Young tableaux.
//!
//! Two filling conventions coexist in this crate:
//!
//! * *row-strict* (`is_semistandard_paper`): rows strictly increasing, columns
//!   weakly increasing. These are the tableaux attached to x-stable partial
//!   flags.
//! * *classical*: rows weakly increasing, columns strictly increasing. Only
//!   used by the classic RSK oracle.
//!
//! Entries are 1-based positive integers and rows are stored top to bottom.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers. The empty sequence is the
/// partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Transposed partition: part `k` counts the parts that are at least `k`.
    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count())
                .collect(),
        )
    }

    /// Rebuilds a partition from its column heights (the conjugate).
    pub fn from_column_heights(heights: &[usize]) -> Result<Self> {
        Partition::new(heights.to_vec()).map(|p| p.conjugate())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0, ","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

/// Sequence of positive integers, not necessarily decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Composition(parts))
    }

    /// The composition `(1, 1, ..., 1)` of `d`.
    pub fn ones(d: usize) -> Self {
        Composition(vec![1; d])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Partial sums `0, μ_1, μ_1 + μ_2, ..., |μ|`.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut acc = 0;
        std::iter::once(0)
            .chain(self.0.iter().map(|&p| {
                acc += p;
                acc
            }))
            .collect()
    }

    /// 1-based index of the block of `boundaries()` that contains position `k` (1-based).
    pub fn block_of(&self, k: usize) -> Option<usize> {
        let mut acc = 0;
        for (j, &p) in self.0.iter().enumerate() {
            acc += p;
            if k >= 1 && k <= acc {
                return Some(j + 1);
            }
        }
        None
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Composition(p.0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0, ","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_list(s)?)
    }
}

/// A filling of a Young diagram. Rows are not validated on construction;
/// [`Tableau::shape`] reports malformed diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Self {
        Tableau { rows }
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.rows.get(row).and_then(|r| r.get(col)).copied()
    }

    /// Row-length sequence. Fails when the rows do not form a Young diagram
    /// or some entry is not positive.
    pub fn shape(&self) -> Result<Partition> {
        if let Some(i) = self.rows.iter().position(Vec::is_empty) {
            return Err(Error::MalformedTableau(format!("row {} is empty", i + 1)));
        }
        if self.rows.iter().flatten().any(|&e| e == 0) {
            return Err(Error::MalformedTableau("entries must be positive".into()));
        }
        let lengths: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        if let Some(i) = lengths.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::MalformedTableau(format!(
                "row {} is longer than row {}",
                i + 2,
                i + 1
            )));
        }
        Ok(Partition(lengths))
    }

    /// Multiplicities `(μ_1, ..., μ_n)` of the entries `1..=n`, `n` the largest entry.
    pub fn content(&self) -> Result<Composition> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut counts = vec![0usize; max as usize];
        for &e in self.rows.iter().flatten() {
            if e == 0 {
                return Err(Error::MalformedTableau("entries must be positive".into()));
            }
            counts[e as usize - 1] += 1;
        }
        if let Some(i) = counts.iter().position(|&c| c == 0) {
            return Err(Error::GappedContent {
                missing: i as u32 + 1,
                max,
            });
        }
        Ok(Composition(counts))
    }

    pub fn is_standard(&self) -> bool {
        if self.shape().is_err() {
            return false;
        }
        let d = self.size();
        let mut seen = vec![false; d];
        for &e in self.rows.iter().flatten() {
            let e = e as usize;
            if e == 0 || e > d || seen[e - 1] {
                return false;
            }
            seen[e - 1] = true;
        }
        self.rows_satisfy(|a, b| a < b) && self.columns_satisfy(|a, b| a < b)
    }

    /// Rows strictly increasing, columns weakly increasing.
    pub fn is_semistandard_paper(&self) -> bool {
        self.shape().is_ok()
            && self.rows_satisfy(|a, b| a < b)
            && self.columns_satisfy(|a, b| a <= b)
    }

    /// Rows weakly increasing, columns strictly increasing.
    pub fn is_semistandard_classical(&self) -> bool {
        self.shape().is_ok()
            && self.rows_satisfy(|a, b| a <= b)
            && self.columns_satisfy(|a, b| a < b)
    }

    fn rows_satisfy(&self, ok: impl Fn(u32, u32) -> bool) -> bool {
        self.rows
            .iter()
            .all(|r| r.windows(2).all(|w| ok(w[0], w[1])))
    }

    fn columns_satisfy(&self, ok: impl Fn(u32, u32) -> bool) -> bool {
        self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .zip(&pair[0])
                .all(|(&below, &above)| ok(above, below))
        })
    }

    /// Sub-tableau of the entries `<= bound`, as a shape.
    pub fn shape_below(&self, bound: u32) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|&&e| e <= bound).count())
            .take_while(|&n| n > 0)
            .collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| join(r, ",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for Tableau {
    type Err = Error;
    /// Parses `1,2;1,2;3`. The empty string is the empty tableau.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Tableau::empty());
        }
        let rows = s
            .split(';')
            .map(parse_list::<u32>)
            .collect::<Result<Vec<_>>>()?;
        Ok(Tableau { rows })
    }
}

/// All row-strict tableaux of the given shape and content, sorted by
/// row reading word.
pub fn enumerate_semistandard_paper(
    shape: &Partition,
    content: &Composition,
) -> Result<Vec<Tableau>> {
    if shape.size() != content.size() {
        return Err(Error::SizeMismatch(format!(
            "shape {shape} has {} boxes, content {content} has {}",
            shape.size(),
            content.size()
        )));
    }
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    fill_strips(shape.parts(), content.parts(), 0, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

/// Standard tableaux of `shape`.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    enumerate_semistandard_paper(shape, &Composition::ones(shape.size())).expect("sizes agree")
}

// Each value occupies a vertical strip: at most one new box per row, and the
// grown shape must stay a partition inside the target.
fn fill_strips(
    target: &[usize],
    content: &[usize],
    value: usize,
    rows: &mut Vec<Vec<u32>>,
    out: &mut Vec<Tableau>,
) {
    if value == content.len() {
        out.push(Tableau {
            rows: rows.iter().filter(|r| !r.is_empty()).cloned().collect(),
        });
        return;
    }
    let mut chosen = Vec::with_capacity(content[value]);
    choose_rows(target, content, value, 0, &mut chosen, rows, out);
}

fn choose_rows(
    target: &[usize],
    content: &[usize],
    value: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    rows: &mut Vec<Vec<u32>>,
    out: &mut Vec<Tableau>,
) {
    if chosen.len() == content[value] {
        let grown_ok = (1..rows.len()).all(|i| rows[i - 1].len() >= rows[i].len());
        if grown_ok {
            fill_strips(target, content, value + 1, rows, out);
        }
        return;
    }
    for r in start..target.len() {
        if rows[r].len() < target[r] {
            rows[r].push(value as u32 + 1);
            chosen.push(r);
            choose_rows(target, content, value, r + 1, chosen, rows, out);
            chosen.pop();
            rows[r].pop();
        }
    }
}

/// Partitions of `d` in decreasing lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `d` with at most `max_parts` parts, each part at most `max_part`.
pub fn compositions_of(d: usize, max_parts: usize, max_part: usize) -> Vec<Composition> {
    fn go(
        rest: usize,
        max_parts: usize,
        max_part: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Composition>,
    ) {
        if rest == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for p in 1..=rest.min(max_part) {
            cur.push(p);
            go(rest - p, max_parts, max_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Every composition of `d`.
pub fn all_compositions(d: usize) -> Vec<Composition> {
    compositions_of(d, d, d)
}

pub(crate) fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub(crate) fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let s = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<T>()
                .map_err(|_| Error::Parse(format!("cannot parse {tok:?} as an integer")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(t("1,2;1,2;3").shape().unwrap().parts(), &[2, 2, 1]);
        assert_eq!(t("").shape().unwrap(), Partition::empty());
        assert_eq!(t("1,2,4;3;5").shape().unwrap().parts(), &[3, 1, 1]);
        assert!(matches!(
            t("1;2,3").shape(),
            Err(Error::MalformedTableau(_))
        ));
    }

    #[test]
    fn contents() {
        assert_eq!(t("1,1,2;2;3").content().unwrap().parts(), &[2, 2, 1]);
        assert_eq!(t("1,2;1,2;3").content().unwrap().parts(), &[2, 2, 1]);
        assert_eq!(t("1,3,5;2;4").content().unwrap().parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(
            t("1,3;1").content(),
            Err(Error::GappedContent { missing: 2, max: 3 })
        );
    }

    #[test]
    fn filling_predicates() {
        assert!(t("1,3;2,4;5").is_standard());
        assert!(!t("1,1;2").is_standard());
        assert!(!t("1,2;2,3").is_standard());

        assert!(t("1,2;1,2;3").is_semistandard_paper());
        assert!(!t("1,1,2;2;3").is_semistandard_paper());
        assert!(t("1,3;2,4;5").is_semistandard_paper());

        assert!(t("1,1,2;2;3").is_semistandard_classical());
        assert!(!t("1,2;1,2;3").is_semistandard_classical());
        assert!(t("1,1,1").is_semistandard_classical());
    }

    #[test]
    fn enumeration_examples() {
        let shape: Partition = "2,2,1".parse().unwrap();
        let content: Composition = "2,2,1".parse().unwrap();
        let all = enumerate_semistandard_paper(&shape, &content).unwrap();
        assert!(all.contains(&t("1,2;1,2;3")));
        assert!(all.contains(&t("1,2;1,3;2")));

        let row: Partition = "4".parse().unwrap();
        assert_eq!(standard_tableaux(&row), vec![t("1,2,3,4")]);

        let col: Partition = "1,1".parse().unwrap();
        let two: Composition = "2".parse().unwrap();
        assert_eq!(
            enumerate_semistandard_paper(&col, &two).unwrap(),
            vec![t("1;1")]
        );

        assert!(matches!(
            enumerate_semistandard_paper(&col, &"3".parse().unwrap()),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=7).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(all_compositions(5).len(), 16);
        assert_eq!(compositions_of(6, 4, 6).len(), 26);
    }

    #[test]
    fn conjugate_roundtrip() {
        let p: Partition = "3,1,1".parse().unwrap();
        assert_eq!(p.conjugate().parts(), &[3, 1, 1]);
        let q: Partition = "4,2".parse().unwrap();
        assert_eq!(q.conjugate().parts(), &[2, 2, 1, 1]);
        assert_eq!(q.conjugate().conjugate(), q);
    }

    #[test]
    fn text_and_json_forms() {
        let tab = t("1,2;1,2;3");
        assert_eq!(tab.to_string(), "1,2;1,2;3");
        let json = serde_json::to_string(&tab).unwrap();
        assert_eq!(json, r#"{"rows":[[1,2],[1,2],[3]]}"#);
        let back: Tableau = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tab);
        assert!("1,x".parse::<Tableau>().is_err());
    }
}

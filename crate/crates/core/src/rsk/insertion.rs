//! Row insertion and its reverse, for both bumping rules.

use crate::error::{Error, Result};
use crate::tableau::Tableau;

use super::array::{BiArray, Convention};

/// Which entry a newly inserted value displaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Bumping {
    /// Leftmost entry greater than or equal to the new value.
    Variant,
    /// Leftmost entry strictly greater than the new value.
    Classic,
}

impl Bumping {
    fn displaces(self, entry: u32, z: u32) -> bool {
        match self {
            Bumping::Variant => entry >= z,
            Bumping::Classic => entry > z,
        }
    }

    // reverse step: the entry that displaced `y` is the rightmost one on this side of `y`
    fn displaced_by(self, entry: u32, y: u32) -> bool {
        match self {
            Bumping::Variant => entry <= y,
            Bumping::Classic => entry < y,
        }
    }
}

/// Inserts `z` in place and returns the 0-based `(row, col)` of the new box.
pub(crate) fn insert_in_place(
    rows: &mut Vec<Vec<u32>>,
    mut z: u32,
    rule: Bumping,
) -> (usize, usize) {
    for (r, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&e| rule.displaces(e, z)) {
            Some(c) => z = std::mem::replace(&mut row[c], z),
            None => {
                row.push(z);
                return (r, row.len() - 1);
            }
        }
    }
    rows.push(vec![z]);
    (rows.len() - 1, 0)
}

/// Removes the box at `(row, col)` (a corner) from `rows` and reverse-bumps its
/// entry up to the first row, returning the value ejected from row 0.
fn uninsert_in_place(rows: &mut Vec<Vec<u32>>, row: usize, rule: Bumping) -> Result<u32> {
    let mut y = rows[row]
        .pop()
        .ok_or_else(|| Error::MalformedTableau("empty row".into()))?;
    if rows[row].is_empty() {
        rows.pop();
    }
    for r in (0..row).rev() {
        let c = rows[r]
            .iter()
            .rposition(|&e| rule.displaced_by(e, y))
            .ok_or(Error::NotSemistandard)?;
        y = std::mem::replace(&mut rows[r][c], y);
    }
    Ok(y)
}

pub(crate) fn forward(a: &BiArray, rule: Bumping) -> (Tableau, Tableau) {
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for (u, v) in a.pairs() {
        let (r, c) = insert_in_place(&mut p, v, rule);
        if r == q.len() {
            q.push(Vec::new());
        }
        debug_assert_eq!(q[r].len(), c);
        q[r].push(u);
    }
    (Tableau::new(p), Tableau::new(q))
}

pub(crate) fn backward(p: &Tableau, q: &Tableau, rule: Bumping) -> Result<BiArray> {
    let (semistandard, convention): (fn(&Tableau) -> bool, _) = match rule {
        Bumping::Variant => (Tableau::is_semistandard_paper, Convention::PaperOrder),
        Bumping::Classic => (
            Tableau::is_semistandard_classical,
            Convention::Lexicographic,
        ),
    };
    let (sp, sq) = (p.shape()?, q.shape()?);
    if sp != sq {
        return Err(Error::ShapeMismatch(sp.into(), sq.into()));
    }
    if !semistandard(p) || !semistandard(q) {
        return Err(Error::NotSemistandard);
    }
    let mut prows = p.rows.clone();
    let mut qrows = q.rows.clone();
    let mut pairs = Vec::with_capacity(p.size());
    while !qrows.is_empty() {
        // Largest recording entry; ties go to the lowest row (variant) or the
        // rightmost box (classic). Both pick a corner.
        let max = qrows.iter().flatten().copied().max().expect("nonempty");
        let row = match rule {
            Bumping::Variant => qrows.iter().rposition(|r| r.last() == Some(&max)),
            Bumping::Classic => {
                let col = qrows
                    .iter()
                    .filter_map(|r| r.iter().rposition(|&e| e == max))
                    .max();
                col.and_then(|c| qrows.iter().position(|r| r.get(c) == Some(&max)))
            }
        }
        .ok_or(Error::NotSemistandard)?;
        let is_corner = qrows[row].last() == Some(&max)
            && qrows
                .get(row + 1)
                .is_none_or(|below| below.len() < qrows[row].len());
        if !is_corner {
            return Err(Error::NotSemistandard);
        }
        qrows[row].pop();
        if qrows[row].is_empty() {
            qrows.pop();
        }
        let v = uninsert_in_place(&mut prows, row, rule)?;
        pairs.push((max, v));
    }
    pairs.reverse();
    let (top, bottom) = pairs.into_iter().unzip();
    BiArray::new(top, bottom, convention)
}

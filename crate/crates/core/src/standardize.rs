//! Standardization of tableaux and arrays under both conventions, and the
//! inverse of array standardization on its image.

use crate::error::{Error, Result};
use crate::rsk::{BiArray, Convention};
use crate::tableau::{Composition, Tableau};

/// Renumbers each value class top row first. Equal entries of a
/// row-strict tableau sit in distinct rows.
pub fn std_tableau_variant(t: &Tableau) -> Result<Tableau> {
    if !t.is_semistandard_paper() {
        return Err(Error::NotSemistandard);
    }
    // row-major scan, stable-sorted by value, visits each class top to bottom
    Ok(relabel(t, |boxes| boxes.sort_by_key(|&(v, r, _)| (v, r))))
}

/// Renumbers each value class left to right.
pub fn std_tableau_classical(t: &Tableau) -> Result<Tableau> {
    if !t.is_semistandard_classical() {
        return Err(Error::NotSemistandard);
    }
    Ok(relabel(t, |boxes| boxes.sort_by_key(|&(v, _, c)| (v, c))))
}

fn relabel(t: &Tableau, order: impl FnOnce(&mut Vec<(u32, usize, usize)>)) -> Tableau {
    let mut boxes: Vec<(u32, usize, usize)> = t
        .rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (v, r, c)))
        .collect();
    order(&mut boxes);
    let mut rows = t.rows.clone();
    for (k, &(_, r, c)) in boxes.iter().enumerate() {
        rows[r][c] = k as u32 + 1;
    }
    Tableau::new(rows)
}

/// Top row becomes `1..=d`; each value class of the bottom row is replaced by
/// its block of consecutive integers, decreasing left to right.
pub fn std_array_variant(a: &BiArray) -> Result<BiArray> {
    if !a.satisfies(Convention::PaperOrder) {
        return Err(Error::NotPaperOrdered);
    }
    let word = standardize_word(a.bottom(), true);
    BiArray::from_word(word, Convention::PaperOrder)
}

/// As [`std_array_variant`] with increasing renumbering, on lexicographic arrays.
pub fn std_array_classical(a: &BiArray) -> Result<BiArray> {
    if !a.satisfies(Convention::Lexicographic) {
        return Err(Error::NotLexicographic);
    }
    let word = standardize_word(a.bottom(), false);
    BiArray::from_word(word, Convention::Lexicographic)
}

fn standardize_word(word: &[u32], decreasing: bool) -> Vec<u32> {
    let mut positions: Vec<usize> = (0..word.len()).collect();
    if decreasing {
        positions.sort_by_key(|&k| (word[k], std::cmp::Reverse(k)));
    } else {
        positions.sort_by_key(|&k| (word[k], k));
    }
    let mut out = vec![0; word.len()];
    for (rank, &k) in positions.iter().enumerate() {
        out[k] = rank as u32 + 1;
    }
    out
}

/// Inverse of [`std_array_variant`] on arrays with bottom content `mu` and top
/// content `nu`. Fails with [`Error::MembershipError`] when `p` is not the
/// standardization of any such array.
pub fn std_inverse(p: &BiArray, mu: &Composition, nu: &Composition) -> Result<BiArray> {
    let d = p.len();
    if mu.size() != d || nu.size() != d {
        return Err(Error::SizeMismatch(format!(
            "permutation of length {d} with contents {mu} and {nu}"
        )));
    }
    if !p.is_permutation() {
        return Err(Error::MembershipError);
    }
    let top = (1..=d)
        .map(|k| nu.block_of(k).expect("k <= |nu|") as u32)
        .collect();
    let bottom = p
        .bottom()
        .iter()
        .map(|&v| mu.block_of(v as usize).expect("v <= |mu|") as u32)
        .collect();
    let candidate =
        BiArray::new(top, bottom, Convention::PaperOrder).map_err(|_| Error::MembershipError)?;
    if std_array_variant(&candidate)?.bottom() != p.bottom() {
        return Err(Error::MembershipError);
    }
    Ok(candidate)
}

//! Robinson–Schensted–Knuth correspondences.
//!
//! [`rsk_variant`] inserts by displacing the leftmost entry *greater than or
//! equal to* the new value. It takes arrays in [`Convention::PaperOrder`] to
//! pairs of row-strict tableaux (rows strict, columns weak), and is a
//! bijection onto equal-shape pairs; [`rsk_inverse_variant`] undoes it.
//!
//! [`rsk_classic`] is the textbook correspondence on lexicographic arrays. It
//! is kept as an independent oracle; on permutation arrays both agree.

mod array;
mod insertion;

pub use array::{
    array_to_matrix, array_to_matrix_sized, matrices_with_margins, matrix_to_array,
    sort_to_convention, BiArray, Convention, RelPosMatrix,
};

use crate::error::{Error, Result};
use crate::tableau::Tableau;
use insertion::Bumping;

/// Inserts `z` by the variant rule. Returns the new tableau and the 1-based
/// `(row, column)` of the box it created.
pub fn row_insert_variant(t: &Tableau, z: u32) -> (Tableau, (usize, usize)) {
    let mut rows = t.rows.clone();
    let (r, c) = insertion::insert_in_place(&mut rows, z, Bumping::Variant);
    (Tableau::new(rows), (r + 1, c + 1))
}

/// Variant RSK: `(P, Q)` with `P` the insertion tableau of the bottom row and
/// `Q` recording the top entry of each step.
pub fn rsk_variant(a: &BiArray) -> Result<(Tableau, Tableau)> {
    if !a.satisfies(Convention::PaperOrder) {
        return Err(Error::NotPaperOrdered);
    }
    Ok(insertion::forward(a, Bumping::Variant))
}

/// Reverse bumping for the variant rule. Among equal largest recording
/// entries, the box in the lowest row is removed first.
pub fn rsk_inverse_variant(p: &Tableau, q: &Tableau) -> Result<BiArray> {
    insertion::backward(p, q, Bumping::Variant)
}

/// Classic RSK on a lexicographically ordered array.
pub fn rsk_classic(a: &BiArray) -> Result<(Tableau, Tableau)> {
    if !a.satisfies(Convention::Lexicographic) {
        return Err(Error::NotLexicographic);
    }
    Ok(insertion::forward(a, Bumping::Classic))
}

/// Inverse of [`rsk_classic`] on classical semistandard pairs.
pub fn rsk_inverse_classic(p: &Tableau, q: &Tableau) -> Result<BiArray> {
    insertion::backward(p, q, Bumping::Classic)
}

//! Exact linear algebra over a prime field.
//!
//! Subspaces of `F_p^d` are stored by a reduced row echelon basis, so two
//! subspaces are equal exactly when their stored bases are.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integers modulo a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2
            || p > u32::MAX as u64
            || (2..)
                .take_while(|k| k * k <= p)
                .any(|k| p.is_multiple_of(k))
        {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverting zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> Self {
        f.p
    }
}

/// Brings `rows` to reduced row echelon form, dropping zero rows. Returns the pivot columns.
pub fn rref(field: PrimeField, rows: &mut Vec<Vec<u64>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][col]);
        for e in rows[r].iter_mut() {
            *e = field.mul(*e, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = row[col];
                for (e, &pv) in row.iter_mut().zip(&pivot_row) {
                    *e = field.sub(*e, field.mul(factor, pv));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Coefficient vectors `c` with `sum_k c[k] * rows[k] = 0`, as a basis of that kernel.
pub fn left_kernel(field: PrimeField, rows: &[Vec<u64>], width: usize) -> Vec<Vec<u64>> {
    let n = rows.len();
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut v = row.clone();
            v.resize(width + n, 0);
            v[width + k] = 1;
            v
        })
        .collect();
    let pivots = rref(field, &mut aug, width + n);
    aug.iter()
        .zip(&pivots)
        .filter(|(_, &pc)| pc >= width)
        .map(|(row, _)| row[width..].to_vec())
        .collect()
}

/// Square matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareMatrix {
    entries: Vec<Vec<u64>>,
}

impl SquareMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self> {
        let d = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        Ok(SquareMatrix { entries })
    }

    pub fn zeros(d: usize) -> Self {
        SquareMatrix {
            entries: vec![vec![0; d]; d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = SquareMatrix::zeros(d);
        for i in 0..d {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: u64) {
        self.entries[i][j] = value;
    }

    pub fn apply(&self, field: PrimeField, v: &[u64]) -> Vec<u64> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, field: PrimeField, other: &SquareMatrix) -> SquareMatrix {
        let d = self.dim();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(0, |acc, k| {
                            field.add(acc, field.mul(self.entries[i][k], other.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        SquareMatrix { entries }
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.entries.iter().map(|row| row[j]).collect()
    }

    pub fn rank(&self, field: PrimeField) -> usize {
        let mut rows = self.entries.clone();
        rref(field, &mut rows, self.dim()).len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&e| e == 0)
    }

    /// Image of a subspace.
    pub fn image(&self, field: PrimeField, w: &Subspace) -> Subspace {
        Subspace::span(
            field,
            w.ambient(),
            w.basis().iter().map(|b| self.apply(field, b)),
        )
    }

    /// `{v : self * v ∈ target}`.
    pub fn preimage(&self, field: PrimeField, target: &Subspace) -> Subspace {
        let d = self.dim();
        let images: Vec<Vec<u64>> = (0..d).map(|j| target.reduce(&self.column(j))).collect();
        Subspace::span(field, d, left_kernel(field, &images, d))
    }
}

/// Subspace of `F_p^d` held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut e = vec![0; ambient];
                e[i] = 1;
                e
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors (reduced mod p).
    pub fn span(
        field: PrimeField,
        ambient: usize,
        vectors: impl IntoIterator<Item = Vec<u64>>,
    ) -> Self {
        let mut basis: Vec<Vec<u64>> = vectors
            .into_iter()
            .map(|v| {
                debug_assert_eq!(v.len(), ambient);
                v.into_iter().map(|e| e % field.modulus()).collect()
            })
            .collect();
        let pivots = rref(field, &mut basis, ambient);
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Span of unit vectors `e_i` for the given 0-based indices.
    pub fn coordinate(field: PrimeField, ambient: usize, indices: &[usize]) -> Self {
        Subspace::span(
            field,
            ambient,
            indices.iter().map(|&i| {
                let mut e = vec![0; ambient];
                e[i] = 1;
                e
            }),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Residue of `v` after clearing the pivot coordinates; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (e, &b) in v.iter_mut().zip(row) {
                    *e = f.sub(*e, f.mul(c, b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn with_vector(&self, v: Vec<u64>) -> Subspace {
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().cloned().chain(std::iter::once(v)),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = self.field;
        let stacked: Vec<Vec<u64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let kernel = left_kernel(f, &stacked, self.ambient);
        let n = self.dim();
        Subspace::span(
            f,
            self.ambient,
            kernel.into_iter().map(|c| {
                let mut v = vec![0; self.ambient];
                for (k, row) in self.basis.iter().enumerate() {
                    if c[k] != 0 {
                        for (e, &b) in v.iter_mut().zip(row) {
                            *e = f.add(*e, f.mul(c[k], b));
                        }
                    }
                }
                debug_assert!(c[n..].len() == other.dim());
                v
            }),
        )
    }

    /// Uniformly random vector of the subspace.
    pub fn random_vector<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let f = self.field;
        let mut v = vec![0; self.ambient];
        for row in &self.basis {
            let c = f.random(rng);
            if c != 0 {
                for (e, &b) in v.iter_mut().zip(row) {
                    *e = f.add(*e, f.mul(c, b));
                }
            }
        }
        v
    }
}

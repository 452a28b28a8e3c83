//! Nilpotent operators, x-stable partial flags and their tableaux.
//!
//! A flag `0 = F_0 ⊂ F_1 ⊂ ... ⊂ F_n = F_p^d` is x-stable when
//! `x(F_i) ⊆ F_{i-1}`. Along such a flag the Jordan types of the restrictions
//! `x|F_i` grow by vertical strips; filling the strip added at step `i` with
//! `i` gives a row-strict tableau of shape the Jordan type of `x`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{PrimeField, SquareMatrix, Subspace};
use crate::rsk::RelPosMatrix;
use crate::standardize::std_tableau_variant;
use crate::tableau::{enumerate_semistandard_paper, Composition, Partition, Tableau};

/// Restarts allowed in [`sample_stable_flag`] before giving up.
pub const DEFAULT_MAX_RESTARTS: usize = 1000;

/// Rejection cap for component sampling.
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

// Redraws of a single vector before an attempt is abandoned.
const MAX_VECTOR_DRAWS: usize = 256;

/// Nilpotent operator in Jordan normal form, with its powers cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentOperator {
    field: PrimeField,
    jordan_type: Partition,
    powers: Vec<SquareMatrix>,
}

/// Block-diagonal Jordan matrix with one block per part, blocks in partition
/// order. Inside a block, `e_{k+1} ↦ e_k` and the first basis vector maps to 0.
pub fn make_nilpotent(lambda: &Partition, field: PrimeField) -> NilpotentOperator {
    let d = lambda.size();
    let mut m = SquareMatrix::zeros(d);
    let mut offset = 0;
    for &part in lambda.parts() {
        for k in 0..part.saturating_sub(1) {
            m.set(offset + k, offset + k + 1, 1);
        }
        offset += part;
    }
    NilpotentOperator::with_matrix(m, lambda.clone(), field)
}

impl NilpotentOperator {
    fn with_matrix(matrix: SquareMatrix, jordan_type: Partition, field: PrimeField) -> Self {
        let d = matrix.dim();
        let mut powers = vec![SquareMatrix::identity(d)];
        for k in 1..=d {
            let next = powers[k - 1].mul(field, &matrix);
            powers.push(next);
        }
        NilpotentOperator {
            field,
            jordan_type,
            powers,
        }
    }

    /// Wraps an arbitrary nilpotent matrix, computing its Jordan type from ranks of powers.
    pub fn from_matrix(matrix: SquareMatrix, field: PrimeField) -> Result<Self> {
        let d = matrix.dim();
        let op = NilpotentOperator::with_matrix(matrix, Partition::empty(), field);
        if !op.powers[d].is_zero() {
            return Err(Error::MalformedFlag("operator is not nilpotent".into()));
        }
        let ranks: Vec<usize> = op.powers.iter().map(|m| m.rank(field)).collect();
        let jordan_type = type_from_ranks(&ranks)?;
        Ok(NilpotentOperator { jordan_type, ..op })
    }

    pub fn dim(&self) -> usize {
        self.powers[0].dim()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn jordan_type(&self) -> &Partition {
        &self.jordan_type
    }

    pub fn matrix(&self) -> &SquareMatrix {
        self.power(1)
    }

    /// `x^k`; powers beyond `d` are zero.
    pub fn power(&self, k: usize) -> &SquareMatrix {
        &self.powers[k.min(self.dim())]
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix().apply(self.field, v)
    }

    pub fn image(&self, w: &Subspace) -> Subspace {
        self.matrix().image(self.field, w)
    }

    pub fn preimage(&self, w: &Subspace) -> Subspace {
        self.matrix().preimage(self.field, w)
    }

    fn check_space(&self, w: &Subspace) -> Result<()> {
        if w.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: w.ambient(),
            });
        }
        if w.field() != self.field {
            return Err(Error::MalformedFlag(format!(
                "subspace over F_{} used with operator over F_{}",
                w.field().modulus(),
                self.field.modulus()
            )));
        }
        Ok(())
    }
}

// ranks[k] = rank of x^k; the number of parts >= k is ranks[k-1] - ranks[k].
fn type_from_ranks(ranks: &[usize]) -> Result<Partition> {
    let heights: Vec<usize> = ranks
        .windows(2)
        .map(|w| w[0] - w[1])
        .take_while(|&h| h > 0)
        .collect();
    Partition::from_column_heights(&heights)
        .map_err(|_| Error::ShapeConflict(format!("rank sequence {ranks:?} is not a Jordan type")))
}

/// Jordan type of `x` restricted to an x-invariant subspace `w`.
pub fn restriction_jordan_type(x: &NilpotentOperator, w: &Subspace) -> Result<Partition> {
    x.check_space(w)?;
    if !w.contains_space(&x.image(w)) {
        return Err(Error::NotInvariant);
    }
    let mut ranks = vec![w.dim()];
    let mut current = w.clone();
    while current.dim() > 0 {
        current = x.image(&current);
        ranks.push(current.dim());
    }
    type_from_ranks(&ranks)
}

/// Chain `F_1 ⊂ ... ⊂ F_n` with `F_n` the whole space; `F_0 = 0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    zero: Subspace,
    steps: Vec<Subspace>,
}

impl Flag {
    /// Validates strict nesting and that the last step is the whole space.
    pub fn new(field: PrimeField, ambient: usize, steps: Vec<Subspace>) -> Result<Self> {
        let zero = Subspace::zero(field, ambient);
        let mut prev = &zero;
        for (i, s) in steps.iter().enumerate() {
            if s.ambient() != ambient || s.field() != field {
                return Err(Error::MalformedFlag(format!(
                    "step {} lives in another space",
                    i + 1
                )));
            }
            if s.dim() <= prev.dim() || !s.contains_space(prev) {
                return Err(Error::MalformedFlag(format!(
                    "step {} does not strictly contain step {i}",
                    i + 1
                )));
            }
            prev = s;
        }
        if prev.dim() != ambient {
            return Err(Error::MalformedFlag(
                "last step is not the whole space".into(),
            ));
        }
        Ok(Flag { zero, steps })
    }

    /// Flag spanned by initial segments of the standard basis, with the given type.
    pub fn standard(field: PrimeField, mu: &Composition) -> Flag {
        let d = mu.size();
        let steps = mu.boundaries()[1..]
            .iter()
            .map(|&b| Subspace::coordinate(field, d, &(0..b).collect::<Vec<_>>()))
            .collect();
        Flag::new(field, d, steps).expect("coordinate flag is valid")
    }

    pub fn field(&self) -> PrimeField {
        self.zero.field()
    }

    pub fn ambient(&self) -> usize {
        self.zero.ambient()
    }

    /// Number of nonzero steps `n`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `F_i` for `0 <= i <= n`.
    pub fn space(&self, i: usize) -> &Subspace {
        if i == 0 {
            &self.zero
        } else {
            &self.steps[i - 1]
        }
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    /// `μ_i = dim F_i − dim F_{i−1}`.
    pub fn flag_type(&self) -> Composition {
        let dims: Vec<usize> = (0..=self.len()).map(|i| self.space(i).dim()).collect();
        Composition::new(dims.windows(2).map(|w| w[1] - w[0]).collect()).expect("strict nesting")
    }

    pub fn is_complete(&self) -> bool {
        self.len() == self.ambient()
    }
}

/// JSON form: `{"p": 10007, "type": [2,1], "steps": [[[row],[row]], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagJson {
    pub p: u64,
    #[serde(rename = "type")]
    pub flag_type: Vec<usize>,
    pub steps: Vec<Vec<Vec<u64>>>,
}

impl From<&Flag> for FlagJson {
    fn from(f: &Flag) -> Self {
        FlagJson {
            p: f.field().modulus(),
            flag_type: f.flag_type().into(),
            steps: f.steps.iter().map(|s| s.basis().to_vec()).collect(),
        }
    }
}

impl TryFrom<FlagJson> for Flag {
    type Error = Error;
    fn try_from(j: FlagJson) -> Result<Self> {
        let field = PrimeField::new(j.p)?;
        let ambient = j.flag_type.iter().sum();
        if let Some(bad) = j.steps.iter().flatten().find(|row| row.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: bad.len(),
            });
        }
        let steps = j
            .steps
            .into_iter()
            .map(|rows| Subspace::span(field, ambient, rows))
            .collect();
        let flag = Flag::new(field, ambient, steps)?;
        if flag.flag_type().parts() != j.flag_type.as_slice() {
            return Err(Error::MalformedFlag(format!(
                "declared type {:?} but steps have type {}",
                j.flag_type,
                flag.flag_type()
            )));
        }
        Ok(flag)
    }
}

impl Serialize for Flag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FlagJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Flag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Flag::try_from(FlagJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn check_flag(x: &NilpotentOperator, f: &Flag) -> Result<()> {
    if f.ambient() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: f.ambient(),
        });
    }
    x.check_space(f.space(0))
}

/// Whether `x(F_i) ⊆ F_{i−1}` for every step.
pub fn is_x_stable(x: &NilpotentOperator, f: &Flag) -> Result<bool> {
    check_flag(x, f)?;
    Ok((1..=f.len()).all(|i| f.space(i - 1).contains_space(&x.image(f.space(i)))))
}

/// The row-strict tableau of an x-stable flag: the boxes by which the
/// Jordan type of `x|F_i` exceeds that of `x|F_{i−1}` are filled with `i`.
pub fn tableau_of_flag(x: &NilpotentOperator, f: &Flag) -> Result<Tableau> {
    if !is_x_stable(x, f)? {
        return Err(Error::NotStable);
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut prev: Vec<usize> = Vec::new();
    for i in 1..=f.len() {
        let shape = restriction_jordan_type(x, f.space(i))?;
        let cur = shape.parts();
        let grows_by_strip = cur.len() >= prev.len()
            && cur.iter().enumerate().all(|(r, &len)| {
                let before = prev.get(r).copied().unwrap_or(0);
                len == before || len == before + 1
            });
        if !grows_by_strip {
            return Err(Error::ShapeConflict(format!(
                "{:?} does not extend {:?} by a vertical strip",
                cur, prev
            )));
        }
        for (r, &len) in cur.iter().enumerate() {
            if r == rows.len() {
                rows.push(Vec::new());
            }
            if rows[r].len() < len {
                rows[r].push(i as u32);
            }
        }
        prev = cur.to_vec();
    }
    Ok(Tableau::new(rows))
}

/// Relative position `M(F, G)`: entry `[j][i]` (0-based `j−1`, `i−1`) is
/// `dim(F_i ∩ G_j) − dim(F_i ∩ G_{j−1} + F_{i−1} ∩ G_j)`. Rows follow the steps
/// of `g`, columns the steps of `f`, so column sums give the type of `f` and
/// row sums the type of `g`.
pub fn relative_position(f: &Flag, g: &Flag) -> Result<RelPosMatrix> {
    if f.ambient() != g.ambient() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient(),
            got: g.ambient(),
        });
    }
    if f.field() != g.field() {
        return Err(Error::MalformedFlag("flags over different fields".into()));
    }
    let (n, m) = (f.len(), g.len());
    let meet: Vec<Vec<Subspace>> = (0..=n)
        .map(|i| {
            (0..=m)
                .map(|j| f.space(i).intersection(g.space(j)))
                .collect()
        })
        .collect();
    let mut out = RelPosMatrix::zeros(m, n);
    for i in 1..=n {
        for j in 1..=m {
            let lower = meet[i][j - 1].sum(&meet[i - 1][j]);
            *out.get_mut(j - 1, i - 1) = (meet[i][j].dim() - lower.dim()) as u32;
        }
    }
    Ok(out)
}

/// Keeps `F_{μ_1}, F_{μ_1+μ_2}, ...` of a complete flag.
pub fn forget(f: &Flag, mu: &Composition) -> Result<Flag> {
    if mu.size() != f.ambient() {
        return Err(Error::SizeMismatch(format!(
            "composition {mu} of {} for a flag in dimension {}",
            mu.size(),
            f.ambient()
        )));
    }
    if !f.is_complete() {
        return Err(Error::SizeMismatch(format!(
            "flag of type {} is not complete",
            f.flag_type()
        )));
    }
    let steps = mu.boundaries()[1..]
        .iter()
        .map(|&b| f.space(b).clone())
        .collect();
    Flag::new(f.field(), f.ambient(), steps)
}

/// Adds `k` random dimensions to `w` from `within` (which contains `w`).
fn extend_randomly<R: Rng + ?Sized>(
    w: &Subspace,
    within: &Subspace,
    k: usize,
    step: usize,
    rng: &mut R,
) -> Result<Subspace> {
    let available = within.dim() - w.dim();
    if available < k {
        return Err(Error::DeadEnd {
            step,
            available,
            needed: k,
        });
    }
    for _ in 0..MAX_VECTOR_DRAWS {
        let grown = Subspace::span(
            w.field(),
            w.ambient(),
            w.basis()
                .iter()
                .cloned()
                .chain((0..k).map(|_| within.random_vector(rng))),
        );
        if grown.dim() == w.dim() + k {
            return Ok(grown);
        }
    }
    Err(Error::DeadEnd {
        step,
        available,
        needed: k,
    })
}

fn try_stable_flag<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    mu: &Composition,
    rng: &mut R,
) -> Result<Flag> {
    let mut w = Subspace::zero(x.field(), x.dim());
    let mut steps = Vec::with_capacity(mu.len());
    for (i, &k) in mu.parts().iter().enumerate() {
        let room = x.preimage(&w);
        w = extend_randomly(&w, &room, k, i + 1, rng)?;
        steps.push(w.clone());
    }
    Flag::new(x.field(), x.dim(), steps)
}

/// Random x-stable flag of type `mu`: each `F_i` is a uniformly random
/// extension of `F_{i−1}` by `μ_i` dimensions inside `x^{−1}(F_{i−1})`.
/// Dead ends restart from scratch, at most [`DEFAULT_MAX_RESTARTS`] times.
///
/// Never dead-ends for complete types. For partial types over a large field
/// the early steps usually land where the flag cannot be completed, so
/// restarts can run out; [`sample_stable_flag_by_component`] always succeeds.
pub fn sample_stable_flag<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    mu: &Composition,
    rng: &mut R,
) -> Result<Flag> {
    sample_stable_flag_with(x, mu, rng, DEFAULT_MAX_RESTARTS).map(|(f, _)| f)
}

/// As [`sample_stable_flag`] with an explicit restart bound, also returning
/// the number of attempts used.
pub fn sample_stable_flag_with<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    mu: &Composition,
    rng: &mut R,
    max_attempts: usize,
) -> Result<(Flag, usize)> {
    if mu.size() != x.dim() {
        return Err(Error::SizeMismatch(format!(
            "composition {mu} in dimension {}",
            x.dim()
        )));
    }
    for attempt in 1..=max_attempts.max(1) {
        match try_stable_flag(x, mu, rng) {
            Ok(f) => return Ok((f, attempt)),
            Err(Error::DeadEnd { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted {
        attempts: max_attempts,
        target: None,
    })
}

/// Random x-stable flag of type `mu`: a tableau of shape `type(x)` and content
/// `mu` is chosen uniformly, then a flag is drawn from its component with the
/// directed sampler. `ShapeConflict` if no such tableau exists.
pub fn sample_stable_flag_by_component<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    mu: &Composition,
    rng: &mut R,
) -> Result<Flag> {
    if mu.size() != x.dim() {
        return Err(Error::SizeMismatch(format!(
            "composition {mu} in dimension {}",
            x.dim()
        )));
    }
    let tableaux = enumerate_semistandard_paper(x.jordan_type(), mu)?;
    if tableaux.is_empty() {
        return Err(Error::ShapeConflict(format!(
            "no stable flag of type {mu} for Jordan type {}",
            x.jordan_type()
        )));
    }
    let t = &tableaux[rng.gen_range(0..tableaux.len())];
    sample_flag_in_component(x, t, rng, DEFAULT_MAX_ATTEMPTS).map(|s| s.flag)
}

/// How [`sample_flag_in_component_with`] finds a flag with a prescribed tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentSampler {
    /// Builds a complete flag for the standardized tableau from the top down,
    /// drawing each hyperplane among those that remove the required box, then
    /// forgets down to the content of the target.
    #[default]
    Directed,
    /// Draws flags from [`sample_stable_flag`] (one attempt each) until one has the target tableau.
    Rejection,
}

impl std::str::FromStr for ComponentSampler {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed" => Ok(ComponentSampler::Directed),
            "rejection" => Ok(ComponentSampler::Rejection),
            other => Err(Error::Parse(format!("unknown sampler {other:?}"))),
        }
    }
}

/// A flag drawn from a component together with the attempts it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSample {
    pub flag: Flag,
    pub attempts: usize,
}

/// Random flag `f` with `tableau_of_flag(x, f) == t`, using the directed sampler.
pub fn sample_flag_in_component<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    t: &Tableau,
    rng: &mut R,
    max_attempts: usize,
) -> Result<ComponentSample> {
    sample_flag_in_component_with(x, t, rng, max_attempts, ComponentSampler::Directed)
}

pub fn sample_flag_in_component_with<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    t: &Tableau,
    rng: &mut R,
    max_attempts: usize,
    sampler: ComponentSampler,
) -> Result<ComponentSample> {
    if !t.is_semistandard_paper() {
        return Err(Error::NotSemistandard);
    }
    let shape = t.shape()?;
    if &shape != x.jordan_type() {
        return Err(Error::ShapeMismatch(
            shape.into(),
            x.jordan_type().clone().into(),
        ));
    }
    let mu = t.content()?;
    let standard = std_tableau_variant(t)?;
    for attempt in 1..=max_attempts.max(1) {
        let candidate = match sampler {
            ComponentSampler::Directed => {
                directed_attempt(x, &standard, rng).and_then(|f| forget(&f, &mu))
            }
            ComponentSampler::Rejection => try_stable_flag(x, &mu, rng),
        };
        match candidate {
            Ok(f) if &tableau_of_flag(x, &f)? == t => {
                return Ok(ComponentSample {
                    flag: f,
                    attempts: attempt,
                })
            }
            Ok(_) | Err(Error::DeadEnd { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted {
        attempts: max_attempts,
        target: Some(t.to_string()),
    })
}

/// One pass of the directed sampler for a standard tableau, building the
/// flag from the top down.
///
/// For an x-invariant `U` and a hyperplane `H` of `U` containing `x(U)`, the
/// Jordan type of `x|H` is that of `x|U` minus one box, in column `c` where
/// `c − 1 = max{k : ker(x^k) ∩ U ⊆ H}`. So removing the box in column `c`
/// means drawing `H ⊇ x(U) + ker(x^{c−1}) ∩ U` avoiding `ker(x^c) ∩ U`. The
/// type of `x|H` alone decides which later boxes can be removed, so the
/// construction never dead-ends on a valid tableau.
fn directed_attempt<R: Rng + ?Sized>(
    x: &NilpotentOperator,
    standard: &Tableau,
    rng: &mut R,
) -> Result<Flag> {
    let field = x.field();
    let d = x.dim();
    let mut columns = vec![0usize; d];
    for row in &standard.rows {
        for (c, &e) in row.iter().enumerate() {
            columns[e as usize - 1] = c + 1;
        }
    }
    if d == 0 {
        return Flag::new(field, 0, Vec::new());
    }
    let zero = Subspace::zero(field, d);
    let kernels: Vec<Subspace> = (0..=d).map(|k| x.power(k).preimage(field, &zero)).collect();
    let mut u = Subspace::full(field, d);
    let mut steps = vec![u.clone()];
    for step in (2..=d).rev() {
        let c = columns[step - 1];
        let must = x.image(&u).sum(&kernels[c - 1].intersection(&u));
        let avoid = kernels[c].intersection(&u);
        if must.contains_space(&avoid) {
            return Err(Error::DeadEnd {
                step,
                available: 0,
                needed: 1,
            });
        }
        u = (0..MAX_VECTOR_DRAWS)
            .map(|_| random_hyperplane(&u, &must, rng))
            .find(|h| !h.contains_space(&avoid))
            .ok_or(Error::DeadEnd {
                step,
                available: u.dim() - must.dim(),
                needed: 1,
            })?;
        steps.push(u.clone());
    }
    steps.reverse();
    Flag::new(field, d, steps)
}

/// Uniformly random hyperplane of `u` containing `inner` (a proper subspace of `u`).
fn random_hyperplane<R: Rng + ?Sized>(u: &Subspace, inner: &Subspace, rng: &mut R) -> Subspace {
    let f = u.field();
    let mut span = inner.clone();
    let mut complement = Vec::new();
    for b in u.basis() {
        if !span.contains(b) {
            span = span.with_vector(b.clone());
            complement.push(b.clone());
        }
    }
    let coeffs: Vec<u64> = loop {
        let c: Vec<u64> = complement.iter().map(|_| f.random(rng)).collect();
        if c.iter().any(|&e| e != 0) {
            break c;
        }
    };
    // kernel of y ↦ Σ coeffs[j] y_j on the complement: c_k b_j − c_j b_k
    let k = coeffs
        .iter()
        .position(|&e| e != 0)
        .expect("nonzero functional");
    let kernel = (0..complement.len()).filter(|&j| j != k).map(|j| {
        complement[j]
            .iter()
            .zip(&complement[k])
            .map(|(&bj, &bk)| f.sub(f.mul(coeffs[k], bj), f.mul(coeffs[j], bk)))
            .collect::<Vec<u64>>()
    });
    Subspace::span(f, u.ambient(), inner.basis().iter().cloned().chain(kernel))
}

//! Mukai lattices presented by a semiorthonormal seed basis, and the braid
//! group action on their semiorthonormal bases by left and right mutations.
//!
//! Vectors are coordinate columns in the seed basis `e_1, ..., e_n`; the form
//! matrix `chi` holds `<e_i, e_j>`, so `<u, v> = u^T chi v`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Whether mutations re-check the semiorthonormality of their output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Check {
    #[default]
    Validate,
    Fast,
}

/// Unit upper triangular integer form defining the pairing `<., .>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramForm {
    chi: IntMatrix,
}

impl GramForm {
    /// Accepts only unit upper triangular matrices: such a form is unimodular
    /// and the standard basis is semiorthonormal for it.
    pub fn new(chi: IntMatrix) -> Result<Self> {
        if !chi.is_square() {
            return Err(Error::DimensionMismatch {
                expected: chi.rows(),
                found: chi.cols(),
            });
        }
        if chi.rows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let n = chi.rows();
        for i in 0..n {
            for j in 0..=i {
                let x = chi.get(i, j);
                let expected = if i == j { 1 } else { 0 };
                if *x != BigInt::from(expected) {
                    return Err(Error::NotUnitTriangular {
                        row: i + 1,
                        col: j + 1,
                        value: x.to_string(),
                        expected,
                    });
                }
            }
        }
        Ok(GramForm { chi })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    /// The form with `chi = I`, for which every mutation is a plain swap.
    pub fn orthonormal(rank: usize) -> Result<Self> {
        Self::new(IntMatrix::identity(rank))
    }

    pub fn rank(&self) -> usize {
        self.chi.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.chi
    }

    /// `chi + chi^T`, the matrix of the symmetrized pairing `B`.
    pub fn symmetrized_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let mut b = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, self.chi.get(i, j) + self.chi.get(j, i));
            }
        }
        b
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `<u, v> = u^T chi v`. Bilinear, not symmetric in general.
    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
        self.check_len(u)?;
        self.check_len(v)?;
        let n = self.rank();
        let mut total = BigInt::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in i..n {
                let vj = &v.0[j];
                if !vj.is_zero() {
                    row += self.chi.get(i, j) * vj;
                }
            }
            total += ui * row;
        }
        Ok(total)
    }

    /// `B(u, v) = <u, v> + <v, u>`.
    pub fn symmetrized_pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
        Ok(self.pairing(u, v)? + self.pairing(v, u)?)
    }

    /// True iff `m^T chi m = chi`, i.e. `m` preserves `<., .>` (and hence `B`).
    pub fn is_isometry(&self, m: &IntMatrix) -> Result<bool> {
        if !m.is_square() || m.rows() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: m.rows(),
            });
        }
        Ok(&(&m.transpose() * &self.chi) * m == self.chi)
    }

    /// The basis `(e_1, ..., e_n)` that presents the lattice.
    pub fn seed_basis(self: &Arc<Self>) -> SOBasis {
        let n = self.rank();
        SOBasis {
            form: Arc::clone(self),
            vectors: (0..n).map(|i| LatticeVector::unit(n, i)).collect(),
        }
    }

    /// Matrix `G` with `G[i][j] = <v_i, v_j>`.
    pub fn gram_of_vectors(&self, vectors: &[LatticeVector]) -> Result<IntMatrix> {
        let n = vectors.len();
        let mut g = IntMatrix::zeros(n, n);
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate() {
                g.set(i, j, self.pairing(u, v)?);
            }
        }
        Ok(g)
    }

    /// Explains why `vectors` is not semiorthonormal, or returns `None`.
    fn semiorthonormal_defect(&self, vectors: &[LatticeVector]) -> Result<Option<String>> {
        if vectors.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: vectors.len(),
            });
        }
        for v in vectors {
            self.check_len(v)?;
        }
        let g = self.gram_of_vectors(vectors)?;
        let n = vectors.len();
        for i in 0..n {
            for j in 0..=i {
                let x = g.get(i, j);
                if i == j && !x.is_one() {
                    return Ok(Some(format!("<E_{0},E_{0}> = {1}, expected 1", i + 1, x)));
                }
                if i != j && !x.is_zero() {
                    return Ok(Some(format!(
                        "<E_{},E_{}> = {}, expected 0 below the diagonal",
                        i + 1,
                        j + 1,
                        x
                    )));
                }
            }
        }
        let coords: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        let det = IntMatrix::from_columns(&coords)?.determinant()?;
        if det.abs() != BigInt::one() {
            return Ok(Some(format!("coordinate determinant is {det}, expected +-1")));
        }
        Ok(None)
    }

    /// Unit upper triangular Gram matrix and coordinate determinant `+-1`.
    pub fn is_semiorthonormal(&self, vectors: &[LatticeVector]) -> Result<bool> {
        Ok(self.semiorthonormal_defect(vectors)?.is_none())
    }
}

/// Coordinates of a lattice element in the seed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Seed vector `e_{index+1}` (zero-based `index`).
    pub fn unit(len: usize, index: usize) -> Self {
        let mut c = vec![BigInt::zero(); len];
        c[index] = BigInt::one();
        LatticeVector(c)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, c: &BigInt, other: &LatticeVector) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        LatticeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if b.is_zero() { a.clone() } else { a - c * b })
                .collect(),
        )
    }

    /// Flips the sign so that the first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> Option<LatticeVector> {
        let first = self.0.iter().find(|x| !x.is_zero())?;
        Some(if first.is_negative() {
            self.neg()
        } else {
            self.clone()
        })
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A braid generator `sigma_k` or its inverse. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    position: usize,
    inverse: bool,
}

impl BraidLetter {
    /// `sigma_position`; `position` must be at least 1.
    pub fn left(position: usize) -> Self {
        assert!(position >= 1, "braid generator positions start at 1");
        BraidLetter {
            position,
            inverse: false,
        }
    }

    /// `sigma_position^{-1}`.
    pub fn right(position: usize) -> Self {
        assert!(position >= 1, "braid generator positions start at 1");
        BraidLetter {
            position,
            inverse: true,
        }
    }

    pub fn from_signed(k: i64) -> Option<Self> {
        match k {
            0 => None,
            k if k > 0 => Some(Self::left(k as usize)),
            k => Some(Self::right(k.unsigned_abs() as usize)),
        }
    }

    pub fn position(self) -> usize {
        self.position
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            position: self.position,
            inverse: !self.inverse,
        }
    }

    pub fn signed(self) -> i64 {
        if self.inverse {
            -(self.position as i64)
        } else {
            self.position as i64
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        if self.position + 1 > rank {
            return Err(Error::IndexOutOfRange {
                index: self.position,
                rank,
            });
        }
        Ok(())
    }

    /// The `2(n-1)` generator moves in search order: `1, -1, 2, -2, ...`.
    pub fn all_for_rank(rank: usize) -> Vec<BraidLetter> {
        (1..rank)
            .flat_map(|i| [BraidLetter::left(i), BraidLetter::right(i)])
            .collect()
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

/// A word in the braid generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(Vec<BraidLetter>);

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        BraidWord(letters)
    }

    pub fn empty() -> Self {
        BraidWord(Vec::new())
    }

    /// Panics on a zero entry.
    pub fn from_signed(letters: &[i64]) -> Self {
        BraidWord(
            letters
                .iter()
                .map(|&k| BraidLetter::from_signed(k).expect("braid letters are nonzero"))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: BraidLetter) {
        self.0.push(letter);
    }

    /// The word undoing this one: reversed with every letter inverted.
    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BraidWord(v)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        self.0.iter().try_for_each(|l| l.check_rank(rank))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Space-separated nonzero signed integers, e.g. `"1 -2 3"`.
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                let k: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad braid letter `{tok}`")))?;
                BraidLetter::from_signed(k)
                    .ok_or_else(|| Error::parse(1, "braid letter 0 is not a generator"))
            })
            .collect::<Result<Vec<_>>>()
            .map(BraidWord)
    }
}

impl From<Vec<BraidLetter>> for BraidWord {
    fn from(v: Vec<BraidLetter>) -> Self {
        BraidWord(v)
    }
}

/// An ordered semiorthonormal basis `(E_1, ..., E_n)`.
#[derive(Clone, Debug)]
pub struct SOBasis {
    form: Arc<GramForm>,
    vectors: Vec<LatticeVector>,
}

impl PartialEq for SOBasis {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form)
            && self.vectors == other.vectors
    }
}

impl Eq for SOBasis {}

impl SOBasis {
    /// Validates semiorthonormality.
    pub fn new(form: Arc<GramForm>, vectors: Vec<LatticeVector>) -> Result<Self> {
        if let Some(defect) = form.semiorthonormal_defect(&vectors)? {
            return Err(Error::NotSemiorthonormal(defect));
        }
        Ok(SOBasis { form, vectors })
    }

    pub fn form(&self) -> &Arc<GramForm> {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn same_form(&self, other: &SOBasis) -> bool {
        Arc::ptr_eq(&self.form, &other.form) || self.form == other.form
    }

    pub fn gram(&self) -> IntMatrix {
        self.form
            .gram_of_vectors(&self.vectors)
            .expect("basis vectors match the form rank")
    }

    /// Matrix whose columns are the basis vectors.
    pub fn coordinate_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.vectors.iter().map(|v| v.0.clone()).collect();
        IntMatrix::from_columns(&cols).expect("basis vectors have equal length")
    }

    fn validated(self, check: Check) -> Result<Self> {
        if check == Check::Validate {
            if let Some(defect) = self.form.semiorthonormal_defect(&self.vectors)? {
                return Err(Error::NotSemiorthonormal(defect));
            }
        }
        Ok(self)
    }

    /// Applies one generator.
    ///
    /// `sigma_i` replaces `(E_i, E_{i+1})` by `(E_{i+1} - <E_i,E_{i+1}> E_i, E_i)`;
    /// `sigma_i^{-1}` replaces it by `(E_{i+1}, E_i - <E_i,E_{i+1}> E_{i+1})`.
    pub fn mutate(&self, letter: BraidLetter, check: Check) -> Result<SOBasis> {
        letter.check_rank(self.rank())?;
        let i = letter.position() - 1;
        let (a, b) = (&self.vectors[i], &self.vectors[i + 1]);
        let c = self.form.pairing(a, b)?;
        let (first, second) = if letter.is_inverse() {
            (b.clone(), a.sub_scaled(&c, b))
        } else {
            (b.sub_scaled(&c, a), a.clone())
        };
        let mut vectors = self.vectors.clone();
        vectors[i] = first;
        vectors[i + 1] = second;
        SOBasis {
            form: Arc::clone(&self.form),
            vectors,
        }
        .validated(check)
    }

    /// `sigma_i` (left mutation of `E_{i+1}` by `E_i`), 1-based `i`.
    pub fn left_mutation(&self, i: usize) -> Result<SOBasis> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                rank: self.rank(),
            });
        }
        self.mutate(BraidLetter::left(i), Check::Validate)
    }

    /// `sigma_i^{-1}` (right mutation of `E_i` by `E_{i+1}`), 1-based `i`.
    pub fn right_mutation(&self, i: usize) -> Result<SOBasis> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                rank: self.rank(),
            });
        }
        self.mutate(BraidLetter::right(i), Check::Validate)
    }

    pub fn apply_braid(&self, word: &BraidWord) -> Result<SOBasis> {
        self.apply_braid_with(word, Check::Validate)
    }

    pub fn apply_braid_with(&self, word: &BraidWord, check: Check) -> Result<SOBasis> {
        word.check_rank(self.rank())?;
        let mut b = self.clone();
        for &l in word.letters() {
            b = b.mutate(l, check)?;
        }
        Ok(b)
    }

    /// Canonical representative of the basis up to the signs of its vectors.
    pub fn sign_normalize(&self) -> Result<SignClass> {
        self.vectors
            .iter()
            .enumerate()
            .map(|(i, v)| v.sign_normalized().ok_or(Error::ZeroVector { index: i + 1 }))
            .collect::<Result<Vec<_>>>()
            .map(SignClass)
    }

    /// `(phi(E_1), ..., phi(E_n))` for an isometry `phi`.
    pub fn apply_isometry(&self, m: &IntMatrix) -> Result<SOBasis> {
        if !self.form.is_isometry(m)? {
            return Err(Error::NotIsometry);
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| m.mul_vec(v.coords()).map(LatticeVector))
            .collect::<Result<Vec<_>>>()?;
        SOBasis {
            form: Arc::clone(&self.form),
            vectors,
        }
        .validated(Check::Validate)
    }

    /// Negates the listed (0-based) vectors; the result is again semiorthonormal.
    pub fn with_signs_flipped(&self, which: &[usize]) -> SOBasis {
        let mut vectors = self.vectors.clone();
        for &i in which {
            vectors[i] = vectors[i].neg();
        }
        SOBasis {
            form: Arc::clone(&self.form),
            vectors,
        }
    }
}

/// Comparison key for a basis modulo vector signs. Not itself a basis: the
/// normalized tuple can fail the triangularity conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignClass(Vec<LatticeVector>);

impl SignClass {
    pub fn vectors(&self) -> &[LatticeVector] {
        &self.0
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" ; "))
    }
}

//! Hurwitz action of the braid group on tuples of group elements.
//!
//! With `g^h = h g h^{-1}`:
//!
//! ```text
//! sigma_i      : (.., g_i, g_{i+1}, ..) -> (.., g_{i+1}^{g_i}, g_i, ..)
//! sigma_i^{-1} : (.., g_i, g_{i+1}, ..) -> (.., g_{i+1}, g_i^{g_{i+1}^{-1}}, ..)
//! ```

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::lattice::{BraidLetter, BraidWord};
use crate::matrix::IntMatrix;

/// A group whose elements can be compared exactly.
///
/// `Element` equality must coincide with group equality; orbit search relies
/// on it for hashing.
pub trait Group: Clone + Debug {
    type Element: Clone + Debug + Eq + Hash + Ord;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;

    fn equal(&self, a: &Self::Element, b: &Self::Element) -> bool {
        a == b
    }

    /// Text serialization; equal elements and only equal elements share a key.
    fn canonical_key(&self, a: &Self::Element) -> String;

    /// `g^h = h g h^{-1}`.
    fn conjugate(&self, g: &Self::Element, h: &Self::Element) -> Self::Element {
        self.multiply(&self.multiply(h, g), &self.invert(h))
    }
}

fn matrix_key(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    rows.join(" ; ")
}

/// `GL_n(Z)`. Callers are responsible for only supplying invertible matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    pub dim: usize,
}

impl Group for MatrixGroup {
    type Element = IntMatrix;

    fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.dim)
    }

    fn multiply(&self, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a * b
    }

    fn invert(&self, a: &IntMatrix) -> IntMatrix {
        a.inverse().expect("element of GL_n(Z)")
    }

    fn canonical_key(&self, a: &IntMatrix) -> String {
        matrix_key(a)
    }
}

/// Integer matrices generated by involutions, where every tuple entry is its
/// own inverse. Conjugates of involutions stay involutions, so the Hurwitz
/// action keeps tuples inside this setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvolutionMatrices {
    pub dim: usize,
}

impl Group for InvolutionMatrices {
    type Element = IntMatrix;

    fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.dim)
    }

    fn multiply(&self, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a * b
    }

    fn invert(&self, a: &IntMatrix) -> IntMatrix {
        debug_assert!((a * a).is_identity(), "element is not an involution");
        a.clone()
    }

    fn canonical_key(&self, a: &IntMatrix) -> String {
        matrix_key(a)
    }
}

/// An ordered tuple `(g_1, ..., g_n)` in one group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTuple<G: Group> {
    group: G,
    elements: Vec<G::Element>,
}

impl<G: Group> GroupTuple<G> {
    pub fn new(group: G, elements: Vec<G::Element>) -> Self {
        GroupTuple { group, elements }
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn elements(&self) -> &[G::Element] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<G::Element> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Applies a single generator.
    pub fn act(&self, letter: BraidLetter) -> Result<Self> {
        letter.check_rank(self.len())?;
        let i = letter.position() - 1;
        let (a, b) = (&self.elements[i], &self.elements[i + 1]);
        let (first, second) = if letter.is_inverse() {
            let b_inv = self.group.invert(b);
            (b.clone(), self.group.conjugate(a, &b_inv))
        } else {
            (self.group.conjugate(b, a), a.clone())
        };
        let mut elements = self.elements.clone();
        elements[i] = first;
        elements[i + 1] = second;
        Ok(GroupTuple {
            group: self.group.clone(),
            elements,
        })
    }

    /// `sigma_i`, 1-based.
    pub fn hurwitz_left(&self, i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                rank: self.len(),
            });
        }
        self.act(BraidLetter::left(i))
    }

    /// `sigma_i^{-1}`, 1-based.
    pub fn hurwitz_right(&self, i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                rank: self.len(),
            });
        }
        self.act(BraidLetter::right(i))
    }

    pub fn apply_braid(&self, word: &BraidWord) -> Result<Self> {
        word.check_rank(self.len())?;
        let mut t = self.clone();
        for &l in word.letters() {
            t = t.act(l)?;
        }
        Ok(t)
    }

    /// `g_1 g_2 ... g_n`, invariant under the action.
    pub fn product(&self) -> G::Element {
        self.elements
            .iter()
            .fold(self.group.identity(), |acc, g| self.group.multiply(&acc, g))
    }

    pub fn keys(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|g| self.group.canonical_key(g))
            .collect()
    }
}

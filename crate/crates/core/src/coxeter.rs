//! Words in the free Coxeter group `<g_1, ..., g_n | g_i^2 = 1>` and a
//! constructive solver for its Hurwitz problem.
//!
//! Reduced words (no two equal adjacent letters) are normal forms, so word
//! equality is group equality.

use std::fmt;

use crate::error::{Error, Result};
use crate::hurwitz::{Group, GroupTuple};
use crate::lattice::{BraidLetter, BraidWord};

/// A reduced word. Letters are generator indices starting at 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterWord(Vec<usize>);

impl CoxeterWord {
    pub fn identity() -> Self {
        CoxeterWord(Vec::new())
    }

    pub fn generator(t: usize) -> Self {
        CoxeterWord(vec![t])
    }

    /// Cancels adjacent equal letters until none remain.
    pub fn reduce(letters: &[usize], rank: usize) -> Result<Self> {
        let mut stack: Vec<usize> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l > rank {
                return Err(Error::LetterOutOfRange { letter: l, rank });
            }
            if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(CoxeterWord(stack))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &CoxeterWord) -> CoxeterWord {
        let mut cancel = 0;
        let (a, b) = (&self.0, &other.0);
        while cancel < a.len() && cancel < b.len() && a[a.len() - 1 - cancel] == b[cancel] {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * cancel);
        out.extend_from_slice(&a[..a.len() - cancel]);
        out.extend_from_slice(&b[cancel..]);
        CoxeterWord(out)
    }

    /// Reversal: every letter is an involution.
    pub fn inverse(&self) -> CoxeterWord {
        CoxeterWord(self.0.iter().rev().copied().collect())
    }

    /// `h self h^{-1}`.
    pub fn conjugate(&self, h: &CoxeterWord) -> CoxeterWord {
        h.multiply(self).multiply(&h.inverse())
    }

    /// Splits `u t u^{-1}` into the generator `t` and the conjugator `u`.
    pub fn involution_core(&self) -> Result<(usize, CoxeterWord)> {
        let n = self.0.len();
        let palindrome = self.0.iter().eq(self.0.iter().rev());
        if n.is_multiple_of(2) || !palindrome {
            return Err(Error::NotAnInvolutionConjugate(self.to_string()));
        }
        let k = n / 2;
        Ok((self.0[k], CoxeterWord(self.0[..k].to_vec())))
    }

    pub fn is_involution(&self) -> bool {
        self.involution_core().is_ok()
    }

    /// Strips equal first and last letters until the ends differ.
    pub fn cyclic_reduce(&self) -> CoxeterWord {
        let (mut lo, mut hi) = (0, self.0.len());
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        CoxeterWord(self.0[lo..hi].to_vec())
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The free Coxeter group of a given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGroup {
    rank: usize,
}

impl CoxeterGroup {
    pub fn new(rank: usize) -> Self {
        CoxeterGroup { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Fails if the word uses a letter outside `1..=rank`.
    pub fn check(&self, w: &CoxeterWord) -> Result<()> {
        match w.0.iter().find(|&&l| l == 0 || l > self.rank) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }

    pub fn checked_multiply(&self, a: &CoxeterWord, b: &CoxeterWord) -> Result<CoxeterWord> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.multiply(b))
    }
}

impl Group for CoxeterGroup {
    type Element = CoxeterWord;

    fn identity(&self) -> CoxeterWord {
        CoxeterWord::identity()
    }

    fn multiply(&self, a: &CoxeterWord, b: &CoxeterWord) -> CoxeterWord {
        a.multiply(b)
    }

    fn invert(&self, a: &CoxeterWord) -> CoxeterWord {
        a.inverse()
    }

    fn canonical_key(&self, a: &CoxeterWord) -> String {
        a.to_string()
    }

    fn conjugate(&self, g: &CoxeterWord, h: &CoxeterWord) -> CoxeterWord {
        g.conjugate(h)
    }
}

/// A tuple of conjugates of generators `(g_{tau(1)}^{f_1}, ..., g_{tau(n)}^{f_n})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterTuple {
    rank: usize,
    elements: Vec<CoxeterWord>,
}

/// Output of [`CoxeterTuple::solve_hurwitz`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzSolution {
    /// Applying this word to the input tuple yields the seed tuple.
    pub word: BraidWord,
    /// Total word length before the first step and after each step.
    pub total_lengths: Vec<usize>,
}

impl CoxeterTuple {
    /// Only checks that letters are in range; the solver checks the rest.
    pub fn new(rank: usize, elements: Vec<CoxeterWord>) -> Result<Self> {
        if elements.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: elements.len(),
            });
        }
        let group = CoxeterGroup::new(rank);
        for w in &elements {
            group.check(w)?;
        }
        Ok(CoxeterTuple { rank, elements })
    }

    /// `(g_1, ..., g_n)`.
    pub fn seed(rank: usize) -> Self {
        CoxeterTuple {
            rank,
            elements: (1..=rank).map(CoxeterWord::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[CoxeterWord] {
        &self.elements
    }

    pub fn is_seed(&self) -> bool {
        Self::is_seed_slice(&self.elements)
    }

    pub fn total_length(&self) -> usize {
        self.elements.iter().map(CoxeterWord::len).sum()
    }

    pub fn to_group_tuple(&self) -> GroupTuple<CoxeterGroup> {
        GroupTuple::new(CoxeterGroup::new(self.rank), self.elements.clone())
    }

    pub fn from_group_tuple(t: GroupTuple<CoxeterGroup>) -> Self {
        CoxeterTuple {
            rank: t.group().rank(),
            elements: t.into_elements(),
        }
    }

    pub fn apply_braid(&self, word: &BraidWord) -> Result<Self> {
        Ok(Self::from_group_tuple(self.to_group_tuple().apply_braid(word)?))
    }

    pub fn product(&self) -> CoxeterWord {
        self.to_group_tuple().product()
    }

    /// Generators `tau(i)` of the conjugacy cores, in tuple order.
    pub fn cores(&self) -> Result<Vec<usize>> {
        self.elements
            .iter()
            .map(|w| w.involution_core().map(|(t, _)| t))
            .collect()
    }

    /// Checks the three conditions under which the braid orbit of the seed
    /// contains this tuple: conjugates of generators, cores a permutation,
    /// product equal to `g_1 ... g_n`.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.rank + 1];
        for (i, w) in self.elements.iter().enumerate() {
            let (core, _) = w.involution_core().map_err(|_| {
                Error::PreconditionViolated(format!(
                    "element {} = [{}] is not a conjugate of a generator",
                    i + 1,
                    w
                ))
            })?;
            if seen[core] {
                return Err(Error::PreconditionViolated(format!(
                    "generator {core} occurs as a core more than once; cores must be a permutation of 1..{}",
                    self.rank
                )));
            }
            seen[core] = true;
        }
        let product = self.product();
        let expected: Vec<usize> = (1..=self.rank).collect();
        if product.0 != expected {
            return Err(Error::PreconditionViolated(format!(
                "product reduces to [{product}], expected [{}]",
                CoxeterWord(expected)
            )));
        }
        Ok(())
    }

    /// Greedy total-length descent to the seed tuple.
    ///
    /// Each round scans positions `i = 1..n-1`, trying `sigma_i` then
    /// `sigma_i^{-1}`, and takes the first move that strictly shortens the
    /// tuple.
    pub fn solve_hurwitz(&self) -> Result<HurwitzSolution> {
        self.validate()?;
        let mut current = self.elements.clone();
        let mut total = self.total_length();
        let mut word = BraidWord::empty();
        let mut total_lengths = vec![total];
        while !CoxeterTuple::is_seed_slice(&current) {
            let step = (0..self.rank.saturating_sub(1)).find_map(|i| {
                let (a, b) = (&current[i], &current[i + 1]);
                // sigma_i: (a, b) -> (a b a^{-1}, a); only position i changes length.
                let left = b.conjugate(a);
                if left.len() < b.len() {
                    let saved = b.len() - left.len();
                    return Some((BraidLetter::left(i + 1), left, a.clone(), saved));
                }
                // sigma_i^{-1}: (a, b) -> (b, b^{-1} a b).
                let right = a.conjugate(&b.inverse());
                if right.len() < a.len() {
                    let saved = a.len() - right.len();
                    return Some((BraidLetter::right(i + 1), b.clone(), right, saved));
                }
                None
            });
            let Some((letter, first, second, saved)) = step else {
                return Err(Error::NoReducingMutation {
                    total_length: total,
                });
            };
            let i = letter.position() - 1;
            current[i] = first;
            current[i + 1] = second;
            total -= saved;
            word.push(letter);
            total_lengths.push(total);
        }
        Ok(HurwitzSolution {
            word,
            total_lengths,
        })
    }

    fn is_seed_slice(elements: &[CoxeterWord]) -> bool {
        elements
            .iter()
            .enumerate()
            .all(|(i, w)| w.0.len() == 1 && w.0[0] == i + 1)
    }
}

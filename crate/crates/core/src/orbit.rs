//! Bounded orbit exploration for the braid action, and exhaustive relation
//! search in groups generated by integer involutions.
//!
//! Both searches are semidecisions: a found connection or relation comes with
//! a certificate that is re-checked exactly, a negative answer for orbits is
//! only given when the orbit closed within budget, and a relation-free report
//! only speaks about the lengths that were enumerated.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use log::{debug, info};

use crate::coxeter::CoxeterWord;
use crate::error::{Error, Result};
use crate::hurwitz::{Group, GroupTuple};
use crate::lattice::{BraidLetter, BraidWord, Check, GramForm, LatticeVector, SOBasis};
use crate::matrix::IntMatrix;
use crate::reflect::psi_map;

/// Something the braid group acts on, with an exact comparison key.
///
/// Keys are complete values rather than digests, so a hash-table hit is always
/// confirmed by full equality.
pub trait OrbitPoint: Clone {
    type Key: Clone + Debug + Eq + Hash;

    fn rank(&self) -> usize;
    fn step(&self, letter: BraidLetter) -> Result<Self>;
    fn key(&self) -> Result<Self::Key>;
    /// Whether two points live in the same space (same form or group).
    fn compatible(&self, other: &Self) -> bool;
    /// One-line text rendering used in reports.
    fn describe(&self) -> String;
}

/// A basis together with the orbit settings it is explored under.
#[derive(Clone, Debug)]
pub struct BasisPoint {
    pub basis: SOBasis,
    pub check: Check,
    /// Identify bases differing only by vector signs.
    pub sign_quotient: bool,
}

impl BasisPoint {
    pub fn new(basis: SOBasis) -> Self {
        BasisPoint {
            basis,
            check: Check::Validate,
            sign_quotient: true,
        }
    }

    pub fn with_check(mut self, check: Check) -> Self {
        self.check = check;
        self
    }

    pub fn with_sign_quotient(mut self, on: bool) -> Self {
        self.sign_quotient = on;
        self
    }
}

impl OrbitPoint for BasisPoint {
    type Key = Vec<LatticeVector>;

    fn rank(&self) -> usize {
        self.basis.rank()
    }

    fn step(&self, letter: BraidLetter) -> Result<Self> {
        Ok(BasisPoint {
            basis: self.basis.mutate(letter, self.check)?,
            check: self.check,
            sign_quotient: self.sign_quotient,
        })
    }

    fn key(&self) -> Result<Self::Key> {
        if self.sign_quotient {
            Ok(self.basis.sign_normalize()?.vectors().to_vec())
        } else {
            Ok(self.basis.vectors().to_vec())
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.basis.same_form(&other.basis)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.basis.vectors().iter().map(|v| v.to_string()).collect();
        parts.join(" ; ")
    }
}

impl<G: Group + PartialEq> OrbitPoint for GroupTuple<G> {
    type Key = Vec<G::Element>;

    fn rank(&self) -> usize {
        self.len()
    }

    fn step(&self, letter: BraidLetter) -> Result<Self> {
        self.act(letter)
    }

    fn key(&self) -> Result<Self::Key> {
        Ok(self.elements().to_vec())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.group() == other.group()
    }

    fn describe(&self) -> String {
        self.keys().join(" | ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitBudget {
    pub max_elements: usize,
    pub max_depth: usize,
}

impl OrbitBudget {
    pub fn new(max_elements: usize, max_depth: usize) -> Result<Self> {
        let b = OrbitBudget {
            max_elements,
            max_depth,
        };
        b.check()?;
        Ok(b)
    }

    fn check(&self) -> Result<()> {
        if self.max_elements == 0 {
            return Err(Error::InvalidBudget("max_elements"));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidBudget("max_depth"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OrbitNode<P: OrbitPoint> {
    pub key: P::Key,
    pub point: P,
    pub depth: usize,
    /// Predecessor index and the letter leading here; `None` for the start.
    pub parent: Option<(usize, BraidLetter)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitEdge {
    pub from: usize,
    pub letter: BraidLetter,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitResult<P: OrbitPoint> {
    pub nodes: Vec<OrbitNode<P>>,
    pub edges: Vec<OrbitEdge>,
    /// The visited set is closed under all `2(n-1)` moves.
    pub exhausted: bool,
    index: HashMap<P::Key, usize>,
}

impl<P: OrbitPoint> OrbitResult<P> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn find(&self, key: &P::Key) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Braid word carrying the start point to node `index` along BFS parents.
    pub fn word_to(&self, mut index: usize) -> BraidWord {
        let mut letters = Vec::new();
        while let Some((parent, letter)) = self.nodes[index].parent {
            letters.push(letter);
            index = parent;
        }
        letters.reverse();
        BraidWord::new(letters)
    }

    pub fn max_depth_reached(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }
}

fn explore<P: OrbitPoint>(
    start: &P,
    budget: OrbitBudget,
    target: Option<&P::Key>,
) -> Result<(OrbitResult<P>, Option<usize>)> {
    budget.check()?;
    let moves = BraidLetter::all_for_rank(start.rank());
    let start_key = start.key()?;
    let mut result = OrbitResult {
        nodes: vec![OrbitNode {
            key: start_key.clone(),
            point: start.clone(),
            depth: 0,
            parent: None,
        }],
        edges: Vec::new(),
        exhausted: false,
        index: HashMap::from([(start_key.clone(), 0)]),
    };
    if target == Some(&start_key) {
        return Ok((result, Some(0)));
    }
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(current) = queue.pop_front() {
        let depth = result.nodes[current].depth;
        for &letter in &moves {
            let next = result.nodes[current].point.step(letter)?;
            let key = next.key()?;
            if let Some(&to) = result.index.get(&key) {
                result.edges.push(OrbitEdge {
                    from: current,
                    letter,
                    to,
                });
                continue;
            }
            if depth >= budget.max_depth || result.nodes.len() >= budget.max_elements {
                truncated = true;
                continue;
            }
            let to = result.nodes.len();
            result.index.insert(key.clone(), to);
            result.nodes.push(OrbitNode {
                key,
                point: next,
                depth: depth + 1,
                parent: Some((current, letter)),
            });
            result.edges.push(OrbitEdge {
                from: current,
                letter,
                to,
            });
            if to % 10_000 == 0 {
                info!("orbit search: {} elements, depth {}", to, depth + 1);
            }
            if target == Some(&result.nodes[to].key) {
                return Ok((result, Some(to)));
            }
            queue.push_back(to);
        }
    }
    result.exhausted = !truncated;
    debug!(
        "orbit search finished: {} elements, exhausted = {}",
        result.nodes.len(),
        result.exhausted
    );
    Ok((result, None))
}

/// Breadth-first orbit enumeration with generators in the order
/// `sigma_1, sigma_1^{-1}, sigma_2, ...`.
pub fn orbit_bfs<P: OrbitPoint>(start: &P, budget: OrbitBudget) -> Result<OrbitResult<P>> {
    explore(start, budget, None).map(|(r, _)| r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitAnswer {
    /// The word carries the first point to the second (modulo the key quotient).
    Yes(BraidWord),
    /// The first orbit closed within budget without meeting the second point.
    No,
    Unknown,
}

pub fn same_orbit<P: OrbitPoint>(a: &P, b: &P, budget: OrbitBudget) -> Result<OrbitAnswer> {
    if !a.compatible(b) || a.rank() != b.rank() {
        return Err(Error::FormMismatch);
    }
    let target = b.key()?;
    let (result, found) = explore(a, budget, Some(&target))?;
    match found {
        Some(index) => {
            let word = result.word_to(index);
            let mut p = a.clone();
            for &l in word.letters() {
                p = p.step(l)?;
            }
            assert_eq!(p.key()?, target, "connecting word failed to replay");
            Ok(OrbitAnswer::Yes(word))
        }
        None if result.exhausted => Ok(OrbitAnswer::No),
        None => Ok(OrbitAnswer::Unknown),
    }
}

/// A product of generators equal to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub word: CoxeterWord,
    /// Enumeration length at which the relation surfaced.
    pub found_at_length: usize,
    pub origin: RelationOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationOrigin {
    /// The enumerated word itself evaluates to the identity.
    Identity,
    /// Two distinct reduced words share a matrix; the relation is
    /// `earlier * later^{-1}`.
    Coincidence {
        earlier: CoxeterWord,
        later: CoxeterWord,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub relations: Vec<Relation>,
    pub max_length_searched: usize,
    pub words_evaluated: u64,
    pub distinct_matrices: usize,
    /// Bit length of the largest entry met, the practical cost driver.
    pub max_entry_bits: u64,
}

impl RelationReport {
    pub fn is_relation_free(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Product `s_{w_1} s_{w_2} ...` evaluated from scratch.
pub fn evaluate_word(generators: &[IntMatrix], word: &[usize]) -> IntMatrix {
    let dim = generators.first().map_or(0, IntMatrix::rows);
    word.iter()
        .fold(IntMatrix::identity(dim), |acc, &g| &acc * &generators[g - 1])
}

fn check_generators(generators: &[IntMatrix]) -> Result<usize> {
    let dim = generators.first().map_or(0, IntMatrix::rows);
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.rows(),
            });
        }
        if !(g * g).is_identity() {
            return Err(Error::NotInvolution { index: i + 1 });
        }
    }
    Ok(dim)
}

/// Visits every reduced word of length `1..=max_length` in length order,
/// lexicographic within a length, with its product. Products reuse the
/// product of the word's prefix.
pub fn enumerate_reduced_products<F>(generators: &[IntMatrix], max_length: usize, mut visit: F)
where
    F: FnMut(&[usize], &IntMatrix),
{
    let dim = generators.first().map_or(0, IntMatrix::rows);
    let mut level: Vec<(Vec<usize>, IntMatrix)> = vec![(Vec::new(), IntMatrix::identity(dim))];
    for length in 1..=max_length {
        let mut next = Vec::with_capacity(level.len() * generators.len().saturating_sub(1).max(1));
        for (word, product) in &level {
            for g in 1..=generators.len() {
                if word.last() == Some(&g) {
                    continue;
                }
                let mut w = word.clone();
                w.push(g);
                let m = product * &generators[g - 1];
                visit(&w, &m);
                next.push((w, m));
            }
        }
        info!("relation search: length {} done, {} words", length, next.len());
        level = next;
        if level.is_empty() {
            break;
        }
    }
}

/// Exhaustive search for relations of length at most `max_length` among
/// involutive generators. Adjacent repeats are excluded since `s_i^2 = 1`.
pub fn relation_search(generators: &[IntMatrix], max_length: usize) -> Result<RelationReport> {
    if max_length < 2 {
        return Err(Error::InvalidBudget("max_length"));
    }
    let dim = check_generators(generators)?;
    let rank = generators.len();
    let mut seen: HashMap<IntMatrix, CoxeterWord> =
        HashMap::from([(IntMatrix::identity(dim), CoxeterWord::identity())]);
    let mut relations: Vec<Relation> = Vec::new();
    let mut recorded: HashSet<CoxeterWord> = HashSet::new();
    let mut words_evaluated = 0u64;
    let mut max_entry_bits = 0u64;

    enumerate_reduced_products(generators, max_length, |w, m| {
        words_evaluated += 1;
        max_entry_bits = max_entry_bits.max(m.max_bits());
        let word = CoxeterWord::reduce(w, rank).expect("enumerated words are reduced");
        let relation = if m.is_identity() {
            Some(Relation {
                word: word.clone(),
                found_at_length: w.len(),
                origin: RelationOrigin::Identity,
            })
        } else if let Some(earlier) = seen.get(m) {
            Some(Relation {
                word: earlier.multiply(&word.inverse()),
                found_at_length: w.len(),
                origin: RelationOrigin::Coincidence {
                    earlier: earlier.clone(),
                    later: word.clone(),
                },
            })
        } else {
            seen.insert(m.clone(), word);
            None
        };
        if let Some(r) = relation {
            if recorded.insert(r.word.clone()) {
                relations.push(r);
            }
        }
    });

    for r in &relations {
        assert!(
            evaluate_word(generators, r.word.letters()).is_identity(),
            "reported relation [{}] does not evaluate to the identity",
            r.word
        );
    }

    Ok(RelationReport {
        relations,
        max_length_searched: max_length,
        words_evaluated,
        distinct_matrices: seen.len(),
        max_entry_bits,
    })
}

/// Outcome of probing whether the seed reflections generate a free Coxeter
/// group. A clean search is evidence for transitivity, never a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub rank: usize,
    pub search: RelationReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransitivityVerdict {
    /// No relation up to this length: consistent with freeness.
    NoObstructionUpTo(usize),
    /// A relation among the reflections: the free Coxeter argument does not apply.
    Obstruction(CoxeterWord),
}

impl TransitivityReport {
    pub fn verdict(&self) -> TransitivityVerdict {
        match self.search.relations.first() {
            Some(r) => TransitivityVerdict::Obstruction(r.word.clone()),
            None => TransitivityVerdict::NoObstructionUpTo(self.search.max_length_searched),
        }
    }
}

/// Searches for relations among the reflections of the seed basis.
pub fn verify_transitivity_certificate(
    form: &Arc<GramForm>,
    max_length: usize,
) -> Result<TransitivityReport> {
    let tuple = psi_map(&form.seed_basis())?;
    let generators: Vec<IntMatrix> = tuple.matrices().iter().map(|r| r.matrix().clone()).collect();
    Ok(TransitivityReport {
        rank: form.rank(),
        search: relation_search(&generators, max_length)?,
    })
}

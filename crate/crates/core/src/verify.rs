//! Seeded randomized checks of the action's invariants on one lattice.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hurwitz::GroupTuple;
use crate::lattice::{BraidLetter, BraidWord, GramForm, SOBasis};
use crate::reflect::{equivariance_check, psi_map};

pub const DEFAULT_SEED: u64 = 1;

/// Uniform length in `0..=max_len`, uniform letters among the `2(n-1)` moves.
pub fn random_braid_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> BraidWord {
    let moves = BraidLetter::all_for_rank(rank);
    if moves.is_empty() {
        return BraidWord::empty();
    }
    let len = rng.gen_range(0..=max_len);
    BraidWord::new((0..len).map(|_| moves[rng.gen_range(0..moves.len())]).collect())
}

/// A basis reached from the seed by a random word of length at most `max_len`.
pub fn random_basis<R: Rng>(rng: &mut R, form: &Arc<GramForm>, max_len: usize) -> Result<SOBasis> {
    let w = random_braid_word(rng, form.rank(), max_len);
    form.seed_basis().apply_braid(&w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn run<F>(name: &'static str, trials: usize, rng: &mut ChaCha8Rng, mut check: F) -> Result<PropertyOutcome>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Option<String>>,
{
    for _ in 0..trials {
        if let Some(msg) = check(rng)? {
            return Ok(PropertyOutcome {
                name,
                trials,
                failure: Some(msg),
            });
        }
    }
    Ok(PropertyOutcome {
        name,
        trials,
        failure: None,
    })
}

/// Braid relations, inverses, mutation closure, reflection properties,
/// equivariance and product invariance, each on `trials` random samples.
pub fn run_invariant_suite(form: &Arc<GramForm>, trials: usize, seed: u64) -> Result<Vec<PropertyOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = form.rank();
    let mut out = Vec::new();

    out.push(run("braid-relations-bases", trials, &mut rng, |rng| {
        let b = random_basis(rng, form, 10)?;
        for i in 1..n.saturating_sub(1) {
            let lhs = b.apply_braid(&BraidWord::from_signed(&[i as i64, i as i64 + 1, i as i64]))?;
            let rhs = b.apply_braid(&BraidWord::from_signed(&[i as i64 + 1, i as i64, i as i64 + 1]))?;
            if lhs != rhs {
                return Ok(Some(format!("sigma_{i} sigma_{} sigma_{i} differs", i + 1)));
            }
        }
        for i in 1..n {
            for j in i + 2..n {
                let ij = b.apply_braid(&BraidWord::from_signed(&[i as i64, j as i64]))?;
                let ji = b.apply_braid(&BraidWord::from_signed(&[j as i64, i as i64]))?;
                if ij != ji {
                    return Ok(Some(format!("sigma_{i} and sigma_{j} do not commute")));
                }
            }
        }
        Ok(None)
    })?);

    out.push(run("inverse-pairs-bases", trials, &mut rng, |rng| {
        let b = random_basis(rng, form, 10)?;
        for l in BraidLetter::all_for_rank(n) {
            if b.apply_braid(&BraidWord::new(vec![l, l.inverse()]))? != b {
                return Ok(Some(format!("letter {l} followed by its inverse is not the identity")));
            }
        }
        Ok(None)
    })?);

    out.push(run("mutation-closure", trials, &mut rng, |rng| {
        let b = random_basis(rng, form, 10)?;
        let det = b.coordinate_matrix().determinant()?;
        for l in BraidLetter::all_for_rank(n) {
            let m = b.mutate(l, crate::lattice::Check::Fast)?;
            if !form.is_semiorthonormal(m.vectors())? {
                return Ok(Some(format!("mutation {l} left the semiorthonormal bases")));
            }
            let d = m.coordinate_matrix().determinant()?;
            if d.magnitude() != det.magnitude() {
                return Ok(Some(format!("mutation {l} changed |det| to {d}")));
            }
        }
        Ok(None)
    })?);

    out.push(run("braid-relations-tuples", trials, &mut rng, |rng| {
        let t = psi_map(&random_basis(rng, form, 10)?)?.to_group_tuple();
        for i in 1..n.saturating_sub(1) {
            let lhs = t.apply_braid(&BraidWord::from_signed(&[i as i64, i as i64 + 1, i as i64]))?;
            let rhs = t.apply_braid(&BraidWord::from_signed(&[i as i64 + 1, i as i64, i as i64 + 1]))?;
            if lhs != rhs {
                return Ok(Some(format!("tuple braid relation fails at {i}")));
            }
        }
        Ok(None)
    })?);

    out.push(run("reflections-order-two-and-b-isometric", trials, &mut rng, |rng| {
        let b = random_basis(rng, form, 10)?;
        for (k, r) in psi_map(&b)?.matrices().iter().enumerate() {
            if !r.is_involution() {
                return Ok(Some(format!("reflection {} is not an involution", k + 1)));
            }
            if !r.preserves_symmetrized(form) {
                return Ok(Some(format!("reflection {} does not preserve B", k + 1)));
            }
        }
        Ok(None)
    })?);

    out.push(run("equivariance", trials, &mut rng, |rng| {
        let b = random_basis(rng, form, 10)?;
        let w = random_braid_word(rng, n, 8);
        Ok((!equivariance_check(&b, &w)?).then(|| format!("word [{w}] breaks equivariance")))
    })?);

    out.push(run("sign-invariance", trials, &mut rng, |rng| {
        let b = random_basis(rng, form, 10)?;
        let flips: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let same = psi_map(&b)? == psi_map(&b.with_signs_flipped(&flips))?;
        Ok((!same).then(|| format!("flipping {flips:?} changed the reflection tuple")))
    })?);

    out.push(run("product-invariance", trials, &mut rng, |rng| {
        let t: GroupTuple<_> = psi_map(&random_basis(rng, form, 10)?)?.to_group_tuple();
        let w = random_braid_word(rng, n, 20);
        Ok((t.apply_braid(&w)?.product() != t.product()).then(|| format!("word [{w}] changed the product")))
    })?);

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pn::gram_pn;

    #[test]
    fn suite_passes_on_p3_and_is_reproducible() {
        let f = Arc::new(gram_pn(3).unwrap());
        let a = run_invariant_suite(&f, 5, 9).unwrap();
        assert!(a.iter().all(PropertyOutcome::passed), "{a:?}");
        assert_eq!(a, run_invariant_suite(&f, 5, 9).unwrap());
    }

    #[test]
    fn rank_one_has_no_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_braid_word(&mut rng, 1, 10).is_empty());
        let f = Arc::new(gram_pn(0).unwrap());
        assert!(run_invariant_suite(&f, 3, 0).unwrap().iter().all(PropertyOutcome::passed));
    }
}

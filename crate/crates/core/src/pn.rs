//! The lattices `K_0(P^n)` with the line bundle collection `O, O(1), ..., O(n)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::GramForm;
use crate::matrix::IntMatrix;
use crate::reflect::{psi_map, ReflectTuple};

/// `C(n + d, n)` for `d = 0..=max_offset`, built row by row from Pascal's rule.
fn binomial_column(n: usize, max_offset: usize) -> Vec<BigInt> {
    // row[k] = C(m, k) for the current m
    let top = n + max_offset;
    let mut row = vec![BigInt::one()];
    let mut out = Vec::with_capacity(max_offset + 1);
    for m in 0..=top {
        if m >= n {
            out.push(row[n].clone());
        }
        let mut next = vec![BigInt::one(); m + 2];
        for k in 1..=m {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    out
}

/// Gram form of `K_0(P^n)`: rank `n + 1`, entry `(i, j) = C(n + j - i, n)` for `j >= i`.
pub fn gram_pn(n: i64) -> Result<GramForm> {
    if n < 0 {
        return Err(Error::NegativeDimension(n));
    }
    let n = n as usize;
    let rank = n + 1;
    let diag = binomial_column(n, n);
    let mut chi = IntMatrix::zeros(rank, rank);
    for i in 0..rank {
        for j in i..rank {
            chi.set(i, j, diag[j - i].clone());
        }
        for j in 0..i {
            chi.set(i, j, BigInt::zero());
        }
    }
    GramForm::new(chi)
}

/// The reflection tuple of the seed basis of `K_0(P^n)`.
pub fn reflections_pn(n: i64) -> Result<ReflectTuple> {
    let form = Arc::new(gram_pn(n)?);
    psi_map(&form.seed_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    // C(a, b) by the multiplicative formula, independent of Pascal's rule.
    fn choose(a: u64, b: u64) -> BigInt {
        let mut acc = BigInt::one();
        for k in 0..b {
            acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
        }
        acc
    }

    #[test]
    fn small_cases() {
        assert_eq!(*gram_pn(0).unwrap().matrix(), IntMatrix::identity(1));
        assert_eq!(
            *gram_pn(1).unwrap().matrix(),
            IntMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]).unwrap()
        );
        assert_eq!(gram_pn(-1), Err(Error::NegativeDimension(-1)));
        let r0 = reflections_pn(0).unwrap();
        assert_eq!(r0.len(), 1);
        assert_eq!(*r0.matrices()[0].matrix(), IntMatrix::from_i64_rows(&[&[-1]]).unwrap());
    }

    #[test]
    fn entries_match_binomials() {
        for n in 0..=12u64 {
            let g = gram_pn(n as i64).unwrap();
            for i in 0..=n as usize {
                for j in i..=n as usize {
                    assert_eq!(*g.matrix().get(i, j), choose(n + (j - i) as u64, n));
                }
            }
        }
    }

    #[test]
    fn pascal_recurrence_holds_between_dimensions() {
        // C(n+k, n) = C(n+k-1, n) + C(n+k-1, n-1), the last term read off K_0(P^{n-1}).
        for n in 1..=8i64 {
            let g = gram_pn(n).unwrap();
            let h = gram_pn(n - 1).unwrap();
            for k in 1..h.rank() {
                assert_eq!(
                    *g.matrix().get(0, k),
                    g.matrix().get(0, k - 1) + h.matrix().get(0, k)
                );
            }
        }
    }

    #[test]
    fn p2_reflections_are_involutive_isometries() {
        let form = gram_pn(2).unwrap();
        let b = form.symmetrized_matrix();
        for r in reflections_pn(2).unwrap().matrices() {
            let m = r.matrix();
            assert!((m * m).is_identity());
            assert_eq!(&(&m.transpose() * &b) * m, b);
        }
    }
}

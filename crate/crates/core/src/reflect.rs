//! The map from semiorthonormal bases to tuples of reflections
//! `psi_E(F) = F - B(E, F) E`, where `B(E, F) = <E, F> + <F, E>`.
//!
//! The map intertwines mutations with the Hurwitz action and forgets exactly
//! the signs of the basis vectors.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hurwitz::{GroupTuple, InvolutionMatrices};
use crate::lattice::{BraidWord, GramForm, LatticeVector, SOBasis};
use crate::matrix::IntMatrix;

/// `psi_e` as a matrix in seed coordinates, with the vector it came from.
#[derive(Clone, Debug)]
pub struct ReflectionMatrix {
    matrix: IntMatrix,
    source: Option<LatticeVector>,
}

impl PartialEq for ReflectionMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for ReflectionMatrix {}

impl ReflectionMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn source(&self) -> Option<&LatticeVector> {
        self.source.as_ref()
    }

    pub fn is_involution(&self) -> bool {
        (&self.matrix * &self.matrix).is_identity()
    }

    /// `m^T (chi + chi^T) m = chi + chi^T`.
    pub fn preserves_symmetrized(&self, form: &GramForm) -> bool {
        let b = form.symmetrized_matrix();
        &(&self.matrix.transpose() * &b) * &self.matrix == b
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.matrix.mul_vec(v.coords()).map(LatticeVector::new)
    }
}

/// `psi_e` for an exceptional vector `e`: column `j` is `e_j - B(e, e_j) e`.
pub fn reflection_of(form: &GramForm, e: &LatticeVector) -> Result<ReflectionMatrix> {
    let self_pairing = form.pairing(e, e)?;
    if !self_pairing.is_one() {
        return Err(Error::NotExceptional(self_pairing.to_string()));
    }
    // B(e, e_j) is the j-th entry of e^T (chi + chi^T).
    let b = form.symmetrized_matrix();
    let n = form.rank();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let bj: BigInt = (0..n).map(|k| e.coords()[k].clone() * b.get(k, j)).sum();
        for i in 0..n {
            let delta = &bj * &e.coords()[i];
            m.set(i, j, m.get(i, j) - delta);
        }
    }
    Ok(ReflectionMatrix {
        matrix: m,
        source: Some(e.clone()),
    })
}

/// An ordered tuple of reflections over one form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectTuple {
    form: Arc<GramForm>,
    reflections: Vec<ReflectionMatrix>,
}

impl ReflectTuple {
    /// Checks that every matrix is an involution preserving `B`.
    pub fn from_matrices(form: Arc<GramForm>, matrices: Vec<IntMatrix>) -> Result<Self> {
        let mut reflections = Vec::with_capacity(matrices.len());
        for (i, m) in matrices.into_iter().enumerate() {
            if !m.is_square() || m.rows() != form.rank() {
                return Err(Error::DimensionMismatch {
                    expected: form.rank(),
                    found: m.rows(),
                });
            }
            let r = ReflectionMatrix {
                matrix: m,
                source: None,
            };
            if !r.is_involution() {
                return Err(Error::NotInvolution { index: i + 1 });
            }
            if !r.preserves_symmetrized(&form) {
                return Err(Error::NotIsometry);
            }
            reflections.push(r);
        }
        Ok(ReflectTuple { form, reflections })
    }

    pub fn form(&self) -> &Arc<GramForm> {
        &self.form
    }

    pub fn matrices(&self) -> &[ReflectionMatrix] {
        &self.reflections
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    pub fn to_group_tuple(&self) -> GroupTuple<InvolutionMatrices> {
        GroupTuple::new(
            InvolutionMatrices {
                dim: self.form.rank(),
            },
            self.reflections.iter().map(|r| r.matrix.clone()).collect(),
        )
    }

    pub fn from_group_tuple(form: Arc<GramForm>, t: GroupTuple<InvolutionMatrices>) -> Self {
        ReflectTuple {
            form,
            reflections: t
                .into_elements()
                .into_iter()
                .map(|matrix| ReflectionMatrix {
                    matrix,
                    source: None,
                })
                .collect(),
        }
    }

    pub fn apply_braid(&self, word: &BraidWord) -> Result<Self> {
        let t = self.to_group_tuple().apply_braid(word)?;
        Ok(Self::from_group_tuple(Arc::clone(&self.form), t))
    }
}

impl fmt::Display for ReflectTuple {
    /// One `matrix k of n` header per member, then its rows.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.reflections.len();
        for (k, r) in self.reflections.iter().enumerate() {
            writeln!(f, "matrix {} of {}", k + 1, n)?;
            write!(f, "{}", r.matrix)?;
        }
        Ok(())
    }
}

/// `(psi_{E_1}, ..., psi_{E_n})`.
pub fn psi_map(basis: &SOBasis) -> Result<ReflectTuple> {
    let form = basis.form();
    let reflections = basis
        .vectors()
        .iter()
        .map(|v| reflection_of(form, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReflectTuple {
        form: Arc::clone(form),
        reflections,
    })
}

/// Whether mutating then mapping agrees with mapping then acting on tuples.
pub fn equivariance_check(basis: &SOBasis, word: &BraidWord) -> Result<bool> {
    let lhs = psi_map(&basis.apply_braid(word)?)?;
    let rhs = psi_map(basis)?.apply_braid(word)?;
    Ok(lhs == rhs)
}

/// Equality up to the signs of the vectors. Decided by comparing reflection
/// tuples, and cross-checked against sign-normalized coordinates.
pub fn bases_equivalent_mod_sign(b1: &SOBasis, b2: &SOBasis) -> Result<bool> {
    if !b1.same_form(b2) {
        return Err(Error::FormMismatch);
    }
    let by_reflections = psi_map(b1)? == psi_map(b2)?;
    let by_signs = b1.sign_normalize()? == b2.sign_normalize()?;
    assert_eq!(
        by_reflections, by_signs,
        "reflection tuples and sign classes disagree"
    );
    Ok(by_reflections)
}

/// Replaces every member `r` by `m r m^{-1}` for an isometry `m`.
pub fn conjugate_tuple_by_isometry(t: &ReflectTuple, m: &IntMatrix) -> Result<ReflectTuple> {
    if !t.form.is_isometry(m)? {
        return Err(Error::NotIsometry);
    }
    let inv = m.inverse()?;
    let reflections = t
        .reflections
        .iter()
        .map(|r| ReflectionMatrix {
            matrix: &(m * &r.matrix) * &inv,
            source: r.source.as_ref().and_then(|v| m.mul_vec(v.coords()).ok().map(LatticeVector::new)),
        })
        .collect();
    Ok(ReflectTuple {
        form: Arc::clone(&t.form),
        reflections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pn::gram_pn;
    use num_traits::Zero;

    fn p4() -> Arc<GramForm> {
        Arc::new(gram_pn(4).unwrap())
    }

    #[test]
    fn first_and_last_reflections_of_p4() {
        let f = p4();
        let s1 = reflection_of(&f, &LatticeVector::unit(5, 0)).unwrap();
        let expect = IntMatrix::from_i64_rows(&[
            &[-1, -5, -15, -35, -70],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(*s1.matrix(), expect);
        let s5 = reflection_of(&f, &LatticeVector::unit(5, 4)).unwrap();
        assert_eq!(s5.matrix().row(4), IntMatrix::from_i64_rows(&[&[-70, -35, -15, -5, -1]]).unwrap().row(0));
    }

    #[test]
    fn sign_does_not_matter() {
        let f = p4();
        let e = LatticeVector::from_i64(&[-5, 1, 0, 0, 0]);
        assert_eq!(
            reflection_of(&f, &e).unwrap(),
            reflection_of(&f, &e.neg()).unwrap()
        );
        let seed = f.seed_basis();
        assert_eq!(psi_map(&seed).unwrap(), psi_map(&seed.with_signs_flipped(&[0, 1, 2, 3, 4])).unwrap());
    }

    #[test]
    fn rejects_non_exceptional_vectors() {
        let f = p4();
        let e = LatticeVector::from_i64(&[1, 1, 0, 0, 0]);
        assert_eq!(reflection_of(&f, &e), Err(Error::NotExceptional("7".into())));
    }

    #[test]
    fn rank_one() {
        let f = Arc::new(GramForm::orthonormal(1).unwrap());
        let t = psi_map(&f.seed_basis()).unwrap();
        assert_eq!(*t.matrices()[0].matrix(), IntMatrix::from_i64_rows(&[&[-1]]).unwrap());
    }

    #[test]
    fn fixed_vectors_are_b_orthogonal() {
        let f = p4();
        let e = f.seed_basis().apply_braid(&BraidWord::from_signed(&[1, -3, 2])).unwrap().vectors()[1].clone();
        let r = reflection_of(&f, &e).unwrap();
        for coords in [[1i64, 0, 0, 0, 0], [5, -1, 0, 0, 0], [0, 3, -1, 0, 0], [2, 1, 1, -1, 4]] {
            let v = LatticeVector::from_i64(&coords);
            let fixed = r.apply(&v).unwrap() == v;
            assert_eq!(fixed, f.symmetrized_pairing(&e, &v).unwrap().is_zero());
        }
        // psi_e(e) = -e
        assert_eq!(r.apply(&e).unwrap(), e.neg());
    }

    #[test]
    fn equivariance_examples() {
        let seed = p4().seed_basis();
        assert!(equivariance_check(&seed, &BraidWord::empty()).unwrap());
        assert!(equivariance_check(&seed, &BraidWord::from_signed(&[1])).unwrap());
        assert!(equivariance_check(&seed, &BraidWord::from_signed(&[-2, 3, 4, -1])).unwrap());
    }

    #[test]
    fn left_and_right_give_the_same_conjugate() {
        // psi of sigma_i and sigma_i^{-1} images share the conjugate psi_i psi_{i+1} psi_i
        let seed = p4().seed_basis();
        let t = psi_map(&seed).unwrap();
        let (a, b) = (t.matrices()[1].matrix(), t.matrices()[2].matrix());
        let conj = &(a * b) * a;
        let l = psi_map(&seed.left_mutation(2).unwrap()).unwrap();
        let r = psi_map(&seed.right_mutation(2).unwrap()).unwrap();
        assert_eq!(*l.matrices()[1].matrix(), conj);
        assert_eq!(*r.matrices()[2].matrix(), &(b * a) * b);
    }

    #[test]
    fn mod_sign_examples() {
        let seed = p4().seed_basis();
        assert!(bases_equivalent_mod_sign(&seed, &seed).unwrap());
        assert!(bases_equivalent_mod_sign(&seed, &seed.with_signs_flipped(&[2])).unwrap());
        assert!(!bases_equivalent_mod_sign(&seed, &seed.left_mutation(1).unwrap()).unwrap());
        let other = Arc::new(gram_pn(3).unwrap()).seed_basis();
        assert_eq!(bases_equivalent_mod_sign(&seed, &other), Err(Error::FormMismatch));
    }

    #[test]
    fn global_conjugation() {
        let f = p4();
        let t = psi_map(&f.seed_basis()).unwrap();
        let id = IntMatrix::identity(5);
        assert_eq!(conjugate_tuple_by_isometry(&t, &id).unwrap(), t);
        assert_eq!(conjugate_tuple_by_isometry(&t, &-&id).unwrap(), t);
        let mut bad = IntMatrix::identity(5);
        bad.set(0, 1, BigInt::one());
        assert_eq!(conjugate_tuple_by_isometry(&t, &bad), Err(Error::NotIsometry));
    }

    #[test]
    fn from_matrices_validates() {
        let f = Arc::new(GramForm::orthonormal(2).unwrap());
        let ok = IntMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]).unwrap();
        assert!(ReflectTuple::from_matrices(Arc::clone(&f), vec![ok.clone(), ok.clone()]).is_ok());
        let shear = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(
            ReflectTuple::from_matrices(f, vec![ok, shear]),
            Err(Error::NotInvolution { index: 2 })
        );
    }
}

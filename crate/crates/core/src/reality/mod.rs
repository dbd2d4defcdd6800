//! Deciding c-reality, pairing elementary divisors with their duals, and
//! building conjugators and invariant forms.

mod claim;
mod conjugator;
mod forms;

use serde::{Deserialize, Serialize};

use crate::canonical::{elementary_divisors, invariant_factors, EDivisor, EDivisorJson};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::Poly;

pub use claim::{claim_check_theorem22, ClaimReport};
pub use conjugator::{
    build_conjugator, conjugator_space, involution_adjust, ConjCert, ConjMethod, InvolutionStatus,
};
pub use forms::{
    build_hermitian_form, cyclic_selfdual_form, dual_pair_form, find_nondegenerate,
    form_space_contains, generic_form_space, lower_unipotent, skew_form, symmetric_form,
    unipotent_char2_form, verify_unitary, FormCert, FormKind, FormMethod,
};

pub(crate) fn require_invertible<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<()> {
    if !t.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if t.rows() == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if !t.is_invertible(f) {
        return Err(Error::Singular);
    }
    Ok(())
}

/// `(T^c)^{-1}`.
pub fn conj_inverse<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    t.conj(f).inverse(f)
}

/// Whether `T` is conjugate to `(T^c)^{-1}`, by comparing invariant factors.
/// Needs no factorization.
pub fn is_c_real<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<bool> {
    require_invertible(f, t)?;
    Ok(invariant_factors(f, t)? == invariant_factors(f, &conj_inverse(f, t)?)?)
}

/// Where an elementary divisor lands in the duality pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DivisorRole {
    /// `p = x - 1` or `p = x + 1`.
    Unipotent,
    SelfDual,
    /// Must be matched with the block of `p*`.
    Paired,
}

pub(crate) fn divisor_role<F: Field>(f: &F, p: &Poly<F::Elem>) -> Result<DivisorRole> {
    let one = f.one();
    if *p == Poly::linear(f, &one) || *p == Poly::linear(f, &f.neg(&one)) {
        return Ok(DivisorRole::Unipotent);
    }
    Ok(if p.dual(f)? == *p {
        DivisorRole::SelfDual
    } else {
        DivisorRole::Paired
    })
}

/// Partition of the elementary divisors of `T` certifying c-reality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing<E> {
    pub self_dual: Vec<EDivisor<E>>,
    /// Each second entry is the dual of the first, with equal multiplicity.
    pub dual_pairs: Vec<(EDivisor<E>, EDivisor<E>)>,
    pub unipotent: Vec<EDivisor<E>>,
}

/// One line of the serialized pairing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingEntry {
    /// `self-dual`, `dual-pair` or `unipotent`.
    pub kind: String,
    pub divisors: Vec<EDivisorJson>,
}

impl<E: Clone + Eq + Ord> Pairing<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Vec<PairingEntry> {
        let single = |kind: &str, d: &EDivisor<E>| PairingEntry {
            kind: kind.into(),
            divisors: vec![d.to_json(f)],
        };
        let mut out: Vec<PairingEntry> = Vec::new();
        out.extend(self.unipotent.iter().map(|d| single("unipotent", d)));
        out.extend(self.self_dual.iter().map(|d| single("self-dual", d)));
        out.extend(self.dual_pairs.iter().map(|(a, b)| PairingEntry {
            kind: "dual-pair".into(),
            divisors: vec![a.to_json(f), b.to_json(f)],
        }));
        out
    }

    /// Every divisor appearing in the pairing, in block order.
    pub fn divisors(&self) -> Vec<EDivisor<E>> {
        let mut all: Vec<EDivisor<E>> = self
            .unipotent
            .iter()
            .chain(&self.self_dual)
            .cloned()
            .chain(
                self.dual_pairs
                    .iter()
                    .flat_map(|(a, b)| [a.clone(), b.clone()]),
            )
            .collect();
        all.sort_by(|a, b| a.block_cmp(b));
        all
    }
}

pub(crate) fn pair_divisors<F: Field>(
    f: &F,
    divisors: &[EDivisor<F::Elem>],
) -> Result<Pairing<F::Elem>> {
    let mut pairing = Pairing {
        self_dual: Vec::new(),
        dual_pairs: Vec::new(),
        unipotent: Vec::new(),
    };
    let mut used = vec![false; divisors.len()];
    for (i, d) in divisors.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        match divisor_role(f, &d.p)? {
            DivisorRole::Unipotent => pairing.unipotent.push(d.clone()),
            DivisorRole::SelfDual => pairing.self_dual.push(d.clone()),
            DivisorRole::Paired => {
                let dual = d.p.dual(f)?;
                let partner = divisors
                    .iter()
                    .enumerate()
                    .find(|(j, e)| !used[*j] && e.p == dual && e.k == d.k && e.mult == d.mult);
                let Some((j, e)) = partner else {
                    return Err(Error::NotCReal {
                        witness: d.label(f),
                    });
                };
                used[j] = true;
                pairing.dual_pairs.push((d.clone(), e.clone()));
            }
        }
    }
    Ok(pairing)
}

/// Pairs every elementary divisor with itself (self-dual or unipotent) or
/// with its dual of equal multiplicity; fails naming the first divisor
/// without a partner.
pub fn duality_pairing<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<Pairing<F::Elem>> {
    require_invertible(f, t)?;
    pair_divisors(f, &elementary_divisors(f, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, GaussianRationals};

    fn f4() -> FiniteField {
        FiniteField::new(2, 2, true).unwrap()
    }

    fn f9() -> FiniteField {
        FiniteField::new(3, 2, true).unwrap()
    }

    #[test]
    fn decision_examples() {
        let f = f9();
        let paired = Mat::parse(&f, "[[1+i,0];[0,2+2*i]]").unwrap();
        assert!(is_c_real(&f, &paired).unwrap());
        let unpaired = Mat::parse(&f, "[[1+i,0];[0,1+i]]").unwrap();
        assert!(!is_c_real(&f, &unpaired).unwrap());
        let g = f4();
        let j3 = Mat::parse(&g, "[[1,0,0];[1,1,0];[0,1,1]]").unwrap();
        assert!(is_c_real(&g, &j3).unwrap());
        let singular = Mat::parse(&g, "[[1,1];[1,1]]").unwrap();
        assert_eq!(is_c_real(&g, &singular), Err(Error::Singular));
    }

    #[test]
    fn pairing_examples() {
        let f = f4();
        // w and w^2 each satisfy (a^c)^{-1} = a, so both linear factors are
        // self-dual rather than dual to each other
        let c = Mat::parse(&f, "[[0,1];[1,1]]").unwrap();
        let p = duality_pairing(&f, &c).unwrap();
        assert_eq!(p.self_dual.len(), 2);
        assert!(p.dual_pairs.is_empty());

        let g = f9();
        let d = Mat::parse(&g, "[[1+i,0];[0,2+2*i]]").unwrap();
        let p = duality_pairing(&g, &d).unwrap();
        assert_eq!(p.dual_pairs.len(), 1);
        let json = serde_json::to_string(&p.to_json(&g)).unwrap();
        assert!(json.contains("dual-pair"), "{json}");

        let bad = Mat::parse(&g, "[[1+i,0];[0,1+i]]").unwrap();
        match duality_pairing(&g, &bad) {
            Err(Error::NotCReal { witness }) => assert_eq!(witness, "(x + (2+2*i))^1 x2"),
            other => panic!("{other:?}"),
        }

        let id = Mat::identity(&g, 3);
        let p = duality_pairing(&g, &id).unwrap();
        assert_eq!(p.unipotent.len(), 1);
        assert_eq!((p.unipotent[0].k, p.unipotent[0].mult), (1, 3));
    }

    #[test]
    fn gaussian_decision_needs_no_factorization() {
        let g = GaussianRationals;
        let t = Mat::parse(&g, "[[1+i,0,0];[0,1/2+1/2*i,0];[0,0,3]]").unwrap();
        // (1+i)^c^{-1} = (1-i)^{-1} = (1+i)/2; 3 pairs with 1/3, which is absent
        assert!(!is_c_real(&g, &t).unwrap());
        let t = Mat::parse(&g, "[[1+i,0,0];[0,1/2+1/2*i,0];[0,0,i]]").unwrap();
        assert!(is_c_real(&g, &t).unwrap());
    }
}

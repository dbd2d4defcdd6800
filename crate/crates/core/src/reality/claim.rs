use serde::{Deserialize, Serialize};

use super::forms::{find_nondegenerate, generic_form_space, FormKind};
use super::{divisor_role, pair_divisors, require_invertible, DivisorRole};
use crate::canonical::elementary_divisors;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::search::{SearchConfig, SearchOutcome};

/// Outcome of comparing the stated characteristic 2 criterion for
/// symmetric forms under `c = id` with a direct search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub field: String,
    pub matrix: String,
    pub elementary_divisors: Vec<String>,
    /// Divisors `(x-1)^m` with `m` and the multiplicity both odd.
    pub odd_unipotent: Vec<String>,
    /// Prediction of the criterion: pairing holds and `odd_unipotent` is empty.
    pub predicted: bool,
    /// Whether a nondegenerate invariant symmetric form exists; `None` when
    /// the search budget ran out first.
    pub ground_truth: Option<bool>,
    pub agree: Option<bool>,
    /// A nondegenerate invariant symmetric form when one was found.
    pub witness: Option<String>,
    pub form_space_dim: usize,
}

impl ClaimReport {
    pub fn verdict(&self) -> &'static str {
        match self.agree {
            Some(true) => "AGREE",
            Some(false) => "DISAGREE",
            None => "UNDECIDED",
        }
    }
}

/// Evaluates the criterion and the ground truth independently for `T` over
/// a characteristic 2 field with trivial involution.
pub fn claim_check_theorem22<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<ClaimReport> {
    if f.characteristic() != 2 || !f.involution_is_trivial() {
        return Err(Error::Precondition(
            "the claim check needs characteristic 2 with c = id".into(),
        ));
    }
    require_invertible(f, t)?;
    let divisors = elementary_divisors(f, t)?;
    let mut odd_unipotent = Vec::new();
    for d in &divisors {
        if divisor_role(f, &d.p)? == DivisorRole::Unipotent && d.k % 2 == 1 && d.mult % 2 == 1 {
            odd_unipotent.push(d.label(f));
        }
    }
    let paired = match pair_divisors(f, &divisors) {
        Ok(_) => true,
        Err(Error::NotCReal { .. }) => false,
        Err(e) => return Err(e),
    };
    let predicted = paired && odd_unipotent.is_empty();

    let space = generic_form_space(f, t, FormKind::SymmetricBilinear)?;
    let (ground_truth, witness) = match find_nondegenerate(f, &space, cfg) {
        SearchOutcome::Found(h) => (Some(true), Some(h.format(f))),
        SearchOutcome::Exhausted { .. } => (Some(false), None),
        SearchOutcome::GaveUp { .. } => (None, None),
    };
    Ok(ClaimReport {
        field: f.spec(),
        matrix: t.format(f),
        elementary_divisors: divisors.iter().map(|d| d.label(f)).collect(),
        odd_unipotent,
        predicted,
        ground_truth,
        agree: ground_truth.map(|g| g == predicted),
        witness,
        form_space_dim: space.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn f2() -> FiniteField {
        FiniteField::new(2, 1, false).unwrap()
    }

    #[test]
    fn identity_of_size_one_disagrees() {
        let f = f2();
        let r = claim_check_theorem22(&f, &Mat::identity(&f, 1), &SearchConfig::default()).unwrap();
        assert!(!r.predicted);
        assert_eq!(r.ground_truth, Some(true));
        assert_eq!(r.verdict(), "DISAGREE");
        assert_eq!(r.witness.as_deref(), Some("[[1]]"));
    }

    #[test]
    fn jordan_and_identity_of_size_two_agree() {
        let f = f2();
        let cfg = SearchConfig::default();
        let j2 = Mat::parse(&f, "[[1,0];[1,1]]").unwrap();
        let r = claim_check_theorem22(&f, &j2, &cfg).unwrap();
        assert!(r.predicted);
        assert_eq!(r.agree, Some(true));
        let r = claim_check_theorem22(&f, &Mat::identity(&f, 2), &cfg).unwrap();
        assert!(r.predicted);
        assert_eq!(r.agree, Some(true));
    }

    #[test]
    fn needs_trivial_involution() {
        let f = FiniteField::new(2, 2, true).unwrap();
        let r = claim_check_theorem22(&f, &Mat::identity(&f, 1), &SearchConfig::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}

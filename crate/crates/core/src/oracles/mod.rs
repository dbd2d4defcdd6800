//! Brute-force ground truth over small finite fields.
//!
//! Nothing here uses canonical forms: conjugacy and form existence are
//! checked from their definitions by enumeration.

mod census;

pub use census::{
    census, centralizer_order, invariant_factor_chains, CensusConfig, CensusMode, CensusReport,
    Disagreement, Execution,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::reality::FormKind;

/// `|GL_n(F_q)| = Π_{i<n} (q^n - q^i)`, saturating.
pub fn gl_order(q: u64, n: usize) -> u128 {
    let q = u128::from(q);
    let Some(qn) = q.checked_pow(n as u32) else {
        return u128::MAX;
    };
    (0..n as u32).fold(1u128, |acc, i| acc.saturating_mul(qn - q.pow(i)))
}

fn finite_order<F: Field>(f: &F) -> Result<u64> {
    f.order()
        .ok_or_else(|| Error::Precondition("brute force needs a finite field".into()))
}

fn check_cap(needed: u128, cap: u64) -> Result<()> {
    if needed > u128::from(cap) {
        return Err(Error::CapExceeded {
            needed,
            cap: u128::from(cap),
        });
    }
    Ok(())
}

/// Every element of `GL_n(F)`, built row by row keeping the rows
/// independent. Fails when `|GL_n(F)|` exceeds `cap`.
pub fn enumerate_gl<F: Field>(f: &F, n: usize, cap: u64) -> Result<Vec<Mat<F::Elem>>> {
    let q = finite_order(f)?;
    let size = gl_order(q, n);
    check_cap(size, cap)?;
    let elems = f.elements().expect("finite");
    let vectors: Vec<Vec<F::Elem>> = (0..q.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = elems[(idx % q) as usize].clone();
                    idx /= q;
                    e
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(size as usize);
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    extend_basis(f, n, &vectors, &mut rows, &mut out);
    debug_assert_eq!(out.len() as u128, size);
    Ok(out)
}

fn extend_basis<F: Field>(
    f: &F,
    n: usize,
    vectors: &[Vec<F::Elem>],
    rows: &mut Vec<Vec<F::Elem>>,
    out: &mut Vec<Mat<F::Elem>>,
) {
    if rows.len() == n {
        out.push(Mat::from_rows(rows.clone()).expect("rectangular"));
        return;
    }
    for v in vectors {
        rows.push(v.clone());
        let independent = Mat::from_rows(rows.clone()).expect("rectangular").rank(f) == rows.len();
        if independent {
            extend_basis(f, n, vectors, rows, out);
        }
        rows.pop();
    }
}

/// `X T == B X`, computed entrywise with early exit.
pub(crate) fn intertwines<F: Field>(
    f: &F,
    x: &Mat<F::Elem>,
    t: &Mat<F::Elem>,
    b: &Mat<F::Elem>,
) -> bool {
    let n = x.rows();
    for i in 0..n {
        for j in 0..n {
            let mut lhs = f.zero();
            let mut rhs = f.zero();
            for k in 0..n {
                lhs = f.add(&lhs, &f.mul(x.get(i, k), t.get(k, j)));
                rhs = f.add(&rhs, &f.mul(b.get(i, k), x.get(k, j)));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// First `X` in `group` with `X T X^{-1} = (T^c)^{-1}`.
pub fn brute_conjugacy_in<F: Field>(
    f: &F,
    group: &[Mat<F::Elem>],
    t: &Mat<F::Elem>,
) -> Result<Option<Mat<F::Elem>>> {
    let target = t.conj(f).inverse(f)?;
    Ok(group
        .iter()
        .find(|x| intertwines(f, x, t, &target))
        .cloned())
}

/// First `X` in `group` with `X T X^{-1} = (T^c)^{-1}` and `X^2 = I`.
pub fn brute_involutory_conjugator_in<F: Field>(
    f: &F,
    group: &[Mat<F::Elem>],
    t: &Mat<F::Elem>,
) -> Result<Option<Mat<F::Elem>>> {
    let target = t.conj(f).inverse(f)?;
    for x in group {
        if intertwines(f, x, t, &target) && x.mul(f, x)?.is_identity(f) {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

/// Searches all of `GL_n(F)` for `X` with `X T X^{-1} = (T^c)^{-1}`.
pub fn brute_conjugacy_oracle<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    cap: u64,
) -> Result<Option<Mat<F::Elem>>> {
    if !t.is_square() {
        return Err(Error::Dimension("expected a square matrix".into()));
    }
    let group = enumerate_gl(f, t.rows(), cap)?;
    brute_conjugacy_in(f, &group, t)
}

/// Values allowed on the diagonal and above it for a form of `kind`.
fn entry_domains<F: Field>(f: &F, kind: FormKind) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let all = f.elements().expect("finite");
    let diag = match kind {
        FormKind::Hermitian => f.fixed_elements().expect("finite"),
        FormKind::SkewHermitian => all
            .iter()
            .filter(|a| f.conj(a) == f.neg(a))
            .cloned()
            .collect(),
        FormKind::SymmetricBilinear => all.clone(),
    };
    (diag, all)
}

/// Number of `n × n` matrices of the given symmetry kind.
pub fn form_candidates<F: Field>(f: &F, n: usize, kind: FormKind) -> Result<u128> {
    finite_order(f)?;
    let (diag, off) = entry_domains(f, kind);
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    Ok((diag.len() as u128)
        .saturating_pow(n as u32)
        .saturating_mul((off.len() as u128).saturating_pow(pairs)))
}

/// Enumerates every matrix of the given symmetry kind and returns the first
/// nondegenerate one with `T* H T = H`.
pub fn brute_form_oracle<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    kind: FormKind,
    cap: u64,
) -> Result<Option<Mat<F::Elem>>> {
    if !t.is_square() {
        return Err(Error::Dimension("expected a square matrix".into()));
    }
    let n = t.rows();
    check_cap(form_candidates(f, n, kind)?, cap)?;
    let (diag, off) = entry_domains(f, kind);
    let upper: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let adj_t = match kind {
        FormKind::SymmetricBilinear => t.transpose(),
        _ => t.conj_transpose(f),
    };
    let mirror = |a: &F::Elem| match kind {
        FormKind::Hermitian => f.conj(a),
        FormKind::SkewHermitian => f.neg(&f.conj(a)),
        FormKind::SymmetricBilinear => a.clone(),
    };
    let total = form_candidates(f, n, kind)?;
    let mut h = Mat::zeros(f, n, n);
    for mut idx in 0..total {
        for i in 0..n {
            let r = diag.len() as u128;
            h.set(i, i, diag[(idx % r) as usize].clone());
            idx /= r;
        }
        for &(i, j) in &upper {
            let r = off.len() as u128;
            let a = off[(idx % r) as usize].clone();
            idx /= r;
            h.set(j, i, mirror(&a));
            h.set(i, j, a);
        }
        if adj_t.mul(f, &h)?.mul(f, t)? == h && h.is_invertible(f) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

use serde::{Deserialize, Serialize};

use super::{
    conj_inverse, divisor_role, is_c_real, pair_divisors, require_invertible, DivisorRole,
};
use crate::canonical::{intertwiner, primary_decomposition, Block, PrimaryDecomp};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::search::{search, Alphabet, SearchConfig, SearchOutcome};

/// Which construction produced a piece of a conjugator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjMethod {
    /// Reversal `e_i ↦ e_{k+1-i}` on a self-dual cyclic block.
    Antidiagonal,
    /// Swap between the blocks of `g` and `g*`.
    Blockswap,
    /// Alignment of cyclic bases of `U` and `U^{-1}` on a unipotent block.
    UnipotentAdjusted,
    /// Invertible solution of `S T = (T^c)^{-1} S` found by search.
    SolverFallback,
}

/// Outcome of the search for an involutory conjugator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum InvolutionStatus {
    AlreadyInvolutory,
    Adjusted,
    /// No conjugator with `S^2 = I` was found; `exhaustive` means none
    /// exists.
    NotFound {
        tried: u64,
        exhaustive: bool,
    },
}

/// `S` with `S T S^{-1} = (T^c)^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjCert<E> {
    pub s: Mat<E>,
    pub is_involution: bool,
    pub methods: Vec<ConjMethod>,
    pub involution: InvolutionStatus,
}

impl<E: Clone + Eq> ConjCert<E> {
    /// Re-checks the defining identity and the involution flag.
    pub fn check<F: Field<Elem = E>>(&self, f: &F, t: &Mat<E>) -> Result<()> {
        check_conjugates(f, t, &self.s)?;
        if self.is_involution && !self.s.mul(f, &self.s)?.is_identity(f) {
            return Err(Error::Internal(
                "S is flagged involutory but S^2 != I".into(),
            ));
        }
        Ok(())
    }
}

fn check_conjugates<F: Field>(f: &F, t: &Mat<F::Elem>, s: &Mat<F::Elem>) -> Result<()> {
    if !s.is_invertible(f) {
        return Err(Error::Internal("conjugator is singular".into()));
    }
    let target = conj_inverse(f, t)?;
    if s.mul(f, t)? != target.mul(f, s)? {
        return Err(Error::Internal("S T S^-1 != (T^c)^-1".into()));
    }
    Ok(())
}

/// Basis of `{X : X A = B X}`.
pub fn conjugator_space<F: Field>(
    f: &F,
    a: &Mat<F::Elem>,
    b: &Mat<F::Elem>,
) -> Result<Vec<Mat<F::Elem>>> {
    let n = a.rows();
    let mut columns = Vec::with_capacity(n * n);
    for idx in 0..n * n {
        let unit = Mat::from_fn(
            n,
            n,
            |i, j| if i * n + j == idx { f.one() } else { f.zero() },
        );
        let r = unit.mul(f, a)?.sub(f, &b.mul(f, &unit)?)?;
        columns.push(r.entries().to_vec());
    }
    let system = Mat::from_columns(n * n, &columns);
    system
        .nullspace(f)
        .into_iter()
        .map(|v| Mat::from_vec(n, n, v))
        .collect()
}

fn combine<F: Field>(f: &F, basis: &[Mat<F::Elem>], coeffs: &[F::Elem]) -> Mat<F::Elem> {
    let n = basis[0].rows();
    let mut acc = Mat::zeros(f, n, n);
    for (b, c) in basis.iter().zip(coeffs) {
        if !f.is_zero(c) {
            acc = acc.add(f, &b.scale(f, c)).expect("same shape");
        }
    }
    acc
}

/// Some invertible `X` with `X A = B X`, by search over the solution space.
fn solve_conjugator<F: Field>(
    f: &F,
    a: &Mat<F::Elem>,
    b: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<Mat<F::Elem>> {
    let basis = conjugator_space(f, a, b)?;
    if basis.is_empty() {
        return Err(Error::Internal("no conjugator exists".into()));
    }
    let alphabets = vec![Alphabet::full(f); basis.len()];
    search(f, &alphabets, cfg, |c| {
        let x = combine(f, &basis, c);
        x.is_invertible(f).then_some(x)
    })
    .found()
    .ok_or_else(|| Error::Internal("no invertible conjugator found within the budget".into()))
}

pub(crate) fn block_of<E: Clone + Eq>(m: &Mat<E>, b: &Block<E>) -> Mat<E> {
    m.block(b.offset, b.offset, b.dim, b.dim)
}

/// Conjugator on one self-dual block `C`: `X C X^{-1} = (C^c)^{-1}`.
fn self_dual_block<F: Field>(
    f: &F,
    c: &Mat<F::Elem>,
    unipotent: bool,
    cfg: &SearchConfig,
) -> Result<(Mat<F::Elem>, ConjMethod)> {
    let target = conj_inverse(f, c)?;
    let k = c.rows();
    if unipotent {
        if let Ok(x) = intertwiner(f, &target, c) {
            return Ok((x, ConjMethod::UnipotentAdjusted));
        }
    } else {
        let j = Mat::antidiag_identity(f, k);
        if j.mul(f, c)? == target.mul(f, &j)? {
            return Ok((j, ConjMethod::Antidiagonal));
        }
    }
    Ok((
        solve_conjugator(f, c, &target, cfg)?,
        ConjMethod::SolverFallback,
    ))
}

fn assemble<F: Field>(
    f: &F,
    dec: &PrimaryDecomp<F::Elem>,
    cfg: &SearchConfig,
) -> Result<(Mat<F::Elem>, Vec<ConjMethod>)> {
    let n = dec.p.rows();
    let b = dec.block_matrix(f);
    let mut sb = Mat::zeros(f, n, n);
    let mut methods = Vec::new();
    let mut used = vec![false; dec.blocks.len()];
    for (i, blk) in dec.blocks.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let c1 = block_of(&b, blk);
        match divisor_role(f, &blk.p)? {
            role @ (DivisorRole::Unipotent | DivisorRole::SelfDual) => {
                let (x, m) = self_dual_block(f, &c1, role == DivisorRole::Unipotent, cfg)?;
                sb.set_block(blk.offset, blk.offset, &x);
                methods.push(m);
            }
            DivisorRole::Paired => {
                let dual = blk.p.dual(f)?;
                let j = (0..dec.blocks.len())
                    .find(|&j| !used[j] && dec.blocks[j].p == dual && dec.blocks[j].k == blk.k)
                    .ok_or_else(|| Error::Internal("dual block missing".into()))?;
                used[j] = true;
                let other = &dec.blocks[j];
                let c2 = block_of(&b, other);
                // X C2 = (C1^c)^{-1} X and Y = (X^c)^{-1}
                let x = intertwiner(f, &conj_inverse(f, &c1)?, &c2)?;
                let y = x.conj(f).inverse(f)?;
                sb.set_block(blk.offset, other.offset, &x);
                sb.set_block(other.offset, blk.offset, &y);
                methods.push(ConjMethod::Blockswap);
            }
        }
    }
    // S = P^c S_B P^{-1}
    let s = dec.p.conj(f).mul(f, &sb)?.mul(f, &dec.p_inv)?;
    Ok((s, methods))
}

/// Builds `S` with `S T S^{-1} = (T^c)^{-1}` blockwise on the primary
/// decomposition, then looks for an involutory replacement.
pub fn build_conjugator<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<ConjCert<F::Elem>> {
    require_invertible(f, t)?;
    if !is_c_real(f, t)? {
        let witness = match super::duality_pairing(f, t) {
            Err(Error::NotCReal { witness }) => witness,
            _ => "invariant factors of T and (T^c)^-1 differ".into(),
        };
        return Err(Error::NotCReal { witness });
    }
    let (s0, methods) = match primary_decomposition(f, t) {
        Ok(dec) => {
            pair_divisors(f, &dec.divisors)?;
            match assemble(f, &dec, cfg) {
                Ok((s, m)) if check_conjugates(f, t, &s).is_ok() => (s, m),
                _ => (
                    solve_conjugator(f, t, &conj_inverse(f, t)?, cfg)?,
                    vec![ConjMethod::SolverFallback],
                ),
            }
        }
        Err(Error::FactorizationUnsupported(_)) => (
            solve_conjugator(f, t, &conj_inverse(f, t)?, cfg)?,
            vec![ConjMethod::SolverFallback],
        ),
        Err(e) => return Err(e),
    };
    check_conjugates(f, t, &s0)?;
    let mut cert = involution_adjust(f, t, &s0, cfg)?;
    cert.methods = methods;
    Ok(cert)
}

/// Looks for `S` with `S^2 = I` among all conjugators `S0 · Z(T)`,
/// searching the solution space of `S T = (T^c)^{-1} S` directly. Returns
/// `S0` unchanged and flagged when none is found.
pub fn involution_adjust<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    s0: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<ConjCert<F::Elem>> {
    check_conjugates(f, t, s0)
        .map_err(|_| Error::Precondition("S0 does not conjugate T to (T^c)^-1".into()))?;
    let done = |s: Mat<F::Elem>, status: InvolutionStatus| ConjCert {
        is_involution: !matches!(status, InvolutionStatus::NotFound { .. }),
        s,
        methods: Vec::new(),
        involution: status,
    };
    if s0.mul(f, s0)?.is_identity(f) {
        return Ok(done(s0.clone(), InvolutionStatus::AlreadyInvolutory));
    }
    let basis = conjugator_space(f, t, &conj_inverse(f, t)?)?;
    let alphabets = vec![Alphabet::full(f); basis.len()];
    let outcome = search(f, &alphabets, cfg, |c| {
        let x = combine(f, &basis, c);
        x.mul(f, &x).ok()?.is_identity(f).then_some(x)
    });
    Ok(match outcome {
        SearchOutcome::Found(s) => done(s, InvolutionStatus::Adjusted),
        SearchOutcome::Exhausted { tried } => done(
            s0.clone(),
            InvolutionStatus::NotFound {
                tried,
                exhaustive: true,
            },
        ),
        SearchOutcome::GaveUp { tried } => done(
            s0.clone(),
            InvolutionStatus::NotFound {
                tried,
                exhaustive: false,
            },
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, GaussianRationals};

    fn f4() -> FiniteField {
        FiniteField::new(2, 2, true).unwrap()
    }

    #[test]
    fn antidiagonal_on_companion() {
        let f = f4();
        let t = Mat::parse(&f, "[[0,1];[1,1]]").unwrap();
        let j = Mat::antidiag_identity(&f, 2);
        // J T J = T^{-1} = (T^c)^{-1}, checked by hand
        assert_eq!(
            j.mul(&f, &t).unwrap().mul(&f, &j).unwrap(),
            Mat::parse(&f, "[[1,1];[1,0]]").unwrap()
        );
        let cert = build_conjugator(&f, &t, &SearchConfig::default()).unwrap();
        cert.check(&f, &t).unwrap();
        assert!(cert.is_involution);
    }

    #[test]
    fn identity_conjugator_is_identity() {
        let f = FiniteField::new(3, 2, true).unwrap();
        let id = Mat::identity(&f, 3);
        let cert = build_conjugator(&f, &id, &SearchConfig::default()).unwrap();
        assert!(cert.s.is_identity(&f));
        assert_eq!(cert.involution, InvolutionStatus::AlreadyInvolutory);
    }

    #[test]
    fn dual_pair_uses_blockswap() {
        let f = FiniteField::new(3, 2, true).unwrap();
        let t = Mat::parse(&f, "[[1+i,0];[0,2+2*i]]").unwrap();
        let cert = build_conjugator(&f, &t, &SearchConfig::default()).unwrap();
        cert.check(&f, &t).unwrap();
        assert_eq!(cert.methods, vec![ConjMethod::Blockswap]);
    }

    #[test]
    fn unipotent_jordan_block_over_f2_has_involutory_conjugator() {
        let f = FiniteField::new(2, 1, false).unwrap();
        let j = Mat::parse(&f, "[[1,1];[0,1]]").unwrap();
        let cert = build_conjugator(&f, &j, &SearchConfig::default()).unwrap();
        cert.check(&f, &j).unwrap();
        assert!(cert.is_involution);
        assert_eq!(cert.methods, vec![ConjMethod::UnipotentAdjusted]);
    }

    #[test]
    fn rejects_non_c_real() {
        let f = FiniteField::new(3, 2, true).unwrap();
        let t = Mat::parse(&f, "[[1+i,0];[0,1+i]]").unwrap();
        assert!(matches!(
            build_conjugator(&f, &t, &SearchConfig::default()),
            Err(Error::NotCReal { .. })
        ));
    }

    #[test]
    fn gaussian_rationals_without_factorization() {
        let g = GaussianRationals;
        let t = Mat::parse(&g, "[[1+i,0];[0,1/2+1/2*i]]").unwrap();
        let cert = build_conjugator(&g, &t, &SearchConfig::default()).unwrap();
        cert.check(&g, &t).unwrap();
    }
}

//! Smith normal form over `F[x]`, elementary divisors and the primary
//! decomposition into cyclic companion blocks.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::{factor_any, Poly};
use crate::search::{search, Alphabet, SearchConfig};

/// Square matrix over `F[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat<E> {
    n: usize,
    entries: Vec<Poly<E>>,
}

impl<E: Clone + Eq + Ord> PolyMat<E> {
    /// `xI - T`.
    pub fn characteristic<F: Field<Elem = E>>(f: &F, t: &Mat<E>) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::Dimension(
                "characteristic matrix of a non-square matrix".into(),
            ));
        }
        let n = t.rows();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = Poly::constant(f, f.neg(t.get(i, j)));
                entries.push(if i == j { c.add(f, &Poly::x(f)) } else { c });
            }
        }
        Ok(PolyMat { n, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<E> {
        &self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, p: Poly<E>) {
        self.entries[i * self.n + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// `row_dst -= q * row_src`.
    fn row_axpy<F: Field<Elem = E>>(&mut self, f: &F, dst: usize, src: usize, q: &Poly<E>) {
        for j in 0..self.n {
            let v = self.get(dst, j).sub(f, &q.mul(f, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    fn col_axpy<F: Field<Elem = E>>(&mut self, f: &F, dst: usize, src: usize, q: &Poly<E>) {
        for i in 0..self.n {
            let v = self.get(i, dst).sub(f, &q.mul(f, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    /// Nonzero entry of least degree in the trailing submatrix, row-major
    /// on ties.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.n {
            for j in t..self.n {
                if let Some(d) = self.get(i, j).degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonal of the Smith normal form, each entry monic (zeros kept).
    pub fn smith_diagonal<F: Field<Elem = E>>(mut self, f: &F) -> Vec<Poly<E>> {
        let n = self.n;
        for t in 0..n {
            while let Some((pi, pj)) = self.min_pivot(t) {
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..n {
                    let (q, r) = self.get(i, t).divmod(f, &pivot).expect("pivot nonzero");
                    self.row_axpy(f, i, t, &q);
                    clean &= r.is_zero();
                }
                for j in t + 1..n {
                    let (q, r) = self.get(t, j).divmod(f, &pivot).expect("pivot nonzero");
                    self.col_axpy(f, j, t, &q);
                    clean &= r.is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..n)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !pivot.divides(f, self.get(i, j)));
                match offender {
                    // Pull the offending row up; the next pass reduces it.
                    Some((i, _)) => self.row_axpy(f, t, i, &Poly::one(f).neg(f)),
                    None => break,
                }
            }
        }
        (0..n).map(|i| self.get(i, i).monic(f)).collect()
    }
}

/// Invariant factors `f_1 | f_2 | … | f_r` of `xI - T`, units dropped.
pub fn invariant_factors<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<Vec<Poly<F::Elem>>> {
    let diag = PolyMat::characteristic(f, t)?.smith_diagonal(f);
    let out: Vec<_> = diag.into_iter().filter(|p| !p.is_constant()).collect();
    debug_assert!(out.windows(2).all(|w| w[0].divides(f, &w[1])));
    Ok(out)
}

/// An elementary divisor `p^k` occurring `mult` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EDivisor<E> {
    pub p: Poly<E>,
    pub k: usize,
    pub mult: usize,
}

/// Serialized shape of an [`EDivisor`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EDivisorJson {
    pub p: String,
    pub k: usize,
    pub mult: usize,
}

impl<E: Clone + Eq + Ord> EDivisor<E> {
    /// `p^k`.
    pub fn power<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        self.p.pow(f, self.k)
    }

    pub fn dim(&self) -> usize {
        self.p.degree().unwrap_or(0) * self.k
    }

    /// Canonical block order: `deg p`, then coefficients of `p`, then `k`.
    pub fn block_cmp(&self, other: &Self) -> Ordering {
        self.p.canonical_cmp(&other.p).then(self.k.cmp(&other.k))
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> EDivisorJson {
        EDivisorJson {
            p: self.p.format(f),
            k: self.k,
            mult: self.mult,
        }
    }

    pub fn label<F: Field<Elem = E>>(&self, f: &F) -> String {
        format!("({})^{} x{}", self.p.format(f), self.k, self.mult)
    }
}

/// Factored invariant factors regrouped as `(p, k, mult)`, in block order.
pub fn elementary_divisors<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<Vec<EDivisor<F::Elem>>> {
    let mut out: Vec<EDivisor<F::Elem>> = Vec::new();
    for inv in invariant_factors(f, t)? {
        for (p, k) in factor_any(f, &inv)?.factors {
            match out.iter_mut().find(|e| e.p == p && e.k == k) {
                Some(e) => e.mult += 1,
                None => out.push(EDivisor { p, k, mult: 1 }),
            }
        }
    }
    out.sort_by(|a, b| a.block_cmp(b));
    Ok(out)
}

/// One cyclic block of a primary decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block<E> {
    pub p: Poly<E>,
    pub k: usize,
    /// First column of the block inside `P`.
    pub offset: usize,
    pub dim: usize,
}

impl<E: Clone + Eq + Ord> Block<E> {
    pub fn power<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        self.p.pow(f, self.k)
    }

    pub fn companion<F: Field<Elem = E>>(&self, f: &F) -> Mat<E> {
        Mat::companion(f, &self.power(f)).expect("block polynomial is nonconstant")
    }
}

/// `P^{-1} T P = blockdiag(companion(p_i^{k_i}))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomp<E> {
    pub p: Mat<E>,
    pub p_inv: Mat<E>,
    pub blocks: Vec<Block<E>>,
    pub divisors: Vec<EDivisor<E>>,
}

impl<E: Clone + Eq + Ord> PrimaryDecomp<E> {
    pub fn block_matrix<F: Field<Elem = E>>(&self, f: &F) -> Mat<E> {
        let comps: Vec<_> = self.blocks.iter().map(|b| b.companion(f)).collect();
        Mat::block_diag(f, &comps)
    }
}

/// Tracks a growing subspace of `F^n` by its echelon basis.
struct Span<E> {
    basis: Vec<Vec<E>>,
}

impl<E: Clone + Eq> Span<E> {
    fn new() -> Self {
        Span { basis: Vec::new() }
    }

    /// Adds `v`; returns whether the span grew.
    fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let mut v = v.to_vec();
        for b in &self.basis {
            let lead = b
                .iter()
                .position(|a| !f.is_zero(a))
                .expect("basis vector nonzero");
            if !f.is_zero(&v[lead]) {
                let s = f.mul(&v[lead], &f.inv(&b[lead]).expect("nonzero"));
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = f.sub(vi, &f.mul(&s, bi));
                }
            }
        }
        let Some(lead) = v.iter().position(|a| !f.is_zero(a)) else {
            return false;
        };
        // keep the basis sorted by leading position so reduction is exact
        let at = self
            .basis
            .iter()
            .position(|b| b.iter().position(|a| !f.is_zero(a)).expect("nonzero") > lead)
            .unwrap_or(self.basis.len());
        // reduce existing vectors against the newcomer to stay in echelon form
        let inv = f.inv(&v[lead]).expect("nonzero");
        let v: Vec<E> = v.iter().map(|a| f.mul(a, &inv)).collect();
        for b in &mut self.basis {
            if !f.is_zero(&b[lead]) {
                let s = b[lead].clone();
                for (bi, vi) in b.iter_mut().zip(&v) {
                    *bi = f.sub(bi, &f.mul(&s, vi));
                }
            }
        }
        self.basis.insert(at, v);
        true
    }

    fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        let mut probe = Span {
            basis: self.basis.clone(),
        };
        !probe.insert(f, v)
    }
}

/// Splits `F^n` into `T`-cyclic subspaces, one per elementary divisor
/// instance, and returns the change of basis.
///
/// For each prime `p` with kernels `K_j = ker p(T)^j`, generators of the
/// `p^k` blocks are taken from a basis of `K_k` avoiding
/// `K_{k-1} + p(T) K_{k+1}` and the blocks already chosen at that level.
pub fn primary_decomposition<F: Field>(f: &F, t: &Mat<F::Elem>) -> Result<PrimaryDecomp<F::Elem>> {
    let n = t.rows();
    let divisors = elementary_divisors(f, t)?;
    let mut primes: Vec<Poly<F::Elem>> = Vec::new();
    for d in &divisors {
        if !primes.contains(&d.p) {
            primes.push(d.p.clone());
        }
    }

    // generator vectors per (p, k), in discovery order
    let mut gens: Vec<(Poly<F::Elem>, usize, Vec<F::Elem>)> = Vec::new();
    for p in &primes {
        let dp = p.degree().expect("prime is nonconstant");
        let top = divisors
            .iter()
            .filter(|d| &d.p == p)
            .map(|d| d.k)
            .max()
            .unwrap_or(0);
        let np = t.eval_poly(f, p)?;
        let mut kernels = vec![Vec::new()];
        let mut power = Mat::identity(f, n);
        for _ in 1..=top + 1 {
            power = power.mul(f, &np)?;
            kernels.push(power.nullspace(f));
        }
        for k in (1..=top).rev() {
            let needed = divisors
                .iter()
                .find(|d| &d.p == p && d.k == k)
                .map_or(0, |d| d.mult);
            if needed == 0 {
                continue;
            }
            let mut w = Span::new();
            for v in &kernels[k - 1] {
                w.insert(f, v);
            }
            for v in &kernels[k + 1] {
                w.insert(f, &np.mul_vec(f, v));
            }
            let mut found = 0;
            for b in &kernels[k] {
                if found == needed {
                    break;
                }
                if w.contains(f, b) {
                    continue;
                }
                let mut x = b.clone();
                for _ in 0..dp {
                    w.insert(f, &x);
                    x = t.mul_vec(f, &x);
                }
                gens.push((p.clone(), k, b.clone()));
                found += 1;
            }
            if found != needed {
                return Err(Error::Internal(format!(
                    "found {found} of {needed} cyclic generators for {}^{k}",
                    p.format(f)
                )));
            }
        }
    }

    gens.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut columns = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(gens.len());
    for (p, k, v) in gens {
        let dim = p.degree().expect("nonconstant") * k;
        blocks.push(Block {
            p,
            k,
            offset: columns.len(),
            dim,
        });
        let mut x = v;
        for _ in 0..dim {
            let next = t.mul_vec(f, &x);
            columns.push(x);
            x = next;
        }
    }
    if columns.len() != n {
        return Err(Error::Internal(
            "cyclic blocks do not fill the space".into(),
        ));
    }
    let p = Mat::from_columns(n, &columns);
    let p_inv = p
        .inverse(f)
        .map_err(|_| Error::Internal("cyclic bases are dependent".into()))?;
    let out = PrimaryDecomp {
        p,
        p_inv,
        blocks,
        divisors,
    };
    let conj = out.p_inv.mul(f, t)?.mul(f, &out.p)?;
    if conj != out.block_matrix(f) {
        return Err(Error::Internal("P^-1 T P is not block companion".into()));
    }
    Ok(out)
}

/// Columns `u, Mu, …, M^{n-1}u`.
pub fn krylov<F: Field>(f: &F, m: &Mat<F::Elem>, u: &[F::Elem]) -> Mat<F::Elem> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    let mut x = u.to_vec();
    for _ in 0..n {
        let next = m.mul_vec(f, &x);
        cols.push(x);
        x = next;
    }
    Mat::from_columns(n, &cols)
}

/// A vector whose orbit spans `F^n`, or `None` when `M` is not cyclic.
/// Tries unit vectors, then sums of two unit vectors with small
/// coefficients, then seeded combinations.
pub fn cyclic_vector<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Vec<F::Elem>> {
    let n = m.rows();
    if n == 0 || m.minpoly(f).ok()?.degree() != Some(n) {
        return None;
    }
    let unit = |i: usize| -> Vec<F::Elem> {
        (0..n)
            .map(|j| if i == j { f.one() } else { f.zero() })
            .collect()
    };
    let is_cyclic = |v: &[F::Elem]| krylov(f, m, v).is_invertible(f);
    for i in 0..n {
        let v = unit(i);
        if is_cyclic(&v) {
            return Some(v);
        }
    }
    let alphabet = Alphabet::full(f);
    let coords = vec![alphabet; n];
    search(f, &coords, &SearchConfig::default(), |v| {
        is_cyclic(v).then(|| v.to_vec())
    })
    .found()
}

/// `A` with `M A = A N`, invertible, for cyclic `M`, `N` sharing a
/// minimal polynomial: `A = K(M, u) K(N, v)^{-1}`.
pub fn intertwiner<F: Field>(f: &F, m: &Mat<F::Elem>, n: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    let u = cyclic_vector(f, m)
        .ok_or_else(|| Error::Precondition("first matrix is not cyclic".into()))?;
    let v = cyclic_vector(f, n)
        .ok_or_else(|| Error::Precondition("second matrix is not cyclic".into()))?;
    let a = krylov(f, m, &u).mul(f, &krylov(f, n, &v).inverse(f)?)?;
    if m.mul(f, &a)? != a.mul(f, n)? {
        return Err(Error::Precondition("matrices are not similar".into()));
    }
    Ok(a)
}

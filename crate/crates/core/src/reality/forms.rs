use serde::{Deserialize, Serialize};

use super::conjugator::block_of;
use super::{
    conj_inverse, divisor_role, is_c_real, pair_divisors, require_invertible, DivisorRole,
};
use crate::canonical::{intertwiner, krylov, primary_decomposition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::{factor_any, Poly, SelfDuality};
use crate::search::{search, Alphabet, SearchConfig, SearchOutcome};

/// Symmetry type of a form `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// `H = (H^c)^t`, invariance `(T^c)^t H T = H`.
    Hermitian,
    /// `H = -(H^c)^t`, invariance `(T^c)^t H T = H`.
    SkewHermitian,
    /// `H = H^t`, invariance `T^t H T = H` (bilinear).
    SymmetricBilinear,
}

impl FormKind {
    pub fn name(self) -> &'static str {
        match self {
            FormKind::Hermitian => "hermitian",
            FormKind::SkewHermitian => "skew-hermitian",
            FormKind::SymmetricBilinear => "symmetric-bilinear",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hermitian" => Ok(FormKind::Hermitian),
            "skew" | "skew-hermitian" => Ok(FormKind::SkewHermitian),
            "symmetric" | "symmetric-bilinear" => Ok(FormKind::SymmetricBilinear),
            _ => Err(Error::Parse(format!("unknown form kind {s:?}"))),
        }
    }

    /// `M ↦ (M^c)^t`, or `M^t` for bilinear kinds.
    fn adjoint<F: Field>(self, f: &F, m: &Mat<F::Elem>) -> Mat<F::Elem> {
        match self {
            FormKind::SymmetricBilinear => m.transpose(),
            _ => m.conj_transpose(f),
        }
    }

    /// `H - ε H*` with `ε = -1` for skew forms.
    fn symmetry_defect<F: Field>(self, f: &F, h: &Mat<F::Elem>) -> Mat<F::Elem> {
        let adj = self.adjoint(f, h);
        match self {
            FormKind::SkewHermitian => h.add(f, &adj),
            _ => h.sub(f, &adj),
        }
        .expect("square")
    }
}

/// Which construction produced (part of) a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormMethod {
    /// Toeplitz recurrence on a self-dual cyclic block.
    CyclicRecurrence,
    /// Anti-triangular fill for a characteristic 2 unipotent block.
    UnipotentChar2,
    /// `[[0, A], [A*, 0]]` on a block and its dual.
    Hyperbolic,
    /// Nondegenerate element of the solved invariance system.
    Solver,
    /// Hermitian certificate multiplied by `w` with `w^c = -w`.
    ScaledByW,
}

/// A `T`-invariant form with the data needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCert<E> {
    pub h: Mat<E>,
    pub kind: FormKind,
    pub nondegenerate: bool,
    pub methods: Vec<FormMethod>,
}

impl<E: Clone + Eq> FormCert<E> {
    fn new<F: Field<Elem = E>>(
        f: &F,
        t: &Mat<E>,
        h: Mat<E>,
        kind: FormKind,
        methods: Vec<FormMethod>,
    ) -> Result<Self> {
        let nondegenerate = h.is_invertible(f);
        let cert = FormCert {
            h,
            kind,
            nondegenerate,
            methods,
        };
        cert.check(f, t)?;
        Ok(cert)
    }

    /// Symmetry, invariance and the nondegeneracy flag, exactly.
    pub fn check<F: Field<Elem = E>>(&self, f: &F, t: &Mat<E>) -> Result<()> {
        if self.h.rows() != t.rows() || !self.h.is_square() {
            return Err(Error::Dimension("form and matrix sizes differ".into()));
        }
        if !self.kind.symmetry_defect(f, &self.h).is_zero(f) {
            return Err(Error::Internal(format!("H is not {}", self.kind.name())));
        }
        let moved = self.kind.adjoint(f, t).mul(f, &self.h)?.mul(f, t)?;
        if moved != self.h {
            return Err(Error::Internal("H is not T-invariant".into()));
        }
        if self.nondegenerate != self.h.is_invertible(f) {
            return Err(Error::Internal(
                "nondegeneracy flag disagrees with det H".into(),
            ));
        }
        Ok(())
    }
}

/// Basis over `E` of all `H` of the given kind with `T* H T = H`, where
/// each entry of `H` is split into its `E`-coordinates.
pub fn generic_form_space<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    kind: FormKind,
) -> Result<Vec<Mat<F::Elem>>> {
    if !t.is_square() {
        return Err(Error::Dimension("form space of a non-square matrix".into()));
    }
    let n = t.rows();
    let deg = f.degree_over_fixed();
    let basis_values: Vec<F::Elem> = if deg == 1 {
        vec![f.one()]
    } else {
        vec![f.one(), f.special_element()?]
    };
    let adj_t = kind.adjoint(f, t);
    let mut columns = Vec::with_capacity(n * n * deg);
    let mut units = Vec::with_capacity(n * n * deg);
    for idx in 0..n * n {
        for b in &basis_values {
            let h = Mat::from_fn(n, n, |i, j| {
                if i * n + j == idx {
                    b.clone()
                } else {
                    f.zero()
                }
            });
            let moved = adj_t.mul(f, &h)?.mul(f, t)?.sub(f, &h)?;
            let defect = kind.symmetry_defect(f, &h);
            let column: Vec<F::Elem> = moved
                .entries()
                .iter()
                .chain(defect.entries())
                .flat_map(|a| f.fixed_coords(a))
                .collect();
            columns.push(column);
            units.push(h);
        }
    }
    let rows = columns[0].len();
    let system = Mat::from_columns(rows, &columns);
    Ok(system
        .nullspace(f)
        .into_iter()
        .map(|v| combine(f, &units, &v))
        .collect())
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

/// Whether `h` is an `E`-combination of `space`.
pub fn form_space_contains<F: Field>(f: &F, space: &[Mat<F::Elem>], h: &Mat<F::Elem>) -> bool {
    let coords = |m: &Mat<F::Elem>| -> Vec<F::Elem> {
        m.entries().iter().flat_map(|a| f.fixed_coords(a)).collect()
    };
    let target = coords(h);
    if space.is_empty() {
        return target.iter().all(|a| f.is_zero(a));
    }
    let cols: Vec<Vec<F::Elem>> = space.iter().map(coords).collect();
    Mat::from_columns(target.len(), &cols)
        .solve(f, &target)
        .is_some()
}

/// Searches `E`-combinations of `space` for one with `det ≠ 0`:
/// exhaustively when the space has at most `2^20` elements, otherwise a
/// deterministic sweep followed by seeded random draws.
pub fn find_nondegenerate<F: Field>(
    f: &F,
    space: &[Mat<F::Elem>],
    cfg: &SearchConfig,
) -> SearchOutcome<Mat<F::Elem>> {
    if space.is_empty() {
        return SearchOutcome::Exhausted { tried: 0 };
    }
    let alphabets = vec![Alphabet::fixed(f); space.len()];
    search(f, &alphabets, cfg, |c| {
        let h = combine(f, space, c);
        h.is_invertible(f).then_some(h)
    })
}

/// `T` with ones on the diagonal and the subdiagonal.
pub fn lower_unipotent<F: Field>(f: &F, m: usize) -> Mat<F::Elem> {
    Mat::from_fn(m, m, |i, j| {
        if i == j || i == j + 1 {
            f.one()
        } else {
            f.zero()
        }
    })
}

/// Invariant hermitian form for [`lower_unipotent`] in characteristic 2.
///
/// Invariance forces `a_{i+1,j} = a_{i,j+1} + a_{i+1,j+1}` and zeros below
/// the anti-diagonal. The anti-diagonal is the constant `lambda`; each
/// earlier anti-diagonal is fixed by its first-row entry `a`, chosen so
/// that `a + a^c` balances the sum carried down the diagonal, which makes
/// the last entry equal `a^c`. `det H = lambda^m`.
pub fn unipotent_char2_form<F: Field>(
    f: &F,
    m: usize,
    lambda: &F::Elem,
) -> Result<FormCert<F::Elem>> {
    if f.characteristic() != 2 || f.involution_is_trivial() {
        return Err(Error::Precondition(
            "needs characteristic 2 and a non-trivial involution".into(),
        ));
    }
    if m == 0 || f.is_zero(lambda) || !f.is_fixed(lambda) {
        return Err(Error::Precondition(
            "needs m >= 1 and lambda in E \\ {0}".into(),
        ));
    }
    let w = f.special_element()?;
    let mut h = Mat::zeros(f, m, m);
    // 0-based anti-diagonal s holds entries with i + j = s; the top one is
    // s = m - 1
    for i in 0..m {
        h.set(i, m - 1 - i, lambda.clone());
    }
    for s in (0..m - 1).rev() {
        let mut carry = f.zero();
        for i in 0..s {
            carry = f.add(&carry, h.get(i + 1, s - i));
        }
        if !f.is_fixed(&carry) {
            return Err(Error::Internal("anti-diagonal defect left E".into()));
        }
        // a + a^c = carry, using w + w^c = 1
        let mut a = f.mul(&carry, &w);
        h.set(0, s, a.clone());
        for i in 0..s {
            a = f.add(&a, h.get(i + 1, s - i));
            h.set(i + 1, s - i - 1, a.clone());
        }
    }
    let t = lower_unipotent(f, m);
    FormCert::new(
        f,
        &t,
        h,
        FormKind::Hermitian,
        vec![FormMethod::UnipotentChar2],
    )
}

/// Invariant hermitian form for the block `diag(t, (t^c)^{-1})`,
/// `t = companion(g)`, as `[[0, A], [A*, 0]]` with `A t^c = (t^c)^t A`.
pub fn dual_pair_form<F: Field>(f: &F, g: &Poly<F::Elem>) -> Result<FormCert<F::Elem>> {
    if f.involution_is_trivial() {
        return Err(Error::Precondition("needs a non-trivial involution".into()));
    }
    let g = g.monic(f);
    if g.dual(f)? == g {
        return Err(Error::Precondition("g is self-dual".into()));
    }
    let t = Mat::companion(f, &g)?;
    let k = t.rows();
    let tc = t.conj(f);
    let a = intertwiner(f, &tc.transpose(), &tc)?;
    let mut h = Mat::zeros(f, 2 * k, 2 * k);
    h.set_block(0, k, &a);
    h.set_block(k, 0, &a.conj_transpose(f));
    let full = Mat::block_diag(f, &[t.clone(), conj_inverse(f, &t)?]);
    FormCert::new(
        f,
        &full,
        h,
        FormKind::Hermitian,
        vec![FormMethod::Hyperbolic],
    )
}

/// `A` with `C1* A C2 = A` for the pair of blocks `C1`, `C2` of `g`, `g*`.
fn hyperbolic_block<F: Field>(f: &F, c1: &Mat<F::Elem>, c2: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    intertwiner(f, &c1.conj_transpose(f).inverse(f)?, c2)
}

/// Hermitian form on `companion(p^d)` from the Toeplitz recurrence.
///
/// With `x_i = H(e_1, e_i)` and `y_i = x_i^c`, the entries above the
/// diagonal are `x_{j-i+1}`. The parameters are `x_1 ∈ E` and
/// `x_2, …, x_t` with `t = ⌊(k+1)/2⌋`; the remaining `x` follow from
/// `x_{k-i+1} = -(Σ_{j=i}^{k-1} d_j x_{j-i+1} + Σ_{j=0}^{i-1} d_j x^c_{i-j+1})`
/// solved for `i = ⌊k/2⌋, …, 1`. For even `k` the first step is the
/// semilinear equation `x + d_0 x^c = b`, whose solutions carry one extra
/// parameter from `E`.
fn recurrence_form<F: Field>(
    f: &F,
    fp: &Poly<F::Elem>,
    prime_power: Option<(&Poly<F::Elem>, usize)>,
    cfg: &SearchConfig,
) -> Result<Mat<F::Elem>> {
    let k = fp.degree().expect("nonconstant");
    let dc = fp.coeffs();
    let c = Mat::companion(f, fp)?;
    let t = k.div_ceil(2);
    let even = k % 2 == 0;
    let w = f.special_element()?;

    // x + d_0 x^c in E-coordinates of the basis {1, w}
    let semilinear = |x: &F::Elem| f.add(x, &f.mul(&dc[0], &f.conj(x)));
    let l_cols = vec![
        f.fixed_coords(&semilinear(&f.one())),
        f.fixed_coords(&semilinear(&w)),
    ];
    let l_mat = Mat::from_columns(2, &l_cols);
    let kernel: Option<F::Elem> = l_mat.nullspace(f).first().map(|v| f.from_fixed_coords(v));
    let extra = even && kernel.is_some();

    let mut alphabets = vec![Alphabet::fixed(f)];
    alphabets.extend(std::iter::repeat_n(Alphabet::full(f), t - 1));
    if extra {
        alphabets.push(Alphabet::fixed(f));
    }

    let build = |params: &[F::Elem]| -> Option<Mat<F::Elem>> {
        let mut x = vec![f.zero(); k + 1];
        x[1..=t].clone_from_slice(&params[..t]);
        for i in (1..=k / 2).rev() {
            let u = k - i + 1;
            let mut acc = f.zero();
            for j in i..k {
                acc = f.add(&acc, &f.mul(&dc[j], &x[j - i + 1]));
            }
            for j in 0..i {
                if i - j + 1 == u {
                    continue;
                }
                acc = f.add(&acc, &f.mul(&dc[j], &f.conj(&x[i - j + 1])));
            }
            let rhs = f.neg(&acc);
            x[u] = if even && i == k / 2 {
                let sol = l_mat.solve(f, &f.fixed_coords(&rhs))?;
                let mut v = f.from_fixed_coords(&sol);
                if let (true, Some(z)) = (extra, &kernel) {
                    v = f.add(&v, &f.mul(&params[t], z));
                }
                v
            } else {
                rhs
            };
        }
        Some(Mat::from_fn(k, k, |r, col| {
            if col >= r {
                x[col - r + 1].clone()
            } else {
                f.conj(&x[r - col + 1])
            }
        }))
    };

    // for f = p^d, forms whose t-th row survives p(T)^{d-1} come first
    if let Some((p, d)) = prime_power {
        let probe = c.eval_poly(f, &p.pow(f, d - 1))?.transpose();
        let guided = search(f, &alphabets, cfg, |params| {
            let h = build(params)?;
            let moved = probe.mul_vec(f, h.row(t - 1));
            (moved.iter().any(|a| !f.is_zero(a)) && h.is_invertible(f)).then_some(h)
        });
        if let SearchOutcome::Found(h) = guided {
            return Ok(h);
        }
    }
    search(f, &alphabets, cfg, |params| {
        build(params).filter(|h| h.is_invertible(f))
    })
    .found()
    .ok_or_else(|| Error::Internal("recurrence search found no nondegenerate form".into()))
}

/// Invariant nondegenerate hermitian form for `companion(g)`, where `g` is
/// self-dual and not a power of `x ± 1`.
pub fn cyclic_selfdual_form<F: Field>(
    f: &F,
    g: &Poly<F::Elem>,
    cfg: &SearchConfig,
) -> Result<FormCert<F::Elem>> {
    if f.involution_is_trivial() {
        return Err(Error::Precondition("needs a non-trivial involution".into()));
    }
    let g = g.monic(f);
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::Precondition("g must be nonconstant".into()));
    }
    match g.self_duality(f) {
        SelfDuality::EqualsDual => {}
        SelfDuality::PowerOfXPlusMinusOne => {
            return Err(Error::Precondition("g is a power of x ± 1".into()))
        }
        _ => {
            return Err(Error::Precondition(format!(
                "{} is not self-dual",
                g.format(f)
            )))
        }
    }
    let fac = factor_any(f, &g)?;
    let prime_power = match fac.factors.as_slice() {
        [(p, d)] => Some((p, *d)),
        _ => None,
    };
    let h = recurrence_form(f, &g, prime_power, cfg)?;
    let t = Mat::companion(f, &g)?;
    FormCert::new(
        f,
        &t,
        h,
        FormKind::Hermitian,
        vec![FormMethod::CyclicRecurrence],
    )
}

/// Hermitian form on a unipotent companion block `C`.
fn unipotent_block<F: Field>(
    f: &F,
    c: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<(Mat<F::Elem>, FormMethod)> {
    let m = c.rows();
    if f.characteristic() == 2 {
        let j = lower_unipotent(f, m);
        let hj = unipotent_char2_form(f, m, &f.one())?.h;
        // K^{-1} J K = C for the Krylov basis of e_1
        let mut e1 = vec![f.zero(); m];
        e1[0] = f.one();
        let k = krylov(f, &j, &e1);
        if k.inverse(f)?.mul(f, &j)?.mul(f, &k)? == *c {
            return Ok((
                k.conj_transpose(f).mul(f, &hj)?.mul(f, &k)?,
                FormMethod::UnipotentChar2,
            ));
        }
    }
    let space = generic_form_space(f, c, FormKind::Hermitian)?;
    let h = find_nondegenerate(f, &space, cfg)
        .found()
        .ok_or_else(|| Error::Internal("no nondegenerate form on a unipotent block".into()))?;
    Ok((h, FormMethod::Solver))
}

fn solver_form<F: Field>(f: &F, t: &Mat<F::Elem>, cfg: &SearchConfig) -> Result<FormCert<F::Elem>> {
    let space = generic_form_space(f, t, FormKind::Hermitian)?;
    match find_nondegenerate(f, &space, cfg) {
        SearchOutcome::Found(h) => {
            FormCert::new(f, t, h, FormKind::Hermitian, vec![FormMethod::Solver])
        }
        _ if !is_c_real(f, t)? => Err(Error::NotCReal {
            witness: "invariant factors of T and (T^c)^-1 differ".into(),
        }),
        _ => Err(Error::Internal(
            "no nondegenerate form found within the budget".into(),
        )),
    }
}

/// `T`-invariant nondegenerate hermitian form, assembled blockwise on the
/// primary decomposition and pulled back as `H = (P^{-1})* H_B P^{-1}`.
pub fn build_hermitian_form<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<FormCert<F::Elem>> {
    if f.involution_is_trivial() {
        return Err(Error::Precondition(
            "hermitian forms need a non-trivial involution".into(),
        ));
    }
    require_invertible(f, t)?;
    let dec = match primary_decomposition(f, t) {
        Ok(dec) => dec,
        Err(Error::FactorizationUnsupported(_)) => return solver_form(f, t, cfg),
        Err(e) => return Err(e),
    };
    pair_divisors(f, &dec.divisors)?;
    let n = t.rows();
    let b = dec.block_matrix(f);
    let mut hb = Mat::zeros(f, n, n);
    let mut methods = Vec::new();
    let mut used = vec![false; dec.blocks.len()];
    for (i, blk) in dec.blocks.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let c1 = block_of(&b, blk);
        match divisor_role(f, &blk.p)? {
            DivisorRole::Unipotent => {
                let (h, m) = unipotent_block(f, &c1, cfg)?;
                hb.set_block(blk.offset, blk.offset, &h);
                methods.push(m);
            }
            DivisorRole::SelfDual => {
                let h = recurrence_form(f, &blk.power(f), Some((&blk.p, blk.k)), cfg)?;
                hb.set_block(blk.offset, blk.offset, &h);
                methods.push(FormMethod::CyclicRecurrence);
            }
            DivisorRole::Paired => {
                let dual = blk.p.dual(f)?;
                let j = (0..dec.blocks.len())
                    .find(|&j| !used[j] && dec.blocks[j].p == dual && dec.blocks[j].k == blk.k)
                    .ok_or_else(|| Error::Internal("dual block missing".into()))?;
                used[j] = true;
                let other = &dec.blocks[j];
                let a = hyperbolic_block(f, &c1, &block_of(&b, other))?;
                hb.set_block(blk.offset, other.offset, &a);
                hb.set_block(other.offset, blk.offset, &a.conj_transpose(f));
                methods.push(FormMethod::Hyperbolic);
            }
        }
    }
    let h = dec
        .p_inv
        .conj_transpose(f)
        .mul(f, &hb)?
        .mul(f, &dec.p_inv)?;
    let cert = FormCert::new(f, t, h, FormKind::Hermitian, methods)?;
    if !cert.nondegenerate {
        return Err(Error::Internal("assembled form is degenerate".into()));
    }
    Ok(cert)
}

/// `w H` for the hermitian certificate `H`, where `w^c = -w`.
pub fn skew_form<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<FormCert<F::Elem>> {
    if f.characteristic() == 2 {
        return Err(Error::Precondition(
            "skew-hermitian forms are hermitian in characteristic 2".into(),
        ));
    }
    let herm = build_hermitian_form(f, t, cfg)?;
    let w = f.special_element()?;
    let mut methods = herm.methods;
    methods.push(FormMethod::ScaledByW);
    FormCert::new(f, t, herm.h.scale(f, &w), FormKind::SkewHermitian, methods)
}

/// Nondegenerate symmetric bilinear form with `T^t H T = H`, from the
/// solver. Works for any involution, including the identity.
pub fn symmetric_form<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    cfg: &SearchConfig,
) -> Result<FormCert<F::Elem>> {
    require_invertible(f, t)?;
    let space = generic_form_space(f, t, FormKind::SymmetricBilinear)?;
    match find_nondegenerate(f, &space, cfg) {
        SearchOutcome::Found(h) => FormCert::new(
            f,
            t,
            h,
            FormKind::SymmetricBilinear,
            vec![FormMethod::Solver],
        ),
        SearchOutcome::Exhausted { .. } => Err(Error::Precondition(
            "T preserves no nondegenerate symmetric bilinear form".into(),
        )),
        SearchOutcome::GaveUp { tried } => Err(Error::CapExceeded {
            needed: u128::from(tried) + 1,
            cap: u128::from(cfg.cap),
        }),
    }
}

/// Whether `T` preserves the nondegenerate hermitian form `H`.
pub fn verify_unitary<F: Field>(f: &F, t: &Mat<F::Elem>, h: &Mat<F::Elem>) -> Result<bool> {
    if !h.is_square() || h.rows() != t.rows() || !t.is_square() {
        return Err(Error::Dimension(
            "T and H must be square of equal size".into(),
        ));
    }
    if h.conj_transpose(f) != *h {
        return Err(Error::Precondition("H is not hermitian".into()));
    }
    if !h.is_invertible(f) {
        return Err(Error::Precondition("H is degenerate".into()));
    }
    Ok(t.conj_transpose(f).mul(f, h)?.mul(f, t)? == *h)
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
    fn recurrence_on_x2_x_1_over_f4() {
        let f = f4();
        let g = Poly::parse(&f, "x^2+x+1").unwrap();
        let cert = cyclic_selfdual_form(&f, &g, &SearchConfig::default()).unwrap();
        assert_eq!(cert.h, Mat::parse(&f, "[[0,1];[1,0]]").unwrap());
    }

    #[test]
    fn recurrence_rejects_bad_input() {
        let f = f9();
        let cfg = SearchConfig::default();
        let not_self_dual = Poly::parse(&f, "x-(1+i)").unwrap();
        assert!(matches!(
            cyclic_selfdual_form(&f, &not_self_dual, &cfg),
            Err(Error::Precondition(_))
        ));
        let unipotent = Poly::parse(&f, "(x-1)^2").unwrap();
        assert!(matches!(
            cyclic_selfdual_form(&f, &unipotent, &cfg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unipotent_char2_examples() {
        let f = f4();
        let one = f.one();
        let h2 = unipotent_char2_form(&f, 2, &one).unwrap().h;
        assert_eq!(h2, Mat::parse(&f, "[[0,1];[1,0]]").unwrap());
        let h3 = unipotent_char2_form(&f, 3, &one).unwrap();
        assert_eq!(h3.h, Mat::parse(&f, "[[0,w,1];[w^2,1,0];[1,0,0]]").unwrap());
        assert_eq!(h3.h.det(&f).unwrap(), one);
        let h1 = unipotent_char2_form(&f, 1, &one).unwrap();
        assert_eq!(h1.h, Mat::identity(&f, 1));
        assert!(unipotent_char2_form(&f9(), 2, &1).is_err());
    }

    #[test]
    fn dual_pair_example() {
        let f = f9();
        let g = Poly::parse(&f, "x-(1+i)").unwrap();
        let cert = dual_pair_form(&f, &g).unwrap();
        assert_eq!(cert.h, Mat::parse(&f, "[[0,1];[1,0]]").unwrap());
    }

    #[test]
    fn generic_space_dimensions() {
        let f = f4();
        let id = Mat::identity(&f, 2);
        assert_eq!(
            generic_form_space(&f, &id, FormKind::Hermitian)
                .unwrap()
                .len(),
            4
        );
        let g = f9();
        let t = Mat::parse(&g, "[[1+i,0];[0,1+i]]").unwrap();
        let space = generic_form_space(&g, &t, FormKind::Hermitian).unwrap();
        assert!(find_nondegenerate(&g, &space, &SearchConfig::default())
            .found()
            .is_none());
        let q = FiniteField::new(2, 1, false).unwrap();
        let sym = generic_form_space(&q, &Mat::identity(&q, 1), FormKind::SymmetricBilinear);
        assert_eq!(sym.unwrap().len(), 1);
    }

    #[test]
    fn assembled_forms() {
        let f = f4();
        let cfg = SearchConfig::default();
        let c = Mat::parse(&f, "[[0,1];[1,1]]").unwrap();
        let cert = build_hermitian_form(&f, &c, &cfg).unwrap();
        assert!(cert.nondegenerate && verify_unitary(&f, &c, &cert.h).unwrap());
        let id = Mat::identity(&f, 3);
        assert!(build_hermitian_form(&f, &id, &cfg).unwrap().nondegenerate);
        let g = f9();
        let bad = Mat::parse(&g, "[[1+i,0];[0,1+i]]").unwrap();
        assert!(matches!(
            build_hermitian_form(&g, &bad, &cfg),
            Err(Error::NotCReal { .. })
        ));
    }

    #[test]
    fn skew_variant() {
        let g = f9();
        let cfg = SearchConfig::default();
        let t = Mat::parse(&g, "[[1+i,0];[0,2+2*i]]").unwrap();
        let cert = skew_form(&g, &t, &cfg).unwrap();
        assert_eq!(cert.kind, FormKind::SkewHermitian);
        assert!(cert.nondegenerate);
        assert!(skew_form(&f4(), &Mat::identity(&f4(), 2), &cfg).is_err());
    }

    #[test]
    fn gaussian_form_via_solver_or_blocks() {
        let g = GaussianRationals;
        let cfg = SearchConfig::default();
        let t = Mat::parse(&g, "[[1+i,0];[0,1/2+1/2*i]]").unwrap();
        let cert = build_hermitian_form(&g, &t, &cfg).unwrap();
        assert!(cert.nondegenerate);
    }
}

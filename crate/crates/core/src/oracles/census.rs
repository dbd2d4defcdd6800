use std::collections::BTreeSet;
use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{brute_conjugacy_in, brute_form_oracle, enumerate_gl, form_candidates, gl_order};
use crate::canonical::{elementary_divisors, invariant_factors};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::reality::{
    build_conjugator, build_hermitian_form, duality_pairing, is_c_real, FormKind, InvolutionStatus,
};
use crate::search::SearchConfig;

/// What a census iterates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    /// Every element of `GL_n(F_q)`.
    Elements,
    /// One companion-block representative per conjugacy class, weighted by
    /// the class size.
    Classes,
}

/// How census work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Work-stealing across a rayon pool.
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Execution::Parallel;
        #[cfg(not(feature = "parallel"))]
        return Execution::Sequential;
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CensusConfig {
    pub mode: CensusMode,
    /// `cap` bounds every single brute-force enumeration.
    pub search: SearchConfig,
    pub execution: Execution,
    /// Bound on the total number of brute-force conjugacy candidates.
    pub work_cap: u128,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            mode: CensusMode::Elements,
            search: SearchConfig::default(),
            execution: Execution::default(),
            work_cap: 1_000_000_000,
        }
    }
}

/// An input on which the independent checks did not all agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub matrix: String,
    pub is_c_real: bool,
    pub pairing: bool,
    pub hermitian_form: bool,
    pub brute_conjugacy: Option<bool>,
    pub brute_form: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub field: String,
    pub n: usize,
    pub mode: CensusMode,
    pub total_elements: u128,
    /// `Π (q^n - q^i)`.
    pub gl_order_formula: u128,
    pub total_classes: usize,
    pub c_real_elements: u128,
    pub c_real_classes: usize,
    /// c-real elements whose conjugator passed the exact check.
    pub conjugators_verified: u128,
    /// c-real elements for which an involutory conjugator was found.
    pub strongly_c_real_confirmed: u128,
    /// `strongly_c_real_confirmed / c_real_elements` in percent.
    pub involution_rate: f64,
    /// Representatives of c-real inputs with no involutory conjugator found.
    pub involution_failures: Vec<String>,
    /// Weight of those failures where exhaustive search of every conjugator
    /// proved that none squares to the identity.
    pub involution_failures_proven: u128,
    pub brute_conjugacy_checked: bool,
    pub brute_form_checked: bool,
    pub disagreements: Vec<Disagreement>,
    /// Invariant factors of every c-real class, sorted.
    pub c_real_invariant_factor_lists: Vec<Vec<String>>,
}

impl CensusReport {
    /// Fixed-width summary table.
    pub fn to_table(&self) -> String {
        let cols = [
            ("field", self.field.clone()),
            ("n", self.n.to_string()),
            (
                "mode",
                match self.mode {
                    CensusMode::Elements => "elements".into(),
                    CensusMode::Classes => "classes".into(),
                },
            ),
            ("elements", self.total_elements.to_string()),
            ("classes", self.total_classes.to_string()),
            ("c-real", self.c_real_elements.to_string()),
            ("c-real classes", self.c_real_classes.to_string()),
            ("S verified", self.conjugators_verified.to_string()),
            ("S^2 = I", self.strongly_c_real_confirmed.to_string()),
            ("involution %", format!("{:.2}", self.involution_rate)),
            ("disagreements", self.disagreements.len().to_string()),
        ];
        let widths: Vec<usize> = cols.iter().map(|(h, v)| h.len().max(v.len())).collect();
        let mut out = String::new();
        for header in [true, false] {
            let cells: Vec<String> = cols
                .iter()
                .zip(&widths)
                .map(|((h, v), w)| format!("{:<w$}", if header { *h } else { v.as_str() }, w = *w))
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        out
    }
}

/// `|C(T)|` for `T` whose elementary divisors over `F_q` are given as
/// `(deg p, partition of exponents)` per irreducible `p`:
/// `Π_p q_p^{Σ λ'_i²} Π_i Π_{j=1}^{m_i} (1 - q_p^{-j})` with `q_p = q^{deg p}`.
pub fn centralizer_order(q: u64, primes: &[(usize, Vec<usize>)]) -> u128 {
    let mut total: u128 = 1;
    for (deg, parts) in primes {
        let qp = u128::from(q).pow(*deg as u32);
        let longest = parts.iter().copied().max().unwrap_or(0);
        let conj_sq: usize = (1..=longest)
            .map(|i| parts.iter().filter(|&&k| k >= i).count().pow(2))
            .sum();
        let mut shift = 0usize;
        let mut product: u128 = 1;
        for i in 1..=longest {
            let m = parts.iter().filter(|&&k| k == i).count();
            for j in 1..=m {
                shift += j;
                product *= qp.pow(j as u32) - 1;
            }
        }
        total *= qp.pow((conj_sq - shift) as u32) * product;
    }
    total
}

fn monic_units<F: Field>(f: &F, max_degree: usize) -> Vec<Poly<F::Elem>> {
    let elems = f.elements().expect("finite");
    let q = elems.len();
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for mut idx in 0..q.pow(d as u32) {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(elems[idx % q].clone());
                idx /= q;
            }
            coeffs.push(f.one());
            if !f.is_zero(&coeffs[0]) {
                out.push(Poly::from_coeffs(f, coeffs));
            }
        }
    }
    out
}

/// Every divisibility chain `f_1 | … | f_r` of monic polynomials with
/// nonzero constant term and `Σ deg f_i = n`, i.e. the invariant factors of
/// each conjugacy class of `GL_n(F_q)`.
pub fn invariant_factor_chains<F: Field>(f: &F, n: usize) -> Result<Vec<Vec<Poly<F::Elem>>>> {
    if !f.is_finite() {
        return Err(Error::Precondition(
            "class enumeration needs a finite field".into(),
        ));
    }
    let polys = monic_units(f, n);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    chains_from(f, &polys, n, &mut stack, &mut out);
    Ok(out)
}

fn chains_from<F: Field>(
    f: &F,
    polys: &[Poly<F::Elem>],
    remaining: usize,
    stack: &mut Vec<Poly<F::Elem>>,
    out: &mut Vec<Vec<Poly<F::Elem>>>,
) {
    if remaining == 0 {
        out.push(stack.iter().rev().cloned().collect());
        return;
    }
    for g in polys {
        let d = g.degree().expect("nonconstant");
        if d > remaining || stack.last().is_some_and(|top| !g.divides(f, top)) {
            continue;
        }
        stack.push(g.clone());
        chains_from(f, polys, remaining - d, stack, out);
        stack.pop();
    }
}

struct Item<E> {
    t: Mat<E>,
    weight: u128,
    /// Invariant factors expected by construction (class mode).
    chain: Option<Vec<Poly<E>>>,
}

struct Outcome {
    weight: u128,
    c_real: bool,
    invariants: Vec<String>,
    conj_ok: bool,
    involutory: bool,
    /// No conjugator at all is an involution.
    involution_impossible: bool,
    matrix: String,
    disagreement: Option<Disagreement>,
}

fn analyse<F: Field>(
    f: &F,
    item: &Item<F::Elem>,
    group: Option<&[Mat<F::Elem>]>,
    brute_form: bool,
    cfg: &SearchConfig,
) -> Outcome {
    let t = &item.t;
    let matrix = t.format(f);
    let mut notes: Vec<String> = Vec::new();
    let c_real = is_c_real(f, t).unwrap_or_else(|e| {
        notes.push(format!("is_c_real: {e}"));
        false
    });
    let inv: Vec<Poly<F::Elem>> = invariant_factors(f, t).unwrap_or_default();
    if let Some(chain) = &item.chain {
        if *chain != inv {
            notes.push("representative has unexpected invariant factors".into());
        }
    }
    let pairing = match duality_pairing(f, t) {
        Ok(_) => true,
        Err(Error::NotCReal { .. }) => false,
        Err(e) => {
            notes.push(format!("pairing: {e}"));
            false
        }
    };
    let hermitian_form = match build_hermitian_form(f, t, cfg) {
        Ok(cert) => cert.nondegenerate && cert.check(f, t).is_ok(),
        Err(Error::NotCReal { .. }) => false,
        Err(e) => {
            notes.push(format!("form: {e}"));
            false
        }
    };
    let brute_conjugacy = group.map(|g| {
        brute_conjugacy_in(f, g, t)
            .map(|x| x.is_some())
            .unwrap_or(false)
    });
    let brute_form = brute_form.then(|| {
        brute_form_oracle(f, t, FormKind::Hermitian, cfg.cap)
            .map(|h| h.is_some())
            .unwrap_or_else(|e| {
                notes.push(format!("brute form: {e}"));
                false
            })
    });
    let (mut conj_ok, mut involutory, mut involution_impossible) = (false, false, false);
    if c_real {
        match build_conjugator(f, t, cfg) {
            Ok(cert) => {
                conj_ok = cert.check(f, t).is_ok();
                involutory = conj_ok && cert.is_involution;
                involution_impossible = matches!(
                    cert.involution,
                    InvolutionStatus::NotFound {
                        exhaustive: true,
                        ..
                    }
                );
            }
            Err(e) => notes.push(format!("conjugator: {e}")),
        }
        if !conj_ok {
            notes.push("conjugator failed verification".into());
        }
    }
    let agree = pairing == c_real
        && hermitian_form == c_real
        && brute_conjugacy.is_none_or(|b| b == c_real)
        && brute_form.is_none_or(|b| b == c_real);
    let disagreement = (!agree || !notes.is_empty()).then(|| Disagreement {
        matrix: matrix.clone(),
        is_c_real: c_real,
        pairing,
        hermitian_form,
        brute_conjugacy,
        brute_form,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    });
    Outcome {
        weight: item.weight,
        c_real,
        invariants: inv.iter().map(|p| p.format(f)).collect(),
        conj_ok,
        involutory,
        involution_impossible,
        matrix,
        disagreement,
    }
}

fn run_all<T: Sync, R: Send>(
    items: &[T],
    execution: Execution,
    op: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    match execution {
        Execution::Sequential => items.iter().map(op).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(op).collect(),
    }
}

fn class_items<F: Field>(f: &F, n: usize, q: u64) -> Result<Vec<Item<F::Elem>>> {
    let mut items = Vec::new();
    let group = gl_order(q, n);
    for chain in invariant_factor_chains(f, n)? {
        let blocks = chain
            .iter()
            .map(|p| Mat::companion(f, p))
            .collect::<Result<Vec<_>>>()?;
        let t = Mat::block_diag(f, &blocks);
        // exponents of each irreducible p form a partition
        let mut keyed: Vec<(Poly<F::Elem>, usize, Vec<usize>)> = Vec::new();
        for d in elementary_divisors(f, &t)? {
            let deg = d.p.degree().expect("nonconstant");
            match keyed.iter_mut().find(|(p, _, _)| *p == d.p) {
                Some((_, _, parts)) => parts.extend(std::iter::repeat_n(d.k, d.mult)),
                None => keyed.push((d.p.clone(), deg, vec![d.k; d.mult])),
            }
        }
        let primes: Vec<(usize, Vec<usize>)> = keyed
            .into_iter()
            .map(|(_, deg, parts)| (deg, parts))
            .collect();
        let centralizer = centralizer_order(q, &primes);
        if !group.is_multiple_of(centralizer) {
            return Err(Error::Internal(
                "centralizer order does not divide |GL_n|".into(),
            ));
        }
        items.push(Item {
            t,
            weight: group / centralizer,
            chain: Some(chain),
        });
    }
    Ok(items)
}

/// Classifies every element (or every class) of `GL_n(F_q)` and
/// cross-checks the decision, the pairing, the hermitian form construction
/// and, where affordable, both brute-force oracles.
pub fn census<F: Field>(f: &F, n: usize, cfg: &CensusConfig) -> Result<CensusReport> {
    let q = f
        .order()
        .ok_or_else(|| Error::Precondition("census needs a finite field".into()))?;
    if f.involution_is_trivial() {
        return Err(Error::Precondition(
            "census needs a non-trivial involution".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Dimension("n must be at least 1".into()));
    }
    let cap = cfg.search.cap;
    let order = gl_order(q, n);
    let items: Vec<Item<F::Elem>> = match cfg.mode {
        CensusMode::Elements => {
            if order.saturating_mul(order) > cfg.work_cap {
                return Err(Error::CapExceeded {
                    needed: order.saturating_mul(order),
                    cap: cfg.work_cap,
                });
            }
            enumerate_gl(f, n, cap)?
                .into_iter()
                .map(|t| Item {
                    t,
                    weight: 1,
                    chain: None,
                })
                .collect()
        }
        CensusMode::Classes => class_items(f, n, q)?,
    };
    let brute_conj =
        order <= u128::from(cap) && order.saturating_mul(items.len() as u128) <= cfg.work_cap;
    let group = if brute_conj {
        Some(enumerate_gl(f, n, cap)?)
    } else {
        None
    };
    let brute_form = form_candidates(f, n, FormKind::Hermitian)? <= u128::from(cap);

    let outcomes = run_all(&items, cfg.execution, |item| {
        analyse(f, item, group.as_deref(), brute_form, &cfg.search)
    });

    let mut report = CensusReport {
        field: f.spec(),
        n,
        mode: cfg.mode,
        total_elements: 0,
        gl_order_formula: order,
        total_classes: 0,
        c_real_elements: 0,
        c_real_classes: 0,
        conjugators_verified: 0,
        strongly_c_real_confirmed: 0,
        involution_rate: 0.0,
        involution_failures: Vec::new(),
        involution_failures_proven: 0,
        brute_conjugacy_checked: brute_conj,
        brute_form_checked: brute_form,
        disagreements: Vec::new(),
        c_real_invariant_factor_lists: Vec::new(),
    };
    let mut classes: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut real_classes: BTreeSet<Vec<String>> = BTreeSet::new();
    for o in outcomes {
        report.total_elements += o.weight;
        classes.insert(o.invariants.clone());
        if o.c_real {
            report.c_real_elements += o.weight;
            real_classes.insert(o.invariants);
            if o.conj_ok {
                report.conjugators_verified += o.weight;
            }
            if o.involutory {
                report.strongly_c_real_confirmed += o.weight;
            } else {
                report.involution_failures.push(o.matrix);
                if o.involution_impossible {
                    report.involution_failures_proven += o.weight;
                }
            }
        }
        report.disagreements.extend(o.disagreement);
    }
    if report.total_elements != order {
        report.disagreements.push(Disagreement {
            matrix: String::new(),
            is_c_real: false,
            pairing: false,
            hermitian_form: false,
            brute_conjugacy: None,
            brute_form: None,
            note: Some(format!(
                "enumerated {} elements but |GL_n| = {order}",
                report.total_elements
            )),
        });
    }
    report.total_classes = classes.len();
    report.c_real_classes = real_classes.len();
    report.involution_rate = if report.c_real_elements == 0 {
        100.0
    } else {
        100.0 * report.strongly_c_real_confirmed as f64 / report.c_real_elements as f64
    };
    report.c_real_invariant_factor_lists = real_classes.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    #[test]
    fn centralizer_orders() {
        // scalar, regular unipotent and regular semisimple classes of GL_2
        assert_eq!(centralizer_order(3, &[(1, vec![1, 1])]), gl_order(3, 2));
        assert_eq!(centralizer_order(3, &[(1, vec![2])]), 3 * 2);
        assert_eq!(centralizer_order(3, &[(1, vec![1]), (1, vec![1])]), 4);
        assert_eq!(centralizer_order(3, &[(2, vec![1])]), 8);
    }

    #[test]
    fn chains_cover_gl2_f4() {
        let f = FiniteField::new(2, 2, true).unwrap();
        let chains = invariant_factor_chains(&f, 2).unwrap();
        // q^2 - 1 classes in GL_2(F_q)
        assert_eq!(chains.len(), 15);
    }

    #[test]
    fn gl1_f4_census() {
        let f = FiniteField::new(2, 2, true).unwrap();
        let r = census(&f, 1, &CensusConfig::default()).unwrap();
        assert_eq!(r.total_elements, 3);
        // a = (a^c)^{-1} means a^3 = 1, true for all of F4^*
        assert_eq!(r.c_real_elements, 3);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert!(r.to_table().contains("F4"));
    }

    #[test]
    fn class_and_element_modes_agree_on_gl2_f4() {
        let f = FiniteField::new(2, 2, true).unwrap();
        let el = census(&f, 2, &CensusConfig::default()).unwrap();
        let cl = census(
            &f,
            2,
            &CensusConfig {
                mode: CensusMode::Classes,
                ..CensusConfig::default()
            },
        )
        .unwrap();
        assert_eq!(el.total_elements, 180);
        assert_eq!(cl.total_elements, 180);
        assert_eq!(el.c_real_elements, cl.c_real_elements);
        assert_eq!(
            el.c_real_invariant_factor_lists,
            cl.c_real_invariant_factor_lists
        );
        assert!(el.disagreements.is_empty(), "{:?}", el.disagreements);
        assert!(cl.disagreements.is_empty(), "{:?}", cl.disagreements);
    }
}

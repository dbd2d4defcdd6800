//! Factorization into monic irreducibles.
//!
//! Finite fields go through squarefree → distinct-degree → equal-degree
//! (Cantor–Zassenhaus) splitting. The equal-degree step tries splitting
//! polynomials in the documented element order first and only falls back to
//! seeded random trials after [`DETERMINISTIC_TRIALS`] misses, so output is
//! reproducible. Characteristic-zero fields only split polynomials of degree
//! at most two, through exact square roots.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

const DETERMINISTIC_TRIALS: u64 = 256;
const RANDOM_TRIALS: u64 = 4096;
const SPLIT_SEED: u64 = 0x5eed_f00d;

/// `unit · Π factor^exponent`, factors monic irreducible, pairwise distinct,
/// sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, usize)>,
}

impl<E: Clone + Eq + Ord> Factorization<E> {
    pub fn reconstruct<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        self.factors
            .iter()
            .fold(Poly::constant(f, self.unit.clone()), |acc, (p, k)| {
                acc.mul(f, &p.pow(f, *k))
            })
    }
}

/// Complete factorization over a finite field.
pub fn factor<F: Field>(f: &F, poly: &Poly<F::Elem>) -> Result<Factorization<F::Elem>> {
    if !f.is_finite() {
        return Err(Error::FactorizationUnsupported(f.spec()));
    }
    let unit = poly
        .lead()
        .cloned()
        .ok_or_else(|| Error::Precondition("cannot factor the zero polynomial".into()))?;
    let monic = poly.monic(f);
    let mut acc: BTreeMap<usize, Vec<(Poly<F::Elem>, usize)>> = BTreeMap::new();
    for (part, mult) in squarefree(f, &monic) {
        for (g, d) in distinct_degree(f, &part)? {
            for irr in equal_degree(f, &g, d)? {
                acc.entry(irr.degree().unwrap())
                    .or_default()
                    .push((irr, mult));
            }
        }
    }
    Ok(Factorization {
        unit,
        factors: merge(f, acc),
    })
}

/// [`factor`] for finite fields; over `Q` and `Q(i)` only polynomials of
/// degree ≤ 2 are split (via exact square roots).
pub fn factor_any<F: Field>(f: &F, poly: &Poly<F::Elem>) -> Result<Factorization<F::Elem>> {
    if f.is_finite() {
        return factor(f, poly);
    }
    let unit = poly
        .lead()
        .cloned()
        .ok_or_else(|| Error::Precondition("cannot factor the zero polynomial".into()))?;
    let g = poly.monic(f);
    let mut acc: BTreeMap<usize, Vec<(Poly<F::Elem>, usize)>> = BTreeMap::new();
    match g.degree() {
        Some(0) => {}
        Some(1) => acc.entry(1).or_default().push((g, 1)),
        Some(2) => {
            // x² + bx + c: roots (-b ± sqrt(b² - 4c)) / 2 in characteristic 0.
            let (c, b) = (g.coeff(f, 0), g.coeff(f, 1));
            let disc = f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &c));
            match f.sqrt(&disc) {
                Some(r) => {
                    let two = f.from_i64(2);
                    let r1 = f.div(&f.add(&f.neg(&b), &r), &two)?;
                    let r2 = f.div(&f.sub(&f.neg(&b), &r), &two)?;
                    for root in [r1, r2] {
                        acc.entry(1).or_default().push((Poly::linear(f, &root), 1));
                    }
                }
                None => acc.entry(2).or_default().push((g, 1)),
            }
        }
        _ => return Err(Error::FactorizationUnsupported(f.spec())),
    }
    Ok(Factorization {
        unit,
        factors: merge(f, acc),
    })
}

fn merge<F: Field>(
    _f: &F,
    acc: BTreeMap<usize, Vec<(Poly<F::Elem>, usize)>>,
) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out: Vec<(Poly<F::Elem>, usize)> = Vec::new();
    for (_, mut group) in acc {
        group.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        for (p, k) in group {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += k,
                _ => out.push((p, k)),
            }
        }
    }
    out
}

/// `a ↦ a^{1/p}` on a finite field of characteristic `p`.
fn pth_root_elem<F: Field>(f: &F, a: &F::Elem) -> F::Elem {
    let q = f.order().expect("finite field") as u128;
    f.pow(a, q / f.characteristic() as u128)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `poly = Π g_i^i`, the `g_i` squarefree and pairwise coprime.
fn squarefree<F: Field>(f: &F, poly: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let p = f.characteristic() as usize;
    let mut out = Vec::new();
    if poly.is_constant() {
        return out;
    }
    let one = Poly::one(f);
    let deriv = poly.derivative(f);
    let mut c = if deriv.is_zero() {
        poly.clone()
    } else {
        let mut c = poly.gcd(f, &deriv);
        let mut w = poly.exact_div(f, &c).expect("gcd divides");
        let mut i = 1;
        while w != one {
            let y = w.gcd(f, &c);
            let fac = w.exact_div(f, &y).expect("gcd divides");
            if fac != one {
                out.push((fac, i));
            }
            c = c.exact_div(f, &y).expect("gcd divides");
            w = y;
            i += 1;
        }
        c
    };
    if c != one {
        // c is a p-th power.
        let root_coeffs: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| pth_root_elem(f, a))
            .collect();
        c = Poly::from_coeffs(f, root_coeffs);
        for (g, m) in squarefree(f, &c) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into `(product of all irreducible
/// factors of degree d, d)`.
fn distinct_degree<F: Field>(f: &F, poly: &Poly<F::Elem>) -> Result<Vec<(Poly<F::Elem>, usize)>> {
    let q = f.order().expect("finite field") as u128;
    let x = Poly::x(f);
    let one = Poly::one(f);
    let mut out = Vec::new();
    let mut g = poly.clone();
    let mut h = x.rem(f, &g)?;
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(f, q, &g)?;
        let common = g.gcd(f, &h.sub(f, &x));
        if common != one {
            g = g.exact_div(f, &common).expect("gcd divides");
            h = h.rem(f, &g)?;
            out.push((common, d));
        }
        d += 1;
    }
    if let Some(deg) = g.degree().filter(|deg| *deg > 0) {
        out.push((g, deg));
    }
    Ok(out)
}

/// Splitting polynomial candidates in documented order: the polynomial whose
/// coefficient vector has mixed-radix index `k` over the element order.
fn nth_candidate<F: Field>(f: &F, mut k: u64, len: usize) -> Poly<F::Elem> {
    let q = f.order().expect("finite field");
    let mut coeffs = Vec::with_capacity(len);
    for _ in 0..len {
        coeffs.push(f.element_at(k % q).expect("index below order"));
        k /= q;
    }
    Poly::from_coeffs(f, coeffs)
}

/// Try to split `g` (product of irreducibles of degree `d`) with the
/// candidate `a`; returns a proper factor on success.
fn try_split<F: Field>(
    f: &F,
    g: &Poly<F::Elem>,
    a: &Poly<F::Elem>,
    d: usize,
) -> Result<Option<Poly<F::Elem>>> {
    if a.is_constant() {
        return Ok(None);
    }
    let q = f.order().expect("finite field") as u128;
    let p = f.characteristic() as u128;
    let one = Poly::one(f);
    let b = if p == 2 {
        // Absolute trace a + a^2 + … + a^{2^{kd-1}}.
        let k = q.trailing_zeros() as usize;
        let mut term = a.rem(f, g)?;
        let mut acc = term.clone();
        for _ in 1..k * d {
            term = term.mul(f, &term).rem(f, g)?;
            acc = acc.add(f, &term);
        }
        acc
    } else {
        // a^{(q^d - 1)/2} = (Π_j a^{q^j})^{(q-1)/2}
        let mut frob = a.rem(f, g)?;
        let mut prod = frob.clone();
        for _ in 1..d {
            frob = frob.powmod(f, q, g)?;
            prod = prod.mul(f, &frob).rem(f, g)?;
        }
        prod.powmod(f, (q - 1) / 2, g)?.sub(f, &one)
    };
    let common = g.gcd(f, &b);
    let deg = common.degree().unwrap_or(0);
    Ok((deg > 0 && deg < g.degree().unwrap()).then_some(common))
}

fn equal_degree<F: Field>(f: &F, g: &Poly<F::Elem>, d: usize) -> Result<Vec<Poly<F::Elem>>> {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == d {
        return Ok(vec![g.clone()]);
    }
    let q = f.order().expect("finite field");
    let mut found = None;
    let budget = DETERMINISTIC_TRIALS.min(q.saturating_pow(n as u32));
    for k in 1..budget {
        if let Some(h) = try_split(f, g, &nth_candidate(f, k, n), d)? {
            found = Some(h);
            break;
        }
    }
    if found.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        for _ in 0..RANDOM_TRIALS {
            let coeffs = (0..n).map(|_| f.random(&mut rng)).collect();
            if let Some(h) = try_split(f, g, &Poly::from_coeffs(f, coeffs), d)? {
                found = Some(h);
                break;
            }
        }
    }
    let h = found.ok_or_else(|| Error::Internal("equal-degree splitting stalled".into()))?;
    let rest = g.exact_div(f, &h).expect("split factor divides");
    let mut out = equal_degree(f, &h, d)?;
    out.extend(equal_degree(f, &rest, d)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, GaussianRationals, Rationals};

    fn p<F: Field>(f: &F, s: &str) -> Poly<F::Elem> {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let f2 = FiniteField::new(2, 1, false).unwrap();
        let fac = factor(&f2, &p(&f2, "x^2+x+1")).unwrap();
        assert_eq!(fac.factors, vec![(p(&f2, "x^2+x+1"), 1)]);
    }

    #[test]
    fn cube_roots_of_unity_split_over_f4() {
        let f4 = FiniteField::new(2, 2, true).unwrap();
        let fac = factor(&f4, &p(&f4, "x^2+x+1")).unwrap();
        assert_eq!(fac.factors, vec![(p(&f4, "x+w"), 1), (p(&f4, "x+w^2"), 1)]);
    }

    #[test]
    fn repeated_factor_in_char_two() {
        let f2 = FiniteField::new(2, 1, false).unwrap();
        let fac = factor(&f2, &p(&f2, "(x-1)^4")).unwrap();
        assert_eq!(fac.factors, vec![(p(&f2, "x+1"), 4)]);
    }

    #[test]
    fn mixed_multiplicities_reconstruct() {
        let f9 = FiniteField::new(3, 2, true).unwrap();
        let poly = p(&f9, "2*(x+i)^3*(x^2+x+2)*(x-1)^5*(x^3 + x + i)");
        let fac = factor(&f9, &poly).unwrap();
        assert_eq!(fac.reconstruct(&f9), poly);
        for (g, _) in &fac.factors {
            assert!(g.is_monic(&f9));
        }
        let f16 = FiniteField::new(2, 4, true).unwrap();
        let poly = p(&f16, "(x^4+x+1)^2*(x^3+w)*(x+w^3)^3");
        assert_eq!(factor(&f16, &poly).unwrap().reconstruct(&f16), poly);
    }

    #[test]
    fn unsupported_over_rationals() {
        assert!(matches!(
            factor(&Rationals, &p(&Rationals, "x^2-1")),
            Err(Error::FactorizationUnsupported(_))
        ));
    }

    #[test]
    fn small_degree_over_char_zero() {
        let q = Rationals;
        let fac = factor_any(&q, &p(&q, "x^2-1")).unwrap();
        assert_eq!(fac.factors, vec![(p(&q, "x-1"), 1), (p(&q, "x+1"), 1)]);
        let fac = factor_any(&q, &p(&q, "x^2+1")).unwrap();
        assert_eq!(fac.factors, vec![(p(&q, "x^2+1"), 1)]);
        let g = GaussianRationals;
        let fac = factor_any(&g, &p(&g, "x^2+1")).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let fac = factor_any(&g, &p(&g, "(x-1-i)^2")).unwrap();
        assert_eq!(fac.factors, vec![(p(&g, "x-1-i"), 2)]);
        assert!(factor_any(&g, &p(&g, "x^3-2")).is_err());
    }
}

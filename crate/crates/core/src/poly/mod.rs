//! Univariate polynomials over a [`Field`], the dual-polynomial operator and
//! factorization.

mod factor;
mod parse;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;

pub use factor::{factor, factor_any, Factorization};

/// Coefficients `d_0, …, d_deg`, low → high, with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

/// Outcome of the extended self-duality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfDuality {
    /// `f` is a power of `x - 1` or `x + 1`.
    PowerOfXPlusMinusOne,
    /// `f = f*`.
    EqualsDual,
    NotSelfDual,
    /// `f(0) = 0` or `f` constant: the dual is undefined.
    Degenerate,
}

impl SelfDuality {
    pub fn is_self_dual(self) -> bool {
        matches!(
            self,
            SelfDuality::PowerOfXPlusMinusOne | SelfDuality::EqualsDual
        )
    }
}

impl<E: Clone + Eq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    /// `x`.
    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Poly {
            coeffs: vec![f.zero(), f.one()],
        }
    }

    /// `x - a`.
    pub fn linear<F: Field<Elem = E>>(f: &F, a: &E) -> Self {
        Poly {
            coeffs: vec![f.neg(a), f.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.lead().is_some_and(|c| f.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(&self.coeff(f, i), &other.coeff(f, i)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Self {
        (0..k).fold(Self::one(f), |acc, _| acc.mul(f, self))
    }

    /// Quotient and remainder.
    pub fn divmod<F: Field<Elem = E>>(&self, f: &F, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f
            .inv(divisor.lead().unwrap())
            .ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|d| *d >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![f.zero(); sd - dd + 1];
        for top in (dd..=sd).rev() {
            let c = f.mul(&rem[top], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (k, b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, b));
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(f, divisor)?.1)
    }

    /// `Some(q)` when `divisor` divides `self` exactly.
    pub fn exact_div<F: Field<Elem = E>>(&self, f: &F, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divmod(f, divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        other.rem(f, self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(f, &f.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn lcm<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(f, other);
        self.mul(f, other)
            .exact_div(f, &g)
            .expect("gcd divides the product")
            .monic(f)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    /// `self^e mod m`.
    pub fn powmod<F: Field<Elem = E>>(&self, f: &F, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(f, m)?;
        let mut acc = Self::one(f).rem(f, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
            base = base.mul(f, &base).rem(f, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Coefficientwise involution `f^c`.
    pub fn conj<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| f.conj(c)).collect(),
        }
    }

    /// The dual `f*(x) = (f(0)^c)^{-1} x^d f^c(x^{-1})`.
    ///
    /// Non-monic input is normalized first; the output is always monic.
    pub fn dual<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        if self.degree().is_none() {
            return Err(Error::ZeroConstantTerm);
        }
        let g = self.monic(f);
        let a0c = f.conj(&g.coeffs[0]);
        let inv = f.inv(&a0c).ok_or(Error::ZeroConstantTerm)?;
        let coeffs = g
            .coeffs
            .iter()
            .rev()
            .map(|c| f.mul(&f.conj(c), &inv))
            .collect();
        Ok(Self::from_coeffs(f, coeffs).monic(f))
    }

    /// `f = (x - a)^k` for some `k ≥ 1`.
    pub fn is_power_of_linear<F: Field<Elem = E>>(&self, f: &F, a: &E) -> bool {
        let Some(k) = self.degree().filter(|d| *d >= 1) else {
            return false;
        };
        self.monic(f) == Self::linear(f, a).pow(f, k) && self.is_monic(f)
    }

    /// Extended self-duality: powers of `x ± 1` count as self-dual.
    pub fn self_duality<F: Field<Elem = E>>(&self, f: &F) -> SelfDuality {
        if self.is_constant() || f.is_zero(&self.coeffs[0]) {
            return SelfDuality::Degenerate;
        }
        let one = f.one();
        if self.is_power_of_linear(f, &one) || self.is_power_of_linear(f, &f.neg(&one)) {
            return SelfDuality::PowerOfXPlusMinusOne;
        }
        match self.dual(f) {
            Ok(d) if d == self.monic(f) => SelfDuality::EqualsDual,
            Ok(_) => SelfDuality::NotSelfDual,
            Err(_) => SelfDuality::Degenerate,
        }
    }

    pub fn is_self_dual<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.self_duality(f).is_self_dual()
    }

    /// The documented order on polynomials: by degree, then coefficients
    /// from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering
    where
        E: Ord,
    {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Canonical text, highest degree first: `x^3 + (1+w)*x + 2`.
    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let coeff = f.format(c);
            let atomic = !coeff[1..].contains(['+', '-', '/', '*']) && !coeff.starts_with('-');
            let coeff = if atomic { coeff } else { format!("({coeff})") };
            parts.push(match (k, f.is_one(c)) {
                (0, _) => coeff,
                (_, true) => mono,
                _ => format!("{coeff}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self> {
        parse::parse_poly(f, s)
    }
}

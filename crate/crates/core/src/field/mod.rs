//! Fields with involution.
//!
//! Every supported field `F` carries an involution `c` (possibly the identity)
//! and a fixed field `E = {a : a^c = a}`. When `c` is non-trivial, `F` is a
//! quadratic extension of `E` and [`Field::special_element`] returns the
//! distinguished generator `w`: in characteristic 2 it satisfies
//! `1 + w + w^c = 0`, otherwise `w^c = -w`.
//!
//! Elements are plain values; all arithmetic goes through the field context so
//! that finite fields can share lookup tables.

mod finite;
mod literal;
mod rational;

use std::fmt;
use std::hash::Hash;

use rand::RngCore;

use crate::error::{Error, Result};

pub use finite::FiniteField;
pub use rational::{GaussRat, GaussianRationals, Rationals};

pub(crate) use literal::parse_linear_literal;

/// Arithmetic in a field with a fixed involution.
///
/// `Ord` on elements is the documented total order used for every
/// "smallest"/deterministic choice: for finite fields it is the order of the
/// canonical index (coordinates read from the highest power of `w` down), for
/// `Q` the numeric order, for `Q(i)` lexicographic on `(re, im)`.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The involution `a ↦ a^c`.
    fn conj(&self, a: &Self::Elem) -> Self::Elem;

    /// 0 for characteristic-zero fields.
    fn characteristic(&self) -> u64;
    fn involution_is_trivial(&self) -> bool;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The element with the given position in the documented order.
    /// Only meaningful for finite fields.
    fn element_at(&self, index: u64) -> Option<Self::Elem>;

    /// Field-spec string that reconstructs this context.
    fn spec(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// A uniformly random element for finite fields, a small random element
    /// otherwise.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Square root when one exists in the field. Only the characteristic-zero
    /// fields need it (quadratic splitting); finite fields go through full
    /// factorization instead.
    fn sqrt(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// The distinguished generator of `F` over `E`.
    fn special_element(&self) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_fixed(&self, a: &Self::Elem) -> bool {
        self.conj(a) == *a
    }

    /// `a · a^c`, which always lies in `E`.
    fn norm(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.conj(a))
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements in the documented order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let q = self.order()?;
        Some(
            (0..q)
                .map(|i| self.element_at(i).expect("index below order"))
                .collect(),
        )
    }

    /// Elements of the fixed field `E`, in the documented order.
    fn fixed_elements(&self) -> Option<Vec<Self::Elem>> {
        Some(
            self.elements()?
                .into_iter()
                .filter(|a| self.is_fixed(a))
                .collect(),
        )
    }

    /// Dimension of `F` over `E`: 1 when the involution is trivial, else 2.
    fn degree_over_fixed(&self) -> usize {
        if self.involution_is_trivial() {
            1
        } else {
            2
        }
    }

    /// Coordinates of `a` over `E` in the basis `{1, w}` (just `[a]` when the
    /// involution is trivial).
    fn fixed_coords(&self, a: &Self::Elem) -> Vec<Self::Elem> {
        if self.involution_is_trivial() {
            return vec![a.clone()];
        }
        let w = self
            .special_element()
            .expect("non-trivial involution has w");
        let gap = self.sub(&w, &self.conj(&w));
        // a = u + v w  and  a^c = u + v w^c
        let v = self
            .div(&self.sub(a, &self.conj(a)), &gap)
            .expect("w differs from w^c");
        let u = self.sub(a, &self.mul(&v, &w));
        vec![u, v]
    }

    /// Inverse of [`Field::fixed_coords`].
    fn from_fixed_coords(&self, coords: &[Self::Elem]) -> Self::Elem {
        match coords {
            [u] => u.clone(),
            [u, v] => {
                let w = self
                    .special_element()
                    .expect("non-trivial involution has w");
                self.add(u, &self.mul(v, &w))
            }
            _ => panic!("expected one or two coordinates"),
        }
    }
}

/// Which concrete field a [`FieldCtx`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Fp,
    Fp2,
    /// Finite field of degree > 2 over its prime field (e.g. `F16`).
    Fq,
    Q,
    Qi,
}

/// A runtime-selected field; dispatch into generic code with
/// [`with_field!`](crate::with_field).
#[derive(Debug, Clone)]
pub enum FieldCtx {
    Finite(FiniteField),
    Rational(Rationals),
    Gaussian(GaussianRationals),
}

impl FieldCtx {
    /// Parse a field spec: `F<q>` (`q` a prime power), `Fp2:p=<prime>`, `Q`,
    /// `Qi`. A `:c=id` suffix forces the trivial involution on a finite field.
    pub fn parse(spec: &str) -> Result<Self> {
        make_field(spec)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldCtx::Finite(f) => match f.degree() {
                1 => FieldKind::Fp,
                2 => FieldKind::Fp2,
                _ => FieldKind::Fq,
            },
            FieldCtx::Rational(_) => FieldKind::Q,
            FieldCtx::Gaussian(_) => FieldKind::Qi,
        }
    }

    pub fn spec(&self) -> String {
        match self {
            FieldCtx::Finite(f) => f.spec(),
            FieldCtx::Rational(f) => f.spec(),
            FieldCtx::Gaussian(f) => f.spec(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Finite(f) => f.characteristic(),
            FieldCtx::Rational(_) | FieldCtx::Gaussian(_) => 0,
        }
    }

    pub fn involution_is_trivial(&self) -> bool {
        match self {
            FieldCtx::Finite(f) => f.involution_is_trivial(),
            FieldCtx::Rational(_) => true,
            FieldCtx::Gaussian(_) => false,
        }
    }
}

/// Run a block with `$f` bound to the concrete field inside a [`FieldCtx`].
#[macro_export]
macro_rules! with_field {
    ($ctx:expr, |$f:ident| $body:expr) => {
        match $ctx {
            $crate::field::FieldCtx::Finite($f) => $body,
            $crate::field::FieldCtx::Rational($f) => $body,
            $crate::field::FieldCtx::Gaussian($f) => $body,
        }
    };
}

pub fn make_field(spec: &str) -> Result<FieldCtx> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, force_trivial) = match compact.strip_suffix(":c=id") {
        Some(b) => (b, true),
        None => (compact.as_str(), false),
    };
    match body {
        "Q" => {
            if force_trivial {
                return Err(Error::Parse("Q already has the trivial involution".into()));
            }
            return Ok(FieldCtx::Rational(Rationals));
        }
        "Qi" => {
            if force_trivial {
                return Err(Error::Parse(
                    "Q(i) only supports complex conjugation".into(),
                ));
            }
            return Ok(FieldCtx::Gaussian(GaussianRationals));
        }
        _ => {}
    }
    if let Some(rest) = body.strip_prefix("Fp2:p=") {
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field spec {spec:?}")))?;
        return Ok(FieldCtx::Finite(FiniteField::new(p, 2, !force_trivial)?));
    }
    if let Some(rest) = body.strip_prefix('F') {
        let q: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("malformed field spec {spec:?}")))?;
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q))?;
        return Ok(FieldCtx::Finite(FiniteField::new(p, e, !force_trivial)?));
    }
    Err(Error::Parse(format!("malformed field spec {spec:?}")))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^e` with `p` prime, or `None`.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar() {
        assert_eq!(make_field("F4").unwrap().kind(), FieldKind::Fp2);
        assert_eq!(make_field("F 9").unwrap().kind(), FieldKind::Fp2);
        assert_eq!(make_field("F7").unwrap().kind(), FieldKind::Fp);
        assert_eq!(make_field("F16").unwrap().kind(), FieldKind::Fq);
        assert_eq!(make_field("Fp2:p=5").unwrap().spec(), "F25");
        assert_eq!(make_field("Q").unwrap().kind(), FieldKind::Q);
        assert_eq!(make_field("Qi").unwrap().kind(), FieldKind::Qi);
        assert!(make_field("F4:c=id").unwrap().involution_is_trivial());
        assert!(!make_field("F4").unwrap().involution_is_trivial());
    }

    #[test]
    fn spec_errors() {
        assert_eq!(make_field("F6").unwrap_err(), Error::NotPrime(6));
        assert_eq!(make_field("Fp2:p=9").unwrap_err(), Error::NotPrime(9));
        assert!(matches!(make_field("G4"), Err(Error::Parse(_))));
        assert!(matches!(make_field("F"), Err(Error::Parse(_))));
        assert!(matches!(make_field("Qi:c=id"), Err(Error::Parse(_))));
    }

    #[test]
    fn fixed_coordinates_round_trip() {
        let ctx = make_field("F9").unwrap();
        with_field!(&ctx, |f| {
            for a in f.elements().unwrap() {
                let coords = f.fixed_coords(&a);
                assert!(coords.iter().all(|u| f.is_fixed(u)));
                assert_eq!(f.from_fixed_coords(&coords), a);
            }
        });
        let f = GaussianRationals;
        let a = f.parse("1/2-3*i").unwrap();
        assert_eq!(f.from_fixed_coords(&f.fixed_coords(&a)), a);
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{parse_linear_literal, Field};
use crate::error::{Error, Result};

/// `Q` with the trivial involution.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

/// `Q(i)` with complex conjugation; `E = Q`, `w = i`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GaussianRationals;

/// `re + im·i` with exact rational parts. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    fn from_re(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn format_rat(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn random_rat(rng: &mut dyn RngCore) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=4);
    BigRational::new(num.into(), den.into())
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn rat_sqrt(a: &BigRational) -> Option<BigRational> {
    if a.is_negative() {
        return None;
    }
    let (n, d) = (a.numer(), a.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        rat(n)
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn conj(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn involution_is_trivial(&self) -> bool {
        true
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, _index: u64) -> Option<BigRational> {
        None
    }

    fn spec(&self) -> String {
        "Q".into()
    }

    fn format(&self, a: &BigRational) -> String {
        format_rat(a)
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let terms = parse_linear_literal(s, &[])?;
        Ok(terms
            .into_iter()
            .map(|t| BigRational::new(t.num, t.den))
            .fold(BigRational::zero(), |acc, x| acc + x))
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        random_rat(rng)
    }

    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        rat_sqrt(a)
    }

    fn special_element(&self) -> Result<BigRational> {
        Err(Error::Precondition("involution is trivial".into()))
    }
}

impl Field for GaussianRationals {
    type Elem = GaussRat;

    fn zero(&self) -> GaussRat {
        GaussRat::from_re(BigRational::zero())
    }

    fn one(&self) -> GaussRat {
        GaussRat::from_re(BigRational::one())
    }

    fn from_i64(&self, n: i64) -> GaussRat {
        GaussRat::from_re(rat(n))
    }

    fn add(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        GaussRat::new(&a.re + &b.re, &a.im + &b.im)
    }

    fn neg(&self, a: &GaussRat) -> GaussRat {
        GaussRat::new(-&a.re, -&a.im)
    }

    fn sub(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        GaussRat::new(&a.re - &b.re, &a.im - &b.im)
    }

    fn mul(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        GaussRat::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
    }

    fn inv(&self, a: &GaussRat) -> Option<GaussRat> {
        let n = &a.re * &a.re + &a.im * &a.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRat::new(&a.re / &n, -&a.im / &n))
    }

    fn conj(&self, a: &GaussRat) -> GaussRat {
        GaussRat::new(a.re.clone(), -&a.im)
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn involution_is_trivial(&self) -> bool {
        false
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, _index: u64) -> Option<GaussRat> {
        None
    }

    fn spec(&self) -> String {
        "Qi".into()
    }

    fn format(&self, a: &GaussRat) -> String {
        let re = (!a.re.is_zero()).then(|| format_rat(&a.re));
        let im = if a.im.is_zero() {
            None
        } else if a.im.is_one() {
            Some("i".to_string())
        } else if a.im == -BigRational::one() {
            Some("-i".to_string())
        } else {
            Some(format!("{}*i", format_rat(&a.im)))
        };
        match (re, im) {
            (None, None) => "0".into(),
            (Some(r), None) => r,
            (None, Some(i)) => i,
            (Some(r), Some(i)) if i.starts_with('-') => format!("{r}{i}"),
            (Some(r), Some(i)) => format!("{r}+{i}"),
        }
    }

    fn parse(&self, s: &str) -> Result<GaussRat> {
        let terms = parse_linear_literal(s, &['i', 'w'])?;
        let i = GaussRat::new(BigRational::zero(), BigRational::one());
        let mut acc = self.zero();
        for t in terms {
            let c = GaussRat::from_re(BigRational::new(t.num, t.den));
            acc = self.add(&acc, &self.mul(&c, &self.pow(&i, t.power as u128)));
        }
        Ok(acc)
    }

    fn random(&self, rng: &mut dyn RngCore) -> GaussRat {
        GaussRat::new(random_rat(rng), random_rat(rng))
    }

    /// `sqrt(a + bi) = x + yi` with `x² = (a + |z|)/2`, `y = b / 2x`.
    fn sqrt(&self, z: &GaussRat) -> Option<GaussRat> {
        if z.im.is_zero() {
            return match rat_sqrt(&z.re) {
                Some(r) => Some(GaussRat::from_re(r)),
                None => rat_sqrt(&-&z.re).map(|r| GaussRat::new(BigRational::zero(), r)),
            };
        }
        let modulus = rat_sqrt(&(&z.re * &z.re + &z.im * &z.im))?;
        let two = rat(2);
        let x = rat_sqrt(&((&z.re + &modulus) / &two))?;
        let y = &z.im / (&two * &x);
        Some(GaussRat::new(x, y))
    }

    fn special_element(&self) -> Result<GaussRat> {
        Ok(GaussRat::new(BigRational::zero(), BigRational::one()))
    }
}

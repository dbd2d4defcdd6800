use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::{is_prime, parse_linear_literal, Field};
use crate::error::{Error, Result};

/// Fields up to this order get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 20;
/// Fields up to this order also get a full addition table.
const ADD_TABLE_LIMIT: u64 = 256;

/// `F_{p^e}` as `F_p[w]/(m(w))`.
///
/// An element is stored as its canonical index `Σ c_i p^i`, where
/// `c_0 + c_1 w + … + c_{e-1} w^{e-1}` is its coordinate vector. Index order
/// is the documented total order on the field.
///
/// The defining polynomial is `w² + w + 1` for `p = 2, e = 2`, `w² - a` with
/// `a` the smallest quadratic non-residue for odd `p, e = 2`, and the smallest
/// irreducible monic polynomial (in index order of its coefficients) for other
/// degrees. For even `e` the involution is `x ↦ x^{p^{e/2}}`, unless the
/// trivial involution was requested.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic, low → high, length `degree + 1`.
    modulus: Vec<u64>,
    /// `c(w^i)` for each basis monomial.
    conj_images: Vec<u64>,
    trivial: bool,
    symbol: char,
    special: Option<u64>,
    tables: Option<Tables>,
}

struct Tables {
    /// `exp[i] = g^i` for `0 ≤ i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    conj: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.inner.p)
            .field("degree", &self.inner.degree)
            .field("modulus", &self.inner.modulus)
            .field("trivial_involution", &self.inner.trivial)
            .finish()
    }
}

impl FiniteField {
    /// `F_{p^degree}`; `involution` selects the Frobenius `x ↦ x^{p^{degree/2}}`
    /// and is ignored for odd degree.
    pub fn new(p: u64, degree: u32, involution: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::UnsupportedField("degree 0".into()));
        }
        if p >= 1 << 31 {
            return Err(Error::UnsupportedField(format!("prime {p} too large")));
        }
        let order = p
            .checked_pow(degree)
            .filter(|q| *q < 1 << 48)
            .ok_or_else(|| Error::UnsupportedField(format!("{p}^{degree} too large")))?;

        let modulus = match (p, degree) {
            (_, 1) => vec![0, 1],
            (2, 2) => vec![1, 1, 1],
            (_, 2) => {
                let a = (2..p)
                    .find(|a| pow_mod(*a, (p - 1) / 2, p) == p - 1)
                    .expect("odd prime has a non-residue");
                vec![p - a, 0, 1]
            }
            _ => smallest_irreducible(p, degree as usize),
        };
        let symbol = if p != 2 && degree == 2 && modulus == [1, 0, 1] {
            'i'
        } else {
            'w'
        };
        let trivial = !(involution && degree.is_multiple_of(2));

        let mut inner = Inner {
            p,
            degree,
            order,
            modulus,
            conj_images: Vec::new(),
            trivial,
            symbol,
            special: None,
            tables: None,
        };
        inner.conj_images = (0..degree)
            .map(|i| {
                let mono = p.pow(i);
                if trivial {
                    mono
                } else {
                    inner.pow_slow(mono, (p as u128).pow(degree / 2))
                }
            })
            .collect();
        if order <= TABLE_LIMIT {
            inner.tables = Some(inner.build_tables());
        }
        if !trivial {
            inner.special = (0..order).find(|&a| {
                let ac = inner.conj_slow(a);
                if p == 2 {
                    inner.add_slow(inner.add_slow(1, a), ac) == 0
                } else {
                    a != 0 && ac == inner.neg_slow(a)
                }
            });
        }
        Ok(FiniteField {
            inner: Arc::new(inner),
        })
    }

    pub fn prime(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// Defining polynomial of `w`, low → high.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The generator `w` (or the prime-field element 0 when `degree == 1`).
    pub fn generator(&self) -> u64 {
        if self.inner.degree == 1 {
            0
        } else {
            self.inner.p
        }
    }
}

impl Inner {
    fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn from_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, d| acc * self.p + d)
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    fn neg_slow(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u64> = self
            .digits(a)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.from_digits(&d)
    }

    fn scale_slow(&self, a: u64, s: u64) -> u64 {
        let d: Vec<u64> = self.digits(a).into_iter().map(|x| x * s % self.p).collect();
        self.from_digits(&d)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.degree == 1 {
            return a * b % p;
        }
        let e = self.degree as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, x) in da.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce by the monic modulus from the top.
        for top in (e..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, m) in self.modulus[..e].iter().enumerate() {
                let idx = top - e + k;
                prod[idx] = (prod[idx] + (p - c) * m) % p;
            }
        }
        prod.truncate(e);
        self.from_digits(&prod)
    }

    fn pow_slow(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn conj_slow(&self, a: u64) -> u64 {
        if self.trivial {
            return a;
        }
        self.digits(a)
            .iter()
            .zip(&self.conj_images)
            .fold(0, |acc, (c, img)| {
                self.add_slow(acc, self.scale_slow(*img, *c))
            })
    }

    fn build_tables(&self) -> Tables {
        let q = self.order;
        let group = q - 1;
        let primes = prime_factors(group);
        let g = (1..q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|r| group == 1 || self.pow_slow(g, (group / r) as u128) != 1)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..group as usize {
            exp[i] = x as u32;
            exp[i + group as usize] = x as u32;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        let neg = (0..q).map(|a| self.neg_slow(a) as u32).collect();
        let conj = (0..q).map(|a| self.conj_slow(a) as u32).collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            (0..q * q)
                .map(|ab| self.add_slow(ab / q, ab % q) as u32)
                .collect()
        });
        Tables {
            exp,
            log,
            neg,
            conj,
            add,
        }
    }
}

impl Field for FiniteField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.inner.p as i64) as u64
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if let Some(Tables { add: Some(t), .. }) = &inner.tables {
            return t[(*a * inner.order + *b) as usize] as u64;
        }
        inner.add_slow(*a, *b)
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        match &self.inner.tables {
            Some(t) => t.neg[*a as usize] as u64,
            None => self.inner.neg_slow(*a),
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.inner.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize] as u64,
            None => self.inner.mul_slow(*a, *b),
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let group = self.inner.order - 1;
        Some(match &self.inner.tables {
            Some(t) => t.exp[((group - t.log[*a as usize] as u64) % group) as usize] as u64,
            None => self.inner.pow_slow(*a, (group - 1) as u128),
        })
    }

    #[inline]
    fn conj(&self, a: &u64) -> u64 {
        match &self.inner.tables {
            Some(t) => t.conj[*a as usize] as u64,
            None => self.inner.conj_slow(*a),
        }
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn involution_is_trivial(&self) -> bool {
        self.inner.trivial
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.order)
    }

    fn element_at(&self, index: u64) -> Option<u64> {
        (index < self.inner.order).then_some(index)
    }

    fn spec(&self) -> String {
        let base = format!("F{}", self.inner.order);
        if self.inner.trivial && self.inner.degree.is_multiple_of(2) {
            format!("{base}:c=id")
        } else {
            base
        }
    }

    fn format(&self, a: &u64) -> String {
        let inner = &*self.inner;
        let digits = inner.digits(*a);
        let mut parts = Vec::new();
        for (k, d) in digits.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            let sym = match k {
                0 => String::new(),
                1 => inner.symbol.to_string(),
                _ => format!("{}^{}", inner.symbol, k),
            };
            parts.push(match (k, d) {
                (0, _) => d.to_string(),
                (_, 1) => sym,
                _ => format!("{d}*{sym}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let symbols: &[char] = if self.inner.degree > 1 {
            &['w', 'i']
        } else {
            &[]
        };
        let terms = parse_linear_literal(s, symbols)?;
        let p = BigInt::from(self.inner.p);
        let w = self.generator();
        let mut acc = 0;
        for t in terms {
            let num = t.num.mod_floor(&p).to_u64().expect("reduced mod p");
            let den = t.den.mod_floor(&p).to_u64().expect("reduced mod p");
            if den == 0 {
                return Err(Error::DivisionByZero);
            }
            let coeff = self.div(&num, &den)?;
            let mono = self.pow(&w, t.power as u128);
            acc = self.add(&acc, &self.mul(&coeff, &mono));
        }
        Ok(acc)
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.inner.order)
    }

    fn special_element(&self) -> Result<u64> {
        self.inner
            .special
            .ok_or_else(|| Error::Precondition("involution is trivial".into()))
    }

    fn pow(&self, a: &u64, e: u128) -> u64 {
        match &self.inner.tables {
            Some(t) if *a != 0 => {
                let group = (self.inner.order - 1) as u128;
                let k = (t.log[*a as usize] as u128 * (e % group)) % group;
                t.exp[k as usize] as u64
            }
            _ if *a == 0 => u64::from(e == 0),
            _ => self.inner.pow_slow(*a, e),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest monic irreducible of the given degree over `F_p`, ordering
/// candidates by the index of their lower coefficients.
fn smallest_irreducible(p: u64, degree: usize) -> Vec<u64> {
    let count = p.pow(degree as u32);
    for idx in 0..count {
        let mut f: Vec<u64> = (0..degree).map(|k| idx / p.pow(k as u32) % p).collect();
        f.push(1);
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin-style test: no common factor with `x^{p^i} - x` for `i ≤ deg/2`.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if f[0] == 0 {
        return n == 1;
    }
    let mut xp = vec![0, 1];
    for _ in 1..=n / 2 {
        xp = fp_powmod(&xp, p, f, p);
        let mut g = xp.clone();
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        if fp_gcd(g, f.to_vec(), p).len() > 1 {
            return false;
        }
    }
    true
}

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let lead_inv = pow_mod(*b.last().expect("nonzero divisor"), p - 2, p);
    a = fp_trim(a);
    while a.len() >= b.len() {
        let c = a.last().unwrap() * lead_inv % p;
        let shift = a.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            a[shift + k] = (a[shift + k] + (p - c) * bk % p) % p;
        }
        a = fp_trim(a);
    }
    a
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_rem(prod, m, p)
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = fp_rem(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = fp_trim(a);
    b = fp_trim(b);
    while !b.is_empty() {
        let r = fp_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(spec: (u64, u32)) -> FiniteField {
        FiniteField::new(spec.0, spec.1, true).unwrap()
    }

    #[test]
    fn f4_structure() {
        let k = f((2, 2));
        let w = k.parse("w").unwrap();
        // w^2 = w + 1
        assert_eq!(k.mul(&w, &w), k.parse("1+w").unwrap());
        // involution is squaring
        assert_eq!(k.conj(&w), k.mul(&w, &w));
        assert_eq!(k.conj(&1), 1);
        assert_eq!(k.special_element().unwrap(), w);
        assert_eq!(k.format(&k.conj(&w)), "1+w");
    }

    #[test]
    fn f9_structure() {
        let k = f((3, 2));
        let i = k.parse("i").unwrap();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        // (1+i)^c = 1 - i = 1 + 2i
        assert_eq!(k.conj(&k.parse("1+i").unwrap()), k.parse("1+2*i").unwrap());
        // (1+2i)^2 = i
        let a = k.parse("1+2*i").unwrap();
        assert_eq!(k.mul(&a, &a), i);
        assert_eq!(k.special_element().unwrap(), i);
        assert_eq!(k.conj(&i), k.neg(&i));
        // -1 is a non-residue mod 3: no square in F_3 equals 2
        assert!((0..3u64).all(|x| x * x % 3 != 2));
        assert_eq!(k.format(&i), "i");
    }

    #[test]
    fn f16_structure() {
        let k = f((2, 4));
        assert_eq!(k.modulus(), &[1, 1, 0, 0, 1]);
        let w = k.special_element().unwrap();
        assert_eq!(k.add(&k.add(&1, &w), &k.conj(&w)), 0);
        assert_eq!(k.fixed_elements().unwrap().len(), 4);
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let k = f((5, 2));
        let inner = &k.inner;
        for a in 0..25 {
            for b in 0..25 {
                assert_eq!(k.mul(&a, &b), inner.mul_slow(a, b));
                assert_eq!(k.add(&a, &b), inner.add_slow(a, b));
            }
            assert_eq!(k.conj(&a), inner.conj_slow(a));
        }
    }

    #[test]
    fn large_prime_without_tables() {
        let k = FiniteField::new(1_000_003, 2, true).unwrap();
        assert!(k.inner.tables.is_none());
        let a = k.parse("12345+678*w").unwrap();
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), 1);
        assert_eq!(k.conj(&k.conj(&a)), a);
        let w = k.special_element().unwrap();
        assert_eq!(k.conj(&w), k.neg(&w));
    }

    #[test]
    fn fixed_field_sizes() {
        for p in [2, 3, 5] {
            let k = f((p, 2));
            assert_eq!(k.fixed_elements().unwrap().len() as u64, p);
        }
    }

    #[test]
    fn irreducibility_helper() {
        assert!(fp_is_irreducible(&[1, 1, 1], 2));
        assert!(!fp_is_irreducible(&[1, 0, 1], 2));
        assert!(fp_is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!fp_is_irreducible(&[1, 0, 0, 0, 1], 2));
    }
}

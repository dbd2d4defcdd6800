//! Dense exact matrices over a [`Field`].

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> Mat<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn diag<F: Field<Elem = E>>(f: &F, d: &[E]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { f.zero() })
    }

    /// `S e_i = e_{n-1-i}`.
    pub fn antidiag_identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i + j + 1 == n { f.one() } else { f.zero() })
    }

    /// Lower-shift companion matrix: ones on the subdiagonal, last column
    /// `-d_0, …, -d_{k-1}`.
    pub fn companion<F: Field<Elem = E>>(f: &F, p: &Poly<E>) -> Result<Self> {
        let k = p.degree().filter(|&d| d >= 1).ok_or_else(|| {
            Error::Precondition("companion matrix needs a nonconstant polynomial".into())
        })?;
        let p = p.monic(f);
        Ok(Self::from_fn(k, k, |i, j| {
            if j == k - 1 {
                f.neg(&p.coeffs()[i])
            } else if i == j + 1 {
                f.one()
            } else {
                f.zero()
            }
        }))
    }

    pub fn block_diag<F: Field<Elem = E>>(f: &F, blocks: &[Mat<E>]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(f, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<E>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<E>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| f.add(a, b)))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| f.sub(a, b)))
    }

    fn zip_with(&self, other: &Self, g: impl Fn(&E, &E) -> E) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| g(a, b))
                .collect(),
        }
    }

    pub fn map(&self, g: impl Fn(&E) -> E) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect(),
        }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.map(|a| f.neg(a))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|a| f.mul(s, a))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise involution `T ↦ T^c`.
    pub fn conj<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.map(|a| f.conj(a))
    }

    /// `(T^c)^t`.
    pub fn conj_transpose<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| f.conj(self.get(j, i)))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        f.is_one(a)
                    } else {
                        f.is_zero(a)
                    }
                })
            })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> Result<E> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot is nonzero");
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(f, n));
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, bi) in b.iter().enumerate() {
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, mut e: u64) -> Result<Self> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(f, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base)?;
            }
        }
        Ok(acc)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly<F: Field<Elem = E>>(&self, f: &F, p: &Poly<E>) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut acc = Self::zeros(f, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self)?;
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// `det(xI - M)` through reduction to upper Hessenberg form.
    pub fn charpoly<F: Field<Elem = E>>(&self, f: &F) -> Result<Poly<E>> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            if p != m {
                h.swap_rows(p, m);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1)).expect("pivot is nonzero");
            for i in m + 1..n {
                if f.is_zero(h.get(i, m - 1)) {
                    continue;
                }
                let u = f.mul(h.get(i, m - 1), &inv);
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), &f.mul(&u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        let x = Poly::x(f);
        let mut p = vec![Poly::one(f)];
        for m in 1..=n {
            let lin = x.sub(f, &Poly::constant(f, h.get(m - 1, m - 1).clone()));
            let mut pm = lin.mul(f, &p[m - 1]);
            let mut t = f.one();
            for i in 1..m {
                t = f.mul(&t, h.get(m - i, m - i - 1));
                let c = f.mul(&t, h.get(m - i - 1, m - 1));
                pm = pm.sub(f, &p[m - i - 1].scale(f, &c));
            }
            p.push(pm);
        }
        Ok(p.pop().expect("nonempty"))
    }

    /// Least-degree monic `q` with `q(M) = 0`, via linear dependence among
    /// the powers of `M`.
    pub fn minpoly<F: Field<Elem = E>>(&self, f: &F) -> Result<Poly<E>> {
        self.require_square()?;
        let n = self.rows;
        let mut powers = vec![Self::identity(f, n).data];
        let mut cur = Self::identity(f, n);
        for k in 1..=n {
            cur = cur.mul(f, self)?;
            powers.push(cur.data.clone());
            let system = Self::from_columns(n * n, &powers);
            if let Some(v) = system.nullspace(f).into_iter().next() {
                let lead = f.inv(&v[k]).ok_or_else(|| {
                    Error::Internal("lower powers of a matrix became dependent".into())
                })?;
                return Ok(Poly::from_coeffs(
                    f,
                    v.iter().map(|c| f.mul(c, &lead)).collect(),
                ));
            }
        }
        Err(Error::Internal(
            "no annihilating polynomial up to degree n".into(),
        ))
    }

    /// Canonical literal `[[a,b];[c,d]]`.
    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let entries: Vec<String> = self.row(i).iter().map(|a| f.format(a)).collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }

    /// Row-major strings for JSON emission.
    pub fn to_string_rows<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| f.format(a)).collect())
            .collect()
    }

    pub fn from_string_rows<F: Field<Elem = E>>(f: &F, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    /// Parses `[[0,1];[1,1]]`. Rows may also be separated by `,`, so JSON
    /// arrays of numbers are accepted too.
    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed matrix literal {s:?}"));
        let inner = compact
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut rows = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(bad)?;
            let end = body.find(']').ok_or_else(bad)?;
            let entries = body[..end]
                .split(',')
                .map(|e| f.parse(e.trim_matches('"')))
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
            rest = &body[end + 1..];
            if let Some(t) = rest.strip_prefix(';').or_else(|| rest.strip_prefix(',')) {
                if t.is_empty() {
                    return Err(bad());
                }
                rest = t;
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        if rows.is_empty() {
            return Err(bad());
        }
        Self::from_rows(rows)
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

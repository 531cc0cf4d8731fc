//! Dense integer matrices with exact (checked `i128`) arithmetic.
//!
//! Every arithmetic step goes through checked operations; an overflow is
//! reported as [`Error::Overflow`] instead of wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

#[inline]
fn mul_add(acc: i128, a: i128, b: i128) -> Result<i128> {
    checked(acc.checked_add(checked(a.checked_mul(b))?))
}

/// Extended gcd: returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn diagonal(entries: &[i128]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.as_ref().len(), ncols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn from_columns<C: AsRef<[i128]>>(cols: &[C]) -> Self {
        Self::from_rows(cols).transpose()
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

    pub fn row(&self, r: usize) -> &[i128] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i128> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self[(r, c)] == i128::from(r == c)))
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] = mul_add(out[(r, c)], a, rhs[(k, c)])?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(0i128, |acc, (&a, &b)| mul_add(acc, a, b))
            })
            .collect()
    }

    fn zip_with(&self, rhs: &IntMatrix, f: impl Fn(i128, i128) -> Option<i128>) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| checked(f(a, b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, i128::checked_add)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, i128::checked_sub)
    }

    pub fn scale(&self, k: i128) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|&a| checked(a.checked_mul(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn pow(&self, mut e: u64) -> Result<IntMatrix> {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates a polynomial (coefficients lowest degree first) at this matrix.
    pub fn eval_poly(&self, coeffs: &[i128]) -> Result<IntMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self)?.add(&Self::identity(n).scale(c)?)?;
        }
        Ok(acc)
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: i128) -> IntMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.rem_euclid(m)).collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[(k, k)] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| m[(r, k)] != 0) else {
                    return Ok(0);
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = checked(m[(i, j)].checked_mul(m[(k, k)]))?;
                    let b = checked(m[(i, k)].checked_mul(m[(k, j)]))?;
                    m[(i, j)] = checked(a.checked_sub(b))? / prev;
                }
                m[(i, k)] = 0;
            }
            prev = m[(k, k)];
        }
        Ok(sign * m[(n - 1, n - 1)])
    }

    /// Characteristic polynomial `det(yI - A)`, coefficients lowest degree
    /// first (monic, length n+1). Faddeev–LeVerrier; the divisions are exact
    /// over the integers.
    pub fn charpoly(&self) -> Result<Vec<i128>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![0i128; n + 1];
        coeffs[n] = 1;
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = self
                .mul(&m)?
                .add(&Self::identity(n).scale(coeffs[n + 1 - k])?)?;
            let am = self.mul(&m)?;
            let trace = (0..n).try_fold(0i128, |acc, i| checked(acc.checked_add(am[(i, i)])))?;
            debug_assert_eq!(trace % k as i128, 0);
            coeffs[n - k] = -trace / k as i128;
        }
        Ok(coeffs)
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let rows: Vec<Vec<i128>> = (0..self.rows)
            .filter(|&r| r != skip_row)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| c != skip_col)
                    .map(|c| self[(r, c)])
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return Self::zeros(0, 0);
        }
        Self::from_rows(&rows)
    }

    /// Classical adjugate, `A * adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = 1;
            return Ok(adj);
        }
        for r in 0..n {
            for c in 0..n {
                let d = self.minor(r, c).det()?;
                adj[(c, r)] = if (r + c) % 2 == 0 { d } else { -d };
            }
        }
        Ok(adj)
    }

    /// Inverse of a unimodular matrix (determinant ±1).
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let det = self.det()?;
        if det.abs() != 1 {
            return Err(Error::InvalidParameter(format!(
                "matrix with determinant {det} is not unimodular"
            )));
        }
        self.adjugate()?.scale(det)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for c in 0..self.cols {
            let v = mul_add(self[(dst, c)], k, self[(src, c)])?;
            self[(dst, c)] = v;
        }
        Ok(())
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for r in 0..self.rows {
            let v = mul_add(self[(r, dst)], k, self[(r, src)])?;
            self[(r, dst)] = v;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)];
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self[(r, c)] = -self[(r, c)];
        }
    }

    /// Replaces columns `(i, j)` by `(a*ci + b*cj, c*ci + d*cj)`.
    fn combine_cols(&mut self, i: usize, j: usize, [a, b, c, d]: [i128; 4]) -> Result<()> {
        for r in 0..self.rows {
            let (x, y) = (self[(r, i)], self[(r, j)]);
            self[(r, i)] = mul_add(checked(a.checked_mul(x))?, b, y)?;
            self[(r, j)] = mul_add(checked(c.checked_mul(x))?, d, y)?;
        }
        Ok(())
    }

    /// Column Hermite normal form: returns `(H, U)` with `H = A U`, `U`
    /// unimodular.
    ///
    /// Pivot columns sit on the right, zero columns on the left. Each pivot
    /// is positive and every entry to the right of a pivot in its row lies in
    /// `[0, pivot)`. For a full-rank square matrix `H` is upper triangular.
    pub fn hnf(&self) -> Result<(IntMatrix, IntMatrix)> {
        let (m, n) = (self.rows, self.cols);
        let mut h = self.clone();
        let mut u = Self::identity(n);
        let mut next = n; // columns [next, n) hold pivots
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        for r in (0..m).rev() {
            if next == 0 {
                break;
            }
            let target = next - 1;
            for j in 0..target {
                let b = h[(r, j)];
                if b == 0 {
                    continue;
                }
                let a = h[(r, target)];
                if a == 0 {
                    h.swap_cols(j, target);
                    u.swap_cols(j, target);
                    continue;
                }
                let (g, s, t) = ext_gcd(a, b);
                let ops = [s, t, -b / g, a / g];
                h.combine_cols(target, j, ops)?;
                u.combine_cols(target, j, ops)?;
            }
            if h[(r, target)] != 0 {
                if h[(r, target)] < 0 {
                    h.negate_col(target);
                    u.negate_col(target);
                }
                pivots.push((r, target));
                next -= 1;
            }
        }
        // pivots were found bottom-up, so columns increase with rows
        for ci in 0..pivots.len() {
            let (_, c) = pivots[ci];
            // reduce column c against pivots to its left, nearest first
            for &(pr, pc) in pivots.iter().skip(ci + 1) {
                let q = h[(pr, c)].div_euclid(h[(pr, pc)]);
                if q != 0 {
                    h.add_col_multiple(c, pc, -q)?;
                    u.add_col_multiple(c, pc, -q)?;
                }
            }
        }
        Ok((h, u))
    }

    /// Smith normal form: returns `(D, S, T)` with `D = S A T` diagonal,
    /// non-negative, `d_1 | d_2 | ...`, and `S`, `T` unimodular.
    pub fn snf(&self) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut s = Self::identity(m);
        let mut t = Self::identity(n);
        for k in 0..m.min(n) {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for r in k..m {
                for c in k..n {
                    let v = d[(r, c)].abs();
                    if v != 0 && best.is_none_or(|(br, bc)| v < d[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { break };
            d.swap_rows(k, br);
            s.swap_rows(k, br);
            d.swap_cols(k, bc);
            t.swap_cols(k, bc);
            loop {
                let piv = d[(k, k)];
                let mut dirty = false;
                for r in k + 1..m {
                    let q = d[(r, k)] / piv;
                    if q != 0 {
                        d.add_row_multiple(r, k, -q)?;
                        s.add_row_multiple(r, k, -q)?;
                    }
                    dirty |= d[(r, k)] != 0;
                }
                for c in k + 1..n {
                    let q = d[(k, c)] / piv;
                    if q != 0 {
                        d.add_col_multiple(c, k, -q)?;
                        t.add_col_multiple(c, k, -q)?;
                    }
                    dirty |= d[(k, c)] != 0;
                }
                if dirty {
                    // move a smaller remainder into the pivot slot
                    let mut best = (k, k);
                    for r in k + 1..m {
                        if d[(r, k)] != 0 && d[(r, k)].abs() < d[best].abs() {
                            best = (r, k);
                        }
                    }
                    for c in k + 1..n {
                        if d[(k, c)] != 0 && d[(k, c)].abs() < d[best].abs() {
                            best = (k, c);
                        }
                    }
                    if best.0 != k {
                        d.swap_rows(k, best.0);
                        s.swap_rows(k, best.0);
                    } else if best.1 != k {
                        d.swap_cols(k, best.1);
                        t.swap_cols(k, best.1);
                    }
                    continue;
                }
                let bad = (k + 1..m)
                    .flat_map(|r| (k + 1..n).map(move |c| (r, c)))
                    .find(|&(r, c)| d[(r, c)] % piv != 0);
                match bad {
                    Some((r, _)) => {
                        d.add_row_multiple(k, r, 1)?;
                        s.add_row_multiple(k, r, 1)?;
                    }
                    None => break,
                }
            }
            if d[(k, k)] < 0 {
                d.negate_row(k);
                s.negate_row(k);
            }
        }
        Ok((d, s, t))
    }

    /// Diagonal entries `d[(i, i)]` for `i < min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn max_abs(&self) -> i128 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (r, c): (usize, usize)) -> &i128 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i128 {
        &mut self.data[r * self.cols + c]
    }
}

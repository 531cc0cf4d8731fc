//! Dense matrices over a prime field `F_p`, `p <= 251`.
//!
//! Rows are packed: one bit per entry (in `u64` words) for `p = 2`, one byte
//! per entry otherwise. All elimination goes through [`rref_in_place`], a
//! row-major Gauss–Jordan sweep whose pivot is always the first row (at or
//! below the current rank) with a nonzero entry in the current column, so the
//! result is a pure function of the input.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Work size (in lane words) above which elimination fans out over rayon.
const PAR_THRESHOLD: usize = 1 << 15;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in `F_p` with a Barrett reduction for values below `2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u8,
    magic: u32,
}

impl Field {
    pub fn new(p: u8) -> Result<Field> {
        if !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        let magic = (1u32 << 16).div_ceil(u32::from(p));
        Ok(Field { p, magic })
    }

    pub fn p(self) -> u8 {
        self.p
    }

    /// `v mod p` for `v < 2^16`.
    #[inline(always)]
    pub fn reduce(self, v: u32) -> u8 {
        let p = u32::from(self.p);
        let q = (v * self.magic) >> 16;
        let r = v + p - q * p;
        (if r >= p { r - p } else { r }) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        self.reduce(u32::from(a) + u32::from(b))
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.reduce(u32::from(a) + u32::from(self.p) - u32::from(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        self.reduce(u32::from(a) * u32::from(b))
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(a % self.p != 0, "inverse of zero");
        let mut acc = 1u8;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn from_i64(self, v: i64) -> u8 {
        v.rem_euclid(i64::from(self.p)) as u8
    }
}

/// Packed storage word; `u64` for bit rows, `u8` for byte rows.
pub(crate) trait Lane: Copy + Default + Send + Sync + Eq + 'static {
    const ENTRIES: usize;

    fn words(cols: usize) -> usize {
        cols.div_ceil(Self::ENTRIES)
    }
    fn get(row: &[Self], col: usize) -> u8;
    fn set(row: &mut [Self], col: usize, v: u8);
    /// `dst += c * src`
    fn axpy(f: Field, dst: &mut [Self], c: u8, src: &[Self]);
    fn scale(f: Field, row: &mut [Self], c: u8);
}

impl Lane for u64 {
    const ENTRIES: usize = 64;

    #[inline]
    fn get(row: &[u64], col: usize) -> u8 {
        ((row[col / 64] >> (col % 64)) & 1) as u8
    }

    #[inline]
    fn set(row: &mut [u64], col: usize, v: u8) {
        let bit = 1u64 << (col % 64);
        if v & 1 == 1 {
            row[col / 64] |= bit;
        } else {
            row[col / 64] &= !bit;
        }
    }

    #[inline]
    fn axpy(_: Field, dst: &mut [u64], c: u8, src: &[u64]) {
        if c & 1 == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
    }

    fn scale(_: Field, row: &mut [u64], c: u8) {
        if c & 1 == 0 {
            row.fill(0);
        }
    }
}

impl Lane for u8 {
    const ENTRIES: usize = 1;

    #[inline]
    fn get(row: &[u8], col: usize) -> u8 {
        row[col]
    }

    #[inline]
    fn set(row: &mut [u8], col: usize, v: u8) {
        row[col] = v;
    }

    #[inline]
    fn axpy(f: Field, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        let (p, magic, c) = (u32::from(f.p), f.magic, u32::from(c));
        for (d, &s) in dst.iter_mut().zip(src) {
            let v = u32::from(*d) + c * u32::from(s);
            let q = (v * magic) >> 16;
            let r = v + p - q * p;
            *d = (if r >= p { r - p } else { r }) as u8;
        }
    }

    fn scale(f: Field, row: &mut [u8], c: u8) {
        for v in row.iter_mut() {
            *v = f.mul(*v, c);
        }
    }
}

/// Gauss–Jordan elimination of a packed row-major block. Returns the pivot
/// columns; afterwards rows `0..rank` hold the reduced echelon form with
/// unit pivots and the remaining rows are zero.
pub(crate) fn rref_in_place<L: Lane>(
    f: Field,
    data: &mut [L],
    rows: usize,
    cols: usize,
    stride: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(found) = (rank..rows).find(|&r| L::get(&data[r * stride..(r + 1) * stride], col) != 0)
        else {
            continue;
        };
        if found != rank {
            let (head, tail) = data.split_at_mut(found * stride);
            head[rank * stride..(rank + 1) * stride].swap_with_slice(&mut tail[..stride]);
        }
        let lead = L::get(&data[rank * stride..(rank + 1) * stride], col);
        if lead != 1 {
            L::scale(f, &mut data[rank * stride..(rank + 1) * stride], f.inv(lead));
        }
        let start = col / L::ENTRIES;
        let pivot: Vec<L> = data[rank * stride + start..(rank + 1) * stride].to_vec();
        let piv_row = rank;
        let eliminate = |(r, row): (usize, &mut [L])| {
            if r == piv_row {
                return;
            }
            let c = L::get(row, col);
            if c != 0 {
                L::axpy(f, &mut row[start..], f.neg(c), &pivot);
            }
        };
        if rows * (stride - start) >= PAR_THRESHOLD {
            data.par_chunks_mut(stride).enumerate().for_each(eliminate);
        } else {
            data.chunks_mut(stride).enumerate().for_each(eliminate);
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Store {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
}

/// Dense row-major matrix over `F_p` with packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    stride: usize,
    store: Store,
}

/// Dispatches a generic body over the concrete lane type of a matrix.
macro_rules! with_lanes {
    ($m:expr, $data:ident, $L:ident => $body:expr) => {
        match &$m.store {
            Store::Bits($data) => {
                type $L = u64;
                $body
            }
            Store::Bytes($data) => {
                type $L = u8;
                $body
            }
        }
    };
    (mut $m:expr, $data:ident, $L:ident => $body:expr) => {
        match &mut $m.store {
            Store::Bits($data) => {
                type $L = u64;
                $body
            }
            Store::Bytes($data) => {
                type $L = u8;
                $body
            }
        }
    };
}

impl FpMatrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Result<FpMatrix> {
        let field = Field::new(p)?;
        Ok(Self::zeros_in(field, rows, cols))
    }

    pub fn zeros_in(field: Field, rows: usize, cols: usize) -> FpMatrix {
        if field.p == 2 {
            let stride = u64::words(cols);
            FpMatrix {
                field,
                rows,
                cols,
                stride,
                store: Store::Bits(vec![0; rows * stride]),
            }
        } else {
            FpMatrix {
                field,
                rows,
                cols,
                stride: cols,
                store: Store::Bytes(vec![0; rows * cols]),
            }
        }
    }

    pub fn identity(p: u8, n: usize) -> Result<FpMatrix> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Builds a matrix from row vectors; entries are reduced mod `p`.
    pub fn from_rows<R: AsRef<[u8]>>(p: u8, cols: usize, rows: &[R]) -> Result<FpMatrix> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            m.set_row(r, row);
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(p: u8, rows: usize, cols: usize, rng: &mut R) -> Result<FpMatrix> {
        let mut m = Self::zeros(p, rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen_range(0..p));
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u8 {
        self.field.p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        assert!(r < self.rows && c < self.cols);
        let s = self.stride;
        with_lanes!(self, d, L => L::get(&d[r * s..(r + 1) * s], c))
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        assert!(r < self.rows && c < self.cols);
        let s = self.stride;
        let v = v % self.field.p;
        with_lanes!(mut self, d, L => L::set(&mut d[r * s..(r + 1) * s], c, v))
    }

    pub fn set_row(&mut self, r: usize, values: &[u8]) {
        assert_eq!(values.len(), self.cols);
        let (s, p) = (self.stride, self.field.p);
        match &mut self.store {
            Store::Bytes(d) => {
                for (dst, &v) in d[r * s..(r + 1) * s].iter_mut().zip(values) {
                    *dst = v % p;
                }
            }
            Store::Bits(d) => {
                let row = &mut d[r * s..(r + 1) * s];
                row.fill(0);
                for (c, &v) in values.iter().enumerate() {
                    if v & 1 == 1 {
                        row[c / 64] |= 1 << (c % 64);
                    }
                }
            }
        }
    }

    pub fn row_vec(&self, r: usize) -> Vec<u8> {
        let s = self.stride;
        match &self.store {
            Store::Bytes(d) => d[r * s..r * s + self.cols].to_vec(),
            Store::Bits(d) => {
                let row = &d[r * s..(r + 1) * s];
                (0..self.cols).map(|c| u64::get(row, c)).collect()
            }
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    pub fn column_vec(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        with_lanes!(self, d, L => d.iter().all(|&w| w == L::default()))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros_in(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        if self.field != rhs.field {
            return Err(Error::InvalidParameter("mixed characteristics".into()));
        }
        let f = self.field;
        let mut out = Self::zeros_in(f, self.rows, rhs.cols);
        let (ls, rs) = (self.stride, rhs.stride);
        match (&self.store, &rhs.store, &mut out.store) {
            (Store::Bits(a), Store::Bits(b), Store::Bits(o)) => {
                mul_rows::<u64>(f, a, ls, self.cols, b, rs, o);
            }
            (Store::Bytes(a), Store::Bytes(b), Store::Bytes(o)) => {
                mul_rows::<u8>(f, a, ls, self.cols, b, rs, o);
            }
            _ => unreachable!("storage follows the field"),
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0u8, |acc, c| f.add(acc, f.mul(self.get(r, c), v[c] % f.p)))
            })
            .collect())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_mut();
        (m, pivots)
    }

    pub(crate) fn rref_mut(&mut self) -> Vec<usize> {
        let (f, rows, cols, stride) = (self.field, self.rows, self.cols, self.stride);
        with_lanes!(mut self, d, L => rref_in_place::<L>(f, d, rows, cols, stride))
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis as the rows of the returned matrix.
    pub fn kernel_rows(&self) -> FpMatrix {
        let vecs = self.kernel_vectors();
        let mut k = Self::zeros_in(self.field, vecs.len(), self.cols);
        for (r, v) in vecs.iter().enumerate() {
            k.set_row(r, v);
        }
        k
    }

    /// Kernel basis vectors `x` with `A x = 0`, one per free column, in
    /// increasing free-column order.
    pub fn kernel_vectors(&self) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let build = |&fc: &usize| {
            let mut x = vec![0u8; self.cols];
            x[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(i, fc));
            }
            x
        };
        if free.len() * self.cols >= PAR_THRESHOLD {
            free.par_iter().map(build).collect()
        } else {
            free.iter().map(build).collect()
        }
    }

    /// Kernel basis as columns.
    pub fn kernel(&self) -> FpMatrix {
        self.kernel_rows().transpose()
    }

    /// Some `x` with `A x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u8]) -> Result<Option<Vec<u8>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = Self::zeros_in(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            let mut row = self.row_vec(r);
            row.push(b[r] % self.field.p);
            aug.set_row(r, &row);
        }
        let pivots = aug.rref_mut();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub(crate) fn raw_bits(&self) -> Option<&[u64]> {
        match &self.store {
            Store::Bits(d) => Some(d),
            Store::Bytes(_) => None,
        }
    }

    pub(crate) fn raw_bytes(&self) -> Option<&[u8]> {
        match &self.store {
            Store::Bytes(d) => Some(d),
            Store::Bits(_) => None,
        }
    }

    pub(crate) fn from_raw_bits(field: Field, rows: usize, cols: usize, data: Vec<u64>) -> FpMatrix {
        let stride = u64::words(cols);
        assert_eq!(data.len(), rows * stride);
        FpMatrix {
            field,
            rows,
            cols,
            stride,
            store: Store::Bits(data),
        }
    }

    pub(crate) fn from_raw_bytes(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> FpMatrix {
        assert_eq!(data.len(), rows * cols);
        FpMatrix {
            field,
            rows,
            cols,
            stride: cols,
            store: Store::Bytes(data),
        }
    }
}

fn mul_rows<L: Lane>(
    f: Field,
    a: &[L],
    a_stride: usize,
    inner: usize,
    b: &[L],
    b_stride: usize,
    out: &mut [L],
) {
    let body = |(r, row): (usize, &mut [L])| {
        let arow = &a[r * a_stride..(r + 1) * a_stride];
        for k in 0..inner {
            let c = L::get(arow, k);
            if c != 0 {
                L::axpy(f, row, c, &b[k * b_stride..(k + 1) * b_stride]);
            }
        }
    };
    if b_stride == 0 {
        return;
    }
    if out.len() * inner >= PAR_THRESHOLD {
        out.par_chunks_mut(b_stride).enumerate().for_each(body);
    } else {
        out.chunks_mut(b_stride).enumerate().for_each(body);
    }
}

struct EchelonRows<L> {
    stride: usize,
    data: Vec<L>,
    pivots: Vec<usize>,
}

impl<L: Lane> EchelonRows<L> {
    fn reduce(&self, f: Field, v: &mut [L]) {
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = L::get(v, pc);
            if c != 0 {
                let row = &self.data[i * self.stride..(i + 1) * self.stride];
                L::axpy(f, v, f.neg(c), row);
            }
        }
    }

    fn insert(&mut self, f: Field, cols: usize, mut v: Vec<L>) -> bool {
        self.reduce(f, &mut v);
        let Some(pc) = (0..cols).find(|&c| L::get(&v, c) != 0) else {
            return false;
        };
        let lead = L::get(&v, pc);
        if lead != 1 {
            L::scale(f, &mut v, f.inv(lead));
        }
        let stride = self.stride;
        let clear = |row: &mut [L]| {
            let c = L::get(row, pc);
            if c != 0 {
                L::axpy(f, row, f.neg(c), &v);
            }
        };
        if self.data.len() >= PAR_THRESHOLD {
            self.data.par_chunks_mut(stride).for_each(clear);
        } else {
            self.data.chunks_mut(stride).for_each(clear);
        }
        self.data.extend_from_slice(&v);
        self.pivots.push(pc);
        true
    }
}

enum EchelonStore {
    Bits(EchelonRows<u64>),
    Bytes(EchelonRows<u8>),
}

/// Incrementally maintained reduced echelon basis of a subspace of `F_p^n`.
pub struct Echelon {
    field: Field,
    cols: usize,
    store: EchelonStore,
}

impl Echelon {
    pub fn new(p: u8, cols: usize) -> Result<Echelon> {
        let field = Field::new(p)?;
        let store = if p == 2 {
            EchelonStore::Bits(EchelonRows {
                stride: u64::words(cols),
                data: Vec::new(),
                pivots: Vec::new(),
            })
        } else {
            EchelonStore::Bytes(EchelonRows {
                stride: cols,
                data: Vec::new(),
                pivots: Vec::new(),
            })
        };
        Ok(Echelon { field, cols, store })
    }

    /// Row space of `m`, computed by one batch elimination.
    pub fn from_matrix(mut m: FpMatrix) -> Echelon {
        let pivots = m.rref_mut();
        let rank = pivots.len();
        let (field, cols, stride) = (m.field, m.cols, m.stride);
        let store = match m.store {
            Store::Bits(mut d) => {
                d.truncate(rank * stride);
                EchelonStore::Bits(EchelonRows { stride, data: d, pivots })
            }
            Store::Bytes(mut d) => {
                d.truncate(rank * stride);
                EchelonStore::Bytes(EchelonRows { stride, data: d, pivots })
            }
        };
        Echelon { field, cols, store }
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            EchelonStore::Bits(e) => e.pivots.len(),
            EchelonStore::Bytes(e) => e.pivots.len(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.cols);
        let (f, cols) = (self.field, self.cols);
        match &mut self.store {
            EchelonStore::Bits(e) => {
                let mut packed = vec![0u64; e.stride];
                for (c, &x) in v.iter().enumerate() {
                    if x & 1 == 1 {
                        packed[c / 64] |= 1 << (c % 64);
                    }
                }
                e.insert(f, cols, packed)
            }
            EchelonStore::Bytes(e) => {
                let packed = v.iter().map(|&x| x % f.p).collect();
                e.insert(f, cols, packed)
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        match &self.store {
            EchelonStore::Bits(e) => {
                let mut packed = vec![0u64; e.stride];
                for (c, &x) in v.iter().enumerate() {
                    if x & 1 == 1 {
                        packed[c / 64] |= 1 << (c % 64);
                    }
                }
                e.reduce(f, &mut packed);
                packed.iter().all(|&w| w == 0)
            }
            EchelonStore::Bytes(e) => {
                let mut packed: Vec<u8> = v.iter().map(|&x| x % f.p).collect();
                e.reduce(f, &mut packed);
                packed.iter().all(|&w| w == 0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Textbook elimination on plain `Vec<Vec<u8>>`, used as an oracle.
    fn naive_rank(p: u8, rows: &[Vec<u8>]) -> usize {
        let p32 = u32::from(p);
        let inv = |a: u32| (1..p32).find(|b| a * b % p32 == 1).unwrap();
        let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&v| u32::from(v)).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, pr);
            let iv = inv(m[rank][c]);
            for v in m[rank].iter_mut() {
                *v = *v * iv % p32;
            }
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let k = m[r][c];
                    for j in 0..cols {
                        m[r][j] = (m[r][j] + p32 * p32 - k * m[rank][j]) % p32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn barrett_reduction_is_exact() {
        for p in (2u8..=251).filter(|&p| is_prime(u64::from(p))) {
            let f = Field::new(p).unwrap();
            let top = u32::from(p) * u32::from(p) + u32::from(p);
            for v in 0..top {
                assert_eq!(u32::from(f.reduce(v)), v % u32::from(p), "p={p} v={v}");
            }
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(Field::new(4), Err(Error::NotPrime(4))));
        assert!(FpMatrix::zeros(9, 1, 1).is_err());
    }

    #[test]
    fn zero_and_identity_kernels() {
        for p in [2, 3, 5] {
            let z = FpMatrix::zeros(p, 7, 7).unwrap();
            assert_eq!(z.kernel_vectors().len(), 7);
            let id = FpMatrix::identity(p, 7).unwrap();
            assert_eq!(id.kernel_vectors().len(), 0);
            assert_eq!(id.rank(), 7);
            assert_eq!(id.solve(&[1, 0, 1, 1, 0, 0, 1]).unwrap().unwrap(), vec![1, 0, 1, 1, 0, 0, 1]);
        }
    }

    #[test]
    fn kernel_against_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = FpMatrix::random(3, 50, 60, &mut rng).unwrap();
        let k = a.kernel();
        assert!(a.mul(&k).unwrap().is_zero());
        let rank = naive_rank(3, &a.to_rows());
        assert_eq!(rank + k.cols(), 60);
        assert_eq!(a.rank(), rank);
    }

    #[test]
    fn solve_random_consistent_binary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = FpMatrix::random(2, 40, 70, &mut rng).unwrap();
            let x0: Vec<u8> = (0..70).map(|_| rng.gen_range(0..2)).collect();
            let b = a.mul_vec(&x0).unwrap();
            let x = a.solve(&b).unwrap().expect("consistent");
            assert_eq!(a.mul_vec(&x).unwrap(), b);
        }
    }

    #[test]
    fn inconsistent_system() {
        let a = FpMatrix::from_rows(5, 2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(a.solve(&[1, 3]).unwrap(), None);
        assert!(a.solve(&[1]).is_err());
    }

    #[test]
    fn echelon_tracks_rank() {
        for p in [2u8, 3, 7] {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p));
            let m = FpMatrix::random(p, 30, 20, &mut rng).unwrap();
            let mut e = Echelon::new(p, 20).unwrap();
            for r in 0..30 {
                e.insert(&m.row_vec(r));
            }
            assert_eq!(e.rank(), m.rank());
            let batch = Echelon::from_matrix(m.clone());
            assert_eq!(batch.rank(), e.rank());
            assert!(batch.contains(&m.row_vec(4)));
        }
    }

    #[test]
    fn wide_bit_rows_cross_word_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let a = FpMatrix::random(2, 90, 200, &mut rng).unwrap();
        let t = a.transpose();
        assert_eq!(t.transpose(), a);
        assert_eq!(a.rank(), naive_rank(2, &a.to_rows()));
        assert!(a.mul(&a.kernel()).unwrap().is_zero());
    }
}

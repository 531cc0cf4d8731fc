//! Normalized bar cochains on elementary abelian groups `F_p^w`, elementary
//! tensors of block cochains on `T_0 = K_0^k`, the cross product `η` and the
//! action of the wreath group.

use rand::Rng;

use crate::error::{Error, Result};
use crate::space_group::{WreathElement, WreathGroup};

/// Largest value table a cochain may carry.
pub const MAX_TABLE: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Values {
    /// Degree 0.
    Constant(u8),
    /// Indexed by the base-`p` codes of the arguments, first argument least
    /// significant.
    Table(Vec<u8>),
    /// A pseudo-random normalized function determined by a seed.
    Hashed(u64),
}

/// A normalized `m`-cochain `f: (F_p^w)^m → F_p`, evaluated after an
/// optional linear change of variables `z ↦ P z` on every argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    p: u8,
    width: usize,
    degree: usize,
    values: Values,
    pre: Option<Vec<Vec<u8>>>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn code(p: u8, v: &[u8]) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p as usize + c as usize)
}

fn table_size(p: u8, width: usize, degree: usize) -> Option<usize> {
    (p as usize).checked_pow((width * degree) as u32)
}

fn mat_vec(p: u8, m: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    m.iter()
        .map(|row| {
            let s: u32 = row.iter().zip(v).map(|(&a, &b)| u32::from(a) * u32::from(b)).sum();
            (s % u32::from(p)) as u8
        })
        .collect()
}

fn mat_mul(p: u8, a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let s: u32 = row.iter().zip(b).map(|(&x, r)| u32::from(x) * u32::from(r[c])).sum();
                    (s % u32::from(p)) as u8
                })
                .collect()
        })
        .collect()
}

impl Cochain {
    pub fn constant(p: u8, width: usize, value: u8) -> Cochain {
        Cochain {
            p,
            width,
            degree: 0,
            values: Values::Constant(value % p),
            pre: None,
        }
    }

    /// From a full value table; rejects tables that are not normalized.
    pub fn from_table(p: u8, width: usize, degree: usize, table: Vec<u8>) -> Result<Cochain> {
        let size = table_size(p, width, degree).filter(|&s| s <= MAX_TABLE);
        if size != Some(table.len()) || degree == 0 {
            return Err(Error::InvalidParameter(format!(
                "table of length {} does not match degree {degree} on F_{p}^{width}",
                table.len()
            )));
        }
        let f = Cochain {
            p,
            width,
            degree,
            values: Values::Table(table),
            pre: None,
        };
        let block = (p as usize).pow(width as u32);
        if let Values::Table(t) = &f.values {
            for (idx, &v) in t.iter().enumerate() {
                let degenerate = (0..degree).any(|k| idx / block.pow(k as u32) % block == 0);
                if v >= p || (degenerate && v != 0) {
                    return Err(Error::InvalidParameter(format!(
                        "table entry {idx} breaks normalization"
                    )));
                }
            }
        }
        Ok(f)
    }

    /// Uniformly random normalized table.
    pub fn random_table<R: Rng + ?Sized>(p: u8, width: usize, degree: usize, rng: &mut R) -> Result<Cochain> {
        let size = table_size(p, width, degree)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| Error::InvalidParameter("cochain table too large".into()))?;
        let block = (p as usize).pow(width as u32);
        let table = (0..size)
            .map(|idx| {
                if (0..degree).any(|k| idx / block.pow(k as u32) % block == 0) {
                    0
                } else {
                    rng.gen_range(0..p)
                }
            })
            .collect();
        Cochain::from_table(p, width, degree, table)
    }

    pub fn hashed(p: u8, width: usize, degree: usize, seed: u64) -> Cochain {
        Cochain {
            p,
            width,
            degree,
            values: Values::Hashed(seed),
            pre: None,
        }
    }

    /// A random cochain: a table when it is small, a hashed function
    /// otherwise.
    pub fn random<R: Rng + ?Sized>(p: u8, width: usize, degree: usize, rng: &mut R) -> Cochain {
        if degree == 0 {
            return Cochain::constant(p, width, rng.gen_range(0..p));
        }
        match table_size(p, width, degree) {
            Some(s) if s <= 1 << 12 => Cochain::random_table(p, width, degree, rng).expect("small table"),
            _ => Cochain::hashed(p, width, degree, rng.gen()),
        }
    }

    /// The basis cochain that is 1 on the non-degenerate tuple `args` and 0
    /// elsewhere.
    pub fn indicator(p: u8, width: usize, args: &[Vec<u8>]) -> Result<Cochain> {
        let degree = args.len();
        let size = table_size(p, width, degree)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| Error::InvalidParameter("cochain table too large".into()))?;
        let mut table = vec![0u8; size];
        let block = (p as usize).pow(width as u32);
        let idx = args.iter().rev().fold(0, |acc, a| acc * block + code(p, a));
        table[idx] = 1;
        Cochain::from_table(p, width, degree, table)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    /// `z ↦ f(P z_1, …, P z_m)`.
    pub fn precomposed(&self, matrix: &[Vec<u8>]) -> Cochain {
        let pre = match &self.pre {
            Some(old) => mat_mul(self.p, old, matrix),
            None => matrix.to_vec(),
        };
        Cochain {
            pre: Some(pre),
            ..self.clone()
        }
    }

    pub fn eval(&self, args: &[&[u8]]) -> Result<u8> {
        if args.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.width) {
            return Err(Error::DimensionMismatch {
                expected: self.width,
                got: a.len(),
            });
        }
        let moved: Vec<Vec<u8>> = match &self.pre {
            Some(m) => args.iter().map(|a| mat_vec(self.p, m, a)).collect(),
            None => args.iter().map(|a| a.to_vec()).collect(),
        };
        if moved.iter().any(|a| a.iter().all(|&c| c == 0)) {
            return Ok(match self.values {
                Values::Constant(c) => c,
                _ => 0,
            });
        }
        let codes = moved.iter().map(|a| code(self.p, a));
        Ok(match &self.values {
            Values::Constant(c) => *c,
            Values::Table(t) => {
                let block = (self.p as usize).pow(self.width as u32);
                t[codes.rev().fold(0, |acc, c| acc * block + c)]
            }
            Values::Hashed(seed) => {
                let h = codes.fold(splitmix(*seed), |acc, c| splitmix(acc ^ c as u64));
                (h % u64::from(self.p)) as u8
            }
        })
    }
}

/// `f_1 ⊗ ⋯ ⊗ f_k`, one block cochain per slot of `T_0 = K_0^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryTensor {
    pub factors: Vec<Cochain>,
}

impl ElementaryTensor {
    pub fn new(factors: Vec<Cochain>) -> ElementaryTensor {
        ElementaryTensor { factors }
    }

    /// `1 ⊗ ⋯ ⊗ f ⊗ ⋯ ⊗ 1` with `f` in `slot`.
    pub fn single(slots: usize, slot: usize, f: Cochain) -> ElementaryTensor {
        let one = Cochain::constant(f.p(), f.width(), 1);
        let mut factors = vec![one; slots];
        factors[slot] = f;
        ElementaryTensor { factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(Cochain::degree).sum()
    }
}

/// `η(f_1 ⊗ ⋯ ⊗ f_k)(z_1, …, z_m) = Π_j f_j(block j of the j-th slice)`,
/// slicing `z_1, …, z_m` front to back by the degrees of the factors.
pub fn cross_product_eval(t: &ElementaryTensor, z: &[Vec<u8>]) -> Result<u8> {
    if z.len() != t.degree() {
        return Err(Error::DimensionMismatch {
            expected: t.degree(),
            got: z.len(),
        });
    }
    let Some(first) = t.factors.first() else {
        return Ok(1);
    };
    let (p, w) = (first.p(), first.width());
    let len = w * t.factors.len();
    if let Some(bad) = z.iter().find(|v| v.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            got: bad.len(),
        });
    }
    let mut acc = 1u32;
    let mut offset = 0;
    for (j, f) in t.factors.iter().enumerate() {
        let args: Vec<&[u8]> = z[offset..offset + f.degree()]
            .iter()
            .map(|v| &v[j * w..(j + 1) * w])
            .collect();
        acc = acc * u32::from(f.eval(&args)?) % u32::from(p);
        offset += f.degree();
    }
    Ok(acc as u8)
}

/// `q · (f_1 ⊗ ⋯ ⊗ f_k)`: slot `σ(j)` receives `f_j ∘ A^{-a_{σ(j)}}`.
pub fn act_on_cochain(w: &WreathGroup, q: &WreathElement, t: &ElementaryTensor) -> ElementaryTensor {
    let p = w.params().p();
    let mut factors = t.factors.clone();
    for (j, f) in t.factors.iter().enumerate() {
        let dst = q.top[j];
        let back = (p - q.base[dst] % p) % p;
        factors[dst] = if back == 0 || f.degree() == 0 {
            f.clone()
        } else {
            f.precomposed(w.block_power(back))
        };
    }
    ElementaryTensor { factors }
}

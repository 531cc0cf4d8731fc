//! `FPMX` binary matrix files.
//!
//! Layout (little-endian throughout):
//!
//! | bytes | content                                  |
//! |-------|------------------------------------------|
//! | 4     | magic `b"FPMX"`                          |
//! | 1     | format version (`1`)                     |
//! | 1     | `p`                                      |
//! | 8     | rows, `u64`                              |
//! | 8     | cols, `u64`                              |
//! | ...   | payload, one padded row after another    |
//!
//! For `p = 2` each row is `ceil(cols / 64)` little-endian `u64` words, bit
//! `c % 64` of word `c / 64` holding column `c`; unused high bits are zero.
//! For odd `p` each row is `cols` bytes, one residue per byte.

use std::io::{Read, Write};

use super::fp::{Field, FpMatrix};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"FPMX";
pub const VERSION: u8 = 1;

pub fn write_fpmx<W: Write>(m: &FpMatrix, mut w: W) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[VERSION, m.p()])?;
    w.write_all(&(m.rows() as u64).to_le_bytes())?;
    w.write_all(&(m.cols() as u64).to_le_bytes())?;
    if let Some(words) = m.raw_bits() {
        let mut buf = Vec::with_capacity(words.len() * 8);
        for word in words {
            buf.extend_from_slice(&word.to_le_bytes());
        }
        w.write_all(&buf)?;
    } else if let Some(bytes) = m.raw_bytes() {
        w.write_all(bytes)?;
    }
    Ok(())
}

pub fn read_fpmx<R: Read>(mut r: R) -> Result<FpMatrix> {
    let mut header = [0u8; 22];
    r.read_exact(&mut header)?;
    if &header[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    if header[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", header[4])));
    }
    let field = Field::new(header[5]).map_err(|_| Error::Format(format!("bad modulus {}", header[5])))?;
    let rows = u64::from_le_bytes(header[6..14].try_into().unwrap()) as usize;
    let cols = u64::from_le_bytes(header[14..22].try_into().unwrap()) as usize;
    let m = if field.p() == 2 {
        let stride = cols.div_ceil(64);
        let mut buf = vec![0u8; rows * stride * 8];
        r.read_exact(&mut buf)?;
        let words: Vec<u64> = buf
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let tail = cols % 64;
        if tail != 0 && (0..rows).any(|row| words[row * stride + stride - 1] >> tail != 0) {
            return Err(Error::Format("nonzero row padding".into()));
        }
        FpMatrix::from_raw_bits(field, rows, cols, words)
    } else {
        let mut buf = vec![0u8; rows * cols];
        r.read_exact(&mut buf)?;
        if buf.iter().any(|&v| v >= field.p()) {
            return Err(Error::Format("residue out of range".into()));
        }
        FpMatrix::from_raw_bytes(field, rows, cols, buf)
    };
    let mut probe = [0u8; 1];
    if r.read(&mut probe)? != 0 {
        return Err(Error::Format("trailing bytes".into()));
    }
    Ok(m)
}

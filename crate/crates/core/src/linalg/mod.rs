//! Exact linear algebra: integer matrices and lattices for the filtration,
//! packed `F_p` matrices for resolutions.

pub mod fp;
pub mod fpmx;
pub mod int;
pub mod lattice;

pub use fp::{is_prime, Echelon, Field, FpMatrix};
pub use fpmx::{read_fpmx, write_fpmx};
pub use int::{ext_gcd, IntMatrix};
pub use lattice::{lattice_index, Lattice};

/// Column HNF `(H, U)` with `H = A U`.
pub fn hnf(a: &IntMatrix) -> crate::Result<(IntMatrix, IntMatrix)> {
    a.hnf()
}

/// Smith form `(D, S, T)` with `D = S A T`.
pub fn snf(a: &IntMatrix) -> crate::Result<(IntMatrix, IntMatrix, IntMatrix)> {
    a.snf()
}

pub fn lattice_from_columns(a: &IntMatrix) -> crate::Result<Lattice> {
    Lattice::from_columns(a)
}

pub fn lattice_contains(l: &Lattice, v: &[i128]) -> crate::Result<bool> {
    l.contains(v)
}

pub fn fp_kernel(a: &FpMatrix) -> FpMatrix {
    a.kernel()
}

pub fn fp_rank(a: &FpMatrix) -> usize {
    a.rank()
}

pub fn fp_solve(a: &FpMatrix, b: &[u8]) -> crate::Result<Option<Vec<u8>>> {
    a.solve(b)
}

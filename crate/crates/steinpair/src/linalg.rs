//! Dense linear algebra over prime fields F_p (p < 256).
//!
//! Everything here is exact modular arithmetic; no floating point enters the
//! crate. `DenseMat` doubles as the element type of the projective elementary
//! groups, so it hashes cheaply and keeps a canonical representation (entries
//! are always reduced mod p).

use crate::error::Error;
use crate::Result;

/// Row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DenseMat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u8>,
}

impl DenseMat {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        DenseMat { p, rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.a[r * self.cols + c] = (v % self.p) as u8;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.a.iter().enumerate().all(|(k, &v)| {
                let (r, c) = (k / self.cols, k % self.cols);
                v == u8::from(r == c)
            })
    }

    pub fn mul(&self, rhs: &DenseMat) -> DenseMat {
        assert_eq!(self.cols, rhs.rows, "DenseMat::mul shape");
        assert_eq!(self.p, rhs.p);
        let mut out = DenseMat::zero(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = self.at(i, k) as u32;
                if s == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = out.a[i * rhs.cols + j] as u32 + s * rhs.at(k, j) as u32;
                    out.a[i * rhs.cols + j] = (t % self.p) as u8;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &DenseMat) -> DenseMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(rhs.a.iter()) {
            *x = ((*x as u32 + *y as u32) % self.p) as u8;
        }
        out
    }

    pub fn sub(&self, rhs: &DenseMat) -> DenseMat {
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(rhs.a.iter()) {
            *x = ((*x as u32 + self.p - *y as u32) % self.p) as u8;
        }
        out
    }

    pub fn neg(&self) -> DenseMat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = ((self.p - *x as u32) % self.p) as u8;
        }
        out
    }

    pub fn scale(&self, c: u32) -> DenseMat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = ((*x as u32 * c) % self.p) as u8;
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0u8; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u32;
            for j in 0..self.cols {
                acc += self.at(i, j) as u32 * v[j] as u32;
            }
            out[i] = (acc % self.p) as u8;
        }
        out
    }

    /// Gaussian inverse; errors when singular.
    pub fn inverse(&self) -> Result<DenseMat> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let p = self.p;
        let mut a = self.clone();
        let mut inv = DenseMat::identity(p, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.at(r, col) != 0).ok_or(Error::NotInvertible)?;
            if pivot != col {
                for j in 0..n {
                    a.a.swap(pivot * n + j, col * n + j);
                    inv.a.swap(pivot * n + j, col * n + j);
                }
            }
            let inv_piv = mod_inverse(a.at(col, col) as u32, p).ok_or(Error::NotInvertible)?;
            for j in 0..n {
                a.a[col * n + j] = (a.at(col, j) as u32 * inv_piv % p) as u8;
                inv.a[col * n + j] = (inv.at(col, j) as u32 * inv_piv % p) as u8;
            }
            for r in 0..n {
                if r == col || a.at(r, col) == 0 {
                    continue;
                }
                let f = a.at(r, col) as u32;
                for j in 0..n {
                    let x = (a.at(r, j) as u32 + (p - f) * a.at(col, j) as u32) % p;
                    a.a[r * n + j] = x as u8;
                    let y = (inv.at(r, j) as u32 + (p - f) * inv.at(col, j) as u32) % p;
                    inv.a[r * n + j] = y as u8;
                }
            }
        }
        Ok(inv)
    }
}

/// Inverse of `a` modulo prime `p`.
pub fn mod_inverse(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // p is tiny here; scan.
    (1..p).find(|&b| a * b % p == 1)
}

/// Incrementally built row space over F_p, kept in reduced row echelon form
/// (every pivot column is zero in all other rows), so membership reduction is
/// order-independent.
pub struct SpanSolver {
    pub p: u32,
    pub width: usize,
    /// (reduced row, pivot column)
    rows: Vec<(Vec<u8>, usize)>,
}

impl SpanSolver {
    pub fn new(p: u32, width: usize) -> Self {
        SpanSolver { p, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Echelon rows currently spanning the space.
    pub fn basis_rows(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|(r, _)| r.clone()).collect()
    }

    fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, piv) in &self.rows {
            let c = v[*piv] as u32;
            if c == 0 {
                continue;
            }
            for j in 0..self.width {
                v[j] = ((v[j] as u32 + (p - c % p) * row[j] as u32) % p) as u8;
            }
        }
        v
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut rem = self.reduce(v);
        let piv = match rem.iter().position(|&x| x != 0) {
            Some(c) => c,
            None => return false,
        };
        let inv = mod_inverse(rem[piv] as u32, self.p).expect("prime field pivot");
        for x in rem.iter_mut() {
            *x = ((*x as u32) * inv % self.p) as u8;
        }
        // clear the new pivot column from existing rows to stay fully reduced
        for (row, _) in self.rows.iter_mut() {
            let c = row[piv] as u32;
            if c != 0 {
                for j in 0..self.width {
                    row[j] = ((row[j] as u32 + (self.p - c) * rem[j] as u32) % self.p) as u8;
                }
            }
        }
        self.rows.push((rem, piv));
        self.rows.sort_by_key(|(_, piv)| *piv);
        true
    }

    /// Membership test.
    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Solves x * B = v for a fixed list of basis rows B (not necessarily
/// echelon), by carrying an augmented identity through elimination once.
pub struct CoordSolver {
    p: u32,
    width: usize,
    n_basis: usize,
    /// echelon rows augmented with provenance over the original basis
    ech: Vec<(Vec<u8>, usize, Vec<u8>)>,
}

impl CoordSolver {
    /// `basis` rows must be linearly independent.
    pub fn new(p: u32, width: usize, basis: &[Vec<u8>]) -> Result<Self> {
        let mut ech: Vec<(Vec<u8>, usize, Vec<u8>)> = Vec::new();
        for (bi, b) in basis.iter().enumerate() {
            let mut v = b.clone();
            let mut combo = vec![0u8; basis.len()];
            combo[bi] = 1;
            for (row, piv, rc) in &ech {
                let c = v[*piv] as u32;
                if c == 0 {
                    continue;
                }
                for j in 0..width {
                    v[j] = ((v[j] as u32 + (p - c) * row[j] as u32) % p) as u8;
                }
                for j in 0..basis.len() {
                    combo[j] = ((combo[j] as u32 + (p - c) * rc[j] as u32) % p) as u8;
                }
            }
            let piv = v
                .iter()
                .position(|&x| x != 0)
                .ok_or_else(|| Error::Shape("CoordSolver: dependent basis".into()))?;
            let inv = mod_inverse(v[piv] as u32, p).unwrap();
            for x in v.iter_mut() {
                *x = (*x as u32 * inv % p) as u8;
            }
            for x in combo.iter_mut() {
                *x = (*x as u32 * inv % p) as u8;
            }
            // keep fully reduced: clear the new pivot from existing rows
            for (row, _, rc) in ech.iter_mut() {
                let c = row[piv] as u32;
                if c != 0 {
                    for j in 0..width {
                        row[j] = ((row[j] as u32 + (p - c) * v[j] as u32) % p) as u8;
                    }
                    for j in 0..basis.len() {
                        rc[j] = ((rc[j] as u32 + (p - c) * combo[j] as u32) % p) as u8;
                    }
                }
            }
            ech.push((v, piv, combo));
        }
        ech.sort_by_key(|(_, piv, _)| *piv);
        Ok(CoordSolver { p, width, n_basis: basis.len(), ech })
    }

    /// Coordinates of `v` over the basis, or None when outside the span.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let p = self.p;
        let mut v = v.to_vec();
        let mut out = vec![0u8; self.n_basis];
        for (row, piv, combo) in &self.ech {
            let c = v[*piv] as u32;
            if c == 0 {
                continue;
            }
            for j in 0..self.width {
                v[j] = ((v[j] as u32 + (p - c) * row[j] as u32) % p) as u8;
            }
            for j in 0..self.n_basis {
                out[j] = ((out[j] as u32 + c * combo[j] as u32) % p) as u8;
            }
        }
        if v.iter().all(|&x| x == 0) {
            Some(out)
        } else {
            None
        }
    }
}

/// Nullspace basis of the linear map given by `rows` (as a matrix acting on
/// column vectors of length `width` from the left: rows are functionals).
pub fn nullspace(p: u32, width: usize, rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    // Gaussian elimination on the functional matrix.
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..width {
        let pr = (rank..m.len()).find(|&r| m[r][col] != 0);
        let Some(pr) = pr else { continue };
        m.swap(rank, pr);
        let inv = mod_inverse(m[rank][col] as u32, p).unwrap();
        for j in 0..width {
            m[rank][j] = (m[rank][j] as u32 * inv % p) as u8;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col] as u32;
                for j in 0..width {
                    m[r][j] = ((m[r][j] as u32 + (p - f) * m[rank][j] as u32) % p) as u8;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![0u8; width];
        v[fc] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot row r: x_pc + sum coeff*free = 0
            let c = m[r][fc] as u32;
            v[pc] = ((p - c % p) % p) as u8;
        }
        basis.push(v);
    }
    basis
}

/// All vectors of length `n` with entries in 0..p (lexicographic order).
pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<u8>> {
    let total = (p as u64).checked_pow(n as u32).expect("vector space too large");
    let mut out = Vec::with_capacity(total as usize);
    let mut v = vec![0u8; n];
    loop {
        out.push(v.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (v[i] as u32) + 1 < p {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip_f5() {
        let mut m = DenseMat::zero(5, 3, 3);
        let vals = [1, 2, 0, 0, 1, 3, 4, 0, 2];
        m.a = vals.iter().map(|&x| x as u8).collect();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_detected() {
        let mut m = DenseMat::zero(2, 2, 2);
        m.set(0, 0, 1);
        m.set(0, 1, 1);
        m.set(1, 0, 1);
        m.set(1, 1, 1);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn coord_solver_expresses_vectors() {
        let basis = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let cs = CoordSolver::new(2, 3, &basis).unwrap();
        assert_eq!(cs.coords(&[1, 0, 1]), Some(vec![1, 1]));
        assert_eq!(cs.coords(&[1, 1, 0]), Some(vec![1, 0]));
        assert_eq!(cs.coords(&[1, 0, 0]), None);
    }

    #[test]
    fn nullspace_of_rank_one_map() {
        // single functional x + 2y over F_3 on width 2: kernel dim 1
        let ns = nullspace(3, 2, &[vec![1, 2]]);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!((v[0] as u32 + 2 * v[1] as u32) % 3, 0);
    }

    #[test]
    fn all_vectors_counts() {
        assert_eq!(all_vectors(2, 3).len(), 8);
        assert_eq!(all_vectors(3, 2).len(), 9);
        assert_eq!(all_vectors(2, 0).len(), 1);
    }
}

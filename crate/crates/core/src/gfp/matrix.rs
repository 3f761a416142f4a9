//! Dense vectors and matrices over GF(p) with exact elimination routines.

use super::{add_mod, inv_mod, is_prime, mul_mod, neg_mod, sub_mod, Fp};

/// A vector over GF(p). Entries are stored reduced; all entries share the
/// modulus carried by the container.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u8,
    coords: Vec<u8>,
}

impl FpVector {
    pub fn new(p: u8, coords: Vec<u8>) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        let coords = coords.into_iter().map(|c| c % p).collect();
        FpVector { p, coords }
    }

    pub fn zeros(p: u8, n: usize) -> Self {
        FpVector::new(p, vec![0; n])
    }

    /// Standard basis vector e_i.
    pub fn basis(p: u8, n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut coords = vec![0; n];
        coords[i] = 1;
        FpVector::new(p, coords)
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> Fp {
        Fp::new(self.coords[i] as u64, self.p)
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.p, other.p);
        assert_eq!(self.len(), other.len());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        FpVector { p: self.p, coords }
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.p, other.p);
        assert_eq!(self.len(), other.len());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| sub_mod(a, b, self.p))
            .collect();
        FpVector { p: self.p, coords }
    }

    pub fn neg(&self) -> FpVector {
        let coords = self.coords.iter().map(|&a| neg_mod(a, self.p)).collect();
        FpVector { p: self.p, coords }
    }

    pub fn scale(&self, c: u8) -> FpVector {
        let c = c % self.p;
        let coords = self.coords.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        FpVector { p: self.p, coords }
    }

    /// Lexicographic integer encoding, most significant coordinate first.
    pub fn encode(&self) -> u64 {
        self.coords
            .iter()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// Inverse of `encode`.
    pub fn decode(p: u8, n: usize, mut code: u64) -> Self {
        let mut coords = vec![0u8; n];
        for i in (0..n).rev() {
            coords[i] = (code % p as u64) as u8;
            code /= p as u64;
        }
        FpVector::new(p, coords)
    }
}

/// A rectangular matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMatrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u8, rows: &[Vec<u8>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let mut m = FpMatrix::zeros(p, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_fn(p: u8, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut m = FpMatrix::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        Fp::new(self.at(i, j) as u64, self.p)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> FpVector {
        let coords = (0..self.rows).map(|i| self.at(i, j)).collect();
        FpVector::new(self.p, coords)
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.p, self.rows, self.cols), (other.p, other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.p, self.rows, self.cols), (other.p, other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub_mod(a, b, self.p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_mod(out.at(i, j), mul_mod(a, other.at(k, j), self.p), self.p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &FpVector) -> FpVector {
        assert_eq!(self.p, v.modulus());
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let mut out = vec![0u8; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u16;
            let row = self.row(i);
            for (a, &x) in row.iter().zip(v.coords()) {
                acc += *a as u16 * x as u16;
            }
            out[i] = (acc % self.p as u16) as u8;
        }
        FpVector::new(self.p, out)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    /// Reduced row-echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pivot_row) = (r..m.rows).find(|&i| m.at(i, col) != 0) else {
                continue;
            };
            m.swap_rows(r, pivot_row);
            let inv = inv_mod(m.at(r, col), p);
            for j in col..m.cols {
                m.set(r, j, mul_mod(m.at(r, j), inv, p));
            }
            for i in 0..m.rows {
                if i != r && m.at(i, col) != 0 {
                    let f = m.at(i, col);
                    for j in col..m.cols {
                        let v = sub_mod(m.at(i, j), mul_mod(f, m.at(r, j), p), p);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
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

    /// Rank over GF(p).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Exact inverse; `None` when the matrix is singular.
    /// Non-square input is a contract violation.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let p = self.p;
        // Augment with the identity and reduce.
        let mut aug = FpMatrix::zeros(p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.at(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let (red, pivots) = self.rref();
        let p = self.p;
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(red.at(r, f), p);
            }
            basis.push(FpVector::new(p, v));
        }
        basis
    }

    /// One solution x of Mx = rhs, if consistent.
    pub fn solve(&self, rhs: &FpVector) -> Option<FpVector> {
        assert_eq!(self.rows, rhs.len(), "dimension mismatch");
        let p = self.p;
        let mut aug = FpMatrix::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, rhs.coords()[i]);
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u8; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.at(r, self.cols);
        }
        Some(FpVector::new(p, x))
    }

    /// Lexicographic integer encoding of the entries, row-major.
    pub fn encode(&self) -> u128 {
        self.data
            .iter()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }
}

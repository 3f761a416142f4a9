//! Subspaces of GF(p)^n in reduced row-echelon canonical form.
//!
//! The canonical form (RREF basis, pivot columns ascending) is the unique
//! representative of a span, so subspace equality, hashing, and ordering all
//! work directly on the stored rows.

use super::{inv_mod, is_prime, mul_mod, sub_mod, FpMatrix, FpVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u8,
    ambient: usize,
    /// RREF rows; pivots strictly ascending. Invariant: never a zero row.
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical subspace spanned by `vectors`. Zero vectors and dependent
    /// rows collapse; equal spans yield identical representations.
    pub fn from_vectors(p: u8, ambient: usize, vectors: &[FpVector]) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        for v in vectors {
            assert_eq!(v.modulus(), p, "mixed moduli");
            assert_eq!(v.len(), ambient, "dimension mismatch");
        }
        let mut s = Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        };
        for v in vectors {
            s.insert(v.coords());
        }
        s
    }

    pub fn zero(p: u8, ambient: usize) -> Self {
        Subspace::from_vectors(p, ambient, &[])
    }

    pub fn full(p: u8, ambient: usize) -> Self {
        let basis: Vec<FpVector> = (0..ambient).map(|i| FpVector::basis(p, ambient, i)).collect();
        Subspace::from_vectors(p, ambient, &basis)
    }

    /// Grow the span in place by one vector, keeping RREF canonical form.
    /// Returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        let p = self.p;
        let mut v = v.to_vec();
        for c in v.iter_mut() {
            *c %= p;
        }
        // Reduce against existing rows.
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = v[pc];
            if f != 0 {
                for j in 0..self.ambient {
                    v[j] = sub_mod(v[j], mul_mod(f, row[j], p), p);
                }
            }
        }
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        // Normalize the new row.
        let inv = inv_mod(v[pivot], p);
        for c in v.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
        // Clear the new pivot column from the old rows.
        for row in self.basis.iter_mut() {
            let f = row[pivot];
            if f != 0 {
                for j in 0..self.ambient {
                    row[j] = sub_mod(row[j], mul_mod(f, v[j], p), p);
                }
            }
        }
        let pos = self.pivots.iter().position(|&pc| pc > pivot).unwrap_or(self.pivots.len());
        self.pivots.insert(pos, pivot);
        self.basis.insert(pos, v);
        true
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> Vec<FpVector> {
        self.basis
            .iter()
            .map(|r| FpVector::new(self.p, r.clone()))
            .collect()
    }

    pub fn basis_rows(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Canonical coset representative of v + self: eliminate the pivot
    /// coordinates. Two vectors reduce identically iff they lie in the same
    /// coset.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        assert_eq!(v.modulus(), self.p);
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        let p = self.p;
        let mut out = v.coords().to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = out[pc];
            if f != 0 {
                for j in 0..self.ambient {
                    out[j] = sub_mod(out[j], mul_mod(f, row[j], p), p);
                }
            }
        }
        FpVector::new(p, out)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!((self.p, self.ambient), (other.p, other.ambient));
        let mut s = self.clone();
        for row in &other.basis {
            s.insert(row);
        }
        s
    }

    /// Basis of the intersection, canonicalized.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!((self.p, self.ambient), (other.p, other.ambient));
        let (ka, kb) = (self.dim(), other.dim());
        if ka == 0 || kb == 0 {
            return Subspace::zero(self.p, self.ambient);
        }
        // x = λ·A = μ·B  ⇔  (λ, μ) in the kernel of [Aᵀ | −Bᵀ].
        let mut m = FpMatrix::zeros(self.p, self.ambient, ka + kb);
        for (c, row) in self.basis.iter().enumerate() {
            for j in 0..self.ambient {
                m.set(j, c, row[j]);
            }
        }
        for (c, row) in other.basis.iter().enumerate() {
            for j in 0..self.ambient {
                m.set(j, ka + c, super::neg_mod(row[j] % self.p, self.p));
            }
        }
        let mut vectors = Vec::new();
        for k in m.kernel_basis() {
            let mut x = vec![0u8; self.ambient];
            for (c, row) in self.basis.iter().enumerate() {
                let lam = k.coords()[c];
                if lam != 0 {
                    for j in 0..self.ambient {
                        x[j] = super::add_mod(x[j], mul_mod(lam, row[j], self.p), self.p);
                    }
                }
            }
            vectors.push(FpVector::new(self.p, x));
        }
        Subspace::from_vectors(self.p, self.ambient, &vectors)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Number of vectors in the subspace, p^dim.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.dim() as u32)
    }

    /// All p^dim elements, in the deterministic order given by coefficient
    /// counting over the canonical basis. Intended for small dimensions.
    pub fn elements(&self) -> impl Iterator<Item = FpVector> + '_ {
        let total = self.order() as u64;
        (0..total).map(move |code| {
            let coeffs = FpVector::decode(self.p, self.dim(), code);
            let mut out = vec![0u8; self.ambient];
            for (c, row) in coeffs.coords().iter().zip(&self.basis) {
                if *c != 0 {
                    for j in 0..self.ambient {
                        out[j] = super::add_mod(out[j], mul_mod(*c, row[j], self.p), self.p);
                    }
                }
            }
            FpVector::new(self.p, out)
        })
    }

    /// Stable byte encoding of the canonical form, usable as a dedup key.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.p, self.ambient as u8, self.basis.len() as u8];
        for row in &self.basis {
            out.extend_from_slice(row);
        }
        out
    }

    /// Construct directly from rows already known to be in RREF canonical
    /// form with the given pivots (used by the enumeration stream).
    pub(crate) fn from_canonical_rows(p: u8, ambient: usize, rows: Vec<Vec<u8>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        Subspace {
            p,
            ambient,
            basis: rows,
            pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_space_canonical_gf2() {
        let s = Subspace::from_vectors(
            2,
            2,
            &[FpVector::new(2, vec![1, 0]), FpVector::new(2, vec![0, 1])],
        );
        assert_eq!(s, Subspace::full(2, 2));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn zero_vector_discarded() {
        let s = Subspace::from_vectors(
            2,
            2,
            &[FpVector::new(2, vec![1, 1]), FpVector::new(2, vec![0, 0])],
        );
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0].coords(), &[1, 1]);
    }

    #[test]
    fn scalar_multiple_rows_collapse_gf5() {
        let a = Subspace::from_vectors(
            5,
            2,
            &[FpVector::new(5, vec![1, 2]), FpVector::new(5, vec![2, 4])],
        );
        let b = Subspace::from_vectors(5, 2, &[FpVector::new(5, vec![1, 2])]);
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_is_coset_canonical() {
        let s = Subspace::from_vectors(3, 3, &[FpVector::new(3, vec![1, 2, 0])]);
        let v = FpVector::new(3, vec![2, 1, 1]);
        let w = v.add(&FpVector::new(3, vec![1, 2, 0]));
        assert_eq!(s.reduce(&v), s.reduce(&w));
        assert!(s.reduce(&v).coords()[0] == 0);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(
            2,
            3,
            &[FpVector::new(2, vec![1, 0, 0]), FpVector::new(2, vec![0, 1, 0])],
        );
        let b = Subspace::from_vectors(
            2,
            3,
            &[FpVector::new(2, vec![0, 1, 0]), FpVector::new(2, vec![0, 0, 1])],
        );
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert_eq!(i.basis()[0].coords(), &[0, 1, 0]);
        assert_eq!(a.intersection_dim(&b), 1);
    }

    #[test]
    fn elements_count_and_membership() {
        let s = Subspace::from_vectors(
            3,
            3,
            &[FpVector::new(3, vec![1, 0, 2]), FpVector::new(3, vec![0, 1, 1])],
        );
        let els: Vec<_> = s.elements().collect();
        assert_eq!(els.len(), 9);
        for v in &els {
            assert!(s.contains(v));
        }
    }
}

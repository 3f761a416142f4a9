//! Spread sets: the matrix-space view of a pre-semifield.
//!
//! The spread set of F is the basis M_i = L_{e_i} of left multiplications;
//! the defining property is that every nonzero GF(p)-linear combination is
//! invertible. Conversion in both directions is exact and the validating
//! constructor reports the offending combination on failure.

use super::{PreSemifield, SemifieldError};
use crate::gfp::{FpMatrix, FpVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadSet {
    p: u8,
    n: usize,
    mats: Vec<FpMatrix>,
}

impl SpreadSet {
    /// Validating constructor: n square matrices over GF(p) such that every
    /// nonzero combination is invertible.
    pub fn new(p: u8, n: usize, mats: Vec<FpMatrix>) -> Result<Self, SemifieldError> {
        assert_eq!(mats.len(), n, "need exactly n matrices");
        for m in &mats {
            assert_eq!(m.modulus(), p);
            assert_eq!((m.nrows(), m.ncols()), (n, n), "matrices must be n×n");
        }
        let s = SpreadSet { p, n, mats };
        s.validate()?;
        Ok(s)
    }

    /// The spread set of a pre-semifield (callers should have verified the
    /// zero-divisor condition; the matrices here are exactly the L_{e_i}).
    pub fn from_presemifield(f: &PreSemifield) -> Self {
        let n = f.n();
        let mats = (0..n)
            .map(|i| f.left_matrix(&FpVector::basis(f.p(), n, i)))
            .collect();
        SpreadSet {
            p: f.p(),
            n,
            mats,
        }
    }

    pub fn mats(&self) -> &[FpMatrix] {
        &self.mats
    }

    /// Check that every nonzero combination is invertible; on failure return
    /// the offending coefficient vector.
    pub fn validate(&self) -> Result<(), SemifieldError> {
        let total = (self.p as u64).pow(self.n as u32);
        for code in 1..total {
            let coeffs = FpVector::decode(self.p, self.n, code);
            let mut m = FpMatrix::zeros(self.p, self.n, self.n);
            for (i, &c) in coeffs.coords().iter().enumerate() {
                if c != 0 {
                    m = m.add(&self.mats[i].scale(c));
                }
            }
            if !m.is_invertible() {
                return Err(SemifieldError::InvalidSpreadSet {
                    combination: coeffs.coords().to_vec(),
                });
            }
        }
        Ok(())
    }

    /// Rebuild the pre-semifield: cube[i][j][k] = (M_i)_{k,j}. Round-trips
    /// with `from_presemifield` exactly.
    pub fn to_presemifield(&self) -> PreSemifield {
        let n = self.n;
        let mut cube = vec![0u8; n * n * n];
        for (i, m) in self.mats.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    cube[(i * n + j) * n + k] = m.at(k, j);
                }
            }
        }
        PreSemifield::from_cube(self.p, n, cube)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::make_field;

    #[test]
    fn gf4_spread_set() {
        let f = make_field(2, 2, &[1, 1, 1]).unwrap();
        let s = SpreadSet::from_presemifield(f.pre());
        assert_eq!(s.mats()[0], FpMatrix::identity(2, 2));
        assert_eq!(s.mats()[1], FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]));
        assert!(s.validate().is_ok());
    }

    #[test]
    fn identity_first_when_e0_is_identity() {
        let f = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        let s = SpreadSet::from_presemifield(f.pre());
        assert_eq!(s.mats()[0], FpMatrix::identity(3, 3));
    }

    #[test]
    fn round_trip_on_fields() {
        for (p, n, poly) in [(2u8, 3usize, vec![1u8, 1, 0, 1]), (3, 3, vec![2, 2, 0, 1])] {
            let f = make_field(p, n, &poly).unwrap();
            let s = SpreadSet::from_presemifield(f.pre());
            assert_eq!(&s.to_presemifield(), f.pre());
        }
    }

    #[test]
    fn invalid_spread_set_reports_combination() {
        // Identity plus itself: the combination (1,1) sums to 0 over GF(2)...
        // actually take M2 = I so that I + M2 = 0 is singular.
        let err = SpreadSet::new(
            2,
            2,
            vec![FpMatrix::identity(2, 2), FpMatrix::identity(2, 2)],
        )
        .unwrap_err();
        match err {
            SemifieldError::InvalidSpreadSet { combination } => {
                assert_eq!(combination, vec![1, 1]);
            }
            other => panic!("unexpected error {other}"),
        }
    }
}

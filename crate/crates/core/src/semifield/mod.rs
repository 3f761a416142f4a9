//! Finite pre-semifields and semifields over GF(p).
//!
//! A pre-semifield is GF(p)^n with a bilinear multiplication, stored as a
//! structure-constant cube c[i][j][k] with e_i ∗ e_j = Σ_k c[i][j][k] e_k.
//! Keeping the cube as the canonical representation makes biadditivity
//! structural; the zero-divisor condition is the only thing left to verify.

mod field;
mod format;
mod nuclei;
mod spread;

pub use field::{albert_parameter_scan, default_poly, make_albert, make_field, DEFAULT_POLYS};
pub use format::{
    canonical_json, load_semifield, semifield_to_json, FormatError, LoadedSemifield, SemifieldFile,
};
pub use nuclei::SeminucleusReport;
pub use spread::SpreadSet;

use crate::gfp::{mul_mod, FpMatrix, FpVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemifieldError {
    #[error("the zero element was rejected (a principal isotope needs a nonzero base point)")]
    ZeroBasePoint,
    #[error("multiplication has zero divisors: {0}")]
    ZeroDivisors(String),
    #[error("polynomial is not monic of the requested degree")]
    BadPolynomial,
    #[error("polynomial is reducible over GF(p)")]
    ReduciblePolynomial,
    #[error("frobenius exponent must be nonzero mod n")]
    TrivialAutomorphism,
    #[error("twist element j must be nonzero")]
    ZeroTwist,
    #[error("invalid spread set: combination {combination:?} of the basis matrices is singular")]
    InvalidSpreadSet { combination: Vec<u8> },
}

/// Verdict of the zero-divisor check. Both one-sided conditions are
/// equivalent in finite dimension; computing them separately guards the
/// implementation, and `check_presemifield` asserts they agree.
#[derive(Debug, Clone)]
pub struct ZeroDivisorCheck {
    pub left_ok: bool,
    pub right_ok: bool,
    /// First a ≠ 0 with L_a singular, if any.
    pub left_witness: Option<FpVector>,
    /// First b ≠ 0 with R_b singular, if any.
    pub right_witness: Option<FpVector>,
}

impl ZeroDivisorCheck {
    pub fn ok(&self) -> bool {
        self.left_ok && self.right_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreSemifield {
    p: u8,
    n: usize,
    /// Flattened cube, index (i*n + j)*n + k.
    cube: Vec<u8>,
}

impl PreSemifield {
    pub fn from_cube(p: u8, n: usize, cube: Vec<u8>) -> Self {
        assert!(crate::gfp::is_prime(p), "modulus {p} is not prime");
        assert!(n >= 1, "dimension must be at least 1");
        assert_eq!(cube.len(), n * n * n, "cube has wrong size");
        let cube = cube.into_iter().map(|c| c % p).collect();
        PreSemifield { p, n, cube }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Field order p^n.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.n as u32)
    }

    pub fn cube(&self) -> &[u8] {
        &self.cube
    }

    #[inline]
    pub fn cube_at(&self, i: usize, j: usize, k: usize) -> u8 {
        self.cube[(i * self.n + j) * self.n + k]
    }

    /// Bilinear evaluation x ∗ y.
    pub fn multiply(&self, x: &FpVector, y: &FpVector) -> FpVector {
        assert_eq!(x.modulus(), self.p);
        assert_eq!(y.modulus(), self.p);
        assert_eq!(x.len(), self.n, "dimension mismatch");
        assert_eq!(y.len(), self.n, "dimension mismatch");
        let mut out = vec![0u8; self.n];
        self.multiply_into(x.coords(), y.coords(), &mut out);
        FpVector::new(self.p, out)
    }

    /// Allocation-free multiplication on raw coordinate slices.
    pub fn multiply_into(&self, x: &[u8], y: &[u8], out: &mut [u8]) {
        let n = self.n;
        let p = self.p;
        let mut acc = [0u16; 8];
        debug_assert!(n <= 8);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let f = mul_mod(xi, yj, p) as u16;
                let base = (i * n + j) * n;
                for k in 0..n {
                    acc[k] += f * self.cube[base + k] as u16;
                }
            }
        }
        for k in 0..n {
            out[k] = (acc[k] % p as u16) as u8;
        }
    }

    /// Left multiplication matrix: L_a · y = a ∗ y.
    pub fn left_matrix(&self, a: &FpVector) -> FpMatrix {
        assert_eq!(a.len(), self.n);
        let n = self.n;
        FpMatrix::from_fn(self.p, n, n, |k, j| {
            let mut acc = 0u16;
            for (i, &ai) in a.coords().iter().enumerate() {
                acc += ai as u16 * self.cube_at(i, j, k) as u16;
            }
            (acc % self.p as u16) as u8
        })
    }

    /// Right multiplication matrix: R_b · x = x ∗ b.
    pub fn right_matrix(&self, b: &FpVector) -> FpMatrix {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        FpMatrix::from_fn(self.p, n, n, |k, i| {
            let mut acc = 0u16;
            for (j, &bj) in b.coords().iter().enumerate() {
                acc += bj as u16 * self.cube_at(i, j, k) as u16;
            }
            (acc % self.p as u16) as u8
        })
    }

    /// Both multiplication matrices of a, (L_a, R_a).
    pub fn mult_matrices(&self, a: &FpVector) -> (FpMatrix, FpMatrix) {
        (self.left_matrix(a), self.right_matrix(a))
    }

    /// All p^n vectors of the underlying space, in code order.
    pub fn elements(&self) -> impl Iterator<Item = FpVector> + '_ {
        let total = (self.p as u64).pow(self.n as u32);
        (0..total).map(move |c| FpVector::decode(self.p, self.n, c))
    }

    /// Zero-divisor check: true iff L_a is invertible for every a ≠ 0,
    /// equivalently R_b invertible for every b ≠ 0. Both directions are
    /// computed and must agree.
    pub fn check_presemifield(&self) -> ZeroDivisorCheck {
        let mut left_witness = None;
        let mut right_witness = None;
        for v in self.elements().skip(1) {
            if left_witness.is_none() && !self.left_matrix(&v).is_invertible() {
                left_witness = Some(v.clone());
            }
            if right_witness.is_none() && !self.right_matrix(&v).is_invertible() {
                right_witness = Some(v.clone());
            }
            if left_witness.is_some() && right_witness.is_some() {
                break;
            }
        }
        let check = ZeroDivisorCheck {
            left_ok: left_witness.is_none(),
            right_ok: right_witness.is_none(),
            left_witness,
            right_witness,
        };
        assert_eq!(
            check.left_ok, check.right_ok,
            "one-sided zero-divisor checks disagree; this is a bug"
        );
        check
    }

    /// The unique two-sided identity, if one exists. Solves L_e = I as a
    /// linear system in e, then verifies R_e = I.
    pub fn find_identity(&self) -> Option<Semifield> {
        let n = self.n;
        // Unknowns e_t; equations: Σ_t e_t · cube[t][j][k] = δ_{jk}.
        let mut sys = FpMatrix::zeros(self.p, n * n, n);
        let mut rhs = vec![0u8; n * n];
        for j in 0..n {
            for k in 0..n {
                let row = j * n + k;
                for t in 0..n {
                    sys.set(row, t, self.cube_at(t, j, k));
                }
                rhs[row] = u8::from(j == k);
            }
        }
        let e = sys.solve(&FpVector::new(self.p, rhs))?;
        if !self.right_matrix(&e).eq(&FpMatrix::identity(self.p, n)) {
            return None;
        }
        debug_assert!(sys.kernel_basis().is_empty() || !self.check_presemifield().ok());
        Some(Semifield {
            pre: self.clone(),
            identity: e,
        })
    }

    /// The opposite multiplication a ∗ᵒᵖ b = b ∗ a (cube with the first two
    /// indices transposed). An involution.
    pub fn opposite(&self) -> PreSemifield {
        let n = self.n;
        let mut cube = vec![0u8; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    cube[(i * n + j) * n + k] = self.cube_at(j, i, k);
                }
            }
        }
        PreSemifield { p: self.p, n, cube }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (i + 1..n).all(|j| (0..n).all(|k| self.cube_at(i, j, k) == self.cube_at(j, i, k)))
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        let basis: Vec<FpVector> = (0..n).map(|i| FpVector::basis(self.p, n, i)).collect();
        for x in &basis {
            for y in &basis {
                let xy = self.multiply(x, y);
                for z in &basis {
                    if self.multiply(&xy, z) != self.multiply(x, &self.multiply(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Principal isotope at a single base point: x ∘ y = R_e⁻¹(x) ∗ L_e⁻¹(y),
    /// a semifield with identity e ∗ e.
    pub fn principal_isotope(&self, e: &FpVector) -> Result<Semifield, SemifieldError> {
        self.principal_isotope_pair(e, e)
    }

    /// General principal isotope: x ∘ y = R_b⁻¹(x) ∗ L_a⁻¹(y) with identity
    /// a ∗ b. Requires a, b ≠ 0 and no zero divisors.
    pub fn principal_isotope_pair(
        &self,
        a: &FpVector,
        b: &FpVector,
    ) -> Result<Semifield, SemifieldError> {
        if a.is_zero() || b.is_zero() {
            return Err(SemifieldError::ZeroBasePoint);
        }
        let rb = self.right_matrix(b);
        let la = self.left_matrix(a);
        let rb_inv = rb.inverse().ok_or_else(|| {
            SemifieldError::ZeroDivisors(format!("R_{:?} is singular", b.coords()))
        })?;
        let la_inv = la.inverse().ok_or_else(|| {
            SemifieldError::ZeroDivisors(format!("L_{:?} is singular", a.coords()))
        })?;
        let n = self.n;
        let mut cube = vec![0u8; n * n * n];
        for i in 0..n {
            let x = rb_inv.column(i);
            for j in 0..n {
                let y = la_inv.column(j);
                let prod = self.multiply(&x, &y);
                for k in 0..n {
                    cube[(i * n + j) * n + k] = prod.coords()[k];
                }
            }
        }
        let pre = PreSemifield {
            p: self.p,
            n,
            cube,
        };
        let identity = self.multiply(a, b);
        debug_assert_eq!(
            pre.left_matrix(&identity),
            FpMatrix::identity(self.p, n),
            "principal isotope identity law failed"
        );
        debug_assert_eq!(pre.right_matrix(&identity), FpMatrix::identity(self.p, n));
        Ok(Semifield { pre, identity })
    }
}

/// A pre-semifield together with its two-sided multiplicative identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semifield {
    pre: PreSemifield,
    identity: FpVector,
}

impl Semifield {
    /// Wrap a pre-semifield and a claimed identity, verifying the identity
    /// law on the basis.
    pub fn new(pre: PreSemifield, identity: FpVector) -> Self {
        let n = pre.n();
        assert_eq!(
            pre.left_matrix(&identity),
            FpMatrix::identity(pre.p(), n),
            "not a left identity"
        );
        assert_eq!(
            pre.right_matrix(&identity),
            FpMatrix::identity(pre.p(), n),
            "not a right identity"
        );
        Semifield { pre, identity }
    }

    pub fn pre(&self) -> &PreSemifield {
        &self.pre
    }

    pub fn identity(&self) -> &FpVector {
        &self.identity
    }

    pub fn p(&self) -> u8 {
        self.pre.p
    }

    pub fn n(&self) -> usize {
        self.pre.n
    }

    pub fn order(&self) -> u128 {
        self.pre.order()
    }

    pub fn multiply(&self, x: &FpVector, y: &FpVector) -> FpVector {
        self.pre.multiply(x, y)
    }

    /// The opposite semifield; the identity is unchanged.
    pub fn opposite(&self) -> Semifield {
        Semifield {
            pre: self.pre.opposite(),
            identity: self.identity.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.pre.is_commutative()
    }

    pub fn is_associative(&self) -> bool {
        self.pre.is_associative()
    }

    pub fn seminuclei(&self) -> SeminucleusReport {
        nuclei::seminuclei(self)
    }
}

//! Seminuclei of a semifield: the left, middle, and right associativity loci.
//!
//! Each seminucleus is the solution space of a linear system in z obtained by
//! linearizing the defining associativity constraint over the basis, e.g. for
//! the middle seminucleus Mid(F) = {z : x ∗ (z ∗ y) = (x ∗ z) ∗ y} the
//! condition L_x·L_z = L_{x∗z} for all basis x.

use super::Semifield;
use crate::gfp::{FpMatrix, FpVector, Subspace};

#[derive(Debug, Clone)]
pub struct SeminucleusReport {
    pub left: Subspace,
    pub mid: Subspace,
    pub right: Subspace,
    /// Closure of each seminucleus under ∗, re-verified on its basis.
    pub closed: (bool, bool, bool),
}

impl SeminucleusReport {
    /// Orders (|N_l|, |Mid|, |R|) as powers of p.
    pub fn orders(&self) -> (u128, u128, u128) {
        (self.left.order(), self.mid.order(), self.right.order())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left.dim(), self.mid.dim(), self.right.dim())
    }
}

pub(super) fn seminuclei(f: &Semifield) -> SeminucleusReport {
    let p = f.p();
    let n = f.n();
    let pre = f.pre();
    let basis: Vec<FpVector> = (0..n).map(|i| FpVector::basis(p, n, i)).collect();
    let lmats: Vec<FpMatrix> = basis.iter().map(|e| pre.left_matrix(e)).collect();
    let rmats: Vec<FpMatrix> = basis.iter().map(|e| pre.right_matrix(e)).collect();
    let prods: Vec<Vec<FpVector>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| pre.multiply(x, y)).collect())
        .collect();
    // L of a product e_i ∗ e_t expanded from the basis left matrices.
    let l_of = |v: &FpVector| -> FpMatrix {
        let mut m = FpMatrix::zeros(p, n, n);
        for (t, &c) in v.coords().iter().enumerate() {
            if c != 0 {
                m = m.add(&lmats[t].scale(c));
            }
        }
        m
    };
    let r_of = |v: &FpVector| -> FpMatrix {
        let mut m = FpMatrix::zeros(p, n, n);
        for (t, &c) in v.coords().iter().enumerate() {
            if c != 0 {
                m = m.add(&rmats[t].scale(c));
            }
        }
        m
    };

    // Middle: for all i, L_{e_i}·L_z − L_{e_i ∗ z} = 0, linear in z.
    let mid = solve_nucleus(p, n, |i, t| {
        lmats[i].mul(&lmats[t]).sub(&l_of(&prods[i][t]))
    });
    // Left: for all i, L_z·L_{e_i} − L_{z ∗ e_i} = 0.
    let left = solve_nucleus(p, n, |i, t| {
        lmats[t].mul(&lmats[i]).sub(&l_of(&prods[t][i]))
    });
    // Right: for all j, R_z·R_{e_j} − R_{e_j ∗ z} = 0.
    let right = solve_nucleus(p, n, |j, t| {
        rmats[t].mul(&rmats[j]).sub(&r_of(&prods[j][t]))
    });

    let closed = (
        verify_closed(f, &left),
        verify_closed(f, &mid),
        verify_closed(f, &right),
    );
    debug_assert!(left.contains(f.identity()));
    debug_assert!(mid.contains(f.identity()));
    debug_assert!(right.contains(f.identity()));
    SeminucleusReport {
        left,
        mid,
        right,
        closed,
    }
}

/// Kernel of the stacked system Σ_t z_t · coeff(i, t) = 0 over all i and all
/// matrix positions.
fn solve_nucleus(p: u8, n: usize, coeff: impl Fn(usize, usize) -> FpMatrix) -> Subspace {
    let mut sys = FpMatrix::zeros(p, n * n * n, n);
    for i in 0..n {
        for t in 0..n {
            let m = coeff(i, t);
            for r in 0..n {
                for c in 0..n {
                    sys.set((i * n + r) * n + c, t, m.at(r, c));
                }
            }
        }
    }
    Subspace::from_vectors(p, n, &sys.kernel_basis())
}

fn verify_closed(f: &Semifield, s: &Subspace) -> bool {
    let basis = s.basis();
    basis.iter().all(|x| {
        basis.iter().all(|y| s.contains(&f.multiply(x, y)))
            && s.contains(&f.multiply(x, f.identity()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{albert_parameter_scan, make_field};

    #[test]
    fn field_nuclei_are_everything() {
        for (p, n, poly) in [(2u8, 3usize, vec![1u8, 1, 0, 1]), (3, 3, vec![2, 2, 0, 1])] {
            let f = make_field(p, n, &poly).unwrap();
            let rep = f.seminuclei();
            let full = (p as u128).pow(n as u32);
            assert_eq!(rep.orders(), (full, full, full));
            assert_eq!(rep.closed, (true, true, true));
        }
    }

    #[test]
    fn proper_commutative_order27_has_mid_of_order_3() {
        // The twisted product with distinct Frobenius exponents is a proper
        // pre-semifield of order 27; its class contains a commutative
        // semifield, whose middle seminucleus has order 3.
        let (good, _) = albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
        let pre = good.unwrap();
        let s = crate::classify::find_commutative_principal_isotope(&pre)
            .expect("the proper order-27 class contains a commutative semifield");
        assert!(s.is_commutative());
        let rep = s.seminuclei();
        assert_eq!(rep.mid.order(), 3);
        assert_eq!(rep.closed, (true, true, true));
        // |Mid| = p^h with h dividing n.
        let h = rep.mid.dim();
        assert_eq!(3 % h.max(1), 0);
    }
}

//! Centralizer-center covering analysis for G(F) with F a commutative
//! semifield and p odd: for every noncentral v, Z(v) = Z(C_G(v)) is G′
//! extended by the radical of the commutator form restricted to the
//! centralizer, |Z(v)| = p^(a+k) with r | k for |R(F)| = p^r, the distinct
//! Z(v) cover G ∖ G′, and their number m satisfies m ≡ 1 (mod p^r).

use super::SemifieldGroup;
use crate::gfp::{FpMatrix, FpVector, Subspace};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZvError {
    #[error("analysis is stated for odd p only")]
    EvenPrime,
    #[error("F must be commutative")]
    NonCommutative,
    #[error("F must be a semifield (no identity found)")]
    NoIdentity,
    #[error("analysis applies to the full group G(F), not a proper quotient")]
    ProperQuotient,
}

#[derive(Debug, Clone)]
pub struct ZvMember {
    /// Projection of Z(v) to F², canonical.
    pub projection: Subspace,
    /// |Z(v)| = p^(n + k).
    pub k: usize,
}

#[derive(Debug, Clone)]
pub struct ZvReport {
    /// r with |R(F)| = p^r.
    pub r: usize,
    /// Number of distinct Z(v).
    pub m: usize,
    pub members: Vec<ZvMember>,
    pub covering_ok: bool,
    pub r_divides_all_k: bool,
    pub congruence_ok: bool,
}

pub fn zv_analysis(g: &SemifieldGroup) -> Result<ZvReport, ZvError> {
    let p = g.p();
    let n = g.n();
    if p == 2 {
        return Err(ZvError::EvenPrime);
    }
    if g.kernel().dim() != 0 {
        return Err(ZvError::ProperQuotient);
    }
    if !g.pre().is_commutative() {
        return Err(ZvError::NonCommutative);
    }
    let sf = g.pre().find_identity().ok_or(ZvError::NoIdentity)?;
    let r = sf.seminuclei().right.dim();

    let codes = (p as u64).pow(n as u32);
    let mut distinct: BTreeMap<Vec<u8>, ZvMember> = BTreeMap::new();
    for ac in 0..codes {
        for bc in 0..codes {
            if ac == 0 && bc == 0 {
                continue;
            }
            let a = FpVector::decode(p, n, ac);
            let b = FpVector::decode(p, n, bc);
            let rad = centralizer_center_projection(g, &a, &b);
            distinct
                .entry(rad.encode())
                .or_insert_with(|| ZvMember {
                    k: rad.dim(),
                    projection: rad,
                });
        }
    }
    let members: Vec<ZvMember> = distinct.into_values().collect();
    let m = members.len();
    let r_divides_all_k = members.iter().all(|z| r > 0 && z.k % r == 0 && z.k > 0);

    // Covering: every noncentral (a, b) lies in some Z(v).
    let mut covering_ok = true;
    'outer: for ac in 0..codes {
        for bc in 0..codes {
            if ac == 0 && bc == 0 {
                continue;
            }
            let mut w = FpVector::decode(p, n, ac).coords().to_vec();
            w.extend_from_slice(FpVector::decode(p, n, bc).coords());
            let w = FpVector::new(p, w);
            if !members.iter().any(|z| z.projection.contains(&w)) {
                covering_ok = false;
                break 'outer;
            }
        }
    }
    let modulus = (p as u128).pow(r as u32);
    let congruence_ok = (m as u128) % modulus == 1;
    Ok(ZvReport {
        r,
        m,
        members,
        covering_ok,
        r_divides_all_k,
        congruence_ok,
    })
}

/// Nonzero solutions x of "each n-row block of sys·x lies in N", as the
/// x-parts of the kernel of the per-block augmented system.
fn solutions_mod_kernel(g: &SemifieldGroup, sys: &FpMatrix) -> Vec<FpVector> {
    let n = g.n();
    let p = g.p();
    let kdim = g.kernel().dim();
    let cols = sys.ncols();
    if kdim == 0 {
        return sys.kernel_basis();
    }
    let blocks = sys.nrows() / n;
    let mut aug = FpMatrix::zeros(p, sys.nrows(), cols + blocks * kdim);
    for r in 0..sys.nrows() {
        for c in 0..cols {
            aug.set(r, c, sys.at(r, c));
        }
    }
    for bl in 0..blocks {
        for (kidx, row) in g.kernel().basis_rows().iter().enumerate() {
            for rr in 0..n {
                aug.set(
                    bl * n + rr,
                    cols + bl * kdim + kidx,
                    crate::gfp::neg_mod(row[rr], p),
                );
            }
        }
    }
    aug.kernel_basis()
        .into_iter()
        .map(|v| FpVector::new(p, v.coords()[..cols].to_vec()))
        .collect()
}

/// Projection to F² of Z(C_G(v)) for noncentral v = (a, b): the radical of
/// the commutator form (mod N) restricted to the centralizer kernel
/// {w : β(v, w) ∈ N}.
pub fn centralizer_center_projection(
    g: &SemifieldGroup,
    a: &FpVector,
    b: &FpVector,
) -> Subspace {
    let p = g.p();
    let n = g.n();
    let phi = g.commutator_form_matrix(a, b);
    let kernel_basis = solutions_mod_kernel(g, &phi);
    let dim_k = kernel_basis.len();
    // Gram data: β(k_i, k_j) ∈ F; the radical is the λ-kernel of the stacked
    // system Σ_i λ_i β(k_i, k_j) ∈ N over all j.
    let mut sys = FpMatrix::zeros(p, dim_k * n, dim_k);
    for (j, kj) in kernel_basis.iter().enumerate() {
        let (aj, bj) = split(kj, n);
        for (i, ki) in kernel_basis.iter().enumerate() {
            let (ai, bi) = split(ki, n);
            let v = g.beta(&ai, &bi, &aj, &bj);
            for c in 0..n {
                sys.set(j * n + c, i, v.coords()[c]);
            }
        }
    }
    let lambda_basis = solutions_mod_kernel(g, &sys);
    let mut vectors = Vec::with_capacity(lambda_basis.len());
    for lam in &lambda_basis {
        let mut w = vec![0u8; 2 * n];
        for (i, &li) in lam.coords().iter().enumerate() {
            if li != 0 {
                for (wi, &ki) in w.iter_mut().zip(kernel_basis[i].coords()) {
                    *wi = crate::gfp::add_mod(*wi, crate::gfp::mul_mod(li, ki, p), p);
                }
            }
        }
        vectors.push(FpVector::new(p, w));
    }
    Subspace::from_vectors(p, 2 * n, &vectors)
}

/// |Z(C_G(v))| for noncentral v = (a, b).
pub fn centralizer_center_order(g: &SemifieldGroup, a: &FpVector, b: &FpVector) -> u128 {
    let rad = centralizer_center_projection(g, a, b);
    (g.p() as u128).pow(rad.dim() as u32) * g.central_order()
}

fn split(v: &FpVector, n: usize) -> (FpVector, FpVector) {
    let p = v.modulus();
    (
        FpVector::new(p, v.coords()[..n].to_vec()),
        FpVector::new(p, v.coords()[n..].to_vec()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::make_field;

    #[test]
    fn heisenberg_gf27_covering() {
        let f = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        let g = SemifieldGroup::full(f.pre().clone());
        let report = zv_analysis(&g).unwrap();
        assert_eq!(report.r, 3);
        // All Z(v) are the 28 maximal abelians; 28 ≡ 1 mod 27.
        assert_eq!(report.m, 28);
        assert!(report.covering_ok);
        assert!(report.r_divides_all_k);
        assert!(report.congruence_ok);
        assert!(report.members.iter().all(|z| z.k == 3));
    }

    #[test]
    fn verardi_centralizer_center_bounds() {
        // p^(b+1) ≤ |Z(C_G(g))| ≤ p^(2b) for every noncentral g, including
        // on proper central quotients.
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let full = SemifieldGroup::full(f.pre().clone());
        let quotient = full.quotient(&full.central_subspaces(1)[0]).unwrap();
        for g in [&full, &quotient] {
            let p = g.p() as u128;
            let b = g.central_dim() as u32;
            let codes = (g.p() as u64).pow(g.n() as u32);
            for ac in 0..codes {
                for bc in 0..codes {
                    if ac == 0 && bc == 0 {
                        continue;
                    }
                    let a = crate::gfp::FpVector::decode(g.p(), g.n(), ac);
                    let bv = crate::gfp::FpVector::decode(g.p(), g.n(), bc);
                    let el = g.element(a.clone(), bv.clone(), crate::gfp::FpVector::zeros(g.p(), g.n()));
                    if g.is_central(&el) {
                        continue;
                    }
                    let z = centralizer_center_order(g, &a, &bv);
                    assert!(z >= p.pow(b + 1), "lower bound at ({ac},{bc})");
                    assert!(z <= p.pow(2 * b), "upper bound at ({ac},{bc})");
                }
            }
        }
    }

    #[test]
    fn even_prime_rejected() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let g = SemifieldGroup::full(f.pre().clone());
        assert!(matches!(zv_analysis(&g), Err(ZvError::EvenPrime)));
    }

    #[test]
    fn non_commutative_rejected() {
        let (good, _) = crate::semifield::albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
        let pre = good.unwrap();
        assert!(!pre.is_commutative());
        let g = SemifieldGroup::full(pre);
        assert!(matches!(zv_analysis(&g), Err(ZvError::NonCommutative)));
    }
}

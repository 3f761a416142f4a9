//! Structural checkers: special, extraspecial, semi-extraspecial (by both
//! definitions, which must agree), and ultraspecial.

use super::SemifieldGroup;
use crate::gfp::{FpMatrix, FpVector, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialVerdict {
    /// Z(G) is exactly the central part {(0,0,c)}.
    pub center_is_central_part: bool,
    /// G′ equals Z(G).
    pub derived_equals_center: bool,
    /// Φ(G) = G′·℧₁ equals G′.
    pub frattini_equals_derived: bool,
    /// G/G′ has exponent p.
    pub quotient_elementary: bool,
    /// G′ has exponent p.
    pub derived_elementary: bool,
    pub is_special: bool,
}

pub fn check_special(g: &SemifieldGroup) -> SpecialVerdict {
    let p = g.p();
    let n = g.n();
    // Z(G): pairs (a,b) with a∗e_j ∈ N and e_i∗b ∈ N for all basis vectors.
    let mut sys = FpMatrix::zeros(p, 2 * n * n, 2 * n);
    for j in 0..n {
        let r_ej = g.pre().right_matrix(&FpVector::basis(p, n, j));
        for r in 0..n {
            for c in 0..n {
                sys.set((j * n) + r, c, r_ej.at(r, c));
            }
        }
    }
    for i in 0..n {
        let l_ei = g.pre().left_matrix(&FpVector::basis(p, n, i));
        for r in 0..n {
            for c in 0..n {
                sys.set(n * n + (i * n) + r, n + c, l_ei.at(r, c));
            }
        }
    }
    let center_noncentral_dim = solution_dim_mod_kernel(g, &sys);
    let center_is_central_part = center_noncentral_dim == 0;

    let derived = g.derived_order();
    let derived_equals_center = center_is_central_part && derived == g.central_order();

    // Φ = G′·℧₁ as subspaces of F containing N.
    let frattini_equals_derived = {
        let mut derived_span = g.kernel().clone();
        let mut frattini_span = g.kernel().clone();
        let binom = ((p as u64 * (p as u64 - 1) / 2) % p as u64) as u8;
        for i in 0..n {
            for j in 0..n {
                let ei = FpVector::basis(p, n, i);
                let ej = FpVector::basis(p, n, j);
                let prod = g.pre().multiply(&ei, &ej);
                derived_span.insert(prod.coords());
                frattini_span.insert(prod.coords());
                frattini_span.insert(prod.scale(binom).coords());
            }
        }
        frattini_span == derived_span
    };

    // G/G′ has exponent p: p-th powers of the standard lifts are central.
    let quotient_elementary = (0..2 * n).all(|idx| {
        let (a, b) = if idx < n {
            (FpVector::basis(p, n, idx), FpVector::zeros(p, n))
        } else {
            (FpVector::zeros(p, n), FpVector::basis(p, n, idx - n))
        };
        let el = g.element(a, b, FpVector::zeros(p, n));
        let pw = g.power(&el, p as u64);
        pw.a.is_zero() && pw.b.is_zero()
    });
    let derived_elementary = g.central_reps().into_iter().all(|c| {
        let el = g.element(FpVector::zeros(p, n), FpVector::zeros(p, n), c);
        el == g.identity() || g.element_order(&el) == p as u64
    });

    let is_special = center_is_central_part
        && derived_equals_center
        && frattini_equals_derived
        && quotient_elementary
        && derived_elementary;
    SpecialVerdict {
        center_is_central_part,
        derived_equals_center,
        frattini_equals_derived,
        quotient_elementary,
        derived_elementary,
        is_special,
    }
}

/// Dimension of {x : every n-row block of sys·x lies in N}. Each block gets
/// its own free kernel coefficients; the augmented homogeneous system has
/// solution dimension equal to the x-dimension because the coefficients are
/// uniquely determined by x.
fn solution_dim_mod_kernel(g: &SemifieldGroup, sys: &FpMatrix) -> usize {
    let n = g.n();
    let kdim = g.kernel().dim();
    if kdim == 0 {
        return sys.kernel_basis().len();
    }
    let blocks = sys.nrows() / n;
    let mut aug = FpMatrix::zeros(g.p(), sys.nrows(), sys.ncols() + blocks * kdim);
    for r in 0..sys.nrows() {
        for c in 0..sys.ncols() {
            aug.set(r, c, sys.at(r, c));
        }
    }
    for bl in 0..blocks {
        for (kidx, row) in g.kernel().basis_rows().iter().enumerate() {
            for rr in 0..n {
                aug.set(
                    bl * n + rr,
                    sys.ncols() + bl * kdim + kidx,
                    crate::gfp::neg_mod(row[rr], g.p()),
                );
            }
        }
    }
    aug.kernel_basis().len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraspecialKind {
    /// Involution count 2^a(2^a + 1) for |G| = 2^(2a+1).
    Plus,
    /// Involution count 2^a(2^a − 1).
    Minus,
}

#[derive(Debug, Clone)]
pub struct ExtraspecialVerdict {
    pub special: SpecialVerdict,
    pub center_order: u128,
    pub is_extraspecial: bool,
    /// For p = 2, which of the two extraspecial types, labeled by the
    /// number of involutions.
    pub kind: Option<ExtraspecialKind>,
}

pub fn check_extraspecial(g: &SemifieldGroup) -> ExtraspecialVerdict {
    let special = check_special(g);
    let center_order = g.central_order();
    let is_extraspecial = special.is_special && center_order == g.p() as u128;
    let kind = if is_extraspecial && g.p() == 2 {
        let os = g.order_structure();
        let le2: u128 = os.histogram.get(&1).copied().unwrap_or(0)
            + os.histogram.get(&2).copied().unwrap_or(0);
        // |G| = 2^{2a+1}; the two types have 2^a(2^a ± 1) elements of order
        // dividing 2.
        let a = (2 * g.n() + g.central_dim() - 1) / 2;
        let half = 2u128.pow(a as u32);
        if le2 == half * (half + 1) {
            Some(ExtraspecialKind::Plus)
        } else if le2 == half * (half - 1) {
            Some(ExtraspecialKind::Minus)
        } else {
            None
        }
    } else {
        None
    };
    ExtraspecialVerdict {
        special,
        center_order,
        is_extraspecial,
        kind,
    }
}

#[derive(Debug, Clone)]
pub struct SesVerdict {
    pub special: SpecialVerdict,
    /// Every quotient by a maximal central subspace is extraspecial.
    pub quotient_definition: bool,
    /// |C_G(g)| = |G:G′| for every noncentral g.
    pub centralizer_definition: bool,
    pub definitions_agree: bool,
    /// The conjugacy class of every noncentral g is the full coset gG′.
    pub camina_classes: bool,
    /// [g, G] = G′ for every noncentral g.
    pub commutator_surjective: bool,
    /// Every normal subgroup generated by one noncentral element and a
    /// central subspace contains G′ (or lies in G′).
    pub normal_dichotomy: bool,
    pub is_ses: bool,
}

pub fn check_ses(g: &SemifieldGroup) -> SesVerdict {
    let special = check_special(g);
    let p = g.p();
    let n = g.n();
    let b = g.central_dim();

    // Quotient definition: (p^b − 1)/(p − 1) hyperplanes of the center.
    let hyperplanes = g.central_subspaces(b - 1);
    debug_assert_eq!(
        hyperplanes.len() as u128,
        ((p as u128).pow(b as u32) - 1) / (p as u128 - 1)
    );
    let quotient_definition = hyperplanes.iter().all(|h| {
        let q = g.quotient(h).expect("hyperplane lift is proper and nested");
        check_extraspecial(&q).is_extraspecial
    });

    // Centralizer definition and the Camina/commutator conditions, from the
    // rank of the commutator form at every (a, b) ≠ 0.
    let codes = (p as u64).pow(n as u32);
    let derived_index = g.order() / g.derived_order();
    let mut centralizer_definition = true;
    let mut camina_classes = true;
    let mut commutator_surjective = true;
    for ac in 0..codes {
        for bc in 0..codes {
            if ac == 0 && bc == 0 {
                continue;
            }
            let a = FpVector::decode(p, n, ac);
            let bv = FpVector::decode(p, n, bc);
            let el = g.element(a.clone(), bv.clone(), FpVector::zeros(p, n));
            let rank = g.quotient_rank(&g.commutator_form_matrix(&a, &bv));
            if g.centralizer_order(&el) != derived_index {
                centralizer_definition = false;
            }
            // Class size p^rank must be |G′| for the class to be gG′; the
            // image of [g, ·] spans G′ iff rank = b.
            if rank != b {
                camina_classes = false;
                commutator_surjective = false;
            }
        }
    }

    let normal_dichotomy = check_normal_dichotomy(g);
    let definitions_agree = quotient_definition == centralizer_definition;
    let is_ses = special.is_special && quotient_definition && centralizer_definition;
    SesVerdict {
        special,
        quotient_definition,
        centralizer_definition,
        definitions_agree,
        camina_classes,
        commutator_surjective,
        normal_dichotomy,
        is_ses,
    }
}

/// Test the normal-subgroup dichotomy on the family of subgroups generated
/// by a single noncentral element together with a central subspace: whenever
/// such a subgroup is normal it must contain G′.
fn check_normal_dichotomy(g: &SemifieldGroup) -> bool {
    let p = g.p();
    let n = g.n();
    let b = g.central_dim();
    let codes = (p as u64).pow(n as u32);
    let mut centrals: Vec<Subspace> = Vec::new();
    for dim in 0..=b {
        centrals.extend(g.central_subspaces(dim));
    }
    for ac in 0..codes {
        for bc in 0..codes {
            if ac == 0 && bc == 0 {
                continue;
            }
            let a = FpVector::decode(p, n, ac);
            let bv = FpVector::decode(p, n, bc);
            let phi = g.commutator_form_matrix(&a, &bv);
            // p-th power of the generator is central: C(p,2)·a∗b.
            let binom = ((p as u64 * (p as u64 - 1) / 2) % p as u64) as u8;
            let pw = g.pre().multiply(&a, &bv).scale(binom);
            for c in &centrals {
                // U = C + ⟨g^p⟩ (+N). H = ⟨g⟩·U is normal iff im(φ_g) ⊆ U.
                let mut u = c.clone();
                u.insert(pw.coords());
                if !image_contained(g, &phi, &u) {
                    continue;
                }
                // Normal: the dichotomy demands G′ ≤ H, i.e. U is the whole
                // center.
                if u.dim() < n {
                    return false;
                }
            }
        }
    }
    true
}

/// im(M) ⊆ U (both understood mod N; U already contains N).
fn image_contained(g: &SemifieldGroup, m: &FpMatrix, u: &Subspace) -> bool {
    let mut joined = u.clone();
    for c in 0..m.ncols() {
        joined.insert(m.column(c).coords());
    }
    let _ = g;
    joined.dim() == u.dim()
}

#[derive(Debug, Clone)]
pub struct UltraspecialVerdict {
    pub ses: SesVerdict,
    pub is_ultraspecial: bool,
}

pub fn check_ultraspecial(g: &SemifieldGroup) -> UltraspecialVerdict {
    let ses = check_ses(g);
    let derived = g.derived_order();
    let index = g.order() / derived;
    // |G′| = √|G:G′|
    let is_ultraspecial = ses.is_ses && derived * derived == index;
    UltraspecialVerdict {
        ses,
        is_ultraspecial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::make_field;

    #[test]
    fn full_semifield_groups_are_ultraspecial() {
        for (p, n, poly) in [(2u8, 3usize, vec![1u8, 1, 0, 1]), (3, 3, vec![2, 2, 0, 1])] {
            let f = make_field(p, n, &poly).unwrap();
            let g = SemifieldGroup::full(f.pre().clone());
            let v = check_ultraspecial(&g);
            assert!(v.ses.special.is_special);
            assert!(v.ses.is_ses);
            assert!(v.ses.definitions_agree);
            assert!(v.ses.camina_classes);
            assert!(v.ses.normal_dichotomy);
            assert!(v.is_ultraspecial);
        }
    }

    #[test]
    fn maximal_quotient_is_extraspecial() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let g = SemifieldGroup::full(f.pre().clone());
        for h in g.central_subspaces(2) {
            let q = g.quotient(&h).unwrap();
            let v = check_extraspecial(&q);
            assert!(v.is_extraspecial);
            assert_eq!(q.order(), 2u128.pow(7));
            // All semifield-group central quotients land on the plus type.
            assert_eq!(v.kind, Some(ExtraspecialKind::Plus));
        }
    }

    #[test]
    fn non_maximal_quotient_is_ses_but_not_extraspecial() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let g = SemifieldGroup::full(f.pre().clone());
        let q = g.quotient(&g.central_subspaces(1)[0]).unwrap();
        let v = check_ses(&q);
        assert!(v.is_ses);
        assert!(!check_extraspecial(&q).is_extraspecial);
        // Smaller center than maximal order: not ultraspecial either.
        assert!(!check_ultraspecial(&q).is_ultraspecial);
    }

    #[test]
    fn base_heisenberg_over_prime_field_is_dihedral() {
        // G(GF(2)) is the dihedral group of order 8: five involutions.
        let f = make_field(2, 1, &[1, 1]).unwrap_or_else(|_| panic!());
        let g = SemifieldGroup::full(f.pre().clone());
        let v = check_extraspecial(&g);
        assert!(v.is_extraspecial);
        assert_eq!(v.kind, Some(ExtraspecialKind::Plus));
        let os = g.order_structure();
        assert_eq!(os.histogram[&2], 5);
    }
}

//! The semifield group G(F) on triples (a, b, c) with
//! (a₁,b₁,c₁)·(a₂,b₂,c₂) = (a₁+a₂, b₁+b₂, c₁+c₂+a₁∗b₂), its central
//! quotients, and the group-theoretic checkers and censuses built on it.
//!
//! Groups are never materialized as element tables except in the small
//! brute-force isomorphism oracle; every structural computation reduces to
//! exact linear algebra over GF(p) on the triple representation.

mod census;
mod chars;
mod checks;
mod iso;
mod report;
mod zv;

pub use census::{
    abelian_census, census_relative, check_hiranime_criterion, AbelianCensus, CensusRelativeError,
};
pub use chars::{
    brauer_pair, char_tables_equal, character_table, CharValue, CharacterTable, CharsError,
    ConjClass,
};
pub use checks::{
    check_extraspecial, check_ses, check_special, check_ultraspecial, ExtraspecialKind,
    ExtraspecialVerdict, SesVerdict, SpecialVerdict, UltraspecialVerdict,
};
pub use iso::{brute_force_isomorphic, groups_isomorphic_semifield, BruteForceError};
pub use report::{group_report, GroupCensusJson, GroupProfileJson, GroupReport};
pub use zv::{
    centralizer_center_order, centralizer_center_projection, zv_analysis, ZvError, ZvMember,
    ZvReport,
};

use crate::gfp::{FpMatrix, FpVector, Subspace};
use crate::semifield::PreSemifield;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("kernel must be a proper subspace of F (the quotient would be abelian)")]
    FullKernel,
    #[error("new kernel must contain the current one")]
    NotNested,
}

/// An element (a, b, c) of G(F)/N; the c component is stored as the
/// canonical coset representative mod N.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub a: FpVector,
    pub b: FpVector,
    pub c: FpVector,
}

/// G(F) for a pre-semifield F, together with a central kernel N ≤ F
/// (N = 0 gives the full ultraspecial group of order |F|³).
#[derive(Debug, Clone)]
pub struct SemifieldGroup {
    pre: PreSemifield,
    kernel: Subspace,
}

impl SemifieldGroup {
    pub fn new(pre: PreSemifield, kernel: Subspace) -> Self {
        assert_eq!(kernel.modulus(), pre.p());
        assert_eq!(kernel.ambient(), pre.n());
        assert!(
            kernel.dim() < pre.n(),
            "kernel must be proper: the quotient by all of F is abelian"
        );
        SemifieldGroup { pre, kernel }
    }

    pub fn full(pre: PreSemifield) -> Self {
        let kernel = Subspace::zero(pre.p(), pre.n());
        SemifieldGroup::new(pre, kernel)
    }

    pub fn pre(&self) -> &PreSemifield {
        &self.pre
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn p(&self) -> u8 {
        self.pre.p()
    }

    pub fn n(&self) -> usize {
        self.pre.n()
    }

    /// Dimension of the central part F/N.
    pub fn central_dim(&self) -> usize {
        self.n() - self.kernel.dim()
    }

    /// |G| = p^(2n + central_dim).
    pub fn order(&self) -> u128 {
        (self.p() as u128).pow((2 * self.n() + self.central_dim()) as u32)
    }

    pub fn central_order(&self) -> u128 {
        (self.p() as u128).pow(self.central_dim() as u32)
    }

    pub fn identity(&self) -> GroupElement {
        let z = FpVector::zeros(self.p(), self.n());
        GroupElement {
            a: z.clone(),
            b: z.clone(),
            c: z,
        }
    }

    pub fn element(&self, a: FpVector, b: FpVector, c: FpVector) -> GroupElement {
        assert_eq!(a.len(), self.n());
        assert_eq!(b.len(), self.n());
        assert_eq!(c.len(), self.n());
        GroupElement {
            a,
            b,
            c: self.kernel.reduce(&c),
        }
    }

    pub fn multiply(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let cross = self.pre.multiply(&g1.a, &g2.b);
        GroupElement {
            a: g1.a.add(&g2.a),
            b: g1.b.add(&g2.b),
            c: self.kernel.reduce(&g1.c.add(&g2.c).add(&cross)),
        }
    }

    /// g⁻¹ = (−a, −b, −c + a∗b).
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let ab = self.pre.multiply(&g.a, &g.b);
        GroupElement {
            a: g.a.neg(),
            b: g.b.neg(),
            c: self.kernel.reduce(&ab.sub(&g.c)),
        }
    }

    /// Closed-form commutator [g₁, g₂] = (0, 0, a₁∗b₂ − a₂∗b₁ mod N).
    pub fn commutator(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let z = FpVector::zeros(self.p(), self.n());
        GroupElement {
            a: z.clone(),
            b: z,
            c: self.kernel.reduce(&self.beta(&g1.a, &g1.b, &g2.a, &g2.b)),
        }
    }

    /// The definitional commutator g₁⁻¹g₂⁻¹g₁g₂, for cross-checking.
    pub fn commutator_definitional(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let i1 = self.inverse(g1);
        let i2 = self.inverse(g2);
        self.multiply(&self.multiply(&self.multiply(&i1, &i2), g1), g2)
    }

    /// The commutator form β((a₁,b₁),(a₂,b₂)) = a₁∗b₂ − a₂∗b₁, unreduced.
    pub fn beta(&self, a1: &FpVector, b1: &FpVector, a2: &FpVector, b2: &FpVector) -> FpVector {
        self.pre.multiply(a1, b2).sub(&self.pre.multiply(a2, b1))
    }

    /// Closed-form power g^m = (ma, mb, mc + C(m,2)·a∗b mod N).
    pub fn power(&self, g: &GroupElement, m: u64) -> GroupElement {
        let p = self.p();
        let mm = (m % p as u64) as u8;
        let binom = ((m as u128 * (m as u128).saturating_sub(1) / 2) % p as u128) as u8;
        let ab = self.pre.multiply(&g.a, &g.b);
        GroupElement {
            a: g.a.scale(mm),
            b: g.b.scale(mm),
            c: self
                .kernel
                .reduce(&g.c.scale(mm).add(&ab.scale(binom))),
        }
    }

    /// Order of an element by repeated multiplication (orders divide p²).
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        let id = self.identity();
        let mut acc = g.clone();
        let mut m = 1;
        while acc != id {
            acc = self.multiply(&acc, g);
            m += 1;
            assert!(m <= (self.p() as u64).pow(2), "order exceeds p²");
        }
        m
    }

    pub fn is_central(&self, g: &GroupElement) -> bool {
        let m = self.commutator_form_matrix(&g.a, &g.b);
        self.quotient_rank(&m) == 0
    }

    /// Canonical coset representatives of F/N, in code order (vectors whose
    /// kernel-pivot coordinates vanish).
    pub fn central_reps(&self) -> Vec<FpVector> {
        let p = self.p();
        let n = self.n();
        let pivots = self.kernel.pivots();
        let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let total = (p as u64).pow(free.len() as u32);
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let digits = FpVector::decode(p, free.len(), code);
            let mut v = vec![0u8; n];
            for (d, &pos) in digits.coords().iter().zip(&free) {
                v[pos] = *d;
            }
            out.push(FpVector::new(p, v));
        }
        out
    }

    /// Every element of the group, central reps innermost. Intended for
    /// small groups (histograms, the brute-force oracle).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let p = self.p();
        let n = self.n();
        let codes = (p as u64).pow(n as u32);
        let reps = self.central_reps();
        (0..codes).flat_map(move |ac| {
            let reps = reps.clone();
            (0..codes).flat_map(move |bc| {
                let a = FpVector::decode(p, n, ac);
                let b = FpVector::decode(p, n, bc);
                reps.clone().into_iter().map(move |c| GroupElement {
                    a: a.clone(),
                    b: b.clone(),
                    c,
                })
            })
        })
    }

    /// Matrix of φ_g : (x, y) ↦ a∗y − x∗b as an n×2n map on F².
    pub fn commutator_form_matrix(&self, a: &FpVector, b: &FpVector) -> FpMatrix {
        let n = self.n();
        let la = self.pre.left_matrix(a);
        let rb = self.pre.right_matrix(b);
        FpMatrix::from_fn(self.p(), n, 2 * n, |r, c| {
            if c < n {
                // −(x ∗ b) component: columns indexed by x.
                crate::gfp::neg_mod(rb.at(r, c), self.p())
            } else {
                la.at(r, c - n)
            }
        })
    }

    /// Rank of a linear map into F composed with the projection mod N:
    /// rank([M | N-basis]) − dim N.
    pub fn quotient_rank(&self, m: &FpMatrix) -> usize {
        let n = self.n();
        let kdim = self.kernel.dim();
        if kdim == 0 {
            return m.rank();
        }
        let mut aug = FpMatrix::zeros(self.p(), n, m.ncols() + kdim);
        for r in 0..n {
            for c in 0..m.ncols() {
                aug.set(r, c, m.at(r, c));
            }
        }
        for (j, row) in self.kernel.basis_rows().iter().enumerate() {
            for r in 0..n {
                aug.set(r, m.ncols() + j, row[r]);
            }
        }
        aug.rank() - kdim
    }

    /// |C_G(g)| = p^central_dim · |ker(φ_g mod N)|; |G| for central g.
    pub fn centralizer_order(&self, g: &GroupElement) -> u128 {
        let m = self.commutator_form_matrix(&g.a, &g.b);
        let rank = self.quotient_rank(&m);
        let p = self.p() as u128;
        p.pow(self.central_dim() as u32) * p.pow((2 * self.n() - rank) as u32)
    }

    /// Quotient by a central subspace N′ ⊇ N, N′ ≠ F.
    pub fn quotient(&self, n_prime: &Subspace) -> Result<SemifieldGroup, QuotientError> {
        if n_prime.dim() >= self.n() {
            return Err(QuotientError::FullKernel);
        }
        if !n_prime.contains_subspace(&self.kernel) {
            return Err(QuotientError::NotNested);
        }
        Ok(SemifieldGroup::new(self.pre.clone(), n_prime.clone()))
    }

    /// Central subspaces of the quotient F/N of the given dimension, lifted
    /// back to subspaces of F containing N.
    pub fn central_subspaces(&self, dim: usize) -> Vec<Subspace> {
        let p = self.p();
        let n = self.n();
        let b = self.central_dim();
        assert!(dim <= b);
        let pivots = self.kernel.pivots();
        let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let stream = crate::gfp::SubspaceStream::new(b, dim, p);
        let mut out = Vec::new();
        stream.scan_range(0, stream.total(), |rows, _| {
            let mut vectors: Vec<FpVector> = self.kernel.basis();
            for row in rows {
                let mut v = vec![0u8; n];
                for (d, &pos) in row.iter().zip(&free) {
                    v[pos] = *d;
                }
                vectors.push(FpVector::new(p, v));
            }
            out.push(Subspace::from_vectors(p, n, &vectors));
        });
        out
    }

    /// Derived subgroup order, computed as the span of the commutator-form
    /// values over basis pairs, mod N.
    pub fn derived_order(&self) -> u128 {
        let p = self.p();
        let n = self.n();
        let mut span = self.kernel.clone();
        'outer: for i in 0..n {
            for j in 0..n {
                let ei = FpVector::basis(p, n, i);
                let ej = FpVector::basis(p, n, j);
                let v = self.beta(&ei, &FpVector::zeros(p, n), &FpVector::zeros(p, n), &ej);
                span.insert(v.coords());
                if span.dim() == n {
                    break 'outer;
                }
            }
        }
        (p as u128).pow((span.dim() - self.kernel.dim()) as u32)
    }

    /// Exponent, |Ω₁|, |℧₁| and the exact element-order histogram.
    pub fn order_structure(&self) -> OrderStructure {
        let p = self.p();
        let n = self.n();
        let codes = (p as u64).pow(n as u32);
        let central = self.central_order();
        let mut histogram: BTreeMap<u64, u128> = BTreeMap::new();

        // Element orders depend only on (a, b): the p-th power lands on
        // C(p,2)·a∗b which is independent of c, and smaller powers keep
        // (ma, mb) ≠ 0. Count each (a, b) fiber with multiplicity p^b.
        let mut omega_span = Subspace::zero(p, 2 * n);
        let mut agemo = self.kernel.clone();
        let mut scratch = vec![0u8; n];
        let binom_p = ((p as u64 * (p as u64 - 1) / 2) % p as u64) as u8;
        for ac in 0..codes {
            let a = FpVector::decode(p, n, ac);
            for bc in 0..codes {
                let b = FpVector::decode(p, n, bc);
                self.pre.multiply_into(a.coords(), b.coords(), &mut scratch);
                let ab = FpVector::new(p, scratch.clone());
                let pth_central = ab.scale(binom_p);
                let pth_reduced = self.kernel.reduce(&pth_central);
                agemo.insert(pth_central.coords());
                let fiber_order = if pth_reduced.is_zero() {
                    p as u64
                } else {
                    (p as u64) * (p as u64)
                };
                if fiber_order == p as u64 {
                    let mut w = a.coords().to_vec();
                    w.extend_from_slice(b.coords());
                    omega_span.insert(&w);
                }
                if ac == 0 && bc == 0 {
                    // identity plus the nontrivial central elements
                    *histogram.entry(1).or_insert(0) += 1;
                    if central > 1 {
                        *histogram.entry(p as u64).or_insert(0) += central - 1;
                    }
                } else {
                    *histogram.entry(fiber_order).or_insert(0) += central;
                }
            }
        }
        let exponent = *histogram.keys().max().unwrap();
        let omega_order =
            (p as u128).pow(omega_span.dim() as u32) * (p as u128).pow(self.central_dim() as u32);
        let agemo_order = (p as u128).pow((agemo.dim() - self.kernel.dim()) as u32);
        OrderStructure {
            exponent,
            omega_order,
            agemo_order,
            histogram,
        }
    }

    /// Number of conjugacy classes, from the rank of the commutator form at
    /// every (a, b) fiber.
    pub fn class_count(&self) -> u128 {
        let p = self.p();
        let n = self.n();
        let codes = (p as u64).pow(n as u32);
        let b = self.central_dim() as u32;
        let mut count = 0u128;
        for ac in 0..codes {
            let a = FpVector::decode(p, n, ac);
            for bc in 0..codes {
                let bv = FpVector::decode(p, n, bc);
                let m = self.commutator_form_matrix(&a, &bv);
                let r = self.quotient_rank(&m) as u32;
                count += (p as u128).pow(b - r);
            }
        }
        count
    }

    /// Invariant bundle used by the comparison predicates.
    pub fn profile(&self) -> GroupProfile {
        let os = self.order_structure();
        let derived = self.derived_order();
        let census = census::abelian_census(self);
        GroupProfile {
            order: self.order(),
            derived_index: self.order() / derived,
            derived_order: derived,
            exponent: os.exponent,
            agemo_order: os.agemo_order,
            omega_order: os.omega_order,
            class_count: self.class_count(),
            order_histogram: os.histogram,
            census_count: census.count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderStructure {
    pub exponent: u64,
    pub omega_order: u128,
    pub agemo_order: u128,
    pub histogram: BTreeMap<u64, u128>,
}

/// Invariant bundle (|G|, |G:G′|, |G′|, exponent, |℧₁|, |Ω₁|, class count,
/// order histogram, census count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupProfile {
    pub order: u128,
    pub derived_index: u128,
    pub derived_order: u128,
    pub exponent: u64,
    pub agemo_order: u128,
    pub omega_order: u128,
    pub class_count: u128,
    pub order_histogram: BTreeMap<u64, u128>,
    pub census_count: u128,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::make_field;

    fn heis8() -> SemifieldGroup {
        SemifieldGroup::full(make_field(2, 3, &[1, 1, 0, 1]).unwrap().pre().clone())
    }

    fn heis27() -> SemifieldGroup {
        SemifieldGroup::full(make_field(3, 3, &[2, 2, 0, 1]).unwrap().pre().clone())
    }

    #[test]
    fn identity_laws() {
        let g = heis8();
        let id = g.identity();
        for x in g.elements().take(64) {
            assert_eq!(g.multiply(&x, &id), x);
            assert_eq!(g.multiply(&id, &x), x);
            let inv = g.inverse(&x);
            assert_eq!(g.multiply(&x, &inv), id);
            assert_eq!(g.multiply(&inv, &x), id);
        }
    }

    #[test]
    fn group_order() {
        assert_eq!(heis8().order(), 512);
        assert_eq!(heis27().order(), 19683);
    }

    #[test]
    fn squares_land_on_products_gf2() {
        let g = heis8();
        for x in g.elements().take(200) {
            let sq = g.multiply(&x, &x);
            assert!(sq.a.is_zero() && sq.b.is_zero());
            assert_eq!(sq.c, g.pre().multiply(&x.a, &x.b));
        }
    }

    #[test]
    fn power_matches_iterated_multiplication() {
        let g = heis27();
        let id = g.identity();
        for x in g.elements().step_by(731).take(40) {
            let mut acc = id.clone();
            for m in 0..6 {
                assert_eq!(g.power(&x, m), acc, "power {m}");
                acc = g.multiply(&acc, &x);
            }
        }
        assert_eq!(g.power(&id, 0), id);
    }

    #[test]
    fn odd_p_has_exponent_p() {
        let g = heis27();
        let os = g.order_structure();
        assert_eq!(os.exponent, 3);
        assert_eq!(os.agemo_order, 1);
        assert_eq!(os.omega_order, g.order());
    }

    #[test]
    fn gf2_order_structure() {
        let g = heis8();
        let os = g.order_structure();
        assert_eq!(os.exponent, 4);
        // ℧₁ = G′ for p = 2 semifield groups.
        assert_eq!(os.agemo_order, g.derived_order());
        assert_eq!(os.omega_order, g.order());
        // Order-4 elements are exactly the (a,b) with a∗b ≠ 0: both nonzero.
        let order4 = os.histogram[&4];
        assert_eq!(order4, 7 * 7 * 8);
    }

    #[test]
    fn commutator_closed_form_matches_definition() {
        let g = heis8();
        let els: Vec<_> = g.elements().collect();
        for x in els.iter().step_by(17) {
            for y in els.iter().step_by(23) {
                assert_eq!(g.commutator(x, y), g.commutator_definitional(x, y));
            }
        }
    }

    #[test]
    fn centralizers_of_noncentral_elements() {
        let g = heis27();
        // |C_G(g)| = |G:G'| = p^{2n} for noncentral g.
        let x = g.element(
            FpVector::new(3, vec![1, 0, 0]),
            FpVector::new(3, vec![0, 1, 0]),
            FpVector::zeros(3, 3),
        );
        assert!(!g.is_central(&x));
        assert_eq!(g.centralizer_order(&x), 729);
        let z = g.element(
            FpVector::zeros(3, 3),
            FpVector::zeros(3, 3),
            FpVector::new(3, vec![1, 2, 0]),
        );
        assert!(g.is_central(&z));
        assert_eq!(g.centralizer_order(&z), g.order());
    }

    #[test]
    fn class_count_formula() {
        // k(G) = |G:G'| + |G'| − 1 for these groups.
        let g = heis8();
        assert_eq!(g.class_count(), 64 + 8 - 1);
        let q = heis27();
        assert_eq!(q.class_count(), 729 + 27 - 1);
    }

    #[test]
    fn quotient_bookkeeping() {
        let g = heis8();
        let n1 = g.central_subspaces(2); // dim-2 lifted subspaces
        assert_eq!(n1.len(), 7);
        let q = g.quotient(&n1[0]).unwrap();
        assert_eq!(q.order(), 2u128.pow(6 + 1));
        assert_eq!(q.central_order(), 2);
        // Quotient by zero changes nothing.
        let q0 = g.quotient(&Subspace::zero(2, 3)).unwrap();
        assert_eq!(q0.order(), g.order());
        // Full kernel rejected.
        assert!(matches!(
            g.quotient(&Subspace::full(2, 3)),
            Err(QuotientError::FullKernel)
        ));
    }

    #[test]
    fn heisenberg_gf4_quotient_dims() {
        let f = make_field(2, 2, &[1, 1, 1]).unwrap();
        let g = SemifieldGroup::full(f.pre().clone());
        let hyper = g.central_subspaces(1);
        assert_eq!(hyper.len(), 3);
        let q = g.quotient(&hyper[0]).unwrap();
        assert_eq!(q.order(), 32); // p^(2n+1) extraspecial quotient
        assert_eq!(q.derived_order(), 2);
        assert_eq!(q.order() / q.derived_order(), 16);
    }
}

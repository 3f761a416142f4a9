//! Exhaustive isotopism testing between semifields of the same order.
//!
//! An isotopism F1 → F2 is a triple (α, β, γ) of additive bijections with
//! γ(x ∗₁ y) = α(x) ∗₂ β(y). Substituting y = 1 and then x = 1 shows that α
//! together with u = β(1) determines γ = R²_u ∘ α and β = (L²_{α(1)})⁻¹ ∘ γ,
//! so scanning all invertible α and all nonzero u is a complete search of
//! |GL(n,p)|·(p^n − 1) candidates with an O(n⁴) verification each.

use crate::gfp::{FpMatrix, FpVector, InvertibleStream};
use crate::semifield::Semifield;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessDirection {
    Isotopic,
    AntiIsotopic,
}

/// A verified isotopism (or anti-isotopism) witness (α, β, γ) = (a, b, c).
#[derive(Debug, Clone)]
pub struct IsotopismWitness {
    pub a: FpMatrix,
    pub b: FpMatrix,
    pub c: FpMatrix,
    pub direction: WitnessDirection,
}

impl IsotopismWitness {
    /// Re-verify the defining relation on all n² basis pairs, exactly.
    pub fn verify(&self, f1: &Semifield, f2: &Semifield) -> bool {
        let n = f1.n();
        let p = f1.p();
        if !(self.a.is_invertible() && self.b.is_invertible() && self.c.is_invertible()) {
            return false;
        }
        for i in 0..n {
            let ei = FpVector::basis(p, n, i);
            let aei = self.a.mul_vec(&ei);
            for j in 0..n {
                let ej = FpVector::basis(p, n, j);
                let bej = self.b.mul_vec(&ej);
                let lhs = self.c.mul_vec(&f1.multiply(&ei, &ej));
                let rhs = match self.direction {
                    WitnessDirection::Isotopic => f2.multiply(&aei, &bej),
                    WitnessDirection::AntiIsotopic => f2.multiply(&bej, &aei),
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Compose two isotopism witnesses F1 → F2 → F3 into one F1 → F3.
    /// Only defined when both witnesses are plain isotopisms.
    pub fn compose(first: &IsotopismWitness, second: &IsotopismWitness) -> Option<IsotopismWitness> {
        if first.direction != WitnessDirection::Isotopic
            || second.direction != WitnessDirection::Isotopic
        {
            return None;
        }
        Some(IsotopismWitness {
            a: second.a.mul(&first.a),
            b: second.b.mul(&first.b),
            c: second.c.mul(&first.c),
            direction: WitnessDirection::Isotopic,
        })
    }
}

/// Precomputed multiplication tables of the target semifield, indexed by
/// vector code.
struct TargetTables {
    left: Vec<FpMatrix>,
    right: Vec<FpMatrix>,
    left_inv: Vec<Option<FpMatrix>>,
}

impl TargetTables {
    fn new(f: &Semifield) -> Self {
        let p = f.p();
        let n = f.n();
        let total = (p as u64).pow(n as u32);
        let mut left = Vec::with_capacity(total as usize);
        let mut right = Vec::with_capacity(total as usize);
        let mut left_inv = Vec::with_capacity(total as usize);
        for code in 0..total {
            let v = FpVector::decode(p, n, code);
            let l = f.pre().left_matrix(&v);
            left_inv.push(l.inverse());
            left.push(l);
            right.push(f.pre().right_matrix(&v));
        }
        TargetTables {
            left,
            right,
            left_inv,
        }
    }
}

/// Decide whether two semifields of the same order are isotopic, returning a
/// verified witness or exhausting the search space.
pub fn are_isotopic(f1: &Semifield, f2: &Semifield) -> Option<IsotopismWitness> {
    assert_eq!(
        (f1.p(), f1.n()),
        (f2.p(), f2.n()),
        "isotopism needs matching (p, n)"
    );
    let p = f1.p();
    let n = f1.n();
    let tables = TargetTables::new(f2);
    // Basis products of F1, flattened.
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        let ei = FpVector::basis(p, n, i);
        for j in 0..n {
            let ej = FpVector::basis(p, n, j);
            products.push(f1.multiply(&ei, &ej));
        }
    }
    let e1 = f1.identity().clone();
    let stream = InvertibleStream::new(n, p);
    let witness = (1..stream.first_row_codes())
        .into_par_iter()
        .find_map_first(|row0| {
            scan_first_row(p, n, &stream, row0, &tables, &products, &e1)
        })?;
    let w = IsotopismWitness {
        a: witness.0,
        b: witness.1,
        c: witness.2,
        direction: WitnessDirection::Isotopic,
    };
    assert!(w.verify(f1, f2), "search produced an invalid witness");
    Some(w)
}

fn scan_first_row(
    p: u8,
    n: usize,
    stream: &InvertibleStream,
    row0: u64,
    tables: &TargetTables,
    products: &[FpVector],
    e1: &FpVector,
) -> Option<(FpMatrix, FpMatrix, FpMatrix)> {
    let codes = (p as u64).pow(n as u32);
    for a in stream.iter_with_first_row(row0) {
        let ae1 = a.mul_vec(e1);
        let Some(t) = tables.left_inv[ae1.encode() as usize].as_ref() else {
            continue;
        };
        // Columns of A are the images A·e_i.
        let acol_codes: Vec<usize> = (0..n).map(|i| a.column(i).encode() as usize).collect();
        for u in 1..codes {
            let c = tables.right[u as usize].mul(&a);
            let b = t.mul(&c);
            if relation_holds(n, tables, products, &acol_codes, &b, &c) {
                return Some((a, b, c));
            }
        }
    }
    None
}

#[inline]
fn relation_holds(
    n: usize,
    tables: &TargetTables,
    products: &[FpVector],
    acol_codes: &[usize],
    b: &FpMatrix,
    c: &FpMatrix,
) -> bool {
    for j in 0..n {
        let bej = b.column(j);
        for i in 0..n {
            let lhs = c.mul_vec(&products[i * n + j]);
            let rhs = tables.left[acol_codes[i]].mul_vec(&bej);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Anti-isotopism reduces to isotopism against the opposite semifield.
pub fn are_anti_isotopic(f1: &Semifield, f2: &Semifield) -> Option<IsotopismWitness> {
    let op = f2.opposite();
    are_isotopic(f1, &op).map(|w| {
        let w = IsotopismWitness {
            direction: WitnessDirection::AntiIsotopic,
            ..w
        };
        assert!(w.verify(f1, f2), "anti-isotopism witness failed to verify");
        w
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{albert_parameter_scan, make_field};

    #[test]
    fn reflexive_with_identity_witness() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let w = are_isotopic(&f, &f).expect("a semifield is isotopic to itself");
        assert!(w.verify(&f, &f));
        // The identity triple is itself a witness.
        let id = FpMatrix::identity(2, 3);
        let trivial = IsotopismWitness {
            a: id.clone(),
            b: id.clone(),
            c: id,
            direction: WitnessDirection::Isotopic,
        };
        assert!(trivial.verify(&f, &f));
    }

    #[test]
    fn principal_isotope_is_isotopic() {
        let f = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        let e = FpVector::new(3, vec![1, 2, 0]);
        let g = f.pre().principal_isotope(&e).unwrap();
        let w = are_isotopic(&f, &g).expect("principal isotopes are isotopic");
        assert!(w.verify(&f, &g));
    }

    #[test]
    fn commutative_semifield_is_anti_isotopic_to_itself() {
        let f = make_field(2, 2, &[1, 1, 1]).unwrap();
        let w = are_anti_isotopic(&f, &f).unwrap();
        assert!(w.verify(&f, &f));
    }

    #[test]
    fn field_not_isotopic_to_proper_order27() {
        let (good, _) = albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
        let proper = good
            .unwrap()
            .principal_isotope(&FpVector::basis(3, 3, 0))
            .unwrap();
        let field = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        assert!(are_isotopic(&field, &proper).is_none());
    }

    #[test]
    fn symmetry_both_directions() {
        let (good, _) = albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
        let proper = good
            .unwrap()
            .principal_isotope(&FpVector::basis(3, 3, 0))
            .unwrap();
        let twisted = proper
            .pre()
            .principal_isotope(&FpVector::new(3, vec![1, 1, 0]))
            .unwrap();
        let w12 = are_isotopic(&proper, &twisted).unwrap();
        let w21 = are_isotopic(&twisted, &proper).unwrap();
        assert!(w12.verify(&proper, &twisted));
        assert!(w21.verify(&twisted, &proper));
    }

    #[test]
    fn witness_composition_is_transitive() {
        let f = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        let g = f.pre().principal_isotope(&FpVector::new(3, vec![0, 1, 0])).unwrap();
        let h = f.pre().principal_isotope(&FpVector::new(3, vec![1, 1, 2])).unwrap();
        let w_fg = are_isotopic(&f, &g).unwrap();
        let w_gh = are_isotopic(&g, &h).unwrap();
        let w_fh = IsotopismWitness::compose(&w_fg, &w_gh).unwrap();
        assert!(w_fh.verify(&f, &h));
    }
}

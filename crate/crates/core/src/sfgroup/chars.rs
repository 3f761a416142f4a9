//! Exact character tables of semi-extraspecial groups.
//!
//! Values are stored symbolically as integer multiples of p-th roots of
//! unity; orthogonality is verified exactly by reducing count vectors over
//! Z[ω] modulo the relation 1 + ω + … + ω^{p−1} = 0. No floating point.

use super::checks::check_ses;
use super::{GroupElement, SemifieldGroup};
use crate::gfp::FpVector;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharsError {
    #[error("group is not semi-extraspecial")]
    NotSes,
    #[error("Brauer pairs are defined for odd primes only")]
    EvenPrime,
    #[error("groups have different characteristic")]
    MixedPrimes,
}

/// A character value: zero or coeff·ω^exp for the primitive p-th root ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharValue {
    Zero,
    Rou { coeff: u64, exp: u8 },
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: GroupElement,
    pub size: u128,
    pub central: bool,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub p: u8,
    pub group_order: u128,
    pub classes: Vec<ConjClass>,
    /// rows[r][class]; row r has degree degrees[r].
    pub rows: Vec<Vec<CharValue>>,
    pub degrees: Vec<u64>,
}

/// Build the character table of a semi-extraspecial G(F)/N:
/// |G:G′| linear characters (duals of G/G′) and |G′| − 1 nonlinear ones
/// that live on the center and vanish outside it.
pub fn character_table(g: &SemifieldGroup) -> Result<CharacterTable, CharsError> {
    if !check_ses(g).is_ses {
        return Err(CharsError::NotSes);
    }
    let p = g.p();
    let n = g.n();
    let b = g.central_dim();
    let codes = (p as u64).pow(n as u32);

    // Conjugacy classes: central singletons first (in canonical-rep code
    // order), then one class per (a, b) ≠ 0 — the full coset gG′.
    let mut classes = Vec::new();
    for c in g.central_reps() {
        classes.push(ConjClass {
            rep: g.element(FpVector::zeros(p, n), FpVector::zeros(p, n), c),
            size: 1,
            central: true,
        });
    }
    for ac in 0..codes {
        for bc in 0..codes {
            if ac == 0 && bc == 0 {
                continue;
            }
            classes.push(ConjClass {
                rep: g.element(
                    FpVector::decode(p, n, ac),
                    FpVector::decode(p, n, bc),
                    FpVector::zeros(p, n),
                ),
                size: g.central_order(),
                central: false,
            });
        }
    }

    // Quotient coordinates of the center: the free (non-pivot) positions of
    // canonical representatives.
    let pivots = g.kernel().pivots().to_vec();
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();

    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    // Linear characters: duals of G/G′ ≅ F².
    let lin_total = (p as u64).pow(2 * n as u32);
    for mu in 0..lin_total {
        let m = FpVector::decode(p, 2 * n, mu);
        let row: Vec<CharValue> = classes
            .iter()
            .map(|cl| {
                if cl.central {
                    CharValue::Rou { coeff: 1, exp: 0 }
                } else {
                    let mut e = 0u16;
                    for (i, &mi) in m.coords().iter().enumerate() {
                        let xi = if i < n {
                            cl.rep.a.coords()[i]
                        } else {
                            cl.rep.b.coords()[i - n]
                        };
                        e += mi as u16 * xi as u16;
                    }
                    CharValue::Rou {
                        coeff: 1,
                        exp: (e % p as u16) as u8,
                    }
                }
            })
            .collect();
        rows.push(row);
        degrees.push(1);
    }
    // Nonlinear characters: one per nontrivial functional ν on the center,
    // χ_ν(0,0,c) = p^n · ω^{ν(c)}, zero off the center.
    let nl_total = (p as u64).pow(b as u32);
    let degree = (p as u64).pow(n as u32);
    for nu in 1..nl_total {
        let coeffs = FpVector::decode(p, b, nu);
        let row: Vec<CharValue> = classes
            .iter()
            .map(|cl| {
                if cl.central {
                    let mut e = 0u16;
                    for (ci, &pos) in coeffs.coords().iter().zip(&free) {
                        e += *ci as u16 * cl.rep.c.coords()[pos] as u16;
                    }
                    CharValue::Rou {
                        coeff: degree,
                        exp: (e % p as u16) as u8,
                    }
                } else {
                    CharValue::Zero
                }
            })
            .collect();
        rows.push(row);
        degrees.push(degree);
    }

    Ok(CharacterTable {
        p,
        group_order: g.order(),
        classes,
        rows,
        degrees,
    })
}

/// Canonical form of a cyclotomic-integer count vector: subtract the last
/// coordinate from all (the kernel of Z^p → Z[ω] is spanned by the all-ones
/// vector for prime p).
fn reduce_counts(v: &mut [i128]) {
    let last = *v.last().unwrap();
    for x in v.iter_mut() {
        *x -= last;
    }
}

impl CharacterTable {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Σ_cls |cls|·χ(cls)·ψ(cls)* as a reduced count vector over Z[ω].
    fn row_inner(&self, r1: usize, r2: usize) -> Vec<i128> {
        let p = self.p as usize;
        let mut counts = vec![0i128; p];
        for (cl, (v1, v2)) in self.rows[r1].iter().zip(&self.rows[r2]).enumerate() {
            if let (CharValue::Rou { coeff: c1, exp: e1 }, CharValue::Rou { coeff: c2, exp: e2 }) =
                (v1, v2)
            {
                let e = ((*e1 as usize) + p - (*e2 as usize)) % p;
                counts[e] += self.classes[cl].size as i128 * *c1 as i128 * *c2 as i128;
            }
        }
        reduce_counts(&mut counts);
        counts
    }

    /// Σ_rows χ(cl1)·χ(cl2)* as a reduced count vector.
    fn column_inner(&self, cl1: usize, cl2: usize) -> Vec<i128> {
        let p = self.p as usize;
        let mut counts = vec![0i128; p];
        for row in &self.rows {
            if let (CharValue::Rou { coeff: c1, exp: e1 }, CharValue::Rou { coeff: c2, exp: e2 }) =
                (&row[cl1], &row[cl2])
            {
                let e = ((*e1 as usize) + p - (*e2 as usize)) % p;
                counts[e] += *c1 as i128 * *c2 as i128;
            }
        }
        reduce_counts(&mut counts);
        counts
    }

    fn delta_vector(&self, value: i128) -> Vec<i128> {
        let mut v = vec![0i128; self.p as usize];
        v[0] = value;
        reduce_counts(&mut v);
        v
    }

    /// First orthogonality, exactly, over every pair of rows. Returns the
    /// first failing pair if any.
    pub fn verify_first_orthogonality(&self) -> Result<(), (usize, usize)> {
        let k = self.rows.len();
        let fail = (0..k).into_par_iter().find_map_first(|r1| {
            for r2 in r1..k {
                let inner = self.row_inner(r1, r2);
                let expected = if r1 == r2 {
                    self.delta_vector(self.group_order as i128)
                } else {
                    self.delta_vector(0)
                };
                if inner != expected {
                    return Some((r1, r2));
                }
            }
            None
        });
        match fail {
            None => Ok(()),
            Some(pair) => Err(pair),
        }
    }

    /// Second orthogonality, exactly, over every pair of columns.
    pub fn verify_second_orthogonality(&self) -> Result<(), (usize, usize)> {
        let k = self.classes.len();
        let fail = (0..k).into_par_iter().find_map_first(|c1| {
            for c2 in c1..k {
                let inner = self.column_inner(c1, c2);
                let expected = if c1 == c2 {
                    self.delta_vector((self.group_order / self.classes[c1].size) as i128)
                } else {
                    self.delta_vector(0)
                };
                if inner != expected {
                    return Some((c1, c2));
                }
            }
            None
        });
        match fail {
            None => Ok(()),
            Some(pair) => Err(pair),
        }
    }
}

/// Two s.e.s. groups have isomorphic character tables iff |G:G′| = |H:H′|
/// and |G′| = |H′|.
pub fn char_tables_equal(g: &SemifieldGroup, h: &SemifieldGroup) -> Result<bool, CharsError> {
    if !check_ses(g).is_ses || !check_ses(h).is_ses {
        return Err(CharsError::NotSes);
    }
    let gd = g.derived_order();
    let hd = h.derived_order();
    Ok(g.order() / gd == h.order() / hd && gd == hd)
}

/// Brauer-pair predicate for non-isomorphic s.e.s. p-groups, odd p:
/// |P:P′| = |Q:Q′|, |P′| = |Q′|, and |℧₁(P)| = |℧₁(Q)|. The caller supplies
/// the non-isomorphism certificate.
pub fn brauer_pair(
    g: &SemifieldGroup,
    h: &SemifieldGroup,
    non_isomorphic: bool,
) -> Result<bool, CharsError> {
    if g.p() != h.p() {
        return Err(CharsError::MixedPrimes);
    }
    if g.p() == 2 {
        return Err(CharsError::EvenPrime);
    }
    if !check_ses(g).is_ses || !check_ses(h).is_ses {
        return Err(CharsError::NotSes);
    }
    let tables = char_tables_equal(g, h)?;
    let agemo_match = g.order_structure().agemo_order == h.order_structure().agemo_order;
    Ok(non_isomorphic && tables && agemo_match)
}

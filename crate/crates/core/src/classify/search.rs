//! Exhaustive enumeration of semifields of small order.
//!
//! The search walks spread-set bases {I, M₂, …, Mₙ} with column 0 of Mᵢ
//! pinned to eᵢ. Pinning the first columns makes the basis the unique one of
//! its additive matrix space (the column-0 map is injective on a spread
//! space), so every space of left multiplications containing the identity is
//! visited exactly once, and each completed tuple is already a semifield
//! with identity e₁. Post-hoc isotopism classification deduplicates the
//! survivors into classes.

use super::invariants::{commutative_pairing_dim, find_commutative_principal_isotope};
use super::isotopism::are_anti_isotopic;
use super::isotopism::are_isotopic;
use crate::gfp::FpVector;
use crate::semifield::{default_poly, make_field, PreSemifield, Semifield};
use crate::sfgroup::{abelian_census, SemifieldGroup};
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("order {p}^{n} is not in the supported enumeration range")]
    Unsupported { p: u8, n: usize },
    #[error("order {p}^{n} requires the long-run flag")]
    LongRunRequired { p: u8, n: usize },
}

#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    pub budget: Option<Duration>,
    pub long_run: bool,
    /// Additionally classify without invariant prefilters and compare.
    pub cross_check: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Accepted partial bases across all levels.
    pub nodes: u64,
    /// Candidate matrices rejected by the invertibility pruning.
    pub rejected: u64,
    /// Completed spread spaces (= normalized semifields).
    pub survivors: u64,
    /// Distinct conjugation orbits among the survivors.
    pub orbits: u64,
    /// Wall time of the search+classification; not part of any file format.
    pub wall: Duration,
    pub search_wall: Duration,
    pub canon_wall: Duration,
    pub classify_wall: Duration,
}

/// One isotopism class of the enumerated catalog.
#[derive(Debug, Clone)]
pub struct ClassRep {
    pub semifield: Semifield,
    pub label: String,
    pub class_size: u64,
    pub commutative_class: bool,
    pub contains_field: bool,
    pub nuclei_orders: (u128, u128, u128),
    pub census_count: u128,
    pub census_h: Option<u32>,
    /// Index of the iso-or-anti equivalence group this class belongs to.
    pub merged_group: usize,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub p: u8,
    pub n: usize,
    pub classes: Vec<ClassRep>,
    pub merged_class_count: usize,
    pub commutative_class_count: usize,
    pub completed: bool,
    pub prefilter_ok: bool,
    pub stats: SearchStats,
}

impl EnumerationReport {
    pub fn isotopism_class_count(&self) -> usize {
        self.classes.len()
    }
}

/// In-place invertibility check on a flat n×n buffer (destroys the buffer).
fn rank_full(p: u8, n: usize, m: &mut [u8]) -> bool {
    for col in 0..n {
        // Find a pivot in this column at or below row `col`.
        let mut pivot = usize::MAX;
        for r in col..n {
            if m[r * n + col] != 0 {
                pivot = r;
                break;
            }
        }
        if pivot == usize::MAX {
            return false;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
        }
        let inv = crate::gfp::inv_mod(m[col * n + col], p);
        for j in 0..n {
            m[col * n + j] = crate::gfp::mul_mod(m[col * n + j], inv, p);
        }
        for r in (col + 1)..n {
            let f = m[r * n + col];
            if f != 0 {
                for j in 0..n {
                    m[r * n + j] =
                        crate::gfp::sub_mod(m[r * n + j], crate::gfp::mul_mod(f, m[col * n + j], p), p);
                }
            }
        }
    }
    true
}

struct LevelSearch<'a> {
    p: u8,
    n: usize,
    /// Candidate codes per level: free entries are everything except col 0.
    free_count: usize,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
}

/// A completed normalized basis, encoded as the concatenation of
/// M₂, …, Mₙ (row-major; M₁ = I is implicit).
struct Survivor {
    code: Vec<u8>,
}

fn survivor_mats(_p: u8, n: usize, code: &[u8]) -> Vec<Vec<u8>> {
    let mut id = vec![0u8; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut mats = vec![id];
    for chunk in code.chunks(n * n) {
        mats.push(chunk.to_vec());
    }
    mats
}

struct TaskOutput {
    survivors: Vec<Survivor>,
    nodes: u64,
    rejected: u64,
}

impl<'a> LevelSearch<'a> {
    /// Decode a candidate for `level` (column 0 = e_level, the rest from the
    /// base-p code, row-major over the free entries).
    fn decode_candidate(&self, level: usize, mut code: u64, out: &mut [u8]) {
        let n = self.n;
        out.fill(0);
        out[level * n] = 1;
        for r in (0..n).rev() {
            for c in (1..n).rev() {
                out[r * n + c] = (code % self.p as u64) as u8;
                code /= self.p as u64;
            }
        }
    }

    /// All translates M + v for v in the current span must be invertible.
    fn candidate_valid(&self, cand: &[u8], span: &[Vec<u8>], scratch: &mut [u8]) -> bool {
        let nn = self.n * self.n;
        for v in span {
            for idx in 0..nn {
                scratch[idx] = crate::gfp::add_mod(cand[idx], v[idx], self.p);
            }
            if !rank_full(self.p, self.n, scratch) {
                return false;
            }
        }
        true
    }

    fn dfs(
        &self,
        level: usize,
        mats: &mut Vec<Vec<u8>>,
        span: &Vec<Vec<u8>>,
        out: &mut TaskOutput,
    ) {
        if self.expired.load(Ordering::Relaxed) {
            return;
        }
        let n = self.n;
        if level == n {
            let mut code = Vec::with_capacity((n - 1) * n * n);
            for m in &mats[1..] {
                code.extend_from_slice(m);
            }
            out.survivors.push(Survivor { code });
            return;
        }
        let total = (self.p as u64).pow(self.free_count as u32);
        let mut cand = vec![0u8; n * n];
        let mut scratch = vec![0u8; n * n];
        for code in 0..total {
            if code % 4096 == 0 {
                if let Some(d) = self.deadline {
                    if Instant::now() > d {
                        self.expired.store(true, Ordering::Relaxed);
                        return;
                    }
                }
                if self.expired.load(Ordering::Relaxed) {
                    return;
                }
            }
            self.decode_candidate(level, code, &mut cand);
            if self.candidate_valid(&cand, span, &mut scratch) {
                out.nodes += 1;
                mats.push(cand.clone());
                let child_span = extend_span(self.p, span, &cand);
                self.dfs(level + 1, mats, &child_span, out);
                mats.pop();
            } else {
                out.rejected += 1;
            }
        }
    }
}

/// Bit-packed GF(2) search path: an n×n matrix is a u32 with bit r·n+c,
/// spans add by xor, and invertibility is a short bit-Gauss.
struct BitSearch<'a> {
    n: usize,
    free_count: usize,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
}

#[inline]
fn bits_invertible(m: u32, n: usize) -> bool {
    let mask = (1u32 << n) - 1;
    let mut rows = [0u32; 8];
    for (r, row) in rows.iter_mut().enumerate().take(n) {
        *row = (m >> (r * n)) & mask;
    }
    for col in 0..n {
        let bit = 1u32 << col;
        let mut pivot = usize::MAX;
        for r in col..n {
            if rows[r] & bit != 0 {
                pivot = r;
                break;
            }
        }
        if pivot == usize::MAX {
            return false;
        }
        rows.swap(col, pivot);
        for r in (col + 1)..n {
            if rows[r] & bit != 0 {
                rows[r] ^= rows[col];
            }
        }
    }
    true
}

impl<'a> BitSearch<'a> {
    /// Column 0 is e_level; the free bits fill columns 1..n row-major, with
    /// the same digit order as the generic path.
    #[inline]
    fn decode_candidate(&self, level: usize, code: u64) -> u32 {
        let n = self.n;
        let mut m = 1u32 << (level * n);
        let mut shift = self.free_count;
        for r in 0..n {
            for c in 1..n {
                shift -= 1;
                if (code >> shift) & 1 == 1 {
                    m |= 1 << (r * n + c);
                }
            }
        }
        m
    }

    #[inline]
    fn candidate_valid(&self, cand: u32, span: &[u32]) -> bool {
        span.iter().all(|&v| bits_invertible(cand ^ v, self.n))
    }

    fn dfs(&self, level: usize, mats: &mut Vec<u32>, span: &Vec<u32>, out: &mut TaskOutput) {
        if self.expired.load(Ordering::Relaxed) {
            return;
        }
        let n = self.n;
        if level == n {
            let mut code = Vec::with_capacity((n - 1) * n * n);
            for &m in &mats[1..] {
                for idx in 0..n * n {
                    code.push(((m >> idx) & 1) as u8);
                }
            }
            out.survivors.push(Survivor { code });
            return;
        }
        let total = 1u64 << self.free_count;
        for code in 0..total {
            if code % 8192 == 0 {
                if let Some(d) = self.deadline {
                    if Instant::now() > d {
                        self.expired.store(true, Ordering::Relaxed);
                        return;
                    }
                }
                if self.expired.load(Ordering::Relaxed) {
                    return;
                }
            }
            let cand = self.decode_candidate(level, code);
            if self.candidate_valid(cand, span) {
                out.nodes += 1;
                mats.push(cand);
                let mut child_span = span.clone();
                child_span.extend(span.iter().map(|&v| v ^ cand));
                self.dfs(level + 1, mats, &child_span, out);
                mats.pop();
            } else {
                out.rejected += 1;
            }
        }
    }
}

fn mats_to_presemifield(p: u8, n: usize, mats: &[Vec<u8>]) -> PreSemifield {
    let mut cube = vec![0u8; n * n * n];
    for (i, m) in mats.iter().enumerate() {
        for j in 0..n {
            for k in 0..n {
                cube[(i * n + j) * n + k] = m[k * n + j];
            }
        }
    }
    PreSemifield::from_cube(p, n, cube)
}

/// Canonical form of a normalized basis under conjugation: the
/// lexicographically smallest re-normalized tuple over all T·S·T⁻¹, T in
/// GL(n, p). Conjugate spaces are isotopic, so deduplicating by this form
/// before the exact isotopism classification keeps one representative per
/// conjugacy orbit without ever merging distinct isotopism classes.
struct Canonicalizer {
    p: u8,
    n: usize,
    /// (T, T⁻¹) pairs, flat row-major.
    transforms: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Canonicalizer {
    fn new(p: u8, n: usize) -> Self {
        let transforms = crate::gfp::InvertibleStream::new(n, p)
            .iter()
            .map(|t| {
                let inv = t.inverse().expect("stream yields invertible matrices");
                let flat = |m: &crate::gfp::FpMatrix| {
                    let mut out = vec![0u8; n * n];
                    for r in 0..n {
                        for c in 0..n {
                            out[r * n + c] = m.at(r, c);
                        }
                    }
                    out
                };
                (flat(&t), flat(&inv))
            })
            .collect();
        Canonicalizer { p, n, transforms }
    }

    fn mat_mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let n = self.n;
        let p = self.p as u16;
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u16;
                for k in 0..n {
                    acc += a[r * n + k] as u16 * b[k * n + c] as u16;
                }
                out[r * n + c] = (acc % p) as u8;
            }
        }
    }

    /// Invert the n×n matrix whose columns are the first columns of the
    /// conjugated basis mats; None if singular (cannot happen for a spread).
    fn renormalize(&self, conj: &[Vec<u8>], out: &mut Vec<Vec<u8>>) {
        let n = self.n;
        let p = self.p;
        // V[r][i] = col0(conj_i)[r]
        let mut v = crate::gfp::FpMatrix::zeros(p, n, n);
        for (i, m) in conj.iter().enumerate() {
            for r in 0..n {
                v.set(r, i, m[r * n]);
            }
        }
        let vinv = v.inverse().expect("column-0 map is bijective on a spread");
        // M′_j = Σ_i vinv[i][j] · conj_i
        for j in 0..n {
            let mj = &mut out[j];
            mj.fill(0);
            for i in 0..n {
                let coef = vinv.at(i, j);
                if coef != 0 {
                    for (t, &c) in mj.iter_mut().zip(&conj[i]) {
                        *t = crate::gfp::add_mod(*t, crate::gfp::mul_mod(coef, c, p), p);
                    }
                }
            }
        }
    }

    /// Visit the encoding of every conjugate T·S·T⁻¹ of the given basis.
    fn for_each_conjugate(&self, mats: &[Vec<u8>], mut f: impl FnMut(&[u8])) {
        let n = self.n;
        let mut conj = vec![vec![0u8; n * n]; n];
        let mut renorm = vec![vec![0u8; n * n]; n];
        let mut tmp = vec![0u8; n * n];
        let mut code = vec![0u8; (n - 1) * n * n];
        for (t, tinv) in &self.transforms {
            for (i, m) in mats.iter().enumerate() {
                self.mat_mul(t, m, &mut tmp);
                self.mat_mul(&tmp, tinv, &mut conj[i]);
            }
            self.renormalize(&conj, &mut renorm);
            for (dst, m) in code.chunks_mut(n * n).zip(&renorm[1..]) {
                dst.copy_from_slice(m);
            }
            f(&code);
        }
    }
}

fn extend_span(p: u8, span: &[Vec<u8>], m: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(span.len() * p as usize);
    out.extend_from_slice(span);
    for c in 1..p {
        for v in span {
            let mut w = v.clone();
            for (wi, &mi) in w.iter_mut().zip(m) {
                *wi = crate::gfp::add_mod(*wi, crate::gfp::mul_mod(c, mi, p), p);
            }
            out.push(w);
        }
    }
    out
}

/// Enumerate all semifields of order p^n up to isotopism.
///
/// Default budgets support (p, n) in {(2,3), (2,4), (3,3)}; (2,5) sits
/// behind the long-run flag. A deadline makes the search return with
/// `completed = false` and no classification rather than a partial count.
pub fn enumerate_semifields(
    p: u8,
    n: usize,
    opts: &EnumerateOptions,
) -> Result<EnumerationReport, EnumerateError> {
    match (p, n) {
        (2, 3) | (2, 4) | (3, 3) => {}
        (2, 5) => {
            if !opts.long_run {
                return Err(EnumerateError::LongRunRequired { p, n });
            }
        }
        _ => return Err(EnumerateError::Unsupported { p, n }),
    }
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let expired = AtomicBool::new(false);
    let free_count = n * (n - 1);

    // Level-1 candidates scan in parallel; each accepted candidate roots a
    // sequential subtree. Results merge in candidate order.
    let total = (p as u64).pow(free_count as u32);
    let chunk: u64 = 256;
    let chunk_count = total.div_ceil(chunk);
    let outputs: Vec<TaskOutput> = if p == 2 {
        let search = BitSearch {
            n,
            free_count,
            deadline,
            expired: &expired,
        };
        let identity_bits: u32 = (0..n).map(|i| 1u32 << (i * n + i)).sum();
        let base_span = vec![0u32, identity_bits];
        (0..chunk_count)
            .into_par_iter()
            .map(|ci| {
                let mut out = TaskOutput {
                    survivors: Vec::new(),
                    nodes: 0,
                    rejected: 0,
                };
                for code in (ci * chunk)..((ci + 1) * chunk).min(total) {
                    if search.expired.load(Ordering::Relaxed) {
                        break;
                    }
                    if let Some(d) = search.deadline {
                        if Instant::now() > d {
                            search.expired.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                    let cand = search.decode_candidate(1, code);
                    if search.candidate_valid(cand, &base_span) {
                        out.nodes += 1;
                        let mut mats = vec![identity_bits, cand];
                        let child_span = vec![0u32, identity_bits, cand, cand ^ identity_bits];
                        search.dfs(2, &mut mats, &child_span, &mut out);
                    } else {
                        out.rejected += 1;
                    }
                }
                out
            })
            .collect()
    } else {
        let search = LevelSearch {
            p,
            n,
            free_count,
            deadline,
            expired: &expired,
        };
        let identity_flat: Vec<u8> = {
            let mut m = vec![0u8; n * n];
            for i in 0..n {
                m[i * n + i] = 1;
            }
            m
        };
        // span of {I} = {0, I, 2I, ...}
        let base_span: Vec<Vec<u8>> = (0..p)
            .map(|c| identity_flat.iter().map(|&e| crate::gfp::mul_mod(e, c, p)).collect())
            .collect();
        (0..chunk_count)
            .into_par_iter()
            .map(|ci| {
                let mut out = TaskOutput {
                    survivors: Vec::new(),
                    nodes: 0,
                    rejected: 0,
                };
                let mut cand = vec![0u8; n * n];
                let mut scratch = vec![0u8; n * n];
                for code in (ci * chunk)..((ci + 1) * chunk).min(total) {
                    if search.expired.load(Ordering::Relaxed) {
                        break;
                    }
                    if let Some(d) = search.deadline {
                        if Instant::now() > d {
                            search.expired.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                    search.decode_candidate(1, code, &mut cand);
                    if search.candidate_valid(&cand, &base_span, &mut scratch) {
                        out.nodes += 1;
                        let mut mats = vec![identity_flat.clone(), cand.clone()];
                        let child_span = extend_span(p, &base_span, &cand);
                        search.dfs(2, &mut mats, &child_span, &mut out);
                    } else {
                        out.rejected += 1;
                    }
                }
                out
            })
            .collect()
    };

    let mut stats = SearchStats::default();
    let mut raw_survivors: Vec<Survivor> = Vec::new();
    for o in outputs {
        stats.nodes += o.nodes;
        stats.rejected += o.rejected;
        raw_survivors.extend(o.survivors);
    }
    stats.survivors = raw_survivors.len() as u64;
    stats.search_wall = start.elapsed();
    let completed = !expired.load(Ordering::Relaxed);

    if !completed {
        stats.wall = start.elapsed();
        return Ok(EnumerationReport {
            p,
            n,
            classes: Vec::new(),
            merged_class_count: 0,
            commutative_class_count: 0,
            completed: false,
            prefilter_ok: true,
            stats,
        });
    }

    // Collapse conjugate spaces before the exact classification: conjugation
    // preserves the isotopism class, and one representative per orbit is
    // enough. The set of spaces through I is closed under conjugation, so
    // each orbit is enumerated once and its members looked up.
    let canon_start = Instant::now();
    let canonicalizer = Canonicalizer::new(p, n);
    let mut index: std::collections::HashMap<&[u8], usize> =
        std::collections::HashMap::with_capacity(raw_survivors.len());
    for (i, s) in raw_survivors.iter().enumerate() {
        index.insert(&s.code, i);
    }
    let mut order: Vec<usize> = (0..raw_survivors.len()).collect();
    order.sort_by(|&a, &b| raw_survivors[a].code.cmp(&raw_survivors[b].code));
    let mut orbit_of = vec![usize::MAX; raw_survivors.len()];
    let mut orbit_rep: Vec<usize> = Vec::new();
    let mut orbit_weight: Vec<u64> = Vec::new();
    for &idx in &order {
        if orbit_of[idx] != usize::MAX {
            continue;
        }
        let oid = orbit_rep.len();
        let mut weight = 0u64;
        let mats = survivor_mats(p, n, &raw_survivors[idx].code);
        canonicalizer.for_each_conjugate(&mats, |code| {
            let j = *index
                .get(code)
                .expect("conjugate of a spread space through I is again one");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = oid;
                weight += 1;
            }
        });
        orbit_rep.push(idx);
        orbit_weight.push(weight);
    }
    let identity = FpVector::basis(p, n, 0);
    let survivors: Vec<Semifield> = orbit_rep
        .iter()
        .map(|&idx| {
            let mats = survivor_mats(p, n, &raw_survivors[idx].code);
            Semifield::new(mats_to_presemifield(p, n, &mats), identity.clone())
        })
        .collect();
    assert!(!survivors.is_empty(), "the field of order p^n must be found");
    assert_eq!(
        orbit_weight.iter().sum::<u64>(),
        raw_survivors.len() as u64,
        "orbits partition the survivors"
    );
    stats.orbits = survivors.len() as u64;
    stats.canon_wall = canon_start.elapsed();

    let classify_start = Instant::now();
    let (mut classes, prefilter_ok) = classify_survivors(&survivors, &orbit_weight, opts);
    stats.classify_wall = classify_start.elapsed();

    // Per-class structure: census, commutativity, representative upgrades.
    let field = default_poly(p, n).map(|poly| make_field(p, n, poly).unwrap());
    let mut reps: Vec<ClassRep> = Vec::with_capacity(classes.len());
    for (ci, class) in classes.iter_mut().enumerate() {
        let mut rep = class.rep.clone();
        let nuclei = rep.seminuclei();
        let dims = nuclei.dims();
        // A full middle seminucleus means the representative is associative,
        // i.e. the class is the field class; verify by direct isotopism
        // for the default orders.
        let contains_field = if let Some(f) = &field {
            if p as u32 * (n as u32) <= 12 || dims.1 == n {
                are_isotopic(&rep, f).is_some()
            } else {
                false
            }
        } else {
            false
        };
        if contains_field {
            rep = field.clone().unwrap();
        }
        let group = SemifieldGroup::full(rep.pre().clone());
        let census = abelian_census(&group);
        let commutative = census.count > 2;
        if rep.order() <= 27 {
            let secondary = find_commutative_principal_isotope(rep.pre()).is_some();
            assert_eq!(commutative, secondary, "commutativity criteria disagree");
        }
        if commutative && !rep.is_commutative() && rep.order() <= 27 {
            rep = find_commutative_principal_isotope(rep.pre())
                .expect("commutative isotope exists for a commutative class");
        }
        let nuclei = rep.seminuclei();
        reps.push(ClassRep {
            label: format!("sf_p{p}_n{n}_{ci}"),
            semifield: rep,
            class_size: class.members,
            commutative_class: commutative,
            contains_field,
            nuclei_orders: nuclei.orders(),
            census_count: census.count,
            census_h: census.h,
            merged_group: 0,
        });
    }

    // Iso-or-anti merging between class representatives.
    let k = reps.len();
    let mut merged_root: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in (i + 1)..k {
            if merged_root[j] != j {
                continue;
            }
            if are_anti_isotopic(&reps[i].semifield, &reps[j].semifield).is_some() {
                merged_root[j] = merged_root[i];
            }
        }
    }
    let mut group_ids: Vec<usize> = Vec::new();
    for (i, rep) in reps.iter_mut().enumerate() {
        let root = merged_root[i];
        let gid = match group_ids.iter().position(|&r| r == root) {
            Some(g) => g,
            None => {
                group_ids.push(root);
                group_ids.len() - 1
            }
        };
        rep.merged_group = gid;
    }

    let commutative_class_count = reps.iter().filter(|r| r.commutative_class).count();
    stats.wall = start.elapsed();
    Ok(EnumerationReport {
        p,
        n,
        merged_class_count: group_ids.len(),
        commutative_class_count,
        classes: reps,
        completed: true,
        prefilter_ok,
        stats,
    })
}

struct RawClass {
    rep: Semifield,
    fingerprint: (usize, usize, usize, usize),
    members: u64,
}

/// Partition survivors into isotopism classes. Invariant fingerprints
/// (census-shape dimension d and the three seminucleus dimensions) bucket
/// the exact tests; every cross-bucket pair of final representatives is
/// re-tested, and on any hit the prefilter is declared invalid and the whole
/// classification is redone without it.
fn classify_survivors(
    survivors: &[Semifield],
    weights: &[u64],
    opts: &EnumerateOptions,
) -> (Vec<RawClass>, bool) {
    let fingerprints: Vec<(usize, usize, usize, usize)> = survivors
        .par_iter()
        .map(|s| {
            let d = commutative_pairing_dim(s.pre());
            let dims = s.seminuclei().dims();
            (d, dims.0, dims.1, dims.2)
        })
        .collect();

    let classes = assign_classes(survivors, weights, &fingerprints, true);

    // Validate the prefilter: distinct representatives must stay distinct
    // under the exact test even across fingerprint buckets.
    let mut prefilter_ok = true;
    'outer: for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            if classes[i].fingerprint != classes[j].fingerprint
                && are_isotopic(&classes[i].rep, &classes[j].rep).is_some()
            {
                prefilter_ok = false;
                break 'outer;
            }
        }
    }
    let classes = if prefilter_ok {
        classes
    } else {
        assign_classes(survivors, weights, &fingerprints, false)
    };

    if opts.cross_check {
        let unfiltered = assign_classes(survivors, weights, &fingerprints, false);
        assert_eq!(
            classes.len(),
            unfiltered.len(),
            "prefiltered and unfiltered classifications disagree"
        );
        // Spot-verify a 1% sample of discarded candidates against their
        // representative with a fresh witness.
        for (idx, s) in survivors.iter().enumerate().step_by(100.min(survivors.len()).max(1)) {
            let hit = classes.iter().any(|c| are_isotopic(s, &c.rep).is_some());
            assert!(hit, "survivor {idx} matches no representative");
        }
    }
    (classes, prefilter_ok)
}

fn assign_classes(
    survivors: &[Semifield],
    weights: &[u64],
    fingerprints: &[(usize, usize, usize, usize)],
    use_prefilter: bool,
) -> Vec<RawClass> {
    let mut classes: Vec<RawClass> = Vec::new();
    for (idx, s) in survivors.iter().enumerate() {
        let fp = fingerprints[idx];
        let mut placed = false;
        for class in classes.iter_mut() {
            if use_prefilter && class.fingerprint != fp {
                continue;
            }
            if are_isotopic(s, &class.rep).is_some() {
                class.members += weights[idx];
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(RawClass {
                rep: s.clone(),
                fingerprint: fp,
                members: weights[idx],
            });
        }
    }
    classes
}

//! The individual verification criteria. Every expected count is pinned
//! here exactly; there are no tolerances because all quantities are integer.

use super::{CriterionOutcome, VerifyContext};
use crate::classify::{EnumerateOptions, enumerate_semifields};
use crate::gfp::FpVector;
use crate::semifield::Semifield;
use crate::sfgroup::{
    abelian_census, brauer_pair, char_tables_equal, character_table, check_ses,
    brute_force_isomorphic, groups_isomorphic_semifield, zv_analysis, SemifieldGroup,
};
use rayon::prelude::*;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub long_run: bool,
    pub long_run_budget: Option<Duration>,
}

pub fn run_all(opts: &RunOptions) -> Vec<CriterionOutcome> {
    let ctx = VerifyContext::build();
    vec![
        criterion_order16(&ctx),
        criterion_order27(&ctx),
        criterion_order32(opts),
        criterion_census_values(&ctx),
        criterion_mid_consistency(&ctx),
        criterion_property_suite(&ctx),
        criterion_character_tables(&ctx),
        criterion_zv(&ctx),
        criterion_isom_consistency(&ctx),
    ]
}

fn proper_reps(report: &crate::classify::EnumerationReport) -> Vec<&Semifield> {
    report
        .classes
        .iter()
        .filter(|c| !c.contains_field)
        .map(|c| &c.semifield)
        .collect()
}

fn proper27_group(ctx: &VerifyContext) -> SemifieldGroup {
    let rep = proper_reps(&ctx.order27)[0];
    SemifieldGroup::full(rep.pre().clone())
}

fn heis27_group(ctx: &VerifyContext) -> SemifieldGroup {
    let rep = ctx
        .order27
        .classes
        .iter()
        .find(|c| c.contains_field)
        .expect("field class present");
    SemifieldGroup::full(rep.semifield.pre().clone())
}

pub fn criterion_order16(ctx: &VerifyContext) -> CriterionOutcome {
    let r = &ctx.order16;
    let counts = (
        r.isotopism_class_count(),
        r.merged_class_count,
        r.commutative_class_count,
    );
    let passed =
        r.completed && r.prefilter_ok && counts == (3, 3, 1) && r.stats.wall <= Duration::from_secs(30 * 60);
    CriterionOutcome {
        id: "order16-classification",
        passed,
        skipped: false,
        detail: format!(
            "iso/merged/commutative = {}/{}/{} (expected 3/3/1), wall {:?}",
            counts.0, counts.1, counts.2, r.stats.wall
        ),
    }
}

pub fn criterion_order27(ctx: &VerifyContext) -> CriterionOutcome {
    let r = &ctx.order27;
    let counts = (
        r.isotopism_class_count(),
        r.merged_class_count,
        r.commutative_class_count,
    );
    let passed =
        r.completed && r.prefilter_ok && counts == (2, 2, 2) && r.stats.wall <= Duration::from_secs(60 * 60);
    CriterionOutcome {
        id: "order27-classification",
        passed,
        skipped: false,
        detail: format!(
            "iso/merged/commutative = {}/{}/{} (expected 2/2/2), wall {:?}",
            counts.0, counts.1, counts.2, r.stats.wall
        ),
    }
}

pub fn criterion_order32(opts: &RunOptions) -> CriterionOutcome {
    if !opts.long_run {
        return CriterionOutcome {
            id: "order32-classification",
            passed: true,
            skipped: true,
            detail: "long-run flag not set; row 2^5 not attempted".into(),
        };
    }
    let enum_opts = EnumerateOptions {
        budget: Some(opts.long_run_budget.unwrap_or(Duration::from_secs(24 * 3600))),
        long_run: true,
        cross_check: false,
    };
    match enumerate_semifields(2, 5, &enum_opts) {
        Err(e) => CriterionOutcome {
            id: "order32-classification",
            passed: false,
            skipped: false,
            detail: format!("enumeration failed: {e}"),
        },
        Ok(r) if !r.completed => CriterionOutcome {
            id: "order32-classification",
            passed: false,
            skipped: true,
            detail: format!(
                "budget exhausted after {:?} ({} survivors so far)",
                r.stats.wall, r.stats.survivors
            ),
        },
        Ok(r) => {
            let counts = (r.isotopism_class_count(), r.merged_class_count);
            CriterionOutcome {
                id: "order32-classification",
                passed: counts == (6, 4),
                skipped: false,
                detail: format!(
                    "iso/merged = {}/{} (expected 6/4), commutative {}, wall {:?}",
                    counts.0, counts.1, r.commutative_class_count, r.stats.wall
                ),
            }
        }
    }
}

pub fn criterion_census_values(ctx: &VerifyContext) -> CriterionOutcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let heis8 = SemifieldGroup::full(ctx.order8.classes[0].semifield.pre().clone());
    let census8 = abelian_census(&heis8);
    if census8.count != 9 || census8.h != Some(3) || !census8.all_pairwise_trivial {
        ok = false;
    }
    notes.push(format!(
        "G(GF(8)): count {} h {:?} trivial {}",
        census8.count, census8.h, census8.all_pairwise_trivial
    ));

    let mut census16_wall = Duration::ZERO;
    for rep in proper_reps(&ctx.order16) {
        let g = SemifieldGroup::full(rep.pre().clone());
        let t0 = Instant::now();
        let census = abelian_census(&g);
        census16_wall = census16_wall.max(t0.elapsed());
        if census.count != 2 {
            ok = false;
        }
        notes.push(format!("proper 16: count {}", census.count));
    }
    if census16_wall > Duration::from_secs(5 * 60) {
        ok = false;
    }
    notes.push(format!("order-16 census wall {census16_wall:?} (limit 5 min, 200787 subspaces)"));

    let proper27 = proper27_group(ctx);
    let census27 = abelian_census(&proper27);
    if census27.count != 4 {
        ok = false;
    }
    notes.push(format!("proper 27: count {}", census27.count));

    CriterionOutcome {
        id: "census-values",
        passed: ok,
        skipped: false,
        detail: notes.join("; "),
    }
}

pub fn criterion_mid_consistency(ctx: &VerifyContext) -> CriterionOutcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for class in &ctx.order27.classes {
        let f = &class.semifield;
        if !f.is_commutative() {
            notes.push(format!("{}: not commutative, skipped", class.label));
            continue;
        }
        let mid = f.seminuclei().mid.order();
        let census = abelian_census(&SemifieldGroup::full(f.pre().clone()));
        if census.count != 1 + mid {
            ok = false;
        }
        notes.push(format!(
            "{}: census {} = 1 + |Mid| {}",
            class.label, census.count, mid
        ));
    }
    CriterionOutcome {
        id: "mid-consistency",
        passed: ok,
        skipped: false,
        detail: notes.join("; "),
    }
}

/// Deterministic xorshift for the sampled property checks.
struct Rng64(u64);

impl Rng64 {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Exhaustive associativity over all |G|³ triples, with a lean fixed-buffer
/// inner loop (only used for |G| ≤ 3⁶, i.e. full groups).
fn exhaustive_associativity(g: &SemifieldGroup) -> bool {
    let p = g.p();
    let n = g.n();
    assert_eq!(g.kernel().dim(), 0, "lean path expects the full group");
    let codes = (p as u64).pow(n as u32) as usize;
    // An element index decomposes as ((a·codes)+b)·codes+c over vector codes.
    let vecs: Vec<Vec<u8>> = (0..codes)
        .map(|c| FpVector::decode(p, n, c as u64).coords().to_vec())
        .collect();
    let order = codes * codes * codes;
    let unpack = |i: usize| (i / (codes * codes), (i / codes) % codes, i % codes);
    (0..order).into_par_iter().all(|i1| {
        let (a1, b1, c1) = unpack(i1);
        let (a1, b1, c1) = (&vecs[a1], &vecs[b1], &vecs[c1]);
        let mut prod = vec![0u8; n];
        let mut pair = [0u8; 24];
        let mut left = [0u8; 24];
        let mut right = [0u8; 24];
        for i2 in 0..order {
            let (a2, b2, c2) = unpack(i2);
            let (a2, b2, c2) = (&vecs[a2], &vecs[b2], &vecs[c2]);
            // pair = g1·g2
            g.pre().multiply_into(a1, b2, &mut prod);
            for k in 0..n {
                pair[k] = crate::gfp::add_mod(a1[k], a2[k], p);
                pair[n + k] = crate::gfp::add_mod(b1[k], b2[k], p);
                pair[2 * n + k] =
                    crate::gfp::add_mod(crate::gfp::add_mod(c1[k], c2[k], p), prod[k], p);
            }
            for i3 in 0..order {
                let (a3, b3, c3) = unpack(i3);
                let (a3, b3, c3) = (&vecs[a3], &vecs[b3], &vecs[c3]);
                // left = (g1·g2)·g3
                g.pre().multiply_into(&pair[..n], b3, &mut prod);
                for k in 0..n {
                    left[k] = crate::gfp::add_mod(pair[k], a3[k], p);
                    left[n + k] = crate::gfp::add_mod(pair[n + k], b3[k], p);
                    left[2 * n + k] = crate::gfp::add_mod(
                        crate::gfp::add_mod(pair[2 * n + k], c3[k], p),
                        prod[k],
                        p,
                    );
                }
                // right = g2·g3, then g1·right
                g.pre().multiply_into(a2, b3, &mut prod);
                for k in 0..n {
                    right[k] = crate::gfp::add_mod(a2[k], a3[k], p);
                    right[n + k] = crate::gfp::add_mod(b2[k], b3[k], p);
                    right[2 * n + k] =
                        crate::gfp::add_mod(crate::gfp::add_mod(c2[k], c3[k], p), prod[k], p);
                }
                g.pre().multiply_into(a1, &right[n..2 * n], &mut prod);
                for k in 0..n {
                    right[k] = crate::gfp::add_mod(right[k], a1[k], p);
                    right[n + k] = crate::gfp::add_mod(right[n + k], b1[k], p);
                    right[2 * n + k] = crate::gfp::add_mod(
                        crate::gfp::add_mod(right[2 * n + k], c1[k], p),
                        prod[k],
                        p,
                    );
                }
                if left[..3 * n] != right[..3 * n] {
                    return false;
                }
            }
        }
        true
    })
}

fn sampled_group_properties(g: &SemifieldGroup, samples: u64) -> bool {
    let p = g.p();
    let n = g.n();
    let codes = (p as u64).pow(n as u32);
    let central = g.central_reps();
    let mut rng = Rng64(0x9E3779B97F4A7C15);
    let pick = |rng: &mut Rng64| {
        let a = FpVector::decode(p, n, rng.next() % codes);
        let b = FpVector::decode(p, n, rng.next() % codes);
        let c = central[(rng.next() % central.len() as u64) as usize].clone();
        GroupElementOwned { a, b, c }
    };
    struct GroupElementOwned {
        a: FpVector,
        b: FpVector,
        c: FpVector,
    }
    for _ in 0..samples {
        let x = pick(&mut rng);
        let y = pick(&mut rng);
        let z = pick(&mut rng);
        let gx = g.element(x.a, x.b, x.c);
        let gy = g.element(y.a, y.b, y.c);
        let gz = g.element(z.a, z.b, z.c);
        let left = g.multiply(&g.multiply(&gx, &gy), &gz);
        let right = g.multiply(&gx, &g.multiply(&gy, &gz));
        if left != right {
            return false;
        }
        if g.commutator(&gx, &gy) != g.commutator_definitional(&gx, &gy) {
            return false;
        }
    }
    true
}

fn order4_outside_coordinate_subgroups(g: &SemifieldGroup) -> bool {
    assert_eq!(g.p(), 2);
    assert_eq!(g.kernel().dim(), 0);
    for el in g.elements() {
        let outside = !el.a.is_zero() && !el.b.is_zero();
        let order = g.element_order(&el);
        if outside != (order == 4) {
            return false;
        }
    }
    true
}

pub fn criterion_property_suite(ctx: &VerifyContext) -> CriterionOutcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let mut catalog_groups: Vec<(String, SemifieldGroup)> = Vec::new();
    for report in [&ctx.order8, &ctx.order16, &ctx.order27] {
        for class in &report.classes {
            catalog_groups.push((
                class.label.clone(),
                SemifieldGroup::full(class.semifield.pre().clone()),
            ));
        }
    }

    // Associativity and the commutator closed form: exhaustive for
    // |G| ≤ 3⁶ = 729, sampled 10⁵ otherwise.
    for (label, g) in &catalog_groups {
        if g.order() <= 729 {
            if !exhaustive_associativity(g) {
                ok = false;
                notes.push(format!("{label}: associativity failed"));
            }
            let els: Vec<_> = g.elements().collect();
            let pairs_ok = els.par_iter().enumerate().all(|(i, x)| {
                els.iter()
                    .skip(i)
                    .all(|y| g.commutator(x, y) == g.commutator_definitional(x, y))
            });
            if !pairs_ok {
                ok = false;
                notes.push(format!("{label}: commutator closed form failed"));
            }
            let inv_ok = els.iter().all(|x| {
                let inv = g.inverse(x);
                g.multiply(x, &inv) == g.identity()
                    && inv.a == x.a.neg()
                    && inv.b == x.b.neg()
                    && inv.c == g.kernel().reduce(&g.pre().multiply(&x.a, &x.b).sub(&x.c))
            });
            if !inv_ok {
                ok = false;
                notes.push(format!("{label}: inverse closed form failed"));
            }
        } else if !sampled_group_properties(g, 100_000) {
            ok = false;
            notes.push(format!("{label}: sampled properties failed"));
        }
    }
    notes.push(format!("{} catalog groups checked", catalog_groups.len()));

    // Exponent p for odd p; order-4 elements exactly outside A₁ ∪ A₂ for
    // p = 2 (full groups).
    for (label, g) in &catalog_groups {
        if g.p() == 2 {
            if !order4_outside_coordinate_subgroups(g) {
                ok = false;
                notes.push(format!("{label}: order-4 locus wrong"));
            }
        } else {
            let os = g.order_structure();
            if os.exponent != g.p() as u64 {
                ok = false;
                notes.push(format!("{label}: exponent {} ≠ p", os.exponent));
            }
        }
    }

    // Centralizer orders and both s.e.s. definitions on every catalog group
    // and on every proper central quotient.
    let mut quotients: Vec<(String, SemifieldGroup)> = Vec::new();
    for (label, g) in &catalog_groups {
        for dim in 1..g.n() {
            for (qi, sub) in g.central_subspaces(dim).into_iter().enumerate() {
                quotients.push((format!("{label}/N{dim}.{qi}"), g.quotient(&sub).unwrap()));
            }
        }
    }
    let all_groups: Vec<&(String, SemifieldGroup)> =
        catalog_groups.iter().chain(quotients.iter()).collect();
    let ses_failures: Vec<String> = all_groups
        .par_iter()
        .filter_map(|(label, g)| {
            let v = check_ses(g);
            let derived_index = g.order() / g.derived_order();
            let centralizers_ok = v.centralizer_definition;
            if !(v.is_ses && v.definitions_agree && centralizers_ok) {
                Some(format!(
                    "{label}: ses={} agree={} centralizer(|G:G'|={derived_index})={}",
                    v.is_ses, v.definitions_agree, centralizers_ok
                ))
            } else {
                None
            }
        })
        .collect();
    if !ses_failures.is_empty() {
        ok = false;
        notes.extend(ses_failures);
    }
    notes.push(format!(
        "{} central quotients checked (both s.e.s. definitions)",
        quotients.len()
    ));

    CriterionOutcome {
        id: "property-suite",
        passed: ok,
        skipped: false,
        detail: notes.join("; "),
    }
}

pub fn criterion_character_tables(ctx: &VerifyContext) -> CriterionOutcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let heis8 = SemifieldGroup::full(ctx.order8.classes[0].semifield.pre().clone());
    let heis27 = heis27_group(ctx);
    let proper27 = proper27_group(ctx);
    let quotients = vec![
        ("gf8/N1", heis8.quotient(&heis8.central_subspaces(1)[0]).unwrap()),
        ("gf8/N2", heis8.quotient(&heis8.central_subspaces(2)[0]).unwrap()),
        (
            "proper27/N1",
            proper27.quotient(&proper27.central_subspaces(1)[0]).unwrap(),
        ),
    ];

    let mut targets: Vec<(&str, &SemifieldGroup)> = vec![
        ("gf8", &heis8),
        ("gf27", &heis27),
        ("proper27", &proper27),
    ];
    for (label, q) in &quotients {
        targets.push((label, q));
    }

    for (label, g) in &targets {
        let table = match character_table(g) {
            Ok(t) => t,
            Err(e) => {
                ok = false;
                notes.push(format!("{label}: {e}"));
                continue;
            }
        };
        let expected_rows = (g.order() / g.derived_order() + g.derived_order() - 1) as usize;
        if table.row_count() != expected_rows {
            ok = false;
            notes.push(format!(
                "{label}: {} rows ≠ {expected_rows}",
                table.row_count()
            ));
        }
        if let Err((r1, r2)) = table.verify_first_orthogonality() {
            ok = false;
            notes.push(format!("{label}: first orthogonality fails at ({r1},{r2})"));
        }
        if let Err((c1, c2)) = table.verify_second_orthogonality() {
            ok = false;
            notes.push(format!("{label}: second orthogonality fails at ({c1},{c2})"));
        }
    }
    notes.push(format!("{} tables verified exactly", targets.len()));

    match char_tables_equal(&heis27, &proper27) {
        Ok(true) => {}
        other => {
            ok = false;
            notes.push(format!("char_tables_equal(3^9 pair) = {other:?}"));
        }
    }
    // Non-isomorphism certificate: the censuses differ (28 vs 4).
    let census_a = abelian_census(&heis27).count;
    let census_b = abelian_census(&proper27).count;
    match brauer_pair(&heis27, &proper27, census_a != census_b) {
        Ok(true) => {}
        other => {
            ok = false;
            notes.push(format!("brauer_pair(3^9 pair) = {other:?}"));
        }
    }

    CriterionOutcome {
        id: "character-tables",
        passed: ok,
        skipped: false,
        detail: notes.join("; "),
    }
}

pub fn criterion_zv(ctx: &VerifyContext) -> CriterionOutcome {
    let t0 = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (label, g) in [
        ("gf27", heis27_group(ctx)),
        ("proper27", proper27_group(ctx)),
    ] {
        match zv_analysis(&g) {
            Ok(report) => {
                if !(report.covering_ok && report.r_divides_all_k && report.congruence_ok) {
                    ok = false;
                }
                notes.push(format!(
                    "{label}: r={} m={} covering={} r|k={} congruence={}",
                    report.r,
                    report.m,
                    report.covering_ok,
                    report.r_divides_all_k,
                    report.congruence_ok
                ));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{label}: {e}"));
            }
        }
    }
    let wall = t0.elapsed();
    if wall > Duration::from_secs(600) {
        ok = false;
    }
    notes.push(format!("wall {wall:?} (limit 10 min)"));
    CriterionOutcome {
        id: "zv-analysis",
        passed: ok,
        skipped: false,
        detail: notes.join("; ").replace('\n', " "),
    }
}

pub fn criterion_isom_consistency(ctx: &VerifyContext) -> CriterionOutcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let reps: Vec<&Semifield> = ctx.order16.classes.iter().map(|c| &c.semifield).collect();
    let profiles: Vec<_> = reps
        .iter()
        .map(|f| SemifieldGroup::full(f.pre().clone()).profile())
        .collect();
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let isomorphic = groups_isomorphic_semifield(reps[i], reps[j]);
            let same_profile = profiles[i] == profiles[j];
            // Isomorphic groups must share the full invariant bundle.
            if isomorphic && !same_profile {
                ok = false;
                notes.push(format!("classes {i},{j}: isomorphic but profiles differ"));
            }
        }
    }
    // The Heisenberg group is separated from the proper classes by the
    // census count (17 vs 2).
    let field_idx = ctx
        .order16
        .classes
        .iter()
        .position(|c| c.contains_field)
        .expect("field class");
    for (j, class) in ctx.order16.classes.iter().enumerate() {
        if j != field_idx && profiles[field_idx].census_count == class.census_count as u128 {
            ok = false;
            notes.push(format!("census fails to separate field class from {j}"));
        }
    }
    notes.push(format!(
        "census counts: {:?}",
        profiles.iter().map(|p| p.census_count).collect::<Vec<_>>()
    ));

    // Brute-force confirmation of G(F) ≅ G(F^op) at order 2⁹.
    let f8 = &ctx.order8.classes[0].semifield;
    let g = SemifieldGroup::full(f8.pre().clone());
    let gop = SemifieldGroup::full(f8.pre().opposite());
    match brute_force_isomorphic(&g, &gop) {
        Ok(true) => notes.push("brute force: G(F) ≅ G(F^op) at 2^9".into()),
        other => {
            ok = false;
            notes.push(format!("brute force at 2^9: {other:?}"));
        }
    }

    CriterionOutcome {
        id: "isom-consistency",
        passed: ok,
        skipped: false,
        detail: notes.join("; "),
    }
}

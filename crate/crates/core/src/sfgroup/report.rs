//! Group report files: the invariant profile, the census, and the checker
//! verdicts in one machine-readable JSON document.

use super::census::abelian_census;
use super::checks::{check_extraspecial, check_ses, check_ultraspecial};
use super::SemifieldGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupProfileJson {
    pub order: u64,
    pub derived_index: u64,
    pub derived_order: u64,
    pub exponent: u64,
    pub agemo_order: u64,
    pub omega_order: u64,
    pub class_count: u64,
    pub order_histogram: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupCensusJson {
    pub count: u64,
    pub h: Option<u32>,
    pub intersections: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupReport {
    pub semifield: String,
    pub kernel_dim: usize,
    pub profile: GroupProfileJson,
    pub census: GroupCensusJson,
    pub checks: BTreeMap<String, bool>,
}

/// Assemble the full report for a group: profile, census, and all checks.
pub fn group_report(g: &SemifieldGroup, label: &str) -> GroupReport {
    let os = g.order_structure();
    let derived = g.derived_order();
    let census = abelian_census(g);
    let ses = check_ses(g);
    let extra = check_extraspecial(g);
    let ultra = check_ultraspecial(g);
    let mut checks = BTreeMap::new();
    checks.insert("special".into(), ses.special.is_special);
    checks.insert("extraspecial".into(), extra.is_extraspecial);
    checks.insert("semi_extraspecial".into(), ses.is_ses);
    checks.insert("ultraspecial".into(), ultra.is_ultraspecial);
    checks.insert("camina".into(), ses.camina_classes);
    checks.insert("commutator_surjective".into(), ses.commutator_surjective);
    checks.insert("normal_dichotomy".into(), ses.normal_dichotomy);
    checks.insert("definitions_agree".into(), ses.definitions_agree);
    checks.insert("census_bound".into(), census.bound_ok);
    GroupReport {
        semifield: label.to_owned(),
        kernel_dim: g.kernel().dim(),
        profile: GroupProfileJson {
            order: g.order() as u64,
            derived_index: (g.order() / derived) as u64,
            derived_order: derived as u64,
            exponent: os.exponent,
            agemo_order: os.agemo_order as u64,
            omega_order: os.omega_order as u64,
            class_count: g.class_count() as u64,
            order_histogram: os.histogram.iter().map(|(&k, &v)| (k, v as u64)).collect(),
        },
        census: GroupCensusJson {
            count: census.count as u64,
            h: census.h,
            intersections: census.intersection_profile.clone(),
        },
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{canonical_json, make_field};

    #[test]
    fn gf8_report_contents() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let g = SemifieldGroup::full(f.pre().clone());
        let report = group_report(&g, "gf8");
        assert_eq!(report.profile.order, 512);
        assert_eq!(report.census.count, 9);
        assert_eq!(report.census.h, Some(3));
        assert!(report.checks["ultraspecial"]);
        assert!(report.checks["semi_extraspecial"]);
        // Canonical serialization is stable.
        let s1 = canonical_json(&report);
        let parsed: GroupReport = serde_json::from_str(&s1).unwrap();
        assert_eq!(canonical_json(&parsed), s1);
    }
}

//! Partition a catalog of semifields into isotopism classes and into the
//! coarser classes under isotopism-or-anti-isotopism.

use super::isotopism::{are_anti_isotopic, are_isotopic};
use crate::semifield::Semifield;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    /// Indices into the catalog, grouped by isotopism class.
    pub iso_classes: Vec<Vec<usize>>,
    /// Grouped by isotopism or anti-isotopism; coarser or equal.
    pub merged_classes: Vec<Vec<usize>>,
}

pub fn partition_classes(catalog: &[Semifield]) -> ClassPartition {
    if let Some(first) = catalog.first() {
        for f in catalog {
            assert_eq!(
                (f.p(), f.n()),
                (first.p(), first.n()),
                "catalog mixes orders"
            );
        }
    }
    let mut iso_classes: Vec<Vec<usize>> = Vec::new();
    for (idx, f) in catalog.iter().enumerate() {
        let mut placed = false;
        for class in iso_classes.iter_mut() {
            if are_isotopic(f, &catalog[class[0]]).is_some() {
                class.push(idx);
                placed = true;
                break;
            }
        }
        if !placed {
            iso_classes.push(vec![idx]);
        }
    }
    // Merge iso classes whose representatives are anti-isotopic.
    let k = iso_classes.len();
    let mut root: Vec<usize> = (0..k).collect();
    for i in 0..k {
        if root[i] != i {
            continue;
        }
        for j in (i + 1)..k {
            if root[j] != j {
                continue;
            }
            let fi = &catalog[iso_classes[i][0]];
            let fj = &catalog[iso_classes[j][0]];
            if are_anti_isotopic(fi, fj).is_some() {
                root[j] = i;
            }
        }
    }
    let mut merged_classes: Vec<Vec<usize>> = Vec::new();
    let mut seen_roots: Vec<usize> = Vec::new();
    for i in 0..k {
        let r = root[i];
        match seen_roots.iter().position(|&x| x == r) {
            Some(g) => merged_classes[g].extend(iso_classes[i].iter().copied()),
            None => {
                seen_roots.push(r);
                merged_classes.push(iso_classes[i].clone());
            }
        }
    }
    assert!(merged_classes.len() <= iso_classes.len());
    ClassPartition {
        iso_classes,
        merged_classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::FpVector;
    use crate::semifield::{albert_parameter_scan, make_field};

    #[test]
    fn singleton_catalog() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let part = partition_classes(&[f]);
        assert_eq!(part.iso_classes, vec![vec![0]]);
        assert_eq!(part.merged_classes, vec![vec![0]]);
    }

    #[test]
    fn f_and_opposite_always_merge() {
        let (good, _) = albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
        let f = good
            .unwrap()
            .principal_isotope(&FpVector::basis(3, 3, 0))
            .unwrap();
        let op = f.opposite();
        let part = partition_classes(&[f, op]);
        assert_eq!(part.merged_classes.len(), 1);
        assert!(part.iso_classes.len() <= 2);
    }

    #[test]
    fn field_and_proper_order27_stay_separate() {
        let (good, _) = albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
        let proper = good
            .unwrap()
            .principal_isotope(&FpVector::basis(3, 3, 0))
            .unwrap();
        let field = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        let part = partition_classes(&[field, proper]);
        assert_eq!(part.iso_classes.len(), 2);
        assert_eq!(part.merged_classes.len(), 2);
    }
}

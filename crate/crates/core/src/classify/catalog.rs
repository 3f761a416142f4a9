//! Catalog directory layout: one semifield file per class representative
//! plus an `index.json` with the class structure and counts. Output is
//! deterministic given a completed enumeration.

use super::search::EnumerationReport;
use crate::semifield::{canonical_json, load_semifield, semifield_to_json, Semifield};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Integrity { path: String, message: String },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogClass {
    pub index: usize,
    pub file: String,
    pub label: String,
    pub class_size: u64,
    pub commutative: bool,
    pub contains_field: bool,
    pub nuclei_orders: [u64; 3],
    pub census_count: u64,
    pub census_h: Option<u32>,
    pub merged_group: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogIndex {
    pub p: u8,
    pub n: usize,
    pub order: u64,
    pub completed: bool,
    pub isotopism_classes: usize,
    pub merged_classes: usize,
    pub commutative_classes: usize,
    pub survivors: u64,
    pub search_nodes: u64,
    pub classes: Vec<CatalogClass>,
}

pub fn index_from_report(report: &EnumerationReport) -> CatalogIndex {
    CatalogIndex {
        p: report.p,
        n: report.n,
        order: (report.p as u64).pow(report.n as u32),
        completed: report.completed,
        isotopism_classes: report.classes.len(),
        merged_classes: report.merged_class_count,
        commutative_classes: report.commutative_class_count,
        survivors: report.stats.survivors,
        search_nodes: report.stats.nodes,
        classes: report
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| CatalogClass {
                index: i,
                file: format!("{}.json", c.label),
                label: c.label.clone(),
                class_size: c.class_size,
                commutative: c.commutative_class,
                contains_field: c.contains_field,
                nuclei_orders: [
                    c.nuclei_orders.0 as u64,
                    c.nuclei_orders.1 as u64,
                    c.nuclei_orders.2 as u64,
                ],
                census_count: c.census_count as u64,
                census_h: c.census_h,
                merged_group: c.merged_group,
            })
            .collect(),
    }
}

fn io_err(path: &Path, source: std::io::Error) -> CatalogError {
    CatalogError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Write a catalog directory for a completed enumeration.
pub fn write_catalog(dir: &Path, report: &EnumerationReport) -> Result<(), CatalogError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for class in &report.classes {
        let path = dir.join(format!("{}.json", class.label));
        let body = semifield_to_json(
            class.semifield.pre(),
            Some(class.semifield.identity()),
            Some(&class.label),
        );
        fs::write(&path, body).map_err(|e| io_err(&path, e))?;
    }
    let index = index_from_report(report);
    let path = dir.join("index.json");
    fs::write(&path, canonical_json(&index)).map_err(|e| io_err(&path, e))?;
    Ok(())
}

/// Read a catalog directory back: the index plus the representative
/// semifields in index order.
pub fn read_catalog(dir: &Path) -> Result<(CatalogIndex, Vec<Semifield>), CatalogError> {
    let index_path = dir.join("index.json");
    let bytes = fs::read(&index_path).map_err(|e| io_err(&index_path, e))?;
    let index: CatalogIndex =
        serde_json::from_slice(&bytes).map_err(|e| CatalogError::Integrity {
            path: index_path.display().to_string(),
            message: e.to_string(),
        })?;
    let mut reps = Vec::with_capacity(index.classes.len());
    for class in &index.classes {
        let path = dir.join(&class.file);
        let bytes = fs::read(&path).map_err(|e| io_err(&path, e))?;
        let loaded = load_semifield(&bytes).map_err(|e| CatalogError::Integrity {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let sf = loaded.as_semifield().ok_or_else(|| CatalogError::Integrity {
            path: path.display().to_string(),
            message: "stored representative has no identity".into(),
        })?;
        if sf.p() != index.p || sf.n() != index.n {
            return Err(CatalogError::Integrity {
                path: path.display().to_string(),
                message: "representative order disagrees with index".into(),
            });
        }
        reps.push(sf);
    }
    Ok((index, reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{enumerate_semifields, EnumerateOptions};

    #[test]
    fn catalog_round_trip_order8() {
        let report = enumerate_semifields(2, 3, &EnumerateOptions::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_catalog(dir.path(), &report).unwrap();
        let (index, reps) = read_catalog(dir.path()).unwrap();
        assert_eq!(index.isotopism_classes, 1);
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_associative());
        // Re-writing produces byte-identical files.
        let index_bytes = std::fs::read(dir.path().join("index.json")).unwrap();
        write_catalog(dir.path(), &report).unwrap();
        let again = std::fs::read(dir.path().join("index.json")).unwrap();
        assert_eq!(index_bytes, again);
    }
}

//! Isotopism and anti-isotopism decision procedures, exhaustive enumeration
//! of semifields of small order, and partition of catalogs into the
//! equivalence classes that index semifield groups.

mod catalog;
mod invariants;
mod isotopism;
mod partition;
mod search;

pub use catalog::{read_catalog, write_catalog, CatalogClass, CatalogError, CatalogIndex};
pub use invariants::{
    commutative_pairing_dim, find_commutative_principal_isotope, isotopic_to_commutative,
    to_semifield,
};
pub use isotopism::{are_anti_isotopic, are_isotopic, IsotopismWitness, WitnessDirection};
pub use partition::{partition_classes, ClassPartition};
pub use search::{
    enumerate_semifields, ClassRep, EnumerateError, EnumerateOptions, EnumerationReport,
    SearchStats,
};

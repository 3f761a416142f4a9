//! Semifield file format: a small JSON schema holding the modulus, the
//! dimension, the structure-constant cube, and optionally the identity
//! vector and a label.
//!
//! Serialization is canonical (fixed key order, two-space indentation,
//! trailing newline), so load → store is byte-stable.

use super::{PreSemifield, Semifield};
use crate::gfp::FpVector;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("modulus {0} is not a small prime")]
    BadModulus(u8),
    #[error("dimension must be between 1 and 8, got {0}")]
    BadDimension(usize),
    #[error("cube has wrong shape: expected {expected}×{expected}×{expected}")]
    BadCubeShape { expected: usize },
    #[error("cube entry {value} out of range for GF({p})")]
    EntryOutOfRange { value: i64, p: u8 },
    #[error("identity vector has wrong length or entries")]
    BadIdentity,
    #[error("declared identity fails the identity law")]
    IdentityLawFails,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemifieldFile {
    pub p: u8,
    pub n: usize,
    pub cube: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LoadedSemifield {
    pub pre: PreSemifield,
    pub identity: Option<FpVector>,
    pub label: Option<String>,
}

impl LoadedSemifield {
    /// Interpret as a semifield when an identity is declared (verifying the
    /// identity law) or discoverable.
    pub fn as_semifield(&self) -> Option<Semifield> {
        match &self.identity {
            Some(e) => Some(Semifield::new(self.pre.clone(), e.clone())),
            None => self.pre.find_identity(),
        }
    }
}

/// Parse and validate a semifield file.
pub fn load_semifield(bytes: &[u8]) -> Result<LoadedSemifield, FormatError> {
    let file: SemifieldFile = serde_json::from_slice(bytes).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if !crate::gfp::is_prime(file.p) {
        return Err(FormatError::BadModulus(file.p));
    }
    if file.n < 1 || file.n > 8 {
        return Err(FormatError::BadDimension(file.n));
    }
    let n = file.n;
    if file.cube.len() != n {
        return Err(FormatError::BadCubeShape { expected: n });
    }
    let mut cube = vec![0u8; n * n * n];
    for (i, plane) in file.cube.iter().enumerate() {
        if plane.len() != n {
            return Err(FormatError::BadCubeShape { expected: n });
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != n {
                return Err(FormatError::BadCubeShape { expected: n });
            }
            for (k, &v) in row.iter().enumerate() {
                if v < 0 || v >= file.p as i64 {
                    return Err(FormatError::EntryOutOfRange { value: v, p: file.p });
                }
                cube[(i * n + j) * n + k] = v as u8;
            }
        }
    }
    let pre = PreSemifield::from_cube(file.p, n, cube);
    let identity = match &file.identity {
        None => None,
        Some(raw) => {
            if raw.len() != n || raw.iter().any(|&v| v < 0 || v >= file.p as i64) {
                return Err(FormatError::BadIdentity);
            }
            let e = FpVector::new(file.p, raw.iter().map(|&v| v as u8).collect());
            let id = crate::gfp::FpMatrix::identity(file.p, n);
            if pre.left_matrix(&e) != id || pre.right_matrix(&e) != id {
                return Err(FormatError::IdentityLawFails);
            }
            Some(e)
        }
    };
    Ok(LoadedSemifield {
        pre,
        identity,
        label: file.label,
    })
}

/// Canonical JSON for a pre-semifield with optional identity and label.
pub fn semifield_to_json(
    pre: &PreSemifield,
    identity: Option<&FpVector>,
    label: Option<&str>,
) -> String {
    let n = pre.n();
    let cube = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| pre.cube_at(i, j, k) as i64).collect())
                .collect()
        })
        .collect();
    let file = SemifieldFile {
        p: pre.p(),
        n,
        cube,
        identity: identity.map(|e| e.coords().iter().map(|&c| c as i64).collect()),
        label: label.map(str::to_owned),
    };
    canonical_json(&file)
}

/// Canonical rendering used for every machine-readable file this crate
/// writes: pretty JSON with two-space indent plus a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::make_field;

    #[test]
    fn round_trip_is_byte_stable() {
        let f = make_field(2, 3, &[1, 1, 0, 1]).unwrap();
        let s1 = semifield_to_json(f.pre(), Some(f.identity()), Some("gf8"));
        let loaded = load_semifield(s1.as_bytes()).unwrap();
        assert_eq!(&loaded.pre, f.pre());
        assert_eq!(loaded.identity.as_ref(), Some(f.identity()));
        let s2 = semifield_to_json(
            &loaded.pre,
            loaded.identity.as_ref(),
            loaded.label.as_deref(),
        );
        assert_eq!(s1, s2);
    }

    #[test]
    fn parse_error_carries_location() {
        let err = load_semifield(b"{\n  \"p\": 2,\n  oops").unwrap_err();
        match err {
            FormatError::Json { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn semantic_validation() {
        let bad_p = r#"{"p": 4, "n": 1, "cube": [[[1]]]}"#;
        assert!(matches!(
            load_semifield(bad_p.as_bytes()),
            Err(FormatError::BadModulus(4))
        ));
        let bad_entry = r#"{"p": 2, "n": 1, "cube": [[[2]]]}"#;
        assert!(matches!(
            load_semifield(bad_entry.as_bytes()),
            Err(FormatError::EntryOutOfRange { .. })
        ));
        let bad_shape = r#"{"p": 2, "n": 2, "cube": [[[1, 0], [0, 1]]]}"#;
        assert!(matches!(
            load_semifield(bad_shape.as_bytes()),
            Err(FormatError::BadCubeShape { .. })
        ));
        let bad_identity = r#"{"p": 2, "n": 1, "cube": [[[1]]], "identity": [0]}"#;
        assert!(matches!(
            load_semifield(bad_identity.as_bytes()),
            Err(FormatError::IdentityLawFails)
        ));
    }

    #[test]
    fn identity_discovered_when_absent() {
        let f = make_field(3, 3, &[2, 2, 0, 1]).unwrap();
        let s = semifield_to_json(f.pre(), None, None);
        let loaded = load_semifield(s.as_bytes()).unwrap();
        let sf = loaded.as_semifield().unwrap();
        assert_eq!(sf.identity(), f.identity());
    }
}

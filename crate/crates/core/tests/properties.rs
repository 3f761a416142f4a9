//! Property tests for the linear-algebra layer and the structural
//! invariants that must hold across random inputs.

use proptest::prelude::*;
use semifields::gfp::{gaussian_binomial, FpMatrix, FpVector, Subspace, SubspaceStream};
use semifields::semifield::PreSemifield;

fn prime() -> impl Strategy<Value = u8> {
    prop_oneof![Just(2u8), Just(3), Just(5)]
}

proptest! {
    #[test]
    fn canonical_form_is_span_invariant(
        p in prime(),
        n in 2usize..5,
        rows in proptest::collection::vec(proptest::collection::vec(0u8..7, 4), 1..4),
        seed in 0u64..u64::MAX,
    ) {
        let vectors: Vec<FpVector> = rows
            .iter()
            .map(|r| FpVector::new(p, r.iter().take(n).chain(std::iter::repeat(&0)).take(n).cloned().collect()))
            .collect();
        let base = Subspace::from_vectors(p, n, &vectors);

        // Shuffle and row-mix the generators deterministically from the seed.
        let mut mixed = vectors.clone();
        let mut state = seed | 1;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..8 {
            let k = mixed.len();
            let i = (next() % k as u64) as usize;
            let j = (next() % k as u64) as usize;
            mixed.swap(i, j);
            if i != j {
                let c = (next() % p as u64) as u8;
                let combo = mixed[i].add(&mixed[j].scale(c));
                mixed[i] = combo;
            }
        }
        let remixed = Subspace::from_vectors(p, n, &mixed);
        prop_assert_eq!(&base, &remixed);
        // Idempotence: canonicalizing the canonical basis changes nothing.
        let again = Subspace::from_vectors(p, n, &base.basis());
        prop_assert_eq!(&base, &again);
    }

    #[test]
    fn subspace_stream_total_matches_binomial(
        p in prime(),
        n in 0usize..=8,
        k in 0usize..=8,
    ) {
        prop_assume!(k <= n);
        let stream = SubspaceStream::new(n, k, p);
        prop_assert_eq!(stream.total(), gaussian_binomial(n, k, p));
    }

    #[test]
    fn opposite_is_involution_on_random_cubes(
        p in prime(),
        n in 1usize..4,
        bytes in proptest::collection::vec(0u8..7, 27),
    ) {
        let cube: Vec<u8> = bytes.iter().take(n * n * n).cloned().collect();
        prop_assume!(cube.len() == n * n * n);
        let f = PreSemifield::from_cube(p, n, cube);
        prop_assert_eq!(&f.opposite().opposite(), &f);
        // L-matrices of the opposite are the R-matrices of the original.
        for i in 0..n {
            let e = FpVector::basis(p, n, i);
            prop_assert_eq!(f.opposite().left_matrix(&e), f.right_matrix(&e));
        }
    }

    #[test]
    fn random_matrix_inverse_round_trips(
        p in prime(),
        n in 1usize..5,
        bytes in proptest::collection::vec(0u8..7, 16),
    ) {
        let m = FpMatrix::from_fn(p, n, n, |r, c| bytes[r * n + c] % p);
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), FpMatrix::identity(p, n));
            prop_assert_eq!(inv.mul(&m), FpMatrix::identity(p, n));
        } else {
            prop_assert!(m.rank() < n);
        }
    }
}

#[test]
fn small_subspace_streams_enumerate_exactly_once() {
    for (n, k, p) in [(4, 2, 2u8), (4, 2, 3), (3, 1, 5), (5, 3, 2)] {
        let stream = SubspaceStream::new(n, k, p);
        let mut seen = std::collections::HashSet::new();
        for s in stream.iter() {
            assert_eq!(s.dim(), k);
            assert!(seen.insert(s.encode()));
        }
        assert_eq!(seen.len() as u128, gaussian_binomial(n, k, p));
    }
}

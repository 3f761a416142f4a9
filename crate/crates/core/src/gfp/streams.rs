//! Deterministic, restartable enumeration streams: all k-dimensional
//! subspaces of GF(p)^n, and all invertible n×n matrices.
//!
//! Subspace streams are index-addressable (every subspace has a position in
//! a fixed canonical order), so ranges can be split into contiguous chunks
//! and scanned by independent workers; merging chunk results in range order
//! reproduces the sequential result exactly.

use super::{FpMatrix, FpVector, Subspace};

/// Gaussian binomial coefficient [n choose k]_p, computed with the Pascal
/// recurrence [n,k] = [n−1,k−1] + p^k·[n−1,k]. Exact in u128 for the sizes
/// this crate targets.
pub fn gaussian_binomial(n: usize, k: usize, p: u8) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for m in 1..=n {
        let hi = k.min(m);
        for j in (1..=hi).rev() {
            let pk = (p as u128).pow(j as u32);
            row[j] = row[j].checked_mul(pk).and_then(|x| x.checked_add(row[j - 1])).expect("gaussian binomial overflow");
            if j == m {
                row[j] = 1; // [m choose m] = 1
            }
        }
    }
    row[k]
}

/// |GL(n, p)| = ∏_{i<n} (p^n − p^i).
pub fn count_invertible(n: usize, p: u8) -> u128 {
    let pn = (p as u128).pow(n as u32);
    (0..n).map(|i| pn - (p as u128).pow(i as u32)).product()
}

/// Stream of all k-dimensional subspaces of GF(p)^n.
///
/// Subspaces are produced as their canonical RREF bases, ordered first by
/// pivot-column set (lexicographic) and then by the free entries read as a
/// base-p counter.
pub struct SubspaceStream {
    p: u8,
    n: usize,
    k: usize,
    pivot_sets: Vec<Vec<usize>>,
    /// Number of subspaces per pivot set and cumulative offsets.
    counts: Vec<u128>,
    offsets: Vec<u128>,
    total: u128,
}

/// Free (non-pivot, fillable) positions of an RREF pattern, row-major.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut free = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for j in (pc + 1)..n {
            if !pivots.contains(&j) {
                free.push((i, j));
            }
        }
    }
    free
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for c in start..=(n - need) {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        out.push(Vec::new());
    } else if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

impl SubspaceStream {
    pub fn new(n: usize, k: usize, p: u8) -> Self {
        assert!(k <= n, "k must be at most n");
        assert!(super::is_prime(p), "modulus {p} is not prime");
        let pivot_sets = combinations(n, k);
        let mut counts = Vec::with_capacity(pivot_sets.len());
        let mut offsets = Vec::with_capacity(pivot_sets.len());
        let mut total = 0u128;
        for ps in &pivot_sets {
            let f = free_positions(n, ps).len();
            let c = (p as u128).pow(f as u32);
            offsets.push(total);
            counts.push(c);
            total += c;
        }
        SubspaceStream {
            p,
            n,
            k,
            pivot_sets,
            counts,
            offsets,
            total,
        }
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    /// Random access: the subspace at `index` in canonical order.
    pub fn subspace_at(&self, index: u128) -> Subspace {
        assert!(index < self.total, "index out of range");
        let set = match self.offsets.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let mut rows = vec![vec![0u8; self.n]; self.k];
        let pivots = &self.pivot_sets[set];
        for (i, &pc) in pivots.iter().enumerate() {
            rows[i][pc] = 1;
        }
        let free = free_positions(self.n, pivots);
        let mut rem = index - self.offsets[set];
        for &(i, j) in free.iter().rev() {
            rows[i][j] = (rem % self.p as u128) as u8;
            rem /= self.p as u128;
        }
        Subspace::from_canonical_rows(self.p, self.n, rows, pivots.clone())
    }

    /// Scan a contiguous index range, calling `f(rows, pivots)` for each
    /// subspace. The row buffer is reused between calls.
    pub fn scan_range<F: FnMut(&[Vec<u8>], &[usize])>(&self, start: u128, end: u128, mut f: F) {
        assert!(start <= end && end <= self.total, "bad range");
        if start == end {
            return;
        }
        let mut set = match self.offsets.binary_search(&start) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let mut index = start;
        while index < end {
            let pivots = &self.pivot_sets[set];
            let free = free_positions(self.n, pivots);
            let set_end = self.offsets[set] + self.counts[set];
            let stop = end.min(set_end);

            let mut rows = vec![vec![0u8; self.n]; self.k];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            // Position the odometer at `index`.
            let mut digits = vec![0u8; free.len()];
            let mut rem = index - self.offsets[set];
            for (d, &(i, j)) in free.iter().enumerate().rev() {
                let v = (rem % self.p as u128) as u8;
                digits[d] = v;
                rows[i][j] = v;
                rem /= self.p as u128;
            }
            loop {
                f(&rows, pivots);
                index += 1;
                if index == stop {
                    break;
                }
                // Increment the base-p odometer over the free positions.
                for d in (0..free.len()).rev() {
                    let (i, j) = free[d];
                    if digits[d] + 1 < self.p {
                        digits[d] += 1;
                        rows[i][j] = digits[d];
                        break;
                    }
                    digits[d] = 0;
                    rows[i][j] = 0;
                }
            }
            set += 1;
        }
    }

    /// The whole stream as an iterator of canonical subspaces.
    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.total).map(|i| self.subspace_at(i))
    }

    /// Split the index space into at most `parts` contiguous chunks.
    pub fn chunks(&self, parts: usize) -> Vec<(u128, u128)> {
        let parts = parts.max(1) as u128;
        let step = (self.total + parts - 1) / parts.max(1);
        let mut out = Vec::new();
        let mut s = 0u128;
        while s < self.total {
            let e = (s + step).min(self.total);
            out.push((s, e));
            s = e;
        }
        out
    }
}

/// Stream of all invertible n×n matrices over GF(p), in lexicographic order
/// of their row codes (rows built top-down, each row outside the span of the
/// previous ones).
pub struct InvertibleStream {
    p: u8,
    n: usize,
}

impl InvertibleStream {
    pub fn new(n: usize, p: u8) -> Self {
        assert!(n >= 1, "n must be at least 1");
        assert!(super::is_prime(p), "modulus {p} is not prime");
        InvertibleStream { p, n }
    }

    pub fn total(&self) -> u128 {
        count_invertible(self.n, self.p)
    }

    pub fn iter(&self) -> InvertibleIter {
        InvertibleIter::new(self.p, self.n, None)
    }

    /// Completions whose first row is the vector encoded by `first_row`
    /// (used to partition the stream across workers).
    pub fn iter_with_first_row(&self, first_row: u64) -> InvertibleIter {
        InvertibleIter::new(self.p, self.n, Some(first_row))
    }

    /// Number of possible first rows, p^n − 1.
    pub fn first_row_codes(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }
}

pub struct InvertibleIter {
    p: u8,
    n: usize,
    max_code: u64,
    fixed_first: Option<u64>,
    codes: Vec<u64>,
    spans: Vec<Subspace>,
    started: bool,
    done: bool,
}

impl InvertibleIter {
    fn new(p: u8, n: usize, fixed_first: Option<u64>) -> Self {
        let max_code = (p as u64).pow(n as u32);
        let done = fixed_first.map_or(false, |c| c == 0 || c >= max_code);
        InvertibleIter {
            p,
            n,
            max_code,
            fixed_first,
            codes: Vec::new(),
            spans: vec![Subspace::zero(p, n)],
            started: false,
            done,
        }
    }

    /// Smallest candidate code ≥ `from` at the current level that is outside
    /// the current span; None when exhausted.
    fn next_candidate(&self, from: u64) -> Option<u64> {
        let span = self.spans.last().unwrap();
        let mut code = from.max(1);
        while code < self.max_code {
            let v = FpVector::decode(self.p, self.n, code);
            if !span.contains(&v) {
                return Some(code);
            }
            code += 1;
        }
        None
    }

    fn push(&mut self, code: u64) {
        let v = FpVector::decode(self.p, self.n, code);
        let mut span = self.spans.last().unwrap().clone();
        span.insert(v.coords());
        self.codes.push(code);
        self.spans.push(span);
    }

    /// Fill remaining rows with the smallest valid choices.
    fn descend(&mut self) -> bool {
        while self.codes.len() < self.n {
            match self.next_candidate(1) {
                Some(c) => self.push(c),
                None => return false, // cannot happen while codes.len() < n
            }
        }
        true
    }

    /// Backtrack and move to the next matrix in order.
    fn advance(&mut self) -> bool {
        let floor = if self.fixed_first.is_some() { 1 } else { 0 };
        while self.codes.len() > floor {
            let last = self.codes.pop().unwrap();
            self.spans.pop();
            if let Some(c) = self.next_candidate(last + 1) {
                self.push(c);
                return self.descend();
            }
        }
        false
    }

    fn current_matrix(&self) -> FpMatrix {
        let rows: Vec<Vec<u8>> = self
            .codes
            .iter()
            .map(|&c| FpVector::decode(self.p, self.n, c).coords().to_vec())
            .collect();
        FpMatrix::from_rows(self.p, &rows)
    }
}

impl Iterator for InvertibleIter {
    type Item = FpMatrix;

    fn next(&mut self) -> Option<FpMatrix> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if let Some(first) = self.fixed_first {
                let v = FpVector::decode(self.p, self.n, first);
                if v.is_zero() {
                    self.done = true;
                    return None;
                }
                self.push(first);
            }
            if !self.descend() {
                self.done = true;
                return None;
            }
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.current_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomial_known_values() {
        // Independent product-formula oracle.
        fn oracle(n: usize, k: usize, p: u8) -> u128 {
            if k > n {
                return 0;
            }
            let mut num = 1u128;
            let mut den = 1u128;
            for i in 0..k {
                num *= (p as u128).pow((n - i) as u32) - 1;
                den *= (p as u128).pow((i + 1) as u32) - 1;
            }
            num / den
        }
        for p in [2u8, 3, 5] {
            for n in 0..=8 {
                for k in 0..=n {
                    assert_eq!(gaussian_binomial(n, k, p), oracle(n, k, p), "[{n},{k}]_{p}");
                }
            }
        }
        assert_eq!(gaussian_binomial(8, 4, 2), 200_787);
        assert_eq!(gaussian_binomial(6, 3, 3), 33_880);
        assert_eq!(gaussian_binomial(5, 0, 2), 1);
        assert_eq!(gaussian_binomial(10, 5, 2), 109_221_651);
    }

    #[test]
    fn subspace_stream_counts_match() {
        for (n, k, p) in [(4usize, 2usize, 2u8), (5, 2, 3), (4, 2, 5), (6, 3, 2)] {
            let s = SubspaceStream::new(n, k, p);
            assert_eq!(s.total(), gaussian_binomial(n, k, p));
            let mut seen = HashSet::new();
            let mut count = 0u128;
            s.scan_range(0, s.total(), |rows, _| {
                count += 1;
                let sub = Subspace::from_vectors(
                    p,
                    n,
                    &rows.iter().map(|r| FpVector::new(p, r.clone())).collect::<Vec<_>>(),
                );
                assert_eq!(sub.dim(), k);
                assert!(seen.insert(sub.encode()), "duplicate subspace");
            });
            assert_eq!(count, s.total());
        }
    }

    #[test]
    fn subspace_stream_zero_dim() {
        let s = SubspaceStream::new(5, 0, 2);
        assert_eq!(s.total(), 1);
        let only: Vec<_> = s.iter().collect();
        assert_eq!(only.len(), 1);
        assert!(only[0].is_zero());
    }

    #[test]
    fn subspace_random_access_agrees_with_scan() {
        let s = SubspaceStream::new(5, 2, 2);
        let mut from_scan = Vec::new();
        s.scan_range(0, s.total(), |rows, pivots| {
            from_scan.push(Subspace::from_canonical_rows(2, 5, rows.to_vec(), pivots.to_vec()));
        });
        for (i, sub) in from_scan.iter().enumerate() {
            assert_eq!(&s.subspace_at(i as u128), sub);
        }
        // Chunked scan in pieces reproduces the same sequence.
        let mut from_chunks = Vec::new();
        for (a, b) in s.chunks(7) {
            s.scan_range(a, b, |rows, pivots| {
                from_chunks.push(Subspace::from_canonical_rows(2, 5, rows.to_vec(), pivots.to_vec()));
            });
        }
        assert_eq!(from_scan, from_chunks);
    }

    #[test]
    fn invertible_counts() {
        assert_eq!(count_invertible(1, 2), 1);
        assert_eq!(count_invertible(2, 2), 6);
        assert_eq!(count_invertible(4, 2), 20_160);
        assert_eq!(count_invertible(3, 3), 11_232);

        let s = InvertibleStream::new(1, 2);
        let all: Vec<_> = s.iter().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], FpMatrix::identity(2, 1));

        let s = InvertibleStream::new(2, 2);
        let all: Vec<_> = s.iter().collect();
        assert_eq!(all.len(), 6);

        let s = InvertibleStream::new(3, 2);
        let mut seen = HashSet::new();
        let mut count = 0;
        for m in s.iter() {
            assert!(m.is_invertible());
            assert!(seen.insert(m.encode()));
            count += 1;
        }
        assert_eq!(count as u128, count_invertible(3, 2));
    }

    #[test]
    fn invertible_first_row_partition() {
        let s = InvertibleStream::new(3, 3);
        let whole: Vec<_> = s.iter().map(|m| m.encode()).collect();
        let mut pieces = Vec::new();
        for code in 0..s.first_row_codes() {
            for m in s.iter_with_first_row(code) {
                pieces.push(m.encode());
            }
        }
        assert_eq!(whole, pieces);
    }

    #[test]
    fn invertible_round_trip_property() {
        for m in InvertibleStream::new(3, 2).iter() {
            let inv = m.inverse().expect("stream yields invertible matrices");
            assert_eq!(m.mul(&inv), FpMatrix::identity(2, 3));
        }
    }
}

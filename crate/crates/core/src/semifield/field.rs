//! Finite fields GF(p^n) as semifields, and Albert's twisted products.
//!
//! Polynomials are coefficient vectors in ascending degree order, so a monic
//! degree-n polynomial has n+1 entries ending in 1.

use super::{PreSemifield, Semifield, SemifieldError};
use crate::gfp::{add_mod, inv_mod, mul_mod, sub_mod, FpMatrix, FpVector};

/// Default irreducible polynomials shipped for the (p, n) pairs the search
/// budgets target. Each is validated by `make_field` in tests at load.
pub const DEFAULT_POLYS: &[(u8, usize, &[u8])] = &[
    (2, 3, &[1, 1, 0, 1]),       // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),    // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
    (3, 3, &[2, 2, 0, 1]),       // x^3 + 2x + 2  (= x^3 − x − 1)
    (3, 4, &[2, 1, 0, 0, 1]),    // x^4 + x + 2
    (5, 3, &[1, 1, 0, 1]),       // x^3 + x + 1
];

pub fn default_poly(p: u8, n: usize) -> Option<&'static [u8]> {
    DEFAULT_POLYS
        .iter()
        .find(|&&(pp, nn, _)| pp == p && nn == n)
        .map(|&(_, _, poly)| poly)
}

fn poly_trim(mut f: Vec<u8>) -> Vec<u8> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_mul(p: u8, a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(ai, bj, p), p);
        }
    }
    poly_trim(out)
}

/// Remainder of a modulo the monic polynomial f.
fn poly_rem(p: u8, a: &[u8], f: &[u8]) -> Vec<u8> {
    debug_assert_eq!(*f.last().unwrap(), 1, "modulus must be monic");
    let deg_f = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg_f {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg_f;
        if lead != 0 {
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(lead, fi, p), p);
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_gcd(p: u8, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        // Make b monic before reducing so poly_rem applies.
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u8> = b.iter().map(|&c| mul_mod(c, lead_inv, p)).collect();
        let r = poly_rem(p, &a, &monic);
        a = b;
        b = r;
    }
    a
}

/// x^e mod f by square and multiply.
fn poly_x_pow_mod(p: u8, e: u64, f: &[u8]) -> Vec<u8> {
    let mut result = vec![1u8];
    let mut base = poly_rem(p, &[0, 1], f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(p, &poly_mul(p, &result, &base), f);
        }
        base = poly_rem(p, &poly_mul(p, &base, &base), f);
        e >>= 1;
    }
    result
}

/// Irreducibility of a monic degree-n polynomial over GF(p).
///
/// For n ≤ 3 a root check suffices (a reducible cubic or quadratic has a
/// linear factor). For n ≥ 4, f is irreducible iff gcd(x^{p^k} − x, f) = 1
/// for every k ≤ n/2, since any nontrivial factorization contains an
/// irreducible factor of degree at most n/2.
pub(crate) fn is_irreducible(p: u8, f: &[u8]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if n <= 3 {
        return (0..p).all(|a| {
            let mut acc = 0u8;
            let mut pw = 1u8;
            for &c in f {
                acc = add_mod(acc, mul_mod(c, pw, p), p);
                pw = mul_mod(pw, a, p);
            }
            acc != 0
        });
    }
    for k in 1..=(n / 2) {
        let e = (p as u64).pow(k as u32);
        let mut g = poly_x_pow_mod(p, e, f);
        // g := x^{p^k} − x (mod f)
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = sub_mod(g[1], 1, p);
        let g = poly_trim(g);
        let d = poly_gcd(p, f, &g);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

/// The finite field GF(p^n) presented on the basis 1, x, …, x^{n−1} of
/// GF(p)[x]/(f). Rejects polynomials that are not monic of degree n or are
/// reducible.
pub fn make_field(p: u8, n: usize, poly: &[u8]) -> Result<Semifield, SemifieldError> {
    if poly.len() != n + 1 || *poly.last().unwrap_or(&0) % p != 1 {
        return Err(SemifieldError::BadPolynomial);
    }
    let poly: Vec<u8> = poly.iter().map(|&c| c % p).collect();
    if !is_irreducible(p, &poly) {
        return Err(SemifieldError::ReduciblePolynomial);
    }
    // cube[i][j] = coefficients of x^{i+j} mod f.
    let mut powers = Vec::with_capacity(2 * n - 1);
    for m in 0..(2 * n - 1) {
        let mut xm = vec![0u8; m + 1];
        xm[m] = 1;
        powers.push(poly_rem(p, &xm, &poly));
    }
    let mut cube = vec![0u8; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for (k, &c) in powers[i + j].iter().enumerate() {
                cube[(i * n + j) * n + k] = c;
            }
        }
    }
    let pre = PreSemifield::from_cube(p, n, cube);
    let identity = FpVector::basis(p, n, 0);
    Ok(Semifield::new(pre, identity))
}

/// Elementwise field multiplication helper for a field built by `make_field`.
fn field_mul(f: &Semifield, a: &FpVector, b: &FpVector) -> FpVector {
    f.multiply(a, b)
}

/// Matrix of the Frobenius x ↦ x^p on the `make_field` basis.
fn frobenius_matrix(f: &Semifield) -> FpMatrix {
    let p = f.p();
    let n = f.n();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let e = FpVector::basis(p, n, i);
        let mut acc = f.identity().clone();
        for _ in 0..p {
            acc = field_mul(f, &acc, &e);
        }
        cols.push(acc);
    }
    FpMatrix::from_fn(p, n, n, |r, c| cols[c].coords()[r])
}

/// Albert's twisted product x ∗ y = x·y + j·α(x)·β(y) on GF(p^n) with
/// α = Frobenius^i and β = Frobenius^k nontrivial.
///
/// Not every parameter choice avoids zero divisors; callers must run
/// `check_presemifield` on the result.
pub fn make_albert(
    p: u8,
    n: usize,
    poly: &[u8],
    j: &FpVector,
    i: u32,
    k: u32,
) -> Result<PreSemifield, SemifieldError> {
    if i % n as u32 == 0 || k % n as u32 == 0 {
        return Err(SemifieldError::TrivialAutomorphism);
    }
    if j.is_zero() {
        return Err(SemifieldError::ZeroTwist);
    }
    assert_eq!(j.len(), n, "dimension mismatch");
    let f = make_field(p, n, poly)?;
    let frob = frobenius_matrix(&f);
    let mut alpha = FpMatrix::identity(p, n);
    for _ in 0..(i % n as u32) {
        alpha = frob.mul(&alpha);
    }
    let mut beta = FpMatrix::identity(p, n);
    for _ in 0..(k % n as u32) {
        beta = frob.mul(&beta);
    }
    let mut cube = vec![0u8; n * n * n];
    for s in 0..n {
        let es = FpVector::basis(p, n, s);
        let aes = alpha.mul_vec(&es);
        for t in 0..n {
            let et = FpVector::basis(p, n, t);
            let bet = beta.mul_vec(&et);
            let plain = field_mul(&f, &es, &et);
            let twist = field_mul(&f, j, &field_mul(&f, &aes, &bet));
            for m in 0..n {
                cube[(s * n + t) * n + m] = add_mod(plain.coords()[m], twist.coords()[m], p);
            }
        }
    }
    Ok(PreSemifield::from_cube(p, n, cube))
}

/// Scan j over the nonzero field elements and return the first value whose
/// twisted product has no zero divisors, together with one failing j.
pub fn albert_parameter_scan(
    p: u8,
    n: usize,
    poly: &[u8],
    i: u32,
    k: u32,
) -> (Option<PreSemifield>, Option<FpVector>) {
    let mut good = None;
    let mut bad = None;
    let total = (p as u64).pow(n as u32);
    for code in 1..total {
        let j = FpVector::decode(p, n, code);
        let Ok(cand) = make_albert(p, n, poly, &j, i, k) else {
            continue;
        };
        if cand.check_presemifield().ok() {
            if good.is_none() {
                good = Some(cand);
            }
        } else if bad.is_none() {
            bad = Some(j);
        }
        if good.is_some() && bad.is_some() {
            break;
        }
    }
    (good, bad)
}

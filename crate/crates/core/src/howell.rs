//! Howell normal form for submodules of `(Z/N)^k`.
//!
//! The Howell form of a row span is unique, so it serves as a canonical
//! key for subgroups, and membership can be decided by reduction against
//! it. Kernels are read off the Howell form of `[M | I]`.

use crate::arith::{gcd, inv_mod};

/// `(g, s, t)` with `g = gcd(a, b) = s a + t b`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, s, t) = ext_gcd(b, a % b);
    (g, t, s - (a / b) * t)
}

/// A unit `u` of `Z/N` with `u·a ≡ gcd(a, N)`.
fn normalizing_unit(a: u64, modulus: u64) -> u64 {
    let g = gcd(a, modulus);
    let reduced = modulus / g;
    if reduced == 1 {
        return 1;
    }
    let base = inv_mod((a / g) % reduced, reduced).expect("a/g is a unit modulo N/g");
    (0..g)
        .map(|k| base + k * reduced)
        .find(|&u| gcd(u, modulus) == 1)
        .expect("a unit lifts")
}

fn scale_row(row: &mut [u64], u: u64, modulus: u64) {
    for x in row.iter_mut() {
        *x = ((*x as u128 * u as u128) % modulus as u128) as u64;
    }
}

/// `dst -= q·src`.
fn sub_multiple(dst: &mut [u64], src: &[u64], q: u64, modulus: u64) {
    let q = q % modulus;
    for (d, s) in dst.iter_mut().zip(src) {
        let t = (*s as u128 * q as u128 % modulus as u128) as u64;
        *d = (*d + modulus - t) % modulus;
    }
}

/// Rows of the Howell form of the span of `rows` over `Z/modulus`, in
/// pivot order; every row has length `width`.
pub fn howell_form(rows: &[Vec<u64>], width: usize, modulus: u64) -> Vec<Vec<u64>> {
    assert!(modulus >= 1);
    if modulus == 1 {
        return Vec::new();
    }
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % modulus).collect())
        .collect();
    while a.len() < width {
        a.push(vec![0; width]);
    }
    let m = modulus as i128;
    let mut r = 0;
    for j in 0..width {
        if r >= a.len() {
            break;
        }
        for i in r + 1..a.len() {
            if a[i][j] == 0 {
                continue;
            }
            let (x, y) = (a[r][j] as i128, a[i][j] as i128);
            let (g, s, t) = ext_gcd(x, y);
            let (u, v) = (-y / g, x / g);
            let (top, bottom): (Vec<u64>, Vec<u64>) = a[r]
                .iter()
                .zip(&a[i])
                .map(|(&p, &q)| {
                    let (p, q) = (p as i128, q as i128);
                    (((s * p + t * q) % m + m) % m, ((u * p + v * q) % m + m) % m)
                })
                .map(|(x, y)| (x as u64, y as u64))
                .unzip();
            a[r] = top;
            a[i] = bottom;
        }
        if a[r][j] == 0 {
            continue;
        }
        let unit = normalizing_unit(a[r][j], modulus);
        scale_row(&mut a[r], unit, modulus);
        let pivot = a[r][j];
        let pivot_row = a[r].clone();
        for i in 0..r {
            let q = a[i][j] / pivot;
            sub_multiple(&mut a[i], &pivot_row, q, modulus);
        }
        // annihilator row, zero from column j on to the left
        let ann = modulus / pivot;
        if ann != modulus {
            let mut extra = pivot_row.clone();
            scale_row(&mut extra, ann, modulus);
            if extra.iter().any(|&x| x != 0) {
                a.push(extra);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

fn pivot(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Whether `x` lies in the span of Howell rows `basis`.
pub fn in_span(basis: &[Vec<u64>], x: &[u64], modulus: u64) -> bool {
    let mut x: Vec<u64> = x.iter().map(|v| v % modulus).collect();
    for row in basis {
        let j = pivot(row).expect("Howell rows are nonzero");
        if x[j] % row[j] != 0 {
            return false;
        }
        let q = x[j] / row[j];
        sub_multiple(&mut x, row, q, modulus);
    }
    x.iter().all(|&v| v == 0)
}

/// Order of the span of Howell rows.
pub fn span_order(basis: &[Vec<u64>], modulus: u64) -> u64 {
    basis
        .iter()
        .map(|row| modulus / row[pivot(row).expect("nonzero row")])
        .product()
}

/// Generators of `{c ∈ (Z/N)^k : c·M = 0}` for a `k × w` matrix `M`, in
/// Howell form.
pub fn left_kernel(matrix: &[Vec<u64>], width: usize, modulus: u64) -> Vec<Vec<u64>> {
    let k = matrix.len();
    let augmented: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out = row.clone();
            out.resize(width, 0);
            out.extend((0..k).map(|c| u64::from(c == i)));
            out
        })
        .collect();
    let h = howell_form(&augmented, width + k, modulus);
    let kernel: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|row| row[..width].iter().all(|&x| x == 0))
        .map(|row| row[width..].to_vec())
        .collect();
    howell_form(&kernel, k, modulus)
}

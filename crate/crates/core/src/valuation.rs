//! Value-group model for the tensor product of two symbol algebras
//! `A = (t1, t2)_n ⊗ (t3, t4)_n` over an iterated Laurent series field.
//!
//! `Γ_A/Γ_F ≅ V = (Z/n)^4` carries the alternating form `Φ_A` with Gram
//! matrix `J ⊕ J`, `J = [[0, 1], [-1, 0]]`. An extension `K` splits `A`
//! exactly when `((Γ_A ∩ Γ_K)/Γ_F)^⊥ ⊆ Γ_K/Γ_F`. Candidate cyclic value
//! groups `Γ_K/Γ_F` are modelled inside `(Z/n²)^4 ⊃ n·(Z/n²)^4 ≅ V`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, lcm};
use crate::howell::{howell_form, in_span, left_kernel, span_order};

/// Largest `n` for the exhaustive enumeration of cyclic subgroups of `(Z/n²)^4`.
pub const EXHAUSTIVE_LIMIT: u64 = 5;
/// Largest `n` for the counting branch, which visits every vector of `V`.
pub const COUNTING_LIMIT: u64 = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("n = {0} must be at least 2")]
    BadLevel(u64),
    #[error("exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT} (got {0})")]
    ExhaustiveTooLarge(u64),
    #[error("counting branch is limited to n <= {COUNTING_LIMIT} (got {0})")]
    CountingTooLarge(u64),
    #[error("vector has length {0}, expected 4")]
    BadVector(usize),
}

/// `(Z/n)^4` with the block-symplectic form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymplecticModule {
    n: u64,
    gram: [[u64; 4]; 4],
}

impl SymplecticModule {
    pub fn new(n: u64) -> Result<Self, ValuationError> {
        if n < 2 {
            return Err(ValuationError::BadLevel(n));
        }
        let m = n - 1;
        let gram = [[0, 1, 0, 0], [m, 0, 0, 0], [0, 0, 0, 1], [0, 0, m, 0]];
        Ok(SymplecticModule { n, gram })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn gram(&self) -> &[[u64; 4]; 4] {
        &self.gram
    }

    pub fn pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        let n = self.n;
        let mut acc = 0u64;
        for i in 0..4 {
            for j in 0..4 {
                acc = (acc + u[i] % n * self.gram[i][j] % n * (v[j] % n)) % n;
            }
        }
        acc
    }

    pub fn is_alternating(&self) -> bool {
        let n = self.n;
        (0..4).all(|i| {
            self.gram[i][i] == 0 && (0..4).all(|j| (self.gram[i][j] + self.gram[j][i]) % n == 0)
        })
    }

    /// The Gram determinant is a unit modulo `n`.
    pub fn is_nondegenerate(&self) -> bool {
        let g: Vec<Vec<i128>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let det = det4(&g).rem_euclid(self.n as i128) as u64;
        gcd(det, self.n) == 1
    }

    pub fn whole(&self) -> Subgroup {
        let gens: Vec<Vec<u64>> = (0..4)
            .map(|i| (0..4).map(|j| u64::from(i == j)).collect())
            .collect();
        Subgroup::generated(self.n, &gens)
    }
}

fn det4(m: &[Vec<i128>]) -> i128 {
    fn minor(m: &[Vec<i128>], col: usize) -> Vec<Vec<i128>> {
        m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect()
    }
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det4(&minor(m, j))
        })
        .sum()
}

/// Subgroup of `(Z/N)^4` stored by its Howell form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    modulus: u64,
    basis: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn generated(modulus: u64, gens: &[Vec<u64>]) -> Self {
        Subgroup {
            modulus,
            basis: howell_form(gens, 4, modulus),
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Subgroup {
            modulus,
            basis: Vec::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical (Howell) basis.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn order(&self) -> u64 {
        span_order(&self.basis, self.modulus)
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        in_span(&self.basis, x, self.modulus)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.modulus == other.modulus && self.basis.iter().all(|row| other.contains(row))
    }

    /// Least common multiple of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.basis
            .iter()
            .map(|row| self.modulus / row.iter().fold(self.modulus, |g, &x| gcd(g, x)))
            .fold(1, lcm)
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() == self.order()
    }

    /// `self ∩ V` for `V = n·(Z/n²)^4`, returned as a subgroup of `(Z/n)^4`.
    pub fn meet_v(&self, n: u64) -> Subgroup {
        assert_eq!(self.modulus, n * n, "ambient modulus must be n^2");
        let scaled: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x * n % self.modulus).collect())
            .collect();
        // coefficient vectors c with n·Σ c_i h_i = 0, i.e. Σ c_i h_i killed by n
        let coeffs = left_kernel(&scaled, 4, self.modulus);
        let gens: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                (0..4)
                    .map(|j| {
                        let x = c
                            .iter()
                            .zip(&self.basis)
                            .map(|(ci, row)| ci * row[j])
                            .sum::<u64>()
                            % self.modulus;
                        debug_assert_eq!(x % n, 0);
                        x / n
                    })
                    .collect()
            })
            .collect();
        Subgroup::generated(n, &gens)
    }
}

/// `H^⊥ = {v ∈ V : Φ(v, h) = 0 for all h ∈ H}`.
pub fn orth_complement(module: &SymplecticModule, h: &Subgroup) -> Subgroup {
    let n = module.n;
    assert_eq!(h.modulus, n, "H must lie in (Z/n)^4");
    if h.basis.is_empty() {
        return module.whole();
    }
    // column k of B is G·h_k, so v·B = 0 expresses v ⊥ h_k
    let b: Vec<Vec<u64>> = (0..4)
        .map(|i| {
            h.basis
                .iter()
                .map(|row| (0..4).map(|j| module.gram[i][j] * row[j]).sum::<u64>() % n)
                .collect()
        })
        .collect();
    let kernel = left_kernel(&b, h.basis.len(), n);
    Subgroup {
        modulus: n,
        basis: kernel,
    }
}

/// Whether a candidate `Γ_K/Γ_F = C ⊆ (Z/n²)^4` splits `A`:
/// `(C ∩ V)^⊥ ⊆ C ∩ V`.
pub fn splitting_check(module: &SymplecticModule, c: &Subgroup) -> bool {
    let d = c.meet_v(module.n);
    orth_complement(module, &d).is_subgroup_of(&d)
}

fn vectors(modulus: u64) -> impl ParallelIterator<Item = Vec<u64>> {
    let total = modulus.pow(4);
    (0..total).into_par_iter().map(move |mut k| {
        let mut v = vec![0u64; 4];
        for x in v.iter_mut().rev() {
            *x = k % modulus;
            k /= modulus;
        }
        v
    })
}

/// Every cyclic subgroup of `(Z/N)^4`, sorted by Howell basis.
pub fn cyclic_subgroups(modulus: u64) -> Vec<Subgroup> {
    let found: HashSet<Subgroup> = vectors(modulus)
        .map(|v| Subgroup::generated(modulus, &[v]))
        .collect();
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.basis.cmp(&b.basis));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveBranch {
    pub ambient_modulus: u64,
    pub cyclic_subgroups_scanned: u64,
    pub splitting_found: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingBranch {
    /// Vectors `v ∈ V` visited, each generating a cyclic `D = <v>`.
    pub vectors_scanned: u64,
    pub max_cyclic_order: u64,
    pub min_complement_order: u64,
    pub max_complement_exponent: u64,
    pub verdict: String,
}

/// Two independent arguments that no cyclic value group splits `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoncyclicReport {
    pub n: u64,
    pub gram_alternating: bool,
    pub gram_nondegenerate: bool,
    pub exhaustive: Option<ExhaustiveBranch>,
    pub counting: CountingBranch,
    pub branches_agree: bool,
}

fn exhaustive_branch(module: &SymplecticModule) -> ExhaustiveBranch {
    let n = module.n;
    let modulus = n * n;
    let subgroups = cyclic_subgroups(modulus);
    let splitting = subgroups
        .par_iter()
        .filter(|c| splitting_check(module, c))
        .count();
    ExhaustiveBranch {
        ambient_modulus: modulus,
        cyclic_subgroups_scanned: subgroups.len() as u64,
        splitting_found: splitting as u64,
    }
}

/// Every cyclic `C` meets `V` in a cyclic group `D` of exponent dividing
/// `n`, so `|D| ≤ n`; if `|D^⊥| ≥ n³` then `D^⊥` (exponent `n`) cannot be
/// cyclic, let alone lie in `D`.
fn counting_branch(module: &SymplecticModule) -> CountingBranch {
    let n = module.n;
    let stats = vectors(n)
        .map(|v| {
            let d = Subgroup::generated(n, &[v]);
            let perp = orth_complement(module, &d);
            (d.order(), perp.order(), perp.exponent())
        })
        .reduce(
            || (1, u64::MAX, 1),
            |a, b| (a.0.max(b.0), a.1.min(b.1), a.2.max(b.2)),
        );
    let (max_d, min_perp, max_exp) = stats;
    let ok = max_d <= n && min_perp >= n.pow(3) && max_exp <= n;
    CountingBranch {
        vectors_scanned: n.pow(4),
        max_cyclic_order: max_d,
        min_complement_order: min_perp,
        max_complement_exponent: max_exp,
        verdict: if ok { "noncyclic" } else { "inconclusive" }.into(),
    }
}

pub fn noncyclic_certificate(n: u64, exhaustive: bool) -> Result<NoncyclicReport, ValuationError> {
    let module = SymplecticModule::new(n)?;
    if exhaustive && n > EXHAUSTIVE_LIMIT {
        return Err(ValuationError::ExhaustiveTooLarge(n));
    }
    if n > COUNTING_LIMIT {
        return Err(ValuationError::CountingTooLarge(n));
    }
    let exhaustive = exhaustive.then(|| exhaustive_branch(&module));
    let counting = counting_branch(&module);
    let counting_ok = counting.verdict == "noncyclic";
    let branches_agree = exhaustive
        .as_ref()
        .map_or(true, |e| (e.splitting_found == 0) == counting_ok);
    Ok(NoncyclicReport {
        n,
        gram_alternating: module.is_alternating(),
        gram_nondegenerate: module.is_nondegenerate(),
        exhaustive,
        counting,
        branches_agree,
    })
}

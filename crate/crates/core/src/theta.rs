//! Heisenberg matrices for the theta group of a level-n structure and
//! cocycle-level checks in `GL_n`.
//!
//! `Mt` is the cyclic shift `e_j ↦ e_{j-1}` and `Ms = λ·diag((ζ^c)^j)`, so
//! `Mt Ms Mt⁻¹ Ms⁻¹ = ζ^c`, matching `e_n(T, S) = ζ^c` from [`crate::ec`].
//! The scalar `λ` is the freedom in lifting `Ψ(s)` from `PGL_n`; it is 1 for
//! [`heisenberg`] and makes the constants `d_{σ,τ}` nontrivial otherwise.
//!
//! Galois groups are modelled by finite shadows `Gal(F_{p^m}/F_p) = <σ>`,
//! with `σ^i` acting entrywise by `x ↦ x^{p^i}`. A cocycle
//! `ξ(σ^i) = a_i t + b_i s` is determined by `ξ(σ) = (a, b)`; `t` is fixed by
//! Galois and `s` is moved through the cyclotomic action `b ↦ p·b`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, modulo, pow_mod};
use crate::ff::{FfError, FieldDesc, FieldElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("level n = {0} must be at least 1")]
    BadLevel(u64),
    #[error("no primitive {n}-th root of unity in a field of order {q}")]
    NoRootOfUnity { n: u64, q: u64 },
    #[error("group order m = {0} must be at least 1")]
    BadGroupOrder(u64),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("representation and shadow live over different fields")]
    FieldMismatch,
    #[error("product at ({sigma}, {tau}) is not a scalar matrix")]
    NotScalar { sigma: u64, tau: u64 },
    #[error("cell ({sigma}, {tau}): product {got} differs from closed form {expected}")]
    ClosedFormMismatch {
        sigma: u64,
        tau: u64,
        got: String,
        expected: String,
    },
    #[error("2-cocycle does not cobound: {0}")]
    NoCoboundary(String),
    #[error(transparent)]
    Field(#[from] FfError),
}

/// Dense square matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn scalar(field: &FieldDesc, dim: usize, value: &FieldElem) -> Self {
        let mut entries = vec![field.zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = value.clone();
        }
        Matrix { dim, entries }
    }

    pub fn identity(field: &FieldDesc, dim: usize) -> Self {
        Self::scalar(field, dim, &field.one())
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> FieldElem) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.dim + j]
    }

    /// Product skipping zero entries; the matrices here are monomial.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let field = self.entries[0].field();
        let mut out = vec![field.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] = &out[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Matrix {
            dim: n,
            entries: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let field = self.entries[0].field().clone();
        let mut acc = Matrix::identity(&field, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Entrywise `x ↦ x^{p^k}`.
    pub fn frobenius(&self, k: u32) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x.frobenius(k)).collect(),
        }
    }

    pub fn as_scalar(&self) -> Option<FieldElem> {
        let d = self.get(0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let x = self.get(i, j);
                if (i == j && x != d) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(d.clone())
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).index()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Lifts `Mt`, `Ms` of `Ψ(t)`, `Ψ(s)` to `GL_n(F)`.
#[derive(Debug, Clone)]
pub struct HeisenbergRep {
    n: u64,
    field: FieldDesc,
    zeta: FieldElem,
    c: u64,
    scale: FieldElem,
    mt: Matrix,
    ms: Matrix,
}

/// `Mt`, `Ms` with `c = 1` and `λ = 1`, where `ζ_n` is the field's
/// smallest primitive n-th root of unity.
pub fn heisenberg(field: &FieldDesc, n: u64) -> Result<HeisenbergRep, ThetaError> {
    HeisenbergRep::new(field, n, 1, &field.one())
}

impl HeisenbergRep {
    pub fn new(field: &FieldDesc, n: u64, c: u64, scale: &FieldElem) -> Result<Self, ThetaError> {
        if n == 0 {
            return Err(ThetaError::BadLevel(n));
        }
        if scale.field() != field || scale.is_zero() {
            return Err(FfError::FieldMismatch.into());
        }
        let zeta = field.unity_root(n).map_err(|_| ThetaError::NoRootOfUnity {
            n,
            q: field.order(),
        })?;
        let dim = n as usize;
        let mt = Matrix::from_fn(dim, |i, j| {
            if (i + 1) % dim == j {
                field.one()
            } else {
                field.zero()
            }
        });
        let zc = zeta.pow_u64(c % n);
        let ms = Matrix::from_fn(dim, |i, j| {
            if i == j {
                scale * &zc.pow_u64(i as u64)
            } else {
                field.zero()
            }
        });
        Ok(HeisenbergRep {
            n,
            field: field.clone(),
            zeta,
            c: c % n,
            scale: scale.clone(),
            mt,
            ms,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn zeta(&self) -> &FieldElem {
        &self.zeta
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn scale(&self) -> &FieldElem {
        &self.scale
    }

    pub fn mt(&self) -> &Matrix {
        &self.mt
    }

    pub fn ms(&self) -> &Matrix {
        &self.ms
    }

    /// `ζ^c`, the value of `Mt Ms Mt⁻¹ Ms⁻¹`.
    pub fn commutator_scalar(&self) -> FieldElem {
        self.zeta.pow_u64(self.c)
    }

    /// `M_{at+bs} = Mt^a · Ms^b` with `0 ≤ a, b < n`.
    pub fn lift(&self, a: u64, b: u64) -> Matrix {
        self.mt.pow(a % self.n).mul(&self.ms.pow(b % self.n))
    }
}

/// `Gal(F_{p^m}/F_p)`, generated by the Frobenius `σ`.
#[derive(Debug, Clone)]
pub struct GaloisShadow {
    p: u64,
    m: u64,
    field: FieldDesc,
}

impl GaloisShadow {
    pub fn new(p: u64, m: u64) -> Result<Self, ThetaError> {
        if m == 0 {
            return Err(ThetaError::BadGroupOrder(m));
        }
        let field = FieldDesc::new(p, m as u32)?;
        Ok(GaloisShadow { p, m, field })
    }

    /// Shadow of order `m` over the prime `5 ≤ p < 200`, `p ∤ n`,
    /// `n | p^m - 1`, admitting the most cocycles; ties go to the smaller
    /// prime.
    pub fn for_level(n: u64, m: u64) -> Result<Self, ThetaError> {
        let mut best: Option<(usize, u64)> = None;
        for p in (5..200).filter(|&p| is_prime(p) && n % p != 0) {
            if crate::arith::checked_pow_below(p, m as u32, 1 << 62).is_none() {
                break;
            }
            if pow_mod(p, m, n) != 1 % n {
                continue;
            }
            let count = cocycle_generators(n, p, m).len();
            if best.map_or(true, |(c, _)| count > c) {
                best = Some((count, p));
            }
        }
        let (_, p) = best.ok_or(ThetaError::NoRootOfUnity { n, q: 0 })?;
        Self::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    fn act(&self, i: u64, x: &FieldElem) -> FieldElem {
        x.frobenius((i % self.m) as u32)
    }
}

/// `ξ(σ^i) = a_i t + b_i s` for a shadow of order `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub n: u64,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

/// Values `(a, b) = ξ(σ)` that extend to a cocycle: `m·a ≡ 0` and
/// `b·(1 + p + … + p^{m-1}) ≡ 0 (mod n)`.
pub fn cocycle_generators(n: u64, p: u64, m: u64) -> Vec<(u64, u64)> {
    let mut norm = 0u64;
    let mut pw = 1 % n;
    for _ in 0..m {
        norm = (norm + pw) % n;
        pw = pw * (p % n) % n;
    }
    let mut out = Vec::new();
    for a in 0..n {
        if (a as u128 * m as u128) % n as u128 != 0 {
            continue;
        }
        for b in 0..n {
            if (b * norm) % n == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

impl Cocycle {
    pub fn from_generator(
        shadow: &GaloisShadow,
        n: u64,
        a1: u64,
        b1: u64,
    ) -> Result<Self, ThetaError> {
        let (m, p) = (shadow.m, shadow.p);
        let mut a = Vec::with_capacity(m as usize);
        let mut b = Vec::with_capacity(m as usize);
        let (mut ai, mut bi) = (0u64, 0u64);
        for _ in 0..m {
            a.push(ai);
            b.push(bi);
            ai = (ai + a1) % n;
            bi = (b1 + (p % n) * bi) % n;
        }
        if ai != 0 || bi != 0 {
            return Err(ThetaError::NotCocycle(format!(
                "ξ(σ) = ({a1}, {b1}) does not extend to Z/{m}"
            )));
        }
        let xi = Cocycle { n, a, b };
        xi.validate(shadow)?;
        Ok(xi)
    }

    /// Checks `ξ(στ) = ξ(σ) + σ·ξ(τ)` on every pair.
    pub fn validate(&self, shadow: &GaloisShadow) -> Result<(), ThetaError> {
        let (m, n) = (shadow.m as usize, self.n);
        if self.a.len() != m || self.b.len() != m {
            return Err(ThetaError::NotCocycle(format!("expected {m} values")));
        }
        for i in 0..m {
            let q = pow_mod(shadow.p, i as u64, n);
            for j in 0..m {
                let k = (i + j) % m;
                let a_ok = (self.a[i] + self.a[j]) % n == self.a[k] % n;
                let b_ok = (self.b[i] + q * (self.b[j] % n)) % n == self.b[k] % n;
                if !a_ok || !b_ok {
                    return Err(ThetaError::NotCocycle(format!("fails at (σ^{i}, σ^{j})")));
                }
            }
        }
        Ok(())
    }
}

fn check_fields(
    rep: &HeisenbergRep,
    shadow: &GaloisShadow,
    xi: &Cocycle,
) -> Result<(), ThetaError> {
    if rep.field != shadow.field {
        return Err(ThetaError::FieldMismatch);
    }
    if xi.n != rep.n {
        return Err(ThetaError::NotCocycle(format!(
            "cocycle has level {} but representation {}",
            xi.n, rep.n
        )));
    }
    Ok(())
}

/// Precomputed powers for evaluating every cell of one shadow.
struct Tables {
    mt_pow: Vec<Matrix>,
    ms_pow: Vec<Matrix>,
    ms_inv_pow: Vec<Matrix>,
    mt_inv_pow: Vec<Matrix>,
}

impl Tables {
    fn new(rep: &HeisenbergRep) -> Self {
        let n = rep.n;
        let mt_inv = rep.mt.pow(n - 1);
        let ms_inv = rep.ms.pow(n - 1).mul(&Matrix::scalar(
            &rep.field,
            n as usize,
            &rep.scale.pow(-(n as i64)),
        ));
        let powers = |m: &Matrix| (0..n).map(|k| m.pow(k)).collect::<Vec<_>>();
        Tables {
            mt_pow: powers(&rep.mt),
            ms_pow: powers(&rep.ms),
            ms_inv_pow: powers(&ms_inv),
            mt_inv_pow: powers(&mt_inv),
        }
    }
}

/// Scalar of `M_{ξ(σ)} σ(M_{ξ(τ)}) M_{ξ(στ)}⁻¹`, together with `1/d_{σ,τ}`
/// read off `Ms^{b_σ} σ(Ms^{b_τ}) Ms^{-b_{στ}}`.
fn eval_cell(
    rep: &HeisenbergRep,
    shadow: &GaloisShadow,
    tables: &Tables,
    xi: &Cocycle,
    i: usize,
    j: usize,
) -> Result<(FieldElem, FieldElem), ThetaError> {
    let m = shadow.m as usize;
    let k = (i + j) % m;
    let n = rep.n;
    let (ai, bi) = ((xi.a[i] % n) as usize, (xi.b[i] % n) as usize);
    let (aj, bj) = ((xi.a[j] % n) as usize, (xi.b[j] % n) as usize);
    let (ak, bk) = ((xi.a[k] % n) as usize, (xi.b[k] % n) as usize);
    let ms_j = tables.ms_pow[bj].frobenius(i as u32);
    let product = tables.mt_pow[ai]
        .mul(&tables.ms_pow[bi])
        .mul(&tables.mt_pow[aj])
        .mul(&ms_j)
        .mul(&tables.ms_inv_pow[bk])
        .mul(&tables.mt_inv_pow[ak]);
    let cell = || (i as u64, j as u64);
    let scalar = product.as_scalar().ok_or_else(|| ThetaError::NotScalar {
        sigma: cell().0,
        tau: cell().1,
    })?;
    let d_inv = tables.ms_pow[bi]
        .mul(&ms_j)
        .mul(&tables.ms_inv_pow[bk])
        .as_scalar()
        .ok_or_else(|| ThetaError::NotScalar {
            sigma: cell().0,
            tau: cell().1,
        })?;
    Ok((scalar, d_inv))
}

/// `(1/d_{σ,τ}) · (ζ^c)^{-a_τ b_σ}`.
fn closed_form(
    rep: &HeisenbergRep,
    xi: &Cocycle,
    d_inv: &FieldElem,
    i: usize,
    j: usize,
) -> FieldElem {
    let n = rep.n;
    let e = modulo(-((xi.a[j] % n) as i64) * ((xi.b[i] % n) as i64), n);
    d_inv * &rep.commutator_scalar().pow_u64(e)
}

/// The 2-cocycle value at `(σ^i, σ^j)`, checked against the closed form.
pub fn cocycle_eval(
    rep: &HeisenbergRep,
    shadow: &GaloisShadow,
    xi: &Cocycle,
    sigma: u64,
    tau: u64,
) -> Result<FieldElem, ThetaError> {
    check_fields(rep, shadow, xi)?;
    xi.validate(shadow)?;
    let tables = Tables::new(rep);
    let (i, j) = ((sigma % shadow.m) as usize, (tau % shadow.m) as usize);
    let (scalar, d_inv) = eval_cell(rep, shadow, &tables, xi, i, j)?;
    check_cell(rep, xi, &scalar, &d_inv, i, j)?;
    Ok(scalar)
}

fn check_cell(
    rep: &HeisenbergRep,
    xi: &Cocycle,
    scalar: &FieldElem,
    d_inv: &FieldElem,
    i: usize,
    j: usize,
) -> Result<(), ThetaError> {
    let expected = closed_form(rep, xi, d_inv, i, j);
    if &expected != scalar {
        return Err(ThetaError::ClosedFormMismatch {
            sigma: i as u64,
            tau: j as u64,
            got: scalar.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(())
}

/// Every cell of the 2-cocycle, row `σ^i`, column `σ^j`.
pub fn cocycle_grid(
    rep: &HeisenbergRep,
    shadow: &GaloisShadow,
    xi: &Cocycle,
) -> Result<Vec<Vec<FieldElem>>, ThetaError> {
    check_fields(rep, shadow, xi)?;
    xi.validate(shadow)?;
    let tables = Tables::new(rep);
    let m = shadow.m as usize;
    let rows: Vec<Result<Vec<FieldElem>, ThetaError>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| {
                    let (scalar, d_inv) = eval_cell(rep, shadow, &tables, xi, i, j)?;
                    check_cell(rep, xi, &scalar, &d_inv, i, j)?;
                    Ok(scalar)
                })
                .collect()
        })
        .collect();
    // first failing row in order, so the reported cell does not depend on scheduling
    rows.into_iter().collect()
}

/// A 1-cochain `g` with `f(σ, τ) = g(σ)·σ(g(τ))/g(στ)`, verified in every cell.
pub fn cobounding_cochain(
    shadow: &GaloisShadow,
    f: &[Vec<FieldElem>],
) -> Result<Vec<FieldElem>, ThetaError> {
    let m = shadow.m as usize;
    let field = &shadow.field;
    if f.len() != m || f.iter().any(|row| row.len() != m) {
        return Err(ThetaError::NoCoboundary(format!(
            "expected a {m}x{m} table"
        )));
    }
    let step = |i: usize| &f[i][1 % m];
    let target = (0..m).fold(field.one(), |acc, i| &acc * step(i));
    if target.is_zero() || target.frobenius(1) != target {
        return Err(ThetaError::NoCoboundary(
            "norm equation has no solution in F_p".into(),
        ));
    }
    // N(γ) generates F_p^× for a primitive γ of F_{p^m}.
    let gamma = field.generator();
    let q = shadow.p;
    let norm_exp = (field.order() - 1) / (q - 1);
    let n_gamma = gamma.pow_u64(norm_exp);
    let mut acc = field.one();
    let mut k = None;
    for e in 0..q - 1 {
        if acc == target {
            k = Some(e);
            break;
        }
        acc = &acc * &n_gamma;
    }
    let k = k.ok_or_else(|| ThetaError::NoCoboundary("norm equation has no solution".into()))?;
    let x = gamma.pow_u64(k);
    let mut g = Vec::with_capacity(m);
    g.push(f[0][0].clone());
    for i in 0..m.saturating_sub(1) {
        let next = &(&g[i] * &shadow.act(i as u64, &x)) * &step(i).inv();
        g.push(next);
    }
    for i in 0..m {
        for j in 0..m {
            let lhs = &(&g[i] * &shadow.act(i as u64, &g[j])) * &g[(i + j) % m].inv();
            if lhs != f[i][j] {
                return Err(ThetaError::NoCoboundary(format!("cell ({i}, {j}) differs")));
            }
        }
    }
    Ok(g)
}

/// Outcome of [`lemma32_check`]; `failure` names the first failing relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicModelOutcome {
    pub n: u64,
    pub m: u64,
    pub b: String,
    pub holds: bool,
    pub failure: Option<String>,
}

/// `(L, b)` for `L = F^n` with `ρ` the cyclic shift `ρ(x)_i = x_{i+1}`:
/// elements `Σ_k x_k w^k`, `w x = ρ(x) w`, `w^n = b`.
#[derive(Clone)]
struct CyclicAlgebra {
    n: usize,
    b: FieldElem,
}

/// `coef[k][i]` is component `i` of the `w^k` coefficient.
#[derive(Clone, PartialEq, Eq)]
struct AlgElem(Vec<Vec<FieldElem>>);

impl CyclicAlgebra {
    fn zero(&self) -> AlgElem {
        AlgElem(vec![vec![self.b.field().zero(); self.n]; self.n])
    }

    fn scalar(&self, x: &FieldElem) -> AlgElem {
        let mut out = self.zero();
        for i in 0..self.n {
            out.0[0][i] = x.clone();
        }
        out
    }

    /// `x ∈ L` placed in degree 0.
    fn diagonal(&self, x: &[FieldElem]) -> AlgElem {
        let mut out = self.zero();
        out.0[0] = x.to_vec();
        out
    }

    fn w(&self) -> AlgElem {
        if self.n == 1 {
            return self.scalar(&self.b);
        }
        let mut out = self.zero();
        for i in 0..self.n {
            out.0[1][i] = self.b.field().one();
        }
        out
    }

    fn add(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out = x.clone();
        for k in 0..self.n {
            for i in 0..self.n {
                out.0[k][i] = &out.0[k][i] + &y.0[k][i];
            }
        }
        out
    }

    /// `(x w^k)(y w^l) = x ρ^k(y) w^{k+l}`, reducing `w^n = b`.
    fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let n = self.n;
        let mut out = self.zero();
        for k in 0..n {
            if x.0[k].iter().all(|c| c.is_zero()) {
                continue;
            }
            for l in 0..n {
                if y.0[l].iter().all(|c| c.is_zero()) {
                    continue;
                }
                let wrap = k + l >= n;
                let deg = (k + l) % n;
                for i in 0..n {
                    let mut term = &x.0[k][i] * &y.0[l][(i + k) % n];
                    if wrap {
                        term = &term * &self.b;
                    }
                    out.0[deg][i] = &out.0[deg][i] + &term;
                }
            }
        }
        out
    }
}

type AlgMatrix = Vec<Vec<AlgElem>>;

fn alg_mat_mul(alg: &CyclicAlgebra, x: &AlgMatrix, y: &AlgMatrix) -> AlgMatrix {
    let m = x.len();
    let mut out = vec![vec![alg.zero(); m]; m];
    for i in 0..m {
        for k in 0..m {
            if x[i][k] == alg.zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = alg.add(&out[i][j], &alg.mul(&x[i][k], &y[k][j]));
            }
        }
    }
    out
}

/// Verifies that `z ↦ φ(z)` (`w` in the corner, ones below the diagonal),
/// `ā ↦ diag(ā)` respects `z^{nm} = b` and `z ā = σ(ā) z` in
/// `M_m((L, b))`, where `σ(a_1, …, a_m) = (ρ(a_m), a_1, …, a_{m-1})` on
/// `L^m`. The second relation is checked on a basis of `L^m`.
pub fn lemma32_check(
    n: u64,
    m: u64,
    field: &FieldDesc,
    b: &FieldElem,
) -> Result<CyclicModelOutcome, ThetaError> {
    if n == 0 || m == 0 {
        return Err(ThetaError::BadLevel(n.min(m)));
    }
    if b.field() != field {
        return Err(FfError::FieldMismatch.into());
    }
    if b.is_zero() {
        return Err(FfError::ZeroInverse.into());
    }
    let (nu, mu) = (n as usize, m as usize);
    let alg = CyclicAlgebra {
        n: nu,
        b: b.clone(),
    };
    let mut outcome = CyclicModelOutcome {
        n,
        m,
        b: b.to_string(),
        holds: true,
        failure: None,
    };

    let mut phi_z: AlgMatrix = vec![vec![alg.zero(); mu]; mu];
    for i in 1..mu {
        phi_z[i][i - 1] = alg.scalar(&field.one());
    }
    phi_z[0][mu - 1] = alg.w();

    let mut power = phi_z.clone();
    for _ in 1..n * m {
        power = alg_mat_mul(&alg, &power, &phi_z);
    }
    'outer: for i in 0..mu {
        for j in 0..mu {
            let expected = if i == j { alg.scalar(b) } else { alg.zero() };
            if power[i][j] != expected {
                outcome.holds = false;
                outcome.failure = Some(format!("phi(z)^{} differs from b at ({i}, {j})", n * m));
                break 'outer;
            }
        }
    }
    if !outcome.holds {
        return Ok(outcome);
    }

    let zero = field.zero();
    let one = field.one();
    for slot in 0..mu {
        for comp in 0..nu {
            // basis vector of L^m, then its image under σ
            let mut a = vec![vec![zero.clone(); nu]; mu];
            a[slot][comp] = one.clone();
            let mut sa = vec![vec![zero.clone(); nu]; mu];
            for s in 1..mu {
                sa[s] = a[s - 1].clone();
            }
            sa[0] = (0..nu).map(|i| a[mu - 1][(i + 1) % nu].clone()).collect();
            let diag = |v: &Vec<Vec<FieldElem>>| -> AlgMatrix {
                let mut out = vec![vec![alg.zero(); mu]; mu];
                for s in 0..mu {
                    out[s][s] = alg.diagonal(&v[s]);
                }
                out
            };
            let lhs = alg_mat_mul(&alg, &diag(&sa), &phi_z);
            let rhs = alg_mat_mul(&alg, &phi_z, &diag(&a));
            if lhs != rhs {
                outcome.holds = false;
                outcome.failure = Some(format!(
                    "phi(sigma(a)) phi(z) != phi(z) phi(a) for basis vector ({slot}, {comp})"
                ));
                return Ok(outcome);
            }
        }
    }
    Ok(outcome)
}

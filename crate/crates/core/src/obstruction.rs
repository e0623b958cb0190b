//! The obstruction map `Δ_t : H¹(G_k, E[n]) → Br(k)` for a curve with full
//! level-n structure, the laws it satisfies, and the machinery showing that
//! quadratic twists of such curves carry no nontrivial torsors of period
//! dividing `n` over `Q_p`.
//!
//! Under a level structure `E[n] ≅ Z/n × μ_n`, a class `[ξ]` is a pair
//! `(α, β)` of Kummer classes (`α` standing for the character `χ` under Kummer
//! duality) and `Δ_t([ξ]) = c·[χ, β)_n + δ_s([β])`. The correction `δ_s` is
//! zero for odd `n` and in the presence of a level-2n structure; otherwise
//! it is left undetermined and the evaluation refuses.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize, gcd, inv_mod, pow_mod};
use crate::brauer::{solve_symbol, symbol_invariant, BrauerClass, BrauerError};
use crate::ec::{full_level_search, Curve, EcError, LevelRecord, LevelStructure, SearchOptions};
use crate::kummer::{KummerClass, KummerError, TameContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("δ_s is undetermined for even n = {0} without a level-2n structure")]
    Unsupported(u64),
    #[error("policy does not apply: {0}")]
    PolicyMismatch(String),
    #[error("level structure (p = {ls_p}, n = {ls_n}) does not match context (p = {p}, n = {n})")]
    LevelMismatch {
        ls_p: u64,
        ls_n: u64,
        p: u64,
        n: u64,
    },
    #[error("wild ramification e = {e} at p = {p}")]
    Wild { p: u64, e: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error(transparent)]
    Curve(#[from] EcError),
}

/// `[ξ] ∈ H¹(G_k, E[n])` through its image `(α, β)` under the level structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CocycleClass {
    alpha: KummerClass,
    beta: KummerClass,
}

impl CocycleClass {
    pub fn new(alpha: KummerClass, beta: KummerClass) -> Result<Self, ObstructionError> {
        if alpha.ctx() != beta.ctx() {
            return Err(KummerError::ContextMismatch.into());
        }
        Ok(CocycleClass { alpha, beta })
    }

    pub fn trivial(ctx: &TameContext) -> Self {
        CocycleClass {
            alpha: ctx.trivial(),
            beta: ctx.trivial(),
        }
    }

    pub fn ctx(&self) -> &TameContext {
        self.alpha.ctx()
    }

    pub fn alpha(&self) -> &KummerClass {
        &self.alpha
    }

    pub fn beta(&self) -> &KummerClass {
        &self.beta
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha.is_trivial() && self.beta.is_trivial()
    }

    pub fn try_add(&self, other: &CocycleClass) -> Result<CocycleClass, ObstructionError> {
        Ok(CocycleClass {
            alpha: self.alpha.try_mul(&other.alpha)?,
            beta: self.beta.try_mul(&other.beta)?,
        })
    }

    pub fn add(&self, other: &CocycleClass) -> CocycleClass {
        self.try_add(other).expect("shared context")
    }

    pub fn scale(&self, m: i64) -> CocycleClass {
        CocycleClass {
            alpha: self.alpha.pow(m),
            beta: self.beta.pow(m),
        }
    }

    pub fn neg(&self) -> CocycleClass {
        self.scale(-1)
    }

    /// All classes of the context, ordered by `(α, β)` in class order.
    pub fn all(ctx: &TameContext) -> Vec<CocycleClass> {
        let classes = ctx.all_classes();
        classes
            .iter()
            .flat_map(|a| {
                classes.iter().map(move |b| CocycleClass {
                    alpha: a.clone(),
                    beta: b.clone(),
                })
            })
            .collect()
    }
}

/// Why `δ_s` may be taken to be zero.
#[derive(Debug, Clone)]
pub enum DeltaPolicy {
    OddN,
    /// Carries a full level-2n structure on the same curve.
    Level2nPresent(LevelStructure),
    Unsupported,
}

impl DeltaPolicy {
    /// `OddN` for odd levels and `Unsupported` otherwise.
    pub fn for_level(n: u64) -> Self {
        if n % 2 == 1 {
            DeltaPolicy::OddN
        } else {
            DeltaPolicy::Unsupported
        }
    }

    fn certify(&self, ls: &LevelStructure) -> Result<(), ObstructionError> {
        let n = ls.n();
        match self {
            DeltaPolicy::OddN if n % 2 == 1 => Ok(()),
            DeltaPolicy::OddN => Err(ObstructionError::PolicyMismatch(format!("n = {n} is even"))),
            DeltaPolicy::Level2nPresent(big) => {
                if big.n() != 2 * n || big.curve != ls.curve {
                    return Err(ObstructionError::PolicyMismatch(format!(
                        "certificate has level {} on another curve or level",
                        big.n()
                    )));
                }
                if !big.verify()? {
                    return Err(ObstructionError::PolicyMismatch(
                        "level-2n pairing does not verify".into(),
                    ));
                }
                Ok(())
            }
            DeltaPolicy::Unsupported => Err(ObstructionError::Unsupported(n)),
        }
    }
}

fn check_level(ctx: &TameContext, ls: &LevelStructure) -> Result<(), ObstructionError> {
    if ls.n() != ctx.n() || ls.p() != ctx.p() {
        return Err(ObstructionError::LevelMismatch {
            ls_p: ls.p(),
            ls_n: ls.n(),
            p: ctx.p(),
            n: ctx.n(),
        });
    }
    Ok(())
}

/// `Δ_t([ξ]) = c · inv(α, β)`, with `δ_s = 0` justified by `policy`.
pub fn delta_t(
    xi: &CocycleClass,
    ls: &LevelStructure,
    policy: &DeltaPolicy,
) -> Result<BrauerClass, ObstructionError> {
    check_level(xi.ctx(), ls)?;
    policy.certify(ls)?;
    Ok(symbol_invariant(&xi.alpha, &xi.beta)?.times(ls.c as i64))
}

/// Obstruction in the theta group twisted by `ξ0`: `Δ(a + ξ0) − Δ(ξ0)`.
pub fn twisted_delta(
    xi0: &CocycleClass,
    a: &CocycleClass,
    ls: &LevelStructure,
    policy: &DeltaPolicy,
) -> Result<BrauerClass, ObstructionError> {
    let shifted = xi0.try_add(a)?;
    Ok(delta_t(&shifted, ls, policy)? - delta_t(xi0, ls, policy)?)
}

/// Cup product followed by the Weil pairing, from Kummer data:
/// `c·(inv(α_a, β_b) + inv(α_b, β_a))`.
pub fn pairing_pushforward(
    a: &CocycleClass,
    b: &CocycleClass,
    ls: &LevelStructure,
) -> Result<BrauerClass, ObstructionError> {
    if a.ctx() != b.ctx() {
        return Err(KummerError::ContextMismatch.into());
    }
    check_level(a.ctx(), ls)?;
    let sum = symbol_invariant(&a.alpha, &b.beta)? + symbol_invariant(&b.alpha, &a.beta)?;
    Ok(sum.times(ls.c as i64))
}

/// Whether a tame extension of `Q_p` with ramification `e` and residue degree
/// `f` is forced to be abelian: `p^f ≡ 1 (mod e)`.
pub fn tame_galois_abelian(p: u64, e: u64, f: u32) -> Result<bool, ObstructionError> {
    if e == 0 || gcd(e, p) != 1 {
        return Err(ObstructionError::Wild { p, e });
    }
    Ok(e == 1 || pow_mod(p, f as u64, e) == 1)
}

/// Metacyclic group `<τ, σ | τ^e, σ^f = τ^r, στσ⁻¹ = τ^p>`; element
/// `τ^i σ^j` is stored as `i·f + j`.
struct Metacyclic {
    e: u64,
    f: u64,
    r: u64,
    /// `p^j mod e`.
    twist: Vec<u64>,
}

impl Metacyclic {
    fn new(p: u64, e: u64, f: u64, r: u64) -> Self {
        let twist = (0..f).map(|j| pow_mod(p, j, e)).collect();
        Metacyclic { e, f, r, twist }
    }

    fn order(&self) -> u64 {
        self.e * self.f
    }

    fn split(&self, x: u64) -> (u64, u64) {
        (x / self.f, x % self.f)
    }

    fn mul(&self, x: u64, y: u64) -> u64 {
        let (i, j) = self.split(x);
        let (k, l) = self.split(y);
        let carry = if j + l >= self.f { self.r } else { 0 };
        let a = (i + k * self.twist[j as usize] + carry) % self.e;
        a * self.f + (j + l) % self.f
    }

    fn power(&self, x: u64, m: u64) -> u64 {
        (0..m).fold(0, |acc, _| self.mul(acc, x))
    }

    fn element_order(&self, x: u64) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    fn generated_order(&self, gens: &[u64]) -> u64 {
        let mut seen = vec![false; self.order() as usize];
        seen[0] = true;
        let mut stack = vec![0u64];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// Presentation match with `D_n`: some `x` of order `n` and involution
    /// `y` with `yxy⁻¹ = x⁻¹` generating the whole group.
    fn is_dihedral(&self, n: u64) -> bool {
        if self.order() != 2 * n {
            return false;
        }
        let all: Vec<u64> = (0..self.order()).collect();
        let rotations: Vec<u64> = all
            .iter()
            .copied()
            .filter(|&x| self.element_order(x) == n)
            .collect();
        let flips: Vec<u64> = all
            .iter()
            .copied()
            .filter(|&y| self.element_order(y) == 2)
            .collect();
        for &x in &rotations {
            let x_inv = self.power(x, n - 1);
            for &y in &flips {
                if self.mul(self.mul(y, x), y) == x_inv && self.generated_order(&[x, y]) == 2 * n {
                    return true;
                }
            }
        }
        false
    }
}

/// Admissible tame parameters `(e, f, r)` of degree `2n` over `Q_p`.
fn tame_parameters(p: u64, n: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for e in crate::arith::divisors(2 * n) {
        let f = 2 * n / e;
        if gcd(e, p) != 1 || pow_mod(p, f, e) != 1 % e {
            continue;
        }
        for r in 0..e {
            if (r as u128 * (p - 1) as u128 % e as u128) == 0 {
                out.push((e, f, r));
            }
        }
    }
    out
}

/// Whether `D_n` occurs as the Galois group of a tame extension of `Q_p`.
pub fn dihedral_realizable(p: u64, n: u64) -> Result<bool, ObstructionError> {
    if n < 3 || n % 2 == 0 {
        return Err(ObstructionError::Precondition(format!(
            "n = {n} must be odd and at least 3"
        )));
    }
    if !crate::arith::is_prime(p) || (2 * n) % p == 0 {
        return Err(ObstructionError::Wild { p, e: 2 * n });
    }
    Ok(tame_parameters(p, n)
        .into_iter()
        .any(|(e, f, r)| Metacyclic::new(p, e, f, r).is_dihedral(n)))
}

fn check_twist_preconditions(p: u64, n: u64) -> Result<(), ObstructionError> {
    if n < 3 || n % 2 == 0 {
        return Err(ObstructionError::Precondition(format!(
            "n = {n} must be odd and at least 3"
        )));
    }
    if p < 3 || !crate::arith::is_prime(p) || n % p == 0 {
        return Err(ObstructionError::Precondition(format!(
            "p = {p} must be an odd prime not dividing n"
        )));
    }
    if (p - 1) % n != 0 {
        return Err(ObstructionError::Precondition(format!(
            "n = {n} does not divide p - 1 = {}",
            p - 1
        )));
    }
    Ok(())
}

/// Classes `(α, β)` over the unramified quadratic extension of `Q_p` that
/// descend to the quadratic twist: Frobenius acts on them by `-1`, and each
/// component equals its own anti-invariant projection `½(x − σx)`.
pub fn twist_h1_exhaustive(p: u64, n: u64) -> Result<Vec<CocycleClass>, ObstructionError> {
    check_twist_preconditions(p, n)?;
    let ctx = TameContext::new(p, n, 2)?;
    let half = inv_mod(2, n).expect("n is odd") as i64;
    let survives = |x: &KummerClass| {
        let sx = x.frobenius();
        sx == x.inverse() && x.mul(&sx.inverse()).pow(half) == *x
    };
    let classes = ctx.all_classes();
    let mut out = Vec::new();
    for a in &classes {
        for b in &classes {
            if survives(a) && survives(b) {
                out.push(CocycleClass {
                    alpha: a.clone(),
                    beta: b.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// One numbered condition of the certificate and the facts checked for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub condition: u8,
    pub passed: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolWitness {
    pub target: BrauerClass,
    pub alpha: KummerClass,
    pub beta: KummerClass,
    pub recomputed: BrauerClass,
}

/// Per-prime-divisor data behind condition (4).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistEvidence {
    pub prime: u64,
    pub dihedral_realizable: bool,
    pub h1_survivors: Vec<CocycleClass>,
    pub twist_lacks_torsion: bool,
}

/// Checked evidence that `E` over `Q_p` has torsors splitting every algebra
/// of index dividing `n`, while its quadratic twists have none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistCertificate {
    pub p: u64,
    pub n: u64,
    pub conditions: Vec<ConditionCheck>,
    pub level_witness: Option<LevelRecord>,
    pub symbol_witnesses: Vec<SymbolWitness>,
    pub twist_evidence: Vec<TwistEvidence>,
    pub verified: bool,
}

impl TwistCertificate {
    pub fn failed_conditions(&self) -> Vec<u8> {
        self.conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.condition)
            .collect()
    }
}

fn condition(number: u8, reasons: Vec<String>, passed: bool) -> ConditionCheck {
    ConditionCheck {
        condition: number,
        passed,
        reasons,
    }
}

/// Runs every check; failures are recorded in the certificate rather than
/// returned as errors. Later conditions are skipped once one fails.
pub fn twist_certificate(p: u64, n: u64) -> TwistCertificate {
    let mut cert = TwistCertificate {
        p,
        n,
        conditions: Vec::new(),
        level_witness: None,
        symbol_witnesses: Vec::new(),
        twist_evidence: Vec::new(),
        verified: false,
    };

    // (1) μ_n ⊂ Q_p, with the standing hypotheses.
    let mut reasons = Vec::new();
    let mut ok = true;
    if n >= 3 && n % 2 == 1 {
        reasons.push(format!("n = {n} is odd"));
    } else {
        reasons.push(format!("n = {n} is not an odd integer >= 3"));
        ok = false;
    }
    if p > 2 && crate::arith::is_prime(p) && (2 * n) % p != 0 {
        reasons.push(format!("p = {p} is an odd prime not dividing 2n"));
    } else {
        reasons.push(format!("p = {p} is not an odd prime prime to 2n"));
        ok = false;
    }
    if ok && (p - 1) % n == 0 {
        reasons.push(format!("{n} divides p - 1, so zeta_{n} lies in Q_{p}"));
    } else if ok {
        reasons.push(format!("{n} does not divide p - 1 = {}", p - 1));
        ok = false;
    }
    cert.conditions.push(condition(1, reasons, ok));
    if !ok {
        return cert;
    }

    // (2) a curve with full level-n structure.
    let found = full_level_search(
        n,
        p,
        p,
        SearchOptions {
            max_per_prime: Some(1),
        },
    );
    let Some(record) = found.into_iter().next() else {
        cert.conditions.push(condition(
            2,
            vec![format!("no curve over F_{p} has full {n}-torsion")],
            false,
        ));
        return cert;
    };
    let ls = match Curve::over_prime(p, record.a4 as i64, record.a6 as i64)
        .and_then(|e| e.level_structure(n))
    {
        Ok(ls) => ls,
        Err(err) => {
            cert.conditions.push(condition(
                2,
                vec![format!("witness does not rebuild: {err}")],
                false,
            ));
            return cert;
        }
    };
    let verified = ls.verify().unwrap_or(false);
    cert.conditions.push(condition(
        2,
        vec![
            format!(
                "y^2 = x^3 + {}x + {} has full {n}-torsion over F_{p}",
                record.a4, record.a6
            ),
            format!("e_n(T, S) = zeta^{} recomputed: {verified}", record.c),
            "p does not divide n, so the structure lifts to Q_p".into(),
        ],
        verified,
    ));
    cert.level_witness = Some(record);
    if !verified {
        return cert;
    }

    // (3) every class of index dividing n is an obstruction class.
    let ls = ls.symplectify();
    let ctx = match TameContext::new(p, n, 1) {
        Ok(ctx) => ctx,
        Err(err) => {
            cert.conditions
                .push(condition(3, vec![err.to_string()], false));
            return cert;
        }
    };
    let mut ok = true;
    let mut reasons = Vec::new();
    for k in 0..n {
        let target = BrauerClass::new(k as i64, n);
        let outcome = solve_symbol(target, &ctx)
            .map_err(ObstructionError::from)
            .and_then(|(a, b)| {
                let xi = CocycleClass::new(a.clone(), b.clone())?;
                let recomputed = delta_t(&xi, &ls, &DeltaPolicy::OddN)?;
                Ok(SymbolWitness {
                    target,
                    alpha: a,
                    beta: b,
                    recomputed,
                })
            });
        match outcome {
            Ok(w) if w.recomputed == target => cert.symbol_witnesses.push(w),
            Ok(w) => {
                reasons.push(format!("target {target} recomputed as {}", w.recomputed));
                ok = false;
            }
            Err(err) => {
                reasons.push(format!("target {target}: {err}"));
                ok = false;
            }
        }
    }
    if ok {
        reasons.push(format!(
            "all {n} targets k/{n} realized by Delta_t and recomputed"
        ));
    }
    cert.conditions.push(condition(3, reasons, ok));
    if !ok {
        return cert;
    }

    // (4) reduced to the prime divisors of n.
    let mut ok = true;
    let mut reasons = Vec::new();
    let curve = ls.curve.clone();
    for &q in factorize(n).keys() {
        if q != n {
            reasons.push(format!("reduced to the prime divisor {q}"));
        }
        let dihedral = dihedral_realizable(p, q);
        let survivors = twist_h1_exhaustive(p, q);
        let twist_torsion = curve
            .field()
            .non_square()
            .ok_or(EcError::BadTwist)
            .and_then(|d| curve.quadratic_twist(&d))
            .map(|t| matches!(t.torsion_basis(q), Err(EcError::FullTorsionAbsent(_))));
        match (dihedral, survivors, twist_torsion) {
            (Ok(dihedral), Ok(survivors), Ok(lacks)) => {
                let only_trivial = survivors.len() == 1 && survivors[0].is_trivial();
                reasons.push(format!("D_{q} realizable over Q_{p}: {dihedral}"));
                reasons.push(format!(
                    "{} of {} classes over the unramified quadratic extension descend to the twist",
                    survivors.len(),
                    q.pow(4)
                ));
                reasons.push(format!(
                    "unramified quadratic twist lacks full {q}-torsion: {lacks}"
                ));
                ok &= !dihedral && only_trivial && lacks;
                cert.twist_evidence.push(TwistEvidence {
                    prime: q,
                    dihedral_realizable: dihedral,
                    h1_survivors: survivors,
                    twist_lacks_torsion: lacks,
                });
            }
            (d, s, t) => {
                for err in [d.err(), s.err(), t.err().map(ObstructionError::from)]
                    .into_iter()
                    .flatten()
                {
                    reasons.push(err.to_string());
                }
                ok = false;
            }
        }
    }
    cert.conditions.push(condition(4, reasons, ok));
    cert.verified = cert.conditions.iter().all(|c| c.passed);
    cert
}

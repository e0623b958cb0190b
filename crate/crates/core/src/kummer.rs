//! Tame Kummer classes `K^× / (K^×)^n` for an unramified extension `K` of
//! `Q_p` of residue degree `f`, with `p ∤ n`.
//!
//! By Hensel's lemma such a class is determined by the valuation modulo `n`
//! and the residue of the unit part modulo `n`-th powers of the residue
//! field, so a class is stored as `(v mod n, u)` with `u` the smallest unit
//! of its coset `u·(k^×)^n`. The uniformizer is `p` itself.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd, is_prime, modulo};
use crate::ff::{FfError, FieldDesc, FieldElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KummerError {
    #[error("p = {0} must be an odd prime")]
    BadPrime(u64),
    #[error("n = {0} must be at least 2")]
    BadDegree(u64),
    #[error("the wild case p | n is not modelled (p = {p}, n = {n})")]
    Wild { p: u64, n: u64 },
    #[error("residue degree must be at least 1")]
    BadResidueDegree,
    #[error("unit residue must be nonzero")]
    ZeroUnit,
    #[error("classes belong to different contexts")]
    ContextMismatch,
    #[error(transparent)]
    Field(#[from] FfError),
}

/// Standing data: `K/Q_p` unramified of degree `f`, classes modulo `n`-th powers.
#[derive(Clone)]
pub struct TameContext {
    p: u64,
    n: u64,
    f: u32,
    residue: FieldDesc,
    mu_n_in_base: bool,
    generator: FieldElem,
}

impl TameContext {
    pub fn new(p: u64, n: u64, f: u32) -> Result<Self, KummerError> {
        if p == 2 || !is_prime(p) {
            return Err(KummerError::BadPrime(p));
        }
        if n < 2 {
            return Err(KummerError::BadDegree(n));
        }
        if gcd(n, p) != 1 {
            return Err(KummerError::Wild { p, n });
        }
        if f == 0 {
            return Err(KummerError::BadResidueDegree);
        }
        let residue = FieldDesc::new(p, f)?;
        let mu_n_in_base = (residue.order() - 1) % n == 0;
        let generator = residue.generator();
        Ok(TameContext {
            p,
            n,
            f,
            residue,
            mu_n_in_base,
            generator,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn residue_field(&self) -> &FieldDesc {
        &self.residue
    }

    /// Smallest generator of the residue unit group.
    pub fn generator(&self) -> &FieldElem {
        &self.generator
    }

    /// Whether `μ_n ⊂ K`, i.e. `n | p^f - 1`.
    pub fn mu_n_in_base(&self) -> bool {
        self.mu_n_in_base
    }

    /// `|k^× / (k^×)^n| = gcd(n, p^f - 1)`.
    pub fn unit_classes(&self) -> u64 {
        gcd(self.n, self.residue.order() - 1)
    }

    fn coset_key(&self, u: &FieldElem) -> FieldElem {
        let units = self.residue.order() - 1;
        u.pow_u64(units / self.unit_classes())
    }

    /// Smallest unit in `u·(k^×)^n`.
    fn canonical_unit(&self, u: &FieldElem) -> FieldElem {
        let key = self.coset_key(u);
        self.residue
            .units()
            .find(|x| self.coset_key(x) == key)
            .expect("u lies in its own coset")
    }

    pub fn reduce(&self, v: i64, u: &FieldElem) -> Result<KummerClass, KummerError> {
        if u.field() != &self.residue {
            return Err(FfError::FieldMismatch.into());
        }
        if u.is_zero() {
            return Err(KummerError::ZeroUnit);
        }
        Ok(KummerClass {
            ctx: self.clone(),
            v: modulo(v, self.n),
            u: self.canonical_unit(u),
        })
    }

    /// Convenience for prime residue fields: the unit is given as an integer.
    pub fn class(&self, v: i64, u: i64) -> Result<KummerClass, KummerError> {
        self.reduce(v, &self.residue.from_int(u))
    }

    pub fn trivial(&self) -> KummerClass {
        KummerClass {
            ctx: self.clone(),
            v: 0,
            u: self.residue.one(),
        }
    }

    /// Class of the uniformizer `p`.
    pub fn uniformizer(&self) -> KummerClass {
        KummerClass {
            ctx: self.clone(),
            v: 1 % self.n,
            u: self.residue.one(),
        }
    }

    /// Canonical unit representatives, one per coset, in increasing order.
    pub fn unit_representatives(&self) -> Vec<FieldElem> {
        let target = self.unit_classes() as usize;
        let mut keys: Vec<FieldElem> = Vec::with_capacity(target);
        let mut reps = Vec::with_capacity(target);
        for x in self.residue.units() {
            let key = self.coset_key(&x);
            if !keys.contains(&key) {
                keys.push(key);
                reps.push(x);
                if reps.len() == target {
                    break;
                }
            }
        }
        reps
    }

    /// Every class, ordered by `(v, u)`.
    pub fn all_classes(&self) -> Vec<KummerClass> {
        let reps = self.unit_representatives();
        (0..self.n)
            .flat_map(|v| reps.iter().map(move |u| (v, u.clone())))
            .map(|(v, u)| KummerClass {
                ctx: self.clone(),
                v,
                u,
            })
            .collect()
    }
}

impl PartialEq for TameContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.f == other.f
    }
}

impl Eq for TameContext {}

impl fmt::Debug for TameContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TameContext(p={}, n={}, f={})", self.p, self.n, self.f)
    }
}

/// A class `π^v · u` in `K^× / (K^×)^n`, canonically reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KummerClass {
    ctx: TameContext,
    v: u64,
    u: FieldElem,
}

impl std::hash::Hash for TameContext {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.p, self.n, self.f).hash(state);
    }
}

impl KummerClass {
    pub fn ctx(&self) -> &TameContext {
        &self.ctx
    }

    /// Valuation class in `[0, n)`.
    pub fn v(&self) -> u64 {
        self.v
    }

    /// Canonical unit residue.
    pub fn u(&self) -> &FieldElem {
        &self.u
    }

    pub fn try_mul(&self, other: &KummerClass) -> Result<KummerClass, KummerError> {
        if self.ctx != other.ctx {
            return Err(KummerError::ContextMismatch);
        }
        self.ctx
            .reduce((self.v + other.v) as i64, &(&self.u * &other.u))
    }

    pub fn mul(&self, other: &KummerClass) -> KummerClass {
        self.try_mul(other).expect("shared context")
    }

    pub fn pow(&self, m: i64) -> KummerClass {
        let n = self.ctx.n;
        // the group has exponent n, so only m mod n matters
        let e = modulo(m, n);
        let v = (self.v as u128 * e as u128 % n as u128) as i64;
        self.ctx
            .reduce(v, &self.u.pow_u64(e))
            .expect("nonzero unit")
    }

    pub fn inverse(&self) -> KummerClass {
        self.pow(-1)
    }

    /// Membership in `(K^×)^n`.
    pub fn is_trivial(&self) -> bool {
        let units = self.ctx.residue.order() - 1;
        self.v == 0 && self.u.pow_u64(units / gcd(self.ctx.n, units)).is_one()
    }

    /// Action of the Frobenius of `K/Q_p`: valuation fixed, residue raised to `p`.
    pub fn frobenius(&self) -> KummerClass {
        self.ctx
            .reduce(self.v as i64, &self.u.frobenius(1))
            .expect("nonzero unit")
    }
}

impl fmt::Debug for KummerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[v={}, u={}]", self.v, self.u)
    }
}

impl Serialize for KummerClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("KummerClass", 5)?;
        s.serialize_field("p", &self.ctx.p)?;
        s.serialize_field("n", &self.ctx.n)?;
        s.serialize_field("f", &self.ctx.f)?;
        s.serialize_field("v", &self.v)?;
        s.serialize_field("u", &self.u)?;
        s.end()
    }
}

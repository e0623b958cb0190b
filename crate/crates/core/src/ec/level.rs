//! Torsion bases, full level-n structures and the search for curves carrying them.
//!
//! A full level-n structure over `F_p` reduces the `Q_p` structure used by
//! the obstruction formulas; by Hensel's lemma every `F_p`-structure lifts
//! when `p ∤ n`, and all downstream formulas only read residue data.

use rayon::prelude::*;
use serde::Serialize;

use super::{Curve, EcError, Point, PrimeFieldCounter};
use crate::arith::{divisors, gcd, inv_mod, primes_between};
use crate::ff::FieldElem;

/// A `Z/n`-basis `(T, S)` of `E[n](F_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionBasis {
    pub n: u64,
    pub t: Point,
    pub s: Point,
}

/// Basis plus the chosen `ζ_n` and the constant `c` with `e_n(T, S) = ζ_n^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    pub curve: Curve,
    pub basis: TorsionBasis,
    pub zeta: FieldElem,
    pub c: u64,
}

impl Curve {
    fn exact_order(&self, point: &Point, n: u64) -> u64 {
        divisors(n)
            .into_iter()
            .find(|&d| self.mul(d as i64, point).is_infinity())
            .expect("n kills the point")
    }

    /// `E[n](F_q)` in increasing point order.
    pub fn torsion_points(&self, n: u64) -> Result<Vec<Point>, EcError> {
        Ok(self
            .points()?
            .into_iter()
            .filter(|pt| self.mul(n as i64, pt).is_infinity())
            .collect())
    }

    /// Deterministic basis of `E[n](F_q)`: the smallest point of exact order
    /// `n`, then the smallest partner pairing with it to a primitive root.
    pub fn torsion_basis(&self, n: u64) -> Result<TorsionBasis, EcError> {
        let p = self.field.characteristic();
        if n == 0 || gcd(n, p) != 1 {
            return Err(EcError::WildLevel { n, p });
        }
        if n == 1 {
            return Ok(TorsionBasis {
                n,
                t: Point::Infinity,
                s: Point::Infinity,
            });
        }
        let q = self.field.order();
        if (q - 1) % n != 0 {
            return Err(EcError::FullTorsionAbsent(n));
        }
        if self.group_order()? % (n * n) != 0 {
            return Err(EcError::FullTorsionAbsent(n));
        }
        let torsion = self.torsion_points(n)?;
        if torsion.len() as u64 != n * n {
            return Err(EcError::FullTorsionAbsent(n));
        }
        let t = torsion
            .iter()
            .find(|pt| self.exact_order(pt, n) == n)
            .cloned()
            .ok_or(EcError::FullTorsionAbsent(n))?;
        for s in &torsion {
            if self.weil_pairing(&t, s, n)?.mult_order() == n {
                return Ok(TorsionBasis { n, t, s: s.clone() });
            }
        }
        Err(EcError::FullTorsionAbsent(n))
    }

    /// Level structure with `ζ_n` the smallest primitive n-th root of unity.
    pub fn level_structure(&self, n: u64) -> Result<LevelStructure, EcError> {
        let basis = self.torsion_basis(n)?;
        let zeta = self
            .field
            .unity_root(n)
            .map_err(|e| EcError::Internal(e.to_string()))?;
        let value = self.weil_pairing(&basis.t, &basis.s, n)?;
        let mut power = self.field.one();
        for c in 0..n {
            if power == value {
                if gcd(c, n) != 1 && n > 1 {
                    return Err(EcError::Internal(format!(
                        "degenerate pairing exponent {c}"
                    )));
                }
                return Ok(LevelStructure {
                    curve: self.clone(),
                    basis,
                    zeta,
                    c: c % n.max(1),
                });
            }
            power = &power * &zeta;
        }
        Err(EcError::Internal(
            "pairing value is not a power of zeta".into(),
        ))
    }
}

impl LevelStructure {
    pub fn n(&self) -> u64 {
        self.basis.n
    }

    pub fn p(&self) -> u64 {
        self.curve.field().characteristic()
    }

    pub fn is_symplectic(&self) -> bool {
        self.c % self.n() == 1 % self.n()
    }

    /// Equivalent structure with `c = 1`: `T` is replaced by `c^{-1} T`.
    pub fn symplectify(&self) -> LevelStructure {
        let n = self.n();
        if n <= 1 || self.is_symplectic() {
            return self.clone();
        }
        let c_inv = inv_mod(self.c, n).expect("c is a unit modulo n");
        let t = self.curve.mul(c_inv as i64, &self.basis.t);
        LevelStructure {
            curve: self.curve.clone(),
            basis: TorsionBasis {
                n,
                t,
                s: self.basis.s.clone(),
            },
            zeta: self.zeta.clone(),
            c: 1,
        }
    }

    /// Recomputes `e_n(T, S)` and checks it against `ζ^c`.
    pub fn verify(&self) -> Result<bool, EcError> {
        let value = self
            .curve
            .weil_pairing(&self.basis.t, &self.basis.s, self.n())?;
        Ok(value == self.zeta.pow_u64(self.c))
    }
}

/// One curve found by [`full_level_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub p: u64,
    pub a4: u64,
    pub a6: u64,
    pub c: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Stop scanning a prime after this many curves.
    pub max_per_prime: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_per_prime: None,
        }
    }
}

/// Curves over `F_p`, for primes `p ∈ [p_min, p_max]` with `p ≡ 1 (mod n)`
/// and `p ∤ 6n`, whose `n`-torsion is fully rational. Coefficients are
/// scanned in the order `(a4, a6)` lexicographic; primes run in parallel and
/// are merged in increasing order.
pub fn full_level_search(
    n: u64,
    p_min: u64,
    p_max: u64,
    options: SearchOptions,
) -> Vec<LevelRecord> {
    if n < 2 {
        return Vec::new();
    }
    let primes: Vec<u64> = primes_between(p_min, p_max)
        .into_iter()
        .filter(|&p| p > 3 && p % n == 1 && (6 * n) % p != 0)
        .collect();
    let per_prime: Vec<Vec<LevelRecord>> = primes
        .par_iter()
        .map(|&p| search_prime(n, p, options))
        .collect();
    per_prime.into_iter().flatten().collect()
}

fn search_prime(n: u64, p: u64, options: SearchOptions) -> Vec<LevelRecord> {
    let counter = PrimeFieldCounter::new(p);
    let mut out = Vec::new();
    for a4 in 0..p {
        for a6 in 0..p {
            if counter.count(a4, a6) % (n * n) != 0 {
                continue;
            }
            let Ok(curve) = Curve::over_prime(p, a4 as i64, a6 as i64) else {
                continue;
            };
            if let Ok(ls) = curve.level_structure(n) {
                out.push(LevelRecord { p, a4, a6, c: ls.c });
                if options.max_per_prime.is_some_and(|m| out.len() >= m) {
                    return out;
                }
            }
        }
    }
    out
}

use genus1_core::arith::gcd;
use genus1_core::brauer::{solve_symbol as solve, symbol_invariant, BrauerClass};
use genus1_core::ec::{full_level_search, Curve, LevelStructure, SearchOptions};
use genus1_core::kummer::{KummerClass, TameContext};
use genus1_core::obstruction::{delta_t, twist_certificate, twisted_delta, CocycleClass, DeltaPolicy};
use genus1_core::theta::{cobounding_cochain, cocycle_generators, cocycle_grid, Cocycle, GaloisShadow, HeisenbergRep};
use genus1_core::valuation::noncyclic_certificate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::require;
use crate::{Failure, Outcome, Resolved};

fn pre<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Precondition(e.to_string())
}

fn done(inputs: Value, result: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { inputs, result, ok: true, reason: None })
}

pub fn level_search(
    env: &Resolved,
    n: Option<u64>,
    pmin: Option<u64>,
    pmax: Option<u64>,
    max_per_prime: Option<usize>,
) -> Result<Outcome, Failure> {
    let n = require(n, env.cfg.n, "n")?;
    let pmin = require(pmin, env.cfg.pmin, "pmin")?;
    let pmax = require(pmax, env.cfg.pmax, "pmax")?;
    let max_per_prime = max_per_prime.or(env.cfg.max_per_prime);
    if pmin > pmax {
        return Err(Failure::Usage(format!("--pmin {pmin} exceeds --pmax {pmax}")));
    }
    let records = full_level_search(n, pmin, pmax, SearchOptions { max_per_prime });
    let inputs = json!({ "n": n, "pmin": pmin, "pmax": pmax, "max_per_prime": max_per_prime });
    let empty = records.is_empty();
    Ok(Outcome {
        inputs,
        result: json!(records),
        ok: !empty,
        reason: empty.then(|| format!("no curve over F_p, {pmin} <= p <= {pmax}, has full {n}-torsion")),
    })
}

fn parse_class(ctx: &TameContext, text: &str) -> Result<KummerClass, Failure> {
    let bad = || Failure::Usage(format!("expected a Kummer class `v,u`, got `{text}`"));
    let (v, u) = text.split_once(',').ok_or_else(bad)?;
    let v: i64 = v.trim().parse().map_err(|_| bad())?;
    let u: i64 = u.trim().parse().map_err(|_| bad())?;
    ctx.class(v, u).map_err(pre)
}

fn parse_cocycle(ctx: &TameContext, text: &str) -> Result<CocycleClass, Failure> {
    let (a, b) = text
        .split_once(';')
        .ok_or_else(|| Failure::Usage(format!("expected `v,u;v,u`, got `{text}`")))?;
    CocycleClass::new(parse_class(ctx, a)?, parse_class(ctx, b)?).map_err(pre)
}

/// First curve over `F_p` with full `n`-torsion, and the policy for `δ_s`.
fn witness_level(p: u64, n: u64) -> Result<(LevelStructure, DeltaPolicy, Value), Failure> {
    let first = |level: u64| full_level_search(level, p, p, SearchOptions { max_per_prime: Some(1) }).into_iter().next();
    let curve = |rec: &genus1_core::ec::LevelRecord| Curve::over_prime(rec.p, rec.a4 as i64, rec.a6 as i64).map_err(pre);
    if n % 2 == 1 {
        let rec = first(n).ok_or_else(|| Failure::Precondition(format!("no curve over F_{p} with full {n}-torsion")))?;
        let ls = curve(&rec)?.level_structure(n).map_err(pre)?;
        return Ok((ls, DeltaPolicy::OddN, json!({ "record": rec, "policy": "odd-n" })));
    }
    let rec = first(2 * n).ok_or_else(|| {
        Failure::Precondition(format!("n = {n} is even and no curve over F_{p} has full {}-torsion", 2 * n))
    })?;
    let e = curve(&rec)?;
    let big = e.level_structure(2 * n).map_err(pre)?;
    let ls = e.level_structure(n).map_err(pre)?;
    let info = json!({ "record": { "p": rec.p, "a4": rec.a4, "a6": rec.a6, "c": ls.c }, "policy": "level-2n-present" });
    Ok((ls, DeltaPolicy::Level2nPresent(big), info))
}

pub fn obstruct(
    env: &Resolved,
    p: Option<u64>,
    n: Option<u64>,
    alpha: &str,
    beta: &str,
    twist_by: Option<&str>,
) -> Result<Outcome, Failure> {
    let p = require(p, env.cfg.p, "p")?;
    let n = require(n, env.cfg.n, "n")?;
    let ctx = TameContext::new(p, n, 1).map_err(pre)?;
    let xi = CocycleClass::new(parse_class(&ctx, alpha)?, parse_class(&ctx, beta)?).map_err(pre)?;
    let base = twist_by.map(|t| parse_cocycle(&ctx, t)).transpose()?;
    let (ls, policy, level) = witness_level(p, n)?;
    let inputs = json!({ "p": p, "n": n, "alpha": alpha, "beta": beta, "twist_by": twist_by });
    let invariant = match &base {
        Some(xi0) => twisted_delta(xi0, &xi, &ls, &policy).map_err(pre)?,
        None => delta_t(&xi, &ls, &policy).map_err(pre)?,
    };
    done(inputs, json!({ "cocycle": xi, "level": level, "invariant": invariant }))
}

pub fn twist_check(env: &Resolved, p: Option<u64>, n: Option<u64>) -> Result<Outcome, Failure> {
    let p = require(p, env.cfg.p, "p")?;
    let n = require(n, env.cfg.n, "n")?;
    let cert = twist_certificate(p, n);
    let failed = cert.failed_conditions();
    Ok(Outcome {
        inputs: json!({ "p": p, "n": n }),
        result: json!(cert),
        ok: cert.verified,
        reason: (!cert.verified).then(|| format!("conditions {failed:?} fail")),
    })
}

pub fn solve_symbol(env: &Resolved, p: Option<u64>, n: Option<u64>, target: &str) -> Result<Outcome, Failure> {
    let p = require(p, env.cfg.p, "p")?;
    let n = require(n, env.cfg.n, "n")?;
    let target: BrauerClass = target.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    let ctx = TameContext::new(p, n, 1).map_err(pre)?;
    let (alpha, beta) = solve(target, &ctx).map_err(pre)?;
    let recomputed = symbol_invariant(&alpha, &beta).map_err(pre)?;
    let ok = recomputed == target;
    Ok(Outcome {
        inputs: json!({ "p": p, "n": n, "target": target }),
        result: json!({ "alpha": alpha, "beta": beta, "recomputed": recomputed }),
        ok,
        reason: (!ok).then(|| "recomputed invariant differs from target".to_string()),
    })
}

pub fn theta_verify(
    env: &Resolved,
    n: Option<u64>,
    p: Option<u64>,
    group_order: Option<u64>,
    trials: Option<u64>,
) -> Result<Outcome, Failure> {
    let n = require(n, env.cfg.n, "n")?;
    let m = require(group_order, env.cfg.group_order, "group-order")?;
    let trials = trials.or(env.cfg.trials).unwrap_or(100);
    let p = p.or(env.cfg.p);
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let shadow = match p {
        Some(p) => GaloisShadow::new(p, m),
        None => GaloisShadow::for_level(n, m),
    }
    .map_err(pre)?;
    let field = shadow.field().clone();
    if (field.order() - 1) % n != 0 {
        return Err(Failure::Precondition(format!("F_{}^{m} has no primitive root of unity of order {n}", shadow.p())));
    }
    let gens = cocycle_generators(n, shadow.p(), m);
    let mut rng = ChaCha8Rng::seed_from_u64(env.seed);
    let (mut passed, mut cobounded) = (0u64, 0u64);
    let mut first_failure = Value::Null;
    for trial in 0..trials {
        let (a1, b1) = gens[rng.gen_range(0..gens.len())];
        let c = loop {
            let c = rng.gen_range(1..n);
            if gcd(c, n) == 1 {
                break c;
            }
        };
        let scale = field.from_index(rng.gen_range(1..field.order()));
        let xi = Cocycle::from_generator(&shadow, n, a1, b1).map_err(pre)?;
        let rep = HeisenbergRep::new(&field, n, c, &scale).map_err(pre)?;
        let failure = match cocycle_grid(&rep, &shadow, &xi) {
            Ok(grid) => {
                passed += 1;
                match cobounding_cochain(&shadow, &grid) {
                    Ok(_) => {
                        cobounded += 1;
                        None
                    }
                    Err(e) => Some(e.to_string()),
                }
            }
            Err(e) => Some(e.to_string()),
        };
        if let (Some(err), true) = (failure, first_failure.is_null()) {
            first_failure = json!({ "trial": trial, "xi_sigma": [a1, b1], "c": c, "scale": scale, "error": err });
        }
    }
    let ok = passed == trials && cobounded == trials;
    Ok(Outcome {
        inputs: json!({ "n": n, "p": p, "group_order": m, "trials": trials }),
        result: json!({
            "shadow": { "p": shadow.p(), "m": m, "field": format!("{}^{}", shadow.p(), m) },
            "cocycle_generators": gens.len(),
            "closed_form_passed": passed,
            "cobounded": cobounded,
            "first_failure": first_failure,
            "pass": ok,
        }),
        ok,
        reason: (!ok).then(|| "a cell or coboundary check failed".to_string()),
    })
}

pub fn wadsworth(env: &Resolved, n: Option<u64>, exhaustive: bool) -> Result<Outcome, Failure> {
    let n = require(n, env.cfg.n, "n")?;
    let exhaustive = exhaustive || env.cfg.exhaustive.unwrap_or(false);
    let report = noncyclic_certificate(n, exhaustive).map_err(pre)?;
    let scanned = report.exhaustive.as_ref().map(|e| e.cyclic_subgroups_scanned);
    let splitting = report.exhaustive.as_ref().map(|e| e.splitting_found);
    let ok = report.counting.verdict == "noncyclic" && splitting.unwrap_or(0) == 0 && report.branches_agree;
    Ok(Outcome {
        inputs: json!({ "n": n, "exhaustive": exhaustive }),
        result: json!({
            "cyclic_subgroups_scanned": scanned,
            "splitting_found": splitting,
            "counting_branch": report.counting.verdict,
            "report": report,
        }),
        ok,
        reason: (!ok).then(|| "certificate did not close".to_string()),
    })
}

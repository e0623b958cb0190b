use std::collections::HashSet;

use genus1_core::ff::{FieldDesc, FieldElem};
use genus1_core::theta::{
    cobounding_cochain, cocycle_eval, cocycle_generators, cocycle_grid, heisenberg, lemma32_check,
    Cocycle, GaloisShadow, HeisenbergRep, Matrix, ThetaError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Dense = Vec<Vec<FieldElem>>;

fn dense(m: &Matrix) -> Dense {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

fn ident(f: &FieldDesc, n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(f: &FieldDesc, x: &Dense, y: &Dense) -> Dense {
    let n = x.len();
    let mut out = vec![vec![f.zero(); y[0].len()]; n];
    for i in 0..n {
        for k in 0..y.len() {
            for j in 0..y[0].len() {
                out[i][j] = &out[i][j] + &(&x[i][k] * &y[k][j]);
            }
        }
    }
    out
}

fn mat_pow(f: &FieldDesc, x: &Dense, e: u64) -> Dense {
    (0..e).fold(ident(f, x.len()), |acc, _| mat_mul(f, &acc, x))
}

/// Gauss-Jordan on `[x | I]`.
fn mat_inv(f: &FieldDesc, x: &Dense) -> Dense {
    let n = x.len();
    let mut a: Dense = x
        .iter()
        .zip(ident(f, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular");
        a.swap(col, piv);
        let inv = a[col][col].inv();
        a[col] = a[col].iter().map(|v| v * &inv).collect();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                let pivot_row = a[col].clone();
                a[r] = a[r]
                    .iter()
                    .zip(&pivot_row)
                    .map(|(v, w)| v - &(&k * w))
                    .collect();
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn frob(x: &Dense, k: u32) -> Dense {
    x.iter()
        .map(|row| row.iter().map(|v| v.frobenius(k)).collect())
        .collect()
}

fn scalar_of(x: &Dense) -> Option<FieldElem> {
    let n = x.len();
    let s = x[0][0].clone();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j {
                s.clone()
            } else {
                x[0][0].field().zero()
            };
            if x[i][j] != want {
                return None;
            }
        }
    }
    Some(s)
}

/// Shift and diagonal built from their definitions.
fn oracle_pair(f: &FieldDesc, n: usize, c: u64, scale: &FieldElem) -> (Dense, Dense) {
    let zeta = f
        .units()
        .find(|u| u.mult_order() == n as u64)
        .unwrap()
        .pow_u64(c);
    let mut mt = vec![vec![f.zero(); n]; n];
    let mut ms = vec![vec![f.zero(); n]; n];
    for j in 0..n {
        // e_j -> e_{j-1}: column j has its one in row j-1
        mt[(j + n - 1) % n][j] = f.one();
        ms[j][j] = scale * &zeta.pow_u64(j as u64);
    }
    (mt, ms)
}

fn oracle_grid(shadow: &GaloisShadow, rep: &HeisenbergRep, xi: &Cocycle) -> Dense {
    let f = shadow.field();
    let n = rep.n() as usize;
    let (mt, ms) = oracle_pair(f, n, rep.c(), rep.scale());
    let lift = |k: usize| mat_mul(f, &mat_pow(f, &mt, xi.a[k]), &mat_pow(f, &ms, xi.b[k]));
    let m = shadow.m() as usize;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let prod = mat_mul(f, &lift(i), &frob(&lift(j), i as u32));
                    let prod = mat_mul(f, &prod, &mat_inv(f, &lift((i + j) % m)));
                    scalar_of(&prod).expect("scalar")
                })
                .collect()
        })
        .collect()
}

#[test]
fn matrices_match_their_definition() {
    let f = FieldDesc::prime(2521).unwrap();
    for n in 2..=8u64 {
        let rep = heisenberg(&f, n).unwrap();
        let (mt, ms) = oracle_pair(&f, n as usize, 1, &f.one());
        assert_eq!(dense(rep.mt()), mt);
        assert_eq!(dense(rep.ms()), ms);
        let comm = mat_mul(
            &f,
            &mat_mul(&f, &mt, &ms),
            &mat_mul(&f, &mat_inv(&f, &mt), &mat_inv(&f, &ms)),
        );
        assert_eq!(scalar_of(&comm).unwrap(), *rep.zeta());
        assert_eq!(rep.commutator_scalar(), *rep.zeta());
    }
}

#[test]
fn commutator_tracks_the_pairing_exponent() {
    let f = FieldDesc::new(7, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, c) in [(3u64, 2u64), (4, 3), (8, 5), (6, 5)] {
        let scale = f.from_index(rng.gen_range(1..f.order()));
        let rep = HeisenbergRep::new(&f, n, c, &scale).unwrap();
        let (mt, ms) = (dense(rep.mt()), dense(rep.ms()));
        let comm = mat_mul(
            &f,
            &mat_mul(&f, &mt, &ms),
            &mat_mul(&f, &mat_inv(&f, &mt), &mat_inv(&f, &ms)),
        );
        assert_eq!(scalar_of(&comm).unwrap(), rep.zeta().pow_u64(c));
        assert!(rep.mt().pow(n).as_scalar().unwrap().is_one());
        assert_eq!(rep.ms().pow(n).as_scalar().unwrap(), scale.pow_u64(n));
    }
}

#[test]
fn heisenberg_group_has_order_n_cubed() {
    let f = FieldDesc::prime(7).unwrap();
    let rep = heisenberg(&f, 3).unwrap();
    let gens = [rep.mt().clone(), rep.ms().clone()];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let key = |m: &Matrix| -> Vec<u64> { (0..9).map(|k| m.get(k / 3, k % 3).index()).collect() };
    let mut frontier = vec![Matrix::identity(&f, 3)];
    seen.insert(key(&frontier[0]));
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.mul(g);
            if seen.insert(key(&y)) {
                frontier.push(y);
            }
        }
    }
    assert_eq!(seen.len(), 27);
}

#[test]
fn lift_is_shift_power_times_diagonal_power() {
    let f = FieldDesc::prime(13).unwrap();
    let rep = heisenberg(&f, 4).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            let want = mat_mul(
                &f,
                &mat_pow(&f, &dense(rep.mt()), a),
                &mat_pow(&f, &dense(rep.ms()), b),
            );
            assert_eq!(dense(&rep.lift(a, b)), want);
        }
    }
}

#[test]
fn cocycle_grid_matches_direct_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, m) in [(3u64, 2u64), (3, 3), (4, 2), (5, 2), (5, 4), (2, 2), (6, 2)] {
        let shadow = GaloisShadow::for_level(n, m).unwrap();
        let f = shadow.field();
        let gens = cocycle_generators(n, shadow.p(), m);
        assert!(gens.len() > 1, "n = {n}, m = {m}");
        for _ in 0..3 {
            let (a1, b1) = gens[rng.gen_range(0..gens.len())];
            let xi = Cocycle::from_generator(&shadow, n, a1, b1).unwrap();
            let c = loop {
                let c = rng.gen_range(1..n.max(2));
                if genus1_core::arith::gcd(c, n) == 1 {
                    break c;
                }
            };
            let scale = f.from_index(rng.gen_range(1..f.order()));
            let rep = HeisenbergRep::new(f, n, c, &scale).unwrap();
            let grid = cocycle_grid(&rep, &shadow, &xi).unwrap();
            assert_eq!(grid, oracle_grid(&shadow, &rep, &xi));
            assert_eq!(
                cocycle_eval(&rep, &shadow, &xi, 1, m - 1).unwrap(),
                grid[1 % m as usize][(m - 1) as usize]
            );

            // 2-cocycle identity and the coboundary it must be
            let mu = m as usize;
            for i in 0..mu {
                for j in 0..mu {
                    for k in 0..mu {
                        let lhs = &grid[i][j] * &grid[(i + j) % mu][k];
                        let rhs = &grid[i][(j + k) % mu].clone() * &grid[j][k].frobenius(i as u32);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            let g = cobounding_cochain(&shadow, &grid).unwrap();
            for i in 0..mu {
                for j in 0..mu {
                    let lhs = &(&g[i] * &g[j].frobenius(i as u32)) * &g[(i + j) % mu].inv();
                    assert_eq!(lhs, grid[i][j]);
                }
            }
        }
    }
}

#[test]
fn generators_extend_exactly_when_listed() {
    for (n, m) in [(3u64, 2u64), (4, 2), (5, 4)] {
        let shadow = GaloisShadow::for_level(n, m).unwrap();
        let listed = cocycle_generators(n, shadow.p(), m);
        for a in 0..n {
            for b in 0..n {
                let ok = Cocycle::from_generator(&shadow, n, a, b).is_ok();
                assert_eq!(ok, listed.contains(&(a, b)));
            }
        }
    }
    let shadow = GaloisShadow::for_level(3, 2).unwrap();
    let bad = Cocycle {
        n: 3,
        a: vec![0, 1],
        b: vec![0, 0],
    };
    assert!(matches!(
        bad.validate(&shadow),
        Err(ThetaError::NotCocycle(_))
    ));
}

#[test]
fn non_cocycle_tables_do_not_cobound() {
    let shadow = GaloisShadow::new(7, 2).unwrap();
    let f = shadow.field();
    let x = f.from_index(10);
    // norm of the step is not in F_7
    let table = vec![vec![f.one(), f.one()], vec![f.one(), x]];
    assert!(cobounding_cochain(&shadow, &table).is_err());
}

/// Block matrix of `φ(z)` with `w` realized as `P·diag(b, 1, …, 1)`.
fn regular_model(f: &FieldDesc, n: usize, m: usize, b: &FieldElem) -> Dense {
    let mut w = vec![vec![f.zero(); n]; n];
    for i in 0..n {
        w[i][(i + 1) % n] = if (i + 1) % n == 0 { b.clone() } else { f.one() };
    }
    let dim = n * m;
    let mut z = vec![vec![f.zero(); dim]; dim];
    for blk in 1..m {
        for i in 0..n {
            z[blk * n + i][(blk - 1) * n + i] = f.one();
        }
    }
    for i in 0..n {
        for j in 0..n {
            z[i][(m - 1) * n + j] = w[i][j].clone();
        }
    }
    z
}

fn regular_oracle(f: &FieldDesc, n: usize, m: usize, b: &FieldElem, rng: &mut ChaCha8Rng) -> bool {
    let z = regular_model(f, n, m, b);
    let dim = n * m;
    let power = mat_pow(f, &z, dim as u64);
    let scalar_ok = scalar_of(&power).as_ref() == Some(b);
    let mut twist_ok = true;
    for _ in 0..4 {
        let a: Vec<Vec<FieldElem>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| f.from_index(rng.gen_range(0..f.order())))
                    .collect()
            })
            .collect();
        let mut sa = a.clone();
        for s in 1..m {
            sa[s] = a[s - 1].clone();
        }
        sa[0] = (0..n).map(|i| a[m - 1][(i + 1) % n].clone()).collect();
        let diag = |v: &Vec<Vec<FieldElem>>| -> Dense {
            let mut d = vec![vec![f.zero(); dim]; dim];
            for s in 0..m {
                for i in 0..n {
                    d[s * n + i][s * n + i] = v[s][i].clone();
                }
            }
            d
        };
        twist_ok &= mat_mul(f, &z, &diag(&a)) == mat_mul(f, &diag(&sa), &z);
    }
    scalar_ok && twist_ok
}

#[test]
fn cyclic_algebra_relations_match_regular_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, n, m) in [
        (7u64, 2u64, 2u64),
        (7, 3, 2),
        (11, 2, 3),
        (13, 3, 3),
        (5, 4, 2),
        (7, 1, 3),
        (3, 2, 1),
    ] {
        let f = FieldDesc::prime(p).unwrap();
        for b in f.units() {
            let out = lemma32_check(n, m, &f, &b).unwrap();
            let oracle = regular_oracle(&f, n as usize, m as usize, &b, &mut rng);
            assert_eq!(out.holds, oracle, "p = {p}, n = {n}, m = {m}, b = {b}");
            assert!(out.holds, "{:?}", out.failure);
        }
    }
}

#[test]
fn cyclic_algebra_rejects_bad_input() {
    let f = FieldDesc::prime(7).unwrap();
    assert!(lemma32_check(2, 2, &f, &f.zero()).is_err());
    assert!(lemma32_check(0, 2, &f, &f.one()).is_err());
    let g = FieldDesc::prime(11).unwrap();
    assert!(lemma32_check(2, 2, &f, &g.one()).is_err());
}

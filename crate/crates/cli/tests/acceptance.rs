//! Acceptance suite. Runs every criterion at its stated size and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fockadic::coherent::GammaParams;
use fockadic::metrics::{self, CommonPrefix, MetricBoundConstants};
use fockadic::pool;
use fockadic::{FockVector, IndexSequence, Letter, Scalar, Word};

const SEED: u64 = 0x5eed_2ad1c;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1000 random vectors (support ≤ 16, words ≤ 10), all (i, j):
/// A_i A†_j v = δ_ij v exactly.
fn commutation_relations() -> Outcome {
    let mut rng = rng(1);
    for _ in 0..1000 {
        let v = pool::random_fock_vector(&mut rng, 16, 10);
        for i in Letter::ALL {
            for j in Letter::ALL {
                let expected = if i == j {
                    v.clone()
                } else {
                    FockVector::zero()
                };
                ensure(v.create(j).annihilate(i) == expected, || {
                    format!("i={} j={} v={v}", i.index(), j.index())
                })?;
            }
        }
    }
    Ok("1000 vectors x 4 index pairs".into())
}

/// A_i Ω = 0.
fn vacuum_condition() -> Outcome {
    for i in Letter::ALL {
        ensure(FockVector::vacuum().annihilate(i).is_zero(), || {
            format!("A_{} Omega != 0", i.index())
        })?;
    }
    Ok("i = 0, 1".into())
}

/// 100 random (U, γ), k ≤ 32: ‖X_k‖² = Π γ_{u_i}².
fn norm_product_formula() -> Outcome {
    let mut rng = rng(3);
    for _ in 0..100 {
        let s = pool::random_sequence(&mut rng, 8, 6);
        let g = pool::random_gammas(&mut rng, 24);
        let t = s.coherent_truncate(&g, 32);
        for k in 0..=32 {
            let product = (1..=k)
                .map(|i| g.gamma(s.digit_at(i).unwrap()).clone())
                .fold(Scalar::one(), |acc, x| acc * &x * &x);
            ensure(t.level_term(k).unwrap().norm_squared() == product, || {
                format!("U={s} k={k}")
            })?;
        }
    }
    Ok("100 pairs x 33 levels".into())
}

/// Residual = level_norm(K)² exactly; for γ ≤ 1/2, K = 32 the residual is ≤ 4^{-32}.
fn eigenvector_relation() -> Outcome {
    let mut rng = rng(4);
    let mut cases = 0;
    for _ in 0..100 {
        let s = pool::random_sequence(&mut rng, 8, 6);
        let g = pool::random_gammas(&mut rng, 24);
        for depth in [0, 1, 5, 17, 32] {
            let top = s.level_norm(&g, depth);
            let residual = s.coherent_truncate(&g, depth).eigen_residual();
            ensure(residual == &top * &top, || format!("U={s} K={depth}"))?;
            cases += 1;
        }
    }
    let limit = num_traits::pow(q(1, 4), 32);
    for _ in 0..100 {
        let s = pool::random_sequence(&mut rng, 8, 6);
        let half = |x: Scalar| x * q(1, 2);
        let g = GammaParams::new(
            half(pool::random_unit_rational(&mut rng, 24)),
            half(pool::random_unit_rational(&mut rng, 24)),
        )
        .unwrap();
        let residual = s.coherent_truncate(&g, 32).eigen_residual();
        ensure(residual <= limit, || format!("U={s}: residual above 4^-32"))?;
        cases += 1;
    }
    // boundary: γ0 = γ1 = 1/2 hits the limit exactly
    let residual = IndexSequence::constant(Letter::One)
        .coherent_truncate(&GammaParams::uniform(q(1, 2)).unwrap(), 32)
        .eigen_residual();
    ensure(residual == limit, || {
        "gamma = 1/2 residual is not 4^-32".into()
    })?;
    Ok(format!("{} exact residual cases", cases + 1))
}

/// All triples from a pool of 50 sequences: ρ(U,V) ≤ max(ρ(U,W), ρ(V,W)).
fn strong_triangle_inequality() -> Outcome {
    let mut rng = rng(5);
    let g = pool::random_gammas(&mut rng, 24);
    let seqs: Vec<IndexSequence> = (0..50)
        .map(|_| pool::random_sequence(&mut rng, 8, 6))
        .collect();
    let rho: Vec<Vec<Scalar>> = seqs
        .iter()
        .map(|u| seqs.iter().map(|v| metrics::rho(u, v, &g)).collect())
        .collect();
    let mut triples = 0;
    for a in 0..50 {
        for b in 0..50 {
            for c in 0..50 {
                ensure(rho[a][b] <= *std::cmp::max(&rho[a][c], &rho[b][c]), || {
                    format!("U={} V={} W={}", seqs[a], seqs[b], seqs[c])
                })?;
                triples += 1;
            }
        }
    }
    Ok(format!("{triples} triples"))
}

/// 200 random pairs: |closed − numeric(K=40)| ≤ tail bound; τ² = 2/3 at γ = 1/2, k = 0.
fn closed_tau_matches_oracle() -> Outcome {
    let mut rng = rng(6);
    let mut pairs = 0;
    while pairs < 200 {
        let u = pool::random_sequence(&mut rng, 8, 6);
        let v = pool::random_sequence(&mut rng, 8, 6);
        if u == v {
            continue;
        }
        let g = pool::random_gammas(&mut rng, 24);
        let closed = metrics::tau_squared_closed(&u, &v, &g).unwrap();
        let numeric = metrics::tau_squared_numeric(&u, &v, &g, 40);
        let gap = &closed - &numeric.value;
        ensure(gap.abs() <= numeric.tail_bound, || format!("U={u} V={v}"))?;
        pairs += 1;
    }
    let worked = metrics::tau_squared_closed(
        &"0|0".parse().unwrap(),
        &"1|1".parse().unwrap(),
        &GammaParams::uniform(q(1, 2)).unwrap(),
    )
    .unwrap();
    ensure(worked == q(2, 3), || {
        format!("worked value {worked} != 2/3")
    })?;
    Ok("200 pairs at K = 40; tau^2 = 2/3 reproduced".into())
}

/// 500 pairs, random 0 < γ0 ≤ γ1 < 1: c0²ρ² ≤ τ² ≤ c1²ρ²; equality when γ0 = γ1.
fn equivalence_bounds() -> Outcome {
    let mut rng = rng(7);
    let mut pairs = 0;
    while pairs < 500 {
        let u = pool::random_sequence(&mut rng, 8, 6);
        let v = pool::random_sequence(&mut rng, 8, 6);
        if u == v {
            continue;
        }
        let g = pool::random_ordered_gammas(&mut rng, 24);
        let report = metrics::check_equivalence_bounds(&u, &v, &g).unwrap();
        ensure(report.lower_ok && report.upper_ok, || {
            format!("U={u} V={v} g={:?}", g)
        })?;

        let gamma = g.gamma0().clone();
        let uniform = GammaParams::uniform(gamma.clone()).unwrap();
        let c = MetricBoundConstants::new(&uniform);
        let expected = q(2, 1) * &gamma * &gamma / (Scalar::one() - &gamma * &gamma);
        let tight = metrics::check_equivalence_bounds(&u, &v, &uniform).unwrap();
        ensure(
            c.c0_sq == expected && c.c1_sq == expected && tight.tau_sq == &expected * &tight.rho_sq,
            || format!("bounds not equalities at gamma = {gamma} for U={u} V={v}"),
        )?;
        pairs += 1;
    }
    Ok("500 pairs, plus equal-gamma tightness".into())
}

/// Every prefix of length ≤ 10, n = 10: coherent and 2-adic ball membership coincide.
fn ball_correspondence() -> Outcome {
    let reports = metrics::check_all_ball_correspondences(10).map_err(|e| e.to_string())?;
    ensure(reports.len() == (1 << 11) - 1, || {
        format!("{} prefixes", reports.len())
    })?;
    let mut checks = 0;
    for r in &reports {
        ensure(r.checked == 2 << 10, || {
            format!("prefix {:?} checked {}", r.prefix, r.checked)
        })?;
        ensure(r.passed(), || r.counterexample.clone().unwrap_or_default())?;
        let expected_members = 1usize << (11 - r.prefix.len());
        ensure(r.coherent_members == expected_members, || {
            format!("prefix {:?} has {} members", r.prefix, r.coherent_members)
        })?;
        checks += r.checked;
    }
    Ok(format!(
        "{} prefixes, {checks} memberships, 0 counterexamples",
        reports.len()
    ))
}

/// γ0 = γ1 = γ: ρ = γ^k exactly, all k ≤ 32, 100 pairs.
fn uniform_gamma_special_case() -> Outcome {
    let mut rng = rng(9);
    for _ in 0..100 {
        let gamma = pool::random_unit_rational(&mut rng, 24);
        let g = GammaParams::uniform(gamma.clone()).unwrap();
        let u = pool::random_sequence(&mut rng, 8, 6);
        for k in 0..=32 {
            // V agrees with U on exactly the first k digits
            let mut pre: Word = u.prefix(k);
            pre.push(u.digit_at(k + 1).unwrap().flip());
            let v = IndexSequence::new(pre, pool::random_word(&mut rng, 1, 4)).unwrap();
            ensure(
                metrics::common_prefix(&u, &v) == CommonPrefix::Length(k),
                || format!("U={u} V={v}"),
            )?;
            ensure(
                metrics::rho(&u, &v, &g) == num_traits::pow(gamma.clone(), k),
                || format!("U={u} V={v} k={k}"),
            )?;
        }
    }
    Ok("100 pairs x 33 prefix lengths".into())
}

/// `verify --seed 7` twice gives byte-identical JSON.
fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fockadic"))
            .args(["verify", "--seed", "7", "--output", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(first.status.code() == Some(0), || {
        format!("exit status {:?}", first.status.code())
    })?;
    ensure(!first.stdout.is_empty(), || "empty output".into())?;
    ensure(first.stdout == second.stdout, || "outputs differ".into())?;
    let parsed: serde_json::Value =
        serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    ensure(parsed["pass"] == serde_json::Value::Bool(true), || {
        "pass flag not true".into()
    })?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 commutation relations", commutation_relations),
        ("AC2 vacuum condition", vacuum_condition),
        ("AC3 norm product formula", norm_product_formula),
        ("AC4 eigenvector relation", eigenvector_relation),
        ("AC5 strong triangle inequality", strong_triangle_inequality),
        ("AC6 closed-form tau vs oracle", closed_tau_matches_oracle),
        ("AC7 equivalence bounds", equivalence_bounds),
        ("AC8 ball correspondence", ball_correspondence),
        ("AC9 uniform-gamma special case", uniform_gamma_special_case),
        ("AC10 determinism", determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({elapsed:.2}s)"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail} ({elapsed:.2}s)");
            }
        }
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}

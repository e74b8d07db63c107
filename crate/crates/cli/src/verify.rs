//! The `verify` property suite.
//!
//! Every check draws from one ChaCha8 stream seeded by `--seed`, in a fixed
//! order, so identical configurations give identical reports.

use std::fmt::Write as _;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use fockadic::coherent::GammaParams;
use fockadic::metrics::{self, CommonPrefix, MetricBoundConstants};
use fockadic::pool;
use fockadic::{FockVector, IndexSequence, Letter, PadicInt, Scalar, Valuation, Word};

use crate::DomainError;

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub depth: usize,
    pub precision: usize,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            pass: true,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.pass {
            self.pass = false;
            self.counterexample = Some(describe());
        }
    }
}

const MAX_PREPERIOD: usize = 8;
const MAX_PERIOD: usize = 6;
const MAX_DEN: i64 = 20;

pub fn run_suite(config: &SuiteConfig) -> Result<(Vec<Value>, bool, String), DomainError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let checks = vec![
        commutation_relations(&mut rng),
        vacuum_condition(),
        norm_product_formula(&mut rng, config.depth),
        eigen_residual_identity(&mut rng, config.depth),
        ultrametric_sweep(&mut rng),
        tau_oracle_sandwich(&mut rng, config.depth),
        equivalence_bounds_sweep(&mut rng),
        uniform_gamma_special_case(&mut rng, config.depth),
        valuation_matches_common_prefix(&mut rng, config.precision),
        ball_correspondence(config.n)?,
    ];
    let pass = checks.iter().all(|c| c.pass);
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(
            text,
            "{} {} ({} cases)",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.cases
        );
        if let Some(ce) = &c.counterexample {
            let _ = writeln!(text, "    counterexample: {ce}");
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if pass {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    Ok((checks.iter().map(|c| json!(c)).collect(), pass, text))
}

fn commutation_relations(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut check = CheckResult::new("commutation_relations");
    for _ in 0..1000 {
        let v = pool::random_fock_vector(rng, 16, 10);
        for i in Letter::ALL {
            for j in Letter::ALL {
                let lhs = v.create(j).annihilate(i);
                let rhs = if i == j {
                    v.clone()
                } else {
                    FockVector::zero()
                };
                check.record(lhs == rhs, || {
                    format!("A_{} A+_{} v != delta v for v = {v}", i.index(), j.index())
                });
            }
        }
    }
    check
}

fn vacuum_condition() -> CheckResult {
    let mut check = CheckResult::new("vacuum_condition");
    for i in Letter::ALL {
        check.record(FockVector::vacuum().annihilate(i).is_zero(), || {
            format!("A_{} Omega != 0", i.index())
        });
    }
    check
}

fn norm_product_formula(rng: &mut ChaCha8Rng, depth: usize) -> CheckResult {
    let mut check = CheckResult::new("norm_product_formula");
    for _ in 0..100 {
        let s = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let g = pool::random_gammas(rng, MAX_DEN);
        let t = s.coherent_truncate(&g, depth);
        for k in 0..=depth {
            let level = t.level_term(k).expect("k within depth");
            let product = (1..=k)
                .map(|i| g.gamma(s.digit_at(i).expect("1-based")).clone())
                .fold(Scalar::one(), |acc, x| acc * &x * &x);
            check.record(level.norm_squared() == product, || {
                format!("||X_{k}||^2 mismatch for U={s}")
            });
        }
    }
    check
}

fn eigen_residual_identity(rng: &mut ChaCha8Rng, depth: usize) -> CheckResult {
    let mut check = CheckResult::new("eigen_residual_identity");
    for _ in 0..100 {
        let s = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let g = pool::random_gammas(rng, MAX_DEN);
        let top = s.level_norm(&g, depth);
        let residual = s.coherent_truncate(&g, depth).eigen_residual();
        check.record(residual == &top * &top, || {
            format!("residual != ||X_K||^2 for U={s}")
        });
    }
    // γ ≤ 1/2 forces the residual below 4^{-K}
    let limit = num_traits::pow(Scalar::new(1.into(), 4.into()), depth);
    for _ in 0..20 {
        let s = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let half = |x: Scalar| x / Scalar::from_integer(2.into());
        let g = GammaParams::new(
            half(pool::random_unit_rational(rng, MAX_DEN)),
            half(pool::random_unit_rational(rng, MAX_DEN)),
        )
        .expect("values lie in (0, 1/2)");
        let residual = s.coherent_truncate(&g, depth).eigen_residual();
        check.record(residual <= limit, || {
            format!("residual above 4^-K for U={s}")
        });
    }
    check
}

fn ultrametric_sweep(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut check = CheckResult::new("ultrametric_sweep");
    let g = pool::random_gammas(rng, MAX_DEN);
    let seqs: Vec<IndexSequence> = (0..50)
        .map(|_| pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD))
        .collect();
    let rho: Vec<Vec<Scalar>> = seqs
        .iter()
        .map(|u| seqs.iter().map(|v| metrics::rho(u, v, &g)).collect())
        .collect();
    for a in 0..seqs.len() {
        for b in 0..seqs.len() {
            check.record(rho[a][b] == rho[b][a], || {
                format!("rho asymmetric on {} {}", seqs[a], seqs[b])
            });
            for c in 0..seqs.len() {
                let ok = rho[a][b] <= std::cmp::max(&rho[a][c], &rho[b][c]).clone();
                check.record(ok, || {
                    format!(
                        "strong triangle fails for U={} V={} W={}",
                        seqs[a], seqs[b], seqs[c]
                    )
                });
            }
        }
    }
    check
}

fn tau_oracle_sandwich(rng: &mut ChaCha8Rng, depth: usize) -> CheckResult {
    let mut check = CheckResult::new("tau_oracle_sandwich");
    let half = GammaParams::uniform(Scalar::new(1.into(), 2.into())).expect("1/2 is in range");
    let worked = metrics::tau_squared_closed(
        &IndexSequence::constant(Letter::Zero),
        &IndexSequence::constant(Letter::One),
        &half,
    );
    check.record(worked == Ok(Scalar::new(2.into(), 3.into())), || {
        "tau^2 for 0^inf vs 1^inf at gamma = 1/2 is not 2/3".to_string()
    });
    let mut drawn = 0;
    while drawn < 200 {
        let u = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let v = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let g = pool::random_gammas(rng, MAX_DEN);
        let Ok(closed) = metrics::tau_squared_closed(&u, &v, &g) else {
            continue;
        };
        drawn += 1;
        let numeric = metrics::tau_squared_numeric(&u, &v, &g, depth);
        check.record(numeric.brackets(&closed), || {
            format!("oracle bracket fails for U={u} V={v}")
        });
    }
    check
}

fn equivalence_bounds_sweep(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut check = CheckResult::new("equivalence_bounds_sweep");
    let mut drawn = 0;
    while drawn < 500 {
        let u = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let v = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let g = pool::random_ordered_gammas(rng, MAX_DEN);
        let Ok(report) = metrics::check_equivalence_bounds(&u, &v, &g) else {
            continue;
        };
        drawn += 1;
        check.record(report.passed(), || format!("bounds fail for U={u} V={v}"));
        // equal weights make both bounds equalities
        let uniform = GammaParams::uniform(g.gamma0().clone()).expect("in range");
        let tight = metrics::check_equivalence_bounds(&u, &v, &uniform).expect("distinct");
        let c = MetricBoundConstants::new(&uniform);
        check.record(
            c.c0_sq == c.c1_sq && tight.tau_sq == &c.c0_sq * &tight.rho_sq,
            || format!("bounds not tight at equal gammas for U={u} V={v}"),
        );
    }
    check
}

/// V agreeing with U on exactly the first k digits.
fn diverge_at<R: Rng>(rng: &mut R, u: &IndexSequence, k: usize) -> IndexSequence {
    let mut pre = u.prefix(k);
    pre.push(u.digit_at(k + 1).expect("1-based").flip());
    for l in pool::random_word(rng, 0, 4).letters() {
        pre.push(*l);
    }
    IndexSequence::new(pre, pool::random_word(rng, 1, 4)).expect("nonempty period")
}

fn uniform_gamma_special_case(rng: &mut ChaCha8Rng, depth: usize) -> CheckResult {
    let mut check = CheckResult::new("uniform_gamma_special_case");
    for _ in 0..100 {
        let gamma = pool::random_unit_rational(rng, MAX_DEN);
        let g = GammaParams::uniform(gamma.clone()).expect("in range");
        let u = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        for k in 0..=depth {
            let v = diverge_at(rng, &u, k);
            let ok = metrics::common_prefix(&u, &v) == CommonPrefix::Length(k)
                && metrics::rho(&u, &v, &g) == num_traits::pow(gamma.clone(), k);
            check.record(ok, || format!("rho != gamma^{k} for U={u} V={v}"));
        }
    }
    check
}

fn valuation_matches_common_prefix(rng: &mut ChaCha8Rng, precision: usize) -> CheckResult {
    let mut check = CheckResult::new("valuation_matches_common_prefix");
    for _ in 0..200 {
        let u = pool::random_sequence(rng, MAX_PREPERIOD, MAX_PERIOD);
        let k = rng.gen_range(0..precision + 4);
        let v = diverge_at(rng, &u, k);
        let a = PadicInt::from_sequence(&u, precision).expect("positive precision");
        let b = PadicInt::from_sequence(&v, precision).expect("positive precision");
        let expected = if k < precision {
            Valuation::Finite(k)
        } else {
            Valuation::Infinite
        };
        check.record(a.psub(&b).valuation() == expected, || {
            format!("valuation of U-V at precision {precision} is not {expected} for U={u} V={v}")
        });
    }
    check
}

fn ball_correspondence(n: usize) -> Result<CheckResult, DomainError> {
    let mut check = CheckResult::new("ball_correspondence");
    for report in metrics::check_all_ball_correspondences(n)? {
        check.cases += report.checked - 1;
        check.record(report.passed(), || {
            format!(
                "prefix {:?}: {}",
                report.prefix,
                report.counterexample.clone().unwrap_or_default()
            )
        });
    }
    // whole space ↔ whole ring
    let whole = metrics::check_ball_correspondence(&Word::empty(), n)?;
    check.record(
        whole.coherent_members == whole.checked && whole.padic_members == whole.checked,
        || "radius-1 ball is not everything".to_string(),
    );
    Ok(check)
}

//! Metrics on free coherent states.
//!
//! For sequences U ≠ V agreeing on exactly their first k digits:
//!
//! - ρ(X_U, X_V) = ‖X_k‖ = Π_{i≤k} γ_{u_i}, an ultrametric;
//! - τ(X_U, X_V)² = ‖X_k‖² Σ_{i>k} (Π_{j=k+1}^{i} γ_{u_j}² + Π_{j=k+1}^{i} γ_{v_j}²),
//!   the Hilbert distance, evaluated exactly by summing the eventually
//!   periodic tails as geometric series;
//! - c₀²ρ² ≤ τ² ≤ c₁²ρ² with c_i² = 2γ_i²/(1 − γ_i²), γ₀ ≤ γ₁.
//!
//! Everything is compared in squared form so no square root is ever taken.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coherent::{GammaParams, IndexSequence};
use crate::error::{Error, Result};
use crate::fock::{Scalar, Word};
use crate::padic::{PadicBall, PadicInt};
use crate::rational::RationalJson;

/// Largest enumeration length accepted by [`check_ball_correspondence`].
pub const MAX_ENUMERATION_LENGTH: usize = 12;

/// Number of leading digits two sequences share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CommonPrefix {
    /// u_i = v_i for i ≤ k and u_{k+1} ≠ v_{k+1}.
    Length(usize),
    Identical,
}

pub fn common_prefix(u: &IndexSequence, v: &IndexSequence) -> CommonPrefix {
    if u == v {
        return CommonPrefix::Identical;
    }
    // past both preperiods the digits repeat with period lcm(|p_u|, |p_v|)
    let horizon =
        u.preperiod().len().max(v.preperiod().len()) + u.period().len().lcm(&v.period().len());
    let k = (0..horizon)
        .find(|&i| u.digit0(i) != v.digit0(i))
        .expect("distinct canonical sequences differ before the horizon");
    CommonPrefix::Length(k)
}

/// ρ(X_U, X_V); zero for identical sequences.
pub fn rho(u: &IndexSequence, v: &IndexSequence, gammas: &GammaParams) -> Scalar {
    match common_prefix(u, v) {
        CommonPrefix::Identical => Scalar::zero(),
        CommonPrefix::Length(k) => u.level_norm(gammas, k),
    }
}

/// Σ_{i≥1} Π_{j=1}^{i} γ_{s_j}², in closed form.
pub fn tail_sum_squared(s: &IndexSequence, gammas: &GammaParams) -> Scalar {
    let sq = |l| {
        let g = gammas.gamma(l);
        g * g
    };
    let mut running = Scalar::one();
    let mut pre_sum = Scalar::zero();
    for &l in s.preperiod().letters() {
        running *= sq(l);
        pre_sum += &running;
    }
    let mut cycle = Scalar::one();
    let mut cycle_sum = Scalar::zero();
    for &l in s.period().letters() {
        cycle *= sq(l);
        cycle_sum += &cycle;
    }
    // cycle = Π over one period of γ² < 1
    pre_sum + running * cycle_sum / (Scalar::one() - cycle)
}

/// τ(X_U, X_V)² as an exact rational.
pub fn tau_squared_closed(
    u: &IndexSequence,
    v: &IndexSequence,
    gammas: &GammaParams,
) -> Result<Scalar> {
    let k = match common_prefix(u, v) {
        CommonPrefix::Identical => return Err(Error::IdenticalSequences),
        CommonPrefix::Length(k) => k,
    };
    let head = u.level_norm(gammas, k);
    let tails = tail_sum_squared(&u.shift(k), gammas) + tail_sum_squared(&v.shift(k), gammas);
    Ok(&head * &head * tails)
}

/// ‖X_U^{(K)} − X_V^{(K)}‖² and a bound on how far it can sit below τ².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericTau {
    pub value: Scalar,
    pub tail_bound: Scalar,
}

impl NumericTau {
    /// value ≤ τ² ≤ value + tail_bound.
    pub fn brackets(&self, tau_squared: &Scalar) -> bool {
        let upper = &self.value + &self.tail_bound;
        &self.value <= tau_squared && tau_squared <= &upper
    }
}

/// τ² by direct subtraction of truncated coherent states. The levels above
/// K contribute at most 2 Σ_{i>K} M^{2i} = 2M^{2(K+1)}/(1 − M²), M = max γ.
pub fn tau_squared_numeric(
    u: &IndexSequence,
    v: &IndexSequence,
    gammas: &GammaParams,
    depth: usize,
) -> NumericTau {
    let xu = u.coherent_truncate(gammas, depth);
    let xv = v.coherent_truncate(gammas, depth);
    let value = xu.vector().sub(xv.vector()).norm_squared();
    let m2 = gammas.max() * gammas.max();
    let tail_bound = Scalar::from_integer(2.into()) * num_traits::pow(m2.clone(), depth + 1)
        / (Scalar::one() - m2);
    NumericTau { value, tail_bound }
}

/// Squared constants of the two-sided bound, with γ₀ ≤ γ₁ after swapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricBoundConstants {
    pub c0_sq: Scalar,
    pub c1_sq: Scalar,
}

impl MetricBoundConstants {
    pub fn new(gammas: &GammaParams) -> Self {
        let c_sq = |g: &Scalar| {
            let g2 = g * g;
            Scalar::from_integer(2.into()) * &g2 / (Scalar::one() - &g2)
        };
        Self {
            c0_sq: c_sq(gammas.min()),
            c1_sq: c_sq(gammas.max()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub rho_sq: Scalar,
    pub tau_sq: Scalar,
    pub constants: MetricBoundConstants,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Checks c₀²ρ² ≤ τ² ≤ c₁²ρ².
pub fn check_equivalence_bounds(
    u: &IndexSequence,
    v: &IndexSequence,
    gammas: &GammaParams,
) -> Result<EquivalenceReport> {
    let tau_sq = tau_squared_closed(u, v, gammas)?;
    let r = rho(u, v, gammas);
    let rho_sq = &r * &r;
    let constants = MetricBoundConstants::new(gammas);
    let lower_ok = &constants.c0_sq * &rho_sq <= tau_sq;
    let upper_ok = tau_sq <= &constants.c1_sq * &rho_sq;
    Ok(EquivalenceReport {
        rho_sq,
        tau_sq,
        constants,
        lower_ok,
        upper_ok,
    })
}

/// JSON form of the metric comparison for one pair of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub rho_sq: RationalJson,
    pub tau_sq_closed: RationalJson,
    pub tau_sq_numeric: RationalJson,
    pub tail_bound: RationalJson,
    pub c0_sq: RationalJson,
    pub c1_sq: RationalJson,
    pub lower_ok: bool,
    pub upper_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok && self.counterexample.is_none()
    }
}

/// Full metric comparison: closed-form τ against the truncation oracle at
/// `depth`, and the equivalence bounds.
pub fn metric_report(
    u: &IndexSequence,
    v: &IndexSequence,
    gammas: &GammaParams,
    depth: usize,
) -> Result<MetricReport> {
    let eq = check_equivalence_bounds(u, v, gammas)?;
    let numeric = tau_squared_numeric(u, v, gammas, depth);
    let counterexample = (!numeric.brackets(&eq.tau_sq))
        .then(|| format!("closed-form tau^2 outside oracle bracket for U={u}, V={v}"));
    Ok(MetricReport {
        rho_sq: (&eq.rho_sq).into(),
        tau_sq_closed: (&eq.tau_sq).into(),
        tau_sq_numeric: (&numeric.value).into(),
        tail_bound: (&numeric.tail_bound).into(),
        c0_sq: (&eq.constants.c0_sq).into(),
        c1_sq: (&eq.constants.c1_sq).into(),
        lower_ok: eq.lower_ok,
        upper_ok: eq.upper_ok,
        counterexample,
    })
}

/// Outcome of comparing one coherent ball with its 2-adic image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub prefix: String,
    pub n: usize,
    pub checked: usize,
    pub coherent_members: usize,
    pub padic_members: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl BallReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// All sequences w·0^∞ and w·1^∞ with |w| = n.
pub fn enumerate_sequences(n: usize) -> Vec<IndexSequence> {
    Word::all_of_length(n)
        .flat_map(|w| {
            crate::fock::Letter::ALL.map(|tail| {
                IndexSequence::new(w.clone(), Word::from(vec![tail])).expect("nonempty period")
            })
        })
        .collect()
}

/// Compares membership in the coherent ball B_{prefix,k} (first k digits
/// equal `prefix`) with membership of the 2-adic image in the closed ball of
/// radius 2^{−k} around the zero-extended prefix, over every sequence from
/// [`enumerate_sequences`]`(n)`.
pub fn check_ball_correspondence(prefix: &Word, n: usize) -> Result<BallReport> {
    let images = two_adic_images(check_enumeration(prefix.len(), n)?)?;
    check_ball_correspondence_over(prefix, n, &images)
}

/// [`check_ball_correspondence`] for every prefix of length ≤ n, in
/// length-then-lexicographic order.
pub fn check_all_ball_correspondences(n: usize) -> Result<Vec<BallReport>> {
    let images = two_adic_images(check_enumeration(0, n)?)?;
    (0..=n)
        .flat_map(Word::all_of_length)
        .map(|prefix| check_ball_correspondence_over(&prefix, n, &images))
        .collect()
}

/// Enumerated sequences paired with their images at precision n + 1.
fn two_adic_images(n: usize) -> Result<Vec<(IndexSequence, PadicInt)>> {
    enumerate_sequences(n)
        .into_iter()
        .map(|u| {
            let x = PadicInt::from_sequence(&u, n + 1)?;
            Ok((u, x))
        })
        .collect()
}

fn check_enumeration(k: usize, n: usize) -> Result<usize> {
    if k > n || n > MAX_ENUMERATION_LENGTH {
        return Err(Error::EnumerationLength {
            n,
            min: k,
            max: MAX_ENUMERATION_LENGTH,
        });
    }
    Ok(n)
}

fn check_ball_correspondence_over(
    prefix: &Word,
    n: usize,
    images: &[(IndexSequence, PadicInt)],
) -> Result<BallReport> {
    let k = prefix.len();
    let precision = n + 1;
    let center = PadicInt::from_sequence(&IndexSequence::zero_extended(prefix), precision)?;
    let ball = PadicBall::new(center, k)?;
    let mut report = BallReport {
        prefix: prefix.to_string(),
        n,
        checked: 0,
        coherent_members: 0,
        padic_members: 0,
        counterexample: None,
    };
    for (u, x) in images {
        let coherent = (0..k).all(|i| u.digit0(i) == prefix.letters()[i]);
        let padic = ball.contains(x)?;
        report.checked += 1;
        report.coherent_members += usize::from(coherent);
        report.padic_members += usize::from(padic);
        if coherent != padic && report.counterexample.is_none() {
            report.counterexample = Some(format!(
                "U={u}: coherent ball membership {coherent}, 2-adic ball membership {padic}"
            ));
        }
    }
    Ok(report)
}

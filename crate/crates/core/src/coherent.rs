//! Index sequences U = u₁u₂u₃… and truncated free coherent states.
//!
//! A coherent state is the series X_U = Σ_k X_k with X₀ = Ω and
//! X_k = γ_{u_k} A†_{u_k} X_{k−1}. Since creation prepends, the level-k term
//! is the single word u_k…u₁ with amplitude Π_{i≤k} γ_{u_i}, and the
//! annihilation operator γ₀⁻¹A₀ + γ₁⁻¹A₁ maps X_k back onto X_{k−1}.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{FockVector, Letter, Scalar, Word};
use crate::rational::{format_rational, parse_rational};

/// Default truncation depth K.
pub const DEFAULT_DEPTH: usize = 32;

/// The pair of weights (γ₀, γ₁), each strictly between 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaParams {
    gamma0: Scalar,
    gamma1: Scalar,
}

impl GammaParams {
    pub fn new(gamma0: Scalar, gamma1: Scalar) -> Result<Self> {
        for g in [&gamma0, &gamma1] {
            if *g <= Scalar::zero() || *g >= Scalar::one() {
                return Err(Error::GammaOutOfRange(format_rational(g)));
            }
        }
        Ok(Self { gamma0, gamma1 })
    }

    /// Both weights equal to `gamma`.
    pub fn uniform(gamma: Scalar) -> Result<Self> {
        Self::new(gamma.clone(), gamma)
    }

    pub fn parse(gamma0: &str, gamma1: &str) -> Result<Self> {
        Self::new(parse_rational(gamma0)?, parse_rational(gamma1)?)
    }

    pub fn gamma0(&self) -> &Scalar {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &Scalar {
        &self.gamma1
    }

    pub fn gamma(&self, letter: Letter) -> &Scalar {
        match letter {
            Letter::Zero => &self.gamma0,
            Letter::One => &self.gamma1,
        }
    }

    pub fn max(&self) -> &Scalar {
        std::cmp::max(&self.gamma0, &self.gamma1)
    }

    pub fn min(&self) -> &Scalar {
        std::cmp::min(&self.gamma0, &self.gamma1)
    }
}

/// An eventually periodic infinite binary sequence, stored canonically:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSequence {
    preperiod: Word,
    period: Word,
}

impl IndexSequence {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut pre = preperiod.letters().to_vec();
        let mut per = primitive_root(period.letters());
        // fold the preperiod into the period while its tail matches the period's tail
        while let Some(&last) = pre.last() {
            if last != *per.last().expect("period is nonempty") {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(Self {
            preperiod: Word::from(pre),
            period: Word::from(per),
        })
    }

    /// The constant sequence `letter, letter, …`.
    pub fn constant(letter: Letter) -> Self {
        Self {
            preperiod: Word::empty(),
            period: Word::from(vec![letter]),
        }
    }

    /// `word` followed by zeros.
    pub fn zero_extended(word: &Word) -> Self {
        Self::new(word.clone(), Word::from(vec![Letter::Zero])).expect("period is nonempty")
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// u_n, 1-based.
    pub fn digit_at(&self, n: usize) -> Result<Letter> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(self.digit0(n - 1))
    }

    pub(crate) fn digit0(&self, index: usize) -> Letter {
        let pre = self.preperiod.len();
        if index < pre {
            self.preperiod.letters()[index]
        } else {
            self.period.letters()[(index - pre) % self.period.len()]
        }
    }

    /// u₁…u_k.
    pub fn prefix(&self, k: usize) -> Word {
        Word::from_letters((0..k).map(|i| self.digit0(i)))
    }

    /// u_{k+1} u_{k+2} …
    pub fn shift(&self, k: usize) -> IndexSequence {
        let pre = self.preperiod.letters();
        if k <= pre.len() {
            Self::new(Word::from(pre[k..].to_vec()), self.period.clone())
                .expect("period is nonempty")
        } else {
            let mut per = self.period.letters().to_vec();
            let by = (k - pre.len()) % per.len();
            per.rotate_left(by);
            Self {
                preperiod: Word::empty(),
                period: Word::from(per),
            }
        }
    }

    /// Π_{i=1}^{k} γ_{u_i}; the empty product is 1.
    pub fn level_norm(&self, gammas: &GammaParams, k: usize) -> Scalar {
        (0..k).fold(Scalar::one(), |acc, i| acc * gammas.gamma(self.digit0(i)))
    }

    /// Word carrying the level-k term X_k: u_k…u₁.
    pub fn level_word(&self, k: usize) -> Word {
        self.prefix(k).reversed()
    }

    /// Partial sum X_U^{(K)} = Σ_{k=0}^{K} X_k, built by the recursion
    /// X_k = γ_{u_k} A†_{u_k} X_{k−1}.
    pub fn coherent_truncate(&self, gammas: &GammaParams, depth: usize) -> CoherentTruncation {
        let mut level = FockVector::vacuum();
        let mut vector = level.clone();
        for k in 1..=depth {
            let letter = self.digit0(k - 1);
            level = level.create(letter).scale(gammas.gamma(letter));
            vector = vector.add(&level);
        }
        CoherentTruncation {
            sequence: self.clone(),
            gammas: gammas.clone(),
            depth,
            vector,
        }
    }
}

/// Smallest d with `period` equal to its first d letters repeated.
fn primitive_root(period: &[Letter]) -> Vec<Letter> {
    let n = period.len();
    (1..=n)
        .filter(|&d| n.is_multiple_of(d))
        .find(|&d| (d..n).all(|i| period[i] == period[i - d]))
        .map(|d| period[..d].to_vec())
        .unwrap_or_else(|| period.to_vec())
}

impl FromStr for IndexSequence {
    type Err = Error;

    /// `"preperiod|period"`, e.g. `"1|0"` for 1,0,0,… and `"|10"` for 1,0,1,0,….
    fn from_str(s: &str) -> Result<Self> {
        let (pre, per) = s
            .split_once('|')
            .ok_or_else(|| Error::MalformedSequence(s.to_string()))?;
        Self::new(pre.parse()?, per.parse()?)
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.preperiod, self.period)
    }
}

/// The exact partial sum X_U^{(K)} together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentTruncation {
    sequence: IndexSequence,
    gammas: GammaParams,
    depth: usize,
    vector: FockVector,
}

impl CoherentTruncation {
    pub fn sequence(&self) -> &IndexSequence {
        &self.sequence
    }

    pub fn gammas(&self) -> &GammaParams {
        &self.gammas
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vector(&self) -> &FockVector {
        &self.vector
    }

    /// X_k as a one-term vector, for k ≤ depth.
    pub fn level_term(&self, k: usize) -> Option<FockVector> {
        if k > self.depth {
            return None;
        }
        let word = self.sequence.level_word(k);
        let amplitude = self.vector.amplitude(&word);
        Some(FockVector::single(word, amplitude))
    }

    /// ‖L X^{(K)} − X^{(K)}‖² for L = γ₀⁻¹A₀ + γ₁⁻¹A₁. Equals ‖X_K‖².
    pub fn eigen_residual(&self) -> Scalar {
        let image = apply_eigen_operator(&self.gammas, &self.vector);
        image.sub(&self.vector).norm_squared()
    }
}

/// γ₀⁻¹A₀ v + γ₁⁻¹A₁ v.
pub fn apply_eigen_operator(gammas: &GammaParams, v: &FockVector) -> FockVector {
    Letter::ALL
        .iter()
        .map(|&l| v.annihilate(l).scale(&gammas.gamma(l).recip()))
        .fold(FockVector::zero(), |acc, x| acc.add(&x))
}

//! Directional differential operators `D_v^γ F = (∇F - γF)ᵀv` and difference
//! operators `Δ_{tv}^γ F(z) = F(z + tv) - exp(γᵀtv) F(z)`, acting either
//! symbolically on exponential sums or on sampled grids.

use std::collections::BTreeSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::expspace::{ExponentialSum, FrequencyVector, GridSamples, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("direction vector must be non-zero and finite")]
    ZeroDirection,
    #[error("integer step must be non-zero")]
    ZeroStep,
    #[error("annihilator chain must have at least one factor")]
    EmptyChain,
    #[error("window {width}×{height} is too small for step ({dx}, {dy})")]
    EmptyWindow { width: usize, height: usize, dx: i64, dy: i64 },
    #[error("differential factors cannot be applied to grid samples")]
    DifferentialOnGrid,
    #[error("axis must be (1, 0) or (0, 1)")]
    NotAnAxis,
}

/// A unit direction, remembering the magnitude of the vector it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    unit: [f64; 2],
    magnitude: f64,
}

impl Direction {
    pub fn new(v: [f64; 2]) -> Result<Self, OperatorError> {
        let magnitude = v[0].hypot(v[1]);
        if !(magnitude > 0.0 && magnitude.is_finite()) {
            return Err(OperatorError::ZeroDirection);
        }
        Ok(Direction { unit: [v[0] / magnitude, v[1] / magnitude], magnitude })
    }

    pub fn unit(&self) -> [f64; 2] {
        self.unit
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// `v⊥ = (-v₂, v₁)`.
    pub fn perp(&self) -> Direction {
        Direction { unit: [-self.unit[1], self.unit[0]], magnitude: self.magnitude }
    }
}

/// A non-zero lattice step `tv ∈ ℤ² \ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerStep([i64; 2]);

impl IntegerStep {
    pub fn new(dx: i64, dy: i64) -> Result<Self, OperatorError> {
        if dx == 0 && dy == 0 {
            return Err(OperatorError::ZeroStep);
        }
        Ok(IntegerStep([dx, dy]))
    }

    pub fn vector(self) -> [i64; 2] {
        self.0
    }

    /// `t = |tv|`.
    pub fn length(self) -> f64 {
        (self.0[0] as f64).hypot(self.0[1] as f64)
    }

    pub fn direction(self) -> Direction {
        Direction::new([self.0[0] as f64, self.0[1] as f64]).expect("non-zero step")
    }
}

/// Coordinate axis `e ∈ {(1,0), (0,1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn unit(self) -> [i64; 2] {
        match self {
            Axis::X => [1, 0],
            Axis::Y => [0, 1],
        }
    }

    pub fn step(self) -> IntegerStep {
        let [dx, dy] = self.unit();
        IntegerStep([dx, dy])
    }

    pub fn from_unit(e: [i64; 2]) -> Result<Self, OperatorError> {
        match e {
            [1, 0] => Ok(Axis::X),
            [0, 1] => Ok(Axis::Y),
            _ => Err(OperatorError::NotAnAxis),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// Multiplier `exp(μᵀs) - exp(γᵀs)` that `Δ_s^γ` applies to `exp(μᵀz)`.
pub fn difference_factor(mu: FrequencyVector, gamma: FrequencyVector, step: IntegerStep) -> Complex64 {
    mu.dot_int(step.0).exp() - gamma.dot_int(step.0).exp()
}

/// Multiplier `(μ - γ)ᵀv` that `D_v^γ` applies to `exp(μᵀz)`.
pub fn differential_factor(mu: FrequencyVector, gamma: FrequencyVector, v: [f64; 2]) -> Complex64 {
    mu.dot(v) - gamma.dot(v)
}

/// `D_v^γ F` for a unit direction.
pub fn diff_apply(gamma: FrequencyVector, dir: &Direction, f: &ExponentialSum) -> ExponentialSum {
    diff_apply_vector(gamma, dir.unit(), f)
}

/// `D_w^γ F` for an arbitrary (not necessarily unit) vector `w`.
pub fn diff_apply_vector(gamma: FrequencyVector, w: [f64; 2], f: &ExponentialSum) -> ExponentialSum {
    f.map_coeffs(|c, mu| c * differential_factor(mu, gamma, w))
}

/// `Δ_{tv}^γ F` for an integer step.
pub fn delta_apply_sum(gamma: FrequencyVector, step: IntegerStep, f: &ExponentialSum) -> ExponentialSum {
    f.map_coeffs(|c, mu| c * difference_factor(mu, gamma, step))
}

/// `Δ_{tv}^γ F` for a real step vector `tv`.
pub fn delta_apply_sum_real(gamma: FrequencyVector, tv: [f64; 2], f: &ExponentialSum) -> ExponentialSum {
    f.map_coeffs(|c, mu| c * (mu.dot(tv).exp() - gamma.dot(tv).exp()))
}

/// Weight `exp(γᵀ tv 2^{-k})` of the grid difference at level `k`.
pub fn grid_weight(gamma: FrequencyVector, step: IntegerStep, level: u32) -> Complex64 {
    (gamma.dot_int(step.0) * crate::expspace::grid_spacing(level)).exp()
}

/// Window of indices `α` for which both `α` and `α + tv` lie in `w`.
fn shrink(w: Window, step: IntegerStep) -> Result<Window, OperatorError> {
    let [dx, dy] = step.0;
    let err = OperatorError::EmptyWindow { width: w.width, height: w.height, dx, dy };
    let width = (w.width as i64) - dx.abs();
    let height = (w.height as i64) - dy.abs();
    if width <= 0 || height <= 0 {
        return Err(err);
    }
    let origin = [w.origin[0] + (-dx).max(0), w.origin[1] + (-dy).max(0)];
    Window::new(origin, width as usize, height as usize).map_err(|_| err)
}

/// `(Δ_{tv}^γ S)(α) = S(α + tv) - exp(γᵀ tv 2^{-k}) S(α)` on the shrunk window.
pub fn delta_apply_grid(gamma: FrequencyVector, step: IntegerStep, s: &GridSamples) -> Result<GridSamples, OperatorError> {
    let out = shrink(s.window(), step)?;
    let w = grid_weight(gamma, step, s.level());
    let [dx, dy] = step.0;
    Ok(GridSamples::from_fn(s.level(), out, |a| {
        let ahead = s.get([a[0] + dx, a[1] + dy]).expect("inside shrunk window");
        let here = s.get(a).expect("inside shrunk window");
        ahead - w * here
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorKind {
    Difference(IntegerStep),
    Differential(Direction),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainFactor {
    pub gamma: FrequencyVector,
    pub kind: FactorKind,
}

/// A composition of difference and/or differential factors, applied
/// left to right (factor 0 acts on the input first).
#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilatorChain {
    factors: Vec<ChainFactor>,
}

impl AnnihilatorChain {
    pub fn new(factors: Vec<ChainFactor>) -> Result<Self, OperatorError> {
        if factors.is_empty() {
            return Err(OperatorError::EmptyChain);
        }
        Ok(AnnihilatorChain { factors })
    }

    pub fn difference(factors: impl IntoIterator<Item = (FrequencyVector, IntegerStep)>) -> Result<Self, OperatorError> {
        Self::new(
            factors
                .into_iter()
                .map(|(gamma, s)| ChainFactor { gamma, kind: FactorKind::Difference(s) })
                .collect(),
        )
    }

    pub fn differential(factors: impl IntoIterator<Item = (FrequencyVector, Direction)>) -> Result<Self, OperatorError> {
        Self::new(
            factors
                .into_iter()
                .map(|(gamma, d)| ChainFactor { gamma, kind: FactorKind::Differential(d) })
                .collect(),
        )
    }

    pub fn factors(&self) -> &[ChainFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn steps(&self) -> Result<Vec<(FrequencyVector, IntegerStep)>, OperatorError> {
        self.factors
            .iter()
            .map(|f| match f.kind {
                FactorKind::Difference(s) => Ok((f.gamma, s)),
                FactorKind::Differential(_) => Err(OperatorError::DifferentialOnGrid),
            })
            .collect()
    }

    pub fn apply_sum(&self, f: &ExponentialSum) -> ExponentialSum {
        self.factors.iter().fold(f.clone(), |acc, factor| match factor.kind {
            FactorKind::Difference(s) => delta_apply_sum(factor.gamma, s, &acc),
            FactorKind::Differential(d) => diff_apply(factor.gamma, &d, &acc),
        })
    }

    pub fn apply_grid(&self, s: &GridSamples) -> Result<GridSamples, OperatorError> {
        let steps = self.steps()?;
        let mut acc = s.clone();
        for (gamma, step) in steps {
            acc = delta_apply_grid(gamma, step, &acc)?;
        }
        Ok(acc)
    }

    /// Evaluates the chain at a single output index by recursing over the
    /// factors, reading input values only through `lookup`. Returns `None`
    /// if any needed value is unavailable.
    pub fn apply_at(
        &self,
        level: u32,
        alpha: [i64; 2],
        lookup: &mut dyn FnMut([i64; 2]) -> Option<Complex64>,
    ) -> Result<Option<Complex64>, OperatorError> {
        let steps = self.steps()?;
        let weights: Vec<Complex64> = steps.iter().map(|&(g, s)| grid_weight(g, s, level)).collect();
        Ok(eval_local(&steps, &weights, alpha, lookup))
    }

    /// Offsets (relative to the output index) of every input value the chain
    /// reads: all subset sums of the steps.
    pub fn footprint(&self) -> Result<BTreeSet<[i64; 2]>, OperatorError> {
        let mut pts = BTreeSet::from([[0i64, 0i64]]);
        for (_, s) in self.steps()? {
            let [dx, dy] = s.0;
            let shifted: Vec<_> = pts.iter().map(|p| [p[0] + dx, p[1] + dy]).collect();
            pts.extend(shifted);
        }
        Ok(pts)
    }

    /// Symbolic kernel test: the chain output vanishes up to `1e-12` relative
    /// to the largest input coefficient.
    pub fn annihilates(&self, f: &ExponentialSum) -> bool {
        let out = self.apply_sum(f);
        out.max_coeff() <= ZERO_THRESHOLD * f.max_coeff()
    }

    /// `‖chain(S)‖∞ / ‖S‖∞`, or 0 for identically zero data.
    pub fn grid_residual(&self, s: &GridSamples) -> Result<f64, OperatorError> {
        let out = self.apply_grid(s)?;
        let norm = s.max_norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        Ok(out.max_norm() / norm)
    }
}

/// Relative coefficient threshold for symbolic zero tests.
pub const ZERO_THRESHOLD: f64 = 1e-12;

fn eval_local(
    steps: &[(FrequencyVector, IntegerStep)],
    weights: &[Complex64],
    alpha: [i64; 2],
    lookup: &mut dyn FnMut([i64; 2]) -> Option<Complex64>,
) -> Option<Complex64> {
    match steps.split_last() {
        None => lookup(alpha),
        Some((&(_, step), rest)) => {
            let [dx, dy] = step.0;
            let w = weights[steps.len() - 1];
            let ahead = eval_local(rest, weights, [alpha[0] + dx, alpha[1] + dy], lookup)?;
            let here = eval_local(rest, weights, alpha, lookup)?;
            Some(ahead - w * here)
        }
    }
}

/// The three-factor annihilator `Δ⁰_{extra} Δ^γ_e Δ^{-γ}_e` of the symmetric
/// space spanned by `{1, e^{±γᵀz}, e^{±γ̃ᵀz}}`.
pub fn reduced_chain_for_symmetric_set(g: FrequencyVector, axis: Axis, extra: IntegerStep) -> AnnihilatorChain {
    let e = axis.step();
    AnnihilatorChain::difference([(FrequencyVector::ZERO, extra), (g, e), (-g, e)]).expect("three factors")
}

/// Univariate four-term relation
/// `f(α-1) - (2c+1) f(α) + (2c+1) f(α+1) - f(α+2)`, evaluated at every
/// `α` with a full neighbourhood. Output index `i` corresponds to `α = i + 1`.
pub fn four_term_relation(values: &[Complex64], cosh: Complex64) -> Vec<Complex64> {
    let k = cosh * 2.0 + 1.0;
    values.windows(4).map(|w| w[0] - k * w[1] + k * w[2] - w[3]).collect()
}

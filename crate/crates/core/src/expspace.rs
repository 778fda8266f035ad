//! Exponential sums `F(z) = Σ c_ℓ exp(γ_ℓᵀ z)` over `z ∈ ℝ²`, their
//! frequencies, and samples of them on dyadic grids `2^{-k} ℤ²`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpSpaceError {
    #[error("frequency {0} is neither real nor purely imaginary with |Im| < π")]
    OutOfDomain(Complex64),
    #[error("frequency vector must be non-zero")]
    ZeroFrequency,
    #[error("frequency vector ({0}, {1}) is outside the restricted domain ℝ≥0 ∪ i(0,π)")]
    NotRestricted(Complex64, Complex64),
    #[error("duplicate frequency ({0}, {1}) in frequency set")]
    DuplicateFrequency(Complex64, Complex64),
    #[error("window must have positive width and height (got {width}×{height})")]
    EmptyWindow { width: usize, height: usize },
    #[error("grid has {got} values but window is {width}×{height}")]
    ValueCount { got: usize, width: usize, height: usize },
}

/// A scalar frequency in `ℝ ∪ i(-π, π)`.
///
/// Membership is decided with exact zero tests on the stored parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency(Complex64);

impl Frequency {
    pub const ZERO: Frequency = Frequency(Complex64::new(0.0, 0.0));

    pub fn new(value: Complex64) -> Result<Self, ExpSpaceError> {
        let real = value.im == 0.0 && value.re.is_finite();
        let imag = value.re == 0.0 && value.im.abs() < PI;
        if real || imag {
            Ok(Frequency(value))
        } else {
            Err(ExpSpaceError::OutOfDomain(value))
        }
    }

    pub fn real(x: f64) -> Result<Self, ExpSpaceError> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn imaginary(y: f64) -> Result<Self, ExpSpaceError> {
        Self::new(Complex64::new(0.0, y))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    /// Membership in `ℝ≥0 ∪ i(0, π)`.
    pub fn is_restricted(self) -> bool {
        (self.0.im == 0.0 && self.0.re >= 0.0) || (self.0.re == 0.0 && self.0.im > 0.0 && self.0.im < PI)
    }

    pub fn conj(self) -> Frequency {
        Frequency(self.0.conj())
    }
}

impl std::ops::Neg for Frequency {
    type Output = Frequency;
    fn neg(self) -> Frequency {
        Frequency(-self.0)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.re == 0.0 && self.0.im != 0.0 {
            write!(f, "{}i", self.0.im)
        } else {
            write!(f, "{}", self.0.re)
        }
    }
}

/// `γ = (γ₁, γ₂)` with both components in `ℝ ∪ i(-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyVector {
    pub g1: Frequency,
    pub g2: Frequency,
}

impl FrequencyVector {
    pub const ZERO: FrequencyVector = FrequencyVector { g1: Frequency::ZERO, g2: Frequency::ZERO };

    pub fn new(g1: Frequency, g2: Frequency) -> Self {
        FrequencyVector { g1, g2 }
    }

    pub fn from_complex(g1: Complex64, g2: Complex64) -> Result<Self, ExpSpaceError> {
        Ok(FrequencyVector { g1: Frequency::new(g1)?, g2: Frequency::new(g2)? })
    }

    pub fn real(g1: f64, g2: f64) -> Result<Self, ExpSpaceError> {
        Ok(FrequencyVector { g1: Frequency::real(g1)?, g2: Frequency::real(g2)? })
    }

    pub fn components(self) -> [Complex64; 2] {
        [self.g1.value(), self.g2.value()]
    }

    /// `γ̃ = (γ₁, -γ₂)`.
    pub fn mirror(self) -> Self {
        FrequencyVector { g1: self.g1, g2: -self.g2 }
    }

    pub fn conj(self) -> Self {
        FrequencyVector { g1: self.g1.conj(), g2: self.g2.conj() }
    }

    pub fn is_zero(self) -> bool {
        self.g1.is_zero() && self.g2.is_zero()
    }

    pub fn is_restricted(self) -> bool {
        self.g1.is_restricted() && self.g2.is_restricted()
    }

    /// `γᵀz` for a real point.
    pub fn dot(self, z: [f64; 2]) -> Complex64 {
        self.g1.value() * z[0] + self.g2.value() * z[1]
    }

    /// `γᵀs` for an integer step. Zero step components contribute nothing,
    /// so frequencies that agree on the non-zero components give bitwise
    /// equal results.
    pub fn dot_int(self, s: [i64; 2]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if s[0] != 0 {
            acc += self.g1.value() * s[0] as f64;
        }
        if s[1] != 0 {
            acc += self.g2.value() * s[1] as f64;
        }
        acc
    }
}

impl std::ops::Neg for FrequencyVector {
    type Output = FrequencyVector;
    fn neg(self) -> Self {
        FrequencyVector { g1: -self.g1, g2: -self.g2 }
    }
}

impl fmt::Display for FrequencyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g1, self.g2)
    }
}

/// An ordered set of pairwise distinct frequency vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySet {
    members: Vec<FrequencyVector>,
}

impl FrequencySet {
    pub fn new(members: Vec<FrequencyVector>) -> Result<Self, ExpSpaceError> {
        for (i, a) in members.iter().enumerate() {
            if members[..i].contains(a) {
                return Err(ExpSpaceError::DuplicateFrequency(a.g1.value(), a.g2.value()));
            }
        }
        Ok(FrequencySet { members })
    }

    /// Builds a set, silently dropping repeated members.
    pub fn dedup(candidates: impl IntoIterator<Item = FrequencyVector>) -> Self {
        let mut members: Vec<FrequencyVector> = Vec::new();
        for g in candidates {
            if !members.contains(&g) {
                members.push(g);
            }
        }
        FrequencySet { members }
    }

    pub fn members(&self) -> &[FrequencyVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &FrequencyVector) -> bool {
        self.members.contains(g)
    }
}

/// The symmetric set `{0, γ, -γ, γ̃, -γ̃}` with coincident members removed.
pub fn symmetric_set(g: FrequencyVector) -> Result<FrequencySet, ExpSpaceError> {
    if g.is_zero() {
        return Err(ExpSpaceError::ZeroFrequency);
    }
    if !g.is_restricted() {
        return Err(ExpSpaceError::NotRestricted(g.g1.value(), g.g2.value()));
    }
    let m = g.mirror();
    Ok(FrequencySet::dedup([FrequencyVector::ZERO, g, -g, m, -m]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub freq: FrequencyVector,
}

/// A finite exponential sum in canonical form: distinct frequencies, no
/// exactly-zero coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExponentialSum {
    terms: Vec<Term>,
}

impl ExponentialSum {
    pub fn zero() -> Self {
        ExponentialSum { terms: Vec::new() }
    }

    pub fn new(terms: impl IntoIterator<Item = (Complex64, FrequencyVector)>) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for (coeff, freq) in terms {
            match out.iter_mut().find(|t| t.freq == freq) {
                Some(t) => t.coeff += coeff,
                None => out.push(Term { coeff, freq }),
            }
        }
        out.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        ExponentialSum { terms: out }
    }

    pub fn single(coeff: Complex64, freq: FrequencyVector) -> Self {
        Self::new([(coeff, freq)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn canonicalize(&self) -> Self {
        Self::new(self.terms.iter().map(|t| (t.coeff, t.freq)))
    }

    pub fn frequencies(&self) -> impl Iterator<Item = FrequencyVector> + '_ {
        self.terms.iter().map(|t| t.freq)
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max)
    }

    /// Maps every term through `f(coeff, freq) -> coeff'` and re-canonicalizes.
    pub fn map_coeffs(&self, mut f: impl FnMut(Complex64, FrequencyVector) -> Complex64) -> Self {
        Self::new(self.terms.iter().map(|t| (f(t.coeff, t.freq), t.freq)))
    }

    pub fn scale(&self, a: Complex64) -> Self {
        self.map_coeffs(|c, _| c * a)
    }

    pub fn add(&self, other: &ExponentialSum) -> Self {
        Self::new(self.terms.iter().chain(other.terms.iter()).map(|t| (t.coeff, t.freq)))
    }

    /// Coefficient of the term with frequency `g`, zero if absent.
    pub fn coeff_of(&self, g: &FrequencyVector) -> Complex64 {
        self.terms.iter().find(|t| t.freq == *g).map_or(Complex64::new(0.0, 0.0), |t| t.coeff)
    }

    pub fn evaluate(&self, z: [f64; 2]) -> Complex64 {
        self.terms.iter().map(|t| t.coeff * t.freq.dot(z).exp()).sum()
    }

    pub fn sample(&self, level: u32, window: Window) -> GridSamples {
        let h = grid_spacing(level);
        let mut values = Vec::with_capacity(window.width * window.height);
        for j in 0..window.height as i64 {
            for i in 0..window.width as i64 {
                let a = [window.origin[0] + i, window.origin[1] + j];
                values.push(self.evaluate([h * a[0] as f64, h * a[1] as f64]));
            }
        }
        GridSamples { level, window, values }
    }
}

/// `2^{-k}`.
pub fn grid_spacing(level: u32) -> f64 {
    (-(level as f64)).exp2()
}

/// A rectangular block of integer indices `[origin, origin + (width, height))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub origin: [i64; 2],
    pub width: usize,
    pub height: usize,
}

impl Window {
    pub fn new(origin: [i64; 2], width: usize, height: usize) -> Result<Self, ExpSpaceError> {
        if width == 0 || height == 0 {
            return Err(ExpSpaceError::EmptyWindow { width, height });
        }
        Ok(Window { origin, width, height })
    }

    pub fn contains(&self, a: [i64; 2]) -> bool {
        let dx = a[0] - self.origin[0];
        let dy = a[1] - self.origin[1];
        dx >= 0 && dy >= 0 && (dx as usize) < self.width && (dy as usize) < self.height
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Indices in row-major order (first component fastest).
    pub fn indices(&self) -> impl Iterator<Item = [i64; 2]> + '_ {
        let (w, h) = (self.width as i64, self.height as i64);
        (0..h).flat_map(move |j| (0..w).map(move |i| [self.origin[0] + i, self.origin[1] + j]))
    }
}

/// Values on an index window of the grid `2^{-level} ℤ²`, stored row-major
/// with the first index component varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    level: u32,
    window: Window,
    values: Vec<Complex64>,
}

impl GridSamples {
    pub fn new(level: u32, window: Window, values: Vec<Complex64>) -> Result<Self, ExpSpaceError> {
        if values.len() != window.len() {
            return Err(ExpSpaceError::ValueCount { got: values.len(), width: window.width, height: window.height });
        }
        Ok(GridSamples { level, window, values })
    }

    pub fn from_fn(level: u32, window: Window, mut f: impl FnMut([i64; 2]) -> Complex64) -> Self {
        let values = window.indices().map(&mut f).collect();
        GridSamples { level, window, values }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn origin(&self) -> [i64; 2] {
        self.window.origin
    }

    pub fn width(&self) -> usize {
        self.window.width
    }

    pub fn height(&self) -> usize {
        self.window.height
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spacing(&self) -> f64 {
        grid_spacing(self.level)
    }

    pub fn get(&self, a: [i64; 2]) -> Option<Complex64> {
        if !self.window.contains(a) {
            return None;
        }
        let dx = (a[0] - self.window.origin[0]) as usize;
        let dy = (a[1] - self.window.origin[1]) as usize;
        Some(self.values[dy * self.window.width + dx])
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn indexed(&self) -> impl Iterator<Item = ([i64; 2], Complex64)> + '_ {
        self.window.indices().zip(self.values.iter().copied())
    }
}

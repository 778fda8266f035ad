//! Level-dependent interpolatory four-point refinement reproducing
//! `span{1, e^{γz}, e^{-γz}}`.
//!
//! At level `k` the scheme carries `c_k = cosh(2^{-k} γ)`. New points are
//! inserted at midpoints with the symmetric stencil `(w, u, u, w)`, whose
//! weights depend on the half-step value `c_{k+1}`.

use num_complex::Complex64;
use thiserror::Error;

use crate::detection::{detect_univariate, DetectionConfig, DetectionError};
use crate::expspace::{grid_spacing, Frequency};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubdivisionError {
    #[error("cosh parameter {0} must exceed -1")]
    InvalidParameter(Complex64),
    #[error("insertion rule is singular for half-step cosh {0}")]
    SingularRule(Complex64),
    #[error("refinement needs at least 4 values, got {0}")]
    TooShort(usize),
    #[error("parameter is for level {parameter} but data is at level {data}")]
    LevelMismatch { parameter: u32, data: u32 },
    #[error(transparent)]
    Detection(#[from] DetectionError),
}

/// `c_k = cosh(2^{-k} γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelParameter {
    pub level: u32,
    pub cosh_value: Complex64,
}

impl LevelParameter {
    pub fn new(level: u32, cosh_value: Complex64) -> Result<Self, SubdivisionError> {
        if cosh_value.re.is_nan() || cosh_value.re <= -1.0 {
            return Err(SubdivisionError::InvalidParameter(cosh_value));
        }
        Ok(LevelParameter { level, cosh_value })
    }

    pub fn from_frequency(gamma: Frequency, level: u32) -> Result<Self, SubdivisionError> {
        Self::new(level, (gamma.value() * grid_spacing(level)).cosh())
    }
}

/// `c_{k+1} = √((c_k + 1) / 2)`, the principal root.
pub fn refine_parameter(p: &LevelParameter) -> Result<LevelParameter, SubdivisionError> {
    if p.cosh_value.re.is_nan() || p.cosh_value.re <= -1.0 {
        return Err(SubdivisionError::InvalidParameter(p.cosh_value));
    }
    let next = ((p.cosh_value + 1.0) / 2.0).sqrt();
    Ok(LevelParameter { level: p.level + 1, cosh_value: next })
}

/// Symmetric insertion stencil `w·f(α-1) + u·f(α) + u·f(α+1) + w·f(α+2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InsertionRule {
    pub outer: Complex64,
    pub inner: Complex64,
}

impl InsertionRule {
    pub fn apply(&self, f: [Complex64; 4]) -> Complex64 {
        self.outer * (f[0] + f[3]) + self.inner * (f[1] + f[2])
    }
}

/// Weights exact on constants and on `e^{±γz}` at the midpoint, for
/// `c = cosh(γ h / 2)`.
///
/// With `x = γh/2` the two conditions are
///
/// ```text
/// 2w + 2u = 1
/// 2w·cosh(3x) + 2u·cosh(x) = 1
/// ```
///
/// Subtracting the first from the second and dividing by `c - 1` (using
/// `cosh 3x - 1 = (c - 1)(2c + 1)²`) gives a system that stays regular at
/// `c = 1`, where it reduces to the cubic-exact four-point rule.
pub fn synthesize_rule(c_half: Complex64) -> Result<InsertionRule, SubdivisionError> {
    if c_half.norm() <= 1e-12 || (c_half + 1.0).norm() <= 1e-12 {
        return Err(SubdivisionError::SingularRule(c_half));
    }
    let one = Complex64::new(1.0, 0.0);
    let q = c_half * 2.0 + 1.0;
    // [ 2     2 ] [w]   [1]
    // [ 2q²   2 ] [u] = [0]
    let (a11, a12, b1) = (one * 2.0, one * 2.0, one);
    let (a21, a22, b2) = (q * q * 2.0, one * 2.0, Complex64::new(0.0, 0.0));
    let det = a11 * a22 - a12 * a21;
    if det.norm() <= 1e-12 {
        return Err(SubdivisionError::SingularRule(c_half));
    }
    let outer = (b1 * a22 - a12 * b2) / det;
    let inner = (a11 * b2 - b1 * a21) / det;
    Ok(InsertionRule { outer, inner })
}

/// Samples `f(2^{-level} (origin + i))`, `i = 0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSequence {
    pub level: u32,
    pub origin: i64,
    pub values: Vec<Complex64>,
}

impl LevelSequence {
    pub fn new(level: u32, origin: i64, values: Vec<Complex64>) -> Self {
        LevelSequence { level, origin, values }
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        let h = grid_spacing(self.level);
        (0..self.values.len()).map(move |i| h * (self.origin + i as i64) as f64)
    }
}

/// One round of interpolatory refinement. Boundary values without a full
/// four-point neighbourhood are dropped, so `n` inputs give `2n - 5` outputs
/// starting at input index 1.
pub fn refine(data: &LevelSequence, p: &LevelParameter) -> Result<LevelSequence, SubdivisionError> {
    let n = data.values.len();
    if n < 4 {
        return Err(SubdivisionError::TooShort(n));
    }
    if p.level != data.level {
        return Err(SubdivisionError::LevelMismatch { parameter: p.level, data: data.level });
    }
    let half = refine_parameter(p)?;
    let rule = synthesize_rule(half.cosh_value)?;
    let v = &data.values;
    let mut out = Vec::with_capacity(2 * n - 5);
    for i in 1..n - 2 {
        out.push(v[i]);
        out.push(rule.apply([v[i - 1], v[i], v[i + 1], v[i + 2]]));
    }
    out.push(v[n - 2]);
    Ok(LevelSequence { level: data.level + 1, origin: 2 * (data.origin + 1), values: out })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementResult {
    pub data: LevelSequence,
    pub gamma: Frequency,
    /// Parameter used at each round, coarsest first.
    pub parameters: Vec<LevelParameter>,
}

/// Runs `rounds` refinements with a fixed frequency.
pub fn refine_rounds(data: &LevelSequence, gamma: Frequency, rounds: usize) -> Result<RefinementResult, SubdivisionError> {
    let mut p = LevelParameter::from_frequency(gamma, data.level)?;
    let mut cur = data.clone();
    let mut parameters = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        parameters.push(p);
        cur = refine(&cur, &p)?;
        p = refine_parameter(&p)?;
    }
    Ok(RefinementResult { data: cur, gamma, parameters })
}

/// Detects `γ` at the leftmost interior index and refines `rounds` times.
pub fn auto_refine(data: &LevelSequence, rounds: usize, config: &DetectionConfig) -> Result<RefinementResult, SubdivisionError> {
    if data.values.len() < 4 {
        return Err(SubdivisionError::TooShort(data.values.len()));
    }
    let gamma = detect_univariate(&data.values, data.level, 1, config)?;
    refine_rounds(data, gamma, rounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::four_term_relation;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sample(level: u32, origin: i64, n: usize, f: impl Fn(f64) -> f64) -> LevelSequence {
        let h = grid_spacing(level);
        LevelSequence::new(level, origin, (0..n).map(|i| c(f(h * (origin + i as i64) as f64))).collect())
    }

    fn max_rel_err(got: &LevelSequence, f: impl Fn(f64) -> f64) -> f64 {
        let scale = got.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        got.positions().zip(&got.values).map(|(z, v)| (v - c(f(z))).norm()).fold(0.0, f64::max) / scale
    }

    #[test]
    fn refine_parameter_examples() {
        let p = refine_parameter(&LevelParameter::new(0, c(1.0)).unwrap()).unwrap();
        assert_eq!(p.cosh_value, c(1.0));
        assert_eq!(p.level, 1);

        let p = refine_parameter(&LevelParameter::new(0, c(1.3374349463048446)).unwrap()).unwrap();
        assert!((p.cosh_value - c(1.0810723718384548)).norm() < 1e-15);

        let p = refine_parameter(&LevelParameter::new(2, c(-0.4161468365471424)).unwrap()).unwrap();
        assert!((p.cosh_value - c(0.5403023058681398)).norm() < 1e-15);

        assert!(LevelParameter::new(0, c(-1.0)).is_err());
        let bad = LevelParameter { level: 0, cosh_value: c(-1.5) };
        assert!(matches!(refine_parameter(&bad), Err(SubdivisionError::InvalidParameter(_))));
    }

    #[test]
    fn classical_weights_at_zero_frequency() {
        let r = synthesize_rule(c(1.0)).unwrap();
        assert_eq!(r.outer, c(-1.0 / 16.0));
        assert_eq!(r.inner, c(9.0 / 16.0));

        let r = synthesize_rule(c(1.0 + 1e-10)).unwrap();
        assert!((r.outer - c(-1.0 / 16.0)).norm() < 1e-6);
        assert!((r.inner - c(9.0 / 16.0)).norm() < 1e-6);

        assert!(matches!(synthesize_rule(c(0.0)), Err(SubdivisionError::SingularRule(_))));
        assert!(matches!(synthesize_rule(c(-1.0)), Err(SubdivisionError::SingularRule(_))));
    }

    #[test]
    fn rule_reproduces_exponential_midpoints() {
        // e^{0.7z} sampled at spacing 0.7 around the midpoint 0
        let r = synthesize_rule(c(0.35f64.cosh())).unwrap();
        let g = 0.7;
        let h = 1.0;
        let f = |z: f64| c((g * z).exp());
        let got = r.apply([f(-1.5 * h), f(-0.5 * h), f(0.5 * h), f(1.5 * h)]);
        assert!((got - f(0.0)).norm() <= 1e-13);

        let r = synthesize_rule(c(0.4f64.cos())).unwrap();
        let f = |z: f64| c(1.0 + 2.0 * (0.8 * z).cos());
        let mid = 0.3;
        let got = r.apply([f(mid - 1.5), f(mid - 0.5), f(mid + 0.5), f(mid + 1.5)]);
        assert!((got - f(mid)).norm() <= 1e-13 * f(mid).norm());
    }

    #[test]
    fn refine_examples() {
        let constant = LevelSequence::new(0, 0, vec![c(4.0); 7]);
        let out = refine(&constant, &LevelParameter::new(0, c(1.2)).unwrap()).unwrap();
        assert_eq!(out.values.len(), 2 * (7 - 3) + 1);
        assert!(out.values.iter().all(|v| (v - c(4.0)).norm() < 1e-14));

        let f = |z: f64| 1.0 + (0.9 * z).exp() + (-0.9 * z).exp();
        let data = sample(0, -3, 8, f);
        let out = refine(&data, &LevelParameter::new(0, c(0.9f64.cosh())).unwrap()).unwrap();
        assert_eq!(out.level, 1);
        assert!(max_rel_err(&out, f) <= 1e-12);

        let f = |z: f64| 2.0 + (1.2 * z).cos();
        let data = sample(1, -4, 9, f);
        let out = refine(&data, &LevelParameter::new(1, c(0.6f64.cos())).unwrap()).unwrap();
        assert!(max_rel_err(&out, f) <= 1e-12);

        assert_eq!(refine(&LevelSequence::new(0, 0, vec![c(1.0); 3]), &LevelParameter::new(0, c(1.0)).unwrap()), Err(SubdivisionError::TooShort(3)));
        assert!(matches!(
            refine(&data, &LevelParameter::new(0, c(1.0)).unwrap()),
            Err(SubdivisionError::LevelMismatch { .. })
        ));
    }

    #[test]
    fn auto_refine_examples() {
        let cfg = DetectionConfig::default();
        let f = |z: f64| 1.0 + (0.5 * z).exp() + (-0.5 * z).exp();
        let res = auto_refine(&sample(0, -2, 40, f), 4, &cfg).unwrap();
        assert!((res.gamma.value() - c(0.5)).norm() <= 1e-9);
        assert_eq!(res.data.level, 4);
        assert!(max_rel_err(&res.data, f) <= 1e-10);

        let res = auto_refine(&LevelSequence::new(0, 0, vec![c(-2.5); 40]), 4, &cfg).unwrap();
        assert_eq!(res.gamma, Frequency::ZERO);
        assert!(res.data.values.iter().all(|v| *v == c(-2.5)));

        let f = |z: f64| z.exp();
        let res = auto_refine(&sample(0, 0, 30, f), 3, &cfg).unwrap();
        assert!((res.gamma.value() - c(1.0)).norm() <= 1e-9);
        assert!(max_rel_err(&res.data, f) <= 1e-10);

        assert!(matches!(auto_refine(&LevelSequence::new(0, 0, vec![c(1.0); 2]), 1, &cfg), Err(SubdivisionError::TooShort(2))));
    }

    #[test]
    fn refined_data_keeps_four_term_relation() {
        let f = |z: f64| 3.0 - 0.5 * (1.1 * z).exp() + 2.0 * (-1.1 * z).exp();
        let mut data = sample(0, -3, 12, f);
        let mut p = LevelParameter::from_frequency(Frequency::real(1.1).unwrap(), 0).unwrap();
        for _ in 0..3 {
            data = refine(&data, &p).unwrap();
            p = refine_parameter(&p).unwrap();
            let scale = data.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for r in four_term_relation(&data.values, p.cosh_value) {
                assert!(r.norm() <= 1e-11 * scale);
            }
        }
    }

    proptest! {
        #[test]
        fn parameter_refinement_inverts_doubling(x in -0.999f64..20.0) {
            let p = refine_parameter(&LevelParameter::new(0, c(x)).unwrap()).unwrap();
            let back = p.cosh_value * p.cosh_value * 2.0 - 1.0;
            prop_assert!((back - c(x)).norm() <= 1e-14 * (1.0 + x.abs()));
        }

        #[test]
        fn even_outputs_copy_inputs(vals in proptest::collection::vec(-10.0f64..10.0, 4..20), x in -0.9f64..5.0) {
            let data = LevelSequence::new(0, 0, vals.iter().map(|&v| c(v)).collect());
            let out = refine(&data, &LevelParameter::new(0, c(x)).unwrap()).unwrap();
            for (i, v) in out.values.iter().step_by(2).enumerate() {
                prop_assert_eq!(v.re.to_bits(), vals[i + 1].to_bits());
                prop_assert_eq!(v.im.to_bits(), 0f64.to_bits());
            }
        }

        #[test]
        fn weights_sum_to_half(x in -0.99f64..10.0) {
            prop_assume!(x.abs() > 1e-3);
            let r = synthesize_rule(c(x)).unwrap();
            prop_assert!(((r.outer + r.inner) * 2.0 - c(1.0)).norm() < 1e-12);
        }
    }
}

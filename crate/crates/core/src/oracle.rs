//! Brute-force validators and deterministic random instances.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood), chosen because its
//! constants fully specify the stream and it is trivial to port:
//!
//! ```text
//! state  += 0x9E3779B97F4A7C15
//! z       = state
//! z       = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z       = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output  = z ^ (z >> 31)
//! ```
//!
//! Uniform doubles in `[0, 1)` are `(output >> 11) · 2⁻⁵³`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::expspace::{symmetric_set, ExponentialSum, Frequency, FrequencySet, FrequencyVector, GridSamples, Window};
use crate::operators::{difference_factor, Direction, IntegerStep, ZERO_THRESHOLD};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Real,
    Imaginary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub seed: u64,
    /// Range of real frequency components.
    pub real_range: (f64, f64),
    /// Range of imaginary parts of imaginary components (kept inside `(0, π)`).
    pub imag_range: (f64, f64),
    /// Range of coefficient magnitudes.
    pub coeff_range: (f64, f64),
    pub level: u32,
    pub min_window: usize,
    pub max_window: usize,
    /// Fix the kind of each component; drawn per component when `None`.
    pub kinds: Option<[ComponentKind; 2]>,
    /// Pair coefficients of conjugate frequencies so the samples are real.
    pub conjugate_paired: bool,
}

impl RandomSpec {
    pub fn new(seed: u64) -> Self {
        RandomSpec {
            seed,
            real_range: (0.0, 2.0),
            imag_range: (0.0, 0.9 * PI),
            coeff_range: (0.1, 10.0),
            level: 0,
            min_window: 6,
            max_window: 12,
            kinds: None,
            conjugate_paired: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub gamma: FrequencyVector,
    pub sum: ExponentialSum,
    pub samples: GridSamples,
}

fn draw_component(rng: &mut SplitMix64, spec: &RandomSpec, kind: ComponentKind) -> Frequency {
    match kind {
        ComponentKind::Real => Frequency::real(rng.uniform(spec.real_range.0, spec.real_range.1)),
        ComponentKind::Imaginary => {
            let (lo, hi) = spec.imag_range;
            let y = rng.uniform(lo, hi);
            Frequency::imaginary(if y > 0.0 { y } else { hi * 0.5 })
        }
    }
    .expect("range lies in the frequency domain")
}

/// Draws `γ ∈ 𝔾² \ {0}`.
pub fn random_gamma(rng: &mut SplitMix64, spec: &RandomSpec) -> FrequencyVector {
    loop {
        let kinds = spec.kinds.unwrap_or_else(|| {
            let mut k = || if rng.coin() { ComponentKind::Real } else { ComponentKind::Imaginary };
            [k(), k()]
        });
        let g = FrequencyVector::new(draw_component(rng, spec, kinds[0]), draw_component(rng, spec, kinds[1]));
        if !g.is_zero() {
            return g;
        }
    }
}

/// Random coefficients on the members of `set`. With `conjugate_paired`, a
/// member `μ` whose conjugate `μ̄` is also present gets `c` and `μ̄` gets `c̄`;
/// real members get real coefficients.
pub fn random_member(rng: &mut SplitMix64, set: &FrequencySet, coeff_range: (f64, f64), conjugate_paired: bool) -> ExponentialSum {
    let members = set.members();
    let mut coeffs: Vec<Option<Complex64>> = vec![None; members.len()];
    for (i, &mu) in members.iter().enumerate() {
        if coeffs[i].is_some() {
            continue;
        }
        let mag = rng.uniform(coeff_range.0, coeff_range.1);
        let partner = members.iter().position(|&m| m == mu.conj());
        let c = if conjugate_paired && partner == Some(i) {
            Complex64::new(if rng.coin() { mag } else { -mag }, 0.0)
        } else {
            Complex64::from_polar(mag, rng.uniform(-PI, PI))
        };
        coeffs[i] = Some(c);
        if conjugate_paired {
            if let Some(j) = partner.filter(|&j| j != i) {
                coeffs[j] = Some(c.conj());
            }
        }
    }
    ExponentialSum::new(members.iter().zip(coeffs).map(|(&m, c)| (c.expect("assigned"), m)))
}

pub fn random_window(rng: &mut SplitMix64, spec: &RandomSpec) -> Window {
    let lo = spec.min_window as i64;
    let hi = spec.max_window as i64;
    let width = rng.int_range(lo, hi) as usize;
    let height = rng.int_range(lo, hi) as usize;
    let origin = [rng.int_range(-3, 0), rng.int_range(-3, 0)];
    Window::new(origin, width, height).expect("positive extent")
}

/// A symmetric-space member with its planted `γ` and its samples.
pub fn random_instance(spec: &RandomSpec) -> RandomInstance {
    let mut rng = SplitMix64::new(spec.seed);
    let gamma = random_gamma(&mut rng, spec);
    let set = symmetric_set(gamma).expect("γ drawn from 𝔾² \\ {0}");
    let sum = random_member(&mut rng, &set, spec.coeff_range, spec.conjugate_paired);
    let window = random_window(&mut rng, spec);
    let samples = sum.sample(spec.level, window);
    RandomInstance { gamma, sum, samples }
}

/// Forward difference quotient `(F(z + h v) - F(z)) / h`.
pub fn finite_difference_directional(f: &ExponentialSum, z: [f64; 2], v: &Direction, h: f64) -> Complex64 {
    let u = v.unit();
    (f.evaluate([z[0] + h * u[0], z[1] + h * u[1]]) - f.evaluate(z)) / h
}

/// Every non-zero step with components in `[-bound, bound]`.
pub fn steps_in_box(bound: i64) -> Vec<IntegerStep> {
    (-bound..=bound)
        .flat_map(|dx| (-bound..=bound).filter_map(move |dy| IntegerStep::new(dx, dy).ok()))
        .collect()
}

/// True iff the difference chain over `set` (one factor per member, in
/// order) annihilates `f` for every tuple of steps drawn from
/// `[-bound, bound]² \ {0}`.
///
/// Each factor multiplies the term `exp(μᵀz)` by `exp(μᵀs) - exp(γᵀs)`, so
/// the per-factor multipliers are tabulated once and every tuple of the
/// Cartesian product is checked.
pub fn exhaustive_annihilation_check(f: &ExponentialSum, set: &FrequencySet, bound: i64) -> bool {
    if f.is_zero() {
        return true;
    }
    let steps = steps_in_box(bound);
    let coeffs: Vec<Complex64> = f.terms().iter().map(|t| t.coeff).collect();
    if set.is_empty() {
        return false;
    }
    // table[factor][step][term]
    let table: Vec<Vec<Vec<Complex64>>> = set
        .members()
        .iter()
        .map(|&g| steps.iter().map(|&s| f.terms().iter().map(|t| difference_factor(t.freq, g, s)).collect()).collect())
        .collect();
    let threshold = ZERO_THRESHOLD * f.max_coeff();

    // scratch[d] holds the partial products after d + 1 factors
    fn descend(table: &[Vec<Vec<Complex64>>], partial: &[Complex64], scratch: &mut [Vec<Complex64>], threshold: f64) -> bool {
        match table {
            [] => partial.iter().all(|p| p.norm() <= threshold),
            [last] => last.iter().all(|mults| partial.iter().zip(mults).all(|(p, m)| (p * m).norm() <= threshold)),
            [factor, rest @ ..] => {
                let (next, deeper) = scratch.split_first_mut().expect("one buffer per level");
                factor.iter().all(|mults| {
                    next.clear();
                    next.extend(partial.iter().zip(mults).map(|(p, m)| p * m));
                    descend(rest, next, deeper, threshold)
                })
            }
        }
    }

    let (first, rest) = table.split_first().expect("non-empty set");
    first.par_iter().all(|mults| {
        let start: Vec<Complex64> = coeffs.iter().zip(mults).map(|(p, m)| p * m).collect();
        let mut scratch = vec![Vec::with_capacity(coeffs.len()); rest.len()];
        descend(rest, &start, &mut scratch, threshold)
    })
}

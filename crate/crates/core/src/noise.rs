//! Noise operators: per-coordinate resampling from the null, adversarial
//! corruption of a bounded number of coordinates, and wraparound shifts of every
//! real-valued coordinate.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::NoiseError;
use crate::field::{Field, FieldElement};
use crate::planted::{index_counts, sample_null_binary, sample_null_real, PlantedSample, RealSymbol, TupleLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseKind {
    Resample,
    Adversarial,
    Wraparound,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub delta: f64,
    /// Shift magnitude; only read by [`NoiseKind::Wraparound`].
    pub beta: f64,
}

fn unit_interval(x: f64, name: &'static str) -> Result<(), NoiseError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(NoiseError::OutOfRange { name })
    }
}

impl NoiseSpec {
    pub fn resample(delta: f64) -> Result<Self, NoiseError> {
        unit_interval(delta, "delta")?;
        Ok(NoiseSpec { kind: NoiseKind::Resample, delta, beta: 0.0 })
    }

    pub fn adversarial(delta: f64) -> Result<Self, NoiseError> {
        unit_interval(delta, "delta")?;
        Ok(NoiseSpec { kind: NoiseKind::Adversarial, delta, beta: 0.0 })
    }

    pub fn wraparound(beta: f64) -> Result<Self, NoiseError> {
        unit_interval(beta, "beta")?;
        Ok(NoiseSpec { kind: NoiseKind::Wraparound, delta: 0.0, beta })
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        unit_interval(self.delta, "delta")?;
        unit_interval(self.beta, "beta")
    }

    /// Applies a randomized operator to a sample of either kind. Adversarial noise
    /// needs a strategy and goes through [`adversarial_corrupt`] instead.
    pub fn apply<R: Rng + ?Sized>(&self, sample: &Observation, rng: &mut R) -> Result<Noisy<Observation>, NoiseError> {
        self.validate()?;
        match (self.kind, sample) {
            (NoiseKind::Resample, Observation::Real(x)) => {
                let out = t_delta(x, self.delta, |r: &mut R| RealSymbol(r.random()), rng)?;
                Ok(Noisy { sample: Observation::Real(out.sample), changed: out.changed })
            }
            (NoiseKind::Resample, Observation::Binary(x)) => {
                let out = t_delta(x, self.delta, |r: &mut R| FieldElement::from_index(r.random_range(0..2u16)), rng)?;
                Ok(Noisy { sample: Observation::Binary(out.sample), changed: out.changed })
            }
            (NoiseKind::Wraparound, Observation::Real(x)) => {
                let sample = wraparound_noise(x, self.beta, rng)?;
                Ok(Noisy { sample: Observation::Real(sample), changed: (0..x.len()).collect() })
            }
            (NoiseKind::Wraparound, Observation::Binary(_)) => {
                Err(NoiseError::WrongSampleKind("wraparound noise is defined for real-valued samples only"))
            }
            (NoiseKind::Adversarial, _) => {
                Err(NoiseError::WrongSampleKind("adversarial noise needs a strategy; use adversarial_corrupt"))
            }
        }
    }
}

/// A sample of either model, for code that handles both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observation {
    Real(Vec<RealSymbol>),
    Binary(Vec<FieldElement>),
}

impl Observation {
    pub fn null<R: Rng + ?Sized>(binary: bool, n: usize, rng: &mut R) -> Self {
        if binary {
            Observation::Binary(sample_null_binary(n, rng))
        } else {
            Observation::Real(sample_null_real(n, rng))
        }
    }
}

/// A noisy sample and the coordinates the operator touched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Noisy<T> {
    pub sample: T,
    pub changed: Vec<usize>,
}

/// `T_delta`: each coordinate independently keeps its value with probability
/// `1 - delta` and is otherwise replaced by a fresh draw from `null`.
pub fn t_delta<T, R, F>(sample: &[T], delta: f64, mut null: F, rng: &mut R) -> Result<Noisy<Vec<T>>, NoiseError>
where
    T: Copy,
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> T,
{
    unit_interval(delta, "delta")?;
    let mut out = Vec::with_capacity(sample.len());
    let mut changed = Vec::new();
    for (i, &x) in sample.iter().enumerate() {
        if rng.random_bool(delta) {
            out.push(null(rng));
            changed.push(i);
        } else {
            out.push(x);
        }
    }
    Ok(Noisy { sample: out, changed })
}

/// `floor(delta * n)`.
pub fn adversarial_budget(n: usize, delta: f64) -> usize {
    libm::floor(delta * n as f64) as usize
}

/// A deterministic rule choosing at most `budget` coordinates to overwrite. It
/// sees the whole sample, hidden fields included.
pub trait Adversary<S: ?Sized> {
    type Symbol: Copy + PartialEq;

    /// The coordinates the distinguisher observes.
    fn observed<'a>(&self, sample: &'a S) -> &'a [Self::Symbol];

    fn plan(&self, sample: &S, budget: usize) -> Vec<(usize, Self::Symbol)>;
}

/// Applies the adversary's plan after checking it against the budget
/// `floor(delta * n)`.
pub fn adversarial_corrupt<S, A>(sample: &S, delta: f64, adversary: &A) -> Result<Noisy<Vec<A::Symbol>>, NoiseError>
where
    S: ?Sized,
    A: Adversary<S>,
{
    unit_interval(delta, "delta")?;
    let mut out = adversary.observed(sample).to_vec();
    let budget = adversarial_budget(out.len(), delta);
    let plan = adversary.plan(sample, budget);
    if plan.len() > budget {
        return Err(NoiseError::BudgetExceeded { planned: plan.len(), budget });
    }
    let mut seen = BTreeSet::new();
    let mut changed = Vec::new();
    for &(i, v) in &plan {
        if i >= out.len() || !seen.insert(i) {
            return Err(NoiseError::InvalidPlan { position: i });
        }
        if out[i] != v {
            out[i] = v;
            changed.push(i);
        }
    }
    changed.sort_unstable();
    Ok(Noisy { sample: out, changed })
}

/// Flips the first `budget` bits of a binary word.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlipFirstBits;

impl Adversary<[FieldElement]> for FlipFirstBits {
    type Symbol = FieldElement;

    fn observed<'a>(&self, sample: &'a [FieldElement]) -> &'a [FieldElement] {
        sample
    }

    fn plan(&self, sample: &[FieldElement], budget: usize) -> Vec<(usize, FieldElement)> {
        sample
            .iter()
            .take(budget)
            .enumerate()
            .map(|(i, b)| (i, FieldElement::from_index(1 - b.index() as u16)))
            .collect()
    }
}

fn unique_coordinates(sample: &PlantedSample, n: usize) -> Vec<usize> {
    let indices = &sample.hidden().indices;
    let counts = index_counts(indices, n);
    (0..indices.len()).filter(|&i| counts[indices[i]] == 1).collect()
}

/// Moves the position of up to `budget` uniquely-indexed coordinates onto the
/// position of another uniquely-indexed coordinate. Each move empties one
/// position and makes another collide, so it adds at most two erasures.
#[derive(Clone, Copy, Debug)]
pub struct RetargetUniqueIndices {
    pub layout: TupleLayout,
}

impl Adversary<PlantedSample> for RetargetUniqueIndices {
    type Symbol = RealSymbol;

    fn observed<'a>(&self, sample: &'a PlantedSample) -> &'a [RealSymbol] {
        sample.symbols()
    }

    fn plan(&self, sample: &PlantedSample, budget: usize) -> Vec<(usize, RealSymbol)> {
        let unique = unique_coordinates(sample, self.layout.n());
        let moves = budget.min(unique.len() / 2);
        let (sources, targets) = unique.split_at(moves);
        sources
            .iter()
            .zip(targets)
            .map(|(&src, &dst)| {
                let (_, value, tail) = self.layout.decode(sample.symbols()[src]);
                let j = sample.hidden().indices[dst];
                let symbol = self.layout.encode(j, value, tail).expect("index comes from the sample");
                (src, symbol)
            })
            .collect()
    }
}

/// Replaces the value of up to `budget` uniquely-indexed coordinates by a wrong
/// one (`y + 1`), creating errors rather than erasures.
#[derive(Clone, Debug)]
pub struct CorruptUniqueValues {
    pub layout: TupleLayout,
    pub field: Field,
}

impl Adversary<PlantedSample> for CorruptUniqueValues {
    type Symbol = RealSymbol;

    fn observed<'a>(&self, sample: &'a PlantedSample) -> &'a [RealSymbol] {
        sample.symbols()
    }

    fn plan(&self, sample: &PlantedSample, budget: usize) -> Vec<(usize, RealSymbol)> {
        unique_coordinates(sample, self.layout.n())
            .into_iter()
            .take(budget)
            .map(|i| {
                let (j, value, tail) = self.layout.decode(sample.symbols()[i]);
                let wrong = self.field.add(value, FieldElement::ONE);
                (i, self.layout.encode(j, wrong, tail).expect("re-encoding a decoded tuple"))
            })
            .collect()
    }
}

/// Shifts every coordinate by `u * beta` modulo 1, with `u` uniform on `[0, 1)`,
/// in 64-bit fixed point.
pub fn wraparound_noise<R: Rng + ?Sized>(
    sample: &[RealSymbol],
    beta: f64,
    rng: &mut R,
) -> Result<Vec<RealSymbol>, NoiseError> {
    unit_interval(beta, "beta")?;
    let scale: u128 = if beta >= 1.0 { 1u128 << 64 } else { (beta * 18_446_744_073_709_551_616.0) as u128 };
    Ok(sample
        .iter()
        .map(|x| {
            let u: u64 = rng.random();
            let shift = ((u as u128 * scale) >> 64) as u64;
            RealSymbol(x.0.wrapping_add(shift))
        })
        .collect())
}

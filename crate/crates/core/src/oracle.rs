//! Independent reference propagators: midpoint step products of short-time
//! exponentials, rotating-frame closed forms, state evolution and the
//! energy-dispersion / Fubini-Study speed diagnostics.

use num_complex::Complex64;

use crate::closedforms::UnitaryFamily;
use crate::error::{Error, Result};
use crate::matrix::{expm_unitary, Operator, HERMITIAN_TOL};

/// Step-product resolution per `2π` of evolution.
pub const STEPS_PER_PERIOD: usize = 10_000;

/// Time-dependent Hermitian operator `t -> H(t)`.
pub struct HamiltonianSchedule<'a> {
    dim: usize,
    eval: Box<dyn Fn(f64) -> Operator + 'a>,
}

impl<'a> HamiltonianSchedule<'a> {
    pub fn new(dim: usize, eval: impl Fn(f64) -> Operator + 'a) -> Self {
        HamiltonianSchedule {
            dim,
            eval: Box::new(eval),
        }
    }

    pub fn constant(h: Operator) -> Self {
        let dim = h.dim();
        Self::new(dim, move |_| h.clone())
    }

    pub fn from_family(family: &'a dyn UnitaryFamily) -> Self {
        Self::new(family.dim(), move |t| family.hamiltonian(t))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `H(t)`, checked for shape and hermiticity.
    pub fn at(&self, t: f64) -> Result<Operator> {
        let h = (self.eval)(t);
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: h.dim(),
                right: self.dim,
            });
        }
        let dev = h.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(h)
    }
}

impl std::fmt::Debug for HamiltonianSchedule<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HamiltonianSchedule").field("dim", &self.dim).finish()
    }
}

/// Normalized state `|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

const NORM_TOL: f64 = 1e-10;

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amps);
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!("state norm is {n}, expected 1")));
        }
        Ok(StateVector { amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amps);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidArgument("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(StateVector {
            amps: amps.into_iter().map(|a| a / n).collect(),
        })
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, a: &Operator) -> Result<Complex64> {
        Ok(inner(&self.amps, &a.apply(&self.amps)?))
    }

    fn evolved(&self, u: &Operator) -> Result<StateVector> {
        Ok(StateVector {
            amps: u.apply(&self.amps)?,
        })
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidArgument("step count must be at least 1".into()));
    }
    Ok(())
}

/// Steps giving `STEPS_PER_PERIOD` per `2π` over `[t0, t1]`, at least one.
pub fn default_steps(t0: f64, t1: f64) -> usize {
    ((t1 - t0).abs() / std::f64::consts::TAU * STEPS_PER_PERIOD as f64).ceil().max(1.0) as usize
}

/// Midpoint product `Π_k exp(-i H(t_k + δt/2) δt)`, later times on the left.
pub fn time_ordered_exponential(
    sched: &HamiltonianSchedule<'_>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Operator> {
    check_steps(steps)?;
    let dt = (t1 - t0) / steps as f64;
    let mut u = Operator::identity(sched.dim());
    for k in 0..steps {
        let tm = t0 + (k as f64 + 0.5) * dt;
        let step = expm_unitary(&sched.at(tm)?, dt)?;
        u = &step * &u;
    }
    Ok(u)
}

/// `V(t,s) = e^{-iCt} e^{-i(H0 - C)(t-s)} e^{iCs}`, the propagator of
/// `H(t) = e^{-iCt} H0 e^{iCt}`.
pub fn rotating_frame_propagator(c: &Operator, h0: &Operator, t: f64, s: f64) -> Result<Operator> {
    if c.dim() != h0.dim() {
        return Err(Error::DimensionMismatch {
            left: c.dim(),
            right: h0.dim(),
        });
    }
    let k = h0 - c;
    let left = expm_unitary(c, t)?;
    let mid = expm_unitary(&k, t - s)?;
    let right = expm_unitary(c, -s)?;
    Ok(&(&left * &mid) * &right)
}

/// `V(t,s)` for a closed-form family, using its frame generator.
pub fn family_rotating_propagator(family: &dyn UnitaryFamily, t: f64, s: f64) -> Result<Operator> {
    rotating_frame_propagator(&family.frame_generator(), &family.hamiltonian(0.0), t, s)
}

/// States at `t0 + k δt` for `k = 0..=steps`, one midpoint factor per step.
pub fn evolve_state(
    psi0: &StateVector,
    sched: &HamiltonianSchedule<'_>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Vec<StateVector>> {
    check_steps(steps)?;
    if psi0.dim() != sched.dim() {
        return Err(Error::DimensionMismatch {
            left: psi0.dim(),
            right: sched.dim(),
        });
    }
    let dt = (t1 - t0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(psi0.clone());
    for k in 0..steps {
        let tm = t0 + (k as f64 + 0.5) * dt;
        let step = expm_unitary(&sched.at(tm)?, dt)?;
        let next = out[k].evolved(&step)?;
        out.push(next);
    }
    Ok(out)
}

/// `⟨H²⟩ - ⟨H⟩²`, clamped at zero.
pub fn energy_variance(psi: &StateVector, h: &Operator) -> Result<f64> {
    let hv = h.apply(psi.amplitudes())?;
    let mean = inner(psi.amplitudes(), &hv).re;
    let sq = inner(&hv, &hv).re;
    Ok((sq - mean * mean).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsSample {
    pub fs_speed: f64,
    pub sqrt_variance: f64,
    pub residual: f64,
}

/// Fubini-Study speed `sqrt(⟨ψ̇|ψ̇⟩ - |⟨ψ|ψ̇⟩|²)` by central differences at the
/// interior samples, compared with `sqrt(variance)`.
pub fn fs_speed_check(states: &[StateVector], dt: f64, variances: &[f64]) -> Result<Vec<FsSample>> {
    if states.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 states, got {}",
            states.len()
        )));
    }
    if variances.len() != states.len() {
        return Err(Error::LengthMismatch {
            expected: states.len(),
            got: variances.len(),
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
    }
    let mut out = Vec::with_capacity(states.len() - 2);
    for k in 1..states.len() - 1 {
        let psi = states[k].amplitudes();
        let d: Vec<Complex64> = states[k + 1]
            .amplitudes()
            .iter()
            .zip(states[k - 1].amplitudes())
            .map(|(a, b)| (a - b) / (2.0 * dt))
            .collect();
        let speed2 = inner(&d, &d).re - inner(psi, &d).norm_sqr();
        let fs_speed = speed2.max(0.0).sqrt();
        let sqrt_variance = variances[k].max(0.0).sqrt();
        out.push(FsSample {
            fs_speed,
            sqrt_variance,
            residual: (fs_speed - sqrt_variance).abs(),
        });
    }
    Ok(out)
}

/// `|U_n - U_2n| / |U_2n - U_4n|` for the midpoint product (max-entry norm).
pub fn midpoint_convergence_ratio(
    sched: &HamiltonianSchedule<'_>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<f64> {
    let a = time_ordered_exponential(sched, t0, t1, steps)?;
    let b = time_ordered_exponential(sched, t0, t1, 2 * steps)?;
    let c = time_ordered_exponential(sched, t0, t1, 4 * steps)?;
    Ok(a.max_abs_diff(&b) / b.max_abs_diff(&c))
}

//! Explicit solution families: the time-optimal Dirac Hamiltonian with its
//! eigenframe and propagator, and the su2 / su3 unitary-Hamiltonian pairs.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::{convention_bridge, Group};
use crate::matrix::{kron, pauli, Operator, I, ONE, ZERO};

/// Sign and normalization choices that make the printed formulas mutually
/// consistent. Each is established by one audit check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conventions {
    /// Sign in `U(t,s) = diag(e^{iσE(t-s)} 1, e^{-iσE(t-s)} 1)` (isometry_su4).
    pub su4_phase_sign: f64,
    /// Sign of the `(0,2)` entry `±i e^{-iθ} sin(t-s)` of the su3 propagator (isometry_su3).
    pub su3_u02_sign: f64,
    /// `i dH/dt = frame_sign [H, D0]` (commutator_eq26).
    pub frame_sign: f64,
    /// Global factor between the projected flow and the Dirac component
    /// equations (ode_transcriptions).
    pub ode_factor: f64,
    /// `Tr(H^2) / trace_norm = m^2 + |p|^2` (sphere_constraint).
    pub trace_norm: f64,
    /// Whether the closed-form `U` solves `i dU/dt = H(t) U` (propagator_question).
    pub closed_form_is_schrodinger: bool,
}

pub const CONVENTIONS: Conventions = Conventions {
    su4_phase_sign: -1.0,
    su3_u02_sign: 1.0,
    frame_sign: -1.0,
    ode_factor: 1.0,
    trace_norm: 4.0,
    closed_form_is_schrodinger: false,
};

/// Mass, initial momentum and global phase of the su4 family; `E` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracParameters {
    m: f64,
    p0: [f64; 3],
    theta: f64,
    energy: f64,
}

pub const DEFAULT_THETA: f64 = -std::f64::consts::FRAC_PI_2;

impl DiracParameters {
    pub fn new(m: f64, p0: [f64; 3], theta: f64) -> Result<Self> {
        if !m.is_finite() || !theta.is_finite() || p0.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let energy = (m * m + p0.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if energy == 0.0 {
            return Err(Error::Degenerate("E = 0 collapses the two energy levels".into()));
        }
        Ok(DiracParameters { m, p0, theta, energy })
    }

    pub fn with_default_theta(m: f64, p0: [f64; 3]) -> Result<Self> {
        Self::new(m, p0, DEFAULT_THETA)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn p0(&self) -> [f64; 3] {
        self.p0
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn p_norm_sq(&self) -> f64 {
        self.p0.iter().map(|x| x * x).sum()
    }

    /// `E + m`, via `|p|^2 / (E - m)` when `m < 0` to avoid cancellation.
    pub fn e_plus(&self) -> f64 {
        if self.m < 0.0 {
            self.p_norm_sq() / (self.energy - self.m)
        } else {
            self.energy + self.m
        }
    }

    /// `E - m`, via `|p|^2 / (E + m)` when `m > 0`.
    pub fn e_minus(&self) -> f64 {
        if self.m > 0.0 {
            self.p_norm_sq() / (self.energy + self.m)
        } else {
            self.energy - self.m
        }
    }
}

/// `p·σ`.
pub fn pauli_dot(p: [f64; 3]) -> Operator {
    let mut out = Operator::zeros(2);
    for (j, &c) in p.iter().enumerate() {
        out.axpy(c, &pauli(j + 1));
    }
    out
}

fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

fn dirac_blocks(m: f64, p0: [f64; 3], upper: Complex64) -> Operator {
    let pd = pauli_dot(p0);
    let id = Operator::identity(2);
    Operator::from_blocks(
        &id.scale_re(m),
        &pd.scale(upper),
        &pd.scale(upper.conj()),
        &id.scale_re(-m),
    )
    .expect("2x2 blocks")
}

/// `[[m 1, -i e^{-2iEt} p0·σ], [i e^{2iEt} p0·σ, -m 1]]`.
pub fn dirac_hamiltonian(params: &DiracParameters, t: f64) -> Operator {
    let e = params.energy;
    dirac_blocks(params.m, params.p0, -I * cis(-2.0 * e * t))
}

/// Phase-parametrized form `[[m 1, e^{-i(2Et+θ)} p0·σ], [e^{i(2Et+θ)} p0·σ, -m 1]]`
/// using the stored `θ`. `θ = π/2` gives [`dirac_hamiltonian`]; `θ = 0` gives
/// the `α_j = σx ⊗ σ_j` representation.
pub fn dirac_hamiltonian_phased(params: &DiracParameters, t: f64) -> Operator {
    let e = params.energy;
    dirac_blocks(params.m, params.p0, cis(-(2.0 * e * t + params.theta)))
}

/// `D0 = E σz ⊗ 1`.
pub fn dirac_d0(params: &DiracParameters) -> Operator {
    kron(&pauli(3), &Operator::identity(2)).scale_re(params.energy)
}

/// `ε·p` with `ε = (1, -iσz, +iσy)`.
pub fn epsilon_dot(p: [f64; 3]) -> Operator {
    let mut out = Operator::identity(2).scale_re(p[0]);
    out += &pauli(3).scale(-I * p[1]);
    out += &pauli(2).scale(I * p[2]);
    out
}

/// `ε†·p`.
pub fn epsilon_dagger_dot(p: [f64; 3]) -> Operator {
    epsilon_dot(p).adjoint()
}

/// `((ε·p)(ε†·p), (ε†·p)(ε·p))`; both equal `|p|^2 1`.
pub fn epsilon_product(p: [f64; 3]) -> (Operator, Operator) {
    let e = epsilon_dot(p);
    let ed = epsilon_dagger_dot(p);
    (&e * &ed, &ed * &e)
}

/// Non-unitary eigenvector matrix with `H(t) = W D0 W^-1`.
#[derive(Debug, Clone)]
pub struct EigenFrame {
    pub w: Operator,
    pub w_inv: Operator,
    pub d0: Operator,
}

impl EigenFrame {
    /// `W D0 W^-1`.
    pub fn hamiltonian(&self) -> Operator {
        &(&self.w * &self.d0) * &self.w_inv
    }
}

/// Block eigenframe in the `α_j = σx ⊗ σ_j` representation:
/// `W = [[ε·p0 e^{-2iEt}/E₋, -ε·p0 e^{-2iEt}/E₊], [σx, σx]]` and
/// `W^-1 = 1/(2E) [[ε†·p0 e^{2iEt}, E₋ σx], [-ε†·p0 e^{2iEt}, E₊ σx]]`.
pub fn su4_eigenframe_sigma_x(params: &DiracParameters, t: f64) -> Result<EigenFrame> {
    if params.p_norm_sq() == 0.0 {
        return Err(Error::Degenerate("|p0| = 0 leaves E - m = 0 in the frame".into()));
    }
    let e = params.energy;
    let (ep, em) = (params.e_plus(), params.e_minus());
    let eps = epsilon_dot(params.p0).scale(cis(-2.0 * e * t));
    let eps_d = epsilon_dagger_dot(params.p0).scale(cis(2.0 * e * t));
    let sx = pauli(1);
    let w = Operator::from_blocks(&eps.scale_re(1.0 / em), &eps.scale_re(-1.0 / ep), &sx, &sx)?;
    let w_inv = Operator::from_blocks(&eps_d, &sx.scale_re(em), &eps_d.scale_re(-1.0), &sx.scale_re(ep))?
        .scale_re(0.5 / e);
    Ok(EigenFrame {
        w,
        w_inv,
        d0: dirac_d0(params),
    })
}

/// Eigenframe of [`dirac_hamiltonian`]: the block frame carried into the
/// canonical representation, `W = B W_x` and `W^-1 = W_x^-1 B^H`.
pub fn su4_eigenframe(params: &DiracParameters, t: f64) -> Result<EigenFrame> {
    let raw = su4_eigenframe_sigma_x(params, t)?;
    let b = convention_bridge();
    Ok(EigenFrame {
        w: &b * &raw.w,
        w_inv: &raw.w_inv * &b.adjoint(),
        d0: raw.d0,
    })
}

/// `diag(e^{iσE(t-s)} 1, e^{-iσE(t-s)} 1)` with `σ = phase_sign`.
pub fn su4_propagator(params: &DiracParameters, t: f64, s: f64, phase_sign: f64) -> Operator {
    let z = cis(phase_sign * params.energy * (t - s));
    Operator::diag(&[z, z, z.conj(), z.conj()])
}

/// `U(t,0) F(0) U(t,0)^H` for a constraint given on the canonical su4 basis.
pub fn su4_constraint_t(f0: &[f64], params: &DiracParameters, t: f64) -> Result<Operator> {
    let basis = crate::generators::build_basis(Group::Su4);
    let f = basis.reconstruct(f0)?;
    let u = su4_propagator(params, t, 0.0, CONVENTIONS.su4_phase_sign);
    Ok(&(&u * &f) * &u.adjoint())
}

/// `(H(t), U(t,s))` of one family.
#[derive(Debug, Clone)]
pub struct FamilyEvaluation {
    pub hamiltonian: Operator,
    pub propagator: Operator,
}

/// A closed-form family with `H(t) = U(t,s) H(s) U(t,s)^H` and a rotating-frame
/// generator `C` satisfying `H(t) = e^{-iCt} H(0) e^{iCt}`.
pub trait UnitaryFamily {
    fn group(&self) -> Group;

    fn hamiltonian(&self, t: f64) -> Operator;

    fn propagator(&self, t: f64, s: f64) -> Operator;

    fn frame_generator(&self) -> Operator;

    /// Natural time scale, used to size oracle runs.
    fn period(&self) -> f64;

    fn dim(&self) -> usize {
        self.group().dim()
    }

    fn evaluate(&self, t: f64, s: f64) -> FamilyEvaluation {
        FamilyEvaluation {
            hamiltonian: self.hamiltonian(t),
            propagator: self.propagator(t, s),
        }
    }
}

/// `H(t) = [[0, e^{-it}], [e^{it}, 0]]`, `U(t,s) = diag(1, e^{i(t-s)})`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Su2Family;

impl UnitaryFamily for Su2Family {
    fn group(&self) -> Group {
        Group::Su2
    }

    fn hamiltonian(&self, t: f64) -> Operator {
        Operator::from_rows([[ZERO, cis(-t)], [cis(t), ZERO]])
    }

    fn propagator(&self, t: f64, s: f64) -> Operator {
        Operator::diag(&[ONE, cis(t - s)])
    }

    fn frame_generator(&self) -> Operator {
        pauli(3).scale_re(0.5)
    }

    fn period(&self) -> f64 {
        std::f64::consts::TAU
    }
}

pub fn su2_family(t: f64, s: f64) -> FamilyEvaluation {
    Su2Family.evaluate(t, s)
}

/// su3 pair with phase `θ`:
/// `H(t) = [[0, cos t, 0], [cos t, 0, -ie^{-iθ} sin t], [0, ie^{iθ} sin t, 0]]`,
/// `U(t,s) = [[cos, 0, ±ie^{-iθ} sin], [0, 1, 0], [ie^{iθ} sin, 0, cos]]` at `t - s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su3Family {
    pub theta: f64,
    pub u02_sign: f64,
}

impl Su3Family {
    pub fn new(theta: f64) -> Self {
        Su3Family {
            theta,
            u02_sign: CONVENTIONS.su3_u02_sign,
        }
    }

    /// The `(0,2)` entry carrying `-i e^{-iθ} sin(t-s)`.
    pub fn printed(theta: f64) -> Self {
        Su3Family { theta, u02_sign: -1.0 }
    }

    /// Eigenstate transformation `Q(t)`; `Q(0)` is a Hadamard-like qutrit gate.
    pub fn gate(&self, t: f64) -> Operator {
        let (c, s) = (t.cos(), t.sin());
        let r = FRAC_1_SQRT_2;
        let up = I * cis(-self.theta) * s;
        let lo = I * cis(self.theta) * s * r;
        Operator::from_rows([
            [Complex64::from(r * c), Complex64::from(-r * c), up],
            [Complex64::from(r), Complex64::from(r), ZERO],
            [lo, -lo, Complex64::from(c)],
        ])
    }
}

impl UnitaryFamily for Su3Family {
    fn group(&self) -> Group {
        Group::Su3
    }

    fn hamiltonian(&self, t: f64) -> Operator {
        let c = Complex64::from(t.cos());
        let s = t.sin();
        Operator::from_rows([
            [ZERO, c, ZERO],
            [c, ZERO, -I * cis(-self.theta) * s],
            [ZERO, I * cis(self.theta) * s, ZERO],
        ])
    }

    fn propagator(&self, t: f64, s: f64) -> Operator {
        let d = t - s;
        let c = Complex64::from(d.cos());
        let sn = d.sin();
        Operator::from_rows([
            [c, ZERO, I * cis(-self.theta) * (self.u02_sign * sn)],
            [ZERO, ONE, ZERO],
            [I * cis(self.theta) * sn, ZERO, c],
        ])
    }

    fn frame_generator(&self) -> Operator {
        let z = cis(-self.theta);
        Operator::from_rows([[ZERO, ZERO, -z], [ZERO, ZERO, ZERO], [-z.conj(), ZERO, ZERO]])
    }

    fn period(&self) -> f64 {
        std::f64::consts::TAU
    }
}

pub fn su3_family(theta: f64, t: f64, s: f64) -> FamilyEvaluation {
    Su3Family::new(theta).evaluate(t, s)
}

/// Time-optimal Dirac family with a chosen propagator phase sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su4Family {
    pub params: DiracParameters,
    pub phase_sign: f64,
}

impl Su4Family {
    pub fn new(params: DiracParameters) -> Self {
        Su4Family {
            params,
            phase_sign: CONVENTIONS.su4_phase_sign,
        }
    }

    pub fn with_phase_sign(params: DiracParameters, phase_sign: f64) -> Self {
        Su4Family { params, phase_sign }
    }
}

impl UnitaryFamily for Su4Family {
    fn group(&self) -> Group {
        Group::Su4
    }

    fn hamiltonian(&self, t: f64) -> Operator {
        dirac_hamiltonian(&self.params, t)
    }

    fn propagator(&self, t: f64, s: f64) -> Operator {
        su4_propagator(&self.params, t, s, self.phase_sign)
    }

    fn frame_generator(&self) -> Operator {
        dirac_d0(&self.params)
    }

    fn period(&self) -> f64 {
        std::f64::consts::TAU / self.params.energy
    }
}

//! Quantum brachistochrone flow `i d(H + F)/dt = [H, F]` on a split generator
//! basis, a fixed-step RK4 integrator, and the Dirac-specific component
//! equations used as cross-checks.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::generators::{build_basis, su4_label, GeneratorBasis, Group};
use crate::matrix::{commutator, Operator, I};

/// Components outside the span of S larger than this reject a split.
const SPAN_TOL: f64 = 1e-10;

/// Partition of a generator basis into a Hamiltonian span `S` and a
/// constraint span `Sᶜ`.
#[derive(Debug, Clone)]
pub struct ControlSplit {
    basis: GeneratorBasis,
    hamiltonian: Vec<usize>,
    constraint: Vec<usize>,
}

impl ControlSplit {
    /// `S` in the given order; `Sᶜ` is every other label, in basis order.
    pub fn new(basis: GeneratorBasis, hamiltonian_labels: &[&str]) -> Result<Self> {
        if hamiltonian_labels.is_empty() {
            return Err(Error::InvalidSplit("hamiltonian span is empty".into()));
        }
        let mut seen = HashSet::new();
        let mut hamiltonian = Vec::with_capacity(hamiltonian_labels.len());
        for label in hamiltonian_labels {
            let k = basis.index_of(label)?;
            if !seen.insert(k) {
                return Err(Error::InvalidSplit(format!("label `{label}` listed twice")));
            }
            hamiltonian.push(k);
        }
        let constraint = (0..basis.len()).filter(|k| !seen.contains(k)).collect();
        Ok(ControlSplit {
            basis,
            hamiltonian,
            constraint,
        })
    }

    pub fn for_group(group: Group, hamiltonian_labels: &[&str]) -> Result<Self> {
        Self::new(build_basis(group), hamiltonian_labels)
    }

    /// su2 with `S = {σx, σy}` and `F ∝ σz`.
    pub fn su2_standard() -> Self {
        Self::for_group(Group::Su2, &["sx", "sy"]).expect("static labels")
    }

    /// su4 with `S = {β, α_x, α_y, α_z}`.
    pub fn dirac() -> Self {
        Self::for_group(Group::Su4, &["ZI", "YX", "YY", "YZ"]).expect("static labels")
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    pub fn hamiltonian_indices(&self) -> &[usize] {
        &self.hamiltonian
    }

    pub fn constraint_indices(&self) -> &[usize] {
        &self.constraint
    }

    pub fn hamiltonian_labels(&self) -> Vec<&str> {
        self.hamiltonian
            .iter()
            .map(|&k| self.basis.labels()[k].as_str())
            .collect()
    }

    pub fn constraint_labels(&self) -> Vec<&str> {
        self.constraint
            .iter()
            .map(|&k| self.basis.labels()[k].as_str())
            .collect()
    }

    fn assemble(&self, idx: &[usize], coeffs: &[f64]) -> Operator {
        let mut out = Operator::zeros(self.basis.dim());
        for (&k, &c) in idx.iter().zip(coeffs) {
            if c != 0.0 {
                out.axpy(c, self.basis.element(k));
            }
        }
        out
    }

    fn gather(&self, idx: &[usize], full: &[f64]) -> Vec<f64> {
        idx.iter().map(|&k| full[k]).collect()
    }

    /// Coefficients of H and F laid out over the whole basis.
    pub fn scatter(&self, h: &[f64], f: &[f64]) -> Vec<f64> {
        let mut full = vec![0.0; self.basis.len()];
        for (&k, &c) in self.hamiltonian.iter().zip(h) {
            full[k] = c;
        }
        for (&k, &c) in self.constraint.iter().zip(f) {
            full[k] = c;
        }
        full
    }
}

/// Invariants tracked along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monitors {
    pub tr_h2: f64,
    pub tr_f2: f64,
    pub tr_hf: f64,
}

impl Monitors {
    pub fn as_array(&self) -> [f64; 3] {
        [self.tr_h2, self.tr_f2, self.tr_hf]
    }
}

/// Coefficients `λ_i` over `S` and `Ω_j` over `Sᶜ` at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPair {
    pub time: f64,
    pub h_coeffs: Vec<f64>,
    pub f_coeffs: Vec<f64>,
}

impl OperatorPair {
    pub fn new(split: &ControlSplit, time: f64, h_coeffs: Vec<f64>, f_coeffs: Vec<f64>) -> Result<Self> {
        check_len(split.hamiltonian.len(), h_coeffs.len())?;
        check_len(split.constraint.len(), f_coeffs.len())?;
        if !time.is_finite() || h_coeffs.iter().chain(&f_coeffs).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(OperatorPair {
            time,
            h_coeffs,
            f_coeffs,
        })
    }

    /// Projects H onto `S` and F onto `Sᶜ`; fails if either has weight in the
    /// other span.
    pub fn from_matrices(split: &ControlSplit, time: f64, h: &Operator, f: &Operator) -> Result<Self> {
        let ch = split.basis.project_coefficients(h)?;
        let cf = split.basis.project_coefficients(f)?;
        let stray = |c: &[f64], idx: &[usize]| idx.iter().map(|&k| c[k].abs()).fold(0.0, f64::max);
        let h_out = stray(&ch, &split.constraint);
        if h_out > SPAN_TOL {
            return Err(Error::InvalidSplit(format!(
                "hamiltonian has weight {h_out:.3e} outside the hamiltonian span"
            )));
        }
        let f_out = stray(&cf, &split.hamiltonian);
        if f_out > SPAN_TOL {
            return Err(Error::InvalidSplit(format!(
                "constraint has weight {f_out:.3e} inside the hamiltonian span"
            )));
        }
        Self::new(
            split,
            time,
            split.gather(&split.hamiltonian, &ch),
            split.gather(&split.constraint, &cf),
        )
    }

    pub fn hamiltonian(&self, split: &ControlSplit) -> Operator {
        split.assemble(&split.hamiltonian, &self.h_coeffs)
    }

    pub fn constraint(&self, split: &ControlSplit) -> Operator {
        split.assemble(&split.constraint, &self.f_coeffs)
    }

    pub fn monitors(&self, split: &ControlSplit) -> Monitors {
        let h = self.hamiltonian(split);
        let f = self.constraint(split);
        Monitors {
            tr_h2: (&h * &h).trace().re,
            tr_f2: (&f * &f).trace().re,
            tr_hf: (&h * &f).trace().re,
        }
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Time derivative of the pair: `K = -i[H, F]` projected back onto `S` and `Sᶜ`.
pub fn brachistochrone_rhs(state: &OperatorPair, split: &ControlSplit) -> OperatorPair {
    let (dh, df) = rhs_parts(split, &state.h_coeffs, &state.f_coeffs);
    OperatorPair {
        time: state.time,
        h_coeffs: dh,
        f_coeffs: df,
    }
}

fn rhs_parts(split: &ControlSplit, h: &[f64], f: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let hm = split.assemble(&split.hamiltonian, h);
    let fm = split.assemble(&split.constraint, f);
    let k = commutator(&hm, &fm)
        .expect("both operators come from one basis")
        .scale(-I);
    let full = split.basis.project_unchecked(&k);
    (
        split.gather(&split.hamiltonian, &full),
        split.gather(&split.constraint, &full),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub time: f64,
    pub h_coeffs: Vec<f64>,
    pub f_coeffs: Vec<f64>,
    pub monitors: Monitors,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("a trajectory has at least one sample")
    }

    /// Largest `|monitor(t) - monitor(0)|` per monitor.
    pub fn monitor_drift(&self) -> [f64; 3] {
        let m0 = self.first().monitors.as_array();
        let mut drift = [0.0f64; 3];
        for s in &self.samples {
            for (d, (a, b)) in drift.iter_mut().zip(s.monitors.as_array().iter().zip(&m0)) {
                *d = d.max((a - b).abs());
            }
        }
        drift
    }
}

/// Classical RK4 with `round(t_end / h)` steps of size `h`.
///
/// A sample is recorded at step 0, every `stride` steps, and at the last step.
pub fn integrate(
    initial: &OperatorPair,
    split: &ControlSplit,
    h: f64,
    t_end: f64,
    stride: usize,
) -> Result<Trajectory> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step size must be positive, got {h}")));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!("end time must be positive, got {t_end}")));
    }
    if stride == 0 {
        return Err(Error::InvalidArgument("sample stride must be at least 1".into()));
    }
    check_len(split.hamiltonian.len(), initial.h_coeffs.len())?;
    check_len(split.constraint.len(), initial.f_coeffs.len())?;

    let nh = split.hamiltonian.len();
    let steps = ((t_end / h).round() as usize).max(1);
    let t0 = initial.time;
    let mut y: Vec<f64> = initial.h_coeffs.iter().chain(&initial.f_coeffs).copied().collect();
    if y.iter().any(|c| !c.is_finite()) {
        return Err(Error::Diverged { step: 0 });
    }

    let field = |y: &[f64]| -> Vec<f64> {
        let (dh, df) = rhs_parts(split, &y[..nh], &y[nh..]);
        dh.into_iter().chain(df).collect()
    };
    let sample = |t: f64, y: &[f64]| {
        let pair = OperatorPair {
            time: t,
            h_coeffs: y[..nh].to_vec(),
            f_coeffs: y[nh..].to_vec(),
        };
        let monitors = pair.monitors(split);
        Sample {
            time: t,
            h_coeffs: pair.h_coeffs,
            f_coeffs: pair.f_coeffs,
            monitors,
        }
    };

    let mut samples = vec![sample(t0, &y)];
    let mut tmp = vec![0.0; y.len()];
    for step in 1..=steps {
        let k1 = field(&y);
        for i in 0..y.len() {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        let k2 = field(&tmp);
        for i in 0..y.len() {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        let k3 = field(&tmp);
        for i in 0..y.len() {
            tmp[i] = y[i] + h * k3[i];
        }
        let k4 = field(&tmp);
        for i in 0..y.len() {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y.iter().any(|c| !c.is_finite()) {
            return Err(Error::Diverged { step });
        }
        if step % stride == 0 || step == steps {
            samples.push(sample(t0 + step as f64 * h, &y));
        }
    }
    Ok(Trajectory { samples })
}

/// Dirac-split coordinates of an su4 pair `H = mβ + p·α`,
/// `F = Σ Ω_ij σ_i ⊗ σ_j` (in the `α_j = σx ⊗ σ_j` representation).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiracSplitState {
    pub m: f64,
    pub p: [f64; 3],
    pub omega0: [f64; 3],
    pub omega2: [f64; 3],
    pub omega3: [f64; 3],
    pub omega10: f64,
    pub omega20: f64,
}

fn su4_index(i: usize, j: usize) -> usize {
    4 * i + j - 1
}

impl DiracSplitState {
    pub fn n_plus(&self) -> [f64; 3] {
        std::array::from_fn(|j| self.omega0[j] + self.omega3[j])
    }

    pub fn n_minus(&self) -> [f64; 3] {
        std::array::from_fn(|j| self.omega0[j] - self.omega3[j])
    }

    /// `b = [Ω_2j]`.
    pub fn b(&self) -> [f64; 3] {
        self.omega2
    }

    /// `a = Ω_10 + iΩ_20`.
    pub fn a(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.omega10, self.omega20)
    }

    pub fn energy_sq(&self) -> f64 {
        self.m * self.m + dot(&self.p, &self.p)
    }

    /// Coefficients on the canonical su4 basis (`α_j = σy ⊗ σ_j`), obtained by
    /// conjugating with the representation bridge: the map is a signed
    /// permutation.
    pub fn to_su4_coefficients(&self) -> Vec<f64> {
        let mut c = vec![0.0; 15];
        c[su4_index(3, 0)] = self.m;
        c[su4_index(2, 0)] = self.omega10;
        c[su4_index(1, 0)] = -self.omega20;
        for j in 0..3 {
            c[su4_index(2, j + 1)] = self.p[j];
            c[su4_index(0, j + 1)] = self.omega0[j];
            c[su4_index(3, j + 1)] = self.omega3[j];
            c[su4_index(1, j + 1)] = -self.omega2[j];
        }
        c
    }

    pub fn from_su4_coefficients(c: &[f64]) -> Result<Self> {
        check_len(15, c.len())?;
        Ok(DiracSplitState {
            m: c[su4_index(3, 0)],
            p: std::array::from_fn(|j| c[su4_index(2, j + 1)]),
            omega0: std::array::from_fn(|j| c[su4_index(0, j + 1)]),
            omega2: std::array::from_fn(|j| -c[su4_index(1, j + 1)]),
            omega3: std::array::from_fn(|j| c[su4_index(3, j + 1)]),
            omega10: c[su4_index(2, 0)],
            omega20: -c[su4_index(1, 0)],
        })
    }

    /// Pair over `split`, which must be su4 with `S` spanning exactly
    /// `{β, α_x, α_y, α_z}`.
    pub fn to_pair(&self, split: &ControlSplit, time: f64) -> Result<OperatorPair> {
        check_dirac_split(split)?;
        let full = self.to_su4_coefficients();
        OperatorPair::new(
            split,
            time,
            split.gather(&split.hamiltonian, &full),
            split.gather(&split.constraint, &full),
        )
    }

    pub fn from_pair(pair: &OperatorPair, split: &ControlSplit) -> Result<Self> {
        check_dirac_split(split)?;
        Self::from_su4_coefficients(&split.scatter(&pair.h_coeffs, &pair.f_coeffs))
    }

    /// Every field, in declaration order.
    pub fn to_array(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        out[0] = self.m;
        out[1..4].copy_from_slice(&self.p);
        out[4..7].copy_from_slice(&self.omega0);
        out[7..10].copy_from_slice(&self.omega2);
        out[10..13].copy_from_slice(&self.omega3);
        out[13] = self.omega10;
        out[14] = self.omega20;
        out
    }

    pub fn from_array(v: &[f64; 15]) -> Self {
        DiracSplitState {
            m: v[0],
            p: [v[1], v[2], v[3]],
            omega0: [v[4], v[5], v[6]],
            omega2: [v[7], v[8], v[9]],
            omega3: [v[10], v[11], v[12]],
            omega10: v[13],
            omega20: v[14],
        }
    }

    pub const FIELD_NAMES: [&'static str; 15] = [
        "m", "p_x", "p_y", "p_z", "Omega01", "Omega02", "Omega03", "Omega21", "Omega22",
        "Omega23", "Omega31", "Omega32", "Omega33", "Omega10", "Omega20",
    ];
}

fn check_dirac_split(split: &ControlSplit) -> Result<()> {
    if split.basis.group() != Group::Su4 {
        return Err(Error::InvalidSplit("dirac coordinates need su4".into()));
    }
    let mut s: Vec<String> = split.hamiltonian_labels().iter().map(|l| l.to_string()).collect();
    s.sort();
    let mut want: Vec<String> = [(3, 0), (2, 1), (2, 2), (2, 3)]
        .iter()
        .map(|&(i, j)| su4_label(i, j))
        .collect();
    want.sort();
    if s != want {
        return Err(Error::InvalidSplit(format!(
            "hamiltonian span must be {{{}}}",
            want.join(", ")
        )));
    }
    Ok(())
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Component equations as printed for the Dirac split:
/// `Ω̇_0j = Ω̇_2j = 0`, `(Ω̇_10, Ω̇_3j) = 2(-m, p_j)`,
/// `(ṁ, ṗ) = 2Θ(m, p)` and `Ω̇_20 = 2(mΩ_10 - p·Ω_3)`.
pub fn dirac_split_rhs(s: &DiracSplitState) -> DiracSplitState {
    let [o01, o02, o03] = s.omega0;
    let [o21, o22, o23] = s.omega2;
    let [px, py, pz] = s.p;
    let m = s.m;
    DiracSplitState {
        m: 2.0 * (o21 * px + o22 * py + o23 * pz),
        p: [
            2.0 * (-o21 * m + o03 * py - o02 * pz),
            2.0 * (-o22 * m - o03 * px + o01 * pz),
            2.0 * (-o23 * m + o02 * px - o01 * py),
        ],
        omega0: [0.0; 3],
        omega2: [0.0; 3],
        omega3: [2.0 * px, 2.0 * py, 2.0 * pz],
        omega10: -2.0 * m,
        omega20: 2.0 * (m * s.omega10 - dot(&s.p, &s.omega3)),
    }
}

/// Vector-form equations as printed:
/// `ṗ = -m(n₊ + n₋) - (n₊ + n₋) × p`, `ξ̇_c = mξ_r + p·(n₊ - n₋)`,
/// `ṅ₊ + ṅ₋ = 4p` with `ṅ₊ = ṅ₋`, `ξ̇_r = -m`, `ṁ = b·p`, `ḃ = 0`,
/// where `ξ_r = Ω_10` and `ξ_c = Ω_20`.
pub fn dirac_vector_rhs(s: &DiracSplitState) -> DiracSplitState {
    let np = s.n_plus();
    let nm = s.n_minus();
    let sum: [f64; 3] = std::array::from_fn(|j| np[j] + nm[j]);
    let diff: [f64; 3] = std::array::from_fn(|j| np[j] - nm[j]);
    let c = cross(&sum, &s.p);
    // ṅ₊ = ṅ₋ = 2p, so Ω̇_0 = 2p and Ω̇_3 = 0.
    DiracSplitState {
        m: dot(&s.b(), &s.p),
        p: std::array::from_fn(|j| -s.m * sum[j] - c[j]),
        omega0: std::array::from_fn(|j| 2.0 * s.p[j]),
        omega2: [0.0; 3],
        omega3: [0.0; 3],
        omega10: -s.m,
        omega20: s.m * s.omega10 + dot(&s.p, &diff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::convention_bridge;
    use crate::matrix::{kron, pauli};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng) -> DiracSplitState {
        let mut v = [0.0; 15];
        for x in v.iter_mut() {
            *x = rng.gen_range(-2.0..2.0);
        }
        DiracSplitState::from_array(&v)
    }

    #[test]
    fn split_validation() {
        assert!(ControlSplit::for_group(Group::Su2, &[]).is_err());
        assert!(ControlSplit::for_group(Group::Su2, &["sx", "sx"]).is_err());
        assert!(ControlSplit::for_group(Group::Su2, &["sw"]).is_err());
        let s = ControlSplit::su2_standard();
        assert_eq!(s.constraint_labels(), vec!["sz"]);
        let d = ControlSplit::dirac();
        assert_eq!(d.hamiltonian_indices().len(), 4);
        assert_eq!(d.constraint_indices().len(), 11);
    }

    #[test]
    fn from_matrices_rejects_out_of_span() {
        let s = ControlSplit::su2_standard();
        let h = &pauli(1) + &pauli(3);
        assert!(OperatorPair::from_matrices(&s, 0.0, &h, &pauli(3)).is_err());
        assert!(OperatorPair::from_matrices(&s, 0.0, &pauli(1), &pauli(2)).is_err());
        let ok = OperatorPair::from_matrices(&s, 0.0, &pauli(1), &pauli(3).scale_re(-0.5)).unwrap();
        assert_eq!(ok.h_coeffs, vec![1.0, 0.0]);
        assert_eq!(ok.f_coeffs, vec![-0.5]);
    }

    #[test]
    fn zero_constraint_gives_zero_derivative() {
        let s = ControlSplit::dirac();
        let pair = OperatorPair::new(&s, 0.0, vec![1.0, 0.3, -0.2, 0.5], vec![0.0; 11]).unwrap();
        let d = brachistochrone_rhs(&pair, &s);
        assert!(d.h_coeffs.iter().chain(&d.f_coeffs).all(|&x| x == 0.0));
    }

    #[test]
    fn su2_example_derivative() {
        let s = ControlSplit::su2_standard();
        let lambda = 0.7;
        let pair = OperatorPair::new(&s, 0.0, vec![1.0, 0.0], vec![lambda]).unwrap();
        let d = brachistochrone_rhs(&pair, &s);
        assert!((d.h_coeffs[0]).abs() < 1e-15);
        assert!((d.h_coeffs[1] + 2.0 * lambda).abs() < 1e-15);
        assert_eq!(d.f_coeffs, vec![0.0]);
    }

    #[test]
    fn flat_trajectory_without_constraint() {
        let s = ControlSplit::su2_standard();
        let pair = OperatorPair::new(&s, 0.0, vec![0.4, -1.1], vec![0.0]).unwrap();
        let tr = integrate(&pair, &s, 0.01, 1.0, 10).unwrap();
        assert_eq!(tr.samples.len(), 11);
        for smp in &tr.samples {
            assert_eq!(smp.h_coeffs, pair.h_coeffs);
        }
        assert!((tr.last().time - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integrate_rejects_bad_arguments() {
        let s = ControlSplit::su2_standard();
        let pair = OperatorPair::new(&s, 0.0, vec![1.0, 0.0], vec![0.1]).unwrap();
        assert!(integrate(&pair, &s, 0.0, 1.0, 1).is_err());
        assert!(integrate(&pair, &s, 0.1, -1.0, 1).is_err());
        assert!(integrate(&pair, &s, 0.1, 1.0, 0).is_err());
    }

    #[test]
    fn diverging_run_reports_step() {
        let s = ControlSplit::su2_standard();
        let pair = OperatorPair::new(&s, 0.0, vec![1e300, 1e300], vec![1e300]).unwrap();
        match integrate(&pair, &s, 0.1, 1.0, 1) {
            Err(Error::Diverged { step }) => assert_eq!(step, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn su2_rotation_matches_closed_form() {
        let s = ControlSplit::su2_standard();
        let pair = OperatorPair::new(&s, 0.0, vec![1.0, 0.0], vec![-0.5]).unwrap();
        let tr = integrate(&pair, &s, 1e-3, std::f64::consts::TAU, 100).unwrap();
        for smp in &tr.samples {
            let t = smp.time;
            assert!((smp.h_coeffs[0] - t.cos()).abs() < 1e-9);
            assert!((smp.h_coeffs[1] - t.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn split_printed_examples() {
        let d = dirac_split_rhs(&DiracSplitState {
            m: 1.0,
            p: [0.0, 0.0, 2.0],
            ..Default::default()
        });
        assert_eq!(d.omega10, -2.0);
        assert_eq!(d.omega3[2], 4.0);

        let d = dirac_split_rhs(&DiracSplitState {
            m: 1.0,
            p: [1.0, 0.0, 0.0],
            omega2: [1.0, 0.0, 0.0],
            ..Default::default()
        });
        assert_eq!(d.m, 2.0);
        assert_eq!(d.p[0], -2.0);

        let d = dirac_split_rhs(&DiracSplitState {
            m: 1.0,
            omega10: 1.0,
            ..Default::default()
        });
        assert_eq!(d.omega20, 2.0);
    }

    #[test]
    fn vector_printed_examples() {
        let d = dirac_vector_rhs(&DiracSplitState {
            m: 1.3,
            p: [0.2, -0.4, 0.9],
            omega2: [1.0, 2.0, 3.0],
            ..Default::default()
        });
        assert_eq!(d.p, [0.0; 3]);

        let d = dirac_vector_rhs(&DiracSplitState {
            m: 1.0,
            p: [1.0, 0.0, 0.0],
            omega2: [1.0, 0.0, 0.0],
            ..Default::default()
        });
        assert_eq!(d.m, 1.0);
        let s: Vec<f64> = (0..3).map(|j| d.n_plus()[j] + d.n_minus()[j]).collect();
        assert_eq!(s, vec![4.0, 0.0, 0.0]);
    }

    #[test]
    fn split_dictionary_matches_bridge() {
        // Build H + F in the σx-form representation and carry it over.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let st = random_state(&mut rng);
        let g = |i: usize, j: usize| kron(&pauli(i), &pauli(j));
        let mut op = g(3, 0).scale_re(st.m);
        op.axpy(st.omega10, &g(1, 0));
        op.axpy(st.omega20, &g(2, 0));
        for j in 0..3 {
            op.axpy(st.p[j], &g(1, j + 1));
            op.axpy(st.omega0[j], &g(0, j + 1));
            op.axpy(st.omega2[j], &g(2, j + 1));
            op.axpy(st.omega3[j], &g(3, j + 1));
        }
        let b = convention_bridge();
        let canon = &(&b * &op) * &b.adjoint();
        let c = build_basis(Group::Su4).project_coefficients(&canon).unwrap();
        let want = st.to_su4_coefficients();
        for k in 0..15 {
            assert!((c[k] - want[k]).abs() < 1e-14, "index {k}");
        }
        let back = DiracSplitState::from_su4_coefficients(&c).unwrap().to_array();
        for (x, y) in back.iter().zip(st.to_array().iter()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn pair_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let split = ControlSplit::dirac();
        let st = random_state(&mut rng);
        let pair = st.to_pair(&split, 0.0).unwrap();
        let back = DiracSplitState::from_pair(&pair, &split).unwrap();
        assert_eq!(back, st);
        assert!(st.to_pair(&ControlSplit::su2_standard(), 0.0).is_err());
    }

    #[test]
    fn generic_engine_against_component_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let split = ControlSplit::dirac();
        for _ in 0..50 {
            let st = random_state(&mut rng);
            let pair = st.to_pair(&split, 0.0).unwrap();
            let g = DiracSplitState::from_pair(&brachistochrone_rhs(&pair, &split), &split).unwrap();
            let p = dirac_split_rhs(&st);
            assert!((g.m - p.m).abs() < 1e-12);
            assert!((g.omega20 - p.omega20).abs() < 1e-12);
            for j in 0..3 {
                assert!((g.p[j] - p.p[j]).abs() < 1e-12);
                assert!(g.omega0[j].abs() < 1e-12 && g.omega2[j].abs() < 1e-12);
                // printed Ω̇_3j lacks the factor Ω_20
                assert!((g.omega3[j] - st.omega20 * p.omega3[j]).abs() < 1e-12);
            }
            assert!((g.omega10 - st.omega20 * p.omega10).abs() < 1e-12);
        }
    }
}

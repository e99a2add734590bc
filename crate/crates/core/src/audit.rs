//! Numerical referee for the printed identities of the construction.
//!
//! Every check draws its probes from a ChaCha8 stream keyed by the seed and
//! the check's position in the catalog, so a check gives the same result run
//! alone or inside [`full_report`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brachistochrone::{
    brachistochrone_rhs, dirac_split_rhs, dirac_vector_rhs, integrate, ControlSplit, DiracSplitState,
    OperatorPair,
};
use crate::closedforms::{
    dirac_d0, dirac_hamiltonian, epsilon_product, su4_constraint_t, su4_eigenframe,
    su4_eigenframe_sigma_x, DiracParameters, Su2Family, Su3Family, Su4Family,
    UnitaryFamily, CONVENTIONS,
};
use crate::error::{Error, Result};
use crate::generators::{dirac_operators, verify_algebra};
use crate::matrix::{Operator, I};
use crate::oracle::{family_rotating_propagator, time_ordered_exponential, HamiltonianSchedule, STEPS_PER_PERIOD};

/// Probes per randomized check.
pub const PROBES: usize = 100;

/// Accuracy floors of the approximate comparisons; the effective tolerance is
/// the larger of these and the requested one.
pub const ORACLE_FLOOR: f64 = 1e-6;
pub const FINITE_DIFF_FLOOR: f64 = 2e-6;

const FD_STEP: f64 = 1e-6;

pub const CATALOG: [&str; 13] = [
    "algebra_eq2_4",
    "kg_identity",
    "sphere_constraint",
    "eigenframe_inverse",
    "isometry_su2",
    "isometry_su3",
    "isometry_su4",
    "commutator_eq26",
    "propagator_question",
    "ode_transcriptions",
    "epsilon_identity",
    "q_factorization",
    "constraint_orthogonality",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The printed form fails but a single alternative convention passes.
    Resolved(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Fail => f.write_str("FAIL"),
            Status::Resolved(token) => write!(f, "RESOLVED:{token}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub max_error: f64,
    pub detail: String,
}

impl CheckResult {
    /// `CHECK <id> <status> max_err=<x.xxxe±yy> <detail>`.
    pub fn to_line(&self) -> String {
        format!(
            "CHECK {} {} max_err={} {}",
            self.check_id,
            self.status,
            sci(self.max_error),
            self.detail
        )
    }
}

/// C-style `%.3e`: three decimals, signed two-digit exponent.
pub fn sci(x: f64) -> String {
    exp_notation(x, 3)
}

/// `x` with `digits` decimals and a C-style exponent (`1.500e-05`).
pub fn exp_notation(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}").to_lowercase();
    }
    // fold -0 into 0
    let s = format!("{:.*e}", digits, x + 0.0);
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub results: Vec<CheckResult>,
}

impl AuditReport {
    pub fn has_failures(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }
}

/// Runs every check in catalog order.
pub fn full_report(tol: f64, seed: u64) -> Result<AuditReport> {
    let results = CATALOG
        .iter()
        .map(|id| run_check(id, tol, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(AuditReport { results })
}

pub fn run_check(check_id: &str, tol: f64, seed: u64) -> Result<CheckResult> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    let index = CATALOG
        .iter()
        .position(|c| *c == check_id)
        .ok_or_else(|| Error::UnknownCheck(check_id.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut p = Probe { rng };
    let (status, max_error, detail) = match check_id {
        "algebra_eq2_4" => algebra(&mut p, tol),
        "kg_identity" => kg_identity(&mut p, tol),
        "sphere_constraint" => sphere_constraint(&mut p, tol),
        "eigenframe_inverse" => eigenframe_inverse(&mut p, tol),
        "isometry_su2" => isometry_su2(&mut p, tol),
        "isometry_su3" => isometry_su3(&mut p, tol),
        "isometry_su4" => isometry_su4(&mut p, tol),
        "commutator_eq26" => commutator_sign(&mut p, tol),
        "propagator_question" => propagator_question(&mut p, tol)?,
        "ode_transcriptions" => ode_transcriptions(&mut p, tol)?,
        "epsilon_identity" => epsilon_identity(&mut p, tol),
        "q_factorization" => q_factorization(&mut p, tol),
        "constraint_orthogonality" => constraint_orthogonality(&mut p, tol)?,
        _ => unreachable!("catalog entries are exhaustive"),
    };
    Ok(CheckResult {
        check_id: check_id.to_string(),
        status,
        max_error,
        detail,
    })
}

type Outcome = (Status, f64, String);

struct Probe {
    rng: ChaCha8Rng,
}

impl Probe {
    fn uniform(&mut self) -> f64 {
        self.rng.gen_range(-2.0..=2.0)
    }

    fn vec3(&mut self) -> [f64; 3] {
        [self.uniform(), self.uniform(), self.uniform()]
    }

    fn params(&mut self) -> DiracParameters {
        loop {
            let m = self.uniform();
            let p = self.vec3();
            if let Ok(params) = DiracParameters::with_default_theta(m, p) {
                return params;
            }
        }
    }

    /// Parameters with `|p| > 0.1`, where the block eigenframe is defined.
    fn frame_params(&mut self) -> DiracParameters {
        loop {
            let params = self.params();
            if params.p_norm_sq() > 0.01 {
                return params;
            }
        }
    }
}

/// Printed form first, then labelled alternatives. PASS if the printed form
/// is within `tol`; RESOLVED if an alternative is (the most accurate one when
/// several are); FAIL otherwise. The resolved token must match `expected`,
/// the value held in the conventions record.
fn decide(printed: f64, alternatives: &[(String, f64)], tol: f64, expected: &str) -> (Status, f64) {
    if printed <= tol {
        return (Status::Pass, printed);
    }
    let best = alternatives
        .iter()
        .filter(|(_, e)| *e <= tol)
        .min_by(|a, b| a.1.total_cmp(&b.1));
    match best {
        Some((token, err)) if token == expected => (Status::Resolved(token.clone()), *err),
        _ => (Status::Fail, printed),
    }
}

fn simple(err: f64, tol: f64) -> Status {
    if err <= tol {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn sign_token(name: &str, s: f64) -> String {
    format!("{name}={}", if s < 0.0 { "-1" } else { "+1" })
}

fn conj(u: &Operator, h: &Operator) -> Operator {
    &(u * h) * &u.adjoint()
}

fn algebra(p: &mut Probe, tol: f64) -> Outcome {
    let ops = dirac_operators();
    let report = verify_algebra(&ops);
    let mut block_err = 0.0f64;
    for _ in 0..PROBES {
        let m = p.uniform();
        let mom = p.vec3();
        let pd = crate::closedforms::pauli_dot(mom);
        let id = Operator::identity(2);
        let shown = Operator::from_blocks(&id.scale_re(m), &pd.scale(-I), &pd.scale(I), &id.scale_re(-m))
            .expect("2x2 blocks");
        block_err = block_err.max(ops.hamiltonian(m, mom).max_abs_diff(&shown));
    }
    let err = report.max_deviation().max(block_err);
    let detail = format!(
        "relations={} relation_err={} block_err={}",
        report.relations.len(),
        sci(report.max_deviation()),
        sci(block_err)
    );
    (simple(err, tol), err, detail)
}

fn kg_identity(p: &mut Probe, tol: f64) -> Outcome {
    let mut err = 0.0f64;
    for _ in 0..PROBES {
        let params = p.params();
        let h = dirac_hamiltonian(&params, p.uniform());
        let e2 = params.energy() * params.energy();
        err = err.max((&h * &h).max_abs_diff(&Operator::identity(4).scale_re(e2)));
    }
    (simple(err, tol), err, format!("probes={PROBES}"))
}

fn sphere_constraint(p: &mut Probe, tol: f64) -> Outcome {
    let norms = [1.0, 2.0, 4.0, 8.0];
    let mut errs = [0.0f64; 4];
    for _ in 0..PROBES {
        let params = p.params();
        let h = dirac_hamiltonian(&params, p.uniform());
        let tr = (&h * &h).trace().re;
        let e2 = params.energy() * params.energy();
        for (e, n) in errs.iter_mut().zip(norms) {
            *e = e.max((tr / n - e2).abs());
        }
    }
    let alts: Vec<(String, f64)> = norms
        .iter()
        .zip(errs)
        .filter(|(n, _)| **n != 2.0)
        .map(|(n, e)| (format!("trace_norm={n}"), e))
        .collect();
    let expected = format!("trace_norm={}", CONVENTIONS.trace_norm);
    let (status, err) = decide(errs[1], &alts, tol, &expected);
    let detail = format!(
        "printed Tr(H^2)/2 err={} Tr(H^2)/4 err={}",
        sci(errs[1]),
        sci(errs[2])
    );
    (status, err, detail)
}

fn eigenframe_inverse(p: &mut Probe, tol: f64) -> Outcome {
    let id = Operator::identity(4);
    let (mut inv_err, mut raw_h_err, mut canon_h_err) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..PROBES {
        let params = p.frame_params();
        let t = p.uniform();
        let raw = su4_eigenframe_sigma_x(&params, t).expect("|p| > 0.1");
        let canon = su4_eigenframe(&params, t).expect("|p| > 0.1");
        for f in [&raw, &canon] {
            inv_err = inv_err
                .max((&f.w * &f.w_inv).max_abs_diff(&id))
                .max((&f.w_inv * &f.w).max_abs_diff(&id));
        }
        let h = dirac_hamiltonian(&params, t);
        raw_h_err = raw_h_err.max(raw.hamiltonian().max_abs_diff(&h));
        canon_h_err = canon_h_err.max(canon.hamiltonian().max_abs_diff(&h));
    }
    let detail = format!(
        "W*Winv err={} printed WD0Winv-H={} bridged WD0Winv-H={}",
        sci(inv_err),
        sci(raw_h_err),
        sci(canon_h_err)
    );
    (simple(inv_err, tol), inv_err, detail)
}

fn isometry_error(fam: &dyn UnitaryFamily, t: f64, s: f64) -> f64 {
    conj(&fam.propagator(t, s), &fam.hamiltonian(s)).max_abs_diff(&fam.hamiltonian(t))
}

fn isometry_su2(p: &mut Probe, tol: f64) -> Outcome {
    let mut err = 0.0f64;
    for _ in 0..PROBES {
        let (t, s) = (p.uniform(), p.uniform());
        err = err.max(isometry_error(&Su2Family, t, s));
    }
    (simple(err, tol), err, format!("probes={PROBES}"))
}

fn isometry_su3(p: &mut Probe, tol: f64) -> Outcome {
    let (mut printed, mut flipped, mut unit) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..PROBES {
        let (theta, t, s) = (p.uniform(), p.uniform(), p.uniform());
        printed = printed.max(isometry_error(&Su3Family::printed(theta), t, s));
        flipped = flipped.max(isometry_error(&Su3Family { theta, u02_sign: 1.0 }, t, s));
        unit = unit.max(crate::matrix::unitarity_deviation(&Su3Family::printed(theta).propagator(t, s)));
    }
    let alts = vec![("u02_sign=+1".to_string(), flipped)];
    let (status, err) = decide(printed, &alts, tol, &sign_token("u02_sign", CONVENTIONS.su3_u02_sign));
    let detail = format!(
        "printed u02_sign=-1 err={} (unitarity err={}) u02_sign=+1 err={}",
        sci(printed),
        sci(unit),
        sci(flipped)
    );
    (status, err, detail)
}

fn isometry_su4(p: &mut Probe, tol: f64) -> Outcome {
    let (mut plus, mut minus) = (0.0f64, 0.0f64);
    for _ in 0..PROBES {
        let params = p.params();
        let (t, s) = (p.uniform(), p.uniform());
        plus = plus.max(isometry_error(&Su4Family::with_phase_sign(params, 1.0), t, s));
        minus = minus.max(isometry_error(&Su4Family::with_phase_sign(params, -1.0), t, s));
    }
    let alts = vec![("phase_sign=-1".to_string(), minus)];
    let expected = sign_token("phase_sign", CONVENTIONS.su4_phase_sign);
    let (status, err) = decide(plus, &alts, tol, &expected);
    let detail = format!("printed phase_sign=+1 err={} phase_sign=-1 err={}", sci(plus), sci(minus));
    (status, err, detail)
}

fn commutator_sign(p: &mut Probe, tol: f64) -> Outcome {
    let tol = tol.max(FINITE_DIFF_FLOOR);
    let (mut printed, mut flipped) = (0.0f64, 0.0f64);
    for _ in 0..PROBES {
        let params = p.params();
        let t = p.uniform();
        let idh = (&dirac_hamiltonian(&params, t + FD_STEP) - &dirac_hamiltonian(&params, t - FD_STEP))
            .scale(I / (2.0 * FD_STEP));
        let h = dirac_hamiltonian(&params, t);
        let d0 = dirac_d0(&params);
        let c = &(&h * &d0) - &(&d0 * &h);
        printed = printed.max(idh.max_abs_diff(&c));
        flipped = flipped.max(idh.max_abs_diff(&-&c));
    }
    let alts = vec![("frame_sign=-1".to_string(), flipped)];
    let expected = sign_token("frame_sign", CONVENTIONS.frame_sign);
    let (status, err) = decide(printed, &alts, tol, &expected);
    let detail = format!(
        "i dH/dt vs [H,D0] err={} vs [D0,H] err={} fd_step={}",
        sci(printed),
        sci(flipped),
        sci(FD_STEP)
    );
    (status, err, detail)
}

/// `max |i dU/dt(t,s) - H(t) U(t,s)|` by central differences.
fn schrodinger_residual(h: &Operator, u: impl Fn(f64) -> Operator, t: f64) -> f64 {
    let du = (&u(t + FD_STEP) - &u(t - FD_STEP)).scale(I / (2.0 * FD_STEP));
    du.max_abs_diff(&(h * &u(t)))
}

fn propagator_question(p: &mut Probe, tol: f64) -> Result<Outcome> {
    let fd_tol = tol.max(FINITE_DIFF_FLOOR);
    let or_tol = tol.max(ORACLE_FLOOR);
    let theta = p.uniform();
    let params = p.params();
    let fams: Vec<(&str, Box<dyn UnitaryFamily>)> = vec![
        ("su2", Box::new(Su2Family)),
        ("su3", Box::new(Su3Family::new(theta))),
        ("su4", Box::new(Su4Family::new(params))),
    ];
    let mut closed_worst = 0.0f64;
    let mut v_worst = 0.0f64;
    let mut oracle_worst = 0.0f64;
    let mut parts = Vec::new();
    for (name, fam) in &fams {
        let (mut u_err, mut v_err) = (0.0f64, 0.0f64);
        for _ in 0..PROBES / fams.len() + 1 {
            let (t, s) = (p.uniform(), p.uniform());
            let h = fam.hamiltonian(t);
            u_err = u_err.max(schrodinger_residual(&h, |x| fam.propagator(x, s), t));
            let v = |x: f64| family_rotating_propagator(fam.as_ref(), x, s).expect("family generators are Hermitian");
            v_err = v_err.max(schrodinger_residual(&h, v, t));
        }
        let t1 = fam.period();
        let sched = HamiltonianSchedule::from_family(fam.as_ref());
        let oracle = time_ordered_exponential(&sched, 0.0, t1, STEPS_PER_PERIOD)?;
        let o_err = oracle.max_abs_diff(&family_rotating_propagator(fam.as_ref(), t1, 0.0)?);
        closed_worst = closed_worst.max(u_err);
        v_worst = v_worst.max(v_err);
        oracle_worst = oracle_worst.max(o_err);
        let flag = |e: f64, t: f64| if e <= t { "PASS" } else { "FAIL" };
        parts.push(format!(
            "{name}: U:{}({}) V:{}({}) oracle:{}",
            flag(u_err, fd_tol),
            sci(u_err),
            flag(v_err, fd_tol),
            sci(v_err),
            sci(o_err)
        ));
    }
    // The printed reading holds only if every closed form passes; the
    // alternative needs V to pass both the residual and the oracle.
    let alt_err = v_worst.max(oracle_worst);
    let status = if closed_worst <= fd_tol {
        Status::Pass
    } else if v_worst <= fd_tol && oracle_worst <= or_tol && !CONVENTIONS.closed_form_is_schrodinger {
        Status::Resolved("isometry_only".into())
    } else {
        Status::Fail
    };
    let err = match status {
        Status::Resolved(_) => alt_err,
        _ => closed_worst,
    };
    Ok((status, err, parts.join("; ")))
}

fn ode_transcriptions(p: &mut Probe, tol: f64) -> Result<Outcome> {
    let split = ControlSplit::dirac();
    // [eq13, eq14, eq15, eq16, eq17], [eq45, eq46, eq47, n+=n-, xi_r, m=b.p]
    let mut split_res = [0.0f64; 5];
    let mut vec_res = [0.0f64; 6];
    let mut eq15_scaled = 0.0f64;
    // least-squares factor over the equations that share one
    let (mut gs, mut ss) = (0.0, 0.0);
    let factor = CONVENTIONS.ode_factor;
    for _ in 0..PROBES {
        let mut v = [0.0; 15];
        for x in v.iter_mut() {
            *x = p.uniform();
        }
        let st = DiracSplitState::from_array(&v);
        let pair = st.to_pair(&split, 0.0)?;
        let g = DiracSplitState::from_pair(&brachistochrone_rhs(&pair, &split), &split)?;
        let s = dirac_split_rhs(&st);
        let w = dirac_vector_rhs(&st);
        for (a, b) in [(g.m, s.m), (g.omega20, s.omega20), (g.p[0], s.p[0]), (g.p[1], s.p[1]), (g.p[2], s.p[2])] {
            gs += a * b;
            ss += b * b;
        }
        let d = |a: f64, b: f64| (a - factor * b).abs();
        let d3 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|j| d(a[j], b[j])).fold(0.0, f64::max);

        split_res[0] = split_res[0].max(d(g.m, s.m));
        split_res[1] = split_res[1].max(d3(&g.omega0, &s.omega0)).max(d3(&g.omega2, &s.omega2));
        split_res[2] = split_res[2].max(d(g.omega10, s.omega10)).max(d3(&g.omega3, &s.omega3));
        split_res[3] = split_res[3].max(d3(&g.p, &s.p));
        split_res[4] = split_res[4].max(d(g.omega20, s.omega20));
        let o20 = st.omega20;
        eq15_scaled = eq15_scaled
            .max(d(g.omega10, o20 * s.omega10))
            .max((0..3).map(|j| d(g.omega3[j], o20 * s.omega3[j])).fold(0.0, f64::max));

        let sum_g: [f64; 3] = std::array::from_fn(|j| 2.0 * g.omega0[j]);
        let sum_w: [f64; 3] = std::array::from_fn(|j| 2.0 * w.omega0[j]);
        vec_res[0] = vec_res[0].max(d3(&g.p, &w.p));
        vec_res[1] = vec_res[1].max(d(g.omega20, w.omega20));
        vec_res[2] = vec_res[2].max(d3(&sum_g, &sum_w));
        // ṅ₊ - ṅ₋ = 2Ω̇_3
        vec_res[3] = vec_res[3].max((0..3).map(|j| (2.0 * g.omega3[j]).abs()).fold(0.0, f64::max));
        vec_res[4] = vec_res[4].max(d(g.omega10, w.omega10));
        vec_res[5] = vec_res[5].max(d(g.m, w.m));
    }
    let err = split_res.iter().chain(&vec_res).fold(0.0f64, |a, &b| a.max(b));
    let status = simple(err, tol);
    let names_s = ["eq13", "eq14", "eq15", "eq16", "eq17"];
    let names_v = ["eq45", "eq46", "eq47", "n+=n-", "xi_r=-m", "m=b.p"];
    let mut parts = vec![format!("ode_factor={factor} fitted={}", sci(gs / ss))];
    for (n, e) in names_s.iter().zip(split_res) {
        parts.push(format!("{n}={}", sci(e)));
    }
    parts.push(format!("eq15*Omega20={}", sci(eq15_scaled)));
    for (n, e) in names_v.iter().zip(vec_res) {
        parts.push(format!("{n}={}", sci(e)));
    }
    Ok((status, err, parts.join(" ")))
}

fn epsilon_identity(p: &mut Probe, tol: f64) -> Outcome {
    let mut err = 0.0f64;
    for _ in 0..PROBES {
        let mom = p.vec3();
        let n2: f64 = mom.iter().map(|x| x * x).sum();
        let want = Operator::identity(2).scale_re(n2);
        let (a, b) = epsilon_product(mom);
        err = err.max(a.max_abs_diff(&want)).max(b.max_abs_diff(&want));
    }
    (simple(err, tol), err, format!("probes={PROBES}"))
}

fn q_factorization(p: &mut Probe, tol: f64) -> Outcome {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let gate = Operator::from_real_rows([[r, -r, 0.0], [r, r, 0.0], [0.0, 0.0, 1.0]]);
    let q0_err = Su3Family::new(0.0).gate(0.0).max_abs_diff(&gate);
    let (mut printed, mut flipped) = (q0_err, q0_err);
    for _ in 0..PROBES {
        let (theta, t, s) = (p.uniform(), p.uniform(), p.uniform());
        let q = Su3Family::new(theta);
        let qq = &q.gate(t) * &q.gate(s).adjoint();
        printed = printed.max(qq.max_abs_diff(&Su3Family::printed(theta).propagator(t, s)));
        flipped = flipped.max(qq.max_abs_diff(&Su3Family { theta, u02_sign: 1.0 }.propagator(t, s)));
    }
    let alts = vec![("u02_sign=+1".to_string(), flipped)];
    let (status, err) = decide(printed, &alts, tol, &sign_token("u02_sign", CONVENTIONS.su3_u02_sign));
    let detail = format!(
        "Q(0) err={} QQ^H vs printed U err={} vs u02_sign=+1 err={}",
        sci(q0_err),
        sci(printed),
        sci(flipped)
    );
    (status, err, detail)
}

fn constraint_orthogonality(p: &mut Probe, tol: f64) -> Result<Outcome> {
    let split = ControlSplit::dirac();
    let mut flow_err = 0.0f64;
    for _ in 0..5 {
        let h: Vec<f64> = (0..4).map(|_| p.uniform()).collect();
        let f: Vec<f64> = (0..11).map(|_| p.uniform()).collect();
        let pair = OperatorPair::new(&split, 0.0, h, f)?;
        let tr = integrate(&pair, &split, 1e-2, 1.0, 10)?;
        for s in &tr.samples {
            flow_err = flow_err.max(s.monitors.tr_hf.abs());
        }
    }
    let mut closed_err = 0.0f64;
    for _ in 0..PROBES {
        let params = p.params();
        let mut f0: Vec<f64> = (0..15).map(|_| p.uniform()).collect();
        for &k in split.hamiltonian_indices() {
            f0[k] = 0.0;
        }
        let t = p.uniform();
        let ft = su4_constraint_t(&f0, &params, t)?;
        closed_err = closed_err.max((&dirac_hamiltonian(&params, t) * &ft).trace().norm());
    }
    let err = flow_err.max(closed_err);
    let detail = format!("flow Tr(HF)={} closed-form Tr(HF)={}", sci(flow_err), sci(closed_err));
    Ok((simple(err, tol), err, detail))
}

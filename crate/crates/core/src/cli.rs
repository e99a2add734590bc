//! Command-line front end: run-config parsing, subcommand dispatch and text
//! output.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::audit::{exp_notation, full_report};
use crate::brachistochrone::{integrate, ControlSplit, OperatorPair, Trajectory};
use crate::closedforms::{DiracParameters, Su2Family, Su3Family, Su4Family, UnitaryFamily, DEFAULT_THETA};
use crate::error::{Error, Result};
use crate::generators::{build_basis, Group};
use crate::matrix::Operator;
use crate::oracle::{default_steps, family_rotating_propagator, time_ordered_exponential, HamiltonianSchedule};

/// Exit code for invalid input.
pub const EXIT_USAGE: i32 = 2;

/// Integration run read from a config file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub group: Group,
    pub split: Vec<String>,
    pub h_init: Vec<(String, f64)>,
    pub f_init: Vec<(String, f64)>,
    pub h: f64,
    pub t_end: f64,
    pub stride: usize,
    pub seed: u64,
}

impl RunConfig {
    /// The split and the initial pair; coefficients not listed are zero.
    pub fn initial_state(&self) -> Result<(ControlSplit, OperatorPair)> {
        let labels: Vec<&str> = self.split.iter().map(String::as_str).collect();
        let split = ControlSplit::for_group(self.group, &labels)?;
        let place = |coeffs: &[(String, f64)], idx: &[usize], what: &str| -> Result<Vec<f64>> {
            let mut out = vec![0.0; idx.len()];
            for (label, value) in coeffs {
                let k = split.basis().index_of(label)?;
                let pos = idx.iter().position(|&i| i == k).ok_or_else(|| {
                    Error::InvalidSplit(format!("`{label}` is not in the {what} span"))
                })?;
                out[pos] = *value;
            }
            Ok(out)
        };
        let h = place(&self.h_init, split.hamiltonian_indices(), "hamiltonian")?;
        let f = place(&self.f_init, split.constraint_indices(), "constraint")?;
        let pair = OperatorPair::new(&split, 0.0, h, f)?;
        Ok((split, pair))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Top,
    Hamiltonian,
    Constraint,
}

/// Parses the `key = value` run format.
///
/// Top-level keys: `group`, `split` (comma-separated labels), `h`, `T`, and
/// optionally `stride` (default 1) and `seed` (default 0). Sections
/// `[hamiltonian]` and `[constraint]` hold `label = coefficient` lines.
/// `#` starts a comment.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut section = Section::Top;
    let mut top: Vec<(String, String, usize)> = Vec::new();
    let mut h_init = Vec::new();
    let mut f_init = Vec::new();
    let mut seen: HashSet<(u8, String)> = HashSet::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| Error::ConfigLine { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(format!("malformed section header `{line}`")))?;
            section = match name.trim() {
                "hamiltonian" => Section::Hamiltonian,
                "constraint" => Section::Constraint,
                other => return Err(err(format!("unknown section `{other}`"))),
            };
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(err(format!("expected `key = value`, got `{line}`")));
        }
        if !seen.insert((section as u8, key.to_string())) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        match section {
            Section::Top => {
                if !matches!(key, "group" | "split" | "h" | "T" | "stride" | "seed") {
                    return Err(err(format!("unknown key `{key}`")));
                }
                top.push((key.to_string(), value.to_string(), line_no));
            }
            Section::Hamiltonian | Section::Constraint => {
                let v: f64 = value
                    .parse()
                    .map_err(|_| err(format!("`{value}` is not a number")))?;
                if !v.is_finite() {
                    return Err(err(format!("`{value}` is not finite")));
                }
                let target = if section == Section::Hamiltonian {
                    &mut h_init
                } else {
                    &mut f_init
                };
                target.push((key.to_string(), v));
            }
        }
    }

    let get = |key: &str| top.iter().find(|(k, _, _)| k == key);
    let require = |key: &str| get(key).ok_or_else(|| Error::Config(format!("missing key: {key}")));
    let number = |key: &str| -> Result<f64> {
        let (_, v, line) = require(key)?;
        v.parse::<f64>().map_err(|_| Error::ConfigLine {
            line: *line,
            msg: format!("`{v}` is not a number"),
        })
    };
    let integer = |key: &str, default: u64| -> Result<u64> {
        match get(key) {
            None => Ok(default),
            Some((_, v, line)) => v.parse::<u64>().map_err(|_| Error::ConfigLine {
                line: *line,
                msg: format!("`{v}` is not a non-negative integer"),
            }),
        }
    };

    let (_, group_text, group_line) = require("group")?;
    let group: Group = group_text.parse().map_err(|e: Error| Error::ConfigLine {
        line: *group_line,
        msg: e.to_string(),
    })?;
    let split: Vec<String> = require("split")?
        .1
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let h = number("h")?;
    let t_end = number("T")?;
    let stride = integer("stride", 1)? as usize;
    let seed = integer("seed", 0)?;

    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Config(format!("h must be positive, got {h}")));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Config(format!("T must be positive, got {t_end}")));
    }
    if stride == 0 {
        return Err(Error::Config("stride must be at least 1".into()));
    }

    let cfg = RunConfig {
        group,
        split,
        h_init,
        f_init,
        h,
        t_end,
        stride,
        seed,
    };
    // label and split validation
    cfg.initial_state()?;
    Ok(cfg)
}

#[derive(Debug, Parser)]
#[command(name = "spinctl", version, about = "Time-optimal spinor control toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Su2,
    Su3,
    Su4,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generator basis as CSV blocks
    Basis {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the brachistochrone flow from a run config
    Integrate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print H(t) and U(t,s) of a closed-form family
    Closedform {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        s: f64,
        #[command(flatten)]
        phys: PhysArgs,
    },
    /// Print the qutrit gate Q(t)
    Gate {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        theta: f64,
    },
    /// Step-product propagator U(t1, 0) and its closed-form comparison
    Propagate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        phys: PhysArgs,
    },
    /// Run the identity audit
    Audit {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct PhysArgs {
    /// Phase θ (su3 default 0, su4 default -π/2)
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    m: f64,
    /// Initial momentum `x,y,z`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec3, default_value = "0,0,1")]
    p: [f64; 3],
}

fn parse_vec3(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

impl PhysArgs {
    fn family(&self, family: Family) -> Result<Box<dyn UnitaryFamily>> {
        Ok(match family {
            Family::Su2 => Box::new(Su2Family),
            Family::Su3 => Box::new(Su3Family::new(self.theta.unwrap_or(0.0))),
            Family::Su4 => Box::new(Su4Family::new(DiracParameters::new(
                self.m,
                self.p,
                self.theta.unwrap_or(DEFAULT_THETA),
            )?)),
        })
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code: 0 success, 1 audit failure, 2 invalid input.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Basis { group, out: path } => {
            let group: Group = group.parse()?;
            emit(path.as_deref(), out, &basis_csv(group))?;
        }
        Command::Integrate { config, out: path } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", config.display())))?;
            let cfg = parse_config(&text)?;
            let (split, pair) = cfg.initial_state()?;
            let traj = integrate(&pair, &split, cfg.h, cfg.t_end, cfg.stride)?;
            emit(path.as_deref(), out, &trajectory_csv(&split, &traj))?;
        }
        Command::Closedform { family, t, s, phys } => {
            check_finite(&[t, s])?;
            let fam = phys.family(family)?;
            let ev = fam.evaluate(t, s);
            let name = fam.group();
            let mut text = matrix_block(&format!("H(t) family={name} t={t}"), &ev.hamiltonian);
            text.push('\n');
            text.push_str(&matrix_block(&format!("U(t,s) family={name} t={t} s={s}"), &ev.propagator));
            write_out(out, &text)?;
        }
        Command::Gate { t, theta } => {
            check_finite(&[t, theta])?;
            let q = Su3Family::new(theta).gate(t);
            write_out(out, &matrix_block(&format!("Q(t) t={t} theta={theta}"), &q))?;
        }
        Command::Propagate {
            family,
            t1,
            steps,
            phys,
        } => {
            check_finite(&[t1])?;
            let fam = phys.family(family)?;
            let steps = steps.unwrap_or_else(|| default_steps(0.0, t1));
            let sched = HamiltonianSchedule::from_family(fam.as_ref());
            let u = time_ordered_exponential(&sched, 0.0, t1, steps)?;
            let v = family_rotating_propagator(fam.as_ref(), t1, 0.0)?;
            let closed = fam.propagator(t1, 0.0);
            let name = fam.group();
            let mut text = matrix_block(&format!("oracle U(t1,0) family={name} t1={t1} steps={steps}"), &u);
            text.push('\n');
            text.push_str(&matrix_block("rotating-frame V(t1,0)", &v));
            text.push_str(&format!("max_dev_rotating_frame={}\n", exp_notation(u.max_abs_diff(&v), 3)));
            text.push_str(&format!("max_dev_closed_form_U={}\n", exp_notation(u.max_abs_diff(&closed), 3)));
            write_out(out, &text)?;
        }
        Command::Audit { tol, seed, out: path } => {
            let report = full_report(tol, seed)?;
            emit(path.as_deref(), out, &report.to_text())?;
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn check_finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("times and phases must be finite".into()))
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Config(format!("cannot write output: {e}")))
}

fn emit(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => write_out(out, text),
    }
}

/// 17 significant digits.
pub fn format_real(x: f64) -> String {
    exp_notation(x, 16)
}

fn format_complex(z: num_complex::Complex64) -> String {
    let im = z.im + 0.0;
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}j", format_real(z.re), format_real(im.abs()))
}

/// `# <title>` followed by one line per row of `re+imj` entries.
pub fn matrix_block(title: &str, a: &Operator) -> String {
    let mut s = format!("# {title}\n");
    for i in 0..a.dim() {
        let row: Vec<String> = (0..a.dim()).map(|j| format_complex(a[(i, j)])).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Label line, then `re,im` for each entry in row-major order.
pub fn basis_csv(group: Group) -> String {
    let basis = build_basis(group);
    let mut s = String::new();
    for (label, g) in basis.labels().iter().zip(basis.elements()) {
        s.push_str(label);
        s.push('\n');
        for z in g.entries() {
            s.push_str(&format!("{},{}\n", format_real(z.re), format_real(z.im)));
        }
    }
    s
}

/// `t,<S labels>,<Sᶜ labels>,trH2,trF2,trHF`, one row per sample.
pub fn trajectory_csv(split: &ControlSplit, traj: &Trajectory) -> String {
    let mut header = vec!["t".to_string()];
    header.extend(split.hamiltonian_labels().iter().map(|l| l.to_string()));
    header.extend(split.constraint_labels().iter().map(|l| l.to_string()));
    header.extend(["trH2", "trF2", "trHF"].map(String::from));
    let mut s = header.join(",");
    s.push('\n');
    for smp in &traj.samples {
        let row: Vec<String> = std::iter::once(smp.time)
            .chain(smp.h_coeffs.iter().copied())
            .chain(smp.f_coeffs.iter().copied())
            .chain(smp.monitors.as_array())
            .map(format_real)
            .collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SU2: &str = "\
# rotation of sigma_x about z
group = su2
split = sx, sy
h = 1e-3
T = 6.2832

[hamiltonian]
sx = 1

[constraint]
sz = -0.5
";

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn minimal_config() {
        let cfg = parse_config(SU2).unwrap();
        assert_eq!(cfg.group, Group::Su2);
        assert_eq!(cfg.split, vec!["sx", "sy"]);
        assert_eq!(cfg.stride, 1);
        assert_eq!(cfg.seed, 0);
        let (_, pair) = cfg.initial_state().unwrap();
        assert_eq!(pair.h_coeffs, vec![1.0, 0.0]);
        assert_eq!(pair.f_coeffs, vec![-0.5]);
    }

    #[test]
    fn config_errors() {
        let no_h = SU2.replace("h = 1e-3\n", "");
        assert_eq!(parse_config(&no_h).unwrap_err().to_string(), "missing key: h");
        assert!(parse_config(&SU2.replace("sx, sy", "sx, sw")).is_err());
        let dup = SU2.replace("T = 6.2832", "T = 1\nT = 2");
        assert!(matches!(parse_config(&dup), Err(Error::ConfigLine { line: 6, .. })));
        assert!(matches!(parse_config(&SU2.replace("T = 6.2832", "T 6")), Err(Error::ConfigLine { line: 5, .. })));
        assert!(parse_config(&SU2.replace("T = 6.2832", "colour = red")).is_err());
        assert!(parse_config(&SU2.replace("[constraint]", "[extra]")).is_err());
        // constraint label inside the hamiltonian span
        assert!(parse_config(&SU2.replace("sz = -0.5", "sy = -0.5")).is_err());
        assert!(parse_config(&SU2.replace("h = 1e-3", "h = -1")).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let cfg = parse_config(&SU2.replace("T = 6.2832", "T = 0.01")).unwrap();
        let (split, pair) = cfg.initial_state().unwrap();
        let traj = integrate(&pair, &split, cfg.h, cfg.t_end, cfg.stride).unwrap();
        let csv = trajectory_csv(&split, &traj);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,sx,sy,sz,trH2,trF2,trHF");
        for (line, smp) in lines.zip(&traj.samples) {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(v[0], smp.time);
            assert_eq!(v[1..3], smp.h_coeffs[..]);
            assert_eq!(v[3], smp.f_coeffs[0]);
            assert_eq!(v[4..], smp.monitors.as_array()[..]);
        }
    }

    #[test]
    fn gate_at_zero() {
        let (code, out, _) = run_args(&["spinctl", "gate", "--t", "0"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().skip(1).collect();
        assert_eq!(
            rows[0],
            "7.0710678118654757e-01+0.0000000000000000e+00j -7.0710678118654757e-01+0.0000000000000000e+00j 0.0000000000000000e+00+0.0000000000000000e+00j"
        );
        assert!(rows[2].ends_with("1.0000000000000000e+00+0.0000000000000000e+00j"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["spinctl", "integrate"]).0, 2);
        assert_eq!(run_args(&["spinctl", "frobnicate"]).0, 2);
        assert_eq!(run_args(&["spinctl"]).0, 2);
        assert_eq!(run_args(&["spinctl", "basis", "--group", "su5"]).0, 2);
        assert_eq!(run_args(&["spinctl", "closedform", "--family", "su4", "--t", "1", "--m", "0", "--p", "0,0,0"]).0, 2);
        assert_eq!(run_args(&["spinctl", "closedform", "--family", "su4", "--t", "1", "--p", "1,2"]).0, 2);
        let (code, out, _) = run_args(&["spinctl", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }

    #[test]
    fn closedform_negative_times() {
        let (code, out, err) = run_args(&["spinctl", "closedform", "--family", "su2", "--t", "-1.5", "--s", "-0.5"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.lines().filter(|l| l.starts_with('#')).count(), 2);
    }

    #[test]
    fn basis_blocks() {
        let csv = basis_csv(Group::Su3);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 8 * 10);
        assert_eq!(lines[0], "l1");
        assert_eq!(lines[2], "1.0000000000000000e+00,0.0000000000000000e+00");
    }
}

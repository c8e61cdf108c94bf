use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kbf_core::exact::{format_rational, parse_rational, parse_rational_list, Rational};
use kbf_core::five_vertex as fv;
use kbf_core::grothendieck as gr;
use kbf_core::melting_crystal as mc;
use kbf_core::partitions::{BosonConfig, FermionConfig, Partition};
use kbf_core::phase_model as pm;
use kbf_core::six_vertex::{self as sv, SixVertexParams};
use kbf_core::suite::{run_suite_timed, Scale, SuiteReport};

#[derive(Parser)]
#[command(name = "kbf", version, about = "Exact Grothendieck-polynomial and integrable-model calculator")]
struct Cli {
    /// Seed for randomly drawn test points.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grothendieck polynomials.
    #[command(subcommand)]
    Groth(GrothCmd),
    /// Five-vertex model.
    #[command(subcommand)]
    Fv(FvCmd),
    /// Non-Hermitian phase model.
    #[command(subcommand)]
    Pm(PmCmd),
    /// Melting crystal partition functions and entropy.
    #[command(subcommand)]
    Mc(McCmd),
    /// Six-vertex L-operator family.
    #[command(subcommand)]
    Sv6(Sv6Cmd),
    /// Run a verification suite: all, groth, fv, pm, mc, sv6 or module.part.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value = "small")]
        scale: String,
        /// Include wall time in the report (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value = "small")]
    scale: String,
}

#[derive(Subcommand)]
enum GrothCmd {
    /// G_λ(z; β) by the determinant formula.
    Eval {
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Single-variable skew polynomial G_{μ/λ}(z; β).
    Skew {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Both sides of the Cauchy identity for λ inside the N x L box.
    VerifyCauchy {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long = "L", alias = "l")]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Both sides of the summation formula for λ inside the N x L box.
    VerifySum {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long = "L", alias = "l")]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
}

#[derive(Subcommand)]
enum FvCmd {
    /// Lattice wavefunction ⟨x|B(u_1)...B(u_N)|Ω⟩ and its closed form.
    Wavefunction {
        #[arg(long = "M", alias = "m")]
        m: usize,
        /// Occupied sites, 1-based, comma separated.
        #[arg(long)]
        x: String,
        #[arg(long = "u-list", allow_hyphen_values = true)]
        u_list: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Run the five-vertex suite or one part: ybe, rll, thm22, skew, ham.
    Verify(SuiteArgs),
}

#[derive(Subcommand)]
enum PmCmd {
    /// Lattice wavefunction ⟨n|B(v_1)...B(v_N)|Ω⟩ and its closed form.
    Wavefunction {
        #[arg(long = "M", alias = "m")]
        m: usize,
        /// Occupation numbers of sites 0..M-1, comma separated.
        #[arg(long)]
        n: String,
        #[arg(long = "v-list", allow_hyphen_values = true)]
        v_list: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Dual wavefunction ⟨Ψ|n⟩ instead.
        #[arg(long)]
        dual: bool,
    },
    /// Scalar product ⟨Ψ(u)|Ψ(v)⟩, determinant and lattice sum.
    Scalar {
        #[arg(long = "M", alias = "m")]
        m: usize,
        #[arg(long = "u-list", allow_hyphen_values = true)]
        u_list: String,
        #[arg(long = "v-list", allow_hyphen_values = true)]
        v_list: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Σ_n (-β)^{Σ j n_j} ⟨n|Ψ(v)⟩, determinant and lattice sum.
    Sum {
        #[arg(long = "M", alias = "m")]
        m: usize,
        #[arg(long = "v-list", allow_hyphen_values = true)]
        v_list: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// On-shell check of the single-boson Bethe states.
    Bethe {
        #[arg(long = "M", alias = "m")]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Run the phase-model suite or one part: rll, thm52, lemma53, scalar, sum, ham, commute, bethe.
    Verify(SuiteArgs),
}

#[derive(Subcommand)]
enum McCmd {
    /// Boxed partition function, by enumeration and by the determinant.
    Zbox {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long = "L", alias = "l")]
        l: u32,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Series in q through this order instead of a numeric q.
        #[arg(long)]
        series: Option<usize>,
    },
    /// Coefficients of ∏ (1+βq^n)^{n-1}/(1-q^n)^n.
    Macmahon {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        order: usize,
    },
    /// Entropy S(β) on a grid of temperatures and β values.
    Entropy {
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Comma-separated temperatures.
        #[arg(long = "T", alias = "t")]
        t: String,
        /// Comma-separated β values.
        #[arg(long = "beta-list", allow_hyphen_values = true)]
        beta_list: String,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

#[derive(Subcommand)]
enum Sv6Cmd {
    /// Check the RLL relation for a parameter set given as JSON
    /// `{"alpha": ["p/q", ...6], "t": "p/q"}`.
    Verify {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true, default_value = "2,3")]
        uv: String,
    },
}

fn rationals(s: &str) -> Result<Vec<Rational>> {
    Ok(parse_rational_list(s)?)
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

fn u32s(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("not a nonnegative integer: {t:?}")))
        .collect()
}

fn partition(s: &str) -> Result<Partition> {
    Ok(Partition::new(u32s(s)?)?)
}

fn r(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn rs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

/// What a command produced: a JSON value, a text rendering, and whether it passed.
struct Output {
    value: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(value: Value, text: String) -> Self {
        Self { value, text, ok: true }
    }

    fn checked(value: Value, text: String, ok: bool) -> Self {
        Self { value, text, ok }
    }
}

fn suite_output(report: SuiteReport) -> Result<Output> {
    let mut text = String::new();
    for p in &report.parts {
        let status = if p.failures == 0 { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status} {} ({} cases, {} failures)\n", p.name, p.cases, p.failures));
    }
    for f in &report.failures {
        text.push_str(&format!("  {} {}: expected {}, got {}\n", f.case, f.inputs, f.expected, f.got));
    }
    text.push_str(&format!(
        "{} {}: {} cases, {} failures",
        report.suite,
        report.scale,
        report.cases,
        report.failures.len()
    ));
    if let Some(t) = report.wall_time_s {
        text.push_str(&format!(", {t:.2} s"));
    }
    let ok = report.passed();
    Ok(Output::checked(serde_json::to_value(&report)?, text, ok))
}

fn verify(module: &str, args: &SuiteArgs, seed: u64) -> Result<Output> {
    let name = match &args.suite {
        Some(p) => format!("{module}.{p}"),
        None => module.to_string(),
    };
    suite_output(run_suite_timed(&name, args.scale.parse()?, seed, false)?)
}

fn groth(cmd: &GrothCmd) -> Result<Output> {
    match cmd {
        GrothCmd::Eval { lambda, z, beta } => {
            let (lam, z, b) = (partition(lambda)?, rationals(z)?, rational(beta)?);
            let point = gr::EvalPoint::new(z.clone(), b.clone())?;
            let v = gr::groth_det(&lam, &point)?;
            Ok(Output::new(
                json!({"lambda": lam, "point": {"z": rs(&z), "beta": r(&b)}, "value": r(&v)}),
                format_rational(&v),
            ))
        }
        GrothCmd::Skew { mu, lambda, z, beta } => {
            let (mu, lam, z, b) = (partition(mu)?, partition(lambda)?, rational(z)?, rational(beta)?);
            let v = gr::skew_single(&mu, &lam, &z, &b)?;
            Ok(Output::new(
                json!({"mu": mu, "lambda": lam, "point": {"z": r(&z), "beta": r(&b)}, "value": r(&v)}),
                format_rational(&v),
            ))
        }
        GrothCmd::VerifyCauchy { n, l, z, w, beta } => {
            let (z, w, b) = (rationals(z)?, rationals(w)?, rational(beta)?);
            let lhs = gr::cauchy_lhs(*n, *l, &z, &w, &b)?;
            let rhs = gr::cauchy_rhs(*n, *l, &z, &w, &b)?;
            let ok = lhs == rhs;
            Ok(Output::checked(
                json!({"N": n, "L": l, "point": {"z": rs(&z), "w": rs(&w), "beta": r(&b)},
                       "lhs": r(&lhs), "rhs": r(&rhs), "equal": ok}),
                format!("lhs {}\nrhs {}\n{}", format_rational(&lhs), format_rational(&rhs), pass(ok)),
                ok,
            ))
        }
        GrothCmd::VerifySum { n, l, z, beta } => {
            let (z, b) = (rationals(z)?, rational(beta)?);
            let lhs = gr::summation_lhs(*n, *l, &z, &b)?;
            let rhs = gr::summation_rhs(*n, *l, &z, &b)?;
            let ok = lhs == rhs;
            Ok(Output::checked(
                json!({"N": n, "L": l, "point": {"z": rs(&z), "beta": r(&b)},
                       "lhs": r(&lhs), "rhs": r(&rhs), "equal": ok}),
                format!("lhs {}\nrhs {}\n{}", format_rational(&lhs), format_rational(&rhs), pass(ok)),
                ok,
            ))
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn five_vertex(cmd: &FvCmd, seed: u64) -> Result<Output> {
    match cmd {
        FvCmd::Wavefunction { m, x, u_list, beta } => {
            let positions: Vec<usize> = u32s(x)?.into_iter().map(|p| p as usize).collect();
            let cfg = FermionConfig::new(positions, *m)?;
            let (us, b) = (rationals(u_list)?, rational(beta)?);
            let lattice = fv::wavefunction_5v(&cfg, &us, &b)?;
            let closed = fv::wavefunction_5v_closed(&cfg, &us, &b)?;
            let ok = lattice == closed;
            Ok(Output::checked(
                json!({"M": m, "x": cfg.positions(), "lambda": cfg.to_partition(), "u": rs(&us),
                       "beta": r(&b), "lattice": r(&lattice), "closed_form": r(&closed), "equal": ok}),
                format!(
                    "lattice {}\nclosed  {}\n{}",
                    format_rational(&lattice),
                    format_rational(&closed),
                    pass(ok)
                ),
                ok,
            ))
        }
        FvCmd::Verify(args) => verify("fv", args, seed),
    }
}

fn phase_model(cmd: &PmCmd, seed: u64) -> Result<Output> {
    match cmd {
        PmCmd::Wavefunction { m, n, v_list, beta, dual } => {
            let occ = BosonConfig::new(u32s(n)?);
            if occ.sites() != *m {
                bail!("{} occupation numbers given for M = {m}", occ.sites());
            }
            let (vs, b) = (rationals(v_list)?, rational(beta)?);
            let (lattice, closed) = if *dual {
                (pm::dual_wavefunction_phase(&occ, &vs, &b)?, pm::dual_wavefunction_phase_closed(&occ, &vs, &b)?)
            } else {
                (pm::wavefunction_phase(&occ, &vs, &b)?, pm::wavefunction_phase_closed(&occ, &vs, &b)?)
            };
            let ok = lattice == closed;
            Ok(Output::checked(
                json!({"M": m, "n": occ, "lambda": occ.to_partition(), "v": rs(&vs), "beta": r(&b),
                       "dual": dual, "lattice": r(&lattice), "closed_form": r(&closed), "equal": ok}),
                format!(
                    "lattice {}\nclosed  {}\n{}",
                    format_rational(&lattice),
                    format_rational(&closed),
                    pass(ok)
                ),
                ok,
            ))
        }
        PmCmd::Scalar { m, u_list, v_list, beta } => {
            let (us, vs, b) = (rationals(u_list)?, rationals(v_list)?, rational(beta)?);
            let det = pm::scalar_product(&us, &vs, *m, &b)?;
            let brute = pm::scalar_product_bruteforce(&us, &vs, *m, &b)?;
            let ok = det == brute;
            Ok(Output::checked(
                json!({"M": m, "u": rs(&us), "v": rs(&vs), "beta": r(&b),
                       "determinant": r(&det), "lattice": r(&brute), "equal": ok}),
                format!("determinant {}\nlattice     {}\n{}", format_rational(&det), format_rational(&brute), pass(ok)),
                ok,
            ))
        }
        PmCmd::Sum { m, v_list, beta } => {
            let (vs, b) = (rationals(v_list)?, rational(beta)?);
            let det = pm::summation_wavefunctions(&vs, *m, &b)?;
            let brute = pm::summation_wavefunctions_bruteforce(&vs, *m, &b)?;
            let ok = det == brute;
            Ok(Output::checked(
                json!({"M": m, "v": rs(&vs), "beta": r(&b),
                       "determinant": r(&det), "lattice": r(&brute), "equal": ok}),
                format!("determinant {}\nlattice     {}\n{}", format_rational(&det), format_rational(&brute), pass(ok)),
                ok,
            ))
        }
        PmCmd::Bethe { m, beta } => {
            let report = pm::bethe_verify_n1(*m, &rational(beta)?)?;
            let ok = report.max_residual < 1e-10;
            let mut text = String::from("k  v^2  energy  bae  eigen  transfer\n");
            for root in &report.roots {
                text.push_str(&format!(
                    "{} {:.6}{:+.6}i {:.6}{:+.6}i {:.2e} {:.2e} {:.2e}\n",
                    root.k,
                    root.v2[0],
                    root.v2[1],
                    root.energy[0],
                    root.energy[1],
                    root.bae_residual,
                    root.eigen_residual,
                    root.transfer_residual
                ));
            }
            if !report.skipped.is_empty() {
                text.push_str(&format!("skipped k = {:?} (infinite v^2)\n", report.skipped));
            }
            text.push_str(&format!("max residual {:.2e}\n{}", report.max_residual, pass(ok)));
            Ok(Output::checked(serde_json::to_value(&report)?, text, ok))
        }
        PmCmd::Verify(args) => verify("pm", args, seed),
    }
}

fn melting_crystal(cmd: &McCmd) -> Result<Output> {
    match cmd {
        McCmd::Zbox { n, l, q, beta, series } => {
            let b = rational(beta)?;
            match (series, q) {
                (Some(order), _) => {
                    let s = mc::z_box_det_series(*n, *l, &b, *order)?;
                    let c = s.coefficients();
                    let text = c.iter().map(format_rational).collect::<Vec<_>>().join(" ");
                    Ok(Output::new(
                        json!({"N": n, "L": l, "beta": r(&b), "order": order, "coefficients": rs(&c)}),
                        text,
                    ))
                }
                (None, Some(q)) => {
                    let p = mc::CrystalParams::new(*n, *l, rational(q)?, b)?;
                    let det = mc::z_box_det(&p)?;
                    let brute = mc::z_box_bruteforce(&p)?;
                    let ok = det == brute;
                    Ok(Output::checked(
                        json!({"params": p, "determinant": r(&det), "bruteforce": r(&brute),
                               "equal": ok, "physical": p.is_physical()}),
                        format!(
                            "determinant {}\nbruteforce  {}\n{}",
                            format_rational(&det),
                            format_rational(&brute),
                            pass(ok)
                        ),
                        ok,
                    ))
                }
                (None, None) => bail!("give either --q or --series"),
            }
        }
        McCmd::Macmahon { beta, order } => {
            let b = rational(beta)?;
            let c = mc::z_infinite(&b, *order).coefficients();
            let text = c.iter().map(format_rational).collect::<Vec<_>>().join(" ");
            Ok(Output::new(json!({"beta": r(&b), "order": order, "coefficients": rs(&c)}), text))
        }
        McCmd::Entropy { mu, t, beta_list, format } => {
            let floats = |s: &str| -> Result<Vec<f64>> {
                s.split(',')
                    .map(|x| x.trim().parse::<f64>().with_context(|| format!("not a number: {x:?}")))
                    .collect()
            };
            let rows = mc::entropy_table(*mu, &floats(t)?, &floats(beta_list)?)?;
            match format.as_str() {
                "csv" => {
                    let csv = mc::entropy_csv(&rows);
                    Ok(Output::new(json!({"csv": csv}), csv.trim_end().to_string()))
                }
                "json" => {
                    let v = serde_json::to_value(&rows)?;
                    Ok(Output::new(v.clone(), serde_json::to_string_pretty(&v)?))
                }
                other => bail!("unknown format {other:?}, expected csv or json"),
            }
        }
    }
}

fn six_vertex(cmd: &Sv6Cmd) -> Result<Output> {
    match cmd {
        Sv6Cmd::Verify { params, uv } => {
            let p: SixVertexParams = serde_json::from_str(params).context("parsing --params")?;
            p.validate()?;
            let uv = rationals(uv)?;
            let [u, v] = uv.as_slice() else { bail!("--uv takes two values") };
            let ok = sv::check_rll_six(u, v, &p)?;
            Ok(Output::checked(
                json!({"params": p, "u": r(u), "v": r(v), "rll": ok}),
                format!("RLL at u = {}, v = {}: {}", format_rational(u), format_rational(v), pass(ok)),
                ok,
            ))
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Groth(c) => groth(c),
        Command::Fv(c) => five_vertex(c, cli.seed),
        Command::Pm(c) => phase_model(c, cli.seed),
        Command::Mc(c) => melting_crystal(c),
        Command::Sv6(c) => six_vertex(c),
        Command::Verify { suite, scale, timing } => {
            let scale: Scale = scale.parse()?;
            suite_output(run_suite_timed(suite, scale, cli.seed, *timing)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut rendered = if cli.json { serde_json::to_string(&out.value).expect("serializable") } else { out.text };
    rendered.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: writing {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

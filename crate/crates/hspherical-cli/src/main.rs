//! `hsph`: command-line front end for the hspherical library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
//! domain error.

mod config;
mod output;
mod parse;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hspherical::cfunc::{c_w_report, CFunctionContext};
use hspherical::crown::{BasePoint, Crown};
use hspherical::hardy::{self, PsiOptions};
use hspherical::hcseries::{gamma_coeffs, phi_function, GammaOptions, RecursionVariant, TubePoint};
use hspherical::numerics::QuadratureConfig;
use hspherical::rootcore::{catalog, rho, CaseTag, RootSystem};
use hspherical::sl2::{self, LineModelFunction, ProbeVector};
use hspherical::spherical::{spherical_series, theta_asymptotics, theta_function};
use hspherical::{Complex64, Error};
use serde_json::{json, Value};

use config::Config;
use output::Format;

pub const DEFAULT_HEIGHT: usize = 40;

#[derive(Parser, Debug)]
#[command(
    name = "hsph",
    version,
    about = "H-spherical analysis on complex crowns"
)]
struct Cli {
    /// Output format [default: json].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// key=value file with defaults for format, height, tol, variant and case.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Truncation height of the Gamma tables [default: 40].
    #[arg(long, global = true)]
    height: Option<usize>,
    /// Absolute and relative quadrature tolerance [default: abs 1e-9, rel 1e-8].
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Recursion variant: gangolli or single-shift [default: gangolli].
    #[arg(long, global = true)]
    variant: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The catalog of root systems.
    Cases {
        #[command(subcommand)]
        cmd: CasesCmd,
    },
    /// Crown polytopes and base point.
    Crown {
        #[command(subcommand)]
        cmd: CrownCmd,
    },
    /// Harish-Chandra Gamma coefficients.
    Gamma {
        #[command(subcommand)]
        cmd: GammaCmd,
    },
    /// The Phi series.
    Phi {
        #[command(subcommand)]
        cmd: PhiCmd,
    },
    /// c-functions.
    Cfunc {
        #[command(subcommand)]
        cmd: CfuncCmd,
    },
    /// Spherical functions.
    Spherical {
        #[command(subcommand)]
        cmd: SphericalCmd,
    },
    /// H-spherical functions theta_lambda.
    Theta {
        #[command(subcommand)]
        cmd: ThetaCmd,
    },
    /// The line model of the SL(2,R) principal series.
    Sl2 {
        #[command(subcommand)]
        cmd: Sl2Cmd,
    },
    /// Plancherel density, Cauchy-Szego kernel and growth checks.
    Hardy {
        #[command(subcommand)]
        cmd: HardyCmd,
    },
    /// Run a verification suite, or `all`.
    Verify(verify::VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum CasesCmd {
    List,
}

#[derive(Args, Debug, Clone)]
struct CaseArg {
    /// A1, A2 or C2.
    #[arg(long = "case")]
    case: Option<String>,
    /// Use the alternate base point when the case has one.
    #[arg(long)]
    alternate: bool,
}

#[derive(Subcommand, Debug)]
enum CrownCmd {
    Describe(CaseArg),
}

#[derive(Subcommand, Debug)]
enum GammaCmd {
    Table {
        #[command(flatten)]
        case: CaseArg,
        /// Spectral parameter, comma separated complex coordinates.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Subcommand, Debug)]
enum PhiCmd {
    Eval {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Point z = log a, comma separated complex coordinates.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
}

#[derive(Subcommand, Debug)]
enum CfuncCmd {
    Eval {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Reduced word of simple reflections, e.g. `0,1`; omitted means c itself.
        #[arg(long)]
        w: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum SphericalCmd {
    Eval {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
}

#[derive(Subcommand, Debug)]
enum ThetaCmd {
    Eval {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    Asymptotics {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Direction Y in the positive chamber.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "5,10,15")]
        tgrid: String,
    },
}

#[derive(Subcommand, Debug)]
enum Sl2Cmd {
    /// <pi(a_t) v_K, v_K> against the boundary value <v_H, v_K>.
    Boundary {
        /// Imaginary part of lambda.
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value = "0.9,0.99,0.999")]
        tgrid: String,
    },
    /// Residual of v_H against its eta_1, eta_w decomposition.
    EtaDecomposition {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// (A u_lambda)(x) / u_{-lambda}(x) against c_w(lambda).
    Intertwine {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        xgrid: String,
    },
    /// The pairing identity for the adjoint intertwiner, real lambda in (-3, -1).
    IntertwiningPairing {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Conjugate Cauchy-Riemann residuals of lambda -> <v_H, v>.
    Smoothness {
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        /// Pair against v_K at this fixed parameter instead of the moving K-vector.
        #[arg(long, allow_hyphen_values = true)]
        fixed_lambda: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum HardyCmd {
    /// The Cauchy-Szego function Psi at a point of the tube.
    Psi {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also integrate |theta| times the density.
        #[arg(long)]
        absolute: bool,
    },
    /// 1/|c_G/H(i nu)|^2 on a list of chamber points separated by `;`.
    Density {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Convergence of int exp(c ||Im lambda||_H) d mu(lambda).
    Growth {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long = "c", default_value = "0.5,1.0,1.9")]
        c_values: String,
    },
}

/// Failures of a command, mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<hspherical::numerics::NumericsError> for Failure {
    fn from(e: hspherical::numerics::NumericsError) -> Self {
        Failure::Library(e.into())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

/// Flags resolved against the configuration file and the defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    /// Explicit height, if any; verbs fall back to their own default.
    pub height: Option<usize>,
    pub quad: QuadratureConfig,
    /// Explicit tolerance, if any.
    pub tol: Option<f64>,
    pub gamma: GammaOptions,
    pub case: Option<String>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<Self, String> {
        let file = match &cli.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        let format = match cli.format {
            Some(f) => f,
            None => file.get::<Format>("format")?.unwrap_or(Format::Json),
        };
        let height = match cli.height {
            Some(h) => Some(h),
            None => file.get::<usize>("height")?,
        };
        let tol = match cli.tol {
            Some(t) => Some(t),
            None => file.get::<f64>("tol")?,
        };
        if let Some(t) = tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(format!("tolerance must lie in (0, 1), got {t}"));
            }
        }
        let variant = match &cli.variant {
            Some(v) => Some(v.clone()),
            None => file.values.get("variant").cloned(),
        };
        let variant = match variant {
            Some(v) => v.parse::<RecursionVariant>().map_err(|e| e.to_string())?,
            None => RecursionVariant::default(),
        };
        Ok(Self {
            format,
            height,
            quad: tol
                .map(QuadratureConfig::with_tolerance)
                .unwrap_or_default(),
            tol,
            gamma: GammaOptions {
                variant,
                ..GammaOptions::default()
            },
            case: file.values.get("case").cloned(),
            output: cli.output.clone(),
        })
    }

    pub fn height(&self) -> usize {
        self.height.unwrap_or(DEFAULT_HEIGHT)
    }

    fn case_tag(&self, arg: &CaseArg) -> Result<CaseTag, Failure> {
        let s = arg
            .case
            .clone()
            .or_else(|| self.case.clone())
            .ok_or_else(|| Failure::Usage("--case is required".into()))?;
        let tag: CaseTag = s
            .parse()
            .map_err(|e: Error| Failure::Usage(e.to_string()))?;
        if tag == CaseTag::Custom {
            return Err(Failure::Usage(
                "the CLI evaluates catalog cases only".into(),
            ));
        }
        Ok(tag)
    }
}

/// Root system, c-function context and crown of one catalog case.
pub struct Setup {
    pub rs: RootSystem,
    pub ctx: CFunctionContext,
    pub crown: Crown,
}

pub fn setup(tag: CaseTag, alternate: bool) -> Result<Setup, Failure> {
    let rs = RootSystem::build(tag)?;
    let ctx = CFunctionContext::new(&rs)?;
    let bp = if alternate {
        BasePoint::catalog_alternate(&rs)?
            .ok_or_else(|| Failure::Usage(format!("{tag} has no alternate base point")))?
    } else {
        BasePoint::catalog(&rs)?
    };
    let crown = Crown::new(&rs, &ctx.weyl, bp)?;
    Ok(Setup { rs, ctx, crown })
}

fn case_setup(rc: &RunConfig, arg: &CaseArg) -> Result<(CaseTag, Setup), Failure> {
    let tag = rc.case_tag(arg)?;
    Ok((tag, setup(tag, arg.alternate)?))
}

pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn complex_vec(s: &str, rank: usize, what: &str) -> Result<Vec<Complex64>, Failure> {
    let v = parse::complex_vec(s)?;
    if v.len() != rank {
        return Err(Failure::Usage(format!(
            "{what} needs {rank} coordinates, got {}",
            v.len()
        )));
    }
    Ok(v)
}

fn run(cli: &Cli, rc: &RunConfig) -> Result<Value, Failure> {
    match &cli.command {
        Command::Cases {
            cmd: CasesCmd::List,
        } => {
            let rows: Vec<Value> = catalog()
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "tag": c.tag.to_string(),
                        "group": c.group,
                        "rank": c.rank,
                        "positive_roots": c.positive_roots.len(),
                        "stabilizer_order": c.stabilizer_order,
                        "has_alternate_base_point": c.alternate_t0.is_some(),
                    })
                })
                .collect();
            Ok(json!({ "quantity": "catalog of root systems", "cases": rows }))
        }
        Command::Crown {
            cmd: CrownCmd::Describe(arg),
        } => {
            let (tag, s) = case_setup(rc, arg)?;
            Ok(json!({
                "quantity": "crown polytope Omega and its H-sub-polytope Omega_H",
                "case": tag.to_string(),
                "base_point": to_value(&s.crown.base_point),
                "omega": to_value(&s.crown.omega),
                "omega_h": to_value(&s.crown.omega_h),
                "omega_vertex_count": s.crown.omega.vertices.len(),
                "omega_orbit_count": s.crown.omega.orbits.len(),
                "omega_h_equals_omega": s.crown.equal_closures(),
            }))
        }
        Command::Gamma {
            cmd: GammaCmd::Table { case, lambda },
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let lam = complex_vec(lambda, s.rs.rank, "--lambda")?;
            let t = gamma_coeffs(&s.rs, &lam, rc.height(), rc.gamma)?;
            let entries: Vec<Value> = t
                .sorted_entries()
                .iter()
                .map(|e| json!({ "simple_coords": e.simple_coords, "mu": e.mu, "value": to_value(&e.value) }))
                .collect();
            Ok(json!({
                "quantity": "Harish-Chandra recursion coefficients Gamma_mu(lambda)",
                "case": tag.to_string(),
                "lambda": to_value(&lam),
                "max_height": t.max_height,
                "variant": to_value(&t.options.variant),
                "entries": entries,
            }))
        }
        Command::Phi {
            cmd: PhiCmd::Eval { case, lambda, z },
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let lam = complex_vec(lambda, s.rs.rank, "--lambda")?;
            let z = complex_vec(z, s.rs.rank, "--z")?;
            let point = TubePoint::new(&s.rs, &s.crown, &z)?;
            let t = gamma_coeffs(&s.rs, &lam, rc.height(), rc.gamma)?;
            let v = phi_function(&s.rs, &t, &z, None)?;
            Ok(json!({
                "quantity": "Harish-Chandra series Phi_lambda(z)",
                "case": tag.to_string(),
                "lambda": to_value(&lam),
                "point": to_value(&point),
                "height": rc.height(),
                "value": to_value(&v.value),
                "tail_bound": v.tail_bound,
            }))
        }
        Command::Cfunc {
            cmd: CfuncCmd::Eval { case, lambda, w },
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let lam = complex_vec(lambda, s.rs.rank, "--lambda")?;
            let mut out = json!({ "case": tag.to_string(), "lambda": to_value(&lam) });
            match w {
                Some(word) => {
                    let word: Vec<usize> = if word.trim().is_empty() {
                        Vec::new()
                    } else {
                        word.split(',')
                            .map(|x| {
                                x.trim()
                                    .parse::<usize>()
                                    .map_err(|_| format!("bad reflection index `{x}`"))
                            })
                            .collect::<Result<_, _>>()?
                    };
                    let idx = s.ctx.weyl.from_word(&word)?;
                    let r = c_w_report(&s.ctx, idx, &lam)?;
                    out["quantity"] =
                        json!("partial c-function c_w(lambda) as a product over the inversion set");
                    out["report"] = to_value(&r);
                    let longest = idx == s.ctx.weyl.longest_index();
                    if tag == CaseTag::A1 && longest && lam[0].re < 0.0 {
                        let oracle = sl2::c_w_quadrature(lam[0], &rc.quad)?;
                        out["oracle_nbar_quadrature"] = to_value(&oracle);
                    }
                }
                None => {
                    out["quantity"] =
                        json!("Harish-Chandra c-function c(lambda), normalized by c(-rho) = 1");
                    out["rho"] = json!(rho(&s.rs));
                    match s.ctx.c_function(&lam) {
                        Ok(v) => {
                            out["value"] = to_value(&v);
                            out["pole"] = Value::Null;
                        }
                        Err(Error::Pole { root, .. }) => {
                            out["value"] = Value::Null;
                            out["pole"] = json!(root);
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            Ok(out)
        }
        Command::Spherical {
            cmd: SphericalCmd::Eval { case, lambda, z },
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let lam = complex_vec(lambda, s.rs.rank, "--lambda")?;
            let z = complex_vec(z, s.rs.rank, "--z")?;
            let point = TubePoint::new(&s.rs, &s.crown, &z)?;
            let r = spherical_series(&s.ctx, &lam, &point, rc.height(), rc.gamma)?;
            Ok(json!({
                "quantity": "spherical function phi_lambda(z) as a Weyl sum of Phi series",
                "case": tag.to_string(),
                "lambda": to_value(&lam),
                "height": rc.height(),
                "report": to_value(&r),
            }))
        }
        Command::Theta {
            cmd: ThetaCmd::Eval { case, lambda, z },
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let lam = complex_vec(lambda, s.rs.rank, "--lambda")?;
            let z = complex_vec(z, s.rs.rank, "--z")?;
            let r = theta_function(&s.ctx, &s.crown, &lam, &z, rc.height(), rc.gamma)?;
            Ok(json!({
                "quantity": "H-spherical function theta_lambda(exp z) = phi_lambda(z + i X_H)",
                "case": tag.to_string(),
                "lambda": to_value(&lam),
                "height": rc.height(),
                "report": to_value(&r),
            }))
        }
        Command::Theta {
            cmd:
                ThetaCmd::Asymptotics {
                    case,
                    lambda,
                    y,
                    tgrid,
                },
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let lam = complex_vec(lambda, s.rs.rank, "--lambda")?;
            let y = parse::real_vec(y)?;
            if y.len() != s.rs.rank {
                return Err(Failure::Usage(format!(
                    "--y needs {} coordinates",
                    s.rs.rank
                )));
            }
            let tgrid = parse::real_vec(tgrid)?;
            let r = theta_asymptotics(&s.ctx, &s.crown, &lam, &y, &tgrid, rc.height(), rc.gamma)?;
            Ok(json!({
                "quantity": "leading asymptotics of theta_lambda along a chamber ray against c(lambda) z_H^(lambda - rho)",
                "case": tag.to_string(),
                "lambda": to_value(&lam),
                "direction": y,
                "report": to_value(&r),
            }))
        }
        Command::Sl2 { cmd } => run_sl2(cmd, rc),
        Command::Hardy { cmd } => run_hardy(cmd, rc),
        Command::Verify(args) => verify::run(args, rc),
    }
}

fn run_sl2(cmd: &Sl2Cmd, rc: &RunConfig) -> Result<Value, Failure> {
    match cmd {
        Sl2Cmd::Boundary { lambda, tgrid } => {
            let lam = Complex64::new(0.0, *lambda);
            let tgrid = parse::real_vec(tgrid)?;
            let r = sl2::boundary_convergence(lam, &tgrid, &LineModelFunction::v_k(lam), &rc.quad)?;
            Ok(json!({
                "quantity": "boundary limit of <pi(a_t) v_K, v_K> as t -> 1 against <v_H, v_K>",
                "report": to_value(&r),
            }))
        }
        Sl2Cmd::EtaDecomposition { lambda } => {
            let lam = parse::complex(lambda)?;
            let (c1, cw) = sl2::eta_coefficients(lam)?;
            Ok(json!({
                "quantity": "max residual of v_H against z_H^(rho + conj lambda) eta_1 + z_H^(-(rho + conj lambda)) eta_w",
                "lambda": to_value(&lam),
                "coefficients": [to_value(&c1), to_value(&cw)],
                "max_residual": sl2::check_eta_decomposition(lam)?,
            }))
        }
        Sl2Cmd::Intertwine { lambda, xgrid } => {
            let lam = parse::complex(lambda)?;
            let xgrid = parse::real_vec(xgrid)?;
            let r = sl2::intertwiner_k_ratio(lam, &xgrid, &rc.quad)?;
            Ok(json!({
                "quantity": "standard intertwiner on the K-fixed vector against c_w(lambda)",
                "report": to_value(&r),
            }))
        }
        Sl2Cmd::IntertwiningPairing { lambda } => {
            let r = sl2::check_intertwining_pairing(*lambda, &rc.quad)?;
            Ok(json!({
                "quantity": "<A* v_(H, w lambda), u> against c_w(conj lambda) <v_(H, lambda), u>",
                "report": to_value(&r),
            }))
        }
        Sl2Cmd::Smoothness {
            grid,
            h,
            fixed_lambda,
        } => {
            let grid = parse::complex_vec(grid)?;
            let v = match fixed_lambda {
                Some(l) => ProbeVector::Fixed(LineModelFunction::v_k(parse::complex(l)?)),
                None => ProbeVector::KVector,
            };
            let r = sl2::lambda_smoothness_probe(&v, &grid, *h)?;
            Ok(json!({
                "quantity": "conjugate Cauchy-Riemann residuals of lambda -> <v_(H, lambda), v>",
                "report": to_value(&r),
            }))
        }
    }
}

fn run_hardy(cmd: &HardyCmd, rc: &RunConfig) -> Result<Value, Failure> {
    match cmd {
        HardyCmd::Psi {
            case,
            point,
            absolute,
        } => {
            let (tag, s) = case_setup(rc, case)?;
            let z = complex_vec(point, s.rs.rank, "--point")?;
            let defaults = PsiOptions::default();
            let opts = PsiOptions {
                height: rc.height.unwrap_or(defaults.height),
                gamma: rc.gamma,
                quad: rc
                    .tol
                    .map(QuadratureConfig::with_tolerance)
                    .unwrap_or(defaults.quad),
                absolute: *absolute,
                ..defaults
            };
            let r = hardy::cauchy_szego(&s.ctx, &s.crown, &z, &opts)?;
            Ok(json!({
                "quantity": "Cauchy-Szego function Psi(z) as a spectral integral of theta against the Plancherel density",
                "case": tag.to_string(),
                "point": to_value(&z),
                "options": to_value(&opts),
                "report": to_value(&r),
            }))
        }
        HardyCmd::Density { case, grid } => {
            let (tag, s) = case_setup(rc, case)?;
            let pts = parse::real_vecs(grid)?;
            let mut rows = Vec::with_capacity(pts.len());
            for nu in pts {
                if nu.len() != s.rs.rank {
                    return Err(Failure::Usage(format!(
                        "grid points need {} coordinates",
                        s.rs.rank
                    )));
                }
                let d = hardy::plancherel_density(&s.ctx, &s.crown.base_point, &nu)?;
                rows.push(json!({ "nu": nu, "density": d }));
            }
            Ok(json!({
                "quantity": "Plancherel density 1/|c_G/H(i nu)|^2",
                "case": tag.to_string(),
                "rows": rows,
            }))
        }
        HardyCmd::Growth { case, c_values } => {
            let (tag, s) = case_setup(rc, case)?;
            let cs = parse::real_vec(c_values)?;
            let r = hardy::check_growth_condition(&s.ctx, &s.crown.base_point, &cs, &rc.quad)?;
            Ok(json!({
                "quantity": "convergence of int exp(c ||Im lambda||_H) d mu(lambda)",
                "case": tag.to_string(),
                "report": to_value(&r),
            }))
        }
    }
}

fn emit(v: &Value, rc: &RunConfig) -> Result<(), String> {
    let text = output::render(v, rc.format);
    match &rc.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rc = match RunConfig::resolve(&cli) {
        Ok(rc) => rc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (value, code) = match run(&cli, &rc) {
        Ok(v) => (v, 0),
        Err(Failure::Verification(v)) => (v, 1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}\n\nrun `hsph --help` for usage");
            return ExitCode::from(2);
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_numerical_domain() { 3 } else { 2 });
        }
    };
    if let Err(e) = emit(&value, &rc) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

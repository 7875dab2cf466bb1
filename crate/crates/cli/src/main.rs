use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use affdiam::corpus::{bundled, parse_entry, run_checks};
use affdiam::counterexample::{build_bodies, probe_all, probe_to_value, CounterexampleError};
use affdiam::diameters::{
    na_exact, na_montecarlo, planar_triangulation, DiameterCounter, DiameterError,
};
use affdiam::gauge::{
    gauge_distance, gauge_distance_f64, length_measures, lipschitz_bound, normal_bundle, theorem2_bound_check,
    GaugeError,
};
use affdiam::io::{parse_point, point_to_value, polytope_from_json, rational_to_value, InputError};
use affdiam::minkowski::{rogers_shephard_check, volume_polynomial, MinkowskiError};
use affdiam::position::{general_relative_position, strongly_general_relative_position};
use affdiam::svg::render_planar;
use affdiam::{Mode, Point, Polytope, Tolerance};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "affdiam", version, about = "Affine diameters, difference bodies and gauge projections of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, global = true, default_value = "exact")]
    mode: ModeArg,
    /// Tolerance for float mode and sampling.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// General relative position of P and -P, or strong position of P and a gauge body.
    CheckPosition {
        body: PathBuf,
        #[arg(long)]
        gauge: Option<PathBuf>,
    },
    /// Exact mean number of affine diameters.
    NaExact {
        body: PathBuf,
        /// Also count the diameters through this point ("x,y" or a JSON array).
        #[arg(long)]
        point: Option<String>,
    },
    /// Sampling estimate of the mean number of affine diameters.
    NaMontecarlo { body: PathBuf },
    /// Slab triangulation of the difference body of a polygon.
    Triangulate {
        body: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Coefficients of t -> V((1-t)P - tP) and the mixed volumes.
    VolumePoly { body: PathBuf },
    /// Rogers-Shephard bounds for the integral of the volume polynomial.
    RsCheck { body: PathBuf },
    /// Gauge distance, projection and normal of a point.
    Gauge {
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Normal bundle of a polygon pair and the Lipschitz bound of the gauge.
    Bundle {
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
    },
    /// Length measures on a partition of the circle into half-open arcs.
    Measures {
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        /// Arc start directions in ccw order, separated by ';' (default: one full arc).
        #[arg(long, default_value = "1,0")]
        arcs: String,
    },
    /// Planar bounds 1 <= N_a = V(DK)/(2V(K)) <= 3.
    Thm2Check { body: PathBuf },
    /// Probe ratios of the spatial example where the gauge projection is not Lipschitz.
    Counterexample {
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Run the checks over the bundled corpus, or over the given fixture files.
    Corpus { files: Vec<PathBuf> },
}

enum Failure {
    Input { kind: &'static str, message: String },
    Assertion { kind: &'static str, message: String },
}

impl Failure {
    fn input(kind: &'static str, message: impl ToString) -> Self {
        Failure::Input { kind, message: message.to_string() }
    }

    fn assertion(kind: &'static str, message: impl ToString) -> Self {
        Failure::Assertion { kind, message: message.to_string() }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let kind = match e {
            InputError::Json(_) => "parse_error",
            InputError::Schema(_) => "schema_error",
            InputError::Geometry(_) => "degenerate_input",
        };
        Failure::input(kind, e)
    }
}

impl From<DiameterError> for Failure {
    fn from(e: DiameterError) -> Self {
        match e {
            DiameterError::NotGeneralPosition(_) => Failure::input("not_general_position", e),
            DiameterError::NotInterior => Failure::input("not_interior", e),
            DiameterError::OnExceptionalSet => Failure::input("exceptional_point", e),
            DiameterError::UnsupportedDimension(_) => Failure::input("unsupported_dimension", e),
            DiameterError::Geometry(_) => Failure::input("degenerate_input", e),
            DiameterError::Minkowski(m) => m.into(),
            DiameterError::MismatchedPaths { .. } | DiameterError::FormulaMismatch { .. } => Failure::assertion("mismatch", e),
        }
    }
}

impl From<MinkowskiError> for Failure {
    fn from(e: MinkowskiError) -> Self {
        match e {
            MinkowskiError::BoundViolated(_) | MinkowskiError::SingularSystem => Failure::assertion("bound_violated", e),
            MinkowskiError::NotSupported(_) => Failure::input("unsupported_dimension", e),
            _ => Failure::input("degenerate_input", e),
        }
    }
}

impl From<GaugeError> for Failure {
    fn from(e: GaugeError) -> Self {
        match e {
            GaugeError::MeasureMismatch { .. } => Failure::assertion("measure_mismatch", e),
            GaugeError::BoundViolated(_) => Failure::assertion("bound_violated", e),
            GaugeError::Lp(_) => Failure::assertion("lp_failure", e),
            GaugeError::Diameter(d) => d.into(),
            GaugeError::Minkowski(m) => m.into(),
            GaugeError::OriginNotInterior => Failure::input("origin_not_interior", e),
            GaugeError::GaugeDegenerate | GaugeError::NotStronglyGeneralPosition(_) => {
                Failure::input("not_strongly_general_position", e)
            }
            GaugeError::DimensionMismatch(..) | GaugeError::InvalidArcs => Failure::input("schema_error", e),
        }
    }
}

impl From<CounterexampleError> for Failure {
    fn from(e: CounterexampleError) -> Self {
        match e {
            CounterexampleError::DepthTooSmall(_) | CounterexampleError::BadIndex { .. } => Failure::input("schema_error", e),
            _ => Failure::assertion("counterexample_failed", e),
        }
    }
}

/// Command output, plus whether a check it reports failed.
struct Output {
    text: String,
    failed: Option<String>,
}

impl Output {
    fn json(v: Value) -> Self {
        Output {
            text: format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
            failed: None,
        }
    }

    fn failing_if(mut self, cond: bool, why: &str) -> Self {
        if cond {
            self.failed = Some(why.to_string());
        }
        self
    }
}

fn read_body(path: &Path) -> Result<Polytope, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input("io_error", format!("{}: {e}", path.display())))?;
    Ok(polytope_from_json(&text)?)
}

fn point_arg(text: &str) -> Result<Point, Failure> {
    Ok(parse_point(text)?)
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rationals(qs: &[affdiam::Rational]) -> Value {
    Value::Array(qs.iter().map(rational_to_value).collect())
}

fn exact_only(cli: &Cli, command: &str) -> Result<(), Failure> {
    match cli.mode {
        ModeArg::Exact => Ok(()),
        ModeArg::Float => Err(Failure::input(
            "unsupported_mode",
            format!("{command} runs in exact arithmetic only"),
        )),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let tol = Tolerance::new(cli.eps);
    let mode = match cli.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    };
    match &cli.command {
        Command::CheckPosition { body, gauge } => {
            exact_only(cli, "check-position")?;
            let p = read_body(body)?;
            let report = match gauge {
                Some(g) => strongly_general_relative_position(&p, &read_body(g)?)?,
                None => general_relative_position(&p),
            };
            let holds = report.holds;
            Ok(Output::json(to_json(&report)).failing_if(!holds, "position check failed"))
        }
        Command::NaExact { body, point } => {
            exact_only(cli, "na-exact")?;
            let p = read_body(body)?;
            let r = na_exact(&p)?;
            let mut v = json!({
                "na": rational_to_value(&r.value),
                "via_slabs": rational_to_value(&r.via_slabs),
                "via_polynomial": rational_to_value(&r.via_polynomial),
                "slab_volumes": rationals(&r.slab_volumes),
            });
            if let Some(z) = point {
                let z = point_arg(z)?;
                v["point"] = point_to_value(&z);
                v["at_point"] = json!(DiameterCounter::new(&p)?.count_exact(&z)?);
            }
            Ok(Output::json(v))
        }
        Command::NaMontecarlo { body } => {
            let seed = cli
                .seed
                .ok_or_else(|| Failure::input("missing_seed", "na-montecarlo needs --seed for a reproducible run"))?;
            let p = read_body(body)?;
            let est = na_montecarlo(&p, cli.samples.unwrap_or(100_000), seed, &tol)?;
            Ok(Output::json(to_json(&est)))
        }
        Command::Triangulate { body, point } => {
            exact_only(cli, "triangulate")?;
            let p = read_body(body)?;
            if cli.format == Format::Svg {
                let z = point.as_deref().map(point_arg).transpose()?;
                return Ok(Output {
                    text: render_planar(&p, z.as_ref())?,
                    failed: None,
                });
            }
            let tris = planar_triangulation(&p)?;
            let v: Vec<Value> = tris
                .iter()
                .map(|t| Value::Array(t.iter().map(point_to_value).collect()))
                .collect();
            Ok(Output::json(json!({ "triangles": v })))
        }
        Command::VolumePoly { body } => {
            exact_only(cli, "volume-poly")?;
            let vp = volume_polynomial(&read_body(body)?)?;
            Ok(Output::json(json!({
                "dim": vp.dim,
                "coefficients": rationals(&vp.coeffs),
                "mixed_volumes": rationals(&vp.mixed_volumes()),
                "integral": rational_to_value(&vp.integral()),
            })))
        }
        Command::RsCheck { body } => {
            exact_only(cli, "rs-check")?;
            let r = rogers_shephard_check(&read_body(body)?)?;
            Ok(Output::json(to_json(&r)))
        }
        Command::Gauge { body, gauge, point } => {
            let (k, b) = (read_body(body)?, read_body(gauge)?);
            let x = point_arg(point)?;
            let v = match mode {
                Mode::Exact => {
                    let g = gauge_distance(&k, &b, &x)?;
                    json!({
                        "d": rational_to_value(&g.d),
                        "p": point_to_value(&g.projection()),
                        "u": g.normal().as_ref().map(point_to_value),
                    })
                }
                Mode::Float => to_json(&gauge_distance_f64(&k, &b, &x.to_f64(), &tol)?),
            };
            Ok(Output::json(v))
        }
        Command::Bundle { body, gauge } => {
            exact_only(cli, "bundle")?;
            let (k, b) = (read_body(body)?, read_body(gauge)?);
            let pieces = normal_bundle(&k, &b)?;
            let bound = lipschitz_bound(&b)?;
            Ok(Output::json(json!({ "pieces": to_json(&pieces), "lipschitz_bound": to_json(&bound) })))
        }
        Command::Measures { body, gauge, arcs } => {
            exact_only(cli, "measures")?;
            let (k, b) = (read_body(body)?, read_body(gauge)?);
            let arcs = arcs.split(';').map(point_arg).collect::<Result<Vec<_>, _>>()?;
            let r = length_measures(&k, &b, &arcs)?;
            Ok(Output::json(to_json(&r)))
        }
        Command::Thm2Check { body } => {
            exact_only(cli, "thm2-check")?;
            let r = theorem2_bound_check(&read_body(body)?)?;
            Ok(Output::json(to_json(&r)))
        }
        Command::Counterexample { depth } => {
            exact_only(cli, "counterexample")?;
            let inst = build_bodies(*depth)?;
            let probes = probe_all(&inst)?;
            let increasing = probes.windows(2).all(|w| w[1].ratio_squared > w[0].ratio_squared);
            let all_pass = probes.iter().all(|p| p.pass);
            let out = if cli.format == Format::Csv {
                Output {
                    text: probes_csv(&probes)?,
                    failed: None,
                }
            } else {
                Output::json(json!({
                    "instance": inst.to_value(),
                    "probes": probes.iter().map(probe_to_value).collect::<Vec<_>>(),
                    "increasing": increasing,
                }))
            };
            Ok(out.failing_if(!(all_pass && increasing), "a probe did not exceed its bound"))
        }
        Command::Corpus { files } => {
            let entries = if files.is_empty() {
                bundled()
            } else {
                files
                    .iter()
                    .map(|f| {
                        let text =
                            fs::read_to_string(f).map_err(|e| Failure::input("io_error", format!("{}: {e}", f.display())))?;
                        let name = f.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
                        Ok(parse_entry(&name, &text)?)
                    })
                    .collect::<Result<Vec<_>, Failure>>()?
            };
            let outcomes = run_checks(&entries);
            let failures = outcomes.iter().filter(|o| !o.pass).count();
            Ok(Output::json(json!({ "checks": to_json(&outcomes), "failures": failures }))
                .failing_if(failures > 0, "corpus checks failed"))
        }
    }
}

#[derive(Serialize)]
struct ProbeRow {
    n: usize,
    ratio: f64,
    bound: f64,
    pass: bool,
}

fn probes_csv(probes: &[affdiam::counterexample::ProbeReport]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in probes {
        w.serialize(ProbeRow {
            n: p.n,
            ratio: p.ratio,
            bound: p.bound,
            pass: p.pass,
        })
        .map_err(|e| Failure::input("io_error", e))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::input("io_error", e))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn emit_error(kind: &str, message: &str) {
    eprintln!("{}", json!({ "kind": kind, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit_error("usage_error", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                emit_error("io_error", &e.to_string());
                return ExitCode::from(2);
            }
            match out.failed {
                Some(why) => {
                    emit_error("check_failed", &why);
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Input { kind, message }) => {
            emit_error(kind, &message);
            ExitCode::from(2)
        }
        Err(Failure::Assertion { kind, message }) => {
            emit_error(kind, &message);
            ExitCode::from(1)
        }
    }
}

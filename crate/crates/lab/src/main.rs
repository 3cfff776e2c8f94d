use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use toric_core::invariants::{criterion_verdict, report, ruelle_closed_form, ruelle_quadrature, DEFAULT_THRESHOLDS};
use toric_core::reeb::{enumerate_orbits, t_min, Method};
use toric_core::surgery::{flatten_near_intercept, strain, strangulate, SurgeryOutcome};
use toric_core::{classify, Flag, MomentProfile, OrbitDatum, Vec2};
use toric_lab::svg::{emit_profile_svg, Overlay};
use toric_lab::tables::{report_key_values, sig17, write_orbits_csv, write_report_csv};
use toric_lab::{load_profile, run_corpus_bounds, run_fc_scan, run_sweep, save_profile, LabError, RunConfig, SweepOp};

const FINDING: u8 = 3;

#[derive(Parser)]
#[command(name = "toric", version, about = "Invariants and surgeries of star-shaped toric domains")]
struct Cli {
    /// Write a CSV table here
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Write an SVG picture here
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Tolerance for verification checks
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Box size of the brute-force orbit search
    #[arg(long = "oracle-n", global = true, default_value_t = 200)]
    oracle_n: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fast,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Strangulate,
    Strain,
}

#[derive(Subcommand)]
enum Command {
    /// Star-shaped, monotone, strictly monotone and convex flags
    Classify { profile: String },
    /// Volume, Ruelle invariant, T_min, ratios and the criterion verdict
    Invariants {
        profile: String,
        #[arg(long, default_value_t = DEFAULT_THRESHOLDS.0)]
        lower: f64,
        #[arg(long, default_value_t = DEFAULT_THRESHOLDS.1)]
        upper: f64,
    },
    /// Closed orbits with action up to a cutoff
    Orbits {
        profile: String,
        #[arg(long)]
        cutoff: f64,
    },
    /// Minimal action
    Tmin {
        profile: String,
        #[arg(long, value_enum, default_value = "fast")]
        method: MethodArg,
    },
    /// Remove a thin sector along a ray
    Strangulate {
        profile: String,
        #[arg(long)]
        eps: f64,
        /// Ray angle in radians
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        ray: f64,
        /// Save the new profile
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue a long thin spike along the w1-axis
    Strain {
        profile: String,
        #[arg(long)]
        eps: f64,
        /// Flatten near (a, 0) first, with this radius
        #[arg(long)]
        flatten: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a surgery over a grid of eps values
    Sweep {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long)]
        profile: String,
        #[arg(long = "eps-grid", value_delimiter = ',', num_args = 0..)]
        eps_grid: Vec<f64>,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        ray: f64,
        #[arg(long)]
        flatten: Option<f64>,
    },
    /// Products over seeded monotone and convex corpora
    Bounds {
        #[arg(long, default_value_t = 100)]
        corpus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gromov width over volume across the f_c family
    FcScan {
        #[arg(long)]
        b: f64,
        /// Values of c; 20 evenly spaced values in [b/(1+b), 1) when omitted
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        grid: Vec<f64>,
    },
    /// Ruelle invariant by quadrature against a + b
    VerifyRuelle {
        profile: String,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn flag_line(name: &str, f: Flag) -> String {
    match f.witness {
        Some(w) if !f.holds => format!("{name} = false ({w:?})"),
        _ => format!("{name} = {}", f.holds),
    }
}

fn orbit_line(o: &OrbitDatum) -> String {
    format!(
        "({}, {}) at ({}, {}) action {} [{}]",
        o.mn.m,
        o.mn.n,
        o.base_point.x,
        o.base_point.y,
        sig17(o.action),
        o.location.kind()
    )
}

fn print_outcome(o: &SurgeryOutcome) {
    println!("volume_delta = {}", sig17(o.volume_delta));
    println!("volume_delta_bound = {}", sig17(o.volume_delta_bound));
    for w in &o.new_orbit_witnesses {
        println!("new_orbit = {}", orbit_line(w));
    }
    let f = o.preserved_flags;
    for (n, flag) in [("star_shaped", f.star_shaped), ("monotone", f.monotone), ("strictly_monotone", f.strictly_monotone), ("convex_4d", f.convex_4d)] {
        println!("{}", flag_line(n, flag));
    }
}

fn write_csv_file(path: &PathBuf, f: impl FnOnce(File) -> Result<(), LabError>) -> Result<(), LabError> {
    let file = File::create(path).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
    f(file)
}

fn maybe_svg(cli_svg: &Option<PathBuf>, p: &MomentProfile, overlays: &[Overlay]) -> Result<(), LabError> {
    match cli_svg {
        Some(path) => emit_profile_svg(p, overlays, path),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<u8, LabError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Classify { profile } => {
            let p = load_profile(&profile)?;
            let c = classify(&p);
            for (n, flag) in [("star_shaped", c.star_shaped), ("monotone", c.monotone), ("strictly_monotone", c.strictly_monotone), ("convex_4d", c.convex_4d)] {
                writeln!(stdout, "{}", flag_line(n, flag))?;
            }
            maybe_svg(&cli.svg, &p, &[])?;
        }
        Command::Invariants { profile, lower, upper } => {
            let p = load_profile(&profile)?;
            let r = report(&p)?;
            write!(stdout, "{}", report_key_values(&r))?;
            writeln!(stdout, "t_min_orbit = {}", orbit_line(&r.t_min_orbit))?;
            let v = criterion_verdict(&p, lower, upper)?;
            writeln!(stdout, "verdict = {}", v.verdict.label())?;
            writeln!(stdout, "note = {}", v.note)?;
            if let Some(path) = &cli.csv {
                write_csv_file(path, |f| write_report_csv(f, &[r]))?;
            }
            maybe_svg(&cli.svg, &p, &[])?;
        }
        Command::Orbits { profile, cutoff } => {
            let p = load_profile(&profile)?;
            let orbits = enumerate_orbits(&p, cutoff);
            match &cli.csv {
                Some(path) => write_csv_file(path, |f| write_orbits_csv(f, &p, &orbits))?,
                None => write_orbits_csv(&mut stdout, &p, &orbits)?,
            }
        }
        Command::Tmin { profile, method } => {
            let p = load_profile(&profile)?;
            let m = match method {
                MethodArg::Fast => Method::Fast,
                MethodArg::Oracle => Method::Oracle { cutoff: cli.oracle_n },
            };
            let o = t_min(&p, m)?;
            writeln!(stdout, "t_min = {}", sig17(o.action))?;
            writeln!(stdout, "orbit = {}", orbit_line(&o))?;
        }
        Command::Strangulate { profile, eps, ray, out } => {
            let p = load_profile(&profile)?;
            let s = strangulate(&p, eps, ray)?;
            let sp = s.spec;
            println!("theta = {}", sig17(sp.theta));
            println!("w_star = {}", sig17(sp.w_star));
            println!("apex = ({}, {})", sp.apex.x, sp.apex.y);
            println!("side_condition = {}", s.side_condition);
            print_outcome(&s.outcome);
            let dir = (sp.hit - sp.apex).unit();
            let reach = (sp.hit - sp.apex).norm() * 1.5;
            maybe_svg(&cli.svg, &p, &[Overlay::Sector { apex: sp.apex, dir, theta: sp.theta, reach }])?;
            if let Some(path) = out {
                save_profile(&s.outcome.profile, &path)?;
            }
        }
        Command::Strain { profile, eps, flatten, out } => {
            let mut p = load_profile(&profile)?;
            if let Some(r) = flatten {
                let f = flatten_near_intercept(&p, r)?;
                println!("flatten_k = {}", sig17(f.k));
                println!("flatten_area_change = {}", sig17(f.area_change));
                p = f.profile;
            }
            let s = strain(&p, eps, None)?;
            println!("k = {}", sig17(s.spec.k));
            println!("w_star = {}", sig17(s.spec.w_star));
            println!("spike_intercept = {}", sig17(s.spec.spike_intercept));
            println!("strictly_monotone_preserved = {}", s.strictly_monotone_preserved);
            print_outcome(&s.outcome);
            let tri = [Vec2::new(0.0, 0.0), Vec2::new(s.spec.w_star, eps), Vec2::new(s.spec.spike_intercept, 0.0)];
            maybe_svg(&cli.svg, &s.outcome.profile, &[Overlay::Triangle(tri)])?;
            if let Some(path) = out {
                save_profile(&s.outcome.profile, &path)?;
            }
        }
        Command::Sweep { op, profile, eps_grid, ray, flatten } => {
            let config = RunConfig {
                op: match op {
                    OpArg::Strangulate => SweepOp::Strangulate,
                    OpArg::Strain => SweepOp::Strain,
                },
                profile,
                eps_grid,
                ray_angle: ray,
                flatten_radius: flatten,
                csv: cli.csv.clone(),
                svg: cli.svg.clone(),
                tol: cli.tol.unwrap_or(RunConfig::default().tol),
                oracle_cutoff: cli.oracle_n,
                ..RunConfig::default()
            };
            let rows = run_sweep(&config)?;
            if config.csv.is_none() {
                toric_lab::tables::write_sweep_csv(&mut stdout, &rows)?;
            }
            if rows.iter().any(|r| r.bound_holds == Some(false)) {
                eprintln!("finding: the tracked bound fails on at least one row");
                return Ok(FINDING);
            }
        }
        Command::Bounds { corpus, seed } => {
            let config = RunConfig { corpus_size: corpus, seed, tol: cli.tol.unwrap_or(RunConfig::default().tol), ..RunConfig::default() };
            let s = run_corpus_bounds(&config)?;
            let m = &s.monotone;
            let c = &s.convex_4d;
            writeln!(stdout, "monotone: n = {}, min product = {} (#{}), max = {}", m.count, sig17(m.min_product), m.argmin, sig17(m.max_product))?;
            writeln!(stdout, "convex_4d: n = {}, min product = {}, max = {} (#{})", c.count, sig17(c.min_product), sig17(c.max_product), c.argmax)?;
            writeln!(stdout, "t_min = gromov width on {} of {} monotone polygons", s.t_min_equals_gromov, m.count)?;
            for r in &s.polydisks {
                writeln!(stdout, "polydisk(1, {}): product = {}, (1+b)/(2b) = {}", r.b, sig17(r.product), sig17(r.expected))?;
            }
            for (i, e) in m.failures.iter().chain(&c.failures) {
                writeln!(stdout, "failed #{i}: {e}")?;
            }
            if s.violations() > 0 || s.strict_not_monotone > 0 {
                writeln!(stdout, "violations: monotone {:?}, convex_4d {:?}", m.violations, c.violations)?;
                return Ok(FINDING);
            }
        }
        Command::FcScan { b, grid } => {
            let grid = if grid.is_empty() { toric_lab::experiments::fc_grid(b, 20) } else { grid };
            let s = run_fc_scan(b, &grid)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["c", "volume_closed_form", "volume_quadrature", "gromov_width", "ratio"])?;
            for r in &s.rows {
                w.write_record([sig17(r.c), sig17(r.volume_closed_form), sig17(r.volume_quadrature), sig17(r.gromov_width), sig17(r.ratio)])?;
            }
            let table = w.into_inner().map_err(|e| LabError::Io(e.to_string()))?;
            match &cli.csv {
                Some(path) => std::fs::write(path, &table)?,
                None => stdout.write_all(&table)?,
            }
            writeln!(stdout, "argmax c = {}, max c_Gr/Vol = {}, 6/(1+b) = {}", sig17(s.argmax_c), sig17(s.max_ratio), sig17(6.0 / (1.0 + b)))?;
        }
        Command::VerifyRuelle { profile, n } => {
            let p = load_profile(&profile)?;
            let exact = ruelle_closed_form(&p);
            let quad = ruelle_quadrature(&p, n)?;
            let rel = (quad - exact).abs() / exact;
            let tol = cli.tol.unwrap_or(if p.is_polygonal() { 1e-12 } else { 1e-6 });
            writeln!(stdout, "a + b = {}", sig17(exact))?;
            writeln!(stdout, "quadrature = {}", sig17(quad))?;
            writeln!(stdout, "relative error = {rel:e}")?;
            if rel > tol {
                writeln!(stdout, "finding: relative error exceeds {tol:e}")?;
                return Ok(FINDING);
            }
        }
    }
    Ok(0)
}

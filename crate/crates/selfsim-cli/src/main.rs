//! Command-line frontend for the overlap-curve toolkit.
//!
//! Exit codes: 0 on success, 2 on validation errors (bad sequences,
//! arguments outside their domains), 3 on numerical failures (no
//! intersection with R, no exception window), 1 on I/O errors.

mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use selfsim_core::{
    build_catalog, build_curve_poly, certify_exception, config_digest, exception_window,
    intersects_r, merged_probability, reduced_similarity_dimension, sample_measure,
    similarity_dimension, solve_d, trace_curve, CertifyError, CurveError, DimError, SdHatMethod,
    SeqPair, TraceConfig,
};

use report::{
    catalog_csv, fmt_f64, points_csv, poly_terms_json, to_json, CatalogDto, CatalogRecordDto,
    CertificateDto, ProfileDto,
};

#[derive(Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Overlap curves and singularity certificates for two-map self-similar measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate canonical sequence pairs and probe their curves against R.
    Catalog {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Write the full catalog as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write a flat CSV of the records.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build one curve polynomial and trace its zero set.
    Curve {
        /// First sequence, e.g. "+---+".
        #[arg(long = "s", allow_hyphen_values = true)]
        s: String,
        /// Second sequence, e.g. "-++--".
        #[arg(long = "t", allow_hyphen_values = true)]
        t: String,
        /// Render the trace to an SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write traced points as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Slice step for the trace grid.
        #[arg(long, default_value_t = 1e-3)]
        y_step: f64,
    },
    /// Produce a singularity certificate for one pair.
    Certify {
        #[arg(long = "s", allow_hyphen_values = true)]
        s: String,
        #[arg(long = "t", allow_hyphen_values = true)]
        t: String,
        /// Write the certificate as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate both dimensions over a weight grid at fixed ratios.
    Dims {
        #[arg(long)]
        beta1: f64,
        #[arg(long)]
        beta2: f64,
        #[arg(long = "s", allow_hyphen_values = true)]
        s: String,
        #[arg(long = "t", allow_hyphen_values = true)]
        t: String,
        /// Number of interior grid points.
        #[arg(long, default_value_t = 1000)]
        p_grid: usize,
    },
    /// Draw chaos-game samples of the invariant measure.
    Sample {
        #[arg(long)]
        beta1: f64,
        #[arg(long)]
        beta2: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<CertifyError> for Failure {
    fn from(err: CertifyError) -> Self {
        let message = err.to_string();
        match err {
            CertifyError::NoIntersectionWithR => Failure::Numerical(message),
            CertifyError::LimitExceeded { .. } | CertifyError::Pair(_) => {
                Failure::Validation(message)
            }
            CertifyError::Curve(curve) => match curve {
                CurveError::InvalidSlice(_)
                | CurveError::InvalidPoint { .. }
                | CurveError::DegenerateCurve => Failure::Validation(message),
            },
            CertifyError::Dim(dim) => match dim {
                DimError::OutOfDomain(_) | DimError::PairTooLong { .. } => {
                    Failure::Validation(message)
                }
                DimError::NotInR | DimError::NotOnCurve(_) | DimError::WindowNotFound { .. } => {
                    Failure::Numerical(message)
                }
            },
        }
    }
}

impl From<selfsim_core::PairError> for Failure {
    fn from(err: selfsim_core::PairError) -> Self {
        Failure::Validation(err.to_string())
    }
}

impl From<DimError> for Failure {
    fn from(err: DimError) -> Self {
        Failure::from(CertifyError::Dim(err))
    }
}

impl From<CurveError> for Failure {
    fn from(err: CurveError) -> Self {
        Failure::from(CertifyError::Curve(err))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Io(format!("writing {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Catalog { n_min, n_max, json, csv } => run_catalog(n_min, n_max, json, csv),
        Command::Curve { s, t, svg, csv, y_step } => run_curve(&s, &t, svg, csv, y_step),
        Command::Certify { s, t, json } => run_certify(&s, &t, json),
        Command::Dims { beta1, beta2, s, t, p_grid } => run_dims(beta1, beta2, &s, &t, p_grid),
        Command::Sample { beta1, beta2, p, n, seed, out } => {
            run_sample(beta1, beta2, p, n, seed, out)
        }
    }
}

fn run_catalog(
    n_min: usize,
    n_max: usize,
    json: Option<PathBuf>,
    csv: Option<PathBuf>,
) -> Result<(), Failure> {
    let cfg = TraceConfig::default();
    let records = build_catalog(n_min, n_max, &cfg)?;

    for n in n_min..=n_max {
        let slice: Vec<_> = records.iter().filter(|r| r.pair.n() == n).collect();
        let ordered: usize = slice.iter().map(|r| r.pair.orbit_size()).sum();
        let sufficient = slice.iter().filter(|r| r.sufficient_condition).count();
        let intersecting = slice.iter().filter(|r| r.intersects_r).count();
        let certified = slice.iter().filter(|r| r.certificate.is_some()).count();
        println!(
            "n={n}: {} canonical classes ({ordered} ordered pairs), {sufficient} satisfy the prefix condition, {intersecting} meet R, {certified} certified",
            slice.len()
        );
    }
    for record in records.iter().filter(|r| r.intersects_r) {
        let point = record.witness_point.as_ref().expect("intersecting record");
        println!(
            "  n={} s={} t={} witness=({}, {}) certified={}",
            record.pair.n(),
            record.pair.s(),
            record.pair.t(),
            fmt_f64(point.beta1()),
            fmt_f64(point.beta2()),
            record.certificate.is_some()
        );
    }

    if let Some(path) = json {
        let dto = CatalogDto {
            n_min,
            n_max,
            y_step: cfg.y_step,
            bisection_tol: cfg.bisection_tol,
            config_digest: config_digest(&cfg),
            records: records.iter().map(CatalogRecordDto::from).collect(),
        };
        write_file(&path, &(to_json(&dto) + "\n"))?;
    }
    if let Some(path) = csv {
        write_file(&path, &catalog_csv(&records))?;
    }
    Ok(())
}

fn run_curve(
    s: &str,
    t: &str,
    svg: Option<PathBuf>,
    csv: Option<PathBuf>,
    y_step: f64,
) -> Result<(), Failure> {
    if !(y_step > 0.0 && y_step < 1.0) {
        return Err(Failure::Validation(format!(
            "y-step {y_step} must lie strictly inside (0,1)"
        )));
    }
    let pair = SeqPair::parse(s, t)?;
    let poly = build_curve_poly(&pair);
    let cfg = TraceConfig { y_step, ..TraceConfig::default() };

    println!("F(x,y) = {poly}");
    println!("terms: {}", poly_terms_json(&poly));

    let points = trace_curve(&poly, &cfg)?;
    let inside = points.iter().filter(|p| p.in_r()).count();
    println!("traced {} points, {} inside R", points.len(), inside);
    if let Some(witness) = intersects_r(&poly, &cfg)? {
        println!(
            "deepest R-witness: beta1={} beta2={}",
            fmt_f64(witness.beta1()),
            fmt_f64(witness.beta2())
        );
    }

    if let Some(path) = csv {
        write_file(&path, &points_csv(&points))?;
    }
    if let Some(path) = svg {
        write_file(&path, &svg::curve_svg(&points))?;
    }
    Ok(())
}

fn run_certify(s: &str, t: &str, json: Option<PathBuf>) -> Result<(), Failure> {
    let pair = SeqPair::parse(s, t)?;
    let cfg = TraceConfig::default();
    let certificate = certify_exception(&pair, &cfg)?;
    let profile = exception_window(&pair, &certificate.point)?;

    println!("pair: s={} t={}", pair.s(), pair.t());
    println!(
        "witness point: beta1={} beta2={} residual={}",
        fmt_f64(certificate.point.beta1()),
        fmt_f64(certificate.point.beta2()),
        fmt_f64(certificate.point.residual())
    );
    println!("d={} p_M={}", fmt_f64(certificate.d), fmt_f64(certificate.p_m));
    println!(
        "witness weight p={}: SD={} reduced SD={}",
        fmt_f64(certificate.witness_p),
        fmt_f64(certificate.sd),
        fmt_f64(certificate.sd_hat)
    );
    println!("overlap residual: {}", fmt_f64(certificate.overlap_residual));
    println!("profile: {}", to_json(&ProfileDto::from(&profile)));

    if let Some(path) = json {
        write_file(&path, &(to_json(&CertificateDto::from(&certificate)) + "\n"))?;
    }
    Ok(())
}

fn run_dims(beta1: f64, beta2: f64, s: &str, t: &str, p_grid: usize) -> Result<(), Failure> {
    if p_grid < 2 {
        return Err(Failure::Validation(format!(
            "p-grid needs at least 2 points, got {p_grid}"
        )));
    }
    let pair = SeqPair::parse(s, t)?;
    let d = solve_d(beta1, beta2)?;
    let p_m = beta1.powf(d);
    println!("# pair s={} t={} beta1={} beta2={}", pair.s(), pair.t(), beta1, beta2);
    println!("# d={} p_M={}", fmt_f64(d), fmt_f64(p_m));
    println!("# columns: p sd sd_hat merged_probability");
    for i in 0..p_grid {
        let p = (i as f64 + 1.0) / (p_grid as f64 + 1.0);
        let sd = similarity_dimension(beta1, beta2, p)?;
        let sd_hat = reduced_similarity_dimension(&pair, beta1, beta2, p, SdHatMethod::Closed)?;
        let merged = merged_probability(&pair, p)?;
        println!(
            "{} {} {} {}",
            fmt_f64(p),
            fmt_f64(sd),
            fmt_f64(sd_hat),
            fmt_f64(merged)
        );
    }
    Ok(())
}

fn run_sample(
    beta1: f64,
    beta2: f64,
    p: f64,
    n: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let samples = sample_measure(beta1, beta2, p, n, seed)?;
    let mut text = String::with_capacity(n * 24);
    for value in &samples.points {
        text.push_str(&fmt_f64(*value));
        text.push('\n');
    }
    match out {
        Some(path) => write_file(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

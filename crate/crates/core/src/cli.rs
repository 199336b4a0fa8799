//! Command-line front end.
//!
//! Subcommands write CSV or JSON data: sampled family members (`deform`),
//! closed-form versus quadrature normalization (`norm-table`), parameter
//! pairs with a prescribed normalization (`matched-pairs`) and spectral
//! certificates (`verify`). Exit codes: 0 success, 1 failed check or
//! singular parameter, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::darboux::{self, Deformation, GammaParameter, Orientation, SeedSpec};
use crate::hydrogen::{self, HydrogenFamily};
use crate::oscillator;
use crate::specfun::{adaptive_quadrature, SQRT_PI};
use crate::spectral::{self, SpectrumReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Closed-form and quadrature normalizations must agree this well.
pub const NORM_TOLERANCE: f64 = 1e-8;
/// Matched pairs must reproduce the target normalization this well.
pub const MATCH_TOLERANCE: f64 = 1e-10;
/// Eigenvalue tolerance against the undeformed numerical spectrum.
pub const ISOSPECTRAL_TOLERANCE: f64 = 2e-4;
/// Eigenvalue tolerance against the exact Coulomb levels.
pub const COULOMB_TOLERANCE: f64 = 5e-4;

#[derive(Debug, Parser)]
#[command(
    name = "darboux-deform",
    version,
    about = "One-parameter Darboux deformations of Schrödinger potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample potentials and ground states, one file per gamma.
    Deform {
        #[command(flatten)]
        common: CommonArgs,
        /// Fail with exit code 1 if any gamma cannot be normalized.
        #[arg(long)]
        normalized: bool,
    },
    /// Compare closed-form normalization constants with quadrature.
    NormTable {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Parameters whose normalization equals the undeformed one.
    MatchedPairs {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Certify isospectrality with a finite-difference eigensolver.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of lowest eigenvalues to compare.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Family::Oscillator)]
    family: Family,
    /// Orbital index of the hydrogen family (ell >= 1).
    #[arg(long)]
    ell: Option<u32>,
    /// Deformation parameter; repeat for several. `inf` gives the undeformed member.
    #[arg(long = "gamma", allow_hyphen_values = true, value_parser = parse_gamma)]
    gammas: Vec<f64>,
    /// Grid as `min,max,points`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Output path prefix; JSON reports go to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Oscillator,
    Hydrogen,
    /// Reflectionless `-2 sech² x` well.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let g: f64 = s.trim().parse().map_err(|_| format!("not a number: {s}"))?;
    if g.is_nan() {
        return Err("gamma must not be NaN".to_string());
    }
    Ok(g)
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected min,max,points, got {s}"));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad grid min: {}", parts[0]))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad grid max: {}", parts[1]))?;
    let points: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad grid points: {}", parts[2]))?;
    Ok(GridSpec { min, max, points })
}

/// Validated configuration shared by all subcommands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub family: Family,
    pub gammas: Vec<f64>,
    pub ell: Option<u32>,
    pub grid: GridSpec,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(format!("i/o error: {e}"))
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match cli.command {
        Command::Deform { common, normalized } => {
            config(common, Stage::Deform).and_then(|c| cmd_deform(&c, normalized))
        }
        Command::NormTable { common } => {
            config(common, Stage::NormTable).and_then(|c| cmd_norm_table(&c))
        }
        Command::MatchedPairs { common } => {
            config(common, Stage::MatchedPairs).and_then(|c| cmd_matched_pairs(&c))
        }
        Command::Verify { common, k } => {
            config(common, Stage::Verify).and_then(|c| cmd_verify(&c, k))
        }
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Stage {
    Deform,
    NormTable,
    MatchedPairs,
    Verify,
}

fn config(args: CommonArgs, stage: Stage) -> std::result::Result<RunConfig, Failure> {
    match (args.family, args.ell) {
        (Family::Hydrogen, None) => {
            return Err(Failure::Usage(
                "--ell is required for the hydrogen family".into(),
            ))
        }
        (Family::Hydrogen, Some(0)) => {
            return Err(Failure::Usage("--ell must be at least 1".into()))
        }
        (Family::Hydrogen, Some(ell)) => {
            if crate::specfun::gamma_ell(ell).is_err() {
                return Err(Failure::Usage(format!("--ell {ell} is too large")));
            }
        }
        (_, Some(_)) => {
            return Err(Failure::Usage(
                "--ell only applies to the hydrogen family".into(),
            ))
        }
        (_, None) => {}
    }
    if stage != Stage::MatchedPairs && args.gammas.is_empty() {
        return Err(Failure::Usage("at least one --gamma is required".into()));
    }
    let grid = args
        .grid
        .unwrap_or_else(|| default_grid(args.family, args.ell, stage));
    if grid.points < 2 {
        return Err(Failure::Usage(format!(
            "grid needs at least 2 points, got {}",
            grid.points
        )));
    }
    if !(grid.min.is_finite() && grid.max.is_finite()) || grid.min >= grid.max {
        return Err(Failure::Usage(format!(
            "grid needs finite min < max, got {},{}",
            grid.min, grid.max
        )));
    }
    if args.family == Family::Hydrogen {
        let ok = match stage {
            Stage::Verify => grid.min >= 0.0,
            _ => grid.min > 0.0,
        };
        if !ok {
            return Err(Failure::Usage("hydrogen grids must lie in r > 0".into()));
        }
    }
    Ok(RunConfig {
        family: args.family,
        gammas: args.gammas,
        ell: args.ell,
        grid,
        output: args.out,
        format: args.format,
    })
}

fn default_grid(family: Family, ell: Option<u32>, stage: Stage) -> GridSpec {
    let (min, max, points) = match (family, stage) {
        (Family::Oscillator, Stage::Verify) => (-10.0, 10.0, 4000),
        (Family::Oscillator, _) => (-5.0, 5.0, 1001),
        (Family::Hydrogen, Stage::Verify) => (0.0, 120.0, 12000),
        (Family::Hydrogen, _) => {
            let l = ell.unwrap_or(1) as f64;
            (0.05, 40f64.max(10.0 * l * l), 800)
        }
        (Family::Generic, Stage::Verify) => (-20.0, 20.0, 4000),
        (Family::Generic, _) => (-6.0, 6.0, 1201),
    };
    GridSpec { min, max, points }
}

/// Uniform view of the three families.
enum Model {
    Oscillator,
    Hydrogen(u32),
    Generic(SeedSpec),
}

impl Model {
    fn new(config: &RunConfig) -> Self {
        match config.family {
            Family::Oscillator => Model::Oscillator,
            Family::Hydrogen => Model::Hydrogen(config.ell.unwrap_or(1)),
            Family::Generic => Model::Generic(darboux::sech_squared_seed()),
        }
    }

    fn tag(&self) -> String {
        match self {
            Model::Oscillator => "oscillator".into(),
            Model::Hydrogen(ell) => format!("hydrogen_ell{ell}"),
            Model::Generic(_) => "generic".into(),
        }
    }

    fn orientation(&self) -> Orientation {
        match self {
            Model::Oscillator => Orientation::Plus,
            Model::Hydrogen(_) => Orientation::Minus,
            Model::Generic(seed) => seed.orientation(),
        }
    }

    fn total(&self) -> f64 {
        match self {
            Model::Oscillator => SQRT_PI,
            Model::Hydrogen(ell) => crate::specfun::gamma_ell(*ell).unwrap_or(f64::INFINITY),
            Model::Generic(seed) => seed.total().unwrap_or(f64::NAN),
        }
    }

    fn scaling(&self) -> f64 {
        match self {
            Model::Oscillator => oscillator::SCALING,
            Model::Hydrogen(_) => 1.0,
            Model::Generic(seed) => seed.scaling(),
        }
    }

    fn classify(&self, gamma: f64) -> GammaParameter {
        GammaParameter::classify(gamma, self.orientation(), self.total())
    }

    fn irregular(&self, gamma: f64) -> Failure {
        Failure::Check(format!(
            "gamma = {gamma} is singular for the {} family: {}",
            self.tag(),
            darboux::regular_domain(self.orientation(), self.total())
        ))
    }

    fn require_regular(&self, gamma: f64) -> Outcome {
        if self.classify(gamma).is_regular() {
            Ok(())
        } else {
            Err(self.irregular(gamma))
        }
    }

    fn denominator(&self, gamma: f64, x: f64) -> f64 {
        match self {
            Model::Oscillator => oscillator::denominator(gamma, x),
            Model::Hydrogen(ell) => {
                if gamma.is_infinite() {
                    gamma
                } else {
                    gamma - crate::specfun::incomplete_pe_integral(*ell, x)
                }
            }
            Model::Generic(seed) => Deformation::allow_singular(seed, gamma)
                .denominator(x)
                .unwrap_or(f64::NAN),
        }
    }

    /// Deformed potential (reduced radial potential for hydrogen).
    fn potential(&self, gamma: f64, x: f64) -> f64 {
        match self {
            Model::Oscillator => oscillator::potential_unchecked(gamma, x),
            Model::Hydrogen(ell) => HydrogenFamily::allow_singular(*ell, gamma)
                .map(|f| f.potential(x))
                .unwrap_or(f64::NAN),
            Model::Generic(seed) => Deformation::allow_singular(seed, gamma)
                .potential(x)
                .unwrap_or(f64::NAN),
        }
    }

    /// Unnormalized ground state (radial function for hydrogen). The
    /// undeformed limit returns the seed itself rather than zero.
    fn psi(&self, gamma: f64, x: f64) -> f64 {
        if gamma.is_infinite() {
            return match self {
                Model::Oscillator => (-0.5 * x * x).exp(),
                Model::Hydrogen(ell) => {
                    let l = *ell as f64;
                    x.powi(*ell as i32 - 1) * (-x / l).exp()
                }
                Model::Generic(seed) => seed.zero_mode(x),
            };
        }
        match self {
            Model::Oscillator => oscillator::ground_state_unchecked(gamma, x),
            Model::Hydrogen(ell) => HydrogenFamily::allow_singular(*ell, gamma)
                .map(|f| f.radial(x))
                .unwrap_or(f64::NAN),
            Model::Generic(seed) => Deformation::allow_singular(seed, gamma)
                .ground_state(x)
                .unwrap_or(f64::NAN),
        }
    }

    /// Normalization constant multiplying [`Model::psi`].
    fn norm_const(&self, gamma: f64) -> std::result::Result<f64, Failure> {
        self.require_regular(gamma)?;
        if gamma.is_infinite() {
            return Ok(1.0 / self.total().sqrt());
        }
        Ok(darboux::norm_const_closed_form(
            gamma,
            self.orientation(),
            self.total(),
        ))
    }

    fn norm_quadrature(&self, gamma: f64) -> std::result::Result<f64, Failure> {
        self.require_regular(gamma)?;
        let q = match self {
            Model::Hydrogen(_) => adaptive_quadrature(
                |r| (r * self.psi(gamma, r)).powi(2),
                0.0,
                f64::INFINITY,
                1e-13,
            )?,
            _ => adaptive_quadrature(
                |x| self.psi(gamma, x).powi(2),
                f64::NEG_INFINITY,
                f64::INFINITY,
                1e-13,
            )?,
        };
        Ok(1.0 / q.value.sqrt())
    }

    /// Normalization of the undeformed state, the target of matched pairs.
    fn target_norm(&self) -> f64 {
        match self {
            Model::Hydrogen(ell) => hydrogen::undeformed_norm_const(*ell),
            _ => 1.0 / self.total().sqrt(),
        }
    }

    fn undeformed_potential(&self, x: f64) -> f64 {
        match self {
            Model::Oscillator => 0.5 * x * x,
            Model::Hydrogen(ell) => hydrogen::coulomb_potential(ell - 1, x),
            Model::Generic(seed) => seed.physical_potential(x),
        }
    }
}

fn cmd_deform(config: &RunConfig, normalized: bool) -> Outcome {
    let model = Model::new(config);
    if normalized {
        if let Some(&g) = config
            .gammas
            .iter()
            .find(|&&g| !model.classify(g).is_regular())
        {
            return Err(model.irregular(g));
        }
    }
    for &gamma in &config.gammas {
        let table = sample_member(&model, gamma, config.grid);
        let ext = match config.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let path = output_path(
            config.output.as_deref(),
            &format!("{}_gamma_{gamma}.{ext}", model.tag()),
        );
        let mut w = create(&path)?;
        match config.format {
            Format::Csv => table.write_csv(&mut w)?,
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, &table).map_err(io::Error::from)?;
                writeln!(w)?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct MemberTable {
    family: String,
    gamma: f64,
    regular: bool,
    norm_const: Option<f64>,
    x: Vec<f64>,
    #[serde(rename = "V")]
    potential: Vec<f64>,
    psi: Vec<f64>,
    psi_normalized: Option<Vec<f64>>,
}

impl MemberTable {
    fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "x,V,psi,psi_normalized")?;
        for i in 0..self.x.len() {
            write!(
                w,
                "{:.16e},{:.16e},{:.16e},",
                self.x[i], self.potential[i], self.psi[i]
            )?;
            if let Some(n) = &self.psi_normalized {
                write!(w, "{:.16e}", n[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn sample_member(model: &Model, gamma: f64, grid: GridSpec) -> MemberTable {
    let n = grid.points;
    let h = (grid.max - grid.min) / (n - 1) as f64;
    let x: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                grid.max
            } else {
                grid.min + i as f64 * h
            }
        })
        .collect();
    let mut potential: Vec<f64> = x.iter().map(|&x| model.potential(gamma, x)).collect();
    let mut psi: Vec<f64> = x.iter().map(|&x| model.psi(gamma, x)).collect();
    let regular = model.classify(gamma).is_regular();
    if !regular {
        // Nodes bracketing a sign change of the denominator mark a pole.
        let d: Vec<f64> = x.iter().map(|&x| model.denominator(gamma, x)).collect();
        for i in 0..n {
            let pole_here = d[i] == 0.0 || !d[i].is_finite();
            let pole_next = i + 1 < n && d[i] * d[i + 1] < 0.0;
            if pole_here || pole_next {
                potential[i] = f64::NAN;
                psi[i] = f64::NAN;
            }
            if pole_next {
                potential[i + 1] = f64::NAN;
                psi[i + 1] = f64::NAN;
            }
        }
    }
    for v in potential.iter_mut().chain(psi.iter_mut()) {
        if !v.is_finite() {
            *v = f64::NAN;
        }
    }
    let norm_const = if regular {
        model.norm_const(gamma).ok()
    } else {
        None
    };
    let psi_normalized = norm_const.map(|c| psi.iter().map(|p| c * p).collect());
    MemberTable {
        family: model.tag(),
        gamma,
        regular,
        norm_const,
        x,
        potential,
        psi,
        psi_normalized,
    }
}

#[derive(Debug, Serialize)]
struct NormRow {
    gamma: f64,
    #[serde(rename = "N_closed_form")]
    closed_form: f64,
    #[serde(rename = "N_quadrature")]
    quadrature: f64,
    abs_diff: f64,
}

fn cmd_norm_table(config: &RunConfig) -> Outcome {
    let model = Model::new(config);
    for &g in &config.gammas {
        model.require_regular(g)?;
    }
    let mut rows = Vec::with_capacity(config.gammas.len());
    for &gamma in &config.gammas {
        let closed_form = model.norm_const(gamma)?;
        let quadrature = model.norm_quadrature(gamma)?;
        rows.push(NormRow {
            gamma,
            closed_form,
            quadrature,
            abs_diff: (closed_form - quadrature).abs(),
        });
    }
    emit_json(config, "norm_table.json", &rows)?;
    match rows
        .iter()
        .find(|r| r.abs_diff.is_nan() || r.abs_diff >= NORM_TOLERANCE)
    {
        Some(r) => Err(Failure::Check(format!(
            "normalization mismatch at gamma = {}: |{} - {}| = {:e}",
            r.gamma, r.closed_form, r.quadrature, r.abs_diff
        ))),
        None => Ok(()),
    }
}

#[derive(Debug, Serialize)]
struct MatchedPairReport {
    family: String,
    gamma_plus: f64,
    gamma_minus: f64,
    target_norm: f64,
    achieved_norms: [f64; 2],
}

fn cmd_matched_pairs(config: &RunConfig) -> Outcome {
    let model = Model::new(config);
    let target = model.target_norm();
    let (gamma_plus, gamma_minus) =
        darboux::matched_gamma_pair(model.total(), model.orientation(), target * target);
    let report = MatchedPairReport {
        family: model.tag(),
        gamma_plus,
        gamma_minus,
        target_norm: target,
        achieved_norms: [
            model.norm_const(gamma_plus)?,
            model.norm_const(gamma_minus)?,
        ],
    };
    emit_json(config, "matched_pairs.json", &report)?;
    let worst = report
        .achieved_norms
        .iter()
        .map(|n| (n - target).abs())
        .fold(0.0, f64::max);
    if worst < MATCH_TOLERANCE {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "matched pair misses the target norm by {worst:e}"
        )))
    }
}

#[derive(Debug, Serialize)]
struct VerifyEntry {
    report: SpectrumReport,
    max_deviation: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct Certificate {
    family: String,
    reference_kind: &'static str,
    reference: Vec<f64>,
    tolerance: f64,
    undeformed: SpectrumReport,
    entries: Vec<VerifyEntry>,
    pass: bool,
}

fn cmd_verify(config: &RunConfig, k: Option<usize>) -> Outcome {
    let model = Model::new(config);
    for &g in &config.gammas {
        model.require_regular(g)?;
    }
    let k = k.unwrap_or(match model {
        Model::Hydrogen(_) => 3,
        Model::Oscillator => 6,
        Model::Generic(_) => 1,
    });
    if k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    let GridSpec { min, max, points } = config.grid;
    let scaling = model.scaling();
    let solve = |v: &dyn Fn(f64) -> f64| -> std::result::Result<SpectrumReport, Failure> {
        let h = spectral::build_hamiltonian(v, min, max, points, scaling)
            .map_err(|e| Failure::Check(e.to_string()))?;
        spectral::lowest_eigenvalues(&h, k).map_err(|e| match e {
            crate::Error::TooManyEigenvalues { .. } => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        })
    };
    let undeformed = solve(&|x| model.undeformed_potential(x))?.with_tag(model.tag(), None);
    let (reference_kind, reference, tolerance) = match model {
        Model::Hydrogen(ell) => (
            "exact",
            (ell..ell + k as u32)
                .map(|n| -1.0 / (n as f64).powi(2))
                .collect(),
            COULOMB_TOLERANCE,
        ),
        _ => (
            "undeformed_numerical",
            undeformed.eigenvalues.clone(),
            ISOSPECTRAL_TOLERANCE,
        ),
    };
    let mut entries = Vec::with_capacity(config.gammas.len());
    for &gamma in &config.gammas {
        let report = solve(&|x| model.potential(gamma, x))?.with_tag(model.tag(), Some(gamma));
        let max_deviation = report.max_deviation(&reference);
        let pass = report.converged && max_deviation < tolerance;
        entries.push(VerifyEntry {
            report,
            max_deviation,
            pass,
        });
    }
    let pass = undeformed.converged && entries.iter().all(|e| e.pass);
    let certificate = Certificate {
        family: model.tag(),
        reference_kind,
        reference,
        tolerance,
        undeformed,
        entries,
        pass,
    };
    emit_json(config, "verify.json", &certificate)?;
    if pass {
        return Ok(());
    }
    let worst = certificate
        .entries
        .iter()
        .filter(|e| !e.pass)
        .max_by(|a, b| a.max_deviation.total_cmp(&b.max_deviation));
    Err(Failure::Check(match worst {
        Some(e) => format!(
            "verification failed; worst gamma = {}: max deviation {:e} (tolerance {:e}), max residual {:e}",
            e.report.gamma.unwrap_or(f64::NAN),
            e.max_deviation,
            tolerance,
            e.report.max_residual()
        ),
        None => "verification failed: undeformed spectrum did not converge".to_string(),
    }))
}

fn output_path(prefix: Option<&Path>, name: &str) -> PathBuf {
    match prefix {
        None => PathBuf::from(name),
        Some(p) => {
            let mut s = p.as_os_str().to_owned();
            s.push(name);
            PathBuf::from(s)
        }
    }
}

fn create(path: &Path) -> io::Result<BufWriter<fs::File>> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    Ok(BufWriter::new(fs::File::create(path)?))
}

fn emit_json<T: Serialize>(config: &RunConfig, name: &str, value: &T) -> io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(io::Error::from)?;
    match &config.output {
        Some(prefix) => {
            let mut w = create(&output_path(Some(prefix), name))?;
            writeln!(w, "{text}")?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{text}")
        }
    }
}

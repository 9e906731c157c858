//! Run configuration: a flat JSON object whose fields mirror the command
//! line flags. Values given on the command line replace those from the
//! file; [`RunConfig::with_defaults`] fills in whatever is still missing,
//! and [`RunConfig::resolve`] checks the combination and produces a
//! [`Plan`].

use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use lgbound_core::overlaps::{Cutoff, DEFAULT_MAX_CUTOFF, DEFAULT_TRUNCATION_TARGET};
use lgbound_core::scans::Axis;
use lgbound_core::correlators::TRUNCATION_WARNING;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    /// Correlator and `q(+,+)` over `tau`.
    Correlator,
    /// All LG2, LG3 and LG4 kernels over `tau`.
    Lg,
    /// Regime map over `(theta, phi)`.
    ScanSuperposition,
    /// Deepest LG3 violation per oscillator eigenstate.
    ScanEigenstates,
    /// Ground-state quasi-probability over second regions `[c, d]`.
    ScanRegion,
    /// Deepest LG3 violation against the smoothing width.
    ScanSmoothing,
    /// Distance of eigenstate correlators from the classical one.
    Classicalization,
    /// Parity-operator LG2 kernel for a gaussian state.
    Parity,
    /// LG kernels for a Morse eigenstate.
    MorseLg,
}

/// Potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    /// Harmonic oscillator.
    Qho,
    /// Morse well with parameter `lambda`.
    Morse,
}

/// How eigenstate correlators are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Approx {
    /// Closed-form oscillator correlator (`n <= 8`).
    Exact,
    /// Truncated eigenbasis series.
    Series,
    /// Three-term series for `|1>`.
    ThreeTerm,
}

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// Header plus one row per record.
    Csv,
    /// One object with `config`, `records` and `summary`.
    Json,
}

/// Every option, all optional. Field names are the flag names with `_`
/// for `-`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Subcommand (config files only; the positional argument wins).
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandName>,

    /// Potential.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemKind>,
    /// Morse well parameter.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// `n=K`, `theta=T,phi=P` or `q=Q,sigma=S`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    /// Superposition polar angle.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Superposition relative phase.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    /// Correlator method.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<Approx>,

    /// First time-axis point.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_min: Option<f64>,
    /// Last time-axis point.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
    /// Time-axis points (points per period for periodic scans).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_count: Option<usize>,
    /// Single time difference (scan-region).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,

    /// Polar-angle points (scan-superposition).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_count: Option<usize>,
    /// Phase points (scan-superposition).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_count: Option<usize>,
    /// Largest eigenstate index (scan-eigenstates, classicalization).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,

    /// Lower edge axis start (scan-region).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_min: Option<f64>,
    /// Lower edge axis stop.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_max: Option<f64>,
    /// Lower edge axis points.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_count: Option<usize>,
    /// Upper edge axis start (scan-region).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_min: Option<f64>,
    /// Upper edge axis stop.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_max: Option<f64>,
    /// Upper edge axis points.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_count: Option<usize>,
    /// Second region `[c, inf)` instead of `[c, d]`.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_line: Option<bool>,

    /// Smallest smoothing width (scan-smoothing, log axis).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_min: Option<f64>,
    /// Largest smoothing width.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_max: Option<f64>,
    /// Smoothing width points.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_count: Option<usize>,

    /// Smallest `q / sigma` (parity).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_min: Option<f64>,
    /// Largest `q / sigma`.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_max: Option<f64>,
    /// `q / sigma` points.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_count: Option<usize>,

    /// Truncation target; also the failure threshold for exit code 3.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<f64>,
    /// Fixed series cutoff (largest retained state).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    /// Cap on the adaptive cutoff.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cutoff: Option<usize>,

    /// Output encoding (default from the output extension, else csv).
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Worker threads (falls back to LGBOUND_THREADS).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($field:ident),* $(,)?) => {
        RunConfig { $($field: $top.$field.or($base.$field)),* }
    };
}

const DEFAULT_TAU_COUNT: usize = 512;
const DEFAULT_CLASSICAL_POINTS: usize = 1024;
const DEFAULT_REGION_CUTOFF: usize = 200;
const DEFAULT_SMOOTHING_CUTOFF: usize = 80;

impl RunConfig {
    /// Parse a flat JSON config.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    /// Read and parse a config file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `top`'s fields where set, `self`'s otherwise.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay_fields!(base, top;
            command, system, lambda, state, theta, phi, approx,
            tau_min, tau_max, tau_count, tau, theta_count, phi_count, max_n,
            c_min, c_max, c_count, d_min, d_max, d_count, half_line,
            a_min, a_max, a_count, ratio_min, ratio_max, ratio_count,
            truncation, cutoff, max_cutoff, format, output, threads,
        )
    }

    fn command(&self) -> Result<CommandName, CliError> {
        self.command
            .ok_or_else(|| CliError::Config("no command given (positional argument or \"command\" in the config)".into()))
    }

    /// Fill command-specific defaults for everything left unset.
    pub fn with_defaults(&self) -> Result<RunConfig, CliError> {
        let command = self.command()?;
        let mut c = self.clone();
        fn set<T>(slot: &mut Option<T>, value: T) {
            slot.get_or_insert(value);
        }
        use CommandName::*;
        if command == MorseLg {
            set(&mut c.system, SystemKind::Morse);
        }
        if matches!(command, Correlator | Lg | MorseLg) {
            set(&mut c.system, SystemKind::Qho);
            if c.system == Some(SystemKind::Morse) {
                set(&mut c.lambda, 50.0);
            }
            if c.theta.is_none() && c.phi.is_none() {
                set(&mut c.state, "n=1".into());
            }
        }
        if matches!(command, Correlator | Lg | MorseLg | ScanSuperposition) {
            set(&mut c.tau_min, 0.0);
            set(&mut c.tau_max, TAU);
            set(&mut c.tau_count, DEFAULT_TAU_COUNT);
        }
        match command {
            ScanSuperposition => {
                set(&mut c.theta_count, 181);
                set(&mut c.phi_count, 361);
            }
            ScanEigenstates => {
                set(&mut c.max_n, 50);
                set(&mut c.tau_count, DEFAULT_TAU_COUNT);
            }
            Classicalization => {
                set(&mut c.max_n, 50);
                set(&mut c.tau_count, DEFAULT_CLASSICAL_POINTS);
            }
            ScanRegion => {
                set(&mut c.state, "n=0".into());
                set(&mut c.tau, 2.77);
                set(&mut c.c_min, -3.0);
                set(&mut c.c_max, 5.0);
                set(&mut c.c_count, 201);
                if c.half_line != Some(true) {
                    set(&mut c.d_min, -3.0);
                    set(&mut c.d_max, 5.0);
                    set(&mut c.d_count, 201);
                }
                if c.truncation.is_none() {
                    set(&mut c.cutoff, DEFAULT_REGION_CUTOFF);
                }
            }
            ScanSmoothing => {
                set(&mut c.state, "n=1".into());
                set(&mut c.a_min, 1e-3);
                set(&mut c.a_max, 2.0);
                set(&mut c.a_count, 40);
                set(&mut c.cutoff, DEFAULT_SMOOTHING_CUTOFF);
                set(&mut c.tau_count, DEFAULT_TAU_COUNT);
            }
            Parity => {
                set(&mut c.ratio_min, 0.0);
                set(&mut c.ratio_max, 3.0);
                set(&mut c.ratio_count, 301);
            }
            Correlator | Lg | MorseLg => {}
        }
        if c.format.is_none() {
            let json = c
                .output
                .as_ref()
                .and_then(|p| p.extension())
                .is_some_and(|e| e.eq_ignore_ascii_case("json"));
            c.format = Some(if json { Format::Json } else { Format::Csv });
        }
        Ok(c)
    }

    /// Validate a defaulted config and turn it into a plan.
    pub fn resolve(&self) -> Result<Plan, CliError> {
        let c = self.with_defaults()?;
        let command = c.command()?;
        let truncation = match c.truncation {
            Some(t) if !(t > 0.0 && t < 1.0) => return Err(bad("--truncation must lie in (0, 1)")),
            t => t,
        };
        let cutoff = match (c.cutoff, c.max_cutoff) {
            (Some(_), Some(_)) => return Err(bad("--cutoff and --max-cutoff are mutually exclusive")),
            (Some(m), None) => Cutoff::Fixed(m),
            (None, max) => Cutoff::Adaptive {
                target: truncation.unwrap_or(DEFAULT_TRUNCATION_TARGET),
                max: max.unwrap_or(DEFAULT_MAX_CUTOFF),
            },
        };
        let task = c.task(command)?;
        c.reject_unused(command)?;
        Ok(Plan {
            threshold: truncation.unwrap_or(TRUNCATION_WARNING),
            explicit_truncation: truncation.is_some(),
            cutoff,
            format: c.format.unwrap_or(Format::Csv),
            output: c.output.clone(),
            threads: c.threads,
            task,
            config: c,
        })
    }

    fn system(&self) -> Result<SystemSpec, CliError> {
        match self.system.unwrap_or(SystemKind::Qho) {
            SystemKind::Qho => {
                if self.lambda.is_some() {
                    return Err(bad("--lambda only applies to --system morse"));
                }
                Ok(SystemSpec::Qho)
            }
            SystemKind::Morse => {
                let lambda = self.lambda.unwrap_or(50.0);
                if !(lambda > 0.5 && lambda.is_finite()) {
                    return Err(bad("--lambda must be finite and greater than 1/2"));
                }
                Ok(SystemSpec::Morse { lambda })
            }
        }
    }

    fn state(&self) -> Result<StateSpec, CliError> {
        let parsed = self.state.as_deref().map(StateSpec::parse).transpose()?;
        let flags = match (self.theta, self.phi) {
            (None, None) => None,
            (theta, phi) => Some(StateSpec::Superposition {
                theta: theta.unwrap_or(0.0),
                phi: phi.unwrap_or(0.0),
            }),
        };
        let state = match (parsed, flags) {
            (Some(s), None) => s,
            (None, Some(s)) => s,
            (Some(_), Some(_)) => return Err(bad("give either --state or --theta/--phi, not both")),
            (None, None) => return Err(bad("no state given")),
        };
        if let StateSpec::Superposition { theta, phi } = state {
            if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
                return Err(bad("superposition needs theta in [0, pi] and a finite phi"));
            }
        }
        Ok(state)
    }

    fn eigenstate(&self) -> Result<usize, CliError> {
        match self.state()? {
            StateSpec::Eigen(n) => Ok(n),
            _ => Err(bad("this command needs an eigenstate, --state n=K")),
        }
    }

    fn axis(&self, name: &str, start: Option<f64>, stop: Option<f64>, count: Option<usize>) -> Result<Axis, CliError> {
        let (Some(start), Some(stop), Some(count)) = (start, stop, count) else {
            return Err(bad(&format!("{name} axis is incomplete")));
        };
        if !(start.is_finite() && stop.is_finite()) {
            return Err(bad(&format!("{name} axis bounds must be finite")));
        }
        Axis::new(name, start, stop, count).map_err(|e| bad(&format!("{name} axis: {e}")))
    }

    fn tau_axis(&self) -> Result<Axis, CliError> {
        self.axis("tau", self.tau_min, self.tau_max, self.tau_count)
    }

    fn periodic_points(&self) -> Result<usize, CliError> {
        match self.tau_count {
            Some(n) if n >= 8 => Ok(n),
            _ => Err(bad("--tau-count must be at least 8 for periodic scans")),
        }
    }

    fn task(&self, command: CommandName) -> Result<Task, CliError> {
        use CommandName::*;
        Ok(match command {
            Correlator | Lg | MorseLg => {
                let system = self.system()?;
                if command == MorseLg && system == SystemSpec::Qho {
                    return Err(bad("morse-lg needs --system morse"));
                }
                let state = self.state()?;
                let approx = self.approx(&system, &state)?;
                let taus = self.tau_axis()?;
                if command == Correlator {
                    Task::Correlator { system, state, approx, taus }
                } else {
                    Task::Lg { system, state, approx, taus }
                }
            }
            ScanSuperposition => {
                self.qho_only()?;
                Task::ScanSuperposition {
                    theta: self.axis("theta", Some(0.0), Some(PI), self.theta_count)?,
                    phi: self.axis("phi", Some(0.0), Some(TAU), self.phi_count)?,
                    tau: self.tau_axis()?,
                }
            }
            ScanEigenstates | Classicalization => {
                self.qho_only()?;
                let max_n = self.max_n.unwrap_or(50);
                let tau_points = self.periodic_points()?;
                if command == ScanEigenstates {
                    Task::ScanEigenstates { max_n, tau_points }
                } else {
                    Task::Classicalization { max_n, tau_points }
                }
            }
            ScanRegion => {
                self.qho_only()?;
                let tau = self.tau.filter(|t| t.is_finite()).ok_or_else(|| bad("--tau must be finite"))?;
                let c = self.axis("c", self.c_min, self.c_max, self.c_count)?;
                let d = if self.half_line == Some(true) {
                    None
                } else {
                    Some(self.axis("d", self.d_min, self.d_max, self.d_count)?)
                };
                Task::ScanRegion { n: self.eigenstate()?, tau, c, d }
            }
            ScanSmoothing => {
                self.qho_only()?;
                let (Some(lo), Some(hi), Some(count)) = (self.a_min, self.a_max, self.a_count) else {
                    return Err(bad("smoothing axis is incomplete"));
                };
                if !(lo > 0.0 && hi.is_finite()) {
                    return Err(bad("smoothing widths must be positive and finite"));
                }
                let a = Axis::log("a", lo, hi, count).map_err(|e| bad(&format!("a axis: {e}")))?;
                let m = self.cutoff.unwrap_or(DEFAULT_SMOOTHING_CUTOFF);
                Task::ScanSmoothing { n: self.eigenstate()?, a, m, tau_points: self.periodic_points()? }
            }
            Parity => {
                let gaussian = match self.state.as_deref().map(StateSpec::parse).transpose()? {
                    None => None,
                    Some(StateSpec::Gaussian { q, sigma }) => Some((q, sigma)),
                    Some(_) => return Err(bad("parity takes a gaussian state, --state q=Q,sigma=S")),
                };
                Task::Parity {
                    ratio: self.axis("ratio", self.ratio_min, self.ratio_max, self.ratio_count)?,
                    gaussian,
                }
            }
        })
    }

    fn approx(&self, system: &SystemSpec, state: &StateSpec) -> Result<Approx, CliError> {
        match (system, state, self.approx) {
            (_, StateSpec::Gaussian { .. }, _) => Err(bad("gaussian states only apply to the parity command")),
            (SystemSpec::Morse { .. }, StateSpec::Superposition { .. }, _) => {
                Err(bad("superpositions are only supported for the oscillator"))
            }
            (_, StateSpec::Superposition { .. }, None | Some(Approx::Exact)) => Ok(Approx::Exact),
            (_, StateSpec::Superposition { .. }, Some(_)) => Err(bad("superpositions use closed forms; drop --approx")),
            (SystemSpec::Morse { .. }, _, None | Some(Approx::Series)) => Ok(Approx::Series),
            (SystemSpec::Morse { .. }, _, Some(_)) => Err(bad("the Morse well only supports --approx series")),
            (SystemSpec::Qho, &StateSpec::Eigen(n), approx) => match approx {
                None if n <= lgbound_core::correlators::EXACT_MAX_STATE => Ok(Approx::Exact),
                None | Some(Approx::Series) => Ok(Approx::Series),
                Some(Approx::Exact) if n <= lgbound_core::correlators::EXACT_MAX_STATE => Ok(Approx::Exact),
                Some(Approx::Exact) => Err(bad("closed forms exist for n <= 8 only")),
                Some(Approx::ThreeTerm) if n == 1 => Ok(Approx::ThreeTerm),
                Some(Approx::ThreeTerm) => Err(bad("the three-term approximation is for n=1 only")),
            },
        }
    }

    fn qho_only(&self) -> Result<(), CliError> {
        if self.system == Some(SystemKind::Morse) {
            return Err(bad("this scan is defined for the oscillator only"));
        }
        Ok(())
    }

    fn reject_unused(&self, command: CommandName) -> Result<(), CliError> {
        use CommandName::*;
        let mut stray: Vec<&str> = Vec::new();
        let mut check = |set: bool, name: &'static str, used: bool| {
            if set && !used {
                stray.push(name);
            }
        };
        let traced = matches!(command, Correlator | Lg | MorseLg);
        let periodic = matches!(command, ScanEigenstates | Classicalization | ScanSmoothing);
        check(self.tau_min.is_some(), "tau-min", traced || command == ScanSuperposition);
        check(self.tau_max.is_some(), "tau-max", traced || command == ScanSuperposition);
        check(self.tau_count.is_some(), "tau-count", traced || periodic || command == ScanSuperposition);
        check(self.tau.is_some(), "tau", command == ScanRegion);
        check(self.approx.is_some(), "approx", traced);
        check(self.theta_count.is_some() || self.phi_count.is_some(), "theta-count/phi-count", command == ScanSuperposition);
        check(self.max_n.is_some(), "max-n", matches!(command, ScanEigenstates | Classicalization));
        let region = command == ScanRegion;
        check(self.c_min.is_some() || self.c_max.is_some() || self.c_count.is_some(), "c-*", region);
        check(self.d_min.is_some() || self.d_max.is_some() || self.d_count.is_some(), "d-*", region && self.half_line != Some(true));
        check(self.half_line.is_some(), "half-line", region);
        check(self.a_min.is_some() || self.a_max.is_some() || self.a_count.is_some(), "a-*", command == ScanSmoothing);
        check(self.ratio_min.is_some() || self.ratio_max.is_some() || self.ratio_count.is_some(), "ratio-*", command == Parity);
        check(self.theta.is_some() || self.phi.is_some(), "theta/phi", traced);
        check(self.lambda.is_some(), "lambda", traced);
        if stray.is_empty() {
            Ok(())
        } else {
            Err(bad(&format!("options not used by this command: {}", stray.join(", "))))
        }
    }
}

fn bad(msg: &str) -> CliError {
    CliError::Config(msg.to_string())
}

/// Potential with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemSpec {
    /// Harmonic oscillator.
    Qho,
    /// Morse well.
    Morse {
        /// Well parameter.
        lambda: f64,
    },
}

/// Quantum state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    /// Energy eigenstate `|n>`.
    Eigen(usize),
    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    Superposition {
        /// Polar angle.
        theta: f64,
        /// Relative phase.
        phi: f64,
    },
    /// Gaussian wavepacket for the parity test.
    Gaussian {
        /// Centre.
        q: f64,
        /// Width.
        sigma: f64,
    },
}

impl StateSpec {
    /// Parse `n=K`, `theta=T,phi=P` or `q=Q,sigma=S` (a bare integer means
    /// `n=K`).
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let err = || bad(&format!("cannot parse state {text:?}; expected n=K, theta=T,phi=P or q=Q,sigma=S"));
        let text = text.trim();
        if let Ok(n) = text.parse::<usize>() {
            return Ok(StateSpec::Eigen(n));
        }
        let mut pairs = Vec::new();
        for part in text.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(err)?;
            pairs.push((k.trim(), v.trim()));
        }
        let num = |v: &str| v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(err);
        match pairs.as_slice() {
            [("n", v)] => v.parse().map(StateSpec::Eigen).map_err(|_| err()),
            [("theta", t), ("phi", p)] | [("phi", p), ("theta", t)] => Ok(StateSpec::Superposition {
                theta: num(t)?,
                phi: num(p)?,
            }),
            [("q", q), ("sigma", s)] | [("sigma", s), ("q", q)] => {
                let sigma = num(s)?;
                if sigma <= 0.0 {
                    return Err(bad("sigma must be positive"));
                }
                Ok(StateSpec::Gaussian { q: num(q)?, sigma })
            }
            _ => Err(err()),
        }
    }
}

/// A validated unit of work.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    /// Correlator trace.
    Correlator {
        /// Potential.
        system: SystemSpec,
        /// State.
        state: StateSpec,
        /// Method.
        approx: Approx,
        /// Time axis.
        taus: Axis,
    },
    /// Kernel trace.
    Lg {
        /// Potential.
        system: SystemSpec,
        /// State.
        state: StateSpec,
        /// Method.
        approx: Approx,
        /// Time axis.
        taus: Axis,
    },
    /// Regime map.
    ScanSuperposition {
        /// Polar angle axis.
        theta: Axis,
        /// Phase axis.
        phi: Axis,
        /// Time axis aggregated per point.
        tau: Axis,
    },
    /// Per-eigenstate LG3/LG4 extremes.
    ScanEigenstates {
        /// Largest index.
        max_n: usize,
        /// Points per period.
        tau_points: usize,
    },
    /// Per-eigenstate distance from the classical correlator.
    Classicalization {
        /// Largest index.
        max_n: usize,
        /// Points per period.
        tau_points: usize,
    },
    /// Region quasi-probability map.
    ScanRegion {
        /// Eigenstate.
        n: usize,
        /// Time difference.
        tau: f64,
        /// Lower edge axis.
        c: Axis,
        /// Upper edge axis; `None` for half lines.
        d: Option<Axis>,
    },
    /// Smoothing sweep.
    ScanSmoothing {
        /// Eigenstate.
        n: usize,
        /// Width axis.
        a: Axis,
        /// Row cutoff.
        m: usize,
        /// Points per period.
        tau_points: usize,
    },
    /// Parity kernel.
    Parity {
        /// `q / sigma` axis.
        ratio: Axis,
        /// Optional single state to evaluate.
        gaussian: Option<(f64, f64)>,
    },
}

/// Everything needed to run and write one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    /// Effective configuration, echoed into JSON output.
    pub config: RunConfig,
    /// Work to do.
    pub task: Task,
    /// Series cutoff policy.
    pub cutoff: Cutoff,
    /// Truncation error above which the run exits with code 3.
    pub threshold: f64,
    /// Whether `--truncation` was given.
    pub explicit_truncation: bool,
    /// Output encoding.
    pub format: Format,
    /// Output path; stdout when `None`.
    pub output: Option<PathBuf>,
    /// Thread cap from the config.
    pub threads: Option<usize>,
}

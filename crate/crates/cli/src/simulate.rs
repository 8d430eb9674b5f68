//! `simulate`: integrate the flow and measure conservation drifts.

use serde::{Deserialize, Serialize};

use cmr_core::lax::{
    eigenvalue_drift, energy_drift, integrate_flow, momentum_drift, spectral_drift, PhasePoint,
};
use cmr_core::sampling::random_phase_point;
use cmr_core::Error;

use crate::args::SimulateArgs;
use crate::error::CliError;
use crate::report::{Check, Status};
use crate::verify::sample_rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationMetadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub n: usize,
    pub potential: String,
    pub coupling: Option<f64>,
    pub seed: Option<u64>,
    pub dt: f64,
    pub steps: usize,
    pub arithmetic: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl From<&PhasePoint> for State {
    fn from(x: &PhasePoint) -> Self {
        Self {
            q: x.q().to_vec(),
            p: x.p().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Drifts {
    /// `max |h(t) − h(0)| / max(|h(0)|, 1)`
    pub energy: f64,
    /// Largest change of a sorted eigenvalue of `L`.
    pub eigenvalues: f64,
    /// Largest change of `tr L^m`, `m = 1..n`.
    pub power_traces: f64,
    pub momentum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Abort {
    pub step: usize,
    pub time: f64,
    /// One-based indices of the colliding pair.
    pub pair: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub metadata: SimulationMetadata,
    pub initial: State,
    pub last: Option<State>,
    pub drifts: Option<Drifts>,
    pub checks: Vec<Check>,
    pub abort: Option<Abort>,
    pub pass: bool,
}

fn initial_point(
    args: &SimulateArgs,
    kind: cmr_core::potentials::PotentialKind,
) -> Result<(PhasePoint, Option<u64>), CliError> {
    match &args.q {
        Some(q) => {
            if let Some(n) = args.n {
                if usize::from(n) != q.len() {
                    return Err(CliError::Usage(format!(
                        "--n {n} disagrees with {} coordinates",
                        q.len()
                    )));
                }
            }
            let p = args.p.clone().unwrap_or_else(|| vec![0.0; q.len()]);
            if p.len() != q.len() {
                return Err(CliError::Usage(format!(
                    "{} coordinates but {} momenta",
                    q.len(),
                    p.len()
                )));
            }
            let x = PhasePoint::new(q.clone(), p).map_err(|e| CliError::Usage(e.to_string()))?;
            x.check_regular(kind)
                .map_err(|e| CliError::Usage(format!("initial data: {e}")))?;
            Ok((x, None))
        }
        None => {
            if args.p.is_some() {
                return Err(CliError::Usage("--p requires --q".into()));
            }
            let n = usize::from(args.n.unwrap_or(2));
            let x = random_phase_point(&mut sample_rng(args.seed, 0), n, kind)?;
            Ok((x, Some(args.seed)))
        }
    }
}

pub fn run_simulate(args: &SimulateArgs) -> Result<SimulationReport, CliError> {
    let kind = args.potential.kind()?;
    if !(args.dt > 0.0 && args.dt.is_finite()) {
        return Err(CliError::Usage(format!(
            "dt must be positive, got {}",
            args.dt
        )));
    }
    let steps = match args.steps {
        Some(s) => s,
        None if args.t_final >= 0.0 && args.t_final.is_finite() => {
            (args.t_final / args.dt).round() as usize
        }
        None => {
            return Err(CliError::Usage(format!(
                "t-final must be non-negative, got {}",
                args.t_final
            )))
        }
    };
    let (x0, seed) = initial_point(args, kind)?;
    let metadata = SimulationMetadata {
        tool: "cmr".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: "simulate".into(),
        n: x0.dim(),
        potential: kind.name().into(),
        coupling: kind.coupling(),
        seed,
        dt: args.dt,
        steps,
        arithmetic: "float".into(),
    };
    let initial = State::from(&x0);
    let traj = match integrate_flow(&x0, kind, args.dt, steps) {
        Ok(t) => t,
        Err(Error::FlowAborted { step, k, l }) => {
            return Ok(SimulationReport {
                metadata,
                initial,
                last: None,
                drifts: None,
                checks: Vec::new(),
                abort: Some(Abort {
                    step,
                    time: step as f64 * args.dt,
                    pair: [k + 1, l + 1],
                }),
                pass: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let drifts = Drifts {
        energy: energy_drift(&traj, kind)?,
        eigenvalues: eigenvalue_drift(&traj, kind)?,
        power_traces: spectral_drift(&traj, kind)?,
        momentum: momentum_drift(&traj),
    };
    let checks = vec![
        Check::measured("energy_drift", drifts.energy, args.max_energy_drift),
        Check::measured(
            "spectral_drift",
            drifts.eigenvalues,
            args.max_spectral_drift,
        ),
        Check::measured("momentum_drift", drifts.momentum, args.max_momentum_drift),
    ];
    let pass = checks.iter().all(|c| c.status == Status::Pass);
    Ok(SimulationReport {
        metadata,
        initial,
        last: traj.last().map(State::from),
        drifts: Some(drifts),
        checks,
        abort: None,
        pass,
    })
}

pub fn render(report: &SimulationReport, exact_requested: bool) -> String {
    let m = &report.metadata;
    let mut out = format!(
        "simulate n={} potential={}{} dt={} steps={}\n",
        m.n,
        m.potential,
        m.coupling.map_or_else(String::new, |a| format!(":{a}")),
        m.dt,
        m.steps
    );
    if exact_requested {
        out.push_str(
            "note: --exact is not supported for simulate; integrating in floating point\n",
        );
    }
    out.push_str(&format!(
        "initial q = {:?}, p = {:?}\n",
        report.initial.q, report.initial.p
    ));
    if let Some(abort) = &report.abort {
        out.push_str(&format!(
            "aborted at step {} (t = {}): particles {} and {} reached the singular locus\n",
            abort.step, abort.time, abort.pair[0], abort.pair[1]
        ));
    }
    if let Some(d) = &report.drifts {
        out.push_str(&format!("power-trace drift {:.3e}\n", d.power_traces));
    }
    for check in &report.checks {
        out.push_str(&check.summary_line());
        out.push('\n');
    }
    out.push_str(if report.pass {
        "overall: PASS\n"
    } else {
        "overall: FAIL\n"
    });
    out
}

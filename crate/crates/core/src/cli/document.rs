use std::fmt;

use serde::Serialize;

use crate::finsler::{fundamental_tensor, verify_euler_identities, verify_inverse_identities};
use crate::kropina::{
    check_dually_flat, check_projectively_flat, check_prop31, check_theorem1, contraction_probes,
    numeric_crosscheck, sample_admissible_points, CrosscheckReport, KropinaInstance, ResidualKind,
    DEFAULT_STEP,
};
use crate::report::{combine, ConditionReport, Status, Verdict};

use super::{CliError, Command, InstanceFile};

pub const TOOL_NAME: &str = "kropina";
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Process exit code for a combined status.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Inconclusive => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub instance: InstanceFile,
    pub reports: Vec<ConditionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub crosschecks: Vec<CrosscheckReport>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl fmt::Display for ReportDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.tool, self.version, self.command)?;
        writeln!(
            f,
            "instance: n={} m={} A = {} ; beta = {}",
            self.instance.n, self.instance.m, self.instance.a, self.instance.beta
        )?;
        for r in &self.reports {
            writeln!(f)?;
            write!(f, "{r}")?;
        }
        writeln!(f)?;
        writeln!(f, "status: {} (exit {})", self.status, self.exit_code)?;
        if let Some(t) = self.timing_ms {
            writeln!(f, "time: {t:.1} ms")?;
        }
        Ok(())
    }
}

/// Options shared by every command.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub points: Option<usize>,
}

fn single(check: &str, name: &str, statement: &str, verdict: Verdict) -> ConditionReport {
    let mut r = ConditionReport::new(check);
    r.push_condition(name, statement, verdict);
    r
}

/// Finite-difference residual at the first witness point, when admissible.
fn oracle_at_witness(inst: &KropinaInstance, kind: ResidualKind, report: &mut ConditionReport) {
    let Some(w) = report
        .conditions
        .first()
        .and_then(|c| c.verdict.witnesses().first().cloned())
    else {
        return;
    };
    let Some(l) = w
        .label
        .split('_')
        .nth(1)
        .and_then(|s| s.parse::<usize>().ok())
    else {
        return;
    };
    if let Ok(c) = numeric_crosscheck(inst, kind, &w.point, DEFAULT_STEP) {
        let comp = &c.components[l - 1];
        report.push_fact(
            "finite-difference residual at witness",
            format!(
                "{:.9e} (exact value normalized: {:.9e}, l={l})",
                comp.numeric, comp.symbolic
            ),
        );
    }
}

fn identities(inst: &KropinaInstance) -> Result<Vec<ConditionReport>, CliError> {
    let metric = inst.metric();
    let mut g = ConditionReport::new("fundamental-tensor");
    let tensor = fundamental_tensor(metric)?;
    let m = i64::from(inst.m());
    let contraction = tensor.contraction() - inst.a().pow(2).scale_int(m * m);
    g.push_condition(
        "contraction",
        "y^i y^j g_ij = m^2 A^2 (normalized)",
        Verdict::from_polynomials([("difference", contraction)]),
    );
    g.push_condition(
        "symmetry",
        "g_ij = g_ji",
        Verdict::from_polynomials((0..inst.n()).flat_map(|i| {
            let g = &tensor.g_hat;
            (0..i).map(move |j| (format!("i={},j={}", i + 1, j + 1), &g[i][j] - &g[j][i]))
        })),
    );
    g.push_fact("prefactor", &tensor.prefactor);
    Ok(vec![
        verify_euler_identities(metric),
        verify_inverse_identities(metric),
        g,
        contraction_probes(inst),
    ])
}

fn crosscheck(
    inst: &KropinaInstance,
    count: usize,
    seed: u64,
) -> (ConditionReport, Vec<CrosscheckReport>) {
    let mut report = ConditionReport::new("crosscheck");
    let points = match sample_admissible_points(inst, count, seed) {
        Ok(p) => p,
        Err(e) => {
            report.push_condition(
                "sampling",
                "admissible points with A > 0 and beta > 0",
                Verdict::Inconclusive {
                    reason: e.to_string(),
                },
            );
            return (report, Vec::new());
        }
    };
    let mut details = Vec::new();
    for (kind, name) in [
        (ResidualKind::DuallyFlat, "dually_flat_oracle"),
        (ResidualKind::Hamel, "hamel_oracle"),
    ] {
        let mut worst: Option<CrosscheckReport> = None;
        let mut error = None;
        for p in &points {
            match numeric_crosscheck(inst, kind, p, DEFAULT_STEP) {
                Ok(c) => {
                    if worst
                        .as_ref()
                        .is_none_or(|w| c.max_disagreement() > w.max_disagreement())
                    {
                        worst = Some(c.clone());
                    }
                    details.push(c);
                }
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
        }
        let verdict = match (error, &worst) {
            (Some(reason), _) => Verdict::Inconclusive { reason },
            (None, Some(w)) if !w.within(ORACLE_TOLERANCE) => Verdict::Inconclusive {
                reason: format!(
                    "disagreement {:.3e} exceeds {ORACLE_TOLERANCE:e} at {}",
                    w.max_disagreement(),
                    w.point
                ),
            },
            _ => Verdict::Holds,
        };
        report.push_condition(
            name,
            "finite differences agree with the exact residual",
            verdict,
        );
        if let Some(w) = worst {
            report.push_fact(
                format!("{name} max disagreement"),
                format!("{:.3e}", w.max_disagreement()),
            );
        }
    }
    report.push_fact("points", points.len());
    report.push_fact("step", DEFAULT_STEP);
    report.push_fact("seed", seed);
    (report, details)
}

/// Runs `command` on a parsed instance file.
pub fn run(
    command: Command,
    file: &InstanceFile,
    opts: RunOptions,
) -> Result<ReportDocument, CliError> {
    let inst = file.build()?;
    let mut file = file.clone();
    if let Some(s) = opts.seed {
        file.seed = s;
    }
    if let Some(p) = opts.points {
        file.numeric_points = p;
    }
    let mut crosschecks = Vec::new();
    let reports = match command {
        Command::CheckDuallyFlat => {
            let mut r = single(
                "dually-flat",
                "dually_flat",
                "all R_l = 0",
                check_dually_flat(&inst)?,
            );
            oracle_at_witness(&inst, ResidualKind::DuallyFlat, &mut r);
            vec![r]
        }
        Command::CheckProjectivelyFlat => {
            let mut r = single(
                "projectively-flat",
                "projectively_flat",
                "all H_l = 0",
                check_projectively_flat(&inst)?,
            );
            oracle_at_witness(&inst, ResidualKind::Hamel, &mut r);
            vec![r]
        }
        Command::CheckTheorem1 => vec![check_theorem1(&inst)?],
        Command::CheckProp31 => vec![check_prop31(&inst)?],
        Command::VerifyIdentities => identities(&inst)?,
        Command::Crosscheck => {
            let (r, details) = crosscheck(&inst, file.numeric_points, file.seed);
            crosschecks = details;
            vec![r]
        }
    };
    let status = combine(reports.iter().map(|r| r.overall));
    Ok(ReportDocument {
        tool: TOOL_NAME.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.name().into(),
        instance: file,
        reports,
        crosschecks,
        status,
        exit_code: exit_code(status),
        timing_ms: None,
    })
}

//! Reference tables of final-state magic classes and their reproduction.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::kinematics::{Process, Regime};
use crate::scan::{
    classify, class_samples, same_distribution, ClassificationReport, DistributionStatus, Maximum,
    ScanConfig, Source,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::I,
        TableId::II,
        TableId::III,
        TableId::IV,
        TableId::V,
        TableId::VI,
        TableId::VII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
            TableId::VI => "VI",
            TableId::VII => "VII",
        }
    }

    pub fn process_regime(self) -> (Process, Regime) {
        match self {
            TableId::I => (Process::EeToMuMu, Regime::Threshold),
            TableId::II => (Process::Moller, Regime::Low),
            TableId::III => (Process::MuMuToEe, Regime::Low),
            TableId::IV => (Process::EeToMuMu, Regime::High),
            TableId::V => (Process::Moller, Regime::High),
            TableId::VI => (Process::Bhabha, Regime::High),
            TableId::VII => (Process::EMuElastic, Regime::High),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let up = s.to_ascii_uppercase();
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == up)
            .ok_or_else(|| Error::Parse {
                kind: "table",
                value: s.to_string(),
            })
    }
}

/// A tabulated number, either exact or a truncated decimal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tabulated {
    pub text: &'static str,
    pub value: f64,
    pub exact: bool,
    /// Shown for comparison but not counted as pass/fail.
    pub informational: bool,
}

/// Tolerance for exact tabulated entries.
pub const TOL_EXACT: f64 = 1e-8;
/// Tolerance for truncated decimal entries.
pub const TOL_DECIMAL: f64 = 5e-3;

impl Tabulated {
    pub const fn exact(text: &'static str, value: f64) -> Self {
        Tabulated {
            text,
            value,
            exact: true,
            informational: false,
        }
    }

    pub const fn decimal(text: &'static str, value: f64) -> Self {
        Tabulated {
            text,
            value,
            exact: false,
            informational: false,
        }
    }

    pub const fn informational(self) -> Self {
        Tabulated {
            informational: true,
            ..self
        }
    }

    pub fn tolerance(&self) -> f64 {
        if self.exact {
            TOL_EXACT
        } else {
            TOL_DECIMAL
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ExpectedMax {
    /// Not tabulated.
    None,
    /// `M₂ = 0` for every angle.
    Zero,
    Value {
        max: Tabulated,
        at: Vec<Tabulated>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedRow {
    /// Function label, or `None` for vanishing amplitudes.
    pub label: Option<&'static str>,
    pub members: Vec<usize>,
    pub max: ExpectedMax,
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn cat(parts: &[&[usize]]) -> Vec<usize> {
    let mut v: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    v.sort_unstable();
    v
}

fn row(label: &'static str, members: Vec<usize>, max: ExpectedMax) -> ExpectedRow {
    ExpectedRow {
        label: Some(label),
        members,
        max,
    }
}

fn vanishing(members: Vec<usize>) -> ExpectedRow {
    ExpectedRow {
        label: None,
        members,
        max: ExpectedMax::None,
    }
}

fn value(max: Tabulated, at: Vec<Tabulated>) -> ExpectedMax {
    ExpectedMax::Value { max, at }
}

fn ln(x: f64) -> f64 {
    x.ln()
}

fn log_4_3() -> Tabulated {
    Tabulated::exact("log(4/3)", ln(4.0 / 3.0))
}

fn log_9_5() -> Tabulated {
    Tabulated::exact("log(9/5)", ln(9.0 / 5.0))
}

fn log_16_9() -> Tabulated {
    Tabulated::exact("log(16/9)", ln(16.0 / 9.0))
}

fn quarter_angles() -> Vec<Tabulated> {
    vec![
        Tabulated::exact("pi/4", FRAC_PI_4),
        Tabulated::exact("3pi/4", 3.0 * FRAC_PI_4),
    ]
}

fn eighth_angles() -> Vec<Tabulated> {
    vec![
        Tabulated::exact("pi/8", FRAC_PI_8),
        Tabulated::exact("3pi/8", 3.0 * FRAC_PI_8),
        Tabulated::exact("5pi/8", 5.0 * FRAC_PI_8),
        Tabulated::exact("7pi/8", 7.0 * FRAC_PI_8),
    ]
}

fn moller_low_f2_angles() -> Vec<Tabulated> {
    let t = 2.0 * (2f64.sqrt() - 1.0).sqrt().atan();
    vec![
        Tabulated::exact("2 arctan sqrt(sqrt2 - 1)", t),
        Tabulated::exact("pi - 2 arctan sqrt(sqrt2 - 1)", PI - t),
    ]
}

fn around_right_angle(text_minus: &'static str, text_plus: &'static str, d: f64) -> Vec<Tabulated> {
    vec![
        Tabulated::decimal(text_minus, FRAC_PI_2 - d),
        Tabulated::decimal(text_plus, FRAC_PI_2 + d),
    ]
}

/// Rows of each reference table.
pub fn expected_rows(table: TableId) -> Vec<ExpectedRow> {
    use ExpectedMax::{None as NoMax, Zero};
    match table {
        TableId::I => vec![
            row("F1", cat(&[&range(1, 6), &[9, 10], &range(37, 40), &[42, 43, 44, 45, 48, 49, 50]]), Zero),
            row(
                "G1",
                vec![7, 8, 11, 12, 46, 47, 59, 60],
                value(log_4_3(), vec![Tabulated::exact("sqrt2 - 1", 2f64.sqrt() - 1.0)]),
            ),
            row(
                "G2",
                cat(&[&range(13, 36), &range(51, 58)]),
                value(log_9_5(), vec![Tabulated::exact("1", 1.0)]),
            ),
            vanishing(vec![41]),
        ],
        TableId::II => vec![
            row("F1", cat(&[&[1, 2, 5, 6, 9, 10], &range(37, 42), &[45, 48, 49, 50]]), Zero),
            row(
                "F2",
                vec![3, 4, 7, 8, 11, 12, 43, 44, 46, 47, 59, 60],
                value(log_4_3(), moller_low_f2_angles()),
            ),
            row(
                "F3",
                cat(&[&range(13, 36), &range(51, 58)]),
                value(log_9_5(), {
                    let t = (2.0 * 2f64.sqrt()).atan();
                    vec![
                        Tabulated::exact("arctan 2sqrt2", t),
                        Tabulated::exact("pi - arctan 2sqrt2", PI - t),
                    ]
                }),
            ),
        ],
        TableId::III => vec![
            row("G3", vec![1, 2, 39, 40], NoMax),
            row("G4", vec![3, 4, 42, 43, 44], NoMax),
            row("G5", vec![5, 6, 37, 49, 50], NoMax),
            row("G6", vec![7, 8, 59, 60], NoMax),
            row("F1", vec![9, 10, 38, 45, 48], Zero),
            row("G7", vec![11, 12], NoMax),
            row("G8", range(13, 28), NoMax),
            row("G9", vec![29, 30, 31, 32, 52, 54, 57, 58], NoMax),
            row("~G9", vec![33, 34, 35, 36, 51, 53, 55, 56], NoMax),
            vanishing(vec![41]),
            row("G10", vec![46], NoMax),
            row("~G10", vec![47], NoMax),
        ],
        TableId::IV => vec![
            row(
                "F4",
                cat(&[&[1, 2], &range(13, 36), &[39, 40], &range(51, 58)]),
                value(log_9_5(), quarter_angles()),
            ),
            row(
                "F5",
                vec![3, 4, 5, 6, 11, 12, 37, 42, 43, 44, 46, 47, 49, 50],
                value(log_4_3(), eighth_angles()),
            ),
            row("F1", vec![7, 8, 9, 10, 38, 45, 48, 59, 60], Zero),
            vanishing(vec![41]),
        ],
        TableId::V => vec![
            row(
                "F6",
                vec![1, 2, 39, 40],
                value(
                    Tabulated::decimal("0.576", 0.576),
                    around_right_angle("pi/2 - 0.783", "pi/2 + 0.783", 0.783),
                ),
            ),
            row("F7", vec![3, 4, 43, 44], value(log_16_9(), quarter_angles())),
            row("F8", vec![5, 6, 49, 50], value(log_9_5(), {
                let mut at = quarter_angles();
                let d = (1.0 / 2f64.sqrt()).atan();
                at.push(Tabulated::exact("pi/2 - arccot sqrt2", FRAC_PI_2 - d).informational());
                at.push(Tabulated::exact("pi/2 + arccot sqrt2", FRAC_PI_2 + d).informational());
                at
            })),
            row(
                "F9",
                vec![7, 8, 59, 60],
                value(
                    Tabulated::decimal("0.586", 0.586),
                    around_right_angle("pi/2 - 0.781", "pi/2 + 0.781", 0.781),
                ),
            ),
            row(
                "F10",
                vec![9, 10],
                value(
                    Tabulated::decimal("0.268", 0.268),
                    around_right_angle("pi/2 - 0.186", "pi/2 + 0.186", 0.186),
                ),
            ),
            row("F2", vec![11, 12, 46, 47], value(log_4_3(), moller_low_f2_angles())),
            row(
                "F11",
                range(13, 28),
                value(
                    Tabulated::decimal("0.458", 0.458),
                    around_right_angle("pi/2 - 0.444", "pi/2 + 0.444", 0.444),
                ),
            ),
            row(
                "F12",
                vec![29, 31, 34, 36, 55, 56, 57, 58],
                value(Tabulated::decimal("0.539", 0.539), vec![Tabulated::decimal("0.649", 0.649)]),
            ),
            row(
                "~F12",
                vec![30, 32, 33, 35, 51, 52, 53, 54],
                value(
                    Tabulated::decimal("0.539", 0.539),
                    vec![Tabulated::decimal("pi - 0.649", PI - 0.649)],
                ),
            ),
            row("F1", vec![37, 42], Zero),
            row("F5", vec![38, 41], value(log_4_3(), eighth_angles())),
            row(
                "F13",
                vec![45],
                value(
                    log_4_3(),
                    vec![
                        Tabulated::decimal("0.440", 0.440),
                        Tabulated::decimal("1.49", 1.49),
                        Tabulated::decimal("2.16", 2.16),
                        Tabulated::decimal("2.78", 2.78),
                    ],
                ),
            ),
            row(
                "~F13",
                vec![48],
                value(
                    log_4_3(),
                    vec![
                        Tabulated::decimal("pi - 0.440", PI - 0.440),
                        Tabulated::decimal("pi - 1.49", PI - 1.49),
                        Tabulated::decimal("pi - 2.16", PI - 2.16),
                        Tabulated::decimal("pi - 2.78", PI - 2.78),
                    ],
                ),
            ),
        ],
        TableId::VI => vec![
            row("F6", vec![1, 2, 39, 40], NoMax),
            row("F7", vec![3, 4, 43, 44], NoMax),
            row("F8", vec![7, 8, 59, 60], NoMax),
            row("F9", vec![5, 6, 49, 50], NoMax),
            row("F10", vec![11, 12], NoMax),
            row("F2", vec![9, 10, 45, 48], NoMax),
            row("F11", range(13, 28), NoMax),
            row("F12", vec![29, 30, 31, 32, 52, 54, 57, 58], NoMax),
            row("~F12", vec![33, 34, 35, 36, 51, 53, 55, 56], NoMax),
            row("F1", vec![38, 41], Zero),
            row("F5", vec![37, 42], NoMax),
            row("F13", vec![46], NoMax),
            row("~F13", vec![47], NoMax),
        ],
        TableId::VII => vec![
            row("F7", vec![1, 2, 3, 4, 39, 40, 43, 44], value(log_16_9(), quarter_angles())),
            row(
                "F14",
                vec![5, 6, 49, 50],
                value(Tabulated::decimal("0.580", 0.580), vec![Tabulated::decimal("0.790", 0.790)]),
            ),
            row(
                "F15",
                vec![7, 8, 59, 60],
                value(Tabulated::decimal("0.580", 0.580), vec![Tabulated::decimal("0.789", 0.789)]),
            ),
            row(
                "F16",
                vec![9, 10],
                value(Tabulated::decimal("0.405", 0.405), vec![Tabulated::decimal("1.95", 1.95)]),
            ),
            row(
                "F17",
                vec![11, 12, 46, 47],
                value(
                    log_4_3(),
                    vec![Tabulated::exact("2 arctan 2^(1/4)", 2.0 * 2f64.powf(0.25).atan())],
                ),
            ),
            row(
                "F18",
                range(13, 28),
                value(Tabulated::decimal("0.628", 0.628), vec![Tabulated::decimal("2.31", 2.31)]),
            ),
            row(
                "F19",
                vec![29, 31, 34, 36, 55, 56, 57, 58],
                value(Tabulated::decimal("0.569", 0.569), vec![Tabulated::decimal("0.710", 0.710)]),
            ),
            row(
                "F20",
                vec![30, 32, 33, 35, 51, 52, 53, 54],
                value(Tabulated::decimal("0.550", 0.550), vec![Tabulated::decimal("0.849", 0.849)]),
            ),
            row("F1", vec![37, 42], Zero),
            row("F5", vec![38, 41], value(log_4_3(), eighth_angles())),
            row(
                "F21",
                vec![45],
                value(
                    log_4_3(),
                    vec![
                        Tabulated::decimal("0.414", 0.414),
                        Tabulated::decimal("1.45", 1.45),
                        Tabulated::decimal("2.70", 2.70),
                    ],
                ),
            ),
            row(
                "F22",
                vec![48],
                value(
                    log_4_3(),
                    vec![
                        Tabulated::decimal("0.375", 0.375),
                        Tabulated::decimal("1.03", 1.03),
                        Tabulated::decimal("1.62", 1.62),
                        Tabulated::decimal("2.17", 2.17),
                        Tabulated::decimal("2.78", 2.78),
                    ],
                ),
            ),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    /// Reported only; does not affect the verdict.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub deviation: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub label: String,
    pub expected_members: Vec<usize>,
    pub actual_members: Vec<usize>,
    pub actual_max: Maximum,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub table: TableId,
    pub process: Process,
    pub regime: Regime,
    pub lambda: f64,
    pub distribution_count: usize,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.rows.iter().flat_map(|r| r.checks.iter())
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.status != Status::Fail)
    }
}

fn compare(what: String, expected: &Tabulated, actual: Option<f64>) -> Check {
    let dev = actual.map(|a| (a - expected.value).abs());
    let ok = dev.is_some_and(|d| d <= expected.tolerance());
    Check {
        what,
        expected: format!("{} = {:.10}", expected.text, expected.value),
        actual: actual.map_or("undefined".into(), |a| format!("{a:.10}")),
        deviation: dev,
        tolerance: Some(expected.tolerance()),
        status: if expected.informational {
            Status::Info
        } else if ok {
            Status::Pass
        } else {
            Status::Fail
        },
    }
}

fn membership_check(expected: &[usize], actual: &[usize]) -> Check {
    let e: BTreeSet<usize> = expected.iter().copied().collect();
    let a: BTreeSet<usize> = actual.iter().copied().collect();
    Check {
        what: "members".into(),
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
        deviation: None,
        tolerance: None,
        status: if e == a { Status::Pass } else { Status::Fail },
    }
}

/// Compare a classification against the reference rows.
pub fn compare_table(table: TableId, report: &ClassificationReport) -> TableReport {
    let rows = expected_rows(table)
        .into_iter()
        .map(|exp| {
            let class = report.class_of(exp.members[0]);
            let actual_members = class.map(|c| c.members.clone()).unwrap_or_default();
            let actual_max = class.map_or(Maximum::Undefined, |c| c.maximum.clone());
            let mut checks = vec![membership_check(&exp.members, &actual_members)];
            let status = class.map(|c| c.status);
            match (&exp.label, &exp.max) {
                (None, _) => checks.push(Check {
                    what: "vanishing amplitude".into(),
                    expected: "vanishing".into(),
                    actual: status.map_or("not classified", DistributionStatus::name).into(),
                    deviation: None,
                    tolerance: None,
                    status: if status == Some(DistributionStatus::VanishingAmplitude) {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                }),
                (Some(_), ExpectedMax::Zero) => checks.push(Check {
                    what: "zero magic".into(),
                    expected: "M2 = 0 everywhere".into(),
                    actual: status.map_or("not classified", DistributionStatus::name).into(),
                    deviation: None,
                    tolerance: None,
                    status: if status == Some(DistributionStatus::ZeroMagic) {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                }),
                (Some(_), ExpectedMax::Value { max, at }) => {
                    checks.push(compare("(M2)max".into(), max, actual_max.value()));
                    for a in at {
                        let nearest = actual_max
                            .argmax()
                            .iter()
                            .copied()
                            .min_by(|x, y| (x - a.value).abs().total_cmp(&(y - a.value).abs()));
                        checks.push(compare(format!("argmax {}", a.text), a, nearest));
                    }
                }
                (Some(_), ExpectedMax::None) => {}
            }
            RowReport {
                label: exp.label.unwrap_or("-").to_string(),
                expected_members: exp.members,
                actual_members,
                actual_max,
                checks,
            }
        })
        .collect();
    TableReport {
        table,
        process: report.process,
        regime: report.regime,
        lambda: report.lambda,
        distribution_count: report.distribution_count(),
        rows,
    }
}

/// Classify with the limit forms and compare against the reference table.
pub fn reproduce_table(table: TableId, lambda: f64, cfg: &ScanConfig) -> Result<TableReport, Error> {
    let (process, regime) = table.process_regime();
    let report = classify(process, regime, lambda, Source::Limit, cfg)?;
    Ok(compare_table(table, &report))
}

/// Representative catalog id for each function label of a table.
pub fn label_representatives(table: TableId) -> Vec<(&'static str, usize)> {
    expected_rows(table)
        .into_iter()
        .filter_map(|r| r.label.map(|l| (l, r.members[0])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelConsistency {
    pub label: &'static str,
    pub first: (TableId, usize),
    pub second: (TableId, usize),
    pub agree: bool,
}

/// Labels shared between angular tables must denote the same function.
pub fn label_consistency(lambda: f64, cfg: &ScanConfig) -> Result<Vec<LabelConsistency>, Error> {
    let tables = [TableId::II, TableId::IV, TableId::V, TableId::VI, TableId::VII];
    let mut samples = Vec::new();
    for t in tables {
        let (p, r) = t.process_regime();
        samples.push((t, class_samples(p, r, lambda, Source::Limit, cfg)?));
    }
    let mut out = Vec::new();
    for (i, (ta, sa)) in samples.iter().enumerate() {
        for (tb, sb) in &samples[i + 1..] {
            for (la, ida) in label_representatives(*ta) {
                for (lb, idb) in label_representatives(*tb) {
                    if la != lb {
                        continue;
                    }
                    out.push(LabelConsistency {
                        label: la,
                        first: (*ta, ida),
                        second: (*tb, idb),
                        agree: same_distribution(&sa[ida - 1], &sb[idb - 1], cfg.eps_class_limit),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_partition_the_catalog() {
        for t in TableId::ALL {
            let mut all: Vec<usize> = expected_rows(t).into_iter().flat_map(|r| r.members).collect();
            all.sort_unstable();
            assert_eq!(all, range(1, 60), "table {t}");
        }
    }

    #[test]
    fn distribution_counts() {
        let count = |t| expected_rows(t).iter().filter(|r| r.label.is_some()).count();
        assert_eq!(count(TableId::V), 13);
        assert_eq!(count(TableId::VI), 13);
        assert_eq!(count(TableId::VII), 12);
    }

    #[test]
    fn parse_names() {
        assert_eq!("vii".parse::<TableId>().unwrap(), TableId::VII);
        assert!("VIII".parse::<TableId>().is_err());
    }
}

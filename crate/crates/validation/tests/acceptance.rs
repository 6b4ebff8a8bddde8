//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qedmagic::limits::limit_matrix;
use qedmagic::magic::{haar_state, sre};
use qedmagic::relations::{
    annihilation_high_energy_equivalence, g8_max_checks, lambda_zero_identities, mumu_low_relations,
    tilde_relations, RelationCheck,
};
use qedmagic::stabilizer::stabilizer_catalog;
use qedmagic::tables::{reproduce_table, Status, TableId};
use qedmagic::verify::{
    bound_checks, catalog_checks, exchange_checks, global_maximum_checks, identity_amplitude_checks,
    smallness_checks, source_checks, sre_property_checks, threshold_checks, Outcome,
};
use qedmagic::{Process, Regime, ScanConfig, LAMBDA_ROUNDED};
use qedmagic_validation as oracle;

const SEED: u64 = 20240101;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn from_outcomes(outcomes: &[Outcome]) -> Self {
        let failing: Vec<String> = outcomes
            .iter()
            .filter(|o| !o.passed && !o.informational)
            .map(|o| format!("{} ({})", o.name, o.detail))
            .collect();
        if failing.is_empty() {
            Verdict {
                passed: true,
                detail: format!("{} checks", outcomes.len()),
            }
        } else {
            Verdict {
                passed: false,
                detail: format!("{} of {} checks failed: {}", failing.len(), outcomes.len(), failing.join("; ")),
            }
        }
    }
}

fn relation(r: &RelationCheck) -> Outcome {
    Outcome::new(
        r.name.clone(),
        r.passed(),
        format!("max deviation {:.3e} over {} points, tolerance {:.0e}", r.max_deviation, r.points, r.tolerance),
    )
}

fn table_outcomes(table: TableId, classes: usize) -> Vec<Outcome> {
    let cfg = ScanConfig::default();
    let report = match reproduce_table(table, LAMBDA_ROUNDED, &cfg) {
        Ok(r) => r,
        Err(e) => return vec![Outcome::new(format!("table {table}"), false, e.to_string())],
    };
    let mut out: Vec<Outcome> = report
        .rows
        .iter()
        .flat_map(|row| {
            row.checks.iter().filter(|c| c.status != Status::Info).map(move |c| {
                Outcome::new(
                    format!("table {table} {}: {}", row.label, c.what),
                    c.status == Status::Pass,
                    format!("expected {}, got {}", c.expected, c.actual),
                )
            })
        })
        .collect();
    out.push(Outcome::new(
        format!("table {table}: number of distributions"),
        report.distribution_count == classes,
        format!("{} (expected {classes})", report.distribution_count),
    ));
    out
}

fn to_c(v: &qedmagic::linalg::Vec4) -> Vec<C> {
    v.0.to_vec()
}

fn stabilizer_baseline() -> Verdict {
    let mut out = catalog_checks();
    let worst = stabilizer_catalog()
        .iter()
        .map(|s| oracle::stabilizer_renyi_2(&to_c(&s.state)).abs())
        .fold(0.0, f64::max);
    out.push(Outcome::new(
        "independent Pauli sum: catalog M2",
        worst < 1e-12,
        format!("largest |M2| {worst:.3e}"),
    ));
    let orbit1 = oracle::stabilizer_states(1).len();
    let orbit2: std::collections::HashSet<_> = oracle::stabilizer_states(2).iter().map(|v| oracle::ray_key(v)).collect();
    let catalog: std::collections::HashSet<_> =
        stabilizer_catalog().iter().map(|s| oracle::ray_key(&to_c(&s.state))).collect();
    out.push(Outcome::new(
        "Clifford orbit sizes 6 and 60",
        orbit1 == 6 && orbit2.len() == 60,
        format!("{orbit1}, {}", orbit2.len()),
    ));
    out.push(Outcome::new(
        "catalog equals the Clifford orbit of |00>",
        catalog == orbit2,
        format!("{} catalog rays, {} shared", catalog.len(), catalog.intersection(&orbit2).count()),
    ));
    Verdict::from_outcomes(&out)
}

fn sre_properties() -> Verdict {
    let mut out = sre_property_checks(SEED, 1_000, 100_000);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
    let worst = (0..1_000)
        .map(|_| {
            let psi: qedmagic::linalg::Vec4 = haar_state(&mut rng);
            (sre(&psi, 2) - oracle::stabilizer_renyi_2(&to_c(&psi))).abs()
        })
        .fold(0.0, f64::max);
    out.push(Outcome::new(
        "M2 against the independent Pauli sum (1000 states)",
        worst <= 1e-11,
        format!("deviation {worst:.3e}"),
    ));
    Verdict::from_outcomes(&out)
}

fn bounds() -> Verdict {
    Verdict::from_outcomes(&bound_checks())
}

fn threshold() -> Verdict {
    let mut out = match threshold_checks(LAMBDA_ROUNDED) {
        Ok(v) => v,
        Err(e) => vec![Outcome::new("threshold engine", false, e.to_string())],
    };
    let tabulated = oracle::tabulated_threshold_matrix(LAMBDA_ROUNDED);
    let dev = match limit_matrix(Process::EeToMuMu, Regime::Threshold, PI / 3.0, LAMBDA_ROUNDED) {
        Ok(m) => (0..4)
            .flat_map(|f| (0..4).map(move |i| (f, i)))
            .map(|(f, i)| (m.0[f][i] - C::new(tabulated[f][i], 0.0)).norm())
            .fold(0.0, f64::max),
        Err(_) => f64::NAN,
    };
    out.push(Outcome::new(
        "threshold limit matrix equals the tabulated one",
        dev <= 1e-15,
        format!("deviation {dev:.3e}"),
    ));
    Verdict::from_outcomes(&out)
}

fn table_one() -> Verdict {
    let mut out = table_outcomes(TableId::I, 3);
    out.extend(smallness_checks(LAMBDA_ROUNDED, &ScanConfig::default()));
    Verdict::from_outcomes(&out)
}

fn table_two() -> Verdict {
    Verdict::from_outcomes(&table_outcomes(TableId::II, 3))
}

fn identity_amplitudes() -> Verdict {
    match identity_amplitude_checks(LAMBDA_ROUNDED, &ScanConfig::default()) {
        Ok(v) => Verdict::from_outcomes(&v),
        Err(e) => Verdict {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn table_three() -> Verdict {
    let cfg = ScanConfig::default();
    let mut out = table_outcomes(TableId::III, 11);
    out.extend(mumu_low_relations(LAMBDA_ROUNDED, &cfg).iter().filter(|r| !r.informational).map(relation));
    out.extend(g8_max_checks().iter().map(relation));
    Verdict::from_outcomes(&out)
}

fn table_four() -> Verdict {
    let cfg = ScanConfig::default();
    let mut out = table_outcomes(TableId::IV, 3);
    out.extend(lambda_zero_identities(&cfg).iter().map(relation));
    match annihilation_high_energy_equivalence(LAMBDA_ROUNDED, &cfg) {
        Ok(r) => out.push(relation(&r)),
        Err(e) => out.push(Outcome::new("mumu-ee high = ee-mumu high", false, e.to_string())),
    }
    Verdict::from_outcomes(&out)
}

fn tables_five_to_seven() -> Verdict {
    let mut out = table_outcomes(TableId::V, 13);
    out.extend(table_outcomes(TableId::VI, 13));
    out.extend(table_outcomes(TableId::VII, 12));
    out.extend(tilde_relations(&ScanConfig::default()).iter().map(relation));
    Verdict::from_outcomes(&out)
}

fn fermi_statistics() -> Verdict {
    match exchange_checks(SEED, 20, LAMBDA_ROUNDED, &ScanConfig::default()) {
        Ok(v) => Verdict::from_outcomes(&v),
        Err(e) => Verdict {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn engine_limit_equivalence() -> Verdict {
    match source_checks(LAMBDA_ROUNDED, &ScanConfig::default()) {
        Ok(v) => Verdict::from_outcomes(&v),
        Err(e) => Verdict {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn global_maximum() -> Verdict {
    Verdict::from_outcomes(&global_maximum_checks(&ScanConfig::default()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("stabilizer baseline", stabilizer_baseline),
        ("stabilizer Renyi entropy properties", sre_properties),
        ("maximal magic bounds", bounds),
        ("ee -> mumu threshold engine", threshold),
        ("table I (ee -> mumu threshold)", table_one),
        ("table II (Moller low energy)", table_two),
        ("Bhabha and e mu low energy keep M2 = 0", identity_amplitudes),
        ("table III and mumu -> ee low energy relations", table_three),
        ("table IV and high energy annihilation", table_four),
        ("tables V to VII", tables_five_to_seven),
        ("Moller exchange antisymmetry", fermi_statistics),
        ("engine against limit forms", engine_limit_equivalence),
        ("global maximum", global_maximum),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Verdict {
            passed: false,
            detail: "panicked".into(),
        });
        if !verdict.passed {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {name}: {} [{:.2}s]",
            if verdict.passed { "PASS" } else { "FAIL" },
            k + 1,
            verdict.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

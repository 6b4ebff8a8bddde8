use std::f64::consts::PI;

use proptest::prelude::*;

use qedmagic::amplitude::exchange_antisymmetry_check;
use qedmagic::limits::{closed_form_xi2, limit_amplitude, ClosedForm};
use qedmagic::linalg::{gates, tensor, tensor_vec, CMat, CVec, Mat2, Vec2, Vec4, C64};
use qedmagic::magic::{pauli_expectations, sre, two_qubit_max_m2, xi2};
use qedmagic::scan::same_distribution;
use qedmagic::stabilizer::stabilizer_catalog;
use qedmagic::{Process, Regime, ScanConfig};

fn c64() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn raw2() -> impl Strategy<Value = Vec2> {
    prop::array::uniform2(c64()).prop_map(CVec)
}

fn raw4() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(c64()).prop_map(CVec)
}

fn state2() -> impl Strategy<Value = Vec2> {
    raw2().prop_filter_map("near zero", |v| (v.norm() > 0.1).then(|| v.normalize().unwrap()))
}

fn state4() -> impl Strategy<Value = Vec4> {
    raw4().prop_filter_map("near zero", |v| (v.norm() > 0.1).then(|| v.normalize().unwrap()))
}

fn mat2() -> impl Strategy<Value = Mat2> {
    prop::array::uniform2(prop::array::uniform2(c64())).prop_map(CMat)
}

fn theta() -> impl Strategy<Value = f64> {
    0.02f64..PI - 0.02
}

proptest! {
    #[test]
    fn tensor_mixed_product(a in mat2(), b in mat2(), x in raw2(), y in raw2()) {
        let lhs = tensor(&a, &b).apply(&tensor_vec(&x, &y));
        let rhs = tensor_vec(&a.apply(&x), &b.apply(&y));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn normalize_gives_unit_norm(v in raw4()) {
        prop_assume!(v.norm() > 1e-6);
        prop_assert!((v.normalize().unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_weights_sum_to_one(psi in state4()) {
        let s: f64 = pauli_expectations(&psi).iter().map(|e| e * e / 4.0).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn magic_is_bounded(psi in state4()) {
        let m = sre(&psi, 2);
        prop_assert!(m >= -1e-12);
        prop_assert!(m <= two_qubit_max_m2() + 1e-9);
    }

    #[test]
    fn magic_ignores_global_phase(psi in state4(), phi in 0.0f64..2.0 * PI) {
        let m = sre(&psi, 2);
        prop_assert!((sre(&psi.scale(C64::from_polar(1.0, phi)), 2) - m).abs() < 1e-11);
    }

    #[test]
    fn magic_is_clifford_invariant(psi in state4(), word in prop::collection::vec(0usize..6, 1..20)) {
        let gens = gates::clifford_generators();
        let u = word.iter().fold(CMat::identity(), |acc, &k| gens[k] * acc);
        prop_assert!((sre(&u.apply(&psi), 2) - sre(&psi, 2)).abs() < 1e-11);
    }

    #[test]
    fn magic_is_additive(a in state2(), b in state2()) {
        let joint = sre(&tensor_vec(&a, &b), 2);
        prop_assert!((joint - sre(&a, 2) - sre(&b, 2)).abs() < 1e-11);
    }

    #[test]
    fn stabilizer_outputs_of_cliffords_stay_stabilizer(id in 1usize..=60, word in prop::collection::vec(0usize..6, 0..12)) {
        let gens = gates::clifford_generators();
        let psi = word.iter().fold(stabilizer_catalog()[id - 1].state, |v, &k| gens[k].apply(&v));
        prop_assert!((xi2(&psi) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fix_phase_and_scale_ignores_rescaling(m in prop::array::uniform4(prop::array::uniform4(c64())).prop_map(CMat), c in c64()) {
        prop_assume!(c.norm() > 1e-3 && m.max_abs() > 1e-3);
        let a = m.fix_phase_and_scale().unwrap();
        let b = m.scale(c).fix_phase_and_scale().unwrap();
        // Ties for the largest entry can pick different pivots; skip those.
        let top: Vec<f64> = m.0.iter().flatten().map(|z| z.norm()).filter(|&n| n >= m.max_abs() * (1.0 - 1e-6)).collect();
        prop_assume!(top.len() == 1);
        prop_assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn same_distribution_is_reflexive_and_symmetric(
        a in prop::collection::vec(prop::option::weighted(0.95, 0.0f64..1.0), 40),
        b in prop::collection::vec(prop::option::weighted(0.95, 0.0f64..1.0), 40),
    ) {
        prop_assume!(a.iter().filter(|x| x.is_some()).count() >= 20);
        prop_assert!(same_distribution(&a, &a, 0.0));
        prop_assert_eq!(same_distribution(&a, &b, 0.3), same_distribution(&b, &a, 0.3));
    }

    #[test]
    fn closed_forms_lie_between_bounds(t in theta(), l in 0.0f64..1.0) {
        for form in ClosedForm::ALL {
            let x = closed_form_xi2(form, t, l);
            prop_assert!((7.0 / 16.0 - 1e-12..=1.0 + 1e-12).contains(&x), "{form}: {x}");
        }
    }

    #[test]
    fn limit_outputs_respect_the_magic_bound(t in theta(), l in 0.0f64..1.0, id in 1usize..=60) {
        for p in Process::ALL {
            for &r in p.regimes() {
                let amp = limit_amplitude(p, r, t, l).unwrap();
                if let Ok(out) = amp.final_state(&stabilizer_catalog()[id - 1].state) {
                    let m = sre(&out.normalize().unwrap(), 2);
                    prop_assert!(m >= -1e-12 && m <= two_qubit_max_m2() + 1e-9, "{p} {r}: {m}");
                }
            }
        }
    }

    #[test]
    fn moller_exchange_antisymmetry(t in theta(), high in any::<bool>()) {
        let regime = if high { Regime::High } else { Regime::Low };
        let point = ScanConfig::default().engine_point(Process::Moller, regime, t, 0.005).unwrap();
        let r = exchange_antisymmetry_check(&point, 1e-10).unwrap();
        prop_assert!(r.passed, "{r:?}");
    }

    #[test]
    fn low_energy_bhabha_creates_no_magic(t in theta(), id in 1usize..=60) {
        let point = ScanConfig::default().engine_point(Process::Bhabha, Regime::Low, t, 0.005).unwrap();
        let a = qedmagic::amplitude::amplitude_matrix(&point).entries;
        let out = a.apply(&stabilizer_catalog()[id - 1].state).normalize().unwrap();
        prop_assert!(sre(&out, 2).abs() < 1e-10);
    }
}

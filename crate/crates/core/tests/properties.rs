use bellcoh_core::closedform::pow_flush;
use bellcoh_core::*;
use proptest::prelude::*;

fn physical_coeffs() -> impl Strategy<Value = BellCoeffs> {
    (-1.0..=1.0f64, -1.0..=1.0f64, -1.0..=1.0f64)
        .prop_filter_map("unphysical triple", |(a, b, c)| {
            BellCoeffs::new(a, b, c).ok()
        })
}

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn complex2() -> impl Strategy<Value = Matrix2> {
    proptest::array::uniform8(-1.0..1.0f64).prop_map(|v| {
        Matrix2([
            [C64::new(v[0], v[1]), C64::new(v[2], v[3])],
            [C64::new(v[4], v[5]), C64::new(v[6], v[7])],
        ])
    })
}

/// `G G† / Tr(G G†)` for a random complex `G`.
fn random_density() -> impl Strategy<Value = TwoQubitDensity> {
    proptest::collection::vec(-1.0..1.0f64, 32).prop_filter_map("degenerate", |v| {
        let mut g = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] = C64::new(v[8 * i + 2 * j], v[8 * i + 2 * j + 1]);
            }
        }
        let gg = g * g.adjoint();
        let tr = gg.trace().re;
        if tr < 1e-3 {
            return None;
        }
        TwoQubitDensity::new(gg.scale_real(1.0 / tr)).ok()
    })
}

fn kinds_with_closed_form() -> impl Strategy<Value = ChannelKind> {
    prop_oneof![
        Just(ChannelKind::BitFlip),
        Just(ChannelKind::PhaseFlip),
        Just(ChannelKind::BitPhaseFlip),
        Just(ChannelKind::Depolarizing),
        Just(ChannelKind::GeneralizedAmplitudeDamping),
    ]
}

fn any_kind() -> impl Strategy<Value = ChannelKind> {
    proptest::sample::select(ChannelKind::ALL.to_vec())
}

fn kraus(kind: ChannelKind, p: f64, gamma: f64) -> KrausSet {
    kraus_set(kind, ChannelParams::new(p, gamma).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bell_round_trip(c in physical_coeffs()) {
        let back = density_to_bell(&bell_to_density(&c)).unwrap();
        prop_assert!(back.max_abs_diff(&c) <= 1e-12);
    }

    #[test]
    fn eigenvalues_match_closed_form_spectrum(c in physical_coeffs()) {
        let got = eigenvalues_hermitian(bell_to_density(&c).matrix()).unwrap();
        let mut want = c.spectrum();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(want.iter()) {
            prop_assert!((g - w).abs() <= 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn dephase_idempotent_and_trace_preserving(rho in random_density()) {
        let once = dephase(&rho);
        prop_assert_eq!(dephase(&once), once);
        prop_assert!((once.matrix().trace() - rho.matrix().trace()).norm() < 1e-15);
    }

    #[test]
    fn entropy_bounds(rho in random_density()) {
        let s = von_neumann_entropy(&rho).unwrap();
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&s));
    }

    #[test]
    fn eigen_solver_reconstructs_trace_and_frobenius(rho in random_density()) {
        let ev = eigenvalues_hermitian(rho.matrix()).unwrap();
        let tr: f64 = ev.iter().sum();
        let fro: f64 = ev.iter().map(|l| l * l).sum();
        let m = rho.matrix();
        let fro_m = (m * m).trace().re;
        prop_assert!((tr - 1.0).abs() < 1e-12);
        prop_assert!((fro - fro_m).abs() < 1e-12);
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn kron_mixed_product(a in complex2(), b in complex2(), c in complex2(), d in complex2()) {
        let lhs = kron(&a, &b) * kron(&c, &d);
        let rhs = kron(&(a * c), &(b * d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn kron_bilinear(a in complex2(), b in complex2(), c in complex2(), s in -2.0..2.0f64) {
        let lhs = kron(&(a + c.scale_real(s)), &b);
        let rhs = kron(&a, &b) + kron(&c, &b).scale_real(s);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        let lhs = kron(&a, &(b + c.scale_real(s)));
        let rhs = kron(&a, &b) + kron(&a, &c).scale_real(s);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn channels_are_cptp_on_general_states(
        rho in random_density(), kind in any_kind(), p in unit(), gamma in unit(),
        second in any::<bool>(),
    ) {
        let k = kraus(kind, p, gamma);
        prop_assert!(k.completeness_defect() <= 1e-12);
        let side = if second { Side::Second } else { Side::First };
        let out = apply_one_side(&rho, &k, side);
        prop_assert!((out.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(out.matrix().hermiticity_defect() <= 1e-12);
        prop_assert!(out.eigenvalues().unwrap()[0] >= -1e-10);
    }

    #[test]
    fn apply_both_equals_sequential(
        rho in random_density(), ka in any_kind(), kb in any_kind(),
        p in unit(), q in unit(),
    ) {
        let a = kraus(ka, p, q);
        let b = kraus(kb, q, p);
        let both = apply_both(&rho, &a, &b);
        let ab = apply_one_side(&apply_one_side(&rho, &a, Side::First), &b, Side::Second);
        let ba = apply_one_side(&apply_one_side(&rho, &b, Side::Second), &a, Side::First);
        prop_assert!(both.matrix().max_abs_diff(ab.matrix()) <= 1e-12);
        prop_assert!(both.matrix().max_abs_diff(ba.matrix()) <= 1e-12);
    }

    #[test]
    fn apply_n_composes(c in physical_coeffs(), kind in any_kind(), p in unit(), m in 0u64..6, n in 0u64..6) {
        let k = kraus(kind, p, 0.5);
        let rho = bell_to_density(&c);
        let whole = apply_n(&rho, &k, Side::First, m + n).unwrap();
        let split = apply_n(&apply_n(&rho, &k, Side::First, m).unwrap(), &k, Side::First, n).unwrap();
        prop_assert!(whole.matrix().max_abs_diff(split.matrix()) <= 1e-12);
    }

    #[test]
    fn pauli_and_depolarizing_preserve_bell_form(
        c in physical_coeffs(),
        kind in prop_oneof![
            Just(ChannelKind::BitFlip), Just(ChannelKind::PhaseFlip),
            Just(ChannelKind::BitPhaseFlip), Just(ChannelKind::Depolarizing),
            Just(ChannelKind::GeneralizedAmplitudeDamping),
        ],
        p in unit(), q in unit(),
    ) {
        let (k1, k2) = if kind == ChannelKind::GeneralizedAmplitudeDamping {
            (channels::gad_bell(p).unwrap(), channels::gad_bell(q).unwrap())
        } else {
            (kraus(kind, p, 0.0), kraus(kind, q, 0.0))
        };
        let rho = bell_to_density(&c);
        prop_assert!(density_to_bell(&apply_one_side(&rho, &k1, Side::First)).is_ok());
        prop_assert!(density_to_bell(&apply_both(&rho, &k1, &k2)).is_ok());
    }

    #[test]
    fn amplitude_damping_breaks_bell_form(c in physical_coeffs(), p in 0.01..=1.0f64) {
        prop_assume!(c.c3.abs() < 0.99);
        let k = kraus(ChannelKind::AmplitudeDamping, p, 0.0);
        let out = apply_one_side(&bell_to_density(&c), &k, Side::First);
        let is_not_bell = matches!(density_to_bell(&out), Err(Error::NotBellDiagonal { .. }));
        prop_assert!(is_not_bell);
    }

    #[test]
    fn closed_forms_contract(
        c in physical_coeffs(), kind in kinds_with_closed_form(), p in unit(), q in unit(), n in 0u64..40,
    ) {
        let rates = RateParams::new(p, q).unwrap();
        let mut families = vec![MapFamily::Local(kind), MapFamily::LocalRepeated(kind, n)];
        if matches!(kind, ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip) {
            families.push(MapFamily::BiSame(kind));
            families.push(MapFamily::BiSameRepeated(kind, n));
        }
        use ChannelKind::*;
        for (a, b) in [(BitFlip, PhaseFlip), (BitFlip, BitPhaseFlip), (PhaseFlip, BitPhaseFlip)] {
            families.push(MapFamily::BiMixed(a, b));
            families.push(MapFamily::BiMixedRepeated(a, b, n));
        }
        for fam in families {
            let out = map_coeffs(fam, &c, rates).unwrap();
            for (new, old) in out.as_array().iter().zip(c.as_array()) {
                prop_assert!(new.abs() <= old.abs() + 1e-15, "{fam}: {out:?} vs {c:?}");
            }
            let ident = map_coeffs(fam, &c, RateParams::new(0.0, 0.0).unwrap()).unwrap();
            prop_assert_eq!(ident, c);
        }
    }

    #[test]
    fn repeated_tables_are_semigroups(
        c in physical_coeffs(), kind in kinds_with_closed_form(), p in unit(), m in 0u64..30, k in 0u64..30,
    ) {
        let r = RateParams::single(p).unwrap();
        let whole = map_coeffs(MapFamily::LocalRepeated(kind, m + k), &c, r).unwrap();
        let first = map_coeffs(MapFamily::LocalRepeated(kind, m), &c, r).unwrap();
        let split = map_coeffs(MapFamily::LocalRepeated(kind, k), &first, r).unwrap();
        prop_assert!(whole.max_abs_diff(&split) <= 1e-15);
    }

    #[test]
    fn l1_bell_is_max_modulus(c in physical_coeffs()) {
        prop_assert!((c_l1_bell(&c) - c.c1.abs().max(c.c2.abs())).abs() <= 1e-15);
    }

    #[test]
    fn specialisations_agree(c in physical_coeffs()) {
        let rho = bell_to_density(&c);
        prop_assert!((c_l1_bell(&c) - c_l1(&rho)).abs() <= 1e-14);
        prop_assert!((c_rel_bell(&c) - c_rel(&rho).unwrap()).abs() <= 1e-10);
        for v in [c_l1_bell(&c), c_rel_bell(&c)] {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn frozen_l1_when_c2_dominates(c in physical_coeffs(), f in -1.0..=1.0f64) {
        prop_assume!(c.c2.abs() >= c.c1.abs());
        let image = BellCoeffs::new_unchecked(f * c.c1, c.c2, c.c3 * f);
        prop_assert!((c_l1_bell(&image) - c.c2.abs()).abs() <= 1e-15);
    }
}

#[test]
fn pow_flush_semigroup_exactness() {
    for base in [0.0, 0.3, 0.77, -1.0 / 3.0, 1.0] {
        for (m, k) in [(0u64, 5u64), (3, 4), (17, 23), (100, 100)] {
            let lhs = pow_flush(base, m + k);
            let rhs = pow_flush(base, m) * pow_flush(base, k);
            assert!((lhs - rhs).abs() <= 1e-15, "{base} {m} {k}");
        }
    }
}

#[test]
fn adc_n_is_a_density_matrix_on_grid() {
    let c = EXAMPLE_STATE;
    for n in 0..=100u64 {
        for i in 0..=20 {
            let p = i as f64 * 0.05;
            let rho = adc_state_n(&c, p, n).unwrap();
            assert!(rho.validate().is_ok(), "n={n} p={p}");
        }
    }
}

#[test]
fn frozen_l1_under_bit_phase_flip_both_engines() {
    let c = EXAMPLE_STATE;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let table = map_coeffs(
            MapFamily::Local(ChannelKind::BitPhaseFlip),
            &c,
            RateParams::single(p).unwrap(),
        )
        .unwrap();
        assert!((c_l1_bell(&table) - 0.4).abs() < 1e-12);
        let k = kraus(ChannelKind::BitPhaseFlip, p, 0.0);
        let oracle = apply_one_side(&bell_to_density(&c), &k, Side::First);
        assert!((c_l1(&oracle) - 0.4).abs() < 1e-12);
    }
}

#[test]
fn measures_are_not_equivalent_on_example() {
    let c = EXAMPLE_STATE;
    let at = |p: f64| {
        map_coeffs(
            MapFamily::Local(ChannelKind::BitPhaseFlip),
            &c,
            RateParams::single(p).unwrap(),
        )
        .unwrap()
    };
    assert_eq!(c_l1_bell(&at(0.0)), c_l1_bell(&at(1.0)));
    assert!(c_rel_bell(&at(1.0)) < c_rel_bell(&at(0.0)));

    let scan: Vec<(f64, f64)> = (0..=100)
        .map(|i| {
            let p = i as f64 / 100.0;
            (p, c_rel_bell(&at(p)))
        })
        .collect();
    assert!(
        !frozen_scan(CoherenceMeasure::RelativeEntropy, &scan)
            .unwrap()
            .is_frozen
    );
}

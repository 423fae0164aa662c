use num_bigint::BigInt;
use proptest::prelude::*;
use rankone::groups::{
    e_inverse_gamma_args, exceptional_by_scan, exceptional_closed_in_range, exceptional_params,
    is_exceptional, structural_data, GroupFamily, SpectralParam,
};
use rankone::ktypes::{
    casimir_scalar, enumerate_labels, highest_weight, label_dim, langlands, minimal_ktype,
    mintype_norm, rho_c, socle_contains, socle_min_closed_form, weyl_dim, KTypeLabel, LanglandsS,
};
use rankone::rational::{binomial, q, qf, Q};
use rankone::Weight;

fn mu(x: Q) -> SpectralParam {
    SpectralParam::new(x)
}

fn label(f: GroupFamily, c: &[i64]) -> KTypeLabel {
    KTypeLabel::new(f, c).unwrap()
}

#[test]
fn table_rows() {
    let so5 = structural_data(GroupFamily::SO(5));
    assert_eq!((so5.m_alpha, so5.m_2alpha, so5.rho_h), (4, 0, q(2)));
    let sp2 = structural_data(GroupFamily::Sp(2));
    assert_eq!((sp2.m_alpha, sp2.m_2alpha, sp2.rho_h), (4, 3, q(5)));
    let f4 = structural_data(GroupFamily::F4);
    assert_eq!((f4.m_alpha, f4.m_2alpha, f4.rho_h, f4.sphere_dim), (8, 7, q(11), 15));
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(GroupFamily::so(1).is_err());
    assert!(GroupFamily::su(0).is_err());
    assert!(GroupFamily::parse("G2", Some(3)).is_err());
    assert!(GroupFamily::parse("F4", Some(3)).is_err());
    assert_eq!(GroupFamily::parse("sp", Some(2)).unwrap(), GroupFamily::Sp(2));
}

#[test]
fn gamma_arguments() {
    assert_eq!(e_inverse_gamma_args(GroupFamily::SO(3), &mu(q(0))), (q(1), qf(1, 2)));
    assert_eq!(e_inverse_gamma_args(GroupFamily::SU(2), &mu(q(-2))), (q(0), q(0)));
    assert_eq!(e_inverse_gamma_args(GroupFamily::SU(2), &mu(q(-1))), (qf(1, 2), qf(1, 2)));
}

#[test]
fn exceptional_examples() {
    assert!(is_exceptional(GroupFamily::SU(2), &mu(q(-2))));
    assert!(is_exceptional(GroupFamily::F4, &mu(q(-5))));
    for f in [GroupFamily::SO(3), GroupFamily::SU(4), GroupFamily::Sp(2), GroupFamily::F4] {
        assert!(!is_exceptional(f, &mu(q(0))));
    }
    let vals = |f, c| -> Vec<Q> { exceptional_params(f, c).into_iter().map(|m| m.mu_h).collect() };
    assert_eq!(vals(GroupFamily::SO(3), 3), vec![q(-1), q(-2), q(-3)]);
    assert_eq!(vals(GroupFamily::Sp(2), 3), vec![q(-3), q(-5), q(-7)]);
    assert_eq!(vals(GroupFamily::F4, 3), vec![q(-5), q(-7), q(-9)]);
}

#[test]
fn exceptional_routes_agree_on_wide_window() {
    let mut fams = vec![GroupFamily::F4];
    fams.extend((2..=10).map(GroupFamily::SO));
    fams.extend((2..=8).map(GroupFamily::SU));
    fams.extend((2..=6).map(GroupFamily::Sp));
    for f in fams {
        assert_eq!(exceptional_closed_in_range(f, 60), exceptional_by_scan(f, 60), "{f}");
    }
}

#[test]
fn highest_weights_and_rho() {
    assert_eq!(highest_weight(&label(GroupFamily::SO(5), &[2])), Weight::from_ints(&[2, 0]));
    assert_eq!(highest_weight(&label(GroupFamily::SU(3), &[1, 2])), Weight::from_ints(&[2, 0, -1, -1]));
    assert_eq!(
        highest_weight(&label(GroupFamily::F4, &[2, 0])),
        Weight(vec![q(1), q(0), q(0), q(0)])
    );
    assert_eq!(rho_c(GroupFamily::SO(5)), Weight(vec![qf(3, 2), qf(1, 2)]));
    assert_eq!(rho_c(GroupFamily::F4), Weight(vec![qf(7, 2), qf(5, 2), qf(3, 2), qf(1, 2)]));
    assert_eq!(rho_c(GroupFamily::SU(2)), Weight(vec![qf(1, 2), qf(-1, 2), q(0)]));
}

#[test]
fn mintype_norm_examples() {
    let f4 = GroupFamily::F4;
    assert_eq!(mintype_norm(f4, &highest_weight(&label(f4, &[2, 0]))), q(99));
    let so5 = GroupFamily::SO(5);
    assert_eq!(mintype_norm(so5, &highest_weight(&label(so5, &[1]))), q(17));
    let zero = Weight::zero(2);
    assert_eq!(mintype_norm(so5, &zero), rho_c(so5).scale(&q(2)).norm2());
}

/// Dimension formulas written out independently of the Weyl product over roots.
fn closed_dimension(l: &KTypeLabel) -> Q {
    let c = l.coords();
    match l.family() {
        GroupFamily::SO(n) => {
            let (n, k) = (i64::from(n), c[0]);
            binomial(n + k - 3, k) * qf(n + 2 * k - 2, n - 2)
        }
        GroupFamily::SU(n) => {
            let (n, p, qq) = (i64::from(n), c[0], c[1]);
            binomial(qq + n - 2, n - 2) * binomial(p + n - 2, n - 2) * qf(n + p + qq - 1, n - 1)
        }
        GroupFamily::Sp(n) => {
            let (n, x1, x2) = (i64::from(n), c[0], c[1]);
            let x3 = x1 - x2;
            qf(x1 + x2 + 2 * n - 1, (2 * n - 1) * (2 * n - 2))
                * q((x1 - x2 + 1) * (x3 + 1))
                * binomial(x1 + 2 * n - 2, 2 * n - 3)
                * binomial(x2 + 2 * n - 3, 2 * n - 3)
        }
        GroupFamily::F4 => {
            let a = highest_weight(l).0;
            let mut num = Q::from_integer(1.into());
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let (ii, jj) = (q(i as i64 + 1), q(j as i64 + 1));
                    num *= (&a[i] + &a[j] + q(9) - &ii - &jj) * (&a[i] - &a[j] + &jj - &ii);
                }
                num *= q(9) + q(2) * (&a[i] - q(i as i64 + 1));
            }
            num / q(720 * 24 * 2 * 7 * 5 * 3)
        }
    }
}

#[test]
fn weyl_dimension_matches_closed_forms() {
    let fams = [
        GroupFamily::SO(4),
        GroupFamily::SO(5),
        GroupFamily::SO(8),
        GroupFamily::SU(2),
        GroupFamily::SU(3),
        GroupFamily::SU(5),
        GroupFamily::Sp(2),
        GroupFamily::Sp(3),
        GroupFamily::F4,
    ];
    for f in fams {
        for l in enumerate_labels(f, 12) {
            assert_eq!(Q::from_integer(label_dim(&l)), closed_dimension(&l), "{f} {l}");
        }
    }
}

#[test]
fn weyl_dimension_errors_and_trivial() {
    for f in [GroupFamily::SO(6), GroupFamily::SU(3), GroupFamily::Sp(2), GroupFamily::F4] {
        let zeros = vec![0; if matches!(f, GroupFamily::SO(_)) { 1 } else { 2 }];
        assert_eq!(label_dim(&label(f, &zeros)), BigInt::from(1));
    }
    assert!(weyl_dim(GroupFamily::SO(5), &Weight::from_ints(&[0, 1])).is_err());
    assert!(weyl_dim(GroupFamily::SO(5), &Weight::from_ints(&[1])).is_err());
}

#[test]
fn label_constraints() {
    assert!(KTypeLabel::new(GroupFamily::Sp(2), &[1, 2]).is_err());
    assert!(KTypeLabel::new(GroupFamily::F4, &[3, 0]).is_err());
    assert!(KTypeLabel::new(GroupFamily::SU(3), &[-1, 0]).is_err());
    assert!(KTypeLabel::new(GroupFamily::SO(2), &[-3]).is_ok());
    assert_eq!(KTypeLabel::parse(GroupFamily::Sp(2), "V2,1").unwrap(), label(GroupFamily::Sp(2), &[2, 1]));
}

#[test]
fn socle_membership_examples() {
    assert!(socle_contains(GroupFamily::SO(5), 0, &label(GroupFamily::SO(5), &[1])));
    assert!(!socle_contains(GroupFamily::SU(3), 1, &label(GroupFamily::SU(3), &[1, 3])));
    assert!(socle_contains(GroupFamily::F4, 0, &label(GroupFamily::F4, &[2, 0])));
}

#[test]
fn minimal_ktype_examples() {
    for n in 3..=8 {
        let f = GroupFamily::SO(n);
        assert_eq!(minimal_ktype(f, 2, 16).unwrap(), vec![label(f, &[3])]);
    }
    let sp2 = GroupFamily::Sp(2);
    assert_eq!(minimal_ktype(sp2, 0, 8).unwrap(), vec![label(sp2, &[1, 1])]);
    assert_eq!(minimal_ktype(GroupFamily::F4, 1, 12).unwrap(), vec![label(GroupFamily::F4, &[4, 0])]);
    assert!(minimal_ktype(GroupFamily::F4, 3, 4).is_err());
}

#[test]
fn minimal_ktype_sweep() {
    let mut fams = vec![GroupFamily::F4, GroupFamily::SO(2)];
    fams.extend((3..=8).map(GroupFamily::SO));
    fams.extend((2..=5).map(GroupFamily::SU));
    fams.extend((2..=4).map(GroupFamily::Sp));
    for f in fams {
        for ell in 0..=5 {
            let found = minimal_ktype(f, ell, rankone::ktypes::default_search_bound(ell)).unwrap();
            assert_eq!(found, socle_min_closed_form(f, ell), "{f} l={ell}");
        }
    }
}

#[test]
fn langlands_examples() {
    for ell in 0..=10 {
        let r = langlands(GroupFamily::F4, ell);
        assert_eq!(r.s, LanglandsS::G);
        assert!(r.tempered);
        assert_eq!(r.discrete_series, ell >= 3);
    }
    let sp = langlands(GroupFamily::Sp(2), 0);
    assert_eq!(sp.s, LanglandsS::G);
    assert!(sp.limit_of_discrete_series);
    let so = langlands(GroupFamily::SO(5), 0);
    assert_eq!(so.s, LanglandsS::P);
    assert_eq!(so.nu_h, Some(qf(7, 2)));
}

#[test]
fn langlands_records_consistent() {
    let mut fams = vec![GroupFamily::F4];
    fams.extend((2..=8).map(GroupFamily::SO));
    fams.extend((2..=5).map(GroupFamily::SU));
    fams.extend((2..=4).map(GroupFamily::Sp));
    for f in fams {
        for ell in 0..=10 {
            assert!(langlands(f, ell).is_consistent(), "{f} l={ell}");
        }
    }
}

#[test]
fn casimir_examples() {
    for f in [GroupFamily::SO(3), GroupFamily::SU(4), GroupFamily::F4] {
        assert_eq!(casimir_scalar(f, &mu(structural_data(f).rho_h)), q(0));
    }
    assert_eq!(casimir_scalar(GroupFamily::SO(3), &mu(q(-1))), q(0));
    assert_eq!(casimir_scalar(GroupFamily::SU(2), &mu(q(-4))), q(12));
}

fn any_family() -> impl Strategy<Value = GroupFamily> {
    prop_oneof![
        (2u32..=10).prop_map(GroupFamily::SO),
        (2u32..=8).prop_map(GroupFamily::SU),
        (2u32..=6).prop_map(GroupFamily::Sp),
        Just(GroupFamily::F4),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rho_is_half_sum_of_roots(f in any_family()) {
        let d = structural_data(f);
        prop_assert_eq!(d.rho_h, qf(i64::from(d.m_alpha) + 2 * i64::from(d.m_2alpha), 2));
    }

    #[test]
    fn predicate_matches_closed_form(f in any_family(), twice in 0i64..=120) {
        let m = qf(-twice, 2);
        let listed = exceptional_closed_in_range(f, 60).iter().any(|p| p.mu_h == m);
        prop_assert_eq!(is_exceptional(f, &mu(m)), listed);
    }

    #[test]
    fn minimal_type_is_scale_invariant(f in any_family(), ell in 0u32..=4) {
        let bound = rankone::ktypes::default_search_bound(ell);
        let socle: Vec<KTypeLabel> = enumerate_labels(f, bound)
            .into_iter()
            .filter(|l| socle_contains(f, ell, l))
            .collect();
        let argmin = |scale: Q| {
            let norm = |l: &KTypeLabel| mintype_norm(f, &highest_weight(l)) * &scale;
            let best = socle.iter().map(norm).min().unwrap();
            socle.iter().filter(|l| norm(l) == best).cloned().collect::<Vec<_>>()
        };
        prop_assert_eq!(argmin(q(1)), argmin(q(2)));
    }
}

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankone::groups::{exceptional_closed_form, GroupFamily, SpectralParam};
use rankone::rational::{q, qf, to_f64, Q};
use rankone::so_model::{
    check_2rho, exceptional_coupling, inverse_dimension, iwasawa, poisson_delta,
    pythagorean_rotation, random_lorentz, random_rotation, reproducing_check_exact,
    reproducing_defect, sphere_moment, sphere_samples, verify_intertwining, zonal_l2_norm,
    zonal_poly, IntertwiningConfig, LorentzMatrix,
};

fn mu(x: Q) -> SpectralParam {
    SpectralParam::new(x)
}

#[test]
fn iwasawa_of_simple_elements() {
    let e = iwasawa(&LorentzMatrix::identity(4)).unwrap();
    assert!(e.s.abs() < 1e-14);
    assert!(e.n_coords.iter().all(|c| c.abs() < 1e-14));
    for s in [-1.5, -0.2, 0.7, 2.0] {
        let d = iwasawa(&LorentzMatrix::a(3, s)).unwrap();
        assert!((d.s - s).abs() < 1e-12, "s = {s}");
        assert!(d.n_coords.iter().all(|c| c.abs() < 1e-12));
        assert!((d.k.matrix() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);
    }
    let nil = LorentzMatrix::nilpotent(4, &[0.3, -0.5, 1.1]);
    let d = iwasawa(&nil).unwrap();
    assert!(d.s.abs() < 1e-12);
    for (a, b) in d.n_coords.iter().zip([0.3, -0.5, 1.1]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn non_lorentz_input_is_rejected() {
    assert!(LorentzMatrix::new(DMatrix::identity(4, 4) * 2.0).is_err());
    let mut flip = DMatrix::<f64>::identity(4, 4);
    flip[(3, 3)] = -1.0;
    flip[(0, 0)] = -1.0;
    assert!(LorentzMatrix::new(flip).is_err());
    let mut refl = DMatrix::<f64>::identity(4, 4);
    refl[(0, 0)] = -1.0;
    assert!(LorentzMatrix::new(refl).is_err());
    assert!(LorentzMatrix::new(DMatrix::identity(3, 4)).is_err());
}

#[test]
fn sphere_moment_examples() {
    assert_eq!(sphere_moment(3, &[0, 0, 0]), q(1));
    assert_eq!(sphere_moment(3, &[2, 0, 0]), qf(1, 3));
    assert_eq!(sphere_moment(3, &[4, 0, 0]), qf(1, 5));
    assert_eq!(sphere_moment(3, &[2, 2, 0]), qf(1, 15));
    assert_eq!(sphere_moment(4, &[1, 1, 0, 0]), q(0));
}

#[test]
fn sphere_moments_match_monte_carlo() {
    let pts = sphere_samples(4, 100_000, 3);
    for alpha in [[2u32, 0, 0, 0], [2, 2, 0, 0], [4, 0, 2, 0]] {
        let mc: f64 = pts
            .iter()
            .map(|x| x.iter().zip(alpha).map(|(v, a)| v.powi(a as i32)).product::<f64>())
            .sum::<f64>()
            / pts.len() as f64;
        let exact = to_f64(&sphere_moment(4, &alpha));
        assert!((mc - exact).abs() < 0.01 * exact.max(0.01), "{alpha:?}: {mc} vs {exact}");
    }
}

#[test]
fn zonal_norm_is_inverse_dimension() {
    assert_eq!(zonal_l2_norm(3, 0).unwrap(), q(1));
    assert_eq!(zonal_l2_norm(3, 1).unwrap(), qf(1, 3));
    assert_eq!(zonal_l2_norm(5, 2).unwrap(), qf(1, 14));
    for n in 3..=7 {
        for k in 0..=8 {
            assert_eq!(zonal_l2_norm(n, k).unwrap(), inverse_dimension(n, k).unwrap());
        }
    }
}

#[test]
fn zonal_polynomials_are_harmonic() {
    for n in 3..=7 {
        for k in 0..=8 {
            let z = zonal_poly(n, k).unwrap();
            assert!(z.is_harmonic(), "n={n} k={k}");
            assert!((z.eval(&[1.0]) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn reproducing_property() {
    for n in 3..=5 {
        let r = pythagorean_rotation(n);
        let id: Vec<Vec<Q>> = (0..n as usize)
            .map(|i| (0..n as usize).map(|j| q(i64::from(i == j))).collect())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(n));
        for k in 0..=4 {
            assert!(reproducing_check_exact(n, k, &r).unwrap(), "n={n} k={k}");
            assert!(reproducing_check_exact(n, k, &id).unwrap());
            let rot = random_rotation(n, &mut rng);
            assert!(reproducing_defect(n, k, &rot).unwrap() < 1e-10);
        }
    }
}

#[test]
fn poisson_delta_on_simple_elements() {
    let n = 4;
    let xs = sphere_samples(n, 20, 1);
    let z = zonal_poly(n as u32, 3).unwrap();
    let m = mu(qf(-1, 3));
    let rho = 1.5;
    for g in [
        LorentzMatrix::identity(n),
        LorentzMatrix::nilpotent(n, &[0.4, -0.9, 0.2]),
    ] {
        let vals = poisson_delta(3, &m, &g, &xs).unwrap();
        for (v, x) in vals.iter().zip(&xs) {
            assert!((v - z.eval(x)).abs() < 1e-10);
        }
    }
    for s in [-0.8, 0.5] {
        let vals = poisson_delta(3, &m, &LorentzMatrix::a(n, s), &xs).unwrap();
        let factor = (s * (-1.0 / 3.0 + rho)).exp();
        for (v, x) in vals.iter().zip(&xs) {
            assert!((v - factor * z.eval(x)).abs() < 1e-10, "s = {s}");
        }
    }
}

#[test]
fn intertwining_grid() {
    let cfg = IntertwiningConfig::default();
    for n in 3..=5u32 {
        for k in 0..=3u32 {
            for m in [qf(-7, 2), q(-1), q(0), qf(5, 3)] {
                let r = verify_intertwining(n, k, &mu(m.clone()), &cfg).unwrap();
                assert!(r.passes(1e-5), "n={n} k={k} mu={m}: {r:?}");
                assert!((r.fitted_upper - r.expected_upper).abs() < 1e-5);
                assert!((r.fitted_lower - r.expected_lower).abs() < 1e-5);
            }
        }
    }
}

#[test]
fn intertwining_needs_three_dimensions() {
    assert!(verify_intertwining(2, 1, &mu(q(0)), &IntertwiningConfig::default()).is_err());
}

#[test]
fn exceptional_coupling_vanishes() {
    let cfg = IntertwiningConfig::default();
    for n in 3..=5u32 {
        for ell in 0..=3u32 {
            let c = exceptional_coupling(n, ell, &cfg).unwrap();
            assert!(c.abs() < 1e-5, "n={n} l={ell}: {c}");
            // Away from the exceptional point the same coefficient is visibly nonzero.
            let off = mu(exceptional_closed_form(GroupFamily::SO(n), ell) + q(1));
            let r = verify_intertwining(n, ell, &off, &cfg).unwrap();
            assert!(r.fitted_upper.abs() > 0.1);
        }
    }
}

#[test]
fn two_rho_pairing() {
    for n in 2..=6u32 {
        let r = check_2rho(n).unwrap();
        assert!(r.holds(), "n={n}: {r:?}");
        assert_eq!(r.pairing, q(i64::from(n) - 1));
    }
    assert!(check_2rho(1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iwasawa_round_trip(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_lorentz(n, &mut rng);
        let d = iwasawa(&g).unwrap();
        prop_assert!(d.reconstruction_error(&g) < 1e-8);
        prop_assert!((d.k.matrix()[(n, n)] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn moments_respect_unit_norm(a in prop::collection::vec(0u32..=3, 4)) {
        let alpha: Vec<u32> = a.iter().map(|x| 2 * x).collect();
        let mut total = Q::from_integer(0.into());
        for i in 0..alpha.len() {
            let mut b = alpha.clone();
            b[i] += 2;
            total += sphere_moment(4, &b);
        }
        prop_assert_eq!(total, sphere_moment(4, &alpha));
    }
}

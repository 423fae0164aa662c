use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankone::groups::GroupFamily;
use rankone::ktypes::{enumerate_labels, highest_weight, label_dim, KTypeLabel};
use rankone::poly::Poly;
use rankone::rational::{q, qf, Q};
use rankone::spherical::{
    chebyshev_u, f4_lower_with, lambda_scalar, omega_candidates, omega_h_expand, phi,
    verify_omega_identity, Azimuthal,
};
use rankone::tensor::racah_speiser;

fn label(f: GroupFamily, c: &[i64]) -> KTypeLabel {
    KTypeLabel::new(f, c).unwrap()
}

fn families() -> Vec<GroupFamily> {
    let mut out: Vec<GroupFamily> = (3..=8).map(GroupFamily::SO).collect();
    out.extend((2..=5).map(GroupFamily::SU));
    out.extend((2..=4).map(GroupFamily::Sp));
    out.push(GroupFamily::F4);
    out
}

/// Float `cos^p θ · Σ_j (a)_j (b)_j / ((c)_j j!) (−tan²θ)^j`.
fn hyper_cos(p: i64, a: f64, b: f64, c: f64, theta: f64) -> f64 {
    let z = -theta.tan().powi(2);
    let mut total = 0.0;
    let mut term = 1.0;
    for j in 0..100 {
        if term == 0.0 {
            break;
        }
        total += term;
        let jf = f64::from(j);
        term *= (a + jf) * (b + jf) * z / ((c + jf) * (jf + 1.0));
    }
    theta.cos().powi(p as i32) * total
}

/// `φ_Y(ξ, θ)` as a complex number, built directly from the closed formulas.
fn phi_numeric(l: &KTypeLabel, xi: f64, theta: f64) -> (f64, f64) {
    let c = l.coords();
    match l.family() {
        GroupFamily::SO(n) => {
            let k = c[0] as f64;
            let nf = f64::from(n);
            (hyper_cos(c[0], -k / 2.0, (1.0 - k) / 2.0, (nf - 1.0) / 2.0, xi), 0.0)
        }
        GroupFamily::SU(n) => {
            let (p, qq) = (c[0], c[1]);
            let r = hyper_cos(p + qq, -(p as f64), -(qq as f64), f64::from(n) - 1.0, xi);
            let j = (p - qq) as f64;
            (r * (j * theta).cos(), r * (j * theta).sin())
        }
        GroupFamily::Sp(n) => {
            let (a, b) = (c[0], c[1]);
            let r = hyper_cos(a + b, -(b as f64), -((a + 1) as f64), 2.0 * f64::from(n) - 2.0, xi);
            let qq = (a - b) as f64;
            let az = ((qq + 1.0) * theta).sin() / theta.sin() / (qq + 1.0);
            (r * az, 0.0)
        }
        GroupFamily::F4 => {
            let (m, l) = (c[0] as f64, c[1] as f64);
            let r = hyper_cos(c[0], (l - m) / 2.0, (-m - l - 6.0) / 2.0, 4.0, xi);
            let chi = hyper_cos(c[1], -l / 2.0, (1.0 - l) / 2.0, 3.5, theta);
            (r * chi, 0.0)
        }
    }
}

fn omega_numeric(f: GroupFamily, xi: f64, theta: f64) -> f64 {
    match f {
        GroupFamily::SO(_) => xi.cos(),
        _ => xi.cos() * theta.cos(),
    }
}

/// `C_k^α` as an exact polynomial in `x` via the three-term recurrence.
fn gegenbauer(k: i64, alpha: &Q) -> Poly {
    let two_x = Poly::new(vec![Q::zero(), q(2)]);
    let mut prev = Poly::constant(q(1));
    if k == 0 {
        return prev;
    }
    let mut cur = two_x.scale(alpha);
    for j in 2..=k {
        let jq = q(j);
        let next = two_x
            .mul(&cur)
            .scale(&((&jq + alpha - q(1)) / &jq))
            .sub(&prev.scale(&((&jq + alpha * q(2) - q(2)) / &jq)));
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn phi_examples() {
    let so = phi(&label(GroupFamily::SO(3), &[0])).unwrap();
    assert_eq!(so.radial.coeffs(), vec![q(1)]);
    assert_eq!(so.radial_cos_power, 0);
    let y1 = phi(&label(GroupFamily::SO(6), &[1])).unwrap();
    assert_eq!(y1.radial.coeffs(), vec![q(1)]);
    assert_eq!(y1.radial_cos_power, 1);
    let su = phi(&label(GroupFamily::SU(2), &[1, 0])).unwrap();
    assert_eq!(su.azimuthal, Azimuthal::Exponential(1));
    assert_eq!(su.radial_cos_power, 1);
    assert_eq!(su.radial.coeffs(), vec![q(1)]);
    let sp = phi(&label(GroupFamily::Sp(2), &[1, 0])).unwrap();
    assert_eq!(sp.azimuthal, Azimuthal::Chebyshev { q: 1, scale: qf(1, 2) });
    assert_eq!(sp.radial_cos_power, 1);
    assert_eq!(sp.radial.poly().coeffs(), &[q(1)]);
    let f4 = phi(&label(GroupFamily::F4, &[1, 1])).unwrap();
    assert_eq!(f4.radial_cos_power, 1);
    assert!(matches!(f4.azimuthal, Azimuthal::Gegenbauer(ref c) if c.cos_power == 1));
}

#[test]
fn phi_is_one_at_base() {
    for f in families() {
        for l in enumerate_labels(f, 10) {
            assert_eq!(phi(&l).unwrap().value_at_base(), q(1), "{l}");
        }
    }
}

#[test]
fn chebyshev_matches_trig() {
    for qi in 0..=8 {
        let u = chebyshev_u(qi);
        for t in [0.3f64, 0.9, 1.7] {
            let want = ((qi + 1) as f64 * t).sin() / t.sin();
            assert!((u.eval_f64(t.cos()) - want).abs() < 1e-10);
        }
    }
}

#[test]
fn zonal_functions_are_normalised_gegenbauer() {
    for n in 3..=8u32 {
        let alpha = qf(i64::from(n) - 2, 2);
        for k in 0..=10 {
            let spec = phi(&label(GroupFamily::SO(n), &[k])).unwrap();
            let got = spec.radial_factor().to_cos_poly().unwrap();
            let c = gegenbauer(k, &alpha);
            let want = c.scale(&(Q::one() / c.eval(&Q::one())));
            assert_eq!(got, want, "SO({n},1) k={k}");
        }
    }
}

#[test]
fn phi_matches_closed_forms_numerically() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in families() {
        for l in enumerate_labels(f, 8) {
            let spec = phi(&l).unwrap();
            for _ in 0..4 {
                let xi: f64 = rng.random_range(0.05..1.3);
                let th: f64 = rng.random_range(0.05..1.3);
                let radial = spec.radial_factor().eval_f64(xi);
                let az = match &spec.azimuthal {
                    Azimuthal::None => (1.0, 0.0),
                    Azimuthal::Exponential(j) => ((*j as f64 * th).cos(), (*j as f64 * th).sin()),
                    Azimuthal::Chebyshev { q: qi, scale } => {
                        (rankone::rational::to_f64(scale) * chebyshev_u(*qi).eval_f64(th.cos()), 0.0)
                    }
                    Azimuthal::Gegenbauer(chi) => (chi.eval_f64(th), 0.0),
                };
                let want = phi_numeric(&l, xi, th);
                let scale = 1.0 + want.0.abs() + want.1.abs();
                assert!((radial * az.0 - want.0).abs() < 1e-9 * scale, "{l}");
                assert!((radial * az.1 - want.1).abs() < 1e-9 * scale, "{l}");
            }
        }
    }
}

#[test]
fn omega_expand_examples() {
    let row = omega_h_expand(&label(GroupFamily::SO(3), &[0])).unwrap();
    assert_eq!(row.terms, vec![(label(GroupFamily::SO(3), &[1]), q(1))]);
    let row = omega_h_expand(&label(GroupFamily::SO(5), &[2])).unwrap();
    assert_eq!(row.coeff(&label(GroupFamily::SO(5), &[3])), qf(5, 7));
    assert_eq!(row.coeff(&label(GroupFamily::SO(5), &[1])), qf(2, 7));
    let row = omega_h_expand(&label(GroupFamily::SU(3), &[0, 0])).unwrap();
    assert_eq!(row.terms.len(), 2);
    assert_eq!(row.coeff(&label(GroupFamily::SU(3), &[1, 0])), qf(1, 2));
    assert_eq!(row.coeff(&label(GroupFamily::SU(3), &[0, 1])), qf(1, 2));
    let row = omega_h_expand(&label(GroupFamily::Sp(2), &[0, 0])).unwrap();
    assert_eq!(row.terms, vec![(label(GroupFamily::Sp(2), &[1, 0]), q(1))]);
    let row = omega_h_expand(&label(GroupFamily::F4, &[0, 0])).unwrap();
    assert_eq!(row.terms, vec![(label(GroupFamily::F4, &[1, 1]), q(1))]);
    let row = omega_h_expand(&label(GroupFamily::SU(3), &[2, 1])).unwrap();
    assert_eq!(row.coeff(&label(GroupFamily::SU(3), &[3, 1])), qf(4, 10));
    assert_eq!(row.coeff(&label(GroupFamily::SU(3), &[2, 0])), qf(1, 10));
    assert_eq!(row.coeff(&label(GroupFamily::SU(3), &[2, 2])), qf(3, 10));
    assert_eq!(row.coeff(&label(GroupFamily::SU(3), &[1, 1])), qf(2, 10));
}

#[test]
fn omega_candidates_keep_zero_entries() {
    let c = omega_candidates(&label(GroupFamily::Sp(2), &[0, 0])).unwrap();
    assert_eq!(c.len(), 4);
    assert_eq!(c.iter().filter(|(_, v)| v.is_zero()).count(), 3);
}

#[test]
fn recurrence_holds_numerically() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for f in families() {
        for v in enumerate_labels(f, 8) {
            let row = omega_h_expand(&v).unwrap();
            for _ in 0..3 {
                let xi: f64 = rng.random_range(0.05..1.3);
                let th: f64 = rng.random_range(0.05..1.3);
                let w = omega_numeric(f, xi, th);
                let lhs = phi_numeric(&v, xi, th);
                let lhs = (w * lhs.0, w * lhs.1);
                let rhs = row.terms.iter().fold((0.0, 0.0), |acc, (t, c)| {
                    let c = rankone::rational::to_f64(c);
                    let p = phi_numeric(t, xi, th);
                    (acc.0 + c * p.0, acc.1 + c * p.1)
                });
                assert!((lhs.0 - rhs.0).abs() < 1e-9, "{v} at ({xi},{th})");
                assert!((lhs.1 - rhs.1).abs() < 1e-9, "{v} at ({xi},{th})");
            }
        }
    }
}

#[test]
fn omega_identity_examples() {
    for l in [
        label(GroupFamily::SO(5), &[3]),
        label(GroupFamily::SU(3), &[2, 1]),
        label(GroupFamily::Sp(2), &[3, 1]),
        label(GroupFamily::F4, &[3, 1]),
    ] {
        let r = verify_omega_identity(&l).unwrap();
        assert!(r.recurrence, "{l}");
        assert!(r.ingredients.iter().all(|i| i.holds), "{l}");
        assert!(r.holds());
    }
}

#[test]
fn omega_identity_sweep() {
    for f in families() {
        for l in enumerate_labels(f, 10) {
            assert!(verify_omega_identity(&l).unwrap().holds(), "{l}");
        }
    }
}

#[test]
fn lambda_invariants() {
    for f in families() {
        for v in enumerate_labels(f, 10) {
            let row = omega_h_expand(&v).unwrap();
            let sum = row.terms.iter().fold(Q::zero(), |acc, (_, c)| acc + c);
            assert_eq!(sum, q(1), "{v}");
            for (w, lam) in &row.terms {
                assert!(lam.is_positive(), "{v}->{w}");
                let back = lambda_scalar(w, &v).unwrap();
                assert_eq!(
                    lam * Q::from_integer(label_dim(&v)),
                    back * Q::from_integer(label_dim(w)),
                    "{v}<->{w}"
                );
            }
        }
    }
}

#[test]
fn relatedness_matches_tensor_adjacency() {
    for f in families() {
        let labels = enumerate_labels(f, 8);
        for v in &labels {
            let summands: BTreeSet<_> = racah_speiser(v).unwrap().weights().into_iter().collect();
            for w in &labels {
                if matches!(f, GroupFamily::SO(3)) && v == w {
                    // `Y_k` occurs in `Y_k ⊗ p` for this group but has `λ = 0`.
                    continue;
                }
                let related = !lambda_scalar(v, w).unwrap().is_zero();
                assert_eq!(related, summands.contains(&highest_weight(w)), "{v} {w}");
            }
        }
    }
}

#[test]
fn f4_lowering_needs_plus_six() {
    assert!(f4_lower_with(1, 1, 1 + 1 + 6).unwrap());
    assert!(!f4_lower_with(1, 1, 1 + 1 - 6).unwrap());
}

#[test]
fn lambda_rejects_mixed_families() {
    let a = label(GroupFamily::SO(5), &[1]);
    let b = label(GroupFamily::SU(2), &[1, 0]);
    assert!(lambda_scalar(&a, &b).is_err());
}

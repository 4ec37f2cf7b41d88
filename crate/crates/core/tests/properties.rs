use num_complex::Complex64 as C64;
use proptest::prelude::*;

use cms_core::actionangle::action_angle_map;
use cms_core::dynamics::{integrate, Hamiltonian};
use cms_core::lax::{nonrel_lax, scattering_data};
use cms_core::polyring::{monomial_symmetric, partitions, rat, vandermonde, GaussRat, MultiPoly};
use cms_core::relativistic::{cauchy_determinant, cauchy_product};
use cms_core::{ModelSpec, PhaseState};

const NV: usize = 3;

fn coeff() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(p, q, im)| GaussRat::new(rat(p, q), rat(im, q + 1)))
}

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, NV), coeff()), 0..=max_terms).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(NV), |acc, (e, c)| &acc + &MultiPoly::term(NV, e, c))
    })
}

fn symmetric_poly() -> impl Strategy<Value = MultiPoly> {
    let parts: Vec<Vec<u32>> = (0..=4).flat_map(|w| partitions(w, NV)).map(|p| p.parts().to_vec()).collect();
    prop::collection::vec((prop::sample::select(parts), coeff()), 1..=4).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(NV), |acc, (lambda, c)| {
            &acc + &monomial_symmetric(NV, &lambda).expect("valid partition").scale(&c)
        })
    })
}

/// Decreasing positions with gaps in `[0.8, 2]` and bounded momenta.
fn cone_state(n: usize) -> impl Strategy<Value = PhaseState> {
    (prop::collection::vec(0.8f64..2.0, n), prop::collection::vec(-1.0f64..1.0, n)).prop_map(|(gaps, p)| {
        let mut x = Vec::with_capacity(gaps.len());
        let mut cur = 0.0;
        for gap in gaps {
            x.push(cur);
            cur -= gap;
        }
        PhaseState::new(x, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly(4, 3), b in poly(4, 3), c in poly(3, 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a + &b) - &b - &a).is_zero());
    }

    #[test]
    fn vandermonde_division_is_exact(p in poly(5, 3)) {
        let d = vandermonde(NV, NV);
        prop_assert_eq!((&d * &p).divide_by_vandermonde(NV).unwrap(), p);
    }

    #[test]
    fn symmetric_gradient_differences_divide(p in symmetric_poly()) {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let diff = &p.derive(i) - &p.derive(j);
            let q = diff.divide_linear(i, j).unwrap();
            prop_assert_eq!(&q * &MultiPoly::difference(NV, i, j), diff);
        }
    }

    #[test]
    fn cauchy_identity(re in prop::collection::vec(-2.0f64..2.0, 8), im in prop::collection::vec(-2.0f64..2.0, 8),
                       n in 1usize..=4) {
        let z: Vec<C64> = (0..n).map(|k| C64::new(re[k] + 3.0 * k as f64, im[k])).collect();
        let w: Vec<C64> = (0..n).map(|k| C64::new(re[4 + k] + 3.0 * k as f64 + 0.5, im[4 + k] + 0.3)).collect();
        let det = cauchy_determinant(&z, &w);
        let prod = cauchy_product(&z, &w);
        prop_assert!((det - prod).norm() <= 1e-12 * prod.norm().max(1.0), "{} vs {}", det, prod);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn time_reversal_and_ordering(s in cone_state(3), kind in 0usize..3) {
        let spec = [
            ModelSpec::rational(3, 0.7, 1.0),
            ModelSpec::hyperbolic(3, 0.7, 1.0, 1.0),
            ModelSpec::trigonometric(3, 0.7, 1.0, 0.8),
        ][kind].clone();
        let ham = Hamiltonian::new(&spec, false).unwrap();
        let fwd = integrate(&s, &ham, 3.0, 1e-11).unwrap();
        prop_assert!(fwd.states.iter().all(|st| st.x.windows(2).all(|w| w[0] > w[1])));
        let back = integrate(&fwd.last().unwrap().flip_momenta(), &ham, 3.0, 1e-11).unwrap();
        let end = back.last().unwrap();
        for k in 0..3 {
            prop_assert!((end.x[k] - s.x[k]).abs() < 1e-6);
            prop_assert!((end.p[k] + s.p[k]).abs() < 1e-6);
        }
    }

    #[test]
    fn isospectral_rational_flow(s in cone_state(3)) {
        let spec = ModelSpec::rational(3, 0.9, 1.2);
        let ham = Hamiltonian::new(&spec, false).unwrap();
        let traj = integrate(&s, &ham, 5.0, 1e-11).unwrap();
        let e0 = nonrel_lax(&s, &spec).unwrap().eigenvalues();
        for st in traj.states.iter().step_by(5) {
            let e = nonrel_lax(st, &spec).unwrap().eigenvalues();
            for (a, b) in e.iter().zip(&e0) {
                prop_assert!((a - b).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn action_variables_are_asymptotic_momenta(s in cone_state(4), g in 0.3f64..2.0) {
        let spec = ModelSpec::rational(4, g, 1.0);
        let aa = action_angle_map(&s, g).unwrap();
        let eig = nonrel_lax(&s, &spec).unwrap().eigenvalues();
        for (a, b) in aa.p_tilde.iter().zip(&eig) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        prop_assert_eq!(aa.p_tilde, scattering_data(&s, &spec).unwrap().p_out);
    }
}

use eqml::curve::{count_critical_points_variety, PlaneCurve};
use eqml::engine::{build_critical_system, count_nonzero_roots, eliminate, solve_critical_numeric, ObservationCounts};
use eqml::model::{build_model, build_parameterization, chain_parameterization, fiber_degree, EquilibriumModel};
use eqml::numeric::mle::{likelihood_value, maximize_likelihood};
use eqml::numeric::Tolerances;
use eqml::poly::{Binding, MPoly};
use eqml::reaction::parse_reaction;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn model(r: &str, ke: &str) -> EquilibriumModel {
    build_model(&parse_reaction(r).unwrap(), &ke.parse().unwrap()).unwrap()
}

fn supported_reaction() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u32..=4, 1u32..=4).prop_map(|(a, b)| format!("{a}A <-> {b}B")),
        (1u32..=3, 1u32..=3, 1u32..=3).prop_map(|(n, m, p)| format!("{n}A + {m}B <-> {p}C")),
        (2usize..=4).prop_map(|n| {
            let l: Vec<String> = (1..=n).map(|i| format!("A{i}")).collect();
            let r: Vec<String> = (1..=n).map(|i| format!("B{i}")).collect();
            format!("{} <-> {}", l.join(" + "), r.join(" + "))
        }),
    ]
}

fn ke() -> impl Strategy<Value = String> {
    prop_oneof![Just("generic".to_string()), (1i64..20, 1i64..5).prop_map(|(p, q)| format!("{p}/{q}"))]
}

fn numeric_count(m: &EquilibriumModel, u: &[u64]) -> u64 {
    let map = match build_parameterization(m).unwrap() {
        Some(map) => map,
        None => chain_parameterization(m).unwrap().unwrap(),
    };
    let cs = build_critical_system(&map, &ObservationCounts::Numeric(u.to_vec())).unwrap();
    let e = eliminate(&cs).unwrap();
    count_nonzero_roots(&e, cs.surviving_var()).unwrap().count
}

fn small_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parameterization_composes_to_zero(r in supported_reaction(), k in ke()) {
        let m = model(&r, &k);
        if let Some(map) = build_parameterization(&m).unwrap() {
            prop_assert!(map.composition_check(&m).unwrap(), "{}", map);
        }
    }

    #[test]
    fn homogenization_agrees_on_simplex(r in supported_reaction(), xs in prop::collection::vec((1i64..9, 1i64..9), 8)) {
        let m = model(&r, "3");
        let n = m.species_count();
        let vars: Vec<&str> = m.species_vars.iter().map(|s| s.as_str()).collect();
        prop_assert!(m.f_hom.is_homogeneous_in(&vars).unwrap());
        // a rational point with coordinates summing to 1
        let mut coords: Vec<BigRational> = xs[..n - 1].iter().map(|&(a, b)| small_ratio(a, 7 * b)).collect();
        let rest = coords.iter().fold(small_ratio(1, 1), |acc, c| acc - c);
        coords.push(rest);
        let binds: Vec<(&str, Binding)> = vars.iter().zip(&coords).map(|(v, c)| (*v, Binding::Value(c.clone()))).collect();
        prop_assert_eq!(m.f_hom.substitute(&binds).unwrap(), m.f_affine.substitute(&binds).unwrap());
    }

    #[test]
    fn counts_invariant_under_scaling(r in supported_reaction(), base in prop::collection::vec(1u64..30, 8), c in 2u64..9) {
        let m = model(&r, "2");
        let n = m.species_count();
        let u = &base[..n];
        let scaled: Vec<u64> = u.iter().map(|x| x * c).collect();
        prop_assert_eq!(numeric_count(&m, u), numeric_count(&m, &scaled));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fiber_orbits_have_fiber_degree_size(
        (r, k) in prop_oneof![Just(("A + B <-> 2C", "7")), Just(("A + B <-> 3C", "1")), Just(("2A + 2B <-> C", "1"))],
        u in prop::collection::vec(1u64..40, 3),
    ) {
        let m = model(r, k);
        let fd = fiber_degree(&build_parameterization(&m).unwrap().unwrap()).unwrap() as usize;
        let pts = solve_critical_numeric(&m, &u, &Tolerances::default()).unwrap();
        let mut orbits: Vec<(Vec<Complex64>, usize)> = Vec::new();
        for p in &pts {
            match orbits.iter_mut().find(|(img, _)| img.iter().zip(&p.species).all(|(a, b)| (a - b).norm() < 1e-7)) {
                Some(o) => o.1 += 1,
                None => orbits.push((p.species.clone(), 1)),
            }
        }
        prop_assert!(!orbits.is_empty());
        for (_, size) in &orbits {
            prop_assert_eq!(*size, fd);
        }
    }

    #[test]
    fn bezout_ceiling(p in 1i64..40, q in 1i64..6, u in prop::collection::vec(1u64..50, 3)) {
        let m = model("A + B <-> 2C", &format!("{p}/{q}"));
        let (c, _) = PlaneCurve::from_model(&m, 1).unwrap();
        let d = c.degree as usize;
        match count_critical_points_variety(&c, &u, &Tolerances::default()) {
            Ok(vc) => prop_assert!(vc.count <= d * (d + 1)),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn mle_beats_model_points(u in prop::collection::vec(1u64..60, 3), thetas in prop::collection::vec(0.001f64..0.999, 20)) {
        let m = model("A + B <-> 2C", "4");
        let res = maximize_likelihood(&m, &u, &Tolerances::default()).unwrap();
        let best = res.log_likelihood;
        for th in thetas {
            let p = [th * th, (1.0 - th) * (1.0 - th), 2.0 * th * (1.0 - th)];
            prop_assert!(likelihood_value(&p, &u).unwrap() <= best + 1e-12);
        }
        for cp in &res.all_critical_points {
            let x = cp.real();
            if x.iter().all(|&v| v > 0.0) {
                prop_assert!(likelihood_value(&x, &u).unwrap() <= best + 1e-12);
            }
        }
    }

    #[test]
    fn mle_invariant_under_scaling(
        (r, k) in prop_oneof![Just(("A <-> B", "3")), Just(("2A <-> 3B", "1")), Just(("A + B <-> 3C", "1"))],
        base in prop::collection::vec(1u64..30, 3),
        c in 2u64..20,
    ) {
        let m = model(r, k);
        let u = &base[..m.species_count()];
        let scaled: Vec<u64> = u.iter().map(|x| x * c).collect();
        let a = maximize_likelihood(&m, u, &Tolerances::default()).unwrap().optimum.real();
        let b = maximize_likelihood(&m, &scaled, &Tolerances::default()).unwrap().optimum.real();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn symbolic_eliminant_is_homogeneous_in_counts_and_lambda() {
    for r in ["A + B <-> 2C", "2A + 2B <-> C", "2A <-> 3B"] {
        let m = model(r, "1");
        let map = build_parameterization(&m).unwrap().unwrap();
        let cs = build_critical_system(&map, &ObservationCounts::Symbolic(m.species_count())).unwrap();
        let e = eliminate(&cs).unwrap();
        let ctx = e.ctx().clone();
        let mut names: Vec<String> = (0..m.species_count()).map(|i| format!("u{i}")).collect();
        names.push("lambda".to_string());
        let five = MPoly::int(&ctx, 5);
        let binds: Vec<(&str, Binding)> = names
            .iter()
            .map(|v| (v.as_str(), Binding::Poly(&five * &MPoly::var(&ctx, v).unwrap())))
            .collect();
        assert!(e.substitute(&binds).unwrap().equal_up_to_scalar(&e), "{r}");
    }
}

use logsum::function::FunctionSpec;
use logsum::scalar_ineq::{generalized_log_sum_gap, q_log_sum_sides, reverse_log_sum_gap, SequencePair};
use proptest::prelude::*;

fn entries(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6f64..=10.0, n)
}

fn pair() -> impl Strategy<Value = SequencePair> {
    (1usize..=16)
        .prop_flat_map(|n| (entries(n), entries(n)))
        .prop_map(|(a, b)| SequencePair::new(a, b).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

proptest! {
    #[test]
    fn jensen_consistency(p in pair(), q in -1.0f64..1.99, use_log in prop::bool::ANY) {
        let f = if use_log { FunctionSpec::log() } else { FunctionSpec::q_log(q) };
        let v = generalized_log_sum_gap(&f, &FunctionSpec::identity(), &p).unwrap();
        prop_assert!(v.holds, "{v:?}");
    }

    #[test]
    fn equality_for_proportional_sequences(b in (1usize..=16).prop_flat_map(entries), c in 0.01f64..100.0) {
        let a = b.iter().map(|x| c * x).collect();
        let v = generalized_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), &SequencePair::new(a, b).unwrap()).unwrap();
        prop_assert!(v.gap.abs() <= 1e-9 * v.scale());
    }

    #[test]
    fn reduces_to_standard_log_sum(p in pair()) {
        let v = generalized_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), &p).unwrap();
        let (a, b) = (p.a(), p.b());
        let lhs: f64 = a.iter().zip(b).map(|(x, y)| x * (x / y).ln()).sum();
        let (sa, sb): (f64, f64) = (a.iter().sum(), b.iter().sum());
        let scale = a.iter().zip(b).map(|(x, y)| (x * (x / y).ln()).abs()).sum::<f64>().max(1.0);
        prop_assert!((v.lhs - lhs).abs() <= 1e-12 * scale);
        prop_assert!(rel(v.rhs, sa * (sa / sb).ln()) <= 1e-12);
    }

    #[test]
    fn power_log_identity(p in pair(), r in 0.1f64..3.0) {
        let v = generalized_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::power(r), &p).unwrap();
        let terms: Vec<f64> = p.a().iter().zip(p.b()).map(|(x, y)| r * x.powf(r) * (x.ln() - y.ln())).collect();
        let scale = terms.iter().map(|t| t.abs()).sum::<f64>().max(1.0);
        prop_assert!((v.lhs - terms.iter().sum::<f64>()).abs() <= 1e-12 * scale);
    }

    #[test]
    fn direction_flips_at_two(p in pair()) {
        for q in [0.0, 0.5, 1.5, 2.5, 3.0] {
            let (lhs, rhs) = q_log_sum_sides(&p, q, 1.0).unwrap();
            let tol = 1e-9 * 1f64.max(lhs.abs()).max(rhs.abs());
            if q < 2.0 {
                prop_assert!(lhs - rhs >= -tol, "q = {q}: {lhs} < {rhs}");
            } else {
                prop_assert!(lhs - rhs <= tol, "q = {q}: {lhs} > {rhs}");
            }
        }
    }

    #[test]
    fn reverse_form_holds(p in pair(), r in 0.05f64..0.95) {
        let v = reverse_log_sum_gap(&FunctionSpec::power(r), &FunctionSpec::identity(), &p).unwrap();
        prop_assert!(v.holds, "{v:?}");
    }
}

use proptest::prelude::*;

use gini_refine::distributions::{divergence, validate, Distribution};
use gini_refine::kernels::{
    eval_combination, eval_kernel, gini_mean, lehmer_mean, power_mean, DivKernel, KernelKind, NamedMean,
    PositivePair,
};
use gini_refine::registry::{all_statements, Level};

fn positive() -> impl Strategy<Value = f64> {
    (-6.0f64..6.0).prop_map(|e| 10f64.powf(e))
}

fn param() -> impl Strategy<Value = f64> {
    -12.0f64..12.0
}

fn mean() -> impl Strategy<Value = KernelKind> {
    prop_oneof![
        prop::sample::select(NamedMean::ALL.to_vec()).prop_map(KernelKind::from),
        (param(), param()).prop_map(|(r, s)| KernelKind::Gini { r, s }),
        param().prop_map(|r| KernelKind::Power { r }),
        param().prop_map(|r| KernelKind::Lehmer { r }),
    ]
}

fn kernel() -> impl Strategy<Value = KernelKind> {
    prop_oneof![
        4 => mean(),
        1 => prop::sample::select(vec![DivKernel::I, DivKernel::J, DivKernel::T, DivKernel::Delta, DivKernel::Hellinger])
            .prop_map(KernelKind::from),
    ]
}

fn distribution() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, 2..=10).prop_map(|w| {
        let s: f64 = w.iter().sum();
        w.iter().map(|v| v / s).collect()
    })
}

fn pair(a: f64, b: f64) -> PositivePair {
    PositivePair::new(a, b).unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn symmetric_and_homogeneous(k in kernel(), a in positive(), b in positive(), lambda in positive()) {
        let v = eval_kernel(&k, pair(a, b)).unwrap();
        prop_assert!(rel_close(v, eval_kernel(&k, pair(b, a)).unwrap(), 1e-13));
        let scaled = eval_kernel(&k, pair(lambda * a, lambda * b)).unwrap();
        // rounding lambda * a and lambda * b moves a divergence near the diagonal by
        // about 4 / |ln(a/b)| ulps; a mean moves by at most one
        let cond = if k.is_mean() { 1.0 } else { 1.0 + 4.0 / (a / b).ln().abs() };
        let tol = 1e-12 + 8.0 * f64::EPSILON * cond;
        prop_assert!(rel_close(scaled, lambda * v, tol), "{k}: {scaled} vs {}", lambda * v);
    }

    #[test]
    fn means_are_internal(k in mean(), a in positive(), b in positive()) {
        let v = eval_kernel(&k, pair(a, b)).unwrap();
        prop_assert!(v >= a.min(b) && v <= a.max(b), "{k}({a}, {b}) = {v}");
    }

    #[test]
    fn divergence_kernels_are_nonnegative_and_zero_on_the_diagonal(a in positive(), b in positive()) {
        for d in [DivKernel::I, DivKernel::J, DivKernel::T, DivKernel::Delta, DivKernel::Hellinger] {
            let v = eval_kernel(&d.into(), pair(a, b)).unwrap();
            prop_assert!(v >= 0.0);
            prop_assert_eq!(eval_kernel(&d.into(), pair(a, a)).unwrap(), 0.0);
        }
    }

    #[test]
    fn gini_is_monotone_in_each_parameter(r in param(), dr in 0.0f64..6.0, s in param(), a in positive(), b in positive()) {
        let p = pair(a, b);
        let lo = gini_mean(r, s, p).unwrap();
        let hi = gini_mean(r + dr, s, p).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-13));
        prop_assert!(rel_close(lo, gini_mean(s, r, p).unwrap(), 1e-13));
    }

    #[test]
    fn the_refinement_chain_holds(a in positive(), b in positive()) {
        use NamedMean::*;
        let v = |m: NamedMean| eval_kernel(&m.into(), pair(a, b)).unwrap();
        let slack = 1e-13 * a.max(b);
        let chain = [P1, P2, P3, H, P4, G, N1, N3, N2, A];
        for w in chain.windows(2) {
            prop_assert!(v(w[0]) <= v(w[1]) + slack, "{} > {}", w[0].name(), w[1].name());
        }
        for mid in [P5, S] {
            prop_assert!(v(A) <= v(mid) + slack && v(mid) <= v(P6) + slack);
        }
    }

    #[test]
    fn power_and_lehmer_cross_at_one(r in -8.0f64..8.0, a in positive(), b in positive()) {
        let p = pair(a, b);
        let gap = lehmer_mean(r, p).unwrap() - power_mean(r, p).unwrap();
        // K_r >= B_r for r >= 1, and the reverse for r <= 1
        prop_assert!(gap * (r - 1.0) >= -1e-12 * a.max(b) * (r - 1.0).abs());
    }

    #[test]
    fn gap_inversion(idx in 0usize..300, x in positive()) {
        let kernel_level: Vec<_> = all_statements().iter().filter(|s| s.level == Level::Kernel).collect();
        let stmt = kernel_level[idx % kernel_level.len()];
        let c = stmt.combination();
        let g = eval_combination(c, pair(x, 1.0)).unwrap();
        let gi = eval_combination(c, pair(1.0 / x, 1.0)).unwrap();
        let mass: f64 = c.float_terms().iter().map(|(c, _)| c.abs()).sum();
        prop_assert!((gi - g / x).abs() <= 1e-12 * mass * (1.0 + 1.0 / x), "{}", stmt.id);
    }

    #[test]
    fn distribution_divergences_are_nonnegative_and_symmetric(p in distribution(), q in distribution()) {
        let n = p.len().min(q.len());
        let renorm = |v: &[f64]| {
            let s: f64 = v[..n].iter().sum();
            v[..n].iter().map(|x| x / s).collect::<Vec<_>>()
        };
        let (p, q): (Distribution, Distribution) = (validate(&renorm(&p)).unwrap(), validate(&renorm(&q)).unwrap());
        for d in [DivKernel::I, DivKernel::J, DivKernel::T, DivKernel::Delta, DivKernel::Hellinger] {
            let k = KernelKind::from(d);
            let pq = divergence(&k, &p, &q).unwrap();
            prop_assert!(pq >= 0.0);
            prop_assert!(rel_close(pq, divergence(&k, &q, &p).unwrap(), 1e-12) || pq < 1e-15);
        }
    }
}

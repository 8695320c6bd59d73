use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use gini_refine::algebra::{Monomial, RadicalExpression, RationalPolynomial};
use gini_refine::certify::{builtin_certificates, check_registered, Certificate, Step, Verdict};

fn certificate(idx: usize) -> Certificate {
    static ALL: std::sync::OnceLock<Vec<Certificate>> = std::sync::OnceLock::new();
    ALL.get_or_init(builtin_certificates)[idx].clone()
}

/// Every radical-expression payload of a step, in order.
fn payloads(step: &mut Step) -> Vec<&mut RadicalExpression> {
    match step {
        Step::SplitSquare { s, t, .. } => vec![s, t],
        Step::UnitRootFactor { cofactor, .. } => vec![cofactor],
        _ => Vec::new(),
    }
}

fn bump(e: &mut RadicalExpression, pick: usize, delta: i64) {
    let support = e.support();
    let m: Monomial = support[pick % support.len()];
    let mut coeffs = e.part(m).coeffs().to_vec();
    let k = (pick / support.len()) % coeffs.len();
    coeffs[k] += BigRational::from_integer(delta.into());
    e.set_part(m, RationalPolynomial::new(coeffs));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn any_payload_tamper_is_caught(cert_idx in 0usize..43, step_pick in 0usize..64, pick in 0usize..4096, delta in prop_oneof![Just(-1i64), Just(1i64), 2i64..50]) {
        let mut cert = certificate(cert_idx);
        let n = cert.steps.len();
        let mut touched = None;
        for offset in 0..n {
            let i = (step_pick + offset) % n;
            let mut ps = payloads(&mut cert.steps[i]);
            if !ps.is_empty() {
                let len = ps.len();
                bump(ps.swap_remove(pick % len), pick / len, delta);
                touched = Some(i);
                break;
            }
        }
        prop_assume!(touched.is_some());
        let result = check_registered(&cert);
        prop_assert!(matches!(result.verdict, Verdict::Failed { .. }), "{} step {:?}", cert.statement_id, touched);
    }

    #[test]
    fn scale_tamper_is_caught(cert_idx in 0usize..43, num in 1i64..20, den in 1i64..20) {
        prop_assume!(num != den);
        let mut cert = certificate(cert_idx);
        cert.scale *= BigRational::new(num.into(), den.into());
        prop_assert!(!check_registered(&cert).proved());
    }
}

#[test]
fn positive_at_one_values_are_binding() {
    for mut cert in builtin_certificates() {
        let Some(Step::PositiveAtOne { value: Some(v) }) = cert.steps.last_mut() else { continue };
        *v += BigRational::one();
        assert!(!check_registered(&cert).proved(), "{}", cert.statement_id);
    }
}

#[test]
fn dropping_the_terminal_witness_leaves_the_script_incomplete() {
    for mut cert in builtin_certificates() {
        cert.steps.pop();
        let result = check_registered(&cert);
        assert!(!result.proved(), "{}", cert.statement_id);
    }
}

//! Exact expansion of mean combinations in the variable `t = sqrt(x)`.

use num_traits::Signed;

use super::poly::{lcm, RationalPolynomial};
use super::radical::{Monomial, RadicalExpression};
use super::AlgebraError;
use crate::kernels::{Combination, KernelKind, NamedMean};

fn p(c: &[i64]) -> RationalPolynomial {
    RationalPolynomial::from_ints(c)
}

/// Profile `M(t^2, 1)` as `numerator / denominator` with a positive
/// polynomial denominator.
pub fn mean_profile(m: NamedMean) -> (RadicalExpression, RationalPolynomial) {
    use NamedMean::*;
    let t2 = p(&[0, 0, 1]);
    let poly = |n: RationalPolynomial, d: RationalPolynomial| (RadicalExpression::from(n), d);
    match m {
        P1 => poly(&t2 * &p(&[1, 0, 0, 0, 1]), p(&[1, 0, 0, 0, 0, 0, 1])),
        P2 => poly(&t2 * &p(&[1, 0, 1]), p(&[1, 0, 0, 0, 1])),
        P3 => poly(&t2 * &p(&[1, 1]), p(&[1, 0, 0, 1])),
        H => poly(p(&[0, 0, 2]), p(&[1, 0, 1])),
        P4 => poly(p(&[0, 0, 4]), p(&[1, 2, 1])),
        G => poly(p(&[0, 1]), p(&[1])),
        N1 => poly(p(&[1, 2, 1]), p(&[4])),
        N3 => poly(p(&[1, 1, 1]), p(&[3])),
        N2 => (RadicalExpression::term(p(&[1, 1]), Monomial::R2), p(&[4])),
        A => poly(p(&[1, 0, 1]), p(&[2])),
        P5 => poly(p(&[1, 0, 1]).pow(2), p(&[1, 2, 1])),
        S => (RadicalExpression::r1(), p(&[2])),
        P6 => poly(p(&[1, 0, 0, 0, 1]), p(&[1, 0, 1])),
    }
}

/// Maps a parametric kernel onto the named mean with the same Gini parameters.
pub fn resolve_named(kind: &KernelKind) -> Result<NamedMean, AlgebraError> {
    let (r, s) = match *kind {
        KernelKind::Named(m) => return Ok(m),
        KernelKind::Div(d) => return Err(AlgebraError::UnsupportedKernel(d.name().to_string())),
        KernelKind::Gini { r, s } => (r, s),
        KernelKind::Power { r } => (r, 0.0),
        KernelKind::Lehmer { r } => (r, r - 1.0),
    };
    NamedMean::ALL
        .into_iter()
        .find(|m| {
            m.gini_params()
                .is_some_and(|(a, b)| (a == r && b == s) || (a == s && b == r))
        })
        .ok_or_else(|| AlgebraError::UnsupportedParam(kind.to_string()))
}

/// Expands a mean-only combination at `(t^2, 1)` into
/// `numerator / denominator`. The denominator is the least common multiple
/// of the mean profiles' denominators and has nonnegative coefficients.
pub fn expand_combination(
    combo: &Combination,
) -> Result<(RadicalExpression, RationalPolynomial), AlgebraError> {
    let mut parts = Vec::with_capacity(combo.terms.len());
    for term in &combo.terms {
        let (num, den) = mean_profile(resolve_named(&term.kind)?);
        parts.push((term.coeff.clone(), num, den));
    }
    let den = parts
        .iter()
        .fold(RationalPolynomial::one(), |acc, (_, _, d)| lcm(&acc, d));
    let mut num = RadicalExpression::zero();
    for (c, n, d) in &parts {
        let cofactor = den.divide_exact(d)?;
        num = &num + &n.mul_poly(&cofactor).scale(c);
    }
    debug_assert!(den.leading().is_positive() && den.nonneg_coeffs());
    Ok((num, den))
}

/// The squaring step: from `S > 0` and `S^2 - T^2 >= 0` conclude `S >= T`.
///
/// Returns `S^2 - T^2`. The step must simplify: if `S - T` contains radicals,
/// the result has strictly fewer distinct radical monomials; if it is a
/// polynomial, the result has strictly fewer negative coefficients.
pub fn square_compare(
    s: &RadicalExpression,
    t: &RadicalExpression,
) -> Result<RadicalExpression, AlgebraError> {
    let diff = s - t;
    let out = &(s * s) - &(t * t);
    if diff.is_zero() || out.is_zero() {
        return Ok(out);
    }
    let progressed = match diff.as_polynomial() {
        Some(before) => out
            .as_polynomial()
            .is_some_and(|after| after.negative_coeff_count() < before.negative_coeff_count()),
        None => out.radical_monomial_count() < diff.radical_monomial_count(),
    };
    if progressed {
        Ok(out)
    } else {
        Err(AlgebraError::NoProgress)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{eval_combination, frac, int, DivKernel, PositivePair};
    use crate::algebra::poly::{factor_unit_root, unit_root_power};

    #[test]
    fn arithmetic_minus_geometric() {
        let combo = Combination::difference(NamedMean::A, NamedMean::G);
        let (num, den) = expand_combination(&combo).unwrap();
        assert_eq!(num, p(&[1, -2, 1]).into());
        assert_eq!(den, p(&[2]));
    }

    #[test]
    fn self_difference_vanishes() {
        let combo = Combination::new().with(int(1), NamedMean::A).with(int(-1), NamedMean::A);
        assert!(expand_combination(&combo).unwrap().0.is_zero());
    }

    #[test]
    fn unit_root_factor_in_p6_plus_3g_minus_4n1() {
        let combo = Combination::new()
            .with(int(1), NamedMean::P6)
            .with(int(3), NamedMean::G)
            .with(int(-4), NamedMean::N1);
        let (num, den) = expand_combination(&combo).unwrap();
        let poly = num.as_polynomial().unwrap().clone();
        let shape = &p(&[0, 1]) * &unit_root_power(2);
        assert!(poly.divide_exact(&shape).is_ok(), "{poly} / {den}");
        assert!(factor_unit_root(&poly, 2).is_ok());
    }

    #[test]
    fn rejects_divergences_and_unknown_parameters() {
        let div = Combination::new().with(int(1), DivKernel::I);
        assert!(matches!(expand_combination(&div), Err(AlgebraError::UnsupportedKernel(_))));
        let odd = Combination::new().with(int(1), KernelKind::Gini { r: 0.3, s: 0.7 });
        assert!(matches!(expand_combination(&odd), Err(AlgebraError::UnsupportedParam(_))));
        let lehmer = Combination::new()
            .with(int(1), KernelKind::Lehmer { r: 2.0 })
            .with(int(-1), NamedMean::P6);
        assert!(expand_combination(&lehmer).unwrap().0.is_zero());
    }

    #[test]
    fn lcm_denominator_is_shared() {
        // P1 and P2 denominators (t^6+1) and (t^4+1) share the factor t^2+1
        let combo = Combination::new()
            .with(int(12), NamedMean::P5)
            .with(int(13), NamedMean::P2)
            .with(int(-12), NamedMean::P1);
        let (_, den) = expand_combination(&combo).unwrap();
        assert_eq!(den, &(&p(&[1, 2, 1]) * &p(&[1, 0, 0, 0, 0, 0, 1])) * &p(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn expansion_matches_float_evaluation() {
        let combo = Combination::new()
            .with(frac(7, 4), NamedMean::S)
            .with(frac(21, 4), NamedMean::G)
            .with(int(-1), NamedMean::P6)
            .with(int(-6), NamedMean::P4)
            .with(frac(1, 3), NamedMean::N2);
        let (num, den) = expand_combination(&combo).unwrap();
        for k in 1..=200 {
            let t = k as f64 * 0.05;
            let exact = num.eval_f64(t) / den.eval_f64(t);
            let direct = eval_combination(&combo, PositivePair::new(t * t, 1.0).unwrap()).unwrap();
            let scale = 1.0 + t * t;
            assert!((exact - direct).abs() <= 1e-12 * scale, "t={t}: {exact} vs {direct}");
        }
    }

    #[test]
    fn squaring_removes_a_radical() {
        // S = 2(t^4+t^3+4t^2+t+1), T = R2 (t+1)^3
        let s: RadicalExpression = p(&[2, 2, 8, 2, 2]).into();
        let t = RadicalExpression::term(p(&[1, 3, 3, 1]), Monomial::R2);
        let out = square_compare(&s, &t).unwrap();
        let expected = &unit_root_power(4) * &p(&[2, 4, 8, 4, 2]);
        assert_eq!(out, expected.into());
        assert!(square_compare(&s, &s).unwrap().is_zero());
    }

    #[test]
    fn squaring_without_simplification_is_rejected() {
        let s = &RadicalExpression::r1() + &p(&[1]).into();
        let t = RadicalExpression::zero();
        assert!(matches!(square_compare(&s, &t), Err(AlgebraError::NoProgress)));
    }
}

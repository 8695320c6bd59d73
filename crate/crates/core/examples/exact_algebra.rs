//! Exact algebra in t = sqrt(x): expand a mean inequality into radicals,
//! square away the radical, factor out (t - 1)^k and count roots with Sturm
//! sequences.
//!
//!     cargo run --example exact_algebra

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use gini_refine::algebra::{
    expand_combination, Monomial, RadicalExpression, factor_unit_root, isolate_roots, parse_radical, radical_to_text, square_compare,
    sturm_count, Interval, RationalPolynomial,
};
use gini_refine::registry::linear_form;

/// `e` times the lcm of its coefficient denominators; the text form is integral.
fn cleared(e: &RadicalExpression) -> RadicalExpression {
    let mut l = num_bigint::BigInt::one();
    for m in Monomial::ALL {
        for c in e.part(m).coeffs() {
            l = l.lcm(c.denom());
        }
    }
    e.scale(&BigRational::from_integer(l))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // S <= (P6 + A)/2 has one radical, from S
    let combo = linear_form("(P6 + A)/2 - S")?;
    let (num, den) = expand_combination(&combo)?;
    // both sides cleared of denominators by the same positive constant
    println!("numerator:   {}", radical_to_text(&cleared(&num))?);
    println!("denominator: {}", radical_to_text(&cleared(&den.clone().into()))?);

    // the squaring step of thm21.p20: S = 2(t^4 + t^3 + 4t^2 + t + 1), T = R2 (t + 1)^3
    let s = parse_radical("t^4 + t^3 + 4*t^2 + t + 1")?;
    let t = parse_radical("R2*t^3 + 3*R2*t^2 + 3*R2*t + R2")?;
    let v = square_compare(&s.scale(&BigRational::from_integer(2.into())), &t)?;
    let v = v.as_polynomial().expect("no radicals left").clone();
    println!("S^2 - T^2 = {}", radical_to_text(&v.clone().into())?);
    let c = factor_unit_root(&v, 4)?;
    println!("          = (t - 1)^4 * ({})", radical_to_text(&c.clone().into())?);
    println!("roots of the cofactor on t > 0: {}", sturm_count(&c, &Interval::positive())?.root_count);

    let h18 = RationalPolynomial::from_ints(&[
        943, -728, -8370, 8576, 30935, -28454, -12184, 81284, -12184, -28454, 30935, 8576, -8370, -728, 943,
    ]);
    println!("h18(1) = {}", h18.eval(&BigRational::one()));
    println!("h18 roots on t > 0: {}", sturm_count(&h18, &Interval::positive())?.root_count);
    println!("h18 real roots:     {:?}", isolate_roots(&h18, &Interval::negative(), 1e-10)?);
    Ok(())
}

//! Writes the built-in certificate files.
//!
//! For each mean-only proof part this expands the combination, then searches
//! for a square-compare grouping: terms go to the squared side `S` when they
//! are positive, to `T` when negative, and mixed polynomials are split by
//! coefficient sign. Other groupings are tried when the natural one leads to
//! a dead end. The checker in `gini_refine::certify` replays every file, so
//! nothing here is trusted.
//!
//!     cargo run --example author_certificates [OUT_DIR]

use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::{One, Signed};

use gini_refine::algebra::{
    expand_combination, factor_unit_root, square_compare, sturm_count, Interval, Monomial,
    RadicalExpression, RationalPolynomial,
};
use gini_refine::certify::{check_certificate, Certificate, Step, Witness};
use gini_refine::registry;

const MAX_SQUARINGS: usize = 4;

fn notes(id: &str) -> &'static str {
    match id {
        "thm21.p05" => "the printed conclusion names h17 where h5 is meant",
        "thm21.p07" => "the printed proof reuses the name g6 where g7 is meant; heading prints P6 for P4",
        "thm21.p15" => "the combination line prints 27N without subscript; read as N3",
        "thm21.p21" => "heading is garbled in print; the proof shows (P5 + 2N2)/3 <= (7H + 6P6 - 6N3)/7",
        "thm21.p27" => "heading prints (2P4 + 5P6)/7; the proof shows 4P5 + 3P6 + 7G - 14N1 >= 0",
        "thm21.p28" => "heading prints the reverse relation; the proof shows 18N1 - P6 - 9G - 8N2 >= 0",
        "thm31.4" => "mean-only step 4D(N2,N1) <= 2/3 D(S,P4) of the bound I <= 2/3 D(S,P4)",
        _ => "",
    }
}

/// `e = c * prim` with `c > 0` and `prim` integral with coprime coefficients.
fn normalize(e: &RadicalExpression) -> (BigRational, RadicalExpression) {
    let mut content: Option<BigRational> = None;
    for m in Monomial::ALL {
        let p = e.part(m);
        if p.is_zero() {
            continue;
        }
        let (c, _) = p.primitive_part();
        let c = c.abs();
        content = Some(match content {
            None => c,
            Some(acc) => {
                // gcd of rationals: gcd(numerators) / lcm(denominators)
                use num_integer::Integer;
                BigRational::new(acc.numer().gcd(c.numer()), acc.denom().lcm(c.denom()))
            }
        });
    }
    match content {
        None => (BigRational::one(), e.clone()),
        Some(c) => (c.clone(), e.scale(&(BigRational::one() / c))),
    }
}

fn positive_on_half_line(p: &RationalPolynomial) -> bool {
    if p.nonneg_coeffs() {
        return true;
    }
    !p.is_zero()
        && p.eval(&BigRational::one()).is_positive()
        && sturm_count(p, &Interval::positive()).map(|r| r.root_count == 0).unwrap_or(false)
}

fn map_parts(e: &RadicalExpression, f: impl Fn(&RationalPolynomial) -> Option<RationalPolynomial>) -> Option<RadicalExpression> {
    let mut out = RadicalExpression::zero();
    for m in e.support() {
        out.set_part(m, f(e.part(m))?);
    }
    Some(out)
}

fn witness_for(s: &RadicalExpression) -> Option<Vec<Witness>> {
    if s.manifestly_positive() {
        return Some(vec![Witness::Nonneg(s.clone())]);
    }
    let support = s.support();
    if support.len() != 1 {
        return None;
    }
    let m = support[0];
    let p = s.part(m);
    if !positive_on_half_line(p) {
        return None;
    }
    let mut w = vec![Witness::Sturm(p.clone())];
    if m != Monomial::ONE {
        w.push(Witness::Nonneg(RadicalExpression::term(RationalPolynomial::one(), m)));
    }
    Some(w)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    S,
    T,
    Split,
}

fn candidate_splits(e: &RadicalExpression) -> Vec<(RadicalExpression, RadicalExpression)> {
    let groups = e.support();
    let natural: Vec<Side> = groups
        .iter()
        .map(|&m| {
            let p = e.part(m);
            if positive_on_half_line(p) {
                Side::S
            } else if positive_on_half_line(&-p) {
                Side::T
            } else {
                Side::Split
            }
        })
        .collect();
    let n = groups.len();
    let mut assignments: Vec<Vec<Side>> = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let a: Vec<Side> = (0..n)
            .map(|_| {
                let side = [Side::S, Side::T, Side::Split][c % 3];
                c /= 3;
                side
            })
            .collect();
        assignments.push(a);
    }
    let distance = |a: &Vec<Side>| a.iter().zip(&natural).filter(|(x, y)| x != y).count();
    assignments.sort_by_key(distance);

    let mut out = Vec::new();
    for a in assignments {
        let mut s = RadicalExpression::zero();
        let mut t = RadicalExpression::zero();
        for (&m, side) in groups.iter().zip(&a) {
            let p = e.part(m).clone();
            let (ps, pt) = match side {
                Side::S => (p, RationalPolynomial::zero()),
                Side::T => (RationalPolynomial::zero(), -&p),
                Side::Split => {
                    let pos = p.filter_terms(|c| c.is_positive());
                    let neg = p.filter_terms(|c| c.is_negative());
                    (pos, -&neg)
                }
            };
            s = &s + &RadicalExpression::term(ps, m);
            t = &t + &RadicalExpression::term(pt, m);
        }
        if !s.is_zero() && !t.is_zero() {
            out.push((s, t));
        }
    }
    out
}

/// Steps that take `e` to a terminal witness, or `None`. `cur` is always
/// the exact expression the checker holds.
fn reduce(e: &RadicalExpression, squarings: usize) -> Option<Vec<Step>> {
    let mut steps = Vec::new();
    let mut cur = e.clone();

    let k0 = cur.support().iter().map(|&m| cur.part(m).zero_multiplicity()).min()?;
    if k0 > 0 {
        cur = map_parts(&cur, |p| p.deflate_zero(k0).ok())?;
        steps.push(Step::DeflateZero { k: k0 });
    }

    let mut k = 0;
    while map_parts(&cur, |p| factor_unit_root(p, (k + 2) as u32).ok()).is_some() {
        k += 2;
    }
    if k > 0 {
        let q = map_parts(&cur, |p| factor_unit_root(p, k as u32).ok())?;
        let (factor, cofactor) = normalize(&q);
        cur = cofactor;
        steps.push(Step::UnitRootFactor { k: k as u32, factor, cofactor: cur.clone() });
    }

    // a factor shared by the radical groups keeps squared degrees down
    let g = cur
        .support()
        .iter()
        .fold(RationalPolynomial::zero(), |acc, &m| acc.gcd(cur.part(m)));
    let (_, g) = g.primitive_part();
    if cur.as_polynomial().is_none() && g.degree().unwrap_or(0) > 0 && g.nonneg_coeffs() {
        cur = map_parts(&cur, |p| p.divide_exact(&g).ok())?;
        steps.push(Step::DividePositive { factor: g });
    }

    if cur.manifestly_positive() {
        steps.push(Step::NonnegCoeffs);
        return Some(steps);
    }
    if let Some(p) = cur.as_polynomial() {
        let value = p.eval(&BigRational::one());
        if value.is_positive() && sturm_count(p, &Interval::positive()).ok()?.root_count == 0 {
            steps.push(Step::SturmNoPositiveRoots);
            steps.push(Step::PositiveAtOne { value: Some(value) });
            return Some(steps);
        }
        return None;
    }
    if squarings == MAX_SQUARINGS {
        return None;
    }
    // split the primitive form so that S and T have integer coefficients
    let (content, prim) = normalize(&cur);
    let factor = BigRational::one() / content;
    for (s, t) in candidate_splits(&prim) {
        let Some(witness) = witness_for(&s) else { continue };
        let Ok(next) = square_compare(&s, &t) else { continue };
        if next.is_zero() {
            continue;
        }
        if let Some(rest) = reduce(&next, squarings + 1) {
            steps.push(Step::SplitSquare { factor: factor.clone(), s, t, witness });
            steps.extend(rest);
            return Some(steps);
        }
    }
    None
}

fn author(id: &str) -> Certificate {
    let stmt = registry::get(id).unwrap_or_else(|| panic!("unknown statement {id}"));
    let (num, _) = expand_combination(stmt.combination()).expect("mean-only statement");
    let (scale, cur) = normalize(&num);
    let rest = reduce(&cur, 0).unwrap_or_else(|| panic!("{id}: no certificate found"));
    let mut steps = vec![Step::Expand];
    steps.extend(rest);
    Certificate { statement_id: id.to_string(), scale, notes: notes(id).to_string(), steps }
}

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("certificates"));
    std::fs::create_dir_all(&out).expect("create output directory");
    let mut ids: Vec<String> = (1..=42).map(|i| format!("thm21.p{i:02}")).collect();
    ids.push("thm31.4".into());
    for id in ids {
        let cert = author(&id);
        let result = check_certificate(&cert, registry::get(&id).unwrap());
        assert!(result.proved(), "{result}");
        let ops: Vec<&str> = cert.steps.iter().map(Step::name).collect();
        println!("{id}: {}", ops.join(" -> "));
        let json = cert.to_json().expect("integer payloads");
        std::fs::write(out.join(format!("{id}.json")), json).expect("write certificate");
    }
}

//! Real-root counting and isolation with Sturm sequences.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::RationalPolynomial;
use super::AlgebraError;

/// Interval endpoint on the extended real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Bound {
    pub fn int(n: i64) -> Self {
        Bound::Finite(BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInfinity => f.write_str("-inf"),
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::PosInfinity => f.write_str("+inf"),
        }
    }
}

/// Open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn positive() -> Self {
        Self { lo: Bound::int(0), hi: Bound::PosInfinity }
    }

    pub fn negative() -> Self {
        Self { lo: Bound::NegInfinity, hi: Bound::int(0) }
    }

    pub fn finite(lo: BigRational, hi: BigRational) -> Self {
        Self { lo: Bound::Finite(lo), hi: Bound::Finite(hi) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Outcome of a Sturm root count.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmReport {
    pub polynomial: RationalPolynomial,
    pub interval: Interval,
    /// Distinct real roots strictly inside the interval.
    pub root_count: usize,
}

/// Sturm chain of the square-free part of a nonzero polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RationalPolynomial>,
}

fn sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

impl SturmChain {
    pub fn new(p: &RationalPolynomial) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        let sq = p.divide_exact(&g)?;
        let mut chain = vec![sq.clone(), sq.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            // keep only the sign-relevant positive multiple
            let (c, prim) = (-&r).primitive_part();
            chain.push(if c.is_negative() { -&prim } else { prim });
        }
        chain.pop();
        Ok(Self { chain })
    }

    pub fn squarefree(&self) -> &RationalPolynomial {
        &self.chain[0]
    }

    fn signs_at(&self, b: &Bound) -> Vec<i8> {
        self.chain
            .iter()
            .map(|p| match b {
                Bound::Finite(x) => sign(&p.eval(x)),
                Bound::PosInfinity => sign(&p.leading()),
                Bound::NegInfinity => {
                    let s = sign(&p.leading());
                    if p.degree().unwrap_or(0) % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            })
            .collect()
    }

    /// Sign variations just inside an endpoint. At a root of the square-free
    /// polynomial the chain head is replaced by its one-sided limit sign,
    /// which is `sign(p')` to the right and `-sign(p')` to the left.
    fn variations(&self, b: &Bound, from_right: bool) -> usize {
        let mut s = self.signs_at(b);
        if s[0] == 0 && s.len() > 1 {
            s[0] = if from_right { s[1] } else { -s[1] };
        }
        let nz: Vec<i8> = s.into_iter().filter(|v| *v != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the open interval.
    pub fn count(&self, interval: &Interval) -> usize {
        let a = self.variations(&interval.lo, true);
        let b = self.variations(&interval.hi, false);
        a.saturating_sub(b)
    }
}

/// Counts distinct real roots of `p` in an open interval.
pub fn sturm_count(p: &RationalPolynomial, interval: &Interval) -> Result<SturmReport, AlgebraError> {
    let chain = SturmChain::new(p)?;
    Ok(SturmReport {
        polynomial: p.clone(),
        interval: interval.clone(),
        root_count: chain.count(interval),
    })
}

/// Bound on the absolute value of every root: `1 + max |a_i / a_n|`.
pub fn cauchy_bound(p: &RationalPolynomial) -> BigRational {
    let lead = p.leading().abs();
    let mut m = BigRational::zero();
    for c in p.coeffs() {
        let r = c.abs() / &lead;
        if r > m {
            m = r;
        }
    }
    m + BigRational::from_integer(1.into())
}

/// Isolates every real root of `p` in `interval` to an enclosing interval of
/// width at most `width`, returning root estimates sorted increasingly.
pub fn isolate_roots(
    p: &RationalPolynomial,
    interval: &Interval,
    width: f64,
) -> Result<Vec<f64>, AlgebraError> {
    let chain = SturmChain::new(p)?;
    let m = cauchy_bound(chain.squarefree());
    let clip = |b: &Bound| match b {
        Bound::NegInfinity => -m.clone(),
        Bound::PosInfinity => m.clone(),
        Bound::Finite(v) => v.clone(),
    };
    let (lo, hi) = (clip(&interval.lo), clip(&interval.hi));
    let two = BigRational::from_integer(2.into());
    let width = BigRational::from_float(width).ok_or_else(|| {
        AlgebraError::InvalidArgument("isolation width must be finite".into())
    })?;
    let sq = chain.squarefree().clone();

    let mut roots = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = chain.count(&Interval::finite(a.clone(), b.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            let (mut fa, fb) = (sq.eval(&a), sq.eval(&b));
            if !fa.is_zero() && !fb.is_zero() {
                // one simple sign change inside: plain bisection on signs
                let (mut a, mut b) = (a, b);
                while &b - &a > width {
                    let mid = (&a + &b) / &two;
                    let fm = sq.eval(&mid);
                    if fm.is_zero() {
                        (a, b) = (mid.clone(), mid);
                        break;
                    }
                    if fm.is_positive() == fa.is_positive() {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                roots.push(((&a + &b) / &two).to_f64().unwrap_or(f64::NAN));
                continue;
            }
        }
        let mid = (&a + &b) / &two;
        if sq.eval(&mid).is_zero() {
            roots.push(mid.to_f64().unwrap_or(f64::NAN));
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    fn all() -> Interval {
        Interval { lo: Bound::NegInfinity, hi: Bound::PosInfinity }
    }

    #[test]
    fn counts_simple_roots() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &Interval::positive()).unwrap().root_count, 1);
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &all()).unwrap().root_count, 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &all()).unwrap().root_count, 0);
        assert!(matches!(
            sturm_count(&RationalPolynomial::zero(), &all()),
            Err(AlgebraError::ZeroPolynomial)
        ));
    }

    #[test]
    fn repeated_and_endpoint_roots() {
        // (t-1)^3 (t+2): distinct roots 1 and -2
        let q = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        assert_eq!(sturm_count(&q, &all()).unwrap().root_count, 2);
        // root at the endpoint is excluded from an open interval
        let open = Interval::finite(BigRational::from_integer(1.into()), BigRational::from_integer(5.into()));
        assert_eq!(sturm_count(&q, &open).unwrap().root_count, 0);
        let t_times = &p(&[0, 1]) * &p(&[-2, 0, 1]);
        assert_eq!(sturm_count(&t_times, &Interval::positive()).unwrap().root_count, 1);
        assert_eq!(sturm_count(&t_times, &Interval::negative()).unwrap().root_count, 1);
    }

    #[test]
    fn isolation() {
        let roots = isolate_roots(&p(&[-2, 0, 1]), &all(), 1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[1] - 2f64.sqrt()).abs() < 1e-9);
        assert!((roots[0] + 2f64.sqrt()).abs() < 1e-9);
        let roots = isolate_roots(&p(&[0, -1, 0, 1]), &all(), 1e-10).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots[1].abs() < 1e-9);
    }

    /// Counts sign changes of `q` on the grid `(j + 1/2) / 8`, evaluated
    /// exactly. Grid points never coincide with half-integer roots.
    fn scan_count(q: &RationalPolynomial, lo: i64, hi: i64) -> usize {
        let mut count = 0;
        let mut prev: Option<bool> = None;
        for j in (8 * lo)..(8 * hi) {
            let x = BigRational::new((2 * j + 1).into(), 16.into());
            let positive = q.eval(&x).is_positive();
            if prev.is_some_and(|p| p != positive) {
                count += 1;
            }
            prev = Some(positive);
        }
        count
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn agrees_with_dense_scan(roots in prop::collection::vec(-30i64..=130, 0..=6),
                                  quad in prop::bool::ANY) {
            // products of distinct well-separated linear factors (plus an
            // optional root-free quadratic) give an unambiguous oracle
            let mut rs = roots.clone();
            rs.sort();
            rs.dedup();
            let mut q = p(&[1]);
            for r in &rs {
                q = &q * &RationalPolynomial::new(vec![
                    BigRational::new((-(2 * r + 1)).into(), 2.into()),
                    BigRational::from_integer(1.into()),
                ]);
            }
            if quad && rs.len() < 5 {
                q = &q * &p(&[3, 1, 1]);
            }
            let interval = Interval::finite(
                BigRational::from_integer(0.into()),
                BigRational::from_integer(100.into()),
            );
            let sturm = sturm_count(&q, &interval).unwrap().root_count;
            prop_assert_eq!(sturm, scan_count(&q, 0, 100));
        }
    }
}

//! Exact tangle-slope arithmetic: big-integer fractions and the standard
//! (single-sign) continued-fraction form of a rational tangle.
//!
//! A tangle word `(a_1, ..., a_n)` evaluates to the continued fraction
//! `[a_n, ..., a_1] = a_n + 1/(a_{n-1} + 1/(... + 1/a_1))`.  Standard forms
//! produced here are the greedy single-sign expansions; slopes in `(-1, 1)`
//! get a trailing zero term, e.g. `1/2 -> (2, 0)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FractionError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("interior continued-fraction term is zero")]
    ZeroInteriorTerm,
    #[error("cannot expand zero as a standard continued fraction")]
    ZeroSlope,
    #[error("rotation of the zero tangle has no finite slope")]
    RotateZero,
    #[error("slope out of range: expected {0}")]
    OutOfRange(&'static str),
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Result<Self, FractionError> {
        if den == 0 {
            return Err(FractionError::ZeroDenominator);
        }
        Ok(Fraction(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_int(n: i64) -> Self {
        Fraction(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, FractionError> {
        if den.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        Ok(Fraction(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Fraction {
        Fraction(self.0.abs())
    }

    pub fn neg(&self) -> Fraction {
        Fraction(-self.0.clone())
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        Fraction(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        Fraction(&self.0 - &other.0)
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// 1/x.
    pub fn recip(&self) -> Result<Fraction, FractionError> {
        if self.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        Ok(Fraction(self.0.recip()))
    }

    pub fn cmp_abs_one(&self) -> std::cmp::Ordering {
        self.0.abs().cmp(&BigRational::one())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Twist word of a rational tangle, innermost term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Self {
        ContinuedFraction { terms }
    }

    /// Standard form: all nonzero terms share a sign, zeros only in the last
    /// position.
    pub fn is_standard(&self) -> bool {
        let interior_ok = self.terms[..self.terms.len().saturating_sub(1)]
            .iter()
            .all(|&a| a != 0);
        let signs: Vec<i64> = self.terms.iter().filter(|&&a| a != 0).map(|a| a.signum()).collect();
        interior_ok && signs.windows(2).all(|w| w[0] == w[1])
    }

    pub fn crossing_count(&self) -> usize {
        self.terms.iter().map(|a| a.unsigned_abs() as usize).sum()
    }
}

/// Evaluate `(a_1, ..., a_n)` as `[a_n, ..., a_1]`.
pub fn fraction_of(cf: &ContinuedFraction) -> Result<Fraction, FractionError> {
    if cf.terms.is_empty() {
        return Err(FractionError::ZeroInteriorTerm);
    }
    if cf.terms[..cf.terms.len() - 1].iter().any(|&a| a == 0) {
        return Err(FractionError::ZeroInteriorTerm);
    }
    // Evaluate from the inside out: x_1 = a_1, x_k = a_k + 1/x_{k-1}.
    let mut x = BigRational::from_integer(BigInt::from(cf.terms[0]));
    for &a in &cf.terms[1..] {
        if x.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        x = BigRational::from_integer(BigInt::from(a)) + x.recip();
    }
    Ok(Fraction(x))
}

/// Greedy single-sign expansion with `fraction_of(standard_cf(q)) = q`.
///
/// For `|q| >= 1` this is the Euclidean expansion read innermost-first; for
/// `0 < |q| < 1` the outermost term is 0.
pub fn standard_cf(q: &Fraction) -> Result<ContinuedFraction, FractionError> {
    if q.is_zero() {
        return Err(FractionError::ZeroSlope);
    }
    let neg = q.is_negative();
    let mut outer_first: Vec<BigInt> = Vec::new();
    let mut x = q.0.abs();
    // Outermost-first Euclidean expansion of |q|: x = b + 1/x', b = floor(x),
    // except that a final term of 1 is absorbed into its predecessor.
    loop {
        let b = x.floor().to_integer();
        let frac = &x - BigRational::from_integer(b.clone());
        if frac.is_zero() {
            if b.is_one() && !outer_first.is_empty() {
                let last = outer_first.last_mut().unwrap();
                *last += BigInt::one();
            } else {
                outer_first.push(b);
            }
            break;
        }
        outer_first.push(b);
        x = frac.recip();
    }
    let mut terms: Vec<i64> = outer_first
        .iter()
        .rev()
        .map(|b| i64::try_from(b).expect("term fits i64"))
        .collect();
    if terms.last() == Some(&0) && terms.len() == 1 {
        return Err(FractionError::ZeroSlope);
    }
    if neg {
        for t in &mut terms {
            *t = -*t;
        }
    }
    let cf = ContinuedFraction::new(terms);
    debug_assert!(cf.is_standard());
    debug_assert_eq!(&fraction_of(&cf).unwrap(), q);
    Ok(cf)
}

/// Slope of a horizontal sum of tangles.
pub fn sum_slope(a: &Fraction, b: &Fraction) -> Fraction {
    a.add(b)
}

/// Slope of a rotated tangle: -1/a.
pub fn rotate_slope(a: &Fraction) -> Result<Fraction, FractionError> {
    if a.is_zero() {
        return Err(FractionError::RotateZero);
    }
    Ok(a.recip()?.neg())
}

/// Outcome of rewriting the tangle pair `(-r1, r2)` with `0 < r_i < 1` into
/// `(1 - r1, r2 - 1)`, with the sub-tangle slopes it exposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformed {
    pub first: Fraction,
    pub second: Fraction,
    /// Slope of the sub-tangle carried by the first entry: -r1/(1-r1).
    pub sub_first: Fraction,
    /// Slope of the sub-tangle carried by the second entry: r2/(1-r2).
    pub sub_second: Fraction,
}

/// Rewrite `(-r1, r2) -> (1 - r1, r2 - 1)` for `0 < r_i < 1`.
///
/// `neg_r1` is the (negative) first slope; `r2` the (positive) second one.
pub fn deform(neg_r1: &Fraction, r2: &Fraction) -> Result<Deformed, FractionError> {
    let one = Fraction::from_int(1);
    let r1 = neg_r1.neg();
    let in_unit = |r: &Fraction| !r.is_negative() && !r.is_zero() && r.cmp_abs_one() == std::cmp::Ordering::Less;
    if !in_unit(&r1) || !in_unit(r2) {
        return Err(FractionError::OutOfRange("0 < r_i < 1"));
    }
    let one_minus_r1 = one.sub(&r1);
    let r2_minus_one = r2.sub(&one);
    let sub_first = Fraction(-(&r1.0 / &one_minus_r1.0));
    let sub_second = Fraction(&r2.0 / &(BigRational::one() - &r2.0));
    Ok(Deformed {
        first: one_minus_r1,
        second: r2_minus_one,
        sub_first,
        sub_second,
    })
}

pub fn frac(num: i64, den: i64) -> Fraction {
    Fraction::new(num, den).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn evaluates_standard_example() {
        let cf = ContinuedFraction::new(vec![3, 2, 4]);
        assert_eq!(fraction_of(&cf).unwrap(), frac(31, 7));
    }

    #[test]
    fn single_twist_and_two_twists() {
        assert_eq!(fraction_of(&ContinuedFraction::new(vec![7])).unwrap(), frac(7, 1));
        // (3,2) evaluates as [2,3] = 2 + 1/3.
        assert_eq!(fraction_of(&ContinuedFraction::new(vec![3, 2])).unwrap(), frac(7, 3));
    }

    #[test]
    fn standard_form_round_trips() {
        assert_eq!(standard_cf(&frac(31, 7)).unwrap().terms, vec![3, 2, 4]);
        assert_eq!(standard_cf(&frac(-31, 7)).unwrap().terms, vec![-3, -2, -4]);
        assert_eq!(standard_cf(&frac(1, 2)).unwrap().terms, vec![2, 0]);
        assert_eq!(standard_cf(&frac(3, 7)).unwrap().terms, vec![3, 2, 0]);
        assert_eq!(standard_cf(&frac(5, 1)).unwrap().terms, vec![5]);
        assert!(standard_cf(&Fraction::from_int(0)).is_err());
    }

    #[test]
    fn tangle_algebra() {
        assert_eq!(sum_slope(&frac(1, 2), &frac(1, 3)), frac(5, 6));
        assert_eq!(rotate_slope(&frac(31, 7)).unwrap(), frac(-7, 31));
        let a = frac(3, 5);
        assert_eq!(rotate_slope(&rotate_slope(&a).unwrap()).unwrap(), a);
        assert!(rotate_slope(&Fraction::from_int(0)).is_err());
    }

    #[test]
    fn deform_examples() {
        let d = deform(&frac(-1, 2), &frac(1, 3)).unwrap();
        assert_eq!(d.first, frac(1, 2));
        assert_eq!(d.second, frac(-2, 3));
        assert_eq!(d.sub_first, frac(-1, 1));
        assert_eq!(d.sub_second, frac(1, 2));

        let d = deform(&frac(-3, 7), &frac(2, 5)).unwrap();
        assert_eq!(d.first, frac(4, 7));
        assert_eq!(d.second, frac(-3, 5));
        assert_eq!(d.sub_first, frac(-3, 4));
        assert_eq!(d.sub_second, frac(2, 3));

        assert!(deform(&frac(-3, 2), &frac(1, 3)).is_err());
        assert!(deform(&frac(1, 2), &frac(1, 3)).is_err());
    }

    #[test]
    fn deform_preserves_total_slope_mod_one_shift() {
        // (: -r1 + r2 = (1-r1) + (r2-1), the sum is literally preserved.
        let d = deform(&frac(-2, 5), &frac(2, 7)).unwrap();
        assert_eq!(
            frac(-2, 5).add(&frac(2, 7)),
            d.first.add(&d.second)
        );
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for num in 1..=60i64 {
            for den in 1..=60i64 {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for q in [frac(num, den), frac(-num, den)] {
                    let cf = standard_cf(&q).unwrap();
                    assert!(cf.is_standard());
                    assert_eq!(fraction_of(&cf).unwrap(), q);
                }
            }
        }
    }
}

//! Exact arithmetic in the field `Q(sqrt 2)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The number `a + b*sqrt(2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRoot2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QRoot2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QRoot2 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QRoot2::new(BigRational::from_integer(BigInt::from(a)), BigRational::from_integer(BigInt::from(b)))
    }

    pub fn zero() -> Self {
        QRoot2::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QRoot2::from_ints(1, 0)
    }

    pub fn sqrt2() -> Self {
        QRoot2::from_ints(0, 1)
    }

    /// Since `sqrt 2` is irrational this is exactly `a = b = 0`.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(2)`.
    pub fn conjugate(&self) -> Self {
        QRoot2::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QRoot2::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Nonnegative square root of `0`, `1`, `2` or `4`.
    pub fn sqrt_of_small(v: i64) -> Option<Self> {
        match v {
            0 => Some(QRoot2::zero()),
            1 => Some(QRoot2::one()),
            2 => Some(QRoot2::sqrt2()),
            4 => Some(QRoot2::from_ints(2, 0)),
            _ => None,
        }
    }
}

impl Add for &QRoot2 {
    type Output = QRoot2;
    fn add(self, o: &QRoot2) -> QRoot2 {
        QRoot2::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QRoot2 {
    type Output = QRoot2;
    fn sub(self, o: &QRoot2) -> QRoot2 {
        QRoot2::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QRoot2 {
    type Output = QRoot2;
    fn mul(self, o: &QRoot2) -> QRoot2 {
        let two = BigRational::from_integer(2.into());
        QRoot2::new(&self.a * &o.a + two * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }
}

impl Div for &QRoot2 {
    type Output = QRoot2;
    fn div(self, o: &QRoot2) -> QRoot2 {
        self * &o.inverse().expect("division by zero in Q(sqrt 2)")
    }
}

impl Neg for &QRoot2 {
    type Output = QRoot2;
    fn neg(self) -> QRoot2 {
        QRoot2::new(-self.a.clone(), -self.b.clone())
    }
}

impl fmt::Display for QRoot2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            if self.b.is_one() {
                write!(f, "sqrt2")
            } else {
                write!(f, "{}*sqrt2", self.b)
            }
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

/// Rank by Gaussian elimination over `Q(sqrt 2)`.
pub fn rank(mut m: Vec<Vec<QRoot2>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] = &m[i][j] - &d;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use proptest::test_runner::RngSeed;

    fn q(a: i64, b: i64) -> QRoot2 {
        QRoot2::from_ints(a, b)
    }

    #[test]
    fn basic_identities() {
        let s = QRoot2::sqrt2();
        assert_eq!(&s * &s, q(2, 0));
        assert_eq!(&q(1, 1) * &q(1, -1), q(-1, 0));
        assert_eq!(&q(3, 2) / &q(3, 2), QRoot2::one());
        assert!(q(0, 0).is_zero() && !q(1, -1).is_zero());
        assert_eq!(q(1, 1).to_string(), "1 + 1*sqrt2");
    }

    #[test]
    fn rank_examples() {
        let id = vec![vec![q(1, 0), q(0, 0)], vec![q(0, 0), q(1, 0)]];
        assert_eq!(rank(id), 2);
        // rows (1, sqrt2) and (sqrt2, 2) are proportional
        let dep = vec![vec![q(1, 0), q(0, 1)], vec![q(0, 1), q(2, 0)]];
        assert_eq!(rank(dep), 1);
    }

    fn arb() -> impl Strategy<Value = QRoot2> {
        (-20i64..20, -20i64..20).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 256, rng_seed: RngSeed::Fixed(0x51), ..ProptestConfig::default() })]

        #[test]
        fn zero_iff_both_parts_zero(a in -50i64..50, b in -50i64..50) {
            prop_assert_eq!(q(a, b).is_zero(), a == 0 && b == 0);
            // the norm vanishes only at zero because sqrt 2 is irrational
            prop_assert_eq!(q(a, b).norm().is_zero(), a == 0 && b == 0);
        }

        #[test]
        fn field_axioms(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x - &x, QRoot2::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), QRoot2::one());
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
            prop_assert!(((&x * &y).to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-6);
        }
    }
}

//! Rational enclosures of a few irrational quantities.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A real number available as nested rational intervals.
pub trait RealEnclosure {
    /// `(lo, hi)` with `lo ≤ value ≤ hi` and `hi - lo` roughly `2^-bits`.
    fn enclose(&self, bits: u32) -> (Rational, Rational);
}

/// A rational, enclosed by itself.
pub struct Exact(pub Rational);

impl RealEnclosure for Exact {
    fn enclose(&self, _bits: u32) -> (Rational, Rational) {
        (self.0.clone(), self.0.clone())
    }
}

/// `√(ln h / h)`, the bias used by the feedback-arc-set dominance argument.
pub struct SqrtLogRatio {
    pub h: u64,
}

impl RealEnclosure for SqrtLogRatio {
    fn enclose(&self, bits: u32) -> (Rational, Rational) {
        let h = Rational::from_integer(BigInt::from(self.h));
        let (ln_lo, ln_hi) = ln_enclosure(&h, bits + 8);
        let (lo, _) = sqrt_enclosure(&(ln_lo / &h), bits);
        let (_, hi) = sqrt_enclosure(&(ln_hi / &h), bits);
        (lo, hi)
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn floor_to(q: &Rational, bits: u32) -> Rational {
    Rational::new((q * Rational::from_integer(pow2(bits))).floor().to_integer(), pow2(bits))
}

fn ceil_to(q: &Rational, bits: u32) -> Rational {
    Rational::new((q * Rational::from_integer(pow2(bits))).ceil().to_integer(), pow2(bits))
}

/// `atanh(z)` for `0 ≤ z ≤ 1/3` from the odd power series and its geometric
/// tail bound.
fn atanh_enclosure(z: &Rational, bits: u32) -> (Rational, Rational) {
    let z2 = z * z;
    let eps = Rational::new(BigInt::one(), pow2(bits + 2));
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut k = 1u64;
    loop {
        let term = &power / Rational::from_integer(BigInt::from(k));
        if term < eps {
            // remaining terms ≤ z^k / (k (1 - z²))
            let tail = term / (Rational::one() - &z2);
            let lo = floor_to(&sum, bits + 2);
            let hi = ceil_to(&(&sum + tail), bits + 2);
            return (lo, hi);
        }
        sum += term;
        power = &power * &z2;
        k += 2;
    }
}

/// Enclosure of `ln q` for rational `q > 0`.
pub fn ln_enclosure(q: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(q.is_positive(), "logarithm of a nonpositive number");
    // q = 2^j · y with 1 ≤ y < 2
    let mut j: i64 = q.numer().bits() as i64 - q.denom().bits() as i64;
    let two = Rational::from_integer(BigInt::from(2));
    let scale = |j: i64| -> Rational {
        if j >= 0 {
            Rational::from_integer(pow2(j as u32))
        } else {
            Rational::new(BigInt::one(), pow2((-j) as u32))
        }
    };
    let mut y = q / scale(j);
    while y >= two {
        j += 1;
        y = q / scale(j);
    }
    while y < Rational::one() {
        j -= 1;
        y = q / scale(j);
    }
    let one = Rational::one();
    let z = (&y - &one) / (&y + &one);
    let (ly_lo, ly_hi) = atanh_enclosure(&z, bits + 4);
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    let extra = 64 - (j.unsigned_abs() | 1).leading_zeros();
    let (l2_lo, l2_hi) = atanh_enclosure(&third, bits + 4 + extra);
    let jq = Rational::from_integer(BigInt::from(j));
    let (a, b) = if j >= 0 { (&l2_lo, &l2_hi) } else { (&l2_hi, &l2_lo) };
    let lo = (&jq * a + &ly_lo) * &two;
    let hi = (&jq * b + &ly_hi) * &two;
    (floor_to(&lo, bits), ceil_to(&hi, bits))
}

/// Enclosure of `√q` for rational `q ≥ 0`.
pub fn sqrt_enclosure(q: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!q.is_negative(), "square root of a negative number");
    let scaled = q * Rational::from_integer(pow2(2 * bits));
    let lo_int = scaled.floor().to_integer().sqrt();
    let hi_root = scaled.ceil().to_integer().sqrt();
    let hi_int = if &hi_root * &hi_root == scaled.ceil().to_integer() { hi_root } else { hi_root + 1 };
    let den = pow2(bits);
    let lo = Rational::new(lo_int, den.clone());
    let hi = Rational::new(hi_int, den);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn f(q: &Rational) -> f64 {
        q.to_f64().unwrap()
    }

    #[test]
    fn ln_brackets_float_value() {
        for n in [1u64, 2, 3, 7, 30, 100, 1000, 123456] {
            let (lo, hi) = ln_enclosure(&Rational::from_integer(BigInt::from(n)), 60);
            let v = (n as f64).ln();
            assert!(f(&lo) <= v + 1e-12 && v - 1e-12 <= f(&hi), "n={n}");
            assert!(f(&(&hi - &lo)) < 1e-15);
        }
        let (lo, hi) = ln_enclosure(&Rational::new(BigInt::from(1), BigInt::from(10)), 60);
        assert!(f(&lo) <= (0.1f64).ln() + 1e-12 && (0.1f64).ln() - 1e-12 <= f(&hi));
    }

    #[test]
    fn sqrt_brackets() {
        let (lo, hi) = sqrt_enclosure(&Rational::from_integer(BigInt::from(2)), 40);
        assert!(&lo * &lo <= Rational::from_integer(BigInt::from(2)));
        assert!(&hi * &hi >= Rational::from_integer(BigInt::from(2)));
        let (lo, hi) = sqrt_enclosure(&Rational::from_integer(BigInt::from(9)), 10);
        assert_eq!(lo, Rational::from_integer(BigInt::from(3)));
        assert_eq!(hi, Rational::from_integer(BigInt::from(3)));
    }

    #[test]
    fn sqrt_log_ratio_narrows() {
        let x = SqrtLogRatio { h: 30 };
        let (lo, hi) = x.enclose(50);
        let v = ((30f64).ln() / 30.0).sqrt();
        assert!(f(&lo) <= v + 1e-12 && v <= f(&hi) + 1e-12);
        assert!(f(&(&hi - &lo)) < 1e-13);
    }
}

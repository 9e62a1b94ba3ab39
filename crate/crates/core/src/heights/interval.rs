//! Exact rational interval arithmetic, used wherever an archimedean
//! quantity (sqrt(D), embeddings, heights) must be compared against a
//! rational bound with a certificate.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval with rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct QInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl QInterval {
    pub fn point(r: BigRational) -> Self {
        QInterval { lo: r.clone(), hi: r }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::point(BigRational::one())
    }

    /// sqrt(n) for a nonnegative integer n, certified to `bits` fractional
    /// bits of absolute error.
    pub fn sqrt_int(n: i64, bits: u32) -> Self {
        assert!(n >= 0);
        let scaled = BigInt::from(n) << (2 * bits);
        let root = scaled.sqrt();
        let den = BigInt::one() << bits;
        QInterval {
            lo: BigRational::new(root.clone(), den.clone()),
            hi: BigRational::new(root + 1, den),
        }
    }

    pub fn add(&self, o: &QInterval) -> QInterval {
        QInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &QInterval) -> QInterval {
        QInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> QInterval {
        QInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, o: &QInterval) -> QInterval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        QInterval { lo, hi }
    }

    pub fn scale(&self, r: &BigRational) -> QInterval {
        if r.is_negative() {
            QInterval {
                lo: &self.hi * r,
                hi: &self.lo * r,
            }
        } else {
            QInterval {
                lo: &self.lo * r,
                hi: &self.hi * r,
            }
        }
    }

    pub fn shift(&self, r: &BigRational) -> QInterval {
        QInterval {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    /// |x| as an interval.
    pub fn abs(&self) -> QInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            QInterval {
                lo: BigRational::zero(),
                hi: (-self.lo.clone()).max(self.hi.clone()),
            }
        }
    }

    /// max(1, x) as an interval.
    pub fn max_one(&self) -> QInterval {
        let one = BigRational::one();
        QInterval {
            lo: self.lo.clone().max(one.clone()),
            hi: self.hi.clone().max(one),
        }
    }

    /// Some(true) if certainly <= r, Some(false) if certainly > r.
    pub fn le_rational(&self, r: &BigRational) -> Option<bool> {
        if self.hi <= *r {
            Some(true)
        } else if self.lo > *r {
            Some(false)
        } else {
            None
        }
    }

    /// Some(true) if certainly <= the other interval.
    pub fn le_interval(&self, o: &QInterval) -> Option<bool> {
        if self.hi <= o.lo {
            Some(true)
        } else if self.lo > o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn mid_f64(&self) -> f64 {
        (rational_to_f64(&self.lo) + rational_to_f64(&self.hi)) / 2.0
    }

    /// Natural log of a certainly-positive interval, as a point estimate.
    pub fn ln_f64(&self) -> f64 {
        debug_assert!(self.lo.is_positive());
        (ln_rational(&self.lo) + ln_rational(&self.hi)) / 2.0
    }
}

/// Accurate f64 of a BigRational of any magnitude (overflow-safe).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let e = ln_rational(&r.abs()) / std::f64::consts::LN_2;
    if e > 1020.0 {
        return sign * f64::INFINITY;
    }
    if e < -1020.0 {
        return 0.0;
    }
    sign * big_to_f64_scaled(r.numer()) / big_to_f64_scaled(r.denom())
        * 2f64.powi((bits_of(r.numer()) - bits_of(r.denom())) as i32)
}

fn bits_of(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// Mantissa of n in [0.5, 1), ignoring the power of two.
fn big_to_f64_scaled(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        let v: f64 = n.magnitude().to_u64_digits().first().copied().unwrap_or(0) as f64;
        return v / 2f64.powi(bits as i32);
    }
    let shifted: BigInt = n.magnitude().clone().into() ;
    let shifted: BigInt = shifted >> (bits - 53);
    let v = shifted.to_u64_digits().1.first().copied().unwrap_or(0) as f64;
    v / 2f64.powi(53)
}

/// ln of a positive rational of any magnitude.
pub fn ln_rational(r: &BigRational) -> f64 {
    debug_assert!(r.is_positive());
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.sign() == Sign::Plus);
    let bits = n.bits();
    if bits <= 53 {
        let v = n.to_u64_digits().1.first().copied().unwrap_or(0);
        return (v as f64).ln();
    }
    let shift = bits - 53;
    let top: BigInt = n >> shift;
    let v = top.to_u64_digits().1.first().copied().unwrap_or(0) as f64;
    v.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn sqrt_brackets_value() {
        for n in [2i64, 5, 23, 184, 9973] {
            let iv = QInterval::sqrt_int(n, 80);
            let nn = BigRational::from_i64(n).unwrap();
            assert!(&iv.lo * &iv.lo <= nn);
            assert!(&iv.hi * &iv.hi >= nn);
            let width = &iv.hi - &iv.lo;
            assert!(width < BigRational::new(BigInt::one(), BigInt::one() << 79));
        }
    }

    #[test]
    fn interval_comparisons() {
        let x = QInterval::sqrt_int(2, 64);
        let b = BigRational::from_f64(1.5).unwrap();
        assert_eq!(x.le_rational(&b), Some(true));
        let b = BigRational::from_f64(1.41).unwrap();
        assert_eq!(x.le_rational(&b), Some(false));
    }

    #[test]
    fn ln_of_huge_rational() {
        // 2^200 has ln = 200 ln 2
        let big = BigRational::from(BigInt::one() << 200u32);
        let expect = 200.0 * std::f64::consts::LN_2;
        assert!((ln_rational(&big) - expect).abs() < 1e-9);
        let inv = big.recip();
        assert!((ln_rational(&inv) + expect).abs() < 1e-9);
    }

    #[test]
    fn to_f64_of_huge_rational_is_finite_direction() {
        let big = BigRational::from(BigInt::one() << 2000u32);
        assert!(rational_to_f64(&big).is_infinite());
        assert_eq!(rational_to_f64(&big.recip()), 0.0);
        let mid = BigRational::new((BigInt::one() << 100u32) + 7, (BigInt::one() << 99u32).into());
        assert!((rational_to_f64(&mid) - 2.0).abs() < 1e-12);
    }
}

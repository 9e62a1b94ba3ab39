//! Fundamental units of real quadratic orders from the continued fraction
//! of the canonical generator omega = (D mod 2 + sqrt(D)) / 2.
//!
//! The float path sums logs of the complete quotients over one period and
//! never builds big integers, so it is safe inside census loops. The exact
//! path reconstructs the unit element from convergents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{isqrt64, Discriminant};
use crate::error::Error;
use crate::Result;

/// Fundamental unit x + y*sqrt(D) with exact rational coordinates.
#[derive(Debug, Clone)]
pub struct FundamentalUnit {
    pub x: BigRational,
    pub y: BigRational,
    pub regulator: f64,
    /// norm of the unit, -1 or +1
    pub norm: i8,
}

struct Pqa {
    d: i64,
    sqrt_d: i64,
    p: i64,
    q: i64,
}

impl Pqa {
    fn start(d: i64) -> Self {
        Pqa {
            d,
            sqrt_d: isqrt64(d),
            p: d.rem_euclid(2),
            q: 2,
        }
    }

    /// Advance one continued fraction step; returns the partial quotient.
    fn step(&mut self) -> i64 {
        let a = (self.p + self.sqrt_d).div_euclid(self.q);
        let p_next = a * self.q - self.p;
        let q_next = (self.d - p_next * p_next) / self.q;
        self.p = p_next;
        self.q = q_next;
        a
    }
}

/// Regulator and unit norm without constructing the unit itself.
///
/// The regulator is log of the fundamental unit, summed in compensated
/// f64; accumulated rounding is far below the 1e-5 tolerances used by
/// consumers. Friedman's lower bound 0.205 is asserted.
pub fn regulator_and_norm(d: Discriminant) -> Result<(f64, i8)> {
    if d.is_negative() {
        return Err(Error::Domain(
            "imaginary field has a finite unit group and no regulator".into(),
        ));
    }
    let dv = d.value();
    let mut pqa = Pqa::start(dv);
    pqa.step();
    // the first complete quotient is reduced, so the cycle returns to it
    let (p1, q1) = (pqa.p, pqa.q);
    let sqrt_d = (dv as f64).sqrt();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut period = 0u64;
    loop {
        let term = ((pqa.p as f64 + sqrt_d) / pqa.q as f64).ln();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        period += 1;
        pqa.step();
        if (pqa.p, pqa.q) == (p1, q1) {
            break;
        }
    }
    let regulator = sum + comp;
    debug_assert!(regulator >= 0.205, "regulator {regulator} below Friedman bound");
    let norm = if period % 2 == 1 { -1 } else { 1 };
    Ok((regulator, norm))
}

/// Fundamental unit with exact coordinates, via the convergent matrix of
/// one period of the continued fraction.
pub fn fundamental_unit(d: Discriminant) -> Result<FundamentalUnit> {
    let (regulator, norm) = regulator_and_norm(d)?;
    let dv = d.value();
    let mut pqa = Pqa::start(dv);
    pqa.step();
    let (p1, q1) = (pqa.p, pqa.q);
    // M = prod [[a_i, 1], [1, 0]] over one period starting at omega_1
    let (mut m00, mut m01, mut m10, mut m11) = (
        BigInt::one(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::one(),
    );
    loop {
        let a = BigInt::from((pqa.p + pqa.sqrt_d).div_euclid(pqa.q));
        let (n00, n01) = (&m00 * &a + &m01, m00.clone());
        let (n10, n11) = (&m10 * &a + &m11, m10.clone());
        (m00, m01, m10, m11) = (n00, n01, n10, n11);
        pqa.step();
        if (pqa.p, pqa.q) == (p1, q1) {
            break;
        }
    }
    // unit = m10 * omega_1 + m11 with omega_1 = (p1 + sqrt(D)) / q1
    let q1b = BigInt::from(q1);
    let x = BigRational::new(&m10 * BigInt::from(p1) + &m11 * &q1b, q1b.clone());
    let y = BigRational::new(m10, q1b);
    // norm check: x^2 - D y^2 = +-1
    let n = &x * &x - BigRational::from(BigInt::from(dv)) * &y * &y;
    debug_assert!(n.is_integer() && n.abs() == BigRational::one());
    debug_assert_eq!(n.is_negative(), norm == -1);
    Ok(FundamentalUnit {
        x,
        y,
        regulator,
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn d(v: i64) -> Discriminant {
        Discriminant::fundamental(v).unwrap()
    }

    #[test]
    fn unit_of_5_is_golden_ratio() {
        let u = fundamental_unit(d(5)).unwrap();
        assert_eq!(u.x, BigRational::new(1.into(), 2.into()));
        assert_eq!(u.y, BigRational::new(1.into(), 2.into()));
        assert!((u.regulator - 0.481212).abs() < 1e-5);
        assert_eq!(u.norm, -1);
    }

    #[test]
    fn unit_of_8() {
        let u = fundamental_unit(d(8)).unwrap();
        // 1 + sqrt(2) = 1 + (1/2) sqrt(8)
        assert_eq!(u.x, BigRational::from(BigInt::from(1)));
        assert_eq!(u.y, BigRational::new(1.into(), 2.into()));
        assert!((u.regulator - 0.881374).abs() < 1e-5);
        assert_eq!(u.norm, -1);
    }

    #[test]
    fn imaginary_is_domain_error() {
        assert!(matches!(
            regulator_and_norm(Discriminant::fundamental(-4).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn regulator_of_184() {
        // unit 24335 + 3588 sqrt(46)
        let (r, n) = regulator_and_norm(d(184)).unwrap();
        let expect = (24335.0 + 3588.0 * 46f64.sqrt()).ln();
        assert!((r - expect).abs() < 1e-9, "{r} vs {expect}");
        assert_eq!(n, 1);
    }

    #[test]
    fn exact_unit_matches_float_regulator() {
        for v in [5i64, 8, 12, 13, 24, 40, 60, 136, 229, 316, 184] {
            let u = fundamental_unit(d(v)).unwrap();
            let xv = u.x.to_f64().unwrap();
            let yv = u.y.to_f64().unwrap();
            let emb = (xv + yv * (v as f64).sqrt()).abs().ln().abs();
            assert!(
                (emb - u.regulator).abs() < 1e-9 * (1.0 + u.regulator),
                "D={v}: {emb} vs {}",
                u.regulator
            );
        }
    }

    #[test]
    fn regulators_meet_friedman_floor() {
        for dd in crate::arith::fundamental_discriminants(0, 2000, crate::arith::SignFilter::Positive)
        {
            let (r, _) = regulator_and_norm(dd).unwrap();
            assert!(r >= 0.205, "D={} regulator {r}", dd.value());
        }
    }

    #[test]
    fn pell_norm_parity_examples() {
        assert_eq!(regulator_and_norm(d(5)).unwrap().1, -1);
        assert_eq!(regulator_and_norm(d(12)).unwrap().1, 1);
        assert_eq!(regulator_and_norm(d(40)).unwrap().1, -1);
        assert_eq!(regulator_and_norm(d(60)).unwrap().1, 1);
    }
}

//! Elements of a quadratic field in the integral basis (1, omega) with
//! exact rational coordinates; omega = (1 + sqrt(D))/2 for odd D and
//! sqrt(D)/2 for even D.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::QInterval;
use crate::arith::Discriminant;
use crate::error::Error;
use crate::Result;

/// Bits of certified precision used for archimedean evaluations.
pub(crate) const EMBED_BITS: u32 = 96;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    d: Discriminant,
    /// coordinates in the basis (1, omega)
    x: BigRational,
    y: BigRational,
}

impl FieldElement {
    pub fn new(d: Discriminant, x: BigRational, y: BigRational) -> Self {
        FieldElement { d, x, y }
    }

    pub fn from_integer_coords(d: Discriminant, x: i64, y: i64) -> Self {
        FieldElement {
            d,
            x: BigRational::from(BigInt::from(x)),
            y: BigRational::from(BigInt::from(y)),
        }
    }

    pub fn from_rational(d: Discriminant, r: BigRational) -> Self {
        FieldElement {
            d,
            x: r,
            y: BigRational::zero(),
        }
    }

    pub fn one(d: Discriminant) -> Self {
        Self::from_rational(d, BigRational::one())
    }

    pub fn zero(d: Discriminant) -> Self {
        Self::from_rational(d, BigRational::zero())
    }

    pub fn omega(d: Discriminant) -> Self {
        FieldElement {
            d,
            x: BigRational::zero(),
            y: BigRational::one(),
        }
    }

    pub fn discriminant(&self) -> Discriminant {
        self.d
    }

    pub fn coords(&self) -> (&BigRational, &BigRational) {
        (&self.x, &self.y)
    }

    /// Coordinates (u, v) with the element written as u + v*sqrt(D).
    pub fn sqrt_basis_coords(&self) -> (BigRational, BigRational) {
        let t = BigRational::from(BigInt::from(self.d.omega_trace()));
        let half = BigRational::new(1.into(), 2.into());
        let u = &self.x + &self.y * t * &half;
        let v = &self.y * &half;
        (u, v)
    }

    pub fn from_sqrt_basis(d: Discriminant, u: BigRational, v: BigRational) -> Self {
        // u + v sqrt(D) = (u - t*v) + 2v * omega with omega = (t + sqrt D)/2
        let t = BigRational::from(BigInt::from(d.omega_trace()));
        FieldElement {
            d,
            x: u - &v * t,
            y: v * BigRational::from(BigInt::from(2)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Whether both coordinates are integers (element of the ring of
    /// integers).
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn conj(&self) -> FieldElement {
        // conj(omega) = t - omega
        let t = BigRational::from(BigInt::from(self.d.omega_trace()));
        FieldElement {
            d: self.d,
            x: &self.x + &self.y * t,
            y: -self.y.clone(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            d: self.d,
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.d, o.d);
        FieldElement {
            d: self.d,
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.d, o.d);
        FieldElement {
            d: self.d,
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn mul(&self, o: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.d, o.d);
        // omega^2 = t*omega - n
        let t = BigRational::from(BigInt::from(self.d.omega_trace()));
        let n = BigRational::from(BigInt::from(self.d.omega_norm()));
        let yy = &self.y * &o.y;
        FieldElement {
            d: self.d,
            x: &self.x * &o.x - &yy * n,
            y: &self.x * &o.y + &self.y * &o.x + yy * t,
        }
    }

    pub fn scale(&self, r: &BigRational) -> FieldElement {
        FieldElement {
            d: self.d,
            x: &self.x * r,
            y: &self.y * r,
        }
    }

    /// Field norm x^2 + t xy + n y^2, an exact rational.
    pub fn norm(&self) -> BigRational {
        let t = BigRational::from(BigInt::from(self.d.omega_trace()));
        let n = BigRational::from(BigInt::from(self.d.omega_norm()));
        &self.x * &self.x + &self.x * &self.y * t + &self.y * &self.y * n
    }

    pub fn trace(&self) -> BigRational {
        let t = BigRational::from(BigInt::from(self.d.omega_trace()));
        &self.x * BigRational::from(BigInt::from(2)) + &self.y * t
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.norm();
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let mut acc = FieldElement::one(self.d);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Real embeddings as certified intervals, larger root first
    /// (sigma_1 sends sqrt(D) to +sqrt(D)). Real fields only.
    pub fn real_embeddings(&self, bits: u32) -> [QInterval; 2] {
        debug_assert!(!self.d.is_negative());
        let (u, v) = self.sqrt_basis_coords();
        let s = QInterval::sqrt_int(self.d.value(), bits);
        let e1 = s.scale(&v).shift(&u);
        let e2 = s.scale(&v).neg().shift(&u);
        [e1, e2]
    }

    /// Archimedean absolute values |alpha|_v^{d_v} as intervals: two real
    /// factors for D > 0, one |alpha|^2 = |N(alpha)| factor for D < 0.
    pub fn arch_factors(&self, bits: u32) -> Vec<QInterval> {
        if self.d.is_negative() {
            vec![QInterval::point(self.norm())]
        } else {
            self.real_embeddings(bits).map(|e| e.abs()).to_vec()
        }
    }

    /// Approximate logs of the archimedean absolute values |alpha|_v
    /// (not raised to d_v), one per place.
    pub fn arch_logs(&self) -> Vec<f64> {
        if self.d.is_negative() {
            let n = self.norm();
            vec![super::interval::ln_rational(&n.abs()) / 2.0]
        } else {
            self.real_embeddings(EMBED_BITS)
                .iter()
                .map(|e| {
                    let a = e.abs();
                    debug_assert!(!a.contains_zero());
                    a.ln_f64()
                })
                .collect()
        }
    }
}

//! Integral binary quadratic forms: reduction (both signs of the
//! discriminant), Gauss composition, and prime forms.

use crate::arith::{isqrt64, kronecker, sqrt_mod_prime, Discriminant};
use crate::error::Error;
use crate::Result;

/// Form (a, b, c) representing a*x^2 + b*x*y + c*y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    /// Validates that the discriminant is a legal (nonsquare, 0/1 mod 4)
    /// value and that definite forms are positive definite.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = QuadForm { a, b, c };
        let d = f.discriminant();
        if d >= i64::MAX as i128 || d <= i64::MIN as i128 {
            return Err(Error::Range("form discriminant overflows i64".into()));
        }
        Discriminant::new(d as i64)?;
        if d < 0 && a <= 0 {
            return Err(Error::Validation(
                "definite form must have a > 0".into(),
            ));
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> i128 {
        self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128
    }

    fn check_disc(&self, d: Discriminant) -> Result<()> {
        if self.discriminant() != d.value() as i128 {
            return Err(Error::Validation(format!(
                "form {:?} does not have discriminant {}",
                self,
                d.value()
            )));
        }
        Ok(())
    }

    /// Opposite form; represents the inverse class.
    pub fn inverse(&self) -> QuadForm {
        QuadForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
    }
}

/// Principal form of discriminant d: the identity class.
pub fn principal_form(d: Discriminant) -> QuadForm {
    let dv = d.value();
    if dv.rem_euclid(4) == 1 {
        QuadForm {
            a: 1,
            b: 1,
            c: ((1 - dv) / 4),
        }
    } else {
        QuadForm {
            a: 1,
            b: 0,
            c: -dv / 4,
        }
    }
}

/// Whether f is reduced for its (validated) discriminant.
pub fn is_reduced(f: &QuadForm, d: Discriminant) -> bool {
    if d.is_negative() {
        let (a, b, c) = (f.a, f.b, f.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() < a && a < c))
    } else {
        is_reduced_indefinite(f.a as i128, f.b as i128, f.c as i128, d.value() as i128)
    }
}

fn is_reduced_indefinite(a: i128, b: i128, _c: i128, d: i128) -> bool {
    if b <= 0 || b * b >= d {
        return false;
    }
    let t = 2 * a.abs();
    // sqrt(d) - b < 2|a| < sqrt(d) + b, with d never a perfect square
    let lower = (t + b) * (t + b) > d;
    let upper = t - b <= 0 || (t - b) * (t - b) < d;
    lower && upper
}

/// Canonical reduced representative (d < 0) or a form on the reduced cycle
/// (d > 0). Idempotent on reduced forms.
pub fn reduce_form(f: &QuadForm, d: Discriminant) -> Result<QuadForm> {
    f.check_disc(d)?;
    if is_reduced(f, d) {
        return Ok(*f);
    }
    Ok(reduce128(f.a as i128, f.b as i128, f.c as i128, d))
}

pub(crate) fn reduce128(a: i128, b: i128, c: i128, d: Discriminant) -> QuadForm {
    if d.is_negative() {
        reduce_definite(a, b, c)
    } else {
        reduce_indefinite(a, b, c, d.value() as i128)
    }
}

fn reduce_definite(mut a: i128, mut b: i128, mut c: i128) -> QuadForm {
    loop {
        if b > a || b <= -a {
            // normalize b into (-a, a]
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            let q = (b - r) / two_a;
            // translation x -> x - q y: c' = a q^2 - b q + c
            c = a * q * q - b * q + c;
            b = r;
        }
        if a > c {
            // (a,b,c) -> (c,-b,a)
            std::mem::swap(&mut a, &mut c);
            b = -b;
        } else {
            break;
        }
    }
    if b < 0 && (b == -a || a == c) {
        b = -b;
    }
    QuadForm {
        a: a as i64,
        b: b as i64,
        c: c as i64,
    }
}

/// One rho step on an indefinite form.
pub(crate) fn rho_step(f: &QuadForm, d: Discriminant) -> QuadForm {
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let dd = d.value() as i128;
    let s = isqrt64(d.value()) as i128;
    let (na, nb, nc) = rho128(a, b, c, dd, s);
    QuadForm {
        a: na as i64,
        b: nb as i64,
        c: nc as i64,
    }
}

fn rho128(_a: i128, b: i128, c: i128, d: i128, s: i128) -> (i128, i128, i128) {
    let ca = c.abs();
    let two_c = 2 * ca;
    let r = if ca > s {
        // -b into (-|c|, |c|]
        let mut r = (-b).rem_euclid(two_c);
        if r > ca {
            r -= two_c;
        }
        r
    } else {
        // -b into [s + 1 - 2|c|, s]
        let base = s + 1 - two_c;
        (-b - base).rem_euclid(two_c) + base
    };
    (c, r, (r * r - d) / (4 * c))
}

fn reduce_indefinite(mut a: i128, mut b: i128, mut c: i128, d: i128) -> QuadForm {
    let s = (d as u128).isqrt() as i128;
    // normalize first so coefficient growth stays bounded
    for _ in 0..256 {
        if is_reduced_indefinite(a, b, c, d) {
            return QuadForm {
                a: a as i64,
                b: b as i64,
                c: c as i64,
            };
        }
        let (na, nb, nc) = rho128(a, b, c, d, s);
        (a, b, c) = (na, nb, nc);
    }
    unreachable!("indefinite reduction did not terminate");
}

/// Gauss composition of primitive forms of equal discriminant, reduced.
///
/// The principal form acts as identity and compose(f, f.inverse()) is
/// principal.
pub fn compose(f: &QuadForm, g: &QuadForm, d: Discriminant) -> Result<QuadForm> {
    f.check_disc(d)?;
    g.check_disc(d)?;
    let mut f1 = (f.a as i128, f.b as i128, f.c as i128);
    let mut f2 = (g.a as i128, g.b as i128, g.c as i128);
    if !d.is_negative() {
        // composition below assumes positive leading coefficients
        f1 = positive_lead(f1, d);
        f2 = positive_lead(f2, d);
    }
    let (a3, b3, c3) = compose_raw(f1, f2);
    Ok(reduce128(a3, b3, c3, d))
}

fn positive_lead(t: (i128, i128, i128), d: Discriminant) -> (i128, i128, i128) {
    let (a, b, c) = t;
    if a > 0 {
        return t;
    }
    if c > 0 {
        // (x, y) -> (-y, x)
        return (c, -b, a);
    }
    // walk the reduction orbit until a representative with a > 0 appears;
    // reduced indefinite forms alternate the sign of a
    let red = reduce128(a, b, c, d);
    if red.a > 0 {
        (red.a as i128, red.b as i128, red.c as i128)
    } else {
        (red.c as i128, -red.b as i128, red.a as i128)
    }
}

fn compose_raw(f1: (i128, i128, i128), f2: (i128, i128, i128)) -> (i128, i128, i128) {
    let ((a1, b1, _c1), (a2, b2, c2)) = if f1.0 > f2.0 { (f2, f1) } else { (f1, f2) };
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d0) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let (g, u, _v) = crate::arith::extgcd_i128(a2, a1);
        (u, g)
    };
    let (x2, y2, d1) = if s % d0 == 0 {
        (0, -1, d0)
    } else {
        let (g, u, v) = crate::arith::extgcd_i128(s, d0);
        (u, -v, g)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    (a3, b3, c3)
}

/// Form of norm p when p is split or ramified in the field of discriminant
/// d; None when p is inert.
pub fn prime_form(d: Discriminant, p: u64) -> Option<QuadForm> {
    let dv = d.value();
    if kronecker(dv, p) == -1 {
        return None;
    }
    let b = if p == 2 {
        match dv.rem_euclid(8) {
            1 => 1i64,
            0 => 0,
            4 => 2,
            _ => return None, // 5 mod 8 is inert
        }
    } else {
        let r = sqrt_mod_prime(dv.rem_euclid(p as i64) as u64, p)? as i64;
        // match parity of d so b^2 = d mod 4p
        if r.rem_euclid(2) == dv.rem_euclid(2) {
            r
        } else {
            (p as i64 - r).rem_euclid(2 * p as i64)
        }
    };
    let c = ((b as i128 * b as i128 - dv as i128) / (4 * p as i128)) as i64;
    Some(QuadForm {
        a: p as i64,
        b,
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn reduce_already_reduced() {
        let dm23 = d(-23);
        let f = QuadForm::new(1, 1, 6).unwrap();
        assert_eq!(reduce_form(&f, dm23).unwrap(), f);
    }

    #[test]
    fn reduce_example_d_minus_11() {
        let dm11 = d(-11);
        let f = QuadForm::new(3, 7, 5).unwrap();
        assert_eq!(f.discriminant(), -11);
        let r = reduce_form(&f, dm11).unwrap();
        assert_eq!(r, QuadForm { a: 1, b: 1, c: 3 });
    }

    #[test]
    fn reduce_preserves_reduced_opposite() {
        let dm23 = d(-23);
        let f = QuadForm::new(2, -1, 3).unwrap();
        assert_eq!(reduce_form(&f, dm23).unwrap(), f);
    }

    #[test]
    fn compose_identity_law() {
        let dm23 = d(-23);
        let e = principal_form(dm23);
        for g in [
            QuadForm::new(2, 1, 3).unwrap(),
            QuadForm::new(2, -1, 3).unwrap(),
            QuadForm::new(1, 1, 6).unwrap(),
        ] {
            assert_eq!(compose(&e, &g, dm23).unwrap(), reduce_form(&g, dm23).unwrap());
        }
    }

    #[test]
    fn compose_cyclic_order_three() {
        let dm23 = d(-23);
        let g = QuadForm::new(2, 1, 3).unwrap();
        let g2 = compose(&g, &g, dm23).unwrap();
        assert_eq!(g2, QuadForm { a: 2, b: -1, c: 3 });
        let g3 = compose(&g, &g2, dm23).unwrap();
        assert_eq!(g3, principal_form(dm23));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let dm23 = d(-23);
        let f = QuadForm::new(1, 1, 6).unwrap();
        let g = QuadForm::new(1, 1, 3).unwrap(); // discriminant -11
        assert!(compose(&f, &g, dm23).is_err());
    }

    #[test]
    fn indefinite_reduction_lands_on_cycle() {
        let d40 = d(40);
        let f = QuadForm::new(1, 6, -1).unwrap();
        let r = reduce_form(&f, d40).unwrap();
        assert!(is_reduced(&r, d40));
        // rho cycles stay reduced
        let mut cur = r;
        for _ in 0..20 {
            cur = rho_step(&cur, d40);
            assert!(is_reduced(&cur, d40), "{cur:?}");
        }
    }

    #[test]
    fn prime_forms_have_right_norm_and_disc() {
        for dv in [-23i64, -4, -47, 5, 8, 40, 229] {
            let dd = d(dv);
            for p in crate::arith::primes_up_to(60) {
                if let Some(f) = prime_form(dd, p) {
                    assert_eq!(f.a as u64, p);
                    assert_eq!(f.discriminant(), dv as i128);
                } else {
                    assert_eq!(kronecker(dv, p), -1);
                }
            }
        }
    }
}

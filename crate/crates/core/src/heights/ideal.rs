//! Integral ideals of quadratic orders in Hermite normal form
//! g * [a, b + omega], with multiplication, prime ideals, element
//! valuations, and generator construction through the reduction walk.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::element::FieldElement;
use crate::arith::{isqrt64, kronecker, sqrt_mod_prime, Discriminant};
use crate::classgroup::QuadForm;
use crate::error::Error;
use crate::Result;

/// Integral ideal g * [a, b + omega] with 0 <= b < a.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    d: Discriminant,
    g: i128,
    a: i128,
    b: i128,
}

/// A degree-one or ramified prime ideal [p, b + omega], named by (p, b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub p: u64,
    pub b: u64,
}

impl Ideal {
    pub fn ring(d: Discriminant) -> Ideal {
        Ideal { d, g: 1, a: 1, b: 0 }
    }

    pub fn discriminant(&self) -> Discriminant {
        self.d
    }

    pub fn norm(&self) -> i128 {
        self.g * self.g * self.a
    }

    pub fn is_ring(&self) -> bool {
        self.g == 1 && self.a == 1
    }

    /// Ideal from HNF data; b is reduced mod a, content must be positive.
    fn from_parts(d: Discriminant, g: i128, a: i128, b: i128) -> Ideal {
        debug_assert!(g > 0 && a > 0);
        let b = b.rem_euclid(a);
        debug_assert_eq!(
            (b * b + d.omega_trace() as i128 * b + d.omega_norm() as i128).rem_euclid(a),
            0,
            "b + omega does not lie in a valid ideal"
        );
        Ideal { d, g, a, b }
    }

    pub fn from_prime(d: Discriminant, p: PrimeIdeal) -> Ideal {
        Ideal::from_parts(d, 1, p.p as i128, p.b as i128)
    }

    /// Principal ideal of an integral element.
    pub fn from_element(alpha: &FieldElement) -> Result<Ideal> {
        if alpha.is_zero() {
            return Err(Error::Domain("zero generates no ideal".into()));
        }
        if !alpha.is_integral() {
            return Err(Error::Validation("element is not integral".into()));
        }
        let d = alpha.discriminant();
        let (x, y) = alpha.coords();
        let x = big_to_i128(&x.to_integer())?;
        let y = big_to_i128(&y.to_integer())?;
        let t = d.omega_trace() as i128;
        let n = d.omega_norm() as i128;
        // alpha * 1 and alpha * omega as rows
        let rows = [(x, y), (-y * n, x + y * t)];
        let (g, a, b) = hnf_2d(&rows)?;
        Ok(Ideal::from_parts(d, g, a, b))
    }

    pub fn mul(&self, o: &Ideal) -> Result<Ideal> {
        debug_assert_eq!(self.d, o.d);
        let t = self.d.omega_trace() as i128;
        let n = self.d.omega_norm() as i128;
        let (a1, b1) = (self.a, self.b);
        let (a2, b2) = (o.a, o.b);
        let rows = [
            (a1 * a2, 0),
            (a1 * b2, a1),
            (a2 * b1, a2),
            (b1 * b2 - n, b1 + b2 + t),
        ];
        let (g, a, b) = hnf_2d(&rows)?;
        let out = Ideal::from_parts(self.d, g * self.g * o.g, a, b);
        debug_assert_eq!(out.norm(), self.norm() * o.norm());
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Ideal> {
        let mut acc = Ideal::ring(self.d);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            if e > 1 {
                base = base.mul(&base)?;
            }
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn conj(&self) -> Ideal {
        let t = self.d.omega_trace() as i128;
        Ideal::from_parts(self.d, self.g, self.a, (-self.b - t).rem_euclid(self.a))
    }

    /// gcd (sum) of two ideals.
    pub fn gcd(&self, o: &Ideal) -> Result<Ideal> {
        debug_assert_eq!(self.d, o.d);
        let rows = [
            (self.g * self.a, 0),
            (self.g * self.b, self.g),
            (o.g * o.a, 0),
            (o.g * o.b, o.g),
        ];
        let (g, a, b) = hnf_2d(&rows)?;
        Ok(Ideal::from_parts(self.d, g, a, b))
    }

    /// Binary quadratic form attached to the primitive part.
    pub fn form(&self) -> QuadForm {
        let t = self.d.omega_trace() as i128;
        let bb = -(2 * self.b + t);
        let c = (bb * bb - self.d.value() as i128) / (4 * self.a);
        QuadForm {
            a: self.a as i64,
            b: bb as i64,
            c: c as i64,
        }
    }

    /// Whether an integral element lies in the ideal.
    pub fn contains(&self, alpha: &FieldElement) -> bool {
        if !alpha.is_integral() {
            return false;
        }
        let (x, y) = alpha.coords();
        let x = x.to_integer();
        let y = y.to_integer();
        let g = BigInt::from(self.g);
        if !(&y % (&g * BigInt::from(1))).is_zero() {
            return false;
        }
        // alpha = x + y omega in g[a, b+omega]: need g | y and
        // a*g | x - (y/g)*b*g i.e. x = g*(u*a + v*b), y = g*v
        let v = &y / &g;
        let rem = (&x - &v * BigInt::from(self.b) * &g) % (BigInt::from(self.a) * &g);
        rem.is_zero()
    }
}

fn big_to_i128(n: &BigInt) -> Result<i128> {
    i128::try_from(n.clone()).map_err(|_| Error::Range("ideal coordinate exceeds i128".into()))
}

/// HNF of a rank-2 module in the (1, omega) basis: returns (content g,
/// primitive a, primitive b) with the module equal to g*[a, b + omega].
fn hnf_2d(rows: &[(i128, i128)]) -> Result<(i128, i128, i128)> {
    let mut pure_x: i128 = 0;
    let mut gen2: (i128, i128) = (0, 0);
    for &(x, y) in rows {
        if y == 0 {
            pure_x = crate::arith::gcd_i128(pure_x, x);
            continue;
        }
        if gen2.1 == 0 {
            gen2 = (x, y);
            continue;
        }
        let (g, u, v) = crate::arith::extgcd_i128(gen2.1, y);
        let leftover = x
            .checked_mul(gen2.1 / g)
            .and_then(|t| (gen2.0.checked_mul(y / g)).map(|s| t - s))
            .ok_or_else(|| Error::Range("ideal HNF overflow".into()))?;
        pure_x = crate::arith::gcd_i128(pure_x, leftover);
        gen2 = (u * gen2.0 + v * x, g);
    }
    if gen2.1 == 0 || pure_x == 0 {
        return Err(Error::Validation("module is not full rank".into()));
    }
    let g = gen2.1.abs();
    let a_full = pure_x.abs();
    debug_assert_eq!(a_full % g, 0);
    let a = a_full / g;
    let b = (gen2.0 * gen2.1.signum() / g).rem_euclid(a);
    Ok((g, a, b))
}

/// Prime ideals above p: two for split p, one for ramified p, none for
/// inert p. Roots b of b^2 + t b + n = 0 mod p, ascending.
pub fn prime_ideals_above(d: Discriminant, p: u64) -> Vec<PrimeIdeal> {
    let dv = d.value();
    match kronecker(dv, p) {
        -1 => Vec::new(),
        _ => {
            let t = d.omega_trace();
            let n = d.omega_norm();
            if p == 2 {
                let mut out: Vec<PrimeIdeal> = (0u64..2)
                    .filter(|&b| {
                        let b = b as i64;
                        (b * b + t * b + n).rem_euclid(2) == 0
                    })
                    .map(|b| PrimeIdeal { p, b })
                    .collect();
                out.dedup();
                return out;
            }
            let r = match sqrt_mod_prime(dv.rem_euclid(p as i64) as u64, p) {
                Some(r) => r,
                None => return Vec::new(),
            };
            let inv2 = crate::arith::mod_pow(2, p - 2, p);
            let tm = (-(t as i64)).rem_euclid(p as i64) as u64;
            let mut roots: Vec<u64> = [r, p - r]
                .iter()
                .map(|&root| ((tm + root) % p * inv2) % p)
                .collect();
            roots.sort_unstable();
            roots.dedup();
            roots.into_iter().map(|b| PrimeIdeal { p, b }).collect()
        }
    }
}

/// Conjugate prime: the other root over the same p (itself if ramified).
pub fn conj_prime(d: Discriminant, pr: PrimeIdeal) -> PrimeIdeal {
    let t = d.omega_trace();
    let b = (-(pr.b as i64) - t).rem_euclid(pr.p as i64) as u64;
    PrimeIdeal { p: pr.p, b }
}

/// One prime-power factor of a fractional ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: PrimeIdeal,
    pub exp: i64,
    /// absolute norm of the prime ideal
    pub norm: u128,
    /// true when e = f = 1 (split prime)
    pub degree_one: bool,
}

/// Exact factorization of the fractional ideal generated by a nonzero
/// element.
pub fn factor_fractional(alpha: &FieldElement) -> Result<Vec<PrimePower>> {
    if alpha.is_zero() {
        return Err(Error::Domain("zero has no ideal factorization".into()));
    }
    let d = alpha.discriminant();
    let (x, y) = alpha.coords();
    let t_den = num_integer::lcm(x.denom().clone(), y.denom().clone());
    let xx = (x * BigRational::from(t_den.clone())).to_integer();
    let yy = (y * BigRational::from(t_den.clone())).to_integer();
    let tr = BigInt::from(d.omega_trace());
    let nm = BigInt::from(d.omega_norm());
    let norm_int = (&xx * &xx + &xx * &yy * &tr + &yy * &yy * &nm).abs();
    let n_u128 = u128::try_from(norm_int.clone())
        .map_err(|_| Error::Range("element norm exceeds factorable range".into()))?;
    let t_u128 = u128::try_from(t_den.clone())
        .map_err(|_| Error::Range("denominator exceeds factorable range".into()))?;

    let mut primes: Vec<u64> = Vec::new();
    for &(p, _) in crate::arith::factorize(n_u128)?.pairs() {
        primes.push(u64::try_from(p).map_err(|_| Error::Range("prime too large".into()))?);
    }
    for &(p, _) in crate::arith::factorize(t_u128)?.pairs() {
        let p = u64::try_from(p).map_err(|_| Error::Range("prime too large".into()))?;
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();

    let mut out = Vec::new();
    for p in primes {
        let vt = val_int(&t_den, p);
        let sym = kronecker(d.value(), p);
        let ideals = prime_ideals_above(d, p);
        match sym {
            1 => {
                let (v1, v2) = split_valuations(d, &xx, &yy, p, &ideals);
                for (pr, v_beta, v_other) in
                    [(ideals[0], v1, v2), (ideals[1], v2, v1)]
                {
                    let _ = v_other;
                    let e = v_beta - vt;
                    if e != 0 {
                        out.push(PrimePower {
                            prime: pr,
                            exp: e,
                            norm: p as u128,
                            degree_one: true,
                        });
                    }
                }
            }
            -1 => {
                let c = content_val(&xx, &yy, p);
                let e = c - vt;
                if e != 0 {
                    out.push(PrimePower {
                        prime: PrimeIdeal { p, b: 0 },
                        exp: e,
                        norm: (p as u128) * (p as u128),
                        degree_one: false,
                    });
                }
            }
            _ => {
                let c = content_val(&xx, &yy, p);
                let pr = ideals[0];
                let xr = &xx / BigInt::from(p).pow(c as u32);
                let yr = &yy / BigInt::from(p).pow(c as u32);
                let in_p = in_prime(&xr, &yr, p, pr.b);
                let e = 2 * c + i64::from(in_p) - 2 * vt;
                if e != 0 {
                    out.push(PrimePower {
                        prime: pr,
                        exp: e,
                        norm: p as u128,
                        degree_one: false,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn val_int(n: &BigInt, p: u64) -> i64 {
    if n.is_zero() {
        return i64::MAX / 4;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn content_val(x: &BigInt, y: &BigInt, p: u64) -> i64 {
    val_int(x, p).min(val_int(y, p))
}

fn in_prime(x: &BigInt, y: &BigInt, p: u64, b: u64) -> bool {
    // residue x - b*y mod p in O/P = F_p (omega = -b there)
    let pb = BigInt::from(p);
    ((x - BigInt::from(b) * y) % pb).is_zero()
}

/// Valuations of the integral element (x, y) at the two split primes.
fn split_valuations(
    d: Discriminant,
    x: &BigInt,
    y: &BigInt,
    p: u64,
    ideals: &[PrimeIdeal],
) -> (i64, i64) {
    debug_assert_eq!(ideals.len(), 2);
    let c = content_val(x, y, p);
    let pk = BigInt::from(p).pow(c as u32);
    let xr = x / &pk;
    let yr = y / &pk;
    let tr = BigInt::from(d.omega_trace());
    let nm = BigInt::from(d.omega_norm());
    let norm_red = (&xr * &xr + &xr * &yr * &tr + &yr * &yr * &nm).abs();
    let e = val_int(&norm_red, p);
    if e == 0 {
        return (c, c);
    }
    if in_prime(&xr, &yr, p, ideals[0].b) {
        debug_assert!(!in_prime(&xr, &yr, p, ideals[1].b));
        (c + e, c)
    } else {
        debug_assert!(in_prime(&xr, &yr, p, ideals[1].b));
        (c, c + e)
    }
}

/// Reduction walk with exact multiplier tracking. Maps an ideal to its
/// wide-principal generator when one exists.
pub struct ReductionWalk {
    d: Discriminant,
    sqrt_d: i64,
}

struct WalkState {
    /// primitive ideal coordinates: [a, (bb + sqrt D)/2]
    a: i128,
    bb: i128,
    /// multiplier m with current = m * original
    mult: FieldElement,
}

impl ReductionWalk {
    pub fn new(d: Discriminant) -> Self {
        ReductionWalk {
            d,
            sqrt_d: if d.is_negative() { 0 } else { isqrt64(d.value()) },
        }
    }

    fn omega_bb(&self) -> i128 {
        // bb coordinate of the ring ideal [1, omega]: B = t
        self.d.omega_trace() as i128
    }

    /// One reduction step; mutates the state in place.
    fn step(&self, st: &mut WalkState) {
        let dd = self.d.value() as i128;
        let a = st.a;
        let two_a = 2 * a;
        let p = if self.d.is_negative() || a > self.sqrt_d as i128 {
            // bb into (-a, a]
            let mut r = st.bb.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            r
        } else {
            let s = self.sqrt_d as i128;
            let base = s + 1 - two_a;
            (st.bb - base).rem_euclid(two_a) + base
        };
        let c = (dd - p * p) / (4 * a);
        debug_assert!(c != 0);
        let a1 = c.abs();
        // multiplier sign(c) * (sqrt(D) - p) / (2a) with sqrt(D) = 2 omega - t
        let t = self.d.omega_trace() as i128;
        let num = FieldElement::new(
            self.d,
            BigRational::new(BigInt::from(-p - t), BigInt::from(2 * a)),
            BigRational::new(BigInt::from(2), BigInt::from(2 * a)),
        );
        let m = if c < 0 {
            num.neg()
        } else {
            num
        };
        st.mult = st.mult.mul(&m);
        st.a = a1;
        st.bb = (-p).rem_euclid(2 * a1);
    }

    fn is_reduced(&self, a: i128, bb: i128) -> bool {
        let f = self.form_of(a, bb);
        crate::classgroup::is_reduced(&f, self.d)
    }

    fn form_of(&self, a: i128, bb: i128) -> QuadForm {
        let dv = self.d.value() as i128;
        let b = -bb;
        QuadForm {
            a: a as i64,
            b: b as i64,
            c: ((b * b - dv) / (4 * a)) as i64,
        }
    }

    /// Canonical (a, bb) of a reduced ideal, with bb in the reduced window.
    fn canonical(&self, a: i128, bb: i128) -> (i128, i128) {
        if self.d.is_negative() {
            let mut r = bb.rem_euclid(2 * a);
            if r > a {
                r -= 2 * a;
            }
            (a, r)
        } else {
            let s = self.sqrt_d as i128;
            let base = s + 1 - 2 * a;
            (a, (bb - base).rem_euclid(2 * a) + base)
        }
    }

    /// Generator of the ideal when it is principal in the ordinary sense.
    ///
    /// Errors with the class index when not principal.
    pub fn generator(
        &self,
        ideal: &Ideal,
        class_index: impl Fn(QuadForm) -> usize,
    ) -> Result<FieldElement> {
        debug_assert_eq!(ideal.discriminant(), self.d);
        // work with the primitive part; content multiplies back in
        let mut st = WalkState {
            a: ideal.a,
            bb: 2 * ideal.b + self.d.omega_trace() as i128,
            mult: FieldElement::one(self.d),
        };
        let target = self.canonical(1, self.omega_bb());
        let mut seen: HashMap<(i128, i128), ()> = HashMap::new();
        for _ in 0..100_000 {
            if self.is_reduced(st.a, st.bb) {
                let key = self.canonical(st.a, st.bb);
                if key == target {
                    // current = mult * original = O, so original = (1/mult)
                    let gen = st.mult.inverse()?;
                    let content = BigRational::from(BigInt::from(ideal.g));
                    return Ok(gen.scale(&content));
                }
                if seen.insert(key, ()).is_some() {
                    return Err(Error::NonPrincipal {
                        class_index: class_index(self.form_of(st.a, st.bb)),
                    });
                }
                if self.d.is_negative() {
                    // unique reduced representative; not the ring, so done
                    return Err(Error::NonPrincipal {
                        class_index: class_index(self.form_of(st.a, st.bb)),
                    });
                }
            }
            self.step(&mut st);
        }
        unreachable!("reduction walk did not terminate");
    }
}

//! Fundamental discriminants of quadratic fields.

use super::factor::factorize;
use super::sieve::squarefree_flags;
use crate::error::Error;
use crate::Result;

/// Discriminant of a binary quadratic form or quadratic field.
///
/// `value` is congruent to 0 or 1 mod 4 and is never a perfect square, so
/// every valid value identifies a quadratic field (of conductor >= 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant {
    value: i64,
    is_fundamental: bool,
}

/// Which sign of discriminant a family window should include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFilter {
    Negative,
    Positive,
    Both,
}

impl Discriminant {
    /// Validates the congruence and non-square conditions and records
    /// whether the value is fundamental.
    pub fn new(value: i64) -> Result<Self> {
        if value == 0 {
            return Err(Error::Validation("discriminant must be nonzero".into()));
        }
        let m4 = value.rem_euclid(4);
        if m4 != 0 && m4 != 1 {
            return Err(Error::Validation(format!(
                "discriminant {value} is not 0 or 1 mod 4"
            )));
        }
        if value > 0 {
            let r = (value as u64).isqrt() as i64;
            if r * r == value {
                return Err(Error::Validation(format!(
                    "discriminant {value} is a perfect square"
                )));
            }
        }
        Ok(Discriminant {
            value,
            is_fundamental: is_fundamental_value(value),
        })
    }

    /// Like `new` but additionally requires fundamentality.
    pub fn fundamental(value: i64) -> Result<Self> {
        let d = Self::new(value)?;
        if !d.is_fundamental {
            return Err(Error::Validation(format!("{value} is not fundamental")));
        }
        Ok(d)
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn is_fundamental(&self) -> bool {
        self.is_fundamental
    }

    /// |D|, the absolute discriminant of the field.
    pub fn abs(&self) -> u64 {
        self.value.unsigned_abs()
    }

    pub fn is_negative(&self) -> bool {
        self.value < 0
    }

    /// Trace of the canonical integral generator omega.
    pub(crate) fn omega_trace(&self) -> i64 {
        if self.value.rem_euclid(4) == 1 {
            1
        } else {
            0
        }
    }

    /// Norm of omega: (1 - D)/4 for odd D, -D/4 for even D.
    pub(crate) fn omega_norm(&self) -> i64 {
        if self.value.rem_euclid(4) == 1 {
            (1 - self.value) / 4
        } else {
            -self.value / 4
        }
    }

    /// Number of roots of unity in the field (imaginary case), 2 otherwise.
    pub fn unit_count(&self) -> u32 {
        match self.value {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

fn is_fundamental_value(d: i64) -> bool {
    if d == 1 {
        return false;
    }
    let m4 = d.rem_euclid(4);
    if m4 == 1 {
        squarefree(d.unsigned_abs())
    } else if m4 == 0 {
        let m = d / 4;
        let mm4 = m.rem_euclid(4);
        (mm4 == 2 || mm4 == 3) && squarefree(m.unsigned_abs())
    } else {
        false
    }
}

fn squarefree(n: u64) -> bool {
    factorize(n as u128)
        .map(|f| f.is_squarefree())
        .unwrap_or(false)
}

/// Fundamental discriminants with |D| in the half-open window (lo, hi],
/// ascending by |D| with the negative one first at equal |D|.
///
/// An empty interval yields an empty list.
pub fn fundamental_discriminants(lo: u64, hi: u64, sign: SignFilter) -> Vec<Discriminant> {
    if hi <= lo {
        return Vec::new();
    }
    let flags = squarefree_flags(lo, hi);
    let sf = |n: u64| -> bool {
        if n <= lo || n > hi {
            // only consulted for n/4 below the window floor
            return squarefree(n);
        }
        flags[(n - lo - 1) as usize]
    };
    let mut out = Vec::new();
    for n in (lo + 1)..=hi {
        if n < 3 {
            continue;
        }
        // negative candidate -n
        if matches!(sign, SignFilter::Negative | SignFilter::Both) {
            let fundamental = match n % 4 {
                3 => sf(n),
                0 => {
                    let m = n / 4;
                    // -n/4 = -m must be 2 or 3 mod 4, i.e. m = 1 or 2 mod 4
                    (m % 4 == 1 || m % 4 == 2) && sf_small(m, lo, hi, &flags)
                }
                _ => false,
            };
            if fundamental {
                out.push(Discriminant {
                    value: -(n as i64),
                    is_fundamental: true,
                });
            }
        }
        // positive candidate +n
        if matches!(sign, SignFilter::Positive | SignFilter::Both) {
            let fundamental = match n % 4 {
                1 => sf(n),
                0 => {
                    let m = n / 4;
                    (m % 4 == 2 || m % 4 == 3) && sf_small(m, lo, hi, &flags)
                }
                _ => false,
            };
            if fundamental {
                out.push(Discriminant {
                    value: n as i64,
                    is_fundamental: true,
                });
            }
        }
    }
    out
}

fn sf_small(m: u64, lo: u64, hi: u64, flags: &[bool]) -> bool {
    if m > lo && m <= hi {
        flags[(m - lo - 1) as usize]
    } else {
        squarefree(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_3_6_both() {
        let got: Vec<i64> = fundamental_discriminants(3, 6, SignFilter::Both)
            .iter()
            .map(|d| d.value())
            .collect();
        assert_eq!(got, vec![-4, 5]);
    }

    #[test]
    fn window_0_3_both() {
        let got: Vec<i64> = fundamental_discriminants(0, 3, SignFilter::Both)
            .iter()
            .map(|d| d.value())
            .collect();
        assert_eq!(got, vec![-3]);
    }

    #[test]
    fn window_3_6_positive() {
        let got: Vec<i64> = fundamental_discriminants(3, 6, SignFilter::Positive)
            .iter()
            .map(|d| d.value())
            .collect();
        assert_eq!(got, vec![5]);
    }

    #[test]
    fn empty_window_is_empty() {
        assert!(fundamental_discriminants(10, 10, SignFilter::Both).is_empty());
        assert!(fundamental_discriminants(10, 5, SignFilter::Both).is_empty());
    }

    #[test]
    fn matches_definition_exhaustively() {
        // check against a per-value fundamentality test on a moderate window
        let listed: Vec<i64> = fundamental_discriminants(0, 400, SignFilter::Both)
            .iter()
            .map(|d| d.value())
            .collect();
        let mut expect = Vec::new();
        for n in 1i64..=400 {
            for v in [-n, n] {
                if v.rem_euclid(4) <= 1 && Discriminant::new(v).is_ok_and(|d| d.is_fundamental())
                {
                    expect.push(v);
                }
            }
        }
        expect.sort_by_key(|v| (v.abs(), *v));
        assert_eq!(listed, expect);
    }

    #[test]
    fn invariants_hold_for_emitted() {
        for d in fundamental_discriminants(0, 2000, SignFilter::Both) {
            let v = d.value();
            let m4 = v.rem_euclid(4);
            assert!(m4 == 0 || m4 == 1);
            if m4 == 1 {
                assert!(factorize(v.unsigned_abs() as u128).unwrap().is_squarefree());
            } else {
                let m = v / 4;
                let mm = m.rem_euclid(4);
                assert!(mm == 2 || mm == 3);
                assert!(factorize(m.unsigned_abs() as u128).unwrap().is_squarefree());
            }
        }
    }

    #[test]
    fn dyadic_window_ratio_stabilizes() {
        // density of fundamental discriminants is positive and roughly
        // constant, so consecutive dyadic counts have ratio near 2
        let mut prev = fundamental_discriminants(0, 10_000, SignFilter::Both).len() as f64;
        for k in 1..=3 {
            let hi = 10_000u64 << k;
            let cur = fundamental_discriminants(0, hi, SignFilter::Both).len() as f64;
            let ratio = cur / prev;
            assert!((1.8..=2.2).contains(&ratio), "ratio {ratio}");
            prev = cur;
        }
    }

    #[test]
    fn constructor_rejects_bad_values() {
        assert!(Discriminant::new(0).is_err());
        assert!(Discriminant::new(2).is_err());
        assert!(Discriminant::new(3).is_err());
        assert!(Discriminant::new(9).is_err());
        assert!(Discriminant::new(16).is_err());
        assert!(Discriminant::fundamental(-8).is_ok());
        assert!(Discriminant::fundamental(-12).is_err());
        assert!(Discriminant::new(-12).unwrap().is_fundamental() == false);
    }
}

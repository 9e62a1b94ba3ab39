//! Ideal class groups of quadratic fields computed through binary quadratic
//! forms: reduction, composition, exact group structure, torsion counts,
//! and an analytic cross-check of the class number.

mod analytic;
mod form;
mod group;

pub use analytic::{analytic_check, AnalyticEstimate};
pub use form::{compose, is_reduced, prime_form, principal_form, reduce_form, QuadForm};
pub use group::{
    enumerate_definite_reduced, enumerate_indefinite_reduced, ClassTables, FormGroup,
};

use crate::arith::Discriminant;
use crate::error::Error;
use crate::Result;

/// Elementary-divisor decomposition of the ordinary class group, plus the
/// narrow/wide bookkeeping for real fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupStructure {
    pub discriminant: Discriminant,
    /// ordinary class number
    pub h: u64,
    /// d_1 | d_2 | ... | d_t with product h, each >= 2
    pub elementary_divisors: Vec<u64>,
    pub narrow_order: u64,
    /// norm of the fundamental unit; None for imaginary fields
    pub unit_norm: Option<i8>,
}

impl ClassGroupStructure {
    fn validate(&self) -> Result<()> {
        let mut prod = 1u64;
        let mut prev = 1u64;
        for &d in &self.elementary_divisors {
            if d < 2 || d % prev != 0 {
                return Err(Error::Validation(format!(
                    "bad elementary divisors {:?}",
                    self.elementary_divisors
                )));
            }
            prev = d;
            prod *= d;
        }
        if prod != self.h {
            return Err(Error::Validation("divisor product != h".into()));
        }
        let ok = if self.discriminant.is_negative() {
            self.narrow_order == self.h && self.unit_norm.is_none()
        } else {
            match self.unit_norm {
                Some(-1) => self.narrow_order == self.h,
                Some(1) => self.narrow_order == 2 * self.h,
                _ => false,
            }
        };
        if !ok {
            return Err(Error::Validation("narrow/wide relation violated".into()));
        }
        Ok(())
    }
}

/// Exact class group structure of a fundamental discriminant.
pub fn class_group(d: Discriminant, tables: &ClassTables) -> Result<ClassGroupStructure> {
    let g = FormGroup::new(d, tables)?;
    structure_of(&g)
}

/// Structure from an already-built group.
pub fn structure_of(g: &FormGroup) -> Result<ClassGroupStructure> {
    let h = g.order();
    let mut sylow: Vec<(u64, Vec<u32>)> = Vec::new();
    if h > 1 {
        for &(q, k) in crate::arith::factorize(h as u128)?.pairs() {
            sylow.push((q as u64, g.sylow_exponents(q as u64, k)));
        }
    }
    let divisors = invariant_factors(&sylow);
    let s = ClassGroupStructure {
        discriminant: g.discriminant(),
        h,
        elementary_divisors: divisors,
        narrow_order: g.narrow_order(),
        unit_norm: g.unit_norm(),
    };
    s.validate()?;
    Ok(s)
}

fn invariant_factors(sylow: &[(u64, Vec<u32>)]) -> Vec<u64> {
    let t = sylow.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1u64; t];
    for (q, exps) in sylow {
        // exps ascending; align the largest q-power with the largest factor
        let pad = t - exps.len();
        for (i, &e) in exps.iter().enumerate() {
            out[pad + i] *= q.pow(e);
        }
    }
    out
}

/// |Cl_K[l]| from the elementary divisors: product of gcd(l, d_i).
pub fn torsion_count(s: &ClassGroupStructure, ell: u64) -> Result<u64> {
    if ell < 2 {
        return Err(Error::Domain(format!("torsion index {ell} < 2")));
    }
    Ok(s.elementary_divisors
        .iter()
        .map(|&d| num_integer::gcd(ell, d))
        .product())
}

/// |Cl_K[l]| computed directly from a group, touching only the Sylow
/// subgroups at primes shared by l and h. Faster than a full structure
/// resolution in census loops.
pub fn ell_torsion(g: &FormGroup, ell: u64) -> Result<u64> {
    if ell < 2 {
        return Err(Error::Domain(format!("torsion index {ell} < 2")));
    }
    let h = g.order();
    if h == 1 {
        return Ok(1);
    }
    let mut total = 1u64;
    for &(q, a) in crate::arith::factorize(ell as u128)?.pairs() {
        let q = q as u64;
        let mut k = 0u32;
        let mut m = h;
        while m % q == 0 {
            m /= q;
            k += 1;
        }
        if k == 0 {
            continue;
        }
        for e in g.sylow_exponents(q, k) {
            total *= q.pow(e.min(a));
        }
    }
    Ok(total)
}

/// Per-field context shared by the height and fiber-map machinery: the
/// group with its canonical class list.
pub struct ClassContext {
    pub group: FormGroup,
    pub structure: ClassGroupStructure,
}

impl ClassContext {
    pub fn new(d: Discriminant, tables: &ClassTables) -> Result<Self> {
        let group = FormGroup::new(d, tables)?;
        let structure = structure_of(&group)?;
        Ok(ClassContext { group, structure })
    }

    pub fn discriminant(&self) -> Discriminant {
        self.group.discriminant()
    }

    /// Index of a class in the pinned representative list.
    pub fn class_index(&self, c: QuadForm) -> usize {
        self.group
            .classes()
            .binary_search(&c)
            .expect("canonical class")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(v: i64) -> ClassContext {
        let d = Discriminant::fundamental(v).unwrap();
        let tables = ClassTables::for_abs_disc(d.abs());
        ClassContext::new(d, &tables).unwrap()
    }

    #[test]
    fn structure_d_minus_23() {
        let s = ctx(-23).structure;
        assert_eq!(s.h, 3);
        assert_eq!(s.elementary_divisors, vec![3]);
        assert_eq!(s.narrow_order, 3);
        assert_eq!(s.unit_norm, None);
    }

    #[test]
    fn structure_d_minus_47() {
        let s = ctx(-47).structure;
        assert_eq!(s.h, 5);
        assert_eq!(s.elementary_divisors, vec![5]);
    }

    #[test]
    fn structure_d_5() {
        let s = ctx(5).structure;
        assert_eq!(s.h, 1);
        assert!(s.elementary_divisors.is_empty());
        assert_eq!(s.unit_norm, Some(-1));
    }

    #[test]
    fn torsion_count_gcd_formula() {
        fn mk(divs: Vec<u64>) -> ClassGroupStructure {
            let h = divs.iter().product::<u64>();
            ClassGroupStructure {
                discriminant: Discriminant::fundamental(-23).unwrap(),
                h,
                elementary_divisors: divs,
                narrow_order: h,
                unit_norm: None,
            }
        }
        let s = mk(vec![5]);
        assert_eq!(torsion_count(&s, 5).unwrap(), 5);
        assert_eq!(torsion_count(&s, 2).unwrap(), 1);
        let s = mk(vec![2, 4]);
        assert_eq!(torsion_count(&s, 2).unwrap(), 4);
        assert!(torsion_count(&s, 1).is_err());
    }

    #[test]
    fn torsion_multiplicative_in_coprime_ell() {
        for v in [-23i64, -39, -84, -120, -479, 229] {
            let s = ctx(v).structure;
            for (l1, l2) in [(2u64, 3u64), (2, 5), (3, 5), (4, 3)] {
                assert_eq!(
                    torsion_count(&s, l1 * l2).unwrap(),
                    torsion_count(&s, l1).unwrap() * torsion_count(&s, l2).unwrap()
                );
            }
        }
    }

    #[test]
    fn torsion_bounded_by_h_and_attains_it() {
        for v in [-23i64, -39, -84, -120, 229, 316] {
            let c = ctx(v);
            let s = &c.structure;
            let exponent = s.elementary_divisors.last().copied().unwrap_or(1);
            for ell in 2..=12u64 {
                let t = torsion_count(s, ell).unwrap();
                assert!(t <= s.h);
                if exponent > 1 && ell % exponent == 0 {
                    assert_eq!(t, s.h);
                }
            }
        }
    }

    #[test]
    fn ell_torsion_matches_structure() {
        for v in [-23i64, -39, -84, -120, -479, -3299, 229, 316, 1093] {
            let c = ctx(v);
            for ell in [2u64, 3, 4, 5, 6, 9] {
                assert_eq!(
                    ell_torsion(&c.group, ell).unwrap(),
                    torsion_count(&c.structure, ell).unwrap(),
                    "D={v} ell={ell}"
                );
            }
        }
    }

    #[test]
    fn known_noncyclic_structures() {
        let s = ctx(-3299).structure;
        assert_eq!(s.h, 27);
        assert_eq!(s.elementary_divisors, vec![3, 9]);
        let s = ctx(-479).structure;
        assert_eq!(s.h, 25);
        assert_eq!(s.elementary_divisors, vec![25]);
        let s = ctx(-84).structure;
        assert_eq!(s.elementary_divisors, vec![2, 2]);
    }
}

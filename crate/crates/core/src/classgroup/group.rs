//! Class group machinery on canonical form representatives.
//!
//! For d < 0 the canonical representative of a class is its unique reduced
//! form. For d > 0 equivalence classes are rho-cycles of reduced forms; the
//! canonical representative is the lexicographically least form on the
//! cycle, and the ordinary (wide) class group additionally identifies each
//! cycle with its twist by the leading-coefficient sign class.

use std::collections::HashMap;

use super::form::{
    compose, is_reduced, prime_form, principal_form, reduce128, rho_step, QuadForm,
};
use crate::arith::{isqrt64, Discriminant};
use crate::Result;

/// Smallest-prime-factor table shared across per-field computations.
///
/// Sized once for the largest |D| a run will touch; the per-field form
/// enumeration factors integers up to |D|/4 through it.
pub struct ClassTables {
    spf: Vec<u32>,
}

impl ClassTables {
    pub fn for_abs_disc(max_abs_d: u64) -> Self {
        let limit = (max_abs_d / 4).max(16) as usize;
        ClassTables {
            spf: crate::arith::smallest_prime_factors(limit),
        }
    }

    /// Divisors of m, unordered. Falls back to trial division when m is
    /// beyond the table.
    fn divisors(&self, m: u64) -> Vec<u64> {
        let mut divs = vec![1u64];
        let mut rest = m;
        let push_prime_power = |p: u64, e: u32, divs: &mut Vec<u64>| {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        };
        if (rest as usize) < self.spf.len() {
            while rest > 1 {
                let p = self.spf[rest as usize] as u64;
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                push_prime_power(p, e, &mut divs);
            }
        } else {
            let mut p = 2u64;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut e = 0;
                    while rest % p == 0 {
                        rest /= p;
                        e += 1;
                    }
                    push_prime_power(p, e, &mut divs);
                }
                p += 1;
            }
            if rest > 1 {
                push_prime_power(rest, 1, &mut divs);
            }
        }
        divs
    }
}

/// Group operations over canonical class representatives.
pub struct FormGroup {
    d: Discriminant,
    /// wide class count (the paper's class number)
    h: u64,
    h_narrow: u64,
    unit_norm: Option<i8>,
    /// d > 0 only: reduced form -> canonical form of its cycle
    cycle_canon: HashMap<QuadForm, QuadForm>,
    /// d > 0 only: narrow canonical -> wide canonical
    wide_canon: HashMap<QuadForm, QuadForm>,
    /// all wide canonical representatives, sorted
    classes: Vec<QuadForm>,
}

impl FormGroup {
    pub fn new(d: Discriminant, tables: &ClassTables) -> Result<Self> {
        if !d.is_fundamental() {
            return Err(crate::Error::Validation(format!(
                "discriminant {} is not fundamental",
                d.value()
            )));
        }
        if d.is_negative() {
            let classes = enumerate_definite_reduced(d, tables);
            Ok(FormGroup {
                d,
                h: classes.len() as u64,
                h_narrow: classes.len() as u64,
                unit_norm: None,
                cycle_canon: HashMap::new(),
                wide_canon: HashMap::new(),
                classes,
            })
        } else {
            Self::new_indefinite(d, tables)
        }
    }

    fn new_indefinite(d: Discriminant, tables: &ClassTables) -> Result<Self> {
        let forms = enumerate_indefinite_reduced(d, tables);
        let mut cycle_canon: HashMap<QuadForm, QuadForm> = HashMap::with_capacity(forms.len());
        let mut narrow: Vec<QuadForm> = Vec::new();
        for &f in &forms {
            if cycle_canon.contains_key(&f) {
                continue;
            }
            let mut cycle = vec![f];
            let mut cur = rho_step(&f, d);
            while cur != f {
                cycle.push(cur);
                cur = rho_step(&cur, d);
            }
            let canon = *cycle.iter().min().unwrap();
            for g in cycle {
                cycle_canon.insert(g, canon);
            }
            narrow.push(canon);
        }
        narrow.sort_unstable();
        let h_narrow = narrow.len() as u64;

        let id_narrow = cycle_canon[&reduce_to(d, principal_form(d))];
        let dv = d.value() as i128;
        let b0: i128 = if dv % 2 == 0 { 0 } else { 1 };
        let j_form = reduce128(-1, b0, (dv - b0 * b0) / 4, d);
        let j_class = cycle_canon[&j_form];
        let unit_norm = if j_class == id_narrow { -1i8 } else { 1 };

        let mut wide_canon = HashMap::with_capacity(narrow.len());
        let mut classes: Vec<QuadForm> = Vec::new();
        for &x in &narrow {
            let partner = if unit_norm == -1 {
                x
            } else {
                let composed = compose(&x, &j_class, d)?;
                cycle_canon[&composed]
            };
            let w = x.min(partner);
            wide_canon.insert(x, w);
            if w == x {
                classes.push(w);
            }
        }
        classes.sort_unstable();
        classes.dedup();
        let h = classes.len() as u64;
        debug_assert!(h * 2 == h_narrow || h == h_narrow);
        Ok(FormGroup {
            d,
            h,
            h_narrow,
            unit_norm: Some(unit_norm),
            cycle_canon,
            wide_canon,
            classes,
        })
    }

    pub fn discriminant(&self) -> Discriminant {
        self.d
    }

    /// Ordinary class number.
    pub fn order(&self) -> u64 {
        self.h
    }

    pub fn narrow_order(&self) -> u64 {
        self.h_narrow
    }

    /// Norm of the fundamental unit (real fields only).
    pub fn unit_norm(&self) -> Option<i8> {
        self.unit_norm
    }

    /// Canonical representatives of every class, sorted. The pinned
    /// representative list used throughout the crate.
    pub fn classes(&self) -> &[QuadForm] {
        &self.classes
    }

    pub fn identity(&self) -> QuadForm {
        self.canonical(principal_form(self.d))
    }

    /// Canonical id of an arbitrary form of this discriminant.
    pub fn canonical(&self, f: QuadForm) -> QuadForm {
        let r = reduce_to(self.d, f);
        if self.d.is_negative() {
            r
        } else {
            self.wide_canon[&self.cycle_canon[&r]]
        }
    }

    pub fn mul(&self, x: QuadForm, y: QuadForm) -> QuadForm {
        self.canonical(compose(&x, &y, self.d).expect("same-discriminant classes"))
    }

    pub fn inv(&self, x: QuadForm) -> QuadForm {
        self.canonical(x.inverse())
    }

    pub fn pow(&self, x: QuadForm, mut e: u64) -> QuadForm {
        let mut base = x;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Order of a class by baby-step giant-step.
    pub fn element_order(&self, g: QuadForm) -> u64 {
        let id = self.identity();
        if g == id {
            return 1;
        }
        let m = (self.h as f64).sqrt().ceil() as u64 + 1;
        let mut baby: HashMap<QuadForm, u64> = HashMap::with_capacity(m as usize);
        let mut cur = id;
        for j in 0..m {
            if j > 0 && cur == id {
                return j;
            }
            baby.entry(cur).or_insert(j);
            cur = self.mul(cur, g);
        }
        let giant = self.pow(g, m);
        let mut y = giant;
        for i in 1..=(self.h / m + 2) {
            if let Some(&j) = baby.get(&y) {
                let e = i * m - j;
                debug_assert!(e > 0 && self.pow(g, e) == id);
                return e;
            }
            y = self.mul(y, giant);
        }
        unreachable!("element order exceeds group order bound");
    }

    /// Structure of the q-Sylow subgroup of order q^k as ascending cyclic
    /// exponents [e_1 <= ... <= e_t] with sum k.
    ///
    /// Generated by prime forms; the generator norm bound starts at
    /// 6 log^2 |D| and escalates to the Minkowski bound, which generates
    /// unconditionally.
    pub fn sylow_exponents(&self, q: u64, k: u32) -> Vec<u32> {
        let target = q.pow(k);
        let cofactor = self.h / target;
        debug_assert!(self.h % target == 0);
        let id = self.identity();
        let mut subgroup: HashMap<QuadForm, ()> = HashMap::new();
        subgroup.insert(id, ());
        let mut elements = vec![id];

        let abs_d = self.d.abs() as f64;
        let minkowski = if self.d.is_negative() {
            (2.0 / std::f64::consts::PI) * abs_d.sqrt()
        } else {
            0.5 * abs_d.sqrt()
        };
        let mut bound = (6.0 * abs_d.ln().powi(2)).ceil().max(16.0);
        'outer: loop {
            for p in crate::arith::primes_up_to(bound as u64) {
                if subgroup.len() as u64 == target {
                    break 'outer;
                }
                let Some(f) = prime_form(self.d, p) else {
                    continue;
                };
                let x = self.pow(self.canonical(f), cofactor);
                if subgroup.contains_key(&x) {
                    continue;
                }
                // extend subgroup by the cyclic group generated by x
                let mut coset_reps = Vec::new();
                let mut xt = x;
                while !subgroup.contains_key(&xt) {
                    coset_reps.push(xt);
                    xt = self.mul(xt, x);
                }
                let snapshot = elements.clone();
                for rep in coset_reps {
                    for &e in &snapshot {
                        let y = self.mul(rep, e);
                        if subgroup.insert(y, ()).is_none() {
                            elements.push(y);
                        }
                    }
                }
            }
            if subgroup.len() as u64 == target {
                break;
            }
            if bound > minkowski {
                // Minkowski bound already covered; every class group is
                // generated by forms of norm below it, so this is a bug.
                panic!(
                    "sylow generation incomplete at Minkowski bound for D={}",
                    self.d.value()
                );
            }
            bound = (bound * 4.0).min(minkowski + 1.0);
        }

        // exponent counting: n_j = log_q #{y : y^(q^j) = id} determines the
        // partition of k via its conjugate
        let mut deltas = Vec::new();
        let mut prev = 0u32;
        let mut j = 1u32;
        loop {
            let qj = q.pow(j);
            let count = elements
                .iter()
                .filter(|&&y| self.pow(y, qj) == id)
                .count() as u64;
            let nj = count.ilog(q);
            deltas.push(nj - prev);
            if count == target {
                break;
            }
            prev = nj;
            j += 1;
        }
        let t = deltas[0];
        let mut exps: Vec<u32> = (1..=t)
            .map(|i| deltas.iter().filter(|&&dj| dj >= i).count() as u32)
            .collect();
        exps.sort_unstable();
        debug_assert_eq!(exps.iter().sum::<u32>(), k);
        exps
    }
}

fn reduce_to(d: Discriminant, f: QuadForm) -> QuadForm {
    if is_reduced(&f, d) {
        f
    } else {
        reduce128(f.a as i128, f.b as i128, f.c as i128, d)
    }
}

/// All reduced forms of a negative fundamental discriminant, sorted. One
/// per class.
pub fn enumerate_definite_reduced(d: Discriminant, tables: &ClassTables) -> Vec<QuadForm> {
    let abs = d.abs() as i64;
    let mut out = Vec::new();
    let bmax = isqrt64(abs / 3);
    let parity = d.value().rem_euclid(2);
    let mut b = parity;
    while b <= bmax {
        let m = ((b * b + abs) / 4) as u64;
        for a in tables.divisors(m) {
            let a = a as i64;
            let c = (m as i64) / a;
            if a < b.max(1) || c < a {
                continue;
            }
            if b == 0 || a == b || a == c {
                out.push(QuadForm { a, b, c });
            } else {
                out.push(QuadForm { a, b, c });
                out.push(QuadForm { a, b: -b, c });
            }
        }
        b += 2;
    }
    out.sort_unstable();
    out
}

/// All reduced forms of a positive fundamental discriminant, sorted.
pub fn enumerate_indefinite_reduced(d: Discriminant, tables: &ClassTables) -> Vec<QuadForm> {
    let dv = d.value();
    let s = isqrt64(dv);
    let mut out = Vec::new();
    let parity = dv.rem_euclid(2);
    let mut b = if parity == 0 { 2 } else { 1 };
    while b <= s {
        let m = ((dv - b * b) / 4) as u64;
        if m == 0 {
            b += 2;
            continue;
        }
        for a in tables.divisors(m) {
            let a = a as i64;
            let t = 2 * a;
            // sqrt(D) - b < 2a < sqrt(D) + b
            let lower = (t + b) as i128 * (t + b) as i128 > dv as i128;
            let upper = t - b <= 0 || ((t - b) as i128 * (t - b) as i128) < dv as i128;
            if lower && upper {
                let c = (m / a as u64) as i64;
                out.push(QuadForm { a, b, c: -c });
                out.push(QuadForm { a: -a, b, c });
            }
        }
        b += 2;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(v: i64) -> FormGroup {
        let d = Discriminant::fundamental(v).unwrap();
        let tables = ClassTables::for_abs_disc(d.abs());
        FormGroup::new(d, &tables).unwrap()
    }

    #[test]
    fn class_numbers_small_imaginary() {
        for (v, h) in [
            (-3i64, 1u64),
            (-4, 1),
            (-23, 3),
            (-47, 5),
            (-163, 1),
            (-5460, 16),
        ] {
            assert_eq!(group(v).order(), h, "D={v}");
        }
    }

    #[test]
    fn class_numbers_small_real() {
        // wide class numbers
        for (v, h) in [(5i64, 1u64), (8, 1), (40, 2), (60, 2), (229, 3), (136, 2)] {
            assert_eq!(group(v).order(), h, "D={v}");
        }
    }

    #[test]
    fn unit_norms_match_pell() {
        assert_eq!(group(5).unit_norm(), Some(-1));
        assert_eq!(group(8).unit_norm(), Some(-1));
        assert_eq!(group(12).unit_norm(), Some(1));
        assert_eq!(group(40).unit_norm(), Some(-1));
        assert_eq!(group(60).unit_norm(), Some(1));
    }

    #[test]
    fn narrow_vs_wide() {
        let g12 = group(12);
        assert_eq!(g12.order(), 1);
        assert_eq!(g12.narrow_order(), 2);
        let g40 = group(40);
        assert_eq!(g40.order(), 2);
        assert_eq!(g40.narrow_order(), 2);
    }

    #[test]
    fn group_axioms_sampled() {
        for v in [-23i64, -47, -84, -120, 229, 316, 145] {
            let g = group(v);
            let cls = g.classes().to_vec();
            let id = g.identity();
            for &x in &cls {
                assert_eq!(g.mul(x, id), x);
                assert_eq!(g.mul(x, g.inv(x)), id);
                for &y in &cls {
                    let xy = g.mul(x, y);
                    assert!(cls.binary_search(&xy).is_ok(), "closure fails D={v}");
                    assert_eq!(xy, g.mul(y, x));
                    for &z in &cls {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        for v in [-23i64, -47, -120, -479, 229, 316] {
            let g = group(v);
            for &x in g.classes() {
                let o = g.element_order(x);
                assert_eq!(g.h % o, 0, "D={v}");
                assert_eq!(g.pow(x, o), g.identity());
                if o > 1 {
                    assert_ne!(g.pow(x, o - 1), g.identity());
                }
            }
        }
    }

    #[test]
    fn sylow_structure_examples() {
        // h(-23) = 3 cyclic
        assert_eq!(group(-23).sylow_exponents(3, 1), vec![1]);
        // h(-84) = 4 with group C2 x C2
        assert_eq!(group(-84).sylow_exponents(2, 2), vec![1, 1]);
        // h(-39) = 4 cyclic
        assert_eq!(group(-39).sylow_exponents(2, 2), vec![2]);
    }
}

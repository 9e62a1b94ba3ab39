//! Analytic class number estimate from the truncated Dirichlet series of
//! L(1, chi_D), with a certified tail bound from the boundedness of the
//! character's partial sums.

use crate::arith::{kronecker, Discriminant};
use crate::error::Error;
use crate::Result;

/// Iteration cap on the number of series terms.
const TERM_CAP: usize = 1 << 24;

#[derive(Debug, Clone, Copy)]
pub struct AnalyticEstimate {
    /// class number estimate
    pub estimate: f64,
    /// certified bound on |estimate - h|
    pub error_bound: f64,
    pub l_value: f64,
    /// regulator used for real fields
    pub regulator: Option<f64>,
}

impl AnalyticEstimate {
    /// Whether the estimate pins the class number to a unique integer.
    pub fn pins_integer(&self) -> bool {
        self.error_bound < 0.5
    }
}

/// Class number estimate for a fundamental discriminant, combining the
/// truncated L(1, chi_D) series with the unit count (imaginary) or the
/// regulator (real).
///
/// `precision` is the requested bound on |estimate - h|; if it cannot be
/// met within the iteration cap a convergence error carrying the partial
/// estimate is returned.
pub fn analytic_check(d: Discriminant, precision: f64) -> Result<AnalyticEstimate> {
    if !d.is_fundamental() {
        return Err(Error::Validation(format!(
            "{} is not fundamental",
            d.value()
        )));
    }
    if d.abs() > 100_000_000 {
        return Err(Error::Domain("analytic check limited to |D| <= 10^8".into()));
    }
    if precision <= 0.0 {
        return Err(Error::Domain("precision must be positive".into()));
    }
    let q = d.abs() as usize;
    let sqrt_q = (d.abs() as f64).sqrt();
    // multiplier taking an L-value error to a class number error
    let (mult, regulator) = if d.is_negative() {
        (d.unit_count() as f64 * sqrt_q / (2.0 * std::f64::consts::PI), None)
    } else {
        let (reg, _) = crate::units_lattice::regulator_and_norm(d)?;
        (sqrt_q / (2.0 * reg), Some(reg))
    };

    // first pass over one full period: exact maximal oscillation of the
    // character partial sums, which controls every tail
    let chi = chi_table(d.value(), q);
    let mut partial = 0i64;
    let mut osc = 0i64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    for n in 1..=q {
        let c = chi[n] as i64;
        partial += c;
        osc = osc.max(partial.abs());
        if c != 0 {
            kahan(&mut sum, &mut comp, c as f64 / n as f64);
        }
    }
    debug_assert_eq!(partial, 0, "character sums to zero over a period");
    let osc = osc.max(1) as f64;

    // tail after N terms is at most 2*osc/N
    let err_at = |n_terms: f64| mult * 2.0 * osc / n_terms;
    let mut n_done = q;
    if err_at(n_done as f64) > precision {
        let needed = (mult * 2.0 * osc / precision).ceil() as usize;
        let target = needed.min(TERM_CAP);
        if target > n_done {
            let chi_ext = chi_table(d.value(), target);
            for n in (q + 1)..=target {
                let c = chi_ext[n];
                if c != 0 {
                    kahan(&mut sum, &mut comp, c as f64 / n as f64);
                }
            }
            n_done = target;
        }
    }
    let l_value = sum + comp;
    let estimate = mult * l_value;
    // small float slack on top of the truncation bound
    let error_bound = err_at(n_done as f64) * (1.0 + 1e-9) + 1e-9 * estimate.abs() + 1e-12;
    let out = AnalyticEstimate {
        estimate,
        error_bound,
        l_value,
        regulator,
    };
    if error_bound > precision {
        return Err(Error::Convergence {
            estimate,
            error_bound,
        });
    }
    Ok(out)
}

#[inline]
fn kahan(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// chi(n) for n in 0..=limit via a linear sieve; complete multiplicativity
/// lets chi(i*p) = chi(i)*chi(p) even when p divides i.
fn chi_table(d: i64, limit: usize) -> Vec<i8> {
    let mut chi = vec![0i8; limit + 1];
    if limit >= 1 {
        chi[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    let mut composite = vec![false; limit + 1];
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            chi[i] = kronecker(d, i as u64) as i8;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            chi[ip] = chi[i] * chi[p];
            if i % p == 0 {
                break;
            }
        }
    }
    chi
}

//! Minkowski-reduced lattice bases by greedy exact enumeration.
//!
//! Vectors are exact rationals; internally the basis is scaled to an
//! integer lattice and candidates are enumerated with a float-pruned
//! search whose results are verified with exact integer norms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

/// A lattice given by a basis of row vectors in R^n.
#[derive(Debug, Clone)]
pub struct Lattice {
    rows: Vec<Vec<BigRational>>,
}

impl Lattice {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Validation("empty basis".into()));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("ragged basis rows".into()));
        }
        if rows.len() > n {
            return Err(Error::Validation("rank exceeds ambient dimension".into()));
        }
        let l = Lattice { rows };
        if det_gram(&l.rows).is_zero() {
            return Err(Error::Validation("basis vectors are dependent".into()));
        }
        Ok(l)
    }

    pub fn from_integer_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| BigRational::from(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Common-denominator integer version of the basis and the scale s so
    /// that integer_rows = s * rows.
    fn scaled_integer_rows(&self) -> Result<(Vec<Vec<i128>>, BigInt)> {
        let mut scale = BigInt::one();
        for r in &self.rows {
            for x in r {
                scale = num_integer::lcm(scale, x.denom().clone());
            }
        }
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut row = Vec::with_capacity(r.len());
            for x in r {
                let v = (x * BigRational::from(scale.clone())).to_integer();
                let v = v.to_i128().ok_or_else(|| {
                    Error::Range("lattice entries exceed 128-bit working range".into())
                })?;
                row.push(v);
            }
            out.push(row);
        }
        Ok((out, scale))
    }
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let m = rows.len();
    (0..m)
        .map(|i| (0..m).map(|j| dot(&rows[i], &rows[j])).collect())
        .collect()
}

/// Greedy Minkowski basis: step i picks a shortest vector that extends the
/// fixed prefix to a basis, i.e. whose tail coefficients are coprime.
///
/// Equal-norm ties go to the colexicographically smallest sign-normalized
/// vector, which keeps outputs deterministic.
pub fn minkowski_basis(l: &Lattice) -> Result<Vec<Vec<BigRational>>> {
    let (mut work, scale) = l.scaled_integer_rows()?;
    let m = work.len();
    for i in 0..m {
        size_reduce(&mut work, i);
        let coeffs = best_extension(&work, i)?;
        apply_choice(&mut work, i, &coeffs);
    }
    let inv = BigRational::new(BigInt::one(), scale);
    Ok(work
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from(BigInt::from(x)) * &inv)
                .collect()
        })
        .collect())
}

/// Subtract rounded projections of rows i.. onto the fixed prefix.
fn size_reduce(work: &mut [Vec<i128>], i: usize) {
    let m = work.len();
    for _ in 0..2 {
        for j in i..m {
            for k in (0..i).rev() {
                let nk = dot(&work[k], &work[k]);
                if nk == 0 {
                    continue;
                }
                let p = dot(&work[j], &work[k]);
                // nearest integer to p/nk
                let mu = (2 * p + nk * p.signum()).div_euclid(2 * nk);
                if mu != 0 {
                    let wk = work[k].clone();
                    for (x, y) in work[j].iter_mut().zip(&wk) {
                        *x -= mu * y;
                    }
                }
            }
        }
    }
}

/// Minimal vector sum a_j row_j with gcd(a_i..a_m) = 1, as its coefficient
/// vector.
///
/// The incumbent row wins ties, so an already-Minkowski basis is returned
/// unchanged; among strictly new candidates of equal norm the
/// lexicographically smallest sign-normalized vector is taken.
fn best_extension(work: &[Vec<i128>], i: usize) -> Result<Vec<i128>> {
    let m = work.len();
    let g = gram(work);
    let init_bound = g[i][i];
    if init_bound == 0 {
        return Err(Error::Validation("degenerate working basis".into()));
    }
    // (norm, normalized ambient, normalized coeffs, is_incumbent)
    let mut best: Option<(i128, Vec<i128>, Vec<i128>, bool)> = None;
    let mut consider = |coeffs: &[i128], incumbent: bool| {
        let tail_gcd = coeffs[i..]
            .iter()
            .fold(0i128, |acc, &x| crate::arith::gcd_i128(acc, x));
        if tail_gcd != 1 {
            return;
        }
        let mut v = vec![0i128; work[0].len()];
        for (a, row) in coeffs.iter().zip(work) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += a * y;
            }
        }
        let norm = dot(&v, &v);
        if norm == 0 {
            return;
        }
        let mut coeffs = coeffs.to_vec();
        if sign_normalize(&mut v) {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
        let better = match &best {
            None => true,
            Some((bn, bv, _, binc)) => {
                norm < *bn || (norm == *bn && !*binc && lex_less(&v, bv))
            }
        };
        if better {
            best = Some((norm, v, coeffs, incumbent));
        }
    };
    // the current i-th row is always admissible
    let mut unit = vec![0i128; m];
    unit[i] = 1;
    consider(&unit, true);
    enumerate_upto(&g, init_bound, &mut |c| consider(c, false));
    Ok(best.expect("nonempty candidate set").2)
}

/// Visit every nonzero coefficient vector with Q(a) <= bound (exact),
/// using a float Cholesky for pruning with a small safety margin.
fn enumerate_upto(g: &[Vec<i128>], bound: i128, visit: &mut impl FnMut(&[i128])) {
    let m = g.len();
    // q[i][i] = d_i, q[i][j] (j>i) = mu coefficients
    let mut q: Vec<Vec<f64>> = g
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).collect())
        .collect();
    for i in 0..m {
        for j in (i + 1)..m {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in (i + 1)..m {
            for l in k..m {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let c = bound as f64 * (1.0 + 1e-9) + 1e-6;
    let mut x = vec![0i128; m];
    // recursive descent from the last coordinate
    fn descend(
        q: &[Vec<f64>],
        g: &[Vec<i128>],
        level: usize,
        t: f64,
        u: &[f64],
        x: &mut Vec<i128>,
        bound: i128,
        visit: &mut impl FnMut(&[i128]),
    ) {
        let qi = q[level][level];
        if qi <= 0.0 {
            return;
        }
        let root = (t / qi).max(0.0).sqrt();
        let lo = (-root - u[level]).floor() as i64;
        let hi = (root - u[level]).ceil() as i64;
        for xi in lo..=hi {
            x[level] = xi as i128;
            let term = qi * (xi as f64 + u[level]).powi(2);
            let t_next = t - term;
            if t_next < -1e-6 {
                continue;
            }
            if level == 0 {
                if x.iter().all(|&a| a == 0) {
                    continue;
                }
                // exact check
                let mut norm = 0i128;
                for i in 0..x.len() {
                    for j in 0..x.len() {
                        norm += x[i] * g[i][j] * x[j];
                    }
                }
                if norm <= bound {
                    visit(x);
                }
            } else {
                let mut u_next = u.to_vec();
                for l in 0..level {
                    u_next[l] += q[l][level] * xi as f64;
                }
                descend(q, g, level - 1, t_next.max(0.0), &u_next, x, bound, visit);
            }
        }
    }
    let u = vec![0.0; m];
    descend(&q, g, m - 1, c, &u, &mut x, bound, visit);
}

/// Flip so the first nonzero coordinate is positive; true if flipped.
fn sign_normalize(v: &mut [i128]) -> bool {
    if let Some(first) = v.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
            return true;
        }
    }
    false
}

fn lex_less(a: &[i128], b: &[i128]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return x < y;
        }
    }
    false
}

/// Replace rows i.. so that row i equals the chosen vector while spanning
/// the same lattice: a unimodular transform of the tail block with first
/// row equal to the tail coefficients, plus the fixed-prefix contribution.
fn apply_choice(work: &mut Vec<Vec<i128>>, i: usize, coeffs: &[i128]) {
    let n = work[0].len();
    let tail = &coeffs[i..];
    let u = complete_unimodular(tail);
    let old_tail: Vec<Vec<i128>> = work[i..].to_vec();
    for (r, urow) in u.iter().enumerate() {
        let mut new_row = vec![0i128; n];
        for (c, &coef) in urow.iter().enumerate() {
            if coef != 0 {
                for (x, y) in new_row.iter_mut().zip(&old_tail[c]) {
                    *x += coef * y;
                }
            }
        }
        work[i + r] = new_row;
    }
    // fold in the fixed-prefix part of the chosen vector
    for k in 0..i {
        if coeffs[k] != 0 {
            let wk = work[k].clone();
            for (x, y) in work[i].iter_mut().zip(&wk) {
                *x += coeffs[k] * y;
            }
        }
    }
}

/// Unimodular matrix whose first row is the given primitive vector.
fn complete_unimodular(r: &[i128]) -> Vec<Vec<i128>> {
    let k = r.len();
    debug_assert_eq!(
        r.iter().fold(0i128, |acc, &x| crate::arith::gcd_i128(acc, x)),
        1
    );
    // rotate a nonzero entry to the front
    let first_nz = r.iter().position(|&x| x != 0).unwrap();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.swap(0, first_nz);
    let rp: Vec<i128> = perm.iter().map(|&j| r[j]).collect();

    // build with first row rp by induction on the length
    let mut mat: Vec<Vec<i128>> = vec![vec![rp[0]]];
    let mut g = rp[0].abs();
    for j in 1..k {
        let (g_next, x, y) = crate::arith::extgcd_i128(g, rp[j]);
        let mut next: Vec<Vec<i128>> = Vec::with_capacity(j + 1);
        // first row: prefix of rp
        let mut row0: Vec<i128> = rp[..=j].to_vec();
        next.push(std::mem::take(&mut row0));
        // middle rows: previous completion rows 1.., padded
        for old in mat.iter().skip(1) {
            let mut row = old.clone();
            row.push(0);
            next.push(row);
        }
        // last row mixes the prefix scaled by -y/g with x
        let mut last: Vec<i128> = rp[..j].iter().map(|&t| -y * t / g).collect();
        last.push(x);
        next.push(last);
        mat = next;
        g = g_next;
        if g == 0 {
            g = 1;
        }
    }
    // undo the permutation on columns
    let mut out = vec![vec![0i128; k]; k];
    for (i, row) in mat.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out[i][perm[j]] = v;
        }
    }
    debug_assert_eq!(det_i128(&out).abs(), 1, "completion not unimodular");
    debug_assert_eq!(out[0], r.to_vec());
    out
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    // fraction-free Gaussian elimination (Bareiss)
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn det_gram(rows: &[Vec<BigRational>]) -> BigRational {
    let m = rows.len();
    let mut g: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    rows[i]
                        .iter()
                        .zip(&rows[j])
                        .map(|(x, y)| x * y)
                        .fold(BigRational::zero(), |a, b| a + b)
                })
                .collect()
        })
        .collect();
    // rational Gauss
    let mut det = BigRational::one();
    for k in 0..m {
        if g[k][k].is_zero() {
            let Some(p) = (k + 1..m).find(|&r| !g[r][k].is_zero()) else {
                return BigRational::zero();
            };
            g.swap(k, p);
            det = -det;
        }
        det *= g[k][k].clone();
        for i in (k + 1)..m {
            let f = &g[i][k] / &g[k][k];
            for j in k..m {
                let sub = &f * &g[k][j];
                g[i][j] -= sub;
            }
        }
    }
    det
}

/// (prod ||b_i||) / covolume for a basis of the lattice. The basis is
/// checked to span the same lattice.
pub fn second_theorem_ratio(l: &Lattice, basis: &[Vec<BigRational>]) -> Result<f64> {
    if basis.len() != l.rank() || basis.iter().any(|b| b.len() != l.dim()) {
        return Err(Error::Validation("basis has wrong shape".into()));
    }
    let b = Lattice::from_rows(basis.to_vec())?;
    if !same_lattice(l, &b) {
        return Err(Error::Validation("not a basis of this lattice".into()));
    }
    let det2 = det_gram(basis);
    let mut prod2 = BigRational::one();
    for row in basis {
        let n2 = row
            .iter()
            .map(|x| x * x)
            .fold(BigRational::zero(), |a, b| a + b);
        prod2 *= n2;
    }
    let ratio2 = prod2 / det2;
    Ok(crate::heights::interval::rational_to_f64(&ratio2).sqrt())
}

/// Whether two row sets span the same lattice: mutual integral coordinates
/// with unimodular change of basis.
fn same_lattice(a: &Lattice, b: &Lattice) -> bool {
    match (coords_matrix(a, b), coords_matrix(b, a)) {
        (Some(_), Some(_)) => true,
        _ => false,
    }
}

/// Integer coordinates of b's rows in terms of a's rows, if they exist.
fn coords_matrix(a: &Lattice, b: &Lattice) -> Option<Vec<Vec<BigInt>>> {
    let m = a.rank();
    // solve x * A = b_row via the Gram system x * (A A^T) = b_row A^T
    let ga = {
        let mut g = vec![vec![BigRational::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                g[i][j] = a.rows[i]
                    .iter()
                    .zip(&a.rows[j])
                    .map(|(x, y)| x * y)
                    .fold(BigRational::zero(), |acc, t| acc + t);
            }
        }
        g
    };
    let mut out = Vec::with_capacity(b.rank());
    for row in &b.rows {
        let rhs: Vec<BigRational> = (0..m)
            .map(|i| {
                row.iter()
                    .zip(&a.rows[i])
                    .map(|(x, y)| x * y)
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect();
        let x = solve_rational(&ga, &rhs)?;
        // verify the solve (Gram solve is exact for vectors in the span)
        let mut recon = vec![BigRational::zero(); a.dim()];
        for (c, arow) in x.iter().zip(&a.rows) {
            for (r, v) in recon.iter_mut().zip(arow) {
                *r += c * v;
            }
        }
        if recon != *row {
            return None;
        }
        if !x.iter().all(|c| c.is_integer()) {
            return None;
        }
        out.push(x.into_iter().map(|c| c.to_integer()).collect());
    }
    Some(out)
}

fn solve_rational(a: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        let pivot = m[k][k].clone();
        for j in k..=n {
            m[k][j] /= &pivot;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let sub = &f * &m[k][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

//! Logarithmic embedding of field elements into R^{r+s}.

use crate::error::Error;
use crate::heights::FieldElement;
use crate::Result;

/// phi(alpha) = (d_v log |alpha|_v)_v over the archimedean places: two
/// entries with d_v = 1 for real fields, one entry with d_v = 2 for
/// imaginary fields.
pub fn log_embedding(alpha: &FieldElement) -> Result<Vec<f64>> {
    if alpha.is_zero() {
        return Err(Error::Domain("log embedding of zero".into()));
    }
    let logs = alpha.arch_logs();
    if alpha.discriminant().is_negative() {
        Ok(vec![2.0 * logs[0]])
    } else {
        Ok(logs)
    }
}

/// Sum of the embedding coordinates; zero (within float error) on units.
pub fn log_embedding_sum(alpha: &FieldElement) -> Result<f64> {
    Ok(log_embedding(alpha)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Discriminant;
    use num_rational::BigRational;

    fn d(v: i64) -> Discriminant {
        Discriminant::fundamental(v).unwrap()
    }

    #[test]
    fn golden_ratio_embedding() {
        let phi = FieldElement::omega(d(5));
        let v = log_embedding(&phi).unwrap();
        assert_eq!(v.len(), 2);
        assert!((v[0] - 0.481212).abs() < 1e-5);
        assert!((v[1] + 0.481212).abs() < 1e-5);
        assert!(log_embedding_sum(&phi).unwrap().abs() < 1e-9);
    }

    #[test]
    fn rational_two_in_gaussian_field() {
        let two = FieldElement::from_integer_coords(d(-4), 2, 0);
        let v = log_embedding(&two).unwrap();
        assert_eq!(v.len(), 1);
        assert!((v[0] - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn one_maps_to_zero() {
        for dv in [-4i64, -23, 5, 8] {
            let one = FieldElement::one(d(dv));
            let v = log_embedding(&one).unwrap();
            assert!(v.iter().all(|c| c.abs() < 1e-15));
        }
    }

    #[test]
    fn zero_is_domain_error() {
        let z = FieldElement::zero(d(5));
        assert!(matches!(log_embedding(&z), Err(Error::Domain(_))));
    }

    #[test]
    fn units_lie_in_v0() {
        // images of units have coordinate sum zero within 1e-9
        for dv in [5i64, 8, 12, 13, 40, 229] {
            let u = crate::units_lattice::fundamental_unit(d(dv)).unwrap();
            let el = FieldElement::from_sqrt_basis(d(dv), u.x.clone(), u.y.clone());
            let s = log_embedding_sum(&el).unwrap();
            assert!(s.abs() < 1e-9, "D={dv} sum={s}");
            let e2 = el.pow(3);
            assert!(log_embedding_sum(&e2).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn scaling_moves_along_d_direction() {
        let a = FieldElement::from_rational(d(8), BigRational::new(3.into(), 1.into()));
        let v = log_embedding(&a).unwrap();
        assert!((v[0] - 3f64.ln()).abs() < 1e-12);
        assert!((v[1] - 3f64.ln()).abs() < 1e-12);
    }
}

//! Partition of a fundamental domain of the unit lattice into cells of
//! bounded diameter.

use crate::error::Error;
use crate::Result;

/// Half-open interval cell [lo, hi) of the rank-1 fundamental domain, a
/// single point for rank 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone)]
pub struct CellPartition {
    pub cells: Vec<Cell>,
    pub diameter_bound: f64,
    /// extent of the fundamental domain, i.e. the regulator in rank 1
    pub extent: f64,
}

impl CellPartition {
    pub fn count(&self) -> usize {
        self.cells.len()
    }

    /// Index (1-based) of the cell containing a coordinate in [0, extent);
    /// boundary points belong to the lower half-open cell containing them.
    pub fn cell_index(&self, coord: f64) -> usize {
        if self.cells.len() == 1 {
            return 1;
        }
        let n = self.cells.len() as f64;
        let i = (coord / self.extent * n).floor() as usize;
        i.min(self.cells.len() - 1) + 1
    }
}

/// Rank-0 (imaginary field) or rank-1 (real field) partition.
///
/// For rank 1 the domain [0, R) is cut into n = ceil(R / c_cell) equal
/// half-open intervals; the construction requires n < 5R + 1.
pub fn cell_partition(regulator: Option<f64>, c_cell: f64) -> Result<CellPartition> {
    if c_cell <= 0.0 {
        return Err(Error::Domain("cell diameter must be positive".into()));
    }
    match regulator {
        None => Ok(CellPartition {
            cells: vec![Cell { lo: 0.0, hi: 0.0 }],
            diameter_bound: c_cell,
            extent: 0.0,
        }),
        Some(r) => {
            if r <= 0.0 {
                return Err(Error::Domain("regulator must be positive".into()));
            }
            let n = (r / c_cell).ceil().max(1.0) as usize;
            if (n as f64) >= 5.0 * r + 1.0 {
                return Err(Error::Constraint(format!(
                    "cell count {n} reaches 5R+1 = {}",
                    5.0 * r + 1.0
                )));
            }
            let width = r / n as f64;
            let cells = (0..n)
                .map(|i| Cell {
                    lo: i as f64 * width,
                    hi: (i + 1) as f64 * width,
                })
                .collect();
            Ok(CellPartition {
                cells,
                diameter_bound: c_cell,
                extent: r,
            })
        }
    }
}

/// General-rank partition of the parallelepiped spanned by a basis into
/// sub-boxes of diameter at most c_cell; returns the per-axis cut counts.
pub fn cell_partition_general(basis_norms: &[f64], c_cell: f64) -> Result<Vec<usize>> {
    if c_cell <= 0.0 {
        return Err(Error::Domain("cell diameter must be positive".into()));
    }
    let m = basis_norms.len() as f64;
    Ok(basis_norms
        .iter()
        .map(|&n| ((n * m) / c_cell).ceil().max(1.0) as usize)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_single_cell() {
        let p = cell_partition(None, 1.0).unwrap();
        assert_eq!(p.count(), 1);
        assert_eq!(p.cell_index(0.0), 1);
    }

    #[test]
    fn d5_regulator_one_cell() {
        let p = cell_partition(Some(0.4812), 1.0).unwrap();
        assert_eq!(p.count(), 1);
    }

    #[test]
    fn d184_regulator_eleven_cells() {
        let p = cell_partition(Some(10.7925), 1.0).unwrap();
        assert_eq!(p.count(), 11);
    }

    #[test]
    fn partition_covers_domain_exactly() {
        let p = cell_partition(Some(3.7), 0.5).unwrap();
        assert_eq!(p.cells[0].lo, 0.0);
        let mut prev = 0.0;
        for c in &p.cells {
            assert_eq!(c.lo, prev);
            assert!(c.hi - c.lo <= 0.5 + 1e-12);
            prev = c.hi;
        }
        assert!((prev - 3.7).abs() < 1e-12);
        // boundary points go to the lower containing cell
        assert_eq!(p.cell_index(0.0), 1);
        assert_eq!(p.cell_index(p.cells[1].lo), 2);
    }

    #[test]
    fn too_small_cells_rejected() {
        // n = ceil(R/c) >= 5R + 1 must error
        assert!(matches!(
            cell_partition(Some(1.0), 0.1),
            Err(Error::Constraint(_))
        ));
        // c_cell >= 0.21 keeps n < 5R + 1 for any R >= 0.205
        for r in [0.205f64, 0.3, 0.5, 1.0, 7.3, 100.0] {
            assert!(cell_partition(Some(r), 0.21).is_ok(), "R={r}");
        }
    }

    #[test]
    fn general_rank_axis_counts() {
        let cuts = cell_partition_general(&[2.0, 3.0], 1.0).unwrap();
        assert_eq!(cuts, vec![4, 6]);
    }
}

//! Local parameters and the triangular frame of tangent fields at a point.

use num_traits::Zero;

use super::{combinations, determinant, format_point, QuotientElement, VarietyDescriptor, VarietyError};
use crate::poly::{Polynomial, Rational};

/// Chart at a nonsingular point: `r` leading coordinates solved for in
/// terms of `s` local parameters `t_j = x_{free_j} - p_{free_j}`.
#[derive(Debug, Clone)]
pub struct LocalChart {
    pub point: Vec<Rational>,
    /// Generator indices of the chosen `r` equations.
    pub rows: Vec<usize>,
    /// Leading (solved) coordinates.
    pub leading: Vec<usize>,
    /// Parameter coordinates, the complement of `leading`.
    pub free: Vec<usize>,
    /// The `r x r` minor on `rows x leading`; nonzero at the point.
    pub h: QuotientElement,
    /// Component vectors of the fields `tau_j`; `tau_j(t_k) = h * delta_jk`.
    pub fields: Vec<Vec<QuotientElement>>,
}

impl LocalChart {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// The local parameter `t_j` as an element of `A`.
    pub fn parameter(&self, x: &VarietyDescriptor, j: usize) -> QuotientElement {
        let i = self.free[j];
        let n = x.nvars();
        x.reduce(&(&Polynomial::var(n, i) - &Polynomial::constant(n, self.point[i].clone())))
    }
}

pub(super) fn build(x: &VarietyDescriptor, point: &[Rational]) -> Result<LocalChart, VarietyError> {
    x.check_point(point)?;
    if x.is_singular_point(point)? {
        return Err(VarietyError::SingularPoint(format_point(point)));
    }
    let n = x.nvars();
    let r = x.jacobian_rank();
    let jac = x.jacobian();
    let sub = |rs: &[usize], cs: &[usize]| -> Vec<Vec<Polynomial>> {
        rs.iter().map(|&i| cs.iter().map(|&j| jac[i][j].clone()).collect()).collect()
    };
    let (rows, leading) = combinations(n, r)
        .into_iter()
        .find_map(|cs| {
            combinations(jac.len(), r)
                .into_iter()
                .find(|rs| !determinant(&sub(rs, &cs)).evaluate(point).expect("checked").is_zero())
                .map(|rs| (rs, cs))
        })
        .expect("nonsingular point has a nonvanishing maximal minor");
    let free: Vec<usize> = (0..n).filter(|j| !leading.contains(j)).collect();
    let block = sub(&rows, &leading);
    let h = determinant(&block);
    let fields = free
        .iter()
        .map(|&fj| {
            let mut comps = vec![Polynomial::zero(n); n];
            comps[fj] = h.clone();
            for (i, &ai) in leading.iter().enumerate() {
                let mut replaced = block.clone();
                for (row, &gi) in replaced.iter_mut().zip(&rows) {
                    row[i] = jac[gi][fj].clone();
                }
                comps[ai] = -determinant(&replaced);
            }
            assert!(x.is_tangent(&comps), "chart field failed the tangency test");
            comps.iter().map(|c| x.reduce(c)).collect()
        })
        .collect();
    Ok(LocalChart { point: point.to_vec(), rows, leading, free, h: x.reduce(&h), fields })
}

//! Matrices of Laurent polynomials and their rank over the fraction field.

use super::coeff::Field;
use super::laurent::{LaurentPoly, Vars};
use super::AlgebraError;

/// A rectangular matrix of Laurent polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<C: Field> {
    vars: Vars,
    ctx: C::Ctx,
    cols: usize,
    rows: Vec<Vec<LaurentPoly<C>>>,
}

impl<C: Field> PolyMatrix<C> {
    pub fn new(vars: &Vars, ctx: &C::Ctx, cols: usize, rows: Vec<Vec<LaurentPoly<C>>>) -> Result<Self, AlgebraError> {
        for row in &rows {
            if row.len() != cols {
                return Err(AlgebraError::Ragged);
            }
            for entry in row {
                if entry.vars() != vars {
                    return Err(AlgebraError::VariableMismatch {
                        left: vars.to_vec(),
                        right: entry.vars().to_vec(),
                    });
                }
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            ctx: ctx.clone(),
            cols,
            rows,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly<C>>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> &LaurentPoly<C> {
        &self.rows[r][c]
    }

    pub fn rank(&self) -> usize {
        matrix_rank(self)
    }
}

/// Rank over the fraction field of the Laurent ring.
///
/// Rows are first multiplied by monomial units so that all exponents are
/// non-negative; then fraction-free (Bareiss) elimination with complete
/// pivoting runs over the polynomial ring, where every division is exact.
pub fn matrix_rank<C: Field>(m: &PolyMatrix<C>) -> usize {
    let mut a: Vec<Vec<LaurentPoly<C>>> = m
        .rows
        .iter()
        .map(|row| {
            let mut shift = vec![0i64; m.vars.len()];
            for entry in row.iter().filter(|e| !e.is_zero()) {
                for (s, lo) in shift.iter_mut().zip(entry.min_exponents()) {
                    *s = (*s).max(-lo);
                }
            }
            row.iter().map(|e| e.shift(&shift)).collect()
        })
        .collect();
    let nrows = a.len();
    let ncols = m.cols;
    let mut prev = LaurentPoly::one(&m.vars, &m.ctx);
    let mut rank = 0;
    while rank < nrows.min(ncols) {
        // Sparsest nonzero pivot in the trailing block.
        let mut pivot: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, entry) in row.iter().enumerate().skip(rank) {
                if entry.is_zero() {
                    continue;
                }
                let size = entry.num_terms();
                if pivot.is_none_or(|(_, _, s)| size < s) {
                    pivot = Some((i, j, size));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = &prow[rank];
        for row in tail.iter_mut() {
            let lead = row[rank].clone();
            for j in rank + 1..ncols {
                let num = &(p * &row[j]) - &(&lead * &prow[j]);
                row[j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            row[rank] = LaurentPoly::zero(&m.vars, &m.ctx);
        }
        prev = a[rank][rank].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::vars;
    use crate::algebra::parse::parse_laurent;
    use num_rational::BigRational;

    fn matrix(vs: &Vars, rows: &[&[&str]]) -> PolyMatrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_laurent(s, vs).unwrap()).collect())
            .collect();
        PolyMatrix::new(vs, &(), cols, rows).unwrap()
    }

    #[test]
    fn identity_and_proportional_rows() {
        let vs = vars(&["x"]);
        assert_eq!(matrix(&vs, &[&["1", "0"], &["0", "1"]]).rank(), 2);
        assert_eq!(matrix(&vs, &[&["x-1", "-(x-1)"], &["0", "0"]]).rank(), 1);
        assert_eq!(matrix(&vs, &[&["0", "0"], &["0", "0"], &["x-1", "1-x"]]).rank(), 1);
    }

    #[test]
    fn generic_rank_ignores_special_points() {
        // Determinant x*y - 1 vanishes somewhere but is nonzero as a polynomial.
        let vs = vars(&["x", "y"]);
        assert_eq!(matrix(&vs, &[&["x", "1"], &["1", "y"]]).rank(), 2);
        assert_eq!(
            matrix(
                &vs,
                &[
                    &["x", "y", "x+y"],
                    &["x^2", "x*y", "x^2+x*y"],
                    &["1", "x^-1*y", "1+x^-1*y"]
                ]
            )
            .rank(),
            1
        );
        assert_eq!(
            matrix(&vs, &[&["x", "y", "1"], &["y", "x", "1"], &["x+y", "x+y", "2"]]).rank(),
            2
        );
    }

    #[test]
    fn empty_matrix() {
        let vs = vars(&["x"]);
        let m = PolyMatrix::<BigRational>::new(&vs, &(), 3, Vec::new()).unwrap();
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let vs = vars(&["x"]);
        let one = parse_laurent("1", &vs).unwrap();
        let r = PolyMatrix::<BigRational>::new(&vs, &(), 2, vec![vec![one]]);
        assert_eq!(r.unwrap_err(), AlgebraError::Ragged);
    }
}

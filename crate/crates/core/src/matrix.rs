//! Graded matrices of ring polynomials. Entry (r, c) is homogeneous of degree
//! `col_shift[c] - row_shift[r]` or zero; columns may record a head position.

use crate::coeff::Coeff;
use crate::error::Error;
use crate::poly::Poly;
use crate::term::Ambient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<C: Coeff> {
    pub nvars: usize,
    pub row_shifts: Vec<i64>,
    pub col_shifts: Vec<i64>,
    entries: Vec<Poly<C>>,
    /// Row of the marked head term per column, when the columns come from a
    /// marked set.
    pub head_rows: Option<Vec<usize>>,
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn zero(nvars: usize, row_shifts: Vec<i64>, col_shifts: Vec<i64>) -> Self {
        let entries = vec![Poly::zero(); row_shifts.len() * col_shifts.len()];
        PolyMatrix { nvars, row_shifts, col_shifts, entries, head_rows: None }
    }

    pub fn rows(&self) -> usize {
        self.row_shifts.len()
    }

    pub fn cols(&self) -> usize {
        self.col_shifts.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly<C> {
        &self.entries[r * self.cols() + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, p: Poly<C>) {
        debug_assert!(self.entry_degree_ok(r, c, &p));
        let cols = self.cols();
        self.entries[r * cols + c] = p;
    }

    fn entry_degree_ok(&self, r: usize, c: usize, p: &Poly<C>) -> bool {
        if p.is_zero() {
            return true;
        }
        let ambient = Ambient::ring(self.nvars);
        p.homogeneous_degree(&ambient) == Some(self.col_shifts[c] - self.row_shifts[r])
    }

    pub fn column(&self, c: usize) -> Vec<&Poly<C>> {
        (0..self.rows()).map(|r| self.entry(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn identity(nvars: usize, shifts: Vec<i64>) -> Self {
        let n = shifts.len();
        let mut m = PolyMatrix::zero(nvars, shifts.clone(), shifts);
        for i in 0..n {
            m.set_entry(i, i, Poly::monic_term(crate::term::ModuleTerm::ring(crate::term::Term::one(nvars))));
        }
        m
    }

    /// Matrix product; the column shifts of `self` must equal the row shifts
    /// of `rhs`, which preserves graded homogeneity entrywise.
    pub fn multiply(&self, rhs: &PolyMatrix<C>) -> Result<PolyMatrix<C>, Error> {
        if self.col_shifts != rhs.row_shifts || self.nvars != rhs.nvars {
            return Err(Error::ShapeMismatch {
                left_cols: self.col_shifts.clone(),
                right_rows: rhs.row_shifts.clone(),
            });
        }
        let mut out = PolyMatrix::zero(self.nvars, self.row_shifts.clone(), rhs.col_shifts.clone());
        for r in 0..self.rows() {
            for c in 0..rhs.cols() {
                let mut acc = Poly::zero();
                for k in 0..self.cols() {
                    let a = self.entry(r, k);
                    let b = rhs.entry(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul_ring(b));
                }
                out.set_entry(r, c, acc);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rint, Rat};
    use crate::poly::Poly;
    use crate::term::{ModuleTerm, Term};

    fn ring_poly(_nvars: usize, terms: &[(&[u32], i64)]) -> Poly<Rat> {
        let mut p = Poly::zero();
        for (exps, c) in terms {
            p.add_term(ModuleTerm::ring(Term::from_exps(exps.to_vec())), rint(*c));
        }
        p
    }

    #[test]
    fn identity_multiplication() {
        let mut m = PolyMatrix::zero(3, vec![0], vec![2, 2]);
        m.set_entry(0, 0, ring_poly(3, &[(&[0, 0, 2], 1)]));
        m.set_entry(0, 1, ring_poly(3, &[(&[0, 2, 0], 1)]));
        let id = PolyMatrix::identity(3, vec![0]);
        assert_eq!(id.multiply(&m).unwrap(), m);
    }

    #[test]
    fn one_by_one_product() {
        let mut a = PolyMatrix::zero(3, vec![0], vec![1]);
        a.set_entry(0, 0, ring_poly(3, &[(&[0, 0, 1], 1)]));
        let mut b = PolyMatrix::zero(3, vec![1], vec![3]);
        b.set_entry(0, 0, ring_poly(3, &[(&[0, 2, 0], 1)]));
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.entry(0, 0), &ring_poly(3, &[(&[0, 2, 1], 1)]));
    }

    #[test]
    fn shift_mismatch_is_an_error() {
        let a = PolyMatrix::<Rat>::zero(3, vec![0], vec![2]);
        let b = PolyMatrix::<Rat>::zero(3, vec![3], vec![4]);
        assert!(a.multiply(&b).is_err());
    }
}

//! Independent exact linear-algebra oracles: degreewise spans of homogeneous
//! ideals and modules as Macaulay matrices, direct-sum verification, ideal
//! intersection by degree, extraction of marked bases from spans, and
//! Hilbert functions. Elimination is fraction-free (Bareiss) on integer rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::coeff::{rint, Rat};
use crate::error::{Error, Result};
use crate::marked::MarkedSet;
use crate::poly::Poly;
use crate::quasistable::QuasiStableModule;
use crate::term::{monomials_of_degree, Ambient, ModuleTerm, Term};

/// The degree-`s` piece of a homogeneous submodule as a row-reduced exact
/// matrix over the canonical term basis of that degree. Rows are in reduced
/// echelon form with primitive integer entries and positive pivots, so the
/// representation is canonical; the row count is the dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanPiece {
    pub degree: i64,
    pub cols: Vec<ModuleTerm>,
    pub rows: Vec<Vec<Rat>>,
}

impl SpanPiece {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Per-degree spans of one homogeneous submodule.
pub type DegreewiseSpan = BTreeMap<i64, SpanPiece>;

fn poly_to_row(p: &Poly<Rat>, cols: &[ModuleTerm]) -> Vec<Rat> {
    cols.iter().map(|t| p.coeff(t)).collect()
}

fn row_to_poly(row: &[Rat], cols: &[ModuleTerm]) -> Poly<Rat> {
    let mut p = Poly::zero();
    for (c, t) in row.iter().zip(cols) {
        p.add_term(t.clone(), c.clone());
    }
    p
}

/// Exact span of the degree-`s` multiples of homogeneous generators.
pub fn component_basis(ambient: &Ambient, generators: &[Poly<Rat>], s: i64) -> SpanPiece {
    let cols = ambient.terms_of_degree(s);
    let mut rows = Vec::new();
    for g in generators {
        let d = match g.homogeneous_degree(ambient) {
            Some(d) => d,
            None => continue,
        };
        if d > s {
            continue;
        }
        for m in monomials_of_degree(ambient.nvars, (s - d) as u32) {
            rows.push(poly_to_row(&g.mul_term(&m, &rint(1)), &cols));
        }
    }
    SpanPiece { degree: s, cols, rows: rref(rows) }
}

pub fn degreewise_span(
    ambient: &Ambient,
    generators: &[Poly<Rat>],
    degrees: impl IntoIterator<Item = i64>,
) -> DegreewiseSpan {
    degrees
        .into_iter()
        .map(|s| (s, component_basis(ambient, generators, s)))
        .collect()
}

/// Does `(F)_s + <N(U)_s>` fill the whole degree-`s` piece as a direct sum?
pub fn direct_sum_check(set: &MarkedSet<Rat>, s: i64) -> bool {
    let ambient = &set.module.ambient;
    let gens: Vec<Poly<Rat>> = set.elems.iter().map(|e| e.poly()).collect();
    let piece = component_basis(ambient, &gens, s);
    let escalier = set.module.sous_escalier(s);
    let total = ambient.dim_of_degree(s);
    if piece.dim() + escalier.len() != total {
        return false;
    }
    let mut rows = piece.rows.clone();
    for t in &escalier {
        rows.push(poly_to_row(&Poly::monic_term(t.clone()), &piece.cols));
    }
    rref(rows).len() == total
}

/// Exact intersection of the degree-`s` spans of several generator lists.
pub fn intersect_by_degree(ambient: &Ambient, ideals: &[Vec<Poly<Rat>>], s: i64) -> SpanPiece {
    let mut pieces = ideals.iter().map(|g| component_basis(ambient, g, s));
    let mut acc = match pieces.next() {
        Some(p) => p,
        None => SpanPiece { degree: s, cols: ambient.terms_of_degree(s), rows: vec![] },
    };
    for p in pieces {
        acc = intersect_pieces(&acc, &p);
    }
    acc
}

fn intersect_pieces(a: &SpanPiece, b: &SpanPiece) -> SpanPiece {
    assert_eq!(a.cols, b.cols);
    // v in rowspace(A) ∩ rowspace(B) iff v = xA = yB; the left kernel of the
    // stacked matrix [A; -B] yields all such (x, y).
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    for r in &a.rows {
        stacked.push(r.clone());
    }
    for r in &b.rows {
        stacked.push(r.iter().map(|c| -c).collect());
    }
    let kernel = left_kernel(&stacked);
    let mut rows = Vec::new();
    for z in kernel {
        let mut v = vec![rint(0); a.cols.len()];
        for (i, coef) in z.iter().take(a.rows.len()).enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (j, cell) in a.rows[i].iter().enumerate() {
                v[j] += coef * cell;
            }
        }
        rows.push(v);
    }
    SpanPiece { degree: a.degree, cols: a.cols.clone(), rows: rref(rows) }
}

/// Extracts the marked basis of a submodule given by degreewise spans: for
/// each head the unique span element equal to head plus a sous-escalier tail.
pub fn marked_basis_from_spans(
    module: Arc<QuasiStableModule>,
    spans: &DegreewiseSpan,
) -> Result<MarkedSet<Rat>> {
    let ambient = module.ambient.clone();
    let mut assignments = Vec::new();
    for head in module.pommaret_basis() {
        let d = ambient.degree(head);
        let piece = spans
            .get(&d)
            .ok_or(Error::DirectSumFails { degree: d })?;
        let expected = ambient.dim_of_degree(d) - module.sous_escalier(d).len();
        if piece.dim() != expected {
            return Err(Error::DirectSumFails { degree: d });
        }
        // solve for a row combination whose U-part is exactly the head
        let u_cols: Vec<usize> = piece
            .cols
            .iter()
            .enumerate()
            .filter(|(_, t)| module.contains(t))
            .map(|(i, _)| i)
            .collect();
        let m = piece.rows.len();
        let mut system: Vec<Vec<Rat>> = Vec::with_capacity(u_cols.len());
        let mut rhs: Vec<Rat> = Vec::with_capacity(u_cols.len());
        for &j in &u_cols {
            system.push((0..m).map(|i| piece.rows[i][j].clone()).collect());
            rhs.push(if piece.cols[j] == *head { rint(1) } else { rint(0) });
        }
        let v = solve(system, rhs).ok_or(Error::DirectSumFails { degree: d })?;
        let mut elem = Poly::zero();
        for (i, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            elem = elem.add(&row_to_poly(&piece.rows[i], &piece.cols).scale(coef));
        }
        let mut tail = elem;
        tail.add_term(head.clone(), rint(-1));
        assignments.push((head.clone(), tail));
    }
    MarkedSet::new(module, assignments)
}

/// `HF(R^m(-d)/N, s)` for the submodule N spanned by the generators.
pub fn quotient_hilbert_function(
    ambient: &Ambient,
    generators: &[Poly<Rat>],
    degrees: impl IntoIterator<Item = i64>,
) -> Vec<usize> {
    degrees
        .into_iter()
        .map(|s| ambient.dim_of_degree(s) - component_basis(ambient, generators, s).dim())
        .collect()
}

/// Hilbert function of the submodule itself.
pub fn hilbert_function(
    ambient: &Ambient,
    generators: &[Poly<Rat>],
    degrees: impl IntoIterator<Item = i64>,
) -> Vec<usize> {
    degrees
        .into_iter()
        .map(|s| component_basis(ambient, generators, s).dim())
        .collect()
}

// ---------------------------------------------------------------------------
// exact elimination

fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .map(|c| c.denom().clone())
        .fold(BigInt::one(), num::integer::lcm);
    row.iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

fn primitive(row: &mut [BigInt]) {
    let gcd = row.iter().fold(BigInt::zero(), |a, b| num::integer::gcd(a, b.clone()));
    if gcd.is_zero() || gcd.is_one() {
        return;
    }
    for c in row.iter_mut() {
        *c /= &gcd;
    }
}

/// Canonical reduced row echelon form: Bareiss fraction-free forward
/// elimination on integer rows, Jordan reduction above the pivots, rows
/// primitive with positive pivots, zero rows dropped.
pub fn rref(rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    m.retain(|r| r.iter().any(|c| !c.is_zero()));
    if m.is_empty() {
        return Vec::new();
    }

    // Bareiss forward elimination
    let mut prev = BigInt::one();
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..ncols {
        if pivot_row >= m.len() {
            break;
        }
        let found = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero());
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        m.swap(pivot_row, r);
        let pivot = m[pivot_row][col].clone();
        for i in pivot_row + 1..m.len() {
            let factor = m[i][col].clone();
            for j in 0..ncols {
                let v = (&m[i][j] * &pivot - &factor * &m[pivot_row][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    m.truncate(pivot_row);

    // Jordan reduction over the rationals, then re-normalize to primitive
    // integer rows with positive pivots (unique canonical form).
    let mut q: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from(c.clone())).collect())
        .collect();
    for &(r, c) in pivots.iter().rev() {
        let inv = q[r][c].clone();
        for j in 0..ncols {
            q[r][j] = &q[r][j] / &inv;
        }
        for i in 0..r {
            let f = q[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let v = &q[i][j] - &f * &q[r][j];
                q[i][j] = v;
            }
        }
    }
    q.into_iter()
        .map(|row| {
            let mut int_row = clear_denominators(&row);
            primitive(&mut int_row);
            if let Some(first) = int_row.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    for c in int_row.iter_mut() {
                        *c = -c.clone();
                    }
                }
            }
            int_row.into_iter().map(BigRational::from).collect()
        })
        .collect()
}

pub fn rank(rows: Vec<Vec<Rat>>) -> usize {
    rref(rows).len()
}

/// Basis of the left kernel `{z : z M = 0}`.
fn left_kernel(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    // augment each row with an identity block and reduce over the M-columns
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..nrows).map(|j| if i == j { rint(1) } else { rint(0) }));
            row
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        if pivot_row >= aug.len() {
            break;
        }
        let found = (pivot_row..aug.len()).find(|&r| !aug[r][col].is_zero());
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        aug.swap(pivot_row, r);
        let inv = aug[pivot_row][col].clone();
        for j in 0..aug[pivot_row].len() {
            aug[pivot_row][j] = &aug[pivot_row][j] / &inv;
        }
        for i in 0..aug.len() {
            if i == pivot_row || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            for j in 0..aug[i].len() {
                let v = &aug[i][j] - &f * &aug[pivot_row][j];
                aug[i][j] = v;
            }
        }
        pivot_row += 1;
    }
    aug.into_iter()
        .filter(|row| row[..ncols].iter().all(|c| c.is_zero()))
        .map(|row| row[ncols..].to_vec())
        .collect()
}

/// Solves `A x = b` exactly; `None` when inconsistent. Underdetermined
/// systems return the solution with free variables set to zero.
pub fn solve(a: Vec<Vec<Rat>>, b: Vec<Rat>) -> Option<Vec<Rat>> {
    let nrows = a.len();
    if nrows == 0 {
        return Some(Vec::new());
    }
    let ncols = a[0].len();
    let mut aug: Vec<Vec<Rat>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        if pivot_row >= nrows {
            break;
        }
        let found = (pivot_row..nrows).find(|&r| !aug[r][col].is_zero());
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        aug.swap(pivot_row, r);
        let inv = aug[pivot_row][col].clone();
        for j in 0..=ncols {
            aug[pivot_row][j] = &aug[pivot_row][j] / &inv;
        }
        for i in 0..nrows {
            if i == pivot_row || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            for j in 0..=ncols {
                let v = &aug[i][j] - &f * &aug[pivot_row][j];
                aug[i][j] = v;
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    for row in aug.iter().skip(pivot_row) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![rint(0); ncols];
    for (r, c) in pivots {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

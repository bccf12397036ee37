//! Terms of the polynomial ring and of graded free modules, with the two
//! orders the library relies on: a storage/iteration order and the canonical
//! display order used for enumerating sous-escalier slots and matrix columns.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A power product `x0^a0 * ... * xn^an`, stored as a dense exponent vector.
/// Dense vectors win at desk scale where comparisons dominate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub exps: Vec<u32>,
}

impl Term {
    pub fn one(nvars: usize) -> Self {
        Term { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Term { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Term { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index of the smallest variable dividing the term; `None` for 1.
    pub fn min_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    /// Index of the greatest variable dividing the term; `None` for 1.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.nvars(), other.nvars());
        Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Term {
        let mut t = self.clone();
        t.exps[i] += 1;
        t
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Term) -> Option<Term> {
        if !other.divides(self) {
            return None;
        }
        Some(Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Weight `sum(i * a_i)`; the canonical enumeration sorts same-degree
    /// terms by descending weight.
    pub fn weight(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| i as u64 * e as u64)
            .sum()
    }

    /// Canonical display comparison: degree ascending, weight descending,
    /// top-variable exponent descending, then (a_1, ..., a_{n-1}) descending.
    pub fn display_cmp(&self, other: &Term) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.display_tie_cmp(other))
    }

    /// The within-degree part of the canonical comparison.
    pub fn display_tie_cmp(&self, other: &Term) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        other.weight().cmp(&self.weight()).then_with(|| {
            let n = self.nvars() - 1;
            other.exps[n].cmp(&self.exps[n]).then_with(|| {
                for i in 1..n {
                    match other.exps[i].cmp(&self.exps[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
        })
    }
}

/// Storage order: degree, then reverse lexicographic on exponents.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in (0..self.nvars()).rev() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A term `x^a * e_k` of a graded free module; `comp` is 0-based internally
/// and rendered 1-based (`e1`, `e2`, ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleTerm {
    pub term: Term,
    pub comp: usize,
}

impl ModuleTerm {
    pub fn new(term: Term, comp: usize) -> Self {
        ModuleTerm { term, comp }
    }

    pub fn ring(term: Term) -> Self {
        ModuleTerm { term, comp: 0 }
    }

    pub fn mul(&self, t: &Term) -> ModuleTerm {
        ModuleTerm { term: self.term.mul(t), comp: self.comp }
    }

    pub fn display_cmp(&self, other: &ModuleTerm) -> Ordering {
        self.term
            .display_cmp(&other.term)
            .then_with(|| self.comp.cmp(&other.comp))
    }
}

/// Iteration order: component, degree, reverse lexicographic. Purely an
/// implementation convention; the reduction strategy picks maxima in it.
impl Ord for ModuleTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.comp
            .cmp(&other.comp)
            .then_with(|| self.term.cmp(&other.term))
    }
}

impl PartialOrd for ModuleTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModuleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*e{}", self.term, self.comp + 1)
    }
}

/// The ambient graded free module `R^m(-d)`: number of variables and one
/// shift per component. Ideals are the one-component case with shift 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambient {
    pub nvars: usize,
    pub shifts: Vec<i64>,
}

impl Ambient {
    pub fn ring(nvars: usize) -> Self {
        Ambient { nvars, shifts: vec![0] }
    }

    pub fn module(nvars: usize, shifts: Vec<i64>) -> Self {
        Ambient { nvars, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn top_var(&self) -> usize {
        self.nvars - 1
    }

    /// Graded degree `|a| + d_k`.
    pub fn degree(&self, t: &ModuleTerm) -> i64 {
        t.term.degree() as i64 + self.shifts[t.comp]
    }

    pub fn is_ideal(&self) -> bool {
        self.shifts == [0]
    }

    /// Canonical order for enumerating generators and matrix columns:
    /// graded degree, term degree, within-degree tie, component.
    pub fn graded_display_cmp(&self, a: &ModuleTerm, b: &ModuleTerm) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| a.term.degree().cmp(&b.term.degree()))
            .then_with(|| a.term.display_tie_cmp(&b.term))
            .then_with(|| a.comp.cmp(&b.comp))
    }

    /// All module terms of graded degree `s`, component-major, each
    /// component's block in canonical display order.
    pub fn terms_of_degree(&self, s: i64) -> Vec<ModuleTerm> {
        let mut out = Vec::new();
        for comp in 0..self.rank() {
            let d = s - self.shifts[comp];
            if d < 0 {
                continue;
            }
            for t in monomials_of_degree(self.nvars, d as u32) {
                out.push(ModuleTerm::new(t, comp));
            }
        }
        out
    }

    /// Dimension of the degree-`s` piece of the ambient free module.
    pub fn dim_of_degree(&self, s: i64) -> usize {
        (0..self.rank())
            .map(|comp| {
                let d = s - self.shifts[comp];
                if d < 0 {
                    0
                } else {
                    binomial(d as usize + self.nvars - 1, self.nvars - 1)
                }
            })
            .sum()
    }
}

/// All monomials of the given total degree, in canonical display order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Term> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut out, &mut exps, 0, degree);
    fn fill(out: &mut Vec<Term>, exps: &mut Vec<u32>, var: usize, left: u32) {
        if var + 1 == exps.len() {
            exps[var] = left;
            out.push(Term::from_exps(exps.clone()));
            exps[var] = 0;
            return;
        }
        for e in 0..=left {
            exps[var] = e;
            fill(out, exps, var + 1, left - e);
        }
        exps[var] = 0;
    }
    out.sort_by(|a, b| a.display_cmp(b));
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(exps: &[u32]) -> Term {
        Term::from_exps(exps.to_vec())
    }

    #[test]
    fn degree_and_var_bounds() {
        let m = t(&[1, 0, 2]); // x0*x2^2
        assert_eq!(m.degree(), 3);
        assert_eq!(m.min_var(), Some(0));
        assert_eq!(m.max_var(), Some(2));
        assert_eq!(Term::one(3).min_var(), None);
    }

    #[test]
    fn display_order_matches_enumeration_of_quadrics_in_four_vars() {
        // x3^2, x3x2, x3x1, x2^2, x3x0, x2x1, x1^2, x2x0, x1x0, x0^2
        let names: Vec<String> = monomials_of_degree(4, 2)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            names,
            vec![
                "x3^2", "x3*x2", "x3*x1", "x2^2", "x3*x0", "x2*x1", "x1^2", "x2*x0", "x1*x0",
                "x0^2"
            ]
        );
    }

    #[test]
    fn display_order_matches_enumeration_of_cubics_in_four_vars() {
        let names: Vec<String> = monomials_of_degree(4, 3)
            .iter()
            .map(|m| m.to_string())
            .filter(|s| {
                // keep the sous-escalier of (x3^2, x3*x2, x2^3, x3*x1^2)
                ![
                    "x3^3", "x3^2*x2", "x3^2*x1", "x3^2*x0", "x3*x2^2", "x3*x2*x1", "x3*x2*x0",
                    "x3*x1^2", "x2^3",
                ]
                .contains(&s.as_str())
            })
            .collect();
        assert_eq!(
            names,
            vec![
                "x2^2*x1", "x3*x1*x0", "x2*x1^2", "x2^2*x0", "x3*x0^2", "x1^3", "x2*x1*x0",
                "x1^2*x0", "x2*x0^2", "x1*x0^2", "x0^3"
            ]
        );
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(2, 5), 0);
    }
}

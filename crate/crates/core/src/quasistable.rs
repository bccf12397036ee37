//! Quasi-stable monomial modules: Pommaret cones, the quasi-stability test,
//! Pommaret-basis completion, sous-escalier enumeration and the numerical
//! invariants (g-table, D, reg, pdim, ranks r_{i,j}).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::{binomial, Ambient, ModuleTerm, Term};

/// Is `t` in the Pommaret cone of `generator` (same component required)?
/// With `slice = Some(i)` the multiplier is additionally capped below `x_i`.
pub fn cone_contains(generator: &ModuleTerm, t: &ModuleTerm, slice: Option<usize>) -> bool {
    if generator.comp != t.comp {
        return false;
    }
    let delta = match t.term.div(&generator.term) {
        Some(d) => d,
        None => return false,
    };
    let cap = match (generator.term.min_var(), slice) {
        (None, None) => return true, // cone of the unit term is everything
        (None, Some(i)) => i.saturating_sub(1),
        (Some(m), None) => m,
        (Some(m), Some(i)) => m.min(i.saturating_sub(1)),
    };
    match delta.max_var() {
        None => true,
        Some(mv) => mv <= cap,
    }
}

/// Number of degree-`d` multiplier monomials inside a Pommaret cone whose
/// generator has minimal variable `x_q` (variables `x_0..x_q` multiplicative).
fn cone_slice_count(q: usize, d: i64) -> usize {
    if d < 0 {
        0
    } else {
        binomial(d as usize + q, q)
    }
}

/// Quasi-stability test on a generating set, by the saturation
/// characterization checked on minimal generators: for every generator, every
/// index `i` with positive exponent and every `j > i`, some power
/// `x_j^s * x^a / x_i^{a_i}` lies in the component ideal, with `s` bounded by
/// the maximal generator degree.
pub fn is_quasi_stable(ambient: &Ambient, gens: &[ModuleTerm]) -> bool {
    let minimal = minimalize(gens);
    let max_deg = minimal.iter().map(|t| t.term.degree()).max().unwrap_or(0) as usize;
    let divides = |m: &ModuleTerm| minimal.iter().any(|g| g.comp == m.comp && g.term.divides(&m.term));
    for g in &minimal {
        for i in 0..ambient.nvars {
            if g.term.exps[i] == 0 {
                continue;
            }
            for j in i + 1..ambient.nvars {
                let mut base = g.term.clone();
                base.exps[i] = 0;
                let found = (0..=max_deg).any(|s| {
                    let mut cand = base.clone();
                    cand.exps[j] += s as u32;
                    divides(&ModuleTerm::new(cand, g.comp))
                });
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

/// Drops generators divisible by another generator in the same component.
pub fn minimalize(gens: &[ModuleTerm]) -> Vec<ModuleTerm> {
    let mut out: Vec<ModuleTerm> = Vec::new();
    let set: BTreeSet<ModuleTerm> = gens.iter().cloned().collect();
    for g in &set {
        let redundant = set
            .iter()
            .any(|h| h != g && h.comp == g.comp && h.term.divides(&g.term));
        if !redundant {
            out.push(g.clone());
        }
    }
    out.sort_by(|a, b| a.display_cmp(b).then_with(|| a.cmp(b)));
    out
}

/// Numerical invariants of a quasi-stable module read off its Pommaret basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericInvariants {
    /// g[h][q]: number of Pommaret basis terms of graded degree h with
    /// minimal variable x_q.
    pub g_table: BTreeMap<(i64, usize), usize>,
    /// Least minimal-variable index over the Pommaret basis.
    pub d_min: usize,
    pub reg: i64,
    pub pdim: usize,
    /// Ranks by the closed formula (sums q from 1 to n-i).
    pub ranks_formula: BTreeMap<(usize, i64), usize>,
    /// Ranks by the direct combinatorial count (authoritative).
    pub ranks_direct: BTreeMap<(usize, i64), usize>,
    /// Set when the basis has min-index-0 generators, where the closed
    /// formula and the direct count disagree; the direct count is the one
    /// matching actual resolution ranks.
    pub formula_discrepancy: bool,
}

/// A monomial submodule with a finite Pommaret basis, caches computed eagerly
/// at construction. Immutable afterwards and freely shareable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiStableModule {
    pub ambient: Ambient,
    min_basis: Vec<ModuleTerm>,
    pommaret: Vec<ModuleTerm>,
    invariants: NumericInvariants,
}

pub const DEFAULT_DEGREE_CAP_SLACK: u32 = 0;

impl QuasiStableModule {
    pub fn new(ambient: Ambient, gens: Vec<ModuleTerm>) -> Result<Self> {
        Self::with_degree_cap(ambient, gens, None)
    }

    /// `cap` bounds the completion degree; the default is
    /// `2 * max generator degree + n`, a safety valve only.
    pub fn with_degree_cap(ambient: Ambient, gens: Vec<ModuleTerm>, cap: Option<u32>) -> Result<Self> {
        for g in &gens {
            assert_eq!(g.term.nvars(), ambient.nvars, "generator in wrong ring");
            assert!(g.comp < ambient.rank(), "generator component out of range");
        }
        let mut min_basis = minimalize(&gens);
        min_basis.sort_by(|a, b| ambient.graded_display_cmp(a, b));
        if !is_quasi_stable(&ambient, &min_basis) {
            return Err(Error::NotQuasiStable {
                reason: "the saturation test fails on the minimal generators".into(),
            });
        }
        let max_deg = min_basis.iter().map(|t| t.term.degree()).max().unwrap_or(0);
        let cap = cap.unwrap_or(2 * max_deg + ambient.nvars as u32 + DEFAULT_DEGREE_CAP_SLACK);
        let pommaret = complete(&ambient, &min_basis, cap).ok_or(Error::NotQuasiStable {
            reason: format!("Pommaret completion exceeded the degree cap {cap}"),
        })?;
        let invariants = invariants_from_pommaret(&ambient, &pommaret);
        Ok(QuasiStableModule { ambient, min_basis, pommaret, invariants })
    }

    pub fn minimal_basis(&self) -> &[ModuleTerm] {
        &self.min_basis
    }

    /// The unique finite set whose Pommaret cones disjointly cover the module.
    pub fn pommaret_basis(&self) -> &[ModuleTerm] {
        &self.pommaret
    }

    pub fn is_stable(&self) -> bool {
        self.pommaret.len() == self.min_basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.min_basis.is_empty()
    }

    /// Membership via divisibility by a minimal generator.
    pub fn contains(&self, t: &ModuleTerm) -> bool {
        self.min_basis
            .iter()
            .any(|g| g.comp == t.comp && g.term.divides(&t.term))
    }

    /// The unique Pommaret basis element whose cone contains `t`.
    pub fn cone_of(&self, t: &ModuleTerm) -> Option<&ModuleTerm> {
        self.pommaret.iter().find(|g| cone_contains(g, t, None))
    }

    /// Degree-`s` terms of the ambient module outside U, canonical order.
    pub fn sous_escalier(&self, s: i64) -> Vec<ModuleTerm> {
        self.ambient
            .terms_of_degree(s)
            .into_iter()
            .filter(|t| !self.contains(t))
            .collect()
    }

    /// Number of degree-`s` terms inside U, counted through the cones.
    pub fn degree_count_by_cones(&self, s: i64) -> usize {
        self.pommaret
            .iter()
            .map(|g| {
                let q = g.term.min_var().unwrap_or(self.ambient.top_var());
                cone_slice_count(q, s - self.ambient.degree(g))
            })
            .sum()
    }

    pub fn invariants(&self) -> &NumericInvariants {
        &self.invariants
    }

    /// Non-multiplicative variables of a Pommaret basis element.
    pub fn non_multiplicative(&self, g: &ModuleTerm) -> Vec<usize> {
        let min = g.term.min_var().unwrap_or(self.ambient.top_var());
        (min + 1..self.ambient.nvars).collect()
    }

    /// The graded-degree-s slice of U as the truncated module `U_{>= s}`.
    pub fn truncate_module(&self, s: i64) -> Result<QuasiStableModule> {
        let mut gens: Vec<ModuleTerm> = Vec::new();
        for g in &self.pommaret {
            let d = self.ambient.degree(g);
            if d >= s {
                gens.push(g.clone());
            } else {
                let q = g.term.min_var().unwrap_or(self.ambient.top_var());
                for delta in crate::term::monomials_of_degree(q + 1, (s - d) as u32) {
                    let mut full = vec![0u32; self.ambient.nvars];
                    full[..=q].copy_from_slice(&delta.exps);
                    gens.push(g.mul(&Term::from_exps(full)));
                }
            }
        }
        QuasiStableModule::new(self.ambient.clone(), gens)
    }
}

/// Pommaret-basis completion: repeatedly adjoin non-multiplicative
/// prolongations not covered by the existing cones, smallest candidate first.
fn complete(ambient: &Ambient, min_basis: &[ModuleTerm], cap: u32) -> Option<Vec<ModuleTerm>> {
    let mut basis: BTreeSet<ModuleTerm> = min_basis.iter().cloned().collect();
    let covered = |basis: &BTreeSet<ModuleTerm>, t: &ModuleTerm| {
        basis.iter().any(|g| cone_contains(g, t, None))
    };
    loop {
        let mut new_terms: BTreeSet<ModuleTerm> = BTreeSet::new();
        for g in &basis {
            let min = g.term.min_var().unwrap_or(ambient.top_var());
            for i in min + 1..ambient.nvars {
                let cand = ModuleTerm::new(g.term.mul_var(i), g.comp);
                if !covered(&basis, &cand) && !new_terms.contains(&cand) {
                    new_terms.insert(cand);
                }
            }
        }
        if new_terms.is_empty() {
            let mut out: Vec<ModuleTerm> = basis.into_iter().collect();
            out.sort_by(|a, b| ambient.graded_display_cmp(a, b));
            return Some(out);
        }
        // adjoin one candidate at a time, lowest degree first, so cones never
        // overlap and the cap check sees the minimal escalation
        let first = new_terms
            .into_iter()
            .min_by(|a, b| a.term.degree().cmp(&b.term.degree()).then_with(|| a.cmp(b)))
            .unwrap();
        if first.term.degree() > cap {
            return None;
        }
        basis.insert(first);
    }
}

fn invariants_from_pommaret(ambient: &Ambient, pommaret: &[ModuleTerm]) -> NumericInvariants {
    let n = ambient.top_var();
    let mut g_table: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut d_min = n;
    let mut reg = i64::MIN;
    for t in pommaret {
        let q = t.term.min_var().unwrap_or(n);
        let h = ambient.degree(t);
        *g_table.entry((h, q)).or_insert(0) += 1;
        d_min = d_min.min(q);
        reg = reg.max(h);
    }
    if pommaret.is_empty() {
        d_min = n;
        reg = 0;
    }
    let pdim = n - d_min;

    let mut ranks_formula: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for i in 0..=pdim {
        for (&(h, q), &count) in &g_table {
            if q >= 1 && q <= n.saturating_sub(i) {
                let c = binomial(n - q, i) * count;
                if c > 0 {
                    *ranks_formula.entry((i, h + i as i64)).or_insert(0) += c;
                }
            }
        }
    }

    let mut ranks_direct: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for t in pommaret {
        let q = t.term.min_var().unwrap_or(n);
        let h = ambient.degree(t);
        for i in 0..=(n - q) {
            let c = binomial(n - q, i);
            if c > 0 {
                *ranks_direct.entry((i, h + i as i64)).or_insert(0) += c;
            }
        }
    }

    let formula_discrepancy = ranks_formula != ranks_direct;
    NumericInvariants { g_table, d_min, reg, pdim, ranks_formula, ranks_direct, formula_discrepancy }
}

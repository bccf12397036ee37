//! Generic computations over parameter rings: generic marked sets with
//! parameters C, the marked-scheme ideal, generic pre-syzygies with
//! parameters B (and A, ...), the syzygy- and resolution-scheme ideals, the
//! B -> b(C) substitution map, the minimality locus and point evaluation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{Signed, Zero};

use crate::coeff::{Coeff, ParamId, ParamPoly, Rat};
use crate::error::{Error, Result};
use crate::marked::MarkedSet;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::quasistable::QuasiStableModule;
use crate::syzres::{self, fundamental_syzygies, level_of, predicted_support_over};
use crate::term::ModuleTerm;

/// Sign carried by every parameter slot. `Minus` stores `head - sum c*term`;
/// `Plus` stores `head + sum c*term`. Both describe the same schemes; the
/// choice only fixes how coefficients are read off and rendered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSign {
    Minus,
    Plus,
}

impl TailSign {
    fn apply(&self, p: ParamPoly) -> ParamPoly {
        match self {
            TailSign::Minus => p.neg(),
            TailSign::Plus => p,
        }
    }

    fn read(&self, coefficient: &Rat) -> Rat {
        match self {
            TailSign::Minus => -coefficient,
            TailSign::Plus => coefficient.clone(),
        }
    }
}

/// What a scheme presentation's generators cut out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeTag {
    MarkedScheme,
    SyzygyScheme,
    ResolutionScheme(usize),
    MinimalityLocus,
}

/// A parameter ring (named families with counts) plus the generating set of
/// a defining ideal. Generators are polynomials purely in the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePresentation {
    pub tag: SchemeTag,
    pub families: Vec<(String, usize)>,
    pub gens: Vec<ParamPoly>,
}

impl SchemePresentation {
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn dimension_if_empty(&self) -> Option<usize> {
        if self.is_zero_ideal() {
            Some(self.families.iter().map(|(_, c)| c).sum())
        } else {
            None
        }
    }
}

/// One level of generic pre-syzygies: the stable level module, the matrix
/// M_t, and the parameter slots (column, position) in enumeration order.
#[derive(Clone, Debug)]
pub struct GenericLevel {
    pub family: String,
    pub level_module: QuasiStableModule,
    pub params: Vec<ParamId>,
    pub slots: Vec<(usize, ModuleTerm)>,
    pub matrix: PolyMatrix<ParamPoly>,
}

/// The full generic tower over a quasi-stable module: the generic marked set
/// with parameters C and the chain of generic pre-syzygy levels.
#[derive(Clone, Debug)]
pub struct GenericChart {
    pub module: Arc<QuasiStableModule>,
    pub sign: TailSign,
    pub c_family: String,
    pub c_params: Vec<ParamId>,
    pub c_slots: Vec<(usize, ModuleTerm)>,
    pub generic: MarkedSet<ParamPoly>,
    pub levels: Vec<GenericLevel>,
}

/// Builds the generic marked set: one parameter per (Pommaret head,
/// same-degree sous-escalier term) pair, slots enumerated element by element
/// in canonical term order.
pub fn generic_marked_set(
    module: Arc<QuasiStableModule>,
    c_family: &str,
    sign: TailSign,
) -> GenericChart {
    let mut c_params = Vec::new();
    let mut c_slots = Vec::new();
    let mut assignments = Vec::new();
    for (j, head) in module.pommaret_basis().iter().enumerate() {
        let degree = module.ambient.degree(head);
        let mut tail: Poly<ParamPoly> = Poly::zero();
        for t in module.sous_escalier(degree) {
            let p = ParamId::indexed(c_family, c_params.len() as u32);
            c_params.push(p.clone());
            c_slots.push((j, t.clone()));
            tail.add_term(t, sign.apply(ParamPoly::param(p)));
        }
        assignments.push((head.clone(), tail));
    }
    let generic = MarkedSet::new(module.clone(), assignments)
        .expect("generic tails are supported in the sous-escalier by construction");
    GenericChart {
        module,
        sign,
        c_family: c_family.to_string(),
        c_params,
        c_slots,
        generic,
        levels: Vec::new(),
    }
}

impl GenericChart {
    /// The matrix M_0 whose columns are the generic marked elements.
    pub fn m0(&self) -> PolyMatrix<ParamPoly> {
        let ambient = &self.module.ambient;
        let mut m = PolyMatrix::zero(ambient.nvars, ambient.shifts.clone(), self.generic.degrees());
        let mut heads = Vec::new();
        for (c, e) in self.generic.elems.iter().enumerate() {
            heads.push(e.head.comp);
            let p = e.poly();
            for r in 0..ambient.rank() {
                let mut entry = Poly::zero();
                for (t, coeff) in &p.terms {
                    if t.comp == r {
                        entry.add_term(ModuleTerm::ring(t.term.clone()), coeff.clone());
                    }
                }
                m.set_entry(r, c, entry);
            }
        }
        m.head_rows = Some(heads);
        m
    }

    /// Extends the tower by one generic pre-syzygy level with the given
    /// parameter family name. One column per Pommaret generator of the level
    /// module; the column support is the predicted support, the head slot
    /// carries coefficient 1.
    pub fn push_level(&mut self, family: &str) -> Result<&GenericLevel> {
        let parent: &QuasiStableModule = match self.levels.last() {
            None => &self.module,
            Some(l) => &l.level_module,
        };
        let level_module = level_of(parent)?;
        let parent_degrees: Vec<i64> = parent
            .pommaret_basis()
            .iter()
            .map(|t| parent.ambient.degree(t))
            .collect();
        let col_heads: Vec<ModuleTerm> = level_module.pommaret_basis().to_vec();
        let col_shifts: Vec<i64> = col_heads
            .iter()
            .map(|h| level_module.ambient.degree(h))
            .collect();
        let mut matrix = PolyMatrix::<ParamPoly>::zero(
            self.module.ambient.nvars,
            parent_degrees,
            col_shifts,
        );
        let mut params = Vec::new();
        let mut slots = Vec::new();
        let mut head_rows = Vec::new();
        for (c, head) in col_heads.iter().enumerate() {
            head_rows.push(head.comp);
            let var = head.term.min_var().expect("level heads are variables");
            let support = predicted_support_over(parent, &level_module, head.comp, var);
            // monic head slot
            let mut head_entry = matrix.entry(head.comp, c).clone();
            head_entry.add_term(ModuleTerm::ring(head.term.clone()), ParamPoly::one());
            matrix.set_entry(head.comp, c, head_entry);
            for slot in support.into_iter().skip(1) {
                let p = ParamId::indexed(family, params.len() as u32);
                params.push(p.clone());
                slots.push((c, slot.clone()));
                let mut entry = matrix.entry(slot.comp, c).clone();
                entry.add_term(
                    ModuleTerm::ring(slot.term.clone()),
                    self.sign.apply(ParamPoly::param(p)),
                );
                matrix.set_entry(slot.comp, c, entry);
            }
        }
        matrix.head_rows = Some(head_rows);
        self.levels.push(GenericLevel {
            family: family.to_string(),
            level_module,
            params,
            slots,
            matrix,
        });
        Ok(self.levels.last().unwrap())
    }

    /// All parameter families with their counts, C first.
    pub fn families(&self) -> Vec<(String, usize)> {
        let mut out = vec![(self.c_family.clone(), self.c_params.len())];
        for l in &self.levels {
            out.push((l.family.clone(), l.params.len()));
        }
        out
    }

    /// Generators of the marked-scheme ideal: the x-coefficients of the
    /// normal forms of all non-multiplicative prolongations of the generic
    /// marked set.
    pub fn marked_scheme_ideal(&self) -> SchemePresentation {
        let mut gens = Vec::new();
        for (j, e) in self.generic.elems.iter().enumerate() {
            for i in self.module.non_multiplicative(&e.head) {
                let x = crate::term::Term::var(self.module.ambient.nvars, i);
                let w = self.generic.reduce(&e.poly().mul_term(&x, &ParamPoly::one()));
                for (_, q) in w.remainder.x_coefficients() {
                    gens.push(q);
                }
            }
        }
        SchemePresentation {
            tag: SchemeTag::MarkedScheme,
            families: vec![(self.c_family.clone(), self.c_params.len())],
            gens: canonicalize_gens(gens),
        }
    }

    /// S^(t) for one level: the x-coefficients of all entries of
    /// M_{t-1} * M_t.
    pub fn product_ideal(&self, t: usize) -> Result<SchemePresentation> {
        assert!(t >= 1 && t <= self.levels.len());
        let left = if t == 1 { self.m0() } else { self.levels[t - 2].matrix.clone() };
        let product = left.multiply(&self.levels[t - 1].matrix)?;
        let mut gens = Vec::new();
        for r in 0..product.rows() {
            for c in 0..product.cols() {
                for (_, q) in product.entry(r, c).x_coefficients() {
                    gens.push(q);
                }
            }
        }
        let tag = if t == 1 { SchemeTag::SyzygyScheme } else { SchemeTag::ResolutionScheme(t) };
        Ok(SchemePresentation { tag, families: self.families_up_to(t), gens: canonicalize_gens(gens) })
    }

    fn families_up_to(&self, t: usize) -> Vec<(String, usize)> {
        let mut out = vec![(self.c_family.clone(), self.c_params.len())];
        for l in self.levels.iter().take(t) {
            out.push((l.family.clone(), l.params.len()));
        }
        out
    }

    /// The b-polynomials of the level-1 parameters read off the generic
    /// unique writings: the substitution B -> b(C) under which M_0 * M_1
    /// collapses onto the marked-scheme generators.
    pub fn substitution_map(&self) -> SubstitutionMap {
        assert!(!self.levels.is_empty(), "build level 1 first");
        let level = &self.levels[0];
        let mut assignments = Vec::new();
        let mut writings: BTreeMap<usize, Vec<Poly<ParamPoly>>> = BTreeMap::new();
        for (param, (col, slot)) in level.params.iter().zip(&level.slots) {
            let head = &level.level_module.pommaret_basis()[*col];
            let var = head.term.min_var().unwrap();
            let parent = head.comp;
            let quotients = writings.entry(*col).or_insert_with(|| {
                let x = crate::term::Term::var(self.module.ambient.nvars, var);
                let f = self.generic.elems[parent].poly().mul_term(&x, &ParamPoly::one());
                self.generic.reduce(&f).quotients
            });
            let q = quotients[slot.comp].coeff(&ModuleTerm::ring(slot.term.clone()));
            let value = match self.sign {
                TailSign::Minus => q,
                TailSign::Plus => q.neg(),
            };
            assignments.push((param.clone(), value));
        }
        SubstitutionMap { assignments }
    }

    /// The minimality locus: marked-scheme generators together with the
    /// quotient coefficients landing on degree-0 syzygy slots.
    pub fn minimality_locus_ideal(&self) -> Result<SchemePresentation> {
        let marked = self.marked_scheme_ideal();
        let mut gens = marked.gens.clone();
        let level = level_of(&self.module)?;
        for head in level.pommaret_basis() {
            let parent = head.comp;
            let var = head.term.min_var().unwrap();
            let x = crate::term::Term::var(self.module.ambient.nvars, var);
            let f = self.generic.elems[parent].poly().mul_term(&x, &ParamPoly::one());
            let w = self.generic.reduce(&f);
            for q in &w.quotients {
                let constant = q.coeff(&ModuleTerm::ring(crate::term::Term::one(
                    self.module.ambient.nvars,
                )));
                if !Coeff::is_zero(&constant) {
                    gens.push(constant);
                }
            }
        }
        Ok(SchemePresentation {
            tag: SchemeTag::MinimalityLocus,
            families: vec![(self.c_family.clone(), self.c_params.len())],
            gens: canonicalize_gens(gens),
        })
    }

    /// The degree-0 slot positions of the generic first syzygies, as
    /// (level-1 parameter, column, row) triples.
    pub fn constant_slots(&self) -> Vec<(ParamId, usize, usize)> {
        let mut out = Vec::new();
        if let Some(level) = self.levels.first() {
            for (p, (col, slot)) in level.params.iter().zip(&level.slots) {
                if slot.term.is_one() {
                    out.push((p.clone(), *col, slot.comp));
                }
            }
        }
        out
    }

    /// The evaluation morphism at a concrete marked set over the rationals:
    /// parameter values that specialize the generic tower to `F` and its
    /// fundamental syzygies.
    pub fn evaluation_at(&self, set: &MarkedSet<Rat>) -> Result<BTreeMap<ParamId, Rat>> {
        if set.module != self.module {
            return Err(Error::EvaluationMismatch(
                "marked set lives over a different quasi-stable module".into(),
            ));
        }
        let mut values = BTreeMap::new();
        for (p, (j, t)) in self.c_params.iter().zip(&self.c_slots) {
            values.insert(p.clone(), self.sign.read(&set.elems[*j].tail.coeff(t)));
        }
        let mut current = set.clone();
        for level in &self.levels {
            if current.is_marked_basis().is_err() {
                // syzygy parameters are only defined over an actual basis;
                // leave them at zero, the marked-scheme generators already
                // witness the failure
                for p in &level.params {
                    values.insert(p.clone(), crate::coeff::rint(0));
                }
                continue;
            }
            let syz = fundamental_syzygies(&current)?;
            for (p, (col, slot)) in level.params.iter().zip(&level.slots) {
                values.insert(p.clone(), self.sign.read(&syz.elems[*col].tail.coeff(slot)));
            }
            current = syz;
        }
        Ok(values)
    }

    /// Evaluates a presentation's generators at a concrete marked set.
    /// Returns whether every generator vanishes, plus the residues.
    pub fn evaluate_point(
        &self,
        presentation: &SchemePresentation,
        set: &MarkedSet<Rat>,
    ) -> Result<(bool, Vec<Rat>)> {
        let values = self.evaluation_at(set)?;
        let residues: Vec<Rat> = presentation.gens.iter().map(|g| g.eval_rat(&values)).collect();
        Ok((residues.iter().all(Zero::is_zero), residues))
    }
}

/// The B -> b(C) assignment of Cor. eliminazione read off the generic
/// unique writings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMap {
    pub assignments: Vec<(ParamId, ParamPoly)>,
}

impl SubstitutionMap {
    pub fn as_map(&self) -> BTreeMap<ParamId, ParamPoly> {
        self.assignments.iter().cloned().collect()
    }
}

/// Marked-scheme ideal of a module: generic set, reductions, x-coefficients.
pub fn marked_scheme_ideal(module: Arc<QuasiStableModule>) -> SchemePresentation {
    generic_marked_set(module, "C", TailSign::Minus).marked_scheme_ideal()
}

/// The syzygy-scheme ideal S = S^(1) over K[B, C].
pub fn syzygy_scheme_ideal(module: Arc<QuasiStableModule>) -> Result<SchemePresentation> {
    let mut chart = generic_marked_set(module, "C", TailSign::Minus);
    chart.push_level("B")?;
    chart.product_ideal(1)
}

/// The chained ideals S^(1), ..., S^(n-D) of the resolution scheme.
pub fn resolution_scheme_ideals(
    module: Arc<QuasiStableModule>,
) -> Result<Vec<SchemePresentation>> {
    let length = module.ambient.top_var() - module.invariants().d_min;
    let mut chart = generic_marked_set(module, "C", TailSign::Minus);
    for t in 1..=length {
        let family = level_family_name(t);
        chart.push_level(&family)?;
    }
    (1..=length).map(|t| chart.product_ideal(t)).collect()
}

/// Conventional family names level by level: B, A, then B3, B4, ...
pub fn level_family_name(t: usize) -> String {
    match t {
        1 => "B".to_string(),
        2 => "A".to_string(),
        _ => format!("B{t}"),
    }
}

/// Canonical generator list: primitive rational content, positive leading
/// parameter monomial, duplicates removed, sorted. The ideal is what the
/// scheme is; canonical lists make comparisons stable.
pub fn canonicalize_gens(gens: Vec<ParamPoly>) -> Vec<ParamPoly> {
    let mut set: std::collections::BTreeSet<ParamPoly> = std::collections::BTreeSet::new();
    for g in gens {
        if Coeff::is_zero(&g) {
            continue;
        }
        set.insert(canonical_gen(&g));
    }
    set.into_iter().collect()
}

fn canonical_gen(g: &ParamPoly) -> ParamPoly {
    let lead = g.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap();
    let mut den_lcm = num::BigInt::from(1);
    let mut num_gcd = num::BigInt::from(0);
    for c in g.terms.values() {
        den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        num_gcd = num::integer::gcd(num_gcd, c.numer().clone());
    }
    let mut scale = Rat::new(den_lcm, if num_gcd.is_zero() { 1.into() } else { num_gcd });
    if lead.is_negative() {
        scale = -scale;
    }
    let terms = g
        .terms
        .iter()
        .map(|(m, c)| (m.clone(), c * &scale))
        .collect();
    ParamPoly { terms }
}

/// Agreement of the scheme with the direct criterion: the marked-scheme
/// generators vanish at F exactly when F is a marked basis.
pub fn scheme_matches_criterion(chart: &GenericChart, set: &MarkedSet<Rat>) -> Result<bool> {
    let presentation = chart.marked_scheme_ideal();
    let (vanish, _) = chart.evaluate_point(&presentation, set)?;
    Ok(vanish == set.is_marked_basis().is_ok())
}

/// M_0 * M_1 with B substituted by b(C): every x-coefficient must equal a
/// signed marked-scheme generator or zero (the constructive content of the
/// elimination isomorphism).
pub fn substituted_product_collapses(chart: &GenericChart) -> Result<bool> {
    assert!(!chart.levels.is_empty());
    let subs = chart.substitution_map().as_map();
    let m0 = chart.m0();
    let m1 = &chart.levels[0].matrix;
    let mut m1_sub = PolyMatrix::zero(m1.nvars, m1.row_shifts.clone(), m1.col_shifts.clone());
    for r in 0..m1.rows() {
        for c in 0..m1.cols() {
            let mut entry = Poly::zero();
            for (t, coeff) in &m1.entry(r, c).terms {
                entry.add_term(t.clone(), coeff.substitute(&subs));
            }
            m1_sub.set_entry(r, c, entry);
        }
    }
    let product = m0.multiply(&m1_sub)?;
    let marked = chart.marked_scheme_ideal();
    let gen_set: std::collections::BTreeSet<ParamPoly> = marked.gens.iter().cloned().collect();
    let mut collapsed = Vec::new();
    for r in 0..product.rows() {
        for c in 0..product.cols() {
            for (_, q) in product.entry(r, c).x_coefficients() {
                if !Coeff::is_zero(&q) {
                    collapsed.push(q);
                }
            }
        }
    }
    let collapsed_set: std::collections::BTreeSet<ParamPoly> =
        canonicalize_gens(collapsed).into_iter().collect();
    Ok(collapsed_set == gen_set)
}

/// Extends syzres reporting to parameter-ring matrices: positions of nonzero
/// constant entries, which over a non-field leave minimality undecided.
pub fn nonunit_constant_report(mats: &[PolyMatrix<ParamPoly>]) -> Vec<(usize, usize, usize)> {
    syzres::nonunit_constant_slots(mats)
}

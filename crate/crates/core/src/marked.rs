//! Marked elements and sets over a quasi-stable module, the Noetherian
//! confluent reduction relation, unique writings, the marked-basis criterion
//! and truncation.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quasistable::QuasiStableModule;
use crate::term::{ModuleTerm, Term};

/// A monic head term in the Pommaret basis plus a tail supported in the
/// sous-escalier, every tail term of the same graded degree as the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedElement<C: Coeff> {
    pub head: ModuleTerm,
    pub tail: Poly<C>,
}

impl<C: Coeff> MarkedElement<C> {
    /// head + tail as a polynomial.
    pub fn poly(&self) -> Poly<C> {
        let mut p = self.tail.clone();
        p.add_term(self.head.clone(), C::one());
        p
    }
}

/// A marked set: one marked element per Pommaret basis term, stored in the
/// canonical order of the basis. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSet<C: Coeff> {
    pub module: Arc<QuasiStableModule>,
    pub elems: Vec<MarkedElement<C>>,
}

/// The unique writing `f = sum P_gamma * f_gamma + g`: ring-polynomial
/// quotients aligned with the Pommaret basis and a remainder supported in
/// the sous-escalier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueWriting<C: Coeff> {
    pub quotients: Vec<Poly<C>>,
    pub remainder: Poly<C>,
}

/// Witness of a failed marked-basis check: the element, the
/// non-multiplicative variable, and the nonzero remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFailure<C: Coeff> {
    pub elem_index: usize,
    pub head: ModuleTerm,
    pub var: usize,
    pub remainder: Poly<C>,
}

/// Which reducible term the rewriting step picks. Confluence makes the
/// result strategy independent; `Greatest` is the deterministic default and
/// `Shuffled` exists to exercise exactly that in tests.
#[derive(Clone, Copy, Debug)]
pub enum ReductionStrategy {
    Greatest,
    Shuffled(u64),
}

impl<C: Coeff> MarkedSet<C> {
    /// Validates and builds a marked set from head -> tail assignments.
    pub fn new(
        module: Arc<QuasiStableModule>,
        assignments: Vec<(ModuleTerm, Poly<C>)>,
    ) -> Result<Self> {
        let basis = module.pommaret_basis();
        let mut slots: Vec<Option<Poly<C>>> = vec![None; basis.len()];
        for (head, tail) in assignments {
            let idx = basis
                .iter()
                .position(|t| *t == head)
                .ok_or_else(|| Error::HeadNotInPommaretBasis(head.clone()))?;
            if slots[idx].is_some() {
                return Err(Error::DuplicateHead(head));
            }
            let head_degree = module.ambient.degree(&head);
            for t in tail.support() {
                if module.contains(t) {
                    return Err(Error::TailTermInU(t.clone()));
                }
                let td = module.ambient.degree(t);
                if td != head_degree {
                    return Err(Error::DegreeMismatch {
                        head: head.clone(),
                        head_degree,
                        tail: t.clone(),
                        tail_degree: td,
                    });
                }
            }
            slots[idx] = Some(tail);
        }
        let mut elems = Vec::with_capacity(basis.len());
        for (i, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(tail) => elems.push(MarkedElement { head: basis[i].clone(), tail }),
                None => return Err(Error::MissingHead(basis[i].clone())),
            }
        }
        Ok(MarkedSet { module, elems })
    }

    /// The Pommaret basis itself, all tails zero.
    pub fn zero_tails(module: Arc<QuasiStableModule>) -> Self {
        let elems = module
            .pommaret_basis()
            .iter()
            .map(|t| MarkedElement { head: t.clone(), tail: Poly::zero() })
            .collect();
        MarkedSet { module, elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Graded degrees d' of the elements, in order.
    pub fn degrees(&self) -> Vec<i64> {
        self.elems
            .iter()
            .map(|e| self.module.ambient.degree(&e.head))
            .collect()
    }

    pub fn reduce(&self, f: &Poly<C>) -> UniqueWriting<C> {
        self.reduce_with_strategy(f, ReductionStrategy::Greatest)
    }

    /// Rewrites `f` against the set, one homogeneous degree at a time,
    /// producing the unique writing. Terminates for every input; the
    /// quotients satisfy the cone condition `supp(P * x^gamma)` inside the
    /// cone of the head.
    pub fn reduce_with_strategy(&self, f: &Poly<C>, strategy: ReductionStrategy) -> UniqueWriting<C> {
        let mut quotients = vec![Poly::zero(); self.elems.len()];
        let mut remainder = Poly::zero();
        let mut rng = match strategy {
            ReductionStrategy::Greatest => None,
            ReductionStrategy::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        for (_, mut h) in f.homogeneous_parts(&self.module.ambient) {
            loop {
                let reducible: Vec<ModuleTerm> = h
                    .support()
                    .filter(|t| self.module.contains(t))
                    .cloned()
                    .collect();
                if reducible.is_empty() {
                    break;
                }
                let t = match rng.as_mut() {
                    None => reducible.last().unwrap().clone(),
                    Some(r) => reducible[r.gen_range(0..reducible.len())].clone(),
                };
                let generator = self
                    .module
                    .cone_of(&t)
                    .expect("term inside U lies in exactly one Pommaret cone")
                    .clone();
                let idx = self
                    .module
                    .pommaret_basis()
                    .iter()
                    .position(|g| *g == generator)
                    .unwrap();
                let eta = t.term.div(&generator.term).unwrap();
                let lambda = h.coeff(&t);
                quotients[idx].add_term(ModuleTerm::ring(eta.clone()), lambda.clone());
                let subtrahend = self.elems[idx].poly().mul_term(&eta, &lambda);
                h = h.sub(&subtrahend);
            }
            remainder = remainder.add(&h);
        }
        debug_assert!(self.writing_reconstructs(f, &quotients, &remainder));
        UniqueWriting { quotients, remainder }
    }

    fn writing_reconstructs(&self, f: &Poly<C>, quotients: &[Poly<C>], remainder: &Poly<C>) -> bool {
        let mut acc = remainder.clone();
        for (q, e) in quotients.iter().zip(&self.elems) {
            acc = acc.add(&e.poly().mul_ring(q));
        }
        acc == *f
    }

    /// The marked-basis criterion: every non-multiplicative prolongation
    /// rewrites to zero. On failure returns the first failing pair in
    /// deterministic order.
    pub fn is_marked_basis(&self) -> std::result::Result<(), BasisFailure<C>> {
        let pairs: Vec<(usize, usize)> = self
            .elems
            .iter()
            .enumerate()
            .flat_map(|(i, e)| {
                self.module
                    .non_multiplicative(&e.head)
                    .into_iter()
                    .map(move |v| (i, v))
            })
            .collect();
        let failure = pairs
            .par_iter()
            .filter_map(|&(i, v)| {
                let x = Term::var(self.module.ambient.nvars, v);
                let prolonged = self.elems[i].poly().mul_term(&x, &C::one());
                let w = self.reduce(&prolonged);
                if w.remainder.is_zero() {
                    None
                } else {
                    Some(((i, v), w.remainder))
                }
            })
            .min_by_key(|(key, _)| *key);
        match failure {
            None => Ok(()),
            Some(((i, v), remainder)) => Err(BasisFailure {
                elem_index: i,
                head: self.elems[i].head.clone(),
                var: v,
                remainder,
            }),
        }
    }

    pub fn require_basis(&self) -> Result<()> {
        self.is_marked_basis()
            .map_err(|f| Error::NotABasis { head: f.head, var: f.var })
    }

    /// Truncation to `U_{>= s}`: heads of degree >= s survive unchanged,
    /// lower cones are sliced at degree s and the new elements are the heads
    /// minus their reduction remainders.
    pub fn truncate(&self, s: i64) -> Result<MarkedSet<C>> {
        self.require_basis()?;
        let min_degree = self.degrees().into_iter().min().unwrap_or(0);
        if s <= min_degree {
            return Ok(self.clone());
        }
        let truncated = Arc::new(self.module.truncate_module(s)?);
        let mut assignments = Vec::new();
        for head in truncated.pommaret_basis() {
            let original = self
                .elems
                .iter()
                .find(|e| e.head == *head && self.module.ambient.degree(&e.head) >= s);
            let tail = match original {
                Some(e) => e.tail.clone(),
                None => {
                    let w = self.reduce(&Poly::monic_term(head.clone()));
                    w.remainder.neg()
                }
            };
            assignments.push((head.clone(), tail));
        }
        MarkedSet::new(truncated, assignments)
    }
}

#[cfg(test)]
pub mod fixtures {
    use super::*;
    use crate::coeff::{ParamId, ParamPoly, Rat};
    use crate::term::Ambient;

    pub fn mt(exps: &[u32]) -> ModuleTerm {
        ModuleTerm::ring(Term::from_exps(exps.to_vec()))
    }

    pub fn j_module() -> Arc<QuasiStableModule> {
        Arc::new(
            QuasiStableModule::new(Ambient::ring(3), vec![mt(&[0, 0, 2]), mt(&[0, 2, 0])]).unwrap(),
        )
    }

    pub fn poly(terms: &[(&[u32], i64)]) -> Poly<Rat> {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(mt(e), crate::coeff::rint(*c));
        }
        p
    }

    /// The one-parameter family over J = (x2^2, x1^2) at a concrete `a`.
    pub fn family(a: Rat) -> MarkedSet<Rat> {
        MarkedSet::new(
            j_module(),
            vec![
                (
                    mt(&[0, 0, 2]),
                    poly(&[(&[0, 1, 1], -1), (&[1, 0, 1], -1), (&[1, 1, 0], 1)]),
                ),
                (mt(&[0, 2, 0]), Poly::term(mt(&[0, 1, 1]), a)),
                (mt(&[0, 2, 1]), poly(&[(&[1, 1, 1], -2), (&[2, 1, 0], 2)])),
            ],
        )
        .unwrap()
    }

    /// The marked basis generating the ideal K over J = (x2^2, x1^2).
    pub fn k_basis() -> MarkedSet<Rat> {
        use crate::coeff::rat;
        MarkedSet::new(
            j_module(),
            vec![
                (
                    mt(&[0, 0, 2]),
                    poly(&[(&[0, 1, 1], -1), (&[1, 0, 1], -2)]).scale(&rat(1, 2)),
                ),
                (
                    mt(&[0, 2, 0]),
                    poly(&[(&[0, 1, 1], -1), (&[1, 1, 0], -2)]).scale(&rat(1, 2)),
                ),
                (mt(&[0, 2, 1]), poly(&[(&[1, 1, 1], -2)])),
            ],
        )
        .unwrap()
    }

    /// Same family with a symbolic parameter `a`.
    pub fn symbolic_family() -> MarkedSet<ParamPoly> {
        let a = ParamPoly::param(ParamId::bare("a"));
        MarkedSet::new(
            j_module(),
            vec![
                (
                    mt(&[0, 0, 2]),
                    poly(&[(&[0, 1, 1], -1), (&[1, 0, 1], -1), (&[1, 1, 0], 1)]).lift(),
                ),
                (mt(&[0, 2, 0]), Poly::term(mt(&[0, 1, 1]), a)),
                (mt(&[0, 2, 1]), poly(&[(&[1, 1, 1], -2), (&[2, 1, 0], 2)]).lift()),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::coeff::{rat, rint, ParamId, ParamPoly, Rat};

    #[test]
    fn validation_errors() {
        let m = j_module();
        // tail term x2*x1^2 lies in U
        let err = MarkedSet::new(
            m.clone(),
            vec![
                (mt(&[0, 0, 2]), Poly::term(mt(&[0, 2, 1]), rint(1))),
                (mt(&[0, 2, 0]), Poly::zero()),
                (mt(&[0, 2, 1]), Poly::zero()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::TailTermInU(_)));

        let err = MarkedSet::<Rat>::new(m.clone(), vec![(mt(&[0, 1, 1]), Poly::zero())]).unwrap_err();
        assert!(matches!(err, Error::HeadNotInPommaretBasis(_)));

        let err = MarkedSet::<Rat>::new(
            m.clone(),
            vec![(mt(&[0, 0, 2]), Poly::zero()), (mt(&[0, 2, 0]), Poly::zero())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MissingHead(_)));

        let err = MarkedSet::new(
            m,
            vec![
                (mt(&[0, 0, 2]), Poly::term(mt(&[1, 0, 0]), rint(1))),
                (mt(&[0, 2, 0]), Poly::zero()),
                (mt(&[0, 2, 1]), Poly::zero()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn family_is_valid_and_zero_tails_are_a_basis() {
        let f = family(rint(-1));
        assert_eq!(f.len(), 3);
        let z: MarkedSet<Rat> = MarkedSet::zero_tails(j_module());
        assert!(z.is_marked_basis().is_ok());
    }

    #[test]
    fn reduce_symbolic_prolongation() {
        // x2 * f_{x1^2}: quotients a*x1, -a*x0, (a+1); remainder
        // (a^2+3a+2)*x2x1x0 - 2(a+1)*x1x0^2
        let f = symbolic_family();
        let x2f = f.elems[1].poly().mul_term(&Term::var(3, 2), &ParamPoly::one());
        let w = f.reduce(&x2f);
        let a = ParamPoly::param(ParamId::bare("a"));
        let mut q0 = Poly::zero();
        q0.add_term(mt(&[0, 1, 0]), a.clone());
        assert_eq!(w.quotients[0], q0);
        let mut q1 = Poly::zero();
        q1.add_term(mt(&[1, 0, 0]), a.neg());
        assert_eq!(w.quotients[1], q1);
        let mut q2 = Poly::zero();
        q2.add_term(mt(&[0, 0, 0]), a.add(&ParamPoly::one()));
        assert_eq!(w.quotients[2], q2);
        assert_eq!(
            w.remainder.to_string(),
            "(a^2 + 3*a + 2)*x2*x1*x0 - (2*a + 2)*x1*x0^2"
        );
    }

    #[test]
    fn reduce_at_a_zero_has_the_one_step_remainder() {
        // x2 * x1^2 - f_{x2x1^2} = 2*x2*x1*x0 - 2*x1*x0^2
        let f = family(rint(0));
        let x2f = f.elems[1].poly().mul_term(&Term::var(3, 2), &rint(1));
        let w = f.reduce(&x2f);
        assert_eq!(w.remainder, poly(&[(&[1, 1, 1], 2), (&[2, 1, 0], -2)]));
    }

    #[test]
    fn basis_iff_a_is_minus_one() {
        assert!(family(rint(-1)).is_marked_basis().is_ok());
        let failure = family(rint(0)).is_marked_basis().unwrap_err();
        assert_eq!(failure.head, mt(&[0, 2, 0]));
        assert_eq!(failure.var, 2);
        assert_eq!(failure.remainder, poly(&[(&[1, 1, 1], 2), (&[2, 1, 0], -2)]));
        assert!(family(rat(1, 2)).is_marked_basis().is_err());
    }

    #[test]
    fn reduce_trivial_cases() {
        let f = family(rint(-1));
        // input supported in the sous-escalier: zero quotients
        let n = poly(&[(&[1, 1, 1], 3), (&[3, 0, 0], -1)]);
        let w = f.reduce(&n);
        assert!(w.quotients.iter().all(|q| q.is_zero()));
        assert_eq!(w.remainder, n);
        // an element of the set itself: quotient 1 on its own slot
        let w = f.reduce(&f.elems[0].poly());
        assert_eq!(w.quotients[0], Poly::monic_term(mt(&[0, 0, 0])));
        assert!(w.quotients[1].is_zero() && w.quotients[2].is_zero());
        assert!(w.remainder.is_zero());
    }

    #[test]
    fn confluence_under_random_strategies() {
        let f = family(rint(0));
        let x2f = f.elems[1].poly().mul_term(&Term::var(3, 2), &rint(1));
        let reference = f.reduce(&x2f);
        for seed in 0..8 {
            let w = f.reduce_with_strategy(&x2f, ReductionStrategy::Shuffled(seed));
            assert_eq!(w.remainder, reference.remainder);
            assert_eq!(w.quotients, reference.quotients);
        }
    }

    #[test]
    fn truncation_of_the_running_example() {
        let f = family(rint(-1));
        // s at or below the minimal degree: unchanged
        assert_eq!(f.truncate(2).unwrap(), f);
        let t = f.truncate(3).unwrap();
        let heads: Vec<String> = t.elems.iter().map(|e| e.head.term.to_string()).collect();
        assert_eq!(heads.len(), 6);
        for h in ["x2^3", "x2^2*x1", "x2^2*x0", "x1^3", "x1^2*x0", "x2*x1^2"] {
            assert!(heads.contains(&h.to_string()), "missing head {h}");
        }
        assert!(t.is_marked_basis().is_ok());
    }

    #[test]
    fn truncation_fails_on_a_non_basis() {
        let err = family(rint(0)).truncate(3).unwrap_err();
        assert!(matches!(err, Error::NotABasis { .. }));
    }
}

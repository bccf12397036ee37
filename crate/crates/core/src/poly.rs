//! Sparse module elements and ring polynomials over a pluggable coefficient
//! ring. A ring polynomial is the one-component case (`comp = 0`).

use std::collections::BTreeMap;
use std::fmt;

use num::Signed;

use crate::coeff::{rat_abs_string, Coeff, ParamPoly, Rat};
use crate::term::{Ambient, ModuleTerm, Term};

/// `f = sum of coeff * module-term`; zero coefficients are never stored, so
/// `support()` returns exactly the stored terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C: Coeff> {
    pub terms: BTreeMap<ModuleTerm, C>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: ModuleTerm, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(t, c);
        p
    }

    pub fn monic_term(t: ModuleTerm) -> Self {
        Self::term(t, C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &ModuleTerm> {
        self.terms.keys()
    }

    pub fn coeff(&self, t: &ModuleTerm) -> C {
        self.terms.get(t).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, t: ModuleTerm, c: C) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v.mul(c));
        }
        out
    }

    /// Multiply by `c * x^a` (a ring term).
    pub fn mul_term(&self, a: &Term, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (t, v) in &self.terms {
            out.add_term(t.mul(a), v.mul(c));
        }
        out
    }

    /// Multiply a module element by a ring polynomial (component 0 terms).
    pub fn mul_ring(&self, p: &Poly<C>) -> Self {
        let mut out = Self::zero();
        for (pt, pc) in &p.terms {
            debug_assert_eq!(pt.comp, 0);
            for (t, v) in &self.terms {
                out.add_term(t.mul(&pt.term), v.mul(pc));
            }
        }
        out
    }

    /// Drops zero coefficients and re-normalizes storage; idempotent. Stored
    /// polynomials already satisfy this, so the result equals the input.
    pub fn canonicalize(&self) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    /// The common graded degree of a homogeneous element; `None` if zero or
    /// inhomogeneous.
    pub fn homogeneous_degree(&self, ambient: &Ambient) -> Option<i64> {
        let mut deg = None;
        for t in self.terms.keys() {
            let d = ambient.degree(t);
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return None,
            }
        }
        deg
    }

    /// Splits into homogeneous pieces, ascending degree.
    pub fn homogeneous_parts(&self, ambient: &Ambient) -> Vec<(i64, Poly<C>)> {
        let mut map: BTreeMap<i64, Poly<C>> = BTreeMap::new();
        for (t, c) in &self.terms {
            map.entry(ambient.degree(t))
                .or_default()
                .add_term(t.clone(), c.clone());
        }
        map.into_iter().collect()
    }

    /// Support terms in canonical display order, component-major.
    pub fn display_terms(&self) -> Vec<(&ModuleTerm, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            a.0.comp
                .cmp(&b.0.comp)
                .then_with(|| a.0.term.display_cmp(&b.0.term))
        });
        v
    }
}

impl Poly<ParamPoly> {
    /// The mapping module-term -> parameter-polynomial coefficient.
    /// Reassembling the mapping reproduces the polynomial exactly.
    pub fn x_coefficients(&self) -> BTreeMap<ModuleTerm, ParamPoly> {
        self.terms.clone()
    }

    /// Evaluate every parameter coefficient at a rational point.
    pub fn eval_params(&self, values: &BTreeMap<crate::coeff::ParamId, Rat>) -> Poly<Rat> {
        let mut out = Poly::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.eval_rat(values));
        }
        out
    }
}

impl Poly<Rat> {
    /// Lift a rational polynomial into a parameter coefficient ring.
    pub fn lift(&self) -> Poly<ParamPoly> {
        let mut out = Poly::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), ParamPoly::constant(c.clone()));
        }
        out
    }

    /// Divide by the gcd of the coefficients and normalize the sign so the
    /// leading display-order term is positive. Used when comparing columns of
    /// minimized resolutions, which are only defined up to scaling.
    pub fn primitive_normalized(&self) -> Poly<Rat> {
        if self.is_zero() {
            return self.clone();
        }
        let terms = self.display_terms();
        let lead = terms[0].1.clone();
        let mut out = Poly::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c / &lead);
        }
        // clear denominators to a primitive integer vector
        let denom_lcm = out
            .terms
            .values()
            .map(|c| c.denom().clone())
            .fold(num::BigInt::from(1), |a, b| num::integer::lcm(a, b));
        let mut out2 = Poly::zero();
        for (t, c) in &out.terms {
            out2.add_term(t.clone(), c * Rat::from(denom_lcm.clone()));
        }
        let num_gcd = out2
            .terms
            .values()
            .map(|c| c.numer().clone())
            .fold(num::BigInt::from(0), num::integer::gcd);
        if !num::Zero::is_zero(&num_gcd) {
            let mut out3 = Poly::zero();
            for (t, c) in &out2.terms {
                out3.add_term(t.clone(), c / Rat::from(num_gcd.clone()));
            }
            return out3;
        }
        out2
    }
}

/// Canonical rendering: terms in display order; rational +/-1 coefficients
/// elided; non-monomial parameter coefficients parenthesized, with a common
/// minus sign factored out when every monomial is negative.
impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one_component = self.terms.keys().all(|t| t.comp == 0);
        let mut first = true;
        for (t, c) in self.display_terms() {
            let (neg, body) = coeff_body(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let term_str = if one_component {
                if t.term.is_one() {
                    String::new()
                } else {
                    t.term.to_string()
                }
            } else {
                t.to_string()
            };
            match (body, term_str) {
                (None, s) if s.is_empty() => write!(f, "1")?,
                (None, s) => write!(f, "{s}")?,
                (Some(b), s) if s.is_empty() => write!(f, "{b}")?,
                (Some(b), s) => write!(f, "{b}*{s}")?,
            }
        }
        Ok(())
    }
}

/// Splits a coefficient into an explicit sign and its rendered magnitude;
/// `None` body means the magnitude is 1 and can be elided before a term.
fn coeff_body<C: Coeff>(c: &C) -> (bool, Option<String>) {
    if let Some(r) = c.to_rat() {
        let neg = r.is_negative();
        let mag = rat_abs_string(&r);
        return (neg, if mag == "1" { None } else { Some(mag) });
    }
    // parameter polynomial: single-monomial coefficients inline, otherwise
    // parenthesize; factor a global minus out when all monomials are negative
    let any = c.clone();
    let s = format!("{any}");
    if let Some(stripped) = single_monomial(&s) {
        return stripped;
    }
    let negated = any.neg();
    let all_neg = format!("{negated}");
    if !s.contains(" - ") && !s.starts_with('-') {
        (false, Some(format!("({s})")))
    } else if !all_neg.contains(" - ") && !all_neg.starts_with('-') {
        (true, Some(format!("({all_neg})")))
    } else {
        (false, Some(format!("({s})")))
    }
}

/// `-3*C_2` style single monomials render inline without parentheses.
fn single_monomial(s: &str) -> Option<(bool, Option<String>)> {
    if s.contains(" + ") || s.contains(" - ") {
        return None;
    }
    if let Some(rest) = s.strip_prefix('-') {
        if rest == "1" {
            Some((true, None))
        } else {
            Some((true, Some(rest.to_string())))
        }
    } else if s == "1" {
        Some((false, None))
    } else {
        Some((false, Some(s.to_string())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rint, ParamId};
    use crate::term::Term;

    fn mt(exps: &[u32]) -> ModuleTerm {
        ModuleTerm::ring(Term::from_exps(exps.to_vec()))
    }

    #[test]
    fn zero_removal_and_merge() {
        // x1^2 + 0*x0^2 -> x1^2
        let mut p: Poly<Rat> = Poly::zero();
        p.add_term(mt(&[0, 2, 0]), rint(1));
        p.add_term(mt(&[2, 0, 0]), rint(0));
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.canonicalize(), p);

        // duplicate insertion merges: x2*x1 + x1*x2 -> 2*x2*x1
        let mut q: Poly<Rat> = Poly::zero();
        q.add_term(mt(&[0, 1, 1]), rint(1));
        q.add_term(mt(&[0, 1, 1]), rint(1));
        assert_eq!(q.coeff(&mt(&[0, 1, 1])), rint(2));
        assert_eq!(q.to_string(), "2*x2*x1");
    }

    #[test]
    fn parameter_cancellation_gives_zero() {
        // (a + 1 - a - 1) * x0 = 0
        let a = ParamPoly::param(ParamId::bare("a"));
        let c = a.add(&ParamPoly::one()).sub(&a).sub(&ParamPoly::one());
        let mut p: Poly<ParamPoly> = Poly::zero();
        p.add_term(mt(&[1, 0, 0]), c);
        assert!(p.is_zero());
    }

    #[test]
    fn x_coefficients_roundtrip() {
        // (a^2+4a+3)*x2*x1*x0 - (a+1)*x1*x0^2
        let a = ParamPoly::param(ParamId::bare("a"));
        let c1 = a
            .mul(&a)
            .add(&a.scale4())
            .add(&ParamPoly::constant(rint(3)));
        let c2 = a.add(&ParamPoly::one()).neg();
        let mut p: Poly<ParamPoly> = Poly::zero();
        p.add_term(mt(&[1, 1, 1]), c1.clone());
        p.add_term(mt(&[2, 1, 0]), c2.clone());
        let coeffs = p.x_coefficients();
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[&mt(&[1, 1, 1])], c1);
        assert_eq!(coeffs[&mt(&[2, 1, 0])], c2);
        let mut back = Poly::zero();
        for (t, c) in coeffs {
            back.add_term(t, c);
        }
        assert_eq!(back, p);
        assert_eq!(p.to_string(), "(a^2 + 4*a + 3)*x2*x1*x0 - (a + 1)*x1*x0^2");
        // degree-0 term keys never appear for constant-free p; zero maps to empty
        assert!(Poly::<ParamPoly>::zero().x_coefficients().is_empty());
    }

    trait Scale4 {
        fn scale4(&self) -> ParamPoly;
    }
    impl Scale4 for ParamPoly {
        fn scale4(&self) -> ParamPoly {
            self.mul(&ParamPoly::constant(rint(4)))
        }
    }
}

//! Coefficient rings for the polynomial layer: exact rationals at the base and
//! an optional parameter polynomial ring (named families such as `C_0..C_37`)
//! on top. All arithmetic is exact; there is no floating point anywhere.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Ring operations shared by every coefficient type the algebra runs over.
///
/// Head terms of marked elements are monic, so reduction never divides by a
/// coefficient; `Coeff` therefore only requires ring arithmetic.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// The value as a rational if this coefficient is a scalar (no parameters).
    fn to_rat(&self) -> Option<Rat>;
}

impl Coeff for Rat {
    fn zero() -> Self {
        rint(0)
    }
    fn one() -> Self {
        rint(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// A single parameter, e.g. `C_17` or the indexless `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamId {
    pub family: Arc<str>,
    pub index: Option<u32>,
}

impl ParamId {
    pub fn indexed(family: &str, index: u32) -> Self {
        ParamId { family: Arc::from(family), index: Some(index) }
    }

    pub fn bare(name: &str) -> Self {
        ParamId { family: Arc::from(name), index: None }
    }
}

impl PartialOrd for ParamId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.family
            .as_ref()
            .cmp(other.family.as_ref())
            .then_with(|| self.index.cmp(&other.index))
    }
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}_{}", self.family, i),
            None => write!(f, "{}", self.family),
        }
    }
}

/// A power product of parameters, kept sorted by parameter id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamMono(pub Vec<(ParamId, u32)>);

impl ParamMono {
    pub fn one() -> Self {
        ParamMono(Vec::new())
    }

    pub fn var(p: ParamId) -> Self {
        ParamMono(vec![(p, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(ParamId, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        ParamMono(out)
    }
}

impl PartialOrd for ParamMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded-lexicographic storage order; purely an implementation convention,
/// no mathematical term order is attached to it.
impl Ord for ParamMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for ParamMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in named parameters with exact rational coefficients.
///
/// This is the coefficient ring K[C], K[B,C], ... of the generic
/// constructions; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ParamPoly {
    pub terms: BTreeMap<ParamMono, Rat>,
}

impl ParamPoly {
    pub fn constant(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&r) {
            terms.insert(ParamMono::one(), r);
        }
        ParamPoly { terms }
    }

    pub fn param(p: ParamId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ParamMono::var(p), rint(1));
        ParamPoly { terms }
    }

    pub fn add_term(&mut self, m: ParamMono, c: Rat) {
        use std::collections::btree_map::Entry;
        if Zero::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Substitute parameters by rationals; parameters absent from `values`
    /// keep value zero.
    pub fn eval_rat(&self, values: &BTreeMap<ParamId, Rat>) -> Rat {
        let mut acc = rint(0);
        'terms: for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (p, e) in &m.0 {
                match values.get(p) {
                    Some(v) if !Zero::is_zero(v) => {
                        for _ in 0..*e {
                            prod *= v;
                        }
                    }
                    _ => continue 'terms,
                }
            }
            acc += prod;
        }
        acc
    }

    /// Substitute parameters by parameter polynomials; absent parameters keep
    /// their own value.
    pub fn substitute(&self, values: &BTreeMap<ParamId, ParamPoly>) -> ParamPoly {
        let mut acc = ParamPoly::default();
        for (m, c) in &self.terms {
            let mut prod = ParamPoly::constant(c.clone());
            for (p, e) in &m.0 {
                let factor = values
                    .get(p)
                    .cloned()
                    .unwrap_or_else(|| ParamPoly::param(p.clone()));
                for _ in 0..*e {
                    prod = prod.mul(&factor);
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// All parameters occurring in this polynomial.
    pub fn params(&self) -> Vec<ParamId> {
        let mut out: Vec<ParamId> = Vec::new();
        for m in self.terms.keys() {
            for (p, _) in &m.0 {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
        }
        out
    }
}

impl Coeff for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn one() -> Self {
        ParamPoly::constant(rint(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(|| rint(0));
            *entry += c;
        }
        out.terms.retain(|_, v| !Zero::is_zero(v));
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = ParamPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let entry = out.terms.entry(m).or_insert_with(|| rint(0));
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, v| !Zero::is_zero(v));
        out
    }
    fn neg(&self) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn from_rat(r: &Rat) -> Self {
        ParamPoly::constant(r.clone())
    }
    fn to_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(rint(0));
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&ParamMono::one()) {
                return Some(c.clone());
            }
        }
        None
    }
}

/// Renders a rational without sign, e.g. `3/4`.
pub fn rat_abs_string(r: &Rat) -> String {
    let a = r.abs();
    if a.denom().is_one() {
        format!("{}", a.numer())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for ParamPoly {
    /// Canonical expanded form, highest storage-order monomial first,
    /// e.g. `a^2 + 4*a + 3` or `-a - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
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
            let mag = rat_abs_string(c);
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_poly_arithmetic_and_display() {
        let a = ParamId::bare("a");
        let p = ParamPoly::param(a.clone());
        // (a + 1)*(a + 3) = a^2 + 4a + 3
        let one = ParamPoly::constant(rint(1));
        let three = ParamPoly::constant(rint(3));
        let q = p.add(&one).mul(&p.add(&three));
        assert_eq!(q.to_string(), "a^2 + 4*a + 3");
        let mut vals = BTreeMap::new();
        vals.insert(a.clone(), rint(-1));
        assert!(Zero::is_zero(&q.eval_rat(&vals)));
        let neg = p.add(&one).neg();
        assert_eq!(neg.to_string(), "-a - 1");
    }

    #[test]
    fn coefficient_cancellation() {
        let a = ParamPoly::param(ParamId::indexed("C", 3));
        let z = a.add(&ParamPoly::one()).sub(&a).sub(&ParamPoly::one());
        assert!(Coeff::is_zero(&z));
    }
}

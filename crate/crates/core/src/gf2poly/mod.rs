//! Sparse multivariate polynomial arithmetic over GF(2).
//!
//! Monomials are exponent vectors in variables `w1 > w2 > ... > wk`.
//! Variable `wi` carries weight `i`, so every monomial has two gradings:
//! [`Monomial::order_degree`] (the plain exponent sum, which the monomial
//! order compares first) and [`Monomial::cohom_degree`] (the weighted sum
//! `a + 2b + 3c + ...`, the cohomological degree).
//!
//! Polynomials are sets of monomials with coefficient 1, stored in strictly
//! decreasing grlex order. The representation is canonical: duplicate terms
//! cancel on construction, the zero polynomial is the empty term set, and
//! the constant 1 is the all-zero-exponent monomial.

mod binom;
mod parse;

pub use binom::{binom_mod2, multinom_mod2};
pub use parse::ParseError;

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Sentinel degree bound meaning "do not truncate".
pub const NO_TRUNCATION: u64 = u64::MAX;

/// A monomial `w1^e1 * w2^e2 * ... * wk^ek`, stored as its exponent vector.
///
/// Exponents use fixed-width integers with checked arithmetic: an overflow
/// panics instead of wrapping, since a silent wraparound would corrupt the
/// mod-2 cancellation invariants invisibly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial from its exponent vector. The arity must be at least 1.
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "monomial arity must be at least 1");
        Monomial { exps }
    }

    /// The constant monomial 1 in `arity` variables.
    pub fn constant(arity: usize) -> Self {
        Self::new(vec![0; arity])
    }

    /// The monomial `w(index+1)` (0-based variable index).
    pub fn variable(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    /// Sum of the exponents: the degree that grlex compares first.
    pub fn order_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Weighted degree `sum i * e_i` with variable `wi` of weight `i`.
    pub fn cohom_degree(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as u64 + 1) * e as u64)
            .sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product of two monomials (componentwise exponent sum).
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        self.check_arity(rhs);
        let exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
            .collect();
        Monomial { exps }
    }

    /// True when `self` divides `rhs` componentwise.
    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.check_arity(rhs);
        self.exps.iter().zip(&rhs.exps).all(|(&a, &b)| a <= b)
    }

    /// `self / rhs`, when `rhs` divides `self`.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        self.check_arity(rhs);
        let mut exps = Vec::with_capacity(self.arity());
        for (&a, &b) in self.exps.iter().zip(&rhs.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// Least common multiple (componentwise max).
    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        self.check_arity(rhs);
        let exps = self.exps.iter().zip(&rhs.exps).map(|(&a, &b)| a.max(b)).collect();
        Monomial { exps }
    }

    pub fn is_coprime(&self, rhs: &Monomial) -> bool {
        self.check_arity(rhs);
        self.exps.iter().zip(&rhs.exps).all(|(&a, &b)| a.min(b) == 0)
    }

    fn squared(&self) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&e| e.checked_mul(2).expect("monomial exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub(crate) fn check_arity(&self, rhs: &Monomial) {
        assert_eq!(
            self.exps.len(),
            rhs.exps.len(),
            "monomial arity mismatch ({} vs {})",
            self.exps.len(),
            rhs.exps.len()
        );
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

/// The graded lexicographic order with `w1 > w2 > ... > wk`.
///
/// `m < m'` iff the total exponent sum of `m` is smaller, or the sums agree
/// and the exponent vectors compare lexicographically (`w1` exponent first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GrlexOrder;

impl GrlexOrder {
    pub fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        grlex_cmp(a, b)
    }
}

/// Compares two monomials of equal arity in grlex order.
pub fn grlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.check_arity(b);
    match a.order_degree().cmp(&b.order_degree()) {
        Ordering::Equal => a.exps.cmp(&b.exps),
        other => other,
    }
}

/// A polynomial over GF(2): a set of monomials, kept strictly
/// grlex-descending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "polynomial arity must be at least 1");
        Polynomial { arity, terms: Vec::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::from_monomial(Monomial::constant(arity))
    }

    /// The polynomial `w(index+1)` (0-based variable index).
    pub fn variable(arity: usize, index: usize) -> Self {
        Self::from_monomial(Monomial::variable(arity, index))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Polynomial { arity: m.arity(), terms: vec![m] }
    }

    /// Builds a polynomial from an arbitrary list of monomials, sorting and
    /// cancelling duplicates mod 2.
    pub fn from_terms(arity: usize, mut terms: Vec<Monomial>) -> Self {
        assert!(arity >= 1, "polynomial arity must be at least 1");
        for t in &terms {
            assert_eq!(t.arity(), arity, "term arity {} does not match polynomial arity {arity}", t.arity());
        }
        terms.sort_unstable_by(|a, b| grlex_cmp(b, a));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        Polynomial { arity, terms: out }
    }

    /// Parses the ASCII grammar `"0" | term ("+" term)*` with
    /// `term := "1" | factor ("*" factor)*` and `factor := "w" index ("^" exponent)?`.
    pub fn parse(text: &str, arity: usize) -> Result<Polynomial, ParseError> {
        parse::parse_polynomial(text, arity)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in strictly decreasing grlex order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// The grlex-greatest term, if any.
    pub fn leading_term(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn contains_term(&self, m: &Monomial) -> bool {
        self.terms.binary_search_by(|probe| grlex_cmp(m, probe)).is_ok()
    }

    /// GF(2) sum: the symmetric difference of the term sets.
    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch ({} vs {})", self.arity, rhs.arity);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match grlex_cmp(&self.terms[i], &rhs.terms[j]) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Polynomial { arity: self.arity, terms: out }
    }

    /// Multiplies every term by a monomial. Order is preserved because grlex
    /// is multiplicative.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|t| t.mul(m)).collect();
        Polynomial { arity: self.arity, terms }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        self.mul_truncated(rhs, NO_TRUNCATION)
    }

    /// Product with every result monomial of cohomological degree above
    /// `max_cohom_degree` discarded.
    pub fn mul_truncated(&self, rhs: &Polynomial, max_cohom_degree: u64) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch ({} vs {})", self.arity, rhs.arity);
        let rhs_degrees: Vec<u64> = rhs.terms.iter().map(|t| t.cohom_degree()).collect();
        let mut acc = Vec::new();
        for a in &self.terms {
            let da = a.cohom_degree();
            for (b, &db) in rhs.terms.iter().zip(&rhs_degrees) {
                if da.saturating_add(db) <= max_cohom_degree {
                    acc.push(a.mul(b));
                }
            }
        }
        Self::from_terms(self.arity, acc)
    }

    /// `self^e` by binary exponentiation, truncating after every multiply.
    /// Squaring over GF(2) is the Frobenius map, so the square steps are
    /// termwise.
    pub fn pow_truncated(&self, e: u64, max_cohom_degree: u64) -> Polynomial {
        let mut result = Self::one(self.arity);
        if e == 0 {
            return result;
        }
        let mut base = self.truncate(max_cohom_degree);
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul_truncated(&base, max_cohom_degree);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.frobenius_square_truncated(max_cohom_degree);
        }
        result
    }

    fn frobenius_square_truncated(&self, max_cohom_degree: u64) -> Polynomial {
        let terms: Vec<Monomial> = self
            .terms
            .iter()
            .map(|t| t.squared())
            .filter(|t| t.cohom_degree() <= max_cohom_degree)
            .collect();
        Self::from_terms(self.arity, terms)
    }

    /// Drops every term of cohomological degree above the bound.
    pub fn truncate(&self, max_cohom_degree: u64) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.cohom_degree() <= max_cohom_degree)
            .cloned()
            .collect();
        Polynomial { arity: self.arity, terms }
    }

    /// The homogeneous part of cohomological degree `d`.
    pub fn homogeneous_component(&self, d: u64) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.cohom_degree() == d)
            .cloned()
            .collect();
        Polynomial { arity: self.arity, terms }
    }

    pub fn max_cohom_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.cohom_degree()).max()
    }

    /// True when all terms share one cohomological degree (vacuously for 0).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.cohom_degree();
                self.terms.iter().all(|t| t.cohom_degree() == d)
            }
        }
    }
}

/// Total order on polynomials of equal arity: grlex on the term lists,
/// term by term. Used to canonicalize basis listings.
pub fn poly_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let mut i = 0;
    loop {
        match (a.terms.get(i), b.terms.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match grlex_cmp(x, y) {
                Ordering::Equal => i += 1,
                other => return other,
            },
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    if m.is_constant() {
        return write!(f, "1");
    }
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "w{}", i + 1)?;
        } else {
            write!(f, "w{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_term(f, t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    arity: usize,
    terms: Vec<Vec<u32>>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PolynomialRepr {
            arity: self.arity,
            terms: self.terms.iter().map(|m| m.exps.clone()).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(deserializer)?;
        if repr.arity == 0 {
            return Err(D::Error::custom("polynomial arity must be at least 1"));
        }
        let mut terms = Vec::with_capacity(repr.terms.len());
        for exps in repr.terms {
            if exps.len() != repr.arity {
                return Err(D::Error::custom(format!(
                    "term arity {} does not match polynomial arity {}",
                    exps.len(),
                    repr.arity
                )));
            }
            terms.push(Monomial::new(exps));
        }
        Ok(Polynomial::from_terms(repr.arity, terms))
    }
}

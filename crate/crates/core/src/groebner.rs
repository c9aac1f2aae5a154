//! Gröbner-basis machinery over GF(2) under grlex: multivariate division
//! with cofactor certificates, S-polynomials, Buchberger's algorithm,
//! auto-reduction, and a basis certificate check.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use thiserror::Error;

use crate::gf2poly::{grlex_cmp, poly_cmp, Monomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("zero polynomial in divisor list")]
    ZeroDivisor,
    #[error("empty divisor list")]
    EmptyDivisors,
    #[error("S-polynomial of a zero polynomial")]
    ZeroSPolyInput,
    #[error("zero polynomial in basis")]
    ZeroElement,
    #[error("no nonzero generators")]
    NoGenerators,
    #[error("pair budget exhausted after {processed} S-pairs")]
    BudgetExhausted { processed: u64 },
}

/// A basis of an ideal with cached leading terms.
///
/// The `reduced` flag records that no term of any element is divisible by
/// the leading term of another element (and leading terms are pairwise
/// distinct); [`auto_reduce`] produces bases in that form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    leading_terms: Vec<Monomial>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Wraps a list of nonzero polynomials, caching leading terms.
    pub fn new(elements: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        Self::with_flag(elements, false)
    }

    pub(crate) fn with_flag(elements: Vec<Polynomial>, reduced: bool) -> Result<Self, GroebnerError> {
        if elements.is_empty() {
            return Err(GroebnerError::NoGenerators);
        }
        if elements.iter().any(Polynomial::is_zero) {
            return Err(GroebnerError::ZeroElement);
        }
        let leading_terms = elements
            .iter()
            .map(|p| p.leading_term().expect("nonzero").clone())
            .collect();
        Ok(GroebnerBasis { elements, leading_terms, reduced })
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_terms(&self) -> &[Monomial] {
        &self.leading_terms
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements sorted in the canonical polynomial order, for set
    /// comparisons and stable listings.
    pub fn canonical_elements(&self) -> Vec<Polynomial> {
        let mut out = self.elements.clone();
        out.sort_unstable_by(poly_cmp);
        out
    }

    /// Set equality of the element lists.
    pub fn set_equal(&self, other: &GroebnerBasis) -> bool {
        self.canonical_elements() == other.canonical_elements()
    }
}

/// Outcome of multivariate division: `input = sum(cofactor_i * divisor_i) + normal_form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub normal_form: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

impl DivisionResult {
    /// Checks the certificate: the division identity holds exactly, no term
    /// of the normal form is divisible by any divisor's leading term, and no
    /// cofactor product exceeds the input's leading term.
    pub fn verify(&self, input: &Polynomial, divisors: &[Polynomial]) -> bool {
        if divisors.len() != self.cofactors.len() {
            return false;
        }
        let mut sum = self.normal_form.clone();
        for (c, d) in self.cofactors.iter().zip(divisors) {
            sum = sum.add(&c.mul(d));
        }
        if sum != *input {
            return false;
        }
        for t in self.normal_form.terms() {
            if divisors.iter().any(|d| d.leading_term().is_some_and(|lt| lt.divides(t))) {
                return false;
            }
        }
        match input.leading_term() {
            None => self.normal_form.is_zero() && self.cofactors.iter().all(Polynomial::is_zero),
            Some(lt_in) => self.cofactors.iter().zip(divisors).all(|(c, d)| {
                match (c.leading_term(), d.leading_term()) {
                    (Some(lc), Some(ld)) => grlex_cmp(&lc.mul(ld), lt_in) != Ordering::Greater,
                    _ => c.is_zero(),
                }
            }),
        }
    }
}

/// Divides `input` by the list of divisors, always reducing the
/// grlex-greatest reducible term with the first divisor in list order whose
/// leading term divides it. The result is fully reduced and deterministic.
pub fn divide(input: &Polynomial, divisors: &[Polynomial]) -> Result<DivisionResult, GroebnerError> {
    if divisors.is_empty() {
        return Err(GroebnerError::EmptyDivisors);
    }
    if divisors.iter().any(Polynomial::is_zero) {
        return Err(GroebnerError::ZeroDivisor);
    }
    let lts: Vec<&Monomial> = divisors.iter().map(|d| d.leading_term().expect("nonzero")).collect();
    let min_lt_degree = lts.iter().map(|lt| lt.order_degree()).min().expect("nonempty");

    let mut nf = input.clone();
    let mut cofactors = vec![Polynomial::zero(input.arity()); divisors.len()];
    'reduce: loop {
        for t in nf.terms() {
            // terms are grlex-descending, so order degrees are non-increasing
            if t.order_degree() < min_lt_degree {
                break;
            }
            for (i, lt) in lts.iter().enumerate() {
                if lt.divides(t) {
                    let q = t.div(lt).expect("divides");
                    nf = nf.add(&divisors[i].mul_monomial(&q));
                    cofactors[i] = cofactors[i].add(&Polynomial::from_monomial(q));
                    continue 'reduce;
                }
            }
        }
        break;
    }
    Ok(DivisionResult { normal_form: nf, cofactors })
}

/// The S-polynomial `(L/LT(f)) f + (L/LT(g)) g` with `L = lcm(LT(f), LT(g))`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let (lf, lg) = match (f.leading_term(), g.leading_term()) {
        (Some(lf), Some(lg)) => (lf, lg),
        _ => return Err(GroebnerError::ZeroSPolyInput),
    };
    let l = lf.lcm(lg);
    let a = l.div(lf).expect("lcm divisible");
    let b = l.div(lg).expect("lcm divisible");
    Ok(f.mul_monomial(&a).add(&g.mul_monomial(&b)))
}

/// Tuning knobs for [`buchberger_with`].
#[derive(Debug, Clone)]
pub struct BuchbergerOptions {
    /// Apply the chain criterion in addition to the coprime criterion.
    pub chain_criterion: bool,
    /// Worker threads for reducing batches of S-polynomials. The pair queue
    /// update stays a serial merge point, so results are deterministic for a
    /// fixed setting.
    pub jobs: usize,
    /// Failsafe: abort with an error instead of looping forever.
    pub max_pairs: u64,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { chain_criterion: false, jobs: 1, max_pairs: 2_000_000 }
    }
}

#[derive(PartialEq, Eq)]
struct PairEntry {
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl PartialOrd for PairEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairEntry {
    // reversed so the max-heap pops the smallest lcm first (normal strategy)
    fn cmp(&self, other: &Self) -> Ordering {
        grlex_cmp(&other.lcm, &self.lcm)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

/// Buchberger's algorithm with the default options (coprime criterion only,
/// serial, generous pair budget).
pub fn buchberger(generators: &[Polynomial]) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(generators, &BuchbergerOptions::default())
}

/// Buchberger's algorithm: repeatedly reduces S-polynomials of basis pairs
/// and adjoins nonzero remainders until every pair reduces to zero.
pub fn buchberger_with(
    generators: &[Polynomial],
    opts: &BuchbergerOptions,
) -> Result<GroebnerBasis, GroebnerError> {
    let mut basis: Vec<Polynomial> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Err(GroebnerError::NoGenerators);
    }

    let mut heap = BinaryHeap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            heap.push(pair_entry(&basis, i, j));
        }
    }

    let mut handled: HashSet<(usize, usize)> = HashSet::new();
    let mut popped: u64 = 0;
    let batch_size = if opts.jobs > 1 { opts.jobs * 4 } else { 1 };

    while !heap.is_empty() {
        let mut batch: Vec<(usize, usize)> = Vec::with_capacity(batch_size);
        while batch.len() < batch_size {
            let Some(pair) = heap.pop() else { break };
            popped += 1;
            if popped > opts.max_pairs {
                return Err(GroebnerError::BudgetExhausted { processed: popped });
            }
            let (i, j) = (pair.i, pair.j);
            let lt_i = basis[i].leading_term().expect("nonzero");
            let lt_j = basis[j].leading_term().expect("nonzero");
            let skip = lt_i.is_coprime(lt_j)
                || (opts.chain_criterion && chain_criterion(&basis, &handled, i, j, &pair.lcm));
            handled.insert((i, j));
            if !skip {
                batch.push((i, j));
            }
        }
        if batch.is_empty() {
            continue;
        }
        let remainders = if opts.jobs > 1 && batch.len() > 1 {
            parallel_remainders(&basis, &batch, opts.jobs)
        } else {
            batch.iter().map(|&(i, j)| remainder(&basis, i, j)).collect()
        };
        for r in remainders {
            // the basis may have grown inside this batch; finish the reduction
            let r = divide(&r, &basis).expect("nonzero divisors").normal_form;
            if !r.is_zero() {
                let k = basis.len();
                basis.push(r);
                for i in 0..k {
                    heap.push(pair_entry(&basis, i, k));
                }
            }
        }
    }

    GroebnerBasis::new(basis)
}

fn pair_entry(basis: &[Polynomial], i: usize, j: usize) -> PairEntry {
    let lcm = basis[i]
        .leading_term()
        .expect("nonzero")
        .lcm(basis[j].leading_term().expect("nonzero"));
    PairEntry { lcm, i, j }
}

fn remainder(basis: &[Polynomial], i: usize, j: usize) -> Polynomial {
    let s = s_polynomial(&basis[i], &basis[j]).expect("nonzero basis elements");
    divide(&s, basis).expect("nonzero divisors").normal_form
}

fn parallel_remainders(basis: &[Polynomial], batch: &[(usize, usize)], jobs: usize) -> Vec<Polynomial> {
    let chunk = batch.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = batch
            .chunks(chunk)
            .map(|chunk| scope.spawn(move || chunk.iter().map(|&(i, j)| remainder(basis, i, j)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("reduction worker panicked")).collect()
    })
}

/// Chain criterion: the pair (i, j) is redundant when some k has its
/// leading term dividing lcm(i, j) and both (i, k) and (j, k) were already
/// handled.
fn chain_criterion(
    basis: &[Polynomial],
    handled: &HashSet<(usize, usize)>,
    i: usize,
    j: usize,
    lcm: &Monomial,
) -> bool {
    for (k, p) in basis.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        if !p.leading_term().expect("nonzero").divides(lcm) {
            continue;
        }
        let ik = (i.min(k), i.max(k));
        let jk = (j.min(k), j.max(k));
        if handled.contains(&ik) && handled.contains(&jk) {
            return true;
        }
    }
    false
}

/// Turns a Gröbner basis into THE reduced Gröbner basis of the same ideal
/// (unique for a fixed order): drops elements with redundant leading terms,
/// tail-reduces the rest to a fixpoint, and sorts canonically.
pub fn auto_reduce(basis: &GroebnerBasis) -> GroebnerBasis {
    let mut elems = basis.elements().to_vec();
    elems.sort_unstable_by(poly_cmp);

    // minimal subset: a divisor of a leading term sorts before it, so one
    // ascending sweep suffices (duplicates drop too)
    let mut kept: Vec<Polynomial> = Vec::new();
    'next: for e in elems {
        let lt = e.leading_term().expect("nonzero").clone();
        for k in &kept {
            if k.leading_term().expect("nonzero").divides(&lt) {
                continue 'next;
            }
        }
        kept.push(e);
    }

    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<Polynomial> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let nf = divide(&kept[i], &others).expect("nonzero divisors").normal_form;
            if nf != kept[i] {
                kept[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    kept.sort_unstable_by(poly_cmp);
    GroebnerBasis::with_flag(kept, true).expect("leading terms survive tail reduction")
}

/// Buchberger's criterion as a certificate check: true iff every pairwise
/// S-polynomial reduces to zero modulo the list.
pub fn is_groebner(basis: &[Polynomial]) -> Result<bool, GroebnerError> {
    if basis.is_empty() {
        return Err(GroebnerError::NoGenerators);
    }
    if basis.iter().any(Polynomial::is_zero) {
        return Err(GroebnerError::ZeroElement);
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j])?;
            if !divide(&s, basis)?.normal_form.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership test for an ideal presented by a Gröbner basis.
pub fn ideal_membership(p: &Polynomial, basis: &GroebnerBasis) -> bool {
    divide(p, basis.elements()).expect("basis has nonzero elements").normal_form.is_zero()
}

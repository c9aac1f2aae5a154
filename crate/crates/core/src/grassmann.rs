//! The cohomology ring H*(G(3,n); Z2) presented by its closed-form reduced
//! Gröbner basis.
//!
//! The ideal of relations is generated by the dual Stiefel-Whitney classes
//! `dual_class(3, n+1), ..., dual_class(3, n+3)`. The closed form `g(m, l)`
//! spans a reduced Gröbner basis for it under grlex; everything downstream
//! (normal forms, graded bases, Steenrod action, normal-bundle classes)
//! reduces through that basis.

use thiserror::Error;

use crate::gf2poly::{binom_mod2, grlex_cmp, multinom_mod2, Monomial, Polynomial};
use crate::groebner::{divide, GroebnerBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("n must be at least 3 (got {0})")]
    InvalidN(u32),
    #[error("overflow decomposition requires m + l = n + 2 (n = {n}, m = {m}, l = {l})")]
    BadOverflowIndices { n: u32, m: u32, l: u32 },
    #[error("class reduces to zero; height undefined")]
    ZeroClass,
}

/// The monomial `w1^a * w2^b * w3^c`.
pub fn mono3(a: u32, b: u32, c: u32) -> Monomial {
    Monomial::new(vec![a, b, c])
}

/// The degree-`r` dual Stiefel-Whitney class in `k` variables: the degree-`r`
/// part of the inverse of the total class `1 + w1 + ... + wk`, with
/// multinomial coefficients taken mod 2.
pub fn dual_class(k: usize, r: u64) -> Polynomial {
    assert!(k >= 1, "dual_class requires at least one variable");
    let mut terms = Vec::new();
    let mut exps = vec![0u32; k];
    collect_weighted_solutions(k, r, &mut exps, &mut terms);
    Polynomial::from_terms(k, terms)
}

/// Enumerates all (e1, ..., ek) with `sum i * ei = target`, pushing the
/// monomials whose multinomial coefficient is odd.
fn collect_weighted_solutions(var: usize, target: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if var == 1 {
        exps[0] = u32::try_from(target).expect("exponent overflow");
        let parts: Vec<u64> = exps.iter().map(|&e| e as u64).collect();
        if multinom_mod2(&parts) {
            out.push(Monomial::new(exps.clone()));
        }
        return;
    }
    let weight = var as u64;
    for e in 0..=target / weight {
        exps[var - 1] = u32::try_from(e).expect("exponent overflow");
        collect_weighted_solutions(var - 1, target - e * weight, exps, out);
    }
    exps[var - 1] = 0;
}

/// The closed-form basis polynomial: the sum of all `w1^a w2^b w3^c` with
/// `a + 2b + 3c = n + 1 + m + 2l` whose coefficient
/// `C(a+b+c-m-l, a) * C(b+c-l, b)` is odd. Total in (m, l); members of the
/// Gröbner basis additionally satisfy `m + l <= n + 1`.
pub fn g_closed(n: u32, m: u32, l: u32) -> Polynomial {
    assert!(n >= 3, "n must be at least 3 (got {n})");
    let target = (n as u64 + 1) + m as u64 + 2 * l as u64;
    let (m, l) = (m as i64, l as i64);
    let mut terms = Vec::new();
    for c in 0..=target / 3 {
        let rem = target - 3 * c;
        for b in 0..=rem / 2 {
            let a = rem - 2 * b;
            let (a, b, c) = (a as i64, b as i64, c as i64);
            if binom_mod2(a + b + c - m - l, a) && binom_mod2(b + c - l, b) {
                terms.push(mono3(a as u32, b as u32, c as u32));
            }
        }
    }
    Polynomial::from_terms(3, terms)
}

/// Index pairs (m, l) of the closed basis in construction order.
pub fn closed_basis_pairs(n: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            pairs.push((m, l));
        }
    }
    pairs
}

/// The closed-form reduced Gröbner basis: all `g_closed(n, m, l)` with
/// `m + l <= n + 1`, in `closed_basis_pairs` order. Contains
/// `(n+2)(n+3)/2` elements whose leading terms are exactly the monomials of
/// order degree `n + 1`.
pub fn closed_basis(n: u32) -> GroebnerBasis {
    assert!(n >= 3, "n must be at least 3 (got {n})");
    let mut elements = Vec::with_capacity(((n as usize + 2) * (n as usize + 3)) / 2);
    for (m, l) in closed_basis_pairs(n) {
        let g = g_closed(n, m, l);
        let lt = g.leading_term().expect("basis elements are nonzero");
        assert_eq!(
            lt,
            &mono3(n + 1 - m - l, m, l),
            "leading term of g({m},{l}) is not the expected monomial"
        );
        for t in &g.terms()[1..] {
            assert!(
                t.order_degree() <= n as u64,
                "tail term of g({m},{l}) has order degree above n"
            );
        }
        elements.push(g);
    }
    // leading terms are distinct degree-(n+1) monomials and every tail term
    // has order degree <= n, so no term is divisible by another leading
    // term: the basis is reduced by construction
    GroebnerBasis::with_flag(elements, true).expect("nonzero elements")
}

/// Writes `g_closed(n, m, l)` with `m + l = n + 2` as the sum
/// `sum_j C(m-j, j) g_closed(n, m-2j, l+j)` over `1 <= j <= m/2` (all of
/// whose members satisfy `m + l <= n + 1`). The sum may be empty.
pub fn overflow_decomposition(n: u32, m: u32, l: u32) -> Result<Polynomial, GrassmannError> {
    if m as u64 + l as u64 != n as u64 + 2 {
        return Err(GrassmannError::BadOverflowIndices { n, m, l });
    }
    let mut acc = Polynomial::zero(3);
    for j in 1..=m / 2 {
        if binom_mod2((m - j) as i64, j as i64) {
            acc = acc.add(&g_closed(n, m - 2 * j, l + j));
        }
    }
    Ok(acc)
}

/// The monomial basis of one graded piece of the cohomology: all
/// `w1^a w2^b w3^c` with `a + 2b + 3c = degree` and `a + b + c <= n`,
/// grlex-descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    n: u32,
    degree: u64,
    monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Position of a monomial in the basis, if present.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search_by(|probe| grlex_cmp(m, probe)).ok()
    }
}

/// The basis of H^degree(G(3,n); Z2). Degrees outside `[0, 3n]` give the
/// empty basis.
pub fn additive_basis(n: u32, degree: u64) -> GradedBasis {
    assert!(n >= 3, "n must be at least 3 (got {n})");
    let mut monomials = Vec::new();
    if degree <= 3 * n as u64 {
        for c in 0..=degree / 3 {
            let rem = degree - 3 * c;
            for b in 0..=rem / 2 {
                let a = rem - 2 * b;
                if a + b + c <= n as u64 {
                    monomials.push(mono3(a as u32, b as u32, c as u32));
                }
            }
        }
    }
    monomials.sort_unstable_by(|x, y| grlex_cmp(y, x));
    GradedBasis { n, degree, monomials }
}

/// Height of a nonzero cohomology class: the largest `h` with `p^h != 0`.
/// Units (classes with a constant term) are never nilpotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Height {
    Finite(u64),
    Infinite,
}

/// H*(G(3,n); Z2) with its closed-form reduced Gröbner basis and the
/// per-degree monomial bases cached eagerly. Immutable after construction;
/// all queries are read-only.
#[derive(Debug, Clone)]
pub struct GrassmannRing {
    n: u32,
    basis: GroebnerBasis,
    graded: Vec<GradedBasis>,
}

impl GrassmannRing {
    pub fn new(n: u32) -> Result<Self, GrassmannError> {
        if n < 3 {
            return Err(GrassmannError::InvalidN(n));
        }
        let basis = closed_basis(n);
        let graded = (0..=3 * n as u64).map(|d| additive_basis(n, d)).collect();
        Ok(GrassmannRing { n, basis, graded })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Top cohomological degree 3n.
    pub fn dimension(&self) -> u64 {
        3 * self.n as u64
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// The cached basis of H^degree; `degree` must lie in `[0, 3n]`.
    pub fn graded_basis(&self, degree: u64) -> &GradedBasis {
        &self.graded[usize::try_from(degree).expect("degree out of range")]
    }

    fn pair_index(&self, m: u32, l: u32) -> usize {
        let (m, l, n) = (m as usize, l as usize, self.n as usize);
        m * (n + 2) - m * (m - 1) / 2 + l
    }

    /// The basis element `g(m, l)`, `m + l <= n + 1`.
    pub fn basis_element(&self, m: u32, l: u32) -> &Polynomial {
        assert!(m as u64 + l as u64 <= self.n as u64 + 1);
        &self.basis.elements()[self.pair_index(m, l)]
    }

    /// Cohomology normal form: the unique remainder modulo the basis. The
    /// result has every term with exponent sum at most n; it is zero exactly
    /// when `p` lies in the ideal of relations.
    ///
    /// Leading terms of the basis are all monomials of order degree n+1, so
    /// a term is reducible iff its order degree exceeds n, and the reducible
    /// term of greatest grlex order is always the leading one.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.arity(), 3, "Grassmann classes live in three variables");
        let n = self.n;
        let mut nf = p.clone();
        while let Some(lt) = nf.leading_term() {
            if lt.order_degree() <= n as u64 {
                break;
            }
            let (a, b, c) = (lt.exponent(0), lt.exponent(1), lt.exponent(2));
            let l = c.min(n + 1);
            let m = b.min(n + 1 - l);
            debug_assert!(n + 1 - m - l <= a);
            let g = self.basis_element(m, l);
            let q = lt.div(g.leading_term().expect("nonzero")).expect("construction divides");
            nf = nf.add(&g.mul_monomial(&q));
        }
        nf
    }

    /// Largest `h` with `reduce(p^h) != 0`, or `Infinite` for units.
    pub fn height(&self, p: &Polynomial) -> Result<Height, GrassmannError> {
        let nf = self.reduce(p);
        if nf.is_zero() {
            return Err(GrassmannError::ZeroClass);
        }
        if nf.contains_term(&Monomial::constant(3)) {
            return Ok(Height::Infinite);
        }
        let mut h = 1;
        let mut cur = nf.clone();
        loop {
            let next = self.reduce(&cur.mul_truncated(&nf, self.dimension()));
            if next.is_zero() {
                return Ok(Height::Finite(h));
            }
            h += 1;
            cur = next;
        }
    }
}

/// Exact integer coefficients of the Gaussian binomial `[top choose bottom]_q`
/// by the product formula, lowest degree first.
pub fn gaussian_binomial_coeffs(top: u64, bottom: u64) -> Vec<i64> {
    if bottom > top {
        return vec![0];
    }
    let mut coeffs = vec![1i64];
    for i in 1..=bottom {
        // multiply by (1 - q^(top - bottom + i)), divide by (1 - q^i)
        coeffs = intpoly_mul_one_minus_q(&coeffs, top - bottom + i);
        coeffs = intpoly_div_one_minus_q(&coeffs, i);
    }
    coeffs
}

fn intpoly_mul_one_minus_q(a: &[i64], e: u64) -> Vec<i64> {
    let e = e as usize;
    let mut out = vec![0i64; a.len() + e];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
        out[i + e] -= c;
    }
    out
}

fn intpoly_div_one_minus_q(a: &[i64], e: u64) -> Vec<i64> {
    // synthetic division by (1 - q^e); the quotient satisfies
    // q[i] = a[i] + q[i - e]
    let e = e as usize;
    assert!(a.len() >= e, "division by (1 - q^{e}) must be exact");
    let mut q = vec![0i64; a.len() - e];
    for i in 0..q.len() {
        q[i] = a[i] + if i >= e { q[i - e] } else { 0 };
    }
    // remainder must vanish: a[i] = q[i] - q[i - e] for the top coefficients
    for i in q.len()..a.len() {
        let expect = if i >= e { -q[i - e] } else { 0 };
        assert_eq!(a[i], expect, "division by (1 - q^{e}) left a remainder");
    }
    q
}

/// Independent dimension oracle: per-degree dimensions of the additive basis
/// must match the coefficients of the Gaussian binomial `[n+3 choose 3]_q`,
/// and sum to `C(n+3, 3)`.
pub fn poincare_check(n: u32) -> bool {
    assert!(n >= 3, "n must be at least 3 (got {n})");
    let coeffs = gaussian_binomial_coeffs(n as u64 + 3, 3);
    let top = 3 * n as u64;
    if coeffs.len() as u64 != top + 1 {
        return false;
    }
    let mut total: u64 = 0;
    for d in 0..=top {
        let dim = additive_basis(n, d).len() as i64;
        if dim != coeffs[d as usize] {
            return false;
        }
        total += dim as u64;
    }
    let n = n as u64;
    total == (n + 1) * (n + 2) * (n + 3) / 6
}

/// Result of an identity sweep: how many identities were checked and which
/// failed (with indices).
#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, name: impl FnOnce() -> String, lhs: &Polynomial, rhs: &Polynomial) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(format!("{}: {lhs} != {rhs}", name()));
        }
    }
}

/// Verifies, exhaustively over all valid index tuples for this `n`:
/// the three-term recurrences linking neighboring `g(m, l)`, the closed-form
/// S-polynomial presentations (with indices summing to n+2 expanded through
/// `overflow_decomposition`), the overflow decomposition itself, and the
/// expressions of the ideal generators in terms of `g(0,0)`, `g(1,0)`,
/// `g(2,0)`.
pub fn recurrence_check(n: u32) -> IdentityReport {
    assert!(n >= 3, "n must be at least 3 (got {n})");
    let mut rep = IdentityReport::default();
    let w1 = Polynomial::variable(3, 0);
    let w2 = Polynomial::variable(3, 1);
    let w3 = Polynomial::variable(3, 2);
    let g = |m: u32, l: u32| g_closed(n, m, l);
    // g with an index sum of n+2 rewritten as a sum of basis members
    let gx = |m: u32, l: u32| -> Polynomial {
        if m + l <= n + 1 {
            g_closed(n, m, l)
        } else {
            overflow_decomposition(n, m, l).expect("index sum n+2")
        }
    };
    let spoly = |a: &Polynomial, b: &Polynomial| crate::groebner::s_polynomial(a, b).expect("nonzero");

    // g(m+2, l) = g(m, l+1) + w2 g(m, l) + w1 g(m+1, l)
    for m in 0..=n - 1 {
        for l in 0..=n - 1 - m {
            let lhs = g(m + 2, l);
            let rhs = g(m, l + 1).add(&w2.mul(&g(m, l))).add(&w1.mul(&g(m + 1, l)));
            rep.check(|| format!("three-term (1) at m={m}, l={l}"), &lhs, &rhs);
        }
    }
    // g(m+1, l+1) = w3 g(m, l) + w1 g(m, l+1)
    for m in 0..=n - 1 {
        for l in 0..=n - 1 - m {
            let lhs = g(m + 1, l + 1);
            let rhs = w3.mul(&g(m, l)).add(&w1.mul(&g(m, l + 1)));
            rep.check(|| format!("three-term (2) at m={m}, l={l}"), &lhs, &rhs);
        }
    }
    // g(m-1, l+2) = w3 g(m, l) + w2 g(m-1, l+1)
    for m in 1..=n {
        for l in 0..=n - m {
            let lhs = g(m - 1, l + 2);
            let rhs = w3.mul(&g(m, l)).add(&w2.mul(&g(m - 1, l + 1)));
            rep.check(|| format!("three-term (3) at m={m}, l={l}"), &lhs, &rhs);
        }
    }

    // S(g(m,l), g(m+r,l)) = sum_i w1^i w2^(r-1-i) (g(m+2+i, l) + g(m+i, l+1))
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            for r in 1..=n + 1 - m - l {
                let lhs = spoly(&g(m, l), &g(m + r, l));
                let mut rhs = Polynomial::zero(3);
                for i in 0..r {
                    let factor = mono3(i, r - 1 - i, 0);
                    rhs = rhs.add(&gx(m + 2 + i, l).add(&g(m + i, l + 1)).mul_monomial(&factor));
                }
                rep.check(|| format!("row S-pair at m={m}, l={l}, r={r}"), &lhs, &rhs);
            }
        }
    }
    // S(g(m,l), g(m,l+s)) = sum_j w1^j w3^(s-1-j) g(m+1, l+1+j)
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            for s in 1..=n + 1 - m - l {
                let lhs = spoly(&g(m, l), &g(m, l + s));
                let mut rhs = Polynomial::zero(3);
                for j in 0..s {
                    rhs = rhs.add(&gx(m + 1, l + 1 + j).mul_monomial(&mono3(j, 0, s - 1 - j)));
                }
                rep.check(|| format!("column S-pair at m={m}, l={l}, s={s}"), &lhs, &rhs);
            }
        }
    }
    // S(g(m,l), g(m-s,l+s)) = sum_j w2^j w3^(s-1-j) g(m-1-j, l+2+j)
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            for s in 1..=m {
                let lhs = spoly(&g(m, l), &g(m - s, l + s));
                let mut rhs = Polynomial::zero(3);
                for j in 0..s {
                    rhs = rhs.add(&gx(m - 1 - j, l + 2 + j).mul_monomial(&mono3(0, j, s - 1 - j)));
                }
                rep.check(|| format!("antidiagonal S-pair at m={m}, l={l}, s={s}"), &lhs, &rhs);
            }
        }
    }

    // general presentation, indices moving up in both coordinates
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            for r in 0..=n + 1 - m - l {
                for s in 0..=n + 1 - m - l - r {
                    if r + s == 0 {
                        continue;
                    }
                    let lhs = spoly(&g(m, l), &g(m + r, l + s));
                    let mut rhs = Polynomial::zero(3);
                    for i in 0..r {
                        let factor = mono3(s + i, r - 1 - i, 0);
                        rhs = rhs
                            .add(&gx(m + 2 + i, l + s).add(&g(m + i, l + s + 1)).mul_monomial(&factor));
                    }
                    for j in 0..s {
                        rhs = rhs.add(&gx(m + 1, l + 1 + j).mul_monomial(&mono3(j, r, s - 1 - j)));
                    }
                    rep.check(|| format!("S-pair (up, up) at m={m}, l={l}, r={r}, s={s}"), &lhs, &rhs);
                }
            }
        }
    }
    // indices up in m and down in l, the m step at least as large
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            for s in 0..=l {
                for r in s.max(1)..=n + 1 + s - m - l {
                    let lhs = spoly(&g(m, l), &g(m + r, l - s));
                    let mut rhs = Polynomial::zero(3);
                    for i in 0..r - s {
                        let factor = mono3(i, r - 1 - i, 0);
                        rhs = rhs.add(&gx(m + 2 + i, l).add(&g(m + i, l + 1)).mul_monomial(&factor));
                    }
                    for j in 0..s {
                        let factor = mono3(r - s, j, s - 1 - j);
                        rhs = rhs.add(&gx(m + r - 1 - j, l - s + 2 + j).mul_monomial(&factor));
                    }
                    rep.check(|| format!("S-pair (up, down) at m={m}, l={l}, r={r}, s={s}"), &lhs, &rhs);
                }
            }
        }
    }
    // indices up in m and down in l, the l step strictly larger
    for m in 0..=n + 1 {
        for l in 0..=n + 1 - m {
            for s in 1..=l {
                for r in 0..s {
                    let lhs = spoly(&g(m, l), &g(m + r, l - s));
                    let mut rhs = Polynomial::zero(3);
                    for i in 0..s - r {
                        let factor = mono3(i, r, s - r - 1 - i);
                        rhs = rhs.add(&gx(m + 1, l - s + r + 1 + i).mul_monomial(&factor));
                    }
                    for j in 0..r {
                        let factor = mono3(0, j, s - 1 - j);
                        rhs = rhs.add(&gx(m + r - 1 - j, l - s + 2 + j).mul_monomial(&factor));
                    }
                    rep.check(|| format!("S-pair (up, down, steep) at m={m}, l={l}, r={r}, s={s}"), &lhs, &rhs);
                }
            }
        }
    }

    // overflow decomposition agrees with the closed form on the n+2 diagonal
    for m in 0..=n + 2 {
        let l = n + 2 - m;
        let lhs = g_closed(n, m, l);
        let rhs = overflow_decomposition(n, m, l).expect("diagonal indices");
        rep.check(|| format!("overflow decomposition at m={m}, l={l}"), &lhs, &rhs);
    }

    // ideal generators in terms of the first basis elements
    rep.check(|| "dual class n+1".into(), &dual_class(3, n as u64 + 1), &g(0, 0));
    rep.check(
        || "dual class n+2".into(),
        &dual_class(3, n as u64 + 2),
        &w1.mul(&g(0, 0)).add(&g(1, 0)),
    );
    rep.check(
        || "dual class n+3".into(),
        &dual_class(3, n as u64 + 3),
        &w1.mul(&w1).mul(&g(0, 0)).add(&g(2, 0)),
    );

    rep
}

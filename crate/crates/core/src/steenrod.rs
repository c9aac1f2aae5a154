//! Steenrod squares on H*(G(3,n); Z2).
//!
//! `sq1` and `sq2` apply closed termwise formulas. The general `sq` acts on
//! the generators through the Wu formula and extends multiplicatively by the
//! Cartan formula: the total square is a ring map, so `Sq^i` of a monomial
//! is the degree-shifted graded piece of a product of generator total
//! squares. All results come back in cohomology normal form.

use crate::gf2poly::{binom_mod2, Monomial, Polynomial};
use crate::grassmann::{mono3, GrassmannRing};

/// The operation `Sq^index`. `Sq^0` is the identity and `Sq^i` raises
/// cohomological degree by exactly `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteenrodOp {
    pub index: u32,
}

impl SteenrodOp {
    pub fn apply(&self, ring: &GrassmannRing, p: &Polynomial) -> Polynomial {
        sq(ring, self.index, p)
    }
}

/// `Sq^1(w1^a w2^b w3^c) = (a+b+c) w1^(a+1) w2^b w3^c + b w1^a w2^(b-1) w3^(c+1)`,
/// coefficients mod 2, reduced.
pub fn sq1(ring: &GrassmannRing, p: &Polynomial) -> Polynomial {
    let mut out = Vec::new();
    for t in p.terms() {
        let (a, b, c) = (t.exponent(0), t.exponent(1), t.exponent(2));
        if t.order_degree() % 2 == 1 {
            out.push(mono3(a + 1, b, c));
        }
        if b % 2 == 1 {
            out.push(mono3(a, b - 1, c + 1));
        }
    }
    ring.reduce(&Polynomial::from_terms(3, out))
}

/// The four-term closed formula for `Sq^2` on a monomial, reduced.
pub fn sq2(ring: &GrassmannRing, p: &Polynomial) -> Polynomial {
    let mut out = Vec::new();
    for t in p.terms() {
        let (a, b, c) = (t.exponent(0), t.exponent(1), t.exponent(2));
        let s = t.order_degree() as i64;
        if binom_mod2(s, 2) {
            out.push(mono3(a + 2, b, c));
        }
        if b % 2 == 1 && (a + c) % 2 == 1 {
            out.push(mono3(a + 1, b - 1, c + 1));
        }
        if (b + c) % 2 == 1 {
            out.push(mono3(a, b + 1, c));
        }
        if b >= 2 && binom_mod2(b as i64, 2) {
            out.push(mono3(a, b - 2, c + 2));
        }
    }
    ring.reduce(&Polynomial::from_terms(3, out))
}

/// `Sq^i(w_j)` by the Wu formula
/// `Sq^i(w_j) = sum_t C(j + t - i - 1, t) w_(i-t) w_(j+t)`,
/// with `w_0 = 1` and `w_s = 0` for `s > 3`.
fn sq_on_generator(i: u32, j: u32) -> Polynomial {
    let mut terms = Vec::new();
    for t in 0..=i {
        let low = i - t;
        let high = j + t;
        if low > 3 || high > 3 {
            continue;
        }
        if !binom_mod2(j as i64 + t as i64 - i as i64 - 1, t as i64) {
            continue;
        }
        let mut exps = [0u32; 3];
        if low > 0 {
            exps[(low - 1) as usize] += 1;
        }
        exps[(high - 1) as usize] += 1;
        terms.push(Monomial::new(exps.to_vec()));
    }
    Polynomial::from_terms(3, terms)
}

/// Total square of a generator: `Sq(w_j) = w_j + Sq^1(w_j) + ... + Sq^j(w_j)`.
fn total_square_generator(j: u32) -> Polynomial {
    let mut acc = Polynomial::zero(3);
    for i in 0..=j {
        acc = acc.add(&sq_on_generator(i, j));
    }
    acc
}

/// Product of generator total squares for one monomial, truncated.
fn total_square_monomial(t: &Monomial, max_degree: u64) -> Polynomial {
    let mut prod = Polynomial::one(3);
    for (var, &e) in t.exponents().iter().enumerate() {
        if e > 0 {
            let tsq = total_square_generator(var as u32 + 1);
            prod = prod.mul_truncated(&tsq.pow_truncated(e as u64, max_degree), max_degree);
        }
    }
    prod
}

/// `Sq^i` on the cohomology of `ring`, reduced. Agrees with [`sq1`] and
/// [`sq2`] for i = 1, 2; `Sq^0` is the identity (up to reduction).
pub fn sq(ring: &GrassmannRing, i: u32, p: &Polynomial) -> Polynomial {
    if i == 0 {
        return ring.reduce(p);
    }
    let mut acc = Polynomial::zero(3);
    for t in p.terms() {
        let d = t.cohom_degree();
        if (i as u64) > d {
            continue; // instability: Sq^i vanishes above the degree
        }
        let target = d + i as u64;
        if target > ring.dimension() {
            continue; // the cohomology vanishes above 3n
        }
        acc = acc.add(&total_square_monomial(t, target).homogeneous_component(target));
    }
    ring.reduce(&acc)
}

/// The full total square `sum_i Sq^i(p)`, reduced. Finite by instability.
pub fn total_square(ring: &GrassmannRing, p: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(3);
    for t in p.terms() {
        acc = acc.add(&total_square_monomial(t, ring.dimension()));
    }
    ring.reduce(&acc)
}

/// Checks the power rule `Sq^m(u^(2^k)) = (Sq^(m/2^k) u)^(2^k)` when `2^k`
/// divides `m`, and `= 0` otherwise, in the cohomology of `ring`.
pub fn sq_power_rule_check(ring: &GrassmannRing, u: &Polynomial, m: u32, k: u32) -> bool {
    let two_k = 1u64 << k;
    let upow = ring.reduce(&u.pow_truncated(two_k, ring.dimension()));
    let lhs = sq(ring, m, &upow);
    let rhs = if m as u64 % two_k == 0 {
        let inner = sq(ring, m / (two_k as u32), u);
        ring.reduce(&inner.pow_truncated(two_k, ring.dimension()))
    } else {
        Polynomial::zero(3)
    };
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(text: &str) -> Polynomial {
        Polynomial::parse(text, 3).unwrap()
    }

    fn ring(n: u32) -> GrassmannRing {
        GrassmannRing::new(n).unwrap()
    }

    #[test]
    fn wu_formula_on_generators() {
        assert_eq!(sq_on_generator(0, 2), p3("w2"));
        assert_eq!(sq_on_generator(1, 1), p3("w1^2"));
        assert_eq!(sq_on_generator(1, 2), p3("w1*w2 + w3"));
        assert_eq!(sq_on_generator(2, 2), p3("w2^2"));
        assert_eq!(sq_on_generator(1, 3), p3("w1*w3"));
        assert_eq!(sq_on_generator(2, 3), p3("w2*w3"));
        assert_eq!(sq_on_generator(3, 3), p3("w3^2"));
        // instability on generators
        assert!(sq_on_generator(2, 1).is_zero());
        assert!(sq_on_generator(3, 2).is_zero());
    }

    #[test]
    fn sq1_top_degree_examples() {
        for n in [4u32, 8] {
            let r = ring(n);
            let x = p3(&format!("w2*w3^{}", n - 1));
            assert_eq!(sq1(&r, &x), p3(&format!("w3^{n}")));
        }
        for n in [6u32, 8] {
            let r = ring(n);
            let x = p3(&format!("w3^{}", n - 1));
            assert_eq!(sq1(&r, &x), p3(&format!("w1*w3^{}", n - 1)));
        }
        for n in [5u32, 7, 9] {
            let r = ring(n);
            let x = p3(&format!("w3^{}", n - 1));
            assert!(sq1(&r, &x).is_zero());
        }
        assert!(sq1(&ring(5), &Polynomial::one(3)).is_zero());
    }

    #[test]
    fn sq2_examples_mod_one() {
        let r = ring(9);
        assert_eq!(sq2(&r, &p3("w1*w3^7")), p3("w1*w2*w3^7"));
        assert_eq!(sq2(&r, &p3("w3^7")), p3("w1^2*w3^7 + w2*w3^7"));
        assert!(sq2(&r, &p3("w1")).is_zero());
        assert!(sq2(&r, &Polynomial::one(3)).is_zero());
    }

    #[test]
    fn sq_matches_closed_forms_small() {
        let r = ring(6);
        for d in 0..=r.dimension() {
            for m in r.graded_basis(d).monomials() {
                let p = Polynomial::from_monomial(m.clone());
                assert_eq!(sq(&r, 1, &p), sq1(&r, &p), "Sq1 at {m}");
                assert_eq!(sq(&r, 2, &p), sq2(&r, &p), "Sq2 at {m}");
            }
        }
    }

    #[test]
    fn sq_instability_axioms() {
        let r = ring(7);
        for mono in [p3("w2*w3"), p3("w1^2*w2"), p3("w3^2")] {
            let d = mono.max_cohom_degree().unwrap() as u32;
            let square = r.reduce(&mono.mul(&mono));
            assert_eq!(sq(&r, d, &mono), square);
            assert!(sq(&r, d + 1, &mono).is_zero());
            assert!(sq(&r, d + 3, &mono).is_zero());
        }
    }

    #[test]
    fn sq_zero_is_identity() {
        let r = ring(5);
        let p = p3("w1*w2 + w3^2");
        assert_eq!(sq(&r, 0, &p), r.reduce(&p));
    }

    #[test]
    fn sq4_examples() {
        let r = ring(10);
        let x = p3("w2^5*w3^5 + w1*w3^8");
        assert!(sq(&r, 4, &x).is_zero());

        let r = ring(9);
        let x = p3("w2^4*w3^4");
        assert_eq!(sq(&r, 4, &x), p3("w3^8"));
    }

    #[test]
    fn power_rule_cases() {
        let r = ring(9);
        // k = 0 degenerates to an identity
        assert!(sq_power_rule_check(&r, &p3("w1*w2 + w3"), 3, 0));
        // the step used at n = 9: u = w2 w3^((n-5)/4), k = 2, m = 4
        let u = p3("w2*w3");
        assert!(sq_power_rule_check(&r, &u, 4, 2));
        let lhs = sq(&r, 4, &r.reduce(&u.pow_truncated(4, r.dimension())));
        assert_eq!(lhs, p3("w3^8"));
        // 2^k does not divide m: the left side must vanish
        for u in [p3("w1"), p3("w2 + w1^2"), p3("w1*w3")] {
            assert!(sq_power_rule_check(&r, &u, 3, 1));
            assert!(sq_power_rule_check(&r, &u, 1, 2));
        }
    }

    #[test]
    fn sq1_squares_to_zero() {
        for n in 6..=9u32 {
            let r = ring(n);
            for d in 0..=r.dimension() {
                for m in r.graded_basis(d).monomials() {
                    let p = Polynomial::from_monomial(m.clone());
                    assert!(sq1(&r, &sq1(&r, &p)).is_zero(), "Sq1 Sq1 {m} != 0 at n={n}");
                }
            }
        }
    }

    #[test]
    fn cartan_total_square_multiplicative() {
        let r = ring(7);
        let pairs = [
            (p3("w1*w2"), p3("w3^2")),
            (p3("w2^2*w3"), p3("w1^3")),
            (p3("w1 + w2"), p3("w3 + w1^2")),
        ];
        for (x, y) in pairs {
            let lhs = total_square(&r, &r.reduce(&x.mul(&y)));
            let rhs = r.reduce(&total_square(&r, &x).mul(&total_square(&r, &y)));
            assert_eq!(lhs, rhs, "Cartan fails for {x} and {y}");
        }
    }
}

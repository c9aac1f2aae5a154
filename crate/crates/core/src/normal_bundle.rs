//! Stiefel-Whitney classes of the stable normal bundle of G(3,n) and the
//! immersion lower bounds they force: a manifold with `w_k` of the normal
//! bundle nonzero cannot immerse below dimension `dim + k`.

use crate::gf2poly::Polynomial;
use crate::grassmann::GrassmannRing;

/// The unique `r` with `2^(r+1) < 3n < 2^(r+2)` (3n is never a power of two).
pub fn r_exponent(n: u32) -> u32 {
    assert!(n >= 3, "n must be at least 3 (got {n})");
    let m = 3 * n as u64;
    let floor_log2 = 63 - m.leading_zeros();
    debug_assert!(!m.is_power_of_two());
    floor_log2 - 1
}

/// Number of ones in the binary expansion.
pub fn alpha(m: u64) -> u32 {
    m.count_ones()
}

/// Reduced Stiefel-Whitney classes `w_i(nu)` of the stable normal bundle,
/// one per degree `0 <= i <= 3n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalClassTable {
    n: u32,
    r: u32,
    classes: Vec<Polynomial>,
}

impl NormalClassTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `w_degree(nu)` in cohomology normal form.
    pub fn class(&self, degree: u64) -> &Polynomial {
        &self.classes[usize::try_from(degree).expect("degree out of range")]
    }

    pub fn classes(&self) -> &[Polynomial] {
        &self.classes
    }

    /// Highest computed degree (3n, unless capped for smoke runs).
    pub fn max_degree(&self) -> u64 {
        self.classes.len() as u64 - 1
    }

    /// The largest positive degree with a nonvanishing class.
    pub fn top_nonzero(&self) -> Option<u64> {
        (1..self.classes.len() as u64).rev().find(|&i| !self.classes[i as usize].is_zero())
    }
}

/// `1 + w1^4 + w2^2 + w1^2 w2^2 + w3^2`, the bundle-independent factor of
/// the normal class formula.
fn quadratic_factor() -> Polynomial {
    Polynomial::parse("1 + w1^4 + w2^2 + w1^2*w2^2 + w3^2", 3).expect("constant text")
}

fn class_table(ring: &GrassmannRing, exponent: u64, max_degree: u64) -> Vec<Polynomial> {
    let total = Polynomial::parse("1 + w1 + w2 + w3", 3).expect("constant text");
    let raw = quadratic_factor().mul_truncated(&total.pow_truncated(exponent, max_degree), max_degree);
    (0..=max_degree).map(|d| ring.reduce(&raw.homogeneous_component(d))).collect()
}

/// The total normal class
/// `w(nu) = (1 + w1^4 + w2^2 + w1^2 w2^2 + w3^2)(1 + w1 + w2 + w3)^(2^(r+1) - n - 3)`,
/// truncated at degree 3n and reduced degree by degree.
pub fn normal_total_class(ring: &GrassmannRing) -> NormalClassTable {
    normal_total_class_capped(ring, ring.dimension())
}

/// As [`normal_total_class`] but truncated at `min(3n, max_degree)`;
/// intended for smoke runs that cap the degree sweep.
pub fn normal_total_class_capped(ring: &GrassmannRing, max_degree: u64) -> NormalClassTable {
    let n = ring.n();
    let r = r_exponent(n);
    let exponent = (1u64 << (r + 1)).checked_sub(n as u64 + 3).expect("2^(r+1) >= n + 3");
    let max_degree = max_degree.min(ring.dimension());
    let classes = class_table(ring, exponent, max_degree);
    NormalClassTable { n, r, classes }
}

/// Consistency check of the reduced form of the normal class formula with
/// the exponent dropped to `2^r - n - 3`, valid for `n <= 2^r - 3` (where
/// `(1 + w1 + w2 + w3)^(2^r) = 1` holds in the ring). Returns `None` when
/// `n` is outside that range, `Some(true)` when both formulas reduce to the
/// same table.
pub fn o2_consistency(ring: &GrassmannRing) -> Option<bool> {
    let n = ring.n();
    let r = r_exponent(n);
    let bound = (1u64 << r).saturating_sub(3);
    if n as u64 > bound {
        return None;
    }
    let exponent = (1u64 << r) - n as u64 - 3;
    let alternative = class_table(ring, exponent, ring.dimension());
    let main = normal_total_class(ring);
    Some(alternative == main.classes)
}

/// `3n + top_nonzero(w(nu))`: the immersion lower bound from the highest
/// surviving normal class (the trivial bound 3n when none survives).
pub fn immersion_lower_bound(n: u32) -> u64 {
    let ring = GrassmannRing::new(n).expect("n >= 3");
    let table = normal_total_class(&ring);
    3 * n as u64 + table.top_nonzero().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::NO_TRUNCATION;
    use crate::grassmann::dual_class;

    fn p3(text: &str) -> Polynomial {
        Polynomial::parse(text, 3).unwrap()
    }

    fn ring(n: u32) -> GrassmannRing {
        GrassmannRing::new(n).unwrap()
    }

    #[test]
    fn r_exponent_values() {
        assert_eq!(r_exponent(3), 2);
        assert_eq!(r_exponent(5), 2);
        assert_eq!(r_exponent(6), 3);
        assert_eq!(r_exponent(8), 3);
        assert_eq!(r_exponent(11), 4);
        assert_eq!(r_exponent(13), 4);
        assert_eq!(r_exponent(21), 4);
        assert_eq!(r_exponent(22), 5);
        assert_eq!(r_exponent(30), 5);
    }

    #[test]
    fn duality_identity() {
        // (1 + w1 + w2 + w3) * (sum of dual classes) = 1 up to the cutoff
        let total = p3("1 + w1 + w2 + w3");
        for cutoff in [5u64, 10, 15] {
            let mut dual_sum = Polynomial::zero(3);
            for r in 0..=cutoff {
                dual_sum = dual_sum.add(&dual_class(3, r));
            }
            assert_eq!(total.mul_truncated(&dual_sum, cutoff), Polynomial::one(3));
        }
    }

    #[test]
    fn low_degree_classes_by_congruence() {
        // n = 0 mod 4
        for n in [4u32, 8, 12] {
            let t = normal_total_class(&ring(n));
            assert_eq!(t.class(2), &p3("w2"), "n = {n}");
        }
        // n = 6 mod 8
        for n in [6u32, 14] {
            let t = normal_total_class(&ring(n));
            assert_eq!(t.class(2), &p3("w1^2 + w2"), "n = {n}");
        }
        // n = 1 mod 8
        for n in [9u32, 17] {
            let t = normal_total_class(&ring(n));
            assert!(t.class(2).is_zero(), "n = {n}");
            assert_eq!(t.class(4), &p3("w2^2"), "n = {n}");
        }
        // n = 2 mod 8
        for n in [10u32, 18] {
            let t = normal_total_class(&ring(n));
            assert_eq!(t.class(1), &p3("w1"), "n = {n}");
            assert_eq!(t.class(2), &p3("w1^2 + w2"), "n = {n}");
            assert_eq!(t.class(3), &p3("w1^3 + w3"), "n = {n}");
            assert_eq!(t.class(4), &p3("w1^4 + w1^2*w2"), "n = {n}");
        }
    }

    #[test]
    fn top_nonzero_at_n8() {
        let t = normal_total_class(&ring(8));
        assert_eq!(t.top_nonzero(), Some(21));
        assert_eq!(t.class(21), &p3("w2^3*w3^5"));
    }

    #[test]
    fn nonvanishing_top_class_upper_range() {
        // 2^r <= n < (4/3) 2^r: the class in degree 6*2^r - 3n - 3 survives
        for n in [4u32, 5, 8, 9, 10, 16, 17, 20] {
            let r = r_exponent(n);
            let degree = 6 * (1u64 << r) - 3 * n as u64 - 3;
            let t = normal_total_class(&ring(n));
            assert!(!t.class(degree).is_zero(), "n = {n}, degree = {degree}");
        }
    }

    #[test]
    fn nonvanishing_top_class_lower_range() {
        // (2/3) 2^r < n <= 2^r - 3: the class in degree 3*2^r - 3n - 3 survives
        for n in [11u32, 12, 13, 22, 25] {
            let r = r_exponent(n);
            let degree = 3 * (1u64 << r) - 3 * n as u64 - 3;
            let t = normal_total_class(&ring(n));
            assert!(!t.class(degree).is_zero(), "n = {n}, degree = {degree}");
        }
    }

    #[test]
    fn immersion_bounds() {
        assert_eq!(immersion_lower_bound(3), 15);
        assert_eq!(immersion_lower_bound(4), 21);
        assert_eq!(immersion_lower_bound(8), 45);
        for n in [11u32, 12, 13] {
            assert_eq!(immersion_lower_bound(n), 45, "n = {n}");
        }
    }

    #[test]
    fn o2_range_and_agreement() {
        assert_eq!(o2_consistency(&ring(5)), None);
        assert_eq!(o2_consistency(&ring(13)), Some(true));
        assert_eq!(o2_consistency(&ring(21)), None);
        assert_eq!(o2_consistency(&ring(11)), Some(true));
        assert_eq!(o2_consistency(&ring(12)), Some(true));
    }

    #[test]
    fn massey_vanishing_bound() {
        for n in 3..=30u32 {
            let t = normal_total_class(&ring(n));
            let cutoff = 3 * n as u64 - alpha(3 * n as u64) as u64;
            for i in cutoff + 1..=3 * n as u64 {
                assert!(t.class(i).is_zero(), "n = {n}, degree {i}");
            }
        }
    }

    #[test]
    fn omitted_eight_term_expansion_reduces_to_zero() {
        // the two four-term halves of the degree 3n-4 class at n = 2^r - 2
        for n in [14u32, 22, 30] {
            let r = ring(n);
            let first = p3(&format!(
                "w1^2*w3^{} + w1^8*w3^{} + w1^6*w2*w3^{} + w1^2*w2^3*w3^{}",
                n - 2,
                n - 4,
                n - 4,
                n - 4
            ));
            let second = p3(&format!(
                "w1^4*w2^8*w3^{} + w1^2*w2^9*w3^{} + w1^2*w2^12*w3^{} + w1^2*w2^15*w3^{}",
                n - 8,
                n - 8,
                n - 10,
                n - 12
            ));
            assert!(r.reduce(&first).is_zero(), "first half at n = {n}");
            assert!(r.reduce(&second).is_zero(), "second half at n = {n}");
        }
        // at n = 6 only the first four summands appear
        let r6 = ring(6);
        let first = p3("w1^2*w3^4 + w1^8*w3^2 + w1^6*w2*w3^2 + w1^2*w2^3*w3^2");
        assert!(r6.reduce(&first).is_zero());
    }

    #[test]
    fn capped_table_is_prefix() {
        let r = ring(8);
        let full = normal_total_class(&r);
        let capped = normal_total_class_capped(&r, 10);
        assert_eq!(capped.max_degree(), 10);
        assert_eq!(capped.classes(), &full.classes()[..=10]);
        let over = normal_total_class_capped(&r, NO_TRUNCATION);
        assert_eq!(over.max_degree(), r.dimension());
    }
}

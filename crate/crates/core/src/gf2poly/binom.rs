//! Binomial and multinomial coefficients mod 2.

/// `C(top, bottom)` mod 2 for arbitrary integers.
///
/// Conventions: the coefficient vanishes for negative `bottom`; for
/// nonnegative `top` it is Lucas' theorem (odd iff the binary digits of
/// `bottom` are dominated by those of `top`, i.e. `bottom & (top - bottom) == 0`);
/// for negative `top` the falling-factorial definition reflects, mod 2, to
/// `C(bottom - top - 1, bottom)`.
pub fn binom_mod2(top: i64, bottom: i64) -> bool {
    if bottom < 0 {
        return false;
    }
    let (top, bottom) = (top as i128, bottom as i128);
    if top >= 0 {
        bottom <= top && (bottom & (top - bottom)) == 0
    } else {
        // C(top, bottom) = (-1)^bottom C(bottom - top - 1, bottom)
        let reflected = bottom - top - 1;
        (bottom & (reflected - bottom)) == 0
    }
}

/// The multinomial coefficient `[a1, ..., ak]` mod 2, computed as the chain
/// `C(a1+...+ak, a1) * C(a2+...+ak, a2) * ... * C(a(k-1)+ak, a(k-1))`.
///
/// The empty product is 1. Odd exactly when the entries have pairwise
/// disjoint binary digits.
pub fn multinom_mod2(parts: &[u64]) -> bool {
    let mut suffix: u64 = 0;
    for &a in parts.iter().rev() {
        suffix = suffix.checked_add(a).expect("multinomial argument overflow");
        assert!(suffix <= i64::MAX as u64, "multinomial argument overflow");
        if !binom_mod2(suffix as i64, a as i64) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_top_reflection() {
        // the coefficient that keeps w1*w3^3 alive in the g(5,0) example
        assert!(binom_mod2(-1, 1));
        assert!(binom_mod2(-1, 0));
        assert!(!binom_mod2(-2, 1));
        assert!(binom_mod2(-2, 2));
    }

    #[test]
    fn negative_bottom_is_zero() {
        assert!(!binom_mod2(7, -2));
        assert!(!binom_mod2(-3, -1));
    }

    #[test]
    fn lucas_small_values() {
        assert!(!binom_mod2(5, 2)); // C(5,2) = 10
        assert!(binom_mod2(5, 1));
        assert!(binom_mod2(3, 2));
        assert!(!binom_mod2(2, 1));
        assert!(!binom_mod2(4, 6)); // bottom > top
    }

    #[test]
    fn bottom_zero_is_one() {
        for a in [-7i64, -1, 0, 1, 12, 1 << 40] {
            assert!(binom_mod2(a, 0));
        }
    }

    #[test]
    fn multinom_examples() {
        assert!(!multinom_mod2(&[1, 1, 0])); // C(2,1) = 2
        assert!(multinom_mod2(&[3, 0, 0]));
        assert!(multinom_mod2(&[]));
        assert!(multinom_mod2(&[1, 2])); // C(3,1) = 3
    }

    #[test]
    fn multinom_two_entries_is_binomial() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                assert_eq!(multinom_mod2(&[a, b]), binom_mod2((a + b) as i64, a as i64));
            }
        }
    }

    #[test]
    fn multinom_permutation_invariant() {
        let cases = [[3u64, 4, 8], [1, 2, 4], [5, 5, 2], [0, 7, 9]];
        for c in cases {
            let base = multinom_mod2(&c);
            let perms = [
                [c[0], c[2], c[1]],
                [c[1], c[0], c[2]],
                [c[1], c[2], c[0]],
                [c[2], c[0], c[1]],
                [c[2], c[1], c[0]],
            ];
            for p in perms {
                assert_eq!(multinom_mod2(&p), base);
            }
        }
    }
}

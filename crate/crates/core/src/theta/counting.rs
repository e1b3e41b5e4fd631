//! Closed-form counts: the binomial identity behind the supertrace, theta
//! characteristics, and the fixed-point side of the Lefschetz formula.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, from_bigint};
use crate::exact::Rational;

/// `δ(n)` for `n mod 4 = 0, 1, 2, 3`: `1, 2, 1, 0`.
pub fn delta_mod4(n: i64) -> u32 {
    match n.rem_euclid(4) {
        0 => 1,
        1 => 2,
        2 => 1,
        _ => 0,
    }
}

fn require_positive(g: u32, what: &'static str) -> Result<()> {
    if g == 0 {
        Err(Error::GenusTooSmall { g, min: 1, what })
    } else {
        Ok(())
    }
}

/// `2^{2g-1} - 2^{g-1}`
pub fn supertrace_closed_form(g: u32) -> Result<BigInt> {
    require_positive(g, "the supertrace formula")?;
    Ok((BigInt::one() << (2 * g - 1)) - (BigInt::one() << (g - 1)))
}

/// Both sides of `Σ_{i=0}^{g-1} δ(g-1-i) C(2g, i) = 2^{2g-1} - 2^{g-1}`.
pub fn binomial_identity_sides(g: u32) -> Result<(BigInt, BigInt)> {
    require_positive(g, "the binomial identity")?;
    let lhs = (0..g)
        .map(|i| binomial(2 * g as u64, i as u64) * delta_mod4((g - 1 - i) as i64))
        .fold(BigInt::zero(), |acc, x| acc + x);
    Ok((lhs, supertrace_closed_form(g)?))
}

pub fn binomial_identity_check(g: u32) -> Result<bool> {
    let (lhs, rhs) = binomial_identity_sides(g)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCharCounts {
    pub odd: BigInt,
    pub even: BigInt,
    pub total: BigInt,
}

/// Odd and even square roots of the canonical bundle.
pub fn theta_char_counts(g: u32) -> Result<ThetaCharCounts> {
    require_positive(g, "theta characteristic counts")?;
    let big = BigInt::one() << (2 * g - 1);
    let small = BigInt::one() << (g - 1);
    Ok(ThetaCharCounts {
        odd: &big - &small,
        even: &big + &small,
        total: BigInt::one() << (2 * g),
    })
}

/// Supertrace of `ι` on the stalk of the intersection complex at a fixed
/// point `L` with `h⁰(L) = r + 1`. The fiber of `φ` over `L` is `P^r`, so the
/// stalk is one-dimensional in each degree `2j` with `0 <= j <= r`.
pub fn fiber_supertrace(r: i64) -> Result<i64> {
    if r < 0 {
        return Err(Error::OutOfRange {
            what: "r = h0 - 1",
            value: r,
            lo: 0,
            hi: i64::MAX,
        });
    }
    // ι acts on H^{2j}(P^r) by (-1)^j.
    Ok((0..=r).map(|j| if j % 2 == 0 { 1 } else { -1 }).sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzBalance {
    pub g: u32,
    pub supertrace: Rational,
    pub fixed_point_sum: BigInt,
    pub counts: ThetaCharCounts,
    pub holds: bool,
}

/// Compares the supertrace of `ι` with the sum of local contributions over
/// its fixed points, the theta characteristics lying on `Θ`. Odd ones have
/// `r` even and even ones on `Θ` have `r` odd, so only the parity of `r`
/// enters.
pub fn lefschetz_balance(g: u32, supertrace: &Rational) -> Result<LefschetzBalance> {
    let counts = theta_char_counts(g)?;
    if &counts.odd + &counts.even != counts.total {
        return Err(Error::Consistency("odd + even theta characteristics != 2^(2g)".into()));
    }
    let fixed_point_sum = &counts.odd * fiber_supertrace(0)? + &counts.even * fiber_supertrace(1)?;
    Ok(LefschetzBalance {
        g,
        supertrace: supertrace.clone(),
        holds: from_bigint(fixed_point_sum.clone()) == *supertrace,
        fixed_point_sum,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use proptest::prelude::*;

    /// Counts theta characteristics of each parity as quadratic refinements
    /// `q(x + y) = q(x) + q(y) + <x, y>` of the symplectic form on `F_2^{2g}`;
    /// the odd ones are those with Arf invariant one, i.e. with fewer zeros.
    fn arf_counts(g: u32) -> (u64, u64) {
        let n = 2 * g;
        let form = |x: u64, y: u64| -> u32 {
            let low = (1u64 << g) - 1;
            (((x & low) & (y >> g)).count_ones() + ((x >> g) & (y & low)).count_ones()) % 2
        };
        let (mut odd, mut even) = (0, 0);
        for values in 0u64..(1u64 << n) {
            // q is determined by its values on the basis vectors.
            let mut zeros = 0u64;
            for x in 0u64..(1u64 << n) {
                let mut q = 0u32;
                let mut acc = 0u64;
                for b in 0..n {
                    if x >> b & 1 == 1 {
                        let e = 1u64 << b;
                        q = (q + (values >> b & 1) as u32 + form(acc, e)) % 2;
                        acc |= e;
                    }
                }
                if q == 0 {
                    zeros += 1;
                }
            }
            if zeros > 1u64 << (n - 1) {
                even += 1;
            } else {
                odd += 1;
            }
        }
        (odd, even)
    }

    #[test]
    fn counts_match_quadratic_forms() {
        for g in 1..=4 {
            let (odd, even) = arf_counts(g);
            let c = theta_char_counts(g).unwrap();
            assert_eq!(c.odd, BigInt::from(odd), "g={g}");
            assert_eq!(c.even, BigInt::from(even), "g={g}");
        }
    }

    #[test]
    fn spec_values() {
        assert_eq!(delta_mod4(0), 1);
        assert_eq!(delta_mod4(1), 2);
        assert_eq!(delta_mod4(7), 0);
        assert_eq!(delta_mod4(-1), 0);
        let c = theta_char_counts(1).unwrap();
        assert_eq!(
            (c.odd, c.even, c.total),
            (BigInt::from(1), BigInt::from(3), BigInt::from(4))
        );
        let c = theta_char_counts(3).unwrap();
        assert_eq!(
            (c.odd, c.even, c.total),
            (BigInt::from(28), BigInt::from(36), BigInt::from(64))
        );
        assert!(theta_char_counts(0).is_err());
        assert_eq!(fiber_supertrace(0).unwrap(), 1);
        assert_eq!(fiber_supertrace(1).unwrap(), 0);
        assert_eq!(fiber_supertrace(2).unwrap(), 1);
        assert!(fiber_supertrace(-1).is_err());
        assert_eq!(
            binomial_identity_sides(3).unwrap(),
            (BigInt::from(28), BigInt::from(28))
        );
        assert!(binomial_identity_check(1).unwrap());
        assert!(binomial_identity_check(200).unwrap());
        assert!(lefschetz_balance(3, &int(28)).unwrap().holds);
        assert!(!lefschetz_balance(3, &int(27)).unwrap().holds);
    }

    #[test]
    fn supertrace_closed_form_values() {
        let v: Vec<BigInt> = (3..=5).map(|g| supertrace_closed_form(g).unwrap()).collect();
        assert_eq!(v, vec![BigInt::from(28), BigInt::from(120), BigInt::from(496)]);
    }

    proptest! {
        #[test]
        fn fiber_supertrace_is_parity(r in 0i64..10_000) {
            prop_assert_eq!(fiber_supertrace(r).unwrap(), 1 - r.rem_euclid(2));
        }

        #[test]
        fn binomial_identity_holds(g in 1u32..=200) {
            prop_assert!(binomial_identity_check(g).unwrap());
        }
    }
}

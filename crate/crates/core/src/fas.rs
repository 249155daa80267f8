//! Minimum feedback arc sets and the single-order sufficient condition for
//! membership in `F(h,x)`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::bias::check_x;
use crate::error::{Error, Result};
use crate::real::RealEnclosure;
use crate::tournament::{pair_count, Tournament};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FasResult {
    /// Size of a minimum feedback arc set.
    pub a: usize,
    /// A vertex order with `max_forward` forward edges.
    pub witness_order: Vec<usize>,
    pub max_forward: usize,
}

/// Exact `a(H)` as `C(h,2)` minus the best forward-edge count over all
/// orders, by DP over vertex subsets. Ties go to the smallest vertex.
pub fn min_fas(t: &Tournament) -> FasResult {
    let h = t.h();
    let full = 1usize << h;
    let mut best = vec![0u16; full];
    // last[S]: vertex placed last in an optimal order of S
    let mut last = vec![0u8; full];
    for s in 1..full {
        let mut top = None;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let score = best[prev] + (t.in_mask(v) as usize & prev).count_ones() as u16;
            if top.is_none_or(|(b, _)| score > b) {
                top = Some((score, v));
            }
        }
        let (score, v) = top.expect("nonempty subset");
        best[s] = score;
        last[s] = v as u8;
    }
    let mut order = Vec::with_capacity(h);
    let mut s = full - 1;
    while s != 0 {
        let v = last[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let max_forward = best[full - 1] as usize;
    FasResult { a: t.pair_count() - max_forward, witness_order: order, max_forward }
}

/// Membership in `A(h,t)`: `a(H) ≤ C(h,2)/2 - t`.
pub fn in_a(tour: &Tournament, t: &Rational) -> Result<bool> {
    if t.is_negative() {
        return Err(Error::BadParameters(format!("t must be nonnegative, got {t}")));
    }
    let a = Rational::from_integer(BigInt::from(min_fas(tour).a));
    let half_m = Rational::new(BigInt::from(tour.pair_count()), BigInt::from(2));
    Ok(a <= half_m - t)
}

fn check_fas_params(h: usize, a: usize) -> Result<(usize, usize)> {
    let m = pair_count(h);
    if h < 2 {
        return Err(Error::BadParameters(format!("h must be at least 2, got {h}")));
    }
    if 2 * a > m {
        return Err(Error::BadParameters(format!("a={a} exceeds C({h},2)/2")));
    }
    Ok((m - 2 * a, a))
}

fn factorial(h: usize) -> BigInt {
    (1..=h as u64).map(BigInt::from).product()
}

/// `(1+2x)^(f-b) (1-4x²)^b > h!` with `b = a`, `f = C(h,2) - a`, in exact
/// arithmetic. When it holds, the best order alone pushes `B(H,x)` above
/// `d(H)`, so every `H` with `a(H) = a` lies in `F(h,x)`.
pub fn fas_dominance_condition(h: usize, a: usize, x: &Rational) -> Result<bool> {
    let (gap, b) = check_fas_params(h, a)?;
    check_x(x)?;
    let lhs = lhs_at(x, x, gap, b);
    Ok(lhs > Rational::from_integer(factorial(h)))
}

fn pow(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

/// Lower bound of the left-hand side when `x ∈ [lo, hi]`: the first factor
/// grows with `x`, the second shrinks. `lhs_at(x, x, ..)` is the exact value.
fn lhs_at(lo: &Rational, hi: &Rational, gap: usize, b: usize) -> Rational {
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    let four = Rational::from_integer(BigInt::from(4));
    pow(&(&one + &two * lo), gap) * pow(&(&one - &four * hi * hi), b)
}

/// Three-valued answer for conditions evaluated on an enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

/// [`fas_dominance_condition`] for an `x` known only through rational
/// enclosures (for example `√(ln h / h)`). Precision doubles from 32 bits up
/// to `max_bits`; `Inconclusive` is returned only if the enclosure never
/// separates the two sides.
pub fn fas_dominance_condition_certified(h: usize, a: usize, x: &dyn RealEnclosure, max_bits: u32) -> Result<Verdict> {
    let (gap, b) = check_fas_params(h, a)?;
    let fact = Rational::from_integer(factorial(h));
    let mut bits = 32;
    loop {
        let (lo, hi) = x.enclose(bits);
        check_x(&lo)?;
        check_x(&hi)?;
        if lhs_at(&lo, &hi, gap, b) > fact {
            return Ok(Verdict::True);
        }
        if lhs_at(&hi, &lo, gap, b) <= fact {
            return Ok(Verdict::False);
        }
        if bits >= max_bits {
            return Ok(Verdict::Inconclusive);
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// `⌊C(h,2)/2 - h^{3/2} √(ln h)⌋` evaluated through a certified enclosure;
/// `None` when the threshold is negative (the family is empty).
pub fn fas_threshold_floor(h: usize) -> Option<usize> {
    use crate::real::{ln_enclosure, sqrt_enclosure};
    let mut bits = 64;
    loop {
        let (ln_lo, ln_hi) = ln_enclosure(&Rational::from_integer(BigInt::from(h)), bits);
        let h3 = Rational::from_integer(BigInt::from(h).pow(3));
        // h^{3/2} √(ln h) = √(h³ ln h)
        let (lo, _) = sqrt_enclosure(&(&h3 * &ln_lo), bits);
        let (_, hi) = sqrt_enclosure(&(&h3 * &ln_hi), bits);
        let half_m = Rational::new(BigInt::from(pair_count(h)), BigInt::from(2));
        let (t_lo, t_hi) = (&half_m - &hi, &half_m - &lo);
        let (f_lo, f_hi) = (t_lo.floor(), t_hi.floor());
        if f_lo == f_hi {
            return if f_lo.is_negative() { None } else { Some(f_lo.to_integer().try_into().expect("small")) };
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::tests::permutations;
    use crate::catalog::enumerate;
    use crate::real::SqrtLogRatio;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_examples() {
        for h in 1..=8 {
            let r = min_fas(&Tournament::transitive(h).unwrap());
            assert_eq!(r.a, 0);
            assert_eq!(r.witness_order, (0..h).collect::<Vec<_>>());
        }
        let c = min_fas(&Tournament::cyclic3());
        assert_eq!((c.a, c.max_forward), (1, 2));
        // smallest vertex wins ties at the last position
        assert_eq!(c.witness_order, vec![1, 2, 0]);
    }

    #[test]
    fn matches_brute_force_over_all_orders() {
        for h in 1..=6 {
            let perms = permutations(h);
            for f in enumerate(h).unwrap().items() {
                let t = f.tournament();
                let brute = perms.iter().map(|p| t.forward_edges(p)).max().unwrap();
                let r = min_fas(&t);
                assert_eq!(r.max_forward, brute);
                assert_eq!(t.forward_edges(&r.witness_order), r.max_forward);
                assert_eq!(r.a, min_fas(&t.reverse()).a);
                assert_eq!(r.a == 0, t.is_transitive());
            }
        }
    }

    #[test]
    fn in_a_examples() {
        assert!(in_a(&Tournament::transitive(6).unwrap(), &q(7, 1)).unwrap());
        assert!(!in_a(&Tournament::cyclic3(), &q(1, 1)).unwrap());
        for f in enumerate(5).unwrap().items() {
            assert!(in_a(&f.tournament(), &q(0, 1)).unwrap());
        }
        assert!(in_a(&Tournament::cyclic3(), &q(-1, 1)).is_err());
    }

    #[test]
    fn condition_examples() {
        // (3/2)^3 = 27/8 < 6
        assert!(!fas_dominance_condition(3, 0, &q(1, 4)).unwrap());
        // f = b: (1 - 4x²)^b ≤ 1 < h!
        assert!(!fas_dominance_condition(4, 3, &q(1, 10)).unwrap());
        assert!(!fas_dominance_condition(9, 18, &q(2, 5)).unwrap());
        assert!(fas_dominance_condition(3, 2, &q(1, 4)).is_err());
        assert!(fas_dominance_condition(3, 0, &q(1, 2)).is_err());
        assert!(fas_dominance_condition(3, 0, &q(0, 1)).is_err());
        // (1.98)^6 ≈ 60.2 > 4! = 24
        assert!(fas_dominance_condition(4, 0, &q(49, 100)).unwrap());
    }

    #[test]
    fn threshold_is_negative_below_seventy() {
        assert_eq!(fas_threshold_floor(30), None);
        assert_eq!(fas_threshold_floor(69), None);
        assert!(fas_threshold_floor(100).is_some());
    }

    #[test]
    fn certified_condition_at_sqrt_log_bias() {
        let h = 100;
        let a = fas_threshold_floor(h).unwrap();
        let v = fas_dominance_condition_certified(h, a, &SqrtLogRatio { h: h as u64 }, 1024).unwrap();
        assert_eq!(v, Verdict::True);
        // h = 30 at the largest admissible a (no order beats the reverse) fails
        let v = fas_dominance_condition_certified(30, 217, &SqrtLogRatio { h: 30 }, 1024).unwrap();
        assert_eq!(v, Verdict::False);
        let v = fas_dominance_condition_certified(30, 0, &SqrtLogRatio { h: 30 }, 1024).unwrap();
        assert_eq!(v, Verdict::True);
    }
}

//! Densities under the ordered-edge random model and bias polynomials.
//!
//! In `T(n,p)` every pair `i<j` is oriented `i→j` with probability `p`. The
//! expected density of an `h`-vertex tournament `H` is
//! `d(H,p) = (1/aut H) Σ_π p^f(π) (1-p)^(m-f(π))`, where `f(π)` counts the
//! edges that point forward in the vertex order `π` and `m = C(h,2)`. Only
//! the distribution of `f` over all `h!` orders matters, so everything is
//! built from a [`ForwardHistogram`] computed by a subset DP instead of an
//! `h!`-term sum. The bias polynomial is `B(H,x) = d(H, x + 1/2)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::canon::{canonize, CanonicalForm};
use crate::catalog::TournamentCatalog;
use crate::error::{Error, Result};
use crate::fas::{min_fas, FasResult};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};
use crate::tournament::{pair_count, Tournament};
use crate::{ExactBias, ExactDensityPoly, IntPoly, Rational, MAX_H};

/// `counts[k]` is the number of vertex orders with exactly `k` forward edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardHistogram {
    h: usize,
    counts: Vec<u64>,
}

impl ForwardHistogram {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn pair_count(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Brute-force construction from an explicit list of orders.
    pub fn from_orders<'a>(t: &Tournament, orders: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let mut counts = vec![0u64; t.pair_count() + 1];
        for order in orders {
            counts[t.forward_edges(order)] += 1;
        }
        ForwardHistogram { h: t.h(), counts }
    }
}

pub fn forward_histogram(t: &Tournament) -> ForwardHistogram {
    let h = t.h();
    let m = pair_count(h);
    let stride = m + 1;
    let full = 1usize << h;
    // ways[S * stride + k]: orders of the vertex set S with k forward edges
    let mut ways = vec![0u64; full * stride];
    ways[0] = 1;
    for s in 1..full {
        let size = s.count_ones() as usize;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            // appending v after prev makes every in-neighbour of v in prev forward
            let gained = (t.in_mask(v) as usize & prev).count_ones() as usize;
            let prev_max = pair_count(size - 1);
            let (src, dst) = (prev * stride, s * stride + gained);
            for k in 0..=prev_max {
                let w = ways[src + k];
                if w != 0 {
                    ways[dst + k] += w;
                }
            }
        }
    }
    let counts = ways[(full - 1) * stride..].to_vec();
    ForwardHistogram { h, counts }
}

/// `d(H,p)` as a polynomial in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityPolynomialP<T> {
    h: usize,
    poly: Polynomial<T>,
}

impl<T: Field> DensityPolynomialP<T> {
    pub fn from_histogram(hist: &ForwardHistogram, aut: u64) -> Self {
        let m = hist.pair_count();
        let p = Polynomial::linear(T::zero(), T::one());
        let q = Polynomial::linear(T::one(), T::zero() - T::one());
        let mut sum = Polynomial::zero();
        for (k, &n) in hist.counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let term = &p.pow(k as u32) * &q.pow((m - k) as u32);
            sum = &sum + &term.scale(&T::from_i128(n as i128));
        }
        DensityPolynomialP { h: hist.h, poly: sum.scale(&(T::one() / T::from_i128(aut as i128))) }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    pub fn eval(&self, p: &T) -> T {
        self.poly.eval(p)
    }

    /// Substitute `p = x + 1/2`.
    pub fn to_bias(&self) -> Result<BiasPolynomial<T>> {
        let shifted = self.poly.shift(&T::half());
        BiasPolynomial::checked(self.h, shifted)
    }
}

pub fn density_poly_p(t: &Tournament) -> ExactDensityPoly {
    DensityPolynomialP::from_histogram(&forward_histogram(t), canonize(t).aut)
}

/// `B(H,x)`; an even polynomial in `x` of degree at most `C(h,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasPolynomial<T> {
    h: usize,
    poly: Polynomial<T>,
}

impl<T: Scalar> BiasPolynomial<T> {
    /// Wrap `poly`, rejecting odd terms when the scalar is exact.
    pub fn checked(h: usize, poly: Polynomial<T>) -> Result<Self> {
        if T::EXACT {
            if let Some((e, _)) = poly.terms().find(|(e, _)| e % 2 == 1) {
                return Err(Error::OddCoefficientResidue(e));
            }
        }
        Ok(BiasPolynomial { h, poly })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    pub fn coeff(&self, e: usize) -> T {
        self.poly.coeff(e)
    }

    pub fn eval(&self, x: &T) -> T {
        self.poly.eval(x)
    }

    /// `B(H,0) = d(H)`.
    pub fn at_zero(&self) -> T {
        self.poly.coeff(0)
    }

    /// Whether 0 is a strict local minimum: the lowest-order nonconstant
    /// coefficient is positive. For `h ≤ 2` the polynomial is constant and
    /// this is false.
    pub fn has_local_min_at_zero(&self) -> bool {
        self.poly.lowest_nonconstant_term().is_some_and(|(_, c)| *c > T::zero())
    }

    pub fn to_f64(&self) -> BiasPolynomial<f64> {
        BiasPolynomial { h: self.h, poly: self.poly.to_f64() }
    }
}

impl<T: Field> BiasPolynomial<T> {
    /// Direct expansion of `(1/aut) Σ_k N[k] (1/2 + x)^k (1/2 - x)^(m-k)`.
    pub fn from_histogram(hist: &ForwardHistogram, aut: u64) -> Result<Self> {
        let m = hist.pair_count();
        let up = Polynomial::linear(T::half(), T::one());
        let down = Polynomial::linear(T::half(), T::zero() - T::one());
        let mut sum = Polynomial::zero();
        for (k, &n) in hist.counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let term = &up.pow(k as u32) * &down.pow((m - k) as u32);
            sum = &sum + &term.scale(&T::from_i128(n as i128));
        }
        Self::checked(hist.h, sum.scale(&(T::one() / T::from_i128(aut as i128))))
    }
}

const MAX_PAIRS: usize = pair_count(MAX_H);

/// `(1 + y)^k (1 - y)^(m-k)` for `k = 0..=m`, integer coefficients.
fn signed_binomial_basis(m: usize) -> &'static [IntPoly] {
    static BASES: [OnceLock<Vec<IntPoly>>; MAX_PAIRS + 1] = [const { OnceLock::new() }; MAX_PAIRS + 1];
    BASES[m].get_or_init(|| {
        let up = Polynomial::linear(1i128, 1);
        let down = Polynomial::linear(1i128, -1);
        (0..=m).map(|k| &up.pow(k as u32) * &down.pow((m - k) as u32)).collect()
    })
}

/// `2^m · aut(H) · B(H, y/2)` as an integer polynomial in `y`, together with
/// `aut(H)`. Coefficients are bounded by `h! · 2^m`, well inside `i128`.
pub fn bias_numerator(t: &Tournament) -> Result<(IntPoly, u64)> {
    let hist = forward_histogram(t);
    let aut = canonize(t).aut;
    let m = hist.pair_count();
    let basis = signed_binomial_basis(m);
    let mut acc = vec![0i128; m + 1];
    for (k, &n) in hist.counts.iter().enumerate() {
        if n == 0 {
            continue;
        }
        for (e, c) in basis[k].coeffs().iter().enumerate() {
            acc[e] += n as i128 * c;
        }
    }
    if let Some(e) = acc.iter().enumerate().position(|(e, c)| e % 2 == 1 && *c != 0) {
        return Err(Error::OddCoefficientResidue(e));
    }
    Ok((Polynomial::new(acc), aut))
}

pub fn bias_polynomial(t: &Tournament) -> Result<ExactBias> {
    let (num, aut) = bias_numerator(t)?;
    let m = t.pair_count();
    let den = BigInt::from(aut) << m;
    let coeffs =
        num.coeffs().iter().enumerate().map(|(e, &c)| Rational::new(BigInt::from(c) << e, den.clone())).collect();
    BiasPolynomial::checked(t.h(), Polynomial::new(coeffs))
}

/// `d(H) = h! 2^(-C(h,2)) / aut(H)`.
pub fn typical_density(t: &Tournament) -> Rational {
    let fact: BigInt = (1..=t.h() as u64).map(BigInt::from).product();
    let den = BigInt::from(canonize(t).aut) << t.pair_count();
    Rational::new(fact, den)
}

/// Membership in the bias subset: 0 is a local minimum of `B(H,x)`.
pub fn in_bias_subset(t: &Tournament) -> Result<bool> {
    let (num, _) = bias_numerator(t)?;
    Ok(num.lowest_nonconstant_term().is_some_and(|(_, c)| *c > 0))
}

/// Membership in `F(h,x)`: `B(H,x) > d(H)`, for rational `0 < x < 1/2`.
pub fn in_f(t: &Tournament, x: &Rational) -> Result<bool> {
    check_x(x)?;
    let b = bias_polynomial(t)?;
    Ok(b.eval(x) > b.at_zero())
}

pub(crate) fn check_x(x: &Rational) -> Result<()> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if !x.is_positive() || *x >= half {
        return Err(Error::XOutOfRange(x.to_string()));
    }
    Ok(())
}

/// `min_{H ∈ F(h,x)} B(H,x)/d(H) - 1` over the given patterns, i.e. the
/// margin that `T(n, x + 1/2)` delivers to the whole family in expectation.
/// `None` when no pattern is in `F(h,x)`.
pub fn expected_margin(patterns: &[Tournament], x: &Rational) -> Result<Option<Rational>> {
    check_x(x)?;
    let mut best: Option<Rational> = None;
    for t in patterns {
        let b = bias_polynomial(t)?;
        let d = b.at_zero();
        let v = b.eval(x);
        if v > d {
            let ratio = v / d - Rational::one();
            if best.as_ref().is_none_or(|r| ratio < *r) {
                best = Some(ratio);
            }
        }
    }
    Ok(best)
}

/// Everything computed about one isomorphism class.
#[derive(Clone, Debug)]
pub struct ClassificationRecord {
    pub form: CanonicalForm,
    pub aut: u64,
    pub typical_density: Rational,
    pub bias: ExactBias,
    pub fas: FasResult,
    pub in_bh: bool,
}

impl ClassificationRecord {
    pub fn h(&self) -> usize {
        self.form.h()
    }
}

pub fn classify(t: &Tournament) -> Result<ClassificationRecord> {
    let c = canonize(t);
    let bias = bias_polynomial(t)?;
    let typical = typical_density(t);
    debug_assert_eq!(typical, bias.at_zero());
    let in_bh = bias.has_local_min_at_zero();
    Ok(ClassificationRecord {
        form: c.form,
        aut: c.aut,
        typical_density: typical,
        bias,
        fas: min_fas(&c.form.tournament()),
        in_bh,
    })
}

pub fn classify_catalog(catalog: &TournamentCatalog) -> Result<Vec<ClassificationRecord>> {
    catalog.items().par_iter().map(|f| classify(&f.tournament())).collect()
}

/// `|B_h|` without materialising rational records.
pub fn count_bias_subset(catalog: &TournamentCatalog) -> Result<usize> {
    catalog
        .items()
        .par_iter()
        .map(|f| in_bias_subset(&f.tournament()).map(usize::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// `Σ_H B(H,x)` over the catalog, as an exact polynomial.
pub fn bias_sum(catalog: &TournamentCatalog) -> Result<Polynomial<Rational>> {
    // common denominator 2^m · h! keeps the reduction in integers
    let m = pair_count(catalog.h());
    let fact: i128 = (1..=catalog.h() as i128).product();
    let total = catalog
        .items()
        .par_iter()
        .map(|f| {
            let (num, aut) = bias_numerator(&f.tournament())?;
            Ok::<_, Error>(num.scale(&(fact / aut as i128)))
        })
        .try_reduce(IntPoly::zero, |a, b| Ok(&a + &b))?;
    let den = BigInt::from(fact) << m;
    Ok(Polynomial::new(
        total.coeffs().iter().enumerate().map(|(e, &c)| Rational::new(BigInt::from(c) << e, den.clone())).collect(),
    ))
}

//! Sub-tournament densities of a [`BigTournament`], exact or sampled.
//!
//! Both modes canonicalize every inspected `h`-subset once and tally the
//! canonical forms, so a single pass serves any number of patterns.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index;
use rayon::prelude::*;

use crate::bias::typical_density;
use crate::big::{BigTournament, Seed};
use crate::canon::{canonical_code_table, canonical_form, CanonicalForm, TABLE_MAX_H};
use crate::error::{Error, Result};
use crate::rng;
use crate::tournament::Tournament;
use crate::{Rational, MAX_H};

/// Largest `C(n,h)` the exact census will walk.
pub const EXACT_LIMIT: u128 = 100_000_000;

/// Samples drawn per independent RNG stream.
const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    MonteCarlo { samples: u64, seed: Seed },
}

/// Tally of canonical forms over the inspected `h`-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub h: usize,
    pub mode: Mode,
    /// Number of subsets inspected: `C(n,h)` or the sample count.
    pub total: u64,
    pub counts: BTreeMap<CanonicalForm, u64>,
}

impl Census {
    pub fn count(&self, form: &CanonicalForm) -> u64 {
        self.counts.get(form).copied().unwrap_or(0)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_pattern_size(g: &BigTournament, h: usize) -> Result<()> {
    if h == 0 || h > MAX_H {
        return Err(Error::Unsupported(h));
    }
    if h > g.n() {
        return Err(Error::SizeMismatch { pattern: h, host: g.n() });
    }
    Ok(())
}

/// Canonical form of the sub-tournament on the sorted vertex list `vs`.
fn subset_form(g: &BigTournament, vs: &[usize]) -> CanonicalForm {
    let h = vs.len();
    if h <= TABLE_MAX_H {
        let mut code = 0u64;
        for a in 0..h {
            for b in a + 1..h {
                code = (code << 1) | g.edge(vs[a], vs[b]) as u64;
            }
        }
        let canon = canonical_code_table(h)[code as usize] as u64;
        CanonicalForm::from_canonical_code(h, canon)
    } else {
        canonical_form(&g.induced_sorted(vs))
    }
}

/// Canonical form of every `h`-subset of `g`.
pub fn census_exact(g: &BigTournament, h: usize) -> Result<Census> {
    check_pattern_size(g, h)?;
    let n = g.n();
    let subsets = binomial(n, h);
    if subsets > EXACT_LIMIT {
        return Err(Error::TooLarge { n, h, subsets, limit: EXACT_LIMIT });
    }
    let counts = (0..=n - h)
        .into_par_iter()
        .map(|first| {
            let mut local: HashMap<CanonicalForm, u64> = HashMap::new();
            let mut vs: Vec<usize> = (first..first + h).collect();
            loop {
                *local.entry(subset_form(g, &vs)).or_default() += 1;
                // next combination of vs[1..] within first+1..n
                let mut i = h;
                loop {
                    if i == 1 {
                        return local;
                    }
                    i -= 1;
                    if vs[i] < n - (h - i) {
                        break;
                    }
                }
                vs[i] += 1;
                for t in i + 1..h {
                    vs[t] = vs[t - 1] + 1;
                }
            }
        })
        .reduce(HashMap::new, merge_counts);
    Ok(Census { n, h, mode: Mode::Exact, total: subsets as u64, counts: counts.into_iter().collect() })
}

fn merge_counts(mut a: HashMap<CanonicalForm, u64>, b: HashMap<CanonicalForm, u64>) -> HashMap<CanonicalForm, u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Canonical forms of `samples` uniformly random `h`-subsets, drawn
/// independently (with replacement across samples). Sample `s` comes from
/// stream `s / 4096` of `seed`, so the tally does not depend on threading.
pub fn census_montecarlo(g: &BigTournament, h: usize, samples: u64, seed: Seed) -> Result<Census> {
    check_pattern_size(g, h)?;
    if samples == 0 {
        return Err(Error::BadParameters("samples must be positive".into()));
    }
    let n = g.n();
    let chunks = samples.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(seed.0, c);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut local: HashMap<CanonicalForm, u64> = HashMap::new();
            let mut vs = Vec::with_capacity(h);
            for _ in 0..len {
                vs.clear();
                vs.extend(index::sample(&mut rng, n, h).iter());
                vs.sort_unstable();
                *local.entry(subset_form(g, &vs)).or_default() += 1;
            }
            local
        })
        .reduce(HashMap::new, merge_counts);
    Ok(Census { n, h, mode: Mode::MonteCarlo { samples, seed }, total: samples, counts: counts.into_iter().collect() })
}

/// Measured density of one pattern.
#[derive(Clone, Debug, PartialEq)]
pub enum Estimate {
    /// `count / C(n,h)`, kept unreduced.
    Exact {
        count: u64,
        total: u64,
    },
    Sampled {
        hits: u64,
        samples: u64,
    },
}

impl Estimate {
    pub fn value(&self) -> f64 {
        match *self {
            Estimate::Exact { count, total } => count as f64 / total as f64,
            Estimate::Sampled { hits, samples } => hits as f64 / samples as f64,
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match *self {
            Estimate::Exact { count, total } => Some(Rational::new(BigInt::from(count), BigInt::from(total))),
            Estimate::Sampled { .. } => None,
        }
    }

    /// `√(q(1-q)/samples)`; zero for exact counts.
    pub fn stderr(&self) -> f64 {
        match *self {
            Estimate::Exact { .. } => 0.0,
            Estimate::Sampled { samples, .. } => {
                let q = self.value();
                (q * (1.0 - q) / samples as f64).sqrt()
            }
        }
    }
}

/// `estimate - (1+β) d(H)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Margin {
    Exact(Rational),
    Approx(f64),
}

impl Margin {
    pub fn value(&self) -> f64 {
        match self {
            Margin::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Margin::Approx(v) => *v,
        }
    }

    /// `d_H(G) ≥ (1+β) d(H)`.
    pub fn satisfied(&self) -> bool {
        match self {
            Margin::Exact(q) => *q >= Rational::zero(),
            Margin::Approx(v) => *v >= 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub pattern: CanonicalForm,
    pub n: usize,
    pub mode: Mode,
    pub estimate: Estimate,
    /// `d(H)`
    pub typical: Rational,
    pub beta: Rational,
    /// `estimate / d(H)`, approximate.
    pub ratio: f64,
    pub margin: Margin,
}

impl DensityReport {
    pub fn from_census(census: &Census, pattern: &Tournament, beta: &Rational) -> Result<Self> {
        if pattern.h() != census.h {
            return Err(Error::BadParameters(format!(
                "pattern has {} vertices, census was taken over {}-subsets",
                pattern.h(),
                census.h
            )));
        }
        let form = canonical_form(pattern);
        let count = census.count(&form);
        let typical = typical_density(pattern);
        let estimate = match census.mode {
            Mode::Exact => Estimate::Exact { count, total: census.total },
            Mode::MonteCarlo { .. } => Estimate::Sampled { hits: count, samples: census.total },
        };
        let threshold = (Rational::one() + beta) * &typical;
        let margin = match estimate.exact() {
            Some(q) => Margin::Exact(q - threshold),
            None => Margin::Approx(estimate.value() - threshold.to_f64().unwrap_or(f64::NAN)),
        };
        let ratio = estimate.value() / typical.to_f64().unwrap_or(f64::NAN);
        Ok(DensityReport {
            pattern: form,
            n: census.n,
            mode: census.mode,
            estimate,
            typical,
            beta: beta.clone(),
            ratio,
            margin,
        })
    }
}

pub fn take_census(g: &BigTournament, h: usize, mode: Mode) -> Result<Census> {
    match mode {
        Mode::Exact => census_exact(g, h),
        Mode::MonteCarlo { samples, seed } => census_montecarlo(g, h, samples, seed),
    }
}

pub fn density_exact(g: &BigTournament, pattern: &Tournament) -> Result<DensityReport> {
    let census = census_exact(g, pattern.h())?;
    DensityReport::from_census(&census, pattern, &Rational::zero())
}

pub fn density_montecarlo(g: &BigTournament, pattern: &Tournament, samples: u64, seed: Seed) -> Result<DensityReport> {
    let census = census_montecarlo(g, pattern.h(), samples, seed)?;
    DensityReport::from_census(&census, pattern, &Rational::zero())
}

/// One report per pattern against a common `β`, from a single census.
pub fn dominance_report(
    patterns: &[Tournament],
    g: &BigTournament,
    beta: &Rational,
    mode: Mode,
) -> Result<Vec<DensityReport>> {
    let Some(first) = patterns.first() else {
        return Ok(Vec::new());
    };
    let h = first.h();
    if patterns.iter().any(|p| p.h() != h) {
        return Err(Error::BadParameters("all patterns must have the same number of vertices".into()));
    }
    let census = take_census(g, h, mode)?;
    patterns.iter().map(|p| DensityReport::from_census(&census, p, beta)).collect()
}

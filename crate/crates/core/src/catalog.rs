//! Isomorph-free catalogs of all tournaments on `h` vertices, with a
//! plain-text on-disk cache.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

use crate::canon::{canonical_form, canonize, CanonicalForm};
use crate::error::{Error, Result};
use crate::tournament::{pair_count, Tournament};
use crate::MAX_H;

/// All tournaments on `h` vertices up to isomorphism, each in canonical
/// form, sorted by canonical bit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentCatalog {
    h: usize,
    items: Vec<CanonicalForm>,
}

impl TournamentCatalog {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[CanonicalForm] {
        &self.items
    }

    pub fn tournaments(&self) -> impl Iterator<Item = Tournament> + '_ {
        self.items.iter().map(CanonicalForm::tournament)
    }

    /// `Σ h!/aut(H)`, which must equal `2^C(h,2)` for a complete catalog.
    pub fn labeled_mass(&self) -> u128 {
        let fact: u128 = (1..=self.h as u128).product();
        self.items.par_iter().map(|f| fact / canonize(&f.tournament()).aut as u128).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("h={}\n", self.h);
        for f in &self.items {
            s.push_str(&f.to_bit_string());
            s.push('\n');
        }
        s
    }
}

pub fn enumerate(h: usize) -> Result<TournamentCatalog> {
    if h == 0 || h > MAX_H {
        return Err(Error::Unsupported(h));
    }
    let mut cat = TournamentCatalog { h: 1, items: vec![canonical_form(&Tournament::transitive(1)?)] };
    while cat.h < h {
        cat = extend(&cat);
    }
    Ok(cat)
}

/// Add one vertex to every parent in every possible way, canonicalize and
/// deduplicate.
fn extend(parents: &TournamentCatalog) -> TournamentCatalog {
    let h = parents.h + 1;
    let new = h - 1;
    let codes: HashSet<u64> = parents
        .items
        .par_iter()
        .fold(HashSet::new, |mut seen, parent| {
            let p = parent.tournament();
            for beats in 0u32..1 << (h - 1) {
                let t = Tournament::from_fn(h, |i, j| if j == new { beats >> i & 1 == 0 } else { p.edge(i, j) })
                    .expect("h within range");
                seen.insert(canonical_form(&t).code());
            }
            seen
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return b.into_iter().chain(a).collect();
            }
            a.extend(b);
            a
        });
    let mut codes: Vec<u64> = codes.into_iter().collect();
    codes.sort_unstable();
    let items = codes.into_iter().map(|c| canonical_form(&Tournament::from_code(h, c).expect("valid code"))).collect();
    TournamentCatalog { h, items }
}

/// How [`load_or_enumerate`] obtained its catalog.
#[derive(Debug)]
pub enum CacheOutcome {
    Hit,
    Generated,
    /// The cache file was unusable and has been rewritten.
    Regenerated(Error),
}

pub fn cache_path(cache_dir: &Path, h: usize) -> PathBuf {
    cache_dir.join(format!("tournaments_h{h}.txt"))
}

/// Read the cached catalog for `h` if it is present and well formed,
/// otherwise build it (reusing cached smaller catalogs) and write it.
pub fn load_or_enumerate(h: usize, cache_dir: &Path) -> Result<(TournamentCatalog, CacheOutcome)> {
    if h == 0 || h > MAX_H {
        return Err(Error::Unsupported(h));
    }
    let path = cache_path(cache_dir, h);
    let mut corrupt = None;
    if path.exists() {
        match read_cache(&path, h) {
            Ok(cat) => return Ok((cat, CacheOutcome::Hit)),
            Err(e) => {
                warn!("{e}; regenerating");
                corrupt = Some(e);
            }
        }
    }
    let cat = if h == 1 {
        enumerate(1)?
    } else {
        let (parent, _) = load_or_enumerate(h - 1, cache_dir)?;
        info!("extending {} classes on {} vertices", parent.len(), h - 1);
        extend(&parent)
    };
    fs::create_dir_all(cache_dir)?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, cat.to_text())?;
    fs::rename(&tmp, &path)?;
    let outcome = match corrupt {
        Some(e) => CacheOutcome::Regenerated(e),
        None => CacheOutcome::Generated,
    };
    Ok((cat, outcome))
}

fn read_cache(path: &Path, h: usize) -> Result<TournamentCatalog> {
    let corrupt = |reason: String| Error::CorruptCache { path: path.to_owned(), reason };
    let text = fs::read_to_string(path)?;
    let (declared, list) = parse_tournament_list(&text, Some(h)).map_err(|e| corrupt(e.to_string()))?;
    if declared != Some(h) {
        return Err(corrupt("missing or mismatched header".into()));
    }
    let mut items = Vec::with_capacity(list.len());
    for t in list {
        let form = canonical_form(&t);
        if form.code() != t.code() {
            return Err(corrupt(format!("{t} is not in canonical form")));
        }
        if items.last().is_some_and(|prev: &CanonicalForm| prev.code() >= form.code()) {
            return Err(corrupt("entries not strictly sorted".into()));
        }
        items.push(form);
    }
    let cat = TournamentCatalog { h, items };
    let expected = 1u128 << pair_count(h);
    let mass = cat.labeled_mass();
    if mass != expected {
        return Err(corrupt(format!("incomplete catalog: labeled mass {mass} != {expected}")));
    }
    Ok(cat)
}

/// Parse the line-oriented tournament text format: an optional `h=<k>`
/// header followed by one bit string per line. Blank lines and lines
/// starting with `#` are skipped. Returns the declared `h` (if any) and the
/// tournaments.
pub fn parse_tournament_list(text: &str, h_hint: Option<usize>) -> Result<(Option<usize>, Vec<Tournament>)> {
    let mut declared = None;
    let mut items = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("h=") {
            if declared.is_some() || !items.is_empty() {
                return Err(Error::Format("header must be the first line".into()));
            }
            let v: usize = v.trim().parse().map_err(|_| Error::Format(format!("bad header {line:?}")))?;
            if h_hint.is_some_and(|hint| hint != v) {
                return Err(Error::Format(format!("header says h={v}, expected {}", h_hint.unwrap())));
            }
            declared = Some(v);
            continue;
        }
        let h = declared.or(h_hint).ok_or_else(|| Error::Format("vertex count unknown: add an h=<k> header".into()))?;
        items.push(Tournament::parse(line, h)?);
    }
    Ok((declared, items))
}

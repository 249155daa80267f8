//! Large tournaments and the seeded constructions built on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::tournament::{check_subset, pair_count, pair_index, Tournament};
use crate::Rational;

/// Seed of every random decision in a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

/// How a [`BigTournament`] was made.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(kind: &str, seed: Option<Seed>) -> Self {
        Provenance { kind: kind.to_owned(), params: BTreeMap::new(), seed: seed.map(|s| s.0) }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }
}

/// Tournament on `n` vertices stored as out-neighbour bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigTournament {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    provenance: Provenance,
}

/// Line width of the bit body in the file format.
const WRAP: usize = 512;

impl BigTournament {
    /// `edge(i, j)` for `i < j` decides `i→j` (`true`) or `j→i`. Evaluated in
    /// parallel, so it must be a pure function of the pair.
    pub fn from_fn(n: usize, provenance: Provenance, edge: impl Fn(usize, usize) -> bool + Sync) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParameters("n must be positive".into()));
        }
        let words = n.div_ceil(64);
        let upper: Vec<Vec<bool>> = (0..n).into_par_iter().map(|i| (i + 1..n).map(|j| edge(i, j)).collect()).collect();
        let mut rows = vec![0u64; n * words];
        for (i, bits) in upper.iter().enumerate() {
            for (off, &b) in bits.iter().enumerate() {
                let j = i + 1 + off;
                let (from, to) = if b { (i, j) } else { (j, i) };
                rows[from * words + to / 64] |= 1 << (to % 64);
            }
        }
        Ok(BigTournament { n, words, rows, provenance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    #[inline]
    pub fn edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.rows[v * self.words..(v + 1) * self.words].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of pairs `i<j` oriented `i→j`.
    pub fn forward_pairs(&self) -> usize {
        (0..self.n).map(|i| (i + 1..self.n).filter(|&j| self.edge(i, j)).count()).sum()
    }

    /// Sub-tournament on `subset`, renumbered by increasing label.
    pub fn induced(&self, subset: &[usize]) -> Result<Tournament> {
        let vs = check_subset(subset, self.n)?;
        Ok(self.induced_sorted(&vs))
    }

    /// [`BigTournament::induced`] without validation; `vs` must be sorted,
    /// distinct, in range and at most `MAX_H` long.
    #[inline]
    pub fn induced_sorted(&self, vs: &[usize]) -> Tournament {
        Tournament::from_fn(vs.len(), |a, b| self.edge(vs[a], vs[b])).expect("small subset")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n={}", self.n).unwrap();
        writeln!(s, "{}", serde_json::to_string(&self.provenance).expect("serializable")).unwrap();
        let mut line = String::with_capacity(WRAP);
        for i in 0..self.n {
            for j in i + 1..self.n {
                line.push(if self.edge(i, j) { '1' } else { '0' });
                if line.len() == WRAP {
                    s.push_str(&line);
                    s.push('\n');
                    line.clear();
                }
            }
        }
        if !line.is_empty() {
            s.push_str(&line);
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Format("empty file".into()))?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Format(format!("bad header {header:?}")))?;
        let prov_line = lines.next().ok_or_else(|| Error::Format("missing provenance line".into()))?;
        let provenance: Provenance =
            serde_json::from_str(prov_line).map_err(|e| Error::Format(format!("provenance: {e}")))?;
        let mut bits = Vec::with_capacity(pair_count(n));
        for line in lines {
            for c in line.trim().chars() {
                bits.push(match c {
                    '0' => false,
                    '1' => true,
                    other => return Err(Error::BadCharacter(other)),
                });
            }
        }
        if bits.len() != pair_count(n) {
            return Err(Error::WrongLength { h: n, expected: pair_count(n), got: bits.len() });
        }
        Self::from_fn(n, provenance, |i, j| bits[pair_index(n, i, j)])
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn probability_parts(p: &Rational) -> Result<(u64, u64)> {
    let bad = || Error::BadProbability(p.to_string());
    if p.is_negative() || *p > Rational::from_integer(BigInt::from(1)) {
        return Err(bad());
    }
    let num = p.numer().to_u64().ok_or_else(bad)?;
    let den = p.denom().to_u64().ok_or_else(bad)?;
    Ok((num, den))
}

/// `T(n,p)`: each pair `i<j` is oriented `i→j` with probability `p`.
pub fn build_tnp(n: usize, p: &Rational, seed: Seed) -> Result<BigTournament> {
    if n < 2 {
        return Err(Error::BadParameters(format!("n must be at least 2, got {n}")));
    }
    let (num, den) = probability_parts(p)?;
    let prov = Provenance::new("tnp", Some(seed)).with("n", n).with("p", p);
    BigTournament::from_fn(n, prov, |i, j| rng::bernoulli(seed.0, pair_index(n, i, j) as u64, num, den))
}

/// Planted-pattern construction: `k = |H*|` parts of size `n/h` with every
/// edge between parts `i<j` following `H*`, one leftover part, and all
/// other pairs oriented by fair coins.
pub fn build_transversal(n: usize, h: usize, star: &Tournament, seed: Seed) -> Result<BigTournament> {
    let k = star.h();
    if k >= h {
        return Err(Error::StarTooBig { k, h });
    }
    if h == 0 || n == 0 || !n.is_multiple_of(h) {
        return Err(Error::NotMultiple { n, modulus: h });
    }
    let size = n / h;
    let part = |v: usize| (v / size).min(k);
    let prov = Provenance::new("transversal", Some(seed))
        .with("n", n)
        .with("h", h)
        .with("hstar", star.to_bit_string())
        .with("k", k);
    BigTournament::from_fn(n, prov, |i, j| {
        let (a, b) = (part(i), part(j));
        if a < k && b < k && a != b {
            // i < j implies a < b
            star.edge(a, b)
        } else {
            rng::coin(seed.0, pair_index(n, i, j) as u64)
        }
    })
}

/// Vertex range of part `index` in a transversal construction.
pub fn transversal_part(n: usize, h: usize, k: usize, index: usize) -> std::ops::Range<usize> {
    let size = n / h;
    if index < k {
        index * size..(index + 1) * size
    } else {
        k * size..n
    }
}

/// Result of [`build_blowup`].
#[derive(Clone, Debug)]
pub struct Blowup {
    pub graph: BigTournament,
    /// `r = h ⌈√(hk)⌉`
    pub r: usize,
    pub part_size: usize,
    /// `copies[i][j]` is the part playing vertex `j` of family member `i`.
    pub copies: Vec<Vec<usize>>,
    /// Whether `2r² < 2^h`, the size condition under which `h!/r^h`
    /// exceeds every typical density.
    pub sufficiency_holds: bool,
}

impl Blowup {
    pub fn part(&self, index: usize) -> std::ops::Range<usize> {
        index * self.part_size..(index + 1) * self.part_size
    }
}

const PACKING_ATTEMPTS: usize = 200;

fn ceil_sqrt(v: usize) -> usize {
    let mut s = (v as f64).sqrt() as usize;
    while s * s < v {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= v {
        s -= 1;
    }
    s
}

/// `k` pairwise edge-disjoint `h`-cliques in `K_r`, by randomized greedy
/// packing with restarts.
pub fn pack_cliques(r: usize, h: usize, k: usize, seed: Seed) -> Result<Vec<Vec<usize>>> {
    let mut rng = rng::stream(seed.0, rng::PACKING_STREAM);
    let mut order: Vec<usize> = (0..r).collect();
    for _ in 0..PACKING_ATTEMPTS {
        let mut used = vec![false; r * r];
        let mut copies = Vec::with_capacity(k);
        'copies: for _ in 0..k {
            for _ in 0..4 * r {
                order.shuffle(&mut rng);
                let mut clique: Vec<usize> = Vec::with_capacity(h);
                for &v in &order {
                    if clique.iter().all(|&u| !used[u * r + v]) {
                        clique.push(v);
                        if clique.len() == h {
                            break;
                        }
                    }
                }
                if clique.len() == h {
                    for (a, &u) in clique.iter().enumerate() {
                        for &v in &clique[a + 1..] {
                            used[u * r + v] = true;
                            used[v * r + u] = true;
                        }
                    }
                    copies.push(clique);
                    continue 'copies;
                }
            }
            break;
        }
        if copies.len() == k {
            return Ok(copies);
        }
    }
    Err(Error::PackingFailed { k, h, r, attempts: PACKING_ATTEMPTS })
}

/// Blow-up over edge-disjoint cliques: every family member gets its own
/// `K_h` copy among `r` parts and dictates the orientation between the parts
/// of that copy; all other pairs point from the lower to the higher label.
pub fn build_blowup(family: &[Tournament], n: usize, seed: Seed) -> Result<Blowup> {
    let k = family.len();
    if k == 0 {
        return Err(Error::BadParameters("empty family".into()));
    }
    let h = family[0].h();
    if family.iter().any(|t| t.h() != h) {
        return Err(Error::BadParameters("family members must share h".into()));
    }
    let r = h * ceil_sqrt(h * k);
    if n == 0 || !n.is_multiple_of(r) {
        return Err(Error::NotMultiple { n, modulus: r });
    }
    let copies = pack_cliques(r, h, k, seed)?;
    // owner[a * r + b] = (member, j, j') when parts a, b are vertices j, j' of that copy
    let mut owner: Vec<Option<(usize, usize, usize)>> = vec![None; r * r];
    for (i, copy) in copies.iter().enumerate() {
        for (j, &a) in copy.iter().enumerate() {
            for (jp, &b) in copy.iter().enumerate() {
                if j != jp {
                    owner[a * r + b] = Some((i, j, jp));
                }
            }
        }
    }
    let part_size = n / r;
    let prov = Provenance::new("blowup", Some(seed))
        .with("n", n)
        .with("h", h)
        .with("r", r)
        .with("family", family.iter().map(|t| t.to_bit_string()).collect::<Vec<_>>().join(","));
    let graph = BigTournament::from_fn(n, prov, |u, v| {
        let (a, b) = (u / part_size, v / part_size);
        match owner[a * r + b] {
            Some((i, j, jp)) => family[i].edge(j, jp),
            None => true,
        }
    })?;
    let sufficiency_holds = (2 * r * r) < (1usize << h.min(63));
    Ok(Blowup { graph, r, part_size, copies, sufficiency_holds })
}

//! Canonical forms, automorphism counts and sub-tournament search.
//!
//! The canonical form of a tournament is the lexicographically smallest
//! orientation bit string over all relabelings. Because bits are emitted row
//! by row, fixing the vertex in position `i` fixes row `i` as soon as the
//! remaining vertices are grouped into cells of positions that agree on
//! every earlier row: inside a cell, in-neighbours of the new vertex must
//! come before out-neighbours. The search keeps every partial labeling whose
//! emitted prefix is minimal, level by level, so the survivors at the end
//! are exactly the relabelings that reach the minimum, and their number is
//! the size of the automorphism group.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::tournament::{pair_count, Tournament};
use crate::MAX_H;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    h: u8,
    code: u64,
}

impl CanonicalForm {
    /// Trusted constructor for codes known to be canonical.
    pub(crate) fn from_canonical_code(h: usize, code: u64) -> Self {
        CanonicalForm { h: h as u8, code }
    }

    pub fn h(&self) -> usize {
        self.h as usize
    }

    /// Packed bit string, first pair most significant.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn tournament(&self) -> Tournament {
        Tournament::from_code(self.h(), self.code).expect("canonical code is valid")
    }

    pub fn to_bit_string(&self) -> String {
        let m = pair_count(self.h());
        (0..m).map(|k| if (self.code >> (m - 1 - k)) & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn parse(text: &str, h: usize) -> Result<Self> {
        Ok(canonical_form(&Tournament::parse(text, h)?))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Result of one canonical labeling search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonization {
    pub form: CanonicalForm,
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    pub aut: u64,
}

#[derive(Clone, Copy)]
struct Branch {
    order: [u8; MAX_H],
    cells: [u16; MAX_H],
    ncells: u8,
}

pub fn canonize(t: &Tournament) -> Canonization {
    let h = t.h();
    let mut frontier = vec![Branch { order: [0; MAX_H], cells: [0; MAX_H], ncells: 1 }];
    frontier[0].cells[0] = t.all_mask();
    let mut next: Vec<Branch> = Vec::new();
    let mut code = 0u64;

    for level in 0..h {
        let width = h - level - 1;
        let mut best_row = u64::MAX;
        next.clear();
        for br in &frontier {
            let first = br.cells[0];
            let mut cand = first;
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                let ins = t.in_mask(v);
                let outs = t.out_mask(v);

                let mut child = Branch { order: br.order, cells: [0; MAX_H], ncells: 0 };
                child.order[level] = v as u8;
                let mut row = 0u64;
                let push = |cell: u16, child: &mut Branch, row: &mut u64| {
                    let a = cell & ins;
                    let b = cell & outs;
                    let nb = b.count_ones();
                    *row = (*row << cell.count_ones()) | ((1u64 << nb) - 1);
                    if a != 0 {
                        child.cells[child.ncells as usize] = a;
                        child.ncells += 1;
                    }
                    if b != 0 {
                        child.cells[child.ncells as usize] = b;
                        child.ncells += 1;
                    }
                };
                let rest_of_first = first & !(1 << v);
                if rest_of_first != 0 {
                    push(rest_of_first, &mut child, &mut row);
                }
                for &cell in &br.cells[1..br.ncells as usize] {
                    push(cell, &mut child, &mut row);
                }

                if row < best_row {
                    best_row = row;
                    next.clear();
                }
                if row == best_row {
                    next.push(child);
                }
            }
        }
        if width > 0 {
            code = (code << width) | best_row;
        }
        std::mem::swap(&mut frontier, &mut next);
    }

    let order = frontier[0].order[..h].iter().map(|&v| v as usize).collect();
    Canonization { form: CanonicalForm { h: h as u8, code }, order, aut: frontier.len() as u64 }
}

pub fn canonical_form(t: &Tournament) -> CanonicalForm {
    canonize(t).form
}

/// Size of the automorphism group.
pub fn aut_size(t: &Tournament) -> u64 {
    canonize(t).aut
}

pub fn is_isomorphic(a: &Tournament, b: &Tournament) -> bool {
    a.h() == b.h() && canonical_form(a) == canonical_form(b)
}

/// Largest `h` served by [`canonical_code_table`].
pub const TABLE_MAX_H: usize = 6;

/// Canonical code of every labeled tournament on `h ≤ TABLE_MAX_H`
/// vertices, indexed by its own code. Built once per `h`.
pub fn canonical_code_table(h: usize) -> &'static [u16] {
    static TABLES: [OnceLock<Vec<u16>>; TABLE_MAX_H + 1] = [const { OnceLock::new() }; TABLE_MAX_H + 1];
    assert!((1..=TABLE_MAX_H).contains(&h), "no lookup table for h={h}");
    TABLES[h].get_or_init(|| {
        (0..1u64 << pair_count(h))
            .map(|c| canonical_form(&Tournament::from_code(h, c).expect("valid code")).code() as u16)
            .collect()
    })
}

/// True iff some vertex subset of `host` induces a copy of `pattern`.
pub fn contains_subtournament(host: &Tournament, pattern: &Tournament) -> Result<bool> {
    if pattern.h() > host.h() {
        return Err(Error::SizeMismatch { pattern: pattern.h(), host: host.h() });
    }
    let mut image = [0usize; MAX_H];
    Ok(extend_embedding(host, pattern, &mut image, 0, 0))
}

fn extend_embedding(
    host: &Tournament,
    pattern: &Tournament,
    image: &mut [usize; MAX_H],
    placed: usize,
    used: u16,
) -> bool {
    if placed == pattern.h() {
        return true;
    }
    let needed_out = pattern.out_degree(placed);
    let needed_in = pattern.h() - 1 - needed_out;
    for v in 0..host.h() {
        if used >> v & 1 == 1 {
            continue;
        }
        if host.out_degree(v) < needed_out || host.h() - 1 - host.out_degree(v) < needed_in {
            continue;
        }
        let consistent = (0..placed).all(|p| pattern.edge(p, placed) == host.edge(image[p], v));
        if consistent {
            image[placed] = v;
            if extend_embedding(host, pattern, image, placed + 1, used | 1 << v) {
                return true;
            }
        }
    }
    false
}

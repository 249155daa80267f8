//! Small tournaments (up to [`MAX_H`] vertices) stored as out-neighbour masks.
//!
//! The text encoding lists one bit per unordered pair in the fixed order
//! `(1,2),(1,3),…,(1,h),(2,3),…`; a `1` at `(i,j)` means `i→j`, a `0` means
//! `j→i`. Internally vertices are 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_H;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tournament {
    h: u8,
    out: [u16; MAX_H],
}

/// `C(h, 2)`
pub const fn pair_count(h: usize) -> usize {
    h * h.saturating_sub(1) / 2
}

/// Position of pair `(i, j)`, `i < j`, in the fixed pair order.
pub const fn pair_index(h: usize, i: usize, j: usize) -> usize {
    i * (2 * h - i - 1) / 2 + (j - i - 1)
}

impl Tournament {
    /// Tournament with `edge(i, j)` deciding the orientation of each pair
    /// `i < j` (`true` means `i→j`).
    pub fn from_fn(h: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if h == 0 || h > MAX_H {
            return Err(Error::Unsupported(h));
        }
        let mut out = [0u16; MAX_H];
        for i in 0..h {
            for j in i + 1..h {
                if edge(i, j) {
                    out[i] |= 1 << j;
                } else {
                    out[j] |= 1 << i;
                }
            }
        }
        Ok(Tournament { h: h as u8, out })
    }

    pub fn parse(text: &str, h: usize) -> Result<Self> {
        if h == 0 || h > MAX_H {
            return Err(Error::Unsupported(h));
        }
        let text = text.trim();
        let m = pair_count(h);
        let n_chars = text.chars().count();
        if n_chars != m {
            return Err(Error::WrongLength { h, expected: m, got: n_chars });
        }
        let bits: Vec<bool> = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BadCharacter(other)),
            })
            .collect::<Result<_>>()?;
        Self::from_fn(h, |i, j| bits[pair_index(h, i, j)])
    }

    /// Decode from the packed form produced by [`Tournament::code`].
    pub fn from_code(h: usize, code: u64) -> Result<Self> {
        let m = pair_count(h);
        Self::from_fn(h, |i, j| (code >> (m - 1 - pair_index(h, i, j))) & 1 == 1)
    }

    pub fn transitive(h: usize) -> Result<Self> {
        Self::from_fn(h, |_, _| true)
    }

    /// The directed triangle 1→2→3→1.
    pub fn cyclic3() -> Self {
        Self::parse("101", 3).expect("valid literal")
    }

    pub fn h(&self) -> usize {
        self.h as usize
    }

    pub fn pair_count(&self) -> usize {
        pair_count(self.h())
    }

    /// True iff `u→v`.
    #[inline]
    pub fn edge(&self, u: usize, v: usize) -> bool {
        (self.out[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn out_mask(&self, v: usize) -> u16 {
        self.out[v]
    }

    #[inline]
    pub fn in_mask(&self, v: usize) -> u16 {
        self.all_mask() & !self.out[v] & !(1 << v)
    }

    #[inline]
    pub fn all_mask(&self) -> u16 {
        ((1u32 << self.h) - 1) as u16
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.h()).map(|v| self.out_degree(v)).collect()
    }

    /// Sorted out-degree sequence.
    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s = self.out_degrees();
        s.sort_unstable();
        s
    }

    /// Orientation bits packed into an integer, first pair most significant,
    /// so that integer order equals lexicographic order of the bit string.
    pub fn code(&self) -> u64 {
        let h = self.h();
        let mut code = 0u64;
        for i in 0..h {
            for j in i + 1..h {
                code = (code << 1) | self.edge(i, j) as u64;
            }
        }
        code
    }

    pub fn to_bit_string(&self) -> String {
        let h = self.h();
        let mut s = String::with_capacity(self.pair_count());
        for i in 0..h {
            for j in i + 1..h {
                s.push(if self.edge(i, j) { '1' } else { '0' });
            }
        }
        s
    }

    /// Every edge flipped.
    pub fn reverse(&self) -> Self {
        Self::from_fn(self.h(), |i, j| !self.edge(i, j)).expect("same h")
    }

    /// Relabel so that new vertex `p` is old vertex `order[p]`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.h(), "relabeling must be a permutation of all vertices");
        Self::from_fn(self.h(), |p, q| self.edge(order[p], order[q])).expect("same h")
    }

    /// Sub-tournament on `subset` (0-based), renumbered by increasing label.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        let vs = check_subset(subset, self.h())?;
        Self::from_fn(vs.len(), |a, b| self.edge(vs[a], vs[b]))
    }

    pub fn is_transitive(&self) -> bool {
        let mut degrees = self.out_degrees();
        degrees.sort_unstable();
        degrees.iter().enumerate().all(|(i, &d)| d == i)
    }

    /// Number of edges `u→v` with `u` before `v` in `order`.
    pub fn forward_edges(&self, order: &[usize]) -> usize {
        let mut count = 0;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                count += self.edge(order[a], order[b]) as usize;
            }
        }
        count
    }
}

/// Validate a 0-based vertex subset and return it sorted.
pub(crate) fn check_subset(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::BadSubset("empty subset".into()));
    }
    if subset.len() > MAX_H {
        return Err(Error::BadSubset(format!("{} vertices requested, at most {MAX_H} supported", subset.len())));
    }
    let mut vs = subset.to_vec();
    vs.sort_unstable();
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadSubset("repeated vertex".into()));
    }
    if let Some(&v) = vs.last().filter(|&&v| v >= n) {
        return Err(Error::BadSubset(format!("vertex {v} out of range 0..{n}")));
    }
    Ok(vs)
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(h={}, {})", self.h, self.to_bit_string())
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = Tournament::parse("110", 3).unwrap();
        assert!(t.edge(0, 1) && t.edge(0, 2) && t.edge(2, 1));
        assert!(t.is_transitive());
        assert!(Tournament::parse("111", 3).unwrap().is_transitive());
        assert!(matches!(Tournament::parse("10", 3), Err(Error::WrongLength { expected: 3, got: 2, .. })));
        assert!(matches!(Tournament::parse("1x1", 3), Err(Error::BadCharacter('x'))));
        assert!(matches!(Tournament::parse("", 11), Err(Error::Unsupported(11))));
    }

    #[test]
    fn transitive_strings() {
        assert_eq!(Tournament::transitive(3).unwrap().to_bit_string(), "111");
        assert_eq!(Tournament::transitive(4).unwrap().to_bit_string(), "111111");
    }

    #[test]
    fn cyclic_has_unit_out_degrees() {
        let c = Tournament::cyclic3();
        assert_eq!(c.out_degrees(), vec![1, 1, 1]);
        assert!(c.edge(0, 1) && c.edge(1, 2) && c.edge(2, 0));
    }

    #[test]
    fn out_degrees_sum_to_pair_count() {
        for code in 0..1u64 << 10 {
            let t = Tournament::from_code(5, code).unwrap();
            assert_eq!(t.out_degrees().iter().sum::<usize>(), 10);
            assert_eq!(t.code(), code);
        }
    }

    #[test]
    fn induced_examples() {
        let t5 = Tournament::transitive(5).unwrap();
        assert_eq!(t5.induced(&[0, 2, 4]).unwrap(), Tournament::transitive(3).unwrap());
        assert_eq!(t5.induced(&[4, 3, 2, 1, 0]).unwrap(), t5);
        let two = Tournament::cyclic3().induced(&[0, 1]).unwrap();
        assert_eq!(two.h(), 2);
        assert!(matches!(t5.induced(&[]), Err(Error::BadSubset(_))));
        assert!(matches!(t5.induced(&[1, 1]), Err(Error::BadSubset(_))));
        assert!(matches!(t5.induced(&[5]), Err(Error::BadSubset(_))));
    }

    #[test]
    fn induced_composes() {
        let t = Tournament::from_code(6, 0b101100111001010).unwrap();
        let outer = [0, 2, 3, 5];
        let inner = [1, 3]; // positions inside `outer`
        let composed: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        assert_eq!(t.induced(&outer).unwrap().induced(&inner).unwrap(), t.induced(&composed).unwrap());
    }

    #[test]
    fn reverse_is_involution() {
        let t = Tournament::from_code(5, 0b1001110100).unwrap();
        assert_eq!(t.reverse().reverse(), t);
        assert_ne!(t.reverse(), t);
    }
}

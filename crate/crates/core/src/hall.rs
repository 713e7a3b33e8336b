//! Enumeration of basic commutators, weight by weight.
//!
//! [`HallBasis`] stores every basic commutator on `m` generators up to some
//! weight, sorted ascending under the commutator order, and hands out dense
//! [`BasicId`]s. Because the order is graded by weight and the table is
//! filled weight by weight, `id(a) < id(b)` iff `a < b`; the pair sets in
//! [`crate::multiplier`] rely on this to compare elements by index.

use std::ops::Range;

use rayon::prelude::*;

use crate::commutator::{Commutator, Generator};
use crate::error::{Error, Result};

/// Index of a basic commutator in a [`HallBasis`]. Ids are stable for a
/// fixed number of generators: growing the table never renumbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicId(u32);

impl BasicId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
struct Entry {
    commutator: Commutator,
    /// `a` when this element is `[b,a]`
    right: Option<BasicId>,
}

/// Basic commutators on `x1..xm` of weights `1..=max_weight`.
#[derive(Debug, Clone)]
pub struct HallBasis {
    gens: u32,
    entries: Vec<Entry>,
    /// weight `w` occupies `starts[w-1]..starts[w]`
    starts: Vec<usize>,
}

// Below this many candidates per weight the sequential loop is faster.
const PAR_THRESHOLD: usize = 2048;

impl HallBasis {
    pub fn new(gens: u32) -> Result<Self> {
        if gens == 0 {
            return Err(Error::invalid("number of generators must be >= 1"));
        }
        let entries = (1..=gens)
            .map(|i| {
                Ok(Entry {
                    commutator: Commutator::leaf(Generator::new(i)?),
                    right: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HallBasis {
            gens,
            starts: vec![0, entries.len()],
            entries,
        })
    }

    pub fn with_max_weight(gens: u32, max_weight: u32) -> Result<Self> {
        let mut basis = Self::new(gens)?;
        basis.extend_to(max_weight);
        Ok(basis)
    }

    pub fn gens(&self) -> u32 {
        self.gens
    }

    pub fn max_weight(&self) -> u32 {
        (self.starts.len() - 1) as u32
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Grows the table so that it covers every weight `<= max_weight`.
    pub fn extend_to(&mut self, max_weight: u32) {
        while self.max_weight() < max_weight {
            let w = self.max_weight() + 1;
            let fresh: Vec<Entry> = self
                .candidates(w)
                .into_iter()
                .map(|(b, a)| Entry {
                    commutator: Commutator::bracket(self.commutator(b), self.commutator(a)),
                    right: Some(a),
                })
                .collect();
            self.entries.extend(fresh);
            self.starts.push(self.entries.len());
        }
    }

    /// All `(b, a)` with `[b,a]` basic of weight `w`, sorted by `(b, a)`,
    /// which is the commutator order on `[b,a]`.
    fn candidates(&self, w: u32) -> Vec<(BasicId, BasicId)> {
        let lefts: Vec<BasicId> = (w.div_ceil(2)..w).flat_map(|wb| self.ids(wb)).collect();
        let for_left = |&b: &BasicId| {
            let wa = w - self.weight(b);
            let band = self.range(wa);
            // a ranges over weight-wa basics with right(b) <= a < b
            let lo = match self.entries[b.index()].right {
                Some(r) => band.start.max(r.index()),
                None => band.start,
            };
            let hi = band.end.min(b.index());
            (lo..hi).map(move |a| (b, BasicId(a as u32)))
        };
        let mut out: Vec<(BasicId, BasicId)> = if self.len() > PAR_THRESHOLD {
            lefts.par_iter().flat_map_iter(for_left).collect()
        } else {
            lefts.iter().flat_map(for_left).collect()
        };
        // lefts are ascending and each inner run is ascending in a
        out.sort_unstable();
        out
    }

    /// Index range of the weight-`w` slice (empty when out of the table).
    pub fn range(&self, w: u32) -> Range<usize> {
        let w = w as usize;
        if w == 0 || w >= self.starts.len() {
            return 0..0;
        }
        self.starts[w - 1]..self.starts[w]
    }

    pub fn ids(&self, w: u32) -> impl Iterator<Item = BasicId> + Clone {
        self.range(w).map(|i| BasicId(i as u32))
    }

    pub fn count(&self, w: u32) -> usize {
        self.range(w).len()
    }

    pub fn commutator(&self, id: BasicId) -> &Commutator {
        &self.entries[id.index()].commutator
    }

    pub fn weight(&self, id: BasicId) -> u32 {
        self.entries[id.index()].commutator.weight()
    }

    /// Right factor `a` of `[b,a]`, `None` for generators.
    pub fn right(&self, id: BasicId) -> Option<BasicId> {
        self.entries[id.index()].right
    }

    /// Looks a basic commutator up by value.
    pub fn id_of(&self, c: &Commutator) -> Option<BasicId> {
        let range = self.range(c.weight());
        let slice = &self.entries[range.clone()];
        slice
            .binary_search_by(|e| e.commutator.cmp(c))
            .ok()
            .map(|i| BasicId((range.start + i) as u32))
    }

    pub fn slice(&self, min_weight: u32, max_weight: u32) -> impl Iterator<Item = &Commutator> {
        let lo = self.range(min_weight.max(1)).start;
        let hi = self.range(max_weight.min(self.max_weight())).end;
        self.entries[lo..hi.max(lo)].iter().map(|e| &e.commutator)
    }
}

/// Basic commutators in a weight window, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSlice {
    pub num_generators: u32,
    pub min_weight: u32,
    pub max_weight: u32,
    pub elements: Vec<Commutator>,
}

impl BasisSlice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_window(gens: u32, min_weight: u32, max_weight: u32) -> Result<()> {
    if gens == 0 {
        return Err(Error::invalid("number of generators must be >= 1"));
    }
    if min_weight == 0 {
        return Err(Error::invalid("minimum weight must be >= 1"));
    }
    if min_weight > max_weight {
        return Err(Error::invalid(format!(
            "minimum weight {min_weight} exceeds maximum weight {max_weight}"
        )));
    }
    Ok(())
}

/// Every basic commutator on `x1..x_gens` with weight in
/// `min_weight..=max_weight`, sorted ascending.
pub fn generate_basis(gens: u32, min_weight: u32, max_weight: u32) -> Result<BasisSlice> {
    check_window(gens, min_weight, max_weight)?;
    let basis = HallBasis::with_max_weight(gens, max_weight)?;
    Ok(BasisSlice {
        num_generators: gens,
        min_weight,
        max_weight,
        elements: basis.slice(min_weight, max_weight).cloned().collect(),
    })
}

/// Calls `sink` on each basic commutator of the window in order, growing
/// the table one weight at a time.
pub fn for_each_basic<F>(gens: u32, min_weight: u32, max_weight: u32, mut sink: F) -> Result<()>
where
    F: FnMut(&Commutator) -> std::io::Result<()>,
{
    check_window(gens, min_weight, max_weight)?;
    let mut basis = HallBasis::new(gens)?;
    for w in 1..=max_weight {
        basis.extend_to(w);
        if w >= min_weight {
            for id in basis.ids(w) {
                sink(basis.commutator(id))
                    .map_err(|e| Error::invalid(format!("write failed: {e}")))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::witt_u64;

    fn render(s: &BasisSlice) -> Vec<String> {
        s.elements.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn two_generators_low_weight() {
        let s = generate_basis(2, 1, 2).unwrap();
        assert_eq!(render(&s), ["x1", "x2", "[x2,x1]"]);
        let s = generate_basis(2, 3, 3).unwrap();
        assert_eq!(render(&s), ["[[x2,x1],x1]", "[[x2,x1],x2]"]);
    }

    #[test]
    fn one_generator_has_nothing_above_weight_one() {
        assert!(generate_basis(1, 2, 5).unwrap().is_empty());
        assert_eq!(generate_basis(1, 1, 5).unwrap().len(), 1);
    }

    #[test]
    fn bad_windows() {
        assert!(generate_basis(2, 3, 2).is_err());
        assert!(generate_basis(2, 0, 2).is_err());
        assert!(generate_basis(0, 1, 2).is_err());
    }

    #[test]
    fn counts_match_witt() {
        for m in 1..=3u32 {
            let basis = HallBasis::with_max_weight(m, 10).unwrap();
            for w in 1..=10 {
                assert_eq!(witt_u64(w, m.into()), basis.count(w).into(), "m={m} w={w}");
            }
        }
    }

    #[test]
    fn sorted_basic_and_indexed() {
        let basis = HallBasis::with_max_weight(3, 7).unwrap();
        let all: Vec<_> = basis.slice(1, 7).cloned().collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        assert!(all.iter().all(Commutator::is_basic));
        for (i, c) in all.iter().enumerate() {
            assert_eq!(basis.id_of(c).unwrap().index(), i);
        }
        assert!(basis.id_of(&crate::comm!([1, 2])).is_none());
    }

    #[test]
    fn growing_never_renumbers() {
        let small = HallBasis::with_max_weight(3, 4).unwrap();
        let big = HallBasis::with_max_weight(3, 8).unwrap();
        assert!(small.slice(1, 4).eq(big.slice(1, 4)));
    }

    #[test]
    fn streaming_matches_slice() {
        let mut seen = Vec::new();
        for_each_basic(3, 2, 6, |c| {
            seen.push(c.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, generate_basis(3, 2, 6).unwrap().elements);
    }
}

//! Exact arithmetic in the free Lie ring over `Z`, written in the Hall
//! basis of basic commutators.
//!
//! Brackets of basis elements are rewritten back into the basis with
//! antisymmetry and the Jacobi identity:
//!
//! * `[h,h] = 0`
//! * `[h1,h2] = -[h2,h1]` when `h1 < h2`
//! * `[h1,h2]` is itself basic when `h1 > h2` and `h1` is a generator or
//!   `h1 = [p,q]` with `q <= h2`
//! * otherwise `h1 = [p,q]` with `q > h2`, and
//!   `[[p,q],h2] = [[p,h2],q] + [p,[q,h2]]`.
//!
//! The graded pieces of this ring are the lower central factors of the free
//! group, so it serves as an algebraic check on basis and rank claims.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::commutator::Commutator;
use crate::error::{Error, Result};

type Terms = BTreeMap<Commutator, BigInt>;

/// A finite `Z`-combination of basic commutators on `gens` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    gens: u32,
    terms: Terms,
}

impl LieElement {
    pub fn zero(gens: u32) -> Self {
        LieElement {
            gens,
            terms: Terms::new(),
        }
    }

    /// The basis element `c` with coefficient 1.
    pub fn inject(gens: u32, c: &Commutator) -> Result<Self> {
        Self::from_terms(gens, [(c.clone(), BigInt::one())])
    }

    /// Builds an element from `(basic commutator, coefficient)` pairs,
    /// summing repeated keys and dropping zeros.
    pub fn from_terms<I, K>(gens: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Commutator, K)>,
        K: Into<BigInt>,
    {
        let mut out = Self::zero(gens);
        for (c, k) in terms {
            if !c.is_basic() {
                return Err(Error::invalid(format!("{c} is not a basic commutator")));
            }
            if c.max_generator() > gens {
                return Err(Error::invalid(format!(
                    "{c} uses a generator outside x1..x{gens}"
                )));
            }
            add_term(&mut out.terms, c, k.into());
        }
        Ok(out)
    }

    pub fn gens(&self) -> u32 {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Commutator, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &Commutator) -> BigInt {
        self.terms.get(c).cloned().unwrap_or_default()
    }

    /// Weights occurring in the support, ascending.
    pub fn weights(&self) -> Vec<u32> {
        let mut ws: Vec<u32> = self.terms.keys().map(Commutator::weight).collect();
        ws.dedup();
        ws
    }

    pub fn homogeneous_part(&self, weight: u32) -> Self {
        LieElement {
            gens: self.gens,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.weight() == weight)
                .map(|(c, k)| (c.clone(), k.clone()))
                .collect(),
        }
    }

    fn same_alphabet(&self, other: &Self) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::invalid(format!(
                "alphabet mismatch: {} vs {} generators",
                self.gens, other.gens
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        for (c, k) in &other.terms {
            add_term(&mut out.terms, c.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.gens);
        }
        LieElement {
            gens: self.gens,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * k)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LieElement {
            gens: self.gens,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), -v)).collect(),
        }
    }

    /// Bilinear bracket, rewritten into the Hall basis.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(other)?;
        let mut cache = HashMap::new();
        let mut out = Terms::new();
        for (h1, k1) in &self.terms {
            for (h2, k2) in &other.terms {
                let coeff = k1 * k2;
                for (c, v) in bracket_basic(h1, h2, &mut cache).iter() {
                    add_term(&mut out, c.clone(), v * &coeff);
                }
            }
        }
        Ok(LieElement {
            gens: self.gens,
            terms: out,
        })
    }
}

impl fmt::Display for LieElement {
    /// `2*x1 + -1*[x2,x1]`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k}*{c}")?;
        }
        Ok(())
    }
}

fn add_term(terms: &mut Terms, c: Commutator, k: BigInt) {
    if k.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(c) {
        Entry::Vacant(e) => {
            e.insert(k);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += k;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

type Cache = HashMap<(Commutator, Commutator), Terms>;

fn bracket_terms(u: &Terms, v: &Terms, cache: &mut Cache) -> Terms {
    let mut out = Terms::new();
    for (h1, k1) in u {
        for (h2, k2) in v {
            let coeff = k1 * k2;
            for (c, k) in bracket_basic(h1, h2, cache).iter() {
                add_term(&mut out, c.clone(), k * &coeff);
            }
        }
    }
    out
}

fn single(c: &Commutator) -> Terms {
    Terms::from([(c.clone(), BigInt::one())])
}

/// `[h1,h2]` for basic `h1`, `h2`, expanded in the basis.
fn bracket_basic(h1: &Commutator, h2: &Commutator, cache: &mut Cache) -> Terms {
    use std::cmp::Ordering::*;
    match h1.cmp(h2) {
        Equal => Terms::new(),
        Less => bracket_basic(h2, h1, cache)
            .into_iter()
            .map(|(c, k)| (c, -k))
            .collect(),
        Greater => {
            let (p, q) = match h1.parts() {
                None => return single(&Commutator::bracket(h1, h2)),
                Some((_, q)) if q <= h2 => return single(&Commutator::bracket(h1, h2)),
                Some(pq) => pq,
            };
            let key = (h1.clone(), h2.clone());
            if let Some(hit) = cache.get(&key) {
                return hit.clone();
            }
            // [[p,q],h2] = [[p,h2],q] + [p,[q,h2]]
            let p_h2 = bracket_basic(p, h2, cache);
            let mut out = bracket_terms(&p_h2, &single(q), cache);
            let q_h2 = bracket_basic(q, h2, cache);
            for (c, k) in bracket_terms(&single(p), &q_h2, cache) {
                add_term(&mut out, c, k);
            }
            cache.insert(key, out.clone());
            out
        }
    }
}

/// Whether the coefficient vectors are linearly independent over `Q`.
///
/// Runs an incremental fraction-free echelon reduction on sparse rows:
/// each row is reduced by `row <- p*row - k*pivot` until its leading key
/// is new (independent so far) or it vanishes (dependent). Rows are kept
/// primitive by dividing out their content.
pub fn independent(elements: &[LieElement]) -> bool {
    let mut pivots: HashMap<Commutator, Terms> = HashMap::new();
    for e in elements {
        let mut row = e.terms.clone();
        loop {
            let Some((lead, k)) = row.iter().next().map(|(c, k)| (c.clone(), k.clone())) else {
                return false;
            };
            let Some(pivot) = pivots.get(&lead) else {
                make_primitive(&mut row);
                pivots.insert(lead, row);
                break;
            };
            let p = &pivot[&lead];
            let mut next = Terms::new();
            for (c, v) in &row {
                add_term(&mut next, c.clone(), v * p);
            }
            for (c, v) in pivot {
                add_term(&mut next, c.clone(), -(v * &k));
            }
            debug_assert!(!next.contains_key(&lead));
            make_primitive(&mut next);
            row = next;
        }
    }
    true
}

fn make_primitive(row: &mut Terms) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
    if row.values().next().is_some_and(|v| v.is_negative()) {
        for v in row.values_mut() {
            *v = -&*v;
        }
    }
}

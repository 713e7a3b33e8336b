//! The pair sets `A`, `B`, `C`, their closed-form cardinalities, and the
//! ranks of the Baer invariants built from them.
//!
//! For the variety defined by `[gamma_{c1+1}, gamma_{c2+1}]` and the free
//! nilpotent group of class `n` on `m` generators:
//!
//! * `A`: pairs `[beta,alpha]` of basic commutators, `beta > alpha`,
//!   `c1+1 <= wt(beta) <= c1+n`, `c2+1 <= wt(alpha) <= c2+n`;
//! * `B`: `beta > alpha`, `wt(beta) >= c1+n+1`, `wt(alpha) >= c2+1`,
//!   `wt(beta)+wt(alpha) <= 2n+c1+c2+1`;
//! * `C`: as `B` with `c1` and `c2` exchanged in the lower bounds.
//!
//! When `c1 >= c2` (H1) and `2c2-c1 > 2n-2` (H2) the invariant is free
//! abelian on `A - C`. Counting formulas only need H1; everything that
//! claims a rank or a basis is gated on both.
//!
//! Sums `sum_{i=a}^{b} chi_i(m)` with `a > b` are empty and contribute 0.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::commutator::Commutator;
use crate::error::{Error, Result, Violation};
use crate::hall::{BasicId, HallBasis};
use crate::witt::{witt, witt_range_sum, witt_u64};

/// `(m, n, c1, c2)`: generators, nilpotency class, and the two
/// outer-commutator classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VParams {
    pub m: u32,
    pub n: u32,
    pub c1: u32,
    pub c2: u32,
}

impl VParams {
    pub fn new(m: u32, n: u32, c1: u32, c2: u32) -> Result<Self> {
        for (name, v) in [("m", m), ("n", n), ("c1", c1), ("c2", c2)] {
            if v == 0 {
                return Err(Error::invalid(format!("{name} must be >= 1")));
            }
        }
        Ok(VParams { m, n, c1, c2 })
    }

    /// Largest weight any element of `A`, `B` or `C` can involve.
    pub fn max_weight(&self) -> u32 {
        2 * self.n + self.c1.max(self.c2)
    }

    fn sum(&self, lo: u32, hi: u32) -> BigUint {
        witt_range_sum(self.m.into(), lo, hi)
    }
}

impl fmt::Display for VParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} n={} c1={} c2={}", self.m, self.n, self.c1, self.c2)
    }
}

/// Which of the two counting regimes applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `c2+n < c1+1`: the weight bands of `beta` and `alpha` in `A` do not meet.
    Disjoint,
    /// `c2+n >= c1+1`.
    Overlapping,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Disjoint => "disjoint",
            Case::Overlapping => "overlapping",
        }
    }
}

/// An inequality and whether it holds at a parameter point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub inequality: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub h1: bool,
    pub h2: bool,
    pub case: Case,
    pub violations: Vec<Violation>,
    /// Consequences of H1 and H2 that the basicness arguments use. Empty
    /// unless both hypotheses hold.
    pub implied: Vec<Inequality>,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.h1 && self.h2
    }
}

pub const H1: &str = "c1 >= c2";
pub const H2: &str = "2c2-c1 > 2n-2";
pub const POLY_HYPOTHESIS: &str = "c1 >= n";

fn h1_violation(p: &VParams) -> Option<Violation> {
    (p.c1 < p.c2).then(|| Violation {
        inequality: H1,
        detail: format!("{} < {}", p.c1, p.c2),
    })
}

pub fn check_hypotheses(p: &VParams) -> HypothesisReport {
    let (n, c1, c2) = (i64::from(p.n), i64::from(p.c1), i64::from(p.c2));
    let lhs = 2 * c2 - c1;
    let rhs = 2 * n - 2;
    let mut violations: Vec<Violation> = h1_violation(p).into_iter().collect();
    let h1 = violations.is_empty();
    let h2 = lhs > rhs;
    if !h2 {
        violations.push(Violation {
            inequality: H2,
            detail: format!("{lhs} <= {rhs}"),
        });
    }
    let implied = if h1 && h2 {
        vec![
            Inequality {
                inequality: "c1+c2+1 >= n",
                holds: c1 + c2 + 1 >= n,
            },
            Inequality {
                inequality: "c2 >= n-1",
                holds: c2 >= n - 1,
            },
            Inequality {
                inequality: "2c2-c1 >= n-1",
                holds: 2 * c2 - c1 >= n - 1,
            },
            Inequality {
                inequality: "2c1-c2 > 2n-2",
                holds: 2 * c1 - c2 > 2 * n - 2,
            },
        ]
    } else {
        Vec::new()
    };
    HypothesisReport {
        h1,
        h2,
        case: case_of(p),
        violations,
        implied,
    }
}

pub fn case_of(p: &VParams) -> Case {
    if p.c2 + p.n < p.c1 + 1 {
        Case::Disjoint
    } else {
        Case::Overlapping
    }
}

fn require_h1(p: &VParams) -> Result<()> {
    match h1_violation(p) {
        Some(v) => Err(Error::HypothesisViolation(vec![v])),
        None => Ok(()),
    }
}

/// Succeeds with the report iff both H1 and H2 hold.
pub fn require_hypotheses(p: &VParams) -> Result<HypothesisReport> {
    let report = check_hypotheses(p);
    if report.holds() {
        Ok(report)
    } else {
        Err(Error::HypothesisViolation(report.violations))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    A,
    B,
    C,
    ACapC,
    AMinusC,
}

impl SetKind {
    pub const ALL: [SetKind; 5] = [
        SetKind::A,
        SetKind::B,
        SetKind::C,
        SetKind::ACapC,
        SetKind::AMinusC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SetKind::A => "A",
            SetKind::B => "B",
            SetKind::C => "C",
            SetKind::ACapC => "A∩C",
            SetKind::AMinusC => "A−C",
        }
    }
}

/// A set of pairs `[beta,alpha]` of basic commutators, stored as ids into a
/// shared [`HallBasis`] and sorted by the commutator order of
/// `[beta,alpha]`: total weight, then `beta`, then `alpha`.
#[derive(Debug, Clone)]
pub struct PairSet {
    kind: SetKind,
    params: VParams,
    basis: Arc<HallBasis>,
    pairs: Vec<(BasicId, BasicId)>,
}

impl PartialEq for PairSet {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.params == other.params
            && self.basis.gens() == other.basis.gens()
            && self.pairs == other.pairs
    }
}

impl PairSet {
    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn params(&self) -> &VParams {
        &self.params
    }

    pub fn basis(&self) -> &Arc<HallBasis> {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn ids(&self) -> &[(BasicId, BasicId)] {
        &self.pairs
    }

    /// `(beta, alpha)` in order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Commutator, &Commutator)> + '_ {
        self.pairs
            .iter()
            .map(|&(b, a)| (self.basis.commutator(b), self.basis.commutator(a)))
    }

    /// Each pair read as the commutator `[beta,alpha]`.
    pub fn commutators(&self) -> impl Iterator<Item = Commutator> + '_ {
        self.pairs().map(|(b, a)| Commutator::bracket(b, a))
    }

    fn key(&self, (b, a): (BasicId, BasicId)) -> (u32, BasicId, BasicId) {
        (self.basis.weight(b) + self.basis.weight(a), b, a)
    }

    fn check_compatible(&self, other: &PairSet) {
        assert_eq!(
            self.basis.gens(),
            other.basis.gens(),
            "pair sets over different alphabets"
        );
    }

    fn merge(&self, other: &PairSet, kind: SetKind, keep_common: bool) -> PairSet {
        self.check_compatible(other);
        let mut out = Vec::new();
        let mut rhs = other.pairs.iter().peekable();
        for &x in &self.pairs {
            let kx = self.key(x);
            while rhs.peek().is_some_and(|&&y| other.key(y) < kx) {
                rhs.next();
            }
            let common = rhs.peek().is_some_and(|&&y| other.key(y) == kx);
            if common == keep_common {
                out.push(x);
            }
        }
        PairSet {
            kind,
            params: self.params,
            basis: Arc::clone(&self.basis),
            pairs: out,
        }
    }

    pub fn intersection(&self, other: &PairSet, kind: SetKind) -> PairSet {
        self.merge(other, kind, true)
    }

    pub fn difference(&self, other: &PairSet, kind: SetKind) -> PairSet {
        self.merge(other, kind, false)
    }

    /// Union as a sorted id list; the result keeps `self`'s kind.
    pub fn union(&self, other: &PairSet) -> PairSet {
        self.check_compatible(other);
        let mut pairs: Vec<_> = self.pairs.iter().chain(&other.pairs).copied().collect();
        pairs.sort_by_key(|&x| self.key(x));
        pairs.dedup();
        PairSet {
            kind: self.kind,
            params: self.params,
            basis: Arc::clone(&self.basis),
            pairs,
        }
    }

    pub fn contains(&self, beta: BasicId, alpha: BasicId) -> bool {
        let k = self.key((beta, alpha));
        self.pairs
            .binary_search_by(|&x| self.key(x).cmp(&k))
            .is_ok()
    }
}

/// Weight window for one of the defining sets.
struct Window {
    beta: (u32, u32),
    alpha: (u32, u32),
    total_cap: u32,
}

fn window(p: &VParams, kind: SetKind) -> Window {
    let (n, c1, c2) = (p.n, p.c1, p.c2);
    let cap = 2 * n + c1 + c2 + 1;
    match kind {
        SetKind::A => Window {
            beta: (c1 + 1, c1 + n),
            alpha: (c2 + 1, c2 + n),
            total_cap: u32::MAX,
        },
        SetKind::B => Window {
            beta: (c1 + n + 1, cap),
            alpha: (c2 + 1, cap),
            total_cap: cap,
        },
        SetKind::C => Window {
            beta: (c2 + n + 1, cap),
            alpha: (c1 + 1, cap),
            total_cap: cap,
        },
        SetKind::ACapC | SetKind::AMinusC => unreachable!("derived sets have no window"),
    }
}

fn enumerate_window(basis: &HallBasis, w: &Window) -> Vec<(BasicId, BasicId)> {
    let mut bands: Vec<(u32, u32)> = Vec::new();
    for wb in w.beta.0..=w.beta.1.min(basis.max_weight()) {
        for wa in w.alpha.0..=w.alpha.1.min(wb) {
            if wb.saturating_add(wa) <= w.total_cap {
                bands.push((wb, wa));
            }
        }
    }
    bands.sort_by_key(|&(wb, wa)| (wb + wa, wb, wa));
    let mut out = Vec::new();
    for (wb, wa) in bands {
        for b in basis.ids(wb) {
            out.extend(basis.ids(wa).take_while(|&a| a < b).map(|a| (b, a)));
        }
    }
    out
}

/// Enumerates one of the sets against an existing basis table, which must
/// cover weight [`VParams::max_weight`].
pub fn enumerate_set_in(basis: &Arc<HallBasis>, p: &VParams, kind: SetKind) -> Result<PairSet> {
    if basis.gens() != p.m {
        return Err(Error::invalid(format!(
            "basis has {} generators, parameters ask for {}",
            basis.gens(),
            p.m
        )));
    }
    if basis.max_weight() < p.max_weight() {
        return Err(Error::invalid(format!(
            "basis covers weight {}, need {}",
            basis.max_weight(),
            p.max_weight()
        )));
    }
    let make = |kind| PairSet {
        kind,
        params: *p,
        basis: Arc::clone(basis),
        pairs: enumerate_window(basis, &window(p, kind)),
    };
    Ok(match kind {
        SetKind::A | SetKind::B | SetKind::C => make(kind),
        SetKind::ACapC => make(SetKind::A).intersection(&make(SetKind::C), kind),
        SetKind::AMinusC => make(SetKind::A).difference(&make(SetKind::C), kind),
    })
}

pub fn enumerate_set(p: &VParams, kind: SetKind) -> Result<PairSet> {
    let basis = Arc::new(HallBasis::with_max_weight(p.m, p.max_weight())?);
    enumerate_set_in(&basis, p, kind)
}

fn chi2(count: &BigUint) -> BigUint {
    witt(2, count)
}

/// `|A|`, by the closed forms for the two cases. Needs H1.
pub fn card_a(p: &VParams) -> Result<BigUint> {
    require_h1(p)?;
    let (n, c1, c2) = (p.n, p.c1, p.c2);
    let betas = p.sum(c1 + 1, c1 + n);
    Ok(match case_of(p) {
        Case::Disjoint => betas * p.sum(c2 + 1, c2 + n),
        Case::Overlapping => {
            let low_alphas = p.sum(c2 + 1, c1);
            let shared = p.sum(c1 + 1, c2 + n);
            let high_betas = p.sum(c2 + n + 1, c1 + n);
            &betas * low_alphas + high_betas * &shared + chi2(&shared)
        }
    })
}

/// `|A ∩ C|`. Needs H1.
pub fn card_a_cap_c(p: &VParams) -> Result<BigUint> {
    require_h1(p)?;
    let (n, c1, c2) = (p.n, p.c1, p.c2);
    Ok(match case_of(p) {
        Case::Disjoint => BigUint::zero(),
        Case::Overlapping => p.sum(c2 + n + 1, c1 + n) * p.sum(c1 + 1, c2 + n),
    })
}

/// `|A - C|`, straight from its own closed forms. Needs H1.
pub fn card_a_minus_c(p: &VParams) -> Result<BigUint> {
    require_h1(p)?;
    let (n, c1, c2) = (p.n, p.c1, p.c2);
    let betas = p.sum(c1 + 1, c1 + n);
    Ok(match case_of(p) {
        Case::Disjoint => betas * p.sum(c2 + 1, c2 + n),
        Case::Overlapping => betas * p.sum(c2 + 1, c1) + chi2(&p.sum(c1 + 1, c2 + n)),
    })
}

/// The free basis `A - C` of the Baer invariant. Needs H1 and H2.
pub fn basis_d(p: &VParams) -> Result<PairSet> {
    require_hypotheses(p)?;
    enumerate_set(p, SetKind::AMinusC)
}

/// Rank of the (free abelian) Baer invariant. Needs H1 and H2.
pub fn v_multiplier_rank(p: &VParams) -> Result<BigUint> {
    require_hypotheses(p)?;
    card_a_minus_c(p)
}

/// `Z^m ⊕ Z_{n1} ⊕ ... ⊕ Z_{nk}` with `n_{i+1} | n_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    pub free_rank: u64,
    pub torsion: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn new(free_rank: u64, torsion: Vec<u64>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|&&t| t < 2) {
            return Err(Error::invalid(format!(
                "torsion modulus {bad} must be >= 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[0] % w[1] != 0) {
            return Err(Error::invalid(format!(
                "torsion must form a divisibility chain: {} does not divide {}",
                w[1], w[0]
            )));
        }
        Ok(AbelianGroupSpec { free_rank, torsion })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFactor {
    pub modulus: u64,
    pub multiplicity: BigUint,
}

/// `Z^free_rank ⊕ Z_{mod_1}^{mult_1} ⊕ ...`, one entry per input torsion
/// factor, zero multiplicities included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub free_rank: BigUint,
    pub cyclic_factors: Vec<CyclicFactor>,
}

/// The `c`-nilpotent multiplier of a finitely generated abelian group:
/// free rank `b_m` and `Z_{n_j}` with multiplicity `b_{m+j} - b_{m+j-1}`,
/// where `b_i = witt(c+1, i)`.
pub fn abelian_multiplier(g: &AbelianGroupSpec, c: u32) -> Result<AbelianDecomposition> {
    if c == 0 {
        return Err(Error::invalid("class must be >= 1"));
    }
    let g = AbelianGroupSpec::new(g.free_rank, g.torsion.clone())?;
    let b = |i: u64| witt_u64(c + 1, i);
    let cyclic_factors = g
        .torsion
        .iter()
        .zip(1u64..)
        .map(|(&modulus, j)| CyclicFactor {
            modulus,
            // witt(c+1, .) is nondecreasing, so this never underflows
            multiplicity: b(g.free_rank + j) - b(g.free_rank + j - 1),
        })
        .collect();
    Ok(AbelianDecomposition {
        free_rank: b(g.free_rank),
        cyclic_factors,
    })
}

/// `(m, n, (c1, ..., ct))` for the polynilpotent multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParams {
    pub m: u32,
    pub n: u32,
    pub class_row: Vec<u32>,
}

impl PolyParams {
    pub fn new(m: u32, n: u32, class_row: Vec<u32>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("m and n must be >= 1"));
        }
        if class_row.is_empty() {
            return Err(Error::invalid("class row must be nonempty"));
        }
        if class_row.contains(&0) {
            return Err(Error::invalid("classes must be >= 1"));
        }
        Ok(PolyParams { m, n, class_row })
    }

    pub fn violation(&self) -> Option<Violation> {
        let c1 = self.class_row[0];
        (c1.cmp(&self.n) == Ordering::Less).then(|| Violation {
            inequality: POLY_HYPOTHESIS,
            detail: format!("{c1} < {}", self.n),
        })
    }
}

/// Ranks `r_1, ..., r_t`: `r_1 = sum_{i=c1+1}^{c1+n} witt(i, m)` and
/// `r_j = witt(c_j + 1, r_{j-1})`. Needs `c1 >= n`.
pub fn polynilpotent_ranks(p: &PolyParams) -> Result<Vec<BigUint>> {
    if let Some(v) = p.violation() {
        return Err(Error::HypothesisViolation(vec![v]));
    }
    let c1 = p.class_row[0];
    let mut ranks = vec![witt_range_sum(p.m.into(), c1 + 1, c1 + p.n)];
    for &c in &p.class_row[1..] {
        let next = witt(c + 1, ranks.last().unwrap());
        ranks.push(next);
    }
    Ok(ranks)
}

pub fn polynilpotent_rank(p: &PolyParams) -> Result<BigUint> {
    Ok(polynilpotent_ranks(p)?.pop().unwrap())
}

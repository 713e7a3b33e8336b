//! Formula-against-oracle suites.
//!
//! Each suite recomputes a closed form or algebraic identity by an
//! independent route (enumeration, brute-force trees, necklaces, the
//! gcd/tensor description of Schur multipliers, free Lie ring arithmetic)
//! and records every disagreement with the parameter point and both
//! values. Grid points run in parallel; reports come back in grid order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::commutator::Commutator;
use crate::error::{Error, Result};
use crate::hall::HallBasis;
use crate::lie::{independent, LieElement};
use crate::multiplier::{
    abelian_multiplier, basis_d, card_a, card_a_cap_c, card_a_minus_c, check_hypotheses,
    enumerate_set_in, polynilpotent_rank, polynilpotent_ranks, v_multiplier_rank, AbelianGroupSpec,
    PolyParams, SetKind, VParams,
};
use crate::witt::{witt, witt_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// basis counts, brute-force trees and necklaces against the Witt formula
    Witt,
    /// `|A|`, `|A∩C|`, `|A−C|` formulas against enumeration
    Cardinality,
    /// elements of `A`, `B`, `C` are basic under H1 and H2
    Basicness,
    /// `(B∪C)∩(A−C) = ∅`, rank equals `|A−C|`, independence in the Lie ring
    Disjointness,
    /// antisymmetry, Jacobi, grading, basis fixpoint, dimension
    Lie,
    /// abelian multiplier at class 1 against the gcd/tensor oracle
    Abelian,
    /// polynilpotent rank recursion
    Poly,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Witt,
        Suite::Cardinality,
        Suite::Basicness,
        Suite::Disjointness,
        Suite::Lie,
        Suite::Abelian,
        Suite::Poly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Witt => "witt",
            Suite::Cardinality => "cardinality",
            Suite::Basicness => "basicness",
            Suite::Disjointness => "disjointness",
            Suite::Lie => "lie",
            Suite::Abelian => "abelian",
            Suite::Poly => "poly",
        }
    }

    fn needs_sets(self) -> bool {
        matches!(
            self,
            Suite::Cardinality | Suite::Basicness | Suite::Disjointness
        )
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Deliberate corruptions, used to check that the harness notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// add one to the closed form for `|A|`
    CardA,
    /// add one to every Witt number the witt suite compares against
    Witt,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "card-a" => Ok(Fault::CardA),
            "witt" => Ok(Fault::Witt),
            _ => Err(Error::invalid(format!("unknown fault '{s}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_gens: u32,
    pub max_class: u32,
    pub max_n: u32,
    pub max_weight: u32,
    pub suites: Vec<Suite>,
    /// upper bound on basic commutators materialized across all bases
    pub cap: u64,
    pub seed: u64,
    pub lie_samples: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_gens: 3,
            max_class: 5,
            max_n: 2,
            max_weight: 10,
            suites: Suite::ALL.to_vec(),
            cap: 200_000,
            seed: 0x5eed,
            lie_samples: 500,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub point: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: expected {}, got {}",
            self.check, self.point, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Accumulates checks for one suite.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        point: &str,
        check: &str,
        expected: T,
        actual: T,
    ) {
        self.checks += 1;
        if expected != actual {
            self.failures.push(Failure {
                point: point.to_string(),
                check: check.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn holds(&mut self, point: &str, check: &str, ok: bool) {
        self.eq(point, check, true, ok);
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    fn into_report(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

impl VerifyConfig {
    fn set_weight(&self) -> u32 {
        2 * self.max_n + self.max_class
    }

    /// Number of basic commutators the configured suites would build.
    pub fn estimated_size(&self) -> BigUint {
        let mut top = 0;
        if self.suites.contains(&Suite::Witt) {
            top = top.max(self.max_weight);
        }
        if self.suites.iter().any(|s| s.needs_sets()) {
            top = top.max(self.set_weight());
        }
        (1..=self.max_gens)
            .flat_map(|m| (1..=top).map(move |w| witt_u64(w, m.into())))
            .sum()
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("--max-gens", self.max_gens),
            ("--max-class", self.max_class),
            ("--max-n", self.max_n),
            ("--max-weight", self.max_weight),
        ] {
            if v == 0 {
                return Err(Error::invalid(format!("{name} must be >= 1")));
            }
        }
        let size = self.estimated_size();
        if size > BigUint::from(self.cap) {
            return Err(Error::invalid(format!(
                "grid would enumerate {size} basic commutators, above the cap of {}",
                self.cap
            )));
        }
        Ok(())
    }
}

/// Runs the configured suites. Fails only on an invalid configuration;
/// property failures are reported, not raised.
pub fn run(config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    config.validate()?;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let bases: BTreeMap<u32, Arc<HallBasis>> = if suites.iter().any(|s| s.needs_sets()) {
        (1..=config.max_gens)
            .into_par_iter()
            .map(|m| HallBasis::with_max_weight(m, config.set_weight()).map(|b| (m, Arc::new(b))))
            .collect::<Result<_>>()?
    } else {
        BTreeMap::new()
    };
    Ok(suites
        .into_iter()
        .map(|suite| {
            let tally = match suite {
                Suite::Witt => witt_suite(config),
                Suite::Cardinality => grid_suite(config, &bases, false, cardinality_point),
                Suite::Basicness => grid_suite(config, &bases, true, basicness_point),
                Suite::Disjointness => grid_suite(config, &bases, true, disjointness_point),
                Suite::Lie => lie_suite(config),
                Suite::Abelian => abelian_suite(),
                Suite::Poly => poly_suite(config),
            };
            tally.into_report(suite)
        })
        .collect())
}

fn witt_suite(config: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let bump = |v: BigUint| match config.fault {
        Some(Fault::Witt) => v + 1u32,
        _ => v,
    };
    for m in 1..=config.max_gens {
        let basis = HallBasis::with_max_weight(m, config.max_weight).expect("m >= 1");
        for w in 1..=config.max_weight {
            let point = format!("m={m} w={w}");
            let formula = bump(witt_u64(w, m.into()));
            t.eq(
                &point,
                "basis count = witt",
                formula.clone(),
                BigUint::from(basis.count(w)),
            );
            if (m as u64).pow(w) <= 200_000 {
                t.eq(
                    &point,
                    "necklaces = witt",
                    formula.clone(),
                    BigUint::from(oracles::lyndon_words(m, w)),
                );
            }
            if oracles::tree_count(m, w) <= 100_000 {
                let brute = oracles::basic_trees(m, w);
                t.eq(
                    &point,
                    "basic trees = witt",
                    formula,
                    BigUint::from(brute.len()),
                );
                let listed: Vec<Commutator> = basis
                    .ids(w)
                    .map(|id| basis.commutator(id).clone())
                    .collect();
                t.holds(&point, "basic trees = generated slice", brute == listed);
            }
        }
    }
    t
}

fn grid_points(config: &VerifyConfig, theorem_only: bool) -> Vec<VParams> {
    let mut points = Vec::new();
    for m in 1..=config.max_gens {
        for n in 1..=config.max_n {
            for c1 in 1..=config.max_class {
                for c2 in 1..=c1 {
                    let p = VParams { m, n, c1, c2 };
                    if !theorem_only || check_hypotheses(&p).holds() {
                        points.push(p);
                    }
                }
            }
        }
    }
    points
}

fn grid_suite<F>(
    config: &VerifyConfig,
    bases: &BTreeMap<u32, Arc<HallBasis>>,
    theorem_only: bool,
    check: F,
) -> Tally
where
    F: Fn(&VerifyConfig, &Arc<HallBasis>, &VParams) -> Tally + Sync,
{
    let tallies: Vec<Tally> = grid_points(config, theorem_only)
        .par_iter()
        .map(|p| check(config, &bases[&p.m], p))
        .collect();
    let mut t = Tally::default();
    for part in tallies {
        t.absorb(part);
    }
    t
}

fn cardinality_point(config: &VerifyConfig, basis: &Arc<HallBasis>, p: &VParams) -> Tally {
    let mut t = Tally::default();
    let point = p.to_string();
    let set = |kind| enumerate_set_in(basis, p, kind).expect("basis covers the grid");
    let a = set(SetKind::A);
    let c = set(SetKind::C);
    let cap = a.intersection(&c, SetKind::ACapC);
    let diff = a.difference(&c, SetKind::AMinusC);

    let mut formula_a = card_a(p).expect("grid has c1 >= c2");
    if config.fault == Some(Fault::CardA) {
        formula_a += 1u32;
    }
    t.eq(
        &point,
        "|A| formula = enumeration",
        formula_a,
        BigUint::from(a.len()),
    );
    t.eq(
        &point,
        "|A∩C| formula = enumeration",
        card_a_cap_c(p).unwrap(),
        BigUint::from(cap.len()),
    );
    t.eq(
        &point,
        "|A−C| formula = enumeration",
        card_a_minus_c(p).unwrap(),
        BigUint::from(diff.len()),
    );
    t.eq(
        &point,
        "|A−C| = |A| − |A∩C|",
        a.len() - cap.len(),
        diff.len(),
    );
    t
}

fn basicness_point(_: &VerifyConfig, basis: &Arc<HallBasis>, p: &VParams) -> Tally {
    let mut t = Tally::default();
    let point = p.to_string();
    for kind in [SetKind::A, SetKind::B, SetKind::C] {
        let set = enumerate_set_in(basis, p, kind).expect("basis covers the grid");
        let bad = set.commutators().find(|c| !c.is_basic());
        t.eq(
            &point,
            &format!("every element of {} is basic", kind.as_str()),
            "none".to_string(),
            bad.map_or_else(|| "none".to_string(), |c| c.to_string()),
        );
    }
    t
}

fn disjointness_point(_: &VerifyConfig, basis: &Arc<HallBasis>, p: &VParams) -> Tally {
    let mut t = Tally::default();
    let point = p.to_string();
    let set = |kind| enumerate_set_in(basis, p, kind).expect("basis covers the grid");
    let b = set(SetKind::B);
    let c = set(SetKind::C);
    let d = basis_d(p).expect("grid point satisfies the hypotheses");
    let clash = b.union(&c).intersection(&d, SetKind::ACapC);
    t.eq(&point, "|(B∪C)∩(A−C)|", 0, clash.len());
    let rank = v_multiplier_rank(p).expect("grid point satisfies the hypotheses");
    t.eq(&point, "|D| = rank", rank, BigUint::from(d.len()));
    let injected: Vec<LieElement> = d
        .commutators()
        .map(|c| LieElement::inject(p.m, &c).expect("elements of D are basic"))
        .collect();
    t.holds(
        &point,
        "D independent in the Lie ring",
        independent(&injected),
    );
    t
}

fn random_homogeneous(rng: &mut ChaCha8Rng, basis: &HallBasis, w: u32) -> LieElement {
    let ids: Vec<_> = basis.ids(w).collect();
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let id = ids[rng.gen_range(0..ids.len())];
        let k = rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (basis.commutator(id).clone(), BigInt::from(k))
    });
    LieElement::from_terms(basis.gens(), terms).expect("basis elements are basic")
}

/// Lie ring identities on `m = min(max_gens, 3)` letters (at least 2).
fn lie_suite(config: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let m = config.max_gens.clamp(2, 3);
    let basis = HallBasis::with_max_weight(m, 8).expect("m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let zero = LieElement::zero(m);
    for i in 0..config.lie_samples {
        let wu = rng.gen_range(1..=6);
        let wv = rng.gen_range(1..=7 - wu);
        let ww = rng.gen_range(1..=8 - wu - wv);
        let (u, v, w) = (
            random_homogeneous(&mut rng, &basis, wu),
            random_homogeneous(&mut rng, &basis, wv),
            random_homogeneous(&mut rng, &basis, ww),
        );
        let point = format!("sample {i} (weights {wu},{wv},{ww})");
        let uv = u.bracket(&v).unwrap();
        t.eq(
            &point,
            "[u,v] = -[v,u]",
            uv.to_string(),
            v.bracket(&u).unwrap().neg().to_string(),
        );
        t.holds(
            &point,
            "[u,v] homogeneous of weight wu+wv",
            uv.terms().all(|(c, _)| c.weight() == wu + wv),
        );
        let jacobi = u
            .bracket(&v.bracket(&w).unwrap())
            .and_then(|x| x.add(&v.bracket(&w.bracket(&u).unwrap())?))
            .and_then(|x| x.add(&w.bracket(&uv)?))
            .unwrap();
        t.eq(&point, "Jacobi sum", zero.to_string(), jacobi.to_string());
    }
    for id in (1..=8).flat_map(|w| basis.ids(w)) {
        let h = basis.commutator(id);
        if let Some((b, a)) = h.parts() {
            let got = LieElement::inject(m, b)
                .unwrap()
                .bracket(&LieElement::inject(m, a).unwrap())
                .unwrap();
            t.eq(
                &h.to_string(),
                "bracket of basic factors",
                LieElement::inject(m, h).unwrap().to_string(),
                got.to_string(),
            );
        }
    }
    // dimension: all brackets of complementary basis pairs reach rank witt(w, 2)
    let two = HallBasis::with_max_weight(2, 5).unwrap();
    for w in 2..=5 {
        let mut images = Vec::new();
        for wl in 1..w {
            for l in two.ids(wl) {
                for r in two.ids(w - wl) {
                    let x = LieElement::inject(2, two.commutator(l)).unwrap();
                    let y = LieElement::inject(2, two.commutator(r)).unwrap();
                    let z = x.bracket(&y).unwrap();
                    if !z.is_zero() {
                        images.push(z);
                    }
                }
            }
        }
        t.eq(
            &format!("m=2 w={w}"),
            "rank of bracket images",
            witt_u64(w, 2),
            BigUint::from(oracles::rank(&images)),
        );
        let slice: Vec<LieElement> = two
            .ids(w)
            .map(|id| LieElement::inject(2, two.commutator(id)).unwrap())
            .collect();
        t.holds(
            &format!("m=2 w={w}"),
            "basis slice independent",
            independent(&slice),
        );
    }
    t
}

/// All divisibility chains of length `<= 3` with moduli in `2..=12`.
pub fn torsion_chains() -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for chain in &frontier {
            for q in 2..=12u64 {
                if chain.last().is_none_or(|&last: &u64| last % q == 0) {
                    let mut c: Vec<u64> = chain.clone();
                    c.push(q);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn abelian_suite() -> Tally {
    let mut t = Tally::default();
    for free_rank in 0..=3u64 {
        for torsion in torsion_chains() {
            let g = AbelianGroupSpec::new(free_rank, torsion.clone()).unwrap();
            let point = format!("Z^{free_rank} + Z{torsion:?}");
            let ours = abelian_multiplier(&g, 1).unwrap();
            let mut moduli = Vec::new();
            for f in &ours.cyclic_factors {
                let k = f.multiplicity.to_usize().expect("small multiplicity");
                moduli.extend(std::iter::repeat_n(f.modulus, k));
            }
            let (free, theirs) = oracles::schur_multiplier(free_rank, &torsion);
            t.eq(
                &point,
                "free rank",
                BigUint::from(free),
                ours.free_rank.clone(),
            );
            t.eq(
                &point,
                "elementary divisors",
                format!("{:?}", oracles::elementary_divisors(&theirs)),
                format!("{:?}", oracles::elementary_divisors(&moduli)),
            );
        }
    }
    t
}

fn poly_suite(config: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let max_m = config.max_gens;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for len in 1..=3 {
        let mut row = vec![1; len];
        loop {
            rows.push(row.clone());
            let Some(i) = row.iter().rposition(|&c| c < 4) else {
                break;
            };
            row[i] += 1;
            row[i + 1..].iter_mut().for_each(|c| *c = 1);
        }
    }
    for m in 1..=max_m {
        let sub = HallBasis::with_max_weight(m, 7).unwrap();
        for n in 1..=3 {
            for row in rows.iter().filter(|r| r[0] >= n) {
                let p = PolyParams::new(m, n, row.clone()).unwrap();
                let point = format!("m={m} n={n} row={row:?}");
                let ranks = polynilpotent_ranks(&p).unwrap();
                let counted: usize = (row[0] + 1..=row[0] + n).map(|w| sub.count(w)).sum();
                t.eq(
                    &point,
                    "r1 = basis count",
                    BigUint::from(counted),
                    ranks[0].clone(),
                );
                if row.len() >= 2 {
                    let prefix = PolyParams::new(m, n, row[..row.len() - 1].to_vec()).unwrap();
                    let prev = polynilpotent_rank(&prefix).unwrap();
                    let c_t = *row.last().unwrap();
                    t.eq(
                        &point,
                        "r_t = witt(c_t+1, r_(t-1))",
                        witt(c_t + 1, &prev),
                        ranks[ranks.len() - 1].clone(),
                    );
                    if c_t == 1 {
                        if let Some(r) = prev.to_u64().filter(|&r| r <= 64) {
                            let (free, _) = oracles::schur_multiplier(r, &[]);
                            t.eq(
                                &point,
                                "Schur step via tensor oracle",
                                BigUint::from(free),
                                ranks[ranks.len() - 1].clone(),
                            );
                        }
                    }
                }
            }
        }
    }
    t
}

/// Brute-force references, independent of the Hall table and of the
/// closed forms.
pub mod oracles {
    use super::*;

    /// Number of binary trees with `w` leaves labelled from `m` letters.
    pub fn tree_count(m: u32, w: u32) -> u64 {
        // Catalan(w-1) * m^w, saturating
        let mut catalan: u64 = 1;
        for k in 0..u64::from(w.saturating_sub(1)) {
            catalan = catalan.saturating_mul(2 * (2 * k + 1)) / (k + 2);
        }
        catalan.saturating_mul(u64::from(m).saturating_pow(w))
    }

    /// Every tree of weight `w` on `m` letters that passes the basicness
    /// predicate, sorted.
    pub fn basic_trees(m: u32, w: u32) -> Vec<Commutator> {
        fn all(m: u32, w: u32, memo: &mut BTreeMap<u32, Vec<Commutator>>) -> Vec<Commutator> {
            if let Some(v) = memo.get(&w) {
                return v.clone();
            }
            let out: Vec<Commutator> = if w == 1 {
                (1..=m).map(Commutator::x).collect()
            } else {
                let mut out = Vec::new();
                for wl in 1..w {
                    let left = all(m, wl, memo);
                    let right = all(m, w - wl, memo);
                    for l in &left {
                        for r in &right {
                            out.push(Commutator::bracket(l, r));
                        }
                    }
                }
                out
            };
            memo.insert(w, out.clone());
            out
        }
        let mut v: Vec<Commutator> = all(m, w, &mut BTreeMap::new())
            .into_iter()
            .filter(Commutator::is_basic)
            .collect();
        v.sort();
        v
    }

    /// Aperiodic necklaces (Lyndon words) of length `w` over `m` letters,
    /// counted by checking every word against its rotations.
    pub fn lyndon_words(m: u32, w: u32) -> u64 {
        let w = w as usize;
        let total = (m as u64).pow(w as u32);
        let mut word = vec![0u32; w];
        let mut count = 0;
        for mut code in 0..total {
            for letter in word.iter_mut() {
                *letter = (code % u64::from(m)) as u32;
                code /= u64::from(m);
            }
            if (1..w).all(|s| word[..] < [&word[s..], &word[..s]].concat()[..]) {
                count += 1;
            }
        }
        count
    }

    /// Schur multiplier of `Z^free ⊕ Z_{t1} ⊕ ...` as the sum over pairs of
    /// cyclic factors of their tensor products. Returns the free rank and
    /// the finite cyclic moduli (trivial factors dropped).
    pub fn schur_multiplier(free: u64, torsion: &[u64]) -> (u64, Vec<u64>) {
        let factors: Vec<Option<u64>> = std::iter::repeat_n(None, free as usize)
            .chain(torsion.iter().map(|&t| Some(t)))
            .collect();
        let mut rank = 0;
        let mut moduli = Vec::new();
        for (i, x) in factors.iter().enumerate() {
            for y in &factors[i + 1..] {
                match (x, y) {
                    (None, None) => rank += 1,
                    (Some(a), None) | (None, Some(a)) => moduli.push(*a),
                    (Some(a), Some(b)) => moduli.push(a.gcd(b)),
                }
            }
        }
        moduli.retain(|&q| q > 1);
        moduli.sort_unstable_by(|a, b| b.cmp(a));
        (rank, moduli)
    }

    /// Prime-power cyclic factors of `⊕ Z_q`, sorted.
    pub fn elementary_divisors(moduli: &[u64]) -> Vec<u64> {
        let mut out = Vec::new();
        for &q in moduli {
            let mut q = q;
            let mut p = 2;
            while q > 1 {
                let mut pk = 1;
                while q % p == 0 {
                    q /= p;
                    pk *= p;
                }
                if pk > 1 {
                    out.push(pk);
                }
                p += 1;
            }
        }
        out.sort_unstable();
        out
    }

    /// Rank over `Q` by dense Bareiss elimination on the union of supports.
    pub fn rank(elements: &[LieElement]) -> usize {
        let keys: Vec<Commutator> = {
            let mut k: Vec<Commutator> = elements
                .iter()
                .flat_map(|e| e.terms().map(|(c, _)| c.clone()))
                .collect();
            k.sort();
            k.dedup();
            k
        };
        let mut rows: Vec<Vec<BigInt>> = elements
            .iter()
            .map(|e| keys.iter().map(|k| e.coefficient(k)).collect())
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..keys.len() {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in rank + 1..rows.len() {
                for c in col + 1..keys.len() {
                    let v = &rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                    rows[r][c] = v / &prev;
                }
                rows[r][col] = BigInt::zero();
            }
            prev = rows[rank][col].clone();
            rank += 1;
        }
        rank
    }
}

//! Exit criteria. Each criterion prints one `PASS`/`FAIL` line; the
//! process fails if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use baer_core::multiplier::{
    card_a, card_a_cap_c, card_a_minus_c, check_hypotheses, enumerate_set, polynilpotent_rank,
    polynilpotent_ranks, PolyParams, SetKind, VParams,
};
use baer_core::{
    abelian_multiplier, basis_d, generate_basis, independent, v_multiplier_rank, witt, witt_u64,
    AbelianGroupSpec, HallBasis, LieElement,
};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn v_grid() -> Vec<VParams> {
    let mut out = Vec::new();
    for m in 1..=3 {
        for n in 1..=2 {
            for c1 in 1..=5 {
                for c2 in 1..=c1 {
                    out.push(VParams::new(m, n, c1, c2).unwrap());
                }
            }
        }
    }
    out
}

fn witt_agreement() -> Outcome {
    let start = Instant::now();
    for m in 1..=3u32 {
        for w in 1..=10 {
            let count = generate_basis(m, w, w).map_err(|e| e.to_string())?.len();
            let formula = witt_u64(w, m.into());
            ensure(formula == BigUint::from(count), || {
                format!("m={m} w={w}: witt {formula}, enumerated {count}")
            })?;
        }
    }
    let seq: Vec<u64> = (1..=10).map(|w| witt_u64(w, 2).to_u64().unwrap()).collect();
    ensure(seq == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99], || {
        format!("m=2 sequence {seq:?}")
    })?;
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("m<=3, w<=10 in {took:.2?}"))
}

fn cardinality_formulas() -> Outcome {
    let start = Instant::now();
    let grid = v_grid();
    for p in &grid {
        let a = enumerate_set(p, SetKind::A).map_err(|e| e.to_string())?;
        let c = enumerate_set(p, SetKind::C).map_err(|e| e.to_string())?;
        let cap = a.intersection(&c, SetKind::ACapC);
        let diff = a.difference(&c, SetKind::AMinusC);
        for (name, formula, count) in [
            ("|A|", card_a(p), a.len()),
            ("|A∩C|", card_a_cap_c(p), cap.len()),
            ("|A−C|", card_a_minus_c(p), diff.len()),
        ] {
            let formula = formula.map_err(|e| e.to_string())?;
            ensure(formula == BigUint::from(count), || {
                format!("{p}: {name} formula {formula}, enumerated {count}")
            })?;
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("{} grid points in {took:.2?}", grid.len()))
}

fn basis_validity() -> Outcome {
    let mut points = 0;
    for p in v_grid().iter().filter(|p| check_hypotheses(p).holds()) {
        points += 1;
        let set = |k| enumerate_set(p, k).map_err(|e| e.to_string());
        for kind in [SetKind::A, SetKind::B, SetKind::C] {
            if let Some(bad) = set(kind)?.commutators().find(|c| !c.is_basic()) {
                return Err(format!("{p}: {bad} in {} is not basic", kind.as_str()));
            }
        }
        let d = basis_d(p).map_err(|e| e.to_string())?;
        let clash = set(SetKind::B)?
            .union(&set(SetKind::C)?)
            .intersection(&d, SetKind::ACapC);
        ensure(clash.is_empty(), || {
            format!("{p}: (B∪C)∩(A−C) has {} elements", clash.len())
        })?;
        let rank = v_multiplier_rank(p).map_err(|e| e.to_string())?;
        ensure(rank == BigUint::from(d.len()), || {
            format!("{p}: |D|={} rank={rank}", d.len())
        })?;
        let injected: Vec<LieElement> = d
            .commutators()
            .map(|c| LieElement::inject(p.m, &c))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(independent(&injected), || {
            format!("{p}: D dependent in the Lie ring")
        })?;
    }
    Ok(format!("{points} points satisfying H1 and H2"))
}

fn lie_soundness() -> Outcome {
    const M: u32 = 3;
    let basis = HallBasis::with_max_weight(M, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20070101);
    let element = |w: u32, rng: &mut ChaCha8Rng| {
        let ids: Vec<_> = basis.ids(w).collect();
        let mut terms = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            let k: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            terms.insert(ids[rng.gen_range(0..ids.len())], BigInt::from(k));
        }
        LieElement::from_terms(
            M,
            terms
                .into_iter()
                .map(|(id, k)| (basis.commutator(id).clone(), k)),
        )
        .unwrap()
    };
    let samples = 600;
    for i in 0..samples {
        let a = rng.gen_range(1..=6);
        let b = rng.gen_range(1..=7 - a);
        let c = rng.gen_range(1..=8 - a - b);
        let (u, v, w) = (
            element(a, &mut rng),
            element(b, &mut rng),
            element(c, &mut rng),
        );
        ensure(!u.is_zero() && !v.is_zero() && !w.is_zero(), || {
            format!("sample {i} degenerate")
        })?;
        let uv = u.bracket(&v).unwrap();
        ensure(uv == v.bracket(&u).unwrap().neg(), || {
            format!("antisymmetry fails at sample {i}")
        })?;
        let jacobi = u
            .bracket(&v.bracket(&w).unwrap())
            .unwrap()
            .add(&v.bracket(&w.bracket(&u).unwrap()).unwrap())
            .unwrap()
            .add(&w.bracket(&uv).unwrap())
            .unwrap();
        ensure(jacobi.is_zero(), || {
            format!("Jacobi fails at sample {i} (weights {a},{b},{c})")
        })?;
    }
    let mut fixpoints = 0;
    for id in (2..=8).flat_map(|w| basis.ids(w)) {
        let h = basis.commutator(id);
        let (b, a) = h.parts().unwrap();
        let got = LieElement::inject(M, b)
            .unwrap()
            .bracket(&LieElement::inject(M, a).unwrap())
            .unwrap();
        ensure(got == LieElement::inject(M, h).unwrap(), || {
            format!("[{b},{a}] rewrote to {got:?}")
        })?;
        fixpoints += 1;
    }
    Ok(format!("{samples} triples, {fixpoints} basic fixpoints"))
}

/// Schur multiplier of a direct sum of cyclic groups: the sum of pairwise
/// tensor products `Z⊗Z = Z`, `Z⊗Z_a = Z_a`, `Z_a⊗Z_b = Z_gcd(a,b)`.
/// Returns the free rank and the sorted prime-power torsion.
fn schur_by_tensors(free: u64, torsion: &[u64]) -> (u64, Vec<u64>) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let factors: Vec<u64> = std::iter::repeat_n(0, free as usize)
        .chain(torsion.iter().copied())
        .collect();
    let (mut rank, mut moduli) = (0, Vec::new());
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            match gcd(factors[i], factors[j]) {
                0 => rank += 1,
                g => moduli.push(g),
            }
        }
    }
    (rank, prime_powers(&moduli))
}

fn prime_powers(moduli: &[u64]) -> Vec<u64> {
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

fn chains(max_len: usize) -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    let mut i = 0;
    while i < all.len() {
        let chain = all[i].clone();
        if chain.len() < max_len {
            for q in 2..=12 {
                if chain.last().is_none_or(|&l| l % q == 0) {
                    let mut next = chain.clone();
                    next.push(q);
                    all.push(next);
                }
            }
        }
        i += 1;
    }
    all
}

fn abelian_cross_check() -> Outcome {
    let mut groups = 0;
    for free in 0..=3u64 {
        for torsion in chains(3) {
            groups += 1;
            let g = AbelianGroupSpec::new(free, torsion.clone()).map_err(|e| e.to_string())?;
            let d = abelian_multiplier(&g, 1).map_err(|e| e.to_string())?;
            let mut moduli = Vec::new();
            for f in &d.cyclic_factors {
                moduli.extend(std::iter::repeat_n(
                    f.modulus,
                    f.multiplicity.to_usize().unwrap(),
                ));
            }
            let ours = (d.free_rank.to_u64().unwrap(), prime_powers(&moduli));
            let oracle = schur_by_tensors(free, &torsion);
            ensure(ours == oracle, || {
                format!("Z^{free}+{torsion:?}: ours {ours:?}, oracle {oracle:?}")
            })?;
        }
    }
    // Z^2 ⊕ Z4 ⊕ Z2 → Z ⊕ Z4^2 ⊕ Z2^3
    let d = abelian_multiplier(&AbelianGroupSpec::new(2, vec![4, 2]).unwrap(), 1).unwrap();
    let got: Vec<(u64, u64)> = d
        .cyclic_factors
        .iter()
        .map(|f| (f.modulus, f.multiplicity.to_u64().unwrap()))
        .collect();
    ensure(
        d.free_rank == BigUint::from(1u32) && got == [(4, 2), (2, 3)],
        || format!("Z^2+Z4+Z2 gave {d:?}"),
    )?;
    Ok(format!("{groups} groups"))
}

fn poly_recursion() -> Outcome {
    let mut rows = 0;
    for m in 1..=3 {
        for n in 1..=3 {
            for t in 1..=3usize {
                let mut row = vec![1u32; t];
                loop {
                    if row[0] >= n {
                        rows += 1;
                        let ranks =
                            polynilpotent_ranks(&PolyParams::new(m, n, row.clone()).unwrap())
                                .map_err(|e| e.to_string())?;
                        let r1: BigUint = (row[0] + 1..=row[0] + n)
                            .map(|i| witt_u64(i, m.into()))
                            .sum();
                        ensure(ranks[0] == r1, || format!("m={m} n={n} {row:?}: r1"))?;
                        for j in 1..t {
                            let expected = witt(row[j] + 1, &ranks[j - 1]);
                            ensure(ranks[j] == expected, || {
                                format!("m={m} n={n} {row:?}: r_{}", j + 1)
                            })?;
                        }
                    }
                    let Some(i) = row.iter().rposition(|&c| c < 4) else {
                        break;
                    };
                    row[i] += 1;
                    row[i + 1..].iter_mut().for_each(|c| *c = 1);
                }
            }
        }
    }
    let spot = polynilpotent_rank(&PolyParams::new(2, 2, vec![2, 1]).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(spot == BigUint::from(10u32), || {
        format!("r(2,2,(2,1)) = {spot}")
    })?;
    Ok(format!("{rows} class rows, r(m=2,n=2,(2,1)) = 10"))
}

fn baer(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_baer"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn gated(args: Vec<String>, expected: &[&str]) -> Result<(), String> {
    let (code, stdout, stderr) = baer(&args);
    let cmd = args.join(" ");
    ensure(code == 1, || format!("`{cmd}` exited {code}"))?;
    for inequality in expected {
        ensure(stderr.contains(&format!("{inequality} violated")), || {
            format!("`{cmd}` stderr lacks '{inequality}': {stderr}")
        })?;
    }
    let env: serde_json::Value =
        serde_json::from_str(&stdout).map_err(|e| format!("`{cmd}`: {e}"))?;
    ensure(env["result"].is_null(), || {
        format!("`{cmd}` emitted a result")
    })
}

fn hypothesis_gating() -> Outcome {
    let mut checked = 0;
    for m in 1..=3u32 {
        for n in 1..=2u32 {
            for c1 in 1..=5u32 {
                for c2 in 1..=5u32 {
                    let p = VParams::new(m, n, c1, c2).unwrap();
                    let report = check_hypotheses(&p);
                    if report.holds() {
                        continue;
                    }
                    let mut expected = Vec::new();
                    if !report.h1 {
                        expected.push("c1 >= c2");
                    }
                    if !report.h2 {
                        expected.push("2c2-c1 > 2n-2");
                    }
                    let args = [
                        "rank",
                        "v",
                        "--n",
                        &n.to_string(),
                        "--c1",
                        &c1.to_string(),
                        "--c2",
                        &c2.to_string(),
                        "--gens",
                        &m.to_string(),
                    ];
                    gated(args.iter().map(|s| s.to_string()).collect(), &expected)?;
                    checked += 1;
                }
            }
        }
        for n in 1..=3u32 {
            for c1 in (1..=4u32).filter(|&c| c < n) {
                for tail in [vec![], vec![1], vec![4, 2]] {
                    let classes: Vec<String> = std::iter::once(c1)
                        .chain(tail)
                        .map(|c| c.to_string())
                        .collect();
                    let args = vec![
                        "rank".into(),
                        "poly".into(),
                        "--n".into(),
                        n.to_string(),
                        "--classes".into(),
                        classes.join(","),
                        "--gens".into(),
                        m.to_string(),
                    ];
                    gated(args, &["c1 >= n"])?;
                    checked += 1;
                }
            }
        }
    }
    // and a point inside the hypotheses still answers
    let (code, stdout, _) = baer(
        &[
            "rank", "v", "--n", "1", "--c1", "3", "--c2", "2", "--gens", "2",
        ]
        .map(String::from),
    );
    ensure(
        code == 0 && serde_json::from_str::<serde_json::Value>(&stdout).unwrap()["result"] == 6,
        || "valid point failed".into(),
    )?;
    Ok(format!("{checked} violating invocations exit 1"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("witt agreement", witt_agreement),
        ("cardinality formulas", cardinality_formulas),
        ("basis validity", basis_validity),
        ("lie oracle soundness", lie_soundness),
        ("abelian multiplier cross-check", abelian_cross_check),
        ("polynilpotent recursion", poly_recursion),
        ("hypothesis gating", hypothesis_gating),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

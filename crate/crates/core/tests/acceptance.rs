//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Run with `cargo test -p affine-gs --test acceptance -- --nocapture` to see
//! the report.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use affine_gs::{
    affine_a, bfs_count_oracle, box_count, complete, count_reduced, decompose, enumerate_arranged, enumerate_marked,
    g_families, is_gs_basis, oplus, poincare_affine_a, q_binomial, r0free_enumerate, verify_explicit_basis,
    BoxPartition, CompletionLimits, FactorAutomaton, Poly, RuleSet, Strategy, TruncatedSeries, USkeleton, Word,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn basis_verification() -> Check {
    for n in 2..=4 {
        let start = Instant::now();
        let report = verify_explicit_basis(n, CompletionLimits::default()).map_err(|e| e.to_string())?;
        ensure(report.matches, || {
            format!("n = {n}: {} unexpected, {} not produced", report.missing.len(), report.extra.len())
        })?;
        let limit = if n <= 3 { 5 } else { 60 };
        within(start, Duration::from_secs(limit), &format!("n = {n}"))?;
    }
    Ok("completion equals g1..g10 for n = 2, 3, 4".into())
}

fn composition_triviality() -> Check {
    let start = Instant::now();
    for n in 2..=4 {
        let check = is_gs_basis(&g_families(n).map_err(|e| e.to_string())?);
        ensure(check.is_complete(), || format!("n = {n}: nontrivial composition"))?;
    }
    within(start, Duration::from_secs(60), "ambiguity check")?;
    Ok("all compositions trivial for n = 2, 3, 4".into())
}

fn growth_triangle() -> Check {
    let start = Instant::now();
    for n in 2..=3 {
        let p = affine_a(n).map_err(|e| e.to_string())?;
        let basis = complete(&p.rule_set(), CompletionLimits::default()).map_err(|e| e.to_string())?;
        let counted = count_reduced(&basis, 12);
        let series = poincare_affine_a(n, 12);
        ensure(counted == series, || format!("n = {n}: automaton {counted:?} vs series {series:?}"))?;
        let oracle = bfs_count_oracle(&p, 8).map_err(|e| e.to_string())?;
        for d in 0..=8 {
            ensure(oracle.coeff(d) == counted.coeff(d), || format!("n = {n}, degree {d}: oracle disagrees"))?;
        }
        if n == 2 {
            for d in 0..=12usize {
                let expect = if d == 0 { 1 } else { 3 * d };
                ensure(*counted.coeff(d) == BigInt::from(expect), || format!("Ã2 degree {d}"))?;
            }
        }
    }
    within(start, Duration::from_secs(30), "growth triangle")?;
    Ok("automaton = series = oracle, Ã2 coefficients 1, 3m".into())
}

fn classification() -> Check {
    for n in 2..=3 {
        let arranged = enumerate_arranged(n, 10).map_err(|e| e.to_string())?;
        let r0free = r0free_enumerate(n, 10);
        let mut produced = HashSet::new();
        let mut total = 0usize;
        for r in &r0free {
            for a in &arranged {
                if r.len() + a.len() <= 10 {
                    produced.insert(r.concat(&a.expand()));
                    total += 1;
                }
            }
        }
        ensure(produced.len() == total, || format!("n = {n}: {} duplicates", total - produced.len()))?;
        let basis = g_families(n).map_err(|e| e.to_string())?;
        let automaton = FactorAutomaton::for_rules(&basis).map_err(|e| e.to_string())?;
        let reduced: HashSet<Word> = automaton.words_up_to(10).into_iter().collect();
        ensure(produced == reduced, || {
            format!(
                "n = {n}: {} reduced words not produced, {} produced words not reduced",
                reduced.difference(&produced).count(),
                produced.difference(&reduced).count()
            )
        })?;
    }
    Ok("r0-free × arranged = reduced words, n = 2, 3, length ≤ 10".into())
}

fn partitions() -> Check {
    let start = Instant::now();
    for n in 1..=5 {
        let q = q_binomial(2 * n, n).map_err(|e| e.to_string())?;
        for s in 0..=n * n + 1 {
            ensure(BigInt::from(box_count(n, s)) == q.coeff(s), || format!("n = {n}, size {s}"))?;
        }
        for p in BoxPartition::all(n).map_err(|e| e.to_string())? {
            ensure(oplus(&decompose(&p)) == p, || format!("roundtrip fails on {p}"))?;
        }
    }
    for n in 2..=3 {
        let mut counts = vec![0u64; n * n + 2];
        for m in enumerate_marked(n, n * n + 1).map_err(|e| e.to_string())? {
            counts[m.len()] += 1;
        }
        let q = q_binomial(2 * n, n).map_err(|e| e.to_string())?;
        ensure(TruncatedSeries::from_u64(&counts) == TruncatedSeries::from_poly(&q, n * n + 1), || {
            format!("n = {n}: marked sequence series {counts:?}")
        })?;
    }
    within(start, Duration::from_secs(10), "partition identities")?;
    Ok("box counts, ⊕ roundtrip, marked series = q-binomial".into())
}

fn series_identity() -> Check {
    for n in 1..=4 {
        let q = q_binomial(2 * n, n).map_err(|e| e.to_string())?;
        let upper: Vec<Poly> = (n + 1..=2 * n).map(Poly::one_minus_x_pow).collect();
        let lower: Vec<Poly> = (1..=n).map(Poly::one_minus_x_pow).collect();
        let lhs = TruncatedSeries::expand_rational(&q, &upper, 20).map_err(|e| e.to_string())?;
        let rhs = TruncatedSeries::expand_rational(&Poly::one(), &lower, 20).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("n = {n}"))?;
    }
    Ok("q-binomial / upper product = 1 / lower product, n ≤ 4, degree 20".into())
}

fn random_word(rng: &mut ChaCha8Rng, size: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_indices((0..len).map(|_| rng.gen_range(0..size) as u8))
}

fn check_decreasing(rs: &RuleSet, w: &Word) -> Result<(), String> {
    let mut cur = w.clone();
    while let Some(next) = rs.reduce_once(&cur) {
        ensure(rs.order().greater(&cur, &next), || format!("{cur} -> {next} does not decrease"))?;
        cur = next;
    }
    Ok(())
}

fn rewriting_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut trials = 0;
    for n in 2..=3 {
        let p = affine_a(n).map_err(|e| e.to_string())?;
        let basis = complete(&p.rule_set(), CompletionLimits::default()).map_err(|e| e.to_string())?;
        let size = n + 1;
        for _ in 0..500 {
            let u = random_word(&mut rng, size, 8);
            let v = random_word(&mut rng, size, 8);
            let rel = &p.relations()[rng.gen_range(0..p.relations().len())];
            let a = u.concat(&rel.lhs).concat(&v);
            let b = u.concat(&rel.rhs).concat(&v);
            ensure(basis.normal_form(&a) == basis.normal_form(&b), || format!("{a} and {b} differ"))?;
            check_decreasing(&basis, &a)?;
            trials += 1;
        }
        for _ in 0..250 {
            let w = random_word(&mut rng, size, 24);
            let x = basis.normal_form_with(&w, Strategy::LeftmostLowest);
            let y = basis.normal_form_with(&w, Strategy::RightmostHighest);
            ensure(x == y, || format!("{w}: {x} vs {y}"))?;
            check_decreasing(&basis, &w)?;
        }
    }
    Ok(format!("{trials} relation trials, 500 strategy trials, all steps decreasing"))
}

fn skeleton_count() -> Check {
    for n in 2..=10 {
        let count = USkeleton::all(n).map_err(|e| e.to_string())?.len();
        ensure(count == 1 << (n - 1), || format!("n = {n}: {count}"))?;
    }
    Ok("2^(n-1) skeletons for 2 ≤ n ≤ 10".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("explicit basis verification", basis_verification),
        ("composition triviality", composition_triviality),
        ("growth triangle", growth_triangle),
        ("classification completeness and uniqueness", classification),
        ("q-binomial and partition identities", partitions),
        ("series identity", series_identity),
        ("rewriting soundness", rewriting_soundness),
        ("skeleton count", skeleton_count),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match &outcome {
            Ok(detail) => println!("[PASS] {} {name}: {detail} ({t:.2?})", i + 1),
            Err(why) => {
                println!("[FAIL] {} {name}: {why} ({t:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

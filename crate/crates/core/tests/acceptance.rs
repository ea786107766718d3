//! End-to-end acceptance criteria. Each test prints one PASS/FAIL line; run
//! with `--nocapture` to see them.

use std::time::{Duration, Instant};

use kpage::bounds::{main1_value, pair_bound, riskin_value, turan_lower, upp1_bound, zarankiewicz};
use kpage::coloring::{
    conflict_graph, export_cnf, is_k_colorable, maximum_clique, parse_dimacs, solve_cnf, verify_positive_crossing,
    Budget, Cnf, PipelineVerdict, SatResult, Verdict, VerifyOptions, VerifyReport,
};
use kpage::constructions::{balanced_embedding, block_cyclic, blowup, BalancedParams};
use kpage::drawings::{count_crossings, is_balanced_embedding};
use kpage::enumeration::{count_formula, enumerate_layouts};
use kpage::oracle::{brute_force_nu, OracleLimits};
use num_bigint::BigInt;
use num_rational::BigRational;

type Outcome = Result<String, String>;

fn criterion(id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}")),
        other => other,
    };
    match &outcome {
        Ok(detail) => println!("criterion {id} PASS  {title}: {detail} ({elapsed:.2?})"),
        Err(why) => println!("criterion {id} FAIL  {title}: {why} ({elapsed:.2?})"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn blowup_count(k: usize, n: usize) -> Result<u64, String> {
    let base = balanced_embedding(k).map_err(|e| e.to_string())?;
    let d = blowup(&base, n).map_err(|e| e.to_string())?;
    Ok(count_crossings(&d).map_err(|e| e.to_string())?.total)
}

fn expect_proven(report: &VerifyReport, layouts: usize) -> Result<(), String> {
    ensure(matches!(report.verdict, PipelineVerdict::Proven), || format!("verdict {:?}", report.verdict))?;
    ensure(report.layouts.len() == layouts, || format!("{} layouts, expected {layouts}", report.layouts.len()))?;
    ensure(report.layouts.iter().all(|l| l.verdict == "not_colorable"), || "a layout is not refuted".into())
}

#[test]
fn criterion_1_enumeration_counts() {
    criterion(1, "layout counts", Duration::from_secs(60), || {
        for (m, n, expected) in [(4, 5, 10u128), (5, 7, 38), (7, 13, 1980)] {
            let formula = count_formula(m, n).map_err(|e| e.to_string())?;
            let listed = enumerate_layouts(m, n).map_err(|e| e.to_string())?.count() as u128;
            ensure(formula == expected && listed == expected, || {
                format!("K({m},{n}): formula {formula}, enumerated {listed}, expected {expected}")
            })?;
        }
        let mut pairs = 0;
        for total in 2..=20 {
            for m in 1..total {
                let n = total - m;
                let formula = count_formula(m, n).map_err(|e| e.to_string())?;
                let listed = enumerate_layouts(m, n).map_err(|e| e.to_string())?.count() as u128;
                ensure(formula == listed, || format!("K({m},{n}): formula {formula}, enumerated {listed}"))?;
                pairs += 1;
            }
        }
        let k610 = count_formula(6, 10).map_err(|e| e.to_string())?;
        ensure(k610 == 280, || format!("K(6,10) gives {k610}"))?;
        println!("note: K(6,10) has {k610} layouts; the commonly quoted 210 is not reproduced");
        Ok(format!("10, 38, 1980 reproduced; formula = enumeration on {pairs} pairs with m+n <= 20"))
    });
}

#[test]
fn criterion_2_k45_three_pages() {
    criterion(2, "nu_3(K(4,5)) = 1", Duration::from_secs(60), || {
        let report = verify_positive_crossing(4, 5, 3, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        expect_proven(&report, 10)?;
        let drawn = blowup_count(3, 5)?;
        let formula = main1_value(3, 5).map_err(|e| e.to_string())?;
        ensure(drawn == 1 && formula == 1, || format!("blow-up {drawn}, formula {formula}"))?;
        Ok("10/10 conflict graphs not 3-colorable; blow-up drawing has 1 crossing".into())
    });
}

#[test]
fn criterion_3_k57_four_pages() {
    criterion(3, "nu_4(K(5,7)) = 1", Duration::from_secs(15 * 60), || {
        let report = verify_positive_crossing(5, 7, 4, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        expect_proven(&report, 38)?;
        // second opinion per layout: an explicit 5-clique, or an unsatisfiable CNF
        let mut by_clique = 0;
        for layout in enumerate_layouts(5, 7).map_err(|e| e.to_string())? {
            let g = conflict_graph(&layout);
            ensure(g.vertex_count() == 35, || "conflict graph size".into())?;
            let (clique, _) = maximum_clique(&g);
            let is_clique = clique.iter().enumerate().all(|(i, &u)| clique[..i].iter().all(|&v| g.has_edge(u, v)));
            if is_clique && clique.len() > 4 {
                by_clique += 1;
                continue;
            }
            let cnf = parse_dimacs(&export_cnf(&g, 4)).map_err(|e| e.to_string())?;
            ensure(solve_cnf(&cnf) == SatResult::Unsatisfiable, || format!("{} is 4-colorable", layout.bitstring()))?;
        }
        let drawn = blowup_count(4, 7)?;
        let formula = main1_value(4, 7).map_err(|e| e.to_string())?;
        ensure(drawn == 1 && formula == 1, || format!("blow-up {drawn}, formula {formula}"))?;
        Ok(format!("38/38 not 4-colorable ({by_clique} via a 5-clique, the rest via CNF); blow-up has 1 crossing"))
    });
}

#[test]
fn criterion_4_balanced_embeddings() {
    criterion(4, "balanced embeddings", Duration::from_secs(60), || {
        for k in 1..=64 {
            let d = balanced_embedding(k).map_err(|e| e.to_string())?;
            let params = BalancedParams::new(k).map_err(|e| e.to_string())?;
            let width = (k + 1) * (k + 1) / 4;
            ensure(d.m() == k + 1 && d.n() == width && params.white_count() == width, || format!("k = {k}: shape"))?;
            ensure(d.pages().len() == (k + 1) * width, || format!("k = {k}: edge count"))?;
            ensure(count_crossings(&d).map_err(|e| e.to_string())?.total == 0, || format!("k = {k}: crossings"))?;
            ensure(is_balanced_embedding(&d).map_err(|e| e.to_string())?, || format!("k = {k}: not balanced"))?;
        }
        Ok("k = 1..64 all crossing-free and balanced".into())
    });
}

#[test]
fn criterion_5_main1_tightness() {
    criterion(5, "blow-up tightness", Duration::from_secs(60), || {
        let mut checked = 0;
        for k in 2..=6usize {
            let base = balanced_embedding(k).map_err(|e| e.to_string())?;
            let ell = (k + 1) * (k + 1) / 4;
            for n in ell..=500 {
                let d = blowup(&base, n).map_err(|e| e.to_string())?;
                let drawn = count_crossings(&d).map_err(|e| e.to_string())?.total as u128;
                let turan = turan_lower(k as u64, n as u64, ell as u64).map_err(|e| e.to_string())?;
                let exact = main1_value(k as u64, n as u64).map_err(|e| e.to_string())?;
                ensure(drawn == turan && turan == exact, || {
                    format!("k = {k}, n = {n}: drawing {drawn}, turan {turan}, formula {exact}")
                })?;
                checked += 1;
            }
        }
        Ok(format!("drawing = turan = formula at {checked} points"))
    });
}

#[test]
fn criterion_6_block_cyclic() {
    criterion(6, "block-cyclic closed form", Duration::from_secs(60), || {
        let mut checked = 0;
        for k in 1..=8u64 {
            for m in 1..=40u64 {
                for n in 1..=40u64 {
                    let d = block_cyclic(m as usize, n as usize, k as usize).map_err(|e| e.to_string())?;
                    let drawn = count_crossings(&d).map_err(|e| e.to_string())?.total as u128;
                    let closed = upp1_bound(k, m, n).map_err(|e| e.to_string())?;
                    ensure(drawn == closed, || format!("k={k} m={m} n={n}: drawing {drawn}, closed form {closed}"))?;
                    let cap = pair_bound(k, m, n).map_err(|e| e.to_string())?;
                    ensure(BigRational::from_integer(BigInt::from(closed)) <= cap, || {
                        format!("k={k} m={m} n={n}: {closed} above {cap}")
                    })?;
                    if k == 2 {
                        let z = zarankiewicz(m, n).map_err(|e| e.to_string())?;
                        ensure(drawn == z, || format!("m={m} n={n}: 2-page {drawn}, Z = {z}"))?;
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} drawings match; k = 2 equals Z(m,n)"))
    });
}

#[test]
fn criterion_7_oracle() {
    criterion(7, "brute-force oracle", Duration::from_secs(600), || {
        let limits = OracleLimits::default();
        let nu = |m, n, k| brute_force_nu(m, n, k, &limits).map(|r| r.value as u128).map_err(|e| e.to_string());
        let riskin = |m: u64, n: u64| -> Result<BigRational, String> {
            riskin_value(m, n).map(|v| v.value).map_err(|e| e.to_string())
        };
        let as_rational = |x: u128| BigRational::from_integer(BigInt::from(x));
        let z33 = zarankiewicz(3, 3).map_err(|e| e.to_string())?;
        let a = nu(3, 3, 2)?;
        ensure(a == 1 && z33 == 1, || format!("nu_2(K(3,3)) = {a}, Z = {z33}"))?;
        let b = nu(2, 4, 1)?;
        ensure(b == 2 && as_rational(b) == riskin(2, 4)?, || format!("nu_1(K(2,4)) = {b}"))?;
        let c = nu(4, 4, 3)?;
        ensure(c == 0, || format!("nu_3(K(4,4)) = {c}"))?;
        let d = nu(3, 3, 1)?;
        ensure(d == 3 && as_rational(d) == riskin(3, 3)?, || format!("nu_1(K(3,3)) = {d}"))?;
        Ok("nu_2(K33) = 1, nu_1(K24) = 2, nu_3(K44) = 0, nu_1(K33) = 3".into())
    });
}

#[test]
fn criterion_8_cnf_soundness() {
    criterion(8, "CNF export", Duration::from_secs(300), || {
        let mut witnesses = 0;
        for layout in enumerate_layouts(4, 5).map_err(|e| e.to_string())? {
            let g = conflict_graph(&layout);
            let cnf = parse_dimacs(&export_cnf(&g, 3)).map_err(|e| e.to_string())?;
            ensure(solve_cnf(&cnf) == SatResult::Unsatisfiable, || format!("{} satisfiable", layout.bitstring()))?;
            for k in 4..=6 {
                let result = is_k_colorable(&g, k, Budget::default()).map_err(|e| e.to_string())?;
                if let Verdict::Colorable(colours) = result.verdict {
                    let cnf = parse_dimacs(&export_cnf(&g, k)).map_err(|e| e.to_string())?;
                    ensure(cnf.is_satisfied_by(&Cnf::model_of_coloring(&colours, k)), || {
                        format!("{} k = {k}: witness violates CNF", layout.bitstring())
                    })?;
                    witnesses += 1;
                }
            }
        }
        ensure(witnesses > 0, || "no colorable witness exercised".into())?;
        Ok(format!("10/10 three-colour CNFs unsatisfiable; {witnesses} witnesses satisfy their CNF"))
    });
}

#[test]
#[ignore = "extended run; use --ignored"]
fn criterion_9_extended_instances() {
    criterion(9, "nu_5(K(6,10)), nu_6(K(7,13)) positive", Duration::from_secs(4 * 3600), || {
        for (m, n, k, layouts) in [(6, 10, 5, 280), (7, 13, 6, 1980)] {
            let report = verify_positive_crossing(m, n, k, &VerifyOptions::default()).map_err(|e| e.to_string())?;
            expect_proven(&report, layouts)?;
        }
        Ok("280 and 1980 layouts refuted".into())
    });
}

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CaseRecord, VerificationReport, VerificationSuiteResult};
use crate::classify::{in_g2_with, in_gamma_le2_structural, ClauseSet};
use crate::critical::{
    critical_ideal, forb_search, gamma_by_components, generalized_laplacian, subsets, CorankWitness, GammaCache,
};
use crate::graph::families::*;
use crate::graph::{canonical_code, contains_induced, emit_graph6, enumerate_connected, f2_patterns, Graph};
use crate::ideal::{contains_with_budget, decide_triviality, Budget, Ideal};
use crate::poly::{parse_polynomial, MinorCache};
use crate::snf::{
    critical_group, determinantal_divisors, f_count, reduced_laplacian, smith_normal_form, InvariantFactors,
};
use crate::tables::{i3_admissible, verify_i3, verify_minor_table, Family, TableMode};

fn g6(g: &Graph) -> String {
    emit_graph6(g).unwrap_or_else(|_| format!("{g:?}"))
}

fn connected_upto(n_max: usize) -> Vec<Graph> {
    (1..=n_max.min(crate::graph::MAX_ENUM_ORDER))
        .flat_map(|n| enumerate_connected(n).expect("order in range"))
        .collect()
}

/// Collects per-item results in input order; errors become budget events.
fn run_cases<T: Sync>(
    r: &mut VerificationSuiteResult,
    items: &[T],
    f: impl Fn(&T) -> Result<CaseRecord, String> + Sync + Send,
) {
    let out: Vec<Result<CaseRecord, String>> = items.par_iter().map(f).collect();
    for o in out {
        match o {
            Ok(c) => r.cases.push(c),
            Err(e) => r.budget_events.push(e),
        }
    }
}

/// V1: for connected `G`, `γ ≤ 1` iff complete iff `P3`-free.
pub fn v1_gamma_le1(n_max: usize, cache: &GammaCache) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new("V1", "connected G: gamma <= 1 <=> complete <=> P3-free");
    let p3 = path(3);
    run_cases(&mut r, &connected_upto(n_max), |g| {
        let gm = cache.gamma(g).map_err(|e| format!("{}: {e}", g6(g)))?;
        let complete = g.is_complete();
        let free = !contains_induced(g, &p3);
        Ok(CaseRecord::check(
            g6(g),
            "all three equal",
            format!("gamma<=1={} complete={complete} P3-free={free}", gm <= 1),
            (gm <= 1) == complete && complete == free,
        ))
    });
    r.finish(t.elapsed())
}

/// V2: each forbidden pattern has `γ = 3` and every vertex deletion `γ ≤ 2`.
pub fn v2_f2_criticality(cache: &GammaCache) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new("V2", "each F2 graph has gamma = 3 and every vertex deletion gamma <= 2");
    let pats: Vec<(String, Graph)> = f2_patterns().iter().map(|(n, g)| (n.to_string(), g.clone())).collect();
    run_cases(&mut r, &pats, |(name, g)| {
        let gm = cache.gamma(g).map_err(|e| format!("{name}: {e}"))?;
        let dels = (0..g.order())
            .map(|v| gamma_by_components(&g.delete_vertex(v)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("{name}: {e}"))?;
        let max_del = dels.iter().copied().max().unwrap_or(0);
        Ok(CaseRecord::check(
            format!("{name} {}", g6(g)),
            "gamma=3 max deletion<=2",
            format!("gamma={gm} max deletion={max_del}"),
            gm == 3 && max_del <= 2,
        ))
    });
    r.finish(t.elapsed())
}

fn pattern_name(g: &Graph) -> String {
    let code = canonical_code(g);
    let named = [("P2", path(2)), ("P3", path(3))];
    for (n, h) in &named {
        if h.order() == g.order() && canonical_code(h) == code {
            return n.to_string();
        }
    }
    for (n, h) in f2_patterns().iter() {
        if h.order() == g.order() && canonical_code(h) == code {
            return n.to_string();
        }
    }
    g6(g)
}

/// V3: the minimal forbidden graphs found by exhaustive search.
pub fn v3_forb(n_max: usize, cache: &GammaCache) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new(
        "V3",
        "forb_search(2,6) = F2, forb_search(1,5) = {P3}, forb_search(0,4) = {P2}",
    );
    let f2: Vec<(String, usize)> = f2_patterns().iter().map(|(n, g)| (n.to_string(), g.order())).collect();
    let runs: [(usize, usize, Vec<(String, usize)>); 3] = [
        (2, 6, f2),
        (1, 5, vec![("P3".into(), 3)]),
        (0, 4, vec![("P2".into(), 2)]),
    ];
    for (k, bound, expect) in runs {
        let b = bound.min(n_max);
        match forb_search(k, b, cache) {
            Ok(found) => {
                let got: BTreeSet<String> = found.iter().map(pattern_name).collect();
                let want: BTreeSet<String> = expect.into_iter().filter(|(_, n)| *n <= b).map(|(s, _)| s).collect();
                r.cases.push(CaseRecord::new(
                    format!("forb_search({k},{b})"),
                    want.into_iter().collect::<Vec<_>>().join(","),
                    got.into_iter().collect::<Vec<_>>().join(","),
                ));
            }
            Err(e) => r.budget_events.push(format!("forb_search({k},{b}): {e}")),
        }
    }
    r.finish(t.elapsed())
}

/// V4: `γ ≤ 2` iff `F2`-free iff the complement recogniser fires.
pub fn v4_main_classification(n_max: usize, cache: &GammaCache) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new(
        "V4",
        "connected G: gamma <= 2 <=> F2-free <=> complement recogniser fires",
    );
    let pats = f2_patterns();
    run_cases(&mut r, &connected_upto(n_max), |g| {
        let gm = cache.gamma(g).map_err(|e| format!("{}: {e}", g6(g)))?;
        let free = pats.first_hit(g).is_none();
        let fam = in_gamma_le2_structural(g).map_err(|e| e.to_string())?;
        let ok = (gm <= 2) == free && free == fam.is_member() && fam.revalidate(g);
        Ok(CaseRecord::check(
            g6(g),
            "all three equal",
            format!("gamma<=2={} F2-free={free} recogniser={}", gm <= 2, fam.is_member()),
            ok,
        ))
    });
    r.finish(t.elapsed())
}

fn triples(block_max: usize, family: Family) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=block_max {
        for n in 0..=block_max {
            for o in 0..=block_max {
                if m + n + o >= 4 && i3_admissible(family, m, n, o).is_ok() {
                    out.push((m, n, o));
                }
            }
        }
    }
    out
}

/// V5: computed `I_3` equals the presented ideal, which is non-trivial.
pub fn v5_i3(block_max: usize) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new(
        "V5",
        "I3 of K_{m,n,o} and T_n v (K_m+K_o) equals the presentation and is non-trivial",
    );
    let mut items = Vec::new();
    for f in [Family::Kmno, Family::TnJoinKmKo] {
        items.extend(triples(block_max, f).into_iter().map(|p| (f, p)));
    }
    run_cases(&mut r, &items, |&(f, (m, n, o))| {
        let c = verify_i3(f, m, n, o).map_err(|e| format!("{f}({m},{n},{o}): {e}"))?;
        let computed = if c.pass() {
            "equal, non-trivial".to_string()
        } else {
            format!(
                "presented outside computed {:?}; computed outside presented {:?}; presented trivial {}",
                c.presented_not_in_computed, c.computed_not_in_presented, c.presented_trivial
            )
        };
        Ok(CaseRecord::new(
            format!("{f}({m},{n},{o})"),
            "equal, non-trivial",
            computed,
        ))
    });
    r.finish(t.elapsed())
}

/// V6: the 3-minor tables, as printed (cases) and corrected (errata).
pub fn v6_minor_tables(block_max: usize) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new("V6", "computed 3-minors equal the reference tables");
    let mut items = Vec::new();
    for f in Family::ALL {
        for m in 1..=block_max {
            for n in 1..=block_max {
                let os: Vec<usize> = if f.has_z() { (1..=block_max).collect() } else { vec![0] };
                for o in os {
                    items.push((f, m, n, o));
                }
            }
        }
    }
    for mode in [TableMode::Printed, TableMode::Corrected] {
        let out: Vec<Result<CaseRecord, String>> = items
            .par_iter()
            .map(|&(f, m, n, o)| {
                let c = verify_minor_table(f, m, n, o, mode).map_err(|e| e.to_string())?;
                let computed = if c.pass() {
                    "equal".to_string()
                } else {
                    format!(
                        "missing from table {:?}; not minors {:?}",
                        c.missing_from_table, c.extra_in_table
                    )
                };
                let input = if f.has_z() {
                    format!("{f}({m},{n},{o})")
                } else {
                    format!("{f}({m},{n})")
                };
                Ok(CaseRecord::new(input, "equal", computed))
            })
            .collect();
        for o in out {
            match (o, mode) {
                (Ok(c), TableMode::Printed) => r.cases.push(c),
                (Ok(c), TableMode::Corrected) => r.errata.push(c),
                (Err(e), _) => r.budget_events.push(e),
            }
        }
    }
    r.finish(t.elapsed())
}

/// Invariant factors of the reduced Laplacian of `K_n∖M_k` as stated for
/// `n ≥ 2k+1`, padded with ones to `n - 1` entries.
pub fn matching_factors(n: u64, k: u64) -> Option<InvariantFactors> {
    let mut d: Vec<u64> = Vec::new();
    if n >= 2 * k + 2 {
        d.extend(std::iter::repeat_n(n, (n - 2 * k - 2) as usize));
        d.extend(std::iter::repeat_n(n * (n - 2), k as usize));
    } else if n == 2 * k + 1 {
        d.push(n - 2);
        d.extend(std::iter::repeat_n(n * (n - 2), k as usize - 1));
    } else {
        return None;
    }
    while d.len() < (n - 1) as usize {
        d.push(1);
    }
    Some(InvariantFactors::from_u64(&d))
}

/// V7: critical groups of `K_n∖M_k`, and `γ`-criticality when `n = 2k+2`.
pub fn v7_matching(snf_max: usize, crit_max: usize) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new(
        "V7",
        "SNF of K_n minus M_k matches the stated multiset; K_{2k+2} minus M_k is gamma-critical with gamma = k+1",
    );
    for n in 2..=snf_max {
        for k in 1..=n / 2 {
            let Some(want) = matching_factors(n as u64, k as u64) else {
                continue;
            };
            let g = matching_removed(n, k).expect("k <= n/2");
            let got = critical_group(&g).map(|c| c.factors);
            let computed = match &got {
                Ok(f) => format!("{:?}", f.to_u64().unwrap_or_default()),
                Err(e) => e.to_string(),
            };
            r.cases.push(CaseRecord::new(
                format!("SNF K{n}-M{k}"),
                format!("{:?}", want.to_u64().unwrap()),
                computed,
            ));
        }
    }
    let mut crit = Vec::new();
    let mut k = 1;
    while 2 * k + 2 <= crit_max {
        crit.push(k);
        k += 1;
    }
    run_cases(&mut r, &crit, |&k| {
        let n = 2 * k + 2;
        let g = matching_removed(n, k).expect("k <= n/2");
        let gm = crate::critical::gamma(&g).map_err(|e| e.to_string())?;
        let critical = crate::critical::is_gamma_critical(&g).map_err(|e| e.to_string())?;
        Ok(CaseRecord::new(
            format!("critical K{n}-M{k}"),
            format!("gamma={} critical=true", k + 1),
            format!("gamma={gm} critical={critical}"),
        ))
    });
    r.finish(t.elapsed())
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

/// V8: the seven-vertex example with `γ = 5` and no unit 5-minor.
pub fn v8_example() -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new(
        "V8",
        "example graph: gamma = 5, no unit 5-minor, the two quoted 5-minors are x2+x5+x2x5 and -(1+x2+x5+x2x5), their ideal is trivial",
    );
    let g = unit_free_corank5_example();
    let input = g6(&g);
    match crate::critical::algebraic_corank(&g) {
        Ok(c) => {
            let w = match &c.witness {
                Some(CorankWitness::GroebnerUnit { .. }) => "groebner",
                Some(CorankWitness::UnitMinor { .. }) => "unit minor",
                Some(CorankWitness::ConstantGcd { .. }) => "constant gcd",
                None => "none",
            };
            let verified = c.witness.as_ref().is_some_and(|w| w.verify(&g));
            r.cases.push(CaseRecord::new(
                format!("{input} gamma"),
                "gamma=5 certificate=groebner verified=true",
                format!("gamma={} certificate={w} verified={verified}", c.gamma),
            ));
        }
        Err(e) => r.budget_events.push(e.to_string()),
    }
    let l = generalized_laplacian(&g);
    let names = l.names().to_vec();
    let mut cache = MinorCache::new(l.matrix());
    let subs = subsets(7, 5);
    let mut units = 0;
    let mut scanned = 0;
    for a in &subs {
        for b in &subs {
            scanned += 1;
            if cache.minor(a, b).is_unit() {
                units += 1;
            }
        }
    }
    r.cases.push(CaseRecord::new(
        format!("{input} unit 5-minors"),
        "441 submatrices, 0 units",
        format!("{scanned} submatrices, {units} units"),
    ));
    let p = |s: &str| parse_polynomial(s, &names, crate::critical::ORDER).expect("literal");
    let quoted: [(&str, [usize; 5], [usize; 5], &str); 2] = [
        ("f1", [0, 1, 2, 3, 4], [1, 2, 4, 5, 6], "x2 + x5 + x2*x5"),
        ("f2", [0, 1, 2, 4, 5], [1, 3, 4, 5, 6], "-(1 + x2 + x5 + x2*x5)"),
    ];
    for (name, rows, cols, claim) in quoted {
        let d = cache.minor(&rows, &cols);
        r.cases.push(CaseRecord::new(
            format!("{input} {name} = det L[{:?};{:?}]", one_based(&rows), one_based(&cols)),
            p(claim).render(&names),
            d.render(&names),
        ));
    }
    let pair = Ideal::new(
        vec![p("x2 + x5 + x2*x5"), p("-(1 + x2 + x5 + x2*x5)")],
        crate::critical::ORDER,
    );
    match decide_triviality(&pair, Budget::from_env()) {
        Ok(t) => r.cases.push(CaseRecord::new(
            "<f1, f2>",
            "trivial=true",
            format!("trivial={}", t.is_trivial()),
        )),
        Err(e) => r.budget_events.push(e.to_string()),
    }
    // the same pattern with x3 in place of x2 does occur
    let found: [([usize; 5], [usize; 5], &str); 2] = [
        ([0, 1, 2, 4, 5], [2, 3, 4, 5, 6], "x3 + x5 + x3*x5"),
        ([0, 1, 2, 3, 4], [1, 2, 4, 5, 6], "-(1 + x3 + x5 + x3*x5)"),
    ];
    let mut gens = Vec::new();
    for (rows, cols, claim) in found {
        let d = cache.minor(&rows, &cols);
        r.errata.push(CaseRecord::new(
            format!("{input} det L[{:?};{:?}]", one_based(&rows), one_based(&cols)),
            p(claim).render(&names),
            d.render(&names),
        ));
        gens.push(d);
    }
    if let Ok(t) = decide_triviality(&Ideal::new(gens, crate::critical::ORDER), Budget::from_env()) {
        r.errata.push(CaseRecord::new(
            "ideal of the two minors above",
            "trivial=true",
            format!("trivial={}", t.is_trivial()),
        ));
    }
    r.finish(t.elapsed())
}

/// V9: the `𝒢2` clause lists against `f1 = 2`, printed (cases) and corrected
/// (errata), plus the inline examples.
pub fn v9_g2(sweep_bound: usize) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new("V9", "G2 clause verdict equals f1 = 2 from the Smith normal form");
    let mut items = Vec::new();
    for m in 0..=sweep_bound {
        for n in 0..=sweep_bound {
            for o in 0..=sweep_bound {
                let s = m + n + o;
                if !(2..=sweep_bound).contains(&s) {
                    continue;
                }
                if m >= n && n >= o {
                    items.push((format!("K({m},{n},{o})"), complete_multipartite(&[m, n, o])));
                }
                if m >= o {
                    items.push((format!("T(m={m},n={n},o={o})"), t_join_cliques(n, m, o)));
                }
            }
        }
    }
    items.retain(|(_, g)| g.is_connected());
    for set in [ClauseSet::Printed, ClauseSet::Corrected] {
        let out: Vec<Result<CaseRecord, String>> = items
            .par_iter()
            .map(|(id, g)| {
                let v = in_g2_with(g, set).map_err(|e| format!("{id}: {e}"))?;
                Ok(CaseRecord::check(
                    id.clone(),
                    format!("member={}", v.f1 == 2),
                    format!(
                        "member={} clause={}",
                        v.member,
                        v.clause.as_ref().map(|c| c.condition).unwrap_or("none")
                    ),
                    v.oracle_agrees,
                ))
            })
            .collect();
        for o in out {
            match (o, set) {
                (Ok(c), ClauseSet::Printed) => r.cases.push(c),
                (Ok(c), ClauseSet::Corrected) => r.errata.push(c),
                (Err(e), _) => r.budget_events.push(e),
            }
        }
    }
    let facts: [(&str, Graph, usize); 4] = [
        ("f1(c(S3))", cone(&star(3)), 2),
        ("f1(S3)", star(3), 3),
        ("f1(K6-2P2)", matching_removed(6, 2).unwrap(), 3),
        ("f1(K5-2P2)", matching_removed(5, 2).unwrap(), 2),
    ];
    for (id, g, want) in facts {
        match f_count(&g, 1) {
            Ok(f) => r.cases.push(CaseRecord::new(id, want, f)),
            Err(e) => r.budget_events.push(format!("{id}: {e}")),
        }
    }
    r.finish(t.elapsed())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// P1: properties that hold independently of the classification.
pub fn p1_properties(n_max: usize, samples: usize, seed: u64) -> VerificationSuiteResult {
    let t = Instant::now();
    let mut r = VerificationSuiteResult::new(
        "P1",
        "ideal nesting, gamma monotone and additive, gamma <= f1, SNF chain, base-vertex independence, determinantal divisors",
    );
    let n_rand = n_max.clamp(2, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(2..=n_rand);
            random_graph(&mut rng, n)
        })
        .collect();
    let budget = Budget::from_env();

    run_cases(&mut r, &graphs, |g| {
        let n = g.order() as i64;
        let mut ok = true;
        let mut detail = Vec::new();
        for k in 1..=n {
            let big = critical_ideal(g, k).ideal;
            let small = critical_ideal(g, k - 1).ideal;
            match contains_with_budget(&small, &big, budget) {
                Ok(true) => {}
                Ok(false) => {
                    ok = false;
                    detail.push(format!("I{k} not in I{}", k - 1));
                }
                Err(e) => return Err(format!("nesting {}: {e}", g6(g))),
            }
        }
        Ok(CaseRecord::check(
            format!("nesting {}", g6(g)),
            "I_(k+1) in I_k for all k",
            detail.join("; "),
            ok,
        ))
    });

    run_cases(&mut r, &graphs, |g| {
        let whole = gamma_by_components(g).map_err(|e| e.to_string())?;
        let worst = (0..g.order())
            .map(|v| gamma_by_components(&g.delete_vertex(v)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?
            .into_iter()
            .max()
            .unwrap_or(0);
        Ok(CaseRecord::check(
            format!("monotone {}", g6(g)),
            "max gamma(G-v) <= gamma(G)",
            format!("{worst} <= {whole}"),
            worst <= whole,
        ))
    });

    let pairs: Vec<(Graph, Graph)> = graphs
        .chunks(2)
        .filter(|c| c.len() == 2 && c[0].order() + c[1].order() <= crate::critical::MAX_GAMMA_ORDER)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect();
    run_cases(&mut r, &pairs, |(a, b)| {
        let ok = crate::critical::gamma_disjoint_sum_check(a, b).map_err(|e| e.to_string())?;
        Ok(CaseRecord::check(
            format!("additive {} + {}", g6(a), g6(b)),
            "gamma(G+H) = gamma(G) + gamma(H)",
            ok,
            ok,
        ))
    });

    let connected = connected_upto(n_max.min(7));
    run_cases(&mut r, &connected, |g| {
        let gm = crate::critical::gamma(g).map_err(|e| e.to_string())?;
        let f = critical_group(g).map_err(|e| e.to_string())?;
        let f1 = f.f_count(1);
        let n = g.order();
        let mut ok = gm <= f1 && f.factors.is_chain();
        for s in 0..n.saturating_sub(1) {
            let other = smith_normal_form(&reduced_laplacian(g, s).expect("s < n"));
            ok &= other == f.factors;
        }
        Ok(CaseRecord::check(
            format!("snf {}", g6(g)),
            "gamma <= f1, chain, same factors from every base vertex",
            format!(
                "gamma={gm} f1={f1} factors={:?}",
                f.factors.to_u64().unwrap_or_default()
            ),
            ok,
        ))
    });

    let bridge: Vec<Graph> = connected.iter().filter(|g| g.order() <= 6).cloned().collect();
    run_cases(&mut r, &bridge, |g| {
        let m = reduced_laplacian(g, g.order() - 1).expect("non-empty");
        let f = smith_normal_form(&m);
        let dd = determinantal_divisors(&m);
        let mut acc = BigInt::from(1);
        let mut ok = true;
        for (k, d) in f.as_slice().iter().enumerate() {
            acc *= d;
            ok &= acc == dd[k];
        }
        Ok(CaseRecord::check(
            format!("divisors {}", g6(g)),
            "d1...dk = gcd of k-minors",
            format!("{:?}", dd.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
            ok,
        ))
    });
    r.finish(t.elapsed())
}

/// All suites. `n_max` bounds the exhaustive graph sweeps (V1, V3, V4, P1),
/// `sweep_bound` the parameter sweep of V9; `jobs = 0` uses every core.
pub fn verify_all(n_max: usize, sweep_bound: usize, jobs: usize) -> VerificationReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        let cache = GammaCache::new();
        let suites = vec![
            v1_gamma_le1(n_max, &cache),
            v2_f2_criticality(&cache),
            v3_forb(n_max, &cache),
            v4_main_classification(n_max, &cache),
            v5_i3(4),
            v6_minor_tables(4),
            v7_matching(10, 8),
            v8_example(),
            v9_g2(sweep_bound),
            p1_properties(n_max, 100, 1),
        ];
        VerificationReport {
            n_max,
            sweep_bound,
            pass: suites.iter().all(|s| s.pass),
            suites,
        }
    })
}

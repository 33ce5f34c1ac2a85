//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Every tolerance and time limit is pinned below.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jordan_kit::constants::{aut_constants, jordan_constant, lp_constants, StructureProfile};
use jordan_kit::group::{closure, direct_product, Group, Subgroup, DEFAULT_CAP};
use jordan_kit::lab::{
    center, chermak_delgado, enumerate_subgroups, is_p_prime, minimal_index_normal_abelian,
    minimal_index_normal_abelian_by_enumeration, normal_subgroups, ENUMERATION_LIMIT,
};
use jordan_kit::primitives::{prime_factors, GroupElement};
use jordan_kit::survey::{
    fit_family_constant, run_survey, survey_entry, to_jsonl, Catalog, PrimeChoice, SurveyOptions,
};
use jordan_kit::witness::{
    complement_by_cocycle, complement_by_search, product_witness, quotient_witness_general,
    quotient_witness_pprime, schur_zassenhaus, ExtensionInstance, SEARCH_BUDGET,
};

const LIMIT_CLOSURE: Duration = Duration::from_secs(10);
const LIMIT_PRODUCT: Duration = Duration::from_secs(60);
const LIMIT_COMPLEMENT: Duration = Duration::from_secs(60);
const LIMIT_EXTENSION: Duration = Duration::from_secs(60);
const LIMIT_SL2: Duration = Duration::from_secs(120);
const LIMIT_CONSTANTS: Duration = Duration::from_secs(1);
const LIMIT_CHERMAK_DELGADO: Duration = Duration::from_secs(60);
const LIMIT_SUITE: Duration = Duration::from_secs(300);

const MIN_PRODUCT_INSTANCES: usize = 50;
const MAX_PRODUCT_ORDER: usize = 2000;
const MIN_COPRIME_PAIRS: usize = 20;
const MAX_COMPLEMENT_ORDER: usize = 2000;
const MIN_EXTENSIONS: usize = 20;
const MAX_EXTENSION_ORDER: usize = 400;
const CONSTANT_PROFILES: usize = 20;
const MAX_CHERMAK_DELGADO_ORDER: usize = 200;
const SEED: u64 = 0x5EED;

type Outcome = Result<String, String>;

fn ensure(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok && failures.len() < 5 {
        failures.push(what());
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

/// Every n×n matrix over F_p by brute force (n = 2), split by determinant.
fn brute_force_matrices(p: i64, det_one: bool) -> BTreeSet<GroupElement> {
    let mut out = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let det = (a * d - b * c).rem_euclid(p);
                    if det == 0 || (det_one && det != 1) {
                        continue;
                    }
                    out.insert(GroupElement::matrix(p as u32, &[vec![a, b], vec![c, d]]).unwrap());
                }
            }
        }
    }
    out
}

fn criterion_closure(catalog: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    let cases = [
        ("GL(2,2)", 2, false, 6),
        ("GL(2,3)", 3, false, 48),
        ("GL(2,5)", 5, false, 480),
        ("SL(2,3)", 3, true, 24),
        ("SL(2,5)", 5, true, 120),
    ];
    let mut seen = Vec::new();
    for (name, p, det_one, order) in cases {
        let built_from = &catalog.get(name).ok_or(format!("{name} missing"))?.group;
        let gens: Vec<GroupElement> = built_from
            .generators()
            .iter()
            .map(|&x| built_from.element(x).clone())
            .collect();
        let g = &closure(&gens, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let brute = brute_force_matrices(p, det_one);
        let built: BTreeSet<GroupElement> = g.elements().iter().cloned().collect();
        ensure(&mut failures, brute.len() == order, || {
            format!("{name}: brute force counted {}", brute.len())
        });
        ensure(&mut failures, g.order() == order && built == brute, || {
            format!("{name}: closure gave {} elements", g.order())
        });
        seen.push(format!("{name}={}", g.order()));
    }
    finish(failures, seen.join(" "))
}

fn inner_oracle(s: &Subgroup, p: u64) -> Subgroup {
    let (h, inclusion) = s.to_group();
    let best = minimal_index_normal_abelian(&h, p, h.order()).unwrap();
    inclusion.image_of_subgroup(&best.subgroup).unwrap()
}

fn criterion_products(catalog: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    let groups: Vec<&Group> = catalog
        .entries
        .iter()
        .map(|e| &e.group)
        .filter(|g| g.order() <= 60)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut instances, mut with_p) = (0, 0);
    let mut attempts = 0;
    while instances < MIN_PRODUCT_INSTANCES + 10 && attempts < 1000 {
        attempts += 1;
        let g1 = groups[rng.gen_range(0..groups.len())];
        let g2 = groups[rng.gen_range(0..groups.len())];
        let Ok(prod) = direct_product(g1, g2, MAX_PRODUCT_ORDER) else {
            continue;
        };
        let gamma = Subgroup::random(&prod.group, rng.gen_range(1..=3), rng.gen());
        let mut primes = vec![0];
        primes.extend(prime_factors(gamma.order() as u64));
        let p = primes[rng.gen_range(0..primes.len())];
        let a1 = inner_oracle(&prod.proj_left.image_of_subgroup(&gamma).unwrap(), p);
        let a2 = inner_oracle(&prod.proj_right.image_of_subgroup(&gamma).unwrap(), p);
        let w = match product_witness(&prod, &gamma, &a1, &a2, p) {
            Ok(w) => w,
            Err(e) => {
                ensure(&mut failures, false, || format!("{} x {}: {e}", g1.name(), g2.name()));
                continue;
            }
        };
        instances += 1;
        let r = &w.report;
        ensure(&mut failures, r.certificates.all(), || {
            format!("{} x {}: certificates {:?}", g1.name(), g2.name(), r.certificates)
        });
        ensure(&mut failures, r.index <= r.bound && r.bound_satisfied, || {
            format!("{} x {}: index {} > bound {}", g1.name(), g2.name(), r.index, r.bound)
        });
        if p > 0 {
            with_p += 1;
            ensure(&mut failures, r.checks.get("chain_identity") == Some(&true), || {
                format!("{} x {}: chain identity failed, {:?}", g1.name(), g2.name(), r.chain_values)
            });
        }
    }
    ensure(&mut failures, instances >= MIN_PRODUCT_INSTANCES, || {
        format!("only {instances} instances")
    });
    finish(failures, format!("{instances} instances, {with_p} with p > 0"))
}

fn coprime_pairs(catalog: &Catalog, max_order: usize) -> Vec<(Group, Subgroup)> {
    let mut out = Vec::new();
    for e in &catalog.entries {
        if e.group.order() > max_order {
            continue;
        }
        for n in normal_subgroups(&e.group) {
            if !n.is_trivial()
                && !n.is_whole()
                && num_integer::gcd(n.order(), n.index()) == 1
            {
                out.push((e.group.clone(), n));
            }
        }
    }
    out
}

fn criterion_complements(catalog: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    let pairs = coprime_pairs(catalog, MAX_COMPLEMENT_ORDER);
    let mut compared = 0;
    for (h, n) in &pairs {
        let label = || format!("{} / order {}", h.name(), n.order());
        match schur_zassenhaus(h, n) {
            Ok(c) => {
                ensure(&mut failures, c.intersect(n).unwrap().is_trivial(), || {
                    format!("{}: C meets N", label())
                });
                ensure(&mut failures, c.order() * n.order() == h.order(), || {
                    format!("{}: |C| = {}", label(), c.order())
                });
            }
            Err(e) => ensure(&mut failures, false, || format!("{}: {e}", label())),
        }
        if n.is_abelian_exhaustive() {
            compared += 1;
            let cocycle = complement_by_cocycle(h, n).map(|c| c.order());
            let search = complement_by_search(h, n, SEARCH_BUDGET).map(|c| c.order());
            ensure(
                &mut failures,
                matches!((&cocycle, &search), (Ok(a), Ok(b)) if a == b),
                || format!("{}: cocycle {cocycle:?} vs search {search:?}", label()),
            );
        }
    }
    ensure(&mut failures, pairs.len() >= MIN_COPRIME_PAIRS, || {
        format!("only {} coprime pairs", pairs.len())
    });
    finish(
        failures,
        format!("{} coprime pairs, {compared} with abelian kernel compared", pairs.len()),
    )
}

fn criterion_extensions(catalog: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    let (mut instances, mut general, mut pprime) = (0, 0, 0);
    for e in &catalog.entries {
        let h = &e.group;
        if h.order() > MAX_EXTENSION_ORDER {
            continue;
        }
        let primes = prime_factors(h.order() as u64);
        for k in normal_subgroups(h) {
            let ext = ExtensionInstance::new(h, k.clone()).unwrap();
            instances += 1;
            let label = |p: u64| format!("{} / order {} at p = {p}", h.name(), k.order());
            for &p in primes.iter().chain([7, 11].iter()) {
                let orders = ext.sylow_orders(p);
                ensure(&mut failures, orders.multiplicative(), || {
                    format!("{}: {orders:?}", label(p))
                });
                let base = minimal_index_normal_abelian(h, p, ENUMERATION_LIMIT).unwrap();
                let gamma_best = minimal_index_normal_abelian(ext.gamma(), p, ENUMERATION_LIMIT)
                    .unwrap()
                    .index;
                match quotient_witness_general(&ext, p, &base.subgroup, None) {
                    Ok(w) => {
                        general += 1;
                        let r = &w.report;
                        ensure(&mut failures, !r.falsified(), || {
                            format!("{}: general {:?}", label(p), r)
                        });
                        ensure(&mut failures, gamma_best <= r.index, || {
                            format!("{}: oracle {gamma_best} > witness {}", label(p), r.index)
                        });
                    }
                    Err(e) => ensure(&mut failures, false, || format!("{}: {e}", label(p))),
                }
                if !is_p_prime(ext.gamma(), p) {
                    continue;
                }
                match quotient_witness_pprime(&ext, p, base.index) {
                    Ok(w) => {
                        pprime += 1;
                        let r = &w.report;
                        ensure(&mut failures, !r.falsified(), || {
                            format!("{}: p' route {:?}", label(p), r)
                        });
                        ensure(&mut failures, gamma_best <= r.index, || {
                            format!("{}: oracle {gamma_best} > p' witness {}", label(p), r.index)
                        });
                    }
                    // The kernel has no normal Sylow subgroup at p.
                    Err(jordan_kit::Error::Precondition(_)) => {}
                    Err(e) => ensure(&mut failures, false, || format!("{}: {e}", label(p))),
                }
            }
        }
    }
    ensure(&mut failures, instances >= MIN_EXTENSIONS, || {
        format!("only {instances} extensions")
    });
    ensure(&mut failures, pprime > 0, || "p' route never applied".into());
    finish(
        failures,
        format!("{instances} extensions, {general} general and {pprime} p' witnesses"),
    )
}

fn criterion_sl2(catalog: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    let mut records = Vec::new();
    for p in [3u64, 5, 7] {
        let entry = catalog.get(&format!("SL(2,{p})")).ok_or("SL(2,p) missing")?;
        let g = &entry.group;
        let best = minimal_index_normal_abelian(g, p, ENUMERATION_LIMIT).unwrap();
        let scan = minimal_index_normal_abelian_by_enumeration(g, p, ENUMERATION_LIMIT).unwrap();
        let expected = p * (p * p - 1) / 2;
        ensure(&mut failures, best.subgroup == center(g) && best.subgroup.order() == 2, || {
            format!("SL(2,{p}): optimum has order {}", best.subgroup.order())
        });
        ensure(&mut failures, best.index == expected && scan.index == expected, || {
            format!("SL(2,{p}): index {} / scan {} != {expected}", best.index, scan.index)
        });
        let record = survey_entry(entry, p, ENUMERATION_LIMIT);
        let ratio = record.ratio.ok_or("no ratio")?;
        ensure(&mut failures, ratio.num < ratio.den, || format!("SL(2,{p}): ratio {ratio}"));
        records.push(record);
    }
    let fit = fit_family_constant(&records).map_err(|e| e.to_string())?;
    ensure(&mut failures, fit.fitted.to_string() == "24/49", || {
        format!("fitted {}", fit.fitted)
    });
    let ratios: Vec<String> = records.iter().map(|r| r.ratio.unwrap().to_string()).collect();
    finish(
        failures,
        format!("ratios {}; fitted J' = {} at {}", ratios.join(", "), fit.fitted, fit.argmax),
    )
}

fn big(x: impl Into<u64>) -> BigUint {
    BigUint::from(x.into())
}

fn criterion_constants() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let power = |base: &BigUint, e: u64| (0..e).fold(big(1u32), |acc, _| acc * base);
    let mut profiles: Vec<(u32, u32, u64, u32)> = (0..CONSTANT_PROFILES - 1)
        .map(|_| (rng.gen_range(1..5), rng.gen_range(0..5), rng.gen_range(1..10), rng.gen_range(1..5)))
        .collect();
    profiles.push((1, 0, 1, 1));
    for (c, r, kp, ell) in profiles {
        let profile = StructureProfile::new(c, r, rng.gen_range(1..8), kp)
            .and_then(|p| p.with_ell(ell))
            .map_err(|e| e.to_string())?;
        let j: u64 = rng.gen_range(1..200);
        let jp: u64 = rng.gen_range(1..200);
        let e = 3 * (r as u64 + 1) * c as u64;
        let want_j = big(c) * power(&big(j), c as u64);
        let want_jp = big(c) * power(&big(jp), c as u64) * power(&big(kp), e);
        let got_j = jordan_constant(&profile, &big(j)).unwrap();
        let (got_jp, got_e) = lp_constants(&profile, &big(jp)).unwrap();
        let aut = aut_constants(&profile, &big(j), &got_jp).unwrap();
        let label = format!("profile c={c} r={r} kp={kp} ell={ell}");
        ensure(&mut failures, got_j == want_j, || format!("{label}: J_G"));
        ensure(&mut failures, got_e == e && got_jp == want_jp, || format!("{label}: J'_G, e_G"));
        ensure(&mut failures, aut.j_x == big(ell) * power(&big(j), ell as u64), || {
            format!("{label}: J_X")
        });
        ensure(&mut failures, aut.jp_x == big(ell) * power(&want_jp, ell as u64), || {
            format!("{label}: J'_X")
        });
        ensure(&mut failures, aut.e_x == 3 * (r as u64 + 1) * ell as u64, || {
            format!("{label}: e_X")
        });
        if (c, r, kp) == (1, 0, 1) {
            ensure(&mut failures, (got_jp.clone(), got_e) == (big(jp), 3), || {
                format!("{label}: no collapse to (J'(n), 3)")
            });
        }
    }
    finish(failures, format!("{CONSTANT_PROFILES} profiles exact"))
}

fn criterion_chermak_delgado(catalog: &Catalog) -> Outcome {
    let mut failures = Vec::new();
    let mut groups = 0;
    for e in &catalog.entries {
        let g = &e.group;
        if g.order() > MAX_CHERMAK_DELGADO_ORDER {
            continue;
        }
        groups += 1;
        let m = chermak_delgado(g, ENUMERATION_LIMIT).unwrap();
        ensure(
            &mut failures,
            m.is_abelian_exhaustive() && m.is_normal() && center(g).is_subgroup_of(&m),
            || format!("{}: M is not an abelian normal overgroup of the center", g.name()),
        );
        let m_index = m.index() as u64;
        for a in enumerate_subgroups(g, ENUMERATION_LIMIT).unwrap() {
            if a.is_abelian() {
                let ai = a.index() as u64;
                ensure(&mut failures, m_index <= ai * ai, || {
                    format!("{}: [G:M] = {m_index} > [G:A]^2 = {}", g.name(), ai * ai)
                });
            }
        }
    }
    finish(failures, format!("{groups} groups"))
}

fn criterion_determinism(catalog: &Catalog) -> Outcome {
    let run = |jobs| {
        let options = SurveyOptions {
            primes: vec![PrimeChoice::Entry],
            jobs,
            ..Default::default()
        };
        to_jsonl(&run_survey(catalog, &options).unwrap()).unwrap()
    };
    let one = run(1);
    let eight = run(8);
    if one == eight {
        Ok(format!("{} records, {} bytes identical", one.lines().count(), one.len()))
    } else {
        Err("jobs 1 and jobs 8 differ".into())
    }
}

fn main() {
    let suite = Instant::now();
    let catalog = Catalog::builtin(DEFAULT_CAP).expect("bundled catalog builds");
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(u32, &str, Duration, Check)> = vec![
        (1, "closure orders", LIMIT_CLOSURE, Box::new(|| criterion_closure(&catalog))),
        (2, "product witnesses", LIMIT_PRODUCT, Box::new(|| criterion_products(&catalog))),
        (3, "Schur-Zassenhaus complements", LIMIT_COMPLEMENT, Box::new(|| criterion_complements(&catalog))),
        (4, "extension witnesses", LIMIT_EXTENSION, Box::new(|| criterion_extensions(&catalog))),
        (5, "SL(2,p) scaling", LIMIT_SL2, Box::new(|| criterion_sl2(&catalog))),
        (6, "constant formulas", LIMIT_CONSTANTS, Box::new(criterion_constants)),
        (7, "Chermak-Delgado", LIMIT_CHERMAK_DELGADO, Box::new(|| criterion_chermak_delgado(&catalog))),
        (8, "survey determinism", LIMIT_SUITE, Box::new(|| criterion_determinism(&catalog))),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(s) if elapsed > *limit => Err(format!("{s}; took {elapsed:.2?} > {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(s) => println!("criterion {n} ({name}): PASS in {elapsed:.2?}: {s}"),
            Err(s) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL in {elapsed:.2?}: {s}");
            }
        }
    }
    let total = suite.elapsed();
    if total > LIMIT_SUITE {
        failed += 1;
        println!("suite: FAIL, took {total:.2?} > {LIMIT_SUITE:?}");
    } else {
        println!("suite: {} of {} criteria passed in {total:.2?}", criteria.len() - failed, criteria.len());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

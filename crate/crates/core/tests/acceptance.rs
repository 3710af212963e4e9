//! Acceptance checks; prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hexpivot::cli_io::random_configuration;
use hexpivot::configuration::is_canonical_path;
use hexpivot::explorer::{build_graph, components, enumerate, enumerate_slow, rigidity_scan};
use hexpivot::graph_analysis::{block_tree, find_non_cut_corner};
use hexpivot::move_model::free_space::{derive_free_space, FreeSpaceTable};
use hexpivot::move_model::{apply, cw_cycle, is_legal, legal_moves, verify_moves};
use hexpivot::planner::{min_degree, phase1, phase2, phase3, reconfigure, PlannerState};
use hexpivot::{Configuration, ModelId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check_pair(a: &Configuration, b: &Configuration) -> Result<(), String> {
    let plan = reconfigure(a, b).map_err(|e| format!("{a:?} -> {b:?}: {e}"))?;
    let end = verify_moves(a, plan.moves(), ModelId::HexMonkey).map_err(|e| format!("{a:?} -> {b:?}: {e}"))?;
    if end.same_shape(b) {
        Ok(())
    } else {
        Err(format!("{a:?} -> {b:?}: ends at {end:?}"))
    }
}

fn criterion1() -> Outcome {
    let t = Instant::now();
    let shapes = enumerate(4).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for a in &shapes {
        for b in &shapes {
            check_pair(a, b)?;
            pairs += 1;
        }
    }
    for seed in 0..200u64 {
        let a = random_configuration(5, 2 * seed);
        let b = random_configuration(5, 2 * seed + 1);
        check_pair(&a, &b)?;
        pairs += 1;
    }
    let elapsed = t.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{pairs} pairs planned and verified in {elapsed:.2?}"))
}

fn criterion2() -> Outcome {
    let expected = [(2, 3), (3, 11), (4, 44), (5, 186)];
    let mut parts = Vec::new();
    for (n, nodes) in expected {
        let g = build_graph(n, ModelId::HexMonkey).map_err(|e| e.to_string())?;
        let slow = enumerate_slow(n).len();
        let comps = components(&g).len();
        if g.nodes.len() != nodes || slow != nodes || comps != 1 {
            return Err(format!("n={n}: nodes={} slow={slow} components={comps}", g.nodes.len()));
        }
        parts.push(format!("n={n}:{nodes}"));
    }
    Ok(format!("one component each, nodes {}", parts.join(" ")))
}

fn criterion3() -> Outcome {
    for n in 2..=6 {
        let rigid = rigidity_scan(n, ModelId::HexMonkey).map_err(|e| e.to_string())?;
        if let Some(r) = rigid.first() {
            return Err(format!("n={n}: rigid shape {r:?}"));
        }
    }
    let mut cycles = 0;
    for n in 2..=6 {
        for c in enumerate(n).map_err(|e| e.to_string())? {
            let m = find_non_cut_corner(&c).map_err(|e| format!("{c:?}: {e}"))?;
            let moves = cw_cycle(&c, m).map_err(|e| format!("{c:?} corner {m}: {e}"))?;
            verify_moves(&c, &moves, ModelId::HexMonkey).map_err(|e| format!("{c:?}: {e}"))?;
            cycles += 1;
        }
    }
    Ok(format!("no rigid shapes for n=2..6; {cycles} corner cycles completed"))
}

fn criterion4() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        for c in enumerate(n).map_err(|e| e.to_string())? {
            let m = find_non_cut_corner(&c).map_err(|e| format!("{c:?}: {e}"))?;
            if !c.is_corner(m) || !c.is_connected_without(m) {
                return Err(format!("{c:?}: {m} is not a non-cut corner"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} shapes with 2<=n<=6"))
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let n: usize = rng.gen_range(10..=40);
        let c = random_configuration(n, 1000 + i);
        let tag = format!("instance {i} (n={n})");
        let mut s = PlannerState::new(c.clone());
        let n2 = 50 * n * n;
        phase1(&mut s).map_err(|e| format!("{tag}: phase1: {e}"))?;
        let p1 = s.plan().len();
        if min_degree(&s.working()) < 2 || p1 > n2 {
            return Err(format!("{tag}: phase1 min degree {} with {p1} moves", min_degree(&s.working())));
        }
        phase2(&mut s).map_err(|e| format!("{tag}: phase2: {e}"))?;
        let blocks = block_tree(&s.working()).len();
        if blocks != 1 {
            return Err(format!("{tag}: phase2 left {blocks} blocks"));
        }
        phase3(&mut s).map_err(|e| format!("{tag}: phase3: {e}"))?;
        if !is_canonical_path(s.config()) {
            return Err(format!("{tag}: phase3 did not reach the canonical path"));
        }
        let total = s.plan().len();
        if total > 50 * n * n * n {
            return Err(format!("{tag}: {total} moves"));
        }
        let end = s.plan().verify(&c).map_err(|e| format!("{tag}: {e}"))?;
        if &end != s.config() {
            return Err(format!("{tag}: replay mismatch"));
        }
        worst = worst.max(total as f64 / (n * n * n) as f64);
    }
    Ok(format!("100 instances; worst total {worst:.3}*n^3"))
}

fn criterion6() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for c in enumerate(n).map_err(|e| e.to_string())? {
            let restricted: BTreeSet<_> = legal_moves(&c, ModelId::HexRestricted).into_iter().collect();
            let monkey: BTreeSet<_> = legal_moves(&c, ModelId::HexMonkey).into_iter().collect();
            if !restricted.is_subset(&monkey) {
                return Err(format!("{c:?}: restricted moves not contained in monkey moves"));
            }
            for model in [ModelId::HexRestricted, ModelId::HexMonkey] {
                let moves = if model == ModelId::HexMonkey { &monkey } else { &restricted };
                for m in moves {
                    let after = apply(&c, m, model).map_err(|e| format!("{c:?} {m}: {e}"))?;
                    if !is_legal(&after, &m.inverse(), model) {
                        return Err(format!("{c:?}: inverse of {m} illegal under {model:?}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} moves reversed"))
}

fn criterion7() -> Outcome {
    if FreeSpaceTable::frozen() == derive_free_space(1.0, 1e-9) {
        Ok("frozen table equals swept-area derivation".into())
    } else {
        Err("frozen table differs from swept-area derivation".into())
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("planner on all n=4 pairs and 200 random n=5 pairs", criterion1),
        ("monkey graph connected for n=2..5", criterion2),
        ("no rigid shapes; corner cycles complete", criterion3),
        ("non-cut corner exists for n<=6", criterion4),
        ("phase contracts on 100 random instances", criterion5),
        ("restricted within monkey; moves reversible", criterion6),
        ("free-space table matches sweep", criterion7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS - {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL - {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

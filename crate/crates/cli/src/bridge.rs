use std::collections::BTreeMap;

use anyhow::ensure;
use mgsim::logic::{eval_algebra, eval_kripke, Formula, KripkeStructure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::commands::Outcome;

const VARS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

pub fn random_formula(rng: &mut impl Rng, depth: usize, vars: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..vars + 2) {
            0 => Formula::Bot,
            1 => Formula::Top,
            i => Formula::var(VARS[i - 2]),
        };
    }
    let op = rng.gen_range(0..6);
    let mut sub = || random_formula(rng, depth - 1, vars);
    match op {
        0 => Formula::and(sub(), sub()),
        1 => Formula::or(sub(), sub()),
        2 => Formula::imp(sub(), sub()),
        3 => Formula::sim(sub()),
        4 => Formula::nec(sub()),
        _ => Formula::pos(sub()),
    }
}

pub fn random_kripke(rng: &mut impl Rng, max_worlds: usize, max_chain: usize, vars: usize) -> KripkeStructure {
    let worlds = rng.gen_range(1..=max_worlds);
    let chain = rng.gen_range(2..=max_chain);
    let valuation: BTreeMap<String, Vec<usize>> = VARS[..vars]
        .iter()
        .map(|v| (v.to_string(), (0..worlds).map(|_| rng.gen_range(0..chain)).collect()))
        .collect();
    KripkeStructure::new(worlds, chain, valuation).expect("values drawn in range")
}

/// Evaluates random formulas on random Kripke structures and on the
/// matching functional algebras, world by world.
pub fn run(
    seed: u64,
    count: usize,
    depth: usize,
    vars: usize,
    max_worlds: usize,
    max_chain: usize,
) -> anyhow::Result<Outcome> {
    ensure!((1..=VARS.len()).contains(&vars), "--vars must lie in 1..={}", VARS.len());
    ensure!(max_worlds >= 1 && max_chain >= 2, "need at least one world and a chain of size 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for case in 0..count {
        let f = random_formula(&mut rng, depth, vars);
        let k = random_kripke(&mut rng, max_worlds, max_chain, vars);
        let (m, asg) = k.to_functional()?;
        let tuple = eval_algebra(&m, &asg, &f)?;
        let sizes = vec![k.chain; k.worlds];
        let coords = mgsim::algebra::product_coords(&sizes, tuple);
        for (w, &expected) in coords.iter().enumerate() {
            let got = eval_kripke(&k, w, &f)?;
            if got != expected {
                mismatches.push(json!({
                    "case": case,
                    "formula": f.to_string(),
                    "model": k,
                    "world": w,
                    "kripke": got,
                    "algebra": expected,
                }));
                break;
            }
        }
    }
    let text = format!("{count} cases, seed {seed}, {} mismatches\n", mismatches.len());
    let failed = !mismatches.is_empty();
    let json = json!({ "seed": seed, "count": count, "passed": !failed, "mismatches": mismatches });
    Ok(Outcome { json, text, code: u8::from(failed) })
}

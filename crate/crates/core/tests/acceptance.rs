//! Acceptance criteria 1–8. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line.

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use spectile::analysis::{can_tile, find_spectrum, is_spectrum, is_tiling, tiling_fourier_criterion, Budget, TileOutcome};
use spectile::cyclo::{cyclotomic_poly, CycInt, IntPoly};
use spectile::fourier::{full_transform, power_tiling_check, TransformMode};
use spectile::groups::{make_group, GroupSubset};

const USC_LIMIT: Duration = Duration::from_secs(60);
const GAMMA_Z15_LIMIT: Duration = Duration::from_secs(120);
const PROPERTY_LIMIT: Duration = Duration::from_secs(300);
const FUGLEDE_LIMIT: Duration = Duration::from_secs(120);
/// Absolute tolerance for float evaluation of root-of-unity sums with at most a few hundred terms.
const FLOAT_TOL: f64 = 1e-9;
/// Absolute tolerance for float sums over the ~2·10^4 elements of Gamma.
const LARGE_SUM_TOL: f64 = 1e-6;
const RANDOM_TILING_PAIRS: usize = 500;
const MAX_PAIR_GROUP_ORDER: usize = 2000;
const TRANSFORM_SAMPLES: usize = 100;
const ROOT_SUMS: usize = 10_000;
const MAX_ROOT_ORDER: u32 = 60;
const FUGLEDE_MAX_N: u32 = 8;
const SEED: u64 = 0x5eed_7115;

/// Columns of the matrix K, as printed.
const K_COLUMNS: [[u32; 5]; 6] = [
    [0, 0, 0, 0, 0],
    [0, 2, 2, 4, 4],
    [2, 0, 4, 4, 2],
    [2, 4, 0, 2, 4],
    [4, 4, 2, 0, 2],
    [4, 2, 4, 2, 0],
];

/// `3·K′`, as printed.
const K_PRIME_NUMERATORS: [[u32; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 2, 2],
    [0, 1, 0, 2, 2, 1],
    [0, 1, 2, 0, 1, 2],
    [0, 2, 2, 1, 0, 1],
    [0, 2, 1, 2, 1, 0],
];

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Run {
    code: i32,
    cert: Value,
    bytes: Vec<u8>,
    elapsed: Duration,
}

fn run_cli(args: &[&str], out: &Path) -> std::result::Result<Run, String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_spectile"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SPECTILE_BUDGET")
        .status()
        .map_err(|e| format!("cannot start binary: {e}"))?;
    let elapsed = start.elapsed();
    let bytes = std::fs::read(out).map_err(|e| format!("no certificate written: {e}"))?;
    let cert = serde_json::from_slice(&bytes).map_err(|e| format!("certificate is not JSON: {e}"))?;
    Ok(Run {
        code: status.code().unwrap_or(-1),
        cert,
        bytes,
        elapsed,
    })
}

fn step<'a>(cert: &'a Value, id: &str) -> std::result::Result<&'a Value, String> {
    cert["steps"]
        .as_array()
        .and_then(|s| s.iter().find(|s| s["step_id"] == id))
        .ok_or_else(|| format!("missing step {id}"))
}

fn holds(cert: &Value, id: &str) -> std::result::Result<(), String> {
    let s = step(cert, id)?;
    ensure!(s["outcome"] == "holds", "step {id} has outcome {}", s["outcome"]);
    Ok(())
}

fn steps_with_prefix<'a>(cert: &'a Value, prefix: &str) -> Vec<&'a Value> {
    cert["steps"]
        .as_array()
        .map(|s| {
            s.iter()
                .filter(|s| s["step_id"].as_str().is_some_and(|id| id.starts_with(prefix)))
                .collect()
        })
        .unwrap_or_default()
}

fn as_coords(v: &Value) -> Vec<u32> {
    v.as_array()
        .map(|a| a.iter().map(|x| x.as_u64().unwrap_or(u64::MAX) as u32).collect())
        .unwrap_or_default()
}

fn expect_verified(run: &Run, limit: Option<Duration>) -> Check {
    ensure!(run.code == 0, "exit code {}", run.code);
    ensure!(run.cert["status"] == "verified_true", "status {}", run.cert["status"]);
    if let Some(limit) = limit {
        ensure!(run.elapsed < limit, "took {:?}, limit {:?}", run.elapsed, limit);
    }
    Ok(String::new())
}

// Independent arithmetic used as oracles.

fn add6(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % 6).collect()
}

fn sub6(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + 6 - y) % 6).collect()
}

fn root_sum(terms: impl IntoIterator<Item = (f64, f64)>) -> (f64, f64) {
    terms.into_iter().fold((0.0, 0.0), |(re, im), (c, angle)| {
        (re + c * angle.cos(), im + c * angle.sin())
    })
}

fn all_vectors(moduli: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &n in moduli {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn distinct_permutations(base: &[u32]) -> BTreeSet<Vec<u32>> {
    if base.len() <= 1 {
        return [base.to_vec()].into();
    }
    let mut out = BTreeSet::new();
    for i in 0..base.len() {
        let mut rest = base.to_vec();
        let head = rest.remove(i);
        for mut tail in distinct_permutations(&rest) {
            tail.insert(0, head);
            out.insert(tail);
        }
    }
    out
}

fn generated_subgroup_order(gens: &[Vec<u32>]) -> usize {
    let mut seen: HashSet<Vec<u32>> = [vec![0; 5]].into();
    let mut frontier = vec![vec![0u32; 5]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add6(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// `Γ` rebuilt from the covering vectors recorded in the certificate.
fn rebuild_gamma(cert: &Value) -> std::result::Result<Vec<Vec<u32>>, String> {
    let out = &step(cert, "gamma_construction")?["outputs"];
    let vectors: Vec<Vec<u32>> = out["vectors"].as_array().ok_or("no vectors")?.iter().map(as_coords).collect();
    let kernels: Vec<usize> = out["kernel_indices"]
        .as_array()
        .ok_or("no kernel indices")?
        .iter()
        .map(|v| v.as_u64().unwrap_or(u64::MAX) as usize)
        .collect();
    let cube = all_vectors(&[6; 5]);
    let mut gamma = Vec::new();
    for (j, &ki) in kernels.iter().enumerate() {
        let v = vectors.get(ki).ok_or("kernel index out of range")?;
        for x in &cube {
            if x.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % 6 == 0 {
                let mut y = x.clone();
                y.push(j as u32);
                gamma.push(y);
            }
        }
    }
    Ok(gamma)
}

fn check_gamma(run: &Run, m: u32, limit: Option<Duration>) -> Check {
    expect_verified(run, limit)?;
    let cert = &run.cert;
    let gamma_size = 1296 * m as usize;
    let order = 7776 * m as usize;
    ensure!(
        step(cert, "gamma_construction")?["outputs"]["gamma_size"] == gamma_size,
        "|Gamma| differs from {gamma_size}"
    );
    holds(cert, "gamma_tiles_with_e_tilde")?;
    ensure!(
        step(cert, "gamma_tiles_with_e_tilde")?["outputs"]["group_order"] == order,
        "tiling not checked over {order} elements"
    );
    let card = &step(cert, "cardinality_identity")?["outputs"];
    ensure!(card["product"] == order && card["group_order"] == order, "cardinality identity {card}");
    holds(cert, "k_tilde_not_a_tile")?;
    let k_span = step(cert, "k_tilde_not_a_tile")?["outputs"]["generated_subgroup_order"]
        .as_u64()
        .unwrap_or(0);
    ensure!(k_span % 2 == 1 && k_span % 6 != 0, "|<K~>| = {k_span}");

    // Oracle: rebuild Gamma, count coverage by E~, evaluate transforms in floating point.
    let gamma = rebuild_gamma(cert)?;
    let distinct: HashSet<&Vec<u32>> = gamma.iter().collect();
    ensure!(distinct.len() == gamma_size, "rebuilt Gamma has {} distinct elements", distinct.len());
    let mut covered: HashSet<Vec<u32>> = HashSet::with_capacity(order);
    for x in &gamma {
        for j in 0..6 {
            let mut y = x.clone();
            if j > 0 {
                y[j - 1] = (y[j - 1] + 1) % 6;
            }
            ensure!(covered.insert(y), "Gamma + E~ covers an element twice");
        }
    }
    ensure!(covered.len() == order, "Gamma + E~ covers {} elements", covered.len());

    let ft_steps = steps_with_prefix(cert, "ft_gamma_");
    ensure!(ft_steps.len() == 30, "{} transform steps", ft_steps.len());
    let mut values = BTreeSet::new();
    for s in &ft_steps {
        ensure!(s["outcome"] == "holds", "{} failed", s["step_id"]);
        let value = s["outputs"]["integer"].as_i64().ok_or("non-integer transform value")?;
        ensure!(value > 0 && value % 1296 == 0, "transform value {value}");
        let w = as_coords(&s["outputs"]["w"]);
        ensure!(w.len() == 6 && w[5] == 0, "w = {w:?}");
        let (re, im) = root_sum(gamma.iter().map(|x| {
            let dot: u32 = x.iter().zip(&w).take(5).map(|(a, b)| a * b).sum();
            (1.0, 2.0 * PI * f64::from(dot % 6) / 6.0)
        }));
        ensure!(
            (re - value as f64).abs() < LARGE_SUM_TOL && im.abs() < LARGE_SUM_TOL,
            "float transform at {w:?} is {re}+{im}i, certificate says {value}"
        );
        values.insert(value);
    }
    ensure!(run.bytes.ends_with(b"}\n"), "certificate lacks trailing newline");
    Ok(format!("|Gamma| = {gamma_size}, transform values {values:?}, |<K~>| = {k_span}"))
}

// Criteria.

fn criterion_1(dir: &Path) -> Check {
    let run = run_cli(&["paper", "verify-usc"], &dir.join("usc.json"))?;
    expect_verified(&run, Some(USC_LIMIT))?;
    let cert = &run.cert;

    let tiling = steps_with_prefix(cert, "e_tiles_with_t");
    ensure!(tiling.len() == 15, "{} kernel tiling steps", tiling.len());
    for s in &tiling {
        ensure!(
            s["outcome"] == "holds" && s["outputs"]["group_order"] == 7776 && s["outputs"]["covered_exactly_once"] == true,
            "{} did not cover 7776 elements exactly once",
            s["step_id"]
        );
    }

    holds(cert, "k_difference_set")?;
    let mut expected: BTreeSet<Vec<u32>> = distinct_permutations(&[0, 2, 2, 4, 4]);
    expected.insert(vec![0; 5]);
    let diffs: BTreeSet<Vec<u32>> = K_COLUMNS
        .iter()
        .flat_map(|a| K_COLUMNS.iter().map(move |b| sub6(a, b)))
        .collect();
    ensure!(diffs == expected && diffs.len() == 31, "K - K oracle: {} elements", diffs.len());
    ensure!(step(cert, "k_difference_set")?["outputs"]["size"] == 31, "K - K size in certificate");

    holds(cert, "k_spectrum_of_e")?;
    for d in diffs.iter().filter(|d| d.iter().any(|&c| c != 0)) {
        let e_set = std::iter::once(vec![0u32; 5]).chain((0..5).map(|i| {
            let mut e = vec![0; 5];
            e[i] = 1;
            e
        }));
        let (re, im) = root_sum(e_set.map(|e| {
            let dot: u32 = e.iter().zip(d).map(|(a, b)| a * b).sum();
            (1.0, 2.0 * PI * f64::from(dot % 6) / 6.0)
        }));
        ensure!(re.hypot(im) < FLOAT_TOL, "ft(E) at {d:?} = {re}+{im}i");
    }

    holds(cert, "k_prime_log_hadamard")?;
    let k_prime = K_PRIME_NUMERATORS;
    for i in 0..6 {
        for j in i + 1..6 {
            let (re, im) = root_sum((0..6).map(|k| (1.0, 2.0 * PI * (f64::from(k_prime[i][k]) - f64::from(k_prime[j][k])) / 3.0)));
            ensure!(re.hypot(im) < FLOAT_TOL, "rows {i}, {j} of exp(2 pi i K') not orthogonal");
        }
    }

    holds(cert, "universal_obstruction")?;
    let obs = &step(cert, "universal_obstruction")?["outputs"];
    ensure!(obs["witness_count"] == 30, "witness count {}", obs["witness_count"]);
    let vectors: Vec<Vec<u32>> = step(cert, "covering_permutations")?["outputs"]["vectors"]
        .as_array()
        .ok_or("no vectors")?
        .iter()
        .map(|v| as_coords(&v["v"]))
        .collect();
    ensure!(vectors.len() == 15, "{} covering vectors", vectors.len());
    let mut witnessed = BTreeSet::new();
    for wit in obs["witnesses"].as_array().ok_or("no witnesses")? {
        let w = as_coords(&wit["w"]);
        let v = &vectors[wit["j"].as_u64().ok_or("bad index")? as usize];
        let mut perm = v.clone();
        perm.sort_unstable();
        ensure!(perm == [1, 2, 3, 4, 5], "{v:?} is not a permutation of (1,2,3,4,5)");
        // w annihilates ker(v) iff w is a multiple of v
        let multiple = (0..6).any(|m| v.iter().map(|c| c * m % 6).eq(w.iter().copied()));
        ensure!(multiple, "{w:?} is not a multiple of {v:?}");
        witnessed.insert(w);
    }
    ensure!(witnessed.len() == 30 && witnessed.iter().all(|w| diffs.contains(w)), "witnesses miss K - K");

    holds(cert, "k_not_a_tile")?;
    let span = generated_subgroup_order(&K_COLUMNS.iter().map(|c| c.to_vec()).collect::<Vec<_>>());
    let mut p = span;
    while p % 3 == 0 {
        p /= 3;
    }
    ensure!(p == 1 && span % 6 != 0, "|<K>| = {span}");
    ensure!(
        step(cert, "k_not_a_tile")?["outputs"]["generated_subgroup_order"] == span,
        "certificate disagrees with |<K>| = {span}"
    );
    Ok(format!("{:.2}s, 15 tilings, |K-K| = 31, 30 witnesses, |<K>| = {span}", run.elapsed.as_secs_f64()))
}

fn criterion_2(dir: &Path) -> Check {
    let run = run_cli(&["paper", "verify-gamma", "--variant", "z15"], &dir.join("gamma_z15.json"))?;
    let detail = check_gamma(&run, 15, Some(GAMMA_Z15_LIMIT))?;
    Ok(format!("{:.2}s, {detail}", run.elapsed.as_secs_f64()))
}

fn criterion_3(dir: &Path) -> Check {
    let run = run_cli(&["paper", "verify-gamma", "--variant", "z17"], &dir.join("gamma_z17.json"))?;
    let detail = check_gamma(&run, 17, None)?;
    Ok(format!("{:.2}s, {detail}", run.elapsed.as_secs_f64()))
}

fn grid_zero_oracle(moduli: &[u32], k: u32) -> bool {
    let big: Vec<u32> = moduli.iter().map(|n| n * k).collect();
    let grid: Vec<Vec<u32>> = all_vectors(&vec![k; moduli.len()])
        .into_iter()
        .map(|m| m.iter().zip(moduli).map(|(a, n)| a * n).collect())
        .collect();
    all_vectors(&big).iter().all(|xi| {
        let (re, im) = root_sum(grid.iter().map(|t| {
            let angle: f64 = t
                .iter()
                .zip(xi)
                .zip(&big)
                .map(|((&a, &b), &n)| f64::from(a * b % n) / f64::from(n))
                .sum();
            (1.0, 2.0 * PI * angle)
        }));
        let zero = re.hypot(im) < FLOAT_TOL;
        zero == xi.iter().any(|c| c % k != 0)
    })
}

fn criterion_4(dir: &Path) -> Check {
    let base = run_cli(&["paper", "verify-gamma", "--variant", "z15"], &dir.join("gamma_z15_base.json"))?;
    let run = run_cli(&["paper", "lift", "--variant", "z15", "--k", "2"], &dir.join("lift_z15_k2.json"))?;
    expect_verified(&run, None)?;
    let cert = &run.cert;
    holds(cert, "lift_tiles")?;
    let lt = &step(cert, "lift_tiles")?["outputs"];
    ensure!(lt["lift_size"] == 19440 * 64 && lt["group_order"] == 116640 * 64, "lift sizes {lt}");
    for n in 0..3 {
        holds(cert, &format!("grid_zero_structure_{n}"))?;
    }
    for (moduli, k) in [(&[2u32, 3][..], 2u32), (&[6][..], 3), (&[2, 3][..], 3)] {
        ensure!(grid_zero_oracle(moduli, k), "zero-structure oracle fails for {moduli:?}, k = {k}");
    }
    let lifted = steps_with_prefix(cert, "ft_lift_");
    ensure!(lifted.len() == 30, "{} lifted transform steps", lifted.len());
    for (n, s) in lifted.iter().enumerate() {
        ensure!(s["outcome"] == "holds", "{} failed", s["step_id"]);
        let v = s["outputs"]["integer"].as_i64().ok_or("non-integer lifted value")?;
        let coarse = step(&base.cert, &format!("ft_gamma_{n:02}"))?["outputs"]["integer"]
            .as_i64()
            .ok_or("non-integer base value")?;
        ensure!(v != 0 && v == 64 * coarse, "lifted value {v} vs 64 * {coarse}");
        ensure!(s["outputs"]["base_integer"] == coarse, "base value mismatch at {n}");
    }
    Ok(format!("{:.2}s, 30 lifted values = 2^6 x base, 3 zero-structure cases", run.elapsed.as_secs_f64()))
}

fn random_group(rng: &mut ChaCha8Rng) -> Vec<u32> {
    loop {
        let dim = rng.gen_range(1..=3);
        let moduli: Vec<u32> = (0..dim).map(|_| rng.gen_range(2..=12)).collect();
        if moduli.iter().product::<u32>() as usize <= MAX_PAIR_GROUP_ORDER {
            return moduli;
        }
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn coverage_oracle(moduli: &[u32], a: &[Vec<u32>], t: &[Vec<u32>]) -> bool {
    let order: usize = moduli.iter().map(|&n| n as usize).product();
    if a.len() * t.len() != order {
        return false;
    }
    let mut seen = HashSet::with_capacity(order);
    a.iter().all(|x| {
        t.iter().all(|y| {
            let s: Vec<u32> = x.iter().zip(y).zip(moduli).map(|((p, q), n)| (p + q) % n).collect();
            seen.insert(s)
        })
    })
}

fn to_subset(moduli: &[u32], rows: &[Vec<u32>]) -> GroupSubset {
    let g = make_group(moduli).expect("valid moduli");
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&c| i64::from(c)).collect()).collect();
    GroupSubset::from_coords(g, &rows).expect("valid rows")
}

/// A set of coset representatives for `Π a_j Z_{n_j}`, paired with that subgroup.
fn constructed_tiling(rng: &mut ChaCha8Rng, moduli: &[u32]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let steps: Vec<u32> = moduli.iter().map(|&n| *divisors(n).choose(rng).expect("n >= 1")).collect();
    let t: Vec<Vec<u32>> = all_vectors(moduli)
        .into_iter()
        .filter(|x| x.iter().zip(&steps).all(|(c, s)| c % s == 0))
        .collect();
    let a: Vec<Vec<u32>> = all_vectors(&steps)
        .into_iter()
        .map(|r| {
            let shift = t.choose(rng).expect("nonempty subgroup");
            r.iter().zip(shift).zip(moduli).map(|((x, y), n)| (x + y) % n).collect()
        })
        .collect();
    (a, t)
}

fn random_set(rng: &mut ChaCha8Rng, moduli: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut all = all_vectors(moduli);
    all.shuffle(rng);
    all.truncate(size);
    all
}

fn criterion_5(_: &Path) -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tilings = 0;
    for i in 0..RANDOM_TILING_PAIRS {
        let moduli = random_group(&mut rng);
        let order: usize = moduli.iter().map(|&n| n as usize).product();
        let (mut a, mut t) = match i % 3 {
            0 => constructed_tiling(&mut rng, &moduli),
            1 => {
                // one element of a constructed tiling moved, usually breaking it
                let (mut a, t) = constructed_tiling(&mut rng, &moduli);
                let k = rng.gen_range(0..a.len());
                let fresh = random_set(&mut rng, &moduli, order)
                    .into_iter()
                    .find(|x| !a.contains(x));
                if let Some(x) = fresh {
                    a[k] = x;
                }
                (a, t)
            }
            _ => {
                let sizes = divisors(order as u32);
                let s = *sizes.choose(&mut rng).expect("order >= 1") as usize;
                (random_set(&mut rng, &moduli, s), random_set(&mut rng, &moduli, order / s))
            }
        };
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut a, &mut t);
        }
        let oracle = coverage_oracle(&moduli, &a, &t);
        let (sa, st) = (to_subset(&moduli, &a), to_subset(&moduli, &t));
        let direct = is_tiling(&sa, &st, 1).map_err(|e| e.to_string())?;
        let fourier = tiling_fourier_criterion(&sa, &st).map_err(|e| e.to_string())?;
        ensure!(
            direct == fourier && direct == oracle,
            "pair {i} in Z{moduli:?}: is_tiling {direct}, fourier {fourier}, oracle {oracle}"
        );
        tilings += usize::from(direct);
    }

    let z6 = make_group(&[6]).expect("valid");
    let subsets: Vec<GroupSubset> = (1u32..64)
        .map(|mask| GroupSubset::from_indices(z6.clone(), (0..6).filter(|b| mask >> b & 1 == 1)).expect("in range"))
        .collect();
    let mut spectral_pairs = 0;
    for omega in &subsets {
        for lambda in &subsets {
            let s = is_spectrum(omega, lambda).map_err(|e| e.to_string())?;
            let p = power_tiling_check(omega, lambda).map_err(|e| e.to_string())?;
            ensure!(s == p, "Z_6: is_spectrum {s} but power check {p} for {:?}, {:?}", omega.indices(), lambda.indices());
            spectral_pairs += usize::from(s);
        }
    }

    for moduli in [&[6u32, 6, 6][..], &[4, 9], &[2, 2, 2, 2, 2, 2]] {
        let order: usize = moduli.iter().map(|&n| n as usize).product();
        let g = make_group(moduli).expect("valid");
        for _ in 0..TRANSFORM_SAMPLES {
            let size = rng.gen_range(1..=order);
            let mut idx: Vec<usize> = (0..order).collect();
            idx.shuffle(&mut rng);
            idx.truncate(size);
            let a = GroupSubset::from_indices(g.clone(), idx).expect("in range");
            let naive = full_transform(&a, TransformMode::Naive).map_err(|e| e.to_string())?;
            let tensor = full_transform(&a, TransformMode::Tensor).map_err(|e| e.to_string())?;
            ensure!(
                naive.values().iter().zip(tensor.values()).all(|(x, y)| x.reduced() == y.reduced()),
                "naive and tensor transforms differ in Z{moduli:?}"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < PROPERTY_LIMIT, "took {elapsed:?}");
    Ok(format!(
        "{:.2}s, {RANDOM_TILING_PAIRS} pairs ({tilings} tilings), 3969 Z_6 pairs ({spectral_pairs} spectral), {} transform comparisons",
        elapsed.as_secs_f64(),
        3 * TRANSFORM_SAMPLES
    ))
}

fn tiles_oracle(n: u32, a: &[u32]) -> bool {
    if n as usize % a.len() != 0 {
        return false;
    }
    let k = n as usize / a.len();
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k && m & 1 == 1).any(|m| {
        let mut hit = 0u32;
        for t in (0..n).filter(|t| m >> t & 1 == 1) {
            for &x in a {
                let bit = 1 << ((x + t) % n);
                if hit & bit != 0 {
                    return false;
                }
                hit |= bit;
            }
        }
        hit.count_ones() == n
    })
}

fn spectral_oracle(n: u32, a: &[u32]) -> bool {
    let ft_zero = |xi: u32| {
        let (re, im) = root_sum(a.iter().map(|&x| (1.0, 2.0 * PI * f64::from(x * xi % n) / f64::from(n))));
        re.hypot(im) < FLOAT_TOL
    };
    let zeros: Vec<bool> = (0..n).map(ft_zero).collect();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == a.len() && m & 1 == 1)
        .any(|m| {
            let l: Vec<u32> = (0..n).filter(|b| m >> b & 1 == 1).collect();
            l.iter().all(|&x| l.iter().all(|&y| x == y || zeros[((x + n - y) % n) as usize]))
        })
}

fn criterion_6(_: &Path) -> Check {
    let start = Instant::now();
    let mut checked = 0;
    let mut tiles = 0;
    for n in 1..=FUGLEDE_MAX_N {
        let g = make_group(&[n]).expect("valid");
        for mask in (0u32..1 << n).filter(|m| m & 1 == 1) {
            let a: Vec<u32> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            let set = GroupSubset::from_indices(g.clone(), a.iter().map(|&x| x as usize)).expect("in range");
            let tile = match can_tile(&set, Budget::default()).map_err(|e| e.to_string())? {
                TileOutcome::Tiles { .. } => true,
                TileOutcome::NotTile(_) => false,
                TileOutcome::Inconclusive { .. } => return Err(format!("can_tile inconclusive on {a:?} in Z_{n}")),
            };
            let search = find_spectrum(&set, Budget::default()).map_err(|e| e.to_string())?;
            let spectral = match search {
                spectile::analysis::Search::Found { .. } => true,
                spectile::analysis::Search::Exhausted { .. } => false,
                spectile::analysis::Search::Inconclusive { .. } => {
                    return Err(format!("find_spectrum inconclusive on {a:?} in Z_{n}"))
                }
            };
            ensure!(tile == spectral, "Z_{n}, {a:?}: tile {tile}, spectral {spectral}");
            ensure!(tile == tiles_oracle(n, &a), "Z_{n}, {a:?}: tiling oracle disagrees");
            ensure!(spectral == spectral_oracle(n, &a), "Z_{n}, {a:?}: spectral oracle disagrees");
            checked += 1;
            tiles += usize::from(tile);
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < FUGLEDE_LIMIT, "took {elapsed:?}");
    Ok(format!("{:.2}s, {checked} sets, {tiles} tiles = spectral sets", elapsed.as_secs_f64()))
}

fn primes_dividing(n: u32) -> Vec<u32> {
    (2..=n).filter(|p| n % p == 0 && (2..*p).all(|q| p % q != 0)).collect()
}

fn criterion_7(_: &Path) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let (mut zeros, mut nonzeros) = (0, 0);
    for i in 0..ROOT_SUMS {
        let n = rng.gen_range(1..=MAX_ROOT_ORDER);
        let mut coeffs = vec![0i64; n as usize];
        let primes = primes_dividing(n);
        let polygons = i % 2 == 1 && !primes.is_empty();
        if polygons {
            // signed sums of rotated regular p-gons, sometimes perturbed by one root
            for _ in 0..rng.gen_range(1..=4) {
                let p = *primes.choose(&mut rng).expect("nonempty");
                let r = rng.gen_range(0..n);
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                for k in 0..p {
                    coeffs[((r + k * n / p) % n) as usize] += c;
                }
            }
            if rng.gen_bool(0.3) {
                coeffs[rng.gen_range(0..n) as usize] += 1;
            }
        } else {
            for _ in 0..rng.gen_range(1..=12) {
                coeffs[rng.gen_range(0..n) as usize] += rng.gen_range(-2..=2);
            }
        }
        let exact = CycInt::from_raw(n, &coeffs).map_err(|e| e.to_string())?.is_zero();
        let (re, im) = root_sum(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (c as f64, 2.0 * PI * k as f64 / f64::from(n))),
        );
        let float = re.hypot(im) < FLOAT_TOL;
        ensure!(exact == float, "sum {i} of order {n}: exact {exact}, float {float} ({coeffs:?})");
        if exact {
            zeros += 1;
        } else {
            nonzeros += 1;
        }
    }
    ensure!(zeros > 1000 && nonzeros > 1000, "unbalanced sample: {zeros} zero, {nonzeros} nonzero");

    for n in 1..=MAX_ROOT_ORDER as usize {
        let product = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| cyclotomic_poly(d).map_err(|e| e.to_string()))
            .try_fold(IntPoly::new(vec![1]), |acc, p| p.map(|p| acc.mul(&p)))?;
        ensure!(product == IntPoly::x_pow_minus_one(n), "product of Phi_d over d | {n} is not x^{n} - 1");
    }
    Ok(format!("{ROOT_SUMS} sums ({zeros} vanishing), Phi_d products exact for N <= {MAX_ROOT_ORDER}"))
}

const DETERMINISM_RUNS: [(&str, &[&str]); 4] = [
    ("usc.json", &["paper", "verify-usc"]),
    ("gamma_z15.json", &["paper", "verify-gamma", "--variant", "z15"]),
    ("gamma_z17.json", &["paper", "verify-gamma", "--variant", "z17"]),
    ("lift_z15_k2.json", &["paper", "lift", "--variant", "z15", "--k", "2"]),
];

fn criterion_8(dir: &Path) -> Check {
    let mut total = 0;
    for (file, args) in DETERMINISM_RUNS {
        let first = dir.join(format!("first_{file}"));
        let second = dir.join(format!("second_{file}"));
        let a = run_cli(args, &first)?;
        let b = run_cli(args, &second)?;
        ensure!(a.code == 0 && b.code == 0, "{file}: exit codes {} and {}", a.code, b.code);
        ensure!(a.bytes == b.bytes, "{file}: reruns differ");
        if let Ok(previous) = std::fs::read(dir.join(file)) {
            ensure!(previous == a.bytes, "{file}: differs from the run in criteria 1-4");
        }
        total += a.bytes.len();
    }
    Ok(format!("4 certificates byte-identical across runs ({total} bytes)"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let dir: PathBuf = dir.path().to_path_buf();
    let criteria: [(u32, &str, fn(&Path) -> Check); 8] = [
        (1, "verify-usc", criterion_1),
        (2, "verify-gamma z15", criterion_2),
        (3, "verify-gamma z17", criterion_3),
        (4, "lift z15 k=2", criterion_4),
        (5, "oracle equivalences", criterion_5),
        (6, "small-group Fuglede", criterion_6),
        (7, "cyclotomic kernel", criterion_7),
        (8, "determinism", criterion_8),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        match f(&dir) {
            Ok(detail) => println!("criterion {n} ({name}): PASS [{:.1}s] {detail}", start.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{:.1}s] {why}", start.elapsed().as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

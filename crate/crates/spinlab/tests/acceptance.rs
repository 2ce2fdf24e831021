//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `cargo test --test acceptance -- --nocapture` to see them
//! on success).

use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinlab::bounds::{beta_split_mu, beta_tw, beta_univ, BoundsInput};
use spinlab::catalog;
use spinlab::clifford::{build_rep, spectrum, CliffordRep, DEFAULT_TOL};
use spinlab::exterior::{sigma_t, Form};
use spinlab::report::{self, Geometry, BIANCHI_CONSTANT, DEFAULT_ASSERT_TOL};
use spinlab::splitting::is_split_type;

fn finish(number: usize, name: &str, failures: &[String], started: Instant) {
    let elapsed = started.elapsed();
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({name}): {status} [{elapsed:.2?}]");
    assert!(failures.is_empty(), "criterion {number} failed: {failures:?}");
}

fn random_sparse_3form(rng: &mut ChaCha8Rng, n: usize) -> Form {
    let terms = rng.random_range(1..=5);
    let mut form = Form::zero(n);
    for _ in 0..terms {
        let mut idx = [0usize; 3];
        for slot in idx.iter_mut() {
            *slot = rng.random_range(1..=n);
        }
        let coeff = rng.random_range(-3..=3i32) as f64;
        form = &form + &Form::monomial(n, &idx, coeff).unwrap();
    }
    form
}

#[test]
fn criterion_1_nearly_kaehler_golden() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let entry = catalog::get("nk_F12").unwrap();
    let torsion = &entry.torsion;
    if torsion.norm2() != 4.0 {
        failures.push(format!("norm2 = {}, expected exactly 4", torsion.norm2()));
    }
    let rep = build_rep(6, 1).unwrap();
    let action = rep.act(torsion).unwrap();
    if action.self_adjoint_residual() > 1e-12 {
        failures.push(format!(
            "act(T) not self-adjoint: {}",
            action.self_adjoint_residual()
        ));
    }
    let sp = spectrum(&action, DEFAULT_TOL).unwrap();
    let distinct = sp.distinct();
    if distinct.len() != 3 {
        failures.push(format!("expected 3 distinct eigenvalues, got {distinct:?}"));
    } else {
        for (found, expected) in distinct.iter().zip([-4.0, 0.0, 4.0]) {
            if (found - expected).abs() > 1e-9 {
                failures.push(format!("eigenvalue {found} vs {expected}"));
            }
        }
    }
    // bounds from the exact inputs (Scal^g = 30, ‖T‖² = 4, μ² ∈ {0, 16})
    let split = beta_split_mu(30.0, 4.0, 16.0, 2).unwrap();
    let univ = beta_univ(30.0, 4.0, 16.0);
    if (split - 4.0).abs() > 1e-12 {
        failures.push(format!("β_split = {split}"));
    }
    if (univ - 4.0).abs() > 1e-12 {
        failures.push(format!("β_univ = {univ}"));
    }
    if started.elapsed().as_secs_f64() > 1.0 {
        failures.push("runtime exceeded 1 s".to_string());
    }
    finish(1, "nearly Kähler golden values", &failures, started);
}

#[test]
fn criterion_2_split_type_predicates() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (name, expected) in [
        ("nk_F12", true),
        ("stiefel_v2r4", true),
        ("stiefel_v2r5", true),
        ("nonsplit_example", false),
    ] {
        let entry = catalog::get(name).unwrap();
        let got = is_split_type(&entry.torsion, &entry.partition).unwrap();
        if got != expected {
            failures.push(format!("{name}: split-type {got}, expected {expected}"));
        }
    }
    if started.elapsed().as_secs_f64() > 0.1 {
        failures.push("runtime exceeded 0.1 s".to_string());
    }
    finish(2, "split-type predicates", &failures, started);
}

fn anticommutation_residual(rep: &CliffordRep) -> f64 {
    let d = rep.dim_spinor();
    let id = nalgebra::DMatrix::<nalgebra::Complex<f64>>::identity(d, d);
    let mut worst: f64 = 0.0;
    for i in 1..=rep.n() {
        for j in 1..=rep.n() {
            let gi = rep.generator(i);
            let gj = rep.generator(j);
            let mut anti = gi * gj + gj * gi;
            if i == j {
                anti += &id * nalgebra::Complex::new(2.0, 0.0);
            }
            worst = worst.max(anti.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    worst
}

#[test]
fn criterion_3_clifford_property_suite() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    for n in 4..=8usize {
        let rep = build_rep(n, 1).unwrap();
        let residual = anticommutation_residual(&rep);
        if residual > 1e-12 {
            failures.push(format!("n={n}: anticommutation residual {residual}"));
        }
        for sample in 0..200 {
            let torsion = random_sparse_3form(&mut rng, n);
            let action = rep.act(&torsion).unwrap();
            // adjoint parity: 3-forms act self-adjointly
            let parity = action.self_adjoint_residual();
            if parity > 1e-9 {
                failures.push(format!("n={n} #{sample}: adjoint parity residual {parity}"));
                break;
            }
            // act(T)² = ‖T‖²·Id - 2·act(σ_T)
            let sigma = sigma_t(&torsion).unwrap();
            let lhs = rep.torsion_square(&torsion).unwrap();
            let rhs = rep
                .identity()
                .scale(torsion.norm2())
                .sub(&rep.act(&sigma).unwrap().scale(2.0));
            let square = lhs.max_abs_diff(&rhs);
            if square > 1e-9 {
                failures.push(format!("n={n} #{sample}: square identity residual {square}"));
                break;
            }
        }
    }
    if started.elapsed().as_secs_f64() > 30.0 {
        failures.push("runtime exceeded 30 s".to_string());
    }
    finish(3, "Clifford property suite", &failures, started);
}

#[test]
fn criterion_4_sigma_tilde_reproduction() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for name in ["stiefel_v2r4", "stiefel_v2r5"] {
        let entry = catalog::get(name).unwrap();
        let curvature = entry.curvature().unwrap();
        let rep = build_rep(entry.n, 1).unwrap();
        let sigma = sigma_t(&entry.torsion).unwrap();

        let mut sigma_sum = Form::zero(entry.n);
        for block in 1..=entry.partition.k() {
            sigma_sum = &sigma_sum + &curvature.sigma_tilde(&entry.partition, block).unwrap();
        }
        let residual = rep
            .act(&sigma_sum)
            .unwrap()
            .max_abs_diff(&rep.act(&sigma).unwrap());
        if residual > 1e-9 {
            failures.push(format!("{name}: Σσ̃ⁱ residual {residual}"));
        }

        let block_report = curvature.block_checks(&entry.partition).unwrap();
        if !block_report.passes(1e-10) {
            failures.push(format!("{name}: block checks {block_report:?}"));
        }

        let bianchi = curvature.bianchi_cyclic().unwrap();
        let deviation = bianchi.max_deviation_from(&sigma, BIANCHI_CONSTANT);
        if deviation > 1e-10 {
            failures.push(format!("{name}: Bianchi deviation {deviation} at c = 1"));
        }
    }
    if started.elapsed().as_secs_f64() > 5.0 {
        failures.push("runtime exceeded 5 s".to_string());
    }
    finish(4, "Σσ̃ⁱ = σ_T with block structure and Bianchi", &failures, started);
}

#[test]
fn criterion_5_bounds_degeneration_exact() {
    let started = Instant::now();
    let mut failures = Vec::new();
    type Q = Ratio<i64>;
    let zero = Q::from_integer(0);
    for n in 4..=10usize {
        for scal_num in [-7i64, 0, 5, 12, 30] {
            let s = Q::new(scal_num, 1);
            let friedrich = Q::new(n as i64, 4 * (n as i64 - 1)) * s;
            let split = beta_split_mu(s, zero, zero, n).unwrap();
            let tw = beta_tw(n, s, zero, zero).unwrap();
            let univ = beta_univ(s, zero, zero);
            if split != friedrich {
                failures.push(format!("n={n}, S={scal_num}: β_split = {split} ≠ {friedrich}"));
            }
            if tw != friedrich {
                failures.push(format!("n={n}, S={scal_num}: β_tw = {tw} ≠ {friedrich}"));
            }
            if univ != s / Q::from_integer(4) {
                failures.push(format!("n={n}, S={scal_num}: β_univ = {univ}"));
            }
        }
    }
    finish(5, "bound degeneration to the Riemannian estimate", &failures, started);
}

#[test]
fn criterion_6_homogeneous_validity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let expectations: [(&str, &[&[usize]]); 2] = [
        ("stiefel_v2r4", &[&[1, 3, 5], &[2, 4, 5]]),
        ("stiefel_v2r5", &[&[1, 4, 7], &[2, 5, 7], &[3, 6, 7]]),
    ];
    for (name, support) in expectations {
        let entry = catalog::get(name).unwrap();
        let space = entry.homogeneous().unwrap();
        let diag = space.diagnostics();
        if diag.jacobi >= 1e-10 || diag.reductivity >= 1e-10 || diag.natural_reductivity >= 1e-10
        {
            failures.push(format!("{name}: structure residuals {diag:?}"));
        }
        let torsion = space.canonical_torsion().unwrap();
        let curvature = space.canonical_curvature().unwrap();
        let ad_t = space.ad_invariance_torsion(&torsion);
        let ad_r = space.ad_invariance_curvature(&curvature);
        if ad_t >= 1e-10 || ad_r >= 1e-10 {
            failures.push(format!("{name}: Ad(H) residuals T {ad_t}, R {ad_r}"));
        }
        let found: Vec<Vec<usize>> = torsion.support();
        let expected: Vec<Vec<usize>> = support.iter().map(|s| s.to_vec()).collect();
        if found != expected {
            failures.push(format!("{name}: torsion support {found:?}, expected {expected:?}"));
        }
    }
    finish(6, "homogeneous validity suite", &failures, started);
}

#[test]
fn criterion_7_cli_contract() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_spinlab");
    let run = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs")
    };

    // exit code contract
    let ok = run(&["catalog", "run", "nk_F12"]);
    if ok.status.code() != Some(0) {
        failures.push(format!("run nk_F12 exit {:?}", ok.status.code()));
    }
    let unknown = run(&["catalog", "run", "no_such_entry"]);
    if unknown.status.code() != Some(2) {
        failures.push(format!("unknown entry exit {:?}", unknown.status.code()));
    }

    // golden table, byte-stable across two consecutive runs
    let golden = include_str!("golden/nk_f12_run.txt");
    let first = String::from_utf8(ok.stdout).unwrap();
    if first != golden {
        failures.push("table output differs from the committed golden".to_string());
    }
    let second = String::from_utf8(run(&["catalog", "run", "nk_F12"]).stdout).unwrap();
    if first != second {
        failures.push("table output not byte-stable across runs".to_string());
    }

    // JSON round-trip: analyze(export(entry)) ≡ run(entry) byte for byte
    let json_run = run(&["catalog", "run", "nk_F12", "--format", "json"]);
    let exported = run(&["catalog", "export", "nk_F12"]);
    let dir = std::env::temp_dir().join("spinlab-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nk_f12.json");
    std::fs::write(&path, &exported.stdout).unwrap();
    let json_analyze = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    if json_run.stdout != json_analyze.stdout {
        failures.push("analyze(export(nk_F12)) differs from catalog run --format json".to_string());
    }
    if json_run.status.code() != Some(0) || json_analyze.status.code() != Some(0) {
        failures.push("JSON round-trip exit codes".to_string());
    }

    finish(7, "CLI contract", &failures, started);
}

/// Pipeline property: feeding the computed spectrum through the bound
/// evaluation reproduces the golden values for every catalog entry that
/// carries them.
#[test]
fn pipeline_reproduces_catalog_bounds() {
    let nk = Geometry::from_entry(&catalog::get("nk_F12").unwrap());
    let report = report::analyze(&nk, DEFAULT_ASSERT_TOL).unwrap();
    assert!((report.bounds.beta_split.unwrap() - 4.0).abs() < 1e-9);
    assert!((report.bounds.beta_univ - 4.0).abs() < 1e-9);
    assert!((report.bounds.beta_tw.unwrap() - 4.0).abs() < 1e-9);

    let stiefel = Geometry::from_entry(&catalog::get("stiefel_v2r4").unwrap());
    let report = report::analyze(&stiefel, DEFAULT_ASSERT_TOL).unwrap();
    assert!((report.bounds.beta_split.unwrap() - 1.0).abs() < 1e-9);
    assert!((report.bounds.beta_univ - 1.0).abs() < 1e-9);

    // direct spectrum route for the same numbers
    let rep = build_rep(6, 1).unwrap();
    let sp = spectrum(&rep.act(&nk.torsion).unwrap(), DEFAULT_TOL).unwrap();
    let input = BoundsInput::new(6, 2, 30.0, nk.torsion.norm2(), sp.squared_values()).unwrap();
    assert!((input.beta_split().unwrap() - 4.0).abs() < 1e-9);
}

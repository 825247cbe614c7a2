//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::{probes, product_gap, tol, two_port_example, value_gap};
use nalgebra::{DMatrix, SymmetricEigen};
use num::{BigRational, Zero};
use num_complex::Complex64;
use prokit::invert::{
    decompose_input_space, inverse_descriptor_minimal, inverse_descriptor_raw, inverse_state_space,
    inverse_weierstrass,
};
use prokit::matlin::skew_spectrum;
use prokit::pro::{validate_realization, StateSpaceRealization};
use prokit::realize::{
    controllability_gramian, controllability_hautus, descriptor_minimality, foster_to_state_space,
    hautus_ranks, lift_factorization, state_space_to_foster, state_space_to_weierstrass,
};
use prokit::sample::{random_foster, random_hermitian, random_invertible_realization, random_shape, residue_at};
use prokit::spectra::{cauchy_check, inertia_check, interlace_verify, pole_zero_report, weyl_check};
use prokit::{ComplexMatrix, TransferFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { name, pass, detail }
}

fn main() {
    let checks: [fn() -> Outcome; 8] = [
        golden_zeros,
        two_port_controllability,
        lift_identities,
        round_trips,
        inversion_suite,
        minimality_suite,
        interlacing_suite,
        eigenvalue_bounds,
    ];
    let mut failed = 0;
    for check in checks {
        let o = check();
        println!("{} {:<24} {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------------------
// Two-port example

const PRINTED_ZEROS: [f64; 6] = [0.682921, 1.000000, 2.921053, 3.00000000000012, 4.002068, 5.000052];

fn golden_zeros() -> Outcome {
    let start = Instant::now();
    let r = two_port_example();
    let inv = match inverse_state_space(&r, &tol()) {
        Ok(inv) => inv,
        Err(e) => return outcome("two-port zeros", false, format!("inversion failed: {e}")),
    };
    let spectrum = skew_spectrum(&inv.a);
    let elapsed = start.elapsed();

    let k = spectrum.len();
    let symmetry = (0..k).map(|j| (spectrum[j] + spectrum[k - 1 - j]).abs()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    let mut close = k == 12;
    if close {
        for (got, want) in spectrum[6..].iter().zip(PRINTED_ZEROS) {
            let allowed = if (want - 3.0).abs() < 1e-3 { 1e-6 } else { 1e-4 };
            worst = worst.max((got - want).abs());
            close &= (got - want).abs() <= allowed;
        }
    }
    let co_located = pole_zero_report(&r, &tol()).map(|rep| rep.co_located(&tol())).unwrap_or_default();
    let zeros: Vec<String> = spectrum[k / 2..].iter().map(|w| format!("{w:.6}")).collect();
    let pass = close && symmetry <= 1e-9 && elapsed < Duration::from_secs(1);
    outcome(
        "two-port zeros",
        pass,
        format!(
            "zeros [{}], worst |err| {worst:.1e}, symmetry {symmetry:.1e}, {:.1} ms, pole-zero co-located at {co_located:?}",
            zeros.join(", "),
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact rank by Gaussian elimination over the rationals.
fn exact_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, p) in bottom[0][c..].iter_mut().zip(&top[rank][c..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `[B, AB, ..., A^11 B]` of the two-port example in exact arithmetic.
fn exact_krylov_rank() -> usize {
    let n = 12;
    let omegas = [1, 2, 3, 4, 1, 5];
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for (k, &w) in omegas.iter().enumerate() {
        a[2 * k][2 * k + 1] = rational(w, 1);
        a[2 * k + 1][2 * k] = rational(-w, 1);
    }
    let bt: [[(i64, i64); 12]; 2] = [
        [(0, 1), (1, 10_000), (1, 10), (5, 1000), (0, 1), (0, 1), (5, 1000), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1000)],
        [(1000, 1), (0, 1), (1, 1), (0, 1), (0, 1), (1, 10_000), (0, 1), (0, 1), (0, 1), (1, 1000), (0, 1), (0, 1)],
    ];
    let mut block: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..2).map(|j| rational(bt[j][i].0, bt[j][i].1)).collect()).collect();
    let mut krylov: Vec<Vec<BigRational>> = vec![Vec::new(); n];
    for _ in 0..n {
        for i in 0..n {
            krylov[i].extend(block[i].iter().cloned());
        }
        block = (0..n)
            .map(|i| {
                (0..2)
                    .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &block[k][j]))
                    .collect()
            })
            .collect();
    }
    exact_rank(krylov)
}

fn two_port_controllability() -> Outcome {
    let r = two_port_example();
    let ranks = hautus_ranks(&r.a, &r.b, &tol()).unwrap_or_default();
    let min_rank = ranks.iter().map(|h| h.rank).min().unwrap_or(0);
    let margin = ranks.iter().map(|h| h.relative_margin()).fold(f64::INFINITY, f64::min);
    let verdict = controllability_hautus(&r.a, &r.b, &tol());
    let exact = exact_krylov_rank();
    outcome(
        "two-port controllability",
        verdict && min_rank == 12 && exact == 12 && ranks.len() == 10,
        format!(
            "Hautus rank {min_rank} at {} eigenvalues (smallest relative margin {margin:.2e}), exact Krylov rank {exact}",
            ranks.len()
        ),
    )
}

// ---------------------------------------------------------------------------
// Realization suites

fn lift_identities() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4_2);
    let (mut worst_q, mut worst_r, mut failures) = (0.0f64, 0.0f64, 0usize);
    for case in 0..500 {
        let m = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=m + 1);
        let omega = if case % 25 == 0 { 0.0 } else { rng.gen_range(0.1..10.0) };
        let term = residue_at(&mut rng, omega, m, k);
        let lift = match lift_factorization(omega, &term.q, &term.r, &tol()) {
            Ok(l) => l,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let a = lift.state_matrix();
        let eq = (lift.b.transpose() * &lift.b - &term.q).norm();
        let er = (lift.b.transpose() * &a * &lift.b - &term.r).norm();
        worst_q = worst_q.max(eq);
        worst_r = worst_r.max(er);
        let hautus = controllability_hautus(&a, &lift.b, &tol());
        let gramian_pd = controllability_gramian(&a, &lift.b, 1.0)
            .map(|g| SymmetricEigen::new(g).eigenvalues.min() > 1e-12)
            .unwrap_or(false);
        if eq > 1e-9 || er > 1e-9 || !hautus || !gramian_pd {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        "lift identities",
        failures == 0 && elapsed < Duration::from_secs(10),
        format!(
            "500 residues, {failures} failures, max |B'^T B' - Q| {worst_q:.1e}, max |B'^T A' B' - R| {worst_r:.1e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn sorted_omegas(f: &prokit::FosterForm) -> Vec<f64> {
    let mut w: Vec<f64> = f.terms.iter().map(|t| t.omega).collect();
    w.sort_by(f64::total_cmp);
    w
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2_00);
    let (mut worst, mut failures) = (0.0f64, 0usize);
    for _ in 0..200 {
        let m = rng.gen_range(1..=4);
        let terms = rng.gen_range(0..=5);
        let f = random_foster(&mut rng, m, terms);
        let pts = probes(&mut rng, 50);
        let back = foster_to_state_space(&f, &tol()).and_then(|r| state_space_to_foster(&r, &tol()));
        let Ok(back) = back else {
            failures += 1;
            continue;
        };
        let gap = value_gap(&f, &back, &pts);
        worst = worst.max(gap);
        let (wa, wb) = (sorted_omegas(&f), sorted_omegas(&back));
        let same_omegas = wa.len() == wb.len() && wa.iter().zip(&wb).all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + a));
        if gap > 1e-9 || !same_omegas {
            failures += 1;
        }
    }
    outcome(
        "round trips",
        failures == 0,
        format!("200 Foster forms, 50 probes each, {failures} failures, max relative gap {worst:.1e}"),
    )
}

fn random_instances(seed: u64, count: usize) -> Vec<StateSpaceRealization> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let shape = random_shape(&mut rng, 4, 4);
            random_invertible_realization(&mut rng, shape)
        })
        .collect()
}

fn inversion_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5_5);
    let (mut worst_product, mut worst_pair, mut worst_double) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures: Vec<String> = Vec::new();
    for (i, r) in random_instances(5_6, 200).iter().enumerate() {
        let pts = probes(&mut rng, 20);
        let run = || -> Result<(f64, f64, f64, bool, bool), prokit::Error> {
            let dec = decompose_input_space(&r.m, &r.d, &r.b, &tol())?;
            let raw = inverse_descriptor_raw(r, &tol())?;
            let mid = inverse_descriptor_minimal(r, &dec, &tol())?.descriptor();
            let w = inverse_weierstrass(r, &dec, &tol())?;
            let ss = inverse_state_space(r, &tol())?;
            let forms: [&dyn TransferFunction; 4] = [&raw, &mid, &w, &ss];
            let product = forms.iter().map(|g| product_gap(r, *g, &pts)).fold(0.0, f64::max);
            let mut pair: f64 = 0.0;
            for a in 0..4 {
                for b in a + 1..4 {
                    pair = pair.max(value_gap(forms[a], forms[b], &pts));
                }
            }
            let valid = validate_realization(&ss, &tol()).passed();
            let twice = inverse_state_space(&ss, &tol())?;
            let double = value_gap(r, &twice, &pts);
            Ok((product, pair, double, valid, twice.states() == r.states()))
        };
        match run() {
            Ok((product, pair, double, valid, same_dim)) => {
                worst_product = worst_product.max(product);
                worst_pair = worst_pair.max(pair);
                worst_double = worst_double.max(double);
                if product > 1e-8 || pair > 1e-8 || double > 1e-8 || !valid || !same_dim {
                    failures.push(format!("#{i}"));
                }
            }
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    outcome(
        "inversion",
        failures.is_empty(),
        format!(
            "200 instances, max |F G - I| {worst_product:.1e}, max pairwise gap {worst_pair:.1e}, double inversion gap {worst_double:.1e}, failures {:?}",
            failures
        ),
    )
}

fn minimality_suite() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut instances = random_instances(6_6, 200);
    instances.push(two_port_example());
    for (i, r) in instances.iter().enumerate() {
        let forward = state_space_to_weierstrass(r, &tol()).and_then(|w| descriptor_minimality(&w, &tol()));
        let inverse = decompose_input_space(&r.m, &r.d, &r.b, &tol())
            .and_then(|dec| inverse_weierstrass(r, &dec, &tol()))
            .and_then(|w| descriptor_minimality(&w, &tol()));
        for (label, rep) in [("forward", forward), ("inverse", inverse)] {
            match rep {
                Ok(rep) if rep.minimal => {}
                Ok(rep) => {
                    let bad: Vec<&str> = rep.conditions.iter().filter(|c| !c.holds).map(|c| c.label).collect();
                    failures.push(format!("#{i} {label}: {bad:?}"));
                }
                Err(e) => failures.push(format!("#{i} {label}: {e}")),
            }
        }
    }
    outcome(
        "minimality",
        failures.is_empty(),
        format!("200 random instances plus the two-port example, both Weierstrass forms, failures {failures:?}"),
    )
}

/// Distinct values of an ascending list, clustered at `thr`.
fn distinct(values: &[f64], thr: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        if out.last().is_none_or(|&last| v - last > thr) {
            out.push(v);
        }
    }
    out
}

/// Largest number of eigenvalues of `inner` strictly between two consecutive
/// distinct eigenvalues of `outer`.
fn max_between(outer: &[f64], inner: &[f64], thr: f64) -> usize {
    distinct(outer, thr)
        .windows(2)
        .map(|w| inner.iter().filter(|&&v| v > w[0] + thr && v < w[1] - thr).count())
        .max()
        .unwrap_or(0)
}

fn interlacing_suite() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut worst_slack = f64::INFINITY;
    let mut checked = 0;
    for (i, r) in random_instances(7_7, 200).iter().enumerate() {
        let m = r.ports();
        let rep = match interlace_verify(r, &tol()) {
            Ok(rep) => rep,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        checked += rep.inequality_results.len();
        worst_slack = worst_slack.min(rep.worst_slack());
        let caps = pole_zero_report(r, &tol()).map(|p| p.within_caps()).unwrap_or(false);
        // Independent count on the raw spectra.
        let inv = inverse_state_space(r, &tol()).expect("inverse exists");
        let poles = skew_spectrum(&r.a);
        let zeros = skew_spectrum(&inv.a);
        let thr = 1e-7;
        let between = max_between(&poles, &zeros, thr).max(max_between(&zeros, &poles, thr));
        if !rep.passed() || !caps || between > m {
            failures.push(format!("#{i}"));
        }
    }
    outcome(
        "interlacing",
        failures.is_empty(),
        format!("200 instances, {checked} inequalities, worst slack {worst_slack:.1e}, failures {failures:?}"),
    )
}

// ---------------------------------------------------------------------------
// Hermitian eigenvalue bounds

fn eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Test-side Weyl check: worst slack of both sides over all index pairs.
fn weyl_oracle(m: &ComplexMatrix, n: &ComplexMatrix) -> f64 {
    let (lm, ln, ls) = (eigenvalues(m), eigenvalues(n), eigenvalues(&(m + n)));
    let k = lm.len();
    let mut worst = f64::INFINITY;
    for j in 0..k {
        for l in 0..k {
            let mid = lm[j] + ln[l];
            if j + l + 1 >= k {
                worst = worst.min(mid - ls[j + l + 1 - k]);
            }
            if j + l < k {
                worst = worst.min(ls[j + l] - mid);
            }
        }
    }
    worst
}

fn eigenvalue_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1_000);
    let allowance = 1e-10;
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let m = random_hermitian(&mut rng, n);
        // Low-rank, indefinite perturbations exercise the inertia refinement.
        let rank = rng.gen_range(0..=n);
        let g = ComplexMatrix::from_fn(n, rank, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let signs = DMatrix::from_fn(rank, rank, |i, j| {
            if i == j {
                Complex64::new(if rng.gen_bool(0.5) { 1.0 } else { -1.0 }, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let pert = &g * signs * g.adjoint();
        let pert = (&pert + pert.adjoint()).map(|v| v * 0.5);
        let leading = rng.gen_range(0..=n);
        let weyl = weyl_check(&m, &pert, allowance);
        let inertia = inertia_check(&m, &pert, allowance);
        let cauchy = cauchy_check(&m, leading, allowance);
        let oracle = weyl_oracle(&m, &pert);
        match (weyl, inertia, cauchy) {
            (Ok(w), Ok(i), Ok(c)) => {
                worst = worst.min(w.worst_slack).min(i.worst_slack).min(c.worst_slack);
                if !(w.passed && i.passed && c.passed) || oracle < -allowance {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    outcome(
        "eigenvalue bounds",
        failures == 0,
        format!("1000 Hermitian triples, {failures} failures, worst slack {worst:.1e}"),
    )
}

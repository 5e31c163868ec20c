//! Acceptance gate: one test per shipped guarantee, each printing a
//! criterion line with its runtime. Run with --nocapture to see the lines.
//!
//! Every criterion runs the public suite entry points at their vetted
//! bounds with seed 0 and requires every report verified, inside a
//! generous wall-clock budget (these finish well under it on a laptop).
#![allow(clippy::needless_range_loop)]

use std::time::Instant;

use rdcas::coeff::{parse_coeff_expr, rat, rat_int, SymPoly};
use rdcas::dirichletseries::Dps;
use rdcas::powerseries::{riordan_build, Fps};
use rdcas::report::VerificationReport;
use rdcas::suites::{run_suite, Suite};

fn assert_all_verified(reports: &[VerificationReport], expected_at_least: usize) {
    assert!(
        reports.len() >= expected_at_least,
        "only {} reports, expected at least {}",
        reports.len(),
        expected_at_least
    );
    for r in reports {
        assert!(
            r.is_verified(),
            "{} failed at n={}: {}",
            r.identity_id,
            r.n,
            r.residual.as_deref().unwrap_or("no residual")
        );
    }
}

fn run_criterion(label: &str, suite: Suite, n_max: usize, expected_at_least: usize, budget_s: f64) {
    let start = Instant::now();
    let reports = run_suite(suite, n_max, 0).unwrap();
    assert_all_verified(&reports, expected_at_least);
    let elapsed = start.elapsed().as_secs_f64();
    println!("{}: PASS ({:.2}s, {} reports)", label, elapsed, reports.len());
    assert!(elapsed < budget_s, "{} took {:.2}s, budget {}s", label, elapsed, budget_s);
}

#[test]
fn criterion_1_fps_shift_identities() {
    run_criterion("criterion 1", Suite::Theorem1, 12, 500, 10.0);
}

#[test]
fn criterion_2_dirichlet_group_law() {
    run_criterion("criterion 2", Suite::Theorem2, 24, 50, 30.0);
}

#[test]
fn criterion_3_dps_shift_identities() {
    run_criterion("criterion 3", Suite::Theorem3, 30, 1000, 60.0);
}

#[test]
fn criterion_4_lagrange_expansions() {
    let start = Instant::now();
    let fps = run_suite(Suite::LagrangeFps, 8, 0).unwrap();
    let dps = run_suite(Suite::LagrangeDps, 24, 0).unwrap();
    assert_all_verified(&fps, 5);
    assert_all_verified(&dps, 5);
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 4: PASS ({:.2}s, {} reports)", elapsed, fps.len() + dps.len());
    assert!(elapsed < 10.0);
}

#[test]
fn criterion_5_abel_identities() {
    // 4 families over 2..=60 plus the classical prime-power specializations
    run_criterion("criterion 5", Suite::Abel, 60, 236 + 20, 30.0);
}

#[test]
fn criterion_6_u_polynomial_relations() {
    run_criterion("criterion 6", Suite::Un, 30, 100, 30.0);
}

#[test]
fn criterion_7_factorial_weight_sums() {
    run_criterion("criterion 7", Suite::Binomf, 200, 199, 10.0);
}

#[test]
fn criterion_8_convolution_polynomial_routes() {
    run_criterion("criterion 8", Suite::Convpoly, 30, 200, 10.0);
}

#[test]
fn criterion_9_independent_oracles() {
    let start = Instant::now();

    // Mobius function by an Eratosthenes-style sieve, written without any
    // library helpers so it can stand as an oracle for ones^-1.
    let bound = 1000usize;
    let mut mu = vec![1i64; bound + 1];
    let mut is_prime = vec![true; bound + 1];
    for p in 2..=bound {
        if !is_prime[p] {
            continue;
        }
        for m in (p..=bound).step_by(p) {
            if m > p {
                is_prime[m] = false;
            }
            mu[m] = -mu[m];
        }
        for m in (p * p..=bound).step_by(p * p) {
            mu[m] = 0;
        }
    }
    let mobius = Dps::ones(bound).inv().unwrap();
    for n in 1..=bound {
        assert_eq!(
            *mobius.coeff(n),
            SymPoly::constant(rat_int(mu[n])),
            "mobius mismatch at {}",
            n
        );
    }
    let sieve_elapsed = start.elapsed().as_secs_f64();
    assert!(sieve_elapsed < 5.0, "mobius check took {:.2}s", sieve_elapsed);

    // Dirichlet product against trial-division pair enumeration.
    let order = 200usize;
    let mut a = Dps::zero(order);
    let mut b = Dps::zero(order);
    for n in 1..=order {
        let ni = n as i64;
        a.set_coeff(n, SymPoly::constant(rat(ni % 7 - 3, n as u64 % 4 + 1)));
        b.set_coeff(n, SymPoly::constant(rat(5 - ni % 9, n as u64 % 3 + 1)));
    }
    a.set_coeff(2, parse_coeff_expr("phi+1").unwrap());
    b.set_coeff(3, parse_coeff_expr("beta").unwrap());
    let product = a.mul(&b).unwrap();
    for n in 1..=order {
        let mut acc = SymPoly::zero();
        for d in 1..=n {
            if n % d == 0 {
                acc = acc.add(&a.coeff(d).mul(b.coeff(n / d)));
            }
        }
        assert_eq!(*product.coeff(n), acc, "product mismatch at {}", n);
    }

    // Pascal matrix against the additive recurrence.
    let order = 12usize;
    let geom = Fps::geometric(order);
    let pascal = riordan_build(&geom, &geom).unwrap();
    let mut c = vec![vec![0i64; order + 1]; order + 1];
    c[0][0] = 1;
    for n in 1..=order {
        c[n][0] = 1;
        for m in 1..=n {
            c[n][m] = c[n - 1][m - 1] + c[n - 1][m];
        }
    }
    for n in 0..=order {
        for m in 0..=order {
            assert_eq!(
                pascal.table().entry(n, m),
                SymPoly::constant(rat_int(c[n][m])),
                "pascal mismatch at ({}, {})",
                n,
                m
            );
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 9: PASS ({:.2}s)", elapsed);
}

//! Batch verification suites. Each suite expands one family of identities
//! over a range of indices and randomized inputs and emits one report per
//! checked instance. Runs are deterministic for a given (suite, n_max,
//! seed): randomness comes only from a ChaCha stream seeded explicitly.

use crate::coeff::{rat, SymPoly, Variable};
use crate::dirichletseries::{divisors, h_poly, h_poly_explicit, ln_as_poly, Dps};
use crate::error::Result;
use crate::lift::{
    epsilon, verify_abel, verify_abel_classical, verify_binomf_identities,
    verify_un_relations, AbelFamily,
};
use crate::powerseries::{
    compose_by_columns, conv_poly, conv_poly_explicit, lagrange_expand_fps,
    riordan_build, theorem1_transform, Fps,
};
use crate::rdgroup::{
    lagrange_expand_dps, rd_build, rd_inv, rd_mul, theorem3_transform, RdMatrix,
};
use crate::report::VerificationReport;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Theorem3,
    LagrangeFps,
    LagrangeDps,
    Abel,
    Un,
    Binomf,
    Convpoly,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Theorem3,
        Suite::LagrangeFps,
        Suite::LagrangeDps,
        Suite::Abel,
        Suite::Un,
        Suite::Binomf,
        Suite::Convpoly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem3 => "theorem3",
            Suite::LagrangeFps => "lagrange-fps",
            Suite::LagrangeDps => "lagrange-dps",
            Suite::Abel => "abel",
            Suite::Un => "un",
            Suite::Binomf => "binomf",
            Suite::Convpoly => "convpoly",
        }
    }

    pub fn parse(text: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == text)
    }

    /// The n range each suite is vetted for by default; callers may pass
    /// any other bound to run_suite.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Theorem1 => 12,
            Suite::Theorem2 => 24,
            Suite::Theorem3 => 30,
            Suite::LagrangeFps => 8,
            Suite::LagrangeDps => 24,
            Suite::Abel => 60,
            Suite::Un => 30,
            Suite::Binomf => 200,
            Suite::Convpoly => 30,
        }
    }
}

pub fn run_suite(suite: Suite, n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    match suite {
        Suite::Theorem1 => suite_theorem1(n_max, seed),
        Suite::Theorem2 => suite_theorem2(n_max, seed),
        Suite::Theorem3 => suite_theorem3(n_max, seed),
        Suite::LagrangeFps => suite_lagrange_fps(n_max, seed),
        Suite::LagrangeDps => suite_lagrange_dps(n_max, seed),
        Suite::Abel => suite_abel(n_max),
        Suite::Un => suite_un(n_max),
        Suite::Binomf => suite_binomf(n_max),
        Suite::Convpoly => suite_convpoly(n_max, seed),
    }
}

fn random_rat(rng: &mut ChaCha8Rng) -> crate::coeff::Rational {
    rat(rng.random_range(-4..=4), rng.random_range(1..=4) as u64)
}

fn random_nonzero_rat(rng: &mut ChaCha8Rng) -> crate::coeff::Rational {
    let sign = if rng.random_range(0..2) == 0 { 1 } else { -1 };
    rat(sign * rng.random_range(1..=4), rng.random_range(1..=4) as u64)
}

fn random_fps(rng: &mut ChaCha8Rng, order: usize) -> Fps {
    Fps::from_fn(order, |_| SymPoly::constant(random_rat(rng)))
}

fn random_unipotent_fps(rng: &mut ChaCha8Rng, order: usize) -> Fps {
    Fps::from_fn(order, |n| {
        if n == 0 {
            SymPoly::one()
        } else {
            SymPoly::constant(random_rat(rng))
        }
    })
}

fn random_dps(rng: &mut ChaCha8Rng, order: usize) -> Dps {
    Dps::from_fn(order, |_| SymPoly::constant(random_rat(rng)))
}

fn random_unipotent_dps(rng: &mut ChaCha8Rng, order: usize) -> Dps {
    Dps::from_fn(order, |n| {
        if n == 1 {
            SymPoly::one()
        } else {
            SymPoly::constant(random_rat(rng))
        }
    })
}

fn random_proper_rd(rng: &mut ChaCha8Rng, order: usize) -> Result<RdMatrix> {
    let b = Dps::from_fn(order, |n| {
        if n == 1 {
            SymPoly::constant(random_nonzero_rat(rng))
        } else {
            SymPoly::constant(random_rat(rng))
        }
    });
    let a = random_unipotent_dps(rng, order);
    rd_build(&b, &a)
}

/// 1 + c*x*d(x) at the requested order; d usually arrives one order short
/// because differentiation dropped it.
fn one_plus_x_scaled(d: &Fps, c: &SymPoly, order: usize) -> Fps {
    Fps::from_fn(order, |n| {
        if n == 0 {
            SymPoly::one()
        } else if n - 1 <= d.order() {
            d.coeff(n - 1).mul(c)
        } else {
            SymPoly::zero()
        }
    })
}

fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|&(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn poly_report(
    id: &str,
    n: u64,
    p: &BTreeMap<String, String>,
    lhs: &SymPoly,
    rhs: &SymPoly,
) -> VerificationReport {
    if lhs == rhs {
        VerificationReport::verified(id, n, p.clone())
    } else {
        VerificationReport::failed(id, n, p.clone(), lhs.sub(rhs).to_string())
    }
}

fn fps_report(
    id: &str,
    n: u64,
    p: &BTreeMap<String, String>,
    lhs: &Fps,
    rhs: &Fps,
) -> VerificationReport {
    for k in 0..=lhs.order().min(rhs.order()) {
        if lhs.coeff(k) != rhs.coeff(k) {
            let residual = format!("coefficient {}: {}", k, lhs.coeff(k).sub(rhs.coeff(k)));
            return VerificationReport::failed(id, n, p.clone(), residual);
        }
    }
    VerificationReport::verified(id, n, p.clone())
}

fn dps_report(
    id: &str,
    n: u64,
    p: &BTreeMap<String, String>,
    lhs: &Dps,
    rhs: &Dps,
) -> VerificationReport {
    for k in 1..=lhs.order().min(rhs.order()) {
        if lhs.coeff(k) != rhs.coeff(k) {
            let residual = format!("coefficient {}: {}", k, lhs.coeff(k).sub(rhs.coeff(k)));
            return VerificationReport::failed(id, n, p.clone(), residual);
        }
    }
    VerificationReport::verified(id, n, p.clone())
}

/// The beta-shift transform on power series, cross-checked four ways:
/// coefficient n against the damped product (1 - x b (log a)') a^(phi+bn),
/// the balancing identity (1 + x b (log t)') t^phi back to a^(phi+bn),
/// the two substitution identities, and for rational beta the matrix
/// statement (1, a^-b)^-1 = (1, t^b) by triangular solve.
fn suite_theorem1(n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = n_max;
    let mut series: Vec<(String, Fps)> = vec![
        ("exp".to_string(), Fps::exp_series(order)),
        ("geom".to_string(), Fps::geometric(order)),
    ];
    for i in 1..=5 {
        series.push((format!("random-{}", i), random_unipotent_fps(&mut rng, order)));
    }
    let betas: Vec<(&str, SymPoly)> = vec![
        ("-1", SymPoly::integer(-1)),
        ("1", SymPoly::one()),
        ("2", SymPoly::integer(2)),
        ("beta", SymPoly::beta()),
    ];
    let phi = SymPoly::phi();
    let mut reports = Vec::new();
    for (alabel, a) in &series {
        let conv = conv_poly(a)?;
        let log_d = a.log()?.derive();
        for (blabel, beta) in &betas {
            let p = params(&[("series", alabel), ("beta", blabel)]);
            let t = theorem1_transform(a, beta)?;
            let damp1 = one_plus_x_scaled(&log_d, &beta.neg(), order);
            for n in 0..=order {
                let shift = phi.add(&beta.scale(&rat(n as i64, 1)));
                let mut lhs = SymPoly::zero();
                for k in 0..=n {
                    if !damp1.coeff(n - k).is_zero() {
                        let term = conv[k].substitute_var(Variable::Phi, &shift);
                        lhs = lhs.add(&damp1.coeff(n - k).mul(&term));
                    }
                }
                reports.push(poly_report("theorem1/coeff-shift", n as u64, &p, &lhs, &t[n]));
            }
            let t1 = Fps::from_fn(order, |n| {
                t[n].substitute_var(Variable::Phi, &SymPoly::one())
            });
            let damp2 = one_plus_x_scaled(&t1.log()?.derive(), beta, order);
            for n in 0..=order {
                let shift = phi.add(&beta.scale(&rat(n as i64, 1)));
                let mut lhs = SymPoly::zero();
                for k in 0..=n {
                    if !damp2.coeff(n - k).is_zero() {
                        lhs = lhs.add(&damp2.coeff(n - k).mul(&t[k]));
                    }
                }
                let rhs = conv[n].substitute_var(Variable::Phi, &shift);
                reports.push(poly_report("theorem1/coeff-balance", n as u64, &p, &lhs, &rhs));
            }
            let a_negb = a.pow_sym(&beta.neg())?;
            let direct = compose_by_columns(&t1, &a_negb)?;
            reports.push(fps_report("theorem1/subst-direct", order as u64, &p, &direct, a));
            let t_beta = Fps::from_fn(order, |n| t[n].substitute_var(Variable::Phi, beta));
            let inverse = compose_by_columns(a, &t_beta)?;
            reports.push(fps_report("theorem1/subst-inverse", order as u64, &p, &inverse, &t1));
            if *blabel != "beta" {
                let solved = riordan_build(&Fps::one(order), &a_negb)?
                    .table()
                    .inverse()?;
                let built = riordan_build(&Fps::one(order), &t_beta)?;
                let report = if solved == *built.table() {
                    VerificationReport::verified("theorem1/matrix-inverse", order as u64, p.clone())
                } else {
                    VerificationReport::failed(
                        "theorem1/matrix-inverse",
                        order as u64,
                        p.clone(),
                        "triangular solve of (1, a^-b) differs from (1, t^b)".to_string(),
                    )
                };
                reports.push(report);
            }
        }
    }
    Ok(reports)
}

/// Group law, inverse, and associativity of the divisor-matrix group on
/// randomized proper pairs: the built product table must equal the literal
/// table product, and inverses must compose to the identity both ways.
fn suite_theorem2(n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = n_max;
    let mut reports = Vec::new();
    for i in 0..20u64 {
        let m1 = random_proper_rd(&mut rng, order)?;
        let m2 = random_proper_rd(&mut rng, order)?;
        let idx = i.to_string();
        let p = params(&[("pair", &idx)]);
        let prod = rd_mul(&m1, &m2)?;
        let literal = m1.table().matmul(m2.table())?;
        let report = if prod.table() == &literal {
            VerificationReport::verified("theorem2/product-table", order as u64, p.clone())
        } else {
            VerificationReport::failed(
                "theorem2/product-table",
                order as u64,
                p.clone(),
                "group-law table differs from matrix product".to_string(),
            )
        };
        reports.push(report);
        let inv = rd_inv(&m1)?;
        let left = rd_mul(&inv, &m1)?;
        let right = rd_mul(&m1, &inv)?;
        let report = if left.table().is_identity() && right.table().is_identity() {
            VerificationReport::verified("theorem2/inverse-identity", order as u64, p.clone())
        } else {
            VerificationReport::failed(
                "theorem2/inverse-identity",
                order as u64,
                p.clone(),
                "inverse does not compose to the identity".to_string(),
            )
        };
        reports.push(report);
    }
    for i in 0..10u64 {
        let m1 = random_proper_rd(&mut rng, order)?;
        let m2 = random_proper_rd(&mut rng, order)?;
        let m3 = random_proper_rd(&mut rng, order)?;
        let idx = i.to_string();
        let p = params(&[("triple", &idx)]);
        let left = rd_mul(&rd_mul(&m1, &m2)?, &m3)?;
        let right = rd_mul(&m1, &rd_mul(&m2, &m3)?)?;
        let report = if left.table() == right.table() {
            VerificationReport::verified("theorem2/associativity", order as u64, p)
        } else {
            VerificationReport::failed(
                "theorem2/associativity",
                order as u64,
                p,
                "rd_mul is not associative on this triple".to_string(),
            )
        };
        reports.push(report);
    }
    Ok(reports)
}

/// The beta-shift transform on Dirichlet series, cross-checked against the
/// derivative-damped displayed products and against the triangular-solve
/// inverse of <1, a^-b> applied to a^phi.
fn suite_theorem3(n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = n_max;
    let mut series: Vec<(String, Dps)> = vec![("epsilon".to_string(), epsilon(order))];
    for i in 1..=3 {
        series.push((format!("random-{}", i), random_unipotent_dps(&mut rng, order)));
    }
    let betas: Vec<(&str, SymPoly)> = vec![
        ("1", SymPoly::one()),
        ("-1", SymPoly::integer(-1)),
        ("beta", SymPoly::beta()),
    ];
    let phi = SymPoly::phi();
    let mut reports = Vec::new();
    for (alabel, a) in &series {
        let h = h_poly(a)?;
        let log_d = a.log()?.derive();
        for (blabel, beta) in &betas {
            let p = params(&[("series", alabel), ("beta", blabel)]);
            let t = theorem3_transform(a, beta)?;
            let damp1 = Dps::delta(order).add(&log_d.scale_sym(beta))?;
            for n in 1..=order {
                let shift = phi.add(&beta.mul(&ln_as_poly(n as u64)));
                let mut lhs = SymPoly::zero();
                for d in divisors(n as u64) {
                    let d = d as usize;
                    if !damp1.coeff(d).is_zero() {
                        let term = h[n / d].substitute_var(Variable::Phi, &shift);
                        lhs = lhs.add(&damp1.coeff(d).mul(&term));
                    }
                }
                reports.push(poly_report("theorem3/coeff-shift", n as u64, &p, &lhs, &t[n]));
            }
            let t1 = Dps::from_fn(order, |n| {
                t[n].substitute_var(Variable::Phi, &SymPoly::one())
            });
            let damp2 = Dps::delta(order).sub(&t1.log()?.derive().scale_sym(beta))?;
            for n in 1..=order {
                let shift = phi.add(&beta.mul(&ln_as_poly(n as u64)));
                let mut lhs = SymPoly::zero();
                for d in divisors(n as u64) {
                    let d = d as usize;
                    if !damp2.coeff(d).is_zero() {
                        lhs = lhs.add(&damp2.coeff(d).mul(&t[n / d]));
                    }
                }
                let rhs = h[n].substitute_var(Variable::Phi, &shift);
                reports.push(poly_report("theorem3/coeff-balance", n as u64, &p, &lhs, &rhs));
            }
            let solved = rd_build(&Dps::delta(order), &a.pow_sym(&beta.neg())?)?
                .table()
                .inverse()?;
            let a_phi = Dps::from_fn(order, |n| h[n].clone());
            let cols = solved.matvec(&a_phi)?;
            for n in 1..=order {
                reports.push(poly_report(
                    "theorem3/inverse-columns",
                    n as u64,
                    &p,
                    cols.coeff(n),
                    &t[n],
                ));
            }
        }
    }
    Ok(reports)
}

fn suite_lagrange_fps(n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = n_max;
    let mut reports = Vec::new();
    for i in 0..5u64 {
        let f = random_fps(&mut rng, order);
        let a = random_unipotent_fps(&mut rng, order);
        let idx = i.to_string();
        let p = params(&[("pair", &idx)]);
        let got = lagrange_expand_fps(&f, &a)?;
        let damp = one_plus_x_scaled(&a.log()?.derive(), &SymPoly::integer(-1), order);
        let want = f.mul(&damp.inv()?)?;
        reports.push(fps_report("lagrange/fps-expansion", order as u64, &p, &got, &want));
    }
    Ok(reports)
}

fn suite_lagrange_dps(n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = n_max;
    let mut reports = Vec::new();
    for i in 0..5u64 {
        let f = random_dps(&mut rng, order);
        let a = random_unipotent_dps(&mut rng, order);
        let idx = i.to_string();
        let p = params(&[("pair", &idx)]);
        let got = lagrange_expand_dps(&f, &a)?;
        let damp = Dps::delta(order).add(&a.log()?.derive())?;
        let want = f.mul(&damp.inv()?)?;
        reports.push(dps_report("lagrange/dps-expansion", order as u64, &p, &got, &want));
    }
    Ok(reports)
}

fn suite_abel(n_max: usize) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for n in 2..=n_max as u64 {
        for family in AbelFamily::ALL {
            reports.push(verify_abel(n, family));
        }
    }
    for (p, m) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4), (3, 3)] {
        for family in AbelFamily::ALL {
            reports.push(verify_abel_classical(p, m, family));
        }
    }
    Ok(reports)
}

fn suite_un(n_max: usize) -> Result<Vec<VerificationReport>> {
    let order = 5.max(n_max.ilog2() as usize + 1);
    let series: Vec<(&str, Fps)> = vec![
        ("exp", Fps::exp_series(order)),
        ("geom", Fps::geometric(order)),
    ];
    let betas: Vec<(&str, SymPoly)> = vec![("1", SymPoly::one()), ("beta", SymPoly::beta())];
    let mut reports = Vec::new();
    for (alabel, a) in &series {
        for (_, beta) in &betas {
            for n in 2..=n_max as u64 {
                let mut r = verify_un_relations(a, beta, n)?;
                r.parameters.insert("series".to_string(), alabel.to_string());
                reports.push(r);
            }
        }
    }
    Ok(reports)
}

fn suite_binomf(n_max: usize) -> Result<Vec<VerificationReport>> {
    Ok((2..=n_max as u64).map(verify_binomf_identities).collect())
}

/// Cross-checks the two independent routes to the convolution polynomials:
/// symbolic exponentiation versus the explicit partition sums.
fn suite_convpoly(n_max: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fps_bound = 2.max(n_max / 3);
    let mut reports = Vec::new();
    for i in 1..=5 {
        let label = format!("random-{}", i);
        let a = random_unipotent_fps(&mut rng, fps_bound);
        let p = params(&[("series", &label)]);
        let via_exp = conv_poly(&a)?;
        let explicit = conv_poly_explicit(&a)?;
        for n in 0..=fps_bound {
            reports.push(poly_report("convpoly/fps", n as u64, &p, &via_exp[n], &explicit[n]));
        }
    }
    for i in 1..=5 {
        let label = format!("random-{}", i);
        let a = random_unipotent_dps(&mut rng, n_max);
        let p = params(&[("series", &label)]);
        let via_exp = h_poly(&a)?;
        let explicit = h_poly_explicit(&a)?;
        for n in 1..=n_max {
            reports.push(poly_report("convpoly/dps", n as u64, &p, &via_exp[n], &explicit[n]));
        }
    }
    Ok(reports)
}

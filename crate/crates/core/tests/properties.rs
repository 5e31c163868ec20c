//! Randomized algebraic properties: ring axioms for the coefficient
//! polynomials, the calculus rules both series spaces are built on, group
//! behavior of the two matrix families, and the dual-route identities that
//! tie the closed-form transforms to triangular solves.

use proptest::prelude::*;
use rdcas::coeff::{parse_coeff_expr, rat, Monomial, Rational, SymPoly, Variable};
use rdcas::dirichletseries::{divisors, Dps};
use rdcas::lift::{binom_f, epsilon, lift_fps, lift_fps_pow, u_poly, weights};
use rdcas::powerseries::{
    compose_by_columns, conv_poly, riordan_apply, riordan_build, riordan_mul,
    theorem1_transform, Fps,
};
use rdcas::rdgroup::{rd_build, theorem3_transform};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1u64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        Just(Variable::Phi),
        Just(Variable::Beta),
        Just(Variable::LogPrime(2)),
        Just(Variable::LogPrime(3)),
    ]
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((arb_variable(), 1u32..=3), 0..=3).prop_map(|factors| {
        let mut m = Monomial::unit();
        for (v, e) in factors {
            for _ in 0..e {
                m = m.mul(&Monomial::var(v));
            }
        }
        m
    })
}

fn arb_sympoly() -> impl Strategy<Value = SymPoly> {
    proptest::collection::vec((arb_monomial(), arb_rational()), 0..=4).prop_map(|terms| {
        let mut p = SymPoly::zero();
        for (m, c) in terms {
            p = p.add(&SymPoly::monomial(m, c));
        }
        p
    })
}

fn arb_fps(order: usize) -> impl Strategy<Value = Fps> {
    proptest::collection::vec(arb_rational(), order + 1)
        .prop_map(|cs| Fps::from_coeffs(cs.into_iter().map(SymPoly::constant).collect()))
}

fn arb_unipotent_fps(order: usize) -> impl Strategy<Value = Fps> {
    proptest::collection::vec(arb_rational(), order).prop_map(move |cs| {
        Fps::from_fn(order, |n| {
            if n == 0 {
                SymPoly::one()
            } else {
                SymPoly::constant(cs[n - 1].clone())
            }
        })
    })
}

fn arb_dps(order: usize) -> impl Strategy<Value = Dps> {
    proptest::collection::vec(arb_rational(), order)
        .prop_map(move |cs| Dps::from_fn(order, |n| SymPoly::constant(cs[n - 1].clone())))
}

fn arb_unipotent_dps(order: usize) -> impl Strategy<Value = Dps> {
    proptest::collection::vec(arb_rational(), order).prop_map(move |cs| {
        Dps::from_fn(order, |n| {
            if n == 1 {
                SymPoly::one()
            } else {
                SymPoly::constant(cs[n - 1].clone())
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn sympoly_ring_axioms(a in arb_sympoly(), b in arb_sympoly(), c in arb_sympoly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&SymPoly::one()), a.clone());
        prop_assert_eq!(a.add(&SymPoly::zero()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn sympoly_exact_division_inverts_multiplication(
        a in arb_sympoly(),
        b in arb_sympoly(),
    ) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn sympoly_render_parse_round_trip(a in arb_sympoly()) {
        prop_assert_eq!(parse_coeff_expr(&a.to_string()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fps_derivative_rules(
        a in arb_unipotent_fps(8),
        b in arb_fps(8),
    ) {
        // product rule, compared at the dropped order
        let lhs = a.mul(&b).unwrap().derive();
        let rhs = a.truncate(7).mul(&b.derive()).unwrap()
            .add(&a.derive().mul(&b.truncate(7)).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);

        // power rule for the symbolic exponent
        let phi = SymPoly::phi();
        let lhs = a.pow_sym(&phi).unwrap().derive();
        let rhs = a.pow_sym(&phi.sub(&SymPoly::one())).unwrap().truncate(7)
            .mul(&a.derive()).unwrap()
            .scale_sym(&phi);
        prop_assert_eq!(&lhs, &rhs);

        // log rule
        let lhs = a.log().unwrap().derive();
        let rhs = a.derive().mul(&a.inv().unwrap().truncate(7)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
    }

    #[test]
    fn fps_integer_and_symbolic_powers_agree(a in arb_unipotent_fps(8), e in -3i64..=3) {
        let via_int = a.pow_int(e).unwrap();
        let via_sym = a.pow_sym(&SymPoly::integer(e)).unwrap();
        prop_assert_eq!(via_int, via_sym);
    }

    #[test]
    fn dps_derivative_is_a_derivation(a in arb_dps(30), b in arb_dps(30)) {
        let lhs = a.mul(&b).unwrap().derive();
        let rhs = a.mul(&b.derive()).unwrap().add(&a.derive().mul(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dps_mul_matches_divisor_enumeration(a in arb_dps(30), b in arb_dps(30)) {
        let prod = a.mul(&b).unwrap();
        for n in 1..=30usize {
            let mut want = SymPoly::zero();
            for d in divisors(n as u64) {
                let d = d as usize;
                want = want.add(&a.coeff(d).mul(b.coeff(n / d)));
            }
            prop_assert_eq!(prod.coeff(n), &want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dps_symbolic_power_is_additive(a in arb_unipotent_dps(24)) {
        let phi = SymPoly::phi();
        let beta = SymPoly::beta();
        let lhs = a.pow_sym(&phi).unwrap().mul(&a.pow_sym(&beta).unwrap()).unwrap();
        let rhs = a.pow_sym(&phi.add(&beta)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dps_log_inverts_symbolic_power(a in arb_unipotent_dps(24)) {
        // [n^-s] log of a^phi is linear in phi with slope [n^-s] log a
        let l = a.log().unwrap();
        let p = a.pow_sym(&SymPoly::phi()).unwrap().log().unwrap();
        for n in 2..=24usize {
            prop_assert_eq!(p.coeff(n), &l.coeff(n).mul(&SymPoly::phi()));
        }
    }

    #[test]
    fn riordan_group_behaves(
        b1 in arb_unipotent_fps(8), a1 in arb_unipotent_fps(8),
        b2 in arb_unipotent_fps(8), a2 in arb_unipotent_fps(8),
        b3 in arb_unipotent_fps(8), a3 in arb_unipotent_fps(8),
        f in arb_fps(8),
    ) {
        let m1 = riordan_build(&b1, &a1).unwrap();
        let m2 = riordan_build(&b2, &a2).unwrap();
        let m3 = riordan_build(&b3, &a3).unwrap();

        // group law equals literal table product
        let prod = riordan_mul(&m1, &m2).unwrap();
        prop_assert_eq!(prod.table(), &m1.table().matmul(m2.table()).unwrap());

        // associativity
        let left = riordan_mul(&riordan_mul(&m1, &m2).unwrap(), &m3).unwrap();
        let right = riordan_mul(&m1, &riordan_mul(&m2, &m3).unwrap()).unwrap();
        prop_assert_eq!(left.table(), right.table());

        // action equals b * f(x a(x))
        let via_table = riordan_apply(&m1, &f).unwrap();
        let via_compose = b1.mul(&compose_by_columns(&f, &a1).unwrap()).unwrap();
        prop_assert_eq!(via_table, via_compose);
    }

    #[test]
    fn fps_dual_route_inverse_pair(a in arb_unipotent_fps(8)) {
        // with b the beta=1 shift of a, the damped pair
        // (1 + x (log b)', b) inverts to (1 - x (log a)', a^-1)
        let t = theorem1_transform(&a, &SymPoly::one()).unwrap();
        let b = Fps::from_fn(8, |n| t[n].substitute_var(Variable::Phi, &SymPoly::one()));
        let damp_b = one_plus_x(&b.log().unwrap().derive(), false);
        let damp_a = one_plus_x(&a.log().unwrap().derive(), true);
        let lhs = riordan_build(&damp_b, &b).unwrap().table().inverse().unwrap();
        let rhs = riordan_build(&damp_a, &a.inv().unwrap()).unwrap();
        prop_assert_eq!(&lhs, rhs.table());
    }

    #[test]
    fn fps_derivative_commutes_through_columns(b in arb_unipotent_fps(8)) {
        // D (1, b) f = (b (1 + x (log b)'), b) D f
        let f = Fps::geometric(8);
        let one = Fps::one(8);
        let m = riordan_build(&one, &b).unwrap();
        let lhs = riordan_apply(&m, &f).unwrap().derive();
        let damp = b.truncate(7).mul(&one_plus_x(&b.log().unwrap().derive(), false).truncate(7)).unwrap();
        let m2 = riordan_build(&damp, &b.truncate(7)).unwrap();
        let rhs = riordan_apply(&m2, &f.derive()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dps_dual_route_inverse_pair(a in arb_unipotent_dps(16)) {
        // with t the beta=1 shift of a, <1 - (log t)', t> inverts to
        // <1 + (log a)', a^-1>
        let tv = theorem3_transform(&a, &SymPoly::one()).unwrap();
        let t = Dps::from_fn(16, |n| tv[n].substitute_var(Variable::Phi, &SymPoly::one()));
        let damp_t = Dps::delta(16).sub(&t.log().unwrap().derive()).unwrap();
        let damp_a = Dps::delta(16).add(&a.log().unwrap().derive()).unwrap();
        let lhs = rd_build(&damp_t, &t).unwrap().table().inverse().unwrap();
        let rhs = rd_build(&damp_a, &a.inv().unwrap()).unwrap();
        prop_assert_eq!(&lhs, rhs.table());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lift_is_a_homomorphism(a in arb_unipotent_fps(4), b in arb_unipotent_fps(4)) {
        let la = lift_fps(&a, 30).unwrap();
        let lb = lift_fps(&b, 30).unwrap();
        let lc = lift_fps(&a.mul(&b).unwrap(), 30).unwrap();
        prop_assert_eq!(la.mul(&lb).unwrap(), lc);
    }

    #[test]
    fn lift_power_compatibility(a in arb_unipotent_fps(4)) {
        let phi = SymPoly::phi();
        let direct = lift_fps_pow(&a, &phi, 16).unwrap();
        let through = lift_fps(&a, 16).unwrap().pow_sym(&phi).unwrap();
        prop_assert_eq!(&direct, &through);
        // coefficients factor over prime powers through conv polynomials
        let conv = conv_poly(&a).unwrap();
        for n in 1..=16u64 {
            let mut want = SymPoly::one();
            for (_, m) in rdcas::dirichletseries::factorize(n) {
                want = want.mul(&conv[m as usize]);
            }
            prop_assert_eq!(direct.coeff(n as usize), &want);
        }
    }

    #[test]
    fn transform_of_lift_follows_u_polynomials(a in arb_unipotent_fps(4)) {
        let lifted = lift_fps(&a, 12).unwrap();
        let terms = theorem3_transform(&lifted, &SymPoly::beta()).unwrap();
        let phi = SymPoly::phi();
        for n in 2..=12u64 {
            let shift = phi.add(&SymPoly::beta().mul(&rdcas::dirichletseries::ln_as_poly(n)));
            let un = u_poly(&a, n).unwrap().substitute_var(Variable::Phi, &shift);
            let want = phi.mul(&un).div_exact(&shift).unwrap()
                .scale(&Rational::new(1.into(), weights(n).f));
            prop_assert_eq!(&terms[n as usize], &want);
        }
    }

    #[test]
    fn binomf_sums_to_two_power(n in 2u64..=400) {
        let total: Rational = divisors(n).into_iter()
            .map(|d| binom_f(n, d).unwrap())
            .sum();
        prop_assert_eq!(total, Rational::from_integer((1u128 << weights(n).v).into()));
    }
}

/// 1 + x d(x) (or 1 - x d(x)) at order d.order() + 1.
fn one_plus_x(d: &Fps, negate: bool) -> Fps {
    Fps::from_fn(d.order() + 1, |n| {
        if n == 0 {
            SymPoly::one()
        } else if negate {
            d.coeff(n - 1).neg()
        } else {
            d.coeff(n - 1).clone()
        }
    })
}

#[test]
fn epsilon_pow_agrees_with_pow_sym() {
    let e = epsilon(30);
    let via_pow = e.pow_sym(&SymPoly::phi()).unwrap();
    let closed = rdcas::lift::epsilon_pow(&SymPoly::phi(), 30);
    assert_eq!(via_pow, closed);
}

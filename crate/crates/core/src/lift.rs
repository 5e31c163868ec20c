//! Multiplicative lift from power series to Dirichlet series and the
//! identity families it produces. For n = p1^m1 ... pr^mr the lift of a
//! unipotent a(x) has [n^-s] lift(a)^phi = prod s_mi(phi)/mi! where
//! s_m(phi)/m! are the convolution polynomials of a. The exponential
//! series lifts to epsilon with [n^-s] eps^phi = phi^v(n)/f(n), where
//! v(n) = sum of prime multiplicities and f(n) = product of their
//! factorials. The weight (n d)_f = f(n)/(f(d) f(n/d)) plays the role of
//! the binomial coefficient in four Abel-type identity families.

use crate::coeff::{factorial, Rational, SymPoly, Variable};
use crate::dirichletseries::{divisors, factorize, is_prime, ln_as_poly, Dps};
use crate::error::{Error, Result};
use crate::powerseries::{conv_poly, Fps};
use crate::report::VerificationReport;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// v(n) and f(n) for n >= 1: v(1) = 0, f(1) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticWeights {
    pub n: u64,
    pub v: u32,
    pub f: BigInt,
}

pub fn weights(n: u64) -> ArithmeticWeights {
    let mut v = 0u32;
    let mut f = BigInt::one();
    for (_, m) in factorize(n) {
        v += m;
        f *= factorial(m as u64);
    }
    ArithmeticWeights { n, v, f }
}

/// The weight (n d)_f = f(n)/(f(d) f(n/d)); exact rational, d must divide n.
pub fn binom_f(n: u64, d: u64) -> Result<Rational> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotADivisor { n, d });
    }
    let num = weights(n).f;
    let den = weights(d).f * weights(n / d).f;
    Ok(Rational::new(num, den))
}

fn max_multiplicity(n: u64) -> u32 {
    factorize(n).into_iter().map(|(_, m)| m).max().unwrap_or(0)
}

/// Numerator polynomials s_m(phi) = m! [x^m] a^phi, indexed by m up to
/// a.order(). Shared by the u_n construction and the lift.
fn s_polys(a: &Fps) -> Result<Vec<SymPoly>> {
    let conv = conv_poly(a)?;
    Ok(conv
        .iter()
        .enumerate()
        .map(|(m, c)| c.scale(&Rational::from_integer(factorial(m as u64))))
        .collect())
}

fn u_from_s(s: &[SymPoly], n: u64) -> SymPoly {
    let mut u = SymPoly::one();
    for (_, m) in factorize(n) {
        u = u.mul(&s[m as usize]);
    }
    u
}

/// u_n(phi) = prod s_mi(phi) over the factorization of n; u_1 = 1.
pub fn u_poly(a: &Fps, n: u64) -> Result<SymPoly> {
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let needed = max_multiplicity(n) as usize;
    if a.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: a.order() });
    }
    Ok(u_from_s(&s_polys(a)?, n))
}

/// Lift of a^e as a Dirichlet series of the given order:
/// coefficient at n is prod s_mi(e)/mi!.
pub fn lift_fps_pow(a: &Fps, e: &SymPoly, order: usize) -> Result<Dps> {
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    assert!(order >= 1);
    let needed = order.ilog2() as usize;
    if a.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: a.order() });
    }
    let conv: Vec<SymPoly> = conv_poly(a)?
        .iter()
        .map(|c| c.substitute_var(Variable::Phi, e))
        .collect();
    Ok(Dps::from_fn(order, |n| {
        let mut c = SymPoly::one();
        for (_, m) in factorize(n as u64) {
            c = c.mul(&conv[m as usize]);
        }
        c
    }))
}

/// Lift of a itself (the exponent-one case).
pub fn lift_fps(a: &Fps, order: usize) -> Result<Dps> {
    lift_fps_pow(a, &SymPoly::one(), order)
}

/// The lift of the exponential series: [n^-s] epsilon = 1/f(n).
pub fn epsilon(order: usize) -> Dps {
    Dps::from_fn(order, |n| {
        SymPoly::constant(Rational::new(BigInt::one(), weights(n as u64).f))
    })
}

/// epsilon^e without going through pow_sym: coefficient e^v(n)/f(n).
pub fn epsilon_pow(e: &SymPoly, order: usize) -> Dps {
    Dps::from_fn(order, |n| {
        let w = weights(n as u64);
        e.pow(w.v).scale(&Rational::new(BigInt::one(), w.f))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelFamily {
    Binomial,
    Shifted,
    Log1,
    Log2,
}

impl AbelFamily {
    pub const ALL: [AbelFamily; 4] = [
        AbelFamily::Binomial,
        AbelFamily::Shifted,
        AbelFamily::Log1,
        AbelFamily::Log2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AbelFamily::Binomial => "binomial",
            AbelFamily::Shifted => "shifted",
            AbelFamily::Log1 => "log1",
            AbelFamily::Log2 => "log2",
        }
    }

    pub fn parse(text: &str) -> Option<AbelFamily> {
        AbelFamily::ALL.iter().copied().find(|f| f.name() == text)
    }
}

/// The shifted-power factor x (x + ln k)^(v(k)-1), taken as 1 when
/// v(k) = 0 so that the x/x cancellation never leaves the polynomial ring.
fn abel_factor(x: &SymPoly, k: u64) -> SymPoly {
    let v = weights(k).v;
    if v == 0 {
        SymPoly::one()
    } else {
        x.mul(&x.add(&ln_as_poly(k)).pow(v - 1))
    }
}

/// Both sides of the selected Abel-type identity at n, fully expanded.
///
/// binomial: (phi+beta)(phi+beta+ln n)^(v(n)-1)
///           = sum (n d)_f phi(phi+ln d)^(v(d)-1) beta(beta+ln(n/d))^(v(n/d)-1)
/// shifted:  (phi+beta+ln n)^v(n)
///           = sum (n d)_f (phi+ln d)^v(d) beta(beta+ln(n/d))^(v(n/d)-1)
/// log1:     phi(phi+ln n)^(v(n)-1)
///           = sum (n d)_f phi^v(d) ln d (ln n)^(v(n/d)-1)
/// log2:     phi^v(n)
///           = sum (n d)_f phi(phi+ln d)^(v(d)-1) (-ln d)^v(n/d)
///
/// The d = n term of log1 reads ln n (ln n)^-1 = 1; all other edge terms
/// follow from ln 1 = 0 and x^0 = 1.
pub fn abel_sides(n: u64, family: AbelFamily) -> (SymPoly, SymPoly) {
    assert!(n >= 2);
    let phi = SymPoly::phi();
    let beta = SymPoly::beta();
    let vn = weights(n).v;
    let ln_n = ln_as_poly(n);
    let mut rhs = SymPoly::zero();
    for d in divisors(n) {
        let q = n / d;
        let w = SymPoly::constant(binom_f(n, d).expect("d ranges over divisors"));
        let term = match family {
            AbelFamily::Binomial => abel_factor(&phi, d).mul(&abel_factor(&beta, q)),
            AbelFamily::Shifted => phi
                .add(&ln_as_poly(d))
                .pow(weights(d).v)
                .mul(&abel_factor(&beta, q)),
            AbelFamily::Log1 => {
                if d == n {
                    phi.pow(vn)
                } else {
                    phi.pow(weights(d).v)
                        .mul(&ln_as_poly(d))
                        .mul(&ln_n.pow(weights(q).v - 1))
                }
            }
            AbelFamily::Log2 => {
                abel_factor(&phi, d).mul(&ln_as_poly(d).neg().pow(weights(q).v))
            }
        };
        rhs = rhs.add(&w.mul(&term));
    }
    let lhs = match family {
        AbelFamily::Binomial => abel_factor(&phi.add(&beta), n),
        AbelFamily::Shifted => phi.add(&beta).add(&ln_n).pow(vn),
        AbelFamily::Log1 => abel_factor(&phi, n),
        AbelFamily::Log2 => phi.pow(vn),
    };
    (lhs, rhs)
}

pub fn verify_abel(n: u64, family: AbelFamily) -> VerificationReport {
    let (lhs, rhs) = abel_sides(n, family);
    let id = format!("abel/{}", family.name());
    let mut params = BTreeMap::new();
    params.insert("family".to_string(), family.name().to_string());
    if lhs == rhs {
        VerificationReport::verified(&id, n, params)
    } else {
        VerificationReport::failed(&id, n, params, lhs.sub(&rhs).to_string())
    }
}

/// Both sides of the classical specialization at n = p^m with a = ln p:
/// the divisor sum collapses to a binomial sum over k = 0..m.
pub fn abel_classical_sides(p: u32, m: u32, family: AbelFamily) -> (SymPoly, SymPoly) {
    assert!(m >= 1);
    let a = SymPoly::log_prime(p);
    let phi = SymPoly::phi();
    let beta = SymPoly::beta();
    let ja = |j: u32| a.scale(&Rational::from_integer(BigInt::from(j)));
    let fac = |x: &SymPoly, j: u32| {
        if j == 0 {
            SymPoly::one()
        } else {
            x.mul(&x.add(&ja(j)).pow(j - 1))
        }
    };
    let mut rhs = SymPoly::zero();
    for k in 0..=m {
        let c = SymPoly::constant(Rational::from_integer(num_integer::binomial(
            BigInt::from(m),
            BigInt::from(k),
        )));
        let term = match family {
            AbelFamily::Binomial => fac(&phi, k).mul(&fac(&beta, m - k)),
            AbelFamily::Shifted => phi.add(&ja(k)).pow(k).mul(&fac(&beta, m - k)),
            AbelFamily::Log1 => {
                if k == m {
                    phi.pow(m)
                } else {
                    phi.pow(k).mul(&ja(k)).mul(&ja(m).pow(m - k - 1))
                }
            }
            AbelFamily::Log2 => fac(&phi, k).mul(&ja(k).neg().pow(m - k)),
        };
        rhs = rhs.add(&c.mul(&term));
    }
    let lhs = match family {
        AbelFamily::Binomial => fac(&phi.add(&beta), m),
        AbelFamily::Shifted => phi.add(&beta).add(&ja(m)).pow(m),
        AbelFamily::Log1 => fac(&phi, m),
        AbelFamily::Log2 => phi.pow(m),
    };
    (lhs, rhs)
}

/// Checks the classical identity at n = p^m and that the general divisor
/// sum literally collapses to it there.
pub fn verify_abel_classical(p: u32, m: u32, family: AbelFamily) -> VerificationReport {
    let n = (p as u64).pow(m);
    let (clhs, crhs) = abel_classical_sides(p, m, family);
    let (glhs, grhs) = abel_sides(n, family);
    let id = format!("abel/classical-{}", family.name());
    let mut params = BTreeMap::new();
    params.insert("family".to_string(), family.name().to_string());
    params.insert("p".to_string(), p.to_string());
    params.insert("m".to_string(), m.to_string());
    let mut residuals = Vec::new();
    if clhs != crhs {
        residuals.push(clhs.sub(&crhs).to_string());
    }
    if glhs != clhs {
        residuals.push(glhs.sub(&clhs).to_string());
    }
    if grhs != crhs {
        residuals.push(grhs.sub(&crhs).to_string());
    }
    if residuals.is_empty() {
        VerificationReport::verified(&id, n, params)
    } else {
        VerificationReport::failed(&id, n, params, residuals.join("; "))
    }
}

/// The two mutually inverse u_n relations at n >= 2, checked as polynomial
/// identities in phi and the ln p. The forward relation is cleared of its
/// ln n denominator before comparison:
///   phi/(phi + b ln n) u_n(phi + b ln n) ln n
///     = sum (n d)_f u_d(phi) ln d u_{n/d}(b ln n),
///   u_n(phi) = sum (n d)_f phi/(phi + b ln d) u_d(phi + b ln d) u_{n/d}(-b ln d),
/// with the quotients realized by exact division (u_k vanishes at 0).
pub fn verify_un_relations(a: &Fps, beta: &SymPoly, n: u64) -> Result<VerificationReport> {
    assert!(n >= 2);
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let needed = max_multiplicity(n) as usize;
    if a.order() < needed {
        return Err(Error::InsufficientOrder { needed, have: a.order() });
    }
    let s = s_polys(a)?;
    let u = |k: u64| u_from_s(&s, k);
    let phi = SymPoly::phi();
    let ln_n = ln_as_poly(n);
    let mut params = BTreeMap::new();
    params.insert("beta".to_string(), beta.to_string());
    let fail = |residual: String| {
        Ok(VerificationReport::failed("un/relations", n, params.clone(), residual))
    };

    let shift_n = phi.add(&beta.mul(&ln_n));
    let un_shift = u(n).substitute_var(Variable::Phi, &shift_n);
    let fwd_lhs = match phi.mul(&un_shift).div_exact(&shift_n) {
        Ok(q) => q.mul(&ln_n),
        Err(_) => return fail(format!("phi*u_n({}) not divisible by it", shift_n)),
    };
    let mut fwd_rhs = SymPoly::zero();
    let bln_n = beta.mul(&ln_n);
    for d in divisors(n) {
        let w = binom_f(n, d).expect("d ranges over divisors");
        let term = u(d)
            .mul(&ln_as_poly(d))
            .mul(&u(n / d).substitute_var(Variable::Phi, &bln_n));
        fwd_rhs = fwd_rhs.add(&term.scale(&w));
    }
    if fwd_lhs != fwd_rhs {
        return fail(fwd_lhs.sub(&fwd_rhs).to_string());
    }

    let inv_lhs = u(n);
    let mut inv_rhs = SymPoly::zero();
    for d in divisors(n) {
        let w = binom_f(n, d).expect("d ranges over divisors");
        let shift_d = phi.add(&beta.mul(&ln_as_poly(d)));
        let ud_shift = u(d).substitute_var(Variable::Phi, &shift_d);
        let q = match phi.mul(&ud_shift).div_exact(&shift_d) {
            Ok(q) => q,
            Err(_) => return fail(format!("phi*u_d({}) not divisible by it", shift_d)),
        };
        let tail = u(n / d)
            .substitute_var(Variable::Phi, &beta.mul(&ln_as_poly(d)).neg());
        inv_rhs = inv_rhs.add(&q.mul(&tail).scale(&w));
    }
    if inv_lhs != inv_rhs {
        return fail(inv_lhs.sub(&inv_rhs).to_string());
    }
    Ok(VerificationReport::verified("un/relations", n, params))
}

/// The two (n d)_f coefficient identities at n >= 2:
/// sum over d of (n d)_f = 2^v(n), and for composite n
/// sum of (n d)_f ln d (-1)^(v(n/d)) = 0 in the ln p.
pub fn verify_binomf_identities(n: u64) -> VerificationReport {
    assert!(n >= 2);
    let mut residuals = Vec::new();
    let mut sum = Rational::zero();
    for d in divisors(n) {
        sum += binom_f(n, d).expect("d ranges over divisors");
    }
    let want = Rational::from_integer(BigInt::from(1u128 << weights(n).v));
    if sum != want {
        residuals.push((sum - want).to_string());
    }
    if !is_prime(n) {
        let mut alt = SymPoly::zero();
        for d in divisors(n) {
            let w = binom_f(n, d).expect("d ranges over divisors");
            let sign = if weights(n / d).v % 2 == 1 { -w } else { w };
            alt = alt.add(&ln_as_poly(d).scale(&sign));
        }
        if !alt.is_zero() {
            residuals.push(alt.to_string());
        }
    }
    let params = BTreeMap::new();
    if residuals.is_empty() {
        VerificationReport::verified("binomf/identities", n, params)
    } else {
        VerificationReport::failed("binomf/identities", n, params, residuals.join("; "))
    }
}

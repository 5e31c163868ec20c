//! Truncated formal Dirichlet series over the symbolic coefficient ring,
//! with Dirichlet convolution, symbolic powers, the log-weighted derivative,
//! and the h-polynomials (the Dirichlet analog of convolution polynomials).
//!
//! A series of order N carries coefficients for 1^-s .. N^-s. The formal
//! logarithm of an index n = prod p_i^(m_i) is the polynomial
//! sum m_i * l(p_i); ln 1 = 0.

use crate::coeff::{Rational, SymPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::OnceLock;

const SPF_LIMIT: usize = 1 << 20;

fn spf_sieve() -> &'static [u32] {
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut spf = vec![0u32; SPF_LIMIT + 1];
        for i in 2..=SPF_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SPF_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

/// Prime factorization as (prime, multiplicity) pairs, primes ascending.
/// Cached smallest-prime-factor sieve below 2^20, trial division above.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
        Some((q, m)) if *q == p => *m += 1,
        _ => out.push((p, 1)),
    };
    let mut n = n;
    if n <= SPF_LIMIT as u64 {
        let spf = spf_sieve();
        while n > 1 {
            let p = spf[n as usize] as u64;
            push(p, &mut out);
            n /= p;
        }
        return out;
    }
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        push(n, &mut out);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, m) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 1..=m {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Formal logarithm of n: sum of m_i * l(p_i) over the factorization;
/// zero for n = 1.
pub fn ln_as_poly(n: u64) -> SymPoly {
    let mut acc = SymPoly::zero();
    for (p, m) in factorize(n) {
        let p = u32::try_from(p).expect("log symbol index fits in u32");
        acc = acc.add(&SymPoly::log_prime(p).scale(&crate::coeff::rat_int(m as i64)));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dps {
    /// coeffs[i] is the coefficient of (i+1)^-s.
    coeffs: Vec<SymPoly>,
}

impl Dps {
    /// Series from coefficients for 1^-s .. N^-s; the vector length is the
    /// order N >= 1.
    pub fn from_coeffs(coeffs: Vec<SymPoly>) -> Dps {
        assert!(!coeffs.is_empty(), "a Dirichlet series needs order >= 1");
        Dps { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> SymPoly) -> Dps {
        Dps { coeffs: (1..=order).map(f).collect() }
    }

    /// The convolution identity: 1 at n = 1.
    pub fn delta(order: usize) -> Dps {
        Dps::from_fn(order, |n| if n == 1 { SymPoly::one() } else { SymPoly::zero() })
    }

    pub fn zero(order: usize) -> Dps {
        Dps::from_fn(order, |_| SymPoly::zero())
    }

    /// The all-ones series (the truncated zeta function).
    pub fn ones(order: usize) -> Dps {
        Dps::from_fn(order, |_| SymPoly::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of n^-s, 1-based.
    pub fn coeff(&self, n: usize) -> &SymPoly {
        &self.coeffs[n - 1]
    }

    pub fn set_coeff(&mut self, n: usize, value: SymPoly) {
        self.coeffs[n - 1] = value;
    }

    pub fn truncate(&self, order: usize) -> Dps {
        assert!(order >= 1 && order <= self.order());
        Dps { coeffs: self.coeffs[..order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient 1 at index 1, the precondition for log and symbolic
    /// powers.
    pub fn is_unipotent(&self) -> bool {
        self.coeffs[0].is_one()
    }

    fn invertible_leading(&self) -> Option<Rational> {
        self.coeffs[0].as_constant().filter(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Dps) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Dps) -> Result<Dps> {
        self.check_order(other)?;
        Ok(Dps::from_fn(self.order(), |n| self.coeff(n).add(other.coeff(n))))
    }

    pub fn sub(&self, other: &Dps) -> Result<Dps> {
        self.check_order(other)?;
        Ok(Dps::from_fn(self.order(), |n| self.coeff(n).sub(other.coeff(n))))
    }

    pub fn scale(&self, c: &Rational) -> Dps {
        Dps { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn scale_sym(&self, c: &SymPoly) -> Dps {
        Dps { coeffs: self.coeffs.iter().map(|p| p.mul(c)).collect() }
    }

    /// Multiply by k^-s: coefficients move from n to n*k, truncating.
    pub fn shift_mul(&self, k: usize) -> Dps {
        assert!(k >= 1);
        Dps::from_fn(self.order(), |n| {
            if n % k == 0 { self.coeff(n / k).clone() } else { SymPoly::zero() }
        })
    }

    /// Dirichlet convolution truncated at the common order.
    pub fn mul(&self, other: &Dps) -> Result<Dps> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![SymPoly::zero(); n];
        for d in 1..=n {
            if self.coeff(d).is_zero() {
                continue;
            }
            for q in 1..=n / d {
                if other.coeff(q).is_zero() {
                    continue;
                }
                let idx = d * q - 1;
                out[idx] = out[idx].add(&self.coeff(d).mul(other.coeff(q)));
            }
        }
        Ok(Dps { coeffs: out })
    }

    /// Convolution inverse; requires a nonzero rational coefficient at 1.
    pub fn inv(&self) -> Result<Dps> {
        let c1 = self.invertible_leading().ok_or(Error::NotInvertible)?;
        let c1_inv = Rational::one() / c1;
        let n = self.order();
        let mut out = Dps::zero(n);
        out.set_coeff(1, SymPoly::constant(c1_inv.clone()));
        for k in 2..=n {
            let mut acc = SymPoly::zero();
            for d in divisors(k as u64) {
                let d = d as usize;
                if d > 1 && !self.coeff(d).is_zero() {
                    acc = acc.add(&self.coeff(d).mul(out.coeff(k / d)));
                }
            }
            out.set_coeff(k, acc.neg().scale(&c1_inv));
        }
        Ok(out)
    }

    /// log a = sum_{k>=1} (-1)^(k-1)/k (a - delta)^k; requires coefficient 1
    /// at index 1. Powers of a - delta vanish below 2^k, so k runs to
    /// floor(log2 N).
    pub fn log(&self) -> Result<Dps> {
        if !self.is_unipotent() {
            return Err(Error::NotUnipotent);
        }
        let n = self.order();
        let u = self.sub(&Dps::delta(n))?;
        let kmax = n.ilog2() as usize;
        let mut acc = Dps::zero(n);
        let mut upow = u.clone();
        for k in 1..=kmax.max(1) {
            if k > kmax {
                break;
            }
            let c = Rational::new(
                if k % 2 == 1 { BigInt::one() } else { -BigInt::one() },
                BigInt::from(k),
            );
            acc = acc.add(&upow.scale(&c))?;
            if k < kmax {
                upow = upow.mul(&u)?;
            }
        }
        Ok(acc)
    }

    /// a^e = exp(e log a) for an arbitrary polynomial exponent; requires
    /// coefficient 1 at index 1.
    pub fn pow_sym(&self, e: &SymPoly) -> Result<Dps> {
        let n = self.order();
        let l = self.log()?;
        let kmax = if n == 1 { 0 } else { n.ilog2() as usize };
        let mut acc = Dps::delta(n);
        let mut lpow = Dps::delta(n);
        let mut epow = SymPoly::one();
        let mut kfact = BigInt::one();
        for k in 1..=kmax {
            lpow = lpow.mul(&l)?;
            epow = epow.mul(e);
            kfact *= BigInt::from(k);
            let c = SymPoly::constant(Rational::new(BigInt::one(), kfact.clone()));
            acc = acc.add(&lpow.scale_sym(&epow.mul(&c)))?;
        }
        Ok(acc)
    }

    /// Integer power for any series with an invertible coefficient at 1.
    pub fn pow_int(&self, e: i64) -> Result<Dps> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Dps::delta(self.order());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The log-weighted derivative: coefficient n maps to ln(1/n) * a_n,
    /// i.e. -ln_as_poly(n) * a_n. The order is unchanged.
    pub fn derive(&self) -> Dps {
        Dps::from_fn(self.order(), |n| {
            if n == 1 {
                SymPoly::zero()
            } else {
                self.coeff(n).mul(&ln_as_poly(n as u64).neg())
            }
        })
    }
}

/// All powers a^(ln m) for m = 1..=order(a), computed by the dynamic program
/// a^(ln m) = a^(ln (m/p)) * a^(l p) over smallest prime factors. Entry 0 is
/// a placeholder delta so the table is indexed by m directly.
pub fn ln_power_table(a: &Dps) -> Result<Vec<Dps>> {
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = a.order();
    let mut prime_pow: std::collections::BTreeMap<u64, Dps> = std::collections::BTreeMap::new();
    let mut table = Vec::with_capacity(n + 1);
    table.push(Dps::delta(n));
    if n >= 1 {
        table.push(Dps::delta(n));
    }
    for m in 2..=n as u64 {
        let p = factorize(m)[0].0;
        let ap = match prime_pow.get(&p) {
            Some(ap) => ap.clone(),
            None => {
                let p32 = u32::try_from(p).expect("prime fits in u32");
                let ap = a.pow_sym(&SymPoly::log_prime(p32))?;
                prime_pow.insert(p, ap.clone());
                ap
            }
        };
        let rest = table[(m / p) as usize].clone();
        table.push(rest.mul(&ap)?);
    }
    Ok(table)
}

/// h-polynomials of a unipotent Dirichlet series: entry n (1-based; entry 0
/// is a zero placeholder) is h_n(phi) = [n^-s] a^phi, of degree at most the
/// number of prime factors of n counted with multiplicity.
pub fn h_poly(a: &Dps) -> Result<Vec<SymPoly>> {
    let pow = a.pow_sym(&SymPoly::phi())?;
    let mut out = Vec::with_capacity(a.order() + 1);
    out.push(SymPoly::zero());
    for n in 1..=a.order() {
        out.push(pow.coeff(n).clone());
    }
    Ok(out)
}

/// Same polynomials by the explicit sum over multiplicative partitions: with
/// b_i = [i^-s] log a,
/// h_n(phi) = sum over factorizations n = prod i^(m_i), i >= 2, of
/// phi^(sum m_i) * prod b_i^(m_i) / m_i!.
pub fn h_poly_explicit(a: &Dps) -> Result<Vec<SymPoly>> {
    let la = a.log()?;
    let n = a.order();
    let mut out = Vec::with_capacity(n + 1);
    out.push(SymPoly::zero());
    out.push(SymPoly::one());
    for target in 2..=n as u64 {
        let mut acc = SymPoly::zero();
        let mut parts: Vec<u64> = Vec::new();
        mult_partitions(target, target, &mut parts, &mut |parts| {
            let mut contrib = SymPoly::one();
            let mut mfact = BigInt::one();
            let mut m_total = 0u32;
            let mut idx = 0;
            while idx < parts.len() {
                let part = parts[idx];
                let mut mult = 0u32;
                while idx < parts.len() && parts[idx] == part {
                    mult += 1;
                    idx += 1;
                }
                contrib = contrib.mul(&la.coeff(part as usize).pow(mult));
                mfact *= crate::coeff::factorial(mult as u64);
                m_total += mult;
            }
            let c = SymPoly::constant(Rational::new(BigInt::one(), mfact));
            acc = acc.add(&SymPoly::phi().pow(m_total).mul(&contrib).mul(&c));
        });
        out.push(acc);
    }
    Ok(out)
}

/// Enumerate factorizations of `remaining` into factors >= 2 and
/// <= max_factor, factors nonincreasing.
fn mult_partitions(
    remaining: u64,
    max_factor: u64,
    parts: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if remaining == 1 {
        emit(parts);
        return;
    }
    for d in divisors(remaining).into_iter().rev() {
        if d >= 2 && d <= max_factor {
            parts.push(d);
            mult_partitions(remaining / d, d, parts, emit);
            parts.pop();
        }
    }
}

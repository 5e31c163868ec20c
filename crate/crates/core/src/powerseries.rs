//! Truncated formal power series over the symbolic coefficient ring, the
//! Riordan matrices they generate, the beta-shift transform on symbolic
//! powers, and the Lagrange-type series expansion.
//!
//! A series of order N carries coefficients for x^0 .. x^N. Binary
//! operations require equal orders; the derivative lowers the order by one.

use crate::coeff::{rat_int, Rational, SymPoly, Variable};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fps {
    coeffs: Vec<SymPoly>,
}

impl Fps {
    /// Series from explicit coefficients c0..cN; the vector length fixes the
    /// order as N = len - 1 and must be at least 1.
    pub fn from_coeffs(coeffs: Vec<SymPoly>) -> Fps {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Fps { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> SymPoly) -> Fps {
        Fps { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Fps {
        Fps::from_fn(order, |_| SymPoly::zero())
    }

    pub fn one(order: usize) -> Fps {
        Fps::from_fn(order, |n| if n == 0 { SymPoly::one() } else { SymPoly::zero() })
    }

    /// 1/(1-x): every coefficient 1.
    pub fn geometric(order: usize) -> Fps {
        Fps::from_fn(order, |_| SymPoly::one())
    }

    /// e^x: coefficient 1/n!.
    pub fn exp_series(order: usize) -> Fps {
        Fps::from_fn(order, |n| {
            SymPoly::constant(Rational::new(
                BigInt::one(),
                crate::coeff::factorial(n as u64),
            ))
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &SymPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[SymPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Fps {
        assert!(order <= self.order());
        Fps { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Constant term exactly 1, the precondition for log and symbolic powers.
    pub fn is_unipotent(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// Constant term as a nonzero rational, the precondition for inversion.
    fn invertible_constant(&self) -> Option<Rational> {
        self.coeffs[0].as_constant().filter(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Fps) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Fps) -> Result<Fps> {
        self.check_order(other)?;
        Ok(Fps::from_fn(self.order(), |n| self.coeffs[n].add(&other.coeffs[n])))
    }

    pub fn sub(&self, other: &Fps) -> Result<Fps> {
        self.check_order(other)?;
        Ok(Fps::from_fn(self.order(), |n| self.coeffs[n].sub(&other.coeffs[n])))
    }

    pub fn scale(&self, c: &Rational) -> Fps {
        Fps { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn scale_sym(&self, c: &SymPoly) -> Fps {
        Fps { coeffs: self.coeffs.iter().map(|p| p.mul(c)).collect() }
    }

    /// Multiply by x^k, truncating at the order.
    pub fn shift_up(&self, k: usize) -> Fps {
        Fps::from_fn(self.order(), |n| {
            if n >= k { self.coeffs[n - k].clone() } else { SymPoly::zero() }
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Fps) -> Result<Fps> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![SymPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        Ok(Fps { coeffs: out })
    }

    /// Multiplicative inverse; requires a nonzero rational constant term.
    pub fn inv(&self) -> Result<Fps> {
        let c0 = self.invertible_constant().ok_or(Error::NotInvertible)?;
        let c0_inv = Rational::one() / c0;
        let n = self.order();
        let mut out = vec![SymPoly::zero(); n + 1];
        out[0] = SymPoly::constant(c0_inv.clone());
        for k in 1..=n {
            let mut acc = SymPoly::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = acc.neg().scale(&c0_inv);
        }
        Ok(Fps { coeffs: out })
    }

    /// log a = sum_{k>=1} (-1)^(k-1)/k (a-1)^k; requires constant term 1.
    /// The sum terminates because a-1 has valuation >= 1.
    pub fn log(&self) -> Result<Fps> {
        if !self.is_unipotent() {
            return Err(Error::NotUnipotent);
        }
        let n = self.order();
        let u = self.sub(&Fps::one(n))?;
        let mut acc = Fps::zero(n);
        let mut upow = u.clone();
        for k in 1..=n {
            let c = Rational::new(
                if k % 2 == 1 { BigInt::one() } else { -BigInt::one() },
                BigInt::from(k),
            );
            acc = acc.add(&upow.scale(&c))?;
            if k < n {
                upow = upow.mul(&u)?;
            }
        }
        Ok(acc)
    }

    /// a^e = exp(e log a) for an arbitrary polynomial exponent; requires
    /// constant term 1. Truncation makes the exponential a finite sum.
    pub fn pow_sym(&self, e: &SymPoly) -> Result<Fps> {
        let n = self.order();
        let l = self.log()?;
        let mut acc = Fps::one(n);
        let mut lpow = Fps::one(n);
        let mut epow = SymPoly::one();
        let mut kfact = BigInt::one();
        for k in 1..=n {
            lpow = lpow.mul(&l)?;
            epow = epow.mul(e);
            kfact *= BigInt::from(k);
            let c = SymPoly::constant(Rational::new(BigInt::one(), kfact.clone()));
            acc = acc.add(&lpow.scale_sym(&epow.mul(&c)))?;
        }
        Ok(acc)
    }

    /// Integer power for any series with an invertible constant term.
    pub fn pow_int(&self, e: i64) -> Result<Fps> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Fps::one(self.order());
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

    /// d/dx: coefficient n*a_n lands at index n-1; the order drops by one.
    /// Differentiating an order-0 series yields the order-0 zero series.
    pub fn derive(&self) -> Fps {
        let n = self.order();
        if n == 0 {
            return Fps::zero(0);
        }
        Fps::from_fn(n - 1, |k| self.coeffs[k + 1].scale(&rat_int((k + 1) as i64)))
    }
}

/// f(x*g(x)) by the column construction: sum_m f_m x^m g^m, truncated at the
/// common order.
pub fn compose_by_columns(f: &Fps, g: &Fps) -> Result<Fps> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch { left: f.order(), right: g.order() });
    }
    let n = f.order();
    let mut acc = Fps::zero(n);
    let mut gpow = Fps::one(n);
    for m in 0..=n {
        if !f.coeffs[m].is_zero() {
            acc = acc.add(&gpow.shift_up(m).scale_sym(&f.coeffs[m]))?;
        }
        if m < n {
            gpow = gpow.mul(g)?;
        }
    }
    Ok(acc)
}

/// Convolution polynomials of a unipotent series: entry n is
/// [x^n] a^phi = s_n(phi)/n!, a polynomial of degree n in phi.
pub fn conv_poly(a: &Fps) -> Result<Vec<SymPoly>> {
    Ok(a.pow_sym(&SymPoly::phi())?.coeffs.clone())
}

/// Same polynomials by the explicit partition sum: with b_i = [x^i] log a,
/// [x^n] a^phi = sum over partitions 1*m1 + 2*m2 + ... = n of
/// phi^(m1+m2+...) * prod b_i^(m_i) / m_i!.
pub fn conv_poly_explicit(a: &Fps) -> Result<Vec<SymPoly>> {
    let la = a.log()?;
    let n = a.order();
    let mut out = Vec::with_capacity(n + 1);
    out.push(SymPoly::one());
    for target in 1..=n {
        let mut acc = SymPoly::zero();
        let mut parts: Vec<usize> = Vec::new();
        partition_sum(target, target, &mut parts, &mut |parts| {
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
                contrib = contrib.mul(&la.coeff(part).pow(mult));
                mfact *= crate::coeff::factorial(mult as u64);
                m_total += mult;
            }
            let c = SymPoly::constant(Rational::new(BigInt::one(), mfact));
            acc = acc.add(
                &SymPoly::phi().pow(m_total).mul(&contrib).mul(&c),
            );
        });
        out.push(acc);
    }
    Ok(out)
}

/// Enumerate partitions of `remaining` into parts <= max_part, parts
/// nonincreasing, invoking the callback on each complete partition.
fn partition_sum(
    remaining: usize,
    max_part: usize,
    parts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    let mut part = remaining.min(max_part);
    while part >= 1 {
        parts.push(part);
        partition_sum(remaining - part, part, parts, emit);
        parts.pop();
        part -= 1;
    }
}

/// Dense lower-triangular entry table of order N ((N+1) x (N+1)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerTriTable {
    rows: Vec<Vec<SymPoly>>,
}

impl LowerTriTable {
    fn new(order: usize) -> LowerTriTable {
        LowerTriTable {
            rows: (0..=order).map(|n| vec![SymPoly::zero(); n + 1]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry (n, m); zero above the diagonal.
    pub fn entry(&self, n: usize, m: usize) -> SymPoly {
        if m <= n {
            self.rows[n][m].clone()
        } else {
            SymPoly::zero()
        }
    }

    pub fn matvec(&self, f: &Fps) -> Result<Fps> {
        if f.order() != self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: f.order() });
        }
        Ok(Fps::from_fn(self.order(), |n| {
            let mut acc = SymPoly::zero();
            for m in 0..=n {
                if !self.rows[n][m].is_zero() && !f.coeff(m).is_zero() {
                    acc = acc.add(&self.rows[n][m].mul(f.coeff(m)));
                }
            }
            acc
        }))
    }

    pub fn matmul(&self, other: &LowerTriTable) -> Result<LowerTriTable> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        let n = self.order();
        let mut out = LowerTriTable::new(n);
        for r in 0..=n {
            for c in 0..=r {
                let mut acc = SymPoly::zero();
                for k in c..=r {
                    if !self.rows[r][k].is_zero() && !other.rows[k][c].is_zero() {
                        acc = acc.add(&self.rows[r][k].mul(&other.rows[k][c]));
                    }
                }
                out.rows[r][c] = acc;
            }
        }
        Ok(out)
    }

    /// Triangular inverse; every diagonal entry must be a nonzero rational.
    pub fn inverse(&self) -> Result<LowerTriTable> {
        let n = self.order();
        let mut diag_inv = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let d = self.rows[k][k]
                .as_constant()
                .filter(|c| !c.is_zero())
                .ok_or(Error::NotInvertible)?;
            diag_inv.push(Rational::one() / d);
        }
        let mut out = LowerTriTable::new(n);
        for m in 0..=n {
            out.rows[m][m] = SymPoly::constant(diag_inv[m].clone());
            for r in m + 1..=n {
                let mut acc = SymPoly::zero();
                for k in m..r {
                    if !self.rows[r][k].is_zero() && !out.rows[k][m].is_zero() {
                        acc = acc.add(&self.rows[r][k].mul(&out.rows[k][m]));
                    }
                }
                out.rows[r][m] = acc.neg().scale(&diag_inv[r]);
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(m, e)| if n == m { e.is_one() } else { e.is_zero() })
        })
    }

    /// Nonzero entries as (row, col, coefficient), row-major.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, SymPoly)> {
        let mut out = Vec::new();
        for (n, row) in self.rows.iter().enumerate() {
            for (m, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((n, m, e.clone()));
                }
            }
        }
        out
    }
}

/// A Riordan matrix (b, a): column m has generating function b x^m a^m. The
/// pair and its realized entry table are kept together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanMatrix {
    b: Fps,
    a: Fps,
    table: LowerTriTable,
}

impl RiordanMatrix {
    pub fn b(&self) -> &Fps {
        &self.b
    }

    pub fn a(&self) -> &Fps {
        &self.a
    }

    pub fn table(&self) -> &LowerTriTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Proper means b and a both have nonzero rational constant terms, the
    /// condition for membership in the group.
    pub fn is_proper(&self) -> bool {
        self.b.invertible_constant().is_some() && self.a.invertible_constant().is_some()
    }
}

/// Realize the entry table of (b, a). Improper pairs are allowed here; only
/// the group operations insist on properness.
pub fn riordan_build(b: &Fps, a: &Fps) -> Result<RiordanMatrix> {
    if b.order() != a.order() {
        return Err(Error::OrderMismatch { left: b.order(), right: a.order() });
    }
    let n = b.order();
    let mut table = LowerTriTable::new(n);
    let mut col = b.clone();
    for m in 0..=n {
        for r in m..=n {
            table.rows[r][m] = col.coeff(r - m).clone();
        }
        if m < n {
            col = col.mul(a)?;
        }
    }
    Ok(RiordanMatrix { b: b.clone(), a: a.clone(), table })
}

/// Matrix action on a series through the entry table; equals b * f(x a).
pub fn riordan_apply(m: &RiordanMatrix, f: &Fps) -> Result<Fps> {
    m.table.matvec(f)
}

/// Group law (b, a)(f, g) = (b * f(xa), a * g(xa)).
pub fn riordan_mul(m1: &RiordanMatrix, m2: &RiordanMatrix) -> Result<RiordanMatrix> {
    if !m1.is_proper() || !m2.is_proper() {
        return Err(Error::NotProper);
    }
    let rb = m1.b.mul(&compose_by_columns(&m2.b, &m1.a)?)?;
    let ra = m1.a.mul(&compose_by_columns(&m2.a, &m1.a)?)?;
    riordan_build(&rb, &ra)
}

/// Group inverse (1/b(x abar), abar) where abar satisfies
/// abar(x) * a(x*abar(x)) = 1. The coefficients of abar are solved one at a
/// time: coefficient k of the constraint is a0 * abar_k plus terms in lower
/// coefficients only. The resulting table equals the triangular-solve
/// inverse of the entry table.
pub fn riordan_inv(m: &RiordanMatrix) -> Result<RiordanMatrix> {
    if !m.is_proper() {
        return Err(Error::NotProper);
    }
    let n = m.order();
    let a0 = m.a.invertible_constant().unwrap();
    let a0_inv = SymPoly::constant(Rational::one() / a0);
    let mut abar = Fps::zero(n);
    abar.coeffs[0] = a0_inv.clone();
    for k in 1..=n {
        let constraint = abar.mul(&compose_by_columns(&m.a, &abar)?)?;
        abar.coeffs[k] = constraint.coeff(k).neg().mul(&a0_inv);
    }
    let bbar = compose_by_columns(&m.b, &abar)?.inv()?;
    riordan_build(&bbar, &abar)
}

/// Coefficients of the beta-shifted symbolic power: entry n is
/// phi/(phi + beta n) * [x^n] a^(phi + beta n), obtained by exact division.
/// Requires constant term 1. When a is free of phi, [x^n] a^sigma is the
/// n-th convolution polynomial evaluated at phi = sigma (exactly, from the
/// exponential definition), which avoids one symbolic power per entry.
pub fn theorem1_transform(a: &Fps, beta: &SymPoly) -> Result<Vec<SymPoly>> {
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = a.order();
    let phi = SymPoly::phi();
    let phi_free = a.coeffs.iter().all(|c| !c.contains(Variable::Phi));
    let mut out = Vec::with_capacity(n + 1);
    if phi_free {
        let s = conv_poly(a)?;
        for k in 0..=n {
            let shift = phi.add(&beta.scale(&rat_int(k as i64)));
            let coeff = s[k].substitute_var(Variable::Phi, &shift);
            out.push(phi.mul(&coeff).div_exact(&shift)?);
        }
    } else {
        for k in 0..=n {
            let shift = phi.add(&beta.scale(&rat_int(k as i64)));
            let coeff = a.pow_sym(&shift)?.coeff(k).clone();
            out.push(phi.mul(&coeff).div_exact(&shift)?);
        }
    }
    Ok(out)
}

/// Lagrange-type expansion: sum_n x^n a^(-n) [x^n](f a^n), truncated at the
/// common order. The verification suite compares it against the closed form
/// f / (1 - x (log a)').
pub fn lagrange_expand_fps(f: &Fps, a: &Fps) -> Result<Fps> {
    if f.order() != a.order() {
        return Err(Error::OrderMismatch { left: f.order(), right: a.order() });
    }
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = f.order();
    let ainv = a.inv()?;
    let mut fan = f.clone();
    let mut apow = Fps::one(n);
    let mut acc = Fps::zero(n);
    for k in 0..=n {
        let c = fan.coeff(k).clone();
        if !c.is_zero() {
            acc = acc.add(&apow.shift_up(k).scale_sym(&c))?;
        }
        if k < n {
            fan = fan.mul(a)?;
            apow = apow.mul(&ainv)?;
        }
    }
    Ok(acc)
}

//! The group of Riordan-Dirichlet matrices <b, a>: column m has generating
//! function b * m^-s a^(ln m), so entry (n, m) is [(n/m)^-s] b a^(ln m) for
//! m | n and structurally zero otherwise. Includes the circle operation
//! b o a (the Dirichlet analog of substitution), the group law, inverses,
//! the beta-shift transform on Dirichlet symbolic powers, and the
//! Lagrange-type expansion for Dirichlet series.

use crate::coeff::{Rational, SymPoly, Variable};
use crate::dirichletseries::{divisors, ln_as_poly, ln_power_table, Dps};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Divisor-sparse lower-triangular table: entries live only at (n, m) with
/// m | n <= order, zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    order: usize,
    entries: BTreeMap<(usize, usize), SymPoly>,
}

impl DivisorTable {
    pub fn new(order: usize) -> DivisorTable {
        assert!(order >= 1);
        DivisorTable { order, entries: BTreeMap::new() }
    }

    pub fn identity(order: usize) -> DivisorTable {
        let mut t = DivisorTable::new(order);
        for m in 1..=order {
            t.insert(m, m, SymPoly::one());
        }
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, n: usize, m: usize, value: SymPoly) {
        debug_assert!(m >= 1 && n <= self.order && n % m == 0);
        if value.is_zero() {
            self.entries.remove(&(n, m));
        } else {
            self.entries.insert((n, m), value);
        }
    }

    pub fn entry(&self, n: usize, m: usize) -> SymPoly {
        self.entries.get(&(n, m)).cloned().unwrap_or_else(SymPoly::zero)
    }

    /// Nonzero entries as (row, col, coefficient), row-major.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, SymPoly)> {
        self.entries
            .iter()
            .map(|(&(n, m), v)| (n, m, v.clone()))
            .collect()
    }

    fn check_order(&self, other: usize) -> Result<()> {
        if self.order != other {
            return Err(Error::OrderMismatch { left: self.order, right: other });
        }
        Ok(())
    }

    pub fn matvec(&self, f: &Dps) -> Result<Dps> {
        self.check_order(f.order())?;
        Ok(Dps::from_fn(self.order, |n| {
            let mut acc = SymPoly::zero();
            for d in divisors(n as u64) {
                let m = d as usize;
                if let Some(e) = self.entries.get(&(n, m)) {
                    if !f.coeff(m).is_zero() {
                        acc = acc.add(&e.mul(f.coeff(m)));
                    }
                }
            }
            acc
        }))
    }

    pub fn matmul(&self, other: &DivisorTable) -> Result<DivisorTable> {
        self.check_order(other.order)?;
        let mut out = DivisorTable::new(self.order);
        for n in 1..=self.order {
            for d in divisors(n as u64) {
                let m = d as usize;
                let mut acc = SymPoly::zero();
                for j in divisors((n / m) as u64) {
                    let k = m * j as usize;
                    if let (Some(a), Some(b)) =
                        (self.entries.get(&(n, k)), other.entries.get(&(k, m)))
                    {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.insert(n, m, acc);
            }
        }
        Ok(out)
    }

    /// Triangular inverse; every diagonal entry must be a nonzero rational.
    pub fn inverse(&self) -> Result<DivisorTable> {
        let n = self.order;
        let mut diag_inv = Vec::with_capacity(n + 1);
        diag_inv.push(Rational::one());
        for m in 1..=n {
            let d = self
                .entry(m, m)
                .as_constant()
                .filter(|c| !c.is_zero())
                .ok_or(Error::NotInvertible)?;
            diag_inv.push(Rational::one() / d);
        }
        let mut out = DivisorTable::new(n);
        for m in 1..=n {
            out.insert(m, m, SymPoly::constant(diag_inv[m].clone()));
            let mut r = 2 * m;
            while r <= n {
                let mut acc = SymPoly::zero();
                for j in divisors((r / m) as u64) {
                    let k = m * j as usize;
                    if k < r {
                        if let Some(a) = self.entries.get(&(r, k)) {
                            let x = out.entry(k, m);
                            if !x.is_zero() {
                                acc = acc.add(&a.mul(&x));
                            }
                        }
                    }
                }
                out.insert(r, m, acc.neg().scale(&diag_inv[r]));
                r += m;
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == self.order
            && (1..=self.order).all(|m| self.entry(m, m).is_one())
    }
}

/// The circle operation: (b o a)_n = sum over d | n of
/// b_d [(n/d)^-s] a^(ln d). Requires a unipotent (coefficient 1 at 1).
pub fn circ(b: &Dps, a: &Dps) -> Result<Dps> {
    if b.order() != a.order() {
        return Err(Error::OrderMismatch { left: b.order(), right: a.order() });
    }
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = b.order();
    let pows = ln_power_table(a)?;
    let mut out = Dps::zero(n);
    for d in 1..=n {
        if b.coeff(d).is_zero() {
            continue;
        }
        for q in 1..=n / d {
            let add = b.coeff(d).mul(pows[d].coeff(q));
            if !add.is_zero() {
                let cur = out.coeff(d * q).add(&add);
                out.set_coeff(d * q, cur);
            }
        }
    }
    Ok(out)
}

/// A Riordan-Dirichlet matrix <b, a> with its realized divisor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdMatrix {
    b: Dps,
    a: Dps,
    table: DivisorTable,
}

impl RdMatrix {
    pub fn b(&self) -> &Dps {
        &self.b
    }

    pub fn a(&self) -> &Dps {
        &self.a
    }

    pub fn table(&self) -> &DivisorTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }
}

/// Realize the table of <b, a>. Proper means b has a nonzero rational
/// coefficient at 1 and a is unipotent; symbolic powers a^(ln m) exist only
/// under that restriction, so the build itself enforces it.
pub fn rd_build(b: &Dps, a: &Dps) -> Result<RdMatrix> {
    if b.order() != a.order() {
        return Err(Error::OrderMismatch { left: b.order(), right: a.order() });
    }
    if b.coeff(1).as_constant().filter(|c| !c.is_zero()).is_none() || !a.is_unipotent() {
        return Err(Error::NotProper);
    }
    let n = b.order();
    let pows = ln_power_table(a)?;
    let mut table = DivisorTable::new(n);
    for m in 1..=n {
        let col = b.mul(&pows[m])?;
        for q in 1..=n / m {
            table.insert(m * q, m, col.coeff(q).clone());
        }
    }
    Ok(RdMatrix { b: b.clone(), a: a.clone(), table })
}

/// Matrix action on a series through the divisor table; equals b * (f o a).
pub fn rd_apply(m: &RdMatrix, f: &Dps) -> Result<Dps> {
    m.table.matvec(f)
}

/// Group law <b, a><f, g> = <b * (f o a), a * (g o a)>.
pub fn rd_mul(m1: &RdMatrix, m2: &RdMatrix) -> Result<RdMatrix> {
    let rb = m1.b.mul(&circ(&m2.b, &m1.a)?)?;
    let ra = m1.a.mul(&circ(&m2.a, &m1.a)?)?;
    rd_build(&rb, &ra)
}

/// Group inverse <f, g> with f = <1,a>^-1 b^-1 and g = <1,a>^-1 a^-1, where
/// <1,a>^-1 acts by the triangular-solve inverse of the <1,a> table.
pub fn rd_inv(m: &RdMatrix) -> Result<RdMatrix> {
    let one_a = rd_build(&Dps::delta(m.order()), &m.a)?;
    let x = one_a.table.inverse()?;
    let f = x.matvec(&m.b.inv()?)?;
    let g = x.matvec(&m.a.inv()?)?;
    rd_build(&f, &g)
}

/// Coefficients of the beta-shifted symbolic power in the Dirichlet world:
/// entry n (1-based; entry 0 is a zero placeholder) is
/// phi/(phi + beta ln n) * [n^-s] a^(phi + beta ln n), by exact division.
/// When a is free of phi, [n^-s] a^sigma is h_n evaluated at phi = sigma.
pub fn theorem3_transform(a: &Dps, beta: &SymPoly) -> Result<Vec<SymPoly>> {
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let order = a.order();
    let phi = SymPoly::phi();
    let phi_free = (1..=order).all(|n| !a.coeff(n).contains(Variable::Phi));
    let mut out = Vec::with_capacity(order + 1);
    out.push(SymPoly::zero());
    if phi_free {
        let h = crate::dirichletseries::h_poly(a)?;
        for n in 1..=order {
            let shift = phi.add(&beta.mul(&ln_as_poly(n as u64)));
            let coeff = h[n].substitute_var(Variable::Phi, &shift);
            out.push(phi.mul(&coeff).div_exact(&shift)?);
        }
    } else {
        for n in 1..=order {
            let shift = phi.add(&beta.mul(&ln_as_poly(n as u64)));
            let coeff = a.pow_sym(&shift)?.coeff(n).clone();
            out.push(phi.mul(&coeff).div_exact(&shift)?);
        }
    }
    Ok(out)
}

/// Lagrange-type expansion for Dirichlet series:
/// sum_n n^-s a^(-ln n) [n^-s](f a^(ln n)), truncated at the common order.
/// The verification suite compares it against f / (1 + (log a)').
pub fn lagrange_expand_dps(f: &Dps, a: &Dps) -> Result<Dps> {
    if f.order() != a.order() {
        return Err(Error::OrderMismatch { left: f.order(), right: a.order() });
    }
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let order = f.order();
    let pows = ln_power_table(a)?;
    let ipows = ln_power_table(&a.inv()?)?;
    let mut acc = Dps::zero(order);
    for n in 1..=order {
        // [n^-s](f a^(ln n)) without forming the whole product.
        let mut c = SymPoly::zero();
        for d in divisors(n as u64) {
            let d = d as usize;
            if !f.coeff(d).is_zero() {
                c = c.add(&f.coeff(d).mul(pows[n].coeff(n / d)));
            }
        }
        if !c.is_zero() {
            acc = acc.add(&ipows[n].shift_mul(n).scale_sym(&c))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{parse_coeff_expr, rat};
    use crate::lift::epsilon;

    fn c(n: i64) -> SymPoly {
        SymPoly::integer(n)
    }

    fn p(text: &str) -> SymPoly {
        parse_coeff_expr(text).unwrap()
    }

    #[test]
    fn circ_weights_by_log_powers() {
        // b = 2^-s: (b o eps)_4 = [2^-s] eps^(l2) = l2.
        let b = Dps::from_fn(4, |n| if n == 2 { c(1) } else { c(0) });
        let got = circ(&b, &epsilon(4)).unwrap();
        assert!(got.coeff(1).is_zero());
        assert_eq!(got.coeff(2), &c(1));
        assert_eq!(got.coeff(4), &p("l2"));
    }

    #[test]
    fn rd_build_epsilon_entries() {
        let m = rd_build(&Dps::delta(6), &epsilon(6)).unwrap();
        assert_eq!(m.table().entry(4, 2), p("l2"));
        assert_eq!(m.table().entry(6, 2), p("l2"));
        assert_eq!(m.table().entry(6, 3), p("l3"));
        // Column 1 is b itself, here the delta series.
        assert!(m.table().entry(6, 1).is_zero());
        for n in 1..=6usize {
            assert_eq!(m.table().entry(n, n), p("1"));
        }
        assert!(m.table().entry(6, 4).is_zero());
    }

    #[test]
    fn rd_build_rejects_improper() {
        assert_eq!(
            rd_build(&Dps::zero(4), &Dps::delta(4)),
            Err(Error::NotProper)
        );
        assert_eq!(
            rd_build(&Dps::delta(4), &Dps::ones(4).scale(&rat(2, 1))),
            Err(Error::NotProper)
        );
    }

    #[test]
    fn apply_is_mul_after_circ() {
        let b = Dps::from_fn(12, |n| SymPoly::constant(rat(1, n as u64)));
        let a = epsilon(12);
        let f = Dps::ones(12);
        let m = rd_build(&b, &a).unwrap();
        let via_table = rd_apply(&m, &f).unwrap();
        let via_circ = b.mul(&circ(&f, &a).unwrap()).unwrap();
        assert_eq!(via_table, via_circ);
    }

    #[test]
    fn group_law_matches_matrix_product() {
        let m1 = rd_build(&Dps::ones(16), &epsilon(16)).unwrap();
        let b2 = Dps::from_fn(16, |n| SymPoly::constant(rat(1, n as u64)));
        let a2 = Dps::from_fn(16, |n| {
            if n == 1 {
                SymPoly::one()
            } else {
                SymPoly::constant(rat(1, (n * n) as u64))
            }
        });
        let m2 = rd_build(&b2, &a2).unwrap();
        let prod = rd_mul(&m1, &m2).unwrap();
        assert_eq!(prod.table(), &m1.table().matmul(m2.table()).unwrap());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let b = Dps::from_fn(16, |n| SymPoly::constant(rat(1, n as u64)));
        let m = rd_build(&b, &epsilon(16)).unwrap();
        let inv = rd_inv(&m).unwrap();
        assert!(rd_mul(&m, &inv).unwrap().table().is_identity());
        assert!(rd_mul(&inv, &m).unwrap().table().is_identity());
        assert_eq!(inv.table(), &m.table().inverse().unwrap());
    }

    #[test]
    fn commutation_of_one_a_and_b_one() {
        // <1,a><b,1> = <b o a, a>.
        let a = epsilon(16);
        let b = Dps::from_fn(16, |n| SymPoly::constant(rat(1, (n + 1) as u64)));
        let lhs = rd_mul(
            &rd_build(&Dps::delta(16), &a).unwrap(),
            &rd_build(&b, &Dps::delta(16)).unwrap(),
        )
        .unwrap();
        let rhs = rd_build(&circ(&b, &a).unwrap(), &a).unwrap();
        assert_eq!(lhs.table(), rhs.table());
    }

    #[test]
    fn transform_epsilon_entries() {
        let terms = theorem3_transform(&epsilon(6), &SymPoly::one()).unwrap();
        // n = 6: phi (phi + l2 + l3).
        assert_eq!(terms[6], p("phi^2+l2*phi+l3*phi"));
        // n = 4: phi (phi + 2 l2) / 2.
        assert_eq!(terms[4], p("1/2*phi^2+l2*phi"));
        assert_eq!(terms[1], p("1"));
    }

    #[test]
    fn transform_beta_zero_is_symbolic_power() {
        let a = epsilon(12);
        let terms = theorem3_transform(&a, &SymPoly::zero()).unwrap();
        let h = crate::dirichletseries::h_poly(&a).unwrap();
        assert_eq!(terms, h);
    }

    #[test]
    fn derive_commutation_with_one_b() {
        // D <1,b> f = <1 - (log b)', b> D f.
        let b = epsilon(12);
        let f = Dps::from_fn(12, |n| SymPoly::constant(rat(1, n as u64)));
        let lhs = rd_apply(&rd_build(&Dps::delta(12), &b).unwrap(), &f)
            .unwrap()
            .derive();
        let damp = Dps::delta(12).sub(&b.log().unwrap().derive()).unwrap();
        let rhs = rd_apply(&rd_build(&damp, &b).unwrap(), &f.derive()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lagrange_expansion_matches_closed_form() {
        let f = Dps::from_fn(12, |n| SymPoly::constant(rat(1, n as u64)));
        let a = epsilon(12);
        let got = lagrange_expand_dps(&f, &a).unwrap();
        let denom = Dps::delta(12).add(&a.log().unwrap().derive()).unwrap();
        let want = f.mul(&denom.inv().unwrap()).unwrap();
        assert_eq!(got, want);
    }
}

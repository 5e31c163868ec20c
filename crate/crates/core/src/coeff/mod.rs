//! The exact coefficient ring Q[phi, beta, l2, l3, l5, ...]: arbitrary
//! precision rationals and sparse multivariate polynomials over them.
//!
//! `phi` and `beta` are formal exponent symbols; `lp` is the formal logarithm
//! of the prime p. Monomials are compared in graded lexicographic order over
//! the canonical variable order phi < beta < l2 < l3 < ..., which fixes both
//! the rendering and the exact-division pivot deterministically.

mod parse;

pub use parse::parse_coeff_expr;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar. Always stored reduced with positive denominator
/// (the backing crate maintains that invariant on construction).
pub type Rational = num_rational::BigRational;

/// Rational from a signed numerator and positive denominator.
pub fn rat(num: i64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// One of the formal symbols of the coefficient ring. The derived order is
/// the canonical variable order: Phi < Beta < LogPrime(2) < LogPrime(3) < ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Phi,
    Beta,
    /// Formal logarithm of a prime. Constructors outside the crate go
    /// through the parser, which rejects non-prime indices.
    LogPrime(u32),
}

impl Variable {
    pub fn name(&self) -> String {
        match self {
            Variable::Phi => "phi".to_string(),
            Variable::Beta => "beta".to_string(),
            Variable::LogPrime(p) => format!("l{p}"),
        }
    }
}

/// A power product of variables. Factors are kept sorted by variable with
/// strictly positive exponents; the empty product is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: Variable) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&f), None) => {
                    out.push(f);
                    i += 1;
                }
                (None, Some(&f)) => {
                    out.push(f);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { factors: out }
    }

    /// Does `self` divide `other` componentwise?
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(v, e) in &self.factors {
            loop {
                match other.factors.get(j) {
                    Some(&(vo, eo)) => {
                        if vo < v {
                            j += 1;
                        } else {
                            if vo != v || eo < e {
                                return false;
                            }
                            break;
                        }
                    }
                    None => return false,
                }
            }
        }
        true
    }

    /// `self / other`; caller must have checked `other.divides(self)`.
    fn div(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            let mut e_out = e;
            while j < other.factors.len() && other.factors[j].0 < v {
                j += 1;
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                e_out = e - other.factors[j].1;
                j += 1;
            }
            if e_out > 0 {
                out.push((v, e_out));
            }
        }
        Monomial { factors: out }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, ties broken by the first
    /// variable (in canonical order) whose exponents differ, larger exponent
    /// winning. So phi^2 > phi*beta > beta^2 at degree 2.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.factors.get(i), other.factors.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va < vb {
                            return Ordering::Greater;
                        }
                        if vb < va {
                            return Ordering::Less;
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

/// Sparse polynomial over `Rational` in the ring variables. The map never
/// holds a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        SymPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        SymPoly { terms }
    }

    pub fn integer(k: i64) -> Self {
        SymPoly::constant(rat_int(k))
    }

    pub fn var(v: Variable) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rational::one());
        SymPoly { terms }
    }

    pub fn phi() -> Self {
        SymPoly::var(Variable::Phi)
    }

    pub fn beta() -> Self {
        SymPoly::var(Variable::Beta)
    }

    pub fn log_prime(p: u32) -> Self {
        SymPoly::var(Variable::LogPrime(p))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Some(c) when the polynomial is the constant c (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_unit() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|&(w, _)| w == v))
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, v: Variable) -> u64 {
        self.terms
            .keys()
            .map(|m| {
                m.factors()
                    .iter()
                    .find(|&&(w, _)| w == v)
                    .map(|&(_, e)| e as u64)
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        SymPoly { terms }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), -c.clone());
        }
        SymPoly { terms }
    }

    pub fn neg(&self) -> SymPoly {
        SymPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        SymPoly { terms }
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replace every bound variable by its binding, unbound variables by
    /// themselves, and expand.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, SymPoly>) -> SymPoly {
        let mut acc = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut term = SymPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                let factor = match bindings.get(&v) {
                    Some(p) => p.pow(e),
                    None => SymPoly::monomial(
                        Monomial { factors: vec![(v, e)] },
                        Rational::one(),
                    ),
                };
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute a single variable.
    pub fn substitute_var(&self, v: Variable, value: &SymPoly) -> SymPoly {
        let mut bindings = BTreeMap::new();
        bindings.insert(v, value.clone());
        self.substitute(&bindings)
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division: Some quotient q with self = q * divisor, else
    /// `NotDivisible`. Leading-term reduction in the graded-lex order; for a
    /// single divisor this detects exact divisibility completely, because a
    /// nonzero remainder of a multiple would itself be a multiple with a
    /// divisible leading term.
    pub fn div_exact(&self, divisor: &SymPoly) -> Result<SymPoly> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(Error::NotDivisible);
            }
            let qm = rm.div(dm);
            let qc = rc / dc;
            let step = SymPoly::monomial(qm.clone(), qc.clone());
            rem = rem.sub(&step.mul(divisor));
            Self::insert_term(&mut quot, qm, qc);
        }
        Ok(SymPoly { terms: quot })
    }

    /// Numeric evaluation for display: log symbols default to ln(p) and may
    /// be overridden; phi and beta must be bound. Err carries the first
    /// unbound variable.
    pub fn eval_f64(
        &self,
        bindings: &BTreeMap<Variable, f64>,
    ) -> std::result::Result<f64, Variable> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for &(v, e) in m.factors() {
                let base = match bindings.get(&v) {
                    Some(&x) => x,
                    None => match v {
                        Variable::LogPrime(p) => (p as f64).ln(),
                        _ => return Err(v),
                    },
                };
                term *= base.powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl std::ops::Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        SymPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        SymPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        SymPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly::neg(self)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical rendering. Terms in descending graded-lex order; within a
/// monomial, factors in descending canonical variable order (log symbols
/// first, then beta, then phi), matching the CLI surface. A leading negative
/// term keeps an explicit numeric coefficient ("-1*phi^2", never "-phi^2"):
/// the grammar binds "^" tighter than unary minus, so the bare form would
/// re-parse as a positive square. Output always re-parses to the same
/// polynomial.
impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            // Force the numeric part for a leading negative term; elsewhere a
            // unit coefficient is left implicit.
            let force_coeff = i == 0 && negative;
            if m.is_unit() {
                write_rational(f, &mag)?;
            } else {
                let mut wrote = false;
                if force_coeff || !mag.is_one() {
                    write_rational(f, &mag)?;
                    wrote = true;
                }
                for &(v, e) in m.factors().iter().rev() {
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", v.name())?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    wrote = true;
                }
            }
        }
        Ok(())
    }
}

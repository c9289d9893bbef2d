use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, BigRational, Chart, Result};

/// Positive `s` making every coefficient `s * c` an integer, jointly coprime.
pub(crate) fn coefficient_normalizer<'a>(coeffs: impl Iterator<Item = &'a BigRational>) -> BigRational {
    let mut lcm_den = BigInt::one();
    let mut gcd_num = BigInt::zero();
    for c in coeffs {
        lcm_den = lcm_den.lcm(c.denom());
        gcd_num = gcd_num.gcd(c.numer());
    }
    if gcd_num.is_zero() {
        return BigRational::one();
    }
    BigRational::new(lcm_den, gcd_num)
}

/// Exponent triple, ordered graded-lexicographically (total degree first,
/// then the exponents compared in chart order).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut e = [0; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_add(other.0[i]).ok_or(AlgebraError::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    pub fn min(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0].min(other.0[0]), self.0[1].min(other.0[1]), self.0[2].min(other.0[2])])
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the three variables of a [`Chart`] with exact rational
/// coefficients. Zero coefficients are never stored, so structural equality is
/// mathematical equality.
///
/// The arithmetic operator impls panic when the operands live on different
/// charts; the `try_*` methods report that as [`AlgebraError::ChartMismatch`].
#[derive(Clone, PartialEq, Eq)]
pub struct Poly3 {
    chart: Chart,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly3 {
    pub fn zero(chart: &Chart) -> Self {
        Poly3 { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, BigRational::one())
    }

    pub fn constant(chart: &Chart, c: BigRational) -> Self {
        Self::monomial(chart, Monomial::ONE, c)
    }

    pub fn from_int(chart: &Chart, c: i64) -> Self {
        Self::constant(chart, BigRational::from_integer(c.into()))
    }

    pub fn var(chart: &Chart, index: usize) -> Self {
        Self::monomial(chart, Monomial::var(index), BigRational::one())
    }

    pub fn monomial(chart: &Chart, m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly3 { chart: chart.clone(), terms }
    }

    pub fn from_terms<I>(chart: &Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly3::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Bit `i` is set when variable `i` occurs.
    pub fn var_mask(&self) -> u8 {
        self.terms.keys().fold(0, |mask, m| {
            (0..3).filter(|&i| m.0[i] > 0).fold(mask, |acc, i| acc | (1 << i))
        })
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly3 {
        if c.is_zero() {
            return Poly3::zero(&self.chart);
        }
        Poly3 {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Result<Poly3> {
        if c.is_zero() {
            return Ok(Poly3::zero(&self.chart));
        }
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.checked_mul(m)?, v * c);
        }
        Ok(Poly3 { chart: self.chart.clone(), terms })
    }

    pub fn try_add(&self, other: &Poly3) -> Result<Poly3> {
        self.chart.ensure_same(&other.chart)?;
        let (mut acc, rest) =
            if self.terms.len() >= other.terms.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &rest.terms {
            acc.add_term(*m, c.clone());
        }
        Ok(acc)
    }

    pub fn try_sub(&self, other: &Poly3) -> Result<Poly3> {
        self.chart.ensure_same(&other.chart)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(*m, -c);
        }
        Ok(acc)
    }

    pub fn try_mul(&self, other: &Poly3) -> Result<Poly3> {
        self.chart.ensure_same(&other.chart)?;
        let mut acc = Poly3::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(acc)
    }

    /// Non-negative integer power; a negative exponent is a typed error.
    pub fn try_pow(&self, exponent: i64) -> Result<Poly3> {
        if exponent < 0 {
            return Err(AlgebraError::NegativeExponent(exponent));
        }
        let mut e = u64::try_from(exponent).map_err(|_| AlgebraError::ExponentOverflow)?;
        let mut base = self.clone();
        let mut acc = Poly3::one(&self.chart);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, exponent: u32) -> Poly3 {
        self.try_pow(exponent as i64).expect("polynomial power overflow")
    }

    pub fn derivative(&self, var: usize) -> Poly3 {
        let mut out = Poly3::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[var] -= 1;
            out.add_term(dm, c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly3 {
        match self.leading_term() {
            Some((_, lc)) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses leading-term reduction, which is exact for a single
    /// divisor under any monomial order.
    pub fn exact_div(&self, divisor: &Poly3) -> Option<Poly3> {
        let (lm, lc) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc_inv) = (*lm, lc.recip());
        let mut rem = self.clone();
        let mut quot = Poly3::zero(&self.chart);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(&lm)?;
            let qc = rc * &lc_inv;
            rem = rem.try_sub(&divisor.mul_monomial(&qm, &qc).ok()?).ok()?;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`, lowest power first. Each
    /// coefficient is free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly3> {
        let n = self.degree_in(var).map_or(0, |d| d as usize + 1);
        let mut out = vec![Poly3::zero(&self.chart); n];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let k = rest.0[var] as usize;
            rest.0[var] = 0;
            out[k].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(chart: &Chart, var: usize, coeffs: &[Poly3]) -> Poly3 {
        let mut out = Poly3::zero(chart);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut mm = *m;
                mm.0[var] += k as u32;
                out.add_term(mm, v.clone());
            }
        }
        out
    }

    /// Smallest positive rational `s` such that `s * self` has coprime integer
    /// coefficients with a positive leading coefficient.
    pub fn integer_normalizer(&self) -> BigRational {
        let s = coefficient_normalizer(self.terms.values());
        if self.leading_coefficient().is_negative() {
            -s
        } else {
            s
        }
    }

    pub fn eval_exact(&self, point: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if m.0[i] > 0 {
                    t *= num_traits::pow::pow(point[i].clone(), m.0[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for i in 0..3 {
                    t *= point[i].powi(m.0[i] as i32);
                }
                t
            })
            .sum()
    }

    /// Substitutes polynomials (over another chart) for the three variables.
    pub fn compose(&self, images: [&Poly3; 3]) -> Result<Poly3> {
        let target = images[0].chart.clone();
        images[1].chart.ensure_same(&target)?;
        images[2].chart.ensure_same(&target)?;
        let mut acc = Poly3::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly3::constant(&target, c.clone());
            for i in 0..3 {
                if m.0[i] > 0 {
                    t = t.try_mul(&images[i].try_pow(m.0[i] as i64)?)?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Total weight under a grading of the variables, when every term has the
    /// same weight.
    pub fn quasi_homogeneous_weight(&self, weights: [i64; 3]) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| (0..3).map(|i| weights[i] * m.0[i] as i64).sum::<i64>());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Writes one term; `first` controls whether a leading `+` is emitted.
    fn fmt_term(&self, f: &mut fmt::Formatter<'_>, m: &Monomial, c: &BigRational, first: bool) -> fmt::Result {
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        let mut factors: Vec<String> = Vec::new();
        if m.is_one() || !abs.is_one() {
            factors.push(abs.to_string());
        }
        for i in 0..3 {
            match m.0[i] {
                0 => {}
                1 => factors.push(self.chart.name(i).to_owned()),
                e => factors.push(format!("{}^{}", self.chart.name(i), e)),
            }
        }
        f.write_str(&factors.join("*"))
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            self.fmt_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly3({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Poly3> for &Poly3 {
            type Output = Poly3;
            fn $method(self, rhs: &Poly3) -> Poly3 {
                self.$try(rhs).expect(concat!("Poly3::", stringify!($method)))
            }
        }
        impl $tr<Poly3> for Poly3 {
            type Output = Poly3;
            fn $method(self, rhs: Poly3) -> Poly3 {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly3> for Poly3 {
            type Output = Poly3;
            fn $method(self, rhs: &Poly3) -> Poly3 {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly3> for &Poly3 {
            type Output = Poly3;
            fn $method(self, rhs: Poly3) -> Poly3 {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 { chart: self.chart.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        -&self
    }
}

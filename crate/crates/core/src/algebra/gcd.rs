//! Multivariate gcd over the rationals.
//!
//! Recursive content / primitive-part decomposition with respect to one
//! variable at a time, and the subresultant polynomial remainder sequence for
//! the primitive parts.

use super::{AlgebraError, BigRational, Monomial, Poly3, Result};
use num_traits::{One, Zero};

/// Monic (graded-lex leading coefficient 1) greatest common divisor.
pub fn gcd(a: &Poly3, b: &Poly3) -> Result<Poly3> {
    a.chart().ensure_same(b.chart())?;
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    Ok(gcd_unnormalized(a, b).monic())
}

/// Gcd up to a nonzero constant factor. Neither argument needs to be monic.
pub(crate) fn gcd_unnormalized(a: &Poly3, b: &Poly3) -> Poly3 {
    let chart = a.chart();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly3::one(chart);
    }
    if a.is_monomial() || b.is_monomial() {
        let (mono, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let (m, _) = mono.leading_term().unwrap();
        let g = other.terms().fold(*m, |acc, (t, _)| Monomial::min(&acc, t));
        return Poly3::monomial(chart, g, One::one());
    }
    // Monomial factors first: they are common in practice and inflate every
    // later step.
    let (ma, mb) = (min_monomial(a), min_monomial(b));
    if !ma.is_one() || !mb.is_one() {
        let strip = |p: &Poly3, m: &Monomial| {
            if m.is_one() {
                p.clone()
            } else {
                p.exact_div(&Poly3::monomial(chart, *m, One::one())).expect("monomial divides")
            }
        };
        let rest = gcd_unnormalized(&strip(a, &ma), &strip(b, &mb));
        return rest.mul_monomial(&Monomial::min(&ma, &mb), &One::one()).expect("degree fits");
    }
    if b.exact_div(a).is_some() {
        return a.clone();
    }
    if a.exact_div(b).is_some() {
        return b.clone();
    }

    let (ma, mb) = (a.var_mask(), b.var_mask());
    for var in 0..3 {
        let bit = 1 << var;
        if ma & bit != 0 && mb & bit == 0 {
            return gcd_with_all(b.clone(), a.coefficients_in(var));
        }
        if mb & bit != 0 && ma & bit == 0 {
            return gcd_with_all(a.clone(), b.coefficients_in(var));
        }
    }

    if images_coprime(a, b) {
        return Poly3::one(chart);
    }

    // Both involve the same variables; recurse on the one of lowest degree.
    let var = (0..3)
        .filter(|v| ma & (1 << v) != 0)
        .min_by_key(|&v| a.degree_in(v).unwrap().max(b.degree_in(v).unwrap()))
        .expect("non-constant polynomial has a variable");

    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd_unnormalized(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = subresultant_gcd(pa.coefficients_in(var), pb.coefficients_in(var));
    let g = Poly3::from_coefficients_in(chart, var, &g);
    let g = primitive_part(&g, var);
    c * g
}

/// Componentwise minimum exponent over all terms.
fn min_monomial(p: &Poly3) -> Monomial {
    let mut terms = p.terms().map(|(m, _)| *m);
    let first = terms.next().expect("nonzero polynomial");
    terms.fold(first, |acc, m| Monomial::min(&acc, &m))
}

fn gcd_with_all(mut g: Poly3, others: Vec<Poly3>) -> Poly3 {
    for c in others.iter().filter(|c| !c.is_zero()) {
        g = gcd_unnormalized(&g, c);
        if g.is_constant() {
            return Poly3::one(g.chart());
        }
    }
    g
}

/// Gcd of the coefficients with respect to `var`.
fn content(p: &Poly3, var: usize) -> Poly3 {
    let mut coeffs = p.coefficients_in(var).into_iter().filter(|c| !c.is_zero());
    let first = coeffs.next().expect("nonzero polynomial");
    gcd_with_all(first, coeffs.collect())
}

fn primitive_part(p: &Poly3, var: usize) -> Poly3 {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Integer values substituted for the two other variables when taking
/// univariate images.
const IMAGE_POINTS: [(i64, i64); 4] = [(2, 3), (-3, 5), (7, -2), (11, 13)];

/// Cheap sufficient test for `gcd(a, b) = 1` when both involve the same
/// variables. If `g | a` then `g(point) | a(point)`, and the leading
/// coefficient of `g` in `var` divides that of `a`, so when `lc(a)(point) ≠ 0`
/// the image keeps the full degree of `g` in `var`. A constant image gcd for
/// every variable therefore forces a constant gcd.
fn images_coprime(a: &Poly3, b: &Poly3) -> bool {
    let mask = a.var_mask();
    (0..3).filter(|v| mask & (1 << v) != 0).all(|var| {
        let (ca, cb) = (a.coefficients_in(var), b.coefficients_in(var));
        IMAGE_POINTS.iter().find_map(|&(s, t)| {
            let mut point = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
            let others: Vec<usize> = (0..3).filter(|&o| o != var).collect();
            point[others[0]] = BigRational::from_integer(s.into());
            point[others[1]] = BigRational::from_integer(t.into());
            let ia: Vec<BigRational> = ca.iter().map(|c| c.eval_exact(&point)).collect();
            let ib: Vec<BigRational> = cb.iter().map(|c| c.eval_exact(&point)).collect();
            if ia.last().is_none_or(Zero::is_zero) || ib.last().is_none_or(Zero::is_zero) {
                return None;
            }
            Some(univariate_gcd_degree(ia, ib) == 0)
        }) == Some(true)
    })
}

fn rtrim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of the gcd of two nonzero univariate polynomials over the rationals.
fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    rtrim(&mut a);
    rtrim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a mod b, with b made monic to keep the arithmetic in lowest terms
        let inv = b.last().unwrap().recip();
        b.iter_mut().for_each(|c| *c *= &inv);
        while a.len() >= b.len() {
            let q = a.last().unwrap().clone();
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &q * c;
            }
            a.pop();
            rtrim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

// Univariate polynomials in the main variable, coefficients lowest power first.
type Upoly = Vec<Poly3>;

fn trim(p: &mut Upoly) {
    while p.last().is_some_and(Poly3::is_zero) {
        p.pop();
    }
}

fn udeg(p: &Upoly) -> usize {
    p.len() - 1
}

fn lc(p: &Upoly) -> &Poly3 {
    p.last().expect("nonzero")
}

fn uscale(p: &Upoly, c: &Poly3) -> Upoly {
    p.iter().map(|k| k * c).collect()
}

fn uexact_div(p: &Upoly, c: &Poly3) -> Upoly {
    p.iter().map(|k| k.exact_div(c).expect("subresultant division is exact")).collect()
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Upoly, b: &Upoly) -> Upoly {
    let db = udeg(b);
    let lb = lc(b).clone();
    let total = udeg(a) - db + 1;
    let mut r = a.clone();
    let mut steps = 0;
    while !r.is_empty() && udeg(&r) >= db {
        let lr = lc(&r).clone();
        let shift = udeg(&r) - db;
        let mut next = uscale(&r, &lb);
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(&lr * bc);
        }
        debug_assert!(next.last().unwrap().is_zero());
        next.pop();
        trim(&mut next);
        r = next;
        steps += 1;
    }
    if steps < total && !r.is_empty() {
        let factor = lb.pow((total - steps) as u32);
        r = uscale(&r, &factor);
    }
    r
}

/// Gcd of two primitive univariate polynomials, up to a factor from the
/// coefficient ring.
fn subresultant_gcd(mut a: Upoly, mut b: Upoly) -> Upoly {
    trim(&mut a);
    trim(&mut b);
    if udeg(&a) < udeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let chart = a[0].chart().clone();
    let one = Poly3::one(&chart);
    if b.len() == 1 {
        return vec![one];
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = udeg(&a) - udeg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![one];
        }
        a = b;
        let divisor = &g * &h.pow(delta as u32);
        b = uexact_div(&r, &divisor);
        g = lc(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g.pow(d as u32).exact_div(&h.pow(d as u32 - 1)).expect("exact"),
        };
    }
}

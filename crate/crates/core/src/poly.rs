//! Sparse Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{ExactRing, Ring};

/// A Laurent polynomial `sum c_e x^e` with `e` ranging over all integers.
///
/// Stored sparsely: only nonzero coefficients are kept, so the canonical
/// form has nonzero lowest and highest coefficients by construction.
/// Kasteleyn determinants for weightings scaled by `n^4` have exponent
/// spreads in the millions but only a handful of terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Ring> LaurentPolynomial<C> {
    pub fn monomial(coefficient: C, exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        LaurentPolynomial { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds `sum coefficients[k] x^(offset + k)`.
    pub fn from_dense(offset: i64, coefficients: Vec<C>) -> Self {
        Self::from_terms(coefficients.into_iter().enumerate().map(|(k, c)| (offset + k as i64, c)))
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: C) {
        if coefficient.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&exponent) {
            Some(c) => {
                *c = c.clone() + coefficient;
                c.is_zero()
            }
            None => {
                self.terms.insert(exponent, coefficient);
                false
            }
        };
        if remove {
            self.terms.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: i64) -> C {
        self.terms.get(&exponent).cloned().unwrap_or_else(C::zero)
    }

    pub fn low_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// The dense view: lowest exponent together with every coefficient up to
    /// the highest exponent. The zero polynomial yields `(0, [])`.
    pub fn dense_coefficients(&self) -> (i64, Vec<C>) {
        let (Some(lo), Some(hi)) = (self.low_exponent(), self.high_exponent()) else {
            return (0, Vec::new());
        };
        let coeffs = (lo..=hi).map(|e| self.coefficient(e)).collect();
        (lo, coeffs)
    }

    /// Evaluates at `x`; only defined when no exponent is negative.
    pub fn evaluate(&self, x: &C) -> Option<C> {
        if self.low_exponent().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = C::zero();
        let mut power = C::one();
        let mut at = 0i64;
        for (e, c) in self.terms() {
            while at < e {
                power = power * x.clone();
                at += 1;
            }
            acc = acc + c.clone() * power.clone();
        }
        Some(acc)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }

    fn sub_scaled(&mut self, rhs: &Self, scale: &C, shift: i64) {
        for (e, c) in &rhs.terms {
            self.add_term(e + shift, -(c.clone() * scale.clone()));
        }
    }
}

impl<C: ExactRing> ExactRing for LaurentPolynomial<C> {
    /// Sparse long division from the top term. In the Laurent ring an exact
    /// quotient has exponents in `[lo(a) - lo(b), hi(a) - hi(b)]`; leaving
    /// that window means `b` does not divide `a`.
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (d_hi, d_lead) = divisor.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let d_lo = divisor.low_exponent()?;
        let Some(a_lo) = self.low_exponent() else {
            return Some(Self::zero());
        };
        let min_q = a_lo - d_lo;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((r_hi, r_lead)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let q_exp = r_hi - d_hi;
            if q_exp < min_q {
                return None;
            }
            let q_coef = r_lead.exact_div(&d_lead)?;
            rem.sub_scaled(divisor, &q_coef, q_exp);
            quotient.add_term(q_exp, q_coef);
        }
        Some(quotient)
    }
}

impl<C: Ring> Zero for LaurentPolynomial<C> {
    fn zero() -> Self {
        LaurentPolynomial { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for LaurentPolynomial<C> {
    fn one() -> Self {
        Self::monomial(C::one(), 0)
    }
}

impl<C: Ring> Add for LaurentPolynomial<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Ring> Sub for LaurentPolynomial<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<C: Ring> Mul for LaurentPolynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, C: Ring> Mul<&'a LaurentPolynomial<C>> for &'a LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: &'a LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Ring> Neg for LaurentPolynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPolynomial { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

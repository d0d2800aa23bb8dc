//! Dense univariate polynomials in the zeta variable `u`, with Laurent
//! polynomial coefficients. Characteristic polynomials, the degree-four
//! vertex-operator factor and every `det(I - L u)` live here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::LaurentPoly;

/// Coefficients in ascending powers of `u`; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<LaurentPoly>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly {
            coeffs: vec![LaurentPoly::one()],
        }
    }

    pub fn constant(c: LaurentPoly) -> Self {
        UPoly { coeffs: vec![c] }.trimmed()
    }

    /// `c * u^k`.
    pub fn term(c: LaurentPoly, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![LaurentPoly::zero(); k + 1];
        coeffs[k] = c;
        UPoly { coeffs }
    }

    pub fn u() -> Self {
        Self::term(LaurentPoly::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        UPoly { coeffs }.trimmed()
    }

    /// `1 - c*u`.
    pub fn one_minus_cu(c: &LaurentPoly) -> Self {
        Self::from_coeffs(vec![LaurentPoly::one(), -c])
    }

    /// `1 - c*u^2`.
    pub fn one_minus_cu2(c: &LaurentPoly) -> Self {
        Self::from_coeffs(vec![LaurentPoly::one(), LaurentPoly::zero(), -c])
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&LaurentPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Substitute `u -> u^2`.
    pub fn compose_u2(&self) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        UPoly { coeffs }.trimmed()
    }

    /// Degree-`n` reversal `u^n * p(1/u)`: turns a characteristic polynomial
    /// `det(uI - L)` of an `n x n` matrix into `det(I - L u)`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(
            self.degree().map(|d| d <= n).unwrap_or(true),
            "reversal degree too small"
        );
        let mut coeffs = vec![LaurentPoly::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.clone();
        }
        UPoly { coeffs }.trimmed()
    }

    /// Apply a Laurent substitution coefficientwise.
    pub fn subst(&self, images: &[LaurentPoly; 3]) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.subst(images)).collect(),
        }
        .trimmed()
    }

    /// Exact division: `Some(q)` with `self = q * d`, `None` when `d` does
    /// not divide exactly (an inexact step or a nonzero remainder). The
    /// leading-coefficient divisions go through the Laurent ring, so `d` need
    /// not be monic; a failed division is data, not a panic.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let dd = d.degree().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![LaurentPoly::zero(); self.coeffs.len()];
        let dlead = d.leading().unwrap();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let factor = rem.leading().unwrap().div_exact(dlead)?;
            let shift = rd - dd;
            quo[shift] = factor.clone();
            let sub = UPoly::term(factor, shift) * d.clone();
            rem = rem - sub;
        }
        Some(UPoly { coeffs: quo }.trimmed())
    }

    /// Product of linear factors `prod (1 - c_i u)` times `prod (1 - d_j u^2)`.
    pub fn from_reciprocal_roots(linear: &[LaurentPoly], quadratic: &[LaurentPoly]) -> Self {
        let mut out = UPoly::one();
        for c in linear {
            out = out * Self::one_minus_cu(c);
        }
        for c in quadratic {
            out = out * Self::one_minus_cu2(c);
        }
        out
    }

    /// Monic polynomial with the given roots: `prod (u - c_i) * prod (u^2 - d_j)`.
    pub fn from_roots(linear: &[LaurentPoly], quadratic: &[LaurentPoly]) -> Self {
        let mut out = UPoly::one();
        for c in linear {
            out = out * UPoly::from_coeffs(vec![-c, LaurentPoly::one()]);
        }
        for c in quadratic {
            out = out * UPoly::from_coeffs(vec![-c, LaurentPoly::zero(), LaurentPoly::one()]);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .trimmed()
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && k > 0 {
                String::new()
            } else {
                format!("({})", c.render())
            };
            let upart = match k {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{k}"),
            };
            let sep = if !coeff.is_empty() && !upart.is_empty() {
                "*"
            } else {
                ""
            };
            parts.push(format!("{coeff}{sep}{upart}"));
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        UPoly { coeffs }.trimmed()
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        UPoly { coeffs }.trimmed()
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        UPoly { coeffs }.trimmed()
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// Quotient of `a` by `b` in the `u`-polynomial ring, exposed under the name
/// the verification layers use: an inexact division is a verification
/// failure, reported as `Err`, never a panic.
pub fn poly_divides(a: &UPoly, b: &UPoly) -> Result<UPoly, String> {
    a.div_exact(b)
        .ok_or_else(|| format!("division not exact: ({}) by ({})", a.render(), b.render()))
}

//! Truncated formal power series in `u` over the Laurent coefficient ring.
//! All arithmetic is modulo `u^(N+1)`; binary operations truncate to the
//! smaller order of the two operands.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::laurent::LaurentPoly;
use super::rational::{rat, ratio, Rat};
use super::upoly::UPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    /// index 0..=order
    coeffs: Vec<LaurentPoly>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn from_upoly(p: &UPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in 0..=order {
            s.coeffs[k] = p.coeff(k);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
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

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplicative inverse; requires an invertible constant term (a unit
    /// of the Laurent ring).
    pub fn inverse(&self) -> Result<Self, SeriesConstantTerm> {
        let c0 = &self.coeffs[0];
        let c0_inv = c0.unit_inverse().ok_or(SeriesConstantTerm::NotAUnit)?;
        let n = self.order();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 0..k {
                acc += &self.coeffs[k - j] * &inv.coeffs[j];
            }
            inv.coeffs[k] = -(&c0_inv * &acc);
        }
        Ok(inv)
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesConstantTerm> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesConstantTerm::ExpectedZero);
        }
        let n = self.order();
        // exp(f) = sum f^k / k!
        let mut out = Self::one(n);
        let mut power = Self::one(n);
        let mut factorial = rat(1);
        for k in 1..=n {
            power = &power * self;
            factorial *= rat(k as i64);
            let inv_fact = LaurentPoly::constant(factorial.recip());
            for j in 0..=n {
                let add = &power.coeffs[j] * &inv_fact;
                out.coeffs[j] = &out.coeffs[j] + &add;
            }
        }
        Ok(out)
    }

    /// Logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self, SeriesConstantTerm> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesConstantTerm::ExpectedOne);
        }
        let n = self.order();
        let mut g = self.clone();
        g.coeffs[0] = LaurentPoly::zero(); // g = f - 1
                                           // log(1+g) = sum (-1)^(k+1) g^k / k
        let mut out = Self::zero(n);
        let mut power = Self::one(n);
        for k in 1..=n {
            power = &power * &g;
            let c = LaurentPoly::constant(ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64));
            for j in 0..=n {
                let add = &power.coeffs[j] * &c;
                out.coeffs[j] = &out.coeffs[j] + &add;
            }
        }
        Ok(out)
    }

    /// All coefficients as plain rationals, when no spectral variable occurs.
    pub fn rational_coeffs(&self) -> Option<Vec<Rat>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_constant() {
                    Some(c.constant_term())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesConstantTerm {
    ExpectedZero,
    ExpectedOne,
    NotAUnit,
}

impl fmt::Display for SeriesConstantTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesConstantTerm::ExpectedZero => write!(f, "series must have constant term 0"),
            SeriesConstantTerm::ExpectedOne => write!(f, "series must have constant term 1"),
            SeriesConstantTerm::NotAUnit => write!(f, "series constant term is not invertible"),
        }
    }
}

impl std::error::Error for SeriesConstantTerm {}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![LaurentPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        PowerSeries { coeffs }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})u^{k}", c.render()))
            .collect();
        if parts.is_empty() {
            write!(f, "O(u^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(u^{})", parts.join(" + "), self.order() + 1)
        }
    }
}

//! Multivariate Laurent polynomials over the rationals in the three spectral
//! variables `v`, `x1`, `s`, where `v` stands for the square root of the
//! residue cardinality `q` and `x1`, `s` are the unramified character values
//! at the uniformizer. The second character value is never a variable: it is
//! the abbreviation `x2 := x1^-1 s^-2` forced by the trivial-central-character
//! relation `x1 * x2 * s^2 = 1`, folded in at entry so that equality of ring
//! elements is literal equality of term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{One, Signed, Zero};

use super::rational::{pow_p, rat, Rat};

/// Exponents are bounded; exceeding the bound is a hard error rather than a
/// silent wrap.
const EXP_BOUND: i64 = 64;

/// The three variables, in the exponent-vector order used everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    V = 0,
    X1 = 1,
    S = 2,
}

type Exp = [i64; 3];

fn exp_add(a: Exp, b: Exp) -> Exp {
    let mut out = [0i64; 3];
    for i in 0..3 {
        out[i] = a[i] + b[i];
        assert!(
            out[i].abs() <= EXP_BOUND,
            "Laurent exponent overflow: |{}| > {}",
            out[i],
            EXP_BOUND
        );
    }
    out
}

/// A Laurent polynomial: exponent vector `(e_v, e_x1, e_s)` -> nonzero
/// rational coefficient. The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0, 0, 0], c);
        }
        LaurentPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `coeff * v^ev * x1^ex1 * s^es`.
    pub fn monomial(coeff: Rat, ev: i64, ex1: i64, es: i64) -> Self {
        for e in [ev, ex1, es] {
            assert!(
                e.abs() <= EXP_BOUND,
                "Laurent exponent overflow: |{e}| > {EXP_BOUND}"
            );
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert([ev, ex1, es], coeff);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0i64; 3];
        e[v as usize] = 1;
        Self::monomial(rat(1), e[0], e[1], e[2])
    }

    /// `v^k` (so `q^k` enters as `v_pow(2k)`).
    pub fn v_pow(k: i64) -> Self {
        Self::monomial(rat(1), k, 0, 0)
    }

    /// The eliminated second character value `x2^k = x1^-k s^-2k`.
    pub fn x2_pow(k: i64) -> Self {
        Self::monomial(rat(1), 0, -k, -2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0, 0, 0])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0, 0, 0]))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&[0, 0, 0])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// A single-term polynomial, i.e. a unit of the Laurent ring.
    pub fn as_monomial(&self) -> Option<(Rat, Exp)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Inverse of a unit (single-term) element.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e[0], -e[1], -e[2]))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, t)| (*e, t * c)).collect(),
        }
    }

    /// Substitute each variable by a signed monomial of the same ring. This
    /// covers every specialization used by the representation models (for
    /// example the quadratic twist `s -> -s`, or `s -> eps * x1^-1` for the
    /// one-parameter types).
    pub fn subst(&self, images: &[LaurentPoly; 3]) -> LaurentPoly {
        let imgs: Vec<(Rat, Exp)> = images
            .iter()
            .map(|m| {
                m.as_monomial()
                    .expect("substitution images must be single terms")
            })
            .collect();
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exp = [0i64; 3];
            for (i, (ic, ie)) in imgs.iter().enumerate() {
                let k = e[i];
                if k != 0 {
                    coeff *= rat_pow(ic, k);
                    for j in 0..3 {
                        exp[j] += ie[j] * k;
                    }
                }
            }
            for x in exp {
                assert!(
                    x.abs() <= EXP_BOUND,
                    "Laurent exponent overflow after substitution"
                );
            }
            out.insert_term(exp, coeff);
        }
        out
    }

    /// Identity substitution images.
    pub fn id_images() -> [LaurentPoly; 3] {
        [Self::var(Var::V), Self::var(Var::X1), Self::var(Var::S)]
    }

    /// Evaluate with `x1 -> a`, `s -> b` and `v^2 -> q`; fails if any odd
    /// power of `v` survives (the half-integral powers never evaluate to a
    /// rational).
    pub fn eval_q(&self, q: u32, a: &Rat, b: &Rat) -> Option<Rat> {
        let mut out = Rat::zero();
        for (e, c) in &self.terms {
            if e[0] % 2 != 0 {
                return None;
            }
            out += c * pow_p(q, e[0] / 2) * rat_pow(a, e[1]) * rat_pow(b, e[2]);
        }
        Some(out)
    }

    /// Degree-lexicographic leading term among terms shifted to nonnegative
    /// exponents; internal helper for exact division.
    fn grlex_leading(&self) -> Option<(Exp, Rat)> {
        self.terms
            .iter()
            .max_by(|(ea, _), (eb, _)| {
                let da: i64 = ea.iter().sum();
                let db: i64 = eb.iter().sum();
                da.cmp(&db).then(ea.cmp(eb))
            })
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Minimal exponent of each variable over the support.
    fn min_exps(&self) -> Exp {
        let mut m = [i64::MAX; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    fn shift(&self, d: Exp) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (exp_add(*e, d), c.clone()))
                .collect(),
        }
    }

    /// Exact division in the Laurent ring: returns `q` with `self = q * d`,
    /// or `None` if no such polynomial exists. Monomials are units, so both
    /// operands are first shifted to honest polynomials; degree-compatible
    /// leading-term cancellation then detects failure in finitely many steps.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let ma = self.min_exps();
        let md = d.min_exps();
        let a = self.shift([-ma[0], -ma[1], -ma[2]]);
        let b = d.shift([-md[0], -md[1], -md[2]]);
        let (lb_e, lb_c) = b.grlex_leading().unwrap();
        let mut rem = a;
        let mut quo = LaurentPoly::zero();
        while !rem.is_zero() {
            let (lr_e, lr_c) = rem.grlex_leading().unwrap();
            let mut te = [0i64; 3];
            for i in 0..3 {
                te[i] = lr_e[i] - lb_e[i];
                if te[i] < 0 {
                    return None;
                }
            }
            let t = LaurentPoly::monomial(lr_c / &lb_c, te[0], te[1], te[2]);
            rem -= &t * &b;
            quo += t;
        }
        // undo the two monomial shifts
        Some(quo.shift([ma[0] - md[0], ma[1] - md[1], ma[2] - md[2]]))
    }

    /// Drop zero terms. Arithmetic already maintains the invariant, so this
    /// is the identity on anything built through the public constructors;
    /// it exists as the explicit normalization entry point and is idempotent.
    pub fn normalize(self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Canonical text: terms sorted by descending `(e_v, e_x1, e_s)`, e.g.
    /// `3*v^3*x1*s^-1 + 1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            let names = ["v", "x1", "s"];
            for i in 0..3 {
                match e[i] {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    k => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            let coeff_abs = c.abs();
            let body = if factors.is_empty() {
                format!("{coeff_abs}")
            } else if coeff_abs.is_one() {
                factors.join("*")
            } else {
                format!("{coeff_abs}*{}", factors.join("*"))
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else if c.is_negative() {
                parts.push(format!("- {body}"));
            } else {
                parts.push(format!("+ {body}"));
            }
        }
        parts.join(" ")
    }

    /// Parse the canonical text form produced by [`render`](Self::render).
    pub fn parse(input: &str) -> Result<LaurentPoly, String> {
        let cleaned = input.trim();
        if cleaned.is_empty() {
            return Err("empty polynomial text".into());
        }
        if cleaned == "0" {
            return Ok(LaurentPoly::zero());
        }
        // split into signed terms
        let mut out = LaurentPoly::zero();
        let normalized = cleaned.replace("- ", "+ -").replace(" -", " + -");
        for piece in normalized.split('+') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (rat(-1), rest.trim()),
                None => (rat(1), piece),
            };
            let mut coeff = sign;
            let mut exp = [0i64; 3];
            let mut saw_factor = false;
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    continue;
                }
                saw_factor = true;
                let (name, pow) = match factor.split_once('^') {
                    Some((n, p)) => {
                        let p: i64 = p
                            .parse()
                            .map_err(|e| format!("bad exponent in {factor:?}: {e}"))?;
                        (n, p)
                    }
                    None => (factor, 1),
                };
                match name {
                    "v" => exp[0] += pow,
                    "x1" => exp[1] += pow,
                    "s" => exp[2] += pow,
                    "x2" => {
                        exp[1] -= pow;
                        exp[2] -= 2 * pow;
                    }
                    _ => {
                        if pow != 1 {
                            return Err(format!("unknown variable {name:?}"));
                        }
                        coeff *= super::rational::parse_rat(name)?;
                    }
                }
            }
            if !saw_factor {
                return Err(format!("empty term in {input:?}"));
            }
            out.insert_term(exp, coeff);
        }
        Ok(out)
    }
}

fn rat_pow(c: &Rat, k: i64) -> Rat {
    let mut out = Rat::one();
    let base = if k < 0 { c.recip() } else { c.clone() };
    for _ in 0..k.unsigned_abs() {
        out *= &base;
    }
    out
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert_term(exp_add(*ea, *eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.insert_term(e, c);
        }
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.insert_term(e, -c);
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ratio;

    #[test]
    fn normalize_drops_zero_terms() {
        // 0*x1 + 3 - 3 collapses to the empty term map
        let p =
            LaurentPoly::var(Var::X1).scale(&rat(0)) + LaurentPoly::int(3) - LaurentPoly::int(3);
        assert!(p.is_zero());
        assert!(p.clone().normalize().is_zero());
    }

    #[test]
    fn monomial_cancellation() {
        let p = LaurentPoly::v_pow(2) * LaurentPoly::v_pow(-2);
        assert!(p.is_one());
    }

    #[test]
    fn x2_abbreviation_respects_relation() {
        // x1 * x2 = s^-2 once x2 is folded in
        let p = LaurentPoly::var(Var::X1) * LaurentPoly::x2_pow(1);
        assert_eq!(p, LaurentPoly::monomial(rat(1), 0, 0, -2));
    }

    #[test]
    fn render_and_parse() {
        let p = LaurentPoly::monomial(rat(3), 3, 1, -1) + LaurentPoly::one();
        assert_eq!(p.render(), "3*v^3*x1*s^-1 + 1");
        assert_eq!(LaurentPoly::parse(&p.render()).unwrap(), p);

        let q = LaurentPoly::monomial(ratio(-2, 3), 0, 2, 0) - LaurentPoly::v_pow(-4);
        assert_eq!(LaurentPoly::parse(&q.render()).unwrap(), q);
        assert_eq!(LaurentPoly::parse("0").unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::var(Var::X1) + LaurentPoly::int(1);
        let b = LaurentPoly::var(Var::X1) - LaurentPoly::int(1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
        // units divide everything
        let m = LaurentPoly::monomial(ratio(3, 2), -1, 2, 0);
        let q = a.div_exact(&m).unwrap();
        assert_eq!(&q * &m, a);
    }

    #[test]
    fn substitution_twist() {
        // s -> -s on v^3*s + x1
        let p = LaurentPoly::monomial(rat(1), 3, 0, 1) + LaurentPoly::var(Var::X1);
        let images = [
            LaurentPoly::var(Var::V),
            LaurentPoly::var(Var::X1),
            LaurentPoly::var(Var::S).scale(&rat(-1)),
        ];
        let q = p.subst(&images);
        assert_eq!(
            q,
            LaurentPoly::monomial(rat(-1), 3, 0, 1) + LaurentPoly::var(Var::X1)
        );
    }

    #[test]
    fn eval_at_prime() {
        // v^2 evaluates to q, odd powers are rejected
        let p = LaurentPoly::v_pow(2);
        assert_eq!(p.eval_q(2, &rat(1), &rat(1)), Some(rat(2)));
        assert_eq!(LaurentPoly::v_pow(3).eval_q(2, &rat(1), &rat(1)), None);
        let m = LaurentPoly::monomial(rat(2), 4, 1, -1);
        assert_eq!(
            m.eval_q(3, &rat(5), &ratio(1, 2)),
            Some(rat(2) * rat(9) * rat(5) * rat(2))
        );
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn exponent_overflow_is_an_error() {
        let big = LaurentPoly::v_pow(60);
        let _ = &big * &big;
    }
}

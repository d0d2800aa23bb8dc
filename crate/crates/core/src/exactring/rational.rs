//! Big-rational helpers. `num::BigRational` already keeps values reduced
//! with a positive denominator, which is exactly the invariant we need.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "n" or "n/d" into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|e| format!("bad numerator {n:?}: {e}"))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator {d:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|e| format!("bad rational {s:?}: {e}"))?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// p-adic valuation of a nonzero rational; `None` encodes `val(0) = +inf`.
pub fn val_p(x: &Rat, p: u32) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v: i64 = 0;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Some(v)
}

/// `p^k` for any integer `k`, as an exact rational.
pub fn pow_p(p: u32, k: i64) -> Rat {
    let base = Rat::from_integer(BigInt::from(p));
    let mut out = Rat::one();
    let (mut k_abs, inv) = if k < 0 {
        ((-k) as u64, true)
    } else {
        (k as u64, false)
    };
    let mut b = base;
    while k_abs > 0 {
        if k_abs & 1 == 1 {
            out *= &b;
        }
        b = &b * &b;
        k_abs >>= 1;
    }
    if inv {
        out.recip()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(val_p(&ratio(12, 1), 2), Some(2));
        assert_eq!(val_p(&ratio(3, 8), 2), Some(-3));
        assert_eq!(val_p(&rat(0), 5), None);
        assert_eq!(val_p(&ratio(50, 3), 5), Some(2));
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rat("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn p_powers() {
        assert_eq!(pow_p(2, 10), rat(1024));
        assert_eq!(pow_p(3, -2), ratio(1, 9));
    }
}

//! The Steinberg constituent: its Iwahori-fixed line is re-derived from the
//! standard intertwining operators rather than copied. On the length-graded
//! Weyl basis the two elementary intertwiners act pairwise,
//! `T(f_w) = (1/q) f_w + (1/q) f_{aw}` and `T(f_aw) = f_w + f_aw` whenever
//! left multiplication increases length, and the Steinberg line is the
//! common kernel.

use crate::exactring::{LaurentPoly, Mat, RingMatrix, UPoly};
use crate::localgroup::{S1_LEFT, S2_LEFT, WEYL_LENGTHS};

use super::models::{ps_chamber_matrix, ps_subst_type_iva};
use super::restrict::restrict;

/// The intertwiner for one generator as a matrix on the eight-dimensional
/// Iwahori basis, scaled by `q` so the entries stay polynomial; the kernel
/// is unchanged by the scaling.
fn scaled_intertwiner(left_table: &[usize; 8]) -> RingMatrix {
    let q = LaurentPoly::v_pow(2);
    let mut m = Mat::zero(8, 8);
    for w in 0..8 {
        let aw = left_table[w];
        if WEYL_LENGTHS[aw] > WEYL_LENGTHS[w] {
            // q * T(f_w) = f_w + f_aw ; q * T(f_aw) = q f_w + q f_aw
            *m.at_mut(w, w) = LaurentPoly::one();
            *m.at_mut(aw, w) = LaurentPoly::one();
            *m.at_mut(w, aw) = q.clone();
            *m.at_mut(aw, aw) = q.clone();
        }
    }
    m
}

pub struct SteinbergOutcome {
    /// kernel vector in the Weyl-length basis, up to a ring scalar
    pub line: Vec<LaurentPoly>,
    pub chamber_charpoly: UPoly,
}

/// The coefficient pattern the solve must reproduce, up to a common scalar:
/// `q^4, -q^3, -q^3, q^2, q^2, -q, -q, 1` along the length grading.
pub fn reference_line() -> Vec<LaurentPoly> {
    [
        (1i64, 4i64),
        (-1, 3),
        (-1, 3),
        (1, 2),
        (1, 2),
        (-1, 1),
        (-1, 1),
        (1, 0),
    ]
    .iter()
    .map(|&(c, k)| LaurentPoly::monomial(crate::exactring::rat(c), 2 * k, 0, 0))
    .collect()
}

/// Solve the two kernel conditions simultaneously and return the line with
/// the chamber-operator eigenvalue factor at the given sign.
pub fn steinberg_line(eps: i64) -> Result<SteinbergOutcome, String> {
    let t1 = scaled_intertwiner(&S1_LEFT);
    let t2 = scaled_intertwiner(&S2_LEFT);
    let stacked = Mat::from_fn(16, 8, |i, j| {
        if i < 8 {
            t1.at(i, j).clone()
        } else {
            t2.at(i - 8, j).clone()
        }
    });
    let line = stacked
        .kernel_line()
        .ok_or_else(|| "intertwiner kernel is not one-dimensional".to_string())?;

    // proportionality to the reference vector, checked by cross ratios
    let reference = reference_line();
    for i in 0..8 {
        for j in 0..8 {
            let lhs = &line[i] * &reference[j];
            let rhs = &line[j] * &reference[i];
            if lhs != rhs {
                return Err(format!(
                    "kernel is not proportional to the stated line at ({i},{j})"
                ));
            }
        }
    }

    // the chamber operator acts on the line by a scalar
    let sub = ps_subst_type_iva(eps);
    let chamber = sub.apply(&ps_chamber_matrix());
    let kernel_at_eps: Vec<LaurentPoly> = line.iter().map(|c| sub.apply_poly(c)).collect();
    let restricted = restrict(&chamber, &vec![kernel_at_eps])
        .map_err(|e| format!("chamber does not preserve the Steinberg line: {e}"))?;
    Ok(SteinbergOutcome {
        line,
        chamber_charpoly: restricted.charpoly().expect("one by one"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    #[test]
    fn kernel_is_the_stated_line() {
        let out = steinberg_line(1).unwrap();
        // normalize so the longest-word coordinate is 1 and compare exactly
        let last = out.line[7].clone();
        assert!(!last.is_zero());
        let normalized: Vec<LaurentPoly> = out
            .line
            .iter()
            .map(|c| c.div_exact(&last).unwrap())
            .collect();
        assert_eq!(normalized, reference_line());
    }

    #[test]
    fn chamber_eigenvalue_is_minus_sigma() {
        for eps in [1i64, -1] {
            let out = steinberg_line(eps).unwrap();
            // charpoly u + eps, i.e. eigenvalue -eps
            let expected = UPoly::from_coeffs(vec![
                LaurentPoly::monomial(rat(eps), 0, 0, 0),
                LaurentPoly::one(),
            ]);
            assert_eq!(out.chamber_charpoly, expected);
        }
    }
}

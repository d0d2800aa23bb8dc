//! The transcribed operator actions on parahoric-fixed bases of the three
//! induced models: the full unramified principal series (Borel-induced, 8
//! Iwahori-fixed dimensions), the Siegel-parabolic model (4 dimensions) and
//! the Klingen-parabolic model (4 dimensions), together with the monomial
//! substitutions that specialize them to each representation type.
//!
//! Conventions: `v` is the square root of the residue cardinality `q`; `x1`
//! holds the first character value (or the single free character value `c`
//! in the one-parameter models); `s` holds the value of the similitude-line
//! character; the second principal-series character value is everywhere the
//! abbreviation `x2 = x1^-1 s^-2` forced by triviality of the central
//! character. Each matrix column lists the image of the corresponding basis
//! vector.

use crate::exactring::{rat, LaurentPoly, Mat, RingMatrix, Var};

fn m(coeff: i64, ev: i64, ex1: i64, es: i64) -> LaurentPoly {
    LaurentPoly::monomial(rat(coeff), ev, ex1, es)
}

/// `q - 1 = v^2 - 1`.
fn qm1() -> LaurentPoly {
    m(1, 2, 0, 0) - LaurentPoly::one()
}

/// `q^2 - 1 = v^4 - 1`.
fn q2m1() -> LaurentPoly {
    m(1, 4, 0, 0) - LaurentPoly::one()
}

fn zeros(rows: usize, cols: usize) -> RingMatrix {
    Mat::zero(rows, cols)
}

/// Chamber-operator action on the 8-dimensional Iwahori-fixed space of the
/// principal series, basis indexed by the Weyl order
/// id, s1, s2, s1s2, s2s1, s1s2s1, s2s1s2, s1s2s1s2.
pub fn ps_chamber_matrix() -> RingMatrix {
    let mut a = zeros(8, 8);
    // column j holds the image of f_{j+1}
    *a.at_mut(2, 0) = m(1, 1, -1, -1); // q^(1/2) x2 s
    *a.at_mut(2, 1) = &qm1() * &m(1, 1, -1, -1);
    *a.at_mut(3, 1) = m(1, 1, 1, 1); // q^(1/2) x1 s
    *a.at_mut(0, 2) = m(1, 3, 0, 1); // q^(3/2) s
    *a.at_mut(1, 3) = m(1, 3, 0, 1);
    *a.at_mut(0, 4) = &qm1() * &m(1, 3, 0, 1);
    *a.at_mut(3, 4) = &qm1() * &m(1, 1, 1, 1);
    *a.at_mut(6, 4) = m(1, 1, 0, -1); // q^(1/2) x1 x2 s = q^(1/2) s^-1
    *a.at_mut(1, 5) = &qm1() * &m(1, 3, 0, 1);
    *a.at_mut(2, 5) = &qm1() * &m(1, 3, -1, -1); // (q-1) q^(3/2) x2 s
    *a.at_mut(7, 5) = m(1, 1, 0, -1);
    *a.at_mut(1, 6) = &qm1() * &m(1, 3, 0, 1);
    *a.at_mut(4, 6) = m(1, 3, -1, -1); // q^(3/2) x2 s
    *a.at_mut(0, 7) = &qm1() * &m(1, 5, 0, 1); // (q-1) q^(5/2) s
    *a.at_mut(1, 7) = &(&qm1() * &qm1()) * &m(1, 3, 0, 1);
    *a.at_mut(4, 7) = &qm1() * &m(1, 3, -1, -1);
    *a.at_mut(5, 7) = m(1, 3, 1, 1); // q^(3/2) x1 s
    a
}

/// Edge operator on directed type-1 edges, on the 4-dimensional fixed space
/// of the Siegel congruence subgroup inside the principal series; basis
/// cosets id, s2, s1s2, s2s1s2.
pub fn ps_siegel_edge_matrix() -> RingMatrix {
    let mut a = zeros(4, 4);
    *a.at_mut(0, 0) = m(1, 3, 0, 1);
    *a.at_mut(0, 1) = &qm1() * &m(1, 3, 0, 1);
    *a.at_mut(1, 1) = m(1, 3, -1, -1); // q^(3/2) x2 s
    *a.at_mut(0, 2) = &qm1() * &m(1, 5, 0, 1);
    *a.at_mut(1, 2) = &qm1() * &m(1, 3, -1, -1);
    *a.at_mut(2, 2) = m(1, 3, 1, 1);
    *a.at_mut(0, 3) = &qm1() * &m(1, 7, 0, 1);
    *a.at_mut(1, 3) = &qm1() * &m(1, 5, -1, -1);
    *a.at_mut(2, 3) = &qm1() * &m(1, 3, 1, 1);
    *a.at_mut(3, 3) = m(1, 3, 0, -1); // q^(3/2) x1 x2 s
    a
}

/// Edge operator on type-2 edges, on the Klingen-fixed 4-dimensional space
/// of the principal series; basis cosets id, s1, s2s1, s1s2s1.
pub fn ps_klingen_edge_matrix() -> RingMatrix {
    let mut a = zeros(4, 4);
    *a.at_mut(0, 0) = m(1, 4, -1, 0); // q^2 x2 s^2 = q^2 x1^-1
    *a.at_mut(0, 1) = &qm1() * &m(1, 4, -1, 0);
    *a.at_mut(1, 1) = m(1, 4, 1, 2); // q^2 x1 s^2
    *a.at_mut(0, 2) = &qm1() * &m(1, 6, -1, 0);
    *a.at_mut(1, 2) = &qm1() * &(m(1, 4, 1, 2) + m(1, 4, 0, 0)); // x1 s^2 + x1 x2 s^2
    *a.at_mut(2, 2) = m(1, 4, -1, -2); // q^2 x1 x2^2 s^2 = q^2 x2
    *a.at_mut(0, 3) = &qm1() * &(m(1, 6, 0, 0) + m(1, 8, -1, 0)); // q^3 x1x2 s^2 + q^4 x2 s^2
    *a.at_mut(1, 3) = &(&qm1() * &qm1()) * &m(1, 4, 0, 0) + &qm1() * &m(1, 6, 1, 2);
    *a.at_mut(2, 3) = &qm1() * &m(1, 4, -1, -2);
    *a.at_mut(3, 3) = m(1, 4, 1, 0); // q^2 x1^2 x2 s^2 = q^2 x1
    a
}

/// Scalars of the two vertex operators on the spherical vector.
pub fn ps_vertex_scalars() -> (LaurentPoly, LaurentPoly) {
    // q^(3/2) (x1 x2 + x1 + x2 + 1) s  with x1 x2 = s^-2
    let lambda1 = m(1, 3, 0, -1) + m(1, 3, 1, 1) + m(1, 3, -1, -1) + m(1, 3, 0, 1);
    // q^2 (x1^2 x2 + x1 x2^2 + x1 + x2 + 2 x1 x2) s^2
    let lambda2 = m(1, 4, 1, 0) + m(1, 4, -1, -2) + m(1, 4, 1, 2) + m(1, 4, -1, 0) + m(2, 4, 0, 0);
    (lambda1, lambda2)
}

/// Chamber operator on the Iwahori-fixed space of the Siegel-parabolic
/// model; basis cosets id, s2, s2s1, s2s1s2 with the free character value in
/// the `x1` slot and the similitude character value in the `s` slot.
pub fn siegel_model_chamber() -> RingMatrix {
    let mut a = zeros(4, 4);
    *a.at_mut(1, 0) = m(1, 2, 1, 1); // q c s
    *a.at_mut(0, 1) = m(1, 3, 0, 1); // q^(3/2) s
    *a.at_mut(0, 2) = &qm1() * &m(1, 3, 0, 1);
    *a.at_mut(1, 2) = &qm1() * &m(1, 2, 1, 1);
    *a.at_mut(3, 2) = m(1, 1, 2, 1); // q^(1/2) c^2 s
    *a.at_mut(0, 3) = &qm1() * &m(1, 5, 0, 1);
    *a.at_mut(2, 3) = m(1, 4, 1, 1); // q^2 c s
    a
}

/// Type-1 edge operator on the Siegel-model fixed space of the Siegel
/// congruence subgroup; basis double cosets id, {s2, s2s1}, s2s1s2.
pub fn siegel_model_siegel_edge() -> RingMatrix {
    let mut a = zeros(3, 3);
    *a.at_mut(0, 0) = m(1, 3, 0, 1);
    *a.at_mut(0, 1) = &q2m1() * &m(1, 3, 0, 1);
    *a.at_mut(1, 1) = m(1, 4, 1, 1);
    *a.at_mut(0, 2) = &qm1() * &m(1, 7, 0, 1);
    *a.at_mut(1, 2) = &qm1() * &m(1, 4, 1, 1);
    *a.at_mut(2, 2) = m(1, 3, 2, 1); // q^(3/2) c^2 s
    a
}

/// Type-2 edge operator on the Siegel-model fixed space of the Klingen
/// congruence subgroup; basis double cosets {id, s2}, {s2s1, s2s1s2}.
pub fn siegel_model_klingen_edge() -> RingMatrix {
    let mut a = zeros(2, 2);
    *a.at_mut(0, 0) = m(1, 5, 1, 2); // q^(5/2) c s^2
    *a.at_mut(0, 1) = &qm1() * &m(1, 6, 2, 2) + &q2m1() * &m(1, 5, 1, 2);
    *a.at_mut(1, 1) = m(1, 5, 3, 2); // q^(5/2) c^3 s^2
    a
}

/// Chamber operator on the Iwahori-fixed space of the Klingen-parabolic
/// model; basis cosets id, s1, s1s2, s1s2s1.
pub fn klingen_model_chamber() -> RingMatrix {
    let mut a = zeros(4, 4);
    *a.at_mut(0, 0) = m(1, 2, 0, 1); // q s
    *a.at_mut(0, 1) = &qm1() * &m(1, 2, 0, 1);
    *a.at_mut(2, 1) = m(1, 2, 1, 1); // q c s
    *a.at_mut(1, 2) = m(1, 4, 0, 1); // q^2 s
    *a.at_mut(0, 3) = &qm1() * &m(1, 4, 0, 1);
    *a.at_mut(1, 3) = &qm1() * &m(1, 4, 0, 1);
    *a.at_mut(3, 3) = m(1, 2, 1, 1);
    a
}

/// Type-1 edge operator in the Klingen model; basis {id, s1}, {s1s2, s1s2s1}.
pub fn klingen_model_siegel_edge() -> RingMatrix {
    let mut a = zeros(2, 2);
    *a.at_mut(0, 0) = m(1, 4, 0, 1);
    *a.at_mut(0, 1) = &q2m1() * &m(1, 4, 0, 1);
    *a.at_mut(1, 1) = m(1, 4, 1, 1);
    a
}

/// Type-2 edge operator in the Klingen model; basis id, {s1, s1s2}, s1s2s1.
pub fn klingen_model_klingen_edge() -> RingMatrix {
    let mut a = zeros(3, 3);
    *a.at_mut(0, 0) = m(1, 4, 0, 2); // q^2 s^2
    *a.at_mut(0, 1) = &q2m1() * &m(1, 4, 0, 2);
    *a.at_mut(1, 1) = m(1, 6, 1, 2); // q^3 c s^2
    *a.at_mut(0, 2) = &qm1() * &(m(1, 6, 1, 2) + m(1, 8, 0, 2));
    *a.at_mut(1, 2) = &qm1() * &m(1, 6, 1, 2);
    *a.at_mut(2, 2) = m(1, 4, 2, 2); // q^2 c^2 s^2
    a
}

/// A specialization of a model: signed monomial images for the `x1` and `s`
/// slots (the `v` slot is never moved).
#[derive(Clone, Debug)]
pub struct Subst {
    pub images: [LaurentPoly; 3],
}

impl Subst {
    pub fn new(x1_image: LaurentPoly, s_image: LaurentPoly) -> Self {
        Subst {
            images: [LaurentPoly::var(Var::V), x1_image, s_image],
        }
    }

    pub fn identity() -> Self {
        Self::new(LaurentPoly::var(Var::X1), LaurentPoly::var(Var::S))
    }

    /// Signed monomial `sign * v^ev * x1^ex1 * s^es`.
    pub fn mono(sign: i64, ev: i64, ex1: i64, es: i64) -> LaurentPoly {
        m(sign, ev, ex1, es)
    }

    pub fn apply(&self, mat: &RingMatrix) -> RingMatrix {
        mat.subst(&self.images)
    }

    pub fn apply_poly(&self, poly: &LaurentPoly) -> LaurentPoly {
        poly.subst(&self.images)
    }
}

/// Principal-series inducing data per representation type, as images of
/// `(x1, s)`. The sign `eps` is the value of the order-two character at the
/// uniformizer wherever the type constrains it.
pub fn ps_subst_type_i() -> Subst {
    Subst::identity()
}

/// Full induced data behind the two type-II constituents: the first
/// character value is `q^(1/2) c` (the absolute-value character takes the
/// uniformizer to `1/q`), and the central character forces `s = eps/c`.
pub fn ps_subst_type_ii(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, 1, 1, 0), Subst::mono(eps, 0, -1, 0))
}

/// Full induced data behind type III: `s` stays free, `c = s^-2`.
pub fn ps_subst_type_iii() -> Subst {
    Subst::new(Subst::mono(1, 0, 0, -2), Subst::mono(1, -1, 0, 1))
}

pub fn ps_subst_type_iva(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, -4, 0, 0), Subst::mono(eps, 3, 0, 0))
}

pub fn ps_subst_type_ivd(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, 4, 0, 0), Subst::mono(eps, -3, 0, 0))
}

pub fn ps_subst_type_v(eps: i64) -> Subst {
    Subst::new(Subst::mono(-1, -2, 0, 0), Subst::mono(eps, 1, 0, 0))
}

pub fn ps_subst_type_vi(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, -2, 0, 0), Subst::mono(eps, 1, 0, 0))
}

pub fn ps_subst_type_vd(eps: i64) -> Subst {
    Subst::new(Subst::mono(-1, 2, 0, 0), Subst::mono(-eps, -1, 0, 0))
}

pub fn ps_subst_type_vid(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, 2, 0, 0), Subst::mono(eps, -1, 0, 0))
}

/// Siegel-model data per type realized there.
pub fn siegel_subst_iib(eps: i64) -> Subst {
    Subst::new(LaurentPoly::var(Var::X1), Subst::mono(eps, 0, -1, 0))
}

pub fn siegel_subst_vb(eps: i64) -> Subst {
    Subst::new(Subst::mono(-1, -1, 0, 0), Subst::mono(-eps, 1, 0, 0))
}

pub fn siegel_subst_vc(eps: i64) -> Subst {
    Subst::new(Subst::mono(-1, -1, 0, 0), Subst::mono(eps, 1, 0, 0))
}

pub fn siegel_subst_vd(eps: i64) -> Subst {
    Subst::new(Subst::mono(-1, 1, 0, 0), Subst::mono(-eps, -1, 0, 0))
}

pub fn siegel_subst_vib(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, -1, 0, 0), Subst::mono(eps, 1, 0, 0))
}

pub fn siegel_subst_vid(eps: i64) -> Subst {
    Subst::new(Subst::mono(1, 1, 0, 0), Subst::mono(eps, -1, 0, 0))
}

/// Klingen-model data.
pub fn klingen_subst_iiib() -> Subst {
    Subst::new(Subst::mono(1, 0, 0, -2), LaurentPoly::var(Var::S))
}

pub fn klingen_subst_vic(eps: i64) -> Subst {
    Subst::new(LaurentPoly::one(), Subst::mono(eps, 0, 0, 0))
}

/// The quadratic-twist substitution `s -> -s` on free-parameter types.
pub fn twist_s() -> Subst {
    Subst::new(LaurentPoly::var(Var::X1), Subst::mono(-1, 0, 0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{ratio, UPoly};

    #[test]
    fn siegel_edge_determinant_at_unit_characters() {
        // all character values 1: the determinant is v^12, i.e. 64 at q = 2.
        // Independent oracle: naive Laplace expansion along the first column.
        let mat = ps_siegel_edge_matrix();
        let one = LaurentPoly::one();
        let unit = Subst::new(one.clone(), one.clone());
        let at_unit = unit.apply(&mat);
        let det = at_unit.det().unwrap();

        fn naive_det(m: &RingMatrix, rows: &[usize], cols: &[usize]) -> LaurentPoly {
            if rows.len() == 1 {
                return m.at(rows[0], cols[0]).clone();
            }
            let mut acc = LaurentPoly::zero();
            for (k, &r) in rows.iter().enumerate() {
                if m.at(r, cols[0]).is_zero() {
                    continue;
                }
                let rest_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
                let term = m.at(r, cols[0]) * &naive_det(m, &rest_rows, &cols[1..]);
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let oracle = naive_det(&at_unit, &[0, 1, 2, 3], &[0, 1, 2, 3]);
        assert_eq!(det, oracle);
        assert_eq!(det, LaurentPoly::v_pow(12));
        assert_eq!(det.eval_q(2, &rat(1), &rat(1)), Some(rat(64)));
    }

    #[test]
    fn chamber_charpoly_factors_as_stated() {
        // the eight eigenvalues square to q^2 x1, q^2 x2 and inverses
        let a = ps_chamber_matrix();
        let cp = a.charpoly().unwrap();
        let q2 = |e: LaurentPoly| e;
        let expected = UPoly::from_roots(
            &[],
            &[
                q2(m(1, 4, 1, 0)),   // q^2 x1
                q2(m(1, 4, -1, -2)), // q^2 x2
                q2(m(1, 4, -1, 0)),  // q^2 x1^-1
                q2(m(1, 4, 1, 2)),   // q^2 x2^-1
            ],
        );
        assert_eq!(cp, expected);
    }

    #[test]
    fn vertex_scalars_specialize_to_operator_degrees() {
        // at the trivial one-dimensional representation the scalars must be
        // the full operator degrees q^3+q^2+q+1 and q^4+q^3+2q^2+q+1
        let (l1, l2) = ps_vertex_scalars();
        let sub = ps_subst_type_ivd(1);
        let l1v = sub.apply_poly(&l1);
        let l2v = sub.apply_poly(&l2);
        for q in [2u32, 3, 5] {
            let qq = rat(q as i64);
            let deg1 = &qq * &qq * &qq + &qq * &qq + &qq + rat(1);
            let deg2 = &qq * &qq * &qq * &qq + &qq * &qq * &qq + rat(2) * &qq * &qq + &qq + rat(1);
            assert_eq!(l1v.eval_q(q, &rat(1), &rat(1)), Some(deg1));
            assert_eq!(l2v.eval_q(q, &rat(1), &rat(1)), Some(deg2));
        }
        // literal unit characters gives 6q^2 for the second scalar, not the
        // degree; the degree appears only at the trivial-representation data
        assert_eq!(l2.eval_q(2, &rat(1), &rat(1)), Some(ratio(24, 1)));
    }
}

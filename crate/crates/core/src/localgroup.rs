//! Elements of `GSp4(Q_p)` as exact rational 4x4 matrices: the similitude
//! factor, membership predicates for the parahoric subgroups, coset
//! comparisons modulo the center, and the standard distinguished elements
//! (the Weyl generators, the type-rotating element `tau`, and the chamber
//! translation `t`).
//!
//! The field is fixed to `Q_p` with uniformizer `p`; scalars are global
//! rationals, so every valuation test is exact.

use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::exactring::{rat, val_p, Rat};

/// A scalar of the local field together with its residue prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalScalar {
    pub value: Rat,
    pub p: u32,
}

impl LocalScalar {
    pub fn new(value: Rat, p: u32) -> Self {
        LocalScalar { value, p }
    }

    /// Exact p-adic valuation; `None` is the `+infinity` sentinel for zero.
    pub fn valuation(&self) -> Option<i64> {
        val_p(&self.value, self.p)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn is_integral(&self) -> bool {
        self.valuation().map(|v| v >= 0).unwrap_or(true)
    }
}

/// Exact rational 4x4 matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat4 {
    pub m: [[Rat; 4]; 4],
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4 {
            m: std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.m[i][i] = Rat::one();
        }
        out
    }

    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self {
        Mat4 {
            m: rows.map(|r| r.map(rat)),
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = f(i, j);
            }
        }
        out
    }

    pub fn diag(d: [Rat; 4]) -> Self {
        let mut out = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            out.m[i][i] = x;
        }
        out
    }

    pub fn scalar(c: &Rat) -> Self {
        Self::diag([c.clone(), c.clone(), c.clone(), c.clone()])
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| {
            let mut acc = Rat::zero();
            for k in 0..4 {
                acc += &self.m[i][k] * &rhs.m[k][j];
            }
            acc
        })
    }

    pub fn scale(&self, c: &Rat) -> Mat4 {
        Mat4::from_fn(|i, j| &self.m[i][j] * c)
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn det(&self) -> Rat {
        // cofactor expansion along the first row; 4x4 is small enough
        fn det3(m: &[[Rat; 3]; 3]) -> Rat {
            let a = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
            let b = &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0]);
            let c = &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
            a - b + c
        }
        let mut acc = Rat::zero();
        for j in 0..4 {
            if self.m[0][j].is_zero() {
                continue;
            }
            let mut sub: [[Rat; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
            for (si, i) in (1..4).enumerate() {
                let mut sj = 0;
                for jj in 0..4 {
                    if jj == j {
                        continue;
                    }
                    sub[si][sj] = self.m[i][jj].clone();
                    sj += 1;
                }
            }
            let term = &self.m[0][j] * det3(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    pub fn inverse(&self) -> Option<Mat4> {
        // Gauss-Jordan over the rationals
        let mut a = self.m.clone();
        let mut inv = Mat4::identity().m;
        for col in 0..4 {
            let pivot_row = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pivot = a[col][col].clone();
            for j in 0..4 {
                a[col][j] /= &pivot;
                inv[col][j] /= &pivot;
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..4 {
                    let t = &factor * &a[col][j];
                    a[r][j] -= t;
                    let t = &factor * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
        Some(Mat4 { m: inv })
    }

    /// Minimal p-adic valuation over all entries; `None` for the zero matrix.
    pub fn min_valuation(&self, p: u32) -> Option<i64> {
        let mut best: Option<i64> = None;
        for i in 0..4 {
            for j in 0..4 {
                if let Some(v) = val_p(&self.m[i][j], p) {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        best
    }

    /// Row-major rendering as "num/den" strings, the serialized matrix form.
    pub fn render_entries(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                out.push(self.m[i][j].to_string());
            }
        }
        out
    }
}

impl fmt::Debug for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            writeln!(
                f,
                "[{} {} {} {}]",
                self.m[i][0], self.m[i][1], self.m[i][2], self.m[i][3]
            )?;
        }
        Ok(())
    }
}

/// The alternating Gram matrix of the standard symplectic basis.
pub fn j_matrix() -> Mat4 {
    Mat4::from_i64([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubgroupId {
    /// `GSp4(O)`, the hyperspecial maximal compact.
    K,
    /// Iwahori: upper triangular modulo `P`.
    I,
    /// Siegel congruence subgroup.
    P1,
    /// Klingen congruence subgroup.
    P2,
    /// Paramodular group.
    P02,
    /// Upper-triangular Borel.
    B,
    /// The center (rational scalar matrices).
    Z,
    /// Elements whose determinant has valuation divisible by four.
    G0,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NotInvertible,
    NotSimilitude { witness: (usize, usize) },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotInvertible => write!(f, "matrix is singular"),
            GroupError::NotSimilitude { witness: (i, j) } => {
                write!(f, "g^t J g is not a multiple of J (entry {i},{j} off)")
            }
        }
    }
}

impl std::error::Error for GroupError {}

/// A symplectic similitude with its cached factor.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElem {
    pub matrix: Mat4,
    pub similitude: LocalScalar,
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupElem(lambda={}) {:?}",
            self.similitude.value, self.matrix
        )
    }
}

/// Compute the similitude factor of `g`, verifying `g^t J g = lambda J`
/// entry by entry.
pub fn similitude(g: &Mat4, p: u32) -> Result<LocalScalar, GroupError> {
    let j = j_matrix();
    let gram = g.transpose().mul(&j).mul(g);
    let lambda = gram.m[0][3].clone();
    if lambda.is_zero() {
        return Err(GroupError::NotInvertible);
    }
    let expect = j.scale(&lambda);
    for i in 0..4 {
        for jj in 0..4 {
            if gram.m[i][jj] != expect.m[i][jj] {
                return Err(GroupError::NotSimilitude { witness: (i, jj) });
            }
        }
    }
    Ok(LocalScalar::new(lambda, p))
}

impl GroupElem {
    pub fn new(matrix: Mat4, p: u32) -> Result<Self, GroupError> {
        let similitude = similitude(&matrix, p)?;
        Ok(GroupElem { matrix, similitude })
    }

    pub fn from_i64(rows: [[i64; 4]; 4], p: u32) -> Self {
        Self::new(Mat4::from_i64(rows), p).expect("not a symplectic similitude")
    }

    pub fn p(&self) -> u32 {
        self.similitude.p
    }

    pub fn mul(&self, rhs: &GroupElem) -> GroupElem {
        GroupElem::new(self.matrix.mul(&rhs.matrix), self.p()).expect("product stays in the group")
    }

    pub fn inverse(&self) -> GroupElem {
        let inv = self.matrix.inverse().expect("group element is invertible");
        GroupElem::new(inv, self.p()).expect("inverse stays in the group")
    }

    pub fn det_valuation(&self) -> i64 {
        val_p(&self.matrix.det(), self.p()).expect("group element has nonzero determinant")
    }

    fn entry_val(&self, i: usize, j: usize) -> Option<i64> {
        val_p(&self.matrix.m[i][j], self.p())
    }

    fn entry_val_ge(&self, i: usize, j: usize, bound: i64) -> bool {
        self.entry_val(i, j).map(|v| v >= bound).unwrap_or(true)
    }

    fn all_integral(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.entry_val_ge(i, j, 0)))
    }

    /// Exact membership predicate, by entry valuations and the determinant
    /// valuation. The Siegel and Klingen congruence subgroups are elements of
    /// `K` reducing into the corresponding parabolic of the residue group.
    pub fn is_member(&self, h: SubgroupId) -> bool {
        match h {
            SubgroupId::K => self.all_integral() && self.det_valuation() == 0,
            SubgroupId::I => {
                self.is_member(SubgroupId::K)
                    && self.entry_val_ge(1, 0, 1)
                    && self.entry_val_ge(2, 0, 1)
                    && self.entry_val_ge(3, 0, 1)
                    && self.entry_val_ge(2, 1, 1)
                    && self.entry_val_ge(3, 1, 1)
                    && self.entry_val_ge(3, 2, 1)
            }
            SubgroupId::P1 => {
                // Siegel parabolic modulo P: lower-left 2x2 block vanishes
                self.is_member(SubgroupId::K)
                    && self.entry_val_ge(2, 0, 1)
                    && self.entry_val_ge(2, 1, 1)
                    && self.entry_val_ge(3, 0, 1)
                    && self.entry_val_ge(3, 1, 1)
            }
            SubgroupId::P2 => {
                // Klingen parabolic modulo P
                self.is_member(SubgroupId::K)
                    && self.entry_val_ge(1, 0, 1)
                    && self.entry_val_ge(2, 0, 1)
                    && self.entry_val_ge(3, 0, 1)
                    && self.entry_val_ge(3, 1, 1)
                    && self.entry_val_ge(3, 2, 1)
            }
            SubgroupId::P02 => {
                self.entry_val_ge(0, 3, -1)
                    && self.entry_val_ge(0, 0, 0)
                    && self.entry_val_ge(0, 1, 0)
                    && self.entry_val_ge(0, 2, 0)
                    && self.entry_val_ge(1, 1, 0)
                    && self.entry_val_ge(1, 2, 0)
                    && self.entry_val_ge(1, 3, 0)
                    && self.entry_val_ge(2, 1, 0)
                    && self.entry_val_ge(2, 2, 0)
                    && self.entry_val_ge(2, 3, 0)
                    && self.entry_val_ge(3, 3, 0)
                    && self.entry_val_ge(1, 0, 1)
                    && self.entry_val_ge(2, 0, 1)
                    && self.entry_val_ge(3, 0, 1)
                    && self.entry_val_ge(3, 1, 1)
                    && self.entry_val_ge(3, 2, 1)
                    && self.det_valuation() == 0
            }
            SubgroupId::B => (1..4).all(|i| (0..i).all(|j| self.matrix.m[i][j].is_zero())),
            SubgroupId::Z => {
                let c = &self.matrix.m[0][0];
                !c.is_zero() && self.matrix == Mat4::scalar(c)
            }
            SubgroupId::G0 => self.det_valuation().rem_euclid(4) == 0,
        }
    }

    /// Left-coset comparison: is `self^-1 * other` in `H` (`mod_center`
    /// false) or in `H * Z` (`mod_center` true)?
    ///
    /// For the compact-open subgroups the central part is normalized away
    /// exactly: an element of `H * Z` has determinant valuation divisible by
    /// four, and dividing by the corresponding power of `p` reduces the test
    /// to plain membership, because unit scalars already lie in each of these
    /// subgroups.
    pub fn same_coset(&self, other: &GroupElem, h: SubgroupId, mod_center: bool) -> bool {
        let x = self.inverse().mul(other);
        if !mod_center {
            return x.is_member(h);
        }
        match h {
            SubgroupId::B | SubgroupId::Z | SubgroupId::G0 => x.is_member(h), // Z is contained in these
            _ => {
                let dv = x.det_valuation();
                if dv.rem_euclid(4) != 0 {
                    return false;
                }
                let scale = crate::exactring::pow_p(x.p(), -dv / 4);
                match GroupElem::new(x.matrix.scale(&scale), x.p()) {
                    Ok(y) => y.is_member(h),
                    Err(_) => false,
                }
            }
        }
    }
}

/// First Weyl generator: swaps the two isotropic coordinate pairs.
pub fn s1(p: u32) -> GroupElem {
    GroupElem::from_i64([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], p)
}

/// Second Weyl generator: the embedded rank-one reflection.
pub fn s2(p: u32) -> GroupElem {
    GroupElem::from_i64([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], p)
}

/// The type-rotating element: interchanges the two kinds of special vertices.
pub fn tau(p: u32) -> GroupElem {
    let pr = rat(p as i64);
    GroupElem::new(
        Mat4::from_fn(|i, j| match (i, j) {
            (0, 2) | (1, 3) => Rat::one(),
            (2, 0) | (3, 1) => pr.clone(),
            _ => Rat::zero(),
        }),
        p,
    )
    .expect("tau is a similitude")
}

/// The translation whose Iwahori double coset defines the chamber operator.
pub fn t_elem(p: u32) -> GroupElem {
    let pr = rat(p as i64);
    GroupElem::new(
        Mat4::from_fn(|i, j| match (i, j) {
            (0, 0) => Rat::one(),
            (1, 2) => Rat::one(),
            (2, 1) => -pr.clone(),
            (3, 3) => pr.clone(),
            _ => Rat::zero(),
        }),
        p,
    )
    .expect("t is a similitude")
}

/// The eight Weyl representatives as products of the two generators, in the
/// order id, s1, s2, s1s2, s2s1, s1s2s1, s2s1s2, s1s2s1s2.
pub fn weyl_elements(p: u32) -> Vec<GroupElem> {
    let e = GroupElem::new(Mat4::identity(), p).unwrap();
    let a = s1(p);
    let b = s2(p);
    let words: [&[usize]; 8] = [
        &[],
        &[1],
        &[2],
        &[1, 2],
        &[2, 1],
        &[1, 2, 1],
        &[2, 1, 2],
        &[1, 2, 1, 2],
    ];
    words
        .iter()
        .map(|w| {
            w.iter().fold(e.clone(), |acc, &g| {
                let gen = if g == 1 { &a } else { &b };
                acc.mul(gen)
            })
        })
        .collect()
}

/// Coxeter length of each representative in the order of [`weyl_elements`].
pub const WEYL_LENGTHS: [usize; 8] = [0, 1, 1, 2, 2, 3, 3, 4];

/// Index of `s1 * w_i` (left multiplication) in the Weyl order above.
pub const S1_LEFT: [usize; 8] = [1, 0, 3, 2, 5, 4, 7, 6];
/// Index of `s2 * w_i` in the Weyl order above.
pub const S2_LEFT: [usize; 8] = [2, 4, 0, 6, 1, 7, 3, 5];

/// Index of `w_i * s1` (right multiplication).
pub const S1_RIGHT: [usize; 8] = [1, 0, 4, 5, 2, 3, 7, 6];
/// Index of `w_i * s2`.
pub const S2_RIGHT: [usize; 8] = [2, 3, 0, 1, 6, 7, 4, 5];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ratio;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Independent oracle: plain triple product `g^t J g` compared against
    /// `lambda J` computed entrywise with fresh arithmetic.
    fn oracle_similitude(g: &Mat4) -> Option<Rat> {
        let j = j_matrix();
        let jt = g.transpose().mul(&j).mul(g);
        let lambda = jt.m[0][3].clone();
        for i in 0..4 {
            for jj in 0..4 {
                let want = &j.m[i][jj] * &lambda;
                if jt.m[i][jj] != want {
                    return None;
                }
            }
        }
        if lambda.is_zero() {
            None
        } else {
            Some(lambda)
        }
    }

    #[test]
    fn j_has_similitude_one() {
        // J^2 = -I so J^t J J = J; the oracle and the implementation agree
        let j = j_matrix();
        assert_eq!(oracle_similitude(&j), Some(rat(1)));
        assert_eq!(similitude(&j, 2).unwrap().value, rat(1));
        let j2 = j.mul(&j);
        assert_eq!(j2, Mat4::identity().scale(&rat(-1)));
    }

    #[test]
    fn diagonal_similitude_is_antidiagonal_product() {
        let g = Mat4::diag([rat(1), rat(1), rat(2), rat(2)]);
        assert_eq!(oracle_similitude(&g), Some(rat(2)));
        assert_eq!(similitude(&g, 2).unwrap().value, rat(2));
    }

    #[test]
    fn unbalanced_diagonal_is_rejected() {
        // pairing <e1,f2> scales by 2 while <e2,f1> scales by 1
        let g = Mat4::diag([rat(1), rat(1), rat(1), rat(2)]);
        assert_eq!(oracle_similitude(&g), None);
        assert!(matches!(
            similitude(&g, 2),
            Err(GroupError::NotSimilitude { .. })
        ));
    }

    #[test]
    fn iwahori_and_siegel_membership() {
        let p = 3;
        let id = GroupElem::new(Mat4::identity(), p).unwrap();
        assert!(id.is_member(SubgroupId::I));
        let w1 = s1(p);
        assert!(w1.is_member(SubgroupId::P1));
        assert!(!w1.is_member(SubgroupId::I));
        let w2 = s2(p);
        assert!(w2.is_member(SubgroupId::P2));
        assert!(!w2.is_member(SubgroupId::P1));
    }

    #[test]
    fn tau_is_not_compact_but_its_square_is_central() {
        for p in [2u32, 3, 5] {
            let t = tau(p);
            // under this sign convention for J the similitude of tau is -p;
            // only its valuation 1 matters for the non-compactness test
            assert_eq!(t.similitude.value, rat(-(p as i64)));
            assert_eq!(t.similitude.valuation(), Some(1));
            assert!(!t.is_member(SubgroupId::K));
            let t2 = t.mul(&t);
            assert_eq!(t2.matrix, Mat4::scalar(&rat(p as i64)));
            assert!(t2.is_member(SubgroupId::Z));
        }
    }

    #[test]
    fn center_cosets() {
        let p = 3;
        let g = s1(p);
        let z = GroupElem::new(Mat4::scalar(&rat(3)), p).unwrap();
        let gz = g.mul(&z);
        assert!(g.same_coset(&gz, SubgroupId::K, true));
        assert!(!g.same_coset(&gz, SubgroupId::K, false));

        let id = GroupElem::new(Mat4::identity(), p).unwrap();
        assert!(!id.same_coset(&s1(p), SubgroupId::I, true));

        let d = GroupElem::new(Mat4::diag([rat(1), rat(1), rat(3), rat(3)]), p).unwrap();
        assert!(!id.same_coset(&d, SubgroupId::K, true));
    }

    #[test]
    fn weyl_group_order_eight() {
        let p = 2;
        let w = weyl_elements(p);
        assert_eq!(w.len(), 8);
        assert_eq!(w[0].matrix, Mat4::identity());
        // s1^2 = id; s2^2 = diag(1,-1,-1,1), a unit matrix that is not central
        let s1sq = s1(p).mul(&s1(p));
        assert_eq!(s1sq.matrix, Mat4::identity());
        let s2sq = s2(p).mul(&s2(p));
        assert_eq!(s2sq.matrix, Mat4::diag([rat(1), rat(-1), rat(-1), rat(1)]));
        // pairwise distinct modulo the center
        for i in 0..8 {
            for j in (i + 1)..8 {
                assert!(
                    !w[i].same_coset(&w[j], SubgroupId::Z, false),
                    "Weyl representatives {i} and {j} are proportional"
                );
            }
        }
        // the two longest words agree: s1s2s1s2 = s2s1s2s1
        let rhs = s2(p).mul(&s1(p)).mul(&s2(p)).mul(&s1(p));
        assert_eq!(w[7].matrix, rhs.matrix);
    }

    #[test]
    fn weyl_multiplication_tables() {
        // representatives multiply per the abstract table modulo unit
        // diagonal torus elements (signs)
        fn same_mod_torus(a: &GroupElem, b: &GroupElem) -> bool {
            let d = a.matrix.mul(&b.matrix.inverse().unwrap());
            (0..4).all(|i| {
                (0..4).all(|j| (i == j) != d.m[i][j].is_zero())
                    && (d.m[i][i] == rat(1) || d.m[i][i] == rat(-1))
            })
        }
        let p = 5;
        let w = weyl_elements(p);
        for i in 0..8 {
            assert!(
                same_mod_torus(&s1(p).mul(&w[i]), &w[S1_LEFT[i]]),
                "s1 * w_{i}"
            );
            assert!(
                same_mod_torus(&s2(p).mul(&w[i]), &w[S2_LEFT[i]]),
                "s2 * w_{i}"
            );
            assert!(
                same_mod_torus(&w[i].mul(&s1(p)), &w[S1_RIGHT[i]]),
                "w_{i} * s1"
            );
            assert!(
                same_mod_torus(&w[i].mul(&s2(p)), &w[S2_RIGHT[i]]),
                "w_{i} * s2"
            );
        }
    }

    use crate::testutil::random_k_element;

    #[test]
    fn similitude_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let p = [2u32, 3, 5][rng.gen_range(0..3)];
            let g = random_k_element(&mut rng, p);
            let d = GroupElem::new(
                Mat4::diag([rat(1), rat(1), rat(p as i64), rat(p as i64)]),
                p,
            )
            .unwrap();
            let h = random_k_element(&mut rng, p).mul(&d);
            let gh = g.mul(&h);
            assert_eq!(
                gh.similitude.value,
                &g.similitude.value * &h.similitude.value
            );
        }
    }

    #[test]
    fn k_membership_closed_under_product_and_inverse() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let p = [2u32, 3, 5][rng.gen_range(0..3)];
            let g = random_k_element(&mut rng, p);
            let h = random_k_element(&mut rng, p);
            assert!(g.is_member(SubgroupId::K));
            assert!(g.mul(&h).is_member(SubgroupId::K));
            assert!(g.inverse().is_member(SubgroupId::K));
        }
    }

    #[test]
    fn index_two_decomposition_via_tau() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..40 {
            let p = [2u32, 3, 5][rng.gen_range(0..3)];
            let t = tau(p);
            let mut g = random_k_element(&mut rng, p);
            if rng.gen_bool(0.5) {
                g = g.mul(&t);
            }
            let dv = g.det_valuation().rem_euclid(4);
            assert!(
                dv == 0 || dv == 2,
                "determinant valuation mod 4 is always even"
            );
            let g_tau_inv = g.mul(&t.inverse());
            let in_g0 = g.is_member(SubgroupId::G0);
            let shifted_in_g0 = g_tau_inv.is_member(SubgroupId::G0);
            assert!(
                in_g0 ^ shifted_in_g0,
                "exactly one of g, g*tau^-1 lies in G0"
            );
        }
    }

    #[test]
    fn paramodular_pattern_admits_the_shifted_corner() {
        let p = 3;
        // unipotent with p^-1 in the upper-right corner: paramodular but
        // not integral
        let u = GroupElem::new(
            Mat4::from_fn(|i, j| match (i, j) {
                (0, 3) => ratio(1, 3),
                _ if i == j => Rat::one(),
                _ => Rat::zero(),
            }),
            p,
        )
        .unwrap();
        assert!(u.is_member(SubgroupId::P02));
        assert!(!u.is_member(SubgroupId::K));
        // the lower-left corner entry must have positive valuation
        let l = GroupElem::new(
            Mat4::from_fn(|i, j| match (i, j) {
                (3, 0) => rat(1),
                _ if i == j => Rat::one(),
                _ => Rat::zero(),
            }),
            p,
        )
        .unwrap();
        assert!(!l.is_member(SubgroupId::P02));
        assert!(l.is_member(SubgroupId::K));
    }

    #[test]
    fn tau_normalizes_the_paramodular_group() {
        let p = 2;
        let t = tau(p);
        // conjugation by tau preserves paramodular membership on a sample
        // of elements of different shapes
        let samples = [
            GroupElem::new(Mat4::identity(), p).unwrap(),
            s2(p),
            GroupElem::new(
                Mat4::from_fn(|i, j| match (i, j) {
                    (0, 3) => ratio(1, 2),
                    _ if i == j => Rat::one(),
                    _ => Rat::zero(),
                }),
                p,
            )
            .unwrap(),
            GroupElem::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [2, 1, 1, 0], [2, 2, 0, 1]], p),
        ];
        for g in &samples {
            assert!(
                g.is_member(SubgroupId::P02),
                "sample lies in the paramodular group"
            );
            let conj = t.mul(g).mul(&t.inverse());
            assert!(
                conj.same_coset(
                    &GroupElem::new(Mat4::identity(), p).unwrap(),
                    SubgroupId::P02,
                    true
                ) == conj.is_member(SubgroupId::P02)
                    || conj.is_member(SubgroupId::P02),
                "conjugate stays paramodular up to center"
            );
            let dv = conj.det_valuation();
            let scale = crate::exactring::pow_p(p, -dv / 4);
            let normalized = GroupElem::new(conj.matrix.scale(&scale), p).unwrap();
            assert!(normalized.is_member(SubgroupId::P02));
        }
    }

    #[test]
    fn scalar_and_rational_entries() {
        let g = Mat4::from_fn(|i, j| if i == j { ratio(1, 2) } else { Rat::zero() });
        let e = GroupElem::new(g, 2).unwrap();
        assert!(e.is_member(SubgroupId::Z));
        assert_eq!(e.similitude.value, ratio(1, 4));
    }
}

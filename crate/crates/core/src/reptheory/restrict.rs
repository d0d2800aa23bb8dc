//! Restriction of operator matrices to stated invariant subspaces, with the
//! invariance itself verified, plus the small subspace-intersection ranks
//! used for parahoric dimension counts.

use crate::exactring::{LaurentPoly, Mat, RingMatrix};

/// Matrix columns spanning a subspace, each of the ambient dimension.
pub type SpanBasis = Vec<Vec<LaurentPoly>>;

/// Restrict `op` to the span of `basis`. Returns the matrix in the given
/// basis, or an error when the span is not invariant or the induced matrix
/// fails to have entries in the coefficient ring.
pub fn restrict(op: &RingMatrix, basis: &SpanBasis) -> Result<RingMatrix, String> {
    let dim = op.rows();
    let k = basis.len();
    assert!(basis.iter().all(|b| b.len() == dim));
    // B as dim x k matrix
    let b = Mat::from_fn(dim, k, |i, j| basis[j][i].clone());
    // choose k independent rows of B by fraction-free elimination
    let rows = independent_rows(&b);
    if rows.len() != k {
        return Err("stated basis is linearly dependent".into());
    }
    let bsub = Mat::from_fn(k, k, |i, j| b.at(rows[i], j).clone());
    let det = bsub.det().expect("square");
    if det.is_zero() {
        return Err("stated basis is linearly dependent".into());
    }
    let mut out = Mat::zero(k, k);
    for (col, vec) in basis.iter().enumerate() {
        let image = op.apply(vec);
        // solve bsub * x = image[rows] by Cramer with exact division
        for i in 0..k {
            let mut replaced = bsub.clone();
            for r in 0..k {
                *replaced.at_mut(r, i) = image[rows[r]].clone();
            }
            let num = replaced.det().expect("square");
            let x = num
                .div_exact(&det)
                .ok_or_else(|| "restriction has non-polynomial coefficients".to_string())?;
            *out.at_mut(i, col) = x;
        }
        // confirm on all ambient coordinates, not just the chosen rows
        let mut recombined = vec![LaurentPoly::zero(); dim];
        for i in 0..k {
            for (r, slot) in recombined.iter_mut().enumerate() {
                *slot = &*slot + &(out.at(i, col) * &basis[i][r]);
            }
        }
        if recombined != image {
            return Err(format!(
                "span is not invariant (image of basis vector {col})"
            ));
        }
    }
    Ok(out)
}

fn independent_rows(b: &RingMatrix) -> Vec<usize> {
    // greedy: keep rows that increase the rank
    let mut chosen: Vec<usize> = Vec::new();
    for r in 0..b.rows() {
        let mut trial = chosen.clone();
        trial.push(r);
        let sub = Mat::from_fn(trial.len(), b.cols(), |i, j| b.at(trial[i], j).clone());
        if sub.rank() == trial.len() {
            chosen = trial;
            if chosen.len() == b.cols() {
                break;
            }
        }
    }
    chosen
}

/// Dimension of the intersection of `span(basis)` with the kernel of the
/// given linear functionals (each a row of ambient length).
pub fn intersection_dim(basis: &SpanBasis, functionals: &[Vec<LaurentPoly>]) -> usize {
    let k = basis.len();
    if functionals.is_empty() {
        return k;
    }
    let m = Mat::from_fn(functionals.len(), k, |i, j| {
        let mut acc = LaurentPoly::zero();
        for (r, f) in functionals[i].iter().enumerate() {
            acc += f * &basis[j][r];
        }
        acc
    });
    k - m.rank()
}

/// Functionals cutting the Siegel-fixed space out of the 4-dimensional
/// Iwahori space of the one-parameter models: second and third coordinates
/// agree.
pub fn siegel_edge_constraints4() -> Vec<Vec<LaurentPoly>> {
    vec![vec![
        LaurentPoly::zero(),
        LaurentPoly::one(),
        -LaurentPoly::one(),
        LaurentPoly::zero(),
    ]]
}

/// Functionals cutting the Klingen-fixed space: first pair and second pair
/// agree.
pub fn klingen_edge_constraints4() -> Vec<Vec<LaurentPoly>> {
    vec![
        vec![
            LaurentPoly::one(),
            -LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
        ],
        vec![
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::one(),
            -LaurentPoly::one(),
        ],
    ]
}

/// Functionals cutting the spherical line: all coordinates agree.
pub fn spherical_constraints4() -> Vec<Vec<LaurentPoly>> {
    let one = LaurentPoly::one();
    vec![
        vec![
            one.clone(),
            -one.clone(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
        ],
        vec![
            LaurentPoly::zero(),
            one.clone(),
            -one.clone(),
            LaurentPoly::zero(),
        ],
        vec![
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            one.clone(),
            -one.clone(),
        ],
    ]
}

/// Project vectors written in the 4-dimensional Iwahori basis of a
/// one-parameter model to the Siegel-fixed coordinates (merge the equal
/// middle pair). Fails when a vector is outside the fixed space.
pub fn to_siegel_coords(v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, String> {
    if v[1] != v[2] {
        return Err("vector is not Siegel-parahoric invariant".into());
    }
    Ok(vec![v[0].clone(), v[1].clone(), v[3].clone()])
}

/// Project to the Klingen-fixed coordinates (merge the equal pairs).
pub fn to_klingen_coords(v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, String> {
    if v[0] != v[1] || v[2] != v[3] {
        return Err("vector is not Klingen-parahoric invariant".into());
    }
    Ok(vec![v[0].clone(), v[2].clone()])
}

/// The same merges for the Klingen model, whose fixed-space shapes are
/// transposed: type-1 edges merge the outer pairs, type-2 edges the middle.
pub fn to_siegel_coords_klingen_model(v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, String> {
    if v[0] != v[1] || v[2] != v[3] {
        return Err("vector is not Siegel-parahoric invariant".into());
    }
    Ok(vec![v[0].clone(), v[2].clone()])
}

pub fn to_klingen_coords_klingen_model(v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, String> {
    if v[1] != v[2] {
        return Err("vector is not Klingen-parahoric invariant".into());
    }
    Ok(vec![v[0].clone(), v[1].clone(), v[3].clone()])
}

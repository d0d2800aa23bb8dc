//! Lattice classes and the local geometry of the building: canonical
//! homothety-normalized bases, vertex types, dual lattices, neighbor and
//! chamber enumeration, the "close" relation on vertices, and breadth-first
//! balls around the fundamental chamber.
//!
//! A lattice is the column span of a nonsingular rational 4x4 matrix over the
//! local ring at `p`. Classes are kept in a unique canonical form: columns
//! are reduced to a lower-triangular basis with p-power pivots and reduced
//! off-pivot entries, then the whole matrix is scaled by a power of `p` so
//! the minimal entry valuation is zero. Class equality is matrix equality.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use serde::Serialize;

use crate::exactring::{pow_p, rat, val_p, Rat};
use crate::localgroup::{j_matrix, Mat4};

/// Desk-scale caps: balls stay small enough for exact arithmetic.
pub const MAX_RADIUS: usize = 3;
pub const SUPPORTED_PRIMES: [u32; 3] = [2, 3, 5];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeoError {
    NotAVertex(String),
    UnsupportedPrime(u32),
    RadiusCap(usize),
}

impl fmt::Display for GeoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeoError::NotAVertex(what) => write!(f, "not a building vertex: {what}"),
            GeoError::UnsupportedPrime(p) => write!(f, "prime {p} outside supported set {{2,3,5}}"),
            GeoError::RadiusCap(r) => write!(f, "radius {r} exceeds cap {MAX_RADIUS}"),
        }
    }
}

impl std::error::Error for GeoError {}

/// Canonical residue of `x` modulo `p^m` over the local ring: the unique
/// representative with p-adic digits only in positions `val(x) .. m`.
fn residue_mod(x: &Rat, p: u32, m: i64) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let v = val_p(x, p).unwrap();
    if v >= m {
        return Rat::zero();
    }
    let t = (m - v) as u32;
    let y = x * pow_p(p, -v); // unit: numerator and denominator prime to p
    let modulus = BigInt::from(p).pow(t);
    let num = y.numer().mod_floor(&modulus);
    let den = y.denom().mod_floor(&modulus);
    let inv = mod_inverse(&den, &modulus).expect("denominator is prime to p");
    let r = (num * inv).mod_floor(&modulus);
    Rat::from_integer(r) * pow_p(p, v)
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(modulus);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(modulus))
    } else {
        None
    }
}

/// p-adic valuation of a big integer; `None` for zero.
fn int_val(x: &BigInt, p: u32) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.clone();
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Column reduction of a spanning set to the canonical lower-triangular
/// basis: deterministic pivot order (rows top to bottom, minimal valuation,
/// ties to the leftmost column), p-power pivots, off-pivot entries reduced to
/// canonical residues.
///
/// The elimination phase runs on integer columns with unit-free operations
/// (scale the target column by the pivot's unit part instead of dividing),
/// so big-rational arithmetic only appears in the short final cleanup.
fn column_reduce(cols: Vec<[Rat; 4]>, p: u32) -> Mat4 {
    let n = cols.len();
    assert!(n >= 4, "need a spanning set");
    // sanitize: per column, multiply by the non-p (unit) part of the
    // denominator lcm, which preserves the span; then pull out one global
    // p-power, which is a homothety and is normalized away at the end
    let mut fcols: Vec<[Rat; 4]> = cols
        .iter()
        .map(|col| {
            let mut denom_lcm = BigInt::one();
            for x in col {
                denom_lcm = denom_lcm.lcm(x.denom());
            }
            if let Some(v) = int_val(&denom_lcm, p) {
                denom_lcm /= BigInt::from(p).pow(v as u32);
            }
            let unit = Rat::from_integer(denom_lcm);
            std::array::from_fn(|i| &col[i] * &unit)
        })
        .collect();
    let mut min_v = i64::MAX;
    for col in &fcols {
        for x in col {
            if let Some(v) = val_p(x, p) {
                min_v = min_v.min(v);
            }
        }
    }
    assert!(min_v < i64::MAX, "zero spanning set");
    if min_v < 0 {
        let scale = pow_p(p, -min_v);
        for col in fcols.iter_mut() {
            for x in col.iter_mut() {
                *x = &*x * &scale;
            }
        }
    }
    let mut work: Vec<[BigInt; 4]> = fcols
        .iter()
        .map(|c| std::array::from_fn(|i| c[i].to_integer()))
        .collect();

    // phase 1: unit-free integer triangularization
    let mut pivots = [0i64; 4];
    for r in 0..4 {
        let best = (r..n)
            .filter_map(|c| int_val(&work[c][r], p).map(|v| (v, c)))
            .min();
        let (a, ci) = best.expect("spanning set is rank deficient");
        work.swap(r, ci);
        pivots[r] = a;
        let pa = BigInt::from(p).pow(a as u32);
        let unit_r = &work[r][r] / &pa; // integer prime to p
        for c in r + 1..n {
            if work[c][r].is_zero() {
                continue;
            }
            let f = &work[c][r] / &pa; // exact: valuation >= a
            for i in 0..4 {
                let t = &work[c][i] * &unit_r - &f * &work[r][i];
                work[c][i] = t;
            }
        }
    }

    // phase 2: rational cleanup on the 4x4 triangle: normalize pivots to
    // exact p-powers, reduce below-pivot entries to canonical residues,
    // scale to minimal valuation zero
    let mut rcols: Vec<[Rat; 4]> = (0..4)
        .map(|c| {
            let pa = pow_p(p, pivots[c]);
            let unit = &pa / Rat::from_integer(work[c][c].clone());
            std::array::from_fn(|i| Rat::from_integer(work[c][i].clone()) * &unit)
        })
        .collect();
    for j in 0..4 {
        for i in j + 1..4 {
            let x = rcols[j][i].clone();
            let r = residue_mod(&x, p, pivots[i]);
            let f = (&x - &r) * pow_p(p, -pivots[i]);
            if f.is_zero() {
                continue;
            }
            for k in 0..4 {
                let sub = &f * &rcols[i][k];
                rcols[j][k] = &rcols[j][k] - &sub;
            }
        }
    }
    let mut min_v = i64::MAX;
    for col in &rcols {
        for x in col {
            if let Some(v) = val_p(x, p) {
                min_v = min_v.min(v);
            }
        }
    }
    if min_v != 0 {
        let scale = pow_p(p, -min_v);
        for col in rcols.iter_mut() {
            for x in col.iter_mut() {
                *x = &*x * &scale;
            }
        }
    }
    Mat4::from_fn(|i, j| rcols[j][i].clone())
}

/// Homothety class of a rank-4 lattice, stored as its unique canonical
/// basis matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    basis: Mat4,
    p: u32,
}

impl fmt::Debug for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeClass(p={}) {:?}", self.p, self.basis)
    }
}

impl LatticeClass {
    /// Canonicalize the column span of `basis`.
    pub fn from_basis(basis: &Mat4, p: u32) -> Self {
        let cols: Vec<[Rat; 4]> = (0..4)
            .map(|j| std::array::from_fn(|i| basis.m[i][j].clone()))
            .collect();
        Self::from_spanning(cols, p)
    }

    /// Canonicalize an arbitrary rational spanning set (at least 4 vectors).
    pub fn from_spanning(cols: Vec<[Rat; 4]>, p: u32) -> Self {
        let reduced = column_reduce(cols, p);
        let m = reduced.min_valuation(p).expect("lattice basis is nonzero");
        let basis = reduced.scale(&pow_p(p, -m));
        LatticeClass { basis, p }
    }

    pub fn standard(p: u32) -> Self {
        Self::from_basis(&Mat4::identity(), p)
    }

    pub fn basis(&self) -> &Mat4 {
        &self.basis
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Type of the class: valuation of the basis determinant mod 4. Well
    /// defined because homothety shifts it by multiples of four.
    pub fn class_type(&self) -> u8 {
        let d = val_p(&self.basis.det(), self.p).expect("nonsingular");
        d.rem_euclid(4) as u8
    }

    /// Translate by a group element (or any nonsingular rational matrix).
    pub fn translate(&self, g: &Mat4) -> LatticeClass {
        Self::from_basis(&g.mul(&self.basis), self.p)
    }

    /// Dual lattice class.
    pub fn dual(&self) -> LatticeClass {
        let bt_inv = self.basis.transpose().inverse().expect("nonsingular");
        Self::from_basis(&j_matrix().mul(&bt_inv), self.p)
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    /// Gram matrix of the symplectic form on the canonical basis.
    pub fn gram(&self) -> Mat4 {
        self.basis.transpose().mul(&j_matrix()).mul(&self.basis)
    }

    /// A class is primitive when some representative pairs into the local
    /// ring with unit-determinant reduction: minimal Gram valuation must be
    /// even and carry the whole determinant valuation.
    pub fn is_primitive(&self) -> bool {
        let gram = self.gram();
        let m = gram.min_valuation(self.p).expect("form is nondegenerate");
        if m.rem_euclid(2) != 0 {
            return false;
        }
        let dv = val_p(&gram.det(), self.p).expect("nonsingular");
        dv == 4 * m
    }

    /// Scaled residual symplectic form on `L/pL` as integers mod p.
    fn residual_form(&self) -> [[u32; 4]; 4] {
        let gram = self.gram();
        let m = gram.min_valuation(self.p).expect("nondegenerate");
        let scale = pow_p(self.p, -m);
        let mut out = [[0u32; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let x = &gram.m[i][j] * &scale;
                let r = residue_mod(&x, self.p, 1);
                out[i][j] = r
                    .to_integer()
                    .mod_floor(&BigInt::from(self.p))
                    .try_into()
                    .unwrap();
            }
        }
        out
    }

    /// The lattice spanned by the chosen mod-p vectors together with `p`
    /// times this lattice.
    fn sublattice(&self, vectors: &[[u32; 4]]) -> LatticeClass {
        let p = self.p;
        let mut cols: Vec<[Rat; 4]> = Vec::with_capacity(vectors.len() + 4);
        for u in vectors {
            let mut col: [Rat; 4] = std::array::from_fn(|_| Rat::zero());
            for (j, &c) in u.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let cr = rat(c as i64);
                for (i, entry) in col.iter_mut().enumerate() {
                    *entry = &*entry + &(&self.basis.m[i][j] * &cr);
                }
            }
            cols.push(col);
        }
        let pr = rat(p as i64);
        for j in 0..4 {
            cols.push(std::array::from_fn(|i| &self.basis.m[i][j] * &pr));
        }
        LatticeClass::from_spanning(cols, p)
    }

    /// Does this class's stored representative sit inside `outer`'s (as
    /// exact lattices, not classes)?
    pub fn contained_in(&self, outer: &LatticeClass) -> bool {
        if let Some(inv) = outer.basis.inverse() {
            let t = inv.mul(&self.basis);
            t.min_valuation(self.p).map(|v| v >= 0).unwrap_or(true)
        } else {
            false
        }
    }
}

/// Exponents of the p-adic invariant factors of a nonsingular rational
/// matrix, ascending.
pub fn invariant_factor_exponents(m: &Mat4, p: u32) -> [i64; 4] {
    let mut a = m.m.clone();
    let mut exps = [0i64; 4];
    for k in 0..4 {
        // global minimal-valuation pivot in the remaining block
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..4 {
            for j in k..4 {
                if let Some(v) = val_p(&a[i][j], p) {
                    if best.map(|(bv, _, _)| v < bv).unwrap_or(true) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, pi, pj) = best.expect("matrix is singular");
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        exps[k] = v;
        let pivot = a[k][k].clone();
        // clear the pivot column below
        for i in k + 1..4 {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..4 {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
        // clear the pivot row to the right
        for j in k + 1..4 {
            a[k][j] = Rat::zero();
        }
    }
    exps.sort();
    exps
}

/// A vertex of the building. Special vertices carry one self-dual class;
/// non-special vertices carry the unordered dual pair, canonically keyed by
/// the lexicographically smaller basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Special(LatticeClass),
    NonSpecial {
        rep3: LatticeClass,
        rep1: LatticeClass,
    },
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Special(c) => write!(f, "Special(type {}) {:?}", c.class_type(), c),
            VertexLabel::NonSpecial { rep3, .. } => write!(f, "NonSpecial {:?}", rep3),
        }
    }
}

impl VertexLabel {
    /// Wrap a class as the vertex it labels. Type-1 classes label the same
    /// vertex as their dual, which is the stored type-3 representative.
    pub fn from_class(cls: LatticeClass) -> Result<VertexLabel, GeoError> {
        vertex_from_class(cls)
    }

    pub fn vtype(&self) -> u8 {
        match self {
            VertexLabel::Special(c) => c.class_type(),
            VertexLabel::NonSpecial { .. } => 3,
        }
    }

    pub fn is_special(&self) -> bool {
        matches!(self, VertexLabel::Special(_))
    }

    /// Canonical identity key.
    pub fn key(&self) -> &LatticeClass {
        match self {
            VertexLabel::Special(c) => c,
            VertexLabel::NonSpecial { rep3, rep1 } => {
                if rep3.basis() <= rep1.basis() {
                    rep3
                } else {
                    rep1
                }
            }
        }
    }

    pub fn class(&self) -> &LatticeClass {
        match self {
            VertexLabel::Special(c) => c,
            VertexLabel::NonSpecial { rep3, .. } => rep3,
        }
    }

    /// Apply a group element.
    pub fn translate(&self, g: &Mat4) -> VertexLabel {
        match self {
            VertexLabel::Special(c) => VertexLabel::Special(c.translate(g)),
            VertexLabel::NonSpecial { rep3, .. } => {
                let moved = rep3.translate(g);
                // translation can flip which member of the pair has type 3
                vertex_from_class_unchecked(moved)
            }
        }
    }
}

/// Wrap a class known to be a vertex (for example a sublattice preimage
/// under a special vertex), skipping the primitive-cover existence check.
fn vertex_from_class_unchecked(cls: LatticeClass) -> VertexLabel {
    if cls.is_self_dual() {
        return VertexLabel::Special(cls);
    }
    match cls.class_type() {
        3 => {
            let dual = cls.dual();
            VertexLabel::NonSpecial {
                rep3: cls,
                rep1: dual,
            }
        }
        1 => {
            let dual = cls.dual();
            VertexLabel::NonSpecial {
                rep3: dual,
                rep1: cls,
            }
        }
        t => panic!("class of type {t} is not a vertex"),
    }
}

fn vertex_from_class(cls: LatticeClass) -> Result<VertexLabel, GeoError> {
    if cls.is_self_dual() {
        debug_assert!(matches!(cls.class_type(), 0 | 2));
        return Ok(VertexLabel::Special(cls));
    }
    match cls.class_type() {
        3 => {
            let dual = cls.dual();
            if !has_primitive_cover(&cls) {
                return Err(GeoError::NotAVertex(format!("{cls:?}")));
            }
            Ok(VertexLabel::NonSpecial {
                rep3: cls,
                rep1: dual,
            })
        }
        1 => {
            let dual = cls.dual(); // type 3 partner labels the same vertex
            if !has_primitive_cover(&dual) {
                return Err(GeoError::NotAVertex(format!("{cls:?}")));
            }
            Ok(VertexLabel::NonSpecial {
                rep3: dual,
                rep1: cls,
            })
        }
        _ => Err(GeoError::NotAVertex(format!("{cls:?}"))),
    }
}

/// Does a type-3 class lie below some primitive lattice? Candidate covers
/// are the index-p overlattices read off from lines in `dual/p*dual`.
fn has_primitive_cover(cls: &LatticeClass) -> bool {
    let dual = cls.dual();
    subspaces(cls.p, 1)
        .iter()
        .any(|line| dual.sublattice(line).is_primitive())
}

/// Vertex type of a lattice class, with type-1 and non-vertex classes
/// rejected.
pub fn vertex_type(cls: &LatticeClass) -> Result<u8, GeoError> {
    if cls.is_self_dual() {
        return Ok(cls.class_type());
    }
    match cls.class_type() {
        3 if has_primitive_cover(cls) => Ok(3),
        1 => Err(GeoError::NotAVertex(
            "type-1 class labels a vertex only through its dual".into(),
        )),
        _ => Err(GeoError::NotAVertex(format!("{cls:?}"))),
    }
}

/// The apartment label `[a1,a2,b1,b2]`: the class of
/// `O p^a1 e1 + O p^a2 e2 + O p^b1 f1 + O p^b2 f2`.
pub fn figure1_label(a1: i64, a2: i64, b1: i64, b2: i64, p: u32) -> Result<VertexLabel, GeoError> {
    let cls = LatticeClass::from_basis(
        &Mat4::diag([pow_p(p, a1), pow_p(p, a2), pow_p(p, b1), pow_p(p, b2)]),
        p,
    );
    if cls.class_type() == 1 {
        return Err(GeoError::NotAVertex(format!(
            "[{a1},{a2},{b1},{b2}] has type 1; the vertex is labelled by its dual"
        )));
    }
    vertex_from_class(cls)
}

/// All subspaces of `F_p^4` of the given dimension, as reduced row-echelon
/// bases in a fixed deterministic order.
pub fn subspaces(p: u32, dim: usize) -> Vec<Vec<[u32; 4]>> {
    assert!((1..=3).contains(&dim));
    let mut out = Vec::new();
    let mut pivot_sets = Vec::new();
    combinations(4, dim, &mut Vec::new(), &mut pivot_sets);
    for pivots in pivot_sets {
        // free positions: (row i, col j) with j > pivots[i] and j not a pivot
        let mut free = Vec::new();
        for (i, &pi) in pivots.iter().enumerate() {
            for j in (pi + 1)..4 {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let total = (p as u64).pow(free.len() as u32);
        for mut code in 0..total {
            let mut basis = vec![[0u32; 4]; dim];
            for (i, &pi) in pivots.iter().enumerate() {
                basis[i][pi] = 1;
            }
            for &(i, j) in &free {
                basis[i][j] = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(basis);
        }
    }
    out
}

fn combinations(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().map(|&x| x + 1).unwrap_or(0);
    for x in start..n {
        cur.push(x);
        combinations(n, k, cur, out);
        cur.pop();
    }
}

fn form_pairing(form: &[[u32; 4]; 4], a: &[u32; 4], b: &[u32; 4], p: u32) -> u32 {
    let mut acc: u64 = 0;
    for i in 0..4 {
        for j in 0..4 {
            acc += a[i] as u64 * form[i][j] as u64 * b[j] as u64;
        }
    }
    (acc % p as u64) as u32
}

/// Edge classification: between two special vertices (opposite special
/// types) or between a special and a non-special vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum EdgeType {
    Type1 = 1,
    Type2 = 2,
}

/// Full adjacency star of a vertex.
pub fn neighbors(v: &VertexLabel) -> Vec<(VertexLabel, EdgeType)> {
    match v {
        VertexLabel::Special(cls) => {
            let p = cls.p();
            let form = cls.residual_form();
            let mut out = Vec::new();
            // lines: non-special neighbors through type-2 edges
            for line in subspaces(p, 1) {
                let sub = cls.sublattice(&line);
                out.push((vertex_from_class_unchecked(sub), EdgeType::Type2));
            }
            // isotropic planes: the other kind of special vertex, type-1 edges
            for plane in subspaces(p, 2) {
                if form_pairing(&form, &plane[0], &plane[1], p) != 0 {
                    continue;
                }
                let sub = cls.sublattice(&plane);
                out.push((VertexLabel::Special(sub), EdgeType::Type1));
            }
            out
        }
        VertexLabel::NonSpecial { rep3, rep1 } => {
            let p = rep3.p();
            // align the duals: rep3 inside a scaled copy of rep1 of index p^2
            let between = aligned_dual(rep3, rep1);
            let mut out = Vec::new();
            // type-2 special neighbors: the p+1 lattices between rep3 and rep1
            let img = between.basis.inverse().unwrap().mul(rep3.basis());
            let plane = mod_p_column_span(&img, p);
            debug_assert_eq!(plane.len(), 2);
            for w in subspaces(p, 3) {
                if !span_contains(&w, &plane, p) {
                    continue;
                }
                let m = between.sublattice(&w);
                out.push((VertexLabel::Special(m), EdgeType::Type2));
            }
            // primitive neighbors: lines in rep1 / p*rep1 with primitive preimage
            for line in subspaces(p, 1) {
                let m = between.sublattice(&line);
                if m.is_primitive() {
                    out.push((VertexLabel::Special(m), EdgeType::Type2));
                }
            }
            out
        }
    }
}

/// Rescale the type-1 partner so the type-3 representative sits inside it
/// with index `p^2`.
fn aligned_dual(rep3: &LatticeClass, rep1: &LatticeClass) -> LatticeClass {
    let p = rep3.p();
    let d3 = val_p(&rep3.basis().det(), p).unwrap();
    let d1 = val_p(&rep1.basis().det(), p).unwrap();
    let k = (d3 - 2 - d1) / 4;
    debug_assert_eq!(d1 + 4 * k, d3 - 2);
    let scaled = LatticeClass {
        basis: rep1.basis().scale(&pow_p(p, k)),
        p,
    };
    debug_assert!(rep3.contained_in(&scaled));
    scaled
}

/// Column span of `m` modulo p, as a reduced basis.
fn mod_p_column_span(m: &Mat4, p: u32) -> Vec<[u32; 4]> {
    let mut rows: Vec<[u32; 4]> = Vec::new();
    for j in 0..4 {
        let mut col = [0u32; 4];
        for (i, slot) in col.iter_mut().enumerate() {
            let r = residue_mod(&m.m[i][j], p, 1);
            *slot = r
                .to_integer()
                .mod_floor(&BigInt::from(p))
                .try_into()
                .unwrap();
        }
        rows.push(col);
    }
    echelon(rows, p)
}

fn echelon(mut rows: Vec<[u32; 4]>, p: u32) -> Vec<[u32; 4]> {
    let mut out: Vec<[u32; 4]> = Vec::new();
    for pivot_col in 0..4 {
        if let Some(idx) = rows.iter().position(|r| r[pivot_col] % p != 0) {
            let mut piv = rows.swap_remove(idx);
            let inv = mod_inverse(&BigInt::from(piv[pivot_col]), &BigInt::from(p)).unwrap();
            let inv: u32 = inv.try_into().unwrap();
            for x in piv.iter_mut() {
                *x = (*x * inv) % p;
            }
            let reduce = |r: &mut [u32; 4]| {
                let c = r[pivot_col] % p;
                if c != 0 {
                    for k in 0..4 {
                        r[k] = (r[k] + (p - c) * piv[k]) % p;
                    }
                }
            };
            rows.iter_mut().for_each(reduce);
            out.iter_mut().for_each(reduce);
            out.push(piv);
        }
    }
    out
}

fn span_contains(outer: &[[u32; 4]], inner: &[[u32; 4]], p: u32) -> bool {
    let rows: Vec<[u32; 4]> = outer.to_vec();
    let base = echelon(rows.clone(), p).len();
    let mut all = rows;
    all.extend(inner.iter().copied());
    echelon(all, p).len() == base
}

/// A chamber, stored with its vertices ordered by type: primitive, special
/// of type 2, non-special.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber {
    pub primitive: VertexLabel,
    pub special2: VertexLabel,
    pub nonspecial: VertexLabel,
}

impl fmt::Debug for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chamber[{:?}, {:?}, {:?}]",
            self.primitive, self.special2, self.nonspecial
        )
    }
}

impl Chamber {
    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.primitive == *v || self.special2 == *v || self.nonspecial == *v
    }

    pub fn vertices(&self) -> [&VertexLabel; 3] {
        [&self.primitive, &self.special2, &self.nonspecial]
    }

    /// The unordered vertex-pair keys of the three edges.
    pub fn edge_keys(&self) -> [(LatticeClass, LatticeClass); 3] {
        let mk = |a: &VertexLabel, b: &VertexLabel| {
            let (x, y) = (a.key().clone(), b.key().clone());
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        };
        [
            mk(&self.primitive, &self.special2),
            mk(&self.primitive, &self.nonspecial),
            mk(&self.special2, &self.nonspecial),
        ]
    }

    pub fn translate(&self, g: &Mat4) -> Chamber {
        let vs = [
            self.primitive.translate(g),
            self.special2.translate(g),
            self.nonspecial.translate(g),
        ];
        Chamber::from_vertices(vs).expect("translate of a chamber is a chamber")
    }

    pub fn from_vertices(vs: [VertexLabel; 3]) -> Option<Chamber> {
        let mut primitive = None;
        let mut special2 = None;
        let mut nonspecial = None;
        for v in vs {
            match v.vtype() {
                0 => primitive = Some(v),
                2 => special2 = Some(v),
                3 => nonspecial = Some(v),
                _ => return None,
            }
        }
        Some(Chamber {
            primitive: primitive?,
            special2: special2?,
            nonspecial: nonspecial?,
        })
    }
}

/// The fundamental chamber: the standard lattice, its index-p^2 sublattice of
/// type 2, and the type-3 class between them.
pub fn fundamental_chamber(p: u32) -> Chamber {
    let pr = p as i64;
    let l0 = VertexLabel::Special(LatticeClass::standard(p));
    let l2 = VertexLabel::Special(LatticeClass::from_basis(
        &Mat4::diag([rat(1), rat(1), rat(pr), rat(pr)]),
        p,
    ));
    let l3 = vertex_from_class_unchecked(LatticeClass::from_basis(
        &Mat4::diag([rat(1), rat(pr), rat(pr), rat(pr)]),
        p,
    ));
    Chamber {
        primitive: l0,
        special2: l2,
        nonspecial: l3,
    }
}

/// All chambers with a given primitive corner: flags line-in-Lagrangian of
/// the residual symplectic space.
pub fn chambers_at_primitive(v: &VertexLabel) -> Vec<Chamber> {
    let VertexLabel::Special(cls) = v else {
        panic!("chambers_at_primitive needs a primitive vertex")
    };
    assert!(cls.is_primitive());
    let p = cls.p();
    let form = cls.residual_form();
    let mut out = Vec::new();
    for plane in subspaces(p, 2) {
        if form_pairing(&form, &plane[0], &plane[1], p) != 0 {
            continue;
        }
        let lagrangian = cls.sublattice(&plane);
        for line in lines_in_plane(&plane, p) {
            let sub = cls.sublattice(&[line]);
            let nonspecial = vertex_from_class_unchecked(sub);
            out.push(Chamber {
                primitive: v.clone(),
                special2: VertexLabel::Special(lagrangian.clone()),
                nonspecial,
            });
        }
    }
    out
}

/// The `p+1` lines inside a plane given by two basis vectors.
fn lines_in_plane(plane: &[[u32; 4]], p: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    let combine = |c1: u32, c2: u32| {
        let mut v = [0u32; 4];
        for i in 0..4 {
            v[i] = (c1 * plane[0][i] + c2 * plane[1][i]) % p;
        }
        v
    };
    out.push(combine(1, 0));
    for c in 0..p {
        out.push(combine(c, 1));
    }
    out
}

/// Representative of `inner`'s class scaled to sit between `p * outer` and
/// `outer` with the stated colength (valuation of the index).
fn align_inside(inner: &LatticeClass, outer: &LatticeClass, colength: i64) -> LatticeClass {
    let p = inner.p();
    let d_in = val_p(&inner.basis().det(), p).unwrap();
    let d_out = val_p(&outer.basis().det(), p).unwrap();
    let k = (d_out + colength - d_in) / 4;
    debug_assert_eq!(d_in + 4 * k, d_out + colength);
    let scaled = LatticeClass {
        basis: inner.basis().scale(&pow_p(p, k)),
        p,
    };
    debug_assert!(scaled.contained_in(outer));
    scaled
}

/// The mod-p subspace of `outer`'s residual space spanned by `inner`.
fn subspace_of(inner: &LatticeClass, outer: &LatticeClass, colength: i64) -> Vec<[u32; 4]> {
    let aligned = align_inside(inner, outer, colength);
    let img = outer.basis().inverse().unwrap().mul(aligned.basis());
    mod_p_column_span(&img, inner.p())
}

/// All chambers containing an arbitrary vertex, built directly from the
/// vertex's residual subspace inside each adjacent primitive corner.
pub fn chambers_at(v: &VertexLabel) -> Vec<Chamber> {
    match v.vtype() {
        0 => chambers_at_primitive(v),
        2 => {
            let VertexLabel::Special(cls) = v else {
                unreachable!()
            };
            let p = cls.p();
            let mut out = Vec::new();
            for (w, t) in neighbors(v) {
                if t != EdgeType::Type1 {
                    continue;
                }
                let VertexLabel::Special(pcls) = &w else {
                    unreachable!()
                };
                let plane = subspace_of(cls, pcls, 2);
                debug_assert_eq!(plane.len(), 2);
                for line in lines_in_plane(&plane, p) {
                    let nonspecial = vertex_from_class_unchecked(pcls.sublattice(&[line]));
                    out.push(Chamber {
                        primitive: w.clone(),
                        special2: v.clone(),
                        nonspecial,
                    });
                }
            }
            out.sort();
            out.dedup();
            out
        }
        _ => {
            let VertexLabel::NonSpecial { rep3, .. } = v else {
                unreachable!()
            };
            let p = rep3.p();
            let mut out = Vec::new();
            for (w, _) in neighbors(v) {
                if w.vtype() != 0 {
                    continue;
                }
                let VertexLabel::Special(pcls) = &w else {
                    unreachable!()
                };
                let line = subspace_of(rep3, pcls, 3);
                debug_assert_eq!(line.len(), 1);
                let form = pcls.residual_form();
                for plane in subspaces(p, 2) {
                    if form_pairing(&form, &plane[0], &plane[1], p) != 0 {
                        continue;
                    }
                    if !span_contains(&plane, &line, p) {
                        continue;
                    }
                    out.push(Chamber {
                        primitive: w.clone(),
                        special2: VertexLabel::Special(pcls.sublattice(&plane)),
                        nonspecial: v.clone(),
                    });
                }
            }
            out.sort();
            out.dedup();
            out
        }
    }
}

/// Memoizing wrapper around [`chambers_at`] keyed by the vertex identity.
#[derive(Default)]
pub struct ChamberCache {
    map: HashMap<LatticeClass, std::rc::Rc<Vec<Chamber>>>,
}

impl ChamberCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, v: &VertexLabel) -> std::rc::Rc<Vec<Chamber>> {
        if let Some(c) = self.map.get(v.key()) {
            return c.clone();
        }
        let computed = std::rc::Rc::new(chambers_at(v));
        self.map.insert(v.key().clone(), computed.clone());
        computed
    }

    /// Two vertices are close when two edge-sharing chambers separate them:
    /// `a` in one, `b` in the other, neither in both.
    pub fn close(&mut self, a: &VertexLabel, b: &VertexLabel) -> bool {
        if a == b {
            return false;
        }
        let ca = self.get(a);
        let cb = self.get(b);
        let mut edge_index: HashMap<(LatticeClass, LatticeClass), Vec<usize>> = HashMap::new();
        for (i, ch) in cb.iter().enumerate() {
            for ek in ch.edge_keys() {
                edge_index.entry(ek).or_default().push(i);
            }
        }
        for ch_a in ca.iter() {
            if ch_a.contains(b) {
                continue;
            }
            for ek in ch_a.edge_keys() {
                if let Some(idxs) = edge_index.get(&ek) {
                    for &i in idxs {
                        if !cb[i].contains(a) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// A finite ball around the fundamental chamber.
#[derive(Debug)]
pub struct BuildingBall {
    pub p: u32,
    pub radius: usize,
    pub vertices: Vec<VertexLabel>,
    pub distance: Vec<usize>,
    /// index pairs (i < j) with edge type
    pub edges: Vec<(usize, usize, EdgeType)>,
    /// sorted index triples
    pub chambers: Vec<[usize; 3]>,
    index: HashMap<LatticeClass, usize>,
}

impl BuildingBall {
    pub fn vertex_index(&self, v: &VertexLabel) -> Option<usize> {
        self.index.get(v.key()).copied()
    }

    pub fn contains_vertex(&self, v: &VertexLabel) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn contains_edge(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        let (Some(i), Some(j)) = (self.vertex_index(a), self.vertex_index(b)) else {
            return false;
        };
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().any(|&(a, b, _)| (a, b) == (i, j))
    }

    pub fn contains_chamber(&self, c: &Chamber) -> bool {
        let (Some(a), Some(b), Some(cc)) = (
            self.vertex_index(&c.primitive),
            self.vertex_index(&c.special2),
            self.vertex_index(&c.nonspecial),
        ) else {
            return false;
        };
        let mut t = [a, b, cc];
        t.sort();
        self.chambers.binary_search(&t).is_ok()
    }

    /// Edges whose endpoints both lie strictly inside the ball, with the
    /// number of ball chambers containing each.
    pub fn interior_edge_chamber_counts(&self) -> Vec<((usize, usize), usize)> {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(i, j, _) in &self.edges {
            if self.distance[i] < self.radius && self.distance[j] < self.radius {
                counts.insert((i, j), 0);
            }
        }
        for t in &self.chambers {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if let Some(c) = counts.get_mut(&(a, b)) {
                    *c += 1;
                }
            }
        }
        counts.into_iter().collect()
    }
}

/// Breadth-first closure of the fundamental chamber under vertex adjacency,
/// together with every edge and chamber spanned by the collected vertices.
pub fn ball(radius: usize, p: u32) -> Result<BuildingBall, GeoError> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(GeoError::UnsupportedPrime(p));
    }
    if radius > MAX_RADIUS || (radius == MAX_RADIUS && p == 5) {
        // the radius-2 ball at p = 5 is the largest supported object
        return Err(GeoError::RadiusCap(radius));
    }
    let fc = fundamental_chamber(p);
    let mut vertices: Vec<VertexLabel> = Vec::new();
    let mut distance: Vec<usize> = Vec::new();
    let mut index: HashMap<LatticeClass, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut star: Vec<Option<Vec<(VertexLabel, EdgeType)>>> = Vec::new();

    for v in [
        fc.primitive.clone(),
        fc.special2.clone(),
        fc.nonspecial.clone(),
    ] {
        let idx = vertices.len();
        index.insert(v.key().clone(), idx);
        vertices.push(v);
        distance.push(0);
        star.push(None);
        queue.push_back(idx);
    }

    while let Some(i) = queue.pop_front() {
        let d = distance[i];
        let nbrs = neighbors(&vertices[i]);
        if d < radius {
            for (w, _) in &nbrs {
                if !index.contains_key(w.key()) {
                    let idx = vertices.len();
                    index.insert(w.key().clone(), idx);
                    vertices.push(w.clone());
                    distance.push(d + 1);
                    star.push(None);
                    queue.push_back(idx);
                }
            }
        }
        star[i] = Some(nbrs);
    }

    // edges among ball vertices
    let mut edge_set: BTreeSet<(usize, usize, EdgeType)> = BTreeSet::new();
    for (i, nbrs) in star.iter().enumerate() {
        for (w, et) in nbrs.as_ref().unwrap() {
            if let Some(&j) = index.get(w.key()) {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                edge_set.insert((a, b, *et));
            }
        }
    }

    // chambers: flags at each primitive vertex, kept when fully inside
    let mut chamber_set: BTreeSet<[usize; 3]> = BTreeSet::new();
    for (i, v) in vertices.iter().enumerate() {
        if v.vtype() != 0 {
            continue;
        }
        for ch in chambers_at_primitive(v) {
            let (Some(b), Some(c)) = (
                index.get(ch.special2.key()).copied(),
                index.get(ch.nonspecial.key()).copied(),
            ) else {
                continue;
            };
            let mut t = [i, b, c];
            t.sort();
            chamber_set.insert(t);
        }
    }

    Ok(BuildingBall {
        p,
        radius,
        vertices,
        distance,
        edges: edge_set.into_iter().collect(),
        chambers: chamber_set.into_iter().collect(),
        index,
    })
}

/// Deterministic JSON export of a ball.
#[derive(Serialize)]
pub struct BallExport {
    pub schema_version: u32,
    pub p: u32,
    pub radius: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub chamber_count: usize,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<(usize, usize, u8)>,
    pub chambers: Vec<[usize; 3]>,
}

#[derive(Serialize)]
pub struct BallVertex {
    pub matrix: Vec<String>,
    pub vtype: u8,
    pub distance: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_matrix: Option<Vec<String>>,
}

impl BuildingBall {
    pub fn export(&self) -> BallExport {
        BallExport {
            schema_version: 1,
            p: self.p,
            radius: self.radius,
            vertex_count: self.vertices.len(),
            edge_count: self.edges.len(),
            chamber_count: self.chambers.len(),
            vertices: self
                .vertices
                .iter()
                .zip(&self.distance)
                .map(|(v, &d)| BallVertex {
                    matrix: v.class().basis().render_entries(),
                    vtype: v.vtype(),
                    distance: d,
                    dual_matrix: match v {
                        VertexLabel::NonSpecial { rep1, .. } => Some(rep1.basis().render_entries()),
                        VertexLabel::Special(_) => None,
                    },
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j, t)| (i, j, t as u8))
                .collect(),
            chambers: self.chambers.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localgroup::tau;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn diag_class(a: [i64; 4], p: u32) -> LatticeClass {
        LatticeClass::from_basis(
            &Mat4::diag([
                pow_p(p, a[0]),
                pow_p(p, a[1]),
                pow_p(p, a[2]),
                pow_p(p, a[3]),
            ]),
            p,
        )
    }

    #[test]
    fn canonical_form_is_homothety_invariant() {
        let p = 2;
        let l = diag_class([0, 1, 1, 1], p);
        let scaled = LatticeClass::from_basis(&l.basis().scale(&rat(4)), p);
        assert_eq!(l, scaled);
        // the same lattice presented by two different spanning bases
        let b = Mat4::from_i64([[2, 2, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 2, 1]]);
        let c1 = LatticeClass::from_basis(&b, p);
        let b2 = Mat4::from_i64([[2, 0, 0, 4], [2, 0, 0, 2], [0, 2, 0, 2], [0, 2, 1, 0]]);
        let _ = b2;
        // column mixes of b by unimodular-at-2 operations
        let mix = Mat4::from_i64([[1, 0, 1, 0], [0, 1, 0, 3], [0, 0, 1, 0], [0, 0, 0, 1]]);
        let c2 = LatticeClass::from_basis(&b.mul(&mix), p);
        assert_eq!(c1, c2);
    }

    #[test]
    fn standard_vertices_have_expected_types() {
        for p in [2u32, 3] {
            assert_eq!(diag_class([0, 0, 0, 0], p).class_type(), 0);
            assert_eq!(diag_class([0, 0, 1, 1], p).class_type(), 2);
            assert_eq!(diag_class([0, 1, 1, 1], p).class_type(), 3);
            assert!(diag_class([0, 0, 0, 0], p).is_primitive());
            assert!(!diag_class([0, 0, 1, 1], p).is_primitive());
            assert!(!diag_class([0, 1, 1, 1], p).is_primitive());
            // special = self-dual
            assert!(diag_class([0, 0, 0, 0], p).is_self_dual());
            assert!(diag_class([0, 0, 1, 1], p).is_self_dual());
            assert!(!diag_class([0, 1, 1, 1], p).is_self_dual());
        }
    }

    #[test]
    fn duality_is_involutive_and_detects_special() {
        let p = 3;
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..30 {
            let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-2..3));
            let cls = diag_class(a, p);
            assert_eq!(cls.dual().dual(), cls);
            let d = (a[0] + a[3]) - (a[1] + a[2]);
            assert_eq!(cls.is_self_dual(), d == 0, "pattern {a:?}");
        }
        // the standard dual pair
        let l3 = diag_class([0, 1, 1, 1], 2);
        let l1 = diag_class([0, 0, 0, 1], 2);
        assert_eq!(l3.dual(), l1);
    }

    #[test]
    fn vertex_type_classification() {
        let p = 2;
        assert_eq!(vertex_type(&diag_class([0, 0, 0, 0], p)).unwrap(), 0);
        assert_eq!(vertex_type(&diag_class([0, 0, 1, 1], p)).unwrap(), 2);
        assert_eq!(vertex_type(&diag_class([0, 1, 1, 1], p)).unwrap(), 3);
        // the type-1 partner labels a vertex only through its dual
        assert!(vertex_type(&diag_class([0, 0, 0, 1], p)).is_err());
        // deep non-vertex classes
        assert!(vertex_type(&diag_class([0, 0, 3, 0], p)).is_err());
        assert!(vertex_type(&diag_class([0, 2, 1, 1], p)).is_err());
    }

    #[test]
    fn figure1_labels() {
        let p = 2;
        assert_eq!(figure1_label(0, 0, 0, 0, p).unwrap().vtype(), 0);
        assert_eq!(figure1_label(0, 1, 1, 1, p).unwrap().vtype(), 3);
        assert_eq!(figure1_label(0, 0, 1, 1, p).unwrap().vtype(), 2);
        assert!(figure1_label(0, 0, 0, 1, p).is_err());
        // special iff a1+b2 = a2+b1
        assert_eq!(figure1_label(1, 0, 1, 0, p).unwrap().vtype(), 2);
        assert!(figure1_label(0, 3, 3, 3, p).is_err());
    }

    #[test]
    fn type_additivity_under_translation() {
        let p = 3;
        let mut rng = StdRng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 25 {
            let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1..3));
            let cls = diag_class(a, p);
            let g = Mat4::from_fn(|i, j| rat(rng.gen_range(-4i64..5) + 3 * ((i == j) as i64)));
            if g.det().is_zero() {
                continue;
            }
            let dv = val_p(&g.det(), p).unwrap();
            let moved = cls.translate(&g);
            assert_eq!(
                moved.class_type() as i64,
                (cls.class_type() as i64 + dv).rem_euclid(4),
            );
            checked += 1;
        }
    }

    #[test]
    fn tau_action_on_fundamental_vertices() {
        for p in [2u32, 3] {
            let t = tau(p);
            let l0 = diag_class([0, 0, 0, 0], p);
            let l2 = diag_class([0, 0, 1, 1], p);
            assert_eq!(l0.translate(&t.matrix), l2);
            assert_eq!(l2.translate(&t.matrix), l0);
            // tau fixes the non-special vertex as an unordered dual pair
            let v3 = vertex_from_class(diag_class([0, 1, 1, 1], p)).unwrap();
            let moved = v3.translate(&t.matrix);
            assert_eq!(moved, v3);
        }
    }

    #[test]
    fn neighbor_counts_match_global_degrees() {
        for p in [2u32, 3] {
            let q = p as usize;
            let expect_special = q * q * q + q * q + q + 1;
            let fc = fundamental_chamber(p);
            for v in [&fc.primitive, &fc.special2] {
                let nb = neighbors(v);
                let t1 = nb.iter().filter(|(_, t)| *t == EdgeType::Type1).count();
                let t2 = nb.iter().filter(|(_, t)| *t == EdgeType::Type2).count();
                assert_eq!(t1, expect_special, "type-1 edges at special vertex, p={p}");
                assert_eq!(t2, expect_special, "type-2 edges at special vertex, p={p}");
            }
            let nb = neighbors(&fc.nonspecial);
            assert_eq!(nb.len(), 2 * (q + 1), "non-special degree, p={p}");
            let prim = nb.iter().filter(|(w, _)| w.vtype() == 0).count();
            let sp2 = nb.iter().filter(|(w, _)| w.vtype() == 2).count();
            assert_eq!(prim, q + 1);
            assert_eq!(sp2, q + 1);
            assert!(nb.iter().all(|(_, t)| *t == EdgeType::Type2));
        }
    }

    #[test]
    fn no_two_adjacent_vertices_share_a_type() {
        let p = 2;
        let fc = fundamental_chamber(p);
        for v in [&fc.primitive, &fc.special2, &fc.nonspecial] {
            for (w, _) in neighbors(v) {
                assert_ne!(v.vtype(), w.vtype());
            }
        }
    }

    #[test]
    fn chamber_flag_count_matches_brute_force() {
        // brute-force oracle over F_2^4: count pairs (line, isotropic plane)
        // with the line inside the plane, using raw bit vectors
        let dot = |a: u32, b: u32| -> u32 {
            // standard symplectic pairing: <e1,f2> = <e2,f1> = 1
            let pairs = [(0u32, 3u32), (1, 2)];
            let mut acc = 0;
            for (i, j) in pairs {
                acc ^= ((a >> i) & 1) * ((b >> j) & 1);
                acc ^= ((a >> j) & 1) * ((b >> i) & 1);
            }
            acc & 1
        };
        let mut flags = 0usize;
        for v1 in 1u32..16 {
            for v2 in (v1 + 1)..16 {
                let v3 = v1 ^ v2;
                if v3 < v2 {
                    continue; // plane {v1,v2,v3} listed once, by its two smallest
                }
                if dot(v1, v2) != 0 {
                    continue;
                }
                flags += 3; // three lines inside each isotropic plane over F_2
            }
        }
        assert_eq!(flags, 45, "oracle flag count over F_2^4");
        let fc = fundamental_chamber(2);
        assert_eq!(chambers_at_primitive(&fc.primitive).len(), 45);
    }

    #[test]
    fn radius_zero_ball_is_the_fundamental_chamber() {
        let b = ball(0, 2).unwrap();
        assert_eq!(b.vertices.len(), 3);
        assert_eq!(b.edges.len(), 3);
        assert_eq!(b.chambers.len(), 1);
    }

    #[test]
    fn radius_one_ball_chamber_regularity_p2() {
        let b = ball(1, 2).unwrap();
        let counts = b.interior_edge_chamber_counts();
        assert!(!counts.is_empty());
        for ((i, j), c) in counts {
            assert_eq!(c, 3, "edge {i}-{j} lies in q+1 = 3 chambers");
        }
    }

    #[test]
    fn chamber_stars_have_regular_sizes() {
        let p = 2;
        let q = p as usize;
        let fc = fundamental_chamber(p);
        // around a primitive vertex: flags of the residual symplectic space
        assert_eq!(
            chambers_at(&fc.primitive).len(),
            (q + 1) * (q + 1) * (q * q + 1)
        );
        // the type-rotating symmetry gives the same count at the other
        // special vertex
        assert_eq!(
            chambers_at(&fc.special2).len(),
            (q + 1) * (q + 1) * (q * q + 1)
        );
        // around a non-special vertex
        assert_eq!(chambers_at(&fc.nonspecial).len(), (q + 1) * (q + 1));
    }

    #[test]
    fn radius_two_ball_regression_p2() {
        // machine-derived sizes, frozen against regressions, plus chamber
        // regularity on the full interior (distance <= 1 endpoints)
        let b = ball(2, 2).unwrap();
        assert_eq!(b.vertices.len(), 641);
        assert_eq!(b.edges.len(), 1963);
        assert_eq!(b.chambers.len(), 1323);
        let counts = b.interior_edge_chamber_counts();
        assert!(counts.len() > 100, "interior now reaches the first sphere");
        for ((i, j), c) in counts {
            assert_eq!(c, 3, "edge {i}-{j} lies in q+1 chambers");
        }
    }

    #[test]
    fn ball_export_is_deterministic() {
        let a = serde_json::to_string(&ball(1, 2).unwrap().export()).unwrap();
        let b = serde_json::to_string(&ball(1, 2).unwrap().export()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invariant_factors_of_standard_elements() {
        let p = 2;
        assert_eq!(
            invariant_factor_exponents(&Mat4::diag([rat(1), rat(1), rat(2), rat(2)]), p),
            [0, 0, 1, 1]
        );
        assert_eq!(
            invariant_factor_exponents(&Mat4::diag([rat(1), rat(2), rat(2), rat(4)]), p),
            [0, 1, 1, 2]
        );
        let t = crate::localgroup::t_elem(p);
        assert_eq!(invariant_factor_exponents(&t.matrix, p), [0, 0, 1, 1]);
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        // right multiplication by any p-unimodular matrix fixes the class
        let p = 3;
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..30 {
            let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1..3));
            let cls = diag_class(a, p);
            // build a unimodular mix: integral, determinant a p-unit
            let mut u = Mat4::identity();
            for _ in 0..4 {
                let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
                if i != j {
                    let mut shear = Mat4::identity();
                    shear.m[i][j] = rat(rng.gen_range(-3..4));
                    u = u.mul(&shear);
                }
                // unit column scaling (prime to p)
                let mut scale = Mat4::identity();
                let d = rng.gen_range(0..4);
                scale.m[d][d] = rat([1, -1, 2, -2][rng.gen_range(0..4)]);
                u = u.mul(&scale);
            }
            assert_eq!(val_p(&u.det(), p), Some(0));
            let mixed = LatticeClass::from_basis(&cls.basis().mul(&u), p);
            assert_eq!(mixed, cls, "pattern {a:?}");
        }
    }

    #[test]
    fn duality_commutes_with_translation() {
        let p = 2;
        let mut rng = rand::rngs::StdRng::seed_from_u64(19);
        for _ in 0..15 {
            let k = crate::testutil::random_k_element(&mut rng, p);
            for (base, special) in [
                (diag_class([0, 0, 0, 0], p), true),
                (diag_class([0, 0, 1, 1], p), true),
                (diag_class([0, 1, 1, 1], p), false),
            ] {
                let moved = base.translate(&k.matrix);
                assert_eq!(moved.dual().dual(), moved);
                assert_eq!(moved.is_self_dual(), special);
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric() {
        let p = 2;
        let fc = fundamental_chamber(p);
        for v in [&fc.primitive, &fc.special2, &fc.nonspecial] {
            for (w, t) in neighbors(v) {
                let back = neighbors(&w);
                let found = back.iter().find(|(x, _)| x == v);
                assert!(found.is_some(), "neighbor relation is symmetric");
                assert_eq!(found.unwrap().1, t, "edge types agree in both directions");
            }
        }
    }

    #[test]
    fn close_relation_on_the_fundamental_apartment() {
        let p = 2;
        let mut cache = ChamberCache::new();
        let l0 = figure1_label(0, 0, 0, 0, p).unwrap();
        // chamber separation only relates vertices of the same type: a 0-2
        // adjacent pair is never close
        let l2 = figure1_label(0, 0, 1, 1, p).unwrap();
        assert!(!cache.close(&l0, &l2));
        // diagonal-direction primitive vertex at distance two: close
        let diag2 = figure1_label(1, 0, 0, -1, p).unwrap();
        assert_eq!(diag2.vtype(), 0);
        assert!(cache.close(&l0, &diag2));
        // two steps along the straight type-1 line: not close
        let far = figure1_label(0, 0, 2, 2, p).unwrap();
        assert_eq!(far.vtype(), 0);
        assert!(!cache.close(&l0, &far));
        // a vertex is never close to itself
        assert!(!cache.close(&l0, &l0));
    }
}

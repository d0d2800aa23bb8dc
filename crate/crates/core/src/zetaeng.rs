//! The zeta machinery: exponential-trace cycle series against determinant
//! closed forms, the two-sided identity on user-supplied finite-complex
//! data, and the Ramanujan classification of operator spectra.

use std::fmt;

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactring::{
    parse_rat, pow_p, rat, LaurentPoly, Mat, PowerSeries, Rat, RingMatrix, UPoly,
};

pub const MAX_TRUNCATION: usize = 24;

#[derive(Debug)]
pub enum ZetaError {
    BadInput(String),
    Series(String),
}

impl fmt::Display for ZetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaError::BadInput(m) => write!(f, "invalid complex data: {m}"),
            ZetaError::Series(m) => write!(f, "series computation failed: {m}"),
        }
    }
}

impl std::error::Error for ZetaError {}

/// Vertex, edge and chamber counts of a finite quotient complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexCounts {
    pub n_p: u64,
    pub n_s: u64,
    pub n_ns: u64,
    pub n1_type1_directed: u64,
    pub n2_type2: u64,
    pub n_chambers_directed: u64,
}

/// User-supplied description of a finite quotient: counts plus the five
/// nonnegative integer operator matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexData {
    pub q: u32,
    pub counts: ComplexCounts,
    pub matrices: ComplexMatrices,
    /// the standing assumption on determinant valuations of the lattice
    pub gamma_det_in_4z: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexMatrices {
    pub lp1: Vec<Vec<u64>>,
    pub lp2: Vec<Vec<u64>>,
    pub li: Vec<Vec<u64>>,
    pub a1: Vec<Vec<u64>>,
    pub a2: Vec<Vec<u64>>,
}

fn check_square(name: &str, m: &[Vec<u64>], size: u64) -> Result<(), ZetaError> {
    if m.len() as u64 != size || m.iter().any(|r| r.len() as u64 != size) {
        return Err(ZetaError::BadInput(format!(
            "{name} must be square of size {size}, got {}x{:?}",
            m.len(),
            m.first().map(|r| r.len())
        )));
    }
    Ok(())
}

fn check_row_sums(name: &str, m: &[Vec<u64>], expect: u64) -> Result<(), ZetaError> {
    for (i, row) in m.iter().enumerate() {
        let s: u64 = row.iter().sum();
        if s != expect {
            return Err(ZetaError::BadInput(format!(
                "{name} row {i} sums to {s}, expected {expect}"
            )));
        }
    }
    Ok(())
}

impl ComplexData {
    /// Degree and ratio validation: row sums are the operator degrees, the
    /// vertex counts satisfy the parametrization ratios.
    pub fn validate(&self) -> Result<(), ZetaError> {
        let q = self.q as u64;
        let c = &self.counts;
        if c.n_p != c.n_s {
            return Err(ZetaError::BadInput(format!(
                "primitive and type-2 counts differ: {} vs {}",
                c.n_p, c.n_s
            )));
        }
        if c.n_ns != (q * q + 1) * c.n_p {
            return Err(ZetaError::BadInput(format!(
                "non-special count {} is not (q^2+1) times {}",
                c.n_ns, c.n_p
            )));
        }
        let special = c.n_p + c.n_s;
        check_square("LP1", &self.matrices.lp1, c.n1_type1_directed)?;
        check_square("LP2", &self.matrices.lp2, c.n2_type2)?;
        check_square("LI", &self.matrices.li, c.n_chambers_directed)?;
        check_square("A1", &self.matrices.a1, special)?;
        check_square("A2", &self.matrices.a2, special)?;
        check_row_sums("LP1", &self.matrices.lp1, q * q * q)?;
        check_row_sums("LP2", &self.matrices.lp2, q * q * q * q)?;
        check_row_sums("LI", &self.matrices.li, q * q)?;
        check_row_sums("A1", &self.matrices.a1, q * q * q + q * q + q + 1)?;
        check_row_sums(
            "A2",
            &self.matrices.a2,
            q * q * q * q + q * q * q + 2 * q * q + q + 1,
        )?;
        Ok(())
    }

    /// Euler characteristic from the counts (undirected edges and chambers).
    pub fn euler_characteristic(&self) -> Result<i64, ZetaError> {
        let c = &self.counts;
        if !c.n1_type1_directed.is_multiple_of(2) || !c.n_chambers_directed.is_multiple_of(2) {
            return Err(ZetaError::BadInput(
                "directed type-1 edge and chamber counts must be even".into(),
            ));
        }
        let n0 = (c.n_p + c.n_s + c.n_ns) as i64;
        let n_edges = (c.n1_type1_directed / 2 + c.n2_type2) as i64;
        let n_chambers = (c.n_chambers_directed / 2) as i64;
        Ok(n0 - n_edges + n_chambers)
    }
}

fn int_matrix(m: &[Vec<u64>]) -> RingMatrix {
    let n = m.len();
    Mat::from_fn(n, n, |i, j| {
        LaurentPoly::constant(Rat::from_integer(BigInt::from(m[i][j])))
    })
}

/// Trace of the n-th power of a nonnegative integer matrix, exact.
fn trace_powers(m: &[Vec<u64>], up_to: usize) -> Vec<Rat> {
    let n = m.len();
    if n == 0 {
        return vec![Rat::zero(); up_to + 1];
    }
    let base: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut power = base.clone();
    let mut traces = vec![Rat::zero(); up_to + 1];
    for k in 1..=up_to {
        let tr: BigInt = (0..n).map(|i| power[i][i].clone()).sum();
        traces[k] = Rat::from_integer(tr);
        if k == up_to {
            break;
        }
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if power[i][l].is_zero() {
                    continue;
                }
                for (j, cell) in next[i].iter_mut().enumerate() {
                    *cell += &power[i][l] * &base[l][j];
                }
            }
        }
        power = next;
    }
    traces
}

/// `exp( sum_{n=1..N} tr(L^n)/n u^n )`: the generating series of tailless
/// cycle counts attached to a nonnegative integer adjacency matrix.
pub fn cycle_zeta_series(m: &[Vec<u64>], order: usize) -> Result<PowerSeries, ZetaError> {
    if order > MAX_TRUNCATION {
        return Err(ZetaError::BadInput(format!(
            "order {order} exceeds cap {MAX_TRUNCATION}"
        )));
    }
    let traces = trace_powers(m, order);
    let mut coeffs = vec![LaurentPoly::zero(); order + 1];
    for (n, coeff) in coeffs.iter_mut().enumerate().skip(1) {
        *coeff = LaurentPoly::constant(&traces[n] / rat(n as i64));
    }
    PowerSeries::from_coeffs(coeffs)
        .exp()
        .map_err(|e| ZetaError::Series(e.to_string()))
}

/// Same series with every cycle length doubled: `u -> u^2` in the exponent.
pub fn cycle_zeta_series_doubled(m: &[Vec<u64>], order: usize) -> Result<PowerSeries, ZetaError> {
    if order > MAX_TRUNCATION {
        return Err(ZetaError::BadInput(format!(
            "order {order} exceeds cap {MAX_TRUNCATION}"
        )));
    }
    let traces = trace_powers(m, order / 2);
    let mut coeffs = vec![LaurentPoly::zero(); order + 1];
    for n in 1..=(order / 2) {
        coeffs[2 * n] = LaurentPoly::constant(&traces[n] / rat(n as i64));
    }
    PowerSeries::from_coeffs(coeffs)
        .exp()
        .map_err(|e| ZetaError::Series(e.to_string()))
}

/// `det(I - L u)` of a nonnegative integer matrix, as an exact polynomial.
pub fn det_one_minus_u(m: &[Vec<u64>]) -> Result<UPoly, ZetaError> {
    if m.is_empty() {
        return Ok(UPoly::one());
    }
    int_matrix(m)
        .det_one_minus_u()
        .map_err(|e| ZetaError::Series(e.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaReport {
    pub match_order: usize,
    pub lhs_coeffs: Vec<String>,
    pub rhs_coeffs: Vec<String>,
    pub pass: bool,
}

fn series_coeffs(s: &PowerSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.render()).collect()
}

fn compare_series(lhs: &PowerSeries, rhs: &PowerSeries) -> ZetaReport {
    let order = lhs.order().min(rhs.order());
    let mut match_order = order;
    let mut pass = true;
    for k in 0..=order {
        if lhs.coeff(k) != rhs.coeff(k) {
            match_order = k.saturating_sub(1);
            pass = false;
            break;
        }
    }
    ZetaReport {
        match_order,
        lhs_coeffs: series_coeffs(&lhs.truncate(order)),
        rhs_coeffs: series_coeffs(&rhs.truncate(order)),
        pass,
    }
}

/// First closed form: the cycle series of the two edge operators against
/// `1 / (det(I - LP1 u) det(I - LP2 u^2))`, compared to the given order.
pub fn theorem41(data: &ComplexData, order: usize) -> Result<ZetaReport, ZetaError> {
    data.validate()?;
    let z1 = cycle_zeta_series(&data.matrices.lp1, order)?;
    let z2 = cycle_zeta_series_doubled(&data.matrices.lp2, order)?;
    let lhs = &z1 * &z2;

    let d1 = det_one_minus_u(&data.matrices.lp1)?;
    let d2 = det_one_minus_u(&data.matrices.lp2)?.compose_u2();
    let product = d1 * d2;
    let rhs = PowerSeries::from_upoly(&product, order)
        .inverse()
        .map_err(|e| ZetaError::Series(e.to_string()))?;
    Ok(compare_series(&lhs, &rhs))
}

/// `(1 - c u^2)^(+-e)` distributed onto the numerator or denominator.
fn push_power(num: &mut UPoly, den: &mut UPoly, base: UPoly, exponent: i64) {
    let target = if exponent >= 0 { num } else { den };
    for _ in 0..exponent.unsigned_abs() {
        *target = target.clone() * base.clone();
    }
}

/// The degree-four vertex-operator determinant
/// `det(I - A1 u + q A2 u^2 - q^3 A1 u^3 + q^6 I u^4)`.
pub fn vertex_determinant(data: &ComplexData) -> Result<UPoly, ZetaError> {
    let n = data.matrices.a1.len();
    if n == 0 {
        return Ok(UPoly::one());
    }
    let q = rat(data.q as i64);
    let a1 = &data.matrices.a1;
    let a2 = &data.matrices.a2;
    let entry = |i: usize, j: usize| {
        let mut coeffs = vec![LaurentPoly::zero(); 5];
        if i == j {
            coeffs[0] = LaurentPoly::one();
            coeffs[4] = LaurentPoly::constant(pow_p(data.q, 6));
        }
        coeffs[1] = LaurentPoly::constant(-Rat::from_integer(BigInt::from(a1[i][j])));
        coeffs[2] = LaurentPoly::constant(&q * Rat::from_integer(BigInt::from(a2[i][j])));
        coeffs[3] =
            LaurentPoly::constant(-(&q * &q * &q) * Rat::from_integer(BigInt::from(a1[i][j])));
        UPoly::from_coeffs(coeffs)
    };
    let m = Mat::from_fn(n, n, entry);
    m.det().map_err(|e| ZetaError::Series(e.to_string()))
}

/// Second closed form: the topological side against the operator side, as a
/// cross-multiplied polynomial identity expanded back to series for the
/// report. Inputs not asserting the determinant-valuation hypothesis are
/// rejected.
pub fn corollary43(data: &ComplexData, order: usize) -> Result<ZetaReport, ZetaError> {
    data.validate()?;
    if !data.gamma_det_in_4z {
        return Err(ZetaError::BadInput(
            "the identity requires determinant valuations in 4Z (gamma_det_in_4z)".into(),
        ));
    }
    let chi = data.euler_characteristic()?;
    let q2 = (data.q as i64) * (data.q as i64);
    let np = data.counts.n_p as i64;

    // left side: (1-u^2)^chi (1-q^2u^2)^(-(q^2-1)Np) / vertex determinant
    let mut lhs_num = UPoly::one();
    let mut lhs_den = vertex_determinant(data)?;
    let one_minus_u2 = UPoly::one_minus_cu2(&LaurentPoly::one());
    let one_minus_q2u2 = UPoly::one_minus_cu2(&LaurentPoly::constant(rat(q2)));
    push_power(&mut lhs_num, &mut lhs_den, one_minus_u2, chi);
    push_power(&mut lhs_num, &mut lhs_den, one_minus_q2u2, -(q2 - 1) * np);

    // right side: det(I - LI u) / (det(I - LP1 u) det(I - LP2 u^2))
    let rhs_num = det_one_minus_u(&data.matrices.li)?;
    let rhs_den =
        det_one_minus_u(&data.matrices.lp1)? * det_one_minus_u(&data.matrices.lp2)?.compose_u2();

    // exact cross-multiplied comparison, then series for the report
    let cross_ok = lhs_num.clone() * rhs_den.clone() == rhs_num.clone() * lhs_den.clone();
    let lhs = ratio_series(&lhs_num, &lhs_den, order)?;
    let rhs = ratio_series(&rhs_num, &rhs_den, order)?;
    let mut report = compare_series(&lhs, &rhs);
    report.pass = report.pass && cross_ok;
    Ok(report)
}

fn ratio_series(num: &UPoly, den: &UPoly, order: usize) -> Result<PowerSeries, ZetaError> {
    let n = PowerSeries::from_upoly(num, order);
    let d = PowerSeries::from_upoly(den, order)
        .inverse()
        .map_err(|e| ZetaError::Series(e.to_string()))?;
    Ok(&n * &d)
}

// ---------------------------------------------------------------------------
// Ramanujan classification
// ---------------------------------------------------------------------------

/// A zero of one of the determinants: exact (a rational multiple of a
/// half-integral power of q, possibly times an unknown unit-modulus factor)
/// or a numeric complex value.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootSpec {
    Exact {
        /// rational coefficient, as "a/b"
        coeff: String,
        /// the zero has absolute value |coeff| * q^(q_half_power/2)
        q_half_power: i64,
        /// multiplied by an unknown unit-modulus factor (so only the
        /// absolute value is known)
        #[serde(default)]
        unit_modulus: bool,
    },
    Complex {
        re: f64,
        im: f64,
    },
}

/// Which determinant a multiset of zeros belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    VertexQuartic,
    Type1Edge,
    Type2Edge,
    Chamber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootStatus {
    /// matches a zero contributed by the one-dimensional representations
    Trivial,
    /// inside the tempered band for this operator
    Consistent,
    /// exactly on a band endpoint within tolerance (numeric inputs only)
    Boundary,
    Violation,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootReport {
    pub root: String,
    pub abs_description: String,
    pub status: RootStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct OperatorClassification {
    pub operator: OperatorKind,
    pub roots: Vec<RootReport>,
    pub ramanujan_consistent: bool,
}

/// Exact absolute value `r * q^(k/2)` with positive rational `r`.
#[derive(Debug, Clone, PartialEq)]
struct ExactAbs {
    r: Rat,
    half_k: i64,
}

impl ExactAbs {
    /// compare with q^(a/2)
    fn cmp_q_half(&self, q: u32, a: i64) -> std::cmp::Ordering {
        // r * q^(k/2) vs q^(a/2)  <=>  r^2 vs q^(a-k)
        let lhs = &self.r * &self.r;
        let rhs = pow_p(q, a - self.half_k);
        lhs.cmp(&rhs)
    }

    fn equals_q_half(&self, q: u32, a: i64) -> bool {
        self.cmp_q_half(q, a) == std::cmp::Ordering::Equal
    }
}

enum RootValue {
    /// known exact absolute value, with the literal rational value when the
    /// root carries no unit factor
    Exact {
        abs: ExactAbs,
        literal: Option<(Rat, i64)>,
    },
    Numeric {
        re: f64,
        im: f64,
    },
}

fn parse_root(spec: &RootSpec) -> Result<RootValue, ZetaError> {
    match spec {
        RootSpec::Exact {
            coeff,
            q_half_power,
            unit_modulus,
        } => {
            let c = parse_rat(coeff).map_err(ZetaError::BadInput)?;
            if c.is_zero() {
                return Err(ZetaError::BadInput("zero root coefficient".into()));
            }
            let abs = ExactAbs {
                r: c.abs(),
                half_k: *q_half_power,
            };
            let literal = if *unit_modulus {
                None
            } else {
                Some((c.clone(), *q_half_power))
            };
            Ok(RootValue::Exact { abs, literal })
        }
        RootSpec::Complex { re, im } => Ok(RootValue::Numeric { re: *re, im: *im }),
    }
}

/// The zeros contributed by one one-dimensional representation of sign
/// `sigma`, as `(rational value, half-power of q)` pairs of literal values.
/// For the vertex quartic this is a complete quadruple: a zero is trivial
/// only as part of a full one-dimensional block, never in isolation, since
/// infinite-dimensional types can also produce zeros at single such values.
fn trivial_block(op: OperatorKind, sigma: i64) -> Vec<(Rat, i64)> {
    match op {
        OperatorKind::VertexQuartic => [0i64, -2, -4, -6]
            .iter()
            .map(|&k| (rat(sigma), k))
            .collect(),
        OperatorKind::Type1Edge => vec![(rat(sigma), -6)],
        // the type-2 edge eigenvalue of a one-dimensional representation
        // does not depend on the sign: each block contributes one q^-4
        OperatorKind::Type2Edge => vec![(rat(1), -8)],
        OperatorKind::Chamber => vec![(rat(sigma), -4)],
    }
}

fn classify_exact(op: OperatorKind, q: u32, abs: &ExactAbs) -> RootStatus {
    use std::cmp::Ordering::*;
    match op {
        OperatorKind::VertexQuartic => {
            if abs.equals_q_half(q, -3) {
                RootStatus::Consistent
            } else {
                RootStatus::Violation
            }
        }
        OperatorKind::Type1Edge => {
            if abs.equals_q_half(q, -3) || abs.equals_q_half(q, -2) {
                RootStatus::Consistent
            } else {
                RootStatus::Violation
            }
        }
        OperatorKind::Type2Edge => {
            let lo = abs.cmp_q_half(q, -4);
            let hi = abs.cmp_q_half(q, -2);
            if lo == Less || hi == Greater {
                RootStatus::Violation
            } else {
                RootStatus::Consistent
            }
        }
        OperatorKind::Chamber => {
            if abs.equals_q_half(q, 0) {
                return RootStatus::Consistent;
            }
            let lo = abs.cmp_q_half(q, -2);
            let hi = abs.cmp_q_half(q, -1);
            if lo == Less || hi == Greater {
                RootStatus::Violation
            } else {
                RootStatus::Consistent
            }
        }
    }
}

fn classify_numeric(op: OperatorKind, q: u32, re: f64, im: f64, tol: f64) -> RootStatus {
    let qf = q as f64;
    let abs = (re * re + im * im).sqrt();
    let near = |target: f64| (abs - target).abs() <= tol;
    match op {
        OperatorKind::VertexQuartic => {
            if near(qf.powf(-1.5)) {
                RootStatus::Consistent
            } else {
                RootStatus::Violation
            }
        }
        OperatorKind::Type1Edge => {
            if near(qf.powf(-1.5)) || near(qf.powf(-1.0)) {
                RootStatus::Consistent
            } else {
                RootStatus::Violation
            }
        }
        OperatorKind::Type2Edge => {
            let (lo, hi) = (qf.powf(-2.0), qf.powf(-1.0));
            if near(lo) || near(hi) {
                RootStatus::Boundary
            } else if abs > lo && abs < hi {
                RootStatus::Consistent
            } else {
                RootStatus::Violation
            }
        }
        OperatorKind::Chamber => {
            if near(1.0) {
                return RootStatus::Consistent;
            }
            let (lo, hi) = (qf.powf(-1.0), qf.powf(-0.5));
            if near(lo) || near(hi) {
                RootStatus::Boundary
            } else if abs > lo && abs < hi {
                RootStatus::Consistent
            } else {
                RootStatus::Violation
            }
        }
    }
}

fn matches_literal(value: &RootValue, q: u32, target: &(Rat, i64), tol: f64) -> bool {
    match value {
        RootValue::Exact {
            literal: Some((v, half_k)),
            ..
        } => {
            let (tv, tk) = target;
            if (half_k - tk) % 2 != 0 {
                return false;
            }
            v * pow_p(q, (half_k - tk) / 2) == *tv
        }
        RootValue::Exact { literal: None, .. } => false,
        RootValue::Numeric { re, im } => {
            let (tv, tk) = target;
            let tvf: f64 = tv.numer().to_string().parse::<f64>().unwrap()
                / tv.denom().to_string().parse::<f64>().unwrap();
            let target = tvf * (q as f64).powf(*tk as f64 / 2.0);
            im.abs() <= tol && (re - target).abs() <= tol
        }
    }
}

/// Per-operator classification of determinant zeros. Trivial zeros (those
/// contributed by one-dimensional representations) are removed as complete
/// blocks per sign; everything left is held to the tempered bands.
pub fn ramanujan_classify(
    op: OperatorKind,
    q: u32,
    roots: &[RootSpec],
    tol: f64,
) -> Result<OperatorClassification, ZetaError> {
    let values: Vec<RootValue> = roots.iter().map(parse_root).collect::<Result<_, _>>()?;
    let mut status: Vec<Option<RootStatus>> = vec![None; values.len()];
    // peel off complete one-dimensional blocks, each sign repeatedly
    for sigma in [1i64, -1] {
        let block = trivial_block(op, sigma);
        if block.is_empty() {
            continue;
        }
        loop {
            let mut picked: Vec<usize> = Vec::new();
            for target in &block {
                match (0..values.len()).find(|&i| {
                    status[i].is_none()
                        && !picked.contains(&i)
                        && matches_literal(&values[i], q, target, tol)
                }) {
                    Some(i) => picked.push(i),
                    None => break,
                }
            }
            if picked.len() != block.len() {
                break;
            }
            for i in picked {
                status[i] = Some(RootStatus::Trivial);
            }
        }
    }
    let mut reports = Vec::new();
    for (i, value) in values.iter().enumerate() {
        let (band_status, desc, rendered) = match value {
            RootValue::Exact { abs, literal } => {
                let s = classify_exact(op, q, abs);
                let desc = format!("|.| = {} * q^({}/2)", abs.r, abs.half_k);
                let rendered = match literal {
                    Some((v, k)) => format!("{} * q^({}/2)", v, k),
                    None => format!("unit * {} * q^({}/2)", abs.r, abs.half_k),
                };
                (s, desc, rendered)
            }
            RootValue::Numeric { re, im } => {
                let s = classify_numeric(op, q, *re, *im, tol);
                (
                    s,
                    format!("|.| = {:.12}", (re * re + im * im).sqrt()),
                    format!("{re} + {im}i"),
                )
            }
        };
        let status = status[i].unwrap_or(band_status);
        reports.push(RootReport {
            root: rendered,
            abs_description: desc,
            status,
        });
    }
    let ramanujan_consistent = reports.iter().all(|r| r.status != RootStatus::Violation);
    Ok(OperatorClassification {
        operator: op,
        roots: reports,
        ramanujan_consistent,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectraInput {
    pub q: u32,
    #[serde(default)]
    pub tolerance: Option<f64>,
    pub vertex_quartic_zeros: Vec<RootSpec>,
    pub type1_edge_zeros: Vec<RootSpec>,
    pub type2_edge_zeros: Vec<RootSpec>,
    pub chamber_zeros: Vec<RootSpec>,
}

#[derive(Debug, Serialize)]
pub struct RamanujanReport {
    pub schema_version: u32,
    pub q: u32,
    pub operators: Vec<OperatorClassification>,
    pub ramanujan_consistent: bool,
}

pub fn classify_all(input: &SpectraInput, tol: f64) -> Result<RamanujanReport, ZetaError> {
    let ops = [
        (OperatorKind::VertexQuartic, &input.vertex_quartic_zeros),
        (OperatorKind::Type1Edge, &input.type1_edge_zeros),
        (OperatorKind::Type2Edge, &input.type2_edge_zeros),
        (OperatorKind::Chamber, &input.chamber_zeros),
    ];
    let mut operators = Vec::new();
    for (op, roots) in ops {
        operators.push(ramanujan_classify(op, input.q, roots, tol)?);
    }
    let ramanujan_consistent = operators.iter().all(|o| o.ramanujan_consistent);
    Ok(RamanujanReport {
        schema_version: 1,
        q: input.q,
        operators,
        ramanujan_consistent,
    })
}

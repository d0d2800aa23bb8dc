//! Verification of the five explicit coset decompositions behind the
//! adjacency operators: representative generation from exact parameter
//! ranges, pairwise coset distinctness, double-coset membership, and
//! geometric consistency against the lattice-level building.

use serde::Serialize;

use crate::exactring::{pow_p, rat, Rat};
use crate::latticegeo::{
    chambers_at, fundamental_chamber, invariant_factor_exponents, neighbors, Chamber, ChamberCache,
    EdgeType, VertexLabel,
};
use crate::localgroup::{t_elem, GroupElem, Mat4, SubgroupId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OperatorTag {
    A1,
    A2,
    LP1,
    LP2,
    LI,
}

impl OperatorTag {
    pub const ALL: [OperatorTag; 5] = [
        OperatorTag::A1,
        OperatorTag::A2,
        OperatorTag::LP1,
        OperatorTag::LP2,
        OperatorTag::LI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorTag::A1 => "A1",
            OperatorTag::A2 => "A2",
            OperatorTag::LP1 => "LP1",
            OperatorTag::LP2 => "LP2",
            OperatorTag::LI => "LI",
        }
    }

    /// The parahoric whose left cosets the family decomposes.
    pub fn parabolic(self) -> SubgroupId {
        match self {
            OperatorTag::A1 | OperatorTag::A2 => SubgroupId::K,
            OperatorTag::LP1 => SubgroupId::P1,
            OperatorTag::LP2 => SubgroupId::P2,
            OperatorTag::LI => SubgroupId::I,
        }
    }

    /// Closed-form representative count.
    pub fn expected_count(self, p: u32) -> usize {
        let q = p as usize;
        match self {
            OperatorTag::A1 => q * q * q + q * q + q + 1,
            OperatorTag::A2 => q * q * q * q + q * q * q + q * q + q,
            OperatorTag::LP1 => q * q * q,
            OperatorTag::LP2 => q * q * q * q,
            OperatorTag::LI => q * q,
        }
    }
}

/// One verified decomposition: the double-coset core element and the full
/// list of left-coset representatives instantiated at `p`.
pub struct CosetFamily {
    pub operator: OperatorTag,
    pub parabolic: SubgroupId,
    pub core: GroupElem,
    pub representatives: Vec<GroupElem>,
    pub p: u32,
}

fn ge(matrix: Mat4, p: u32) -> GroupElem {
    GroupElem::new(matrix, p).expect("representative is a symplectic similitude")
}

/// Instantiate every representative matrix with parameters running over the
/// stated residue ranges, with units lifted to `1..p` and the square-divided
/// entry computed as an exact rational.
pub fn generate_family(op: OperatorTag, p: u32) -> CosetFamily {
    let pr = rat(p as i64);
    let p2 = &pr * &pr;
    let range = |n: u32| (0..n as i64).map(rat).collect::<Vec<_>>();
    let res = range(p);
    let res2 = range(p * p);
    let units: Vec<Rat> = (1..p as i64).map(rat).collect();
    let mut reps: Vec<GroupElem> = Vec::new();
    let zero = Rat::from_integer(0.into());
    let one = rat(1);

    match op {
        OperatorTag::A1 => {
            for a in &res {
                for b in &res {
                    for c in &res {
                        reps.push(ge(
                            Mat4 {
                                m: [
                                    [pr.clone(), zero.clone(), b.clone(), a.clone()],
                                    [zero.clone(), pr.clone(), c.clone(), b.clone()],
                                    [zero.clone(), zero.clone(), one.clone(), zero.clone()],
                                    [zero.clone(), zero.clone(), zero.clone(), one.clone()],
                                ],
                            },
                            p,
                        ));
                    }
                }
            }
            for alpha in &res {
                for beta in &res {
                    reps.push(ge(
                        Mat4 {
                            m: [
                                [pr.clone(), -alpha.clone(), zero.clone(), beta.clone()],
                                [zero.clone(), one.clone(), zero.clone(), zero.clone()],
                                [zero.clone(), zero.clone(), pr.clone(), alpha.clone()],
                                [zero.clone(), zero.clone(), zero.clone(), one.clone()],
                            ],
                        },
                        p,
                    ));
                }
            }
            for gamma in &res {
                reps.push(ge(
                    Mat4 {
                        m: [
                            [one.clone(), zero.clone(), zero.clone(), zero.clone()],
                            [zero.clone(), pr.clone(), gamma.clone(), zero.clone()],
                            [zero.clone(), zero.clone(), one.clone(), zero.clone()],
                            [zero.clone(), zero.clone(), zero.clone(), pr.clone()],
                        ],
                    },
                    p,
                ));
            }
            reps.push(ge(
                Mat4::diag([one.clone(), one.clone(), pr.clone(), pr.clone()]),
                p,
            ));
        }
        OperatorTag::A2 => {
            for a in &res {
                for b in &res {
                    for c in &res2 {
                        reps.push(ge(
                            Mat4 {
                                m: [
                                    [p2.clone(), -(&pr * a), &pr * b, c.clone()],
                                    [zero.clone(), pr.clone(), zero.clone(), b.clone()],
                                    [zero.clone(), zero.clone(), pr.clone(), a.clone()],
                                    [zero.clone(), zero.clone(), zero.clone(), one.clone()],
                                ],
                            },
                            p,
                        ));
                    }
                }
            }
            for u in &res {
                for v in &res2 {
                    reps.push(ge(
                        Mat4 {
                            m: [
                                [pr.clone(), zero.clone(), u.clone(), zero.clone()],
                                [zero.clone(), p2.clone(), v.clone(), &pr * u],
                                [zero.clone(), zero.clone(), one.clone(), zero.clone()],
                                [zero.clone(), zero.clone(), zero.clone(), pr.clone()],
                            ],
                        },
                        p,
                    ));
                }
            }
            for w in &res {
                reps.push(ge(
                    Mat4 {
                        m: [
                            [pr.clone(), -w.clone(), zero.clone(), zero.clone()],
                            [zero.clone(), one.clone(), zero.clone(), zero.clone()],
                            [zero.clone(), zero.clone(), p2.clone(), &pr * w],
                            [zero.clone(), zero.clone(), zero.clone(), pr.clone()],
                        ],
                    },
                    p,
                ));
            }
            // the unit-corner family: the unit sits in the (2,3) slot, the
            // rank-one upper-right block with vanishing second column; the
            // (1,4)-corner variant is already the beta = 0 case of the next
            // family and would double-count those cosets
            for alpha in &units {
                reps.push(ge(
                    Mat4 {
                        m: [
                            [pr.clone(), zero.clone(), zero.clone(), zero.clone()],
                            [zero.clone(), pr.clone(), alpha.clone(), zero.clone()],
                            [zero.clone(), zero.clone(), pr.clone(), zero.clone()],
                            [zero.clone(), zero.clone(), zero.clone(), pr.clone()],
                        ],
                    },
                    p,
                ));
            }
            for beta in &res {
                for gamma in &units {
                    reps.push(ge(
                        Mat4 {
                            m: [
                                [pr.clone(), zero.clone(), beta.clone(), gamma.clone()],
                                [
                                    zero.clone(),
                                    pr.clone(),
                                    &(beta * beta) / gamma,
                                    beta.clone(),
                                ],
                                [zero.clone(), zero.clone(), pr.clone(), zero.clone()],
                                [zero.clone(), zero.clone(), zero.clone(), pr.clone()],
                            ],
                        },
                        p,
                    ));
                }
            }
            reps.push(ge(
                Mat4::diag([one.clone(), pr.clone(), pr.clone(), p2.clone()]),
                p,
            ));
        }
        OperatorTag::LP1 => {
            for a in &res {
                for b in &res {
                    for c in &res {
                        reps.push(ge(
                            Mat4 {
                                m: [
                                    [one.clone(), zero.clone(), zero.clone(), zero.clone()],
                                    [zero.clone(), one.clone(), zero.clone(), zero.clone()],
                                    [&pr * b, &pr * a, pr.clone(), zero.clone()],
                                    [&pr * c, &pr * b, zero.clone(), pr.clone()],
                                ],
                            },
                            p,
                        ));
                    }
                }
            }
        }
        OperatorTag::LP2 => {
            for a in &res {
                for b in &res {
                    for c in &res2 {
                        reps.push(ge(
                            Mat4 {
                                m: [
                                    [one.clone(), zero.clone(), zero.clone(), zero.clone()],
                                    [-(&pr * a), pr.clone(), zero.clone(), zero.clone()],
                                    [&pr * b, zero.clone(), pr.clone(), zero.clone()],
                                    [&pr * c, &p2 * b, &p2 * a, p2.clone()],
                                ],
                            },
                            p,
                        ));
                    }
                }
            }
        }
        OperatorTag::LI => {
            for a in &res {
                for b in &res {
                    reps.push(ge(
                        Mat4 {
                            m: [
                                [one.clone(), zero.clone(), zero.clone(), zero.clone()],
                                [zero.clone(), zero.clone(), one.clone(), zero.clone()],
                                [&pr * b, -pr.clone(), zero.clone(), zero.clone()],
                                [&pr * a, zero.clone(), &pr * b, pr.clone()],
                            ],
                        },
                        p,
                    ));
                }
            }
        }
    }

    let core = match op {
        OperatorTag::A1 | OperatorTag::LP1 => ge(
            Mat4::diag([one.clone(), one.clone(), pr.clone(), pr.clone()]),
            p,
        ),
        OperatorTag::A2 | OperatorTag::LP2 => ge(
            Mat4::diag([one.clone(), pr.clone(), pr.clone(), p2.clone()]),
            p,
        ),
        OperatorTag::LI => t_elem(p),
    };

    CosetFamily {
        operator: op,
        parabolic: op.parabolic(),
        core,
        representatives: reps,
        p,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    fn ok() -> Self {
        CheckReport {
            pass: true,
            witnesses: Vec::new(),
        }
    }

    fn fail(witness: String) -> Self {
        CheckReport {
            pass: false,
            witnesses: vec![witness],
        }
    }

    fn record(&mut self, witness: String) {
        self.pass = false;
        if self.witnesses.len() < 8 {
            self.witnesses.push(witness);
        }
    }
}

/// The geometric object whose stabilizer the parahoric is: its image under
/// a representative identifies the left coset exactly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum CosetKey {
    Vertex(VertexLabel),
    Edge(VertexLabel, VertexLabel),
    Chamber(DirectedChamber),
}

fn coset_key(op: OperatorTag, g: &GroupElem, p: u32) -> CosetKey {
    let fc = fundamental_chamber(p);
    match op {
        OperatorTag::A1 | OperatorTag::A2 => CosetKey::Vertex(fc.primitive.translate(&g.matrix)),
        OperatorTag::LP1 => CosetKey::Edge(
            fc.primitive.translate(&g.matrix),
            fc.special2.translate(&g.matrix),
        ),
        OperatorTag::LP2 => CosetKey::Edge(
            fc.primitive.translate(&g.matrix),
            fc.nonspecial.translate(&g.matrix),
        ),
        OperatorTag::LI => {
            let base = DirectedChamber {
                chamber: fc.clone(),
                from_primitive: true,
            };
            CosetKey::Chamber(base.translate(&g.matrix, &fc.primitive))
        }
    }
}

/// Pairwise distinctness of the left cosets modulo the center.
///
/// Small families run the full quadratic `same_coset` scan. Large families
/// use the exact stabilizer characterization -- each parahoric (mod center)
/// is the full stabilizer of a simplex of the fundamental chamber, so coset
/// equality is equality of translated simplices -- and cross-validate a
/// deterministic sample of pairs against `same_coset`.
pub fn verify_disjoint(f: &CosetFamily) -> CheckReport {
    let mut report = CheckReport::ok();
    let n = f.representatives.len();
    if n <= 150 {
        for i in 0..n {
            for j in (i + 1)..n {
                if f.representatives[i].same_coset(&f.representatives[j], f.parabolic, true) {
                    report.record(format!("representatives {i} and {j} lie in the same coset"));
                }
            }
        }
        return report;
    }
    let keys: Vec<CosetKey> = f
        .representatives
        .iter()
        .map(|g| coset_key(f.operator, g, f.p))
        .collect();
    let mut sorted: Vec<(usize, &CosetKey)> = keys.iter().enumerate().collect();
    sorted.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
    for w in sorted.windows(2) {
        if w[0].1 == w[1].1 {
            report.record(format!(
                "representatives {} and {} move the fundamental simplex identically",
                w[0].0, w[1].0
            ));
        }
    }
    // spot-check the algebraic predicate against the geometric keys
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..600 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let i = (state >> 33) as usize % n;
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % n;
        let alg = f.representatives[i].same_coset(&f.representatives[j], f.parabolic, true);
        let geo = keys[i] == keys[j];
        if alg != geo {
            report.record(format!(
                "coset predicate disagrees with stabilizer keys on pair ({i},{j})"
            ));
        }
    }
    report
}

/// Double-coset membership. The maximal-compact families are certified by
/// the lattice criterion: the p-adic invariant-factor profile together with
/// the similitude valuation pins the double coset. The parahoric-level
/// families additionally exhibit `rep * core^-1` inside the parahoric, a
/// direct certificate of membership in `parabolic * core * parabolic`.
pub fn verify_membership(f: &CosetFamily) -> CheckReport {
    let mut report = CheckReport::ok();
    let want_profile = invariant_factor_exponents(&f.core.matrix, f.p);
    let want_lambda = f.core.similitude.valuation();
    for (i, g) in f.representatives.iter().enumerate() {
        let profile = invariant_factor_exponents(&g.matrix, f.p);
        if profile != want_profile {
            report.record(format!(
                "representative {i} has invariant factors {profile:?}, expected {want_profile:?}"
            ));
            continue;
        }
        if g.similitude.valuation() != want_lambda {
            report.record(format!("representative {i} has wrong similitude valuation"));
            continue;
        }
        match f.operator {
            OperatorTag::A1 | OperatorTag::A2 => {}
            OperatorTag::LP1 | OperatorTag::LP2 | OperatorTag::LI => {
                let shifted = g.mul(&f.core.inverse());
                if !shifted.is_member(f.parabolic) {
                    report.record(format!(
                        "representative {i}: rep * core^-1 not in {:?}",
                        f.parabolic
                    ));
                }
            }
        }
    }
    report
}

/// A directed chamber: a chamber together with the orientation of its
/// type-1 edge.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DirectedChamber {
    pub chamber: Chamber,
    /// true: directed from the primitive corner to the type-2 corner
    pub from_primitive: bool,
}

impl DirectedChamber {
    pub fn source(&self) -> &VertexLabel {
        if self.from_primitive {
            &self.chamber.primitive
        } else {
            &self.chamber.special2
        }
    }

    pub fn target(&self) -> &VertexLabel {
        if self.from_primitive {
            &self.chamber.special2
        } else {
            &self.chamber.primitive
        }
    }

    pub fn translate(&self, g: &Mat4, src: &VertexLabel) -> DirectedChamber {
        let chamber = self.chamber.translate(g);
        let moved_src = src.translate(g);
        DirectedChamber {
            from_primitive: chamber.primitive == moved_src,
            chamber,
        }
    }
}

/// Geometric cross-checks of each family against the lattice building.
pub fn cross_check_geometry(f: &CosetFamily) -> CheckReport {
    match f.operator {
        OperatorTag::A1 => check_a1_geometry(f),
        OperatorTag::A2 => check_a2_geometry(f),
        OperatorTag::LP1 => check_lp1_geometry(f),
        OperatorTag::LP2 => check_lp2_geometry(f),
        OperatorTag::LI => check_li_geometry(f),
    }
}

/// The images of the base vertex must saturate its special-neighbor set.
fn check_a1_geometry(f: &CosetFamily) -> CheckReport {
    let base = VertexLabel::Special(crate::latticegeo::LatticeClass::standard(f.p));
    let mut image: Vec<VertexLabel> = f
        .representatives
        .iter()
        .map(|g| base.translate(&g.matrix))
        .collect();
    image.sort();
    image.dedup();
    if image.len() != f.representatives.len() {
        return CheckReport::fail("image vertices are not pairwise distinct".into());
    }
    let mut expected: Vec<VertexLabel> = neighbors(&base)
        .into_iter()
        .filter(|(_, t)| *t == EdgeType::Type1)
        .map(|(v, _)| v)
        .collect();
    expected.sort();
    if image != expected {
        return CheckReport::fail("image does not equal the special-neighbor set".into());
    }
    CheckReport::ok()
}

/// The images must be exactly the distance-two primitive vertices reached
/// through a non-special middle vertex, each hit once.
fn check_a2_geometry(f: &CosetFamily) -> CheckReport {
    let base = VertexLabel::Special(crate::latticegeo::LatticeClass::standard(f.p));
    let mut image: Vec<VertexLabel> = f
        .representatives
        .iter()
        .map(|g| base.translate(&g.matrix))
        .collect();
    image.sort();
    image.dedup();
    if image.len() != f.representatives.len() {
        return CheckReport::fail("image vertices are not pairwise distinct".into());
    }
    let mut expected: Vec<VertexLabel> = Vec::new();
    for (w, _) in neighbors(&base) {
        if w.vtype() != 3 {
            continue;
        }
        for (y, _) in neighbors(&w) {
            if y.vtype() == 0 && y != base {
                expected.push(y);
            }
        }
    }
    expected.sort();
    let with_multiplicity = expected.len();
    expected.dedup();
    if with_multiplicity != expected.len() {
        return CheckReport::fail("a distance-two vertex is reached through two middles".into());
    }
    if image != expected {
        return CheckReport::fail(
            "image does not equal the through-non-special distance-two sphere".into(),
        );
    }
    CheckReport::ok()
}

/// Directed type-1 edges: the images continue the edge without turning back
/// or staying close to the old source.
fn check_lp1_geometry(f: &CosetFamily) -> CheckReport {
    let fc = fundamental_chamber(f.p);
    let u = fc.primitive.clone();
    let v = fc.special2.clone();
    let mut cache = ChamberCache::new();
    let mut image: Vec<(VertexLabel, VertexLabel)> = f
        .representatives
        .iter()
        .map(|g| (u.translate(&g.matrix), v.translate(&g.matrix)))
        .collect();
    image.sort();
    image.dedup();
    if image.len() != f.representatives.len() {
        return CheckReport::fail("image edges are not pairwise distinct".into());
    }
    for (src, _) in &image {
        if *src != v {
            return CheckReport::fail("an image edge does not start at the old target".into());
        }
    }
    let mut expected: Vec<(VertexLabel, VertexLabel)> = Vec::new();
    for (y, t) in neighbors(&v) {
        if t != EdgeType::Type1 || y == u {
            continue;
        }
        if !cache.close(&y, &u) {
            expected.push((v.clone(), y));
        }
    }
    expected.sort();
    if image != expected {
        return CheckReport::fail("image does not saturate the not-close continuation set".into());
    }
    CheckReport::ok()
}

/// Type-2 edges: source close to the old source, target not close to the
/// old target.
fn check_lp2_geometry(f: &CosetFamily) -> CheckReport {
    let fc = fundamental_chamber(f.p);
    let u = fc.primitive.clone();
    let w = fc.nonspecial.clone();
    let mut cache = ChamberCache::new();
    let mut image: Vec<(VertexLabel, VertexLabel)> = f
        .representatives
        .iter()
        .map(|g| (u.translate(&g.matrix), w.translate(&g.matrix)))
        .collect();
    image.sort();
    image.dedup();
    if image.len() != f.representatives.len() {
        return CheckReport::fail("image edges are not pairwise distinct".into());
    }
    let mut expected: Vec<(VertexLabel, VertexLabel)> = Vec::new();
    for (y, _) in neighbors(&w) {
        if y.vtype() != 0 || !cache.close(&y, &u) {
            continue;
        }
        // the returning edge y -> w is excluded alongside the close targets
        for (z, _) in neighbors(&y) {
            if z.vtype() == 3 && z != w && !cache.close(&z, &w) {
                expected.push((y.clone(), z));
            }
        }
    }
    expected.sort();
    expected.dedup();
    if image != expected {
        return CheckReport::fail("image does not saturate the edge-continuation set".into());
    }
    CheckReport::ok()
}

/// Directed chambers: the stabilizer-pair criterion. Each image chamber must
/// sit in the configuration that the core element produces relative to the
/// fundamental directed chamber, and the images must saturate that set.
fn check_li_geometry(f: &CosetFamily) -> CheckReport {
    let fc = fundamental_chamber(f.p);
    let u = fc.primitive.clone();
    let v = fc.special2.clone();
    let w = fc.nonspecial.clone();
    let base = DirectedChamber {
        chamber: fc.clone(),
        from_primitive: true,
    };

    let mut image: Vec<DirectedChamber> = f
        .representatives
        .iter()
        .map(|g| base.translate(&g.matrix, &u))
        .collect();
    image.sort();
    image.dedup();
    if image.len() != f.representatives.len() {
        return CheckReport::fail("image chambers are not pairwise distinct".into());
    }

    // the core element's configuration, spelled out as a predicate:
    // source = v, the triangle {v, w, target} is a chamber, target != u,
    // and the non-special corner differs from w
    let mut expected: Vec<DirectedChamber> = Vec::new();
    let chambers_on_vw: Vec<Chamber> = chambers_at(&v)
        .into_iter()
        .filter(|c| c.contains(&w))
        .collect();
    for c1 in &chambers_on_vw {
        let y = c1.primitive.clone();
        if y == u {
            continue;
        }
        for d in chambers_at(&y) {
            if !d.contains(&v) || d.nonspecial == w {
                continue;
            }
            // d contains the type-1 edge {v, y} directed v -> y
            expected.push(DirectedChamber {
                chamber: d,
                from_primitive: false,
            });
        }
    }
    expected.sort();
    expected.dedup();
    if image != expected {
        return CheckReport::fail("image does not saturate the chamber-configuration set".into());
    }
    // the core element itself lands in the same configuration
    let core_image = base.translate(&f.core.matrix, &u);
    if !expected.contains(&core_image) {
        return CheckReport::fail("core element image missing from the configuration set".into());
    }
    CheckReport::ok()
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub operator: &'static str,
    pub count: usize,
    pub expected_count: usize,
    pub disjoint: bool,
    pub membership: bool,
    pub geometry: Option<bool>,
    pub witnesses: Vec<String>,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.count == self.expected_count
            && self.disjoint
            && self.membership
            && self.geometry.unwrap_or(true)
    }
}

/// Run every check for one operator family. Geometry is verified at the
/// smaller primes only; at `p = 5` the algebraic checks stand alone.
pub fn verify_family(op: OperatorTag, p: u32, with_geometry: bool) -> FamilyReport {
    let family = generate_family(op, p);
    let disjoint = verify_disjoint(&family);
    let membership = verify_membership(&family);
    let geometry = if with_geometry {
        Some(cross_check_geometry(&family))
    } else {
        None
    };
    let mut witnesses = Vec::new();
    witnesses.extend(disjoint.witnesses.iter().cloned());
    witnesses.extend(membership.witnesses.iter().cloned());
    if let Some(g) = &geometry {
        witnesses.extend(g.witnesses.iter().cloned());
    }
    FamilyReport {
        operator: op.name(),
        count: family.representatives.len(),
        expected_count: op.expected_count(p),
        disjoint: disjoint.pass,
        membership: membership.pass,
        geometry: geometry.map(|g| g.pass),
        witnesses,
    }
}

#[derive(Debug, Serialize)]
pub struct CosetVerification {
    pub schema_version: u32,
    pub p: u32,
    pub families: Vec<FamilyReport>,
    pub pass: bool,
}

/// The full verification at one prime.
pub fn verify_all(p: u32, with_geometry: bool) -> CosetVerification {
    let families: Vec<FamilyReport> = OperatorTag::ALL
        .iter()
        .map(|&op| verify_family(op, p, with_geometry))
        .collect();
    let pass = families.iter().all(|f| f.pass());
    CosetVerification {
        schema_version: 1,
        p,
        families,
        pass,
    }
}

/// Lift-insensitivity: shifting a unit lift by `p` must not move the coset.
pub fn lift_shift_is_same_coset(p: u32) -> bool {
    let pr = rat(p as i64);
    let one = rat(1);
    let zero = Rat::from_integer(0.into());
    let beta = rat(1);
    let make = |gamma: Rat| {
        ge(
            Mat4 {
                m: [
                    [pr.clone(), zero.clone(), beta.clone(), gamma.clone()],
                    [
                        zero.clone(),
                        pr.clone(),
                        &(&beta * &beta) / &gamma,
                        beta.clone(),
                    ],
                    [zero.clone(), zero.clone(), pr.clone(), zero.clone()],
                    [zero.clone(), zero.clone(), zero.clone(), pr.clone()],
                ],
            },
            p,
        )
    };
    let g1 = make(one.clone());
    let g2 = make(&one + pow_p(p, 1));
    g1.same_coset(&g2, SubgroupId::K, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_k_element;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn family_counts_at_p2() {
        assert_eq!(
            generate_family(OperatorTag::A1, 2).representatives.len(),
            15
        );
        // the six sub-families contribute 16 + 8 + 2 + 1 + 2 + 1
        assert_eq!(
            generate_family(OperatorTag::A2, 2).representatives.len(),
            30
        );
        assert_eq!(
            generate_family(OperatorTag::LP1, 2).representatives.len(),
            8
        );
        assert_eq!(
            generate_family(OperatorTag::LP2, 2).representatives.len(),
            16
        );
        assert_eq!(generate_family(OperatorTag::LI, 2).representatives.len(), 4);
        assert_eq!(generate_family(OperatorTag::LI, 3).representatives.len(), 9);
    }

    #[test]
    fn family_counts_match_closed_forms() {
        for p in [2u32, 3, 5] {
            for op in OperatorTag::ALL {
                let fam = generate_family(op, p);
                assert_eq!(
                    fam.representatives.len(),
                    op.expected_count(p),
                    "{} at p={p}",
                    op.name()
                );
            }
        }
    }

    #[test]
    fn disjointness_holds_and_detects_duplicates() {
        let mut fam = generate_family(OperatorTag::A1, 2);
        assert!(verify_disjoint(&fam).pass);
        // negative control: inject a duplicate representative
        let dup = fam.representatives[3].clone();
        fam.representatives.push(dup);
        let report = verify_disjoint(&fam);
        assert!(!report.pass);
        assert!(report.witnesses[0].contains("3"));
    }

    #[test]
    fn membership_holds_and_detects_outsiders() {
        for p in [2u32, 3] {
            for op in OperatorTag::ALL {
                let fam = generate_family(op, p);
                assert!(verify_membership(&fam).pass, "{} at p={p}", op.name());
            }
        }
        // negative control: the identity has the wrong invariant factors
        let mut fam = generate_family(OperatorTag::A1, 2);
        fam.representatives
            .push(GroupElem::new(Mat4::identity(), 2).unwrap());
        let report = verify_membership(&fam);
        assert!(!report.pass);
        assert!(report.witnesses[0].contains("invariant factors"));
    }

    #[test]
    fn invariant_factor_profiles() {
        // the vertex operators move the standard lattice by the stated
        // elementary divisors
        for p in [2u32, 3] {
            for g in &generate_family(OperatorTag::A1, p).representatives {
                assert_eq!(invariant_factor_exponents(&g.matrix, p), [0, 0, 1, 1]);
            }
            for g in &generate_family(OperatorTag::A2, p).representatives {
                assert_eq!(invariant_factor_exponents(&g.matrix, p), [0, 1, 1, 2]);
            }
        }
    }

    #[test]
    fn a1_geometry_saturates_neighbors() {
        let fam = generate_family(OperatorTag::A1, 2);
        assert!(cross_check_geometry(&fam).pass);
    }

    #[test]
    fn a2_geometry_saturates_distance_two() {
        let fam = generate_family(OperatorTag::A2, 2);
        assert!(cross_check_geometry(&fam).pass);
    }

    #[test]
    fn lp1_geometry_continues_lines() {
        let fam = generate_family(OperatorTag::LP1, 2);
        assert!(cross_check_geometry(&fam).pass);
    }

    #[test]
    fn lp2_geometry_continues_lines() {
        let fam = generate_family(OperatorTag::LP2, 2);
        assert!(cross_check_geometry(&fam).pass);
    }

    #[test]
    fn li_geometry_stabilizer_pairs() {
        let fam = generate_family(OperatorTag::LI, 2);
        assert!(cross_check_geometry(&fam).pass);
        // the four image chambers each share the type-2
        // corner with the fundamental chamber
        let fc = fundamental_chamber(2);
        let base = DirectedChamber {
            chamber: fc.clone(),
            from_primitive: true,
        };
        for g in &fam.representatives {
            let img = base.translate(&g.matrix, &fc.primitive);
            assert!(img.chamber.contains(&fc.special2));
        }
    }

    #[test]
    fn fundamental_apartment_continuations() {
        use crate::latticegeo::figure1_label;
        let p = 2;
        let fc = fundamental_chamber(p);

        // the type-1 edge continues straight: the core element maps the
        // fundamental directed edge to [0,0,1,1] -> [0,0,2,2]
        let lp1 = generate_family(OperatorTag::LP1, p);
        let src = fc.primitive.translate(&lp1.core.matrix);
        let tgt = fc.special2.translate(&lp1.core.matrix);
        assert_eq!(src, figure1_label(0, 0, 1, 1, p).unwrap());
        assert_eq!(tgt, figure1_label(0, 0, 2, 2, p).unwrap());

        // the type-2 edge continues straight through the non-special
        // vertex: core image is [-1,0,0,1] -> [-1,1,1,2]
        let lp2 = generate_family(OperatorTag::LP2, p);
        let src = fc.primitive.translate(&lp2.core.matrix);
        let tgt = fc.nonspecial.translate(&lp2.core.matrix);
        assert_eq!(src, figure1_label(-1, 0, 0, 1, p).unwrap());
        assert_eq!(tgt, figure1_label(-1, 1, 1, 2, p).unwrap());

        // the chamber translation sends the fundamental directed chamber to
        // the one on vertices [0,0,1,1], [0,0,1,2], [-1,0,0,1] with the
        // type-1 edge directed [0,0,1,1] -> [-1,0,0,1]
        let li = generate_family(OperatorTag::LI, p);
        let base = DirectedChamber {
            chamber: fc.clone(),
            from_primitive: true,
        };
        let image = base.translate(&li.core.matrix, &fc.primitive);
        assert_eq!(*image.source(), figure1_label(0, 0, 1, 1, p).unwrap());
        assert_eq!(*image.target(), figure1_label(-1, 0, 0, 1, p).unwrap());
        assert_eq!(
            image.chamber.nonspecial,
            figure1_label(0, 0, 1, 2, p).unwrap()
        );
    }

    #[test]
    fn a1_image_is_stable_under_k_translation() {
        let p = 2;
        let fam = generate_family(OperatorTag::A1, p);
        let base = VertexLabel::Special(crate::latticegeo::LatticeClass::standard(p));
        let mut image: Vec<VertexLabel> = fam
            .representatives
            .iter()
            .map(|g| base.translate(&g.matrix))
            .collect();
        image.sort();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let k = random_k_element(&mut rng, p);
            let mut moved: Vec<VertexLabel> = fam
                .representatives
                .iter()
                .map(|g| base.translate(&k.mul(g).matrix))
                .collect();
            moved.sort();
            assert_eq!(moved, image, "K-translation permutes the A1 image");
        }
    }

    #[test]
    fn unit_lift_shift_keeps_cosets() {
        for p in [2u32, 3, 5] {
            assert!(lift_shift_is_same_coset(p));
        }
    }
}

//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sp4zeta::cosetver::{self, OperatorTag};
use sp4zeta::exactring::PowerSeries;
use sp4zeta::latticegeo::{ball, neighbors, EdgeType};
use sp4zeta::reptheory::{self, RepTypeId};
use sp4zeta::zetaeng::{self, OperatorKind, RootSpec, RootStatus};

fn report(criterion: &str, pass: bool, elapsed: std::time::Duration) {
    println!(
        "criterion {criterion}: {} ({:.2?})",
        if pass { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(pass, "criterion {criterion} failed");
}

/// Coset decompositions: cardinality, disjointness and membership at
/// p = 2, 3, 5, with geometric saturation at p = 2, 3.
#[test]
fn criterion_1_coset_decompositions() {
    let t0 = Instant::now();
    let mut pass = true;
    for p in [2u32, 3, 5] {
        let with_geometry = p != 5;
        let rep = cosetver::verify_all(p, with_geometry);
        for fam in &rep.families {
            let q = p as usize;
            let expected = match fam.operator {
                "A1" => q * q * q + q * q + q + 1,
                "A2" => q * q * q * q + q * q * q + q * q + q,
                "LP1" => q * q * q,
                "LP2" => q * q * q * q,
                "LI" => q * q,
                _ => unreachable!(),
            };
            pass &= fam.count == expected && fam.expected_count == expected;
            pass &= fam.disjoint && fam.membership;
            if with_geometry {
                pass &= fam.geometry == Some(true);
            }
        }
    }
    let elapsed = t0.elapsed();
    report("1 (coset decompositions)", pass, elapsed);
    assert!(
        elapsed.as_secs() < 30,
        "expected under 30 s, took {elapsed:?}"
    );
}

/// Building combinatorics: radius-one balls reproduce the neighbor counts
/// exactly and every interior edge lies in exactly q+1 chambers.
#[test]
fn criterion_2_building_combinatorics() {
    let t0 = Instant::now();
    let mut pass = true;
    for p in [2u32, 3] {
        let q = p as usize;
        let expected_special = q * q * q + q * q + q + 1;
        let b = ball(1, p).unwrap();
        for v in &b.vertices {
            let nb = neighbors(v);
            if v.is_special() {
                let t1 = nb.iter().filter(|(_, t)| *t == EdgeType::Type1).count();
                let t2 = nb.iter().filter(|(_, t)| *t == EdgeType::Type2).count();
                pass &= t1 == expected_special && t2 == expected_special;
            } else {
                let prim = nb.iter().filter(|(w, _)| w.vtype() == 0).count();
                let sp2 = nb.iter().filter(|(w, _)| w.vtype() == 2).count();
                pass &= nb.len() == 2 * (q + 1) && prim == q + 1 && sp2 == q + 1;
                pass &= nb.iter().all(|(_, t)| *t == EdgeType::Type2);
            }
        }
        let counts = b.interior_edge_chamber_counts();
        pass &= !counts.is_empty() && counts.iter().all(|(_, c)| *c == q + 1);
    }
    let elapsed = t0.elapsed();
    report("2 (building combinatorics)", pass, elapsed);
    assert!(
        elapsed.as_secs() < 60,
        "expected under 60 s, took {elapsed:?}"
    );
}

/// Dimension table: parahoric dimensions and both bookkeeping columns for
/// all fifteen rows, exactly.
#[test]
fn criterion_3_dimension_table() {
    let t0 = Instant::now();
    let mut pass = true;
    for t in RepTypeId::ALL {
        for &eps in t.sign_variants() {
            let row = reptheory::verify_variant(t, eps);
            pass &= row.dims_ok && row.c_columns_ok;
            pass &= row.dims == reptheory::reference_dims(t);
            pass &= row.c_columns == reptheory::reference_c_columns(t);
        }
    }
    report("3 (dimension table)", pass, t0.elapsed());
}

/// Spectra table: every operator characteristic polynomial on all fifteen
/// types factors exactly as stated, as symbolic identities.
#[test]
fn criterion_4_spectra_table() {
    let t0 = Instant::now();
    let rep = reptheory::verify_all_types(None);
    let mut pass = rep.pass;
    for t in &rep.types {
        for row in &t.rows {
            pass &= row.error.is_none() && row.spectra.iter().all(|s| s.ok);
        }
    }
    let elapsed = t0.elapsed();
    report("4 (spectra table)", pass, elapsed);
    assert!(
        elapsed.as_secs() < 10,
        "expected under 10 s, took {elapsed:?}"
    );
}

/// The final cancellation: contributions assemble to
/// (1-u^2)^chi (1-q^2u^2)^(-(q^2-1)Np) through the multiplicity ledger, and
/// the two published exponent forms agree on a grid.
#[test]
fn criterion_5_final_cancellation() {
    let t0 = Instant::now();
    let mut pass = true;
    for t in RepTypeId::ALL {
        let checks = reptheory::contrib::verify_contributions(t).unwrap();
        pass &= checks.iter().all(|c| c.ok && c.pair_ok);
    }
    let ledger = reptheory::verify_multiplicity_ledger();
    pass &= ledger.pass;
    for q in [2i64, 3, 5, 7, 11, 13] {
        for np in 0..=60 {
            pass &= reptheory::exponent_identity_holds(np, q);
        }
    }
    report("5 (final cancellation)", pass, t0.elapsed());
}

/// Exponential-trace cycle series times the determinant is one, on two
/// hundred random matrices, with an independent walk-counting oracle on
/// twenty of them.
#[test]
fn criterion_6_cycle_series_machinery() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut rng = StdRng::seed_from_u64(40961);
    let mut matrices: Vec<Vec<Vec<u64>>> = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let m: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        matrices.push(m);
    }
    for m in &matrices {
        let series = zetaeng::cycle_zeta_series(m, 12).unwrap();
        let det = zetaeng::det_one_minus_u(m).unwrap();
        let product = &series * &PowerSeries::from_upoly(&det, 12);
        pass &= product.is_one();
    }
    // independent oracle: brute-force closed-walk counting
    fn closed_walks(m: &[Vec<u64>], len: usize) -> u64 {
        fn go(m: &[Vec<u64>], start: usize, cur: usize, left: usize) -> u64 {
            if left == 0 {
                return (cur == start) as u64;
            }
            (0..m.len())
                .map(|next| {
                    if m[cur][next] > 0 {
                        m[cur][next] * go(m, start, next, left - 1)
                    } else {
                        0
                    }
                })
                .sum()
        }
        (0..m.len()).map(|v| go(m, v, v, len)).sum()
    }
    for m in matrices.iter().take(20) {
        // recover tr(L^n) from the logarithmic derivative relation by
        // differentiating the series product is circular; instead compare
        // the series of log directly: log(Z) = sum tr(L^n)/n u^n
        let series = zetaeng::cycle_zeta_series(m, 8).unwrap();
        let logs = series.log().unwrap();
        for n in 1..=8usize {
            let walks = closed_walks(m, n);
            let coeff = logs.coeff(n).constant_term();
            let expect = sp4zeta::exactring::ratio(walks as i64, n as i64);
            pass &= coeff == expect;
        }
    }
    let elapsed = t0.elapsed();
    report("6 (cycle series machinery)", pass, elapsed);
    assert!(
        elapsed.as_secs() < 60,
        "expected under 60 s, took {elapsed:?}"
    );
}

/// Ramanujan classifier: a tempered generic spectrum passes all four
/// operator tests, a nontempered subrepresentation spectrum is flagged on
/// the quartic and the type-1 edge operator, and complete one-dimensional
/// blocks are never flagged.
#[test]
fn criterion_7_ramanujan_classifier() {
    let t0 = Instant::now();
    let mut pass = true;
    let exact = |coeff: &str, k: i64, unit: bool| RootSpec::Exact {
        coeff: coeff.into(),
        q_half_power: k,
        unit_modulus: unit,
    };

    // tempered generic type: all four operators consistent
    let tempered = zetaeng::SpectraInput {
        q: 2,
        tolerance: None,
        vertex_quartic_zeros: vec![exact("1", -3, true); 4],
        type1_edge_zeros: vec![exact("1", -3, true); 4],
        type2_edge_zeros: vec![exact("1", -4, true); 4],
        chamber_zeros: vec![exact("1", -2, true); 8],
    };
    let rep = zetaeng::classify_all(&tempered, 1e-9).unwrap();
    pass &= rep.ramanujan_consistent;

    // nontempered subrepresentation: quartic zeros at 1/q and 1/q^2, edge
    // zero at 1/q^2
    let quartic = zetaeng::ramanujan_classify(
        OperatorKind::VertexQuartic,
        2,
        &[
            exact("1", -3, true),
            exact("1", -3, true),
            exact("1", -4, false),
            exact("1", -2, false),
        ],
        1e-9,
    )
    .unwrap();
    pass &= !quartic.ramanujan_consistent;
    pass &= quartic.roots[2].status == RootStatus::Violation;
    pass &= quartic.roots[3].status == RootStatus::Violation;
    let edge = zetaeng::ramanujan_classify(
        OperatorKind::Type1Edge,
        2,
        &[
            exact("1", -3, true),
            exact("1", -3, true),
            exact("1", -4, false),
        ],
        1e-9,
    )
    .unwrap();
    pass &= !edge.ramanujan_consistent;
    pass &= edge.roots[2].status == RootStatus::Violation;

    // complete one-dimensional quadruple: trivial, never flagged
    let trivial = zetaeng::ramanujan_classify(
        OperatorKind::VertexQuartic,
        2,
        &[
            exact("1", 0, false),
            exact("1", -2, false),
            exact("1", -4, false),
            exact("1", -6, false),
        ],
        1e-9,
    )
    .unwrap();
    pass &= trivial.ramanujan_consistent;
    pass &= trivial
        .roots
        .iter()
        .all(|r| r.status == RootStatus::Trivial);

    report("7 (Ramanujan classifier)", pass, t0.elapsed());
}

/// The Steinberg line: the simultaneous intertwiner kernel is spanned by
/// the stated alternating q-power vector and the chamber operator acts on
/// it by minus the similitude sign.
#[test]
fn criterion_8_steinberg_line() {
    let t0 = Instant::now();
    let mut pass = true;
    for eps in [1i64, -1] {
        match reptheory::steinberg_line(eps) {
            Ok(out) => {
                let reference = reptheory::reference_line();
                let last = out.line[7].clone();
                pass &= !last.is_zero();
                for (a, b) in out.line.iter().zip(&reference) {
                    pass &= a.div_exact(&last).as_ref() == Some(b);
                }
                let expected = sp4zeta::exactring::UPoly::from_coeffs(vec![
                    sp4zeta::exactring::LaurentPoly::int(eps),
                    sp4zeta::exactring::LaurentPoly::one(),
                ]);
                pass &= out.chamber_charpoly == expected;
            }
            Err(e) => {
                println!("steinberg solve failed: {e}");
                pass = false;
            }
        }
    }
    report("8 (Steinberg line)", pass, t0.elapsed());
}

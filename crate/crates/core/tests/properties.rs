//! Randomized algebraic properties of the exact coefficient ring and the
//! matrix layer, plus the golden text format of Laurent polynomials.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sp4zeta::exactring::{rat, ratio, LaurentPoly, Mat, PowerSeries, RingMatrix, UPoly};

fn random_poly(rng: &mut StdRng, terms: usize, spread: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..terms {
        let c = ratio(rng.gen_range(-6..7), rng.gen_range(1..4));
        p += LaurentPoly::monomial(
            c,
            rng.gen_range(-spread..=spread),
            rng.gen_range(-spread..=spread),
            rng.gen_range(-spread..=spread),
        );
    }
    p
}

#[test]
fn ring_axioms_hold_on_random_triples() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..1000 {
        let a = random_poly(&mut rng, 3, 4);
        let b = random_poly(&mut rng, 3, 4);
        let c = random_poly(&mut rng, 3, 4);
        assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a + &LaurentPoly::zero(), a);
        assert_eq!(&a * &LaurentPoly::one(), a);
    }
}

#[test]
fn determinant_is_multiplicative() {
    let mut rng = StdRng::seed_from_u64(103);
    for _ in 0..40 {
        let a: RingMatrix = Mat::from_fn(3, 3, |_, _| random_poly(&mut rng, 2, 2));
        let b: RingMatrix = Mat::from_fn(3, 3, |_, _| random_poly(&mut rng, 2, 2));
        let ab = a.matmul(&b);
        assert_eq!(
            ab.det().unwrap(),
            &a.det().unwrap() * &b.det().unwrap(),
            "det(AB) = det(A) det(B)"
        );
    }
}

#[test]
fn characteristic_polynomial_annihilates_the_matrix() {
    let mut rng = StdRng::seed_from_u64(107);
    for _ in 0..30 {
        let m: RingMatrix = Mat::from_fn(3, 3, |_, _| LaurentPoly::int(rng.gen_range(-3..4)));
        let cp = m.charpoly().unwrap();
        // evaluate sum c_k M^k exactly
        let mut acc: RingMatrix = Mat::zero(3, 3);
        let mut power: RingMatrix = Mat::identity(3);
        for k in 0..=cp.degree().unwrap() {
            let c = cp.coeff(k);
            for i in 0..3 {
                for j in 0..3 {
                    let add = &c * power.at(i, j);
                    *acc.at_mut(i, j) = &*acc.at(i, j) + &add;
                }
            }
            power = power.matmul(&m);
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!(acc.at(i, j).is_zero(), "Cayley-Hamilton at ({i},{j})");
            }
        }
    }
}

#[test]
fn exp_log_round_trip_at_order_twelve() {
    let mut rng = StdRng::seed_from_u64(109);
    for _ in 0..25 {
        let mut coeffs = vec![LaurentPoly::one()];
        for _ in 0..12 {
            coeffs.push(LaurentPoly::constant(ratio(
                rng.gen_range(-5..6),
                rng.gen_range(1..4),
            )));
        }
        let f = PowerSeries::from_coeffs(coeffs);
        let back = f.log().unwrap().exp().unwrap();
        assert_eq!(back, f, "exp(log(f)) = f mod u^13");
    }
}

#[test]
fn division_round_trip_in_the_edge_variable() {
    let mut rng = StdRng::seed_from_u64(113);
    for _ in 0..40 {
        let a = UPoly::from_coeffs((0..3).map(|_| random_poly(&mut rng, 2, 2)).collect());
        let mut b = UPoly::from_coeffs((0..2).map(|_| random_poly(&mut rng, 2, 2)).collect());
        if b.is_zero() {
            b = UPoly::one();
        }
        let prod = a.clone() * b.clone();
        if let Some(q) = prod.div_exact(&b) {
            assert_eq!(q * b, prod);
        } else {
            panic!("exact product must divide");
        }
    }
}

#[test]
fn golden_text_format_round_trips() {
    // frozen renderings of the canonical text format
    let golden: Vec<(LaurentPoly, &str)> = vec![
        (
            LaurentPoly::monomial(rat(3), 3, 1, -1) + LaurentPoly::one(),
            "3*v^3*x1*s^-1 + 1",
        ),
        (LaurentPoly::zero(), "0"),
        (
            LaurentPoly::monomial(ratio(-1, 2), 0, 2, 0) + LaurentPoly::v_pow(-4),
            "-1/2*x1^2 + v^-4",
        ),
        (LaurentPoly::v_pow(2) - LaurentPoly::int(1), "v^2 - 1"),
        (LaurentPoly::x2_pow(1).scale(&rat(5)), "5*x1^-1*s^-2"),
    ];
    for (poly, text) in &golden {
        assert_eq!(poly.render(), *text, "rendering is canonical");
        assert_eq!(
            &LaurentPoly::parse(text).unwrap(),
            poly,
            "parse inverts render"
        );
    }
}

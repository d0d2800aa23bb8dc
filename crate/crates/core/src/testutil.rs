//! Shared helpers for randomized tests.

use rand::rngs::StdRng;
use rand::Rng;

use crate::localgroup::{weyl_elements, GroupElem, Mat4};

/// A random element of the maximal compact subgroup: a short product of
/// integral unipotents, unit torus elements and Weyl representatives.
pub fn random_k_element(rng: &mut StdRng, p: u32) -> GroupElem {
    let weyl = weyl_elements(p);
    let mut g = GroupElem::new(Mat4::identity(), p).unwrap();
    for _ in 0..6 {
        let choice = rng.gen_range(0..4);
        let next = match choice {
            0 => {
                let (a, b, c) = (
                    rng.gen_range(-3..4),
                    rng.gen_range(-3..4),
                    rng.gen_range(-3..4),
                );
                GroupElem::from_i64([[1, 0, b, a], [0, 1, c, b], [0, 0, 1, 0], [0, 0, 0, 1]], p)
            }
            1 => {
                let (a, b, c) = (
                    rng.gen_range(-3..4),
                    rng.gen_range(-3..4),
                    rng.gen_range(-3..4),
                );
                GroupElem::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [b, a, 1, 0], [c, b, 0, 1]], p)
            }
            2 => {
                let x = rng.gen_range(-3..4);
                GroupElem::from_i64([[1, x, 0, 0], [0, 1, 0, 0], [0, 0, 1, -x], [0, 0, 0, 1]], p)
            }
            _ => weyl[rng.gen_range(0..8)].clone(),
        };
        g = g.mul(&next);
    }
    g
}

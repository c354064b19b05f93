//! Bundled Seifert matrices for the sample knots, plus a generator of random
//! valid Seifert matrices for randomized cross-checks.

use crate::seifert::{validate_seifert, SeifertData};
use rand::Rng;

/// Trefoil, genus 1.
pub fn trefoil() -> SeifertData {
    validate_seifert("3_1", &trefoil_raw()).unwrap()
}

pub fn trefoil_raw() -> Vec<Vec<i64>> {
    vec![vec![-1, 1], vec![0, -1]]
}

/// Figure-eight, genus 1.
pub fn figure_eight() -> SeifertData {
    validate_seifert("4_1", &figure_eight_raw()).unwrap()
}

pub fn figure_eight_raw() -> Vec<Vec<i64>> {
    vec![vec![1, 1], vec![0, -1]]
}

/// The genus-4 knot 10_99, the first knot-table entry whose Alexander module
/// torsion is neither cyclic nor semisimple.
pub fn ten_99() -> SeifertData {
    validate_seifert("10_99", &ten_99_raw()).unwrap()
}

pub fn ten_99_raw() -> Vec<Vec<i64>> {
    vec![
        vec![-1, -1, 0, 0, 0, 0, -1, 0],
        vec![0, -1, 0, 0, 0, 0, 0, 0],
        vec![-1, -1, -1, 0, 0, 0, -1, 0],
        vec![-1, 0, -1, 1, 0, 1, 0, 0],
        vec![-1, -1, -1, 1, 1, 1, -1, 1],
        vec![0, 0, 0, 0, 0, 1, 0, 0],
        vec![0, -1, 0, 0, 0, 0, -1, 0],
        vec![-1, -1, -1, 1, 0, 1, -1, 1],
    ]
}

/// All bundled sample knots, in table order.
pub fn samples() -> Vec<SeifertData> {
    vec![trefoil(), figure_eight(), ten_99()]
}

/// A random valid Seifert matrix of the given genus with entries in
/// `[-2, 2]`. Unimodularity of `S - S^T` holds by construction: the
/// antisymmetric part is pinned to the standard symplectic form and only the
/// symmetric part is sampled.
#[allow(clippy::needless_range_loop)] // symmetric fill reads best with indices
pub fn random_seifert(rng: &mut impl Rng, genus: usize, name: &str) -> SeifertData {
    let n = 2 * genus;
    let mut raw = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x: i64 = rng.random_range(-2..=2);
            raw[i][j] = x;
            raw[j][i] = x;
        }
    }
    for b in 0..genus {
        let (i, j) = (2 * b, 2 * b + 1);
        // keep S[i][j] = sym + 1 within [-2, 2]
        let sym: i64 = rng.random_range(-3..=1);
        raw[i][j] = sym + 1;
        raw[j][i] = sym;
    }
    validate_seifert(name, &raw).expect("constructed matrix is valid by design")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn samples_validate() {
        let s = samples();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2].genus(), 4);
    }

    #[test]
    fn random_seifert_in_range() {
        let mut rng = StdRng::seed_from_u64(7);
        for g in 1..=3 {
            let s = random_seifert(&mut rng, g, "rnd");
            assert_eq!(s.size(), 2 * g);
            for i in 0..s.size() {
                for j in 0..s.size() {
                    let e = s.entry(i, j);
                    assert!(e.magnitude() <= &2u32.into(), "entry out of range: {e}");
                }
            }
        }
    }
}

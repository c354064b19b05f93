//! Seifert-matrix validation and the Alexander invariants derived from it:
//! the presentation matrix `A(t) = S^T - t S`, the normalized Alexander
//! polynomial, and its squarefree root classes.

use crate::linalg::{det_bareiss, Mat};
use crate::poly::{yun_squarefree, Poly, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("seifert matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("seifert matrix must have even size, got {size}")]
    OddSize { size: usize },
    #[error("intersection form S - S^T must have determinant 1, got {det}")]
    NotUnimodular { det: BigInt },
    #[error("presentation matrix has zero determinant")]
    SingularPresentation,
}

/// A validated integer Seifert matrix of even size `2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    name: String,
    matrix: Mat<BigInt>,
}

/// Validate a raw integer matrix: square, even size, `det(S - S^T) = 1`.
pub fn validate_seifert(name: &str, raw: &[Vec<i64>]) -> Result<SeifertData, SeifertError> {
    let rows = raw.len();
    for r in raw {
        if r.len() != rows {
            return Err(SeifertError::NotSquare {
                rows,
                cols: r.len(),
            });
        }
    }
    if !rows.is_multiple_of(2) {
        return Err(SeifertError::OddSize { size: rows });
    }
    let matrix = Mat::from_fn(rows, rows, |i, j| BigInt::from(raw[i][j]));
    let skew = Mat::from_fn(rows, rows, |i, j| {
        Poly::constant(Rat::from(matrix.at(i, j) - matrix.at(j, i)))
    });
    let det = det_bareiss(&skew).coeff(0);
    if !det.is_one() {
        return Err(SeifertError::NotUnimodular {
            det: det.numer().clone(),
        });
    }
    Ok(SeifertData {
        name: name.to_string(),
        matrix,
    })
}

impl SeifertData {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn matrix(&self) -> &Mat<BigInt> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.at(i, j)
    }

    /// The matrix as rationals (for building systems over other rings).
    pub fn rational(&self) -> Mat<Rat> {
        self.matrix.map(|e| Rat::from(e.clone()))
    }
}

/// The Alexander module presentation `A(t) = S^T - t S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPresentation {
    matrix: Mat<Poly>,
}

pub fn alexander_matrix(s: &SeifertData) -> AlexanderPresentation {
    let n = s.size();
    let matrix = Mat::from_fn(n, n, |i, j| {
        Poly::from_coeffs(vec![
            Rat::from(s.entry(j, i).clone()),
            -Rat::from(s.entry(i, j).clone()),
        ])
    });
    AlexanderPresentation { matrix }
}

impl AlexanderPresentation {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Mat<Poly> {
        &self.matrix
    }

    /// Construct directly from a polynomial matrix (oracle tests only).
    pub fn from_matrix(matrix: Mat<Poly>) -> Self {
        assert_eq!(matrix.rows(), matrix.cols());
        AlexanderPresentation { matrix }
    }
}

/// The Alexander polynomial with its unit normalization record:
/// `det A(t) = sign * t^t_power * delta` with `delta(0) != 0` and positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedAlexanderPoly {
    delta: Poly,
    sign: i8,
    t_power: usize,
}

impl NormalizedAlexanderPoly {
    pub fn delta(&self) -> &Poly {
        &self.delta
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn t_power(&self) -> usize {
        self.t_power
    }

    /// `delta(1)`, always +1 or -1 for a valid Seifert input.
    pub fn at_one(&self) -> Rat {
        self.delta.eval(&Rat::one())
    }
}

/// Exact determinant of the presentation, normalized to the canonical unit
/// representative. Asserts `delta(1) = +-1` and the coefficient symmetry
/// `t^deg * delta(1/t) = +-delta(t)`.
pub fn alexander_polynomial(
    a: &AlexanderPresentation,
) -> Result<NormalizedAlexanderPoly, SeifertError> {
    let raw = det_bareiss(a.matrix());
    if raw.is_zero() {
        return Err(SeifertError::SingularPresentation);
    }
    let t_power = raw.trailing_zeros();
    let stripped = Poly::from_coeffs(raw.coeffs()[t_power..].to_vec());
    let (sign, delta) = if stripped.leading_coeff().unwrap().is_negative() {
        (-1, -&stripped)
    } else {
        (1, stripped)
    };
    let at_one = delta.eval(&Rat::one());
    assert!(
        at_one.abs().is_one(),
        "alexander polynomial must evaluate to a unit at 1, got {at_one}"
    );
    let rev = delta.reversed();
    assert!(
        rev == delta || rev == -&delta,
        "alexander polynomial must be symmetric up to sign"
    );
    Ok(NormalizedAlexanderPoly {
        delta,
        sign,
        t_power,
    })
}

/// Squarefree factors of the Alexander polynomial with multiplicities; each
/// factor becomes a quotient-ring modulus downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClassSet {
    classes: Vec<(Poly, u32)>,
}

pub fn root_classes(d: &NormalizedAlexanderPoly) -> RootClassSet {
    let (_, mut classes) = yun_squarefree(d.delta());
    let t = Poly::variable();
    let t_minus_one = Poly::from_int_coeffs(&[-1, 1]);
    for (f, _) in &classes {
        assert!(
            !f.divisible_by(&t) && !f.divisible_by(&t_minus_one),
            "root class divisible by t or t - 1"
        );
    }
    classes.sort_by(|a, b| cmp_factor(&a.0, &b.0));
    RootClassSet { classes }
}

/// Deterministic factor order: by degree, then coefficients from the constant
/// term up.
pub fn cmp_factor(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for i in 0..=da {
            let o = a.coeff(i).cmp(&b.coeff(i));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

impl RootClassSet {
    pub fn classes(&self) -> &[(Poly, u32)] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }
}

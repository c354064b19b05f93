//! Explicit triangular representations built from a solution of the
//! obstruction system.
//!
//! Elements of the metabelianized group are pairs `(y, k)` with `y` a Laurent
//! row over the module generators and `k` the exponent of the distinguished
//! commutative direction; multiplication is the semidirect law
//! `(y1, k1)(y2, k2) = (y1 + t^k1 y2, k1 + k2)`. A solution `F` of the
//! obstruction system extends to all Laurent rows by twisted linearity and
//! yields the block upper-triangular representation
//! `(y, k) -> [[a^k, F(y) J^k], [0, J^k]]`, which is multiplicative by
//! construction and well defined on the quotient by the row span of `A(t)`
//! exactly because `F` solves the system.

use crate::linalg::Mat;
use crate::numfield::{NFElement, NumberField};
use crate::obstruction::{embed_mat, jordan_power};
use crate::poly::Poly;
use crate::seifert::{alexander_matrix, SeifertData};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetabelianError {
    #[error("phi matrix must be {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize },
    #[error("phi matrix does not solve the obstruction system")]
    NotASolution,
}

/// A Laurent entry `poly(t) * t^shift`, normalized so that `poly` has a
/// nonzero constant term (or is zero with shift 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    poly: Poly,
    shift: i64,
}

impl Laurent {
    pub fn new(poly: Poly, shift: i64) -> Self {
        if poly.is_zero() {
            return Laurent { poly, shift: 0 };
        }
        let low = poly.trailing_zeros();
        Laurent {
            poly: Poly::from_coeffs(poly.coeffs()[low..].to_vec()),
            shift: shift + low as i64,
        }
    }

    pub fn zero() -> Self {
        Laurent::new(Poly::zero(), 0)
    }

    pub fn one() -> Self {
        Laurent::new(Poly::one(), 0)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Multiply by `t^k`.
    pub fn shifted(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            poly: self.poly.clone(),
            shift: self.shift + k,
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let base = self.shift.min(other.shift);
        let a = self.poly.shift_up((self.shift - base) as usize);
        let b = other.poly.shift_up((other.shift - base) as usize);
        Laurent::new(&a + &b, base)
    }

    pub fn mul_poly(&self, p: &Poly) -> Laurent {
        Laurent::new(&self.poly * p, self.shift)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "({}) * t^{}", self.poly, self.shift)
        }
    }
}

/// An element `y * t^k` of the metabelianized group: a Laurent row over the
/// `2g` module generators and an integer exponent. Rows are representatives;
/// equality of classes modulo the row span of `A(t)` is not decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabelianElement {
    row: Vec<Laurent>,
    t_exp: i64,
}

impl MetabelianElement {
    pub fn new(row: Vec<Laurent>, t_exp: i64) -> Self {
        MetabelianElement { row, t_exp }
    }

    pub fn identity(size: usize) -> Self {
        MetabelianElement::new(vec![Laurent::zero(); size], 0)
    }

    /// The distinguished generator `t` (the meridian class).
    pub fn meridian(size: usize) -> Self {
        MetabelianElement::new(vec![Laurent::zero(); size], 1)
    }

    /// The `i`-th module generator.
    pub fn generator(size: usize, i: usize) -> Self {
        let mut row = vec![Laurent::zero(); size];
        row[i] = Laurent::one();
        MetabelianElement::new(row, 0)
    }

    pub fn row(&self) -> &[Laurent] {
        &self.row
    }

    pub fn t_exp(&self) -> i64 {
        self.t_exp
    }
}

/// Semidirect product `(y1, k1)(y2, k2) = (y1 + t^k1 y2, k1 + k2)`.
pub fn semidirect_mul(a: &MetabelianElement, b: &MetabelianElement) -> MetabelianElement {
    assert_eq!(a.row.len(), b.row.len(), "size mismatch");
    let row = a
        .row
        .iter()
        .zip(&b.row)
        .map(|(x, y)| x.add(&y.shifted(a.t_exp)))
        .collect();
    MetabelianElement::new(row, a.t_exp + b.t_exp)
}

/// An `n x n` image matrix over the root-class field: block upper triangular
/// with `a^k` in the corner and the unipotent `J^k` below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    entries: Mat<NFElement>,
}

impl RepMatrix {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Mat<NFElement> {
        &self.entries
    }

    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        RepMatrix {
            entries: nf_mat_mul(&self.entries, &other.entries),
        }
    }
}

fn nf_mat_mul(a: &Mat<NFElement>, b: &Mat<NFElement>) -> Mat<NFElement> {
    assert_eq!(a.cols(), b.rows());
    Mat::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = a.at(i, 0).field().zero();
        for k in 0..a.cols() {
            acc = &acc + &(a.at(i, k) * b.at(k, j));
        }
        acc
    })
}

/// Builds representation matrices from one solution of the obstruction
/// system: the `2g x (n-1)` array of values on the module generators.
#[derive(Clone, Debug)]
pub struct RepBuilder {
    seifert: SeifertData,
    field: NumberField,
    level: u32,
    phi: Mat<NFElement>,
}

impl RepBuilder {
    /// Checks that `phi` solves the obstruction system before accepting it.
    pub fn new(
        seifert: &SeifertData,
        field: &NumberField,
        level: u32,
        phi: Mat<NFElement>,
    ) -> Result<Self, MetabelianError> {
        let b = Self::new_unchecked(seifert, field, level, phi)?;
        if !b.phi_solves_system() {
            return Err(MetabelianError::NotASolution);
        }
        Ok(b)
    }

    /// Skips the solution check (negative-control tests only).
    pub fn new_unchecked(
        seifert: &SeifertData,
        field: &NumberField,
        level: u32,
        phi: Mat<NFElement>,
    ) -> Result<Self, MetabelianError> {
        assert!(level >= 2);
        let (rows, cols) = (seifert.size(), level as usize - 1);
        if (phi.rows(), phi.cols()) != (rows, cols) {
            return Err(MetabelianError::ShapeMismatch { rows, cols });
        }
        Ok(RepBuilder {
            seifert: seifert.clone(),
            field: field.clone(),
            level,
            phi,
        })
    }

    /// Builder from a flattened nullspace basis vector.
    pub fn from_solution(
        seifert: &SeifertData,
        field: &NumberField,
        level: u32,
        flat: &[NFElement],
    ) -> Result<Self, MetabelianError> {
        let width = level as usize - 1;
        let phi = Mat::from_fn(seifert.size(), width, |i, j| flat[i * width + j].clone());
        Self::new(seifert, field, level, phi)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn phi(&self) -> &Mat<NFElement> {
        &self.phi
    }

    fn width(&self) -> usize {
        self.level as usize - 1
    }

    fn alpha_pow(&self, k: i64) -> NFElement {
        self.field
            .root()
            .pow_i64(k)
            .expect("root-class modulus has unit root")
    }

    fn jordan_embedded(&self, k: i64) -> Mat<NFElement> {
        embed_mat(&self.field, &jordan_power(self.width(), k))
    }

    /// `S^T phi J = a S phi` checked exactly.
    fn phi_solves_system(&self) -> bool {
        let n = self.seifert.size();
        let sr = self.seifert.rational();
        let st = Mat::from_fn(n, n, |i, k| self.field.from_rat(sr.at(k, i).clone()));
        let alpha = self.field.root();
        let a_s = Mat::from_fn(n, n, |i, k| {
            &alpha * &self.field.from_rat(sr.at(i, k).clone())
        });
        let lhs = nf_mat_mul(&nf_mat_mul(&st, &self.phi), &self.jordan_embedded(1));
        let rhs = nf_mat_mul(&a_s, &self.phi);
        lhs == rhs
    }

    /// Twisted-linear extension of the generator values to a Laurent row:
    /// `F(p(t) t^s e_i) = a^s * F(e_i) p(a J^{-1}) J^{-s}`.
    pub fn phi_extend(&self, row: &[Laurent]) -> Vec<NFElement> {
        assert_eq!(row.len(), self.seifert.size(), "size mismatch");
        let width = self.width();
        let twist = {
            // a J^{-1}
            let j_inv = self.jordan_embedded(-1);
            let alpha = self.field.root();
            j_inv.map(|e| e * &alpha)
        };
        let mut total = vec![self.field.zero(); width];
        for (i, entry) in row.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let base: Vec<NFElement> = (0..width).map(|j| self.phi.at(i, j).clone()).collect();
            // Horner: v = base * p(twist)
            let coeffs = entry.poly().coeffs();
            let mut v: Vec<NFElement> = base
                .iter()
                .map(|e| e * &self.field.from_rat(coeffs.last().unwrap().clone()))
                .collect();
            for c in coeffs.iter().rev().skip(1) {
                let shifted = row_times_mat(&v, &twist, &self.field);
                let c_el = self.field.from_rat(c.clone());
                v = shifted
                    .iter()
                    .zip(&base)
                    .map(|(sv, b)| sv + &(b * &c_el))
                    .collect();
            }
            // apply the t^shift twist
            let s = entry.shift();
            if s != 0 {
                let jk = self.jordan_embedded(-s);
                let ap = self.alpha_pow(s);
                v = row_times_mat(&v, &jk, &self.field)
                    .iter()
                    .map(|e| e * &ap)
                    .collect();
            }
            for (acc, e) in total.iter_mut().zip(&v) {
                *acc = &*acc + e;
            }
        }
        total
    }

    /// Image of a group element: `[[a^k, F(y) J^k], [0, J^k]]`.
    pub fn build_rep(&self, g: &MetabelianElement) -> RepMatrix {
        let width = self.width();
        let n = width + 1;
        let k = g.t_exp();
        let jk = self.jordan_embedded(k);
        let top = row_times_mat(&self.phi_extend(g.row()), &jk, &self.field);
        let corner = self.alpha_pow(k);
        let entries = Mat::from_fn(n, n, |i, j| {
            if i == 0 && j == 0 {
                corner.clone()
            } else if i == 0 {
                top[j - 1].clone()
            } else if j == 0 {
                self.field.zero()
            } else {
                jk.at(i - 1, j - 1).clone()
            }
        });
        RepMatrix { entries }
    }

    /// Check multiplicativity and quotient well-definedness on pseudorandom
    /// pairs with bounded exponents and small coefficients. Any inequality
    /// fails with a witness.
    pub fn verify_homomorphism(&self, trials: u32, seed: u64) -> HomCheck {
        let mut rng = StdRng::seed_from_u64(seed);
        let size = self.seifert.size();
        for trial in 0..trials {
            let g1 = random_element(&mut rng, size);
            let g2 = random_element(&mut rng, size);
            let lhs = self.build_rep(&semidirect_mul(&g1, &g2));
            let rhs = self.build_rep(&g1).mul(&self.build_rep(&g2));
            if lhs != rhs {
                return HomCheck::failure(
                    trial,
                    trials,
                    format!("rep(g1 g2) != rep(g1) rep(g2) for g1={g1:?}, g2={g2:?}"),
                );
            }
            // adding a presentation-row combination must not change the image
            let shifted = add_row_span_element(&mut rng, &self.seifert, &g1);
            let invariant = self.build_rep(&shifted);
            let original = self.build_rep(&g1);
            if invariant != original {
                return HomCheck::failure(
                    trial,
                    trials,
                    format!("rep changed under row-span shift of g1={g1:?}"),
                );
            }
        }
        HomCheck::pass(trials)
    }
}

fn row_times_mat(v: &[NFElement], m: &Mat<NFElement>, field: &NumberField) -> Vec<NFElement> {
    assert_eq!(v.len(), m.rows());
    (0..m.cols())
        .map(|j| {
            let mut acc = field.zero();
            for (i, e) in v.iter().enumerate() {
                acc = &acc + &(e * m.at(i, j));
            }
            acc
        })
        .collect()
}

fn random_element(rng: &mut StdRng, size: usize) -> MetabelianElement {
    let row = (0..size)
        .map(|_| {
            let deg = rng.random_range(0..=2);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.random_range(-3..=3)).collect();
            Laurent::new(Poly::from_int_coeffs(&coeffs), rng.random_range(-2..=2))
        })
        .collect();
    MetabelianElement::new(row, rng.random_range(-5..=5))
}

/// Add a random Laurent combination of the rows of `A(t)` to the module part.
fn add_row_span_element(
    rng: &mut StdRng,
    seifert: &SeifertData,
    g: &MetabelianElement,
) -> MetabelianElement {
    let a = alexander_matrix(seifert);
    let size = seifert.size();
    let mut row = g.row().to_vec();
    for i in 0..size {
        if rng.random_range(0..3) != 0 {
            continue;
        }
        let c = Laurent::new(
            Poly::from_int_coeffs(&[rng.random_range(-2..=2), rng.random_range(-2..=2)]),
            rng.random_range(-1..=1),
        );
        if c.is_zero() {
            continue;
        }
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = slot.add(&c.mul_poly(a.matrix().at(i, j)));
        }
    }
    MetabelianElement::new(row, g.t_exp())
}

/// Outcome of [`RepBuilder::verify_homomorphism`].
#[derive(Clone, Debug)]
pub struct HomCheck {
    pub passed: bool,
    pub trials: u32,
    pub failed_at: Option<u32>,
    pub witness: Option<String>,
}

impl HomCheck {
    fn pass(trials: u32) -> Self {
        HomCheck {
            passed: true,
            trials,
            failed_at: None,
            witness: None,
        }
    }

    fn failure(trial: u32, trials: u32, witness: String) -> Self {
        HomCheck {
            passed: false,
            trials,
            failed_at: Some(trial),
            witness: Some(witness),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::obstruction::{build_obstruction_system, solution_basis};

    fn trefoil_builder(level: u32) -> RepBuilder {
        let s = corpus::trefoil();
        let f = Poly::from_int_coeffs(&[1, -1, 1]);
        let sys = build_obstruction_system(&s, &f, level).unwrap();
        let branches = solution_basis(&sys);
        RepBuilder::from_solution(&s, sys.field(), level, &branches[0].value[0]).unwrap()
    }

    #[test]
    fn laurent_normalization() {
        let l = Laurent::new(Poly::from_int_coeffs(&[0, 0, 2, 1]), -1);
        assert_eq!(l.poly(), &Poly::from_int_coeffs(&[2, 1]));
        assert_eq!(l.shift(), 1);
    }

    #[test]
    fn semidirect_law() {
        let size = 2;
        let e1 = MetabelianElement::generator(size, 0);
        let e2 = MetabelianElement::generator(size, 1);
        let t = MetabelianElement::meridian(size);

        // (y, 0)(0, k) = (y, k)
        let g = semidirect_mul(&e1, &t);
        assert_eq!(g.row(), e1.row());
        assert_eq!(g.t_exp(), 1);

        // (0, 1)(e1, 0) = (t e1, 1)
        let g = semidirect_mul(&t, &e1);
        assert_eq!(g.row()[0], Laurent::new(Poly::one(), 1));
        assert_eq!(g.t_exp(), 1);

        // (e1, 1)(e2, -1) = (e1 + t e2, 0)
        let a = MetabelianElement::new(e1.row().to_vec(), 1);
        let b = MetabelianElement::new(e2.row().to_vec(), -1);
        let g = semidirect_mul(&a, &b);
        assert_eq!(g.t_exp(), 0);
        assert_eq!(g.row()[0], Laurent::one());
        assert_eq!(g.row()[1], Laurent::new(Poly::one(), 1));
    }

    #[test]
    #[should_panic(expected = "size mismatch")]
    fn semidirect_size_mismatch() {
        let a = MetabelianElement::identity(2);
        let b = MetabelianElement::identity(4);
        let _ = semidirect_mul(&a, &b);
    }

    #[test]
    fn phi_extend_on_generators() {
        let b = trefoil_builder(3);
        for i in 0..2 {
            let v = b.phi_extend(MetabelianElement::generator(2, i).row());
            assert_eq!(v.len(), 2);
            for (j, e) in v.iter().enumerate() {
                assert_eq!(e, b.phi().at(i, j));
            }
        }
    }

    #[test]
    fn phi_extend_twist_by_t() {
        // F(t e_i) = a * F(e_i) * J^{-1}
        let b = trefoil_builder(3);
        let row_t = vec![Laurent::new(Poly::one(), 1), Laurent::zero()];
        let lhs = b.phi_extend(&row_t);
        let base: Vec<NFElement> = vec![b.phi().at(0, 0).clone(), b.phi().at(0, 1).clone()];
        let jinv = b.jordan_embedded(-1);
        let alpha = b.field().root();
        let rhs: Vec<NFElement> = row_times_mat(&base, &jinv, b.field())
            .iter()
            .map(|e| e * &alpha)
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_extend_kills_presentation_rows() {
        let b = trefoil_builder(3);
        let a = alexander_matrix(&corpus::trefoil());
        for i in 0..2 {
            let row: Vec<Laurent> = (0..2)
                .map(|j| Laurent::new(a.matrix().at(i, j).clone(), 0))
                .collect();
            for e in b.phi_extend(&row) {
                assert!(e.is_zero(), "presentation row {i} not killed");
            }
        }
    }

    #[test]
    fn identity_maps_to_identity() {
        let b = trefoil_builder(3);
        let rep = b.build_rep(&MetabelianElement::identity(2));
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert!(rep.entries().at(i, j).is_one());
                } else {
                    assert!(rep.entries().at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn meridian_image_is_block_diagonal() {
        let b = trefoil_builder(3);
        let rep = b.build_rep(&MetabelianElement::meridian(2));
        assert_eq!(rep.entries().at(0, 0), &b.field().root());
        assert!(rep.entries().at(0, 1).is_zero());
        assert!(rep.entries().at(0, 2).is_zero());
        let j = jordan_power(2, 1);
        for i in 0..2 {
            for jj in 0..2 {
                assert_eq!(
                    rep.entries().at(i + 1, jj + 1),
                    &b.field().from_rat(j.at(i, jj).clone())
                );
            }
        }
    }

    #[test]
    fn lower_block_ignores_module_part() {
        let b = trefoil_builder(3);
        let mut g = MetabelianElement::generator(2, 0);
        g = MetabelianElement::new(g.row().to_vec(), -3);
        let rep = b.build_rep(&g);
        let expected = embed_mat(b.field(), &jordan_power(2, -3));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rep.entries().at(i + 1, j + 1), expected.at(i, j));
            }
        }
        assert_eq!(rep.entries().at(0, 0), &b.alpha_pow(-3));
    }

    #[test]
    fn rep_is_triangular_with_unit_diagonal_power() {
        // triangularity forces det = a^k: check zeros below the diagonal and
        // the diagonal product directly
        let b = trefoil_builder(4);
        let g = MetabelianElement::new(
            vec![
                Laurent::new(Poly::from_int_coeffs(&[2, -1]), 1),
                Laurent::one(),
            ],
            -3,
        );
        let rep = b.build_rep(&g);
        let n = rep.size();
        for i in 0..n {
            for j in 0..i {
                assert!(rep.entries().at(i, j).is_zero());
            }
        }
        assert_eq!(rep.entries().at(0, 0), &b.alpha_pow(-3));
        for i in 1..n {
            assert!(rep.entries().at(i, i).is_one());
        }
    }

    #[test]
    fn module_images_commute() {
        let b = trefoil_builder(3);
        let g1 = MetabelianElement::generator(2, 0);
        let g2 = MetabelianElement::generator(2, 1);
        let r1 = b.build_rep(&g1);
        let r2 = b.build_rep(&g2);
        assert_eq!(r1.mul(&r2), r2.mul(&r1));
    }

    #[test]
    fn homomorphism_check_passes() {
        for level in 2..=4 {
            let b = trefoil_builder(level);
            let check = b.verify_homomorphism(50, 42);
            assert!(check.passed, "level {level}: {:?}", check.witness);
        }
    }

    #[test]
    fn zero_solution_passes() {
        let s = corpus::trefoil();
        let f = Poly::from_int_coeffs(&[1, -1, 1]);
        let field = NumberField::new(f).unwrap();
        let phi = Mat::from_fn(2, 2, |_, _| field.zero());
        let b = RepBuilder::new(&s, &field, 3, phi).unwrap();
        assert!(b.verify_homomorphism(25, 1).passed);
    }

    #[test]
    fn corrupted_phi_fails_with_witness() {
        let good = trefoil_builder(3);
        let mut phi = good.phi().clone();
        let bumped = &phi.at(0, 0).clone() + &good.field().one();
        *phi.at_mut(0, 0) = bumped;
        assert_eq!(
            RepBuilder::new(&corpus::trefoil(), good.field(), 3, phi.clone()).unwrap_err(),
            MetabelianError::NotASolution
        );
        let bad = RepBuilder::new_unchecked(&corpus::trefoil(), good.field(), 3, phi).unwrap();
        let check = bad.verify_homomorphism(100, 7);
        assert!(!check.passed);
        assert!(check.witness.is_some());
    }
}

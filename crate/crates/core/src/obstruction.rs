//! The obstruction filtration.
//!
//! For a root-class modulus `f` of the Alexander polynomial and a level
//! `n >= 2`, the unknown is a `2g x (n-1)` array `F = (phi_j(e_i))` over
//! `K = Q[x]/(f)`, subject to the linear condition
//!
//! ```text
//! S^T F J = a S F,        J = J_{n-1} unipotent Jordan, a = class of x,
//! ```
//!
//! the requirement that the row family extends to a twisted-equivariant map
//! on the module presented by `S^T - t S`. The solution dimension `d_n` and
//! the rank `cbar_n` of its first-column projection are weakly monotone in
//! `n`, and the successive drops of `cbar_n` recover the exponent multiset of
//! the cyclic summands at each root of `f`.

use crate::linalg::{nf_nullspace, nf_rank, try_nullspace, try_rank, Mat};
use crate::numfield::{run_with_splitting, BranchOutcome, NFElement, NumberField, SplitEvent};
use crate::poly::{Poly, Rat};
use crate::seifert::{
    alexander_matrix, alexander_polynomial, cmp_factor, root_classes, NormalizedAlexanderPoly,
    SeifertData,
};
use crate::snf::InvariantFactors;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("factor {factor} does not divide the alexander polynomial {delta}")]
    FactorNotDividing { factor: String, delta: String },
    #[error("filtration for {factor} did not terminate by level {cap}")]
    CapExceeded { factor: String, cap: u32 },
    #[error("exponent multiset {got:?} inconsistent with multiplicity {multiplicity}")]
    InconsistentExponents { multiplicity: u32, got: Vec<u32> },
    #[error(transparent)]
    Seifert(#[from] crate::seifert::SeifertError),
}

/// Generalized binomial coefficient `k(k-1)...(k-p+1) / p!` for integer `k`.
pub fn binomial(k: i64, p: u32) -> Rat {
    let mut num = BigInt::one();
    for i in 0..i64::from(p) {
        num *= BigInt::from(k - i);
    }
    let mut den = BigInt::one();
    for i in 1..=i64::from(p) {
        den *= BigInt::from(i);
    }
    Rat::new(num, den)
}

/// `k`-th power of the unipotent Jordan block of the given size, for any
/// integer `k`: entry `(i, i+p)` is `binomial(k, p)`.
pub fn jordan_power(size: usize, k: i64) -> Mat<Rat> {
    Mat::from_fn(size, size, |i, j| {
        if j >= i {
            binomial(k, (j - i) as u32)
        } else {
            Rat::zero()
        }
    })
}

/// Embed a rational matrix into a number field.
pub fn embed_mat(field: &NumberField, m: &Mat<Rat>) -> Mat<NFElement> {
    m.map(|c| field.from_rat(c.clone()))
}

/// Coefficient matrix of `F -> P F J - Q F` on the flattened unknowns
/// `F[k][l] -> index k*width + l`, using the 0/1 structure of `J`.
pub fn twisted_equivariance_system(
    p: &Mat<NFElement>,
    q: &Mat<NFElement>,
    width: usize,
    field: &NumberField,
) -> Mat<NFElement> {
    let m = p.rows();
    assert_eq!(p.cols(), m);
    assert_eq!((q.rows(), q.cols()), (m, m));
    Mat::from_fn(m * width, m * width, |row, col| {
        let (i, j) = (row / width, row % width);
        let (k, l) = (col / width, col % width);
        if l == j {
            p.at(i, k) - q.at(i, k)
        } else if l + 1 == j {
            p.at(i, k).clone()
        } else {
            field.zero()
        }
    })
}

/// The level-`n` linear system attached to a Seifert matrix and a root-class
/// quotient.
#[derive(Clone, Debug)]
pub struct ObstructionSystem {
    field: NumberField,
    level: u32,
    size: usize,
    matrix: Mat<NFElement>,
}

impl ObstructionSystem {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Row count of the Seifert matrix (2g).
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn width(&self) -> usize {
        self.level as usize - 1
    }

    pub fn matrix(&self) -> &Mat<NFElement> {
        &self.matrix
    }
}

/// Build the system matrix over an arbitrary quotient of a root-class field.
fn seifert_system(s: &SeifertData, field: &NumberField, n: u32) -> Mat<NFElement> {
    assert!(n >= 2);
    let width = n as usize - 1;
    let alpha = field.root();
    let sr = s.rational();
    let p = Mat::from_fn(s.size(), s.size(), |i, k| {
        field.from_rat(sr.at(k, i).clone())
    });
    let q = Mat::from_fn(s.size(), s.size(), |i, k| {
        &alpha * &field.from_rat(sr.at(i, k).clone())
    });
    twisted_equivariance_system(&p, &q, width, field)
}

/// Public constructor: checks that `f` is a monic squarefree divisor of the
/// Alexander polynomial before building the system.
pub fn build_obstruction_system(
    s: &SeifertData,
    f: &Poly,
    n: u32,
) -> Result<ObstructionSystem, ObstructionError> {
    assert!(n >= 2, "level must be at least 2");
    let delta = alexander_polynomial(&alexander_matrix(s))?;
    if !delta.delta().divisible_by(f) {
        return Err(ObstructionError::FactorNotDividing {
            factor: f.to_string(),
            delta: delta.delta().to_string(),
        });
    }
    let field = NumberField::new(f.clone()).expect("root-class modulus is monic squarefree");
    Ok(ObstructionSystem {
        matrix: seifert_system(s, &field, n),
        field,
        level: n,
        size: s.size(),
    })
}

/// Nullspace basis of the system, per branch.
pub fn solution_basis(sys: &ObstructionSystem) -> Vec<BranchOutcome<Vec<Vec<NFElement>>>> {
    nf_nullspace(&sys.field, &sys.matrix)
}

/// Full solution dimension `d_n`, per branch.
pub fn solution_dim(sys: &ObstructionSystem) -> Vec<BranchOutcome<usize>> {
    solution_basis(sys)
        .into_iter()
        .map(|b| BranchOutcome {
            field: b.field,
            splits: b.splits,
            value: b.value.len(),
        })
        .collect()
}

/// The first-column rows of a flattened solution basis: entry `(b, k)` is the
/// `phi_1(e_k)` component of basis vector `b`.
fn phi1_matrix(
    basis: &[Vec<NFElement>],
    size: usize,
    width: usize,
    field: &NumberField,
) -> Mat<NFElement> {
    Mat::from_fn(basis.len(), size, |b, k| {
        basis[b]
            .get(k * width)
            .cloned()
            .unwrap_or_else(|| field.zero())
    })
}

/// Dimension `cbar_n` of the image of the solution space under projection to
/// the first column, computed as the rank of the stacked projections of a
/// basis. The reported cocycle-space dimension is `1 + cbar_n`.
pub fn phi1_projection_dim(
    sys: &ObstructionSystem,
    basis: &[Vec<NFElement>],
) -> Vec<BranchOutcome<usize>> {
    phi1_dim_of_basis(basis, sys.size, sys.width(), &sys.field)
}

/// Same projection rank for a basis of any flattened equivariance system
/// with `size` module generators and `width` target columns.
pub fn phi1_dim_of_basis(
    basis: &[Vec<NFElement>],
    size: usize,
    width: usize,
    fallback_field: &NumberField,
) -> Vec<BranchOutcome<usize>> {
    let field = basis
        .first()
        .map(|v| v[0].field().clone())
        .unwrap_or_else(|| fallback_field.clone());
    let m = phi1_matrix(basis, size, width, &field);
    nf_rank(&field, &m)
}

/// One level of the filtration: the full solution dimension and the
/// first-column projection dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    pub n: u32,
    pub solution_dim: usize,
    pub phi1_dim: usize,
}

impl LevelRecord {
    /// Dimension of the cocycle-level space at this level (the coboundary
    /// line contributes the constant 1).
    pub fn cocycle_dim(&self) -> usize {
        self.phi1_dim + 1
    }
}

/// Filtration data for one branch modulus of a root class.
#[derive(Clone, Debug)]
pub struct FiltrationBranch {
    pub modulus: Poly,
    pub splits: Vec<SplitEvent>,
    pub levels: Vec<LevelRecord>,
    pub exponents: Vec<u32>,
}

impl FiltrationBranch {
    /// First level with vanishing projection dimension.
    pub fn termination_level(&self) -> u32 {
        self.levels.last().map(|r| r.n).unwrap_or(2)
    }
}

/// Filtration data for one squarefree factor of the Alexander polynomial.
#[derive(Clone, Debug)]
pub struct RootClassFiltration {
    pub factor: Poly,
    pub multiplicity: u32,
    pub branches: Vec<FiltrationBranch>,
}

/// Complete filtration run over every root class of a knot.
#[derive(Clone, Debug)]
pub struct KnotFiltration {
    pub name: String,
    pub delta: NormalizedAlexanderPoly,
    pub classes: Vec<RootClassFiltration>,
}

/// Recover the exponent multiset from the projection-dimension sequence:
/// the count of exponents equal to `e` is `cbar_{e+1} - cbar_{e+2}`.
/// Fails if the recovered multiset does not sum to the factor multiplicity.
pub fn decompose_from_filtration(
    levels: &[LevelRecord],
    multiplicity: u32,
) -> Result<Vec<u32>, ObstructionError> {
    let cbar = |n: u32| -> usize {
        levels
            .iter()
            .find(|r| r.n == n)
            .map(|r| r.phi1_dim)
            .unwrap_or(0)
    };
    let mut exponents = Vec::new();
    let mut sum = 0u64;
    for e in 1..=multiplicity {
        let hi = cbar(e + 1);
        let lo = cbar(e + 2);
        let count = hi
            .checked_sub(lo)
            .ok_or_else(|| ObstructionError::InconsistentExponents {
                multiplicity,
                got: vec![],
            })?;
        for _ in 0..count {
            exponents.push(e);
            sum += u64::from(e);
        }
    }
    let count_ok = exponents.len() == cbar(2);
    if sum != u64::from(multiplicity) || !count_ok {
        return Err(ObstructionError::InconsistentExponents {
            multiplicity,
            got: exponents,
        });
    }
    Ok(exponents)
}

/// Run the filtration for every root class: iterate `n = 2, 3, ...` until the
/// projection dimension vanishes, re-running per branch on modulus splits.
/// The cap defaults to `multiplicity + 2`, past which a nonzero projection
/// dimension is an internal error.
pub fn run_filtration(s: &SeifertData) -> Result<KnotFiltration, ObstructionError> {
    run_filtration_capped(s, None)
}

pub fn run_filtration_capped(
    s: &SeifertData,
    max_n: Option<u32>,
) -> Result<KnotFiltration, ObstructionError> {
    let delta = alexander_polynomial(&alexander_matrix(s))?;
    let rc = root_classes(&delta);
    let mut classes = Vec::new();
    for (factor, multiplicity) in rc.classes() {
        let cap = max_n.unwrap_or(multiplicity + 2);
        let field = NumberField::new(factor.clone()).expect("root-class modulus");
        let outcomes = run_with_splitting(&field, |k| {
            branch_filtration(s, k, *multiplicity, cap, factor)
        })?;
        let branches = outcomes
            .into_iter()
            .map(|b| FiltrationBranch {
                modulus: b.field.modulus().clone(),
                splits: b.splits,
                levels: b.value.0,
                exponents: b.value.1,
            })
            .collect();
        classes.push(RootClassFiltration {
            factor: factor.clone(),
            multiplicity: *multiplicity,
            branches,
        });
    }
    Ok(KnotFiltration {
        name: s.name().to_string(),
        delta,
        classes,
    })
}

type BranchData = (Vec<LevelRecord>, Vec<u32>);

fn branch_filtration(
    s: &SeifertData,
    field: &NumberField,
    multiplicity: u32,
    cap: u32,
    factor: &Poly,
) -> Result<Result<BranchData, SplitEvent>, ObstructionError> {
    let mut levels = Vec::new();
    let mut terminated = false;
    for n in 2..=cap {
        let sys = seifert_system(s, field, n);
        let basis = match try_nullspace(field, &sys) {
            Ok(b) => b,
            Err(split) => return Ok(Err(split)),
        };
        let width = n as usize - 1;
        let proj = phi1_matrix(&basis, s.size(), width, field);
        let phi1_dim = match try_rank(&proj) {
            Ok(r) => r,
            Err(split) => return Ok(Err(split)),
        };
        levels.push(LevelRecord {
            n,
            solution_dim: basis.len(),
            phi1_dim,
        });
        if phi1_dim == 0 {
            terminated = true;
            break;
        }
    }
    if !terminated {
        return Err(ObstructionError::CapExceeded {
            factor: factor.to_string(),
            cap,
        });
    }
    let exponents = decompose_from_filtration(&levels, multiplicity)?;
    Ok(Ok((levels, exponents)))
}

/// The canonical twisted-equivariant family on a single cyclic module of
/// exponent `q`, evaluated on the basis `e_j = [(t-a)^j]`, `j = 0..q-1`:
/// the start row is the unit vector at index `max(0, n-1-q)` and
/// `row_j = a^j * row_0 * (J^{-1} - I)^j`. For `2 <= n <= q+1` the start row
/// is `(1, 0, ..., 0)` and the first component is nonzero; for `n > q+1`
/// every first component vanishes.
pub fn cyclic_phi(q: u32, n: u32, field: &NumberField) -> Vec<Vec<NFElement>> {
    assert!(n >= 2 && q >= 1);
    let width = n as usize - 1;
    let start_idx = width.saturating_sub(q as usize);
    let step = embed_mat(field, &(&jordan_power(width, -1) - &jordan_power(width, 0)));
    let alpha = field.root();
    let mut rows = Vec::with_capacity(q as usize);
    let mut row: Vec<NFElement> = (0..width)
        .map(|i| {
            if i == start_idx {
                field.one()
            } else {
                field.zero()
            }
        })
        .collect();
    rows.push(row.clone());
    for _ in 1..q {
        // row <- alpha * row * (J^{-1} - I)
        let mut next = vec![field.zero(); width];
        for (j, acc) in next.iter_mut().enumerate() {
            for (i, r) in row.iter().enumerate() {
                if step.at(i, j).is_zero() {
                    continue;
                }
                *acc = &*acc + &(r * step.at(i, j));
            }
            *acc = &*acc * &alpha;
        }
        row = next;
        rows.push(row.clone());
    }
    rows
}

/// The equivariance system on a single cyclic module of exponent `q`: the
/// action matrix sends `e_j` to `a e_j + e_{j+1}` (and `e_{q-1}` to
/// `a e_{q-1}`). Its nullspace dimension is the brute-force value of the
/// module Hom dimension `min(q, n-1)`.
pub fn cyclic_equivariance_system(q: u32, n: u32, field: &NumberField) -> Mat<NFElement> {
    assert!(n >= 2 && q >= 1);
    let width = n as usize - 1;
    let qq = q as usize;
    let alpha = field.root();
    let action = Mat::from_fn(qq, qq, |i, k| {
        if k == i {
            alpha.clone()
        } else if k == i + 1 {
            field.one()
        } else {
            field.zero()
        }
    });
    let scaled_id = Mat::from_fn(
        qq,
        qq,
        |i, k| {
            if k == i {
                alpha.clone()
            } else {
                field.zero()
            }
        },
    );
    twisted_equivariance_system(&action, &scaled_id, width, field)
}

/// Where a decomposition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Filtration,
    Oracle,
}

/// Factor-to-exponent-multiset mapping, sorted by factor for determinism.
#[derive(Clone, Debug)]
pub struct Decomposition {
    provenance: Provenance,
    entries: Vec<(Poly, Vec<u32>)>,
}

impl Decomposition {
    pub fn new(provenance: Provenance, mut entries: Vec<(Poly, Vec<u32>)>) -> Self {
        entries.sort_by(|a, b| cmp_factor(&a.0, &b.0));
        for (_, exps) in &mut entries {
            exps.sort_unstable();
        }
        Decomposition {
            provenance,
            entries,
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn entries(&self) -> &[(Poly, Vec<u32>)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Identical factor -> multiset mappings (provenance ignored).
    pub fn agrees_with(&self, other: &Decomposition) -> bool {
        self.entries == other.entries
    }

    /// Exponents of each invariant factor at every given modulus.
    pub fn from_oracle(inv: &InvariantFactors, factors: &[Poly]) -> Self {
        let entries = factors
            .iter()
            .map(|f| (f.clone(), crate::snf::local_exponents(inv, f)))
            .collect();
        Decomposition::new(Provenance::Oracle, entries)
    }
}

impl KnotFiltration {
    /// Assemble the factor -> exponents mapping, keyed by branch modulus.
    pub fn decomposition(&self) -> Decomposition {
        let entries = self
            .classes
            .iter()
            .flat_map(|c| {
                c.branches
                    .iter()
                    .map(|b| (b.modulus.clone(), b.exponents.clone()))
            })
            .collect();
        Decomposition::new(Provenance::Filtration, entries)
    }

    /// All branch moduli, in report order.
    pub fn branch_moduli(&self) -> Vec<Poly> {
        self.classes
            .iter()
            .flat_map(|c| c.branches.iter().map(|b| b.modulus.clone()))
            .collect()
    }
}

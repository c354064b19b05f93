//! Arithmetic in `Q[x]/(f)` for a monic squarefree modulus `f`.
//!
//! The modulus is allowed to be reducible: full factorization over `Q` is
//! never performed. Instead, inverting a zero divisor surfaces a nontrivial
//! factor of the modulus as a [`SplitEvent`], and the enclosing computation
//! is re-run in each branch quotient (dynamic evaluation). Every element is
//! stored fully reduced, so equality is structural.

use crate::poly::{Poly, Rat};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("modulus must be monic")]
    NotMonic,
    #[error("modulus must have degree >= 1")]
    ConstantModulus,
    #[error("modulus must be squarefree")]
    NotSquarefree,
}

/// The quotient ring `Q[x]/(f)`, `f` monic squarefree of degree >= 1.
#[derive(Clone)]
pub struct NumberField {
    modulus: Arc<Poly>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn new(modulus: Poly) -> Result<Self, FieldError> {
        if modulus.is_zero() || modulus.is_constant() {
            return Err(FieldError::ConstantModulus);
        }
        if !modulus.is_monic() {
            return Err(FieldError::NotMonic);
        }
        if !modulus.is_squarefree() {
            return Err(FieldError::NotSquarefree);
        }
        Ok(NumberField {
            modulus: Arc::new(modulus),
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The element represented by `rep`, reduced modulo the modulus.
    pub fn element(&self, rep: Poly) -> NFElement {
        let rep = rep.divrem(&self.modulus).1;
        NFElement {
            field: self.clone(),
            rep,
        }
    }

    pub fn from_rat(&self, c: Rat) -> NFElement {
        self.element(Poly::constant(c))
    }

    pub fn zero(&self) -> NFElement {
        self.element(Poly::zero())
    }

    pub fn one(&self) -> NFElement {
        self.element(Poly::one())
    }

    /// The residue class of `x` — the symbolic root of the modulus.
    pub fn root(&self) -> NFElement {
        self.element(Poly::variable())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.modulus.display('x'))
    }
}

/// A nontrivial coprime factorization of a modulus, discovered while trying
/// to invert a zero divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEvent {
    pub parent: Poly,
    pub factors: (Poly, Poly),
}

impl SplitEvent {
    fn new(parent: Poly, a: Poly, b: Poly) -> Self {
        debug_assert!(a.is_monic() && b.is_monic());
        debug_assert!(!a.is_constant() && !b.is_constant());
        debug_assert!(a.gcd(&b).is_one());
        debug_assert_eq!(&a * &b, parent);
        SplitEvent {
            parent,
            factors: (a, b),
        }
    }

    /// The two branch quotients (squarefree since the parent is).
    pub fn branch_fields(&self) -> (NumberField, NumberField) {
        let a = NumberField::new(self.factors.0.clone()).expect("factor of squarefree modulus");
        let b = NumberField::new(self.factors.1.clone()).expect("factor of squarefree modulus");
        (a, b)
    }
}

/// An element of a [`NumberField`], stored fully reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElement {
    field: NumberField,
    rep: Poly,
}

impl NFElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    /// Reinterpret in a branch field whose modulus divides the current one.
    pub fn reduce_into(&self, field: &NumberField) -> NFElement {
        debug_assert!(self.field.modulus().divisible_by(field.modulus()));
        field.element(self.rep.clone())
    }

    /// Multiplicative inverse, or the modulus factorization exposed by a
    /// zero-divisor. Panics on zero.
    pub fn invert(&self) -> Result<NFElement, SplitEvent> {
        assert!(!self.is_zero(), "inversion of zero");
        let modulus = self.field.modulus();
        let (g, u, _) = self.rep.extended_gcd(modulus);
        if g.is_one() {
            // u * rep = 1 (mod modulus)
            return Ok(self.field.element(u));
        }
        let cofactor = modulus.div_exact(&g);
        Err(SplitEvent::new(modulus.clone(), g, cofactor))
    }

    /// Integer power; negative exponents invert first (and may split).
    pub fn pow_i64(&self, k: i64) -> Result<NFElement, SplitEvent> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Render with variable `a` (the symbolic root).
    pub fn display(&self) -> impl fmt::Display + '_ {
        self.rep.display('a')
    }

    fn assert_same_field(&self, other: &NFElement) {
        assert!(
            self.field == other.field,
            "mixed moduli: {:?} vs {:?}",
            self.field,
            other.field
        );
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.display('a'))
    }
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, rhs: &NFElement) -> NFElement {
        self.assert_same_field(rhs);
        NFElement {
            field: self.field.clone(),
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, rhs: &NFElement) -> NFElement {
        self.assert_same_field(rhs);
        NFElement {
            field: self.field.clone(),
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, rhs: &NFElement) -> NFElement {
        self.assert_same_field(rhs);
        self.field.element(&self.rep * &rhs.rep)
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement {
            field: self.field.clone(),
            rep: -&self.rep,
        }
    }
}

/// One branch of a computation under dynamic evaluation: the quotient it
/// finished in, the events that led there, and the branch value.
#[derive(Clone, Debug)]
pub struct BranchOutcome<T> {
    pub field: NumberField,
    pub splits: Vec<SplitEvent>,
    pub value: T,
}

/// Run `compute` over `field`, re-running it per branch whenever the modulus
/// splits. Branch order is deterministic: the first factor of each event is
/// explored first.
pub fn run_with_splitting<T, E>(
    field: &NumberField,
    compute: impl Fn(&NumberField) -> Result<Result<T, SplitEvent>, E>,
) -> Result<Vec<BranchOutcome<T>>, E> {
    let mut pending = vec![(field.clone(), Vec::new())];
    let mut done = Vec::new();
    while let Some((f, splits)) = pending.pop() {
        match compute(&f)? {
            Ok(value) => done.push(BranchOutcome {
                field: f,
                splits,
                value,
            }),
            Err(event) => {
                let (fa, fb) = event.branch_fields();
                let mut sa = splits.clone();
                sa.push(event.clone());
                let mut sb = splits;
                sb.push(event);
                // pushed in reverse so the first factor is popped first
                pending.push((fb, sb));
                pending.push((fa, sa));
            }
        }
    }
    Ok(done)
}

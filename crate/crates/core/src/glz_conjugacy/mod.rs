//! `GL(2, Z)` conjugacy for Anosov matrices and the R∞ decision for Sol
//! torus-bundle groups `Z² ⋊_A Z`.
//!
//! An automorphism of `Z² ⋊_A Z` can only have finite Reidemeister number if
//! it acts as `−id` on the base `Z`; its restriction `S` to the fibre then
//! satisfies `S·A·S⁻¹ = A⁻¹` (a *reverser*). The decision runs through:
//!
//! 1. `det A = −1`: no reverser can induce `−id`, so R∞.
//! 2. no reverser at all: R∞.
//! 3. a determinant +1 reverser exists (equivalently `A` is conjugate to a
//!    symmetric matrix): the automorphism it defines has `R = 2 + 2 = 4`.
//! 4. otherwise every reverser has determinant −1, trace 0, hence
//!    `det(I − S) = 0`, and the group has R∞.
//!
//! Reversers form the coset `Z(A)·S₁`, with `Z(A) = {±εⁿ}` the units of the
//! commutant lattice, so a determinant +1 reverser exists iff `det S₁ = 1` or
//! `det ε = −1`.

mod lattice;
mod oracle;

pub use lattice::{
    commutant_lattice, fundamental_pell4, fundamental_unit, has_det_minus_one_root, CommutantLattice,
    RootWitness, UnitGroup,
};
pub use oracle::{bruteforce_conjugator_search, ConjugatorBall, OracleWitness};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linear::{Cardinality, Int, Mat2};
use crate::modular_group::{cyclic_word_of, generator_s, outer_flip, CyclicWord, PslWord};
use crate::reidemeister::{reidemeister_lattice_2, reidemeister_sol, SolAut};

/// How a conjugator was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Rotation of cyclic words, determinant +1.
    Direct,
    /// Rotation against the `outer_flip` image, determinant −1.
    Flip,
    /// One of the fixed normal-form reversers `J`, `diag(1,−1)`, `(1 1; 0 −1)`.
    NormalForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugator {
    /// `P` with `P·a·P⁻¹ = b`.
    pub matrix: Mat2,
    pub det: i32,
    pub route: Route,
}

fn require_anosov(m: &Mat2) -> Result<()> {
    if m.is_anosov() {
        Ok(())
    } else {
        Err(Error::NotAnosov(m.to_string()))
    }
}

fn conjugates(p: &Mat2, a: &Mat2, b: &Mat2) -> bool {
    p.unit_det().is_some() && p * a == b * p
}

fn diag_flip() -> Mat2 {
    Mat2::new(1, 0, 0, -1)
}

/// All `r` with `rotate(w1, r) = w2`, paired with the word `x⁻¹` where `x = w1[..r]`.
fn rotations(w1: &CyclicWord, w2: &CyclicWord) -> Vec<PslWord> {
    if w1.len() != w2.len() {
        return Vec::new();
    }
    (0..w1.len())
        .filter(|&r| w1.rotate(r) == *w2)
        .map(|r| PslWord::from_letters(w1.word().letters()[..r].iter().copied()).inverse())
        .collect()
}

/// Word-method conjugacy for two hyperbolic matrices of determinant +1 with
/// equal trace.
fn conjugate_det_one(a: &Mat2, b: &Mat2) -> Result<Option<Conjugator>> {
    let (ca, ka, _) = cyclic_word_of(a)?;
    let (cb, kb, _) = cyclic_word_of(b)?;

    // a ≡ ka·ca·ka⁻¹, b ≡ kb·cb·kb⁻¹; if cb = x⁻¹·ca·x then P ≡ kb·x⁻¹·ka⁻¹.
    for x_inv in rotations(&ca, &cb) {
        let p = kb.concat(&x_inv).concat(&ka.inverse()).evaluate();
        if conjugates(&p, a, b) {
            return Ok(Some(Conjugator { matrix: p, det: 1, route: Route::Direct }));
        }
    }

    // D·a·D ≡ (s·ι(ka))·ι(ca)·(s·ι(ka))⁻¹ with ι = outer_flip.
    let flipped = CyclicWord::new(outer_flip(ca.word()))
        .ok_or_else(|| Error::Verification("outer_flip broke cyclic reduction".into()))?;
    let k_flip = PslWord::from_letters(std::iter::once(crate::modular_group::Letter::S))
        .concat(&outer_flip(&ka));
    for x_inv in rotations(&flipped, &cb) {
        let p = &kb.concat(&x_inv).concat(&k_flip.inverse()).evaluate() * &diag_flip();
        if conjugates(&p, a, b) {
            return Ok(Some(Conjugator { matrix: p, det: -1, route: Route::Flip }));
        }
    }
    Ok(None)
}

/// Decides `GL(2,Z)`-conjugacy of two Anosov matrices and returns a verified
/// conjugator `P` with `P·a·P⁻¹ = b`.
pub fn gl2z_conjugate(a: &Mat2, b: &Mat2) -> Result<Option<Conjugator>> {
    require_anosov(a)?;
    require_anosov(b)?;
    if a.det() != b.det() || a.trace() != b.trace() {
        return Ok(None);
    }
    if a.unit_det() == Some(1) {
        return conjugate_det_one(a, b);
    }
    // det −1: conjugators of a² to b² form a coset of Z(a²) = Z(a), and Z(a)
    // commutes with a, so a ~ b iff any conjugator of the squares works.
    let a2 = a * a;
    let b2 = b * b;
    Ok(conjugate_det_one(&a2, &b2)?.filter(|c| conjugates(&c.matrix, a, b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverserReport {
    pub exists: bool,
    /// `S₁` with `S₁·A·S₁⁻¹ = A⁻¹`.
    pub witness: Option<Mat2>,
    pub witness_det: Option<i32>,
    /// A determinant +1 reverser exists (A is conjugate to a symmetric matrix).
    pub symmetric_conjugate: bool,
    /// A determinant +1 reverser, when one exists.
    pub orientation_preserving: Option<Mat2>,
}

fn normal_form_reversers() -> [Mat2; 3] {
    [generator_s(), diag_flip(), Mat2::new(1, 1, 0, -1)]
}

pub fn find_reverser(a: &Mat2) -> Result<ReverserReport> {
    require_anosov(a)?;
    if a.unit_det() != Some(1) {
        return Err(Error::WrongDeterminant { expected: 1, found: a.det().to_string() });
    }
    let inv = a.inverse_unimodular()?;
    let found = match normal_form_reversers().into_iter().find(|s| conjugates(s, a, &inv)) {
        Some(s) => {
            let det = s.unit_det().unwrap();
            Some(Conjugator { matrix: s, det, route: Route::NormalForm })
        }
        None => gl2z_conjugate(a, &inv)?,
    };
    let Some(conj) = found else {
        return Ok(ReverserReport {
            exists: false,
            witness: None,
            witness_det: None,
            symmetric_conjugate: false,
            orientation_preserving: None,
        });
    };
    let s1 = conj.matrix;
    if !conjugates(&s1, a, &inv) || !s1.trace().is_zero() {
        return Err(Error::Verification(format!("reverser {s1} failed verification")));
    }
    let orientation_preserving = if conj.det == 1 {
        Some(s1.clone())
    } else {
        let units = fundamental_unit(&commutant_lattice(a)?)?;
        (units.det == -1).then(|| &units.unit * &s1)
    };
    if let Some(s) = &orientation_preserving {
        if !conjugates(s, a, &inv) || s.unit_det() != Some(1) || !s.trace().is_zero() {
            return Err(Error::Verification(format!("det +1 reverser {s} failed verification")));
        }
    }
    Ok(ReverserReport {
        exists: true,
        witness: Some(s1),
        witness_det: Some(conj.det),
        symmetric_conjugate: orientation_preserving.is_some(),
        orientation_preserving,
    })
}

/// Which branch of the Sol torus-bundle decision fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolClause {
    DetMinusOne,
    NotReversible,
    SymmetricConjugate,
    DetMinusOneRoot,
    /// Reversible, but only by determinant −1 matrices (types B₀ / C₀).
    ReversibleOrientationReversingOnly,
}

impl SolClause {
    pub fn code(self) -> &'static str {
        match self {
            SolClause::DetMinusOne => "det_minus_one",
            SolClause::NotReversible => "not_reversible",
            SolClause::SymmetricConjugate => "symmetric_conjugate",
            SolClause::DetMinusOneRoot => "det_minus_one_root",
            SolClause::ReversibleOrientationReversingOnly => "b0_c0_all_roots_det_plus_one",
        }
    }
}

/// Automorphism `(S, ε = −1)` of `Z² ⋊_A Z` together with its Reidemeister number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolCertificate {
    pub automorphism: Mat2,
    pub eps: i8,
    pub r_s: Cardinality,
    pub r_as: Cardinality,
    pub total: Cardinality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolVerdict {
    pub r_infinity: bool,
    pub clause: SolClause,
    pub certificate: Option<SolCertificate>,
}

fn certificate_for(a: &Mat2, s: &Mat2) -> Result<SolCertificate> {
    let phi = SolAut::new(s.clone(), -1, a.clone())?;
    let r_s = reidemeister_lattice_2(s);
    let r_as = reidemeister_lattice_2(&(a * s));
    let total = reidemeister_sol(&phi);
    if total != r_s.clone() + r_as.clone() || !total.is_finite() {
        return Err(Error::Verification(format!("certificate for {s} has R = {total}")));
    }
    Ok(SolCertificate { automorphism: s.clone(), eps: -1, r_s, r_as, total })
}

pub fn decide_sol_torus_bundle(a: &Mat2) -> Result<SolVerdict> {
    require_anosov(a)?;
    let r_inf = |clause| Ok(SolVerdict { r_infinity: true, clause, certificate: None });
    if a.unit_det() == Some(-1) {
        return r_inf(SolClause::DetMinusOne);
    }
    let report = find_reverser(a)?;
    if !report.exists {
        return r_inf(SolClause::NotReversible);
    }
    if let Some(s) = &report.orientation_preserving {
        let cert = certificate_for(a, s)?;
        if cert.total != Cardinality::finite(4) {
            return Err(Error::Verification(format!("symmetric certificate has R = {}", cert.total)));
        }
        return Ok(SolVerdict {
            r_infinity: false,
            clause: SolClause::SymmetricConjugate,
            certificate: Some(cert),
        });
    }
    // Reached only when no det +1 reverser exists, which already rules out a
    // det −1 root (its product with a det −1 reverser would be one).
    if let Some(root) = has_det_minus_one_root(a)? {
        let s1 = report.witness.as_ref().expect("reverser exists");
        let cert = certificate_for(a, &(s1 * &root.root))?;
        return Ok(SolVerdict { r_infinity: false, clause: SolClause::DetMinusOneRoot, certificate: Some(cert) });
    }
    r_inf(SolClause::ReversibleOrientationReversingOnly)
}

/// `|det(I − S)| = 0` for every determinant −1, trace 0 reverser; used to
/// illustrate why the last branch is R∞.
pub fn reverser_fixes_a_line(s: &Mat2) -> bool {
    s.unit_det() == Some(-1) && s.trace().is_zero() && (&Mat2::identity() - s).det() == Int::zero()
}

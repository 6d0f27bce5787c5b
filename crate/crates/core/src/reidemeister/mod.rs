//! Reidemeister numbers: lattice automorphisms, the addition formula for
//! `Z² ⋊_A Z`, the Hantzsche-Wendt check, and finite-group oracles.

mod finite;

pub use finite::{
    twisted_classes, twisted_classes_finite, AbelianGroup, FiniteGroup, FiniteGroupSpec, ModMatrix,
    SolQuotient, QUOTIENT_LIMIT, TABLE_LIMIT,
};

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact_linear::{cokernel_order, Cardinality, Mat2, Mat3, MatN};

/// An automorphism of `Z²` or `Z³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeAut {
    Rank2(Mat2),
    Rank3(Mat3),
}

impl LatticeAut {
    pub fn rank2(m: Mat2) -> Result<Self> {
        match m.unit_det() {
            Some(_) => Ok(LatticeAut::Rank2(m)),
            None => Err(Error::NotUnimodular(m.det().to_string())),
        }
    }

    pub fn rank3(m: Mat3) -> Result<Self> {
        if m.det().abs() == 1.into() {
            Ok(LatticeAut::Rank3(m))
        } else {
            Err(Error::NotUnimodular(m.det().to_string()))
        }
    }

    pub fn matrix(&self) -> MatN {
        match self {
            LatticeAut::Rank2(m) => m.into(),
            LatticeAut::Rank3(m) => m.into(),
        }
    }
}

fn identity_minus(m: &MatN) -> MatN {
    let n = m.dim();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| MatN::identity(n).get(i, j) - m.get(i, j)).collect())
        .collect();
    MatN::from_rows(rows).expect("square")
}

/// `|coker(I − M)|`, which is `|det(I − M)|` or infinite.
pub fn reidemeister_lattice(phi: &LatticeAut) -> Cardinality {
    cokernel_order(&identity_minus(&phi.matrix()))
}

/// `|det(I − S)|` for a 2×2 matrix, infinite when zero.
pub fn reidemeister_lattice_2(s: &Mat2) -> Cardinality {
    cokernel_order(&identity_minus(&s.into()))
}

/// An automorphism of `Z² ⋊_A Z` acting by `S` on the fibre and by `eps` on the base.
/// Translation parts are not recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolAut {
    s: Mat2,
    eps: i8,
    base: Mat2,
}

impl SolAut {
    /// Requires `S·A·S⁻¹ = A^eps`.
    pub fn new(s: Mat2, eps: i8, base: Mat2) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidAutomorphism(format!("eps must be ±1, got {eps}")));
        }
        let s_inv = s
            .inverse_unimodular()
            .map_err(|_| Error::InvalidAutomorphism(format!("{s} is not unimodular")))?;
        let target = base
            .pow(eps.into())
            .map_err(|_| Error::InvalidAutomorphism(format!("base {base} is not unimodular")))?;
        if &(&s * &base) * &s_inv != target {
            return Err(Error::InvalidAutomorphism(format!("S·A·S⁻¹ ≠ A^{eps} for S = {s}")));
        }
        Ok(SolAut { s, eps, base })
    }

    pub fn fibre_map(&self) -> &Mat2 {
        &self.s
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn base(&self) -> &Mat2 {
        &self.base
    }
}

/// `R(S) + R(A·S)` when the base map is `−id`, infinite otherwise.
pub fn reidemeister_sol(phi: &SolAut) -> Cardinality {
    if phi.eps == 1 {
        return Cardinality::Infinite;
    }
    reidemeister_lattice_2(&phi.s) + reidemeister_lattice_2(&(&phi.base * &phi.s))
}

/// Twisted classes of the map induced by `phi` on `(Z/m)ⁿ`.
pub fn lattice_quotient_oracle(phi: &LatticeAut, modulus: u64) -> Result<u64> {
    let m = phi.matrix();
    let n = m.dim();
    let group = AbelianGroup::new(modulus, n)?;
    let reduced = ModMatrix::reduce(&m.rows(), modulus)?;
    let map = group.induced(&reduced);
    Ok(twisted_classes(&group, &map))
}

/// Twisted classes of the map `(v, i) ↦ (S·v, eps·i)` on `(Z/m)² ⋊ Z/k`.
///
/// Twisted classes of a quotient are images of those of the whole group, so
/// the count is a lower bound for `R(phi)`.
pub fn finite_quotient_sol_oracle(a: &Mat2, phi: &SolAut, modulus: u64) -> Result<u64> {
    if a != phi.base() {
        return Err(Error::InvalidAutomorphism(format!("automorphism is for base {}", phi.base())));
    }
    if modulus == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let group = SolQuotient::new(a, modulus)?;
    let s = ModMatrix::from_mat2(phi.fibre_map(), modulus)?;
    let am = ModMatrix::from_mat2(a, modulus)?;
    let target = if phi.eps() == 1 { am.clone() } else { (0..group.period() - 1).fold(ModMatrix::identity(2, modulus), |p, _| p.mul(&am)) };
    if s.mul(&am) != target.mul(&s) {
        return Err(Error::DoesNotDescend(modulus));
    }
    let k = group.period();
    let map = |x: usize| {
        let (v, i) = group.split(x);
        let j = if phi.eps() == 1 { i } else { (k - i) % k };
        group.join(&s.apply(&v), j)
    };
    Ok(twisted_classes(&group, &map))
}

/// Smallest `m ≤ max_modulus`, `m ≥ 2`, for which the Sol oracle runs.
pub fn smallest_valid_modulus(a: &Mat2, phi: &SolAut, max_modulus: u64) -> Result<(u64, u64)> {
    for m in 2..=max_modulus {
        match finite_quotient_sol_oracle(a, phi, m) {
            Ok(count) => return Ok((m, count)),
            Err(Error::DoesNotDescend(_) | Error::OrderNotFinite(_) | Error::QuotientTooLarge(..)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoValidQuotient(max_modulus))
}

/// The Hantzsche-Wendt automorphism `φ′` and its holonomy twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HantzscheWendtReport {
    pub phi_prime: Mat3,
    /// `(θ, R(θ·φ′))` for `θ = I` and the three sign matrices.
    pub lifts: Vec<(Mat3, Cardinality)>,
    pub total: Cardinality,
}

impl HantzscheWendtReport {
    pub fn r_phi_prime(&self) -> &Cardinality {
        &self.lifts[0].1
    }

    pub fn all_equal_two(&self) -> bool {
        self.lifts.iter().all(|(_, r)| *r == Cardinality::finite(2))
    }
}

pub fn hantzsche_wendt_automorphism() -> Mat3 {
    Mat3::from_i64([[0, 1, 0], [0, 0, -1], [1, 0, 0]])
}

pub fn holonomy_sign_matrices() -> [Mat3; 4] {
    [Mat3::identity(), Mat3::diag(1, -1, -1), Mat3::diag(-1, 1, -1), Mat3::diag(-1, -1, 1)]
}

pub fn verify_hantzsche_wendt() -> HantzscheWendtReport {
    let phi_prime = hantzsche_wendt_automorphism();
    let lifts: Vec<(Mat3, Cardinality)> = holonomy_sign_matrices()
        .into_iter()
        .map(|theta| {
            let twisted = &theta * &phi_prime;
            let r = reidemeister_lattice(&LatticeAut::Rank3(twisted));
            (theta, r)
        })
        .collect();
    let total = lifts.iter().map(|(_, r)| r.clone()).fold(Cardinality::finite(0), |acc, r| acc + r);
    HantzscheWendtReport { phi_prime, lifts, total }
}

/// `|det(I − M)|` as a machine integer, when finite and small.
pub fn lattice_value_u64(phi: &LatticeAut) -> Option<u64> {
    reidemeister_lattice(phi).as_finite().and_then(|x| x.to_u64())
}

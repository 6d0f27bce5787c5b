//! The ring of integer matrices commuting with a non-scalar `A`, and its unit group.
//!
//! For `A = (a b; c d)` the commutant in `M₂(Z)` is `Z·I ⊕ Z·M₁` with
//! `M₁ = (A − d·I)/g`, `g = gcd(b, c, a − d)`. It is an order in the real
//! quadratic field `Q(A)` when `A` is Anosov, so its units are `±εⁿ` for one
//! fundamental unit `ε`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linear::{Int, Mat2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantLattice {
    base: Mat2,
    g: Int,
    m1: Mat2,
    trace_m1: Int,
    det_m1: Int,
}

impl CommutantLattice {
    pub fn base(&self) -> &Mat2 {
        &self.base
    }

    pub fn gcd(&self) -> &Int {
        &self.g
    }

    /// The second basis element `M₁`; the first is `I`.
    pub fn m1(&self) -> &Mat2 {
        &self.m1
    }

    /// Discriminant `tr(M₁)² − 4·det(M₁)` of the norm form.
    pub fn discriminant(&self) -> Int {
        &self.trace_m1 * &self.trace_m1 - Int::from(4) * &self.det_m1
    }

    /// `x·I + y·M₁`.
    pub fn element(&self, x: &Int, y: &Int) -> Mat2 {
        &Mat2::scalar(x.clone()) + &self.m1.scale(y)
    }

    /// `det(x·I + y·M₁) = x² + tr(M₁)·x·y + det(M₁)·y²`.
    pub fn norm(&self, x: &Int, y: &Int) -> Int {
        x * x + &self.trace_m1 * x * y + &self.det_m1 * y * y
    }

    /// Coordinates of `m` in the basis `{I, M₁}`, if `m` lies in the lattice.
    pub fn coordinates(&self, m: &Mat2) -> Option<(Int, Int)> {
        // M₁ has a zero in the bottom-right corner, so x = m.d.
        let x = m.d.clone();
        let y = if !self.m1.b.is_zero() {
            exact_div(&m.b, &self.m1.b)?
        } else if !self.m1.c.is_zero() {
            exact_div(&m.c, &self.m1.c)?
        } else {
            exact_div(&(&m.a - &x), &self.m1.a)?
        };
        (self.element(&x, &y) == *m).then_some((x, y))
    }
}

fn exact_div(n: &Int, d: &Int) -> Option<Int> {
    let (q, r) = n.div_rem(d);
    r.is_zero().then_some(q)
}

pub fn commutant_lattice(a: &Mat2) -> Result<CommutantLattice> {
    if a.is_scalar() {
        return Err(Error::ScalarMatrix);
    }
    let a_minus_d = &a.a - &a.d;
    let g = a.b.gcd(&a.c).gcd(&a_minus_d);
    let m1 = Mat2 { a: &a_minus_d / &g, b: &a.b / &g, c: &a.c / &g, d: Int::zero() };
    let lattice = CommutantLattice {
        base: a.clone(),
        g,
        trace_m1: m1.trace(),
        det_m1: m1.det(),
        m1,
    };
    let probe = lattice.element(&Int::from(3), &Int::from(-2));
    if &probe * a != a * &probe {
        return Err(Error::Verification("commutant basis element does not commute".into()));
    }
    Ok(lattice)
}

/// Fundamental unit data: `unit^exponent = sign · A`, `exponent ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    pub x: Int,
    pub y: Int,
    pub unit: Mat2,
    pub det: i32,
    pub exponent: u64,
    pub sign: i32,
}

impl UnitGroup {
    /// Generator of the determinant +1 units modulo ±I: `ε` or `ε²`.
    pub fn det_one_generator(&self) -> Mat2 {
        if self.det == 1 {
            self.unit.clone()
        } else {
            &self.unit * &self.unit
        }
    }

    /// `εⁿ` for any integer `n`.
    pub fn power(&self, n: i64) -> Mat2 {
        self.unit.pow(n).expect("units are invertible")
    }
}

/// Smallest `(X, Y)`, `X, Y > 0`, with `X² − D·Y² = ±4` (smallest `Y`, then `X`).
///
/// These correspond to units `(X + Y√D)/2` of the order of discriminant `D`.
pub fn fundamental_pell4(disc: &Int) -> Result<(Int, Int)> {
    let four = Int::from(4);
    if disc < &Int::from(5) {
        return Err(Error::PellSearchExhausted(disc.to_string()));
    }
    let is_solution = |x: &Int, y: &Int| {
        let n = x * x - disc * y * y;
        n == four || n == -&four
    };

    for target in [disc - &four, disc + &four] {
        let r = target.sqrt();
        if &r * &r == target && r.is_positive() {
            return Ok((r, Int::one()));
        }
    }

    // Continued fraction of ω = (δ + √D)/2; for Y ≥ 2 every solution comes from
    // a convergent p/q of ω with X = 2p − δq, Y = q.
    let delta = disc.mod_floor(&Int::from(2));
    let s = disc.sqrt();
    let (mut p_num, mut q_den) = (delta.clone(), Int::from(2));
    let (mut p_prev, mut p_cur) = (Int::zero(), Int::one());
    let (mut q_prev, mut q_cur) = (Int::one(), Int::zero());
    const MAX_TERMS: usize = 4_000_000;
    for _ in 0..MAX_TERMS {
        let a = if q_den.is_positive() {
            (&p_num + &s).div_floor(&q_den)
        } else {
            (&p_num + &s + Int::one()).div_floor(&q_den)
        };
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        if q_cur > Int::one() {
            let x = Int::from(2) * &p_cur - &delta * &q_cur;
            if x.is_positive() && is_solution(&x, &q_cur) {
                return Ok((x, q_cur));
            }
        }
        p_num = &a * &q_den - &p_num;
        q_den = (disc - &p_num * &p_num) / &q_den;
    }

    // Never reached for desk-scale inputs; kept as an explicit bounded fallback.
    let mut y = Int::from(2);
    let limit = Int::from(1_000_000);
    while y <= limit {
        for target in [disc * &y * &y - &four, disc * &y * &y + &four] {
            let r = target.sqrt();
            if &r * &r == target {
                return Ok((r, y));
            }
        }
        y += 1;
    }
    Err(Error::PellSearchExhausted(disc.to_string()))
}

/// Fundamental unit of the commutant lattice, oriented so that a positive
/// power of it equals `±A`.
pub fn fundamental_unit(lattice: &CommutantLattice) -> Result<UnitGroup> {
    let a = lattice.base();
    if !a.is_anosov() {
        return Err(Error::NotAnosov(a.to_string()));
    }
    let disc = lattice.discriminant();
    let (big_x, big_y) = fundamental_pell4(&disc)?;
    let x = (&big_x - &lattice.trace_m1 * &big_y) / Int::from(2);
    let y = big_y;
    let eps = lattice.element(&x, &y);
    let det = eps.unit_det().ok_or_else(|| Error::Verification(format!("unit {eps} has det {}", eps.det())))?;

    let neg_a = -a;
    let bound = a.trace().abs() + Int::from(2);
    for candidate in [eps.clone(), eps.inverse_unimodular()?] {
        let mut power = candidate.clone();
        let mut m: u64 = 1;
        loop {
            if power == *a || power == neg_a {
                let sign = if power == *a { 1 } else { -1 };
                let (cx, cy) = lattice
                    .coordinates(&candidate)
                    .ok_or_else(|| Error::Verification("unit outside lattice".into()))?;
                return Ok(UnitGroup { x: cx, y: cy, unit: candidate, det, exponent: m, sign });
            }
            if power.trace().abs() > bound {
                break;
            }
            power = &power * &candidate;
            m += 1;
        }
    }
    Err(Error::Verification(format!("±A is not a power of the fundamental unit {eps}")))
}

/// A determinant −1 matrix `X` with `X^power = sign · A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootWitness {
    pub root: Mat2,
    pub power: u64,
    pub sign: i32,
}

/// Whether `A` or `−A` is a power of some determinant −1 matrix.
///
/// Such an `X` commutes with `A`, so it is a unit `±εʲ` of the commutant, and
/// `det X = −1` forces `det ε = −1`; conversely `ε` itself is then a witness.
pub fn has_det_minus_one_root(a: &Mat2) -> Result<Option<RootWitness>> {
    if !a.is_anosov() {
        return Err(Error::NotAnosov(a.to_string()));
    }
    if a.unit_det() != Some(1) {
        return Err(Error::WrongDeterminant { expected: 1, found: a.det().to_string() });
    }
    let units = fundamental_unit(&commutant_lattice(a)?)?;
    if units.det != -1 {
        return Ok(None);
    }
    let check = units.power(units.exponent as i64);
    if check != a.scale(&Int::from(units.sign)) {
        return Err(Error::Verification("root witness does not reproduce ±A".into()));
    }
    Ok(Some(RootWitness { root: units.unit, power: units.exponent, sign: units.sign }))
}

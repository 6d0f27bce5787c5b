//! Exact arithmetic on small integer matrices over unbounded integers.
//!
//! Everything here works on [`num_bigint::BigInt`]; Anosov powers leave the
//! 64-bit range after a few dozen steps, so there is no fixed-width path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;

/// A 2×2 integer matrix `(a b; c d)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl Mat2 {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>, d: impl Into<Int>) -> Self {
        Mat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::new(0, 0, 0, 0)
    }

    pub fn scalar(x: impl Into<Int>) -> Self {
        let x = x.into();
        Mat2 { a: x.clone(), b: Int::zero(), c: Int::zero(), d: x }
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.a.is_one()
    }

    pub fn scale(&self, k: &Int) -> Mat2 {
        Mat2 { a: &self.a * k, b: &self.b * k, c: &self.c * k, d: &self.d * k }
    }

    /// Determinant as ±1, or `None` when the matrix is not unimodular.
    pub fn unit_det(&self) -> Option<i32> {
        let det = self.det();
        if det.is_one() {
            Some(1)
        } else if (-&det).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    /// Exact inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Result<Mat2> {
        let det = self.unit_det().ok_or_else(|| Error::NotUnimodular(self.det().to_string()))?;
        let adj = Mat2 { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() };
        Ok(if det == 1 { adj } else { -adj })
    }

    /// `self^n` by repeated squaring; negative `n` needs `|det| = 1`.
    pub fn pow(&self, n: i64) -> Result<Mat2> {
        let base = if n < 0 { self.inverse_unimodular()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Mat2::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Unimodular with no eigenvalue of modulus 1: `|trace| > 2` when
    /// `det = 1`, `trace ≠ 0` when `det = −1`.
    pub fn is_anosov(&self) -> bool {
        match self.unit_det() {
            Some(1) => self.trace().abs() > Int::from(2),
            Some(_) => !self.trace().is_zero(),
            None => false,
        }
    }

    pub fn entries(&self) -> [&Int; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Int; 2]) -> [Int; 2] {
        [&self.a * &v[0] + &self.b * &v[1], &self.c * &v[0] + &self.d * &v[1]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, o: &Mat2) -> Mat2 {
        Mat2 { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d }
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, o: &Mat2) -> Mat2 {
        Mat2 { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, d: &self.d - &o.d }
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        -self.clone()
    }
}

/// A 3×3 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3 {
    pub rows: [[Int; 3]; 3],
}

impl Mat3 {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3 { rows: rows.map(|r| r.map(Int::from)) }
    }

    pub fn identity() -> Self {
        Mat3::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn diag(x: i64, y: i64, z: i64) -> Self {
        Mat3::from_i64([[x, 0, 0], [0, y, 0], [0, 0, z]])
    }

    pub fn det(&self) -> Int {
        let m = &self.rows;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn trace(&self) -> Int {
        &self.rows[0][0] + &self.rows[1][1] + &self.rows[2][2]
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rows;
        write!(
            f,
            "[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]
        )
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, o: &Mat3) -> Mat3 {
        let mut rows: [[Int; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| &self.rows[i][k] * &o.rows[k][j]).sum();
            }
        }
        Mat3 { rows }
    }
}

impl Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, o: &Mat3) -> Mat3 {
        let mut rows = self.rows.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell -= &o.rows[i][j];
            }
        }
        Mat3 { rows }
    }
}

/// Square integer matrix of small dimension (N ≤ 3), used for Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatN {
    n: usize,
    data: Vec<Int>,
}

impl MatN {
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(MatN { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn zero(n: usize) -> Self {
        MatN { n, data: vec![Int::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.n + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Int>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Determinant by cofactor expansion; only meant for N ≤ 3.
    pub fn det(&self) -> Int {
        match self.n {
            0 => Int::one(),
            1 => self.data[0].clone(),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            _ => (0..self.n)
                .map(|j| {
                    let minor = self.minor(0, j);
                    let term = self.get(0, j) * minor.det();
                    if j % 2 == 0 { term } else { -term }
                })
                .sum(),
        }
    }

    fn minor(&self, row: usize, col: usize) -> MatN {
        let data = (0..self.n)
            .filter(|&i| i != row)
            .flat_map(|i| (0..self.n).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        MatN { n: self.n - 1, data }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.n {
                self.data.swap(i * self.n + j, k * self.n + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.n {
                self.data.swap(i * self.n + j, i * self.n + k);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &Int) {
        for j in 0..self.n {
            let delta = q * self.get(src, j);
            *self.get_mut(dst, j) -= delta;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &Int) {
        for i in 0..self.n {
            let delta = q * self.get(i, src);
            *self.get_mut(i, dst) -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.n {
            let x = self.get_mut(i, j);
            *x = -std::mem::take(x);
        }
    }
}

impl Mul for &MatN {
    type Output = MatN;
    fn mul(self, o: &MatN) -> MatN {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = MatN::zero(n);
        for i in 0..n {
            for j in 0..n {
                *out.get_mut(i, j) = (0..n).map(|k| self.get(i, k) * o.get(k, j)).sum();
            }
        }
        out
    }
}

impl From<&Mat2> for MatN {
    fn from(m: &Mat2) -> Self {
        MatN { n: 2, data: vec![m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone()] }
    }
}

impl From<&Mat3> for MatN {
    fn from(m: &Mat3) -> Self {
        MatN { n: 3, data: m.rows.iter().flatten().cloned().collect() }
    }
}

impl fmt::Display for MatN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U · M · V = D` with `D` diagonal, non-negative, `d₁ | d₂ | d₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: MatN,
    pub d: MatN,
    pub v: MatN,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.dim()).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smallest nonzero absolute value in the trailing submatrix, ties broken row-major.
fn smallest_pivot(m: &MatN, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..m.n {
        for j in t..m.n {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &MatN) -> SmithForm {
    let n = m.n;
    assert!(n <= 3, "smith_normal_form supports N <= 3");
    let mut a = m.clone();
    let mut u = MatN::identity(n);
    let mut v = MatN::identity(n);

    'outer: for t in 0..n {
        loop {
            let Some((pi, pj)) = smallest_pivot(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    a.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    a.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -Int::one();
                    a.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let form = SmithForm { u, d: a, v };
    check_smith(m, &form);
    form
}

fn check_smith(m: &MatN, f: &SmithForm) {
    let n = m.n;
    assert_eq!(&(&f.u * m) * &f.v, f.d, "SNF: U*M*V != D");
    for i in 0..n {
        for j in 0..n {
            if i != j {
                assert!(f.d.get(i, j).is_zero(), "SNF: off-diagonal entry");
            }
        }
        assert!(!f.d.get(i, i).is_negative(), "SNF: negative diagonal entry");
        if i + 1 < n {
            let (x, y) = (f.d.get(i, i), f.d.get(i + 1, i + 1));
            assert!(if x.is_zero() { y.is_zero() } else { y.is_multiple_of(x) }, "SNF: divisibility chain");
        }
    }
    assert!(f.u.det().abs().is_one() && f.v.det().abs().is_one(), "SNF: transforms not unimodular");
}

/// A count that may be infinite. `Infinite` is ordered above every integer and
/// absorbs addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(Int),
    Infinite,
}

impl Cardinality {
    pub fn finite(x: impl Into<Int>) -> Self {
        Cardinality::Finite(x.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Int> {
        match self {
            Cardinality::Finite(x) => Some(x),
            Cardinality::Infinite => None,
        }
    }
}

impl Add for Cardinality {
    type Output = Cardinality;
    fn add(self, o: Cardinality) -> Cardinality {
        match (self, o) {
            (Cardinality::Finite(x), Cardinality::Finite(y)) => Cardinality::Finite(x + y),
            _ => Cardinality::Infinite,
        }
    }
}

impl PartialOrd for Cardinality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cardinality {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cardinality::Finite(x), Cardinality::Finite(y)) => x.cmp(y),
            (Cardinality::Finite(_), Cardinality::Infinite) => Ordering::Less,
            (Cardinality::Infinite, Cardinality::Finite(_)) => Ordering::Greater,
            (Cardinality::Infinite, Cardinality::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(x) => write!(f, "{x}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of `Zⁿ / M·Zⁿ`: the product of the Smith diagonal, or `Infinite` if a
/// diagonal entry vanishes.
pub fn cokernel_order(m: &MatN) -> Cardinality {
    let diag = smith_normal_form(m).diagonal();
    if diag.iter().any(Zero::is_zero) {
        Cardinality::Infinite
    } else {
        Cardinality::Finite(diag.iter().product())
    }
}

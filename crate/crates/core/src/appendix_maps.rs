//! Monomial self-maps of `S³ × S³` built from unit quaternions.
//!
//! A pair of words in `q1, q2` defines `h(q1, q2) = (w1(q1,q2), w2(q1,q2))`.
//! Its action on `H₃(S³ × S³) = Z²` is the exponent-sum matrix: row `j`
//! holds the exponents of `q1` and `q2` in word `j`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exact_linear::Mat2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quaternion = Quaternion { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Quaternion::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Inverse of a unit quaternion.
    pub fn unit_inverse(&self) -> Self {
        self.conj()
    }

    pub fn distance(&self, other: &Quaternion) -> f64 {
        let d = [self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn neg(&self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    Quaternion {
        w: p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        x: p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        y: p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        z: p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(&self, &rhs)
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::neg(&self)
    }
}

/// Uniform sample on `S³` by normalizing a standard Gaussian vector.
pub fn random_unit<R: rand::Rng>(rng: &mut R) -> Quaternion {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let q = Quaternion::new(v[0], v[1], v[2], v[3]);
        if q.norm() > 1e-9 {
            return q.normalized();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    Q1,
    Q2,
}

/// A word such as `q1 q2^-1 q1` stored as `(variable, exponent)` syllables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatWord(Vec<(Variable, i32)>);

impl QuatWord {
    pub fn new(syllables: Vec<(Variable, i32)>) -> Self {
        QuatWord(syllables.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn syllables(&self) -> &[(Variable, i32)] {
        &self.0
    }

    pub fn exponent_sums(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(a, b), &(v, e)| match v {
            Variable::Q1 => (a + i64::from(e), b),
            Variable::Q2 => (a, b + i64::from(e)),
        })
    }

    /// Left-to-right evaluation, renormalizing after every multiplication.
    pub fn evaluate(&self, q1: &Quaternion, q2: &Quaternion) -> Quaternion {
        let mut acc = Quaternion::ONE;
        for &(v, e) in &self.0 {
            let base = match v {
                Variable::Q1 => *q1,
                Variable::Q2 => *q2,
            };
            let step = if e < 0 { base.unit_inverse() } else { base };
            for _ in 0..e.unsigned_abs() {
                acc = quat_mul(&acc, &step).normalized();
            }
        }
        acc
    }
}

impl FromStr for QuatWord {
    type Err = Error;

    /// Accepts `q1`, `q2`, optional `^n` exponents, with or without spaces.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad quaternion word {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        let mut syllables = Vec::new();
        while !rest.is_empty() {
            let var = match rest.get(..2) {
                Some("q1") => Variable::Q1,
                Some("q2") => Variable::Q2,
                _ => return Err(bad()),
            };
            rest = &rest[2..];
            let mut exp = 1;
            if let Some(tail) = rest.strip_prefix('^') {
                let end = tail
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                    .map_or(tail.len(), |(i, _)| i);
                exp = tail[..end].parse().map_err(|_| bad())?;
                rest = &tail[end..];
            }
            syllables.push((var, exp));
        }
        if syllables.is_empty() {
            return Err(bad());
        }
        Ok(QuatWord::new(syllables))
    }
}

impl fmt::Display for QuatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                let name = if v == Variable::Q1 { "q1" } else { "q2" };
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Two output words and the matrix they are meant to induce on `H₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMapSpec {
    pub words: [QuatWord; 2],
    pub intended: Mat2,
}

impl TorusMapSpec {
    pub fn parse(first: &str, second: &str, intended: Mat2) -> Result<Self> {
        Ok(TorusMapSpec { words: [first.parse()?, second.parse()?], intended })
    }

    pub fn identity() -> Self {
        TorusMapSpec::parse("q1", "q2", Mat2::identity()).expect("static words")
    }
}

pub fn h_map(spec: &TorusMapSpec, q1: &Quaternion, q2: &Quaternion) -> (Quaternion, Quaternion) {
    (spec.words[0].evaluate(q1, q2), spec.words[1].evaluate(q1, q2))
}

/// Exponent-sum matrix, checked against the intended matrix.
pub fn induced_h3_matrix(spec: &TorusMapSpec) -> Result<Mat2> {
    let (a, b) = spec.words[0].exponent_sums();
    let (c, d) = spec.words[1].exponent_sums();
    let found = Mat2::new(a, b, c, d);
    if found != spec.intended {
        return Err(Error::MatrixMismatch { found: found.to_string(), intended: spec.intended.to_string() });
    }
    Ok(found)
}

fn pair_distance(p: &(Quaternion, Quaternion), q: &(Quaternion, Quaternion)) -> f64 {
    (p.0.distance(&q.0).powi(2) + p.1.distance(&q.1).powi(2)).sqrt()
}

/// Largest deviation from the identity of `f∘g` and `g∘f` over `samples`
/// seeded uniform points of `S³ × S³`.
pub fn verify_inverse_pair(f: &TorusMapSpec, g: &TorusMapSpec, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = (random_unit(&mut rng), random_unit(&mut rng));
        let gp = h_map(g, &p.0, &p.1);
        let fgp = h_map(f, &gp.0, &gp.1);
        let fp = h_map(f, &p.0, &p.1);
        let gfp = h_map(g, &fp.0, &fp.1);
        worst = worst.max(pair_distance(&fgp, &p)).max(pair_distance(&gfp, &p));
    }
    worst
}

/// The two inverse pairs realizing `(1 1; 2 1)` and `(4 1; 3 1)`.
pub fn appendix_pairs() -> [(TorusMapSpec, TorusMapSpec); 2] {
    let parse = |a: &str, b: &str, m: Mat2| TorusMapSpec::parse(a, b, m).expect("static words");
    [
        (
            parse("q1 q2", "q1^2 q2", Mat2::new(1, 1, 2, 1)),
            parse("q2 q1^-1", "q1 q2^-1 q1", Mat2::new(-1, 1, 2, -1)),
        ),
        (
            parse("q1^4 q2", "q1^3 q2", Mat2::new(4, 1, 3, 1)),
            parse("q1 q2^-1", "q2 q1^-1 q2 q1^-1 q2 q1^-1 q2", Mat2::new(1, -1, -3, 4)),
        ),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairReport {
    pub forward: Mat2,
    pub backward: Mat2,
    pub product_is_identity: bool,
    pub max_deviation: f64,
}

pub fn verify_appendix(samples: usize, seed: u64) -> Result<Vec<PairReport>> {
    appendix_pairs()
        .iter()
        .map(|(f, g)| {
            let forward = induced_h3_matrix(f)?;
            let backward = induced_h3_matrix(g)?;
            Ok(PairReport {
                product_is_identity: (&forward * &backward).is_identity() && (&backward * &forward).is_identity(),
                forward,
                backward,
                max_deviation: verify_inverse_pair(f, g, samples, seed),
            })
        })
        .collect()
}

//! Word algorithms in `PSL(2, Z) ≅ Z/2 * Z/3`.
//!
//! Generators are fixed as `S = (0 −1; 1 0)` (order 2 in PSL) and
//! `U = S·T = (0 −1; 1 1)` (order 3 in PSL, `U³ = −I`), with `T = (1 1; 0 1)`.
//! A word is in normal form when it alternates between `s` and one of
//! `u`, `u⁻¹`. Hyperbolic conjugacy classes correspond to cyclic words up to
//! rotation.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linear::{Int, Mat2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S,
    U,
    UInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::S,
            Letter::U => Letter::UInv,
            Letter::UInv => Letter::U,
        }
    }

    /// Exponent of `u` (1 or 2) for u-letters.
    fn u_exponent(self) -> Option<u8> {
        match self {
            Letter::S => None,
            Letter::U => Some(1),
            Letter::UInv => Some(2),
        }
    }

    fn from_u_exponent(e: u8) -> Option<Letter> {
        match e % 3 {
            0 => None,
            1 => Some(Letter::U),
            _ => Some(Letter::UInv),
        }
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::S => generator_s(),
            Letter::U => generator_u(),
            Letter::UInv => Mat2::new(1, 1, -1, 0),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Letter::S => "s",
            Letter::U => "u",
            Letter::UInv => "U",
        }
    }
}

pub fn generator_s() -> Mat2 {
    Mat2::new(0, -1, 1, 0)
}

pub fn generator_u() -> Mat2 {
    Mat2::new(0, -1, 1, 1)
}

pub fn generator_t() -> Mat2 {
    Mat2::new(1, 1, 0, 1)
}

/// Normal-form word: no `ss`, no two adjacent u-letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PslWord(Vec<Letter>);

impl PslWord {
    pub fn empty() -> Self {
        PslWord(Vec::new())
    }

    /// Multiplies the letters out and reduces to normal form.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = PslWord::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Parses `s`, `u`, `U` (= u⁻¹) letters; whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            letters.push(match ch {
                's' => Letter::S,
                'u' => Letter::U,
                'U' => Letter::UInv,
                _ => return Err(Error::Parse(format!("bad word letter {ch:?}"))),
            });
        }
        Ok(Self::from_letters(letters))
    }

    fn push(&mut self, l: Letter) {
        match (self.0.last().copied(), l) {
            (Some(Letter::S), Letter::S) => {
                self.0.pop();
            }
            (Some(top), _) if top != Letter::S && l != Letter::S => {
                self.0.pop();
                let e = top.u_exponent().unwrap() + l.u_exponent().unwrap();
                if let Some(m) = Letter::from_u_exponent(e) {
                    self.0.push(m);
                }
            }
            _ => self.0.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> PslWord {
        PslWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &PslWord) -> PslWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, k: usize) -> PslWord {
        let mut w = PslWord::empty();
        for _ in 0..k {
            w = w.concat(self);
        }
        w
    }

    /// Matrix product of the generators, exact (an SL(2,Z) lift of the PSL element).
    pub fn evaluate(&self) -> Mat2 {
        self.0.iter().fold(Mat2::identity(), |acc, l| &acc * &l.matrix())
    }
}

impl fmt::Display for PslWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

pub fn evaluate(w: &PslWord) -> Mat2 {
    w.evaluate()
}

/// A cyclically reduced word: first and last letters lie in different factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord(PslWord);

impl CyclicWord {
    /// Wraps a word that is already cyclically reduced.
    pub fn new(w: PslWord) -> Option<Self> {
        is_cyclically_reduced(&w).then_some(CyclicWord(w))
    }

    pub fn word(&self) -> &PslWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotate(&self, r: usize) -> CyclicWord {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let r = r % n;
        let mut v = self.0 .0[r..].to_vec();
        v.extend_from_slice(&self.0 .0[..r]);
        CyclicWord(PslWord(v))
    }

    fn require_hyperbolic(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if self.0.evaluate().trace().abs() <= Int::from(2) {
            return Err(Error::NotHyperbolic);
        }
        Ok(())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

fn is_cyclically_reduced(w: &PslWord) -> bool {
    match (w.0.first(), w.0.last()) {
        _ if w.len() <= 1 => true,
        (Some(&x), Some(&y)) => (x == Letter::S) != (y == Letter::S),
        _ => true,
    }
}

/// Decomposition of a matrix of SL(2,Z): `evaluate(word) = sign · matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedLift {
    pub word: PslWord,
    pub matrix: Mat2,
    pub sign: i8,
}

/// Writes `m ∈ SL(2,Z)` as a normal-form word by Euclidean reduction of the
/// first column.
pub fn decompose(m: &Mat2) -> Result<SignedLift> {
    if m.unit_det() != Some(1) {
        return Err(Error::NotSL(m.det().to_string()));
    }
    // Invariant: S·T^{-q_k} ··· S·T^{-q_1} · m = cur.
    let mut cur = m.clone();
    let mut quotients = Vec::new();
    while !cur.c.is_zero() {
        let q = cur.a.div_floor(&cur.c);
        let reduced = Mat2 {
            a: &cur.a - &q * &cur.c,
            b: &cur.b - &q * &cur.d,
            c: cur.c.clone(),
            d: cur.d.clone(),
        };
        cur = Mat2 { a: -reduced.c, b: -reduced.d, c: reduced.a, d: reduced.b };
        quotients.push(q);
    }
    // cur = a·T^(a·b) with a = d = ±1.
    let tail = &cur.a * &cur.b;

    // m ≡ T^{q_1} s T^{q_2} s ··· T^{q_k} s T^{tail} in PSL.
    let mut w = PslWord::empty();
    for q in &quotients {
        push_t_power(&mut w, q);
        w.push(Letter::S);
    }
    push_t_power(&mut w, &tail);

    let value = w.evaluate();
    let sign = if value == *m {
        1
    } else if value == -m {
        -1
    } else {
        return Err(Error::Verification(format!("decomposition of {m} evaluates to {value}")));
    };
    Ok(SignedLift { word: w, matrix: m.clone(), sign })
}

/// T ≡ s·u and T⁻¹ ≡ u⁻¹·s in PSL(2,Z).
fn push_t_power(w: &mut PslWord, q: &Int) {
    let count: u64 = q.abs().try_into().expect("T-exponent exceeds u64");
    let pair = if q.is_negative() { [Letter::UInv, Letter::S] } else { [Letter::S, Letter::U] };
    for _ in 0..count {
        w.push(pair[0]);
        w.push(pair[1]);
    }
}

/// Returns `(c, k)` with `w = k · c · k⁻¹` and `c` cyclically reduced.
pub fn cyclic_reduce(w: &PslWord) -> (CyclicWord, PslWord) {
    let mut inner: Vec<Letter> = w.0.clone();
    let mut conj = PslWord::empty();
    loop {
        if inner.len() < 2 {
            break;
        }
        let first = inner[0];
        let last = *inner.last().unwrap();
        match (first, last) {
            (Letter::S, Letter::S) => {
                // s x s = s · x · s⁻¹
                inner.pop();
                inner.remove(0);
                conj.push(Letter::S);
            }
            (Letter::S, _) | (_, Letter::S) => break,
            (f, l) => {
                // u^a x u^b = u^a · (x u^{a+b}) · u^{-a}
                inner.pop();
                inner.remove(0);
                if let Some(m) = Letter::from_u_exponent(f.u_exponent().unwrap() + l.u_exponent().unwrap()) {
                    inner.push(m);
                }
                conj.push(f);
            }
        }
    }
    (CyclicWord(PslWord(inner)), conj)
}

/// Certificate that `conjugator · w1 · conjugator⁻¹ = w2` where `w2` is the
/// rotation of `w1` by `rotation` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationCertificate {
    pub rotation: usize,
    pub conjugator: PslWord,
}

/// Finds the smallest rotation taking `w1` to `w2`, if any.
pub fn psl_conjugator(w1: &CyclicWord, w2: &CyclicWord) -> Result<Option<RotationCertificate>> {
    w1.require_hyperbolic()?;
    w2.require_hyperbolic()?;
    Ok(rotation_match(w1, w2))
}

fn rotation_match(w1: &CyclicWord, w2: &CyclicWord) -> Option<RotationCertificate> {
    let n = w1.len();
    if n != w2.len() {
        return None;
    }
    (0..n.max(1)).find(|&r| w1.rotate(r) == *w2).map(|r| {
        // w1 = x·y, w2 = y·x = x⁻¹·w1·x
        let x = PslWord(w1.0 .0[..r].to_vec());
        RotationCertificate { rotation: r, conjugator: x.inverse() }
    })
}

/// The automorphism `s ↦ s, u ↦ u⁻¹`. Conjugation by `diag(1, −1)` equals
/// `inner(s) ∘ outer_flip` up to sign, so only conjugacy-invariant uses are sound.
pub fn outer_flip(w: &PslWord) -> PslWord {
    PslWord(
        w.0.iter()
            .map(|l| match l {
                Letter::S => Letter::S,
                other => other.inverse(),
            })
            .collect(),
    )
}

/// Returns the root and the exponent `k` with `w = rootᵏ`, `k` maximal.
pub fn primitive_root_psl(w: &CyclicWord) -> Result<(CyclicWord, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let letters = &w.0 .0;
    let n = letters.len();
    let period = (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| letters[i] == letters[i - p]))
        .unwrap_or(n);
    Ok((CyclicWord(PslWord(letters[..period].to_vec())), n / period))
}

/// Generator of the PSL-centralizer of a hyperbolic word (its primitive root).
pub fn centralizer_generator(w: &CyclicWord) -> Result<CyclicWord> {
    w.require_hyperbolic()?;
    primitive_root_psl(w).map(|(root, _)| root)
}

/// Cyclic word of a hyperbolic `m ∈ SL(2,Z)` together with the lift data.
pub fn cyclic_word_of(m: &Mat2) -> Result<(CyclicWord, PslWord, SignedLift)> {
    let lift = decompose(m)?;
    let (cyc, conj) = cyclic_reduce(&lift.word);
    Ok((cyc, conj, lift))
}

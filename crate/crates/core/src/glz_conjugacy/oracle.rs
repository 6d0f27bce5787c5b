//! Bounded brute-force conjugator search in `GL(2, Z)`.
//!
//! This is an asymmetric oracle: a returned witness is exact, but failing to
//! find one within the bound proves nothing.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::exact_linear::Mat2;
use crate::modular_group::{generator_s, generator_t};

/// Generators in search order: `S`, `T`, `T⁻¹`, `D = diag(1, −1)`.
const GENERATOR_NAMES: [&str; 4] = ["S", "T", "t", "D"];

fn generators() -> [Mat2; 4] {
    [generator_s(), generator_t(), Mat2::new(1, -1, 0, 1), Mat2::new(1, 0, 0, -1)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleWitness {
    /// Generator word, e.g. `"STD"` (`t` stands for `T⁻¹`).
    pub word: String,
    pub matrix: Mat2,
}

/// All distinct matrices reachable by words of length ≤ `bound`, in shortlex
/// order of their first word.
#[derive(Clone, Debug)]
pub struct ConjugatorBall {
    bound: usize,
    elements: Vec<OracleWitness>,
    /// Machine-integer copies of the element matrices.
    small: Vec<[i128; 4]>,
}

fn small_entries(m: &Mat2) -> Option<[i128; 4]> {
    let e = m.entries();
    let mut out = [0i128; 4];
    for (slot, x) in out.iter_mut().zip(e) {
        *slot = x.to_i64().filter(|v| v.unsigned_abs() < 1 << 31)?.into();
    }
    Some(out)
}

fn small_mul(p: &[i128; 4], q: &[i128; 4]) -> [i128; 4] {
    [
        p[0] * q[0] + p[1] * q[2],
        p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2],
        p[2] * q[1] + p[3] * q[3],
    ]
}

impl ConjugatorBall {
    pub fn new(bound: usize) -> Self {
        let gens = generators();
        let mut seen: HashSet<Mat2> = HashSet::new();
        let mut elements = vec![OracleWitness { word: String::new(), matrix: Mat2::identity() }];
        seen.insert(Mat2::identity());
        let mut frontier = 0..1;
        for _ in 0..bound {
            let start = elements.len();
            for idx in frontier.clone() {
                for (g, name) in gens.iter().zip(GENERATOR_NAMES) {
                    let m = &elements[idx].matrix * g;
                    if seen.insert(m.clone()) {
                        let word = format!("{}{}", elements[idx].word, name);
                        elements.push(OracleWitness { word, matrix: m });
                    }
                }
            }
            frontier = start..elements.len();
        }
        let small = elements
            .iter()
            .map(|w| small_entries(&w.matrix).expect("ball entries are small"))
            .collect();
        ConjugatorBall { bound, elements, small }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// First `P` in the ball with `P·a·P⁻¹ = b`.
    pub fn search(&self, a: &Mat2, b: &Mat2) -> Option<OracleWitness> {
        if a.det() != b.det() || a.trace() != b.trace() {
            return None;
        }
        if let (Some(sa), Some(sb)) = (small_entries(a), small_entries(b)) {
            return self
                .small
                .iter()
                .position(|p| small_mul(p, &sa) == small_mul(&sb, p))
                .map(|i| self.elements[i].clone())
                .filter(|w| &w.matrix * a == b * &w.matrix);
        }
        self.elements
            .iter()
            .find(|w| &w.matrix * a == b * &w.matrix)
            .cloned()
    }
}

/// Exhaustive search over generator words of length ≤ `bound`.
pub fn bruteforce_conjugator_search(a: &Mat2, b: &Mat2, bound: usize) -> Option<OracleWitness> {
    ConjugatorBall::new(bound).search(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_length_zero() {
        let a = Mat2::new(2, 1, 1, 1);
        let w = bruteforce_conjugator_search(&a, &a, 3).unwrap();
        assert_eq!(w.word, "");
        assert_eq!(w.matrix, Mat2::identity());
    }

    #[test]
    fn finds_reverser_of_symmetric() {
        let a = Mat2::new(2, 1, 1, 1);
        let inv = a.inverse_unimodular().unwrap();
        let w = bruteforce_conjugator_search(&a, &inv, 6).expect("reverser within 6");
        assert_eq!(&(&w.matrix * &a) * &w.matrix.inverse_unimodular().unwrap(), inv);
        // S = J is the first generator, so it is found at length 1
        assert_eq!(w.word, "S");
    }

    #[test]
    fn ball_is_deduplicated() {
        let ball = ConjugatorBall::new(4);
        let set: HashSet<_> = ball.elements.iter().map(|w| w.matrix.clone()).collect();
        assert_eq!(set.len(), ball.len());
        assert!(ball.elements.windows(2).all(|p| p[0].word.len() <= p[1].word.len()));
    }
}

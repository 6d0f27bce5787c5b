#![allow(dead_code)]

use rand::Rng;
use rinfinity::Mat2;

pub fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    Mat2::new(a, b, c, d)
}

/// Product of `len` random generators among `S`, `T`, `T⁻¹`, `diag(1,−1)`.
pub fn random_gl2z<R: Rng>(rng: &mut R, len: usize) -> Mat2 {
    let gens = [m2(0, -1, 1, 0), m2(1, 1, 0, 1), m2(1, -1, 0, 1), m2(1, 0, 0, -1)];
    (0..len).fold(Mat2::identity(), |acc, _| &acc * &gens[rng.random_range(0..gens.len())])
}

pub fn conjugate_by(p: &Mat2, a: &Mat2) -> Mat2 {
    &(p * a) * &p.inverse_unimodular().unwrap()
}

/// Rejection-sampled unimodular matrix with entries in `[-bound, bound]`.
pub fn random_unimodular<R: Rng>(rng: &mut R, bound: i64, det: Option<i64>) -> Mat2 {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.random_range(-bound..=bound));
        let d = e[0] * e[3] - e[1] * e[2];
        if d.abs() == 1 && det.is_none_or(|want| want == d) {
            return m2(e[0], e[1], e[2], e[3]);
        }
    }
}

pub fn random_anosov<R: Rng>(rng: &mut R, bound: i64, det: Option<i64>) -> Mat2 {
    loop {
        let m = random_unimodular(rng, bound, det);
        if m.is_anosov() {
            return m;
        }
    }
}

/// All Anosov matrices with entries in `[-bound, bound]`.
pub fn all_anosov(bound: i64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if (a * d - b * c).abs() == 1 {
                        let m = m2(a, b, c, d);
                        if m.is_anosov() {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out
}

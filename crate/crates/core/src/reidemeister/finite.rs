//! Twisted conjugacy classes of finite groups, counted by orbit enumeration.
//!
//! Used as an independent check on the closed-form lattice and Sol formulas.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact_linear::Mat2;

/// Largest group turned into an explicit multiplication table.
pub const TABLE_LIMIT: usize = 2048;
/// Largest structurally described quotient the oracles will enumerate.
pub const QUOTIENT_LIMIT: usize = 1 << 18;

/// A finite group whose elements are `0..order()`.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, x: usize, y: usize) -> usize;
    fn inv(&self, x: usize) -> usize;
    /// A generating set; orbits of any action are unions over these.
    fn generators(&self) -> Vec<usize>;
}

struct UnionFind {
    parent: Vec<usize>,
    classes: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), classes: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
            self.classes -= 1;
        }
    }
}

fn twisted_orbits<G: FiniteGroup + ?Sized>(
    g: &G,
    phi: &dyn Fn(usize) -> usize,
    actors: &[usize],
) -> u64 {
    let mut uf = UnionFind::new(g.order());
    for &s in actors {
        let phi_s_inv = g.inv(phi(s));
        for a in 0..g.order() {
            uf.union(a, g.mul(g.mul(s, a), phi_s_inv));
        }
    }
    uf.classes as u64
}

/// Number of orbits of `α ↦ σ·α·φ(σ)⁻¹`, acting only by a generating set.
pub fn twisted_classes<G: FiniteGroup + ?Sized>(g: &G, phi: &dyn Fn(usize) -> usize) -> u64 {
    twisted_orbits(g, phi, &g.generators())
}

/// A finite group given by its full multiplication table, with an automorphism.
#[derive(Clone, Debug)]
pub struct FiniteGroupSpec {
    table: Vec<Vec<u32>>,
    identity: usize,
    inverse: Vec<usize>,
    automorphism: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroupSpec {
    /// Validates the table (identity, inverses, associativity) and that the
    /// permutation is a multiplicative bijection.
    pub fn new(table: Vec<Vec<usize>>, automorphism: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element list".into()));
        }
        if n > TABLE_LIMIT {
            return Err(Error::QuotientTooLarge(n as u64, TABLE_LIMIT as u64));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not a closed n×n array".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
        }
        // Associativity: exhaustive for small tables, a fixed stride sample otherwise.
        let stride = if n <= 64 { 1 } else { n / 61 + 1 };
        for x in (0..n).step_by(stride) {
            for y in 0..n {
                for z in (0..n).step_by(stride) {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::NotAGroup(format!("({x}·{y})·{z} ≠ {x}·({y}·{z})")));
                    }
                }
            }
        }
        if automorphism.len() != n || automorphism.iter().any(|&x| x >= n) {
            return Err(Error::NotAutomorphism("not a map on the element list".into()));
        }
        let mut hit = vec![false; n];
        for &x in &automorphism {
            if std::mem::replace(&mut hit[x], true) {
                return Err(Error::NotAutomorphism("not injective".into()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if automorphism[table[x][y]] != table[automorphism[x]][automorphism[y]] {
                    return Err(Error::NotAutomorphism(format!("fails on ({x}, {y})")));
                }
            }
        }
        let table = table.into_iter().map(|row| row.into_iter().map(|x| x as u32).collect()).collect();
        Ok(FiniteGroupSpec { table, identity, inverse, automorphism, generators: (0..n).collect() })
    }

    /// Tabulates a structurally given group together with an automorphism.
    pub fn tabulate<G: FiniteGroup + ?Sized>(g: &G, phi: &dyn Fn(usize) -> usize) -> Result<Self> {
        let n = g.order();
        if n > TABLE_LIMIT {
            return Err(Error::QuotientTooLarge(n as u64, TABLE_LIMIT as u64));
        }
        let table = (0..n).map(|x| (0..n).map(|y| g.mul(x, y)).collect()).collect();
        let mut spec = FiniteGroupSpec::new(table, (0..n).map(phi).collect())?;
        spec.generators = g.generators();
        Ok(spec)
    }

    pub fn automorphism(&self, x: usize) -> usize {
        self.automorphism[x]
    }

    /// Same table with the identity automorphism.
    pub fn with_identity_automorphism(&self) -> Self {
        FiniteGroupSpec { automorphism: (0..self.order()).collect(), ..self.clone() }
    }

    /// Ordinary conjugacy classes.
    pub fn class_number(&self) -> u64 {
        twisted_orbits(self, &|x| x, &(0..self.order()).collect::<Vec<_>>())
    }
}

impl FiniteGroup for FiniteGroupSpec {
    fn order(&self) -> usize {
        self.table.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y] as usize
    }

    fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }
}

/// Twisted classes of a tabulated group, acting by every element.
pub fn twisted_classes_finite(g: &FiniteGroupSpec) -> u64 {
    let all: Vec<usize> = (0..g.order()).collect();
    twisted_orbits(g, &|x| g.automorphism(x), &all)
}

/// Square matrix reduced mod `m`, entries in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: u64,
    rows: Vec<Vec<u64>>,
}

impl ModMatrix {
    pub fn reduce(rows: &[Vec<crate::exact_linear::Int>], modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let m = crate::exact_linear::Int::from(modulus);
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|x| x.mod_floor(&m).to_u64().expect("reduced entry")).collect())
            .collect();
        Ok(ModMatrix { modulus, rows })
    }

    pub fn from_mat2(a: &Mat2, modulus: u64) -> Result<Self> {
        Self::reduce(&[vec![a.a.clone(), a.b.clone()], vec![a.c.clone(), a.d.clone()]], modulus)
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| u64::from(i == j) % modulus).collect()).collect();
        ModMatrix { modulus, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum::<u64>() % self.modulus)
                    .collect()
            })
            .collect();
        ModMatrix { modulus: self.modulus, rows }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % self.modulus)
            .collect()
    }

    /// Multiplicative order, or `OrderNotFinite` if the matrix is singular mod m.
    pub fn order(&self) -> Result<usize> {
        let id = ModMatrix::identity(self.dim(), self.modulus);
        let bound = (self.modulus as usize).saturating_pow(self.dim() as u32 * self.dim() as u32);
        let mut p = self.clone();
        for k in 1..=bound.max(1) {
            if p == id {
                return Ok(k);
            }
            p = p.mul(self);
        }
        Err(Error::OrderNotFinite(self.modulus))
    }
}

fn vector_space_size(modulus: u64, dim: usize) -> Result<usize> {
    (modulus as usize)
        .checked_pow(dim as u32)
        .filter(|&s| s <= QUOTIENT_LIMIT)
        .ok_or(Error::QuotientTooLarge(modulus.saturating_pow(dim as u32), QUOTIENT_LIMIT as u64))
}

fn encode(v: &[u64], m: u64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * m as usize + x as usize)
}

fn decode(mut idx: usize, m: u64, dim: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    for slot in v.iter_mut().rev() {
        *slot = (idx % m as usize) as u64;
        idx /= m as usize;
    }
    v
}

/// `(Z/m)ⁿ` under addition.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    modulus: u64,
    dim: usize,
    size: usize,
}

impl AbelianGroup {
    pub fn new(modulus: u64, dim: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        Ok(AbelianGroup { modulus, dim, size: vector_space_size(modulus, dim)? })
    }

    pub fn encode(&self, v: &[u64]) -> usize {
        encode(v, self.modulus)
    }

    pub fn decode(&self, x: usize) -> Vec<u64> {
        decode(x, self.modulus, self.dim)
    }

    /// The map induced by a matrix.
    pub fn induced(&self, m: &ModMatrix) -> impl Fn(usize) -> usize + '_ {
        let m = m.clone();
        move |x| self.encode(&m.apply(&self.decode(x)))
    }
}

impl FiniteGroup for AbelianGroup {
    fn order(&self) -> usize {
        self.size
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let (u, v) = (self.decode(x), self.decode(y));
        let w: Vec<u64> = u.iter().zip(&v).map(|(a, b)| (a + b) % self.modulus).collect();
        self.encode(&w)
    }

    fn inv(&self, x: usize) -> usize {
        let w: Vec<u64> = self.decode(x).iter().map(|a| (self.modulus - a) % self.modulus).collect();
        self.encode(&w)
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|i| {
                let mut e = vec![0; self.dim];
                e[i] = 1 % self.modulus;
                self.encode(&e)
            })
            .collect()
    }
}

/// `(Z/m)² ⋊ Z/k` with `k` the order of `A mod m`; `(v,i)(w,j) = (v + Aⁱw, i+j)`.
#[derive(Clone, Debug)]
pub struct SolQuotient {
    modulus: u64,
    period: usize,
    powers: Vec<ModMatrix>,
}

impl SolQuotient {
    pub fn new(a: &Mat2, modulus: u64) -> Result<Self> {
        let am = ModMatrix::from_mat2(a, modulus)?;
        let period = am.order()?;
        let size = vector_space_size(modulus, 2)?.saturating_mul(period);
        if size > QUOTIENT_LIMIT {
            return Err(Error::QuotientTooLarge(size as u64, QUOTIENT_LIMIT as u64));
        }
        let mut powers = vec![ModMatrix::identity(2, modulus)];
        for i in 1..period {
            powers.push(powers[i - 1].mul(&am));
        }
        Ok(SolQuotient { modulus, period, powers })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    fn fibre(&self) -> usize {
        (self.modulus * self.modulus) as usize
    }

    pub fn split(&self, x: usize) -> (Vec<u64>, usize) {
        (decode(x % self.fibre(), self.modulus, 2), x / self.fibre())
    }

    pub fn join(&self, v: &[u64], i: usize) -> usize {
        (i % self.period) * self.fibre() + encode(v, self.modulus)
    }
}

impl FiniteGroup for SolQuotient {
    fn order(&self) -> usize {
        self.fibre() * self.period
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let ((v, i), (w, j)) = (self.split(x), self.split(y));
        let aw = self.powers[i].apply(&w);
        let sum: Vec<u64> = v.iter().zip(&aw).map(|(a, b)| (a + b) % self.modulus).collect();
        self.join(&sum, i + j)
    }

    fn inv(&self, x: usize) -> usize {
        let (v, i) = self.split(x);
        let back = (self.period - i) % self.period;
        let w = self.powers[back].apply(&v);
        let neg: Vec<u64> = w.iter().map(|a| (self.modulus - a) % self.modulus).collect();
        self.join(&neg, back)
    }

    fn generators(&self) -> Vec<usize> {
        let m = self.modulus;
        vec![self.join(&[1 % m, 0], 0), self.join(&[0, 1 % m], 0), self.join(&[0, 0], 1)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize, k: usize) -> FiniteGroupSpec {
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        FiniteGroupSpec::new(table, (0..n).map(|x| x * k % n).collect()).unwrap()
    }

    /// S₃ as permutations of three points, in lexicographic order.
    fn symmetric3() -> Vec<Vec<usize>> {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(twisted_classes_finite(&cyclic(1, 1)), 1);
        assert_eq!(twisted_classes_finite(&cyclic(5, 1)), 5);
        assert_eq!(twisted_classes_finite(&cyclic(5, 2)), 1);
        assert_eq!(twisted_classes_finite(&cyclic(6, 5)), 2);
    }

    #[test]
    fn symmetric_group_classes() {
        let s3 = FiniteGroupSpec::new(symmetric3(), (0..6).collect()).unwrap();
        assert_eq!(s3.class_number(), 3);
        assert_eq!(twisted_classes_finite(&s3), 3);
        // inner automorphism by a transposition still gives R = 3
        let t = 1;
        let conj: Vec<usize> = (0..6).map(|x| s3.mul(s3.mul(t, x), s3.inv(t))).collect();
        let inner = FiniteGroupSpec::new(symmetric3(), conj).unwrap();
        assert_eq!(twisted_classes_finite(&inner), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroupSpec::new(bad, vec![0, 1]), Err(Error::NotAGroup(_))));
        let z3: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y) % 3).collect()).collect();
        assert!(matches!(FiniteGroupSpec::new(z3.clone(), vec![0, 0, 0]), Err(Error::NotAutomorphism(_))));
        assert!(matches!(FiniteGroupSpec::new(z3, vec![1, 2, 0]), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn generator_orbits_match_all_pairs() {
        let a = Mat2::new(2, 1, 1, 1);
        for m in 2..=5 {
            let g = SolQuotient::new(&a, m).unwrap();
            let spec = FiniteGroupSpec::tabulate(&g, &|x| x).unwrap();
            assert_eq!(twisted_classes(&g, &|x| x), twisted_classes_finite(&spec), "m = {m}");
            assert_eq!(spec.class_number(), twisted_classes_finite(&spec));
        }
    }

    #[test]
    fn mod_matrix_order() {
        let a = ModMatrix::from_mat2(&Mat2::new(2, 1, 1, 1), 5).unwrap();
        assert_eq!(a.order().unwrap(), 10);
        let singular = ModMatrix::from_mat2(&Mat2::new(2, 0, 0, 1), 4).unwrap();
        assert_eq!(singular.order(), Err(Error::OrderNotFinite(4)));
    }
}

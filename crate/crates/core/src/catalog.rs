//! Geometry descriptors and the R∞ verdict for fundamental groups of closed
//! geometric 3-manifolds.
//!
//! Tables cover the ten flat groups, the four `S²×R` manifolds and the fifteen
//! Nil families; Sol torus bundles are decided by [`decide_sol_torus_bundle`].

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact_linear::{cokernel_order, Cardinality, Int, Mat2, Mat3, MatN};
use crate::glz_conjugacy::{decide_sol_torus_bundle, SolCertificate, SolClause};
use crate::reidemeister::{reidemeister_lattice, twisted_classes_finite, verify_hantzsche_wendt, HantzscheWendtReport, FiniteGroupSpec, LatticeAut};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum S2xRManifold {
    S2xS1,
    RP2xS1,
    S2twistS1,
    RP3connRP3,
}

impl S2xRManifold {
    /// Listing order of the four manifolds.
    pub const ALL: [S2xRManifold; 4] =
        [S2xRManifold::S2xS1, S2xRManifold::RP2xS1, S2xRManifold::S2twistS1, S2xRManifold::RP3connRP3];

    pub fn name(self) -> &'static str {
        match self {
            S2xRManifold::S2xS1 => "S2xS1",
            S2xRManifold::RP2xS1 => "RP2xS1",
            S2xRManifold::S2twistS1 => "S2twistS1",
            S2xRManifold::RP3connRP3 => "RP3#RP3",
        }
    }
}

impl FromStr for S2xRManifold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        match key.as_str() {
            "s2xs1" => Ok(S2xRManifold::S2xS1),
            "rp2xs1" => Ok(S2xRManifold::RP2xS1),
            "s2twists1" | "s2tildes1" => Ok(S2xRManifold::S2twistS1),
            "rp3connrp3" | "rp3rp3" => Ok(S2xRManifold::RP3connRP3),
            _ => Err(Error::InvalidDescriptor(format!("unknown S2xR manifold {s:?}"))),
        }
    }
}

/// Nil family index `1..=15`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilFamily(u8);

impl NilFamily {
    pub fn new(index: u8) -> Result<Self> {
        if (1..=15).contains(&index) {
            Ok(NilFamily(index))
        } else {
            Err(Error::OutOfRange(index.into(), "Nil family 1..=15"))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = NilFamily> {
        (1..=15).map(NilFamily)
    }
}

impl fmt::Display for NilFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.0)
    }
}

impl FromStr for NilFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['M', 'm']);
        let index: u8 = digits.parse().map_err(|_| Error::InvalidDescriptor(format!("bad Nil family {s:?}")))?;
        NilFamily::new(index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolKind {
    TorusBundle(Mat2),
    Sapphire,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryDescriptor {
    Spherical,
    S2xR(S2xRManifold),
    Euclidean(u8),
    Nil { family: NilFamily, k: Int },
    SLtilde,
    H2xR,
    Sol(SolKind),
    Hyperbolic { compact: bool },
}

impl GeometryDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            GeometryDescriptor::Euclidean(i) if !(1..=10).contains(i) => {
                Err(Error::OutOfRange((*i).into(), "flat group index 1..=10"))
            }
            GeometryDescriptor::Nil { k, .. } if !k.is_positive() => Err(Error::InvalidDescriptor(format!(
                "Nil Euler number k = {k} must be positive; k <= 0 gives flat manifolds or a manifold already listed with k > 0"
            ))),
            GeometryDescriptor::Sol(SolKind::TorusBundle(a)) if !a.is_anosov() => Err(Error::NotAnosov(a.to_string())),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeometryDescriptor::Spherical => "spherical",
            GeometryDescriptor::S2xR(_) => "s2xr",
            GeometryDescriptor::Euclidean(_) => "flat",
            GeometryDescriptor::Nil { .. } => "nil",
            GeometryDescriptor::SLtilde => "sltilde",
            GeometryDescriptor::H2xR => "h2xr",
            GeometryDescriptor::Sol(_) => "sol",
            GeometryDescriptor::Hyperbolic { .. } => "hyperbolic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Holonomy {
    Trivial,
    Z2,
    Z3,
    Z4,
    Z6,
    Z2xZ2,
}

impl Holonomy {
    pub fn name(self) -> &'static str {
        match self {
            Holonomy::Trivial => "1",
            Holonomy::Z2 => "Z2",
            Holonomy::Z3 => "Z3",
            Holonomy::Z4 => "Z4",
            Holonomy::Z6 => "Z6",
            Holonomy::Z2xZ2 => "Z2xZ2",
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Holonomy::Trivial => 1,
            Holonomy::Z2 => 2,
            Holonomy::Z3 => 3,
            Holonomy::Z4 | Holonomy::Z2xZ2 => 4,
            Holonomy::Z6 => 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<&'static str>,
    pub relators: Vec<&'static str>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | {}>", self.generators.join(", "), self.relators.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatGroupEntry {
    pub index: u8,
    pub presentation: Presentation,
    pub holonomy: Holonomy,
    pub center: &'static str,
    /// Quotient by the centre when the centre is infinite cyclic.
    pub central_quotient: Option<&'static str>,
    pub orientable: bool,
    pub r_infinity: bool,
}

const ABELIAN_A: &str = "a_i a_j = a_j a_i";
const KLEIN: &str = "b a b^-1 = a^-1";

fn presentation(generators: &[&'static str], relators: &[&'static str]) -> Presentation {
    Presentation { generators: generators.to_vec(), relators: relators.to_vec() }
}

pub fn flat_entry(index: u8) -> Result<FlatGroupEntry> {
    let a_t = ["a1", "a2", "a3", "t"];
    let abt = ["a", "b", "t"];
    let (presentation, holonomy, center, central_quotient) = match index {
        1 => (presentation(&["a1", "a2", "a3"], &[ABELIAN_A]), Holonomy::Trivial, "Z^3 (whole group)", None),
        2 => (
            presentation(&a_t, &["a1 = t^2", "t a2 t^-1 = a2^-1", "t a3 t^-1 = a3^-1", ABELIAN_A]),
            Holonomy::Z2,
            "<a1>",
            Some("G2"),
        ),
        3 => (
            presentation(&a_t, &["a1 = t^3", "t a2 t^-1 = a3", "t a3 t^-1 = a2^-1 a3^-1", ABELIAN_A]),
            Holonomy::Z3,
            "<a1>",
            Some("G3"),
        ),
        4 => (
            presentation(&a_t, &["a1 = t^4", "t a2 t^-1 = a3", "t a3 t^-1 = a2^-1", ABELIAN_A]),
            Holonomy::Z4,
            "<a1>",
            Some("G4"),
        ),
        5 => (
            presentation(&a_t, &["a1 = t^6", "t a2 t^-1 = a3", "t a3 t^-1 = a2^-1 a3", ABELIAN_A]),
            Holonomy::Z6,
            "<a1>",
            Some("G6"),
        ),
        6 => (
            presentation(
                &["a1", "a2", "a3", "t1", "t2", "t3"],
                &["a1 a3 = t3 t2 t1", "a_i = t_i^2", "t_i a_j t_i^-1 = a_j^-1 (i != j)", ABELIAN_A],
            ),
            Holonomy::Z2xZ2,
            "trivial",
            None,
        ),
        7 => (presentation(&abt, &[KLEIN, "t a = a t", "t b = b t"]), Holonomy::Z2, "<b^2, t> = Z^2", None),
        8 => (presentation(&abt, &[KLEIN, "t a t^-1 = a", "t b t^-1 = a b"]), Holonomy::Z2, "<b^2>", None),
        9 => (presentation(&abt, &[KLEIN, "t a t^-1 = a", "t b t^-1 = b^-1"]), Holonomy::Z2xZ2, "<t^2>", None),
        10 => (presentation(&abt, &[KLEIN, "t a t^-1 = a", "t b t^-1 = a b^-1"]), Holonomy::Z2xZ2, "<t^2>", None),
        _ => return Err(Error::OutOfRange(index.into(), "flat group index 1..=10")),
    };
    Ok(FlatGroupEntry {
        index,
        presentation,
        holonomy,
        center,
        central_quotient,
        orientable: index <= 6,
        r_infinity: !matches!(index, 1 | 2 | 6),
    })
}

pub fn flat_table() -> Vec<FlatGroupEntry> {
    (1..=10).map(|i| flat_entry(i).expect("index in range")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilEntry {
    pub family: NilFamily,
    /// Roman numeral `i`..`vii`.
    pub kind: &'static str,
    /// Seifert invariants with `k` left symbolic.
    pub seifert_invariants: &'static str,
    pub holonomy: Holonomy,
    pub r_infinity: bool,
}

const NIL_ROWS: [(&str, &str, Holonomy); 15] = [
    ("i", "{k,(o1,1);}", Holonomy::Trivial),
    ("ii", "{k-2,(o1,0);(2,1),(2,1),(2,1),(2,1)}", Holonomy::Z2),
    ("iii", "{k,(n2,2);}", Holonomy::Z2),
    ("iv", "{k-1,(n2,1);(2,1),(2,1)}", Holonomy::Z2xZ2),
    ("v", "{k-2,(o1,0);(4,3),(4,3),(2,1)}", Holonomy::Z4),
    ("v", "{k-1,(o1,0);(4,1),(4,1),(2,1)}", Holonomy::Z4),
    ("v", "{k-2,(o1,0);(4,3),(4,1),(2,1)}", Holonomy::Z4),
    ("vi", "{k-2,(o1,0);(3,2),(3,2),(3,2)}", Holonomy::Z3),
    ("vi", "{k-1,(o1,0);(3,1),(3,1),(3,1)}", Holonomy::Z3),
    ("vi", "{k-2,(o1,0);(3,2),(3,1),(3,1)}", Holonomy::Z3),
    ("vi", "{k-2,(o1,0);(3,2),(3,2),(3,1)}", Holonomy::Z3),
    ("vii", "{k-2,(o1,0);(6,5),(3,2),(2,1)}", Holonomy::Z6),
    ("vii", "{k-1,(o1,0);(6,1),(3,1),(2,1)}", Holonomy::Z6),
    ("vii", "{k-2,(o1,0);(6,1),(3,2),(2,1)}", Holonomy::Z6),
    ("vii", "{k-2,(o1,0);(6,5),(3,1),(2,1)}", Holonomy::Z6),
];

pub fn nil_entry(family: NilFamily) -> NilEntry {
    let (kind, seifert_invariants, holonomy) = NIL_ROWS[usize::from(family.0) - 1];
    NilEntry { family, kind, seifert_invariants, holonomy, r_infinity: family.0 > 2 }
}

pub fn nil_table() -> Vec<NilEntry> {
    NilFamily::all().map(nil_entry).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2xREntry {
    pub manifold: S2xRManifold,
    pub group_r_infinity: bool,
    pub manifold_r_infinity: bool,
    pub fundamental_group: &'static str,
}

pub fn s2xr_entry(m: S2xRManifold) -> S2xREntry {
    let (group, name) = match m {
        S2xRManifold::S2xS1 | S2xRManifold::S2twistS1 => (false, "Z"),
        S2xRManifold::RP2xS1 => (false, "Z2xZ"),
        S2xRManifold::RP3connRP3 => (true, "Z2*Z2"),
    };
    S2xREntry { manifold: m, group_r_infinity: group, manifold_r_infinity: group, fundamental_group: name }
}

pub fn s2xr_table() -> Vec<S2xREntry> {
    S2xRManifold::ALL.into_iter().map(s2xr_entry).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupVerdict {
    RInfinity(bool),
    NotApplicableFiniteGroup,
}

/// Evidence that a particular automorphism has finitely many twisted classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Sol(SolCertificate),
    Lattice { matrix: MatN, reidemeister_number: Cardinality },
    HantzscheWendt(HantzscheWendtReport),
    Product { description: &'static str, reidemeister_number: Cardinality },
    Literature(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub group: GroupVerdict,
    pub manifold_r_infinity: bool,
    pub reason_code: &'static str,
    pub clause: Option<&'static str>,
    pub certificate: Option<Certificate>,
    pub citations: Vec<&'static str>,
}

impl Verdict {
    pub fn group_r_infinity(&self) -> Option<bool> {
        match self.group {
            GroupVerdict::RInfinity(b) => Some(b),
            GroupVerdict::NotApplicableFiniteGroup => None,
        }
    }
}

fn r_infinity(reason_code: &'static str, citation: &'static str) -> Verdict {
    Verdict {
        group: GroupVerdict::RInfinity(true),
        manifold_r_infinity: true,
        reason_code,
        clause: None,
        certificate: None,
        citations: vec![citation],
    }
}

fn finite_r(reason_code: &'static str, clause: &'static str, certificate: Certificate, citation: &'static str) -> Verdict {
    Verdict {
        group: GroupVerdict::RInfinity(false),
        manifold_r_infinity: false,
        reason_code,
        clause: Some(clause),
        certificate: Some(certificate),
        citations: vec![citation],
    }
}

fn flat_certificate(index: u8) -> Certificate {
    match index {
        1 => {
            let minus = Mat3::diag(-1, -1, -1);
            let r = reidemeister_lattice(&LatticeAut::Rank3(minus.clone()));
            Certificate::Lattice { matrix: (&minus).into(), reidemeister_number: r }
        }
        6 => Certificate::HantzscheWendt(verify_hantzsche_wendt()),
        _ => Certificate::Literature("flat group 2: explicit automorphism with finite Reidemeister number"),
    }
}

fn s2xr_certificate(m: S2xRManifold) -> Option<Certificate> {
    // n ↦ −n on Z has R = |1 − (−1)| = 2.
    let reflection = cokernel_order(&MatN::from_i64(&[&[2]]).expect("1x1"));
    match m {
        S2xRManifold::S2xS1 | S2xRManifold::S2twistS1 => Some(Certificate::Product {
            description: "n -> -n on Z",
            reidemeister_number: reflection,
        }),
        S2xRManifold::RP2xS1 => {
            let z2 = FiniteGroupSpec::new(vec![vec![0, 1], vec![1, 0]], vec![0, 1]).expect("Z2");
            let r = Cardinality::finite(twisted_classes_finite(&z2));
            let total = match (r, reflection) {
                (Cardinality::Finite(x), Cardinality::Finite(y)) => Cardinality::Finite(x * y),
                _ => Cardinality::Infinite,
            };
            Some(Certificate::Product { description: "id x (n -> -n) on Z2 x Z", reidemeister_number: total })
        }
        S2xRManifold::RP3connRP3 => None,
    }
}

fn sol_clause_citation(clause: SolClause) -> &'static str {
    match clause {
        SolClause::DetMinusOne => "Sol torus bundle: monodromy of determinant -1",
        SolClause::NotReversible => "Sol torus bundle: A not GL(2,Z)-conjugate to its inverse",
        SolClause::SymmetricConjugate => "Sol torus bundle: A conjugate to a symmetric matrix, determinant +1 reverser",
        SolClause::DetMinusOneRoot => "Sol torus bundle: +-A has a root of determinant -1",
        SolClause::ReversibleOrientationReversingOnly => {
            "Sol torus bundle: reversible only by determinant -1 matrices, no determinant -1 root"
        }
    }
}

/// The R∞ verdict for the fundamental group (and manifold) of a geometric 3-manifold.
pub fn decide(d: &GeometryDescriptor) -> Result<Verdict> {
    d.validate()?;
    Ok(match d {
        GeometryDescriptor::Spherical => Verdict {
            group: GroupVerdict::NotApplicableFiniteGroup,
            manifold_r_infinity: false,
            reason_code: "finite_fundamental_group",
            clause: None,
            certificate: None,
            citations: vec!["finite groups have at most |G| twisted classes"],
        },
        GeometryDescriptor::Hyperbolic { compact: true } => {
            r_infinity("always_r_infinity", "hyperbolic geometry: word-hyperbolic groups")
        }
        GeometryDescriptor::Hyperbolic { compact: false } => {
            r_infinity("always_r_infinity", "hyperbolic geometry: relatively hyperbolic groups")
        }
        GeometryDescriptor::H2xR => r_infinity("always_r_infinity", "H2xR geometry: central extension argument"),
        GeometryDescriptor::SLtilde => r_infinity("always_r_infinity", "SL2R-tilde geometry: central extension argument"),
        GeometryDescriptor::Sol(SolKind::Sapphire) => {
            r_infinity("sapphire", "Sol sapphire: characteristic index 2 torus-bundle subgroup")
        }
        GeometryDescriptor::Sol(SolKind::TorusBundle(a)) => {
            let v = decide_sol_torus_bundle(a)?;
            Verdict {
                group: GroupVerdict::RInfinity(v.r_infinity),
                manifold_r_infinity: v.r_infinity,
                reason_code: "sol_torus_bundle",
                clause: Some(v.clause.code()),
                certificate: v.certificate.map(Certificate::Sol),
                citations: vec![sol_clause_citation(v.clause)],
            }
        }
        GeometryDescriptor::S2xR(m) => {
            let entry = s2xr_entry(*m);
            Verdict {
                group: GroupVerdict::RInfinity(entry.group_r_infinity),
                manifold_r_infinity: entry.manifold_r_infinity,
                reason_code: "s2xr_table",
                clause: Some(m.name()),
                certificate: s2xr_certificate(*m),
                citations: vec![if entry.group_r_infinity {
                    "S2xR geometry: D-infinity = Z2*Z2 has the R-infinity property"
                } else {
                    "S2xR geometry: fibre-preserving map reflecting the base circle"
                }],
            }
        }
        GeometryDescriptor::Euclidean(i) => {
            let entry = flat_entry(*i)?;
            if entry.r_infinity {
                Verdict { clause: Some(FLAT_CLAUSES[usize::from(*i) - 1]), ..r_infinity("flat_table", "flat groups: R-infinity list") }
            } else {
                finite_r(
                    "flat_table",
                    FLAT_CLAUSES[usize::from(*i) - 1],
                    flat_certificate(*i),
                    "flat groups: orientable with holonomy 1, Z2 or Z2xZ2",
                )
            }
        }
        GeometryDescriptor::Nil { family, .. } => {
            let entry = nil_entry(*family);
            let clause = NIL_CLAUSES[usize::from(family.index()) - 1];
            if entry.r_infinity {
                Verdict { clause: Some(clause), ..r_infinity("nil_table", "Nil geometry: infra-nilmanifolds outside types i and ii") }
            } else {
                finite_r(
                    "nil_table",
                    clause,
                    Certificate::Literature("Nil types i and ii: Reidemeister spectrum known to contain finite values"),
                    "Nil geometry: infra-nilmanifold classification, types i and ii",
                )
            }
        }
    })
}

const FLAT_CLAUSES: [&str; 10] =
    ["flat_1", "flat_2", "flat_3", "flat_4", "flat_5", "flat_6", "flat_7", "flat_8", "flat_9", "flat_10"];

const NIL_CLAUSES: [&str; 15] = [
    "nil_M1", "nil_M2", "nil_M3", "nil_M4", "nil_M5", "nil_M6", "nil_M7", "nil_M8", "nil_M9", "nil_M10", "nil_M11",
    "nil_M12", "nil_M13", "nil_M14", "nil_M15",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_fixtures() {
        let expected = [false, false, true, true, true, false, true, true, true, true];
        let holonomy = [
            Holonomy::Trivial,
            Holonomy::Z2,
            Holonomy::Z3,
            Holonomy::Z4,
            Holonomy::Z6,
            Holonomy::Z2xZ2,
            Holonomy::Z2,
            Holonomy::Z2,
            Holonomy::Z2xZ2,
            Holonomy::Z2xZ2,
        ];
        for (e, (v, h)) in flat_table().iter().zip(expected.iter().zip(holonomy)) {
            assert_eq!(e.r_infinity, *v, "entry {}", e.index);
            assert_eq!(e.holonomy, h, "entry {}", e.index);
            assert_eq!(e.orientable, e.index <= 6);
        }
        assert!(matches!(flat_entry(11), Err(Error::OutOfRange(11, _))));
        assert_eq!(flat_entry(4).unwrap().central_quotient, Some("G4"));
    }

    #[test]
    fn nil_fixtures() {
        let table = nil_table();
        assert_eq!(table.len(), 15);
        let finite: Vec<u8> = table.iter().filter(|e| !e.r_infinity).map(|e| e.family.index()).collect();
        assert_eq!(finite, vec![1, 2]);
        assert_eq!(table[0].holonomy, Holonomy::Trivial);
        assert_eq!(table[1].seifert_invariants, "{k-2,(o1,0);(2,1),(2,1),(2,1),(2,1)}");
        assert_eq!(table[3].holonomy, Holonomy::Z2xZ2);
        assert_eq!(table[11].holonomy, Holonomy::Z6);
    }

    #[test]
    fn s2xr_fixtures() {
        let groups: Vec<bool> = s2xr_table().iter().map(|e| e.group_r_infinity).collect();
        assert_eq!(groups, vec![false, false, false, true]);
        assert_eq!(s2xr_entry(S2xRManifold::RP2xS1).fundamental_group, "Z2xZ");
        for e in s2xr_table() {
            assert_eq!(e.group_r_infinity, e.manifold_r_infinity);
        }
    }

    #[test]
    fn certificates() {
        let v = decide(&GeometryDescriptor::Euclidean(1)).unwrap();
        assert!(matches!(v.certificate, Some(Certificate::Lattice { ref reidemeister_number, .. }) if *reidemeister_number == Cardinality::finite(8)));
        let v = decide(&GeometryDescriptor::Euclidean(6)).unwrap();
        assert_eq!(v.group, GroupVerdict::RInfinity(false));
        assert!(matches!(v.certificate, Some(Certificate::HantzscheWendt(ref r)) if r.total == Cardinality::finite(8)));
        let v = decide(&GeometryDescriptor::S2xR(S2xRManifold::RP2xS1)).unwrap();
        assert!(matches!(v.certificate, Some(Certificate::Product { ref reidemeister_number, .. }) if *reidemeister_number == Cardinality::finite(4)));
        let v = decide(&GeometryDescriptor::S2xR(S2xRManifold::S2xS1)).unwrap();
        assert!(matches!(v.certificate, Some(Certificate::Product { ref reidemeister_number, .. }) if *reidemeister_number == Cardinality::finite(2)));
    }

    #[test]
    fn examples() {
        let nil3 = GeometryDescriptor::Nil { family: NilFamily::new(3).unwrap(), k: 1.into() };
        assert_eq!(decide(&nil3).unwrap().group, GroupVerdict::RInfinity(true));
        let rp3 = decide(&GeometryDescriptor::S2xR(S2xRManifold::RP3connRP3)).unwrap();
        assert_eq!(rp3.group, GroupVerdict::RInfinity(true));
        let sph = decide(&GeometryDescriptor::Spherical).unwrap();
        assert_eq!(sph.group, GroupVerdict::NotApplicableFiniteGroup);
        assert!(!sph.manifold_r_infinity);
    }

    #[test]
    fn invalid_descriptors() {
        let bad_k = GeometryDescriptor::Nil { family: NilFamily::new(1).unwrap(), k: 0.into() };
        assert!(matches!(decide(&bad_k), Err(Error::InvalidDescriptor(_))));
        assert!(NilFamily::new(16).is_err());
        assert!(matches!(
            decide(&GeometryDescriptor::Sol(SolKind::TorusBundle(Mat2::new(1, 1, 0, 1)))),
            Err(Error::NotAnosov(_))
        ));
        assert_eq!("M12".parse::<NilFamily>().unwrap().index(), 12);
        assert_eq!("RP3#RP3".parse::<S2xRManifold>().unwrap(), S2xRManifold::RP3connRP3);
    }

    fn non_sol_descriptors() -> Vec<GeometryDescriptor> {
        let mut all = vec![
            GeometryDescriptor::Spherical,
            GeometryDescriptor::SLtilde,
            GeometryDescriptor::H2xR,
            GeometryDescriptor::Hyperbolic { compact: true },
            GeometryDescriptor::Hyperbolic { compact: false },
            GeometryDescriptor::Sol(SolKind::Sapphire),
        ];
        all.extend(S2xRManifold::ALL.map(GeometryDescriptor::S2xR));
        all.extend((1..=10).map(GeometryDescriptor::Euclidean));
        for family in NilFamily::all() {
            for k in 1..=3 {
                all.push(GeometryDescriptor::Nil { family, k: k.into() });
            }
        }
        all
    }

    #[test]
    fn exhaustive_non_sol() {
        for d in non_sol_descriptors() {
            let v = decide(&d).unwrap();
            match (&d, v.group) {
                (GeometryDescriptor::Spherical, GroupVerdict::NotApplicableFiniteGroup) => {}
                (GeometryDescriptor::Spherical, _) => panic!("spherical must be finite"),
                (_, GroupVerdict::RInfinity(g)) => {
                    assert_eq!(g, v.manifold_r_infinity, "{d:?}");
                    if !g {
                        assert!(v.certificate.is_some(), "{d:?} lacks a certificate");
                    }
                }
                (_, GroupVerdict::NotApplicableFiniteGroup) => panic!("{d:?} is infinite"),
            }
            assert!(!v.citations.is_empty());
        }
    }
}

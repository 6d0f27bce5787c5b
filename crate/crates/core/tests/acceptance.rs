//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails if a criterion fails that is not listed in `UNATTAINABLE`.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rinfinity::appendix_maps::{appendix_pairs, induced_h3_matrix, verify_inverse_pair};
use rinfinity::catalog::{flat_table, nil_table, s2xr_table};
use rinfinity::exact_linear::Cardinality;
use rinfinity::glz_conjugacy::{
    bruteforce_conjugator_search, commutant_lattice, decide_sol_torus_bundle, fundamental_unit, gl2z_conjugate,
    ConjugatorBall, SolClause,
};
use rinfinity::reidemeister::{
    lattice_quotient_oracle, reidemeister_lattice, reidemeister_sol, verify_hantzsche_wendt, LatticeAut, SolAut,
};
use rinfinity::Mat2;

use common::{all_anosov, conjugate_by, m2, random_anosov, random_gl2z, random_unimodular};

/// Criteria that cannot hold, with the reason. Each is still run and reported.
const UNATTAINABLE: &[(u32, &str)] = &[(
    3,
    "(4 1; 3 1) is GL(2,Z)-conjugate to its inverse by the det -1 matrix (-1 1; 0 1), so it is not irreversible",
)];

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn sol_symmetric_family() -> Outcome {
    let mut times = Vec::new();
    for k in 1i64..=3 {
        let a = m2(k * k + 1, k, k, 1);
        let start = Instant::now();
        let v = decide_sol_torus_bundle(&a).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(!v.r_infinity, format!("k = {k}: reported R-infinity"))?;
        let total = v.certificate.ok_or(format!("k = {k}: no certificate"))?.total;
        check(total == Cardinality::finite(4), format!("k = {k}: R = {total}"))?;
        within(elapsed, Duration::from_millis(10), &format!("k = {k}"))?;
        times.push(format!("{elapsed:.1?}"));
    }
    Ok(format!("R = 4 for k = 1, 2, 3 ({})", times.join(", ")))
}

fn sol_det_minus_one() -> Outcome {
    let v = decide_sol_torus_bundle(&m2(1, 1, 2, 1)).map_err(|e| e.to_string())?;
    check(v.r_infinity && v.clause == SolClause::DetMinusOne, format!("got {:?}", v.clause))?;
    Ok("(1 1; 2 1) -> R-infinity, det -1 clause".into())
}

fn sol_irreversible() -> Outcome {
    let a = m2(4, 1, 3, 1);
    let inv = a.inverse_unimodular().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let v = decide_sol_torus_bundle(&a).map_err(|e| e.to_string())?;
    let witness = bruteforce_conjugator_search(&a, &inv, 10);
    within(start.elapsed(), Duration::from_secs(5), "decision and search")?;
    check(v.r_infinity, "reported finite R")?;
    if let Some(w) = witness {
        return Err(format!(
            "R-infinity holds but via clause {:?}; brute force found reverser {} = {} (det {})",
            v.clause.code(),
            w.word,
            w.matrix,
            w.matrix.det()
        ));
    }
    check(v.clause == SolClause::NotReversible, format!("clause {:?}", v.clause))?;
    Ok("(4 1; 3 1) -> R-infinity, not reversible, no witness within 10".into())
}

fn hantzsche_wendt() -> Outcome {
    let report = verify_hantzsche_wendt();
    check(report.r_phi_prime() == &Cardinality::finite(2), format!("R(phi') = {}", report.r_phi_prime()))?;
    for (theta, r) in &report.lifts {
        check(*r == Cardinality::finite(2), format!("theta = {theta}: R = {r}"))?;
    }
    let direct = reidemeister_lattice(&LatticeAut::Rank3(report.phi_prime.clone()));
    check(direct == Cardinality::finite(2), "direct lattice value")?;
    Ok(format!("|det(I - theta phi')| = 2 for all four lifts, total {}", report.total))
}

fn table_fixtures() -> Outcome {
    let flat: Vec<(u8, bool)> = flat_table().iter().map(|e| (e.index, e.r_infinity)).collect();
    let expected_flat: Vec<(u8, bool)> = (1..=10).map(|i| (i, !matches!(i, 1 | 2 | 6))).collect();
    check(flat == expected_flat, format!("flat verdicts {flat:?}"))?;
    let nil_false: Vec<u8> = nil_table().iter().filter(|e| !e.r_infinity).map(|e| e.family.index()).collect();
    check(nil_false == vec![1, 2], format!("Nil false on {nil_false:?}"))?;
    let s2xr: Vec<bool> = s2xr_table().iter().map(|e| e.group_r_infinity).collect();
    check(s2xr == vec![false, false, false, true], format!("S2xR {s2xr:?}"))?;
    Ok("flat, Nil and S2xR verdict tables match".into())
}

fn quaternion_identity() -> Outcome {
    let start = Instant::now();
    let [(f1, g1), (f2, g2)] = appendix_pairs();
    let mut worst: f64 = 0.0;
    for (f, g) in [(&f1, &g1), (&f2, &g2)] {
        // verify_inverse_pair composes in both orders
        worst = worst.max(verify_inverse_pair(f, g, 100, 20240101));
        let (mf, mg) = (induced_h3_matrix(f).map_err(|e| e.to_string())?, induced_h3_matrix(g).map_err(|e| e.to_string())?);
        check((&mf * &mg).is_identity() && (&mg * &mf).is_identity(), "induced matrices are not inverse")?;
    }
    check(induced_h3_matrix(&f1).ok() == Some(m2(1, 1, 2, 1)), "first matrix")?;
    check(induced_h3_matrix(&f2).ok() == Some(m2(4, 1, 3, 1)), "second matrix")?;
    check(worst < 1e-12, format!("max deviation {worst:e}"))?;
    within(start.elapsed(), Duration::from_secs(1), "sampling")?;
    Ok(format!("max deviation {worst:.2e} over 100 samples, both orders"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let mut lattice_cases = 0;
    while lattice_cases < 100 {
        let m = random_unimodular(&mut rng, 5, None);
        let d = (&Mat2::identity() - &m).det();
        if d == 0.into() {
            continue;
        }
        let modulus = 2 * u64::try_from(d.magnitude().clone()).unwrap();
        let phi = LatticeAut::rank2(m.clone()).map_err(|e| e.to_string())?;
        let count = lattice_quotient_oracle(&phi, modulus).map_err(|e| e.to_string())?;
        let value = reidemeister_lattice(&phi);
        check(value == Cardinality::finite(count), format!("{m}: R = {value}, quotient mod {modulus} gives {count}"))?;
        lattice_cases += 1;
    }

    let ball = ConjugatorBall::new(8);
    let mut by_invariants: BTreeMap<(String, String), Vec<Mat2>> = BTreeMap::new();
    for a in all_anosov(6) {
        by_invariants.entry((a.det().to_string(), a.trace().to_string())).or_default().push(a);
    }
    let classes: Vec<&Vec<Mat2>> = by_invariants.values().filter(|v| v.len() > 1).collect();
    let irreversible = [m2(4, 9, 7, 16), m2(2, 5, 7, 18), m2(3, 5, 10, 17)];
    let (mut positives, mut pairs) = (0, 0);
    use rand::Rng;
    while pairs < 240 {
        let (a, b) = match pairs % 4 {
            0 => {
                let a = random_anosov(&mut rng, 10, None);
                let len = rng.random_range(1..=4);
                let b = conjugate_by(&random_gl2z(&mut rng, len), &a);
                (a, b)
            }
            1 => {
                let a = random_anosov(&mut rng, 10, Some(1));
                let inv = a.inverse_unimodular().unwrap();
                (a, inv)
            }
            2 => {
                // irreversible matrices against conjugates of their inverses
                let a = irreversible[rng.random_range(0..irreversible.len())].clone();
                let len = rng.random_range(0..=4);
                let b = conjugate_by(&random_gl2z(&mut rng, len), &a.inverse_unimodular().unwrap());
                (a, b)
            }
            _ => {
                let class = classes[rng.random_range(0..classes.len())];
                (class[rng.random_range(0..class.len())].clone(), class[rng.random_range(0..class.len())].clone())
            }
        };
        let word = gl2z_conjugate(&a, &b).map_err(|e| e.to_string())?;
        let brute = ball.search(&a, &b);
        match (&word, &brute) {
            (Some(c), _) => {
                check(&c.matrix * &a == &b * &c.matrix, format!("unverified conjugator for {a}, {b}"))?;
                positives += 1;
            }
            (None, Some(w)) => return Err(format!("brute force {} contradicts non-conjugacy of {a}, {b}", w.word)),
            (None, None) => {}
        }
        pairs += 1;
    }
    within(start.elapsed(), Duration::from_secs(30), "oracle checks")?;
    Ok(format!("{lattice_cases} lattice maps agree; {pairs} pairs ({positives} conjugate) without contradiction"))
}

fn unit_group_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let a = random_anosov(&mut rng, 30, Some(1));
        let lattice = commutant_lattice(&a).map_err(|e| e.to_string())?;
        let units = fundamental_unit(&lattice).map_err(|e| e.to_string())?;
        let power = units.power(units.exponent as i64);
        check(power == a || power == -&a, format!("{a}: unit^{} = {power}", units.exponent))?;

        let mut known: HashSet<Mat2> = HashSet::new();
        for n in -20..=20 {
            let p = units.power(n);
            known.insert(-&p);
            known.insert(p);
        }
        let (t, d) = (lattice.m1().trace(), lattice.m1().det());
        for x in -50i64..=50 {
            for y in -50i64..=50 {
                let norm = &(x * x) + &t * (x * y) + &d * (y * y);
                if norm == 1.into() || norm == (-1).into() {
                    let u = lattice.element(&x.into(), &y.into());
                    check(known.contains(&u), format!("{a}: unit {u} is not a power of {}", units.unit))?;
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10), "unit search")?;
    Ok("50 matrices: unit^m = +-A and every small unit is +-unit^n".into())
}

fn conjugation_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let matrices = [
        m2(2, 1, 1, 1),
        m2(5, 2, 2, 1),
        m2(10, 3, 3, 1),
        m2(1, 1, 2, 1),
        m2(4, 1, 3, 1),
        m2(4, 9, 7, 16),
        m2(2, 1, 3, 2),
        m2(3, 2, 4, 3),
    ];
    for a in &matrices {
        let base = decide_sol_torus_bundle(a).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            use rand::Rng;
            let len = rng.random_range(1..=6);
            let p = random_gl2z(&mut rng, len);
            let b = conjugate_by(&p, a);
            let v = decide_sol_torus_bundle(&b).map_err(|e| e.to_string())?;
            check(v.r_infinity == base.r_infinity && v.clause == base.clause, format!("{a} vs {b}"))?;
            if let Some(cert) = &v.certificate {
                let phi = SolAut::new(cert.automorphism.clone(), cert.eps, b.clone()).map_err(|e| e.to_string())?;
                check(reidemeister_sol(&phi) == cert.total, "certificate value does not recompute")?;
                check(Some(&cert.total) == base.certificate.as_ref().map(|c| &c.total), "certificate totals differ")?;
            }
        }
    }
    Ok(format!("{} matrices x 20 conjugates agree", matrices.len()))
}

fn cli_golden() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str], &str); 3] = [
        ("sol_det_minus_one.json", &["--json", "sol", "--matrix", "1,1;2,1"], ""),
        ("sol_symmetric.json", &["--json", "sol", "--matrix", "2,1;1,1"], ""),
        ("decide_nil_m2.json", &["--json", "decide", "--stdin"], r#"{"geometry":"nil","family":"M2","k":1}"#),
    ];
    for (file, args, stdin) in cases {
        let run = || {
            let mut input = stdin.as_bytes();
            rinfinity::cli::run(std::iter::once("rinfinity").chain(args.iter().copied()), &mut input)
        };
        let (first, second) = (run(), run());
        check(first.code == 0, format!("{file}: exit {}", first.code))?;
        check(first.stdout == second.stdout, format!("{file}: output differs between runs"))?;
        let golden = std::fs::read_to_string(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        check(first.stdout == golden, format!("{file}: output differs from golden file"))?;
    }
    Ok("three reports byte-identical across runs and to golden files".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "Sol symmetric family has a finite certificate", sol_symmetric_family),
        (2, "Sol det -1 monodromy", sol_det_minus_one),
        (3, "Sol irreversible monodromy", sol_irreversible),
        (4, "Hantzsche-Wendt lattice values", hantzsche_wendt),
        (5, "classification tables", table_fixtures),
        (6, "quaternion inverse pairs", quaternion_identity),
        (7, "finite and brute-force oracle agreement", oracle_equivalence),
        (8, "unit group soundness", unit_group_soundness),
        (9, "conjugation invariance of the Sol decision", conjugation_invariance),
        (10, "CLI golden reports", cli_golden),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(reason) => {
                println!("criterion {n:>2} FAIL  {name}: {reason}");
                match UNATTAINABLE.iter().find(|(k, _)| *k == n) {
                    Some((_, why)) => println!("             known unattainable: {why}"),
                    None => unexpected.push(n),
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 decided, 1 input error, 2 internal verification failure.

use std::io::Read;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::appendix_maps::verify_appendix;
use crate::catalog::{
    decide, flat_table, nil_table, s2xr_table, Certificate, GeometryDescriptor, GroupVerdict, NilFamily, S2xRManifold,
    SolKind, Verdict,
};
use crate::error::{Error, Result};
use crate::exact_linear::{Cardinality, Int, Mat2, Mat3, MatN};
use crate::glz_conjugacy::{
    commutant_lattice, find_reverser, fundamental_unit, gl2z_conjugate, has_det_minus_one_root, Route,
    SolCertificate,
};
use crate::reidemeister::{
    finite_quotient_sol_oracle, lattice_quotient_oracle, reidemeister_lattice, reidemeister_sol, HantzscheWendtReport,
    LatticeAut, SolAut,
};

/// Deviation allowed in `verify-appendix`.
pub const APPENDIX_TOLERANCE: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "rinfinity", version, about = "R-infinity property of 3-manifold groups")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a geometry descriptor given as a JSON document.
    Decide {
        #[arg(long, conflicts_with = "stdin", required_unless_present = "stdin")]
        input: Option<std::path::PathBuf>,
        #[arg(long)]
        stdin: bool,
    },
    /// Decide the torus bundle group Z² ⋊_A Z.
    Sol {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// GL(2,Z)-conjugacy of two Anosov matrices.
    Conj {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Search for S with S·A·S⁻¹ = A⁻¹.
    Reverser {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Commutant lattice, fundamental unit and determinant −1 roots.
    Root {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Reidemeister number of a lattice or torus-bundle automorphism.
    Reidemeister {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, requires = "base")]
        sol: bool,
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        eps: i8,
    },
    /// Print a classification table.
    Table {
        #[arg(long, value_enum)]
        geometry: TableKind,
    },
    /// Check the quaternion inverse pairs numerically.
    VerifyAppendix {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count twisted classes on a finite quotient.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long = "mod")]
        modulus: u64,
        /// Fibre map S; the matrix is then the torus-bundle monodromy.
        #[arg(long, allow_hyphen_values = true)]
        automorphism: Option<String>,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        eps: i8,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    Flat,
    Nil,
    S2xr,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `"a,b;c,d"` (rows separated by `;`) into integer rows.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<Int>>> {
    let rows: Vec<Vec<Int>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<Int>().map_err(|_| Error::Parse(format!("bad integer {:?} in {s:?}", x.trim()))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Parse(format!("matrix {s:?} is not square")));
    }
    Ok(rows)
}

pub fn parse_mat2(s: &str) -> Result<Mat2> {
    let rows = parse_rows(s)?;
    if rows.len() != 2 {
        return Err(Error::Parse(format!("expected a 2x2 matrix \"a,b;c,d\", got {s:?}")));
    }
    let [r0, r1] = [&rows[0], &rows[1]];
    Ok(Mat2::new(r0[0].clone(), r0[1].clone(), r1[0].clone(), r1[1].clone()))
}

fn mat3_from_rows(rows: &[Vec<Int>]) -> Mat3 {
    Mat3 { rows: std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone())) }
}

fn mat2_json(m: &Mat2) -> Value {
    json!([[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]])
}

fn matn_json(m: &MatN) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

fn mat3_json(m: &Mat3) -> Value {
    matn_json(&m.into())
}

fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

fn cardinality_json(c: &Cardinality) -> Value {
    match c {
        Cardinality::Finite(x) => int_json(x),
        Cardinality::Infinite => Value::String("infinite".into()),
    }
}

fn sol_certificate_json(c: &SolCertificate) -> Value {
    json!({
        "kind": "sol_automorphism",
        "automorphism": mat2_json(&c.automorphism),
        "eps": c.eps,
        "r_fibre": cardinality_json(&c.r_s),
        "r_monodromy_twisted": cardinality_json(&c.r_as),
        "reidemeister_number": cardinality_json(&c.total),
    })
}

fn hantzsche_wendt_json(r: &HantzscheWendtReport) -> Value {
    json!({
        "kind": "hantzsche_wendt",
        "phi_prime": mat3_json(&r.phi_prime),
        "lifts": r.lifts.iter().map(|(theta, n)| json!({
            "theta": mat3_json(theta),
            "reidemeister_number": cardinality_json(n),
        })).collect::<Vec<_>>(),
        "reidemeister_number": cardinality_json(&r.total),
    })
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Sol(s) => sol_certificate_json(s),
        Certificate::Lattice { matrix, reidemeister_number } => json!({
            "kind": "lattice_automorphism",
            "matrix": matn_json(matrix),
            "reidemeister_number": cardinality_json(reidemeister_number),
        }),
        Certificate::HantzscheWendt(r) => hantzsche_wendt_json(r),
        Certificate::Product { description, reidemeister_number } => json!({
            "kind": "product_automorphism",
            "description": description,
            "reidemeister_number": cardinality_json(reidemeister_number),
        }),
        Certificate::Literature(reference) => json!({ "kind": "literature", "reference": reference }),
    }
}

#[derive(Serialize)]
struct VerdictFlags {
    group_r_infinity: Value,
    manifold_r_infinity: bool,
}

#[derive(Serialize)]
struct ReportDocument {
    geometry: &'static str,
    verdict: VerdictFlags,
    reason_code: &'static str,
    clause: Option<&'static str>,
    certificate: Option<Value>,
    citations: Vec<&'static str>,
}

fn report_document(d: &GeometryDescriptor, v: &Verdict) -> ReportDocument {
    let group = match v.group {
        GroupVerdict::RInfinity(b) => Value::Bool(b),
        GroupVerdict::NotApplicableFiniteGroup => Value::String("finite_group".into()),
    };
    ReportDocument {
        geometry: d.name(),
        verdict: VerdictFlags { group_r_infinity: group, manifold_r_infinity: v.manifold_r_infinity },
        reason_code: v.reason_code,
        clause: v.clause,
        certificate: v.certificate.as_ref().map(certificate_json),
        citations: v.citations.clone(),
    }
}

fn verdict_text(d: &GeometryDescriptor, v: &Verdict) -> String {
    let group = match v.group {
        GroupVerdict::RInfinity(b) => b.to_string(),
        GroupVerdict::NotApplicableFiniteGroup => "finite_group".to_string(),
    };
    let mut out = format!(
        "geometry: {}\ngroup_r_infinity: {group}\nmanifold_r_infinity: {}\nreason: {}\n",
        d.name(),
        v.manifold_r_infinity,
        v.reason_code
    );
    if let Some(c) = v.clause {
        out += &format!("clause: {c}\n");
    }
    match &v.certificate {
        Some(Certificate::Sol(c)) => {
            out += &format!(
                "certificate: S = {}, eps = {}, R = {} + {} = {}\n",
                c.automorphism, c.eps, c.r_s, c.r_as, c.total
            )
        }
        Some(Certificate::Lattice { matrix, reidemeister_number }) => {
            out += &format!("certificate: lattice automorphism {matrix}, R = {reidemeister_number}\n")
        }
        Some(Certificate::HantzscheWendt(r)) => {
            let parts: Vec<String> = r.lifts.iter().map(|(_, n)| n.to_string()).collect();
            out += &format!("certificate: phi' = {}, R = {} = {}\n", r.phi_prime, parts.join(" + "), r.total)
        }
        Some(Certificate::Product { description, reidemeister_number }) => {
            out += &format!("certificate: {description}, R = {reidemeister_number}\n")
        }
        Some(Certificate::Literature(r)) => out += &format!("certificate: {r}\n"),
        None => {}
    }
    for c in &v.citations {
        out += &format!("citation: {c}\n");
    }
    out
}

fn json_int(v: &Value, field: &str) -> Result<Int> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("field {field:?}: bad integer {s:?}"))),
        _ => Err(Error::Parse(format!("field {field:?}: expected an integer"))),
    }
}

fn json_mat2(v: &Value) -> Result<Mat2> {
    let bad = || Error::Parse("field \"matrix\": expected [[a,b],[c,d]]".into());
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        for x in row {
            e.push(json_int(x, "matrix")?);
        }
    }
    let [a, b, c, d]: [Int; 4] = e.try_into().map_err(|_| bad())?;
    Ok(Mat2::new(a, b, c, d))
}

fn field<'a>(doc: &'a Value, name: &str) -> Result<&'a Value> {
    doc.get(name).ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn field_str<'a>(doc: &'a Value, name: &str) -> Result<&'a str> {
    field(doc, name)?.as_str().ok_or_else(|| Error::Parse(format!("field {name:?} must be a string")))
}

/// Reads an input document such as `{"geometry":"nil","family":"M2","k":1}`.
pub fn parse_descriptor(text: &str) -> Result<GeometryDescriptor> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let geometry = field_str(&doc, "geometry")?.to_ascii_lowercase();
    let d = match geometry.as_str() {
        "spherical" | "s3" => GeometryDescriptor::Spherical,
        "s2xr" => GeometryDescriptor::S2xR(field_str(&doc, "manifold")?.parse::<S2xRManifold>()?),
        "flat" | "euclidean" | "e3" => {
            let i = json_int(field(&doc, "index")?, "index")?;
            let i = i.to_u8().filter(|i| (1..=10).contains(i)).ok_or_else(|| {
                Error::InvalidDescriptor(format!("flat group index {i} outside 1..=10"))
            })?;
            GeometryDescriptor::Euclidean(i)
        }
        "nil" => {
            let family = match field(&doc, "family")? {
                Value::String(s) => s.parse::<NilFamily>()?,
                other => {
                    let i = json_int(other, "family")?;
                    NilFamily::new(i.to_u8().ok_or_else(|| Error::InvalidDescriptor(format!("bad Nil family {i}")))?)?
                }
            };
            GeometryDescriptor::Nil { family, k: json_int(field(&doc, "k")?, "k")? }
        }
        "sltilde" | "sl2r" => GeometryDescriptor::SLtilde,
        "h2xr" => GeometryDescriptor::H2xR,
        "hyperbolic" | "h3" => GeometryDescriptor::Hyperbolic {
            compact: doc.get("compact").map_or(Ok(true), |v| {
                v.as_bool().ok_or_else(|| Error::Parse("field \"compact\" must be a boolean".into()))
            })?,
        },
        "sol" => match doc.get("kind").and_then(Value::as_str) {
            Some("sapphire") => GeometryDescriptor::Sol(SolKind::Sapphire),
            Some("torus_bundle") | None => GeometryDescriptor::Sol(SolKind::TorusBundle(json_mat2(field(&doc, "matrix")?)?)),
            Some(other) => return Err(Error::InvalidDescriptor(format!("unknown Sol kind {other:?}"))),
        },
        other => return Err(Error::InvalidDescriptor(format!("unknown geometry {other:?}"))),
    };
    d.validate()?;
    Ok(d)
}

struct Rendered {
    json: Value,
    text: String,
    ok: bool,
}

impl Rendered {
    fn new(json: Value, text: String) -> Self {
        Rendered { json, text, ok: true }
    }
}

fn render_verdict(d: &GeometryDescriptor) -> Result<Rendered> {
    let v = decide(d)?;
    let json = serde_json::to_value(report_document(d, &v)).expect("serializable report");
    Ok(Rendered::new(json, verdict_text(d, &v)))
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Direct => "direct",
        Route::Flip => "flip",
        Route::NormalForm => "normal_form",
    }
}

fn cmd_conj(a: &str, b: &str) -> Result<Rendered> {
    let (a, b) = (parse_mat2(a)?, parse_mat2(b)?);
    let c = gl2z_conjugate(&a, &b)?;
    let json = json!({
        "a": mat2_json(&a),
        "b": mat2_json(&b),
        "conjugate": c.is_some(),
        "conjugator": c.as_ref().map(|c| mat2_json(&c.matrix)),
        "det": c.as_ref().map(|c| c.det),
        "route": c.as_ref().map(|c| route_name(c.route)),
    });
    let text = match &c {
        Some(c) => format!("conjugate: true\nconjugator: {} (det {}, {})\n", c.matrix, c.det, route_name(c.route)),
        None => "conjugate: false\n".to_string(),
    };
    Ok(Rendered::new(json, text))
}

fn cmd_reverser(m: &str) -> Result<Rendered> {
    let a = parse_mat2(m)?;
    let r = find_reverser(&a)?;
    let json = json!({
        "matrix": mat2_json(&a),
        "exists": r.exists,
        "witness": r.witness.as_ref().map(mat2_json),
        "witness_det": r.witness_det,
        "symmetric_conjugate": r.symmetric_conjugate,
        "orientation_preserving": r.orientation_preserving.as_ref().map(mat2_json),
    });
    let mut text = format!("reversible: {}\n", r.exists);
    if let (Some(w), Some(d)) = (&r.witness, r.witness_det) {
        text += &format!("reverser: {w} (det {d})\n");
    }
    text += &format!("symmetric_conjugate: {}\n", r.symmetric_conjugate);
    if let Some(s) = &r.orientation_preserving {
        text += &format!("det +1 reverser: {s}\n");
    }
    Ok(Rendered::new(json, text))
}

fn cmd_root(m: &str) -> Result<Rendered> {
    let a = parse_mat2(m)?;
    if !a.is_anosov() {
        return Err(Error::NotAnosov(a.to_string()));
    }
    let lattice = commutant_lattice(&a)?;
    let units = fundamental_unit(&lattice)?;
    let root = if a.unit_det() == Some(1) { has_det_minus_one_root(&a)? } else { None };
    let json = json!({
        "matrix": mat2_json(&a),
        "commutant": {
            "gcd": int_json(lattice.gcd()),
            "m1": mat2_json(lattice.m1()),
            "discriminant": int_json(&lattice.discriminant()),
        },
        "fundamental_unit": mat2_json(&units.unit),
        "unit_det": units.det,
        "exponent": units.exponent,
        "sign": units.sign,
        "det_minus_one_root": root.as_ref().map(|r| json!({
            "root": mat2_json(&r.root),
            "power": r.power,
            "sign": r.sign,
        })),
    });
    let mut text = format!(
        "commutant: I, M1 = {} (g = {}, discriminant {})\nfundamental unit: {} (det {})\n{}^{} = {}A\n",
        lattice.m1(),
        lattice.gcd(),
        lattice.discriminant(),
        units.unit,
        units.det,
        "unit",
        units.exponent,
        if units.sign == 1 { "" } else { "-" }
    );
    text += &format!("det -1 root: {}\n", root.is_some());
    Ok(Rendered::new(json, text))
}

fn cmd_reidemeister(m: &str, sol: bool, base: Option<&str>, eps: i8) -> Result<Rendered> {
    if sol {
        let s = parse_mat2(m)?;
        let base = parse_mat2(base.ok_or_else(|| Error::Parse("--sol needs --base".into()))?)?;
        let phi = SolAut::new(s.clone(), eps, base.clone())?;
        let r = reidemeister_sol(&phi);
        let json = json!({
            "automorphism": mat2_json(&s),
            "base": mat2_json(&base),
            "eps": eps,
            "reidemeister_number": cardinality_json(&r),
        });
        return Ok(Rendered::new(json, format!("R = {r}\n")));
    }
    let rows = parse_rows(m)?;
    let phi = match rows.len() {
        2 => LatticeAut::rank2(parse_mat2(m)?)?,
        3 => LatticeAut::rank3(mat3_from_rows(&rows))?,
        n => return Err(Error::DimensionMismatch(format!("expected a 2x2 or 3x3 matrix, got {n}x{n}"))),
    };
    let r = reidemeister_lattice(&phi);
    let json = json!({ "matrix": matn_json(&phi.matrix()), "reidemeister_number": cardinality_json(&r) });
    Ok(Rendered::new(json, format!("R = {r}\n")))
}

fn cmd_table(kind: TableKind) -> Rendered {
    match kind {
        TableKind::Flat => {
            let entries: Vec<Value> = flat_table()
                .iter()
                .map(|e| {
                    json!({
                        "index": e.index,
                        "presentation": e.presentation.to_string(),
                        "holonomy": e.holonomy.name(),
                        "center": e.center,
                        "central_quotient": e.central_quotient,
                        "orientable": e.orientable,
                        "r_infinity": e.r_infinity,
                    })
                })
                .collect();
            let text = flat_table()
                .iter()
                .map(|e| format!("{:>2}  {:<6} {:<14} {}\n", e.index, e.holonomy.name(), if e.orientable { "orientable" } else { "non-orientable" }, e.r_infinity))
                .collect();
            Rendered::new(json!({ "geometry": "flat", "entries": entries }), text)
        }
        TableKind::Nil => {
            let entries: Vec<Value> = nil_table()
                .iter()
                .map(|e| {
                    json!({
                        "family": e.family.to_string(),
                        "type": e.kind,
                        "seifert_invariants": e.seifert_invariants,
                        "holonomy": e.holonomy.name(),
                        "r_infinity": e.r_infinity,
                    })
                })
                .collect();
            let text = nil_table()
                .iter()
                .map(|e| format!("{:<4} {:<4} {:<42} {:<6} {}\n", e.family.to_string(), e.kind, e.seifert_invariants, e.holonomy.name(), e.r_infinity))
                .collect();
            Rendered::new(json!({ "geometry": "nil", "entries": entries }), text)
        }
        TableKind::S2xr => {
            let entries: Vec<Value> = s2xr_table()
                .iter()
                .map(|e| {
                    json!({
                        "manifold": e.manifold.name(),
                        "fundamental_group": e.fundamental_group,
                        "group_r_infinity": e.group_r_infinity,
                        "manifold_r_infinity": e.manifold_r_infinity,
                    })
                })
                .collect();
            let text = s2xr_table()
                .iter()
                .map(|e| format!("{:<10} {:<6} {} {}\n", e.manifold.name(), e.fundamental_group, e.group_r_infinity, e.manifold_r_infinity))
                .collect();
            Rendered::new(json!({ "geometry": "s2xr", "entries": entries }), text)
        }
    }
}

fn cmd_verify_appendix(samples: usize, seed: u64) -> Result<Rendered> {
    if samples == 0 {
        return Err(Error::Parse("--samples must be at least 1".into()));
    }
    let reports = verify_appendix(samples, seed)?;
    let pass = |r: &crate::appendix_maps::PairReport| r.product_is_identity && r.max_deviation < APPENDIX_TOLERANCE;
    let all = reports.iter().all(pass);
    let json = json!({
        "samples": samples,
        "seed": seed,
        "tolerance": APPENDIX_TOLERANCE,
        "pairs": reports.iter().map(|r| json!({
            "forward": mat2_json(&r.forward),
            "backward": mat2_json(&r.backward),
            "product_is_identity": r.product_is_identity,
            "max_deviation": r.max_deviation,
            "pass": pass(r),
        })).collect::<Vec<_>>(),
        "pass": all,
    });
    let text = reports
        .iter()
        .map(|r| format!("{} / {}: max deviation {:.3e}, {}\n", r.forward, r.backward, r.max_deviation, if pass(r) { "pass" } else { "FAIL" }))
        .collect();
    Ok(Rendered { json, text, ok: all })
}

fn cmd_oracle(m: &str, modulus: u64, automorphism: Option<&str>, eps: i8) -> Result<Rendered> {
    if let Some(s) = automorphism {
        let a = parse_mat2(m)?;
        let s = parse_mat2(s)?;
        let phi = SolAut::new(s.clone(), eps, a.clone())?;
        let count = finite_quotient_sol_oracle(&a, &phi, modulus)?;
        let r = reidemeister_sol(&phi);
        let json = json!({
            "base": mat2_json(&a),
            "automorphism": mat2_json(&s),
            "eps": eps,
            "modulus": modulus,
            "twisted_classes": count,
            "reidemeister_number": cardinality_json(&r),
        });
        return Ok(Rendered::new(json, format!("quotient classes: {count}\nR = {r}\n")));
    }
    let rows = parse_rows(m)?;
    let phi = match rows.len() {
        2 => LatticeAut::rank2(parse_mat2(m)?)?,
        3 => LatticeAut::rank3(mat3_from_rows(&rows))?,
        n => return Err(Error::DimensionMismatch(format!("expected a 2x2 or 3x3 matrix, got {n}x{n}"))),
    };
    let count = lattice_quotient_oracle(&phi, modulus)?;
    let r = reidemeister_lattice(&phi);
    let json = json!({
        "matrix": matn_json(&phi.matrix()),
        "modulus": modulus,
        "twisted_classes": count,
        "reidemeister_number": cardinality_json(&r),
    });
    Ok(Rendered::new(json, format!("quotient classes: {count}\nR = {r}\n")))
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Result<Rendered> {
    match cli.command {
        Command::Decide { input, stdin: use_stdin } => {
            let text = if use_stdin {
                let mut s = String::new();
                stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
                s
            } else {
                let path = input.expect("clap enforces --input or --stdin");
                std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("reading {}: {e}", path.display())))?
            };
            render_verdict(&parse_descriptor(&text)?)
        }
        Command::Sol { matrix } => render_verdict(&GeometryDescriptor::Sol(SolKind::TorusBundle(parse_mat2(&matrix)?))),
        Command::Conj { a, b } => cmd_conj(&a, &b),
        Command::Reverser { matrix } => cmd_reverser(&matrix),
        Command::Root { matrix } => cmd_root(&matrix),
        Command::Reidemeister { matrix, sol, base, eps } => cmd_reidemeister(&matrix, sol, base.as_deref(), eps),
        Command::Table { geometry } => Ok(cmd_table(geometry)),
        Command::VerifyAppendix { samples, seed } => cmd_verify_appendix(samples, seed),
        Command::Oracle { matrix, modulus, automorphism, eps } => cmd_oracle(&matrix, modulus, automorphism.as_deref(), eps),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.json;
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(cli, stdin)));
    match result {
        Ok(Ok(r)) => {
            let stdout = if json {
                serde_json::to_string_pretty(&r.json).expect("serializable") + "\n"
            } else {
                r.text
            };
            let (code, stderr) =
                if r.ok { (0, String::new()) } else { (2, "error: verification failed\n".to_string()) };
            CliOutput { code, stdout, stderr }
        }
        Ok(Err(e)) => CliOutput {
            code: if e.is_internal() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown".into());
            CliOutput { code: 2, stdout: String::new(), stderr: format!("error: internal assertion failed: {msg}\n") }
        }
    }
}

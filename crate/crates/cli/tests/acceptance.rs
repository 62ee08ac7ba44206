//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use mrfw_core::chartab::{fusion_from_table, tables, theorem57_check, CharacterTable};
use mrfw_core::corpus;
use mrfw_core::doc::{Document, RingRef};
use mrfw_core::matrix::IntMatrix;
use mrfw_core::mr::{mr_extend, mr_fpdim, spherical_witness};
use mrfw_core::obstruction::{
    codegrees, gram_brute_force, gram_search, obstruct, ConstraintPart, GramProblem, GramStatus, ObstructOptions,
    ObstructionCertificate, Verdict,
};
use mrfw_core::premodular::{degeneracy_class, tannakian_row_obstruction, DegeneracyClass, PremodularData};
use mrfw_core::ring::{detect_mr, fpdims, global_fpdim, subrings, subrings_brute_force, FusionRing};
use mrfw_core::scalar::{ratio, CycNumber, QuadExt};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

const KAPPA_MAX: u64 = 60;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if cond {
            self.notes.push(what);
        } else {
            self.ok = false;
            self.notes.push(format!("MISMATCH {what}"));
        }
    }
}

fn mrfw(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_mrfw")).args(args).output().expect("mrfw runs");
    assert_eq!(out.status.code(), Some(0), "mrfw {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    match Document::parse(&String::from_utf8_lossy(&out.stdout)).expect("report document") {
        Document::Report(v) => v,
        other => panic!("expected report, got {}", other.kind_name()),
    }
}

fn survivors(column: &Value) -> Vec<u64> {
    column["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["verdict"] != "infeasible")
        .map(|e| e["kappa"].as_u64().unwrap())
        .collect()
}

fn corpus_doc(name: &str) -> Document {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.json"));
    Document::parse(&fs::read_to_string(path).unwrap()).unwrap()
}

fn tuple(v: &[u64]) -> String {
    format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

fn criterion_1(sweep_secs: f64, s3_column: &Value) -> Outcome {
    let mut o = Outcome::new();
    let alive = survivors(s3_column);
    o.check(alive.is_empty(), format!("S3-base survivors over κ ∈ [0,{KAPPA_MAX}]: {alive:?}"));
    o.check(sweep_secs < 60.0, format!("sweep runtime {sweep_secs:.2} s"));

    let cert: ObstructionCertificate = serde_json::from_value(mrfw(&["obstruct", "s3-base-k5"])).unwrap();
    let ring = cert.ring.clone().into_ring().unwrap();
    let fi = cert.induction_matrix().unwrap().to_rows();
    for (label, want) in [("X", [3, 9, 3, 10]), ("Y", [2, 3, 4, 5]), ("Z", [5, 10, 5, 37])] {
        let row = &fi[ring.index_of(label).unwrap()];
        o.check(row[..] == want[..], format!("FI[{label}] = {row:?}"));
    }
    let printed: [&[u64]; 3] = [&[2, 1, 0], &[0, 1, 0], &[1, 0, 3]];
    let system = cert.i1_system().unwrap();
    let found: Vec<Vec<String>> =
        system.solutions.iter().map(|s| s.iter().map(|row| tuple(&row[1..])).collect()).collect();
    let hit = system.solutions.iter().any(|s| s.iter().zip(printed).all(|(row, p)| &row[1..] == p));
    o.check(hit, format!("κ=5 I(1) solution a,b,c: printed (2,1,0),(0,1,0),(1,0,3); found {found:?}"));
    o.check(cert.verdict == Verdict::Infeasible, format!("κ=5 verdict {:?}", cert.verdict));
    o
}

fn criterion_2(z3_column: &Value) -> Outcome {
    let mut o = Outcome::new();
    let alive = survivors(z3_column);
    o.check(alive.iter().all(|&k| k == 2 || k % 3 == 0), format!("Z3-base survivors {alive:?}"));
    let mut relations = 0;
    for kappa in (0..=KAPPA_MAX).filter(|k| !alive.contains(k)) {
        let ring = corpus::z3_base(kappa);
        let cert = obstruct(&ring, &ObstructOptions::default());
        let x = ring.index_of("Z").unwrap();
        let forced = cert.i1_system().is_some_and(|s| {
            s.rows.iter().any(|r| {
                r.constraints.iter().any(|c| {
                    c.part == ConstraintPart::Irrational
                        && c.rhs.0 == kappa.into()
                        && c.coeffs.iter().enumerate().all(|(j, v)| v.0 == i64::from(if j == x { 3 } else { 0 }).into())
                })
            })
        });
        o.check(cert.verdict == Verdict::Infeasible && forced, format!("κ={kappa}: irrational part 3·v_Z = {kappa}"));
        relations += usize::from(forced);
    }
    o.notes.retain(|n| n.starts_with("MISMATCH") || !n.starts_with("κ="));
    o.notes.push(format!("{relations} eliminated κ carry the relation κ − 3a₃ = 0"));
    if alive.contains(&2) {
        let cert = obstruct(&corpus::z3_base(2), &ObstructOptions::default());
        let rational = cert.i1_system().is_some_and(|s| s.rows.iter().all(|r| r.codegree.is_rational()));
        o.check(rational, "κ=2: codegrees rational (κ²+12 = 16)");
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let mut bad = Vec::new();
    for a in 1..=50 {
        for kappa in 0..=20 {
            if spherical_witness(a, kappa).conclusion != (kappa, 0) {
                bad.push((a, kappa));
            }
        }
    }
    o.check(bad.is_empty(), format!("(s,t) = (κ,0) on [1,50]×[0,20]; exceptions {bad:?}"));
    o
}

fn criterion_4(table: &Value) -> Outcome {
    let mut o = Outcome::new();
    let names: Vec<&str> = table["columns"].as_array().unwrap().iter().map(|c| c["base"].as_str().unwrap()).collect();
    o.check(names == ["Z3", "Rep(S3)"], format!("columns {names:?}"));
    for (col, builder) in table["columns"].as_array().unwrap().iter().zip([corpus::z3_base as fn(u64) -> FusionRing, corpus::s3_base]) {
        let entries = col["entries"].as_array().unwrap();
        o.check(entries.len() as u64 == KAPPA_MAX + 1, format!("{}: {} entries", col["base"], entries.len()));
        let agree = entries.iter().all(|e| {
            let k = e["kappa"].as_u64().unwrap();
            let v = obstruct(&builder(k), &ObstructOptions::default()).verdict;
            serde_json::to_value(v).unwrap() == e["verdict"]
        });
        o.check(agree, format!("{}: verdicts match per-κ runs", col["base"]));
    }
    let z3 = survivors(&table["columns"][0]);
    let s3 = survivors(&table["columns"][1]);
    o.check(z3.iter().all(|&k| k == 2 || k % 3 == 0), format!("Z3 column as in criterion 2: {z3:?}"));
    o.check(s3.is_empty(), format!("Rep(S3) column as in criterion 1: survivors {s3:?}"));
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let cases: [(CharacterTable, bool); 7] = [
        (tables::s3(), true),
        (tables::cyclic(4), false),
        (tables::d8(), true),
        (tables::q8(), true),
        (tables::a4(), true),
        (tables::s4(), false),
        (tables::z2xz2(), false),
    ];
    for (t, positive) in cases {
        let name = t.name.clone().unwrap_or_default();
        match theorem57_check(&t) {
            Ok(r) => o.check(
                r.equivalent && r.gagola_side == positive && r.mr_side == positive,
                format!("{name}: Gagola {} / MR {}", r.gagola_side, r.mr_side),
            ),
            Err(e) => o.check(false, format!("{name}: {e}")),
        }
    }
    o
}

fn small_rings() -> Vec<(String, FusionRing)> {
    let mut v = vec![
        ("fibonacci".to_string(), corpus::fibonacci()),
        ("ising".into(), corpus::ising()),
        ("rep-s3".into(), corpus::rep_s3()),
    ];
    for m in 2..=4 {
        v.push((format!("z{m}"), corpus::group_ring(m)));
    }
    for k in [0, 1, 2, 3] {
        v.push((format!("z3-base-k{k}"), corpus::z3_base(k)));
    }
    for k in [0, 1, 5, 6] {
        v.push((format!("s3-base-k{k}"), corpus::s3_base(k)));
    }
    for t in tables::all() {
        v.push((format!("rep-{}", t.name.clone().unwrap_or_default()), fusion_from_table(&t).unwrap()));
    }
    v.retain(|(_, r)| r.rank() <= 5);
    v
}

fn seeded(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let rings = small_rings();
    let bad: Vec<&str> = rings
        .iter()
        .filter(|(_, r)| subrings(r, 12).unwrap() != subrings_brute_force(r))
        .map(|(n, _)| n.as_str())
        .collect();
    o.check(bad.is_empty(), format!("subrings vs 2ⁿ enumeration on {} rings; mismatches {bad:?}", rings.len()));

    let targets = (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0i64..4, n), 1..6), -1i64..2, 0usize..16))
        .prop_map(|(n, rows, bump, at)| {
            let mut h = vec![vec![0i64; n]; n];
            for r in &rows {
                for i in 0..n {
                    for j in 0..n {
                        h[i][j] += r[i] * r[j];
                    }
                }
            }
            let (i, j) = (at % n, (at / 4) % n);
            h[i][j] = (h[i][j] + bump).max(0);
            h[j][i] = h[i][j];
            h
        })
        .prop_filter("entries ≤ 40", |h| h.iter().flatten().all(|&x| x <= 40));
    let mut runner = seeded(500);
    let gram = runner.run(&targets, |h| {
        let m = IntMatrix::from_rows(&h);
        let out = gram_search(&GramProblem::new(m.clone()));
        prop_assert_ne!(out.status, GramStatus::CapExceeded);
        prop_assert_eq!(out.status == GramStatus::Feasible, gram_brute_force(&m), "H = {:?}", h);
        Ok(())
    });
    o.check(gram.is_ok(), format!("gram_search vs brute force, 500 targets of rank ≤ 4: {gram:?}"));

    for t in tables::all() {
        let ring = fusion_from_table(&t).unwrap();
        let mut got = codegrees(&ring).unwrap().values;
        got.sort();
        let mut want: Vec<QuadExt> = t.centralizer_orders().iter().map(|&c| QuadExt::from_int(c as i64)).collect();
        want.sort();
        o.check(got == want, format!("codegrees of Rep({}) = centralizer orders", t.name.clone().unwrap_or_default()));
    }

    let mut bases: Vec<FusionRing> = vec![corpus::trivial(), corpus::rep_s3()];
    for m in [vec![2], vec![3], vec![4], vec![5], vec![2, 2], vec![2, 3], vec![3, 3]] {
        bases.push(corpus::abelian_group_ring(&m));
    }
    bases.extend(tables::all().iter().map(|t| fusion_from_table(t).unwrap()));
    let picks = (0..bases.len(), 0u64..40);
    let mut runner = seeded(100);
    let ext = runner.run(&picks, |(i, kappa)| {
        let ring = mr_extend(&bases[i], kappa).unwrap();
        prop_assert!(ring.to_raw().validate().is_valid(), "base {} κ={}", i, kappa);
        Ok(())
    });
    o.check(ext.is_ok(), format!("100 random mr_extend outputs validate (associativity included): {ext:?}"));
    o
}

fn premodular(name: &str) -> PremodularData {
    let Document::Premodular(p) = corpus_doc(name) else { panic!("{name}") };
    let ring = match &p.ring {
        RingRef::Name(r) => corpus_doc(r).into_ring().unwrap(),
        RingRef::Inline(r) => r.clone(),
    };
    let dims: Vec<QuadExt> = p.dims.iter().map(|d| d.value().unwrap()).collect();
    PremodularData::new(ring.raw().into_ring().unwrap(), &dims, p.twists).unwrap()
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let fib = premodular("premodular-fibonacci");
    let phi = CycNumber::from_quad(&QuadExt::new(ratio(1, 2), ratio(1, 2), 5.into()));
    let want = vec![vec![CycNumber::one(), phi.clone()], vec![phi, CycNumber::from_int(-1)]];
    o.check(fib.s == want, "Fibonacci S = [[1,φ],[φ,−1]]");
    o.check(fib.s.iter().flatten().all(|x| 5 % x.order() == 0), "Fibonacci S entries in ℚ(ζ₅)");
    for name in ["premodular-fibonacci", "premodular-z2-i", "premodular-z2-minus-i"] {
        let class = degeneracy_class(&premodular(name)).unwrap().class;
        o.check(class == DegeneracyClass::NonDegenerate, format!("{name}: {class}"));
    }
    let sym = premodular("premodular-rep-s3-trivial");
    let class = degeneracy_class(&sym).unwrap().class;
    o.check(class == DegeneracyClass::Symmetric, format!("premodular-rep-s3-trivial: {class}"));
    let mr = detect_mr(&sym.ring).unwrap().unwrap();
    let g = sym.ring.index_of("Y").unwrap();
    let row = tannakian_row_obstruction(&sym, &mr, g).unwrap();
    o.check(row.theta_g_trivial && row.rows_equal, format!("θ_Y = 1 ⇒ row(Y) = row(1): {}", row.rows_equal));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let mut bad = Vec::new();
    for a in 1..=20u64 {
        let base = corpus::group_ring(a as usize);
        for kappa in 0..=10u64 {
            let ext = mr_extend(&base, kappa).unwrap();
            let (dn, total) = mr_fpdim(a, kappa);
            let ok = fpdims(&ext).exact().is_some_and(|d| {
                d[base.rank()] == dn && d.iter().fold(QuadExt::zero(), |acc, x| &acc + &(x * x)) == total
            });
            if !ok {
                bad.push((a, kappa));
            }
        }
    }
    o.check(bad.is_empty(), format!("mr_fpdim = fpdims∘mr_extend on [1,20]×[0,10]; exceptions {bad:?}"));
    let fib = global_fpdim(&corpus::fibonacci());
    let want = QuadExt::new(ratio(5, 2), ratio(1, 2), 5.into());
    o.check(fib.exact() == Some(&want), format!("Fibonacci total = {want}"));
    o
}

fn main() -> ExitCode {
    let start = Instant::now();
    let s3_sweep = mrfw(&["obstruct", "s3-base-k0", "--sweep", "--kappa-max", "60"]);
    let sweep_secs = start.elapsed().as_secs_f64();
    let table = mrfw(&["obstruct", "--sweep", "--kappa-max", "60"]);

    let results = [
        ("S3-base sweep and κ=5 certificate", criterion_1(sweep_secs, &s3_sweep["columns"][0])),
        ("Z3-base sweep", criterion_2(&table["columns"][0])),
        ("spherical grid", criterion_3()),
        ("rank-4 classifier", criterion_4(&table)),
        ("Gagola corpus", criterion_5()),
        ("oracle equivalence", criterion_6()),
        ("premodular corpus", criterion_7()),
        ("FP dimension identities", criterion_8()),
    ];
    let mut failed = 0;
    for (i, (title, o)) in results.iter().enumerate() {
        println!("{} criterion {}: {title}", if o.ok { "PASS" } else { "FAIL" }, i + 1);
        for n in &o.notes {
            println!("    {n}");
        }
        failed += usize::from(!o.ok);
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

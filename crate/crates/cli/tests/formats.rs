//! Round trips of problem files and branch records.

use eigdeg::{BranchRecord, ClassRecord, Format, NSpec, ProblemFile, TermSpec};
use eigdeg::record::{Metadata, OptionsRecord};
use eigdeg_core::perturbed::trace_branch;
use eigdeg_core::{examples, SolutionTriple, TraceOptions, Vector};
use proptest::prelude::*;

fn bits(rows: &[Vec<f64>]) -> Vec<Vec<u64>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_bits()).collect()).collect()
}

fn roundtrip(rec: &BranchRecord, format: Format) -> BranchRecord {
    let mut buf = Vec::new();
    rec.write(format, &mut buf).unwrap();
    BranchRecord::read(format, &mut buf.as_slice()).unwrap()
}

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

fn record(points: Vec<Vec<f64>>, k: usize) -> BranchRecord {
    BranchRecord {
        metadata: Metadata {
            problem: Some("p".into()),
            k,
            start: points[0].clone(),
            options: OptionsRecord::from(&TraceOptions::default()),
            classification: ClassRecord::ClosedLoop,
            ends: vec![ClassRecord::ClosedLoop],
            trivial_solutions: vec![points[0].clone()],
            branch_points: vec![],
        },
        points,
    }
}

#[test]
fn traced_branch_roundtrips() {
    let (prob, _) = examples::example(1).unwrap();
    let opts = TraceOptions::default();
    let start = SolutionTriple::new(0.0, 1.0, Vector(vec![1.0, 0.0]));
    let b = trace_branch(&prob, &start, &opts).unwrap();
    let rec = BranchRecord::new(prob.name.clone(), prob.k, &b, &opts);
    for format in [Format::Json, Format::Csv] {
        let back = roundtrip(&rec, format);
        assert_eq!(back.metadata, rec.metadata);
        assert_eq!(bits(&back.points), bits(&rec.points));
        let pts = back.solution_triples().unwrap();
        assert_eq!(pts.len(), b.points.len());
        assert!(pts.iter().all(|p| p.residual(&prob) < 1e-9));
    }
}

#[test]
fn bad_rows_are_rejected() {
    let rec = record(vec![vec![0.0, 1.0, 2.0, 0.0]], 2);
    assert!(rec.solution_triples().is_err());
    let rec = record(vec![vec![0.0, 1.0, 1.0]], 2);
    assert!(rec.solution_triples().is_err());
    let bad = "s,lambda,v1,v2\n0,1,1,0\n";
    assert!(BranchRecord::read(Format::Csv, &mut bad.as_bytes()).is_err());
}

#[test]
fn decimal_literals_parse_exactly() {
    let text = r#"{"k":1,"L":[[0.1]],"N":{"type":"constant","vector":[2.2250738585072014e-308]}}"#;
    let f = ProblemFile::parse(text).unwrap();
    assert_eq!(f.l[0][0].to_bits(), 0.1f64.to_bits());
    match &f.n {
        NSpec::Constant { vector } => assert_eq!(vector[0], f64::MIN_POSITIVE),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn records_roundtrip_bit_exactly(
        rows in prop::collection::vec(prop::collection::vec(finite(), 5), 1..20),
    ) {
        let rec = record(rows, 3);
        for format in [Format::Json, Format::Csv] {
            let back = roundtrip(&rec, format);
            prop_assert_eq!(bits(&back.points), bits(&rec.points));
            prop_assert_eq!(&back.metadata, &rec.metadata);
        }
    }

    #[test]
    fn problem_files_roundtrip_bit_exactly(
        l in prop::collection::vec(finite(), 4),
        coef in finite(),
        e in 0u32..4,
    ) {
        let file = ProblemFile {
            name: Some("random".into()),
            k: 2,
            l: vec![l[..2].to_vec(), l[2..].to_vec()],
            n: NSpec::Polynomial {
                components: vec![vec![TermSpec { coef, exp: vec![e, 1] }], vec![]],
            },
        };
        let back = ProblemFile::parse(&file.to_json()).unwrap();
        prop_assert_eq!(bits(&back.l), bits(&file.l));
        prop_assert_eq!(&back, &file);
        let prob = back.to_problem().unwrap();
        prop_assert_eq!(ProblemFile::from_problem(&prob), file);
    }
}

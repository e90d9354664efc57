use capopt_core::compute_stats;
use capopt_ingest::format::{parse_instance, records_from_lists, to_canonical_string};
use capopt_ingest::normalize::records_to_raws;
use capopt_ingest::{build_from_records, normalize, read_instance, write_instance, PaperRecord};
use proptest::prelude::*;

fn records() -> impl Strategy<Value = Vec<PaperRecord>> {
    let label = "[~a-zA-Z0-9_.@-]{1,12}";
    let id = "[A-Za-z0-9_-]{1,10}";
    prop::collection::vec((id, prop::collection::vec(label, 1..6)), 1..30)
        .prop_map(|v| v.into_iter().map(|(id, authors)| PaperRecord::new(id, authors)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn file_format_round_trips(recs in records()) {
        let text = to_canonical_string(&recs).unwrap();
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed, &recs);
        prop_assert_eq!(to_canonical_string(&parsed).unwrap(), text);
    }

    #[test]
    fn normalization_is_idempotent(recs in records()) {
        let (once, _) = normalize(&records_to_raws(&recs, 2024));
        let (twice, report) = normalize(&records_to_raws(&once, 2024));
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(report.duplicate_labels + report.rewritten_labels + report.dropped_no_authors, 0);
    }
}

#[test]
fn files_round_trip_plain_and_gzip() {
    let dir = tempfile::tempdir().unwrap();
    let recs = records_from_lists(&capopt_core::fixtures::two_authors_overlap_lists());
    for name in ["t1.txt", "t1.txt.gz"] {
        let path = dir.path().join(name);
        write_instance(&path, &recs).unwrap();
        let back = read_instance(&path).unwrap();
        assert_eq!(back, recs);
        let inst = build_from_records(&back).unwrap();
        let stats = compute_stats(&inst);
        assert_eq!((stats.n, stats.m, stats.nnz), (2, 5, 6));
    }
    let plain = std::fs::read_to_string(dir.path().join("t1.txt")).unwrap();
    assert_eq!(plain.lines().nth(3), Some("p3\tA B"));
    let gz = std::fs::read(dir.path().join("t1.txt.gz")).unwrap();
    assert_eq!(&gz[..2], &[0x1f, 0x8b]);
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "").unwrap();
    assert!(matches!(
        read_instance(&path),
        Err(capopt_ingest::IngestError::Parse { .. })
    ));
}

//! Replays the checked-in fuzz corpus through the same checks as the fuzz
//! targets, so the seeds are exercised without libFuzzer.

use std::path::PathBuf;

use tricover::coverfile::parse_cover_file;
use tricover::poly::MultiPoly;
use tricover_cli::report::Report;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {}", dir.display(), e))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {}", target);
    out
}

#[test]
fn parse_poly_seeds() {
    let mut parsed = 0;
    for (name, bytes) in seeds("parse_poly") {
        let text = String::from_utf8(bytes).unwrap();
        if let Ok(p) = MultiPoly::parse(&text, &["t", "u", "z"]) {
            let printed = p.to_string();
            let back = MultiPoly::parse(&printed, &["t", "u", "z"]).unwrap_or_else(|e| panic!("{}: {}", name, e));
            assert_eq!(back, p, "{}", name);
            parsed += 1;
        }
    }
    assert!(parsed >= 10);
}

#[test]
fn cover_file_seeds() {
    let mut specs = 0;
    for (name, bytes) in seeds("cover_file") {
        let text = String::from_utf8(bytes).unwrap();
        if let Ok(file) = parse_cover_file(&text) {
            let rendered = file.render();
            assert_eq!(parse_cover_file(&rendered).unwrap().render(), rendered, "{}", name);
            if file.to_spec().is_ok() {
                specs += 1;
            }
        }
    }
    assert_eq!(specs, 9);
}

#[test]
fn report_json_seeds() {
    let mut decoded = 0;
    for (name, bytes) in seeds("report_json") {
        let text = String::from_utf8(bytes).unwrap();
        if let Ok(r) = Report::from_json(&text) {
            assert_eq!(r.to_json(), text, "{}", name);
            decoded += 1;
        }
    }
    assert_eq!(decoded, 5);
}

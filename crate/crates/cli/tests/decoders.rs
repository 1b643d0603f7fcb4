use proptest::prelude::*;

use tricover::coverfile::parse_cover_file;
use tricover::poly::MultiPoly;
use tricover_cli::datasets::BUILTINS;
use tricover_cli::report::Report;

fn poly_text() -> impl Strategy<Value = String> {
    "[-+*/^() 0-9tuzx]{0,40}"
}

proptest! {
    #[test]
    fn polynomial_parser_never_panics(text in poly_text()) {
        if let Ok(p) = MultiPoly::parse(&text, &["t", "u", "z"]) {
            prop_assert_eq!(MultiPoly::parse(&p.to_string(), &["t", "u", "z"]).unwrap(), p);
        }
    }

    #[test]
    fn cover_parser_survives_line_edits(which in 0..BUILTINS.len(), line in 0usize..12, junk in "[ -~]{0,20}") {
        let text = BUILTINS[which].text;
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let i = line % lines.len();
        lines[i] = junk;
        let edited = lines.join("\n");
        match parse_cover_file(&edited) {
            Ok(f) => {
                let _ = f.to_spec();
                prop_assert_eq!(parse_cover_file(&f.render()).unwrap(), parse_cover_file(&f.render()).unwrap());
            }
            Err(e) => prop_assert!(e.line >= 1 && e.line <= lines.len().max(1)),
        }
    }

    #[test]
    fn report_decoder_never_panics(cut in 0usize..2000, junk in "[ -~]{0,8}") {
        let text = include_str!("../../../fuzz/corpus/report_json/N.json");
        let mut cut = cut.min(text.len());
        while !text.is_char_boundary(cut) {
            cut -= 1;
        }
        let mutated = format!("{}{}{}", &text[..cut], junk, &text[cut..]);
        if let Ok(r) = Report::from_json(&mutated) {
            prop_assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        }
    }
}

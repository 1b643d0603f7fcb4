#![no_main]

use libfuzzer_sys::fuzz_target;
use tricover::poly::MultiPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = MultiPoly::parse(text, &["t", "u", "z"]) {
        let printed = p.to_string();
        let back = MultiPoly::parse(&printed, &["t", "u", "z"]).expect("printed polynomials parse");
        assert_eq!(back, p);
        assert_eq!(back.to_string(), printed);
    }
});

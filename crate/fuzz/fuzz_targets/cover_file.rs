#![no_main]

use libfuzzer_sys::fuzz_target;
use tricover::coverfile::parse_cover_file;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_cover_file(text) {
        let rendered = file.render();
        let again = parse_cover_file(&rendered).expect("rendered files parse");
        assert_eq!(again.render(), rendered);
        let _ = file.to_spec();
    }
});

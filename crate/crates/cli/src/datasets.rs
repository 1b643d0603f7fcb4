//! Built-in cover files, compiled into the binary.

use sha2::{Digest, Sha256};

use tricover::coverfile::{parse_cover_file, CoverFile};

#[derive(Debug, Clone, Copy)]
pub struct Dataset {
    pub name: &'static str,
    pub file_name: &'static str,
    pub text: &'static str,
}

macro_rules! dataset {
    ($name:literal) => {
        Dataset {
            name: $name,
            file_name: concat!("case_", $name, ".cover"),
            text: include_str!(concat!("../data/case_", $name, ".cover")),
        }
    };
}

/// The six cases, plus the M3 variant typed in the machine session.
pub const BUILTINS: [Dataset; 7] = [
    dataset!("M1"),
    dataset!("M2"),
    dataset!("M3"),
    dataset!("M4_PinZ"),
    dataset!("M4_PnotinZ"),
    dataset!("N"),
    dataset!("M3_session"),
];

pub fn get(name: &str) -> Option<&'static Dataset> {
    BUILTINS.iter().find(|d| d.name == name)
}

impl Dataset {
    pub fn cover_file(&self) -> CoverFile {
        parse_cover_file(self.text).expect("built-in datasets parse")
    }

    pub fn sha256(&self) -> String {
        sha256_hex(self.text.as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

//! Rendered SVG and DOT for the inputs in `tests/data` must match the
//! checked-in outputs byte for byte. Set `UPDATE_GOLDEN=1` to rewrite them.

mod common;

use std::fs;
use std::path::PathBuf;

fn corpus() -> Vec<PathBuf> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let mut inputs: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("txt" | "json")))
        .collect();
    inputs.sort();
    inputs
}

#[test]
fn golden_outputs_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let inputs = corpus();
    assert!(!inputs.is_empty());
    for input in inputs {
        let text = fs::read_to_string(&input).unwrap();
        for (ext, render) in common::GOLDEN_FORMATS {
            let out = render(&text);
            let golden = input.with_extension(ext);
            if update {
                fs::write(&golden, &out).unwrap();
            } else {
                let expected = fs::read_to_string(&golden)
                    .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", golden.display()));
                assert_eq!(out, expected, "{} changed", golden.display());
            }
        }
    }
}

#[test]
fn rendering_is_deterministic() {
    for input in corpus() {
        let text = fs::read_to_string(&input).unwrap();
        for (_, render) in common::GOLDEN_FORMATS {
            assert_eq!(render(&text), render(&text));
        }
    }
}

//! The JSON fixtures under `fixtures/` must match the generators byte for
//! byte. Run with `UPDATE_FIXTURES=1` to rewrite them.

use std::path::PathBuf;

use media_core::fixtures::{self, Fixture, DEFAULT_SEED, GRAPH_NAMES, MEDIUM_NAMES};
use media_core::io;

fn render(f: &Fixture) -> String {
    match f {
        Fixture::Graph(g) => io::graph_to_json(g).unwrap(),
        Fixture::Medium(m) => io::system_to_json(m).unwrap(),
    }
}

#[test]
fn shipped_fixtures_match_generators() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for name in GRAPH_NAMES.iter().chain(MEDIUM_NAMES) {
        let expected = render(&fixtures::by_name(name, DEFAULT_SEED).unwrap());
        let path = dir.join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &expected).unwrap();
        }
        let shipped = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(shipped, expected, "{name}");
    }
}

#[test]
fn shipped_fixtures_load() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in GRAPH_NAMES {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(io::document_kind(&text).unwrap(), io::DocumentKind::Graph);
        assert_eq!(
            io::graph_from_json(&text).unwrap(),
            fixtures::graph(name, DEFAULT_SEED).unwrap()
        );
    }
    for name in MEDIUM_NAMES {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(io::document_kind(&text).unwrap(), io::DocumentKind::TokenSystem);
        io::system_from_json(&text).unwrap();
    }
}

//! The JSON files under `fixtures/` agree with the in-code builders. Set
//! `FTINV_WRITE_FIXTURES=1` to rewrite them.

use ftinv::fixtures::{all_fixture_json, fixture_root, load_link, load_seifert, load_spin, named_links, named_seifert, named_spin};

#[test]
fn files_match_builders() {
    let root = fixture_root();
    if std::env::var_os("FTINV_WRITE_FIXTURES").is_some() {
        std::fs::create_dir_all(&root).unwrap();
        for (name, v) in all_fixture_json() {
            let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
            std::fs::write(root.join(name), text).unwrap();
        }
    }
    for (name, v) in all_fixture_json() {
        let text = std::fs::read_to_string(root.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let on_disk: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(on_disk, v, "{name} is stale");
    }
}

#[test]
fn files_load() {
    for (name, l) in named_links() {
        assert_eq!(load_link(name).unwrap().canonical_encoding(), l.canonical_encoding(), "{name}");
    }
    for (name, s) in named_seifert() {
        assert_eq!(load_seifert(&format!("fixtures/{name}.json")).unwrap(), s, "{name}");
    }
    for (name, s) in named_spin() {
        assert_eq!(load_spin(name).unwrap(), s, "{name}");
    }
}

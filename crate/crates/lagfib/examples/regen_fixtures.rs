//! Regenerates the serialized fixture corpus in `data/` from the in-code
//! catalog. Run after changing the catalog: `cargo run --example regen_fixtures`.

use std::fs;
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    fs::create_dir_all(&dir).expect("create data dir");
    for stale in fs::read_dir(&dir).expect("list data dir") {
        let path = stale.expect("dir entry").path();
        if path.extension().is_some_and(|e| e == "toml") {
            fs::remove_file(path).expect("remove stale fixture");
        }
    }
    for fixture in lagfib::examples::catalog_all() {
        let path = dir.join(lagfib::examples::fixture_file_name(&fixture));
        fs::write(&path, lagfib::examples::fixture_toml(&fixture)).expect("write fixture");
        println!("wrote {}", path.display());
    }
}

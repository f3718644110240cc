use std::fs;
use std::path::{Path, PathBuf};

fn files(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.push(path.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

#[test]
fn regenerated_examples_match_golden() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    let tmp = tempfile::tempdir().unwrap();
    hfsurg::cli::write_examples(tmp.path()).unwrap();
    let expected = files(&golden);
    assert_eq!(files(tmp.path()), expected);
    for rel in expected {
        let a = fs::read(golden.join(&rel)).unwrap();
        let b = fs::read(tmp.path().join(&rel)).unwrap();
        assert!(a == b, "{} differs from golden", rel.display());
    }
}

#[test]
fn golden_models_load_and_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/models");
    for rel in files(&dir) {
        let m = hfsurg::io::load_model(&dir.join(&rel)).unwrap();
        assert!(m.validate().is_empty(), "{}", rel.display());
    }
}

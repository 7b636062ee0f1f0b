use std::path::PathBuf;

use dgla::io::{Instance, InstanceFile};

#[test]
fn shipped_files_match_the_generators() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut on_disk: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    on_disk.sort();
    let shipped = dgla::corpus::shipped();
    let names: Vec<String> = shipped.iter().map(|(n, _)| n.to_string()).collect();
    assert_eq!(on_disk, names, "run `cargo run --example regenerate_corpus`");
    for (name, f) in shipped {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        assert_eq!(text, f.to_json(), "{name} is stale; run `cargo run --example regenerate_corpus`");
    }
}

#[test]
fn reload_preserves_every_object() {
    for (name, f) in dgla::corpus::shipped() {
        let a = Instance::load(&f).unwrap();
        let b = Instance::load(&InstanceFile::parse(&f.to_json()).unwrap()).unwrap();
        assert_eq!(a.dglas, b.dglas, "{name}");
        assert_eq!(a.complexes, b.complexes, "{name}");
        assert_eq!(a.dbv, b.dbv, "{name}");
        assert_eq!(a.artinian, b.artinian, "{name}");
        assert_eq!(a.semicosimplicial, b.semicosimplicial, "{name}");
        assert_eq!(a.cech, b.cech, "{name}");
        for (k, (c, filt)) in &a.calculi {
            let (d, g) = &b.calculi[k];
            assert_eq!(c.ops, d.ops, "{name} {k}");
            assert_eq!(filt, g, "{name} {k}");
        }
    }
}

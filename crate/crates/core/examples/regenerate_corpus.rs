//! Writes the shipped instance files to `corpus/`.

use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    std::fs::create_dir_all(&dir)?;
    for (name, file) in dgla::corpus::shipped() {
        std::fs::write(dir.join(name), file.to_json())?;
        println!("wrote corpus/{name}");
    }
    Ok(())
}

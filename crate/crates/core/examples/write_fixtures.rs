//! Regenerates the shipped figure fixtures in canonical form.
use limitgame::io::write_instance;
use limitgame::samples::{figure2_instance, figure3_instance};

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    for (name, (arena, dfa)) in [("figure2", figure2_instance()), ("figure3", figure3_instance())] {
        let path = format!("{dir}/{name}.toml");
        std::fs::write(&path, write_instance(&arena, &dfa)).expect("fixture is writable");
        println!("wrote {path}");
    }
}

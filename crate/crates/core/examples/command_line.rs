// Drive the command-line interface in-process.
//
// ```text
// cargo run --example command_line
// ```

use shortcycles::cli::run as cli;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("shortcycles-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("square.txt");
    std::fs::write(&file, "digraph 4 5\n0 1\n1 2\n2 3\n3 0\n1 3\n")?;
    let path = file.to_string_lossy().to_string();

    for cmd in ["girth", "peel", "two-cycles"] {
        let out = cli(["shortcycles", cmd, path.as_str()]);
        println!("$ shortcycles {cmd} square.txt  (exit {})\n{}", out.code, out.stdout);
        assert_eq!(out.code, 0);
    }
    let out = cli(["shortcycles", "verify", "--n", "9", "--generator", "labeled"]);
    println!("$ shortcycles verify --n 9 --generator labeled  (exit {})\n{}", out.code, out.stderr);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

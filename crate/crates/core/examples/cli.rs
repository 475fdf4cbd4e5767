//! Drive the `wla` front end in-process, as the binary does.

use weighted_algebroids::cli;

fn main() {
    let dir = std::env::temp_dir().join("wla-example");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("e7.spec");
    let file = file.to_str().unwrap();

    let runs: [&[&str]; 5] = [
        &["example", "e7", "-o", file],
        &["check", file],
        &["decompose", file, "--weight", "2"],
        &["--format", "json", "rep", file, "--weight", "1"],
        &["cohomology", file, "--weight", "1", "--cap", "2"],
    ];
    for args in runs {
        println!("$ wla {}", args.join(" "));
        let mut out = std::io::stdout();
        let code = cli::run(std::iter::once("wla").chain(args.iter().copied()), &mut out);
        println!("(exit {code})\n");
    }
}

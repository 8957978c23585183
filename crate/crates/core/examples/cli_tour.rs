//! Drives the command-line front end in-process.

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/asw_p3_m1.json");
    let runs: [&[&str]; 4] = [
        &["asw", "jumps", "--p", "3", "--n", "2", "--components", "t^-2,0"],
        &["stacky", "genus", data],
        &["garuti", "boundary", "--n", "2", "--p", "2"],
        &["--format", "json", "ram", "convert", "--direction", "down", "--jumps", "1/2", "--r", "2", "--p", "3"],
    ];
    for args in runs {
        println!("$ wittstack {}", args.join(" "));
        let code = wittstack::cli::run(
            std::iter::once("wittstack").chain(args.iter().copied()),
            &mut std::io::stdout(),
            &mut std::io::stderr(),
        );
        println!("[exit {code}]");
    }
}

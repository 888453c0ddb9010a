use std::io::Write;

use clap::Parser;

use realfib_cli::{run, Cli, Format};

fn main() {
    let cli = Cli::parse();
    let result = run(&cli);
    let out = result.render(cli.format);
    // a closed pipe is not an error worth reporting
    let _ = if result.exit_code() == 2 && cli.format == Format::Text {
        writeln!(std::io::stderr().lock(), "{out}")
    } else {
        writeln!(std::io::stdout().lock(), "{out}")
    };
    std::process::exit(result.exit_code());
}

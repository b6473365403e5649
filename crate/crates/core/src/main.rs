use clap::Parser;
use rsdyn::cli::{run, Cli};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // unknown subcommand / bad flags: usage text, exit 1
            let _ = e.print();
            std::process::exit(1);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            std::process::exit(0);
        }
    };

    if let Err(err) = run(cli.command) {
        let kind = if err.is_numerical() { "numerical" } else { "input" };
        eprintln!(
            "{}",
            serde_json::json!({ "error": err.to_string(), "kind": kind })
        );
        std::process::exit(if err.is_numerical() { 2 } else { 1 });
    }
}

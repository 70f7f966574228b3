use clap::error::ErrorKind;
use clap::Parser;
use subvortex_cli::config::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            eprintln!(
                "subvortex: {}",
                msg.lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ")
            );
            std::process::exit(2);
        }
    };
    if let Err(e) = subvortex_cli::run(cli) {
        eprintln!("subvortex: {e}");
        std::process::exit(e.exit_code());
    }
}

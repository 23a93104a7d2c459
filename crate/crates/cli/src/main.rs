use clap::Parser;

use picmon_cli::{emit, run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = cli.command.out().map(|p| p.to_path_buf());
    let code = match run(cli).and_then(|o| emit(out.as_deref(), &o).map(|_| o.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("picmon: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

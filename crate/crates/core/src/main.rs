use clap::Parser;

#[derive(Parser)]
#[command(name = "dgla", version, about = "Exact checks for DGLAs, deformations, Thom-Whitney models and dBV algebras")]
struct Cli {
    #[command(subcommand)]
    command: dgla::cli::Command,
}

fn main() {
    let cli = Cli::parse();
    let (text, code) = dgla::cli::execute(&cli.command);
    print!("{text}");
    std::process::exit(code);
}

use std::process::ExitCode;

fn main() -> ExitCode {
    let spec = match deltashell_cli::args::parse_args(std::env::args_os()) {
        Ok(spec) => spec,
        Err(e) => e.exit(),
    };
    match deltashell_cli::run(&spec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io;

fn main() {
    let env = std::env::var(admissible_cli::app::BACKEND_ENV).ok();
    let code = admissible_cli::run(std::env::args_os(), env.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}

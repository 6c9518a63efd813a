use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let max_order = std::env::var("DOMLAB_MAX_ORDER").ok();
    let code = domlab_cli::run(
        std::env::args_os(),
        max_order.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}

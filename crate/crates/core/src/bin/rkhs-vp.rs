use std::process::ExitCode;

fn main() -> ExitCode {
    rkhs_vp::cli::configure_threads();
    let code = rkhs_vp::cli::run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code as u8)
}

mod app;
mod dot;

fn main() -> std::process::ExitCode {
    app::entry(std::env::args_os())
}

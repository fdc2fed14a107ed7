//! `ztile analyze <set>`: shorthand for `tile ztile analyze <set>`.

#[path = "../app.rs"]
mod app;
#[path = "../dot.rs"]
mod dot;

fn main() -> std::process::ExitCode {
    let mut args = std::env::args_os();
    let argv0 = args.next().unwrap_or_else(|| "ztile".into());
    app::entry([argv0, "ztile".into()].into_iter().chain(args))
}

use std::io::IsTerminal;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let tty = std::io::stdout().is_terminal();
    let code = sidonlab::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr(), tty);
    std::process::exit(code);
}

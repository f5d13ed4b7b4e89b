use std::io;

use starconv_cli::Engine;

fn main() {
    let code = Engine::default().run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}

fn main() {
    let code = ghz_erasure_harness::main_with_args(std::env::args_os(), &mut std::io::stderr());
    std::process::exit(code);
}

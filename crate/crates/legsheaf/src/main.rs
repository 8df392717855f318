fn main() {
    let out = &mut std::io::stdout().lock();
    let err = &mut std::io::stderr().lock();
    std::process::exit(legsheaf::run(std::env::args_os(), out, err));
}

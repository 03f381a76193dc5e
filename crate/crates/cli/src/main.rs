fn main() {
    eprintln!("coxfs: not yet wired up");
    std::process::exit(2);
}

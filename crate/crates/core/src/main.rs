fn main() {
    std::process::exit(groupoid_homology::cli::main());
}

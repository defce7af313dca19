fn main() {
    std::process::exit(snp_core::cli::main_with_args(std::env::args_os()));
}

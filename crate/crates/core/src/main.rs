fn main() {
    std::process::exit(lpacket_core::cli::main_with_args(std::env::args_os()));
}

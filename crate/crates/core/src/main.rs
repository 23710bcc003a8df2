fn main() -> std::process::ExitCode {
    qdinfo::cli::main_entry()
}

fn main() -> std::process::ExitCode {
    rdipe::cli::main()
}

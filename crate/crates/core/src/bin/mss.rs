fn main() -> std::process::ExitCode {
    mss::cli::main()
}

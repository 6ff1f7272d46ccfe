fn main() -> std::process::ExitCode {
    borngap::cli::main()
}

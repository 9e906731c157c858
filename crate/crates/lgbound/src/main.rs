fn main() -> std::process::ExitCode {
    lgbound::main_entry()
}

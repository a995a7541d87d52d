fn main() {
    let out = vgbs::cli::run_command(std::env::args_os());
    println!("{}", out.stdout);
    std::process::exit(out.code);
}

fn main() {
    println!("cli under construction");
}

fn main() {
    println!("charprod");
}

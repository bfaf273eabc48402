//! Walks the benchmark catalog: class, bias, value at the optimum and at a
//! random point.
//!
//!     cargo run --example suite_tour

use hide::benchmarks::{suite, CATALOG};
use hide::RngStream;

fn main() -> hide::Result<()> {
    let mut rng = RngStream::new(1);
    for (f, entry) in suite(10)?.iter().zip(&CATALOG) {
        let at_opt = f.eval(&f.optimum().expect("catalog optimum").position);
        let x = f.space().sample_uniform(&mut rng);
        println!(
            "{:>4} {:<12?} bias {:>6}  f(opt) {:>10.4}  f(random) {:>12.4e}  {}",
            f.id(),
            entry.class,
            f.bias(),
            at_opt,
            f.eval(&x),
            f.description()
        );
        if !entry.notes.is_empty() {
            println!("       note: {}", entry.notes);
        }
    }
    Ok(())
}

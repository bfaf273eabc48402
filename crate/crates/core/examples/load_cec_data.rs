//! Builds a suite function from an external shift/rotation file, the layout
//! the official CEC data uses: `D` shift values, a `D×D` rotation, and for
//! hybrids a one-based permutation.
//!
//!     cargo run --example load_cec_data [path] [function index] [dim]
//!
//! Without a path a file is generated into a temp directory first.

use hide::benchmarks::{load_cec_data, random_orthogonal, suite_function_from_data, write_cec_data, CecData, Transform};
use hide::hide::HideParams;
use hide::{Optimizer, RngStream, Termination};

fn main() -> hide::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let index: usize = args.get(1).map_or(Ok(5), |s| s.parse()).expect("function index");
    let dim: usize = args.get(2).map_or(Ok(10), |s| s.parse()).expect("dimension");

    let _dir;
    let path = match args.first() {
        Some(p) => p.into(),
        None => {
            _dir = std::env::temp_dir().join(format!("hide-cec-{}", std::process::id()));
            std::fs::create_dir_all(&_dir).map_err(|e| hide::Error::io(&_dir, e))?;
            let path = _dir.join(format!("shift_rot_f{index}_d{dim}.txt"));
            let mut rng = RngStream::new(42);
            let shift = (0..dim).map(|_| rng.uniform_in(-80.0, 80.0)).collect();
            let rotation = random_orthogonal(dim, &mut rng);
            let data = CecData { transform: Transform::new(shift, Some(rotation), 1.0)?, permutation: None };
            write_cec_data(&path, &data)?;
            println!("wrote {}", path.display());
            path
        }
    };

    let data = load_cec_data(&path, &format!("f{index}"), dim)?;
    let f = suite_function_from_data(index, &data)?;
    println!("{} from {}: {}", f.id(), path.display(), f.description());
    let r = HideParams::default().run(&f, &Termination::generations(500), 1)?;
    println!("HIDE best after 500 generations: {:.6} (optimum {})", r.best_fitness(), f.bias());
    Ok(())
}

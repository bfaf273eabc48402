//! Watches the HIDE hierarchy generation by generation: phase, cluster
//! sizes and leader fitness. Also writes the JSONL dump the CLI produces
//! with `--dump-hierarchy`.
//!
//!     cargo run --example hierarchy_dump

use hide::benchmarks::base_function;
use hide::hide::{run_hide_dump, run_hide_observed, HideParams};
use hide::Termination;

fn main() -> hide::Result<()> {
    let f = base_function("rastrigin", 5)?;
    let params = HideParams { np: 40, n_leaders: 4, ..Default::default() };
    let term = Termination::generations(60);

    run_hide_observed(&f, &params, &term, 3, |v| {
        if v.record.generation % 5 == 0 {
            let leaders: Vec<String> = v
                .state
                .local_leaders
                .iter()
                .map(|l| format!("{:.3}", l.fitness.unwrap_or(f64::NAN)))
                .collect();
            println!(
                "gen {:>3} {:?} accepted {:>2} clusters {:?} leaders [{}] global {:.4}",
                v.record.generation,
                v.record.phase,
                v.record.accepted,
                v.state.cluster_sizes(),
                leaders.join(" "),
                v.state.global_leader.fitness.unwrap_or(f64::NAN)
            );
        }
        Ok(())
    })?;

    let mut buf = Vec::new();
    run_hide_dump(&f, &params, &Termination::generations(3), 3, &mut buf)?;
    let text = String::from_utf8(buf).expect("dump is UTF-8");
    println!("JSONL dump, {} lines; first line starts:", text.lines().count());
    println!("{}", text.lines().next().unwrap_or("").chars().take(120).collect::<String>());
    Ok(())
}

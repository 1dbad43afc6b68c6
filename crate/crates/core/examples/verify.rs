//! A short randomized verification run over every suite.

use even_christoffel::runs::run_suites;
use even_christoffel::RunConfig;

fn main() {
    let config = RunConfig { draws: 5, max_degree: 12, ..RunConfig::default() };
    for result in run_suites(&config) {
        println!(
            "{:<14} {:<3} {:>5} instances  worst {:<10}  {}",
            result.suite,
            result.family.tag(),
            result.instances,
            result.worst.to_sci(2),
            if result.passed() { "ok" } else { "FAILED" }
        );
    }
}

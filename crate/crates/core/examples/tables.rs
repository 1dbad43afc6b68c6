//! Recomputes one of the bound tables and prints it as CSV.

use even_christoffel::report::Format;
use even_christoffel::runs::run_table;
use even_christoffel::RunConfig;

fn main() -> even_christoffel::Result<()> {
    let id: u8 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let report = run_table(id, &RunConfig::default())?;
    print!("{}", report.render(Format::Csv)?);
    let s = report.summary();
    eprintln!("table {id}: {} pass, {} flagged, {} fail", s.pass, s.flagged, s.fail);
    Ok(())
}

//! Runs criteria 1 through 11 and prints one verdict line for each.

use equisplit_core::verify::run_all;

fn main() {
    let results = run_all();
    for r in &results {
        println!("{}", r.summary());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Programmatic verification run producing the JSON report the CLI emits.

use qpv::cartan::Series;
use qpv::cli::{run_info, run_verify, CaseSpec, Suite};

pub fn main() {
    let mut case = CaseSpec::new(Series::C, 2, 2);
    case.max_total_degree = 4;
    print!("{}", run_info(&case).unwrap());
    let report = run_verify(&case, &Suite::parse("all").unwrap()).unwrap();
    for c in &report.checks {
        println!("{:<28} {:?} {}", c.id, c.status, c.details);
    }
    println!("overall pass: {}", report.passed());
}

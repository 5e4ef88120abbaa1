use interval_tukey::harness::suite::{run_suite, SuitePolicy};
use interval_tukey::tukey::{list_connections, standard_mutant};

fn main() {
    let trials: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1000);
    for c in list_connections() {
        let r = run_suite(&c, trials, 1, SuitePolicy::default()).unwrap();
        let m = standard_mutant(&c).unwrap();
        let mr = run_suite(&m, trials, 1, SuitePolicy::default()).unwrap();
        println!(
            "{:45} P{:4} E{:4} V{:4} F{:3} I{:4} {:5}ms | mutant F{:4} V{:4} I{:4}",
            r.lemma,
            r.pass,
            r.evidence,
            r.vacuous,
            r.fail,
            r.inconclusive,
            r.wall_ms,
            mr.fail,
            mr.vacuous,
            mr.inconclusive
        );
    }
}

//! Acceptance run: every criterion at full size and tolerance, one
//! line each. Runs without the libtest harness so the lines are always shown.

use std::process::ExitCode;
use std::time::Instant;

use easyq::verify::{run_check, Level, Settings, CHECKS};

const TITLES: [&str; 14] = [
    "closures of ∅ / half-classical crossing / crossing are NC2 / P2* / P2 on ≤ 6 legs",
    "tensor, composition and adjoint identities for T and T′, ≤ 3 + 3 legs, N ∈ {2,3}",
    "Möbius expansion of twisted maps over even partitions, k ≤ 4, N ∈ {2,3}",
    "Weingarten moments equal S_N and H_N enumeration, degree ≤ 4",
    "O, U, B, C moments within 4σ of 10^6-sample Monte Carlo, N ∈ {3,4,5}",
    "derangement probability equals enumeration, within 10^-4 of 1/e at N = 8",
    "truncated characters of S_N: exact at N = 7, converging along N ∈ {8,16,24}",
    "Tr(W G) for NC2 / NC / NC_even equals the partition counts, N ∈ 4..8, k ≤ 6",
    "free hyperspherical closed formula equals the Weingarten value to 10^-30",
    "real sphere against Monte Carlo within 4σ; free sphere scaling within 15%",
    "Jones relations and Markov property, k ≤ 6; dim TL(k) = Catalan(k), k ≤ 8",
    "Weyl relations and magic conditions for 100 unitaries, n ∈ {2,3}; Pauli family",
    "stationarity matrices T_1 and T_2 of the n = 2 Weyl model are idempotent",
    "partial-isometry reductions to groups and spheres; non-overlapping sum limits",
];

fn main() -> ExitCode {
    let settings = Settings::new(Level::Full);
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=CHECKS.len() {
        let outcome = run_check(id, &settings);
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:2} {verdict} ({:.1}s) {}", outcome.seconds, TITLES[id - 1]);
        println!("              {}", outcome.detail);
        if !outcome.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        CHECKS.len() - failed,
        CHECKS.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

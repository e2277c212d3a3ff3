//! Runs every acceptance criterion at full size and prints one PASS/FAIL line
//! per criterion. Details of failing items go to stderr.

use std::process::ExitCode;
use std::time::Instant;

use chernfock::report::Report;
use chernfock::suites::{run, Suite, SuiteConfig};

fn criterion(suites: &[Suite]) -> Result<Report, String> {
    let parts: Result<Vec<Report>, String> = suites
        .iter()
        .map(|s| run(*s, &SuiteConfig::default()).map_err(|e| format!("{}: {}", s, e)))
        .collect();
    Ok(Report::combine("criterion", parts?))
}

fn main() -> ExitCode {
    let criteria: [(&str, &[Suite]); 12] = [
        ("heisenberg relations and normal ordering", &[Suite::Heisenberg]),
        ("gamma commutation and exchange", &[Suite::Gamma]),
        ("jack/macdonald eigen-relations and duality", &[Suite::JackEigen]),
        ("G_k eigen route = Fock route; G2 display", &[Suite::Thm12, Suite::G2]),
        ("k=3 leading-term probe", &[Suite::ConjectureProbe]),
        ("q-zeta identities", &[Suite::QzetaIdentities]),
        ("reduced series closed forms", &[Suite::ReducedClosedForms]),
        ("m=0 route equality", &[Suite::RouteEquality]),
        ("symmetry, bracket fits, m-degree bound", &[Suite::Thm14]),
        ("vacuum and gamma traces", &[Suite::VacuumTrace]),
        ("equivariant derivatives", &[Suite::Derivative]),
        ("young diagram statistics", &[Suite::Young]),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, suites)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = criterion(suites);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(r) if r.passed() => println!("PASS {:>2} {} ({:.1}s)", i + 1, name, secs),
            Ok(r) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.1}s)", i + 1, name, secs);
                for it in r.failures() {
                    eprintln!("    {}: {}", it.name, it.got);
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.1}s): {}", i + 1, name, secs, e);
            }
        }
    }
    println!("{} of 12 criteria passed in {:.1}s", 12 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

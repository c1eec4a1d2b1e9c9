//! Runs every acceptance criterion and prints one line per criterion.
//! Built without the libtest harness so the lines are always visible.

use std::process::ExitCode;
use std::time::Instant;

use bgg_core::selftest::{self, SelftestConfig};

fn main() -> ExitCode {
    let cfg = SelftestConfig::default();
    let checks: [fn(&SelftestConfig) -> selftest::CriterionResult; 10] = [
        selftest::structure_constants,
        selftest::kostant_oracle,
        selftest::verma_dimensions,
        selftest::gauss_norms,
        selftest::central_characters,
        selftest::simplicity,
        selftest::sl2_blocks,
        selftest::sl3_regular_block,
        selftest::weyl_dimension_cross_check,
        selftest::maximal_vector_remark,
    ];
    let start = Instant::now();
    let mut failed = 0;
    for check in checks {
        let r = check(&cfg);
        println!("{r}");
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        checks.len() - failed,
        checks.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! `0 ≤ 1` with every tensor `min`: thin, so every diagram commutes, and
//! since all interchangers are identities the tensors must coincide.

use itermon::corpus;
use itermon::monoidal::{check_kfold, collapsed_pairs};
use itermon::report::CheckOptions;

fn main() {
    let v = corpus::boolean_kfold(3);
    let report = check_kfold(&v, &CheckOptions::default());
    println!("{} checks, passed: {}", report.checks.len(), report.passed());
    for (i, j) in collapsed_pairs(&v) {
        println!("η^{i},{j} is trivial: ⊗{i} and ⊗{j} agree");
    }
    for check in report.checks.iter().filter(|c| c.name.starts_with("collapse")) {
        println!("  {} [{}]", check.name, check.status);
    }
}

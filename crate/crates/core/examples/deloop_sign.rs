//! Replays the delooping on the sign category with two sample categories.

use std::sync::Arc;

use itermon::corpus;
use itermon::deloop::verify_delooping;
use itermon::report::CheckOptions;

fn main() -> itermon::Result<()> {
    let v = Arc::new(corpus::sign_kfold(3));
    let sample = [corpus::constant_category(), corpus::twisted_category()];
    let report = verify_delooping(&v, &sample, &CheckOptions::default())?;
    let mut families: Vec<(String, u64)> = Vec::new();
    for check in &report.checks {
        let family = check.name.split(['[', '/']).next().unwrap_or(&check.name).to_string();
        match families.last_mut() {
            Some((f, n)) if *f == family => *n += check.instances,
            _ => families.push((family, check.instances)),
        }
    }
    for (family, n) in families {
        println!("{family:<32} {n:>8} instances");
    }
    println!("passed: {} in {:.0} ms", report.passed(), report.elapsed_ms);
    Ok(())
}

//! Flips one structure entry of the sign category at a time and shows which
//! axioms of `V` break and which delooping sub-checks notice.

use std::sync::Arc;

use itermon::corpus::{self, SignMutation};
use itermon::deloop::verify_delooping;
use itermon::monoidal::check_kfold;
use itermon::report::CheckOptions;

fn main() -> itermon::Result<()> {
    let options = CheckOptions::default();
    for m in SignMutation::ALL {
        let v = Arc::new(m.kfold());
        let sample = [corpus::constant_category().rebased(v.clone())?, corpus::twisted_category().rebased(v.clone())?];
        let axioms: Vec<String> = check_kfold(&v, &options).failing().map(|c| c.name.clone()).collect();
        let deloop = verify_delooping(&v, &sample, &options)?;
        let mut steps: Vec<String> = deloop
            .failing()
            .map(|c| c.name.split(['[', '/']).next().unwrap_or(&c.name).to_string())
            .collect();
        steps.dedup();
        println!("{}:", m.slug());
        println!("  V fails:        {}", axioms.join(", "));
        println!("  delooping fails: {}", steps.join(", "));
    }
    Ok(())
}

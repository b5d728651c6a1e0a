//! The sign category as a 3-fold monoidal category, built from its braiding.

use itermon::corpus;
use itermon::monoidal::check_kfold;
use itermon::report::CheckOptions;

fn main() -> itermon::Result<()> {
    let v = corpus::sign_kfold(3);
    let c = v.base();
    let x = c.object("X")?;
    for i in 1..=3 {
        for j in i + 1..=3 {
            println!("η^{i},{j}_XXXX = {}", c.morphism_name(v.eta(i, j, x, x, x, x)));
        }
    }
    let report = check_kfold(&v, &CheckOptions::default());
    print!("{report}");
    Ok(())
}

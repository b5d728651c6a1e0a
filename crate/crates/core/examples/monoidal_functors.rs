use std::sync::Arc;

use itermon::corpus;
use itermon::monoidal::{check_monoidal_functor, compose_monoidal_functors, MonoidalFunctorData};
use itermon::report::CheckOptions;

fn main() -> itermon::Result<()> {
    let options = CheckOptions::default();
    let b = Arc::new(corpus::boolean_kfold(3));
    let s = Arc::new(corpus::sign_kfold(3));
    let id = MonoidalFunctorData::identity(s.clone());
    let collapse = MonoidalFunctorData::constant_unit(b.clone(), s.clone())?;
    let composite = compose_monoidal_functors(&id, &collapse)?;
    for (name, f) in [("identity on S", &id), ("B → S at I", &collapse), ("composite", &composite)] {
        println!("{name}: {}", check_monoidal_functor(f, &options).passed());
    }

    // A nontrivial λ at (X, X) breaks the hexagonal interchange.
    let c = s.base();
    let (x, g0) = (c.object("X")?, c.morphism("g0")?);
    let twisted = id.with_lambda_component(1, x, x, g0)?;
    let report = check_monoidal_functor(&twisted, &options);
    for check in report.failing() {
        println!("  fails {}", check.name);
    }
    Ok(())
}

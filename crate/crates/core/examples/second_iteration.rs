//! Products of V-2-categories: hom-of-hom objects are `⊗_3` products.

use itermon::corpus;
use itermon::deloop::{check_level2_product, tensor_enriched_level2};
use itermon::report::CheckOptions;

fn main() -> itermon::Result<()> {
    let (parity, arrow) = (corpus::parity_v2category(), corpus::arrow_v2category());
    let product = tensor_enriched_level2(&parity, &arrow, 1)?;
    println!("{} has objects {:?}", product.name(), product.object_names());
    for x in 0..product.num_objects() {
        for y in 0..product.num_objects() {
            let h = product.hom(x, y);
            println!("  hom({}, {}) = {} with {} objects", product.object_name(x), product.object_name(y), h.name(), h.num_objects());
        }
    }
    let report = check_level2_product(&product, &parity, &arrow, 1, &CheckOptions::default());
    println!("second-level hom: {}", report.check("second-level-hom").is_some_and(|c| c.passed()));
    println!("passed: {}", report.passed());
    Ok(())
}

//! Preorders are categories enriched over the Boolean poset. Their product
//! under `⊗^(1)_1` is the product order.

use itermon::corpus;
use itermon::deloop::tensor_enriched;
use itermon::enrich::{check_enriched_category, EnrichedCategory};
use itermon::report::CheckOptions;

fn show(cat: &EnrichedCategory) {
    let c = cat.base().base();
    println!("{}:", cat.name());
    for a in 0..cat.num_objects() {
        let row: Vec<&str> = (0..cat.num_objects()).map(|b| c.object_name(cat.hom(a, b))).collect();
        println!("  {:>6} | {}", cat.object_name(a), row.join(" "));
    }
}

fn main() -> itermon::Result<()> {
    let options = CheckOptions::default();
    let (chain, vee) = (corpus::chain_preorder(), corpus::vee_preorder());
    let product = tensor_enriched(&chain, &vee, 1)?;
    for cat in [&chain, &vee, &product] {
        show(cat);
        println!("  passes: {}", check_enriched_category(cat, &options).passed());
    }
    Ok(())
}

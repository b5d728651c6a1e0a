//! V-natural transformations on the constant category and their compositions.

use std::sync::Arc;

use itermon::corpus;
use itermon::enrich::{
    enumerate_transformations, transformations_equal, vertical_compose, whisker_left, whisker_right, EnrichedFunctor,
};

fn main() -> itermon::Result<()> {
    let k = Arc::new(corpus::constant_category());
    let c = k.base().base();
    let e0 = c.morphism("e0")?;
    let id = EnrichedFunctor::identity(k.clone());
    let swap = EnrichedFunctor::new(k.clone(), k.clone(), vec![1, 0], vec![e0; 4])?;

    let cells = enumerate_transformations(&id, &id, 16)?;
    for a in &cells {
        let names: Vec<&str> = a.components().iter().map(|&f| c.morphism_name(f)).collect();
        println!("1 ⇒ 1: {names:?}");
    }
    let into_swap = enumerate_transformations(&id, &swap, 16)?;
    println!("{} transformations 1 ⇒ swap", into_swap.len());

    let a = &cells[1];
    let twice = vertical_compose(a, a)?;
    println!("α ∘ α is the identity: {}", transformations_equal(&twice, &cells[0]));
    let left = whisker_left(&swap, a)?;
    let right = whisker_right(a, &swap)?;
    println!("swap·α = α·swap: {}", transformations_equal(&left, &right));
    Ok(())
}

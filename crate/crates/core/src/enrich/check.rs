use std::time::Instant;

use super::{same, EnrichedCategory, EnrichedFunctor, EnrichedNatTransf};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Mor, Ob};
use crate::report::{CheckBuilder, CheckOptions, DiagramReport, TuplePlan, Witness};

fn names(cat: &EnrichedCategory, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&a| cat.object_name(a).to_string()).collect()
}

fn typed(c: &FinCategory, b: &mut CheckBuilder, what: impl FnOnce() -> (String, Vec<String>), f: Mor, dom: Ob, cod: Ob) {
    b.instance();
    if c.dom(f) != dom || c.cod(f) != cod {
        let (diagram, index) = what();
        b.fail(Witness {
            diagram,
            index,
            left: format!("{}: {} → {}", c.morphism_name(f), c.object_name(c.dom(f)), c.object_name(c.cod(f))),
            right: format!("{} → {}", c.object_name(dom), c.object_name(cod)),
            note: None,
        });
    }
}

/// Typing of `M` and `j`, the associativity pentagon over all object
/// quadruples and both unit triangles over all pairs.
pub fn check_enriched_category(cat: &EnrichedCategory, options: &CheckOptions) -> DiagramReport {
    let started = Instant::now();
    let mut report = DiagramReport::new(format!("enriched-category({})", cat.name()));
    let v = cat.base();
    let c = v.base();
    let n = cat.num_objects();
    let hom = |a, b| cat.hom(a, b);

    let mut typing = CheckBuilder::new("typing");
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let f = cat.comp(a, b, d);
                typed(c, &mut typing, || ("M".into(), names(cat, &[a, b, d])), f, v.ob(1, hom(b, d), hom(a, b)), hom(a, d));
            }
        }
        typed(c, &mut typing, || ("j".into(), names(cat, &[a])), cat.ident(a), v.unit(), hom(a, a));
    }
    report.push(typing.finish());

    let plan = TuplePlan::new(n, 4, options);
    let mut pentagon = CheckBuilder::new("pentagon").sampled(plan.sampling.clone());
    plan.for_each(|t| {
        let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
        let legs = (|| {
            let left = c.path(&[
                v.alpha(1, hom(cc, d), hom(b, cc), hom(a, b)),
                v.mor(1, v.id(hom(cc, d)), cat.comp(a, b, cc)),
                cat.comp(a, cc, d),
            ])?;
            let right = c.path(&[v.mor(1, cat.comp(b, cc, d), v.id(hom(a, b))), cat.comp(a, b, d)])?;
            Ok((left, right))
        })();
        pentagon.compare_morphisms(c, || names(cat, t), legs);
    });
    report.push(pentagon.finish());

    let mut left = CheckBuilder::new("unit-left");
    let mut right = CheckBuilder::new("unit-right");
    for a in 0..n {
        for b in 0..n {
            let one = v.id(hom(a, b));
            let legs = c.path(&[v.mor(1, cat.ident(b), one), cat.comp(a, b, b)]).map(|l| (l, one));
            left.compare_morphisms(c, || names(cat, &[a, b]), legs);
            let legs = c.path(&[v.mor(1, one, cat.ident(a)), cat.comp(a, a, b)]).map(|l| (l, one));
            right.compare_morphisms(c, || names(cat, &[a, b]), legs);
        }
    }
    report.push(left.finish());
    report.push(right.finish());
    report.set_elapsed(started.elapsed());
    report
}

/// Typing of the components, the composition square over all triples and
/// the identity triangle over all objects.
pub fn check_enriched_functor(t: &EnrichedFunctor, options: &CheckOptions) -> DiagramReport {
    let started = Instant::now();
    let (src, tgt) = (t.source(), t.target());
    let mut report = DiagramReport::new(format!("enriched-functor({} → {})", src.name(), tgt.name()));
    let v = src.base();
    let c = v.base();
    let n = src.num_objects();
    let tm = |a| t.map_object(a);

    let mut typing = CheckBuilder::new("typing");
    for a in 0..n {
        for b in 0..n {
            typed(c, &mut typing, || ("T".into(), names(src, &[a, b])), t.component(a, b), src.hom(a, b), tgt.hom(tm(a), tm(b)));
        }
    }
    report.push(typing.finish());

    let plan = TuplePlan::new(n, 3, options);
    let mut square = CheckBuilder::new("composition").sampled(plan.sampling.clone());
    plan.for_each(|x| {
        let (a, b, d) = (x[0], x[1], x[2]);
        let legs = (|| {
            let left = c.path(&[src.comp(a, b, d), t.component(a, d)])?;
            let right = c.path(&[v.mor(1, t.component(b, d), t.component(a, b)), tgt.comp(tm(a), tm(b), tm(d))])?;
            Ok((left, right))
        })();
        square.compare_morphisms(c, || names(src, x), legs);
    });
    report.push(square.finish());

    let mut units = CheckBuilder::new("identities");
    for a in 0..n {
        let legs = c.path(&[src.ident(a), t.component(a, a)]).map(|l| (l, tgt.ident(tm(a))));
        units.compare_morphisms(c, || names(src, &[a]), legs);
    }
    report.push(units.finish());
    report.set_elapsed(started.elapsed());
    report
}

/// The naturality hexagon `M ∘ (α_B ⊗_1 T_{AB}) = M ∘ (S_{AB} ⊗_1 α_A)` over
/// all pairs; the unit legs are identities because `I` is strict.
pub fn check_v_natural(alpha: &EnrichedNatTransf, _options: &CheckOptions) -> Result<DiagramReport> {
    let started = Instant::now();
    let (t, s) = (alpha.source(), alpha.target());
    if !same(t.source(), s.source()) || !same(t.target(), s.target()) {
        return Err(Error::StructureMismatch("functors are not parallel".into()));
    }
    let (src, tgt) = (t.source(), t.target());
    let mut report = DiagramReport::new(format!("v-natural({} → {})", src.name(), tgt.name()));
    let v = src.base();
    let c = v.base();
    let n = src.num_objects();
    let (ti, si) = (|a| t.map_object(a), |a| s.map_object(a));

    let mut typing = CheckBuilder::new("typing");
    for a in 0..n {
        typed(c, &mut typing, || ("α".into(), names(src, &[a])), alpha.component(a), v.unit(), tgt.hom(ti(a), si(a)));
    }
    report.push(typing.finish());

    let mut hexagon = CheckBuilder::new("naturality");
    for a in 0..n {
        for b in 0..n {
            let legs = (|| {
                let left = c.path(&[v.mor(1, alpha.component(b), t.component(a, b)), tgt.comp(ti(a), ti(b), si(b))])?;
                let right = c.path(&[v.mor(1, s.component(a, b), alpha.component(a)), tgt.comp(ti(a), si(a), si(b))])?;
                Ok((left, right))
            })();
            hexagon.compare_morphisms(c, || names(src, &[a, b]), legs);
        }
    }
    report.push(hexagon.finish());
    report.set_elapsed(started.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus;

    #[test]
    fn preorder_passes() {
        let chain = corpus::chain_preorder();
        assert!(check_enriched_category(&chain, &CheckOptions::default()).passed());
    }

    #[test]
    fn constant_category_with_nontrivial_composite_fails_unit_triangle_at_pp() {
        let k = corpus::constant_category();
        let g0 = k.base().base().morphism("g0").unwrap();
        let p = k.object("p").unwrap();
        let r = check_enriched_category(&k.with_comp(p, p, p, g0), &CheckOptions::default());
        let left = r.check("unit-left").unwrap();
        assert!(!left.passed());
        assert_eq!(left.witnesses[0].index, ["p", "p"]);
    }

    #[test]
    fn functor_component_assignments_on_constant_category() {
        // Identity-on-objects endofunctors of the constant category with
        // components in {e0, g0}: the passing ones are the homomorphisms
        // from the groupoid {p,q} (all homs I) to Z/2 with T_pp = T_qq = e0
        // and T_pq = T_qp.
        let k = Arc::new(corpus::constant_category());
        let c = k.base().base();
        let (e0, g0) = (c.morphism("e0").unwrap(), c.morphism("g0").unwrap());
        let mut passing = Vec::new();
        for bits in 0..16u32 {
            let comps: Vec<Mor> = (0..4).map(|p| if bits >> p & 1 == 1 { g0 } else { e0 }).collect();
            let t = EnrichedFunctor::new(k.clone(), k.clone(), vec![0, 1], comps).unwrap();
            if check_enriched_functor(&t, &CheckOptions::default()).passed() {
                passing.push(bits);
            }
        }
        // Bits are (pp, pq, qp, qq).
        assert_eq!(passing, [0b0000, 0b0110]);
    }

    #[test]
    fn swap_functor_passes() {
        let k = Arc::new(corpus::constant_category());
        let e0 = k.base().base().morphism("e0").unwrap();
        let swap = EnrichedFunctor::new(k.clone(), k, vec![1, 0], vec![e0; 4]).unwrap();
        assert!(check_enriched_functor(&swap, &CheckOptions::default()).passed());
    }

    #[test]
    fn constant_g0_transformation_is_natural() {
        let k = Arc::new(corpus::constant_category());
        let g0 = k.base().base().morphism("g0").unwrap();
        let id = EnrichedFunctor::identity(k);
        let a = EnrichedNatTransf::new(id.clone(), id, vec![g0, g0]).unwrap();
        assert!(check_v_natural(&a, &CheckOptions::default()).unwrap().passed());
    }

    #[test]
    fn mixed_transformation_on_twisted_category_fails() {
        let t = Arc::new(corpus::twisted_category());
        let c = t.base().base();
        let id = EnrichedFunctor::identity(t.clone());
        let p = t.object("p").unwrap();
        let mut comps: Vec<Mor> = (0..3).map(|a| t.ident(a)).collect();
        comps[p] = c.morphism("g0").unwrap();
        let a = EnrichedNatTransf::new(id.clone(), id, comps).unwrap();
        let r = check_v_natural(&a, &CheckOptions::default()).unwrap();
        let hex = r.check("naturality").unwrap();
        assert!(!hex.passed());
        // Every failing pair mixes p with another object.
        for w in &hex.witnesses {
            assert!(w.index.iter().any(|x| x == "p") && w.index.iter().any(|x| x != "p"));
        }
    }
}

use std::sync::Arc;

use super::check::check_v_natural;
use super::{same, EnrichedCategory, EnrichedFunctor, EnrichedNatTransf};
use crate::error::{Error, Result};
use crate::fincat::Mor;
use crate::report::{CheckOptions, Witness};

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::NotComposable(what()))
    }
}

/// Equality of V-functors: same categories, same object map and the same
/// hom components.
pub fn functors_equal(t: &EnrichedFunctor, s: &EnrichedFunctor) -> bool {
    functor_difference(t, s).is_none()
}

/// The first point where two functors differ, if any.
pub fn functor_difference(t: &EnrichedFunctor, s: &EnrichedFunctor) -> Option<Witness> {
    let witness = |index: Vec<String>, left: String, right: String| Witness {
        diagram: "functor-equality".into(),
        index,
        left,
        right,
        note: None,
    };
    if !same(t.source(), s.source()) || !same(t.target(), s.target()) {
        return Some(witness(
            Vec::new(),
            format!("{} → {}", t.source().name(), t.target().name()),
            format!("{} → {}", s.source().name(), s.target().name()),
        ));
    }
    let (src, tgt) = (t.source(), t.target());
    let c = src.base().base();
    for a in 0..src.num_objects() {
        if t.map_object(a) != s.map_object(a) {
            return Some(witness(
                vec![src.object_name(a).to_string()],
                tgt.object_name(t.map_object(a)).to_string(),
                tgt.object_name(s.map_object(a)).to_string(),
            ));
        }
    }
    for a in 0..src.num_objects() {
        for b in 0..src.num_objects() {
            let (f, g) = (t.component(a, b), s.component(a, b));
            if f != g {
                return Some(witness(
                    vec![src.object_name(a).to_string(), src.object_name(b).to_string()],
                    c.morphism_name(f).to_string(),
                    c.morphism_name(g).to_string(),
                ));
            }
        }
    }
    None
}

pub fn transformations_equal(a: &EnrichedNatTransf, b: &EnrichedNatTransf) -> bool {
    functors_equal(a.source(), b.source()) && functors_equal(a.target(), b.target()) && a.components() == b.components()
}

/// `S ∘ T`: object maps composed, components `S_{Ta,Tb} ∘ T_{ab}`.
pub fn compose_enriched_functors(s: &EnrichedFunctor, t: &EnrichedFunctor) -> Result<EnrichedFunctor> {
    require(same(t.target(), s.source()), || {
        format!("target `{}` is not the source `{}`", t.target().name(), s.source().name())
    })?;
    let c = t.source().base().base();
    let objects = t.object_map().iter().map(|&a| s.map_object(a)).collect();
    EnrichedFunctor::from_fn(t.source().clone(), s.target().clone(), objects, |a, b| {
        c.compose(s.component(t.map_object(a), t.map_object(b)), t.component(a, b))
    })
}

/// `(β∘α)_A = M_{TA,SA,RA} ∘ (β_A ⊗_1 α_A)`.
pub fn vertical_compose(beta: &EnrichedNatTransf, alpha: &EnrichedNatTransf) -> Result<EnrichedNatTransf> {
    require(functors_equal(alpha.target(), beta.source()), || "target of α is not the source of β".into())?;
    let v = alpha.source().source().base();
    let c = v.base();
    let tgt = alpha.source().target();
    let (t, s, r) = (alpha.source(), alpha.target(), beta.target());
    let components = (0..t.source().num_objects())
        .map(|a| {
            c.compose(
                tgt.comp(t.map_object(a), s.map_object(a), r.map_object(a)),
                v.mor(1, beta.component(a), alpha.component(a)),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    EnrichedNatTransf::new(t.clone(), r.clone(), components)
}

/// `(Qα)_A = Q_{TA,SA} ∘ α_A`.
pub fn whisker_left(q: &EnrichedFunctor, alpha: &EnrichedNatTransf) -> Result<EnrichedNatTransf> {
    let (t, s) = (alpha.source(), alpha.target());
    require(same(q.source(), t.target()), || {
        format!("`{}` is not the target `{}` of the transformation", q.source().name(), t.target().name())
    })?;
    let c = q.source().base().base();
    let components = (0..t.source().num_objects())
        .map(|a| c.compose(q.component(t.map_object(a), s.map_object(a)), alpha.component(a)))
        .collect::<Result<Vec<_>>>()?;
    EnrichedNatTransf::new(compose_enriched_functors(q, t)?, compose_enriched_functors(q, s)?, components)
}

/// `(αP)_D = α_{PD}`.
pub fn whisker_right(alpha: &EnrichedNatTransf, p: &EnrichedFunctor) -> Result<EnrichedNatTransf> {
    let (t, s) = (alpha.source(), alpha.target());
    require(same(p.target(), t.source()), || {
        format!("`{}` is not the source `{}` of the transformation", p.target().name(), t.source().name())
    })?;
    let components = p.object_map().iter().map(|&d| alpha.component(d)).collect();
    EnrichedNatTransf::new(compose_enriched_functors(t, p)?, compose_enriched_functors(s, p)?, components)
}

/// `(1_Q)_B = j_{QB}`.
pub fn identity_transformation(q: &EnrichedFunctor) -> EnrichedNatTransf {
    let components = q.object_map().iter().map(|&b| q.target().ident(b)).collect();
    EnrichedNatTransf::new(q.clone(), q.clone(), components).expect("a functor is parallel to itself")
}

/// Every V-natural `T ⇒ S`, in lexicographic order of component ids, up to
/// `limit` of them.
pub fn enumerate_transformations(t: &EnrichedFunctor, s: &EnrichedFunctor, limit: usize) -> Result<Vec<EnrichedNatTransf>> {
    if !same(t.source(), s.source()) || !same(t.target(), s.target()) {
        return Err(Error::StructureMismatch("functors are not parallel".into()));
    }
    let tgt: &Arc<EnrichedCategory> = t.target();
    let v = tgt.base();
    let c = v.base();
    let n = t.source().num_objects();
    let candidates: Vec<&[Mor]> = (0..n).map(|a| c.hom(v.unit(), tgt.hom(t.map_object(a), s.map_object(a)))).collect();
    let mut out = Vec::new();
    if candidates.iter().any(|h| h.is_empty()) {
        return Ok(out);
    }
    let mut choice = vec![0usize; n];
    loop {
        let components = choice.iter().zip(&candidates).map(|(&k, h)| h[k]).collect();
        let alpha = EnrichedNatTransf::new(t.clone(), s.clone(), components)?;
        if check_v_natural(&alpha, &CheckOptions::default())?.passed() {
            out.push(alpha);
            if out.len() >= limit {
                break;
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::enrich::check_v_natural;

    fn constant() -> (Arc<EnrichedCategory>, Mor, Mor) {
        let k = Arc::new(corpus::constant_category());
        let c = k.base().base();
        let (e0, g0) = (c.morphism("e0").unwrap(), c.morphism("g0").unwrap());
        (k, e0, g0)
    }

    #[test]
    fn g0_components_compose_to_e0() {
        let (k, _, g0) = constant();
        let id = EnrichedFunctor::identity(k.clone());
        let a = EnrichedNatTransf::new(id.clone(), id, vec![g0, g0]).unwrap();
        let aa = vertical_compose(&a, &a).unwrap();
        assert_eq!(aa.components(), identity_transformation(a.source()).components());
    }

    #[test]
    fn swap_is_an_involution_and_differs_from_identity() {
        let (k, e0, _) = constant();
        let id = EnrichedFunctor::identity(k.clone());
        let swap = EnrichedFunctor::new(k.clone(), k, vec![1, 0], vec![e0; 4]).unwrap();
        assert!(functors_equal(&compose_enriched_functors(&swap, &swap).unwrap(), &id));
        let w = functor_difference(&id, &swap).unwrap();
        assert_eq!(w.index, ["p"]);
    }

    #[test]
    fn one_component_difference_is_reported() {
        let (k, _, g0) = constant();
        let id = EnrichedFunctor::identity(k.clone());
        let bent = id.with_component(0, 1, g0);
        assert_eq!(functor_difference(&id, &bent).unwrap().index, ["p", "q"]);
    }

    #[test]
    fn whiskering_by_g0_functor_flips_components() {
        let (k, e0, g0) = constant();
        let id = EnrichedFunctor::identity(k.clone());
        // T_pq = T_qp = g0 is a V-functor (see the component enumeration).
        let q = EnrichedFunctor::new(k.clone(), k.clone(), vec![0, 1], vec![e0, g0, g0, e0]).unwrap();
        let a = EnrichedNatTransf::new(id.clone(), id.clone(), vec![e0, e0]).unwrap();
        let swap = EnrichedFunctor::new(k.clone(), k.clone(), vec![1, 0], vec![e0; 4]).unwrap();
        // An α from id to swap: components I → hom(a, swap a).
        let b = EnrichedNatTransf::new(id.clone(), swap, vec![e0, e0]).unwrap();
        let qb = whisker_left(&q, &b).unwrap();
        assert_eq!(qb.components(), [g0, g0]);
        assert!(check_v_natural(&qb, &CheckOptions::default()).unwrap().passed());
        assert_eq!(whisker_left(&q, &a).unwrap().components(), [e0, e0]);
    }

    #[test]
    fn whisker_right_by_swap_exchanges_components() {
        let (k, e0, g0) = constant();
        let id = EnrichedFunctor::identity(k.clone());
        let swap = EnrichedFunctor::new(k.clone(), k.clone(), vec![1, 0], vec![e0; 4]).unwrap();
        let a = EnrichedNatTransf::new(id.clone(), id, vec![g0, e0]).unwrap();
        assert_eq!(whisker_right(&a, &swap).unwrap().components(), [e0, g0]);
    }

    #[test]
    fn natural_endotransformations_of_constant_identity() {
        let (k, e0, g0) = constant();
        let id = EnrichedFunctor::identity(k);
        let all = enumerate_transformations(&id, &id, usize::MAX).unwrap();
        let comps: Vec<&[Mor]> = all.iter().map(|a| a.components()).collect();
        assert_eq!(comps, [&[e0, e0][..], &[g0, g0][..]]);
    }

    #[test]
    fn mismatched_compositions_are_rejected() {
        let (k, e0, _) = constant();
        let chain = Arc::new(corpus::chain_preorder());
        let idk = EnrichedFunctor::identity(k.clone());
        let idc = EnrichedFunctor::identity(chain);
        assert!(matches!(compose_enriched_functors(&idk, &idc), Err(Error::NotComposable(_))));
        let a = EnrichedNatTransf::new(idk.clone(), idk, vec![e0, e0]).unwrap();
        assert!(matches!(whisker_left(&idc, &a), Err(Error::NotComposable(_))));
        assert!(matches!(whisker_right(&a, &idc), Err(Error::NotComposable(_))));
    }
}

//! The passage from a k-fold monoidal `V` to the (k−1)-fold monoidal
//! 2-category `V-Cat`, evaluated on concrete enriched categories.
//!
//! `⊗^(1)_i` on enriched categories is built from `⊗_{i+1}` on hom-objects
//! and composes through `η^{1,i+1}`. Objects of a product are pairs, encoded
//! as `a * |ℬ| + b` and named `(a,b)`.

mod level2;
mod verify;

use std::sync::Arc;

pub use level2::{check_level2_product, check_v2category, tensor_enriched_level2, unit_v2category, V2Category};
pub use verify::verify_delooping;

use crate::enrich::{same, EnrichedCategory, EnrichedFunctor, EnrichedNatTransf};
use crate::error::{Error, Result};
use crate::monoidal::KFoldStructure;

/// Checks `1 ≤ i ≤ k−1` and returns `i + 1`, the index used in `V`.
pub fn delooped_index(v: &KFoldStructure, i: usize) -> Result<usize> {
    if i == 0 || i + 1 > v.k() {
        return Err(Error::IndexOutOfRange {
            index: i,
            valid: if v.k() < 2 {
                "none (k < 2)".into()
            } else {
                format!("1..={}", v.k() - 1)
            },
        });
    }
    Ok(i + 1)
}

fn same_base(cats: &[&EnrichedCategory]) -> Result<()> {
    for pair in cats.windows(2) {
        if !same(pair[0].base(), pair[1].base()) {
            return Err(Error::BaseMismatch(format!(
                "`{}` and `{}` are enriched over different bases",
                pair[0].name(),
                pair[1].name()
            )));
        }
    }
    Ok(())
}

/// `ℐ`: one object `0`, `ℐ(0,0) = I`, `M = j = 1_I`.
pub fn unit_category(v: &Arc<KFoldStructure>) -> EnrichedCategory {
    let one = v.id(v.unit());
    EnrichedCategory::new("ℐ", v.clone(), vec!["0".into()], vec![v.unit()], vec![one], vec![one])
        .expect("unit tables are well shaped")
}

/// `𝒜 ⊗^(1)_i ℬ`: hom-objects `𝒜(a,a') ⊗_{i+1} ℬ(b,b')`, composition
/// `(M_𝒜 ⊗_{i+1} M_ℬ) ∘ η^{1,i+1}` and identities `j_a ⊗_{i+1} j_b`.
pub fn tensor_enriched(a: &EnrichedCategory, b: &EnrichedCategory, i: usize) -> Result<EnrichedCategory> {
    same_base(&[a, b])?;
    let v = a.base();
    let t = delooped_index(v, i)?;
    let c = v.base();
    let nb = b.num_objects();
    let n = a.num_objects() * nb;
    let objects = (0..n)
        .map(|x| format!("({},{})", a.object_name(x / nb), b.object_name(x % nb)))
        .collect();
    let split = |x: usize| (x / nb, x % nb);
    EnrichedCategory::from_fns(
        format!("({}⊗{}{})", a.name(), i, b.name()),
        v.clone(),
        objects,
        |x, y| {
            let ((a0, b0), (a1, b1)) = (split(x), split(y));
            v.ob(t, a.hom(a0, a1), b.hom(b0, b1))
        },
        |x, y, z| {
            let ((a0, b0), (a1, b1), (a2, b2)) = (split(x), split(y), split(z));
            let eta = v.eta(1, t, a.hom(a1, a2), b.hom(b1, b2), a.hom(a0, a1), b.hom(b0, b1));
            c.compose(v.mor(t, a.comp(a0, a1, a2), b.comp(b0, b1, b2)), eta)
        },
        |x| {
            let (a0, b0) = split(x);
            Ok(v.mor(t, a.ident(a0), b.ident(b0)))
        },
    )
}

/// `T ⊗^(1)_i S` between the given products: object map pairwise, hom
/// components `T_{aa'} ⊗_{i+1} S_{bb'}`.
pub(crate) fn tensor_functors_between(
    t: &EnrichedFunctor,
    s: &EnrichedFunctor,
    i: usize,
    source: Arc<EnrichedCategory>,
    target: Arc<EnrichedCategory>,
) -> Result<EnrichedFunctor> {
    let v = source.base().clone();
    let k = delooped_index(&v, i)?;
    let nb = s.source().num_objects();
    let tnb = s.target().num_objects();
    let objects = (0..source.num_objects())
        .map(|x| t.map_object(x / nb) * tnb + s.map_object(x % nb))
        .collect();
    EnrichedFunctor::from_fn(source, target, objects, |x, y| {
        Ok(v.mor(k, t.component(x / nb, y / nb), s.component(x % nb, y % nb)))
    })
}

pub fn tensor_enriched_functors(t: &EnrichedFunctor, s: &EnrichedFunctor, i: usize) -> Result<EnrichedFunctor> {
    let source = Arc::new(tensor_enriched(t.source(), s.source(), i)?);
    let target = Arc::new(tensor_enriched(t.target(), s.target(), i)?);
    tensor_functors_between(t, s, i, source, target)
}

/// `θ ⊗^(1)_i θ'` with components `θ_a ⊗_{i+1} θ'_b`, between the given
/// tensors of the source and target functors.
pub fn tensor_transformations(
    theta: &EnrichedNatTransf,
    phi: &EnrichedNatTransf,
    i: usize,
    source: EnrichedFunctor,
    target: EnrichedFunctor,
) -> Result<EnrichedNatTransf> {
    let v = theta.source().source().base().clone();
    let k = delooped_index(&v, i)?;
    let nb = phi.source().source().num_objects();
    let components = (0..source.source().num_objects())
        .map(|x| v.mor(k, theta.component(x / nb), phi.component(x % nb)))
        .collect();
    EnrichedNatTransf::new(source, target, components)
}

pub(crate) fn associator_between(
    a: &EnrichedCategory,
    b: &EnrichedCategory,
    c: &EnrichedCategory,
    i: usize,
    source: Arc<EnrichedCategory>,
    target: Arc<EnrichedCategory>,
) -> Result<EnrichedFunctor> {
    let v = a.base().clone();
    let t = delooped_index(&v, i)?;
    let (nb, nc) = (b.num_objects(), c.num_objects());
    let split = |x: usize| (x / (nb * nc), (x / nc) % nb, x % nc);
    // ((a,b),c) and (a,(b,c)) share the encoding a·|ℬ||𝒞| + b·|𝒞| + c.
    let objects = (0..source.num_objects()).collect();
    EnrichedFunctor::from_fn(source, target, objects, |x, y| {
        let ((a0, b0, c0), (a1, b1, c1)) = (split(x), split(y));
        Ok(v.alpha(t, a.hom(a0, a1), b.hom(b0, b1), c.hom(c0, c1)))
    })
}

/// `α^(1)i`: `(𝒜⊗ℬ)⊗𝒞 → 𝒜⊗(ℬ⊗𝒞)` with components `α^{i+1}` at the hom-objects.
pub fn associator_component(
    a: &EnrichedCategory,
    b: &EnrichedCategory,
    c: &EnrichedCategory,
    i: usize,
) -> Result<EnrichedFunctor> {
    let source = Arc::new(tensor_enriched(&tensor_enriched(a, b, i)?, c, i)?);
    let target = Arc::new(tensor_enriched(a, &tensor_enriched(b, c, i)?, i)?);
    associator_between(a, b, c, i, source, target)
}

pub(crate) fn interchange_between(
    cats: [&EnrichedCategory; 4],
    i: usize,
    j: usize,
    source: Arc<EnrichedCategory>,
    target: Arc<EnrichedCategory>,
) -> Result<EnrichedFunctor> {
    let [a, b, c, d] = cats;
    let v = a.base().clone();
    check_pair(&v, i, j)?;
    let (nb, nc, nd) = (b.num_objects(), c.num_objects(), d.num_objects());
    let split = |x: usize| {
        let (ab, cd) = (x / (nc * nd), x % (nc * nd));
        (ab / nb, ab % nb, cd / nd, cd % nd)
    };
    let objects = (0..source.num_objects())
        .map(|x| {
            let (a0, b0, c0, d0) = split(x);
            (a0 * nc + c0) * (nb * nd) + b0 * nd + d0
        })
        .collect();
    EnrichedFunctor::from_fn(source, target, objects, |x, y| {
        let ((a0, b0, c0, d0), (a1, b1, c1, d1)) = (split(x), split(y));
        Ok(v.eta(i + 1, j + 1, a.hom(a0, a1), b.hom(b0, b1), c.hom(c0, c1), d.hom(d0, d1)))
    })
}

fn check_pair(v: &KFoldStructure, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j || j + 1 > v.k() {
        return Err(Error::IndexOutOfRange {
            index: j,
            valid: format!("1 ≤ i < j ≤ {} (k = {})", v.k().saturating_sub(1), v.k()),
        });
    }
    Ok(())
}

/// `η^(1)i,j`: `(𝒜⊗_jℬ)⊗_i(𝒞⊗_j𝒟) → (𝒜⊗_i𝒞)⊗_j(ℬ⊗_i𝒟)` with object map
/// `((a,b),(c,d)) ↦ ((a,c),(b,d))` and components `η^{i+1,j+1}`.
pub fn interchange_component(
    a: &EnrichedCategory,
    b: &EnrichedCategory,
    c: &EnrichedCategory,
    d: &EnrichedCategory,
    i: usize,
    j: usize,
) -> Result<EnrichedFunctor> {
    same_base(&[a, b, c, d])?;
    check_pair(a.base(), i, j)?;
    let source = Arc::new(tensor_enriched(&tensor_enriched(a, b, j)?, &tensor_enriched(c, d, j)?, i)?);
    let target = Arc::new(tensor_enriched(&tensor_enriched(a, c, i)?, &tensor_enriched(b, d, i)?, j)?);
    interchange_between([a, b, c, d], i, j, source, target)
}

/// The relabeling `ℐ ⊗ 𝒜 → 𝒜` (or `𝒜 ⊗ ℐ → 𝒜`), `(0,a) ↦ a`, with
/// identity components.
pub(crate) fn unitor_between(product: Arc<EnrichedCategory>, a: Arc<EnrichedCategory>) -> Result<EnrichedFunctor> {
    let v = a.base().clone();
    let n = a.num_objects();
    EnrichedFunctor::from_fn(product, a.clone(), (0..n).collect(), |x, y| Ok(v.id(a.hom(x, y))))
}

/// `λ: ℐ ⊗^(1)_i 𝒜 → 𝒜`.
pub fn left_unitor(a: &Arc<EnrichedCategory>, i: usize) -> Result<EnrichedFunctor> {
    let unit = unit_category(a.base());
    unitor_between(Arc::new(tensor_enriched(&unit, a, i)?), a.clone())
}

/// `ρ: 𝒜 ⊗^(1)_i ℐ → 𝒜`.
pub fn right_unitor(a: &Arc<EnrichedCategory>, i: usize) -> Result<EnrichedFunctor> {
    let unit = unit_category(a.base());
    unitor_between(Arc::new(tensor_enriched(a, &unit, i)?), a.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::enrich::{check_enriched_category, check_enriched_functor, compose_enriched_functors, functors_equal};
    use crate::report::CheckOptions;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn unit_category_passes() {
        for v in [corpus::boolean_kfold(3), corpus::sign_kfold(3)] {
            let u = unit_category(&Arc::new(v));
            assert!(check_enriched_category(&u, &opts()).passed());
        }
    }

    #[test]
    fn constant_square_is_constant() {
        let k = corpus::constant_category();
        let e0 = k.base().base().morphism("e0").unwrap();
        for i in [1, 2] {
            let kk = tensor_enriched(&k, &k, i).unwrap();
            assert!(kk.hom_table().iter().all(|&h| h == k.base().unit()));
            assert!(kk.composition_table().iter().all(|&f| f == e0));
        }
    }

    #[test]
    fn index_bounds() {
        let k = corpus::constant_category();
        assert!(matches!(tensor_enriched(&k, &k, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(tensor_enriched(&k, &k, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(interchange_component(&k, &k, &k, &k, 2, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn mixed_bases_are_rejected() {
        let r = tensor_enriched(&corpus::chain_preorder(), &corpus::constant_category(), 1);
        assert!(matches!(r, Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn g0_functors_tensor_to_e0() {
        let k = Arc::new(corpus::constant_category());
        let c = k.base().base();
        let (e0, g0) = (c.morphism("e0").unwrap(), c.morphism("g0").unwrap());
        let q = EnrichedFunctor::new(k.clone(), k.clone(), vec![0, 1], vec![e0, g0, g0, e0]).unwrap();
        let qq = tensor_enriched_functors(&q, &q, 1).unwrap();
        // (p,p) → (q,q): g0 ⊗ g0.
        assert_eq!(qq.component(0, 3), e0);
        assert!(check_enriched_functor(&qq, &opts()).passed());
    }

    #[test]
    fn identity_tensor_is_identity() {
        let t = Arc::new(corpus::twisted_category());
        let id = EnrichedFunctor::identity(t.clone());
        let tt = tensor_enriched_functors(&id, &id, 2).unwrap();
        assert!(functors_equal(&tt, &EnrichedFunctor::identity(tt.source().clone())));
    }

    #[test]
    fn tensor_of_composites_is_composite_of_tensors() {
        let k = Arc::new(corpus::constant_category());
        let c = k.base().base();
        let (e0, g0) = (c.morphism("e0").unwrap(), c.morphism("g0").unwrap());
        let q = EnrichedFunctor::new(k.clone(), k.clone(), vec![0, 1], vec![e0, g0, g0, e0]).unwrap();
        let swap = EnrichedFunctor::new(k.clone(), k.clone(), vec![1, 0], vec![e0; 4]).unwrap();
        let lhs = tensor_enriched_functors(&compose_enriched_functors(&q, &swap).unwrap(), &compose_enriched_functors(&swap, &q).unwrap(), 1).unwrap();
        let qs = tensor_enriched_functors(&q, &swap, 1).unwrap();
        let sq = tensor_enriched_functors(&swap, &q, 1).unwrap();
        assert!(functors_equal(&lhs, &compose_enriched_functors(&qs, &sq).unwrap()));
    }

    #[test]
    fn unitors_pass_on_fixtures() {
        for cat in [corpus::vee_preorder(), corpus::twisted_category()] {
            let a = Arc::new(cat);
            for i in [1, 2] {
                assert!(check_enriched_functor(&left_unitor(&a, i).unwrap(), &opts()).passed());
                assert!(check_enriched_functor(&right_unitor(&a, i).unwrap(), &opts()).passed());
            }
        }
    }

    #[test]
    fn twisted_interchange_has_nontrivial_components() {
        let t = corpus::twisted_category();
        let f = interchange_component(&t, &t, &t, &t, 1, 2).unwrap();
        let g0 = t.base().base().morphism("g0").unwrap();
        assert!(f.components().contains(&g0));
        assert!(check_enriched_functor(&f, &opts()).passed());
    }
}

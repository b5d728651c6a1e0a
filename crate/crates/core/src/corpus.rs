//! Bundled example structures.
//!
//! * `B`: the Boolean poset `0 ≤ 1` with every tensor `min` and unit `1`.
//!   Enriched categories over it are preorders.
//! * `S`: the sign category. Objects `I` (even) and `X` (odd), each with
//!   automorphism group `Z/2` (`e0, g0` on `I`, `e1, g1` on `X`) and no
//!   morphisms between them. The tensor adds parities on objects and
//!   multiplies signs on morphisms; the braiding is `-1` on `X ⊗ X`.
//! * `Z/2`: the one-object group, symmetric with the trivial braiding.
//!
//! Enriched fixtures: two preorders over `B`, and over `S` a two-object
//! category with every hom `I` and a three-object category whose
//! composition is twisted by a coboundary.

use std::sync::Arc;

use crate::deloop::{unit_category, V2Category};
use crate::doc::{
    category_document, enriched_document, functor_document, kfold_document, symmetric_document, v2_document, Reference,
    StructureDocument,
};
use crate::enrich::{EnrichedCategory, EnrichedFunctor};
use crate::fincat::{FinCategory, Mor, Ob};
use crate::monoidal::{from_symmetric, KFoldStructure, SymmetricStructure, TensorTable};
use crate::report::CheckOptions;

pub fn boolean_poset_category() -> FinCategory {
    FinCategory::builder()
        .object("0")
        .object("1")
        .identity("0", "id0")
        .identity("1", "id1")
        .morphism("m", "0", "1")
        .build()
        .expect("boolean poset is well formed")
}

fn thin_min_tensor(c: &FinCategory) -> TensorTable {
    let min = |a: Ob, b: Ob| a.min(b);
    TensorTable::from_fn(c, min, |f, g| {
        let dom = min(c.dom(f), c.dom(g));
        let cod = min(c.cod(f), c.cod(g));
        c.unique_morphism(dom, cod).expect("min is monotone")
    })
}

/// `B` with `k` copies of `min`, identity associators and interchangers.
pub fn boolean_kfold(k: usize) -> KFoldStructure {
    let c = Arc::new(boolean_poset_category());
    let unit = c.object("1").expect("object 1");
    let tensors = vec![thin_min_tensor(&c); k];
    let min = |idx: &[Ob]| idx.iter().copied().min().expect("nonempty index");
    KFoldStructure::from_fns(
        c.clone(),
        unit,
        tensors,
        |_, idx| Ok(c.identity(min(idx))),
        |_, _, idx| Ok(c.identity(min(idx))),
    )
    .expect("boolean tables are well shaped")
}

/// `B` as a symmetric monoidal category with trivial braiding.
pub fn boolean_symmetric() -> SymmetricStructure {
    let c = Arc::new(boolean_poset_category());
    let unit = c.object("1").expect("object 1");
    let tensor = thin_min_tensor(&c);
    let cc = c.clone();
    let cd = c.clone();
    SymmetricStructure::from_fns(
        c,
        unit,
        tensor,
        move |idx| Ok(cc.identity(idx[0].min(idx[1]).min(idx[2]))),
        move |idx| Ok(cd.identity(idx[0].min(idx[1]))),
    )
    .expect("boolean tables are well shaped")
}

pub fn sign_category() -> FinCategory {
    FinCategory::builder()
        .object("I")
        .object("X")
        .identity("I", "e0")
        .morphism("g0", "I", "I")
        .identity("X", "e1")
        .morphism("g1", "X", "X")
        .compose("g0", "g0", "e0")
        .compose("g1", "g1", "e1")
        .build()
        .expect("sign category is well formed")
}

/// Parity of an object of `S` and (parity, sign) of a morphism, read off
/// the morphism ids `e0, g0, e1, g1 = 0, 1, 2, 3`.
fn sign_parts(f: Mor) -> (usize, usize) {
    (f.0 / 2, f.0 % 2)
}

fn sign_tensor(c: &FinCategory) -> TensorTable {
    TensorTable::from_fn(
        c,
        |a, b| Ob((a.0 + b.0) % 2),
        |f, g| {
            let ((pf, sf), (pg, sg)) = (sign_parts(f), sign_parts(g));
            Mor(((pf + pg) % 2) * 2 + (sf ^ sg))
        },
    )
}

/// `S` with strict associator and braiding `c_{XX} = g0`.
pub fn sign_symmetric() -> SymmetricStructure {
    let c = Arc::new(sign_category());
    let unit = c.object("I").expect("object I");
    let x = c.object("X").expect("object X");
    let g0 = c.morphism("g0").expect("g0");
    let tensor = sign_tensor(&c);
    let parity = |obs: &[Ob]| Ob(obs.iter().map(|a| a.0).sum::<usize>() % 2);
    let (ca, cb) = (c.clone(), c.clone());
    SymmetricStructure::from_fns(
        c,
        unit,
        tensor,
        move |idx| Ok(ca.identity(parity(idx))),
        move |idx| Ok(if idx == [x, x] { g0 } else { cb.identity(parity(idx)) }),
    )
    .expect("sign tables are well shaped")
}

/// `S` as a k-fold monoidal category through the symmetric adapter.
pub fn sign_kfold(k: usize) -> KFoldStructure {
    from_symmetric(&sign_symmetric(), k, &CheckOptions::default()).expect("sign category is symmetric")
}

pub fn z2_category() -> FinCategory {
    FinCategory::builder()
        .object("*")
        .identity("*", "e")
        .morphism("g", "*", "*")
        .compose("g", "g", "e")
        .build()
        .expect("Z/2 is well formed")
}

/// The one-object group `Z/2` with tensor given by multiplication.
pub fn z2_symmetric() -> SymmetricStructure {
    let c = Arc::new(z2_category());
    let star = Ob(0);
    let tensor = TensorTable::from_fn(&c, |_, _| star, |f, g| Mor(f.0 ^ g.0));
    let e = c.identity(star);
    SymmetricStructure::from_fns(c, star, tensor, move |_| Ok(e), move |_| Ok(e)).expect("Z/2 tables are well shaped")
}

pub fn z2_kfold(k: usize) -> KFoldStructure {
    from_symmetric(&z2_symmetric(), k, &CheckOptions::default()).expect("Z/2 is symmetric")
}

/// A preorder as a category enriched over `B` (k = 3): `hom(a,b) = 1` iff
/// `a ≤ b` in the reflexive closure of `leq`. Transitivity is the caller's
/// responsibility; a non-transitive relation has no composition.
pub fn preorder(name: &str, objects: &[&str], leq: &[(&str, &str)]) -> crate::Result<EnrichedCategory> {
    let v = Arc::new(boolean_kfold(3));
    let (zero, one) = (v.base().object("0")?, v.base().object("1")?);
    let idx = |n: &str| objects.iter().position(|o| *o == n).expect("relation names a listed object");
    let rel: Vec<(usize, usize)> = leq.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    EnrichedCategory::thin(name, v, objects.iter().map(|o| o.to_string()).collect(), |a, b| {
        if a == b || rel.contains(&(a, b)) {
            one
        } else {
            zero
        }
    })
}

/// The chain `a ≤ b`.
pub fn chain_preorder() -> EnrichedCategory {
    preorder("chain", &["a", "b"], &[("a", "b")]).expect("chain is a preorder")
}

/// The vee `x ≤ y`, `x ≤ z`.
pub fn vee_preorder() -> EnrichedCategory {
    preorder("vee", &["x", "y", "z"], &[("x", "y"), ("x", "z")]).expect("vee is a preorder")
}

/// Over `S` (k = 3): objects `p, q`, every hom `I`, `M = j = e0`.
pub fn constant_category() -> EnrichedCategory {
    let v = Arc::new(sign_kfold(3));
    let (unit, e0) = (v.unit(), v.base().morphism("e0").expect("e0"));
    EnrichedCategory::from_fns("constant", v, vec!["p".into(), "q".into()], |_, _| unit, |_, _, _| Ok(e0), |_| Ok(e0))
        .expect("constant tables are well shaped")
}

/// Over `S` (k = 3): objects `p, q, r` of grades `0, 1, 1`, with
/// `hom(a,b) = X` exactly when the grades differ. The sign of `M_{abc}` is
/// `φ(b,c) + φ(a,b) + φ(a,c)` where `φ` is `1` on `(p,q)` and `0` elsewhere.
pub fn twisted_category() -> EnrichedCategory {
    let v = Arc::new(sign_kfold(3));
    let grade = [0usize, 1, 1];
    let phi = |a: usize, b: usize| usize::from((a, b) == (0, 1));
    let c = v.base().clone();
    EnrichedCategory::from_fns(
        "twisted",
        v,
        vec!["p".into(), "q".into(), "r".into()],
        |a, b| Ob((grade[a] + grade[b]) % 2),
        |a, b, d| {
            let parity = (grade[a] + grade[d]) % 2;
            Ok(Mor(parity * 2 + (phi(b, d) + phi(a, b) + phi(a, d)) % 2))
        },
        |a| Ok(c.identity(Ob((2 * grade[a]) % 2))),
    )
    .expect("twisted tables are well shaped")
}

/// A one-object `V`-2-category whose hom is `hom` and whose composition
/// multiplies objects with `mult`, unit object `unit`. Hom components are
/// the unique morphisms when `V` is thin, identities otherwise.
fn one_object_v2category(
    name: &str,
    hom: EnrichedCategory,
    mult: impl Fn(usize, usize) -> usize,
    unit: usize,
) -> crate::Result<V2Category> {
    let v = hom.base().clone();
    let hom = Arc::new(hom);
    let c = v.base();
    let component = |a: Ob, b: Ob| {
        c.unique_morphism(a, b)
            .or_else(|| (a == b).then(|| c.identity(a)))
            .ok_or_else(|| crate::Error::MalformedMap(format!("no component {} → {}", c.object_name(a), c.object_name(b))))
    };
    V2Category::from_fns(
        name,
        v.clone(),
        vec!["*".into()],
        vec![hom.clone()],
        |_, _, _, source, target| {
            let n = hom.num_objects();
            let objects = (0..source.num_objects()).map(|x| mult(x / n, x % n)).collect();
            let (s, t) = (source.clone(), target.clone());
            EnrichedFunctor::from_fn(source, target, objects, |x, y| component(s.hom(x, y), t.hom(mult(x / n, x % n), mult(y / n, y % n))))
        },
        |_, source, target| {
            let f = component(v.unit(), target.hom(unit, unit))?;
            EnrichedFunctor::new(source, target, vec![unit], vec![f])
        },
    )
}

/// Over `B`: one object, hom the chain `a ≤ b`, composition by meet, unit `b`.
pub fn meet_v2category() -> V2Category {
    one_object_v2category("meet", chain_preorder(), |x, y| x.min(y), 1).expect("meet is a monoid in preorders")
}

/// Over `S`: one object, hom the constant category, composition by the
/// group law of `Z/2` on `{p, q}` with unit `p`.
pub fn parity_v2category() -> V2Category {
    one_object_v2category("parity", constant_category(), |x, y| x ^ y, 0).expect("Z/2 acts on the constant category")
}

/// Over `S`: objects `u, v` with `hom(u,u) = hom(v,v) = ℐ`,
/// `hom(u,v)` the twisted category and `hom(v,u)` empty.
pub fn arrow_v2category() -> V2Category {
    let twisted = Arc::new(twisted_category());
    let v = twisted.base().clone();
    let unit = Arc::new(unit_category(&v));
    let empty = Arc::new(EnrichedCategory::empty("∅", v.clone()));
    let homs = vec![unit.clone(), twisted, empty, unit];
    V2Category::from_fns(
        "arrow",
        v.clone(),
        vec!["u".into(), "v".into()],
        homs,
        |_, _, _, source, target| {
            // Every nonempty source is ℐ ⊗ 𝒜 or 𝒜 ⊗ ℐ, which share indices with 𝒜.
            let t = target.clone();
            let n = source.num_objects();
            EnrichedFunctor::from_fn(source, target, (0..n).collect(), |x, y| Ok(v.id(t.hom(x, y))))
        },
        |_, source, target| EnrichedFunctor::new(source, target.clone(), vec![0], vec![v.id(target.hom(0, 0))]),
    )
    .expect("arrow tables are well shaped")
}

/// The other morphism with the same endpoints, for the two-element hom-sets of `S`.
fn flipped(c: &FinCategory, f: Mor) -> Mor {
    *c.hom(c.dom(f), c.cod(f)).iter().find(|&&g| g != f).expect("hom-sets of S have two elements")
}

/// Single-entry mutations of `S` (k = 3), each aimed at one axiom family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMutation {
    /// `η^{12}_{XXII}` flipped.
    InternalUnit,
    /// `η^{12}_{IXIX}` flipped.
    ExternalUnit,
    /// `η^{12}_{XXXX}` flipped.
    InternalAssoc,
    /// `α^2_{XXX}` flipped.
    ExternalAssoc,
    /// `η^{23}_{XXXX}` flipped.
    GiantHexagon,
    /// `α^1_{XIX}` flipped.
    Pentagon,
}

impl SignMutation {
    pub const ALL: [SignMutation; 6] = [
        SignMutation::InternalUnit,
        SignMutation::ExternalUnit,
        SignMutation::InternalAssoc,
        SignMutation::ExternalAssoc,
        SignMutation::GiantHexagon,
        SignMutation::Pentagon,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            SignMutation::InternalUnit => "internal-unit",
            SignMutation::ExternalUnit => "external-unit",
            SignMutation::InternalAssoc => "internal-assoc",
            SignMutation::ExternalAssoc => "external-assoc",
            SignMutation::GiantHexagon => "giant-hexagon",
            SignMutation::Pentagon => "pentagon",
        }
    }

    pub fn kfold(self) -> KFoldStructure {
        let v = sign_kfold(3);
        let c = v.base();
        let (i, x) = (v.unit(), c.object("X").expect("object X"));
        let eta = |a: usize, b: usize, idx: [Ob; 4]| {
            let f = flipped(c, v.eta(a, b, idx[0], idx[1], idx[2], idx[3]));
            v.with_interchange_component(a, b, &idx, f)
        };
        let alpha = |a: usize, idx: [Ob; 3]| {
            let f = flipped(c, v.alpha(a, idx[0], idx[1], idx[2]));
            v.with_associator_component(a, &idx, f)
        };
        match self {
            SignMutation::InternalUnit => eta(1, 2, [x, x, i, i]),
            SignMutation::ExternalUnit => eta(1, 2, [i, x, i, x]),
            SignMutation::InternalAssoc => eta(1, 2, [x, x, x, x]),
            SignMutation::ExternalAssoc => alpha(2, [x, x, x]),
            SignMutation::GiantHexagon => eta(2, 3, [x, x, x, x]),
            SignMutation::Pentagon => alpha(1, [x, i, x]),
        }
        .expect("index is in range")
    }
}

/// Every bundled fixture as `(path relative to the fixture directory, document)`.
/// References between fixtures are relative paths.
pub fn fixture_documents() -> Vec<(String, StructureDocument)> {
    let mut out = Vec::new();
    let mut add = |path: &str, doc: StructureDocument| out.push((path.to_string(), doc));
    let path = Reference::path;

    let boolean = boolean_kfold(3);
    add("boolean-poset.category.json", category_document(boolean.base()));
    add("boolean-poset.kfold.json", kfold_document(&boolean, path("boolean-poset.category.json")));
    add("boolean-poset.symmetric.json", symmetric_document(&boolean_symmetric(), path("boolean-poset.category.json")));
    let sign = sign_kfold(3);
    add("sign.category.json", category_document(sign.base()));
    add("sign.symmetric.json", symmetric_document(&sign_symmetric(), path("sign.category.json")));
    add("sign.kfold.json", kfold_document(&sign, path("sign.category.json")));
    let sign2 = Arc::new(sign_kfold(2));
    add("sign-k2.kfold.json", kfold_document(&sign2, path("sign.category.json")));
    let z2 = z2_kfold(3);
    add("z2.category.json", category_document(z2.base()));
    add("z2.kfold.json", kfold_document(&z2, path("z2.category.json")));

    for cat in [chain_preorder(), vee_preorder()] {
        add(&format!("{}.enriched.json", cat.name()), enriched_document(&cat, path("boolean-poset.kfold.json")));
    }
    let constant = Arc::new(constant_category());
    for cat in [&*constant, &twisted_category()] {
        add(&format!("{}.enriched.json", cat.name()), enriched_document(cat, path("sign.kfold.json")));
        let low = cat.rebased(sign2.clone()).expect("same tables over k = 2");
        add(&format!("{}-k2.enriched.json", cat.name()), enriched_document(&low, path("sign-k2.kfold.json")));
    }
    let e0 = sign.base().morphism("e0").expect("e0");
    let swap = EnrichedFunctor::new(constant.clone(), constant.clone(), vec![1, 0], vec![e0; 4]).expect("swap is well shaped");
    add("swap.functor.json", functor_document(&swap, path("constant.enriched.json"), path("constant.enriched.json")));
    add("meet.v2.json", v2_document(&meet_v2category(), path("boolean-poset.kfold.json")));
    for w in [parity_v2category(), arrow_v2category()] {
        add(&format!("{}.v2.json", w.name()), v2_document(&w, path("sign.kfold.json")));
    }

    let up = |p: &str| Reference::path(format!("../{p}"));
    for m in SignMutation::ALL {
        add(&format!("broken/{}.kfold.json", m.slug()), kfold_document(&m.kfold(), up("sign.category.json")));
    }
    let c = sign.base();
    let (g0, g1) = (c.morphism("g0").expect("g0"), c.morphism("g1").expect("g1"));
    let (i, x) = (sign.unit(), c.object("X").expect("object X"));
    let bad_unit = c.with_composite(g0, e0, e0).expect("g0 and e0 compose");
    add("broken/identity-law.category.json", category_document(&bad_unit));
    let bad_tensor = sign.with_tensor_morphism(1, g0, e0, e0).expect("index 1 exists");
    add("broken/tensor-functor.kfold.json", kfold_document(&bad_tensor, up("sign.category.json")));
    let bad_braiding = sign_symmetric().with_braiding_component(x, i, g1);
    add("broken/braiding.symmetric.json", symmetric_document(&bad_braiding, up("sign.category.json")));
    let (p, q) = (0, 1);
    add(
        "broken/unit-triangle.enriched.json",
        enriched_document(&constant.with_comp(p, p, p, g0).renamed("unit-triangle"), up("sign.kfold.json")),
    );
    let twisted = twisted_category();
    let r = 2;
    let bad_m = twisted.with_comp(p, q, r, flipped(c, twisted.comp(p, q, r))).renamed("pentagon");
    add("broken/pentagon.enriched.json", enriched_document(&bad_m, up("sign.kfold.json")));
    let id = EnrichedFunctor::identity(constant.clone());
    add(
        "broken/functor.functor.json",
        functor_document(&id.with_component(p, q, g0), up("constant.enriched.json"), up("constant.enriched.json")),
    );
    let parity = parity_v2category();
    let broken = parity.with_comp(0, 0, 0, parity.comp(0, 0, 0).with_component(1, 1, g0));
    add("broken/associativity.v2.json", v2_document(&broken, up("sign.kfold.json")));
    out
}

//! One explicit iteration: categories enriched over `(V-Cat, ⊗^(1)_1)`.
//!
//! A [`V2Category`] stores its hom-objects as enriched categories and its
//! composition and identities as enriched functors
//! `M_{uvw}: hom(v,w) ⊗^(1)_1 hom(u,v) → hom(u,w)` and `j_u: ℐ → hom(u,u)`.

use std::sync::Arc;
use std::time::Instant;

use super::{
    associator_between, interchange_between, same_base, tensor_enriched, tensor_functors_between, unit_category,
    unitor_between,
};
use crate::enrich::{
    check_enriched_category, check_enriched_functor, compose_enriched_functors, functor_difference, same,
    EnrichedCategory, EnrichedFunctor,
};
use crate::error::{Error, Result};
use crate::monoidal::KFoldStructure;
use crate::report::{CheckBuilder, CheckOptions, CheckOutcome, DiagramReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V2Category {
    name: String,
    base: Arc<KFoldStructure>,
    objects: Vec<String>,
    homs: Vec<Arc<EnrichedCategory>>,
    /// `composition[(u * n + v) * n + w]` is `M_{uvw}`.
    composition: Vec<EnrichedFunctor>,
    identities: Vec<EnrichedFunctor>,
}

impl V2Category {
    pub fn new(
        name: impl Into<String>,
        base: Arc<KFoldStructure>,
        objects: Vec<String>,
        homs: Vec<Arc<EnrichedCategory>>,
        composition: Vec<EnrichedFunctor>,
        identities: Vec<EnrichedFunctor>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || composition.len() != n * n * n || identities.len() != n {
            return Err(Error::MalformedTable(format!(
                "2-category tables have {} hom, {} composition and {} identity entries for {n} objects",
                homs.len(),
                composition.len(),
                identities.len()
            )));
        }
        if let Some(h) = homs.iter().find(|h| !same(h.base(), &base)) {
            return Err(Error::BaseMismatch(format!("hom `{}` is enriched over another base", h.name())));
        }
        Ok(V2Category {
            name: name.into(),
            base,
            objects,
            homs,
            composition,
            identities,
        })
    }

    /// Builds composition and identity functors from closures that receive
    /// their source and target categories.
    pub fn from_fns(
        name: impl Into<String>,
        base: Arc<KFoldStructure>,
        objects: Vec<String>,
        homs: Vec<Arc<EnrichedCategory>>,
        mut composition: impl FnMut(usize, usize, usize, Arc<EnrichedCategory>, Arc<EnrichedCategory>) -> Result<EnrichedFunctor>,
        mut identity: impl FnMut(usize, Arc<EnrichedCategory>, Arc<EnrichedCategory>) -> Result<EnrichedFunctor>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n {
            return Err(Error::MalformedTable(format!("{} hom entries for {n} objects", homs.len())));
        }
        let hom = |a: usize, b: usize| homs[a * n + b].clone();
        let unit = Arc::new(unit_category(&base));
        let mut comp = Vec::with_capacity(n * n * n);
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let source = Arc::new(tensor_enriched(&hom(v, w), &hom(u, v), 1)?);
                    comp.push(composition(u, v, w, source, hom(u, w))?);
                }
            }
        }
        let ids = (0..n).map(|u| identity(u, unit.clone(), hom(u, u))).collect::<Result<Vec<_>>>()?;
        V2Category::new(name, base, objects, homs, comp, ids)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<KFoldStructure> {
        &self.base
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, u: usize) -> &str {
        &self.objects[u]
    }

    pub fn hom(&self, u: usize, v: usize) -> &Arc<EnrichedCategory> {
        &self.homs[u * self.objects.len() + v]
    }

    pub fn comp(&self, u: usize, v: usize, w: usize) -> &EnrichedFunctor {
        let n = self.objects.len();
        &self.composition[(u * n + v) * n + w]
    }

    pub fn ident(&self, u: usize) -> &EnrichedFunctor {
        &self.identities[u]
    }

    pub fn with_comp(&self, u: usize, v: usize, w: usize, f: EnrichedFunctor) -> Self {
        let n = self.objects.len();
        let mut out = self.clone();
        out.composition[(u * n + v) * n + w] = f;
        out
    }
}

/// The unit `V`-2-category: one object whose hom is `ℐ`.
pub fn unit_v2category(v: &Arc<KFoldStructure>) -> Result<V2Category> {
    let unit = Arc::new(unit_category(v));
    V2Category::from_fns(
        "𝟙",
        v.clone(),
        vec!["0".into()],
        vec![unit],
        |_, _, _, source, target| unitor_between(source, target),
        |_, _, target| Ok(EnrichedFunctor::identity(target)),
    )
}

fn outcome_from(name: String, index: Vec<String>, witness: Option<Witness>, check: &mut CheckBuilder) {
    check.instance();
    if let Some(mut w) = witness {
        w.diagram = name;
        w.index = index.into_iter().chain(w.index).collect();
        check.fail(w);
    }
}

/// Every hom passes the enriched-category checks, composition and identity
/// functors are well typed and pass the functor checks, composition is
/// associative up to `α^(1)` and unital up to the unit relabelings, all as
/// equalities of enriched functors.
pub fn check_v2category(w: &V2Category, options: &CheckOptions) -> DiagramReport {
    check_v2category_labeled(w, options, None)
}

fn check_v2category_labeled(w: &V2Category, options: &CheckOptions, labels: Option<(&str, &str)>) -> DiagramReport {
    let started = Instant::now();
    let mut report = DiagramReport::new(format!("v2category({})", w.name()));
    let n = w.num_objects();
    let name = |u: usize| w.object_name(u).to_string();
    if w.base.k() < 2 {
        report.push(CheckOutcome::not_applicable("v2category", "composition needs ⊗^(1)_1 (k < 2)"));
        return report;
    }

    for u in 0..n {
        for v in 0..n {
            report.absorb(&format!("hom[{},{}]", name(u), name(v)), check_enriched_category(w.hom(u, v), options));
        }
    }

    let unit = Arc::new(unit_category(&w.base));
    let mut typing = CheckBuilder::new("functor-typing");
    let mut expect = |what: String, f: &EnrichedFunctor, source: &EnrichedCategory, target: &Arc<EnrichedCategory>| {
        typing.instance();
        if **f.source() != *source || !same(f.target(), target) {
            typing.fail(Witness {
                diagram: "functor-typing".into(),
                index: vec![what],
                left: format!("{} → {}", f.source().name(), f.target().name()),
                right: format!("{} → {}", source.name(), target.name()),
                note: None,
            });
            return false;
        }
        true
    };
    let mut sources_ok = true;
    for u in 0..n {
        for v in 0..n {
            for x in 0..n {
                let f = w.comp(u, v, x);
                match tensor_enriched(w.hom(v, x), w.hom(u, v), 1) {
                    Ok(source) => sources_ok &= expect(format!("M[{},{},{}]", name(u), name(v), name(x)), f, &source, w.hom(u, x)),
                    Err(err) => {
                        report.push(CheckOutcome::error("functor-typing", &err));
                        return report;
                    }
                }
            }
        }
        sources_ok &= expect(format!("j[{}]", name(u)), w.ident(u), &unit, w.hom(u, u));
    }
    report.push(typing.finish());

    for u in 0..n {
        for v in 0..n {
            for x in 0..n {
                let r = check_enriched_functor(w.comp(u, v, x), options);
                report.absorb(&format!("M[{},{},{}]", name(u), name(v), name(x)), r);
            }
        }
        report.absorb(&format!("j[{}]", name(u)), check_enriched_functor(w.ident(u), options));
    }
    if !sources_ok {
        report.set_elapsed(started.elapsed());
        return report;
    }

    match associativity(w) {
        Ok(out) => match labels {
            Some((assoc, _)) => report.push_counted(assoc, out),
            None => report.push(out),
        },
        Err(err) => report.push(CheckOutcome::error("associativity", &err)),
    }
    match unitality(w, &unit) {
        Ok(out) => match labels {
            Some((_, units)) => report.push_counted(units, out),
            None => report.push(out),
        },
        Err(err) => report.push(CheckOutcome::error("unit-laws", &err)),
    }
    report.set_elapsed(started.elapsed());
    report
}

/// `M_{uwx} ∘ (1 ⊗ M_{uvw}) ∘ α^(1) = M_{uvx} ∘ (M_{vwx} ⊗ 1)`.
fn associativity(w: &V2Category) -> Result<CheckOutcome> {
    let n = w.num_objects();
    let mut check = CheckBuilder::new("associativity");
    for u in 0..n {
        for v in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let (h3, h2, h1) = (w.hom(x, y), w.hom(v, x), w.hom(u, v));
                    let inner = Arc::new(tensor_enriched(h3, h2, 1)?);
                    let source = Arc::new(tensor_enriched(&inner, h1, 1)?);
                    let right_of = Arc::new(tensor_enriched(h2, h1, 1)?);
                    let target = Arc::new(tensor_enriched(h3, &right_of, 1)?);
                    let alpha = associator_between(h3, h2, h1, 1, source.clone(), target.clone())?;
                    let after_left = w.comp(u, x, y).source().clone();
                    let one_m = tensor_functors_between(
                        &EnrichedFunctor::identity(h3.clone()),
                        w.comp(u, v, x),
                        1,
                        target,
                        after_left,
                    )?;
                    let left = compose_enriched_functors(w.comp(u, x, y), &compose_enriched_functors(&one_m, &alpha)?)?;
                    let m_one = tensor_functors_between(
                        w.comp(v, x, y),
                        &EnrichedFunctor::identity(h1.clone()),
                        1,
                        source,
                        w.comp(u, v, y).source().clone(),
                    )?;
                    let right = compose_enriched_functors(w.comp(u, v, y), &m_one)?;
                    let index = [u, v, x, y].iter().map(|&o| w.object_name(o).to_string()).collect();
                    outcome_from("associativity".into(), index, functor_difference(&left, &right), &mut check);
                }
            }
        }
    }
    Ok(check.finish())
}

/// `M_{uvv} ∘ (j_v ⊗ 1) = λ` and `M_{uuv} ∘ (1 ⊗ j_u) = ρ`.
fn unitality(w: &V2Category, unit: &Arc<EnrichedCategory>) -> Result<CheckOutcome> {
    let n = w.num_objects();
    let mut check = CheckBuilder::new("unit-laws");
    for u in 0..n {
        for v in 0..n {
            let h = w.hom(u, v);
            let index = || vec![w.object_name(u).to_string(), w.object_name(v).to_string()];

            let source = Arc::new(tensor_enriched(unit, h, 1)?);
            let j_one = tensor_functors_between(
                w.ident(v),
                &EnrichedFunctor::identity(h.clone()),
                1,
                source.clone(),
                w.comp(u, v, v).source().clone(),
            )?;
            let left = compose_enriched_functors(w.comp(u, v, v), &j_one)?;
            let lambda = unitor_between(source, h.clone())?;
            outcome_from("unit-left".into(), index(), functor_difference(&left, &lambda), &mut check);

            let source = Arc::new(tensor_enriched(h, unit, 1)?);
            let one_j = tensor_functors_between(
                &EnrichedFunctor::identity(h.clone()),
                w.ident(u),
                1,
                source.clone(),
                w.comp(u, u, v).source().clone(),
            )?;
            let right = compose_enriched_functors(w.comp(u, u, v), &one_j)?;
            let rho = unitor_between(source, h.clone())?;
            outcome_from("unit-right".into(), index(), functor_difference(&right, &rho), &mut check);
        }
    }
    Ok(check.finish())
}

/// `𝒰 ⊗^(2)_i 𝒲`: objects are pairs, `hom((u,w),(u',w')) = 𝒰(u,u') ⊗^(1)_{i+1} 𝒲(w,w')`,
/// composition `(M_𝒰 ⊗^(1)_{i+1} M_𝒲) ∘ η^(1)1,i+1` and identities
/// `(j_u ⊗^(1)_{i+1} j_w) ∘ (ℐ ≅ ℐ ⊗ ℐ)`.
pub fn tensor_enriched_level2(a: &V2Category, b: &V2Category, i: usize) -> Result<V2Category> {
    if !same(a.base(), b.base()) {
        return Err(Error::BaseMismatch(format!("`{}` and `{}` are over different bases", a.name(), b.name())));
    }
    let base = a.base().clone();
    if i == 0 || i + 2 > base.k() {
        return Err(Error::IndexOutOfRange {
            index: i,
            valid: if base.k() < 3 { "none (k < 3)".into() } else { format!("1..={}", base.k() - 2) },
        });
    }
    let nb = b.num_objects();
    let n = a.num_objects() * nb;
    let split = |x: usize| (x / nb, x % nb);
    let objects = (0..n)
        .map(|x| format!("({},{})", a.object_name(x / nb), b.object_name(x % nb)))
        .collect();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let ((a0, b0), (a1, b1)) = (split(x), split(y));
            same_base(&[a.hom(a0, a1), b.hom(b0, b1)])?;
            homs.push(Arc::new(tensor_enriched(a.hom(a0, a1), b.hom(b0, b1), i + 1)?));
        }
    }
    let unit = Arc::new(unit_category(&base));
    let unit_square = Arc::new(tensor_enriched(&unit, &unit, i + 1)?);
    V2Category::from_fns(
        format!("({}⊗{}{})", a.name(), i, b.name()),
        base.clone(),
        objects,
        homs,
        |x, y, z, source, target| {
            let ((a0, b0), (a1, b1), (a2, b2)) = (split(x), split(y), split(z));
            let (ma, mb) = (a.comp(a0, a1, a2), b.comp(b0, b1, b2));
            let cats = [&**a.hom(a1, a2), &**b.hom(b1, b2), &**a.hom(a0, a1), &**b.hom(b0, b1)];
            let mid = Arc::new(tensor_enriched(ma.source(), mb.source(), i + 1)?);
            let swap = interchange_between(cats, 1, i + 1, source, mid.clone())?;
            let m = tensor_functors_between(ma, mb, i + 1, mid, target)?;
            compose_enriched_functors(&m, &swap)
        },
        |x, source, target| {
            let (a0, b0) = split(x);
            let diagonal = EnrichedFunctor::new(source, unit_square.clone(), vec![0], vec![base.id(base.unit())])?;
            let j = tensor_functors_between(a.ident(a0), b.ident(b0), i + 1, unit_square.clone(), target)?;
            compose_enriched_functors(&j, &diagonal)
        },
    )
}

/// Verifies a level-2 product: the second-level hom formula
/// `hom((u,w),(u',w'))((f,f'),(g,g')) = 𝒰(u,u')(f,g) ⊗_{i+2} 𝒲(w,w')(f',g')` on
/// every tuple, followed by the full 2-category checks.
pub fn check_level2_product(
    product: &V2Category,
    a: &V2Category,
    b: &V2Category,
    i: usize,
    options: &CheckOptions,
) -> DiagramReport {
    let started = Instant::now();
    let mut report = DiagramReport::new(format!("level2({})", product.name()));
    let v = product.base();
    let c = v.base();
    let nb = b.num_objects();
    let mut formula = CheckBuilder::new("second-level-hom");
    if product.num_objects() != a.num_objects() * nb {
        formula.fail(Witness {
            diagram: "second-level-hom".into(),
            index: Vec::new(),
            left: format!("{} objects", product.num_objects()),
            right: format!("{} objects", a.num_objects() * nb),
            note: None,
        });
    } else {
        for x in 0..product.num_objects() {
            for y in 0..product.num_objects() {
                let (ha, hb) = (a.hom(x / nb, y / nb), b.hom(x % nb, y % nb));
                let hp = product.hom(x, y);
                let inner = hb.num_objects();
                if hp.num_objects() != ha.num_objects() * inner {
                    formula.fail(Witness {
                        diagram: "second-level-hom".into(),
                        index: vec![product.object_name(x).into(), product.object_name(y).into()],
                        left: format!("{} objects", hp.num_objects()),
                        right: format!("{} objects", ha.num_objects() * inner),
                        note: None,
                    });
                    continue;
                }
                for f in 0..hp.num_objects() {
                    for g in 0..hp.num_objects() {
                        let got = hp.hom(f, g);
                        let want = v.ob(i + 2, ha.hom(f / inner, g / inner), hb.hom(f % inner, g % inner));
                        let legs = Ok((c.object_name(got).to_string(), c.object_name(want).to_string()));
                        let index = || {
                            vec![
                                product.object_name(x).to_string(),
                                product.object_name(y).to_string(),
                                hp.object_name(f).to_string(),
                                hp.object_name(g).to_string(),
                            ]
                        };
                        formula.compare(index, legs, got == want);
                    }
                }
            }
        }
    }
    report.push(formula.finish());
    let labels = (format!("V.internal-assoc(2,{})", i + 2), format!("V.internal-unit(2,{})", i + 2));
    report.absorb("", check_v2category_labeled(product, options, Some((&labels.0, &labels.1))));
    report.set_elapsed(started.elapsed());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn fixture_v2categories_pass() {
        let options = CheckOptions::default();
        for w in [corpus::meet_v2category(), corpus::parity_v2category(), corpus::arrow_v2category()] {
            let r = check_v2category(&w, &options);
            assert!(r.passed(), "{r}");
        }
        let v = Arc::new(corpus::sign_kfold(3));
        assert!(check_v2category(&unit_v2category(&v).unwrap(), &options).passed());
    }

    #[test]
    fn meet_squared_over_boolean_base() {
        let meet = corpus::meet_v2category();
        let product = tensor_enriched_level2(&meet, &meet, 1).unwrap();
        assert_eq!(product.num_objects(), 1);
        assert_eq!(product.hom(0, 0).num_objects(), 4);
        let r = check_level2_product(&product, &meet, &meet, 1, &CheckOptions::default());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn parity_and_arrow_over_sign_base() {
        let options = CheckOptions::default();
        let (parity, arrow) = (corpus::parity_v2category(), corpus::arrow_v2category());
        for (a, b) in [(&parity, &arrow), (&arrow, &parity), (&arrow, &arrow)] {
            let product = tensor_enriched_level2(a, b, 1).unwrap();
            let r = check_level2_product(&product, a, b, 1, &options);
            assert!(r.passed(), "{r}");
            assert!(r.check("second-level-hom").unwrap().instances > 0);
            assert!(r.coverage.keys().all(|label| label.starts_with("V.") && label.contains("(2,3)")));
        }
    }

    #[test]
    fn unit_absorbs_on_hom_tables() {
        let arrow = corpus::arrow_v2category();
        let unit = unit_v2category(arrow.base()).unwrap();
        let product = tensor_enriched_level2(&unit, &arrow, 1).unwrap();
        for u in 0..2 {
            for v in 0..2 {
                assert_eq!(product.hom(u, v).hom_table(), arrow.hom(u, v).hom_table());
                assert_eq!(product.hom(u, v).composition_table(), arrow.hom(u, v).composition_table());
            }
        }
    }

    #[test]
    fn level_two_needs_room_for_two_shifts() {
        let parity = corpus::parity_v2category();
        assert!(matches!(tensor_enriched_level2(&parity, &parity, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn broken_composition_functor_fails_associativity_or_units() {
        let parity = corpus::parity_v2category();
        let m = parity.comp(0, 0, 0);
        let g0 = parity.base().base().morphism("g0").unwrap();
        let broken = parity.with_comp(0, 0, 0, m.with_component(1, 1, g0));
        assert!(!check_v2category(&broken, &CheckOptions::default()).passed());
    }
}

use std::sync::Arc;

use super::{product_category, FinCategory, Mor, Ob};
use crate::error::{Error, Result};
use crate::report::{CheckBuilder, DiagramReport, Witness};

/// Anything that acts functorially on tuples of objects and morphisms of a
/// single source category (`arity` copies of it).
pub trait Functorial {
    fn arity(&self) -> usize;
    fn source(&self) -> &FinCategory;
    fn target(&self) -> &FinCategory;
    fn map_objects(&self, args: &[Ob]) -> Result<Ob>;
    fn map_morphisms(&self, args: &[Mor]) -> Result<Mor>;
}

/// A functor between finite categories given by its two tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    object_map: Vec<Ob>,
    morphism_map: Vec<Mor>,
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<Ob>,
        morphism_map: Vec<Mor>,
    ) -> Result<Self> {
        if object_map.len() != source.num_objects() {
            return Err(Error::MalformedMap(format!(
                "object map has {} entries, source has {} objects",
                object_map.len(),
                source.num_objects()
            )));
        }
        if morphism_map.len() != source.num_morphisms() {
            return Err(Error::MalformedMap(format!(
                "morphism map has {} entries, source has {} morphisms",
                morphism_map.len(),
                source.num_morphisms()
            )));
        }
        if object_map.iter().any(|a| a.0 >= target.num_objects()) {
            return Err(Error::MalformedMap("object map leaves the target".into()));
        }
        if morphism_map.iter().any(|f| f.0 >= target.num_morphisms()) {
            return Err(Error::MalformedMap("morphism map leaves the target".into()));
        }
        Ok(FinFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let object_map = c.objects().collect();
        let morphism_map = c.morphisms().collect();
        FinFunctor {
            source: c.clone(),
            target: c,
            object_map,
            morphism_map,
        }
    }

    /// The two projections out of `product_category(c, d)`.
    pub fn projections(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> (FinFunctor, FinFunctor) {
        let prod = Arc::new(product_category(c, d));
        let (dn, dm) = (d.num_objects(), d.num_morphisms());
        let first = FinFunctor {
            source: prod.clone(),
            target: c.clone(),
            object_map: prod.objects().map(|p| Ob(p.0 / dn.max(1))).collect(),
            morphism_map: prod.morphisms().map(|p| Mor(p.0 / dm.max(1))).collect(),
        };
        let second = FinFunctor {
            source: prod.clone(),
            target: d.clone(),
            object_map: prod.objects().map(|p| Ob(p.0 % dn.max(1))).collect(),
            morphism_map: prod.morphisms().map(|p| Mor(p.0 % dm.max(1))).collect(),
        };
        (first, second)
    }

    pub fn source_category(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target_category(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn map_object(&self, a: Ob) -> Ob {
        self.object_map[a.0]
    }

    pub fn map_morphism(&self, f: Mor) -> Mor {
        self.morphism_map[f.0]
    }

    pub fn with_morphism_image(&self, f: Mor, image: Mor) -> Result<Self> {
        if image.0 >= self.target.num_morphisms() || f.0 >= self.source.num_morphisms() {
            return Err(Error::MalformedMap("morphism out of range".into()));
        }
        let mut out = self.clone();
        out.morphism_map[f.0] = image;
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if *first.target != *self.source {
            return Err(Error::StructureMismatch("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            object_map: first.object_map.iter().map(|&a| self.map_object(a)).collect(),
            morphism_map: first.morphism_map.iter().map(|&f| self.map_morphism(f)).collect(),
        })
    }
}

impl Functorial for FinFunctor {
    fn arity(&self) -> usize {
        1
    }

    fn source(&self) -> &FinCategory {
        &self.source
    }

    fn target(&self) -> &FinCategory {
        &self.target
    }

    fn map_objects(&self, args: &[Ob]) -> Result<Ob> {
        match args {
            [a] => Ok(self.map_object(*a)),
            _ => Err(Error::ArityMismatch { expected: 1, found: args.len() }),
        }
    }

    fn map_morphisms(&self, args: &[Mor]) -> Result<Mor> {
        match args {
            [f] => Ok(self.map_morphism(*f)),
            _ => Err(Error::ArityMismatch { expected: 1, found: args.len() }),
        }
    }
}

/// Typing, identity preservation and composition preservation of a functor.
pub fn check_functor_laws(functor: &FinFunctor) -> DiagramReport {
    let started = std::time::Instant::now();
    let (c, d) = (functor.source(), functor.target());
    let mut report = DiagramReport::new("functor-laws");

    let mut typing = CheckBuilder::new("typing");
    for f in c.morphisms() {
        typing.instance();
        let ff = functor.map_morphism(f);
        let (want_dom, want_cod) = (functor.map_object(c.dom(f)), functor.map_object(c.cod(f)));
        if d.dom(ff) != want_dom || d.cod(ff) != want_cod {
            typing.fail(Witness {
                diagram: "typing".into(),
                index: vec![c.morphism_name(f).to_string()],
                left: d.morphism_name(ff).to_string(),
                right: format!("{} → {}", d.object_name(want_dom), d.object_name(want_cod)),
                note: Some(format!(
                    "image `{}` has type {} → {}, expected {} → {}",
                    d.morphism_name(ff),
                    d.object_name(d.dom(ff)),
                    d.object_name(d.cod(ff)),
                    d.object_name(want_dom),
                    d.object_name(want_cod)
                )),
            });
        }
    }
    report.push(typing.finish());

    let mut ids = CheckBuilder::new("identities");
    for a in c.objects() {
        let image = functor.map_morphism(c.identity(a));
        let expected = d.identity(functor.map_object(a));
        ids.compare(
            || vec![c.object_name(a).to_string()],
            Ok((d.morphism_name(image).to_string(), d.morphism_name(expected).to_string())),
            image == expected,
        );
    }
    report.push(ids.finish());

    let mut comp = CheckBuilder::new("composition");
    for (g, f, gf) in c.composition_entries() {
        let left = functor.map_morphism(gf);
        let right = d.compose(functor.map_morphism(g), functor.map_morphism(f));
        comp.compare(
            || vec![c.morphism_name(g).to_string(), c.morphism_name(f).to_string()],
            right.clone().map(|r| (d.morphism_name(left).to_string(), d.morphism_name(r).to_string())),
            right == Ok(left),
        );
    }
    report.push(comp.finish());
    report.set_elapsed(started.elapsed());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_functor_passes() {
        let s = Arc::new(corpus::sign_category());
        assert!(check_functor_laws(&FinFunctor::identity(s)).passed());
    }

    #[test]
    fn projections_pass() {
        let b = Arc::new(corpus::boolean_poset_category());
        let s = Arc::new(corpus::sign_category());
        let (p, q) = FinFunctor::projections(&b, &s);
        assert!(check_functor_laws(&p).passed());
        assert!(check_functor_laws(&q).passed());
    }

    #[test]
    fn collapsing_g0_on_its_own_is_a_functor() {
        // e0,g0 ↦ e0 and identity on End(X) is a homomorphism Z/2 → 1 ⊕ Z/2.
        let s = Arc::new(corpus::sign_category());
        let f = FinFunctor::identity(s.clone())
            .with_morphism_image(s.morphism("g0").unwrap(), s.morphism("e0").unwrap())
            .unwrap();
        assert!(check_functor_laws(&f).passed());
    }

    #[test]
    fn malformed_map_is_rejected() {
        let s = Arc::new(corpus::sign_category());
        let err = FinFunctor::new(s.clone(), s, vec![Ob(0)], vec![]).unwrap_err();
        assert!(matches!(err, Error::MalformedMap(_)));
    }
}

//! Categories, functors and natural transformations enriched over
//! `(V, ⊗_1, α^1, I)`.
//!
//! Objects of an enriched category are plain indices. Hom-objects are
//! objects of the base, composition `M_{abc}: hom(b,c) ⊗_1 hom(a,b) → hom(a,c)`
//! and identities `j_a: I → hom(a,a)` are morphisms of the base.

mod cells;
mod check;

use std::sync::Arc;

pub use cells::{
    compose_enriched_functors, enumerate_transformations, functor_difference, functors_equal, identity_transformation,
    transformations_equal, vertical_compose, whisker_left, whisker_right,
};
pub use check::{check_enriched_category, check_enriched_functor, check_v_natural};

use crate::error::{Error, Result};
use crate::fincat::{Mor, Ob};
use crate::monoidal::KFoldStructure;

pub(crate) fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedCategory {
    name: String,
    base: Arc<KFoldStructure>,
    objects: Vec<String>,
    hom: Vec<Ob>,
    /// `composition[(a * n + b) * n + c]` is `M_{abc}`.
    composition: Vec<Mor>,
    identities: Vec<Mor>,
}

impl EnrichedCategory {
    pub fn new(
        name: impl Into<String>,
        base: Arc<KFoldStructure>,
        objects: Vec<String>,
        hom: Vec<Ob>,
        composition: Vec<Mor>,
        identities: Vec<Mor>,
    ) -> Result<Self> {
        let n = objects.len();
        let (vn, vm) = (base.base().num_objects(), base.base().num_morphisms());
        if hom.len() != n * n || composition.len() != n * n * n || identities.len() != n {
            return Err(Error::MalformedTable(format!(
                "enriched tables have {} hom, {} composition and {} identity entries for {n} objects",
                hom.len(),
                composition.len(),
                identities.len()
            )));
        }
        if let Some(pos) = hom.iter().position(|h| h.0 >= vn) {
            return Err(Error::DanglingHom {
                from: objects[pos / n].clone(),
                to: objects[pos % n].clone(),
            });
        }
        if composition.iter().chain(&identities).any(|f| f.0 >= vm) {
            return Err(Error::MalformedTable("enriched structure refers to an unknown morphism of the base".into()));
        }
        Ok(EnrichedCategory {
            name: name.into(),
            base,
            objects,
            hom,
            composition,
            identities,
        })
    }

    /// Builds the tables from closures over object indices.
    pub fn from_fns(
        name: impl Into<String>,
        base: Arc<KFoldStructure>,
        objects: Vec<String>,
        hom: impl Fn(usize, usize) -> Ob,
        mut composition: impl FnMut(usize, usize, usize) -> Result<Mor>,
        mut identity: impl FnMut(usize) -> Result<Mor>,
    ) -> Result<Self> {
        let n = objects.len();
        let homs = (0..n * n).map(|p| hom(p / n, p % n)).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    comp.push(composition(a, b, c)?);
                }
            }
        }
        let ids = (0..n).map(&mut identity).collect::<Result<Vec<_>>>()?;
        EnrichedCategory::new(name, base, objects, homs, comp, ids)
    }

    /// An enriched category over a thin base: `M` and `j` are the unique
    /// morphisms of the right type, which must exist.
    pub fn thin(
        name: impl Into<String>,
        base: Arc<KFoldStructure>,
        objects: Vec<String>,
        hom: impl Fn(usize, usize) -> Ob,
    ) -> Result<Self> {
        let v = base.clone();
        let c = v.base();
        let unique = |a: Ob, b: Ob| {
            c.unique_morphism(a, b).ok_or_else(|| {
                Error::MalformedTable(format!("no unique morphism {} → {} in the base", c.object_name(a), c.object_name(b)))
            })
        };
        EnrichedCategory::from_fns(
            name,
            base,
            objects,
            &hom,
            |a, b, d| unique(v.ob(1, hom(b, d), hom(a, b)), hom(a, d)),
            |a| unique(v.unit(), hom(a, a)),
        )
    }

    /// The empty enriched category.
    pub fn empty(name: impl Into<String>, base: Arc<KFoldStructure>) -> Self {
        EnrichedCategory::new(name, base, Vec::new(), Vec::new(), Vec::new(), Vec::new()).expect("empty tables are well shaped")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn base(&self) -> &Arc<KFoldStructure> {
        &self.base
    }

    /// The same tables over another base, revalidated.
    pub fn rebased(&self, base: Arc<KFoldStructure>) -> Result<Self> {
        EnrichedCategory::new(
            self.name.clone(),
            base,
            self.objects.clone(),
            self.hom.clone(),
            self.composition.clone(),
            self.identities.clone(),
        )
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, a: usize, b: usize) -> Ob {
        self.hom[a * self.objects.len() + b]
    }

    /// `M_{abc}: hom(b,c) ⊗_1 hom(a,b) → hom(a,c)`.
    pub fn comp(&self, a: usize, b: usize, c: usize) -> Mor {
        let n = self.objects.len();
        self.composition[(a * n + b) * n + c]
    }

    /// `j_a: I → hom(a,a)`.
    pub fn ident(&self, a: usize) -> Mor {
        self.identities[a]
    }

    pub fn hom_table(&self) -> &[Ob] {
        &self.hom
    }

    pub fn composition_table(&self) -> &[Mor] {
        &self.composition
    }

    pub fn identity_table(&self) -> &[Mor] {
        &self.identities
    }

    pub fn with_comp(&self, a: usize, b: usize, c: usize, f: Mor) -> Self {
        let n = self.objects.len();
        let mut out = self.clone();
        out.composition[(a * n + b) * n + c] = f;
        out
    }

    pub fn with_ident(&self, a: usize, f: Mor) -> Self {
        let mut out = self.clone();
        out.identities[a] = f;
        out
    }

    /// Hom-objects that occur in the category, sorted and deduplicated.
    pub fn hom_objects(&self) -> Vec<Ob> {
        let mut out = self.hom.clone();
        out.sort();
        out.dedup();
        out
    }
}

/// A V-functor: an object map and hom components `T_{ab}: 𝒜(a,b) → ℬ(Ta,Tb)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedFunctor {
    source: Arc<EnrichedCategory>,
    target: Arc<EnrichedCategory>,
    object_map: Vec<usize>,
    components: Vec<Mor>,
}

impl EnrichedFunctor {
    pub fn new(
        source: Arc<EnrichedCategory>,
        target: Arc<EnrichedCategory>,
        object_map: Vec<usize>,
        components: Vec<Mor>,
    ) -> Result<Self> {
        if !same(source.base(), target.base()) {
            return Err(Error::StructureMismatch(format!(
                "`{}` and `{}` are enriched over different bases",
                source.name(),
                target.name()
            )));
        }
        let n = source.num_objects();
        if object_map.len() != n || components.len() != n * n {
            return Err(Error::MalformedMap(format!(
                "functor tables have {} object and {} component entries for {n} objects",
                object_map.len(),
                components.len()
            )));
        }
        if object_map.iter().any(|&a| a >= target.num_objects()) {
            return Err(Error::MalformedMap("object map leaves the target".into()));
        }
        let vm = source.base().base().num_morphisms();
        if components.iter().any(|f| f.0 >= vm) {
            return Err(Error::MalformedMap("component is not a morphism of the base".into()));
        }
        Ok(EnrichedFunctor {
            source,
            target,
            object_map,
            components,
        })
    }

    pub fn from_fn(
        source: Arc<EnrichedCategory>,
        target: Arc<EnrichedCategory>,
        object_map: Vec<usize>,
        mut component: impl FnMut(usize, usize) -> Result<Mor>,
    ) -> Result<Self> {
        let n = source.num_objects();
        let components = (0..n * n).map(|p| component(p / n, p % n)).collect::<Result<Vec<_>>>()?;
        EnrichedFunctor::new(source, target, object_map, components)
    }

    pub fn identity(c: Arc<EnrichedCategory>) -> Self {
        let n = c.num_objects();
        let v = c.base().clone();
        let components = (0..n * n).map(|p| v.id(c.hom(p / n, p % n))).collect();
        EnrichedFunctor {
            source: c.clone(),
            target: c,
            object_map: (0..n).collect(),
            components,
        }
    }

    pub fn source(&self) -> &Arc<EnrichedCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<EnrichedCategory> {
        &self.target
    }

    pub fn map_object(&self, a: usize) -> usize {
        self.object_map[a]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    /// `T_{ab}`.
    pub fn component(&self, a: usize, b: usize) -> Mor {
        self.components[a * self.source.num_objects() + b]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn with_component(&self, a: usize, b: usize, f: Mor) -> Self {
        let mut out = self.clone();
        let n = out.source.num_objects();
        out.components[a * n + b] = f;
        out
    }

    pub fn with_object_image(&self, a: usize, image: usize) -> Self {
        let mut out = self.clone();
        out.object_map[a] = image;
        out
    }
}

/// A V-natural transformation `T ⇒ S` with components `α_a: I → ℬ(Ta, Sa)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedNatTransf {
    source: EnrichedFunctor,
    target: EnrichedFunctor,
    components: Vec<Mor>,
}

impl EnrichedNatTransf {
    pub fn new(source: EnrichedFunctor, target: EnrichedFunctor, components: Vec<Mor>) -> Result<Self> {
        if !same(&source.source, &target.source) || !same(&source.target, &target.target) {
            return Err(Error::StructureMismatch("functors are not parallel".into()));
        }
        if components.len() != source.source.num_objects() {
            return Err(Error::MalformedMap(format!(
                "{} components for {} objects",
                components.len(),
                source.source.num_objects()
            )));
        }
        Ok(EnrichedNatTransf {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &EnrichedFunctor {
        &self.source
    }

    pub fn target(&self) -> &EnrichedFunctor {
        &self.target
    }

    pub fn component(&self, a: usize) -> Mor {
        self.components[a]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn with_component(&self, a: usize, f: Mor) -> Self {
        let mut out = self.clone();
        out.components[a] = f;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn dangling_hom_is_rejected() {
        let v = Arc::new(corpus::sign_kfold(2));
        let err = EnrichedCategory::new("bad", v, vec!["p".into()], vec![Ob(7)], vec![Mor(0)], vec![Mor(0)]).unwrap_err();
        assert!(matches!(err, Error::DanglingHom { .. }));
    }

    #[test]
    fn hom_objects_are_collected() {
        let t = corpus::twisted_category();
        let x = t.base().base().object("X").unwrap();
        assert_eq!(t.hom_objects(), vec![t.base().unit(), x]);
    }
}

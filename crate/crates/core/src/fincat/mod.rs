//! Finite categories given by explicit composition tables.
//!
//! Every diagram in the crate is evaluated by table lookup here; two
//! composites are equal exactly when they resolve to the same morphism id.

mod check;
mod functor;
mod naturality;

use std::fmt;

pub use check::check_category_laws;
pub use functor::{check_functor_laws, FinFunctor, Functorial};
pub use naturality::{check_naturality, ExprContext, ExprFunctor, NatFamily, ObExpr, TensorTables};

use crate::error::{Error, Result};

/// Object id: index into [`FinCategory::objects`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ob(pub usize);

/// Morphism id: index into [`FinCategory::morphisms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismRecord {
    pub name: String,
    pub dom: Ob,
    pub cod: Ob,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    identities: Vec<Mor>,
    /// `composition[g * m + f]` is `g ∘ f`, present exactly on composable pairs.
    composition: Vec<Option<Mor>>,
    /// Morphisms grouped by (dom, cod), in id order.
    homs: Vec<Vec<Mor>>,
}

impl FinCategory {
    /// Builds a category from raw tables.
    ///
    /// Ids must be in range and the composition table must be defined on
    /// exactly the composable pairs. Typing of composites and the category
    /// laws are not validated here; see [`check_category_laws`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identities: Vec<Mor>,
        composites: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        for rec in &morphisms {
            if rec.dom.0 >= n || rec.cod.0 >= n {
                return Err(Error::MalformedTable(format!(
                    "morphism `{}` has an endpoint outside the object set",
                    rec.name
                )));
            }
        }
        if identities.len() != n {
            return Err(Error::MalformedTable(format!(
                "identity table has {} entries for {n} objects",
                identities.len()
            )));
        }
        if let Some(bad) = identities.iter().find(|id| id.0 >= m) {
            return Err(Error::MalformedTable(format!("identity refers to unknown morphism #{}", bad.0)));
        }
        let mut composition = vec![None; m * m];
        for (g, f, h) in composites {
            for x in [g, f, h] {
                if x.0 >= m {
                    return Err(Error::MalformedTable(format!("composition refers to unknown morphism #{}", x.0)));
                }
            }
            if morphisms[f.0].cod != morphisms[g.0].dom {
                return Err(Error::MalformedTable(format!(
                    "composite defined for non-composable pair ({}, {})",
                    morphisms[g.0].name, morphisms[f.0].name
                )));
            }
            composition[g.0 * m + f.0] = Some(h);
        }
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].cod == morphisms[g].dom && composition[g * m + f].is_none() {
                    return Err(Error::MalformedTable(format!(
                        "composite of composable pair ({}, {}) is missing",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, rec) in morphisms.iter().enumerate() {
            homs[rec.dom.0 * n + rec.cod.0].push(Mor(i));
        }
        Ok(FinCategory {
            objects,
            morphisms,
            identities,
            composition,
            homs,
        })
    }

    pub fn builder() -> CategoryBuilder {
        CategoryBuilder::default()
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        FinCategory::new(Vec::new(), Vec::new(), Vec::new(), []).expect("empty category is well formed")
    }

    /// One object `*` with only its identity.
    pub fn terminal() -> Self {
        FinCategory::builder()
            .object("*")
            .identity("*", "1")
            .build()
            .expect("terminal category is well formed")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Ob> + '_ {
        (0..self.objects.len()).map(Ob)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn object_name(&self, a: Ob) -> &str {
        &self.objects[a.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_name(&self, f: Mor) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn record(&self, f: Mor) -> &MorphismRecord {
        &self.morphisms[f.0]
    }

    pub fn object(&self, name: &str) -> Result<Ob> {
        self.objects
            .iter()
            .position(|o| o == name)
            .map(Ob)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<Mor> {
        self.morphisms
            .iter()
            .position(|r| r.name == name)
            .map(Mor)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn dom(&self, f: Mor) -> Ob {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: Mor) -> Ob {
        self.morphisms[f.0].cod
    }

    pub fn identity(&self, a: Ob) -> Mor {
        self.identities[a.0]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities.contains(&f)
    }

    pub fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    fn check_mor(&self, f: Mor) -> Result<()> {
        if f.0 < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::UnknownMorphism(format!("#{}", f.0)))
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        self.check_mor(g)?;
        self.check_mor(f)?;
        let m = self.morphisms.len();
        self.composition[g.0 * m + f.0].ok_or_else(|| Error::NonComposable {
            g: self.morphism_name(g).to_string(),
            f: self.morphism_name(f).to_string(),
            cod_f: self.object_name(self.cod(f)).to_string(),
            dom_g: self.object_name(self.dom(g)).to_string(),
        })
    }

    /// Composes a path given in diagrammatic order: `path(&[f, g, h]) = h ∘ g ∘ f`.
    pub fn path(&self, steps: &[Mor]) -> Result<Mor> {
        let (first, rest) = steps
            .split_first()
            .ok_or_else(|| Error::MalformedTable("empty path".into()))?;
        rest.iter().try_fold(*first, |acc, &next| self.compose(next, acc))
    }

    /// The raw table entry for a pair, if composable.
    pub fn composite_entry(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.composition.get(g.0 * self.morphisms.len() + f.0).copied().flatten()
    }

    /// A two-sided inverse of `f`, if the table contains one.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.composite_entry(g, f) == Some(self.identity(a)) && self.composite_entry(f, g) == Some(self.identity(b))
        })
    }

    /// The unique morphism `a → b`, if the hom-set is a singleton.
    pub fn unique_morphism(&self, a: Ob, b: Ob) -> Option<Mor> {
        match self.hom(a, b) {
            [f] => Some(*f),
            _ => None,
        }
    }

    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// Copy of the category with one composition entry replaced.
    pub fn with_composite(&self, g: Mor, f: Mor, result: Mor) -> Result<Self> {
        self.check_mor(result)?;
        self.compose(g, f)?;
        let mut out = self.clone();
        let m = out.morphisms.len();
        out.composition[g.0 * m + f.0] = Some(result);
        Ok(out)
    }

    /// Copy of the category with one identity entry replaced.
    pub fn with_identity(&self, a: Ob, f: Mor) -> Result<Self> {
        self.check_mor(f)?;
        let mut out = self.clone();
        out.identities[a.0] = f;
        Ok(out)
    }

    /// All composition entries `(g, f, g∘f)` in canonical order.
    pub fn composition_entries(&self) -> impl Iterator<Item = (Mor, Mor, Mor)> + '_ {
        let m = self.morphisms.len();
        self.composition
            .iter()
            .enumerate()
            .filter_map(move |(idx, h)| h.map(|h| (Mor(idx / m), Mor(idx % m), h)))
    }

    /// Full subcategory on the given objects (kept in their original order).
    ///
    /// Returns the subcategory together with the object and morphism
    /// embeddings into `self`.
    pub fn full_subcategory(&self, keep: &[Ob]) -> Result<(FinCategory, Vec<Ob>, Vec<Mor>)> {
        let mut keep: Vec<Ob> = keep.to_vec();
        keep.sort();
        keep.dedup();
        let new_ob = |a: Ob| keep.iter().position(|&k| k == a).map(Ob);
        let kept_mors: Vec<Mor> = self
            .morphisms()
            .filter(|&f| new_ob(self.dom(f)).is_some() && new_ob(self.cod(f)).is_some())
            .collect();
        let new_mor = |f: Mor| kept_mors.iter().position(|&k| k == f).map(Mor);
        let objects = keep.iter().map(|&a| self.objects[a.0].clone()).collect();
        let morphisms = kept_mors
            .iter()
            .map(|&f| MorphismRecord {
                name: self.morphisms[f.0].name.clone(),
                dom: new_ob(self.dom(f)).expect("kept"),
                cod: new_ob(self.cod(f)).expect("kept"),
            })
            .collect();
        let identities = keep
            .iter()
            .map(|&a| new_mor(self.identity(a)).ok_or_else(|| Error::MalformedTable("identity leaves subcategory".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut composites = Vec::new();
        for (gi, &g) in kept_mors.iter().enumerate() {
            for (fi, &f) in kept_mors.iter().enumerate() {
                if let Some(h) = self.composite_entry(g, f) {
                    let h = new_mor(h).ok_or_else(|| Error::MalformedTable("composite leaves subcategory".into()))?;
                    composites.push((Mor(gi), Mor(fi), h));
                }
            }
        }
        let sub = FinCategory::new(objects, morphisms, identities, composites)?;
        Ok((sub, keep, kept_mors))
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

/// Cartesian product: objects and morphisms are pairs, composed componentwise.
///
/// Pair `(x, y)` has index `x * |D| + y` for both objects and morphisms.
pub fn product_category(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (cn, dn) = (c.num_objects(), d.num_objects());
    let (cm, dm) = (c.num_morphisms(), d.num_morphisms());
    let mut objects = Vec::with_capacity(cn * dn);
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({},{})", c.object_name(a), d.object_name(b)));
        }
    }
    let mut morphisms = Vec::with_capacity(cm * dm);
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(MorphismRecord {
                name: format!("({},{})", c.morphism_name(f), d.morphism_name(g)),
                dom: Ob(c.dom(f).0 * dn + d.dom(g).0),
                cod: Ob(c.cod(f).0 * dn + d.cod(g).0),
            });
        }
    }
    let identities = c
        .objects()
        .flat_map(|a| d.objects().map(move |b| (a, b)))
        .map(|(a, b)| Mor(c.identity(a).0 * dm + d.identity(b).0))
        .collect();
    let mut composites = Vec::new();
    for (g1, f1, h1) in c.composition_entries() {
        for (g2, f2, h2) in d.composition_entries() {
            composites.push((Mor(g1.0 * dm + g2.0), Mor(f1.0 * dm + f2.0), Mor(h1.0 * dm + h2.0)));
        }
    }
    FinCategory::new(objects, morphisms, identities, composites).expect("product of well-formed tables is well formed")
}

/// Builds a category by name.
#[derive(Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.morphisms.push((name.into(), dom.into(), cod.into()));
        self
    }

    /// Declares `name` as the identity of `object` (adding the morphism).
    pub fn identity(mut self, object: &str, name: &str) -> Self {
        self.morphisms.push((name.into(), object.into(), object.into()));
        self.identities.push((object.into(), name.into()));
        self
    }

    /// Records `g ∘ f = h`.
    pub fn compose(mut self, g: &str, f: &str, h: &str) -> Self {
        self.composites.push((g.into(), f.into(), h.into()));
        self
    }

    /// Fills in every composite involving an identity.
    fn with_unit_composites(&self, morphisms: &[MorphismRecord], identities: &[Mor]) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for (i, rec) in morphisms.iter().enumerate() {
            let f = Mor(i);
            out.push((identities[rec.cod.0], f, f));
            out.push((f, identities[rec.dom.0], f));
        }
        out
    }

    /// Builds the category. Composites with identities are implied and may
    /// be omitted; explicit entries override them.
    pub fn build(self) -> Result<FinCategory> {
        let ob = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .map(Ob)
                .ok_or_else(|| Error::UnknownObject(name.to_string()))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|(name, d, c)| {
                Ok(MorphismRecord {
                    name: name.clone(),
                    dom: ob(d)?,
                    cod: ob(c)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mor = |name: &str| {
            morphisms
                .iter()
                .position(|r| r.name == name)
                .map(Mor)
                .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
        };
        let mut identities = vec![None; self.objects.len()];
        for (o, f) in &self.identities {
            identities[ob(o)?.0] = Some(mor(f)?);
        }
        let identities = identities
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| Error::MalformedTable(format!("object `{}` has no identity", self.objects[i]))))
            .collect::<Result<Vec<_>>>()?;
        let mut composites = self.with_unit_composites(&morphisms, &identities);
        for (g, f, h) in &self.composites {
            composites.push((mor(g)?, mor(f)?, mor(h)?));
        }
        FinCategory::new(self.objects.clone(), morphisms, identities, composites)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_law_lookup() {
        let b = corpus::boolean_poset_category();
        let m = b.morphism("m").unwrap();
        let id1 = b.morphism("id1").unwrap();
        assert_eq!(b.compose(id1, m).unwrap(), m);
    }

    #[test]
    fn sign_group_multiplication() {
        let s = corpus::sign_category();
        let g0 = s.morphism("g0").unwrap();
        assert_eq!(s.compose(g0, g0).unwrap(), s.morphism("e0").unwrap());
    }

    #[test]
    fn domain_mismatch_is_rejected() {
        let b = corpus::boolean_poset_category();
        let m = b.morphism("m").unwrap();
        let id1 = b.morphism("id1").unwrap();
        assert!(matches!(b.compose(m, id1), Err(Error::NonComposable { .. })));
        assert!(matches!(b.compose(Mor(99), m), Err(Error::UnknownMorphism(_))));
    }

    #[test]
    fn product_counts() {
        let b = corpus::boolean_poset_category();
        let bb = product_category(&b, &b);
        assert_eq!(bb.num_objects(), 4);
        assert_eq!(bb.num_morphisms(), 9);
        assert!(check_category_laws(&bb).passed());
    }

    #[test]
    fn product_with_terminal_matches_shape() {
        let s = corpus::sign_category();
        let ts = product_category(&FinCategory::terminal(), &s);
        assert_eq!(ts.num_objects(), s.num_objects());
        assert_eq!(ts.num_morphisms(), s.num_morphisms());
        for f in s.morphisms() {
            for g in s.morphisms() {
                assert_eq!(
                    ts.composite_entry(g, f).map(|h| h.0),
                    s.composite_entry(g, f).map(|h| h.0)
                );
            }
        }
    }

    #[test]
    fn product_of_sign_has_empty_cross_hom() {
        let s = corpus::sign_category();
        let ss = product_category(&s, &s);
        let ii = ss.object("(I,I)").unwrap();
        let xx = ss.object("(X,X)").unwrap();
        assert!(ss.hom(ii, xx).is_empty());
    }

    #[test]
    fn missing_composite_is_malformed() {
        let err = FinCategory::new(
            vec!["A".into()],
            vec![
                MorphismRecord { name: "1".into(), dom: Ob(0), cod: Ob(0) },
                MorphismRecord { name: "f".into(), dom: Ob(0), cod: Ob(0) },
            ],
            vec![Mor(0)],
            [(Mor(0), Mor(0), Mor(0))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedTable(_)));
    }

    #[test]
    fn inverse_lookup() {
        let s = corpus::sign_category();
        let g1 = s.morphism("g1").unwrap();
        assert_eq!(s.inverse(g1), Some(g1));
        let b = corpus::boolean_poset_category();
        assert_eq!(b.inverse(b.morphism("m").unwrap()), None);
    }

    #[test]
    fn full_subcategory_on_unit() {
        let s = corpus::sign_category();
        let (sub, obs, mors) = s.full_subcategory(&[s.object("I").unwrap()]).unwrap();
        assert_eq!(sub.num_objects(), 1);
        assert_eq!(sub.num_morphisms(), 2);
        assert_eq!(obs, vec![Ob(0)]);
        assert_eq!(mors.len(), 2);
        assert!(check_category_laws(&sub).passed());
    }
}

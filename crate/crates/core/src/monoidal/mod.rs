//! k-fold monoidal structure on a finite category.
//!
//! Tensor indices are 1-based throughout, matching the usual notation
//! `⊗_1 … ⊗_k` and `η^{ij}` with `i < j`.

mod axioms;
mod functor;
mod symmetric;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use axioms::{
    check_giant_hexagon, check_interchange_assoc, check_interchange_units, check_kfold, check_pentagon,
    check_strict_units, collapsed_pairs, AssocMode, AxiomDomain,
};
pub(crate) use axioms::{
    external_unit_outcome, giant_hexagon_outcome, interchange_assoc_outcome, internal_unit_outcome, pentagon_outcome,
};
pub use functor::{check_monoidal_functor, check_monoidal_nat, compose_monoidal_functors, MonoidalFunctorData};
pub use symmetric::{braiding_exprs, check_symmetric, from_symmetric, SymmetricStructure};

use crate::error::{Error, Result};
use crate::fincat::{product_category, FinCategory, FinFunctor, Mor, NatFamily, Ob, ObExpr, TensorTables};

/// Object and morphism tables of one tensor functor `C × C → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorTable {
    objects: usize,
    morphisms: usize,
    object_table: Vec<Ob>,
    morphism_table: Vec<Mor>,
}

impl TensorTable {
    pub fn new(c: &FinCategory, object_table: Vec<Ob>, morphism_table: Vec<Mor>) -> Result<Self> {
        let (n, m) = (c.num_objects(), c.num_morphisms());
        if object_table.len() != n * n || morphism_table.len() != m * m {
            return Err(Error::MalformedTable(format!(
                "tensor table has {} object and {} morphism entries, expected {} and {}",
                object_table.len(),
                morphism_table.len(),
                n * n,
                m * m
            )));
        }
        if object_table.iter().any(|a| a.0 >= n) || morphism_table.iter().any(|f| f.0 >= m) {
            return Err(Error::MalformedTable("tensor table entry outside the category".into()));
        }
        Ok(TensorTable {
            objects: n,
            morphisms: m,
            object_table,
            morphism_table,
        })
    }

    pub fn from_fn(c: &FinCategory, on_objects: impl Fn(Ob, Ob) -> Ob, on_morphisms: impl Fn(Mor, Mor) -> Mor) -> Self {
        let object_table = c.objects().flat_map(|a| c.objects().map(move |b| (a, b))).map(|(a, b)| on_objects(a, b)).collect();
        let morphism_table = c
            .morphisms()
            .flat_map(|f| c.morphisms().map(move |g| (f, g)))
            .map(|(f, g)| on_morphisms(f, g))
            .collect();
        TensorTable {
            objects: c.num_objects(),
            morphisms: c.num_morphisms(),
            object_table,
            morphism_table,
        }
    }

    pub fn ob(&self, a: Ob, b: Ob) -> Ob {
        self.object_table[a.0 * self.objects + b.0]
    }

    pub fn mor(&self, f: Mor, g: Mor) -> Mor {
        self.morphism_table[f.0 * self.morphisms + g.0]
    }

    pub fn object_table(&self) -> &[Ob] {
        &self.object_table
    }

    pub fn morphism_table(&self) -> &[Mor] {
        &self.morphism_table
    }
}

/// Source and target formulas of `α^i`: `(A⊗B)⊗C → A⊗(B⊗C)`.
pub fn associator_exprs(i: usize) -> (ObExpr, ObExpr) {
    let v = ObExpr::var;
    (
        ObExpr::tensor(i, ObExpr::tensor(i, v(0), v(1)), v(2)),
        ObExpr::tensor(i, v(0), ObExpr::tensor(i, v(1), v(2))),
    )
}

/// Source and target formulas of `η^{ij}`: `(A⊗_jB)⊗_i(C⊗_jD) → (A⊗_iC)⊗_j(B⊗_iD)`.
pub fn interchanger_exprs(i: usize, j: usize) -> (ObExpr, ObExpr) {
    let v = ObExpr::var;
    (
        ObExpr::tensor(i, ObExpr::tensor(j, v(0), v(1)), ObExpr::tensor(j, v(2), v(3))),
        ObExpr::tensor(j, ObExpr::tensor(i, v(0), v(2)), ObExpr::tensor(i, v(1), v(3))),
    )
}

pub fn associator_name(i: usize) -> String {
    format!("α^{i}")
}

pub fn interchanger_name(i: usize, j: usize) -> String {
    format!("η^{i},{j}")
}

/// A finite k-fold monoidal category: `k` tensors sharing a strict unit,
/// associators `α^i` and interchangers `η^{ij}` for `i < j`.
///
/// The constructor only checks table shapes. Whether the data satisfies
/// the axioms is the job of [`check_kfold`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFoldStructure {
    base: Arc<FinCategory>,
    unit: Ob,
    tensors: Vec<TensorTable>,
    associators: Vec<NatFamily>,
    interchangers: BTreeMap<(usize, usize), NatFamily>,
}

impl KFoldStructure {
    pub fn new(
        base: Arc<FinCategory>,
        unit: Ob,
        tensors: Vec<TensorTable>,
        associators: Vec<NatFamily>,
        interchangers: BTreeMap<(usize, usize), NatFamily>,
    ) -> Result<Self> {
        let k = tensors.len();
        let (n, m) = (base.num_objects(), base.num_morphisms());
        if k == 0 {
            return Err(Error::MalformedTable("a k-fold structure needs at least one tensor".into()));
        }
        if unit.0 >= n {
            return Err(Error::UnknownObject(format!("#{}", unit.0)));
        }
        for t in &tensors {
            if t.objects != n || t.morphisms != m {
                return Err(Error::MalformedTable("tensor table does not match the base".into()));
            }
        }
        if associators.len() != k {
            return Err(Error::MalformedTable(format!("{} associators for {k} tensors", associators.len())));
        }
        let well_shaped = |f: &NatFamily, arity: usize| {
            f.arity() == arity && f.num_objects() == n && f.components().iter().all(|c| c.0 < m)
        };
        if let Some(bad) = associators.iter().find(|a| !well_shaped(a, 3)) {
            return Err(Error::MalformedTable(format!("associator `{}` is not a table over object triples", bad.name())));
        }
        for i in 1..=k {
            for j in i + 1..=k {
                match interchangers.get(&(i, j)) {
                    Some(eta) if well_shaped(eta, 4) => {}
                    Some(eta) => {
                        return Err(Error::MalformedTable(format!(
                            "interchanger `{}` is not a table over object quadruples",
                            eta.name()
                        )))
                    }
                    None => return Err(Error::MalformedTable(format!("missing interchanger η^{i},{j}"))),
                }
            }
        }
        if let Some(&(i, j)) = interchangers.keys().find(|&&(i, j)| !(1 <= i && i < j && j <= k)) {
            return Err(Error::IndexOutOfRange {
                index: j.max(i),
                valid: format!("pairs 1 ≤ i < j ≤ {k}"),
            });
        }
        Ok(KFoldStructure {
            base,
            unit,
            tensors,
            associators,
            interchangers,
        })
    }

    /// Builds every structure table from closures. `alpha(i, [u, v, w])`
    /// and `eta(i, j, [a, b, c, d])` give the components.
    pub fn from_fns(
        base: Arc<FinCategory>,
        unit: Ob,
        tensors: Vec<TensorTable>,
        mut alpha: impl FnMut(usize, &[Ob]) -> Result<Mor>,
        mut eta: impl FnMut(usize, usize, &[Ob]) -> Result<Mor>,
    ) -> Result<Self> {
        let k = tensors.len();
        let n = base.num_objects();
        let mut associators = Vec::with_capacity(k);
        for i in 1..=k {
            let (s, t) = associator_exprs(i);
            associators.push(NatFamily::tabulate(associator_name(i), 3, n, s, t, |idx| alpha(i, idx))?);
        }
        let mut interchangers = BTreeMap::new();
        for i in 1..=k {
            for j in i + 1..=k {
                let (s, t) = interchanger_exprs(i, j);
                interchangers.insert((i, j), NatFamily::tabulate(interchanger_name(i, j), 4, n, s, t, |idx| eta(i, j, idx))?);
            }
        }
        KFoldStructure::new(base, unit, tensors, associators, interchangers)
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.tensors.len()
    }

    pub fn unit(&self) -> Ob {
        self.unit
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.k()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                valid: format!("1..={}", self.k()),
            })
        }
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i < j {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: j,
                valid: format!("an index greater than {i}"),
            })
        }
    }

    pub fn tensor(&self, i: usize) -> Result<&TensorTable> {
        self.check_index(i)?;
        Ok(&self.tensors[i - 1])
    }

    pub fn tensors(&self) -> &[TensorTable] {
        &self.tensors
    }

    /// `a ⊗_i b`. Panics if `i` is out of range; see [`Self::tensor`].
    pub fn ob(&self, i: usize, a: Ob, b: Ob) -> Ob {
        self.tensors[i - 1].ob(a, b)
    }

    /// `f ⊗_i g`. Panics if `i` is out of range.
    pub fn mor(&self, i: usize, f: Mor, g: Mor) -> Mor {
        self.tensors[i - 1].mor(f, g)
    }

    pub fn id(&self, a: Ob) -> Mor {
        self.base.identity(a)
    }

    pub fn associator(&self, i: usize) -> Result<&NatFamily> {
        self.check_index(i)?;
        Ok(&self.associators[i - 1])
    }

    pub fn associators(&self) -> &[NatFamily] {
        &self.associators
    }

    /// `α^i_{uvw}`.
    pub fn alpha(&self, i: usize, u: Ob, v: Ob, w: Ob) -> Mor {
        self.associators[i - 1].component(&[u, v, w])
    }

    /// Two-sided inverse of `α^i_{uvw}`.
    pub fn alpha_inverse(&self, i: usize, u: Ob, v: Ob, w: Ob) -> Result<Mor> {
        let a = self.alpha(i, u, v, w);
        self.base.inverse(a).ok_or_else(|| {
            Error::StructureMismatch(format!(
                "α^{i}_{{{},{},{}}} = `{}` has no inverse",
                self.base.object_name(u),
                self.base.object_name(v),
                self.base.object_name(w),
                self.base.morphism_name(a)
            ))
        })
    }

    pub fn interchanger(&self, i: usize, j: usize) -> Result<&NatFamily> {
        self.check_pair(i, j)?;
        Ok(&self.interchangers[&(i, j)])
    }

    pub fn interchangers(&self) -> &BTreeMap<(usize, usize), NatFamily> {
        &self.interchangers
    }

    /// `η^{ij}_{abcd}`. Panics if `(i, j)` is not a valid pair.
    pub fn eta(&self, i: usize, j: usize, a: Ob, b: Ob, c: Ob, d: Ob) -> Mor {
        self.interchangers[&(i, j)].component(&[a, b, c, d])
    }

    /// `⊗_i` as a functor out of `base × base`.
    pub fn tensor_functor(&self, i: usize) -> Result<FinFunctor> {
        let t = self.tensor(i)?;
        FinFunctor::new(
            Arc::new(product_category(&self.base, &self.base)),
            self.base.clone(),
            t.object_table.clone(),
            t.morphism_table.clone(),
        )
    }

    pub fn with_tensor_object(&self, i: usize, a: Ob, b: Ob, value: Ob) -> Result<Self> {
        self.check_index(i)?;
        let mut out = self.clone();
        let t = &mut out.tensors[i - 1];
        t.object_table[a.0 * t.objects + b.0] = value;
        Ok(out)
    }

    pub fn with_tensor_morphism(&self, i: usize, f: Mor, g: Mor, value: Mor) -> Result<Self> {
        self.check_index(i)?;
        let mut out = self.clone();
        let t = &mut out.tensors[i - 1];
        t.morphism_table[f.0 * t.morphisms + g.0] = value;
        Ok(out)
    }

    pub fn with_associator_component(&self, i: usize, index: &[Ob], f: Mor) -> Result<Self> {
        self.check_index(i)?;
        let mut out = self.clone();
        out.associators[i - 1] = out.associators[i - 1].with_component(index, f);
        Ok(out)
    }

    pub fn with_interchange_component(&self, i: usize, j: usize, index: &[Ob], f: Mor) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        let eta = out.interchangers.get_mut(&(i, j)).expect("pair checked");
        *eta = eta.with_component(index, f);
        Ok(out)
    }

    pub fn with_associator(&self, i: usize, family: NatFamily) -> Result<Self> {
        self.check_index(i)?;
        let mut out = self.clone();
        out.associators[i - 1] = family;
        Ok(out)
    }

    pub fn with_interchanger(&self, i: usize, j: usize, family: NatFamily) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        out.interchangers.insert((i, j), family);
        Ok(out)
    }

    /// The first `k` tensors with their associators and interchangers.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.k() {
            return Err(Error::IndexOutOfRange {
                index: k,
                valid: format!("1..={}", self.k()),
            });
        }
        KFoldStructure::new(
            self.base.clone(),
            self.unit,
            self.tensors[..k].to_vec(),
            self.associators[..k].to_vec(),
            self.interchangers.iter().filter(|(&(_, j), _)| j <= k).map(|(&p, f)| (p, f.clone())).collect(),
        )
    }

    /// Restriction to the full subcategory on `keep`, which must contain the
    /// unit and be closed under every tensor.
    pub fn restrict(&self, keep: &[Ob]) -> Result<Self> {
        let (sub, obs, mors) = self.base.full_subcategory(keep)?;
        let new_ob = |a: Ob| {
            obs.iter()
                .position(|&k| k == a)
                .map(Ob)
                .ok_or_else(|| Error::StructureMismatch(format!("`{}` is not in the subcategory", self.base.object_name(a))))
        };
        let new_mor = |f: Mor| {
            mors.iter()
                .position(|&k| k == f)
                .map(Mor)
                .ok_or_else(|| Error::StructureMismatch(format!("`{}` is not in the subcategory", self.base.morphism_name(f))))
        };
        let unit = new_ob(self.unit)?;
        let mut tensors = Vec::with_capacity(self.k());
        for t in &self.tensors {
            let mut object_table = Vec::with_capacity(obs.len() * obs.len());
            for &a in &obs {
                for &b in &obs {
                    object_table.push(new_ob(t.ob(a, b))?);
                }
            }
            let mut morphism_table = Vec::with_capacity(mors.len() * mors.len());
            for &f in &mors {
                for &g in &mors {
                    morphism_table.push(new_mor(t.mor(f, g))?);
                }
            }
            tensors.push(TensorTable::new(&sub, object_table, morphism_table)?);
        }
        let restrict_family = |family: &NatFamily| {
            NatFamily::tabulate(
                family.name(),
                family.arity(),
                obs.len(),
                family.source().clone(),
                family.target().clone(),
                |idx| {
                    let old: Vec<Ob> = idx.iter().map(|a| obs[a.0]).collect();
                    new_mor(family.component(&old))
                },
            )
        };
        let associators = self.associators.iter().map(restrict_family).collect::<Result<Vec<_>>>()?;
        let mut interchangers = BTreeMap::new();
        for (&pair, family) in &self.interchangers {
            interchangers.insert(pair, restrict_family(family)?);
        }
        KFoldStructure::new(Arc::new(sub), unit, tensors, associators, interchangers)
    }
}

impl TensorTables for KFoldStructure {
    fn base(&self) -> &FinCategory {
        &self.base
    }

    fn unit(&self) -> Ob {
        self.unit
    }

    fn tensor_count(&self) -> usize {
        self.k()
    }

    fn tensor_ob(&self, index: usize, a: Ob, b: Ob) -> Result<Ob> {
        Ok(self.tensor(index)?.ob(a, b))
    }

    fn tensor_mor(&self, index: usize, f: Mor, g: Mor) -> Result<Mor> {
        Ok(self.tensor(index)?.mor(f, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn sign_tensor_is_parity_addition() {
        let s = corpus::sign_kfold(3);
        let b = s.base();
        let (i, x) = (b.object("I").unwrap(), b.object("X").unwrap());
        assert_eq!(s.ob(1, x, x), i);
        assert_eq!(s.ob(2, i, x), x);
        let (g0, e1, g1) = (b.morphism("g0").unwrap(), b.morphism("e1").unwrap(), b.morphism("g1").unwrap());
        assert_eq!(s.mor(1, g0, e1), g1);
        assert_eq!(s.mor(3, g1, g1), b.morphism("e0").unwrap());
    }

    #[test]
    fn index_errors() {
        let s = corpus::sign_kfold(2);
        assert!(matches!(s.tensor(3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.interchanger(2, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn missing_interchanger_is_malformed() {
        let s = corpus::sign_kfold(2);
        let err = KFoldStructure::new(
            s.base_arc().clone(),
            s.unit(),
            s.tensors().to_vec(),
            s.associators().to_vec(),
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedTable(_)));
    }

    #[test]
    fn restriction_to_unit_endomorphisms() {
        let s = corpus::sign_kfold(3);
        let sub = s.restrict(&[s.unit()]).unwrap();
        assert_eq!(sub.base().num_objects(), 1);
        assert_eq!(sub.base().num_morphisms(), 2);
        assert_eq!(sub.k(), 3);
    }

    #[test]
    fn restriction_must_be_tensor_closed() {
        let b = corpus::boolean_kfold(3);
        let zero = b.base().object("0").unwrap();
        assert!(b.restrict(&[zero]).is_err());
    }
}

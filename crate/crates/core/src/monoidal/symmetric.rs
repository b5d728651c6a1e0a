use std::collections::BTreeMap;
use std::sync::Arc;

use super::axioms::pentagon_outcome;
use super::{associator_exprs, associator_name, KFoldStructure, TensorTable};
use crate::error::{Error, Result};
use crate::fincat::{check_functor_laws, check_naturality, ExprContext, ExprFunctor, FinCategory, Mor, NatFamily, Ob, ObExpr};
use crate::report::{CheckBuilder, CheckOptions, CheckOutcome, DiagramReport};

/// A symmetric monoidal category with strict unit: one tensor, associator
/// and braiding `c_{AB}: A⊗B → B⊗A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricStructure {
    base: Arc<FinCategory>,
    unit: Ob,
    tensor: TensorTable,
    associator: NatFamily,
    braiding: NatFamily,
}

pub fn braiding_exprs() -> (ObExpr, ObExpr) {
    let v = ObExpr::var;
    (ObExpr::tensor(1, v(0), v(1)), ObExpr::tensor(1, v(1), v(0)))
}

impl SymmetricStructure {
    pub fn new(base: Arc<FinCategory>, unit: Ob, tensor: TensorTable, associator: NatFamily, braiding: NatFamily) -> Result<Self> {
        let n = base.num_objects();
        if associator.arity() != 3 || associator.num_objects() != n {
            return Err(Error::MalformedTable("associator must be indexed by object triples".into()));
        }
        if braiding.arity() != 2 || braiding.num_objects() != n {
            return Err(Error::MalformedTable("braiding must be indexed by object pairs".into()));
        }
        Ok(SymmetricStructure {
            base,
            unit,
            tensor,
            associator,
            braiding,
        })
    }

    /// Builds the associator and braiding tables from closures.
    pub fn from_fns(
        base: Arc<FinCategory>,
        unit: Ob,
        tensor: TensorTable,
        alpha: impl FnMut(&[Ob]) -> Result<Mor>,
        braiding: impl FnMut(&[Ob]) -> Result<Mor>,
    ) -> Result<Self> {
        let n = base.num_objects();
        let (s, t) = associator_exprs(1);
        let associator = NatFamily::tabulate("α", 3, n, s, t, alpha)?;
        let (s, t) = braiding_exprs();
        let braiding = NatFamily::tabulate("c", 2, n, s, t, braiding)?;
        SymmetricStructure::new(base, unit, tensor, associator, braiding)
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn unit(&self) -> Ob {
        self.unit
    }

    pub fn tensor(&self) -> &TensorTable {
        &self.tensor
    }

    pub fn associator(&self) -> &NatFamily {
        &self.associator
    }

    pub fn braiding(&self) -> &NatFamily {
        &self.braiding
    }

    pub fn with_braiding_component(&self, a: Ob, b: Ob, f: Mor) -> Self {
        let mut out = self.clone();
        out.braiding = out.braiding.with_component(&[a, b], f);
        out
    }

    /// The underlying monoidal category as a 1-fold structure.
    pub fn as_monoidal(&self) -> Result<KFoldStructure> {
        KFoldStructure::new(
            self.base.clone(),
            self.unit,
            vec![self.tensor.clone()],
            vec![self.associator.clone().renamed(associator_name(1))],
            BTreeMap::new(),
        )
    }
}

/// Monoidal axioms of the underlying structure plus naturality of `c`, both
/// hexagon identities and `c_{BA} ∘ c_{AB} = 1`.
pub fn check_symmetric(sym: &SymmetricStructure, options: &CheckOptions) -> DiagramReport {
    let started = std::time::Instant::now();
    let mut report = DiagramReport::new("symmetric");
    let mono = match sym.as_monoidal() {
        Ok(m) => m,
        Err(err) => {
            report.push(CheckOutcome::error("structure", &err));
            return report;
        }
    };
    match mono.tensor_functor(1) {
        Ok(t) => report.absorb("tensor", check_functor_laws(&t)),
        Err(err) => report.push(CheckOutcome::error("tensor", &err)),
    }
    report.absorb("", super::check_strict_units(&mono));
    let all: Vec<Ob> = sym.base.objects().collect();
    report.push(pentagon_outcome(&mono, 1, &all, options));

    let ctx = ExprContext::new(&mono);
    for family in [sym.associator.clone().renamed("α"), sym.braiding.clone()] {
        let source = ExprFunctor::new(family.source(), family.arity(), ctx);
        let target = ExprFunctor::new(family.target(), family.arity(), ctx);
        match check_naturality(&source, &target, &family, options) {
            Ok(r) => report.absorb("", r),
            Err(err) => report.push(CheckOutcome::error(format!("naturality({})", family.name()), &err)),
        }
    }

    let c = sym.base();
    let t = |a: Ob, b: Ob| sym.tensor.ob(a, b);
    let tm = |f: Mor, g: Mor| sym.tensor.mor(f, g);
    let braid = |a: Ob, b: Ob| sym.braiding.component(&[a, b]);
    let alpha = |a: Ob, b: Ob, d: Ob| sym.associator.component(&[a, b, d]);
    let inv = |f: Mor| {
        c.inverse(f)
            .ok_or_else(|| Error::NotSymmetric(format!("`{}` has no inverse", c.morphism_name(f))))
    };
    let obj_names = |obs: &[Ob]| obs.iter().map(|&a| c.object_name(a).to_string()).collect::<Vec<_>>();

    let mut symmetry = CheckBuilder::new("symmetry");
    for a in c.objects() {
        for b in c.objects() {
            let legs = c.compose(braid(b, a), braid(a, b)).map(|l| (l, c.identity(t(a, b))));
            symmetry.compare_morphisms(c, || obj_names(&[a, b]), legs);
        }
    }
    report.push(symmetry.finish());

    let mut h1 = CheckBuilder::new("hexagon-1");
    let mut h2 = CheckBuilder::new("hexagon-2");
    for a in c.objects() {
        for b in c.objects() {
            for d in c.objects() {
                let legs = (|| {
                    let left = c.path(&[alpha(a, b, d), braid(a, t(b, d)), alpha(b, d, a)])?;
                    let right = c.path(&[
                        tm(braid(a, b), c.identity(d)),
                        alpha(b, a, d),
                        tm(c.identity(b), braid(a, d)),
                    ])?;
                    Ok((left, right))
                })();
                h1.compare_morphisms(c, || obj_names(&[a, b, d]), legs);
                let legs = (|| {
                    let left = c.path(&[inv(alpha(a, b, d))?, braid(t(a, b), d), inv(alpha(d, a, b))?])?;
                    let right = c.path(&[
                        tm(c.identity(a), braid(b, d)),
                        inv(alpha(a, d, b))?,
                        tm(braid(a, d), c.identity(b)),
                    ])?;
                    Ok((left, right))
                })();
                h2.compare_morphisms(c, || obj_names(&[a, b, d]), legs);
            }
        }
    }
    report.push(h1.finish());
    report.push(h2.finish());
    report.set_elapsed(started.elapsed());
    report
}

/// The k-fold structure of a symmetric monoidal category: every tensor is
/// `⊗`, every associator is `α`, and
///
/// `η_{ABCD} = α⁻¹_{A,C,B⊗D} ∘ (1_A⊗α_{C,B,D}) ∘ (1_A⊗(c_{BC}⊗1_D)) ∘ (1_A⊗α⁻¹_{B,C,D}) ∘ α_{A,B,C⊗D}`.
pub fn from_symmetric(sym: &SymmetricStructure, k: usize, options: &CheckOptions) -> Result<KFoldStructure> {
    if k == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            valid: "k ≥ 1".into(),
        });
    }
    let pre = check_symmetric(sym, options);
    if let Some(bad) = pre.failing().next() {
        let detail = bad.witnesses.first().map(|w| w.to_string()).unwrap_or_else(|| bad.name.clone());
        return Err(Error::NotSymmetric(detail));
    }
    let c = sym.base();
    let t = |a: Ob, b: Ob| sym.tensor.ob(a, b);
    let tm = |f: Mor, g: Mor| sym.tensor.mor(f, g);
    let alpha = |a: Ob, b: Ob, d: Ob| sym.associator.component(&[a, b, d]);
    let inv = |f: Mor| {
        c.inverse(f)
            .ok_or_else(|| Error::NotSymmetric(format!("`{}` has no inverse", c.morphism_name(f))))
    };
    let eta = |idx: &[Ob]| -> Result<Mor> {
        let (a, b, cc, d) = (idx[0], idx[1], idx[2], idx[3]);
        let one_a = c.identity(a);
        c.path(&[
            alpha(a, b, t(cc, d)),
            tm(one_a, inv(alpha(b, cc, d))?),
            tm(one_a, tm(sym.braiding.component(&[b, cc]), c.identity(d))),
            tm(one_a, alpha(cc, b, d)),
            inv(alpha(a, cc, t(b, d)))?,
        ])
    };
    let tensors = vec![sym.tensor.clone(); k];
    KFoldStructure::from_fns(sym.base.clone(), sym.unit, tensors, |_, idx| Ok(alpha(idx[0], idx[1], idx[2])), |_, _, idx| eta(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::monoidal::check_kfold;

    #[test]
    fn sign_eta_xxxx_is_the_nontrivial_unit_endomorphism() {
        let sym = corpus::sign_symmetric();
        let v = from_symmetric(&sym, 3, &CheckOptions::default()).unwrap();
        let b = v.base();
        let x = b.object("X").unwrap();
        // Hand evaluation: 1_X ⊗ (c_XX ⊗ 1_X) = e1 ⊗ (g0 ⊗ e1) = e1 ⊗ g1 = g0.
        let hand = v.mor(1, b.morphism("e1").unwrap(), v.mor(1, b.morphism("g0").unwrap(), b.morphism("e1").unwrap()));
        assert_eq!(hand, b.morphism("g0").unwrap());
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(v.eta(i, j, x, x, x, x), hand);
        }
        assert!(check_kfold(&v, &CheckOptions::default()).passed());
    }

    #[test]
    fn thin_braiding_gives_identity_interchangers() {
        let v = from_symmetric(&corpus::boolean_symmetric(), 3, &CheckOptions::default()).unwrap();
        for eta in v.interchangers().values() {
            assert!(eta.components().iter().all(|&f| v.base().is_identity(f)));
        }
    }

    #[test]
    fn z2_group_admits_only_the_trivial_braiding() {
        let sym = corpus::z2_symmetric();
        let c = sym.base();
        let star = Ob(0);
        let passing: Vec<Mor> = c
            .hom(star, star)
            .iter()
            .copied()
            .filter(|&f| check_symmetric(&sym.with_braiding_component(star, star, f), &CheckOptions::default()).passed())
            .collect();
        assert_eq!(passing, vec![c.identity(star)]);
        let v = from_symmetric(&sym, 3, &CheckOptions::default()).unwrap();
        assert!(v.interchangers().values().all(|eta| eta.components().iter().all(|&f| c.is_identity(f))));
    }

    #[test]
    fn broken_symmetry_is_rejected() {
        let sym = corpus::sign_symmetric();
        let c = sym.base();
        let x = c.object("X").unwrap();
        let i = c.object("I").unwrap();
        // c_{XI} = g1 still squares to the identity but breaks the hexagon.
        let bad = sym.with_braiding_component(x, i, c.morphism("g1").unwrap());
        assert!(matches!(from_symmetric(&bad, 2, &CheckOptions::default()), Err(Error::NotSymmetric(_))));
    }
}

use std::sync::Arc;

use super::KFoldStructure;
use crate::error::{Error, Result};
use crate::fincat::{check_naturality, ExprContext, ExprFunctor, FinFunctor, Mor, NatFamily, Ob, ObExpr};
use crate::report::{CheckBuilder, CheckOptions, CheckOutcome, DiagramReport};

/// Formulas of `λ^i`: `F(A) ⊗_i F(B) → F(A ⊗_i B)`.
pub fn lambda_exprs(i: usize) -> (ObExpr, ObExpr) {
    let v = ObExpr::var;
    (
        ObExpr::tensor(i, ObExpr::apply(v(0)), ObExpr::apply(v(1))),
        ObExpr::apply(ObExpr::tensor(i, v(0), v(1))),
    )
}

/// A k-fold monoidal functor: an ordinary functor between the bases with one
/// structure family `λ^i` per tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalFunctorData {
    source: Arc<KFoldStructure>,
    target: Arc<KFoldStructure>,
    functor: FinFunctor,
    lambdas: Vec<NatFamily>,
}

impl MonoidalFunctorData {
    pub fn new(
        source: Arc<KFoldStructure>,
        target: Arc<KFoldStructure>,
        functor: FinFunctor,
        lambdas: Vec<NatFamily>,
    ) -> Result<Self> {
        if source.k() != target.k() {
            return Err(Error::StructureMismatch(format!(
                "source is {}-fold, target is {}-fold",
                source.k(),
                target.k()
            )));
        }
        if functor.source_category().as_ref() != source.base() || functor.target_category().as_ref() != target.base() {
            return Err(Error::StructureMismatch("underlying functor does not match the bases".into()));
        }
        if lambdas.len() != source.k() {
            return Err(Error::StructureMismatch(format!("{} λ families for k = {}", lambdas.len(), source.k())));
        }
        let n = source.base().num_objects();
        let m = target.base().num_morphisms();
        for l in &lambdas {
            if l.arity() != 2 || l.num_objects() != n || l.components().iter().any(|f| f.0 >= m) {
                return Err(Error::MalformedTable(format!("`{}` is not a table over object pairs", l.name())));
            }
        }
        Ok(MonoidalFunctorData {
            source,
            target,
            functor,
            lambdas,
        })
    }

    /// Builds the `λ^i` tables from a closure `lambda(i, a, b)`.
    pub fn from_fn(
        source: Arc<KFoldStructure>,
        target: Arc<KFoldStructure>,
        functor: FinFunctor,
        mut lambda: impl FnMut(usize, Ob, Ob) -> Result<Mor>,
    ) -> Result<Self> {
        let n = source.base().num_objects();
        let lambdas = (1..=source.k())
            .map(|i| {
                let (s, t) = lambda_exprs(i);
                NatFamily::tabulate(format!("λ^{i}"), 2, n, s, t, |idx| lambda(i, idx[0], idx[1]))
            })
            .collect::<Result<Vec<_>>>()?;
        MonoidalFunctorData::new(source, target, functor, lambdas)
    }

    /// Identity functor with identity structure maps.
    pub fn identity(v: Arc<KFoldStructure>) -> Self {
        let functor = FinFunctor::identity(v.base_arc().clone());
        MonoidalFunctorData::from_fn(v.clone(), v.clone(), functor, |i, a, b| Ok(v.id(v.ob(i, a, b))))
            .expect("identity data is well shaped")
    }

    /// The functor sending everything to the unit and every morphism to `1_I`.
    pub fn constant_unit(source: Arc<KFoldStructure>, target: Arc<KFoldStructure>) -> Result<Self> {
        let unit = target.unit();
        let one = target.id(unit);
        let functor = FinFunctor::new(
            source.base_arc().clone(),
            target.base_arc().clone(),
            vec![unit; source.base().num_objects()],
            vec![one; source.base().num_morphisms()],
        )?;
        MonoidalFunctorData::from_fn(source, target, functor, |_, _, _| Ok(one))
    }

    pub fn source(&self) -> &Arc<KFoldStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<KFoldStructure> {
        &self.target
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    pub fn lambdas(&self) -> &[NatFamily] {
        &self.lambdas
    }

    /// `λ^i_{ab}`.
    pub fn lambda(&self, i: usize, a: Ob, b: Ob) -> Mor {
        self.lambdas[i - 1].component(&[a, b])
    }

    pub fn with_lambda_component(&self, i: usize, a: Ob, b: Ob, f: Mor) -> Result<Self> {
        self.source.check_index(i)?;
        let mut out = self.clone();
        out.lambdas[i - 1] = out.lambdas[i - 1].with_component(&[a, b], f);
        Ok(out)
    }
}

/// `F(I) = I`, naturality of each `λ^i`, internal associativity, the unit
/// conditions `λ_{AI} = λ_{IA} = 1`, and the hexagonal interchange for every
/// pair `i < j`.
pub fn check_monoidal_functor(f: &MonoidalFunctorData, options: &CheckOptions) -> DiagramReport {
    let started = std::time::Instant::now();
    let (src, tgt) = (f.source.as_ref(), f.target.as_ref());
    let (c, d) = (src.base(), tgt.base());
    let ff = &f.functor;
    let mut report = DiagramReport::new("monoidal-functor");
    let obs = |xs: &[Ob]| xs.iter().map(|&a| c.object_name(a).to_string()).collect::<Vec<_>>();

    let mut unit = CheckBuilder::new("unit-preserved");
    let image = ff.map_object(src.unit());
    unit.compare(
        || vec![c.object_name(src.unit()).to_string()],
        Ok((d.object_name(image).to_string(), d.object_name(tgt.unit()).to_string())),
        image == tgt.unit(),
    );
    report.push(unit.finish());

    let ctx = ExprContext::with_functor(tgt, src, ff);
    for lambda in &f.lambdas {
        let source = ExprFunctor::new(lambda.source(), 2, ctx);
        let target = ExprFunctor::new(lambda.target(), 2, ctx);
        match check_naturality(&source, &target, lambda, options) {
            Ok(r) => report.absorb("", r),
            Err(err) => report.push(CheckOutcome::error(format!("naturality({})", lambda.name()), &err)),
        }
    }

    for i in 1..=src.k() {
        let mut assoc = CheckBuilder::new(format!("internal-assoc({i})"));
        let mut units = CheckBuilder::new(format!("units({i})"));
        for a in c.objects() {
            for b in c.objects() {
                for x in c.objects() {
                    let (fa, fb, fx) = (ff.map_object(a), ff.map_object(b), ff.map_object(x));
                    let legs = (|| {
                        let left = d.path(&[
                            tgt.mor(i, f.lambda(i, a, b), d.identity(fx)),
                            f.lambda(i, src.ob(i, a, b), x),
                            ff.map_morphism(src.alpha(i, a, b, x)),
                        ])?;
                        let right = d.path(&[
                            tgt.alpha(i, fa, fb, fx),
                            tgt.mor(i, d.identity(fa), f.lambda(i, b, x)),
                            f.lambda(i, a, src.ob(i, b, x)),
                        ])?;
                        Ok((left, right))
                    })();
                    assoc.compare_morphisms(d, || obs(&[a, b, x]), legs);
                }
            }
            let one = d.identity(ff.map_object(a));
            units.compare_morphisms(d, || obs(&[a, src.unit()]), Ok((f.lambda(i, a, src.unit()), one)));
            units.compare_morphisms(d, || obs(&[src.unit(), a]), Ok((f.lambda(i, src.unit(), a), one)));
        }
        report.push(assoc.finish());
        report.push(units.finish());
    }

    for i in 1..=src.k() {
        for j in i + 1..=src.k() {
            let mut hex = CheckBuilder::new(format!("hexagonal-interchange({i},{j})"));
            let all: Vec<Ob> = c.objects().collect();
            for &a in &all {
                for &b in &all {
                    for &x in &all {
                        for &y in &all {
                            let legs = (|| {
                                let left = d.path(&[
                                    tgt.mor(i, f.lambda(j, a, b), f.lambda(j, x, y)),
                                    f.lambda(i, src.ob(j, a, b), src.ob(j, x, y)),
                                    ff.map_morphism(src.eta(i, j, a, b, x, y)),
                                ])?;
                                let right = d.path(&[
                                    tgt.eta(i, j, ff.map_object(a), ff.map_object(b), ff.map_object(x), ff.map_object(y)),
                                    tgt.mor(j, f.lambda(i, a, x), f.lambda(i, b, y)),
                                    f.lambda(j, src.ob(i, a, x), src.ob(i, b, y)),
                                ])?;
                                Ok((left, right))
                            })();
                            hex.compare_morphisms(d, || obs(&[a, b, x, y]), legs);
                        }
                    }
                }
            }
            report.push(hex.finish());
        }
    }
    report.set_elapsed(started.elapsed());
    report
}

/// `G ∘ F` with structure maps `G(λ^F_{AB}) ∘ λ^G_{FA,FB}`.
pub fn compose_monoidal_functors(g: &MonoidalFunctorData, f: &MonoidalFunctorData) -> Result<MonoidalFunctorData> {
    if f.target != g.source {
        return Err(Error::StructureMismatch("target of F is not the source of G".into()));
    }
    let functor = g.functor.after(&f.functor)?;
    let tgt = g.target.clone();
    MonoidalFunctorData::from_fn(f.source.clone(), tgt.clone(), functor, |i, a, b| {
        let (fa, fb) = (f.functor.map_object(a), f.functor.map_object(b));
        tgt.base().compose(g.functor.map_morphism(f.lambda(i, a, b)), g.lambda(i, fa, fb))
    })
}

/// Naturality of `θ: F ⇒ G` and `θ_{A⊗B} ∘ λ^F = λ^G ∘ (θ_A ⊗ θ_B)` for
/// every tensor.
pub fn check_monoidal_nat(
    theta: &NatFamily,
    f: &MonoidalFunctorData,
    g: &MonoidalFunctorData,
    options: &CheckOptions,
) -> Result<DiagramReport> {
    if theta.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: theta.arity(),
        });
    }
    if f.source != g.source || f.target != g.target {
        return Err(Error::StructureMismatch("F and G are not parallel".into()));
    }
    let started = std::time::Instant::now();
    let mut report = DiagramReport::new(format!("monoidal-nat({})", theta.name()));
    report.absorb("", check_naturality(&f.functor, &g.functor, theta, options)?);
    let (src, tgt) = (f.source.as_ref(), f.target.as_ref());
    let (c, d) = (src.base(), tgt.base());
    for i in 1..=src.k() {
        let mut square = CheckBuilder::new(format!("compatibility({i})"));
        for a in c.objects() {
            for b in c.objects() {
                let legs = (|| {
                    let left = d.compose(theta.component(&[src.ob(i, a, b)]), f.lambda(i, a, b))?;
                    let right = d.compose(g.lambda(i, a, b), tgt.mor(i, theta.component(&[a]), theta.component(&[b])))?;
                    Ok((left, right))
                })();
                square.compare_morphisms(d, || vec![c.object_name(a).to_string(), c.object_name(b).to_string()], legs);
            }
        }
        report.push(square.finish());
    }
    report.set_elapsed(started.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn sign() -> Arc<KFoldStructure> {
        Arc::new(corpus::sign_kfold(2))
    }

    #[test]
    fn identity_passes() {
        let f = MonoidalFunctorData::identity(sign());
        assert!(check_monoidal_functor(&f, &CheckOptions::default()).passed());
    }

    #[test]
    fn constant_unit_passes() {
        let f = MonoidalFunctorData::constant_unit(sign(), sign()).unwrap();
        let r = check_monoidal_functor(&f, &CheckOptions::default());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn lambda_mutation_is_caught() {
        let v = sign();
        let x = v.base().object("X").unwrap();
        let g0 = v.base().morphism("g0").unwrap();
        let f = MonoidalFunctorData::identity(v.clone()).with_lambda_component(1, x, x, g0).unwrap();
        let r = check_monoidal_functor(&f, &CheckOptions::default());
        assert!(!r.passed());
        assert!(r.failing().any(|c| c.name.starts_with("naturality") || c.name.starts_with("hexagonal")), "{r}");
    }

    #[test]
    fn composition_with_identity_is_neutral() {
        let v = sign();
        let id = MonoidalFunctorData::identity(v.clone());
        let k = MonoidalFunctorData::constant_unit(v.clone(), v.clone()).unwrap();
        assert_eq!(compose_monoidal_functors(&id, &k).unwrap(), k);
        assert_eq!(compose_monoidal_functors(&k, &id).unwrap(), k);
        assert_eq!(compose_monoidal_functors(&k, &k).unwrap(), k);
    }

    #[test]
    fn sign_theta_assignments() {
        let v = sign();
        let b = v.base();
        let id = MonoidalFunctorData::identity(v.clone());
        let mut passing = Vec::new();
        for ti in ["e0", "g0"] {
            for tx in ["e1", "g1"] {
                let theta = NatFamily::new(
                    "θ",
                    1,
                    2,
                    ObExpr::apply(ObExpr::var(0)),
                    ObExpr::apply(ObExpr::var(0)),
                    vec![b.morphism(ti).unwrap(), b.morphism(tx).unwrap()],
                )
                .unwrap();
                let r = check_monoidal_nat(&theta, &id, &id, &CheckOptions::default()).unwrap();
                if r.passed() {
                    passing.push((ti, tx));
                }
                if (ti, tx) == ("g0", "e1") {
                    let w = &r.check("compatibility(1)").unwrap().witnesses;
                    assert!(w.iter().any(|w| w.index == ["I", "X"]));
                }
            }
        }
        // θ_I must square to itself, so θ_I = e0; θ_X is then free.
        assert_eq!(passing, vec![("e0", "e1"), ("e0", "g1")]);
    }
}

use std::fmt;

use super::{FinCategory, FinFunctor, Functorial, Mor, Ob};
use crate::error::{Error, Result};
use crate::report::{CheckBuilder, CheckOptions, DiagramReport, TuplePlan, Witness};

/// Tensor tables that formulas can be evaluated against.
pub trait TensorTables {
    fn base(&self) -> &FinCategory;
    fn unit(&self) -> Ob;
    fn tensor_count(&self) -> usize;
    fn tensor_ob(&self, index: usize, a: Ob, b: Ob) -> Result<Ob>;
    fn tensor_mor(&self, index: usize, f: Mor, g: Mor) -> Result<Mor>;
}

/// A formula built from variables, the unit and the tensor products.
///
/// `Apply` pushes its argument through a functor: the sub-formula is
/// evaluated in the functor's source structure and the result mapped into
/// the outer one. Formulas act on morphism tuples as well as object
/// tuples, so each one is itself a functor `Vⁿ → V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObExpr {
    Var(usize),
    Unit,
    Tensor(usize, Box<ObExpr>, Box<ObExpr>),
    Apply(Box<ObExpr>),
}

impl ObExpr {
    pub fn var(n: usize) -> Self {
        ObExpr::Var(n)
    }

    pub fn tensor(index: usize, left: ObExpr, right: ObExpr) -> Self {
        ObExpr::Tensor(index, Box::new(left), Box::new(right))
    }

    pub fn apply(inner: ObExpr) -> Self {
        ObExpr::Apply(Box::new(inner))
    }

    /// One more than the largest variable index.
    pub fn arity(&self) -> usize {
        match self {
            ObExpr::Var(n) => n + 1,
            ObExpr::Unit => 0,
            ObExpr::Tensor(_, l, r) => l.arity().max(r.arity()),
            ObExpr::Apply(e) => e.arity(),
        }
    }

    fn mentions_apply(&self) -> bool {
        match self {
            ObExpr::Var(_) | ObExpr::Unit => false,
            ObExpr::Tensor(_, l, r) => l.mentions_apply() || r.mentions_apply(),
            ObExpr::Apply(_) => true,
        }
    }

    pub fn eval_ob(&self, ctx: &ExprContext<'_>, args: &[Ob]) -> Result<Ob> {
        match self {
            ObExpr::Var(n) => args.get(*n).copied().ok_or(Error::ArityMismatch {
                expected: n + 1,
                found: args.len(),
            }),
            ObExpr::Unit => Ok(ctx.tables.unit()),
            ObExpr::Tensor(i, l, r) => ctx.tables.tensor_ob(*i, l.eval_ob(ctx, args)?, r.eval_ob(ctx, args)?),
            ObExpr::Apply(e) => {
                let (inner, functor) = ctx.functor.ok_or_else(|| Error::StructureMismatch("formula applies a functor but none is bound".into()))?;
                let inner_ctx = ExprContext::new(inner);
                Ok(functor.map_object(e.eval_ob(&inner_ctx, args)?))
            }
        }
    }

    pub fn eval_mor(&self, ctx: &ExprContext<'_>, args: &[Mor]) -> Result<Mor> {
        match self {
            ObExpr::Var(n) => args.get(*n).copied().ok_or(Error::ArityMismatch {
                expected: n + 1,
                found: args.len(),
            }),
            ObExpr::Unit => Ok(ctx.tables.base().identity(ctx.tables.unit())),
            ObExpr::Tensor(i, l, r) => ctx.tables.tensor_mor(*i, l.eval_mor(ctx, args)?, r.eval_mor(ctx, args)?),
            ObExpr::Apply(e) => {
                let (inner, functor) = ctx.functor.ok_or_else(|| Error::StructureMismatch("formula applies a functor but none is bound".into()))?;
                let inner_ctx = ExprContext::new(inner);
                Ok(functor.map_morphism(e.eval_mor(&inner_ctx, args)?))
            }
        }
    }
}

const VAR_NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

impl fmt::Display for ObExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObExpr::Var(n) => match VAR_NAMES.get(*n) {
                Some(name) => f.write_str(name),
                None => write!(f, "v{n}"),
            },
            ObExpr::Unit => f.write_str("I"),
            ObExpr::Tensor(i, l, r) => write!(f, "({l} ⊗{i} {r})"),
            ObExpr::Apply(e) => write!(f, "F{e}"),
        }
    }
}

/// Where a formula is evaluated: the outer tensor tables and, for formulas
/// containing `Apply`, the functor and its source tables.
#[derive(Clone, Copy)]
pub struct ExprContext<'a> {
    pub tables: &'a dyn TensorTables,
    pub functor: Option<(&'a dyn TensorTables, &'a FinFunctor)>,
}

impl<'a> ExprContext<'a> {
    pub fn new(tables: &'a dyn TensorTables) -> Self {
        ExprContext { tables, functor: None }
    }

    pub fn with_functor(tables: &'a dyn TensorTables, source: &'a dyn TensorTables, functor: &'a FinFunctor) -> Self {
        ExprContext {
            tables,
            functor: Some((source, functor)),
        }
    }
}

/// A formula viewed as a functor of `arity` variables.
pub struct ExprFunctor<'a> {
    expr: &'a ObExpr,
    arity: usize,
    ctx: ExprContext<'a>,
}

impl<'a> ExprFunctor<'a> {
    pub fn new(expr: &'a ObExpr, arity: usize, ctx: ExprContext<'a>) -> Self {
        ExprFunctor { expr, arity, ctx }
    }
}

impl Functorial for ExprFunctor<'_> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn source(&self) -> &FinCategory {
        match self.ctx.functor {
            Some((inner, _)) if self.expr.mentions_apply() => inner.base(),
            _ => self.ctx.tables.base(),
        }
    }

    fn target(&self) -> &FinCategory {
        self.ctx.tables.base()
    }

    fn map_objects(&self, args: &[Ob]) -> Result<Ob> {
        self.expr.eval_ob(&self.ctx, args)
    }

    fn map_morphisms(&self, args: &[Mor]) -> Result<Mor> {
        self.expr.eval_mor(&self.ctx, args)
    }
}

/// A family of morphisms indexed by object tuples, e.g. `α_{UVW}` or
/// `η_{ABCD}`, with the formulas its components are supposed to go between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatFamily {
    name: String,
    arity: usize,
    objects: usize,
    source: ObExpr,
    target: ObExpr,
    components: Vec<Mor>,
}

impl NatFamily {
    /// `components` are listed in lexicographic order of their index tuple
    /// over `0..objects`.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        objects: usize,
        source: ObExpr,
        target: ObExpr,
        components: Vec<Mor>,
    ) -> Result<Self> {
        let expected = objects.pow(arity as u32);
        if components.len() != expected {
            return Err(Error::MalformedTable(format!(
                "family has {} components, expected {expected}",
                components.len()
            )));
        }
        if source.arity() > arity || target.arity() > arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: source.arity().max(target.arity()),
            });
        }
        Ok(NatFamily {
            name: name.into(),
            arity,
            objects,
            source,
            target,
            components,
        })
    }

    /// Builds a family by evaluating `component` at every index tuple.
    pub fn tabulate(
        name: impl Into<String>,
        arity: usize,
        objects: usize,
        source: ObExpr,
        target: ObExpr,
        mut component: impl FnMut(&[Ob]) -> Result<Mor>,
    ) -> Result<Self> {
        let mut components = Vec::with_capacity(objects.pow(arity as u32));
        let mut tuple = vec![0usize; arity];
        if objects > 0 || arity == 0 {
            loop {
                let obs: Vec<Ob> = tuple.iter().map(|&i| Ob(i)).collect();
                components.push(component(&obs)?);
                if !crate::report::advance(&mut tuple, objects) {
                    break;
                }
            }
        }
        NatFamily::new(name, arity, objects, source, target, components)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source(&self) -> &ObExpr {
        &self.source
    }

    pub fn target(&self) -> &ObExpr {
        &self.target
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }

    pub fn offset(&self, index: &[Ob]) -> usize {
        index.iter().fold(0, |acc, a| acc * self.objects + a.0)
    }

    pub fn component(&self, index: &[Ob]) -> Mor {
        self.components[self.offset(index)]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    /// Index tuple of the component at `offset`.
    pub fn index_of(&self, mut offset: usize) -> Vec<Ob> {
        let mut out = vec![Ob(0); self.arity];
        for slot in out.iter_mut().rev() {
            *slot = Ob(offset % self.objects);
            offset /= self.objects;
        }
        out
    }

    pub fn with_component(&self, index: &[Ob], f: Mor) -> Self {
        let mut out = self.clone();
        let at = out.offset(index);
        out.components[at] = f;
        out
    }

    pub fn with_component_at(&self, offset: usize, f: Mor) -> Self {
        let mut out = self.clone();
        out.components[offset] = f;
        out
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Checks that `family` is a natural transformation `source ⇒ target`.
///
/// Two checks are produced: `typing` (each component goes from the source
/// functor's value to the target functor's value at its index) and
/// `naturality` (the square commutes for every tuple of morphisms).
pub fn check_naturality(
    source: &dyn Functorial,
    target: &dyn Functorial,
    family: &NatFamily,
    options: &CheckOptions,
) -> Result<DiagramReport> {
    let started = std::time::Instant::now();
    for arity in [source.arity(), target.arity()] {
        if arity != family.arity() {
            return Err(Error::ArityMismatch {
                expected: family.arity(),
                found: arity,
            });
        }
    }
    let c = source.source();
    if c.num_objects() != family.num_objects() {
        return Err(Error::StructureMismatch(format!(
            "family `{}` is indexed by {} objects, the functors' source has {}",
            family.name(),
            family.num_objects(),
            c.num_objects()
        )));
    }
    let d = source.target();
    let mut report = DiagramReport::new(format!("naturality({})", family.name()));
    let ob_names = |t: &[Ob]| t.iter().map(|&a| c.object_name(a).to_string()).collect::<Vec<_>>();

    let plan = TuplePlan::new(c.num_objects(), family.arity(), options);
    let mut typing = CheckBuilder::new(format!("typing({})", family.name())).sampled(plan.sampling.clone());
    plan.for_each(|t| {
        let idx: Vec<Ob> = t.iter().map(|&i| Ob(i)).collect();
        typing.instance();
        let comp = family.component(&idx);
        let expected = source.map_objects(&idx).and_then(|s| target.map_objects(&idx).map(|t| (s, t)));
        match expected {
            Ok((s, t)) if d.dom(comp) == s && d.cod(comp) == t => {}
            Ok((s, t)) => typing.fail(Witness {
                diagram: format!("typing({})", family.name()),
                index: ob_names(&idx),
                left: d.morphism_name(comp).to_string(),
                right: format!("{} → {}", d.object_name(s), d.object_name(t)),
                note: Some(format!(
                    "component `{}` has type {} → {}, expected {} → {}",
                    d.morphism_name(comp),
                    d.object_name(d.dom(comp)),
                    d.object_name(d.cod(comp)),
                    d.object_name(s),
                    d.object_name(t)
                )),
            }),
            Err(err) => typing.fail(Witness {
                diagram: format!("typing({})", family.name()),
                index: ob_names(&idx),
                left: "<error>".into(),
                right: "<error>".into(),
                note: Some(err.to_string()),
            }),
        }
    });
    report.push(typing.finish());

    let plan = TuplePlan::new(c.num_morphisms(), family.arity(), options);
    let mut nat = CheckBuilder::new(format!("naturality({})", family.name())).sampled(plan.sampling.clone());
    plan.for_each(|t| {
        let fs: Vec<Mor> = t.iter().map(|&i| Mor(i)).collect();
        let doms: Vec<Ob> = fs.iter().map(|&f| c.dom(f)).collect();
        let cods: Vec<Ob> = fs.iter().map(|&f| c.cod(f)).collect();
        let legs = (|| {
            let left = d.compose(target.map_morphisms(&fs)?, family.component(&doms))?;
            let right = d.compose(family.component(&cods), source.map_morphisms(&fs)?)?;
            Ok((left, right))
        })();
        nat.compare_morphisms(d, || fs.iter().map(|&f| c.morphism_name(f).to_string()).collect(), legs);
    });
    report.push(nat.finish());
    report.set_elapsed(started.elapsed());
    Ok(report)
}

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use super::{associator_between, interchange_between, tensor_enriched, tensor_functors_between, tensor_transformations, unit_category};
use crate::enrich::{
    check_enriched_category, check_enriched_functor, compose_enriched_functors, enumerate_transformations,
    functor_difference, same, whisker_left, whisker_right, EnrichedCategory, EnrichedFunctor, EnrichedNatTransf,
};
use crate::error::{Error, Result};
use crate::fincat::Ob;
use crate::monoidal::{
    external_unit_outcome, giant_hexagon_outcome, interchange_assoc_outcome, internal_unit_outcome, pentagon_outcome,
    AssocMode, KFoldStructure,
};
use crate::report::{CheckBuilder, CheckOptions, CheckOutcome, DiagramReport, Witness};

/// Natural endotransformations of each identity functor used for the
/// 2-naturality spot checks.
const TRANSFORMATIONS_PER_SAMPLE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Term {
    Leaf(usize),
    Unit,
    Tensor(usize, Box<Term>, Box<Term>),
}

fn t(i: usize, a: Term, b: Term) -> Term {
    Term::Tensor(i, Box::new(a), Box::new(b))
}

impl Term {
    fn leaves(&self) -> usize {
        match self {
            Term::Leaf(_) | Term::Unit => 1,
            Term::Tensor(_, a, b) => a.leaves() + b.leaves(),
        }
    }
}

/// Products of samples, memoized up to three factors; larger ones are
/// rebuilt on demand to bound memory.
struct Products {
    leaves: Vec<Arc<EnrichedCategory>>,
    unit: Arc<EnrichedCategory>,
    cache: HashMap<Term, Arc<EnrichedCategory>>,
}

impl Products {
    fn get(&mut self, term: &Term) -> Result<Arc<EnrichedCategory>> {
        match term {
            Term::Leaf(x) => Ok(self.leaves[*x].clone()),
            Term::Unit => Ok(self.unit.clone()),
            Term::Tensor(i, a, b) => {
                if let Some(hit) = self.cache.get(term) {
                    return Ok(hit.clone());
                }
                let (a, b) = (self.get(a)?, self.get(b)?);
                let out = Arc::new(tensor_enriched(&a, &b, *i)?);
                if term.leaves() <= 3 {
                    self.cache.insert(term.clone(), out.clone());
                }
                Ok(out)
            }
        }
    }

    fn associator(&mut self, i: usize, a: &Term, b: &Term, c: &Term) -> Result<EnrichedFunctor> {
        let (ca, cb, cc) = (self.get(a)?, self.get(b)?, self.get(c)?);
        let source = self.get(&t(i, t(i, a.clone(), b.clone()), c.clone()))?;
        let target = self.get(&t(i, a.clone(), t(i, b.clone(), c.clone())))?;
        associator_between(&ca, &cb, &cc, i, source, target)
    }
}

fn label(names: &[&str]) -> String {
    names.join(",")
}

/// Replays the delooping construction on concrete inputs: closure of the
/// products, unit absorption, associator and interchanger functors, the
/// pentagon for `α^(1)`, the component-level axioms for `η^(1)` and the
/// 2-naturality of `α^(1)` on sample 2-cells.
///
/// Coverage labels `V.<axiom>(…)` name the axiom instances of `V` each
/// sub-check exercises; `VCat.<axiom>(…)` count the component-level axioms
/// of the delooped structure.
pub fn verify_delooping(v: &Arc<KFoldStructure>, sample: &[EnrichedCategory], options: &CheckOptions) -> Result<DiagramReport> {
    let started = Instant::now();
    for cat in sample {
        if !same(cat.base(), v) {
            return Err(Error::BaseMismatch(format!("`{}` is not enriched over the given base", cat.name())));
        }
    }
    let k = v.k();
    let mut report = DiagramReport::new(format!("deloop(k={k})"));
    if k < 2 {
        report.push(CheckOutcome::not_applicable("deloop", "no delooped tensor (k < 2)"));
        return Ok(report);
    }
    let mut products = Products {
        leaves: sample.iter().cloned().map(Arc::new).collect(),
        unit: Arc::new(unit_category(v)),
        cache: HashMap::new(),
    };
    let n = sample.len();
    let names: Vec<&str> = sample.iter().map(|c| c.name()).collect();
    let leaf = Term::Leaf;

    for i in 1..k {
        let ti = i + 1;

        for x in 0..n {
            for y in 0..n {
                let p = products.get(&t(i, leaf(x), leaf(y)))?;
                let r = check_enriched_category(&p, options);
                for c in &r.checks {
                    match c.name.as_str() {
                        "pentagon" => report.count(format!("V.internal-assoc(1,{ti})"), c.instances),
                        "unit-left" | "unit-right" => report.count(format!("V.internal-unit(1,{ti})"), c.instances),
                        _ => {}
                    }
                }
                report.absorb(&format!("closure({i})[{}⊗{}]", names[x], names[y]), r);
            }
        }

        for x in 0..n {
            for (side, term) in [("ℐ⊗", t(i, Term::Unit, leaf(x))), ("⊗ℐ", t(i, leaf(x), Term::Unit))] {
                let p = products.get(&term)?;
                let shown = if side == "ℐ⊗" { format!("ℐ⊗{}", names[x]) } else { format!("{}⊗ℐ", names[x]) };
                let outcome = absorption_outcome(format!("unit-absorption({i})[{shown}]"), &p, &sample[x]);
                report.push_counted(format!("V.external-unit(1,{ti})"), outcome);
            }
        }

        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let f = products.associator(i, &leaf(x), &leaf(y), &leaf(z))?;
                    let r = check_enriched_functor(&f, options);
                    let touched: u64 = r.checks.iter().filter(|c| c.name != "typing").map(|c| c.instances).sum();
                    report.count(format!("V.external-assoc(1,{ti})"), touched);
                    report.absorb(&format!("associator({i})[{}]", label(&[names[x], names[y], names[z]])), r);
                }
            }
        }

        for j in i + 1..k {
            for q in quadruples(n) {
                let [x, y, z, w] = q;
                let source = products.get(&t(i, t(j, leaf(x), leaf(y)), t(j, leaf(z), leaf(w))))?;
                let target = products.get(&t(j, t(i, leaf(x), leaf(z)), t(i, leaf(y), leaf(w))))?;
                let cats = [&*products.leaves[x], &*products.leaves[y], &*products.leaves[z], &*products.leaves[w]];
                let f = interchange_between(cats, i, j, source, target)?;
                let r = check_enriched_functor(&f, options);
                let touched: u64 = r.checks.iter().filter(|c| c.name != "typing").map(|c| c.instances).sum();
                report.count(format!("V.giant-hexagon(1,{},{})", i + 1, j + 1), touched);
                report.absorb(&format!("interchange({i},{j})[{}]", label(&[names[x], names[y], names[z], names[w]])), r);
            }
        }

        let mut pentagon = CheckBuilder::new(format!("associator-pentagon({i})"));
        for q in quadruples(n) {
            let [x, y, z, w] = q.map(leaf);
            let xy = t(i, x.clone(), y.clone());
            let yz = t(i, y.clone(), z.clone());
            let zw = t(i, z.clone(), w.clone());
            let left = compose_enriched_functors(&products.associator(i, &x, &y, &zw)?, &products.associator(i, &xy, &z, &w)?)?;
            let a_xyz = products.associator(i, &x, &y, &z)?;
            let id_w = EnrichedFunctor::identity(products.get(&w)?);
            let first = tensor_functors_between(
                &a_xyz,
                &id_w,
                i,
                products.get(&t(i, t(i, xy.clone(), z.clone()), w.clone()))?,
                products.get(&t(i, t(i, x.clone(), yz.clone()), w.clone()))?,
            )?;
            let second = products.associator(i, &x, &yz, &w)?;
            let a_yzw = products.associator(i, &y, &z, &w)?;
            let id_x = EnrichedFunctor::identity(products.get(&x)?);
            let third = tensor_functors_between(
                &id_x,
                &a_yzw,
                i,
                products.get(&t(i, x.clone(), t(i, yz.clone(), w.clone())))?,
                products.get(&t(i, x.clone(), t(i, y.clone(), zw.clone())))?,
            )?;
            let right = compose_enriched_functors(&third, &compose_enriched_functors(&second, &first)?)?;
            pentagon.instance();
            if let Some(mut wit) = functor_difference(&left, &right) {
                wit.diagram = format!("associator-pentagon({i})");
                wit.index = [q[0], q[1], q[2], q[3]].iter().map(|&s| names[s].to_string()).chain(wit.index).collect();
                pentagon.fail(wit);
            }
        }
        report.push_counted(format!("V.pentagon({ti})"), pentagon.finish());

        report.push(two_naturality(&mut products, i, &names)?);
    }

    let mut domain: Vec<Ob> = sample.iter().flat_map(|c| c.hom_objects()).chain([v.unit()]).collect();
    domain.sort();
    domain.dedup();
    for i in 1..k {
        let out = pentagon_outcome(v, i + 1, &domain, options);
        component_outcome(&mut report, format!("pentagon({i})"), out);
        for j in i + 1..k {
            let (a, b) = (i + 1, j + 1);
            let shifted = [
                (format!("internal-unit({i},{j})"), internal_unit_outcome(v, a, b, &domain, options)),
                (format!("external-unit({i},{j})"), external_unit_outcome(v, a, b, &domain, options)),
                (format!("internal-assoc({i},{j})"), interchange_assoc_outcome(v, a, b, AssocMode::Internal, &domain, options)),
                (format!("external-assoc({i},{j})"), interchange_assoc_outcome(v, a, b, AssocMode::External, &domain, options)),
            ];
            for (name, out) in shifted {
                component_outcome(&mut report, name, out);
            }
            for l in j + 1..k {
                let out = giant_hexagon_outcome(v, (a, b, l + 1), &domain, options);
                component_outcome(&mut report, format!("giant-hexagon({i},{j},{l})"), out);
            }
        }
    }
    if k < 3 {
        report.push(CheckOutcome::not_applicable("interchange", "not applicable (k−1 < 2)"));
    }
    report.set_elapsed(started.elapsed());
    Ok(report)
}

fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n * n * n * n).map(move |p| [p / (n * n * n), (p / (n * n)) % n, (p / n) % n, p % n])
}

/// Records a component-level axiom of `η^(1)` under its delooped indices.
fn component_outcome(report: &mut DiagramReport, name: String, mut out: CheckOutcome) {
    let shifted = std::mem::replace(&mut out.name, format!("components/{name}"));
    out.note = Some(format!("evaluated as {shifted} in V"));
    report.push_counted(format!("VCat.{name}"), out);
}

/// Compares the tables of `ℐ ⊗ 𝒜` (or `𝒜 ⊗ ℐ`) with those of `𝒜` under
/// the relabeling `(0,a) ↦ a`, which is the identity on indices.
fn absorption_outcome(name: String, product: &EnrichedCategory, a: &EnrichedCategory) -> CheckOutcome {
    let mut check = CheckBuilder::new(name.clone());
    let c = a.base().base();
    let n = a.num_objects();
    if product.num_objects() != n {
        check.fail(Witness {
            diagram: name,
            index: Vec::new(),
            left: format!("{} objects", product.num_objects()),
            right: format!("{n} objects"),
            note: None,
        });
        return check.finish();
    }
    let obj = |x: usize| a.object_name(x).to_string();
    for x in 0..n {
        for y in 0..n {
            let (l, r) = (product.hom(x, y), a.hom(x, y));
            let legs = Ok((c.object_name(l).to_string(), c.object_name(r).to_string()));
            check.compare(|| vec!["hom".into(), obj(x), obj(y)], legs, l == r);
            for z in 0..n {
                let (l, r) = (product.comp(x, y, z), a.comp(x, y, z));
                check.compare_morphisms(c, || vec!["M".into(), obj(x), obj(y), obj(z)], Ok((l, r)));
            }
        }
        check.compare_morphisms(c, || vec!["j".into(), obj(x)], Ok((product.ident(x), a.ident(x))));
    }
    check.finish()
}

/// `α^(1) ∘ ((θ⊗θ')⊗θ'') = (θ⊗(θ'⊗θ'')) ∘ α^(1)` as whiskered composites, for
/// natural endotransformations of the identity functors on the samples.
fn two_naturality(products: &mut Products, i: usize, names: &[&str]) -> Result<CheckOutcome> {
    let name = format!("2-naturality({i})");
    let n = products.leaves.len();
    let mut cells: Vec<Vec<EnrichedNatTransf>> = Vec::with_capacity(n);
    for x in 0..n {
        let id = EnrichedFunctor::identity(products.leaves[x].clone());
        cells.push(enumerate_transformations(&id, &id, TRANSFORMATIONS_PER_SAMPLE)?);
    }
    let mut check = CheckBuilder::new(name.clone());
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (lx, ly, lz) = (Term::Leaf(x), Term::Leaf(y), Term::Leaf(z));
                let alpha = products.associator(i, &lx, &ly, &lz)?;
                let xy = products.get(&t(i, lx.clone(), ly.clone()))?;
                let yz = products.get(&t(i, ly.clone(), lz.clone()))?;
                let id = |c: &Arc<EnrichedCategory>| EnrichedFunctor::identity(c.clone());
                let (src, tgt) = (alpha.source().clone(), alpha.target().clone());
                for (a, ta) in cells[x].iter().enumerate() {
                    for (b, tb) in cells[y].iter().enumerate() {
                        for (d, td) in cells[z].iter().enumerate() {
                            let left_in = tensor_transformations(ta, tb, i, id(&xy), id(&xy))?;
                            let left_in = tensor_transformations(&left_in, td, i, id(&src), id(&src))?;
                            let right_in = tensor_transformations(tb, td, i, id(&yz), id(&yz))?;
                            let right_in = tensor_transformations(ta, &right_in, i, id(&tgt), id(&tgt))?;
                            let left = whisker_left(&alpha, &left_in)?;
                            let right = whisker_right(&right_in, &alpha)?;
                            check.instance();
                            if let Some(pos) = (0..left.components().len()).find(|&p| left.component(p) != right.component(p)) {
                                let c = src.base().base();
                                check.fail(Witness {
                                    diagram: name.clone(),
                                    index: vec![
                                        format!("{}#{a}", names[x]),
                                        format!("{}#{b}", names[y]),
                                        format!("{}#{d}", names[z]),
                                        src.object_name(pos).to_string(),
                                    ],
                                    left: c.morphism_name(left.component(pos)).to_string(),
                                    right: c.morphism_name(right.component(pos)).to_string(),
                                    note: None,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(check.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn boolean_and_sign_replays_pass() {
        let b = corpus::chain_preorder().base().clone();
        let r = verify_delooping(&b, &[corpus::chain_preorder(), corpus::vee_preorder()], &CheckOptions::default()).unwrap();
        assert!(r.passed(), "{r}");
        let s = corpus::constant_category().base().clone();
        let r = verify_delooping(&s, &[corpus::constant_category(), corpus::twisted_category()], &CheckOptions::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("interchange(1,2)")));
    }

    #[test]
    fn foreign_sample_is_a_base_mismatch() {
        let s = corpus::constant_category().base().clone();
        let err = verify_delooping(&s, &[corpus::chain_preorder()], &CheckOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BaseMismatch(_)));
    }

    #[test]
    fn k2_marks_interchange_not_applicable() {
        let v = Arc::new(corpus::sign_kfold(2));
        let k = corpus::constant_category().rebased(v.clone()).unwrap();
        let r = verify_delooping(&v, &[k], &CheckOptions::default()).unwrap();
        assert!(r.passed());
        let na = r.check("interchange").unwrap();
        assert_eq!(na.note.as_deref(), Some("not applicable (k−1 < 2)"));
    }
}

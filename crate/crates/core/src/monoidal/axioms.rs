use super::KFoldStructure;
use crate::error::Result;
use crate::fincat::{check_functor_laws, check_naturality, ExprContext, ExprFunctor, Mor, Ob};
use crate::report::{CheckBuilder, CheckOptions, CheckOutcome, DiagramReport, TuplePlan, Witness};

/// Objects an axiom is quantified over.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum AxiomDomain {
    #[default]
    All,
    Objects(Vec<Ob>),
}

impl AxiomDomain {
    pub(crate) fn resolve(&self, v: &KFoldStructure) -> Vec<Ob> {
        match self {
            AxiomDomain::All => v.base().objects().collect(),
            AxiomDomain::Objects(obs) => obs.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocMode {
    Internal,
    External,
}

fn names(v: &KFoldStructure, obs: &[Ob]) -> Vec<String> {
    obs.iter().map(|&a| v.base().object_name(a).to_string()).collect()
}

/// Runs `legs` on every tuple of `arity` objects from `domain`.
fn tuple_check(
    name: String,
    v: &KFoldStructure,
    domain: &[Ob],
    arity: usize,
    options: &CheckOptions,
    mut legs: impl FnMut(&[Ob]) -> Result<(Mor, Mor)>,
) -> CheckOutcome {
    let plan = TuplePlan::new(domain.len(), arity, options);
    let mut check = CheckBuilder::new(name).sampled(plan.sampling.clone());
    let mut tuple = Vec::with_capacity(arity);
    plan.for_each(|t| {
        tuple.clear();
        tuple.extend(t.iter().map(|&i| domain[i]));
        check.compare_morphisms(v.base(), || names(v, &tuple), legs(&tuple));
    });
    check.finish()
}

pub(crate) fn pentagon_outcome(v: &KFoldStructure, i: usize, domain: &[Ob], options: &CheckOptions) -> CheckOutcome {
    let c = v.base();
    tuple_check(format!("pentagon({i})"), v, domain, 4, options, |t| {
        let (u, w1, w2, x) = (t[0], t[1], t[2], t[3]);
        let left = c.path(&[v.alpha(i, v.ob(i, u, w1), w2, x), v.alpha(i, u, w1, v.ob(i, w2, x))])?;
        let right = c.path(&[
            v.mor(i, v.alpha(i, u, w1, w2), v.id(x)),
            v.alpha(i, u, v.ob(i, w1, w2), x),
            v.mor(i, v.id(u), v.alpha(i, w1, w2, x)),
        ])?;
        Ok((left, right))
    })
}

/// The associativity pentagon for `α^i` on every object quadruple.
pub fn check_pentagon(v: &KFoldStructure, i: usize, options: &CheckOptions) -> Result<DiagramReport> {
    v.check_index(i)?;
    let started = std::time::Instant::now();
    let mut report = DiagramReport::new(format!("pentagon({i})"));
    report.push(pentagon_outcome(v, i, &AxiomDomain::All.resolve(v), options));
    report.set_elapsed(started.elapsed());
    Ok(report)
}

fn strict_units_outcome(v: &KFoldStructure) -> CheckOutcome {
    let c = v.base();
    let unit = v.unit();
    let mut check = CheckBuilder::new("strict-units");
    for i in 1..=v.k() {
        for a in c.objects() {
            for (label, got) in [(format!("I⊗{i}{}", c.object_name(a)), v.ob(i, unit, a)), (format!("{}⊗{i}I", c.object_name(a)), v.ob(i, a, unit))] {
                check.compare(
                    || vec![label],
                    Ok((c.object_name(got).to_string(), c.object_name(a).to_string())),
                    got == a,
                );
            }
        }
        let one = v.id(unit);
        for f in c.morphisms() {
            for (label, got) in [(format!("1⊗{i}{}", c.morphism_name(f)), v.mor(i, one, f)), (format!("{}⊗{i}1", c.morphism_name(f)), v.mor(i, f, one))] {
                check.compare_morphisms(c, || vec![label], Ok((got, f)));
            }
        }
    }
    check.finish()
}

/// `I ⊗_i A = A = A ⊗_i I` on objects and `1_I ⊗_i f = f = f ⊗_i 1_I` on
/// morphisms, for every tensor.
pub fn check_strict_units(v: &KFoldStructure) -> DiagramReport {
    let started = std::time::Instant::now();
    let mut report = DiagramReport::new("strict-units");
    report.push(strict_units_outcome(v));
    report.set_elapsed(started.elapsed());
    report
}

pub(crate) fn internal_unit_outcome(v: &KFoldStructure, i: usize, j: usize, domain: &[Ob], options: &CheckOptions) -> CheckOutcome {
    let unit = v.unit();
    let plan = TuplePlan::new(domain.len(), 2, options);
    let mut check = CheckBuilder::new(format!("internal-unit({i},{j})")).sampled(plan.sampling.clone());
    plan.for_each(|t| {
        let (a, b) = (domain[t[0]], domain[t[1]]);
        let one = v.id(v.ob(j, a, b));
        check.compare_morphisms(v.base(), || names(v, &[a, b, unit, unit]), Ok((v.eta(i, j, a, b, unit, unit), one)));
        check.compare_morphisms(v.base(), || names(v, &[unit, unit, a, b]), Ok((v.eta(i, j, unit, unit, a, b), one)));
    });
    check.finish()
}

pub(crate) fn external_unit_outcome(v: &KFoldStructure, i: usize, j: usize, domain: &[Ob], options: &CheckOptions) -> CheckOutcome {
    let unit = v.unit();
    let plan = TuplePlan::new(domain.len(), 2, options);
    let mut check = CheckBuilder::new(format!("external-unit({i},{j})")).sampled(plan.sampling.clone());
    plan.for_each(|t| {
        let (a, b) = (domain[t[0]], domain[t[1]]);
        let one = v.id(v.ob(i, a, b));
        check.compare_morphisms(v.base(), || names(v, &[a, unit, b, unit]), Ok((v.eta(i, j, a, unit, b, unit), one)));
        check.compare_morphisms(v.base(), || names(v, &[unit, a, unit, b]), Ok((v.eta(i, j, unit, a, unit, b), one)));
    });
    check.finish()
}

/// Internal (`η_{ABII} = η_{IIAB} = 1`) and external (`η_{AIBI} = η_{IAIB} = 1`)
/// unit conditions for `η^{ij}`.
pub fn check_interchange_units(v: &KFoldStructure, i: usize, j: usize) -> Result<DiagramReport> {
    v.check_pair(i, j)?;
    let started = std::time::Instant::now();
    let domain = AxiomDomain::All.resolve(v);
    let options = CheckOptions::default();
    let mut report = DiagramReport::new(format!("interchange-units({i},{j})"));
    report.push(internal_unit_outcome(v, i, j, &domain, &options));
    report.push(external_unit_outcome(v, i, j, &domain, &options));
    report.set_elapsed(started.elapsed());
    Ok(report)
}

pub(crate) fn interchange_assoc_outcome(
    v: &KFoldStructure,
    i: usize,
    j: usize,
    mode: AssocMode,
    domain: &[Ob],
    options: &CheckOptions,
) -> CheckOutcome {
    let c = v.base();
    match mode {
        AssocMode::Internal => tuple_check(format!("internal-assoc({i},{j})"), v, domain, 6, options, |t| {
            let (u, w1, w, x, y, z) = (t[0], t[1], t[2], t[3], t[4], t[5]);
            let (uv, wx, yz) = (v.ob(j, u, w1), v.ob(j, w, x), v.ob(j, y, z));
            let left = c.path(&[
                v.alpha(i, uv, wx, yz),
                v.mor(i, v.id(uv), v.eta(i, j, w, x, y, z)),
                v.eta(i, j, u, w1, v.ob(i, w, y), v.ob(i, x, z)),
            ])?;
            let right = c.path(&[
                v.mor(i, v.eta(i, j, u, w1, w, x), v.id(yz)),
                v.eta(i, j, v.ob(i, u, w), v.ob(i, w1, x), y, z),
                v.mor(j, v.alpha(i, u, w, y), v.alpha(i, w1, x, z)),
            ])?;
            Ok((left, right))
        }),
        AssocMode::External => tuple_check(format!("external-assoc({i},{j})"), v, domain, 6, options, |t| {
            let (u, w1, w, x, y, z) = (t[0], t[1], t[2], t[3], t[4], t[5]);
            let left = c.path(&[
                v.mor(i, v.alpha(j, u, w1, w), v.alpha(j, x, y, z)),
                v.eta(i, j, u, v.ob(j, w1, w), x, v.ob(j, y, z)),
                v.mor(j, v.id(v.ob(i, u, x)), v.eta(i, j, w1, w, y, z)),
            ])?;
            let right = c.path(&[
                v.eta(i, j, v.ob(j, u, w1), w, v.ob(j, x, y), z),
                v.mor(j, v.eta(i, j, u, w1, x, y), v.id(v.ob(i, w, z))),
                v.alpha(j, v.ob(i, u, x), v.ob(i, w1, y), v.ob(i, w, z)),
            ])?;
            Ok((left, right))
        }),
    }
}

/// The internal or external associativity hexagon for `η^{ij}` on every
/// object sextuple.
pub fn check_interchange_assoc(
    v: &KFoldStructure,
    i: usize,
    j: usize,
    mode: AssocMode,
    options: &CheckOptions,
) -> Result<DiagramReport> {
    v.check_pair(i, j)?;
    let started = std::time::Instant::now();
    let outcome = interchange_assoc_outcome(v, i, j, mode, &AxiomDomain::All.resolve(v), options);
    let mut report = DiagramReport::new(outcome.name.clone());
    report.push(outcome);
    report.set_elapsed(started.elapsed());
    Ok(report)
}

pub(crate) fn giant_hexagon_outcome(
    v: &KFoldStructure,
    (i, j, k): (usize, usize, usize),
    domain: &[Ob],
    options: &CheckOptions,
) -> CheckOutcome {
    let c = v.base();
    tuple_check(format!("giant-hexagon({i},{j},{k})"), v, domain, 8, options, |t| {
        let (a, a2, b, b2, cc, c2, d, d2) = (t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7]);
        let left = c.path(&[
            v.mor(i, v.eta(j, k, a, a2, b, b2), v.eta(j, k, cc, c2, d, d2)),
            v.eta(i, k, v.ob(j, a, b), v.ob(j, a2, b2), v.ob(j, cc, d), v.ob(j, c2, d2)),
            v.mor(k, v.eta(i, j, a, b, cc, d), v.eta(i, j, a2, b2, c2, d2)),
        ])?;
        let right = c.path(&[
            v.eta(i, j, v.ob(k, a, a2), v.ob(k, b, b2), v.ob(k, cc, c2), v.ob(k, d, d2)),
            v.mor(j, v.eta(i, k, a, a2, cc, c2), v.eta(i, k, b, b2, d, d2)),
            v.eta(j, k, v.ob(i, a, cc), v.ob(i, a2, c2), v.ob(i, b, d), v.ob(i, b2, d2)),
        ])?;
        Ok((left, right))
    })
}

/// The giant hexagon relating `η^{ij}`, `η^{ik}` and `η^{jk}` on every
/// object 8-tuple, or on a seeded sample when `|Ob|^8` exceeds the budget.
pub fn check_giant_hexagon(v: &KFoldStructure, i: usize, j: usize, k: usize, options: &CheckOptions) -> Result<DiagramReport> {
    v.check_pair(i, j)?;
    v.check_pair(j, k)?;
    let started = std::time::Instant::now();
    let outcome = giant_hexagon_outcome(v, (i, j, k), &AxiomDomain::All.resolve(v), options);
    let mut report = DiagramReport::new(outcome.name.clone());
    report.push(outcome);
    report.set_elapsed(started.elapsed());
    Ok(report)
}

fn iso_outcome(v: &KFoldStructure, i: usize) -> CheckOutcome {
    let c = v.base();
    let alpha = &v.associators()[i - 1];
    let mut check = CheckBuilder::new(format!("iso({})", alpha.name()));
    for (offset, &f) in alpha.components().iter().enumerate() {
        check.instance();
        if c.inverse(f).is_none() {
            let idx = alpha.index_of(offset);
            check.fail(Witness {
                diagram: format!("iso({})", alpha.name()),
                index: names(v, &idx),
                left: c.morphism_name(f).to_string(),
                right: "<inverse>".into(),
                note: Some(format!("component `{}` has no two-sided inverse", c.morphism_name(f))),
            });
        }
    }
    check.finish()
}

/// Pairs `(i, j)` whose interchanger is the identity everywhere. For such a
/// pair the unit conditions force `⊗_i` and `⊗_j` to coincide.
pub fn collapsed_pairs(v: &KFoldStructure) -> Vec<(usize, usize)> {
    let c = v.base();
    v.interchangers()
        .iter()
        .filter(|(_, eta)| eta.components().iter().all(|&f| c.is_identity(f)))
        .map(|(&pair, _)| pair)
        .collect()
}

fn collapse_outcome(v: &KFoldStructure, i: usize, j: usize) -> CheckOutcome {
    let c = v.base();
    let mut check = CheckBuilder::new(format!("collapse({i},{j})"));
    for a in c.objects() {
        for b in c.objects() {
            let (x, y) = (v.ob(i, a, b), v.ob(j, a, b));
            check.compare(
                || vec![c.object_name(a).to_string(), c.object_name(b).to_string()],
                Ok((c.object_name(x).to_string(), c.object_name(y).to_string())),
                x == y,
            );
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            check.compare_morphisms(
                c,
                || vec![c.morphism_name(f).to_string(), c.morphism_name(g).to_string()],
                Ok((v.mor(i, f, g), v.mor(j, f, g))),
            );
        }
    }
    let mut out = check.finish();
    out.note = Some(format!("η^{i},{j} is the identity, so ⊗{i} and ⊗{j} must agree"));
    out
}

fn naturality_outcomes(v: &KFoldStructure, family: &crate::fincat::NatFamily, options: &CheckOptions) -> Vec<CheckOutcome> {
    let ctx = ExprContext::new(v);
    let source = ExprFunctor::new(family.source(), family.arity(), ctx);
    let target = ExprFunctor::new(family.target(), family.arity(), ctx);
    match check_naturality(&source, &target, family, options) {
        Ok(report) => report.checks,
        Err(err) => vec![CheckOutcome::error(format!("naturality({})", family.name()), &err)],
    }
}

/// The full axiom suite: functor laws for each tensor, associators
/// invertible and natural, pentagons, strict units, interchanger naturality,
/// the four unit/associativity conditions for every pair and the giant
/// hexagon for every triple.
pub fn check_kfold(v: &KFoldStructure, options: &CheckOptions) -> DiagramReport {
    let started = std::time::Instant::now();
    let k = v.k();
    let domain = AxiomDomain::All.resolve(v);
    let mut report = DiagramReport::new(format!("kfold(k={k})"));
    for i in 1..=k {
        match v.tensor_functor(i) {
            Ok(t) => report.absorb(&format!("tensor({i})"), check_functor_laws(&t)),
            Err(err) => report.push(CheckOutcome::error(format!("tensor({i})"), &err)),
        }
    }
    report.push_counted("strict-units", strict_units_outcome(v));
    for i in 1..=k {
        let alpha = &v.associators()[i - 1];
        report.push(iso_outcome(v, i));
        for check in naturality_outcomes(v, alpha, options) {
            report.push(check);
        }
        report.push_counted(format!("pentagon({i})"), pentagon_outcome(v, i, &domain, options));
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let eta = &v.interchangers()[&(i, j)];
            for check in naturality_outcomes(v, eta, options) {
                report.push(check);
            }
            report.push_counted(format!("internal-unit({i},{j})"), internal_unit_outcome(v, i, j, &domain, options));
            report.push_counted(format!("external-unit({i},{j})"), external_unit_outcome(v, i, j, &domain, options));
            for mode in [AssocMode::Internal, AssocMode::External] {
                let check = interchange_assoc_outcome(v, i, j, mode, &domain, options);
                report.push_counted(check.name.clone(), check);
            }
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            for l in j + 1..=k {
                let check = giant_hexagon_outcome(v, (i, j, l), &domain, options);
                report.push_counted(check.name.clone(), check);
            }
        }
    }
    for (i, j) in collapsed_pairs(v) {
        report.push(collapse_outcome(v, i, j));
    }
    report.set_elapsed(started.elapsed());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::report::Status;

    #[test]
    fn bundled_structures_pass() {
        let opts = CheckOptions::default();
        for v in [corpus::boolean_kfold(3), corpus::sign_kfold(3)] {
            let r = check_kfold(&v, &opts);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn sign_giant_hexagon_is_exhaustive_over_256_tuples() {
        let r = check_giant_hexagon(&corpus::sign_kfold(3), 1, 2, 3, &CheckOptions::default()).unwrap();
        let check = &r.checks[0];
        assert_eq!(check.status, Status::Pass);
        assert_eq!(check.instances, 256);
    }

    #[test]
    fn associator_mutations_at_xxx() {
        let v = corpus::sign_kfold(3);
        let b = v.base();
        let x = b.object("X").unwrap();
        // α_{XXX} is an endomorphism of X, so g0 is ill typed and the legs
        // stop composing at (X,X,X,X).
        let bad = v.with_associator_component(1, &[x, x, x], b.morphism("g0").unwrap()).unwrap();
        let r = check_pentagon(&bad, 1, &CheckOptions::default()).unwrap();
        assert!(r.checks[0].witnesses.iter().any(|w| w.index == ["X", "X", "X", "X"]), "{r}");
        // g1 is the cocycle abc on Z/2, which satisfies the pentagon; the
        // interchange axioms are what reject it.
        let bad = v.with_associator_component(1, &[x, x, x], b.morphism("g1").unwrap()).unwrap();
        assert!(check_pentagon(&bad, 1, &CheckOptions::default()).unwrap().passed());
        let r = check_kfold(&bad, &CheckOptions::default());
        let failing: Vec<&str> = r.failing().map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["internal-assoc(1,2)", "internal-assoc(1,3)"]);
    }

    #[test]
    fn strict_unit_mutation_is_caught() {
        let v = corpus::sign_kfold(2);
        let (i, x) = (v.unit(), v.base().object("X").unwrap());
        let bad = v.with_tensor_object(1, i, x, i).unwrap();
        assert!(!check_strict_units(&bad).passed());
    }

    #[test]
    fn external_unit_holds_for_sign_and_internal_mutation_fails() {
        let v = corpus::sign_kfold(2);
        let b = v.base();
        let (i, x) = (v.unit(), b.object("X").unwrap());
        assert_eq!(v.eta(1, 2, x, i, x, i), v.id(v.ob(1, x, x)));
        assert!(check_interchange_units(&v, 1, 2).unwrap().passed());
        let bad = v.with_interchange_component(1, 2, &[x, x, i, i], b.morphism("g0").unwrap()).unwrap();
        let r = check_interchange_units(&bad, 1, 2).unwrap();
        let check = r.check("internal-unit(1,2)").unwrap();
        assert!(!check.passed());
        assert_eq!(check.witnesses[0].index, vec!["X", "X", "I", "I"]);
    }

    #[test]
    fn flipping_eta_xxxx_breaks_internal_assoc() {
        let v = corpus::sign_kfold(2);
        let b = v.base();
        let x = b.object("X").unwrap();
        let bad = v.with_interchange_component(1, 2, &[x, x, x, x], b.morphism("e0").unwrap()).unwrap();
        let r = check_interchange_assoc(&bad, 1, 2, AssocMode::Internal, &CheckOptions::default()).unwrap();
        assert!(!r.passed());
        assert!(r.checks[0].witnesses.iter().any(|w| w.index.windows(4).any(|q| q == ["X", "X", "X", "X"])));
    }

    #[test]
    fn negating_an_eta13_component_breaks_the_giant_hexagon() {
        let v = corpus::sign_kfold(3);
        let b = v.base();
        let x = b.object("X").unwrap();
        let bad = v.with_interchange_component(1, 3, &[x, x, x, x], b.morphism("e0").unwrap()).unwrap();
        let r = check_giant_hexagon(&bad, 1, 2, 3, &CheckOptions::default()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.checks[0].witnesses[0].index.len(), 8);
    }

    #[test]
    fn sampling_kicks_in_over_budget() {
        let opts = CheckOptions {
            exhaustive_budget: 100,
            sample: 50,
            seed: 3,
        };
        let r = check_giant_hexagon(&corpus::sign_kfold(3), 1, 2, 3, &opts).unwrap();
        assert_eq!(r.checks[0].status, Status::SampledPass);
        assert_eq!(r.checks[0].instances, 50);
    }

    #[test]
    fn restriction_preserves_passing() {
        let v = corpus::sign_kfold(3);
        let sub = v.restrict(&[v.unit()]).unwrap();
        assert!(check_kfold(&sub, &CheckOptions::default()).passed());
    }

    #[test]
    fn thin_structure_reports_collapse() {
        let v = corpus::boolean_kfold(3);
        assert_eq!(collapsed_pairs(&v), vec![(1, 2), (1, 3), (2, 3)]);
        let r = check_kfold(&v, &CheckOptions::default());
        assert!(r.check("collapse(1,2)").unwrap().passed());
    }

    #[test]
    fn out_of_range_indices() {
        let v = corpus::sign_kfold(2);
        assert!(check_pentagon(&v, 3, &CheckOptions::default()).is_err());
        assert!(check_giant_hexagon(&v, 1, 2, 3, &CheckOptions::default()).is_err());
        assert!(check_interchange_units(&v, 2, 2).is_err());
    }
}

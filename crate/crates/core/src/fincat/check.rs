use super::{FinCategory, Mor};
use crate::report::{CheckBuilder, DiagramReport, Witness};

fn names(c: &FinCategory, ms: &[Mor]) -> Vec<String> {
    ms.iter().map(|&m| c.morphism_name(m).to_string()).collect()
}

/// Typing, unit laws and associativity of a composition table, checked on
/// every object, morphism and composable triple.
pub fn check_category_laws(c: &FinCategory) -> DiagramReport {
    let started = std::time::Instant::now();
    let mut report = DiagramReport::new("category-laws");

    let mut typing = CheckBuilder::new("typing");
    for a in c.objects() {
        typing.instance();
        let id = c.identity(a);
        if c.dom(id) != a || c.cod(id) != a {
            typing.fail(Witness {
                diagram: "typing".into(),
                index: vec![c.object_name(a).to_string()],
                left: c.morphism_name(id).to_string(),
                right: format!("1_{}", c.object_name(a)),
                note: Some(format!("identity `{}` is not an endomorphism of `{}`", c.morphism_name(id), c.object_name(a))),
            });
        }
    }
    for (g, f, h) in c.composition_entries() {
        typing.instance();
        if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
            typing.fail(Witness {
                diagram: "typing".into(),
                index: names(c, &[g, f]),
                left: c.morphism_name(h).to_string(),
                right: format!("{} → {}", c.object_name(c.dom(f)), c.object_name(c.cod(g))),
                note: Some(format!(
                    "composite `{}` has type {} → {}",
                    c.morphism_name(h),
                    c.object_name(c.dom(h)),
                    c.object_name(c.cod(h))
                )),
            });
        }
    }
    report.push(typing.finish());

    let mut units = CheckBuilder::new("unit-laws");
    for f in c.morphisms() {
        let left = c.compose(c.identity(c.cod(f)), f);
        units.compare(
            || vec![format!("1∘{}", c.morphism_name(f))],
            left.clone().map(|l| (c.morphism_name(l).to_string(), c.morphism_name(f).to_string())),
            left == Ok(f),
        );
        let right = c.compose(f, c.identity(c.dom(f)));
        units.compare(
            || vec![format!("{}∘1", c.morphism_name(f))],
            right.clone().map(|r| (c.morphism_name(r).to_string(), c.morphism_name(f).to_string())),
            right == Ok(f),
        );
    }
    report.push(units.finish());

    let mut assoc = CheckBuilder::new("associativity");
    for f in c.morphisms() {
        for a in c.objects() {
            for &g in c.hom(c.cod(f), a) {
                for b in c.objects() {
                    for &h in c.hom(a, b) {
                        let left = c.compose(g, f).and_then(|gf| c.compose(h, gf));
                        let right = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                        let legs = left
                            .clone()
                            .and_then(|l| right.clone().map(|r| (c.morphism_name(l).to_string(), c.morphism_name(r).to_string())));
                        let equal = matches!((&left, &right), (Ok(l), Ok(r)) if l == r);
                        assoc.compare(|| names(c, &[h, g, f]), legs, equal);
                    }
                }
            }
        }
    }
    report.push(assoc.finish());
    report.set_elapsed(started.elapsed());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fincat::FinCategory;

    #[test]
    fn boolean_poset_passes() {
        assert!(check_category_laws(&corpus::boolean_poset_category()).passed());
    }

    #[test]
    fn sign_category_passes() {
        let r = check_category_laws(&corpus::sign_category());
        assert!(r.passed(), "{r}");
        // S has 4 morphisms; composable triples live inside the two Z/2 groups: 2 * 2^3.
        assert_eq!(r.check("associativity").unwrap().instances, 16);
    }

    #[test]
    fn degenerate_categories_pass_vacuously() {
        assert!(check_category_laws(&FinCategory::empty()).passed());
        assert!(check_category_laws(&FinCategory::terminal()).passed());
    }

    #[test]
    fn idempotent_mutation_is_still_a_category() {
        // Redefining g1∘g1 := g1 turns End(X) into the monoid {1, g} with g² = g,
        // which satisfies every category law.
        let s = corpus::sign_category();
        let g1 = s.morphism("g1").unwrap();
        let mutated = s.with_composite(g1, g1, g1).unwrap();
        assert!(check_category_laws(&mutated).passed());
    }

    #[test]
    fn unit_law_mutation_is_caught() {
        let s = corpus::sign_category();
        let (g1, e1) = (s.morphism("g1").unwrap(), s.morphism("e1").unwrap());
        let mutated = s.with_composite(g1, e1, e1).unwrap();
        let r = check_category_laws(&mutated);
        assert!(!r.check("unit-laws").unwrap().passed());
        let w = &r.check("unit-laws").unwrap().witnesses[0];
        assert_eq!(w.index, vec!["g1∘1".to_string()]);
    }

    #[test]
    fn ill_typed_composite_is_caught() {
        let s = corpus::sign_category();
        let (g1, g0) = (s.morphism("g1").unwrap(), s.morphism("g0").unwrap());
        let mutated = s.with_composite(g1, g1, g0).unwrap();
        let r = check_category_laws(&mutated);
        assert!(!r.check("typing").unwrap().passed());
    }
}

//! Enriched structures over the sign category judged by sign arithmetic.
//!
//! A morphism of `S` is a pair (parity, sign). With strict associators and
//! units, `M` is associative iff its signs `σ` satisfy
//! `σ(a,c,d) + σ(a,b,c) = σ(b,c,d) + σ(a,b,d)`, and unital iff
//! `σ(a,b,b) + ι(b) = 0` and `σ(a,a,b) + ι(a) = 0`, where `ι` are the signs of `j`.

use std::sync::Arc;

use itermon::corpus;
use itermon::enrich::{check_enriched_category, EnrichedCategory};
use itermon::fincat::{Mor, Ob};
use itermon::report::CheckOptions;

fn oracle(n: usize, sigma: impl Fn(usize, usize, usize) -> usize, iota: impl Fn(usize) -> usize) -> bool {
    for a in 0..n {
        for b in 0..n {
            if !(sigma(a, b, b) + iota(b)).is_multiple_of(2) || !(sigma(a, a, b) + iota(a)).is_multiple_of(2) {
                return false;
            }
            for c in 0..n {
                for d in 0..n {
                    if (sigma(a, c, d) + sigma(a, b, c)) % 2 != (sigma(b, c, d) + sigma(a, b, d)) % 2 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn sign_mor(parity: usize, sign: usize) -> Mor {
    // e0, g0, e1, g1
    Mor(parity * 2 + sign)
}

#[test]
fn all_structures_on_the_two_object_constant_hom_table() {
    let v = Arc::new(corpus::sign_kfold(3));
    let unit = v.unit();
    let mut agreed = 0;
    let mut valid = 0;
    for bits in 0u32..1 << 10 {
        let sigma = |a: usize, b: usize, c: usize| (bits >> ((a * 2 + b) * 2 + c) & 1) as usize;
        let iota = |a: usize| (bits >> (8 + a) & 1) as usize;
        let cat = EnrichedCategory::from_fns(
            "k",
            v.clone(),
            vec!["p".into(), "q".into()],
            |_, _| unit,
            |a, b, c| Ok(sign_mor(0, sigma(a, b, c))),
            |a| Ok(sign_mor(0, iota(a))),
        )
        .unwrap();
        let expected = oracle(2, sigma, iota);
        assert_eq!(check_enriched_category(&cat, &CheckOptions::default()).passed(), expected, "bits {bits:010b}");
        agreed += 1;
        valid += usize::from(expected);
    }
    assert_eq!(agreed, 1024);
    // The solutions are the coboundaries σ = δφ with ι(x) = φ(x,x): 16 choices
    // of φ, and δφ = 0 exactly when φ vanishes on the diagonal and is symmetric.
    assert_eq!(valid, 8);
}

#[test]
fn twisted_fixture_is_among_the_coboundary_twists() {
    let fixture = corpus::twisted_category();
    let v = fixture.base().clone();
    let grade = [0usize, 1, 1];
    let hom = |a: usize, b: usize| Ob((grade[a] + grade[b]) % 2);
    let mut passing = Vec::new();
    for phi_bits in 0u32..1 << 9 {
        let phi = |a: usize, b: usize| (phi_bits >> (a * 3 + b) & 1) as usize;
        let sigma = |a: usize, b: usize, c: usize| (phi(b, c) + phi(a, b) + phi(a, c)) % 2;
        let cat = EnrichedCategory::from_fns(
            "t",
            v.clone(),
            vec!["p".into(), "q".into(), "r".into()],
            hom,
            |a, b, c| Ok(sign_mor((grade[a] + grade[c]) % 2, sigma(a, b, c))),
            |a| Ok(v.id(hom(a, a))),
        )
        .unwrap();
        let expected = oracle(3, sigma, |_| 0);
        let got = check_enriched_category(&cat, &CheckOptions::default()).passed();
        assert_eq!(got, expected, "φ bits {phi_bits:09b}");
        // Coboundaries satisfy the cocycle identity; units need φ(x,x) = 0.
        assert_eq!(expected, (0..3).all(|x| phi(x, x) == 0));
        if got {
            passing.push(cat.composition_table().to_vec());
        }
    }
    assert!(passing.contains(&fixture.composition_table().to_vec()));
}

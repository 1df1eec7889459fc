use std::collections::BTreeSet;
use std::time::Instant;

use easyq::category::{closure, named_elements, verify_axioms, CategoryId, Regime};
use easyq::partition::{ColorWord, Partition};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn pairings(set: &BTreeSet<Partition>) -> BTreeSet<Partition> {
    set.iter().filter(|q| q.is_pairing()).cloned().collect()
}

fn named(id: CategoryId, bound: usize, regime: Regime) -> BTreeSet<Partition> {
    named_elements(id, bound, regime).unwrap().into_iter().collect()
}

#[test]
fn three_pairing_categories() {
    let start = Instant::now();
    let cases = [
        (vec![], CategoryId::NC2),
        (vec![p("ooo|ooo {u1,d3}{u2,d2}{u3,d1}")], CategoryId::P2Star),
        (vec![p("oo|oo {u1,d2}{u2,d1}")], CategoryId::P2),
    ];
    for (gens, expected) in cases {
        let cat = closure(&gens, 6, Regime::Uncolored).unwrap();
        assert_eq!(pairings(cat.elements()), named(expected, 6, Regime::Uncolored), "{expected}");
        let report = verify_axioms(&cat.elements().iter().cloned().collect::<Vec<_>>(), 6, Regime::Uncolored);
        assert!(report.passed(), "{:?}", report.defects.first());
    }
    eprintln!("uncolored closures in {:?}", start.elapsed());
}

#[test]
fn colored_closures() {
    let start = Instant::now();
    let free = closure(&[], 6, Regime::Colored).unwrap();
    assert_eq!(pairings(free.elements()), named(CategoryId::McalNC2, 6, Regime::Colored));
    let crossings: Vec<Partition> = ColorWord::all_of_length(2)
        .into_iter()
        .flat_map(|u| {
            ColorWord::all_of_length(2)
                .into_iter()
                .map(move |l| p("oo|oo {u1,d2}{u2,d1}").recolored(u.clone(), l).unwrap())
        })
        .filter(|q| q.is_matching())
        .collect();
    let full = closure(&crossings, 6, Regime::Colored).unwrap();
    assert_eq!(pairings(full.elements()), named(CategoryId::McalP2, 6, Regime::Colored));
    eprintln!("colored closures in {:?}", start.elapsed());
}

#[test]
fn closure_is_monotone() {
    let small = closure(&[], 6, Regime::Uncolored).unwrap();
    let big = closure(&[p("oo|oo {u1,d2}{u2,d1}")], 6, Regime::Uncolored).unwrap();
    assert!(small.elements().is_subset(big.elements()));
}

#[test]
fn free_closures_of_small_blocks() {
    let singletons = closure(&[p("-|o {d1}")], 6, Regime::Uncolored).unwrap();
    assert_eq!(singletons.elements(), &named(CategoryId::NC12, 6, Regime::Uncolored));
    let fork = closure(&[p("o|oo {u1,d1,d2}")], 6, Regime::Uncolored).unwrap();
    assert_eq!(fork.elements(), &named(CategoryId::NC, 6, Regime::Uncolored));
    let four = closure(&[p("oo|oo {u1,u2,d1,d2}")], 6, Regime::Uncolored).unwrap();
    assert_eq!(four.elements(), &named(CategoryId::NCEven, 6, Regime::Uncolored));
}

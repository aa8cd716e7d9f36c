mod common;

use common::{all_reduced_words, cyclic_free_product_trivial, is_relator_conjugate, ConjugateProductOracle};
use fpgroup::area::{area_search, replay_area_trace, AreaBudget, AreaStatus};
use fpgroup::{Presentation, Word};

const BUDGET: AreaBudget = AreaBudget {
    max_len: 20,
    max_cells: 12,
    max_states: 200_000,
};

fn exact(p: &Presentation, w: &Word) -> Option<usize> {
    match area_search(p, w, BUDGET).unwrap().status {
        AreaStatus::Exact { area } => Some(area),
        _ => None,
    }
}

/// Compares search and oracle on every trivial word of length ≤ 8 and
/// returns the number of matches.
fn compare(text: &str, trivial: impl Fn(&Word) -> bool) -> usize {
    let p = Presentation::parse(text).unwrap();
    let oracle = ConjugateProductOracle::new(&p, 3);
    let mut matched = 0;
    for w in all_reduced_words(p.alphabet().rank(), 8) {
        if !trivial(&w) {
            continue;
        }
        let name = format!("{}: {}", p.label(), p.alphabet().format(&w));
        let res = area_search(&p, &w, BUDGET).unwrap();
        let found = match res.status {
            AreaStatus::Exact { area } => area,
            ref s => panic!("{name}: {s:?}"),
        };
        assert!(replay_area_trace(&p, &w, &res.trace), "{name}");
        assert_eq!(res.trace.len(), found, "{name}");
        assert_eq!(found == 1, is_relator_conjugate(&p, &w), "{name}");
        match oracle.area(&w) {
            Some(k) => {
                assert_eq!(found, k, "{name}");
                matched += 1;
            }
            None => assert!(found > 4, "{name}: search {found}, oracle none"),
        }
    }
    matched
}

#[test]
fn matches_conjugate_product_oracle() {
    let mut total = 0;
    total += compare("label: z2\ngenerators: a b\nrel: a b a^-1 b^-1\n", |w| {
        w.exponent_sum(0) == 0 && w.exponent_sum(1) == 0
    });
    total += compare("label: z2*z3\ngenerators: a b\nrel: a^2\nrel: b^3\n", |w| {
        cyclic_free_product_trivial(w, &[2, 3])
    });
    total += compare("label: z*z2\ngenerators: a b\nrel: a b a^-1 b^-1\nrel: b^2\n", |w| {
        w.exponent_sum(0) == 0 && w.exponent_sum(1) % 2 == 0
    });
    total += compare("label: z3\ngenerators: a\nrel: a^3\n", |w| w.exponent_sum(0) % 3 == 0);
    eprintln!("area oracle: {total} exact matches");
    assert!(total >= 100, "only {total} cases");
}

#[test]
fn single_relators_and_free_words() {
    for text in [
        "generators: a b\nrel: a b a^-1 b^-1\n",
        "generators: a b\nrel: a^2 b^-3\n",
        "generators: a b\nrel: a b a^-1 b^-2\n",
        "generators: a b c\nrel: a b c a^-1\nrel: c^4\n",
    ] {
        let p = Presentation::parse(text).unwrap();
        for r in p.relators() {
            assert_eq!(exact(&p, r.word()), Some(1));
            assert_eq!(exact(&p, &r.word().inverse()), Some(1));
            let u = p.parse_word("a b^-1").unwrap();
            assert_eq!(exact(&p, &r.word().conjugate_by(&u)), Some(1));
        }
        let free = p.parse_word("a b b^-1 a^-1").unwrap();
        assert_eq!(exact(&p, &free), Some(0));
    }
}

#[test]
fn separated_conjugates_need_two() {
    let p = Presentation::parse("generators: a b c\nrel: a^3\nrel: b c b^-1 c^-1\n").unwrap();
    for u in ["a", "a c", "c^-1 a b"] {
        let u = p.parse_word(u).unwrap();
        let w = p.relators()[0].word().conjugate_by(&u.inverse()).concat(p.relators()[1].word());
        assert_eq!(exact(&p, &w), Some(2), "{}", p.alphabet().format(&w));
    }
}

#[test]
fn subadditive_and_conjugation_invariant() {
    let p = Presentation::parse("generators: a b\nrel: a b a^-1 b^-1\n").unwrap();
    let trivial: Vec<Word> = all_reduced_words(2, 6)
        .into_iter()
        .filter(|w| w.exponent_sum(0) == 0 && w.exponent_sum(1) == 0 && !w.is_empty())
        .collect();
    let areas: Vec<Option<usize>> = trivial.iter().map(|w| exact(&p, w)).collect();
    for (i, u) in trivial.iter().enumerate().step_by(3) {
        for (j, v) in trivial.iter().enumerate().step_by(7) {
            if let (Some(a), Some(b), Some(ab)) = (areas[i], areas[j], exact(&p, &u.concat(v))) {
                assert!(ab <= a + b);
            }
        }
        for g in ["a", "b^-1", "a b"] {
            let g = p.parse_word(g).unwrap();
            if let (Some(a), Some(c)) = (areas[i], exact(&p, &u.conjugate_by(&g))) {
                assert_eq!(a, c);
            }
        }
    }
}

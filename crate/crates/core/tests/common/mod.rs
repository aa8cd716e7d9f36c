//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use fpgroup::{Letter, Presentation, Word};

/// Longest piece inside each relator by direct comparison of every pair of
/// occurrences in the symmetrized set. A piece may not wrap a whole cyclic
/// word, so each match is capped one below both lengths.
pub fn brute_force_pieces(p: &Presentation) -> Vec<usize> {
    let mut entries: Vec<(usize, Vec<Letter>)> = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let w = r.word().letters().to_vec();
        let inv = r.word().inverse().letters().to_vec();
        let n = w.len();
        let inv_is_rotation = (0..n).any(|k| (0..n).all(|j| w[(k + j) % n] == inv[j]));
        entries.push((i, w));
        if !inv_is_rotation {
            entries.push((i, inv));
        }
    }
    let mut best = vec![0usize; p.relators().len()];
    for (e1, (r1, w1)) in entries.iter().enumerate() {
        for o1 in 0..w1.len() {
            for (e2, (_, w2)) in entries.iter().enumerate() {
                for o2 in 0..w2.len() {
                    if (e1, o1) == (e2, o2) {
                        continue;
                    }
                    let cap = w1.len().min(w2.len()) - 1;
                    let mut l = 0;
                    while l < cap && w1[(o1 + l) % w1.len()] == w2[(o2 + l) % w2.len()] {
                        l += 1;
                    }
                    best[*r1] = best[*r1].max(l);
                }
            }
        }
    }
    best
}

/// Letter counts of `φⁿ(c)` for a positive automorphism, from powers of
/// the transition matrix `M[i][j]` = occurrences of `x_i` in `φ(x_j)`.
pub fn letter_count_lengths(images: &[Vec<usize>], c: &[usize], n: usize) -> Vec<u128> {
    let r = images.len();
    let mut m = vec![vec![0u128; r]; r];
    for (j, img) in images.iter().enumerate() {
        for &i in img {
            m[i][j] += 1;
        }
    }
    let mut v = vec![0u128; r];
    for &g in c {
        v[g] += 1;
    }
    let mut out = vec![v.iter().sum()];
    for _ in 0..n {
        let next: Vec<u128> = (0..r).map(|i| (0..r).map(|j| m[i][j] * v[j]).sum()).collect();
        v = next;
        out.push(v.iter().sum());
    }
    out
}

/// Real root of `x³ = x² + x + 1` by bisection.
pub fn tribonacci_root() -> f64 {
    let f = |x: f64| x * x * x - x * x - x - 1.0;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `|φⁿ(x3)|` for `x1 ↦ x1, x2 ↦ x2 x1, x3 ↦ x3 x2`: one `x3`, `n` letters
/// `x2` and `n(n-1)/2` letters `x1`.
pub fn example4_closed_form(n: u64) -> u64 {
    1 + n + n * n.saturating_sub(1) / 2
}

/// Every freely reduced word over `rank` generators of length at most `max`.
pub fn all_reduced_words(rank: usize, max: usize) -> Vec<Word> {
    let mut out = vec![Vec::<Letter>::new()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rank {
                for pos in [true, false] {
                    let l = Letter::new(g, pos);
                    if w.last() != Some(&l.inverse()) {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter().map(Word::from).collect()
}

/// Area by definition: the least `k ≤ 4` with `w` freely equal to a product
/// of `k` conjugates `u r^±1 u^-1`. All but the last factor use conjugators
/// with `|u| ≤ conj_len`; the last is unrestricted, decided by the cyclic
/// test. With the bounded factors this is an upper bound on the area.
pub struct ConjugateProductOracle {
    p: Presentation,
    one: Vec<Word>,
    two: Vec<Word>,
    two_set: HashSet<Vec<Letter>>,
}

impl ConjugateProductOracle {
    pub fn new(p: &Presentation, conj_len: usize) -> Self {
        let us = all_reduced_words(p.alphabet().rank(), conj_len);
        let mut seen = HashSet::new();
        let mut one = Vec::new();
        for r in p.relators() {
            for rr in [r.word().clone(), r.word().inverse()] {
                for u in &us {
                    let c = rr.conjugate_by(&u.inverse());
                    if seen.insert(c.letters().to_vec()) {
                        one.push(c);
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        let mut two = Vec::new();
        for a in &one {
            for b in &one {
                let c = a.concat(b);
                if seen.insert(c.letters().to_vec()) {
                    two.push(c);
                }
            }
        }
        let two_set = seen;
        ConjugateProductOracle {
            p: p.clone(),
            one,
            two,
            two_set,
        }
    }

    pub fn area(&self, w: &Word) -> Option<usize> {
        if w.is_empty() {
            return Some(0);
        }
        let last = |x: &Word| is_relator_conjugate(&self.p, &x.inverse().concat(w));
        if last(&Word::default()) {
            return Some(1);
        }
        if self.one.iter().any(last) {
            return Some(2);
        }
        if self.two.iter().any(last) {
            return Some(3);
        }
        if self.two.iter().any(|x| {
            let rest = x.inverse().concat(w);
            self.two_set.contains(rest.letters())
                || self.one.iter().any(|y| is_relator_conjugate(&self.p, &y.inverse().concat(&rest)))
        }) {
            return Some(4);
        }
        None
    }
}

/// Word problem of a free product of cyclic groups `Z_{m_i}` (0 for `Z`)
/// by syllable collapsing.
pub fn cyclic_free_product_trivial(w: &Word, orders: &[i64]) -> bool {
    let mut stack: Vec<(usize, i64)> = Vec::new();
    for l in w.letters() {
        let g = l.generator();
        let add = l.sign();
        match stack.last_mut() {
            Some((h, e)) if *h == g => {
                *e += add;
                let m = orders[g];
                if m > 0 {
                    *e = e.rem_euclid(m);
                }
                if *e == 0 {
                    stack.pop();
                }
            }
            _ => {
                let m = orders[g];
                let e = if m > 0 { add.rem_euclid(m) } else { add };
                if e != 0 {
                    stack.push((g, e));
                }
            }
        }
    }
    stack.is_empty()
}

/// Exact test for area one: the cyclic reduction of `w` is a cyclic
/// rotation of some relator or its inverse.
pub fn is_relator_conjugate(p: &Presentation, w: &Word) -> bool {
    let core = w.cyclic_reduce().0;
    let c = core.letters();
    p.relators().iter().any(|r| {
        [r.word().clone(), r.word().inverse()].iter().any(|rr| {
            let l = rr.letters();
            l.len() == c.len() && (0..l.len()).any(|k| (0..l.len()).all(|j| l[(k + j) % l.len()] == c[j]))
        })
    })
}

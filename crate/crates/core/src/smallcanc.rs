//! Metric small cancellation: pieces, the `C'(λ)` check, and Dehn's algorithm.
//!
//! The symmetrized set is handled as a list of cyclic words: each relator
//! and, unless it is a rotation of the relator, its inverse. An occurrence is
//! a (cyclic word, start offset, length) with length below the cyclic word's
//! length. A piece is a word with two distinct occurrences.

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::automaton::SuffixAutomaton;
use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::words::{rotation_offset, Letter, Word};

/// Words longer than this abort the Dehn scan.
pub const DEFAULT_LENGTH_CAP: usize = 10_000_000;

/// One entry of the symmetrized set, as a cyclic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicEntry {
    pub relator: usize,
    pub inverted: bool,
    pub letters: Vec<Letter>,
}

/// Relators and their inverses as cyclic words (rotation-duplicates removed).
pub fn symmetrize(p: &Presentation) -> Vec<CyclicEntry> {
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let w = r.word();
        out.push(CyclicEntry {
            relator: i,
            inverted: false,
            letters: w.letters().to_vec(),
        });
        let inv = w.inverse();
        if rotation_offset(w.letters(), inv.letters()).is_none() {
            out.push(CyclicEntry {
                relator: i,
                inverted: true,
                letters: inv.into_letters(),
            });
        }
    }
    out
}

/// Position of a piece inside the symmetrized set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub relator: usize,
    pub inverted: bool,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceWitness {
    pub piece: Word,
    pub first: Occurrence,
    pub second: Occurrence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorPieces {
    pub length: usize,
    pub longest_piece: usize,
    pub ratio: Ratio<u64>,
    pub witness: Option<PieceWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceReport {
    pub max_piece_len: usize,
    pub per_relator: Vec<RelatorPieces>,
}

impl PieceReport {
    pub fn max_ratio(&self) -> Ratio<u64> {
        self.per_relator
            .iter()
            .map(|r| r.ratio)
            .max()
            .unwrap_or_else(|| Ratio::new(0, 1))
    }

    /// Witness of the relator attaining the maximal ratio.
    pub fn witness(&self) -> Option<&PieceWitness> {
        let best = self.max_ratio();
        self.per_relator
            .iter()
            .find(|r| r.ratio == best)
            .and_then(|r| r.witness.as_ref())
    }
}

/// Longest piece contained in each relator, via a generalized suffix
/// automaton over the doubled cyclic words.
pub fn pieces(p: &Presentation) -> Result<PieceReport> {
    if p.relators().is_empty() {
        return Err(Error::Precondition("piece analysis needs at least one relator".into()));
    }
    let sigma = 2 * p.alphabet().rank();
    let entries = symmetrize(p);
    let total: usize = entries.iter().map(|e| 2 * e.letters.len()).sum();
    let mut sa = SuffixAutomaton::new(sigma, 2 * total + 2);

    // Occurrence class of an end position: (entry, end mod n) as a global id.
    let mut base = Vec::with_capacity(entries.len());
    let mut acc = 0u64;
    for e in &entries {
        base.push(acc);
        acc += e.letters.len() as u64;
    }
    const NO: u64 = u64::MAX;
    let mut marks: Vec<(u32, u64)> = Vec::with_capacity(total);
    let mut prefix_states: Vec<Vec<u32>> = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        let n = e.letters.len();
        sa.reset();
        let mut states = Vec::with_capacity(2 * n);
        for pos in 0..(2 * n - 1) {
            let st = sa.extend(e.letters[pos % n].code(), pos as u32);
            marks.push((st, base[k] + (pos % n) as u64));
            states.push(st);
        }
        prefix_states.push(states);
    }

    // Per state, the two distinct classes whose occurrences may be longest:
    // an occurrence inside an entry of length n is capped at n - 1.
    let cap_of = |class: u64| -> u32 {
        let k = base.partition_point(|&b| b <= class) - 1;
        (entries[k].letters.len() - 1) as u32
    };
    let ns = sa.states();
    let mut top: Vec<[(u64, u32); 2]> = vec![[(NO, 0); 2]; ns];
    let add = |top: &mut Vec<[(u64, u32); 2]>, s: usize, c: (u64, u32)| {
        let t = &mut top[s];
        if c.0 == NO || t[0].0 == c.0 || t[1].0 == c.0 {
            return;
        }
        if t[0].0 == NO || c.1 > t[0].1 {
            t[1] = t[0];
            t[0] = c;
        } else if t[1].0 == NO || c.1 > t[1].1 {
            t[1] = c;
        }
    };
    for &(s, c) in &marks {
        add(&mut top, s as usize, (c, cap_of(c)));
    }
    let order = sa.order_by_len();
    for &s in order.iter().rev() {
        let s = s as usize;
        if s == 0 {
            continue;
        }
        let parent = sa.link[s] as usize;
        let [a, b] = top[s];
        add(&mut top, parent, a);
        add(&mut top, parent, b);
    }
    // Nearest ancestor-or-self with two classes.
    let mut anc = vec![0u32; ns];
    for &s in &order {
        let s = s as usize;
        anc[s] = if s == 0 {
            0
        } else if top[s][1].0 != NO {
            s as u32
        } else {
            anc[sa.link[s] as usize]
        };
    }
    // Longest length ending at state `st` shared with a class other than
    // `own`. Going up the link tree the usable cap only grows while the
    // state length shrinks, so the walk stops at the first crossing.
    let shared = |st: u32, own: u64| -> (usize, u64) {
        let mut u = anc[st as usize] as usize;
        let (mut prev_cap, mut prev_class) = (0usize, NO);
        while u != 0 {
            let [a, b] = top[u];
            let (class, cap) = if a.0 != own { a } else { b };
            let len = sa.len[u] as usize;
            if class != NO && cap as usize >= len {
                return if len >= prev_cap { (len, class) } else { (prev_cap, prev_class) };
            }
            if class != NO && cap as usize > prev_cap {
                prev_cap = cap as usize;
                prev_class = class;
            }
            u = sa.link[u] as usize;
        }
        (prev_cap, prev_class)
    };

    let decode = |class: u64, len: usize, end_is_class: bool| -> Occurrence {
        let k = base.partition_point(|&b| b <= class) - 1;
        let n = entries[k].letters.len();
        let end = (class - base[k]) as usize;
        let offset = if end_is_class { (end + n + 1 - (len % n)) % n } else { end };
        Occurrence {
            relator: entries[k].relator,
            inverted: entries[k].inverted,
            offset,
        }
    };

    let mut per_relator: Vec<RelatorPieces> = p
        .relators()
        .iter()
        .map(|r| RelatorPieces {
            length: r.word().len(),
            longest_piece: 0,
            ratio: Ratio::new(0, r.word().len() as u64),
            witness: None,
        })
        .collect();
    for (k, e) in entries.iter().enumerate() {
        let n = e.letters.len();
        let slot = &mut per_relator[e.relator];
        for (pos, &st) in prefix_states[k].iter().enumerate() {
            let own = base[k] + (pos % n) as u64;
            let (len, other) = shared(st, own);
            let l = len.min(pos + 1).min(n - 1);
            if l > slot.longest_piece {
                let start = pos + 1 - l;
                let piece = Word::reduce((start..=pos).map(|i| e.letters[i % n]));
                slot.longest_piece = l;
                slot.witness = Some(PieceWitness {
                    piece,
                    first: Occurrence {
                        relator: e.relator,
                        inverted: e.inverted,
                        offset: start % n,
                    },
                    second: decode(other, l, true),
                });
            }
        }
    }
    for r in &mut per_relator {
        r.ratio = Ratio::new(r.longest_piece as u64, r.length as u64);
    }
    let max_piece_len = per_relator.iter().map(|r| r.longest_piece).max().unwrap_or(0);
    Ok(PieceReport {
        max_piece_len,
        per_relator,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricCheck {
    pub lambda: Ratio<u64>,
    pub satisfied: bool,
    pub max_ratio: Ratio<u64>,
    pub report: PieceReport,
}

impl MetricCheck {
    pub fn to_json(&self, p: &Presentation) -> Value {
        let occ = |o: &Occurrence| {
            json!({"relator": o.relator, "inverted": o.inverted, "offset": o.offset})
        };
        let witness = self.report.witness().map(|w| {
            json!({
                "piece": p.alphabet().format(&w.piece),
                "length": w.piece.len(),
                "first": occ(&w.first),
                "second": occ(&w.second),
            })
        });
        json!({
            "lambda": ratio_string(self.lambda),
            "satisfied": self.satisfied,
            "max_ratio": ratio_string(self.max_ratio),
            "max_piece_len": self.report.max_piece_len,
            "relators": self.report.per_relator.iter().map(|r| json!({
                "length": r.length,
                "longest_piece": r.longest_piece,
                "ratio": ratio_string(r.ratio),
            })).collect::<Vec<_>>(),
            "witness": witness,
        })
    }
}

pub fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("expected a rational like 1/6, got {s:?}"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: u64 = n.parse().map_err(|_| bad())?;
    let d: u64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

/// `C'(λ)`: every piece in a relator `r` is shorter than `λ|r|`.
pub fn check_metric(p: &Presentation, lambda: Ratio<u64>) -> Result<MetricCheck> {
    let report = pieces(p)?;
    let max_ratio = report.max_ratio();
    Ok(MetricCheck {
        lambda,
        satisfied: max_ratio < lambda,
        max_ratio,
        report,
    })
}

struct DehnEntry {
    letters: Vec<Letter>,
    sa: SuffixAutomaton,
}

/// Relator-subword index for Dehn's algorithm. Built once, read-only after.
pub struct DehnSolver {
    presentation: Presentation,
    entries: Vec<DehnEntry>,
    length_cap: usize,
}

/// A single Dehn replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnStep {
    pub position: usize,
    pub removed: usize,
    pub inserted: usize,
}

impl DehnSolver {
    /// Requires `C'(1/6)`.
    pub fn new(p: &Presentation) -> Result<Self> {
        let check = check_metric(p, Ratio::new(1, 6))?;
        if !check.satisfied {
            return Err(Error::Precondition(format!(
                "presentation is not C'(1/6): max piece ratio {}",
                ratio_string(check.max_ratio)
            )));
        }
        Ok(DehnSolver::new_unchecked(p))
    }

    /// Skips the small-cancellation check; the verdicts are then only
    /// one-sided (a terminal ε still proves triviality).
    pub fn new_unchecked(p: &Presentation) -> Self {
        let sigma = 2 * p.alphabet().rank();
        let entries = symmetrize(p)
            .into_iter()
            .map(|e| {
                let n = e.letters.len();
                let text: Vec<usize> = (0..2 * n - 1).map(|i| e.letters[i % n].code()).collect();
                DehnEntry {
                    sa: SuffixAutomaton::build(sigma, &text),
                    letters: e.letters,
                }
            })
            .collect();
        DehnSolver {
            presentation: p.clone(),
            entries,
            length_cap: DEFAULT_LENGTH_CAP,
        }
    }

    pub fn with_length_cap(mut self, cap: usize) -> Self {
        self.length_cap = cap;
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Leftmost, then longest, subword of `w` that is more than half of a
    /// symmetrized relator: `(start, length, entry)`.
    fn find(&self, w: &[Letter]) -> Option<(usize, usize, usize)> {
        let codes: Vec<usize> = w.iter().map(|l| l.code()).collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (k, e) in self.entries.iter().enumerate() {
            let n = e.letters.len();
            let need = n / 2 + 1;
            if w.len() < need {
                continue;
            }
            let ml = e.sa.matching_lengths(&codes);
            let Some(j0) = ml.iter().position(|&l| l as usize >= need) else {
                continue;
            };
            let i = j0 + 1 - ml[j0] as usize;
            let mut j = j0;
            while j + 1 < ml.len() && j + 2 - ml[j + 1] as usize <= i {
                j += 1;
            }
            let len = (j + 1 - i).min(n);
            let better = match best {
                None => true,
                Some((bi, bl, _)) => i < bi || (i == bi && len > bl),
            };
            if better {
                best = Some((i, len, k));
            }
        }
        best
    }

    /// One replacement, if any applies.
    pub fn step(&self, w: &Word) -> Option<(Word, DehnStep)> {
        let (i, len, k) = self.find(w.letters())?;
        let e = &self.entries[k];
        let n = e.letters.len();
        let st = e.sa.walk(w.letters()[i..i + len].iter().map(|l| l.code()))?;
        let start = (e.sa.first_end[st as usize] as usize + 1 - len) % n;
        // rotation = s · t with s the matched part; s = t^-1
        let t_inv: Vec<Letter> = (0..n - len)
            .rev()
            .map(|q| e.letters[(start + len + q) % n].inverse())
            .collect();
        let l = w.letters();
        let mut out = Vec::with_capacity(l.len() - len + t_inv.len());
        out.extend_from_slice(&l[..i]);
        out.extend_from_slice(&t_inv);
        out.extend_from_slice(&l[i + len..]);
        Some((
            Word::reduce(out),
            DehnStep {
                position: i,
                removed: len,
                inserted: n - len,
            },
        ))
    }

    /// Applies replacements until none applies.
    pub fn reduce_traced(&self, w: &Word) -> Result<(Word, Vec<DehnStep>)> {
        self.presentation.alphabet().check_word(w)?;
        let mut cur = w.clone();
        let mut steps = Vec::new();
        loop {
            if cur.len() > self.length_cap {
                return Err(Error::Budget(format!(
                    "word length {} exceeds cap {}",
                    cur.len(),
                    self.length_cap
                )));
            }
            match self.step(&cur) {
                Some((next, s)) => {
                    steps.push(s);
                    cur = next;
                }
                None => return Ok((cur, steps)),
            }
        }
    }

    pub fn reduce(&self, w: &Word) -> Result<Word> {
        Ok(self.reduce_traced(w)?.0)
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.reduce(w)?.is_empty())
    }
}

/// Dehn's algorithm on `w`; fails unless `p` is `C'(1/6)`.
pub fn dehn_reduce(p: &Presentation, w: &Word) -> Result<Word> {
    DehnSolver::new(p)?.reduce(w)
}

pub fn is_trivial_dehn(p: &Presentation, w: &Word) -> Result<bool> {
    Ok(dehn_reduce(p, w)?.is_empty())
}

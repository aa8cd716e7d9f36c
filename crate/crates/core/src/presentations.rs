//! Finite presentations, their text format, and the group constructions:
//! free and direct products, doubles, HNN extensions centralizing a subgroup,
//! split extensions by free groups, and the Rips construction.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{push_reduced, Alphabet, Letter, Word};

/// Suffix given to the second copy of a generator.
pub const BAR: &str = "_bar";

/// A cyclically reduced relator. `split` records where an equation `u = v`
/// was divided (`word = u · v^-1`, `|u| = split`), for display only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    word: Word,
    split: Option<usize>,
}

impl Relator {
    pub fn bare(word: Word) -> Self {
        Relator {
            word: word.cyclic_reduce().0,
            split: None,
        }
    }

    /// Relator `lhs · rhs^-1`, displayed as `lhs = rhs` when nothing cancels.
    pub fn equation(lhs: &Word, rhs: &Word) -> Self {
        let word = lhs.concat(&rhs.inverse());
        let clean = !lhs.is_empty()
            && !rhs.is_empty()
            && word.len() == lhs.len() + rhs.len()
            && word.is_cyclically_reduced();
        if clean {
            Relator {
                word,
                split: Some(lhs.len()),
            }
        } else {
            Relator::bare(word)
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn sides(&self) -> Option<(Word, Word)> {
        self.split.map(|k| {
            let l = self.word.letters();
            (
                Word::reduce(l[..k].iter().copied()),
                Word::reduce(l[k..].iter().copied()).inverse(),
            )
        })
    }

    fn relabel(&self, map: &[usize]) -> Relator {
        Relator {
            word: self.word.relabel(map),
            split: self.split,
        }
    }
}

/// Rotation/inversion-invariant key: least rotation of `w` or of `w^-1`.
pub fn cyclic_key(w: &Word) -> Vec<Letter> {
    let a = least_rotation(w.letters());
    let b = least_rotation(w.inverse().letters());
    a.min(b)
}

fn least_rotation(s: &[Letter]) -> Vec<Letter> {
    // Two-pointer minimum rotation.
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let start = i.min(j) % n.max(1);
    let mut out = s[start..].to_vec();
    out.extend_from_slice(&s[..start]);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Relator>,
    label: String,
}

impl Presentation {
    /// Validates letters, cyclically reduces, drops empty relators and
    /// duplicates up to rotation and inversion (first occurrence wins).
    pub fn new(alphabet: Alphabet, relators: Vec<Relator>, label: impl Into<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators {
            alphabet.check_word(&r.word)?;
            let r = if r.word.is_cyclically_reduced() {
                r
            } else {
                Relator::bare(r.word)
            };
            if r.word.is_empty() {
                continue;
            }
            if seen.insert(cyclic_key(&r.word)) {
                kept.push(r);
            }
        }
        Ok(Presentation {
            alphabet,
            relators: kept,
            label: label.into(),
        })
    }

    pub fn from_words(alphabet: Alphabet, words: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        Presentation::new(alphabet, words.into_iter().map(Relator::bare).collect(), label)
    }

    /// Free group on the given names.
    pub fn free<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let al = Alphabet::new(names)?;
        let label = format!("F({})", al.names().join(","));
        Presentation::new(al, Vec::new(), label)
    }

    /// Free abelian group on the given names.
    pub fn free_abelian<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let al = Alphabet::new(names)?;
        let mut rels = Vec::new();
        for i in 0..al.rank() {
            for j in i + 1..al.rank() {
                rels.push(Relator::bare(commutator(i, j)));
            }
        }
        let label = format!("Z^{}", al.rank());
        Presentation::new(al, rels, label)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn relator_words(&self) -> Vec<Word> {
        self.relators.iter().map(|r| r.word.clone()).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.word.len()).sum()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    /// Checks the stored invariants.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for r in &self.relators {
            self.alphabet.check_word(&r.word)?;
            if r.word.is_empty() || !r.word.is_cyclically_reduced() {
                return Err(Error::Validation("relator not cyclically reduced".into()));
            }
            if !seen.insert(cyclic_key(&r.word)) {
                return Err(Error::Validation("duplicate relator".into()));
            }
        }
        Ok(())
    }

    /// Same relators up to order, rotation and inversion, and same generator names.
    pub fn same_group_data(&self, other: &Presentation) -> bool {
        let mut a: Vec<_> = self.alphabet.names().to_vec();
        let mut b: Vec<_> = other.alphabet.names().to_vec();
        a.sort();
        b.sort();
        if a != b || self.relators.len() != other.relators.len() {
            return false;
        }
        let map: Vec<usize> = other
            .alphabet
            .names()
            .iter()
            .map(|n| self.alphabet.index_of(n).unwrap())
            .collect();
        let mine: HashSet<_> = self.relators.iter().map(|r| cyclic_key(&r.word)).collect();
        other
            .relators
            .iter()
            .all(|r| mine.contains(&cyclic_key(&r.word.relabel(&map))))
    }

    /// Copy with generators renamed and relators carried along.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Presentation> {
        Ok(Presentation {
            alphabet: self.alphabet.renamed(f)?,
            relators: self.relators.clone(),
            label: self.label.clone(),
        })
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.label.is_empty() {
            let _ = writeln!(s, "label: {}", self.label);
        }
        let _ = writeln!(s, "generators: {}", self.alphabet.names().join(" "));
        for r in &self.relators {
            match r.sides() {
                Some((l, rhs)) => {
                    let _ = writeln!(
                        s,
                        "rel: {} = {}",
                        self.alphabet.format(&l),
                        self.alphabet.format(&rhs)
                    );
                }
                None => {
                    let _ = writeln!(s, "rel: {}", self.alphabet.format(&r.word));
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let mut label = String::new();
        let mut alphabet: Option<Alphabet> = None;
        let mut rels = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let line_start = offset;
            offset += line.len();
            let body = match line.find('#') {
                Some(k) => &line[..k],
                None => line,
            };
            let trimmed = body.trim();
            if trimmed.is_empty() {
                continue;
            }
            let shift = |e: Error| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + line_start,
                    msg,
                },
                e => e,
            };
            if let Some(rest) = trimmed.strip_prefix("label:") {
                label = rest.trim().to_string();
            } else if let Some(rest) = trimmed.strip_prefix("generators:") {
                alphabet = Some(Alphabet::new(rest.split_whitespace())?);
            } else if let Some(rest) = trimmed.strip_prefix("rel:") {
                let al = alphabet.as_ref().ok_or_else(|| Error::Parse {
                    pos: line_start,
                    msg: "rel before generators".into(),
                })?;
                let rel = match rest.split_once('=') {
                    Some((l, r)) => {
                        Relator::equation(&al.parse(l).map_err(shift)?, &al.parse(r).map_err(shift)?)
                    }
                    None => Relator::bare(al.parse(rest).map_err(shift)?),
                };
                rels.push(rel);
            } else {
                return Err(Error::Parse {
                    pos: line_start,
                    msg: format!("unrecognised line {trimmed:?}"),
                });
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "missing generators line".into(),
        })?;
        Presentation::new(alphabet, rels, label)
    }
}

/// `[g, h] = g^-1 h^-1 g h` on generator indices.
pub fn commutator(g: usize, h: usize) -> Word {
    Word::reduce([Letter::neg(g), Letter::neg(h), Letter::pos(g), Letter::pos(h)])
}

/// Generating words of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    words: Vec<Word>,
}

impl SubgroupSpec {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Validation("subgroup needs at least one generator".into()));
        }
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::Validation("subgroup generator is trivial".into()));
        }
        Ok(SubgroupSpec { words })
    }

    pub fn parse(texts: &[&str], alphabet: &Alphabet) -> Result<Self> {
        SubgroupSpec::new(texts.iter().map(|t| alphabet.parse(t)).collect::<Result<_>>()?)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Generator indices, if every subgroup generator is a single positive letter.
    pub fn single_letters(&self) -> Option<Vec<usize>> {
        self.words
            .iter()
            .map(|w| match w.letters() {
                [l] if l.is_positive() => Some(l.generator()),
                _ => None,
            })
            .collect()
    }
}

/// A free group `F(t_1..t_m)` acting on a base presentation. Each stable
/// letter carries the images `t^-1 g t` of every base generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAction {
    pub stable_names: Vec<String>,
    pub conjugators: Vec<Word>,
    images: Vec<Vec<Word>>,
}

impl FreeAction {
    /// Each `t_i` acts on every base generator by conjugation by `a_i`.
    pub fn conjugation(base: &Alphabet, stable_names: Vec<String>, conjugators: Vec<Word>) -> Result<Self> {
        if stable_names.len() != conjugators.len() {
            return Err(Error::Validation("stable names and conjugators differ in number".into()));
        }
        for c in &conjugators {
            base.check_word(c)?;
        }
        let images = conjugators
            .iter()
            .map(|a| (0..base.rank()).map(|g| Word::generator(g).conjugate_by(a)).collect())
            .collect();
        Ok(FreeAction {
            stable_names,
            conjugators,
            images,
        })
    }

    /// Action on a double of `base`: `t_i` conjugates the first copy by `a_i`
    /// and the barred copy by `ā_i`.
    pub fn conjugation_on_double(
        base: &Alphabet,
        double: &Alphabet,
        stable_names: Vec<String>,
        conjugators: Vec<Word>,
    ) -> Result<Self> {
        if stable_names.len() != conjugators.len() {
            return Err(Error::Validation("stable names and conjugators differ in number".into()));
        }
        let (unbar, bar) = double_maps(base, double)?;
        let mut images = Vec::new();
        for a in &conjugators {
            base.check_word(a)?;
            let a1 = a.relabel(&unbar);
            let a2 = a.relabel(&bar);
            let mut img = vec![Word::identity(); double.rank()];
            // barred copy first so shared letters end with the unbarred conjugator
            for g in 0..base.rank() {
                img[bar[g]] = Word::generator(bar[g]).conjugate_by(&a2);
            }
            for g in 0..base.rank() {
                img[unbar[g]] = Word::generator(unbar[g]).conjugate_by(&a1);
            }
            images.push(img);
        }
        Ok(FreeAction {
            stable_names,
            conjugators: conjugators.iter().map(|a| a.relabel(&unbar)).collect(),
            images,
        })
    }

    /// Images `t_i^-1 g t_i` for stable letter `i`, indexed by base generator.
    pub fn images(&self, i: usize) -> &[Word] {
        &self.images[i]
    }
}

/// For a double of `base`, the generator indices of the first and the barred
/// copy of each base generator (equal for shared generators).
pub fn double_maps(base: &Alphabet, double: &Alphabet) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut unbar = Vec::new();
    let mut bar = Vec::new();
    for n in base.names() {
        let u = double.lookup(n)?;
        let b = double.index_of(&format!("{n}{BAR}")).unwrap_or(u);
        unbar.push(u);
        bar.push(b);
    }
    Ok((unbar, bar))
}

fn decorate(p: &Presentation, decoration: Option<&str>) -> Result<Presentation> {
    match decoration {
        Some(d) => p.renamed(|n| format!("{n}{d}")),
        None => Ok(p.clone()),
    }
}

/// Disjoint union of generators and relators; the second factor is renamed
/// with `decoration` when given.
pub fn free_product(p1: &Presentation, p2: &Presentation, decoration: Option<&str>) -> Result<Presentation> {
    let p2 = decorate(p2, decoration)?;
    let alphabet = p1.alphabet.concat(&p2.alphabet)?;
    let shift: Vec<usize> = (0..p2.alphabet.rank()).map(|g| g + p1.alphabet.rank()).collect();
    let mut rels = p1.relators.clone();
    rels.extend(p2.relators.iter().map(|r| r.relabel(&shift)));
    Presentation::new(alphabet, rels, format!("({}) * ({})", p1.label, p2.label))
}

/// Free product plus the commutators `[g, h]` for `g` in the first factor and
/// `h` in the second.
pub fn direct_product(p1: &Presentation, p2: &Presentation, decoration: Option<&str>) -> Result<Presentation> {
    let fp = free_product(p1, p2, decoration)?;
    let n1 = p1.alphabet.rank();
    let mut rels = fp.relators.clone();
    for g in 0..n1 {
        for h in 0..p2.alphabet.rank() {
            rels.push(Relator::bare(commutator(g, n1 + h)));
        }
    }
    Presentation::new(
        fp.alphabet,
        rels,
        format!("({}) x ({})", p1.label, p2.label),
    )
}

/// Double of `p` along the subgroup `c`.
///
/// Unmerged: generators `X` then `X̄`, relators `R`, `R̄`, and `c_i c̄_i^-1`.
/// Merged (every `c_i` a single letter): subgroup generators are shared and
/// each other generator `g` is followed by `g_bar`; relators `R` then `R̄`.
pub fn double(p: &Presentation, c: &SubgroupSpec, merge: bool) -> Result<Presentation> {
    for w in c.words() {
        p.alphabet.check_word(w)?;
    }
    let label = format!("double of {} along <{}>", p.label, c.words().iter().map(|w| p.alphabet.format(w)).collect::<Vec<_>>().join(", "));
    let n = p.alphabet.rank();
    if merge {
        let shared: HashSet<usize> = c
            .single_letters()
            .ok_or_else(|| Error::Precondition("merged double needs single-letter subgroup generators".into()))?
            .into_iter()
            .collect();
        let mut names = Vec::new();
        let mut unbar = vec![0; n];
        let mut bar = vec![0; n];
        for g in 0..n {
            let name = p.alphabet.name(g);
            unbar[g] = names.len();
            names.push(name.to_string());
            if shared.contains(&g) {
                bar[g] = unbar[g];
            } else {
                bar[g] = names.len();
                names.push(format!("{name}{BAR}"));
            }
        }
        let alphabet = Alphabet::new(names)?;
        let mut rels: Vec<Relator> = p.relators.iter().map(|r| r.relabel(&unbar)).collect();
        rels.extend(p.relators.iter().map(|r| r.relabel(&bar)));
        Presentation::new(alphabet, rels, label)
    } else {
        let barred = p.alphabet.with_suffix(BAR)?;
        let alphabet = p.alphabet.concat(&barred)?;
        let unbar: Vec<usize> = (0..n).collect();
        let bar: Vec<usize> = (n..2 * n).collect();
        let mut rels: Vec<Relator> = p.relators.clone();
        rels.extend(p.relators.iter().map(|r| r.relabel(&bar)));
        for w in c.words() {
            rels.push(Relator::equation(&w.relabel(&unbar), &w.relabel(&bar)));
        }
        Presentation::new(alphabet, rels, label)
    }
}

/// Adds a stable letter commuting with each subgroup generator.
pub fn hnn_centralizing(p: &Presentation, c: &SubgroupSpec, stable: &str) -> Result<Presentation> {
    if p.alphabet.contains(stable) {
        return Err(Error::NameCollision(stable.to_string()));
    }
    let alphabet = p.alphabet.concat(&Alphabet::new([stable])?)?;
    let s = Word::generator(p.alphabet.rank());
    let mut rels = p.relators.clone();
    for w in c.words() {
        p.alphabet.check_word(w)?;
        rels.push(Relator::equation(&w.conjugate_by(&s), w));
    }
    Presentation::new(alphabet, rels, format!("HNN of {} with {stable} centralizing C", p.label))
}

/// Split extension `P ⋊ F(t_1..t_m)` with relators `t_i^-1 g t_i = image`.
pub fn semidirect_free(p: &Presentation, action: &FreeAction) -> Result<Presentation> {
    let stable = Alphabet::new(&action.stable_names)?;
    let alphabet = p.alphabet.concat(&stable)?;
    let n = p.alphabet.rank();
    let mut rels = p.relators.clone();
    for i in 0..action.stable_names.len() {
        let t = Word::generator(n + i);
        let imgs = action.images(i);
        if imgs.len() != n {
            return Err(Error::AlphabetMismatch("action images do not cover the base alphabet".into()));
        }
        for g in 0..n {
            p.alphabet.check_word(&imgs[g])?;
            rels.push(Relator::equation(&Word::generator(g).conjugate_by(&t), &imgs[g]));
        }
    }
    Presentation::new(
        alphabet,
        rels,
        format!("{} x| F({})", p.label, action.stable_names.join(",")),
    )
}

/// Parameters of the Rips construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RipsParams {
    pub start: u64,
    pub block: u64,
}

impl Default for RipsParams {
    fn default() -> Self {
        RipsParams { start: 81, block: 80 }
    }
}

/// `∏_{j=m}^{m+block-1}` of `(ab)^j` for odd `j` and `(ab²)^j` for even `j`.
pub fn rips_block_word(a: usize, b: usize, m: u64, block: u64) -> Word {
    let mut out = Vec::new();
    for j in m..m + block {
        for _ in 0..j {
            push_reduced(&mut out, Letter::pos(a));
            push_reduced(&mut out, Letter::pos(b));
            if j % 2 == 0 {
                push_reduced(&mut out, Letter::pos(b));
            }
        }
    }
    Word::reduce(out)
}

/// Rips group `⟨X, a, b | S⟩` with kernel `⟨a, b⟩` and quotient `⟨X | R⟩`.
///
/// Exponent blocks are consumed in order: one per quotient relator, then four
/// per generator `x` for `x^-1 a x`, `x a x^-1`, `x^-1 b x`, `x b x^-1`.
pub fn rips(q: &Presentation, params: RipsParams) -> Result<(Presentation, SubgroupSpec)> {
    if params.start == 0 || params.block == 0 {
        return Err(Error::Validation("rips start and block must be positive".into()));
    }
    for n in ["a", "b"] {
        if q.alphabet.contains(n) {
            return Err(Error::NameCollision(n.to_string()));
        }
    }
    let alphabet = q.alphabet.concat(&Alphabet::new(["a", "b"])?)?;
    let nx = q.alphabet.rank();
    let (a, b) = (nx, nx + 1);
    let mut m = params.start;
    let mut next = || {
        let w = rips_block_word(a, b, m, params.block);
        m += params.block;
        w
    };
    let mut rels = Vec::new();
    for r in &q.relators {
        rels.push(Relator::equation(r.word(), &next()));
    }
    for x in 0..nx {
        let xw = Word::generator(x);
        let xi = xw.inverse();
        for (g, conj) in [(a, &xw), (a, &xi), (b, &xw), (b, &xi)] {
            let lhs = Word::generator(g).conjugate_by(conj);
            rels.push(Relator::equation(&lhs, &next()));
        }
    }
    let p = Presentation::new(
        alphabet,
        rels,
        format!("rips(start={},block={}) of {}", params.start, params.block, q.label),
    )?;
    let kernel = SubgroupSpec::new(vec![Word::generator(a), Word::generator(b)])?;
    Ok((p, kernel))
}

pub const CATALOG: &[&str] = &[
    "example1_double",
    "stallings_E",
    "stallings_S_long",
    "stallings_S_concise",
    "example2_double",
    "example2_base",
    "example4_base",
    "stallings_E2",
    "stallings_E2_literal",
];

const EXAMPLE1_DOUBLE: &str = include_str!("../data/example1_double.pres");

const STALLINGS_E: &str = "\
label: stallings_E
generators: x y x_bar y_bar s
rel: s^-1 x s = x
rel: s^-1 y s = x^-1 y x
rel: s^-1 x_bar s = x_bar
rel: s^-1 y_bar s = x_bar^-1 y_bar x_bar
rel: x^-1 y x = x_bar^-1 y_bar x_bar
";

const STALLINGS_S_LONG: &str = "\
label: stallings_S_long
generators: x y x_bar y_bar s t
rel: s^-1 x s = x
rel: s^-1 y s = x^-1 y x
rel: s^-1 x_bar s = x_bar
rel: s^-1 y_bar s = x_bar^-1 y_bar x_bar
rel: t^-1 x t = x
rel: t^-1 y t = x^-1 y x
rel: t^-1 x_bar t = x_bar
rel: t^-1 y_bar t = x_bar^-1 y_bar x_bar
rel: y = y_bar
";

const STALLINGS_S_CONCISE: &str = "\
label: stallings_S_concise
generators: a b c d e
rel: b^-1 a b = c^-1 a c
rel: c^-1 a c = d^-1 a d
rel: d^-1 a d = e^-1 a e
rel: c^-1 d^-1 c d
rel: d^-1 b^-1 d b
rel: e^-1 c^-1 e c
rel: e^-1 b^-1 e b
";

const EXAMPLE2_DOUBLE: &str = "\
label: example2_double
generators: a b c s s_bar
rel: s^-1 a s = c
rel: s_bar^-1 a s_bar = c
rel: s^-1 b s = a c
rel: s_bar^-1 b s_bar = a c
rel: s^-1 c s = b c
rel: s_bar^-1 c s_bar = b c
";

const EXAMPLE2_BASE: &str = "\
label: example2_base
generators: a b c s
rel: s^-1 a s = c
rel: s^-1 b s = a c
rel: s^-1 c s = b c
";

const EXAMPLE4_BASE: &str = "\
label: example4_base
generators: x1 x2 x3 t
rel: t^-1 x1 t = x1
rel: t^-1 x2 t = x2 x1
rel: t^-1 x3 t = x3 x2
";

// The printed second example has `t^-1 x_bar t = y_bar x_bar y_bar`; the
// default entry follows the pattern of the unbarred relator instead.
const STALLINGS_E2: &str = "\
label: stallings_E2
generators: x y x_bar y_bar s t
rel: s^-1 x s = x
rel: s^-1 y s = x^-1 y x
rel: s^-1 x_bar s = x_bar
rel: s^-1 y_bar s = x_bar^-1 y_bar x_bar
rel: t^-1 x t = y^-1 x y
rel: t^-1 y t = y
rel: t^-1 x_bar t = y_bar^-1 x_bar y_bar
rel: t^-1 y_bar t = y_bar
rel: x^-1 y^-1 x y = x_bar^-1 y_bar^-1 x_bar y_bar
";

const STALLINGS_E2_LITERAL: &str = "\
label: stallings_E2_literal
generators: x y x_bar y_bar s t
rel: s^-1 x s = x
rel: s^-1 y s = x^-1 y x
rel: s^-1 x_bar s = x_bar
rel: s^-1 y_bar s = x_bar^-1 y_bar x_bar
rel: t^-1 x t = y^-1 x y
rel: t^-1 y t = y
rel: t^-1 x_bar t = y_bar x_bar y_bar
rel: t^-1 y_bar t = y_bar
rel: x^-1 y^-1 x y = x_bar^-1 y_bar^-1 x_bar y_bar
";

pub fn catalog_text(name: &str) -> Result<&'static str> {
    Ok(match name {
        "example1_double" => EXAMPLE1_DOUBLE,
        "stallings_E" => STALLINGS_E,
        "stallings_S_long" => STALLINGS_S_LONG,
        "stallings_S_concise" => STALLINGS_S_CONCISE,
        "example2_double" => EXAMPLE2_DOUBLE,
        "example2_base" => EXAMPLE2_BASE,
        "example4_base" => EXAMPLE4_BASE,
        "stallings_E2" => STALLINGS_E2,
        "stallings_E2_literal" => STALLINGS_E2_LITERAL,
        other => return Err(Error::UnknownCatalog(other.to_string())),
    })
}

/// Printed presentations, verbatim.
pub fn example_catalog(name: &str) -> Result<Presentation> {
    Presentation::parse(catalog_text(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(names: &[&str]) -> Presentation {
        Presentation::free(names.iter().copied()).unwrap()
    }

    #[test]
    fn relator_canonicalisation() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let p = Presentation::from_words(
            al.clone(),
            vec![
                al.parse("a b a^-1 b^-1").unwrap(),
                al.parse("b a^-1 b^-1 a").unwrap(),
                al.parse("b a b^-1 a^-1").unwrap(),
                al.parse("b^-1 a a a b").unwrap(),
                al.parse("a a^-1").unwrap(),
            ],
            "",
        )
        .unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[1].word(), &al.parse("a^3").unwrap());
        p.validate().unwrap();
    }

    #[test]
    fn least_rotation_matches_naive() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        for s in ["a b a b^-1 a", "b b b", "a^-1 b a b^-1 a^-1 b", "a"] {
            let w = al.parse(s).unwrap();
            let naive = (0..w.len()).map(|k| w.rotate(k).into_letters()).min().unwrap();
            assert_eq!(least_rotation(w.letters()), naive, "{s}");
        }
    }

    #[test]
    fn free_products() {
        let fx = free(&["x"]);
        let p = free_product(&fx, &fx, Some(BAR)).unwrap();
        assert_eq!(p.alphabet().names(), &["x", "x_bar"]);
        assert!(p.relators().is_empty());

        let empty = Presentation::free(Vec::<String>::new()).unwrap();
        let q = free_product(&fx, &empty, Some(BAR)).unwrap();
        assert_eq!(q.alphabet().names(), &["x"]);

        let z2 = Presentation::free_abelian(["a", "b"]).unwrap();
        let zz = free_product(&z2, &z2, Some(BAR)).unwrap();
        assert_eq!(zz.alphabet().rank(), 4);
        assert_eq!(zz.relators().len(), 2);
        assert!(matches!(free_product(&fx, &fx, None), Err(Error::NameCollision(_))));
    }

    #[test]
    fn direct_products() {
        let p = direct_product(&free(&["b", "c"]), &free(&["d", "e"]), None).unwrap();
        assert_eq!(p.relators().len(), 4);
        let cd = p.parse_word("c^-1 d^-1 c d").unwrap();
        assert!(p.relators().iter().any(|r| r.word().is_rotation_of(&cd)));
        let triv = Presentation::free(Vec::<String>::new()).unwrap();
        let z2 = Presentation::free_abelian(["a", "b"]).unwrap();
        assert!(direct_product(&z2, &triv, None).unwrap().same_group_data(&z2));
        let q = direct_product(&z2, &free(&["x", "y", "z"]), None).unwrap();
        assert_eq!(q.relators().len(), 1 + 2 * 3);
    }

    #[test]
    fn doubles_of_free_cyclic() {
        let fa = free(&["a"]);
        let c = SubgroupSpec::parse(&["a"], fa.alphabet()).unwrap();
        let merged = double(&fa, &c, true).unwrap();
        assert_eq!(merged.alphabet().names(), &["a"]);
        assert!(merged.relators().is_empty());
        let un = double(&fa, &c, false).unwrap();
        assert_eq!(un.alphabet().names(), &["a", "a_bar"]);
        assert_eq!(un.relators().len(), 1);
        assert_eq!(un.relators()[0].word(), &un.parse_word("a a_bar^-1").unwrap());
        let fab = free(&["a", "b"]);
        let bad = SubgroupSpec::parse(&["a b"], fab.alphabet()).unwrap();
        assert!(matches!(double(&fab, &bad, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn example2_double_from_pipeline() {
        let base = example_catalog("example2_base").unwrap();
        let c = SubgroupSpec::parse(&["a", "b", "c"], base.alphabet()).unwrap();
        let d = double(&base, &c, true).unwrap();
        assert_eq!(d.alphabet().names(), &["a", "b", "c", "s", "s_bar"]);
        assert!(d.same_group_data(&example_catalog("example2_double").unwrap()));
    }

    #[test]
    fn hnn_examples() {
        let fa = free(&["a"]);
        let c = SubgroupSpec::parse(&["a"], fa.alphabet()).unwrap();
        let h = hnn_centralizing(&fa, &c, "s").unwrap();
        assert_eq!(h.relators().len(), 1);
        assert_eq!(
            cyclic_key(h.relators()[0].word()),
            cyclic_key(&h.parse_word("s^-1 a^-1 s a").unwrap())
        );
        assert!(matches!(hnn_centralizing(&fa, &c, "a"), Err(Error::NameCollision(_))));
    }

    #[test]
    fn stallings_e_from_pipeline() {
        let f = free(&["x", "y"]);
        let c = SubgroupSpec::parse(&["x^-1 y x"], f.alphabet()).unwrap();
        let g = double(&f, &c, false).unwrap();
        let act = FreeAction::conjugation_on_double(
            f.alphabet(),
            g.alphabet(),
            vec!["s".into()],
            vec![f.parse_word("x").unwrap()],
        )
        .unwrap();
        let e = semidirect_free(&g, &act).unwrap();
        assert_eq!(e.relators().len(), 5);
        assert!(e.same_group_data(&example_catalog("stallings_E").unwrap()));
    }

    #[test]
    fn stallings_e2_from_pipeline() {
        let f = free(&["x", "y"]);
        let c = SubgroupSpec::parse(&["x^-1 y^-1 x y"], f.alphabet()).unwrap();
        let g = double(&f, &c, false).unwrap();
        let act = FreeAction::conjugation_on_double(
            f.alphabet(),
            g.alphabet(),
            vec!["s".into(), "t".into()],
            vec![f.parse_word("x").unwrap(), f.parse_word("y").unwrap()],
        )
        .unwrap();
        let e = semidirect_free(&g, &act).unwrap();
        assert_eq!(e.relators().len(), 9);
        assert_eq!(e.relators().len(), g.relators().len() + 2 * 4);
        assert!(e.same_group_data(&example_catalog("stallings_E2").unwrap()));
        assert!(!e.same_group_data(&example_catalog("stallings_E2_literal").unwrap()));
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let f = free(&["a", "b"]);
        let act = FreeAction::conjugation(f.alphabet(), vec!["t".into()], vec![Word::identity()]).unwrap();
        let sd = semidirect_free(&f, &act).unwrap();
        let dp = direct_product(&f, &free(&["t"]), None).unwrap();
        assert!(sd.same_group_data(&dp));
    }

    #[test]
    fn rips_counts_and_blocks() {
        let q = free(&["x"]);
        let (p, k) = rips(&q, RipsParams::default()).unwrap();
        assert_eq!(p.alphabet().names(), &["x", "a", "b"]);
        assert_eq!(p.relators().len(), 4);
        assert_eq!(k.single_letters(), Some(vec![1, 2]));
        let (lhs, rhs) = p.relators()[3].sides().unwrap();
        assert_eq!(p.alphabet().format(&lhs), "x b x^-1");
        assert!(p.alphabet().format(&rhs).starts_with("(a b)^321 (a b^2)^322 "));
        assert!(p.alphabet().format(&rhs).ends_with(" (a b)^399 (a b^2)^400"));

        let z2 = Presentation::free_abelian(["x", "y"]).unwrap();
        let (p2, _) = rips(&z2, RipsParams::default()).unwrap();
        assert_eq!(p2.relators().len(), 1 + 4 * 2);
        assert_eq!(p2.alphabet().rank(), 4);
        let (lhs, rhs) = p2.relators()[0].sides().unwrap();
        assert_eq!(p2.alphabet().format(&lhs), "x^-1 y^-1 x y");
        assert!(p2.alphabet().format(&rhs).starts_with("(a b)^81 (a b^2)^82"));

        assert!(matches!(rips(&free(&["a"]), RipsParams::default()), Err(Error::NameCollision(_))));
    }

    #[test]
    fn text_round_trip() {
        for name in CATALOG {
            let text = catalog_text(name).unwrap();
            let p = Presentation::parse(text).unwrap();
            p.validate().unwrap();
            assert_eq!(p.to_text(), text, "{name}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Presentation::parse("generators: a b\nrel: a q\n").unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(_)));
        let err = Presentation::parse("generators: a b\nrel: (a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { pos, .. } if pos > 16));
        assert!(Presentation::parse("rel: a\n").is_err());
        let p = Presentation::parse("# comment\ngenerators: c d\nrel: (c^-1 d^-1 c d)  # bare\n").unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn concise_stallings_has_seven_relators() {
        let s = example_catalog("stallings_S_concise").unwrap();
        assert_eq!(s.relators().len(), 7);
        for r in s.relators() {
            for g in 0..5 {
                assert_eq!(r.word().exponent_sum(g), 0);
            }
        }
    }
}

//! Word-problem deciders for the groups the embeddings land in, built by
//! composition: free, free abelian, direct and free products, `C'(1/6)`
//! groups via Dehn's algorithm, and split extensions of a base by a free group.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::smallcanc::DehnSolver;
use crate::words::{push_reduced, Alphabet, Letter, Word};

/// Default cap on intermediate word length.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone)]
pub struct Solver {
    alphabet: Alphabet,
    kind: Kind,
    budget: usize,
}

#[derive(Clone)]
enum Kind {
    Free,
    FreeAbelian,
    Direct(Composite),
    FreeProduct(Composite),
    /// The flag records that the `C'(1/6)` check was skipped.
    SmallCancellation(Arc<DehnSolver>, bool),
    Split(Box<Split>),
    Mapped(Box<Mapped>),
}

#[derive(Clone)]
struct Composite {
    factors: Vec<Solver>,
    /// Composite generator → (factor, generator inside the factor).
    owner: Vec<(usize, usize)>,
}

#[derive(Clone)]
struct Split {
    base: Solver,
    /// Per stable letter `t`: images of `t^-1 g t` and of `t g t^-1`.
    forward: Vec<Vec<Word>>,
    backward: Vec<Vec<Word>>,
}

#[derive(Clone)]
struct Mapped {
    images: Vec<Word>,
    target: Solver,
}

/// Substitution that fails instead of producing a word over `budget` letters.
pub(crate) fn substitute_capped(w: &Word, images: &[Word], budget: usize) -> Result<Word> {
    let bound: usize = w.letters().iter().map(|l| images[l.generator()].len()).sum();
    if bound > budget {
        let mut out: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let img = images[l.generator()].letters();
            if l.is_positive() {
                img.iter().for_each(|&x| push_reduced(&mut out, x));
            } else {
                img.iter().rev().for_each(|&x| push_reduced(&mut out, x.inverse()));
            }
            if out.len() > budget {
                return Err(Error::Budget(format!("intermediate word exceeds {budget} letters")));
            }
        }
        return Ok(Word::reduce(out));
    }
    Ok(w.substitute(images))
}

impl Solver {
    pub fn free(alphabet: Alphabet) -> Self {
        Solver::leaf(alphabet, Kind::Free)
    }

    pub fn free_abelian(alphabet: Alphabet) -> Self {
        Solver::leaf(alphabet, Kind::FreeAbelian)
    }

    fn leaf(alphabet: Alphabet, kind: Kind) -> Self {
        Solver {
            alphabet,
            kind,
            budget: DEFAULT_BUDGET,
        }
    }

    fn composite(factors: Vec<Solver>) -> Result<(Alphabet, Composite)> {
        let mut alphabet = Alphabet::empty();
        let mut owner = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            alphabet = alphabet.concat(&f.alphabet)?;
            owner.extend((0..f.alphabet.rank()).map(|g| (i, g)));
        }
        Ok((alphabet, Composite { factors, owner }))
    }

    /// Direct product; the composite alphabet is the concatenation of the
    /// factor alphabets, which must be disjoint.
    pub fn direct(factors: Vec<Solver>) -> Result<Self> {
        let (alphabet, c) = Solver::composite(factors)?;
        Ok(Solver::leaf(alphabet, Kind::Direct(c)))
    }

    pub fn free_product(factors: Vec<Solver>) -> Result<Self> {
        let (alphabet, c) = Solver::composite(factors)?;
        Ok(Solver::leaf(alphabet, Kind::FreeProduct(c)))
    }

    /// Dehn's algorithm; fails unless the presentation is `C'(1/6)`.
    pub fn small_cancellation(p: &Presentation) -> Result<Self> {
        let d = DehnSolver::new(p)?;
        Ok(Solver::leaf(p.alphabet().clone(), Kind::SmallCancellation(Arc::new(d), false)))
    }

    /// Dehn's algorithm without the `C'(1/6)` check.
    pub fn small_cancellation_unchecked(p: &Presentation) -> Self {
        let d = DehnSolver::new_unchecked(p);
        Solver::leaf(p.alphabet().clone(), Kind::SmallCancellation(Arc::new(d), true))
    }

    /// `base ⋊ F(stable)`. `forward[i][g]` is `t_i^-1 g t_i` and
    /// `backward[i][g]` is `t_i g t_i^-1`, both over the base alphabet. The
    /// two maps are checked to be mutually inverse on generators.
    pub fn split_extension(
        base: Solver,
        stable: &[String],
        forward: Vec<Vec<Word>>,
        backward: Vec<Vec<Word>>,
    ) -> Result<Self> {
        let n = base.alphabet.rank();
        if forward.len() != stable.len() || backward.len() != stable.len() {
            return Err(Error::Validation("one forward and one backward map per stable letter".into()));
        }
        for maps in forward.iter().chain(&backward) {
            if maps.len() != n {
                return Err(Error::AlphabetMismatch("substitution map does not cover the base alphabet".into()));
            }
            for w in maps {
                base.alphabet.check_word(w)?;
            }
        }
        for (i, name) in stable.iter().enumerate() {
            for g in 0..n {
                let gw = Word::generator(g);
                let fb = forward[i][g].substitute(&backward[i]);
                let bf = backward[i][g].substitute(&forward[i]);
                for w in [fb, bf] {
                    if !base.is_identity(&w.concat(&gw.inverse()))? {
                        return Err(Error::Validation(format!(
                            "maps of stable letter {name} are not mutually inverse on {}",
                            base.alphabet.name(g)
                        )));
                    }
                }
            }
        }
        let alphabet = base.alphabet.concat(&Alphabet::new(stable)?)?;
        Ok(Solver::leaf(
            alphabet,
            Kind::Split(Box::new(Split {
                base,
                forward,
                backward,
            })),
        ))
    }

    /// Decides words over `source` by mapping them into `target`.
    pub fn mapped(source: Alphabet, images: Vec<Word>, target: Solver) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::AlphabetMismatch("one image per source generator".into()));
        }
        for w in &images {
            target.alphabet.check_word(w)?;
        }
        Ok(Solver::leaf(source, Kind::Mapped(Box::new(Mapped { images, target }))))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Free => "free",
            Kind::FreeAbelian => "freeabelian",
            Kind::Direct(_) => "direct",
            Kind::FreeProduct(_) => "freeproduct",
            Kind::SmallCancellation(..) => "smallcanc",
            Kind::Split(_) => "split",
            Kind::Mapped(_) => "mapped",
        }
    }

    /// Factor solvers of a direct or free product.
    pub fn factors(&self) -> &[Solver] {
        match &self.kind {
            Kind::Direct(c) | Kind::FreeProduct(c) => &c.factors,
            _ => &[],
        }
    }

    /// Target solver and images of a mapped solver.
    pub fn mapped_parts(&self) -> Option<(&Solver, &[Word])> {
        match &self.kind {
            Kind::Mapped(m) => Some((&m.target, &m.images)),
            _ => None,
        }
    }

    /// Same solver with every generator name suffixed.
    pub fn rename(&self, suffix: &str) -> Result<Solver> {
        let alphabet = self.alphabet.with_suffix(suffix)?;
        let kind = match &self.kind {
            Kind::Direct(c) | Kind::FreeProduct(c) => {
                let c = Composite {
                    factors: c.factors.iter().map(|f| f.rename(suffix)).collect::<Result<_>>()?,
                    owner: c.owner.clone(),
                };
                if matches!(self.kind, Kind::Direct(_)) {
                    Kind::Direct(c)
                } else {
                    Kind::FreeProduct(c)
                }
            }
            Kind::Split(s) => Kind::Split(Box::new(Split {
                base: s.base.rename(suffix)?,
                forward: s.forward.clone(),
                backward: s.backward.clone(),
            })),
            other => other.clone(),
        };
        Ok(Solver {
            alphabet,
            kind,
            budget: self.budget,
        })
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w)?;
        self.decide(w, self.budget)
    }

    fn decide(&self, w: &Word, budget: usize) -> Result<bool> {
        if w.len() > budget {
            return Err(Error::Budget(format!("word of length {} exceeds {budget}", w.len())));
        }
        if w.is_empty() {
            return Ok(true);
        }
        match &self.kind {
            Kind::Free => Ok(false),
            Kind::FreeAbelian => {
                let mut sums = vec![0i64; self.alphabet.rank()];
                for l in w.letters() {
                    sums[l.generator()] += l.sign();
                }
                Ok(sums.iter().all(|&s| s == 0))
            }
            Kind::Direct(c) => {
                let mut parts = vec![Vec::new(); c.factors.len()];
                for l in w.letters() {
                    let (f, g) = c.owner[l.generator()];
                    parts[f].push(Letter::new(g, l.is_positive()));
                }
                for (f, part) in parts.into_iter().enumerate() {
                    if !c.factors[f].decide(&Word::reduce(part), budget)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Kind::FreeProduct(c) => Ok(syllables(c, w, budget)?.is_empty()),
            Kind::SmallCancellation(d, _) => Ok(d.reduce(w)?.is_empty()),
            Kind::Split(s) => {
                let (base, free) = collect_split(s, self.alphabet.rank() - s.base.alphabet.rank(), w, budget)?;
                Ok(free.is_empty() && s.base.decide(&base, budget)?)
            }
            Kind::Mapped(m) => {
                let img = substitute_capped(w, &m.images, budget)?;
                m.target.decide(&img, budget)
            }
        }
    }

    /// Free-product normal form: maximal single-factor syllables, none
    /// trivial in its factor, adjacent syllables from different factors.
    /// Syllables are returned over the composite alphabet.
    pub fn syllable_normal_form(&self, w: &Word) -> Result<Vec<(usize, Word)>> {
        let Kind::FreeProduct(c) = &self.kind else {
            return Err(Error::Precondition("syllable normal form needs a free product solver".into()));
        };
        self.alphabet.check_word(w)?;
        let inv: Vec<Vec<usize>> = {
            let mut m = vec![Vec::new(); c.factors.len()];
            for (g, &(f, _)) in c.owner.iter().enumerate() {
                m[f].push(g);
            }
            m
        };
        Ok(syllables(c, w, self.budget)?
            .into_iter()
            .map(|(f, local)| (f, local.relabel(&inv[f])))
            .collect())
    }

    /// Collects stable letters to the right: `w = base · free_part`.
    pub fn collect(&self, w: &Word) -> Result<(Word, Word)> {
        let Kind::Split(s) = &self.kind else {
            return Err(Error::Precondition("collect needs a split extension solver".into()));
        };
        self.alphabet.check_word(w)?;
        let n = s.base.alphabet.rank();
        let (base, free) = collect_split(s, self.alphabet.rank() - n, w, self.budget)?;
        let shift: Vec<usize> = (0..self.alphabet.rank() - n).map(|i| n + i).collect();
        Ok((base, free.relabel(&shift)))
    }

    /// JSON description; `smallcanc` leaves embed their presentation text.
    pub fn to_config(&self) -> SolverConfig {
        let names = |a: &Alphabet| a.names().to_vec();
        match &self.kind {
            Kind::Free => SolverConfig::Free {
                generators: names(&self.alphabet),
            },
            Kind::FreeAbelian => SolverConfig::FreeAbelian {
                generators: names(&self.alphabet),
            },
            Kind::Direct(c) => SolverConfig::Direct {
                factors: c.factors.iter().map(|f| f.to_config()).collect(),
            },
            Kind::FreeProduct(c) => SolverConfig::FreeProduct {
                factors: c.factors.iter().map(|f| f.to_config()).collect(),
            },
            Kind::SmallCancellation(d, unchecked) => SolverConfig::SmallCanc {
                presentation: None,
                text: Some(relabelled_text(d.presentation(), &self.alphabet)),
                unchecked: *unchecked,
            },
            Kind::Split(s) => {
                let n = s.base.alphabet.rank();
                let stable = (0..s.forward.len())
                    .map(|i| StableConfig {
                        name: self.alphabet.name(n + i).to_string(),
                        forward: map_config(&s.base.alphabet, &s.forward[i]),
                        backward: map_config(&s.base.alphabet, &s.backward[i]),
                    })
                    .collect();
                SolverConfig::Split {
                    base: Box::new(s.base.to_config()),
                    stable,
                }
            }
            Kind::Mapped(m) => SolverConfig::Mapped {
                source: names(&self.alphabet),
                images: self
                    .alphabet
                    .names()
                    .iter()
                    .cloned()
                    .zip(m.images.iter().map(|w| m.target.alphabet.format(w)))
                    .collect(),
                target: Box::new(m.target.to_config()),
            },
        }
    }

    /// Builds a solver from its JSON description. Relative presentation
    /// paths resolve against `base_dir`.
    pub fn from_config(cfg: &SolverConfig, base_dir: &Path) -> Result<Solver> {
        match cfg {
            SolverConfig::Free { generators } => Ok(Solver::free(Alphabet::new(generators)?)),
            SolverConfig::FreeAbelian { generators } => Ok(Solver::free_abelian(Alphabet::new(generators)?)),
            SolverConfig::Direct { factors } => Solver::direct(
                factors.iter().map(|f| Solver::from_config(f, base_dir)).collect::<Result<_>>()?,
            ),
            SolverConfig::FreeProduct { factors } => Solver::free_product(
                factors.iter().map(|f| Solver::from_config(f, base_dir)).collect::<Result<_>>()?,
            ),
            SolverConfig::SmallCanc {
                presentation,
                text,
                unchecked,
            } => {
                let p = match (presentation, text) {
                    (Some(path), _) => Presentation::parse(&std::fs::read_to_string(base_dir.join(path))?)?,
                    (None, Some(t)) => Presentation::parse(t)?,
                    (None, None) => {
                        return Err(Error::Validation("smallcanc solver needs a presentation".into()))
                    }
                };
                if *unchecked {
                    Ok(Solver::small_cancellation_unchecked(&p))
                } else {
                    Solver::small_cancellation(&p)
                }
            }
            SolverConfig::Split { base, stable } => {
                let base = Solver::from_config(base, base_dir)?;
                let names: Vec<String> = stable.iter().map(|s| s.name.clone()).collect();
                let fwd = stable
                    .iter()
                    .map(|s| parse_map(&base.alphabet, &s.forward))
                    .collect::<Result<_>>()?;
                let bwd = stable
                    .iter()
                    .map(|s| parse_map(&base.alphabet, &s.backward))
                    .collect::<Result<_>>()?;
                Solver::split_extension(base, &names, fwd, bwd)
            }
            SolverConfig::Mapped {
                source,
                images,
                target,
            } => {
                let target = Solver::from_config(target, base_dir)?;
                let source = Alphabet::new(source)?;
                let imgs = source
                    .names()
                    .iter()
                    .map(|n| {
                        let t = images
                            .get(n)
                            .ok_or_else(|| Error::Validation(format!("no image for generator {n}")))?;
                        target.alphabet.parse(t)
                    })
                    .collect::<Result<_>>()?;
                Solver::mapped(source, imgs, target)
            }
        }
    }
}

fn relabelled_text(p: &Presentation, alphabet: &Alphabet) -> String {
    let names = alphabet.names().to_vec();
    p.renamed(|n| {
        let g = p.alphabet().index_of(n).unwrap_or(0);
        names[g].clone()
    })
    .map(|q| q.to_text())
    .unwrap_or_else(|_| p.to_text())
}

fn map_config(alphabet: &Alphabet, images: &[Word]) -> BTreeMap<String, String> {
    images
        .iter()
        .enumerate()
        .map(|(g, w)| (alphabet.name(g).to_string(), alphabet.format(w)))
        .collect()
}

fn parse_map(alphabet: &Alphabet, m: &BTreeMap<String, String>) -> Result<Vec<Word>> {
    for k in m.keys() {
        alphabet.lookup(k)?;
    }
    alphabet
        .names()
        .iter()
        .map(|n| match m.get(n) {
            Some(t) => alphabet.parse(t),
            None => Ok(Word::generator(alphabet.lookup(n)?)),
        })
        .collect()
}

/// Syllable stack over factor-local letters.
fn syllables(c: &Composite, w: &Word, budget: usize) -> Result<Vec<(usize, Word)>> {
    let mut stack: Vec<(usize, Word)> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let f = c.owner[letters[i].generator()].0;
        let mut run = Vec::new();
        while i < letters.len() && c.owner[letters[i].generator()].0 == f {
            let (_, g) = c.owner[letters[i].generator()];
            run.push(Letter::new(g, letters[i].is_positive()));
            i += 1;
        }
        let mut syl = Word::reduce(run);
        if let Some((top, prev)) = stack.last() {
            if *top == f {
                syl = prev.concat(&syl);
                stack.pop();
            }
        }
        if !c.factors[f].decide(&syl, budget)? {
            stack.push((f, syl));
        }
    }
    Ok(stack)
}

/// Right-to-left scan keeping `suffix = base · free`. Prepending `t^-1`
/// turns `base` into its forward image, prepending `t` into its backward
/// image.
fn collect_split(s: &Split, m: usize, w: &Word, budget: usize) -> Result<(Word, Word)> {
    let n = s.base.alphabet.rank();
    let mut base: Vec<Letter> = Vec::new(); // reversed
    let mut free: Vec<Letter> = Vec::new(); // reversed
    for &l in w.letters().iter().rev() {
        let g = l.generator();
        if g < n {
            push_reduced(&mut base, l);
            continue;
        }
        let t = g - n;
        debug_assert!(t < m);
        let cur = Word::reduce(base.iter().rev().copied());
        let maps = if l.is_positive() { &s.backward[t] } else { &s.forward[t] };
        let img = substitute_capped(&cur, maps, budget)?;
        base = img.into_letters();
        base.reverse();
        push_reduced(&mut free, Letter::new(t, l.is_positive()));
    }
    base.reverse();
    free.reverse();
    Ok((Word::reduce(base), Word::reduce(free)))
}

/// Serializable solver description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SolverConfig {
    Free {
        generators: Vec<String>,
    },
    FreeAbelian {
        generators: Vec<String>,
    },
    Direct {
        factors: Vec<SolverConfig>,
    },
    FreeProduct {
        factors: Vec<SolverConfig>,
    },
    SmallCanc {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        presentation: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        text: Option<String>,
        #[serde(default)]
        unchecked: bool,
    },
    Split {
        base: Box<SolverConfig>,
        stable: Vec<StableConfig>,
    },
    Mapped {
        source: Vec<String>,
        images: BTreeMap<String, String>,
        target: Box<SolverConfig>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableConfig {
    pub name: String,
    pub forward: BTreeMap<String, String>,
    pub backward: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn free(names: &[&str]) -> Solver {
        Solver::free(abc(names))
    }

    #[test]
    fn product_examples() {
        let d = Solver::direct(vec![free(&["b", "c"]), free(&["d", "e"])]).unwrap();
        assert!(d.is_identity(&d.alphabet().parse("c^-1 d^-1 c d").unwrap()).unwrap());
        assert!(!d.is_identity(&d.alphabet().parse("b^-1 c^-1 b c").unwrap()).unwrap());

        let fp = Solver::free_product(vec![free(&["x"]), free(&["x_bar"])]).unwrap();
        let w = fp.alphabet().parse("x x_bar x^-1 x_bar^-1").unwrap();
        assert!(!fp.is_identity(&w).unwrap());

        let ab = Solver::free_abelian(abc(&["a", "b"]));
        assert!(ab.is_identity(&ab.alphabet().parse("a b a^-1 b^-1").unwrap()).unwrap());
    }

    #[test]
    fn syllable_forms() {
        let fp = Solver::free_product(vec![Solver::free_abelian(abc(&["a", "b"])), free(&["c"])]).unwrap();
        let w = fp.alphabet().parse("a b a^-1 b^-1 c").unwrap();
        let nf = fp.syllable_normal_form(&w).unwrap();
        assert_eq!(nf, vec![(1, fp.alphabet().parse("c").unwrap())]);
        assert!(fp.syllable_normal_form(&Word::identity()).unwrap().is_empty());

        let fp = Solver::free_product(vec![free(&["x"]), free(&["x_bar"])]).unwrap();
        // built unreduced on purpose
        let w = Word::from(vec![Letter::pos(0), Letter::pos(1), Letter::neg(1), Letter::neg(0)]);
        assert!(fp.syllable_normal_form(&w).unwrap().is_empty());

        // a trivial middle syllable lets its neighbours merge
        let fp = Solver::free_product(vec![Solver::free_abelian(abc(&["a", "b"])), free(&["c"])]).unwrap();
        let w = fp.alphabet().parse("c a b a^-1 b^-1 c").unwrap();
        assert_eq!(fp.syllable_normal_form(&w).unwrap(), vec![(1, fp.alphabet().parse("c^2").unwrap())]);
        let w = fp.alphabet().parse("a b c a^-1 b^-1 a b c^-1 b^-1 a^-1").unwrap();
        assert!(fp.is_identity(&w).unwrap());
    }

    fn conj_split() -> Solver {
        // t acts on F(a) by conjugation by a, which is the identity on F(a)
        let base = free(&["a"]);
        let a = Word::generator(0);
        Solver::split_extension(base, &["t".to_string()], vec![vec![a.conjugate_by(&a)]], vec![vec![a.clone()]]).unwrap()
    }

    #[test]
    fn collect_examples() {
        let s = conj_split();
        let w = s.alphabet().parse("t^-1 a t a^-1").unwrap();
        let (b, f) = s.collect(&w).unwrap();
        assert!(b.is_empty() && f.is_empty());
        assert!(s.is_identity(&w).unwrap());

        let base = free(&["x", "x_bar"]);
        let id = vec![Word::generator(0), Word::generator(1)];
        let s = Solver::split_extension(base, &["s".to_string()], vec![id.clone()], vec![id]).unwrap();
        let w = s.alphabet().parse("s^-1 x s x^-1").unwrap();
        assert_eq!(s.collect(&w).unwrap(), (Word::identity(), Word::identity()));
        let w = s.alphabet().parse("s x").unwrap();
        let (b, f) = s.collect(&w).unwrap();
        assert_eq!(s.alphabet().format(&b), "x");
        assert_eq!(s.alphabet().format(&f), "s");
    }

    fn psi_split() -> Solver {
        let base = free(&["a", "b", "c"]);
        let al = base.alphabet().clone();
        let p = |t: &str| al.parse(t).unwrap();
        let fwd = vec![p("c"), p("a c"), p("b c")];
        let bwd = vec![p("b a^-1"), p("c a^-1"), p("a")];
        Solver::split_extension(base, &["s".to_string()], vec![fwd], vec![bwd]).unwrap()
    }

    #[test]
    fn split_relators_collect_to_identity() {
        let s = psi_split();
        for (l, r) in [("a", "c"), ("b", "a c"), ("c", "b c")] {
            let w = s.alphabet().parse(&format!("s^-1 {l} s ({r})^-1")).unwrap();
            assert!(s.is_identity(&w).unwrap(), "{l}");
        }
        // base · free reproduces the element
        let w = s.alphabet().parse("a s b s^-1 s^-1 c").unwrap();
        let (b, f) = s.collect(&w).unwrap();
        let back = b.concat(&f).concat(&w.inverse());
        assert!(s.is_identity(&back).unwrap());
        assert!(!s.is_identity(&s.alphabet().parse("s a s^-1 a^-1").unwrap()).unwrap());
    }

    #[test]
    fn split_rejects_non_inverse_maps() {
        let base = free(&["a", "b"]);
        let p = |t: &str| base.alphabet().parse(t).unwrap();
        let fwd = vec![p("b"), p("a")];
        let bwd = vec![p("a"), p("b")];
        assert!(matches!(
            Solver::split_extension(base.clone(), &["t".to_string()], vec![fwd], vec![bwd]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let s = psi_split().with_budget(50);
        let w = s.alphabet().parse("s^-12 a s^12 a^-1").unwrap();
        assert!(matches!(s.is_identity(&w), Err(Error::Budget(_))));
    }

    #[test]
    fn unknown_letters_rejected() {
        let f = free(&["a"]);
        assert!(f.is_identity(&Word::generator(3)).is_err());
    }

    #[test]
    fn config_round_trip() {
        let p = Presentation::parse("generators: a b c d\nrel: a^-1 b^-1 a b c^-1 d^-1 c d\n").unwrap();
        let s = Solver::direct(vec![
            Solver::free_product(vec![free(&["x"]), Solver::free_abelian(abc(&["y", "z"]))]).unwrap(),
            Solver::small_cancellation(&p).unwrap(),
            psi_split().rename("_q").unwrap(),
        ])
        .unwrap();
        let cfg = s.to_config();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: SolverConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        let s2 = Solver::from_config(&back, Path::new(".")).unwrap();
        assert_eq!(s2.alphabet().names(), s.alphabet().names());
        let w = s.alphabet().parse("y z y^-1 z^-1 s_q^-1 a_q s_q c_q^-1 a^-1 b^-1 a b c^-1 d^-1 c d").unwrap();
        assert!(s.is_identity(&w).unwrap());
        assert!(s2.is_identity(&w).unwrap());
        let parsed: SolverConfig =
            serde_json::from_str(r#"{"type":"direct","factors":[{"type":"free","generators":["u"]}]}"#).unwrap();
        assert_eq!(Solver::from_config(&parsed, Path::new(".")).unwrap().kind_name(), "direct");
    }

    #[test]
    fn mapped_solver_decides_through_images() {
        let target = Solver::direct(vec![free(&["x_q"]), free(&["x_a"])]).unwrap();
        let t = target.alphabet().clone();
        let m = Solver::mapped(abc(&["x", "y"]), vec![t.parse("x_q x_a").unwrap(), t.parse("x_a").unwrap()], target).unwrap();
        assert!(!m.is_identity(&m.alphabet().parse("x y^-1").unwrap()).unwrap());
        assert!(m.is_identity(&m.alphabet().parse("x y x^-1 y^-1").unwrap()).unwrap());
    }
}

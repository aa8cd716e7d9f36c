//! Free-group words over finite named alphabets.
//!
//! A [`Word`] is always freely reduced. Letters refer to generators by their
//! index in an [`Alphabet`], so renaming an alphabet never touches words.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A signed generator: `+(i+1)` for generator `i`, `-(i+1)` for its inverse.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, positive: bool) -> Self {
        let g = generator as i32 + 1;
        Letter(if positive { g } else { -g })
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    #[inline]
    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Dense code in `0..2*rank`, used by automata: `2g` for `g`, `2g+1` for `g^-1`.
    #[inline]
    pub fn code(self) -> usize {
        2 * self.generator() + usize::from(!self.is_positive())
    }

    pub fn from_code(code: usize) -> Self {
        Letter::new(code / 2, code.is_multiple_of(2))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "g{}", self.generator())
        } else {
            write!(f, "g{}'", self.generator())
        }
    }
}

/// Ordered list of distinct generator names. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Arc<Vec<String>>,
    index: Arc<HashMap<String, usize>>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::Validation(format!("invalid generator name {n:?}")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        Ok(Alphabet {
            names: Arc::new(names),
            index: Arc::new(index),
        })
    }

    pub fn empty() -> Self {
        Alphabet::new(Vec::<String>::new()).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Same generators with every name passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Alphabet::new(self.names.iter().map(|n| f(n)))
    }

    pub fn with_suffix(&self, suffix: &str) -> Result<Self> {
        self.renamed(|n| format!("{n}{suffix}"))
    }

    /// Generators of `self` followed by those of `other`.
    pub fn concat(&self, other: &Alphabet) -> Result<Self> {
        Alphabet::new(self.names.iter().chain(other.names.iter()))
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.generator() >= self.rank()) {
            Some(l) => Err(Error::AlphabetMismatch(format!(
                "generator index {} outside alphabet of rank {}",
                l.generator(),
                self.rank()
            ))),
            None => Ok(()),
        }
    }

    /// Letter for a generator name (`positive` selects the sign).
    pub fn letter(&self, name: &str, positive: bool) -> Result<Letter> {
        Ok(Letter::new(self.lookup(name)?, positive))
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        parse_word(text, self)
    }

    pub fn format(&self, w: &Word) -> String {
        format_word(w, self)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Free reduction by a single stack scan.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Reduces `raw` after checking every letter against `alphabet`.
    pub fn reduce_in(raw: &[Letter], alphabet: &Alphabet) -> Result<Self> {
        if let Some(l) = raw.iter().find(|l| l.generator() >= alphabet.rank()) {
            return Err(Error::AlphabetMismatch(format!(
                "generator index {} outside alphabet of rank {}",
                l.generator(),
                alphabet.rank()
            )));
        }
        Ok(Word::reduce(raw.iter().copied()))
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        // Only the junction can cancel.
        let mut k = 0;
        let (a, b) = (&self.0, &other.0);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self^-1 · g · self`-style conjugate `x^-1 w x`.
    pub fn conjugate_by(&self, x: &Word) -> Word {
        x.inverse().concat(self).concat(x)
    }

    /// Returns `(core, conjugator)` with `self = conjugator · core · conjugator^-1`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.0;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inverse() {
            k += 1;
        }
        (
            Word(l[k..l.len() - k].to_vec()),
            Word(l[..k].to_vec()),
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => self.0.len() == 1 || *a != b.inverse(),
            _ => true,
        }
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator() == generator)
            .map(|l| l.sign())
            .sum()
    }

    pub fn exponent_sum_of(&self, name: &str, alphabet: &Alphabet) -> Result<i64> {
        Ok(self.exponent_sum(alphabet.lookup(name)?))
    }

    /// Left rotation by `k` letters.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// True when `other` is a cyclic rotation of `self` (both assumed cyclically reduced).
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && (self.is_empty() || rotation_offset(&self.0, &other.0).is_some())
    }

    /// Applies a letter substitution (images indexed by generator) and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator()];
            if l.is_positive() {
                for &x in img.letters() {
                    push_reduced(&mut out, x);
                }
            } else {
                for &x in img.letters().iter().rev() {
                    push_reduced(&mut out, x.inverse());
                }
            }
        }
        Word(out)
    }

    /// Renumbers generators via `map[g]`.
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word::reduce(
            self.0
                .iter()
                .map(|l| Letter::new(map[l.generator()], l.is_positive())),
        )
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word::reduce(self.0[start..end].iter().copied())
    }
}

#[inline]
pub(crate) fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Offset `k` with `b == rotate(a, k)`, via KMP search of `b` in `a·a`.
pub(crate) fn rotation_offset(a: &[Letter], b: &[Letter]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    let n = b.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && b[i] != b[k] {
            k = fail[k - 1];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut q = 0;
    for i in 0..(2 * n - 1) {
        let c = a[i % n];
        while q > 0 && c != b[q] {
            q = fail[q - 1];
        }
        if c == b[q] {
            q += 1;
        }
        if q == n {
            return Some(i + 1 - n);
        }
    }
    None
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word::reduce(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Text form
//
//   word := item (SP item)* | ""      item := atom ("^" int)?
//   atom := name | "(" word ")"       int  := "-"? [0-9]+

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self, out: &mut Vec<Letter>) -> Result<()> {
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                None | Some(b')') => return Ok(()),
                _ => self.item(out)?,
            }
        }
    }

    fn item(&mut self, out: &mut Vec<Letter>) -> Result<()> {
        let mut atom = Vec::new();
        match self.src[self.pos] {
            b'(' => {
                self.pos += 1;
                self.word(&mut atom)?;
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let g = self.alphabet.index_of(name).ok_or_else(|| {
                    Error::UnknownGenerator(name.to_string())
                })?;
                atom.push(Letter::pos(g));
            }
            c => return Err(self.err(format!("unexpected character {:?}", c as char))),
        }
        let exp = if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            self.int()?
        } else {
            1
        };
        let atom = Word::reduce(atom);
        let block = if exp < 0 { atom.inverse() } else { atom };
        for _ in 0..exp.unsigned_abs() {
            for &l in block.letters() {
                push_reduced(out, l);
            }
        }
        Ok(())
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("exponent out of range"))
    }
}

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        alphabet,
    };
    let mut out = Vec::new();
    p.word(&mut out)?;
    if p.pos != p.src.len() {
        return Err(p.err("unbalanced ')'"));
    }
    Ok(Word(out))
}

/// Maximal runs `g^k` of a single letter.
fn syllables(w: &Word) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for l in w.letters() {
        match out.last_mut() {
            Some((g, e)) if *g == l.generator() && e.signum() == l.sign() => *e += l.sign(),
            _ => out.push((l.generator(), l.sign())),
        }
    }
    out
}

fn fmt_syllable(out: &mut String, alphabet: &Alphabet, (g, e): (usize, i64)) {
    out.push_str(alphabet.name(g));
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

const MAX_PERIOD: usize = 4;

/// Canonical text: runs collapse to `g^k`, and repeated blocks of up to four
/// syllables collapse to `(…)^k`, chosen greedily left to right by coverage.
pub fn format_word(w: &Word, alphabet: &Alphabet) -> String {
    let syl = syllables(w);
    let mut out = String::new();
    let mut i = 0;
    while i < syl.len() {
        let mut best: Option<(usize, usize)> = None; // (period, reps)
        for p in 2..=MAX_PERIOD {
            if i + 2 * p > syl.len() {
                break;
            }
            let mut reps = 1;
            while i + (reps + 1) * p <= syl.len()
                && syl[i + reps * p..i + (reps + 1) * p] == syl[i..i + p]
            {
                reps += 1;
            }
            if reps >= 2 && best.is_none_or(|(bp, br)| reps * p > bp * br) {
                best = Some((p, reps));
            }
        }
        if !out.is_empty() {
            out.push(' ');
        }
        match best {
            Some((p, reps)) => {
                out.push('(');
                for (k, s) in syl[i..i + p].iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    fmt_syllable(&mut out, alphabet, *s);
                }
                out.push_str(")^");
                out.push_str(&reps.to_string());
                i += p * reps;
            }
            None => {
                fmt_syllable(&mut out, alphabet, syl[i]);
                i += 1;
            }
        }
    }
    out
}

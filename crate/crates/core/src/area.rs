//! Van Kampen area at desk scale, and an instrumented rewriting procedure
//! that removes the stable letter from trivial words of the concise
//! presentation of Stallings' group.

use rustc_hash::FxHashSet;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::growth::{classify_growth, loglog_fit, Fit, GrowthReport};
use crate::homomorphisms::random_reduced_word;
use crate::presentations::{cyclic_key, example_catalog, Presentation};
use crate::smallcanc::symmetrize;
use crate::solvers::Solver;
use crate::words::{push_reduced, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AreaBudget {
    /// Longest intermediate (freely reduced) word allowed.
    pub max_len: usize,
    /// Largest cost considered.
    pub max_cells: usize,
    /// Expanded states before giving up.
    pub max_states: usize,
}

impl Default for AreaBudget {
    fn default() -> Self {
        AreaBudget {
            max_len: 64,
            max_cells: 64,
            max_states: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AreaStatus {
    Exact { area: usize },
    /// Lower bound only. `upper` is the cost of a path found, if any.
    AtLeast { bound: usize, upper: Option<usize> },
    NotTrivialWithinBudget,
}

/// One relator application: `w[pos..pos+removed]` replaced by `inserted`,
/// then free reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaMove {
    pub pos: usize,
    pub removed: Word,
    pub inserted: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaResult {
    pub status: AreaStatus,
    pub states: usize,
    pub peak_len: usize,
    #[serde(skip)]
    pub trace: Vec<AreaMove>,
}

impl AreaResult {
    /// Best known lower bound on the area.
    pub fn lower_bound(&self) -> Option<usize> {
        match self.status {
            AreaStatus::Exact { area } => Some(area),
            AreaStatus::AtLeast { bound, .. } => Some(bound),
            AreaStatus::NotTrivialWithinBudget => None,
        }
    }
}

struct Rotation {
    letters: Vec<Letter>,
}

/// Minimal number of relator applications turning `w` into the empty word.
///
/// Breadth-first over freely reduced words, each layer expanded shortest
/// word first. Only moves replacing a nonempty subword are generated: a
/// reduced diagram always has a cell with an edge on its boundary, and
/// peeling that cell off is such a move, so nothing is lost. A state over
/// `max_len` found at depth `d` still needs one more move, so it caps the
/// claimable area at `d + 1`.
pub fn area_search(p: &Presentation, w: &Word, budget: AreaBudget) -> Result<AreaResult> {
    if budget.max_len == 0 || budget.max_states == 0 || budget.max_cells == 0 {
        return Err(Error::Validation("area budgets must be positive".into()));
    }
    p.alphabet().check_word(w)?;
    let w = Word::reduce(w.letters().iter().copied());
    if w.is_empty() {
        return Ok(AreaResult {
            status: AreaStatus::Exact { area: 0 },
            states: 0,
            peak_len: 0,
            trace: Vec::new(),
        });
    }
    let mut rotations = Vec::new();
    for e in symmetrize(p) {
        let n = e.letters.len();
        for k in 0..n {
            let mut v = e.letters[k..].to_vec();
            v.extend_from_slice(&e.letters[..k]);
            rotations.push(Rotation { letters: v });
        }
    }

    let mut seen: FxHashSet<Vec<Letter>> = FxHashSet::default();
    let mut nodes: Vec<Node> = Vec::new();
    seen.insert(w.letters().to_vec());
    nodes.push(Node {
        word: w.letters().to_vec(),
        parent: None,
    });
    let mut layer = vec![0usize];
    let mut cut_bound = usize::MAX;
    let mut expanded = 0usize;
    let mut peak = w.len();
    let mut depth = 0usize;
    let stop = |bound: usize, expanded: usize, peak: usize| AreaResult {
        status: AreaStatus::AtLeast { bound, upper: None },
        states: expanded,
        peak_len: peak,
        trace: Vec::new(),
    };

    while !layer.is_empty() {
        // layers before `depth` are exhausted, so the area exceeds `depth`
        if depth + 1 > budget.max_cells || depth + 1 >= cut_bound {
            return Ok(stop((depth + 1).min(cut_bound), expanded, peak));
        }
        layer.sort_by(|&a, &b| {
            let (x, y) = (&nodes[a].word, &nodes[b].word);
            x.len().cmp(&y.len()).then_with(|| x.cmp(y))
        });
        let mut next_layer = Vec::new();
        for &id in &layer {
            if expanded >= budget.max_states {
                return Ok(stop((depth + 1).min(cut_bound), expanded, peak));
            }
            expanded += 1;
            let cur = nodes[id].word.clone();
            for (pos, ri, j, next) in moves(&cur, &rotations) {
                if next.len() > budget.max_len {
                    cut_bound = cut_bound.min(depth + 2);
                    continue;
                }
                if !seen.insert(next.clone()) {
                    continue;
                }
                peak = peak.max(next.len());
                let r = &rotations[ri].letters;
                let mv = AreaMove {
                    pos,
                    removed: Word::from(cur[pos..pos + j].to_vec()),
                    inserted: Word::from(r[j..].iter().rev().map(|l| l.inverse()).collect::<Vec<_>>()),
                };
                let done = next.is_empty();
                nodes.push(Node {
                    word: next,
                    parent: Some((id, mv)),
                });
                let nid = nodes.len() - 1;
                if done {
                    let area = depth + 1;
                    let trace = rebuild(&nodes, nid);
                    let status = if area <= cut_bound {
                        AreaStatus::Exact { area }
                    } else {
                        AreaStatus::AtLeast {
                            bound: cut_bound,
                            upper: Some(area),
                        }
                    };
                    return Ok(AreaResult {
                        status,
                        states: expanded,
                        peak_len: peak,
                        trace,
                    });
                }
                next_layer.push(nid);
            }
        }
        layer = next_layer;
        depth += 1;
    }
    // Everything reachable within the width was explored.
    Ok(AreaResult {
        status: AreaStatus::NotTrivialWithinBudget,
        states: expanded,
        peak_len: peak,
        trace: Vec::new(),
    })
}

struct Node {
    word: Vec<Letter>,
    parent: Option<(usize, AreaMove)>,
}

fn rebuild(nodes: &[Node], mut id: usize) -> Vec<AreaMove> {
    let mut out = Vec::new();
    while let Some((parent, mv)) = &nodes[id].parent {
        out.push(mv.clone());
        id = *parent;
    }
    out.reverse();
    out
}

/// All single applications as `(position, rotation, prefix length, result)`,
/// in that order.
fn moves<'a>(
    w: &'a [Letter],
    rotations: &'a [Rotation],
) -> impl Iterator<Item = (usize, usize, usize, Vec<Letter>)> + 'a {
    (0..=w.len()).flat_map(move |i| {
        rotations.iter().enumerate().flat_map(move |(ri, r)| {
            let n = r.letters.len();
            let max_j = (w.len() - i).min(n);
            let mut j_max = 0;
            while j_max < max_j && w[i + j_max] == r.letters[j_max] {
                j_max += 1;
            }
            (1..=j_max).map(move |j| {
                let mut out = Vec::with_capacity(w.len() + n - j);
                out.extend_from_slice(&w[..i]);
                for l in r.letters[j..].iter().rev() {
                    push_reduced(&mut out, l.inverse());
                }
                // the tail is reduced, so cancellation stops at its first survivor
                let mut k = i + j;
                while k < w.len() && out.last() == Some(&w[k].inverse()) {
                    out.pop();
                    k += 1;
                }
                out.extend_from_slice(&w[k..]);
                (i, ri, j, out)
            })
        })
    })
}

/// Replays an area trace; true when it ends at the empty word and every
/// move is a genuine relator identity.
pub fn replay_area_trace(p: &Presentation, w: &Word, trace: &[AreaMove]) -> bool {
    let keys: Vec<Vec<Letter>> = p.relators().iter().map(|r| cyclic_key(r.word())).collect();
    let mut cur = Word::reduce(w.letters().iter().copied()).into_letters();
    for m in trace {
        let end = m.pos + m.removed.len();
        if end > cur.len() || cur[m.pos..end] != *m.removed.letters() {
            return false;
        }
        if !is_relator_identity(&keys, &m.removed, &m.inserted) {
            return false;
        }
        let mut raw = cur[..m.pos].to_vec();
        raw.extend_from_slice(m.inserted.letters());
        raw.extend_from_slice(&cur[end..]);
        cur = Word::reduce(raw).into_letters();
    }
    cur.is_empty()
}

/// `removed · inserted^-1` is conjugate to a relator or its inverse.
fn is_relator_identity(keys: &[Vec<Letter>], removed: &Word, inserted: &Word) -> bool {
    let core = removed.concat(&inserted.inverse()).cyclic_reduce().0;
    let k = cyclic_key(&core);
    keys.contains(&k)
}

/// Row of an area experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaRow {
    pub n: usize,
    pub word_len: usize,
    pub result: AreaResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaExperiment {
    pub rows: Vec<AreaRow>,
    /// Fit of the lower bounds; absent with fewer than eight rows.
    pub growth: Option<GrowthReport>,
    pub note: &'static str,
}

/// Runs [`area_search`] on `family(n)` for each `n`. Every family word is
/// first checked trivial with `checker`; a nontrivial one is an error.
pub fn area_experiment(
    p: &Presentation,
    family: impl Fn(usize) -> Word,
    ns: impl IntoIterator<Item = usize>,
    budget: AreaBudget,
    checker: &Solver,
) -> Result<AreaExperiment> {
    let mut rows = Vec::new();
    for n in ns {
        let w = family(n);
        if !checker.is_identity(&w)? {
            return Err(Error::Validation(format!(
                "family word for n = {n} is not trivial: {}",
                p.alphabet().format(&w)
            )));
        }
        let result = area_search(p, &w, budget)?;
        rows.push(AreaRow {
            n,
            word_len: w.len(),
            result,
        });
    }
    let seq: Vec<(u64, f64)> = rows
        .iter()
        .filter_map(|r| r.result.lower_bound().map(|b| (r.n as u64, b as f64)))
        .collect();
    let growth = if seq.len() >= 8 { classify_growth(&seq).ok() } else { None };
    Ok(AreaExperiment {
        rows,
        growth,
        note: "at_least rows are lower bounds only",
    })
}

// ---------------------------------------------------------------------------
// Rewriting in the concise presentation a b c d e.

const A: usize = 0;
const B: usize = 1;
const E: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `x y → y x` for `x ∈ {b, c}`, `y ∈ {d, e}` (either order, any signs).
    Commute,
    /// `x^-1 a^η x → y^-1 a^η y` for neighbours `x, y` in the chain b–c–d–e.
    Chain,
    /// Insertion or deletion of `l l^-1`.
    Free,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Commute => "[x,y]=1",
            Rule::Chain => "a^x=a^y",
            Rule::Free => "free",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub pos: usize,
    pub removed: Vec<Letter>,
    pub inserted: Vec<Letter>,
    pub len_before: usize,
    pub len_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub relator_applications: usize,
    pub residual: Word,
    /// Why the procedure stopped with stable letters left, if it did.
    pub stuck: Option<String>,
}

impl ReductionTrace {
    /// One JSON object per step.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(
                &json!({
                    "rule": s.rule.id(),
                    "pos": s.pos,
                    "len_before": s.len_before,
                    "len_after": s.len_after,
                })
                .to_string(),
            );
            out.push('\n');
        }
        out
    }
}

struct Rewriter {
    w: Vec<Letter>,
    steps: Vec<TraceStep>,
    apps: usize,
}

fn is_bc(l: Letter) -> bool {
    matches!(l.generator(), 1 | 2)
}

fn is_de(l: Letter) -> bool {
    matches!(l.generator(), 3 | 4)
}

fn lp(g: usize, pos: bool) -> Letter {
    Letter::new(g, pos)
}

impl Rewriter {
    fn replace(&mut self, pos: usize, len: usize, new: Vec<Letter>, rule: Rule) {
        let before = self.w.len();
        let removed: Vec<Letter> = self.w.splice(pos..pos + len, new.iter().copied()).collect();
        if rule != Rule::Free {
            self.apps += 1;
        }
        self.steps.push(TraceStep {
            rule,
            pos,
            removed,
            inserted: new,
            len_before: before,
            len_after: self.w.len(),
        });
    }

    fn commute(&mut self, pos: usize) {
        let (x, y) = (self.w[pos], self.w[pos + 1]);
        debug_assert!((is_bc(x) && is_de(y)) || (is_de(x) && is_bc(y)));
        self.replace(pos, 2, vec![y, x], Rule::Commute);
    }

    /// `x^-1 a^η x` at `pos` becomes `z^-1 a^η z`, one chain step at a time.
    fn chain(&mut self, pos: usize, z: usize) {
        let mut x = self.w[pos + 2].generator();
        let eta = self.w[pos + 1];
        while x != z {
            let y = if z > x { x + 1 } else { x - 1 };
            self.replace(pos, 3, vec![lp(y, false), eta, lp(y, true)], Rule::Chain);
            x = y;
        }
    }

    fn insert_free(&mut self, pos: usize, l: Letter) {
        self.replace(pos, 0, vec![l, l.inverse()], Rule::Free);
    }

    fn cancel_free(&mut self, pos: usize) {
        debug_assert_eq!(self.w[pos], self.w[pos + 1].inverse());
        self.replace(pos, 2, Vec::new(), Rule::Free);
    }

    /// `x a^η x^-1` at `pos` becomes `z a^η z^-1`, for `x`, `z` commuting.
    fn conj_flip(&mut self, pos: usize, z: usize) {
        let x = self.w[pos].generator();
        let zl = lp(z, true);
        self.insert_free(pos, zl); // z z^-1 x a x^-1
        self.insert_free(pos + 5, zl); // z z^-1 x a x^-1 z z^-1
        self.commute(pos + 1); // z x z^-1 a x^-1 z z^-1
        self.commute(pos + 4); // z x z^-1 a z x^-1 z^-1
        self.chain(pos + 2, x); // z x x^-1 a x x^-1 z^-1
        self.cancel_free(pos + 1);
        self.cancel_free(pos + 2);
    }

    /// Free reduction of `w[lo..hi]`; returns the new end.
    fn free_reduce_range(&mut self, lo: usize, hi: usize) -> usize {
        let mut kept = 0usize;
        let mut i = lo;
        let mut end = hi;
        while i < end {
            if kept > 0 && self.w[i - 1] == self.w[i].inverse() {
                self.cancel_free(i - 1);
                kept -= 1;
                i -= 1;
                end -= 2;
            } else {
                kept += 1;
                i += 1;
            }
        }
        end
    }

    /// Leftmost `a^ε h a^-ε` with `h` free of `a` and of exponent sum zero.
    fn find_pinch(&self) -> Option<(usize, usize)> {
        let pos: Vec<usize> = (0..self.w.len()).filter(|&i| self.w[i].generator() == A).collect();
        for k in 0..pos.len().saturating_sub(1) {
            let (i, j) = (pos[k], pos[k + 1]);
            if self.w[i] != self.w[j].inverse() {
                continue;
            }
            let sigma: i64 = self.w[i + 1..j].iter().map(|l| l.sign()).sum();
            if sigma == 0 {
                return Some((i, j));
            }
        }
        None
    }

    /// Removes the pinch at `(i, j)`, leaving `u v` in its place.
    fn eliminate(&mut self, i: usize, j: usize) {
        // sort h into u(b, c) v(d, e)
        let mut j = j;
        loop {
            let swap = (i + 1..j.saturating_sub(1)).find(|&p| is_de(self.w[p]) && is_bc(self.w[p + 1]));
            match swap {
                Some(p) => self.commute(p),
                None => break,
            }
        }
        j = self.free_reduce_range(i + 1, j);
        let m = (i + 1..j).find(|&p| is_de(self.w[p])).unwrap_or(j);
        let u_len = m - (i + 1);
        let v_len = j - m;

        // push a^ε right through u, keeping the block e^-k a^ε e^k
        let mut s = i;
        let mut k: i64 = 0;
        for _ in 0..u_len {
            let ak = k.unsigned_abs() as usize;
            let mut q = s + 2 * ak + 1;
            let y = self.w[q];
            for _ in 0..ak {
                self.commute(q - 1);
                q -= 1;
            }
            let a_pos = s + ak;
            self.insert_free(a_pos, y);
            if y.is_positive() {
                self.chain(a_pos + 1, E);
            } else {
                self.conj_flip(a_pos + 1, E);
            }
            let mut p = a_pos;
            for _ in 0..ak {
                self.commute(p - 1);
                p -= 1;
            }
            s += 1;
            self.free_reduce_range(s, s + 2 * ak + 3);
            k += y.sign();
        }
        let p_exp = k;

        // push a^-ε left through v, keeping the block b^-m a^-ε b^m
        let mut t = s + 2 * (k.unsigned_abs() as usize) + 1 + v_len;
        let mut mexp: i64 = 0;
        for _ in 0..v_len {
            let am = mexp.unsigned_abs() as usize;
            let mut yp = t - 1;
            let y = self.w[yp];
            for _ in 0..am {
                self.commute(yp);
                yp += 1;
            }
            let a_pos = yp + 1;
            self.insert_free(a_pos + 1, y.inverse());
            if y.is_positive() {
                self.conj_flip(yp, B);
            } else {
                self.chain(yp, B);
            }
            let mut q = yp + 3;
            for _ in 0..am {
                self.commute(q);
                q += 1;
            }
            t -= 1;
            self.free_reduce_range(t, t + 2 * am + 3);
            mexp -= y.sign();
        }
        debug_assert_eq!(mexp, p_exp);

        // turn e^-p a^ε e^p into b^-p a^ε b^p, innermost layer first
        let total = p_exp.unsigned_abs() as usize;
        let sign = p_exp >= 0;
        for q in 0..total {
            let r = total - q;
            let inner = s + r - 1;
            for step in 0..q {
                self.commute(inner + step);
            }
            let a_pos = s + r + q;
            let mut ep = a_pos + q + 1;
            for _ in 0..q {
                self.commute(ep - 1);
                ep -= 1;
            }
            if sign {
                self.chain(a_pos - 1, B);
            } else {
                self.conj_flip(a_pos - 1, B);
            }
        }
        let region_end = t + 2 * total + 1;
        self.free_reduce_range(s, region_end);
    }
}

/// Removes every `a^±1` from a word over `a b c d e` by relator
/// applications, recording each step. With `σ_a(w) ≠ 0`, or when no
/// pinch is left, the word is returned as far as it got.
pub fn stallings_reduce(w: &Word) -> ReductionTrace {
    let mut rw = Rewriter {
        w: Word::reduce(w.letters().iter().copied()).into_letters(),
        steps: Vec::new(),
        apps: 0,
    };
    let sigma_a = w.exponent_sum(A);
    let mut stuck = None;
    if sigma_a != 0 {
        stuck = Some(format!("exponent sum of a is {sigma_a}"));
    } else {
        while rw.w.iter().any(|l| l.generator() == A) {
            match rw.find_pinch() {
                Some((i, j)) => {
                    rw.eliminate(i, j);
                    let n = rw.w.len();
                    rw.free_reduce_range(0, n);
                }
                None => {
                    stuck = Some("no pinch a^e h a^-e with exponent sum zero".into());
                    break;
                }
            }
        }
    }
    ReductionTrace {
        relator_applications: rw.apps,
        residual: Word::from(rw.w),
        steps: rw.steps,
        stuck,
    }
}

/// Replays a trace from `w`: every step must match the current word, every
/// non-free step must be a relator identity of the concise presentation,
/// and the end must be the recorded residual.
pub fn replay_stallings_trace(w: &Word, trace: &ReductionTrace) -> bool {
    let p = concise_presentation();
    let keys: Vec<Vec<Letter>> = p.relators().iter().map(|r| cyclic_key(r.word())).collect();
    let mut cur = Word::reduce(w.letters().iter().copied()).into_letters();
    let mut apps = 0;
    for s in &trace.steps {
        let end = s.pos + s.removed.len();
        if end > cur.len() || cur[s.pos..end] != s.removed[..] || cur.len() != s.len_before {
            return false;
        }
        match s.rule {
            Rule::Free => {
                let pair = |v: &[Letter]| v.len() == 2 && v[0] == v[1].inverse();
                let ok = (s.removed.is_empty() && pair(&s.inserted)) || (s.inserted.is_empty() && pair(&s.removed));
                if !ok {
                    return false;
                }
            }
            _ => {
                apps += 1;
                let removed = Word::from(s.removed.clone());
                let inserted = Word::from(s.inserted.clone());
                if !is_relator_identity(&keys, &removed, &inserted) {
                    return false;
                }
            }
        }
        cur.splice(s.pos..end, s.inserted.iter().copied());
        if cur.len() != s.len_after {
            return false;
        }
    }
    apps == trace.relator_applications && cur == trace.residual.letters()
}

fn concise_presentation() -> Presentation {
    example_catalog("stallings_S_concise").expect("catalog entry")
}

/// Decides triviality in Stallings' group: rewrite away `a`, then solve the
/// residual in `F(b, c) × F(d, e)`.
pub fn stallings_is_trivial(w: &Word) -> bool {
    if w.exponent_sum(A) != 0 {
        return false;
    }
    let t = stallings_reduce(w);
    if t.stuck.is_some() {
        return false;
    }
    let h = Solver::direct(vec![
        Solver::free(Alphabet::new(["b", "c"]).expect("static")),
        Solver::free(Alphabet::new(["d", "e"]).expect("static")),
    ])
    .expect("disjoint factors");
    let shift: Vec<usize> = (0..5usize).map(|g| g.saturating_sub(1)).collect();
    h.is_identity(&t.residual.relabel(&shift)).expect("residual over b c d e")
}

/// Trivial word of reduced length at most about `n`: `g · a h a^-1 h'^-1 · g^-1`
/// with `h` of exponent sum zero over `b c d e` (about `n/4` letters), `h'`
/// a shuffle of `h` by commutations, and `g` random over all five letters
/// (`n/8` letters).
pub fn stallings_family<R: Rng>(rng: &mut R, n: usize) -> Word {
    let quarter = (n / 4).max(1);
    let mut h: Vec<Letter> = Vec::new();
    while h.len() < quarter {
        let l = Letter::new(rng.gen_range(1..5), rng.gen_bool(0.5));
        if h.last() != Some(&l.inverse()) {
            h.push(l);
        }
    }
    let mut sigma: i64 = h.iter().map(|l| l.sign()).sum();
    while sigma != 0 {
        let positive = sigma < 0;
        let l = (1..5)
            .map(|g| Letter::new(g, positive))
            .find(|l| h.last() != Some(&l.inverse()))
            .expect("four candidates");
        h.push(l);
        sigma += l.sign();
    }
    let mut shuffled = h.clone();
    for _ in 0..h.len() * h.len() {
        let i = rng.gen_range(0..shuffled.len().max(2) - 1);
        if i + 1 < shuffled.len() && is_bc(shuffled[i]) != is_bc(shuffled[i + 1]) {
            shuffled.swap(i, i + 1);
        }
    }
    let g = random_reduced_word(rng, 5, n / 8);
    let core = Word::reduce(
        std::iter::once(Letter::pos(A))
            .chain(h.iter().copied())
            .chain(std::iter::once(Letter::neg(A)))
            .chain(shuffled.iter().rev().map(|l| l.inverse())),
    );
    core.conjugate_by(&g.inverse())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StallingsRow {
    pub n: usize,
    pub word_len: usize,
    pub relator_applications: usize,
    pub residual_len: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StallingsExperiment {
    pub rows: Vec<StallingsRow>,
    /// `ln(applications)` against `ln(word length)`.
    pub loglog: Option<Fit>,
}

/// Runs [`stallings_reduce`] on `samples` family words per `n`, validating
/// every trace by replay.
pub fn stallings_experiment<R: Rng>(
    rng: &mut R,
    ns: impl IntoIterator<Item = usize>,
    samples: usize,
) -> Result<StallingsExperiment> {
    let mut rows = Vec::new();
    for n in ns {
        for _ in 0..samples {
            let w = stallings_family(rng, n);
            let t = stallings_reduce(&w);
            if t.stuck.is_some() || !replay_stallings_trace(&w, &t) {
                return Err(Error::Verification {
                    failed: 1,
                    first: format!("trace for n = {n} did not replay"),
                });
            }
            rows.push(StallingsRow {
                n,
                word_len: w.len(),
                relator_applications: t.relator_applications,
                residual_len: t.residual.len(),
            });
        }
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.relator_applications > 0)
        .map(|r| (r.word_len as f64, r.relator_applications as f64))
        .collect();
    let loglog = loglog_fit(&pts).ok();
    Ok(StallingsExperiment { rows, loglog })
}

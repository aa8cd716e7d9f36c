//! Homomorphisms between presented groups and the embedding builders for
//! doubles, HNN extensions and split extensions into direct products.
//!
//! Target alphabets tag coordinates by suffix: `_q` and `_qbar` for the two
//! quotient copies, `_a` for the copy of `A`; stable letters keep their names.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::FreeAutomorphism;
use crate::presentations::{
    direct_product, double, double_maps, example_catalog, hnn_centralizing, rips, semidirect_free, FreeAction,
    Presentation, RipsParams, SubgroupSpec,
};
use crate::solvers::{Solver, SolverConfig};
use crate::words::{Alphabet, Letter, Word};

pub const Q_SUFFIX: &str = "_q";
pub const QBAR_SUFFIX: &str = "_qbar";
pub const A_SUFFIX: &str = "_a";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: Presentation,
    target: Alphabet,
    images: Vec<Word>,
    label: String,
}

/// A relator whose image is not (or not provably) trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub relator: usize,
    pub image: Word,
    /// The solver ran out of budget instead of answering.
    pub indeterminate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub checked: usize,
    pub failures: Vec<VerifyFailure>,
}

impl Homomorphism {
    pub fn new(source: Presentation, target: Alphabet, images: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        if images.len() != source.alphabet().rank() {
            return Err(Error::AlphabetMismatch(format!(
                "{} images for {} source generators",
                images.len(),
                source.alphabet().rank()
            )));
        }
        for w in &images {
            target.check_word(w)?;
        }
        Ok(Homomorphism {
            source,
            target,
            images,
            label: label.into(),
        })
    }

    /// Images given as `(generator, word text)`; every generator needs one.
    pub fn from_texts(source: Presentation, target: Alphabet, images: &[(&str, &str)], label: &str) -> Result<Self> {
        let mut by_name: BTreeMap<&str, &str> = BTreeMap::new();
        for (g, t) in images {
            source.alphabet().lookup(g)?;
            by_name.insert(g, t);
        }
        let words = source
            .alphabet()
            .names()
            .iter()
            .map(|n| {
                let t = by_name
                    .get(n.as_str())
                    .ok_or_else(|| Error::Validation(format!("no image for generator {n}")))?;
                target.parse(t)
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(source, target, words, label)
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target_alphabet(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.source.alphabet().check_word(w)?;
        Ok(w.substitute(&self.images))
    }

    /// Every source relator must map to the identity of `target`.
    pub fn verify(&self, target: &Solver) -> Result<VerifyReport> {
        if target.alphabet().names() != self.target.names() {
            return Err(Error::AlphabetMismatch("solver alphabet differs from the target alphabet".into()));
        }
        let mut failures = Vec::new();
        for (i, r) in self.source.relators().iter().enumerate() {
            let image = r.word().substitute(&self.images);
            match target.is_identity(&image) {
                Ok(true) => {}
                Ok(false) => failures.push(VerifyFailure {
                    relator: i,
                    image,
                    indeterminate: false,
                }),
                Err(Error::Budget(_)) => failures.push(VerifyFailure {
                    relator: i,
                    image,
                    indeterminate: true,
                }),
                Err(e) => return Err(e),
            }
        }
        Ok(VerifyReport {
            ok: failures.is_empty(),
            checked: self.source.relators().len(),
            failures,
        })
    }

    /// `other ∘ self`; `other`'s source generators must match this target.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if other.source.alphabet().names() != self.target.names() {
            return Err(Error::AlphabetMismatch("composition across different alphabets".into()));
        }
        let images = self.images.iter().map(|w| w.substitute(&other.images)).collect();
        Homomorphism::new(
            self.source.clone(),
            other.target.clone(),
            images,
            format!("{} then {}", self.label, other.label),
        )
    }
}

/// An injective homomorphism into a group with a solved word problem.
#[derive(Clone)]
pub struct EmbeddingPackage {
    pub hom: Homomorphism,
    pub solver: Solver,
    pub provenance: String,
}

fn verified(hom: Homomorphism, solver: Solver, provenance: &str) -> Result<EmbeddingPackage> {
    let report = hom.verify(&solver)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::Verification {
            failed: report.failures.len(),
            first: format!(
                "relator {} ({}) maps to {}",
                f.relator,
                hom.source.alphabet().format(hom.source.relators()[f.relator].word()),
                hom.target.format(&f.image)
            ),
        });
    }
    Ok(EmbeddingPackage {
        hom,
        solver,
        provenance: provenance.to_string(),
    })
}

impl EmbeddingPackage {
    /// Wraps a homomorphism after checking it on every relator.
    pub fn new(hom: Homomorphism, solver: Solver, provenance: &str) -> Result<Self> {
        verified(hom, solver, provenance)
    }

    pub fn source(&self) -> &Presentation {
        self.hom.source()
    }

    pub fn verify(&self) -> Result<VerifyReport> {
        self.hom.verify(&self.solver)
    }

    /// Decides `w = 1` in the source by solving its image.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.solver.is_identity(&self.hom.apply(w)?)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.solver = self.solver.with_budget(budget);
        self
    }

    /// Reads the package through a presentation `p` of the same group:
    /// `to_source[g]` expresses generator `g` of `p` in the current source.
    pub fn precompose(&self, p: &Presentation, to_source: &[Word]) -> Result<EmbeddingPackage> {
        let inner = Homomorphism::new(p.clone(), self.source().alphabet().clone(), to_source.to_vec(), "relabel")?;
        let hom = inner.then(&self.hom)?;
        verified(hom, self.solver.clone(), &format!("{} via {}", self.provenance, p.label()))
    }

    /// Solver for the source group that decides through this package.
    pub fn as_solver(&self) -> Result<Solver> {
        Solver::mapped(
            self.source().alphabet().clone(),
            self.hom.images().to_vec(),
            self.solver.clone(),
        )
    }

    /// Replaces mapped factors by their targets, composing the images.
    pub fn flatten(&self) -> Result<EmbeddingPackage> {
        let (solver, map) = flatten_solver(&self.solver)?;
        let images = self.hom.images().iter().map(|w| w.substitute(&map)).collect();
        let hom = Homomorphism::new(
            self.source().clone(),
            solver.alphabet().clone(),
            images,
            format!("{} (flattened)", self.hom.label),
        )?;
        verified(hom, solver, &format!("{}, flattened", self.provenance))
    }

    pub fn to_json(&self) -> PackageJson {
        let a = self.source().alphabet();
        PackageJson {
            source: Some(self.source().label().to_string()),
            source_text: Some(self.source().to_text()),
            images: a
                .names()
                .iter()
                .zip(self.hom.images())
                .map(|(n, w)| (n.clone(), self.hom.target.format(w)))
                .collect(),
            target: self.solver.to_config(),
            verified: true,
            provenance: self.provenance.clone(),
        }
    }

    /// Loads without verifying; call [`EmbeddingPackage::verify`] to check.
    pub fn from_json(j: &PackageJson, base_dir: &Path) -> Result<EmbeddingPackage> {
        let source = match (&j.source_text, &j.source) {
            (Some(t), _) => Presentation::parse(t)?,
            (None, Some(path)) => Presentation::parse(&std::fs::read_to_string(base_dir.join(path))?)?,
            (None, None) => return Err(Error::Validation("package has no source presentation".into())),
        };
        let solver = Solver::from_config(&j.target, base_dir)?;
        let pairs: Vec<(&str, &str)> = j.images.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        let hom = Homomorphism::from_texts(source, solver.alphabet().clone(), &pairs, &j.provenance)?;
        Ok(EmbeddingPackage {
            hom,
            solver,
            provenance: j.provenance.clone(),
        })
    }
}

/// Serialized form of an [`EmbeddingPackage`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackageJson {
    /// Label, or a path to the presentation file when `source_text` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_text: Option<String>,
    pub images: BTreeMap<String, String>,
    pub target: SolverConfig,
    pub verified: bool,
    pub provenance: String,
}

fn flatten_solver(s: &Solver) -> Result<(Solver, Vec<Word>)> {
    if let Some((target, images)) = s.mapped_parts() {
        let (t2, m2) = flatten_solver(target)?;
        let composed = images.iter().map(|w| w.substitute(&m2)).collect();
        return Ok((t2, composed));
    }
    if s.kind_name() == "direct" {
        let mut factors = Vec::new();
        let mut maps = Vec::new();
        for f in s.factors() {
            let (f2, m) = flatten_solver(f)?;
            factors.push(f2);
            maps.push(m);
        }
        let out = Solver::direct(factors)?.with_budget(s.budget());
        let mut map = Vec::new();
        let mut offset = 0;
        for (f, m) in out.factors().iter().zip(&maps) {
            let shift: Vec<usize> = (0..f.alphabet().rank()).map(|g| g + offset).collect();
            map.extend(m.iter().map(|w| w.relabel(&shift)));
            offset += f.alphabet().rank();
        }
        return Ok((out, map));
    }
    Ok((s.clone(), (0..s.alphabet().rank()).map(Word::generator).collect()))
}

/// The quotient map `A → Q = A/C` together with a solver for `Q`.
#[derive(Clone)]
pub struct QuotientData {
    pub solver: Solver,
    /// Image of each generator of `A`, over the solver's alphabet.
    pub images: Vec<Word>,
}

impl QuotientData {
    pub fn new(solver: Solver, images: Vec<Word>) -> Result<Self> {
        for w in &images {
            solver.alphabet().check_word(w)?;
        }
        Ok(QuotientData { solver, images })
    }

    /// `Q` free on the generators of `A` other than `kill`; fails if some
    /// relator of `A` survives the deletion.
    pub fn free_by_killing(a: &Presentation, kill: &[usize]) -> Result<Self> {
        let keep: Vec<usize> = (0..a.alphabet().rank()).filter(|g| !kill.contains(g)).collect();
        let alphabet = Alphabet::new(keep.iter().map(|&g| a.alphabet().name(g)))?;
        let images: Vec<Word> = (0..a.alphabet().rank())
            .map(|g| match keep.iter().position(|&k| k == g) {
                Some(i) => Word::generator(i),
                None => Word::identity(),
            })
            .collect();
        for r in a.relators() {
            if !r.word().substitute(&images).is_empty() {
                return Err(Error::Precondition(format!(
                    "quotient is not free: relator {} survives",
                    a.alphabet().format(r.word())
                )));
            }
        }
        Ok(QuotientData {
            solver: Solver::free(alphabet),
            images,
        })
    }

    /// Kills the single-letter generators of `c`.
    pub fn free_killing_subgroup(a: &Presentation, c: &SubgroupSpec) -> Result<Self> {
        let kill = c
            .single_letters()
            .ok_or_else(|| Error::Precondition("subgroup generators must be single letters".into()))?;
        QuotientData::free_by_killing(a, &kill)
    }

    fn rank(&self) -> usize {
        self.solver.alphabet().rank()
    }
}

fn check_a_solver(p_a: &Presentation, a_solver: &Solver) -> Result<()> {
    if a_solver.alphabet().names() != p_a.alphabet().names() {
        return Err(Error::AlphabetMismatch(
            "solver for A must use the generators of A in order".into(),
        ));
    }
    Ok(())
}

fn shifted(w: &Word, offset: usize) -> Word {
    Word::reduce(w.letters().iter().map(|l| Letter::new(l.generator() + offset, l.is_positive())))
}

/// Embedding of the double of `A` along `C` into `(Q * Q̄) × A`.
pub fn build_double_embedding(
    p_a: &Presentation,
    c: &SubgroupSpec,
    q: &QuotientData,
    a_solver: &Solver,
) -> Result<EmbeddingPackage> {
    check_a_solver(p_a, a_solver)?;
    let merge = c.single_letters().is_some();
    let g = double(p_a, c, merge)?;
    let k = q.rank();
    let first = Solver::free_product(vec![q.solver.rename(Q_SUFFIX)?, q.solver.rename(QBAR_SUFFIX)?])?;
    let target = Solver::direct(vec![first, a_solver.rename(A_SUFFIX)?])?;
    let (unbar, bar) = double_maps(p_a.alphabet(), g.alphabet())?;
    let mut images = vec![Word::identity(); g.alphabet().rank()];
    for x in 0..p_a.alphabet().rank() {
        let a_part = Word::generator(2 * k + x);
        images[bar[x]] = shifted(&q.images[x], k).concat(&a_part);
        images[unbar[x]] = shifted(&q.images[x], 0).concat(&a_part);
    }
    let hom = Homomorphism::new(g, target.alphabet().clone(), images, "double embedding")?;
    verified(hom, target, "double")
}

/// Embedding of `A*_C` (stable letter centralizing `C`) into `(Q * ⟨s⟩) × A`.
pub fn build_hnn_embedding(
    p_a: &Presentation,
    c: &SubgroupSpec,
    stable: &str,
    q: &QuotientData,
    a_solver: &Solver,
) -> Result<EmbeddingPackage> {
    check_a_solver(p_a, a_solver)?;
    let g = hnn_centralizing(p_a, c, stable)?;
    let k = q.rank();
    let s_solver = Solver::free(Alphabet::new([format!("{stable}{Q_SUFFIX}")])?);
    let first = Solver::free_product(vec![q.solver.rename(Q_SUFFIX)?, s_solver])?;
    let target = Solver::direct(vec![first, a_solver.rename(A_SUFFIX)?])?;
    let n = p_a.alphabet().rank();
    let mut images: Vec<Word> = (0..n)
        .map(|x| q.images[x].concat(&Word::generator(k + 1 + x)))
        .collect();
    images.push(Word::generator(k));
    let hom = Homomorphism::new(g, target.alphabet().clone(), images, "hnn embedding")?;
    verified(hom, target, "hnn")
}

/// Embedding of `double(A, C) ⋊ F(t_1..t_m)`, where `t_i` conjugates both
/// copies by `a_i`, into `((Q * Q̄) ⋊ F_m) × A` with `t_i ↦ t_i · a_i`.
pub fn build_semidirect_embedding(
    p_a: &Presentation,
    c: &SubgroupSpec,
    stable: &[String],
    conjugators: &[Word],
    q: &QuotientData,
    a_solver: &Solver,
) -> Result<EmbeddingPackage> {
    check_a_solver(p_a, a_solver)?;
    let merge = c.single_letters().is_some();
    let d = double(p_a, c, merge)?;
    let action = FreeAction::conjugation_on_double(p_a.alphabet(), d.alphabet(), stable.to_vec(), conjugators.to_vec())?;
    let g = semidirect_free(&d, &action)?;

    let k = q.rank();
    let qq = Solver::free_product(vec![q.solver.rename(Q_SUFFIX)?, q.solver.rename(QBAR_SUFFIX)?])?;
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for a in conjugators {
        let qa = a.substitute(&q.images);
        let (c1, c2) = (shifted(&qa, 0), shifted(&qa, k));
        let mut fwd = Vec::new();
        let mut bwd = Vec::new();
        for x in 0..2 * k {
            let conj = if x < k { &c1 } else { &c2 };
            let gx = Word::generator(x);
            fwd.push(gx.conjugate_by(conj));
            bwd.push(gx.conjugate_by(&conj.inverse()));
        }
        forward.push(fwd);
        backward.push(bwd);
    }
    let first = Solver::split_extension(qq, stable, forward, backward)?;
    let m = stable.len();
    let a_off = 2 * k + m;
    let target = Solver::direct(vec![first, a_solver.rename(A_SUFFIX)?])?;

    let (unbar, bar) = double_maps(p_a.alphabet(), d.alphabet())?;
    let mut images = vec![Word::identity(); g.alphabet().rank()];
    for x in 0..p_a.alphabet().rank() {
        let a_part = Word::generator(a_off + x);
        images[bar[x]] = shifted(&q.images[x], k).concat(&a_part);
        images[unbar[x]] = shifted(&q.images[x], 0).concat(&a_part);
    }
    let nd = d.alphabet().rank();
    for (i, a) in conjugators.iter().enumerate() {
        images[nd + i] = Word::generator(2 * k + i).concat(&shifted(a, a_off));
    }
    let hom = Homomorphism::new(g, target.alphabet().clone(), images, "semidirect embedding")?;
    verified(hom, target, "semidirect")
}

pub fn is_trivial_via_embedding(pkg: &EmbeddingPackage, w: &Word) -> Result<bool> {
    pkg.is_trivial(w)
}

/// For `U ⋊ W` whose action of each `w` is conjugation by `phi(w)`: the
/// isomorphism onto `U × W`, `u ↦ u`, `w ↦ phi(w) w`. The source alphabet
/// must list the generators of `U` (those of `u_solver`) first.
pub fn semidirect_to_direct(source: &Presentation, u_solver: &Solver, phi: &[Word]) -> Result<EmbeddingPackage> {
    let nu = u_solver.alphabet().rank();
    let names = source.alphabet().names();
    if names.len() != nu + phi.len() || names[..nu] != *u_solver.alphabet().names() {
        return Err(Error::AlphabetMismatch("source must be U's generators followed by one per phi entry".into()));
    }
    let w_solver = Solver::free(Alphabet::new(&names[nu..])?);
    let target = Solver::direct(vec![u_solver.clone(), w_solver])?;
    let mut images: Vec<Word> = (0..nu).map(Word::generator).collect();
    for (i, p) in phi.iter().enumerate() {
        u_solver.alphabet().check_word(p)?;
        images.push(p.concat(&Word::generator(nu + i)));
    }
    let hom = Homomorphism::new(source.clone(), target.alphabet().clone(), images, "inner action untwisted")?;
    verified(hom, target, "inner-action")
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProbeReport {
    pub nontrivial_tested: usize,
    pub skipped_trivial_in_a: usize,
    /// Words nontrivial in `A` with trivial image: contradicts injectivity.
    pub violations: Vec<Word>,
    pub trivial_tested: usize,
    /// Relator products whose image was not trivial.
    pub trivial_failures: Vec<Word>,
    pub indeterminate: usize,
}

impl ProbeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.trivial_failures.is_empty()
    }
}

/// Samples random words of `A` (nontrivial per `a_solver`), maps them into
/// the source via `a_to_source`, and checks their images are nontrivial;
/// also checks random relator products of the source map to the identity.
pub fn injectivity_probe<R: Rng>(
    pkg: &EmbeddingPackage,
    a_solver: &Solver,
    a_to_source: &[Word],
    rng: &mut R,
    samples: usize,
    max_len: usize,
) -> Result<ProbeReport> {
    let mut rep = ProbeReport::default();
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_len);
        let w = random_reduced_word(rng, a_solver.alphabet().rank(), len);
        match a_solver.is_identity(&w) {
            Ok(true) => {
                rep.skipped_trivial_in_a += 1;
                continue;
            }
            Ok(false) => {}
            Err(Error::Budget(_)) => {
                rep.indeterminate += 1;
                continue;
            }
            Err(e) => return Err(e),
        }
        let sw = w.substitute(a_to_source);
        rep.nontrivial_tested += 1;
        match pkg.is_trivial(&sw) {
            Ok(true) => rep.violations.push(sw),
            Ok(false) => {}
            Err(Error::Budget(_)) => rep.indeterminate += 1,
            Err(e) => return Err(e),
        }
    }
    for _ in 0..samples {
        let w = random_relator_product(rng, pkg.source(), 3, max_len.min(6));
        rep.trivial_tested += 1;
        match pkg.is_trivial(&w) {
            Ok(true) => {}
            Ok(false) => rep.trivial_failures.push(w),
            Err(Error::Budget(_)) => rep.indeterminate += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

/// Uniform random freely reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    if rank == 0 {
        return Word::identity();
    }
    while out.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word::from(out)
}

/// Product of `count` conjugates `u r^±1 u^-1` of random relators, with
/// `|u| ≤ max_conj`. Trivial in the group by construction.
pub fn random_relator_product<R: Rng>(rng: &mut R, p: &Presentation, count: usize, max_conj: usize) -> Word {
    let mut w = Word::identity();
    if p.relators().is_empty() {
        return w;
    }
    for _ in 0..count {
        let r = p.relators()[rng.gen_range(0..p.relators().len())].word();
        let r = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
        let len = rng.gen_range(0..=max_conj);
        let u = random_reduced_word(rng, p.alphabet().rank(), len);
        w = w.concat(&u.concat(&r).concat(&u.inverse()));
    }
    w
}

/// `ψ: a ↦ c, b ↦ a c, c ↦ b c` on `F(a, b, c)`, with its inverse.
pub fn example2_automorphism() -> FreeAutomorphism {
    let al = Alphabet::new(["a", "b", "c"]).expect("static alphabet");
    FreeAutomorphism::parse(&al, &["c", "a c", "b c"], Some(&["b a^-1", "c a^-1", "a"])).expect("static automorphism")
}

/// `φ: x1 ↦ x1, x2 ↦ x2 x1, x3 ↦ x3 x2` on `F(x1, x2, x3)`, with its inverse.
pub fn example4_automorphism() -> FreeAutomorphism {
    let al = Alphabet::new(["x1", "x2", "x3"]).expect("static alphabet");
    FreeAutomorphism::parse(&al, &["x1", "x2 x1", "x3 x2"], Some(&["x1", "x2 x1^-1", "x3 x1 x2^-1"]))
        .expect("static automorphism")
}

/// Rips group of `⟨x | ⟩` with default blocks, embedded via its double.
pub fn example1_package() -> Result<EmbeddingPackage> {
    let (a, c) = rips(&Presentation::free(["x"])?, RipsParams::default())?;
    let q = QuotientData::free_killing_subgroup(&a, &c)?;
    build_double_embedding(&a, &c, &q, &Solver::small_cancellation(&a)?)
}

/// `A*_C` over the same Rips group, `C = ⟨a, b⟩`.
pub fn rips_hnn_package() -> Result<EmbeddingPackage> {
    let (a, c) = rips(&Presentation::free(["x"])?, RipsParams::default())?;
    let q = QuotientData::free_killing_subgroup(&a, &c)?;
    build_hnn_embedding(&a, &c, "s", &q, &Solver::small_cancellation(&a)?)
}

/// Double of `F(a,b,c) ⋊_ψ ⟨s⟩` along `F(a,b,c)` into `F(s_q, s_qbar) × A`.
pub fn example2_package() -> Result<EmbeddingPackage> {
    let a = example_catalog("example2_base")?;
    let c = SubgroupSpec::parse(&["a", "b", "c"], a.alphabet())?;
    let q = QuotientData::free_killing_subgroup(&a, &c)?;
    let a_solver = example2_automorphism().split_solver(&["s".to_string()])?;
    build_double_embedding(&a, &c, &q, &a_solver)
}

/// The double of example 2 read directly as `F(a,b,c) ⋊ F(s, s_bar)`.
pub fn example2_split_solver() -> Result<Solver> {
    example2_automorphism().split_solver(&["s".to_string(), "s_bar".to_string()])
}

/// `E`: double of `F(x, y)` along `⟨x^-1 y x⟩`, extended by `s` acting as
/// conjugation by `x` on both copies.
pub fn stallings_e_package() -> Result<EmbeddingPackage> {
    let a = Presentation::free(["x", "y"])?;
    let c = SubgroupSpec::parse(&["x^-1 y x"], a.alphabet())?;
    let q = QuotientData::free_by_killing(&a, &[1])?;
    build_semidirect_embedding(&a, &c, &["s".to_string()], &[Word::generator(0)], &q, &Solver::free(a.alphabet().clone()))
}

/// `S`: double of `E` along `⟨x, y, x_bar, y_bar⟩`, with `E` decided through
/// its own package. Generators `x y x_bar y_bar s s_bar`.
pub fn stallings_s_package() -> Result<EmbeddingPackage> {
    let e = stallings_e_package()?;
    let g = SubgroupSpec::parse(&["x", "y", "x_bar", "y_bar"], e.source().alphabet())?;
    let q = QuotientData::free_killing_subgroup(e.source(), &g)?;
    build_double_embedding(e.source(), &g, &q, &e.as_solver()?)
}

/// [`stallings_s_package`] read on the printed long presentation (`t` for `s_bar`).
pub fn stallings_s_long_package() -> Result<EmbeddingPackage> {
    let pkg = stallings_s_package()?;
    let long = example_catalog("stallings_S_long")?;
    let map = long
        .alphabet()
        .names()
        .iter()
        .map(|n| {
            let m = if n == "t" { "s_bar" } else { n.as_str() };
            Ok(Word::generator(pkg.source().alphabet().lookup(m)?))
        })
        .collect::<Result<Vec<_>>>()?;
    pkg.precompose(&long, &map)
}

/// Concise `S` as the HNN extension of `F(b,c) × F(d,e)` by `a` centralizing
/// `⟨b c^-1, c d^-1, d e^-1⟩`, with quotient `Z` sending `b, c, d, e ↦ q`.
pub fn stallings_concise_package() -> Result<EmbeddingPackage> {
    let h = direct_product(&Presentation::free(["b", "c"])?, &Presentation::free(["d", "e"])?, None)?;
    let c = SubgroupSpec::parse(&["b c^-1", "c d^-1", "d e^-1"], h.alphabet())?;
    let h_solver = Solver::direct(vec![
        Solver::free(Alphabet::new(["b", "c"])?),
        Solver::free(Alphabet::new(["d", "e"])?),
    ])?;
    let q = QuotientData::new(Solver::free(Alphabet::new(["q"])?), vec![Word::generator(0); 4])?;
    let pkg = build_hnn_embedding(&h, &c, "a", &q, &h_solver)?;
    let concise = example_catalog("stallings_S_concise")?;
    let map = concise
        .alphabet()
        .names()
        .iter()
        .map(|n| Ok(Word::generator(pkg.source().alphabet().lookup(n)?)))
        .collect::<Result<Vec<_>>>()?;
    pkg.precompose(&concise, &map)
}

//! Command-line front end. Exit codes: 0 ok, 2 parse, 3 validation,
//! 4 budget, 5 failed check.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::area::{area_experiment, area_search, stallings_experiment, AreaBudget, AreaStatus};
use crate::error::{Error, Result};
use crate::growth::{
    as_sequence, classify_growth, conjugate_distortion, detect_periodic_conjugacy, double_test_word, FreeAutomorphism,
};
use crate::homomorphisms::{
    example1_package, example2_automorphism, example2_package, example4_automorphism, injectivity_probe,
    stallings_concise_package, stallings_e_package, stallings_s_long_package, EmbeddingPackage, PackageJson,
};
use crate::presentations::{
    catalog_text, direct_product, double, double_maps, example_catalog, free_product, hnn_centralizing, rips,
    semidirect_free, FreeAction, Presentation, RipsParams, SubgroupSpec,
};
use crate::smallcanc::{check_metric, parse_ratio, DehnSolver};
use crate::solvers::{Solver, DEFAULT_BUDGET};
use crate::words::{Alphabet, Word};

/// Overrides the default solver budget when set.
pub const BUDGET_ENV: &str = "FPG_BUDGET";

/// Parsed command line: global options plus one command.
#[derive(Parser, Debug)]
#[command(name = "fpg", version, about = "Finitely presented groups: constructions, word problems, experiments")]
pub struct RunConfig {
    /// Full machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step (ChaCha8).
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Solver budget in letters; defaults to $FPG_BUDGET or 10^6.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a presentation.
    #[command(subcommand)]
    Construct(Construct),
    /// Decide whether a word is trivial.
    Solve(SolveArgs),
    /// Verify a property.
    #[command(subcommand)]
    Check(Check),
    /// Run an experiment, writing CSV and JSON.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    Double {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated subgroup generators.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        merge: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Hnn {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long, default_value = "s")]
        stable: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// `P ⋊ F(t_1..t_m)`, each `t_i` conjugating by a word of `P`.
    Semidirect {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated stable letters.
        #[arg(long)]
        stable: String,
        /// Comma-separated conjugating words, one per stable letter.
        #[arg(long)]
        conj: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Rips {
        #[arg(long)]
        quotient: PathBuf,
        #[arg(long, default_value_t = 81)]
        start: u64,
        #[arg(long, default_value_t = 80)]
        block: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Freeprod {
        first: PathBuf,
        second: PathBuf,
        /// Suffix for the second factor's generators.
        #[arg(long)]
        decorate: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Dirprod {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        decorate: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    Catalog {
        name: String,
        /// Write the entry's embedding package instead of its presentation.
        #[arg(long)]
        package: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Auto,
    Dehn,
    Embedding,
    Product,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, conflicts_with_all = ["catalog", "pkg"])]
    pub pres: Option<PathBuf>,
    #[arg(long, conflicts_with = "pkg")]
    pub catalog: Option<String>,
    #[arg(long)]
    pub pkg: Option<PathBuf>,
    #[arg(short, long)]
    pub word: String,
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    pub route: Route,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    Smallcanc {
        file: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, default_value = "1/6")]
        lambda: String,
    },
    Embedding {
        pkg: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<String>,
    },
    Injectivity {
        #[arg(long)]
        catalog: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

#[derive(Args, Debug)]
pub struct AutArgs {
    /// example2 or example4.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Comma-separated generators of a custom automorphism.
    #[arg(long, requires = "images")]
    pub gens: Option<String>,
    /// Semicolon-separated images, one per generator.
    #[arg(long)]
    pub images: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    Distortion {
        #[command(flatten)]
        aut: AutArgs,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 25)]
        n: usize,
        /// Output prefix for `.csv` and `.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Periodic {
        #[command(flatten)]
        aut: AutArgs,
        #[arg(long, default_value_t = 6)]
        max_m: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    Area {
        #[arg(long, conflicts_with = "pres")]
        catalog: Option<String>,
        #[arg(long)]
        pres: Option<PathBuf>,
        /// Single word; otherwise the family `s^-n c s^n · s_bar^-n c^-1 s_bar^n`.
        #[arg(short, long)]
        word: Option<String>,
        #[arg(long, default_value = "a")]
        c: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        max_len: usize,
        #[arg(long, default_value_t = 64)]
        max_cells: usize,
        #[arg(long, default_value_t = 2000)]
        max_states: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Stallings {
        #[arg(long, default_value_t = 8)]
        n_min: usize,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        step: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Stable exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) => 2,
        Error::Budget(_) => 4,
        Error::Verification { .. } => 5,
        Error::Io(_) => 1,
        _ => 3,
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    argv: Vec<String>,
    inputs: Vec<PathBuf>,
    out: &'a mut dyn Write,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cfg = match RunConfig::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let mut ctx = Ctx {
        cfg: &cfg,
        argv: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        inputs: Vec::new(),
        out,
    };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            if cfg.json {
                let _ = writeln!(ctx.out, "{}", json!({"error": e.to_string(), "exit": code}));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn dispatch(ctx: &mut Ctx) -> Result<i32> {
    match &ctx.cfg.command {
        Command::Construct(c) => construct(ctx, c),
        Command::Solve(a) => solve(ctx, a),
        Command::Check(c) => check(ctx, c),
        Command::Experiment(e) => experiment(ctx, e),
    }
}

impl Ctx<'_> {
    fn budget(&self) -> Result<usize> {
        if let Some(b) = self.cfg.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("{BUDGET_ENV} is not a count: {v:?}"))),
            Err(_) => Ok(DEFAULT_BUDGET),
        }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.inputs.push(path.to_path_buf());
        Ok(text)
    }

    fn presentation(&mut self, path: &Path) -> Result<Presentation> {
        let t = self.read(path)?;
        Presentation::parse(&t)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed)
    }

    fn say(&mut self, line: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", line.as_ref())?;
        Ok(())
    }

    fn emit_json(&mut self, v: &Value) -> Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v)?)?;
        Ok(())
    }

    /// Writes `contents` to `path` and a manifest next to it.
    fn write_file(&mut self, path: &Path, contents: &str) -> Result<()> {
        std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut inputs = BTreeMap::new();
        for p in &self.inputs {
            let bytes = std::fs::read(p)?;
            inputs.insert(p.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        }
        let manifest = json!({
            "file": path.file_name().map(|f| f.to_string_lossy().into_owned()),
            "sha256": hex::encode(Sha256::digest(contents.as_bytes())),
            "inputs": inputs,
            "seed": self.cfg.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.argv,
        });
        let mpath = manifest_path(path);
        std::fs::write(&mpath, serde_json::to_string_pretty(&manifest)? + "\n")?;
        Ok(())
    }
}

/// `out.pres` → `out.pres.manifest.json`.
pub fn manifest_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Word text, with `1` for the empty word.
fn show(al: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        al.format(w)
    }
}

fn split_list(s: &str, sep: char) -> Vec<&str> {
    s.split(sep).map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn emit_presentation(ctx: &mut Ctx, p: &Presentation, out: &Option<PathBuf>) -> Result<i32> {
    let text = p.to_text();
    let summary = json!({
        "label": p.label(),
        "generators": p.alphabet().rank(),
        "relators": p.relators().len(),
        "total_length": p.total_relator_length(),
    });
    match out {
        Some(path) => {
            ctx.write_file(path, &text)?;
            if ctx.cfg.json {
                ctx.emit_json(&summary)?;
            } else {
                let line = format!(
                    "wrote {}: {} generators, {} relators, total length {}",
                    path.display(),
                    p.alphabet().rank(),
                    p.relators().len(),
                    p.total_relator_length()
                );
                ctx.say(line)?;
            }
        }
        None => {
            if ctx.cfg.json {
                let mut v = summary;
                v["text"] = json!(text);
                ctx.emit_json(&v)?;
            } else {
                write!(ctx.out, "{text}")?;
            }
        }
    }
    Ok(0)
}

fn construct(ctx: &mut Ctx, c: &Construct) -> Result<i32> {
    match c {
        Construct::Double { input, sub, merge, out } => {
            let p = ctx.presentation(input)?;
            let spec = SubgroupSpec::parse(&split_list(sub, ','), p.alphabet())?;
            let d = double(&p, &spec, *merge)?;
            emit_presentation(ctx, &d, out)
        }
        Construct::Hnn { input, sub, stable, out } => {
            let p = ctx.presentation(input)?;
            let spec = SubgroupSpec::parse(&split_list(sub, ','), p.alphabet())?;
            emit_presentation(ctx, &hnn_centralizing(&p, &spec, stable)?, out)
        }
        Construct::Semidirect { input, stable, conj, out } => {
            let p = ctx.presentation(input)?;
            let names: Vec<String> = split_list(stable, ',').into_iter().map(String::from).collect();
            let words = split_list(conj, ',')
                .into_iter()
                .map(|t| p.parse_word(t))
                .collect::<Result<Vec<_>>>()?;
            let action = FreeAction::conjugation(p.alphabet(), names, words)?;
            emit_presentation(ctx, &semidirect_free(&p, &action)?, out)
        }
        Construct::Rips { quotient, start, block, out } => {
            let q = ctx.presentation(quotient)?;
            let (p, _) = rips(&q, RipsParams { start: *start, block: *block })?;
            emit_presentation(ctx, &p, out)
        }
        Construct::Freeprod {
            first,
            second,
            decorate,
            out,
        } => {
            let (a, b) = (ctx.presentation(first)?, ctx.presentation(second)?);
            emit_presentation(ctx, &free_product(&a, &b, decorate.as_deref())?, out)
        }
        Construct::Dirprod {
            first,
            second,
            decorate,
            out,
        } => {
            let (a, b) = (ctx.presentation(first)?, ctx.presentation(second)?);
            emit_presentation(ctx, &direct_product(&a, &b, decorate.as_deref())?, out)
        }
        Construct::Catalog { name, package, out } => {
            if *package {
                let pkg = catalog_package(name)?;
                let text = serde_json::to_string_pretty(&pkg.to_json())? + "\n";
                match out {
                    Some(path) => {
                        ctx.write_file(path, &text)?;
                        ctx.say(format!("wrote {}", path.display()))?;
                    }
                    None => write!(ctx.out, "{text}")?,
                }
                return Ok(0);
            }
            let p = example_catalog(name)?;
            match out {
                // catalog text is already canonical; keep it byte for byte
                Some(path) => {
                    ctx.write_file(path, catalog_text(name)?)?;
                    let line = format!("wrote {}: {} relators", path.display(), p.relators().len());
                    ctx.say(line)?;
                    Ok(0)
                }
                None => emit_presentation(ctx, &p, out),
            }
        }
    }
}

/// Embedding package for a catalog presentation, when one is known.
pub fn catalog_package(name: &str) -> Result<EmbeddingPackage> {
    match name {
        "example1_double" => example1_package(),
        "example2_double" => example2_package(),
        "stallings_E" => stallings_e_package(),
        "stallings_S_long" => stallings_s_long_package(),
        "stallings_S_concise" => stallings_concise_package(),
        _ => Err(Error::UnknownCatalog(format!("{name} (no embedding package)"))),
    }
}

fn load_package(ctx: &mut Ctx, path: &Path) -> Result<EmbeddingPackage> {
    let text = ctx.read(path)?;
    let j: PackageJson = serde_json::from_str(&text)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    EmbeddingPackage::from_json(&j, dir)
}

fn solve(ctx: &mut Ctx, a: &SolveArgs) -> Result<i32> {
    let budget = ctx.budget()?;
    let (p, pkg) = match (&a.pres, &a.catalog, &a.pkg) {
        (Some(path), _, _) => (ctx.presentation(path)?, None),
        (_, Some(name), _) => {
            let p = example_catalog(name)?;
            let pkg = match a.route {
                Route::Dehn | Route::Product => None,
                _ => catalog_package(name).ok(),
            };
            (p, pkg)
        }
        (_, _, Some(path)) => {
            let pkg = load_package(ctx, path)?;
            (pkg.source().clone(), Some(pkg))
        }
        _ => return Err(Error::Validation("give one of --pres, --catalog, --pkg".into())),
    };
    let w = p.parse_word(&a.word)?;
    let mut stats = json!({"input_len": w.len()});
    let route = match a.route {
        Route::Auto if pkg.is_some() => Route::Embedding,
        Route::Auto if p.label() == "stallings_S_concise" => Route::Product,
        Route::Auto => Route::Dehn,
        r => r,
    };
    let verdict = match route {
        Route::Embedding => {
            let pkg = pkg
                .ok_or_else(|| Error::Validation("no embedding package for this presentation".into()))?
                .with_budget(budget);
            let image = pkg.hom.apply(&w)?;
            stats["image_len"] = json!(image.len());
            stats["provenance"] = json!(pkg.provenance);
            pkg.solver.is_identity(&image)
        }
        Route::Dehn => {
            let d = DehnSolver::new(&p)?.with_length_cap(budget.max(w.len()));
            d.reduce_traced(&w).map(|(r, steps)| {
                stats["dehn_steps"] = json!(steps.len());
                stats["residual_len"] = json!(r.len());
                r.is_empty()
            })
        }
        Route::Product => {
            if p.alphabet().names() != ["a", "b", "c", "d", "e"] {
                return Err(Error::Validation("product route needs generators a b c d e".into()));
            }
            let t = crate::area::stallings_reduce(&w);
            stats["relator_applications"] = json!(t.relator_applications);
            stats["residual_len"] = json!(t.residual.len());
            Ok(crate::area::stallings_is_trivial(&w))
        }
        Route::Auto => unreachable!("resolved above"),
    };
    let route_name = match route {
        Route::Embedding => "embedding",
        Route::Dehn => "dehn",
        _ => "product",
    };
    match verdict {
        Ok(t) => {
            if ctx.cfg.json {
                ctx.emit_json(&json!({"trivial": t, "route": route_name, "stats": stats}))?;
            } else {
                ctx.say(format!("{} ({route_name})", if t { "trivial" } else { "nontrivial" }))?;
            }
            Ok(0)
        }
        Err(Error::Budget(msg)) => {
            if ctx.cfg.json {
                let v = json!({"trivial": null, "verdict": "indeterminate", "route": route_name, "stats": stats, "reason": msg});
                ctx.emit_json(&v)?;
            } else {
                ctx.say(format!("indeterminate ({route_name}): {msg}"))?;
            }
            Ok(4)
        }
        Err(e) => Err(e),
    }
}

fn check(ctx: &mut Ctx, c: &Check) -> Result<i32> {
    match c {
        Check::Smallcanc { file, catalog, lambda } => {
            let p = match (file, catalog) {
                (Some(f), _) => ctx.presentation(f)?,
                (None, Some(n)) => example_catalog(n)?,
                _ => return Err(Error::Validation("give a file or --catalog".into())),
            };
            let m = check_metric(&p, parse_ratio(lambda)?)?;
            if ctx.cfg.json {
                ctx.emit_json(&m.to_json(&p))?;
            } else {
                let line = format!(
                    "C'({lambda}) {}: max piece ratio {}",
                    if m.satisfied { "satisfied" } else { "violated" },
                    crate::smallcanc::ratio_string(m.max_ratio)
                );
                ctx.say(line)?;
            }
            Ok(if m.satisfied { 0 } else { 5 })
        }
        Check::Embedding { pkg, catalog } => {
            let budget = ctx.budget()?;
            let pkg = match (pkg, catalog) {
                (Some(f), _) => load_package(ctx, f)?,
                (None, Some(n)) => catalog_package(n)?,
                _ => return Err(Error::Validation("give a package file or --catalog".into())),
            }
            .with_budget(budget);
            let rep = pkg.verify()?;
            let target = pkg.hom.target_alphabet().clone();
            let src = pkg.source().clone();
            let failures: Vec<Value> = rep
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "relator": f.relator,
                        "word": src.alphabet().format(src.relators()[f.relator].word()),
                        "image": target.format(&f.image),
                        "indeterminate": f.indeterminate,
                    })
                })
                .collect();
            let hard = rep.failures.iter().any(|f| !f.indeterminate);
            let code = if hard {
                5
            } else if rep.failures.is_empty() {
                0
            } else {
                4
            };
            if ctx.cfg.json {
                ctx.emit_json(&json!({"ok": rep.ok, "checked": rep.checked, "failures": failures}))?;
            } else if rep.ok {
                ctx.say(format!("all {} relators map to the identity", rep.checked))?;
            } else {
                ctx.say(format!("{} of {} relators fail; first: {}", failures.len(), rep.checked, failures[0]))?;
            }
            Ok(code)
        }
        Check::Injectivity {
            catalog,
            samples,
            max_len,
        } => {
            let budget = ctx.budget()?;
            let pkg = catalog_package(catalog)?.with_budget(budget);
            let (a_solver, a_to_source) = injectivity_base(catalog, pkg.source())?;
            let mut rng = ctx.rng();
            let rep = injectivity_probe(&pkg, &a_solver.with_budget(budget), &a_to_source, &mut rng, *samples, *max_len)?;
            let fmt = |ws: &[Word]| ws.iter().map(|w| pkg.source().alphabet().format(w)).collect::<Vec<_>>();
            if ctx.cfg.json {
                ctx.emit_json(&json!({
                    "ok": rep.ok(),
                    "nontrivial_tested": rep.nontrivial_tested,
                    "skipped_trivial_in_a": rep.skipped_trivial_in_a,
                    "trivial_tested": rep.trivial_tested,
                    "indeterminate": rep.indeterminate,
                    "violations": fmt(&rep.violations),
                    "trivial_failures": fmt(&rep.trivial_failures),
                }))?;
            } else {
                let line = format!(
                    "{}: {} nontrivial and {} trivial samples, {} indeterminate",
                    if rep.ok() { "ok" } else { "FAILED" },
                    rep.nontrivial_tested,
                    rep.trivial_tested,
                    rep.indeterminate
                );
                ctx.say(line)?;
            }
            Ok(if rep.ok() { 0 } else { 5 })
        }
    }
}

/// The group `A` inside a catalog double, with its inclusion as the
/// unbarred copy.
fn injectivity_base(name: &str, source: &Presentation) -> Result<(Solver, Vec<Word>)> {
    let (base, solver) = match name {
        "example1_double" => {
            let (a, _) = rips(&Presentation::free(["x"])?, RipsParams::default())?;
            let s = Solver::small_cancellation(&a)?;
            (a, s)
        }
        "example2_double" => {
            let a = example_catalog("example2_base")?;
            let s = example2_automorphism().split_solver(&["s".to_string()])?;
            (a, s)
        }
        "stallings_E" => {
            let a = Presentation::free(["x", "y"])?;
            let s = Solver::free(a.alphabet().clone());
            (a, s)
        }
        _ => return Err(Error::UnknownCatalog(format!("{name} (no injectivity base)"))),
    };
    let (unbar, _) = double_maps(base.alphabet(), source.alphabet())?;
    Ok((solver, unbar.into_iter().map(Word::generator).collect()))
}

fn automorphism(a: &AutArgs) -> Result<FreeAutomorphism> {
    match (&a.catalog, &a.gens, &a.images) {
        (Some(n), _, _) => match n.as_str() {
            "example2" => Ok(example2_automorphism()),
            "example4" => Ok(example4_automorphism()),
            _ => Err(Error::UnknownCatalog(n.clone())),
        },
        (None, Some(g), Some(i)) => {
            let al = Alphabet::new(split_list(g, ','))?;
            FreeAutomorphism::parse(&al, &split_list(i, ';'), None)
        }
        _ => Err(Error::Validation("give --catalog or --gens with --images".into())),
    }
}

fn experiment(ctx: &mut Ctx, e: &Experiment) -> Result<i32> {
    match e {
        Experiment::Distortion { aut, base, n, out } => {
            let phi = automorphism(aut)?;
            let c = phi.alphabet().parse(base)?;
            let budget = ctx.budget()?.saturating_mul(10);
            let run = conjugate_distortion(&phi, &c, *n, budget)?;
            let mut csv = String::from("n,length\n");
            for (i, l) in run.lengths.iter().enumerate() {
                csv.push_str(&format!("{i},{l}\n"));
            }
            let report = classify_growth(&as_sequence(&run.lengths));
            let v = json!({
                "lengths": run.lengths,
                "truncated": run.truncated,
                "report": report.as_ref().ok(),
                "report_error": report.as_ref().err().map(|e| e.to_string()),
            });
            write_experiment(ctx, out, &csv, &v)?;
            Ok(if run.truncated.is_some() { 4 } else { 0 })
        }
        Experiment::Periodic { aut, max_m, max_len } => {
            let phi = automorphism(aut)?;
            let found = detect_periodic_conjugacy(&phi, *max_m, *max_len);
            let al = phi.alphabet();
            let v = match &found {
                Some(pw) => json!({
                    "found": true,
                    "w": al.format(&pw.w),
                    "m": pw.m,
                    "conjugator": show(al, &pw.v),
                }),
                None => json!({
                    "found": false,
                    "note": format!("none with |w| <= {max_len}, m <= {max_m}; not a proof of absence"),
                }),
            };
            if ctx.cfg.json {
                ctx.emit_json(&v)?;
            } else {
                match &found {
                    Some(pw) => {
                        let line = format!("periodic: phi^{}({}) is conjugate to it by {}", pw.m, al.format(&pw.w), show(al, &pw.v));
                        ctx.say(line)?
                    }
                    None => ctx.say(v["note"].as_str().unwrap_or_default())?,
                }
            }
            Ok(0)
        }
        Experiment::Area {
            catalog,
            pres,
            word,
            c,
            n_max,
            max_len,
            max_cells,
            max_states,
            out,
        } => {
            let budget = AreaBudget {
                max_len: *max_len,
                max_cells: *max_cells,
                max_states: *max_states,
            };
            let (p, name) = match (catalog, pres) {
                (Some(n), _) => (example_catalog(n)?, Some(n.clone())),
                (None, Some(f)) => (ctx.presentation(f)?, None),
                _ => return Err(Error::Validation("give --catalog or --pres".into())),
            };
            let mut csv = String::from("n,status,cells,peak_len,states\n");
            let row = |n: usize, st: &AreaStatus, peak: usize, states: usize| {
                let (s, cells) = match st {
                    AreaStatus::Exact { area } => ("exact", area.to_string()),
                    AreaStatus::AtLeast { bound, .. } => ("at_least", bound.to_string()),
                    AreaStatus::NotTrivialWithinBudget => ("not_trivial_within_budget", String::new()),
                };
                format!("{n},{s},{cells},{peak},{states}\n")
            };
            let v = if let Some(wt) = word {
                let w = p.parse_word(wt)?;
                let r = area_search(&p, &w, budget)?;
                csv.push_str(&row(0, &r.status, r.peak_len, r.states));
                let trace: Vec<Value> = r
                    .trace
                    .iter()
                    .map(|m| json!({"pos": m.pos, "removed": p.alphabet().format(&m.removed), "inserted": p.alphabet().format(&m.inserted)}))
                    .collect();
                json!({"result": r, "trace": trace})
            } else {
                let s = p.alphabet().lookup("s")?;
                let sb = p.alphabet().lookup("s_bar")?;
                let cw = p.parse_word(c)?;
                let checker = match name.as_deref().map(catalog_package) {
                    Some(Ok(pkg)) => pkg.as_solver()?,
                    _ => Solver::small_cancellation_unchecked(&p),
                }
                .with_budget(ctx.budget()?);
                let exp = area_experiment(&p, |n| double_test_word(&cw, s, sb, n), 1..=*n_max, budget, &checker)?;
                for r in &exp.rows {
                    csv.push_str(&row(r.n, &r.result.status, r.result.peak_len, r.result.states));
                }
                serde_json::to_value(&exp)?
            };
            write_experiment(ctx, out, &csv, &v)?;
            Ok(0)
        }
        Experiment::Stallings {
            n_min,
            n_max,
            step,
            samples,
            out,
        } => {
            if *step == 0 || n_min > n_max {
                return Err(Error::Validation("need step > 0 and n_min <= n_max".into()));
            }
            let mut rng = ctx.rng();
            let exp = stallings_experiment(&mut rng, (*n_min..=*n_max).step_by(*step), *samples)?;
            let mut csv = String::from("n,word_len,relator_applications\n");
            for r in &exp.rows {
                csv.push_str(&format!("{},{},{}\n", r.n, r.word_len, r.relator_applications));
            }
            let v = serde_json::to_value(&exp)?;
            write_experiment(ctx, out, &csv, &v)?;
            Ok(0)
        }
    }
}

/// CSV to `prefix.csv` and JSON to `prefix.json` (each with a manifest);
/// without a prefix, CSV or JSON (under `--json`) goes to stdout.
fn write_experiment(ctx: &mut Ctx, prefix: &Option<PathBuf>, csv: &str, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match prefix {
        Some(p) => {
            let csv_path = p.with_extension("csv");
            let json_path = p.with_extension("json");
            ctx.write_file(&csv_path, csv)?;
            ctx.write_file(&json_path, &text)?;
            if ctx.cfg.json {
                write!(ctx.out, "{text}")?;
            } else {
                let line = format!("wrote {} and {}", csv_path.display(), json_path.display());
                ctx.say(line)?;
            }
        }
        None => {
            if ctx.cfg.json {
                write!(ctx.out, "{text}")?;
            } else {
                write!(ctx.out, "{csv}")?;
            }
        }
    }
    Ok(())
}

//! End-to-end acceptance run. Every criterion runs, prints one PASS or FAIL
//! line with its timing, and the test fails if any criterion failed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    all_reduced_words, brute_force_pieces, cyclic_free_product_trivial, example4_closed_form, is_relator_conjugate,
    letter_count_lengths, tribonacci_root, ConjugateProductOracle,
};
use fpgroup::area::{
    area_experiment, area_search, replay_area_trace, replay_stallings_trace, stallings_family, stallings_is_trivial,
    stallings_reduce, AreaBudget, AreaStatus,
};
use fpgroup::growth::{
    as_sequence, classify_growth, conjugate_distortion, double_test_word, iterate_aut, loglog_fit, Growth,
};
use fpgroup::homomorphisms::{
    example1_package, example2_automorphism, example2_package, example2_split_solver, example4_automorphism,
    is_trivial_via_embedding, random_reduced_word, random_relator_product, rips_hnn_package, semidirect_to_direct,
    stallings_concise_package, stallings_e_package, stallings_s_long_package, stallings_s_package, Homomorphism,
};
use fpgroup::presentations::{example_catalog, rips, RipsParams};
use fpgroup::smallcanc::{check_metric, pieces};
use fpgroup::solvers::Solver;
use fpgroup::{Alphabet, Letter, Presentation, Word};

const SEED: u64 = 7;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn criterion_1() -> Outcome {
    let dir = ok(tempfile::tempdir())?;
    let q = dir.path().join("q.pres");
    let a = dir.path().join("rips.pres");
    let d = dir.path().join("double.pres");
    ok(std::fs::write(&q, "label: F(x)\ngenerators: x\n"))?;
    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = fpgroup::cli::run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (code, String::from_utf8_lossy(&err).into_owned())
    };
    let (code, err) = run(&["fpg", "construct", "rips", "--quotient", q.to_str().unwrap(), "-o", a.to_str().unwrap()]);
    ensure!(code == 0, "construct rips exited {code}: {err}");
    let (code, err) = run(&[
        "fpg",
        "construct",
        "double",
        "--in",
        a.to_str().unwrap(),
        "--sub",
        "a,b",
        "--merge",
        "-o",
        d.to_str().unwrap(),
    ]);
    ensure!(code == 0, "construct double exited {code}: {err}");
    let got = ok(std::fs::read(&d))?;
    let want = include_bytes!("../data/example1_double.pres");
    ensure!(got == want, "double differs from the golden file");
    let p = ok(Presentation::parse(&String::from_utf8_lossy(&got)))?;
    ensure!(p.relators().len() == 8, "expected 8 relators, got {}", p.relators().len());
    Ok("byte-identical, 8 relators".into())
}

fn random_presentation(rng: &mut ChaCha8Rng) -> Option<Presentation> {
    let rank = rng.gen_range(2..=3);
    let count = rng.gen_range(1..=4);
    let names: Vec<String> = ["a", "b", "c"][..rank].iter().map(|s| s.to_string()).collect();
    let mut words = Vec::new();
    let mut total = 0;
    for _ in 0..count {
        let len = rng.gen_range(2..=50);
        let w = random_reduced_word(rng, rank, len).cyclic_reduce().0;
        if w.is_empty() || total + w.len() > 200 {
            continue;
        }
        total += w.len();
        words.push(w);
    }
    if words.is_empty() {
        return None;
    }
    Presentation::from_words(Alphabet::new(names).ok()?, words, "random").ok()
}

fn criterion_2() -> Outcome {
    let (p, _) = ok(rips(&ok(Presentation::free(["x"]))?, RipsParams::default()))?;
    let check = ok(check_metric(&p, Ratio::new(1, 6)))?;
    ensure!(check.satisfied, "C'(1/6) not satisfied");
    ensure!(check.max_ratio < Ratio::new(1, 6), "max ratio {} not below 1/6", check.max_ratio);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    while cases < 60 {
        let Some(p) = random_presentation(&mut rng) else { continue };
        let got: Vec<usize> = ok(pieces(&p))?.per_relator.iter().map(|r| r.longest_piece).collect();
        let want = brute_force_pieces(&p);
        ensure!(got == want, "pieces {got:?} vs brute force {want:?} on\n{}", p.to_text());
        cases += 1;
    }
    Ok(format!("max ratio {}, {cases} random presentations agree", check.max_ratio))
}

fn criterion_3() -> Outcome {
    let packages = [
        ("example 1 double", example1_package()),
        ("example 2 double", example2_package()),
        ("rips hnn", rips_hnn_package()),
        ("stallings E", stallings_e_package()),
        ("stallings S", stallings_s_package()),
        ("stallings S long", stallings_s_long_package()),
    ];
    let mut checked = 0;
    for (name, pkg) in packages {
        let pkg = ok(pkg)?;
        let rep = ok(pkg.verify())?;
        ensure!(rep.ok && rep.failures.is_empty(), "{name}: {} failures", rep.failures.len());
        ensure!(rep.checked == pkg.source().relators().len(), "{name}: checked {}", rep.checked);
        checked += rep.checked;
    }
    Ok(format!("{checked} relator images verified"))
}

fn criterion_4() -> Outcome {
    let pkg = ok(example2_package())?;
    let split = ok(example2_split_solver())?;
    let src = pkg.source().alphabet().clone();
    let to_split: Vec<Word> = src
        .names()
        .iter()
        .map(|n| split.alphabet().lookup(n).map(Word::generator))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| format!("{e:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut trivial = 0;
    let compare = |w: &Word| -> std::result::Result<bool, String> {
        let a = ok(is_trivial_via_embedding(&pkg, w))?;
        let b = ok(split.is_identity(&w.substitute(&to_split)))?;
        ensure!(a == b, "disagreement on {}: embedding {a}, split {b}", src.format(w));
        Ok(a)
    };
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=60);
        let w = random_reduced_word(&mut rng, src.rank(), len);
        if compare(&w)? {
            trivial += 1;
        }
    }
    for _ in 0..1_000 {
        let count = rng.gen_range(1..=4);
        let w = random_relator_product(&mut rng, pkg.source(), count, 8);
        ensure!(compare(&w)?, "relator product judged nontrivial: {}", src.format(&w));
    }
    Ok(format!("10000 random words ({trivial} trivial) and 1000 relator products agree"))
}

fn criterion_5() -> Outcome {
    let psi = example2_automorphism();
    let a = Word::generator(0);
    let run = ok(conjugate_distortion(&psi, &a, 25, 10_000_000))?;
    ensure!(run.truncated.is_none(), "run truncated");
    let oracle = letter_count_lengths(&[vec![2], vec![0, 2], vec![1, 2]], &[0], 25);
    let got: Vec<u128> = run.lengths.iter().map(|&l| l as u128).collect();
    ensure!(got == oracle, "lengths {got:?} vs letter counts {oracle:?}");
    let rep = ok(classify_growth(&as_sequence(&run.lengths)))?;
    let root = tribonacci_root();
    match rep.classification {
        Growth::Exponential { base, .. } => {
            ensure!((1.78..=1.90).contains(&base), "base {base:.4} outside [1.78, 1.90]");
            Ok(format!("exponential, base {base:.4} (reference root {root:.4})"))
        }
        other => Err(format!("classified {other:?}")),
    }
}

fn naive_substitute(images: &[Vec<(usize, bool)>], w: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::new();
    for &(g, pos) in w {
        let img: Vec<(usize, bool)> = if pos {
            images[g].clone()
        } else {
            images[g].iter().rev().map(|&(h, p)| (h, !p)).collect()
        };
        for l in img {
            if out.last() == Some(&(l.0, !l.1)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let phi = example4_automorphism();
    let x3 = Word::generator(2);
    let run = ok(conjugate_distortion(&phi, &x3, 50, 10_000_000))?;
    ensure!(run.truncated.is_none(), "run truncated");
    let images = vec![vec![(0, true)], vec![(1, true), (0, true)], vec![(2, true), (1, true)]];
    let mut cur = vec![(2usize, true)];
    for (n, &len) in run.lengths.iter().enumerate() {
        let closed = example4_closed_form(n as u64) as usize;
        ensure!(cur.len() == closed, "substitution {} vs closed form {closed} at n = {n}", cur.len());
        ensure!(len == closed, "length {len} vs closed form {closed} at n = {n}");
        cur = naive_substitute(&images, &cur);
    }
    let rep = ok(classify_growth(&as_sequence(&run.lengths)))?;
    match rep.classification {
        Growth::Polynomial { degree, .. } => {
            ensure!((1.9..=2.1).contains(&degree), "degree {degree:.4} outside [1.9, 2.1]");
            Ok(format!("polynomial, degree {degree:.4}, n <= 50 matches closed form"))
        }
        other => Err(format!("classified {other:?}")),
    }
}

fn criterion_7() -> Outcome {
    let pkg = ok(stallings_concise_package())?;
    let names = pkg.source().alphabet().names().to_vec();
    ensure!(names == ["a", "b", "c", "d", "e"], "unexpected alphabet {names:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut points = Vec::new();
    let mut max_len = 0;
    for n in (8..=60).step_by(4) {
        for _ in 0..15 {
            let w = stallings_family(&mut rng, n);
            let t = stallings_reduce(&w);
            ensure!(t.stuck.is_none(), "stuck on {}: {:?}", pkg.source().alphabet().format(&w), t.stuck);
            ensure!(t.residual.exponent_sum(0) == 0 && t.residual.letters().iter().all(|l| l.generator() != 0), "residual has a-letters");
            ensure!(replay_stallings_trace(&w, &t), "trace does not replay");
            ensure!(stallings_is_trivial(&w), "family word judged nontrivial");
            ensure!(ok(pkg.is_trivial(&w))?, "embedding judges family word nontrivial");
            max_len = max_len.max(w.len());
            if t.relator_applications > 0 {
                points.push((w.len() as f64, t.relator_applications as f64));
            }
        }
    }
    let family = 14 * 15;
    let mut trivial = 0;
    for i in 0..1_000 {
        let len = rng.gen_range(1..=30);
        let mut w = random_reduced_word(&mut rng, 5, len);
        if i % 2 == 0 {
            // balance the stable letter so the rewriter does real work
            let sigma = w.exponent_sum(0);
            w = w.concat(&Word::generator(0).pow(-sigma));
        }
        let a = stallings_is_trivial(&w);
        let b = ok(pkg.is_trivial(&w))?;
        ensure!(a == b, "disagreement on {}: rewriter {a}, embedding {b}", pkg.source().alphabet().format(&w));
        trivial += a as usize;
    }
    let fit = ok(loglog_fit(&points))?;
    ensure!(fit.slope <= 3.3, "log-log slope {:.3} above 3.3", fit.slope);
    Ok(format!(
        "{family} family words (max length {max_len}), 1000 random ({trivial} trivial), slope {:.3}",
        fit.slope
    ))
}

fn criterion_8() -> Outcome {
    let budget = AreaBudget {
        max_len: 20,
        max_cells: 12,
        max_states: 200_000,
    };
    let toys: [(&str, fn(&Word) -> bool); 4] = [
        ("label: z2\ngenerators: a b\nrel: a b a^-1 b^-1\n", |w| {
            w.exponent_sum(0) == 0 && w.exponent_sum(1) == 0
        }),
        ("label: z2*z3\ngenerators: a b\nrel: a^2\nrel: b^3\n", |w| cyclic_free_product_trivial(w, &[2, 3])),
        ("label: z*z2\ngenerators: a b\nrel: a b a^-1 b^-1\nrel: b^2\n", |w| {
            w.exponent_sum(0) == 0 && w.exponent_sum(1) % 2 == 0
        }),
        ("label: z3\ngenerators: a\nrel: a^3\n", |w| w.exponent_sum(0) % 3 == 0),
    ];
    let mut matched = 0;
    for (text, trivial) in toys {
        let p = ok(Presentation::parse(text))?;
        for r in p.relators() {
            let res = ok(area_search(&p, r.word(), budget))?;
            ensure!(res.status == AreaStatus::Exact { area: 1 }, "relator area {:?}", res.status);
        }
        let g = Letter::pos(0);
        let free = Word::reduce([g, g, g.inverse(), g.inverse()]);
        let res = ok(area_search(&p, &free, budget))?;
        ensure!(res.status == AreaStatus::Exact { area: 0 }, "free word area {:?}", res.status);
        let oracle = ConjugateProductOracle::new(&p, 3);
        for w in all_reduced_words(p.alphabet().rank(), 8) {
            if !trivial(&w) {
                continue;
            }
            let res = ok(area_search(&p, &w, budget))?;
            let name = format!("{}: {}", p.label(), p.alphabet().format(&w));
            let AreaStatus::Exact { area } = res.status else {
                return Err(format!("{name}: {:?}", res.status));
            };
            ensure!(replay_area_trace(&p, &w, &res.trace), "{name}: trace does not replay");
            ensure!((area == 1) == is_relator_conjugate(&p, &w), "{name}: area {area} vs cyclic test");
            match oracle.area(&w) {
                Some(k) => {
                    ensure!(k == area, "{name}: search {area}, oracle {k}");
                    matched += 1;
                }
                None => ensure!(area > 4, "{name}: search {area}, oracle found nothing up to 4"),
            }
        }
    }
    ensure!(matched >= 100, "only {matched} oracle cases");

    let p = ok(example_catalog("example2_double"))?;
    let s = ok(p.alphabet().lookup("s"))?;
    let sb = ok(p.alphabet().lookup("s_bar"))?;
    let c = ok(p.parse_word("a"))?;
    let checker = ok(ok(example2_package())?.as_solver())?;
    let family_budget = AreaBudget {
        max_len: 64,
        max_cells: 64,
        max_states: 200_000,
    };
    let exp = ok(area_experiment(&p, |n| double_test_word(&c, s, sb, n), 1..=3, family_budget, &checker))?;
    let bounds: Vec<usize> = exp.rows.iter().map(|r| r.result.lower_bound().unwrap_or(0)).collect();
    ensure!(bounds.windows(2).all(|w| w[0] < w[1]), "family lower bounds {bounds:?} not strictly increasing");
    Ok(format!("{matched} oracle matches; double family lower bounds {bounds:?}"))
}

fn naive_free_reduce(mut v: Vec<Letter>, rng: &mut ChaCha8Rng) -> Vec<Letter> {
    loop {
        let spots: Vec<usize> = (0..v.len().saturating_sub(1)).filter(|&i| v[i] == v[i + 1].inverse()).collect();
        if spots.is_empty() {
            return v;
        }
        let i = spots[rng.gen_range(0..spots.len())];
        v.drain(i..i + 2);
    }
}

fn random_letters(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))).collect()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=30);
        let raw = random_letters(&mut rng, 3, len);
        let w = Word::reduce(raw.clone());
        ensure!(Word::reduce(w.letters().to_vec()) == w, "reduction not idempotent");
        ensure!(naive_free_reduce(raw.clone(), &mut rng) == w.letters(), "reduction order matters");
        let cut = rng.gen_range(0..=raw.len());
        let split = Word::reduce(raw[..cut].to_vec()).concat(&Word::reduce(raw[cut..].to_vec()));
        ensure!(split == w, "reduction not confluent across a split");
        ensure!(w.concat(&w.inverse()).is_empty(), "w w^-1 not empty");
    }

    let base = ok(Alphabet::new(["x", "x_bar"]))?;
    let direct = ok(Solver::direct(vec![
        Solver::free(base.clone()),
        Solver::free(ok(Alphabet::new(["s"]))?),
    ]))?;
    let ident: Vec<Word> = (0..2).map(Word::generator).collect();
    let split = ok(Solver::split_extension(
        Solver::free(base),
        &["s".to_string()],
        vec![ident.clone()],
        vec![ident],
    ))?;
    ensure!(direct.alphabet().names() == split.alphabet().names(), "route alphabets differ");
    let mut trivial = 0;
    for i in 0..10_000 {
        let w = if i % 4 == 0 {
            // commutator-heavy words, so a good share are trivial
            let len = rng.gen_range(0..6);
            let u = random_reduced_word(&mut rng, 2, len);
            let k = rng.gen_range(-3..=3);
            let sk = Word::generator(2).pow(k);
            u.concat(&sk).concat(&u.inverse()).concat(&sk.inverse())
        } else {
            let len = rng.gen_range(0..=20);
            random_reduced_word(&mut rng, 3, len)
        };
        let a = ok(direct.is_identity(&w))?;
        let b = ok(split.is_identity(&w))?;
        ensure!(a == b, "routes disagree on {}", direct.alphabet().format(&w));
        trivial += a as usize;
    }

    for phi in [example2_automorphism(), example4_automorphism()] {
        for _ in 0..50 {
            let len = rng.gen_range(0..=6);
            let w = random_reduced_word(&mut rng, 3, len);
            let (m, n) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
            let lhs = ok(iterate_aut(&phi, &ok(iterate_aut(&phi, &w, m, 1_000_000))?, n, 1_000_000))?;
            let rhs = ok(iterate_aut(&phi, &w, m + n, 1_000_000))?;
            ensure!(lhs == rhs, "semigroup law fails for m = {m}, n = {n}");
            ensure!(ok(iterate_aut(&phi, &w, 0, 1_000_000))? == w, "zeroth iterate is not the identity");
        }
    }

    // On ⟨a⟩ ⋊ ⟨t⟩ the map t ↦ a t untwists conjugation by a.
    let fa = Solver::free(ok(Alphabet::new(["a"]))?);
    let cyclic = ok(Presentation::parse("label: cyclic\ngenerators: a t\nrel: t^-1 a t = a\n"))?;
    let pkg = ok(semidirect_to_direct(&cyclic, &fa, &[Word::generator(0)]))?;
    ensure!(ok(pkg.verify())?.ok, "cyclic inner action control failed");
    // An inner action untwists: t acts on F(a, b) as conjugation by a.
    let fab = Solver::free(ok(Alphabet::new(["a", "b"]))?);
    let inner = ok(Presentation::parse("label: inner\ngenerators: a b t\nrel: t^-1 a t = a\nrel: t^-1 b t = a^-1 b a\n"))?;
    let pkg = ok(semidirect_to_direct(&inner, &fab, &[Word::generator(0)]))?;
    ensure!(ok(pkg.verify())?.ok, "inner action control failed");
    let trivial_action = ok(Presentation::parse("label: trivial\ngenerators: a b t\nrel: t^-1 a t = a\nrel: t^-1 b t = b\n"))?;
    let pkg = ok(semidirect_to_direct(&trivial_action, &fab, &[Word::identity()]))?;
    ensure!(ok(pkg.verify())?.ok, "trivial action control failed");
    // Inversion is not inner, so the untwisting map is not a homomorphism.
    let outer = ok(Presentation::parse("label: outer\ngenerators: a t\nrel: t^-1 a t = a^-1\n"))?;
    ensure!(semidirect_to_direct(&outer, &fa, &[Word::generator(0)]).is_err(), "outer action accepted");
    let target = ok(Solver::direct(vec![fa.clone(), Solver::free(ok(Alphabet::new(["t"]))?)]))?;
    let hom = ok(Homomorphism::from_texts(outer, target.alphabet().clone(), &[("a", "a"), ("t", "a t")], "outer"))?;
    let rep = ok(hom.verify(&target))?;
    ensure!(!rep.ok && rep.failures.len() == 1, "negative control: {rep:?}");
    // Corrupting one image of a verified embedding must be caught.
    let good = ok(example1_package())?;
    let mut images = good.hom.images().to_vec();
    let x = ok(good.source().alphabet().lookup("x"))?;
    let a_a = ok(good.hom.target_alphabet().lookup("a_a"))?;
    images[x] = images[x].concat(&Word::generator(a_a));
    let bad = ok(Homomorphism::new(good.source().clone(), good.hom.target_alphabet().clone(), images, "corrupted"))?;
    let rep = ok(bad.verify(&good.solver))?;
    ensure!(!rep.ok && !rep.failures.is_empty(), "corrupted image verified");
    Ok(format!("10000 reductions, 10000 route comparisons ({trivial} trivial), semigroup law, controls"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("golden double of example 1", criterion_1, 5),
        ("small cancellation and pieces oracle", criterion_2, 60),
        ("embedding verification", criterion_3, 60),
        ("word problem oracle equivalence", criterion_4, 120),
        ("exponential distortion", criterion_5, 10),
        ("polynomial distortion", criterion_6, 10),
        ("stallings rewriting", criterion_7, 300),
        ("area exactness", criterion_8, 300),
        ("property suites", criterion_9, 120),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("{d}; took {took:.1?}, limit {limit} s")),
            o => o,
        };
        match &outcome {
            Ok(d) => println!("PASS {} {name}: {d} [{took:.1?}]", i + 1),
            Err(d) => {
                println!("FAIL {} {name}: {d} [{took:.1?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

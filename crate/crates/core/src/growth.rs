//! Iterated free-group automorphisms, distortion sequences, growth fits and
//! a bounded search for periodic conjugacy classes.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::presentations::cyclic_key;
use crate::solvers::{substitute_capped, Solver, DEFAULT_BUDGET};
use crate::words::{rotation_offset, Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAutomorphism {
    alphabet: Alphabet,
    images: Vec<Word>,
    inverse: Option<Vec<Word>>,
}

impl FreeAutomorphism {
    /// With `inverse` given, both composites must fix every generator.
    pub fn new(alphabet: Alphabet, images: Vec<Word>, inverse: Option<Vec<Word>>) -> Result<Self> {
        let n = alphabet.rank();
        if images.len() != n || inverse.as_ref().is_some_and(|v| v.len() != n) {
            return Err(Error::AlphabetMismatch("one image per generator".into()));
        }
        for w in images.iter().chain(inverse.iter().flatten()) {
            alphabet.check_word(w)?;
        }
        if let Some(inv) = &inverse {
            for g in 0..n {
                let gw = Word::generator(g);
                if images[g].substitute(inv) != gw || inv[g].substitute(&images) != gw {
                    return Err(Error::Validation(format!(
                        "inverse does not invert the automorphism on {}",
                        alphabet.name(g)
                    )));
                }
            }
        }
        Ok(FreeAutomorphism {
            alphabet,
            images,
            inverse,
        })
    }

    /// From `(generator, image)` texts, in alphabet order.
    pub fn parse(alphabet: &Alphabet, images: &[&str], inverse: Option<&[&str]>) -> Result<Self> {
        let p = |v: &[&str]| v.iter().map(|t| alphabet.parse(t)).collect::<Result<Vec<_>>>();
        let inv = match inverse {
            Some(v) => Some(p(v)?),
            None => None,
        };
        FreeAutomorphism::new(alphabet.clone(), p(images)?, inv)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> Option<&[Word]> {
        self.inverse.as_deref()
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.rank()).map(Word::generator).collect::<Vec<_>>();
        FreeAutomorphism {
            inverse: Some(images.clone()),
            alphabet,
            images,
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// No image contains an inverse letter.
    pub fn is_positive(&self) -> bool {
        self.images.iter().all(|w| w.letters().iter().all(|l| l.is_positive()))
    }

    /// `C ⋊ F(stable)` with every stable letter acting as `t^-1 g t = φ(g)`.
    pub fn split_solver(&self, stable: &[String]) -> Result<Solver> {
        let inv = self
            .inverse
            .clone()
            .ok_or_else(|| Error::Precondition("split extension needs the inverse automorphism".into()))?;
        Solver::split_extension(
            Solver::free(self.alphabet.clone()),
            stable,
            vec![self.images.clone(); stable.len()],
            vec![inv; stable.len()],
        )
    }
}

/// `φ^n(w)` by repeated substitution, failing past `budget` letters.
pub fn iterate_aut(phi: &FreeAutomorphism, w: &Word, n: usize, budget: usize) -> Result<Word> {
    phi.alphabet.check_word(w)?;
    let mut cur = w.clone();
    for _ in 0..n {
        cur = substitute_capped(&cur, &phi.images, budget)?;
    }
    Ok(cur)
}

/// `|φ^n(c)|` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistortionRun {
    pub lengths: Vec<usize>,
    /// Set when the budget stopped the run early; `lengths` is then partial.
    pub truncated: Option<String>,
}

pub fn conjugate_distortion(phi: &FreeAutomorphism, c: &Word, n_max: usize, budget: usize) -> Result<DistortionRun> {
    phi.alphabet.check_word(c)?;
    let mut lengths = vec![c.len()];
    let mut cur = c.clone();
    for _ in 0..n_max {
        match substitute_capped(&cur, &phi.images, budget) {
            Ok(next) => {
                lengths.push(next.len());
                cur = next;
            }
            Err(Error::Budget(msg)) => {
                return Ok(DistortionRun {
                    lengths,
                    truncated: Some(msg),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(DistortionRun {
        lengths,
        truncated: None,
    })
}

pub fn conjugate_distortion_default(phi: &FreeAutomorphism, c: &Word, n_max: usize) -> Result<DistortionRun> {
    conjugate_distortion(phi, c, n_max, DEFAULT_BUDGET * 10)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub rss: f64,
    pub r_squared: f64,
}

fn ols(xs: &[f64], ys: &[f64]) -> Fit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let dof = (xs.len() as f64 - 2.0).max(1.0);
    let slope_se = if sxx > 0.0 { (rss / dof / sxx).sqrt() } else { f64::INFINITY };
    let r_squared = if syy > 0.0 { 1.0 - rss / syy } else { 1.0 };
    Fit {
        slope,
        intercept,
        slope_se,
        rss,
        r_squared,
    }
}

/// Least-squares line through `(ln x, ln y)`; points with nonpositive
/// coordinates are rejected.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<Fit> {
    if points.len() < 2 {
        return Err(Error::Precondition("log-log fit needs at least 2 points".into()));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::Precondition("log-log fit needs positive values".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    Ok(ols(&xs, &ys))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum Growth {
    Exponential { base: f64, interval: (f64, f64) },
    Polynomial { degree: f64, interval: (f64, f64) },
    Bounded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub sequence: Vec<(u64, f64)>,
    pub classification: Growth,
    pub exponential_fit: Option<Fit>,
    pub polynomial_fit: Option<Fit>,
    /// Exponential is chosen when its residual sum is below this fraction
    /// of the polynomial one.
    pub margin: f64,
    pub tail_from: u64,
}

pub const MODEL_MARGIN: f64 = 0.5;
const CONFIDENCE: f64 = 0.95;

/// Fits `ln L ~ n` and `ln L ~ ln n` on the tail half of `seq`.
pub fn classify_growth(seq: &[(u64, f64)]) -> Result<GrowthReport> {
    if seq.len() < 8 {
        return Err(Error::Precondition(format!("growth fit needs at least 8 points, got {}", seq.len())));
    }
    let first = seq[0].1;
    let tail: Vec<(u64, f64)> = seq[seq.len() / 2..].iter().copied().filter(|&(n, _)| n > 0).collect();
    let tail_from = tail.first().map_or(0, |p| p.0);
    if seq.iter().all(|&(_, l)| l == first) {
        return Ok(GrowthReport {
            sequence: seq.to_vec(),
            classification: Growth::Bounded,
            exponential_fit: None,
            polynomial_fit: None,
            margin: MODEL_MARGIN,
            tail_from,
        });
    }
    if tail.len() < 3 || tail.iter().any(|&(_, l)| l <= 0.0 || !l.is_finite()) {
        return Err(Error::Validation("growth fit needs positive finite lengths in the tail".into()));
    }
    let ns: Vec<f64> = tail.iter().map(|&(n, _)| n as f64).collect();
    let lns: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ll: Vec<f64> = tail.iter().map(|&(_, l)| l.ln()).collect();
    let exp = ols(&ns, &ll);
    let poly = ols(&lns, &ll);
    let t = StudentsT::new(0.0, 1.0, (tail.len() as f64 - 2.0).max(1.0))
        .map_err(|e| Error::Validation(e.to_string()))?
        .inverse_cdf(0.5 + CONFIDENCE / 2.0);
    let classification = if poly.slope.abs() < 1e-9 && exp.slope.abs() < 1e-9 {
        Growth::Bounded
    } else if exp.rss < MODEL_MARGIN * poly.rss {
        let h = t * exp.slope_se;
        Growth::Exponential {
            base: exp.slope.exp(),
            interval: ((exp.slope - h).exp(), (exp.slope + h).exp()),
        }
    } else {
        let h = t * poly.slope_se;
        Growth::Polynomial {
            degree: poly.slope,
            interval: (poly.slope - h, poly.slope + h),
        }
    };
    Ok(GrowthReport {
        sequence: seq.to_vec(),
        classification,
        exponential_fit: Some(exp),
        polynomial_fit: Some(poly),
        margin: MODEL_MARGIN,
        tail_from,
    })
}

/// Integer lengths indexed from `n = 0`.
pub fn as_sequence(lengths: &[usize]) -> Vec<(u64, f64)> {
    lengths.iter().enumerate().map(|(n, &l)| (n as u64, l as f64)).collect()
}

/// `φ^m(w) = v^-1 w v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub w: Word,
    pub m: usize,
    pub v: Word,
}

/// Searches cyclically reduced `w` (one per class up to rotation and
/// inversion, by length) and `1 ≤ m ≤ max_m`. `None` only means nothing
/// was found within the bounds.
pub fn detect_periodic_conjugacy(phi: &FreeAutomorphism, max_m: usize, max_len: usize) -> Option<PeriodicWitness> {
    let sigma = 2 * phi.alphabet.rank();
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let letters: Vec<Letter> = digits.iter().map(|&d| Letter::from_code(d)).collect();
            let w = Word::reduce(letters.iter().copied());
            if w.len() == len && w.is_cyclically_reduced() && cyclic_key(&w) == letters {
                let mut cur = w.clone();
                for m in 1..=max_m {
                    cur = phi.apply(&cur);
                    if let Some(v) = conjugator_to(&w, &cur) {
                        return Some(PeriodicWitness { w, m, v });
                    }
                }
            }
            // next tuple
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < sigma {
                    break;
                }
                digits[i] = 0;
            }
            if i == 0 && digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    None
}

/// `v` with `u = v^-1 w v`, if `u` is conjugate to the cyclically reduced `w`.
pub fn conjugator_to(w: &Word, u: &Word) -> Option<Word> {
    let (core, g) = u.cyclic_reduce();
    let k = rotation_offset(w.letters(), core.letters())?;
    // core = p^-1 w p with p = w[..k], and u = g core g^-1
    let p = w.subword(0, k);
    Some(p.concat(&g.inverse()))
}

/// `s^-n c s^n s̄^-n c^-1 s̄^n`, trivial in the double of `C ⋊ ⟨s⟩` along `C`.
pub fn double_test_word(c: &Word, s: usize, s_bar: usize, n: usize) -> Word {
    let sn = Word::generator(s).pow(n as i64);
    let sbn = Word::generator(s_bar).pow(n as i64);
    c.conjugate_by(&sn).concat(&c.inverse().conjugate_by(&sbn))
}

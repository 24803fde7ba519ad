//! Command handlers. Data goes to `--out` or stdout; status and checkpoints go to stderr.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use luroth::clebsch::generate_l1;
use luroth::covariants::{DixmierOhno, I27};
use luroth::exactalg::{Field, PrimeField, Rationals};
use luroth::relfind::ciani::{self, ciani_weighted_monomials, expand_ciani_product};
use luroth::relfind::multimodular::combine_expressions;
use luroth::relfind::{self, evaluate_expression, InvariantExpression, RelfindError, GENERIC_KERNEL_DIM, LUROTH_KERNEL_DIM};
use luroth::sampling::{self, rng_for};
use luroth::{TernaryQuartic, GENERATOR_NAMES};

use crate::io::{header_value, poly_to_text, quartics_from_text, quartics_to_text, read_file, write_output, Header};
use crate::{ExpandCianiArgs, Family, FieldArg, FindArgs, GenArgs, InterpolateCianiArgs, InvariantsArgs, ProbeArgs, VerifyCianiArgs};

/// Named pass/fail results of one run.
#[derive(Default)]
pub struct Checks(Vec<bool>);

impl Checks {
    fn record(&mut self, name: &str, ok: bool) {
        eprintln!("checkpoint {name}: {}", if ok { "pass" } else { "FAIL" });
        self.0.push(ok);
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|&b| b)
    }
}

macro_rules! with_field {
    ($field:expr, |$k:ident| $body:expr) => {
        match $field {
            FieldArg::Prime(p) => {
                let $k = PrimeField::new(p)?;
                $body
            }
            FieldArg::Rational => {
                let $k = Rationals;
                $body
            }
        }
    };
}

fn expected_rank() -> usize {
    relfind::weighted_monomials(relfind::LUROTH_DEGREE).len() - GENERIC_KERNEL_DIM
}

pub fn find_luroth(a: &FindArgs) -> Result<Checks> {
    if a.crt {
        return find_luroth_crt(a);
    }
    let k = PrimeField::new(a.prime)?;
    let d = DixmierOhno::new(k)?;
    let (gs, ls) = relfind::batch_seeds(a.seed);
    let batch = |file: &Option<std::path::PathBuf>, sample: &dyn Fn() -> Vec<TernaryQuartic<u64>>| -> Result<_> {
        match file {
            Some(path) => quartics_from_text(&k, &read_file(path)?).with_context(|| path.display().to_string()),
            None => Ok(sample()),
        }
    };
    let generic = batch(&a.generic_file, &|| sampling::random_generic(&k, gs, a.generic))?;
    let luroth = batch(&a.luroth_file, &|| sampling::random_luroth(&k, ls, a.luroth))?;
    let r = relfind::find_luroth_from_batches(&d, &generic, &luroth).context("find-luroth")?;
    eprintln!("rank {}", r.generic_rank);
    eprintln!("dim N1 {}", r.generic_kernel_dim);
    eprintln!("dim N2 {}", r.luroth_kernel_dim);
    eprintln!("extracted relations {}", r.luroth_kernel_dim - r.generic_kernel_dim);
    eprintln!("terms {}", r.expression.len());
    let mut checks = Checks::default();
    checks.record(&format!("rank {}", expected_rank()), r.generic_rank == expected_rank());
    checks.record(&format!("dim N1 {GENERIC_KERNEL_DIM}"), r.generic_kernel_dim == GENERIC_KERNEL_DIM);
    checks.record(&format!("dim N2 {LUROTH_KERNEL_DIM}"), r.luroth_kernel_dim == LUROTH_KERNEL_DIM);
    let source = |file: &Option<std::path::PathBuf>, n: usize| file.as_ref().map_or(n.to_string(), |p| p.display().to_string());
    let header = Header::new(Some(a.seed), a.prime.to_string())
        .with("generic", source(&a.generic_file, generic.len()))
        .with("luroth", source(&a.luroth_file, luroth.len()));
    write_output(a.out.as_deref(), &r.expression.to_text(&k, &header.lines()))?;
    Ok(checks)
}

fn find_luroth_crt(a: &FindArgs) -> Result<Checks> {
    if a.primes.is_empty() {
        bail!("--crt needs --primes");
    }
    let runs: Vec<Result<relfind::LurothResult<u64>>> = std::thread::scope(|s| {
        let handles: Vec<_> = a
            .primes
            .iter()
            .map(|&p| {
                s.spawn(move || -> Result<_> {
                    let d = DixmierOhno::new(PrimeField::new(p)?)?;
                    relfind::find_luroth(&d, a.generic, a.luroth, a.seed).with_context(|| format!("find-luroth at p = {p}"))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(anyhow!("worker panicked")))).collect()
    });
    let mut checks = Checks::default();
    let mut expressions = Vec::new();
    for (p, r) in a.primes.iter().zip(runs) {
        let r = r?;
        eprintln!("p = {p}: rank {} dim N1 {} dim N2 {} terms {}", r.generic_rank, r.generic_kernel_dim, r.luroth_kernel_dim, r.expression.len());
        checks.record(
            &format!("p = {p} dims {GENERIC_KERNEL_DIM}/{LUROTH_KERNEL_DIM}"),
            r.generic_kernel_dim == GENERIC_KERNEL_DIM && r.luroth_kernel_dim == LUROTH_KERNEL_DIM,
        );
        expressions.push(r.expression);
    }
    let supports: Vec<Vec<_>> = expressions.iter().map(|e| e.terms().iter().map(|(m, _)| *m).collect()).collect();
    eprintln!("supports agree across primes: {}", supports.windows(2).all(|w| w[0] == w[1]));
    let report = combine_expressions(&expressions)?;
    eprintln!("modulus digits {}", report.modulus.to_string().len());
    eprintln!("reconstructed {} of {} coefficients, {} stable", report.reconstructed, report.terms, report.stable);
    let primes: Vec<String> = a.primes.iter().map(u64::to_string).collect();
    let header = Header::new(Some(a.seed), format!("crt {}", primes.join(",")))
        .with("generic", a.generic)
        .with("luroth", a.luroth)
        .with("reconstructed", format!("{} of {}", report.reconstructed, report.terms))
        .with("stable", report.stable);
    write_output(a.out.as_deref(), &report.partial.to_text(&Rationals, &header.lines()))?;
    Ok(checks)
}

fn field_from_header(explicit: Option<FieldArg>, text: &str, what: &str) -> Result<FieldArg> {
    match explicit {
        Some(f) => Ok(f),
        None => {
            let v = header_value(text, "prime").ok_or_else(|| anyhow!("{what} has no prime header; pass --prime"))?;
            crate::parse_field(v).map_err(|e| anyhow!("{what}: {e}"))
        }
    }
}

pub fn invariants(a: &InvariantsArgs) -> Result<Checks> {
    let text = read_file(&a.file)?;
    let field = field_from_header(a.prime, &text, "quartic file")?;
    with_field!(field, |k| {
        let quartics = quartics_from_text(&k, &text).with_context(|| a.file.display().to_string())?;
        let d = DixmierOhno::new(k)?;
        let mut out = format!("# prime {field}\n{}\n", GENERATOR_NAMES.join(" "));
        for f in &quartics {
            let vals: Vec<String> = d.evaluate(f).values().iter().map(|v| k.format(v)).collect();
            let _ = writeln!(out, "{}", vals.join(" "));
        }
        print!("{out}");
    });
    Ok(Checks::default())
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Generic => "generic",
        Family::Luroth => "luroth",
        Family::L2 => "l2",
        Family::L1 => "l1",
        Family::Ciani => "ciani",
        Family::Remark => "remark",
    }
}

pub fn gen(a: &GenArgs) -> Result<Checks> {
    with_field!(a.prime, |k| gen_in(&k, a))
}

fn gen_in<K: Field>(k: &K, a: &GenArgs) -> Result<Checks> {
    let mut checks = Checks::default();
    let mut header = Header::new(Some(a.seed), a.prime.to_string()).with("family", family_name(a.family));
    let quartics: Vec<TernaryQuartic<K::Elem>> = match a.family {
        Family::Generic => sampling::random_generic(k, a.seed, a.count),
        Family::Luroth => sampling::random_luroth(k, a.seed, a.count),
        Family::L2 => sampling::l2_batch(k, a.seed, a.count),
        Family::Ciani => (0..a.count as u64)
            .map(|i| sampling::ciani(k, &sampling::random_ciani_coefficients(k, &mut rng_for(a.seed, i))))
            .collect(),
        Family::Remark => {
            header = header.with("retries", a.retries);
            sampling::remark_batch(k, a.seed, a.count, a.retries).context("gen remark")?
        }
        Family::L1 => {
            if k.modulus().is_none() {
                bail!("gen l1 needs a prime field");
            }
            header = header.with("retries", a.retries);
            let d = DixmierOhno::new(k.clone())?;
            let l = match &a.expression {
                Some(path) => {
                    header = header.with("expression", path.display());
                    InvariantExpression::from_text(k, &read_file(path)?).with_context(|| path.display().to_string())?
                }
                None => {
                    eprintln!("computing the Luroth expression for validation");
                    header = header.with("expression", "computed with seed 1");
                    relfind::find_luroth(&d, relfind::DEFAULT_BATCH, relfind::DEFAULT_BATCH, 1).context("find-luroth")?.expression
                }
            };
            let validate = |f: &TernaryQuartic<K::Elem>| {
                k.is_zero(d.evaluate(f).get(I27)) && evaluate_expression(&d, &l, f).map(|v| k.is_zero(&v)).unwrap_or(false)
            };
            let (batch, exhausted) = l1_batch(k, a, &validate)?;
            let requests = batch.len() + exhausted;
            eprintln!("generated {} of {}, {exhausted} of {requests} requests exhausted {} retries", batch.len(), a.count, a.retries);
            checks.record("all requested samples validated (L = 0, I27 = 0)", batch.len() == a.count);
            checks.record("retry exhaustion below 50%", 2 * exhausted < requests.max(1));
            batch
        }
    };
    eprintln!("{} quartics", quartics.len());
    write_output(a.out.as_deref(), &quartics_to_text(k, &header, &quartics))?;
    Ok(checks)
}

fn l1_batch<K: Field>(
    k: &K,
    a: &GenArgs,
    validate: &dyn Fn(&TernaryQuartic<K::Elem>) -> bool,
) -> Result<(Vec<TernaryQuartic<K::Elem>>, usize)> {
    if a.retries == 0 || a.retries >= 1 << 16 {
        bail!("--retries must be in [1, 65535] for l1");
    }
    let mut out = Vec::with_capacity(a.count);
    let mut exhausted = 0;
    let mut index = 0u64;
    // stop once exhaustion alone would already exceed half of the requests
    while out.len() < a.count && exhausted <= a.count {
        match generate_l1(k, a.seed, index, a.retries, validate) {
            Ok(s) => out.push(s.quartic),
            Err(_) => exhausted += 1,
        }
        index += 1;
    }
    Ok((out, exhausted))
}

pub fn probe(a: &ProbeArgs) -> Result<Checks> {
    let text = read_file(&a.samples)?;
    let p = match a.prime {
        Some(p) => p,
        None => match field_from_header(None, &text, "samples file")? {
            FieldArg::Prime(p) => p,
            FieldArg::Rational => bail!("probe needs a prime field"),
        },
    };
    let k = PrimeField::new(p)?;
    let samples = quartics_from_text(&k, &text).with_context(|| a.samples.display().to_string())?;
    let d = DixmierOhno::new(k)?;
    let r = relfind::probe_locus(&d, &samples, a.degree, a.seed).context("probe")?;
    let header = Header::new(Some(a.seed), p.to_string()).with("samples", a.samples.display());
    let mut out = header.render();
    let _ = writeln!(out, "degree {}", r.degree);
    let _ = writeln!(out, "monomials {}", r.monomials);
    let _ = writeln!(out, "samples {}", r.samples);
    let _ = writeln!(out, "generic_kernel_dim {}", r.generic_kernel_dim);
    let _ = writeln!(out, "locus_kernel_dim {}", r.locus_kernel_dim);
    let _ = writeln!(out, "new_relations {}", r.new_relations.len());
    for (i, rel) in r.new_relations.iter().enumerate() {
        match &rel.matches_monomial {
            Some(m) => {
                let _ = writeln!(out, "relation {} monomial {m}", i + 1);
            }
            None => {
                let _ = writeln!(out, "relation {}", i + 1);
            }
        }
        for (e, c) in rel.expression.terms() {
            let exps: Vec<String> = e.0.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{} {}", exps.join(" "), k.format(c));
        }
    }
    write_output(a.out.as_deref(), &out)?;
    let n = r.new_relations.len();
    let mut summary = format!("{n} new relation{}", if n == 1 { "" } else { "s" });
    if n == 1 {
        if let Some(m) = &r.new_relations[0].matches_monomial {
            let _ = write!(summary, ": {m}");
        }
    }
    eprintln!("generic kernel {} locus kernel {}", r.generic_kernel_dim, r.locus_kernel_dim);
    eprintln!("{summary}");
    let mut checks = Checks::default();
    if let Some(want) = a.expect_new {
        checks.record(&format!("{want} new relations"), n == want);
    }
    Ok(checks)
}

fn load_expression(path: &std::path::Path) -> Result<(PrimeField, InvariantExpression<u64>)> {
    let text = read_file(path)?;
    let p = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("modulus "))
        .ok_or_else(|| anyhow!("{}: expression has no modulus line", path.display()))?;
    let k = PrimeField::new(crate::parse_prime(p.trim()).map_err(|e| anyhow!("{}: {e}", path.display()))?)?;
    let e = InvariantExpression::from_text(&k, &text).with_context(|| path.display().to_string())?;
    Ok((k, e))
}

pub fn verify_ciani(a: &VerifyCianiArgs) -> Result<Checks> {
    let (k, expr) = load_expression(&a.expression)?;
    let d = DixmierOhno::new(k)?;
    let mut checks = Checks::default();
    match ciani::verify_ciani(&d, &expr, a.trials, a.seed) {
        Ok(v) => {
            println!("lambda {} over {} trials", k.format(&v.lambda), v.trials);
            checks.record("single lambda", true);
        }
        Err(RelfindError::CianiMismatch { witness }) => {
            println!("failure witness (a,b,c,d,e,f) = ({})", witness.join(", "));
            checks.record("single lambda", false);
        }
        Err(e) => return Err(e).context("verify-ciani"),
    }
    Ok(checks)
}

const CIANI_VARS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn expand_ciani(a: &ExpandCianiArgs) -> Result<Checks> {
    with_field!(a.prime, |k| {
        let p = expand_ciani_product(&k);
        let basis = ciani_weighted_monomials().len();
        eprintln!("support {}", p.num_terms());
        eprintln!("enumeration {basis}");
        let header = Header::new(None, a.prime.to_string()).with("polynomial", "G^4*H^2*J");
        write_output(a.out.as_deref(), &poly_to_text(&k, &header, &CIANI_VARS, &p))?;
        let mut checks = Checks::default();
        checks.record("support 1695", p.num_terms() == 1695);
        checks.record("enumeration 3439", basis == 3439);
        Ok(checks)
    })
}

pub fn interpolate_ciani(a: &InterpolateCianiArgs) -> Result<Checks> {
    let (k, expr) = load_expression(&a.expression)?;
    let d = DixmierOhno::new(k)?;
    let r = ciani::interpolate_ciani(&d, &expr, a.seed, a.count).context("interpolate-ciani")?;
    eprintln!("samples {} rank {} support {}", r.samples, r.rank, r.polynomial.num_terms());
    let product = expand_ciani_product(&k);
    let (e0, c0) = product.terms().next().ok_or_else(|| anyhow!("empty Ciani product"))?;
    let lambda = k.div(&r.polynomial.coeff(&k, e0), c0).expect("nonzero coefficient");
    eprintln!("lambda {}", k.format(&lambda));
    let mut checks = Checks::default();
    checks.record("restriction equals lambda * G^4*H^2*J", !k.is_zero(&lambda) && r.polynomial == product.scale(&k, &lambda));
    let header = Header::new(Some(a.seed), k.p().to_string()).with("samples", r.samples);
    write_output(a.out.as_deref(), &poly_to_text(&k, &header, &CIANI_VARS, &r.polynomial))?;
    Ok(checks)
}

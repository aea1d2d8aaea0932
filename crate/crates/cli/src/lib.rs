//! Command-line front end: argument handling, result documents, rendering
//! and the on-disk cache.

pub mod args;
pub mod cache;
pub mod doc;
mod error;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::Parser;
use mickelsson::cartan::Series;
use mickelsson::envelope::Envelope;
use mickelsson::generators::{levi_generator, pbw_leading_check, termwise_agreement, verify_invariance, ComplementModel, Invariance, MickelssonGenerator};
use mickelsson::projector::oracle_compare;
use mickelsson::routes::{three_chain_combination, two_chain_combination, LaxModel};
use mickelsson::scalars::ModeScalar;
use mickelsson::{AffineForm, CartanScalar, LeviPair, QScalar, Rat, RootSystem, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use args::{Cli, Command, Format, JobSpec};
pub use error::CliError;

use doc::{class_doc, generator_doc, AlgebraDoc, GeneratorsDoc, VerificationDoc};

/// Parse `argv`, run the command and return the exit code: 0 on success,
/// 1 when a verification fails, 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 2 };
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let (default, allowed): (Format, &[Format]) = match command {
        Command::Describe(_) => (Format::Text, &[Format::Text, Format::Json]),
        Command::Hasse(_) => (Format::Graph, &[Format::Graph, Format::Json, Format::Text]),
        Command::Generators(_) => (Format::Json, &[Format::Json, Format::Latex, Format::Text]),
        Command::Verify(_) | Command::Qcheck(_) => (Format::Text, &[Format::Text, Format::Json]),
    };
    let spec = command.job().resolve(default)?;
    if !allowed.contains(&spec.format) {
        return Err(CliError::Usage(format!("`{}` does not support format {:?}", command.name(), spec.format)));
    }
    let text = match command {
        Command::Describe(_) => describe(&Job::new(&spec)?)?,
        Command::Hasse(_) => hasse(&Job::new(&spec)?)?,
        Command::Generators(_) => {
            let doc = generators_cached(&spec)?;
            let ok = doc.verification.invariance && doc.verification.oracle != Some(false);
            out.write_all(render_generators(&doc, spec.format)?.as_bytes())?;
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Verify(_) => {
            let report = verify(&Job::new(&spec)?)?;
            out.write_all(report.render(spec.format)?.as_bytes())?;
            return Ok(report.exit_code());
        }
        Command::Qcheck(_) => {
            let report = qcheck(&Job::new(&spec)?)?;
            out.write_all(report.render(spec.format)?.as_bytes())?;
            return Ok(report.exit_code());
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(0)
}

/// The envelope and the selected complement models of a job.
pub struct Job {
    pub spec: JobSpec,
    pub env: Arc<Envelope>,
    pub models: Vec<ComplementModel>,
}

impl Job {
    pub fn new(spec: &JobSpec) -> Result<Self, CliError> {
        let rs = RootSystem::build(Series::A, spec.rank)?;
        let env = Arc::new(Envelope::new(LeviPair::new(rs, &spec.levi_zero_based())?));
        let n = env.levi().classes.len();
        let classes: Vec<usize> = match spec.class {
            Some(c) if c > n => return Err(CliError::Usage(format!("class {c} out of range 1..={n}"))),
            Some(c) => vec![c - 1],
            None => (0..n).collect(),
        };
        let mut models = Vec::new();
        for c in classes {
            for side in spec.sides() {
                models.push(ComplementModel::build(env.clone(), c, side)?);
            }
        }
        Ok(Job { spec: spec.clone(), env, models })
    }

    fn name(&self, m: &ComplementModel) -> String {
        format!("class {} {}", m.class() + 1, m.side())
    }
}

fn weights(ws: &[Weight]) -> Vec<Vec<String>> {
    ws.iter().map(doc::weight_doc).collect()
}

fn describe(job: &Job) -> Result<String, CliError> {
    let lp = job.env.levi();
    let rs = &lp.ambient;
    if job.spec.format == Format::Json {
        let value = serde_json::json!({
            "algebra": AlgebraDoc { series: job.spec.series.clone(), rank: job.spec.rank },
            "levi": job.spec.levi,
            "simple_roots": weights(&rs.simple_roots),
            "rho": doc::weight_doc(&rs.rho),
            "g_positive": weights(&lp.g_positive),
            "complement_positive": weights(&lp.complement_positive),
            "classes": lp.classes.iter().enumerate().map(|(k, c)| serde_json::json!({
                "class": k + 1,
                "roots": weights(&c.roots),
            })).collect::<Vec<_>>(),
        });
        return Ok(serde_json::to_string_pretty(&value)? + "\n");
    }
    let list = |ws: &[Weight]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ");
    let mut s = format!("{}\n", job.spec);
    s += &format!("simple roots: {}\n", list(&rs.simple_roots));
    s += &format!("rho: {}\n", rs.rho);
    s += &format!("positive roots of g ({}): {}\n", lp.g_positive.len(), list(&lp.g_positive));
    s += &format!("complement roots ({}): {}\n", lp.complement_positive.len(), list(&lp.complement_positive));
    s += &format!("quasi-root classes: {}\n", lp.classes.len());
    for (k, c) in lp.classes.iter().enumerate() {
        s += &format!("  class {} ({} roots): {}\n", k + 1, c.len(), list(&c.roots));
    }
    Ok(s)
}

fn hasse(job: &Job) -> Result<String, CliError> {
    match job.spec.format {
        Format::Json => {
            let classes: Vec<_> = job.models.iter().map(class_doc).collect();
            Ok(serde_json::to_string_pretty(&classes)? + "\n")
        }
        Format::Text => {
            let mut s = String::new();
            for m in &job.models {
                render::class_text(&mut s, &class_doc(m));
            }
            Ok(s)
        }
        _ => Ok(job.models.iter().map(|m| m.diagram().to_dot(&job.name(m))).collect()),
    }
}

/// Build the generators document for a job.
pub fn generators_doc(job: &Job) -> Result<GeneratorsDoc, CliError> {
    if job.spec.oracle && job.env.levi().g_rank() > 2 {
        return Err(CliError::Usage(format!("--oracle needs g of rank at most 2, got {}", job.env.levi().g_rank())));
    }
    let mut classes = Vec::new();
    let mut generators = Vec::new();
    let mut invariance = true;
    let mut oracle = job.spec.oracle.then_some(true);
    for m in &job.models {
        classes.push(class_doc(m));
        for z in m.canonical_elements()? {
            invariance &= m.verify_invariance(&z)?.holds();
            if let Some(o) = oracle.as_mut() {
                *o &= oracle_compare(m, &z)?;
            }
            generators.push(generator_doc(m, &z)?);
        }
    }
    Ok(GeneratorsDoc {
        algebra: AlgebraDoc { series: job.spec.series.clone(), rank: job.spec.rank },
        levi: job.spec.levi.clone(),
        classes,
        generators,
        verification: VerificationDoc { invariance, oracle },
    })
}

/// The generators document, read from or written to the cache when one is
/// configured.
pub fn generators_cached(spec: &JobSpec) -> Result<GeneratorsDoc, CliError> {
    let key = spec.cache_key("generators");
    if let Some(dir) = &spec.cache_dir {
        if let Some(doc) = cache::load(dir, &key)? {
            return Ok(doc);
        }
    }
    let doc = generators_doc(&Job::new(spec)?)?;
    if let Some(dir) = &spec.cache_dir {
        cache::store(dir, &key, &doc)?;
    }
    Ok(doc)
}

pub fn render_generators(doc: &GeneratorsDoc, format: Format) -> Result<String, CliError> {
    match format {
        Format::Latex => render::generators_latex(doc),
        Format::Text => render::generators_text(doc),
        _ => Ok(serde_json::to_string_pretty(doc)? + "\n"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub count: usize,
    /// First counterexample, if any.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub job: JobSpec,
    pub checks: Vec<Check>,
    pub verified: bool,
}

impl Report {
    fn new(job: &JobSpec, checks: Vec<Check>) -> Self {
        let verified = checks.iter().all(|c| c.witness.is_none());
        Report { job: job.clone(), checks, verified }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        if format == Format::Json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut s = String::new();
        for c in &self.checks {
            match &c.witness {
                None => s += &format!("ok    {} ({} checked)\n", c.name, c.count),
                Some(w) => s += &format!("FAIL  {}: {w}\n", c.name),
            }
        }
        s += if self.verified { "verified\n" } else { "verification failed\n" };
        Ok(s)
    }
}

/// Run `f` over the cases until the first witness.
fn check<T>(name: &str, cases: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<Option<String>, CliError>) -> Result<Check, CliError> {
    let mut count = 0;
    for case in cases {
        count += 1;
        if let Some(w) = f(case)? {
            return Ok(Check { name: name.into(), count, witness: Some(w) });
        }
    }
    Ok(Check { name: name.into(), count, witness: None })
}

fn invariance_witness(env: &Envelope, what: &str, v: Invariance) -> Option<String> {
    match v {
        Invariance::Holds => None,
        Invariance::Fails { root, monomial, coefficient } => Some(format!(
            "e_{{α_{}}} · {what} keeps {} · [{}] modulo J₊",
            root + 1,
            env.render_monomial(&monomial),
            coefficient.render(&|k| format!("h_{}", k + 1))
        )),
    }
}

fn chain_checks<S: ModeScalar<Coeff = Rat>>(job: &Job, name: &str) -> Result<Check, CliError> {
    let mut cases = Vec::new();
    for m in &job.models {
        for a in m.diagram().arrows() {
            for i in 0..m.len() {
                cases.push((m, (a.from, a.to), i));
            }
        }
    }
    check(name, cases, |(m, pair, i)| {
        let calc = m.calculus();
        let d = m.diagram();
        let chains = calc.classify_chains(pair, i)?;
        let mut members: Vec<_> = chains.iter().flat_map(|c| c.members.clone()).collect();
        let total = members.len();
        members.sort();
        members.dedup();
        let mut all = d.enumerate_routes(i)?;
        all.sort();
        let at = format!("{} pair ({}, {}) from {}", job.name(m), d.node(pair.0).label, d.node(pair.1).label, d.node(i).label);
        if members.len() != total || members != all {
            return Ok(Some(format!("chains do not partition the routes at {at}")));
        }
        for c in &chains {
            if !calc.verify_chain_killed::<S>(c)? {
                let routes: Vec<String> = c.members.iter().map(|r| r.to_string()).collect();
                return Ok(Some(format!("{:?}-chain {{{}}} survives at {at}", c.kind, routes.join(", "))));
            }
        }
        Ok(None)
    })
}

fn verify(job: &Job) -> Result<Report, CliError> {
    if job.spec.oracle && job.env.levi().g_rank() > 2 {
        return Err(CliError::Usage(format!("--oracle needs g of rank at most 2, got {}", job.env.levi().g_rank())));
    }
    let env = &job.env;
    let zs: Vec<(&ComplementModel, Vec<MickelssonGenerator>)> =
        job.models.par_iter().map(|m| Ok((m, m.canonical_elements()?))).collect::<Result<_, CliError>>()?;
    let all = || zs.iter().flat_map(|(m, v)| v.iter().map(move |z| (*m, z)));
    let label = |m: &ComplementModel, z: &MickelssonGenerator| format!("z[{}] ({})", z.label, job.name(m));

    let mut checks = vec![
        check("invariance (routes)", all(), |(m, z)| Ok(invariance_witness(env, &label(m, z), m.verify_invariance(z)?)))?,
        check("invariance (closed formula)", all(), |(m, z)| {
            let lg = levi_generator(env, m.root(z.node), m.side())?;
            Ok(invariance_witness(env, &format!("closed-formula {}", label(m, z)), verify_invariance(env, &lg.element)?))
        })?,
        check("constructions agree", all(), |(m, z)| {
            let lg = levi_generator(env, m.root(z.node), m.side())?;
            Ok((!termwise_agreement(m, z, &lg)?).then(|| format!("{} differs from the closed formula", label(m, z))))
        })?,
        check("leading terms", zs.iter(), |(m, v)| {
            Ok((!pbw_leading_check(env, v)).then(|| format!("{}: some leading term is not ψ_i with coefficient 1", job.name(m))))
        })?,
        check("triangularity", job.models.iter(), |m| {
            for i in 0..m.len() {
                for j in 0..m.len() {
                    if !m.phi(i, j).is_zero() && !m.diagram().succ(i, j) {
                        let d = m.diagram();
                        return Ok(Some(format!("{}: φ[{}, {}] ≠ 0", job.name(m), d.node(i).label, d.node(j).label)));
                    }
                }
            }
            Ok(None)
        })?,
        chain_checks::<CartanScalar>(job, "chains (classical)")?,
        chain_checks::<QScalar>(job, "chains (q-symbolic)")?,
    ];
    if job.spec.oracle {
        checks.push(check("projector oracle", all(), |(m, z)| {
            Ok((!oracle_compare(m, z)?).then(|| format!("℘ψ ≠ {}", label(m, z))))
        })?);
    }
    Ok(Report::new(&job.spec, checks))
}

/// Integral weight with coordinates summing to zero.
fn random_weight(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
    let mut v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
    v.push(-v.iter().sum::<i64>());
    Weight::from_ints(&v)
}

fn combination_witness<S: ModeScalar<Coeff = Rat>>(i: &AffineForm, l: &AffineForm, r: &AffineForm) -> Result<Option<String>, CliError> {
    let two = two_chain_combination::<S>(l, r)?;
    let three = three_chain_combination::<S>(i, l, r)?;
    Ok((!two.is_zero() || !three.is_zero()).then(|| format!("η_i = {i}, η_l = {l}, η_r = {r}")))
}

fn qcheck(job: &Job) -> Result<Report, CliError> {
    let rs = &job.env.levi().ambient;
    let mut rng = ChaCha8Rng::seed_from_u64(job.spec.seed);
    let mut instances = Vec::new();
    while instances.len() < job.spec.samples {
        let eta: Vec<AffineForm> = (0..3).map(|_| rs.eta_form(&random_weight(&mut rng, job.spec.rank))).collect();
        if eta[0] != eta[1] && eta[0] != eta[2] && eta[1] != eta[2] {
            instances.push(eta);
        }
    }
    let checks = vec![
        check("chain combinations (classical)", instances.iter(), |e| combination_witness::<CartanScalar>(&e[0], &e[1], &e[2]))?,
        check("chain combinations (q-symbolic)", instances.iter(), |e| combination_witness::<QScalar>(&e[0], &e[1], &e[2]))?,
        chain_checks::<CartanScalar>(job, "chains (classical)")?,
        chain_checks::<QScalar>(job, "chains (q-symbolic)")?,
    ];
    Ok(Report::new(&job.spec, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mickelsson::envelope::AlgebraElement;

    fn spec(rank: usize, levi: &[usize]) -> JobSpec {
        let argv = ["mickelsson", "verify", "--rank", &rank.to_string(), "--levi", &levi.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")];
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Verify(a) => a.resolve(Format::Text).unwrap(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn witness_names_the_surviving_term() {
        let job = Job::new(&spec(2, &[1])).unwrap();
        let bare = AlgebraElement::gen(job.env.matrix_unit(1, 2).unwrap());
        let w = invariance_witness(&job.env, "e_{23}", verify_invariance(&job.env, &bare).unwrap()).unwrap();
        assert!(w.contains("e_{α_1}") && w.contains("e_{13}"), "{w}");
    }

    #[test]
    fn failed_check_gives_exit_one() {
        let s = spec(2, &[1]);
        let bad = check("always fails", [1, 2, 3], |k| Ok((k == 2).then(|| "second case".to_string()))).unwrap();
        assert_eq!(bad.count, 2);
        let report = Report::new(&s, vec![bad]);
        assert_eq!(report.exit_code(), 1);
        let text = report.render(Format::Text).unwrap();
        assert!(text.contains("FAIL  always fails: second case"));
        assert!(text.ends_with("verification failed\n"));
    }

    #[test]
    fn verify_passes_on_small_pairs() {
        for (rank, levi) in [(2, vec![1]), (3, vec![2]), (3, vec![1, 3])] {
            let mut s = spec(rank, &levi);
            s.side = args::SideChoice::Both;
            let report = verify(&Job::new(&s).unwrap()).unwrap();
            assert!(report.verified, "{:?}", report.checks);
        }
    }

    #[test]
    fn class_out_of_range_is_usage() {
        let mut s = spec(2, &[1]);
        s.class = Some(2);
        assert_eq!(Job::new(&s).err().unwrap().exit_code(), 2);
    }
}

//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use mickelsson::cartan::Series;
use mickelsson::envelope::{straighten_word, AlgebraElement, BasisElement, Envelope, Gen, StructureConstants};
use mickelsson::generators::{levi_generator, pbw_leading_check, termwise_agreement, verify_invariance, ComplementModel, Side};
use mickelsson::hasse::Route;
use mickelsson::projector::{oracle_compare, projector_apply, Projector};
use mickelsson::routes::{intertwine_sides, three_chain_combination, two_chain_combination, LaxModel};
use mickelsson::scalars::ModeScalar;
use mickelsson::{rat, AffineForm, CartanScalar, LeviPair, QScalar, RootSystem, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const FLEET: &[(usize, &[usize])] = &[(2, &[0]), (3, &[0, 1]), (3, &[1]), (3, &[0, 2]), (4, &[0, 1, 2])];

fn envelope(rank: usize, levi: &[usize]) -> Arc<Envelope> {
    Arc::new(Envelope::new(LeviPair::new(RootSystem::build(Series::A, rank).unwrap(), levi).unwrap()))
}

fn fleet_models() -> Vec<(String, ComplementModel)> {
    let mut out = Vec::new();
    for &(rank, levi) in FLEET {
        let env = envelope(rank, levi);
        for m in ComplementModel::build_all(env, &[Side::Plus, Side::Minus]).unwrap() {
            out.push((format!("A{rank}{levi:?} class {} {}", m.class(), m.side()), m));
        }
    }
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Integral weight of sl(rank+1) with coordinates summing to zero.
fn random_weight(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
    let mut v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
    v.push(-v.iter().sum::<i64>());
    Weight::from_ints(&v)
}

fn chain_killing() -> Outcome {
    fn both<S: ModeScalar<Coeff = mickelsson::Rat>>(i: &AffineForm, l: &AffineForm, r: &AffineForm) -> Result<(), String> {
        let two = two_chain_combination::<S>(l, r).map_err(|e| e.to_string())?;
        let three = three_chain_combination::<S>(i, l, r).map_err(|e| e.to_string())?;
        ensure(two.is_zero() && three.is_zero(), || format!("{:?} survives at η_i={i}, η_l={l}, η_r={r}", S::MODE))
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut done = 0;
    while done < 200 {
        let rank = rng.gen_range(2..=4);
        let rs = RootSystem::build(Series::A, rank).unwrap();
        let w: Vec<Weight> = (0..3).map(|_| random_weight(&mut rng, rank)).collect();
        let eta: Vec<AffineForm> = w.iter().map(|x| rs.eta_form(x)).collect();
        if eta[0] == eta[1] || eta[0] == eta[2] || eta[1] == eta[2] {
            continue;
        }
        both::<CartanScalar>(&eta[0], &eta[1], &eta[2])?;
        both::<QScalar>(&eta[0], &eta[1], &eta[2])?;
        done += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:.2?}"))?;
    Ok(format!("200 instances, classical and q-symbolic, {t:.2?}"))
}

fn invariance() -> Outcome {
    let mut parts = Vec::new();
    for (rank, levi) in [(2, vec![0]), (3, vec![0, 1]), (3, vec![1]), (4, vec![0, 1, 2])] {
        let start = Instant::now();
        let env = envelope(rank, &levi);
        let mut count = 0;
        for m in ComplementModel::build_all(env.clone(), &[Side::Plus, Side::Minus]).unwrap() {
            for z in m.canonical_elements().map_err(|e| e.to_string())? {
                let v = m.verify_invariance(&z).map_err(|e| e.to_string())?;
                ensure(v.holds(), || format!("A{rank}{levi:?} {} {}: {v:?}", m.side(), z.label))?;
                count += 1;
            }
            for i in 0..m.len() {
                let lg = levi_generator(&env, m.root(i), m.side()).map_err(|e| e.to_string())?;
                let v = verify_invariance(&env, &lg.element).map_err(|e| e.to_string())?;
                ensure(v.holds(), || format!("A{rank}{levi:?} levi {} {}: {v:?}", m.side(), lg.mu))?;
                count += 1;
            }
        }
        let t = start.elapsed();
        ensure(t < Duration::from_secs(60), || format!("A{rank}{levi:?} took {t:.2?}"))?;
        parts.push(format!("A{rank}{levi:?}: {count} in {t:.2?}"));
    }
    Ok(parts.join("; "))
}

fn oracle() -> Outcome {
    let mut nodes = 0;
    let mut factors = 0;
    for (rank, levi) in [(2, vec![0]), (3, vec![0, 1])] {
        let env = envelope(rank, &levi);
        for m in ComplementModel::build_all(env.clone(), &[Side::Plus, Side::Minus]).unwrap() {
            for z in m.canonical_elements().map_err(|e| e.to_string())? {
                ensure(oracle_compare(&m, &z).map_err(|e| e.to_string())?, || format!("A{rank}{levi:?} {} {}", m.side(), z.label))?;
                let again = projector_apply(&env, &z.element).map_err(|e| e.to_string())?;
                ensure(again == z.element, || format!("℘ not idempotent on {}", z.label))?;
                nodes += 1;
            }
        }
        let mut p = Projector::new(&env).map_err(|e| e.to_string())?;
        for m in ComplementModel::build_all(env.clone(), &[Side::Plus, Side::Minus]).unwrap() {
            for i in 0..m.len() {
                p.apply(&env, &AlgebraElement::monomial(m.psi_monomial(i).clone())).map_err(|e| e.to_string())?;
            }
        }
        for f in p.factors() {
            ensure(f.idempotent_through_degree(&env), || format!("factor {} degree {}", f.beta, f.degree()))?;
            factors += 1;
        }
    }
    Ok(format!("{nodes} nodes, {factors} factors idempotent through their truncation degree"))
}

fn chain_partition() -> Outcome {
    let mut checked = 0;
    for (name, m) in fleet_models() {
        let d = m.diagram();
        let calc = m.calculus();
        for a in d.arrows() {
            for i in 0..d.len() {
                let chains = calc.classify_chains((a.from, a.to), i).map_err(|e| e.to_string())?;
                let mut seen: Vec<Route> = chains.iter().flat_map(|c| c.members.clone()).collect();
                let total = seen.len();
                seen.sort();
                seen.dedup();
                ensure(seen.len() == total, || format!("{name}: overlapping chains at pair ({},{}) node {i}", a.from, a.to))?;
                let mut all = d.enumerate_routes(i).map_err(|e| e.to_string())?;
                all.sort();
                ensure(seen == all, || format!("{name}: chains miss routes at pair ({},{}) node {i}", a.from, a.to))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (pair, node) cases"))
}

fn localization() -> Outcome {
    let mut checked = 0;
    for (name, m) in fleet_models() {
        let d = m.diagram();
        for &k in &m.env().levi().levi_subset {
            for route in d.all_routes().into_iter().filter(|r| r.length() <= 3) {
                let (lhs, rhs) = intertwine_sides(&m, k, &route).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("{name}: α_{} on {route}", k + 1))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (α, route) cases"))
}

fn thetas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let rank = rng.gen_range(2..=4);
        let rs = RootSystem::build(Series::A, rank).unwrap();
        let k = rng.gen_range(0..rank);
        let alpha = rs.simple_roots[k].clone();
        let nu_r = random_weight(&mut rng, rank);
        let nu_l = &nu_r + &alpha;
        let nu_j = random_weight(&mut rng, rank);
        let h = AffineForm::var(rank, k);
        let lhs1 = &rs.eta_form(&(&nu_l - &nu_j)) - &rs.eta_form(&(&nu_r - &nu_j));
        let rhs1 = h.add_constant(&rs.pairing(&alpha, &(&nu_j - &nu_r)));
        ensure(lhs1 == rhs1, || format!("first identity at ν_r={nu_r}, ν_j={nu_j}, α_{}", k + 1))?;
        let lhs2 = &rs.eta_form(&nu_l) - &rs.eta_form(&nu_r);
        let rhs2 = h.add_constant(&-rs.pairing(&alpha, &nu_r));
        ensure(lhs2 == rhs2, || format!("second identity at ν_r={nu_r}, α_{}", k + 1))?;
    }
    Ok("100 instances, both identities".into())
}

fn triangularity() -> Outcome {
    let mut nonzero = 0;
    for (name, m) in fleet_models() {
        for i in 0..m.len() {
            for j in 0..m.len() {
                if !m.phi(i, j).is_zero() {
                    ensure(m.diagram().succ(i, j), || format!("{name}: φ_{i}{j} ≠ 0 without {i} ≻ {j}"))?;
                    nonzero += 1;
                }
            }
        }
    }
    Ok(format!("{nonzero} nonzero entries, all strictly triangular"))
}

fn leading_terms() -> Outcome {
    let mut count = 0;
    for (name, m) in fleet_models() {
        let env = m.env().clone();
        let zs = m.canonical_elements().map_err(|e| e.to_string())?;
        ensure(pbw_leading_check(&env, &zs), || format!("{name}: leading terms"))?;
        for z in &zs {
            let lg = levi_generator(&env, m.root(z.node), m.side()).map_err(|e| e.to_string())?;
            ensure(termwise_agreement(&m, z, &lg).map_err(|e| e.to_string())?, || format!("{name}: {} disagrees", z.label))?;
            count += 1;
        }
    }
    Ok(format!("{count} generators, leading ψ_i with coefficient 1, constructions agree termwise"))
}

fn random_element(rng: &mut ChaCha8Rng, env: &Envelope) -> AlgebraElement {
    let gens = env.generators().len();
    let rank = env.rank();
    let mut out = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let word: Vec<Gen> = (0..rng.gen_range(0..=2)).map(|_| Gen(rng.gen_range(0..gens) as u16)).collect();
        let mut x = AlgebraElement::one();
        for g in word.iter().rev() {
            x = env.left_mul_gen(*g, &x);
        }
        let form = AffineForm::var(rank, rng.gen_range(0..rank)).scale(&rat(rng.gen_range(0..=1))).add_constant(&rat(rng.gen_range(-2..=2)));
        let s = CartanScalar::from_affine(&form);
        out.add_assign(&x.mul_scalar_right(&s));
    }
    out
}

fn engine() -> Outcome {
    let mut triples = 0;
    for rank in 1..=4 {
        let table = StructureConstants::new(RootSystem::build(Series::A, rank).unwrap());
        let basis: Vec<BasisElement> = table.basis();
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    ensure(table.jacobi_defect(a, b, c).is_empty(), || format!("Jacobi fails at rank {rank}: {a:?} {b:?} {c:?}"))?;
                    triples += 1;
                }
            }
        }
    }
    let env = envelope(3, &[0, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 0..500 {
        let (a, b, c) = (random_element(&mut rng, &env), random_element(&mut rng, &env), random_element(&mut rng, &env));
        let left = env.multiply(&env.multiply(&a, &b), &c);
        let right = env.multiply(&a, &env.multiply(&b, &c));
        ensure(left == right, || format!("associativity fails on triple {n}"))?;
    }
    let mut rewrites = 0;
    for _ in 0..200 {
        let len = rng.gen_range(2..=5);
        let word: Vec<Gen> = (0..len).map(|_| Gen(rng.gen_range(0..env.generators().len()) as u16)).collect();
        let (value, stats) = straighten_word(&env, &word);
        ensure(stats.violations == 0, || format!("measure did not decrease on {word:?}"))?;
        let mut memo = AlgebraElement::one();
        for g in word.iter().rev() {
            memo = env.left_mul_gen(*g, &memo);
        }
        ensure(value == memo, || format!("monitored straightening differs on {word:?}"))?;
        rewrites += stats.rewrites;
    }
    Ok(format!("{triples} Jacobi triples, 500 associativity triples, 200 monitored words ({rewrites} rewrites)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("chain-killing identities", chain_killing),
        ("invariance", invariance),
        ("oracle equivalence", oracle),
        ("chain partition", chain_partition),
        ("localization identity", localization),
        ("Cartan shift identities", thetas),
        ("triangularity", triangularity),
        ("PBW leading structure", leading_terms),
        ("engine soundness", engine),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({t:.2?}): {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} ({t:.2?}): {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

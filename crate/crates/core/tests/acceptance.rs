//! End-to-end acceptance suite. Runs every criterion, prints one line per
//! criterion and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use genmat::algebra::{
    diagonal_subring, is_complete_reduction_ideals, is_minimal_reduction, lemma_correspondence_check,
    CompleteReductionMatrix, EquigeneratedIdeal, GradedAlgebra, ReductionOracle, ReductionStatus,
};
use genmat::genmat::{
    check_generic_exchange_statistical, check_matroid_axioms, exchange_step_with, AxiomReport,
    FiniteMatroid, GenericMatroid, MinimalReductionInstance, NoetherInstance, Variant,
};
use genmat::groebner::{buchberger, ideal_equal, kernel_of_map, krull_dimension, Ideal};
use genmat::poly::{linear_combination, Polynomial, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = quadric();
    let m = ideal(&s, &["x", "y", "z", "w"]);
    let cases: [(&[&str], bool); 5] = [
        (&["x + y", "z", "w"], true),
        (&["x", "y", "z + w"], true),
        (&["x", "z", "w"], false),
        (&["y", "z", "w"], false),
        (&["z + w", "z", "w"], false),
    ];
    for (gens, expected) in cases {
        let got = is_minimal_reduction(&ideal(&s, gens), &m).map_err(|e| e.to_string())?;
        ensure(got == expected, format!("{gens:?}: got {got}, expected {expected}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("5/5 verdicts match in {:.2?}", start.elapsed()))
}

fn rate_at(p: u64) -> Result<(f64, f64), String> {
    let s = quadric_over(p);
    let start = polys(&s, &["x + y", "z", "w"]);
    let target = polys(&s, &["x", "y", "z + w"]);
    let nn = NoetherInstance::new(&s).map_err(|e| e.to_string())?;
    let h = nn.handle_for(&target).map_err(|e| e.to_string())?;
    let a = check_generic_exchange_statistical(&nn, &start, 0, &h, 200, 2024).map_err(|e| e.to_string())?;
    let m = EquigeneratedIdeal::new(&s, s.ring().vars()).map_err(|e| e.to_string())?;
    let mr = MinimalReductionInstance::new(&m, 10).map_err(|e| e.to_string())?;
    let h = mr.handle_for(&target).map_err(|e| e.to_string())?;
    let b = check_generic_exchange_statistical(&mr, &start, 0, &h, 200, 2024).map_err(|e| e.to_string())?;
    Ok((a.rate, b.rate))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (nn_hi, mr_hi) = rate_at(32003)?;
    ensure(nn_hi >= 0.95 && mr_hi >= 0.95, format!("p = 32003 rates {nn_hi:.3}, {mr_hi:.3}"))?;
    let (nn_lo, mr_lo) = rate_at(101)?;
    ensure(nn_lo >= 0.80 && mr_lo >= 0.80, format!("p = 101 rates {nn_lo:.3}, {mr_lo:.3}"))?;

    let sc = minimal_reduction_scenario();
    let h = sc.inst.handle_for(&sc.target).map_err(|e| e.to_string())?;
    let traps = sc.target.clone();
    let cert = exchange_step_with(&sc.inst, &sc.start, 0, &h, 42, 64, &traps).map_err(|e| e.to_string())?;
    ensure(cert.rejected == traps, "a trap candidate was accepted")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "rates {nn_hi:.3}/{mr_hi:.3} at p = 32003, {nn_lo:.3}/{mr_lo:.3} at p = 101; traps x, y, z + w rejected"
    ))
}

fn criterion_3() -> Outcome {
    let seeds = 0..20;
    let audits = [
        ("vector matroid", audit_paths(&vector_scenario(), seeds.clone())),
        ("noether", audit_paths(&noether_scenario(), seeds.clone())),
        ("minimal reduction", audit_paths(&minimal_reduction_scenario(), seeds.clone())),
        ("complete (ring)", audit_paths(&complete_ring_scenario(Variant::Vector), seeds.clone())),
        ("complete (ideals)", audit_paths(&complete_ideals_scenario(Variant::Vector), seeds)),
    ];
    let mut runs = 0;
    for (name, a) in &audits {
        ensure(a.violations.is_empty(), format!("{name}: {:?}", a.violations))?;
        runs += a.runs;
    }
    Ok(format!("{runs} seeded paths over 5 instance types, 0 violations"))
}

fn random_pair(rng: &mut ChaCha8Rng) -> Option<(EquigeneratedIdeal, EquigeneratedIdeal)> {
    let nvars = rng.random_range(2..=3);
    let degree = rng.random_range(1..=2);
    let names = ["x", "y", "z"];
    let r = ring(&names[..nvars]);
    let s = GradedAlgebra::polynomial_ring(&r).ok()?;
    let gens: Vec<Polynomial> = r
        .monomials_of_degree(degree)
        .into_iter()
        .filter(|_| rng.random_bool(0.7))
        .map(|m| Polynomial::monomial(&r, m, 1))
        .collect();
    if gens.is_empty() {
        return None;
    }
    let i = EquigeneratedIdeal::new(&s, gens.clone()).ok()?;
    let k = rng.random_range(1..=gens.len().min(3));
    let sparse = rng.random_bool(0.4);
    let j: Vec<Polynomial> = (0..k)
        .map(|_| {
            let c: Vec<u64> = gens
                .iter()
                .map(|_| if sparse && rng.random_bool(0.6) { 0 } else { rng.random_range(0..P) })
                .collect();
            linear_combination(&gens, &c).unwrap()
        })
        .filter(|f| !f.is_zero())
        .collect();
    if j.is_empty() {
        return None;
    }
    Some((i, EquigeneratedIdeal::new(&s, j).ok()?))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> (Vec<EquigeneratedIdeal>, CompleteReductionMatrix) {
    let xy = ring(&["x", "y"]);
    let s = GradedAlgebra::polynomial_ring(&xy).unwrap();
    let vars = xy.vars();
    let ideals: Vec<EquigeneratedIdeal> = (0..2)
        .map(|_| {
            let gens = match rng.random_range(0..3) {
                0 => vec![vars[0].clone()],
                1 => vec![vars[1].clone()],
                _ => vars.clone(),
            };
            EquigeneratedIdeal::new(&s, gens).unwrap()
        })
        .collect();
    let r = rng.random_range(1..=3);
    let rows = ideals
        .iter()
        .map(|i| {
            (0..r)
                .map(|_| {
                    let c: Vec<u64> = i
                        .generators()
                        .iter()
                        .map(|_| if rng.random_bool(0.25) { 0 } else { rng.random_range(0..P) })
                        .collect();
                    linear_combination(i.generators(), &c).unwrap()
                })
                .collect()
        })
        .collect();
    (ideals, CompleteReductionMatrix::new(rows).unwrap())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut instances, mut both, mut fiber_no) = (0, 0, 0);
    while instances < 60 {
        let Some((i, j)) = random_pair(&mut rng) else { continue };
        instances += 1;
        let oracle = ReductionOracle::new(&i);
        let fiber = oracle.fiber_test(&j).map_err(|e| e.to_string())?;
        let scan = oracle.power_criterion(&j, 8).map_err(|e| e.to_string())?;
        match (scan.found, fiber) {
            (Some(_), true) => both += 1,
            (Some(n), false) => return Err(format!("power criterion Yes({n}) but fiber test No for {j:?}")),
            (None, false) => fiber_no += 1,
            (None, true) => {}
        }
    }
    ensure(both >= 20, format!("only {both} instances conclusive on both sides"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let (mut tried, mut conclusive) = (0, 0);
    while conclusive < 12 && tried < 200 {
        tried += 1;
        let (ideals, a) = random_matrix(&mut rng);
        let c = lemma_correspondence_check(&ideals, &a, 8).map_err(|e| e.to_string())?;
        match c.agrees() {
            Some(true) => conclusive += 1,
            Some(false) => return Err(format!("correspondence disagrees: {c:?}")),
            None => {}
        }
    }
    ensure(conclusive >= 10, format!("only {conclusive} conclusive correspondences"))?;
    Ok(format!(
        "{instances} reduction instances ({both} agree on Yes, {fiber_no} fiber No with no power witness); {conclusive} correspondences agree"
    ))
}

fn criterion_5() -> Outcome {
    let xy = ring(&["x", "y"]);
    let s = GradedAlgebra::polynomial_ring(&xy).unwrap();
    let m = ideal(&s, &["x", "y"]);
    let a = CompleteReductionMatrix::parse(&xy, &[vec!["x", "y"], vec!["x", "y"]]).map_err(|e| e.to_string())?;
    let v = is_complete_reduction_ideals(&[m.clone(), m], &a, 10).map_err(|e| e.to_string())?;
    ensure(v.status == ReductionStatus::Yes(1), format!("2×2 example gave {:?}", v.status))?;

    let d = diagonal_subring(&segre()).and_then(|d| d.dimension()).map_err(|e| e.to_string())?;
    ensure(d == 3, format!("dim of the Segre diagonal is {d}"))?;
    for variant in [Variant::Matrix, Variant::Vector] {
        let audit = audit_paths(&complete_ring_scenario(variant), 0..10);
        ensure(audit.violations.is_empty(), format!("{variant}: {:?}", audit.violations))?;
    }
    Ok("2×2 example Yes(1); dim S^Δ = 3; matrix and vector exchange succeed on 10 seeds".into())
}

fn criterion_6() -> Outcome {
    for n in 1..=6 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let r = Ring::standard(field(), &names).unwrap();
        ensure(krull_dimension(&Ideal::zero(&r)) == Ok(Some(n)), format!("dim k[x1..x{n}]"))?;
    }
    let q = quadric();
    ensure(q.dimension() == Ok(3), "quadric dimension")?;

    let check_kernel = |target: &[&str], images: &[&str], src: &[&str], expected: &str| -> Result<(), String> {
        let t = ring(target);
        let imgs: Vec<Polynomial> = images.iter().map(|x| t.parse(x).unwrap()).collect();
        let sr = ring(src);
        let k = kernel_of_map(&sr, &imgs, &Ideal::zero(&t)).map_err(|e| e.to_string())?;
        for g in k.generators() {
            ensure(g.substitute(&imgs).unwrap().is_zero(), format!("{g} does not vanish"))?;
        }
        let e = Ideal::parse(&sr, &[expected]).unwrap();
        ensure(ideal_equal(&k, &e) == Ok(true), format!("kernel is not ({expected})"))
    };
    check_kernel(&["s", "t"], &["s^2", "s*t", "t^2"], &["T1", "T2", "T3"], "T1*T3 - T2^2")?;
    check_kernel(
        &["x1", "x2", "y1", "y2"],
        &["x1*y1", "x1*y2", "x2*y1", "x2*y2"],
        &["T11", "T12", "T21", "T22"],
        "T11*T22 - T12*T21",
    )?;

    let r = ring(&["x", "y", "z", "w"]);
    let ideals: [&[&str]; 5] = [
        &["x*y - z*w"],
        &["x^2 - y*z", "x*y - z^2", "y^2 - x*z"],
        &["x^3 - y*w^2", "y^3 - z*w^2", "x*z - y^2"],
        &["x + y + z + w", "x*y + y*z + z*w + w*x", "x*y*z*w - 1"],
        &["x^2", "y^2", "z^2", "w^2", "x*y*z*w"],
    ];
    let mut pairs = 0;
    for gens in ideals {
        for order in [NaiveOrder::GrevLex, NaiveOrder::Lex] {
            let gb = buchberger(&Ideal::parse(&r, gens).unwrap(), order.library());
            let naive: Vec<Naive> = gb.polynomials().iter().map(naive_from).collect();
            for j in 0..naive.len() {
                for i in 0..j {
                    pairs += 1;
                    ensure(
                        naive_reduce(&s_poly(&naive[i], &naive[j], order), &naive, order).is_empty(),
                        format!("S-pair {i},{j} of {gens:?} does not reduce to zero"),
                    )?;
                }
            }
        }
    }
    Ok(format!("dimensions, Veronese and Segre kernels verified; {pairs} S-pairs reduce to zero"))
}

fn criterion_7() -> Outcome {
    let u = FiniteMatroid::uniform(2, 4).map_err(|e| e.to_string())?;
    let ground: Vec<usize> = (0..4).collect();
    ensure(check_matroid_axioms(&ground, u.bases()).map_err(|e| e.to_string())?.is_ok(), "U_{2,4} rejected")?;

    let s = quadric();
    let b1 = polys(&s, &["x + y", "z", "w"]);
    let b2 = polys(&s, &["x", "y", "z + w"]);
    let ground: Vec<Polynomial> = b1.iter().chain(&b2).cloned().collect();
    let report = check_matroid_axioms(&ground, &[b1.clone(), b2.clone()]).map_err(|e| e.to_string())?;
    match report {
        AxiomReport::Exchange { removed, .. } if removed == b1[0] => {
            Ok(format!("U_{{2,4}} passes; quadric family fails exchange at {removed}"))
        }
        other => Err(format!("unexpected report {other:?}")),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("quadric minimal reductions", criterion_1),
        ("generic exchange rate and traps", criterion_2),
        ("equicardinality and short paths", criterion_3),
        ("oracle cross-agreement", criterion_4),
        ("complete reductions", criterion_5),
        ("Gröbner engine", criterion_6),
        ("matroid axiom checker", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} ({t:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} ({t:.2?})", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

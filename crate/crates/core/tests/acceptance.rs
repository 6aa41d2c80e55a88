//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{all_specs, degree, dense_big_gamma, dense_generator, lemma_failures, Dense};
use z2n_sqm::arith::Phase;
use z2n_sqm::cli::cmd_census;
use z2n_sqm::clifford::{big_gamma, generator, MonomialOperator};
use z2n_sqm::grading::{bracket_kind, BracketKind, DegreeVector};
use z2n_sqm::models::{Model, ModelFamily, ModelSpec, Role};
use z2n_sqm::sqm::NumericRealization;
use z2n_sqm::verify::{
    bracket_vanishes, central_rank, check_centrality, check_defining_relations, count_generated_operators,
    orbit_decomposition, spectrum, verify_model, RankReport, SpectrumOptions,
};

type Outcome = Result<String, String>;

/// (left degree, right degree, bracket) rows of a bracket table.
type BracketTable = Vec<([u8; 3], [u8; 3], BracketKind)>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn build(spec: &ModelSpec) -> Result<Model, String> {
    Model::build(spec).map_err(|e| format!("{}: {e}", spec.selector()))
}

/// Models of the relation and centrality checks.
fn relation_specs() -> Vec<ModelSpec> {
    all_specs(2..=7, 2..=6, 2..=5)
}

fn census_table() -> Outcome {
    let expected: [(usize, u64, u64, u64); 9] = [
        (2, 2, 1, 1),
        (3, 4, 6, 2),
        (4, 8, 28, 4),
        (5, 16, 120, 8),
        (6, 32, 496, 16),
        (7, 64, 2016, 32),
        (8, 128, 8128, 64),
        (9, 256, 32640, 128),
        (10, 512, 130816, 256),
    ];
    let start = Instant::now();
    let rows = cmd_census(2, 10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(rows.len() == expected.len(), || format!("{} rows", rows.len()))?;
    for (row, &(n, q, z, d)) in rows.iter().zip(&expected) {
        let got = (row.n, row.num_supercharges, row.num_central, row.dim_central_subspace);
        ensure(got == (n, q, z, d), || format!("n={n}: got {got:?}"))?;
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("n=2..10 exact in {elapsed:.2?}"))
}

fn defining_relations() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for spec in relation_specs() {
        let model = build(&spec)?;
        let report = check_defining_relations(&model);
        ensure(report.overall, || format!("{}: {} failing pairs", spec.selector(), report.failures()))?;
        pairs += report.pair_results.len();
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{pairs} ordered pairs exact in {elapsed:.2?}"))
}

/// The brackets that vanish in g(3), as
/// (supercharge, subspace, bracket) and (subspace, subspace, bracket).
fn g3_table() -> (BracketTable, BracketTable) {
    use BracketKind::{Anticommutator as A, Commutator as C};
    let q_rows = vec![
        ([1, 0, 0], [1, 1, 0], A),
        ([1, 0, 0], [1, 0, 1], A),
        ([1, 0, 0], [0, 1, 1], C),
        ([0, 1, 0], [1, 1, 0], A),
        ([0, 1, 0], [0, 1, 1], A),
        ([0, 1, 0], [1, 0, 1], C),
        ([0, 0, 1], [1, 0, 1], A),
        ([0, 0, 1], [0, 1, 1], A),
        ([0, 0, 1], [1, 1, 0], C),
        ([1, 1, 1], [1, 1, 0], C),
        ([1, 1, 1], [1, 0, 1], C),
        ([1, 1, 1], [0, 1, 1], C),
    ];
    let z_rows = vec![
        ([1, 1, 0], [1, 1, 0], C),
        ([1, 1, 0], [1, 0, 1], A),
        ([1, 1, 0], [0, 1, 1], A),
        ([1, 0, 1], [1, 0, 1], C),
        ([1, 0, 1], [0, 1, 1], A),
        ([0, 1, 1], [0, 1, 1], C),
    ];
    (q_rows, z_rows)
}

fn g3_vanishing(model: &Model) -> Result<usize, String> {
    let (q_rows, z_rows) = g3_table();
    let subspace = |d: DegreeVector| model.central_elements().iter().filter(move |z| z.degree == d);
    let mut checked = 0;
    for (q, g, kind) in q_rows {
        let (q, g) = (degree(&q), degree(&g));
        ensure(bracket_kind(q, g).unwrap() == kind, || format!("bracket kind of ({q}, {g})"))?;
        let q_op = model.supercharges().iter().find(|x| x.degree == q).ok_or("missing supercharge")?;
        for z in subspace(g) {
            ensure(bracket_vanishes(q_op, z), || format!("{} with {}", q_op.label(), z.label()))?;
            checked += 1;
        }
    }
    for (g1, g2, kind) in z_rows {
        let (g1, g2) = (degree(&g1), degree(&g2));
        ensure(bracket_kind(g1, g2).unwrap() == kind, || format!("bracket kind of ({g1}, {g2})"))?;
        for x in subspace(g1) {
            for y in subspace(g2) {
                ensure(bracket_vanishes(x, y), || format!("{} with {}", x.label(), y.label()))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn centrality() -> Outcome {
    let mut brackets = 0;
    for spec in relation_specs() {
        let model = build(&spec)?;
        let report = check_centrality(&model);
        ensure(report.overall, || format!("{}: {} failing brackets", spec.selector(), report.failures()))?;
        brackets += report.centrality_results.len();
    }
    let mut table = 0;
    for spec in [ModelSpec::minimal(3).unwrap(), ModelSpec::next(3).unwrap(), ModelSpec::maximal(3).unwrap()] {
        table += g3_vanishing(&build(&spec)?)?;
    }
    Ok(format!("{brackets} brackets vanish; g(3) table: {table} brackets in three models"))
}

fn commutation_lemmas() -> Outcome {
    let mut pairs = 0;
    for spec in relation_specs() {
        let model = build(&spec)?;
        let bad = lemma_failures(&model);
        ensure(bad.is_empty(), || format!("{}: {:?}", spec.selector(), bad.first()))?;
        let m = model.degrees().len();
        pairs += m * (m - 1) / 2;
    }
    Ok(format!("{pairs} generator pairs"))
}

fn rank_profile() -> Outcome {
    let start = Instant::now();
    let per_degree = |r: &RankReport, want: &dyn Fn(usize, usize) -> bool| -> Result<(), String> {
        for s in &r.subspaces {
            ensure(want(s.rank, s.elements.len()), || {
                format!("{} at {}: rank {} of {}", r.model.selector(), s.degree, s.rank, s.elements.len())
            })?;
        }
        ensure(r.bounds_hold(), || format!("{}: bounds", r.model.selector()))
    };
    for n in 2..=7 {
        let r = central_rank(&build(&ModelSpec::minimal(n).unwrap())?);
        per_degree(&r, &|rank, _| rank == 1)?;
    }
    for n in 2..=6 {
        let model = build(&ModelSpec::next(n).unwrap())?;
        let r = central_rank(&model);
        let ones = DegreeVector::ones(n);
        if n % 2 == 0 {
            per_degree(&r, &|rank, _| rank == 1)?;
        } else {
            // each subspace holds some Z_{c,1}; it is independent of the rest
            for s in &r.subspaces {
                let paired = model
                    .central_elements()
                    .iter()
                    .any(|z| z.degree == s.degree && matches!(z.role, Role::Central(_, b) if b == ones));
                let want = if paired { 2 } else { 1 };
                ensure(s.rank == want, || format!("next:n={n} at {}: rank {}", s.degree, s.rank))?;
            }
        }
    }
    let full: Vec<ModelSpec> = (2..=5)
        .map(|n| ModelSpec::maximal(n).unwrap())
        .chain([ModelFamily::N4Cl12, ModelFamily::N5Cl28, ModelFamily::N5Cl26].map(ModelSpec::custom))
        .collect();
    for spec in full {
        let r = central_rank(&build(&spec)?);
        ensure(r.all_independent, || format!("{}: dependent central elements", spec.selector()))?;
        let top = 1usize << (spec.n - 2);
        per_degree(&r, &|rank, count| rank == count && rank == top)?;
    }
    let r = central_rank(&build(&ModelSpec::custom(ModelFamily::N4Cl10))?);
    let s = r.subspace(degree(&[1, 1, 0, 0])).ok_or("n4cl10: no 1100 subspace")?;
    ensure(s.rank < 4, || format!("n4cl10 at 1100: rank {}", s.rank))?;
    let z34 = "Z[0100,1000]";
    let z28 = "Z[0010,1110]";
    ensure(
        s.classes.iter().any(|c| c.iter().any(|l| l == z34) && c.iter().any(|l| l == z28)),
        || format!("n4cl10: {z34} and {z28} not proportional: {:?}", s.classes),
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("n4cl10 rank {} at 1100; {elapsed:.2?}", s.rank))
}

fn fock_degeneracy() -> Outcome {
    let start = Instant::now();
    let fock = NumericRealization::fock(8).map_err(|e| e.to_string())?;
    let cases = [
        (ModelSpec::minimal(3).unwrap(), 4, 8),
        (ModelSpec::next(3).unwrap(), 8, 16),
        (ModelSpec::maximal(3).unwrap(), 8, 16),
    ];
    let mut summary = Vec::new();
    for (spec, zero, excited) in cases {
        let model = build(&spec)?;
        let report = spectrum(&model, &fock, &SpectrumOptions::default()).map_err(|e| e.to_string())?;
        let name = spec.selector();
        ensure(report.degeneracy_pass, || format!("{name}: degeneracy check failed"))?;
        ensure(report.clusters.len() == 8, || format!("{name}: {} clusters", report.clusters.len()))?;
        for (k, c) in report.clusters.iter().enumerate() {
            ensure((c.energy - k as f64).abs() < 1e-9, || format!("{name}: E={} not near {k}", c.energy))?;
            let want = if k == 0 { zero } else { excited };
            ensure(c.multiplicity == want, || format!("{name}: E={k} multiplicity {}", c.multiplicity))?;
        }
        summary.push(format!("{name} {zero}/{excited}"));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{} in {elapsed:.2?}", summary.join(", ")))
}

fn reducibility() -> Outcome {
    for n in 2..=5 {
        let report = orbit_decomposition(&build(&ModelSpec::next(n).unwrap())?);
        let want = if n % 2 == 0 { vec![1 << n, 1 << n] } else { vec![1 << (n + 1)] };
        ensure(report.sizes == want, || format!("next:n={n}: sizes {:?}", report.sizes))?;
    }
    Ok("next n=2,4 split in two; n=3,5 connected".into())
}

fn generated_counts() -> Outcome {
    let count = |spec: ModelSpec| {
        let model = build(&spec)?;
        count_generated_operators(&model).map_err(|e| format!("{}: {e}", spec.selector()))
    };
    for n in 2..=7 {
        let c = count(ModelSpec::minimal(n).unwrap())?;
        ensure(c.total == 1 << n, || format!("minimal:n={n}: {}", c.total))?;
    }
    for n in 2..=6 {
        let c = count(ModelSpec::next(n).unwrap())?;
        if n % 2 == 0 {
            ensure(c.per_sector == vec![1 << n; 2], || format!("next:n={n}: per sector {:?}", c.per_sector))?;
        } else {
            ensure(c.total == 1 << (n + 1), || format!("next:n={n}: {}", c.total))?;
        }
    }
    for n in 2..=4 {
        let big_m = 1usize << (n - 1);
        let c = count(ModelSpec::maximal(n).unwrap())?;
        ensure(c.total == 1 << big_m, || format!("maximal:n={n}: {}", c.total))?;
    }
    Ok("minimal n=2..7, next n=2..6, maximal n=2..4".into())
}

/// Some relation, centrality or lemma check fails for the model.
fn detected(model: &Model) -> bool {
    !verify_model(model).overall || !lemma_failures(model).is_empty()
}

fn negative_controls() -> Outcome {
    let pool: Vec<ModelSpec> = vec![
        ModelSpec::minimal(3).unwrap(),
        ModelSpec::minimal(4).unwrap(),
        ModelSpec::minimal(5).unwrap(),
        ModelSpec::next(2).unwrap(),
        ModelSpec::next(3).unwrap(),
        ModelSpec::next(4).unwrap(),
        ModelSpec::maximal(3).unwrap(),
        ModelSpec::maximal(4).unwrap(),
        ModelSpec::custom(ModelFamily::N4Cl12),
        ModelSpec::custom(ModelFamily::N4Cl10),
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let trials = 40;
    for _ in 0..trials {
        let spec = &pool[rng.gen_range(0..pool.len())];
        let model = build(spec)?;
        let mut gens = model.generators().to_vec();
        let k = rng.gen_range(0..gens.len());
        let row = rng.gen_range(0..gens[k].dim());
        gens[k] = gens[k].with_row_phase_shifted(row, Phase::MINUS_ONE);
        let mutated = Model::from_generators(spec, gens).map_err(|e| e.to_string())?;
        ensure(detected(&mutated), || format!("{}: sign flip at generator {k}, row {row} undetected", spec.selector()))?;
    }
    Ok(format!("{trials} random sign flips all detected"))
}

/// A random word in the Clifford generators and `Gamma_j` of `Cl(2m)`,
/// evaluated by monomial arithmetic and by dense matrices.
fn random_word(rng: &mut StdRng) -> (MonomialOperator, Dense) {
    let m = rng.gen_range(1..=4usize);
    let len = rng.gen_range(1..=8);
    let mut mono = MonomialOperator::identity(1 << m);
    let mut dense = Dense::identity(1 << m);
    for _ in 0..len {
        let (x, d) = if rng.gen_bool(0.75) {
            let j = rng.gen_range(1..=2 * m);
            (generator(j, m).unwrap(), dense_generator(j, m))
        } else {
            let j = rng.gen_range(1..=m);
            (big_gamma(j, m).unwrap(), dense_big_gamma(j, m))
        };
        mono = mono.mul(&x).unwrap();
        dense = dense.mul(&d);
    }
    (mono, dense)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut worst = 0;
    for _ in 0..1000 {
        let (mono, dense) = random_word(&mut rng);
        worst = worst.max(Dense::from_monomial(&mono).max_abs_diff(&dense));
        let adj = Dense::from_monomial(&mono.adjoint());
        let mut want = Dense::zeros(dense.dim);
        for r in 0..dense.dim {
            for c in 0..dense.dim {
                let (re, im) = dense.get(c, r);
                want.set(r, c, (re, -im));
            }
        }
        worst = worst.max(adj.max_abs_diff(&want));
    }
    ensure(worst == 0, || format!("max deviation {worst}"))?;
    Ok("1000 words, dim <= 16, max deviation 0".into())
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 10] = [
        ("census table", census_table),
        ("defining relations", defining_relations),
        ("centrality", centrality),
        ("commutation lemmas", commutation_lemmas),
        ("rank profile", rank_profile),
        ("Fock degeneracy", fock_degeneracy),
        ("reducibility", reducibility),
        ("generated operators", generated_counts),
        ("negative controls", negative_controls),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

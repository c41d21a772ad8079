//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All checks are exact.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use princ_cong::functor::is_normalized;
use princ_cong::lattice::zeta_between;
use princ_cong::random::{random_functor, rng_from_seed, FunctorShape};
use princ_cong::{
    check_representation, check_single_morphism_representation, con_lattice, enumerate_01_sublattices,
    enumerate_small_lattices, find_order_isomorphism, is_catb_morphism, kappa_map, normalize_functor,
    oracle_congruences, oracle_principal, princ_functor, princ_poset, principal_congruence, search_representation,
    validate_functor, Congruence, EmbeddingFunctor, FiniteLattice, MonotoneMap, OracleBudget, Poset,
    SublatticeEmbedding,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattices_up_to(n: usize) -> Vec<Arc<FiniteLattice>> {
    (1..=n)
        .flat_map(|k| enumerate_small_lattices(k).unwrap())
        .map(Arc::new)
        .collect()
}

fn name(l: &FiniteLattice) -> String {
    let p = l.poset();
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    format!("[{}]", covers.join(" "))
}

fn sorted(mut v: Vec<Congruence>) -> Vec<Congruence> {
    v.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    v
}

fn criterion_1() -> Check {
    let budget = OracleBudget::default();
    let (mut lattices, mut pairs) = (0, 0);
    for l in lattices_up_to(6) {
        lattices += 1;
        for a in 0..l.len() {
            for b in 0..l.len() {
                pairs += 1;
                let fast = principal_congruence(&l, a, b).unwrap();
                let slow = oracle_principal(&l, a, b, &budget).unwrap();
                ensure(fast == slow, || {
                    format!("cg({},{}) differs from oracle in {}", l.label(a), l.label(b), name(&l))
                })?;
            }
        }
        let fast = sorted(con_lattice(&l));
        let slow = sorted(oracle_congruences(&l, &budget).unwrap());
        ensure(fast == slow, || format!("Con differs from oracle in {}", name(&l)))?;
    }
    ensure(lattices == 1 + 1 + 1 + 2 + 5 + 15, || format!("enumerated {lattices} lattices"))?;
    Ok(format!("{lattices} lattices, {pairs} pairs"))
}

fn blocks(l: &FiniteLattice, c: &Congruence) -> String {
    c.labeled_blocks(l)
        .iter()
        .map(|b| b.join(""))
        .collect::<Vec<_>>()
        .join("|")
}

fn criterion_2() -> Check {
    let budget = OracleBudget::default();
    let n5 = Arc::new(FiniteLattice::pentagon());
    let golden: BTreeSet<&str> = ["0|a|b|c|1", "0|ab|c|1", "0ab|c1", "0c|ab1", "0abc1"].into();
    let got: BTreeSet<String> = con_lattice(&n5).iter().map(|c| blocks(&n5, c)).collect();
    let oracle: BTreeSet<String> = oracle_congruences(&n5, &budget)
        .unwrap()
        .iter()
        .map(|c| blocks(&n5, c))
        .collect();
    ensure(got == oracle, || "Con(N5) differs from oracle".into())?;
    ensure(got.iter().map(String::as_str).collect::<BTreeSet<_>>() == golden, || {
        format!("Con(N5) = {got:?}")
    })?;

    let m3 = FiniteLattice::diamond(3);
    ensure(con_lattice(&m3).len() == 2, || "|Con(M3)| != 2".into())?;
    ensure(oracle_congruences(&m3, &budget).unwrap().len() == 2, || "oracle |Con(M3)| != 2".into())?;

    let c3 = princ_poset(Arc::new(FiniteLattice::chain(3)));
    let square = Arc::new(FiniteLattice::diamond(2).poset().as_ref().clone());
    ensure(find_order_isomorphism(c3.poset().clone(), square).is_some(), || {
        "Princ(3-chain) is not 2x2".into()
    })?;

    let p = princ_poset(n5.clone());
    ensure(p.len() == 5, || format!("|Princ(N5)| = {}", p.len()))?;
    let idx = |x: &str| n5.index_of(x).unwrap();
    let at = |a: &str, b: &str| p.position(&principal_congruence(&n5, idx(a), idx(b)).unwrap()).unwrap();
    let (delta, ab, oa, b1, nabla) = (p.delta(), at("a", "b"), at("0", "a"), at("b", "1"), p.nabla());
    let le = |x, y| p.poset().le(x, y);
    ensure(
        le(delta, ab) && le(ab, oa) && le(ab, b1) && le(oa, nabla) && le(b1, nabla),
        || "Princ(N5) chain relations missing".into(),
    )?;
    ensure(!le(oa, b1) && !le(b1, oa), || "cg(0,a) and cg(b,1) are comparable".into())?;
    ensure(
        [delta, ab, oa, b1, nabla].iter().collect::<BTreeSet<_>>().len() == 5,
        || "Princ(N5) elements not distinct".into(),
    )?;
    Ok("N5, M3, 3-chain fixtures".into())
}

fn criterion_3() -> Check {
    let (mut maps, mut chains) = (0, 0);
    for l in lattices_up_to(6) {
        let pl = Arc::new(princ_poset(l.clone()));
        let subs: Vec<SublatticeEmbedding> = enumerate_01_sublattices(l.clone(), None).collect();
        let princs: Vec<Arc<_>> = subs.iter().map(|s| Arc::new(princ_poset(s.sub().clone()))).collect();
        let into_l: Vec<_> = subs
            .iter()
            .zip(&princs)
            .map(|(s, p)| zeta_between(p.clone(), pl.clone(), s).unwrap())
            .collect();
        for (k, z) in subs.iter().zip(&into_l) {
            maps += 1;
            let r = is_catb_morphism(&z.map).unwrap();
            ensure(r.ok, || format!("zeta {:?} in {}: {r}", k.labels(), name(&l)))?;
        }
        for (j, js) in subs.iter().enumerate() {
            for (k, ks) in subs.iter().enumerate() {
                if !js.is_subset_of(ks) {
                    continue;
                }
                let inner = SublatticeEmbedding::inclusion(js, ks).unwrap();
                let zjk = zeta_between(princs[j].clone(), princs[k].clone(), &inner).unwrap();
                maps += 1;
                let r = is_catb_morphism(&zjk.map).unwrap();
                ensure(r.ok, || format!("zeta {:?} -> {:?}: {r}", js.labels(), ks.labels()))?;
                chains += 1;
                let composed = zjk.map.then(&into_l[k].map).unwrap();
                ensure(composed == into_l[j].map, || {
                    format!("functoriality fails for {:?} <= {:?} in {}", js.labels(), ks.labels(), name(&l))
                })?;
            }
        }
    }
    Ok(format!("{maps} zeta maps, {chains} chains"))
}

const RANDOM_FUNCTORS: u64 = 250;

fn shape() -> FunctorShape {
    FunctorShape {
        max_base: 4,
        min_object: 2,
        max_object: 5,
        ..FunctorShape::default()
    }
}

fn criterion_4() -> Check {
    let mut checks = 0;
    for seed in 0..RANDOM_FUNCTORS {
        let f = random_functor(&mut rng_from_seed(seed), &shape());
        ensure(f.base().len() <= 4 && f.objects().iter().all(|p| p.len() <= 5), || {
            format!("seed {seed}: shape out of range")
        })?;
        let nf = normalize_functor(&f).map_err(|e| format!("seed {seed}: {e}"))?.functor;
        for j in 0..nf.base().len() {
            checks += 1;
            let k = kappa_map(&nf, j).map_err(|e| format!("seed {seed}, j = {j}: {e}"))?;
            ensure(k.map.is_order_isomorphism(), || format!("seed {seed}, j = {j}: not an isomorphism"))?;
            let target = k.map.target();
            let closure = &k.colimit.closure;
            let n = k.colimit.carrier.len();
            for x in 0..n {
                for y in 0..n {
                    let (fx, fy) = (k.premap[x], k.premap[y]);
                    // the premap is monotone on the closed relation
                    ensure(!closure.le(x, y) || target.le(fx, fy), || {
                        format!("seed {seed}, j = {j}: premap not monotone")
                    })?;
                    // comparable images come from related elements
                    ensure(!target.le(fx, fy) || closure.le(x, y), || {
                        format!("seed {seed}, j = {j}: closure does not reflect order")
                    })?;
                }
            }
            ensure(k.check_premap_monotone().ok && k.check_order_reflection().ok, || {
                format!("seed {seed}, j = {j}: built-in checks disagree")
            })?;
        }
    }
    Ok(format!("{RANDOM_FUNCTORS} functors (seeds 0..{RANDOM_FUNCTORS}), {checks} kappa maps"))
}

fn criterion_5() -> Check {
    for seed in 0..RANDOM_FUNCTORS {
        let f = random_functor(&mut rng_from_seed(seed), &shape());
        let n = normalize_functor(&f).map_err(|e| format!("seed {seed}: {e}"))?;
        let g = &n.functor;
        ensure(validate_functor(g).ok, || format!("seed {seed}: output invalid"))?;
        let r = is_normalized(g);
        ensure(r.ok, || format!("seed {seed}: {r}"))?;
        // the predicate, checked directly on labels
        for i in 0..g.base().len() {
            let pi = g.object(i);
            let (b, t) = pi.bounds().unwrap();
            ensure(pi.label(b) == "0" && pi.label(t) == "1", || format!("seed {seed}: bounds of {i}"))?;
            for j in 0..g.base().len() {
                if i == j {
                    continue;
                }
                let shared = pi
                    .carrier()
                    .labels()
                    .iter()
                    .filter(|l| g.object(j).carrier().contains(l))
                    .count();
                ensure(shared == 2, || format!("seed {seed}: objects {i}, {j} share {shared} labels"))?;
            }
            ensure(n.alpha[i].is_order_isomorphism(), || format!("seed {seed}: alpha_{i} not an isomorphism"))?;
        }
        for (&(i, j), psi) in f.morphisms() {
            for x in 0..f.object(i).len() {
                ensure(
                    g.psi(i, j).apply(n.alpha[i].apply(x)) == n.alpha[j].apply(psi.apply(x)),
                    || format!("seed {seed}: square {i} -> {j} fails at {}", f.object(i).label(x)),
                )?;
            }
        }
    }
    Ok(format!("{RANDOM_FUNCTORS} functors"))
}

fn bases() -> Vec<Arc<Poset>> {
    vec![
        Arc::new(Poset::chain(1)),
        Arc::new(Poset::chain(2)),
        Arc::new(Poset::chain(3)),
        Arc::new(Poset::bounded_antichain(2)),
    ]
}

/// Every inclusion-monotone assignment of `{0,1}`-sublattices of `l` to `base`.
fn all_embeddings(base: &Arc<Poset>, l: &Arc<FiniteLattice>) -> Vec<EmbeddingFunctor> {
    let subs: Vec<Vec<usize>> = enumerate_01_sublattices(l.clone(), None).map(|s| s.subset()).collect();
    let order = base.linear_extension();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<usize>> = vec![None; base.len()];
    fn rec(
        depth: usize,
        order: &[usize],
        base: &Poset,
        subs: &[Vec<usize>],
        chosen: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(chosen.iter().map(|c| c.unwrap()).collect());
            return;
        }
        let j = order[depth];
        for (s, set) in subs.iter().enumerate() {
            let fits = order[..depth]
                .iter()
                .filter(|&&i| base.le(i, j))
                .all(|&i| subs[chosen[i].unwrap()].iter().all(|x| set.contains(x)));
            if fits {
                chosen[j] = Some(s);
                rec(depth + 1, order, base, subs, chosen, out);
                chosen[j] = None;
            }
        }
    }
    let mut picks = Vec::new();
    rec(0, &order, base, &subs, &mut chosen, &mut picks);
    for pick in picks {
        let subsets: Vec<Vec<usize>> = pick.iter().map(|&s| subs[s].clone()).collect();
        out.push(EmbeddingFunctor::new(base.clone(), l.clone(), &subsets).unwrap());
    }
    out
}

fn criterion_6() -> Check {
    let lattices = lattices_up_to(5);
    let mut selfreps = 0;
    let mut searches = 0;
    let mut slowest = Duration::ZERO;
    let budget = OracleBudget::new(5, 1_000_000, Duration::from_secs(60)).unwrap();
    for base in bases() {
        for l in &lattices {
            for e in all_embeddings(&base, l) {
                let g = princ_functor(&e).unwrap();
                selfreps += 1;
                ensure(check_representation(&g, l, &e).unwrap().is_some(), || {
                    format!("self-representation fails over {}", name(l))
                })?;
                searches += 1;
                let start = Instant::now();
                let r = search_representation(&g, &budget).unwrap();
                slowest = slowest.max(start.elapsed());
                ensure(!r.budget_exceeded && start.elapsed() <= Duration::from_secs(60), || {
                    format!("search over {} ran out of budget", name(l))
                })?;
                let cert = r.found.ok_or_else(|| format!("planted instance over {} not rediscovered", name(l)))?;
                ensure(cert.lattice.len() <= l.len(), || "certificate lattice larger than planted".into())?;
                ensure(
                    check_representation(&g, &cert.lattice, &cert.embedding).unwrap().is_some(),
                    || "certificate does not replay".into(),
                )?;
            }
        }
    }

    let c2 = Arc::new(Poset::chain(2));
    let l = Arc::new(FiniteLattice::chain(2));
    let (xi0, xi1) = check_single_morphism_representation(
        &MonotoneMap::identity(c2),
        &SublatticeEmbedding::identity(l.clone()),
    )
    .unwrap()
    .ok_or("identity on the 2-chain not representable")?;
    let p = princ_poset(l);
    for xi in [&xi0, &xi1] {
        ensure(xi.apply(0) == p.delta() && xi.apply(1) == p.nabla(), || "xi is not 0 -> Delta, 1 -> Nabla".into())?;
    }
    Ok(format!(
        "{selfreps} self-representations, {searches} searches (slowest {} ms)",
        slowest.as_millis()
    ))
}

fn cli(args: &[&str], files: &[(&str, &str, &str)]) -> std::process::Output {
    let dir = tempfile::tempdir().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_princ-cong"));
    cmd.env_remove("PRINC_CONG_BUDGET").args(args);
    for (flag, file, text) in files {
        let path = dir.path().join(file);
        std::fs::write(&path, text).unwrap();
        cmd.arg(flag).arg(path);
    }
    cmd.output().unwrap()
}

const N5: &str = r#"{"elements":["0","a","b","c","1"],
    "covers":[["0","a"],["a","b"],["b","1"],["0","c"],["c","1"]]}"#;

fn n5_functor(top_image: &str) -> String {
    format!(
        r#"{{"base":{{"elements":["s","t"],"le":[["s","t"]]}},
            "objects":{{"s":{{"elements":["0","1"],"le":[["0","1"]]}},
                        "t":{{"elements":["z","p","q","r","u"],
                              "le":[["z","p"],["p","q"],["p","r"],["q","u"],["r","u"]]}}}},
            "morphisms":{{"s<=t":{{"0":"z","1":"{top_image}"}}}}}}"#
    )
}

fn criterion_7() -> Check {
    let embedding = format!(r#"{{"lattice":{N5},"assignment":{{"s":["0","1"],"t":["0","a","b","c","1"]}}}}"#);
    let run = |top: &str| {
        cli(
            &["check-rep"],
            &[
                ("--functor", "f.json", &n5_functor(top)),
                ("--lattice", "l.json", N5),
                ("--embedding", "e.json", &embedding),
            ],
        )
    };
    let good = run("u");
    ensure(good.status.code() == Some(0), || format!("planted N5 instance exits {:?}", good.status.code()))?;
    for perturbed in ["p", "q", "r"] {
        let o = run(perturbed);
        ensure(o.status.code() == Some(1), || format!("perturbed psi(1) = {perturbed} exits {:?}", o.status.code()))?;
    }

    let bad = r#"{"elements":["0","p","q","r","s","1"],
        "covers":[["0","p"],["0","q"],["p","r"],["q","r"],["p","s"],["q","s"],["r","1"],["s","1"]]}"#;
    let o = cli(&["princ"], &[("--lattice", "bad.json", bad)]);
    ensure(o.status.code() == Some(2), || format!("non-lattice exits {:?}", o.status.code()))?;
    let diag: serde_json::Value = serde_json::from_slice(&o.stderr).map_err(|e| e.to_string())?;
    ensure(diag["error"] == "not a lattice", || format!("diagnostic {diag}"))?;
    let witness = diag["witness"].as_array().cloned().unwrap_or_default();
    ensure(witness.len() == 2, || format!("witness {witness:?}"))?;
    // the witness pair really lacks a join
    let p = Poset::new(
        &["0", "p", "q", "r", "s", "1"],
        &[("0", "p"), ("0", "q"), ("p", "r"), ("q", "r"), ("p", "s"), ("q", "s"), ("r", "1"), ("s", "1")],
    )
    .unwrap();
    let (a, b) = (
        p.index_of(witness[0].as_str().unwrap()).unwrap(),
        p.index_of(witness[1].as_str().unwrap()).unwrap(),
    );
    let uppers: Vec<usize> = (0..p.len()).filter(|&u| p.le(a, u) && p.le(b, u)).collect();
    let least = uppers.iter().filter(|&&u| uppers.iter().all(|&v| p.le(u, v))).count();
    let lowers: Vec<usize> = (0..p.len()).filter(|&u| p.le(u, a) && p.le(u, b)).collect();
    let greatest = lowers.iter().filter(|&&u| lowers.iter().all(|&v| p.le(v, u))).count();
    ensure(least == 0 || greatest == 0, || "witness pair has both bounds".into())?;
    Ok("perturbed psi exits 1, non-lattice exits 2 with witness".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence, |L| <= 6", criterion_1),
        ("named fixtures", criterion_2),
        ("zeta maps and functoriality, |L| <= 6", criterion_3),
        ("kappa is an order isomorphism", criterion_4),
        ("normalization and alpha naturality", criterion_5),
        ("representation round trips", criterion_6),
        ("negative controls", criterion_7),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

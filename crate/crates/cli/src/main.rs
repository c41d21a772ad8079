use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use princ_cong::functor::{explain_representation, is_normalized, RepresentationOutcome};
use princ_cong::io::{
    congruence_json, natural_iso_json, poset_to_dot, read_json, EmbeddingJson, FunctorJson, KappaJson, LatticeJson,
    PosetJson, PrincJson, SearchReportJson, ZetaJson,
};
use princ_cong::lattice::zeta_between;
use princ_cong::oracle::enumerate_small_lattices;
use princ_cong::random::{random_normalized_functor, rng_from_seed, FunctorShape};
use princ_cong::{
    con_lattice, enumerate_01_sublattices, kappa_map, normalize_functor, oracle_congruences, oracle_principal,
    princ_poset, principal_congruence, search_representation, validate_functor, Carrier, Error, FiniteLattice,
    OracleBudget, Poset, PosetFunctor, SublatticeEmbedding,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "princ-cong", version, about = "Principal congruences of finite lattices and functor representation checks")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Args, Default)]
struct Common {
    /// Lattice JSON: {"elements": [...], "covers": [[a, b], ...]}
    #[arg(long, global = true)]
    lattice: Option<PathBuf>,
    /// Poset JSON: {"elements": [...], "le": [[a, b], ...]}; accepted wherever a lattice is
    #[arg(long, global = true)]
    poset: Option<PathBuf>,
    #[arg(long, global = true)]
    functor: Option<PathBuf>,
    #[arg(long, global = true)]
    embedding: Option<PathBuf>,
    #[arg(long, global = true, num_args = 2, value_names = ["A", "B"])]
    pair: Option<Vec<String>>,
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_size: Option<usize>,
    #[arg(long, global = true)]
    time_limit: Option<u64>,
}

#[derive(Subcommand)]
enum Verb {
    /// Poset of principal congruences with witness pairs and Hasse edges
    Princ(Common),
    /// All congruences
    Con(Common),
    /// Congruence generated by one pair (--pair A B)
    Cg(Common),
    /// {0,1}-sublattices by size; --max-size caps the count
    Sublattices(Common),
    /// Induced map Princ(K) -> Princ(L) for the sublattice K given by --sub
    Zeta {
        #[command(flatten)]
        common: Common,
        /// Comma-separated elements of the sublattice
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    ValidateFunctor(Common),
    Normalize(Common),
    /// Colimit quotient and kappa for one base element, or all; with --seed and no
    /// --functor, runs on random normalized functors
    Kappa {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: Option<String>,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    CheckRep(Common),
    SearchRep(Common),
    /// Compares fast routines against brute force on every lattice up to --size
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        size: usize,
    },
}

struct Outcome {
    value: Value,
    dot: Option<String>,
    code: u8,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, dot: None, code: EXIT_OK }
    }

    fn with_code(value: Value, negative: bool) -> Self {
        Outcome {
            value,
            dot: None,
            code: if negative { EXIT_NEGATIVE } else { EXIT_OK },
        }
    }
}

type Res<T> = Result<T, Error>;

fn read_file(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn need<'a>(p: &'a Option<PathBuf>, flag: &str) -> Res<&'a PathBuf> {
    p.as_ref().ok_or_else(|| Error::Input(format!("--{flag} is required")))
}

fn load_lattice(c: &Common) -> Res<Arc<FiniteLattice>> {
    match (&c.lattice, &c.poset) {
        (Some(path), _) => Ok(Arc::new(read_json::<LatticeJson>(&read_file(path)?)?.to_lattice()?)),
        (None, Some(path)) => {
            let poset = read_json::<PosetJson>(&read_file(path)?)?.to_poset()?;
            Ok(Arc::new(FiniteLattice::from_poset(Arc::new(poset))?))
        }
        (None, None) => Err(Error::Input("--lattice or --poset is required".into())),
    }
}

fn load_functor(c: &Common) -> Res<PosetFunctor> {
    read_json::<FunctorJson>(&read_file(need(&c.functor, "functor")?)?)?.to_functor()
}

fn budget(c: &Common) -> Res<OracleBudget> {
    let mut b = OracleBudget::from_env()?;
    if let Some(n) = c.max_size {
        b.max_carrier_size = n;
    }
    if let Some(s) = c.time_limit {
        b.time_limit = Duration::from_secs(s);
    }
    OracleBudget::new(b.max_carrier_size, b.max_candidates, b.time_limit)
}

fn with_seed(mut v: Value, seed: Option<u64>) -> Value {
    if let (Some(s), Value::Object(m)) = (seed, &mut v) {
        m.insert("seed".into(), json!(s));
    }
    v
}

fn princ(c: &Common) -> Res<Outcome> {
    let p = princ_poset(load_lattice(c)?);
    Ok(Outcome {
        value: serde_json::to_value(PrincJson::from_princ(&p))?,
        dot: Some(poset_to_dot(p.poset(), "Princ")),
        code: EXIT_OK,
    })
}

fn con(c: &Common) -> Res<Outcome> {
    let l = load_lattice(c)?;
    let cons = con_lattice(&l);
    let labels: Vec<String> = cons
        .iter()
        .map(|k| {
            congruence_json(&l, k)
                .iter()
                .map(|b| b.join(","))
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    let mut le = Vec::new();
    for (i, a) in cons.iter().enumerate() {
        for (j, b) in cons.iter().enumerate() {
            if a.refines(b) {
                le.push((i, j));
            }
        }
    }
    let order = Poset::from_indices(Arc::new(Carrier::new(labels)?), &le)?;
    Ok(Outcome {
        value: json!({
            "count": cons.len(),
            "congruences": cons.iter().map(|k| congruence_json(&l, k)).collect::<Vec<_>>(),
        }),
        dot: Some(poset_to_dot(&order, "Con")),
        code: EXIT_OK,
    })
}

fn cg(c: &Common) -> Res<Outcome> {
    let l = load_lattice(c)?;
    let pair = c.pair.as_ref().ok_or_else(|| Error::Input("--pair A B is required".into()))?;
    let (a, b) = (l.index_of(&pair[0])?, l.index_of(&pair[1])?);
    let k = principal_congruence(&l, a, b)?;
    Ok(Outcome::ok(json!({
        "pair": [pair[0], pair[1]],
        "blocks": congruence_json(&l, &k),
        "delta": k.is_delta(),
        "nabla": k.num_blocks() == 1,
    })))
}

fn sublattices(c: &Common) -> Res<Outcome> {
    let l = load_lattice(c)?;
    let mut it = enumerate_01_sublattices(l.clone(), c.max_size);
    let subs: Vec<Vec<String>> = it.by_ref().map(|s| s.labels()).collect();
    Ok(Outcome::ok(json!({
        "count": subs.len(),
        "sublattices": subs,
        "truncated": it.truncated(),
    })))
}

fn zeta(c: &Common, sub: &[String]) -> Res<Outcome> {
    let l = load_lattice(c)?;
    if sub.is_empty() {
        return Err(Error::Input("--sub is required".into()));
    }
    let emb = SublatticeEmbedding::from_labels(l.clone(), sub)?;
    let z = zeta_between(Arc::new(princ_poset(emb.sub().clone())), Arc::new(princ_poset(l)), &emb)?;
    Ok(Outcome::ok(serde_json::to_value(ZetaJson::from_zeta(&z))?))
}

fn validate(c: &Common) -> Res<Outcome> {
    let f = load_functor(c)?;
    let report = validate_functor(&f);
    let negative = !report.ok;
    Ok(Outcome::with_code(serde_json::to_value(report)?, negative))
}

fn normalize(c: &Common) -> Res<Outcome> {
    let f = load_functor(c)?;
    let n = normalize_functor(&f)?;
    let alpha: serde_json::Map<String, Value> = n
        .alpha
        .iter()
        .enumerate()
        .map(|(i, a)| (f.base().label(i).to_string(), json!(a.to_labels())))
        .collect();
    Ok(Outcome::ok(json!({
        "functor": FunctorJson::from_functor(&n.functor),
        "alpha": alpha,
        "trivial": n.trivial,
    })))
}

fn kappa_report(f: &PosetFunctor, index: Option<&str>) -> Res<(Value, bool)> {
    let f = if is_normalized(f).ok {
        f.clone()
    } else {
        normalize_functor(f)?.functor
    };
    let indices = match index {
        Some(l) => vec![f.base().index_of(l)?],
        None => (0..f.base().len()).collect(),
    };
    let mut all_ok = true;
    let mut out = serde_json::Map::new();
    for j in indices {
        let k = kappa_map(&f, j)?;
        let monotone = k.check_premap_monotone();
        let reflects = k.check_order_reflection();
        let iso = k.map.is_order_isomorphism();
        all_ok &= monotone.ok && reflects.ok && iso;
        out.insert(
            f.base().label(j).to_string(),
            json!({
                "kappa": KappaJson::from_kappa(&f, &k),
                "premap_monotone": monotone,
                "order_reflecting": reflects,
            }),
        );
    }
    Ok((json!({ "functor": FunctorJson::from_functor(&f), "indices": out, "ok": all_ok }), all_ok))
}

fn kappa(c: &Common, index: Option<&str>, count: usize) -> Res<Outcome> {
    if c.functor.is_some() {
        let (v, ok) = kappa_report(&load_functor(c)?, index)?;
        return Ok(Outcome::with_code(with_seed(v, c.seed), !ok));
    }
    let seed = c
        .seed
        .ok_or_else(|| Error::Input("--functor or --seed is required".into()))?;
    let mut rng = rng_from_seed(seed);
    let shape = FunctorShape::default();
    let mut runs = Vec::new();
    let mut all_ok = true;
    for _ in 0..count.max(1) {
        let f = random_normalized_functor(&mut rng, &shape);
        let (v, ok) = kappa_report(&f, None)?;
        all_ok &= ok;
        runs.push(v);
    }
    Ok(Outcome::with_code(
        json!({ "seed": seed, "count": runs.len(), "ok": all_ok, "runs": runs }),
        !all_ok,
    ))
}

fn check_rep(c: &Common) -> Res<Outcome> {
    let f = load_functor(c)?;
    let e = read_json::<EmbeddingJson>(&read_file(need(&c.embedding, "embedding")?)?)?.to_embedding(f.base().clone())?;
    let lattice = match (&c.lattice, &c.poset) {
        (None, None) => e.lattice().clone(),
        _ => load_lattice(c)?,
    };
    let outcome = explain_representation(&f, &lattice, &e)?;
    let reason = outcome.reason();
    Ok(match outcome {
        RepresentationOutcome::Found(xi) => Outcome::ok(json!({
            "representable": true,
            "natural_iso": natural_iso_json(&f, &xi),
        })),
        RepresentationOutcome::NoObjectIsomorphism { object } => Outcome::with_code(
            json!({
                "representable": false,
                "reason": reason,
                "witness": [f.base().label(object)],
            }),
            true,
        ),
        RepresentationOutcome::NoIsomorphismFamily => Outcome::with_code(
            json!({ "representable": false, "reason": reason }),
            true,
        ),
    })
}

fn search_rep(c: &Common) -> Res<Outcome> {
    let f = load_functor(c)?;
    let b = budget(c)?;
    let r = search_representation(&f, &b)?;
    let code = if r.found.is_some() {
        EXIT_OK
    } else if r.budget_exceeded {
        EXIT_BUDGET
    } else {
        EXIT_NEGATIVE
    };
    Ok(Outcome {
        value: serde_json::to_value(SearchReportJson::from_report(&f, &r))?,
        dot: None,
        code,
    })
}

fn oracle_check(c: &Common, size: usize) -> Res<Outcome> {
    let b = budget(c)?;
    if size > b.max_carrier_size {
        return Err(Error::BudgetExceeded(format!(
            "size {size} exceeds the oracle carrier limit {}",
            b.max_carrier_size
        )));
    }
    let mut lattices = 0;
    let mut pairs = 0;
    let mut zetas = 0;
    let mut mismatches = Vec::new();
    for n in 1..=size {
        for l in enumerate_small_lattices(n)? {
            lattices += 1;
            let l = Arc::new(l);
            let labels = l.poset().carrier().labels().join(",");
            for a in 0..n {
                for bb in 0..n {
                    pairs += 1;
                    if principal_congruence(&l, a, bb)? != oracle_principal(&l, a, bb, &b)? {
                        mismatches.push(json!({ "lattice": labels, "pair": [l.label(a), l.label(bb)] }));
                    }
                }
            }
            let mut fast = con_lattice(&l);
            let mut slow = oracle_congruences(&l, &b)?;
            fast.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
            slow.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
            if fast != slow {
                mismatches.push(json!({ "lattice": labels, "check": "congruence lattice" }));
            }
            // Both routes of zeta are compared inside zeta_between.
            let target = Arc::new(princ_poset(l.clone()));
            for emb in enumerate_01_sublattices(l.clone(), None) {
                zetas += 1;
                let src = Arc::new(princ_poset(emb.sub().clone()));
                if let Err(e) = zeta_between(src, target.clone(), &emb) {
                    mismatches.push(json!({ "lattice": labels, "sublattice": emb.labels(), "error": e.to_string() }));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    Ok(Outcome::with_code(
        with_seed(
            json!({
                "size": size,
                "lattices": lattices,
                "pairs": pairs,
                "zeta_maps": zetas,
                "mismatches": mismatches,
                "ok": ok,
            }),
            c.seed,
        ),
        !ok,
    ))
}

fn run(verb: &Verb) -> Res<(Outcome, Format)> {
    let (out, common) = match verb {
        Verb::Princ(c) => (princ(c)?, c),
        Verb::Con(c) => (con(c)?, c),
        Verb::Cg(c) => (cg(c)?, c),
        Verb::Sublattices(c) => (sublattices(c)?, c),
        Verb::Zeta { common, sub } => (zeta(common, sub)?, common),
        Verb::ValidateFunctor(c) => (validate(c)?, c),
        Verb::Normalize(c) => (normalize(c)?, c),
        Verb::Kappa { common, index, count } => (kappa(common, index.as_deref(), *count)?, common),
        Verb::CheckRep(c) => (check_rep(c)?, c),
        Verb::SearchRep(c) => (search_rep(c)?, c),
        Verb::OracleCheck { common, size } => (oracle_check(common, *size)?, common),
    };
    if matches!(common.format, Format::Dot) && out.dot.is_none() {
        return Err(Error::Input("--format dot is only available for princ and con".into()));
    }
    Ok((out, common.format))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.verb) {
        Ok((out, format)) => {
            let text = match (format, out.dot) {
                (Format::Dot, Some(dot)) => dot,
                _ => serde_json::to_string_pretty(&out.value).expect("serializable output") + "\n",
            };
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            let mut diag = json!({ "error": e.kind(), "message": e.to_string(), "witness": e.witness() });
            if let Error::InvalidFunctor(report) = &e {
                diag["report"] = serde_json::to_value(report).expect("serializable report");
            }
            let _ = writeln!(
                std::io::stderr(),
                "{}",
                serde_json::to_string_pretty(&diag).expect("serializable diagnostic")
            );
            ExitCode::from(exit_code(&e))
        }
    }
}

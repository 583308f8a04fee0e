use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use basketry::birationality::{
    best_threshold, replay_birationality, thm_main_threshold, zeta_lower_bound, BirationalityInputs, GenusCase, Target,
    Variant,
};
use basketry::data::PROPOSITION_LIST;
use basketry::delta1::{delta1_bound, replay_delta1, Family};
use basketry::index_bound::{large_rmax_claims, max_index_given_rmax, max_index_report, MAX_R};
use basketry::pencil::{non_pencil_threshold, thm1_threshold, LocalCriterion, Verdict};
use basketry::rational::parse_rational;
use basketry::report::{EliminatedRow, ReplayReport, SurvivorRow};
use basketry::rr::{anti_plurigenus_recursive, plurigenera, volume};
use basketry::search::{search, Bound, Certificate, ConstraintSet};
use basketry::wci::{anti_plurigenera_from_hilbert, fit_basket, FitCaps, WeightedCI};
use basketry::{Basket, Error, OrbifoldPoint, WeightedBasket};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "basketry", version, about = "Plurigenera, basket enumeration and threshold replays for Fano 3-folds")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Number of plurigenera to compute or check.
    #[arg(long, global = true)]
    horizon: Option<u32>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Anti-plurigenera and volume of a weighted basket.
    Rr {
        #[arg(long, required_unless_present = "random")]
        basket: Option<String>,
        #[arg(long, default_value_t = 0)]
        p1: u32,
        /// Range `A..B` (inclusive).
        #[arg(long)]
        m: Option<String>,
        /// Check both formulas on this many random baskets instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
    },
    /// Enumerate geometric weighted baskets under constraints.
    Enumerate {
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        p2: Option<i64>,
        #[arg(long)]
        p3: Option<i64>,
        #[arg(long)]
        p4: Option<i64>,
        /// `M=V`, repeatable.
        #[arg(long, value_name = "M=V")]
        pin: Vec<String>,
        #[arg(long, value_name = "M=V")]
        at_most: Vec<String>,
        #[arg(long, value_name = "M=V")]
        at_least: Vec<String>,
        #[arg(long)]
        sigma5: Option<u32>,
        /// Relax γ > 0 to Σ (r - 1/r) <= 24.
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        no_superadditivity: bool,
        /// List every elimination with its certificate.
        #[arg(long)]
        eliminated: bool,
    },
    /// Replay a case analysis.
    Replay {
        case: ReplayCase,
        /// Show eliminations by γ as well.
        #[arg(long)]
        full: bool,
    },
    /// Brute-force bounds on the Gorenstein index.
    IndexBound {
        #[arg(long)]
        rmax: Option<u32>,
    },
    /// Non-pencil inequality and δ1 bounds for a weighted basket.
    Pencil {
        #[arg(long)]
        basket: String,
        #[arg(long, default_value_t = 0)]
        p1: u32,
        /// Also evaluate the volume threshold with this `t`.
        #[arg(long)]
        t: Option<String>,
    },
    /// Birationality threshold from m0, m1, μ0, rmax, ν0.
    Thresholds {
        #[arg(long)]
        m0: u32,
        #[arg(long)]
        m1: u32,
        /// Upper bound for μ0 as `N` or `N/D`; defaults to m0.
        #[arg(long)]
        mu0: Option<String>,
        #[arg(long)]
        rmax: Option<u32>,
        #[arg(long)]
        nu0: Option<u32>,
        #[arg(long)]
        variant: Option<String>,
        /// g0, g1, g_ge2 or unknown; prints the ζ lower bound.
        #[arg(long)]
        genus: Option<String>,
    },
    /// Hilbert series of a weighted complete intersection.
    Wci {
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 40)]
        upto: u32,
        /// Fit weighted baskets to the sequence.
        #[arg(long)]
        fit: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReplayCase {
    List,
    P3,
    P2,
    P1,
    P0,
    Birat1,
    Birat2,
}

/// Rendered output plus whether the computation met expectations.
struct Outcome {
    text: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::InvalidPoint { .. } | Error::Precondition(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Res = Result<Outcome, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || usage(format!("bad range {s:?}, expected A..B"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_pair(s: &str) -> Result<(u32, i64), Failure> {
    let bad = || usage(format!("bad constraint {s:?}, expected M=V"));
    let (m, v) = s.split_once('=').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    if m < 2 {
        return Err(usage("constraints apply to P_-m with m >= 2; P_-1 is --p1"));
    }
    Ok((m, v.trim().parse().map_err(|_| bad())?))
}

fn cmd_rr(cli: &Cli, basket: Option<&str>, p1: u32, m: Option<&str>, random: Option<usize>) -> Res {
    if let Some(count) = random {
        return rr_sweep(cli, count);
    }
    let wb = WeightedBasket::parse(basket.expect("clap requires --basket"), p1)?;
    let (lo, hi) = match m {
        Some(s) => parse_range(s)?,
        None => (1, cli.horizon.unwrap_or(12)),
    };
    let seq = plurigenera(&wb, hi)?;
    let vol = volume(&wb);
    let cells: Vec<(u32, i64)> = (lo..=hi).map(|m| (m, seq.get(m).unwrap())).collect();
    if cli.json {
        let p: serde_json::Map<String, Value> = cells.iter().map(|(m, v)| (m.to_string(), json!(v))).collect();
        let v = json!({"basket": wb.basket.to_string(), "p1": p1, "volume": vol.to_string(), "rX": wb.basket.gorenstein_index(), "P": p});
        return Ok(Outcome { text: pretty(&v), ok: true });
    }
    let cols: Vec<String> = cells.iter().map(|(m, v)| format!("P_-{m} = {v}")).collect();
    Ok(Outcome { text: format!("{} P_-1={p1}: -K^3 = {vol}; {}\n", wb.basket.braced(), cols.join(", ")), ok: true })
}

fn random_basket(rng: &mut ChaCha8Rng) -> WeightedBasket {
    let n = rng.gen_range(0..=6);
    let pts = (0..n).map(|_| {
        let r = rng.gen_range(2..=13u32);
        loop {
            if let Ok(p) = OrbifoldPoint::new(rng.gen_range(1..=r / 2), r) {
                break p;
            }
        }
    });
    WeightedBasket::new(Basket::new(pts), rng.gen_range(0..=3))
}

fn rr_sweep(cli: &Cli, count: usize) -> Res {
    let seed = cli.seed.ok_or_else(|| usage("--random needs --seed"))?;
    let horizon = cli.horizon.unwrap_or(24);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..count {
        let wb = random_basket(&mut rng);
        let fast = plurigenera(&wb, horizon).map(|s| s.values);
        let slow: basketry::Result<Vec<i64>> = (1..=horizon).map(|m| anti_plurigenus_recursive(&wb, m)).collect();
        match (fast, slow) {
            (Ok(a), Ok(b)) if a == b => {}
            (Err(_), Err(_)) => {}
            _ => mismatches.push(wb.to_string()),
        }
    }
    let ok = mismatches.is_empty();
    let text = if cli.json {
        pretty(&json!({"seed": seed, "count": count, "horizon": horizon, "mismatches": mismatches}))
    } else {
        let mut s = format!("seed {seed}: {count} random baskets, P_-1..P_-{horizon}, {} mismatches\n", mismatches.len());
        for m in &mismatches {
            let _ = writeln!(s, "  {m}");
        }
        s
    };
    Ok(Outcome { text, ok })
}

fn certificate_kind(c: &Certificate) -> &'static str {
    match c {
        Certificate::Gamma { .. } => "gamma",
        Certificate::Volume { .. } => "volume",
        Certificate::Plurigenus { .. } => "plurigenus",
        Certificate::Sigma5 { .. } => "sigma5",
        Certificate::Superadditivity { .. } => "superadditivity",
        Certificate::Integrality { .. } => "integrality",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    cli: &Cli,
    p1: u32,
    shortcuts: [(u32, Option<i64>); 3],
    pin: &[String],
    at_most: &[String],
    at_least: &[String],
    sigma5: Option<u32>,
    weak: bool,
    no_superadditivity: bool,
    eliminated: bool,
) -> Res {
    let mut cs = if weak { ConstraintSet::weak(p1) } else { ConstraintSet::qfano(p1) };
    if let Some(h) = cli.horizon {
        cs = cs.with_horizon(h);
    }
    for (m, v) in shortcuts {
        if let Some(v) = v {
            cs = cs.pin(m, v);
        }
    }
    for s in pin {
        let (m, v) = parse_pair(s)?;
        cs = cs.pin(m, v);
    }
    for s in at_most {
        let (m, v) = parse_pair(s)?;
        cs = cs.bound(m, Bound { lo: None, hi: Some(v) });
    }
    for s in at_least {
        let (m, v) = parse_pair(s)?;
        cs = cs.bound(m, Bound { lo: Some(v), hi: None });
    }
    if let Some(s) = sigma5 {
        cs = cs.with_sigma5(s);
    }
    if no_superadditivity {
        cs = cs.without_superadditivity();
    }
    let out = search(&cs)?;
    let horizon = cs.horizon;
    let rows: Vec<SurvivorRow> = out.survivors.iter().map(|wb| SurvivorRow::new("", wb, horizon)).collect();
    let elims: Vec<EliminatedRow> = out.eliminated.iter().map(|e| EliminatedRow::new("", e)).collect();
    if cli.json {
        let v = json!({
            "constraints": cs.describe(),
            "survivors": rows,
            "eliminated": elims,
            "seeds": out.seeds,
            "nodes": out.nodes,
        });
        return Ok(Outcome { text: pretty(&v), ok: true });
    }
    let mut s = String::new();
    for c in cs.describe() {
        let _ = writeln!(s, "# {c}");
    }
    let _ = writeln!(s, "# {} seeds, {} baskets visited", out.seeds, out.nodes);
    let _ = writeln!(s, "{} baskets", rows.len());
    for r in &rows {
        let _ = writeln!(
            s,
            "{{{}}}  -K^3 = {}  rX = {}  P = {}",
            r.basket,
            r.volume,
            r.r_x,
            r.p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        );
    }
    let mut kinds = std::collections::BTreeMap::<&str, usize>::new();
    for e in &out.eliminated {
        *kinds.entry(certificate_kind(&e.certificate)).or_default() += 1;
    }
    let summary: Vec<String> = kinds.iter().map(|(k, n)| format!("{k} {n}")).collect();
    let _ = writeln!(s, "{} eliminated: {}", elims.len(), summary.join(", "));
    if eliminated {
        for e in &elims {
            let _ = writeln!(s, "  {{{}}}: {}", e.basket, e.reason);
        }
    }
    Ok(Outcome { text: s, ok: true })
}

/// The `P_-1 = P_-2 = 0` table, recomputed by enumeration.
fn list_table(cli: &Cli) -> Res {
    let found = search(&ConstraintSet::qfano(0).pin(2, 0))?.survivors;
    let mut rows = Vec::new();
    let mut ok = found.len() == PROPOSITION_LIST.len();
    for row in &PROPOSITION_LIST {
        let b: Basket = row.basket.parse()?;
        match found.iter().find(|wb| wb.basket == b) {
            Some(wb) => rows.push((row.label.to_string(), wb.clone())),
            None => ok = false,
        }
    }
    for wb in &found {
        if !rows.iter().any(|(_, w)| w == wb) {
            rows.push(("new".to_string(), wb.clone()));
        }
    }
    let mut table = Vec::new();
    for (label, wb) in &rows {
        let seq = plurigenera(wb, 8)?;
        let p: Vec<i64> = (3..=8).map(|m| seq.get(m).unwrap()).collect();
        let vol = volume(wb);
        if let Some(row) = PROPOSITION_LIST.iter().find(|r| r.label == label) {
            ok &= vol == basketry::rational::rat(row.volume.0, row.volume.1) && p == row.p3_to_p8;
        }
        table.push((label.clone(), wb.basket.braced(), vol.to_string(), p));
    }
    if cli.json {
        let v: Vec<Value> =
            table.iter().map(|(l, b, v, p)| json!({"label": l, "basket": b, "volume": v, "P3_to_P8": p})).collect();
        return Ok(Outcome { text: pretty(&json!(v)), ok });
    }
    let mut s = format!("{:<6} {:<34} {:<7} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4}\n", "No.", "B", "-K^3", "P_-3", "P_-4", "P_-5", "P_-6", "P_-7", "P_-8");
    for (l, b, v, p) in &table {
        let _ = write!(s, "{:<6} {:<34} {:<7}", l.trim_start_matches("No."), b, v);
        for x in p {
            let _ = write!(s, " {x:>4}");
        }
        s.push('\n');
    }
    Ok(Outcome { text: s, ok })
}

fn render_replay(cli: &Cli, rep: &ReplayReport, full: bool) -> Outcome {
    let ok = rep.holds && rep.failed_certificates().is_empty();
    let text = if cli.json { rep.to_json() + "\n" } else { rep.render_text(full) };
    Outcome { text, ok }
}

fn cmd_replay(cli: &Cli, case: ReplayCase, full: bool) -> Res {
    let rep = match case {
        ReplayCase::List => return list_table(cli),
        ReplayCase::P3 => replay_delta1(Family::P1Ge3)?,
        ReplayCase::P2 => replay_delta1(Family::P1Eq2)?,
        ReplayCase::P1 => replay_delta1(Family::P1Eq1)?,
        ReplayCase::P0 => replay_delta1(Family::P1Eq0)?,
        ReplayCase::Birat1 => replay_birationality(Target::QFano39)?,
        ReplayCase::Birat2 => replay_birationality(Target::Weak97)?,
    };
    Ok(render_replay(cli, &rep, full))
}

fn cmd_index_bound(cli: &Cli, rmax: Option<u32>) -> Res {
    if let Some(r) = rmax {
        let v = max_index_given_rmax(r)?;
        let text = if cli.json { pretty(&json!({"rmax": r, "max_rX": v})) } else { format!("max r_X with r_max = {r}: {v}\n") };
        return Ok(Outcome { text, ok: true });
    }
    let rep = max_index_report();
    let claims = large_rmax_claims()?;
    let per: Vec<(u32, u64)> = (2..=MAX_R).map(|r| max_index_given_rmax(r).map(|v| (r, v))).collect::<Result<_, _>>()?;
    let ok = rep.max_lcm == 840 && rep.second_max <= 660 && claims.iter().all(|c| c.holds());
    if cli.json {
        let per: serde_json::Map<String, Value> = per.iter().map(|(r, v)| (r.to_string(), json!(v))).collect();
        return Ok(Outcome { text: pretty(&json!({"report": rep, "per_rmax": per, "claims": claims})), ok });
    }
    let join = |w: &[basketry::index_bound::PrimePowerMultiset]| w.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
    let mut s = format!("max r_X = {}; witnesses {}\n", rep.max_lcm, join(&rep.witnesses));
    let _ = writeln!(s, "second max r_X = {}; witnesses {}", rep.second_max, join(&rep.second_witnesses));
    let _ = writeln!(s, "max r_X by r_max: {}", per.iter().map(|(r, v)| format!("{r}:{v}")).collect::<Vec<_>>().join(" "));
    for c in &claims {
        let cond = if c.second.0 <= 1 && c.second.1 + 1 >= c.rmax {
            String::new()
        } else {
            format!(", second largest in [{}, {}]", c.second.0, c.second.1)
        };
        let _ = writeln!(
            s,
            "r_max = {}{cond}: computed {}, bound {} {}",
            c.rmax,
            c.computed.map_or("none".into(), |v| v.to_string()),
            c.claimed,
            if c.holds() { "ok" } else { "VIOLATED" }
        );
    }
    Ok(Outcome { text: s, ok })
}

fn cmd_pencil(cli: &Cli, basket: &str, p1: u32, t: Option<&str>) -> Res {
    let wb = WeightedBasket::parse(basket, p1)?;
    let horizon = cli.horizon.unwrap_or(80);
    let np = non_pencil_threshold(&wb, horizon)?;
    let tab = delta1_bound(&wb, LocalCriterion::Tabulated)?;
    let end = delta1_bound(&wb, LocalCriterion::EndPoint)?;
    let thm1 = match t {
        Some(t) => {
            let t = parse_rational(t).ok_or_else(|| usage(format!("bad rational {t:?}")))?;
            Some((t.to_string(), thm1_threshold(&wb, &t)?))
        }
        None => None,
    };
    let ok = np.verdicts.iter().all(|v| v.verify(&wb));
    if cli.json {
        let v = json!({
            "basket": wb.basket.to_string(),
            "p1": p1,
            "volume": volume(&wb).to_string(),
            "rX": wb.basket.gorenstein_index(),
            "non_pencil": np,
            "delta1_tabulated": tab,
            "delta1_endpoint": end,
            "thm1": thm1.as_ref().map(|(t, m)| json!({"t": t, "m1": m})),
        });
        return Ok(Outcome { text: pretty(&v), ok });
    }
    let mut s = format!("{} P_-1={p1}: -K^3 = {}, rX = {}\n", wb.basket.braced(), volume(&wb), wb.basket.gorenstein_index());
    let first = np.verdicts.iter().find(|v| v.verdict == Verdict::NotPencil);
    match first {
        Some(v) => {
            let w = v.witness.as_ref().expect("witness");
            let _ = writeln!(s, "least m <= {horizon} with P_-m > rX (-K^3) m + 1: {} (P_-{} = {} > {})", v.m, v.m, w.pm, w.rhs);
        }
        None => {
            let _ = writeln!(s, "no m <= {horizon} with P_-m > rX (-K^3) m + 1");
        }
    }
    let show = |b: Option<u32>| b.map_or("none".to_string(), |v| v.to_string());
    let _ = writeln!(s, "delta1 <= {} (tabulated local conditions), <= {} (end-point test)", show(tab), show(end));
    if let Some((t, m)) = thm1 {
        let _ = writeln!(s, "volume threshold at t = {t}: m1 = {m}");
    }
    Ok(Outcome { text: s, ok })
}

#[allow(clippy::too_many_arguments)]
fn cmd_thresholds(
    cli: &Cli,
    m0: u32,
    m1: u32,
    mu0: Option<&str>,
    rmax: Option<u32>,
    nu0: Option<u32>,
    variant: Option<&str>,
    genus: Option<&str>,
) -> Res {
    let mut inp = BirationalityInputs::new(m0, m1);
    if let Some(m) = mu0 {
        let q = parse_rational(m).ok_or_else(|| usage(format!("bad rational {m:?}")))?;
        inp = inp.with_mu0(q, "given");
    }
    if let Some(r) = rmax {
        inp = inp.with_rmax(r);
    }
    if let Some(n) = nu0 {
        inp = inp.with_nu0(n);
    }
    if let Some(g) = genus {
        inp = inp.with_genus(g.parse::<GenusCase>()?);
    }
    let zeta = match genus {
        Some(_) => Some(zeta_lower_bound(&inp)?.to_string()),
        None => None,
    };
    let (label, value) = match variant {
        Some(v) => {
            let v: Variant = v.parse()?;
            (v.to_string(), thm_main_threshold(&inp, v)?)
        }
        None => {
            let (v, t) = best_threshold(&inp)?;
            (format!("best {v}"), t)
        }
    };
    let text = if cli.json {
        pretty(&json!({"inputs": inp, "variant": label, "threshold": value, "zeta_lower_bound": zeta}))
    } else {
        let mut s = format!("{value}\n");
        if let Some(z) = zeta {
            let _ = writeln!(s, "zeta >= {z}");
        }
        s
    };
    Ok(Outcome { text, ok: true })
}

fn cmd_wci(cli: &Cli, weights: &[u32], degrees: &[u32], upto: u32, fit: bool, csv: bool) -> Res {
    let x = WeightedCI::new(weights, degrees)?;
    let seq = anti_plurigenera_from_hilbert(&x, upto)?;
    let fits = if fit { Some(fit_basket(&seq, FitCaps::default())?) } else { None };
    let ok = fits.as_ref().is_none_or(|f| f.iter().all(|wb| volume(wb) == x.volume()));
    if cli.json {
        let fits: Option<Vec<Value>> = fits.as_ref().map(|f| {
            f.iter().map(|wb| json!({"basket": wb.basket.to_string(), "p1": wb.p1, "volume": volume(wb).to_string()})).collect()
        });
        let v = json!({
            "weights": weights,
            "degrees": degrees,
            "fano_index": x.fano_index(),
            "volume": x.volume().to_string(),
            "P": seq.values,
            "fits": fits,
        });
        return Ok(Outcome { text: pretty(&v), ok });
    }
    let mut s = String::new();
    if csv {
        s.push_str("m,P\n");
        for (i, v) in seq.values.iter().enumerate() {
            let _ = writeln!(s, "{},{v}", i + 1);
        }
    } else {
        let _ = writeln!(s, "index {}, -K^3 = {}", x.fano_index(), x.volume());
        let cols: Vec<String> = seq.values.iter().enumerate().map(|(i, v)| format!("P_-{} = {v}", i + 1)).collect();
        let _ = writeln!(s, "{}", cols.join(", "));
    }
    if let Some(f) = &fits {
        let _ = writeln!(s, "{} fitted baskets", f.len());
        for wb in f {
            let _ = writeln!(s, "  {} P_-1={}: -K^3 = {}", wb.basket.braced(), wb.p1, volume(wb));
        }
    }
    Ok(Outcome { text: s, ok })
}

fn run(cli: &Cli) -> Res {
    match &cli.cmd {
        Cmd::Rr { basket, p1, m, random } => cmd_rr(cli, basket.as_deref(), *p1, m.as_deref(), *random),
        Cmd::Enumerate { p1, p2, p3, p4, pin, at_most, at_least, sigma5, weak, no_superadditivity, eliminated } => cmd_enumerate(
            cli,
            *p1,
            [(2, *p2), (3, *p3), (4, *p4)],
            pin,
            at_most,
            at_least,
            *sigma5,
            *weak,
            *no_superadditivity,
            *eliminated,
        ),
        Cmd::Replay { case, full } => cmd_replay(cli, *case, *full),
        Cmd::IndexBound { rmax } => cmd_index_bound(cli, *rmax),
        Cmd::Pencil { basket, p1, t } => cmd_pencil(cli, basket, *p1, t.as_deref()),
        Cmd::Thresholds { m0, m1, mu0, rmax, nu0, variant, genus } => {
            cmd_thresholds(cli, *m0, *m1, mu0.as_deref(), *rmax, *nu0, variant.as_deref(), genus.as_deref())
        }
        Cmd::Wci { weights, degrees, upto, fit, csv } => cmd_wci(cli, weights, degrees, *upto, *fit, *csv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    use std::io::Write;
                    match std::io::stdout().lock().write_all(out.text.as_bytes()) {
                        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("cannot write stdout: {e}")),
                        _ => Ok(()),
                    }
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: result differs from the expected conclusion");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

//! One function per subcommand. Each returns a table and may print notes
//! to standard error.

use std::path::Path;

use anyhow::{bail, Context};
use polywave_core::lattice::{asymptotic_sector_density, count_irreducible_in_sector};
use polywave_core::pentagon::{
    count_bound_table, enumerate_pentagon_lengths, DecomposeOutcome, Dodecahedron,
};
use polywave_core::semigroup::{landau_ramanujan_from_primes, zeta};
use polywave_core::waves::{growth_table, oracle_count};
use polywave_core::{
    norm_bound, primes::primes_up_to, Error, LatticeKind, PentagonStrip, Sector, SemigroupParams,
    SignCone, SpectrumSieve,
};
use serde_json::json;

use crate::config::RunConfig;
use crate::table::{Cell, Table};
use crate::target::Target;
use crate::UsageError;

/// Evenly spaced points `x·i/n`, `i = 1..=n`, keeping those `≥ min`.
fn grid(x: f64, n: usize, min: f64) -> Vec<f64> {
    (1..=n).map(|i| x * i as f64 / n as f64).filter(|&v| v >= min).collect()
}

fn check_sieve_limit(l: f64, cfg: &RunConfig) -> anyhow::Result<u64> {
    let needed = norm_bound(l);
    if needed > cfg.sieve_limit {
        return Err(Error::SieveLimit { l, needed, limit: cfg.sieve_limit }.into());
    }
    Ok(needed)
}

pub fn constants(cfg: &RunConfig) -> anyhow::Result<Table> {
    if cfg.prime_limit < 3 {
        bail!(UsageError("prime limit must be at least 3".into()));
    }
    let primes = primes_up_to(cfg.prime_limit);
    let mut t = Table::new("constants", &["name", "value", "lower", "upper"]);
    let mut gammas = Vec::new();
    for (kind, name) in [
        (LatticeKind::Square, "gamma_square"),
        (LatticeKind::Triangular, "gamma_triangular"),
    ] {
        let g = landau_ramanujan_from_primes(kind, &primes, cfg.prime_limit);
        t.push(
            vec![name.into(), g.value.into(), g.value.into(), g.upper().into()],
            format!("Landau-Ramanujan constant for the {kind} form"),
        );
        gammas.push(g);
    }
    let z = zeta(3.0, 1e-14)?;
    t.push(vec!["zeta_3".into(), z.value.into(), z.lower.into(), z.upper.into()], "zeta(3)");
    for (g, name, solid) in [(gammas[0], "c_g_cube", "cube"), (gammas[1], "c_g_tetrahedron", "tetrahedron")] {
        let at = |gamma: f64| SemigroupParams::for_lattice(gamma).c_g();
        t.push(
            vec![name.into(), at(g.value)?.into(), at(g.value)?.into(), at(g.upper())?.into()],
            format!("wave growth constant c_G for the {solid}"),
        );
    }
    t.attach("prime_limit", json!(cfg.prime_limit));
    Ok(t)
}

fn load_or_build(kind: LatticeKind, needed: u64, cache: Option<&Path>) -> anyhow::Result<SpectrumSieve> {
    let limit = needed.max(1);
    if let Some(path) = cache {
        if path.exists() {
            let s = SpectrumSieve::load(path)
                .with_context(|| format!("loading sieve cache {}", path.display()))?;
            if s.kind() == kind && s.limit() >= limit {
                return Ok(s);
            }
            eprintln!("sieve cache {} does not cover this run; rebuilding", path.display());
        }
        let s = SpectrumSieve::build(kind, limit)?;
        s.save(path).with_context(|| format!("writing sieve cache {}", path.display()))?;
        return Ok(s);
    }
    Ok(SpectrumSieve::build(kind, limit)?)
}

pub fn spectrum(
    target: Target,
    l: f64,
    points: usize,
    cache: Option<&Path>,
    cfg: &RunConfig,
) -> anyhow::Result<Table> {
    if !(l >= 0.0) || points == 0 {
        bail!(UsageError("need l ≥ 0 and at least one grid point".into()));
    }
    let needed = check_sieve_limit(l, cfg)?;
    let mut t = Table::new("spectrum", &["l", "a", "b", "b_over_a", "a_normalized"]);
    let ls = grid(l, points, 1.0);
    if ls.is_empty() {
        return Ok(t);
    }
    let kind = target.kind();
    let sieve = load_or_build(kind, needed, cache)?;
    for x in ls {
        let a = sieve.count_a(x)?;
        let b = sieve.count_b(x)?;
        let normalized = a as f64 * 2.0 * x.ln().sqrt() / (x * x);
        t.push(
            vec![x.into(), a.into(), b.into(), (b as f64 / a as f64).into(), normalized.into()],
            format!("distinct {} geodesic lengths up to l", target.name()),
        );
    }
    Ok(t)
}

pub fn waves(
    target: Target,
    t_min: f64,
    t_max: f64,
    step: f64,
    oracle: bool,
    cfg: &RunConfig,
) -> anyhow::Result<Table> {
    if !(step > 0.0) || !(t_min > 1.0) || !(t_max >= t_min) {
        bail!(UsageError("need 1 < t-min ≤ t-max and step > 0".into()));
    }
    check_sieve_limit(t_max, cfg)?;
    let n = ((t_max - t_min) / step + 1e-9).floor() as usize;
    let ts: Vec<f64> = (0..=n).map(|i| t_min + i as f64 * step).collect();
    let kind = target.kind();
    let rows = growth_table(kind, &ts, &cfg.wave_options())?;
    let mut t = Table::new("waves", &["t", "count", "ln_count", "exponent_ratio"]);
    let mut checked = 0;
    for r in &rows {
        if r.boundary_flag {
            eprintln!("t={}: a length sum lies within the guard band of t", r.t);
        }
        if oracle && r.t <= 15.0 {
            let expected = oracle_count(kind, r.t)?;
            if expected != r.count {
                bail!("oracle disagrees at t={}: {} vs {}", r.t, expected, r.count);
            }
            checked += 1;
        }
        t.push(
            vec![r.t.into(), r.count.into(), r.ln_count.into(), r.exponent_ratio.into()],
            format!("waves reaching the {} vertices by time t", target.name()),
        );
    }
    if oracle {
        eprintln!("oracle agrees on {checked} rows");
    }
    Ok(t)
}

pub enum PentagonMode {
    Counts,
    Lengths,
    Strip(Vec<usize>),
    RandomStrip { seed: u64, max_faces: usize },
}

pub fn pentagon(l: f64, cone: u8, mode: PentagonMode) -> anyhow::Result<Table> {
    let cone = SignCone::new(cone).ok_or_else(|| UsageError(format!("cone must be in 0..10, got {cone}")))?;
    match mode {
        PentagonMode::Counts => {
            if !(l >= 0.0) {
                bail!(UsageError("need l ≥ 0".into()));
            }
            let mut t = Table::new("pentagon", &["l", "count", "bound", "holds"]);
            let ls: Vec<u32> = (1..=l.floor() as u32).collect();
            if ls.is_empty() {
                return Ok(t);
            }
            let (gamma, rows) = count_bound_table(&ls, 4, cone)?;
            for r in rows {
                t.push(
                    vec![(r.l as u64).into(), r.count.into(), r.bound.into(), r.holds.into()],
                    "distinct pentagon lengths against gamma l^5",
                );
            }
            t.attach("gamma", json!(gamma));
            t.attach("gamma_fit_l", json!(4));
            Ok(t)
        }
        PentagonMode::Lengths => {
            let lengths = enumerate_pentagon_lengths(l, cone)?;
            let mut t = Table::new("pentagon-lengths", &["a", "b", "value"]);
            for q in &lengths {
                t.push(
                    vec![q.a.into(), q.b.into(), q.value().into()],
                    "squared pentagon length a + b*phi",
                );
            }
            Ok(t)
        }
        PentagonMode::Strip(path) => {
            let d = Dodecahedron::new();
            decompositions(&PentagonStrip::build(&d, &path)?)
        }
        PentagonMode::RandomStrip { seed, max_faces } => {
            let d = Dodecahedron::new();
            decompositions(&PentagonStrip::random(&d, seed, max_faces)?)
        }
    }
}

fn decompositions(strip: &PentagonStrip) -> anyhow::Result<Table> {
    let mut t = Table::new(
        "pentagon-strip",
        &["a0", "a1", "a2", "a3", "outcome", "cone", "n0", "n1", "n2", "n3", "n4"],
    );
    let origin = strip.faces[0].vertices[0];
    let mut results = Vec::new();
    for v in strip.vertices() {
        if v == origin {
            continue;
        }
        let out = strip.monotone_decompose(origin, v)?;
        let mut cells: Vec<Cell> = v.0.iter().map(|&a| Cell::Int(a)).collect();
        match &out {
            DecomposeOutcome::Decomposed(dec) => {
                cells.push("decomposed".into());
                cells.push((dec.cone.index() as u64).into());
                cells.extend(dec.coefficients.iter().map(|&n| Cell::Uint(n)));
            }
            DecomposeOutcome::NotCrossing => {
                cells.push("not_crossing".into());
                cells.extend((0..6).map(|_| Cell::Text(String::new())));
            }
        }
        t.push(cells, "non-negative decomposition of an unfolded segment");
        results.push(json!({ "end": v, "result": out }));
    }
    t.attach("face_path", json!(strip.face_path()));
    t.attach("strip", serde_json::to_value(strip)?);
    t.attach("decompositions", json!(results));
    Ok(t)
}

pub fn sector(
    target: Target,
    angle: Option<f64>,
    start: f64,
    l: f64,
    points: usize,
    cfg: &RunConfig,
) -> anyhow::Result<Table> {
    if !(l >= 0.0) || points == 0 {
        bail!(UsageError("need l ≥ 0 and at least one grid point".into()));
    }
    check_sieve_limit(l, cfg)?;
    let width = match (target, angle) {
        (_, Some(a)) => a,
        (Target::Solid(s), None) => s.sector_width(),
        (Target::Lattice(_), None) => bail!(UsageError("--angle is required for a bare lattice".into())),
    };
    let sector = Sector::new(start, width)?;
    let kind = target.kind();
    let mut t = Table::new("sector", &["l", "count", "density", "asymptotic_density"]);
    let asymptotic = asymptotic_sector_density(kind, width);
    for x in grid(l, points, f64::MIN_POSITIVE) {
        let count = count_irreducible_in_sector(kind, &sector, x)?;
        t.push(
            vec![x.into(), count.into(), (count as f64 / (x * x)).into(), asymptotic.into()],
            format!("irreducible {kind} lattice points in the {} sector", target.name()),
        );
    }
    t.attach("sector_start", json!(start));
    t.attach("sector_width", json!(width));
    Ok(t)
}

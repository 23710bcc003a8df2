//! Regression suite against reference numbers for this system.
//!
//! Targets and tolerances live in `validation.json`, compiled into the
//! binary. Each criterion returns a [`CriterionOutcome`]; numerical errors
//! count as failures and are reported in the details.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{
    gauss_laguerre_measures, gl_disequilibrium, gl_fisher, gl_shannon, locate_maximum, locate_sign_change,
    momentum_moments, momentum_overlap, position_moments, position_overlap, state_measures, HoKind, MeasureSet,
};
use crate::numerics::QuadratureSpec;
use crate::spectrum::{
    eigenvalue_default, energy_difference_check, find_crossing, landau_energy, perturbative_energy, BoundarySpec,
    FieldStrength, LevelId,
};
use crate::wavefn::{build_state, GaussLaguerre, HOParams};

const MANIFEST: &str = include_str!("../validation.json");

/// Number of criteria in the suite.
pub const CRITERION_COUNT: u32 = 13;

/// One acceptance target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub value: f64,
    pub tol: f64,
    #[serde(default)]
    pub relative: bool,
}

impl Target {
    pub fn accepts(&self, x: f64) -> bool {
        let allowed = if self.relative {
            self.tol * self.value.abs()
        } else {
            self.tol
        };
        (x - self.value).abs() <= allowed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub title: String,
    pub targets: BTreeMap<String, Target>,
}

/// The embedded manifest, keyed by criterion number.
pub fn manifest() -> &'static BTreeMap<u32, CriterionSpec> {
    static M: OnceLock<BTreeMap<u32, CriterionSpec>> = OnceLock::new();
    M.get_or_init(|| serde_json::from_str(MANIFEST).expect("embedded validation manifest is valid"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub details: String,
}

/// Collects individual comparisons of one criterion.
struct Report<'a> {
    spec: &'a CriterionSpec,
    passed: bool,
    details: Vec<String>,
}

impl<'a> Report<'a> {
    fn new(spec: &'a CriterionSpec) -> Self {
        Self {
            spec,
            passed: true,
            details: Vec::new(),
        }
    }

    fn target(&self, name: &str) -> Target {
        self.spec.targets[name]
    }

    /// Compare `x` with the named target.
    fn compare(&mut self, name: &str, x: f64) {
        let t = self.target(name);
        let ok = t.accepts(x);
        let tol = if t.relative {
            format!("{}%", t.tol * 100.0)
        } else {
            format!("{:e}", t.tol)
        };
        self.details.push(format!(
            "{name}={x:.6} (target {} +- {tol}){}",
            t.value,
            if ok { "" } else { " !" }
        ));
        self.passed &= ok;
    }

    /// Record a condition that is not a plain target comparison.
    fn require(&mut self, ok: bool, what: String) {
        if !ok {
            self.details.push(format!("{what} !"));
        } else {
            self.details.push(what);
        }
        self.passed &= ok;
    }

    fn finish(self) -> (bool, String) {
        (self.passed, self.details.join("; "))
    }
}

/// Run one criterion.
pub fn run_criterion(id: u32) -> CriterionOutcome {
    let Some(spec) = manifest().get(&id) else {
        return CriterionOutcome {
            id,
            title: "unknown".into(),
            passed: false,
            details: "not in manifest".into(),
        };
    };
    let mut report = Report::new(spec);
    let result = match id {
        1 => crossing(&mut report, 0),
        2 => crossing(&mut report, -1),
        3 => zero_field_entropy(&mut report),
        4 => uncertainty(&mut report),
        5 => entropy_crossover(&mut report),
        6 => disequilibrium_product(&mut report),
        7 => asymptotes(&mut report),
        8 => splitting(&mut report),
        9 => perturbation(&mut report),
        10 => landau_gaps(&mut report),
        11 => analytic_oracles(&mut report),
        12 => unitarity(&mut report),
        13 => condensation(&mut report),
        _ => Err(Error::Config(format!("no check for criterion {id}"))),
    };
    if let Err(e) = result {
        report.require(false, format!("error: {e}"));
    }
    let (passed, details) = report.finish();
    CriterionOutcome {
        id,
        title: spec.title.clone(),
        passed,
        details,
    }
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERION_COUNT).map(run_criterion).collect()
}

fn field(b: f64) -> Result<FieldStrength> {
    FieldStrength::new(b)
}

fn crossing(r: &mut Report, m: i32) -> Result<()> {
    let c = find_crossing(0, m, 1e-10)?;
    r.compare("b_star", c.b_star);
    r.compare("e_bar", c.e_bar);
    r.compare("e_bbar", c.e_bbar);
    Ok(())
}

/// Measures of the ground state `(0,0)`, memoized by field.
fn ground(bc: BoundarySpec, b: f64) -> Result<MeasureSet> {
    static CACHE: OnceLock<Mutex<HashMap<(BoundarySpec, u64), MeasureSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (bc, b.to_bits());
    if let Some(m) = cache.lock().expect("cache lock").get(&key) {
        return Ok(*m);
    }
    let m = state_measures(bc, LevelId::new(0, 0), b, &QuadratureSpec::measures())?.measures;
    cache.lock().expect("cache lock").insert(key, m);
    Ok(m)
}

/// Fill the ground-state cache on a grid in parallel.
fn prefetch(fields: &[f64]) -> Result<()> {
    let jobs: Vec<(BoundarySpec, f64)> = fields
        .iter()
        .flat_map(|&b| BoundarySpec::ALL.map(|bc| (bc, b)))
        .collect();
    jobs.par_iter().try_for_each(|&(bc, b)| ground(bc, b).map(|_| ()))
}

fn zero_field_entropy(r: &mut Report) -> Result<()> {
    r.compare("dirichlet", ground(BoundarySpec::Dirichlet, 0.0)?.s_total);
    r.compare("neumann", ground(BoundarySpec::Neumann, 0.0)?.s_total);
    Ok(())
}

/// Per-point data of the level grid shared by the uncertainty and
/// unitarity criteria.
#[derive(Debug, Clone)]
struct GridPoint {
    bc: BoundarySpec,
    level: LevelId,
    b: f64,
    s_total: f64,
    momentum_norm: f64,
}

#[derive(Debug, Clone)]
struct GridOverlap {
    bc: BoundarySpec,
    m: i32,
    b: f64,
    position: f64,
    momentum: f64,
}

struct LevelGrid {
    points: Vec<GridPoint>,
    overlaps: Vec<GridOverlap>,
}

/// Log-spaced fields over `[0.01, 100]`, two per decade.
fn grid_fields() -> Vec<f64> {
    (0..=8).map(|i| 10f64.powf(-2.0 + 0.5 * i as f64)).collect()
}

fn level_grid() -> Result<&'static LevelGrid> {
    static GRID: OnceLock<std::result::Result<LevelGrid, Error>> = OnceLock::new();
    GRID.get_or_init(|| {
        let quad = QuadratureSpec::measures();
        let jobs: Vec<(BoundarySpec, i32, f64)> = BoundarySpec::ALL
            .iter()
            .flat_map(|&bc| (-2..=2).flat_map(move |m| grid_fields().into_iter().map(move |b| (bc, m, b))))
            .collect();
        let per_job: Vec<(Vec<GridPoint>, GridOverlap)> = jobs
            .par_iter()
            .map(|&(bc, m, b)| {
                let mut states = Vec::new();
                let mut points = Vec::new();
                for n in 0..=1 {
                    let level = LevelId::new(n, m);
                    let run = || -> Result<_> {
                        let state = build_state(&eigenvalue_default(bc, level, field(b)?)?, &quad)?;
                        let pos = position_moments(&state, &quad)?;
                        let mom = momentum_moments(&state, &quad)?;
                        Ok((state, pos, mom))
                    };
                    let (state, pos, mom) = run().map_err(|e| e.at(n, m, b))?;
                    points.push(GridPoint {
                        bc,
                        level,
                        b,
                        s_total: pos.shannon + mom.shannon,
                        momentum_norm: mom.norm,
                    });
                    states.push(state);
                }
                let overlap = GridOverlap {
                    bc,
                    m,
                    b,
                    position: position_overlap(&states[0], &states[1], &quad).map_err(|e| e.at(0, m, b))?,
                    momentum: momentum_overlap(&states[0], &states[1], &quad).map_err(|e| e.at(0, m, b))?,
                };
                Ok((points, overlap))
            })
            .collect::<Result<_>>()?;
        let mut grid = LevelGrid {
            points: Vec::new(),
            overlaps: Vec::new(),
        };
        for (p, o) in per_job {
            grid.points.extend(p);
            grid.overlaps.push(o);
        }
        Ok(grid)
    })
    .as_ref()
    .map_err(Clone::clone)
}

fn uncertainty(r: &mut Report) -> Result<()> {
    let grid = level_grid()?;
    let bound = r.target("bound");
    let worst = grid
        .points
        .iter()
        .min_by(|a, b| a.s_total.total_cmp(&b.s_total))
        .ok_or_else(|| Error::Config("empty grid".into()))?;
    r.require(
        worst.s_total >= bound.value - bound.tol,
        format!(
            "min S_t={:.6} at {} {} B={:.4} over {} states",
            worst.s_total,
            worst.bc,
            worst.level,
            worst.b,
            grid.points.len()
        ),
    );
    let ground_at = |bc: BoundarySpec, b: f64| {
        grid.points
            .iter()
            .find(|p| p.bc == bc && p.level == LevelId::new(0, 0) && p.b == b)
            .map(|p| p.s_total)
    };
    // deep in the Landau regime both walls give the same state to machine
    // precision, so only differences above the resolution count
    let resolution = r.target("ordering_resolution").tol;
    let mut ties = Vec::new();
    let mut misordered = Vec::new();
    for b in grid_fields() {
        match (
            ground_at(BoundarySpec::Dirichlet, b),
            ground_at(BoundarySpec::Neumann, b),
        ) {
            (Some(d), Some(n)) if d < n - resolution => {}
            (Some(d), Some(n)) if (d - n).abs() <= resolution => ties.push(b),
            _ => misordered.push(b),
        }
    }
    if !ties.is_empty() {
        r.details.push(format!("walls indistinguishable at B={ties:?}"));
    }
    if misordered.is_empty() {
        r.require(true, "Dirichlet S_t(0,0) below Neumann at every resolved point".into());
    } else {
        r.require(
            false,
            format!("Dirichlet S_t(0,0) not below Neumann at B={misordered:?}"),
        );
    }
    Ok(())
}

fn entropy_crossover(r: &mut Report) -> Result<()> {
    let (lo, hi) = (1.0, 20.0);
    prefetch(&(1..=20).map(f64::from).collect::<Vec<_>>())?;
    let diff = |b: f64| -> Result<f64> {
        Ok(ground(BoundarySpec::Neumann, b)?.s_gamma_bar - ground(BoundarySpec::Dirichlet, b)?.s_gamma_bar)
    };
    match locate_sign_change(diff, lo, hi, 1.0, 1e-4)? {
        Some(b) => r.compare("b_cross", b),
        None => r.require(false, format!("no crossover in [{lo}, {hi}]")),
    }
    Ok(())
}

fn disequilibrium_product(r: &mut Report) -> Result<()> {
    let bound = 0.25 / (PI * PI);
    let (lo, hi) = (5.0, 20.0);
    prefetch(&(5..=20).map(f64::from).collect::<Vec<_>>())?;
    let neumann = |b: f64| Ok(ground(BoundarySpec::Neumann, b)?.o_product);
    let overtake = locate_sign_change(
        |b| Ok(neumann(b)? - ground(BoundarySpec::Dirichlet, b)?.o_product),
        lo,
        hi,
        1.0,
        1e-4,
    )?;
    let over_bound = locate_sign_change(|b| Ok(neumann(b)? - bound), lo, hi, 1.0, 1e-4)?;
    match overtake {
        Some(b) => r.compare("b_overtake", b),
        None => r.require(false, format!("Neumann never overtakes Dirichlet in [{lo}, {hi}]")),
    }
    match over_bound {
        Some(b) => {
            r.compare("b_bound", b);
            // the product rises through the bound and comes back down; the
            // maximum lies between the threshold and the end of the window
            let (b_max, max) = locate_maximum(neumann, b, 25.0, 1e-3)?;
            r.compare("max_value", max);
            r.compare("b_max", b_max);
        }
        None => r.require(false, format!("product never exceeds (2 pi)^-2 in [{lo}, {hi}]")),
    }
    Ok(())
}

fn asymptotes(r: &mut Report) -> Result<()> {
    for bc in BoundarySpec::ALL {
        let m = ground(bc, 100.0)?;
        let unwrap = |x: Option<f64>| x.ok_or_else(|| Error::Config("magnetic units undefined".into()));
        r.details.push(format!("[{bc}]"));
        r.compare("s_rho_bbar", unwrap(m.s_rho_bbar)?);
        r.compare("s_gamma_bbar", unwrap(m.s_gamma_bbar)?);
        r.compare("i_rho_bbar", unwrap(m.i_rho_bbar)?);
        r.compare("i_gamma_bbar", unwrap(m.i_gamma_bbar)?);
        r.compare("o_rho_bbar", unwrap(m.o_rho_bbar)?);
        r.compare("o_gamma_bbar", unwrap(m.o_gamma_bbar)?);
    }
    Ok(())
}

fn splitting(r: &mut Report) -> Result<()> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for bc in BoundarySpec::ALL {
        for n in 0..=2 {
            for m in 1..=2 {
                for b in [0.5, 5.0, 30.0] {
                    let d = energy_difference_check(LevelId::new(n, m), field(b)?, bc)?;
                    worst = worst.max((d - 2.0 * m as f64 * b / (PI * PI)).abs());
                    count += 1;
                }
            }
        }
    }
    r.details.push(format!("{count} pairs"));
    r.compare("residual", worst);
    Ok(())
}

fn perturbation(r: &mut Report) -> Result<()> {
    let f = field(1e-2)?;
    let mut worst = (0.0, String::new());
    for bc in BoundarySpec::ALL {
        for n in 0..=2 {
            for m in -2..=2 {
                let level = LevelId::new(n, m);
                let e = eigenvalue_default(bc, level, f)?.e_bar;
                let rel = ((e - perturbative_energy(bc, level, f)) / e).abs();
                if rel >= worst.0 {
                    worst = (rel, format!("{bc} {level}"));
                }
            }
        }
    }
    r.details.push(format!("worst at {}", worst.1));
    r.compare("residual", worst.0);
    Ok(())
}

fn landau_gaps(r: &mut Report) -> Result<()> {
    let f = field(50.0)?;
    for level in [LevelId::new(0, 0), LevelId::new(0, -1)] {
        let gap = |bc| -> Result<f64> {
            let e = eigenvalue_default(bc, level, f)?.e_bbar.expect("nonzero field");
            Ok(e - landau_energy(level))
        };
        let (d, n) = (gap(BoundarySpec::Dirichlet)?, gap(BoundarySpec::Neumann)?);
        r.details.push(format!("{level}: gaps {d:.4e} / {n:.4e}"));
        r.require(d > 0.0 && n < 0.0, format!("{level}: Dirichlet above, Neumann below"));
        r.require(d < -n, format!("{level}: Dirichlet gap smaller"));
        r.compare("mismatch", (d + n).abs() / d.abs().max(n.abs()));
    }
    Ok(())
}

/// Relative error with an absolute floor of one, for values that may pass
/// through zero (entropies).
fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn analytic_oracles(r: &mut Report) -> Result<()> {
    let quad = QuadratureSpec::new(1e-12, 1e-16, 4000, 15)?;
    let configs: Vec<(HoKind, f64)> = vec![
        (HoKind::HO, 0.0),
        (HoKind::HOB, 0.0),
        (HoKind::HOB, 1.0),
        (HoKind::HOB, 10.0),
        (HoKind::PureB, 1.0),
        (HoKind::PureB, 10.0),
    ];
    let mut jobs = Vec::new();
    for &(kind, w) in &configs {
        for n in 0..=1 {
            for m in 0..=3 {
                jobs.push((kind, w, LevelId::new(n, m)));
            }
        }
    }
    let results: Vec<(HoKind, f64, LevelId, MeasureSet)> = jobs
        .par_iter()
        .map(|&(kind, w, level)| {
            let p = HOParams::new(w)?;
            let pos = GaussLaguerre::new(kind.length(p)?, level.n, level.abs_m(), 1.0);
            Ok((
                kind,
                w,
                level,
                gauss_laguerre_measures(&pos, &pos.transform(), 0.0, &quad)?,
            ))
        })
        .collect::<Result<_>>()?;

    let mut worst = (0.0, String::new());
    let mut note = |e: f64, what: String| {
        if e >= worst.0 {
            worst = (e, what);
        }
    };
    for (kind, w, level, num) in &results {
        let p = HOParams::new(*w)?;
        let l = kind.length(p)?;
        let tag = |q: &str| format!("{q} {kind:?} w={w} {level}");
        let (fr, fg) = gl_fisher(*level, l);
        note(rel_err(num.i_rho_bar, fr), tag("I_rho"));
        note(rel_err(num.i_gamma_bar, fg), tag("I_gamma"));
        let (or, og) = gl_disequilibrium(*level, l)?;
        note(rel_err(num.o_rho_bar, or), tag("O_rho"));
        note(rel_err(num.o_gamma_bar, og), tag("O_gamma"));
        if level.n == 0 {
            let (sr, sg) = gl_shannon(*level, l)?;
            note(rel_err(num.s_rho_bar, sr), tag("S_rho"));
            note(rel_err(num.s_gamma_bar, sg), tag("S_gamma"));
        }
    }
    r.details.push(format!("{} states, worst {}", results.len(), worst.1));
    r.compare("analytic", worst.0);

    // products of the oscillator do not depend on the field
    let mut spread: f64 = 0.0;
    for n in 0..=1 {
        for m in 0..=3 {
            let products: Vec<[f64; 3]> = results
                .iter()
                .filter(|(k, _, l, _)| *k == HoKind::HOB && *l == LevelId::new(n, m))
                .map(|(_, _, _, s)| [s.s_total, s.i_product, s.o_product])
                .collect();
            for q in 0..3 {
                let x0 = products[0][q];
                for p in &products[1..] {
                    spread = spread.max(rel_err(p[q], x0));
                }
            }
        }
    }
    r.compare("field_independence", spread);
    Ok(())
}

fn unitarity(r: &mut Report) -> Result<()> {
    let grid = level_grid()?;
    let worst_norm = grid
        .points
        .iter()
        .max_by(|a, b| (a.momentum_norm - 1.0).abs().total_cmp(&(b.momentum_norm - 1.0).abs()))
        .ok_or_else(|| Error::Config("empty grid".into()))?;
    r.details.push(format!(
        "worst norm at {} {} B={:.4}",
        worst_norm.bc, worst_norm.level, worst_norm.b
    ));
    r.compare("norm", worst_norm.momentum_norm);
    let worst = grid
        .overlaps
        .iter()
        .max_by(|a, b| a.momentum.abs().total_cmp(&b.momentum.abs()))
        .ok_or_else(|| Error::Config("empty grid".into()))?;
    let pos = grid.overlaps.iter().map(|o| o.position.abs()).fold(0.0, f64::max);
    r.details.push(format!(
        "worst momentum overlap at {} m={} B={:.4}; position overlaps <= {pos:.1e}",
        worst.bc, worst.m, worst.b
    ));
    r.compare("overlap", worst.momentum.abs());
    Ok(())
}

/// A level whose gap to its Landau level does not shrink monotonically, or
/// sits on the wrong side of it, somewhere on the sampled window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CondensationViolation {
    pub bc: BoundarySpec,
    pub level: LevelId,
    /// `(b_bar, e_bbar - landau)` over the window.
    pub gaps: Vec<(f64, f64)>,
}

/// Spectrum sweep for `n <= 3`, `|m| <= 2` over `[0, b_to]` in steps of
/// 0.5, checking the Landau gaps on `[b_from, b_to]`.
pub fn landau_condensation_violations(b_from: f64, b_to: f64) -> Result<Vec<CondensationViolation>> {
    let fields: Vec<f64> = (0..=((b_to / 0.5).round() as usize)).map(|i| 0.5 * i as f64).collect();
    let jobs: Vec<(BoundarySpec, LevelId)> = BoundarySpec::ALL
        .iter()
        .flat_map(|&bc| (0..=3).flat_map(move |n| (-2..=2).map(move |m| (bc, LevelId::new(n, m)))))
        .collect();
    let found: Vec<Option<CondensationViolation>> = jobs
        .par_iter()
        .map(|&(bc, level)| {
            let mut gaps = Vec::new();
            for &b in &fields {
                let e = eigenvalue_default(bc, level, field(b)?)?;
                if b >= b_from {
                    gaps.push((b, e.e_bbar.expect("nonzero field") - landau_energy(level)));
                }
            }
            let shrinking = gaps.windows(2).all(|w| w[1].1.abs() < w[0].1.abs());
            let side = gaps.iter().all(|&(_, g)| match bc {
                BoundarySpec::Dirichlet => g > 0.0,
                BoundarySpec::Neumann => g < 0.0,
            });
            Ok((!(shrinking && side)).then_some(CondensationViolation { bc, level, gaps }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn condensation(r: &mut Report) -> Result<()> {
    let (from, to) = (r.target("b_from").value, r.target("b_to").value);
    let bad = landau_condensation_violations(from, to)?;
    r.details
        .push(format!("40 levels per wall, gaps checked on [{from}, {to}]"));
    for v in &bad {
        let widest = v
            .gaps
            .iter()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .copied()
            .unwrap_or_default();
        let mut s = format!(
            "{} {} widest gap {:.5} at B={}; gaps:",
            v.bc, v.level, widest.1, widest.0
        );
        for (b, g) in v.gaps.iter().step_by(4) {
            let _ = write!(s, " B={b}:{g:.4}");
        }
        r.require(false, s);
    }
    if bad.is_empty() {
        r.require(true, "all gaps shrink on the expected side".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_covers_every_criterion() {
        let m = manifest();
        assert_eq!(m.len(), CRITERION_COUNT as usize);
        for id in 1..=CRITERION_COUNT {
            assert!(!m[&id].targets.is_empty());
        }
    }

    #[test]
    fn target_tolerances() {
        let abs = Target {
            value: 1.0,
            tol: 0.1,
            relative: false,
        };
        assert!(abs.accepts(1.09) && !abs.accepts(1.11));
        let rel = Target {
            value: 10.0,
            tol: 0.01,
            relative: true,
        };
        assert!(rel.accepts(10.09) && !rel.accepts(10.11));
    }
}

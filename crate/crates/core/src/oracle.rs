//! Brute-force ground truth and exhaustive sweeps.
//!
//! Every sweep is split by the canonical index of the source topology; the
//! per-index pieces are computed on a bounded worker pool and merged in index
//! order, so a report does not depend on the number of workers.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::continuity::{
    closure_criterion, is_classical_weakly_continuous, is_continuous, is_theta_continuous,
};
use crate::enumerate::{check_size_guard, enumerate_topologies};
use crate::error::{Error, Result};
use crate::extension::{
    check_conditions, condition_set_of, construct_extension, corollary_continuous_extension,
    k_family, witness_neighbourhood, ConditionMode, ExtensionInstance, TieBreak,
};
use crate::maps::{PartialMap, TotalMap};
use crate::pointset::PointSet;
use crate::space::FinSpace;
use crate::theta::{classical_theta_closure, theta_closure_of};

/// Limit on the number of candidate extensions of one instance.
pub const MAX_CANDIDATES: u64 = 1_000_000;
/// Default limit on `nx`, `ny` for the extension sweeps.
pub const SWEEP_MAX_POINTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Worker count; 0 is treated as 1.
    pub jobs: usize,
    /// Lifts the size guards by one point.
    pub allow_override: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            jobs: 1,
            allow_override: false,
        }
    }
}

impl SweepConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        SweepConfig {
            jobs,
            ..Default::default()
        }
    }

    fn run<T: Send>(&self, count: usize, work: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
        let jobs = self.jobs.max(1);
        if jobs == 1 {
            return (0..count).map(work).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| (0..count).into_par_iter().map(work).collect())
    }
}

/// Canonical encoding of an instance: topology indices into the catalogues
/// of the right sizes, the dense subset, and the values of `f` on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InstanceKey {
    pub x_index: usize,
    pub s: Vec<usize>,
    pub y_index: usize,
    pub f: Vec<usize>,
}

/// One place where a checked claim failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub instance: InstanceKey,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub parameters: BTreeMap<String, usize>,
    pub counts: BTreeMap<String, u64>,
    pub discrepancies: Vec<Discrepancy>,
    pub pass: bool,
    /// Wall time; not serialized so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.claim == other.claim
            && self.parameters == other.parameters
            && self.counts == other.counts
            && self.discrepancies == other.discrepancies
            && self.pass == other.pass
    }
}

impl Eq for VerificationReport {}

impl VerificationReport {
    fn new(claim: &str, parameters: &[(&str, usize)]) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            counts: BTreeMap::new(),
            discrepancies: Vec::new(),
            pass: true,
            elapsed: Duration::ZERO,
        }
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    fn absorb(&mut self, part: Partial) {
        for (k, v) in part.counts {
            *self.counts.entry(k.to_string()).or_default() += v;
        }
        self.discrepancies.extend(part.discrepancies);
    }

    fn finish(mut self, started: Instant) -> Self {
        self.pass = self.discrepancies.is_empty();
        self.elapsed = started.elapsed();
        self
    }
}

/// Per-worker tallies.
#[derive(Default)]
struct Partial {
    counts: BTreeMap<&'static str, u64>,
    discrepancies: Vec<Discrepancy>,
}

impl Partial {
    fn bump(&mut self, key: &'static str) {
        self.add(key, 1);
    }

    fn add(&mut self, key: &'static str, n: u64) {
        *self.counts.entry(key).or_default() += n;
    }

    fn flag(&mut self, instance: &InstanceKey, detail: String) -> &mut Discrepancy {
        self.discrepancies.push(Discrepancy {
            instance: instance.clone(),
            alpha: None,
            point: None,
            map: None,
            detail,
        });
        self.discrepancies.last_mut().unwrap()
    }
}

/// Every vector of length `len` over `0..base`, lexicographic (last
/// coordinate fastest).
pub fn odometer(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = if base == 0 && len > 0 {
        None
    } else {
        Some(vec![0; len])
    };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = cur.as_mut().unwrap();
        let mut i = len;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < base {
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// Every `F: X → Y` with `F|_S = f`, odometer order over the free points.
pub fn enumerate_extensions(inst: &ExtensionInstance) -> Result<impl Iterator<Item = TotalMap> + '_> {
    let free = inst.free_points();
    let ny = inst.y().n();
    let count = (ny as u64).checked_pow(free.len() as u32);
    if count.is_none_or(|c| c > MAX_CANDIDATES) {
        return Err(Error::SizeGuardExceeded {
            what: "candidate extension count",
            value: count.map_or(usize::MAX, |c| c as usize),
            limit: MAX_CANDIDATES as usize,
        });
    }
    let base: Vec<usize> = (0..inst.x().n())
        .map(|x| inst.f().get(x).unwrap_or(0))
        .collect();
    Ok(odometer(free.len(), ny).map(move |values| {
        let mut assignment = base.clone();
        for (&p, v) in free.iter().zip(values) {
            assignment[p] = v;
        }
        TotalMap::new(inst.x().clone(), inst.y().clone(), assignment).expect("ids in range")
    }))
}

/// The canonical-first extension that is θ_α-continuous, if any.
pub fn brute_force_existence(inst: &ExtensionInstance, alpha: usize) -> Result<Option<TotalMap>> {
    Ok(enumerate_extensions(inst)?.find(|f| is_theta_continuous(f, alpha).holds()))
}

/// `⋂_{M ∈ K(x)}` of `[f(M)]` or `[f(M)]_θ`, taken literally over `K(x)`.
pub fn condition_set_literal(inst: &ExtensionInstance, x: usize, mode: ConditionMode) -> Result<PointSet> {
    let y = inst.y();
    Ok(k_family(inst, x)?.iter().fold(y.full(), |acc, m| {
        let image = inst.f().image(m);
        let closed = match mode {
            ConditionMode::Closure => y.closure_of(&image),
            ConditionMode::Theta => theta_closure_of(y, &image, 1),
        };
        acc.intersection(&closed)
    }))
}

fn catalogue(n: usize, allow_override: bool) -> Result<Vec<Arc<FinSpace>>> {
    Ok(enumerate_topologies(n, false, allow_override)?
        .into_iter()
        .map(Arc::new)
        .collect())
}

fn check_sweep_guard(nx: usize, ny: usize, cfg: &SweepConfig) -> Result<()> {
    let limit = SWEEP_MAX_POINTS + usize::from(cfg.allow_override);
    for (what, v) in [("nx", nx), ("ny", ny)] {
        if v > limit {
            return Err(Error::SizeGuardExceeded { what, value: v, limit });
        }
    }
    Ok(())
}

/// Calls `visit` on every instance with source `xs`: every nonempty dense
/// `S` in canonical order, every target, every `f: S → Y` continuous on the
/// subspace, in odometer order.
fn for_each_instance(
    x_index: usize,
    xs: &Arc<FinSpace>,
    ys: &[Arc<FinSpace>],
    mut visit: impl FnMut(InstanceKey, ExtensionInstance),
) {
    let mut dense: Vec<PointSet> = PointSet::all_subsets(xs.n())
        .filter(|s| !s.is_empty() && xs.closure_of(s).is_full())
        .collect();
    dense.sort();
    for s in dense {
        let sub = Arc::new(xs.subspace(&s).expect("nonempty").0);
        for (y_index, y) in ys.iter().enumerate() {
            for values in odometer(s.len(), y.n()) {
                let on_sub = TotalMap::new(sub.clone(), y.clone(), values.clone()).expect("ids in range");
                if !is_continuous(&on_sub).holds() {
                    continue;
                }
                let f = PartialMap::from_values(xs.clone(), y.clone(), s, &values).expect("ids in range");
                let key = InstanceKey {
                    x_index,
                    s: s.to_vec(),
                    y_index,
                    f: values,
                };
                visit(key, ExtensionInstance::new_unchecked(f));
            }
        }
    }
}

/// Checks that θ_α-continuity agrees with `F([A]) ⊆ [F(A)]_{θ_α}` for every map
/// between every pair of topologies of sizes `nx`, `ny`, for α ≤ `alpha_max`.
pub fn verify_lemma1(nx: usize, ny: usize, alpha_max: usize, cfg: &SweepConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    check_size_guard("nx", nx, cfg.allow_override)?;
    check_size_guard("ny", ny, cfg.allow_override)?;
    let xcat = catalogue(nx, cfg.allow_override)?;
    let ycat = catalogue(ny, cfg.allow_override)?;
    let mut report = VerificationReport::new("lemma1", &[("nx", nx), ("ny", ny), ("alpha_max", alpha_max)]);
    report.counts.insert("spaces_x".into(), xcat.len() as u64);
    report.counts.insert("spaces_y".into(), ycat.len() as u64);
    let parts = cfg.run(xcat.len(), |xi| {
        let mut part = Partial::default();
        let xs = &xcat[xi];
        for (yi, ys) in ycat.iter().enumerate() {
            part.bump("pairs");
            for assignment in odometer(nx, ny) {
                part.bump("maps");
                let f = TotalMap::new(xs.clone(), ys.clone(), assignment).expect("ids in range");
                let key = InstanceKey {
                    x_index: xi,
                    s: (0..nx).collect(),
                    y_index: yi,
                    f: f.assignment().to_vec(),
                };
                for alpha in 0..=alpha_max {
                    part.bump("checks");
                    let by_definition = is_theta_continuous(&f, alpha).holds();
                    let by_closure = closure_criterion(&f, alpha).expect("small source").holds();
                    if by_definition {
                        part.bump("theta_continuous");
                    }
                    if by_definition != by_closure {
                        let d = part.flag(
                            &key,
                            format!("definition says {by_definition}, closure criterion says {by_closure}"),
                        );
                        d.alpha = Some(alpha);
                    }
                    if alpha == 1 && by_definition != is_classical_weakly_continuous(&f).holds() {
                        part.bump("classical_vs_theta1_disagreements");
                    }
                }
            }
        }
        part
    });
    for p in parts {
        report.absorb(p);
    }
    Ok(report.finish(started))
}

/// Checks sufficiency (the constructed map is a θ-continuous extension
/// whenever the closure condition holds) and necessity (a θ-continuous
/// extension found by exhaustion forces the θ-closure condition).
pub fn verify_theorem1(nx: usize, ny: usize, cfg: &SweepConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    check_sweep_guard(nx, ny, cfg)?;
    let xcat = catalogue(nx, cfg.allow_override)?;
    let ycat = catalogue(ny, cfg.allow_override)?;
    let mut report = VerificationReport::new("theorem1", &[("nx", nx), ("ny", ny)]);
    let parts = cfg.run(xcat.len(), |xi| {
        let mut part = Partial::default();
        for_each_instance(xi, &xcat[xi], &ycat, |key, inst| {
            theorem1_instance(&mut part, &key, &inst);
        });
        part
    });
    for p in parts {
        report.absorb(p);
    }
    Ok(report.finish(started))
}

fn theorem1_instance(part: &mut Partial, key: &InstanceKey, inst: &ExtensionInstance) {
    part.bump("instances");
    let conditions = check_conditions(inst);
    if conditions.sufficient_holds {
        part.bump("sufficient");
    }
    if conditions.necessary_holds {
        part.bump("necessary");
    }
    let candidates: Vec<TotalMap> = enumerate_extensions(inst).expect("small instance").collect();
    part.add("maps_checked", candidates.len() as u64);
    let theta_witness = candidates.iter().find(|f| is_theta_continuous(f, 1).holds());
    let continuous_witness = candidates.iter().find(|f| is_continuous(f).holds());
    if theta_witness.is_some() {
        part.bump("existing");
        if !conditions.sufficient_holds {
            part.bump("gap");
        }
    }
    if continuous_witness.is_some() {
        part.bump("continuous_existing");
        if theta_witness.is_none() {
            part.flag(key, "a continuous extension exists but no θ-continuous one".into());
        }
    }
    for (x, (ec, et)) in conditions.e_closure.iter().zip(&conditions.e_theta).enumerate() {
        if !ec.is_subset(et) {
            part.flag(key, format!("closure intersection {ec} not inside θ intersection {et}"))
                .point = Some(x);
        }
    }

    if conditions.sufficient_holds {
        if theta_witness.is_none() {
            part.flag(key, "sufficient condition holds but no θ-continuous extension exists".into());
        }
        for tie in [TieBreak::Min, TieBreak::Max] {
            match construct_extension(inst, tie) {
                Ok(big_f) => {
                    if let Some(x) = inst.s().iter().find(|&x| Some(big_f.apply(x)) != inst.f().get(x)) {
                        part.flag(key, "constructed map differs from f on S".into()).point = Some(x);
                    }
                    if !is_theta_continuous(&big_f, 1).holds() {
                        part.flag(key, "constructed map is not θ-continuous".into()).map =
                            Some(big_f.assignment().to_vec());
                    }
                    for x in 0..inst.x().n() {
                        for v in inst.y().opens_containing(big_f.apply(x)) {
                            part.bump("witness_neighbourhoods");
                            if let Err(e) = witness_neighbourhood(inst, &big_f, x, v) {
                                let d = part.flag(key, format!("witness neighbourhood: {e}"));
                                d.point = Some(x);
                                d.map = Some(big_f.assignment().to_vec());
                            }
                        }
                    }
                }
                Err(e) => {
                    part.flag(key, format!("construction failed ({tie:?}): {e}"));
                }
            }
        }
    }
    if let Some(w) = theta_witness {
        if !conditions.necessary_holds {
            let d = part.flag(key, "θ-continuous extension exists but necessary condition fails".into());
            d.map = Some(w.assignment().to_vec());
            d.point = conditions.necessary_failure();
        }
    }
}

/// An instance where the closure condition fails yet a θ-continuous
/// extension exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub key: InstanceKey,
    pub instance: ExtensionInstance,
    pub witness: TotalMap,
    pub necessary_holds: bool,
}

/// All gap instances for sizes `nx`, `ny`, in canonical instance order.
pub fn mine_gaps(nx: usize, ny: usize, cfg: &SweepConfig) -> Result<Vec<Gap>> {
    check_sweep_guard(nx, ny, cfg)?;
    let xcat = catalogue(nx, cfg.allow_override)?;
    let ycat = catalogue(ny, cfg.allow_override)?;
    let parts = cfg.run(xcat.len(), |xi| {
        let mut gaps = Vec::new();
        for_each_instance(xi, &xcat[xi], &ycat, |key, inst| {
            let conditions = check_conditions(&inst);
            if conditions.sufficient_holds {
                return;
            }
            if let Some(witness) = brute_force_existence(&inst, 1).expect("small instance") {
                gaps.push(Gap {
                    key,
                    instance: inst,
                    witness,
                    necessary_holds: conditions.necessary_holds,
                });
            }
        });
        gaps
    });
    Ok(parts.into_iter().flatten().collect())
}

/// For regular targets, the closure condition holds exactly when
/// a continuous extension exists.
pub fn verify_corollary(nx: usize, ny: usize, cfg: &SweepConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    check_sweep_guard(nx, ny, cfg)?;
    let xcat = catalogue(nx, cfg.allow_override)?;
    let ycat: Vec<Arc<FinSpace>> = catalogue(ny, cfg.allow_override)?;
    let regular: Vec<bool> = ycat.iter().map(|y| y.is_regular()).collect();
    let mut report = VerificationReport::new("corollary", &[("nx", nx), ("ny", ny)]);
    report
        .counts
        .insert("regular_targets".into(), regular.iter().filter(|&&r| r).count() as u64);
    let parts = cfg.run(xcat.len(), |xi| {
        let mut part = Partial::default();
        for_each_instance(xi, &xcat[xi], &ycat, |key, inst| {
            if !regular[key.y_index] {
                return;
            }
            part.bump("instances");
            let sufficient = check_conditions(&inst).sufficient_holds;
            let continuous = enumerate_extensions(&inst)
                .expect("small instance")
                .find(|f| is_continuous(f).holds());
            if sufficient {
                part.bump("sufficient");
            }
            if continuous.is_some() {
                part.bump("continuous_existing");
            }
            if sufficient != continuous.is_some() {
                let d = part.flag(
                    &key,
                    format!("sufficient={sufficient} but continuous extension exists={}", continuous.is_some()),
                );
                d.map = continuous.map(|f| f.assignment().to_vec());
            }
            match (sufficient, corollary_continuous_extension(&inst, TieBreak::Min)) {
                (true, Ok(_)) | (false, Err(Error::NoContinuousExtension { .. })) => {}
                (_, Ok(f)) => {
                    part.flag(&key, "corollary construction succeeded without the condition".into())
                        .map = Some(f.assignment().to_vec());
                }
                (_, Err(e)) => {
                    part.flag(&key, format!("corollary construction: {e}"));
                }
            }
        });
        part
    });
    for p in parts {
        report.absorb(p);
    }
    Ok(report.finish(started))
}

/// `[A] ⊆ classical θ-closure ⊆ [A]_{θ_1} ⊆ .. ⊆ [A]_{θ_{alpha_max}}` and
/// `[A]_{θ_0} = [A]` for every topology on `n` points and every `A`.
pub fn verify_closure_chain(n: usize, alpha_max: usize, cfg: &SweepConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let cat = catalogue(n, cfg.allow_override)?;
    let mut report = VerificationReport::new("closure_chain", &[("n", n), ("alpha_max", alpha_max)]);
    let parts = cfg.run(cat.len(), |xi| {
        let mut part = Partial::default();
        let space = &cat[xi];
        part.bump("spaces");
        for a in PointSet::all_subsets(n) {
            part.bump("sets");
            let key = InstanceKey {
                x_index: xi,
                s: a.to_vec(),
                y_index: xi,
                f: vec![],
            };
            let closure = space.closure_of(&a);
            if theta_closure_of(space, &a, 0) != closure {
                part.flag(&key, "θ_0-closure differs from closure".into()).alpha = Some(0);
            }
            let classical = classical_theta_closure(space, &a).expect("same universe");
            if !closure.is_subset(&classical) {
                part.flag(&key, format!("closure {closure} not inside classical θ-closure {classical}"));
            }
            let mut prev = classical;
            for alpha in 1..=alpha_max {
                let cur = theta_closure_of(space, &a, alpha);
                if !prev.is_subset(&cur) {
                    part.flag(&key, format!("{prev} not inside θ_{alpha}-closure {cur}")).alpha = Some(alpha);
                }
                if alpha == 1 && classical != cur {
                    part.bump("classical_strictly_smaller_than_theta1");
                }
                prev = cur;
            }
        }
        part
    });
    for p in parts {
        report.absorb(p);
    }
    Ok(report.finish(started))
}

/// Literal intersection over `K(x)` against the singleton reduction, both
/// modes, for every instance of sizes `nx`, `ny` with `|S| ≤ max_domain`.
pub fn verify_singleton_reduction(
    nx: usize,
    ny: usize,
    max_domain: usize,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    check_sweep_guard(nx, ny, cfg)?;
    let xcat = catalogue(nx, cfg.allow_override)?;
    let ycat = catalogue(ny, cfg.allow_override)?;
    let mut report = VerificationReport::new(
        "singleton_reduction",
        &[("nx", nx), ("ny", ny), ("max_domain", max_domain)],
    );
    let parts = cfg.run(xcat.len(), |xi| {
        let mut part = Partial::default();
        for_each_instance(xi, &xcat[xi], &ycat, |key, inst| {
            if inst.s().len() > max_domain {
                return;
            }
            part.bump("instances");
            for x in 0..nx {
                for mode in [ConditionMode::Closure, ConditionMode::Theta] {
                    part.bump("comparisons");
                    let literal = condition_set_literal(&inst, x, mode).expect("small domain");
                    let reduced = condition_set_of(&inst, x, mode);
                    if literal != reduced {
                        part.flag(&key, format!("{mode:?}: literal {literal} vs reduced {reduced}"))
                            .point = Some(x);
                    }
                }
            }
        });
        part
    });
    for p in parts {
        report.absorb(p);
    }
    Ok(report.finish(started))
}

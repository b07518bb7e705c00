use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, HcError, Result};

/// Goemans–Williamson max-cut ratio.
pub const ALPHA_GW: f64 = 0.8786;

const MAX_STAGES: usize = 10_000;
const GRID_STEP: f64 = 1e-5;
const GOLDEN_TOL: f64 = 1e-9;

/// One row of a peel-off parameter schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterTriple {
    pub r_star: f64,
    pub gamma: f64,
    pub f_value: f64,
    pub epsilon: f64,
}

/// Raw maximizer found at one stage of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: usize,
    pub epsilon: f64,
    /// `None` when no `R*` satisfies all three conditions at this `ε`.
    pub best: Option<ParameterTriple>,
    /// The unconstrained maximizer of `F` violates the `(R*, γ)` coupling
    /// condition, so the reported point sits on that boundary.
    pub coupling_binds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub alpha: f64,
    pub alpha_gw: f64,
    pub triples: Vec<ParameterTriple>,
    pub stages: Vec<StageRecord>,
}

/// Which of the three feasibility conditions a triple satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `R* < 1 − 6α/(3α − 2)·ε`
    pub r_epsilon: bool,
    /// `γ ≤ (1 − R*)²·(3α − 2)/(9α²)/ε`
    pub gamma_epsilon: bool,
    /// `1/3 ≥ R*(α/2 − 1/6) + γ(1 − α)`
    pub r_gamma: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.r_epsilon && self.gamma_epsilon && self.r_gamma
    }
}

fn f_raw(r: f64, gamma: f64) -> f64 {
    (1.0 - r / (4.0 * gamma)) * r + (2.0 / 3.0) * (1.0 - r / (2.0 * gamma)) * (1.0 - r)
}

/// Lower bound on `rev/(nW)` achieved by the peel-off algorithm with
/// parameters `(r_star, gamma)`.
pub fn f_of_r(r_star: f64, gamma: f64) -> Result<f64> {
    if gamma.is_nan() || gamma <= 0.0 || !r_star.is_finite() {
        return invalid(format!(
            "f_of_r needs finite R* and gamma > 0, got ({r_star}, {gamma})"
        ));
    }
    Ok(f_raw(r_star, gamma))
}

/// Approximation ratio for the common-ancestor cost of recursive max-cut when
/// the cut oracle guarantees ratio `alpha`.
pub fn cost_h_ratio_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.25 && alpha <= 1.0) {
        return invalid(format!("cut ratio must lie in (1/4, 1], got {alpha}"));
    }
    Ok(4.0 * alpha / (4.0 * alpha - 1.0))
}

pub fn check_conditions(r_star: f64, gamma: f64, epsilon: f64, alpha_gw: f64) -> Conditions {
    let a = alpha_gw;
    Conditions {
        r_epsilon: r_star < 1.0 - 6.0 * a / (3.0 * a - 2.0) * epsilon,
        gamma_epsilon: gamma <= (1.0 - r_star).powi(2) * gamma_coefficient(a) / epsilon,
        r_gamma: 1.0 / 3.0 >= r_star * (a / 2.0 - 1.0 / 6.0) + gamma * (1.0 - a),
    }
}

fn gamma_coefficient(a: f64) -> f64 {
    (3.0 * a - 2.0) / (9.0 * a * a)
}

/// One stage: `γ` is tied to `R*` so the second condition is tight, and `F` is
/// maximized over `R*` subject to the other two.
struct Stage {
    epsilon: f64,
    a: f64,
    coef: f64,
    upper: f64,
}

struct StageMax {
    r: f64,
    f: f64,
    coupling_binds: bool,
}

impl Stage {
    fn new(epsilon: f64, a: f64) -> Self {
        let upper = (1.0 - 6.0 * a / (3.0 * a - 2.0) * epsilon).min(0.5);
        Stage {
            epsilon,
            a,
            coef: gamma_coefficient(a),
            upper,
        }
    }

    fn gamma(&self, r: f64) -> f64 {
        self.coef * (1.0 - r).powi(2) / self.epsilon
    }

    fn f(&self, r: f64) -> f64 {
        f_raw(r, self.gamma(r))
    }

    fn feasible(&self, r: f64) -> bool {
        r > 0.0 && r < self.upper && check_conditions(r, self.gamma(r), self.epsilon, self.a).all()
    }

    fn triple(&self, r: f64) -> ParameterTriple {
        let gamma = self.gamma(r);
        ParameterTriple {
            r_star: r,
            gamma,
            f_value: f_raw(r, gamma),
            epsilon: self.epsilon,
        }
    }

    fn maximize(&self) -> Option<StageMax> {
        if self.upper <= 0.0 {
            return None;
        }
        let mut best: Option<(usize, f64)> = None;
        let mut unconstrained: Option<(usize, f64)> = None;
        let mut k = 1usize;
        loop {
            let r = k as f64 * GRID_STEP;
            if r >= self.upper {
                break;
            }
            let f = self.f(r);
            if unconstrained.is_none_or(|(_, bf)| f > bf) {
                unconstrained = Some((k, f));
            }
            if self.feasible(r) && best.is_none_or(|(_, bf)| f > bf) {
                best = Some((k, f));
            }
            k += 1;
        }
        let (k, _) = best?;
        let coupling_binds =
            unconstrained.is_some_and(|(ku, _)| !self.feasible(ku as f64 * GRID_STEP));

        let grid_r = k as f64 * GRID_STEP;
        let lo = ((k - 1) as f64 * GRID_STEP).max(0.0);
        let hi = ((k + 1) as f64 * GRID_STEP).min(self.upper);
        let mut r = golden_max(|x| self.f(x), lo, hi);
        if !self.feasible(r) || self.f(r) < self.f(grid_r) {
            r = if self.feasible(r) {
                grid_r
            } else {
                self.boundary(grid_r, r)
            };
        }
        Some(StageMax {
            r,
            f: self.f(r),
            coupling_binds,
        })
    }

    /// Feasible endpoint of a bisection between a feasible and an infeasible point.
    fn boundary(&self, mut good: f64, mut bad: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (good + bad);
            if mid == good || mid == bad {
                break;
            }
            if self.feasible(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        good
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Builds the iterated parameter schedule reaching overall ratio `alpha`.
///
/// Stage `i` uses `ε_i`, starting from `ε_1 = (α − 2/3)/α`, picks the best
/// feasible `R*` and sets `ε_{i+1} = 1 − F_i/α`. The construction stops at the
/// first stage whose best `F` reaches `alpha` or that has no feasible point.
/// That last row is tightened: its `(R*, γ)` come from the largest `ε` in
/// `[ε_i, ε_{i−1}]` whose best `F` still reaches `alpha`, so the row has
/// `F = alpha` up to bisection precision. [`Schedule::stages`] keeps the raw
/// maximizer of every stage.
pub fn generate_parameter_schedule(alpha: f64, alpha_gw: f64) -> Result<Schedule> {
    if !(alpha_gw > 2.0 / 3.0 && alpha_gw <= 1.0) {
        return invalid(format!("alpha_gw must lie in (2/3, 1], got {alpha_gw}"));
    }
    if !(alpha > 2.0 / 3.0 && alpha < 1.0) {
        return invalid(format!("alpha must lie in (2/3, 1), got {alpha}"));
    }

    let mut triples: Vec<ParameterTriple> = Vec::new();
    let mut stages: Vec<StageRecord> = Vec::new();
    let mut epsilon = (alpha - 2.0 / 3.0) / alpha;

    for stage_no in 1..=MAX_STAGES {
        let stage = Stage::new(epsilon, alpha_gw);
        let best = stage.maximize();
        stages.push(StageRecord {
            stage: stage_no,
            epsilon,
            best: best.as_ref().map(|m| stage.triple(m.r)),
            coupling_binds: best.as_ref().is_some_and(|m| m.coupling_binds),
        });

        match best {
            Some(m) if m.f < alpha => {
                triples.push(stage.triple(m.r));
                let next = 1.0 - m.f / alpha;
                if next.is_nan() || next >= epsilon {
                    return Err(HcError::Invariant(format!(
                        "epsilon stalled at stage {stage_no}"
                    )));
                }
                epsilon = next;
            }
            Some(m) if triples.is_empty() => {
                triples.push(stage.triple(m.r));
                return finish(alpha, alpha_gw, triples, stages);
            }
            None if triples.is_empty() => {
                return domain(format!(
                    "no feasible R* at the first stage for alpha {alpha}"
                ));
            }
            _ => {
                let prev = triples.last().expect("nonempty").epsilon;
                triples.push(final_row(epsilon, prev, alpha, alpha_gw)?);
                return finish(alpha, alpha_gw, triples, stages);
            }
        }
    }
    Err(HcError::NoConvergence(MAX_STAGES))
}

/// `(R*, γ)` at the largest `ε' ∈ [eps, prev]` whose stage still reaches
/// `alpha`, reported with `ε = eps`. The conditions hold for `eps` because they
/// only get looser as `ε` shrinks.
fn final_row(eps: f64, prev: f64, alpha: f64, alpha_gw: f64) -> Result<ParameterTriple> {
    let reaches = |e: f64| Stage::new(e, alpha_gw).maximize().filter(|m| m.f >= alpha);

    let steps = 1024;
    let mut lo = None;
    for s in 0..steps {
        let e = eps + (prev - eps) * s as f64 / steps as f64;
        if reaches(e).is_some() {
            lo = Some(e);
            break;
        }
    }
    let Some(mut lo) = lo else {
        return domain(format!(
            "no epsilon in [{eps}, {prev}] reaches alpha {alpha}"
        ));
    };
    let mut hi = prev;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if reaches(mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let stage = Stage::new(lo, alpha_gw);
    let m = reaches(lo).expect("lo reaches alpha");
    Ok(ParameterTriple {
        epsilon: eps,
        ..stage.triple(m.r)
    })
}

fn finish(
    alpha: f64,
    alpha_gw: f64,
    triples: Vec<ParameterTriple>,
    stages: Vec<StageRecord>,
) -> Result<Schedule> {
    for (i, t) in triples.iter().enumerate() {
        if !check_conditions(t.r_star, t.gamma, t.epsilon, alpha_gw).all() {
            return Err(HcError::Invariant(format!(
                "schedule row {} violates the feasibility conditions",
                i + 1
            )));
        }
    }
    for w in triples.windows(2) {
        if !(w[1].epsilon < w[0].epsilon && w[1].f_value > w[0].f_value) {
            return Err(HcError::Invariant("schedule is not monotone".into()));
        }
    }
    Ok(Schedule {
        alpha,
        alpha_gw,
        triples,
        stages,
    })
}

/// The 83-row schedule for `alpha = 0.716`, generated once and cached.
pub fn builtin_schedule() -> &'static [ParameterTriple] {
    static CELL: OnceLock<Vec<ParameterTriple>> = OnceLock::new();
    CELL.get_or_init(|| {
        generate_parameter_schedule(0.716, ALPHA_GW)
            .expect("builtin schedule parameters are valid")
            .triples
    })
}

/// Resolves a schedule name such as `builtin:716`.
pub fn named_schedule(name: &str) -> Option<&'static [ParameterTriple]> {
    match name {
        "builtin:716" => Some(builtin_schedule()),
        _ => None,
    }
}

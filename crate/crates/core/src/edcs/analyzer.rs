//! Empirical verification of the structure of EDCS instances whose matching
//! is close to two thirds of the maximum.

use serde::{Deserialize, Serialize};

use crate::edcs::{approx_matching_of, Edcs};
use crate::error::{invalid, Result};
use crate::graph::{induced_view, Bipartition, DynamicGraph, Side, VertexId};
use crate::oracles::{hall_witness, max_matching_bipartite, HallWitness};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    AtLeast,
    AtMost,
    Below,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check only applies under the near-tightness premise, which failed.
    Vacuous,
}

/// One inequality with its observed value and bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub observed: f64,
    pub bound: f64,
    pub status: CheckStatus,
}

impl Check {
    fn new(name: &str, relation: Relation, observed: f64, bound: f64, applicable: bool) -> Self {
        let tol = TOL * bound.abs().max(1.0);
        let holds = match relation {
            Relation::AtLeast => observed >= bound - tol,
            Relation::AtMost => observed <= bound + tol,
            Relation::Below => observed < bound,
            Relation::Equal => (observed - bound).abs() <= tol,
        };
        let status = if !applicable {
            CheckStatus::Vacuous
        } else if holds {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self { name: name.to_string(), relation, observed, bound, status }
    }

    /// Observed slack in the direction of the inequality.
    pub fn slack(&self) -> f64 {
        match self.relation {
            Relation::AtLeast => self.observed - self.bound,
            Relation::AtMost | Relation::Below => self.bound - self.observed,
            Relation::Equal => -(self.observed - self.bound).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub delta: f64,
    pub epsilon: f64,
    pub beta: usize,
    /// Whether `delta` and `epsilon` lie in the ranges where the checked
    /// bounds are guaranteed.
    pub in_range: bool,
    pub mu_g: usize,
    pub mu_h: usize,
    pub mu_h_prime: usize,
    /// `mu(H) < (2/3 + delta) mu(G)`.
    pub premise: bool,
    pub witness: HallWitness,
    /// Endpoints of optimal-matching edges that leave the witness towards
    /// the complement of its neighbourhood.
    pub s: Vec<VertexId>,
    /// Complement of the witness on its side plus the witness neighbourhood.
    pub t: Vec<VertexId>,
    /// Remaining vertices.
    pub w: Vec<VertexId>,
    pub m_s: usize,
    pub m_w: usize,
    pub dbar_s: f64,
    pub dbar_s_t: f64,
    pub dbar_w_t: f64,
    pub alpha: f64,
    pub gamma: f64,
    /// `T` vertices whose total degree exceeds `(1 + alpha)` times their
    /// degree into `S`.
    pub t_hat: Vec<VertexId>,
    pub v_mid_size: usize,
    pub v_low_size: usize,
    /// Size of the approximate `H'` matching removed before the leftover check.
    pub h_prime_matching_size: usize,
    /// `mu(G[V_mid \ V(M)])`.
    pub leftover_mu: usize,
    pub properties: Vec<Check>,
    pub claims: Vec<Check>,
}

impl TightnessReport {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.properties.iter().chain(self.claims.iter())
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks().filter(|c| c.status == CheckStatus::Fail).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks().find(|c| c.name == name)
    }
}

fn in_range(eps: f64, delta: f64, beta_minus: usize) -> bool {
    eps > 0.0 && eps < 1.0 / 120.0 && delta > 2.0 * eps && delta < 1.0 / 60.0 && beta_minus >= 1
}

/// Runs [`evaluate_tightness`] after checking the parameter ranges
/// `0 < eps < 1/120` and `2 eps < delta < 1/60`.
pub fn analyze_tightness(g: &DynamicGraph, e: &Edcs, sides: &Bipartition, delta: f64) -> Result<TightnessReport> {
    if !in_range(e.eps(), delta, e.beta_minus()) {
        return Err(invalid(format!(
            "parameters out of range: need 0 < eps < 1/120 and 2 eps < delta < 1/60, got eps = {}, delta = {delta}",
            e.eps()
        )));
    }
    evaluate_tightness(g, e, sides, delta)
}

/// Computes every quantity and check without enforcing parameter ranges.
pub fn evaluate_tightness(g: &DynamicGraph, e: &Edcs, sides: &Bipartition, delta: f64) -> Result<TightnessReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1), got {delta}")));
    }
    let h = e.h();
    let n = g.n();
    if h.n() != n || sides.n() != n {
        return Err(invalid("graph, EDCS and bipartition sizes differ"));
    }
    let beta = e.beta() as f64;
    let eps = e.eps();

    let m_star = max_matching_bipartite(g, sides, None)?;
    let mu_g = m_star.len();
    let mu_h = max_matching_bipartite(h, sides, None)?.len();
    let witness = hall_witness(h, sides, Side::Left)?;

    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &v in &witness.a {
        in_a[v] = true;
    }
    for &v in &witness.neighborhood {
        in_b[v] = true;
    }
    let mut in_s = vec![false; n];
    for &u in &witness.a {
        if let Some(v) = m_star.mate(u) {
            if !in_b[v] {
                in_s[u] = true;
                in_s[v] = true;
            }
        }
    }
    let is_t = |v: VertexId| (sides.side(v) == Side::Left && !in_a[v]) || in_b[v];
    let (mut s, mut t, mut w) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..n {
        if in_s[v] {
            s.push(v);
        } else if is_t(v) {
            t.push(v);
        } else {
            w.push(v);
        }
    }
    let mut in_w = vec![false; n];
    for &v in &w {
        in_w[v] = true;
    }

    let d = |v: VertexId| h.degree(v) as f64;
    let d_s: Vec<usize> = (0..n).map(|v| h.neighbors(v).filter(|&x| in_s[x]).count()).collect();
    let d_w: Vec<usize> = (0..n).map(|v| h.neighbors(v).filter(|&x| in_w[x]).count()).collect();
    let m_s: usize = t.iter().map(|&v| d_s[v]).sum();
    let m_w: usize = t.iter().map(|&v| d_w[v]).sum();
    let ratio = |a: f64, b: usize| if b == 0 { 0.0 } else { a / b as f64 };
    let dbar_s = ratio(m_s as f64, s.len());
    let dbar_s_t = ratio(m_s as f64, t.len());
    let dbar_w_t = ratio(m_w as f64, t.len());
    let alpha = 3.0 * delta.sqrt();
    let t_hat: Vec<VertexId> = t.iter().copied().filter(|&v| d(v) > (1.0 + alpha) * d_s[v] as f64).collect();
    let spread_s: f64 = s.iter().map(|&v| (d(v) - dbar_s).powi(2)).sum();
    let spread_t: f64 = t.iter().map(|&v| (d_s[v] as f64 - dbar_s_t).powi(2)).sum();
    let numerator = spread_s + 0.5 * spread_t + 0.25 * t_hat.len() as f64 * delta * dbar_s_t * dbar_s_t;
    let gamma = if m_s == 0 { 0.0 } else { numerator / (m_s as f64 * beta) };

    let cls = e.classify();
    let h_prime = e.h_prime(&cls);
    let mu_h_prime = max_matching_bipartite(&h_prime, sides, None)?.len();
    let m_hp = approx_matching_of(&h_prime, sides, eps)?;
    let leftover: Vec<VertexId> = cls.v_mid.iter().copied().filter(|&v| !m_hp.is_matched(v)).collect();
    let (lo_l, lo_r): (Vec<VertexId>, Vec<VertexId>) = leftover.iter().partition(|&&v| sides.side(v) == Side::Left);
    let leftover_mu = max_matching_bipartite(&induced_view(g, &lo_l, &lo_r)?, sides, None)?.len();

    let mu = mu_g as f64;
    let premise = (mu_h as f64) < (2.0 / 3.0 + delta) * mu;
    let s_len = s.len() as f64;
    let t_len = t.len() as f64;
    let s_outside_mid = s.iter().filter(|&&v| !cls.is_mid(v)).count() as f64;
    let t_outside_mid = t.iter().filter(|&&v| !cls.is_mid(v)).count() as f64;
    let w_outside_low = w.iter().filter(|&&v| !cls.is_low(v)).count() as f64;
    let has_s = !s.is_empty();

    let properties = vec![
        Check::new("h_prime_matching", Relation::AtLeast, mu_h_prime as f64, (2.0 / 3.0 - 120.0 * delta.sqrt()) * mu, premise),
        Check::new("mid_leftover_matching", Relation::AtLeast, leftover_mu as f64, (1.0 / 3.0 - 800.0 * delta) * mu, premise),
        Check::new("mid_size", Relation::Below, cls.v_mid.len() as f64, 8.0 * mu, premise),
    ];
    let ratio_bound = if 2.0 * dbar_s + dbar_s_t > 0.0 { 2.0 * dbar_s / (2.0 * dbar_s + dbar_s_t) * mu } else { 0.0 };
    let claims = vec![
        Check::new("t_size_equals_mu_h", Relation::Equal, t_len, mu_h as f64, true),
        Check::new("s_size_covers_deficit", Relation::AtLeast, s_len, 2.0 * (mu - mu_h as f64), true),
        Check::new("mu_h_ratio_bound", Relation::AtLeast, mu_h as f64, ratio_bound, true),
        Check::new("gamma_nonnegative", Relation::AtLeast, gamma, 0.0, true),
        Check::new("degree_tradeoff", Relation::AtMost, dbar_s_t, (1.0 - gamma) * beta - dbar_s, has_s),
        Check::new("s_avg_degree_lower", Relation::AtLeast, dbar_s, (1.0 - eps) * beta / 2.0, has_s),
        Check::new("s_avg_degree_upper", Relation::AtMost, dbar_s, (1.0 + 3.0 * delta) * beta / 2.0, premise),
        Check::new("t_avg_degree_lower", Relation::AtLeast, dbar_s_t, (1.0 - 6.0 * delta) * beta / 2.0, premise),
        Check::new("t_avg_degree_upper", Relation::AtMost, dbar_s_t, (1.0 + eps) * beta / 2.0, premise),
        Check::new("s_size_lower", Relation::AtLeast, s_len, (2.0 / 3.0 - 2.0 * delta) * mu, premise),
        Check::new("s_size_upper", Relation::AtMost, s_len, (2.0 / 3.0 + 3.0 * delta) * mu, premise),
        Check::new("gamma_small", Relation::AtMost, gamma, 2.0 * delta, premise),
        Check::new("s_outside_mid", Relation::AtMost, s_outside_mid, 199.0 * delta * mu, premise),
        Check::new("t_outside_mid", Relation::AtMost, t_outside_mid, 600.0 * delta * mu, premise),
        Check::new("t_hat_small", Relation::Below, t_hat.len() as f64, 22.0 * delta * s_len / alpha, premise && has_s),
        Check::new("w_outside_low", Relation::AtMost, w_outside_low, 33.0 * delta.sqrt() * mu, premise),
    ];

    Ok(TightnessReport {
        delta,
        epsilon: eps,
        beta: e.beta(),
        in_range: in_range(eps, delta, e.beta_minus()),
        mu_g,
        mu_h,
        mu_h_prime,
        premise,
        witness,
        s,
        t,
        w,
        m_s,
        m_w,
        dbar_s,
        dbar_s_t,
        dbar_w_t,
        alpha,
        gamma,
        t_hat,
        v_mid_size: cls.v_mid.len(),
        v_low_size: cls.v_low.len(),
        h_prime_matching_size: m_hp.len(),
        leftover_mu,
        properties,
        claims,
    })
}

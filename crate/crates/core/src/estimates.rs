//! Numeric checkers for the binomial identities and inequalities that the
//! stability arguments lean on.
//!
//! Every checker evaluates both sides in double precision and reports the
//! margin. Identities are compared with a relative tolerance; inequalities are
//! evaluated strictly.

use serde::{Deserialize, Serialize};

use crate::error::{domain, precondition, Result};
use crate::gbinom::{factorial, gbinom, gbinom_derivative, inverse};

/// Relative tolerance for identities.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Outcome of one numeric check.
///
/// Inequalities are stored as `lhs < rhs` (and `lower < lhs` for two-sided
/// chains); `margin` is the smallest gap, negative when violated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheckResult {
    pub check: String,
    pub inputs: Vec<(String, f64)>,
    pub lower: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
    /// Whether the side conditions of the statement hold at these inputs.
    /// The conclusion is evaluated either way.
    pub hypotheses_met: bool,
    pub notes: Vec<String>,
}

impl LemmaCheckResult {
    fn strict(check: &str, inputs: &[(&str, f64)], lhs: f64, rhs: f64) -> Self {
        LemmaCheckResult {
            check: check.to_string(),
            inputs: inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            lower: None,
            lhs,
            rhs,
            satisfied: lhs < rhs,
            margin: rhs - lhs,
            hypotheses_met: true,
            notes: Vec::new(),
        }
    }

    fn chain(check: &str, inputs: &[(&str, f64)], lower: f64, mid: f64, upper: f64) -> Self {
        let mut out = Self::strict(check, inputs, mid, upper);
        out.lower = Some(lower);
        out.satisfied = lower < mid && mid < upper;
        out.margin = (mid - lower).min(upper - mid);
        out
    }

    fn identity(check: &str, inputs: &[(&str, f64)], lhs: f64, rhs: f64) -> Self {
        let mut out = Self::strict(check, inputs, lhs, rhs);
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        out.margin = IDENTITY_TOL * scale - (lhs - rhs).abs();
        out.satisfied = out.margin >= 0.0;
        out
    }
}

/// Vandermonde-type convolution `C(x+y, r) = Σ_{j=0..r} C(x+j-1, j) C(y-j, r-j)`.
pub fn check_vandermonde(x: f64, y: f64, r: usize) -> LemmaCheckResult {
    let lhs = gbinom(x + y, r);
    let rhs = (0..=r).map(|j| gbinom(x + j as f64 - 1.0, j) * gbinom(y - j as f64, r - j)).sum();
    LemmaCheckResult::identity("vandermonde", &[("x", x), ("y", y), ("r", r as f64)], lhs, rhs)
}

/// The derivative sum against a central finite difference of `C(x, r)`.
pub fn check_derivative(x: f64, r: usize) -> LemmaCheckResult {
    let h = 1e-5 * x.abs().max(1.0);
    let fd = (gbinom(x + h, r) - gbinom(x - h, r)) / (2.0 * h);
    let exact = gbinom_derivative(x, r);
    let mut out = LemmaCheckResult::identity("derivative", &[("x", x), ("r", r as f64)], exact, fd);
    let scale = exact.abs().max(1.0);
    out.margin = 1e-6 * scale - (exact - fd).abs();
    out.satisfied = out.margin >= 0.0;
    out
}

/// The elementary estimates used throughout the stability proofs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Fact {
    /// `0 < θ < 1`, `θx > n` ⇒ `C(θx, n) < θ^n C(x, n)`.
    ScaledBinomial { theta: f64, x: f64, n: usize },
    /// `a > b > n - 1`, `n >= 2` ⇒ `(a/b)^n < C(a,n)/C(b,n) < ((a-n+1)/(b-n+1))^n`.
    RatioBracket { a: f64, b: f64, n: usize },
    /// `0 < θ < 2/(3n)` ⇒ `(1+θ)^n < 1 + 2nθ`.
    LinearizedPower { theta: f64, n: usize },
    /// `0 < θ < 1/(2n)` ⇒ `(1+θ)^n < 2`.
    PowerBelowTwo { theta: f64, n: usize },
    /// `0 < θ < 1/2` ⇒ `(1-θ)^{1/n} > 1 - 2θ/n`.
    RootAboveLine { theta: f64, n: usize },
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        precondition(format!("hypothesis violated: {what}"))
    }
}

/// Evaluates one of the elementary estimates; hypothesis violations are errors.
pub fn check_fact(fact: Fact) -> Result<LemmaCheckResult> {
    match fact {
        Fact::ScaledBinomial { theta, x, n } => {
            require(0.0 < theta && theta < 1.0, "0 < theta < 1")?;
            require(theta * x > n as f64, "theta * x > n")?;
            let lhs = gbinom(theta * x, n);
            let rhs = theta.powi(n as i32) * gbinom(x, n);
            Ok(LemmaCheckResult::strict(
                "scaled-binomial",
                &[("theta", theta), ("x", x), ("n", n as f64)],
                lhs,
                rhs,
            ))
        }
        Fact::RatioBracket { a, b, n } => {
            require(a > b, "a > b")?;
            require(n >= 2, "n >= 2")?;
            require(b > n as f64 - 1.0, "b > n - 1")?;
            let ratio = gbinom(a, n) / gbinom(b, n);
            let lower = (a / b).powi(n as i32);
            let k = n as f64 - 1.0;
            let upper = ((a - k) / (b - k)).powi(n as i32);
            Ok(LemmaCheckResult::chain(
                "ratio-bracket",
                &[("a", a), ("b", b), ("n", n as f64)],
                lower,
                ratio,
                upper,
            ))
        }
        Fact::LinearizedPower { theta, n } => {
            require(n >= 1, "n >= 1")?;
            require(0.0 < theta && theta < 2.0 / (3.0 * n as f64), "0 < theta < 2/(3n)")?;
            Ok(LemmaCheckResult::strict(
                "linearized-power",
                &[("theta", theta), ("n", n as f64)],
                (1.0 + theta).powi(n as i32),
                1.0 + 2.0 * n as f64 * theta,
            ))
        }
        Fact::PowerBelowTwo { theta, n } => {
            require(n >= 1, "n >= 1")?;
            require(0.0 < theta && theta < 1.0 / (2.0 * n as f64), "0 < theta < 1/(2n)")?;
            Ok(LemmaCheckResult::strict(
                "power-below-two",
                &[("theta", theta), ("n", n as f64)],
                (1.0 + theta).powi(n as i32),
                2.0,
            ))
        }
        Fact::RootAboveLine { theta, n } => {
            require(n >= 1, "n >= 1")?;
            require(0.0 < theta && theta < 0.5, "0 < theta < 1/2")?;
            Ok(LemmaCheckResult::strict(
                "root-above-line",
                &[("theta", theta), ("n", n as f64)],
                1.0 - 2.0 * theta / n as f64,
                (1.0 - theta).powf(1.0 / n as f64),
            ))
        }
    }
}

/// Two-sided mean-value bounds on a binomial difference:
/// `(x-y) C(y-1, r-1) < C(x,r) - C(y,r) < (x-y) C(x, r-1)` for `x > y >= r-1`.
pub fn check_bin_diff(x: f64, y: f64, r: usize) -> Result<LemmaCheckResult> {
    if r == 0 {
        return domain("binomial difference bounds need r >= 1");
    }
    require(x > y, "x > y")?;
    require(y >= r as f64 - 1.0, "y >= r - 1")?;
    let d = x - y;
    Ok(LemmaCheckResult::chain(
        "binomial-difference",
        &[("x", x), ("y", y), ("r", r as f64)],
        d * gbinom(y - 1.0, r - 1),
        gbinom(x, r) - gbinom(y, r),
        d * gbinom(x, r - 1),
    ))
}

/// Which shadow-defect statement [`check_bin_shadow`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ShadowMode {
    /// The level-`s` defect: `C(u,s) < C(v,s) + C(w,s-1) - (3r)^{-r}/u`, under
    /// `1 <= C(w,r-1) < C(u-1,r-1) - u^{r-s-1}/(2 r!)` and `u` large.
    Defect,
    /// The `r = 2` case: `1 <= w < u - 1 - c` ⇒ `u < v + 1 - c/u`.
    Quadratic { c: f64 },
    /// `w > u - 3r` ⇒ `X_{r-1} > c/(3u)`, under `c' <= C(w,r-1) < C(u-1,r-1) - c`.
    NearTop { c: f64, c_prime: f64 },
    /// `w < u - 2r` ⇒ `X_{r-1} > min{1/(4 r!), c'}`, same side conditions.
    FarFromTop { c: f64, c_prime: f64 },
    /// `c' = 1`, `c = u^{r-s-1}/(2 r!)` ⇒ `X_s > (3r)^{-r}/u`.
    Level,
}

/// `X_s = C(v,s) + C(w,s-1) - C(u,s)`.
pub fn defect(u: f64, v: f64, w: f64, s: usize) -> f64 {
    let ws = if s == 0 { 0.0 } else { gbinom(w, s - 1) };
    gbinom(v, s) + ws - gbinom(u, s)
}

/// `u` solving `C(u,r) = C(v,r) + C(w,r-1)`.
pub fn consistent_u(v: f64, w: f64, r: usize) -> Result<f64> {
    inverse(gbinom(v, r) + gbinom(w, r - 1), r)
}

fn consistency_residual(u: f64, v: f64, w: f64, r: usize) -> f64 {
    defect(u, v, w, r).abs() / gbinom(u, r).abs().max(1.0)
}

/// Evaluates a shadow-defect statement at a triple with
/// `C(u,r) = C(v,r) + C(w,r-1)`.
///
/// An inconsistent triple is a precondition error. Other side conditions only
/// set `hypotheses_met`; no threshold for "u sufficiently large" is known, so
/// a failed conclusion is data, not a bug.
pub fn check_bin_shadow(u: f64, v: f64, w: f64, r: usize, s: usize, mode: ShadowMode) -> Result<LemmaCheckResult> {
    if r < 2 {
        return domain("shadow-defect statements need r >= 2");
    }
    let res = consistency_residual(u, v, w, r);
    if res > IDENTITY_TOL {
        return precondition(format!(
            "inconsistent triple: |C(v,r) + C(w,r-1) - C(u,r)| has relative size {res:e}"
        ));
    }
    let rf = r as f64;
    let inputs = [("u", u), ("v", v), ("w", w), ("r", rf), ("s", s as f64)];
    let top = gbinom(u - 1.0, r - 1);
    let cw = gbinom(w, r - 1);
    let mut out = match mode {
        ShadowMode::Defect => {
            if s == 0 || s >= r {
                return domain("defect statement needs 1 <= s <= r - 1");
            }
            let c = u.powi((r - s - 1) as i32) / (2.0 * factorial(r));
            let lhs = gbinom(u, s);
            let rhs = gbinom(v, s) + gbinom(w, s - 1) - (3.0 * rf).powi(-(r as i32)) / u;
            let mut o = LemmaCheckResult::strict("shadow-defect", &inputs, lhs, rhs);
            o.hypotheses_met = 1.0 <= cw && cw < top - c;
            o.notes.push("threshold u0(r,s) unknown; margin reported only".into());
            o
        }
        ShadowMode::Quadratic { c } => {
            if r != 2 {
                return domain("quadratic case needs r = 2");
            }
            let mut o = LemmaCheckResult::strict("quadratic-defect", &inputs, u, v + 1.0 - c / u);
            o.inputs.push(("c".into(), c));
            o.hypotheses_met = c > 0.0 && 1.0 <= w && w < u - 1.0 - c;
            o
        }
        ShadowMode::NearTop { c, c_prime } => {
            if r < 3 {
                return domain("near-top case needs r >= 3");
            }
            let mut o =
                LemmaCheckResult::strict("defect-near-top", &inputs, c / (3.0 * u), defect(u, v, w, r - 1));
            o.hypotheses_met = c > 0.0 && c_prime > 0.0 && c_prime <= cw && cw < top - c && w > u - 3.0 * rf;
            o.inputs.extend([("c".into(), c), ("c_prime".into(), c_prime)]);
            o.notes.push("u is assumed sufficiently large; threshold unknown".into());
            o
        }
        ShadowMode::FarFromTop { c, c_prime } => {
            if r < 3 {
                return domain("far-from-top case needs r >= 3");
            }
            let floor = (1.0 / (4.0 * factorial(r))).min(c_prime);
            let mut o = LemmaCheckResult::strict("defect-far-from-top", &inputs, floor, defect(u, v, w, r - 1));
            o.hypotheses_met = c > 0.0 && c_prime > 0.0 && c_prime <= cw && cw < top - c && w < u - 2.0 * rf;
            o.inputs.extend([("c".into(), c), ("c_prime".into(), c_prime)]);
            o.notes.push("u is assumed sufficiently large; threshold unknown".into());
            o
        }
        ShadowMode::Level => {
            if r < 3 || s == 0 || s >= r {
                return domain("level case needs r >= 3 and 1 <= s <= r - 1");
            }
            let c = u.powi((r - s - 1) as i32) / (2.0 * factorial(r));
            let mut o = LemmaCheckResult::strict(
                "defect-level",
                &inputs,
                (3.0 * rf).powi(-(r as i32)) / u,
                defect(u, v, w, s),
            );
            o.hypotheses_met = 1.0 <= cw && cw < top - c;
            o.notes.push("u is assumed sufficiently large; threshold unknown".into());
            o
        }
    };
    out.notes.push(format!("consistency residual {res:e}"));
    Ok(out)
}

/// The change of variables `w = t + r - 1`, `u' = u - t`, `v' = v - t`, and
/// the sum `Σ_{j=0..r-1} C(t+j-1, j) φ_{r-j}` with
/// `φ_i = C(v'-r+i, i) + 1 - C(u'-r+i, i)`. It equals `X_r`, which vanishes
/// on consistent triples.
pub fn x_r_after_substitution(u: f64, v: f64, w: f64, r: usize) -> f64 {
    let rf = r as f64;
    let t = w - rf + 1.0;
    let (up, vp) = (u - t, v - t);
    let phi = |i: usize| gbinom(vp - rf + i as f64, i) + 1.0 - gbinom(up - rf + i as f64, i);
    (0..r).map(|j| gbinom(t + j as f64 - 1.0, j) * phi(r - j)).sum()
}

/// The same substitution applied to `X_{r-1}`:
/// `Σ_{j=1..r-1} C(t+j-1, j-1) φ_{r-j}`.
pub fn x_r_minus_one_after_substitution(u: f64, v: f64, w: f64, r: usize) -> f64 {
    let rf = r as f64;
    let t = w - rf + 1.0;
    let (up, vp) = (u - t, v - t);
    let phi = |i: usize| gbinom(vp - rf + i as f64, i) + 1.0 - gbinom(up - rf + i as f64, i);
    (1..r).map(|j| gbinom(t + j as f64 - 1.0, j - 1) * phi(r - j)).sum()
}

/// Margins of the level-`s` defect over a grid of `u`, with `C(w, r-1)` placed
/// at `fraction` of the admissible window `[1, C(u-1,r-1) - u^{r-s-1}/(2r!))`.
pub fn defect_grid(r: usize, s: usize, us: &[f64], fraction: f64) -> Result<Vec<LemmaCheckResult>> {
    let mut out = Vec::with_capacity(us.len());
    for &u in us {
        let c = u.powi((r - s - 1) as i32) / (2.0 * factorial(r));
        let hi = gbinom(u - 1.0, r - 1) - c;
        if hi <= 1.0 {
            continue;
        }
        let cw = 1.0 + fraction * (hi - 1.0);
        let w = inverse(cw, r - 1)?;
        let v = inverse(gbinom(u, r) - cw, r)?;
        out.push(check_bin_shadow(u, v, w, r, s, ShadowMode::Defect)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vandermonde_examples() {
        let c = check_vandermonde(1.0, 5.0, 2);
        assert!(c.satisfied);
        assert!((c.lhs - 15.0).abs() < 1e-12 && (c.rhs - 15.0).abs() < 1e-12);
        assert!(check_vandermonde(0.0, 7.3, 4).satisfied);
        assert!(check_vandermonde(2.5, 3.5, 3).satisfied);
    }

    #[test]
    fn facts_examples() {
        let f1 = check_fact(Fact::ScaledBinomial { theta: 0.5, x: 10.0, n: 3 }).unwrap();
        assert_eq!((f1.lhs, f1.rhs), (10.0, 15.0));
        assert!(f1.satisfied);
        let f4 = check_fact(Fact::PowerBelowTwo { theta: 0.2, n: 2 }).unwrap();
        assert!((f4.lhs - 1.44).abs() < 1e-12 && f4.satisfied);
        let f5 = check_fact(Fact::RootAboveLine { theta: 0.4, n: 2 }).unwrap();
        assert!((f5.rhs - 0.6f64.sqrt()).abs() < 1e-12);
        assert!((f5.lhs - 0.6).abs() < 1e-12 && f5.satisfied);
        assert!(check_fact(Fact::LinearizedPower { theta: 0.1, n: 3 }).unwrap().satisfied);
        assert!(check_fact(Fact::RatioBracket { a: 9.0, b: 6.5, n: 3 }).unwrap().satisfied);
    }

    #[test]
    fn fact_hypotheses_are_named() {
        let err = check_fact(Fact::ScaledBinomial { theta: 1.5, x: 10.0, n: 3 }).unwrap_err();
        assert!(err.to_string().contains("0 < theta < 1"));
        let err = check_fact(Fact::PowerBelowTwo { theta: 0.3, n: 2 }).unwrap_err();
        assert!(err.to_string().contains("1/(2n)"));
    }

    #[test]
    fn bin_diff_examples() {
        let c = check_bin_diff(6.0, 5.0, 3).unwrap();
        assert_eq!((c.lower, c.lhs, c.rhs), (Some(6.0), 10.0, 15.0));
        assert!(c.satisfied);
        assert!(check_bin_diff(7.5, 6.2, 4).unwrap().satisfied);
        let near = check_bin_diff(5.0 + 1e-7, 5.0, 3).unwrap();
        assert!(near.margin.abs() < 1e-5);
        assert!(check_bin_diff(5.0, 6.0, 3).is_err());
    }

    #[test]
    fn quadratic_example() {
        let u = consistent_u(9.0, 8.0, 2).unwrap();
        assert!((u - (1.0 + 353f64.sqrt()) / 2.0).abs() < 1e-12);
        let c = check_bin_shadow(u, 9.0, 8.0, 2, 1, ShadowMode::Quadratic { c: 1.0 }).unwrap();
        assert!(c.satisfied);
        // w = 8 is not below u - 1 - c ≈ 7.894, so the side condition fails
        assert!(!c.hypotheses_met);
        assert!((c.rhs - (10.0 - 1.0 / u)).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_triple_rejected() {
        let err = check_bin_shadow(10.0, 9.0, 8.0, 3, 1, ShadowMode::Defect).unwrap_err();
        assert!(matches!(err, crate::Error::Precondition(_)));
    }

    #[test]
    fn defect_vanishes_at_level_r() {
        let (v, w) = (12.3, 7.1);
        let u = consistent_u(v, w, 4).unwrap();
        assert!(defect(u, v, w, 4).abs() < 1e-9 * gbinom(u, 4));
        assert!(x_r_after_substitution(u, v, w, 4).abs() < 1e-8);
        let direct = defect(u, v, w, 3);
        let via = x_r_minus_one_after_substitution(u, v, w, 4);
        assert!((direct - via).abs() < 1e-8 * direct.abs().max(1.0));
    }

    #[test]
    fn defect_grid_records_margins() {
        let us: Vec<f64> = (20..=200).step_by(10).map(|u| u as f64).collect();
        let grid = defect_grid(3, 1, &us, 0.5).unwrap();
        assert_eq!(grid.len(), us.len());
        assert!(grid.iter().all(|g| g.hypotheses_met && g.margin.is_finite()));
    }
}

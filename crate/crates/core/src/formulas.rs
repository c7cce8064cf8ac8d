//! Closed-form expressions for uniform random temporal graphs: expected
//! temporal-path counts in the clique, the star graph's maximum expected
//! temporal distance, the extend-try time bound and success bound, and the
//! bridges optimum.
//!
//! Factorial ratios are evaluated in log space (they overflow f64 near
//! n = 170); exact `BigRational` twins exist for the path-count formulas so
//! tests can compare against enumeration without any float tolerance.

use std::f64::consts::{E, PI};
use std::sync::LazyLock;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

const LN_FACT_TABLE_SIZE: usize = 257;

static LN_FACT_TABLE: LazyLock<[f64; LN_FACT_TABLE_SIZE]> = LazyLock::new(|| {
    let mut table = [0.0f64; LN_FACT_TABLE_SIZE];
    // Kahan summation keeps the cumulative ln-sum at ~1 ulp.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (i, slot) in table.iter_mut().enumerate().skip(1) {
        let y = (i as f64).ln() - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        *slot = sum;
    }
    table
});

/// `ln(n!)`: tabulated below 257, Stirling series above (absolute error
/// under 1e-15 either way).
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < LN_FACT_TABLE_SIZE {
        return LN_FACT_TABLE[n as usize];
    }
    let x = n as f64;
    let x2 = x * x;
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x2 * x2 * x)
}

fn big_factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Falling factorial `n (n-1) ... (n-k+1)` with `k` factors.
fn big_falling(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// Expected number of temporal paths of length `n-1` in the uniform random
/// temporal clique K_n with `a = n-1`: `n! / (n-1)^(n-1)`.
pub fn expected_paths_full(n: u64) -> Result<f64> {
    Ok(expected_paths(&PathCountQuery {
        n,
        k: n.saturating_sub(1),
        a: n.saturating_sub(1),
    })?
    .value)
}

/// Exact-rational twin of [`expected_paths_full`].
pub fn expected_paths_full_exact(n: u64) -> Result<BigRational> {
    expected_paths_exact(&PathCountQuery {
        n,
        k: n.saturating_sub(1),
        a: n.saturating_sub(1),
    })
}

/// Probability that `k` labels drawn uniformly and independently from
/// `{1..=a}` come out strictly increasing: `a! / (k! a^k (a-k)!)`.
/// Zero when `k > a` (no strictly increasing assignment exists).
pub fn phi(k: u64, a: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid_input("phi: k must be >= 1"));
    }
    if a == 0 {
        return Err(Error::invalid_input("phi: a must be >= 1"));
    }
    if k > a {
        return Ok(0.0);
    }
    let ln = ln_factorial(a) - ln_factorial(k) - ln_factorial(a - k) - k as f64 * (a as f64).ln();
    // phi is a probability; log-space rounding can land a hair above 1.
    Ok(ln.exp().min(1.0))
}

/// Exact-rational twin of [`phi`].
pub fn phi_exact(k: u64, a: u64) -> Result<BigRational> {
    if k == 0 || a == 0 {
        return Err(Error::invalid_input("phi: k and a must be >= 1"));
    }
    if k > a {
        return Ok(BigRational::zero());
    }
    let numer = big_falling(a, k);
    let denom = big_factorial(k) * BigInt::from(a).pow(k as u32);
    Ok(BigRational::new(numer, denom))
}

/// Parameters of an expected-path-count query on the uniform random
/// temporal clique: `n` vertices, paths of `k` edges, labels from `{1..=a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathCountQuery {
    pub n: u64,
    pub k: u64,
    pub a: u64,
}

impl PathCountQuery {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid_input("path count: n must be >= 2"));
        }
        if self.k == 0 {
            return Err(Error::invalid_input("path count: k must be >= 1"));
        }
        if self.a == 0 {
            return Err(Error::invalid_input("path count: a must be >= 1"));
        }
        if self.k > self.n - 1 {
            return Err(Error::invalid_input(format!(
                "path count: no simple path of {} edges in a clique of {} vertices",
                self.k, self.n
            )));
        }
        Ok(())
    }
}

/// Expected path count plus the large-`a` approximation
/// `n (n-1) ... (n-k) / k!` (good when `a >> k`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathCountValue {
    pub value: f64,
    pub large_a_approx: f64,
}

/// Expected number of temporal paths of `k` edges in the uniform random
/// temporal clique: `n! a! / ((n-k-1)! k! a^k (a-k)!)`. Counts ordered
/// vertex sequences; zero when `k > a`.
pub fn expected_paths(query: &PathCountQuery) -> Result<PathCountValue> {
    query.validate()?;
    let &PathCountQuery { n, k, a } = query;
    // n (n-1) ... (n-k) = n! / (n-k-1)!, i.e. ordered sequences of k+1
    // distinct vertices.
    let ln_sequences = ln_factorial(n) - ln_factorial(n - k - 1);
    let large_a_approx = (ln_sequences - ln_factorial(k)).exp();
    let value = if k > a {
        0.0
    } else {
        (ln_sequences + ln_factorial(a)
            - ln_factorial(k)
            - ln_factorial(a - k)
            - k as f64 * (a as f64).ln())
        .exp()
    };
    Ok(PathCountValue {
        value,
        large_a_approx,
    })
}

/// Exact-rational twin of [`expected_paths`].
pub fn expected_paths_exact(query: &PathCountQuery) -> Result<BigRational> {
    query.validate()?;
    let &PathCountQuery { n, k, a } = query;
    let sequences = BigRational::from(big_falling(n, k + 1));
    Ok(sequences * phi_exact(k, a)?)
}

/// The star-graph closed form and its two components.
///
/// `value = (a-1)(a+1)(a+2)/(6a^2) + n'(a+1)/(2a)`, assembled as
/// `cond_exp * (1 - p_fail) + n' * p_fail` with
/// `cond_exp = (a+1)(a+2)/(3a)` and `p_fail = P(l2 <= l1) = (a+1)/(2a)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StarMd {
    pub value: f64,
    pub cond_exp: f64,
    pub p_fail: f64,
}

/// Maximum expected temporal distance of the uniform random temporal star
/// per the closed form above. Requires `nprime >= (a+1)/2` (the slow journey
/// must not beat the mean label).
pub fn star_md(a: u64, nprime: f64) -> Result<StarMd> {
    if a == 0 {
        return Err(Error::invalid_input("star_md: a must be >= 1"));
    }
    let af = a as f64;
    if !nprime.is_finite() || nprime < (af + 1.0) / 2.0 {
        return Err(Error::invalid_input(format!(
            "star_md: nprime {} below (a+1)/2 = {}",
            nprime,
            (af + 1.0) / 2.0
        )));
    }
    let cond_exp = (af + 1.0) * (af + 2.0) / (3.0 * af);
    let p_fail = (af + 1.0) / (2.0 * af);
    Ok(StarMd {
        value: cond_exp * (1.0 - p_fail) + nprime * p_fail,
        cond_exp,
        p_fail,
    })
}

/// Derived parameters of the extend-try algorithm on the normalized uniform
/// random temporal clique K_n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtendTryParams {
    pub n: u64,
    pub c1: f64,
    pub r: f64,
    /// `k = r ln n`: width of each extension label window.
    pub k: f64,
    /// `t0 = c1 sqrt(n) (ln n) k + sqrt(n)`: claimed arrival-time bound; the
    /// success window is the open interval `(t0 - sqrt(n), t0)`.
    pub t0: f64,
    /// `(1 - n^-c1)(1 - e n^-r)`, clamped below at 0 (the raw product is
    /// negative, hence vacuous, when `n^r < e`).
    pub success_bound: f64,
    /// Set when `c1 <= 1` or `r <= 1`: outside the analyzed regime, allowed
    /// for desk-scale experiments only.
    pub small_params_warning: bool,
}

impl ExtendTryParams {
    /// Lower end of the open success window `(c1 sqrt(n) (ln n) k, t0)`.
    pub fn window_lower(&self) -> f64 {
        self.t0 - (self.n as f64).sqrt()
    }

    /// No integer label in `{1..=n}` can fall in the success window once its
    /// lower end reaches `n`.
    pub fn window_reachable(&self) -> bool {
        self.window_lower() < self.n as f64
    }

    /// Iterations run `i = 0 ..= floor(c1 sqrt(n) ln n)`.
    pub fn max_hops(&self) -> u64 {
        (self.c1 * (self.n as f64).sqrt() * (self.n as f64).ln()).floor() as u64
    }

    /// Open label window `(k i, k (i+1))` for the extension step `i`.
    pub fn extension_window(&self, i: u64) -> (f64, f64) {
        (self.k * i as f64, self.k * (i + 1) as f64)
    }
}

/// Computes the derived extend-try parameters. `c1` and `r` must be
/// positive; values at or below 1 are permitted but flagged.
pub fn extend_try_params(n: u64, c1: f64, r: f64) -> Result<ExtendTryParams> {
    if n < 2 {
        return Err(Error::invalid_input("extend_try_params: n must be >= 2"));
    }
    if !c1.is_finite() || !r.is_finite() || c1 <= 0.0 || r <= 0.0 {
        return Err(Error::invalid_input(
            "extend_try_params: c1 and r must be positive",
        ));
    }
    let nf = n as f64;
    let k = r * nf.ln();
    let t0 = c1 * nf.sqrt() * nf.ln() * k + nf.sqrt();
    let raw = (1.0 - nf.powf(-c1)) * (1.0 - E * nf.powf(-r));
    Ok(ExtendTryParams {
        n,
        c1,
        r,
        k,
        t0,
        success_bound: raw.max(0.0),
        small_params_warning: c1 <= 1.0 || r <= 1.0,
    })
}

/// Optimal maximum cost of the bridges problem: `ceil(sqrt(2n) + 1/2)`,
/// computed as the smallest `m` with `(2m-1)^2 >= 8n` so no float rounding
/// can misplace a ceiling boundary.
pub fn bridges_opt_formula(n: u64) -> u64 {
    assert!(n >= 1, "bridges_opt_formula: n >= 1");
    let target = 8 * n;
    let mut c = target.isqrt();
    if c * c < target {
        c += 1;
    }
    // c = ceil(sqrt(8n)); smallest m with 2m - 1 >= c.
    (c + 1).div_ceil(2)
}

/// One catalog entry for the CLI's formula listing.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FormulaEntry {
    pub name: &'static str,
    pub expression: &'static str,
    pub citation: &'static str,
}

pub mod citations {
    pub const PATH_COUNT_FULL: &str =
        "expected number of temporal paths of length n-1 in the uniform random temporal clique with a = n-1";
    pub const PHI: &str =
        "probability that k independent uniform labels from {1..a} are strictly increasing";
    pub const PATH_COUNT: &str =
        "expected number of temporal paths of length k in the uniform random temporal clique";
    pub const PATH_COUNT_LARGE_A: &str =
        "large-a approximation of the expected temporal path count";
    pub const STAR_MD: &str =
        "closed form for the maximum expected temporal distance of the uniform random temporal star";
    pub const STAR_COND_EXP: &str =
        "closed-form component: expected arrival of the second star edge given it is usable";
    pub const STAR_P_FAIL: &str =
        "closed-form component: probability the second star edge is not usable, P(l2 <= l1)";
    pub const EXTEND_TRY_BOUND: &str =
        "extend-try success probability lower bound on the normalized uniform random temporal clique";
    pub const EXTEND_TRY_T0: &str = "extend-try arrival-time bound t0";
    pub const BRIDGES_OPT: &str = "closed form for the bridges problem optimum";
    pub const FOREMOST: &str =
        "foremost-journey temporal distance, delta' and delta = min(delta', n')";
    pub const MD: &str =
        "maximum expected temporal distance: max over vertex pairs of E(min(delta', n'))";
    pub const TD: &str = "temporal diameter: E(min(max-pair delta', n'))";
    pub const BRIDGES: &str =
        "bridges min-max assignment: minimize the maximum bridge cost m_i + i";
    pub const SAMPLING: &str = "uniform single-label random edge labeling over {1..a}";
    pub const CATALOG: &str = "catalog of the closed forms evaluated by this crate";
}

/// Every closed form this crate evaluates, with a stable citation string.
pub fn catalog() -> Vec<FormulaEntry> {
    vec![
        FormulaEntry {
            name: "expected_paths_full",
            expression: "n! / (n-1)^(n-1)",
            citation: citations::PATH_COUNT_FULL,
        },
        FormulaEntry {
            name: "phi",
            expression: "a! / (k! a^k (a-k)!)",
            citation: citations::PHI,
        },
        FormulaEntry {
            name: "expected_paths",
            expression: "n! a! / ((n-k-1)! k! a^k (a-k)!)",
            citation: citations::PATH_COUNT,
        },
        FormulaEntry {
            name: "expected_paths_large_a",
            expression: "n (n-1) ... (n-k) / k!",
            citation: citations::PATH_COUNT_LARGE_A,
        },
        FormulaEntry {
            name: "star_md",
            expression: "(a-1)(a+1)(a+2) / (6 a^2) + n' (a+1) / (2a)",
            citation: citations::STAR_MD,
        },
        FormulaEntry {
            name: "star_cond_exp",
            expression: "(a+1)(a+2) / (3a)",
            citation: citations::STAR_COND_EXP,
        },
        FormulaEntry {
            name: "star_p_fail",
            expression: "(a+1) / (2a)",
            citation: citations::STAR_P_FAIL,
        },
        FormulaEntry {
            name: "extend_try_t0",
            expression: "c1 sqrt(n) (ln n) k + sqrt(n), k = r ln n",
            citation: citations::EXTEND_TRY_T0,
        },
        FormulaEntry {
            name: "extend_try_success_bound",
            expression: "(1 - n^-c1)(1 - e n^-r)",
            citation: citations::EXTEND_TRY_BOUND,
        },
        FormulaEntry {
            name: "bridges_opt",
            expression: "ceil(sqrt(2n) + 1/2)",
            citation: citations::BRIDGES_OPT,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn assert_close(x: f64, y: f64, rel: f64) {
        let scale = x.abs().max(y.abs()).max(1e-300);
        assert!((x - y).abs() / scale <= rel, "{x} vs {y} (rel {rel})");
    }

    #[test]
    fn full_length_path_count_small_values() {
        assert_close(expected_paths_full(2).unwrap(), 2.0, 1e-12);
        assert_close(expected_paths_full(3).unwrap(), 1.5, 1e-12);
        assert_close(expected_paths_full(5).unwrap(), 120.0 / 256.0, 1e-12);
        assert_eq!(
            expected_paths_full_exact(3).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
    }

    #[test]
    fn full_length_path_count_decreases_and_vanishes() {
        let mut prev = expected_paths_full(3).unwrap();
        for n in 4..=200 {
            let cur = expected_paths_full(n).unwrap();
            assert!(cur < prev, "not decreasing at n={n}");
            prev = cur;
        }
        assert!(expected_paths_full(50).unwrap() < 1e-6);
    }

    #[test]
    fn log_space_matches_exact_rationals() {
        for n in 2..=20u64 {
            let exact = expected_paths_full_exact(n).unwrap().to_f64().unwrap();
            assert_close(expected_paths_full(n).unwrap(), exact, 1e-12);
        }
    }

    #[test]
    fn phi_edge_cases() {
        for a in 1..=30u64 {
            assert_close(phi(1, a).unwrap(), 1.0, 1e-12);
            assert_close(phi(a, a).unwrap(), (a as f64).powi(-(a as i32)), 1e-12);
        }
        assert_close(phi(2, 3).unwrap(), 1.0 / 3.0, 1e-12);
        assert_eq!(phi(4, 3).unwrap(), 0.0);
        assert!(phi(0, 3).is_err());
    }

    #[test]
    fn phi_is_nonincreasing_in_k() {
        for a in 1..=12u64 {
            let mut prev = phi(1, a).unwrap();
            assert!(prev <= 1.0 && prev > 0.0);
            for k in 2..=a {
                let cur = phi(k, a).unwrap();
                assert!(cur <= prev && cur > 0.0);
                prev = cur;
            }
        }
    }

    #[test]
    fn path_count_examples() {
        let v = expected_paths(&PathCountQuery { n: 3, k: 1, a: 3 }).unwrap();
        assert_close(v.value, 6.0, 1e-12);
        let v = expected_paths(&PathCountQuery { n: 3, k: 2, a: 3 }).unwrap();
        assert_close(v.value, 2.0, 1e-12);
        // Huge a: the approximation takes over.
        let v = expected_paths(&PathCountQuery {
            n: 4,
            k: 2,
            a: 1_000_000,
        })
        .unwrap();
        assert_close(v.value, 12.0, 1e-3);
        assert_close(v.large_a_approx, 12.0, 1e-9);
    }

    #[test]
    fn path_count_factorization_identity() {
        // value = n (n-1)!/(n-k-1)! * phi(k, a), exactly in rationals.
        for n in 2..=8u64 {
            for k in 1..n {
                for a in 1..=8u64 {
                    let q = PathCountQuery { n, k, a };
                    let lhs = expected_paths_exact(&q).unwrap();
                    let rhs = BigRational::from(big_falling(n, k + 1)) * phi_exact(k, a).unwrap();
                    assert_eq!(lhs, rhs);
                    let f = expected_paths(&q).unwrap().value;
                    assert_close(f, lhs.to_f64().unwrap(), 1e-12);
                }
            }
        }
    }

    #[test]
    fn path_count_too_long_is_an_error() {
        assert!(expected_paths(&PathCountQuery { n: 3, k: 3, a: 9 }).is_err());
        assert!(expected_paths(&PathCountQuery { n: 1, k: 1, a: 1 }).is_err());
    }

    #[test]
    fn star_md_values() {
        // a = 1: labels are all 1, never increasing; only the slow journey.
        assert_close(star_md(1, 3.0).unwrap().value, 3.0, 1e-12);
        assert_close(star_md(2, 2.0).unwrap().value, 2.0, 1e-12);
        let s = star_md(10, 10.0).unwrap();
        assert_close(s.value, 7.48, 1e-12);
        assert_close(s.cond_exp, 4.4, 1e-12);
        assert_close(s.p_fail, 0.55, 1e-12);
        assert!(star_md(10, 4.0).is_err());
    }

    #[test]
    fn star_md_component_identity() {
        for a in 1..=50u64 {
            let af = a as f64;
            let nprime = af;
            if nprime < (af + 1.0) / 2.0 {
                continue;
            }
            let s = star_md(a, nprime).unwrap();
            let direct = (af - 1.0) * (af + 1.0) * (af + 2.0) / (6.0 * af * af)
                + nprime * (af + 1.0) / (2.0 * af);
            assert_close(s.value, direct, 1e-12);
        }
    }

    #[test]
    fn extend_try_params_values() {
        let p = extend_try_params(100, 2.0, 2.0).unwrap();
        assert!(!p.small_params_warning);
        assert_close(p.k, 2.0 * (100f64).ln(), 1e-12);
        assert_close(p.t0, 858.3, 2e-4);
        assert_close(p.success_bound, (1.0 - 1e-4) * (1.0 - E * 1e-4), 1e-10);
        // The window starts near 848, far above n = 100.
        assert!(!p.window_reachable());
        assert!((p.window_lower() - 848.3).abs() < 0.1);

        let small = extend_try_params(400, 0.3, 0.3).unwrap();
        assert!(small.small_params_warning);
        assert!(small.window_reachable());
        assert!(extend_try_params(10, -1.0, 2.0).is_err());
    }

    #[test]
    fn success_bound_stays_in_unit_interval() {
        for n in 2..=300u64 {
            for &(c1, r) in &[(0.2, 0.2), (1.0, 1.0), (1.1, 1.1), (2.0, 3.0), (5.0, 0.1)] {
                let p = extend_try_params(n, c1, r).unwrap();
                assert!(
                    (0.0..1.0).contains(&p.success_bound),
                    "bound {} out of range at n={n} c1={c1} r={r}",
                    p.success_bound
                );
            }
        }
    }

    #[test]
    fn bridges_formula_small_cases() {
        assert_eq!(bridges_opt_formula(1), 2);
        assert_eq!(bridges_opt_formula(2), 3);
        assert_eq!(bridges_opt_formula(3), 3);
        assert_eq!(bridges_opt_formula(8), 5);
        // Perfect-square boundary: 2n = 36 gives sqrt = 6 exactly, OPT = 7.
        assert_eq!(bridges_opt_formula(18), 7);
    }

    #[test]
    fn catalog_is_complete_and_named() {
        let cat = catalog();
        assert!(cat.len() >= 10);
        assert!(cat.iter().all(|e| !e.citation.is_empty()));
    }
}

//! Closed-form evaluators for the communication / space complexity bounds,
//! using the explicit constants carried by the underlying proofs (8/15 for
//! the lower bounds, 8/epsilon for the sample-complexity upper bound).
//! Outputs are proof-constant evaluations of asymptotic statements, not
//! tight constants.
//!
//! Known looseness, reported as-is: the k-machine forms carry a factor
//! (1-2*epsilon) where the 2-machine forms carry (1-epsilon); the
//! symmetrization argument behind the k-machine reduction introduces the
//! extra factor of 2 on epsilon, so the two families do not meet at k=2.
//! No reconciliation is attempted here.

use crate::error::{Error, Result};

/// All scalar parameters the evaluators draw from.
#[derive(Debug, Clone, Copy)]
pub struct BoundsQuery {
    /// Target error rate of the learned hypothesis, in (0,1).
    pub epsilon: f64,
    /// Malicious error rate of the oracles, in [0, epsilon).
    pub lambda: f64,
    /// VC-dimension of the hypothesis class.
    pub d: u32,
    /// Number of communication rounds.
    pub t: u32,
    /// Number of machines.
    pub k: u32,
    /// Number of streaming passes.
    pub r: u32,
    /// log2 of the hypothesis-class size.
    pub log2_hypothesis_count: f64,
    /// Failure probability, in (0,1).
    pub delta: f64,
    /// Description length of one example, in units.
    pub bits_per_example: f64,
}

impl Default for BoundsQuery {
    fn default() -> Self {
        BoundsQuery {
            epsilon: 0.1,
            lambda: 0.0,
            d: 1,
            t: 1,
            k: 2,
            r: 1,
            log2_hypothesis_count: 1.0,
            delta: 0.1,
            bits_per_example: 1.0,
        }
    }
}

impl BoundsQuery {
    fn check_eps_lambda(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::param(
                "epsilon",
                format!("must be in (0,1), got {}", self.epsilon),
            ));
        }
        if !(self.lambda >= 0.0) {
            return Err(Error::param("lambda", "must be >= 0"));
        }
        if self.lambda >= self.epsilon {
            return Err(Error::param(
                "lambda",
                format!(
                    "must be < epsilon ({} >= {})",
                    self.lambda, self.epsilon
                ),
            ));
        }
        Ok(())
    }

    fn check_counts(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::param("d", "VC-dimension must be >= 1"));
        }
        if self.t == 0 {
            return Err(Error::param("t", "round count must be >= 1"));
        }
        if self.k < 2 {
            return Err(Error::param("k", "machine count must be >= 2"));
        }
        if self.r == 0 {
            return Err(Error::param("r", "pass count must be >= 1"));
        }
        Ok(())
    }
}

/// (8(1-eps) / 15(1-lambda)) * d: the 1-round 2-machine lower bound.
pub fn lb_2machine_1round(q: &BoundsQuery) -> Result<f64> {
    q.check_eps_lambda()?;
    q.check_counts()?;
    Ok((8.0 * (1.0 - q.epsilon)) / (15.0 * (1.0 - q.lambda)) * q.d as f64)
}

/// The 1-round value divided by t^2.
pub fn lb_2machine_tround(q: &BoundsQuery) -> Result<f64> {
    let one_round = lb_2machine_1round(q)?;
    Ok(one_round / (q.t as f64 * q.t as f64))
}

/// (8(1-2eps) / 15(1-lambda)) * d * k. The bound is vacuous (0) once
/// epsilon reaches 1/2.
pub fn lb_kmachine_1round(q: &BoundsQuery) -> Result<f64> {
    q.check_eps_lambda()?;
    q.check_counts()?;
    if q.epsilon >= 0.5 {
        return Ok(0.0);
    }
    Ok((8.0 * (1.0 - 2.0 * q.epsilon)) / (15.0 * (1.0 - q.lambda)) * q.d as f64 * q.k as f64)
}

/// The 1-round k-machine value divided by t^2.
pub fn lb_kmachine_tround(q: &BoundsQuery) -> Result<f64> {
    let one_round = lb_kmachine_1round(q)?;
    Ok(one_round / (q.t as f64 * q.t as f64))
}

/// (8(1-eps) / 15(1-lambda)) * d / r: the r-pass streaming space bound,
/// inheriting the 2-machine proof constant through the online-to-distributed
/// reduction.
pub fn space_lb_online(q: &BoundsQuery) -> Result<f64> {
    let one_round = lb_2machine_1round(q)?;
    Ok(one_round / q.r as f64)
}

/// The 1-round 2-machine bound specialized to half-spaces in R^p
/// (VC-dimension p+1).
pub fn halfspace_lb(q: &BoundsQuery, p: u32) -> Result<f64> {
    if p == 0 {
        return Err(Error::param("p", "dimension must be >= 1"));
    }
    let specialized = BoundsQuery { d: p + 1, ..*q };
    lb_2machine_1round(&specialized)
}

/// ceil((8/eps) * ((1-lambda)/(1-2lambda)^2) * (ln|H| + ln(2/delta))):
/// examples required by a consistency-based learner tolerant to the
/// malicious rate lambda.
pub fn sample_complexity(q: &BoundsQuery) -> Result<u64> {
    if !(q.epsilon > 0.0 && q.epsilon < 1.0) {
        return Err(Error::param("epsilon", "must be in (0,1)"));
    }
    if !(q.delta > 0.0 && q.delta < 1.0) {
        return Err(Error::param("delta", "must be in (0,1)"));
    }
    if !(0.0..0.5).contains(&q.lambda) {
        return Err(Error::param(
            "lambda",
            format!("must satisfy 0 <= lambda < 1/2, got {}", q.lambda),
        ));
    }
    if q.log2_hypothesis_count < 0.0 {
        return Err(Error::param("log2_hypothesis_count", "must be >= 0"));
    }
    let ln_h = q.log2_hypothesis_count * std::f64::consts::LN_2;
    let robust = (1.0 - q.lambda) / (1.0 - 2.0 * q.lambda).powi(2);
    let m = (8.0 / q.epsilon) * robust * (ln_h + (2.0 / q.delta).ln());
    Ok(m.ceil() as u64)
}

/// b * sample_complexity(q): total units for shipping the required sample.
pub fn cc_upper_bound(q: &BoundsQuery) -> Result<f64> {
    if !(q.bits_per_example > 0.0) {
        return Err(Error::param("bits_per_example", "must be > 0"));
    }
    Ok(q.bits_per_example * sample_complexity(q)? as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BoundsQuery {
        BoundsQuery::default()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn one_round_two_machine_golden_values() {
        let v = lb_2machine_1round(&BoundsQuery { d: 10, ..q() }).unwrap();
        assert!(close(v, 4.8), "{v}");
        let v = lb_2machine_1round(&BoundsQuery {
            lambda: 0.05,
            d: 100,
            ..q()
        })
        .unwrap();
        assert!(close(v, 50.526315789473685), "{v}");
        // (1 - epsilon) factor vanishes
        let v = lb_2machine_1round(&BoundsQuery {
            epsilon: 1.0 - 1e-12,
            d: 10,
            ..q()
        })
        .unwrap();
        assert!(v < 1e-10);
    }

    #[test]
    fn at_lambda_zero_reduces_to_eight_fifteenths() {
        for d in [1u32, 7, 33] {
            for eps in [0.05, 0.2, 0.4] {
                let v = lb_2machine_1round(&BoundsQuery {
                    epsilon: eps,
                    d,
                    ..q()
                })
                .unwrap();
                assert!(close(v, 8.0 / 15.0 * (1.0 - eps) * d as f64));
            }
        }
    }

    #[test]
    fn t_round_divides_by_t_squared() {
        let base = BoundsQuery { d: 100, ..q() };
        let one = lb_2machine_1round(&base).unwrap();
        assert!(close(lb_2machine_tround(&base).unwrap(), one));
        let two = lb_2machine_tround(&BoundsQuery { t: 2, ..base }).unwrap();
        assert!(close(two, 12.0), "{two}");
        let four = lb_2machine_tround(&BoundsQuery { t: 4, ..base }).unwrap();
        assert!(close(two / four, 4.0));
    }

    #[test]
    fn k_machine_golden_values() {
        let v = lb_kmachine_1round(&BoundsQuery {
            d: 10,
            k: 4,
            ..q()
        })
        .unwrap();
        assert!(close(v, 17.066666666666666), "{v}");
        let vacuous = lb_kmachine_1round(&BoundsQuery {
            epsilon: 0.5,
            d: 10,
            k: 4,
            ..q()
        })
        .unwrap();
        assert_eq!(vacuous, 0.0);
        // k=2 ratio against the 2-machine form: 2(1-2e)/(1-e)
        let eps = 0.1;
        let a = lb_kmachine_1round(&BoundsQuery {
            epsilon: eps,
            lambda: 0.05,
            d: 33,
            k: 2,
            ..q()
        })
        .unwrap();
        let b = lb_2machine_1round(&BoundsQuery {
            epsilon: eps,
            lambda: 0.05,
            d: 33,
            ..q()
        })
        .unwrap();
        assert!(close(a / b, 2.0 * (1.0 - 2.0 * eps) / (1.0 - eps)));
    }

    #[test]
    fn k_machine_t_round_golden_value() {
        let v = lb_kmachine_tround(&BoundsQuery {
            lambda: 0.1,
            d: 100,
            k: 4,
            t: 2,
            ..q()
        })
        .unwrap();
        assert!(close(v, 47.407407407407405), "{v}");
        assert!(close(
            lb_kmachine_tround(&BoundsQuery { d: 10, k: 4, ..q() }).unwrap(),
            lb_kmachine_1round(&BoundsQuery { d: 10, k: 4, ..q() }).unwrap()
        ));
    }

    #[test]
    fn space_bound_golden_values() {
        let base = BoundsQuery { d: 100, ..q() };
        assert!(close(
            space_lb_online(&base).unwrap(),
            lb_2machine_1round(&base).unwrap()
        ));
        let v = space_lb_online(&BoundsQuery { r: 5, ..base }).unwrap();
        assert!(close(v, 9.6), "{v}");
        let distant = space_lb_online(&BoundsQuery { r: 1_000_000, ..base }).unwrap();
        assert!(distant < 1e-3);
    }

    #[test]
    fn halfspace_specialization() {
        let v = halfspace_lb(
            &BoundsQuery {
                lambda: 0.1,
                ..q()
            },
            100,
        )
        .unwrap();
        assert!(close(v, 53.86666666666667), "{v}");
        assert!(halfspace_lb(&q(), 0).is_err());
        // value scales as 1/(1-lambda): v(0.2)/v(0) = 1.25
        let v0 = halfspace_lb(&q(), 40).unwrap();
        let v2 = halfspace_lb(
            &BoundsQuery {
                lambda: 0.2,
                epsilon: 0.3,
                ..q()
            },
            40,
        )
        .unwrap();
        let v0b = halfspace_lb(&BoundsQuery { epsilon: 0.3, ..q() }, 40).unwrap();
        assert!(close(v2 / v0b, 1.25));
        let _ = v0;
    }

    #[test]
    fn sample_complexity_golden_values() {
        let m = sample_complexity(&BoundsQuery {
            log2_hypothesis_count: 10.0,
            ..q()
        })
        .unwrap();
        assert_eq!(m, 795);
        let m100 = sample_complexity(&BoundsQuery {
            log2_hypothesis_count: 100.0,
            ..q()
        })
        .unwrap();
        assert_eq!(m100, 5785);
        // robustness factor (1-lambda)/(1-2lambda)^2 = 2.22.. at lambda = 0.2
        let noisy = sample_complexity(&BoundsQuery {
            lambda: 0.2,
            epsilon: 0.3,
            log2_hypothesis_count: 10.0,
            ..q()
        })
        .unwrap();
        let clean = sample_complexity(&BoundsQuery {
            epsilon: 0.3,
            log2_hypothesis_count: 10.0,
            ..q()
        })
        .unwrap();
        let ratio = noisy as f64 / clean as f64;
        assert!((ratio - 0.8 / 0.36).abs() < 0.01, "{ratio}");
        // positivity at |H| = 1
        let tiny = sample_complexity(&BoundsQuery {
            log2_hypothesis_count: 0.0,
            delta: 0.999,
            ..q()
        })
        .unwrap();
        assert!(tiny > 0);
        assert!(sample_complexity(&BoundsQuery { lambda: 0.5, epsilon: 0.6, ..q() }).is_err());
    }

    #[test]
    fn upper_bound_scales_with_description_length() {
        let base = BoundsQuery {
            log2_hypothesis_count: 10.0,
            bits_per_example: 101.0,
            ..q()
        };
        assert!(close(cc_upper_bound(&base).unwrap(), 80_295.0));
        let unit = cc_upper_bound(&BoundsQuery {
            bits_per_example: 1.0,
            ..base
        })
        .unwrap();
        assert!(close(unit, 795.0));
    }

    #[test]
    fn upper_bound_dominates_lower_bound_on_grid() {
        for i in 0..8 {
            let eps = 0.05 + 0.05 * i as f64;
            for j in 0..6 {
                let lambda = eps * j as f64 / 6.0;
                if lambda >= 0.5 {
                    continue;
                }
                for p in [5u32, 50, 200] {
                    let query = BoundsQuery {
                        epsilon: eps,
                        lambda,
                        d: p + 1,
                        log2_hypothesis_count: p as f64,
                        bits_per_example: (p + 1) as f64,
                        ..q()
                    };
                    let lower = lb_2machine_1round(&query).unwrap();
                    let upper = cc_upper_bound(&query).unwrap();
                    assert!(
                        upper >= lower,
                        "upper {upper} < lower {lower} at eps={eps}, lambda={lambda}, p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn lambda_at_least_epsilon_is_rejected() {
        assert!(lb_2machine_1round(&BoundsQuery {
            lambda: 0.1,
            epsilon: 0.1,
            ..q()
        })
        .is_err());
        assert!(lb_kmachine_1round(&BoundsQuery {
            lambda: 0.2,
            epsilon: 0.1,
            ..q()
        })
        .is_err());
    }

    #[test]
    fn monotonicity_and_scaling_grid() {
        // 10 epsilon values x 10 lambda fractions x 4 count values
        let eps_grid: Vec<f64> = (0..10).map(|i| 0.05 + 0.035 * i as f64).collect();
        for &eps in &eps_grid {
            let lambdas: Vec<f64> = (0..10)
                .map(|j| eps * j as f64 / 10.0)
                .filter(|l| *l < 0.5)
                .collect();
            // non-decreasing in lambda at fixed epsilon
            let mut prev = f64::MIN;
            for &lambda in &lambdas {
                let v = lb_2machine_1round(&BoundsQuery {
                    epsilon: eps,
                    lambda,
                    d: 64,
                    ..q()
                })
                .unwrap();
                assert!(v >= prev - 1e-12);
                prev = v;
                let vk = lb_kmachine_tround(&BoundsQuery {
                    epsilon: eps,
                    lambda,
                    d: 64,
                    k: 4,
                    t: 3,
                    ..q()
                })
                .unwrap();
                assert!(vk >= 0.0);
            }
            // linear in d and k; 1/t^2; 1/r
            for m in [1u32, 2, 5, 9] {
                let base = BoundsQuery {
                    epsilon: eps,
                    lambda: eps / 2.0_f64.min(0.49),
                    d: 16,
                    ..q()
                };
                let unit = lb_2machine_1round(&base).unwrap();
                let scaled = lb_2machine_1round(&BoundsQuery {
                    d: 16 * m,
                    ..base
                })
                .unwrap();
                assert!((scaled - unit * m as f64).abs() < 1e-9 * scaled.abs().max(1.0));

                let k_unit = lb_kmachine_1round(&BoundsQuery { k: 2, ..base }).unwrap();
                let k_scaled = lb_kmachine_1round(&BoundsQuery { k: 2 * m, ..base }).unwrap();
                assert!((k_scaled - k_unit * m as f64).abs() < 1e-9 * k_scaled.abs().max(1.0));

                let t_unit = lb_2machine_tround(&base).unwrap();
                let t_scaled = lb_2machine_tround(&BoundsQuery { t: m, ..base }).unwrap();
                assert!(
                    (t_scaled * (m as f64).powi(2) - t_unit).abs()
                        < 1e-9 * t_unit.abs().max(1.0)
                );

                let r_unit = space_lb_online(&base).unwrap();
                let r_scaled = space_lb_online(&BoundsQuery { r: m, ..base }).unwrap();
                assert!((r_scaled * m as f64 - r_unit).abs() < 1e-9 * r_unit.abs().max(1.0));
            }
            // non-increasing in epsilon at fixed lambda = 0
            let mut prev_eps_val = f64::MAX;
            for &e2 in &eps_grid {
                let v = lb_2machine_1round(&BoundsQuery {
                    epsilon: e2,
                    d: 64,
                    ..q()
                })
                .unwrap();
                assert!(v <= prev_eps_val + 1e-12);
                prev_eps_val = v;
            }
        }
    }
}

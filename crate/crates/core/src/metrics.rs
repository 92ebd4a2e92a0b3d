//! Evaluation metrics for anytime solvers: optimality gap and primal integral.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("event time {time} outside [0, {horizon}]")]
    OutOfHorizon { time: f64, horizon: f64 },
    #[error("event times must be non-decreasing ({previous} then {time})")]
    Unordered { previous: f64, time: f64 },
    #[error("horizon must be finite and nonnegative, got {0}")]
    BadHorizon(f64),
}

/// Relative difference between a primal and a dual bound, in `[0, 1]`.
///
/// 1 when either bound is missing, 0 when they are equal (including both 0).
/// Bounds of opposite signs are clamped to 1.
pub fn optimality_gap(primal: Option<f64>, dual: Option<f64>) -> f64 {
    match (primal, dual) {
        (Some(p), Some(d)) => relative_difference(p, d),
        _ => 1.0,
    }
}

fn relative_difference(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    ((a - b).abs() / a.abs().max(b.abs())).min(1.0)
}

/// Integral over `[0, horizon]` of the primal gap `p(t)`: 1 before the first
/// solution, then the relative difference between the incumbent and
/// `reference` (the best known cost). After `proved_infeasible_at`, `p = 0`.
///
/// `events` are `(time, cost)` pairs with non-decreasing times.
pub fn primal_integral(
    events: &[(f64, f64)],
    reference: Option<f64>,
    horizon: f64,
    proved_infeasible_at: Option<f64>,
) -> Result<f64, MetricsError> {
    if !horizon.is_finite() || horizon < 0.0 {
        return Err(MetricsError::BadHorizon(horizon));
    }
    let check = |time: f64| {
        if (0.0..=horizon).contains(&time) {
            Ok(())
        } else {
            Err(MetricsError::OutOfHorizon { time, horizon })
        }
    };
    let mut previous = 0.0;
    for &(time, _) in events {
        check(time)?;
        if time < previous {
            return Err(MetricsError::Unordered { previous, time });
        }
        previous = time;
    }
    if let Some(t) = proved_infeasible_at {
        check(t)?;
    }
    let end = proved_infeasible_at.unwrap_or(horizon);

    let mut total = 0.0;
    let mut since = 0.0;
    let mut gap = 1.0;
    for &(time, cost) in events {
        if time >= end {
            break;
        }
        total += gap * (time - since);
        since = time;
        gap = reference.map_or(1.0, |r| relative_difference(cost, r));
    }
    total += gap * (end - since);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gap_examples() {
        assert_eq!(optimality_gap(Some(0.0), Some(0.0)), 0.0);
        assert_eq!(optimality_gap(Some(10.0), Some(5.0)), 0.5);
        assert_eq!(optimality_gap(Some(6.0), None), 1.0);
        assert_eq!(optimality_gap(None, Some(6.0)), 1.0);
    }

    #[test]
    fn integral_examples() {
        assert_eq!(primal_integral(&[(0.0, 6.0)], Some(6.0), 10.0, None), Ok(0.0));
        assert_eq!(primal_integral(&[], Some(6.0), 10.0, None), Ok(10.0));
        let events = [(2.0, 10.0), (6.0, 5.0)];
        assert_eq!(primal_integral(&events, Some(5.0), 10.0, None), Ok(4.0));
    }

    #[test]
    fn infeasibility_proof_stops_the_clock() {
        assert_eq!(primal_integral(&[], None, 10.0, Some(3.0)), Ok(3.0));
    }

    #[test]
    fn bad_events_rejected() {
        assert!(primal_integral(&[(11.0, 1.0)], Some(1.0), 10.0, None).is_err());
        assert!(primal_integral(&[(2.0, 2.0), (1.0, 1.0)], Some(1.0), 10.0, None).is_err());
        assert!(primal_integral(&[], None, -1.0, None).is_err());
    }

    proptest! {
        #[test]
        fn gap_is_scale_invariant(p in 1e-3f64..1e6, d in 1e-3f64..1e6, c in 1e-3f64..1e3) {
            let a = optimality_gap(Some(p), Some(d));
            let b = optimality_gap(Some(c * p), Some(c * d));
            prop_assert!((a - b).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn improving_event_never_increases_integral(
            mut costs in proptest::collection::vec(1.0f64..100.0, 0..6),
            times in proptest::collection::vec(0.0f64..10.0, 6),
            extra_time in 0.0f64..10.0,
            factor in 0.0f64..1.0,
        ) {
            costs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let mut times = times[..costs.len()].to_vec();
            times.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let events: Vec<(f64, f64)> = times.into_iter().zip(costs).collect();
            let reference = 0.5;
            let before = primal_integral(&events, Some(reference), 10.0, None).unwrap();
            // a new incumbent no worse than whatever is current at extra_time
            let current = events.iter().filter(|e| e.0 <= extra_time).map(|e| e.1).last();
            let improved = current.unwrap_or(100.0) * factor + reference * (1.0 - factor);
            let mut more = events.clone();
            let at = more.partition_point(|e| e.0 <= extra_time);
            more.insert(at, (extra_time, improved));
            // later events keep their costs unless the new one is better
            for e in more.iter_mut().skip(at + 1) {
                e.1 = e.1.min(improved);
            }
            let after = primal_integral(&more, Some(reference), 10.0, None).unwrap();
            prop_assert!(after <= before + 1e-9, "{} > {}", after, before);
            prop_assert!((0.0..=10.0).contains(&after));
        }
    }
}

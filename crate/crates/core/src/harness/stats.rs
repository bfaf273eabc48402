use serde::{Deserialize, Serialize};

/// Summary of final fitness values over the successful runs of one
/// (algorithm, function) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub best: f64,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub std: f64,
    pub per_run_finals: Vec<f64>,
}

impl RunStats {
    /// `None` when there are no values.
    pub fn from_finals(finals: Vec<f64>) -> Option<RunStats> {
        if finals.is_empty() {
            return None;
        }
        let n = finals.len() as f64;
        let best = finals.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = finals.iter().sum::<f64>() / n;
        let std = if finals.len() > 1 {
            (finals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        // summation error can push the mean a hair outside the sample range
        let worst = finals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(RunStats {
            best,
            mean: mean.clamp(best, worst),
            std,
            per_run_finals: finals,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_run() {
        let s = RunStats::from_finals(vec![3.5]).unwrap();
        assert_eq!((s.best, s.mean, s.std), (3.5, 3.5, 0.0));
        assert!(RunStats::from_finals(vec![]).is_none());
    }

    #[test]
    fn hand_example() {
        let s = RunStats::from_finals(vec![1.0, 2.0, 3.0, 6.0]).unwrap();
        assert_eq!(s.best, 1.0);
        assert_eq!(s.mean, 3.0);
        // deviations -2, -1, 0, 3: (4 + 1 + 0 + 9) / 3
        assert!((s.std - (14.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn best_is_min_and_mean_in_range(v in prop::collection::vec(-1e12f64..1e12, 1..50)) {
            let s = RunStats::from_finals(v.clone()).unwrap();
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(s.best, lo);
            prop_assert!(s.mean >= lo && s.mean <= hi);
        }
    }
}

use crate::{Error, Result};

/// Empirical CDF: the sorted samples paired with `i / n` for the `i`-th
/// order statistic (1-based).
pub fn empirical_cdf(samples: &[f64]) -> Result<Vec<(f64, f64)>> {
    if samples.is_empty() {
        return Err(Error::Contract("empirical CDF of an empty sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, (i + 1) as f64 / n))
        .collect())
}

/// Sample median (mean of the two middle order statistics for even sizes).
pub fn median(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Some(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_sample() {
        assert_eq!(empirical_cdf(&[5.0]).unwrap(), vec![(5.0, 1.0)]);
    }

    #[test]
    fn quarter_steps() {
        let cdf = empirical_cdf(&[3.0, 1.0, 4.0, 2.0]).unwrap();
        let probs: Vec<f64> = cdf.iter().map(|p| p.1).collect();
        assert_eq!(probs, vec![0.25, 0.5, 0.75, 1.0]);
        let values: Vec<f64> = cdf.iter().map(|p| p.0).collect();
        assert_eq!(values, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn empty_is_error() {
        assert!(empirical_cdf(&[]).is_err());
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), Some(2.5));
        assert_eq!(median(&[1.0, f64::INFINITY, f64::INFINITY]), Some(f64::INFINITY));
    }

    proptest! {
        #[test]
        fn cdf_is_monotone(xs in prop::collection::vec(-1e6f64..1e6, 1..200)) {
            let cdf = empirical_cdf(&xs).unwrap();
            prop_assert_eq!(cdf.len(), xs.len());
            for w in cdf.windows(2) {
                prop_assert!(w[0].0 <= w[1].0);
                prop_assert!(w[0].1 < w[1].1);
            }
            prop_assert_eq!(cdf.last().unwrap().1, 1.0);
        }
    }
}

//! 5x2 cross-validation of the disclosure predictor, with accuracy and
//! probabilistic mean absolute error.
//!
//! Each of the five replications shuffles the dataset with its own seed
//! stream and splits it in half (an odd record goes to fold A); both
//! train-on-A/test-on-B and train-on-B/test-on-A are evaluated, giving ten
//! fold measurements. A test instance is predicted by the k-NN vote over
//! the training fold: `p` is the fraction of neighbors disclosing the
//! target, the predicted class is `p > 0.5` (an exact tie predicts
//! not-disclosed, the tighten-leaning reading), and MAE is `mean |p - y|`.
//!
//! Both aggregations of the ten fold values are reported: the mean and
//! sample variance over all ten, and the per-replication means.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::Dataset;
use crate::profile::Attribute;
use crate::recommend::{nearest_among, DistanceConfig, RecommendError};

pub const REPLICATIONS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("dataset of {n} users is too small for k = {k} (need at least {min})")]
    DatasetTooSmall { n: usize, k: usize, min: usize },
    #[error("no predictions to score")]
    NoPredictions,
    #[error(transparent)]
    Recommend(#[from] RecommendError),
}

/// Result of one 5x2 cross-validation run.
///
/// Fold entries are keyed `(replication, fold)` in order: replication 0
/// fold A, replication 0 fold B, replication 1 fold A, ...
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub target: Attribute,
    pub k: usize,
    pub seed: u64,
    pub fold_accuracies: Vec<f64>,
    pub fold_maes: Vec<f64>,
    pub mean_accuracy: f64,
    pub accuracy_variance: f64,
    pub mean_mae: f64,
    pub mae_variance: f64,
    /// Per-replication means (the coarser aggregation).
    pub replication_accuracies: Vec<f64>,
    pub replication_maes: Vec<f64>,
    /// True when every user agrees on the target's disclosure, which makes
    /// the measurement trivial.
    pub degenerate: bool,
}

impl CvResult {
    /// Plain-text table: correctly classified share and mean absolute
    /// error, like the published results layout.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "5x2 cross-validation  target={}  k={}  seed={}\n",
            self.target, self.k, self.seed
        ));
        if self.degenerate {
            out.push_str("note: single-class target, measurement is trivial\n");
        }
        out.push_str(&format!(
            "correctly classified instances  {:.1}%  (variance {:.6})\n",
            self.mean_accuracy * 100.0,
            self.accuracy_variance
        ));
        out.push_str(&format!(
            "mean absolute error             {:.4}  (variance {:.6})\n",
            self.mean_mae, self.mae_variance
        ));
        out.push_str("fold accuracies: ");
        out.push_str(
            &self
                .fold_accuracies
                .iter()
                .map(|a| format!("{a:.3}"))
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push('\n');
        out
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_variance(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
}

/// Accuracy and probabilistic MAE over `(vote fraction, truth)` pairs.
///
/// The predicted class is `p > 0.5`; an exact 0.5 tie resolves to
/// not-disclosed. MAE is the mean of `|p - y|` with `y` in `{0, 1}`.
pub fn classification_metrics(predictions: &[(f64, bool)]) -> Result<(f64, f64), EvalError> {
    if predictions.is_empty() {
        return Err(EvalError::NoPredictions);
    }
    let n = predictions.len() as f64;
    let correct = predictions
        .iter()
        .filter(|(p, y)| (*p > 0.5) == *y)
        .count() as f64;
    let mae = predictions
        .iter()
        .map(|(p, y)| (p - if *y { 1.0 } else { 0.0 }).abs())
        .sum::<f64>()
        / n;
    Ok((correct / n, mae))
}

/// The index partition used by replication `replication` of a run seeded
/// with `seed`: a seeded shuffle split in half, the odd record going to
/// fold A. Exposed so fold accounting can be audited externally.
pub fn two_fold_split(n: usize, seed: u64, replication: usize) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication as u64 + 1);
    let mut indices: Vec<usize> = (0..n).collect();
    indices.shuffle(&mut rng);
    let half = n.div_ceil(2);
    let fold_b = indices.split_off(half);
    (indices, fold_b)
}

/// Runs 5x2 cross-validation for one target attribute.
///
/// Each test instance is scored by the k-NN disclosure vote over the
/// training fold, with the target excluded from the distance.
pub fn five_by_two_cv(
    dataset: &Dataset,
    target: Attribute,
    k: usize,
    cfg: &DistanceConfig,
    seed: u64,
) -> Result<CvResult, EvalError> {
    let n = dataset.len();
    if k == 0 {
        return Err(RecommendError::ZeroK.into());
    }
    if n < 2 * k {
        return Err(EvalError::DatasetTooSmall { n, k, min: 2 * k });
    }
    let cfg = cfg.clone().excluding(target);
    cfg.validate().map_err(EvalError::Recommend)?;

    let disclosed_count = dataset
        .users
        .iter()
        .filter(|u| u.is_disclosed(target))
        .count();
    let degenerate = disclosed_count == 0 || disclosed_count == n;

    let mut fold_accuracies = Vec::with_capacity(REPLICATIONS * 2);
    let mut fold_maes = Vec::with_capacity(REPLICATIONS * 2);
    for replication in 0..REPLICATIONS {
        let (fold_a, fold_b) = two_fold_split(n, seed, replication);
        for (train, test) in [(&fold_a, &fold_b), (&fold_b, &fold_a)] {
            let mut predictions = Vec::with_capacity(test.len());
            for &ti in test.iter() {
                let query = &dataset.users[ti];
                let neighbors = nearest_among(
                    query,
                    train.iter().map(|&i| &dataset.users[i]),
                    k,
                    &cfg,
                )?;
                let disclosing = neighbors
                    .iter()
                    .filter(|nb| nb.target_disclosed == Some(true))
                    .count();
                let p = disclosing as f64 / k as f64;
                predictions.push((p, query.is_disclosed(target)));
            }
            let (accuracy, mae) = classification_metrics(&predictions)?;
            fold_accuracies.push(accuracy);
            fold_maes.push(mae);
        }
    }

    let replication_accuracies: Vec<f64> = fold_accuracies
        .chunks(2)
        .map(|pair| (pair[0] + pair[1]) / 2.0)
        .collect();
    let replication_maes: Vec<f64> = fold_maes
        .chunks(2)
        .map(|pair| (pair[0] + pair[1]) / 2.0)
        .collect();

    Ok(CvResult {
        target,
        k,
        seed,
        mean_accuracy: mean(&fold_accuracies),
        accuracy_variance: sample_variance(&fold_accuracies),
        mean_mae: mean(&fold_maes),
        mae_variance: sample_variance(&fold_maes),
        fold_accuracies,
        fold_maes,
        replication_accuracies,
        replication_maes,
        degenerate,
    })
}

/// Published reference results for the original (private) study dataset:
/// education 88% / 0.1772, location 84% / 0.2488, relationship 62% /
/// 0.4274. They document the methodology's reported behavior and are not
/// reproducible here, so nothing asserts on them.
pub mod reference {
    pub const EDUCATION_ACCURACY: f64 = 0.88;
    pub const EDUCATION_MAE: f64 = 0.1772;
    pub const LOCATION_ACCURACY: f64 = 0.84;
    pub const LOCATION_MAE: f64 = 0.2488;
    pub const RELATIONSHIP_ACCURACY: f64 = 0.62;
    pub const RELATIONSHIP_MAE: f64 = 0.4274;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{build_vector, Gender, UserProfile};
    use crate::recommend::DistanceConfig;
    use crate::synth::{generate_population, PlantedRule, PlantedSignal, SynthConfig};
    use crate::ingest::DatasetMetadata;

    #[test]
    fn metrics_on_perfect_predictions() {
        let (accuracy, mae) = classification_metrics(&[(1.0, true), (0.0, false)]).unwrap();
        assert_eq!(accuracy, 1.0);
        assert_eq!(mae, 0.0);
    }

    #[test]
    fn metrics_on_a_two_thirds_vote() {
        let (accuracy, mae) = classification_metrics(&[(2.0 / 3.0, true)]).unwrap();
        assert_eq!(accuracy, 1.0);
        assert!((mae - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tie_vote_predicts_not_disclosed() {
        let (accuracy, mae) = classification_metrics(&[(0.5, true)]).unwrap();
        assert_eq!(accuracy, 0.0);
        assert_eq!(mae, 0.5);
    }

    #[test]
    fn empty_predictions_error() {
        assert_eq!(
            classification_metrics(&[]).unwrap_err(),
            EvalError::NoPredictions
        );
    }

    fn constant_class_dataset(n: usize) -> Dataset {
        let users = (0..n)
            .map(|i| {
                let mut profile = UserProfile::bare(format!("u{i:03}"), 1990);
                profile.gender = Some(Gender::Female);
                profile.hometown = Some("Ottawa".into());
                // Everyone disclosed the target.
                profile.education_level = Some("Graduate".into());
                if i % 2 == 0 {
                    profile.location = Some("Toronto".into());
                }
                build_vector(profile, vec![], &[]).unwrap()
            })
            .collect();
        Dataset {
            users,
            metadata: DatasetMetadata {
                reference_year: 2013,
                source: "test".into(),
            },
        }
    }

    #[test]
    fn constant_target_scores_perfectly_and_is_degenerate() {
        let dataset = constant_class_dataset(20);
        let cv = five_by_two_cv(
            &dataset,
            Attribute::Education,
            3,
            &DistanceConfig::binary(),
            42,
        )
        .unwrap();
        assert!(cv.degenerate);
        assert_eq!(cv.mean_accuracy, 1.0);
        assert_eq!(cv.mean_mae, 0.0);
        assert_eq!(cv.fold_accuracies.len(), 10);
    }

    #[test]
    fn too_small_dataset_is_rejected() {
        let dataset = constant_class_dataset(5);
        let err = five_by_two_cv(
            &dataset,
            Attribute::Education,
            3,
            &DistanceConfig::binary(),
            42,
        )
        .unwrap_err();
        assert_eq!(
            err,
            EvalError::DatasetTooSmall {
                n: 5,
                k: 3,
                min: 6
            }
        );
    }

    #[test]
    fn fold_accounting_partitions_every_replication() {
        for n in [10usize, 11, 150] {
            for replication in 0..REPLICATIONS {
                let (a, b) = two_fold_split(n, 42, replication);
                assert_eq!(a.len(), n.div_ceil(2));
                assert_eq!(a.len() + b.len(), n);
                let mut seen = vec![false; n];
                for &i in a.iter().chain(b.iter()) {
                    assert!(!seen[i], "index {i} appears twice");
                    seen[i] = true;
                }
                assert!(seen.iter().all(|&s| s));
            }
        }
    }

    #[test]
    fn replications_use_distinct_shuffles() {
        let (a0, _) = two_fold_split(100, 42, 0);
        let (a1, _) = two_fold_split(100, 42, 1);
        assert_ne!(a0, a1);
    }

    fn planted_config() -> SynthConfig {
        let mut config = SynthConfig {
            n_users: 150,
            seed: 42,
            planted_signal: Some(PlantedSignal {
                target: Attribute::Education,
                indicators: vec![
                    Attribute::Hometown,
                    Attribute::Location,
                    Attribute::Relationship,
                ],
                rule: PlantedRule::Majority,
            }),
            ..SynthConfig::default()
        };
        // Indicators carry the signal at moderate rates; the remaining
        // attributes are pinned near-constant so they contribute almost no
        // distance noise.
        config.missing.hometown = 0.4;
        config.missing.location = 0.4;
        config.missing.relationship = 0.4;
        config.missing.gender = 0.02;
        config.missing.birthday = 0.98;
        config.missing.degree = 0.98;
        config.missing.political = 0.98;
        config.missing.religion = 0.98;
        config.missing.interests = 0.05;
        config
    }

    #[test]
    fn cv_is_deterministic_under_a_fixed_seed() {
        let dataset = generate_population(&planted_config()).unwrap();
        let run = || {
            five_by_two_cv(
                &dataset,
                Attribute::Education,
                3,
                &DistanceConfig::binary(),
                42,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn planted_signal_is_recovered() {
        let dataset = generate_population(&planted_config()).unwrap();
        let cv = five_by_two_cv(
            &dataset,
            Attribute::Education,
            3,
            &DistanceConfig::binary(),
            42,
        )
        .unwrap();
        assert!(
            cv.mean_accuracy >= 0.95,
            "mean accuracy {:.4} below 0.95",
            cv.mean_accuracy
        );
        assert!(!cv.degenerate);
    }

    /// Brute-force re-implementation of one fold's predictions: exhaustive
    /// distance sort, independent of `nearest_among`.
    fn oracle_fold_predictions(
        dataset: &Dataset,
        train: &[usize],
        test: &[usize],
        target: Attribute,
        k: usize,
    ) -> Vec<(f64, bool)> {
        let cfg = DistanceConfig::binary().excluding(target);
        test.iter()
            .map(|&ti| {
                let query = &dataset.users[ti];
                let mut scored: Vec<(f64, &str, bool)> = train
                    .iter()
                    .map(|&ci| {
                        let c = &dataset.users[ci];
                        (
                            crate::recommend::pairwise_distance(query, c, &cfg).unwrap(),
                            c.user_id(),
                            c.is_disclosed(target),
                        )
                    })
                    .collect();
                scored.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
                let disclosing = scored[..k].iter().filter(|(_, _, d)| *d).count();
                (disclosing as f64 / k as f64, query.is_disclosed(target))
            })
            .collect()
    }

    #[test]
    fn harness_matches_the_exhaustive_oracle_on_a_small_population() {
        let config = SynthConfig {
            n_users: 24,
            seed: 3,
            ..planted_config()
        };
        let dataset = generate_population(&config).unwrap();
        let target = Attribute::Education;
        let cv = five_by_two_cv(&dataset, target, 3, &DistanceConfig::binary(), 9).unwrap();
        let mut expected_acc = Vec::new();
        let mut expected_mae = Vec::new();
        for replication in 0..REPLICATIONS {
            let (a, b) = two_fold_split(dataset.len(), 9, replication);
            for (train, test) in [(&a, &b), (&b, &a)] {
                let predictions = oracle_fold_predictions(&dataset, train, test, target, 3);
                let (acc, mae) = classification_metrics(&predictions).unwrap();
                expected_acc.push(acc);
                expected_mae.push(mae);
            }
        }
        assert_eq!(cv.fold_accuracies, expected_acc);
        assert_eq!(cv.fold_maes, expected_mae);
    }

    #[test]
    fn aggregations_are_recomputable_from_fold_values() {
        let dataset = generate_population(&SynthConfig {
            n_users: 30,
            seed: 5,
            ..SynthConfig::default()
        })
        .unwrap();
        let cv = five_by_two_cv(
            &dataset,
            Attribute::Relationship,
            3,
            &DistanceConfig::binary(),
            1,
        )
        .unwrap();
        assert_eq!(cv.mean_accuracy, mean(&cv.fold_accuracies));
        assert_eq!(cv.accuracy_variance, sample_variance(&cv.fold_accuracies));
        assert_eq!(cv.replication_accuracies.len(), REPLICATIONS);
        let coarse = mean(&cv.replication_accuracies);
        assert!((coarse - cv.mean_accuracy).abs() < 1e-12);
        for (i, r) in cv.replication_accuracies.iter().enumerate() {
            assert_eq!(
                *r,
                (cv.fold_accuracies[2 * i] + cv.fold_accuracies[2 * i + 1]) / 2.0
            );
        }
        for fold in cv
            .fold_accuracies
            .iter()
            .chain(cv.fold_maes.iter())
        {
            assert!((0.0..=1.0).contains(fold));
        }
    }
}

//! Privacy-category assignment: the fixed album-visibility rule and a
//! decision-tree learner over profile attributes and interests.

mod tree;

pub use tree::{
    export_tree, predict_category, train_decision_tree, ClassCounts, DecisionTree, Feature,
    InterestFeature, TreeConfig, TreeError, TreeNode,
};

use serde::{Deserialize, Serialize};

use crate::ingest::Dataset;
use crate::profile::{AlbumSummary, PrivacyCategory, UserVector};

/// A user vector paired with its privacy category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledUser {
    pub vector: UserVector,
    pub category: PrivacyCategory,
}

/// Assigns the privacy category from the album summary alone.
///
/// No albums at all is the strongest privacy stance (Fundamentalist).
/// Otherwise the user is Pragmatic when strictly more than half of the
/// albums are restricted to friends or a custom list, and Unconcerned
/// otherwise. `NETWORKS_FRIENDS` exposes beyond the friends circle, so it
/// counts toward the total but not the restricted share. The comparison is
/// exact integer arithmetic: `2 * (friends + custom) > total`.
pub fn rule_label(summary: &AlbumSummary) -> PrivacyCategory {
    let total = summary.total();
    if total == 0 {
        return PrivacyCategory::Fundamentalist;
    }
    let restricted = u64::from(summary.n_friends) + u64::from(summary.n_custom);
    if 2 * restricted > u64::from(total) {
        PrivacyCategory::Pragmatic
    } else {
        PrivacyCategory::Unconcerned
    }
}

/// Labels every user in the dataset with [`rule_label`].
pub fn label_dataset(dataset: &Dataset) -> Vec<LabeledUser> {
    dataset
        .users
        .iter()
        .map(|vector| label_user(vector))
        .collect()
}

pub fn label_user(vector: &UserVector) -> LabeledUser {
    LabeledUser {
        vector: vector.clone(),
        category: rule_label(&vector.album_summary),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::AlbumSummary;
    use crate::test_fixtures::alice;

    #[test]
    fn no_albums_is_fundamentalist() {
        assert_eq!(
            rule_label(&AlbumSummary::default()),
            PrivacyCategory::Fundamentalist
        );
    }

    #[test]
    fn majority_restricted_is_pragmatic() {
        // 4 albums: 2 FRIENDS, 1 CUSTOM, 1 EVERYONE — restricted share 3/4.
        let summary = AlbumSummary::new(1, 0, 0, 2, 1);
        assert_eq!(rule_label(&summary), PrivacyCategory::Pragmatic);
    }

    #[test]
    fn exactly_half_restricted_is_unconcerned() {
        // The rule is a strict inequality; 1/2 does not qualify.
        let summary = AlbumSummary::new(1, 0, 0, 1, 0);
        assert_eq!(rule_label(&summary), PrivacyCategory::Unconcerned);
    }

    #[test]
    fn alice_is_unconcerned() {
        assert_eq!(
            rule_label(&alice().album_summary),
            PrivacyCategory::Unconcerned
        );
    }

    #[test]
    fn networks_counts_against_the_restricted_share() {
        // 2 NETWORKS_FRIENDS + 1 FRIENDS: restricted 1/3, Unconcerned.
        let summary = AlbumSummary::new(0, 0, 2, 1, 0);
        assert_eq!(rule_label(&summary), PrivacyCategory::Unconcerned);
    }

    #[test]
    fn rule_is_scale_invariant() {
        let cases = [
            AlbumSummary::new(1, 0, 0, 2, 1),
            AlbumSummary::new(1, 0, 0, 1, 0),
            AlbumSummary::new(0, 1, 1, 0, 0),
            AlbumSummary::new(2, 1, 0, 5, 3),
        ];
        for base in cases {
            for k in 1..=5u32 {
                let scaled = AlbumSummary::new(
                    base.n_everyone * k,
                    base.n_fof * k,
                    base.n_networks * k,
                    base.n_friends * k,
                    base.n_custom * k,
                );
                assert_eq!(rule_label(&scaled), rule_label(&base));
            }
        }
    }

    /// Independent transcription of the labeling pseudocode, kept separate
    /// from `rule_label` on purpose: floating-point ratios, explicit
    /// branches.
    pub(crate) fn rule_oracle(summary: &AlbumSummary) -> PrivacyCategory {
        let total = summary.total() as f64;
        if summary.total() == 0 {
            return PrivacyCategory::Fundamentalist;
        }
        let ratio_friends = f64::from(summary.n_friends) / total;
        let ratio_custom = f64::from(summary.n_custom) / total;
        if ratio_friends + ratio_custom > 0.5 {
            PrivacyCategory::Pragmatic
        } else {
            PrivacyCategory::Unconcerned
        }
    }

    /// Every album multiset of size 0..=4 over the five privacy values.
    pub(crate) fn all_small_summaries() -> Vec<AlbumSummary> {
        let mut out = Vec::new();
        for total in 0..=4u32 {
            for e in 0..=total {
                for f in 0..=(total - e) {
                    for fof in 0..=(total - e - f) {
                        for net in 0..=(total - e - f - fof) {
                            let custom = total - e - f - fof - net;
                            out.push(AlbumSummary::new(e, fof, net, f, custom));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn rule_matches_oracle_on_all_small_multisets() {
        let summaries = all_small_summaries();
        assert_eq!(summaries.len(), 126);
        for summary in summaries {
            assert_eq!(
                rule_label(&summary),
                rule_oracle(&summary),
                "summary {summary:?}"
            );
        }
    }

    #[test]
    fn rule_partitions_by_total_and_threshold() {
        for summary in all_small_summaries() {
            let label = rule_label(&summary);
            if summary.total() == 0 {
                assert_eq!(label, PrivacyCategory::Fundamentalist);
            } else {
                assert_ne!(label, PrivacyCategory::Fundamentalist);
            }
        }
    }
}

//! JSON output payloads. Every `--format json` document deserializes back
//! into one of these types, which is what the schema round-trip tests
//! exercise.

use serde::{Deserialize, Serialize};

use privrec_core::audit::AuditFinding;
use privrec_core::ingest::{InterestRankEntry, InterestRanking, MissingStats};
use privrec_core::profile::{Attribute, PrivacyCategory};
use privrec_core::recommend::{DistanceMode, Policy, Recommendation};

#[derive(Debug, Serialize, Deserialize)]
pub struct AuditUserReport {
    pub user_id: String,
    pub display_name: String,
    pub findings: Vec<AuditFinding>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LabelRow {
    pub user_id: String,
    pub category: PrivacyCategory,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RecommendReport {
    pub user_id: String,
    pub k: usize,
    pub policy: Policy,
    pub mode: DistanceMode,
    pub recommendations: Vec<Recommendation>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MissingRow {
    pub attribute: Attribute,
    pub absent: usize,
    pub users: usize,
    pub percent: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StatsReport {
    pub users: usize,
    pub missing: Vec<MissingRow>,
    pub top_interests: Vec<InterestRankEntry>,
}

impl StatsReport {
    pub fn build(stats: &MissingStats, ranking: &InterestRanking) -> Self {
        StatsReport {
            users: stats.n_users,
            missing: stats
                .sorted_rows()
                .into_iter()
                .map(|(attribute, absent)| MissingRow {
                    attribute,
                    absent,
                    users: stats.n_users,
                    percent: stats.percent_rounded(attribute),
                })
                .collect(),
            top_interests: ranking.entries.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SynthSummary {
    pub n_users: usize,
    pub seed: u64,
    pub profiles: String,
    pub interests: String,
    pub albums: String,
}

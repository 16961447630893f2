//! Profile distance, k-nearest-neighbor retrieval, and tighten-only
//! disclosure recommendations.
//!
//! Two distance modes exist. `BinaryDisclosure` (the default) compares only
//! whether each attribute is disclosed — a weighted, normalized Hamming
//! distance over the disclosure indicators. `MixedCloseness` also compares
//! the values themselves: categorical equality, age difference scaled by a
//! configured range, and Jaccard distance over interest sets.
//!
//! The target attribute being recommended is always excluded from its own
//! distance; otherwise the quantity being predicted would leak into
//! retrieval. Retrieval and advice are deterministic: ties order by user id.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::Dataset;
use crate::profile::{Attribute, UserVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecommendError {
    #[error("distance weights are all zero")]
    AllWeightsZero,
    #[error("weight for {attribute} is negative")]
    NegativeWeight { attribute: Attribute },
    #[error("age_range must be positive in mixed mode")]
    InvalidAgeRange,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds the {candidates} available candidates")]
    NotEnoughCandidates { k: usize, candidates: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Compare disclosure indicators only.
    BinaryDisclosure,
    /// Compare disclosed values as well.
    MixedCloseness,
}

/// Distance configuration: mode, per-attribute weights, age normalization,
/// and the attribute excluded from the comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceConfig {
    pub mode: DistanceMode,
    /// Weight per attribute, indexed by [`Attribute::index`].
    pub weights: [f64; 10],
    /// Weight of the age term (mixed mode only; age is always disclosed so
    /// it carries no signal in binary mode).
    pub age_weight: f64,
    /// Age difference that saturates the age term at 1.0.
    pub age_range: f64,
    /// Attribute excluded from every distance, typically the one being
    /// recommended.
    pub exclude: Option<Attribute>,
}

impl DistanceConfig {
    pub fn binary() -> Self {
        DistanceConfig {
            mode: DistanceMode::BinaryDisclosure,
            weights: [1.0; 10],
            age_weight: 1.0,
            age_range: 1.0,
            exclude: None,
        }
    }

    pub fn mixed(age_range: f64) -> Self {
        DistanceConfig {
            mode: DistanceMode::MixedCloseness,
            age_range,
            ..DistanceConfig::binary()
        }
    }

    /// Uniform weights with the age range taken from the dataset's age
    /// spread (floored at 1 so the term stays defined).
    pub fn for_dataset(mode: DistanceMode, dataset: &Dataset) -> Self {
        let year = dataset.metadata.reference_year;
        let ages: Vec<i64> = dataset.users.iter().map(|u| u.age_signed(year)).collect();
        let range = match (ages.iter().min(), ages.iter().max()) {
            (Some(min), Some(max)) => ((max - min) as f64).max(1.0),
            _ => 1.0,
        };
        match mode {
            DistanceMode::BinaryDisclosure => DistanceConfig::binary(),
            DistanceMode::MixedCloseness => DistanceConfig::mixed(range),
        }
    }

    pub fn excluding(mut self, attribute: Attribute) -> Self {
        self.exclude = Some(attribute);
        self
    }

    fn weight(&self, attribute: Attribute) -> f64 {
        if self.exclude == Some(attribute) {
            0.0
        } else {
            self.weights[attribute.index()]
        }
    }

    pub fn validate(&self) -> Result<(), RecommendError> {
        for attribute in Attribute::ALL {
            if self.weights[attribute.index()] < 0.0 {
                return Err(RecommendError::NegativeWeight { attribute });
            }
        }
        if self.age_weight < 0.0 || !self.age_weight.is_finite() {
            return Err(RecommendError::NegativeWeight {
                attribute: Attribute::Birthday,
            });
        }
        let mut total: f64 = Attribute::ALL.iter().map(|&a| self.weight(a)).sum();
        if self.mode == DistanceMode::MixedCloseness {
            if !(self.age_range > 0.0) || !self.age_range.is_finite() {
                return Err(RecommendError::InvalidAgeRange);
            }
            total += self.age_weight;
        }
        if total <= 0.0 {
            return Err(RecommendError::AllWeightsZero);
        }
        Ok(())
    }
}

fn jaccard_distance(a: &UserVector, b: &UserVector) -> f64 {
    if a.interests.is_empty() && b.interests.is_empty() {
        return 0.0;
    }
    // Interest lists are sorted and deduplicated by construction.
    let mut i = 0;
    let mut j = 0;
    let mut intersection = 0usize;
    while i < a.interests.len() && j < b.interests.len() {
        match a.interests[i].interest_id.cmp(&b.interests[j].interest_id) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                intersection += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.interests.len() + b.interests.len() - intersection;
    1.0 - intersection as f64 / union as f64
}

/// Whether two users disclose the same value for an attribute that both
/// have present.
fn values_equal(a: &UserVector, b: &UserVector, attribute: Attribute) -> bool {
    let (pa, pb) = (&a.profile, &b.profile);
    match attribute {
        Attribute::Gender => pa.gender == pb.gender,
        Attribute::Birthday => pa.birthday == pb.birthday,
        Attribute::Education => pa.education_level == pb.education_level,
        Attribute::Degree => pa.degree == pb.degree,
        Attribute::Hometown => pa.hometown == pb.hometown,
        Attribute::Location => pa.location == pb.location,
        Attribute::Political => pa.political == pb.political,
        Attribute::Relationship => pa.relationship == pb.relationship,
        Attribute::Religion => pa.religion == pb.religion,
        Attribute::Interests => unreachable!("interests use Jaccard distance"),
    }
}

fn distance_unchecked(a: &UserVector, b: &UserVector, cfg: &DistanceConfig) -> f64 {
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for attribute in Attribute::ALL {
        let weight = cfg.weight(attribute);
        if weight == 0.0 {
            continue;
        }
        denominator += weight;
        let (da, db) = (a.is_disclosed(attribute), b.is_disclosed(attribute));
        let term = match cfg.mode {
            DistanceMode::BinaryDisclosure => {
                if da != db {
                    1.0
                } else {
                    0.0
                }
            }
            DistanceMode::MixedCloseness => match (da, db) {
                (false, false) => 0.0,
                (true, false) | (false, true) => 1.0,
                (true, true) => {
                    if attribute == Attribute::Interests {
                        jaccard_distance(a, b)
                    } else if values_equal(a, b, attribute) {
                        0.0
                    } else {
                        1.0
                    }
                }
            },
        };
        numerator += weight * term;
    }
    if cfg.mode == DistanceMode::MixedCloseness && cfg.age_weight > 0.0 {
        let diff = (a.profile.birth_year - b.profile.birth_year).abs() as f64;
        numerator += cfg.age_weight * (diff / cfg.age_range).min(1.0);
        denominator += cfg.age_weight;
    }
    numerator / denominator
}

/// Distance between two user vectors under the configured mode.
pub fn pairwise_distance(
    a: &UserVector,
    b: &UserVector,
    cfg: &DistanceConfig,
) -> Result<f64, RecommendError> {
    cfg.validate()?;
    Ok(distance_unchecked(a, b, cfg))
}

/// One retrieved neighbor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Neighbor {
    pub user_id: String,
    pub distance: f64,
    /// Whether the neighbor discloses the excluded (target) attribute;
    /// absent when the configuration names no target.
    pub target_disclosed: Option<bool>,
}

/// K nearest candidates over an explicit candidate slice, ordered by
/// `(distance, user_id)`.
pub(crate) fn nearest_among<'a>(
    query: &UserVector,
    candidates: impl Iterator<Item = &'a UserVector>,
    k: usize,
    cfg: &DistanceConfig,
) -> Result<Vec<Neighbor>, RecommendError> {
    if k == 0 {
        return Err(RecommendError::ZeroK);
    }
    cfg.validate()?;
    let mut scored: Vec<Neighbor> = candidates
        .filter(|c| c.user_id() != query.user_id())
        .map(|c| Neighbor {
            user_id: c.user_id().to_string(),
            distance: distance_unchecked(query, c, cfg),
            target_disclosed: cfg.exclude.map(|t| c.is_disclosed(t)),
        })
        .collect();
    if k > scored.len() {
        return Err(RecommendError::NotEnoughCandidates {
            k,
            candidates: scored.len(),
        });
    }
    scored.sort_by(|a, b| {
        a.distance
            .total_cmp(&b.distance)
            .then_with(|| a.user_id.cmp(&b.user_id))
    });
    scored.truncate(k);
    Ok(scored)
}

/// The `k` users nearest to the query, excluding the query's own record.
pub fn nearest_neighbors(
    query: &UserVector,
    dataset: &Dataset,
    k: usize,
    cfg: &DistanceConfig,
) -> Result<Vec<Neighbor>, RecommendError> {
    nearest_among(query, dataset.users.iter(), k, cfg)
}

/// Conflict-resolution policy when neighbors disagree about disclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Hide when strictly more than half of the neighbors hide.
    Majority,
    /// Hide when any neighbor hides.
    Strict,
}

/// Tighten-only advice: hide the attribute, or leave it as it is. There is
/// deliberately no "disclose" variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Advice {
    Hide,
    KeepCurrent,
}

/// Advice for one attribute with the neighbor evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub attribute: Attribute,
    pub advice: Advice,
    pub policy: Policy,
    pub neighbors: Vec<Neighbor>,
}

/// Recommends whether to keep disclosing one attribute.
///
/// The attribute is excluded from the distance regardless of what `cfg`
/// says. If the query already hides the attribute the advice is always
/// `KeepCurrent` — there is nothing to tighten, and disclosure is never
/// suggested.
pub fn recommend_disclosure(
    query: &UserVector,
    dataset: &Dataset,
    attribute: Attribute,
    k: usize,
    policy: Policy,
    cfg: &DistanceConfig,
) -> Result<Recommendation, RecommendError> {
    let cfg = cfg.clone().excluding(attribute);
    let neighbors = nearest_neighbors(query, dataset, k, &cfg)?;
    let advice = if !query.is_disclosed(attribute) {
        Advice::KeepCurrent
    } else {
        let hiding = neighbors
            .iter()
            .filter(|n| n.target_disclosed == Some(false))
            .count();
        let hide = match policy {
            Policy::Majority => 2 * hiding > k,
            Policy::Strict => hiding >= 1,
        };
        if hide {
            Advice::Hide
        } else {
            Advice::KeepCurrent
        }
    };
    Ok(Recommendation {
        attribute,
        advice,
        policy,
        neighbors,
    })
}

/// One recommendation per requested attribute, each with the attribute
/// excluded from its own distance, emitted in the fixed attribute order.
pub fn recommend_all(
    query: &UserVector,
    dataset: &Dataset,
    attributes: &[Attribute],
    k: usize,
    policy: Policy,
    cfg: &DistanceConfig,
) -> Result<Vec<Recommendation>, RecommendError> {
    Attribute::ALL
        .iter()
        .filter(|a| attributes.contains(a))
        .map(|&a| recommend_disclosure(query, dataset, a, k, policy, cfg))
        .collect()
}

/// Renders recommendations as a human-readable report.
pub fn render_recommendations(recommendations: &[Recommendation], user_id: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("Disclosure advice for {user_id}\n"));
    out.push_str(&"-".repeat(22 + user_id.len()));
    out.push('\n');
    for rec in recommendations {
        let verdict = match rec.advice {
            Advice::Hide => "HIDE        ",
            Advice::KeepCurrent => "keep current",
        };
        let hiding = rec
            .neighbors
            .iter()
            .filter(|n| n.target_disclosed == Some(false))
            .count();
        out.push_str(&format!(
            "  {:<13} {verdict}  ({hiding}/{} neighbors hide it)\n",
            rec.attribute.name(),
            rec.neighbors.len()
        ));
    }
    if recommendations.is_empty() {
        out.push_str("  (no attributes requested)\n");
    }
    out
}

//! Greedy top-down decision-tree induction with information gain.
//!
//! Features are the user's age (numeric, split by a binary threshold chosen
//! among midpoints of consecutive distinct values), eight categorical
//! profile attributes (split multiway with an explicit branch for missing
//! values — absence is treated as signal, not imputed away), and binary
//! has/has-not indicators for the most common interest topics in the
//! training data.
//!
//! Induction is deterministic: splits are compared by gain with strict
//! ordering, ties resolved by lowest feature index and then lowest
//! threshold. An impure node is split on the best admissible attribute even
//! when the gain is zero, so consistent training data is always separated
//! completely (XOR-style label structure would otherwise stall at the
//! root). Categorical and interest attributes are tested at most once per
//! path; age may be re-split at narrower thresholds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::LabeledUser;
use crate::profile::{PrivacyCategory, UserVector, DEFAULT_REFERENCE_YEAR};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("cannot train a decision tree on an empty dataset")]
    EmptyTrainingSet,
    #[error("invalid tree configuration: {0}")]
    InvalidConfig(String),
}

/// Induction hyperparameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeConfig {
    /// Maximum depth of internal nodes; `None` means unlimited.
    pub max_depth: Option<usize>,
    /// Minimum training samples in every non-empty child of a split.
    pub min_leaf: usize,
    /// How many of the most common interest topics become binary features.
    pub top_interest_features: usize,
    /// Year ages are measured against.
    pub reference_year: i32,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: None,
            min_leaf: 2,
            top_interest_features: 25,
            reference_year: DEFAULT_REFERENCE_YEAR,
        }
    }
}

/// Training-class counts at a node.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub fundamentalist: usize,
    pub pragmatic: usize,
    pub unconcerned: usize,
}

impl ClassCounts {
    pub fn add(&mut self, category: PrivacyCategory) {
        match category {
            PrivacyCategory::Fundamentalist => self.fundamentalist += 1,
            PrivacyCategory::Pragmatic => self.pragmatic += 1,
            PrivacyCategory::Unconcerned => self.unconcerned += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.fundamentalist + self.pragmatic + self.unconcerned
    }

    pub fn is_pure(&self) -> bool {
        let n = self.total();
        n == self.fundamentalist || n == self.pragmatic || n == self.unconcerned
    }

    /// Majority class; exact ties resolve in `PrivacyCategory::ALL` order.
    pub fn majority(&self) -> PrivacyCategory {
        let mut best = PrivacyCategory::Fundamentalist;
        let mut best_count = self.fundamentalist;
        if self.pragmatic > best_count {
            best = PrivacyCategory::Pragmatic;
            best_count = self.pragmatic;
        }
        if self.unconcerned > best_count {
            best = PrivacyCategory::Unconcerned;
        }
        best
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        let n = self.total() as f64;
        if n == 0.0 {
            return 0.0;
        }
        [self.fundamentalist, self.pragmatic, self.unconcerned]
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let q = c as f64 / n;
                -q * q.log2()
            })
            .sum()
    }
}

/// A split attribute. The declaration order fixes the tie-break priority;
/// interest features follow the categorical attributes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feature {
    Age,
    Gender,
    Education,
    Degree,
    Hometown,
    Location,
    Political,
    Relationship,
    Religion,
    Interest(usize),
}

/// The categorical profile attributes, in tie-break order.
const CATEGORICAL_FEATURES: [Feature; 8] = [
    Feature::Gender,
    Feature::Education,
    Feature::Degree,
    Feature::Hometown,
    Feature::Location,
    Feature::Political,
    Feature::Relationship,
    Feature::Religion,
];

/// One interest topic promoted to a binary feature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestFeature {
    pub interest_id: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Leaf {
        category: PrivacyCategory,
        counts: ClassCounts,
    },
    /// Binary threshold on a numeric feature: `below` takes values `< threshold`.
    NumericSplit {
        feature: Feature,
        threshold: f64,
        counts: ClassCounts,
        below: Box<TreeNode>,
        at_or_above: Box<TreeNode>,
    },
    /// Multiway split on a categorical feature with an explicit branch for
    /// users that did not disclose the attribute.
    CategoricalSplit {
        feature: Feature,
        counts: ClassCounts,
        branches: Vec<(String, TreeNode)>,
        missing: Box<TreeNode>,
    },
    /// Has / has-not split on an interest feature.
    InterestSplit {
        feature: Feature,
        counts: ClassCounts,
        has: Box<TreeNode>,
        has_not: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn counts(&self) -> &ClassCounts {
        match self {
            TreeNode::Leaf { counts, .. }
            | TreeNode::NumericSplit { counts, .. }
            | TreeNode::CategoricalSplit { counts, .. }
            | TreeNode::InterestSplit { counts, .. } => counts,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Leaf { .. })
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::NumericSplit {
                below, at_or_above, ..
            } => 1 + below.depth().max(at_or_above.depth()),
            TreeNode::CategoricalSplit {
                branches, missing, ..
            } => {
                1 + branches
                    .iter()
                    .map(|(_, n)| n.depth())
                    .chain(std::iter::once(missing.depth()))
                    .max()
                    .unwrap_or(0)
            }
            TreeNode::InterestSplit { has, has_not, .. } => 1 + has.depth().max(has_not.depth()),
        }
    }
}

/// A trained tree plus the metadata needed to evaluate new vectors: the
/// reference year for ages and the interest topics used as features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub reference_year: i32,
    pub interest_features: Vec<InterestFeature>,
    pub root: TreeNode,
}

/// Per-sample feature values extracted once before induction.
struct TrainRow {
    age: f64,
    tokens: [Option<String>; 8],
    bits: Vec<bool>,
    label: PrivacyCategory,
}

fn categorical_token(v: &UserVector, feature_index: usize) -> Option<String> {
    let p = &v.profile;
    match CATEGORICAL_FEATURES[feature_index] {
        Feature::Gender => p.gender.map(|g| g.to_string()),
        Feature::Education => p.education_level.clone(),
        Feature::Degree => p.degree.clone(),
        Feature::Hometown => p.hometown.clone(),
        Feature::Location => p.location.clone(),
        Feature::Political => p.political.clone(),
        Feature::Relationship => p.relationship.map(|r| r.to_string()),
        Feature::Religion => p.religion.clone(),
        Feature::Age | Feature::Interest(_) => unreachable!(),
    }
}

/// Ranks interest topics by distinct-user count (descending), label and id
/// ascending on ties, and keeps the top `k`.
fn select_interest_features(data: &[LabeledUser], k: usize) -> Vec<InterestFeature> {
    let mut counts: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for user in data {
        for item in &user.vector.interests {
            let entry = counts
                .entry(item.interest_id.as_str())
                .or_insert((0, item.label()));
            entry.0 += 1;
        }
    }
    let mut ranked: Vec<(&str, usize, &str)> = counts
        .into_iter()
        .map(|(id, (count, label))| (id, count, label))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(b.2)).then(a.0.cmp(b.0)));
    ranked
        .into_iter()
        .take(k)
        .map(|(id, _, label)| InterestFeature {
            interest_id: id.to_string(),
            label: label.to_string(),
        })
        .collect()
}

struct Builder<'a> {
    rows: Vec<TrainRow>,
    config: &'a TreeConfig,
    n_interest: usize,
}

/// The best admissible split found at a node.
enum SplitChoice {
    Numeric { threshold: f64 },
    Categorical { index: usize },
    Interest { index: usize },
}

impl Builder<'_> {
    fn counts_of(&self, idx: &[usize]) -> ClassCounts {
        let mut counts = ClassCounts::default();
        for &i in idx {
            counts.add(self.rows[i].label);
        }
        counts
    }

    /// Weighted child entropy for a partition given as class counts.
    fn weighted_entropy(parts: &[ClassCounts], n: f64) -> f64 {
        parts
            .iter()
            .filter(|c| c.total() > 0)
            .map(|c| (c.total() as f64 / n) * c.entropy())
            .sum()
    }

    fn find_best_split(&self, idx: &[usize], used: &[bool]) -> Option<(SplitChoice, f64)> {
        let n = idx.len() as f64;
        let parent_entropy = self.counts_of(idx).entropy();
        let min_leaf = self.config.min_leaf;
        let mut best: Option<(SplitChoice, f64)> = None;
        let mut consider = |choice: SplitChoice, gain: f64| {
            if best.as_ref().map_or(true, |(_, g)| gain > *g) {
                best = Some((choice, gain));
            }
        };

        // Age: thresholds at midpoints of consecutive distinct values,
        // scanned in ascending order so equal-gain ties keep the lowest.
        let mut by_age: Vec<usize> = idx.to_vec();
        by_age.sort_by(|&a, &b| self.rows[a].age.total_cmp(&self.rows[b].age));
        let mut left = ClassCounts::default();
        let mut right = self.counts_of(idx);
        for w in 0..by_age.len().saturating_sub(1) {
            let row = &self.rows[by_age[w]];
            left.add(row.label);
            right = sub(right, row.label);
            let next_age = self.rows[by_age[w + 1]].age;
            if row.age == next_age {
                continue;
            }
            if left.total() < min_leaf || right.total() < min_leaf {
                continue;
            }
            let threshold = (row.age + next_age) / 2.0;
            let gain = parent_entropy - Self::weighted_entropy(&[left, right], n);
            consider(SplitChoice::Numeric { threshold }, gain);
        }

        for (ci, _) in CATEGORICAL_FEATURES.iter().enumerate() {
            if used[ci] {
                continue;
            }
            let mut groups: BTreeMap<&str, ClassCounts> = BTreeMap::new();
            let mut missing = ClassCounts::default();
            for &i in idx {
                let row = &self.rows[i];
                match &row.tokens[ci] {
                    Some(token) => groups.entry(token.as_str()).or_default().add(row.label),
                    None => missing.add(row.label),
                }
            }
            let parts: Vec<ClassCounts> = groups
                .values()
                .copied()
                .chain((missing.total() > 0).then_some(missing))
                .collect();
            if parts.len() < 2 || parts.iter().any(|c| c.total() < min_leaf) {
                continue;
            }
            let gain = parent_entropy - Self::weighted_entropy(&parts, n);
            consider(SplitChoice::Categorical { index: ci }, gain);
        }

        for fi in 0..self.n_interest {
            if used[8 + fi] {
                continue;
            }
            let mut has = ClassCounts::default();
            let mut has_not = ClassCounts::default();
            for &i in idx {
                let row = &self.rows[i];
                if row.bits[fi] {
                    has.add(row.label);
                } else {
                    has_not.add(row.label);
                }
            }
            if has.total() < min_leaf || has_not.total() < min_leaf {
                continue;
            }
            let gain = parent_entropy - Self::weighted_entropy(&[has, has_not], n);
            consider(SplitChoice::Interest { index: fi }, gain);
        }

        best
    }

    fn build(&self, idx: &[usize], used: &[bool], depth: usize) -> TreeNode {
        let counts = self.counts_of(idx);
        let leaf = |counts: ClassCounts| TreeNode::Leaf {
            category: counts.majority(),
            counts,
        };
        if counts.is_pure() {
            return leaf(counts);
        }
        if let Some(max_depth) = self.config.max_depth {
            if depth >= max_depth {
                return leaf(counts);
            }
        }
        let Some((choice, _gain)) = self.find_best_split(idx, used) else {
            return leaf(counts);
        };
        match choice {
            SplitChoice::Numeric { threshold } => {
                let (below, at_or_above): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&i| self.rows[i].age < threshold);
                TreeNode::NumericSplit {
                    feature: Feature::Age,
                    threshold,
                    counts,
                    below: Box::new(self.build(&below, used, depth + 1)),
                    at_or_above: Box::new(self.build(&at_or_above, used, depth + 1)),
                }
            }
            SplitChoice::Categorical { index } => {
                let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
                let mut missing_idx = Vec::new();
                for &i in idx {
                    match &self.rows[i].tokens[index] {
                        Some(token) => groups.entry(token.clone()).or_default().push(i),
                        None => missing_idx.push(i),
                    }
                }
                let mut child_used = used.to_vec();
                child_used[index] = true;
                let branches = groups
                    .into_iter()
                    .map(|(token, group)| (token, self.build(&group, &child_used, depth + 1)))
                    .collect();
                let missing = if missing_idx.is_empty() {
                    // No training sample lacked the attribute: predict the
                    // node majority for unseen missing values.
                    Box::new(TreeNode::Leaf {
                        category: counts.majority(),
                        counts: ClassCounts::default(),
                    })
                } else {
                    Box::new(self.build(&missing_idx, &child_used, depth + 1))
                };
                TreeNode::CategoricalSplit {
                    feature: CATEGORICAL_FEATURES[index].clone(),
                    counts,
                    branches,
                    missing,
                }
            }
            SplitChoice::Interest { index } => {
                let (has, has_not): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&i| self.rows[i].bits[index]);
                let mut child_used = used.to_vec();
                child_used[8 + index] = true;
                TreeNode::InterestSplit {
                    feature: Feature::Interest(index),
                    counts,
                    has: Box::new(self.build(&has, &child_used, depth + 1)),
                    has_not: Box::new(self.build(&has_not, &child_used, depth + 1)),
                }
            }
        }
    }
}

fn sub(mut counts: ClassCounts, category: PrivacyCategory) -> ClassCounts {
    match category {
        PrivacyCategory::Fundamentalist => counts.fundamentalist -= 1,
        PrivacyCategory::Pragmatic => counts.pragmatic -= 1,
        PrivacyCategory::Unconcerned => counts.unconcerned -= 1,
    }
    counts
}

/// Trains a decision tree on labeled users.
pub fn train_decision_tree(
    data: &[LabeledUser],
    config: &TreeConfig,
) -> Result<DecisionTree, TreeError> {
    if data.is_empty() {
        return Err(TreeError::EmptyTrainingSet);
    }
    if config.min_leaf == 0 {
        return Err(TreeError::InvalidConfig("min_leaf must be at least 1".into()));
    }
    if config.max_depth == Some(0) {
        return Err(TreeError::InvalidConfig(
            "max_depth must be at least 1 when set".into(),
        ));
    }

    let interest_features = select_interest_features(data, config.top_interest_features);
    let rows: Vec<TrainRow> = data
        .iter()
        .map(|user| TrainRow {
            age: user.vector.age_signed(config.reference_year) as f64,
            tokens: std::array::from_fn(|ci| categorical_token(&user.vector, ci)),
            bits: interest_features
                .iter()
                .map(|f| user.vector.has_interest(&f.interest_id))
                .collect(),
            label: user.category,
        })
        .collect();

    let n_interest = interest_features.len();
    let builder = Builder {
        rows,
        config,
        n_interest,
    };
    let idx: Vec<usize> = (0..data.len()).collect();
    let used = vec![false; 8 + n_interest];
    let root = builder.build(&idx, &used, 0);
    Ok(DecisionTree {
        reference_year: config.reference_year,
        interest_features,
        root,
    })
}

/// Predicts the privacy category for a user vector.
///
/// Absent attribute values take the missing branch; a categorical value
/// never seen at a node falls back to that node's majority class.
pub fn predict_category(tree: &DecisionTree, v: &UserVector) -> PrivacyCategory {
    let age = v.age_signed(tree.reference_year) as f64;
    let mut node = &tree.root;
    loop {
        match node {
            TreeNode::Leaf { category, .. } => return *category,
            TreeNode::NumericSplit {
                threshold,
                below,
                at_or_above,
                ..
            } => {
                node = if age < *threshold { below } else { at_or_above };
            }
            TreeNode::CategoricalSplit {
                feature,
                counts,
                branches,
                missing,
            } => {
                let ci = CATEGORICAL_FEATURES
                    .iter()
                    .position(|f| f == feature)
                    .expect("categorical feature");
                match categorical_token(v, ci) {
                    None => node = missing,
                    Some(token) => {
                        match branches.iter().find(|(t, _)| *t == token) {
                            Some((_, child)) => node = child,
                            None => return counts.majority(),
                        }
                    }
                }
            }
            TreeNode::InterestSplit {
                feature,
                has,
                has_not,
                ..
            } => {
                let Feature::Interest(fi) = feature else {
                    unreachable!()
                };
                let id = &tree.interest_features[*fi].interest_id;
                node = if v.has_interest(id) { has } else { has_not };
            }
        }
    }
}

fn feature_label(tree: &DecisionTree, feature: &Feature) -> String {
    match feature {
        Feature::Age => "age".to_string(),
        Feature::Gender => "gender".to_string(),
        Feature::Education => "education".to_string(),
        Feature::Degree => "degree".to_string(),
        Feature::Hometown => "hometown".to_string(),
        Feature::Location => "location".to_string(),
        Feature::Political => "political".to_string(),
        Feature::Relationship => "relationship".to_string(),
        Feature::Religion => "religion".to_string(),
        Feature::Interest(i) => format!("interest \"{}\"", tree.interest_features[*i].label),
    }
}

/// Renders the tree as deterministic indented text, one node per line.
pub fn export_tree(tree: &DecisionTree) -> String {
    let mut out = String::new();
    render(tree, &tree.root, 0, "", &mut out);
    out
}

fn render(tree: &DecisionTree, node: &TreeNode, indent: usize, prefix: &str, out: &mut String) {
    let pad = "  ".repeat(indent);
    match node {
        TreeNode::Leaf { category, counts } => {
            let _ = writeln!(
                out,
                "{pad}{prefix}leaf: {category} (F={}, P={}, U={})",
                counts.fundamentalist, counts.pragmatic, counts.unconcerned
            );
        }
        TreeNode::NumericSplit {
            feature,
            threshold,
            below,
            at_or_above,
            ..
        } => {
            let _ = writeln!(out, "{pad}{prefix}{} < {threshold}?", feature_label(tree, feature));
            render(tree, below, indent + 1, "yes: ", out);
            render(tree, at_or_above, indent + 1, "no: ", out);
        }
        TreeNode::CategoricalSplit {
            feature,
            branches,
            missing,
            ..
        } => {
            let _ = writeln!(out, "{pad}{prefix}{}?", feature_label(tree, feature));
            for (token, child) in branches {
                render(tree, child, indent + 1, &format!("= {token}: "), out);
            }
            render(tree, missing, indent + 1, "missing: ", out);
        }
        TreeNode::InterestSplit {
            feature,
            has,
            has_not,
            ..
        } => {
            let _ = writeln!(out, "{pad}{prefix}{}?", feature_label(tree, feature));
            render(tree, has, indent + 1, "has: ", out);
            render(tree, has_not, indent + 1, "lacks: ", out);
        }
    }
}

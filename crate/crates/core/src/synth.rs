//! Seeded synthetic-population generator.
//!
//! Populations are sampled from configurable per-attribute marginals: a
//! missing probability per profile attribute, an interest catalog with
//! popularity weights, an album-count range, and an album-privacy
//! distribution. The bundled defaults encode the published marginals the
//! artifact is calibrated against (degree 94% missing, political view 91%,
//! ... gender 4%; a public-heavy album skew) — see `paper-marginals.json`
//! at the repository root.
//!
//! Generation is deterministic and platform-independent: every user draws
//! from a ChaCha substream keyed by the user index, so growing `n_users`
//! never perturbs earlier users.
//!
//! An optional planted signal makes one attribute's presence a
//! deterministic function of other attributes' presence bits, which gives
//! the evaluation harness a recoverable ground truth.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{Dataset, DatasetMetadata};
use crate::profile::{
    build_vector, AlbumPrivacyValue, Attribute, Birthday, Gender, InterestItem, PhotoAlbum,
    ProfileError, Relationship, UserProfile, DEFAULT_REFERENCE_YEAR,
};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synth configuration: {0}")]
    InvalidConfig(String),
    #[error("album privacy distribution sums to {sum}, expected exactly 1")]
    InvalidDistribution { sum: String },
    #[error("failed to read {path}: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// An exact probability, stored as a decimal fraction so distribution sums
/// can be validated without floating-point slack. `0.4` is 4/10, never
/// `0.40000000000000002`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    /// Always a power of ten.
    den: u64,
}

impl Probability {
    pub const ZERO: Probability = Probability { num: 0, den: 1 };
    pub const ONE: Probability = Probability { num: 1, den: 1 };

    pub fn from_percent(percent: u32) -> Result<Self, String> {
        if percent > 100 {
            return Err(format!("percent {percent} out of range"));
        }
        Ok(Probability {
            num: u64::from(percent),
            den: 100,
        })
    }

    /// Parses the shortest decimal representation of `value` exactly.
    pub fn from_f64(value: f64) -> Result<Self, String> {
        if !(0.0..=1.0).contains(&value) {
            return Err(format!("probability {value} outside [0, 1]"));
        }
        Self::from_decimal_str(&format!("{value}"))
    }

    pub fn from_decimal_str(s: &str) -> Result<Self, String> {
        let err = || format!("`{s}` is not a decimal probability");
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if frac_part.len() > 17 || int_part.is_empty() {
            return Err(err());
        }
        let int: u64 = int_part.parse().map_err(|_| err())?;
        let frac: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| err())?
        };
        let den = 10u64.pow(frac_part.len() as u32);
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(err)?;
        if num > den {
            return Err(format!("probability {s} exceeds 1"));
        }
        // Canonical form: 0.40 and 0.4 are the same probability.
        let mut p = Probability { num, den };
        while p.den > 1 && p.num % 10 == 0 {
            p.num /= 10;
            p.den /= 10;
        }
        Ok(p)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Numerator rescaled to the common denominator `scale`.
    fn scaled(&self, scale: u64) -> u64 {
        self.num * (scale / self.den)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Probability {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = f64::deserialize(deserializer)?;
        Probability::from_f64(value).map_err(serde::de::Error::custom)
    }
}

/// Per-attribute probability of being absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MissingProbabilities {
    pub gender: f64,
    pub birthday: f64,
    pub education: f64,
    pub degree: f64,
    pub hometown: f64,
    pub location: f64,
    pub political: f64,
    pub relationship: f64,
    pub religion: f64,
    pub interests: f64,
}

impl Default for MissingProbabilities {
    /// The published Table-style marginals; the full-birthday rate is an
    /// artifact default (only the birth year's 0% rate is published).
    fn default() -> Self {
        MissingProbabilities {
            gender: 0.04,
            birthday: 0.50,
            education: 0.12,
            degree: 0.94,
            hometown: 0.36,
            location: 0.20,
            political: 0.91,
            relationship: 0.39,
            religion: 0.67,
            interests: 0.32,
        }
    }
}

impl MissingProbabilities {
    pub fn get(&self, attribute: Attribute) -> f64 {
        match attribute {
            Attribute::Gender => self.gender,
            Attribute::Birthday => self.birthday,
            Attribute::Education => self.education,
            Attribute::Degree => self.degree,
            Attribute::Hometown => self.hometown,
            Attribute::Location => self.location,
            Attribute::Political => self.political,
            Attribute::Relationship => self.relationship,
            Attribute::Religion => self.religion,
            Attribute::Interests => self.interests,
        }
    }

    pub fn set(&mut self, attribute: Attribute, value: f64) {
        match attribute {
            Attribute::Gender => self.gender = value,
            Attribute::Birthday => self.birthday = value,
            Attribute::Education => self.education = value,
            Attribute::Degree => self.degree = value,
            Attribute::Hometown => self.hometown = value,
            Attribute::Location => self.location = value,
            Attribute::Political => self.political = value,
            Attribute::Relationship => self.relationship = value,
            Attribute::Religion => self.religion = value,
            Attribute::Interests => self.interests = value,
        }
    }
}

/// Album privacy distribution; the five probabilities must sum to exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlbumPrivacyDistribution {
    pub everyone: Probability,
    pub friends: Probability,
    pub friends_of_friends: Probability,
    pub networks_friends: Probability,
    pub custom: Probability,
}

impl Default for AlbumPrivacyDistribution {
    /// Artifact defaults encoding the published qualitative skew: public
    /// albums dominate, friends-of-friends trail, friends and custom are
    /// balanced.
    fn default() -> Self {
        let p = |s: &str| Probability::from_decimal_str(s).unwrap();
        AlbumPrivacyDistribution {
            everyone: p("0.40"),
            friends: p("0.25"),
            friends_of_friends: p("0.10"),
            networks_friends: p("0.05"),
            custom: p("0.20"),
        }
    }
}

impl AlbumPrivacyDistribution {
    fn entries(&self) -> [(AlbumPrivacyValue, Probability); 5] {
        [
            (AlbumPrivacyValue::Everyone, self.everyone),
            (AlbumPrivacyValue::Friends, self.friends),
            (AlbumPrivacyValue::FriendsOfFriends, self.friends_of_friends),
            (AlbumPrivacyValue::NetworksFriends, self.networks_friends),
            (AlbumPrivacyValue::Custom, self.custom),
        ]
    }

    /// Exact-rational sum check. Denominators are powers of ten, so the
    /// common denominator is their maximum.
    fn validate(&self) -> Result<u64, SynthError> {
        let entries = self.entries();
        let scale = entries.iter().map(|(_, p)| p.den).max().unwrap();
        let total: u128 = entries.iter().map(|(_, p)| u128::from(p.scaled(scale))).sum();
        if total != u128::from(scale) {
            return Err(SynthError::InvalidDistribution {
                sum: format!("{total}/{scale}"),
            });
        }
        Ok(scale)
    }

    fn sample(&self, rng: &mut impl Rng, scale: u64) -> AlbumPrivacyValue {
        let draw = rng.gen_range(0..scale);
        let mut cumulative = 0u64;
        for (value, p) in self.entries() {
            cumulative += p.scaled(scale);
            if draw < cumulative {
                return value;
            }
        }
        AlbumPrivacyValue::Custom
    }
}

/// One interest topic available to the generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestSpec {
    pub interest_id: String,
    pub display_name: String,
    pub category: String,
    pub weight: u32,
}

/// Boolean combination applied to the indicator attributes' presence bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantedRule {
    /// Strictly more than half of the indicators are disclosed.
    Majority,
    Any,
    All,
    /// An odd number of indicators are disclosed.
    Parity,
}

impl PlantedRule {
    pub fn evaluate(&self, bits: &[bool]) -> bool {
        let set = bits.iter().filter(|&&b| b).count();
        match self {
            PlantedRule::Majority => 2 * set > bits.len(),
            PlantedRule::Any => set > 0,
            PlantedRule::All => set == bits.len(),
            PlantedRule::Parity => set % 2 == 1,
        }
    }
}

/// Makes `target`'s presence a deterministic function of the indicator
/// attributes' presence bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedSignal {
    pub target: Attribute,
    pub indicators: Vec<Attribute>,
    pub rule: PlantedRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_users: usize,
    pub seed: u64,
    pub reference_year: i32,
    pub age_min: u32,
    pub age_max: u32,
    pub missing: MissingProbabilities,
    pub interest_catalog: Vec<InterestSpec>,
    pub min_interests: usize,
    pub max_interests: usize,
    pub album_count_min: u32,
    pub album_count_max: u32,
    pub album_privacy: AlbumPrivacyDistribution,
    pub planted_signal: Option<PlantedSignal>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_users: 150,
            seed: 42,
            reference_year: DEFAULT_REFERENCE_YEAR,
            age_min: 18,
            age_max: 30,
            missing: MissingProbabilities::default(),
            interest_catalog: default_interest_catalog(),
            min_interests: 1,
            max_interests: 8,
            album_count_min: 0,
            album_count_max: 30,
            album_privacy: AlbumPrivacyDistribution::default(),
            planted_signal: None,
        }
    }
}

impl SynthConfig {
    pub fn from_json_str(json: &str) -> Result<Self, SynthError> {
        serde_json::from_str(json).map_err(|e| SynthError::InvalidConfig(e.to_string()))
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, SynthError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| SynthError::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n_users == 0 {
            return Err(SynthError::InvalidConfig("n_users must be at least 1".into()));
        }
        if self.age_min > self.age_max {
            return Err(SynthError::InvalidConfig(format!(
                "age_min {} exceeds age_max {}",
                self.age_min, self.age_max
            )));
        }
        if self.album_count_min > self.album_count_max {
            return Err(SynthError::InvalidConfig(format!(
                "album_count_min {} exceeds album_count_max {}",
                self.album_count_min, self.album_count_max
            )));
        }
        if self.min_interests == 0 || self.min_interests > self.max_interests {
            return Err(SynthError::InvalidConfig(
                "interest count range must satisfy 1 <= min <= max".into(),
            ));
        }
        if self.interest_catalog.is_empty() {
            return Err(SynthError::InvalidConfig("interest catalog is empty".into()));
        }
        if self.interest_catalog.iter().any(|s| s.weight == 0) {
            return Err(SynthError::InvalidConfig(
                "interest weights must be positive".into(),
            ));
        }
        for attribute in Attribute::ALL {
            let p = self.missing.get(attribute);
            if !(0.0..=1.0).contains(&p) {
                return Err(SynthError::InvalidConfig(format!(
                    "missing probability for {attribute} is {p}, outside [0, 1]"
                )));
            }
        }
        self.album_privacy.validate()?;
        if let Some(signal) = &self.planted_signal {
            if signal.indicators.is_empty() {
                return Err(SynthError::InvalidConfig(
                    "planted signal needs at least one indicator".into(),
                ));
            }
            if signal.indicators.contains(&signal.target) {
                return Err(SynthError::InvalidConfig(format!(
                    "planted target {} cannot be its own indicator",
                    signal.target
                )));
            }
            let mut seen = std::collections::BTreeSet::new();
            for indicator in &signal.indicators {
                if !seen.insert(indicator) {
                    return Err(SynthError::InvalidConfig(format!(
                        "planted indicator {indicator} listed twice"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The ten published top topics with their user counts as weights, plus a
/// uniform long tail.
pub fn default_interest_catalog() -> Vec<InterestSpec> {
    let spec = |id: &str, name: &str, category: &str, weight: u32| InterestSpec {
        interest_id: id.to_string(),
        display_name: name.to_string(),
        category: category.to_string(),
        weight,
    };
    let mut catalog = vec![
        spec("i001", "The Big Bang Theory", "TV show", 10),
        spec("i002", "Game of Thrones", "TV show", 7),
        spec("i003", "Dexter", "TV show", 6),
        spec("i004", "Coldplay", "Musician band", 5),
        spec("i005", "FRIENDS", "TV show", 5),
        spec("i006", "Suave Sabor", "Restaurant café", 5),
        spec("i007", "How I Met Your Mother", "TV show", 5),
        spec("i008", "Adele", "Musician band", 4),
        spec("i009", "Bob Marley", "Musician band", 4),
        spec("i010", "Chico Buarque", "Musician band", 4),
    ];
    let tail_categories = ["TV show", "Musician band", "Sport", "Movie", "Book"];
    for i in 11..=40u32 {
        catalog.push(spec(
            &format!("i{i:03}"),
            &format!("Topic {i}"),
            tail_categories[(i as usize - 11) % tail_categories.len()],
            2,
        ));
    }
    catalog
}

const CITY_POOL: [&str; 8] = [
    "Ottawa",
    "Toronto",
    "Montreal",
    "Halifax",
    "Vancouver",
    "Sao Paulo",
    "Rio de Janeiro",
    "Curitiba",
];
const POLITICAL_POOL: [&str; 5] = ["Liberal", "Conservative", "Green", "Libertarian", "Socialist"];
const RELIGION_POOL: [&str; 7] = [
    "Christian-Catholic",
    "Christian-Protestant",
    "Muslim",
    "Jewish",
    "Buddhist",
    "Hindu",
    "Atheist",
];
const DEGREE_POOL: [&str; 6] = ["BSc", "BA", "BEng", "MSc", "MA", "PhD"];
const EDUCATION_POOL: [&str; 4] = ["HighSchool", "College", "Undergraduate", "Graduate"];

fn pick<'a>(rng: &mut impl Rng, pool: &[&'a str]) -> &'a str {
    pool[rng.gen_range(0..pool.len())]
}

/// Generates one user from its own seed substream. Draw order is fixed:
/// age, presence bits in attribute order (the planted target draws
/// nothing), then values in attribute order, then albums.
fn generate_user(
    config: &SynthConfig,
    privacy_scale: u64,
    index: usize,
) -> Result<crate::profile::UserVector, SynthError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64 + 1);

    let age = rng.gen_range(config.age_min..=config.age_max);
    let birth_year = config.reference_year - age as i32;

    let mut present = [false; 10];
    for attribute in Attribute::ALL {
        if config
            .planted_signal
            .as_ref()
            .is_some_and(|s| s.target == attribute)
        {
            continue;
        }
        present[attribute.index()] = !rng.gen_bool(config.missing.get(attribute));
    }
    if let Some(signal) = &config.planted_signal {
        let bits: Vec<bool> = signal
            .indicators
            .iter()
            .map(|i| present[i.index()])
            .collect();
        present[signal.target.index()] = signal.rule.evaluate(&bits);
    }

    let mut profile = UserProfile::bare(format!("u{index:05}"), birth_year);
    profile.name = Some(format!("User {index:05}"));
    for attribute in Attribute::ALL {
        if !present[attribute.index()] {
            continue;
        }
        match attribute {
            Attribute::Gender => {
                profile.gender = Some(if rng.gen_range(0..2u8) == 0 {
                    Gender::Female
                } else {
                    Gender::Male
                });
            }
            Attribute::Birthday => {
                let month = rng.gen_range(1..=12u8);
                let day = rng.gen_range(1..=28u8);
                profile.birthday = Some(Birthday::new(month, day, birth_year).unwrap());
            }
            Attribute::Education => {
                profile.education_level = Some(pick(&mut rng, &EDUCATION_POOL).to_string());
            }
            Attribute::Degree => {
                profile.degree = Some(pick(&mut rng, &DEGREE_POOL).to_string());
            }
            Attribute::Hometown => {
                profile.hometown = Some(pick(&mut rng, &CITY_POOL).to_string());
            }
            Attribute::Location => {
                profile.location = Some(pick(&mut rng, &CITY_POOL).to_string());
            }
            Attribute::Political => {
                profile.political = Some(pick(&mut rng, &POLITICAL_POOL).to_string());
            }
            Attribute::Relationship => {
                let i = rng.gen_range(0..Relationship::ALL.len());
                profile.relationship = Some(Relationship::ALL[i]);
            }
            Attribute::Religion => {
                profile.religion = Some(pick(&mut rng, &RELIGION_POOL).to_string());
            }
            Attribute::Interests => {}
        }
    }

    let interests = if present[Attribute::Interests.index()] {
        let cap = config.max_interests.min(config.interest_catalog.len());
        let count = rng.gen_range(config.min_interests.min(cap)..=cap);
        sample_interests(&mut rng, &config.interest_catalog, count)
    } else {
        Vec::new()
    };

    let album_count = rng.gen_range(config.album_count_min..=config.album_count_max);
    let albums: Vec<PhotoAlbum> = (0..album_count)
        .map(|j| {
            PhotoAlbum::new(
                format!("album {:02}", j + 1),
                config.album_privacy.sample(&mut rng, privacy_scale),
            )
        })
        .collect();

    Ok(build_vector(profile, interests, &albums)?)
}

/// Weighted sampling without replacement.
fn sample_interests(
    rng: &mut impl Rng,
    catalog: &[InterestSpec],
    count: usize,
) -> Vec<InterestItem> {
    let mut remaining: Vec<&InterestSpec> = catalog.iter().collect();
    let mut total: u64 = remaining.iter().map(|s| u64::from(s.weight)).sum();
    let mut chosen = Vec::with_capacity(count);
    for _ in 0..count.min(remaining.len()) {
        let mut draw = rng.gen_range(0..total);
        let mut index = remaining.len() - 1;
        for (i, spec) in remaining.iter().enumerate() {
            let w = u64::from(spec.weight);
            if draw < w {
                index = i;
                break;
            }
            draw -= w;
        }
        let spec = remaining.remove(index);
        total -= u64::from(spec.weight);
        chosen.push(InterestItem {
            interest_id: spec.interest_id.clone(),
            category: spec.category.clone(),
            display_name: Some(spec.display_name.clone()),
        });
    }
    chosen
}

/// Generates a population per the configuration; fully reproducible from
/// the seed.
pub fn generate_population(config: &SynthConfig) -> Result<Dataset, SynthError> {
    config.validate()?;
    let privacy_scale = config.album_privacy.validate()?;
    let users = (0..config.n_users)
        .map(|i| generate_user(config, privacy_scale, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dataset {
        users,
        metadata: DatasetMetadata {
            reference_year: config.reference_year,
            source: format!("synth(seed={}, n={})", config.seed, config.n_users),
        },
    })
}

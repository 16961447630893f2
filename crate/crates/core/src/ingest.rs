//! Dataset ingestion: CSV and combined-JSON parsing, multilingual
//! normalization, CSV export, and dataset statistics.
//!
//! Three files make up a CSV dataset:
//!
//! - profiles: `user_id,name,gender,birth_year,birthday,education,degree,hometown,location,political,relationship,religion`
//! - interests: `user_id,interest_id,category,display_name`
//! - albums: `user_id,album_name,privacy`
//!
//! Empty cells mean the attribute is absent. Album privacy accepts only the
//! five exact uppercase tokens. The combined JSON alternative carries the
//! same fields as arrays `users`, `interests`, `albums` in one document.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::{
    build_vector, AlbumPrivacyValue, Attribute, Birthday, Gender, InterestItem, PhotoAlbum,
    ProfileError, Relationship, UserProfile, UserVector, DEFAULT_REFERENCE_YEAR,
};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: String, column: String },
    #[error("{path}:{line}: {message}")]
    Row {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{path}:{line}: row references unknown user `{user_id}`")]
    UnknownUser {
        path: String,
        line: u64,
        user_id: String,
    },
    #[error("{path}:{line}: duplicate user id `{user_id}`")]
    DuplicateUser {
        path: String,
        line: u64,
        user_id: String,
    },
    #[error("invalid normalization dictionary: {0}")]
    InvalidDictionary(String),
    #[error("invalid dataset JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("dataset is empty")]
    EmptyDataset,
}

/// Where a dataset came from and which year its ages are measured against.
///
/// `source` is provenance only; two datasets with the same users and
/// reference year compare equal regardless of where they were loaded from.
#[derive(Debug, Clone, Eq, PartialEq, Serialize, Deserialize)]
pub struct DatasetMetadata {
    pub reference_year: i32,
    pub source: String,
}

/// An ordered collection of user vectors with unique user ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dataset {
    pub users: Vec<UserVector>,
    pub metadata: DatasetMetadata,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.users == other.users
            && self.metadata.reference_year == other.metadata.reference_year
    }
}

impl Eq for Dataset {}

impl Dataset {
    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    pub fn find_user(&self, user_id: &str) -> Option<&UserVector> {
        self.users.iter().find(|u| u.user_id() == user_id)
    }
}

fn default_education_order() -> Vec<String> {
    ["HighSchool", "College", "Undergraduate", "Graduate"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Synonym map plus the education-level ordering.
///
/// Synonyms apply to the religion, political, and relationship fields; any
/// token without an entry passes through verbatim, since the dictionary is
/// expected to be incomplete. A value may serve as the canonical form of
/// several raw tokens, but no value may itself be a key mapping elsewhere —
/// that would break normalization idempotence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationDictionary {
    #[serde(default)]
    pub synonyms: BTreeMap<String, String>,
    #[serde(default = "default_education_order")]
    pub education_order: Vec<String>,
}

impl Default for NormalizationDictionary {
    fn default() -> Self {
        let mut synonyms = BTreeMap::new();
        synonyms.insert("Cristão-Católico".to_string(), "Christian-Catholic".to_string());
        synonyms.insert("Católico".to_string(), "Christian-Catholic".to_string());
        synonyms.insert("Catholic".to_string(), "Christian-Catholic".to_string());
        synonyms.insert("Cristão".to_string(), "Christian".to_string());
        NormalizationDictionary {
            synonyms,
            education_order: default_education_order(),
        }
    }
}

impl NormalizationDictionary {
    pub fn from_json_str(json: &str) -> Result<Self, IngestError> {
        let dict: NormalizationDictionary = serde_json::from_str(json)
            .map_err(|e| IngestError::InvalidDictionary(e.to_string()))?;
        dict.validate()?;
        Ok(dict)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, IngestError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        for value in self.synonyms.values() {
            if let Some(mapped) = self.synonyms.get(value) {
                if mapped != value {
                    return Err(IngestError::InvalidDictionary(format!(
                        "canonical token `{value}` is itself mapped to `{mapped}`"
                    )));
                }
            }
        }
        let mut seen = HashSet::new();
        for level in &self.education_order {
            if !seen.insert(level) {
                return Err(IngestError::InvalidDictionary(format!(
                    "education level `{level}` listed twice"
                )));
            }
        }
        Ok(())
    }

    /// Maps a raw token through the synonym table; unmapped tokens pass
    /// through verbatim.
    pub fn canonicalize<'a>(&'a self, token: &'a str) -> &'a str {
        self.synonyms.get(token).map(String::as_str).unwrap_or(token)
    }

    /// Rank of an education token in `education_order` (higher = more
    /// advanced), matched ignoring case and non-alphanumeric characters.
    pub fn education_rank(&self, token: &str) -> Option<usize> {
        let key = fold_token(token);
        self.education_order.iter().position(|l| fold_token(l) == key)
    }

    /// Canonical spelling for an education token, if it is a known level.
    fn education_canonical(&self, token: &str) -> Option<&str> {
        self.education_rank(token)
            .map(|i| self.education_order[i].as_str())
    }
}

fn fold_token(token: &str) -> String {
    token
        .chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(|c| c.to_lowercase())
        .collect()
}

/// One raw profile row, cells exactly as they appeared in the file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RawProfileRow {
    pub user_id: String,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub gender: String,
    #[serde(default)]
    pub birth_year: String,
    #[serde(default)]
    pub birthday: String,
    #[serde(default)]
    pub education: String,
    #[serde(default)]
    pub degree: String,
    #[serde(default)]
    pub hometown: String,
    #[serde(default)]
    pub location: String,
    #[serde(default)]
    pub political: String,
    #[serde(default)]
    pub relationship: String,
    #[serde(default)]
    pub religion: String,
}

pub const PROFILE_COLUMNS: [&str; 12] = [
    "user_id",
    "name",
    "gender",
    "birth_year",
    "birthday",
    "education",
    "degree",
    "hometown",
    "location",
    "political",
    "relationship",
    "religion",
];

fn blank_to_none(cell: &str) -> Option<&str> {
    let trimmed = cell.trim();
    if trimmed.is_empty() {
        None
    } else {
        Some(trimmed)
    }
}

/// Normalizes one raw profile row into a [`UserProfile`].
///
/// Whitespace-only cells become absent; religion, political, and
/// relationship tokens go through the synonym map; a multi-valued education
/// cell (`;`-separated) keeps the highest level per `education_order`.
/// Closed enumerations (gender, relationship) must parse after mapping.
pub fn normalize_record(
    raw: &RawProfileRow,
    dictionary: &NormalizationDictionary,
) -> Result<UserProfile, String> {
    let user_id = blank_to_none(&raw.user_id)
        .ok_or_else(|| "empty user_id".to_string())?
        .to_string();
    let birth_year: i32 = blank_to_none(&raw.birth_year)
        .ok_or_else(|| "birth_year is required".to_string())?
        .parse()
        .map_err(|_| format!("invalid birth_year `{}`", raw.birth_year.trim()))?;

    let gender = blank_to_none(&raw.gender)
        .map(|g| Gender::from_str(g).map_err(|e| e.to_string()))
        .transpose()?;
    let birthday = blank_to_none(&raw.birthday)
        .map(|b| Birthday::from_str(b).map_err(|e| e.to_string()))
        .transpose()?;
    let relationship = blank_to_none(&raw.relationship)
        .map(|r| {
            Relationship::from_str(dictionary.canonicalize(r)).map_err(|e| e.to_string())
        })
        .transpose()?;

    Ok(UserProfile {
        user_id,
        name: blank_to_none(&raw.name).map(String::from),
        gender,
        birthday,
        birth_year,
        education_level: normalize_education(&raw.education, dictionary),
        degree: blank_to_none(&raw.degree).map(String::from),
        hometown: blank_to_none(&raw.hometown).map(String::from),
        location: blank_to_none(&raw.location).map(String::from),
        political: blank_to_none(&raw.political)
            .map(|p| dictionary.canonicalize(p).to_string()),
        relationship,
        religion: blank_to_none(&raw.religion)
            .map(|r| dictionary.canonicalize(r).to_string()),
    })
}

/// Picks the highest education level from a possibly multi-valued cell.
/// Tokens not in `education_order` rank below every known level; if no
/// token is known the first one is kept verbatim.
fn normalize_education(cell: &str, dictionary: &NormalizationDictionary) -> Option<String> {
    let tokens: Vec<&str> = cell
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return None;
    }
    let best = tokens
        .iter()
        .enumerate()
        .max_by_key(|(i, t)| {
            // Known levels beat unknown ones; earlier tokens win exact ties.
            (
                dictionary.education_rank(t).map(|r| r as i64).unwrap_or(-1),
                -(*i as i64),
            )
        })
        .map(|(_, t)| *t)?;
    Some(
        dictionary
            .education_canonical(best)
            .unwrap_or(best)
            .to_string(),
    )
}

struct CsvTable {
    path: String,
    header: HashMap<String, usize>,
    rows: Vec<(u64, csv::StringRecord)>,
}

fn read_csv(path: &Path) -> Result<CsvTable, IngestError> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .map_err(|source| match source.kind() {
            csv::ErrorKind::Io(_) => {
                if let csv::ErrorKind::Io(io) = source.into_kind() {
                    IngestError::Io {
                        path: display.clone(),
                        source: io,
                    }
                } else {
                    unreachable!()
                }
            }
            _ => IngestError::Csv {
                path: display.clone(),
                source,
            },
        })?;
    let header = reader
        .headers()
        .map_err(|source| IngestError::Csv {
            path: display.clone(),
            source,
        })?
        .iter()
        .enumerate()
        .map(|(i, h)| (h.trim().to_string(), i))
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|source| IngestError::Csv {
            path: display.clone(),
            source,
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        rows.push((line, record));
    }
    Ok(CsvTable {
        path: display,
        header,
        rows,
    })
}

impl CsvTable {
    fn column(&self, name: &str) -> Result<usize, IngestError> {
        self.header
            .get(name)
            .copied()
            .ok_or_else(|| IngestError::MissingColumn {
                path: self.path.clone(),
                column: name.to_string(),
            })
    }

    fn cell<'a>(&self, record: &'a csv::StringRecord, index: usize) -> &'a str {
        record.get(index).unwrap_or("")
    }
}

/// Parses the three CSV files into a dataset anchored at the default
/// reference year.
pub fn parse_profiles(
    profiles_path: impl AsRef<Path>,
    interests_path: impl AsRef<Path>,
    albums_path: impl AsRef<Path>,
    dictionary: &NormalizationDictionary,
) -> Result<Dataset, IngestError> {
    parse_profiles_with_year(
        profiles_path,
        interests_path,
        albums_path,
        dictionary,
        DEFAULT_REFERENCE_YEAR,
    )
}

/// As [`parse_profiles`] with an explicit reference year for age derivation.
pub fn parse_profiles_with_year(
    profiles_path: impl AsRef<Path>,
    interests_path: impl AsRef<Path>,
    albums_path: impl AsRef<Path>,
    dictionary: &NormalizationDictionary,
    reference_year: i32,
) -> Result<Dataset, IngestError> {
    dictionary.validate()?;

    let profiles_path = profiles_path.as_ref();
    let table = read_csv(profiles_path)?;
    let cols: Vec<usize> = PROFILE_COLUMNS
        .iter()
        .map(|c| table.column(c))
        .collect::<Result<_, _>>()?;

    let mut profiles: Vec<UserProfile> = Vec::with_capacity(table.rows.len());
    let mut index_of: HashMap<String, usize> = HashMap::new();
    for (line, record) in &table.rows {
        let raw = RawProfileRow {
            user_id: table.cell(record, cols[0]).to_string(),
            name: table.cell(record, cols[1]).to_string(),
            gender: table.cell(record, cols[2]).to_string(),
            birth_year: table.cell(record, cols[3]).to_string(),
            birthday: table.cell(record, cols[4]).to_string(),
            education: table.cell(record, cols[5]).to_string(),
            degree: table.cell(record, cols[6]).to_string(),
            hometown: table.cell(record, cols[7]).to_string(),
            location: table.cell(record, cols[8]).to_string(),
            political: table.cell(record, cols[9]).to_string(),
            relationship: table.cell(record, cols[10]).to_string(),
            religion: table.cell(record, cols[11]).to_string(),
        };
        let profile = normalize_record(&raw, dictionary).map_err(|message| IngestError::Row {
            path: table.path.clone(),
            line: *line,
            message,
        })?;
        if index_of
            .insert(profile.user_id.clone(), profiles.len())
            .is_some()
        {
            return Err(IngestError::DuplicateUser {
                path: table.path.clone(),
                line: *line,
                user_id: profile.user_id,
            });
        }
        profiles.push(profile);
    }

    let interests = parse_interests_file(interests_path.as_ref(), &index_of)?;
    let albums = parse_albums_rows(albums_path.as_ref(), Some(&index_of))?;

    assemble_dataset(
        profiles,
        interests,
        albums,
        reference_year,
        format!("csv:{}", profiles_path.display()),
    )
}

fn parse_interests_file(
    path: &Path,
    known_users: &HashMap<String, usize>,
) -> Result<Vec<(String, InterestItem)>, IngestError> {
    let table = read_csv(path)?;
    let user_col = table.column("user_id")?;
    let id_col = table.column("interest_id")?;
    let category_col = table.column("category")?;
    let display_col = table.column("display_name")?;

    let mut out = Vec::with_capacity(table.rows.len());
    for (line, record) in &table.rows {
        let user_id = table.cell(record, user_col).trim().to_string();
        if !known_users.contains_key(&user_id) {
            return Err(IngestError::UnknownUser {
                path: table.path.clone(),
                line: *line,
                user_id,
            });
        }
        let interest_id = blank_to_none(table.cell(record, id_col))
            .ok_or_else(|| IngestError::Row {
                path: table.path.clone(),
                line: *line,
                message: "empty interest_id".to_string(),
            })?
            .to_string();
        let category = table.cell(record, category_col).trim().to_string();
        let display_name = blank_to_none(table.cell(record, display_col)).map(String::from);
        out.push((
            user_id,
            InterestItem {
                interest_id,
                category,
                display_name,
            },
        ));
    }
    Ok(out)
}

/// Parses an albums CSV into `(user_id, album)` rows, preserving file
/// order. Used by the audit pipeline, which needs album names rather than
/// the summarized counts a [`Dataset`] carries.
pub fn parse_albums_file(path: impl AsRef<Path>) -> Result<Vec<(String, PhotoAlbum)>, IngestError> {
    parse_albums_rows(path.as_ref(), None)
}

fn parse_albums_rows(
    path: &Path,
    known_users: Option<&HashMap<String, usize>>,
) -> Result<Vec<(String, PhotoAlbum)>, IngestError> {
    let table = read_csv(path)?;
    let user_col = table.column("user_id")?;
    let name_col = table.column("album_name")?;
    let privacy_col = table.column("privacy")?;

    let mut out = Vec::with_capacity(table.rows.len());
    for (line, record) in &table.rows {
        let user_id = table.cell(record, user_col).trim().to_string();
        if let Some(known) = known_users {
            if !known.contains_key(&user_id) {
                return Err(IngestError::UnknownUser {
                    path: table.path.clone(),
                    line: *line,
                    user_id,
                });
            }
        }
        let name = blank_to_none(table.cell(record, name_col)).ok_or_else(|| IngestError::Row {
            path: table.path.clone(),
            line: *line,
            message: "empty album_name".to_string(),
        })?;
        let token = table.cell(record, privacy_col).trim();
        let privacy =
            AlbumPrivacyValue::from_str(token).map_err(|e| IngestError::Row {
                path: table.path.clone(),
                line: *line,
                message: e.to_string(),
            })?;
        out.push((user_id, PhotoAlbum::new(name, privacy)));
    }
    Ok(out)
}

fn assemble_dataset(
    profiles: Vec<UserProfile>,
    interests: Vec<(String, InterestItem)>,
    albums: Vec<(String, PhotoAlbum)>,
    reference_year: i32,
    source: String,
) -> Result<Dataset, IngestError> {
    // Interest categories must agree across the whole dataset: topic ids
    // are global.
    let mut category_of: HashMap<String, String> = HashMap::new();
    for (_, item) in &interests {
        match category_of.get(&item.interest_id) {
            Some(existing) if existing != &item.category => {
                return Err(ProfileError::ConflictingInterest {
                    interest_id: item.interest_id.clone(),
                    first: existing.clone(),
                    second: item.category.clone(),
                }
                .into());
            }
            Some(_) => {}
            None => {
                category_of.insert(item.interest_id.clone(), item.category.clone());
            }
        }
    }

    let mut interests_by_user: HashMap<String, Vec<InterestItem>> = HashMap::new();
    for (user_id, item) in interests {
        interests_by_user.entry(user_id).or_default().push(item);
    }
    let mut albums_by_user: HashMap<String, Vec<PhotoAlbum>> = HashMap::new();
    for (user_id, album) in albums {
        albums_by_user.entry(user_id).or_default().push(album);
    }

    let mut users = Vec::with_capacity(profiles.len());
    for profile in profiles {
        let user_interests = interests_by_user.remove(&profile.user_id).unwrap_or_default();
        let user_albums = albums_by_user.remove(&profile.user_id).unwrap_or_default();
        users.push(build_vector(profile, user_interests, &user_albums)?);
    }

    Ok(Dataset {
        users,
        metadata: DatasetMetadata {
            reference_year,
            source,
        },
    })
}

/// The combined single-document JSON form of a dataset.
#[derive(Debug, Default, Serialize, Deserialize)]
pub struct CombinedDocument {
    pub users: Vec<RawProfileRow>,
    #[serde(default)]
    pub interests: Vec<RawInterestRow>,
    #[serde(default)]
    pub albums: Vec<RawAlbumRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawInterestRow {
    pub user_id: String,
    pub interest_id: String,
    #[serde(default)]
    pub category: String,
    #[serde(default)]
    pub display_name: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawAlbumRow {
    pub user_id: String,
    pub album_name: String,
    pub privacy: String,
}

/// Parses the combined JSON document alternative to the CSV triplet.
pub fn parse_json_dataset(
    path: impl AsRef<Path>,
    dictionary: &NormalizationDictionary,
) -> Result<Dataset, IngestError> {
    parse_json_dataset_with_year(path, dictionary, DEFAULT_REFERENCE_YEAR)
}

pub fn parse_json_dataset_with_year(
    path: impl AsRef<Path>,
    dictionary: &NormalizationDictionary,
    reference_year: i32,
) -> Result<Dataset, IngestError> {
    dictionary.validate()?;
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: display.clone(),
        source,
    })?;
    let doc: CombinedDocument = serde_json::from_str(&text).map_err(|e| IngestError::Json {
        path: display.clone(),
        message: e.to_string(),
    })?;

    let mut profiles = Vec::with_capacity(doc.users.len());
    let mut index_of: HashMap<String, usize> = HashMap::new();
    for (i, raw) in doc.users.iter().enumerate() {
        let profile = normalize_record(raw, dictionary).map_err(|message| IngestError::Row {
            path: display.clone(),
            line: i as u64 + 1,
            message,
        })?;
        if index_of
            .insert(profile.user_id.clone(), profiles.len())
            .is_some()
        {
            return Err(IngestError::DuplicateUser {
                path: display.clone(),
                line: i as u64 + 1,
                user_id: profile.user_id,
            });
        }
        profiles.push(profile);
    }

    let mut interests = Vec::with_capacity(doc.interests.len());
    for (i, row) in doc.interests.iter().enumerate() {
        if !index_of.contains_key(&row.user_id) {
            return Err(IngestError::UnknownUser {
                path: display.clone(),
                line: i as u64 + 1,
                user_id: row.user_id.clone(),
            });
        }
        interests.push((
            row.user_id.clone(),
            InterestItem {
                interest_id: row.interest_id.clone(),
                category: row.category.clone(),
                display_name: blank_to_none(&row.display_name).map(String::from),
            },
        ));
    }

    let mut albums = Vec::with_capacity(doc.albums.len());
    for (i, row) in doc.albums.iter().enumerate() {
        if !index_of.contains_key(&row.user_id) {
            return Err(IngestError::UnknownUser {
                path: display.clone(),
                line: i as u64 + 1,
                user_id: row.user_id.clone(),
            });
        }
        let privacy =
            AlbumPrivacyValue::from_str(row.privacy.trim()).map_err(|e| IngestError::Row {
                path: display.clone(),
                line: i as u64 + 1,
                message: e.to_string(),
            })?;
        let name = blank_to_none(&row.album_name).ok_or_else(|| IngestError::Row {
            path: display.clone(),
            line: i as u64 + 1,
            message: "empty album_name".to_string(),
        })?;
        albums.push((row.user_id.clone(), PhotoAlbum::new(name, privacy)));
    }

    assemble_dataset(
        profiles,
        interests,
        albums,
        reference_year,
        format!("json:{display}"),
    )
}

/// Serializes a profile back into raw CSV cells (the inverse of
/// [`normalize_record`] for canonical values).
pub fn profile_to_row(profile: &UserProfile) -> RawProfileRow {
    RawProfileRow {
        user_id: profile.user_id.clone(),
        name: profile.name.clone().unwrap_or_default(),
        gender: profile.gender.map(|g| g.to_string()).unwrap_or_default(),
        birth_year: profile.birth_year.to_string(),
        birthday: profile.birthday.map(|b| b.to_string()).unwrap_or_default(),
        education: profile.education_level.clone().unwrap_or_default(),
        degree: profile.degree.clone().unwrap_or_default(),
        hometown: profile.hometown.clone().unwrap_or_default(),
        location: profile.location.clone().unwrap_or_default(),
        political: profile.political.clone().unwrap_or_default(),
        relationship: profile
            .relationship
            .map(|r| r.to_string())
            .unwrap_or_default(),
        religion: profile.religion.clone().unwrap_or_default(),
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, IngestError> {
    csv::Writer::from_path(path).map_err(|source| IngestError::Csv {
        path: path.display().to_string(),
        source,
    })
}

fn write_err(path: &Path) -> impl Fn(csv::Error) -> IngestError + '_ {
    move |source| IngestError::Csv {
        path: path.display().to_string(),
        source,
    }
}

/// Writes a dataset to the three-file CSV format.
///
/// Album rows are expanded from the per-user summaries with deterministic
/// names, so `write` followed by [`parse_profiles`] reproduces the dataset
/// exactly (album names are not part of a [`Dataset`]).
pub fn write_dataset_csv(
    dataset: &Dataset,
    profiles_path: impl AsRef<Path>,
    interests_path: impl AsRef<Path>,
    albums_path: impl AsRef<Path>,
) -> Result<(), IngestError> {
    let profiles_path = profiles_path.as_ref();
    let mut w = csv_writer(profiles_path)?;
    w.write_record(PROFILE_COLUMNS).map_err(write_err(profiles_path))?;
    for user in &dataset.users {
        let row = profile_to_row(&user.profile);
        w.write_record([
            row.user_id.as_str(),
            row.name.as_str(),
            row.gender.as_str(),
            row.birth_year.as_str(),
            row.birthday.as_str(),
            row.education.as_str(),
            row.degree.as_str(),
            row.hometown.as_str(),
            row.location.as_str(),
            row.political.as_str(),
            row.relationship.as_str(),
            row.religion.as_str(),
        ])
        .map_err(write_err(profiles_path))?;
    }
    w.flush().map_err(|source| IngestError::Io {
        path: profiles_path.display().to_string(),
        source,
    })?;

    let interests_path = interests_path.as_ref();
    let mut w = csv_writer(interests_path)?;
    w.write_record(["user_id", "interest_id", "category", "display_name"])
        .map_err(write_err(interests_path))?;
    for user in &dataset.users {
        for item in &user.interests {
            w.write_record([
                user.user_id(),
                item.interest_id.as_str(),
                item.category.as_str(),
                item.display_name.as_deref().unwrap_or(""),
            ])
            .map_err(write_err(interests_path))?;
        }
    }
    w.flush().map_err(|source| IngestError::Io {
        path: interests_path.display().to_string(),
        source,
    })?;

    let albums_path = albums_path.as_ref();
    let mut w = csv_writer(albums_path)?;
    w.write_record(["user_id", "album_name", "privacy"])
        .map_err(write_err(albums_path))?;
    for user in &dataset.users {
        let mut seq = 0u32;
        for value in AlbumPrivacyValue::ALL {
            for _ in 0..user.album_summary.count(value) {
                seq += 1;
                w.write_record([
                    user.user_id(),
                    &format!("album {seq:02}"),
                    value.as_str(),
                ])
                .map_err(write_err(albums_path))?;
            }
        }
    }
    w.flush().map_err(|source| IngestError::Io {
        path: albums_path.display().to_string(),
        source,
    })
}

/// Renders the profiles table as CSV with a `privacy_category` column
/// appended; `labels` must be one category per user in dataset order.
pub fn labeled_profiles_csv(
    dataset: &Dataset,
    labels: &[crate::profile::PrivacyCategory],
) -> Result<String, IngestError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = PROFILE_COLUMNS.to_vec();
    header.push("privacy_category");
    let err = |source: csv::Error| IngestError::Csv {
        path: "<memory>".to_string(),
        source,
    };
    w.write_record(&header).map_err(err)?;
    for (user, label) in dataset.users.iter().zip(labels) {
        let row = profile_to_row(&user.profile);
        w.write_record([
            row.user_id.as_str(),
            row.name.as_str(),
            row.gender.as_str(),
            row.birth_year.as_str(),
            row.birthday.as_str(),
            row.education.as_str(),
            row.degree.as_str(),
            row.hometown.as_str(),
            row.location.as_str(),
            row.political.as_str(),
            row.relationship.as_str(),
            row.religion.as_str(),
            label.as_str(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| IngestError::Csv {
        path: "<memory>".to_string(),
        source: e.into_error().into(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Per-attribute absence counts. Percentages are kept exact as
/// `absent / n_users` and only rounded for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingStats {
    pub n_users: usize,
    absent: [usize; 10],
}

impl MissingStats {
    pub fn absent_count(&self, attribute: Attribute) -> usize {
        self.absent[attribute.index()]
    }

    /// Exact fraction `(absent, n_users)`.
    pub fn fraction(&self, attribute: Attribute) -> (usize, usize) {
        (self.absent_count(attribute), self.n_users)
    }

    /// Percentage rounded to the nearest integer (half rounds up).
    pub fn percent_rounded(&self, attribute: Attribute) -> u32 {
        let absent = self.absent_count(attribute);
        ((200 * absent + self.n_users) / (2 * self.n_users)) as u32
    }

    /// Attributes sorted by missing share descending, name ascending on
    /// exact ties.
    pub fn sorted_rows(&self) -> Vec<(Attribute, usize)> {
        let mut rows: Vec<(Attribute, usize)> = Attribute::ALL
            .iter()
            .map(|&a| (a, self.absent_count(a)))
            .collect();
        rows.sort_by(|(a1, n1), (a2, n2)| n2.cmp(n1).then(a1.name().cmp(a2.name())));
        rows
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("Missing values over {} users\n", self.n_users));
        out.push_str("attribute     % missing\n");
        for (attribute, absent) in self.sorted_rows() {
            out.push_str(&format!(
                "{:<13} {:>3}%  ({absent}/{})\n",
                attribute.name(),
                self.percent_rounded(attribute),
                self.n_users
            ));
        }
        out.push_str(&format!("{:<13} {:>3}%  (0/{})\n", "age", 0, self.n_users));
        out
    }
}

/// Share of users with each attribute absent. Errors on an empty dataset.
pub fn missing_value_stats(dataset: &Dataset) -> Result<MissingStats, IngestError> {
    if dataset.is_empty() {
        return Err(IngestError::EmptyDataset);
    }
    let mut absent = [0usize; 10];
    for user in &dataset.users {
        for attribute in Attribute::ALL {
            if !user.is_disclosed(attribute) {
                absent[attribute.index()] += 1;
            }
        }
    }
    Ok(MissingStats {
        n_users: dataset.len(),
        absent,
    })
}

/// One row of the interest popularity ranking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestRankEntry {
    pub display_name: String,
    pub category: String,
    pub user_count: usize,
}

/// Interest topics ranked by distinct-user count descending, display name
/// ascending on ties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestRanking {
    pub entries: Vec<InterestRankEntry>,
}

impl InterestRanking {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str("users  topic                          category\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{:>5}  {:<30} {}\n",
                e.user_count, e.display_name, e.category
            ));
        }
        if self.entries.is_empty() {
            out.push_str("(no interests in dataset)\n");
        }
        out
    }
}

/// The `n` most common interest topics by number of distinct users.
/// Returns fewer entries if fewer topics exist.
pub fn top_interests(dataset: &Dataset, n: usize) -> InterestRanking {
    struct Topic {
        display_name: Option<String>,
        category: String,
        user_count: usize,
    }
    let mut topics: BTreeMap<String, Topic> = BTreeMap::new();
    for user in &dataset.users {
        for item in &user.interests {
            let topic = topics.entry(item.interest_id.clone()).or_insert(Topic {
                display_name: None,
                category: item.category.clone(),
                user_count: 0,
            });
            topic.user_count += 1;
            if topic.display_name.is_none() {
                topic.display_name = item.display_name.clone();
            }
        }
    }
    let mut entries: Vec<InterestRankEntry> = topics
        .into_iter()
        .map(|(id, t)| InterestRankEntry {
            display_name: t.display_name.unwrap_or(id),
            category: t.category,
            user_count: t.user_count,
        })
        .collect();
    entries.sort_by(|a, b| {
        b.user_count
            .cmp(&a.user_count)
            .then_with(|| a.display_name.cmp(&b.display_name))
    });
    entries.truncate(n);
    InterestRanking { entries }
}

//! Domain types shared across the crate: user profiles, interests, album
//! privacy values, the per-user vector, and binary disclosure indicators.
//!
//! Every optional profile field is a real `Option` — absence is modeled
//! explicitly, never as a sentinel string, because a missing value is
//! itself a privacy signal the rest of the crate consumes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Year the bundled fixtures and default configurations are anchored to.
/// Ages are derived as `reference_year - birth_year`.
pub const DEFAULT_REFERENCE_YEAR: i32 = 2013;

/// A token did not parse as the closed enumeration it was declared to be.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unrecognized {what} value `{token}`")]
pub struct ParseValueError {
    pub what: &'static str,
    pub token: String,
}

/// Errors from vector construction and age derivation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("interest `{interest_id}` appears with conflicting categories `{first}` and `{second}`")]
    ConflictingInterest {
        interest_id: String,
        first: String,
        second: String,
    },
    #[error("reference year {reference_year} precedes birth year {birth_year}")]
    ReferenceBeforeBirth {
        birth_year: i32,
        reference_year: i32,
    },
}

/// Self-reported gender, one of the two platform values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gender {
    Female,
    Male,
}

impl Gender {
    pub fn as_str(&self) -> &'static str {
        match self {
            Gender::Female => "Female",
            Gender::Male => "Male",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "female" => Ok(Gender::Female),
            "male" => Ok(Gender::Male),
            _ => Err(ParseValueError {
                what: "gender",
                token: s.to_string(),
            }),
        }
    }
}

/// Relationship status, the eleven platform-defined values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relationship {
    #[serde(rename = "Single")]
    Single,
    #[serde(rename = "In a relationship")]
    InARelationship,
    #[serde(rename = "Engaged")]
    Engaged,
    #[serde(rename = "Married")]
    Married,
    #[serde(rename = "It's complicated")]
    ItsComplicated,
    #[serde(rename = "In an open relationship")]
    InAnOpenRelationship,
    #[serde(rename = "Widowed")]
    Widowed,
    #[serde(rename = "Separated")]
    Separated,
    #[serde(rename = "Divorced")]
    Divorced,
    #[serde(rename = "In a civil union")]
    InACivilUnion,
    #[serde(rename = "In a domestic partnership")]
    InADomesticPartnership,
}

impl Relationship {
    pub const ALL: [Relationship; 11] = [
        Relationship::Single,
        Relationship::InARelationship,
        Relationship::Engaged,
        Relationship::Married,
        Relationship::ItsComplicated,
        Relationship::InAnOpenRelationship,
        Relationship::Widowed,
        Relationship::Separated,
        Relationship::Divorced,
        Relationship::InACivilUnion,
        Relationship::InADomesticPartnership,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Relationship::Single => "Single",
            Relationship::InARelationship => "In a relationship",
            Relationship::Engaged => "Engaged",
            Relationship::Married => "Married",
            Relationship::ItsComplicated => "It's complicated",
            Relationship::InAnOpenRelationship => "In an open relationship",
            Relationship::Widowed => "Widowed",
            Relationship::Separated => "Separated",
            Relationship::Divorced => "Divorced",
            Relationship::InACivilUnion => "In a civil union",
            Relationship::InADomesticPartnership => "In a domestic partnership",
        }
    }
}

impl fmt::Display for Relationship {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relationship {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relationship::ALL
            .iter()
            .find(|r| r.as_str() == s)
            .copied()
            .ok_or_else(|| ParseValueError {
                what: "relationship",
                token: s.to_string(),
            })
    }
}

/// Full birth date in month/day/year form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Birthday {
    pub month: u8,
    pub day: u8,
    pub year: i32,
}

impl Birthday {
    pub fn new(month: u8, day: u8, year: i32) -> Result<Self, ParseValueError> {
        if (1..=12).contains(&month) && (1..=31).contains(&day) {
            Ok(Birthday { month, day, year })
        } else {
            Err(ParseValueError {
                what: "birthday",
                token: format!("{month:02}/{day:02}/{year}"),
            })
        }
    }
}

impl fmt::Display for Birthday {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}/{:02}/{}", self.month, self.day, self.year)
    }
}

impl FromStr for Birthday {
    type Err = ParseValueError;

    /// Parses the `MM/DD/YYYY` wire format.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseValueError {
            what: "birthday",
            token: s.to_string(),
        };
        let mut parts = s.split('/');
        let month = parts.next().and_then(|p| p.parse().ok()).ok_or_else(err)?;
        let day = parts.next().and_then(|p| p.parse().ok()).ok_or_else(err)?;
        let year = parts.next().and_then(|p| p.parse().ok()).ok_or_else(err)?;
        if parts.next().is_some() {
            return Err(err());
        }
        Birthday::new(month, day, year).map_err(|_| err())
    }
}

/// One user profile. `birth_year` is the only attribute guaranteed present;
/// everything else is `Option` and absence is meaningful.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserProfile {
    pub user_id: String,
    pub name: Option<String>,
    pub gender: Option<Gender>,
    pub birthday: Option<Birthday>,
    pub birth_year: i32,
    /// Canonical education level token, ordered by the normalization
    /// dictionary's `education_order`.
    pub education_level: Option<String>,
    pub degree: Option<String>,
    pub hometown: Option<String>,
    pub location: Option<String>,
    pub political: Option<String>,
    pub relationship: Option<Relationship>,
    pub religion: Option<String>,
}

impl UserProfile {
    /// A profile with every optional attribute absent.
    pub fn bare(user_id: impl Into<String>, birth_year: i32) -> Self {
        UserProfile {
            user_id: user_id.into(),
            name: None,
            gender: None,
            birthday: None,
            birth_year,
            education_level: None,
            degree: None,
            hometown: None,
            location: None,
            political: None,
            relationship: None,
            religion: None,
        }
    }
}

/// One interest topic. Two users liking the same topic share `interest_id`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestItem {
    pub interest_id: String,
    pub category: String,
    pub display_name: Option<String>,
}

impl InterestItem {
    pub fn new(
        interest_id: impl Into<String>,
        category: impl Into<String>,
        display_name: impl Into<String>,
    ) -> Self {
        InterestItem {
            interest_id: interest_id.into(),
            category: category.into(),
            display_name: Some(display_name.into()),
        }
    }

    /// Display name if present, otherwise the id.
    pub fn label(&self) -> &str {
        self.display_name.as_deref().unwrap_or(&self.interest_id)
    }
}

/// Per-album visibility setting. Exactly five values; any other token is a
/// parse error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlbumPrivacyValue {
    #[serde(rename = "EVERYONE")]
    Everyone,
    #[serde(rename = "FRIENDS")]
    Friends,
    #[serde(rename = "FRIENDS_OF_FRIENDS")]
    FriendsOfFriends,
    #[serde(rename = "NETWORKS_FRIENDS")]
    NetworksFriends,
    #[serde(rename = "CUSTOM")]
    Custom,
}

impl AlbumPrivacyValue {
    pub const ALL: [AlbumPrivacyValue; 5] = [
        AlbumPrivacyValue::Everyone,
        AlbumPrivacyValue::Friends,
        AlbumPrivacyValue::FriendsOfFriends,
        AlbumPrivacyValue::NetworksFriends,
        AlbumPrivacyValue::Custom,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AlbumPrivacyValue::Everyone => "EVERYONE",
            AlbumPrivacyValue::Friends => "FRIENDS",
            AlbumPrivacyValue::FriendsOfFriends => "FRIENDS_OF_FRIENDS",
            AlbumPrivacyValue::NetworksFriends => "NETWORKS_FRIENDS",
            AlbumPrivacyValue::Custom => "CUSTOM",
        }
    }
}

impl fmt::Display for AlbumPrivacyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlbumPrivacyValue {
    type Err = ParseValueError;

    /// Accepts only the five exact uppercase tokens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlbumPrivacyValue::ALL
            .iter()
            .find(|v| v.as_str() == s)
            .copied()
            .ok_or_else(|| ParseValueError {
                what: "album privacy",
                token: s.to_string(),
            })
    }
}

/// A photo album: name (non-empty after trimming) plus its privacy value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhotoAlbum {
    pub name: String,
    pub privacy: AlbumPrivacyValue,
}

impl PhotoAlbum {
    pub fn new(name: impl Into<String>, privacy: AlbumPrivacyValue) -> Self {
        PhotoAlbum {
            name: name.into(),
            privacy,
        }
    }
}

/// Per-privacy-value album counts. The total is always the sum of the five
/// counts by construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlbumSummary {
    pub n_everyone: u32,
    pub n_fof: u32,
    pub n_networks: u32,
    pub n_friends: u32,
    pub n_custom: u32,
}

impl AlbumSummary {
    pub fn new(n_everyone: u32, n_fof: u32, n_networks: u32, n_friends: u32, n_custom: u32) -> Self {
        AlbumSummary {
            n_everyone,
            n_fof,
            n_networks,
            n_friends,
            n_custom,
        }
    }

    pub fn from_albums(albums: &[PhotoAlbum]) -> Self {
        let mut s = AlbumSummary::default();
        for album in albums {
            match album.privacy {
                AlbumPrivacyValue::Everyone => s.n_everyone += 1,
                AlbumPrivacyValue::FriendsOfFriends => s.n_fof += 1,
                AlbumPrivacyValue::NetworksFriends => s.n_networks += 1,
                AlbumPrivacyValue::Friends => s.n_friends += 1,
                AlbumPrivacyValue::Custom => s.n_custom += 1,
            }
        }
        s
    }

    pub fn total(&self) -> u32 {
        self.n_everyone + self.n_fof + self.n_networks + self.n_friends + self.n_custom
    }

    pub fn count(&self, value: AlbumPrivacyValue) -> u32 {
        match value {
            AlbumPrivacyValue::Everyone => self.n_everyone,
            AlbumPrivacyValue::Friends => self.n_friends,
            AlbumPrivacyValue::FriendsOfFriends => self.n_fof,
            AlbumPrivacyValue::NetworksFriends => self.n_networks,
            AlbumPrivacyValue::Custom => self.n_custom,
        }
    }
}

/// The per-user vector: profile attributes, interest set, album summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserVector {
    pub profile: UserProfile,
    /// Deduplicated by `interest_id`, sorted by id for a canonical order.
    pub interests: Vec<InterestItem>,
    pub album_summary: AlbumSummary,
}

impl UserVector {
    pub fn user_id(&self) -> &str {
        &self.profile.user_id
    }

    /// Signed age relative to `reference_year`; see [`compute_age`] for the
    /// validated public operation.
    pub(crate) fn age_signed(&self, reference_year: i32) -> i64 {
        i64::from(reference_year) - i64::from(self.profile.birth_year)
    }

    /// Whether the attribute is disclosed. Interests count as disclosed
    /// exactly when the set is non-empty.
    pub fn is_disclosed(&self, attribute: Attribute) -> bool {
        match attribute {
            Attribute::Gender => self.profile.gender.is_some(),
            Attribute::Birthday => self.profile.birthday.is_some(),
            Attribute::Education => self.profile.education_level.is_some(),
            Attribute::Degree => self.profile.degree.is_some(),
            Attribute::Hometown => self.profile.hometown.is_some(),
            Attribute::Location => self.profile.location.is_some(),
            Attribute::Political => self.profile.political.is_some(),
            Attribute::Relationship => self.profile.relationship.is_some(),
            Attribute::Religion => self.profile.religion.is_some(),
            Attribute::Interests => !self.interests.is_empty(),
        }
    }

    pub fn has_interest(&self, interest_id: &str) -> bool {
        self.interests.iter().any(|i| i.interest_id == interest_id)
    }

    pub fn disclosure_vector(&self) -> DisclosureVector {
        disclosure_vector(self)
    }
}

/// The profile attributes whose disclosure the recommender reasons about,
/// in the fixed order used everywhere (distance terms, reports, feature
/// indexes). Age is excluded: birth year is always present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribute {
    Gender,
    Birthday,
    Education,
    Degree,
    Hometown,
    Location,
    Political,
    Relationship,
    Religion,
    Interests,
}

impl Attribute {
    pub const ALL: [Attribute; 10] = [
        Attribute::Gender,
        Attribute::Birthday,
        Attribute::Education,
        Attribute::Degree,
        Attribute::Hometown,
        Attribute::Location,
        Attribute::Political,
        Attribute::Relationship,
        Attribute::Religion,
        Attribute::Interests,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Attribute::Gender => "gender",
            Attribute::Birthday => "birthday",
            Attribute::Education => "education",
            Attribute::Degree => "degree",
            Attribute::Hometown => "hometown",
            Attribute::Location => "location",
            Attribute::Political => "political",
            Attribute::Relationship => "relationship",
            Attribute::Religion => "religion",
            Attribute::Interests => "interests",
        }
    }

    /// Position in the fixed ordering.
    pub fn index(&self) -> usize {
        Attribute::ALL.iter().position(|a| a == self).unwrap()
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Attribute {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gender" => Ok(Attribute::Gender),
            "birthday" | "birthday_full" => Ok(Attribute::Birthday),
            "education" | "education_level" => Ok(Attribute::Education),
            "degree" => Ok(Attribute::Degree),
            "hometown" => Ok(Attribute::Hometown),
            "location" => Ok(Attribute::Location),
            "political" => Ok(Attribute::Political),
            "relationship" => Ok(Attribute::Relationship),
            "religion" => Ok(Attribute::Religion),
            "interests" => Ok(Attribute::Interests),
            _ => Err(ParseValueError {
                what: "attribute",
                token: s.to_string(),
            }),
        }
    }
}

/// Binary disclosure indicators over [`Attribute::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisclosureVector {
    disclosed: [bool; 10],
}

impl DisclosureVector {
    pub fn is_disclosed(&self, attribute: Attribute) -> bool {
        self.disclosed[attribute.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Attribute, bool)> + '_ {
        Attribute::ALL
            .iter()
            .map(move |&a| (a, self.disclosed[a.index()]))
    }

    pub fn disclosed_count(&self) -> usize {
        self.disclosed.iter().filter(|&&d| d).count()
    }
}

/// Computes the disclosure indicators for a user vector.
pub fn disclosure_vector(v: &UserVector) -> DisclosureVector {
    let mut disclosed = [false; 10];
    for attribute in Attribute::ALL {
        disclosed[attribute.index()] = v.is_disclosed(attribute);
    }
    DisclosureVector { disclosed }
}

/// The three-way privacy segmentation: unwilling to disclose, trades
/// disclosure for benefit, discloses freely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrivacyCategory {
    Fundamentalist,
    Pragmatic,
    Unconcerned,
}

impl PrivacyCategory {
    pub const ALL: [PrivacyCategory; 3] = [
        PrivacyCategory::Fundamentalist,
        PrivacyCategory::Pragmatic,
        PrivacyCategory::Unconcerned,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PrivacyCategory::Fundamentalist => "Fundamentalist",
            PrivacyCategory::Pragmatic => "Pragmatic",
            PrivacyCategory::Unconcerned => "Unconcerned",
        }
    }
}

impl fmt::Display for PrivacyCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrivacyCategory {
    type Err = ParseValueError;

    /// Case-insensitive; `ignorant` and `pragmatist` are accepted aliases.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fundamentalist" => Ok(PrivacyCategory::Fundamentalist),
            "pragmatic" | "pragmatist" => Ok(PrivacyCategory::Pragmatic),
            "unconcerned" | "ignorant" => Ok(PrivacyCategory::Unconcerned),
            _ => Err(ParseValueError {
                what: "privacy category",
                token: s.to_string(),
            }),
        }
    }
}

/// Builds the per-user vector from a profile, its interests, and its albums.
///
/// Interests are deduplicated by id and sorted; two entries with the same id
/// but different categories are rejected, naming the id.
pub fn build_vector(
    profile: UserProfile,
    interests: Vec<InterestItem>,
    albums: &[PhotoAlbum],
) -> Result<UserVector, ProfileError> {
    let mut interests = interests;
    interests.sort_by(|a, b| a.interest_id.cmp(&b.interest_id));
    let mut deduped: Vec<InterestItem> = Vec::with_capacity(interests.len());
    for item in interests {
        match deduped.last_mut() {
            Some(last) if last.interest_id == item.interest_id => {
                if last.category != item.category {
                    return Err(ProfileError::ConflictingInterest {
                        interest_id: item.interest_id,
                        first: last.category.clone(),
                        second: item.category,
                    });
                }
                if last.display_name.is_none() {
                    last.display_name = item.display_name;
                }
            }
            _ => deduped.push(item),
        }
    }
    Ok(UserVector {
        profile,
        interests: deduped,
        album_summary: AlbumSummary::from_albums(albums),
    })
}

/// Age at `reference_year` for someone born in `birth_year`.
pub fn compute_age(birth_year: i32, reference_year: i32) -> Result<u32, ProfileError> {
    if reference_year < birth_year {
        return Err(ProfileError::ReferenceBeforeBirth {
            birth_year,
            reference_year,
        });
    }
    Ok((reference_year - birth_year) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_fixtures::{alice, john, sandrine};

    #[test]
    fn sandrine_vector_matches_reference_counts() {
        let v = sandrine();
        assert_eq!(v.album_summary.total(), 20);
        assert_eq!(v.album_summary.n_fof, 4);
        assert_eq!(v.album_summary.n_everyone, 5);
        assert_eq!(v.interests.len(), 3);
    }

    #[test]
    fn alice_vector_matches_reference_counts() {
        let v = alice();
        assert_eq!(v.album_summary.total(), 2);
        assert_eq!(v.album_summary.n_fof, 0);
        assert_eq!(v.album_summary.n_everyone, 1);
        assert_eq!(v.album_summary.n_friends, 1);
    }

    #[test]
    fn empty_inputs_build_all_zero_vector() {
        let v = build_vector(UserProfile::bare("u1", 1990), vec![], &[]).unwrap();
        assert_eq!(v.album_summary.total(), 0);
        assert!(!v.is_disclosed(Attribute::Interests));
    }

    #[test]
    fn duplicate_interest_ids_collapse() {
        let v = build_vector(
            UserProfile::bare("u1", 1990),
            vec![
                InterestItem::new("i1", "TV show", "Dexter"),
                InterestItem::new("i1", "TV show", "Dexter"),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(v.interests.len(), 1);
    }

    #[test]
    fn conflicting_interest_categories_are_rejected() {
        let err = build_vector(
            UserProfile::bare("u1", 1990),
            vec![
                InterestItem::new("i1", "TV show", "Dexter"),
                InterestItem::new("i1", "Movie", "Dexter"),
            ],
            &[],
        )
        .unwrap_err();
        match err {
            ProfileError::ConflictingInterest { interest_id, .. } => {
                assert_eq!(interest_id, "i1");
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn disclosure_follows_presence() {
        let s = sandrine();
        let d = s.disclosure_vector();
        assert!(!d.is_disclosed(Attribute::Relationship));
        assert!(d.is_disclosed(Attribute::Gender));
        assert!(d.is_disclosed(Attribute::Interests));

        let a = alice();
        let d = a.disclosure_vector();
        assert!(!d.is_disclosed(Attribute::Political));
        assert!(d.is_disclosed(Attribute::Relationship));
    }

    #[test]
    fn fully_populated_profile_discloses_everything() {
        let mut profile = UserProfile::bare("u1", 1990);
        profile.gender = Some(Gender::Female);
        profile.birthday = Some(Birthday::new(1, 2, 1990).unwrap());
        profile.education_level = Some("Graduate".into());
        profile.degree = Some("MSc".into());
        profile.hometown = Some("Ottawa".into());
        profile.location = Some("Toronto".into());
        profile.political = Some("Liberal".into());
        profile.relationship = Some(Relationship::Single);
        profile.religion = Some("Atheist".into());
        let v = build_vector(profile, vec![InterestItem::new("i1", "TV show", "Dexter")], &[])
            .unwrap();
        assert_eq!(v.disclosure_vector().disclosed_count(), 10);
    }

    #[test]
    fn disclosure_vector_is_stable_across_calls() {
        let v = john();
        assert_eq!(v.disclosure_vector(), v.disclosure_vector());
    }

    #[test]
    fn indicator_absent_iff_field_absent() {
        for v in [sandrine(), john(), alice()] {
            let d = v.disclosure_vector();
            for attribute in Attribute::ALL {
                assert_eq!(d.is_disclosed(attribute), v.is_disclosed(attribute));
            }
        }
    }

    #[test]
    fn age_arithmetic() {
        assert_eq!(compute_age(1983, 2013).unwrap(), 30);
        assert_eq!(compute_age(2013, 2013).unwrap(), 0);
        assert_eq!(compute_age(1975, 2013).unwrap(), 38);
        assert!(compute_age(2014, 2013).is_err());
    }

    #[test]
    fn summary_counts_sum_to_total() {
        let albums = vec![
            PhotoAlbum::new("a", AlbumPrivacyValue::Everyone),
            PhotoAlbum::new("b", AlbumPrivacyValue::Friends),
            PhotoAlbum::new("c", AlbumPrivacyValue::Custom),
            PhotoAlbum::new("d", AlbumPrivacyValue::NetworksFriends),
            PhotoAlbum::new("e", AlbumPrivacyValue::FriendsOfFriends),
            PhotoAlbum::new("f", AlbumPrivacyValue::Friends),
        ];
        let s = AlbumSummary::from_albums(&albums);
        assert_eq!(s.total(), 6);
        assert_eq!(
            s.total(),
            s.n_everyone + s.n_fof + s.n_networks + s.n_friends + s.n_custom
        );
    }

    #[test]
    fn privacy_token_parsing_is_a_closed_enumeration() {
        for v in AlbumPrivacyValue::ALL {
            assert_eq!(v.as_str().parse::<AlbumPrivacyValue>().unwrap(), v);
        }
        assert!("PUBLIC".parse::<AlbumPrivacyValue>().is_err());
        assert!("everyone".parse::<AlbumPrivacyValue>().is_err());
    }

    #[test]
    fn category_aliases_parse() {
        assert_eq!(
            "ignorant".parse::<PrivacyCategory>().unwrap(),
            PrivacyCategory::Unconcerned
        );
        assert_eq!(
            "Pragmatist".parse::<PrivacyCategory>().unwrap(),
            PrivacyCategory::Pragmatic
        );
        assert!("other".parse::<PrivacyCategory>().is_err());
    }

    #[test]
    fn birthday_wire_format_round_trips() {
        let b: Birthday = "04/07/1989".parse().unwrap();
        assert_eq!(b, Birthday::new(4, 7, 1989).unwrap());
        assert_eq!(b.to_string(), "04/07/1989");
        assert!("13/01/1989".parse::<Birthday>().is_err());
        assert!("4-7-1989".parse::<Birthday>().is_err());
    }

    #[test]
    fn relationship_tokens_round_trip() {
        for r in Relationship::ALL {
            assert_eq!(r.as_str().parse::<Relationship>().unwrap(), r);
        }
        assert!("single".parse::<Relationship>().is_err());
    }
}

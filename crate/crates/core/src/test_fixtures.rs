//! Hand-built fixture users shared by unit tests across modules.
//!
//! The three reference users (Sandrine, John, Alice) carry the exact album
//! counts and disclosure patterns the rest of the test suite asserts on:
//! Sandrine hides her relationship status, Alice hides her political view,
//! and the album summaries are 20/4/5, 25/1/2, and 2/0/1
//! (total / friends-of-friends / public).

use crate::ingest::{Dataset, DatasetMetadata};
use crate::profile::{
    build_vector, AlbumPrivacyValue, Gender, InterestItem, PhotoAlbum, Relationship, UserProfile,
    UserVector, DEFAULT_REFERENCE_YEAR,
};

pub fn shared_interests() -> Vec<InterestItem> {
    vec![
        InterestItem::new("i-tbbt", "TV show", "The Big Bang Theory"),
        InterestItem::new("i-basketball", "Sport", "Basketball"),
        InterestItem::new("i-golf", "Sport", "Golf"),
    ]
}

fn albums(counts: [(AlbumPrivacyValue, u32); 5]) -> Vec<PhotoAlbum> {
    let mut out = Vec::new();
    for (value, n) in counts {
        for i in 0..n {
            out.push(PhotoAlbum::new(format!("album {value} {i}"), value));
        }
    }
    out
}

/// Female, 30, Canada, relationship absent, Grad, Liberal; 20 albums of
/// which 4 friends-of-friends and 5 public.
pub fn sandrine() -> UserVector {
    let mut profile = UserProfile::bare("sandrine", DEFAULT_REFERENCE_YEAR - 30);
    profile.name = Some("Sandrine".into());
    profile.gender = Some(Gender::Female);
    profile.location = Some("Canada".into());
    profile.education_level = Some("Graduate".into());
    profile.political = Some("Liberal".into());
    let a = albums([
        (AlbumPrivacyValue::Everyone, 5),
        (AlbumPrivacyValue::FriendsOfFriends, 4),
        (AlbumPrivacyValue::Friends, 9),
        (AlbumPrivacyValue::Custom, 2),
        (AlbumPrivacyValue::NetworksFriends, 0),
    ]);
    build_vector(profile, shared_interests(), &a).unwrap()
}

/// Male, 30, Canada, Single, Grad, Liberal; 25 albums of which 1
/// friends-of-friends and 2 public.
pub fn john() -> UserVector {
    let mut profile = UserProfile::bare("john", DEFAULT_REFERENCE_YEAR - 30);
    profile.name = Some("John".into());
    profile.gender = Some(Gender::Male);
    profile.location = Some("Canada".into());
    profile.relationship = Some(Relationship::Single);
    profile.education_level = Some("Graduate".into());
    profile.political = Some("Liberal".into());
    let a = albums([
        (AlbumPrivacyValue::Everyone, 2),
        (AlbumPrivacyValue::FriendsOfFriends, 1),
        (AlbumPrivacyValue::Friends, 20),
        (AlbumPrivacyValue::Custom, 2),
        (AlbumPrivacyValue::NetworksFriends, 0),
    ]);
    build_vector(profile, shared_interests(), &a).unwrap()
}

/// Female, 38, Canada, Single, Grad, political view absent; 2 albums of
/// which 1 public, the other shared with friends.
pub fn alice() -> UserVector {
    let mut profile = UserProfile::bare("alice", DEFAULT_REFERENCE_YEAR - 38);
    profile.name = Some("Alice".into());
    profile.gender = Some(Gender::Female);
    profile.location = Some("Canada".into());
    profile.relationship = Some(Relationship::Single);
    profile.education_level = Some("Graduate".into());
    let a = albums([
        (AlbumPrivacyValue::Everyone, 1),
        (AlbumPrivacyValue::FriendsOfFriends, 0),
        (AlbumPrivacyValue::Friends, 1),
        (AlbumPrivacyValue::Custom, 0),
        (AlbumPrivacyValue::NetworksFriends, 0),
    ]);
    build_vector(profile, shared_interests(), &a).unwrap()
}

pub fn reference_trio_dataset() -> Dataset {
    Dataset {
        users: vec![sandrine(), john(), alice()],
        metadata: DatasetMetadata {
            reference_year: DEFAULT_REFERENCE_YEAR,
            source: "fixture:reference-trio".into(),
        },
    }
}

/// Alice as she appears in the neighbor-retrieval example: hometown Canada,
/// education disclosed, political view and religion absent.
pub fn alice_query() -> UserVector {
    let mut profile = UserProfile::bare("alice", DEFAULT_REFERENCE_YEAR - 38);
    profile.name = Some("Alice".into());
    profile.gender = Some(Gender::Female);
    profile.hometown = Some("Canada".into());
    profile.relationship = Some(Relationship::Single);
    profile.education_level = Some("Graduate".into());
    let a = albums([
        (AlbumPrivacyValue::Everyone, 1),
        (AlbumPrivacyValue::FriendsOfFriends, 0),
        (AlbumPrivacyValue::Friends, 1),
        (AlbumPrivacyValue::Custom, 0),
        (AlbumPrivacyValue::NetworksFriends, 0),
    ]);
    build_vector(profile, shared_interests(), &a).unwrap()
}

/// The three neighbor profiles from the recommendation example: female,
/// hometown Canada, Single, education and politics absent, overlapping
/// interest sets.
pub fn example_neighbors() -> Vec<UserVector> {
    let mk = |id: &str, age: i32, interests: Vec<InterestItem>| {
        let mut profile = UserProfile::bare(id, DEFAULT_REFERENCE_YEAR - age);
        profile.gender = Some(Gender::Female);
        profile.hometown = Some("Canada".into());
        profile.relationship = Some(Relationship::Single);
        let a = albums([
            (AlbumPrivacyValue::Everyone, 0),
            (AlbumPrivacyValue::FriendsOfFriends, 0),
            (AlbumPrivacyValue::Friends, 3),
            (AlbumPrivacyValue::Custom, 0),
            (AlbumPrivacyValue::NetworksFriends, 0),
        ]);
        build_vector(profile, interests, &a).unwrap()
    };
    vec![
        mk(
            "nbr-amber",
            38,
            vec![
                InterestItem::new("i-tbbt", "TV show", "The Big Bang Theory"),
                InterestItem::new("i-basketball", "Sport", "Basketball"),
            ],
        ),
        mk(
            "nbr-bree",
            30,
            vec![
                InterestItem::new("i-tbbt", "TV show", "The Big Bang Theory"),
                InterestItem::new("i-golf", "Sport", "Golf"),
            ],
        ),
        mk("nbr-cora", 35, shared_interests()),
    ]
}

/// Filler users that differ from the Alice query in at least three
/// disclosure indicators, so the crafted neighbors always rank first.
pub fn example_fillers(n: usize) -> Vec<UserVector> {
    (0..n)
        .map(|i| {
            let mut profile = UserProfile::bare(format!("zfill-{i:03}"), 1990 - (i as i32 % 5));
            profile.gender = Some(if i % 2 == 0 { Gender::Male } else { Gender::Female });
            profile.location = Some("Toronto".into());
            profile.political = Some("Liberal".into());
            profile.religion = Some("Atheist".into());
            profile.education_level = Some("Undergraduate".into());
            profile.hometown = Some("Canada".into());
            profile.relationship = Some(Relationship::Single);
            let a = albums([
                (AlbumPrivacyValue::Everyone, 2),
                (AlbumPrivacyValue::FriendsOfFriends, 1),
                (AlbumPrivacyValue::Friends, 1),
                (AlbumPrivacyValue::Custom, 0),
                (AlbumPrivacyValue::NetworksFriends, 0),
            ]);
            build_vector(profile, shared_interests(), &a).unwrap()
        })
        .collect()
}

/// Alice, her three crafted neighbors, and `filler_count` filler users.
pub fn example_recommendation_dataset(filler_count: usize) -> Dataset {
    let mut users = vec![alice_query()];
    users.extend(example_neighbors());
    users.extend(example_fillers(filler_count));
    Dataset {
        users,
        metadata: DatasetMetadata {
            reference_year: DEFAULT_REFERENCE_YEAR,
            source: "fixture:recommendation-example".into(),
        },
    }
}

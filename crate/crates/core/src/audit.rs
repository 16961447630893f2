//! Flags weakly protected photo albums and renders the per-user report.
//!
//! An album is weakly protected when its audience exceeds the friends
//! circle: `EVERYONE` is a public exposure, `FRIENDS_OF_FRIENDS` and
//! `NETWORKS_FRIENDS` are extended exposures. `FRIENDS` and `CUSTOM` are
//! considered intended audiences and never flagged.

use serde::{Deserialize, Serialize};

use crate::profile::{AlbumPrivacyValue, AlbumSummary, PhotoAlbum};

/// How far past the friends circle an album is visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    /// Visible to everyone.
    PublicExposure,
    /// Visible to friends of friends or network members.
    ExtendedExposure,
}

/// One weakly protected album.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditFinding {
    pub album_name: String,
    pub privacy: AlbumPrivacyValue,
    pub severity: Severity,
}

/// Returns the weakly protected albums in input order.
pub fn audit_albums(albums: &[PhotoAlbum]) -> Vec<AuditFinding> {
    albums
        .iter()
        .filter_map(|album| {
            let severity = match album.privacy {
                AlbumPrivacyValue::Everyone => Severity::PublicExposure,
                AlbumPrivacyValue::FriendsOfFriends | AlbumPrivacyValue::NetworksFriends => {
                    Severity::ExtendedExposure
                }
                AlbumPrivacyValue::Friends | AlbumPrivacyValue::Custom => return None,
            };
            Some(AuditFinding {
                album_name: album.name.clone(),
                privacy: album.privacy,
                severity,
            })
        })
        .collect()
}

/// Share of albums under each privacy value. Counts are kept so the ratios
/// stay exact; the `r_*` accessors expose them as floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VisibilityRatios {
    pub total_albums: u32,
    summary: AlbumSummary,
}

impl VisibilityRatios {
    fn ratio(&self, count: u32) -> f64 {
        if self.total_albums == 0 {
            0.0
        } else {
            f64::from(count) / f64::from(self.total_albums)
        }
    }

    /// Exact fraction `(count, total)`; `(0, 1)` when there are no albums.
    pub fn fraction(&self, value: AlbumPrivacyValue) -> (u32, u32) {
        if self.total_albums == 0 {
            (0, 1)
        } else {
            (self.summary.count(value), self.total_albums)
        }
    }

    pub fn r_public(&self) -> f64 {
        self.ratio(self.summary.n_everyone)
    }

    pub fn r_fof(&self) -> f64 {
        self.ratio(self.summary.n_fof)
    }

    pub fn r_networks(&self) -> f64 {
        self.ratio(self.summary.n_networks)
    }

    pub fn r_friends(&self) -> f64 {
        self.ratio(self.summary.n_friends)
    }

    pub fn r_custom(&self) -> f64 {
        self.ratio(self.summary.n_custom)
    }
}

/// Computes per-value visibility ratios from an album summary.
pub fn visibility_ratios(summary: &AlbumSummary) -> VisibilityRatios {
    VisibilityRatios {
        total_albums: summary.total(),
        summary: *summary,
    }
}

/// Renders the plain-text audit report. Byte-identical for identical input.
pub fn render_report(findings: &[AuditFinding], display_name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("Privacy audit for {display_name}\n"));
    out.push_str(&"-".repeat(18 + display_name.len()));
    out.push('\n');
    if findings.is_empty() {
        out.push_str("No weakly protected albums found.\n");
        return out;
    }
    out.push_str(&format!(
        "Found {} album(s) with a weak privacy setting:\n",
        findings.len()
    ));
    for finding in findings {
        let audience = match finding.privacy {
            AlbumPrivacyValue::Everyone => "everyone (public)",
            AlbumPrivacyValue::FriendsOfFriends => "friends of friends",
            AlbumPrivacyValue::NetworksFriends => "network members",
            AlbumPrivacyValue::Friends | AlbumPrivacyValue::Custom => "friends",
        };
        let tag = match finding.severity {
            Severity::PublicExposure => "PUBLIC  ",
            Severity::ExtendedExposure => "EXTENDED",
        };
        out.push_str(&format!(
            "  [{tag}] \"{}\" is visible to {audience}\n",
            finding.album_name
        ));
    }
    out.push_str(
        "Consider tightening these albums to FRIENDS or CUSTOM to reduce exposure.\n",
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::PhotoAlbum;
    use crate::test_fixtures::{alice, john};

    fn weak_album_fixture() -> Vec<PhotoAlbum> {
        vec![
            PhotoAlbum::new("wall photos", AlbumPrivacyValue::Everyone),
            PhotoAlbum::new("mobile uploads", AlbumPrivacyValue::FriendsOfFriends),
            PhotoAlbum::new("trip", AlbumPrivacyValue::Friends),
        ]
    }

    #[test]
    fn flags_public_and_extended_albums() {
        let findings = audit_albums(&weak_album_fixture());
        assert_eq!(findings.len(), 2);
        assert_eq!(findings[0].album_name, "wall photos");
        assert_eq!(findings[0].severity, Severity::PublicExposure);
        assert_eq!(findings[1].album_name, "mobile uploads");
        assert_eq!(findings[1].severity, Severity::ExtendedExposure);
    }

    #[test]
    fn strong_settings_produce_no_findings() {
        let albums = vec![
            PhotoAlbum::new("a", AlbumPrivacyValue::Friends),
            PhotoAlbum::new("b", AlbumPrivacyValue::Custom),
        ];
        assert!(audit_albums(&albums).is_empty());
    }

    #[test]
    fn networks_albums_are_extended_exposure() {
        let albums = vec![PhotoAlbum::new("net", AlbumPrivacyValue::NetworksFriends)];
        let findings = audit_albums(&albums);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].severity, Severity::ExtendedExposure);
    }

    #[test]
    fn findings_preserve_input_order() {
        let albums = vec![
            PhotoAlbum::new("e1", AlbumPrivacyValue::FriendsOfFriends),
            PhotoAlbum::new("p1", AlbumPrivacyValue::Everyone),
            PhotoAlbum::new("f", AlbumPrivacyValue::Friends),
            PhotoAlbum::new("p2", AlbumPrivacyValue::Everyone),
            PhotoAlbum::new("n1", AlbumPrivacyValue::NetworksFriends),
        ];
        let findings = audit_albums(&albums);
        let names: Vec<&str> = findings.iter().map(|f| f.album_name.as_str()).collect();
        assert_eq!(names, ["e1", "p1", "p2", "n1"]);
    }

    #[test]
    fn finding_count_matches_summary() {
        for v in [john(), alice()] {
            // Rebuild an album list from the summary and cross-check.
            let mut albums = Vec::new();
            for value in AlbumPrivacyValue::ALL {
                for i in 0..v.album_summary.count(value) {
                    albums.push(PhotoAlbum::new(format!("{value}{i}"), value));
                }
            }
            let findings = audit_albums(&albums);
            let expected = v.album_summary.n_everyone
                + v.album_summary.n_fof
                + v.album_summary.n_networks;
            assert_eq!(findings.len() as u32, expected);
        }
    }

    #[test]
    fn john_public_ratio_is_exactly_two_twentyfifths() {
        let r = visibility_ratios(&john().album_summary);
        assert_eq!(r.total_albums, 25);
        assert_eq!(r.r_public(), 0.08);
        assert_eq!(r.fraction(AlbumPrivacyValue::Everyone), (2, 25));
    }

    #[test]
    fn alice_public_ratio_is_one_half() {
        let r = visibility_ratios(&alice().album_summary);
        assert_eq!(r.r_public(), 0.5);
    }

    #[test]
    fn zero_albums_yield_all_zero_ratios() {
        let r = visibility_ratios(&AlbumSummary::default());
        assert_eq!(r.total_albums, 0);
        assert_eq!(r.r_public(), 0.0);
        assert_eq!(r.r_friends(), 0.0);
        assert_eq!(r.fraction(AlbumPrivacyValue::Friends), (0, 1));
    }

    #[test]
    fn ratios_are_scale_invariant() {
        let base = AlbumSummary::new(2, 1, 0, 5, 3);
        for k in 1..=4u32 {
            let scaled = AlbumSummary::new(2 * k, k, 0, 5 * k, 3 * k);
            let r1 = visibility_ratios(&base);
            let r2 = visibility_ratios(&scaled);
            for value in AlbumPrivacyValue::ALL {
                let (n1, d1) = r1.fraction(value);
                let (n2, d2) = r2.fraction(value);
                assert_eq!(u64::from(n1) * u64::from(d2), u64::from(n2) * u64::from(d1));
            }
        }
    }

    #[test]
    fn ratios_sum_to_one_when_albums_exist() {
        let summary = AlbumSummary::new(1, 1, 1, 0, 0);
        let r = visibility_ratios(&summary);
        let numerators: u32 = AlbumPrivacyValue::ALL
            .iter()
            .map(|&v| r.fraction(v).0)
            .sum();
        assert_eq!(numerators, r.total_albums);
    }

    #[test]
    fn report_names_albums_and_advice() {
        let findings = audit_albums(&weak_album_fixture());
        let report = render_report(&findings, "Pat");
        assert!(report.contains("wall photos"));
        assert!(report.contains("everyone (public)"));
        assert!(report.contains("mobile uploads"));
        assert!(report.contains("friends of friends"));
        assert!(report.contains("tightening"));
        // Deterministic rendering.
        assert_eq!(report, render_report(&findings, "Pat"));
    }

    #[test]
    fn empty_report_says_so() {
        let report = render_report(&[], "Pat");
        assert!(report.contains("No weakly protected albums found."));
    }
}

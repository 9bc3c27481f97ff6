use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::lexicon::Dimension;

use super::CorpusError;

/// Affective and lexico-semantic features, annotated on an integer 1–4 scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrdinalFeature {
    Valence,
    Arousal,
    Happiness,
    Disgust,
    Anger,
    Sadness,
    Fear,
    Concreteness,
    Imageability,
    ContextAvailability,
}

impl OrdinalFeature {
    pub const ALL: [OrdinalFeature; 10] = [
        OrdinalFeature::Valence,
        OrdinalFeature::Arousal,
        OrdinalFeature::Happiness,
        OrdinalFeature::Disgust,
        OrdinalFeature::Anger,
        OrdinalFeature::Sadness,
        OrdinalFeature::Fear,
        OrdinalFeature::Concreteness,
        OrdinalFeature::Imageability,
        OrdinalFeature::ContextAvailability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrdinalFeature::Valence => "valence",
            OrdinalFeature::Arousal => "arousal",
            OrdinalFeature::Happiness => "happiness",
            OrdinalFeature::Disgust => "disgust",
            OrdinalFeature::Anger => "anger",
            OrdinalFeature::Sadness => "sadness",
            OrdinalFeature::Fear => "Fear (ordinal)",
            OrdinalFeature::Concreteness => "concreteness",
            OrdinalFeature::Imageability => "imageability",
            OrdinalFeature::ContextAvailability => "context availability",
        }
    }

    pub fn is_lexico_semantic(self) -> bool {
        matches!(
            self,
            OrdinalFeature::Concreteness | OrdinalFeature::Imageability | OrdinalFeature::ContextAvailability
        )
    }

    /// The lexicon dimension this annotation is validated against.
    pub fn dimension(self) -> Dimension {
        match self {
            OrdinalFeature::Valence => Dimension::Valence,
            OrdinalFeature::Arousal => Dimension::Arousal,
            OrdinalFeature::Happiness => Dimension::Happiness,
            OrdinalFeature::Disgust => Dimension::Disgust,
            OrdinalFeature::Anger => Dimension::Anger,
            OrdinalFeature::Sadness => Dimension::Sadness,
            OrdinalFeature::Fear => Dimension::Fear,
            OrdinalFeature::Concreteness => Dimension::Concreteness,
            OrdinalFeature::Imageability => Dimension::Imageability,
            OrdinalFeature::ContextAvailability => Dimension::ContextAvailability,
        }
    }
}

/// The 21 binary psychological concept tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PsychTag {
    Anxiety,
    Aversion,
    Depression,
    Disappointment,
    Dramatisation,
    Illusion,
    Helplessness,
    Instability,
    Insecurity,
    Anger,
    Obsession,
    Pride,
    Prejudice,
    Fear,
    Vulnerability,
    Compulsion,
    Daydream,
    Grandeur,
    Idealization,
    Irritability,
    Solitude,
}

impl PsychTag {
    pub const ALL: [PsychTag; 21] = [
        PsychTag::Anxiety,
        PsychTag::Aversion,
        PsychTag::Depression,
        PsychTag::Disappointment,
        PsychTag::Dramatisation,
        PsychTag::Illusion,
        PsychTag::Helplessness,
        PsychTag::Instability,
        PsychTag::Insecurity,
        PsychTag::Anger,
        PsychTag::Obsession,
        PsychTag::Pride,
        PsychTag::Prejudice,
        PsychTag::Fear,
        PsychTag::Vulnerability,
        PsychTag::Compulsion,
        PsychTag::Daydream,
        PsychTag::Grandeur,
        PsychTag::Idealization,
        PsychTag::Irritability,
        PsychTag::Solitude,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PsychTag::Anxiety => "Anxiety",
            PsychTag::Aversion => "Aversion",
            PsychTag::Depression => "Depression",
            PsychTag::Disappointment => "Disappointment",
            PsychTag::Dramatisation => "Dramatisation",
            PsychTag::Illusion => "Illusion",
            PsychTag::Helplessness => "Helplessness",
            PsychTag::Instability => "Instability",
            PsychTag::Insecurity => "Insecurity",
            PsychTag::Anger => "Anger",
            PsychTag::Obsession => "Obsession",
            PsychTag::Pride => "Pride",
            PsychTag::Prejudice => "Prejudice",
            PsychTag::Fear => "Fear (binary)",
            PsychTag::Vulnerability => "Vulnerability",
            PsychTag::Compulsion => "Compulsion",
            PsychTag::Daydream => "Daydream",
            PsychTag::Grandeur => "Grandeur",
            PsychTag::Idealization => "Idealization",
            PsychTag::Irritability => "Irritability",
            PsychTag::Solitude => "Solitude",
        }
    }
}

impl FromStr for PsychTag {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PsychTag::ALL.into_iter().find(|t| t.name() == s.trim()).ok_or_else(|| CorpusError::UnknownTag(s.to_string()))
    }
}

impl fmt::Display for PsychTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Any of the 31 annotated features. Ordinal features come first, in
/// [`OrdinalFeature::ALL`] order, then tags in [`PsychTag::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Ordinal(OrdinalFeature),
    Tag(PsychTag),
}

impl Feature {
    pub const COUNT: usize = 31;

    pub fn all() -> impl Iterator<Item = Feature> {
        OrdinalFeature::ALL.into_iter().map(Feature::Ordinal).chain(PsychTag::ALL.into_iter().map(Feature::Tag))
    }

    pub fn index(self) -> usize {
        match self {
            Feature::Ordinal(o) => o as usize,
            Feature::Tag(t) => OrdinalFeature::ALL.len() + t as usize,
        }
    }

    pub fn from_index(i: usize) -> Option<Feature> {
        Feature::all().nth(i)
    }

    /// Exact header spelling.
    pub fn name(self) -> &'static str {
        match self {
            Feature::Ordinal(o) => o.name(),
            Feature::Tag(t) => t.name(),
        }
    }

    pub fn from_name(name: &str) -> Option<Feature> {
        Feature::all().find(|f| f.name() == name)
    }

    pub fn is_ordinal(self) -> bool {
        matches!(self, Feature::Ordinal(_))
    }

    /// Inclusive value range of the annotation scale.
    pub fn range(self) -> (u8, u8) {
        if self.is_ordinal() {
            (1, 4)
        } else {
            (0, 1)
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Feature::from_name(s.trim()).ok_or_else(|| CorpusError::UnknownFeature { column: 0, name: s.to_string() })
    }
}

impl Serialize for Feature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl Serialize for PsychTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Grouped view of the annotation features.
pub struct FeatureCatalog;

impl FeatureCatalog {
    pub fn affective() -> impl Iterator<Item = OrdinalFeature> {
        OrdinalFeature::ALL.into_iter().filter(|o| !o.is_lexico_semantic())
    }

    pub fn lexico_semantic() -> impl Iterator<Item = OrdinalFeature> {
        OrdinalFeature::ALL.into_iter().filter(|o| o.is_lexico_semantic())
    }

    pub fn psychological() -> impl Iterator<Item = PsychTag> {
        PsychTag::ALL.into_iter()
    }
}

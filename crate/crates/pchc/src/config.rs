//! Configuration words.
//!
//! A PC-HC field is classified in part by a three-letter word `a1 a2 a3`
//! over `{0, 1}`:
//!
//! * `a1 = 1` iff the homoclinic loop and the parabolic cycle carry
//!   consistent time orientations;
//! * `a2 = 1` iff the separatrix `beta_1` winds off the parabolic cycle;
//! * `a3 = 1` iff the parabolic cycle repels from the side facing the
//!   homoclinic loop.
//!
//! A separatrix cannot wind off the cycle when the cycle attracts from the
//! saddle-node side, so `a2 = 1, a3 = 0` is impossible and exactly six words
//! are admissible.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    a1: bool,
    a2: bool,
    a3: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigurationError {
    #[error("configuration word must be exactly 3 characters of 0/1, got {0:?}")]
    Malformed(String),
    #[error("inadmissible configuration {0:?}: a2 = 1 requires a3 = 1")]
    Inadmissible(String),
}

/// Coarse grouping used by the realization conditions: `111/011`,
/// `101/001`, and `100/000` are handled by the same construction steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigurationGroup {
    /// `a2 = 1` (hence `a3 = 1`): configurations 111 and 011.
    A2One,
    /// `a2 = 0, a3 = 1`: configurations 101 and 001.
    A2ZeroA3One,
    /// `a3 = 0`: configurations 100 and 000.
    A3Zero,
}

impl Configuration {
    /// Build from the three bits, rejecting the two vacuous words.
    pub fn new(a1: bool, a2: bool, a3: bool) -> Result<Self, ConfigurationError> {
        if a2 && !a3 {
            let word: String = [a1, a2, a3].iter().map(|&b| if b { '1' } else { '0' }).collect();
            return Err(ConfigurationError::Inadmissible(word));
        }
        Ok(Configuration { a1, a2, a3 })
    }

    pub fn a1(&self) -> bool {
        self.a1
    }

    pub fn a2(&self) -> bool {
        self.a2
    }

    pub fn a3(&self) -> bool {
        self.a3
    }

    pub fn group(&self) -> ConfigurationGroup {
        if self.a2 {
            ConfigurationGroup::A2One
        } else if self.a3 {
            ConfigurationGroup::A2ZeroA3One
        } else {
            ConfigurationGroup::A3Zero
        }
    }

    pub fn word(&self) -> String {
        [self.a1, self.a2, self.a3].iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Accepts exactly the six admissible words; `110` and `010` are rejected.
pub fn validate_configuration(word: &str) -> Result<Configuration, ConfigurationError> {
    if word.len() != 3 || !word.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(ConfigurationError::Malformed(word.to_string()));
    }
    let bits: Vec<bool> = word.bytes().map(|b| b == b'1').collect();
    Configuration::new(bits[0], bits[1], bits[2])
}

/// The six admissible configurations, in the fixed order
/// `111, 011, 101, 001, 100, 000`.
pub fn enumerate_configurations() -> Vec<Configuration> {
    ["111", "011", "101", "001", "100", "000"]
        .iter()
        .map(|w| validate_configuration(w).expect("admissible word"))
        .collect()
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for Configuration {
    type Err = ConfigurationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        validate_configuration(s)
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.word())
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        validate_configuration(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_six_admissible_words() {
        for w in ["111", "011", "101", "001", "100", "000"] {
            assert!(validate_configuration(w).is_ok(), "{w} should be admissible");
        }
    }

    #[test]
    fn rejects_the_two_vacuous_words() {
        assert!(matches!(
            validate_configuration("110"),
            Err(ConfigurationError::Inadmissible(_))
        ));
        assert!(matches!(
            validate_configuration("010"),
            Err(ConfigurationError::Inadmissible(_))
        ));
    }

    #[test]
    fn rejects_malformed_words() {
        for w in ["", "11", "1111", "abc", "10x"] {
            assert!(matches!(
                validate_configuration(w),
                Err(ConfigurationError::Malformed(_))
            ));
        }
    }

    #[test]
    fn enumeration_is_exactly_the_admissible_set() {
        let all = enumerate_configurations();
        assert_eq!(all.len(), 6);
        let words: Vec<String> = all.iter().map(|c| c.word()).collect();
        assert_eq!(words, vec!["111", "011", "101", "001", "100", "000"]);
        assert!(!words.contains(&"010".to_string()));
    }

    #[test]
    fn groups_partition_two_two_two() {
        use ConfigurationGroup::*;
        let groups: Vec<ConfigurationGroup> =
            enumerate_configurations().iter().map(|c| c.group()).collect();
        assert_eq!(groups, vec![A2One, A2One, A2ZeroA3One, A2ZeroA3One, A3Zero, A3Zero]);
    }
}

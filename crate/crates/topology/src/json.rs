//! Serde helpers writing exact integers as JSON numbers when they fit in 64 bits and as
//! decimal strings otherwise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

/// Borrowed integer with the number-or-string encoding.
pub struct Integer<'a>(pub &'a BigInt);

impl Serialize for Integer<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn integer<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    Integer(v).serialize(s)
}

pub fn optional<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref().map(Integer).serialize(s)
}

pub fn by_degree<S: Serializer>(v: &BTreeMap<i64, Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    let view: BTreeMap<i64, Vec<Integer<'_>>> =
        v.iter().map(|(d, xs)| (*d, xs.iter().map(Integer).collect())).collect();
    view.serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Probe {
        #[serde(serialize_with = "integer")]
        small: BigInt,
        #[serde(serialize_with = "integer")]
        large: BigInt,
    }

    #[test]
    fn numbers_and_strings() {
        let p = Probe {
            small: BigInt::from(-7),
            large: BigInt::from(u64::MAX) * 4,
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"small":-7,"large":"73786976294838206460"}"#
        );
    }
}

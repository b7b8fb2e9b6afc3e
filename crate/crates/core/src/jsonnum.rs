//! JSON-safe integer: plain number up to 2^53, decimal string beyond.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer that serializes as a JSON number up to 2^53 and as a decimal
/// string beyond, so any JSON reader consumes it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Num(pub u64);

pub(crate) const JSON_SAFE_MAX: u64 = 1 << 53;

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_u64(&self.0, s)
    }
}

pub(crate) fn serialize_u64<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
    if *v <= JSON_SAFE_MAX {
        s.serialize_u64(*v)
    } else {
        s.serialize_str(&v.to_string())
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_u64(d).map(Num)
    }
}

pub(crate) fn deserialize_u64<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
    struct V;
    impl serde::de::Visitor<'_> for V {
        type Value = u64;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a decimal string")
        }
        fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<u64, E> {
            Ok(v)
        }
        fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<u64, E> {
            v.parse().map_err(E::custom)
        }
    }
    d.deserialize_any(V)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold() {
        assert_eq!(serde_json::to_string(&Num(7)).unwrap(), "7");
        let big = (1u64 << 53) + 1;
        assert_eq!(serde_json::to_string(&Num(big)).unwrap(), format!("\"{big}\""));
        let back: Num = serde_json::from_str(&format!("\"{big}\"")).unwrap();
        assert_eq!(back, Num(big));
        let back: Num = serde_json::from_str("7").unwrap();
        assert_eq!(back, Num(7));
    }
}

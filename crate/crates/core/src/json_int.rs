use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A `BigInt` on the wire: a JSON number when it fits in `i64`, a decimal
/// string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = String;

    fn try_from(x: JsonInt) -> Result<Self, String> {
        match x {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_values_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&JsonInt::from(&big)).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        assert_eq!(BigInt::try_from(back).unwrap(), big);
        assert_eq!(serde_json::to_string(&JsonInt::from(&BigInt::from(-7))).unwrap(), "-7");
    }
}

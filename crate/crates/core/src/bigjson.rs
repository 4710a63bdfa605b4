//! Serde helpers that write big integers as bare JSON numbers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

fn number(text: &str) -> Number {
    Number::from_str(text).expect("integer renders as a JSON number")
}

pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    number(&x.to_string()).serialize(s)
}

pub fn deserialize_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let n = Number::deserialize(d)?;
    BigInt::from_str(&n.to_string()).map_err(D::Error::custom)
}

pub fn serialize_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    number(&x.to_string()).serialize(s)
}

pub fn deserialize_biguint<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let n = Number::deserialize(d)?;
    BigUint::from_str(&n.to_string()).map_err(D::Error::custom)
}

pub fn serialize_bigint_vec<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let numbers: Vec<Number> = xs.iter().map(|x| number(&x.to_string())).collect();
    numbers.serialize(s)
}

pub fn deserialize_bigint_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let numbers = Vec::<Number>::deserialize(d)?;
    numbers.iter().map(|n| BigInt::from_str(&n.to_string()).map_err(D::Error::custom)).collect()
}

pub mod bigint {
    pub use super::{deserialize_bigint as deserialize, serialize_bigint as serialize};
}

pub mod biguint {
    pub use super::{deserialize_biguint as deserialize, serialize_biguint as serialize};
}

pub mod bigint_vec {
    pub use super::{deserialize_bigint_vec as deserialize, serialize_bigint_vec as serialize};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrapper {
        #[serde(with = "bigint")]
        x: BigInt,
        #[serde(with = "bigint_vec")]
        xs: Vec<BigInt>,
    }

    #[test]
    fn huge_integers_stay_numbers() {
        let x: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let w = Wrapper { x: x.clone(), xs: vec![x.clone(), BigInt::from(7)] };
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"x":-123456789012345678901234567890,"xs":[-123456789012345678901234567890,7]}"#);
        assert_eq!(serde_json::from_str::<Wrapper>(&text).unwrap(), w);
    }
}

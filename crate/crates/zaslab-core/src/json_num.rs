//! JSON-safe f64 fields: non-finite values encode as the strings "-inf",
//! "inf", "nan" instead of JSON null, and decode back.

use alloc::string::String;
use serde::Deserialize;

pub(crate) fn serialize<S: serde::Serializer>(
    v: &f64,
    s: S,
) -> core::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v == f64::NEG_INFINITY {
        s.serialize_str("-inf")
    } else if *v == f64::INFINITY {
        s.serialize_str("inf")
    } else {
        s.serialize_str("nan")
    }
}

pub(crate) fn deserialize<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> core::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(f64),
        Str(String),
    }
    match NumOrStr::deserialize(d)? {
        NumOrStr::Num(v) => Ok(v),
        NumOrStr::Str(s) => match s.as_str() {
            "-inf" => Ok(f64::NEG_INFINITY),
            "inf" => Ok(f64::INFINITY),
            "nan" => Ok(f64::NAN),
            _ => Err(serde::de::Error::custom("expected a number, \"-inf\", \"inf\", or \"nan\"")),
        },
    }
}

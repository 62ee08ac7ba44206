//! Interchange documents.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::chartab::CharacterTable;
use crate::ring::RawRing;
use crate::scalar::{parse_rational, CycNumber, QuadExt};

/// Integer that serializes as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(b: BigInt) -> Self {
        JsonInt(b)
    }
}

impl From<i64> for JsonInt {
    fn from(v: i64) -> Self {
        JsonInt(BigInt::from(v))
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.parse().map(JsonInt).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        de.deserialize_any(V)
    }
}

/// Serde adapter writing rationals as JSON integers or `"p/q"` strings.
pub mod rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        if r.is_integer() {
            if let Ok(v) = i64::try_from(r.numer()) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let v = super::JsonScalarText::deserialize(de)?;
        match v {
            super::JsonScalarText::Int(i) => Ok(Rational::from_integer(i.into())),
            super::JsonScalarText::Text(t) => {
                parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {t:?}")))
            }
        }
    }
}

/// Serde adapter for vectors of rationals.
pub mod rational_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Rational;

    #[derive(serde::Serialize, Deserialize)]
    struct W(#[serde(with = "super::rational")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&W(r.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<W>::deserialize(de)?.into_iter().map(|w| w.0).collect())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonScalarText {
    Int(i64),
    Text(String),
}

/// Envelope schema identifier.
pub const SCHEMA: &str = "mrfw/1";

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("expected a {expected} document, found {found}")]
    Kind { expected: &'static str, found: &'static str },
    #[error("bad scalar: {0}")]
    Scalar(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ring,
    Chartable,
    Premodular,
    Report,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    schema: String,
    kind: Kind,
    payload: serde_json::Value,
}

/// Ring payload: labels, `N[i][j][k]` and an optional duality permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<String>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<usize>>,
}

impl RingDoc {
    pub fn raw(&self) -> RawRing {
        RawRing::new(self.labels.clone(), self.n.clone(), self.dual.clone())
    }

    pub fn from_raw(name: Option<String>, raw: RawRing) -> Self {
        RingDoc { name, labels: raw.labels, n: raw.n, dual: raw.dual }
    }
}

/// A ring given inline or by corpus name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Name(String),
    Inline(RingDoc),
}

/// A real scalar written as an integer, `"p/q"`, or `{p, q, D, r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealScalar {
    Int(i64),
    Text(String),
    Quad(QuadExt),
}

impl RealScalar {
    pub fn value(&self) -> Result<QuadExt, DocError> {
        match self {
            RealScalar::Int(v) => Ok(QuadExt::from_int(*v)),
            RealScalar::Text(t) => parse_rational(t).map(QuadExt::from_rational).ok_or_else(|| DocError::Scalar(t.clone())),
            RealScalar::Quad(q) => Ok(q.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PremodularDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingRef,
    pub dims: Vec<RealScalar>,
    pub twists: Vec<CycNumber>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Ring(RingDoc),
    Chartable(CharacterTable),
    Premodular(PremodularDoc),
    Report(serde_json::Value),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Ring(_) => Kind::Ring,
            Document::Chartable(_) => Kind::Chartable,
            Document::Premodular(_) => Kind::Premodular,
            Document::Report(_) => Kind::Report,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        kind_name(self.kind())
    }

    pub fn parse(text: &str) -> Result<Document, DocError> {
        let env: Envelope = serde_json::from_str(text)?;
        if env.schema != SCHEMA {
            return Err(DocError::Schema(env.schema));
        }
        Ok(match env.kind {
            Kind::Ring => Document::Ring(serde_json::from_value(env.payload)?),
            Kind::Chartable => Document::Chartable(serde_json::from_value(env.payload)?),
            Kind::Premodular => Document::Premodular(serde_json::from_value(env.payload)?),
            Kind::Report => Document::Report(env.payload),
        })
    }

    /// Pretty JSON with a trailing newline; parsing it back is the identity.
    pub fn to_canonical(&self) -> String {
        let payload = match self {
            Document::Ring(r) => serde_json::to_value(r),
            Document::Chartable(t) => serde_json::to_value(t),
            Document::Premodular(p) => serde_json::to_value(p),
            Document::Report(v) => Ok(v.clone()),
        }
        .expect("documents serialize");
        let env = Envelope { schema: SCHEMA.into(), kind: self.kind(), payload };
        let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn report<T: Serialize>(payload: &T) -> Document {
        Document::Report(serde_json::to_value(payload).expect("report serializes"))
    }

    pub fn into_ring(self) -> Result<RingDoc, DocError> {
        match self {
            Document::Ring(r) => Ok(r),
            other => Err(DocError::Kind { expected: "ring", found: other.kind_name() }),
        }
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Ring => "ring",
        Kind::Chartable => "chartable",
        Kind::Premodular => "premodular",
        Kind::Report => "report",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn ring_round_trip_is_byte_stable() {
        let d = Document::Ring(RingDoc::from_raw(Some("fibonacci".into()), corpus::fibonacci().to_raw()));
        let text = d.to_canonical();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_canonical(), text);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"schema":"mrfw/1","kind":"ring","payload":{"labels":["1"],"N":[[[1]]],"extra":0}}"#;
        assert!(Document::parse(text).is_err());
        let text = r#"{"schema":"mrfw/1","kind":"ring","payload":{"labels":["1"],"N":[[[1]]]},"x":1}"#;
        assert!(Document::parse(text).is_err());
        let text = r#"{"schema":"mrfw/2","kind":"ring","payload":{"labels":["1"],"N":[[[1]]]}}"#;
        assert!(matches!(Document::parse(text), Err(DocError::Schema(_))));
    }

    #[test]
    fn premodular_scalars_keep_their_form() {
        let text = r#"{"schema":"mrfw/1","kind":"premodular","payload":{"ring":"fibonacci","dims":[1,{"p":1,"q":1,"D":5,"r":2}],"twists":[{"order":1,"coeffs":[1]},{"order":5,"coeffs":[0,0,1,0]}]}}"#;
        let d = Document::parse(text).unwrap();
        let again = Document::parse(&d.to_canonical()).unwrap();
        assert_eq!(again, d);
        let Document::Premodular(p) = d else { panic!() };
        assert_eq!(p.ring, RingRef::Name("fibonacci".into()));
        assert_eq!(p.dims[0], RealScalar::Int(1));
        assert_eq!(p.dims[1].value().unwrap().to_string(), "(1 + √5)/2");
    }
}

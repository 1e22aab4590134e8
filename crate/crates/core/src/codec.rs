//! JSON interchange shape for matroids.
//!
//! A document records the field order, the ambient rank, the point columns
//! (coordinate vectors of length `rank`, low index first), and optional
//! labels. `Matroid` serializes through this shape.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::make_field;
use crate::matroid::Matroid;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatroidDocument {
    pub q: u32,
    pub rank: usize,
    pub points: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MatroidDocument {
    pub fn encode(m: &Matroid) -> Self {
        MatroidDocument {
            q: m.q(),
            rank: m.rank_full(),
            points: m.points().to_vec(),
            labels: Some(m.labels().to_vec()),
        }
    }

    pub fn decode(&self) -> Result<Matroid> {
        let field =
            make_field(self.q).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        for p in &self.points {
            if p.len() != self.rank {
                return Err(Error::MalformedDocument(format!(
                    "point of length {} in a rank-{} document",
                    p.len(),
                    self.rank
                )));
            }
        }
        let m = Matroid::new(field, self.points.clone(), self.labels.clone())
            .map_err(|e| Error::MalformedDocument(e.to_string()))?;
        if m.rank_full() != self.rank {
            return Err(Error::MalformedDocument(format!(
                "stated rank {} but the points span rank {}",
                self.rank,
                m.rank_full()
            )));
        }
        Ok(m)
    }
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatroidDocument::encode(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatroidDocument::deserialize(d)?;
        doc.decode().map_err(serde::de::Error::custom)
    }
}

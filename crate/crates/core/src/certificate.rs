//! JSON documents for certificates and non-reality witnesses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::jordan::NoUnipotentReverser;
use crate::nilmat::{GroupTag, Level, SignedUnipotent};
use crate::reverser::{check_certificate, ProducedBy, ReversalCertificate};
use crate::scalar::{GaussianRational, Rational, RationalQuaternion, Ring, Scalar};
use crate::text::parse_matrix;

pub const SCHEMA_VERSION: &str = "1";

/// Serialized [`ReversalCertificate`]; matrices use the one-line text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub ring: Ring,
    pub n: usize,
    pub group: GroupTag,
    pub level: Level,
    pub input: String,
    pub g: String,
    pub involution: bool,
    pub produced_by: ProducedBy,
    /// Result of re-checking at emission time.
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CertificateDocument {
    pub fn from_certificate<S: Scalar>(c: &ReversalCertificate<S>, seed: Option<u64>) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION.into(),
            ring: S::RING,
            n: c.n,
            group: c.group,
            level: c.level,
            input: c.subject.to_text(),
            g: c.g.as_matrix().to_text(),
            involution: c.involution,
            produced_by: c.produced_by,
            verified: check_certificate(c)?,
            seed,
        })
    }

    /// Parses JSON; syntax errors carry serde's line and column.
    pub fn from_json(src: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(src).map_err(|e| {
            let text = e.to_string();
            let message = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m);
            ParseError::new(e.line(), e.column(), message)
        })?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::MalformedCertificate(format!("unsupported schema_version {:?}", doc.schema_version)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate documents always serialize")
    }

    /// Rebuilds the typed certificate; the ring must be `S::RING`.
    pub fn to_certificate<S: Scalar>(&self) -> Result<ReversalCertificate<S>> {
        if self.ring != S::RING {
            return Err(Error::RingMismatch { expected: S::RING, found: self.ring });
        }
        let malformed = |field: &str, e: Error| Error::MalformedCertificate(format!("{field}: {e}"));
        let subject = parse_matrix::<S>(&self.input).map_err(|e| malformed("input", e))?;
        let g = parse_matrix::<S>(&self.g).map_err(|e| malformed("g", e))?;
        let g = SignedUnipotent::new(g).map_err(|e| malformed("g", e))?;
        Ok(ReversalCertificate {
            n: self.n,
            group: self.group,
            level: self.level,
            subject,
            g,
            involution: self.involution,
            produced_by: self.produced_by,
        })
    }
}

/// Re-verifies a document from scratch, ignoring its `verified` field.
pub fn check_document(doc: &CertificateDocument) -> Result<bool> {
    match doc.ring {
        Ring::Rat => check_certificate(&doc.to_certificate::<Rational>()?),
        Ring::Gauss => check_certificate(&doc.to_certificate::<GaussianRational>()?),
        Ring::Quat => check_certificate(&doc.to_certificate::<RationalQuaternion>()?),
    }
}

/// Serialized [`NoUnipotentReverser`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub schema_version: String,
    pub ring: Ring,
    pub n: usize,
    pub input: String,
    /// Bracket notation, e.g. `[2^1, 1^1]`.
    pub partition: String,
    pub chain_lengths: Vec<usize>,
    pub ordered_basis: Vec<String>,
    /// Sizes of the diagonal blocks of the reverser in the ordered basis.
    pub block_layout: Vec<usize>,
    pub beta: String,
    pub reverser_of_input: String,
    pub reverser_in_basis: String,
    pub first_block: String,
    pub paired_block: String,
    pub paired_index: usize,
    pub first_block_unipotent: bool,
    pub paired_block_unipotent: bool,
    pub oracle_infeasible: Option<bool>,
}

impl WitnessDocument {
    pub fn from_record<S: Scalar>(input: &crate::nilmat::Matrix<S>, r: &NoUnipotentReverser<S>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            ring: S::RING,
            n: input.n(),
            input: input.to_text(),
            partition: r.jordan.partition.to_string(),
            chain_lengths: r.jordan.chain_lengths(),
            ordered_basis: r.witness.basis_labels.clone(),
            block_layout: r.witness.block_layout.clone(),
            beta: r.jordan.beta.to_text(),
            reverser_of_input: r.reverser_of_x.to_text(),
            reverser_in_basis: r.witness.conjugator_in_basis.to_text(),
            first_block: r.witness.first_block.to_text(),
            paired_block: r.witness.paired_block.to_text(),
            paired_index: r.witness.s + 1,
            first_block_unipotent: r.first_block_unipotent,
            paired_block_unipotent: r.paired_block_unipotent,
            oracle_infeasible: r.oracle_infeasible,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::no_unipotent_reverser_certificate;
    use crate::nilmat::{Matrix, NilpotentUpper};
    use crate::oracle::Oracle;
    use crate::reverser::reverse_star;

    fn sample() -> CertificateDocument {
        let x = NilpotentUpper::new(parse_matrix::<RationalQuaternion>("0,i,1;0,0,j;0,0,0").unwrap()).unwrap();
        let cert = reverse_star(&x).unwrap().certificate;
        CertificateDocument::from_certificate(&cert, Some(7)).unwrap()
    }

    #[test]
    fn round_trip() {
        let doc = sample();
        assert!(doc.verified);
        let json = doc.to_json();
        assert!(json.contains("\"produced_by\": \"induction\""));
        assert!(json.contains("\"group\": \"signed_unipotent\""));
        let back = CertificateDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert!(check_document(&back).unwrap());
        let typed = back.to_certificate::<RationalQuaternion>().unwrap();
        assert_eq!(CertificateDocument::from_certificate(&typed, Some(7)).unwrap(), doc);
    }

    #[test]
    fn tampering_and_malformed_input() {
        let mut doc = sample();
        let mut g = parse_matrix::<RationalQuaternion>(&doc.g).unwrap();
        g[(0, 2)] = g[(0, 2)].clone() + RationalQuaternion::one();
        doc.g = g.to_text();
        assert!(!check_document(&doc).unwrap());

        let json = sample().to_json();
        let truncated = &json[..json.len() / 2];
        assert!(matches!(CertificateDocument::from_json(truncated), Err(Error::Parse(_))));

        let mut bad_diag = sample();
        bad_diag.g = "2,0,0;0,1,0;0,0,1".into();
        assert!(matches!(check_document(&bad_diag), Err(Error::MalformedCertificate(_))));

        let mut version = sample();
        version.schema_version = "2".into();
        assert!(matches!(CertificateDocument::from_json(&version.to_json()), Err(Error::MalformedCertificate(_))));

        let doc = sample();
        assert_eq!(
            doc.to_certificate::<Rational>().unwrap_err(),
            Error::RingMismatch { expected: Ring::Rat, found: Ring::Quat }
        );
    }

    #[test]
    fn witness_document() {
        let x = NilpotentUpper::new(Matrix::<Rational>::unit(3, 0, 2)).unwrap();
        let rec = no_unipotent_reverser_certificate(&x, &Oracle::default()).unwrap();
        let doc = WitnessDocument::from_record(x.as_matrix(), &rec);
        assert_eq!(doc.partition, "[2^1, 1^1]");
        assert_eq!(doc.oracle_infeasible, Some(true));
        assert_ne!(doc.first_block_unipotent, doc.paired_block_unipotent);
        assert!(doc.to_json().contains("\"paired_index\": 3"));
    }
}

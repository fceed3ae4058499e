//! JSON documents for inputs and results.
//!
//! Input side: the assessment file format and the step-function family
//! selector. Output side: mirrors of verdicts, densities, and step
//! functions in which every exact quantity is a `"num/den"` string,
//! never a float. Field order is fixed by the struct declarations, so
//! serialization is byte-deterministic.

use serde::{Deserialize, Serialize};

use crate::coherence::{CoherenceVerdict, ExtensionInterval, PiViolation};
use crate::event::{Assessment, AtomSpace, EventError};
use crate::limits::DensityValue;
use crate::pd::{DfClass, Jump, PdError, StepDf};
use crate::rat::{format_rat, parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("entry {entry}: bad probability literal: {message}")]
    BadProbability { entry: usize, message: String },
    #[error("bad rational literal in `{field}`: {message}")]
    BadRational { field: String, message: String },
    #[error("labels list has {got} names for {expected} atoms")]
    LabelCount { expected: usize, got: usize },
    #[error(transparent)]
    Event(#[from] EventError),
    #[error(transparent)]
    Df(#[from] PdError),
}

/// Assessment input file: atom count, optional labels, and entries
/// listing each event by its 0-based atom indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessmentDoc {
    pub atoms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub assessments: Vec<AssessmentEntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessmentEntryDoc {
    pub event: Vec<usize>,
    pub p: String,
}

impl AssessmentDoc {
    pub fn from_json(json: &str) -> Result<Self, SchemaError> {
        serde_json::from_str(json).map_err(|e| SchemaError::Json(e.to_string()))
    }

    pub fn to_assessment(&self) -> Result<Assessment, SchemaError> {
        let space = match &self.labels {
            Some(labels) => {
                if labels.len() != self.atoms {
                    return Err(SchemaError::LabelCount {
                        expected: self.atoms,
                        got: labels.len(),
                    });
                }
                AtomSpace::with_labels(labels.clone())?
            }
            None => AtomSpace::new(self.atoms)?,
        };
        let mut entries = Vec::with_capacity(self.assessments.len());
        for (i, entry) in self.assessments.iter().enumerate() {
            let event = space.event_from_atoms(&entry.event)?;
            let p = parse_rat(&entry.p)
                .map_err(|e| SchemaError::BadProbability { entry: i, message: e.to_string() })?;
            entries.push((event, p));
        }
        Ok(Assessment::new(space, entries)?)
    }
}

/// Parse an assessment document and build the assessment in one step.
pub fn parse_assessment(json: &str) -> Result<Assessment, SchemaError> {
    AssessmentDoc::from_json(json)?.to_assessment()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DutchBookDoc {
    pub stakes: Vec<String>,
    pub guaranteed_loss: String,
}

/// Output mirror of a coherence verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerdictDoc {
    Coherent { weights: Vec<String> },
    Incoherent { dutch_book: DutchBookDoc },
}

impl From<&CoherenceVerdict> for VerdictDoc {
    fn from(verdict: &CoherenceVerdict) -> Self {
        match verdict {
            CoherenceVerdict::Coherent { weights } => {
                VerdictDoc::Coherent { weights: weights.iter().map(format_rat).collect() }
            }
            CoherenceVerdict::Incoherent { dutch_book } => VerdictDoc::Incoherent {
                dutch_book: DutchBookDoc {
                    stakes: dutch_book.stakes.iter().map(format_rat).collect(),
                    guaranteed_loss: format_rat(&dutch_book.guaranteed_loss),
                },
            },
        }
    }
}

/// Output mirror of one broken law of finitely additive probability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum PiViolationDoc {
    Normalization { entry: usize, price: String },
    Nonnegativity { entry: usize, price: String },
    Additivity { lhs_entry: usize, rhs_entry: usize, union_entry: usize, gap: String },
}

impl From<&PiViolation> for PiViolationDoc {
    fn from(violation: &PiViolation) -> Self {
        match violation {
            PiViolation::Normalization { entry, price } => {
                PiViolationDoc::Normalization { entry: *entry, price: format_rat(price) }
            }
            PiViolation::Nonnegativity { entry, price } => {
                PiViolationDoc::Nonnegativity { entry: *entry, price: format_rat(price) }
            }
            PiViolation::Additivity { lhs_entry, rhs_entry, union_entry, gap } => {
                PiViolationDoc::Additivity {
                    lhs_entry: *lhs_entry,
                    rhs_entry: *rhs_entry,
                    union_entry: *union_entry,
                    gap: format_rat(gap),
                }
            }
        }
    }
}

/// `"lower,upper"` with both endpoints in `num/den` form.
pub fn interval_csv(interval: &ExtensionInterval) -> String {
    format!("{},{}", format_rat(&interval.lower), format_rat(&interval.upper))
}

/// Output mirror of a density result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityDoc {
    Exists { value: String },
    Divergent { liminf: String, limsup: String, exact: bool },
}

impl From<&DensityValue> for DensityDoc {
    fn from(value: &DensityValue) -> Self {
        match value {
            DensityValue::Exists(v) => DensityDoc::Exists { value: format_rat(v) },
            DensityValue::Divergent { liminf, limsup, exact } => DensityDoc::Divergent {
                liminf: format_rat(liminf),
                limsup: format_rat(limsup),
                exact: *exact,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpDoc {
    pub at: String,
    pub left: String,
    pub right: String,
}

/// Step function as its sorted jump list plus the two tail levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDfDoc {
    pub lower_tail: String,
    pub jumps: Vec<JumpDoc>,
    pub upper_tail: String,
}

impl From<&StepDf> for StepDfDoc {
    fn from(df: &StepDf) -> Self {
        StepDfDoc {
            lower_tail: format_rat(df.lower_tail()),
            jumps: df
                .jumps()
                .iter()
                .map(|j| JumpDoc {
                    at: format_rat(&j.at),
                    left: format_rat(&j.left),
                    right: format_rat(&j.right),
                })
                .collect(),
            upper_tail: format_rat(df.upper_tail()),
        }
    }
}

impl StepDfDoc {
    pub fn to_step_df(&self) -> Result<StepDf, SchemaError> {
        let field = |name: &str, text: &str| -> Result<Rat, SchemaError> {
            parse_rat(text).map_err(|e| SchemaError::BadRational {
                field: name.to_string(),
                message: e.to_string(),
            })
        };
        let lower = field("lower_tail", &self.lower_tail)?;
        let upper = field("upper_tail", &self.upper_tail)?;
        let mut jumps = Vec::with_capacity(self.jumps.len());
        for j in &self.jumps {
            jumps.push(Jump::new(field("at", &j.at)?, field("left", &j.left)?, field("right", &j.right)?));
        }
        Ok(StepDf::new(lower, jumps, upper)?)
    }
}

/// Output mirror of a step-function classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum DfClassDoc {
    ProperCountablyAdditive,
    ProperFinitelyAdditive { minus_inf_mass: String, plus_inf_mass: String },
    NotADf,
}

impl From<&DfClass> for DfClassDoc {
    fn from(class: &DfClass) -> Self {
        match class {
            DfClass::ProperCountablyAdditive => DfClassDoc::ProperCountablyAdditive,
            DfClass::ProperFinitelyAdditive { minus_inf_mass, plus_inf_mass } => {
                DfClassDoc::ProperFinitelyAdditive {
                    minus_inf_mass: format_rat(minus_inf_mass),
                    plus_inf_mass: format_rat(plus_inf_mass),
                }
            }
            DfClass::NotADf => DfClassDoc::NotADf,
        }
    }
}

/// Weak-limit report: the claimed limit with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfLimitReportDoc {
    pub limit: StepDfDoc,
    pub class: DfClassDoc,
}

/// Named step-function families for the limit classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DfFamilyDoc {
    /// Mass `1/2` at each of `-n` and `n`.
    SymmetricEscape,
    /// Unit mass at `n`.
    RightwardEscape,
    /// The same function at every index.
    Fixed { df: StepDfDoc },
}

/// Serialize any result document on one line.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("result documents are serializable")
}
